//! The oriented Eilenberg–Watts translation between separable symmetric
//! Frobenius algebras and semisimple Calabi–Yau categories.
//!
//! Forward: one simple per block, with trace scalar read off from the Euler
//! quantum dimension of the simple module viewed as a 1-morphism out of the
//! ground field. Inverse: the diagonal algebra on the simples, with counit
//! rescaled by the window square root so that the forward trace is recovered.

use thiserror::Error;

use crate::bimodules::{adjoint, trace_and_qdim, Bimodule, BimoduleError};
use crate::frobenius::{block_scalar, decompose, examples, window_sqrt, FrobeniusError, FrobeniusStructure};
pub use crate::frobenius::{Block, SimpleDecomposition};
use crate::fusioncat::{CYCategoryData, FusionError};
use crate::linalg::Matrix;
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EwError {
    #[error("algebra is not separable")]
    NotSeparable,
    #[error("algebra is not split semisimple: {0}")]
    NotSplitSemisimple(String),
    #[error("{value} has no square root in Q(sqrt {field})")]
    NoSquareRootInField { value: String, field: u32 },
    #[error(transparent)]
    Frobenius(FrobeniusError),
    #[error(transparent)]
    Bimodule(BimoduleError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

impl From<FrobeniusError> for EwError {
    fn from(e: FrobeniusError) -> Self {
        match e {
            FrobeniusError::NotSeparable => EwError::NotSeparable,
            FrobeniusError::NotSplitSemisimple(s) => EwError::NotSplitSemisimple(s),
            FrobeniusError::Scalar(ScalarError::NoSquareRootInField { value, field }) => EwError::NoSquareRootInField { value, field },
            other => EwError::Frobenius(other),
        }
    }
}

impl From<BimoduleError> for EwError {
    fn from(e: BimoduleError) -> Self {
        match e {
            BimoduleError::Frobenius(f) => f.into(),
            BimoduleError::NotSeparable => EwError::NotSeparable,
            other => EwError::Bimodule(other),
        }
    }
}

/// Which Calabi–Yau trace to put on the module category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceNormalization {
    /// Quantum dimension from the Euler-twisted adjunction; `λ²` on `K_λ`.
    #[default]
    Euler,
    /// `ε ∘ ev_M`, i.e. the counit of a primitive idempotent; `λ` on `K_λ`.
    /// Exposed for comparison only.
    Few,
}

/// Output of [`ew_forward`]: the category and the blocks it came from.
#[derive(Debug, Clone)]
pub struct EwForward {
    pub category: CYCategoryData,
    pub decomposition: SimpleDecomposition,
    pub simple_modules: Vec<Bimodule>,
}

/// Simple modules as `A`-`K` bimodules, one per block.
fn simple_modules(f: &FrobeniusStructure, decomposition: &SimpleDecomposition) -> Result<Vec<Bimodule>, EwError> {
    let ground = examples::ground_with_counit(f.field().one());
    decomposition.blocks.iter().map(|b| Bimodule::left_module(f.clone(), ground.clone(), b.action.clone()).map_err(EwError::from)).collect()
}

pub fn ew_forward(f: &FrobeniusStructure) -> Result<EwForward, EwError> {
    ew_forward_with(f, TraceNormalization::Euler)
}

pub fn ew_forward_with(f: &FrobeniusStructure, normalization: TraceNormalization) -> Result<EwForward, EwError> {
    if !f.is_separable() {
        return Err(EwError::NotSeparable);
    }
    let decomposition = decompose(f.algebra())?;
    let modules = simple_modules(f, &decomposition)?;
    let traces = decomposition
        .blocks
        .iter()
        .zip(&modules)
        .map(|(block, module)| match normalization {
            TraceNormalization::Euler => {
                let report = trace_and_qdim(module, &Matrix::identity(module.dim(), f.field()))?;
                block_scalar(&report.dim_r, &block.idempotent)
                    .ok_or_else(|| EwError::NotSplitSemisimple("quantum dimension is not scalar on its block".into()))
            }
            TraceNormalization::Few => {
                let size = f.field().int(block.size as i64);
                Ok(f.epsilon(&block.idempotent) / size)
            }
        })
        .collect::<Result<Vec<_>, EwError>>()?;
    Ok(EwForward { category: CYCategoryData::new(f.field(), traces)?, decomposition, simple_modules: modules })
}

/// `K^k` with counit `ε(e_i) = λ_i s_i`, where `s` is the window square root of
/// the unscaled form `ε_0(e_i) = λ_i`.
pub fn ew_inverse(c: &CYCategoryData) -> Result<FrobeniusStructure, EwError> {
    let unscaled = examples::diagonal(c.traces());
    let s = window_sqrt(&unscaled)?;
    let alg = unscaled.algebra();
    let counit: Vec<Scalar> = (0..alg.dim()).map(|i| unscaled.epsilon(&alg.mul(&alg.basis(i), &s))).collect();
    Ok(FrobeniusStructure::new(alg.clone(), counit)?)
}

/// Verdict of [`ew_roundtrip_check_with`], with every comparison recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub traces_match: bool,
    pub block_count_match: bool,
    pub morita_dims_trivial: bool,
    pub morita_zorro: bool,
}

impl RoundtripReport {
    pub fn holds(&self) -> bool {
        self.traces_match && self.block_count_match && self.morita_dims_trivial && self.morita_zorro
    }
}

pub fn ew_roundtrip_check(f: &FrobeniusStructure) -> Result<bool, EwError> {
    Ok(ew_roundtrip_check_with(f, |_| {})?.holds())
}

/// Runs forward, inverse, forward; `mutate` may alter the category between
/// the first forward step and the inverse step.
pub fn ew_roundtrip_check_with(f: &FrobeniusStructure, mutate: impl FnOnce(&mut Vec<Scalar>)) -> Result<RoundtripReport, EwError> {
    let forward = ew_forward(f)?;
    let mut traces = forward.category.traces().to_vec();
    mutate(&mut traces);
    let category = CYCategoryData::new(f.field(), traces)?;
    let g = ew_inverse(&category)?;
    let again = ew_forward(&g)?;

    // ⊕_i S_i as an A-G bimodule: the i-th idempotent of G acts on S_i.
    let field = f.field();
    let sizes: Vec<usize> = forward.decomposition.blocks.iter().map(|b| b.size).collect();
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let lact = (0..f.dim())
        .map(|basis| {
            let mut m = Matrix::zeros(total, total, field);
            for (block, &off) in forward.decomposition.blocks.iter().zip(&offsets) {
                let a = &block.action[basis];
                for r in 0..block.size {
                    for c in 0..block.size {
                        m.set(off + r, off + c, a.get(r, c).clone());
                    }
                }
            }
            m
        })
        .collect();
    let ract = (0..g.dim())
        .map(|i| {
            let range = offsets.get(i).map_or(0..0, |&o| o..o + sizes[i]);
            Matrix::from_fn(total, total, field, |r, c| if r == c && range.contains(&r) { field.one() } else { field.zero() })
        })
        .collect();
    let (morita_dims_trivial, morita_zorro) = if sizes.len() == g.dim() {
        let m = Bimodule::new(f.clone(), g.clone(), total, lact, ract)?;
        let report = trace_and_qdim(&m, &Matrix::identity(total, field))?;
        let trivial = report.dim_r == f.algebra().unit() && report.dim_l == g.algebra().unit();
        (trivial, adjoint(&m)?.zorro().holds())
    } else {
        (false, false)
    };

    Ok(RoundtripReport {
        traces_match: again.category.traces() == forward.category.traces(),
        block_count_match: again.category.simples() == forward.category.simples(),
        morita_dims_trivial,
        morita_zorro,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::check_frobenius;
    use crate::frobenius::examples::*;
    use crate::scalars::Field;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::RATIONALS
    }

    #[test]
    fn ground_field_trace_is_lambda_squared() {
        let c = ew_forward(&ground_with_counit(q().int(3))).unwrap().category;
        assert_eq!(c.traces(), &[q().int(9)]);
        let few = ew_forward_with(&ground_with_counit(q().int(3)), TraceNormalization::Few).unwrap().category;
        assert_eq!(few.traces(), &[q().int(3)]);
    }

    #[test]
    fn group_algebra_has_two_equal_simples() {
        let fw = ew_forward(&cyclic_group(2, q())).unwrap();
        assert_eq!(fw.decomposition.simple_module_dims(), vec![1, 1]);
        assert_eq!(fw.category.traces(), &[q().ratio(1, 4), q().ratio(1, 4)]);
    }

    #[test]
    fn matrix_algebra_has_one_simple_of_dimension_two() {
        let fw = ew_forward(&matrices_with_trace(2, q().one())).unwrap();
        assert_eq!(fw.decomposition.simple_module_dims(), vec![2]);
        assert_eq!(fw.category.traces(), &[q().ratio(1, 8)]);
    }

    #[test]
    fn inverse_examples() {
        let one = ew_inverse(&CYCategoryData::new(q(), vec![q().one()]).unwrap()).unwrap();
        assert_eq!(one.counit(), &[q().one()]);
        let two = ew_inverse(&CYCategoryData::new(q(), vec![q().one(), q().one()]).unwrap()).unwrap();
        assert_eq!(two.counit(), &[q().one(), q().one()]);
        let r = check_frobenius(two.algebra(), two.counit()).unwrap();
        assert!(r.separable && r.symmetric);
        let err = ew_inverse(&CYCategoryData::new(q(), vec![q().int(2)]).unwrap()).unwrap_err();
        assert!(matches!(err, EwError::NoSquareRootInField { .. }));
        let r2 = Field::new(2).unwrap();
        let ok = ew_inverse(&CYCategoryData::new(r2, vec![r2.int(2)]).unwrap()).unwrap();
        assert_eq!(ok.counit(), &[r2.root()]);
    }

    #[test]
    fn roundtrips() {
        assert!(ew_roundtrip_check(&cyclic_group(2, q())).unwrap());
        assert!(ew_roundtrip_check(&ground_with_counit(q().int(4))).unwrap());
        let r2 = Field::new(2).unwrap();
        assert!(ew_roundtrip_check(&matrices_with_trace(2, r2.one())).unwrap());
        assert!(matches!(ew_roundtrip_check(&matrices_with_trace(2, q().one())), Err(EwError::NoSquareRootInField { .. })));
    }

    #[test]
    fn doubled_trace_breaks_the_roundtrip() {
        let r2 = Field::new(2).unwrap();
        let report = ew_roundtrip_check_with(&cyclic_group(2, r2), |t| t[0] = &t[0] * &r2.int(2)).unwrap();
        assert!(!report.holds());
        assert!(!report.traces_match);
    }

    #[test]
    fn inseparable_input_is_refused() {
        assert_eq!(ew_forward(&dual_numbers(q())).unwrap_err(), EwError::NotSeparable);
        assert!(matches!(ew_forward(&cyclic_group(3, q())), Err(EwError::NotSplitSemisimple(_))));
    }

    proptest! {
        #[test]
        fn trace_scales_as_lambda_squared(num in -40i64..40, den in 1i64..40) {
            prop_assume!(num != 0);
            let lambda = Field::RATIONALS.ratio(num, den);
            let c = ew_forward(&ground_with_counit(lambda.clone())).unwrap().category;
            prop_assert_eq!(c.traces(), &[&lambda * &lambda]);
        }

        #[test]
        fn inverse_output_is_separable_symmetric(a in 1i64..6, b in 1i64..6) {
            let q = Field::RATIONALS;
            let c = CYCategoryData::new(q, vec![q.int(a * a), q.ratio(1, b * b)]).unwrap();
            let g = ew_inverse(&c).unwrap();
            let r = check_frobenius(g.algebra(), g.counit()).unwrap();
            prop_assert!(r.separable && r.symmetric);
            let back = ew_forward(&g).unwrap().category;
            prop_assert_eq!(back.traces(), c.traces());
        }
    }
}
