//! Roots of univariate polynomials that lie in the coefficient field.
//!
//! Candidates come from a numeric Aberth iteration on both real embeddings
//! of the polynomial; every returned root is verified exactly, so numeric
//! error can only cause a missed root, never a wrong one.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::{Field, Scalar};

/// Coefficients lowest degree first.
pub(crate) fn eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(x.field().zero(), |acc, c| acc * x + c)
}

/// Distinct roots in the field of a polynomial with nonzero leading coefficient.
pub(crate) fn roots_in_field(coeffs: &[Scalar]) -> Vec<Scalar> {
    let field = coeffs[0].field();
    let degree = coeffs.len() - 1;
    let mut found: Vec<Scalar> = Vec::new();
    if degree == 0 {
        return found;
    }
    let push = |found: &mut Vec<Scalar>, r: Scalar| {
        if eval(coeffs, &r).is_zero() && !found.contains(&r) {
            found.push(r);
        }
    };
    if degree == 1 {
        push(&mut found, -(&coeffs[0] / &coeffs[1]));
        return found;
    }
    if degree == 2 {
        let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
        let disc = b * b - field.int(4) * a * c;
        if let Ok(s) = disc.sqrt() {
            let two_a = field.int(2) * a;
            push(&mut found, (-b + &s) / &two_a);
            push(&mut found, (-b - &s) / &two_a);
        }
        return found;
    }
    let real: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect();
    let conj: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.conjugate().to_f64(), 0.0)).collect();
    let xs = real_roots(&real);
    let ys = if field == Field::RATIONALS { xs.clone() } else { real_roots(&conj) };
    let sqrt_d = (field.tag() as f64).sqrt();
    for x in &xs {
        for y in &ys {
            let a = (x + y) / 2.0;
            let b = if field == Field::RATIONALS { 0.0 } else { (x - y) / (2.0 * sqrt_d) };
            if let (Some(a), Some(b)) = (rationalize(a), rationalize(b)) {
                push(&mut found, field.element(a, b));
            }
        }
    }
    found
}

fn real_roots(coeffs: &[Complex64]) -> Vec<f64> {
    aberth(coeffs).into_iter().filter(|z| z.im.abs() < 1e-7 * (1.0 + z.re.abs())).map(|z| z.re).collect()
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(bound * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    let p = |x: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
    let dp = |x: Complex64| monic.iter().enumerate().skip(1).rev().fold(Complex64::zero(), |acc, (k, c)| acc * x + c * k as f64);
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = p(z[i]) / dp(z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Best rational approximation with a modest denominator, if one is close.
fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = BigRational::new(h1.clone(), k1.clone());
        use num_traits::ToPrimitive;
        if (approx.to_f64()? - x).abs() < 1e-9 * (1.0 + x.abs()) {
            return Some(approx);
        }
        if k1 > BigInt::from(1_000_000) {
            return None;
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return Some(approx);
        }
        r = 1.0 / frac;
    }
    None
}
