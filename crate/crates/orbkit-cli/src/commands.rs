//! One function per subcommand, each turning fixtures into a `Report`.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use orbkit::bimodules::{relative_tensor, split_orbifold_datum, trace_and_qdim, zorro_check};
use orbkit::ew::{ew_forward_with, ew_inverse, ew_roundtrip_check_with, EwError, TraceNormalization};
use orbkit::frobenius::{check_frobenius, euler_gamma, window_element, window_sqrt};
use orbkit::fusioncat::{
    check_fusion, check_module_trace, check_pivotal_equivalence, check_rigidity_strong, left_adjoint_from_trace, LinearFunctor,
};
use orbkit::linalg::Matrix;
use orbkit::rtdefects::{check_bimodule_over_pair_with, check_commutative_frobenius, check_frobenius_over_pair};
use orbkit::schema::AlgebraFile;
use orbkit::statesum::{
    fhk_evaluate, orbifold_evaluate_with, pachner_invariance, random_moves, state_space_dim, tv_evaluate, HostChoice, StateSumResult,
    Theory,
};
use rayon::prelude::*;

use crate::error::CliError;
use crate::registry::{Kind, Registry};
use crate::report::Report;

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Frobenius, symmetry and separability of an algebra with its counit.
    CheckFrobenius { algebra: String },
    /// The window element and its square root in the field.
    Window { algebra: String },
    /// The Euler-completed algebra; written to `-o` when given.
    Gamma {
        algebra: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relative tensor product of two composable bimodules.
    Reltensor { first: String, second: String },
    /// Left and right quantum dimensions and the Zorro identities.
    Qdim { bimodule: String },
    /// Splits an orbifold datum as a condensation.
    SplitOrbifold { datum: String },
    /// Pentagon, unit, sphericality and rigidity of fusion data.
    CheckFusion { fusion: String },
    /// Trace compatibility of a module category.
    CheckModuleTrace { module: String },
    /// Left adjoint of the identity functor between two trace choices.
    LeftAdjoint { source: String, target: String },
    /// Translation between Frobenius algebras and Calabi-Yau categories.
    Ew {
        #[command(subcommand)]
        direction: EwCommand,
    },
    /// Two-dimensional state sum of a closed surface.
    Fhk { triangulation: String, algebra: String },
    /// Three-dimensional state sum of a closed 3-manifold.
    Tv { triangulation: String, fusion: String },
    /// Evaluates along a seeded random sequence of Pachner moves.
    Pachner(PachnerArgs),
    /// State sum of a stratified complex with defects.
    OrbifoldEval {
        stratified: String,
        #[arg(long, value_enum, default_value_t = Host::First)]
        host: Host,
    },
    /// Rank of the cylinder projector on a boundary triangulation.
    StateSpace { boundary: String, theory: String },
    /// Commutative Δ-separable Frobenius algebra in a braided category.
    CheckCommFrob { fixture: String },
    /// Frobenius algebra over a pair, by both characterizations.
    CheckPair { fixture: String },
    /// Bimodule over two pairs with its exchange conditions.
    CheckPairBimodule { fixture: String },
    /// Every indexed fixture against its expected verdict, plus the golden values.
    Suite,
}

#[derive(Debug, Clone, Subcommand)]
pub enum EwCommand {
    Forward {
        algebra: String,
        #[arg(long, value_enum, default_value_t = Normalization::Euler)]
        normalization: Normalization,
    },
    Inverse {
        cy: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Roundtrip {
        algebra: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PachnerArgs {
    pub triangulation: String,
    /// An algebra fixture for surfaces, a fusion fixture for 3-manifolds.
    pub theory: String,
    /// Number of expanding moves.
    #[arg(long, default_value_t = 50)]
    pub moves: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Growth beyond the start size before contracting moves are interleaved.
    #[arg(long, default_value_t = 6)]
    pub slack: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Host {
    First,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    Euler,
    Few,
}

pub fn run(command: &Command, reg: &Registry) -> Result<Report, CliError> {
    match command {
        Command::CheckFrobenius { algebra } => check_frobenius_cmd(reg, algebra),
        Command::Window { algebra } => window(reg, algebra),
        Command::Gamma { algebra, output } => gamma(reg, algebra, output.as_ref()),
        Command::Reltensor { first, second } => reltensor(reg, first, second),
        Command::Qdim { bimodule } => qdim(reg, bimodule),
        Command::SplitOrbifold { datum } => split_orbifold(reg, datum),
        Command::CheckFusion { fusion } => check_fusion_cmd(reg, fusion),
        Command::CheckModuleTrace { module } => check_module_trace_cmd(reg, module),
        Command::LeftAdjoint { source, target } => left_adjoint(reg, source, target),
        Command::Ew { direction } => match direction {
            EwCommand::Forward { algebra, normalization } => ew_forward_cmd(reg, algebra, *normalization),
            EwCommand::Inverse { cy, output } => ew_inverse_cmd(reg, cy, output.as_ref()),
            EwCommand::Roundtrip { algebra } => ew_roundtrip(reg, algebra),
        },
        Command::Fhk { triangulation, algebra } => {
            let result = fhk_evaluate(&reg.triangulation(triangulation)?, &reg.algebra(algebra, None)?)?;
            Ok(evaluation("fhk", &[triangulation, algebra], &result))
        }
        Command::Tv { triangulation, fusion } => {
            let result = tv_evaluate(&reg.triangulation(triangulation)?, &reg.fusion(fusion, None)?)?;
            Ok(evaluation("tv", &[triangulation, fusion], &result))
        }
        Command::Pachner(args) => pachner(reg, args),
        Command::OrbifoldEval { stratified, host } => {
            let hosts = match host {
                Host::First => HostChoice::First,
                Host::Last => HostChoice::Last,
            };
            let result = orbifold_evaluate_with(&reg.stratified(stratified)?, hosts)?;
            Ok(evaluation("orbifold-eval", &[stratified], &result))
        }
        Command::StateSpace { boundary, theory } => state_space(reg, boundary, theory),
        Command::CheckCommFrob { fixture } => check_comm_frob(reg, fixture),
        Command::CheckPair { fixture } => check_pair(reg, fixture),
        Command::CheckPairBimodule { fixture } => check_pair_bimodule(reg, fixture),
        Command::Suite => Ok(suite(reg)),
    }
}

fn evaluation(command: &str, inputs: &[&str], result: &StateSumResult) -> Report {
    let mut report = Report::new(command, inputs);
    report.scalar("value", &result.value).text("simplices", result.stats.simplices).text("terms", result.stats.terms);
    report
}

fn check_frobenius_cmd(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let (algebra, counit) = reg.raw_algebra(reference)?;
    let verdict = check_frobenius(&algebra, &counit)?;
    let mut report = Report::new("check-frobenius", &[reference]);
    report.check("frobenius", verdict.frobenius).check("symmetric", verdict.symmetric).check("separable", verdict.separable);
    report.text("delta_separable", verdict.delta_separable);
    Ok(report)
}

fn window(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let f = reg.algebra(reference, None)?;
    let element = window_element(&f);
    let mut report = Report::new("window", &[reference]);
    report.check("invertible", f.algebra().inverse_of(&element).is_some());
    report.scalars("window", &element);
    match window_sqrt(&f) {
        Ok(root) => report.scalars("window_sqrt", &root),
        Err(e) => report.text("window_sqrt", format!("none: {e}")),
    };
    Ok(report)
}

fn gamma(reg: &Registry, reference: &str, output: Option<&PathBuf>) -> Result<Report, CliError> {
    let gamma = euler_gamma(&reg.algebra(reference, None)?)?;
    let verdict = check_frobenius(gamma.algebra(), gamma.counit())?;
    let mut report = Report::new("gamma", &[reference]);
    report.check("frobenius", verdict.frobenius).check("symmetric", verdict.symmetric);
    report.scalars("counit", gamma.counit()).scalars("psi", &gamma.psi());
    if let Some(path) = output {
        let text = serde_json::to_string_pretty(&AlgebraFile::from_structure(&gamma)).expect("algebra files serialize");
        std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
        report.text("written", path.display());
    }
    Ok(report)
}

fn reltensor(reg: &Registry, first: &str, second: &str) -> Result<Report, CliError> {
    let (x, y) = (reg.bimodule(first, None)?, reg.bimodule(second, None)?);
    let (product, split) = relative_tensor(&x, &y)?;
    let mut report = Report::new("reltensor", &[first, second]);
    report.check("idempotent", split.is_idempotent()).check("split", split.is_split());
    report.text("plain_dim", x.dim() * y.dim()).text("dim", product.dim());
    Ok(report)
}

fn qdim(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let x = reg.bimodule(reference, None)?;
    let traces = trace_and_qdim(&x, &Matrix::identity(x.dim(), x.field()))?;
    let zorro = zorro_check(&x)?;
    let mut report = Report::new("qdim", &[reference]);
    report.check_with("zorro", zorro.holds(), (!zorro.holds()).then(|| format!("{zorro:?}")));
    report.scalars("dim_l", &traces.dim_l).scalars("dim_r", &traces.dim_r);
    Ok(report)
}

fn split_orbifold(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let input = reg.orbifold(reference)?;
    let mut report = Report::new("split-orbifold", &[reference]);
    match split_orbifold_datum(&input) {
        Ok(splitting) => {
            report.check("splits", true).check("split_idempotent", splitting.split.is_split());
            report.text("bimodule_dim", splitting.bimodule.dim()).text("composite_dim", splitting.composite.dim());
            report.text("comultiplication_checked", splitting.comultiplication_checked);
        }
        Err(e) => {
            report.check_with("splits", false, Some(e.to_string()));
        }
    }
    Ok(report)
}

fn check_fusion_cmd(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let data = reg.fusion(reference, None)?;
    let verdict = check_fusion(&data);
    let rigidity = check_rigidity_strong(&data);
    let mut report = Report::new("check-fusion", &[reference]);
    report.check_with("pentagon", verdict.pentagon, verdict.pentagon_witness.map(|w| format!("at {w:?}")));
    report.check("unit", verdict.unit).check("spherical", verdict.spherical);
    report.check_with("rigidity", rigidity.strong, rigidity.witness.map(|w| format!("{w:?}")));
    if let Some(consistent) = verdict.euler_consistent {
        report.check("euler_datum", consistent);
    }
    report.scalar("globaldim", &verdict.globaldim);
    Ok(report)
}

fn check_module_trace_cmd(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let module = reg.module(reference, None)?;
    let verdict = check_module_trace(&module);
    let mut report = Report::new("check-module-trace", &[reference]);
    report.check_with("module_trace", verdict.holds, verdict.witness.map(|w| format!("at {w:?}")));
    report.scalars("traces", &module.traces);
    Ok(report)
}

fn left_adjoint(reg: &Registry, source: &str, target: &str) -> Result<Report, CliError> {
    let functor = LinearFunctor::identity_between(reg.cy(source)?, reg.cy(target)?)?;
    let mut report = Report::new("left-adjoint", &[source, target]);
    match left_adjoint_from_trace(&functor, &functor.canonical_right_adjunction()) {
        Ok(left) => {
            report.check("zorro", true);
            report.check("pivotal_equivalence", check_pivotal_equivalence(&functor)?);
            let diagonal = |ms: &[orbkit::fusioncat::SemisimpleMorphism]| {
                ms.iter().enumerate().map(|(i, m)| m.blocks[i].get(0, 0).clone()).collect::<Vec<_>>()
            };
            report.scalars("counit", &diagonal(&left.counit)).scalars("unit", &diagonal(&left.unit));
        }
        Err(e) => {
            report.check_with("zorro", false, Some(e.to_string()));
        }
    }
    Ok(report)
}

fn ew_forward_cmd(reg: &Registry, reference: &str, normalization: Normalization) -> Result<Report, CliError> {
    let f = reg.algebra(reference, None)?;
    let normalization = match normalization {
        Normalization::Euler => TraceNormalization::Euler,
        Normalization::Few => TraceNormalization::Few,
    };
    let forward = ew_forward_with(&f, normalization)?;
    let mut report = Report::new("ew forward", &[reference]);
    report.text("simples", forward.category.simples()).scalars("traces", forward.category.traces());
    report.text("module_dims", format!("{:?}", forward.decomposition.simple_module_dims()));
    Ok(report)
}

fn ew_inverse_cmd(reg: &Registry, reference: &str, output: Option<&PathBuf>) -> Result<Report, CliError> {
    let cy = reg.cy(reference)?;
    let mut report = Report::new("ew inverse", &[reference]);
    match ew_inverse(&cy) {
        Ok(f) => {
            report.check("inverse_exists", true);
            report.text("dim", f.dim()).scalars("counit", f.counit());
            if let Some(path) = output {
                let text = serde_json::to_string_pretty(&AlgebraFile::from_structure(&f)).expect("algebra files serialize");
                std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
                report.text("written", path.display());
            }
        }
        Err(e @ EwError::NoSquareRootInField { .. }) => {
            report.check_with("inverse_exists", false, Some(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn ew_roundtrip(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let f = reg.algebra(reference, None)?;
    let mut report = Report::new("ew roundtrip", &[reference]);
    match ew_roundtrip_check_with(&f, |_| {}) {
        Ok(r) => {
            report.check("traces_match", r.traces_match).check("block_count_match", r.block_count_match);
            report.check("morita_dims_trivial", r.morita_dims_trivial).check("morita_zorro", r.morita_zorro);
        }
        Err(e @ EwError::NoSquareRootInField { .. }) => {
            report.check_with("inverse_exists", false, Some(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn theory(reg: &Registry, reference: &str) -> Result<Theory, CliError> {
    Ok(match reg.load(reference, None)?.kind {
        Kind::Algebra => Theory::Frobenius(reg.algebra(reference, None)?),
        Kind::Fusion | Kind::Braided => Theory::Fusion(reg.fusion(reference, None)?),
        other => return Err(CliError::Usage(format!("{reference}: a {other} fixture is not a state-sum theory"))),
    })
}

fn pachner(reg: &Registry, args: &PachnerArgs) -> Result<Report, CliError> {
    let t = reg.triangulation(&args.triangulation)?;
    let theory = theory(reg, &args.theory)?;
    let moves = random_moves(&t, args.moves, args.seed, args.slack);
    let outcome = pachner_invariance(&t, &theory, &moves)?;
    let mut report = Report::new("pachner", &[&args.triangulation, &args.theory]);
    let first_change = outcome.steps.iter().position(|s| s.value != outcome.initial);
    report.check_with("invariant", outcome.all_equal, first_change.map(|i| format!("value changed at move {}", i + 1)));
    report.scalar("value", &outcome.initial);
    report.text("moves", moves.len()).text("expanding_moves", outcome.expanding_moves()).text("seed", args.seed);
    let largest = outcome.steps.iter().map(|s| s.simplices).max().unwrap_or(0);
    report.text("largest_complex", largest);
    Ok(report)
}

fn state_space(reg: &Registry, boundary: &str, theory_ref: &str) -> Result<Report, CliError> {
    let sigma = reg.triangulation(boundary)?;
    let verdict = state_space_dim(&sigma, &theory(reg, theory_ref)?)?;
    let mut report = Report::new("state-space", &[boundary, theory_ref]);
    report.check("idempotent", verdict.idempotent);
    report.text("value", verdict.rank).scalar("trace", &verdict.trace).text("boundary_states", verdict.boundary_states);
    Ok(report)
}

fn check_comm_frob(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let (cat, algebra) = reg.comm_frob(reference)?;
    let verdict = check_commutative_frobenius(&cat, &algebra)?;
    let mut report = Report::new("check-comm-frob", &[reference]);
    let witness = verdict.witness.as_ref().map(|w| format!("{w:?}"));
    report.check("algebra", verdict.algebra).check("commutative", verdict.commutative);
    report.check("frobenius", verdict.frobenius).check_with("delta_separable", verdict.delta_separable, witness);
    Ok(report)
}

fn check_pair(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let (cat, pair) = reg.pair(reference, None)?;
    let verdict = check_frobenius_over_pair(&cat, &pair)?;
    let mut report = Report::new("check-pair", &[reference]);
    report.check("preconditions", verdict.preconditions);
    let witness = verdict.witness.as_ref().map(|w| format!("{w:?}"));
    report.check_with("via_algebra_maps", verdict.via_algebra_maps, witness);
    report.check("via_exchange_relations", verdict.via_exchange_relations).check("agree", verdict.agree);
    Ok(report)
}

fn check_pair_bimodule(reg: &Registry, reference: &str) -> Result<Report, CliError> {
    let fixture = reg.pair_bimodule(reference)?;
    let verdict = check_bimodule_over_pair_with(&fixture.category, &fixture.module, &fixture.right, &fixture.left, fixture.crossings)?;
    let mut report = Report::new("check-pair-bimodule", &[reference]);
    let witness = verdict.witness.as_ref().map(|w| format!("{w:?}"));
    report.check("bimodule", verdict.bimodule).check("right_exchange", verdict.right_exchange);
    report.check_with("left_exchange", verdict.left_exchange, witness);
    Ok(report)
}

/// The check that decides an indexed fixture's verdict, if its kind has one.
fn natural_command(kind: Kind, name: &str) -> Option<Command> {
    let name = name.to_string();
    Some(match kind {
        Kind::Algebra => Command::CheckFrobenius { algebra: name },
        Kind::Bimodule => Command::Qdim { bimodule: name },
        Kind::Orbifold => Command::SplitOrbifold { datum: name },
        Kind::Fusion | Kind::Braided => Command::CheckFusion { fusion: name },
        Kind::Cy => Command::Ew { direction: EwCommand::Inverse { cy: name, output: None } },
        Kind::Module => Command::CheckModuleTrace { module: name },
        Kind::CommFrob => Command::CheckCommFrob { fixture: name },
        Kind::Pair => Command::CheckPair { fixture: name },
        Kind::PairBimodule => Command::CheckPairBimodule { fixture: name },
        Kind::Map | Kind::Triangulation | Kind::Stratified => return None,
    })
}

/// Fixtures and goldens run in parallel; the report lists them in index order.
fn suite(reg: &Registry) -> Report {
    let index = reg.index();
    let fixtures: Vec<_> = index
        .fixtures
        .par_iter()
        .filter_map(|entry| {
            let expected = entry.expect?;
            let command = natural_command(entry.kind, &entry.name)?;
            let (passed, detail) = match run(&command, reg) {
                Ok(r) if r.passed == expected => (true, None),
                Ok(r) => {
                    (false, Some(format!("expected {expected}, got {} ({})", r.passed, r.first_failure().map_or("all pass", |c| &c.name))))
                }
                Err(e) => (false, Some(e.to_string())),
            };
            Some((format!("fixture {}", entry.name), passed, detail))
        })
        .collect();
    let goldens: Vec<_> = index
        .goldens
        .par_iter()
        .map(|golden| {
            let outcome = crate::parse_command(&golden.args).and_then(|command| run(&command, reg));
            let (passed, detail) = match outcome {
                Ok(r) => match r.value("value") {
                    Some(v) if v.display == golden.value => (true, None),
                    Some(v) => (false, Some(format!("expected {}, got {}", golden.value, v.display))),
                    None => (false, Some("no value reported".into())),
                },
                Err(e) => (false, Some(e.to_string())),
            };
            (format!("golden {}", golden.args.join(" ")), passed, detail)
        })
        .collect();
    let mut report = Report::new("suite", &[]);
    for (name, passed, detail) in fixtures.into_iter().chain(goldens) {
        report.check_with(&name, passed, detail);
    }
    report
}
