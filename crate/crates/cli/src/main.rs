//! `valuation-lab`: exact polytope computations and valuation checks with JSON
//! on standard output.
//!
//! Exit status is 0 when a check or fit passes (or a computation succeeds),
//! 1 when it fails, and 2 on bad input, in which case standard output holds
//! `{"error": code, "detail": text}`.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use valuation_lab::classify::{
    check_homogeneous_solution, check_inhomogeneous_functional_eq, dim1_even_representation, dim1_odd_representation,
    fit_f_quadratic, fit_matrix_classification, fit_scalar_classification, fit_vector_classification, holdout_set,
    make_double_pyramid, matrix_training_set, scalar_training_set, segment_handle, two_adic_log_handle,
    vector_training_set, DoublePyramidParams,
};
use valuation_lab::expr::parse_mu;
use valuation_lab::functionals::{euler_characteristic, moment_matrix, moment_vector, volume, Value};
use valuation_lab::geometry::{cross_polytope, cube, polar};
use valuation_lab::harness::{
    check_equivariance, check_homogeneity, check_valuation_identity, EquivarianceMode, Sampler, TrialBudget,
};
use valuation_lab::json::{polytope_from_json, polytope_to_json, value_to_json};
use valuation_lab::scalar::{parse_scalar, Scalar};
use valuation_lab::{CheckReport, Error, FitResult, Polytope, Rational};

#[derive(Parser)]
#[command(name = "valuation-lab", version, about = "Exact polytope valuations: compute, generate, check, fit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Ambient dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// RNG seed; every report is a function of the seed.
    #[arg(long, env = "VALUATION_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Bound on numerators and denominators of random rationals.
    #[arg(long, default_value_t = 4)]
    coeff_bound: i64,
}

impl Common {
    fn budget(&self) -> TrialBudget {
        TrialBudget { trials: self.trials, dim: self.dim, coeff_bound: self.coeff_bound, seed: self.seed }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a functional on a polytope.
    Compute {
        target: ComputeTarget,
        /// Polytope JSON: a file path, inline JSON, or `-` for stdin (default).
        #[arg(long)]
        input: Option<String>,
        /// Expression for `compute mu`, e.g. `2*m-5*rot-polar-m`.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Print the polar body.
    Polar {
        #[arg(long)]
        input: Option<String>,
    },
    /// Print a polytope from a named family.
    Generate {
        family: Family,
        #[command(flatten)]
        common: Common,
        /// Planar double pyramid `a,b,c,d[,x,y]`; random when omitted.
        #[arg(long)]
        params: Option<String>,
    },
    /// Run a randomized exact check and print its report.
    Check {
        kind: CheckKind,
        #[command(flatten)]
        common: Common,
        /// Handle expression under test.
        #[arg(long, alias = "target")]
        mu: Option<String>,
        /// Equivariance law, e.g. `sl_covariant`.
        #[arg(long)]
        mode: Option<String>,
        /// Homogeneity degree; for `dim1`, the degree of the basis family.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
        /// `k` and `k~` for the functional equation; fitted from moments when omitted.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        kt: Option<String>,
        /// Homogeneous form of the functional equation (`G(u) = u^2`).
        #[arg(long)]
        homogeneous: bool,
        /// Parity of the `dim1` family.
        #[arg(long, value_enum, default_value_t = Parity::Even)]
        parity: Parity,
    },
    /// Fit a handle against a classification basis and print the fit.
    Fit {
        kind: FitKind,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mu: String,
        /// JSON array of polytopes; the documented fixed set when omitted.
        #[arg(long)]
        train: Option<String>,
        /// JSON array of polytopes; 20 seeded random polytopes when omitted.
        #[arg(long)]
        holdout: Option<String>,
        /// For `matrix`: refuse handles failing the GL(n)-covariance check.
        #[arg(long)]
        screen: bool,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum ComputeTarget {
    Volume,
    Moment,
    MomentMatrix,
    Euler,
    Mu,
}

#[derive(ValueEnum, Clone, Copy)]
enum Family {
    DoublePyramid,
    Cross,
    Cube,
    Random,
}

#[derive(ValueEnum, Clone, Copy)]
enum CheckKind {
    Valuation,
    Equivariance,
    Homogeneity,
    FunctionalEq,
    Dim1,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Parity {
    Even,
    Odd,
}

#[derive(ValueEnum, Clone, Copy)]
enum FitKind {
    Scalar,
    Vector,
    Matrix,
}

/// A successful run: the document to print and whether it is a pass.
struct Outcome {
    doc: Json,
    passed: bool,
    summary: String,
}

fn computed(doc: Json) -> Outcome {
    Outcome { doc, passed: true, summary: String::new() }
}

fn from_report(r: CheckReport, what: &str) -> Outcome {
    let summary = format!("{what}: {} after {} trials (seed {})", verdict(r.passed), r.trials, r.seed);
    Outcome { doc: r.to_json(), passed: r.passed, summary }
}

fn from_fit(f: FitResult, what: &str) -> Outcome {
    let coeffs: Vec<String> = f.coefficients.iter().map(ToString::to_string).collect();
    let summary =
        format!("{what}: coefficients [{}], {} holdout failure(s)", coeffs.join(", "), f.holdout_failures.len());
    Outcome { doc: f.to_json(), passed: f.residual_ok, summary }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "passed"
    } else {
        "FAILED"
    }
}

/// Reads `source` as inline JSON, `-` for stdin, or a file path.
fn read_json(source: Option<&str>) -> Result<Json, Error> {
    let text = match source {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            s
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn read_polytope(source: Option<&str>) -> Result<Polytope, Error> {
    polytope_from_json(&read_json(source)?)
}

fn read_polytopes(source: &str) -> Result<Vec<Polytope>, Error> {
    match read_json(Some(source))? {
        Json::Array(items) => items.iter().map(polytope_from_json).collect(),
        _ => Err(Error::Parse("expected a JSON array of polytopes".into())),
    }
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_scalar(s).ok_or_else(|| Error::Parse(format!("not an exact rational: {s:?}")))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

fn integer_degree(s: &str) -> Result<i32, Error> {
    rational(s)?
        .to_i64_exact()
        .and_then(|q| i32::try_from(q).ok())
        .ok_or_else(|| Error::UnsupportedExponent(s.to_string()))
}

fn compute(target: ComputeTarget, input: Option<&str>, mu: &Option<String>) -> Result<Outcome, Error> {
    let p = read_polytope(input)?;
    let value = match target {
        ComputeTarget::Volume => Value::Scalar(volume(&p)),
        ComputeTarget::Euler => Value::Scalar(euler_characteristic(&p)),
        ComputeTarget::Moment => Value::Vector(moment_vector(&p)),
        ComputeTarget::MomentMatrix => Value::Matrix(moment_matrix(&p)),
        ComputeTarget::Mu => parse_mu::<Rational>(required(mu, "mu")?)?.evaluate(&p)?,
    };
    Ok(computed(json!({ "value": value_to_json(&value) })))
}

fn generate(family: Family, common: &Common, params: &Option<String>) -> Result<Outcome, Error> {
    let n = common.dim;
    if n == 0 {
        return Err(Error::Parse("--dim must be positive".into()));
    }
    let p: Polytope = match family {
        Family::Cube => cube(n),
        Family::Cross => cross_polytope(n),
        Family::Random => Sampler::for_trial(&common.budget(), 0).random_hull(n)?,
        Family::DoublePyramid => match params {
            Some(list) => {
                let xs = list.split(',').map(rational).collect::<Result<Vec<_>, _>>()?;
                let zero = Rational::from_int(0);
                let (x, y) = match xs.len() {
                    4 => (zero.clone(), zero),
                    6 => (xs[4].clone(), xs[5].clone()),
                    k => return Err(Error::Parse(format!("--params takes 4 or 6 values, got {k}"))),
                };
                let dp = DoublePyramidParams::planar(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone(), x, y)?;
                make_double_pyramid(&dp)
            }
            None if n >= 2 => make_double_pyramid(&Sampler::for_trial(&common.budget(), 0).double_pyramid_params(n)),
            None => return Err(Error::WrongDimension { expected: 2, got: n }),
        },
    };
    Ok(computed(polytope_to_json(&p)))
}

#[allow(clippy::too_many_arguments)]
fn check(
    kind: CheckKind,
    common: &Common,
    mu: &Option<String>,
    mode: &Option<String>,
    degree: &Option<String>,
    k: &Option<String>,
    kt: &Option<String>,
    homogeneous: bool,
    parity: Parity,
) -> Result<Outcome, Error> {
    let budget = common.budget();
    match kind {
        CheckKind::Valuation => {
            let h = parse_mu::<Rational>(required(mu, "mu")?)?;
            Ok(from_report(check_valuation_identity(&h, &budget)?, &format!("valuation identity for {}", h.name())))
        }
        CheckKind::Equivariance => {
            let h = parse_mu::<Rational>(required(mu, "mu")?)?;
            let mode = EquivarianceMode::from_tag(required(mode, "mode")?)?;
            let r = check_equivariance(&h, mode, &budget)?;
            Ok(from_report(r, &format!("{} for {}", mode.tag(), h.name())))
        }
        CheckKind::Homogeneity => {
            let h = parse_mu::<Rational>(required(mu, "mu")?)?;
            let q = rational(required(degree, "degree")?)?;
            Ok(from_report(check_homogeneity(&h, &q, &budget)?, &format!("degree {q} homogeneity for {}", h.name())))
        }
        CheckKind::FunctionalEq if homogeneous => {
            Ok(from_report(check_homogeneous_solution(&budget)?, "homogeneous equation for G(u) = u^2"))
        }
        CheckKind::FunctionalEq => {
            let (k, kt) = match (k, kt) {
                (Some(k), Some(kt)) => (rational(k)?, rational(kt)?),
                (None, None) => fit_f_quadratic(&Rational::from_int(2), &Rational::from_int(3))?,
                _ => return Err(Error::Parse("give both --k and --kt, or neither".into())),
            };
            let what = format!("functional equation for F(r) = ({k}) r^2 + ({kt})");
            Ok(from_report(check_inhomogeneous_functional_eq(&k, &kt, &budget)?, &what))
        }
        CheckKind::Dim1 => {
            let q = integer_degree(required(degree, "degree")?)?;
            let b1 = TrialBudget { dim: 1, ..budget };
            let report = match (parity, q) {
                (Parity::Even, _) => {
                    let h = segment_handle("a^q+b^q", move |a: &Rational, b: &Rational| a.powi(q) + b.powi(q));
                    dim1_even_representation(&h, Some(q), &b1)?
                }
                (Parity::Odd, 0) => dim1_odd_representation(&two_adic_log_handle(), Some(0), &b1)?,
                (Parity::Odd, _) => {
                    let h = segment_handle("b^q-a^q", move |a: &Rational, b: &Rational| b.powi(q) - a.powi(q));
                    dim1_odd_representation(&h, Some(q), &b1)?
                }
            };
            let what =
                format!("{} degree {q} segment representation", if parity == Parity::Even { "even" } else { "odd" });
            Ok(from_report(report, &what))
        }
    }
}

fn fit(
    kind: FitKind,
    common: &Common,
    mu: &str,
    train: &Option<String>,
    holdout: &Option<String>,
    screen: bool,
) -> Result<Outcome, Error> {
    let n = common.dim;
    let h = parse_mu::<Rational>(mu)?;
    let train = match train {
        Some(source) => read_polytopes(source)?,
        None => match kind {
            FitKind::Scalar => scalar_training_set(n),
            FitKind::Vector => vector_training_set(n),
            FitKind::Matrix => matrix_training_set(n),
        },
    };
    let holdout = match holdout {
        Some(source) => read_polytopes(source)?,
        None => holdout_set(n, 20, common.seed)?,
    };
    if let Some(p) = train.iter().chain(&holdout).find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch(n, p.dim()));
    }
    let result = match kind {
        FitKind::Scalar => fit_scalar_classification(&h, &train, &holdout)?,
        FitKind::Vector => fit_vector_classification(&h, n, &train, &holdout)?,
        FitKind::Matrix => {
            let budget = common.budget();
            fit_matrix_classification(&h, &train, &holdout, screen.then_some(&budget))?
        }
    };
    Ok(from_fit(result, &format!("fit of {}", h.name())))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Compute { target, input, mu } => compute(target, input.as_deref(), &mu),
        Command::Polar { input } => Ok(computed(polytope_to_json(&polar(&read_polytope(input.as_deref())?)?))),
        Command::Generate { family, common, params } => generate(family, &common, &params),
        Command::Check { kind, common, mu, mode, degree, k, kt, homogeneous, parity } => {
            check(kind, &common, &mu, &mode, &degree, &k, &kt, homogeneous, parity)
        }
        Command::Fit { kind, common, mu, train, holdout, screen } => fit(kind, &common, &mu, &train, &holdout, screen),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            println!("{}", json!({ "error": "usage", "detail": e.to_string().trim_end() }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.summary.is_empty() {
                eprintln!("{}", out.summary);
            }
            println!("{}", out.doc);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.code(), "detail": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
