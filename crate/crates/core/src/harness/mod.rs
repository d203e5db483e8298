//! Randomized, exactly checked verification of valuation and equivariance laws.
//!
//! Every check runs `budget.trials` independent trials. Trial `i` draws its
//! data from its own RNG stream, trials run in parallel, and the reported
//! counterexample is the failing trial with the smallest index, so a report
//! depends only on the budget.

mod sample;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::classify::{is_double_pyramid, make_double_pyramid, DoublePyramidParams};
use crate::error::{Error, Result};
use crate::functionals::{ValuationHandle, Value, ValueKind};
use crate::geometry::{apply_linear_map, intersect, split_by_slab, union_if_convex, Polytope};
use crate::json::{linear_map_to_json, polytope_to_json, scalar_to_json, value_to_json};
use crate::linalg::{LinearMap, Vector};
use crate::scalar::Scalar;

pub use sample::{Sampler, MAX_GENERATOR_RETRIES};

/// Size and seed of a randomized check. Equal budgets give equal trials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrialBudget {
    pub trials: usize,
    pub dim: usize,
    /// Bound on numerators and denominators of random rationals.
    pub coeff_bound: i64,
    pub seed: u64,
}

impl TrialBudget {
    pub fn new(trials: usize, dim: usize, seed: u64) -> Self {
        TrialBudget { trials, dim, coeff_bound: 4, seed }
    }

    pub fn with_dim(&self, dim: usize) -> Self {
        TrialBudget { dim, ..self.clone() }
    }

    pub fn with_trials(&self, trials: usize) -> Self {
        TrialBudget { trials, ..self.clone() }
    }
}

impl Default for TrialBudget {
    fn default() -> Self {
        TrialBudget::new(100, 2, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetSign {
    Plus,
    Minus,
    Either,
}

/// Determinant `+1`, `-1` or a uniform choice, from the budget's seed alone.
pub fn random_unimodular<T: Scalar>(budget: &TrialBudget, sign: DetSign) -> LinearMap<T> {
    Sampler::for_trial(budget, u64::MAX).unimodular(budget.dim, sign)
}

/// The polytope trial `index` of a check with this budget works on.
pub fn random_polytope<T: Scalar>(budget: &TrialBudget, index: u64) -> Result<Polytope<T>> {
    Sampler::for_trial(budget, index).polytope(budget.dim, index)
}

/// Transformation law tested by [`check_equivariance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquivarianceMode {
    /// `mu(phi P) = mu(P)`, `det phi = 1`.
    Invariant,
    /// `mu(phi P) = phi mu(P)`, `det phi = 1`.
    SlCovariant,
    /// `mu(phi P) = phi^{-t} mu(P)`, `det phi = 1`.
    SlContravariant,
    /// `mu(phi P) = phi mu(P)`, `det phi = +-1`.
    VlCovariant,
    /// `mu(phi P) = (det phi) phi mu(P)`, `det phi = +-1`.
    VlSignumCovariant,
    /// `mu(phi P) = |det phi| phi mu(P) phi^t`, `phi` invertible.
    GlCovariant,
    /// `mu(phi P) = |det phi|^{-1} phi^{-t} mu(P) phi^{-1}`, `phi` invertible.
    GlContravariant,
}

impl EquivarianceMode {
    pub const ALL: [EquivarianceMode; 7] = [
        EquivarianceMode::Invariant,
        EquivarianceMode::SlCovariant,
        EquivarianceMode::SlContravariant,
        EquivarianceMode::VlCovariant,
        EquivarianceMode::VlSignumCovariant,
        EquivarianceMode::GlCovariant,
        EquivarianceMode::GlContravariant,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            EquivarianceMode::Invariant => "invariant",
            EquivarianceMode::SlCovariant => "sl_covariant",
            EquivarianceMode::SlContravariant => "sl_contravariant",
            EquivarianceMode::VlCovariant => "vl_covariant",
            EquivarianceMode::VlSignumCovariant => "vl_signum_covariant",
            EquivarianceMode::GlCovariant => "gl_covariant",
            EquivarianceMode::GlContravariant => "gl_contravariant",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.tag() == tag)
            .ok_or_else(|| Error::Parse(format!("unknown equivariance mode {tag:?}")))
    }

    /// Value kind the law applies to; `None` for any kind.
    pub fn kind(self) -> Option<ValueKind> {
        match self {
            EquivarianceMode::Invariant => None,
            EquivarianceMode::GlCovariant | EquivarianceMode::GlContravariant => Some(ValueKind::Matrix),
            _ => Some(ValueKind::Vector),
        }
    }

    fn sample_map<T: Scalar>(self, s: &mut Sampler, n: usize) -> LinearMap<T> {
        match self {
            EquivarianceMode::Invariant | EquivarianceMode::SlCovariant | EquivarianceMode::SlContravariant => {
                s.unimodular(n, DetSign::Plus)
            }
            EquivarianceMode::VlCovariant | EquivarianceMode::VlSignumCovariant => s.unimodular(n, DetSign::Either),
            EquivarianceMode::GlCovariant | EquivarianceMode::GlContravariant => s.general_linear(n),
        }
    }

    /// Right-hand side of the law for `mu(P) = value`.
    pub fn expected<T: Scalar>(self, phi: &LinearMap<T>, value: &Value<T>) -> Result<Value<T>> {
        Ok(match self {
            EquivarianceMode::Invariant => value.clone(),
            EquivarianceMode::SlCovariant | EquivarianceMode::VlCovariant => {
                Value::Vector(phi.apply(value.as_vector()?))
            }
            EquivarianceMode::SlContravariant => Value::Vector(phi.inverse_transpose()?.apply(value.as_vector()?)),
            EquivarianceMode::VlSignumCovariant => Value::Vector(phi.apply(value.as_vector()?).scale(phi.det())),
            EquivarianceMode::GlCovariant => Value::Matrix(phi.congruence(value.as_matrix()?).scale(&phi.det().abs())),
            EquivarianceMode::GlContravariant => {
                let inv_t = phi.inverse_transpose()?;
                Value::Matrix(inv_t.congruence(value.as_matrix()?).scale(&(T::one() / phi.det().abs())))
            }
        })
    }
}

/// Evidence that a law failed, complete enough to evaluate again.
#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample<T> {
    /// `mu(K u L) + mu(K n L) != mu(K) + mu(L)`.
    Valuation {
        k: Polytope<T>,
        l: Polytope<T>,
        union: Polytope<T>,
        intersection: Polytope<T>,
        lhs: Value<T>,
        rhs: Value<T>,
    },
    /// `mu(phi P)` differs from the law's prediction.
    Equivariance { mode: EquivarianceMode, polytope: Polytope<T>, map: LinearMap<T>, lhs: Value<T>, rhs: Value<T> },
    /// `mu(r P) != r^q mu(P)`.
    Homogeneity { polytope: Polytope<T>, r: T, q: i32, lhs: Value<T>, rhs: Value<T> },
    /// A scalar identity in named rational inputs; the producing check has a
    /// matching `*_sides` function to evaluate it again.
    Scalars { identity: String, inputs: Vec<(String, T)>, lhs: T, rhs: T },
}

impl<T: Scalar> Counterexample<T> {
    /// Evaluates `mu` on the stored data again and confirms the two sides
    /// still differ. Scalar witnesses only compare the stored sides.
    pub fn replays(&self, mu: &ValuationHandle<T>) -> Result<bool> {
        match self {
            Counterexample::Valuation { k, l, union, intersection, .. } => {
                if union_if_convex(k, l)? != *union || intersect(k, l)? != *intersection {
                    return Ok(false);
                }
                let (lhs, rhs) = valuation_sides(mu, k, l, union, intersection)?;
                Ok(lhs != rhs)
            }
            Counterexample::Equivariance { mode, polytope, map, .. } => {
                let (lhs, rhs) = equivariance_sides(mu, *mode, polytope, map)?;
                Ok(lhs != rhs)
            }
            Counterexample::Homogeneity { polytope, r, q, .. } => {
                let (lhs, rhs) = homogeneity_sides(mu, polytope, r, *q)?;
                Ok(lhs != rhs)
            }
            Counterexample::Scalars { lhs, rhs, .. } => Ok(lhs != rhs),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Counterexample::Valuation { k, l, union, intersection, lhs, rhs } => json!({
                "kind": "valuation",
                "K": polytope_to_json(k),
                "L": polytope_to_json(l),
                "union": polytope_to_json(union),
                "intersection": polytope_to_json(intersection),
                "lhs": value_to_json(lhs),
                "rhs": value_to_json(rhs),
            }),
            Counterexample::Equivariance { mode, polytope, map, lhs, rhs } => json!({
                "kind": "equivariance",
                "mode": mode.tag(),
                "polytope": polytope_to_json(polytope),
                "map": linear_map_to_json(map),
                "lhs": value_to_json(lhs),
                "rhs": value_to_json(rhs),
            }),
            Counterexample::Homogeneity { polytope, r, q, lhs, rhs } => json!({
                "kind": "homogeneity",
                "polytope": polytope_to_json(polytope),
                "r": scalar_to_json(r),
                "q": q,
                "lhs": value_to_json(lhs),
                "rhs": value_to_json(rhs),
            }),
            Counterexample::Scalars { identity, inputs, lhs, rhs } => {
                let inputs: serde_json::Map<String, Json> =
                    inputs.iter().map(|(k, v)| (k.clone(), scalar_to_json(v))).collect();
                json!({
                    "kind": "scalars",
                    "identity": identity,
                    "inputs": inputs,
                    "lhs": scalar_to_json(lhs),
                    "rhs": scalar_to_json(rhs),
                })
            }
        }
    }
}

/// Outcome of a randomized check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<T> {
    pub passed: bool,
    pub trials: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample<T>>,
}

impl<T: Scalar> CheckReport<T> {
    pub fn pass(trials: usize, seed: u64) -> Self {
        CheckReport { passed: true, trials, seed, counterexample: None }
    }

    pub fn fail(trials: usize, seed: u64, witness: Counterexample<T>) -> Self {
        CheckReport { passed: false, trials, seed, counterexample: Some(witness) }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "passed": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "counterexample": self.counterexample.as_ref().map_or(Json::Null, Counterexample::to_json),
        })
    }
}

/// Runs `trial(sampler, index)` for every index in parallel and keeps the
/// lowest-index failure. An error in any trial aborts the check with the
/// lowest-index error.
pub fn run_trials<T, F>(budget: &TrialBudget, trial: F) -> Result<CheckReport<T>>
where
    T: Scalar,
    F: Fn(&mut Sampler, u64) -> Result<Option<Counterexample<T>>> + Sync,
{
    let outcomes: Vec<Result<Option<Counterexample<T>>>> =
        (0..budget.trials as u64).into_par_iter().map(|i| trial(&mut Sampler::for_trial(budget, i), i)).collect();
    for outcome in outcomes {
        if let Some(w) = outcome? {
            return Ok(CheckReport::fail(budget.trials, budget.seed, w));
        }
    }
    Ok(CheckReport::pass(budget.trials, budget.seed))
}

fn valuation_sides<T: Scalar>(
    mu: &ValuationHandle<T>,
    k: &Polytope<T>,
    l: &Polytope<T>,
    union: &Polytope<T>,
    intersection: &Polytope<T>,
) -> Result<(Value<T>, Value<T>)> {
    let lhs = mu.evaluate(union)?.add(&mu.evaluate(intersection)?)?;
    let rhs = mu.evaluate(k)?.add(&mu.evaluate(l)?)?;
    Ok((lhs, rhs))
}

/// Tests the valuation identity on one pair whose union is convex.
pub fn check_valuation_pair<T: Scalar>(
    mu: &ValuationHandle<T>,
    k: &Polytope<T>,
    l: &Polytope<T>,
) -> Result<Option<Counterexample<T>>> {
    let union = union_if_convex(k, l)?;
    let intersection = intersect(k, l)?;
    let (lhs, rhs) = valuation_sides(mu, k, l, &union, &intersection)?;
    Ok((lhs != rhs).then(|| Counterexample::Valuation { k: k.clone(), l: l.clone(), union, intersection, lhs, rhs }))
}

/// `mu(K u L) + mu(K n L) = mu(K) + mu(L)` on random slab splits `P = K u L`.
pub fn check_valuation_identity<T: Scalar>(mu: &ValuationHandle<T>, budget: &TrialBudget) -> Result<CheckReport<T>> {
    run_trials(budget, |s, i| {
        let p = s.polytope::<T>(budget.dim, i)?;
        let (d, lo, hi) = s.slab(&p);
        let (k, l) = split_by_slab(&p, &d, &lo, &hi)?;
        let intersection = intersect(&k, &l)?;
        let (lhs, rhs) = valuation_sides(mu, &k, &l, &p, &intersection)?;
        Ok((lhs != rhs).then(|| Counterexample::Valuation { k, l, union: p, intersection, lhs, rhs }))
    })
}

fn equivariance_sides<T: Scalar>(
    mu: &ValuationHandle<T>,
    mode: EquivarianceMode,
    p: &Polytope<T>,
    phi: &LinearMap<T>,
) -> Result<(Value<T>, Value<T>)> {
    let lhs = mu.evaluate(&apply_linear_map(phi, p)?)?;
    let rhs = mode.expected(phi, &mu.evaluate(p)?)?;
    Ok((lhs, rhs))
}

pub fn check_equivariance<T: Scalar>(
    mu: &ValuationHandle<T>,
    mode: EquivarianceMode,
    budget: &TrialBudget,
) -> Result<CheckReport<T>> {
    if let Some(kind) = mode.kind() {
        if kind != mu.kind() {
            return Err(Error::KindMismatch { expected: kind.name(), got: mu.kind().name() });
        }
    }
    run_trials(budget, |s, i| {
        let p = s.polytope::<T>(budget.dim, i)?;
        let phi = mode.sample_map::<T>(s, budget.dim);
        let (lhs, rhs) = equivariance_sides(mu, mode, &p, &phi)?;
        Ok((lhs != rhs).then(|| Counterexample::Equivariance { mode, polytope: p, map: phi, lhs, rhs }))
    })
}

fn homogeneity_sides<T: Scalar>(
    mu: &ValuationHandle<T>,
    p: &Polytope<T>,
    r: &T,
    q: i32,
) -> Result<(Value<T>, Value<T>)> {
    Ok((mu.evaluate(&p.scaled(r))?, mu.evaluate(p)?.scale(&r.powi(q))))
}

/// `mu(r P) = r^q mu(P)` for random rational `r > 0`; integer `q` only.
pub fn check_homogeneity<T: Scalar>(mu: &ValuationHandle<T>, q: &T, budget: &TrialBudget) -> Result<CheckReport<T>> {
    let q = q
        .to_i64_exact()
        .and_then(|q| i32::try_from(q).ok())
        .ok_or_else(|| Error::UnsupportedExponent(q.to_string()))?;
    run_trials(budget, |s, i| {
        let p = s.polytope::<T>(budget.dim, i)?;
        let r = s.positive::<T>();
        let (lhs, rhs) = homogeneity_sides(mu, &p, &r, q)?;
        Ok((lhs != rhs).then(|| Counterexample::Homogeneity { polytope: p, r, q, lhs, rhs }))
    })
}

/// `K = [B, -c(x,1), t(y,1)]` and `L = [B, -s(y,1), d(y,1)]`, returned only
/// after confirming exactly that `K u L = [B, -c(x,1), d(y,1)]` is convex and
/// `K n L = [B, -s(y,1), t(y,1)]`.
#[allow(clippy::too_many_arguments)]
pub fn gen_pyramid_cap_pair<T: Scalar>(
    base: &Polytope<T>,
    c: &T,
    d: &T,
    s: &T,
    t: &T,
    x: &Vector<T>,
    y: &Vector<T>,
) -> Result<(Polytope<T>, Polytope<T>)> {
    if !(t.is_positive() && t <= d) {
        return Err(Error::InvalidConfiguration("need 0 < t <= d".into()));
    }
    if !(s.is_positive() && s <= c) {
        return Err(Error::InvalidConfiguration("need 0 < s <= c".into()));
    }
    let body = |lc: &T, lx: &Vector<T>, ud: &T| -> Result<Polytope<T>> {
        let p = DoublePyramidParams::new(base.clone(), lc.clone(), ud.clone(), lx.clone(), y.clone())?;
        if !is_double_pyramid(&p) {
            return Err(Error::InvalidConfiguration(format!(
                "[B, -{lc}(x,1), {ud}(y,1)] is not a double pyramid over B"
            )));
        }
        Ok(make_double_pyramid(&p))
    };
    let k = body(c, x, t)?;
    let l = body(s, y, d)?;
    let want_union = body(c, x, d)?;
    let want_meet = body(s, y, t)?;
    match union_if_convex(&k, &l) {
        Ok(u) if u == want_union => {}
        Ok(_) | Err(Error::NonConvexUnion) => {
            return Err(Error::InvalidConfiguration("K u L is not [B, -c(x,1), d(y,1)]".into()))
        }
        Err(e) => return Err(e),
    }
    match intersect(&k, &l) {
        Ok(m) if m == want_meet => Ok((k, l)),
        Ok(_) | Err(Error::EmptyOrDegenerateIntersection) => {
            Err(Error::InvalidConfiguration("K n L is not [B, -s(y,1), t(y,1)]".into()))
        }
        Err(e) => Err(e),
    }
}
