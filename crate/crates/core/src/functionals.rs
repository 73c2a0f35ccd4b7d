//! Linear functionals on fuzzy-number spaces.
//!
//! Every functional here factors through the sum `x₋ + x₊` of the endpoint
//! functions: on `ℝ_F` it is `x ↦ ∫₀¹ h d[x₋ + x₊]`, and the sequence and
//! curve families sum or integrate that over indices or `t`.
//!
//! The constructive side of the representation is the map `L₀` on
//! `A = {f + g : f nondecreasing, g nonincreasing, f ≤ g}`: a monotone `u`
//! is split canonically into such a pair, the pair is read as a fuzzy
//! number, and the functional is applied to it.

use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::checker::{self, CheckReport, GenConfig, Generate, TrialLog};
use crate::error::{Error, Result};
use crate::fuzznum::FuzzyNum;
use crate::levelfun::{rs_integral, rs_integral_mixed, ADecomp, PlFun, PlFunRepr};
use crate::spaces::{FnCurve, FnSeq, FnTypeSpace, FuzzyNumbers, Tail};

/// Relative tolerance for identities that go through an integral.
pub const INTEGRAL_TOL: f64 = 1e-9;

/// `|a - b| / max(1, |a|, |b|)`.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn require_continuous(h: &PlFun) -> Result<()> {
    match h.jumps().next() {
        Some((r, _)) => Err(Error::DiscontinuousIntegrand(r)),
        None => Ok(()),
    }
}

fn require_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "p must satisfy 1 <= p < inf, got {p}"
        )))
    }
}

fn require_alpha(alpha: &[f64]) -> Result<()> {
    match alpha.iter().find(|a| !a.is_finite()) {
        Some(a) => Err(Error::InvalidSpec(format!("non-finite coefficient {a}"))),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// decompositions

/// Canonical split of a nondecreasing `u`: `u + 0` if `u(1) <= 0`, else
/// `(u - u(1)) + u(1)`.
pub fn decompose_ic(u: &PlFun) -> Result<ADecomp> {
    if !u.is_nondecreasing() {
        return Err(Error::NotMonotone(
            "expected a nondecreasing function".into(),
        ));
    }
    let (lo, hi) = u.domain();
    let top = u.end_value();
    if top <= 0.0 {
        ADecomp::new(u.clone(), PlFun::constant_on(lo, hi, 0.0))
    } else {
        ADecomp::new(u.shift(-top), PlFun::constant_on(lo, hi, top))
    }
}

/// Canonical split of a nonincreasing `u`: `0 + u` if `u(1) >= 0`, else
/// `u(1) + (u - u(1))`.
pub fn decompose_dc(u: &PlFun) -> Result<ADecomp> {
    if !u.is_nonincreasing() {
        return Err(Error::NotMonotone(
            "expected a nonincreasing function".into(),
        ));
    }
    let (lo, hi) = u.domain();
    let bottom = u.end_value();
    if bottom >= 0.0 {
        ADecomp::new(PlFun::constant_on(lo, hi, 0.0), u.clone())
    } else {
        ADecomp::new(PlFun::constant_on(lo, hi, bottom), u.shift(-bottom))
    }
}

/// Canonical split of any monotone `u`. Constants take the nondecreasing case.
pub fn decompose(u: &PlFun) -> Result<ADecomp> {
    if u.is_nondecreasing() {
        decompose_ic(u)
    } else if u.is_nonincreasing() {
        decompose_dc(u)
    } else {
        Err(Error::NotMonotone(
            "expected a nondecreasing or nonincreasing function".into(),
        ))
    }
}

/// The fuzzy number with `x₋ = f`, `x₊ = g`.
pub fn reconstruct(d: &ADecomp) -> FuzzyNum {
    FuzzyNum::new(d.f().clone(), d.g().clone())
        .expect("decomposition invariants make a valid fuzzy number")
}

// ---------------------------------------------------------------------------
// specs

/// `x ↦ ∫₀¹ h d[x₋ + x₊]` on `ℝ_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct RfSpec {
    h: PlFun,
}

/// The functional family on convergent sequences with limit `z`:
/// `∫ h₁ d[z₋ + z₊] + Σ_j α_j ∫ h₂ d[(x_j)₋ + (x_j)₊]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CSeqSpec {
    h1: PlFun,
    h2: PlFun,
    alpha: Vec<f64>,
}

/// `Σ_j α_j ∫ h d[(x_j)₋ + (x_j)₊]` on `l^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSeqSpec {
    p: f64,
    h: PlFun,
    alpha: Vec<f64>,
}

/// `∫_a^b inner(t) dh₂(t)` on `C([a, b]; ℝ_F)`, with
/// `inner(t) = ∫₀¹ h₁ d[x(t)₋ + x(t)₊]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveCSpec {
    h1: PlFun,
    h2: PlFun,
}

/// `∫_a^b inner(t) h₂(t) dt` on `L^p([a, b]; ℝ_F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveLpSpec {
    p: f64,
    h1: PlFun,
    h2: PlFun,
}

impl RfSpec {
    pub fn new(h: PlFun) -> Result<Self> {
        require_continuous(&h)?;
        Ok(Self { h })
    }

    pub fn h(&self) -> &PlFun {
        &self.h
    }

    pub fn eval(&self, x: &FuzzyNum) -> Result<f64> {
        eval_rf(&self.h, x)
    }

    pub fn eval_parts(&self, x: &FuzzyNum) -> Result<f64> {
        eval_rf_parts(&self.h, x)
    }

    pub fn norm_bound(&self) -> f64 {
        norm_bound_rf(&self.h)
    }
}

impl CSeqSpec {
    pub fn new(h1: PlFun, h2: PlFun, alpha: Vec<f64>) -> Result<Self> {
        require_continuous(&h1)?;
        require_continuous(&h2)?;
        require_alpha(&alpha)?;
        Ok(Self { h1, h2, alpha })
    }

    pub fn eval(&self, x: &FnSeq) -> Result<f64> {
        let z = x.limit();
        let mut total = eval_rf(&self.h1, &z)?;
        for (j, &a) in self.alpha.iter().enumerate() {
            if a != 0.0 {
                total += a * eval_rf(&self.h2, &x.term(j))?;
            }
        }
        Ok(total)
    }
}

impl LpSeqSpec {
    pub fn new(p: f64, h: PlFun, alpha: Vec<f64>) -> Result<Self> {
        require_p(p)?;
        require_continuous(&h)?;
        require_alpha(&alpha)?;
        Ok(Self { p, h, alpha })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn eval(&self, x: &FnSeq) -> Result<f64> {
        if *x.tail() != Tail::Zero {
            return Err(Error::NotInSpace(
                "an l^p sequence must have a zero tail".into(),
            ));
        }
        let mut total = 0.0;
        for (j, &a) in self.alpha.iter().enumerate().take(x.head().len()) {
            if a != 0.0 {
                total += a * eval_rf(&self.h, &x.head()[j])?;
            }
        }
        Ok(total)
    }
}

/// `t ↦ ∫₀¹ h₁ d[x(t)₋ + x(t)₊]` on the curve's grid.
///
/// Between grid nodes `x(t)` blends its neighbours with nonnegative
/// weights, so the inner integral is affine there and the interpolant is
/// exact.
fn inner_curve(h1: &PlFun, x: &FnCurve) -> Result<PlFun> {
    let vals = x
        .values()
        .iter()
        .map(|u| eval_rf(h1, u))
        .collect::<Result<Vec<_>>>()?;
    PlFun::interpolate(x.t_grid(), &vals)
}

fn check_curve_domain(h2: &PlFun, x: &FnCurve) -> Result<()> {
    if h2.domain() != x.domain() {
        return Err(Error::DomainMismatch(format!(
            "h2 lives on {:?} but the curve on {:?}",
            h2.domain(),
            x.domain()
        )));
    }
    Ok(())
}

impl CurveCSpec {
    pub fn new(h1: PlFun, h2: PlFun) -> Result<Self> {
        require_continuous(&h1)?;
        Ok(Self { h1, h2 })
    }

    pub fn eval(&self, x: &FnCurve) -> Result<f64> {
        check_curve_domain(&self.h2, x)?;
        rs_integral(&inner_curve(&self.h1, x)?, &self.h2)
    }
}

impl CurveLpSpec {
    pub fn new(p: f64, h1: PlFun, h2: PlFun) -> Result<Self> {
        require_p(p)?;
        require_continuous(&h1)?;
        Ok(Self { p, h1, h2 })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn eval(&self, x: &FnCurve) -> Result<f64> {
        check_curve_domain(&self.h2, x)?;
        Ok(inner_curve(&self.h1, x)?.integral_product(&self.h2))
    }
}

/// `∫₀¹ h dx₋ + ∫₀¹ h dx₊`.
pub fn eval_rf(h: &PlFun, x: &FuzzyNum) -> Result<f64> {
    Ok(rs_integral(h, x.lower())? + rs_integral(h, x.upper())?)
}

/// The same value through integration by parts:
/// `h(1)s(1) - h(0)s(0) - ∫₀¹ s dh` with `s = x₋ + x₊`.
pub fn eval_rf_parts(h: &PlFun, x: &FuzzyNum) -> Result<f64> {
    if let Some((r, _)) = h.jumps().next() {
        return Err(Error::DiscontinuousIntegrand(r));
    }
    let s = x.lower() + x.upper();
    Ok(h.end_value() * s.end_value()
        - h.start_value() * s.start_value()
        - rs_integral_mixed(&s, h)?)
}

/// `2 (|h(0)| + |h(1)| + V(h))`, an admissible constant `M` with
/// `|x*(x)| <= M ‖x‖_F`.
pub fn norm_bound_rf(h: &PlFun) -> f64 {
    2.0 * (h.start_value().abs() + h.end_value().abs() + h.total_variation())
}

/// `L₀(u)` for monotone `u`: the rf functional on the reconstructed
/// canonical decomposition.
pub fn l0_rf(spec: &RfSpec, u: &PlFun) -> Result<f64> {
    spec.eval(&reconstruct(&decompose(u)?))
}

// ---------------------------------------------------------------------------
// wire format

mod domain_fun {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &PlFun, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlFunRepr::from(f.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<PlFun, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Form {
            Pieces(PlFunRepr),
            Grid { t_grid: Vec<f64>, values: Vec<f64> },
        }
        let f = match Form::deserialize(d)? {
            Form::Pieces(r) => r.into_fun_on_domain(),
            Form::Grid { t_grid, values } => PlFun::interpolate(&t_grid, &values),
        };
        f.map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "kebab-case", deny_unknown_fields)]
enum SpecRepr {
    Rf {
        h: PlFun,
    },
    C {
        h1: PlFun,
        h2: PlFun,
        #[serde(default)]
        alpha: Vec<f64>,
    },
    Lp {
        p: f64,
        h: PlFun,
        #[serde(default)]
        alpha: Vec<f64>,
    },
    #[serde(alias = "c_curve")]
    CCurve {
        h1: PlFun,
        #[serde(with = "domain_fun")]
        h2: PlFun,
    },
    #[serde(alias = "lp_curve")]
    LpCurve {
        p: f64,
        h1: PlFun,
        #[serde(with = "domain_fun")]
        h2: PlFun,
    },
}

/// A functional from one of the families above, tagged by its space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub enum FunctionalSpec {
    Rf(RfSpec),
    C(CSeqSpec),
    Lp(LpSeqSpec),
    CCurve(CurveCSpec),
    LpCurve(CurveLpSpec),
}

impl TryFrom<SpecRepr> for FunctionalSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        Ok(match r {
            SpecRepr::Rf { h } => Self::Rf(RfSpec::new(h)?),
            SpecRepr::C { h1, h2, alpha } => Self::C(CSeqSpec::new(h1, h2, alpha)?),
            SpecRepr::Lp { p, h, alpha } => Self::Lp(LpSeqSpec::new(p, h, alpha)?),
            SpecRepr::CCurve { h1, h2 } => Self::CCurve(CurveCSpec::new(h1, h2)?),
            SpecRepr::LpCurve { p, h1, h2 } => Self::LpCurve(CurveLpSpec::new(p, h1, h2)?),
        })
    }
}

impl From<FunctionalSpec> for SpecRepr {
    fn from(s: FunctionalSpec) -> Self {
        match s {
            FunctionalSpec::Rf(s) => Self::Rf { h: s.h },
            FunctionalSpec::C(s) => Self::C {
                h1: s.h1,
                h2: s.h2,
                alpha: s.alpha,
            },
            FunctionalSpec::Lp(s) => Self::Lp {
                p: s.p,
                h: s.h,
                alpha: s.alpha,
            },
            FunctionalSpec::CCurve(s) => Self::CCurve { h1: s.h1, h2: s.h2 },
            FunctionalSpec::LpCurve(s) => Self::LpCurve {
                p: s.p,
                h1: s.h1,
                h2: s.h2,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// functional handles and checks

/// A real-valued map on the elements of a space.
pub trait Functional<S: FnTypeSpace>: Sync {
    fn apply(&self, x: &S::Elem) -> Result<f64>;

    /// A known constant `M` with `|A(x)| <= M ‖x‖`, if there is one.
    fn analytic_bound(&self) -> Option<f64> {
        None
    }
}

impl Functional<FuzzyNumbers> for RfSpec {
    fn apply(&self, x: &FuzzyNum) -> Result<f64> {
        self.eval(x)
    }
    fn analytic_bound(&self) -> Option<f64> {
        Some(self.norm_bound())
    }
}

impl<S: FnTypeSpace<Elem = FnSeq>> Functional<S> for CSeqSpec {
    fn apply(&self, x: &FnSeq) -> Result<f64> {
        self.eval(x)
    }
}

impl<S: FnTypeSpace<Elem = FnSeq>> Functional<S> for LpSeqSpec {
    fn apply(&self, x: &FnSeq) -> Result<f64> {
        self.eval(x)
    }
}

impl<S: FnTypeSpace<Elem = FnCurve>> Functional<S> for CurveCSpec {
    fn apply(&self, x: &FnCurve) -> Result<f64> {
        self.eval(x)
    }
}

impl<S: FnTypeSpace<Elem = FnCurve>> Functional<S> for CurveLpSpec {
    fn apply(&self, x: &FnCurve) -> Result<f64> {
        self.eval(x)
    }
}

/// Wraps a closure as a functional.
pub struct FnFunctional<F> {
    f: F,
    bound: Option<f64>,
}

impl<F> FnFunctional<F> {
    pub fn new(f: F) -> Self {
        Self { f, bound: None }
    }

    pub fn with_bound(f: F, bound: f64) -> Self {
        Self {
            f,
            bound: Some(bound),
        }
    }
}

impl<S, F> Functional<S> for FnFunctional<F>
where
    S: FnTypeSpace,
    F: Fn(&S::Elem) -> Result<f64> + Sync,
{
    fn apply(&self, x: &S::Elem) -> Result<f64> {
        (self.f)(x)
    }
    fn analytic_bound(&self) -> Option<f64> {
        self.bound
    }
}

fn sample_scalar<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> f64 {
    loop {
        let l = cfg.scalar(rng);
        if l != 0.0 {
            return l;
        }
    }
}

fn record_apply_error(log: &mut TrialLog, property: &str, e: &Error) {
    log.fail(
        property,
        f64::INFINITY,
        || serde_json::json!({ "error": e.to_string() }),
    );
}

/// Samples `x, y, λ` and checks `A(x ⊕ y) = A(x) + A(y)` and
/// `A(λ ⊙ x) = λ A(x)` to [`INTEGRAL_TOL`] relative.
pub fn check_linear<S, A>(a: &A, space: &S, trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport
where
    S: Generate,
    A: Functional<S> + ?Sized,
{
    checker::run_trials("check-linear", trials, seed, |rng, log| {
        let x = space.generate(cfg, rng);
        let y = space.generate(cfg, rng);
        let lambda = sample_scalar(cfg, rng);
        let inputs = || serde_json::json!({ "x": x, "y": y, "lambda": lambda });
        let sum = match space.add(&x, &y) {
            Ok(s) => s,
            Err(e) => return record_apply_error(log, "additivity", &e),
        };
        let vals = (|| {
            Ok::<_, Error>((
                a.apply(&x)?,
                a.apply(&y)?,
                a.apply(&sum)?,
                a.apply(&space.scale(lambda, &x))?,
            ))
        })();
        match vals {
            Ok((ax, ay, asum, ascaled)) => {
                log.check("additivity", rel_dev(asum, ax + ay), INTEGRAL_TOL, inputs);
                log.check(
                    "homogeneity",
                    rel_dev(ascaled, lambda * ax),
                    INTEGRAL_TOL,
                    inputs,
                );
            }
            Err(e) => record_apply_error(log, "evaluation", &e),
        }
    })
}

/// Samples `x` and checks `|A(x)| <= M ‖x‖`.
pub fn check_bounded<S, A>(
    a: &A,
    m: f64,
    space: &S,
    trials: u64,
    seed: u64,
    cfg: &GenConfig,
) -> CheckReport
where
    S: Generate,
    A: Functional<S> + ?Sized,
{
    checker::run_trials("check-bounded", trials, seed, |rng, log| {
        let x = space.generate(cfg, rng);
        let inputs = || serde_json::json!({ "x": x, "m": m });
        match (a.apply(&x), space.norm(&x)) {
            (Ok(v), Ok(n)) => {
                let excess = (v.abs() - m * n).max(0.0) / 1f64.max(m * n);
                log.check("bound", excess, INTEGRAL_TOL, inputs);
                if n > 0.0 {
                    log.observe("ratio", v.abs() / n);
                }
            }
            (Err(e), _) | (_, Err(e)) => record_apply_error(log, "evaluation", &e),
        }
    })
}

/// Sampled lower bound and analytic upper bound for the operator norm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub lower_bound: f64,
    pub upper_bound: Option<f64>,
    pub witness: Option<serde_json::Value>,
}

/// `max |A(x / ‖x‖)|` over probes and `trials` random samples.
///
/// Fails with [`Error::BoundViolated`] if a sample exceeds the analytic bound.
pub fn op_norm_estimate<S, A>(
    a: &A,
    space: &S,
    trials: u64,
    seed: u64,
    cfg: &GenConfig,
) -> Result<NormReport>
where
    S: Generate,
    A: Functional<S> + ?Sized,
{
    let score = |x: &S::Elem| -> Result<Option<(f64, S::Elem)>> {
        let n = space.norm(x)?;
        if n == 0.0 {
            return Ok(None);
        }
        let unit = space.scale(1.0 / n, x);
        Ok(Some((a.apply(&unit)?.abs() / space.norm(&unit)?, unit)))
    };
    let mut best: Option<(f64, S::Elem)> = None;
    let mut consider = |cand: Option<(f64, S::Elem)>| {
        if let Some((v, x)) = cand {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, x));
            }
        }
    };
    for x in space.probes() {
        consider(score(&x)?);
    }
    let failed = AtomicBool::new(false);
    let sampled = checker::map_trials(trials, seed, |rng| {
        let x = space.generate(cfg, rng);
        score(&x).unwrap_or_else(|_| {
            failed.store(true, Ordering::Relaxed);
            None
        })
    });
    if failed.load(Ordering::Relaxed) {
        return Err(Error::NotInSpace(
            "functional could not be applied to a sample".into(),
        ));
    }
    for cand in sampled {
        consider(cand);
    }
    let lower_bound = best.as_ref().map_or(0.0, |(v, _)| *v);
    let upper_bound = a.analytic_bound();
    if let Some(ub) = upper_bound {
        if lower_bound > ub * (1.0 + INTEGRAL_TOL) {
            return Err(Error::BoundViolated {
                lower: lower_bound,
                upper: ub,
            });
        }
    }
    Ok(NormReport {
        lower_bound,
        upper_bound,
        witness: best.map(|(_, x)| serde_json::to_value(x).expect("elements serialize")),
    })
}
