//! FN-type spaces built from fuzzy numbers.
//!
//! Each space pairs an element type with `⊕`, `⊙` and a metric. The
//! [`FnTypeSpace`] trait is the common surface the checker runs its axiom
//! suites against.

mod curve;
mod seq;

use std::fmt::Debug;

use serde::Serialize;

pub use curve::FnCurve;
pub use seq::{FnSeq, Tail};

use crate::error::{Error, Result};
use crate::fuzznum::FuzzyNum;

pub trait FnTypeSpace: Sync {
    type Elem: Clone + Debug + PartialEq + Serialize + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, lambda: f64, x: &Self::Elem) -> Self::Elem;
    fn dist(&self, x: &Self::Elem, y: &Self::Elem) -> Result<f64>;

    /// `‖x‖ = d(x, 0̃)`.
    fn norm(&self, x: &Self::Elem) -> Result<f64> {
        self.dist(x, &self.zero())
    }

    fn contains(&self, x: &Self::Elem) -> bool;
    fn has_opposite(&self, x: &Self::Elem) -> bool;

    /// Whether the metric is computed in closed form (as opposed to a
    /// numerically integrated value).
    fn exact(&self) -> bool {
        true
    }
}

fn check_p(p: f64) -> Result<f64> {
    if p.is_finite() && p >= 1.0 {
        Ok(p)
    } else {
        Err(Error::InvalidParameter(format!(
            "p must satisfy 1 <= p < inf, got {p}"
        )))
    }
}

/// `ℝ_F` with `D`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FuzzyNumbers;

impl FnTypeSpace for FuzzyNumbers {
    type Elem = FuzzyNum;

    fn name(&self) -> String {
        "R_F".into()
    }
    fn zero(&self) -> FuzzyNum {
        FuzzyNum::zero()
    }
    fn add(&self, x: &FuzzyNum, y: &FuzzyNum) -> Result<FuzzyNum> {
        Ok(x + y)
    }
    fn scale(&self, lambda: f64, x: &FuzzyNum) -> FuzzyNum {
        lambda * x
    }
    fn dist(&self, x: &FuzzyNum, y: &FuzzyNum) -> Result<f64> {
        Ok(x.metric_d(y))
    }
    fn norm(&self, x: &FuzzyNum) -> Result<f64> {
        Ok(x.norm_f())
    }
    fn contains(&self, _: &FuzzyNum) -> bool {
        true
    }
    fn has_opposite(&self, x: &FuzzyNum) -> bool {
        x.has_opposite()
    }
}

macro_rules! seq_ops {
    () => {
        type Elem = FnSeq;
        fn zero(&self) -> FnSeq {
            FnSeq::zero()
        }
        fn add(&self, x: &FnSeq, y: &FnSeq) -> Result<FnSeq> {
            Ok(x.add(y))
        }
        fn scale(&self, lambda: f64, x: &FnSeq) -> FnSeq {
            x.scale(lambda)
        }
        fn has_opposite(&self, x: &FnSeq) -> bool {
            x.has_opposite()
        }
    };
}

/// `l^p(ℝ_F)` with `ρ_p`.
#[derive(Clone, Copy, Debug)]
pub struct SeqLp {
    p: f64,
}

impl SeqLp {
    pub fn new(p: f64) -> Result<Self> {
        Ok(Self { p: check_p(p)? })
    }
    pub fn p(&self) -> f64 {
        self.p
    }
}

impl FnTypeSpace for SeqLp {
    seq_ops!();
    fn name(&self) -> String {
        format!("l^{}", self.p)
    }
    fn dist(&self, x: &FnSeq, y: &FnSeq) -> Result<f64> {
        x.rho_p(y, self.p)
    }
    fn contains(&self, x: &FnSeq) -> bool {
        x.in_lp(self.p)
    }
}

/// Bounded sequences `m(ℝ_F)` with `μ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeqM;

impl FnTypeSpace for SeqM {
    seq_ops!();
    fn name(&self) -> String {
        "m".into()
    }
    fn dist(&self, x: &FnSeq, y: &FnSeq) -> Result<f64> {
        Ok(x.mu(y))
    }
    fn contains(&self, x: &FnSeq) -> bool {
        x.in_m()
    }
}

/// Convergent sequences `c(ℝ_F)` with `μ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeqC;

impl FnTypeSpace for SeqC {
    seq_ops!();
    fn name(&self) -> String {
        "c".into()
    }
    fn dist(&self, x: &FnSeq, y: &FnSeq) -> Result<f64> {
        Ok(x.mu(y))
    }
    fn contains(&self, x: &FnSeq) -> bool {
        x.in_c().0
    }
}

/// Sequences converging to `0̃`, with `μ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeqC0;

impl FnTypeSpace for SeqC0 {
    seq_ops!();
    fn name(&self) -> String {
        "c0".into()
    }
    fn dist(&self, x: &FnSeq, y: &FnSeq) -> Result<f64> {
        Ok(x.mu(y))
    }
    fn contains(&self, x: &FnSeq) -> bool {
        x.in_c0()
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "need finite a < b, got [{a}, {b}]"
        )))
    }
}

macro_rules! curve_ops {
    () => {
        type Elem = FnCurve;
        fn zero(&self) -> FnCurve {
            FnCurve::zero_on(self.a, self.b).expect("interval checked at construction")
        }
        fn add(&self, x: &FnCurve, y: &FnCurve) -> Result<FnCurve> {
            x.add(y)
        }
        fn scale(&self, lambda: f64, x: &FnCurve) -> FnCurve {
            x.scale(lambda)
        }
        fn contains(&self, x: &FnCurve) -> bool {
            x.domain() == (self.a, self.b)
        }
        fn has_opposite(&self, x: &FnCurve) -> bool {
            x.has_opposite()
        }
    };
}

/// `C([a, b]; ℝ_F)` with `D*`.
#[derive(Clone, Copy, Debug)]
pub struct CurvesSup {
    a: f64,
    b: f64,
}

impl CurvesSup {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self { a, b })
    }
    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

impl FnTypeSpace for CurvesSup {
    curve_ops!();
    fn name(&self) -> String {
        format!("C([{}, {}]; R_F)", self.a, self.b)
    }
    fn dist(&self, x: &FnCurve, y: &FnCurve) -> Result<f64> {
        x.metric_dstar(y)
    }
    fn norm(&self, x: &FnCurve) -> Result<f64> {
        Ok(x.norm_sup())
    }
}

/// `L^p([a, b]; ℝ_F)` with `D_p`, on continuous representatives.
#[derive(Clone, Copy, Debug)]
pub struct CurvesLp {
    a: f64,
    b: f64,
    p: f64,
}

impl CurvesLp {
    pub fn new(a: f64, b: f64, p: f64) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self {
            a,
            b,
            p: check_p(p)?,
        })
    }
    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }
    pub fn p(&self) -> f64 {
        self.p
    }
}

impl FnTypeSpace for CurvesLp {
    curve_ops!();
    fn name(&self) -> String {
        format!("L^{}([{}, {}]; R_F)", self.p, self.a, self.b)
    }
    fn dist(&self, x: &FnCurve, y: &FnCurve) -> Result<f64> {
        x.metric_dp(y, self.p)
    }
    fn exact(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_are_distance_to_zero() {
        let u = FuzzyNum::triangular(0.0, 1.0, 2.0).unwrap();
        assert_eq!(FuzzyNumbers.norm(&u).unwrap(), 2.0);
        let x = FnSeq::finite(vec![FuzzyNum::crisp(3.0), FuzzyNum::crisp(4.0)]);
        assert_eq!(SeqLp::new(2.0).unwrap().norm(&x).unwrap(), 5.0);
        assert_eq!(SeqM.norm(&x).unwrap(), 4.0);
        let f = FnCurve::linear(0.0, 1.0, FuzzyNum::zero(), u).unwrap();
        assert_eq!(CurvesSup::new(0.0, 1.0).unwrap().norm(&f).unwrap(), 2.0);
        assert!((CurvesLp::new(0.0, 1.0, 1.0).unwrap().norm(&f).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn membership_follows_the_space() {
        let x = FnSeq::new(vec![], Tail::Const(FuzzyNum::crisp(1.0)));
        assert!(SeqC.contains(&x) && SeqM.contains(&x));
        assert!(!SeqC0.contains(&x) && !SeqLp::new(1.0).unwrap().contains(&x));
        let f = FnCurve::zero_on(0.0, 2.0).unwrap();
        assert!(!CurvesSup::new(0.0, 1.0).unwrap().contains(&f));
        assert!(SeqLp::new(0.5).is_err());
        assert!(CurvesSup::new(1.0, 1.0).is_err());
    }
}
