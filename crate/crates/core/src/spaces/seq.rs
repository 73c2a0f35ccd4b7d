//! Sequences of fuzzy numbers with a finite presentation.
//!
//! A sequence is a finite head followed by a constant tail: either all
//! `0̃` or all equal to a fixed limit. That covers eventually-zero elements
//! of `l^p` and `c⁰` and eventually-constant elements of `c` and `m`, and
//! makes every metric and membership test exactly computable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzznum::FuzzyNum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    Zero,
    Const(FuzzyNum),
}

impl Tail {
    pub fn value(&self) -> FuzzyNum {
        match self {
            Tail::Zero => FuzzyNum::zero(),
            Tail::Const(z) => z.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "FnSeqRepr")]
pub struct FnSeq {
    head: Vec<FuzzyNum>,
    tail: Tail,
}

#[derive(Deserialize)]
struct FnSeqRepr {
    head: Vec<FuzzyNum>,
    tail: Tail,
}

impl From<FnSeqRepr> for FnSeq {
    fn from(r: FnSeqRepr) -> Self {
        FnSeq::new(r.head, r.tail)
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "p must satisfy 1 <= p < inf, got {p}"
        )))
    }
}

impl FnSeq {
    /// Canonical presentation: a `const 0̃` tail becomes `Zero` and head
    /// entries equal to the tail value are trimmed from the end.
    pub fn new(mut head: Vec<FuzzyNum>, tail: Tail) -> Self {
        let tail = match tail {
            Tail::Const(z) if z == FuzzyNum::zero() => Tail::Zero,
            t => t,
        };
        let tv = tail.value();
        while head.last() == Some(&tv) {
            head.pop();
        }
        Self { head, tail }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), Tail::Zero)
    }

    /// A sequence that is `0̃` after `head`.
    pub fn finite(head: Vec<FuzzyNum>) -> Self {
        Self::new(head, Tail::Zero)
    }

    pub fn head(&self) -> &[FuzzyNum] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The `j`-th term, counting from zero.
    pub fn term(&self, j: usize) -> FuzzyNum {
        self.head
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.tail.value())
    }

    /// The limit of the sequence (the tail value).
    pub fn limit(&self) -> FuzzyNum {
        self.tail.value()
    }

    pub fn in_lp(&self, p: f64) -> bool {
        check_p(p).is_ok() && self.tail == Tail::Zero
    }

    pub fn in_m(&self) -> bool {
        true
    }

    pub fn in_c(&self) -> (bool, FuzzyNum) {
        (true, self.limit())
    }

    pub fn in_c0(&self) -> bool {
        self.tail == Tail::Zero
    }

    fn aligned_len(&self, other: &FnSeq) -> usize {
        self.head.len().max(other.head.len())
    }

    pub fn add(&self, other: &FnSeq) -> FnSeq {
        let n = self.aligned_len(other);
        let head = (0..n).map(|j| &self.term(j) + &other.term(j)).collect();
        let tail = match (&self.tail, &other.tail) {
            (Tail::Zero, Tail::Zero) => Tail::Zero,
            (Tail::Zero, Tail::Const(z)) | (Tail::Const(z), Tail::Zero) => Tail::Const(z.clone()),
            (Tail::Const(x), Tail::Const(y)) => Tail::Const(x + y),
        };
        FnSeq::new(head, tail)
    }

    pub fn scale(&self, lambda: f64) -> FnSeq {
        let head = self.head.iter().map(|u| lambda * u).collect();
        let tail = match &self.tail {
            Tail::Zero => Tail::Zero,
            Tail::Const(z) => Tail::Const(lambda * z),
        };
        FnSeq::new(head, tail)
    }

    /// `ρ_p(x, y) = (Σ D(x_n, y_n)^p)^{1/p}`.
    ///
    /// Finite only when the tails agree; otherwise every tail term adds the
    /// same positive amount and the series diverges.
    pub fn rho_p(&self, other: &FnSeq, p: f64) -> Result<f64> {
        check_p(p)?;
        if self.tail != other.tail {
            return Err(Error::DivergentTail);
        }
        let sum: f64 = (0..self.aligned_len(other))
            .map(|j| self.term(j).metric_d(&other.term(j)).powf(p))
            .sum();
        Ok(sum.powf(1.0 / p))
    }

    /// `μ(x, y) = sup_n D(x_n, y_n)`.
    pub fn mu(&self, other: &FnSeq) -> f64 {
        (0..self.aligned_len(other))
            .map(|j| self.term(j).metric_d(&other.term(j)))
            .fold(self.tail.value().metric_d(&other.tail.value()), f64::max)
    }

    /// True iff every term is a real number.
    pub fn has_opposite(&self) -> bool {
        self.head.iter().all(FuzzyNum::is_crisp) && self.tail.value().is_crisp()
    }
}
