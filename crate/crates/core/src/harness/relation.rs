//! Linear relations between subsequences, such as
//! `b(10n+2) = 1/4 a(2n+1) + 1/2 c(2n)` or `a(20n+6) ≡ 0 (mod 10)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::series::TruncatedSeries;
use crate::theta::Seq;

/// `coeff * seq(stride * n + offset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Ratio<i64>,
    pub seq: Seq,
    pub stride: u64,
    pub offset: i64,
}

impl Term {
    pub fn new(seq: Seq, stride: u64, offset: i64) -> Self {
        Term { coeff: Ratio::one(), seq, stride, offset }
    }

    pub fn times(mut self, k: i64) -> Self {
        self.coeff *= Ratio::from_integer(k);
        self
    }

    pub fn over(mut self, d: i64) -> Self {
        self.coeff /= Ratio::from_integer(d);
        self
    }

    pub fn index(&self, n: u64) -> i64 {
        self.stride as i64 * n as i64 + self.offset
    }
}

pub fn a5(stride: u64, offset: i64) -> Term {
    Term::new(Seq::A5Bar, stride, offset)
}

pub fn b5(stride: u64, offset: i64) -> Term {
    Term::new(Seq::B5Bar, stride, offset)
}

pub fn c5(stride: u64, offset: i64) -> Term {
    Term::new(Seq::C5, stride, offset)
}

/// `sum lhs = sum rhs` for every `n >= 0` in range, or `sum lhs ≡ sum rhs`
/// modulo `modulus` when one is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    pub modulus: Option<BigInt>,
}

/// First failing `n` with both sides' values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub n: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl LinearRelation {
    pub fn equality(lhs: Vec<Term>, rhs: Vec<Term>) -> Self {
        LinearRelation { lhs, rhs, modulus: None }
    }

    pub fn congruence(lhs: Vec<Term>, rhs: Vec<Term>, modulus: impl Into<BigInt>) -> Self {
        LinearRelation { lhs, rhs, modulus: Some(modulus.into()) }
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.lhs.iter().chain(&self.rhs)
    }

    /// Largest `n` such that every index read is at most `order`, or `None`
    /// when even `n = 0` reads past it.
    pub fn max_n(&self, order: usize) -> Option<u64> {
        let order = order as i64;
        let mut best: Option<u64> = None;
        for t in self.terms() {
            if t.offset > order {
                return None;
            }
            if let Some(cap) = ((order - t.offset) as u64).checked_div(t.stride) {
                best = Some(best.map_or(cap, |b| b.min(cap)));
            }
        }
        // All strides zero: only n = 0 is meaningful.
        Some(best.unwrap_or(0))
    }

    pub fn sequences(&self) -> Vec<Seq> {
        let mut seqs: Vec<Seq> = self.terms().map(|t| t.seq).collect();
        seqs.sort();
        seqs.dedup();
        seqs
    }

    fn side(terms: &[Term], n: u64, values: &HashMap<Seq, TruncatedSeries>) -> BigRational {
        terms.iter().fold(BigRational::zero(), |acc, t| {
            let v = values[&t.seq].coeff(t.index(n));
            let c = BigRational::new(BigInt::from(*t.coeff.numer()), BigInt::from(*t.coeff.denom()));
            acc + c * BigRational::from_integer(v)
        })
    }

    fn holds(&self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match &self.modulus {
            None => lhs == rhs,
            Some(m) => {
                let diff = lhs - rhs;
                diff.is_integer() && diff.to_integer().is_multiple_of(m)
            }
        }
    }

    /// Checks every `n` in `0..=max_n(order)`; `perturb` adds a value to the
    /// right-hand side at one `n` (fault injection). Returns the number of
    /// `n` checked or the first failure.
    pub fn check(
        &self,
        order: usize,
        values: &HashMap<Seq, TruncatedSeries>,
        perturb: Option<(u64, i64)>,
    ) -> Result<u64, Box<RelationFailure>> {
        let Some(max_n) = self.max_n(order) else {
            return Ok(0);
        };
        for n in 0..=max_n {
            let lhs = Self::side(&self.lhs, n, values);
            let mut rhs = Self::side(&self.rhs, n, values);
            if let Some((at, delta)) = perturb {
                if at == n {
                    rhs += BigRational::from_integer(BigInt::from(delta));
                }
            }
            if !self.holds(&lhs, &rhs) {
                return Err(Box::new(RelationFailure { n, lhs, rhs }));
            }
        }
        Ok(max_n + 1)
    }
}

fn fmt_side(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in terms.iter().enumerate() {
        let c = t.coeff;
        let sign = if c.is_negative() { "-" } else { "+" };
        if i > 0 {
            write!(f, " {sign} ")?;
        } else if c.is_negative() {
            write!(f, "-")?;
        }
        let mag = c.abs();
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "{}(", t.seq)?;
        match (t.stride, t.offset) {
            (0, o) => write!(f, "{o}")?,
            (1, 0) => write!(f, "n")?,
            (s, 0) => write!(f, "{s}n")?,
            (1, o) if o < 0 => write!(f, "n{o}")?,
            (1, o) => write!(f, "n+{o}")?,
            (s, o) if o < 0 => write!(f, "{s}n{o}")?,
            (s, o) => write!(f, "{s}n+{o}")?,
        }
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_side(f, &self.lhs)?;
        match &self.modulus {
            None => {
                write!(f, " = ")?;
                fmt_side(f, &self.rhs)
            }
            Some(m) => {
                write!(f, " ≡ ")?;
                fmt_side(f, &self.rhs)?;
                write!(f, " (mod {m})")
            }
        }
    }
}
