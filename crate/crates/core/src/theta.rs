//! Constructors for the named series: Pochhammer products, Euler products
//! `f_j`, Ramanujan's theta functions, the Rogers-Ramanujan quotient `R(q)`,
//! and the three generating functions for `c_5`, `a_5` and `b_5`.
//!
//! `phi`, `psi` and `euler_f` are built from their bilateral sums. Each also
//! has a product form (`*_product`) computed through Pochhammer expansion, so
//! the two constructions can be checked against each other.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self^k` as a sign.
    pub fn pow(self, k: u64) -> Sign {
        if self == Sign::Minus && k % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Sign::Plus => "",
            Sign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("Pochhammer factor needs offset >= 1 and modulus >= 1 (got offset {offset}, modulus {modulus})")]
    DegenerateFactor { offset: u32, modulus: u32 },
    #[error("theta f(a,b) needs e1 + e2 >= 1")]
    DivergentTheta,
    #[error("triple product form needs both exponents >= 1")]
    NoProductForm,
}

/// `(sign q^offset; q^modulus)_inf ^ exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochhammerFactor {
    sign: Sign,
    offset: u32,
    modulus: u32,
    exponent: i32,
}

impl PochhammerFactor {
    pub fn new(sign: Sign, offset: u32, modulus: u32, exponent: i32) -> Result<Self, ThetaError> {
        if offset == 0 || modulus == 0 {
            return Err(ThetaError::DegenerateFactor { offset, modulus });
        }
        Ok(PochhammerFactor { sign, offset, modulus, exponent })
    }

    /// `f_j = (q^j; q^j)_inf`, raised to `exponent`.
    pub fn euler(j: u32, exponent: i32) -> Self {
        assert!(j >= 1, "f_j needs j >= 1");
        PochhammerFactor { sign: Sign::Plus, offset: j, modulus: j, exponent }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
    pub fn offset(&self) -> u32 {
        self.offset
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn with_exponent(self, exponent: i32) -> Self {
        PochhammerFactor { exponent, ..self }
    }
}

impl fmt::Display for PochhammerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}q^{};q^{})^{}", self.sign.prefix(), self.offset, self.modulus, self.exponent)
    }
}

/// A finite product of Pochhammer factors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QProductSpec {
    pub factors: Vec<PochhammerFactor>,
}

impl QProductSpec {
    pub fn new(factors: Vec<PochhammerFactor>) -> Self {
        QProductSpec { factors }
    }

    /// Product of `f_j^z` for each `(j, z)`.
    pub fn eta_quotient(parts: &[(u32, i32)]) -> Self {
        QProductSpec { factors: parts.iter().map(|&(j, z)| PochhammerFactor::euler(j, z)).collect() }
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::from(1);
        for factor in &self.factors {
            apply_factor(&mut coeffs, factor);
        }
        TruncatedSeries::new(coeffs)
    }
}

/// Multiplies (or divides, for negative exponents) `coeffs` in place by the
/// factor, one binomial `(1 - s q^d)` at a time.
fn apply_factor(coeffs: &mut [BigInt], factor: &PochhammerFactor) {
    let order = coeffs.len() - 1;
    // -s: the coefficient of q^d in (1 - s q^d)
    let step = -factor.sign.value();
    let degrees: Vec<usize> = (0..)
        .map(|k: usize| factor.offset as usize + k * factor.modulus as usize)
        .take_while(|&d| d <= order)
        .collect();
    for _ in 0..factor.exponent.unsigned_abs() {
        if factor.exponent > 0 {
            for &d in &degrees {
                // top-down: multiply by (1 + step q^d)
                for n in (d..=order).rev() {
                    if !coeffs[n - d].is_zero() {
                        let t = &coeffs[n - d] * step;
                        coeffs[n] += t;
                    }
                }
            }
        } else {
            for &d in &degrees {
                // bottom-up: divide by (1 + step q^d)
                for n in d..=order {
                    if !coeffs[n - d].is_zero() {
                        let t = &coeffs[n - d] * step;
                        coeffs[n] -= t;
                    }
                }
            }
        }
    }
}

pub fn expand_pochhammer(factor: &PochhammerFactor, order: usize) -> TruncatedSeries {
    QProductSpec::new(vec![*factor]).expand(order)
}

/// `f(a, b)` with `a = s1 q^e1`, `b = s2 q^e2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub s1: Sign,
    pub e1: u32,
    pub s2: Sign,
    pub e2: u32,
}

impl ThetaSpec {
    pub fn new(s1: Sign, e1: u32, s2: Sign, e2: u32) -> Result<Self, ThetaError> {
        if e1 + e2 == 0 {
            return Err(ThetaError::DivergentTheta);
        }
        Ok(ThetaSpec { s1, e1, s2, e2 })
    }

    /// Exponent of the `n`-th term: `e1 n(n+1)/2 + e2 n(n-1)/2`.
    fn exponent(&self, n: i64) -> i64 {
        self.e1 as i64 * (n * (n + 1) / 2) + self.e2 as i64 * (n * (n - 1) / 2)
    }

    fn term_sign(&self, n: i64) -> Sign {
        let t1 = (n * (n + 1) / 2) as u64;
        let t2 = (n * (n - 1) / 2) as u64;
        if self.s1.pow(t1) == self.s2.pow(t2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The integers `n` whose exponent is at most `order`, as an inclusive range.
    ///
    /// The exponent is `(A n^2 + B n) / 2` with `A = e1 + e2 > 0`, `B = e1 - e2`,
    /// so the window is between the roots of `A n^2 + B n - 2 order = 0`.
    fn window(&self, order: usize) -> (i64, i64) {
        let a = (self.e1 + self.e2) as i64;
        let b = self.e1 as i64 - self.e2 as i64;
        let disc = (b * b + 8 * a * order as i64) as u64;
        let root = disc.sqrt() as i64;
        let mut lo = (-b - root) / (2 * a) - 1;
        let mut hi = (-b + root) / (2 * a) + 1;
        let fits = |n: i64| self.exponent(n) <= order as i64;
        while !fits(lo) {
            lo += 1;
        }
        while fits(lo - 1) {
            lo -= 1;
        }
        while !fits(hi) {
            hi -= 1;
        }
        while fits(hi + 1) {
            hi += 1;
        }
        (lo, hi)
    }

    /// Bilateral sum, exact to `order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![0i64; order + 1];
        let (lo, hi) = self.window(order);
        for n in lo..=hi {
            coeffs[self.exponent(n) as usize] += self.term_sign(n).value();
        }
        TruncatedSeries::from_i64s(&coeffs, order)
    }

    /// `(-a; ab)_inf (-b; ab)_inf (ab; ab)_inf`.
    pub fn triple_product(&self) -> Result<QProductSpec, ThetaError> {
        if self.e1 == 0 || self.e2 == 0 {
            return Err(ThetaError::NoProductForm);
        }
        let m = self.e1 + self.e2;
        let mut factors = Vec::new();
        if self.s1 == self.s2 {
            factors.push(PochhammerFactor::new(self.s1.flip(), self.e1, m, 1)?);
            factors.push(PochhammerFactor::new(self.s2.flip(), self.e2, m, 1)?);
            factors.push(PochhammerFactor::new(Sign::Plus, m, m, 1)?);
        } else {
            // ab = -q^m: the sign inside each product alternates with k, so
            // split every product by the parity of k.
            for (s, e) in [(self.s1, self.e1), (self.s2, self.e2)] {
                factors.push(PochhammerFactor::new(s.flip(), e, 2 * m, 1)?);
                factors.push(PochhammerFactor::new(s, e + m, 2 * m, 1)?);
            }
            factors.push(PochhammerFactor::new(Sign::Minus, m, 2 * m, 1)?);
            factors.push(PochhammerFactor::new(Sign::Plus, 2 * m, 2 * m, 1)?);
        }
        Ok(QProductSpec::new(factors))
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({}q^{},{}q^{})", self.s1.prefix(), self.e1, self.s2.prefix(), self.e2)
    }
}

/// `f_j` from the pentagonal sum `sum (-1)^n q^{j n(3n-1)/2}`.
pub fn euler_f(j: u32, order: usize) -> TruncatedSeries {
    assert!(j >= 1, "f_j needs j >= 1");
    ThetaSpec::new(Sign::Minus, j, Sign::Minus, 2 * j).expect("valid").expand(order)
}

pub fn euler_f_product(j: u32, order: usize) -> TruncatedSeries {
    expand_pochhammer(&PochhammerFactor::euler(j, 1), order)
}

/// `phi(sign q^j) = sum (sign q^j)^{n^2}`.
pub fn phi(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    ThetaSpec::new(sign, j, sign, j).expect("valid").expand(order)
}

/// `phi(sign q^j)` from `phi(-q) = f_1^2 / f_2`.
pub fn phi_product(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    let base = QProductSpec::eta_quotient(&[(1, 2), (2, -1)]).expand(order / j as usize);
    substitute(base, sign, j, order)
}

/// `psi(sign q^j) = sum_{n>=0} (sign q^j)^{n(n+1)/2}`.
pub fn psi(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![0i64; order + 1];
    let j = j as usize;
    for n in 0.. {
        let t = n * (n + 1) / 2;
        if t * j > order {
            break;
        }
        coeffs[t * j] += sign.pow(t as u64).value();
    }
    TruncatedSeries::from_i64s(&coeffs, order)
}

/// `psi(sign q^j)` from `psi(-q) = f_1 f_4 / f_2`.
pub fn psi_product(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    let base = QProductSpec::eta_quotient(&[(1, 1), (4, 1), (2, -1)]).expand(order / j as usize);
    substitute(base, sign, j, order)
}

/// Given `g(-q)`, returns `g(sign q^j)` to `order`.
fn substitute(minus_form: TruncatedSeries, sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    let at_q = match sign {
        Sign::Minus => minus_form,
        Sign::Plus => minus_form.alternate(),
    };
    at_q.inflate_to(j as usize, order).expect("base expanded to order / j")
}

/// `f(sign q^j)` where `f(-q) = f_1`; the sum form of `f(q)` is
/// `f(q, -q^2)` after `q -> -q`.
pub fn f_theta(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    match sign {
        Sign::Minus => euler_f(j, order),
        Sign::Plus => substitute(euler_f(1, order / j as usize), sign, j, order),
    }
}

/// `chi(sign q^j) = (-sign q^j; q^{2j})_inf`.
pub fn chi(sign: Sign, j: u32, order: usize) -> TruncatedSeries {
    expand_pochhammer(&PochhammerFactor::new(sign.flip(), j, 2 * j, 1).expect("j >= 1"), order)
}

/// The Rogers-Ramanujan quotient as a product spec, at `q^j`.
pub fn rr_spec(j: u32) -> QProductSpec {
    let factor = |k: u32, z: i32| PochhammerFactor::new(Sign::Plus, k * j, 5 * j, z).expect("j >= 1");
    QProductSpec::new(vec![factor(1, 1), factor(4, 1), factor(2, -1), factor(3, -1)])
}

/// `R(q^j) = (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))` at `q -> q^j`.
pub fn rr_quotient(j: u32, order: usize) -> TruncatedSeries {
    rr_spec(j).expand(order)
}

/// `sum c_5(n) q^n = f_5^5 / f_1`.
pub fn gen_c5(order: usize) -> TruncatedSeries {
    let num = euler_f(5, order).pow(5);
    num.div(&euler_f(1, order)).expect("f_1 has unit constant term")
}

/// `sum a_5(n) q^n = phi^5(-q^5) / phi(-q)`, computed as pow, inflate, div.
pub fn gen_a5bar(order: usize) -> TruncatedSeries {
    let num = phi(Sign::Minus, 1, order / 5).pow(5).inflate_to(5, order).expect("order / 5");
    num.div(&phi(Sign::Minus, 1, order)).expect("phi(-q) has unit constant term")
}

/// `sum b_5(n) q^n = psi^5(-q^5) / psi(-q)`.
pub fn gen_b5bar(order: usize) -> TruncatedSeries {
    let num = psi(Sign::Minus, 1, order / 5).pow(5).inflate_to(5, order).expect("order / 5");
    num.div(&psi(Sign::Minus, 1, order)).expect("psi(-q) has unit constant term")
}

/// Named sequences with an offset-0 generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Seq {
    C5,
    A5Bar,
    B5Bar,
}

impl Seq {
    pub const ALL: [Seq; 3] = [Seq::C5, Seq::A5Bar, Seq::B5Bar];

    pub fn name(self) -> &'static str {
        match self {
            Seq::C5 => "c5",
            Seq::A5Bar => "a5bar",
            Seq::B5Bar => "b5bar",
        }
    }

    pub fn from_name(name: &str) -> Option<Seq> {
        Seq::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn generate(self, order: usize) -> TruncatedSeries {
        match self {
            Seq::C5 => gen_c5(order),
            Seq::A5Bar => gen_a5bar(order),
            Seq::B5Bar => gen_b5bar(order),
        }
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Key of a memoizable named constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    Euler(u32),
    F(Sign, u32),
    Phi(Sign, u32),
    Psi(Sign, u32),
    Chi(Sign, u32),
    Rr(u32),
    Theta(ThetaSpec),
    Seq(Seq),
}

impl Named {
    pub fn build(self, order: usize) -> TruncatedSeries {
        match self {
            Named::Euler(j) => euler_f(j, order),
            Named::F(s, j) => f_theta(s, j, order),
            Named::Phi(s, j) => phi(s, j, order),
            Named::Psi(s, j) => psi(s, j, order),
            Named::Chi(s, j) => chi(s, j, order),
            Named::Rr(j) => rr_quotient(j, order),
            Named::Theta(spec) => spec.expand(order),
            Named::Seq(seq) => seq.generate(order),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |s: Sign, j: u32| format!("({}q^{})", s.prefix(), j);
        match *self {
            Named::Euler(j) => write!(f, "f{j}"),
            Named::F(s, j) => write!(f, "f{}", arg(s, j)),
            Named::Phi(s, j) => write!(f, "phi{}", arg(s, j)),
            Named::Psi(s, j) => write!(f, "psi{}", arg(s, j)),
            Named::Chi(s, j) => write!(f, "chi{}", arg(s, j)),
            Named::Rr(j) => write!(f, "R(q^{j})"),
            Named::Theta(spec) => write!(f, "{spec}"),
            Named::Seq(seq) => write!(f, "{seq}"),
        }
    }
}

/// Memo table for named constructors. A cached value of higher order serves
/// any lower order by truncation. Safe to share between threads.
#[derive(Debug, Default)]
pub struct SeriesCache {
    table: RwLock<HashMap<Named, Arc<TruncatedSeries>>>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: Named, order: usize) -> TruncatedSeries {
        if let Some(hit) = self.table.read().expect("cache lock").get(&key) {
            if hit.order() >= order {
                return hit.truncate(order);
            }
        }
        let built = Arc::new(key.build(order));
        let mut table = self.table.write().expect("cache lock");
        let keep = match table.get(&key) {
            Some(existing) => existing.order() < order,
            None => true,
        };
        if keep {
            table.insert(key, Arc::clone(&built));
        }
        built.as_ref().clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Convenience for tests and callers holding small values.
pub fn coeffs_i64(s: &TruncatedSeries) -> Vec<i64> {
    s.coeffs().iter().map(|c| c.to_i64().expect("fits in i64")).collect()
}
