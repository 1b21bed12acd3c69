//! Series recipes as expression trees.
//!
//! Evaluation is demand-driven: `eval(order)` always returns a series of
//! exactly that order, asking each child for the order it needs (an
//! arithmetic-progression extraction `(m, r)` asks its child for `m*N + r`,
//! an inflation by `m` asks for `N / m`).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::series::{SeriesError, TruncatedSeries};
use crate::theta::{Named, Seq, SeriesCache, Sign, ThetaSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Named(Named),
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Scale(i64, Box<Expr>),
    Pow(Box<Expr>, i32),
    /// Multiply by `q^k`.
    Shift(Box<Expr>, u32),
    /// `q -> q^m`.
    Inflate(Box<Expr>, u32),
    /// `q -> -q`.
    Alternate(Box<Expr>),
    /// Coefficients at `m n + r`, re-indexed to `n`.
    ExtractAp(Box<Expr>, u32, u32),
}

impl Expr {
    pub fn eval(&self, order: usize, cache: &SeriesCache) -> Result<TruncatedSeries, SeriesError> {
        Ok(match self {
            Expr::Named(key) => cache.get(*key, order),
            Expr::Const(c) => TruncatedSeries::monomial(BigInt::from(*c), 0, order),
            Expr::Add(a, b) => a.eval(order, cache)?.add(&b.eval(order, cache)?),
            Expr::Sub(a, b) => a.eval(order, cache)?.sub(&b.eval(order, cache)?),
            Expr::Mul(a, b) => a.eval(order, cache)?.mul(&b.eval(order, cache)?),
            Expr::Div(a, b) => a.eval(order, cache)?.div(&b.eval(order, cache)?)?,
            Expr::Scale(k, a) => a.eval(order, cache)?.scale_i64(*k),
            Expr::Pow(a, k) => a.eval(order, cache)?.pow_signed(*k)?,
            Expr::Shift(a, k) => {
                let k = *k as usize;
                if k > order {
                    TruncatedSeries::zero(order)
                } else {
                    let inner = a.eval(order - k, cache)?;
                    let mut coeffs = vec![BigInt::default(); k];
                    coeffs.extend(inner.into_coeffs());
                    TruncatedSeries::new(coeffs)
                }
            }
            Expr::Inflate(a, m) => {
                let m = *m as usize;
                a.eval(order / m, cache)?.inflate_to(m, order)?
            }
            Expr::Alternate(a) => a.eval(order, cache)?.alternate(),
            Expr::ExtractAp(a, m, r) => {
                let (m, r) = (*m as usize, *r as usize);
                a.eval(m * order + r, cache)?.extract_ap(m, r)?
            }
        })
    }

    /// Every named constructor the expression reads, in tree order.
    pub fn leaves(&self) -> Vec<Named> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Named>) {
        match self {
            Expr::Named(n) => out.push(*n),
            Expr::Const(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            Expr::Scale(_, a)
            | Expr::Pow(a, _)
            | Expr::Shift(a, _)
            | Expr::Inflate(a, _)
            | Expr::Alternate(a)
            | Expr::ExtractAp(a, _, _) => a.collect_leaves(out),
        }
    }

    pub fn pow(self, k: i32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn shift(self, k: u32) -> Expr {
        Expr::Shift(Box::new(self), k)
    }

    pub fn inflate(self, m: u32) -> Expr {
        assert!(m >= 1);
        Expr::Inflate(Box::new(self), m)
    }

    pub fn alternate(self) -> Expr {
        Expr::Alternate(Box::new(self))
    }

    pub fn extract(self, m: u32, r: u32) -> Expr {
        assert!(m >= 1 && r < m);
        Expr::ExtractAp(Box::new(self), m, r)
    }

    pub fn scale(self, k: i64) -> Expr {
        Expr::Scale(k, Box::new(self))
    }
}

/// `f_j = (q^j; q^j)_inf`, from the pentagonal sum.
pub fn f(j: u32) -> Expr {
    Expr::Named(Named::Euler(j))
}

/// Ramanujan's `f(sign q^j)`; `f(-q^j) = f_j`.
pub fn f_at(sign: Sign, j: u32) -> Expr {
    Expr::Named(Named::F(sign, j))
}

pub fn phi(sign: Sign, j: u32) -> Expr {
    Expr::Named(Named::Phi(sign, j))
}

pub fn psi(sign: Sign, j: u32) -> Expr {
    Expr::Named(Named::Psi(sign, j))
}

pub fn chi(sign: Sign, j: u32) -> Expr {
    Expr::Named(Named::Chi(sign, j))
}

pub fn rr(j: u32) -> Expr {
    Expr::Named(Named::Rr(j))
}

/// Ramanujan's general theta `f(s1 q^e1, s2 q^e2)`.
pub fn theta(s1: Sign, e1: u32, s2: Sign, e2: u32) -> Expr {
    Expr::Named(Named::Theta(ThetaSpec::new(s1, e1, s2, e2).expect("registry theta specs converge")))
}

/// Generating function of a named sequence.
pub fn gf(seq: Seq) -> Expr {
    Expr::Named(Named::Seq(seq))
}

pub fn konst(c: i64) -> Expr {
    Expr::Const(c)
}

/// `c q^e`.
pub fn mono(c: i64, e: u32) -> Expr {
    Expr::Const(c).shift(e)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        rhs.scale(self)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(-1)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Named(n) => write!(f, "{n}"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Scale(k, a) => write!(f, "{k}*{a}"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
            Expr::Shift(a, k) => write!(f, "q^{k}*{a}"),
            Expr::Inflate(a, m) => write!(f, "{a}[q->q^{m}]"),
            Expr::Alternate(a) => write!(f, "{a}[q->-q]"),
            Expr::ExtractAp(a, m, r) => write!(f, "{a}[{m}n+{r}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{coeffs_i64, gen_a5bar, gen_c5};
    use Sign::Minus;

    #[test]
    fn eval_orders_are_exact() {
        let cache = SeriesCache::new();
        let e = (gf(Seq::A5Bar).extract(5, 2) + f(1).inflate(3).shift(2)).alternate();
        for order in [0usize, 1, 7, 40] {
            assert_eq!(e.eval(order, &cache).unwrap().order(), order);
        }
    }

    #[test]
    fn extract_matches_direct() {
        let cache = SeriesCache::new();
        let got = gf(Seq::A5Bar).extract(5, 2).eval(30, &cache).unwrap();
        let direct = gen_a5bar(152).extract_ap(5, 2).unwrap();
        assert_eq!(got, direct);
    }

    #[test]
    fn shift_and_monomials() {
        let cache = SeriesCache::new();
        assert_eq!(coeffs_i64(&mono(3, 2).eval(4, &cache).unwrap()), [0, 0, 3, 0, 0]);
        assert_eq!(coeffs_i64(&mono(3, 9).eval(4, &cache).unwrap()), [0; 5]);
        // 4q f5^5/f1 is 4 * shift(c5, 1)
        let e = 4 * (f(5).pow(5) / f(1)).shift(1);
        let direct = gen_c5(50).shift(1).scale_i64(4);
        assert_eq!(e.eval(50, &cache).unwrap(), direct);
    }

    #[test]
    fn div_by_non_unit_is_an_error() {
        let cache = SeriesCache::new();
        let e = f(1) / (konst(2) * f(1));
        assert!(e.eval(5, &cache).is_err());
    }

    #[test]
    fn leaves_in_order() {
        let e = phi(Minus, 5).pow(5) / phi(Minus, 1) + 2 * mono(1, 3);
        assert_eq!(e.leaves(), [Named::Phi(Minus, 5), Named::Phi(Minus, 1)]);
    }

    #[test]
    fn display_is_readable() {
        let e = phi(Minus, 5).pow(5) / phi(Minus, 1);
        assert_eq!(e.to_string(), "phi(-q^5)^5/phi(-q^1)");
    }
}
