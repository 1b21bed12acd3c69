//! Inline series syntax for `expand` and `bfile`.
//!
//! ```text
//! expr  := term (('*' | '/') term)*
//! term  := atom ('^' ['-'] int)?
//! atom  := '1' | '(' expr ')' | '(' arg ';' 'q' ['^' int] ')'
//!        | name ['(' arg [',' arg] ')']
//! arg   := ['-'] 'q' ['^' int]
//! ```
//!
//! Names: `c5`, `a5bar`, `b5bar`, `f<j>` (Euler product), `phi`, `psi`, `f`,
//! `chi`, `R`. A bare `phi`, `psi`, `f`, `chi` or `R` takes the argument `q`;
//! `f(a, b)` with two arguments is Ramanujan's general theta function.

use std::fmt;

use qcore::series::{SeriesError, TruncatedSeries};
use qcore::theta::{Named, PochhammerFactor, Seq, Sign, ThetaSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    UnknownSeries(String),
    Malformed { pos: usize, msg: String },
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxError::UnknownSeries(name) => write!(f, "unknown series {name:?}"),
            SyntaxError::Malformed { pos, msg } => write!(f, "malformed series spec at column {}: {msg}", pos + 1),
        }
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesSpec {
    One,
    Named(Named),
    Poch(PochhammerFactor),
    Pow(Box<SeriesSpec>, i32),
    Mul(Box<SeriesSpec>, Box<SeriesSpec>),
    Div(Box<SeriesSpec>, Box<SeriesSpec>),
}

impl SeriesSpec {
    pub fn eval(&self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        Ok(match self {
            SeriesSpec::One => TruncatedSeries::one(order),
            SeriesSpec::Named(n) => n.build(order),
            SeriesSpec::Poch(p) => qcore::theta::expand_pochhammer(p, order),
            SeriesSpec::Pow(a, k) => a.eval(order)?.pow_signed(*k)?,
            SeriesSpec::Mul(a, b) => a.eval(order)?.mul(&b.eval(order)?),
            SeriesSpec::Div(a, b) => a.eval(order)?.div(&b.eval(order)?)?,
        })
    }
}

pub fn parse(input: &str) -> Result<SeriesSpec, SyntaxError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> SyntaxError {
        SyntaxError::Malformed { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn uint(&mut self) -> Result<u32, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| SyntaxError::Malformed { pos: start, msg: "number too large".into() })
    }

    fn expr(&mut self) -> Result<SeriesSpec, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'*') {
                acc = SeriesSpec::Mul(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'/') {
                acc = SeriesSpec::Div(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SeriesSpec, SyntaxError> {
        let atom = self.atom()?;
        if !self.eat(b'^') {
            return Ok(atom);
        }
        let neg = self.eat(b'-');
        let k = i32::try_from(self.uint()?).map_err(|_| self.error("exponent too large"))?;
        Ok(SeriesSpec::Pow(Box::new(atom), if neg { -k } else { k }))
    }

    /// `['-'] q ['^' j]` as `(sign, j)`.
    fn arg(&mut self) -> Result<(Sign, u32), SyntaxError> {
        let sign = if self.eat(b'-') { Sign::Minus } else { Sign::Plus };
        self.expect(b'q')?;
        let j = if self.eat(b'^') { self.uint()? } else { 1 };
        if j == 0 {
            return Err(self.error("exponent of q must be positive"));
        }
        Ok((sign, j))
    }

    fn atom(&mut self) -> Result<SeriesSpec, SyntaxError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(SeriesSpec::One)
            }
            Some(b'(') => {
                self.pos += 1;
                if !matches!(self.peek(), Some(b'-' | b'q')) {
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    return Ok(inner);
                }
                let (sign, offset) = self.arg()?;
                self.expect(b';')?;
                let (base_sign, modulus) = self.arg()?;
                if base_sign == Sign::Minus {
                    return Err(self.error("Pochhammer base must be q^m"));
                }
                self.expect(b')')?;
                let factor = PochhammerFactor::new(sign, offset, modulus, 1).map_err(|e| self.error(&e.to_string()))?;
                Ok(SeriesSpec::Poch(factor))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.named(name)
            }
            _ => Err(self.error("expected a series")),
        }
    }

    fn named(&mut self, name: &str) -> Result<SeriesSpec, SyntaxError> {
        if let Some(seq) = Seq::from_name(name) {
            return Ok(SeriesSpec::Named(Named::Seq(seq)));
        }
        if let Some(j) = name.strip_prefix('f').filter(|d| !d.is_empty()) {
            return match j.parse::<u32>() {
                Ok(j) if j >= 1 => Ok(SeriesSpec::Named(Named::Euler(j))),
                _ => Err(SyntaxError::UnknownSeries(name.into())),
            };
        }
        let ctor: fn(Sign, u32) -> Named = match name {
            "phi" => Named::Phi,
            "psi" => Named::Psi,
            "chi" => Named::Chi,
            "f" => Named::F,
            "R" => |_, j| Named::Rr(j),
            _ => return Err(SyntaxError::UnknownSeries(name.into())),
        };
        if !self.eat(b'(') {
            return Ok(SeriesSpec::Named(ctor(Sign::Plus, 1)));
        }
        let (s1, e1) = self.arg()?;
        if name == "f" && self.eat(b',') {
            let (s2, e2) = self.arg()?;
            self.expect(b')')?;
            let spec = ThetaSpec::new(s1, e1, s2, e2).map_err(|e| self.error(&e.to_string()))?;
            return Ok(SeriesSpec::Named(Named::Theta(spec)));
        }
        self.expect(b')')?;
        if name == "R" && s1 == Sign::Minus {
            return Err(self.error("R takes a positive argument q^j"));
        }
        Ok(SeriesSpec::Named(ctor(s1, e1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcore::theta::{coeffs_i64, euler_f, gen_c5, phi};

    fn expand(s: &str, n: usize) -> Vec<i64> {
        coeffs_i64(&parse(s).unwrap().eval(n).unwrap())
    }

    #[test]
    fn named_sequences() {
        assert_eq!(expand("a5bar", 7), [1, 2, 4, 8, 14, 14, 20, 24]);
        assert_eq!(expand("b5bar", 10), [1, 1, 1, 2, 3, -1, 0, 2, 0, -2, 6]);
        assert_eq!(expand("c5", 0), [1]);
    }

    #[test]
    fn eta_quotients_and_pochhammers() {
        assert_eq!(parse("f5^5/f1").unwrap().eval(60).unwrap(), gen_c5(60));
        assert_eq!(parse("f1").unwrap().eval(30).unwrap(), euler_f(1, 30));
        assert_eq!(parse("(q;q)").unwrap().eval(30).unwrap(), euler_f(1, 30));
        assert_eq!(expand("1/(q;q)", 6), [1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(expand("(-q;q^2)", 5), [1, 1, 0, 1, 1, 1]);
        let rr = "(q;q^5)*(q^4;q^5)/((q^2;q^5)*(q^3;q^5))";
        assert_eq!(expand(rr, 5), [1, -1, 1, 0, -1, 1]);
        assert_eq!(expand("R", 5), [1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn thetas() {
        assert_eq!(parse("phi(-q^5)").unwrap().eval(40).unwrap(), phi(Sign::Minus, 5, 40));
        assert_eq!(parse("phi").unwrap().eval(40).unwrap(), phi(Sign::Plus, 1, 40));
        assert_eq!(expand("f(q,q^4)", 7), [1, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(expand("f(-q)", 7), [1, -1, -1, 0, 0, 1, 0, 1]);
        assert_eq!(expand("psi(-q)", 6), [1, -1, 0, -1, 0, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(parse("foo").unwrap_err(), SyntaxError::UnknownSeries("foo".into()));
        assert_eq!(parse("f0").unwrap_err(), SyntaxError::UnknownSeries("f0".into()));
        assert!(matches!(parse("phi(").unwrap_err(), SyntaxError::Malformed { .. }));
        assert!(matches!(parse("f5^").unwrap_err(), SyntaxError::Malformed { .. }));
        assert!(matches!(parse("(q;-q)").unwrap_err(), SyntaxError::Malformed { .. }));
        assert!(matches!(parse("c5 c5").unwrap_err(), SyntaxError::Malformed { pos: 3, .. }));
        let nonunit = parse("f1/(q;q)^0").unwrap();
        assert!(nonunit.eval(3).is_ok());
    }
}
