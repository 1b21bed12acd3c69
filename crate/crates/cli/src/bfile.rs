//! OEIS b-files: one `n a(n)` pair per line, indices contiguous.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use qcore::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    first: u64,
    values: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BFileError {
    Parse { line: usize, msg: String },
    Gap { line: usize, expected: u64, found: u64 },
    Empty,
}

impl fmt::Display for BFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BFileError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            BFileError::Gap { line, expected, found } => {
                write!(f, "line {line}: index gap, expected {expected}, found {found}")
            }
            BFileError::Empty => write!(f, "b-file has no data lines"),
        }
    }
}

impl std::error::Error for BFileError {}

/// First index where a b-file disagrees with a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub index: u64,
    pub found: BigInt,
    pub expected: BigInt,
}

impl BFile {
    pub fn from_series(series: &TruncatedSeries) -> Self {
        BFile { first: 0, values: series.coeffs().to_vec() }
    }

    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, BFileError> {
        let mut first = None;
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut fields = body.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(BFileError::Parse { line, msg: format!("expected \"n a(n)\", got {body:?}") });
            };
            let idx: u64 = idx
                .parse()
                .map_err(|_| BFileError::Parse { line, msg: format!("bad index {idx:?}") })?;
            let val: BigInt = val
                .parse()
                .map_err(|_| BFileError::Parse { line, msg: format!("bad value {val:?}") })?;
            let start = *first.get_or_insert(idx);
            let expected = start + values.len() as u64;
            if idx != expected {
                return Err(BFileError::Gap { line, expected, found: idx });
            }
            values.push(val);
        }
        match first {
            Some(first) => Ok(BFile { first, values }),
            None => Err(BFileError::Empty),
        }
    }

    pub fn first(&self) -> u64 {
        self.first
    }

    pub fn last(&self) -> u64 {
        self.first + self.values.len() as u64 - 1
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.values.iter().enumerate() {
            writeln!(out, "{} {}", self.first + k as u64, v).expect("string write");
        }
        out
    }

    /// Compares over the indices both cover; returns the count compared and
    /// the first discrepancy.
    pub fn compare(&self, series: &TruncatedSeries) -> (u64, Option<Discrepancy>) {
        let top = self.last().min(series.order() as u64);
        let mut checked = 0;
        for n in self.first..=top {
            let found = &self.values[(n - self.first) as usize];
            let expected = series.coeff(n as i64);
            if *found != expected {
                return (checked, Some(Discrepancy { index: n, found: found.clone(), expected }));
            }
            checked += 1;
        }
        (checked, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcore::theta::gen_a5bar;

    #[test]
    fn render_and_parse_round_trip() {
        let a = gen_a5bar(100);
        let b = BFile::from_series(&a);
        let text = b.render();
        assert_eq!(text.lines().count(), 101);
        assert_eq!(text.lines().nth(7), Some("7 24"));
        assert!(text.ends_with('\n'));
        let back = BFile::parse(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(back.compare(&a), (101, None));
    }

    #[test]
    fn forged_value_found() {
        let a = gen_a5bar(20);
        let text = BFile::from_series(&a).render().replace("\n6 20\n", "\n6 21\n");
        let (checked, d) = BFile::parse(&text).unwrap().compare(&a);
        assert_eq!(checked, 6);
        assert_eq!(d, Some(Discrepancy { index: 6, found: 21.into(), expected: 20.into() }));
    }

    #[test]
    fn overlap_only() {
        let a = gen_a5bar(5);
        let b = BFile::parse("3 8\n4 14\n5 14\n6 20\n7 24\n").unwrap();
        assert_eq!(b.first(), 3);
        assert_eq!(b.compare(&a), (3, None));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            BFile::parse("# header\n0 1\n1 x\n").unwrap_err(),
            BFileError::Parse { line: 3, msg: "bad value \"x\"".into() }
        );
        assert_eq!(
            BFile::parse("0 1\n1 2\n3 4\n").unwrap_err(),
            BFileError::Gap { line: 3, expected: 2, found: 3 }
        );
        assert!(matches!(BFile::parse("0 1 2\n").unwrap_err(), BFileError::Parse { line: 1, .. }));
        assert!(matches!(BFile::parse("-1 5\n").unwrap_err(), BFileError::Parse { line: 1, .. }));
        assert_eq!(BFile::parse("\n# only\n").unwrap_err(), BFileError::Empty);
    }

    #[test]
    fn big_values() {
        let b = BFile::parse("0 -123456789012345678901234567890\n").unwrap();
        assert_eq!(b.values[0].to_string(), "-123456789012345678901234567890");
    }
}
