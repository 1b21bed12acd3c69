//! Brute-force t-core counting: enumerate partitions, compute hook numbers,
//! test divisibility. Shares no code with the generating-function side.

use std::fmt;

use thiserror::Error;

pub const DEFAULT_CEILING: u32 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} is above the enumeration ceiling {ceiling}")]
    ScaleExceeded { n: u32, ceiling: u32 },
}

/// Non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics unless `parts` is non-increasing with every part at least 1.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be non-increasing");
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Column lengths of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn hook_numbers(&self) -> HookTable {
        let conj = self.conjugate();
        let mut entries = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                // 0-based form of H(i,j) = lambda_i + lambda'_j - i - j + 1
                entries.push(row + conj.parts[j] - i as u32 - j as u32 - 1);
            }
        }
        HookTable { entries }
    }

    pub fn is_t_core(&self, t: u32) -> bool {
        assert!(t >= 1, "t must be positive");
        self.hook_numbers().entries.iter().all(|h| h % t != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Hook numbers in row-major node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookTable {
    entries: Vec<u32>,
}

impl HookTable {
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn max(&self) -> Option<u32> {
        self.entries.iter().copied().max()
    }
}

/// Partitions of `n` in lexicographically decreasing order, starting at `(n)`.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

/// Next partition in decreasing lex order: strip trailing 1s, decrement the
/// last part above 1, then refill greedily with that part as the cap.
fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let mut next = parts.to_vec();
    let mut ones = 0u32;
    while next.last() == Some(&1) {
        next.pop();
        ones += 1;
    }
    let last = next.pop()?;
    let cap = last - 1;
    next.push(cap);
    let mut rest = ones + 1;
    while rest > 0 {
        let part = rest.min(cap);
        next.push(part);
        rest -= part;
    }
    Some(next)
}

/// Counts t-cores of `n` by exhaustive enumeration.
#[derive(Debug, Clone, Copy)]
pub struct CoreOracle {
    pub ceiling: u32,
}

impl Default for CoreOracle {
    fn default() -> Self {
        CoreOracle { ceiling: DEFAULT_CEILING }
    }
}

impl CoreOracle {
    pub fn with_ceiling(ceiling: u32) -> Self {
        CoreOracle { ceiling }
    }

    pub fn count_t_cores(&self, n: u32, t: u32) -> Result<u64, OracleError> {
        Ok(self.t_cores(n, t)?.count() as u64)
    }

    /// The t-cores of `n`, lazily, in enumeration order.
    pub fn t_cores(&self, n: u32, t: u32) -> Result<impl Iterator<Item = Partition>, OracleError> {
        if n > self.ceiling {
            return Err(OracleError::ScaleExceeded { n, ceiling: self.ceiling });
        }
        Ok(partitions_of(n).filter(move |p| p.is_t_core(t)))
    }
}

pub fn count_t_cores(n: u32, t: u32) -> Result<u64, OracleError> {
    CoreOracle::default().count_t_cores(n, t)
}
