//! Uniform verification of the identity registry.

pub mod expr;
pub mod registry;
pub mod relation;

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::oracle::{CoreOracle, OracleError};
use crate::report::{compare_series, Status, VerificationReport};
use crate::series::TruncatedSeries;
use crate::theta::{Named, Seq, SeriesCache};

use expr::Expr;
use registry::{CensusBounds, Claim, IdentityRecord, Registry, Tier};
use relation::{LinearRelation, Term};

pub const DEFAULT_KMAX: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// Adds `delta` to the right-hand side at `index` (a coefficient index for
/// series claims, a value of `n` for index relations).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub index: u64,
    pub delta: i64,
}

/// Exact sign counts of `seq(n)` for `1 <= n <= order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub seq: Seq,
    pub order: usize,
    pub zero: u64,
    pub positive: u64,
    pub negative: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.order as u64
    }

    pub fn zero_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.zero, self.total().max(1))
    }

    pub fn positive_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.positive, self.total().max(1))
    }

    pub fn negative_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.negative, self.total().max(1))
    }

    /// The first bound not met, as `(name, observed, bound)`.
    pub fn violation(&self, bounds: &CensusBounds) -> Option<(&'static str, Ratio<u64>, Ratio<u64>)> {
        [
            ("zero", self.zero_fraction(), bounds.zero),
            ("positive", self.positive_fraction(), bounds.positive),
            ("negative", self.negative_fraction(), bounds.negative),
        ]
        .into_iter()
        .find(|(_, seen, bound)| seen < bound)
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pct = |c: u64| c as f64 * 100.0 / self.total().max(1) as f64;
        write!(
            f,
            "{} over 1..{}: zero {} ({:.2}%), positive {} ({:.2}%), negative {} ({:.2}%)",
            self.seq,
            self.order,
            self.zero,
            pct(self.zero),
            self.positive,
            pct(self.positive),
            self.negative,
            pct(self.negative)
        )
    }
}

pub struct Harness {
    registry: Registry,
    cache: SeriesCache,
    kmax: u32,
    oracle: CoreOracle,
}

impl Default for Harness {
    fn default() -> Self {
        Harness::new(Registry::standard())
    }
}

impl Harness {
    pub fn new(registry: Registry) -> Self {
        Harness { registry, cache: SeriesCache::new(), kmax: DEFAULT_KMAX, oracle: CoreOracle::default() }
    }

    pub fn with_kmax(mut self, kmax: u32) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn with_oracle(mut self, oracle: CoreOracle) -> Self {
        self.oracle = oracle;
        self
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.registry
    }

    pub fn cache(&self) -> &SeriesCache {
        &self.cache
    }

    pub fn sequence(&self, seq: Seq, order: usize) -> TruncatedSeries {
        self.cache.get(Named::Seq(seq), order)
    }

    pub fn verify(&self, id: &str, order: usize) -> Result<VerificationReport, HarnessError> {
        self.verify_with(id, order, None)
    }

    pub fn verify_with(
        &self,
        id: &str,
        order: usize,
        fault: Option<Fault>,
    ) -> Result<VerificationReport, HarnessError> {
        let record = self.registry.get(id).ok_or_else(|| HarnessError::UnknownIdentity(id.into()))?;
        Ok(self.verify_record(record, order, fault))
    }

    /// Verifies every record of `tier`, in registry order. Records run in
    /// parallel on `jobs` threads (`0` lets rayon choose).
    pub fn verify_all(&self, tier: Tier, order: usize, jobs: usize) -> Vec<VerificationReport> {
        let records: Vec<&IdentityRecord> = self.registry.tier(tier).collect();
        self.verify_records(&records, order, jobs, None)
    }

    /// Output order follows `records` whatever the thread count.
    pub fn verify_records(
        &self,
        records: &[&IdentityRecord],
        order: usize,
        jobs: usize,
        fault: Option<Fault>,
    ) -> Vec<VerificationReport> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| records.par_iter().map(|r| self.verify_record(r, order, fault)).collect())
    }

    pub fn verify_record(&self, record: &IdentityRecord, order: usize, fault: Option<Fault>) -> VerificationReport {
        let start = Instant::now();
        let id = record.id.as_str();
        let report = match &record.claim {
            Claim::Series(sides) => self.verify_series(id, sides, order, fault),
            Claim::Relation(rel) => self.verify_relation(id, rel, order, fault),
            Claim::Family { build, k_min } => self.run_family(id, *build, *k_min, self.kmax, order, fault),
            Claim::Census { seq, bounds } => self.verify_census(id, *seq, bounds, order, fault),
            Claim::Oracle { t, max_n } => self.verify_oracle(id, *t, *max_n, order, fault),
        };
        report.timed(start)
    }

    fn verify_series(
        &self,
        id: &str,
        sides: &[Expr],
        order: usize,
        fault: Option<Fault>,
    ) -> VerificationReport {
        let mut values = Vec::with_capacity(sides.len());
        for (i, side) in sides.iter().enumerate() {
            match side.eval(order, &self.cache) {
                Ok(v) => values.push(v),
                Err(e) => return VerificationReport::skipped(id, order, format!("side {i} not evaluable: {e}")),
            }
        }
        if let Some(Fault { index, delta }) = fault {
            let last = values.last_mut().expect("at least two sides");
            if (index as usize) <= order {
                let bump = TruncatedSeries::monomial(BigInt::from(delta), index as usize, order);
                *last = last.add(&bump);
            }
        }
        let mut worst: Option<(usize, VerificationReport)> = None;
        for (i, rhs) in values.iter().enumerate().skip(1) {
            let r = compare_series(id, &values[0], rhs, order);
            if let Status::Mismatch { index, .. } = r.status {
                if worst.as_ref().is_none_or(|(_, w)| matches!(w.status, Status::Mismatch { index: j, .. } if index < j)) {
                    worst = Some((i, r));
                }
            }
        }
        match worst {
            Some((i, r)) if values.len() > 2 => r.with_detail(format!("side 0 vs side {i}")),
            Some((_, r)) => r,
            None => VerificationReport::new(id, order, Status::ExactMatch, order as u64 + 1),
        }
    }

    fn relation_values(&self, rel: &LinearRelation, order: usize) -> HashMap<Seq, TruncatedSeries> {
        rel.sequences().into_iter().map(|s| (s, self.sequence(s, order))).collect()
    }

    fn verify_relation(
        &self,
        id: &str,
        rel: &LinearRelation,
        order: usize,
        fault: Option<Fault>,
    ) -> VerificationReport {
        let values = self.relation_values(rel, order);
        let perturb = fault.map(|f| (f.index, f.delta));
        match rel.check(order, &values, perturb) {
            Ok(checked) => VerificationReport::new(id, order, Status::ExactMatch, checked),
            Err(e) => VerificationReport::new(
                id,
                order,
                Status::Mismatch { index: e.n as i64, lhs: e.lhs.to_string(), rhs: e.rhs.to_string() },
                e.n,
            ),
        }
    }

    fn run_family(
        &self,
        id: &str,
        build: fn(u32) -> LinearRelation,
        k_min: u32,
        kmax: u32,
        order: usize,
        fault: Option<Fault>,
    ) -> VerificationReport {
        if kmax < k_min {
            return VerificationReport::skipped(id, order, format!("kmax {kmax} below {k_min}"));
        }
        let mut checked = 0;
        for k in k_min..=kmax {
            let rel = build(k);
            let values = self.relation_values(&rel, order);
            let perturb = if k == k_min { fault.map(|f| (f.index, f.delta)) } else { None };
            match rel.check(order, &values, perturb) {
                Ok(c) => checked += c,
                Err(e) => {
                    return VerificationReport::new(
                        id,
                        order,
                        Status::Mismatch { index: e.n as i64, lhs: e.lhs.to_string(), rhs: e.rhs.to_string() },
                        checked + e.n,
                    )
                    .with_detail(format!("k={k}: {rel}"));
                }
            }
        }
        VerificationReport::new(id, order, Status::ExactMatch, checked)
            .with_detail(format!("k={k_min}..{kmax}"))
    }

    fn verify_census(
        &self,
        id: &str,
        seq: Seq,
        bounds: &CensusBounds,
        order: usize,
        fault: Option<Fault>,
    ) -> VerificationReport {
        if order == 0 {
            return VerificationReport::new(id, order, Status::ExactMatch, 0).with_detail("empty index range");
        }
        let mut values = self.sequence(seq, order);
        if let Some(Fault { index, delta }) = fault {
            if (index as usize) <= order {
                values = values.add(&TruncatedSeries::monomial(BigInt::from(delta), index as usize, order));
            }
        }
        let census = census_of(seq, &values);
        match census.violation(bounds) {
            None => VerificationReport::new(id, order, Status::ExactMatch, order as u64).with_detail(census.to_string()),
            Some((name, seen, bound)) => VerificationReport::new(
                id,
                order,
                Status::Mismatch { index: order as i64, lhs: format!("{name} {seen}"), rhs: format!(">= {bound}") },
                order as u64,
            )
            .with_detail(census.to_string()),
        }
    }

    fn verify_oracle(&self, id: &str, t: u32, max_n: u32, order: usize, fault: Option<Fault>) -> VerificationReport {
        let top = (max_n as usize).min(order);
        let gf = self.cache.get(Named::Euler(t), top).pow(t).div(&self.cache.get(Named::Euler(1), top));
        let gf = gf.expect("f_1 has unit constant term");
        for n in 0..=top {
            let count = match self.oracle.count_t_cores(n as u32, t) {
                Ok(c) => BigInt::from(c),
                Err(e @ OracleError::ScaleExceeded { .. }) => {
                    return VerificationReport::skipped(id, order, e.to_string());
                }
            };
            let mut series = gf.coeff(n as i64);
            if let Some(f) = fault.filter(|f| f.index == n as u64) {
                series += f.delta;
            }
            if series != count {
                return VerificationReport::new(
                    id,
                    order,
                    Status::Mismatch { index: n as i64, lhs: count.to_string(), rhs: series.to_string() },
                    n as u64,
                );
            }
        }
        VerificationReport::new(id, order, Status::ExactMatch, top as u64 + 1)
    }

    /// `seq(mn + r) ≡ 0 (mod modulus)` for every `mn + r <= order`.
    pub fn check_congruence(&self, seq: Seq, modulus: u64, ap: (u64, u64), order: usize) -> VerificationReport {
        let (m, r) = ap;
        let id = format!("congruence.{seq}({m}n+{r}).mod{modulus}");
        let rel = LinearRelation::congruence(vec![Term::new(seq, m, r as i64)], vec![], modulus);
        let start = Instant::now();
        self.verify_relation(&id, &rel, order, None).timed(start)
    }

    pub fn check_recurrence_a5(&self, kmax: u32, order: usize) -> VerificationReport {
        self.check_family("recurrence.a5bar", registry::a5_recurrence, kmax, order)
    }

    pub fn check_recurrence_b5(&self, kmax: u32, order: usize) -> VerificationReport {
        self.check_family("recurrence.b5bar", registry::b5_recurrence, kmax, order)
    }

    fn check_family(&self, id: &str, build: fn(u32) -> LinearRelation, kmax: u32, order: usize) -> VerificationReport {
        assert!(kmax >= 2, "kmax must be at least 2");
        let start = Instant::now();
        self.run_family(id, build, 2, kmax, order, None).timed(start)
    }

    pub fn sign_census(&self, seq: Seq, order: usize) -> Census {
        assert!(order >= 1, "census needs N >= 1");
        census_of(seq, &self.sequence(seq, order))
    }
}

fn census_of(seq: Seq, values: &TruncatedSeries) -> Census {
    let mut c = Census { seq, order: values.order(), zero: 0, positive: 0, negative: 0 };
    for v in &values.coeffs()[1..] {
        if v.is_zero() {
            c.zero += 1;
        } else if v.is_positive() {
            c.positive += 1;
        } else {
            c.negative += 1;
        }
    }
    c
}

/// 1 if any report is a mismatch, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status.is_mismatch()) {
        1
    } else {
        0
    }
}
