//! The identity registry. Every claim is declared here as data: series
//! recipes, index relations, parametrised families, census bounds. The
//! verifier in `harness::verify` never special-cases an id.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::expr::{chi, f, f_at, gf, mono, phi, psi, rr, theta, Expr};
use super::relation::{a5, b5, c5, LinearRelation, Term};
use crate::theta::Seq::{A5Bar as A, B5Bar as B, C5 as C};
use crate::theta::{Seq, Sign::Minus as M, Sign::Plus as P};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Core,
    Extended,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Core => "core",
            Tier::Extended => "extended",
        }
    }

    pub fn from_name(name: &str) -> Option<Tier> {
        match name {
            "core" => Some(Tier::Core),
            "extended" => Some(Tier::Extended),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SeriesEquality,
    SubsequenceRelation,
    RecurrenceFamily,
    CongruenceFamily,
    Census,
    OracleAgreement,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::SeriesEquality => "series-equality",
            Kind::SubsequenceRelation => "subsequence-relation",
            Kind::RecurrenceFamily => "recurrence-family",
            Kind::CongruenceFamily => "congruence-family",
            Kind::Census => "census",
            Kind::OracleAgreement => "oracle-agreement",
        })
    }
}

/// Lower bounds on the fractions of zero, positive and negative values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusBounds {
    pub zero: Ratio<u64>,
    pub positive: Ratio<u64>,
    pub negative: Ratio<u64>,
}

#[derive(Debug, Clone)]
pub enum Claim {
    /// All listed series are equal.
    Series(Vec<Expr>),
    /// An index relation or a single congruence.
    Relation(LinearRelation),
    /// One relation per `k >= k_min`; checked for `k_min..=kmax`.
    Family { build: fn(u32) -> LinearRelation, k_min: u32 },
    Census { seq: Seq, bounds: CensusBounds },
    /// `c_t(n)` from the generating function equals the hook-number count
    /// for `n <= max_n`.
    Oracle { t: u32, max_n: u32 },
}

#[derive(Debug, Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub tier: Tier,
    pub statement: String,
    pub claim: Claim,
}

impl IdentityRecord {
    pub fn kind(&self) -> Kind {
        match &self.claim {
            Claim::Series(_) => Kind::SeriesEquality,
            Claim::Relation(r) if r.modulus.is_some() => Kind::CongruenceFamily,
            Claim::Relation(_) => Kind::SubsequenceRelation,
            Claim::Family { build, k_min } => {
                if build(*k_min).modulus.is_some() {
                    Kind::CongruenceFamily
                } else {
                    Kind::RecurrenceFamily
                }
            }
            Claim::Census { .. } => Kind::Census,
            Claim::Oracle { .. } => Kind::OracleAgreement,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Registry {
    pub fn new(records: Vec<IdentityRecord>) -> Self {
        let mut ids: Vec<&str> = records.iter().map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            panic!("duplicate identity id {}", w[0]);
        }
        Registry { records }
    }

    /// Every identity this crate knows about.
    pub fn standard() -> Self {
        let mut records = core_records();
        records.extend(extended_records());
        Registry::new(records)
    }

    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn tier(&self, tier: Tier) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(move |r| r.tier == tier)
    }

    /// Replaces a record with the same id (used for fault injection).
    pub fn replace(&mut self, record: IdentityRecord) -> Option<IdentityRecord> {
        let slot = self.records.iter_mut().find(|r| r.id == record.id)?;
        Some(std::mem::replace(slot, record))
    }
}

fn series(id: &str, tier: Tier, statement: &str, sides: Vec<Expr>) -> IdentityRecord {
    assert!(sides.len() >= 2, "{id}: need at least two sides");
    IdentityRecord { id: id.into(), tier, statement: statement.into(), claim: Claim::Series(sides) }
}

fn relation(id: &str, tier: Tier, lhs: Vec<Term>, rhs: Vec<Term>) -> IdentityRecord {
    let r = LinearRelation::equality(lhs, rhs);
    IdentityRecord { id: id.into(), tier, statement: r.to_string(), claim: Claim::Relation(r) }
}

fn congruence(id: &str, tier: Tier, lhs: Vec<Term>, modulus: i64) -> IdentityRecord {
    let r = LinearRelation::congruence(lhs, vec![], modulus);
    IdentityRecord { id: id.into(), tier, statement: r.to_string(), claim: Claim::Relation(r) }
}

fn family(id: &str, tier: Tier, statement: &str, build: fn(u32) -> LinearRelation) -> IdentityRecord {
    IdentityRecord {
        id: id.into(),
        tier,
        statement: statement.into(),
        claim: Claim::Family { build, k_min: 2 },
    }
}

fn five_pow(k: u32) -> i64 {
    5i64.checked_pow(k).expect("5^k fits in i64")
}

/// `a(5^k n) = (5^k-1)/4 a(5n) - (5^k-5)/4 a(n)`.
pub fn a5_recurrence(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::equality(
        vec![a5(p as u64, 0)],
        vec![a5(5, 0).times((p - 1) / 4), a5(1, 0).times(-(p - 5) / 4)],
    )
}

/// `b(5^k (n+3) - 3) = (5^k-1)/4 b(5n+12) - (5^k-5)/4 b(n)`.
pub fn b5_recurrence(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::equality(
        vec![b5(p as u64, 3 * p - 3)],
        vec![b5(5, 12).times((p - 1) / 4), b5(1, 0).times(-(p - 5) / 4)],
    )
}

/// `4 a(5^k n) ≡ 5 a(n) - a(5n) (mod 5^k)`.
pub fn a5_mod_5k(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::congruence(vec![a5(p as u64, 0).times(4)], vec![a5(1, 0).times(5), a5(5, 0).times(-1)], p)
}

/// `4 b(5^k (n+3) - 3) ≡ 5 b(n) - b(5n+12) (mod 5^k)`.
pub fn b5_mod_5k(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::congruence(
        vec![b5(p as u64, 3 * p - 3).times(4)],
        vec![b5(1, 0).times(5), b5(5, 12).times(-1)],
        p,
    )
}

/// `b(5^k (20n+18) - 3) ≡ 0 (mod (5^k-1)/4)`.
pub fn b5_18_mod(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::congruence(vec![b5(20 * p as u64, 18 * p - 3)], vec![], (p - 1) / 4)
}

/// `b(5^k (20n+22) - 3) ≡ 0 (mod (5^k-1)/4)`.
pub fn b5_22_mod(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::congruence(vec![b5(20 * p as u64, 22 * p - 3)], vec![], (p - 1) / 4)
}

/// `b(5^k (20n+18) - 3) = (5^k-1)/4 b(100n+87)`.
pub fn b5_18_exact(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::equality(vec![b5(20 * p as u64, 18 * p - 3)], vec![b5(100, 87).times((p - 1) / 4)])
}

/// `b(5^k (20n+22) - 3) = (5^k-1)/4 b(100n+107)`.
pub fn b5_22_exact(k: u32) -> LinearRelation {
    let p = five_pow(k);
    LinearRelation::equality(vec![b5(20 * p as u64, 22 * p - 3)], vec![b5(100, 107).times((p - 1) / 4)])
}

/// `R(q^5)`-bracket of the 5-dissection of `1/f_1` (without the prefactor).
fn inv_f1_bracket() -> Expr {
    let r = || rr(5);
    r().pow(-4)
        + r().pow(-3).shift(1)
        + 2 * r().pow(-2).shift(2)
        + 3 * r().pow(-1).shift(3)
        + mono(5, 4)
        - 3 * r().shift(5)
        + 2 * r().pow(2).shift(6)
        - r().pow(3).shift(7)
        + r().pow(4).shift(8)
}

/// `f_5^5 / f_1`, the `c_5` generating function as an eta quotient.
fn c5_quot() -> Expr {
    f(5).pow(5) / f(1)
}

/// `f_10^5 / f_2`.
fn c5_quot_q2() -> Expr {
    f(10).pow(5) / f(2)
}

fn core_records() -> Vec<IdentityRecord> {
    use Tier::Core as T;
    vec![
        series(
            "lemma.phimodeq",
            T,
            "phi^5(q^5)/phi(q) + 4q f^5(q^5)/f(q) = phi(q) phi^3(q^5)",
            vec![
                phi(P, 5).pow(5) / phi(P, 1) + 4 * (f_at(P, 5).pow(5) / f_at(P, 1)).shift(1),
                phi(P, 1) * phi(P, 5).pow(3),
            ],
        ),
        series(
            "lemma.phimodeqfora5",
            T,
            "phi^2(q) - phi^2(q^5) = 4q chi(q) f_5 f_20",
            vec![phi(P, 1).pow(2) - phi(P, 5).pow(2), 4 * (chi(P, 1) * f(5) * f(20)).shift(1)],
        ),
        series(
            "lemma.psimodeq",
            T,
            "psi^5(-q^5)/psi(-q) - psi^5(q^5)/psi(q) = 4q^3 psi^5(q^10)/psi(q^2) + 2q f_20^5/f_4",
            vec![
                psi(M, 5).pow(5) / psi(M, 1) - psi(P, 5).pow(5) / psi(P, 1),
                4 * (psi(P, 10).pow(5) / psi(P, 2)).shift(3) + 2 * (f(20).pow(5) / f(4)).shift(1),
            ],
        ),
        series(
            "lemma.psimodeqforb5",
            T,
            "psi^2(q) - q psi^2(q^5) = f(-q^5) phi(-q^5)/chi(-q) = f(q,q^4) f(q^2,q^3)",
            vec![
                psi(P, 1).pow(2) - psi(P, 5).pow(2).shift(1),
                f(5) * phi(M, 5) / chi(M, 1),
                theta(P, 1, P, 4) * theta(P, 2, P, 3),
            ],
        ),
        series(
            "lemma.f5modeg",
            T,
            "f_5^5/f_1 - 4q^3 f_20^5/f_4 = f^5(q^5)/f(q) + 2q f_10^5/f_2",
            vec![
                c5_quot() - 4 * (f(20).pow(5) / f(4)).shift(3),
                f_at(P, 5).pow(5) / f_at(P, 1) + 2 * c5_quot_q2().shift(1),
            ],
        ),
        series(
            "lemma.A4B",
            T,
            "f_2^2/f_1^4 = f_10^2/f_5^4 + 4q f_2 f_10^5/(f_1^3 f_5^5)",
            vec![
                f(2).pow(2) / f(1).pow(4),
                f(10).pow(2) / f(5).pow(4)
                    + 4 * (f(2) * f(10).pow(5) / (f(1).pow(3) * f(5).pow(5))).shift(1),
            ],
        ),
        relation("lemma.c4n1", T, vec![c5(4, 1)], vec![c5(2, 0)]),
        relation("lemma.c5n4", T, vec![c5(5, 4)], vec![c5(1, 0).times(5)]),
        series(
            "dissection.f1",
            T,
            "f_1 = f_25 (1/R(q^5) - q - q^2 R(q^5))",
            vec![f(1), f(25) * (rr(5).pow(-1) - mono(1, 1) - rr(5).shift(2))],
        ),
        series(
            "dissection.inv_f1",
            T,
            "1/f_1 = f_25^5/f_5^6 (R^-4 + q R^-3 + 2q^2 R^-2 + 3q^3 R^-1 + 5q^4 - 3q^5 R + 2q^6 R^2 - q^7 R^3 + q^8 R^4), R = R(q^5)",
            vec![f(1).pow(-1), f(25).pow(5) / f(5).pow(6) * inv_f1_bracket()],
        ),
        series(
            "dissection.phi",
            T,
            "phi(q) = phi(q^25) + 2q f(q^15,q^35) + 2q^4 f(q^5,q^45)",
            vec![
                phi(P, 1),
                phi(P, 25) + 2 * theta(P, 15, P, 35).shift(1) + 2 * theta(P, 5, P, 45).shift(4),
            ],
        ),
        series(
            "dissection.psi",
            T,
            "psi(q) = f(q^10,q^15) + q f(q^5,q^20) + q^3 psi(q^25)",
            vec![psi(P, 1), theta(P, 10, P, 15) + theta(P, 5, P, 20).shift(1) + psi(P, 25).shift(3)],
        ),
        IdentityRecord {
            id: "oracle.c5".into(),
            tier: T,
            statement: "c5(n) from f_5^5/f_1 equals the number of 5-cores of n, n <= 40".into(),
            claim: Claim::Oracle { t: 5, max_n: 40 },
        },
        relation("thm1.a5n2", T, vec![a5(5, 2)], vec![c5(5, 1).times(4)]),
        relation("thm1.a5n3", T, vec![a5(5, 3)], vec![c5(5, 2).times(4)]),
        relation("thm1.a10n1", T, vec![a5(10, 1)], vec![c5(10, 0).times(2)]),
        relation("thm1.a10n9", T, vec![a5(10, 9)], vec![c5(10, 8).times(2)]),
        relation("thm1.a5_main_theorem_1", T, vec![a5(20, 6)], vec![c5(10, 2).times(10)]),
        relation("thm1.a5_main_theorem_2", T, vec![a5(20, 14)], vec![c5(10, 6).times(10)]),
        family("thm1.recurrence", T, "a5bar(5^k n) = (5^k-1)/4 a5bar(5n) - (5^k-5)/4 a5bar(n)", a5_recurrence),
        congruence("cor1.mod10a", T, vec![a5(20, 6)], 10),
        congruence("cor1.mod10b", T, vec![a5(20, 14)], 10),
        congruence("cor1.mod5", T, vec![a5(20, 6)], 5),
        family("cor1.mod5k", T, "4 a5bar(5^k n) ≡ 5 a5bar(n) - a5bar(5n) (mod 5^k)", a5_mod_5k),
        relation("thm2.b4n3", T, vec![b5(4, 3)], vec![b5(2, 0).times(2)]),
        family(
            "thm2.recurrence",
            T,
            "b5bar(5^k(n+3)-3) = (5^k-1)/4 b5bar(5n+12) - (5^k-5)/4 b5bar(n)",
            b5_recurrence,
        ),
        relation("thm3.b5_4n_1", T, vec![b5(4, 1)], vec![c5(1, 0), b5(2, -1).times(-2)]),
        relation("thm3.b5_10n", T, vec![b5(10, 0)], vec![c5(10, 2).over(2)]),
        relation("thm3.b5_10n_1", T, vec![b5(10, 1)], vec![c5(5, 1)]),
        relation("thm3.b5_10n_2", T, vec![b5(10, 2)], vec![a5(2, 1).over(4), c5(2, 0).over(2)]),
        relation("thm3.b5_10n_3", T, vec![b5(10, 3)], vec![c5(5, 2)]),
        relation("thm3.b5_10n_4", T, vec![b5(10, 4)], vec![c5(10, 6).over(2)]),
        relation("thm3.b5_10n_6", T, vec![b5(10, 6)], vec![]),
        relation("thm3.b5_10n_8", T, vec![b5(10, 8)], vec![]),
        relation("thm3.b5_20n_5", T, vec![b5(20, 5)], vec![c5(5, 1).times(-1)]),
        relation("thm3.b5_20n_7", T, vec![b5(20, 7)], vec![a5(2, 1).over(2), c5(2, 0)]),
        relation("thm3.b5_20n_9", T, vec![b5(20, 9)], vec![c5(5, 2).times(-1)]),
        relation("thm3.b5_20n_15", T, vec![b5(20, 15)], vec![]),
        relation("thm3.b5_20n_19", T, vec![b5(20, 19)], vec![]),
        IdentityRecord {
            id: "cor.census".into(),
            tier: T,
            statement: "over n >= 1, b5bar(n) is 0 for >= 30%, > 0 for >= 52%, < 0 for >= 10%".into(),
            claim: Claim::Census {
                seq: B,
                bounds: CensusBounds {
                    zero: Ratio::new(30, 100),
                    positive: Ratio::new(52, 100),
                    negative: Ratio::new(10, 100),
                },
            },
        },
        relation("cor.gireesh", T, vec![a5(20, 6)], vec![b5(10, 0).times(20)]),
        relation("cor.gireesh_twin", T, vec![a5(20, 14)], vec![b5(10, 4).times(20)]),
        relation("consistency.triangle", T, vec![c5(10, 2).times(10)], vec![b5(10, 0).times(20)]),
        family("cor.b5.mod5k", T, "4 b5bar(5^k(n+3)-3) ≡ 5 b5bar(n) - b5bar(5n+12) (mod 5^k)", b5_mod_5k),
        family("cor.b5.mod_18", T, "b5bar(5^k(20n+18)-3) ≡ 0 (mod (5^k-1)/4)", b5_18_mod),
        family("cor.b5.mod_22", T, "b5bar(5^k(20n+22)-3) ≡ 0 (mod (5^k-1)/4)", b5_22_mod),
        family("cor.b5.exact_18", T, "b5bar(5^k(20n+18)-3) = (5^k-1)/4 b5bar(100n+87)", b5_18_exact),
        family("cor.b5.exact_22", T, "b5bar(5^k(20n+22)-3) = (5^k-1)/4 b5bar(100n+107)", b5_22_exact),
    ]
}

fn extended_records() -> Vec<IdentityRecord> {
    use Tier::Extended as T;
    let phi_m_dissected = || {
        phi(M, 25) - 2 * theta(M, 15, M, 35).shift(1) + 2 * theta(M, 5, M, 45).shift(4)
    };
    let psi_m_dissected =
        || theta(P, 10, M, 15) - theta(M, 5, P, 20).shift(1) - psi(M, 25).shift(3);
    let a_gf = || gf(A);
    let b_gf = || gf(B);
    vec![
        series(
            "ext.a5_start",
            T,
            "phi^5(-q^5)/phi(-q) = 4q f_5^5/f_1 + phi(-q) phi^3(-q^5)",
            vec![
                phi(M, 5).pow(5) / phi(M, 1),
                4 * c5_quot().shift(1) + phi(M, 1) * phi(M, 5).pow(3),
            ],
        ),
        series(
            "ext.a5_start_dissected",
            T,
            "sum a5bar(n) q^n = 4 sum c5(n) q^(n+1) + phi^3(-q^5)(phi(-q^25) - 2q f(-q^15,-q^35) + 2q^4 f(-q^5,-q^45))",
            vec![a_gf(), 4 * gf(C).shift(1) + phi(M, 5).pow(3) * phi_m_dissected()],
        ),
        series(
            "ext.abc_theta",
            T,
            "phi^5(-q^5)/phi(-q) - 4q^3 psi^5(-q^5)/psi(-q) = phi^5(-q^10)/phi(-q^2) + 2q f_5^5/f_1",
            vec![
                phi(M, 5).pow(5) / phi(M, 1) - 4 * (psi(M, 5).pow(5) / psi(M, 1)).shift(3),
                phi(M, 10).pow(5) / phi(M, 2) + 2 * c5_quot().shift(1),
            ],
        ),
        series(
            "ext.abc_i",
            T,
            "sum a5bar(n) q^n - 4 sum b5bar(n) q^(n+3) = sum a5bar(n) q^(2n) + 2 sum c5(n) q^(n+1)",
            vec![a_gf() - 4 * b_gf().shift(3), a_gf().inflate(2) + 2 * gf(C).shift(1)],
        ),
        relation("ext.a2n1", T, vec![a5(2, 1), b5(2, -2).times(-4)], vec![c5(2, 0).times(2)]),
        relation("ext.a2n", T, vec![a5(2, 0), b5(2, -3).times(-4)], vec![a5(1, 0), c5(2, -1).times(2)]),
        relation("ext.a4n2", T, vec![a5(4, 2), b5(4, -1).times(-4)], vec![a5(2, 1), c5(4, 1).times(2)]),
        relation("ext.a4n", T, vec![a5(4, 0), b5(4, -3).times(-4)], vec![a5(2, 0), c5(4, -1).times(2)]),
        relation("ext.a4n1", T, vec![a5(4, 1), b5(4, -2).times(-4)], vec![c5(4, 0).times(2)]),
        relation("ext.a4n3", T, vec![a5(4, 3), b5(4, 0).times(-4)], vec![c5(4, 2).times(2)]),
        relation("ext.a10n1_pre", T, vec![a5(10, 1)], vec![b5(10, -2).times(4), c5(10, 0).times(2)]),
        relation("ext.a10n9_pre", T, vec![a5(10, 9)], vec![b5(10, 6).times(4), c5(10, 8).times(2)]),
        series(
            "ext.b4n_i",
            T,
            "sum b5bar(n) q^n - sum b5bar(n)(-q)^n = 4 sum (-1)^n b5bar(n) q^(2n+3) + 2 sum c5(n) q^(4n+1)",
            vec![
                b_gf() - b_gf().alternate(),
                4 * b_gf().alternate().inflate(2).shift(3) + 2 * gf(C).inflate(4).shift(1),
            ],
        ),
        relation("ext.a2n1_b", T, vec![a5(2, 1)], vec![c5(2, 0).times(2), b5(4, -1).times(2)]),
        relation("ext.a4n2_v2", T, vec![a5(4, 2)], vec![a5(2, 1).times(3), c5(2, 0).times(-2)]),
        relation("ext.a4n2_v2i", T, vec![a5(20, 6)], vec![a5(10, 3).times(3), c5(10, 2).times(-2)]),
        relation("ext.name4", T, vec![a5(10, 3)], vec![c5(10, 2).times(4)]),
        relation("ext.a5_20n14", T, vec![a5(20, 14)], vec![a5(10, 7).times(3), c5(10, 6).times(-2)]),
        relation("ext.name3", T, vec![a5(10, 7)], vec![c5(10, 6).times(4)]),
        series(
            "ext.a5_rec_main_1",
            T,
            "sum a5bar(n) q^n = 4q f_5^5/f_1 + phi(-q) phi^3(-q^5)",
            vec![a_gf(), 4 * c5_quot().shift(1) + phi(M, 1) * phi(M, 5).pow(3)],
        ),
        series(
            "ext.a5_rec_main_1_dissected",
            T,
            "sum a5bar(n) q^n = 4q f_25^5/f_5 (R-bracket) + phi^3(-q^5)(phi(-q^25) - 2q f(-q^15,-q^35) + 2q^4 f(-q^5,-q^45))",
            vec![
                a_gf(),
                4 * (f(25).pow(5) / f(5) * inv_f1_bracket()).shift(1) + phi(M, 5).pow(3) * phi_m_dissected(),
            ],
        ),
        series(
            "ext.a5_rec_main_2",
            T,
            "sum a5bar(5n) q^n = 20q f_5^5/f_1 + phi^3(-q) phi(-q^5)",
            vec![a_gf().extract(5, 0), 20 * c5_quot().shift(1) + phi(M, 1).pow(3) * phi(M, 5)],
        ),
        series(
            "ext.a5_eliminate_1",
            T,
            "sum a5bar(5n) q^n - sum a5bar(n) q^n = 16q f_5^5/f_1 + phi(-q) phi(-q^5)(phi^2(-q) - phi^2(-q^5))",
            vec![
                a_gf().extract(5, 0) - a_gf(),
                16 * c5_quot().shift(1)
                    + phi(M, 1) * phi(M, 5) * (phi(M, 1).pow(2) - phi(M, 5).pow(2)),
            ],
        ),
        series(
            "ext.a5_25n_step",
            T,
            "sum a5bar(25n) q^n - sum a5bar(5n) q^n = 80q f_5^5/f_1 + phi(-q)(phi^3(-q^5) - 24q phi(-q^5) f(-q^3,-q^7) f(-q,-q^9)) - phi^3(-q) phi(-q^5)",
            vec![
                a_gf().extract(25, 0) - a_gf().extract(5, 0),
                80 * c5_quot().shift(1)
                    + phi(M, 1)
                        * (phi(M, 5).pow(3)
                            - 24 * (phi(M, 5) * theta(M, 3, M, 7) * theta(M, 1, M, 9)).shift(1))
                    - phi(M, 1).pow(3) * phi(M, 5),
            ],
        ),
        series(
            "ext.phimodeqfora5_neg",
            T,
            "phi^2(-q) - phi^2(-q^5) = -4q chi(-q) f(q^5) f_20",
            vec![phi(M, 1).pow(2) - phi(M, 5).pow(2), -4 * (chi(M, 1) * f_at(P, 5) * f(20)).shift(1)],
        ),
        series(
            "ext.a5_25n_five",
            T,
            "sum a5bar(25n) q^n - sum a5bar(5n) q^n = 80q f_5^5/f_1 + 5 phi(-q) phi(-q^5)(phi^2(-q) - phi^2(-q^5))",
            vec![
                a_gf().extract(25, 0) - a_gf().extract(5, 0),
                80 * c5_quot().shift(1)
                    + 5 * (phi(M, 1) * phi(M, 5) * (phi(M, 1).pow(2) - phi(M, 5).pow(2))),
            ],
        ),
        series(
            "ext.a5_25n_series",
            T,
            "sum a5bar(25n) q^n - sum a5bar(5n) q^n = 5 sum a5bar(5n) q^n - 5 sum a5bar(n) q^n",
            vec![
                a_gf().extract(25, 0) - a_gf().extract(5, 0),
                5 * a_gf().extract(5, 0) - 5 * a_gf(),
            ],
        ),
        relation("ext.a5_25n", T, vec![a5(25, 0)], vec![a5(5, 0).times(6), a5(1, 0).times(-5)]),
        series(
            "ext.b5_start",
            T,
            "q psi^5(-q^5)/psi(-q) = f_10^5/f_2 - psi(-q) psi^3(-q^5)",
            vec![
                (psi(M, 5).pow(5) / psi(M, 1)).shift(1),
                c5_quot_q2() - psi(M, 1) * psi(M, 5).pow(3),
            ],
        ),
        series(
            "ext.psimodeqforb5_neg",
            T,
            "q psi^2(-q^5) = f(q^5) phi(q^5)/chi(q) - psi^2(-q)",
            vec![psi(M, 5).pow(2).shift(1), f_at(P, 5) * phi(P, 5) / chi(P, 1) - psi(M, 1).pow(2)],
        ),
        series(
            "ext.b5_rec_proof_new1",
            T,
            "sum b5bar(n) q^(n+1) = f_10^5/f_2 - psi(-q) psi^3(-q^5)",
            vec![b_gf().shift(1), c5_quot_q2() - psi(M, 1) * psi(M, 5).pow(3)],
        ),
        series(
            "ext.b5_rec_main_2",
            T,
            "sum b5bar(5n+2) q^n = 5q f_10^5/f_2 + psi^3(-q) psi(-q^5)",
            vec![b_gf().extract(5, 2), 5 * c5_quot_q2().shift(1) + psi(M, 1).pow(3) * psi(M, 5)],
        ),
        series(
            "ext.b5_eliminate_1",
            T,
            "sum b5bar(5n+2) q^n - sum b5bar(n) q^(n+2) = 4q f_10^5/f_2 + psi(-q) psi(-q^5)(psi^2(-q) + q psi^2(-q^5))",
            vec![
                b_gf().extract(5, 2) - b_gf().shift(2),
                4 * c5_quot_q2().shift(1)
                    + psi(M, 1) * psi(M, 5) * (psi(M, 1).pow(2) + psi(M, 5).pow(2).shift(1)),
            ],
        ),
        series(
            "ext.b5_before_last_step",
            T,
            "sum b5bar(25n+22) q^n - sum b5bar(5n+2) q^n = 20q f_10^5/f_2 + psi(-q)(6 psi(-q^5) f(q^2,-q^3) f(-q,q^4) - q psi^3(-q^5)) - psi^3(-q) psi(-q^5)",
            vec![
                b_gf().extract(25, 22) - b_gf().extract(5, 2),
                20 * c5_quot_q2().shift(1)
                    + psi(M, 1)
                        * (6 * (psi(M, 5) * theta(P, 2, M, 3) * theta(M, 1, P, 4))
                            - psi(M, 5).pow(3).shift(1))
                    - psi(M, 1).pow(3) * psi(M, 5),
            ],
        ),
        series(
            "ext.b5_eliminate_2",
            T,
            "sum b5bar(25n+22) q^n - sum b5bar(5n+2) q^n = 20q f_10^5/f_2 + 5 psi(-q) psi(-q^5)(psi^2(-q) + q psi^2(-q^5))",
            vec![
                b_gf().extract(25, 22) - b_gf().extract(5, 2),
                20 * c5_quot_q2().shift(1)
                    + 5 * (psi(M, 1) * psi(M, 5) * (psi(M, 1).pow(2) + psi(M, 5).pow(2).shift(1))),
            ],
        ),
        series(
            "ext.b5_25n_series",
            T,
            "sum b5bar(25n+22) q^n - sum b5bar(5n+2) q^n = 5 sum b5bar(5n+2) q^n - 5 sum b5bar(n) q^(n+2)",
            vec![
                b_gf().extract(25, 22) - b_gf().extract(5, 2),
                5 * b_gf().extract(5, 2) - 5 * b_gf().shift(2),
            ],
        ),
        relation("ext.b5_25n_72", T, vec![b5(25, 72)], vec![b5(5, 12).times(6), b5(1, 0).times(-5)]),
        series(
            "ext.b5_rec_main_1",
            T,
            "sum b5bar(n) q^(n+1) = sum c5(n) q^(2n) - psi^3(-q^5)(f(q^10,-q^15) - q f(-q^5,q^20) - q^3 psi(-q^25))",
            vec![b_gf().shift(1), gf(C).inflate(2) - psi(M, 5).pow(3) * psi_m_dissected()],
        ),
        relation("ext.b5_2n", T, vec![b5(2, 0).times(4)], vec![a5(2, 3), c5(2, 2).times(-2)]),
        series(
            "ext.phi3phi",
            T,
            "phi^3(-q) phi(-q^5) = f_1^6 f_5^2/(f_2^3 f_10) = f_1^2 f_5^6/(f_2 f_10^3) - 4q f_1^3 f_5 f_10^2/f_2^2 = phi(-q) phi^3(-q^5) - 4q f_5^5/f_1 + 16q^2 f_10^5/f_2",
            vec![
                phi(M, 1).pow(3) * phi(M, 5),
                f(1).pow(6) * f(5).pow(2) / (f(2).pow(3) * f(10)),
                f(1).pow(2) * f(5).pow(6) / (f(2) * f(10).pow(3))
                    - 4 * (f(1).pow(3) * f(5) * f(10).pow(2) / f(2).pow(2)).shift(1),
                phi(M, 1) * phi(M, 5).pow(3) - 4 * c5_quot().shift(1) + 16 * c5_quot_q2().shift(2),
            ],
        ),
        series(
            "ext.a5_5n_recast",
            T,
            "sum a5bar(5n) q^n = sum a5bar(n) q^n + 12q f_5^5/f_1 + 16q^2 f_10^5/f_2",
            vec![
                a_gf().extract(5, 0),
                a_gf() + 12 * c5_quot().shift(1) + 16 * c5_quot_q2().shift(2),
            ],
        ),
        relation("ext.a5_10n_5", T, vec![a5(10, 5)], vec![a5(2, 1), c5(2, 0).times(12)]),
        relation(
            "ext.b5_20n_7_pre",
            T,
            vec![b5(20, 7).times(4)],
            vec![a5(20, 10), a5(10, 5).times(-1), c5(20, 9).times(-2)],
        ),
        relation(
            "ext.b5_20n_7_mid",
            T,
            vec![b5(20, 7).times(4)],
            vec![a5(10, 5).times(2), c5(2, 0).times(-20)],
        ),
        relation("ext.b5_20n_7_half", T, vec![b5(20, 7).times(2)], vec![a5(2, 1), c5(2, 0).times(2)]),
        relation("ext.b5_20n_5_pre", T, vec![b5(20, 5)], vec![c5(5, 1), b5(10, 1).times(-2)]),
        relation("ext.b5_20n_15_pre", T, vec![b5(20, 15)], vec![b5(10, 6).times(2)]),
        relation("ext.b5_10n_2_pre", T, vec![b5(10, 2).times(2)], vec![b5(20, 7)]),
    ]
}
