//! Left-hand sums and right-hand bounds of the set-pair inequalities, and
//! instance checks that compare them exactly.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::family::{weight, Family, WeightKind};
use crate::ground::GroundSet;
use crate::rational::{binomial, from_biguint, int, pow, ratio, to_decimal, to_ratio_string, Rational};
use crate::systems::{validate_bollobas, validate_skew, Verdict};

/// The inequalities this crate can check, numbered as in the literature
/// they come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Bollobás: plain sum ≤ 1.
    T1_2,
    /// Uniform `|A|=a, |B|=b`: `m ≤ C(a+b, a)` (also for skew systems).
    C1_3 { a: usize, b: usize },
    /// Skew, plain sum ≤ `1 + n`.
    T1_4,
    /// Skew, augmented sum ≤ 1.
    T1_5,
    /// Blockwise uniform skew systems: `m ≤ ∏ C(a_k+b_k, a_k)`.
    T1_6 { a: Vec<usize>, b: Vec<usize> },
    /// Skew, partitioned sum ≤ `∏(1+n_k) ≤ (1+n/r)^r`.
    T1_7,
    /// Bollobás with two blocks: partitioned sum ≤ `1 + ⌊n/2⌋`.
    T1_8,
    /// Bollobás: partitioned sum ≤ `(1+n/r)^(r-1)`.
    T1_9,
    /// Bollobás: partitioned sum ≤ `∏(1+n_k) / (1+n_l)`, `l` 1-based.
    L3_1 { l: usize },
    /// LYM: `Σ 1/C(n, |F|) ≤ 1` over an antichain.
    T3_2,
    /// Two-block LYM variant, bound `1 + ⌊n/2⌋`.
    C3_3,
    /// `r`-block LYM variant, bound `(1+n/r)^(r-1)`.
    C3_4,
}

/// The system class a theorem presupposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemClass {
    Bollobas,
    Skew,
}

impl SystemClass {
    pub fn validate(self, f: &Family) -> Verdict {
        match self {
            Self::Bollobas => validate_bollobas(f),
            Self::Skew => validate_skew(f),
        }
    }
}

impl std::str::FromStr for SystemClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bollobas" => Ok(Self::Bollobas),
            "skew" => Ok(Self::Skew),
            other => Err(Error::Malformed(format!("unknown system class {other:?}"))),
        }
    }
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bollobas => "bollobas",
            Self::Skew => "skew",
        })
    }
}

/// What the left-hand side of a theorem measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lhs {
    Sum(WeightKind),
    /// Number of pairs.
    Cardinality,
}

impl TheoremId {
    pub const LABELS: [&'static str; 12] = [
        "T1.2", "C1.3", "T1.4", "T1.5", "T1.6", "T1.7", "T1.8", "T1.9", "L3.1", "T3.2", "C3.3", "C3.4",
    ];

    /// Parses a label such as `"T1.7"`. Parametrised ids take their
    /// parameters from the arguments: `l` for L3.1, `a`/`b` for C1.3 (first
    /// entries) and T1.6.
    pub fn parse(label: &str, l: Option<usize>, a: &[usize], b: &[usize]) -> Result<Self> {
        let need = |what: &str| Error::Precondition(format!("{label} needs {what}"));
        Ok(match label {
            "T1.2" => Self::T1_2,
            "C1.3" => match (a, b) {
                ([a], [b]) => Self::C1_3 { a: *a, b: *b },
                _ => return Err(need("a single --a and --b")),
            },
            "T1.4" => Self::T1_4,
            "T1.5" => Self::T1_5,
            "T1.6" => {
                if a.is_empty() || a.len() != b.len() {
                    return Err(need("--a and --b vectors of equal length"));
                }
                Self::T1_6 { a: a.to_vec(), b: b.to_vec() }
            }
            "T1.7" => Self::T1_7,
            "T1.8" => Self::T1_8,
            "T1.9" => Self::T1_9,
            "L3.1" => Self::L3_1 { l: l.ok_or_else(|| need("--l"))? },
            "T3.2" => Self::T3_2,
            "C3.3" => Self::C3_3,
            "C3.4" => Self::C3_4,
            other => return Err(Error::UnknownTheorem(other.to_string())),
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::T1_2 => "T1.2",
            Self::C1_3 { .. } => "C1.3",
            Self::T1_4 => "T1.4",
            Self::T1_5 => "T1.5",
            Self::T1_6 { .. } => "T1.6",
            Self::T1_7 => "T1.7",
            Self::T1_8 => "T1.8",
            Self::T1_9 => "T1.9",
            Self::L3_1 { .. } => "L3.1",
            Self::T3_2 => "T3.2",
            Self::C3_3 => "C3.3",
            Self::C3_4 => "C3.4",
        }
    }

    pub fn system_class(&self) -> SystemClass {
        match self {
            Self::C1_3 { .. } | Self::T1_4 | Self::T1_5 | Self::T1_6 { .. } | Self::T1_7 => SystemClass::Skew,
            _ => SystemClass::Bollobas,
        }
    }

    pub fn lhs(&self) -> Lhs {
        match self {
            Self::T1_2 | Self::T1_4 | Self::T3_2 => Lhs::Sum(WeightKind::Plain),
            Self::T1_5 => Lhs::Sum(WeightKind::Augmented),
            Self::C1_3 { .. } | Self::T1_6 { .. } => Lhs::Cardinality,
            _ => Lhs::Sum(WeightKind::Partitioned),
        }
    }

    /// The LYM family of statements, which speak about antichains and so
    /// only accept complement pairs `(F, [n] ∖ F)`.
    pub fn is_lym(&self) -> bool {
        matches!(self, Self::T3_2 | Self::C3_3 | Self::C3_4)
    }

    /// Per-block `(a_k, b_k)` sizes required of every pair, if any.
    pub fn uniformity(&self) -> Option<Vec<(usize, usize)>> {
        match self {
            Self::C1_3 { a, b } => Some(vec![(*a, *b)]),
            Self::T1_6 { a, b } => Some(a.iter().copied().zip(b.iter().copied()).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L3_1 { l } => write!(f, "L3.1(l={l})"),
            Self::C1_3 { a, b } => write!(f, "C1.3(a={a},b={b})"),
            Self::T1_6 { a, b } => write!(f, "T1.6(a={a:?},b={b:?})"),
            other => f.write_str(other.label()),
        }
    }
}

/// A right-hand side. Only T1.7 carries a second, weaker form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Rational,
    pub relaxed: Option<Rational>,
}

fn mismatch(id: &TheoremId, reason: impl Into<String>) -> Error {
    Error::TheoremGround { theorem: id.to_string(), reason: reason.into() }
}

/// `∏_k (1 + n_k)`.
pub fn type_count(ground: &GroundSet) -> BigUint {
    ground.block_sizes().iter().fold(BigUint::one(), |acc, &s| acc * (1 + s as u64))
}

/// `((r + n) / r)^e`.
fn mean_power(ground: &GroundSet, e: u32) -> Rational {
    let (n, r) = (ground.n() as i64, ground.r() as i64);
    pow(&ratio(r + n, r), e)
}

pub fn bound(id: &TheoremId, ground: &GroundSet) -> Result<BoundValue> {
    let single = |value| Ok(BoundValue { value, relaxed: None });
    let (n, r) = (ground.n(), ground.r());
    match id {
        TheoremId::T1_2 | TheoremId::T1_5 | TheoremId::T3_2 => single(int(1)),
        TheoremId::T1_4 => single(int(1 + n as i64)),
        TheoremId::C1_3 { a, b } => single(from_biguint(binomial((a + b) as u64, *a as i64))),
        TheoremId::T1_6 { a, b } => {
            if a.len() != b.len() || a.len() != r {
                return Err(mismatch(id, format!("needs {r} per-block sizes, got {} and {}", a.len(), b.len())));
            }
            let prod = a
                .iter()
                .zip(b)
                .fold(BigUint::one(), |acc, (&ak, &bk)| acc * binomial((ak + bk) as u64, ak as i64));
            single(from_biguint(prod))
        }
        TheoremId::T1_7 => Ok(BoundValue {
            value: from_biguint(type_count(ground)),
            relaxed: Some(mean_power(ground, r as u32)),
        }),
        TheoremId::T1_8 | TheoremId::C3_3 => {
            if r != 2 {
                return Err(mismatch(id, format!("needs exactly 2 blocks, ground has {r}")));
            }
            single(int(1 + (n / 2) as i64))
        }
        TheoremId::T1_9 | TheoremId::C3_4 => single(mean_power(ground, r as u32 - 1)),
        TheoremId::L3_1 { l } => {
            if *l == 0 || *l > r {
                return Err(mismatch(id, format!("block index must lie in 1..={r}")));
            }
            let nl = ground.block_sizes()[l - 1];
            single(from_biguint(type_count(ground)) / int(1 + nl as i64))
        }
    }
}

/// `Σ_i weight(pair_i)`; zero for the empty family.
pub fn family_sum(f: &Family, kind: WeightKind) -> Result<Rational> {
    f.pairs()
        .iter()
        .try_fold(Rational::zero(), |acc, p| Ok(acc + weight(p, kind, f.ground())?))
}

/// The left-hand side of `id` on `f`, without any precondition checks.
pub fn lhs_value(f: &Family, id: &TheoremId) -> Result<Rational> {
    match id.lhs() {
        Lhs::Sum(kind) => family_sum(f, kind),
        Lhs::Cardinality => Ok(int(f.m() as i64)),
    }
}

fn check_uniformity(f: &Family, id: &TheoremId, want: &[(usize, usize)]) -> Result<()> {
    for (i, p) in f.pairs().iter().enumerate() {
        let got = match id {
            TheoremId::C1_3 { .. } => vec![(p.a().len(), p.b().len())],
            _ => f.ground().profile(p),
        };
        if got != want {
            return Err(Error::Uniformity {
                pair: i + 1,
                reason: format!("sizes {got:?}, expected {want:?}"),
            });
        }
    }
    Ok(())
}

/// Per-block `(a_k, b_k)` shared by every pair, or `None` when the pairs
/// disagree or the family is empty.
pub fn common_profile(f: &Family) -> Option<Vec<(usize, usize)>> {
    let mut it = f.pairs().iter().map(|p| f.ground().profile(p));
    let first = it.next()?;
    it.all(|p| p == first).then_some(first)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub lhs: Rational,
    pub rhs: Rational,
    /// The weaker right-hand side, when the theorem states one.
    pub relaxed_rhs: Option<Rational>,
    /// `None` when the family is not in the theorem's system class.
    pub holds: Option<bool>,
    pub slack: Rational,
    pub system_verdict: Verdict,
}

impl CheckReport {
    pub fn to_json(&self) -> serde_json::Value {
        let num = |q: &Rational| json!({ "exact": to_ratio_string(q), "decimal": to_decimal(q) });
        let mut v = json!({
            "theorem": self.theorem.to_string(),
            "lhs": num(&self.lhs),
            "rhs": num(&self.rhs),
            "slack": num(&self.slack),
            "holds": self.holds,
            "system_valid": self.system_verdict.valid,
            "witness": self.system_verdict.witness.map(|w| w.to_string()),
        });
        if let Some(relaxed) = &self.relaxed_rhs {
            v["relaxed_rhs"] = num(relaxed);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String, String)> = vec![
            ("theorem".into(), self.theorem.to_string(), String::new()),
            ("lhs".into(), to_ratio_string(&self.lhs), to_decimal(&self.lhs)),
            ("rhs".into(), to_ratio_string(&self.rhs), to_decimal(&self.rhs)),
        ];
        if let Some(relaxed) = &self.relaxed_rhs {
            rows.push(("relaxed rhs".into(), to_ratio_string(relaxed), to_decimal(relaxed)));
        }
        rows.push(("slack".into(), to_ratio_string(&self.slack), to_decimal(&self.slack)));
        let holds = match self.holds {
            Some(true) => "holds".to_string(),
            Some(false) => "VIOLATED".to_string(),
            None => "undefined (system precondition failed)".to_string(),
        };
        rows.push(("result".into(), holds, String::new()));
        if let Some(w) = self.system_verdict.witness {
            rows.push(("witness".into(), w.to_string(), String::new()));
        }
        let width = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
        rows.into_iter()
            .map(|(k, v, d)| format!("{k:<12} {v:<width$} {d}").trim_end().to_string() + "\n")
            .collect()
    }
}

/// Evaluates `id` on `f`.
///
/// A family outside the theorem's system class still yields a report, with
/// `holds = None` and the failing verdict attached. Uniformity violations
/// (C1.3, T1.6) and non-complement pairs under LYM ids are errors.
pub fn check(f: &Family, id: &TheoremId) -> Result<CheckReport> {
    let b = bound(id, f.ground())?;
    if let Some(want) = id.uniformity() {
        check_uniformity(f, id, &want)?;
    }
    if id.is_lym() {
        if let Some(i) = f.pairs().iter().position(|p| !f.is_complement_pair(p)) {
            return Err(Error::Precondition(format!(
                "{id} applies to complement pairs (F, [n]∖F); pair {} is not one",
                i + 1
            )));
        }
    }
    let lhs = lhs_value(f, id)?;
    let system_verdict = id.system_class().validate(f);
    let holds = system_verdict.valid.then(|| lhs <= b.value);
    Ok(CheckReport {
        theorem: id.clone(),
        slack: &b.value - &lhs,
        lhs,
        rhs: b.value,
        relaxed_rhs: b.relaxed,
        holds,
        system_verdict,
    })
}
