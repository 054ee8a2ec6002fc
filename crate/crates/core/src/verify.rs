//! Exhaustive checks over whole orbit posets.
//!
//! [`check_semicontinuity`] walks every chain `O1 <= O2 <= O3` of the
//! closure order and compares `P(O1,O3)` with `P(O2,O3)` coefficientwise.
//! [`check_structure`] covers the facts the inequality rests on: constant
//! terms, degree bounds, supports, reachability and the absence of excluded
//! root types. [`compare_engines`] pits the Hecke-module engine against the
//! classical recursion on the diagonal model.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::ClosurePoset;
use crate::error::{Error, Result};
use crate::hecke_klv::KlvTable;
use crate::kl_classical::KlTable;
use crate::orbit_model::{ModelSpec, OrbitSet};
use crate::poly::Poly;
use crate::weyl::Permutation;

/// Largest rank [`compare_engines`] accepts unless told otherwise.
pub const DEFAULT_ORACLE_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Semicontinuity,
    ConstantTerm,
    Degree,
    Support,
    Reachability,
    RootType,
    CoverGrading,
    ChainCount,
    OracleMismatch,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// One failed comparison, with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub orbits: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub observed: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub orbits: usize,
    pub comparable_pairs: usize,
    pub chains_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub model: String,
    pub counts: Counts,
    pub checks: Vec<String>,
    pub violations: Vec<Violation>,
    /// Wall time; left out of serialized output unless requested so that
    /// reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    fn new(model: impl ToString) -> Self {
        Report {
            model: model.to_string(),
            counts: Counts::default(),
            checks: Vec::new(),
            violations: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Folds `other` into `self`: counts take the maximum, checks and
    /// violations are appended.
    pub fn merge(&mut self, other: Report) {
        self.counts.orbits = self.counts.orbits.max(other.counts.orbits);
        self.counts.comparable_pairs =
            self.counts.comparable_pairs.max(other.counts.comparable_pairs);
        self.counts.chains_checked = self.counts.chains_checked.max(other.counts.chains_checked);
        self.checks.extend(other.checks);
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "model {}: {} orbits, {} comparable pairs, {} chains checked\n",
            self.model, self.counts.orbits, self.counts.comparable_pairs, self.counts.chains_checked
        );
        out.push_str(&format!("checks: {}\n", self.checks.join(", ")));
        if self.passed() {
            out.push_str("result: PASS (0 violations)\n");
        } else {
            out.push_str(&format!("result: FAIL ({} violations)\n", self.violations.len()));
            for v in self.violations.iter().take(20) {
                out.push_str(&format!(
                    "  {} [{}]{} {}\n",
                    v.kind,
                    v.orbits.join(", "),
                    v.index.map(|i| format!(" i={i}")).unwrap_or_default(),
                    v.detail
                ));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}

fn coeff_string(c: &BigInt) -> String {
    c.to_string()
}

/// Checks `coeff(P(O1,O3), i) >= coeff(P(O2,O3), i)` for every chain
/// `O1 <= O2 <= O3` and every `i`.
pub fn check_semicontinuity(set: &OrbitSet, table: &KlvTable, poset: &ClosurePoset) -> Result<Report> {
    ensure_same_model(set, table, poset)?;
    let mut report = Report::new(set.spec());
    report.counts.orbits = set.len();
    report.counts.comparable_pairs = poset.comparable_pairs();
    report.checks.push("semicontinuity".into());

    let per_top: Vec<(u64, Vec<Violation>)> = (0..set.len())
        .into_par_iter()
        .map(|top| {
            let mut chains = 0u64;
            let mut found = Vec::new();
            let below: Vec<usize> = poset.closure(top).collect();
            for &mid in &below {
                let high = table.poly(mid, top);
                for low_orbit in poset.closure(mid) {
                    chains += 1;
                    let low = table.poly(low_orbit, top);
                    if let Some(v) = first_drop(&low, &high) {
                        found.push(Violation {
                            kind: ViolationKind::Semicontinuity,
                            orbits: vec![
                                set.payload(low_orbit).to_string(),
                                set.payload(mid).to_string(),
                                set.payload(top).to_string(),
                            ],
                            index: Some(v),
                            observed: vec![coeff_string(&low.coeff(v)), coeff_string(&high.coeff(v))],
                            detail: format!("P(O1,O3) = {low}, P(O2,O3) = {high}"),
                        });
                    }
                }
            }
            (chains, found)
        })
        .collect();

    for (chains, found) in per_top {
        report.counts.chains_checked += chains;
        report.violations.extend(found);
    }

    let expected = poset.chain_count();
    if expected != report.counts.chains_checked {
        report.violations.push(Violation {
            kind: ViolationKind::ChainCount,
            orbits: Vec::new(),
            index: None,
            observed: vec![report.counts.chains_checked.to_string(), expected.to_string()],
            detail: "enumerated chains differ from the count derived from the order relation".into(),
        });
    }
    Ok(report)
}

/// First index where `low` has a smaller coefficient than `high`, comparing
/// both as zero-padded sequences.
fn first_drop(low: &Poly, high: &Poly) -> Option<usize> {
    let len = low.coeffs().len().max(high.coeffs().len());
    (0..len).find(|&i| low.coeff(i) < high.coeff(i))
}

fn ensure_same_model(set: &OrbitSet, table: &KlvTable, poset: &ClosurePoset) -> Result<()> {
    if table.spec() != set.spec() || poset.spec() != set.spec() || table.len() != set.len() {
        return Err(Error::InvalidParameters(format!(
            "model mismatch: orbits {}, table {}, poset {}",
            set.spec(),
            table.spec(),
            poset.spec()
        )));
    }
    Ok(())
}

/// Constant terms, degree bounds, support equal to the closure, reachability
/// from closed orbits, graded covers and excluded root types.
pub fn check_structure(set: &OrbitSet, table: &KlvTable, poset: &ClosurePoset) -> Result<Report> {
    ensure_same_model(set, table, poset)?;
    let mut report = Report::new(set.spec());
    report.counts.orbits = set.len();
    report.counts.comparable_pairs = poset.comparable_pairs();
    report.checks.extend(
        [
            "constant_term",
            "degree",
            "support",
            "reachability",
            "root_type",
            "cover_grading",
        ]
        .map(String::from),
    );
    let name = |i: usize| set.payload(i).to_string();

    for upper in 0..set.len() {
        for lower in 0..set.len() {
            let p = table.poly(lower, upper);
            let comparable = poset.leq(lower, upper);
            if comparable != !p.is_zero() {
                report.violations.push(Violation {
                    kind: ViolationKind::Support,
                    orbits: vec![name(lower), name(upper)],
                    index: None,
                    observed: vec![p.to_string()],
                    detail: format!("comparable = {comparable}, P = {p}"),
                });
            }
            if !comparable {
                continue;
            }
            if !p.coeff(0).is_one() {
                report.violations.push(Violation {
                    kind: ViolationKind::ConstantTerm,
                    orbits: vec![name(lower), name(upper)],
                    index: Some(0),
                    observed: vec![coeff_string(&p.coeff(0))],
                    detail: format!("P = {p}"),
                });
            }
            if lower != upper {
                let gap = set.d(upper).saturating_sub(set.d(lower));
                let deg = p.degree().unwrap_or(0);
                if gap == 0 || 2 * deg > gap - 1 {
                    report.violations.push(Violation {
                        kind: ViolationKind::Degree,
                        orbits: vec![name(lower), name(upper)],
                        index: Some(deg),
                        observed: vec![deg.to_string(), gap.to_string()],
                        detail: format!("P = {p} exceeds (d(upper) - d(lower) - 1)/2"),
                    });
                }
            }
        }
    }

    // every orbit reached from a closed one by raising moves
    let mut reached: Vec<bool> = (0..set.len()).map(|i| set.d(i) == 0).collect();
    let mut frontier: Vec<usize> = (0..set.len()).filter(|&i| reached[i]).collect();
    while let Some(g) = frontier.pop() {
        for s in set.simple_indices() {
            if let Some(up) = set.monoid_raise(s, g) {
                if !reached[up] {
                    reached[up] = true;
                    frontier.push(up);
                }
            }
        }
    }
    for g in (0..set.len()).filter(|&g| !reached[g] || set.raising_pair(g).is_err()) {
        report.violations.push(Violation {
            kind: ViolationKind::Reachability,
            orbits: vec![name(g)],
            index: None,
            observed: vec![set.d(g).to_string()],
            detail: "not obtained from a closed orbit by raising moves".into(),
        });
    }

    for g in 0..set.len() {
        for s in set.simple_indices() {
            let ty = set.classify(s, g);
            if ty.is_excluded() {
                report.violations.push(Violation {
                    kind: ViolationKind::RootType,
                    orbits: vec![name(g)],
                    index: Some(s),
                    observed: vec![ty.to_string()],
                    detail: format!("simple root s={s} has excluded type {ty}"),
                });
            }
        }
    }

    for (x, y) in poset.ungraded_covers() {
        report.violations.push(Violation {
            kind: ViolationKind::CoverGrading,
            orbits: vec![name(x), name(y)],
            index: None,
            observed: vec![set.d(x).to_string(), set.d(y).to_string()],
            detail: "cover does not raise length by one".into(),
        });
    }
    Ok(report)
}

/// Entrywise comparison of the diagonal-model KLV table with the classical
/// KL recursion for `S_n`.
pub fn compare_engines(n: usize, cap: usize) -> Result<Report> {
    if n > cap {
        return Err(Error::SizeCap { size: n, cap });
    }
    let spec = ModelSpec::Diagonal { n };
    let set = spec.build(cap.max(n))?;
    let table = KlvTable::build(&set)?;
    let oracle = KlTable::build(n, cap.max(n))?;
    Ok(compare_with_oracle(&set, &table, &oracle))
}

/// Compares an already built diagonal-model table against `oracle`.
pub fn compare_with_oracle(set: &OrbitSet, table: &KlvTable, oracle: &KlTable) -> Report {
    let mut report = Report::new(set.spec());
    report.counts.orbits = set.len();
    report.checks.push("oracle".into());
    let perms: Vec<Permutation> = set
        .orbits()
        .iter()
        .map(|o| o.payload.parse().expect("diagonal payloads are permutations"))
        .collect();
    let mut pairs = 0;
    for w in 0..set.len() {
        for x in 0..set.len() {
            let ours = table.poly(x, w);
            let theirs = oracle.kl_poly(&perms[x], &perms[w]);
            if !theirs.is_zero() {
                pairs += 1;
            }
            if ours != theirs {
                report.violations.push(Violation {
                    kind: ViolationKind::OracleMismatch,
                    orbits: vec![set.payload(x).to_string(), set.payload(w).to_string()],
                    index: None,
                    observed: vec![ours.to_string(), theirs.to_string()],
                    detail: format!("module engine {ours}, classical recursion {theirs}"),
                });
            }
        }
    }
    report.counts.comparable_pairs = pairs;
    report
}

/// Everything `verify` runs for one model: semicontinuity, the structural
/// checks, and for the diagonal model the oracle comparison (when
/// `n <= oracle_cap`).
pub fn verify_model(spec: ModelSpec, cap: usize, oracle_cap: usize) -> Result<Report> {
    let start = Instant::now();
    let set = spec.build(cap)?;
    let poset = ClosurePoset::build(&set)?;
    let table = KlvTable::build(&set)?;
    let mut report = check_semicontinuity(&set, &table, &poset)?;
    report.merge(check_structure(&set, &table, &poset)?);
    if let ModelSpec::Diagonal { n } = spec {
        if n <= oracle_cap {
            let oracle = KlTable::build(n, n)?;
            report.merge(compare_with_oracle(&set, &table, &oracle));
        } else {
            report.checks.push(format!("oracle skipped (n > {oracle_cap})"));
        }
    }
    report.elapsed_ms = Some(start.elapsed().as_millis().to_u64().unwrap_or(u64::MAX));
    Ok(report)
}
