//! Hecke-module action on orbits with trivial local systems, and the
//! self-dual basis that yields KLV polynomials.
//!
//! The module is free on `m_g`, one vector per orbit. `T_s` acts by
//!
//! | type of `s` at `g`       | `T_s m_g`                                 |
//! |--------------------------|-------------------------------------------|
//! | complex ascent           | `m_{s x g}`                               |
//! | complex descent          | `q m_{s x g} + (q-1) m_g`                 |
//! | imaginary compact        | `q m_g`                                   |
//! | noncompact, type I       | `m_{s x g} + m_{c^s g}`                   |
//! | real, parity (fiber a,b) | `(q-1)(m_a + m_b) + (q-2) m_g`            |
//! | real, nonparity          | `-m_g`                                    |
//!
//! Basis elements are built in order of increasing length. Closed orbits
//! give `C_g = m_g`; otherwise, with `(s, g)` the canonical raising pair of
//! `g'`,
//!
//! ```text
//! C_g' = (T_s + 1) C_g - sum mu(d, g) q^((l(g)+1-l(d))/2) C_d
//! ```
//!
//! over `d < g` with `s` in the tau-invariant of `d`. Then `P(d, g')` is the
//! coefficient of `m_d` in `C_g'`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit_model::{ModelSpec, OrbitSet, SimpleAction};
use crate::poly::Poly;

/// Finite combination of standard basis vectors `m_g`, keyed by orbit
/// index. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleElement {
    terms: BTreeMap<usize, Poly>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The standard basis vector `m_g`.
    pub fn basis(g: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &Poly::one());
        e
    }

    pub fn add_term(&mut self, g: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &ModuleElement, factor: &Poly) {
        for (&g, p) in &other.terms {
            self.add_term(g, &(p * factor));
        }
    }

    pub fn coeff(&self, g: usize) -> Poly {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, g: usize) -> Option<&Poly> {
        self.terms.get(&g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(orbit, coefficient)` in increasing orbit index.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(&g, p)| (g, p))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }
}

impl std::ops::Add<&ModuleElement> for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Poly::one());
        out
    }
}

/// `T_s` applied to `e`.
pub fn t_action(set: &OrbitSet, s: usize, e: &ModuleElement) -> Result<ModuleElement> {
    let q = Poly::q_pow(1);
    let q_minus_1 = Poly::from_i64s(&[-1, 1]);
    let q_minus_2 = Poly::from_i64s(&[-2, 1]);
    let mut out = ModuleElement::zero();
    for (g, p) in e.terms() {
        match set.action(s, g) {
            SimpleAction::ComplexAscent { cross } => out.add_term(cross, p),
            SimpleAction::ComplexDescent { cross } => {
                out.add_term(cross, &(p * &q));
                out.add_term(g, &(p * &q_minus_1));
            }
            SimpleAction::ImaginaryCompact => out.add_term(g, &(p * &q)),
            SimpleAction::NoncompactTypeI { cross, cayley } => {
                out.add_term(cross, p);
                out.add_term(cayley, p);
            }
            SimpleAction::RealParity { fiber } => {
                let pq1 = p * &q_minus_1;
                out.add_term(fiber[0], &pq1);
                out.add_term(fiber[1], &pq1);
                out.add_term(g, &(p * &q_minus_2));
            }
            SimpleAction::RealNonparity => out.add_term(g, &-p),
            SimpleAction::TypeIIUnsupported => {
                return Err(Error::UnsupportedRootType {
                    s,
                    orbit: set.payload(g).to_string(),
                    root_type: "TypeII_Unsupported".into(),
                })
            }
        }
    }
    Ok(out)
}

/// KLV polynomials `P(lower, upper)` for one model, stored as the basis
/// elements `C_upper`.
#[derive(Clone, Debug)]
pub struct KlvTable {
    spec: ModelSpec,
    d: Vec<usize>,
    basis: Vec<ModuleElement>,
    /// Nonzero `mu(lower, upper)` per upper orbit.
    mu: Vec<Vec<(usize, BigInt)>>,
}

fn mu_of(d: &[usize], basis: &ModuleElement, lower: usize, upper: usize) -> BigInt {
    let (dl, du) = (d[lower], d[upper]);
    if du <= dl || (du - dl) % 2 == 0 {
        return BigInt::zero();
    }
    basis
        .coeff_ref(lower)
        .map_or_else(BigInt::zero, |p| p.coeff((du - dl - 1) / 2))
}

fn mu_column(d: &[usize], basis: &ModuleElement, upper: usize) -> Vec<(usize, BigInt)> {
    basis
        .terms()
        .filter_map(|(g, _)| {
            let m = mu_of(d, basis, g, upper);
            (!m.is_zero()).then_some((g, m))
        })
        .collect()
}

/// Builds `C_upper` from the raising pair `(s, lower)`, given every basis
/// element of smaller length in `basis` / `mu`.
fn basis_via<'a>(
    set: &OrbitSet,
    basis: impl Fn(usize) -> Option<&'a ModuleElement>,
    mu: &[Vec<(usize, BigInt)>],
    s: usize,
    lower: usize,
) -> Result<ModuleElement> {
    let not_ready = |g: usize| Error::Invariant(format!("basis for {} not ready", set.payload(g)));
    let c_lower = basis(lower).ok_or_else(|| not_ready(lower))?;
    let mut c = &t_action(set, s, c_lower)? + c_lower;
    let dl = set.d(lower);
    for (delta, m) in &mu[lower] {
        if !set.classify(s, *delta).in_tau() {
            continue;
        }
        let gap = dl + 1 - set.d(*delta);
        if !gap.is_multiple_of(2) {
            return Err(Error::Invariant(format!(
                "odd correction exponent for mu({}, {})",
                set.payload(*delta),
                set.payload(lower)
            )));
        }
        let c_delta = basis(*delta).ok_or_else(|| not_ready(*delta))?;
        let weight = Poly::q_pow(gap / 2).scale(&-m);
        c.add_scaled(c_delta, &weight);
    }
    Ok(c)
}

impl KlvTable {
    /// Runs the construction over the whole orbit set, one length at a time
    /// (orbits of equal length are independent and built in parallel), then
    /// checks normalization, degree bounds and constant terms.
    pub fn build(set: &OrbitSet) -> Result<Self> {
        let n = set.len();
        let d: Vec<usize> = (0..n).map(|i| set.d(i)).collect();
        let mut basis: Vec<Option<ModuleElement>> = vec![None; n];
        let mut mu: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); n];

        let mut start = 0;
        while start < n {
            let len = d[start];
            let end = (start..n).find(|&i| d[i] != len).unwrap_or(n);
            let wave: Vec<Result<ModuleElement>> = (start..end)
                .into_par_iter()
                .map(|g| match set.raising_pair(g)? {
                    None => Ok(ModuleElement::basis(g)),
                    Some((s, lower)) => basis_via(set, |g| basis[g].as_ref(), &mu, s, lower),
                })
                .collect();
            for (g, c) in (start..end).zip(wave) {
                let c = c?;
                mu[g] = mu_column(&d, &c, g);
                basis[g] = Some(c);
            }
            start = end;
        }

        let table = KlvTable {
            spec: set.spec(),
            d,
            basis: basis.into_iter().map(Option::unwrap).collect(),
            mu,
        };
        table.check_normalization(set)?;
        Ok(table)
    }

    fn check_normalization(&self, set: &OrbitSet) -> Result<()> {
        for upper in 0..self.len() {
            for (lower, p) in self.basis[upper].terms() {
                let fail = |what: &str| {
                    Err(Error::Invariant(format!(
                        "P({}, {}) = {p}: {what}",
                        set.payload(lower),
                        set.payload(upper)
                    )))
                };
                if lower == upper {
                    if !p.is_one() {
                        return fail("diagonal entry is not 1");
                    }
                    continue;
                }
                if self.d[lower] >= self.d[upper] {
                    return fail("nonzero entry not below in length");
                }
                let gap = self.d[upper] - self.d[lower];
                if 2 * p.degree().unwrap_or(0) > gap - 1 {
                    return fail("degree bound exceeded");
                }
                if !p.coeff(0).is_one() {
                    return fail("constant term is not 1");
                }
            }
        }
        Ok(())
    }

    /// Rebuilds `C_upper` through a chosen raising pair, reusing the stored
    /// basis elements of smaller length.
    pub fn basis_via(&self, set: &OrbitSet, s: usize, lower: usize) -> Result<ModuleElement> {
        basis_via(set, |g| self.basis.get(g), &self.mu, s, lower)
    }

    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The basis element `C_g`.
    pub fn c_basis(&self, g: usize) -> &ModuleElement {
        &self.basis[g]
    }

    pub fn poly(&self, lower: usize, upper: usize) -> Poly {
        self.basis[upper].coeff(lower)
    }

    pub fn poly_ref(&self, lower: usize, upper: usize) -> Option<&Poly> {
        self.basis[upper].coeff_ref(lower)
    }

    /// Top allowed coefficient of `P(lower, upper)` at odd length gap.
    pub fn mu(&self, lower: usize, upper: usize) -> BigInt {
        mu_of(&self.d, &self.basis[upper], lower, upper)
    }

    /// Nonzero mu-coefficients below `upper`.
    pub fn mu_column(&self, upper: usize) -> &[(usize, BigInt)] {
        &self.mu[upper]
    }

    /// Nonzero entries in export order: by upper `(d, payload)`, then lower
    /// `(d, payload)`. Orbit indices already follow that order.
    pub fn records(&self, set: &OrbitSet) -> Vec<TableRecord> {
        let mut out = Vec::new();
        for upper in 0..self.len() {
            for (lower, p) in self.basis[upper].terms() {
                out.push(TableRecord {
                    lower: set.payload(lower).to_string(),
                    upper: set.payload(upper).to_string(),
                    coeffs: p.clone(),
                    mu: None,
                });
            }
        }
        out
    }

    /// Same as [`records`](Self::records) with the mu-coefficient attached.
    pub fn records_with_mu(&self, set: &OrbitSet) -> Vec<TableRecord> {
        let mut out = Vec::new();
        for upper in 0..self.len() {
            for (lower, p) in self.basis[upper].terms() {
                out.push(TableRecord {
                    lower: set.payload(lower).to_string(),
                    upper: set.payload(upper).to_string(),
                    coeffs: p.clone(),
                    mu: Some(self.mu(lower, upper).try_into().unwrap_or(i64::MAX)),
                });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRecord {
    pub lower: String,
    pub upper: String,
    pub coeffs: Poly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosurePoset;
    use crate::kl_classical::KlTable;
    use crate::weyl::Permutation;

    fn set_of(spec: ModelSpec) -> OrbitSet {
        spec.build(7).unwrap()
    }

    fn elem(set: &OrbitSet, terms: &[(&str, &[i64])]) -> ModuleElement {
        let mut e = ModuleElement::zero();
        for (name, c) in terms {
            e.add_term(set.index_of(name).unwrap(), &Poly::from_i64s(c));
        }
        e
    }

    #[test]
    fn module_element_drops_zeros() {
        let mut e = ModuleElement::basis(3);
        e.add_term(3, &Poly::constant(-1));
        assert!(e.is_zero());
        e.add_term(1, &Poly::zero());
        assert!(e.is_zero());
    }

    #[test]
    fn t_action_examples() {
        let set = set_of(ModelSpec::Clans { p: 1, q: 1 });
        let m = |s: &str| ModuleElement::basis(set.index_of(s).unwrap());
        assert_eq!(
            t_action(&set, 1, &m("+-")).unwrap(),
            elem(&set, &[("-+", &[1]), ("11", &[1])])
        );
        assert_eq!(
            t_action(&set, 1, &m("11")).unwrap(),
            elem(&set, &[("+-", &[-1, 1]), ("-+", &[-1, 1]), ("11", &[-2, 1])])
        );

        let diag = set_of(ModelSpec::Diagonal { n: 3 });
        let w = diag.index_of("132").unwrap();
        let sw = diag.index_of("231").unwrap();
        assert_eq!(
            t_action(&diag, 1, &ModuleElement::basis(w)).unwrap(),
            ModuleElement::basis(sw)
        );
    }

    #[test]
    fn c_basis_examples() {
        let set = set_of(ModelSpec::Clans { p: 1, q: 1 });
        let t = KlvTable::build(&set).unwrap();
        assert_eq!(
            t.c_basis(set.index_of("11").unwrap()),
            &elem(&set, &[("+-", &[1]), ("-+", &[1]), ("11", &[1])])
        );

        let set = set_of(ModelSpec::Clans { p: 2, q: 1 });
        let t = KlvTable::build(&set).unwrap();
        let top = set.index_of("1+1").unwrap();
        let all_ones: Vec<(&str, &[i64])> = set
            .orbits()
            .iter()
            .map(|o| (o.payload.as_str(), &[1i64][..]))
            .collect();
        assert_eq!(t.c_basis(top), &elem(&set, &all_ones));

        // the hand computation through s=2 from "11+": before the correction
        // the coefficient of m_{-++} is q+1
        let mid = set.index_of("11+").unwrap();
        let raw = &t_action(&set, 2, t.c_basis(mid)).unwrap() + t.c_basis(mid);
        assert_eq!(raw.coeff(set.index_of("-++").unwrap()), Poly::from_i64s(&[1, 1]));
        assert_eq!(t.mu(set.index_of("-++").unwrap(), mid), BigInt::from(1));
        assert_eq!(t.basis_via(&set, 2, mid).unwrap(), *t.c_basis(top));

        let diag = set_of(ModelSpec::Diagonal { n: 2 });
        let t = KlvTable::build(&diag).unwrap();
        assert_eq!(t.c_basis(1), &elem(&diag, &[("12", &[1]), ("21", &[1])]));
    }

    /// Leaving imaginary compact roots out of the tau-invariant breaks the
    /// degree bound on clans (2,1).
    #[test]
    fn imaginary_compact_belongs_to_tau() {
        let set = set_of(ModelSpec::Clans { p: 2, q: 1 });
        let t = KlvTable::build(&set).unwrap();
        let lower = set.index_of("11+").unwrap();
        let mut c = &t_action(&set, 2, t.c_basis(lower)).unwrap() + t.c_basis(lower);
        for (delta, m) in t.mu_column(lower) {
            let ty = set.classify(2, *delta);
            if ty.in_tau() && ty != crate::orbit_model::RootType::ImaginaryCompact {
                let gap = set.d(lower) + 1 - set.d(*delta);
                c.add_scaled(t.c_basis(*delta), &Poly::q_pow(gap / 2).scale(&-m));
            }
        }
        let p = c.coeff(set.index_of("-++").unwrap());
        assert_eq!(p, Poly::from_i64s(&[1, 1]));
        assert!(2 * p.degree().unwrap() > set.d(set.index_of("1+1").unwrap()) - 1);
    }

    #[test]
    fn small_tables_are_all_ones() {
        for (spec, pairs) in [
            (ModelSpec::Clans { p: 1, q: 1 }, 5),
            // 3 closed orbits, two closures of size 3, the open orbit's of 6
            (ModelSpec::Clans { p: 2, q: 1 }, 15),
            (ModelSpec::Diagonal { n: 3 }, 19),
        ] {
            let set = set_of(spec);
            let t = KlvTable::build(&set).unwrap();
            let records = t.records(&set);
            assert_eq!(records.len(), pairs, "{spec}");
            assert!(records.iter().all(|r| r.coeffs.is_one()));
        }
    }

    fn check_models() -> Vec<ModelSpec> {
        let mut v = Vec::new();
        for p in 1..=4 {
            for q in 1..=(5 - p) {
                v.push(ModelSpec::Clans { p, q });
            }
        }
        for n in 1..=4 {
            v.push(ModelSpec::Diagonal { n });
        }
        v
    }

    fn apply(set: &OrbitSet, word: &[usize], e: &ModuleElement) -> ModuleElement {
        word.iter()
            .rev()
            .fold(e.clone(), |acc, &s| t_action(set, s, &acc).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let q = Poly::q_pow(1);
        let q_minus_1 = Poly::from_i64s(&[-1, 1]);
        for spec in check_models() {
            let set = set_of(spec);
            for g in 0..set.len() {
                let m = ModuleElement::basis(g);
                for s in set.simple_indices() {
                    let ts = t_action(&set, s, &m).unwrap();
                    let lhs = t_action(&set, s, &ts).unwrap();
                    let mut rhs = ModuleElement::zero();
                    rhs.add_scaled(&ts, &q_minus_1);
                    rhs.add_scaled(&m, &q);
                    assert_eq!(lhs, rhs, "{spec} s={s} {}", set.payload(g));
                }
            }
        }
    }

    #[test]
    fn braid_relations() {
        for spec in check_models() {
            let set = set_of(spec);
            for g in 0..set.len() {
                let m = ModuleElement::basis(g);
                for s in set.simple_indices() {
                    for t in set.simple_indices().filter(|&t| t > s) {
                        let (a, b) = if t == s + 1 {
                            (vec![s, t, s], vec![t, s, t])
                        } else {
                            (vec![s, t], vec![t, s])
                        };
                        assert_eq!(apply(&set, &a, &m), apply(&set, &b, &m), "{spec} {s} {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn support_is_closure_and_choice_independent() {
        for spec in check_models() {
            let set = set_of(spec);
            let poset = ClosurePoset::build(&set).unwrap();
            let t = KlvTable::build(&set).unwrap();
            for g in 0..set.len() {
                let closure: Vec<usize> = poset.closure(g).collect();
                assert_eq!(t.c_basis(g).support(), closure, "{spec} {}", set.payload(g));
                for &(s, lower) in set.raising_pairs(g) {
                    assert_eq!(&t.basis_via(&set, s, lower).unwrap(), t.c_basis(g));
                }
            }
        }
    }

    #[test]
    fn mu_vanishes_off_odd_gaps() {
        let set = set_of(ModelSpec::Clans { p: 3, q: 2 });
        let t = KlvTable::build(&set).unwrap();
        for upper in 0..set.len() {
            for &(lower, _) in t.mu_column(upper) {
                assert!(set.d(lower) < set.d(upper));
                assert_eq!((set.d(upper) - set.d(lower)) % 2, 1);
            }
            assert!(t.mu(upper, upper).is_zero());
        }
    }

    #[test]
    fn open_orbit_column_is_all_ones() {
        for spec in check_models() {
            let set = set_of(spec);
            let t = KlvTable::build(&set).unwrap();
            let top = set.len() - 1;
            assert_eq!(set.orbits().iter().filter(|o| o.d == set.d(top)).count(), 1);
            for g in 0..set.len() {
                assert!(t.poly(g, top).is_one(), "{spec} {}", set.payload(g));
            }
        }
    }

    #[test]
    fn diagonal_matches_classical_oracle() {
        for n in 1..=4 {
            let set = set_of(ModelSpec::Diagonal { n });
            let t = KlvTable::build(&set).unwrap();
            let oracle = KlTable::build(n, 6).unwrap();
            let perms: Vec<Permutation> =
                set.orbits().iter().map(|o| o.payload.parse().unwrap()).collect();
            for x in 0..set.len() {
                for w in 0..set.len() {
                    assert_eq!(t.poly(x, w), oracle.kl_poly(&perms[x], &perms[w]));
                }
            }
        }
    }
}
