//! The closure order on orbits.
//!
//! Closed orbits are their own closures. If `monoid_raise(s, g) = g'` then
//! the closure of `g'` is the preimage, under the projection to the partial
//! flag variety for `s`, of the image of the closure of `g`; orbit by orbit
//! that preimage is the union of the `s`-strings through the orbits below
//! `g`. Every raising pair of `g'` is tried and they must agree.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit_model::{ModelSpec, OrbitId, OrbitSet};

/// Containment-of-closures order over the orbits of an [`OrbitSet`],
/// sharing its indexing.
#[derive(Clone, Debug)]
pub struct ClosurePoset {
    spec: ModelSpec,
    d: Vec<usize>,
    /// `below[y]` = closure of `y` as a set of orbit indices.
    below: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

fn saturate(set: &OrbitSet, below: &[FixedBitSet], s: usize, lower: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(set.len());
    for delta in below[lower].ones() {
        for x in set.string_set(s, delta) {
            out.insert(x);
        }
    }
    out
}

fn payloads(set: &OrbitSet, bits: &FixedBitSet) -> String {
    bits.ones()
        .map(|i| set.payload(i))
        .collect::<Vec<_>>()
        .join(" ")
}

impl ClosurePoset {
    pub fn build(set: &OrbitSet) -> Result<Self> {
        let n = set.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        // the set is ordered by d, so every raising source is already done
        for g in 0..n {
            let closure = match set.raising_pair(g)? {
                None => {
                    let mut b = FixedBitSet::with_capacity(n);
                    b.insert(g);
                    b
                }
                Some((s, lower)) => {
                    let first = saturate(set, &below, s, lower);
                    for &(s2, lower2) in &set.raising_pairs(g)[1..] {
                        let other = saturate(set, &below, s2, lower2);
                        if other != first {
                            return Err(Error::InconsistentClosure {
                                orbit: set.payload(g).to_string(),
                                detail: format!(
                                    "via s={s} from {}: {{{}}}; via s={s2} from {}: {{{}}}",
                                    set.payload(lower),
                                    payloads(set, &first),
                                    set.payload(lower2),
                                    payloads(set, &other),
                                ),
                            });
                        }
                    }
                    first
                }
            };
            below.push(closure);
        }

        // transitive reduction: strict lower set minus everything strictly
        // below some member of it
        let mut covers = Vec::new();
        for y in 0..n {
            let mut strict = below[y].clone();
            strict.set(y, false);
            let mut shadow = FixedBitSet::with_capacity(n);
            for z in strict.ones() {
                let mut under = below[z].clone();
                under.set(z, false);
                shadow.union_with(&under);
            }
            strict.difference_with(&shadow);
            covers.extend(strict.ones().map(|x| (x, y)));
        }
        covers.sort_by_key(|&(x, y)| (y, x));

        Ok(ClosurePoset {
            spec: set.spec(),
            d: (0..n).map(|i| set.d(i)).collect(),
            below,
            covers,
        })
    }

    /// Closure obtained by saturating the closure of `lower` along `s`.
    /// Matches [`closure`](Self::closure) of the raised orbit for every
    /// raising pair.
    pub fn closure_via(&self, set: &OrbitSet, s: usize, lower: usize) -> Vec<usize> {
        saturate(set, &self.below, s, lower).ones().collect()
    }

    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Closure of `x` contained in closure of `y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// Indices of the orbits in the closure of `y`, ascending.
    pub fn closure(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[y].ones()
    }

    pub fn closure_size(&self, y: usize) -> usize {
        self.below[y].count_ones(..)
    }

    /// Hasse diagram edges `(lower, upper)`, sorted by upper then lower.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `{x : a <= x <= b}`, empty unless `a <= b`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        if !self.leq(a, b) {
            return Vec::new();
        }
        self.below[b].ones().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn comparable_pairs(&self) -> usize {
        self.below.iter().map(|b| b.count_ones(..)).sum()
    }

    /// Number of chains `x <= y <= z`, counted as
    /// `sum_y #{x <= y} * #{z >= y}`.
    pub fn chain_count(&self) -> u64 {
        let n = self.len();
        let mut above = vec![0u64; n];
        for b in &self.below {
            for x in b.ones() {
                above[x] += 1;
            }
        }
        (0..n)
            .map(|y| self.closure_size(y) as u64 * above[y])
            .sum()
    }

    /// Covers whose length gap differs from one.
    pub fn ungraded_covers(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .copied()
            .filter(|&(x, y)| self.d[y] != self.d[x] + 1)
            .collect()
    }

    /// Graphviz digraph of the Hasse diagram, edges pointing upwards.
    pub fn to_dot(&self, set: &OrbitSet) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{}\" {{\n", self.spec));
        out.push_str("  rankdir=BT;\n");
        for (i, o) in set.orbits().iter().enumerate() {
            out.push_str(&format!(
                "  n{i} [label=\"{} (d={})\"];\n",
                o.payload, o.d
            ));
        }
        for &(x, y) in &self.covers {
            out.push_str(&format!("  n{x} -> n{y};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, set: &OrbitSet) -> PosetExport {
        PosetExport {
            model: self.spec,
            ground: set.orbits().to_vec(),
            covers: self
                .covers
                .iter()
                .map(|&(x, y)| [set.payload(x).to_string(), set.payload(y).to_string()])
                .collect(),
        }
    }
}

/// JSON form: ground set plus cover pairs `[lower, upper]`.
#[derive(Clone, Debug, Serialize)]
pub struct PosetExport {
    pub model: ModelSpec,
    pub ground: Vec<OrbitId>,
    pub covers: Vec<[String; 2]>,
}
