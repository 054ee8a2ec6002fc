//! Symmetric-pair backends: orbit parameters, lengths, the cross action,
//! Cayley transforms and the root-type case split.
//!
//! Two backends implement [`OrbitModel`]:
//!
//! * [`ClanModel`]: `(p,q)`-clans, the `GL(p) x GL(q)`-orbits on the flag
//!   variety of `GL(p+q)`.
//! * [`DiagonalModel`]: the diagonal `G`-orbits on `G/B x G/B` for
//!   `G = GL(n)`, indexed by permutations. Every simple root is complex
//!   there, and the Hecke module is the regular representation.
//!
//! [`OrbitSet`] is the indexed form of a backend that the closure and
//! Hecke-module code consume. It precomputes, for every orbit and simple
//! reflection, the root type together with the orbits that the action
//! touches.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{self, Permutation};

/// Default cap on `p + q` for clans.
pub const DEFAULT_MAX_CLAN_SIZE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    ComplexAscent,
    ComplexDescent,
    ImaginaryCompact,
    NoncompactTypeI,
    RealParity,
    RealNonparity,
    #[serde(rename = "TypeII_Unsupported")]
    TypeIIUnsupported,
}

impl RootType {
    /// Types for which `T_s` acts on the basis element by `q`, i.e. `s` lies
    /// in the tau-invariant.
    pub fn in_tau(self) -> bool {
        matches!(
            self,
            RootType::ComplexDescent | RootType::RealParity | RootType::ImaginaryCompact
        )
    }

    /// Types the supported backends must never produce.
    pub fn is_excluded(self) -> bool {
        matches!(self, RootType::RealNonparity | RootType::TypeIIUnsupported)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::ComplexAscent => "ComplexAscent",
            RootType::ComplexDescent => "ComplexDescent",
            RootType::ImaginaryCompact => "ImaginaryCompact",
            RootType::NoncompactTypeI => "NoncompactTypeI",
            RootType::RealParity => "RealParity",
            RootType::RealNonparity => "RealNonparity",
            RootType::TypeIIUnsupported => "TypeII_Unsupported",
        };
        f.write_str(s)
    }
}

/// A symmetric pair realized combinatorially. Simple reflections are indexed
/// `1..rank()`.
pub trait OrbitModel {
    type Param: Clone + Ord + Hash + fmt::Display;

    fn spec(&self) -> ModelSpec;

    /// `n`, so that the simple indices are `1..n`.
    fn rank(&self) -> usize;

    /// All orbits, ordered by `(length, parameter)`.
    fn list_orbits(&self) -> Vec<Self::Param>;

    /// Dimension above the closed orbits.
    fn orbit_length(&self, gamma: &Self::Param) -> usize;

    fn classify(&self, s: usize, gamma: &Self::Param) -> RootType;

    fn cross(&self, s: usize, gamma: &Self::Param) -> Self::Param;

    fn cayley_up(&self, s: usize, gamma: &Self::Param) -> Option<Self::Param>;

    fn cayley_down_fiber(&self, s: usize, gamma: &Self::Param) -> Vec<Self::Param>;

    /// The raising part of the monoid action of `s`.
    fn monoid_raise(&self, s: usize, gamma: &Self::Param) -> Option<Self::Param> {
        match self.classify(s, gamma) {
            RootType::ComplexAscent => Some(self.cross(s, gamma)),
            RootType::NoncompactTypeI => self.cayley_up(s, gamma),
            _ => None,
        }
    }

    /// Orbits in the preimage of the image of `gamma` in the partial flag
    /// variety for `s`.
    fn string_set(&self, s: usize, gamma: &Self::Param) -> Vec<Self::Param> {
        let mut out = vec![gamma.clone()];
        match self.classify(s, gamma) {
            RootType::ComplexAscent | RootType::ComplexDescent => out.push(self.cross(s, gamma)),
            RootType::NoncompactTypeI => {
                out.push(self.cross(s, gamma));
                out.extend(self.cayley_up(s, gamma));
            }
            RootType::RealParity => out.extend(self.cayley_down_fiber(s, gamma)),
            _ => {}
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every `(s, delta)` with `monoid_raise(s, delta) == gamma`, sorted.
    fn raising_pairs(&self, gamma: &Self::Param) -> Vec<(usize, Self::Param)> {
        let mut out = Vec::new();
        for s in 1..self.rank() {
            let candidates = match self.classify(s, gamma) {
                RootType::ComplexDescent => vec![self.cross(s, gamma)],
                RootType::RealParity => self.cayley_down_fiber(s, gamma),
                _ => continue,
            };
            for delta in candidates {
                if self.monoid_raise(s, &delta).as_ref() == Some(gamma) {
                    out.push((s, delta));
                }
            }
        }
        out.sort();
        out
    }

    /// The canonical raising pair: smallest `s`, then smallest `delta`.
    /// `None` exactly for closed orbits.
    fn raising_pair(&self, gamma: &Self::Param) -> Result<Option<(usize, Self::Param)>> {
        let d = self.orbit_length(gamma);
        if d == 0 {
            return Ok(None);
        }
        self.raising_pairs(gamma)
            .into_iter()
            .next()
            .map(Some)
            .ok_or_else(|| Error::Unreachable {
                orbit: gamma.to_string(),
                d,
            })
    }
}

// ---------------------------------------------------------------------------
// Clans

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClanSymbol {
    Plus,
    Minus,
    Pair(u8),
}

/// A `(p,q)`-clan with normalized numbering: first occurrences of the pair
/// labels read `1, 2, 3, ...` from left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clan(Vec<ClanSymbol>);

impl Clan {
    /// Validates and normalizes. Every label must occur exactly twice.
    pub fn new(symbols: Vec<ClanSymbol>) -> Result<Self> {
        let mut counts: HashMap<u8, usize> = HashMap::new();
        for sym in &symbols {
            if let ClanSymbol::Pair(k) = sym {
                *counts.entry(*k).or_default() += 1;
            }
        }
        if let Some((k, c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Parse {
                kind: "clan",
                input: symbols_to_string(&symbols),
                reason: format!("label {k} occurs {c} times"),
            });
        }
        Ok(Clan(symbols).normalized())
    }

    fn normalized(mut self) -> Self {
        let mut relabel: HashMap<u8, u8> = HashMap::new();
        for sym in self.0.iter_mut() {
            if let ClanSymbol::Pair(k) = sym {
                let next = relabel.len() as u8 + 1;
                *k = *relabel.entry(*k).or_insert(next);
            }
        }
        self
    }

    pub fn symbols(&self) -> &[ClanSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions `(a, b)`, `a < b`, of each matched pair, ordered by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut first: HashMap<u8, usize> = HashMap::new();
        let mut out = Vec::new();
        for (i, sym) in self.0.iter().enumerate() {
            if let ClanSymbol::Pair(k) = sym {
                if let Some(a) = first.remove(k) {
                    out.push((a, i));
                } else {
                    first.insert(*k, i);
                }
            }
        }
        out.sort();
        out
    }

    /// `(p, q)` with `p = #(+) + pairs` and `q = #(-) + pairs`.
    pub fn signature(&self) -> (usize, usize) {
        let k = self.pairs().len();
        let plus = self.0.iter().filter(|&&s| s == ClanSymbol::Plus).count();
        let minus = self.0.iter().filter(|&&s| s == ClanSymbol::Minus).count();
        (plus + k, minus + k)
    }

    /// `sum over pairs (a<b) of (b - a) - #{pairs (a',b') : a < a' < b < b'}`.
    pub fn length(&self) -> usize {
        let pairs = self.pairs();
        pairs
            .iter()
            .map(|&(a, b)| {
                let crossing = pairs
                    .iter()
                    .filter(|&&(a2, b2)| a < a2 && a2 < b && b < b2)
                    .count();
                (b - a) - crossing
            })
            .sum()
    }

    fn at(&self, s: usize) -> (ClanSymbol, ClanSymbol) {
        (self.0[s - 1], self.0[s])
    }

    fn swapped(&self, s: usize) -> Clan {
        let mut v = self.0.clone();
        v.swap(s - 1, s);
        Clan(v).normalized()
    }

    fn replaced(&self, s: usize, a: ClanSymbol, b: ClanSymbol) -> Clan {
        let mut v = self.0.clone();
        v[s - 1] = a;
        v[s] = b;
        Clan(v).normalized()
    }
}

fn symbols_to_string(symbols: &[ClanSymbol]) -> String {
    symbols
        .iter()
        .map(|s| match s {
            ClanSymbol::Plus => "+".to_string(),
            ClanSymbol::Minus => "-".to_string(),
            ClanSymbol::Pair(k) if *k <= 9 => k.to_string(),
            ClanSymbol::Pair(k) => format!("({k})"),
        })
        .collect()
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.0))
    }
}

/// Accepts `+`, `-` (or U+2212) and single digits `1..9`.
impl FromStr for Clan {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(ClanSymbol::Plus),
                '-' | '\u{2212}' => Ok(ClanSymbol::Minus),
                '1'..='9' => Ok(ClanSymbol::Pair(c as u8 - b'0')),
                _ => Err(Error::Parse {
                    kind: "clan",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Clan::new(symbols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClanModel {
    p: usize,
    q: usize,
}

impl ClanModel {
    pub fn new(p: usize, q: usize, cap: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameters(format!(
                "clans need p, q >= 1 (got {p},{q})"
            )));
        }
        if p + q > cap {
            return Err(Error::SizeCap { size: p + q, cap });
        }
        if p.min(q) > 9 {
            return Err(Error::InvalidParameters(
                "clan labels are single digits; min(p,q) must be at most 9".into(),
            ));
        }
        Ok(ClanModel { p, q })
    }

    /// `sum_k n! / (2^k k! (p-k)! (q-k)!)`.
    pub fn expected_count(p: usize, q: usize) -> u128 {
        let fact = |m: usize| (1..=m as u128).product::<u128>();
        let n = p + q;
        (0..=p.min(q))
            .map(|k| fact(n) / ((1u128 << k) * fact(k) * fact(p - k) * fact(q - k)))
            .sum()
    }

    fn enumerate(&self) -> Vec<Clan> {
        fn rec(
            cur: &mut Vec<ClanSymbol>,
            n: usize,
            plus: usize,
            minus: usize,
            unopened: usize,
            open: &mut Vec<u8>,
            next_label: u8,
            out: &mut Vec<Clan>,
        ) {
            if cur.len() == n {
                if open.is_empty() {
                    out.push(Clan(cur.clone()));
                }
                return;
            }
            if plus > 0 {
                cur.push(ClanSymbol::Plus);
                rec(cur, n, plus - 1, minus, unopened, open, next_label, out);
                cur.pop();
            }
            if minus > 0 {
                cur.push(ClanSymbol::Minus);
                rec(cur, n, plus, minus - 1, unopened, open, next_label, out);
                cur.pop();
            }
            if unopened > 0 {
                cur.push(ClanSymbol::Pair(next_label));
                open.push(next_label);
                rec(cur, n, plus, minus, unopened - 1, open, next_label + 1, out);
                open.pop();
                cur.pop();
            }
            for i in 0..open.len() {
                let label = open.remove(i);
                cur.push(ClanSymbol::Pair(label));
                rec(cur, n, plus, minus, unopened, open, next_label, out);
                cur.pop();
                open.insert(i, label);
            }
        }

        let n = self.p + self.q;
        let mut out = Vec::new();
        for k in 0..=self.p.min(self.q) {
            rec(
                &mut Vec::with_capacity(n),
                n,
                self.p - k,
                self.q - k,
                k,
                &mut Vec::new(),
                1,
                &mut out,
            );
        }
        out
    }
}

impl OrbitModel for ClanModel {
    type Param = Clan;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Clans {
            p: self.p,
            q: self.q,
        }
    }

    fn rank(&self) -> usize {
        self.p + self.q
    }

    fn list_orbits(&self) -> Vec<Clan> {
        let mut all = self.enumerate();
        all.sort_by_cached_key(|c| (c.length(), c.clone()));
        all
    }

    fn orbit_length(&self, gamma: &Clan) -> usize {
        gamma.length()
    }

    fn classify(&self, s: usize, gamma: &Clan) -> RootType {
        use ClanSymbol::*;
        match gamma.at(s) {
            (Plus, Plus) | (Minus, Minus) => RootType::ImaginaryCompact,
            (Plus, Minus) | (Minus, Plus) => RootType::NoncompactTypeI,
            (Pair(a), Pair(b)) if a == b => RootType::RealParity,
            _ => {
                if gamma.swapped(s).length() > gamma.length() {
                    RootType::ComplexAscent
                } else {
                    RootType::ComplexDescent
                }
            }
        }
    }

    fn cross(&self, s: usize, gamma: &Clan) -> Clan {
        match self.classify(s, gamma) {
            RootType::ImaginaryCompact | RootType::RealParity => gamma.clone(),
            _ => gamma.swapped(s),
        }
    }

    fn cayley_up(&self, s: usize, gamma: &Clan) -> Option<Clan> {
        (self.classify(s, gamma) == RootType::NoncompactTypeI).then(|| {
            // any label not in use; normalization renumbers it
            let fresh = ClanSymbol::Pair(u8::MAX);
            gamma.replaced(s, fresh, fresh)
        })
    }

    fn cayley_down_fiber(&self, s: usize, gamma: &Clan) -> Vec<Clan> {
        if self.classify(s, gamma) != RootType::RealParity {
            return Vec::new();
        }
        use ClanSymbol::{Minus, Plus};
        let mut out = vec![
            gamma.replaced(s, Plus, Minus),
            gamma.replaced(s, Minus, Plus),
        ];
        out.sort();
        out
    }
}

// ---------------------------------------------------------------------------
// Diagonal model

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalModel {
    n: usize,
}

impl DiagonalModel {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("rank must be at least 1".into()));
        }
        if n > cap {
            return Err(Error::SizeCap { size: n, cap });
        }
        if n > 9 {
            return Err(Error::InvalidParameters(
                "diagonal payloads are digit strings; n must be at most 9".into(),
            ));
        }
        Ok(DiagonalModel { n })
    }
}

/// Permutations label diagonal orbits by their compact digit string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagonalOrbit(pub Permutation);

impl fmt::Display for DiagonalOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.0.one_line() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl OrbitModel for DiagonalModel {
    type Param = DiagonalOrbit;

    fn spec(&self) -> ModelSpec {
        ModelSpec::Diagonal { n: self.n }
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn list_orbits(&self) -> Vec<DiagonalOrbit> {
        let mut all: Vec<DiagonalOrbit> = weyl::enumerate(self.n, self.n)
            .expect("rank validated at construction")
            .into_iter()
            .map(DiagonalOrbit)
            .collect();
        all.sort_by_cached_key(|w| (w.0.length(), w.clone()));
        all
    }

    fn orbit_length(&self, gamma: &DiagonalOrbit) -> usize {
        gamma.0.length()
    }

    fn classify(&self, s: usize, gamma: &DiagonalOrbit) -> RootType {
        if gamma.0.is_left_descent(s) {
            RootType::ComplexDescent
        } else {
            RootType::ComplexAscent
        }
    }

    fn cross(&self, s: usize, gamma: &DiagonalOrbit) -> DiagonalOrbit {
        DiagonalOrbit(gamma.0.left_mult(s))
    }

    fn cayley_up(&self, _s: usize, _gamma: &DiagonalOrbit) -> Option<DiagonalOrbit> {
        None
    }

    fn cayley_down_fiber(&self, _s: usize, _gamma: &DiagonalOrbit) -> Vec<DiagonalOrbit> {
        Vec::new()
    }
}

// ---------------------------------------------------------------------------
// Model selection and the indexed orbit set

/// Which symmetric pair to work with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
pub enum ModelSpec {
    Clans { p: usize, q: usize },
    Diagonal { n: usize },
}

impl ModelSpec {
    pub fn backend(&self) -> Backend {
        match self {
            ModelSpec::Clans { .. } => Backend::Clan,
            ModelSpec::Diagonal { .. } => Backend::Diagonal,
        }
    }

    /// Size compared against the cap: `p + q` or `n`.
    pub fn size(&self) -> usize {
        match *self {
            ModelSpec::Clans { p, q } => p + q,
            ModelSpec::Diagonal { n } => n,
        }
    }

    pub fn default_cap(&self) -> usize {
        match self {
            ModelSpec::Clans { .. } => DEFAULT_MAX_CLAN_SIZE,
            ModelSpec::Diagonal { .. } => weyl::DEFAULT_MAX_RANK,
        }
    }

    /// Enumerates and indexes the orbits, enforcing `cap`.
    pub fn build(&self, cap: usize) -> Result<OrbitSet> {
        match *self {
            ModelSpec::Clans { p, q } => OrbitSet::from_model(&ClanModel::new(p, q, cap)?),
            ModelSpec::Diagonal { n } => OrbitSet::from_model(&DiagonalModel::new(n, cap)?),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Clans { p, q } => write!(f, "clans({p},{q})"),
            ModelSpec::Diagonal { n } => write!(f, "diagonal({n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Clan,
    Diagonal,
}

/// An orbit as exported: backend tag, payload string and length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitId {
    pub backend: Backend,
    pub payload: String,
    pub d: usize,
}

/// Action of one simple reflection on one orbit, with targets as indices
/// into the owning [`OrbitSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleAction {
    ComplexAscent { cross: usize },
    ComplexDescent { cross: usize },
    ImaginaryCompact,
    NoncompactTypeI { cross: usize, cayley: usize },
    RealParity { fiber: [usize; 2] },
    RealNonparity,
    TypeIIUnsupported,
}

impl SimpleAction {
    pub fn root_type(&self) -> RootType {
        match self {
            SimpleAction::ComplexAscent { .. } => RootType::ComplexAscent,
            SimpleAction::ComplexDescent { .. } => RootType::ComplexDescent,
            SimpleAction::ImaginaryCompact => RootType::ImaginaryCompact,
            SimpleAction::NoncompactTypeI { .. } => RootType::NoncompactTypeI,
            SimpleAction::RealParity { .. } => RootType::RealParity,
            SimpleAction::RealNonparity => RootType::RealNonparity,
            SimpleAction::TypeIIUnsupported => RootType::TypeIIUnsupported,
        }
    }
}

/// The orbits of a model, indexed `0..len()` in `(d, payload)` order, with
/// the simple-reflection action tabulated.
#[derive(Clone, Debug)]
pub struct OrbitSet {
    spec: ModelSpec,
    rank: usize,
    orbits: Vec<OrbitId>,
    index: HashMap<String, usize>,
    /// `actions[i][s - 1]`
    actions: Vec<Vec<SimpleAction>>,
    /// All raising pairs `(s, delta)` of each orbit, canonical one first.
    raising: Vec<Vec<(usize, usize)>>,
}

impl OrbitSet {
    pub fn from_model<M: OrbitModel>(model: &M) -> Result<Self> {
        let params = model.list_orbits();
        let backend = model.spec().backend();
        let index_of: HashMap<M::Param, usize> = params
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let lookup = |g: &M::Param| -> Result<usize> {
            index_of
                .get(g)
                .copied()
                .ok_or_else(|| Error::UnknownOrbit(g.to_string()))
        };

        let orbits: Vec<OrbitId> = params
            .iter()
            .map(|g| OrbitId {
                backend,
                payload: g.to_string(),
                d: model.orbit_length(g),
            })
            .collect();
        let index = orbits
            .iter()
            .enumerate()
            .map(|(i, o)| (o.payload.clone(), i))
            .collect();

        let mut actions = Vec::with_capacity(params.len());
        let mut raising = Vec::with_capacity(params.len());
        for g in &params {
            let mut row = Vec::with_capacity(model.rank().saturating_sub(1));
            for s in 1..model.rank() {
                let action = match model.classify(s, g) {
                    RootType::ComplexAscent => SimpleAction::ComplexAscent {
                        cross: lookup(&model.cross(s, g))?,
                    },
                    RootType::ComplexDescent => SimpleAction::ComplexDescent {
                        cross: lookup(&model.cross(s, g))?,
                    },
                    RootType::ImaginaryCompact => SimpleAction::ImaginaryCompact,
                    RootType::NoncompactTypeI => {
                        let up = model.cayley_up(s, g).ok_or_else(|| {
                            Error::Invariant(format!("no Cayley transform for s={s} at {g}"))
                        })?;
                        SimpleAction::NoncompactTypeI {
                            cross: lookup(&model.cross(s, g))?,
                            cayley: lookup(&up)?,
                        }
                    }
                    RootType::RealParity => {
                        let fiber = model.cayley_down_fiber(s, g);
                        let [a, b] = fiber.as_slice() else {
                            return Err(Error::Invariant(format!(
                                "real parity root s={s} at {g} has {} Cayley preimages",
                                fiber.len()
                            )));
                        };
                        SimpleAction::RealParity {
                            fiber: [lookup(a)?, lookup(b)?],
                        }
                    }
                    RootType::RealNonparity => SimpleAction::RealNonparity,
                    RootType::TypeIIUnsupported => SimpleAction::TypeIIUnsupported,
                };
                row.push(action);
            }
            actions.push(row);
            let pairs = model
                .raising_pairs(g)
                .iter()
                .map(|(s, delta)| Ok((*s, lookup(delta)?)))
                .collect::<Result<Vec<_>>>()?;
            raising.push(pairs);
        }

        Ok(OrbitSet {
            spec: model.spec(),
            rank: model.rank(),
            orbits,
            index,
            actions,
            raising,
        })
    }

    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Simple reflection indices `1..rank`.
    pub fn simple_indices(&self) -> std::ops::Range<usize> {
        1..self.rank
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[OrbitId] {
        &self.orbits
    }

    pub fn orbit(&self, i: usize) -> &OrbitId {
        &self.orbits[i]
    }

    pub fn payload(&self, i: usize) -> &str {
        &self.orbits[i].payload
    }

    pub fn d(&self, i: usize) -> usize {
        self.orbits[i].d
    }

    /// Index of an orbit given its payload; clans may use `-` or U+2212.
    pub fn index_of(&self, payload: &str) -> Result<usize> {
        let key = payload.trim().replace('\u{2212}', "-");
        self.index
            .get(&key)
            .copied()
            .ok_or_else(|| Error::UnknownOrbit(payload.to_string()))
    }

    pub fn action(&self, s: usize, i: usize) -> SimpleAction {
        self.actions[i][s - 1]
    }

    pub fn classify(&self, s: usize, i: usize) -> RootType {
        self.action(s, i).root_type()
    }

    pub fn monoid_raise(&self, s: usize, i: usize) -> Option<usize> {
        match self.action(s, i) {
            SimpleAction::ComplexAscent { cross } => Some(cross),
            SimpleAction::NoncompactTypeI { cayley, .. } => Some(cayley),
            _ => None,
        }
    }

    /// Sorted by index.
    pub fn string_set(&self, s: usize, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        match self.action(s, i) {
            SimpleAction::ComplexAscent { cross } | SimpleAction::ComplexDescent { cross } => {
                out.push(cross)
            }
            SimpleAction::NoncompactTypeI { cross, cayley } => out.extend([cross, cayley]),
            SimpleAction::RealParity { fiber } => out.extend(fiber),
            _ => {}
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn raising_pairs(&self, i: usize) -> &[(usize, usize)] {
        &self.raising[i]
    }

    pub fn raising_pair(&self, i: usize) -> Result<Option<(usize, usize)>> {
        if self.d(i) == 0 {
            return Ok(None);
        }
        self.raising[i]
            .first()
            .copied()
            .map(Some)
            .ok_or_else(|| Error::Unreachable {
                orbit: self.payload(i).to_string(),
                d: self.d(i),
            })
    }
}
