//! Symmetric group combinatorics in one-line notation.
//!
//! Simple reflections act on the left: `s_i * w` swaps the values `i` and
//! `i + 1` in the one-line word of `w`. The diagonal orbit model uses the
//! same convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default largest rank handled by [`enumerate`].
pub const DEFAULT_MAX_RANK: usize = 6;

/// A permutation of `1..=n` stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Parse {
                    kind: "permutation",
                    input: format!("{one_line:?}"),
                    reason: "not a bijection on 1..n".into(),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&b| b < w[i]).count())
            .sum()
    }

    /// `s_i * self`, swapping the values `i` and `i + 1`.
    pub fn left_mult(&self, s: usize) -> Permutation {
        debug_assert!(s >= 1 && s < self.rank());
        let (a, b) = (s as u8, s as u8 + 1);
        Permutation(
            self.0
                .iter()
                .map(|&v| match v {
                    v if v == a => b,
                    v if v == b => a,
                    v => v,
                })
                .collect(),
        )
    }

    /// True if `s_i * self` is shorter than `self`, i.e. `i + 1` appears
    /// before `i` in the one-line word.
    pub fn is_left_descent(&self, s: usize) -> bool {
        let pos = |v: u8| self.0.iter().position(|&x| x == v).unwrap();
        pos(s as u8 + 1) < pos(s as u8)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.rank()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// Bruhat order by the rank-matrix criterion: `self <= w` iff for all
    /// `i, j`, `#{k <= i : self(k) <= j} >= #{k <= i : w(k) <= j}`.
    pub fn bruhat_leq(&self, w: &Permutation) -> bool {
        assert_eq!(self.rank(), w.rank(), "bruhat_leq on different ranks");
        let n = self.rank();
        let mut rx = vec![0usize; n + 1];
        let mut rw = vec![0usize; n + 1];
        for i in 0..n {
            for j in self.0[i] as usize..=n {
                rx[j] += 1;
            }
            for j in w.0[i] as usize..=n {
                rw[j] += 1;
            }
            if (1..=n).any(|j| rx[j] < rw[j]) {
                return false;
            }
        }
        true
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Parses `[3,4,1,2]`, `3,4,1,2` or `3412`.
impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let bad = |reason: &str| Error::Parse {
            kind: "permutation",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let vals: Vec<u8> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse::<u8>().map_err(|e| bad(&e.to_string())))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| bad("expected digits"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(vals)
    }
}

/// All permutations of rank `n` in lexicographic order.
pub fn enumerate(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::InvalidParameters("rank must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::SizeCap { size: n, cap });
    }
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![Permutation(cur.clone())];
    while next_permutation(&mut cur) {
        out.push(Permutation(cur.clone()));
    }
    Ok(out)
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
