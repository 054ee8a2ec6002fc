//! Classical Kazhdan-Lusztig polynomials of the symmetric group.
//!
//! This is the one-step recursion on the Weyl group itself. It shares no
//! code with the Hecke-module engine and serves as its oracle on the
//! diagonal model. For `s` with `sw < w`, `v = sw` and `c = [sx < x]`:
//!
//! ```text
//! P(x,w) = q^(1-c) P(sx,v) + q^c P(x,v) - sum_{x <= z < v, sz < z} mu(z,v) q^((l(w)-l(z))/2) P(x,z)
//! ```

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::poly::Poly;
use crate::weyl::{enumerate, Permutation};

/// All classical KL polynomials `P(x, w)` for one rank.
#[derive(Clone, Debug)]
pub struct KlTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    /// `polys[w][x]`
    polys: Vec<Vec<Poly>>,
    /// Nonzero mu-coefficients below each `w`: `(z, mu(z, w))`.
    mu_below: Vec<Vec<(usize, BigInt)>>,
}

impl KlTable {
    /// Builds the table for `S_n`, always using the smallest left descent.
    pub fn build(n: usize, cap: usize) -> Result<Self> {
        let elements = enumerate(n, cap)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let lengths: Vec<usize> = elements.iter().map(Permutation::length).collect();
        let size = elements.len();
        let mut table = KlTable {
            elements,
            index,
            lengths,
            polys: vec![Vec::new(); size],
            mu_below: vec![Vec::new(); size],
        };

        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&w| table.lengths[w]);
        for w in order {
            let column = match (1..n).find(|&s| table.elements[w].is_left_descent(s)) {
                None => (0..size)
                    .map(|x| if x == w { Poly::one() } else { Poly::zero() })
                    .collect(),
                Some(s) => (0..size).map(|x| table.recurse(x, w, s)).collect(),
            };
            table.polys[w] = column;
            table.mu_below[w] = (0..size)
                .filter_map(|z| {
                    let m = table.mu_idx(z, w);
                    (!m.is_zero()).then_some((z, m))
                })
                .collect();
        }
        Ok(table)
    }

    /// One application of the recursion for `P(x, w)` through the left
    /// descent `s` of `w`. Requires every column shorter than `w`.
    fn recurse(&self, x: usize, w: usize, s: usize) -> Poly {
        let v = self.index[&self.elements[w].left_mult(s)];
        let sx = self.index[&self.elements[x].left_mult(s)];
        let c = usize::from(self.elements[x].is_left_descent(s));
        let mut p = &self.polys[v][sx].shift(1 - c) + &self.polys[v][x].shift(c);
        for (z, mu) in &self.mu_below[v] {
            if !self.elements[*z].is_left_descent(s) {
                continue;
            }
            let pxz = &self.polys[*z][x];
            if pxz.is_zero() {
                continue;
            }
            let k = self.lengths[w] - self.lengths[*z];
            debug_assert!(k.is_multiple_of(2));
            p -= &pxz.scale(mu).shift(k / 2);
        }
        p
    }

    fn mu_idx(&self, z: usize, w: usize) -> BigInt {
        let (lz, lw) = (self.lengths[z], self.lengths[w]);
        if lw <= lz || (lw - lz) % 2 == 0 {
            return BigInt::zero();
        }
        self.polys[w][z].coeff((lw - lz - 1) / 2)
    }

    pub fn rank(&self) -> usize {
        self.elements.first().map_or(0, Permutation::rank)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// `P(x, w)`; zero unless `x <= w`.
    pub fn kl_poly(&self, x: &Permutation, w: &Permutation) -> Poly {
        self.polys[self.index[w]][self.index[x]].clone()
    }

    /// Coefficient of `q^((l(w)-l(z)-1)/2)` in `P(z, w)` at odd length gap,
    /// otherwise zero.
    pub fn kl_mu(&self, z: &Permutation, w: &Permutation) -> BigInt {
        self.mu_idx(self.index[z], self.index[w])
    }

    /// Recomputes `P(x, w)` through a chosen left descent `s` of `w`, using
    /// the stored shorter columns.
    pub fn recompute_via(&self, x: &Permutation, w: &Permutation, s: usize) -> Poly {
        assert!(w.is_left_descent(s), "s must be a left descent of w");
        self.recurse(self.index[x], self.index[w], s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_and_vanishing() {
        let t = KlTable::build(4, 6).unwrap();
        for w in t.elements() {
            assert!(t.kl_poly(w, w).is_one());
            assert!(t.kl_mu(w, w).is_zero());
            for x in t.elements() {
                let p = t.kl_poly(x, w);
                assert_eq!(p.is_zero(), !x.bruhat_leq(w), "{x} {w}");
                if !x.bruhat_leq(w) {
                    assert!(t.kl_mu(x, w).is_zero());
                }
            }
        }
    }

    #[test]
    fn s3_all_ones() {
        let t = KlTable::build(3, 6).unwrap();
        for w in t.elements() {
            for x in t.elements() {
                if x.bruhat_leq(w) {
                    assert!(t.kl_poly(x, w).is_one());
                }
            }
        }
    }

    #[test]
    fn mu_on_covers_is_one() {
        let t = KlTable::build(4, 6).unwrap();
        for w in t.elements() {
            for z in t.elements() {
                if z.bruhat_leq(w) && z.length() + 1 == w.length() {
                    assert_eq!(t.kl_mu(z, w), BigInt::from(1));
                }
            }
        }
    }

    /// The two singular Schubert varieties in S_4.
    #[test]
    fn s4_known_singular_entries() {
        let t = KlTable::build(4, 6).unwrap();
        let one_plus_q = Poly::from_i64s(&[1, 1]);
        assert_eq!(t.kl_poly(&perm("1324"), &perm("3412")), one_plus_q);
        assert_eq!(t.kl_poly(&perm("1234"), &perm("3412")), one_plus_q);
        assert_eq!(t.kl_poly(&perm("2143"), &perm("4231")), one_plus_q);
        assert_eq!(t.kl_poly(&perm("1234"), &perm("4231")), one_plus_q);
        assert!(t.kl_poly(&perm("3142"), &perm("3412")).is_one());
        let nonconstant = t
            .elements()
            .iter()
            .flat_map(|w| t.elements().iter().map(move |x| (x, w)))
            .filter(|(x, w)| t.kl_poly(x, w).degree().unwrap_or(0) > 0)
            .count();
        // [e,1324] below 3412 and [e,2143] below 4231
        assert_eq!(nonconstant, 2 + 4);
    }

    #[test]
    fn constant_term_and_degree_bound() {
        let t = KlTable::build(4, 6).unwrap();
        for w in t.elements() {
            for x in t.elements() {
                if x.bruhat_leq(w) && x != w {
                    let p = t.kl_poly(x, w);
                    assert_eq!(p.coeff(0), BigInt::from(1));
                    let gap = w.length() - x.length();
                    assert!(2 * p.degree().unwrap() < gap);
                }
            }
        }
    }

    #[test]
    fn independent_of_descent_choice() {
        for n in 2..=4 {
            let t = KlTable::build(n, 6).unwrap();
            for w in t.elements() {
                for s in (1..n).filter(|&s| w.is_left_descent(s)) {
                    for x in t.elements() {
                        assert_eq!(t.recompute_via(x, w, s), t.kl_poly(x, w));
                    }
                }
            }
        }
    }

    #[test]
    fn irving_semicontinuity_s4() {
        let t = KlTable::build(4, 6).unwrap();
        let all = t.elements();
        for w in all {
            for v in all.iter().filter(|v| v.bruhat_leq(w)) {
                for u in all.iter().filter(|u| u.bruhat_leq(v)) {
                    let (low, high) = (t.kl_poly(u, w), t.kl_poly(v, w));
                    for i in 0..4 {
                        assert!(low.coeff(i) >= high.coeff(i), "{u} {v} {w}");
                    }
                }
            }
        }
    }
}
