// SPDX-License-Identifier: MIT OR Apache-2.0
//! Rainbow diagrams and the canonical basis `{b_S}`.
//!
//! Fully dotted columns are matched to undotted columns on their right like
//! brackets: reading columns left to right, a fully dotted column opens and an
//! undotted column closes the most recent open one. Matched pairs are the
//! rainbows. `b_S` is the sum over all ways of jumping a set of rainbows from
//! their left to their right endpoint, each jump weighted by `q^-1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::HoweError;
use crate::exactla::{invert_unitriangular, LaurentMatrix};
use crate::extalg::{ExtVec, Subset};
use crate::qarith::LaurentInt;

/// The rainbow matching of a dot diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rainbow {
    /// Matched fully dotted column `x` mapped to its undotted partner `x^S > x`.
    pub pairs: BTreeMap<usize, usize>,
    /// Fully dotted columns with `x^S = x`.
    pub unmatched: Vec<usize>,
}

impl Rainbow {
    /// `L(S)`, the left endpoints.
    pub fn left(&self) -> Vec<usize> {
        self.pairs.keys().copied().collect()
    }

    /// `R(S)`, the right endpoints.
    pub fn right(&self) -> Vec<usize> {
        self.pairs.values().copied().collect()
    }

    /// `x^S`.
    pub fn partner(&self, x: usize) -> usize {
        self.pairs.get(&x).copied().unwrap_or(x)
    }
}

pub fn rainbow(s: &Subset) -> Rainbow {
    let mut open = Vec::new();
    let mut pairs = BTreeMap::new();
    for c in 1..=s.n() {
        if s.is_full_column(c) {
            open.push(c);
        } else if s.is_empty_column(c) {
            if let Some(x) = open.pop() {
                pairs.insert(x, c);
            }
        }
    }
    open.sort();
    Rainbow { pairs, unmatched: open }
}

/// Matching by the dot-count rule: fully dotted columns are processed right to
/// left, and `x` is matched to the nearest free undotted column on its right
/// when fewer than `n - x` nodes lie right of `x`.
///
/// For each size `k <= n` both rules leave the same number of subsets fully
/// matched, but individual matchings can differ: for `{2,4,-4,-2}` at `n = 4`
/// this rule leaves column 2 unmatched while [`rainbow`] pairs it with 3.
/// Only the bracket matching yields bar-invariant `b_S` in general.
pub fn rainbow_dot_count(s: &Subset) -> Rainbow {
    let n = s.n();
    let mut used = vec![false; n + 1];
    let mut pairs = BTreeMap::new();
    let mut unmatched = Vec::new();
    for x in s.full_columns().into_iter().rev() {
        let right: usize = ((x + 1)..=n).map(|c| s.dots(c)).sum();
        let free = ((x + 1)..=n).find(|&c| s.is_empty_column(c) && !used[c]);
        match free {
            Some(c) if right < n - x => {
                used[c] = true;
                pairs.insert(x, c);
            }
            _ => unmatched.push(x),
        }
    }
    unmatched.sort();
    Rainbow { pairs, unmatched }
}

/// The canonical basis vector `b_S`.
pub fn canonical_vector(s: &Subset) -> ExtVec {
    let rb = rainbow(s);
    let pairs: Vec<(usize, usize)> = rb.pairs.iter().map(|(a, b)| (*a, *b)).collect();
    let mut out = ExtVec::zero(s.n());
    for chosen in 0u32..(1 << pairs.len()) {
        let mut t = *s;
        for (j, (x, y)) in pairs.iter().enumerate() {
            if chosen >> j & 1 == 1 {
                t = t.without_column(*x).with_column(*y);
            }
        }
        out.add_term(t, LaurentInt::q(-(chosen.count_ones() as i64)));
    }
    out
}

/// Sort key refining the partial order: the sorted tuple of fully dotted
/// columns, compared lexicographically.
fn order_key(s: &Subset) -> (Vec<usize>, Subset) {
    (s.full_columns(), *s)
}

/// Coefficients `k_S` with `x = Σ k_S b_S`, by unitriangular back-substitution.
pub fn to_canonical(x: &ExtVec) -> BTreeMap<Subset, LaurentInt> {
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    while let Some((s, c)) = rest
        .terms()
        .min_by_key(|(s, _)| order_key(s))
        .map(|(s, c)| (*s, c.clone()))
    {
        rest.add_scaled(&canonical_vector(&s), &-c.clone());
        out.insert(s, c);
    }
    out
}

/// Basis change in degree `k`: the subsets (sorted by the refinement order)
/// and the matrix `X` whose column `S` holds the coordinates of `b_S`.
pub fn base_change(n: usize, k: usize) -> (Vec<Subset>, LaurentMatrix) {
    let mut subs = Subset::of_size(n, k);
    subs.sort_by_key(order_key);
    let pos: std::collections::HashMap<Subset, usize> =
        subs.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut x = LaurentMatrix::zeros(subs.len(), subs.len());
    for (j, s) in subs.iter().enumerate() {
        for (t, c) in canonical_vector(s).into_terms() {
            x.set(pos[&t], j, c);
        }
    }
    (subs, x)
}

/// `Y` with `Y X = 1` for the degree-`k` basis change.
pub fn inverse_base_change(n: usize, k: usize) -> Result<(Vec<Subset>, LaurentMatrix), HoweError> {
    let (subs, x) = base_change(n, k);
    Ok((subs, invert_unitriangular(&x)?))
}

/// Whether every fully dotted column of `S` is matched.
pub fn is_fully_matched(s: &Subset) -> bool {
    rainbow(s).unmatched.is_empty()
}

/// Subsets of size `k` whose fully dotted columns are all matched; these
/// index the canonical basis of the Weyl module `Δ(ϖ_k)` inside `Λ^k`.
pub fn fundamental_subsets(n: usize, k: usize) -> Vec<Subset> {
    Subset::of_size(n, k).into_iter().filter(is_fully_matched).collect()
}

#[derive(Serialize)]
struct CanonicalJson {
    n: usize,
    terms: serde_json::Value,
    rainbow: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    unmatched: Vec<usize>,
}

/// `b_S` as element JSON plus the list of rainbow arcs.
pub fn canonical_json(s: &Subset) -> serde_json::Value {
    let rb = rainbow(s);
    let v = serde_json::to_value(canonical_vector(s)).expect("serializable");
    serde_json::to_value(CanonicalJson {
        n: s.n(),
        terms: v["terms"].clone(),
        rainbow: rb.pairs.iter().map(|(a, b)| [*a, *b]).collect(),
        unmatched: rb.unmatched,
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rainbow_examples() {
        let r = rainbow(&Subset::of(2, &[1, -1]));
        assert_eq!(r.pairs, BTreeMap::from([(1, 2)]));
        let r = rainbow(&Subset::of(4, &[1, 2, -2, -1]));
        assert_eq!(r.pairs, BTreeMap::from([(1, 4), (2, 3)]));
        let r = rainbow(&Subset::of(3, &[3, -3]));
        assert_eq!(r.unmatched, vec![3]);
        // Arcs go rightward, so column 5 pairs with 6 here.
        let r = rainbow(&Subset::of(6, &[1, 2, 5, -5, -4]));
        assert_eq!(r.pairs, BTreeMap::from([(5, 6)]));
    }

    #[test]
    fn canonical_examples() {
        let b = canonical_vector(&Subset::of(2, &[1, -1]));
        let want = ExtVec::from_terms(
            2,
            [(Subset::of(2, &[1, -1]), LaurentInt::one()), (Subset::of(2, &[2, -2]), LaurentInt::q(-1))],
        );
        assert_eq!(b, want);
        let b = canonical_vector(&Subset::of(4, &[1, 2, -2, -1]));
        let mut coeffs: Vec<i64> = b.terms().map(|(_, c)| c.min_exp().unwrap()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![-2, -1, -1, 0]);
        let s = Subset::of(3, &[1, -2]);
        assert_eq!(canonical_vector(&s), ExtVec::basis(s));
    }

    #[test]
    fn to_canonical_examples() {
        let s = Subset::of(2, &[2, -2]);
        assert_eq!(to_canonical(&ExtVec::basis(s)), BTreeMap::from([(s, LaurentInt::one())]));
        let t = Subset::of(2, &[1, -1]);
        assert_eq!(
            to_canonical(&ExtVec::basis(t)),
            BTreeMap::from([(t, LaurentInt::one()), (s, LaurentInt::monomial(-1, -1))])
        );
    }

    #[test]
    fn fundamental_examples() {
        let f = fundamental_subsets(2, 2);
        let want: Vec<Subset> = [[1, 2], [1, -2], [1, -1], [2, -1], [-2, -1]]
            .iter()
            .map(|m| Subset::of(2, m))
            .collect();
        let mut f2 = f.clone();
        f2.sort();
        let mut w2 = want.clone();
        w2.sort();
        assert_eq!(f2, w2);
        assert_eq!(fundamental_subsets(3, 0).len(), 1);
        assert_eq!(fundamental_subsets(3, 2).len(), 14);
    }
}
