// SPDX-License-Identifier: MIT OR Apache-2.0
//! The quantum exterior algebra `Λ` of type C.
//!
//! Generators `v_x` are indexed by `x ∈ {±1, …, ±n}`, ordered
//! `1 < 2 < … < n < -n < … < -1`. Products of generators are rewritten into
//! the standard basis `{v_S}` of ordered monomials with the relations
//!
//! ```text
//! v_x v_x      = 0
//! v_j v_i      = -q v_i v_j                     (0 < i < j)
//! v_{-i} v_{-j} = -q v_{-j} v_{-i}               (0 < i < j)
//! v_{-i} v_j   = -q v_j v_{-i}                  (i != j)
//! v_{-i} v_i   = -q^2 v_i v_{-i}
//!                + (q - q^-1) Σ_{k=1}^{n-i} (-q)^{k+1} v_{i+k} v_{-(i+k)}
//! ```
//!
//! Subsets are bitmasks: the generator `i > 0` sits at bit `i - 1`, the
//! generator `-i` at bit `2n - i`, so ascending bit order is the generator order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::HoweError;
use crate::qarith::LaurentInt;

/// Largest supported rank for subset bitmasks.
pub const MAX_RANK: usize = 32;

/// A subset `S` of `{±1, …, ±n}`, equivalently a dot diagram with `n` columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    mask: u64,
}

/// Bit position of the generator `x` at rank `n`.
#[inline]
pub fn position(x: i64, n: usize) -> usize {
    if x > 0 {
        (x - 1) as usize
    } else {
        (2 * n as i64 + x) as usize
    }
}

/// Generator index at bit position `p`.
#[inline]
pub fn index_at(p: usize, n: usize) -> i64 {
    if p < n {
        p as i64 + 1
    } else {
        p as i64 - 2 * n as i64
    }
}

impl Subset {
    pub fn new(n: usize, members: &[i64]) -> Result<Self, HoweError> {
        if n == 0 {
            return Err(HoweError::ZeroRank);
        }
        if n > MAX_RANK {
            return Err(HoweError::IndexOutOfRange { index: n as i64, n: MAX_RANK });
        }
        let mut mask = 0u64;
        for &x in members {
            if x == 0 || x.unsigned_abs() as usize > n {
                return Err(HoweError::IndexOutOfRange { index: x, n });
            }
            let b = 1u64 << position(x, n);
            if mask & b != 0 {
                return Err(HoweError::RepeatedIndex(x));
            }
            mask |= b;
        }
        Ok(Self { n, mask })
    }

    /// Like [`Subset::new`] but panics on invalid input; convenient in tests.
    pub fn of(n: usize, members: &[i64]) -> Self {
        Self::new(n, members).expect("valid subset")
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!((1..=MAX_RANK).contains(&n));
        debug_assert!(2 * n == 64 || mask >> (2 * n) == 0);
        Self { n, mask }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        Self { n, mask: full_mask(n) }
    }

    /// `{1, …, k}`.
    pub fn initial(n: usize, k: usize) -> Self {
        Self::of(n, &(1..=k as i64).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, x: i64) -> bool {
        self.mask >> position(x, self.n) & 1 == 1
    }

    /// Members in the order `1 < … < n < -n < … < -1`.
    pub fn members(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.mask;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            out.push(index_at(p, self.n));
            m &= m - 1;
        }
        out
    }

    pub fn insert(&self, x: i64) -> Self {
        Self { n: self.n, mask: self.mask | 1 << position(x, self.n) }
    }

    pub fn remove(&self, x: i64) -> Self {
        Self { n: self.n, mask: self.mask & !(1 << position(x, self.n)) }
    }

    /// `(S \ {from}) ∪ {to}`.
    pub fn swap(&self, from: i64, to: i64) -> Self {
        self.remove(from).insert(to)
    }

    pub fn union(&self, other: &Subset) -> Self {
        Self { n: self.n, mask: self.mask | other.mask }
    }

    pub fn difference(&self, other: &Subset) -> Self {
        Self { n: self.n, mask: self.mask & !other.mask }
    }

    /// `-S = {-x : x ∈ S}`.
    pub fn negate(&self) -> Self {
        Self { n: self.n, mask: self.mask.reverse_bits() >> (64 - 2 * self.n) }
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, mask: !self.mask & full_mask(self.n) }
    }

    /// Column `c` holds both `c` and `-c`.
    pub fn is_full_column(&self, c: usize) -> bool {
        self.contains(c as i64) && self.contains(-(c as i64))
    }

    /// Column `c` holds neither `c` nor `-c`.
    pub fn is_empty_column(&self, c: usize) -> bool {
        !self.contains(c as i64) && !self.contains(-(c as i64))
    }

    /// Fully dotted columns, ascending.
    pub fn full_columns(&self) -> Vec<usize> {
        (1..=self.n).filter(|&c| self.is_full_column(c)).collect()
    }

    /// Undotted columns, ascending.
    pub fn empty_columns(&self) -> Vec<usize> {
        (1..=self.n).filter(|&c| self.is_empty_column(c)).collect()
    }

    /// Number of dots in column `c` (0, 1 or 2).
    pub fn dots(&self, c: usize) -> usize {
        self.contains(c as i64) as usize + self.contains(-(c as i64)) as usize
    }

    /// `S_0 = S ∩ -S`.
    pub fn s0(&self) -> Self {
        Self { n: self.n, mask: self.mask & self.negate().mask }
    }

    /// `S_0^c = S^c ∩ -S^c`.
    pub fn s0c(&self) -> Self {
        self.complement().s0()
    }

    /// Adds both nodes of column `c`.
    pub fn with_column(&self, c: usize) -> Self {
        self.insert(c as i64).insert(-(c as i64))
    }

    /// Removes both nodes of column `c`.
    pub fn without_column(&self, c: usize) -> Self {
        self.remove(c as i64).remove(-(c as i64))
    }

    /// The weight `Σ_{x ∈ S} wt(x)` in `Z^n`.
    pub fn weight(&self) -> Vec<i64> {
        let mut w = vec![0; self.n];
        for x in self.members() {
            w[x.unsigned_abs() as usize - 1] += x.signum();
        }
        w
    }

    /// `w(S) = #full columns - #empty columns = |S| - n`.
    pub fn w(&self) -> i64 {
        self.len() as i64 - self.n as i64
    }

    /// All `2^{2n}` subsets, in [`Ord`] order.
    pub fn all(n: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = (0..1u64 << (2 * n)).map(|m| Subset::from_mask(n, m)).collect();
        v.sort();
        v
    }

    /// All subsets with `k` elements, in [`Ord`] order.
    pub fn of_size(n: usize, k: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = (0..1u64 << (2 * n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| Subset::from_mask(n, m))
            .collect();
        v.sort();
        v
    }
}

fn full_mask(n: usize) -> u64 {
    if 2 * n == 64 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

impl Ord for Subset {
    /// Rank, then size, then lexicographic on the ordered member lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| {
                let diff = self.mask ^ other.mask;
                if diff == 0 {
                    return std::cmp::Ordering::Equal;
                }
                let low = diff & diff.wrapping_neg();
                if self.mask & low != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Per-subset statistics used by the `sl_2` side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub s0: Subset,
    pub s0c: Subset,
    /// `w(S) = (|S_0| - |S_0^c|) / 2`, always an integer.
    pub w: i64,
    pub wgt: Vec<i64>,
}

pub fn stats(s: &Subset) -> Stats {
    Stats { s0: s.s0(), s0c: s.s0c(), w: s.w(), wgt: s.weight() }
}

/// `w_{>i}(S)`: full minus empty columns strictly right of column `i`.
pub fn w_gt(s: &Subset, i: usize) -> i64 {
    ((i + 1)..=s.n())
        .map(|c| s.is_full_column(c) as i64 - s.is_empty_column(c) as i64)
        .sum()
}

/// `w_{<i}(S)`: empty minus full columns strictly left of column `i`.
/// Note the sign is opposite to [`w_gt`].
pub fn w_lt(s: &Subset, i: usize) -> i64 {
    (1..i)
        .map(|c| s.is_empty_column(c) as i64 - s.is_full_column(c) as i64)
        .sum()
}

/// `S_{i,i+1} = S ∩ {±i, ±(i+1)}` for `i < n` and `S ∩ {±n}` for `i = n`.
pub fn window(s: &Subset, i: usize) -> Subset {
    let n = s.n();
    let mut cols = vec![i];
    if i < n {
        cols.push(i + 1);
    }
    let mut out = Subset::empty(n);
    for c in cols {
        for x in [c as i64, -(c as i64)] {
            if s.contains(x) {
                out = out.insert(x);
            }
        }
    }
    out
}

/// Pairing `(α_i, wt)` of a simple root with a weight.
pub fn root_pairing(wt: &[i64], i: usize) -> i64 {
    let n = wt.len();
    if i < n {
        wt[i - 1] - wt[i]
    } else {
        2 * wt[n - 1]
    }
}

/// A sparse element of `Λ`: subsets with nonzero Laurent coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtVec {
    n: usize,
    terms: BTreeMap<Subset, LaurentInt>,
}

impl ExtVec {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The standard basis vector `v_S`.
    pub fn basis(s: Subset) -> Self {
        Self::term(s, LaurentInt::one())
    }

    pub fn term(s: Subset, c: LaurentInt) -> Self {
        let mut v = Self::zero(s.n());
        v.add_term(s, c);
        v
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Subset, LaurentInt)>) -> Self {
        let mut v = Self::zero(n);
        for (s, c) in it {
            v.add_term(s, c);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &LaurentInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Subset, LaurentInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, s: &Subset) -> LaurentInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, s: Subset, c: LaurentInt) {
        debug_assert_eq!(s.n(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ExtVec, c: &LaurentInt) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            self.add_term(*s, x * c);
        }
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Apply a linear map given on basis vectors.
    pub fn map_linear(&self, mut f: impl FnMut(&Subset) -> ExtVec) -> ExtVec {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.terms {
            out.add_scaled(&f(s), c);
        }
        out
    }

    /// Component supported on subsets of size `k`.
    pub fn degree_part(&self, k: usize) -> ExtVec {
        Self::from_terms(
            self.n,
            self.terms.iter().filter(|(s, _)| s.len() == k).map(|(s, c)| (*s, c.clone())),
        )
    }
}

impl std::ops::Add<&ExtVec> for &ExtVec {
    type Output = ExtVec;
    fn add(self, rhs: &ExtVec) -> ExtVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentInt::one());
        out
    }
}

impl std::ops::Sub<&ExtVec> for &ExtVec {
    type Output = ExtVec;
    fn sub(self, rhs: &ExtVec) -> ExtVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentInt::from_int(-1));
        out
    }
}

impl fmt::Display for ExtVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})·v{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExtVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtVec[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "S")]
    s: Vec<i64>,
    c: LaurentInt,
}

#[derive(Serialize, Deserialize)]
struct ExtVecJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for ExtVec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ExtVecJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson { s: s.members(), c: c.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExtVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ExtVecJson::deserialize(d)?;
        let mut v = ExtVec::zero(j.n);
        for t in j.terms {
            let s = Subset::new(j.n, &t.s).map_err(serde::de::Error::custom)?;
            v.add_term(s, t.c);
        }
        Ok(v)
    }
}

/// A word in generator positions (see [`position`]).
pub type Word = Vec<u8>;

/// One rewriting step on the adjacent pair `(word[idx], word[idx+1])`.
///
/// Returns `None` if the pair is already in normal order; otherwise the
/// linear combination of words replacing `word`.
pub fn rewrite_at(n: usize, word: &[u8], idx: usize) -> Option<Vec<(LaurentInt, Word)>> {
    let (pa, pb) = (word[idx] as usize, word[idx + 1] as usize);
    if pa < pb {
        return None;
    }
    if pa == pb {
        return Some(Vec::new());
    }
    let (a, b) = (index_at(pa, n), index_at(pb, n));
    let replace = |x: i64, y: i64| -> Word {
        let mut w = word.to_vec();
        w[idx] = position(x, n) as u8;
        w[idx + 1] = position(y, n) as u8;
        w
    };
    let mq = LaurentInt::monomial(-1, 1);
    if a < 0 && b == -a {
        // v_{-i} v_i
        let i = b;
        let mut out = vec![(LaurentInt::monomial(-1, 2), replace(i, -i))];
        let qq = LaurentInt::from_terms([(1, 1), (-1, -1)]);
        for k in 1..=(n as i64 - i) {
            out.push((&qq * &LaurentInt::neg_q(k + 1), replace(i + k, -(i + k))));
        }
        return Some(out);
    }
    // In all other reducible cases the pair swaps with a factor -q.
    Some(vec![(mq, replace(b, a))])
}

static NORMAL_FORMS: LazyLock<DashMap<(usize, Word), ExtVec>> = LazyLock::new(DashMap::new);

/// Normal form of a word given in generator positions, leftmost-first strategy.
pub fn normalize_positions(n: usize, word: &[u8]) -> ExtVec {
    if let Some(done) = normal_subset(n, word) {
        return ExtVec::basis(done);
    }
    let key = (n, word.to_vec());
    if let Some(v) = NORMAL_FORMS.get(&key) {
        return v.clone();
    }
    let idx = (0..word.len() - 1).find(|&i| word[i] >= word[i + 1]).unwrap();
    let mut out = ExtVec::zero(n);
    for (c, w) in rewrite_at(n, word, idx).unwrap() {
        out.add_scaled(&normalize_positions(n, &w), &c);
    }
    NORMAL_FORMS.insert(key, out.clone());
    out
}

/// `Some(S)` if the word is strictly increasing, i.e. already `v_S`.
fn normal_subset(n: usize, word: &[u8]) -> Option<Subset> {
    if word.windows(2).all(|p| p[0] < p[1]) {
        Some(Subset::from_mask(n, word.iter().fold(0u64, |m, p| m | 1 << p)))
    } else {
        None
    }
}

/// Normal form with a caller-chosen reduction order and no memoization.
///
/// `choose` receives the list of reducible pair positions and returns an index
/// into that list.
pub fn normalize_with_strategy(
    n: usize,
    word: &[u8],
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> ExtVec {
    let mut out = ExtVec::zero(n);
    let mut stack: Vec<(LaurentInt, Word)> = vec![(LaurentInt::one(), word.to_vec())];
    while let Some((c, w)) = stack.pop() {
        let red: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] >= w[i + 1]).collect();
        if red.is_empty() {
            out.add_term(normal_subset(n, &w).unwrap(), c);
            continue;
        }
        let idx = red[choose(&red) % red.len()];
        for (c2, w2) in rewrite_at(n, &w, idx).unwrap() {
            stack.push((&c * &c2, w2));
        }
    }
    out
}

/// Expands a product of generators `v_{x_1} ⋯ v_{x_m}` in the standard basis.
pub fn normalize(word: &[i64], n: usize) -> Result<ExtVec, HoweError> {
    if n == 0 {
        return Err(HoweError::ZeroRank);
    }
    let mut w = Vec::with_capacity(word.len());
    for &x in word {
        if x == 0 || x.unsigned_abs() as usize > n {
            return Err(HoweError::IndexOutOfRange { index: x, n });
        }
        w.push(position(x, n) as u8);
    }
    Ok(normalize_positions(n, &w))
}

fn positions_of(s: &Subset) -> Word {
    let mut out = Vec::with_capacity(s.len());
    let mut m = s.mask();
    while m != 0 {
        out.push(m.trailing_zeros() as u8);
        m &= m - 1;
    }
    out
}

/// `v_S · v_T` in the standard basis.
pub fn multiply_basis(s: &Subset, t: &Subset) -> ExtVec {
    let mut w = positions_of(s);
    w.extend(positions_of(t));
    normalize_positions(s.n(), &w)
}

/// Bilinear product in `Λ`.
pub fn multiply(x: &ExtVec, y: &ExtVec) -> Result<ExtVec, HoweError> {
    if x.n() != y.n() {
        return Err(HoweError::RankMismatch(x.n(), y.n()));
    }
    let mut out = ExtVec::zero(x.n());
    for (s, a) in x.terms() {
        for (t, b) in y.terms() {
            out.add_scaled(&multiply_basis(s, t), &(a * b));
        }
    }
    Ok(out)
}

/// `v_S^rev`: the generators of `S` multiplied in reverse order.
pub fn reversed_expand(s: &Subset) -> ExtVec {
    let mut w = positions_of(s);
    w.reverse();
    normalize_positions(s.n(), &w)
}

/// The scalar `c` with `d_S = c · v_S` for the dual generators
/// `d_i = (-q)^{-(i-1)} v_i` and `d_{-i} = -q^{-2n} (-q)^{i-1} v_{-i}`.
pub fn dual_scalar(s: &Subset) -> LaurentInt {
    let n = s.n() as i64;
    let mut c = LaurentInt::one();
    for x in s.members() {
        let i = x.abs();
        let f = if x > 0 {
            LaurentInt::neg_q(-(i - 1))
        } else {
            -(LaurentInt::neg_q(i - 1).shift(-2 * n))
        };
        c = &c * &f;
    }
    c
}

/// The bar involution on a basis vector.
pub fn bar_basis(s: &Subset) -> ExtVec {
    let k = s.len() as i64;
    let scalar = LaurentInt::neg_q(-(k * (k - 1) / 2)).shift(-(s.full_columns().len() as i64));
    reversed_expand(s).scale(&scalar)
}

/// The antilinear bar involution.
pub fn bar(x: &ExtVec) -> ExtVec {
    let mut out = ExtVec::zero(x.n());
    for (s, c) in x.terms() {
        out.add_scaled(&bar_basis(s), &c.bar());
    }
    out
}

/// `v_S ↦ v_{-S}`.
pub fn omega_twist(x: &ExtVec) -> ExtVec {
    ExtVec::from_terms(x.n(), x.terms().map(|(s, c)| (s.negate(), c.clone())))
}

/// The bilinear form with orthonormal standard basis.
pub fn bilinear(x: &ExtVec, y: &ExtVec) -> LaurentInt {
    let mut out = LaurentInt::zero();
    for (s, a) in x.terms() {
        if let Some(b) = y.terms.get(s) {
            out += a * b;
        }
    }
    out
}

/// `⟨x, y⟩ = (x, bar y)`.
pub fn sesquilinear(x: &ExtVec, y: &ExtVec) -> LaurentInt {
    bilinear(x, &bar(y))
}

/// The partial order: equal non-full parts and the fully dotted columns of
/// `S` dominated entrywise by those of `T` after sorting.
pub fn leq(s: &Subset, t: &Subset) -> bool {
    if s.n() != t.n() {
        return false;
    }
    if s.difference(&s.s0()) != t.difference(&t.s0()) {
        return false;
    }
    let (a, b) = (s.full_columns(), t.full_columns());
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// `v_{k,k-2i} = v_{{1,…,k-2i} ∪ {±(n-i+1), …, ±n}}`.
pub fn v_k_k2i(n: usize, k: usize, i: usize) -> Option<Subset> {
    if 2 * i > k || k - i > n {
        return None;
    }
    let mut s = Subset::initial(n, k - 2 * i);
    for c in (n - i + 1)..=n {
        s = s.with_column(c);
    }
    Some(s)
}

/// Outcome of the exhaustive overlap check of the rewriting system.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConfluenceReport {
    pub n: usize,
    pub overlaps: usize,
    /// Overlap count per family: a pattern like `-a -b +c` with letters
    /// naming equal absolute values, `a < b < c`.
    pub families: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

fn family_of(n: usize, w: &[u8]) -> String {
    let xs: Vec<i64> = w.iter().map(|p| index_at(*p as usize, n)).collect();
    let mut abs: Vec<i64> = xs.iter().map(|x| x.abs()).collect();
    abs.sort();
    abs.dedup();
    xs.iter()
        .map(|x| {
            let r = abs.iter().position(|a| *a == x.abs()).unwrap();
            format!("{}{}", if *x > 0 { '+' } else { '-' }, (b'a' + r as u8) as char)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Resolves every overlap ambiguity `xyz` with both `xy` and `yz` reducible.
pub fn confluence_report(n: usize) -> ConfluenceReport {
    let m = 2 * n as u8;
    let mut rep = ConfluenceReport { n, ..Default::default() };
    for a in 0..m {
        for b in 0..=a {
            for c in 0..=b {
                let w = [a, b, c];
                let mut left = ExtVec::zero(n);
                for (k, w2) in rewrite_at(n, &w, 0).unwrap() {
                    left.add_scaled(&normalize_positions(n, &w2), &k);
                }
                let mut right = ExtVec::zero(n);
                for (k, w2) in rewrite_at(n, &w, 1).unwrap() {
                    right.add_scaled(&normalize_positions(n, &w2), &k);
                }
                rep.overlaps += 1;
                *rep.families.entry(family_of(n, &w)).or_default() += 1;
                if left != right {
                    let xs: Vec<i64> = w.iter().map(|p| index_at(*p as usize, n)).collect();
                    rep.failures.push(format!("{xs:?}: {left} vs {right}"));
                }
            }
        }
    }
    rep
}

/// Counts irreducible words of each length `0..=2n` by brute force.
pub fn normal_form_counts(n: usize) -> Vec<usize> {
    let m = 2 * n;
    let mut counts = vec![0usize; m + 1];
    // Irreducible words extend irreducible words, so grow them level by level.
    let mut level: Vec<Word> = vec![Vec::new()];
    for len in 0..=m {
        counts[len] = level.len();
        let mut next = Vec::new();
        for w in &level {
            for p in 0..m as u8 {
                if w.last().is_none_or(|&l| l < p) {
                    let mut w2 = w.clone();
                    w2.push(p);
                    next.push(w2);
                }
            }
        }
        level = next;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(pairs.iter().copied())
    }

    #[test]
    fn positions_follow_generator_order() {
        let n = 3;
        let order: Vec<i64> = (0..6).map(|p| index_at(p, n)).collect();
        assert_eq!(order, vec![1, 2, 3, -3, -2, -1]);
        for p in 0..6 {
            assert_eq!(position(index_at(p, n), n), p);
        }
    }

    #[test]
    fn subset_basics() {
        let s = Subset::of(3, &[-1, 2, 3, -3]);
        assert_eq!(s.members(), vec![2, 3, -3, -1]);
        assert_eq!(s.negate().members(), vec![1, 3, -3, -2]);
        assert_eq!(s.full_columns(), vec![3]);
        assert_eq!(s.complement().members(), vec![1, -2]);
        assert!(Subset::new(2, &[1, 1]).is_err());
        assert!(Subset::new(2, &[3]).is_err());
        assert!(Subset::new(0, &[]).is_err());
    }

    #[test]
    fn swaps_pick_up_minus_q() {
        let v = normalize(&[2, 1], 2).unwrap();
        assert_eq!(v, ExtVec::term(Subset::of(2, &[1, 2]), lp(&[(1, -1)])));
        assert!(normalize(&[3, 3], 3).unwrap().is_zero());
    }

    #[test]
    fn stats_example() {
        let s = Subset::of(6, &[1, 2, 5, -5, -4]);
        let st = stats(&s);
        assert_eq!(st.s0.members(), vec![5, -5]);
        assert_eq!(st.s0c.members(), vec![3, 6, -6, -3]);
        assert_eq!(st.w, -1);
        assert_eq!(window(&Subset::of(2, &[1, -2]), 1), Subset::of(2, &[1, -2]));
        assert_eq!(w_gt(&s, 4), 0);
        assert_eq!(w_lt(&s, 4), 1);
    }

    #[test]
    fn dual_scalars() {
        assert!(dual_scalar(&Subset::of(2, &[1])).is_one());
        assert_eq!(dual_scalar(&Subset::of(2, &[-1])), lp(&[(-4, -1)]));
        assert_eq!(dual_scalar(&Subset::of(2, &[2, -2])), lp(&[(-4, -1)]));
    }

    #[test]
    fn order_examples() {
        assert!(leq(&Subset::of(2, &[1, -1]), &Subset::of(2, &[2, -2])));
        assert!(!leq(&Subset::of(2, &[2, -2]), &Subset::of(2, &[1, -1])));
        assert!(!leq(&Subset::of(2, &[1, 2]), &Subset::of(2, &[1, -2])));
    }

    #[test]
    fn json_round_trip() {
        let v = normalize(&[-1, 1], 2).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"S":[1,-1],"c":{"2":-1}},{"S":[2,-2],"c":{"1":-1,"3":1}}]}"#
        );
        let back: ExtVec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
