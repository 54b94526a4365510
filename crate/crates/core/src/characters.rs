// SPDX-License-Identifier: MIT OR Apache-2.0
//! Character bookkeeping for both sides of the duality.
//!
//! Everything here is combinatorial: Weyl filtrations of exterior powers,
//! the tilting recursion for fundamental `sp_2n` weights under a
//! specialization, and the `sl_2` numbers that Ringel duality matches them
//! with.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::crystal::crystal_nodes;
use crate::error::HoweError;
use crate::extalg::Subset;
use crate::qarith::{padic_expand, qbinom_nonzero, LaurentInt, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sp,
    Sl2,
}

/// A character written in Weyl characters: `mults[k]` is the coefficient of
/// `[Δ(ϖ_k)]` (sp side) or of `[Δ(k)]` (sl_2 side).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharVec {
    pub side: Side,
    pub n: usize,
    pub mults: Vec<i64>,
}

impl CharVec {
    pub fn zero(side: Side, n: usize) -> Self {
        Self { side, n, mults: vec![0; n + 1] }
    }

    pub fn get(&self, k: usize) -> i64 {
        self.mults.get(k).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mults.len()).filter(|&k| self.mults[k] != 0).collect()
    }
}

impl fmt::Display for CharVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.mults.len())
            .rev()
            .filter(|&k| self.mults[k] != 0)
            .map(|k| {
                let c = self.mults[k];
                let sym = match self.side {
                    Side::Sp => format!("ϖ_{k}"),
                    Side::Sl2 => format!("Δ({k})"),
                };
                if c == 1 { sym } else { format!("{c}·{sym}") }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn binom(m: usize, k: usize) -> i64 {
    if k > m {
        return 0;
    }
    (0..k).fold(1i64, |acc, j| acc * (m - j) as i64 / (j as i64 + 1))
}

/// `dim Δ(ϖ_k) = C(2n, k) - C(2n, k-2)`.
pub fn dim_fundamental(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    binom(2 * n, k) - if k >= 2 { binom(2 * n, k - 2) } else { 0 }
}

/// Weyl character of `Λ^k` as an `sp_2n`-module.
pub fn lambda_sp_character(n: usize, k: usize) -> CharVec {
    let k = if k > n { 2 * n - k } else { k };
    let mut c = CharVec::zero(Side::Sp, n);
    for j in (k % 2..=k).step_by(2) {
        c.mults[j] = 1;
    }
    c
}

/// Weyl character of `Λ` as an `sl_2`-module: `Δ(n-k)` with multiplicity
/// `dim Δ(ϖ_k)`.
pub fn lambda_sl2_character(n: usize) -> CharVec {
    let mut c = CharVec::zero(Side::Sl2, n);
    for k in 0..=n {
        c.mults[n - k] = dim_fundamental(n, k);
    }
    c
}

/// `Σ_k dim Δ(ϖ_k) · (n - k + 1)`, which should be `4^n`.
pub fn howe_dimension(n: usize) -> i64 {
    (0..=n).map(|k| dim_fundamental(n, k) * (n - k + 1) as i64).sum()
}

/// A weight of `sp_2n × sl_2`: the `sp` weight vector and the `sl_2` weight.
type JointWeight = (Vec<i64>, i64);

/// Checks `ch Λ = Σ_k ch Δ(ϖ_k) · ch Δ(n-k)` weight by weight, with the
/// `sp` Weyl characters read off the fundamental crystals.
pub fn weight_graded_identity(n: usize) -> bool {
    let mut lhs: BTreeMap<JointWeight, i64> = BTreeMap::new();
    for s in Subset::all(n) {
        *lhs.entry((s.weight(), s.len() as i64 - n as i64)).or_default() += 1;
    }
    let mut rhs: BTreeMap<JointWeight, i64> = BTreeMap::new();
    for k in 0..=n {
        let m = (n - k) as i64;
        for s in crystal_nodes(n, k) {
            for j in 0..=m {
                *rhs.entry((s.weight(), m - 2 * j)).or_default() += 1;
            }
        }
    }
    lhs == rhs
}

/// The matrix `(T(ϖ_k) : Δ(ϖ_l))` for `0 <= k, l <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltingMatrix {
    pub n: usize,
    pub spec: Specialization,
    pub rows: Vec<Vec<i64>>,
}

impl TiltingMatrix {
    pub fn get(&self, k: usize, l: usize) -> i64 {
        self.rows[k][l]
    }

    /// The `Δ`-support of row `k`.
    pub fn support(&self, k: usize) -> Vec<usize> {
        (0..=self.n).filter(|&l| self.rows[k][l] != 0).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..=self.n).all(|k| (0..=self.n).all(|l| self.rows[k][l] == i64::from(k == l)))
    }

    /// Header row, then one row per `T(ϖ_k)`.
    pub fn table(&self) -> Vec<Vec<String>> {
        let mut out = vec![std::iter::once("T\\Delta".to_string())
            .chain((0..=self.n).map(|l| format!("w{l}")))
            .collect()];
        for k in 0..=self.n {
            let mut row = vec![format!("w{k}")];
            row.extend(self.rows[k].iter().map(ToString::to_string));
            out.push(row);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "p": self.spec.p,
            "ell": self.spec.ell,
            "rows": self.rows,
        })
    }
}

fn recursion(n: usize, s: Specialization, index: impl Fn(usize, usize) -> i64) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![0i64; n + 1];
        for j in (k % 2..=k).step_by(2) {
            row[j] = 1;
        }
        for i in 1..=k / 2 {
            let m = index(k, i);
            if m >= 0 && qbinom_nonzero(m as u64, i as u64, s) {
                for (x, y) in row.iter_mut().zip(&rows[k - 2 * i]) {
                    *x -= y;
                }
            }
        }
        rows.push(row);
    }
    rows
}

/// Tilting characters of the fundamental modules.
///
/// `[T(ϖ_k)] = [Λ^k] - Σ_{i>=1} [T(ϖ_{k-2i})]`, the sum running over the
/// `i` for which `T(ϖ_{k-2i})` is a summand of `Λ^k`, i.e. for which
/// `[n-k+2i; i]` survives the specialization.
pub fn tilting_weyl_matrix(n: usize, s: Specialization) -> Result<TiltingMatrix, HoweError> {
    let rows = recursion(n, s, |k, i| (n + 2 * i) as i64 - k as i64);
    for (k, row) in rows.iter().enumerate() {
        if let Some(l) = row.iter().position(|&x| x < 0) {
            return Err(HoweError::NegativeMultiplicity { row: k, col: l });
        }
    }
    Ok(TiltingMatrix { n, spec: s, rows })
}

/// The same recursion with the binomial `[n-k; i]` indexed by the degree of
/// `Λ^k` rather than by the summand. Entries may be negative.
pub fn degree_indexed_recursion(n: usize, s: Specialization) -> Vec<Vec<i64>> {
    recursion(n, s, |k, _| n as i64 - k as i64)
}

/// Whether `T(ϖ_k)` is a summand of `Λ^{k+2i}`.
pub fn summand_multiplicity(n: usize, k: usize, i: usize, s: Specialization) -> u8 {
    if k > n {
        return 0;
    }
    u8::from(qbinom_nonzero((n - k) as u64, i as u64, s))
}

/// `[Λ^K] = Σ_i summand_multiplicity(n, K-2i, i)·[T(ϖ_{K-2i})]` for all `K <= n`.
pub fn decomposition_closure(n: usize, s: Specialization) -> Result<bool, HoweError> {
    let t = tilting_weyl_matrix(n, s)?;
    Ok((0..=n).all(|big_k| {
        let mut acc = vec![0i64; n + 1];
        for i in 0..=big_k / 2 {
            let k = big_k - 2 * i;
            if summand_multiplicity(n, k, i, s) == 1 {
                for (a, b) in acc.iter_mut().zip(&t.rows[k]) {
                    *a += b;
                }
            }
        }
        acc == lambda_sp_character(n, big_k).mults
    }))
}

/// The closure identity with `[n-K; i]` taken at the degree `K`.
pub fn decomposition_closure_degree_indexed(n: usize, s: Specialization) -> Result<bool, HoweError> {
    let t = tilting_weyl_matrix(n, s)?;
    Ok((0..=n).all(|big_k| {
        let mut acc = vec![0i64; n + 1];
        for i in 0..=big_k / 2 {
            if qbinom_nonzero((n - big_k) as u64, i as u64, s) {
                for (a, b) in acc.iter_mut().zip(&t.rows[big_k - 2 * i]) {
                    *a += b;
                }
            }
        }
        acc == lambda_sp_character(n, big_k).mults
    }))
}

// ---------------------------------------------------------------------------
// sl_2 side

/// Formal character of an `sl_2`-module: weight to multiplicity.
pub type Sl2Char = BTreeMap<i64, i64>;

pub fn sl2_weyl_character(m: u64) -> Sl2Char {
    (0..=m).map(|j| (m as i64 - 2 * j as i64, 1)).collect()
}

/// `ch L(m)` by the Steinberg tensor product theorem on `(p, ell)`-adic digits.
pub fn sl2_simple_character(m: u64, s: Specialization) -> Sl2Char {
    let mut ch: Sl2Char = BTreeMap::from([(0, 1)]);
    for (j, &a) in padic_expand(m, s).0.iter().enumerate() {
        let place = s.place(j).expect("digit place fits") as i64;
        let mut next = Sl2Char::new();
        for (w, x) in &ch {
            for t in 0..=a as i64 {
                *next.entry(w + (a as i64 - 2 * t) * place).or_default() += x;
            }
        }
        ch = next;
    }
    ch
}

/// Writes a character with dominant-weight bookkeeping as a sum of
/// characters `basis(m)` with highest weight `m`, peeling from the top.
fn peel(mut ch: Sl2Char, basis: impl Fn(u64) -> Sl2Char) -> BTreeMap<u64, i64> {
    let mut out = BTreeMap::new();
    ch.retain(|_, x| *x != 0);
    while let Some((&top, &mult)) = ch.iter().next_back() {
        debug_assert!(top >= 0);
        out.insert(top as u64, mult);
        for (w, x) in basis(top as u64) {
            let e = ch.entry(w).or_default();
            *e -= mult * x;
        }
        ch.retain(|_, x| *x != 0);
    }
    out
}

/// Decomposition numbers `[Δ(m) : L(m')]`.
pub fn sl2_decomposition(m: u64, s: Specialization) -> BTreeMap<u64, i64> {
    peel(sl2_weyl_character(m), |t| sl2_simple_character(t, s))
}

/// Writes a character as a sum of Weyl characters.
pub fn weyl_multiplicities(ch: &Sl2Char) -> BTreeMap<u64, i64> {
    peel(ch.clone(), sl2_weyl_character)
}

/// Weyl factors of the `sl_2` tilting module `T(m)`, by the digit-flip rule.
///
/// Write `m + 1 = Σ a_j p^(j)` with leading digit `a_r`. The Weyl factors
/// `Δ(m')` have `m' + 1 = a_r p^(r) + Σ_{j<r} ±a_j p^(j)`; a zero digit
/// contributes nothing, so its two signs give the same value.
pub fn sl2_tilting_deltas(m: u64, s: Specialization) -> BTreeSet<u64> {
    let digits = padic_expand(m + 1, s).0;
    let top = digits.len() - 1;
    let place = |j: usize| s.place(j).expect("digit place fits") as i64;
    let mut vals: BTreeSet<i64> = BTreeSet::from([digits[top] as i64 * place(top)]);
    for j in (0..top).rev() {
        let a = digits[j] as i64 * place(j);
        vals = vals.iter().flat_map(|v| [v + a, v - a]).collect();
    }
    vals.into_iter().filter(|v| *v >= 1).map(|v| (v - 1) as u64).collect()
}

/// Ringel duality check: `(T(ϖ_k) : Δ(ϖ_l)) = [Δ(n-l) : L(n-k)]` for all `k, l`.
pub fn ringel_crosscheck(n: usize, s: Specialization) -> Result<bool, HoweError> {
    let t = tilting_weyl_matrix(n, s)?;
    Ok((0..=n).all(|l| {
        let dec = sl2_decomposition((n - l) as u64, s);
        (0..=n).all(|k| t.get(k, l) == dec.get(&((n - k) as u64)).copied().unwrap_or(0))
    }))
}

/// `{l : [∇(ϖ_l) : L(ϖ_k)] = 1}` from the `sl_2` tilting side: the `l` with
/// `Δ(n-l)` a factor of `T(n-k)`.
pub fn weyl_modules_containing(n: usize, k: usize, s: Specialization) -> BTreeSet<usize> {
    sl2_tilting_deltas((n - k) as u64, s)
        .into_iter()
        .filter(|&m| m as usize <= n)
        .map(|m| n - m as usize)
        .collect()
}

// ---------------------------------------------------------------------------
// Quantum dimensions

/// `qdim Δ(ϖ_k) = Σ_{S ∈ C_{ϖ_k}} q^{(2ρ, wt S)}` with `ρ = Σ (n-i+1) ε_i`,
/// computed as `e_k - e_{k-2}` of the `2n` values `q^{±2j}`.
pub fn qdim_fund(n: usize, k: usize) -> LaurentInt {
    if k > n {
        return LaurentInt::zero();
    }
    let e = elementary_qdims(n, k);
    if k >= 2 {
        &e[k] - &e[k - 2]
    } else {
        e[k].clone()
    }
}

/// `e_0, …, e_k` of `q^{±2}, …, q^{±2n}`.
fn elementary_qdims(n: usize, k: usize) -> Vec<LaurentInt> {
    let mut e = vec![LaurentInt::zero(); k + 1];
    e[0] = LaurentInt::one();
    for j in 1..=n as i64 {
        for x in [LaurentInt::q(2 * j), LaurentInt::q(-2 * j)] {
            for d in (1..=k).rev() {
                let add = &e[d - 1] * &x;
                e[d] += add;
            }
        }
    }
    e
}

pub fn qdim_tilting(n: usize, k: usize, s: Specialization) -> Result<LaurentInt, HoweError> {
    let t = tilting_weyl_matrix(n, s)?;
    let mut out = LaurentInt::zero();
    for l in t.support(k) {
        out += &(&qdim_fund(n, l) * &LaurentInt::from_int(t.get(k, l)));
    }
    Ok(out)
}

/// `Φ_m(q)` as a coefficient vector, lowest degree first.
fn cyclotomic(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::from(1);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = poly_divide_exact(&num, &cyclotomic(d));
    }
    num
}

fn poly_divide_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (quot, rem) = poly_divmod(a, b);
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Division by a monic polynomial.
fn poly_divmod(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![BigInt::zero()], r);
    }
    let mut quot = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
    }
    r.truncate(db);
    (quot, r)
}

/// Whether `x` vanishes when `q` is a primitive `2ell`-th root of unity in
/// characteristic `p`, i.e. whether `Φ_{2ell}` divides `x` over `F_p`
/// (over `Q` when `p` is infinite). `None` for generic specializations.
pub fn vanishes_at(x: &LaurentInt, s: Specialization) -> Option<bool> {
    let ell = s.ell?;
    if x.is_zero() {
        return Some(true);
    }
    let lo = x.min_exp().unwrap();
    let hi = x.max_exp().unwrap();
    let coeffs: Vec<BigInt> = (lo..=hi).map(|e| x.coeff(e)).collect();
    let (_, rem) = poly_divmod(&coeffs, &cyclotomic(2 * ell));
    Some(rem.iter().all(|c| match s.p {
        None => c.is_zero(),
        Some(p) => (c % BigInt::from(p)).is_zero(),
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct QdimProbeRow {
    pub i: usize,
    pub qdim_nonzero: Option<bool>,
    pub digits_dominate: bool,
}

/// Compares nonvanishing of `qdim T(ϖ_i)` at the root of unity with digit
/// dominance of `n` over `i`, for `i = 0..=n`. Exploratory only.
pub fn qdim_probe(n: usize, s: Specialization) -> Result<Vec<QdimProbeRow>, HoweError> {
    (0..=n)
        .map(|i| {
            let qd = qdim_tilting(n, i, s)?;
            Ok(QdimProbeRow {
                i,
                qdim_nonzero: vanishes_at(&qd, s).map(|v| !v),
                digits_dominate: qbinom_nonzero(n as u64, i as u64, s),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: Option<u64>, l: Option<u64>) -> Specialization {
        Specialization::new(p, l).unwrap()
    }

    #[test]
    fn exterior_characters() {
        assert_eq!(lambda_sp_character(3, 3).support(), vec![1, 3]);
        assert_eq!(lambda_sp_character(4, 0).support(), vec![0]);
        assert_eq!(lambda_sp_character(3, 5), lambda_sp_character(3, 1));
        assert_eq!(lambda_sl2_character(1).mults, vec![2, 1]);
        assert_eq!(lambda_sl2_character(2).mults, vec![5, 4, 1]);
        assert_eq!(lambda_sl2_character(2).to_string(), "Δ(2) + 4·Δ(1) + 5·Δ(0)");
        for n in 1..=5 {
            assert_eq!(howe_dimension(n), 4i64.pow(n as u32));
        }
    }

    #[test]
    fn tilting_at_78() {
        let t = tilting_weyl_matrix(78, spec(Some(7), Some(3))).unwrap();
        let supports: Vec<Vec<usize>> = (0..10).map(|k| t.support(k)).collect();
        assert_eq!(
            supports,
            vec![
                vec![0],
                vec![1],
                vec![0, 2],
                vec![3],
                vec![4],
                vec![3, 5],
                vec![2, 6],
                vec![7],
                vec![6, 8],
                vec![5, 9]
            ]
        );
        // The degree-indexed variant gives the other shape.
        let d = degree_indexed_recursion(78, spec(Some(7), Some(3)));
        let sup = |k: usize| (0..=78).filter(|&l| d[k][l] != 0).collect::<Vec<_>>();
        assert_eq!(sup(3), vec![1, 3]);
        assert_eq!(sup(9), vec![5, 7, 9]);
    }

    #[test]
    fn large_ell_is_semisimple() {
        for n in 1..=8 {
            assert!(tilting_weyl_matrix(n, spec(None, Some(n as u64 + 1))).unwrap().is_identity());
            assert!(tilting_weyl_matrix(n, Specialization::generic()).unwrap().is_identity());
        }
    }

    #[test]
    fn summands() {
        let s = spec(Some(7), Some(3));
        assert_eq!(summand_multiplicity(78, 5, 25, s), 1);
        // n - k = 73 = [1,3,3] dominates 28 = [1,2,1].
        assert_eq!(summand_multiplicity(78, 5, 28, s), 1);
        assert!(!qbinom_nonzero(68, 28, s));
        assert!(qbinom_nonzero(68, 25, s));
        assert_eq!(summand_multiplicity(10, 3, 0, s), 1);
    }

    #[test]
    fn flip_rule() {
        let s = spec(Some(7), Some(3));
        assert_eq!(sl2_tilting_deltas(73, s), BTreeSet::from([51, 55, 69, 73]));
        assert_eq!(sl2_tilting_deltas(5, spec(None, Some(7))), BTreeSet::from([5]));
        assert_eq!(weyl_modules_containing(78, 5, s), BTreeSet::from([5, 9, 23, 27]));
    }

    #[test]
    fn ringel() {
        for s in [spec(Some(3), Some(2)), spec(Some(7), Some(3)), spec(None, Some(4)), Specialization::generic()] {
            for n in 1..=10 {
                assert!(ringel_crosscheck(n, s).unwrap(), "n={n} {s}");
                assert!(decomposition_closure(n, s).unwrap(), "n={n} {s}");
            }
        }
        assert!(ringel_crosscheck(78, spec(Some(7), Some(3))).unwrap());
    }

    #[test]
    fn quantum_dimensions() {
        assert!(qdim_fund(3, 0).is_one());
        assert_eq!(qdim_fund(1, 1), LaurentInt::from_terms([(-2, 1), (2, 1)]));
        for n in 1..=4 {
            for k in 0..=n {
                assert_eq!(qdim_fund(n, k).eval_one(), BigInt::from(dim_fundamental(n, k)));
            }
        }
        assert_eq!(vanishes_at(&crate::qarith::qint(3), spec(None, Some(3))), Some(true));
        assert_eq!(vanishes_at(&crate::qarith::qint(2), spec(None, Some(3))), Some(false));
    }
}
