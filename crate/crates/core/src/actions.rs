// SPDX-License-Identifier: MIT OR Apache-2.0
//! The commuting actions on `Λ`.
//!
//! * `U_q(sp_2n)` acts through Chevalley generators `e_i, f_i, k_i` that move
//!   single dots between neighbouring columns.
//! * `U_q(sl_2)` acts through `E, F, K`, which add or remove fully dotted
//!   columns. Divided powers have closed formulas, and Lusztig's operator `T`
//!   is built from them.
//! * The differential-operator form `e, f, pr_m` of the `sl_2` action, with the
//!   rescaled operators `E pr_m` and `F pr_m`.

use std::fmt;

use crate::error::HoweError;
use crate::exactla::LaurentMatrix;
use crate::extalg::{root_pairing, window, w_gt, w_lt, ExtVec, Subset};
use crate::qarith::{qfact_in, LaurentInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Sp,
    Sl2,
    Sl2Diff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    E,
    F,
    K,
    Kinv,
    T,
    Tinv,
    /// Weight projector `pr_m`.
    Pr,
    /// Unscaled differential operators `e` and `f`.
    DiffE,
    DiffF,
}

/// One generator of either action, possibly a divided power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTag {
    pub side: Side,
    pub kind: Kind,
    /// Simple root index for `sp`, weight `m` for `pr_m`, unused otherwise.
    pub index: i64,
    /// Divided power; 1 for plain generators.
    pub power: u32,
}

impl GeneratorTag {
    pub fn sp(kind: Kind, i: usize) -> Self {
        Self { side: Side::Sp, kind, index: i as i64, power: 1 }
    }

    pub fn sl2(kind: Kind) -> Self {
        Self { side: Side::Sl2, kind, index: 0, power: 1 }
    }

    pub fn diff(kind: Kind) -> Self {
        Self { side: Side::Sl2Diff, kind, index: 0, power: 1 }
    }

    pub fn pr(m: i64) -> Self {
        Self { side: Side::Sl2Diff, kind: Kind::Pr, index: m, power: 1 }
    }

    pub fn pow(mut self, p: u32) -> Self {
        self.power = p;
        self
    }
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.side, self.kind) {
            (Side::Sp, Kind::E) => format!("e{}", self.index),
            (Side::Sp, Kind::F) => format!("f{}", self.index),
            (Side::Sp, Kind::K) => format!("k{}", self.index),
            (Side::Sp, Kind::Kinv) => format!("kinv{}", self.index),
            (Side::Sl2, Kind::E) => "E".into(),
            (Side::Sl2, Kind::F) => "F".into(),
            (Side::Sl2, Kind::K) => "K".into(),
            (Side::Sl2, Kind::Kinv) => "Kinv".into(),
            (_, Kind::T) => "T".into(),
            (_, Kind::Tinv) => "Tinv".into(),
            (_, Kind::Pr) => format!("pr{}", self.index),
            (Side::Sl2Diff, Kind::DiffE) => "de".into(),
            (Side::Sl2Diff, Kind::DiffF) => "df".into(),
            (Side::Sl2Diff, Kind::E) => "dE".into(),
            (Side::Sl2Diff, Kind::F) => "dF".into(),
            _ => "?".into(),
        };
        if self.power == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{}", self.power)
        }
    }
}

/// Parses a generator word such as `"f1^2 e3 K E F(2) T pr0"`.
///
/// Tokens: `e<i> f<i> k<i> kinv<i>` (sp), `E F K Kinv T Tinv` (sl2),
/// `de df dE dF pr<m>` (differential form). `^p` or `(p)` marks a divided
/// power. The returned list is in reading order; [`apply_word`] applies it
/// right to left.
pub fn parse_word(s: &str, n: usize) -> Result<Vec<GeneratorTag>, HoweError> {
    s.split_whitespace().map(|t| parse_token(t, n)).collect()
}

fn parse_token(tok: &str, n: usize) -> Result<GeneratorTag, HoweError> {
    let bad = || HoweError::Parse(format!("generator token {tok:?}"));
    let (head, power) = if let Some((h, p)) = tok.split_once('^') {
        (h, p.parse::<u32>().map_err(|_| bad())?)
    } else if let Some(h) = tok.strip_suffix(')') {
        let (h, p) = h.split_once('(').ok_or_else(bad)?;
        (h, p.parse::<u32>().map_err(|_| bad())?)
    } else {
        (tok, 1)
    };
    if power == 0 {
        return Err(bad());
    }
    let sp_index = |rest: &str| -> Result<usize, HoweError> {
        let i: usize = rest.parse().map_err(|_| bad())?;
        if i == 0 || i > n {
            return Err(HoweError::IndexOutOfRange { index: i as i64, n });
        }
        Ok(i)
    };
    let tag = match head {
        "E" => GeneratorTag::sl2(Kind::E),
        "F" => GeneratorTag::sl2(Kind::F),
        "K" => GeneratorTag::sl2(Kind::K),
        "Kinv" => GeneratorTag::sl2(Kind::Kinv),
        "T" => GeneratorTag::sl2(Kind::T),
        "Tinv" => GeneratorTag::sl2(Kind::Tinv),
        "de" => GeneratorTag::diff(Kind::DiffE),
        "df" => GeneratorTag::diff(Kind::DiffF),
        "dE" => GeneratorTag::diff(Kind::E),
        "dF" => GeneratorTag::diff(Kind::F),
        h if h.starts_with("pr") => {
            let m: i64 = h[2..].parse().map_err(|_| bad())?;
            GeneratorTag::pr(m)
        }
        h if h.starts_with("kinv") => GeneratorTag::sp(Kind::Kinv, sp_index(&h[4..])?),
        h if h.starts_with('e') => GeneratorTag::sp(Kind::E, sp_index(&h[1..])?),
        h if h.starts_with('f') => GeneratorTag::sp(Kind::F, sp_index(&h[1..])?),
        h if h.starts_with('k') => GeneratorTag::sp(Kind::K, sp_index(&h[1..])?),
        _ => return Err(bad()),
    };
    let no_power = matches!(tag.kind, Kind::K | Kind::Kinv | Kind::T | Kind::Tinv | Kind::Pr);
    if no_power && power != 1 {
        return Err(bad());
    }
    Ok(tag.pow(power))
}

/// Applies a word right to left.
pub fn apply_word(word: &[GeneratorTag], x: &ExtVec) -> Result<ExtVec, HoweError> {
    word.iter().rev().try_fold(x.clone(), |acc, t| apply(*t, &acc))
}

/// Applies any generator.
pub fn apply(tag: GeneratorTag, x: &ExtVec) -> Result<ExtVec, HoweError> {
    match (tag.side, tag.kind) {
        (Side::Sp, _) => apply_sp(tag, x),
        (_, Kind::T) => Ok(apply_t(x)),
        (_, Kind::Tinv) => Ok(apply_t_inv(x)),
        (Side::Sl2, _) => Ok(apply_sl2(tag, x)),
        (Side::Sl2Diff, _) => Ok(apply_diff(tag, x)),
    }
}

// ---------------------------------------------------------------------------
// sp_2n

/// `f_i · v_S` from the window case table.
pub fn sp_f_basis(i: usize, s: &Subset) -> ExtVec {
    let n = s.n();
    let i = i as i64;
    if i as usize == n {
        if window(s, n).members() == [i] {
            return ExtVec::basis(s.swap(i, -i));
        }
        return ExtVec::zero(n);
    }
    let w = window(s, i as usize).members();
    let up = || s.swap(i, i + 1); // i -> i+1
    let down = || s.swap(-(i + 1), -i); // -(i+1) -> -i
    let one = LaurentInt::one();
    // Members come in the order i < i+1 < -(i+1) < -i.
    match w.as_slice() {
        [a] if *a == i => ExtVec::basis(up()),
        [a] if *a == -(i + 1) => ExtVec::basis(down()),
        [a, b] if *a == i && *b == -(i + 1) => {
            ExtVec::from_terms(n, [(down(), one), (up(), LaurentInt::q(-1))])
        }
        [a, b] if *a == i && *b == -i => ExtVec::term(up(), LaurentInt::q(1)),
        [a, b] if *a == i + 1 && *b == -(i + 1) => ExtVec::basis(down()),
        [a, b, c] if *a == i && *b == -(i + 1) && *c == -i => ExtVec::basis(up()),
        [a, b, c] if *a == i && *b == i + 1 && *c == -(i + 1) => ExtVec::basis(down()),
        _ => ExtVec::zero(n),
    }
}

/// `e_i · v_S`: the mirror image of `f_i` under `S ↦ -S`.
pub fn sp_e_basis(i: usize, s: &Subset) -> ExtVec {
    let img = sp_f_basis(i, &s.negate());
    ExtVec::from_terms(s.n(), img.into_terms().map(|(t, c)| (t.negate(), c)))
}

/// Exponent `(α_i, wt S)` of the `k_i` eigenvalue.
pub fn k_exponent(i: usize, s: &Subset) -> i64 {
    root_pairing(&s.weight(), i)
}

/// Applies an `sp_2n` generator, dividing powers by `[m]!` in `q_i`.
pub fn apply_sp(tag: GeneratorTag, x: &ExtVec) -> Result<ExtVec, HoweError> {
    let n = x.n();
    let i = tag.index as usize;
    if i == 0 || i > n {
        return Err(HoweError::IndexOutOfRange { index: tag.index, n });
    }
    let step: fn(usize, &Subset) -> ExtVec = match tag.kind {
        Kind::E => sp_e_basis,
        Kind::F => sp_f_basis,
        Kind::K => {
            return Ok(x.map_linear(|s| ExtVec::term(*s, LaurentInt::q(k_exponent(i, s)))));
        }
        Kind::Kinv => {
            return Ok(x.map_linear(|s| ExtVec::term(*s, LaurentInt::q(-k_exponent(i, s)))));
        }
        _ => return Err(HoweError::Parse(format!("{tag} is not an sp generator"))),
    };
    let mut y = x.clone();
    for _ in 0..tag.power {
        y = y.map_linear(|s| step(i, s));
    }
    if tag.power == 1 {
        return Ok(y);
    }
    let d = qfact_in(tag.power, if i == n { 2 } else { 1 });
    let mut out = ExtVec::zero(n);
    for (s, c) in y.into_terms() {
        out.add_term(s, c.try_div(&d)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// sl_2

/// `K · v_S = (-q)^{w(S)} v_S`.
pub fn sl2_k_basis(s: &Subset) -> ExtVec {
    ExtVec::term(*s, LaurentInt::neg_q(s.w()))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..items.len() {
            cur.push(items[j]);
            go(items, k, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `E^{(k)} · v_S = q^{C(k,2)} Σ (-q)^{Σ_t w_{>i_t}(S)} v_{S ∪ {±i_1, …, ±i_k}}`.
pub fn sl2_e_div_basis(k: u32, s: &Subset) -> ExtVec {
    let pre = (k as i64) * (k as i64 - 1) / 2;
    let mut out = ExtVec::zero(s.n());
    for cols in combinations(&s.empty_columns(), k as usize) {
        let e: i64 = cols.iter().map(|&c| w_gt(s, c)).sum();
        let t = cols.iter().fold(*s, |t, &c| t.with_column(c));
        out.add_term(t, LaurentInt::neg_q(e).shift(pre));
    }
    out
}

/// `F^{(k)} · v_S = q^{C(k,2)} Σ (-q)^{Σ_t w_{<i_t}(S)} v_{S \ {±i_1, …, ±i_k}}`.
pub fn sl2_f_div_basis(k: u32, s: &Subset) -> ExtVec {
    let pre = (k as i64) * (k as i64 - 1) / 2;
    let mut out = ExtVec::zero(s.n());
    for cols in combinations(&s.full_columns(), k as usize) {
        let e: i64 = cols.iter().map(|&c| w_lt(s, c)).sum();
        let t = cols.iter().fold(*s, |t, &c| t.without_column(c));
        out.add_term(t, LaurentInt::neg_q(e).shift(pre));
    }
    out
}

/// Applies an `sl_2` generator via the closed divided-power formulas.
pub fn apply_sl2(tag: GeneratorTag, x: &ExtVec) -> ExtVec {
    match tag.kind {
        Kind::E => x.map_linear(|s| sl2_e_div_basis(tag.power, s)),
        Kind::F => x.map_linear(|s| sl2_f_div_basis(tag.power, s)),
        Kind::K => x.map_linear(sl2_k_basis),
        Kind::Kinv => x.map_linear(|s| ExtVec::term(*s, LaurentInt::neg_q(-s.w()))),
        Kind::T => apply_t(x),
        Kind::Tinv => apply_t_inv(x),
        _ => panic!("{tag} is not an sl2 generator"),
    }
}

fn e_div(a: u32, x: &ExtVec) -> ExtVec {
    if a == 0 {
        return x.clone();
    }
    x.map_linear(|s| sl2_e_div_basis(a, s))
}

fn f_div(a: u32, x: &ExtVec) -> ExtVec {
    if a == 0 {
        return x.clone();
    }
    x.map_linear(|s| sl2_f_div_basis(a, s))
}

/// The sign `(-ε)^b` of the `b`-th term of `T` on weight `m`.
///
/// With the action as given, `EF - FE` acts on weight `m` by `ε[m]` where
/// `ε = (-1)^{m+1}`, so each `sl_2` summand is a type-`ε` module. Twisting it
/// to type 1 by `E ↦ εE, K ↦ εK` turns Lusztig's `(-1)^b` into `(-ε)^b`,
/// which is `(-1)^b` on odd weights and `1` on even weights.
fn type_sign(m: i64, b: i64) -> i64 {
    if (m * b) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lusztig's `T` on a basis vector of weight `m = |S| - n`:
/// `Σ_{-a+b-c=m} (-ε)^b q^{b-ac} E^{(a)} F^{(b)} E^{(c)}`, see [`type_sign`].
pub fn t_basis(s: &Subset) -> ExtVec {
    let n = s.n() as i64;
    let m = s.w();
    let v = ExtVec::basis(*s);
    let mut out = ExtVec::zero(s.n());
    for a in 0..=n + 1 {
        for c in 0..=n + 1 {
            let b = m + a + c;
            if b < 0 || b > n + 1 {
                continue;
            }
            let y = e_div(a as u32, &f_div(b as u32, &e_div(c as u32, &v)));
            let sign = type_sign(m, b);
            out.add_scaled(&y, &LaurentInt::monomial(sign, b - a * c));
        }
    }
    out
}

/// `T^{-1}` on weight `m`: `Σ_{a-b+c=m} (-ε)^b q^{ac-b} F^{(a)} E^{(b)} F^{(c)}`.
pub fn t_inv_basis(s: &Subset) -> ExtVec {
    let n = s.n() as i64;
    let m = s.w();
    let v = ExtVec::basis(*s);
    let mut out = ExtVec::zero(s.n());
    for a in 0..=n + 1 {
        for c in 0..=n + 1 {
            let b = a + c - m;
            if b < 0 || b > n + 1 {
                continue;
            }
            let y = f_div(a as u32, &e_div(b as u32, &f_div(c as u32, &v)));
            let sign = type_sign(m, b);
            out.add_scaled(&y, &LaurentInt::monomial(sign, a * c - b));
        }
    }
    out
}

pub fn apply_t(x: &ExtVec) -> ExtVec {
    x.map_linear(t_basis)
}

pub fn apply_t_inv(x: &ExtVec) -> ExtVec {
    x.map_linear(t_inv_basis)
}

// ---------------------------------------------------------------------------
// Differential-operator form

/// `|S_{i→}|`: nodes of `S` in columns right of `i`.
fn right_count(s: &Subset, i: usize) -> i64 {
    ((i + 1)..=s.n()).map(|c| s.dots(c) as i64).sum()
}

/// `e · v_S = Σ_{±i undotted} (-q)^i (-q)^{|S_{i→}|} v_{S ∪ {±i}}`.
pub fn diff_e_basis(s: &Subset) -> ExtVec {
    let mut out = ExtVec::zero(s.n());
    for c in s.empty_columns() {
        out.add_term(s.with_column(c), LaurentInt::neg_q(c as i64 + right_count(s, c)));
    }
    out
}

/// `f · v_S = Σ_{±i fully dotted} (-q)^i (-q)^{|S_{i→}|} v_{S \ {±i}}`.
pub fn diff_f_basis(s: &Subset) -> ExtVec {
    let mut out = ExtVec::zero(s.n());
    for c in s.full_columns() {
        out.add_term(s.without_column(c), LaurentInt::neg_q(c as i64 + right_count(s, c)));
    }
    out
}

/// Applies `e`, `f`, `pr_m`, or the rescaled `E = q^{-|S|-1} e` and `F = q^{-n} f`
/// (each taken on the weight space of its input). Powers are plain powers.
pub fn apply_diff(tag: GeneratorTag, x: &ExtVec) -> ExtVec {
    let n = x.n() as i64;
    let mut y = x.clone();
    let reps = if tag.kind == Kind::Pr { 1 } else { tag.power };
    for _ in 0..reps {
        y = match tag.kind {
            Kind::DiffE => y.map_linear(diff_e_basis),
            Kind::DiffF => y.map_linear(diff_f_basis),
            Kind::E => y.map_linear(|s| diff_e_basis(s).scale(&LaurentInt::q(-(s.len() as i64) - 1))),
            Kind::F => y.map_linear(|s| diff_f_basis(s).scale(&LaurentInt::q(-n))),
            Kind::Pr => y.map_linear(|s| {
                if s.w() == tag.index {
                    ExtVec::basis(*s)
                } else {
                    ExtVec::zero(s.n())
                }
            }),
            _ => panic!("{tag} is not a differential-form generator"),
        };
    }
    y
}

// ---------------------------------------------------------------------------
// Matrices

/// Matrix of an operator on the standard basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub rows: Vec<Subset>,
    pub cols: Vec<Subset>,
    pub matrix: LaurentMatrix,
}

/// Degree shift of a generator, or `None` for `T` (which sends `k` to `2n - k`).
fn degree_shift(tag: &GeneratorTag) -> Option<i64> {
    let p = tag.power as i64;
    match (tag.side, tag.kind) {
        (Side::Sp, _) | (_, Kind::K | Kind::Kinv | Kind::Pr) => Some(0),
        (_, Kind::T | Kind::Tinv) => None,
        (_, Kind::E | Kind::DiffE) => Some(2 * p),
        (_, Kind::F | Kind::DiffF) => Some(-2 * p),
    }
}

/// The matrix of `tag` restricted to the given degrees (all degrees when
/// `degrees` is `None`). Columns are the domain basis and rows the target
/// basis, both in [`Subset`] order.
pub fn operator_matrix(
    tag: GeneratorTag,
    n: usize,
    degrees: Option<&[usize]>,
) -> Result<OperatorMatrix, HoweError> {
    let all: Vec<usize> = (0..=2 * n).collect();
    let degrees = degrees.unwrap_or(&all);
    let mut target: Vec<usize> = degrees
        .iter()
        .filter_map(|&d| match degree_shift(&tag) {
            Some(s) => {
                let t = d as i64 + s;
                (0..=2 * n as i64).contains(&t).then_some(t as usize)
            }
            None => Some(2 * n - d),
        })
        .collect();
    target.sort();
    target.dedup();
    let mut cols: Vec<Subset> = degrees.iter().flat_map(|&d| Subset::of_size(n, d)).collect();
    cols.sort();
    let mut rows: Vec<Subset> = target.iter().flat_map(|&d| Subset::of_size(n, d)).collect();
    rows.sort();
    let index: std::collections::HashMap<Subset, usize> =
        rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = LaurentMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (t, c) in apply(tag, &ExtVec::basis(*s))?.into_terms() {
            m.set(index[&t], j, c);
        }
    }
    Ok(OperatorMatrix { rows, cols, matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(pairs.iter().copied())
    }

    fn v(n: usize, s: &[i64]) -> ExtVec {
        ExtVec::basis(Subset::of(n, s))
    }

    #[test]
    fn sp_examples() {
        let f1 = GeneratorTag::sp(Kind::F, 1);
        let out = apply_sp(f1, &v(2, &[1, -2])).unwrap();
        let want = ExtVec::from_terms(
            2,
            [(Subset::of(2, &[1, -1]), LaurentInt::one()), (Subset::of(2, &[2, -2]), LaurentInt::q(-1))],
        );
        assert_eq!(out, want);
        assert_eq!(apply_sp(GeneratorTag::sp(Kind::F, 3), &v(3, &[3])).unwrap(), v(3, &[-3]));
        assert_eq!(apply_sp(f1.pow(2), &v(2, &[1, -2])).unwrap(), v(2, &[2, -1]));
    }

    #[test]
    fn sl2_examples() {
        let f = GeneratorTag::sl2(Kind::F);
        let out = apply_sl2(f, &v(4, &[1, 3, -4, -3, -1]));
        assert_eq!(out, &v(4, &[3, -4, -3]) + &v(4, &[1, -4, -1]));
        let e = apply_sl2(GeneratorTag::sl2(Kind::E), &v(2, &[]));
        let want = ExtVec::from_terms(
            2,
            [(Subset::of(2, &[1, -1]), LaurentInt::neg_q(-1)), (Subset::of(2, &[2, -2]), LaurentInt::one())],
        );
        assert_eq!(e, want);
        assert!(apply_sl2(f, &v(3, &[1, -2, 3])).is_zero());
    }

    #[test]
    fn t_examples() {
        assert_eq!(apply_t(&v(1, &[])), v(1, &[1, -1]));
        assert_eq!(apply_t(&v(1, &[1])), v(1, &[1]));
        assert_eq!(apply_t_inv(&apply_t(&v(2, &[1, -2]))), v(2, &[1, -2]));
    }

    #[test]
    fn diff_examples() {
        let f = GeneratorTag::diff(Kind::DiffF);
        let out = apply_diff(f, &v(3, &[1, 2, -2, -1]));
        let want = ExtVec::from_terms(
            3,
            [(Subset::of(3, &[2, -2]), LaurentInt::neg_q(3)), (Subset::of(3, &[1, -1]), LaurentInt::neg_q(2))],
        );
        assert_eq!(out, want);
        assert_eq!(apply_diff(GeneratorTag::pr(-1), &v(2, &[1])), v(2, &[1]));
        assert!(apply_diff(GeneratorTag::pr(0), &v(2, &[1])).is_zero());
    }

    #[test]
    fn k_matrix_at_rank_one() {
        let m = operator_matrix(GeneratorTag::sl2(Kind::K), 1, None).unwrap();
        let diag: Vec<LaurentInt> = (0..4).map(|i| m.matrix.get(i, i).clone()).collect();
        assert_eq!(diag, vec![lp(&[(-1, -1)]), LaurentInt::one(), LaurentInt::one(), lp(&[(1, -1)])]);
    }

    #[test]
    fn word_parsing() {
        let w = parse_word("f1^2 e3 K E F(2) T pr0 Tinv kinv2", 3).unwrap();
        assert_eq!(w.len(), 9);
        assert_eq!(w[0], GeneratorTag::sp(Kind::F, 1).pow(2));
        assert_eq!(w[4], GeneratorTag::sl2(Kind::F).pow(2));
        assert!(parse_word("f4", 3).is_err());
        assert!(parse_word("K^2", 3).is_err());
        assert!(parse_word("x1", 3).is_err());
    }
}
