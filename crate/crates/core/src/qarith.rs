// SPDX-License-Identifier: MIT OR Apache-2.0
//! Coefficient arithmetic over `A = Z[q, q^-1]`.
//!
//! [`LaurentInt`] is a sparse integer Laurent polynomial with arbitrary
//! precision coefficients. On top of it live the quantum integers, factorials
//! and binomials, and the `(p, ell)`-adic digit combinatorics that decide
//! when a quantum binomial vanishes after specialization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::HoweError;

/// An integer Laurent polynomial in `q`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentInt {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^e`.
    pub fn q(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// `(-q)^e`, which is `(-1)^e q^e` for any integer `e`.
    pub fn neg_q(e: i64) -> Self {
        Self::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when the polynomial is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    /// True for `±q^e`, the units of `A`.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some_and(|(c, _)| c.abs().is_one())
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    /// Multiplies by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// The bar conjugation `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution q -> q^0 is not a ring map on A");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `A`.
    pub fn div_exact(&self, d: &LaurentInt) -> Option<LaurentInt> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            let mut out = BTreeMap::new();
            for (ee, cc) in &self.terms {
                let (qt, r) = cc.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.insert(ee - e, qt);
            }
            return Some(Self { terms: out });
        }
        // Long division from the top degree. The quotient's degree span is
        // bounded by the difference of spans, so a failure shows up as a
        // leftover or as a term outside that window.
        let dmin = d.min_exp().unwrap();
        let dense = |x: &LaurentInt, lo: i64, hi: i64| -> Vec<BigInt> {
            (lo..=hi).map(|e| x.coeff(e)).collect()
        };
        let (smin, smax) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let dvec = dense(d, dmin, d.max_exp().unwrap());
        let dlen = dvec.len();
        if smax - smin + 1 < dlen as i64 {
            return None;
        }
        let mut rem = dense(self, smin, smax);
        let qlen = rem.len() + 1 - dlen;
        let mut quot = vec![BigInt::zero(); qlen];
        let dlead = &dvec[dlen - 1];
        for qi in (0..qlen).rev() {
            let top = &rem[qi + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (qt, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in dvec.iter().enumerate() {
                rem[qi + j] -= dc * &qt;
            }
            quot[qi] = qt;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let lo = smin - dmin;
        Some(Self {
            terms: quot
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        })
    }

    /// Exact quotient, reporting a defect when the division is not exact.
    pub fn try_div(&self, d: &LaurentInt) -> Result<LaurentInt, HoweError> {
        self.div_exact(d).ok_or_else(|| HoweError::InexactDivision {
            dividend: self.to_string(),
            divisor: d.to_string(),
        })
    }

    /// Primitive part with positive leading coefficient, lowest exponent 0.
    fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let lead_neg = self.terms.values().next_back().unwrap().is_negative();
        let c = if lead_neg { -c } else { c };
        let m = self.min_exp().unwrap();
        Self {
            terms: self.terms.iter().map(|(e, x)| (e - m, x / &c)).collect(),
        }
    }

    /// A gcd in `A`, normalized to have positive leading coefficient and
    /// lowest exponent zero. Units `±q^e` are ignored.
    pub fn gcd(&self, other: &LaurentInt) -> LaurentInt {
        if self.is_zero() {
            return other.primitive_normalized().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_normalized().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_normalized();
        let mut b = other.primitive_normalized();
        if a.max_exp() < b.max_exp() {
            std::mem::swap(&mut a, &mut b);
        }
        // Primitive polynomial remainder sequence over Z[q].
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r.primitive_normalized();
        }
        a.scale(&cont)
    }
}

/// Pseudo-remainder of `a` by `b`, both with lowest exponent 0.
fn pseudo_rem(a: &LaurentInt, b: &LaurentInt) -> LaurentInt {
    let bdeg = b.max_exp().unwrap();
    let blead = b.terms[&bdeg].clone();
    let mut r = a.clone();
    while let Some(rdeg) = r.max_exp() {
        if rdeg < bdeg {
            break;
        }
        let rlead = r.terms[&rdeg].clone();
        r = r.scale(&blead);
        for (e, c) in &b.terms {
            r.add_term(e + rdeg - bdeg, -(c * &rlead));
        }
    }
    r
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentInt({self})")
    }
}

impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            m.serialize_entry(&e.to_string(), &BigIntJson(c))?;
        }
        m.end()
    }
}

/// Coefficients go out as JSON numbers; `serde_json`'s arbitrary precision is
/// not enabled, so huge values fall back to strings.
struct BigIntJson<'a>(&'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for LaurentInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an object mapping exponent strings to integers")
            }
            fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> Result<LaurentInt, M::Error> {
                let mut out = LaurentInt::zero();
                while let Some((k, v)) = map.next_entry::<String, serde_json::Value>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c: BigInt = match v {
                        serde_json::Value::Number(n) => {
                            n.to_string().parse().map_err(de::Error::custom)?
                        }
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        other => return Err(de::Error::custom(format!("bad coefficient {other}"))),
                    };
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentInt {
    fn add_assign(&mut self, rhs: LaurentInt) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -(self.clone())
    }
}

impl Mul<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let (Some(lo1), Some(lo2)) = (self.min_exp(), rhs.min_exp()) else {
            return LaurentInt::zero();
        };
        let span = (self.max_exp().unwrap() - lo1 + rhs.max_exp().unwrap() - lo2) as usize + 1;
        let mut acc = vec![BigInt::zero(); span];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                acc[(e1 - lo1 + e2 - lo2) as usize] += c1 * c2;
            }
        }
        let lo = lo1 + lo2;
        LaurentInt {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

impl MulAssign<&LaurentInt> for LaurentInt {
    fn mul_assign(&mut self, rhs: &LaurentInt) {
        *self = &*self * rhs;
    }
}

/// The quantum integer `[k] = (q^k - q^-k)/(q - q^-1)`.
pub fn qint(k: i64) -> LaurentInt {
    if k < 0 {
        return -qint(-k);
    }
    LaurentInt::from_terms((0..k).map(|j| (-k + 1 + 2 * j, 1)))
}

/// `[k]` in the variable `q^step` (step 2 gives the long-root `[k]_{q_n}`).
pub fn qint_in(k: i64, step: i64) -> LaurentInt {
    qint(k).substitute_power(step)
}

/// Quantum integer attached to the simple root `alpha_i` of `sp_2n`:
/// `q_i = q` for `i < n` and `q_n = q^2`.
pub fn qint_i(k: i64, i: usize, n: usize) -> LaurentInt {
    qint_in(k, if i == n { 2 } else { 1 })
}

/// `[k]! = [1][2]...[k]` for `k >= 0`.
pub fn qfact(k: u32) -> LaurentInt {
    qfact_in(k, 1)
}

pub fn qfact_in(k: u32, step: i64) -> LaurentInt {
    (1..=k as i64).fold(LaurentInt::one(), |acc, j| &acc * &qint_in(j, step))
}

/// The quantum binomial `[k; l] = [k][k-1]...[k-l+1] / [l]!` for any integer `k`.
pub fn qbinom(k: i64, l: u32) -> LaurentInt {
    // [k; j] = [k; j-1] [k-j+1] / [j], every intermediate quotient exact.
    (1..=l as i64).fold(LaurentInt::one(), |acc, j| {
        (&acc * &qint(k - j + 1))
            .try_div(&qint(j))
            .expect("[k; j-1][k-j+1] is divisible by [j]")
    })
}

/// Standalone bar conjugation `q -> q^-1`.
pub fn bar_conj(x: &LaurentInt) -> LaurentInt {
    x.bar()
}

/// A specialization of `A` to a field: characteristic `p` (or `None` for
/// characteristic zero) and quantum characteristic `ell`, the least `k` with
/// `[k] = 0` (or `None` when no quantum integer vanishes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Specialization {
    pub p: Option<u64>,
    pub ell: Option<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Specialization {
    pub fn new(p: Option<u64>, ell: Option<u64>) -> Result<Self, HoweError> {
        let bad = |why: &str| HoweError::BadSpecialization(format!("(p={p:?}, ell={ell:?}): {why}"));
        if let Some(p) = p {
            if !is_prime(p) {
                return Err(bad("p must be prime"));
            }
            if ell.is_none() {
                return Err(bad("a finite characteristic forces a finite ell"));
            }
        }
        if let Some(l) = ell {
            if l < 2 {
                return Err(bad("ell must be at least 2"));
            }
            if let Some(p) = p {
                if l != p && l % p == 0 {
                    return Err(bad("ell must equal p or be coprime to p"));
                }
            }
        }
        Ok(Self { p, ell })
    }

    /// Generic specialization `(inf, inf)`: characteristic zero, `q` not a root of unity.
    pub fn generic() -> Self {
        Self { p: None, ell: None }
    }

    /// Parses `"7,3"`, `"inf,4"` or `"inf,inf"` (also `"0"` for infinity).
    pub fn parse(s: &str) -> Result<Self, HoweError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(HoweError::BadSpecialization(format!("expected P,L but got {s:?}")));
        }
        Self::new(parse_inf(parts[0])?, parse_inf(parts[1])?)
    }

    /// Place value `p^(j)`: 1 for `j = 0`, else `p^(j-1) ell`.
    pub fn place(&self, j: usize) -> Option<u128> {
        if j == 0 {
            return Some(1);
        }
        let l = self.ell? as u128;
        match self.p {
            None if j == 1 => Some(l),
            None => None,
            Some(p) => (p as u128).checked_pow(j as u32 - 1)?.checked_mul(l),
        }
    }
}

/// Parses an integer or an infinity marker (`inf`, `infinity`, `0`).
pub fn parse_inf(s: &str) -> Result<Option<u64>, HoweError> {
    match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "oo" | "0" => Ok(None),
        t => t
            .parse::<u64>()
            .map(Some)
            .map_err(|_| HoweError::BadSpecialization(format!("not an integer or inf: {s:?}"))),
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: Option<u64>| x.map_or_else(|| "inf".to_string(), |v| v.to_string());
        write!(f, "({},{})", show(self.p), show(self.ell))
    }
}

/// `(p, ell)`-adic digits stored low to high: `digits[0] = a_0`.
///
/// Printed expansions usually list digits high to low, so `68` at `(7,3)`
/// is written `[3,1,2]` but stored as `[2,1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digits(pub Vec<u64>);

impl Digits {
    pub fn reconstruct(&self, s: Specialization) -> u128 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, a)| *a as u128 * s.place(j).unwrap_or(1))
            .sum()
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Digits) -> bool {
        (0..self.0.len().max(other.0.len())).all(|j| self.get(j) >= other.get(j))
    }
}

/// The `(p, ell)`-adic expansion of `m`.
pub fn padic_expand(m: u64, s: Specialization) -> Digits {
    let Some(l) = s.ell else {
        return Digits(vec![m]);
    };
    let mut d = vec![m % l];
    let mut rest = m / l;
    match s.p {
        None => {
            if rest > 0 {
                d.push(rest);
            }
        }
        Some(p) => {
            while rest > 0 {
                d.push(rest % p);
                rest /= p;
            }
        }
    }
    Digits(d)
}

/// Quantum Lucas criterion: the specialized binomial `[m; i]` is nonzero
/// iff the digits of `m` dominate those of `i`.
pub fn qbinom_nonzero(m: u64, i: u64, s: Specialization) -> bool {
    padic_expand(m, s).dominates(&padic_expand(i, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(pairs.iter().copied())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(2), lp(&[(-1, 1), (1, 1)]));
        assert!(qint(0).is_zero());
        assert_eq!(qint(-3), lp(&[(-2, -1), (0, -1), (2, -1)]));
    }

    #[test]
    fn binomials() {
        assert_eq!(qbinom(2, 1), qint(2));
        assert_eq!(qbinom(4, 2), lp(&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]));
        assert!(qbinom(7, 0).is_one());
        // [-1][-2]/[2] = [1][2]/[2] = 1
        assert!(qbinom(-1, 2).is_one());
    }

    #[test]
    fn division_reports_inexact() {
        assert!(qint(3).div_exact(&qint(2)).is_none());
        assert!(qint(3).try_div(&qint(2)).is_err());
        assert_eq!(qint(4).div_exact(&qint(2)).unwrap(), lp(&[(-2, 1), (2, 1)]));
    }

    #[test]
    fn gcd_of_quantum_integers() {
        let g = qint(6).gcd(&qint(4));
        // [2] up to a unit
        assert_eq!(g, lp(&[(0, 1), (2, 1)]));
        assert_eq!(qint(5).gcd(&qint(3)), LaurentInt::one());
    }

    #[test]
    fn digits_examples() {
        let s73 = Specialization::new(Some(7), Some(3)).unwrap();
        assert_eq!(padic_expand(68, s73).0, vec![2, 1, 3]);
        assert_eq!(padic_expand(28, s73).0, vec![1, 2, 1]);
        assert_eq!(padic_expand(0, s73).0, vec![0]);
        assert!(!qbinom_nonzero(68, 28, s73));
        assert!(qbinom_nonzero(68, 25, s73));
        let s = Specialization::new(None, Some(5)).unwrap();
        assert_eq!(padic_expand(68, s).0, vec![3, 13]);
    }

    #[test]
    fn specialization_rules() {
        assert!(Specialization::new(Some(7), None).is_err());
        assert!(Specialization::new(None, Some(1)).is_err());
        assert!(Specialization::new(Some(4), Some(3)).is_err());
        assert!(Specialization::new(Some(3), Some(6)).is_err());
        assert!(Specialization::new(Some(3), Some(3)).is_ok());
        assert_eq!(Specialization::parse("inf,inf").unwrap(), Specialization::generic());
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&qint(2)).unwrap();
        assert_eq!(s, r#"{"-1":1,"1":1}"#);
        let back: LaurentInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, qint(2));
    }
}
