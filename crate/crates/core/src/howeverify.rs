// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exhaustive certificates at fixed rank.
//!
//! Each check sweeps its whole finite domain (every basis vector, generator,
//! degree or weight space) with exact arithmetic, so a passing report is a
//! finite proof of the statement at that rank. A failing report carries the
//! first counterexample in sweep order.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{
    apply, apply_diff, apply_sl2, apply_sp, apply_t, apply_t_inv, k_exponent, operator_matrix, sp_f_basis,
    GeneratorTag, Kind,
};
use crate::canonical::{canonical_vector, fundamental_subsets, inverse_base_change, to_canonical};
use crate::characters::{
    decomposition_closure, dim_fundamental, howe_dimension, ringel_crosscheck, tilting_weyl_matrix,
    weight_graded_identity,
};
use crate::error::HoweError;
use crate::exactla::{in_span, kernel_basis, normalize_vector, rank, LaurentMatrix};
use crate::extalg::{
    bar, bilinear, confluence_report, dual_scalar, leq, normal_form_counts, omega_twist, sesquilinear, v_k_k2i,
    ExtVec, Subset,
};
use crate::qarith::{qfact, qint, qint_in, LaurentInt, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
}

/// Outcome of one check. A failing report always has a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: CheckParams,
    pub status: Status,
    pub assertions: u64,
    pub witness: Option<Value>,
    /// Check-specific numbers such as kernel dimensions.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Names of all checks, in the order [`run_all`] runs them.
pub const REGISTRY: &[&str] = &[
    "flatness",
    "confluence",
    "commuting",
    "sp_relations",
    "divided_integrality",
    "singular_vectors",
    "kernel_weyl",
    "filtration_kernels",
    "filtration_scalar",
    "T_iso",
    "self_dual",
    "omega_twist",
    "bar_canonical",
    "diff_sl2",
    "diff_commute",
    "images_agree",
    "character_identity",
    "howe_tilting_shadow",
];

/// Largest rank a check accepts by default.
pub fn default_bound(check: &str) -> usize {
    match check {
        "images_agree" => 2,
        "flatness" | "confluence" | "filtration_scalar" | "omega_twist" => 4,
        "character_identity" => 6,
        // Only integer arithmetic on (n+1) x (n+1) tables.
        "howe_tilting_shadow" => 100,
        _ => 3,
    }
}

/// Counts assertions and keeps the first failure.
#[derive(Default)]
struct Tally {
    assertions: u64,
    witness: Option<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.assertions += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.assertions += other.assertions;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    /// Runs `f` on every item in parallel and merges the tallies in item order.
    fn sweep<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
        let parts: Vec<Tally> = items
            .par_iter()
            .map(|x| {
                let mut t = Tally::default();
                f(x, &mut t);
                t
            })
            .collect();
        let mut out = Tally::default();
        for p in parts {
            out.absorb(p);
        }
        out
    }
}

fn mismatch(input: impl Into<Value>, lhs: impl ToString, rhs: impl ToString) -> Value {
    json!({"input": input.into(), "lhs": lhs.to_string(), "rhs": rhs.to_string()})
}

fn sp_generators(n: usize) -> Vec<GeneratorTag> {
    (1..=n)
        .flat_map(|i| [Kind::E, Kind::F, Kind::K].map(|k| GeneratorTag::sp(k, i)))
        .collect()
}

fn sp(tag: GeneratorTag, x: &ExtVec) -> ExtVec {
    apply_sp(tag, x).expect("sp action stays integral")
}

/// Runs a check with the default rank bounds.
pub fn run_check(name: &str, n: usize, spec: Option<Specialization>) -> Result<CheckReport, HoweError> {
    run_check_bounded(name, n, spec, None)
}

/// Runs a check, with `max_rank` replacing the default bound when given.
pub fn run_check_bounded(
    name: &str,
    n: usize,
    spec: Option<Specialization>,
    max_rank: Option<usize>,
) -> Result<CheckReport, HoweError> {
    if !REGISTRY.contains(&name) {
        return Err(HoweError::UnknownCheck(name.to_string()));
    }
    if n == 0 {
        return Err(HoweError::ZeroRank);
    }
    let bound = max_rank.unwrap_or_else(|| default_bound(name));
    if n > bound {
        return Err(HoweError::RankBound { check: name.to_string(), n, bound });
    }
    let spec_used = spec.unwrap_or_else(Specialization::generic);
    let (tally, data) = match name {
        "flatness" => flatness(n),
        "confluence" => confluence(n),
        "commuting" => commuting(n),
        "sp_relations" => sp_relations(n),
        "divided_integrality" => divided_integrality(n),
        "singular_vectors" => singular_vectors(n)?,
        "kernel_weyl" => kernel_weyl(n)?,
        "filtration_kernels" => filtration_kernels(n)?,
        "filtration_scalar" => filtration_scalar_check(n),
        "T_iso" => t_iso(n),
        "self_dual" => self_dual(n),
        "omega_twist" => omega_twist_check(n),
        "bar_canonical" => bar_canonical(n)?,
        "diff_sl2" => diff_sl2(n),
        "diff_commute" => diff_commute(n),
        "images_agree" => images_agree(n)?,
        "character_identity" => character_identity(n),
        "howe_tilting_shadow" => howe_tilting_shadow(n, spec_used)?,
        _ => unreachable!("registry membership checked above"),
    };
    let status = if tally.witness.is_none() { Status::Pass } else { Status::Fail };
    Ok(CheckReport {
        check: name.to_string(),
        params: CheckParams {
            n,
            spec: (name == "howe_tilting_shadow").then(|| spec_used.to_string()),
        },
        status,
        assertions: tally.assertions,
        witness: tally.witness,
        data,
    })
}

/// Runs the whole registry in order. `howe_tilting_shadow` runs once per
/// specialization (generic when the list is empty), every other check once.
/// Checks whose bound is below `n` run at their bound.
pub fn run_all(n: usize, specs: &[Specialization], max_rank: Option<usize>) -> Result<Vec<CheckReport>, HoweError> {
    let generic = [Specialization::generic()];
    let specs = if specs.is_empty() { &generic[..] } else { specs };
    let mut jobs: Vec<(&str, usize, Option<Specialization>)> = Vec::new();
    for &name in REGISTRY {
        let rank = n.min(max_rank.unwrap_or_else(|| default_bound(name)));
        if name == "howe_tilting_shadow" {
            jobs.extend(specs.iter().map(|s| (name, rank, Some(*s))));
        } else {
            jobs.push((name, rank, None));
        }
    }
    jobs.par_iter()
        .map(|(name, rank, spec)| run_check_bounded(name, *rank, *spec, max_rank))
        .collect()
}

// ---------------------------------------------------------------------------
// The exterior algebra

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn flatness(n: usize) -> (Tally, Value) {
    let mut t = Tally::default();
    let counts = normal_form_counts(n);
    for (k, c) in counts.iter().enumerate() {
        let want = binomial(2 * n, k);
        t.check(*c == want, || mismatch(json!({"degree": k}), c, want));
    }
    let total: usize = counts.iter().sum();
    t.check(total == 1 << (2 * n), || mismatch(json!("total"), total, 1usize << (2 * n)));
    (t, json!({"normal_forms": counts, "total": total}))
}

fn confluence(n: usize) -> (Tally, Value) {
    let rep = confluence_report(n);
    let mut t = Tally { assertions: rep.overlaps as u64, witness: None };
    if let Some(f) = rep.failures.first() {
        t.witness = Some(json!({"overlap": f}));
    }
    (t, json!({"overlaps": rep.overlaps, "families": rep.families.len()}))
}

// ---------------------------------------------------------------------------
// The actions

fn commuting(n: usize) -> (Tally, Value) {
    let sps = sp_generators(n);
    let mut sl2 = vec![GeneratorTag::sl2(Kind::K)];
    for p in 1..=n as u32 {
        sl2.push(GeneratorTag::sl2(Kind::E).pow(p));
        sl2.push(GeneratorTag::sl2(Kind::F).pow(p));
    }
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for a in &sps {
            for b in &sl2 {
                let l = sp(*a, &apply_sl2(*b, &v));
                let r = apply_sl2(*b, &sp(*a, &v));
                t.check(l == r, || mismatch(json!({"v": s.to_string(), "x": a.to_string(), "X": b.to_string()}), &l, &r));
            }
        }
    });
    (t, Value::Null)
}

fn sp_relations(n: usize) -> (Tally, Value) {
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for i in 1..=n {
            for j in 1..=n {
                let e = GeneratorTag::sp(Kind::E, i);
                let f = GeneratorTag::sp(Kind::F, j);
                let l = &sp(e, &sp(f, &v)) - &sp(f, &sp(e, &v));
                let r = if i == j {
                    let d = if i == n { 2 } else { 1 };
                    v.scale(&qint_in(k_exponent(i, s) / d, d))
                } else {
                    ExtVec::zero(n)
                };
                t.check(l == r, || mismatch(json!({"v": s.to_string(), "e": i, "f": j}), &l, &r));
            }
        }
    });
    (t, Value::Null)
}

fn divided_integrality(n: usize) -> (Tally, Value) {
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for i in 1..=n {
            for kind in [Kind::E, Kind::F] {
                for m in 2..=3u32 {
                    let tag = GeneratorTag::sp(kind, i).pow(m);
                    let out = apply_sp(tag, &v);
                    t.check(out.is_ok(), || json!({"v": s.to_string(), "x": tag.to_string()}));
                }
            }
        }
        for kind in [Kind::E, Kind::F] {
            for m in 2..=n as u32 {
                let closed = apply_sl2(GeneratorTag::sl2(kind).pow(m), &v).scale(&qfact(m));
                let mut power = v.clone();
                for _ in 0..m {
                    power = apply_sl2(GeneratorTag::sl2(kind), &power);
                }
                t.check(closed == power, || {
                    mismatch(json!({"v": s.to_string(), "x": format!("{kind:?}^{m}")}), &closed, &power)
                });
            }
        }
    });
    (t, Value::Null)
}

/// Basis vectors grouped by joint weight (sp weight, degree).
fn weight_spaces(n: usize) -> BTreeMap<(Vec<i64>, usize), Vec<Subset>> {
    let mut out: BTreeMap<(Vec<i64>, usize), Vec<Subset>> = BTreeMap::new();
    for s in Subset::all(n) {
        out.entry((s.weight(), s.len())).or_default().push(s);
    }
    out
}

/// Matrix of a family of operators stacked vertically, restricted to `cols`.
fn stacked_matrix(cols: &[Subset], ops: &[&dyn Fn(&ExtVec) -> ExtVec]) -> LaurentMatrix {
    let images: Vec<Vec<ExtVec>> =
        cols.iter().map(|s| ops.iter().map(|op| op(&ExtVec::basis(*s))).collect()).collect();
    let mut rows: Vec<(usize, Subset)> = Vec::new();
    for img in &images {
        for (o, y) in img.iter().enumerate() {
            rows.extend(y.terms().map(|(t, _)| (o, *t)));
        }
    }
    rows.sort();
    rows.dedup();
    let index: HashMap<(usize, Subset), usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut m = LaurentMatrix::zeros(rows.len(), cols.len());
    for (j, img) in images.iter().enumerate() {
        for (o, y) in img.iter().enumerate() {
            for (t, c) in y.terms() {
                m.set(index[&(o, *t)], j, c.clone());
            }
        }
    }
    m
}

fn to_ext(n: usize, cols: &[Subset], coords: &[LaurentInt]) -> ExtVec {
    ExtVec::from_terms(n, cols.iter().copied().zip(coords.iter().cloned()))
}

fn singular_vectors(n: usize) -> Result<(Tally, Value), HoweError> {
    let spaces: Vec<((Vec<i64>, usize), Vec<Subset>)> = weight_spaces(n).into_iter().collect();
    let results: Vec<Result<(Tally, Option<usize>), HoweError>> = spaces
        .par_iter()
        .map(|((wt, deg), cols)| {
            let mut t = Tally::default();
            let es: Vec<Box<dyn Fn(&ExtVec) -> ExtVec>> = (1..=n)
                .map(|i| Box::new(move |x: &ExtVec| sp(GeneratorTag::sp(Kind::E, i), x)) as Box<dyn Fn(&ExtVec) -> ExtVec>)
                .chain(std::iter::once(
                    Box::new(|x: &ExtVec| apply_sl2(GeneratorTag::sl2(Kind::F), x)) as Box<dyn Fn(&ExtVec) -> ExtVec>,
                ))
                .collect();
            let refs: Vec<&dyn Fn(&ExtVec) -> ExtVec> = es.iter().map(|b| b.as_ref()).collect();
            let m = stacked_matrix(cols, &refs);
            let ker = if m.rows() == 0 {
                (0..cols.len())
                    .map(|j| (0..cols.len()).map(|i| LaurentInt::from_int(i64::from(i == j))).collect())
                    .collect()
            } else {
                kernel_basis(&m)?
            };
            let fundamental = *deg <= n && *wt == Subset::initial(n, *deg).weight();
            let want = usize::from(fundamental);
            t.check(ker.len() == want, || {
                mismatch(json!({"weight": wt, "degree": deg}), ker.len(), want)
            });
            if fundamental && ker.len() == 1 {
                let got = to_ext(n, cols, &ker[0]);
                let v = ExtVec::basis(Subset::initial(n, *deg));
                t.check(got == v, || mismatch(json!({"degree": deg}), &got, &v));
            }
            Ok((t, fundamental.then_some(ker.len())))
        })
        .collect();
    let mut t = Tally::default();
    let mut lines = Vec::new();
    for r in results {
        let (part, line) = r?;
        t.absorb(part);
        lines.extend(line);
    }
    Ok((t, json!({"weight_spaces": spaces.len(), "singular_lines": lines.len()})))
}

fn kernel_weyl(n: usize) -> Result<(Tally, Value), HoweError> {
    let mut t = Tally::default();
    let mut dims = Vec::new();
    for k in 0..=2 * n {
        let m = operator_matrix(GeneratorTag::sl2(Kind::F), n, Some(&[k]))?;
        let cols = m.cols.clone();
        let ker = if m.rows.is_empty() {
            (0..cols.len())
                .map(|j| (0..cols.len()).map(|i| LaurentInt::from_int(i64::from(i == j))).collect())
                .collect()
        } else {
            kernel_basis(&m.matrix)?
        };
        let want = if k <= n { binomial(2 * n, k) - if k >= 2 { binomial(2 * n, k - 2) } else { 0 } } else { 0 };
        t.check(ker.len() == want, || mismatch(json!({"degree": k}), ker.len(), want));
        dims.push(ker.len());
        let fund = if k <= n { fundamental_subsets(n, k) } else { Vec::new() };
        t.check(fund.len() == want, || mismatch(json!({"degree": k, "crystal": true}), fund.len(), want));
        // b_S lies in the kernel, exactly and as a Q(q)-combination of the kernel basis.
        for s in &fund {
            let b = canonical_vector(s);
            let fb = apply_sl2(GeneratorTag::sl2(Kind::F), &b);
            t.check(fb.is_zero(), || mismatch(json!({"b": s.to_string()}), &fb, "0"));
            let coords: Vec<LaurentInt> = cols.iter().map(|c| b.coeff(c)).collect();
            let inside = in_span(&ker, &coords)?;
            t.check(inside, || json!({"b": s.to_string(), "in_kernel_span": false}));
        }
        // Kernel vectors have A-coordinates supported on C_k in the canonical basis.
        let (subs, y) = inverse_base_change(n, k)?;
        let pos: HashMap<Subset, usize> = cols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        for v in &ker {
            let x = to_ext(n, &cols, v);
            let mut coords_b = Vec::new();
            for (r, s) in subs.iter().enumerate() {
                let mut c = LaurentInt::zero();
                for (j, t2) in subs.iter().enumerate() {
                    c += &(y.get(r, j) * &v[pos[t2]]);
                }
                coords_b.push((*s, c));
            }
            let via_y: BTreeMap<Subset, LaurentInt> = coords_b.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let direct = to_canonical(&x);
            t.check(via_y == direct, || json!({"kernel_vector": x.to_string(), "y_and_back_substitution_disagree": true}));
            let outside: Vec<String> = direct.keys().filter(|s| !fund.contains(s)).map(|s| s.to_string()).collect();
            t.check(outside.is_empty(), || json!({"kernel_vector": x.to_string(), "outside": outside}));
        }
    }
    Ok((t, json!({"kernel_dims": dims})))
}

fn filtration_kernels(n: usize) -> Result<(Tally, Value), HoweError> {
    let mut t = Tally::default();
    let mut table = Vec::new();
    for k in 0..=n {
        let total = binomial(2 * n, k);
        let top = k / 2 + 1;
        let mut dims = vec![0usize];
        for i in 1..=top {
            let m = operator_matrix(GeneratorTag::sl2(Kind::F).pow(i as u32), n, Some(&[k]))?;
            let d = if m.rows.is_empty() { total } else { total - rank(&m.matrix)? };
            dims.push(d);
        }
        t.check(dims[top] == total, || mismatch(json!({"degree": k, "i": top}), dims[top], total));
        for i in 0..top {
            let got = dims[i + 1] - dims[i];
            let want = dim_fundamental(n, k - 2 * i) as usize;
            t.check(got == want, || mismatch(json!({"degree": k, "quotient": i}), got, want));
        }
        table.push(dims);
    }
    Ok((t, json!({"kernel_dims": table})))
}

/// `C(i,2)`.
fn pairs(i: i64) -> i64 {
    i * (i - 1) / 2
}

/// The scalar `ξ` with `F^{(i)} v_{k,k-2i} = ξ v_{k-2i,k-2i}`, as given by the
/// divided-power formula: `q^{C(i,2)} (-q)^{i(n-k+i) - C(i,2)}`.
pub fn filtration_scalar(n: usize, k: usize, i: usize) -> LaurentInt {
    let i = i as i64;
    &LaurentInt::q(pairs(i)) * &LaurentInt::neg_q(i * (n as i64 - k as i64 + i) - pairs(i))
}

/// The variant `q^{C(i,2)} (-q)^{i(n-k+i) + C(i,2)}`. It agrees with
/// [`filtration_scalar`] for `i <= 1` and differs by `q^{2C(i,2)}` otherwise.
pub fn filtration_scalar_plus(n: usize, k: usize, i: usize) -> LaurentInt {
    let i = i as i64;
    &LaurentInt::q(pairs(i)) * &LaurentInt::neg_q(i * (n as i64 - k as i64 + i) + pairs(i))
}

fn filtration_scalar_check(n: usize) -> (Tally, Value) {
    let mut t = Tally::default();
    for k in 0..=n {
        for i in 0..=k / 2 {
            let (Some(s), Some(target)) = (v_k_k2i(n, k, i), v_k_k2i(n, k - 2 * i, 0)) else { continue };
            let got = if i == 0 {
                ExtVec::basis(s)
            } else {
                apply_sl2(GeneratorTag::sl2(Kind::F).pow(i as u32), &ExtVec::basis(s))
            };
            let xi = got.coeff(&target);
            t.check(got.len() == 1 && xi.is_unit(), || mismatch(json!({"k": k, "i": i}), &got, "unit multiple"));
            let want = ExtVec::term(target, filtration_scalar(n, k, i));
            t.check(got == want, || mismatch(json!({"k": k, "i": i}), &got, &want));
        }
    }
    (t, Value::Null)
}

fn t_iso(n: usize) -> (Tally, Value) {
    let sps = sp_generators(n);
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        let tv = apply_t(&v);
        let flipped = tv.terms().all(|(u, _)| u.len() == 2 * n - s.len());
        t.check(flipped && !tv.is_zero(), || mismatch(json!({"v": s.to_string()}), &tv, "degree 2n-k"));
        let back = apply_t_inv(&tv);
        t.check(back == v, || mismatch(json!({"v": s.to_string(), "map": "Tinv T"}), &back, &v));
        let fwd = apply_t(&apply_t_inv(&v));
        t.check(fwd == v, || mismatch(json!({"v": s.to_string(), "map": "T Tinv"}), &fwd, &v));
        for g in &sps {
            let l = apply_t(&sp(*g, &v));
            let r = sp(*g, &tv);
            t.check(l == r, || mismatch(json!({"v": s.to_string(), "x": g.to_string()}), &l, &r));
        }
    });
    (t, Value::Null)
}

/// `c_U` with `x = Σ c_U d_U`.
fn in_d_basis(x: &ExtVec) -> BTreeMap<Subset, LaurentInt> {
    x.terms()
        .map(|(u, c)| (*u, c.try_div(&dual_scalar(u)).expect("d_U is a unit multiple of v_U")))
        .collect()
}

/// The `f_i` table on the dual basis: the `v_S` table multiplied by `-q`,
/// except for `f_n`, which gets `-q^2`.
fn dual_f_table(i: usize, s: &Subset) -> BTreeMap<Subset, LaurentInt> {
    let factor = if i == s.n() { -LaurentInt::q(2) } else { LaurentInt::neg_q(1) };
    sp_f_basis(i, s).terms().map(|(u, c)| (*u, &factor * c)).collect()
}

/// `S(x) · v_T` for the antipode `S(e) = -k^{-1}e`, `S(f) = -f k`, `S(k) = k^{-1}`.
fn antipode_apply(g: GeneratorTag, v: &ExtVec) -> ExtVec {
    let i = g.index as usize;
    let kinv = GeneratorTag::sp(Kind::Kinv, i);
    let k = GeneratorTag::sp(Kind::K, i);
    match g.kind {
        Kind::E => sp(kinv, &sp(g, v)).scale(&-LaurentInt::one()),
        Kind::F => sp(g, &sp(k, v)).scale(&-LaurentInt::one()),
        _ => sp(kinv, v),
    }
}

fn self_dual(n: usize) -> (Tally, Value) {
    let sps = sp_generators(n);
    let all = Subset::all(n);
    let dual_images: HashMap<(GeneratorTag, Subset), ExtVec> = sps
        .iter()
        .flat_map(|g| all.iter().map(move |t| ((*g, *t), antipode_apply(*g, &ExtVec::basis(*t)))))
        .collect();
    let t = Tally::sweep(&all, |s, t| {
        let d = ExtVec::term(*s, dual_scalar(s));
        for i in 1..=n {
            let got = in_d_basis(&sp(GeneratorTag::sp(Kind::F, i), &d));
            let want = dual_f_table(i, s);
            t.check(got == want, || mismatch(json!({"d": s.to_string(), "f": i}), format!("{got:?}"), format!("{want:?}")));
        }
        // d_S ↦ v*_{-S} is equivariant: [x·d_S]_{d_{-T}} = [S(x)·v_T]_{v_{-S}}.
        for g in &sps {
            let c = in_d_basis(&sp(*g, &d));
            for u in &all {
                let l = c.get(&u.negate()).cloned().unwrap_or_else(LaurentInt::zero);
                let r = dual_images[&(*g, *u)].coeff(&s.negate());
                t.check(l == r, || mismatch(json!({"d": s.to_string(), "x": g.to_string(), "T": u.to_string()}), &l, &r));
            }
        }
    });
    (t, Value::Null)
}

fn omega_twist_check(n: usize) -> (Tally, Value) {
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for i in 1..=n {
            for (a, b) in [(Kind::E, Kind::F), (Kind::F, Kind::E), (Kind::K, Kind::Kinv)] {
                let l = omega_twist(&sp(GeneratorTag::sp(a, i), &v));
                let r = sp(GeneratorTag::sp(b, i), &omega_twist(&v));
                t.check(l == r, || mismatch(json!({"v": s.to_string(), "x": format!("{a:?}{i}")}), &l, &r));
            }
        }
    });
    (t, Value::Null)
}

fn bar_canonical(n: usize) -> Result<(Tally, Value), HoweError> {
    let all = Subset::all(n);
    let mut t = Tally::sweep(&all, |s, t| {
        let v = ExtVec::basis(*s);
        let bb = bar(&bar(&v));
        t.check(bb == v, || mismatch(json!({"v": s.to_string(), "bar": 2}), &bb, &v));
        let b = canonical_vector(s);
        let bar_b = bar(&b);
        t.check(bar_b == b, || mismatch(json!({"b": s.to_string()}), &bar_b, &b));
        t.check(b.coeff(s).is_one(), || mismatch(json!({"b": s.to_string(), "diagonal": true}), b.coeff(s), 1));
        for (u, c) in b.terms().filter(|(u, _)| *u != s) {
            let shape = leq(s, u) && c.max_exp().is_some_and(|e| e < 0);
            t.check(shape, || json!({"b": s.to_string(), "term": u.to_string(), "coeff": c.to_string()}));
        }
        for u in &all {
            let w = ExtVec::basis(*u);
            let l = sesquilinear(&v, &bar(&w));
            let r = bilinear(&v, &w);
            t.check(l == r, || mismatch(json!({"S": s.to_string(), "T": u.to_string()}), &l, &r));
        }
    });
    for k in 0..=2 * n {
        let (_, y) = inverse_base_change(n, k)?;
        let (_, x) = crate::canonical::base_change(n, k);
        let yx = y.mul(&x);
        t.check(yx.is_identity(), || json!({"degree": k, "YX": "not the identity"}));
    }
    Ok((t, Value::Null))
}

fn diff_sl2(n: usize) -> (Tally, Value) {
    let e = GeneratorTag::diff(Kind::E);
    let f = GeneratorTag::diff(Kind::F);
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for m in -(n as i64)..=n as i64 {
            let p = apply_diff(GeneratorTag::pr(m), &v);
            let l = &apply_diff(e, &apply_diff(f, &p)) - &apply_diff(f, &apply_diff(e, &p));
            let r = p.scale(&qint(m));
            t.check(l == r, || mismatch(json!({"v": s.to_string(), "m": m}), &l, &r));
        }
    });
    (t, Value::Null)
}

fn diff_commute(n: usize) -> (Tally, Value) {
    let sps = sp_generators(n);
    let diffs = [Kind::DiffE, Kind::DiffF, Kind::E, Kind::F].map(GeneratorTag::diff);
    let t = Tally::sweep(&Subset::all(n), |s, t| {
        let v = ExtVec::basis(*s);
        for a in &sps {
            for b in &diffs {
                let l = sp(*a, &apply_diff(*b, &v));
                let r = apply_diff(*b, &sp(*a, &v));
                t.check(l == r, || mismatch(json!({"v": s.to_string(), "x": a.to_string(), "X": b.to_string()}), &l, &r));
            }
        }
    });
    (t, Value::Null)
}

// ---------------------------------------------------------------------------
// Operator algebras

fn full_matrix(n: usize, op: impl Fn(&ExtVec) -> ExtVec) -> LaurentMatrix {
    let basis = Subset::all(n);
    let index: HashMap<Subset, usize> = basis.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = LaurentMatrix::zeros(basis.len(), basis.len());
    for (j, s) in basis.iter().enumerate() {
        for (u, c) in op(&ExtVec::basis(*s)).into_terms() {
            m.set(index[&u], j, c);
        }
    }
    m
}

fn flatten(m: &LaurentMatrix) -> Vec<LaurentInt> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Vectors kept in echelon form over `Q(q)`, each with its pivot index.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<LaurentInt>)>,
}

impl Echelon {
    /// Reduces `x` against the stored rows; the remainder is zero iff `x` is
    /// in their span.
    fn reduce(&self, mut x: Vec<LaurentInt>) -> Vec<LaurentInt> {
        for (p, r) in &self.rows {
            if x[*p].is_zero() {
                continue;
            }
            let (a, b) = (r[*p].clone(), x[*p].clone());
            for (xi, ri) in x.iter_mut().zip(r) {
                *xi = &(&a * xi) - &(&b * ri);
            }
            normalize_vector(&mut x);
        }
        x
    }

    /// Adds `x` unless it is already in the span; returns whether it was new.
    fn insert(&mut self, x: Vec<LaurentInt>) -> bool {
        let x = self.reduce(x);
        match x.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                self.rows.push((p, x));
                true
            }
            None => false,
        }
    }

    fn contains(&self, x: Vec<LaurentInt>) -> bool {
        self.reduce(x).iter().all(LaurentInt::is_zero)
    }
}

/// A `Q(q)`-basis of the unital algebra generated by `gens`, found by
/// multiplying new elements by generators until nothing new appears.
fn saturate(n: usize, gens: &[LaurentMatrix]) -> (Echelon, Vec<Vec<LaurentInt>>) {
    let mut ech = Echelon::default();
    let mut found = Vec::new();
    let mut queue = vec![LaurentMatrix::identity(1 << (2 * n))];
    queue.extend(gens.iter().cloned());
    while let Some(m) = queue.pop() {
        let flat = flatten(&m);
        if !ech.insert(flat.clone()) {
            continue;
        }
        found.push(flat);
        for g in gens {
            queue.push(g.mul(&m));
        }
    }
    (ech, found)
}

fn images_agree(n: usize) -> Result<(Tally, Value), HoweError> {
    let mut t = Tally::default();
    let sl2_gens: Vec<LaurentMatrix> = [Kind::E, Kind::F, Kind::K, Kind::Kinv]
        .into_iter()
        .map(|k| full_matrix(n, |x| apply(GeneratorTag::sl2(k), x).expect("sl2 action")))
        .collect();
    let mut diff_gens = Vec::new();
    for m in -(n as i64)..=n as i64 {
        let pr = GeneratorTag::pr(m);
        diff_gens.push(full_matrix(n, |x| apply_diff(pr, x)));
        for k in [Kind::E, Kind::F] {
            let g = GeneratorTag::diff(k);
            diff_gens.push(full_matrix(n, |x| apply_diff(g, &apply_diff(pr, x))));
        }
    }
    let (ea, a) = saturate(n, &sl2_gens);
    let (eb, b) = saturate(n, &diff_gens);
    for (name, from, to) in [("sl2 in diff", &a, &eb), ("diff in sl2", &b, &ea)] {
        for (j, x) in from.iter().enumerate() {
            t.check(to.contains(x.clone()), || json!({"direction": name, "element": j}));
        }
    }
    let commutant: usize = (0..=n).map(|k| (n - k + 1).pow(2)).sum();
    t.check(a.len() == commutant, || mismatch(json!("dimension"), a.len(), commutant));
    Ok((t, json!({"dim_sl2_image": a.len(), "dim_diff_image": b.len()})))
}

// ---------------------------------------------------------------------------
// Characters

fn character_identity(n: usize) -> (Tally, Value) {
    let mut t = Tally::default();
    let d = howe_dimension(n);
    t.check(d == 1i64 << (2 * n), || mismatch(json!("dimension"), d, 1i64 << (2 * n)));
    t.check(weight_graded_identity(n), || json!({"weight_graded_identity": false}));
    (t, json!({"dimension": d}))
}

fn howe_tilting_shadow(n: usize, s: Specialization) -> Result<(Tally, Value), HoweError> {
    let mut t = Tally::default();
    let m = tilting_weyl_matrix(n, s)?;
    let unitriangular = (0..=n).all(|k| m.get(k, k) == 1 && (k + 1..=n).all(|l| m.get(k, l) == 0));
    t.check(unitriangular, || json!({"tilting_matrix": m.table()}));
    t.check(decomposition_closure(n, s)?, || json!({"decomposition_closure": false}));
    t.check(ringel_crosscheck(n, s)?, || json!({"ringel_crosscheck": false}));
    Ok((t, json!({"semisimple": m.is_identity()})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_at_rank_one() {
        let reps = run_all(1, &[], None).unwrap();
        assert_eq!(reps.len(), REGISTRY.len());
        for r in &reps {
            assert!(r.passed(), "{}", r.to_json());
        }
        assert_eq!(reps[0].data["total"], 4);
    }

    #[test]
    fn errors() {
        assert!(matches!(run_check("nope", 1, None), Err(HoweError::UnknownCheck(_))));
        assert!(matches!(run_check("images_agree", 3, None), Err(HoweError::RankBound { .. })));
        assert!(run_check_bounded("commuting", 4, None, Some(3)).is_err());
    }

    #[test]
    fn kernel_dims_at_rank_two() {
        let r = run_check("kernel_weyl", 2, None).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.data["kernel_dims"], json!([1, 4, 5, 0, 0]));
    }

    #[test]
    fn filtration_scalar_variants() {
        assert_eq!(filtration_scalar(4, 4, 2), LaurentInt::monomial(-1, 4));
        assert_eq!(filtration_scalar_plus(4, 4, 2), LaurentInt::monomial(-1, 6));
        assert_eq!(filtration_scalar(5, 3, 1), filtration_scalar_plus(5, 3, 1));
        assert!(run_check("filtration_scalar", 4, None).unwrap().passed());
    }

    #[test]
    fn witness_on_failure() {
        let mut t = Tally::default();
        t.check(true, || json!(null));
        t.check(false, || json!({"first": true}));
        t.check(false, || json!({"second": true}));
        assert_eq!(t.assertions, 3);
        assert_eq!(t.witness, Some(json!({"first": true})));
    }
}
