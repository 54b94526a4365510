//! Cross-checks against independent constructions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use howe::characters::{qdim_fund, sl2_simple_character, sl2_tilting_deltas, vanishes_at, weyl_multiplicities, Sl2Char};
use howe::crystal::{crystal_f, crystal_graph, crystal_nodes};
use howe::extalg::Subset;
use howe::qarith::{qbinom, qbinom_nonzero, LaurentInt, Specialization};

fn spec(p: Option<u64>, ell: Option<u64>) -> Specialization {
    Specialization::new(p, ell).unwrap()
}

/// Specializations where `q` is a primitive `2ell`-th root of unity in a
/// field whose characteristic does not divide `2ell`.
fn roots_of_unity() -> Vec<Specialization> {
    vec![
        spec(None, Some(2)),
        spec(None, Some(3)),
        spec(None, Some(4)),
        spec(None, Some(5)),
        spec(Some(3), Some(2)),
        spec(Some(5), Some(2)),
        spec(Some(7), Some(3)),
        spec(Some(5), Some(3)),
        spec(Some(3), Some(4)),
    ]
}

/// Rows `0..=rows` of the quantum Pascal triangle,
/// `[m; i] = q^i [m-1; i] + q^(i-m) [m-1; i-1]`.
fn pascal(rows: usize) -> Vec<Vec<LaurentInt>> {
    let mut tri: Vec<Vec<LaurentInt>> = vec![vec![LaurentInt::one()]];
    for m in 1..=rows {
        let prev = &tri[m - 1];
        let row = (0..=m)
            .map(|i| {
                let mut x = LaurentInt::zero();
                if i < m {
                    x += &prev[i].shift(i as i64);
                }
                if i > 0 {
                    x += &prev[i - 1].shift(i as i64 - m as i64);
                }
                x
            })
            .collect();
        tri.push(row);
    }
    tri
}

#[test]
fn qbinom_matches_pascal_triangle() {
    let tri = pascal(24);
    for (m, row) in tri.iter().enumerate() {
        for (i, x) in row.iter().enumerate() {
            assert_eq!(&qbinom(m as i64, i as u32), x, "[{m};{i}]");
        }
    }
}

#[test]
fn lucas_digits_match_cyclotomic_reduction() {
    let tri = pascal(40);
    for s in roots_of_unity() {
        for (m, row) in tri.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                let survives = !vanishes_at(x, s).unwrap();
                assert_eq!(qbinom_nonzero(m as u64, i as u64, s), survives, "[{m};{i}] at {s}");
            }
        }
    }
}

/// `ch L(m)` from the contravariant form on `Δ(m)`: the weight `m - 2j` survives
/// iff `E^(j) F^(j) v = [m; j] v` is nonzero at the specialization.
fn shapovalov_character(row: &[LaurentInt], s: Specialization) -> Sl2Char {
    let m = row.len() as i64 - 1;
    row.iter()
        .enumerate()
        .filter(|(_, x)| !vanishes_at(x, s).unwrap())
        .map(|(j, _)| (m - 2 * j as i64, 1))
        .collect()
}

#[test]
fn steinberg_matches_contravariant_form() {
    let tri = pascal(60);
    for s in roots_of_unity() {
        for (m, row) in tri.iter().enumerate() {
            assert_eq!(sl2_simple_character(m as u64, s), shapovalov_character(row, s), "L({m}) at {s}");
        }
    }
}

fn char_mul(a: &Sl2Char, b: &Sl2Char) -> Sl2Char {
    let mut out = Sl2Char::new();
    for (x, u) in a {
        for (y, v) in b {
            *out.entry(x + y).or_default() += u * v;
        }
    }
    out
}

fn weyl(m: i64) -> Sl2Char {
    (0..=m).map(|j| (m - 2 * j, 1)).collect()
}

/// Tilting characters from Donkin's tensor product formula:
/// `T(l-1 + c + l a) = T(l-1 + c) ⊗ T'(a)^[l]` for `0 <= c <= l-1`, where `T'` is
/// the tilting module for the next level (classical in characteristic `p`).
fn donkin(m: i64, ell: Option<u64>, p: Option<u64>) -> Sl2Char {
    let Some(l) = ell.map(|x| x as i64) else { return weyl(m) };
    if m < l - 1 {
        return weyl(m);
    }
    let c = (m - (l - 1)) % l;
    let a = (m - (l - 1)) / l;
    let mut base = weyl(l - 1 + c);
    if c > 0 {
        for (w, x) in weyl(l - 1 - c) {
            *base.entry(w).or_default() += x;
        }
    }
    let twisted: Sl2Char = donkin(a, p, p).into_iter().map(|(w, x)| (w * l, x)).collect();
    char_mul(&base, &twisted)
}

#[test]
fn tilting_deltas_match_donkin() {
    let mut specs = roots_of_unity();
    specs.push(spec(Some(3), Some(3)));
    specs.push(spec(Some(2), Some(2)));
    specs.push(Specialization::generic());
    for s in specs {
        for m in 0..=80u64 {
            let ch = donkin(m as i64, s.ell, s.p);
            let mults = weyl_multiplicities(&ch);
            assert!(mults.values().all(|&x| x == 1), "T({m}) at {s}: {mults:?}");
            let want: BTreeSet<u64> = mults.keys().copied().collect();
            assert_eq!(sl2_tilting_deltas(m, s), want, "T({m}) at {s}");
        }
    }
}

// ---------------------------------------------------------------------------
// Crystals

fn box_f(x: i64, i: i64, n: i64) -> Option<i64> {
    match x {
        _ if i < n && x == i => Some(i + 1),
        _ if i < n && x == -(i + 1) => Some(-i),
        _ if i == n && x == n => Some(-n),
        _ => None,
    }
}

fn box_e(x: i64, i: i64, n: i64) -> Option<i64> {
    match x {
        _ if i < n && x == i + 1 => Some(i),
        _ if i < n && x == -i => Some(-(i + 1)),
        _ if i == n && x == -n => Some(n),
        _ => None,
    }
}

/// `f̃_i` on words in `B(ϖ_1)^{⊗k}` by the signature rule: a `+` to the left
/// of a `-` cancels, and `f̃_i` acts on the leftmost surviving `+`.
fn tensor_f(word: &[i64], i: i64, n: i64) -> Option<Vec<i64>> {
    let mut unmatched: Vec<(bool, usize)> = Vec::new();
    for (idx, &x) in word.iter().enumerate() {
        if box_f(x, i, n).is_some() {
            unmatched.push((true, idx));
        } else if box_e(x, i, n).is_some() {
            if unmatched.last().is_some_and(|(plus, _)| *plus) {
                unmatched.pop();
            } else {
                unmatched.push((false, idx));
            }
        }
    }
    let (_, idx) = unmatched.into_iter().find(|(plus, _)| *plus)?;
    let mut out = word.to_vec();
    out[idx] = box_f(out[idx], i, n)?;
    Some(out)
}

#[test]
fn fundamental_crystals_match_tensor_components() {
    for n in 1..=4usize {
        for k in 0..=n {
            let nodes = crystal_nodes(n, k);
            let mut map: HashMap<Subset, Vec<i64>> = HashMap::new();
            let src = Subset::initial(n, k);
            map.insert(src, (1..=k as i64).collect());
            let mut stack = vec![src];
            while let Some(s) = stack.pop() {
                for i in 1..=n {
                    let a = crystal_f(i, &s);
                    let b = tensor_f(&map[&s], i as i64, n as i64);
                    assert_eq!(a.is_some(), b.is_some(), "n={n} k={k} S={s} i={i}");
                    if let (Some(a), Some(b)) = (a, b) {
                        match map.get(&a) {
                            Some(prev) => assert_eq!(prev, &b),
                            None => {
                                map.insert(a, b);
                                stack.push(a);
                            }
                        }
                    }
                }
            }
            assert_eq!(map.len(), nodes.len(), "n={n} k={k}");
            let images: BTreeSet<&Vec<i64>> = map.values().collect();
            assert_eq!(images.len(), map.len());
            assert_eq!(crystal_graph(n, k).nodes.len(), nodes.len());
        }
    }
}

#[test]
fn quantum_dimension_is_a_crystal_sum() {
    for n in 1..=5usize {
        for k in 0..=n {
            let mut sum: BTreeMap<i64, i64> = BTreeMap::new();
            for s in crystal_nodes(n, k) {
                let e: i64 = s.weight().iter().enumerate().map(|(i, w)| 2 * (n - i) as i64 * w).sum();
                *sum.entry(e).or_default() += 1;
            }
            let want = LaurentInt::from_terms(sum);
            assert_eq!(qdim_fund(n, k), want, "n={n} k={k}");
        }
    }
}
