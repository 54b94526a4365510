// SPDX-License-Identifier: MIT OR Apache-2.0
//! Fundamental `sp_2n` crystals `C_{ϖ_k}` on dot diagrams.
//!
//! A subset `S` with `|S| = k <= n` lies in `C_{ϖ_k}` when every fully dotted
//! column is the left end of a rainbow. Crystal operators move single dots
//! inside the window `S_{i,i+1}`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::actions::{GeneratorTag, Kind};
use crate::canonical::{is_fully_matched, rainbow};
use crate::error::HoweError;
use crate::extalg::{position, window, Subset};

/// Whether `S` is a node of `C_{ϖ_{|S|}}`.
pub fn is_member(s: &Subset) -> bool {
    s.len() <= s.n() && is_fully_matched(s)
}

/// The case table for `f̃_i`, applied to any subset; `None` means `0`.
pub fn table_f(i: usize, s: &Subset) -> Option<Subset> {
    let n = s.n();
    let w = window(s, i).members();
    let i = i as i64;
    if i as usize == n {
        return (w == [i]).then(|| s.swap(i, -i));
    }
    let up = s.swap(i, i + 1);
    let down = s.swap(-(i + 1), -i);
    match w.as_slice() {
        [a] if *a == i => Some(up),
        [a] if *a == -(i + 1) => Some(down),
        [a, b] if *a == i && *b == -(i + 1) => Some(down),
        [a, b] if *a == i && *b == -i => Some(up),
        [a, b, c] if *a == i && *b == -(i + 1) && *c == -i => Some(up),
        [a, b, c] if *a == i && *b == i + 1 && *c == -(i + 1) => Some(down),
        _ => None,
    }
}

/// `f̃_i S`, or `None` when the table gives `0` or the image leaves the crystal.
pub fn crystal_f(i: usize, s: &Subset) -> Option<Subset> {
    table_f(i, s).filter(is_member)
}

/// `ẽ_i S`, the partial inverse of [`crystal_f`].
pub fn crystal_e(i: usize, s: &Subset) -> Option<Subset> {
    let n = s.n() as i64;
    let ii = i as i64;
    let candidates = if ii == n {
        vec![s.swap(-n, n)]
    } else {
        vec![s.swap(ii + 1, ii), s.swap(-ii, -(ii + 1))]
    };
    candidates
        .into_iter()
        .find(|t| t != s && t.len() == s.len() && crystal_f(i, t) == Some(*s))
}

/// `φ_i(S)`: how often `f̃_i` can be applied.
pub fn phi(i: usize, s: &Subset) -> usize {
    std::iter::successors(Some(*s), |t| crystal_f(i, t)).count() - 1
}

/// `ε_i(S)`: how often `ẽ_i` can be applied.
pub fn epsilon(i: usize, s: &Subset) -> usize {
    std::iter::successors(Some(*s), |t| crystal_e(i, t)).count() - 1
}

/// `F̃`: removes the leftmost unmatched fully dotted column.
pub fn sl2_crystal_f(s: &Subset) -> Option<Subset> {
    rainbow(s).unmatched.first().map(|&c| s.without_column(c))
}

/// `Ẽ`: fills the rightmost undotted column that ends no rainbow.
pub fn sl2_crystal_e(s: &Subset) -> Option<Subset> {
    let rb = rainbow(s);
    let right = rb.right();
    s.empty_columns()
        .into_iter()
        .rev()
        .find(|c| !right.contains(c))
        .map(|c| s.with_column(c))
}

/// The `sp_2n` part of `S` under `C ≅ ⨿_k C_{ϖ_k} ⊗ C(n-k)`: unmatched fully
/// dotted columns removed.
pub fn sl2_core(s: &Subset) -> Subset {
    rainbow(s).unmatched.iter().fold(*s, |t, &c| t.without_column(c))
}

#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub n: usize,
    pub k: usize,
    pub nodes: Vec<Subset>,
    /// `(source, target, i)` as indices into `nodes`.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn crystal_nodes(n: usize, k: usize) -> Vec<Subset> {
    if k > n {
        return Vec::new();
    }
    Subset::of_size(n, k).into_iter().filter(is_fully_matched).collect()
}

pub fn crystal_graph(n: usize, k: usize) -> CrystalGraph {
    let mut nodes = crystal_nodes(n, k);
    nodes.sort();
    let index: BTreeMap<Subset, usize> = nodes.iter().enumerate().map(|(j, s)| (*s, j)).collect();
    let mut edges: Vec<(usize, usize, usize)> = nodes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, s)| {
            let index = &index;
            (1..=n).filter_map(move |i| crystal_f(i, s).map(|t| (a, index[&t], i)))
        })
        .collect();
    edges.sort();
    CrystalGraph { n, k, nodes, edges }
}

impl CrystalGraph {
    /// Nodes with no incoming edge.
    pub fn sources(&self) -> Vec<Subset> {
        let mut has_in = vec![false; self.nodes.len()];
        for &(_, b, _) in &self.edges {
            has_in[b] = true;
        }
        self.nodes.iter().zip(has_in).filter(|(_, h)| !h).map(|(s, _)| *s).collect()
    }

    /// Graph distance from the source `{1..k}` for every node.
    pub fn distances(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        let Some(src) = self.nodes.iter().position(|s| *s == Subset::initial(self.n, self.k)) else {
            return dist;
        };
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if dist[b].is_none() {
                    dist[b] = Some(dist[a].unwrap() + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances().iter().all(Option::is_some)
    }

    /// Graphviz text; nodes are listed in subset order.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph C_{}_{} {{\n", self.n, self.k);
        for (j, s) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  s{j} [label=\"{s}\"];");
        }
        for (a, b, i) in &self.edges {
            let _ = writeln!(out, "  s{a} -> s{b} [label=\"{i}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// JSON adjacency: nodes as member lists, edges as `{from, to, i}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "nodes": self.nodes.iter().map(Subset::members).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b, i)| serde_json::json!({"from": a, "to": b, "i": i})).collect::<Vec<_>>(),
        })
    }
}

pub fn export_dot(g: &CrystalGraph) -> String {
    g.to_dot()
}

fn require_member(s: &Subset) -> Result<(), HoweError> {
    if is_member(s) {
        Ok(())
    } else {
        Err(HoweError::NotInCrystal(s.to_string()))
    }
}

/// A predecessor of `S` in the crystal graph: `(i, T)` with `f̃_i T = S` and
/// `i` minimal.
fn predecessor(s: &Subset) -> Option<(usize, Subset)> {
    (1..=s.n()).find_map(|i| crystal_e(i, s).map(|t| (i, t)))
}

/// Distance from `{1..k}` in the crystal graph.
pub fn length(s: &Subset) -> Result<usize, HoweError> {
    require_member(s)?;
    let mut len = 0;
    let mut t = *s;
    while let Some((_, p)) = predecessor(&t) {
        t = p;
        len += 1;
    }
    debug_assert_eq!(t, Subset::initial(s.n(), s.len()));
    Ok(len)
}

/// A word `u_S` in divided powers of the `f_i` with `u_S · v_{1..k} = b_S`.
///
/// The word walks back to `{1..k}` along `ẽ` edges. A step `f̃_j` out of a
/// window `{j,-j}` is replaced by `f_j^{(2)}` out of `{j,-(j+1)}`, which
/// avoids the `[2]` that a single `f_j` would produce there. Tokens are listed
/// in application order reversed, so the word reads like an operator product.
pub fn generating_word(s: &Subset) -> Result<Vec<GeneratorTag>, HoweError> {
    require_member(s)?;
    let n = s.n();
    let mut rev = Vec::new();
    let mut cur = *s;
    while let Some((j, t)) = predecessor(&cur) {
        let ji = j as i64;
        if j < n && window(&t, j).members() == [ji, -ji] {
            let t2 = t.swap(-ji, -(ji + 1));
            require_member(&t2)?;
            rev.push(GeneratorTag::sp(Kind::F, j).pow(2));
            cur = t2;
        } else {
            rev.push(GeneratorTag::sp(Kind::F, j));
            cur = t;
        }
    }
    Ok(rev)
}

/// Word of the column tableau of `S`: entries in the order `1 < … < n < -n < … < -1`.
pub fn tableau_iso(s: &Subset) -> Result<Vec<i64>, HoweError> {
    let mut w = s.members();
    w.sort_by_key(|&x| position(x, s.n()));
    if !is_column_tableau(&w, s.n()) {
        return Err(HoweError::TableauCondition(s.to_string()));
    }
    Ok(w)
}

/// If `x` sits in row `p` and `-x` in row `q`, then `q - p <= n - x`.
pub fn is_column_tableau(word: &[i64], n: usize) -> bool {
    word.windows(2).all(|p| position(p[0], n) < position(p[1], n))
        && word.iter().enumerate().all(|(p, &x)| {
            x < 0
                || match word.iter().position(|&y| y == -x) {
                    Some(q) => q - p <= n - x as usize,
                    None => true,
                }
        })
}

/// `f̃_i` on column tableau words, transported from the subset model.
pub fn tableau_f(i: usize, word: &[i64], n: usize) -> Option<Vec<i64>> {
    let s = Subset::new(n, word).ok()?;
    let t = crystal_f(i, &s)?;
    tableau_iso(&t).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_examples() {
        // The window {2,-3} moves the barred dot, and {1,3,-3} is not a node.
        assert_eq!(table_f(2, &Subset::of(3, &[1, 2, -3])), Some(Subset::of(3, &[1, 2, -2])));
        assert!(!is_member(&Subset::of(3, &[1, 3, -3])));
        assert_eq!(table_f(2, &Subset::of(3, &[2, 3, -3])), Some(Subset::of(3, &[2, 3, -2])));
        for n in 1..=3 {
            for k in 0..=n {
                for s in crystal_nodes(n, k) {
                    for i in 1..=n {
                        if let Some(t) = crystal_f(i, &s) {
                            assert_eq!(crystal_e(i, &t), Some(s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn graph_shapes() {
        let g = crystal_graph(3, 1);
        assert_eq!(g.nodes.len(), 6);
        let mut labels = Vec::new();
        let mut cur = Subset::of(3, &[1]);
        while let Some(i) = (1..=3).find(|&i| crystal_f(i, &cur).is_some()) {
            labels.push(i);
            cur = crystal_f(i, &cur).unwrap();
        }
        assert_eq!(labels, vec![1, 2, 3, 2, 1]);
        assert_eq!(crystal_graph(3, 2).nodes.len(), 14);
        let g0 = crystal_graph(4, 0);
        assert_eq!((g0.nodes.len(), g0.edges.len()), (1, 0));
        assert!(g.to_dot().contains("s0 -> s"));
    }

    #[test]
    fn sl2_operators() {
        let s = Subset::of(3, &[3, -3]);
        assert_eq!(sl2_crystal_f(&s), Some(Subset::empty(3)));
        assert_eq!(sl2_crystal_e(&Subset::empty(3)), Some(Subset::of(3, &[3, -3])));
        assert_eq!(sl2_crystal_f(&Subset::of(3, &[1, -1])), None);
    }

    #[test]
    fn words_and_tableaux() {
        let s = Subset::of(2, &[2, -1]);
        let w = generating_word(&s).unwrap();
        assert_eq!(w.iter().map(ToString::to_string).collect::<Vec<_>>(), ["f1^2", "f2"]);
        assert_eq!(length(&Subset::initial(3, 2)).unwrap(), 0);
        assert_eq!(tableau_iso(&Subset::of(2, &[1, -1])).unwrap(), vec![1, -1]);
        assert!(tableau_iso(&Subset::of(2, &[2, -2])).is_err());
        assert!(generating_word(&Subset::of(2, &[2, -2])).is_err());
    }
}
