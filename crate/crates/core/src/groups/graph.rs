//! The root graph `Γ(M)` and the central and derived series it encodes.
//!
//! There is an arrow `a → b` whenever `b − a ∈ M`. The lower central series
//! of `U(M)` is `U(M^{↑k})`, where `M^{↑k}` collects the roots at the end of
//! a path of length `k`; the upper central series is `U(M^{↓k})`, where
//! `M^{↓k}` collects the roots from which every path is shorter than `k`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{center, has_open_orbit, GroupError, RootSet};
use crate::roots::{Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    /// Vertex indices into [`RootGraph::vertices`].
    pub from: usize,
    pub to: usize,
    /// The root `e ∈ M` with `to = from + e`.
    pub label: Root,
    /// Both ends attached to the same ray.
    pub inner: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootGraph {
    pub vertices: Vec<Root>,
    /// Sorted by `(from, to)`.
    pub arrows: Vec<Arrow>,
    /// Longest path ending at each vertex.
    #[serde(skip)]
    depth_in: Vec<usize>,
    /// Longest path starting at each vertex.
    #[serde(skip)]
    depth_out: Vec<usize>,
}

pub fn root_graph(m: &RootSet) -> Result<RootGraph, GroupError> {
    let vertices: Vec<Root> = m.roots().to_vec();
    let by_coords: HashMap<&[i64], usize> = vertices
        .iter()
        .enumerate()
        .map(|(k, r)| (r.coords(), k))
        .collect();
    let mut arrows = Vec::new();
    for (from, a) in vertices.iter().enumerate() {
        for e in &vertices {
            let Ok(b) = a.e.checked_add(&e.e) else {
                continue;
            };
            if let Some(&to) = by_coords.get(b.coords()) {
                arrows.push(Arrow {
                    from,
                    to,
                    label: e.clone(),
                    inner: vertices[to].ray == a.ray,
                });
            }
        }
    }
    arrows.sort_by_key(|x| (x.from, x.to));
    let (depth_in, depth_out) = depths(&vertices, &arrows)?;
    Ok(RootGraph {
        vertices,
        arrows,
        depth_in,
        depth_out,
    })
}

/// Longest-path lengths by Kahn's algorithm; a leftover vertex means a cycle.
fn depths(vertices: &[Root], arrows: &[Arrow]) -> Result<(Vec<usize>, Vec<usize>), GroupError> {
    let v = vertices.len();
    let mut succ = vec![Vec::new(); v];
    let mut indeg = vec![0usize; v];
    for a in arrows {
        succ[a.from].push(a.to);
        indeg[a.to] += 1;
    }
    let mut order = Vec::with_capacity(v);
    let mut ready: Vec<usize> = (0..v).filter(|&k| indeg[k] == 0).collect();
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.push(y);
            }
        }
    }
    if order.len() < v {
        let stuck = (0..v).find(|&k| indeg[k] > 0).unwrap();
        return Err(GroupError::CyclicGraph(vertices[stuck].to_string()));
    }
    let mut depth_in = vec![0; v];
    for &x in &order {
        for &y in &succ[x] {
            depth_in[y] = depth_in[y].max(depth_in[x] + 1);
        }
    }
    let mut depth_out = vec![0; v];
    for &x in order.iter().rev() {
        for &y in &succ[x] {
            depth_out[x] = depth_out[x].max(depth_out[y] + 1);
        }
    }
    Ok((depth_in, depth_out))
}

impl RootGraph {
    /// Length of the longest path, or `None` for the empty graph.
    pub fn longest_path(&self) -> Option<usize> {
        self.depth_in.iter().copied().max()
    }

    pub fn inner_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.inner).count()
    }

    pub fn outer_count(&self) -> usize {
        self.arrows.len() - self.inner_count()
    }

    /// `M^{↑k}`.
    pub fn up(&self, k: usize) -> RootSet {
        self.select(|v| self.depth_in[v] >= k)
    }

    /// `M^{↓k}`.
    pub fn down(&self, k: usize) -> RootSet {
        self.select(|v| self.depth_out[v] < k)
    }

    /// `M^{↑k}` computed on the subgraph of inner arrows.
    pub fn inner_up(&self, k: usize) -> RootSet {
        let inner: Vec<Arrow> = self.arrows.iter().filter(|a| a.inner).cloned().collect();
        let (din, _) = depths(&self.vertices, &inner).expect("subgraph of an acyclic graph");
        self.select(|v| din[v] >= k)
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> RootSet {
        let n = self.vertices.first().map_or(0, |r| r.e.len());
        RootSet::from_roots(
            n,
            (0..self.vertices.len())
                .filter(|&v| keep(v))
                .map(|v| self.vertices[v].clone()),
        )
    }

    /// DOT rendering: inner arrows dashed, outer arrows dotted.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph roots {\n");
        for (k, r) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{k} [label=\"{r}\"];");
        }
        for a in &self.arrows {
            let style = if a.inner { "dashed" } else { "dotted" };
            let _ = writeln!(
                s,
                "  v{} -> v{} [style={style}, label=\"{}\"];",
                a.from, a.to, a.label
            );
        }
        s.push_str("}\n");
        s
    }
}

pub fn emit_dot(g: &RootGraph) -> String {
    g.to_dot()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    /// `M^{↑0} ⊋ M^{↑1} ⊋ … ⊋ M^{↑(l+1)} = ∅`.
    pub lower: Vec<RootSet>,
    /// `∅ = M^{↓0} ⊊ … ⊊ M^{↓(l+1)} = M`.
    pub upper: Vec<RootSet>,
    /// `M`, `M^{↑1}`, `(M^{↑1})^{↑1}`, … down to `∅`.
    pub derived: Vec<RootSet>,
    pub longest_path: Option<usize>,
    pub nilpotency_class: usize,
    pub derived_length: usize,
    /// `C(U)` when `M` has an open orbit.
    pub center_indices: Option<Vec<usize>>,
}

pub fn series_report(rs: &RootSystem, m: &RootSet) -> Result<SeriesReport, GroupError> {
    let g = root_graph(m)?;
    let longest_path = g.longest_path();
    let nilpotency_class = longest_path.map_or(0, |l| l + 1);
    let lower = (0..=nilpotency_class).map(|k| g.up(k)).collect();
    let upper = (0..=nilpotency_class).map(|k| g.down(k)).collect();
    let mut derived = vec![m.clone()];
    while !derived.last().unwrap().is_empty() {
        let next = root_graph(derived.last().unwrap())?.up(1);
        derived.push(next);
    }
    let center_indices = if has_open_orbit(m) {
        Some(center(rs, m)?.indices)
    } else {
        None
    };
    Ok(SeriesReport {
        lower,
        upper,
        derived_length: derived.len() - 1,
        derived,
        longest_path,
        nilpotency_class,
        center_indices,
    })
}
