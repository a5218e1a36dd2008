//! Graded quivers and their paths.
//!
//! Paths compose left to right: the product `pq` of two paths is their
//! concatenation "first `p`, then `q`", defined when `p` ends where `q` starts.
//! Many libraries use the opposite convention; every module in this crate uses
//! this one.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// An arrow as supplied by the user: ids for itself and its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

impl Arrow {
    pub fn new(id: &str, source: &str, target: &str, degree: i64) -> Self {
        Arrow {
            id: id.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            degree,
        }
    }
}

/// A broken quiver invariant, naming the offending id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateArrow(String),
    UndeclaredSource { arrow: String, vertex: String },
    UndeclaredTarget { arrow: String, vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            Violation::DuplicateArrow(a) => write!(f, "duplicate arrow `{a}`"),
            Violation::UndeclaredSource { arrow, vertex } => {
                write!(f, "arrow `{arrow}` starts at undeclared vertex `{vertex}`")
            }
            Violation::UndeclaredTarget { arrow, vertex } => {
                write!(f, "arrow `{arrow}` ends at undeclared vertex `{vertex}`")
            }
        }
    }
}

/// Checks the quiver invariants on raw parts; returns every violation found.
pub fn validate(vertices: &[String], arrows: &[Arrow]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for v in vertices {
        if !seen.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let mut seen_arrows = HashSet::new();
    for a in arrows {
        if !seen_arrows.insert(a.id.as_str()) {
            violations.push(Violation::DuplicateArrow(a.id.clone()));
        }
        if !seen.contains(a.source.as_str()) {
            violations.push(Violation::UndeclaredSource {
                arrow: a.id.clone(),
                vertex: a.source.clone(),
            });
        }
        if !seen.contains(a.target.as_str()) {
            violations.push(Violation::UndeclaredTarget {
                arrow: a.id.clone(),
                vertex: a.target.clone(),
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A validated graded quiver. Vertices and arrows keep their declaration
/// order, which also fixes the dense indices used by [`Path`].
#[derive(Clone, Debug)]
pub struct GradedQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_ix: HashMap<String, usize>,
    arrow_ix: HashMap<String, usize>,
    ends: Vec<(usize, usize)>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for GradedQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for GradedQuiver {}

impl GradedQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        validate(&vertices, &arrows).map_err(|vs| {
            Error::InvalidQuiver(
                vs.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        })?;
        let vertex_ix: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let arrow_ix = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        let ends: Vec<(usize, usize)> = arrows
            .iter()
            .map(|a| (vertex_ix[&a.source], vertex_ix[&a.target]))
            .collect();
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, &(s, t)) in ends.iter().enumerate() {
            out_arrows[s].push(i);
            in_arrows[t].push(i);
        }
        Ok(GradedQuiver {
            vertices,
            arrows,
            vertex_ix,
            arrow_ix,
            ends,
            out_arrows,
            in_arrows,
        })
    }

    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::default()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_ix
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrow_ix
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    pub fn source(&self, a: usize) -> usize {
        self.ends[a].0
    }

    pub fn target(&self, a: usize) -> usize {
        self.ends[a].1
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.arrows[a].degree
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn path_source(&self, p: &Path) -> usize {
        p.base
    }

    pub fn path_target(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.base, |&a| self.target(a))
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.degree(a)).sum()
    }

    pub fn is_cycle(&self, p: &Path) -> bool {
        self.path_source(p) == self.path_target(p)
    }

    /// Trivial path `e_v`.
    pub fn trivial(&self, v: usize) -> Path {
        Path {
            base: v,
            arrows: Vec::new(),
        }
    }

    /// The path made of a single arrow.
    pub fn arrow_path(&self, a: usize) -> Path {
        Path {
            base: self.source(a),
            arrows: vec![a],
        }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver("empty arrow list for a path".into()));
        };
        for w in arrows.windows(2) {
            if self.target(w[0]) != self.source(w[1]) {
                return Err(Error::InvalidQuiver(format!(
                    "arrows `{}` and `{}` do not compose",
                    self.arrow_id(w[0]),
                    self.arrow_id(w[1])
                )));
            }
        }
        Ok(Path {
            base: self.source(first),
            arrows: arrows.to_vec(),
        })
    }

    /// Builds a path from arrow ids.
    pub fn path_by_ids(&self, ids: &[&str]) -> Result<Path> {
        let ix = ids
            .iter()
            .map(|id| self.arrow_index(id))
            .collect::<Result<Vec<_>>>()?;
        self.path(&ix)
    }

    /// `p` followed by `q`, or `None` when they do not compose.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_target(p) != q.base {
            return None;
        }
        let mut arrows = Vec::with_capacity(p.len() + q.len());
        arrows.extend_from_slice(&p.arrows);
        arrows.extend_from_slice(&q.arrows);
        Some(Path {
            base: p.base,
            arrows,
        })
    }

    pub fn is_composable(&self, p: &Path) -> bool {
        if p.base >= self.vertices.len() {
            return false;
        }
        let mut at = p.base;
        for &a in &p.arrows {
            if a >= self.arrows.len() || self.source(a) != at {
                return false;
            }
            at = self.target(a);
        }
        true
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertex_id(p.base))
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrow_id(a))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// All paths of length at most `max_len`, optionally only those of total
    /// degree `degree_filter`. Ordered by length, then lexicographically by
    /// arrow declaration order; trivial paths come in vertex order.
    pub fn enumerate_paths(&self, max_len: usize, degree_filter: Option<i64>) -> Vec<Path> {
        let mut out = Vec::new();
        let mut layer: Vec<Path> = (0..self.num_vertices()).map(|v| self.trivial(v)).collect();
        for len in 0..=max_len {
            out.extend(
                layer
                    .iter()
                    .filter(|p| degree_filter.is_none_or(|d| self.path_degree(p) == d))
                    .cloned(),
            );
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                for &a in self.out_arrows(self.path_target(p)) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path {
                        base: p.base,
                        arrows,
                    });
                }
            }
            next.sort();
            layer = next;
        }
        out
    }

    /// Paths of length at most `max_len` whose degree lies in `lo..=hi`,
    /// with branches pruned by the reachable degree range.
    pub fn paths_in_degree_window(&self, max_len: usize, lo: i64, hi: i64) -> Vec<Path> {
        let min_deg = self
            .arrows
            .iter()
            .map(|a| a.degree)
            .min()
            .unwrap_or(0)
            .min(0);
        let max_deg = self
            .arrows
            .iter()
            .map(|a| a.degree)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut out = Vec::new();
        let mut stack: Vec<(Path, i64)> = (0..self.num_vertices())
            .rev()
            .map(|v| (self.trivial(v), 0))
            .collect();
        while let Some((p, deg)) = stack.pop() {
            if (lo..=hi).contains(&deg) {
                out.push(p.clone());
            }
            let remaining = (max_len - p.len()) as i64;
            if remaining == 0 {
                continue;
            }
            for &a in self.out_arrows(self.path_target(&p)).iter().rev() {
                let d = deg + self.degree(a);
                let rem = remaining - 1;
                if d + rem * min_deg > hi || d + rem * max_deg < lo {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                stack.push((
                    Path {
                        base: p.base,
                        arrows,
                    },
                    d,
                ));
            }
        }
        out.sort();
        out
    }

    /// True iff there is no cycle of positive length.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` when a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.ends {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &a in &self.out_arrows[v] {
                let t = self.target(a);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Length of the longest path, or `None` if the quiver has a cycle.
    pub fn longest_path_len(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut best = vec![0usize; self.num_vertices()];
        for &v in order.iter().rev() {
            best[v] = self.out_arrows[v]
                .iter()
                .map(|&a| best[self.target(a)] + 1)
                .max()
                .unwrap_or(0);
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// Subquiver on all vertices keeping only the arrows accepted by `keep`.
    pub fn subquiver(&self, keep: impl Fn(usize) -> bool) -> GradedQuiver {
        let arrows = (0..self.num_arrows())
            .filter(|&a| keep(a))
            .map(|a| self.arrows[a].clone())
            .collect();
        GradedQuiver::new(self.vertices.clone(), arrows).expect("subquiver of a valid quiver")
    }

    /// This quiver with extra arrows appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = Arrow>) -> Result<GradedQuiver> {
        let mut arrows = self.arrows.clone();
        arrows.extend(extra);
        GradedQuiver::new(self.vertices.clone(), arrows)
    }
}

/// Fluent construction of small quivers, mostly for tests and examples.
#[derive(Default, Clone, Debug)]
pub struct QuiverBuilder {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl QuiverBuilder {
    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn vertices(mut self, ids: &[&str]) -> Self {
        self.vertices.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn arrow(mut self, id: &str, source: &str, target: &str, degree: i64) -> Self {
        self.arrows.push(Arrow::new(id, source, target, degree));
        self
    }

    pub fn build(self) -> Result<GradedQuiver> {
        GradedQuiver::new(self.vertices, self.arrows)
    }
}

/// A path: its start vertex and the arrows in order. For length 0 only the
/// base vertex matters; for positive length `base` equals the source of the
/// first arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    base: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.arrows.contains(&a)
    }

    /// Rotation `arrows[k..] ++ arrows[..k]`; only meaningful for cycles.
    pub(crate) fn rotated(&self, k: usize, base_of: impl Fn(usize) -> usize) -> Path {
        if self.arrows.is_empty() {
            return self.clone();
        }
        let mut arrows = Vec::with_capacity(self.arrows.len());
        arrows.extend_from_slice(&self.arrows[k..]);
        arrows.extend_from_slice(&self.arrows[..k]);
        Path {
            base: base_of(arrows[0]),
            arrows,
        }
    }

    pub(crate) fn from_parts(base: usize, arrows: Vec<usize>) -> Path {
        Path { base, arrows }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
