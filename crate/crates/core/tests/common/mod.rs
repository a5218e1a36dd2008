#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use ginzburg_dg::ginzburg::RelationSequence;
use ginzburg_dg::linalg::int;
use ginzburg_dg::quiver::GradedQuiver;
use ginzburg_dg::{Path, PathElement};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// A random acyclic quiver on 2 to `max_vertices` vertices whose arrows all
/// point from lower to higher index. Vertices `v0 -> v1 -> v2` always form a
/// path when `chain` is set.
pub fn random_acyclic_quiver(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_arrows: usize,
    chain: bool,
) -> Arc<GradedQuiver> {
    let lo = if chain { 3 } else { 2 };
    let n = rng.gen_range(lo..=max_vertices.max(lo));
    let mut b = GradedQuiver::builder();
    for i in 0..n {
        b = b.vertex(&format!("v{i}"));
    }
    let mut k = 0;
    if chain {
        b = b.arrow("a0", "v0", "v1", 0).arrow("a1", "v1", "v2", 0);
        k = 2;
    }
    let extra = rng.gen_range(if chain { 0 } else { 1 }..=max_arrows.saturating_sub(k).max(1));
    for _ in 0..extra {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        b = b.arrow(&format!("a{k}"), &format!("v{s}"), &format!("v{t}"), 0);
        k += 1;
    }
    Arc::new(b.build().unwrap())
}

/// A random quiver that may contain loops and oriented cycles.
pub fn random_quiver(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_arrows: usize,
) -> Arc<GradedQuiver> {
    let n = rng.gen_range(1..=max_vertices);
    let mut b = GradedQuiver::builder();
    for i in 0..n {
        b = b.vertex(&format!("v{i}"));
    }
    let arrows = rng.gen_range(1..=max_arrows);
    for k in 0..arrows {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        b = b.arrow(&format!("a{k}"), &format!("v{s}"), &format!("v{t}"), 0);
    }
    Arc::new(b.build().unwrap())
}

/// A random graded quiver with degrees in `-3..=1`.
pub fn random_graded_quiver(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_arrows: usize,
) -> Arc<GradedQuiver> {
    let n = rng.gen_range(1..=max_vertices);
    let mut b = GradedQuiver::builder();
    for i in 0..n {
        b = b.vertex(&format!("v{i}"));
    }
    for k in 0..rng.gen_range(1..=max_arrows) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        b = b.arrow(
            &format!("a{k}"),
            &format!("v{s}"),
            &format!("v{t}"),
            rng.gen_range(-3..=1),
        );
    }
    Arc::new(b.build().unwrap())
}

fn nonzero_coeff(rng: &mut impl Rng) -> i64 {
    *[-2i64, -1, 1, 2, 3].choose(rng).unwrap()
}

/// Up to `count` relations, each a combination of paths of length 2 to
/// `max_len` sharing endpoints; occasionally a zero relation.
pub fn random_relations(
    rng: &mut impl Rng,
    q: &Arc<GradedQuiver>,
    count: usize,
    max_len: usize,
) -> RelationSequence {
    let mut by_ends: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in q.enumerate_paths(max_len, None) {
        if p.len() >= 2 {
            by_ends
                .entry((p.base(), q.path_target(&p)))
                .or_default()
                .push(p);
        }
    }
    let ends: Vec<_> = by_ends.keys().copied().collect();
    let mut r = RelationSequence::new(q);
    for k in 0..count {
        let label = format!("r{k}");
        if ends.is_empty() || rng.gen_bool(0.1) {
            let s = rng.gen_range(0..q.num_vertices());
            let t = rng.gen_range(0..q.num_vertices());
            r.push(&label, q.vertex_id(s), q.vertex_id(t), PathElement::zero(q))
                .unwrap();
            continue;
        }
        let e = *ends.choose(rng).unwrap();
        let paths = &by_ends[&e];
        let terms = rng.gen_range(1..=paths.len().min(3));
        let mut body = PathElement::zero(q);
        for p in paths.choose_multiple(rng, terms) {
            let x = PathElement::from_path(q, p.clone()).scale(&int(nonzero_coeff(rng)));
            body = body.add(&x).unwrap();
        }
        r.push(&label, q.vertex_id(e.0), q.vertex_id(e.1), body)
            .unwrap();
    }
    r
}

/// A random path of length `1..=max_len` in `q`, if `q` has arrows.
pub fn random_path(rng: &mut impl Rng, q: &GradedQuiver, max_len: usize) -> Option<Path> {
    if q.num_arrows() == 0 {
        return None;
    }
    let len = rng.gen_range(1..=max_len);
    let first = rng.gen_range(0..q.num_arrows());
    let mut arrows = vec![first];
    let mut at = q.target(first);
    while arrows.len() < len {
        match q.out_arrows(at).choose(rng) {
            Some(&a) => {
                arrows.push(a);
                at = q.target(a);
            }
            None => break,
        }
    }
    Some(q.path(&arrows).unwrap())
}

/// A random path starting at vertex `v`, possibly trivial.
pub fn random_path_from(rng: &mut impl Rng, q: &GradedQuiver, v: usize, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut arrows = Vec::new();
    let mut at = v;
    while arrows.len() < len {
        match q.out_arrows(at).choose(rng) {
            Some(&a) => {
                arrows.push(a);
                at = q.target(a);
            }
            None => break,
        }
    }
    if arrows.is_empty() {
        q.trivial(v)
    } else {
        q.path(&arrows).unwrap()
    }
}
