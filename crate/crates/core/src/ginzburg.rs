//! Dg path algebras: `B(Q,R)`, the relation superpotential `(Q̃, W)`, Ginzburg
//! dg-algebras, the Leibniz extension of the differential and the
//! generator-level checks used to compare presentations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{sign, Rational};
use crate::path_algebra::{same_quiver, Homogeneity, PathElement, Superpotential};
use crate::quiver::{Arrow, GradedQuiver, Path};

/// One entry of a relation sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub body: PathElement,
}

/// An ordered list of relations, repetitions and zero entries allowed.
#[derive(Clone, Debug)]
pub struct RelationSequence {
    quiver: Arc<GradedQuiver>,
    entries: Vec<Relation>,
}

impl PartialEq for RelationSequence {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.entries == other.entries
    }
}

impl RelationSequence {
    pub fn new(quiver: &Arc<GradedQuiver>) -> Self {
        RelationSequence {
            quiver: Arc::clone(quiver),
            entries: Vec::new(),
        }
    }

    /// Appends a relation from `source` to `target`, checking its support.
    pub fn push(
        &mut self,
        label: &str,
        source: &str,
        target: &str,
        body: PathElement,
    ) -> Result<()> {
        let s = self.quiver.vertex_index(source)?;
        let t = self.quiver.vertex_index(target)?;
        self.push_ix(label, s, t, body)
    }

    pub(crate) fn push_ix(
        &mut self,
        label: &str,
        s: usize,
        t: usize,
        body: PathElement,
    ) -> Result<()> {
        let invalid = |reason: String| Error::InvalidRelation {
            label: label.to_string(),
            reason,
        };
        if !same_quiver(body.quiver(), &self.quiver) {
            return Err(invalid("body lives in another quiver".into()));
        }
        for p in body.terms().keys() {
            if p.is_empty() {
                return Err(invalid(format!(
                    "term `{}` has length zero",
                    self.quiver.format_path(p)
                )));
            }
            if p.base() != s || self.quiver.path_target(p) != t {
                return Err(invalid(format!(
                    "term `{}` does not run from `{}` to `{}`",
                    self.quiver.format_path(p),
                    self.quiver.vertex_id(s),
                    self.quiver.vertex_id(t)
                )));
            }
        }
        self.entries.push(Relation {
            label: label.to_string(),
            source: s,
            target: t,
            body,
        });
        Ok(())
    }

    /// Builds a sequence from `(label, source, target, body)` records.
    pub fn from_entries<'a>(
        quiver: &Arc<GradedQuiver>,
        entries: impl IntoIterator<Item = (&'a str, &'a str, &'a str, PathElement)>,
    ) -> Result<Self> {
        let mut r = RelationSequence::new(quiver);
        for (l, s, t, b) in entries {
            r.push(l, s, t, b)?;
        }
        Ok(r)
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn entries(&self) -> &[Relation] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn bodies(&self) -> impl Iterator<Item = &PathElement> {
        self.entries.iter().map(|r| &r.body)
    }

    /// The sub-sequence keeping the entries at the given positions.
    pub fn select(&self, keep: &[usize]) -> RelationSequence {
        RelationSequence {
            quiver: Arc::clone(&self.quiver),
            entries: keep.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Longest path occurring in any relation (0 when there is none).
    pub fn max_path_len(&self) -> usize {
        self.bodies()
            .filter_map(PathElement::max_len)
            .max()
            .unwrap_or(0)
    }

    /// Checks that every nonzero relation lies in the square of the arrow ideal.
    pub fn check_in_square(&self) -> Result<()> {
        for r in &self.entries {
            if r.body.min_len().is_some_and(|l| l < 2) {
                return Err(Error::NotInSquare(r.label.clone()));
            }
        }
        Ok(())
    }
}

/// What a generator of a constructed dg-algebra stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowRole {
    /// An arrow of the input quiver.
    Base,
    /// `η_ρ` for the k-th relation.
    Eta(usize),
    /// `ε_ρ` for the k-th relation.
    Eps(usize),
    /// The dual `a*` of the arrow with the given index.
    Dual(usize),
    /// The loop `t_v` at the given vertex.
    Loop(usize),
}

/// A dg path algebra: a graded quiver and the differential on its arrows.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    quiver: Arc<GradedQuiver>,
    differential: Vec<PathElement>,
    roles: Vec<ArrowRole>,
}

impl DgAlgebra {
    /// Builds a dg path algebra; arrows absent from `differential` get `d = 0`.
    /// Each `d(a)` must be homogeneous of degree `|a| + 1` with the endpoints of `a`.
    pub fn new(
        quiver: &Arc<GradedQuiver>,
        differential: impl IntoIterator<Item = (String, PathElement)>,
    ) -> Result<Self> {
        let mut d: Vec<PathElement> = (0..quiver.num_arrows())
            .map(|_| PathElement::zero(quiver))
            .collect();
        for (id, x) in differential {
            let a = quiver.arrow_index(&id)?;
            d[a] = x;
        }
        Self::from_parts(quiver, d, vec![ArrowRole::Base; quiver.num_arrows()])
    }

    fn from_parts(
        quiver: &Arc<GradedQuiver>,
        differential: Vec<PathElement>,
        roles: Vec<ArrowRole>,
    ) -> Result<Self> {
        for (a, x) in differential.iter().enumerate() {
            let invalid = |reason: String| Error::InvalidDifferential {
                arrow: quiver.arrow_id(a).to_string(),
                reason,
            };
            if !same_quiver(x.quiver(), quiver) {
                return Err(invalid("lives in another quiver".into()));
            }
            let want = quiver.degree(a) + 1;
            match x.homogeneous_degree() {
                Homogeneity::Zero => {}
                Homogeneity::Mixed => return Err(invalid("not homogeneous".into())),
                Homogeneity::Degree(e) if e != want => {
                    return Err(invalid(format!("has degree {e}, expected {want}")))
                }
                Homogeneity::Degree(_) => {}
            }
            if !x.has_endpoints(quiver.source(a), quiver.target(a)) {
                return Err(invalid("endpoints differ from the arrow's".into()));
            }
        }
        Ok(DgAlgebra {
            quiver: Arc::clone(quiver),
            differential,
            roles,
        })
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    /// `d(a)` for the arrow with the given id.
    pub fn differential(&self, id: &str) -> Result<&PathElement> {
        Ok(&self.differential[self.quiver.arrow_index(id)?])
    }

    pub(crate) fn d_of(&self, a: usize) -> &PathElement {
        &self.differential[a]
    }

    pub fn role(&self, id: &str) -> Result<ArrowRole> {
        Ok(self.roles[self.quiver.arrow_index(id)?])
    }

    pub fn roles(&self) -> &[ArrowRole] {
        &self.roles
    }

    /// `(id, d(id))` for every arrow in declaration order.
    pub fn differentials(&self) -> impl Iterator<Item = (&str, &PathElement)> {
        self.differential
            .iter()
            .enumerate()
            .map(|(a, x)| (self.quiver.arrow_id(a), x))
    }

    /// Whether every generator differential lies in the arrow ideal.
    pub fn differential_in_arrow_ideal(&self) -> std::result::Result<(), String> {
        for (a, x) in self.differential.iter().enumerate() {
            if x.min_len() == Some(0) {
                return Err(self.quiver.arrow_id(a).to_string());
            }
        }
        Ok(())
    }

    /// Extends `d` to `x` as a degree +1 derivation.
    pub fn apply_d(&self, x: &PathElement) -> Result<PathElement> {
        if !same_quiver(x.quiver(), &self.quiver) {
            return Err(Error::QuiverMismatch);
        }
        if x.homogeneous_degree() == Homogeneity::Mixed {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.apply_d_linear(x))
    }

    /// Linear extension of the Leibniz rule, no homogeneity requirement.
    pub(crate) fn apply_d_linear(&self, x: &PathElement) -> PathElement {
        let q = &self.quiver;
        let mut out = PathElement::zero(q);
        for (p, c) in x.terms() {
            self.add_d_of_path(p, c, &mut out);
        }
        out
    }

    /// Adds `c · d(p)` to `out`.
    pub(crate) fn add_d_of_path(&self, p: &Path, c: &Rational, out: &mut PathElement) {
        let q = &self.quiver;
        let arrows = p.arrows();
        let mut prefix_deg = 0i64;
        for (l, &a) in arrows.iter().enumerate() {
            let da = &self.differential[a];
            if !da.is_zero() {
                let s = c * sign(prefix_deg);
                for (mid, k) in da.terms() {
                    let mut path = Vec::with_capacity(arrows.len() + mid.len());
                    path.extend_from_slice(&arrows[..l]);
                    path.extend_from_slice(mid.arrows());
                    path.extend_from_slice(&arrows[l + 1..]);
                    out.add_term(Path::from_parts(p.base(), path), &s * k);
                }
            }
            prefix_deg += q.degree(a);
        }
    }

    /// The sub-dg-algebra on the given arrows, if `d` preserves it.
    pub fn restrict(&self, arrows: &[&str]) -> Result<DgAlgebra> {
        if let Verdict::Counterexample { element, detail } = verify_sub_dg(self, arrows)? {
            return Err(Error::InvalidMap(format!("`{element}` {detail}")));
        }
        let keep: BTreeSet<usize> = arrows
            .iter()
            .map(|a| self.quiver.arrow_index(a))
            .collect::<Result<_>>()?;
        let sub = Arc::new(self.quiver.subquiver(|a| keep.contains(&a)));
        let mut d = Vec::new();
        let mut roles = Vec::new();
        for a in 0..self.quiver.num_arrows() {
            if keep.contains(&a) {
                d.push(self.differential[a].embed(&sub)?);
                roles.push(ArrowRole::Base);
            }
        }
        DgAlgebra::from_parts(&sub, d, roles)
    }
}

/// Outcome of a mechanical check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Counterexample { element: String, detail: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub(crate) fn fail(element: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict::Counterexample {
            element: element.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("ok"),
            Verdict::Counterexample { element, detail } => {
                write!(f, "counterexample `{element}`: {detail}")
            }
        }
    }
}

pub(crate) fn eta_name(label: &str) -> String {
    format!("eta_{label}")
}

pub(crate) fn eps_name(label: &str) -> String {
    format!("eps_{label}")
}

/// Name of the dual arrow `a*`.
pub fn dual_name(a: &str) -> String {
    format!("{a}^")
}

pub(crate) fn loop_name(v: &str) -> String {
    format!("t_{v}")
}

fn require_degree_zero(q: &GradedQuiver) -> Result<()> {
    for a in q.arrows() {
        if a.degree != 0 {
            return Err(Error::NonZeroDegree(a.id.clone()));
        }
    }
    Ok(())
}

fn require_relations_over(q: &Arc<GradedQuiver>, r: &RelationSequence) -> Result<()> {
    if same_quiver(q, r.quiver()) {
        Ok(())
    } else {
        Err(Error::QuiverMismatch)
    }
}

/// `B(Q,R)`: adds `η_ρ: s(ρ) → t(ρ)` of degree −1 with `d(η_ρ) = ρ`.
pub fn build_b(q: &Arc<GradedQuiver>, r: &RelationSequence) -> Result<DgAlgebra> {
    require_degree_zero(q)?;
    require_relations_over(q, r)?;
    let extra = r.entries().iter().map(|rel| {
        Arrow::new(
            &eta_name(&rel.label),
            q.vertex_id(rel.source),
            q.vertex_id(rel.target),
            -1,
        )
    });
    let qp = Arc::new(q.extended(extra)?);
    let mut d: Vec<PathElement> = (0..q.num_arrows())
        .map(|_| PathElement::zero(&qp))
        .collect();
    let mut roles = vec![ArrowRole::Base; q.num_arrows()];
    for (k, rel) in r.entries().iter().enumerate() {
        d.push(rel.body.embed(&qp)?);
        roles.push(ArrowRole::Eta(k));
    }
    DgAlgebra::from_parts(&qp, d, roles)
}

/// `(Q̃, W)`: adds `ε_ρ: t(ρ) → s(ρ)` of degree `2 − m` and sets `W = Σ ε_ρ ρ`.
pub fn build_qw(
    q: &Arc<GradedQuiver>,
    r: &RelationSequence,
    m: i64,
) -> Result<(Arc<GradedQuiver>, Superpotential)> {
    if m < 2 {
        return Err(Error::InvalidM { m, min: 2 });
    }
    require_degree_zero(q)?;
    require_relations_over(q, r)?;
    let extra = r.entries().iter().map(|rel| {
        Arrow::new(
            &eps_name(&rel.label),
            q.vertex_id(rel.target),
            q.vertex_id(rel.source),
            2 - m,
        )
    });
    let qt = Arc::new(q.extended(extra)?);
    let mut sum = PathElement::zero(&qt);
    for (k, rel) in r.entries().iter().enumerate() {
        let eps = PathElement::from_path(&qt, qt.arrow_path(q.num_arrows() + k));
        sum = sum.add(&eps.mul(&rel.body.embed(&qt)?)?)?;
    }
    let w = Superpotential::cyclic_reduce_with_degree(&sum, 2 - m)?;
    Ok((qt, w))
}

/// Sign convention for `d(t_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LoopSign {
    /// `d(t_i) = e_i (Σ [α, α*]) e_i`.
    #[default]
    Standard,
    /// The same sum multiplied by `(−1)^{m−1}`.
    Shifted,
}

/// `Γ_{m+1}(Q,W)` on the doubled quiver `Q̄`.
pub fn build_ginzburg(q: &Arc<GradedQuiver>, w: &Superpotential, m: i64) -> Result<DgAlgebra> {
    build_ginzburg_with(q, w, m, LoopSign::Standard)
}

pub fn build_ginzburg_with(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    m: i64,
    loop_sign: LoopSign,
) -> Result<DgAlgebra> {
    if !same_quiver(q, w.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    if !w.is_zero() {
        if let Some(found) = w.degree() {
            if found != 2 - m {
                return Err(Error::DegreeMismatch {
                    expected: 2 - m,
                    found,
                });
            }
        }
    }
    let n = q.num_arrows();
    let mut extra: Vec<Arrow> = q
        .arrows()
        .iter()
        .map(|a| Arrow::new(&dual_name(&a.id), &a.target, &a.source, 1 - m - a.degree))
        .collect();
    extra.extend(
        q.vertices()
            .iter()
            .map(|v| Arrow::new(&loop_name(v), v, v, -m)),
    );
    let qb = Arc::new(q.extended(extra)?);
    let wb = w.embed(&qb)?;

    let mut d: Vec<PathElement> = (0..n).map(|_| PathElement::zero(&qb)).collect();
    let mut roles = vec![ArrowRole::Base; n];
    for a in 0..n {
        d.push(wb.cyclic_derivative_ix(a));
        roles.push(ArrowRole::Dual(a));
    }
    let t_factor = match loop_sign {
        LoopSign::Standard => Rational::one(),
        LoopSign::Shifted => sign(m - 1),
    };
    for v in 0..q.num_vertices() {
        let mut x = PathElement::zero(&qb);
        for a in 0..n {
            let (s, t) = (q.source(a), q.target(a));
            let al = PathElement::from_path(&qb, qb.arrow_path(a));
            let st = PathElement::from_path(&qb, qb.arrow_path(n + a));
            let sigma = sign(qb.degree(a) * qb.degree(n + a));
            // e_v [α, α*] e_v: α α* lives at s(α), α* α at t(α)
            if s == v {
                x.add_scaled_unchecked(&al.mul_unchecked(&st), &Rational::one());
            }
            if t == v {
                x.add_scaled_unchecked(&st.mul_unchecked(&al), &-sigma);
            }
        }
        d.push(x.scale(&t_factor));
        roles.push(ArrowRole::Loop(v));
    }
    DgAlgebra::from_parts(&qb, d, roles)
}

/// `Γ(Q,R,m) = Γ_{m+1}(Q̃, W)`.
pub fn build_gamma(q: &Arc<GradedQuiver>, r: &RelationSequence, m: i64) -> Result<DgAlgebra> {
    let (qt, w) = build_qw(q, r, m)?;
    let mut dg = build_ginzburg(&qt, &w, m)?;
    let n = q.num_arrows();
    for k in 0..r.len() {
        dg.roles[n + k] = ArrowRole::Eps(k);
    }
    Ok(dg)
}

/// Sampling parameters for [`check_d_squared`].
#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    pub max_len: usize,
    pub samples_per_degree: usize,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_len: 6,
            samples_per_degree: 200,
            seed: 0,
        }
    }
}

/// A random path of length `1..=max_len`, or `None` if the walk cannot start.
pub(crate) fn random_path(q: &GradedQuiver, max_len: usize, rng: &mut impl Rng) -> Option<Path> {
    if q.num_arrows() == 0 || max_len == 0 {
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
    Some(Path::from_parts(q.source(first), arrows))
}

/// Checks `d² = 0` on every generator and on sampled paths.
pub fn check_d_squared(dg: &DgAlgebra, opts: SampleOptions) -> Verdict {
    let q = dg.quiver();
    for a in 0..q.num_arrows() {
        let dd = dg.apply_d_linear(dg.d_of(a));
        if !dd.is_zero() {
            return Verdict::fail(q.arrow_id(a), format!("d(d(a)) = {dd}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let degrees: BTreeSet<i64> = q.arrows().iter().map(|a| a.degree).collect();
    let cap = opts.samples_per_degree * 20 * degrees.len().max(1);
    let mut buckets: BTreeMap<i64, usize> = BTreeMap::new();
    for _ in 0..cap {
        let Some(p) = random_path(q, opts.max_len, &mut rng) else {
            break;
        };
        let deg = q.path_degree(&p);
        let count = buckets.entry(deg).or_insert(0);
        if *count >= opts.samples_per_degree {
            continue;
        }
        *count += 1;
        let x = PathElement::from_path(q, p.clone());
        let dd = dg.apply_d_linear(&dg.apply_d_linear(&x));
        if !dd.is_zero() {
            return Verdict::fail(q.format_path(&p), format!("d(d(x)) = {dd}"));
        }
    }
    Verdict::Ok
}

/// Replaces an arrow `a: i → j` not occurring in `w` by `a*: j → i` of degree `1 − m − |a|`.
pub fn replace_arrow(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    a: &str,
    m: i64,
) -> Result<(Arc<GradedQuiver>, Superpotential)> {
    if !same_quiver(q, w.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    let ix = q.arrow_index(a)?;
    if w.contains_arrow(ix) {
        return Err(Error::ArrowInSuperpotential(a.to_string()));
    }
    let arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if i == ix {
                Arrow::new(&dual_name(&x.id), &x.target, &x.source, 1 - m - x.degree)
            } else {
                x.clone()
            }
        })
        .collect();
    let qp = Arc::new(GradedQuiver::new(q.vertices().to_vec(), arrows)?);
    let mut wp = Superpotential::cyclic_reduce(&w.to_element().embed(&qp)?)?;
    if wp.is_zero() {
        wp = Superpotential::zero(&qp, w.degree());
    }
    Ok((qp, wp))
}

/// A map from arrows of one quiver to signed arrows of another, by id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedArrowMap {
    entries: BTreeMap<String, (i64, String)>,
}

impl SignedArrowMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// The identity on the arrows of `q`.
    pub fn identity(q: &GradedQuiver) -> Self {
        let mut f = Self::new();
        for a in q.arrows() {
            f.insert(&a.id, 1, &a.id);
        }
        f
    }

    /// Sends `from` to `sign · to`; `sign` must be ±1.
    pub fn insert(&mut self, from: &str, sign: i64, to: &str) {
        self.entries
            .insert(from.to_string(), (sign, to.to_string()));
    }

    pub fn get(&self, from: &str) -> Option<(i64, &str)> {
        self.entries.get(from).map(|(s, t)| (*s, t.as_str()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, i64, &str)> {
        self.entries
            .iter()
            .map(|(f, (s, t))| (f.as_str(), *s, t.as_str()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SignedArrowMap) -> SignedArrowMap {
        let mut out = SignedArrowMap::new();
        for (from, s, to) in self.entries() {
            match other.get(to) {
                Some((s2, to2)) => out.insert(from, s * s2, to2),
                None => out.insert(from, s, to),
            }
        }
        out
    }
}

/// The isomorphism `Γ_{m+1}(Q′,W′) → Γ_{m+1}(Q,W)` for an arrow replacement.
///
/// `a*` goes to `a*` and `(a*)*` goes to `−(−1)^{m|a|} a`; every other arrow is fixed.
pub fn replace_arrow_witness(q: &GradedQuiver, a: &str, m: i64) -> Result<SignedArrowMap> {
    let ix = q.arrow_index(a)?;
    let deg = q.degree(ix);
    let mut f = SignedArrowMap::new();
    for x in q.arrows() {
        if x.id == a {
            continue;
        }
        f.insert(&x.id, 1, &x.id);
        f.insert(&dual_name(&x.id), 1, &dual_name(&x.id));
    }
    let star = dual_name(a);
    f.insert(&star, 1, &star);
    let lambda = if (m * deg).rem_euclid(2) == 0 { -1 } else { 1 };
    f.insert(&dual_name(&star), lambda, a);
    for v in q.vertices() {
        f.insert(&loop_name(v), 1, &loop_name(v));
    }
    Ok(f)
}

/// For `m ≥ 2` and `1 − m ≤ |α| ≤ 0`, replaces every arrow of degree `1 − m`
/// by its dual so that all degrees lie in `[2 − m, 0]`.
pub fn reduce_degree_window(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    m: i64,
) -> Result<(Arc<GradedQuiver>, Superpotential, SignedArrowMap)> {
    if m < 2 {
        return Err(Error::InvalidM { m, min: 2 });
    }
    for a in q.arrows() {
        if a.degree > 0 || a.degree < 1 - m {
            return Err(Error::InvalidQuiver(format!(
                "arrow `{}` has degree {} outside [{}, 0]",
                a.id,
                a.degree,
                1 - m
            )));
        }
    }
    let (mut qc, mut wc) = (Arc::clone(q), w.clone());
    let mut witness: Option<SignedArrowMap> = None;
    let targets: Vec<String> = q
        .arrows()
        .iter()
        .filter(|a| a.degree == 1 - m)
        .map(|a| a.id.clone())
        .collect();
    for a in targets {
        let step = replace_arrow_witness(&qc, &a, m)?;
        let (qn, wn) = replace_arrow(&qc, &wc, &a, m)?;
        witness = Some(match witness {
            None => step,
            Some(prev) => step.then(&prev),
        });
        qc = qn;
        wc = wn;
    }
    let witness = witness.unwrap_or_else(|| {
        let gb = build_ginzburg(&qc, &wc, m).expect("valid input");
        SignedArrowMap::identity(gb.quiver())
    });
    Ok((qc, wc, witness))
}

/// Checks that `d(a)` only uses `sub_arrows` for each `a` in `sub_arrows`.
pub fn verify_sub_dg(dg: &DgAlgebra, sub_arrows: &[&str]) -> Result<Verdict> {
    let q = dg.quiver();
    let keep: BTreeSet<usize> = sub_arrows
        .iter()
        .map(|a| q.arrow_index(a))
        .collect::<Result<_>>()?;
    for &a in &keep {
        let da = dg.d_of(a);
        for p in da.terms().keys() {
            if let Some(&bad) = p.arrows().iter().find(|x| !keep.contains(x)) {
                return Ok(Verdict::fail(
                    q.arrow_id(a),
                    format!("d({}) = {} uses `{}`", q.arrow_id(a), da, q.arrow_id(bad)),
                ));
            }
        }
    }
    Ok(Verdict::Ok)
}

/// Checks that a signed arrow bijection `A → B` commutes with the differentials.
pub fn check_dg_isomorphism(f: &SignedArrowMap, a: &DgAlgebra, b: &DgAlgebra) -> Result<Verdict> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.num_vertices() != qb.num_vertices() {
        return Err(Error::InvalidMap("vertex sets differ".into()));
    }
    let vmap: Vec<usize> = qa
        .vertices()
        .iter()
        .map(|v| {
            qb.vertex_index(v)
                .map_err(|_| Error::InvalidMap(format!("vertex `{v}` missing in the target")))
        })
        .collect::<Result<_>>()?;
    if qa.num_arrows() != qb.num_arrows() {
        return Err(Error::InvalidMap(format!(
            "{} arrows cannot map bijectively onto {}",
            qa.num_arrows(),
            qb.num_arrows()
        )));
    }
    let mut hit = BTreeSet::new();
    let mut images = Vec::with_capacity(qa.num_arrows());
    for x in 0..qa.num_arrows() {
        let id = qa.arrow_id(x);
        let (s, to) = f
            .get(id)
            .ok_or_else(|| Error::InvalidMap(format!("arrow `{id}` has no image")))?;
        if s != 1 && s != -1 {
            return Err(Error::InvalidMap(format!("sign {s} for `{id}` is not ±1")));
        }
        let y = qb
            .arrow_index(to)
            .map_err(|_| Error::InvalidMap(format!("image `{to}` of `{id}` is not an arrow")))?;
        if !hit.insert(y) {
            return Err(Error::InvalidMap(format!("`{to}` is hit twice")));
        }
        if qa.degree(x) != qb.degree(y) {
            return Err(Error::InvalidMap(format!(
                "`{id}` has degree {} but `{to}` has degree {}",
                qa.degree(x),
                qb.degree(y)
            )));
        }
        if vmap[qa.source(x)] != qb.source(y) || vmap[qa.target(x)] != qb.target(y) {
            return Err(Error::InvalidMap(format!(
                "`{id}` and `{to}` have different endpoints"
            )));
        }
        images.push(
            PathElement::from_path(qb, qb.arrow_path(y)).scale(&Rational::from_integer(s.into())),
        );
    }
    for x in 0..qa.num_arrows() {
        let lhs = a.d_of(x).substitute(qb, &vmap, &images);
        let rhs = b.apply_d_linear(&images[x]);
        if lhs != rhs {
            return Ok(Verdict::fail(
                qa.arrow_id(x),
                format!("f(d(a)) = {lhs} but d(f(a)) = {rhs}"),
            ));
        }
    }
    Ok(Verdict::Ok)
}

/// The explicit presentation of the Calabi-Yau completion of a sub-dg-algebra
/// `B = (KQ′, d)`, together with the generator map `φ` to `Γ_{m+1}(Q,W)`.
#[derive(Clone, Debug)]
pub struct CompletionPresentation {
    /// Arrows of `Q′`: the arrows in `Ω` and the duals `β*` for `β ∉ Ω`.
    pub sub_arrows: Vec<String>,
    pub completion: DgAlgebra,
    pub phi: SignedArrowMap,
}

/// For `W = Σ_{β ∉ Ω} β ω_β` with `ω_β ∈ KQ_Ω`, builds `(KQ̄′, d′)` and `φ`.
///
/// The loop differential pairs each `β*` with `(β*)*` as `[(β*)*, β*]`, which
/// makes `(KQ̄′, d′)` a Ginzburg dg-algebra for every `m`.
pub fn completion_presentation(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    omega: &[&str],
    m: i64,
) -> Result<CompletionPresentation> {
    completion_presentation_impl(q, w, omega, m, true)
}

/// Like [`completion_presentation`] but with the loop sum taken literally as
/// `Σ_{γ ∈ Q′_1} [γ, γ*]`. For even `m` this is not a differential.
pub fn completion_presentation_as_written(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    omega: &[&str],
    m: i64,
) -> Result<CompletionPresentation> {
    completion_presentation_impl(q, w, omega, m, false)
}

fn completion_presentation_impl(
    q: &Arc<GradedQuiver>,
    w: &Superpotential,
    omega: &[&str],
    m: i64,
    reorient: bool,
) -> Result<CompletionPresentation> {
    if !same_quiver(q, w.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    let om: BTreeSet<usize> = omega
        .iter()
        .map(|a| q.arrow_index(a))
        .collect::<Result<_>>()?;
    for p in w.terms().keys() {
        let outside = p.arrows().iter().filter(|a| !om.contains(a)).count();
        if outside != 1 {
            return Err(Error::NotSplitSuperpotential(format!(
                "term `{}` has {outside} arrows outside the subset",
                q.format_path(p)
            )));
        }
    }
    let betas: Vec<usize> = (0..q.num_arrows()).filter(|a| !om.contains(a)).collect();

    // Q̄′: arrows of Q′, then their duals, then the loops.
    let mut prime: Vec<Arrow> = Vec::new();
    for a in 0..q.num_arrows() {
        let x = &q.arrows()[a];
        if om.contains(&a) {
            prime.push(x.clone());
        } else {
            prime.push(Arrow::new(
                &dual_name(&x.id),
                &x.target,
                &x.source,
                1 - m - x.degree,
            ));
        }
    }
    let n = prime.len();
    let mut all = prime.clone();
    for x in &prime {
        all.push(Arrow::new(
            &dual_name(&x.id),
            &x.target,
            &x.source,
            1 - m - x.degree,
        ));
    }
    for v in q.vertices() {
        all.push(Arrow::new(&loop_name(v), v, v, -m));
    }
    let qb = Arc::new(GradedQuiver::new(q.vertices().to_vec(), all)?);

    // W′ = Σ (−1)^{m−1} (β*)* ω_β with ω_β = (−1)^{|β|} ∂_β W
    let mut images: Vec<PathElement> = Vec::with_capacity(q.num_arrows());
    for a in 0..q.num_arrows() {
        let target = if om.contains(&a) {
            q.arrow_id(a).to_string()
        } else {
            dual_name(&dual_name(q.arrow_id(a)))
        };
        images.push(PathElement::arrow(&qb, &target)?);
    }
    let vmap: Vec<usize> = (0..q.num_vertices()).collect();
    let mut wprime = PathElement::zero(&qb);
    for &b in &betas {
        let omega_b = w.cyclic_derivative_ix(b).scale(&sign(q.degree(b)));
        let omega_b = omega_b.substitute(&qb, &vmap, &images);
        let bb = &images[b];
        wprime.add_scaled_unchecked(&bb.mul_unchecked(&omega_b), &sign(m - 1));
    }
    let wprime = Superpotential::cyclic_reduce(&wprime)?;

    let mut d: Vec<PathElement> = Vec::with_capacity(qb.num_arrows());
    for g in 0..n {
        d.push(wprime.cyclic_derivative_ix(n + g));
    }
    for g in 0..n {
        d.push(wprime.cyclic_derivative_ix(g));
    }
    for v in 0..q.num_vertices() {
        let mut x = PathElement::zero(&qb);
        for g in 0..n {
            let (first, second) = if reorient && !om.contains(&g) {
                (n + g, g)
            } else {
                (g, n + g)
            };
            let al = PathElement::from_path(&qb, qb.arrow_path(first));
            let st = PathElement::from_path(&qb, qb.arrow_path(second));
            let sigma = sign(qb.degree(g) * qb.degree(n + g));
            if qb.source(first) == v {
                x.add_scaled_unchecked(&al.mul_unchecked(&st), &Rational::one());
            }
            if qb.target(first) == v {
                x.add_scaled_unchecked(&st.mul_unchecked(&al), &-sigma);
            }
        }
        d.push(x.scale(&sign(m + 1)));
    }
    let mut roles = vec![ArrowRole::Base; n];
    roles.extend((0..n).map(ArrowRole::Dual));
    roles.extend((0..q.num_vertices()).map(ArrowRole::Loop));
    let completion = DgAlgebra::from_parts(&qb, d, roles)?;

    let s = if (m - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut phi = SignedArrowMap::new();
    for a in 0..q.num_arrows() {
        let id = q.arrow_id(a);
        let star = dual_name(id);
        if om.contains(&a) {
            phi.insert(id, 1, id);
            phi.insert(&star, s, &star);
        } else {
            phi.insert(&star, s, &star);
            phi.insert(&dual_name(&star), 1, id);
        }
    }
    for v in q.vertices() {
        phi.insert(&loop_name(v), 1, &loop_name(v));
    }
    Ok(CompletionPresentation {
        sub_arrows: prime.into_iter().map(|a| a.id).collect(),
        completion,
        phi,
    })
}

/// The map `t_i ↦ (−1)^{m−1} t_i` from the standard-sign Ginzburg algebra to
/// the one with the alternative loop sign, identity on other arrows.
pub fn loop_sign_witness(dg: &DgAlgebra, m: i64) -> SignedArrowMap {
    let s = if (m - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut f = SignedArrowMap::new();
    for (a, x) in dg.quiver().arrows().iter().enumerate() {
        let sg = if matches!(dg.roles()[a], ArrowRole::Loop(_)) {
            s
        } else {
            1
        };
        f.insert(&x.id, sg, &x.id);
    }
    f
}

/// One row of the generator audit of `Γ(Q,R,m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub arrow: String,
    pub kind: &'static str,
    pub degree: i64,
    pub expected_degree: i64,
    pub differential_ok: bool,
}

/// Compares every generator of `Γ(Q,R,m)` with the expected degree and
/// differential: `α`: 0, `ε*_k`: −1 with `d = (−1)^m ρ_k`, `ε_k`: `2 − m`,
/// `α*`: `1 − m`, `t_i`: `−m`.
pub fn generator_audit(dg: &DgAlgebra, r: &RelationSequence, m: i64) -> Result<Vec<AuditRow>> {
    let q = dg.quiver();
    let mut rows = Vec::new();
    for (a, role) in dg.roles().iter().enumerate() {
        let d = dg.d_of(a);
        let (kind, expected, ok) = match *role {
            ArrowRole::Base => ("arrow", 0, d.is_zero()),
            ArrowRole::Eps(_) => ("eps", 2 - m, d.is_zero()),
            ArrowRole::Eta(_) => ("eta", -1, true),
            ArrowRole::Loop(_) => ("loop", -m, true),
            ArrowRole::Dual(x) => match dg.roles()[x] {
                ArrowRole::Eps(k) => {
                    let rho = r.entries()[k].body.embed(q)?.scale(&sign(m));
                    ("eps*", -1, *d == rho)
                }
                _ => ("arrow*", 1 - m, true),
            },
        };
        rows.push(AuditRow {
            arrow: q.arrow_id(a).to_string(),
            kind,
            degree: q.degree(a),
            expected_degree: expected,
            differential_ok: ok,
        });
    }
    Ok(rows)
}

/// Whether every row of [`generator_audit`] matches.
pub fn audit_passes(rows: &[AuditRow]) -> bool {
    rows.iter()
        .all(|r| r.degree == r.expected_degree && r.differential_ok)
}
