//! Admissible ideals of path algebras by truncated linear algebra: bounds,
//! quotient dimensions, membership, minimal systems of relations,
//! `I/(Ir + rI)` and the relation-extension check for `m = 2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::One;

use crate::error::{Error, Result};
use crate::ginzburg::{build_gamma, ArrowRole, RelationSequence, Verdict};
use crate::homology::h0_presentation;
use crate::linalg::{DenseMatrix, EchelonBasis, Rational};
use crate::path_algebra::PathElement;
use crate::quiver::{GradedQuiver, Path};

/// Default cap for the admissibility search.
pub const DEFAULT_MAX_N: usize = 12;

/// Largest column count tried when certifying `r^N ⊆ (R)` exactly.
const CERTIFY_MAX_COLS: usize = 60_000;

/// Paths of length `< bound` grouped by source and by target.
struct PathTable {
    paths: Vec<Path>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
}

impl PathTable {
    fn new(q: &GradedQuiver, max_len: usize) -> Self {
        let paths = q.enumerate_paths(max_len, None);
        let mut by_source = vec![Vec::new(); q.num_vertices()];
        let mut by_target = vec![Vec::new(); q.num_vertices()];
        for (i, p) in paths.iter().enumerate() {
            by_source[p.base()].push(i);
            by_target[q.path_target(p)].push(i);
        }
        PathTable {
            paths,
            by_source,
            by_target,
        }
    }
}

/// Calls `f(u, v)` for all paths `u` ending at `s` and `v` starting at `t`
/// with `lo <= len(u) + len(v) <= hi`.
fn for_each_context(
    table: &PathTable,
    s: usize,
    t: usize,
    lo: usize,
    hi: usize,
    mut f: impl FnMut(&Path, &Path),
) {
    for &ui in &table.by_target[s] {
        let u = &table.paths[ui];
        if u.len() > hi {
            continue;
        }
        for &vi in &table.by_source[t] {
            let v = &table.paths[vi];
            let k = u.len() + v.len();
            if k >= lo && k <= hi {
                f(u, v);
            }
        }
    }
}

/// `u x v` as a term map, dropping terms of length `>= bound` when given.
fn sandwich(
    q: &GradedQuiver,
    u: &Path,
    x: &PathElement,
    v: &Path,
    bound: Option<usize>,
) -> Vec<(Path, Rational)> {
    let mut out = Vec::with_capacity(x.len());
    for (p, c) in x.terms() {
        if bound.is_some_and(|b| u.len() + p.len() + v.len() >= b) {
            continue;
        }
        let mut arrows = Vec::with_capacity(u.len() + p.len() + v.len());
        arrows.extend_from_slice(u.arrows());
        arrows.extend_from_slice(p.arrows());
        arrows.extend_from_slice(v.arrows());
        let base = if u.is_empty() { p.base() } else { u.base() };
        debug_assert!(q.is_composable(&Path::from_parts(base, arrows.clone())));
        out.push((Path::from_parts(base, arrows), c.clone()));
    }
    out
}

/// The span of the truncations to length `< bound` of `u ρ v`.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    quiver: Arc<GradedQuiver>,
    bound: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    echelon: EchelonBasis,
}

impl TruncatedIdeal {
    /// Uses the products `u ρ v` with `len(u) + len(v) >= min_context`.
    pub fn build(r: &RelationSequence, bound: usize, min_context: usize) -> Self {
        let q = r.quiver();
        let table = PathTable::new(q, bound.saturating_sub(1));
        let index: HashMap<Path, usize> = table
            .paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut echelon = EchelonBasis::new(table.paths.len());
        'outer: for rel in r.entries() {
            let Some(min_len) = rel.body.min_len() else {
                continue;
            };
            if min_len >= bound {
                continue;
            }
            let hi = bound - 1 - min_len;
            let mut rows = Vec::new();
            for_each_context(&table, rel.source, rel.target, min_context, hi, |u, v| {
                let terms = sandwich(q, u, &rel.body, v, Some(bound));
                rows.push(
                    terms
                        .into_iter()
                        .map(|(p, c)| (index[&p], c))
                        .collect::<BTreeMap<_, _>>(),
                );
            });
            rows.sort_by_key(BTreeMap::len);
            for row in rows {
                echelon.insert(row);
                if echelon.rank() == table.paths.len() {
                    break 'outer;
                }
            }
        }
        TruncatedIdeal {
            quiver: Arc::clone(q),
            bound,
            basis: table.paths,
            index,
            echelon,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Paths of length `< bound`, the column basis.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// `dim KQ_{<bound} / span`.
    pub fn quotient_dim(&self) -> usize {
        self.basis.len() - self.rank()
    }

    fn coords(&self, x: &PathElement) -> Result<BTreeMap<usize, Rational>> {
        let mut v = BTreeMap::new();
        for (p, c) in x.terms() {
            match self.index.get(p) {
                Some(&i) => {
                    v.insert(i, c.clone());
                }
                None => {
                    return Err(Error::SupportTooLong {
                        len: p.len(),
                        bound: self.bound,
                    })
                }
            }
        }
        Ok(v)
    }

    /// Whether `x`, supported in lengths `< bound`, lies in the span.
    pub fn contains(&self, x: &PathElement) -> Result<bool> {
        Ok(self.echelon.contains(self.coords(x)?))
    }

    /// Adds the truncation of `x` as an extra row; returns whether the rank grew.
    pub fn insert_truncated(&mut self, x: &PathElement) -> bool {
        let t = x.truncate(self.bound - 1);
        let v = self.coords(&t).expect("truncated");
        self.echelon.insert(v)
    }

    /// Canonical representative of `x` modulo the span, after dropping terms
    /// of length `>= bound`.
    pub fn reduce(&self, x: &PathElement) -> PathElement {
        let t = x.truncate(self.bound - 1);
        let v = self.echelon.reduce(self.coords(&t).expect("truncated"));
        PathElement::from_terms(
            &self.quiver,
            v.into_iter().map(|(i, c)| (self.basis[i].clone(), c)),
        )
    }

    /// Paths whose classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Path> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.echelon.is_pivot(*i))
            .map(|(_, p)| p.clone())
            .collect()
    }
}

fn length_homogeneous(r: &RelationSequence) -> bool {
    r.bodies().all(|x| x.min_len() == x.max_len())
}

/// Exact check that every path of length `n` is a finite combination of
/// products `u ρ v`, searching contexts of growing length.
fn certify(r: &RelationSequence, n: usize) -> Result<()> {
    if length_homogeneous(r) {
        return Ok(());
    }
    let q = r.quiver();
    let targets: Vec<Path> = q
        .enumerate_paths(n, None)
        .into_iter()
        .filter(|p| p.len() == n)
        .collect();
    if targets.is_empty() {
        return Ok(());
    }
    let longest = r.max_path_len();
    let shortest = r
        .bodies()
        .filter_map(PathElement::min_len)
        .min()
        .unwrap_or(0);
    let k0 = n.saturating_sub(shortest);
    for k in k0..=k0 + n + 2 {
        let table = PathTable::new(q, longest + k);
        if table.paths.len() > CERTIFY_MAX_COLS {
            break;
        }
        let index: HashMap<&Path, usize> = table
            .paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut echelon = EchelonBasis::new(table.paths.len());
        for rel in r.entries() {
            if rel.body.is_zero() {
                continue;
            }
            for_each_context(&table, rel.source, rel.target, 0, k, |u, v| {
                let row: BTreeMap<usize, Rational> = sandwich(q, u, &rel.body, v, None)
                    .into_iter()
                    .map(|(p, c)| (index[&p], c))
                    .collect();
                echelon.insert(row);
            });
        }
        let all_in = targets
            .iter()
            .all(|p| echelon.contains(BTreeMap::from([(index[p], Rational::one())])));
        if all_in {
            return Ok(());
        }
    }
    Err(Error::AdmissibilityNotCertified { bound: n })
}

/// Smallest `N` with `r^N ⊆ (R)`, searching `2..=max_n`.
///
/// Candidates come from the truncated test `r^N ⊆ (R) + r^{N+1}`; the first
/// candidate is then certified exactly. Since the truncated test passes at
/// every admissibility bound, a failed certificate means `(R)` is not
/// admissible as far as the bounded search can tell.
pub fn find_admissibility_bound(r: &RelationSequence, max_n: usize) -> Result<usize> {
    if max_n < 2 {
        return Err(Error::InvalidBound(max_n));
    }
    r.check_in_square()?;
    let q = r.quiver();
    for n in 2..=max_n {
        let ideal = TruncatedIdeal::build(r, n + 1, 0);
        let covered = ideal.basis().iter().filter(|p| p.len() == n).all(|p| {
            ideal
                .contains(&PathElement::from_path(q, p.clone()))
                .unwrap()
        });
        if covered {
            certify(r, n)?;
            return Ok(n);
        }
    }
    Err(Error::AdmissibilitySearchExhausted(max_n))
}

/// An ideal `(R)` together with a verified admissibility bound.
#[derive(Clone, Debug)]
pub struct AdmissibleIdeal {
    relations: RelationSequence,
    bound: usize,
    ideal: TruncatedIdeal,
}

impl AdmissibleIdeal {
    /// Finds the smallest bound up to `max_n`.
    pub fn new(r: &RelationSequence, max_n: usize) -> Result<Self> {
        let n = find_admissibility_bound(r, max_n)?;
        Ok(Self::unchecked(r, n))
    }

    /// Checks that `r^n ⊆ (R)`.
    pub fn with_bound(r: &RelationSequence, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidBound(n));
        }
        match find_admissibility_bound(r, n) {
            Ok(n0) if n0 <= n => Ok(Self::unchecked(r, n)),
            Ok(_) | Err(Error::AdmissibilitySearchExhausted(_)) => Err(Error::InvalidBound(n)),
            Err(e) => Err(e),
        }
    }

    fn unchecked(r: &RelationSequence, n: usize) -> Self {
        AdmissibleIdeal {
            relations: r.clone(),
            bound: n,
            ideal: TruncatedIdeal::build(r, n, 0),
        }
    }

    pub fn relations(&self) -> &RelationSequence {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `dim KQ/(R)`.
    pub fn algebra_dim(&self) -> usize {
        self.ideal.quotient_dim()
    }

    /// Membership for `x` supported in lengths `< N`.
    pub fn contains(&self, x: &PathElement) -> Result<bool> {
        self.ideal.contains(x)
    }

    /// Canonical representative of `x + (R)`; terms of length `>= N` lie in
    /// the ideal and are dropped.
    pub fn normal_form(&self, x: &PathElement) -> PathElement {
        self.ideal.reduce(x)
    }

    /// Paths whose classes form a basis of `KQ/(R)`.
    pub fn algebra_basis(&self) -> Vec<Path> {
        self.ideal.quotient_basis()
    }

    /// The truncated spans of `(R)` and of `(R)r + r(R)` at bound `N + 1`.
    fn boundary_spans(&self) -> (TruncatedIdeal, TruncatedIdeal) {
        let n = self.bound + 1;
        (
            TruncatedIdeal::build(&self.relations, n, 0),
            TruncatedIdeal::build(&self.relations, n, 1),
        )
    }

    /// `dim I/(Ir + rI)`.
    pub fn boundary_quotient_dim(&self) -> usize {
        let (all, inner) = self.boundary_spans();
        all.rank() - inner.rank()
    }

    /// Whether `x ∈ I` maps to zero in `I/(Ir + rI)`.
    pub fn boundary_image_is_zero(&self, x: &PathElement) -> Result<bool> {
        let (all, inner) = self.boundary_spans();
        let t = x.truncate(self.bound);
        if !all.contains(&t)? {
            return Err(Error::NotInIdeal(x.to_string()));
        }
        inner.contains(&t)
    }
}

/// `dim KQ/(R)` for a valid bound `n`.
pub fn algebra_dim(r: &RelationSequence, n: usize) -> Result<usize> {
    Ok(AdmissibleIdeal::with_bound(r, n)?.algebra_dim())
}

/// Whether `x ∈ (R)`, for `x` supported in lengths `< n`.
pub fn ideal_membership(r: &RelationSequence, n: usize, x: &PathElement) -> Result<bool> {
    AdmissibleIdeal::with_bound(r, n)?.contains(x)
}

/// Removes entries in input order while the remaining ones still generate `(R)`.
///
/// A subset `S` generates `(R)` iff `(S)` is admissible with some bound
/// `N_S <= N` and `(S)` and `(R)` have equal truncated ranks at `N`.
pub fn system_of_relations(r: &RelationSequence, n: usize) -> Result<RelationSequence> {
    let full = AdmissibleIdeal::with_bound(r, n)?;
    let target_rank = full.ideal.rank();
    let mut keep: Vec<usize> = (0..r.len())
        .filter(|&i| !r.entries()[i].body.is_zero())
        .collect();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        let s = r.select(&trial);
        let generates = match find_admissibility_bound(&s, n) {
            Ok(_) => TruncatedIdeal::build(&s, n, 0).rank() == target_rank,
            Err(_) => false,
        };
        if generates {
            keep = trial;
        } else {
            i += 1;
        }
    }
    Ok(r.select(&keep))
}

/// `dim I/(Ir + rI)`.
pub fn boundary_quotient_dim(r: &RelationSequence, n: usize) -> Result<usize> {
    Ok(AdmissibleIdeal::with_bound(r, n)?.boundary_quotient_dim())
}

/// `dim Ext²(S,S)`, taken as `dim I/(Ir + rI)`.
pub fn ext2_dim(r: &RelationSequence, n: usize) -> Result<usize> {
    boundary_quotient_dim(r, n)
}

/// Whether the images of `candidate ⊆ (R)` span `I/(Ir + rI)`.
pub fn spans_boundary_quotient(
    r: &RelationSequence,
    candidate: &RelationSequence,
    n: usize,
) -> Result<bool> {
    let ideal = AdmissibleIdeal::with_bound(r, n)?;
    let (all, mut inner) = ideal.boundary_spans();
    for c in candidate.bodies() {
        if !all.contains(&c.truncate(n))? {
            return Err(Error::NotInIdeal(c.to_string()));
        }
        inner.insert_truncated(c);
    }
    Ok(inner.rank() == all.rank())
}

/// A representation: a space of each dimension per vertex and a matrix per arrow.
#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<GradedQuiver>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    maps: Vec<DenseMatrix>,
}

impl Representation {
    /// `maps[a]` has size `dim(s(a)) × dim(t(a))`: vectors are rows and paths
    /// act left to right.
    pub fn new(
        quiver: &Arc<GradedQuiver>,
        dims: &BTreeMap<String, usize>,
        maps: &BTreeMap<String, DenseMatrix>,
    ) -> Result<Self> {
        let d: Vec<usize> = quiver
            .vertices()
            .iter()
            .map(|v| dims.get(v).copied().unwrap_or(0))
            .collect();
        for v in dims.keys() {
            quiver.vertex_index(v)?;
        }
        for a in maps.keys() {
            quiver.arrow_index(a)?;
        }
        let mut offsets = Vec::with_capacity(d.len());
        let mut total = 0;
        for &x in &d {
            offsets.push(total);
            total += x;
        }
        let mut ms = Vec::with_capacity(quiver.num_arrows());
        for a in 0..quiver.num_arrows() {
            let (r, c) = (d[quiver.source(a)], d[quiver.target(a)]);
            let m = match maps.get(quiver.arrow_id(a)) {
                Some(m) => {
                    if m.rows() != r {
                        return Err(Error::DimensionMismatch {
                            expected: r,
                            found: m.rows(),
                        });
                    }
                    if m.cols() != c {
                        return Err(Error::DimensionMismatch {
                            expected: c,
                            found: m.cols(),
                        });
                    }
                    m.clone()
                }
                None => DenseMatrix::zeros(r, c),
            };
            ms.push(m);
        }
        Ok(Representation {
            quiver: Arc::clone(quiver),
            dims: d,
            offsets,
            maps: ms,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The action of `x` as a block matrix on the direct sum of the vertex spaces.
    pub fn evaluate(&self, x: &PathElement) -> Result<DenseMatrix> {
        if !crate::path_algebra::same_quiver(x.quiver(), &self.quiver) {
            return Err(Error::QuiverMismatch);
        }
        let n = self.total_dim();
        let mut out = DenseMatrix::zeros(n, n);
        for (p, c) in x.terms() {
            let s = p.base();
            let mut acc = DenseMatrix::identity(self.dims[s]);
            for &a in p.arrows() {
                acc = acc.mul(&self.maps[a])?;
            }
            let t = self.quiver.path_target(p);
            let mut block = DenseMatrix::zeros(n, n);
            block.place(self.offsets[s], self.offsets[t], &acc.scale(c));
            out.add_assign(&block)?;
        }
        Ok(out)
    }
}

/// Evaluates `x` in a representation.
pub fn representation_witness(
    quiver: &Arc<GradedQuiver>,
    dims: &BTreeMap<String, usize>,
    maps: &BTreeMap<String, DenseMatrix>,
    x: &PathElement,
) -> Result<DenseMatrix> {
    Representation::new(quiver, dims, maps)?.evaluate(x)
}

/// Mechanical check that `H⁰(Γ(Q,R,2))` is a split extension of `KQ/(R)`.
pub fn split_extension_check(r: &RelationSequence, max_n: usize) -> Result<Verdict> {
    let q = r.quiver();
    r.check_in_square()?;
    let a = AdmissibleIdeal::new(r, max_n)?;
    let gamma = build_gamma(q, r, 2)?;
    let h0 = h0_presentation(&gamma)?;
    let qt = Arc::clone(&h0.quiver);
    let eps: Vec<usize> = gamma
        .roles()
        .iter()
        .enumerate()
        .filter(|(_, role)| matches!(role, ArrowRole::Eps(_)))
        .map(|(i, _)| qt.arrow_index(gamma.quiver().arrow_id(i)).unwrap())
        .collect();
    let rt = h0.relation_sequence()?;

    // (i) each ρ appears up to sign among the presentation relations
    let mut from_r = vec![false; rt.len()];
    for rel in r.entries() {
        if rel.body.is_zero() {
            continue;
        }
        let rho = rel.body.embed(&qt)?;
        let neg = rho.neg();
        match rt.bodies().position(|x| *x == rho || *x == neg) {
            Some(i) => from_r[i] = true,
            None => {
                return Ok(Verdict::fail(
                    rel.label.clone(),
                    "relation missing from the H⁰ presentation",
                ))
            }
        }
    }
    // (ii) the remaining relations lie in the ideal generated by the ε arrows
    for (i, rel) in rt.entries().iter().enumerate() {
        if !from_r[i] && !rel.body.every_term_contains(|x| eps.contains(&x)) {
            return Ok(Verdict::fail(
                rel.label.clone(),
                format!("{} has a term without ε", rel.body),
            ));
        }
    }
    // (iii) ι and π are well defined and π∘ι = id
    let at = AdmissibleIdeal::new(&rt, max_n)?;
    let images: Vec<PathElement> = (0..q.num_arrows())
        .map(|x| PathElement::arrow(&qt, q.arrow_id(x)))
        .collect::<Result<_>>()?;
    let vmap: Vec<usize> = (0..q.num_vertices()).collect();
    let iota = |x: &PathElement| x.substitute(&qt, &vmap, &images);
    let pi = |x: &PathElement| -> Result<PathElement> {
        let kept = PathElement::from_terms(
            &qt,
            x.terms()
                .iter()
                .filter(|(p, _)| !p.arrows().iter().any(|y| eps.contains(y)))
                .map(|(p, c)| (p.clone(), c.clone())),
        );
        kept.embed(q)
    };
    for rel in r.entries() {
        if !at.normal_form(&iota(&rel.body)).is_zero() {
            return Ok(Verdict::fail(
                rel.label.clone(),
                "ι does not kill the relation",
            ));
        }
    }
    for rel in rt.entries() {
        if !a.normal_form(&pi(&rel.body)?).is_zero() {
            return Ok(Verdict::fail(
                rel.label.clone(),
                "π does not kill the relation",
            ));
        }
    }
    for p in a.algebra_basis() {
        let x = PathElement::from_path(q, p.clone());
        let back = a.normal_form(&pi(&at.normal_form(&iota(&x)))?);
        if back != a.normal_form(&x) {
            return Ok(Verdict::fail(
                q.format_path(&p),
                format!("π(ι(x)) = {back}"),
            ));
        }
    }
    Ok(Verdict::Ok)
}
