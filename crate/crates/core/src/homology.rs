//! Homology of dg path algebras truncated by path length, `H⁰` presentations
//! and the vanishing checks for small negative degrees.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ginzburg::{build_b, build_gamma, build_ginzburg, DgAlgebra, RelationSequence};
use crate::ideals;
use crate::linalg::{rank, SparseMatrix};
use crate::path_algebra::{PathElement, Superpotential};
use crate::quiver::{GradedQuiver, Path};

/// Largest number of basis paths allowed in one degree.
pub const MAX_COMPONENT: usize = 400_000;

/// The quotient of a dg path algebra by all paths longer than `max_len`,
/// restricted to a window of degrees.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    max_len: usize,
    components: BTreeMap<i64, Vec<Path>>,
    /// `matrices[i]` is `d: C^i → C^{i+1}` in row-vector form.
    matrices: BTreeMap<i64, SparseMatrix>,
}

impl TruncatedComplex {
    /// Builds the components in degrees `lo..=hi` and the differentials
    /// between consecutive ones.
    pub fn build(dg: &DgAlgebra, max_len: usize, lo: i64, hi: i64) -> Result<Self> {
        if let Err(a) = dg.differential_in_arrow_ideal() {
            return Err(Error::TruncationNotDg(a));
        }
        let q = dg.quiver();
        let mut components: BTreeMap<i64, Vec<Path>> = (lo..=hi).map(|i| (i, Vec::new())).collect();
        for p in q.paths_in_degree_window(max_len, lo, hi) {
            components.get_mut(&q.path_degree(&p)).unwrap().push(p);
        }
        for c in components.values() {
            if c.len() > MAX_COMPONENT {
                return Err(Error::TooLarge(c.len()));
            }
        }
        let mut matrices = BTreeMap::new();
        for i in lo..hi {
            let src = &components[&i];
            let dst = &components[&(i + 1)];
            let index: HashMap<&Path, usize> =
                dst.iter().enumerate().map(|(k, p)| (p, k)).collect();
            let mut mat = SparseMatrix::with_cols(dst.len());
            for p in src {
                let mut dp = PathElement::zero(q);
                dg.add_d_of_path(p, &num::One::one(), &mut dp);
                let row: Vec<(usize, _)> = dp
                    .into_terms()
                    .into_iter()
                    .filter(|(path, _)| path.len() <= max_len)
                    .map(|(path, c)| (index[&path], c))
                    .collect();
                mat.push_row(row)?;
            }
            matrices.insert(i, mat);
        }
        Ok(TruncatedComplex {
            max_len,
            components,
            matrices,
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Basis of the component in degree `i`, if it was built.
    pub fn component(&self, i: i64) -> Option<&[Path]> {
        self.components.get(&i).map(Vec::as_slice)
    }

    /// Matrix of `d: C^i → C^{i+1}`, if both degrees were built.
    pub fn matrix(&self, i: i64) -> Option<&SparseMatrix> {
        self.matrices.get(&i)
    }

    /// `dim H^i` for a degree whose neighbours were built.
    pub fn homology_dim(&self, i: i64) -> Option<usize> {
        let dim = self.components.get(&i)?.len();
        let out = rank(self.matrices.get(&i)?);
        let inc = rank(self.matrices.get(&(i - 1))?);
        Some(dim - out - inc)
    }
}

/// Dimensions of `H^{−i}` for `0 ≤ i ≤ m − 1` at a given truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub m: i64,
    pub max_len: usize,
    /// `dims[i] = dim H^{−i}`.
    pub dims: BTreeMap<usize, usize>,
    /// Whether the dimensions agree at `max_len` and `max_len + 1`.
    pub stabilized: bool,
    /// Whether `dims[i] = 0` for `0 < i < m − 1`.
    pub vosnex: bool,
}

fn dims_at(dg: &DgAlgebra, m: i64, max_len: usize) -> Result<BTreeMap<usize, usize>> {
    let c = TruncatedComplex::build(dg, max_len, -m, 1)?;
    Ok((0..m.max(0) as usize)
        .map(|i| (i, c.homology_dim(-(i as i64)).unwrap()))
        .collect())
}

/// Truncated homology in degrees `0, −1, …, −(m − 1)`.
pub fn homology_dims(dg: &DgAlgebra, m: i64, max_len: usize) -> Result<HomologyReport> {
    if m < 1 {
        return Err(Error::InvalidM { m, min: 1 });
    }
    let dims = dims_at(dg, m, max_len)?;
    let next = dims_at(dg, m, max_len + 1)?;
    let vosnex = (1..(m - 1) as usize).all(|i| dims[&i] == 0);
    Ok(HomologyReport {
        m,
        max_len,
        stabilized: dims == next,
        dims,
        vosnex,
    })
}

/// Default truncation length for `Γ(Q,R,m)`: `max(m + 2, N, longest relation + 2)`.
pub fn default_max_len(m: i64, admissibility_bound: usize, longest_relation: usize) -> usize {
    ((m + 2).max(0) as usize)
        .max(admissibility_bound)
        .max(longest_relation + 2)
}

/// `H⁰` as the degree-0 subquiver modulo `d(a)` for the degree −1 arrows `a`.
#[derive(Clone, Debug)]
pub struct H0Presentation {
    pub quiver: Arc<GradedQuiver>,
    /// `(a, d(a))` for each arrow of degree −1, in declaration order.
    pub relations: Vec<(String, PathElement)>,
}

impl H0Presentation {
    /// The nonzero relations as a relation sequence over the degree-0 quiver.
    pub fn relation_sequence(&self) -> Result<RelationSequence> {
        let mut r = RelationSequence::new(&self.quiver);
        for (a, x) in &self.relations {
            if x.is_zero() {
                continue;
            }
            let p = x.terms().keys().next().unwrap();
            r.push_ix(a, p.base(), self.quiver.path_target(p), x.clone())?;
        }
        Ok(r)
    }

    /// The nonzero relations.
    pub fn nonzero(&self) -> impl Iterator<Item = &PathElement> {
        self.relations
            .iter()
            .map(|(_, x)| x)
            .filter(|x| !x.is_zero())
    }
}

pub fn h0_presentation(dg: &DgAlgebra) -> Result<H0Presentation> {
    let q = dg.quiver();
    if let Some(a) = q.arrows().iter().find(|a| a.degree > 0) {
        return Err(Error::PositiveDegree(a.id.clone()));
    }
    let sub = Arc::new(q.subquiver(|a| q.degree(a) == 0));
    let mut relations = Vec::new();
    for (a, x) in dg.differentials() {
        if q.degree(q.arrow_index(a)?) == -1 {
            relations.push((a.to_string(), x.embed(&sub)?));
        }
    }
    Ok(H0Presentation {
        quiver: sub,
        relations,
    })
}

/// For an ungraded quiver with `m = 1` and `W = 0`: the presentation whose
/// relations are the mesh sums `e_i (Σ [α, α*]) e_i`.
pub fn m1_preprojective_check(q: &Arc<GradedQuiver>) -> Result<H0Presentation> {
    if let Some(a) = q.arrows().iter().find(|a| a.degree != 0) {
        return Err(Error::NonZeroDegree(a.id.clone()));
    }
    let w = Superpotential::zero(q, Some(1));
    h0_presentation(&build_ginzburg(q, &w, 1)?)
}

/// `(i, dim H^{−i})`, read as `dim Hom(T, Σ^{−i} T)` in the associated category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnexTable {
    pub rows: Vec<(usize, usize)>,
    pub max_len: usize,
    pub stabilized: bool,
    pub vosnex: bool,
    pub caveat: Option<String>,
}

pub fn snex_table(dg: &DgAlgebra, m: i64, max_len: usize) -> Result<SnexTable> {
    let h = homology_dims(dg, m, max_len)?;
    let caveat = (!h.stabilized).then(|| {
        format!(
            "dimensions changed between truncation lengths {} and {}; values may not be final",
            max_len,
            max_len + 1
        )
    });
    Ok(SnexTable {
        rows: h.dims.into_iter().collect(),
        max_len,
        stabilized: h.stabilized,
        vosnex: h.vosnex,
        caveat,
    })
}

/// The four equivalent conditions for vanishing of small negative extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VosnexReport {
    /// `Q` acyclic and `R` empty.
    pub a: bool,
    /// `B(Q,R)` concentrated in degree 0 and finite-dimensional.
    pub b: bool,
    /// `dim H^{−i}(Γ) = 0` for `0 < i < m − 1`.
    pub c: bool,
    /// `dim H^{2−m}(Γ) = 0`.
    pub d: bool,
    pub homology: HomologyReport,
    pub admissibility_bound: usize,
}

impl VosnexReport {
    pub fn all_agree(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

/// Evaluates the four conditions for `Γ(Q,R,m)`, `m > 2`.
pub fn vosnex_equivalence_check(
    q: &Arc<GradedQuiver>,
    r: &RelationSequence,
    m: i64,
    max_len: Option<usize>,
    max_n: usize,
) -> Result<VosnexReport> {
    if m <= 2 {
        return Err(Error::InvalidM { m, min: 3 });
    }
    r.check_in_square()?;
    let n = ideals::find_admissibility_bound(r, max_n)?;
    let a = q.is_acyclic() && r.is_empty();
    let b_alg = build_b(q, r)?;
    let b = b_alg.quiver().arrows().iter().all(|x| x.degree == 0) && b_alg.quiver().is_acyclic();
    let gamma = build_gamma(q, r, m)?;
    let l = max_len.unwrap_or_else(|| default_max_len(m, n, r.max_path_len()));
    let homology = homology_dims(&gamma, m, l)?;
    let c = homology.vosnex;
    let d = homology.dims[&((m - 2) as usize)] == 0;
    Ok(VosnexReport {
        a,
        b,
        c,
        d,
        homology,
        admissibility_bound: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ginzburg::build_gamma;

    fn one_vertex() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::builder().vertex("v").build().unwrap())
    }

    fn zeros(q: &Arc<GradedQuiver>, v: &str, n: usize) -> RelationSequence {
        let mut r = RelationSequence::new(q);
        for k in 0..n {
            r.push(&format!("z{k}"), v, v, PathElement::zero(q))
                .unwrap();
        }
        r
    }

    fn el(q: &Arc<GradedQuiver>, ids: &[&str]) -> PathElement {
        PathElement::path(q, ids).unwrap()
    }

    #[test]
    fn empty_relations_give_trivial_homology() {
        let v = one_vertex();
        for m in 2..6 {
            let g = build_gamma(&v, &RelationSequence::new(&v), m).unwrap();
            let c = TruncatedComplex::build(&g, 5, 1 - m, 0).unwrap();
            assert_eq!(c.component(0).unwrap().len(), 1);
            for i in 1..m {
                assert!(c.component(-i).unwrap().is_empty());
            }
            let h = homology_dims(&g, m, (m + 2) as usize).unwrap();
            let mut want = BTreeMap::from([(0, 1)]);
            want.extend((1..m as usize).map(|i| (i, 0)));
            assert_eq!(h.dims, want);
            assert!(h.vosnex && h.stabilized);
        }
    }

    #[test]
    fn zero_relation_basis_in_degree_two_below() {
        let v = one_vertex();
        let g = build_gamma(&v, &zeros(&v, "v", 1), 4).unwrap();
        let c = TruncatedComplex::build(&g, 6, -3, 0).unwrap();
        let names: Vec<String> = c
            .component(-2)
            .unwrap()
            .iter()
            .map(|p| g.quiver().format_path(p))
            .collect();
        assert_eq!(names, ["eps_z0", "eps_z0^*eps_z0^"]);

        let g3 = build_gamma(&v, &zeros(&v, "v", 1), 3).unwrap();
        let c = TruncatedComplex::build(&g3, 4, -3, 0).unwrap();
        let names: Vec<String> = c
            .component(-2)
            .unwrap()
            .iter()
            .map(|p| g3.quiver().format_path(p))
            .collect();
        assert_eq!(names.len(), 4);
        assert!(!names.iter().any(|n| n.contains("t_v")));
    }

    #[test]
    fn zero_relation_homology() {
        let v = one_vertex();
        let g = build_gamma(&v, &zeros(&v, "v", 1), 4).unwrap();
        let h = homology_dims(&g, 4, 6).unwrap();
        assert_eq!(h.dims, BTreeMap::from([(0, 1), (1, 1), (2, 2), (3, 2)]));
        assert!(!h.vosnex);
        let g = build_gamma(&v, &zeros(&v, "v", 1), 3).unwrap();
        let h = homology_dims(&g, 3, 5).unwrap();
        assert_eq!(h.dims, BTreeMap::from([(0, 1), (1, 2), (2, 3)]));
    }

    #[test]
    fn matrices_compose_to_zero() {
        let v = one_vertex();
        let g = build_gamma(&v, &zeros(&v, "v", 2), 3).unwrap();
        let c = TruncatedComplex::build(&g, 4, -4, 0).unwrap();
        for i in -4..-1 {
            let prod = c.matrix(i).unwrap().mul(c.matrix(i + 1).unwrap()).unwrap();
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn truncation_requires_arrow_ideal() {
        let q = Arc::new(
            GradedQuiver::builder()
                .vertex("v")
                .arrow("a", "v", "v", -1)
                .build()
                .unwrap(),
        );
        let dg = DgAlgebra::new(
            &q,
            [("a".to_string(), PathElement::vertex(&q, "v").unwrap())],
        )
        .unwrap();
        assert!(matches!(
            TruncatedComplex::build(&dg, 3, -2, 0),
            Err(Error::TruncationNotDg(_))
        ));
    }

    fn square() -> (Arc<GradedQuiver>, RelationSequence) {
        let q = Arc::new(
            GradedQuiver::builder()
                .vertices(&["v1", "v2", "v3", "v4"])
                .arrow("a", "v1", "v2", 0)
                .arrow("b", "v2", "v4", 0)
                .arrow("c", "v1", "v3", 0)
                .arrow("d", "v3", "v4", 0)
                .build()
                .unwrap(),
        );
        let rho = el(&q, &["a", "b"]).sub(&el(&q, &["c", "d"])).unwrap();
        let r = RelationSequence::from_entries(&q, [("r", "v1", "v4", rho)]).unwrap();
        (q, r)
    }

    #[test]
    fn h0_of_square() {
        let (q, r) = square();
        for m in 3..5 {
            let g = build_gamma(&q, &r, m).unwrap();
            let h0 = h0_presentation(&g).unwrap();
            assert_eq!(*h0.quiver, *q);
            let rels: Vec<&PathElement> = h0.nonzero().collect();
            assert_eq!(rels.len(), 1);
            let rho = el(&h0.quiver, &["a", "b"])
                .sub(&el(&h0.quiver, &["c", "d"]))
                .unwrap();
            assert!(*rels[0] == rho || *rels[0] == rho.neg());
            let h = homology_dims(&g, m, 5).unwrap();
            assert_eq!(h.dims[&0], 9);
        }
        let b = build_b(&q, &r).unwrap();
        let h0 = h0_presentation(&b).unwrap();
        assert_eq!(h0.relations.len(), 1);
    }

    #[test]
    fn h0_of_square_m2_is_relation_extension() {
        let (q, r) = square();
        let g = build_gamma(&q, &r, 2).unwrap();
        let h0 = h0_presentation(&g).unwrap();
        assert_eq!(h0.quiver.num_arrows(), 5);
        let got: Vec<String> = h0.nonzero().map(|x| x.to_string()).collect();
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn preprojective_relations() {
        let v = one_vertex();
        let h0 = m1_preprojective_check(&v).unwrap();
        assert_eq!(h0.relations.len(), 1);
        assert!(h0.relations[0].1.is_zero());

        let a2 = Arc::new(
            GradedQuiver::builder()
                .vertices(&["1", "2"])
                .arrow("a", "1", "2", 0)
                .build()
                .unwrap(),
        );
        let h0 = m1_preprojective_check(&a2).unwrap();
        let q = &h0.quiver;
        assert_eq!(h0.relations[0].1, el(q, &["a", "a^"]));
        assert_eq!(h0.relations[1].1, el(q, &["a^", "a"]).neg());

        let two = Arc::new(
            GradedQuiver::builder()
                .vertex("v")
                .arrow("x", "v", "v", 0)
                .arrow("y", "v", "v", 0)
                .build()
                .unwrap(),
        );
        let h0 = m1_preprojective_check(&two).unwrap();
        let q = &h0.quiver;
        let want = el(q, &["x", "x^"])
            .sub(&el(q, &["x^", "x"]))
            .unwrap()
            .add(&el(q, &["y", "y^"]).sub(&el(q, &["y^", "y"])).unwrap())
            .unwrap();
        assert_eq!(h0.relations[0].1, want);
    }

    #[test]
    fn vosnex_examples() {
        let a3 = Arc::new(
            GradedQuiver::builder()
                .vertices(&["1", "2", "3"])
                .arrow("a", "1", "2", 0)
                .arrow("b", "2", "3", 0)
                .build()
                .unwrap(),
        );
        for m in 3..5 {
            let rep =
                vosnex_equivalence_check(&a3, &RelationSequence::new(&a3), m, None, 12).unwrap();
            assert!(rep.a && rep.b && rep.c && rep.d);
        }
        let (q, r) = square();
        let rep = vosnex_equivalence_check(&q, &r, 4, None, 12).unwrap();
        assert_eq!((rep.a, rep.b, rep.c, rep.d), (false, false, false, false));

        let lp = Arc::new(
            GradedQuiver::builder()
                .vertex("v")
                .arrow("x", "v", "v", 0)
                .build()
                .unwrap(),
        );
        let r =
            RelationSequence::from_entries(&lp, [("r", "v", "v", el(&lp, &["x", "x"]))]).unwrap();
        let rep = vosnex_equivalence_check(&lp, &r, 3, None, 12).unwrap();
        assert_eq!((rep.a, rep.b, rep.c, rep.d), (false, false, false, false));
        assert!(rep.homology.dims[&1] >= 1);
    }

    #[test]
    fn snex_table_caveat() {
        let v = one_vertex();
        let g = build_gamma(&v, &RelationSequence::new(&v), 4).unwrap();
        let t = snex_table(&g, 4, 6).unwrap();
        assert_eq!(t.rows, vec![(0, 1), (1, 0), (2, 0), (3, 0)]);
        assert!(t.caveat.is_none());
    }
}
