//! Elements of the graded path algebra `KQ`, supercommutators, the space of
//! superpotentials `KQ/[KQ,KQ]` and signed cyclic derivatives.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_rational, sign, Rational};
use crate::quiver::{GradedQuiver, Path};

/// Result of asking for the degree of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero element, homogeneous of every degree.
    Zero,
    Degree(i64),
    Mixed,
}

impl Homogeneity {
    pub fn degree(self) -> Option<i64> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    /// Whether an element with this homogeneity can be treated as having degree `d`.
    pub fn admits(self, d: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Degree(e) => e == d,
            Homogeneity::Mixed => false,
        }
    }
}

pub(crate) fn same_quiver(a: &Arc<GradedQuiver>, b: &Arc<GradedQuiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite rational linear combination of paths.
#[derive(Clone)]
pub struct PathElement {
    quiver: Arc<GradedQuiver>,
    terms: BTreeMap<Path, Rational>,
}

impl PartialEq for PathElement {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl Eq for PathElement {}

impl fmt::Debug for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathElement({})", self)
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.quiver, &self.terms))
    }
}

pub(crate) fn format_terms(q: &GradedQuiver, terms: &BTreeMap<Path, Rational>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (p, c)) in terms.iter().enumerate() {
        let negative = c < &Rational::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push(' ');
        }
        out.push_str(&q.format_path(p));
    }
    out
}

impl PathElement {
    pub fn zero(quiver: &Arc<GradedQuiver>) -> Self {
        PathElement {
            quiver: Arc::clone(quiver),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(quiver: &Arc<GradedQuiver>, p: Path) -> Self {
        Self::from_terms(quiver, [(p, Rational::one())])
    }

    /// Sums the given terms; zero coefficients are dropped. Paths must be valid in the quiver.
    pub fn from_terms(
        quiver: &Arc<GradedQuiver>,
        terms: impl IntoIterator<Item = (Path, Rational)>,
    ) -> Self {
        let mut e = PathElement::zero(quiver);
        for (p, c) in terms {
            debug_assert!(quiver.is_composable(&p));
            e.add_term(p, c);
        }
        e
    }

    /// The element given by a single arrow.
    pub fn arrow(quiver: &Arc<GradedQuiver>, id: &str) -> Result<Self> {
        let a = quiver.arrow_index(id)?;
        Ok(Self::from_path(quiver, quiver.arrow_path(a)))
    }

    /// The idempotent `e_v`.
    pub fn vertex(quiver: &Arc<GradedQuiver>, id: &str) -> Result<Self> {
        let v = quiver.vertex_index(id)?;
        Ok(Self::from_path(quiver, quiver.trivial(v)))
    }

    /// The path given by arrow ids, composed left to right.
    pub fn path(quiver: &Arc<GradedQuiver>, ids: &[&str]) -> Result<Self> {
        Ok(Self::from_path(quiver, quiver.path_by_ids(ids)?))
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &BTreeMap<Path, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Path, Rational> {
        self.terms
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
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

    pub(crate) fn add_scaled_unchecked(&mut self, other: &PathElement, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * factor);
        }
    }

    fn check_same(&self, other: &PathElement) -> Result<()> {
        if same_quiver(&self.quiver, &other.quiver) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn add(&self, other: &PathElement) -> Result<PathElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &PathElement) -> Result<PathElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &-Rational::one());
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> PathElement {
        let mut out = PathElement::zero(&self.quiver);
        out.add_scaled_unchecked(self, factor);
        out
    }

    pub fn neg(&self) -> PathElement {
        self.scale(&-Rational::one())
    }

    /// Bilinear extension of concatenation; non-composable pairs give zero.
    pub fn mul(&self, other: &PathElement) -> Result<PathElement> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PathElement) -> PathElement {
        let q = &self.quiver;
        let mut out = PathElement::zero(q);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = q.concat(p, r) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|p| self.quiver.path_degree(p));
        let Some(first) = degrees.next() else {
            return Homogeneity::Zero;
        };
        if degrees.all(|d| d == first) {
            Homogeneity::Degree(first)
        } else {
            Homogeneity::Mixed
        }
    }

    /// `[x, y] = xy - (-1)^{|x||y|} yx` for homogeneous `x`, `y`.
    pub fn supercommutator(&self, other: &PathElement) -> Result<PathElement> {
        self.check_same(other)?;
        let (dx, dy) = match (self.homogeneous_degree(), other.homogeneous_degree()) {
            (Homogeneity::Mixed, _) | (_, Homogeneity::Mixed) => return Err(Error::NotHomogeneous),
            (Homogeneity::Zero, _) | (_, Homogeneity::Zero) => {
                return Ok(PathElement::zero(&self.quiver))
            }
            (Homogeneity::Degree(x), Homogeneity::Degree(y)) => (x, y),
        };
        let mut out = self.mul_unchecked(other);
        out.add_scaled_unchecked(&other.mul_unchecked(self), &-sign(dx * dy));
        Ok(out)
    }

    /// Drops every term longer than `max_len`.
    pub fn truncate(&self, max_len: usize) -> PathElement {
        PathElement {
            quiver: Arc::clone(&self.quiver),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() <= max_len)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    /// Whether every term uses arrow `a`.
    pub fn every_term_contains(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.terms
            .keys()
            .all(|p| p.arrows().iter().any(|&a| pred(a)))
    }

    pub fn uses_arrow(&self, a: usize) -> bool {
        self.terms.keys().any(|p| p.contains_arrow(a))
    }

    /// Re-expresses the element in another quiver, matching vertices and arrows by id.
    pub fn embed(&self, target: &Arc<GradedQuiver>) -> Result<PathElement> {
        let src = &self.quiver;
        let mut out = PathElement::zero(target);
        for (p, c) in &self.terms {
            let base = target.vertex_index(src.vertex_id(p.base()))?;
            let arrows = p
                .arrows()
                .iter()
                .map(|&a| target.arrow_index(src.arrow_id(a)))
                .collect::<Result<Vec<_>>>()?;
            let path = Path::from_parts(base, arrows);
            if !target.is_composable(&path) {
                return Err(Error::InvalidQuiver(format!(
                    "path `{}` does not compose in the target quiver",
                    src.format_path(p)
                )));
            }
            out.add_term(path, c.clone());
        }
        Ok(out)
    }

    /// Applies the algebra map sending `e_v` to `e_{vertex_map[v]}` and each
    /// arrow `a` to `images[a]`.
    pub(crate) fn substitute(
        &self,
        target: &Arc<GradedQuiver>,
        vertex_map: &[usize],
        images: &[PathElement],
    ) -> PathElement {
        let mut out = PathElement::zero(target);
        for (p, c) in &self.terms {
            let mut acc = PathElement::from_path(target, target.trivial(vertex_map[p.base()]));
            for &a in p.arrows() {
                acc = acc.mul_unchecked(&images[a]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled_unchecked(&acc, c);
        }
        out
    }

    /// Whether every term starts at `s` and ends at `t`.
    pub fn has_endpoints(&self, s: usize, t: usize) -> bool {
        self.terms
            .keys()
            .all(|p| p.base() == s && self.quiver.path_target(p) == t)
    }
}

/// A homogeneous element of `KQ/[KQ,KQ]`, stored by canonical cycle
/// representatives.
///
/// The canonical representative of a cycle is its rotation with the
/// lexicographically smallest arrow sequence (by declaration index). Rotating
/// `uv` to `vu` multiplies the coefficient by `(-1)^{|u||v|}`. A periodic
/// cycle whose rotations force it to equal its own negative is zero.
#[derive(Clone)]
pub struct Superpotential {
    quiver: Arc<GradedQuiver>,
    terms: BTreeMap<Path, Rational>,
    degree: Option<i64>,
}

impl PartialEq for Superpotential {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver)
            && self.terms == other.terms
            && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl fmt::Debug for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Superpotential({}; degree {:?})", self, self.degree)
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.quiver, &self.terms))
    }
}

/// Canonical rotation of a cycle and the sign relating it to the input, or
/// `None` when the cycle vanishes in `KQ/[KQ,KQ]`.
pub fn canonical_rotation(q: &GradedQuiver, p: &Path) -> Option<(Path, Rational)> {
    let n = p.len();
    if n == 0 {
        return Some((p.clone(), Rational::one()));
    }
    let degs: Vec<i64> = p.arrows().iter().map(|&a| q.degree(a)).collect();
    let total: i64 = degs.iter().sum();
    let mut best: Option<(Path, i64)> = None;
    let mut prefix = 0i64;
    let mut conflict = false;
    for (k, dk) in degs.iter().enumerate() {
        // p = u v with u = p[..k]; p == (-1)^{|u||v|} v u
        let parity = prefix * (total - prefix);
        let r = p.rotated(k, |a| q.source(a));
        match &best {
            None => best = Some((r, parity)),
            Some((b, bp)) => match r.arrows().cmp(b.arrows()) {
                std::cmp::Ordering::Less => {
                    best = Some((r, parity));
                    conflict = false;
                }
                std::cmp::Ordering::Equal => {
                    if (parity - bp).rem_euclid(2) != 0 {
                        conflict = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
        prefix += dk;
    }
    if conflict {
        return None;
    }
    let (r, parity) = best.unwrap();
    Some((r, sign(parity)))
}

/// `∂_a p` for a single cycle `p`.
fn cyclic_derivative_of_cycle(q: &GradedQuiver, p: &Path, a: usize) -> BTreeMap<Path, Rational> {
    let mut out: BTreeMap<Path, Rational> = BTreeMap::new();
    let n = p.len();
    let da = q.degree(a);
    let degs: Vec<i64> = p.arrows().iter().map(|&x| q.degree(x)).collect();
    let mut prefix = 0i64;
    for l in 0..n {
        if p.arrows()[l] == a {
            let du = prefix;
            let dv: i64 = degs[l + 1..].iter().sum();
            let s = sign(da + du * (da + dv));
            // v u, from t(a) back to s(a)
            let mut arrows = Vec::with_capacity(n - 1);
            arrows.extend_from_slice(&p.arrows()[l + 1..]);
            arrows.extend_from_slice(&p.arrows()[..l]);
            let vu = Path::from_parts(q.target(a), arrows);
            let e = out.entry(vu).or_insert_with(Rational::zero);
            *e += s;
        }
        prefix += degs[l];
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Superpotential {
    pub fn zero(quiver: &Arc<GradedQuiver>, degree: Option<i64>) -> Self {
        Superpotential {
            quiver: Arc::clone(quiver),
            terms: BTreeMap::new(),
            degree,
        }
    }

    /// Projects `x` to `KQ/[KQ,KQ]`. Every term must be a cycle and `x` homogeneous.
    pub fn cyclic_reduce(x: &PathElement) -> Result<Superpotential> {
        let q = x.quiver();
        let degree = match x.homogeneous_degree() {
            Homogeneity::Mixed => return Err(Error::NotHomogeneous),
            h => h.degree(),
        };
        let mut terms: BTreeMap<Path, Rational> = BTreeMap::new();
        for (p, c) in x.terms() {
            if !q.is_cycle(p) {
                return Err(Error::NotACycle(q.format_path(p)));
            }
            if let Some((rep, s)) = canonical_rotation(q, p) {
                *terms.entry(rep).or_insert_with(Rational::zero) += c * s;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Superpotential {
            quiver: Arc::clone(q),
            terms,
            degree,
        })
    }

    /// Same as [`cyclic_reduce`](Self::cyclic_reduce) but records `degree`
    /// even when the result is zero; fails if a nonzero input has another degree.
    pub fn cyclic_reduce_with_degree(x: &PathElement, degree: i64) -> Result<Superpotential> {
        if !x.homogeneous_degree().admits(degree) {
            return match x.homogeneous_degree() {
                Homogeneity::Degree(found) => Err(Error::DegreeMismatch {
                    expected: degree,
                    found,
                }),
                _ => Err(Error::NotHomogeneous),
            };
        }
        let mut w = Self::cyclic_reduce(x)?;
        w.degree = Some(degree);
        Ok(w)
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &BTreeMap<Path, Rational> {
        &self.terms
    }

    /// Degree of the superpotential; `None` for a zero superpotential built without one.
    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The stored representatives as an element of `KQ`.
    pub fn to_element(&self) -> PathElement {
        PathElement::from_terms(&self.quiver, self.terms.clone())
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.terms.keys().any(|p| p.contains_arrow(a))
    }

    /// Signed cyclic derivative `∂_a W`, homogeneous of degree `|W| - |a|`.
    pub fn cyclic_derivative(&self, arrow: &str) -> Result<PathElement> {
        let a = self.quiver.arrow_index(arrow)?;
        Ok(self.cyclic_derivative_ix(a))
    }

    pub(crate) fn cyclic_derivative_ix(&self, a: usize) -> PathElement {
        let mut out = PathElement::zero(&self.quiver);
        for (p, c) in &self.terms {
            for (vu, s) in cyclic_derivative_of_cycle(&self.quiver, p, a) {
                out.add_term(vu, c * s);
            }
        }
        out
    }

    /// Re-expresses the superpotential in another quiver by arrow ids.
    pub fn embed(&self, target: &Arc<GradedQuiver>) -> Result<Superpotential> {
        let e = self.to_element().embed(target)?;
        let mut w = Superpotential::cyclic_reduce(&e)?;
        w.degree = self.degree;
        Ok(w)
    }
}

/// `∂_a` applied to a raw cycle, without first reducing it. Used to check
/// that the derivative is well defined on `KQ/[KQ,KQ]`.
pub fn cyclic_derivative_of_path(q: &Arc<GradedQuiver>, p: &Path, a: usize) -> PathElement {
    PathElement::from_terms(q, cyclic_derivative_of_cycle(q, p, a))
}
