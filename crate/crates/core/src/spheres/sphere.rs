use std::fmt;
use std::sync::Arc;

use crate::cuts::Cut;
use crate::error::{domain, Error, Result};
use crate::space::{ClopenSet, CountClass, SpaceSpec, Word};

/// Boundary cuts `γ_1..γ_k` with pairwise disjoint outer sides `U_i`; the
/// points of `V_1 ∩ … ∩ V_k` are the punctures.
#[derive(Clone, Debug)]
pub struct Sphere {
    spec: Arc<SpaceSpec>,
    sides: Vec<ClopenSet>,
    cuts: Vec<Cut>,
    residual: ClopenSet,
    punctures: Vec<ClopenSet>,
    /// Every word of every side with its side index, sorted.
    index: Vec<(Word, usize)>,
}

/// A point of the quotient `S̄`: a collapsed outer side or a puncture.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum QuotientLabel {
    Boundary(usize),
    Puncture(Word),
}

impl fmt::Display for QuotientLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientLabel::Boundary(i) => write!(f, "U{}", i + 1),
            QuotientLabel::Puncture(w) => write!(f, "p{w}"),
        }
    }
}

/// `S̄`: the finite space with one point per boundary component and
/// puncture, boundary labels first.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub spec: Arc<SpaceSpec>,
    pub labels: Vec<QuotientLabel>,
}

pub fn make_sphere(spec: &Arc<SpaceSpec>, sides: Vec<ClopenSet>) -> Result<Sphere> {
    if sides.is_empty() {
        return Err(Error::Construction(
            "a sphere needs at least one boundary side".into(),
        ));
    }
    let mut index = Vec::new();
    for (i, s) in sides.iter().enumerate() {
        if **s.spec() != **spec {
            return Err(domain("boundary side over a different space"));
        }
        index.extend(s.words().iter().map(|&w| (w, i)));
    }
    index.sort();
    for pair in index.windows(2) {
        if pair[0].0.is_prefix_of(pair[1].0) {
            return Err(Error::Construction(format!(
                "boundary sides {} and {} overlap",
                pair[0].1 + 1,
                pair[1].1 + 1
            )));
        }
    }
    let mut cuts = Vec::with_capacity(sides.len());
    for (i, s) in sides.iter().enumerate() {
        let c = Cut::new(s.clone()).map_err(|_| {
            Error::Construction(format!("boundary side {} is empty or everything", i + 1))
        })?;
        if !c.is_nonperipheral() {
            return Err(Error::Construction(format!(
                "boundary side {} gives the peripheral cut {c}",
                i + 1
            )));
        }
        if cuts.contains(&c) {
            return Err(Error::Construction(format!(
                "boundary side {} repeats an earlier boundary cut",
                i + 1
            )));
        }
        cuts.push(c);
    }
    let all: Vec<Word> = index.iter().map(|p| p.0).collect();
    let residual = ClopenSet::canonicalize(spec, &all).complement();
    let points = residual
        .points()
        .ok_or_else(|| Error::Construction("the residual set V_1 ∩ … ∩ V_k is infinite".into()))?;
    let punctures = points
        .into_iter()
        .map(|p| ClopenSet::canonicalize(spec, &[p]))
        .collect();
    Ok(Sphere {
        spec: spec.clone(),
        sides,
        cuts,
        residual,
        punctures,
        index,
    })
}

impl Sphere {
    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.sides.len()
    }

    pub fn n(&self) -> usize {
        self.punctures.len()
    }

    pub fn sides(&self) -> &[ClopenSet] {
        &self.sides
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn residual(&self) -> &ClopenSet {
        &self.residual
    }

    pub fn punctures(&self) -> &[ClopenSet] {
        &self.punctures
    }

    /// Longest string among the sides.
    pub fn depth(&self) -> usize {
        self.sides.iter().map(ClopenSet::depth).max().unwrap_or(0)
    }

    /// The side containing `[c] ∩ E`, if one does.
    pub fn side_of(&self, c: Word) -> Option<usize> {
        let i = self.index.partition_point(|p| p.0 <= c);
        (i > 0 && self.index[i - 1].0.is_prefix_of(c)).then(|| self.index[i - 1].1)
    }

    /// The point of `S̄` that `[c] ∩ E` collapses to, or `None` when the
    /// cylinder is empty or straddles several.
    pub fn project(&self, c: Word) -> Option<usize> {
        if let Some(i) = self.side_of(c) {
            return Some(i);
        }
        if self.spec.count(c) != CountClass::Exactly(1) {
            return None;
        }
        let pt = ClopenSet::canonicalize(&self.spec, &[c]);
        self.punctures
            .iter()
            .position(|p| *p == pt)
            .map(|j| self.k() + j)
    }

    /// `γ` is distinct from the boundary and each `U_i` lies within one
    /// side of `γ`.
    pub fn is_interior(&self, cut: &Cut) -> Result<bool> {
        if **cut.spec() != *self.spec {
            return Err(domain("cut over a different space"));
        }
        if self.cuts.contains(cut) {
            return Ok(false);
        }
        Ok(self
            .sides
            .iter()
            .all(|u| cut.first().covers(u) || cut.second().covers(u)))
    }

    pub fn quotient(&self) -> Quotient {
        let mut labels: Vec<QuotientLabel> = (0..self.k()).map(QuotientLabel::Boundary).collect();
        labels.extend(
            self.punctures
                .iter()
                .map(|p| QuotientLabel::Puncture(p.words()[0])),
        );
        Quotient {
            spec: Arc::new(SpaceSpec::Finite(labels.len())),
            labels,
        }
    }
}

pub fn quotient_space(s: &Sphere) -> Quotient {
    s.quotient()
}

/// `S̄_{i+1} → S̄_i`: a surviving puncture goes to itself, anything else to
/// the boundary label of `S_i` whose outer side contains it.
pub fn restriction_map(inner: &Sphere, outer: &Sphere) -> Result<Vec<usize>> {
    if **inner.spec() != **outer.spec() {
        return Err(domain("spheres over different spaces"));
    }
    let locate = |set: &ClopenSet| -> Result<usize> {
        if let Some(i) = inner.sides.iter().position(|u| u.covers(set)) {
            return Ok(i);
        }
        if let Some(j) = inner.punctures.iter().position(|p| p == set) {
            return Ok(inner.k() + j);
        }
        Err(domain(
            "spheres are not nested: a piece of the outer sphere straddles the inner one",
        ))
    };
    let mut map = Vec::with_capacity(outer.k() + outer.n());
    for u in &outer.sides {
        map.push(locate(u)?);
    }
    for p in &outer.punctures {
        map.push(locate(p)?);
    }
    Ok(map)
}

/// Checks that `E → S̄_i` equals `E → S̄_{i+1} → S̄_i` on every class of the
/// depth-`depth` point partition.
pub fn verify_triangle(inner: &Sphere, outer: &Sphere, depth: usize) -> Result<bool> {
    let r = restriction_map(inner, outer)?;
    let d = depth.max(inner.depth()).max(outer.depth());
    let frame = crate::space::Frame::at_depth_with_points(inner.spec(), d);
    for &c in frame.classes() {
        match (outer.project(c), inner.project(c)) {
            (Some(a), Some(b)) if r[a] == b => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::point_cut;
    use crate::space::{w, Frame};

    fn pts(spec: &Arc<SpaceSpec>, p: &[usize]) -> ClopenSet {
        let f = Frame::points(spec).unwrap();
        f.clopen_of(p.iter().fold(0, |m, &i| m | 1 << i))
    }

    #[test]
    fn finite_sphere() {
        let f7 = Arc::new(SpaceSpec::Finite(7));
        let s = make_sphere(&f7, vec![pts(&f7, &[0, 1]), pts(&f7, &[2, 3])]).unwrap();
        assert_eq!((s.n(), s.k()), (3, 2));
        assert!(s.is_interior(&point_cut(&f7, &[4, 5]).unwrap()).unwrap());
        assert!(!s.is_interior(&point_cut(&f7, &[0, 4]).unwrap()).unwrap());
        assert!(!s.is_interior(&s.cuts()[0]).unwrap());
        let q = s.quotient();
        assert_eq!(q.spec.total(), CountClass::Exactly(5));
        let names: Vec<String> = q.labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, vec!["U1", "U2", "p11110", "p111110", "p111111"]);
    }

    #[test]
    fn construction_errors() {
        let f7 = Arc::new(SpaceSpec::Finite(7));
        let e = make_sphere(&f7, vec![pts(&f7, &[0, 1]), pts(&f7, &[1, 2])]).unwrap_err();
        assert!(e.to_string().contains("overlap"));
        let e = make_sphere(&f7, vec![pts(&f7, &[0])]).unwrap_err();
        assert!(e.to_string().contains("peripheral"));
        let c = Arc::new(SpaceSpec::Cantor);
        let e = make_sphere(&c, vec![ClopenSet::canonicalize(&c, &[w("0")])]).unwrap_err();
        assert!(e.to_string().contains("infinite"));
        let e = make_sphere(
            &c,
            vec![
                ClopenSet::canonicalize(&c, &[w("0")]),
                ClopenSet::canonicalize(&c, &[w("1")]),
            ],
        )
        .unwrap_err();
        assert!(e.to_string().contains("repeats"));
    }

    fn cylinders(spec: &Arc<SpaceSpec>, words: &[&str]) -> Vec<ClopenSet> {
        words
            .iter()
            .map(|s| ClopenSet::canonicalize(spec, &[w(s)]))
            .collect()
    }

    #[test]
    fn cantor_spheres_and_triangle() {
        let c = Arc::new(SpaceSpec::Cantor);
        let s = make_sphere(&c, cylinders(&c, &["00", "01", "10", "110", "111"])).unwrap();
        assert_eq!((s.n(), s.k()), (0, 5));
        let inner = make_sphere(&c, cylinders(&c, &["00", "01", "1"])).unwrap();
        let outer = make_sphere(&c, cylinders(&c, &["00", "01", "10", "11"])).unwrap();
        assert_eq!(restriction_map(&inner, &outer).unwrap(), vec![0, 1, 2, 2]);
        assert!(verify_triangle(&inner, &outer, 4).unwrap());
        assert!(restriction_map(&outer, &inner).is_err());
    }
}
