use std::sync::Arc;

use rayon::prelude::*;

use super::complex::{masks_cross, nonperipheral_masks, CutGraph, Mode};
use super::cut::Cut;
use crate::error::{domain, Error, Result};
use crate::space::{ClopenSet, CountClass, Frame, SpaceSpec, Word};

fn push_distinct(path: &mut Vec<Cut>, c: Cut) {
    if path.last() != Some(&c) {
        path.push(c);
    }
}

/// A cut with a two-point side inside `side`, compatible with any cut
/// having `side` as a side.
fn two_point_cut(frame: &Frame, side: &ClopenSet) -> Result<Cut> {
    let m = frame.mask_of(side).expect("point frames resolve every set");
    let low = m & m.wrapping_neg();
    let rest = m & !low;
    let next = rest & rest.wrapping_neg();
    Cut::new(frame.clopen_of(low | next))
}

/// A path of pairwise compatible consecutive cuts from `a` to `b`: at most
/// four steps for finite spaces, at most two for infinite ones.
pub fn short_path(a: &Cut, b: &Cut) -> Result<Vec<Cut>> {
    if **a.spec() != **b.spec() {
        return Err(domain("cuts over different spaces"));
    }
    a.require_nonperipheral()?;
    b.require_nonperipheral()?;
    if a == b {
        return Ok(vec![a.clone()]);
    }
    if a.compatible(b)? {
        return Ok(vec![a.clone(), b.clone()]);
    }
    let spec = a.spec();
    if !spec.is_finite() {
        // One of the four intersections is infinite; its complement meets
        // the other three.
        let mid = a
            .quadrants(b)?
            .into_iter()
            .find(|q| q.count().at_least(2))
            .ok_or_else(|| domain("crossing cuts with no large intersection"))?;
        return Ok(vec![a.clone(), Cut::new(mid)?, b.clone()]);
    }
    if !spec.total().at_least(5) {
        return Err(Error::Unsupported(format!(
            "short paths need at least five points, {spec} has {}",
            spec.total()
        )));
    }
    let frame = Frame::points(spec)?;
    let a2 = if a.is_outermost() {
        a.clone()
    } else {
        two_point_cut(&frame, a.small_side())?
    };
    let b2 = if b.is_outermost() {
        b.clone()
    } else {
        two_point_cut(&frame, b.small_side())?
    };
    let mut path = vec![a.clone()];
    push_distinct(&mut path, a2.clone());
    if a2 != b2 && a2.crosses(&b2)? {
        let small = |c: &Cut| {
            c.sides()
                .iter()
                .find(|s| s.count() == CountClass::Exactly(2))
                .cloned()
                .unwrap()
        };
        let three = small(&a2).union(&small(&b2))?;
        push_distinct(&mut path, Cut::new(three)?);
    }
    push_distinct(&mut path, b2);
    push_distinct(&mut path, b.clone());
    Ok(path)
}

/// Whether consecutive cuts of the path are distinct and compatible.
pub fn path_is_valid(path: &[Cut]) -> Result<bool> {
    for w in path.windows(2) {
        if w[0] == w[1] || w[0].crosses(&w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The spaces `U ⊔ {V}` and `V ⊔ {U}` obtained by collapsing one side of
/// the cut to a point.
pub fn join_split(spec: &Arc<SpaceSpec>, cut: &Cut) -> Result<(Arc<SpaceSpec>, Arc<SpaceSpec>)> {
    if **cut.spec() != **spec {
        return Err(domain("cut over a different space"));
    }
    cut.require_nonperipheral()?;
    let collapse = |side: &ClopenSet| -> Result<Arc<SpaceSpec>> {
        let sub = SpaceSpec::subspace(spec.as_ref().clone(), side.words())?;
        Ok(Arc::new(SpaceSpec::union(sub, SpaceSpec::Finite(1))))
    };
    Ok((collapse(cut.first())?, collapse(cut.second())?))
}

/// The cut of a collapsed space `side ⊔ {*}` matching a cut of the
/// original space with a side strictly inside `side`.
fn transport(collapsed: &Arc<SpaceSpec>, inner: &ClopenSet) -> Result<Cut> {
    let raw: Vec<Word> = inner
        .words()
        .iter()
        .map(|w| Word::ROOT.child(0).concat(*w))
        .collect::<Result<_>>()?;
    Cut::new(ClopenSet::canonicalize(collapsed, &raw))
}

/// Report of [`verify_link_join`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LinkJoinReport {
    pub link_vertices: usize,
    pub factor_vertices: [usize; 2],
    pub holds: bool,
}

/// Checks on depth-bounded cuts that `L(γ)` is the join of the complexes of
/// the two collapsed spaces: the depth-`d` link matches the depth-`d+1`
/// collapsed complexes vertex for vertex, with all edges across factors.
pub fn verify_link_join(spec: &Arc<SpaceSpec>, cut: &Cut, depth: usize) -> Result<LinkJoinReport> {
    let (cu, cv) = join_split(spec, cut)?;
    let mode = |s: &Arc<SpaceSpec>, d: usize| {
        if s.is_finite() {
            Mode::Finite
        } else {
            Mode::Bounded(d)
        }
    };
    let g = CutGraph::complex(spec, mode(spec, depth))?;
    let gv = g.index_of(cut)?;
    let link = g.link(gv)?;
    let factors: Vec<Option<CutGraph>> = [&cu, &cv]
        .iter()
        .map(|s| match CutGraph::complex(s, mode(s, depth + 1)) {
            Ok(h) => Ok(Some(h)),
            Err(Error::EmptyGraph) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let sizes = [0, 1].map(|i| factors[i].as_ref().map_or(0, |h| h.vertex_count()));
    let mut report = LinkJoinReport {
        link_vertices: link.vertices.len(),
        factor_vertices: sizes,
        holds: false,
    };
    if link.vertices.len() != sizes[0] + sizes[1] {
        return Ok(report);
    }
    // Place each link vertex in a factor.
    let mut placed: Vec<(usize, usize)> = Vec::with_capacity(link.vertices.len());
    let mut hit = [vec![false; sizes[0]], vec![false; sizes[1]]];
    for &v in &link.vertices {
        let c = g.cut(v);
        let mut found = None;
        for (f, outer) in [cut.first(), cut.second()].into_iter().enumerate() {
            for side in c.sides() {
                if side.is_subset(outer)? && side != outer {
                    let h = factors[f]
                        .as_ref()
                        .ok_or_else(|| domain("link vertex in an empty factor"))?;
                    let t = transport(h.spec(), side)?;
                    found = Some((f, h.index_of(&t)?));
                }
            }
        }
        let Some((f, i)) = found else {
            return Ok(report);
        };
        if hit[f][i] {
            return Ok(report);
        }
        hit[f][i] = true;
        placed.push((f, i));
    }
    for a in 0..placed.len() {
        for b in a + 1..placed.len() {
            let (fa, ia) = placed[a];
            let (fb, ib) = placed[b];
            let expected = if fa != fb {
                true
            } else {
                factors[fa].as_ref().unwrap().graph().has_edge(ia, ib)
            };
            if link.graph.has_edge(a, b) != expected {
                return Ok(report);
            }
        }
    }
    report.holds = true;
    Ok(report)
}

/// Outcome of the exhaustive diameter-two sweep over a bounded complex.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiameterTwoReport {
    pub depth: usize,
    pub vertices: usize,
    pub pairs: u64,
    pub crossing_pairs: u64,
    /// Crossing pairs without a validated midpoint.
    pub failures: u64,
    /// Midpoints rechecked with clopen arithmetic.
    pub rechecked: usize,
}

impl DiameterTwoReport {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.vertices > 0
    }
}

/// Classes holding at least two points, and classes holding exactly one.
fn count_masks(frame: &Frame) -> (u64, u64) {
    let (mut big, mut single) = (0u64, 0u64);
    for (i, c) in frame.counts().iter().enumerate() {
        if *c == CountClass::Exactly(1) {
            single |= 1 << i;
        } else if c.at_least(2) {
            big |= 1 << i;
        }
    }
    (big, single)
}

#[inline]
fn cross64(a: u64, b: u64, full: u64) -> bool {
    let (na, nb) = (full & !a, full & !b);
    a & b != 0 && a & nb != 0 && na & b != 0 && na & nb != 0
}

/// Every pair of distinct vertices of the depth-`d` complex of an infinite
/// space is at distance at most two; for crossing pairs the midpoint is a
/// large pairwise intersection, validated against both cuts.
pub fn diameter_two_sweep(
    spec: &Arc<SpaceSpec>,
    depth: usize,
    recheck: usize,
) -> Result<DiameterTwoReport> {
    if spec.is_finite() {
        return Err(domain(format!("{spec} is finite")));
    }
    let frame = Frame::at_depth(spec, depth);
    if frame.len() > 64 {
        return Err(Error::Resource {
            what: "classes in a diameter sweep",
            size: frame.len(),
            limit: 64,
        });
    }
    let wide = nonperipheral_masks(&frame)?;
    let masks: Vec<u64> = wide.iter().map(|&m| m as u64).collect();
    let full = frame.full_mask() as u64;
    let (big, single) = count_masks(&frame);
    let large = |q: u64| q & big != 0 || (q & single).count_ones() >= 2;
    let n = masks.len();
    let (crossing, failures) = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = masks[i];
            let na = full & !a;
            let mut crossing = 0u64;
            let mut failures = 0u64;
            for &b in &masks[i + 1..] {
                let nb = full & !b;
                let quads = [a & b, a & nb, na & b, na & nb];
                if quads.contains(&0) {
                    continue;
                }
                crossing += 1;
                let ok = match quads.into_iter().find(|&q| large(q)) {
                    Some(q) => {
                        let m = if q & 1 == 1 { q } else { full & !q };
                        large(full & !m)
                            && m != a
                            && m != b
                            && !cross64(m, a, full)
                            && !cross64(m, b, full)
                    }
                    None => false,
                };
                failures += !ok as u64;
            }
            (crossing, failures)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    // Recheck a deterministic sample of midpoints with the clopen oracle.
    let mut rechecked = 0;
    let mut failures = failures;
    let step = (n / recheck.max(1)).max(1);
    'outer: for i in (0..n).step_by(step) {
        for j in (i + 1..n).step_by(step) {
            if rechecked >= recheck {
                break 'outer;
            }
            let (a, b) = (wide[i], wide[j]);
            if !masks_cross(a, b, frame.full_mask()) {
                continue;
            }
            let ca = Cut::new(frame.clopen_of(a))?;
            let cb = Cut::new(frame.clopen_of(b))?;
            let path = short_path(&ca, &cb)?;
            if !ca.crosses(&cb)?
                || path.len() != 3
                || !path_is_valid(&path)?
                || !path[1].is_nonperipheral()
            {
                failures += 1;
            }
            rechecked += 1;
        }
    }
    Ok(DiameterTwoReport {
        depth,
        vertices: n,
        pairs: (n as u64) * (n as u64).saturating_sub(1) / 2,
        crossing_pairs: crossing,
        failures,
        rechecked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::point_cut;
    use crate::space::w;

    #[test]
    fn cantor_midpoint() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        let a = Cut::from_words(&cantor, &[w("0")]).unwrap();
        let b = Cut::from_words(&cantor, &[w("00"), w("10")]).unwrap();
        let p = short_path(&a, &b).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1].first().words(), &[w("00")]);
        assert!(path_is_valid(&p).unwrap());
        assert_eq!(short_path(&a, &a).unwrap().len(), 1);
    }

    #[test]
    fn finite_paths_through_three_point_sets() {
        let f7 = Arc::new(SpaceSpec::Finite(7));
        let a = point_cut(&f7, &[0, 1]).unwrap();
        let b = point_cut(&f7, &[1, 2]).unwrap();
        let p = short_path(&a, &b).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1], point_cut(&f7, &[0, 1, 2]).unwrap());
        let f4 = Arc::new(SpaceSpec::Finite(4));
        let x = point_cut(&f4, &[0, 1]).unwrap();
        let y = point_cut(&f4, &[0, 2]).unwrap();
        assert!(matches!(short_path(&x, &y), Err(Error::Unsupported(_))));
    }

    #[test]
    fn join_split_sizes() {
        let f6 = Arc::new(SpaceSpec::Finite(6));
        let c = point_cut(&f6, &[0, 1, 2]).unwrap();
        let (u, v) = join_split(&f6, &c).unwrap();
        assert_eq!(u.total(), CountClass::Exactly(4));
        assert_eq!(v.total(), CountClass::Exactly(4));
        let r = verify_link_join(&f6, &c, 0).unwrap();
        assert_eq!(r.factor_vertices, [3, 3]);
        assert!(r.holds);
    }

    #[test]
    fn outermost_link_is_one_factor() {
        let f5 = Arc::new(SpaceSpec::Finite(5));
        let c = point_cut(&f5, &[0, 1]).unwrap();
        let r = verify_link_join(&f5, &c, 0).unwrap();
        assert_eq!(r.factor_vertices, [0, 3]);
        assert!(r.holds);
    }

    #[test]
    fn cantor_link_join() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        let c = Cut::from_words(&cantor, &[w("0")]).unwrap();
        assert!(verify_link_join(&cantor, &c, 3).unwrap().holds);
    }

    #[test]
    fn sweep_small_depths() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        for d in 2..=3 {
            let r = diameter_two_sweep(&cantor, d, 50).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.crossing_pairs > 0);
        }
    }
}
