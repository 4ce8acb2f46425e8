use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::sphere::make_sphere;
use crate::cuts::{
    frame_for, mask_nonperipheral, masks_cross, nonperipheral_masks, normalize, Cut, Mode,
};
use crate::error::{domain, Error, Result};
use crate::graph::{SimpleGraph, MAX_DENSE_VERTICES};
use crate::pants::{adjacency_graph_masks, mask_peripheral_pair};
use crate::space::{ClopenSet, CountClass, Frame, Mask, SpaceSpec};

/// Most atoms of one region whose subsets are enumerated.
pub const MAX_REGION_ATOMS: usize = 22;

/// A recognition condition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereCondition {
    /// Some two of the cuts cross.
    Compatibility,
    /// The adjacency graph of the cuts is not complete.
    Adjacency,
    /// The given sides are not pairwise disjoint.
    Orientation,
    /// Some side of some cut is finite while `k > 1`.
    InfiniteSides,
    /// The opposite graph of the link intersection does not have `k + 1`
    /// components.
    Components,
    /// Not exactly one of those components is finite.
    FiniteComponent,
    /// Set arithmetic on a finite space found no sphere.
    Residual,
}

impl fmt::Display for SphereCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SphereCondition::Compatibility => "compatibility",
            SphereCondition::Adjacency => "adjacency",
            SphereCondition::Orientation => "orientation",
            SphereCondition::InfiniteSides => "infinite-sides",
            SphereCondition::Components => "components",
            SphereCondition::FiniteComponent => "finite-component",
            SphereCondition::Residual => "residual",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Link-intersection components of the bounded complex.
    Graph,
    /// Direct set arithmetic; used for finite spaces.
    SetArithmetic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Recognition {
    Sphere {
        n: usize,
        k: usize,
        depth: usize,
        components: usize,
        /// Largest set of pairwise compatible cuts in the finite component.
        clique: usize,
        method: Method,
    },
    NotASphere {
        condition: SphereCondition,
        depth: usize,
    },
}

impl Recognition {
    pub fn nk(&self) -> Option<(usize, usize)> {
        match self {
            Recognition::Sphere { n, k, .. } => Some((*n, *k)),
            Recognition::NotASphere { .. } => None,
        }
    }
}

fn side_masks(frame: &Frame, sides: &[ClopenSet]) -> Result<Vec<Mask>> {
    sides
        .iter()
        .map(|s| {
            frame
                .mask_of(s)
                .ok_or_else(|| domain(format!("side {s} is deeper than the frame")))
        })
        .collect()
}

/// The pieces a compatible family with pairwise disjoint sides cuts the
/// space into: one region per side, then the middle. Each region is
/// listed as its atoms, the classes inside it and one collapsed block per
/// bounding cut.
fn regions(frame: &Frame, sides: &[Mask]) -> Vec<Vec<Mask>> {
    let full = frame.full_mask();
    let bits = |m: Mask| {
        (0..frame.len())
            .filter(move |j| m >> j & 1 == 1)
            .map(|j| 1 << j)
    };
    let mut out: Vec<Vec<Mask>> = sides
        .iter()
        .map(|&u| {
            let mut atoms = vec![full & !u];
            atoms.extend(bits(u));
            atoms
        })
        .collect();
    let residual = full & !sides.iter().fold(0, |a, &u| a | u);
    let mut middle: Vec<Mask> = sides.to_vec();
    middle.extend(bits(residual));
    out.push(middle);
    out
}

/// Normalized non-peripheral cuts built from the atoms of one region,
/// other than the boundary cuts.
fn region_cuts(frame: &Frame, atoms: &[Mask], sides: &[Mask]) -> Result<Vec<Mask>> {
    let t = atoms.len();
    if t > MAX_REGION_ATOMS {
        return Err(Error::Resource {
            what: "atoms of a region",
            size: t,
            limit: MAX_REGION_ATOMS,
        });
    }
    if t < 2 {
        return Ok(Vec::new());
    }
    let full = frame.full_mask();
    let boundary: HashSet<Mask> = sides.iter().map(|&u| normalize(u, full)).collect();
    let mut out = Vec::new();
    for s in 0..(1u64 << (t - 1)) - 1 {
        let pick = s << 1 | 1;
        let m = (0..t)
            .filter(|i| pick >> i & 1 == 1)
            .fold(0, |acc, i| acc | atoms[i]);
        let m = normalize(m, full);
        if mask_nonperipheral(frame, m) && !boundary.contains(&m) {
            out.push(m);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `L(γ_1) ∩ … ∩ L(γ_k)` over `frame`, grouped by region, for sides that
/// are pairwise disjoint.
pub fn link_masks_by_region(frame: &Frame, sides: &[Mask]) -> Result<Vec<Vec<Mask>>> {
    regions(frame, sides)
        .iter()
        .map(|atoms| region_cuts(frame, atoms, sides))
        .collect()
}

/// `L(γ_1) ∩ … ∩ L(γ_k)` by testing every non-peripheral cut of the frame.
pub fn link_masks_brute(frame: &Frame, cuts: &[Mask]) -> Result<Vec<Mask>> {
    let full = frame.full_mask();
    let members: HashSet<Mask> = cuts.iter().map(|&m| normalize(m, full)).collect();
    Ok(nonperipheral_masks(frame)?
        .into_iter()
        .filter(|m| !members.contains(m) && cuts.iter().all(|&c| !masks_cross(c, *m, full)))
        .collect())
}

fn opposite_of(frame: &Frame, masks: &[Mask]) -> Result<SimpleGraph> {
    if masks.len() > MAX_DENSE_VERTICES {
        return Err(Error::Resource {
            what: "link-intersection vertices",
            size: masks.len(),
            limit: MAX_DENSE_VERTICES,
        });
    }
    let full = frame.full_mask();
    Ok(SimpleGraph::from_fn(masks.len(), |a, b| {
        masks_cross(masks[a], masks[b], full)
    }))
}

/// The opposite graph on `link`, where two vertices are also joined when
/// some cut of `bridges`, over the finer frame reached through `lift`,
/// crosses both. On a bounded complex a cut `{c} | rest` with `c` a deepest
/// class crosses no other cut of the complex; the finer cuts restore the
/// connections the full complex has.
fn bridged_opposite(
    frame: &Frame,
    link: &[Mask],
    fine: Option<(&Frame, &[usize], &[Mask])>,
) -> Result<SimpleGraph> {
    let mut g = opposite_of(frame, link)?;
    if let Some((ff, lift, bridges)) = fine {
        let full = ff.full_mask();
        let lifted: Vec<Mask> = link.iter().map(|&m| Frame::lift_mask(lift, m)).collect();
        for &b in bridges {
            let mut first = None;
            for (i, &m) in lifted.iter().enumerate() {
                if masks_cross(m, b, full) {
                    match first {
                        None => first = Some(i),
                        Some(f) if !g.has_edge(f, i) => g.add_edge(f, i),
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Components of `(L(γ_1) ∩ … ∩ L(γ_k))^⊥` on the complex of `mode`, by
/// filtering every cut. Bounded complexes are bridged through the cuts one
/// level deeper.
pub fn opposite_components(
    spec: &Arc<SpaceSpec>,
    sides: &[ClopenSet],
    mode: Mode,
) -> Result<usize> {
    let frame = frame_for(spec, mode)?;
    let us = side_masks(&frame, sides)?;
    let link = link_masks_brute(&frame, &us)?;
    let g = match mode {
        Mode::Finite => opposite_of(&frame, &link)?,
        Mode::Bounded(d) => {
            let fine = frame_for(spec, Mode::Bounded(d + 1))?;
            let lift = fine.refinement_map(&frame)?;
            let bridges = link_masks_brute(&fine, &side_masks(&fine, sides)?)?;
            bridged_opposite(&frame, &link, Some((&fine, &lift, &bridges)))?
        }
    };
    Ok(g.components().len())
}

fn adjacency_complete(frame: &Frame, cuts: &[Mask]) -> Result<bool> {
    let k = cuts.len();
    if k < 2 {
        return Ok(true);
    }
    let all = nonperipheral_masks(frame)?;
    let a = adjacency_graph_masks(frame, &all, cuts);
    Ok(a.edge_count() == k * (k - 1) / 2)
}

fn pairwise_compatible(full: Mask, cuts: &[Mask]) -> bool {
    cuts.iter()
        .enumerate()
        .all(|(i, &a)| cuts[i + 1..].iter().all(|&b| !masks_cross(a, b, full)))
}

/// Decides whether the cuts with outer sides `sides` form a sphere, from
/// the depth-`depth` complex.
///
/// For infinite spaces the verdict uses only graph data: adjacency
/// witnesses, the components of the link intersection's opposite graph,
/// and which of them keep their size when the depth grows by one. For
/// finite spaces the sphere is found by set arithmetic and the
/// components are reported alongside.
pub fn recognize_sphere(
    spec: &Arc<SpaceSpec>,
    sides: &[ClopenSet],
    depth: usize,
) -> Result<Recognition> {
    if sides.is_empty() {
        return Err(domain("no cuts to recognize"));
    }
    let cuts: Vec<Cut> = sides
        .iter()
        .map(|s| Cut::new(s.clone()))
        .collect::<Result<_>>()?;
    for c in &cuts {
        c.require_nonperipheral()?;
    }
    let finite = spec.is_finite();
    let mode = if finite {
        Mode::Finite
    } else {
        Mode::Bounded(depth)
    };
    let frame = frame_for(spec, mode)?;
    let k = sides.len();
    let us = side_masks(&frame, sides)?;
    let full = frame.full_mask();
    let reject = |condition| Ok(Recognition::NotASphere { condition, depth });

    if !pairwise_compatible(full, &us) {
        return reject(SphereCondition::Compatibility);
    }
    let witness_frame = if finite {
        frame.clone()
    } else {
        frame_for(
            spec,
            Mode::Bounded(depth.min(sides.iter().map(|s| s.depth()).max().unwrap_or(0) + 1)),
        )?
    };
    let complete = adjacency_complete(&witness_frame, &side_masks(&witness_frame, sides)?)?
        || (witness_frame.len() < frame.len() && adjacency_complete(&frame, &us)?);
    if !complete {
        return reject(SphereCondition::Adjacency);
    }
    let union = us.iter().fold(0, |a, &u| a | u);
    if us.iter().map(|u| u.count_ones()).sum::<u32>() != union.count_ones() {
        return reject(SphereCondition::Orientation);
    }
    let by_region = link_masks_by_region(&frame, &us)?;

    if finite {
        let Ok(s) = make_sphere(spec, sides.to_vec()) else {
            return reject(SphereCondition::Residual);
        };
        let components = by_region
            .iter()
            .map(|r| Ok(opposite_of(&frame, r)?.components().len()))
            .sum::<Result<usize>>()?;
        return Ok(Recognition::Sphere {
            n: s.n(),
            k,
            depth,
            components,
            clique: opposite_of(&frame, &by_region[k])?
                .complement()
                .max_clique_size(),
            method: Method::SetArithmetic,
        });
    }

    if k > 1
        && cuts
            .iter()
            .any(|c| c.counts().iter().any(|n| !n.is_infinite()))
    {
        return reject(SphereCondition::InfiniteSides);
    }
    let next = frame_for(spec, Mode::Bounded(depth + 1))?;
    let lift = next.refinement_map(&frame)?;
    let next_regions = link_masks_by_region(&next, &side_masks(&next, sides)?)?;
    let comps: Vec<usize> = (0..=k)
        .map(|r| {
            let g = bridged_opposite(
                &frame,
                &by_region[r],
                Some((&next, &lift, &next_regions[r])),
            )?;
            Ok(g.components().len())
        })
        .collect::<Result<_>>()?;
    let components: usize = comps.iter().sum();
    if components != k + 1 {
        return reject(SphereCondition::Components);
    }
    // A component is finite when it stops growing: one level deeper its
    // region gains no cuts.
    let stable: Vec<usize> = (0..=k)
        .filter(|&r| comps[r] > 0 && next_regions[r].len() == by_region[r].len())
        .collect();
    if stable.len() != 1 || comps[stable[0]] != 1 {
        return reject(SphereCondition::FiniteComponent);
    }
    let clique = opposite_of(&frame, &by_region[stable[0]])?
        .complement()
        .max_clique_size();
    match (clique + 3).checked_sub(k) {
        Some(n) => Ok(Recognition::Sphere {
            n,
            k,
            depth,
            components,
            clique,
            method: Method::Graph,
        }),
        None => reject(SphereCondition::FiniteComponent),
    }
}

/// Outcome of [`triple_condition_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    /// `A({γ_i, γ_j, γ_k})` is a triangle.
    pub triangle: bool,
    /// Sides `U_i, U_j, U_k` that are pairwise disjoint, if there are any.
    pub orientation: Option<[ClopenSet; 3]>,
    /// `V_i ∩ V_j ∩ V_k ≠ ∅` for that orientation.
    pub nonempty: bool,
    /// Components of `(L(γ_i) ∩ L(γ_j) ∩ L(γ_k))^⊥`.
    pub components: usize,
}

impl TripleReport {
    /// Hypothesis of the triple condition: exactly four components.
    pub fn hypothesis(&self) -> bool {
        self.components == 4
    }

    /// The implication "hypothesis and triangle ⇒ disjoint orientation with
    /// nonempty triple intersection".
    pub fn holds(&self) -> bool {
        !(self.hypothesis() && self.triangle) || (self.orientation.is_some() && self.nonempty)
    }
}

/// Checks the triangle condition for three pairwise compatible cuts on the
/// complex of `mode`.
pub fn triple_condition_check(cuts: &[Cut; 3], mode: Mode) -> Result<TripleReport> {
    let spec = cuts[0].spec().clone();
    let frame = frame_for(&spec, mode)?;
    let full = frame.full_mask();
    let ms: Vec<Mask> = cuts
        .iter()
        .map(|c| {
            frame
                .mask_of(c.first())
                .ok_or_else(|| domain(format!("cut {c} is deeper than the frame")))
        })
        .collect::<Result<_>>()?;
    if !pairwise_compatible(full, &ms) {
        return Err(domain("the three cuts are not pairwise compatible"));
    }
    let triangle = adjacency_complete(&frame, &ms)?;
    let firsts: Vec<ClopenSet> = cuts.iter().map(|c| c.first().clone()).collect();
    let components = opposite_components(&spec, &firsts, mode)?;
    let mut orientation = None;
    let mut nonempty = false;
    for pick in 0..8u8 {
        let us: Vec<Mask> = (0..3)
            .map(|i| {
                if pick >> i & 1 == 0 {
                    ms[i]
                } else {
                    full & !ms[i]
                }
            })
            .collect();
        if us[0] & us[1] == 0 && us[0] & us[2] == 0 && us[1] & us[2] == 0 {
            let rest = full & !(us[0] | us[1] | us[2]);
            let ne = rest != 0;
            if orientation.is_none() || (ne && !nonempty) {
                orientation = Some([0, 1, 2].map(|i| frame.clopen_of(us[i])));
                nonempty = ne;
            }
        }
    }
    Ok(TripleReport {
        triangle,
        orientation,
        nonempty,
        components,
    })
}

/// Outcome of [`sphere_law_check`] on one sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereLawReport {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    /// Components of the opposite graph, by exhaustive filtering.
    pub components: usize,
    pub outermost_boundary: bool,
    pub peripheral_boundary_pair: bool,
    pub recognized: Option<(usize, usize)>,
}

impl SphereLawReport {
    pub fn holds(&self) -> bool {
        let bound = self.components <= self.k + 1;
        let equal_case = self.components != self.k + 1
            || (!self.outermost_boundary && !self.peripheral_boundary_pair);
        let recognition =
            self.components != self.k + 1 || self.recognized == Some((self.n, self.k));
        bound && equal_case && recognition
    }
}

/// Counts the opposite-graph components of a sphere's link intersection
/// by filtering every cut of the complex, then compares the count with
/// [`recognize_sphere`].
pub fn sphere_law_check(
    spec: &Arc<SpaceSpec>,
    sides: &[ClopenSet],
    depth: usize,
) -> Result<SphereLawReport> {
    let s = make_sphere(spec, sides.to_vec())?;
    let mode = if spec.is_finite() {
        Mode::Finite
    } else {
        Mode::Bounded(depth)
    };
    let frame = frame_for(spec, mode)?;
    let us = side_masks(&frame, sides)?;
    let components = opposite_components(spec, sides, mode)?;
    let full = frame.full_mask();
    let outermost_boundary = us.iter().any(|&u| {
        frame.mask_count(u) == CountClass::Exactly(2)
            || frame.mask_count(full & !u) == CountClass::Exactly(2)
    });
    let peripheral_boundary_pair = us.iter().enumerate().any(|(i, &a)| {
        us[i + 1..]
            .iter()
            .any(|&b| mask_peripheral_pair(&frame, a, b))
    });
    let recognized = recognize_sphere(spec, sides, depth)?.nk();
    Ok(SphereLawReport {
        n: s.n(),
        k: s.k(),
        depth,
        components,
        outermost_boundary,
        peripheral_boundary_pair,
        recognized,
    })
}

/// One sphere per multiset of side sizes in `Finite(n)`: sides of sizes
/// `s_1 ≥ … ≥ s_k ≥ 2` on consecutive points, the rest punctures.
pub fn finite_sphere_fixtures(n: usize) -> Result<Vec<Vec<ClopenSet>>> {
    let spec = Arc::new(SpaceSpec::finite(n)?);
    let frame = Frame::points(&spec)?;
    fn parts(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for s in (2..=max.min(left)).rev() {
            cur.push(s);
            parts(left - s, s, cur, out);
            cur.pop();
        }
    }
    let mut sizes = Vec::new();
    parts(n, n, &mut Vec::new(), &mut sizes);
    let mut out = Vec::new();
    for sz in sizes {
        let mut next = 0;
        let sides: Vec<ClopenSet> = sz
            .iter()
            .map(|&s| {
                let m: Mask = ((1 << s) - 1) << next;
                next += s;
                frame.clopen_of(m)
            })
            .collect();
        if make_sphere(&spec, sides.clone()).is_ok() {
            out.push(sides);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::point_cut;
    use crate::space::w;

    fn cyl(spec: &Arc<SpaceSpec>, words: &[&str]) -> Vec<ClopenSet> {
        words
            .iter()
            .map(|s| ClopenSet::canonicalize(spec, &[w(s)]))
            .collect()
    }

    fn pts(spec: &Arc<SpaceSpec>, p: &[usize]) -> ClopenSet {
        point_cut(spec, p).unwrap();
        let f = Frame::points(spec).unwrap();
        f.clopen_of(p.iter().fold(0, |m, &i| m | 1 << i))
    }

    #[test]
    fn regions_agree_with_brute_force() {
        let c = Arc::new(SpaceSpec::Cantor);
        for (sides, d) in [
            (vec!["00", "01", "10", "11"], 4),
            (vec!["0", "10", "11"], 3),
            (vec!["00", "01", "1"], 4),
            (vec!["000", "1"], 4),
        ] {
            let f = Frame::at_depth(&c, d);
            let us = side_masks(&f, &cyl(&c, &sides)).unwrap();
            let mut a: Vec<Mask> = link_masks_by_region(&f, &us).unwrap().concat();
            a.sort_unstable();
            assert_eq!(a, link_masks_brute(&f, &us).unwrap(), "{sides:?}");
        }
    }

    #[test]
    fn cantor_partition_into_five() {
        let c = Arc::new(SpaceSpec::Cantor);
        let sides = cyl(&c, &["00", "01", "10", "110", "111"]);
        let r = recognize_sphere(&c, &sides, 5).unwrap();
        assert_eq!(r.nk(), Some((0, 5)));
        let Recognition::Sphere { clique, .. } = r else {
            unreachable!()
        };
        assert_eq!(clique, 2);
        assert_eq!(recognize_sphere(&c, &sides, 4).unwrap().nk(), Some((0, 5)));
        // At depth 3 the sides 110 and 111 are single classes, so no cut of
        // that depth crosses both of their boundaries.
        assert_eq!(
            recognize_sphere(&c, &sides, 3).unwrap(),
            Recognition::NotASphere {
                condition: SphereCondition::Adjacency,
                depth: 3
            }
        );
    }

    #[test]
    fn cantor_quarters_and_a_finite_tail() {
        let c = Arc::new(SpaceSpec::Cantor);
        assert_eq!(
            recognize_sphere(&c, &cyl(&c, &["00", "01", "10", "11"]), 4)
                .unwrap()
                .nk(),
            Some((0, 4))
        );
        let u = Arc::new(SpaceSpec::union(SpaceSpec::Cantor, SpaceSpec::Finite(3)));
        let r = recognize_sphere(&u, &cyl(&u, &["0"]), 3).unwrap();
        assert_eq!(r.nk(), Some((3, 1)));
        let Recognition::Sphere { clique, .. } = r else {
            unreachable!()
        };
        assert_eq!(clique, 1);
        let conv = Arc::new(SpaceSpec::Convergent);
        assert_eq!(
            recognize_sphere(&conv, &cyl(&conv, &["111"]), 5)
                .unwrap()
                .nk(),
            Some((3, 1))
        );
    }

    #[test]
    fn nested_cuts_fail_adjacency() {
        let c = Arc::new(SpaceSpec::Cantor);
        let r = recognize_sphere(&c, &cyl(&c, &["000", "00", "0"]), 4).unwrap();
        assert_eq!(
            r,
            Recognition::NotASphere {
                condition: SphereCondition::Adjacency,
                depth: 4
            }
        );
    }

    #[test]
    fn finite_sides_fail_when_several() {
        let u = Arc::new(SpaceSpec::union(SpaceSpec::Cantor, SpaceSpec::Finite(4)));
        let sides = vec![
            ClopenSet::canonicalize(&u, &[w("0")]),
            ClopenSet::canonicalize(&u, &[w("10"), w("110")]),
        ];
        let r = recognize_sphere(&u, &sides, 4).unwrap();
        assert_eq!(r.nk(), None);
    }

    #[test]
    fn finite_recognition_by_set_arithmetic() {
        let f = Arc::new(SpaceSpec::Finite(7));
        let sides = vec![pts(&f, &[0, 1, 2]), pts(&f, &[3, 4, 5])];
        let r = recognize_sphere(&f, &sides, 0).unwrap();
        assert_eq!(r.nk(), Some((1, 2)));
    }

    #[test]
    fn triple_conditions() {
        let f7 = Arc::new(SpaceSpec::Finite(7));
        let cs = [[0, 1], [2, 3], [4, 5]].map(|p| point_cut(&f7, &p).unwrap());
        let r = triple_condition_check(&cs, Mode::Finite).unwrap();
        assert!(r.triangle && r.nonempty && r.holds());
        let f6 = Arc::new(SpaceSpec::Finite(6));
        let cs = [[0, 1], [2, 3], [4, 5]].map(|p| point_cut(&f6, &p).unwrap());
        let r = triple_condition_check(&cs, Mode::Finite).unwrap();
        assert!(r.triangle && !r.nonempty);
        assert!(!r.hypothesis() && r.holds());
        let c = Arc::new(SpaceSpec::Cantor);
        let cs = ["00", "01", "10"].map(|s| Cut::from_words(&c, &[w(s)]).unwrap());
        let r = triple_condition_check(&cs, Mode::Bounded(3)).unwrap();
        assert!(r.triangle && r.nonempty);
        assert_eq!(r.orientation.unwrap()[0].words(), &[w("00")]);
    }

    #[test]
    fn sphere_laws_on_finite_fixtures() {
        for n in 7..=8 {
            let spec = Arc::new(SpaceSpec::Finite(n));
            for sides in finite_sphere_fixtures(n).unwrap() {
                let r = sphere_law_check(&spec, &sides, 0).unwrap();
                assert!(r.holds(), "{n} {sides:?} {r:?}");
            }
        }
    }
}
