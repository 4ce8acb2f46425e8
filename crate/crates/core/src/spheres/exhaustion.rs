use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::sphere::{make_sphere, restriction_map, verify_triangle, Sphere};
use crate::cuts::{nonperipheral_masks, Cut};
use crate::error::{Error, Result};
use crate::space::{ClopenSet, Frame, Mask, SpaceSpec, MAX_CLASSES};

/// Deepest level a construction will try.
pub const MAX_EXHAUSTION_DEPTH: usize = 40;
/// Most boundary components on one sphere.
pub const MAX_SPHERE_SIDES: usize = 4096;
/// Largest depth-`L` partition certified by enumerating every cut.
pub const MAX_SWEEP_CLASSES: usize = 16;

/// Spheres `S_1, S_2, …` whose outer sides are the infinite cylinders of
/// increasing depths, finite classes becoming punctures.
#[derive(Clone, Debug)]
pub struct Exhaustion {
    spec: Arc<SpaceSpec>,
    depths: Vec<usize>,
    spheres: Vec<Sphere>,
}

impl Exhaustion {
    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn spheres(&self) -> &[Sphere] {
        &self.spheres
    }

    pub fn restriction_maps(&self) -> Result<Vec<Vec<usize>>> {
        self.spheres
            .windows(2)
            .map(|p| restriction_map(&p[0], &p[1]))
            .collect()
    }
}

fn sphere_at_depth(spec: &Arc<SpaceSpec>, d: usize) -> Result<Option<Sphere>> {
    let frame = Frame::at_depth_with_points(spec, d);
    let sides: Vec<ClopenSet> = frame
        .classes()
        .iter()
        .zip(frame.counts())
        .filter(|(_, c)| c.is_infinite())
        .map(|(&w, _)| ClopenSet::canonicalize(spec, &[w]))
        .collect();
    if sides.len() > MAX_SPHERE_SIDES {
        return Err(Error::Resource {
            what: "sphere boundary components",
            size: sides.len(),
            limit: MAX_SPHERE_SIDES,
        });
    }
    if sides.is_empty() {
        return Ok(None);
    }
    Ok(make_sphere(spec, sides).ok())
}

/// `n + k` of the sphere bounded by the cut of `u` and the outer sides of
/// `next` inside `u`.
fn region_complexity(u: &ClopenSet, next: &Sphere) -> usize {
    1 + next.sides().iter().filter(|s| u.covers(s)).count()
        + next.punctures().iter().filter(|p| u.covers(p)).count()
}

fn complexity_ok(cur: &Sphere, next: &Sphere) -> bool {
    cur.sides().iter().all(|u| region_complexity(u, next) >= 5)
}

/// Builds `levels` spheres. The first level is the shallowest valid
/// sphere with `n + k ≥ 4`; each further level is the shallowest depth at
/// which every region between consecutive levels has `n + k ≥ 5`.
pub fn build_exhaustion(spec: &Arc<SpaceSpec>, levels: usize) -> Result<Exhaustion> {
    if spec.is_finite() {
        return Err(Error::Unsupported(format!("{spec} is finite")));
    }
    if levels == 0 {
        return Err(Error::Construction(
            "an exhaustion needs at least one level".into(),
        ));
    }
    let mut depths = Vec::new();
    let mut spheres: Vec<Sphere> = Vec::new();
    let mut d = 0;
    while spheres.len() < levels {
        let found = loop {
            d += 1;
            if d > MAX_EXHAUSTION_DEPTH {
                return Err(Error::Construction(format!(
                    "no sphere for level {} of {spec} up to depth {MAX_EXHAUSTION_DEPTH}",
                    spheres.len() + 1
                )));
            }
            let Some(s) = sphere_at_depth(spec, d)? else {
                continue;
            };
            let ok = match spheres.last() {
                None => s.n() + s.k() >= 4,
                Some(prev) => complexity_ok(prev, &s),
            };
            if ok {
                break s;
            }
        };
        depths.push(d);
        spheres.push(found);
    }
    Ok(Exhaustion {
        spec: spec.clone(),
        depths,
        spheres,
    })
}

/// How the (Exhaustion) property was certified.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ExhaustionWitness {
    /// Every non-peripheral cut of the depth was checked against the levels.
    Sweep {
        cuts: usize,
    },
    /// Every outer side of this level lies in one class of the depth, so
    /// every cut of that depth other than this level's boundary is
    /// interior to it, and the boundary is interior to the next level.
    Structural {
        level: usize,
        boundary_checked: usize,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExhaustionCertificate {
    pub levels: usize,
    pub increasing: bool,
    /// Least `n + k` over the regions between level `i` and `i + 1`.
    pub complexity: Vec<usize>,
    pub infinite_complement: bool,
    pub exhaustion_depth: usize,
    pub exhaustion: ExhaustionWitness,
    pub triangles: bool,
}

impl ExhaustionCertificate {
    pub fn holds(&self) -> bool {
        self.increasing
            && self.complexity.iter().all(|&c| c >= 5)
            && self.infinite_complement
            && self.exhaustion != ExhaustionWitness::None
            && self.triangles
    }
}

fn interior_by_masks(sides: &[Mask], full: Mask, m: Mask) -> bool {
    sides
        .iter()
        .all(|&u| u != m && u != full & !m && (u & m == u || u & m == 0))
}

fn sweep(exh: &Exhaustion, depth: usize) -> Result<Option<usize>> {
    let spec = exh.spec();
    let coarse = Frame::at_depth(spec, depth);
    if coarse.len() > MAX_SWEEP_CLASSES {
        return Ok(None);
    }
    let cuts = nonperipheral_masks(&coarse)?;
    let mut pending: Vec<Mask> = cuts.clone();
    for (s, &d) in exh.spheres.iter().zip(&exh.depths) {
        let fine = Frame::at_depth_with_points(spec, d.max(depth));
        if fine.len() > MAX_CLASSES {
            break;
        }
        let lift = fine.refinement_map(&coarse)?;
        let sides: Vec<Mask> = s
            .sides()
            .iter()
            .map(|u| fine.mask_of(u).expect("sides are unions of finer classes"))
            .collect();
        let full = fine.full_mask();
        pending.retain(|&m| !interior_by_masks(&sides, full, Frame::lift_mask(&lift, m)));
        if pending.is_empty() {
            return Ok(Some(cuts.len()));
        }
    }
    Ok(if pending.is_empty() {
        Some(cuts.len())
    } else {
        None
    })
}

fn structural(exh: &Exhaustion, depth: usize) -> Result<Option<(usize, usize)>> {
    let frame = Frame::at_depth(exh.spec(), depth);
    for (i, s) in exh.spheres.iter().enumerate() {
        let fine_enough = s.sides().iter().all(|u| {
            u.words().len() == 1
                && u.words()[0].len() >= depth
                && frame.class_containing(u.words()[0]).is_some()
        });
        if !fine_enough {
            continue;
        }
        let Some(next) = exh.spheres.get(i + 1) else {
            return Ok(None);
        };
        for c in s.cuts() {
            if !next.is_interior(c)? {
                return Ok(None);
            }
        }
        return Ok(Some((i + 1, s.k())));
    }
    Ok(None)
}

/// Checks the four defining properties, with (Exhaustion) tested on the
/// non-peripheral cuts of depth at most `depth`.
pub fn certify(exh: &Exhaustion, depth: usize) -> Result<ExhaustionCertificate> {
    let mut increasing = true;
    let mut complexity = Vec::new();
    let mut triangles = true;
    for (i, pair) in exh.spheres.windows(2).enumerate() {
        let (cur, next) = (&pair[0], &pair[1]);
        for c in cur.cuts() {
            if !next.is_interior(c)? {
                increasing = false;
            }
        }
        let mut least = usize::MAX;
        for u in cur.sides() {
            let mut sides = vec![u.complement()];
            sides.extend(next.sides().iter().filter(|s| u.covers(s)).cloned());
            least = least.min(match make_sphere(exh.spec(), sides) {
                Ok(r) => r.n() + r.k(),
                Err(_) => 0,
            });
        }
        complexity.push(least);
        if !verify_triangle(cur, next, exh.depths[i + 1])? {
            triangles = false;
        }
    }
    let infinite_complement = exh
        .spheres
        .iter()
        .all(|s| s.sides().iter().all(|u| u.count().is_infinite()));
    let exhaustion = match sweep(exh, depth)? {
        Some(cuts) => ExhaustionWitness::Sweep { cuts },
        None => match structural(exh, depth)? {
            Some((level, boundary_checked)) => ExhaustionWitness::Structural {
                level,
                boundary_checked,
            },
            None => ExhaustionWitness::None,
        },
    };
    Ok(ExhaustionCertificate {
        levels: exh.spheres.len(),
        increasing,
        complexity,
        infinite_complement,
        exhaustion_depth: depth,
        exhaustion,
        triangles,
    })
}

/// Report of [`inverse_limit_check`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InverseLimitReport {
    pub levels: usize,
    pub threads: usize,
    pub classes: usize,
    pub bijective: bool,
}

/// Enumerates the compatible threads `(x_1, …, x_m)` through the
/// restriction maps and matches them with the point classes at the depth
/// of level `m`.
pub fn inverse_limit_check(exh: &Exhaustion, levels: usize) -> Result<InverseLimitReport> {
    if levels == 0 || levels > exh.spheres.len() {
        return Err(Error::Domain(format!(
            "exhaustion has {} levels, asked for {levels}",
            exh.spheres.len()
        )));
    }
    let spheres = &exh.spheres[..levels];
    let maps = exh.restriction_maps()?;
    let sizes: Vec<usize> = spheres.iter().map(|s| s.n() + s.k()).collect();
    // Preimages under each restriction map.
    let pre: Vec<Vec<Vec<usize>>> = (0..levels - 1)
        .map(|j| {
            let mut p = vec![Vec::new(); sizes[j]];
            for (x, &y) in maps[j].iter().enumerate() {
                p[y].push(x);
            }
            p
        })
        .collect();
    let mut threads: Vec<Vec<usize>> = (0..sizes[0]).map(|x| vec![x]).collect();
    for p in &pre {
        threads = threads
            .into_iter()
            .flat_map(|t| {
                p[*t.last().unwrap()].iter().map(move |&x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    let frame = Frame::at_depth_with_points(exh.spec(), exh.depths[levels - 1]);
    let thread_set: HashSet<Vec<usize>> = threads.iter().cloned().collect();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut bijective = thread_set.len() == threads.len();
    for (ci, &c) in frame.classes().iter().enumerate() {
        let t: Option<Vec<usize>> = spheres.iter().map(|s| s.project(c)).collect();
        match t {
            Some(t) if thread_set.contains(&t) => {
                if seen.insert(t, ci).is_some() {
                    bijective = false;
                }
            }
            _ => bijective = false,
        }
    }
    bijective &= seen.len() == threads.len();
    Ok(InverseLimitReport {
        levels,
        threads: threads.len(),
        classes: frame.len(),
        bijective,
    })
}

/// Checks that the interior cuts of `s` visible at `depth` are exactly the
/// lifts of the non-peripheral cuts of its quotient.
pub fn interior_matches_quotient(s: &Sphere, depth: usize) -> Result<bool> {
    let spec = s.spec();
    let frame = Frame::at_depth_with_points(spec, depth.max(s.depth()));
    frame.ensure_maskable()?;
    let q = s.quotient();
    let mut groups: Vec<Mask> = vec![0; q.labels.len()];
    for (j, &c) in frame.classes().iter().enumerate() {
        match s.project(c) {
            Some(i) => groups[i] |= 1 << j,
            None => return Ok(false),
        }
    }
    let lift = |m: Mask| -> Mask {
        (0..groups.len())
            .filter(|i| m >> i & 1 == 1)
            .fold(0, |acc, i| acc | groups[i])
    };
    let qcuts = nonperipheral_masks(&Frame::points(&q.spec)?)?;
    for &m in &qcuts {
        let c = Cut::new(frame.clopen_of(lift(m)))?;
        if !c.is_nonperipheral() || !s.is_interior(&c)? {
            return Ok(false);
        }
    }
    let boundary: Vec<Mask> = groups[..s.k()].to_vec();
    let full = frame.full_mask();
    let interior = nonperipheral_masks(&frame)?
        .into_iter()
        .filter(|&m| groups.iter().all(|&g| g & m == g || g & m == 0))
        .filter(|&m| boundary.iter().all(|&u| u != m && u != full & !m))
        .count();
    Ok(interior == qcuts.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_levels_double_in_depth() {
        let c = Arc::new(SpaceSpec::Cantor);
        let e = build_exhaustion(&c, 3).unwrap();
        assert_eq!(e.depths(), &[2, 4, 6]);
        let cert = certify(&e, 3).unwrap();
        assert!(cert.holds(), "{cert:?}");
        let r = inverse_limit_check(&e, 3).unwrap();
        assert_eq!((r.threads, r.classes), (64, 64));
        assert!(r.bijective);
    }

    #[test]
    fn convergent_levels() {
        let c = Arc::new(SpaceSpec::Convergent);
        let e = build_exhaustion(&c, 3).unwrap();
        assert_eq!(e.depths(), &[3, 6, 9]);
        for s in e.spheres() {
            assert_eq!(s.k(), 1);
        }
        assert!(certify(&e, 3).unwrap().holds());
        let r = inverse_limit_check(&e, 2).unwrap();
        assert_eq!(r.threads, 7);
        assert!(r.bijective);
        let one = inverse_limit_check(&e, 1).unwrap();
        assert_eq!(one.threads, e.spheres()[0].n() + 1);
    }

    #[test]
    fn finite_spaces_have_no_exhaustion() {
        let f = Arc::new(SpaceSpec::Finite(6));
        assert!(matches!(
            build_exhaustion(&f, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn union_of_cantor_sets_separates_the_halves() {
        let u = Arc::new(SpaceSpec::union(SpaceSpec::Cantor, SpaceSpec::Cantor));
        let e = build_exhaustion(&u, 2).unwrap();
        let first = &e.spheres()[0];
        assert!(first.sides().iter().all(|s| !s.words()[0].is_empty()));
        let halves = [crate::space::w("0"), crate::space::w("1")];
        for h in halves {
            assert!(first.sides().iter().any(|s| h.is_prefix_of(s.words()[0])));
        }
        assert!(certify(&e, 2).unwrap().holds());
    }

    #[test]
    fn interior_cuts_match_quotient_cuts() {
        let c = Arc::new(SpaceSpec::Cantor);
        let e = build_exhaustion(&c, 1).unwrap();
        assert!(interior_matches_quotient(&e.spheres()[0], 3).unwrap());
    }
}
