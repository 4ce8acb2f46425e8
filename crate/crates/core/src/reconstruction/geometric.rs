use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::aut::{is_isomorphism, is_permutation, Perm};
use crate::cuts::{nonperipheral_masks, normalize, Cut, CutGraph, Mode};
use crate::error::{domain, Error, Result};
use crate::space::{CountClass, Frame, Mask, SpaceSpec};
use crate::spheres::make_sphere;

/// The image of a class mask under a permutation of the classes.
pub fn permute_mask(p: &[usize], m: Mask) -> Mask {
    let mut out = 0;
    let mut rest = m;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1 << p[i];
        rest &= rest - 1;
    }
    out
}

fn point_frame(g: &CutGraph) -> Result<&Frame> {
    if !g.spec().is_finite()
        || g.frame()
            .counts()
            .iter()
            .any(|c| *c != CountClass::Exactly(1))
    {
        return Err(Error::Unsupported(
            "point maps need the complex of a finite space".into(),
        ));
    }
    Ok(g.frame())
}

/// Vertex map `from → to` pushed forward from a bijection of points.
pub fn induced_map(p: &[usize], from: &CutGraph, to: &CutGraph) -> Result<Perm> {
    let (a, b) = (point_frame(from)?, point_frame(to)?);
    if p.len() != a.len() || a.len() != b.len() || !is_permutation(p) {
        return Err(domain(format!(
            "{p:?} is not a bijection of {} points",
            a.len()
        )));
    }
    let full = b.full_mask();
    (0..from.vertex_count())
        .map(|v| {
            to.index_of_mask(normalize(permute_mask(p, from.mask(v)), full))
                .ok_or_else(|| domain("image of a vertex is not a vertex"))
        })
        .collect()
}

/// The push-forward action of a point permutation on `g`.
pub fn induced_automorphism(p: &[usize], g: &CutGraph) -> Result<Perm> {
    induced_map(p, g, g)
}

/// Whether `f` induces `phi`.
pub fn verify_geometric(
    phi: &[usize],
    f: &[usize],
    from: &CutGraph,
    to: &CutGraph,
) -> Result<bool> {
    Ok(induced_map(f, from, to)? == phi)
}

fn two_point_side(frame: &Frame, m: Mask) -> Option<Mask> {
    let other = frame.full_mask() & !m;
    if m.count_ones() == 2 {
        Some(m)
    } else if other.count_ones() == 2 {
        Some(other)
    } else {
        None
    }
}

/// Recovers the point bijection inducing an isomorphism `phi` of cut
/// complexes of finite spaces.
///
/// With four points the basepoint is point 0 on both sides. Otherwise
/// `f(a)` is the common point of the small sides of the images of two
/// outermost cuts whose small sides meet in `{a}`; every such pair is
/// tried and must agree.
pub fn reconstruct(phi: &[usize], from: &CutGraph, to: &CutGraph) -> Result<Perm> {
    let (a, b) = (point_frame(from)?, point_frame(to)?);
    if !is_isomorphism(from.graph(), to.graph(), phi) {
        return Err(Error::InvalidIsomorphism(
            "vertex map does not preserve edges".into(),
        ));
    }
    let n = a.len();
    if n != b.len() {
        return Err(Error::InvalidIsomorphism(format!(
            "{n} points against {}",
            b.len()
        )));
    }
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "reconstruction needs 4 points, got {n}"
        )));
    }
    let mut f = vec![usize::MAX; n];
    if n == 4 {
        f[0] = 0;
        for x in 1..4 {
            let v = from
                .index_of_mask(1 | 1 << x)
                .expect("two-point cuts of four points");
            let img = normalize(to.mask(phi[v]), b.full_mask());
            f[x] = (img & !1).trailing_zeros() as usize;
        }
    } else {
        let image_pair = |x: usize, y: usize| -> Result<Mask> {
            let v = from
                .index_of_mask(1 << x | 1 << y)
                .expect("two-point cuts are vertices");
            two_point_side(b, to.mask(phi[v])).ok_or_else(|| {
                Error::InvalidIsomorphism("an outermost cut maps to a cut that is not".into())
            })
        };
        for x in 0..n {
            let mut found: Option<usize> = None;
            for (y, z) in (0..n).filter(|&y| y != x).tuple_combinations() {
                let meet = image_pair(x, y)? & image_pair(x, z)?;
                if meet.count_ones() != 1 {
                    return Err(Error::InvalidIsomorphism(format!(
                        "images of the witnesses for point {x} do not meet in one point"
                    )));
                }
                let p = meet.trailing_zeros() as usize;
                if found.is_some_and(|q| q != p) {
                    return Err(Error::InvalidIsomorphism(format!(
                        "witness pairs disagree at point {x}"
                    )));
                }
                found = Some(p);
            }
            f[x] = found.expect("five points give a witness pair");
        }
    }
    if !is_permutation(&f) {
        return Err(Error::InvalidIsomorphism(
            "recovered point map is not a bijection".into(),
        ));
    }
    if !verify_geometric(phi, &f, from, to)? {
        return Err(Error::InvalidIsomorphism(
            "recovered point map does not induce the isomorphism".into(),
        ));
    }
    Ok(f)
}

/// Maps `f` over every permutation of `0..n`, split over the first entry,
/// keeping the `Some` results in lexicographic order.
pub fn for_all_perms<T: Send>(n: usize, f: impl Fn(&[usize]) -> Option<T> + Sync) -> Vec<T> {
    (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest: Vec<usize> = (0..n).filter(|&x| x != first).collect();
            let k = rest.len();
            let f = &f;
            rest.into_iter().permutations(k).filter_map(move |tail| {
                let mut p = Vec::with_capacity(n);
                p.push(first);
                p.extend(tail);
                f(&p)
            })
        })
        .collect()
}

/// Point permutations acting trivially on the complex.
pub fn kernel_of_action(spec: &Arc<SpaceSpec>) -> Result<Vec<Perm>> {
    let g = CutGraph::complex(spec, Mode::Finite)?;
    let n = point_frame(&g)?.len();
    if n > 10 {
        return Err(Error::Resource {
            what: "points to permute",
            size: n,
            limit: 10,
        });
    }
    let id: Perm = (0..g.vertex_count()).collect();
    Ok(for_all_perms(n, |p| {
        (induced_automorphism(p, &g).ok()? == id).then(|| p.to_vec())
    }))
}

/// Outcome of [`stabilizer_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub cuts: Vec<Cut>,
    /// `(n, k)` of the sphere whose boundary and interior cuts are used.
    pub sphere: Option<(usize, usize)>,
    /// Points pinned by a peripheral pair.
    pub pinned: Vec<usize>,
    pub permutations: usize,
    /// Permutations fixing every cut of the family.
    pub stabilizer: usize,
    pub verified: bool,
}

/// Builds a finite family `G` of cuts whose stabilizer maps `K` into `U`,
/// then checks that over all of `Sym(E)`.
///
/// `G` holds the boundary and interior cuts of the sphere with outer side
/// `K`; if that sphere has `n + k < 5`, or `K` is a single point, each
/// point of `K` is pinned by a peripheral pair instead.
pub fn stabilizer_check(
    spec: &Arc<SpaceSpec>,
    k_set: &[usize],
    u_set: &[usize],
) -> Result<StabilizerReport> {
    let g = CutGraph::complex(spec, Mode::Finite).map_err(|e| match e {
        Error::EmptyGraph => Error::Unsupported("no non-peripheral cuts".into()),
        e => e,
    })?;
    let frame = point_frame(&g)?.clone();
    let n = frame.len();
    let to_mask = |s: &[usize]| -> Result<Mask> {
        s.iter().try_fold(0, |m, &x| {
            if x < n {
                Ok(m | 1 << x)
            } else {
                Err(domain(format!("point {x} out of range")))
            }
        })
    };
    let (km, um) = (to_mask(k_set)?, to_mask(u_set)?);
    if km == 0 {
        return Err(domain("K must be nonempty"));
    }
    if km & !um != 0 {
        return Err(domain("K must lie inside U"));
    }
    if um == frame.full_mask() {
        return Err(domain("U must be a proper subset"));
    }
    let full = frame.full_mask();
    let mut family: Vec<Mask> = Vec::new();
    let mut sphere = None;
    let mut pinned = Vec::new();
    let side = frame.clopen_of(km);
    if let Ok(s) = make_sphere(spec, vec![side]) {
        if s.n() + s.k() >= 5 {
            sphere = Some((s.n(), s.k()));
            for m in nonperipheral_masks(&frame)? {
                let c = Cut::new(frame.clopen_of(m))?;
                if s.cuts().contains(&c) || s.is_interior(&c)? {
                    family.push(m);
                }
            }
        }
    }
    if sphere.is_none() {
        for x in 0..n {
            if km >> x & 1 == 0 {
                continue;
            }
            // {x} ∪ A and A with |A| = 2 and at least two points left over.
            let others: Vec<usize> = (0..n).filter(|&y| y != x).take(2).collect();
            let a: Mask = others.iter().fold(0, |m, &y| m | 1 << y);
            if (full & !(a | 1 << x)).count_ones() < 2 {
                return Err(Error::Unsupported(format!(
                    "no peripheral pair pins point {x} among {n} points"
                )));
            }
            family.push(normalize(a | 1 << x, full));
            family.push(normalize(a, full));
            pinned.push(x);
        }
    }
    family.sort_unstable();
    family.dedup();
    let results = for_all_perms(n, |p| {
        let fixes = family
            .iter()
            .all(|&m| normalize(permute_mask(p, m), full) == m);
        fixes.then(|| permute_mask(p, km) & !um == 0)
    });
    let permutations = (1..=n).product();
    Ok(StabilizerReport {
        cuts: family
            .iter()
            .map(|&m| Cut::new(frame.clopen_of(m)))
            .collect::<Result<_>>()?,
        sphere,
        pinned,
        permutations,
        stabilizer: results.len(),
        verified: results.iter().all(|&ok| ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruction::aut::{automorphisms, group_elements};

    fn complex(n: usize) -> CutGraph {
        CutGraph::complex(&Arc::new(SpaceSpec::Finite(n)), Mode::Finite).unwrap()
    }

    #[test]
    fn four_points() {
        let g = complex(4);
        let t = induced_automorphism(&[1, 0, 2, 3], &g).unwrap();
        let fixed = g.index_of_mask(0b0011).unwrap();
        assert_eq!(t[fixed], fixed);
        assert_eq!((0..3).filter(|&v| t[v] == v).count(), 1);
        assert_eq!(
            induced_automorphism(&[1, 0, 3, 2], &g).unwrap(),
            vec![0, 1, 2]
        );
        let k = kernel_of_action(&Arc::new(SpaceSpec::Finite(4))).unwrap();
        assert_eq!(
            k,
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0]
            ]
        );
        let phi = induced_automorphism(&[0, 2, 1, 3], &g).unwrap();
        assert_eq!(reconstruct(&phi, &g, &g).unwrap(), vec![0, 2, 1, 3]);
    }

    #[test]
    fn round_trips() {
        let g = complex(6);
        let phi = induced_automorphism(&[1, 0, 2, 3, 4, 5], &g).unwrap();
        assert_eq!(reconstruct(&phi, &g, &g).unwrap(), vec![1, 0, 2, 3, 4, 5]);
        let g5 = complex(5);
        let id: Perm = (0..10).collect();
        assert_eq!(reconstruct(&id, &g5, &g5).unwrap(), vec![0, 1, 2, 3, 4]);
        let a = automorphisms(g5.graph()).unwrap();
        for phi in group_elements(&a.generators, 10).unwrap() {
            let f = reconstruct(&phi, &g5, &g5).unwrap();
            assert!(verify_geometric(&phi, &f, &g5, &g5).unwrap());
        }
    }

    #[test]
    fn bad_maps_are_rejected() {
        let g = complex(5);
        let mut phi: Perm = (0..10).collect();
        phi.swap(0, 1);
        assert!(matches!(
            reconstruct(&phi, &g, &g),
            Err(Error::InvalidIsomorphism(_))
        ));
    }

    #[test]
    fn kernels_are_trivial() {
        for n in 5..=6 {
            assert_eq!(
                kernel_of_action(&Arc::new(SpaceSpec::Finite(n)))
                    .unwrap()
                    .len(),
                1
            );
        }
    }

    #[test]
    fn stabilizers() {
        let f6 = Arc::new(SpaceSpec::Finite(6));
        let r = stabilizer_check(&f6, &[0], &[0, 1]).unwrap();
        assert_eq!(r.pinned, vec![0]);
        assert!(r.verified);
        let f8 = Arc::new(SpaceSpec::Finite(8));
        let r = stabilizer_check(&f8, &[0, 1, 2], &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.sphere, Some((5, 1)));
        assert!(r.verified);
        assert!(stabilizer_check(&f6, &[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 5]).is_err());
        assert!(matches!(
            stabilizer_check(&Arc::new(SpaceSpec::Finite(3)), &[0], &[0, 1]),
            Err(Error::Unsupported(_))
        ));
    }
}
