use std::sync::Arc;

use proptest::prelude::*;

use cutcomplex::algebra::{FiniteBooleanAlgebra, Homomorphism};
use cutcomplex::cuts::{masks_cross, path_is_valid, short_path, Cut, CutGraph, Mode};
use cutcomplex::graph::SimpleGraph;
use cutcomplex::io::{parse_space, SpaceDescriptor};
use cutcomplex::reconstruction::{
    automorphisms, compose, induced_automorphism, induced_map, is_automorphism, reconstruct,
};
use cutcomplex::space::{ClopenSet, Frame, Mask, SpaceSpec, Word};
use cutcomplex::spheres::{link_masks_brute, link_masks_by_region};

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..2, 0..6).prop_map(|bits| {
        let s: String = bits
            .iter()
            .map(|b| if *b == 1 { '1' } else { '0' })
            .collect();
        s.parse().unwrap()
    })
}

fn spec() -> impl Strategy<Value = Arc<SpaceSpec>> {
    prop_oneof![
        (1usize..9).prop_map(SpaceSpec::Finite),
        Just(SpaceSpec::Cantor),
        Just(SpaceSpec::Convergent),
        (1usize..5).prop_map(|n| SpaceSpec::union(SpaceSpec::Cantor, SpaceSpec::Finite(n))),
    ]
    .prop_map(Arc::new)
}

fn spec_and_sets() -> impl Strategy<Value = (Arc<SpaceSpec>, ClopenSet, ClopenSet)> {
    (
        spec(),
        proptest::collection::vec(word(), 0..5),
        proptest::collection::vec(word(), 0..5),
    )
        .prop_map(|(s, a, b)| {
            let a = ClopenSet::canonicalize(&s, &a);
            let b = ClopenSet::canonicalize(&s, &b);
            (s, a, b)
        })
}

/// Membership of each class of a fine frame, the oracle for set operations.
fn members(frame: &Frame, set: &ClopenSet) -> Vec<bool> {
    frame
        .classes()
        .iter()
        .map(|&c| set.contains_cylinder(c))
        .collect()
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn clopen_operations_match_membership((s, a, b) in spec_and_sets()) {
        let f = Frame::at_depth_with_points(&s, 7);
        let (ma, mb) = (members(&f, &a), members(&f, &b));
        let both: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x && *y).collect();
        let either: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x || *y).collect();
        let not_a: Vec<bool> = ma.iter().map(|x| !x).collect();
        prop_assert_eq!(members(&f, &a.intersect(&b).unwrap()), both);
        prop_assert_eq!(members(&f, &a.union(&b).unwrap()), either);
        prop_assert_eq!(members(&f, &a.complement()), not_a);
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.is_subset(&b).unwrap(), ma.iter().zip(&mb).all(|(x, y)| !x || *y));
    }

    #[test]
    fn canonical_form_is_unique((s, a, _b) in spec_and_sets()) {
        let f = Frame::at_depth_with_points(&s, 7);
        let rebuilt: Vec<Word> = f
            .classes()
            .iter()
            .copied()
            .filter(|&c| a.contains_cylinder(c))
            .collect();
        prop_assert_eq!(ClopenSet::canonicalize(&s, &rebuilt), a);
    }

    #[test]
    fn cuts_ignore_orientation_and_crossing_is_symmetric((s, a, b) in spec_and_sets()) {
        prop_assume!(!a.is_empty() && !a.is_whole() && !b.is_empty() && !b.is_whole());
        let (x, y) = (Cut::new(a.clone()).unwrap(), Cut::new(b.clone()).unwrap());
        prop_assert_eq!(&x, &Cut::new(a.complement()).unwrap());
        prop_assert_eq!(x.crosses(&y).unwrap(), y.crosses(&x).unwrap());
        prop_assert!(!x.crosses(&x).unwrap());
        let f = Frame::at_depth_with_points(&s, 6);
        if let (Some(ma), Some(mb)) = (f.mask_of(&a), f.mask_of(&b)) {
            prop_assert_eq!(masks_cross(ma, mb, f.full_mask()), x.crosses(&y).unwrap());
        }
    }

    #[test]
    fn finite_short_paths(n in 5usize..9, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = CutGraph::complex(&Arc::new(SpaceSpec::Finite(n)), Mode::Finite).unwrap();
        let cuts = g.cuts();
        let (a, b) = (&cuts[i.index(cuts.len())], &cuts[j.index(cuts.len())]);
        let p = short_path(a, b).unwrap();
        prop_assert!(path_is_valid(&p).unwrap());
        prop_assert_eq!(p.first(), Some(a));
        prop_assert_eq!(p.last(), Some(b));
        prop_assert!(p.len() <= 5);
    }

    #[test]
    fn point_permutations_reconstruct(p in (5usize..9).prop_flat_map(perm)) {
        let g = CutGraph::complex(&Arc::new(SpaceSpec::Finite(p.len())), Mode::Finite).unwrap();
        let phi = induced_automorphism(&p, &g).unwrap();
        prop_assert!(is_automorphism(g.graph(), &phi));
        prop_assert_eq!(reconstruct(&phi, &g, &g).unwrap(), p.clone());
        prop_assert_eq!(induced_map(&p, &g, &g).unwrap(), phi);
    }

    #[test]
    fn induced_action_is_a_homomorphism((p, q) in (5usize..8).prop_flat_map(|n| (perm(n), perm(n)))) {
        let g = CutGraph::complex(&Arc::new(SpaceSpec::Finite(p.len())), Mode::Finite).unwrap();
        let (fp, fq) = (induced_automorphism(&p, &g).unwrap(), induced_automorphism(&q, &g).unwrap());
        prop_assert_eq!(induced_automorphism(&compose(&p, &q), &g).unwrap(), compose(&fp, &fq));
    }

    #[test]
    fn automorphism_order_is_a_relabelling_invariant(
        (edges, p) in (3usize..9).prop_flat_map(|n| {
            (proptest::collection::vec((0..n, 0..n), 0..20).prop_map(move |e| (n, e)), perm(n))
        })
    ) {
        let (n, edges) = edges;
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let g = SimpleGraph::from_edges(n, &edges);
        let h = SimpleGraph::from_edges(n, &edges.iter().map(|&(a, b)| (p[a], p[b])).collect::<Vec<_>>());
        let ag = automorphisms(&g).unwrap();
        prop_assert_eq!(ag.order, automorphisms(&h).unwrap().order);
        for gen in &ag.generators {
            prop_assert!(is_automorphism(&g, gen));
        }
        if n <= 6 {
            let mut brute = 0u128;
            let mut idx: Vec<usize> = (0..n).collect();
            permutohedron_each(&mut idx, &mut |q| brute += is_automorphism(&g, q) as u128);
            prop_assert_eq!(ag.order, brute);
        }
    }

    #[test]
    fn dual_maps_commute(a in 1usize..6, t in 1usize..6, seed in any::<u64>()) {
        let map: Vec<usize> = (0..t).map(|i| ((seed >> (3 * i)) as usize) % a).collect();
        let source = FiniteBooleanAlgebra::new(a).unwrap();
        let target = FiniteBooleanAlgebra::new(t).unwrap();
        let h = Homomorphism::new(&source, &target, map).unwrap();
        prop_assert!(h.verify_dual().unwrap());
        for x in source.elements() {
            for y in source.elements() {
                prop_assert_eq!(h.apply(&x.meet(&y).unwrap()).unwrap(), h.apply(&x).unwrap().meet(&h.apply(&y).unwrap()).unwrap());
            }
            prop_assert_eq!(h.apply(&x.not()).unwrap(), h.apply(&x).unwrap().not());
        }
    }

    #[test]
    fn region_links_match_brute_force(assign in proptest::collection::vec(0usize..4, 8)) {
        let c = Arc::new(SpaceSpec::Cantor);
        let f = Frame::at_depth(&c, 3);
        let mut sides: Vec<Mask> = (1..4)
            .map(|s| assign.iter().enumerate().filter(|(_, &a)| a == s).fold(0, |m, (i, _)| m | 1 << i))
            .filter(|&m| m != 0)
            .collect();
        sides.sort_unstable();
        prop_assume!(!sides.is_empty());
        let mut a: Vec<Mask> = link_masks_by_region(&f, &sides).unwrap().concat();
        a.sort_unstable();
        prop_assert_eq!(a, link_masks_brute(&f, &sides).unwrap());
    }

    #[test]
    fn space_descriptors_round_trip(s in spec()) {
        let json = serde_json::to_string(&SpaceDescriptor::from_spec(&s)).unwrap();
        prop_assert_eq!(&*parse_space(&json).unwrap(), &*s);
    }
}

/// Heap's algorithm over every permutation of `a`.
fn permutohedron_each(a: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn go(k: usize, a: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(a);
            return;
        }
        for i in 0..k {
            go(k - 1, a, f);
            a.swap(if k.is_multiple_of(2) { i } else { 0 }, k - 1);
        }
    }
    go(a.len(), a, f);
}
