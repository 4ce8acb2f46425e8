//! End-to-end checks of the library's claims, one per criterion.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{stone_dual, verify_epsilon, FiniteBooleanAlgebra, Homomorphism};
use crate::cuts::{diameter_two_sweep, path_is_valid, short_path, Cut, CutGraph, Mode};
use crate::error::Result;
use crate::graph::Diameter;
use crate::pants::{
    is_peripheral_pair, peripheral_pair_check, standard_cantor_pants, valence_criterion_check,
    valence_one_check, verify_pants_bounded, FinitePants,
};
use crate::reconstruction::{
    automorphisms, for_all_perms, group_elements, induced_automorphism, induced_map,
    kernel_of_action, permute_mask, reconstruct, stabilizer_check,
};
use crate::space::{w, ClopenSet, SpaceSpec, Word};
use crate::spheres::{
    build_exhaustion, certify, finite_sphere_fixtures, inverse_limit_check, make_sphere,
    recognize_sphere, sphere_law_check,
};
use crate::systems::run_fixture;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(usize, &str); 13] = [
    (1, "four-point complex"),
    (2, "five-point complex is Petersen"),
    (3, "automorphisms are geometric"),
    (4, "finite diameter"),
    (5, "infinite diameter two"),
    (6, "cantor pants decomposition"),
    (7, "valence criterion"),
    (8, "peripheral pairs"),
    (9, "sphere recognition"),
    (10, "stone duality"),
    (11, "exhaustion"),
    (12, "stone space systems"),
    (13, "kernel and stabilizers"),
];

/// Seed for the random homomorphisms of criterion 10.
pub const DEFAULT_SEED: u64 = 0x5eed;

fn fin(n: usize) -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::Finite(n))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

type Check = Result<(bool, String)>;

fn four_points() -> Check {
    let g = CutGraph::complex(&fin(4), Mode::Finite)?;
    let image: HashSet<Vec<usize>> = for_all_perms(4, |p| induced_automorphism(p, &g).ok())
        .into_iter()
        .collect();
    let kernel = kernel_of_action(&fin(4))?;
    let klein = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    let ok = g.vertex_count() == 3 && g.edge_count() == 0 && image.len() == 6 && kernel == klein;
    Ok((
        ok,
        format!(
            "{} vertices, {} edges, image order {}, kernel order {}",
            g.vertex_count(),
            g.edge_count(),
            image.len(),
            kernel.len()
        ),
    ))
}

fn petersen() -> Check {
    let g = CutGraph::complex(&fin(5), Mode::Finite)?;
    let h = g.graph();
    let order = automorphisms(h)?.order;
    let ok = g.vertex_count() == 10
        && g.edge_count() == 15
        && h.is_regular(3)
        && h.is_triangle_free()
        && g.diameter() == Diameter::Finite(2)
        && order == 120;
    Ok((
        ok,
        format!(
            "{} vertices, {} edges, diameter {}, |Aut| = {order}",
            g.vertex_count(),
            g.edge_count(),
            g.diameter()
        ),
    ))
}

fn geometric_automorphisms() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=8 {
        let g = CutGraph::complex(&fin(n), Mode::Finite)?;
        let aut = automorphisms(g.graph())?;
        let elements = group_elements(&aut.generators, g.vertex_count())?;
        let bad = elements
            .par_iter()
            .filter(|phi| match reconstruct(phi, &g, &g) {
                Ok(f) => induced_map(&f, &g, &g).ok().as_ref() != Some(*phi),
                Err(_) => true,
            })
            .count();
        let image: HashSet<Vec<usize>> = for_all_perms(n, |p| induced_automorphism(p, &g).ok())
            .into_iter()
            .collect();
        let n_ok = aut.order == factorial(n)
            && elements.len() as u128 == aut.order
            && bad == 0
            && image.len() as u128 == factorial(n);
        ok &= n_ok;
        parts.push(format!(
            "n={n}: |Aut|={} unreconstructed={bad} image={}",
            aut.order,
            image.len()
        ));
    }
    for n in 6..=7 {
        let bad = preservation_failures(n)?;
        ok &= bad == 0;
        parts.push(format!("n={n}: {bad} permutations break preservation"));
    }
    Ok((ok, parts.join("; ")))
}

/// Permutations of `Finite(n)` whose induced automorphism sends some
/// distinguished configuration to one of a different kind.
fn preservation_failures(n: usize) -> Result<usize> {
    let fp = FinitePants::new(n)?;
    let g = &fp.graph;
    let cuts = g.cuts();
    let nv = cuts.len();
    let outer: Vec<bool> = cuts.iter().map(Cut::is_outermost).collect();
    let mut peripheral = HashSet::new();
    for a in 0..nv {
        for b in a + 1..nv {
            if g.graph().has_edge(a, b) && is_peripheral_pair(&cuts[a], &cuts[b])? {
                peripheral.insert((a, b));
            }
        }
    }
    let pants: HashSet<&Vec<usize>> = fp.decompositions.iter().collect();
    let spec = g.spec().clone();
    let frame = g.frame();
    let spheres = finite_sphere_fixtures(n)?
        .into_iter()
        .map(|sides| -> Result<_> {
            let masks = sides
                .iter()
                .map(|u| frame.mask_of(u).expect("point frame"))
                .collect::<Vec<_>>();
            let s = make_sphere(&spec, sides)?;
            let boundary = s
                .cuts()
                .iter()
                .map(|c| g.index_of(c))
                .collect::<Result<Vec<_>>>()?;
            Ok((masks, boundary, (s.n(), s.k())))
        })
        .collect::<Result<Vec<_>>>()?;
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let bad = for_all_perms(n, |p| {
        let phi = induced_automorphism(p, g).ok()?;
        let ok = (0..nv).all(|v| outer[v] == outer[phi[v]])
            && peripheral.iter().all(|&(a, b)| {
                let (x, y) = (phi[a].min(phi[b]), phi[a].max(phi[b]));
                peripheral.contains(&(x, y))
            })
            && fp
                .decompositions
                .iter()
                .all(|d| pants.contains(&sorted(d.iter().map(|&v| phi[v]).collect())))
            && spheres.iter().all(|(masks, boundary, nk)| {
                let sides = masks
                    .iter()
                    .map(|&m| frame.clopen_of(permute_mask(p, m)))
                    .collect();
                make_sphere(&spec, sides).is_ok_and(|s| {
                    (s.n(), s.k()) == *nk
                        && s.cuts()
                            .iter()
                            .filter_map(|c| g.index_of(c).ok())
                            .collect::<HashSet<_>>()
                            == boundary.iter().map(|&v| phi[v]).collect()
                })
            });
        (!ok).then_some(())
    });
    Ok(bad.len())
}

fn finite_diameter() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=9 {
        let g = CutGraph::complex(&fin(n), Mode::Finite)?;
        let d = g.diameter();
        let cuts = g.cuts();
        let worst = (0..cuts.len())
            .into_par_iter()
            .map(|i| -> Result<usize> {
                let mut worst = 0;
                for j in i + 1..cuts.len() {
                    let p = short_path(&cuts[i], &cuts[j])?;
                    if !path_is_valid(&p)?
                        || p.first() != Some(&cuts[i])
                        || p.last() != Some(&cuts[j])
                    {
                        return Ok(usize::MAX);
                    }
                    worst = worst.max(p.len() - 1);
                }
                Ok(worst)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        ok &= matches!(d, Diameter::Finite(x) if x <= 4) && worst <= 4;
        parts.push(format!("n={n}: diameter {d}, longest path {worst}"));
    }
    Ok((ok, parts.join("; ")))
}

fn infinite_diameter() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in [SpaceSpec::Cantor, SpaceSpec::Convergent] {
        let spec = Arc::new(spec);
        for d in 2..=4 {
            let r = diameter_two_sweep(&spec, d, 64)?;
            ok &= r.holds();
            parts.push(format!(
                "{spec} d={d}: {} vertices, {} failures",
                r.vertices, r.failures
            ));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn cantor_pants() -> Check {
    let p = standard_cantor_pants(6)?;
    let r = verify_pants_bounded(&p, 4)?;
    Ok((
        r.holds(),
        format!(
            "{} members, {} probes, {} uncrossed, max crossing {}",
            r.members,
            r.probes_checked,
            r.uncrossed.len(),
            r.max_crossing
        ),
    ))
}

fn valence() -> Check {
    let r7 = valence_criterion_check(7)?;
    let r6 = valence_criterion_check(6)?;
    let ok = r7.decompositions == 945
        && r7.wrong_size == 0
        && r7.biconditional
        && !r6.biconditional
        && r6.max_valence <= 2;
    Ok((
        ok,
        format!(
            "n=7: {} decompositions, biconditional {}; n=6: biconditional {}, max valence {}",
            r7.decompositions, r7.biconditional, r6.biconditional, r6.max_valence
        ),
    ))
}

fn peripheral_pairs() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 7..=8 {
        let r = peripheral_pair_check(n)?;
        ok &= r.violations == 0 && r.peripheral > 0;
        parts.push(format!(
            "n={n}: {} pairs, {} violations",
            r.pairs, r.violations
        ));
    }
    let v = valence_one_check(7)?;
    ok &= v.violations == 0 && v.cases > 0;
    parts.push(format!(
        "valence one n=7: {} cases, {} violations",
        v.cases, v.violations
    ));
    Ok((ok, parts.join("; ")))
}

/// Every set partition of `items`.
fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let Some((first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first.clone());
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first.clone()]);
        out.push(q);
    }
    out
}

/// Spheres whose sides are unions of depth-two cylinders of the Cantor set.
pub fn cantor_sphere_fixtures() -> Vec<Vec<ClopenSet>> {
    let spec = Arc::new(SpaceSpec::Cantor);
    let words: Vec<Word> = Word::all_of_len(2).collect();
    let mut out = Vec::new();
    for p in set_partitions(&words) {
        let blocks: Vec<ClopenSet> = p
            .iter()
            .map(|b| ClopenSet::canonicalize(&spec, b))
            .collect();
        for chosen in 1u32..1 << blocks.len() {
            let sides: Vec<ClopenSet> = (0..blocks.len())
                .filter(|i| chosen >> i & 1 == 1)
                .map(|i| blocks[i].clone())
                .collect();
            if make_sphere(&spec, sides.clone()).is_ok() {
                out.push(sides);
            }
        }
    }
    out
}

fn spheres() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 7..=9 {
        let spec = fin(n);
        let fixtures = finite_sphere_fixtures(n)?;
        let bad = fixtures
            .par_iter()
            .map(|s| sphere_law_check(&spec, s, 0).map(|r| !r.holds()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&b| b)
            .count();
        ok &= bad == 0 && !fixtures.is_empty();
        parts.push(format!("n={n}: {} spheres, {bad} bad", fixtures.len()));
    }
    let cantor = Arc::new(SpaceSpec::Cantor);
    let fixtures = cantor_sphere_fixtures();
    let reports = fixtures
        .iter()
        .map(|s| sphere_law_check(&cantor, s, 3))
        .collect::<Result<Vec<_>>>()?;
    let bad = reports.iter().filter(|r| !r.holds()).count();
    let recognized = reports.iter().filter(|r| r.recognized.is_some()).count();
    ok &= bad == 0 && recognized > 0;
    parts.push(format!(
        "cantor: {} spheres, {recognized} recognized, {bad} bad",
        fixtures.len()
    ));
    let five: Vec<ClopenSet> = ["00", "01", "10", "110", "111"]
        .iter()
        .map(|s| ClopenSet::canonicalize(&cantor, &[w(s)]))
        .collect();
    let r = recognize_sphere(&cantor, &five, 4)?;
    ok &= r.nk() == Some((0, 5));
    parts.push(format!("five sides at depth 4: {:?}", r.nk()));
    Ok((ok, parts.join("; ")))
}

fn duality(seed: u64) -> Check {
    let mut ok = true;
    for k in 1..=5 {
        let b = FiniteBooleanAlgebra::new(k)?;
        let dual = stone_dual(&b);
        ok &= b.ultrafilters().len() == k;
        let elements: Vec<_> = b.elements().collect();
        let images = elements
            .iter()
            .map(|a| dual.eta(a))
            .collect::<Result<Vec<_>>>()?;
        let distinct: HashSet<&[Word]> = images.iter().map(|c| c.words()).collect();
        ok &= distinct.len() == 1 << k;
        for (i, a) in elements.iter().enumerate() {
            ok &= images[i].equal(&dual.eta(&a.not())?.complement())?;
            for (j, c) in elements.iter().enumerate() {
                ok &= dual
                    .eta(&a.meet(c)?)?
                    .equal(&images[i].intersect(&images[j])?)?;
                ok &= dual
                    .eta(&a.join(c)?)?
                    .equal(&images[i].union(&images[j])?)?;
            }
        }
        ok &= verify_epsilon(&fin(k))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 128;
    let mut passed = 0;
    for _ in 0..trials {
        let (a, t) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let source = FiniteBooleanAlgebra::new(a)?;
        let target = FiniteBooleanAlgebra::new(t)?;
        let map = (0..t).map(|_| rng.gen_range(0..a)).collect();
        passed += Homomorphism::new(&source, &target, map)?.verify_dual()? as usize;
    }
    ok &= passed == trials;
    Ok((
        ok,
        format!("1..=5 atoms; {passed}/{trials} random homomorphisms (seed {seed})"),
    ))
}

fn exhaustion() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in [SpaceSpec::Cantor, SpaceSpec::Convergent] {
        let spec = Arc::new(spec);
        let exh = build_exhaustion(&spec, 5)?;
        let cert = certify(&exh, 5)?;
        let lim = inverse_limit_check(&exh, 5)?;
        ok &= cert.holds() && lim.bijective;
        parts.push(format!(
            "{spec}: depths {:?}, {:?}, {}/{} threads",
            exh.depths(),
            cert.exhaustion,
            lim.threads,
            lim.classes
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn systems() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["weak5", "cone5", "cone6", "strong7"] {
        let r = run_fixture(name)?;
        ok &= r.passed();
        parts.push(format!(
            "{name}: {}",
            if r.passed() { "ok" } else { "FAILED" }
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn kernel_and_stabilizers() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=8 {
        let k = kernel_of_action(&fin(n))?;
        ok &= k.len() == 1;
        parts.push(format!("kernel n={n}: {}", k.len()));
    }
    for n in 6..=8 {
        let spec = fin(n);
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let bad = pairs
            .iter()
            .map(|&(i, j)| {
                let k: Vec<usize> = (0..i).collect();
                let u: Vec<usize> = (0..j).collect();
                stabilizer_check(&spec, &k, &u).map(|r| !r.verified)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&b| b)
            .count();
        ok &= bad == 0;
        parts.push(format!(
            "stabilizers n={n}: {} pairs, {bad} bad",
            pairs.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Runs criterion `id`; errors count as failures.
pub fn run(id: usize, seed: u64) -> Option<CriterionResult> {
    let &(_, name) = CRITERIA.iter().find(|c| c.0 == id)?;
    let outcome = match id {
        1 => four_points(),
        2 => petersen(),
        3 => geometric_automorphisms(),
        4 => finite_diameter(),
        5 => infinite_diameter(),
        6 => cantor_pants(),
        7 => valence(),
        8 => peripheral_pairs(),
        9 => spheres(),
        10 => duality(seed),
        11 => exhaustion(),
        12 => systems(),
        _ => kernel_and_stabilizers(),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult {
        id,
        name,
        passed,
        detail,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter_map(|&(id, _)| run(id, seed))
        .collect()
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {:>2} {}: {}",
            self.id, self.name, self.detail
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (0..6)
            .map(|n| set_partitions(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn cheap_criteria() {
        for id in [1, 2, 7, 12] {
            let r = run(id, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(run(14, DEFAULT_SEED).is_none());
    }
}
