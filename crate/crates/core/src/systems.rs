//! Nested point sets `E_1 ⊋ E_2 ⊋ … ⊋ E_m` of a finite space and their
//! weak and strong cut complexes.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cuts::{frame_for, nonperipheral_masks, CutGraph, Mode};
use crate::error::{domain, Error, Result};
use crate::reconstruction::{automorphisms, induced_map, is_automorphism, permute_mask};
use crate::space::{Frame, Mask, SpaceSpec};

/// A Stone space system over `Finite(n)`. `nested` lists `E_2, …, E_m`;
/// `E_1` is every point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoneSpaceSystem {
    pub n: usize,
    pub nested: Vec<Vec<usize>>,
}

impl StoneSpaceSystem {
    pub fn new(n: usize, nested: Vec<Vec<usize>>) -> Result<StoneSpaceSystem> {
        let sys = StoneSpaceSystem { n, nested };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        SpaceSpec::finite(self.n)?;
        if self.nested.is_empty() {
            return Err(Error::Construction(
                "a system needs at least E_1 and E_2".into(),
            ));
        }
        let mut prev = self.full();
        for (i, e) in self.nested.iter().enumerate() {
            let mut m: Mask = 0;
            for &x in e {
                if x >= self.n {
                    return Err(Error::Construction(format!(
                        "E_{} names point {x} of {}",
                        i + 2,
                        self.n
                    )));
                }
                m |= 1 << x;
            }
            if m & !prev != 0 || m == prev {
                return Err(Error::Construction(format!(
                    "E_{} is not a proper subset of E_{}",
                    i + 2,
                    i + 1
                )));
            }
            prev = m;
        }
        Ok(())
    }

    fn full(&self) -> Mask {
        (1 << self.n) - 1
    }

    pub fn spec(&self) -> Arc<SpaceSpec> {
        Arc::new(SpaceSpec::Finite(self.n))
    }

    /// `E_k` as a point mask, for `1 ≤ k ≤ m`.
    pub fn level(&self, k: usize) -> Mask {
        if k <= 1 {
            self.full()
        } else {
            self.nested[k - 2].iter().fold(0, |m, &x| m | 1 << x)
        }
    }

    /// The length `m`.
    pub fn length(&self) -> usize {
        self.nested.len() + 1
    }

    fn frame(&self) -> Result<Frame> {
        frame_for(&self.spec(), Mode::Finite)
    }

    fn cut_masks(&self, keep: impl Fn(Mask) -> bool) -> Vec<Mask> {
        let full = self.full();
        (0..1u128 << (self.n - 1))
            .map(|m| m << 1 | 1)
            .filter(|&m| m != full && keep(m) && keep(full & !m))
            .collect()
    }

    pub fn weak_masks(&self) -> Vec<Mask> {
        let e2 = self.level(2);
        self.cut_masks(|side| side.count_ones() >= 2 || side & e2 != 0)
    }

    pub fn strong_masks(&self) -> Vec<Mask> {
        let em = self.level(self.length());
        self.cut_masks(|side| (side & em).count_ones() >= 2)
    }
}

pub fn weak_complex(sys: &StoneSpaceSystem) -> Result<CutGraph> {
    CutGraph::from_masks(sys.frame()?, sys.weak_masks())
}

/// The full subgraph of `𝒞(E_1)` on the strongly non-peripheral cuts.
pub fn strong_complex(sys: &StoneSpaceSystem) -> Result<CutGraph> {
    CutGraph::from_masks(sys.frame()?, sys.strong_masks())
}

/// Whether `p` preserves every `E_k`.
pub fn is_system_homeo(p: &[usize], sys: &StoneSpaceSystem) -> bool {
    p.len() == sys.n && (2..=sys.length()).all(|k| permute_mask(p, sys.level(k)) == sys.level(k))
}

pub fn cone_vertices(g: &CutGraph) -> Vec<usize> {
    g.cone_vertices()
}

/// Order of the group of system homeomorphisms, counted over `Sym(n)`.
pub fn system_homeo_order(sys: &StoneSpaceSystem) -> u128 {
    (0..sys.n)
        .permutations(sys.n)
        .filter(|p| is_system_homeo(p, sys))
        .count() as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub weak_vertices: usize,
    pub strong_vertices: usize,
    pub checks: Vec<(String, bool)>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

fn check(checks: &mut Vec<(String, bool)>, name: &str, ok: bool) {
    checks.push((name.to_string(), ok));
}

/// Every system homeomorphism induces automorphisms of the weak and
/// strong complexes, and `𝒞_s ⊆ 𝒞(E_1) ⊆ 𝒞_w` as vertex sets.
fn common_checks(
    sys: &StoneSpaceSystem,
    checks: &mut Vec<(String, bool)>,
) -> Result<(CutGraph, Option<CutGraph>)> {
    let w = weak_complex(sys)?;
    let s = match strong_complex(sys) {
        Ok(s) => Some(s),
        Err(Error::EmptyGraph) => None,
        Err(e) => return Err(e),
    };
    let plain = nonperipheral_masks(w.frame())?;
    let weak_ok = plain.iter().all(|&m| w.index_of_mask(m).is_some());
    let strong_ok = s
        .as_ref()
        .is_none_or(|s| s.masks().iter().all(|m| plain.binary_search(m).is_ok()));
    check(checks, "strong ⊆ plain ⊆ weak", weak_ok && strong_ok);
    let homeos_act = (0..sys.n)
        .permutations(sys.n)
        .filter(|p| is_system_homeo(p, sys))
        .all(|p| {
            let on_weak = induced_map(&p, &w, &w).is_ok_and(|q| is_automorphism(w.graph(), &q));
            let on_strong = s.as_ref().is_none_or(|s| {
                induced_map(&p, s, s).is_ok_and(|q| is_automorphism(s.graph(), &q))
            });
            on_weak && on_strong
        });
    check(
        checks,
        "system homeomorphisms act on both complexes",
        homeos_act,
    );
    Ok((w, s))
}

pub fn fixture(name: &str) -> Result<StoneSpaceSystem> {
    match name {
        "weak5" => StoneSpaceSystem::new(5, vec![vec![0, 1], vec![0]]),
        "strong7" => StoneSpaceSystem::new(7, vec![vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2, 3, 4]]),
        _ => match name
            .strip_prefix("cone")
            .and_then(|n| n.parse::<usize>().ok())
        {
            Some(n) if n >= 5 => StoneSpaceSystem::new(n, vec![vec![0]]),
            _ => Err(domain(format!(
                "unknown fixture {name:?}; expected weak5, cone<n> with n ≥ 5, or strong7"
            ))),
        },
    }
}

pub fn run_fixture(name: &str) -> Result<FixtureReport> {
    let sys = fixture(name)?;
    let mut checks = Vec::new();
    let (w, s) = common_checks(&sys, &mut checks)?;
    let full = (1u128 << sys.n) - 1;
    match name {
        "weak5" => {
            let a = w.index_of_mask(0b00001).expect("{a} | rest");
            let b = w.index_of_mask(full & !0b00010).expect("{b} | rest");
            let cones = w.cone_vertices();
            check(
                &mut checks,
                "A and B are cone vertices",
                cones.contains(&a) && cones.contains(&b),
            );
            let mut phi: Vec<usize> = (0..w.vertex_count()).collect();
            phi.swap(a, b);
            check(
                &mut checks,
                "swapping A and B is an automorphism",
                is_automorphism(w.graph(), &phi),
            );
            let induced = (0..sys.n)
                .permutations(sys.n)
                .filter(|p| is_system_homeo(p, &sys))
                .any(|p| induced_map(&p, &w, &w).is_ok_and(|q| q == phi));
            check(&mut checks, "no system homeomorphism induces it", !induced);
        }
        "strong7" => {
            let s = s.as_ref().expect("strong7 has strong cuts");
            check(
                &mut checks,
                "strong complex has 40 vertices",
                s.vertex_count() == 40,
            );
            let phi = vec![0, 1, 2, 3, 4, 6, 5];
            let on_strong = induced_map(&phi, s, s).is_ok_and(|q| is_automorphism(s.graph(), &q));
            check(
                &mut checks,
                "φ induces a strong-complex automorphism",
                on_strong,
            );
            check(
                &mut checks,
                "φ is not a system homeomorphism",
                !is_system_homeo(&phi, &sys),
            );
        }
        _ => {
            let kappa = w.index_of_mask(0b1).expect("κ is weakly non-peripheral");
            check(
                &mut checks,
                "κ is the unique cone vertex",
                w.cone_vertices() == [kappa],
            );
            let aut = automorphisms(w.graph())?.order;
            let fact: u128 = (1..=sys.n as u128).product();
            check(&mut checks, "|Aut(𝒞_w)| = n!", aut == fact);
            check(
                &mut checks,
                "system homeomorphisms number (n-1)!",
                system_homeo_order(&sys) == fact / sys.n as u128,
            );
            let rest: Vec<usize> = (0..w.vertex_count()).filter(|&v| v != kappa).collect();
            let plain = CutGraph::complex(&sys.spec(), Mode::Finite)?;
            let same = rest.len() == plain.vertex_count()
                && rest
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| plain.index_of_mask(w.mask(v)) == Some(i))
                && w.graph().induced(&rest) == *plain.graph();
            check(&mut checks, "removing κ leaves 𝒞(E_1)", same);
        }
    }
    Ok(FixtureReport {
        fixture: name.to_string(),
        weak_vertices: w.vertex_count(),
        strong_vertices: s.map_or(0, |s| s.vertex_count()),
        checks,
    })
}

/// For the open question on pairs: the order of `Aut(𝒞_s)` next to the
/// order of the system homeomorphism group. Nothing is asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairExperiment {
    pub system: StoneSpaceSystem,
    pub strong_vertices: usize,
    pub strong_aut_order: Option<u128>,
    pub homeo_order: u128,
}

pub fn pair_experiment(sys: &StoneSpaceSystem) -> Result<PairExperiment> {
    if sys.length() != 2 {
        return Err(domain("pair experiments take systems of length 2"));
    }
    let (strong_vertices, strong_aut_order) = match strong_complex(sys) {
        Ok(s) => (s.vertex_count(), Some(automorphisms(s.graph())?.order)),
        Err(Error::EmptyGraph) => (0, None),
        Err(e) => return Err(e),
    };
    Ok(PairExperiment {
        system: sys.clone(),
        strong_vertices,
        strong_aut_order,
        homeo_order: system_homeo_order(sys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        for name in ["weak5", "cone5", "cone6", "strong7"] {
            let r = run_fixture(name).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(run_fixture("cone4").is_err());
        assert!(run_fixture("nope").is_err());
    }

    #[test]
    fn cone_weak_complex_adds_one_vertex() {
        let sys = fixture("cone5").unwrap();
        assert_eq!(weak_complex(&sys).unwrap().vertex_count(), 11);
        assert_eq!(system_homeo_order(&sys), 24);
    }

    #[test]
    fn system_validation() {
        assert!(StoneSpaceSystem::new(5, vec![]).is_err());
        assert!(StoneSpaceSystem::new(5, vec![vec![0, 1, 2, 3, 4]]).is_err());
        assert!(StoneSpaceSystem::new(5, vec![vec![0, 1], vec![0, 2]]).is_err());
        assert!(StoneSpaceSystem::new(5, vec![vec![7]]).is_err());
        let sys: StoneSpaceSystem =
            serde_json::from_str(r#"{"n":7,"nested":[[0,1,2,3,4,5],[0,1,2,3,4]]}"#).unwrap();
        assert_eq!(sys, fixture("strong7").unwrap());
    }

    #[test]
    fn homeo_predicate() {
        let sys = fixture("strong7").unwrap();
        assert!(is_system_homeo(&[0, 1, 2, 3, 4, 5, 6], &sys));
        assert!(is_system_homeo(&[1, 0, 2, 3, 4, 5, 6], &sys));
        assert!(!is_system_homeo(&[0, 1, 2, 3, 4, 6, 5], &sys));
    }

    #[test]
    fn pair_tooling_runs() {
        let sys = StoneSpaceSystem::new(6, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let e = pair_experiment(&sys).unwrap();
        assert_eq!(e.homeo_order, 120);
        assert!(e.strong_aut_order.is_some());
    }
}
