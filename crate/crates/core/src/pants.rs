//! Pants decompositions and the adjacency graphs used to tell outermost
//! cuts apart.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cuts::{frame_for, masks_cross, nonperipheral_masks, Cut, CutGraph, Mode};
use crate::error::{domain, Error, Result};
use crate::graph::SimpleGraph;
use crate::space::{ClopenSet, CountClass, Frame, Mask, SpaceSpec, Word};

/// Pairwise compatible, distinct non-peripheral cuts over one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PantsDecomposition {
    spec: Arc<SpaceSpec>,
    cuts: Vec<Cut>,
    /// For standard Cantor decompositions, the strings `s` whose cylinder
    /// cut `γ_s` gave each member.
    provenance: Option<Vec<Vec<Word>>>,
}

impl PantsDecomposition {
    /// Checks pairwise compatibility and distinctness.
    pub fn new(spec: &Arc<SpaceSpec>, cuts: Vec<Cut>) -> Result<PantsDecomposition> {
        for (i, a) in cuts.iter().enumerate() {
            if **a.spec() != **spec {
                return Err(domain("member over a different space"));
            }
            a.require_nonperipheral()?;
            for b in &cuts[i + 1..] {
                if a == b {
                    return Err(Error::Construction(format!("cut {a} listed twice")));
                }
                if a.crosses(b)? {
                    return Err(Error::Construction(format!("members {a} and {b} cross")));
                }
            }
        }
        Ok(PantsDecomposition {
            spec: spec.clone(),
            cuts,
            provenance: None,
        })
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn provenance(&self) -> Option<&[Vec<Word>]> {
        self.provenance.as_deref()
    }

    pub fn depth(&self) -> usize {
        self.cuts.iter().map(Cut::depth).max().unwrap_or(0)
    }
}

/// The cuts `γ_s = [s] | complement` of Cantor space for `1 ≤ |s| ≤ d`,
/// with `γ_0 = γ_1` listed once.
pub fn standard_cantor_pants(d: usize) -> Result<PantsDecomposition> {
    if d == 0 {
        return Err(domain("standard pants need depth at least 1"));
    }
    let cantor = Arc::new(SpaceSpec::Cantor);
    let mut cuts: Vec<Cut> = Vec::new();
    let mut prov: Vec<Vec<Word>> = Vec::new();
    for len in 1..=d {
        for s in Word::all_of_len(len) {
            let c = Cut::from_words(&cantor, &[s])?;
            match cuts.iter().position(|x| *x == c) {
                Some(i) => prov[i].push(s),
                None => {
                    cuts.push(c);
                    prov.push(vec![s]);
                }
            }
        }
    }
    Ok(PantsDecomposition {
        spec: cantor,
        cuts,
        provenance: Some(prov),
    })
}

/// Restricts each member to the closed subset `spec`, keeping the
/// non-peripheral results once each.
pub fn restrict_pants(
    spec: &Arc<SpaceSpec>,
    pants: &PantsDecomposition,
) -> Result<PantsDecomposition> {
    let mut cuts: Vec<Cut> = Vec::new();
    let mut prov: Vec<Vec<Word>> = Vec::new();
    for (i, c) in pants.cuts.iter().enumerate() {
        let side = ClopenSet::canonicalize(spec, c.first().words());
        let Ok(r) = Cut::new(side) else { continue };
        if !r.is_nonperipheral() {
            continue;
        }
        let origin = pants
            .provenance
            .as_ref()
            .map(|p| p[i].clone())
            .unwrap_or_default();
        match cuts.iter().position(|x| *x == r) {
            Some(j) => prov[j].extend(origin),
            None => {
                cuts.push(r);
                prov.push(origin);
            }
        }
    }
    Ok(PantsDecomposition {
        spec: spec.clone(),
        cuts,
        provenance: pants.provenance.as_ref().map(|_| prov),
    })
}

/// Indices of the members crossing `cut`.
pub fn crossing_set(cut: &Cut, pants: &PantsDecomposition) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, m) in pants.cuts.iter().enumerate() {
        if m.crosses(cut)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Certificate of [`verify_pants_bounded`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PantsReport {
    pub members: usize,
    pub member_depth: usize,
    pub pairwise_compatible: bool,
    pub probe_depth: usize,
    pub probes_checked: usize,
    pub probes_in_pants: usize,
    /// Probes outside the decomposition crossing no member.
    pub uncrossed: Vec<Cut>,
    pub max_crossing: usize,
}

impl PantsReport {
    pub fn holds(&self) -> bool {
        self.pairwise_compatible && self.uncrossed.is_empty()
    }
}

fn members_as_masks(frame: &Frame, pants: &PantsDecomposition) -> Result<Vec<Mask>> {
    pants
        .cuts
        .iter()
        .map(|c| {
            frame
                .mask_of(c.first())
                .ok_or_else(|| domain(format!("member {c} is finer than the frame")))
        })
        .collect()
}

/// Checks pairwise compatibility of the members and, for every
/// non-peripheral probe cut of depth at most `probe_depth` not in the
/// decomposition, that some member crosses it. Records the largest
/// crossing set seen.
pub fn verify_pants_bounded(pants: &PantsDecomposition, probe_depth: usize) -> Result<PantsReport> {
    let spec = pants.spec();
    let member_depth = pants.depth();
    let mut pairwise_compatible = true;
    for (i, a) in pants.cuts.iter().enumerate() {
        for b in &pants.cuts[i + 1..] {
            if a.crosses(b)? {
                pairwise_compatible = false;
            }
        }
    }
    let (coarse, fine) = if spec.is_finite() {
        let f = frame_for(spec, Mode::Finite)?;
        (f.clone(), f)
    } else {
        (
            Frame::at_depth(spec, probe_depth),
            Frame::at_depth(spec, probe_depth.max(member_depth)),
        )
    };
    fine.ensure_maskable()?;
    let lift = fine.refinement_map(&coarse)?;
    let members = members_as_masks(&fine, pants)?;
    let full = fine.full_mask();
    let probes = nonperipheral_masks(&coarse)?;
    let results: Vec<(bool, usize, Mask)> = probes
        .par_iter()
        .map(|&p| {
            let m = Frame::lift_mask(&lift, p);
            let member = members.iter().any(|&x| x == m || x == full & !m);
            let crossing = members.iter().filter(|&&x| masks_cross(x, m, full)).count();
            (member, crossing, m)
        })
        .collect();
    let mut report = PantsReport {
        members: pants.len(),
        member_depth,
        pairwise_compatible,
        probe_depth,
        probes_checked: results.len(),
        probes_in_pants: 0,
        uncrossed: Vec::new(),
        max_crossing: 0,
    };
    for (member, crossing, m) in results {
        report.max_crossing = report.max_crossing.max(crossing);
        if member {
            report.probes_in_pants += 1;
        } else if crossing == 0 {
            report.uncrossed.push(Cut::new(fine.clopen_of(m))?);
        }
    }
    Ok(report)
}

/// Answer of an adjacency query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// A non-peripheral cut crossing exactly the two members.
    Adjacent(Cut),
    NotAdjacent,
    /// No witness among cuts of the given depth.
    UnknownAtDepth(usize),
}

impl Adjacency {
    pub fn is_adjacent(&self) -> bool {
        matches!(self, Adjacency::Adjacent(_))
    }
}

/// Whether members `i` and `j` are adjacent: some cut crosses both and no
/// other member. Exact for finite spaces; a bounded witness search
/// otherwise.
pub fn adjacent(
    pants: &PantsDecomposition,
    i: usize,
    j: usize,
    search_depth: usize,
) -> Result<Adjacency> {
    if i == j {
        return Err(domain("adjacency of a member with itself"));
    }
    if i >= pants.len() || j >= pants.len() {
        return Err(domain("member index out of range"));
    }
    let spec = pants.spec();
    let (coarse, fine) = if spec.is_finite() {
        let f = frame_for(spec, Mode::Finite)?;
        (f.clone(), f)
    } else {
        (
            Frame::at_depth(spec, search_depth),
            Frame::at_depth(spec, search_depth.max(pants.depth())),
        )
    };
    fine.ensure_maskable()?;
    let lift = fine.refinement_map(&coarse)?;
    let members = members_as_masks(&fine, pants)?;
    let full = fine.full_mask();
    let witness = nonperipheral_masks(&coarse)?.into_iter().find_map(|p| {
        let m = Frame::lift_mask(&lift, p);
        let hits: Vec<usize> = (0..members.len())
            .filter(|&k| masks_cross(members[k], m, full))
            .collect();
        (hits == [i.min(j), i.max(j)]).then_some(m)
    });
    Ok(match witness {
        Some(m) => Adjacency::Adjacent(Cut::new(fine.clopen_of(m))?),
        None if spec.is_finite() => Adjacency::NotAdjacent,
        None => Adjacency::UnknownAtDepth(search_depth),
    })
}

/// `A(Γ)` for a pairwise compatible family in a finite space, given as
/// masks over the point frame.
pub fn adjacency_graph_masks(frame: &Frame, all: &[Mask], members: &[Mask]) -> SimpleGraph {
    let full = frame.full_mask();
    let mut g = SimpleGraph::new(members.len());
    for &w in all {
        let mut first = None;
        let mut second = None;
        let mut count = 0;
        for (k, &m) in members.iter().enumerate() {
            if masks_cross(m, w, full) {
                count += 1;
                if count == 1 {
                    first = Some(k);
                } else if count == 2 {
                    second = Some(k);
                } else {
                    break;
                }
            }
        }
        if count == 2 {
            let (a, b) = (first.unwrap(), second.unwrap());
            if !g.has_edge(a, b) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// `A(Γ)` over a finite space.
pub fn adjacency_graph(pants: &PantsDecomposition) -> Result<SimpleGraph> {
    let frame = frame_for(pants.spec(), Mode::Finite)?;
    let all = nonperipheral_masks(&frame)?;
    let members = members_as_masks(&frame, pants)?;
    Ok(adjacency_graph_masks(&frame, &all, &members))
}

/// Finite-space complex together with all its maximal simplices.
pub struct FinitePants {
    pub graph: CutGraph,
    /// Vertex indices of each decomposition, sorted.
    pub decompositions: Vec<Vec<usize>>,
}

impl FinitePants {
    pub fn new(n: usize) -> Result<FinitePants> {
        if !(5..=8).contains(&n) {
            return Err(Error::Unsupported(format!(
                "pants enumeration needs 5 <= n <= 8, got {n}"
            )));
        }
        let spec = Arc::new(SpaceSpec::finite(n)?);
        let graph = CutGraph::complex(&spec, Mode::Finite)?;
        let decompositions = graph.graph().maximal_cliques();
        Ok(FinitePants {
            graph,
            decompositions,
        })
    }

    pub fn decomposition(&self, i: usize) -> PantsDecomposition {
        let cuts = self.decompositions[i]
            .iter()
            .map(|&v| self.graph.cut(v))
            .collect();
        PantsDecomposition {
            spec: self.graph.spec().clone(),
            cuts,
            provenance: None,
        }
    }

    /// `A(Γ)` of decomposition `i`, vertex `k` standing for its `k`-th cut.
    pub fn adjacency(&self, i: usize) -> SimpleGraph {
        let members: Vec<Mask> = self.decompositions[i]
            .iter()
            .map(|&v| self.graph.mask(v))
            .collect();
        adjacency_graph_masks(self.graph.frame(), self.graph.masks(), &members)
    }

    fn is_outermost(&self, v: usize) -> bool {
        let m = self.graph.mask(v);
        let f = self.graph.frame();
        f.mask_count(m) == CountClass::Exactly(2)
            || f.mask_count(f.full_mask() & !m) == CountClass::Exactly(2)
    }
}

pub fn enumerate_pants_finite(n: usize) -> Result<Vec<PantsDecomposition>> {
    let fp = FinitePants::new(n)?;
    Ok((0..fp.decompositions.len())
        .map(|i| fp.decomposition(i))
        .collect())
}

/// Report of [`valence_criterion_check`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValenceReport {
    pub n: usize,
    pub decompositions: usize,
    /// Decompositions whose size differs from `n - 3`.
    pub wrong_size: usize,
    /// Whether every cut is outermost exactly when its valence is at most
    /// two in every decomposition containing it.
    pub biconditional: bool,
    /// Largest valence of any vertex of any `A(Γ)`.
    pub max_valence: usize,
    pub max_valence_outermost: usize,
    /// For each non-outermost cut take its largest valence over all
    /// decompositions; this is the least of those.
    pub least_max_valence_non_outermost: usize,
}

pub fn valence_criterion_check(n: usize) -> Result<ValenceReport> {
    let fp = FinitePants::new(n)?;
    let nv = fp.graph.vertex_count();
    let per: Vec<Vec<(usize, usize)>> = (0..fp.decompositions.len())
        .into_par_iter()
        .map(|i| {
            let a = fp.adjacency(i);
            fp.decompositions[i]
                .iter()
                .enumerate()
                .map(|(k, &v)| (v, a.degree(k)))
                .collect()
        })
        .collect();
    let mut max_by_cut = vec![0usize; nv];
    let mut wrong_size = 0;
    for (i, d) in per.iter().enumerate() {
        if fp.decompositions[i].len() != n - 3 {
            wrong_size += 1;
        }
        for &(v, val) in d {
            max_by_cut[v] = max_by_cut[v].max(val);
        }
    }
    let outer: Vec<bool> = (0..nv).map(|v| fp.is_outermost(v)).collect();
    let biconditional = (0..nv).all(|v| outer[v] == (max_by_cut[v] <= 2));
    Ok(ValenceReport {
        n,
        decompositions: fp.decompositions.len(),
        wrong_size,
        biconditional,
        max_valence: max_by_cut.iter().copied().max().unwrap_or(0),
        max_valence_outermost: (0..nv)
            .filter(|&v| outer[v])
            .map(|v| max_by_cut[v])
            .max()
            .unwrap_or(0),
        least_max_valence_non_outermost: (0..nv)
            .filter(|&v| !outer[v])
            .map(|v| max_by_cut[v])
            .min()
            .unwrap_or(0),
    })
}

pub fn is_outermost(c: &Cut) -> bool {
    c.is_outermost()
}

/// Compatible distinct cuts with a singleton pairwise intersection of sides.
pub fn is_peripheral_pair(a: &Cut, b: &Cut) -> Result<bool> {
    if a == b {
        return Err(domain("a cut does not pair with itself"));
    }
    if a.crosses(b)? {
        return Err(domain(format!("cuts {a} and {b} cross")));
    }
    Ok(a.quadrants(b)?
        .iter()
        .any(|q| q.count() == CountClass::Exactly(1)))
}

/// Number of components of `(L(γ) ∩ L(η))^⊥`.
pub fn peripheral_pair_via_links(g: &CutGraph, a: &Cut, b: &Cut) -> Result<usize> {
    if a.crosses(b)? || a == b {
        return Err(domain("peripheral pairs are compatible and distinct"));
    }
    let (ia, ib) = (g.index_of(a)?, g.index_of(b)?);
    Ok(g.link_intersection(&[ia, ib])?
        .opposite()
        .graph
        .components()
        .len())
}

pub(crate) fn mask_peripheral_pair(frame: &Frame, a: Mask, b: Mask) -> bool {
    let full = frame.full_mask();
    let (na, nb) = (full & !a, full & !b);
    [a & b, a & nb, na & b, na & nb]
        .iter()
        .any(|&q| frame.mask_count(q) == CountClass::Exactly(1))
}

/// Report of [`peripheral_pair_check`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PeripheralPairReport {
    pub n: usize,
    pub pairs: usize,
    pub peripheral: usize,
    pub violations: usize,
}

/// Over all compatible distinct pairs of non-outermost cuts of `Finite(n)`:
/// two components of `(L(γ) ∩ L(η))^⊥` exactly for peripheral pairs.
pub fn peripheral_pair_check(n: usize) -> Result<PeripheralPairReport> {
    let spec = Arc::new(SpaceSpec::finite(n)?);
    let g = CutGraph::complex(&spec, Mode::Finite)?;
    let f = g.frame();
    let nv = g.vertex_count();
    let outer = |v: usize| {
        let m = g.mask(v);
        f.mask_count(m) == CountClass::Exactly(2)
            || f.mask_count(f.full_mask() & !m) == CountClass::Exactly(2)
    };
    let rows: Vec<(usize, usize, usize)> = (0..nv)
        .into_par_iter()
        .filter(|&a| !outer(a))
        .map(|a| {
            let (mut pairs, mut per, mut bad) = (0, 0, 0);
            for b in a + 1..nv {
                if outer(b) || !g.graph().has_edge(a, b) {
                    continue;
                }
                pairs += 1;
                let pp = mask_peripheral_pair(f, g.mask(a), g.mask(b));
                per += pp as usize;
                let comps = g
                    .link_intersection(&[a, b])
                    .expect("vertices exist")
                    .opposite()
                    .graph
                    .components()
                    .len();
                if (comps == 2) != pp {
                    bad += 1;
                }
            }
            (pairs, per, bad)
        })
        .collect();
    Ok(PeripheralPairReport {
        n,
        pairs: rows.iter().map(|r| r.0).sum(),
        peripheral: rows.iter().map(|r| r.1).sum(),
        violations: rows.iter().map(|r| r.2).sum(),
    })
}

/// Report of [`valence_one_check`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValenceOneReport {
    pub n: usize,
    /// Qualifying `(Γ, γ)`: `γ ∈ Γ` outermost and peripheral with some
    /// other member.
    pub cases: usize,
    pub violations: usize,
    /// Outermost members with no peripheral partner that have valence 2.
    pub unpaired_valence_two: usize,
}

pub fn valence_one_check(n: usize) -> Result<ValenceOneReport> {
    if !(7..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "valence-one check needs 7 <= n <= 8, got {n}"
        )));
    }
    let fp = FinitePants::new(n)?;
    let f = fp.graph.frame();
    let rows: Vec<(usize, usize, usize)> = (0..fp.decompositions.len())
        .into_par_iter()
        .map(|i| {
            let a = fp.adjacency(i);
            let members = &fp.decompositions[i];
            let (mut cases, mut bad, mut unpaired) = (0, 0, 0);
            for (k, &v) in members.iter().enumerate() {
                if !fp.is_outermost(v) {
                    continue;
                }
                let paired = members.iter().any(|&u| {
                    u != v && mask_peripheral_pair(f, fp.graph.mask(v), fp.graph.mask(u))
                });
                if paired {
                    cases += 1;
                    if a.degree(k) != 1 {
                        bad += 1;
                    }
                } else if a.degree(k) == 2 {
                    unpaired += 1;
                }
            }
            (cases, bad, unpaired)
        })
        .collect();
    Ok(ValenceOneReport {
        n,
        cases: rows.iter().map(|r| r.0).sum(),
        violations: rows.iter().map(|r| r.1).sum(),
        unpaired_valence_two: rows.iter().map(|r| r.2).sum(),
    })
}
