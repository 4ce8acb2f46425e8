use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest graph handed to the automorphism search.
pub const MAX_AUT_VERTICES: usize = 512;
/// Largest group whose elements are listed.
pub const MAX_GROUP_ELEMENTS: usize = 1 << 20;

/// A permutation of `0..n`, `p[i]` being the image of `i`.
pub type Perm = Vec<usize>;

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Whether `p` maps `g` onto `h` edge for edge.
pub fn is_isomorphism(g: &SimpleGraph, h: &SimpleGraph, p: &[usize]) -> bool {
    let n = g.vertex_count();
    n == h.vertex_count()
        && p.len() == n
        && is_permutation(p)
        && g.edge_count() == h.edge_count()
        && (0..n).all(|a| g.neighbors(a).all(|b| h.has_edge(p[a], p[b])))
}

pub fn is_automorphism(g: &SimpleGraph, p: &[usize]) -> bool {
    is_isomorphism(g, g, p)
}

/// An automorphism group as a stabilizer chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismGroup {
    pub order: u128,
    pub generators: Vec<Perm>,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

fn invariants(g: &SimpleGraph) -> Vec<u32> {
    let n = g.vertex_count();
    let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            let mut profile = Vec::new();
            for d in g.bfs(v).into_iter() {
                let d = d.map_or(0, |d| d + 1);
                if profile.len() <= d {
                    profile.resize(d + 1, 0);
                }
                profile[d] += 1;
            }
            (g.degree(v), nd, profile)
        })
        .collect();
    let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = keys.iter().collect();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(&k).unwrap() as u32)
        .collect()
}

fn count_colors(c: &[u32]) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

/// Refines two colourings side by side until stable, naming new colours
/// by a shared dictionary so that equal names mean equal signatures.
/// Fails when the colour histograms stop matching.
fn refine_pair(g: &SimpleGraph, a: &mut [u32], b: &mut [u32]) -> bool {
    let sig = |c: &[u32], v: usize| {
        let mut nb: Vec<u32> = g.neighbors(v).map(|u| c[u]).collect();
        nb.sort_unstable();
        (c[v], nb)
    };
    loop {
        let before = count_colors(a);
        let sa: Vec<_> = (0..a.len()).map(|v| sig(a, v)).collect();
        let sb: Vec<_> = (0..b.len()).map(|v| sig(b, v)).collect();
        let mut names: Vec<&(u32, Vec<u32>)> = sa.iter().chain(&sb).collect();
        names.sort();
        names.dedup();
        let name = |s: &(u32, Vec<u32>)| names.binary_search(&s).unwrap() as u32;
        for v in 0..a.len() {
            a[v] = name(&sa[v]);
            b[v] = name(&sb[v]);
        }
        let mut ha = a.to_vec();
        let mut hb = b.to_vec();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return false;
        }
        if count_colors(a) == before {
            return true;
        }
    }
}

fn individualize(c: &mut [u32], v: usize) {
    let fresh = c.iter().max().map_or(0, |m| m + 1);
    c[v] = fresh;
}

/// First vertex of the smallest-named colour class with two or more members.
fn target_cell(c: &[u32]) -> Option<u32> {
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for &x in c {
        *sizes.entry(x).or_default() += 1;
    }
    sizes
        .into_iter()
        .filter(|&(_, s)| s > 1)
        .map(|(x, _)| x)
        .min()
}

/// An automorphism carrying the colouring `a` to `b`, if there is one.
fn extend(g: &SimpleGraph, mut a: Vec<u32>, mut b: Vec<u32>) -> Option<Perm> {
    if !refine_pair(g, &mut a, &mut b) {
        return None;
    }
    match target_cell(&a) {
        None => {
            let mut at: HashMap<u32, usize> = HashMap::new();
            for (v, &x) in b.iter().enumerate() {
                at.insert(x, v);
            }
            let p: Perm = a.iter().map(|x| at[x]).collect();
            is_automorphism(g, &p).then_some(p)
        }
        Some(cell) => {
            let v = a.iter().position(|&x| x == cell).unwrap();
            let mut a2 = a.clone();
            individualize(&mut a2, v);
            (0..b.len()).filter(|&w| b[w] == cell).find_map(|w| {
                let mut b2 = b.clone();
                individualize(&mut b2, w);
                extend(g, a2.clone(), b2)
            })
        }
    }
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        y = std::mem::replace(&mut uf[y], r);
    }
    r
}

/// The exact automorphism group, by individualization and refinement.
/// Each base point's orbit under the stabilizer of the earlier base points
/// is found by searching for an automorphism per candidate image not
/// already reached by the generators found so far.
pub fn automorphisms(g: &SimpleGraph) -> Result<AutomorphismGroup> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_AUT_VERTICES {
        return Err(Error::Resource {
            what: "automorphism search vertices",
            size: n,
            limit: MAX_AUT_VERTICES,
        });
    }
    let mut colors = invariants(g);
    let mut scratch = colors.clone();
    refine_pair(g, &mut colors, &mut scratch);
    let mut generators = Vec::new();
    let mut base = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut order: u128 = 1;
    while let Some(cell) = target_cell(&colors) {
        let v = colors.iter().position(|&x| x == cell).unwrap();
        let mut uf: Vec<usize> = (0..n).collect();
        let mut level: Vec<Perm> = Vec::new();
        let mut fixed = colors.clone();
        individualize(&mut fixed, v);
        for w in 0..n {
            if colors[w] != cell || w == v || find(&mut uf, w) == find(&mut uf, v) {
                continue;
            }
            let mut image = colors.clone();
            individualize(&mut image, w);
            if let Some(p) = extend(g, fixed.clone(), image) {
                for x in 0..n {
                    let (rx, ry) = (find(&mut uf, x), find(&mut uf, p[x]));
                    uf[rx] = ry;
                }
                level.push(p);
            }
        }
        let root = find(&mut uf, v);
        let orbit = (0..n).filter(|&x| find(&mut uf, x) == root).count();
        order *= orbit as u128;
        orbit_sizes.push(orbit);
        base.push(v);
        generators.extend(level);
        let mut other = fixed.clone();
        refine_pair(g, &mut fixed, &mut other);
        colors = fixed;
    }
    Ok(AutomorphismGroup {
        order,
        generators,
        base,
        orbit_sizes,
    })
}

/// Every element of the group generated by `gens`, in breadth-first order
/// from the identity.
pub fn group_elements(gens: &[Perm], n: usize) -> Result<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = vec![identity(n)];
    seen.insert(identity(n));
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for s in gens {
            let p = compose(s, &out[i]);
            if !seen.contains(&p) {
                if out.len() >= MAX_GROUP_ELEMENTS {
                    return Err(Error::Resource {
                        what: "group elements",
                        size: out.len() + 1,
                        limit: MAX_GROUP_ELEMENTS,
                    });
                }
                seen.insert(p.clone());
                out.push(p);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::from_edges(10, &e)
    }

    #[test]
    fn small_groups() {
        assert_eq!(automorphisms(&petersen()).unwrap().order, 120);
        assert_eq!(automorphisms(&SimpleGraph::new(3)).unwrap().order, 6);
        let path = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(automorphisms(&path).unwrap().order, 2);
        let cycle = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(automorphisms(&cycle).unwrap().order, 12);
        // Two triangles and an isolated edge.
        let g =
            SimpleGraph::from_edges(8, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7)]);
        assert_eq!(automorphisms(&g).unwrap().order, 6 * 6 * 2 * 2);
    }

    #[test]
    fn generators_generate_the_group() {
        let a = automorphisms(&petersen()).unwrap();
        let all = group_elements(&a.generators, 10).unwrap();
        assert_eq!(all.len(), 120);
        assert!(all.iter().all(|p| is_automorphism(&petersen(), p)));
    }

    #[test]
    fn order_ignores_labelling() {
        let g = petersen();
        let relabel: Perm = vec![3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (relabel[a], relabel[b]))
            .collect();
        let h = SimpleGraph::from_edges(10, &edges);
        assert_eq!(automorphisms(&h).unwrap().order, 120);
    }
}
