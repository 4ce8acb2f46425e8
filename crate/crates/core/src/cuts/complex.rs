use std::collections::HashMap;
use std::sync::Arc;

use super::cut::Cut;
use crate::error::{domain, Error, Result};
use crate::graph::{Diameter, SimpleGraph, MAX_DENSE_VERTICES};
use crate::space::{Frame, Mask, SpaceSpec};

/// Most classes whose subsets are enumerated.
pub const MAX_ENUM_CLASSES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every non-peripheral cut of a finite space.
    Finite,
    /// Non-peripheral cuts whose antichains use strings of length at most `d`.
    Bounded(usize),
}

/// Frame whose class masks describe the cuts of `mode`.
pub fn frame_for(spec: &Arc<SpaceSpec>, mode: Mode) -> Result<Frame> {
    let frame = match mode {
        Mode::Finite => {
            if !spec.is_finite() {
                return Err(domain(format!("finite enumeration of infinite {spec}")));
            }
            Frame::points(spec)?
        }
        Mode::Bounded(d) => Frame::at_depth(spec, d),
    };
    frame.ensure_maskable()?;
    Ok(frame)
}

/// Whether two class masks over a frame with full mask `full` cross.
#[inline]
pub fn masks_cross(a: Mask, b: Mask, full: Mask) -> bool {
    let (na, nb) = (full & !a, full & !b);
    a & b != 0 && a & nb != 0 && na & b != 0 && na & nb != 0
}

/// The mask, or its complement, that contains class 0.
#[inline]
pub fn normalize(mask: Mask, full: Mask) -> Mask {
    if mask & 1 == 1 {
        mask
    } else {
        full & !mask
    }
}

pub fn mask_nonperipheral(frame: &Frame, mask: Mask) -> bool {
    frame.mask_at_least(mask, 2) && frame.mask_at_least(frame.full_mask() & !mask, 2)
}

/// Normalized masks of all non-peripheral cuts over `frame`, ascending.
pub fn nonperipheral_masks(frame: &Frame) -> Result<Vec<Mask>> {
    let k = frame.len();
    if k > MAX_ENUM_CLASSES {
        return Err(Error::Resource {
            what: "classes to enumerate",
            size: k,
            limit: MAX_ENUM_CLASSES,
        });
    }
    if k < 2 {
        return Ok(Vec::new());
    }
    let full = frame.full_mask();
    Ok((0..1u128 << (k - 1))
        .map(|m| m << 1 | 1)
        .filter(|&m| m != full && mask_nonperipheral(frame, m))
        .collect())
}

pub fn enumerate_cuts(spec: &Arc<SpaceSpec>, mode: Mode) -> Result<Vec<Cut>> {
    let frame = frame_for(spec, mode)?;
    nonperipheral_masks(&frame)?
        .into_iter()
        .map(|m| Cut::new(frame.clopen_of(m)))
        .collect()
}

/// A graph on cuts with an edge between distinct compatible cuts. Every
/// vertex is a class mask over one frame.
#[derive(Clone, Debug)]
pub struct CutGraph {
    frame: Frame,
    masks: Vec<Mask>,
    index: HashMap<Mask, usize>,
    graph: SimpleGraph,
}

/// An induced subgraph together with the parent vertices it came from.
#[derive(Clone, Debug)]
pub struct SubGraph {
    pub vertices: Vec<usize>,
    pub graph: SimpleGraph,
}

impl SubGraph {
    pub fn opposite(&self) -> SubGraph {
        SubGraph {
            vertices: self.vertices.clone(),
            graph: opposite_graph(&self.graph),
        }
    }
}

pub fn opposite_graph(h: &SimpleGraph) -> SimpleGraph {
    h.complement()
}

impl CutGraph {
    /// Builds the graph on the given class masks, which need not be
    /// non-peripheral.
    pub fn from_masks(frame: Frame, masks: Vec<Mask>) -> Result<CutGraph> {
        frame.ensure_maskable()?;
        if masks.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if masks.len() > MAX_DENSE_VERTICES {
            return Err(Error::Resource {
                what: "cut graph vertices",
                size: masks.len(),
                limit: MAX_DENSE_VERTICES,
            });
        }
        let full = frame.full_mask();
        let masks: Vec<Mask> = masks.into_iter().map(|m| normalize(m, full)).collect();
        let mut index = HashMap::with_capacity(masks.len());
        for (i, &m) in masks.iter().enumerate() {
            if m == full || m == 0 {
                return Err(Error::DegenerateCut);
            }
            if index.insert(m, i).is_some() {
                return Err(domain(format!("cut {} listed twice", frame.clopen_of(m))));
            }
        }
        let graph =
            SimpleGraph::from_fn(masks.len(), |i, j| !masks_cross(masks[i], masks[j], full));
        Ok(CutGraph {
            frame,
            masks,
            index,
            graph,
        })
    }

    /// The complex of all non-peripheral cuts for `mode`.
    pub fn complex(spec: &Arc<SpaceSpec>, mode: Mode) -> Result<CutGraph> {
        let frame = frame_for(spec, mode)?;
        let masks = nonperipheral_masks(&frame)?;
        CutGraph::from_masks(frame, masks)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        self.frame.spec()
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.masks.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn mask(&self, v: usize) -> Mask {
        self.masks[v]
    }

    pub fn cut(&self, v: usize) -> Cut {
        Cut::new(self.frame.clopen_of(self.masks[v])).expect("vertex masks are proper")
    }

    pub fn cuts(&self) -> Vec<Cut> {
        (0..self.vertex_count()).map(|v| self.cut(v)).collect()
    }

    pub fn index_of_mask(&self, mask: Mask) -> Option<usize> {
        self.index
            .get(&normalize(mask, self.frame.full_mask()))
            .copied()
    }

    pub fn mask_of_cut(&self, c: &Cut) -> Result<Mask> {
        if **c.spec() != **self.spec() {
            return Err(domain("cut over a different space"));
        }
        self.frame
            .mask_of(c.first())
            .ok_or_else(|| domain(format!("cut {c} is finer than the graph's frame")))
    }

    pub fn index_of(&self, c: &Cut) -> Result<usize> {
        let m = self.mask_of_cut(c)?;
        self.index_of_mask(m)
            .ok_or_else(|| domain(format!("cut {c} is not a vertex")))
    }

    pub fn diameter(&self) -> Diameter {
        self.graph.diameter().expect("cut graphs are nonempty")
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.graph.components()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(domain(format!("vertex {v} not in graph")))
        }
    }

    /// `L(v)`: the subgraph induced on the neighbours of `v`.
    pub fn link(&self, v: usize) -> Result<SubGraph> {
        self.link_intersection(&[v])
    }

    /// The subgraph induced on the vertices adjacent to every vertex of `vs`.
    pub fn link_intersection(&self, vs: &[usize]) -> Result<SubGraph> {
        for &v in vs {
            self.check_vertex(v)?;
        }
        let vertices: Vec<usize> = (0..self.vertex_count())
            .filter(|&u| vs.iter().all(|&v| self.graph.has_edge(u, v)))
            .collect();
        let graph = self.graph.induced(&vertices);
        Ok(SubGraph { vertices, graph })
    }

    /// Vertices adjacent to every other vertex.
    pub fn cone_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n).filter(|&v| self.graph.degree(v) + 1 == n).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.cuts()
            .iter()
            .map(|c| {
                c.first()
                    .words()
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(&self.labels())
    }
}
