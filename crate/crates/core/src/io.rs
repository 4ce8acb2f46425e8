//! JSON descriptors and graph export.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteBooleanAlgebra, Homomorphism};
use crate::cuts::CutGraph;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::space::{SpaceSpec, Word};

/// The JSON form of a [`SpaceSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceDescriptor {
    Finite {
        n: usize,
    },
    Cantor {},
    Convergent {},
    Union {
        left: Box<SpaceDescriptor>,
        right: Box<SpaceDescriptor>,
    },
    Subspace {
        base: Box<SpaceDescriptor>,
        window: Vec<Word>,
    },
}

impl SpaceDescriptor {
    pub fn to_spec(&self) -> Result<SpaceSpec> {
        Ok(match self {
            SpaceDescriptor::Finite { n } => SpaceSpec::finite(*n)?,
            SpaceDescriptor::Cantor {} => SpaceSpec::Cantor,
            SpaceDescriptor::Convergent {} => SpaceSpec::Convergent,
            SpaceDescriptor::Union { left, right } => {
                SpaceSpec::union(left.to_spec()?, right.to_spec()?)
            }
            SpaceDescriptor::Subspace { base, window } => {
                SpaceSpec::subspace(base.to_spec()?, window)?
            }
        })
    }

    pub fn from_spec(spec: &SpaceSpec) -> SpaceDescriptor {
        match spec {
            SpaceSpec::Finite(n) => SpaceDescriptor::Finite { n: *n },
            SpaceSpec::Cantor => SpaceDescriptor::Cantor {},
            SpaceSpec::Convergent => SpaceDescriptor::Convergent {},
            SpaceSpec::Union(l, r) => SpaceDescriptor::Union {
                left: Box::new(Self::from_spec(l)),
                right: Box::new(Self::from_spec(r)),
            },
            SpaceSpec::Subspace(b, w) => SpaceDescriptor::Subspace {
                base: Box::new(Self::from_spec(b)),
                window: w.clone(),
            },
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Wrapped {
    space: SpaceDescriptor,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a space descriptor, bare or wrapped as `{"space": …}`.
pub fn parse_space(json: &str) -> Result<Arc<SpaceSpec>> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(parse_err)?;
    let desc = if value.get("space").is_some() {
        serde_json::from_value::<Wrapped>(value)
            .map_err(parse_err)?
            .space
    } else {
        serde_json::from_value::<SpaceDescriptor>(value).map_err(parse_err)?
    };
    Ok(Arc::new(desc.to_spec()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub atoms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismDescriptor {
    pub atom_map: Vec<usize>,
}

pub fn parse_algebra(json: &str) -> Result<FiniteBooleanAlgebra> {
    let d: AlgebraDescriptor = serde_json::from_str(json).map_err(parse_err)?;
    FiniteBooleanAlgebra::new(d.atoms)
}

pub fn parse_homomorphism(
    json: &str,
    source: &FiniteBooleanAlgebra,
    target: &FiniteBooleanAlgebra,
) -> Result<Homomorphism> {
    let d: HomomorphismDescriptor = serde_json::from_str(json).map_err(parse_err)?;
    Homomorphism::new(source, target, d.atom_map)
}

/// `{"vertices": [labels], "edges": [[i, j], …]}` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_cut_graph(g: &CutGraph) -> GraphJson {
        Self::from_graph(g.graph(), g.labels())
    }

    pub fn from_graph(g: &SimpleGraph, vertices: Vec<String>) -> GraphJson {
        GraphJson {
            vertices,
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let n = self.vertices.len();
        let mut g = SimpleGraph::new(n);
        for &[a, b] in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Parse(format!(
                    "bad edge [{a}, {b}] for {n} vertices"
                )));
            }
            if !g.has_edge(a, b) {
                g.add_edge(a, b);
            }
        }
        Ok(g)
    }
}

pub fn parse_graph(json: &str) -> Result<SimpleGraph> {
    serde_json::from_str::<GraphJson>(json)
        .map_err(parse_err)?
        .to_graph()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn render_graph(g: &CutGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&GraphJson::from_cut_graph(g)).expect("graph JSON");
            s.push('\n');
            s
        }
    }
}

/// Writes the graph; the bytes depend only on the graph.
pub fn export_graph(g: &CutGraph, format: GraphFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_graph(g, format))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::Mode;

    #[test]
    fn space_descriptors_round_trip() {
        for json in [
            r#"{"type":"finite","n":5}"#,
            r#"{"space":{"type":"cantor"}}"#,
            r#"{"type":"union","left":{"type":"convergent"},"right":{"type":"finite","n":3}}"#,
            r#"{"type":"subspace","base":{"type":"cantor"},"window":["0","10"]}"#,
        ] {
            let spec = parse_space(json).unwrap();
            let back = SpaceDescriptor::from_spec(&spec).to_spec().unwrap();
            assert_eq!(*spec, back);
        }
        assert!(matches!(
            parse_space(r#"{"type":"finite","n":0}"#),
            Err(Error::Construction(_))
        ));
        assert!(matches!(
            parse_space(r#"{"type":"torus"}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_space(r#"{"type":"cantor","n":2}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn petersen_exports_agree() {
        let g = CutGraph::complex(&Arc::new(SpaceSpec::Finite(5)), Mode::Finite).unwrap();
        let dot = render_graph(&g, GraphFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 15);
        let json = render_graph(&g, GraphFormat::Json);
        let parsed: GraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!((parsed.vertices.len(), parsed.edges.len()), (10, 15));
        assert_eq!(parse_graph(&json).unwrap(), *g.graph());
        assert_eq!(render_graph(&g, GraphFormat::Json), json);
    }

    #[test]
    fn algebra_descriptors() {
        let a = parse_algebra(r#"{"atoms":3}"#).unwrap();
        let b = parse_algebra(r#"{"atoms":2}"#).unwrap();
        let h = parse_homomorphism(r#"{"atom_map":[2,0]}"#, &a, &b).unwrap();
        assert_eq!(h.atom_map(), &[2, 0]);
        assert!(parse_homomorphism(r#"{"atom_map":[3,0]}"#, &a, &b).is_err());
    }

    #[test]
    fn unwritable_path_fails() {
        let g = CutGraph::complex(&Arc::new(SpaceSpec::Finite(5)), Mode::Finite).unwrap();
        let e = export_graph(&g, GraphFormat::Dot, Path::new("/nonexistent/dir/g.dot"));
        assert!(matches!(e, Err(Error::Io(_))));
    }
}
