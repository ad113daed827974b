//! Spec-file parsing. Files name vertices and generators from 1.

use std::path::Path;

use graphprod_core::product::example_spec;
use graphprod_core::{BigInt, FamilySpec, Graph, QuadraticPresentation, VertexGroup};
use serde::Deserialize;
use serde_json::Number;

use crate::CliError;

/// Largest graph accepted from a file; bounds clique enumeration.
pub const MAX_VERTICES: usize = 24;

const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    p: u32,
    #[serde(default = "default_truncation")]
    truncation: usize,
    graph: GraphSpec,
    groups: Vec<VertexDescriptor>,
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphSpec {
    vertices: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum VertexDescriptor {
    Free {
        rank: usize,
    },
    Surface {
        genus: usize,
    },
    Cyclic2,
    Poincare {
        coefficients: Vec<Number>,
        #[serde(default)]
        koszul: bool,
        /// A presentable group standing in for this vertex in the oracle.
        #[serde(default)]
        witness: Option<Box<VertexDescriptor>>,
    },
    Presentation {
        generators: usize,
        relations: Vec<Vec<(usize, usize, i64)>>,
    },
}

/// A parsed spec together with the oracle stand-ins for declared vertices.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub spec: FamilySpec,
    /// `witnesses[i]` replaces vertex `i + 1` when assembling a presentation.
    pub witnesses: Vec<Option<VertexGroup>>,
}

impl Loaded {
    pub fn example(truncation: usize) -> Self {
        let spec = example_spec(2, truncation);
        let witnesses = vec![None; spec.groups().len()];
        Self { spec, witnesses }
    }

    /// True when some vertex series is taken on trust.
    pub fn conditional(&self) -> bool {
        self.spec.has_declared_vertices()
    }

    /// The spec with every witness substituted, or the vertex that has no
    /// presentation and no witness.
    pub fn presentable(&self) -> Result<FamilySpec, CliError> {
        let groups = self
            .spec
            .groups()
            .iter()
            .zip(&self.witnesses)
            .enumerate()
            .map(|(i, (g, w))| match (g, w) {
                (_, Some(w)) => Ok(w.clone()),
                (VertexGroup::Cyclic2 | VertexGroup::ByPoincare { .. }, None) => Err(CliError::NotPresentable {
                    vertex: i + 1,
                    kind: g.kind(),
                }),
                (g, None) => Ok(g.clone()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = self.spec.clone();
        Ok(FamilySpec::new(spec.p(), spec.graph().clone(), groups, spec.truncation())?.with_cap(*spec.cap()))
    }
}

pub fn load(path: &Path, truncation: Option<usize>) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text, truncation)
}

pub fn parse(text: &str, truncation: Option<usize>) -> Result<Loaded, CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    let truncation = truncation.unwrap_or(file.truncation);
    if truncation == 0 {
        return Err(CliError::Input("truncation must be at least 1".into()));
    }
    let k = file.graph.vertices;
    if k > MAX_VERTICES {
        return Err(CliError::Input(format!("{k} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    let edges: Vec<(usize, usize)> = file.graph.edges.iter().map(|&[u, v]| (u, v)).collect();
    let graph = Graph::new(k, &edges).map_err(|e| CliError::Input(e.to_string()))?;

    let mut groups = Vec::with_capacity(file.groups.len());
    let mut witnesses = Vec::with_capacity(file.groups.len());
    for (i, d) in file.groups.into_iter().enumerate() {
        let vertex = i + 1;
        if let VertexDescriptor::Poincare { witness: Some(w), .. } = &d {
            let w = convert(w, vertex, file.p)?;
            if matches!(w, VertexGroup::Cyclic2 | VertexGroup::ByPoincare { .. }) {
                return Err(CliError::Input(format!("vertex {vertex}: witness must have a presentation")));
            }
            witnesses.push(Some(w));
        } else {
            witnesses.push(None);
        }
        groups.push(convert(&d, vertex, file.p)?);
    }
    let spec = FamilySpec::new(file.p, graph, groups, truncation)?;
    Ok(Loaded { spec, witnesses })
}

fn convert(d: &VertexDescriptor, vertex: usize, p: u32) -> Result<VertexGroup, CliError> {
    let bad = |msg: String| CliError::Input(format!("vertex {vertex}: {msg}"));
    Ok(match d {
        VertexDescriptor::Free { rank } => VertexGroup::Free { rank: *rank },
        VertexDescriptor::Surface { genus } => VertexGroup::Surface { genus: *genus },
        VertexDescriptor::Cyclic2 => VertexGroup::Cyclic2,
        VertexDescriptor::Poincare { coefficients, koszul, .. } => {
            let coefficients = coefficients
                .iter()
                .map(|n| {
                    n.to_string()
                        .parse::<BigInt>()
                        .map_err(|_| bad(format!("coefficient {n} is not an integer")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            VertexGroup::ByPoincare {
                coefficients,
                koszul: *koszul,
            }
        }
        VertexDescriptor::Presentation { generators, relations } => {
            let mut zero_based = Vec::with_capacity(relations.len());
            for rel in relations {
                let mut terms = Vec::with_capacity(rel.len());
                for &(a, b, c) in rel {
                    if a == 0 || b == 0 {
                        return Err(bad("generator indices start at 1".into()));
                    }
                    terms.push((a - 1, b - 1, c));
                }
                zero_based.push(terms);
            }
            let pres = QuadraticPresentation::new(p, *generators, &zero_based).map_err(|e| bad(e.to_string()))?;
            VertexGroup::ByPresentation(pres)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{ "p": 2, "truncation": 12,
        "graph": { "vertices": 3, "edges": [[1,2],[1,3]] },
        "groups": [
          {"type":"surface","genus":2},
          {"type":"surface","genus":2},
          {"type":"surface","genus":2} ] }"#;

    #[test]
    fn parses_documented_example() {
        let loaded = parse(EXAMPLE, None).unwrap();
        assert_eq!(loaded.spec.truncation(), 12);
        assert_eq!(loaded.spec.graph().edge_count(), 2);
        assert_eq!(loaded.spec, example_spec(2, 12));
    }

    #[test]
    fn truncation_defaults_and_overrides() {
        let text = r#"{"p":3,"graph":{"vertices":1},"groups":[{"type":"free","rank":2}]}"#;
        assert_eq!(parse(text, None).unwrap().spec.truncation(), 16);
        assert_eq!(parse(text, Some(5)).unwrap().spec.truncation(), 5);
    }

    #[test]
    fn rejects_unknown_keys() {
        let top = r#"{"p":2,"graph":{"vertices":1},"groups":[{"type":"cyclic2"}],"extra":1}"#;
        let vertex = r#"{"p":2,"graph":{"vertices":1},"groups":[{"type":"free","rank":1,"genus":2}]}"#;
        assert!(matches!(parse(top, None), Err(CliError::Input(_))));
        assert!(matches!(parse(vertex, None), Err(CliError::Input(_))));
    }

    #[test]
    fn rejects_bad_structure() {
        for text in [
            r#"{"p":4,"graph":{"vertices":1},"groups":[{"type":"free","rank":1}]}"#,
            r#"{"p":2,"graph":{"vertices":2},"groups":[{"type":"free","rank":1}]}"#,
            r#"{"p":2,"graph":{"vertices":2,"edges":[[1,1]]},"groups":[{"type":"free","rank":1},{"type":"free","rank":1}]}"#,
            r#"{"p":2,"graph":{"vertices":1},"groups":[{"type":"poincare","coefficients":[2,1]}]}"#,
            r#"{"p":2,"graph":{"vertices":1},"groups":[{"type":"presentation","generators":2,"relations":[[[0,1,1]]]}]}"#,
            r#"{"p":2,"graph":{"vertices":25},"groups":[]}"#,
        ] {
            assert!(parse(text, None).is_err(), "{text}");
        }
    }

    #[test]
    fn presentation_indices_shift_to_zero() {
        let text = r#"{"p":5,"graph":{"vertices":1},
            "groups":[{"type":"presentation","generators":2,"relations":[[[1,2,1],[2,1,-1]]]}]}"#;
        let loaded = parse(text, None).unwrap();
        let VertexGroup::ByPresentation(pres) = &loaded.spec.groups()[0] else {
            panic!("expected a presentation");
        };
        assert_eq!(pres.relations(), vec![vec![(0, 1, 1), (1, 0, 4)]]);
    }

    #[test]
    fn witness_replaces_declared_vertex() {
        let text = r#"{"p":2,"graph":{"vertices":1},"groups":[
            {"type":"poincare","coefficients":[1,3,1],"koszul":true,"witness":{"type":"surface","genus":2}}]}"#;
        let loaded = parse(text, None).unwrap();
        assert!(loaded.conditional());
        assert_eq!(loaded.presentable().unwrap().groups(), &[VertexGroup::Surface { genus: 2 }]);
    }
}
