//! JSON input and output.
//!
//! One file format, two modes. Decorated mode carries the full decoration
//! data (four ℂ²-vectors per tetrahedron, complex numbers as `[re, im]`
//! pairs, an optional cusp tag per vertex):
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "mode": "decorated",
//!   "tetrahedra": [
//!     { "sign": 1,
//!       "vertices": [
//!         { "decoration": [[1.0, 0.0], [0.0, 0.0]], "cusp": "c0" },
//!         { "decoration": [[0.0, 0.0], [1.0, 0.0]] },
//!         { "decoration": [[1.0, 0.0], [1.0, 0.0]] },
//!         { "decoration": [[1.0, 0.0], [2.0, 0.0]] }
//!       ] }
//!   ]
//! }
//! ```
//!
//! Shapes mode skips decorations and lists flattened shape parameters
//! [z; p, q] directly:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "mode": "shapes",
//!   "tetrahedra": [
//!     { "sign": 1, "z": [0.5, 0.8660254037844386], "p": -1, "q": 1 }
//!   ]
//! }
//! ```
//!
//! Parsing reports line/column positions from the JSON reader and names the
//! offending tetrahedron for semantic errors (bad sign, degenerate
//! decorations, z at 0 or 1).

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{DecoratedChain, DecoratedTerm, ShapeChain, ShapeTerm};
use crate::spaces::PointP;

type C = Complex64;

/// The version this tool reads and writes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum InputFile {
    Decorated {
        format_version: u32,
        tetrahedra: Vec<DecoratedTetIn>,
    },
    Shapes {
        format_version: u32,
        tetrahedra: Vec<ShapeTetIn>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoratedTetIn {
    pub sign: i64,
    pub vertices: Vec<DecoratedVertexIn>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoratedVertexIn {
    /// The two coordinates of the decoration vector, each as [re, im].
    pub decoration: [[f64; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusp: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeTetIn {
    pub sign: i64,
    pub z: [f64; 2],
    pub p: i64,
    pub q: i64,
}

/// A parsed input: either a decorated chain or a bare shape chain.
#[derive(Clone, Debug)]
pub enum Input {
    Decorated(DecoratedChain),
    Shapes(ShapeChain),
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format_version {v}; this tool reads version {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

fn cx(pair: [f64; 2]) -> C {
    C::new(pair[0], pair[1])
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

fn decorated_chain(tetrahedra: &[DecoratedTetIn]) -> Result<DecoratedChain> {
    let mut terms = Vec::with_capacity(tetrahedra.len());
    for (index, tet) in tetrahedra.iter().enumerate() {
        if tet.vertices.len() != 4 {
            return Err(Error::Parse(format!(
                "tetrahedron {index}: expected 4 vertices, got {}",
                tet.vertices.len()
            )));
        }
        let mut simplex = Vec::with_capacity(4);
        let mut cusps: [Option<String>; 4] = [None, None, None, None];
        for (k, vertex) in tet.vertices.iter().enumerate() {
            let v = PointP::new(cx(vertex.decoration[0]), cx(vertex.decoration[1]))
                .map_err(|e| {
                    Error::Parse(format!("tetrahedron {index}, vertex {k}: {e}"))
                })?;
            simplex.push(v);
            cusps[k] = vertex.cusp.clone();
        }
        terms.push(DecoratedTerm {
            sign: tet.sign,
            simplex: [simplex[0], simplex[1], simplex[2], simplex[3]],
            cusps,
        });
    }
    DecoratedChain::new(terms)
}

fn shape_chain(tetrahedra: &[ShapeTetIn]) -> Result<ShapeChain> {
    ShapeChain::new(
        tetrahedra
            .iter()
            .map(|t| ShapeTerm {
                sign: t.sign,
                z: cx(t.z),
                p: t.p,
                q: t.q,
            })
            .collect(),
    )
}

/// Parses an input document from text. JSON-level errors carry the reader's
/// line and column; semantic errors name the tetrahedron.
pub fn parse_input_str(text: &str) -> Result<Input> {
    let file: InputFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match &file {
        InputFile::Decorated {
            format_version,
            tetrahedra,
        } => {
            check_version(*format_version)?;
            Ok(Input::Decorated(decorated_chain(tetrahedra)?))
        }
        InputFile::Shapes {
            format_version,
            tetrahedra,
        } => {
            check_version(*format_version)?;
            Ok(Input::Shapes(shape_chain(tetrahedra)?))
        }
    }
}

/// Parses an input document from a file.
pub fn parse_input_path(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_input_str(&text)
}

/// Serializes a decorated chain back into the file schema.
pub fn decorated_file(chain: &DecoratedChain) -> InputFile {
    InputFile::Decorated {
        format_version: FORMAT_VERSION,
        tetrahedra: chain
            .terms()
            .iter()
            .map(|t| DecoratedTetIn {
                sign: t.sign,
                vertices: (0..4)
                    .map(|k| DecoratedVertexIn {
                        decoration: [pair(t.simplex[k].x()), pair(t.simplex[k].y())],
                        cusp: t.cusps[k].clone(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Serializes a shape chain back into the file schema.
pub fn shapes_file(chain: &ShapeChain) -> InputFile {
    InputFile::Shapes {
        format_version: FORMAT_VERSION,
        tetrahedra: chain
            .terms()
            .iter()
            .map(|t| ShapeTetIn {
                sign: t.sign,
                z: pair(t.z),
                p: t.p,
                q: t.q,
            })
            .collect(),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(file: &InputFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("schema types serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_decorated_file() {
        let text = r#"{
            "format_version": 1,
            "mode": "decorated",
            "tetrahedra": [
                { "sign": 1,
                  "vertices": [
                    { "decoration": [[1.0, 0.0], [0.0, 0.0]], "cusp": "c0" },
                    { "decoration": [[0.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[1.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[1.0, 0.0], [2.0, 0.0]] }
                  ] }
            ]
        }"#;
        let input = parse_input_str(text).unwrap();
        match input {
            Input::Decorated(chain) => {
                assert_eq!(chain.len(), 1);
                assert_eq!(chain.terms()[0].cusps[0].as_deref(), Some("c0"));
                assert_eq!(chain.terms()[0].cusps[1], None);
            }
            Input::Shapes(_) => panic!("wrong mode"),
        }
    }

    #[test]
    fn parses_a_shapes_file() {
        let text = r#"{
            "format_version": 1,
            "mode": "shapes",
            "tetrahedra": [
                { "sign": 1, "z": [0.5, 0.8660254037844386], "p": -1, "q": 1 },
                { "sign": -1, "z": [0.5, -0.8660254037844386], "p": 1, "q": -1 }
            ]
        }"#;
        match parse_input_str(text).unwrap() {
            Input::Shapes(chain) => assert_eq!(chain.len(), 2),
            Input::Decorated(_) => panic!("wrong mode"),
        }
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = parse_input_str("{ \"format_version\": 1,\n  \"mode\": ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = r#"{ "format_version": 2, "mode": "shapes", "tetrahedra": [] }"#;
        let err = parse_input_str(text).unwrap_err();
        assert!(err.to_string().contains("format_version 2"), "{err}");
    }

    #[test]
    fn semantic_errors_name_the_tetrahedron() {
        let text = r#"{
            "format_version": 1,
            "mode": "decorated",
            "tetrahedra": [
                { "sign": 1,
                  "vertices": [
                    { "decoration": [[1.0, 0.0], [0.0, 0.0]] },
                    { "decoration": [[0.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[1.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[2.0, 0.0], [2.0, 0.0]] }
                  ] }
            ]
        }"#;
        let err = parse_input_str(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("tetrahedron 0"), "{msg}");

        let zero = r#"{
            "format_version": 1,
            "mode": "decorated",
            "tetrahedra": [
                { "sign": 1,
                  "vertices": [
                    { "decoration": [[0.0, 0.0], [0.0, 0.0]] },
                    { "decoration": [[0.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[1.0, 0.0], [1.0, 0.0]] },
                    { "decoration": [[1.0, 0.0], [2.0, 0.0]] }
                  ] }
            ]
        }"#;
        let err = parse_input_str(zero).unwrap_err();
        assert!(err.to_string().contains("vertex 0"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{
            "format_version": 1,
            "mode": "shapes",
            "tetrahedra": [ { "sign": 1, "z": [0.5, 0.5], "p": 0, "q": 0, "r": 3 } ]
        }"#;
        assert!(parse_input_str(text).is_err());
    }

    #[test]
    fn decorated_roundtrip_preserves_everything() {
        let chain = crate::figure_eight::figure_eight_chain(C::new(1.25, -0.5)).unwrap();
        let text = render_json(&decorated_file(&chain));
        match parse_input_str(&text).unwrap() {
            Input::Decorated(back) => {
                assert_eq!(back.len(), chain.len());
                for (a, b) in back.terms().iter().zip(chain.terms()) {
                    assert_eq!(a.sign, b.sign);
                    assert_eq!(a.cusps, b.cusps);
                    for (p, q) in a.simplex.iter().zip(&b.simplex) {
                        assert!(
                            p.dist(q) == 0.0,
                            "parsed {:?}/{:?} vs original {:?}/{:?}",
                            p.x(),
                            p.y(),
                            q.x(),
                            q.y()
                        );
                    }
                }
            }
            Input::Shapes(_) => panic!("wrong mode"),
        }
    }

    #[test]
    fn shapes_roundtrip_preserves_everything() {
        let shapes = crate::figure_eight::figure_eight_shapes().unwrap();
        let text = render_json(&shapes_file(&shapes));
        match parse_input_str(&text).unwrap() {
            Input::Shapes(back) => {
                assert_eq!(back.len(), shapes.len());
                for (a, b) in back.terms().iter().zip(shapes.terms()) {
                    assert_eq!((a.sign, a.p, a.q), (b.sign, b.p, b.q));
                    assert_eq!(a.z, b.z);
                }
            }
            Input::Decorated(_) => panic!("wrong mode"),
        }
    }
}
