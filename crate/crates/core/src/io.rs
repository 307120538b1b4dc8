//! JSON file formats. Rationals are strings such as `"-3/5"` or `"2"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{Chain, PolytopeChain};
use crate::complex::{AbstractComplex, DeletedProduct};
use crate::geom::{GeomSimplex, Point, Polytope};
use crate::link::BorromeanConfig;
use crate::plmap::PLMap;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },
}

fn invalid(what: &'static str, e: impl ToString) -> IoError {
    IoError::Invalid { what, message: e.to_string() }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub dim: usize,
    pub ambient: usize,
    pub simplices: Vec<Vec<Point>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marks: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PLMapFile {
    pub domain: ComplexFile,
    pub images: Vec<Point>,
    pub target_dim: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BorromeanFile {
    pub k: usize,
    pub l: usize,
    pub torus: PLMapFile,
    pub sphere_p: PLMapFile,
    pub sphere_m: PLMapFile,
    #[serde(default = "default_m")]
    pub meridian: String,
    #[serde(default = "default_p")]
    pub parallel: String,
}

fn default_m() -> String {
    "m".to_string()
}

fn default_p() -> String {
    "p".to_string()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub ambient: usize,
    pub points: Vec<Point>,
}

/// Each cell is given by a point set whose convex hull it is.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeChainFile {
    pub dim: usize,
    pub ambient: usize,
    pub cells: Vec<Vec<Point>>,
}

#[derive(Serialize, Deserialize)]
pub struct ProductCellFile {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct DeletedProductFile {
    pub cells: Vec<ProductCellFile>,
}

pub fn chain_to_json(c: &Chain) -> Value {
    serde_json::to_value(ChainFile {
        dim: c.dim(),
        ambient: c.ambient(),
        simplices: c.iter().map(|s| s.vertices().to_vec()).collect(),
    })
    .expect("serializable")
}

/// Accepts the chain format, or a realized complex read as the chain of
/// its top-dimensional simplices.
pub fn chain_from_json(v: Value) -> Result<Chain, IoError> {
    if v.get("facets").is_some() {
        let k = complex_from_json(v)?;
        let d = k.dim();
        return k.chain(d).map_err(|e| invalid("chain", e));
    }
    let f: ChainFile = serde_json::from_value(v)?;
    let simplices = f
        .simplices
        .into_iter()
        .enumerate()
        .map(|(i, vs)| GeomSimplex::new(vs).map_err(|e| invalid("chain", format!("simplex {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Chain::from_simplices(f.dim, f.ambient, simplices).map_err(|e| invalid("chain", e))
}

pub fn complex_file(c: &AbstractComplex) -> ComplexFile {
    ComplexFile {
        vertices: c.vertex_count(),
        facets: c.facets().to_vec(),
        realization: c.realization().map(<[Point]>::to_vec),
        marks: c.marks().clone(),
    }
}

pub fn complex_to_json(c: &AbstractComplex) -> Value {
    serde_json::to_value(complex_file(c)).expect("serializable")
}

pub fn complex_from_file(f: ComplexFile) -> Result<AbstractComplex, IoError> {
    let mut c = AbstractComplex::new(f.vertices, f.facets).map_err(|e| invalid("complex", e))?;
    if let Some(r) = f.realization {
        c = c.with_realization(r).map_err(|e| invalid("complex", e))?;
    }
    for (name, faces) in f.marks {
        c = c.with_mark(&name, faces).map_err(|e| invalid("complex", format!("mark {name:?}: {e}")))?;
    }
    Ok(c)
}

pub fn complex_from_json(v: Value) -> Result<AbstractComplex, IoError> {
    complex_from_file(serde_json::from_value(v)?)
}

pub fn deleted_product_to_json(dp: &DeletedProduct) -> Value {
    serde_json::to_value(DeletedProductFile {
        cells: dp
            .cells()
            .iter()
            .map(|c| ProductCellFile { left: c.left.clone(), right: c.right.clone() })
            .collect(),
    })
    .expect("serializable")
}

pub fn plmap_file(f: &PLMap) -> PLMapFile {
    PLMapFile { domain: complex_file(f.domain()), images: f.images().to_vec(), target_dim: f.d() }
}

pub fn plmap_to_json(f: &PLMap) -> Value {
    serde_json::to_value(plmap_file(f)).expect("serializable")
}

pub fn plmap_from_file(f: PLMapFile) -> Result<PLMap, IoError> {
    if let Some(p) = f.images.iter().find(|p| p.dim() != f.target_dim) {
        return Err(invalid("map", format!("image {p:?} is not in R^{}", f.target_dim)));
    }
    let domain = complex_from_file(f.domain)?;
    PLMap::new(domain, f.images).map_err(|e| invalid("map", e))
}

pub fn plmap_from_json(v: Value) -> Result<PLMap, IoError> {
    plmap_from_file(serde_json::from_value(v)?)
}

pub fn borromean_to_json(cfg: &BorromeanConfig) -> Value {
    serde_json::to_value(BorromeanFile {
        k: cfg.k,
        l: cfg.l,
        torus: plmap_file(&cfg.torus),
        sphere_p: plmap_file(&cfg.sphere_p),
        sphere_m: plmap_file(&cfg.sphere_m),
        meridian: cfg.meridian.clone(),
        parallel: cfg.parallel.clone(),
    })
    .expect("serializable")
}

/// Reads a configuration without checking the parameter relations, which
/// the consuming operation validates itself.
pub fn borromean_from_json(v: Value) -> Result<BorromeanConfig, IoError> {
    let f: BorromeanFile = serde_json::from_value(v)?;
    Ok(BorromeanConfig {
        k: f.k,
        l: f.l,
        torus: plmap_from_file(f.torus)?,
        sphere_p: plmap_from_file(f.sphere_p)?,
        sphere_m: plmap_from_file(f.sphere_m)?,
        meridian: f.meridian,
        parallel: f.parallel,
    })
}

pub fn points_to_json(ambient: usize, points: &[Point]) -> Value {
    serde_json::to_value(PointSetFile { ambient, points: points.to_vec() }).expect("serializable")
}

pub fn points_from_json(v: Value) -> Result<(usize, Vec<Point>), IoError> {
    let f: PointSetFile = serde_json::from_value(v)?;
    if let Some(p) = f.points.iter().find(|p| p.dim() != f.ambient) {
        return Err(invalid("point set", format!("{p:?} is not in R^{}", f.ambient)));
    }
    Ok((f.ambient, f.points))
}

pub fn polytope_chain_to_json(p: &PolytopeChain) -> Value {
    serde_json::to_value(PolytopeChainFile {
        dim: p.dim,
        ambient: p.ambient,
        cells: p.cells.iter().map(|c| c.vertices().to_vec()).collect(),
    })
    .expect("serializable")
}

/// Accepts the polytope chain format, or the chain format read as
/// polytopes.
pub fn polytope_chain_from_json(v: Value) -> Result<PolytopeChain, IoError> {
    if v.get("simplices").is_some() || v.get("facets").is_some() {
        return Ok(chain_from_json(v)?.to_polytope_chain());
    }
    let f: PolytopeChainFile = serde_json::from_value(v)?;
    let cells = f
        .cells
        .into_iter()
        .enumerate()
        .map(|(i, pts)| Polytope::from_points(pts).map_err(|e| invalid("polytope chain", format!("cell {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    PolytopeChain::new(f.dim, f.ambient, cells).map_err(|e| invalid("polytope chain", e))
}

pub fn read_json(path: &str) -> Result<Value, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// JSON schemas of every file format.
pub fn schemas() -> Value {
    let rat = json!({"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"});
    let point = json!({"type": "array", "items": rat});
    let face = json!({"type": "array", "items": {"type": "integer", "minimum": 0}});
    let complex = json!({
        "type": "object",
        "required": ["vertices", "facets"],
        "properties": {
            "vertices": {"type": "integer", "minimum": 0},
            "facets": {"type": "array", "items": face},
            "realization": {"type": "array", "items": point},
            "marks": {"type": "object", "additionalProperties": {"type": "array", "items": face}}
        }
    });
    let plmap = json!({
        "type": "object",
        "required": ["domain", "images", "target_dim"],
        "properties": {
            "domain": complex,
            "images": {"type": "array", "items": point},
            "target_dim": {"type": "integer"}
        }
    });
    json!({
        "chain": {
            "type": "object",
            "required": ["dim", "ambient", "simplices"],
            "properties": {
                "dim": {"type": "integer"},
                "ambient": {"type": "integer"},
                "simplices": {"type": "array", "items": {"type": "array", "items": point}}
            }
        },
        "complex": complex,
        "deleted_product": {
            "type": "object",
            "required": ["cells"],
            "properties": {"cells": {"type": "array", "items": {
                "type": "object",
                "required": ["left", "right"],
                "properties": {"left": face, "right": face}
            }}}
        },
        "plmap": plmap,
        "borromean_config": {
            "type": "object",
            "required": ["k", "l", "torus", "sphere_p", "sphere_m"],
            "properties": {
                "k": {"type": "integer"},
                "l": {"type": "integer"},
                "torus": plmap,
                "sphere_p": plmap,
                "sphere_m": plmap,
                "meridian": {"type": "string", "default": "m"},
                "parallel": {"type": "string", "default": "p"}
            }
        },
        "point_set": {
            "type": "object",
            "required": ["ambient", "points"],
            "properties": {"ambient": {"type": "integer"}, "points": {"type": "array", "items": point}}
        },
        "polytope_chain": {
            "type": "object",
            "required": ["dim", "ambient", "cells"],
            "properties": {
                "dim": {"type": "integer"},
                "ambient": {"type": "integer"},
                "cells": {"type": "array", "items": {"type": "array", "items": point}}
            }
        },
        "linkage_plan": {
            "type": "object",
            "required": ["spheres", "tori"],
            "properties": {
                "spheres": {"type": "array", "items": {"type": "string"}},
                "tori": {"type": "array", "items": {
                    "type": "object",
                    "required": ["id", "sphere_q", "sphere_r", "convention"],
                    "properties": {
                        "id": {"type": "string"},
                        "sphere_q": {"type": "string"},
                        "sphere_r": {"type": "string"},
                        "convention": {"enum": ["identify-boundary-sphere"]}
                    }
                }},
                "placeholder": {"type": "boolean"}
            }
        },
        "cnf": {"description": "DIMACS CNF text: 'c' comments, a 'p cnf V C' header, clauses ending in 0"}
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::torus_gadget;
    use crate::link::remark_a_config;

    #[test]
    fn chain_round_trip() {
        let v = json!({"dim": 1, "ambient": 2, "simplices": [[["0", "0"], ["1/2", "3"]], [["1", "1"], ["0", "0"]]]});
        let c = chain_from_json(v).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(chain_from_json(chain_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn malformed_inputs() {
        let bad = json!({"dim": 1, "ambient": 2, "simplices": [[["0", "0"], ["0", "0"]]]});
        assert!(matches!(chain_from_json(bad), Err(IoError::Invalid { .. })));
        let bad = json!({"dim": 1, "ambient": 2, "simplices": [[["0", "x"], ["1", "0"]]]});
        assert!(matches!(chain_from_json(bad), Err(IoError::Json(_))));
        let extra = json!({"dim": 1, "ambient": 2, "simplices": [], "colour": 3});
        assert!(chain_from_json(extra).is_err());
        let e = serde_json::from_str::<Value>("{\n  \"dim\": 1,\n  oops\n}").unwrap_err();
        assert_eq!(e.line(), 3);
    }

    #[test]
    fn complex_round_trip() {
        let t = torus_gadget(1);
        let back = complex_from_json(complex_to_json(&t)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn config_round_trip() {
        let cfg = remark_a_config(2).unwrap();
        let back = borromean_from_json(borromean_to_json(&cfg)).unwrap();
        assert_eq!(back, cfg);
    }
}
