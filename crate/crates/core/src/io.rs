//! JSON file formats.
//!
//! Complex numbers are read as `{"re": …, "im": …}`, `[re, im]`, or a bare
//! real number, and always written as `{"re": …, "im": …}`. Indices in files
//! are 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraSpec, StructureConstant};
use crate::error::Error;
use crate::holomorphic::{HolomorphicFn, Polynomial, Term};
use crate::monogenic::{GridSpec, MonogenicFunction, VariableFrame};
use crate::pde::{PdeSpec, PdeTerm};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JsonComplex(pub C64);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ReIm {
            re: f64,
            im: f64,
        }
        ReIm {
            re: self.0.re,
            im: self.0.im,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Obj {
                re: f64,
                #[serde(default)]
                im: f64,
            },
            Pair([f64; 2]),
            Real(f64),
        }
        Ok(match Repr::deserialize(d).map_err(|_| {
            serde::de::Error::custom(
                "expected a complex number: {\"re\":..,\"im\":..}, [re, im], or a real number",
            )
        })? {
            Repr::Obj { re, im } => JsonComplex(C64::new(re, im)),
            Repr::Pair([re, im]) => JsonComplex(C64::new(re, im)),
            Repr::Real(re) => JsonComplex(C64::new(re, 0.0)),
        })
    }
}

pub fn complex_vec(v: &[C64]) -> Vec<JsonComplex> {
    v.iter().copied().map(JsonComplex).collect()
}

fn from_json_vec(v: &[JsonComplex]) -> Vec<C64> {
    v.iter().map(|c| c.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpsilonEntry {
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub upsilon: Vec<UpsilonEntry>,
    #[serde(default)]
    pub u_map: BTreeMap<String, usize>,
}

impl AlgebraFile {
    pub fn into_spec(self) -> Result<AlgebraSpec, Error> {
        let u_map = self
            .u_map
            .iter()
            .map(|(k, &u)| {
                k.trim()
                    .parse::<usize>()
                    .map(|s| (s, u))
                    .map_err(|_| Error::Structural(format!("u_map key {k:?} is not an index")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraSpec::new(
            self.m,
            self.n,
            self.upsilon
                .iter()
                .map(|e| StructureConstant::new(e.r, e.s, e.p, C64::new(e.re, e.im))),
            u_map,
        )
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        Self {
            m: spec.m(),
            n: spec.n(),
            upsilon: spec
                .structure_constants()
                .map(|c| UpsilonEntry {
                    r: c.r,
                    s: c.s,
                    p: c.p,
                    re: c.value.re,
                    im: c.value.im,
                })
                .collect(),
            u_map: spec.u_map().map(|(s, u)| (s.to_string(), u)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementFile {
    Coeffs(Vec<JsonComplex>),
    Object { coeffs: Vec<JsonComplex> },
}

impl ElementFile {
    pub fn into_element(self, spec: &AlgebraSpec) -> Result<AlgebraElement, Error> {
        let (ElementFile::Coeffs(v) | ElementFile::Object { coeffs: v }) = self;
        spec.element(from_json_vec(&v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub k: usize,
    /// Coefficient rows of `e_2..e_k`.
    pub vectors: Vec<Vec<JsonComplex>>,
}

impl FrameFile {
    pub fn into_frame(self, spec: &AlgebraSpec) -> Result<VariableFrame, Error> {
        if self.k != self.vectors.len() + 1 {
            return Err(Error::InvalidFrame(format!(
                "k = {} but {} vectors given (expected k - 1)",
                self.k,
                self.vectors.len()
            )));
        }
        VariableFrame::new(
            spec,
            self.vectors.iter().map(|row| from_json_vec(row)).collect(),
        )
    }

    pub fn from_frame(frame: &VariableFrame) -> Self {
        Self {
            k: frame.k(),
            vectors: frame.rows().iter().map(|r| complex_vec(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub poly: Vec<JsonComplex>,
    #[serde(default)]
    pub exp_lambda: Option<JsonComplex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub terms: Vec<TermFile>,
}

impl FunctionFile {
    pub fn into_fn(self) -> HolomorphicFn {
        HolomorphicFn::new(
            self.terms
                .into_iter()
                .map(|t| Term {
                    poly: Polynomial::new(from_json_vec(&t.poly)),
                    exp_lambda: t.exp_lambda.map(|c| c.0),
                })
                .collect(),
        )
    }

    pub fn from_fn(f: &HolomorphicFn) -> Self {
        Self {
            terms: f
                .terms()
                .iter()
                .map(|t| TermFile {
                    poly: complex_vec(t.poly.coeffs()),
                    exp_lambda: t.exp_lambda.map(JsonComplex),
                })
                .collect(),
        }
    }
}

/// Components of a monogenic function: `F` holds `F_1..F_m`, `G` holds
/// `G_{m+1}..G_n` (may be omitted when all are zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonogenicFile {
    #[serde(rename = "F")]
    pub f: Vec<FunctionFile>,
    #[serde(rename = "G", default)]
    pub g: Vec<FunctionFile>,
}

impl MonogenicFile {
    pub fn into_monogenic(
        self,
        spec: &AlgebraSpec,
        frame: VariableFrame,
    ) -> Result<MonogenicFunction, Error> {
        let mut g: Vec<HolomorphicFn> = self.g.into_iter().map(FunctionFile::into_fn).collect();
        if g.is_empty() {
            g = vec![HolomorphicFn::zero(); spec.n() - spec.m()];
        }
        MonogenicFunction::new(
            spec,
            frame,
            self.f.into_iter().map(FunctionFile::into_fn).collect(),
            g,
        )
    }

    pub fn from_monogenic(mf: &MonogenicFunction) -> Self {
        Self {
            f: mf.f().iter().map(FunctionFile::from_fn).collect(),
            g: mf.g().iter().map(FunctionFile::from_fn).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeTermFile {
    pub alpha: Vec<u32>,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeFile {
    #[serde(rename = "N")]
    pub order: u32,
    pub terms: Vec<PdeTermFile>,
}

impl PdeFile {
    pub fn into_pde(self) -> Result<PdeSpec, Error> {
        PdeSpec::new(
            self.order,
            self.terms
                .into_iter()
                .map(|t| PdeTerm {
                    alpha: t.alpha,
                    c: t.c,
                })
                .collect(),
        )
    }
}

/// Input problem, located as precisely as the parser allows.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{file}: cannot read: {message}")]
    Io { file: String, message: String },
    #[error("{file}:{line}:{column}: at `{path}`: {message}")]
    Syntax {
        file: String,
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: {source}")]
    Semantic {
        file: String,
        #[source]
        source: Error,
    },
}

/// Deserializes `text`, reporting the JSON path of the failing field.
pub fn parse_json<T: DeserializeOwned>(text: &str, file: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError::Syntax {
            file: file.to_string(),
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        file: file.clone(),
        message: e.to_string(),
    })?;
    parse_json(&text, &file)
}

fn semantic<T>(file: &str, r: Result<T, Error>) -> Result<T, InputError> {
    r.map_err(|source| InputError::Semantic {
        file: file.to_string(),
        source,
    })
}

pub fn parse_algebra(text: &str, file: &str) -> Result<AlgebraSpec, InputError> {
    semantic(file, parse_json::<AlgebraFile>(text, file)?.into_spec())
}

pub fn parse_frame(text: &str, file: &str, spec: &AlgebraSpec) -> Result<VariableFrame, InputError> {
    semantic(file, parse_json::<FrameFile>(text, file)?.into_frame(spec))
}

pub fn parse_element(
    text: &str,
    file: &str,
    spec: &AlgebraSpec,
) -> Result<AlgebraElement, InputError> {
    semantic(file, parse_json::<ElementFile>(text, file)?.into_element(spec))
}

pub fn parse_monogenic(
    text: &str,
    file: &str,
    spec: &AlgebraSpec,
    frame: VariableFrame,
) -> Result<MonogenicFunction, InputError> {
    semantic(
        file,
        parse_json::<MonogenicFile>(text, file)?.into_monogenic(spec, frame),
    )
}

pub fn parse_pde(text: &str, file: &str) -> Result<PdeSpec, InputError> {
    semantic(file, parse_json::<PdeFile>(text, file)?.into_pde())
}

pub fn parse_grid(text: &str, file: &str) -> Result<GridSpec, InputError> {
    parse_json(text, file)
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Descriptions of every accepted input format.
pub fn schemas() -> serde_json::Value {
    let complex = json!({
        "oneOf": [
            {"type": "object", "properties": {"re": {"type": "number"}, "im": {"type": "number"}}, "required": ["re"]},
            {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
            {"type": "number"}
        ],
        "description": "complex number; emitted as {\"re\",\"im\"}"
    });
    json!({
        "complex": complex,
        "algebra": {
            "type": "object",
            "required": ["m", "n"],
            "properties": {
                "m": {"type": "integer", "minimum": 1, "description": "number of idempotents"},
                "n": {"type": "integer", "minimum": 1, "description": "dimension"},
                "upsilon": {
                    "type": "array",
                    "description": "structure constants: coefficient of I_p in I_r I_s, nilpotent r, s and p > max(r, s)",
                    "items": {"type": "object", "required": ["r", "s", "p", "re"],
                              "properties": {"r": {"type": "integer"}, "s": {"type": "integer"}, "p": {"type": "integer"},
                                             "re": {"type": "number"}, "im": {"type": "number", "default": 0}}}
                },
                "u_map": {"type": "object", "description": "nilpotent index (string key) -> idempotent u_s; optional when m = 1",
                          "additionalProperties": {"type": "integer"}}
            },
            "example": {"m": 1, "n": 3, "upsilon": [{"r": 2, "s": 2, "p": 3, "re": 1.0, "im": 0.0}], "u_map": {"2": 1, "3": 1}}
        },
        "element": {"oneOf": [
            {"type": "array", "items": {"$ref": "#/complex"}},
            {"type": "object", "properties": {"coeffs": {"type": "array", "items": {"$ref": "#/complex"}}}}
        ], "description": "n coefficients over I_1..I_n"},
        "frame": {
            "type": "object", "required": ["k", "vectors"],
            "properties": {"k": {"type": "integer", "minimum": 2},
                           "vectors": {"type": "array", "description": "k - 1 rows of n complex coefficients: e_2..e_k (e_1 is the unit)",
                                       "items": {"type": "array", "items": {"$ref": "#/complex"}}}},
            "example": {"k": 3, "vectors": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]]}
        },
        "function": {
            "type": "object", "required": ["terms"],
            "properties": {"terms": {"type": "array", "items": {"type": "object", "required": ["poly"],
                "properties": {"poly": {"type": "array", "items": {"$ref": "#/complex"}, "description": "ascending degree"},
                               "exp_lambda": {"oneOf": [{"$ref": "#/complex"}, {"type": "null"}]}}}}},
            "example": {"terms": [{"poly": [[0, 0], [0, 0], [1, 0]], "exp_lambda": null}]}
        },
        "monogenic": {
            "type": "object", "required": ["F"],
            "properties": {"F": {"type": "array", "items": {"$ref": "#/function"}, "description": "F_1..F_m"},
                           "G": {"type": "array", "items": {"$ref": "#/function"}, "description": "G_{m+1}..G_n, omitted = all zero"}}
        },
        "pde": {
            "type": "object", "required": ["N", "terms"],
            "properties": {"N": {"type": "integer"},
                           "terms": {"type": "array", "items": {"type": "object", "required": ["alpha", "c"],
                                     "properties": {"alpha": {"type": "array", "items": {"type": "integer"}}, "c": {"type": "number"}}}}},
            "example": {"N": 2, "terms": [{"alpha": [2, 0, 0], "c": 1.0}, {"alpha": [0, 2, 0], "c": 1.0}, {"alpha": [0, 0, 2], "c": 1.0}]}
        },
        "grid": {
            "type": "object", "required": ["ranges", "steps"],
            "properties": {"ranges": {"type": "array", "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}},
                           "steps": {"type": "array", "items": {"type": "integer", "minimum": 1}}}
        }
    })
}
