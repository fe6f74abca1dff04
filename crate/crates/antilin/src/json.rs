//! JSON wire formats for the CLI and fixtures: operators, vectors, bipartite
//! vectors, curves, canonical forms, copositive inputs and reports, and
//! modular triples.  Complex numbers are always `[re, im]` pairs.
//!
//! Schema violations surface as [`ParseError`] so callers can distinguish
//! malformed input from domain failures raised by the library itself.

use std::fmt;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::core::{Cplx, HVector, LinOp, AntiOp, Op};
use crate::decomp::WhvForm;
use crate::epr_teleport::BipartiteVector;
use crate::modular::ModularTriple;

/// A schema violation in otherwise well-formed JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

fn pack(z: Cplx) -> [f64; 2] {
    [z.re, z.im]
}

fn unpack(p: [f64; 2]) -> Cplx {
    Cplx::new(p[0], p[1])
}

pub fn mat_to_json(m: &Array2<Cplx>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pack(m[(i, j)])).collect())
        .collect()
}

pub fn json_to_mat(rows: &[Vec<[f64; 2]>]) -> PResult<Array2<Cplx>> {
    if rows.is_empty() {
        return Err(ParseError("matrix has no rows".into()));
    }
    let ncols = rows[0].len();
    if ncols == 0 {
        return Err(ParseError("matrix has empty rows".into()));
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(ParseError("matrix rows have unequal lengths".into()));
    }
    let m = Array2::from_shape_fn((rows.len(), ncols), |(i, j)| unpack(rows[i][j]));
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(ParseError("matrix entries must be finite".into()));
    }
    Ok(m)
}

/// `{"dim": n, "kind": "linear"|"antilinear", "matrix": [[[re,im],...],...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub kind: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl OperatorJson {
    pub fn from_op(op: &Op) -> Self {
        match op {
            Op::Linear(a) => OperatorJson {
                dim: a.dim(),
                kind: "linear".into(),
                matrix: mat_to_json(a.mat()),
            },
            Op::Antilinear(t) => OperatorJson {
                dim: t.dim(),
                kind: "antilinear".into(),
                matrix: mat_to_json(t.mat()),
            },
        }
    }

    pub fn from_linear(a: &LinOp) -> Self {
        Self::from_op(&Op::Linear(a.clone()))
    }

    pub fn from_antilinear(t: &AntiOp) -> Self {
        Self::from_op(&Op::Antilinear(t.clone()))
    }

    pub fn to_op(&self) -> PResult<Op> {
        let m = json_to_mat(&self.matrix)?;
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(ParseError(format!(
                "declared dim {} but the matrix is {} x {}",
                self.dim,
                m.nrows(),
                m.ncols()
            )));
        }
        match self.kind.as_str() {
            "linear" => Ok(Op::Linear(
                LinOp::new(m).map_err(|e| ParseError(e.to_string()))?,
            )),
            "antilinear" => Ok(Op::Antilinear(
                AntiOp::new(m).map_err(|e| ParseError(e.to_string()))?,
            )),
            other => Err(ParseError(format!(
                "kind must be \"linear\" or \"antilinear\", got \"{other}\""
            ))),
        }
    }
}

/// `{"dim": n, "entries": [[re,im],...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl VectorJson {
    pub fn from_vector(v: &HVector) -> Self {
        VectorJson {
            dim: v.dim(),
            entries: v.data().iter().map(|z| pack(*z)).collect(),
        }
    }

    pub fn to_vector(&self) -> PResult<HVector> {
        if self.entries.len() != self.dim {
            return Err(ParseError(format!(
                "declared dim {} but {} entries",
                self.dim,
                self.entries.len()
            )));
        }
        HVector::new(self.entries.iter().map(|p| unpack(*p)).collect())
            .map_err(|e| ParseError(e.to_string()))
    }
}

/// `{"dimA": m, "dimB": n, "coeffs": [[[re,im],...],...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteJson {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub coeffs: Vec<Vec<[f64; 2]>>,
}

impl BipartiteJson {
    pub fn from_bipartite(psi: &BipartiteVector) -> Self {
        BipartiteJson {
            dim_a: psi.dim_a(),
            dim_b: psi.dim_b(),
            coeffs: mat_to_json(psi.coeffs()),
        }
    }

    pub fn to_bipartite(&self) -> PResult<BipartiteVector> {
        let m = json_to_mat(&self.coeffs)?;
        if m.nrows() != self.dim_a || m.ncols() != self.dim_b {
            return Err(ParseError(format!(
                "declared {} x {} but the coefficient matrix is {} x {}",
                self.dim_a,
                self.dim_b,
                m.nrows(),
                m.ncols()
            )));
        }
        BipartiteVector::new(m).map_err(|e| ParseError(e.to_string()))
    }
}

/// `{"closed": bool, "samples": [operator-json, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub closed: bool,
    pub samples: Vec<OperatorJson>,
}

impl CurveJson {
    /// Parses the samples, insisting on antilinear kind; curve-level
    /// validation (conjugation check, step density) is the library's job.
    pub fn to_samples(&self) -> PResult<(Vec<AntiOp>, bool)> {
        let mut out = Vec::with_capacity(self.samples.len());
        for (i, s) in self.samples.iter().enumerate() {
            match s.to_op()? {
                Op::Antilinear(t) => out.push(t),
                Op::Linear(_) => {
                    return Err(ParseError(format!(
                        "curve sample {i} is linear; samples must be antilinear"
                    )))
                }
            }
        }
        Ok((out, self.closed))
    }
}

/// `{"blocks1d": [r,...], "blocks2d": [[re,im],...], "basis": matrix}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhvJson {
    pub blocks1d: Vec<f64>,
    pub blocks2d: Vec<[f64; 2]>,
    pub basis: Vec<Vec<[f64; 2]>>,
}

impl WhvJson {
    pub fn from_form(form: &WhvForm) -> Self {
        WhvJson {
            blocks1d: form.blocks_1d.clone(),
            blocks2d: form.blocks_2d.iter().map(|z| pack(*z)).collect(),
            basis: mat_to_json(&form.basis),
        }
    }
}

/// `{"inputs": [vector...], "outputs": [vector...], "beta": matrix}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopositiveInputJson {
    pub inputs: Vec<VectorJson>,
    pub outputs: Vec<VectorJson>,
    pub beta: Vec<Vec<[f64; 2]>>,
}

impl CopositiveInputJson {
    pub fn to_parts(&self) -> PResult<(Vec<HVector>, Vec<HVector>, Array2<Cplx>)> {
        let ins = self
            .inputs
            .iter()
            .map(|v| v.to_vector())
            .collect::<PResult<Vec<_>>>()?;
        let outs = self
            .outputs
            .iter()
            .map(|v| v.to_vector())
            .collect::<PResult<Vec<_>>>()?;
        let beta = json_to_mat(&self.beta)?;
        Ok((ins, outs, beta))
    }
}

/// `{"length": n, "K": matrix, "traces_check": bool}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopositiveReportJson {
    pub length: usize,
    #[serde(rename = "K")]
    pub k: Vec<Vec<[f64; 2]>>,
    pub traces_check: bool,
}

/// `{"S": operator, "Delta": operator, "J": operator}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularJson {
    #[serde(rename = "S")]
    pub s: OperatorJson,
    #[serde(rename = "Delta")]
    pub delta: OperatorJson,
    #[serde(rename = "J")]
    pub j: OperatorJson,
}

impl ModularJson {
    pub fn from_triple(t: &ModularTriple) -> Self {
        ModularJson {
            s: OperatorJson::from_antilinear(t.s()),
            delta: OperatorJson {
                dim: t.delta().dim(),
                kind: "linear".into(),
                matrix: mat_to_json(t.delta().mat()),
            },
            j: OperatorJson::from_antilinear(t.j()),
        }
    }
}

/// Rounds to 12 significant digits; the precision every CLI report uses.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let exp = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - exp);
    (x * factor).round() / factor
}

/// Applies [`sig12`] to every float in a JSON tree, leaving integers alone.
pub fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                if let Some(x) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(sig12(x)) {
                        *v = serde_json::Value::Number(r);
                    }
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}
