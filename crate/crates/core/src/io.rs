//! JSON formats: parameter files, matrix dumps, elements and structure
//! constants.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement};
use crate::coeff::{CoeffError, Domain, DomainSpec};
use crate::matrix::Matrix;
use crate::params::{ParamError, ParamSet};
use crate::repxi::{BasisIndex, XiRep};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed parameter file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {source}")]
    Scalar { field: String, source: CoeffError },
    #[error("k = {k} but {field} has {got} entries")]
    Length { k: usize, field: &'static str, got: usize },
    #[error(transparent)]
    Domain(#[from] CoeffError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub k: usize,
    pub domain: DomainSpec,
    pub q: String,
    pub lambda: String,
    pub q_i: Vec<String>,
    #[serde(rename = "A_i")]
    pub a_i: Vec<String>,
}

impl ParamFile {
    pub fn from_params(ps: &ParamSet) -> Self {
        let d = ps.domain();
        ParamFile {
            k: ps.k(),
            domain: d.spec().clone(),
            q: d.format(ps.q()),
            lambda: d.format(ps.lambda()),
            q_i: ps.q_coeffs().iter().map(|s| d.format(s)).collect(),
            a_i: ps.a_coeffs().iter().map(|s| d.format(s)).collect(),
        }
    }

    pub fn to_params(&self) -> Result<ParamSet, IoError> {
        for (field, got) in [("q_i", self.q_i.len()), ("A_i", self.a_i.len())] {
            if got != self.k {
                return Err(IoError::Length { k: self.k, field, got });
            }
        }
        let d = Domain::new(self.domain.clone())?;
        let parse = |field: String, text: &str| {
            d.parse(text).map_err(|source| IoError::Scalar { field, source })
        };
        let q = parse("q".into(), &self.q)?;
        let lambda = parse("lambda".into(), &self.lambda)?;
        let qs = self.q_i.iter().enumerate().map(|(i, t)| parse(format!("q_i[{i}]"), t)).collect::<Result<_, _>>()?;
        let a = self.a_i.iter().enumerate().map(|(i, t)| parse(format!("A_i[{i}]"), t)).collect::<Result<_, _>>()?;
        Ok(ParamSet::new(d, q, lambda, qs, a)?)
    }
}

pub fn params_from_json(text: &str) -> Result<ParamSet, IoError> {
    serde_json::from_str::<ParamFile>(text)?.to_params()
}

pub fn params_to_json(ps: &ParamSet) -> Value {
    serde_json::to_value(ParamFile::from_params(ps)).expect("plain data serializes")
}

pub fn read_params(path: &Path) -> Result<ParamSet, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    params_from_json(&text)
}

/// Row-major canonical strings.
pub fn matrix_to_json(m: &Matrix, d: &Domain) -> Value {
    json!(m.to_strings(d))
}

/// Generator matrices of `Ξ` with basis labels.
pub fn xi_to_json(xi: &XiRep) -> Value {
    let d = xi.params().domain();
    let labels: Vec<String> = BasisIndex::all(xi.k()).map(|b| b.to_string()).collect();
    json!({
        "basis": labels,
        "Y": matrix_to_json(xi.y(), d),
        "Y^-1": matrix_to_json(xi.y_inv(), d),
        "X": matrix_to_json(xi.x(), d),
        "X^-1": matrix_to_json(xi.w(), d),
        "E": matrix_to_json(xi.e(), d),
    })
}

/// Nonzero coefficients keyed by basis label.
pub fn element_to_json(alg: &Algebra, a: &AlgebraElement) -> Value {
    let d = alg.domain();
    let map: BTreeMap<String, String> =
        a.support(alg.k()).into_iter().map(|(b, c)| (b.to_string(), d.format(c))).collect();
    json!(map)
}

/// One JSON line per nonzero structure constant `b_s b_t = Σ c_r b_r`.
pub fn write_structure_constants<W: Write + ?Sized>(alg: &Algebra, out: &mut W) -> std::io::Result<usize> {
    let k = alg.k();
    let d = alg.domain();
    let mut count = 0;
    for (s, m) in alg.structure_constants().into_iter().enumerate() {
        let s_label = BasisIndex::from_flat(k, s).to_string();
        for t in 0..alg.dim() {
            let t_label = BasisIndex::from_flat(k, t).to_string();
            for r in 0..alg.dim() {
                let c = &m[(r, t)];
                if c.is_zero() {
                    continue;
                }
                let record = json!({
                    "s": s_label,
                    "t": t_label,
                    "r": BasisIndex::from_flat(k, r).to_string(),
                    "coeff": d.format(c),
                });
                writeln!(out, "{record}")?;
                count += 1;
            }
        }
    }
    Ok(count)
}
