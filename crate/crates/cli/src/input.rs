//! JSON input schemas and their conversion into library types.

use block_encoding::{ComplexSparseMatrix, LcuSpec};
use num_complex::Complex64 as C64;
use select_oracle::PauliString;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sparse_access::{SparseBooleanFn, SparseMatrixCoo};
use state_prep::{DenseAmplitudes, SparseAmplitudes};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SparseAmp {
    pub index: u64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StateInput {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparse: Option<Vec<SparseAmp>>,
}

pub enum State {
    Dense(DenseAmplitudes),
    Sparse(SparseAmplitudes),
}

impl StateInput {
    pub fn parse(&self) -> Result<State, CliError> {
        if self.n > 30 {
            return Err(CliError::Schema(format!("n = {} is too large", self.n)));
        }
        match (&self.dense, &self.sparse) {
            (Some(d), None) => {
                if d.len() != 1 << self.n {
                    return Err(CliError::Schema(format!("{} amplitudes for n = {}", d.len(), self.n)));
                }
                let v = d.iter().map(|a| C64::new(a[0], a[1])).collect();
                Ok(State::Dense(DenseAmplitudes::new(v)?))
            }
            (None, Some(s)) => {
                let e = s.iter().map(|a| (a.index, C64::new(a.re, a.im))).collect();
                Ok(State::Sparse(SparseAmplitudes::new(self.n, e)?))
            }
            _ => Err(CliError::Schema("give exactly one of `dense` and `sparse`".into())),
        }
    }

    pub fn amplitudes(&self) -> Result<Vec<C64>, CliError> {
        Ok(match self.parse()? {
            State::Dense(d) => d.amps().to_vec(),
            State::Sparse(s) => s.to_dense(),
        })
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PauliInput {
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub strings: Vec<String>,
}

impl PauliInput {
    pub fn parse(&self) -> Result<Vec<PauliString>, CliError> {
        if self.m > 20 || self.strings.len() != 1 << self.m {
            return Err(CliError::Schema(format!("{} strings for m = {}", self.strings.len(), self.m)));
        }
        let p: Vec<PauliString> = self.strings.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        if p.iter().any(|s| s.len() != self.l) {
            return Err(CliError::Schema(format!("string length differs from L = {}", self.l)));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SbmEntry {
    pub index: u64,
    pub value: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SbmInput {
    pub n: usize,
    pub word: usize,
    pub entries: Vec<SbmEntry>,
}

impl SbmInput {
    pub fn parse(&self) -> Result<SparseBooleanFn, CliError> {
        Ok(SparseBooleanFn::new(
            self.n,
            self.word,
            self.entries.iter().map(|e| (e.index, e.value)).collect(),
        )?)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub val: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub n: usize,
    pub d: usize,
    pub s: usize,
    pub entries: Vec<MatrixEntry>,
    /// `oh` or `of`; only read by `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

impl MatrixInput {
    pub fn parse(&self) -> Result<SparseMatrixCoo, CliError> {
        Ok(SparseMatrixCoo::new(
            self.n,
            self.d,
            self.s,
            self.entries.iter().map(|e| (e.row, e.col, e.val)).collect(),
        )?)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LcuTerm {
    pub coeff: [f64; 2],
    pub pauli: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LcuInput {
    pub n: usize,
    pub terms: Vec<LcuTerm>,
}

impl LcuInput {
    pub fn parse(&self) -> Result<LcuSpec, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((C64::new(t.coeff[0], t.coeff[1]), t.pauli.parse()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(LcuSpec::new(self.n, terms)?)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexEntry {
    pub row: u64,
    pub col: u64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrixInput {
    pub n: usize,
    pub entries: Vec<ComplexEntry>,
}

impl ComplexMatrixInput {
    pub fn parse(&self) -> Result<ComplexSparseMatrix, CliError> {
        Ok(ComplexSparseMatrix::new(
            self.n,
            self.entries.iter().map(|e| (e.row, e.col, C64::new(e.re, e.im))).collect(),
        )?)
    }
}

/// Any of the above, told apart by its keys.
pub enum Target {
    State(StateInput),
    Pauli(PauliInput),
    Sbm(SbmInput),
    Matrix(MatrixInput),
    Lcu(LcuInput),
    Complex(ComplexMatrixInput),
}

impl Target {
    pub fn from_json(text: &str) -> Result<Target, CliError> {
        let v: Value = serde_json::from_str(text)?;
        let has = |k: &str| v.get(k).is_some();
        Ok(if has("terms") {
            Target::Lcu(serde_json::from_value(v)?)
        } else if has("strings") {
            Target::Pauli(serde_json::from_value(v)?)
        } else if has("word") {
            Target::Sbm(serde_json::from_value(v)?)
        } else if has("d") {
            Target::Matrix(serde_json::from_value(v)?)
        } else if has("dense") || has("sparse") {
            Target::State(serde_json::from_value(v)?)
        } else if has("entries") {
            Target::Complex(serde_json::from_value(v)?)
        } else {
            return Err(CliError::Schema("unrecognized input object".into()));
        })
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
