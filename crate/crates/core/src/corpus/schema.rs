//! Wire format of corpus files. Matrices are row-major arrays of exact
//! scalar strings such as `"3"` or `"-1/2"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub type MatrixRows = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub schema_version: Option<u32>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

/// Either `{"fixture": "dual_numbers:2"}` or explicit structure constants.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// `"F<p>"`, `"Q"` or `"Z"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `constants[i][j]` are the coordinates of `eᵢ·eⱼ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_form: Option<MatrixRows>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub algebra_id: String,
    /// `"left"` or `"right"`.
    pub side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// One `dim × dim` matrix per basis element of the algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MatrixRows>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailSpec {
    Zero,
    Periodic { period: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowEntry {
    pub degree: i64,
    pub module_id: String,
    /// `∂_degree : C_degree → C_{degree−1}`; omitted for the lowest entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential_matrix: Option<MatrixRows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub ring_id: String,
    pub window: Vec<WindowEntry>,
    #[serde(default = "zero_tail")]
    pub lower_tail: TailSpec,
    #[serde(default = "zero_tail")]
    pub upper_tail: TailSpec,
}

fn zero_tail() -> TailSpec {
    TailSpec::Zero
}

/// One check to run: `left` and `right` name modules or complexes.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub check: String,
    pub left: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    /// Test modules for the vanishing check.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tests: Vec<String>,
    /// Split degrees for the stable sequences.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub splits: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<(i64, i64)>,
}
