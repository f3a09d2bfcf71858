//! On-disk matrix documents.
//!
//! Schema: a JSON object with `kind` (one of `state_vector`, `density`,
//! `unitary`), `dims` (array of positive integers, the tensor-factor
//! dimensions), and `data` (row-major array of `[re, im]` pairs — complex
//! numbers are always two-element arrays, never strings). A state vector
//! carries ∏dims entries; density and unitary matrices carry (∏dims)².

use serde::{Deserialize, Serialize};

use ctcsim_core::quantum::{DensityOperator, PureState, UnitaryGate};
use ctcsim_core::{Complex64, ComplexMatrix, SubsystemShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    StateVector,
    Density,
    Unitary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub kind: DocumentKind,
    pub dims: Vec<usize>,
    pub data: Vec<[f64; 2]>,
}

/// Validated content of a loaded document.
#[derive(Debug, Clone)]
pub enum DocumentPayload {
    StateVector(PureState),
    Density(DensityOperator),
    Unitary(UnitaryGate),
}

impl MatrixDocument {
    pub fn from_pure(state: &PureState) -> Self {
        Self {
            kind: DocumentKind::StateVector,
            dims: state.shape().dims().to_vec(),
            data: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_density(rho: &DensityOperator) -> Self {
        Self {
            kind: DocumentKind::Density,
            dims: rho.shape().dims().to_vec(),
            data: rho.matrix().entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    }

    /// Validate the kind-specific invariants and convert to a domain value.
    pub fn into_payload(self) -> Result<DocumentPayload, String> {
        let shape = SubsystemShape::new(self.dims.clone()).map_err(|e| e.to_string())?;
        let dim = shape.total_dim();
        match self.kind {
            DocumentKind::StateVector => {
                if self.data.len() != dim {
                    return Err(format!(
                        "state_vector with dims {:?} needs {dim} entries, got {}",
                        self.dims,
                        self.data.len()
                    ));
                }
                let state =
                    PureState::new(self.amplitudes(), shape).map_err(|e| e.to_string())?;
                Ok(DocumentPayload::StateVector(state))
            }
            DocumentKind::Density => {
                if self.data.len() != dim * dim {
                    return Err(format!(
                        "density with dims {:?} needs {} entries, got {}",
                        self.dims,
                        dim * dim,
                        self.data.len()
                    ));
                }
                let matrix = ComplexMatrix::new(dim, dim, self.amplitudes())
                    .map_err(|e| e.to_string())?;
                let rho = DensityOperator::new(matrix, shape).map_err(|e| e.to_string())?;
                Ok(DocumentPayload::Density(rho))
            }
            DocumentKind::Unitary => {
                if self.data.len() != dim * dim {
                    return Err(format!(
                        "unitary with dims {:?} needs {} entries, got {}",
                        self.dims,
                        dim * dim,
                        self.data.len()
                    ));
                }
                let matrix = ComplexMatrix::new(dim, dim, self.amplitudes())
                    .map_err(|e| e.to_string())?;
                let gate = UnitaryGate::new(matrix, shape).map_err(|e| e.to_string())?;
                Ok(DocumentPayload::Unitary(gate))
            }
        }
    }
}

pub fn load_document(path: &std::path::Path) -> Result<DocumentPayload, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: MatrixDocument = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    doc.into_payload()
        .map_err(|e| format!("{}: {e}", path.display()))
}
