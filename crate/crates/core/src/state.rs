//! Objective quantum states: normalized pure-state vectors and density
//! matrices, with the invariants (normalization, Hermiticity, positivity,
//! unit trace) enforced on every constructor path.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    complex_from_raw, hermitian_eigenvalues, max_abs_diff, ComplexMatrix, Num,
};
use crate::tol;

/// Normalized pure state over a finite computational basis.
///
/// The global phase is fixed: the first amplitude with modulus above
/// [`tol::ZERO`] is real and non-negative, so equal states compare equal
/// entrywise.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(try_from = "RawAmplitudes")]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Build a pure state from amplitudes.
    ///
    /// The vector is renormalized when its norm is within
    /// [`tol::NORM_LENIENCY`] of 1 (absorbing decimal truncation in input
    /// files); a norm further out is treated as a misconfiguration and
    /// rejected. The global phase is then canonicalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = amplitudes
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let mut v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm <= tol::ZERO {
            return Err(Error::ZeroVector);
        }
        if (norm - 1.0).abs() > tol::NORM_LENIENCY {
            return Err(Error::NormOutOfRange {
                norm,
                leniency: tol::NORM_LENIENCY,
            });
        }
        v /= Complex64::from(norm);
        canonicalize_phase(&mut v);
        Ok(Self { amplitudes: v })
    }

    /// Basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        v[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Outer product `|ψ⟩⟨ψ|` as a density matrix (rank 1, purity 1).
    pub fn density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_valid(m)
    }

    /// Entrywise comparison within `eps`, after canonicalization.
    pub fn approx_eq(&self, other: &PureState, eps: f64) -> bool {
        self.dim() == other.dim()
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|(a, b)| (a - b).norm() <= eps)
    }
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        raw.serialize(serializer)
    }
}

#[derive(Deserialize)]
struct RawAmplitudes(Vec<[Num; 2]>);

impl TryFrom<RawAmplitudes> for PureState {
    type Error = Error;

    fn try_from(raw: RawAmplitudes) -> Result<Self> {
        PureState::new(raw.0.into_iter().map(complex_from_raw).collect())
    }
}

/// Fix the global phase: rotate so the first amplitude with modulus above
/// [`tol::ZERO`] is real and non-negative.
fn canonicalize_phase(v: &mut DVector<Complex64>) {
    if let Some(lead) = v.iter().position(|z| z.norm() > tol::ZERO) {
        let phase = v[lead] / Complex64::from(v[lead].norm());
        let rotation = phase.conj();
        for z in v.iter_mut() {
            *z *= rotation;
        }
        // The leading entry is now real up to roundoff; drop the residue so
        // canonical forms compare exactly.
        v[lead] = Complex64::new(v[lead].re, 0.0);
    }
}

/// Density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix")]
pub struct DensityMatrix {
    #[serde(flatten)]
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate a candidate density matrix.
    ///
    /// Hermiticity is checked within [`tol::HERM`] and positivity within
    /// [`tol::PSD`]; violations are rejected rather than repaired. The one
    /// exception is the trace, which is renormalized to 1 when within
    /// [`tol::NORM_LENIENCY`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol::HERM {
            return Err(Error::NotHermitian { deviation });
        }
        let mut m = matrix.into_dmatrix();
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tol::NORM_LENIENCY {
            return Err(Error::TraceOutOfRange {
                trace,
                leniency: tol::NORM_LENIENCY,
            });
        }
        m /= Complex64::from(trace);
        let eigenvalues = hermitian_eigenvalues(&m);
        if let Some(&lowest) = eigenvalues.first() {
            if lowest < -tol::PSD {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: lowest });
            }
        }
        Ok(Self {
            matrix: ComplexMatrix::from_dmatrix(m).expect("validated entries are finite"),
        })
    }

    /// Wrap a matrix already known valid by construction (outer products of
    /// normalized vectors, convex mixtures of valid states).
    pub(crate) fn from_valid(m: DMatrix<Complex64>) -> Self {
        Self {
            matrix: ComplexMatrix::from_dmatrix(m).expect("constructed entries are finite"),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        self.matrix.as_dmatrix()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.as_dmatrix())
    }

    /// `Tr(ρ²)`: 1 for pure states, `1/dim` for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        let m = self.as_dmatrix();
        (m * m).trace().re
    }

    /// Trace distance `(1/2)·Σ|eig(self − other)|`, in `[0, 1]`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let diff = self.as_dmatrix() - other.as_dmatrix();
        let total: f64 = hermitian_eigenvalues(&diff).iter().map(|v| v.abs()).sum();
        Ok((total / 2.0).clamp(0.0, 1.0))
    }

    /// Entrywise comparison within `eps`.
    pub fn approx_eq(&self, other: &DensityMatrix, eps: f64) -> bool {
        self.dim() == other.dim() && max_abs_diff(self.as_dmatrix(), other.as_dmatrix()) <= eps
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = Error;

    fn try_from(matrix: ComplexMatrix) -> Result<Self> {
        DensityMatrix::new(matrix)
    }
}

/// Convex mixture `Σ wᵢ ρᵢ` of density matrices.
///
/// Weights must be non-negative and sum to 1 within [`tol::NORM`]; all
/// states must share one dimension.
pub fn mix(components: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    let (first, rest) = components.split_first().ok_or(Error::EmptyMixture)?;
    let dim = first.1.dim();
    let mut sum = 0.0;
    for (weight, state) in components {
        if *weight < 0.0 {
            return Err(Error::NegativeWeight { weight: *weight });
        }
        if state.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: state.dim(),
            });
        }
        sum += weight;
    }
    if (sum - 1.0).abs() > tol::NORM {
        return Err(Error::WeightSum { sum });
    }
    let mut m = first.1.as_dmatrix().scale(first.0);
    for (weight, state) in rest {
        m += state.as_dmatrix().scale(*weight);
    }
    Ok(DensityMatrix::from_valid(m))
}
