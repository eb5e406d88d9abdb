use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::linalg::{householder_qr_econ, svd_values, DenseMatrix};

/// Distortion of a sketch on a subspace, from the extreme singular values
/// of `S Q` for an orthonormal basis `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport {
    pub epsilon: f64,
    pub sigma_max: f64,
    pub sigma_min: f64,
}

const ORTHONORMAL_TOL: f64 = 1e-10;

pub fn measure_distortion<E: Embedding + ?Sized>(
    s: &E,
    basis_q: &DenseMatrix,
) -> Result<DistortionReport> {
    let deviation = basis_q.orthonormality_defect();
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    let sv = svd_values(&s.apply_dense(basis_q)?)?;
    let sigma_max = sv[0];
    let sigma_min = sv[sv.len() - 1];
    Ok(DistortionReport {
        epsilon: (sigma_max - 1.0).max(1.0 - sigma_min).max(0.0),
        sigma_max,
        sigma_min,
    })
}

/// Orthonormal basis for the column span of a full-rank tall matrix.
pub fn range_basis(a: &DenseMatrix) -> Result<DenseMatrix> {
    Ok(householder_qr_econ(a)?.q)
}
