//! Small dense symmetric eigensolvers.
//!
//! Everything here works on fixed-size `[[f64; N]; N]` arrays. The matrices
//! that show up in this crate are 3×3 or 4×4, so a cyclic Jacobi sweep is
//! both fast enough and unconditionally stable.

use crate::error::{Error, Result};

/// Maximum number of full Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal threshold for Jacobi convergence.
pub const JACOBI_RTOL: f64 = 1e-14;

/// Eigen-decomposition `a = Q Λ Qᵀ` with eigenvalues sorted ascending.
///
/// `vectors[k]` is the unit eigenvector belonging to `values[k]`, i.e. the
/// k-th column of `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[f64; N]; N],
}

impl<const N: usize> SymmetricEigen<N> {
    /// Rebuild `Q Λ Qᵀ`.
    pub fn reconstruct(&self) -> [[f64; N]; N] {
        let mut out = [[0.0; N]; N];
        for (k, v) in self.vectors.iter().enumerate() {
            for i in 0..N {
                for j in 0..N {
                    out[i][j] += self.values[k] * v[i] * v[j];
                }
            }
        }
        out
    }
}

fn frobenius<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Only the upper triangle is trusted; the input is symmetrised from it.
/// Converges when the off-diagonal Frobenius norm drops below
/// `JACOBI_RTOL · ‖a‖_F`.
pub fn jacobi_eigen<const N: usize>(a: &[[f64; N]; N]) -> Result<SymmetricEigen<N>> {
    let mut m = *a;
    for i in 0..N {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    if m.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut q = [[0.0; N]; N];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let scale = frobenius(&m);
    let threshold = JACOBI_RTOL * scale;
    let mut converged = scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged || off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..N {
            for r in (p + 1)..N {
                let apr = m[p][r];
                if apr == 0.0 {
                    continue;
                }
                // Rotation angle that annihilates m[p][r].
                let theta = (m[r][r] - m[p][p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..N {
                    let mkp = m[k][p];
                    let mkr = m[k][r];
                    m[k][p] = c * mkp - s * mkr;
                    m[k][r] = s * mkp + c * mkr;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mrk = m[r][k];
                    m[p][k] = c * mpk - s * mrk;
                    m[r][k] = s * mpk + c * mrk;
                }
                for row in q.iter_mut() {
                    let qp = row[p];
                    let qr = row[r];
                    row[p] = c * qp - s * qr;
                    row[r] = s * qp + c * qr;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    let values = std::array::from_fn(|k| m[order[k]][order[k]]);
    let vectors = std::array::from_fn(|k| std::array::from_fn(|i| q[i][order[k]]));
    Ok(SymmetricEigen { values, vectors })
}

/// Lower-triangular Cholesky factor `L` with `a = L Lᵀ`.
///
/// Fails with [`Error::NotPositiveDefinite`] if a pivot is not strictly
/// positive.
pub fn cholesky<const N: usize>(a: &[[f64; N]; N]) -> Result<[[f64; N]; N]> {
    let mut l = [[0.0; N]; N];
    for j in 0..N {
        let mut d = a[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[j][j] = djj;
        for i in (j + 1)..N {
            let mut s = a[j][i];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / djj;
        }
    }
    Ok(l)
}

/// Solve `L x = b` for lower-triangular `L`.
fn forward_substitute<const N: usize>(l: &[[f64; N]; N], b: &[f64; N]) -> [f64; N] {
    let mut x = [0.0; N];
    for i in 0..N {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

/// Solve `Lᵀ x = b` for lower-triangular `L`.
fn backward_substitute_transposed<const N: usize>(l: &[[f64; N]; N], b: &[f64; N]) -> [f64; N] {
    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let mut s = b[i];
        for k in (i + 1)..N {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

/// Solution of `a x = λ b x` with `b` positive definite.
///
/// Eigenvectors are `b`-orthonormal: `xᵢᵀ b xⱼ = δᵢⱼ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[f64; N]; N],
}

/// Generalized symmetric-definite eigenproblem via Cholesky reduction.
///
/// With `b = L Lᵀ` the problem becomes the standard symmetric problem for
/// `C = L⁻¹ a L⁻ᵀ`; eigenvectors `y` of `C` map back as `x = L⁻ᵀ y`.
pub fn generalized_eigen<const N: usize>(
    a: &[[f64; N]; N],
    b: &[[f64; N]; N],
) -> Result<GeneralizedEigen<N>> {
    let l = cholesky(b)?;
    // W = L⁻¹ a, column by column of a (a symmetric so rows == columns).
    let mut w = [[0.0; N]; N];
    for j in 0..N {
        let col: [f64; N] = std::array::from_fn(|i| a[i][j]);
        let sol = forward_substitute(&l, &col);
        for i in 0..N {
            w[i][j] = sol[i];
        }
    }
    // C = W L⁻ᵀ = (L⁻¹ Wᵀ)ᵀ.
    let mut c = [[0.0; N]; N];
    for i in 0..N {
        let sol = forward_substitute(&l, &w[i]);
        for j in 0..N {
            c[j][i] = sol[j];
        }
    }
    for i in 0..N {
        for j in (i + 1)..N {
            let avg = 0.5 * (c[i][j] + c[j][i]);
            c[i][j] = avg;
            c[j][i] = avg;
        }
    }
    let eig = jacobi_eigen(&c)?;
    let vectors = std::array::from_fn(|k| backward_substitute_transposed(&l, &eig.vectors[k]));
    Ok(GeneralizedEigen {
        values: eig.values,
        vectors,
    })
}

/// Inverse by Gauss–Jordan elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `rtol` times the largest entry.
pub fn invert<const N: usize>(a: &[[f64; N]; N], rtol: f64) -> Option<[[f64; N]; N]> {
    let scale = a.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m = *a;
    let mut inv = [[0.0; N]; N];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[pivot][col].abs() <= rtol * scale {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let d = m[col][col];
        for k in 0..N {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for r in 0..N {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for k in 0..N {
                        m[r][k] -= f * m[col][k];
                        inv[r][k] -= f * inv[col][k];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Determinant by LU with partial pivoting.
pub fn determinant<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut m = *a;
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col];
        for r in (col + 1)..N {
            let f = m[r][col] / m[col][col];
            for k in col..N {
                m[r][k] -= f * m[col][k];
            }
        }
    }
    det
}
