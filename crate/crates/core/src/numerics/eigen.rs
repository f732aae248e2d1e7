use super::SymmetricMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order and, optionally, the matching orthonormal
/// eigenvectors stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    vectors: Option<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    /// Eigenvector `k`, if vectors were requested.
    pub fn vector(&self, k: usize) -> Option<&[f64]> {
        let n = self.values.len();
        self.vectors.as_ref().map(|v| &v[k * n..(k + 1) * n])
    }
}

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Rotations are accumulated as corrections to the diagonal and off-diagonal
/// elements are dropped once they fall below the rounding level of both
/// diagonal entries they couple, which gives small eigenvalues and
/// eigenvalue differences to high relative accuracy. Exactly zero couplings
/// are never rotated, so block-diagonal input is solved block by block.
pub fn eig_symmetric(a: &SymmetricMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidInput("eigenproblem of dimension 0".into()));
    }
    let mut m = a.to_dense();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    let mut d: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p * n + q].abs())
            .sum();
        if off == 0.0 {
            converged = true;
            break;
        }
        let tresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    m[p * n + q] = 0.0;
                } else if apq.abs() > tresh {
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            -t
                        } else {
                            t
                        }
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    m[p * n + q] = 0.0;
                    let rotate = |m: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                        let g = m[i * n + j];
                        let h = m[k * n + l];
                        m[i * n + j] = g - s * (h + g * tau);
                        m[k * n + l] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut m, j, p, j, q);
                    }
                    for j in p + 1..q {
                        rotate(&mut m, p, j, j, q);
                    }
                    for j in q + 1..n {
                        rotate(&mut m, p, j, q, j);
                    }
                    if let Some(v) = v.as_mut() {
                        for j in 0..n {
                            rotate(v, j, p, j, q);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            dim: n,
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| d[i]).collect();
    // `v` holds eigenvectors as columns of a row-major matrix; repack them
    // column-major in sorted order.
    let vectors = v.map(|v| {
        let mut out = Vec::with_capacity(n * n);
        for &k in &order {
            out.extend((0..n).map(|row| v[row * n + k]));
        }
        out
    });
    Ok(EigenDecomposition { values, vectors })
}
