//! Cyclic Jacobi eigensolver for real symmetric 4x4 matrices.
//!
//! Generic and iterative; it serves as an independent cross-check of the
//! closed-form diagonalization in [`crate::model`].

use nalgebra::Matrix4;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and orthonormal eigenvectors (as columns).
pub fn brute_force_eigensystem(h: &Matrix4<f64>) -> Result<([f64; 4], Matrix4<f64>)> {
    if h.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidState("matrix has non-finite entries".into()));
    }
    let mut a = *h;
    let mut v = Matrix4::<f64>::identity();
    let scale = a.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|p| ((p + 1)..4).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Rutishauser's stable rotation angle.
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..4 {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.map(|i| a[(i, i)]);
    let mut vectors = Matrix4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok((values, vectors))
}
