#![allow(dead_code)]

//! Shared test support: an independent dense eigen-oracle for spectral
//! norms, and seeded matrix/series generators.
//!
//! The oracle never touches the library's power-iteration path. A complex
//! Hermitian matrix `H = A + iB` embeds into the real symmetric matrix
//! `[[A, -B], [B, A]]` with the same spectrum (doubled multiplicities), so
//! the largest singular value of `M` is the square root of the top
//! eigenvalue of the embedding of `M* M`, computed by cyclic Jacobi.

use bohr_kit::matrix::ComplexMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Largest singular value via dense Jacobi eigen-decomposition.
pub fn oracle_spectral_norm(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    // Gram matrix G = M* M.
    let mut gram = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::ZERO;
            for k in 0..d {
                acc += m.get(k, i).conj() * m.get(k, j);
            }
            gram[i * d + j] = acc;
        }
    }
    // Real symmetric embedding, size 2d.
    let n = 2 * d;
    let mut a = vec![0.0f64; n * n];
    for i in 0..d {
        for j in 0..d {
            let z = gram[i * d + j];
            a[i * n + j] = z.re;
            a[i * n + (j + d)] = -z.im;
            a[(i + d) * n + j] = z.im;
            a[(i + d) * n + (j + d)] = z.re;
        }
    }
    let eigen = jacobi_eigenvalues(n, &mut a);
    eigen.into_iter().fold(0.0f64, f64::max).max(0.0).sqrt()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(n: usize, a: &mut [f64]) -> Vec<f64> {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Random dense complex matrix with entries uniform in a disk of `scale`.
pub fn random_matrix<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(
            scale * (2.0 * rng.random::<f64>() - 1.0),
            scale * (2.0 * rng.random::<f64>() - 1.0),
        )
    })
    .expect("finite entries")
}
