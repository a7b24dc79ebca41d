//! Eigenvalues of dense 4×4 complex matrices: Householder reduction to
//! upper Hessenberg form followed by explicitly shifted QR with Wilkinson
//! shifts and deflation.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix4 = [[Complex64; 4]; 4];

const N: usize = 4;
const MAX_ITER: u32 = 200;
const DEFLATION_TOL: f64 = f64::EPSILON;

pub fn zeros() -> Matrix4 {
    [[Complex64::new(0.0, 0.0); N]; N]
}

pub fn identity() -> Matrix4 {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut c = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn frobenius(a: &Matrix4) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &Matrix4) -> Complex64 {
    (0..N).map(|i| a[i][i]).sum()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(a: &Matrix4) -> Complex64 {
    let mut m = *a;
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .unwrap_or(col);
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in (col + 1)..N {
            let factor = m[r][col] / p;
            for c in col..N {
                let v = m[col][c];
                m[r][c] -= factor * v;
            }
        }
    }
    det
}

/// Reduces `a` to upper Hessenberg form by Householder similarity transforms.
pub fn hessenberg(a: &Matrix4) -> Matrix4 {
    let mut h = *a;
    for k in 0..N - 2 {
        let norm: f64 = ((k + 1)..N).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v = [Complex64::new(0.0, 0.0); N];
        for i in (k + 1)..N {
            v[i] = h[i][k];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H
        for j in 0..N {
            let s: Complex64 = ((k + 1)..N).map(|i| v[i].conj() * h[i][j]).sum();
            for i in (k + 1)..N {
                h[i][j] -= 2.0 * v[i] * s;
            }
        }
        // H <- H (I - 2vv*)
        for i in 0..N {
            let s: Complex64 = ((k + 1)..N).map(|j| h[i][j] * v[j]).sum();
            for j in (k + 1)..N {
                h[i][j] -= 2.0 * s * v[j].conj();
            }
        }
        for i in (k + 2)..N {
            h[i][k] = Complex64::new(0.0, 0.0);
        }
    }
    h
}

/// Givens pair `(c, s)` with real `c` such that
/// `[c s; -s* c] [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let r = a.norm().hypot(b.norm());
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = d - b * c / (half + disc);
    let mu2 = d - b * c / (half - disc);
    let pick = |m: Complex64| if m.is_finite() { m } else { d };
    let (m1, m2) = (pick(mu1), pick(mu2));
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Eigenvalues of a 4×4 complex matrix.
///
/// Returned in the order they deflate (bottom of the matrix first).
pub fn eig4(m: &Matrix4) -> Result<[Complex64; 4]> {
    if m.iter().flatten().any(|z| !z.is_finite()) {
        return Err(Error::EigenFailure { residual: f64::NAN });
    }
    let mut h = hessenberg(m);
    let mut eig = [Complex64::new(0.0, 0.0); N];
    let mut hi = N - 1;
    let mut iter = 0u32;
    let mut total_iter = 0u32;

    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        // Locate the start of the unreduced block ending at `hi`.
        let mut l = hi;
        while l > 0 {
            let scale = h[l - 1][l - 1].norm() + h[l][l].norm();
            let scale = if scale == 0.0 { frobenius(&h) } else { scale };
            if h[l][l - 1].norm() <= DEFLATION_TOL * scale {
                h[l][l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total_iter += 1;
        if total_iter > MAX_ITER {
            return Err(Error::EigenFailure {
                residual: h[hi][hi - 1].norm(),
            });
        }

        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[hi][hi] + Complex64::new(0.75 * h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };

        for i in l..=hi {
            h[i][i] -= mu;
        }
        let mut rots = [(1.0, Complex64::new(0.0, 0.0)); N];
        for k in l..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            rots[k] = (c, s);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = c * x + s * y;
                h[k + 1][j] = -s.conj() * x + c * y;
            }
        }
        for k in l..hi {
            let (c, s) = rots[k];
            for i in l..=(k + 1).min(hi) {
                let x = h[i][k];
                let y = h[i][k + 1];
                h[i][k] = x * c + y * s.conj();
                h[i][k + 1] = -x * s + y * c;
            }
        }
        for i in l..=hi {
            h[i][i] += mu;
        }
    }

    let residual = relative_residual(m, &eig);
    if !(residual < 1e-10) {
        return Err(Error::EigenFailure { residual });
    }
    Ok(eig)
}

/// Largest `|det(m - λI)| / (‖m‖_F + |λ|)^4` over the given eigenvalues.
pub fn relative_residual(m: &Matrix4, eig: &[Complex64; 4]) -> f64 {
    let norm = frobenius(m);
    eig.iter()
        .map(|&lambda| {
            let mut shifted = *m;
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] -= lambda;
            }
            let scale = (norm + lambda.norm()).max(f64::MIN_POSITIVE);
            determinant(&shifted).norm() / scale.powi(4)
        })
        .fold(0.0, f64::max)
}
