//! Small dense complex linear algebra.
//!
//! Everything here works on row-major `Complex64` storage and is sized for
//! registers of at most ten qubits (dimension 1024). The Hermitian
//! eigensolver is a cyclic Jacobi iteration; singular values come from a
//! one-sided (Hestenes) Jacobi sweep, which keeps tiny singular values
//! accurate to roughly machine precision instead of the square root of it.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Self { rows, cols, data }
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |r, c| a[r] * b[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Only the upper triangle is trusted; the matrix is symmetrised first.
    /// Eigenvalues come back ascending, eigenvectors as matching columns.
    pub fn eigh(&self) -> Eigh {
        assert!(self.is_square(), "eigh needs a square matrix");
        let n = self.rows;
        let mut a = Self::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(self[(r, r)].re, 0.0)
            } else {
                (self[(r, c)] + self[(c, r)].conj()) * 0.5
            }
        });
        let mut v = Self::identity(n);
        let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
                .map(|(r, c)| a[(r, c)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = Self::from_fn(n, n, |r, c| v[(r, order[c])]);
        Eigh { values, vectors }
    }

    /// Thin singular value decomposition `A = U Σ V†`.
    ///
    /// Returns `min(rows, cols)` singular values in descending order. Left
    /// vectors belonging to numerically zero singular values are zero.
    pub fn svd(&self) -> Svd {
        if self.rows < self.cols {
            let t = self.adjoint().svd();
            return Svd {
                values: t.values,
                left: t.right,
                right: t.left,
            };
        }
        let (m, n) = (self.rows, self.cols);
        // work column-major: cols[j] is column j
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| self.column(c)).collect();
        let mut v: Vec<Vec<Complex64>> = (0..n)
            .map(|c| (0..n).map(|r| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();

        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                    let g = gamma.norm();
                    if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let phase = (gamma / g).conj();
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for k in 0..m {
                        let a = cols[i][k];
                        let b = cols[j][k] * phase;
                        cols[i][k] = a * c - b * s;
                        cols[j][k] = a * s + b * c;
                    }
                    for k in 0..n {
                        let a = v[i][k];
                        let b = v[j][k] * phase;
                        v[i][k] = a * c - b * s;
                        v[j][k] = a * s + b * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }

        let norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
        let largest = norms.iter().cloned().fold(0.0, f64::max);
        let values: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
        let left = Self::from_fn(m, n, |r, c| {
            let i = order[c];
            if norms[i] > 1e-14 * largest.max(f64::MIN_POSITIVE) {
                cols[i][r] / norms[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let right = Self::from_fn(n, n, |r, c| v[order[c]][r]);
        Svd { values, left, right }
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigh().values.first().copied().unwrap_or(0.0)
    }
}

fn jacobi_rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let n = a.rows;
    let phase = apq / mag;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J restricted to (p, q) is diag(1, conj(phase)) · [[c, s], [-s, c]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Result of [`Matrix::eigh`].
#[derive(Clone, Debug)]
pub struct Eigh {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` belongs to `values[i]`.
    pub vectors: Matrix,
}

/// Result of [`Matrix::svd`].
#[derive(Clone, Debug)]
pub struct Svd {
    /// Descending, nonnegative.
    pub values: Vec<f64>,
    pub left: Matrix,
    pub right: Matrix,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
        a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn pauli_y_eigenvalues() {
        let y = Matrix::from_vec(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let e = y.eigh();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        // +1 eigenvector is (1, i)/√2 up to phase
        let v = e.vectors.column(1);
        assert!(((v[1] / v[0]) - c(0., 1.)).norm() < 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [1, 2, 3, 5, 16] {
            let g = random_matrix(&mut rng, dim, dim);
            let h = g.add(&g.adjoint());
            let e = h.eigh();
            let lambda = Matrix::from_fn(dim, dim, |r, col| if r == col { c(e.values[r], 0.) } else { c(0., 0.) });
            let rebuilt = &(&e.vectors * &lambda) * &e.vectors.adjoint();
            assert!(max_abs_diff(&rebuilt, &h) < 1e-12, "dim {dim}");
            let gram = &e.vectors.adjoint() * &e.vectors;
            assert!(max_abs_diff(&gram, &Matrix::identity(dim)) < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            // trace check is an independent route to the eigenvalue sum
            assert!((e.values.iter().sum::<f64>() - h.trace().re).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n) in [(4, 4), (2, 8), (8, 2), (1, 3)] {
            let a = random_matrix(&mut rng, m, n);
            let s = a.svd();
            let k = m.min(n);
            assert_eq!(s.values.len(), k);
            let mut rebuilt = Matrix::zeros(m, n);
            for i in 0..k {
                let u = s.left.column(i);
                let v = s.right.column(i);
                rebuilt = rebuilt.add(&Matrix::outer(&u, &v).scale(s.values[i]));
            }
            assert!(max_abs_diff(&rebuilt, &a) < 1e-12, "{m}x{n}");
            // Frobenius norm equals the root-sum-square of the singular values
            let fro: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
            assert!((fro - s.values.iter().map(|x| x * x).sum::<f64>()).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_keeps_exact_zeros_small() {
        // rank one 4x4
        let u = [c(0.5, 0.), c(0.5, 0.), c(0., 0.5), c(0.5, 0.)];
        let a = Matrix::outer(&u, &u);
        let s = a.svd();
        assert!((s.values[0] - 1.0).abs() < 1e-14);
        assert!(s.values[1..].iter().all(|&x| x < 1e-14));
    }
}
