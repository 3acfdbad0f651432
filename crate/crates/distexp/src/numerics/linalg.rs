//! Complex channel matrices, Hermitian eigenvalues and log-det capacity.

use num_complex::Complex64;

use super::capacity_from_eigenvalues;

/// An `M_r x M_t` complex channel matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ChannelMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "dimension mismatch");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Squared Frobenius norm, equal to the eigenvalue sum of the Gram form.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Eigenvalues of the smaller Gram form (`H H^H` or `H^H H`), ascending.
pub fn gram_eigenvalues(h: &ChannelMatrix) -> Vec<f64> {
    let n = h.rows.min(h.cols);
    if n == 1 {
        // the Gram form is the scalar |h|^2
        return vec![h.frobenius_sq()];
    }
    let mut gram = vec![Complex64::new(0.0, 0.0); n * n];
    let take_rows = h.rows <= h.cols;
    for i in 0..n {
        for j in 0..=i {
            let mut acc = Complex64::new(0.0, 0.0);
            if take_rows {
                // (H H^H)_{ij} = sum_k H_{ik} conj(H_{jk})
                for k in 0..h.cols {
                    acc += h.get(i, k) * h.get(j, k).conj();
                }
            } else {
                // (H^H H)_{ij} = sum_k conj(H_{ki}) H_{kj}
                for k in 0..h.rows {
                    acc += h.get(k, i).conj() * h.get(k, j);
                }
            }
            gram[i * n + j] = acc;
            gram[j * n + i] = acc.conj();
        }
    }
    hermitian_eigenvalues(&mut gram, n)
}

/// Eigenvalues of an `n x n` Hermitian matrix (row major, destroyed),
/// ascending, by cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(a: &mut [Complex64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    if n == 1 {
        return vec![a[0].re];
    }
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().max(1e-300);
    let tol = 1e-30 * scale;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n - 1 {
            for q in p + 1..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let u = phase * (t * c); // J_{pq} entry

                // columns: col_p' = c col_p - conj(u) col_q ; col_q' = u col_p + c col_q
                for i in 0..n {
                    let xp = a[i * n + p];
                    let xq = a[i * n + q];
                    a[i * n + p] = c * xp - u.conj() * xq;
                    a[i * n + q] = u * xp + c * xq;
                }
                // rows: row_p' = c row_p - u row_q ; row_q' = conj(u) row_p + c row_q
                for j in 0..n {
                    let xp = a[p * n + j];
                    let xq = a[q * n + j];
                    a[p * n + j] = c * xp - u * xq;
                    a[q * n + j] = u.conj() * xp + c * xq;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Capacity of the channel with isotropic input split over the transmit
/// antennas: `log2 det(I + (rho / M_t) H H^H)` in bits per channel use.
pub fn log_det_capacity(h: &ChannelMatrix, rho: f64, m_t: usize) -> f64 {
    assert!(rho > 0.0, "SNR must be positive");
    capacity_from_eigenvalues(&gram_eigenvalues(h), rho, m_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{sample_channel, RngStream};
    use approx::assert_relative_eq;

    #[test]
    fn identity_and_diagonal_eigenvalues() {
        let id = ChannelMatrix::identity(2);
        let eigs = gram_eigenvalues(&id);
        assert_relative_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(eigs[1], 1.0, epsilon = 1e-12);

        let d = ChannelMatrix::from_real_diag(&[1.0, 2.0]);
        let eigs = gram_eigenvalues(&d);
        assert_relative_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(eigs[1], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn trace_identity_on_random_matrices() {
        let mut stream = RngStream::new(7, 0);
        for trial in 0..200 {
            let rows = 1 + trial % 3;
            let cols = 1 + (trial / 3) % 3;
            let h = sample_channel(cols, rows, &mut stream);
            let eigs = gram_eigenvalues(&h);
            let sum: f64 = eigs.iter().sum();
            assert_relative_eq!(sum, h.frobenius_sq(), max_relative = 1e-12);
            assert!(eigs.iter().all(|&l| l >= -1e-12));
        }
    }

    #[test]
    fn capacity_examples() {
        let id = ChannelMatrix::identity(2);
        assert_relative_eq!(
            log_det_capacity(&id, 3.0, 2),
            2.0 * 2.5f64.log2(),
            max_relative = 1e-12
        );
        let zero = ChannelMatrix::zeros(2, 2);
        assert_eq!(log_det_capacity(&zero, 10.0, 2), 0.0);
    }

    #[test]
    fn capacity_monotone_in_snr() {
        let mut stream = RngStream::new(12, 0);
        for _ in 0..50 {
            let h = sample_channel(2, 3, &mut stream);
            let mut prev = 0.0;
            for i in 1..=40 {
                let rho = i as f64;
                let c = log_det_capacity(&h, rho, 2);
                assert!(c >= prev - 1e-12);
                prev = c;
            }
        }
    }
}
