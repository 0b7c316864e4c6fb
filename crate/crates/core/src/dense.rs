//! Small row-major complex matrices used as the numerical oracle.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the dimension of any dense matrix or state vector.
pub const DEFAULT_DENSE_BOUND: u64 = 4096;

pub fn check_dense_bound(dim: u64, bound: u64) -> Result<()> {
    if dim > bound {
        return Err(Error::DenseBoundExceeded { dim, bound });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        DenseOperator { dim, data }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        DenseOperator { dim, data: rows.iter().flatten().copied().collect() }
    }

    /// Real-valued convenience constructor, mostly for tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn matmul(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = DenseOperator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> DenseOperator {
        DenseOperator::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn scale(&self, s: Complex64) -> DenseOperator {
        DenseOperator { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    /// `self ⊗ rhs`, with `self` indexing the more significant digit.
    pub fn kron(&self, rhs: &DenseOperator) -> DenseOperator {
        let (a, b) = (self.dim, rhs.dim);
        DenseOperator::from_fn(a * b, |r, c| self.get(r / b, c / b) * rhs.get(r % b, c % b))
    }

    /// `U·self·U†`.
    pub fn conjugate_by(&self, u: &DenseOperator) -> DenseOperator {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.data[r * self.dim..(r + 1) * self.dim].iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius inner product `⟨self, other⟩ = tr(self† other)`.
    pub fn inner(&self, other: &DenseOperator) -> Complex64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `max |U U† − 1|` entrywise.
    pub fn unitarity_residual(&self) -> f64 {
        self.matmul(&self.adjoint()).max_abs_diff(&DenseOperator::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() < tol
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).norm() < tol))
    }

    /// Row-major index of the entry with the largest modulus.
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.data.iter().enumerate() {
            if v.norm() > self.data[best].norm() {
                best = i;
            }
        }
        best
    }

    /// `self = λ·other` for a unit `λ`, taken from the largest entry of `other`;
    /// returns the residual `max |self − λ·other|`.
    pub fn projective_residual(&self, other: &DenseOperator) -> Result<f64> {
        assert_eq!(self.dim, other.dim);
        let idx = other.argmax_abs();
        let denom = other.data[idx];
        if denom.norm() < 1e-300 {
            return Err(Error::Internal("projective comparison against a zero matrix".into()));
        }
        let lambda = self.data[idx] / denom;
        let lambda = if lambda.norm() > 0.0 { lambda / lambda.norm() } else { lambda };
        Ok(self.max_abs_diff(&other.scale(lambda)))
    }

    /// Minimum over unit `λ` of `‖self − λ·other‖_F`.
    pub fn projective_distance(&self, other: &DenseOperator) -> f64 {
        let a = self.frobenius_norm().powi(2);
        let b = other.frobenius_norm().powi(2);
        let cross = other.inner(self).norm();
        (a + b - 2.0 * cross).max(0.0).sqrt()
    }

    /// Divides by the phase of the first entry (row-major) whose modulus
    /// exceeds `eps`, making that entry real and positive.
    pub fn phase_canonical(&self, eps: f64) -> DenseOperator {
        match self.data.iter().find(|v| v.norm() > eps) {
            Some(&v) => self.scale(v.conj() / v.norm()),
            None => self.clone(),
        }
    }

    /// Hashable key of the entries rounded to a grid of spacing `grid`.
    pub fn grid_key(&self, grid: f64) -> Vec<(i64, i64)> {
        self.data.iter().map(|v| ((v.re / grid).round() as i64, (v.im / grid).round() as i64)).collect()
    }

    /// Rows of comma-separated `re+im i` entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| format_complex(self.get(r, c))).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Inverse of [`DenseOperator::to_text`].
    pub fn parse_text(text: &str) -> Result<DenseOperator> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|t| parse_complex(t.trim()).ok_or_else(|| Error::Parse { line: i + 1, message: format!("bad entry `{t}`") }))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse { line: 0, message: "matrix is not square".into() });
        }
        Ok(DenseOperator::from_rows(&rows))
    }
}

pub fn format_complex(v: Complex64) -> String {
    let re = if v.re == 0.0 { 0.0 } else { v.re };
    let im = if v.im == 0.0 { 0.0 } else { v.im };
    if im.is_sign_negative() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

pub fn parse_complex(s: &str) -> Option<Complex64> {
    let body = s.strip_suffix('i')?;
    // The sign separating the parts is the last '+' or '-' not at the start
    // and not inside an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].parse().ok()?;
    Some(Complex64::new(re, im))
}

/// `⊗_i ops[i]`, qudit 0 most significant.
pub fn kron_all(ops: &[DenseOperator]) -> DenseOperator {
    ops.iter().skip(1).fold(ops.first().cloned().unwrap_or_else(|| DenseOperator::identity(1)), |acc, m| acc.kron(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_ordering() {
        let x = DenseOperator::from_real_rows(&[&[0., 1.], &[1., 0.]]);
        let i = DenseOperator::identity(2);
        let xi = x.kron(&i);
        // X on the most significant qubit maps |00> to |10> = index 2.
        assert_eq!(xi.get(2, 0), c(1.0, 0.0));
        assert_eq!(kron_all(&[x.clone(), i.clone()]), xi);
    }

    #[test]
    fn text_round_trip() {
        let m = DenseOperator::from_rows(&[vec![c(0.5, -0.25), c(1e-20, 3.0)], vec![c(-1.0, 0.0), c(0.0, -1.0)]]);
        let back = DenseOperator::parse_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert_eq!(format_complex(c(1.0, -0.5)), "1-0.5i");
        assert_eq!(format_complex(c(-0.0, 0.0)), "0+0i");
    }

    #[test]
    fn projective_helpers() {
        let h = DenseOperator::from_real_rows(&[&[1., 1.], &[1., -1.]]).scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let rotated = h.scale(Complex64::cis(0.7));
        assert!(rotated.projective_residual(&h).unwrap() < 1e-15);
        assert!(rotated.projective_distance(&h) < 1e-7);
        assert_eq!(rotated.phase_canonical(1e-9).grid_key(1e-9), h.phase_canonical(1e-9).grid_key(1e-9));
        let x = DenseOperator::from_real_rows(&[&[0., 1.], &[1., 0.]]);
        let z = DenseOperator::from_real_rows(&[&[1., 0.], &[0., -1.]]);
        assert!(x.projective_residual(&z).unwrap() > 0.5);
        assert!((x.projective_distance(&z) - 2.0).abs() < 1e-12);
    }
}
