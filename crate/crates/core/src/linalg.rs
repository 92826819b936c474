//! Dense complex linear algebra for small multipartite systems: tensor
//! products, partial traces, a Hermitian Jacobi eigensolver, purification
//! and validated quantum-state types.
//!
//! Everything here is sized for desk-scale problems (`dim <= 256`,
//! eigenproblems `dim <= 16`); no attempt is made at sparse or large-scale
//! performance.

use num_complex::Complex64;

use crate::{Error, Result, Tolerances};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension("matrix sizes differ in add".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scaled(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `self` from its own adjoint.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `u† self u` for a unitary `u` (no unitarity check).
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<ComplexMatrix> {
        u.adjoint().mul(self)?.mul(u)
    }

    /// Column orthonormality residual `max |v†v - I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("square");
        gram.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }
}

/// Tensor (Kronecker) product with the crate's default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, Tolerances::default().dim_cap)
}

/// Tensor product; errors once the product dimension exceeds `cap`.
pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .ok_or(Error::DimensionCap { got: usize::MAX, cap })?;
    if dim > cap {
        return Err(Error::DimensionCap { got: dim, cap });
    }
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(dim);
    for ia in 0..da {
        for ja in 0..da {
            let f = a.get(ia, ja);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for ib in 0..db {
                for jb in 0..db {
                    out.set(ia * db + ib, ja * db + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues sorted in decreasing order and the matrix
/// whose k-th column is the k-th eigenvector.
///
/// Adequate and dependency-free for the `dim <= 16` problems this crate
/// works with; sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-13 (relative to the matrix scale).
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let tol = Tolerances::default();
    let defect = m.hermiticity_defect();
    if defect > tol.herm {
        return Err(Error::NotHermitian(defect));
    }
    Ok(eig_hermitian_unchecked(m))
}

/// Jacobi iteration without the hermiticity gate; the caller guarantees the
/// input is (numerically) Hermitian.
pub(crate) fn eig_hermitian_unchecked(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = m.dim();
    // Work on the Hermitian average so tiny asymmetries cannot drift.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a.set(i, i, Complex64::new(m.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let v = (m.get(i, j) + m.get(j, i).conj()).scale(0.5);
            a.set(i, j, v);
            a.set(j, i, v.conj());
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.data.iter().map(|z| z.norm()).fold(1e-300, f64::max);
    let target = 1e-13 * scale.max(1.0);

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let b = apq.norm();
                if b <= target / (n as f64) {
                    continue;
                }
                // Dephase so the (p,q) block is real symmetric, then apply
                // the classical symmetric Schur rotation.
                let phase = apq / b; // e^{i phi}
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotation R: R[p][p] = c, R[p][q] = s,
                //             R[q][p] = -s*conj(phase), R[q][q] = c*conj(phase).
                let rpp = Complex64::new(c, 0.0);
                let rpq = Complex64::new(s, 0.0);
                let rqp = -phase.conj().scale(s);
                let rqq = phase.conj().scale(c);

                // A <- R† A R: columns first, then rows.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * rpp + akq * rqp);
                    a.set(k, q, akp * rpq + akq * rqq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, rpp.conj() * apk + rqp.conj() * aqk);
                    a.set(q, k, rpq.conj() * apk + rqq.conj() * aqk);
                }
                // Clean the rotated block.
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));

                // V <- V R.
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * rpp + vkq * rqp);
                    v.set(k, q, vkp * rpq + vkq * rqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(j, j)
            .re
            .partial_cmp(&a.get(i, i).re)
            .expect("finite eigenvalues")
    });
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vecs.set(row, col, v.get(row, src));
        }
    }
    (vals, vecs)
}

/// Eigenvalue string of a density matrix: nonnegative, decreasing, unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates a decreasing nonnegative string summing to 1.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::default();
        if values.is_empty() {
            return Err(Error::BadSpectrum("empty".into()));
        }
        for w in values.windows(2) {
            if w[1] > w[0] + tol.maj {
                return Err(Error::BadSpectrum(format!(
                    "not in decreasing order: {} followed by {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&worst) = values
            .iter()
            .filter(|v| **v < 0.0)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            if worst < -tol.psd {
                return Err(Error::BadSpectrum(format!("negative entry {worst}")));
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne((sum - 1.0).abs()));
        }
        Ok(Spectrum { values })
    }

    /// Sorts the entries into decreasing order, then validates.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite spectrum entries"));
        Spectrum::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest eigenvalue (last entry, clamped at zero).
    pub fn lowest(&self) -> f64 {
        self.values[self.values.len() - 1].max(0.0)
    }
}

/// Dense density matrix with the tensor-factor dimensions it lives on.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates the three density-matrix invariants (hermiticity within
    /// `tol.herm`, eigenvalues above `-tol.psd`, trace within `tol.trace`
    /// of 1) and the factor-dimension product. Each violation is reported
    /// distinctly with its magnitude.
    pub fn with_tolerances(
        matrix: ComplexMatrix,
        dims: Vec<usize>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Dimension("factor dimensions must be positive".into()));
        }
        let prod: usize = dims.iter().product();
        if prod != matrix.dim() {
            return Err(Error::Dimension(format!(
                "factor dimensions {:?} have product {}, matrix is {}x{}",
                dims,
                prod,
                matrix.dim(),
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol.herm {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::TraceNotOne(((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt()));
        }
        let (vals, _) = eig_hermitian_unchecked(&matrix);
        let lowest = vals.last().copied().unwrap_or(0.0);
        if lowest < -tol.psd {
            return Err(Error::NotPositive(-lowest));
        }
        Ok(DensityMatrix { matrix, dims })
    }

    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::default())
    }

    /// Single-qubit state `diag(1-lam, lam)` in the computational basis.
    pub fn qubit_diag(lam: f64) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(&[1.0 - lam, lam]), vec![2])
    }

    /// `diag(values)` viewed as a state on the given factors.
    pub fn from_diag(values: &[f64], dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(values), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Eigenvalues in decreasing order, as a validated spectrum.
    pub fn spectrum(&self) -> Spectrum {
        let (vals, _) = eig_hermitian_unchecked(&self.matrix);
        let clamped: Vec<f64> = vals.iter().map(|v| v.max(0.0)).collect();
        let sum: f64 = clamped.iter().sum();
        Spectrum::new(clamped.iter().map(|v| v / sum).collect()).expect("validated density")
    }

    /// Smallest eigenvalue.
    pub fn lowest_eigenvalue(&self) -> f64 {
        let (vals, _) = eig_hermitian_unchecked(&self.matrix);
        *vals.last().expect("nonempty")
    }

    /// Traces out every factor not listed in `keep` (0-based factor
    /// indices). The kept factors stay in their original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::Index("keep set must be nonempty".into()));
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        if keep_sorted.len() != keep.len() {
            return Err(Error::Index("duplicate factor index in keep set".into()));
        }
        if let Some(&bad) = keep_sorted.iter().find(|&&i| i >= n) {
            return Err(Error::Index(format!(
                "factor index {bad} out of range for {n} factors"
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|i| !keep_sorted.contains(i)).collect();

        // Strides of each factor inside the flat big-endian index.
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }

        let keep_dims: Vec<usize> = keep_sorted.iter().map(|&i| self.dims[i]).collect();
        let out_dim: usize = keep_dims.iter().product();
        let trace_dims: Vec<usize> = traced.iter().map(|&i| self.dims[i]).collect();
        let trace_count: usize = trace_dims.iter().product::<usize>().max(1);

        // Offset of each kept multi-index / traced multi-index in the flat
        // index, tabulated once.
        let offsets = |factors: &[usize], dims: &[usize], count: usize| -> Vec<usize> {
            let mut out = Vec::with_capacity(count);
            for mut idx in 0..count {
                let mut off = 0;
                for pos in (0..factors.len()).rev() {
                    off += (idx % dims[pos]) * strides[factors[pos]];
                    idx /= dims[pos];
                }
                out.push(off);
            }
            out
        };
        let keep_offsets = offsets(&keep_sorted, &keep_dims, out_dim);
        let trace_offsets = offsets(&traced, &trace_dims, trace_count);

        let mut out = ComplexMatrix::zeros(out_dim);
        for (i, &oi) in keep_offsets.iter().enumerate() {
            for (j, &oj) in keep_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &ot in &trace_offsets {
                    acc += self.matrix.get(oi + ot, oj + ot);
                }
                out.set(i, j, acc);
            }
        }
        DensityMatrix::new(out, keep_dims)
    }

    /// Purification `|Psi> = sum_k sqrt(lam_k) |v_k> ⊗ |k>` with the
    /// canonical ancilla basis; the ancilla is appended as one factor of
    /// the full matrix dimension.
    pub fn purify(&self) -> PureState {
        let (vals, vecs) = eig_hermitian_unchecked(&self.matrix);
        let d = self.matrix.dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            let w = vals[k].max(0.0).sqrt();
            if w == 0.0 {
                continue;
            }
            for row in 0..d {
                amps[row * d + k] = vecs.get(row, k).scale(w);
            }
        }
        let mut dims = self.dims.clone();
        dims.push(d);
        PureState::new(amps, dims).expect("purification is normalized")
    }
}

/// Normalized state vector with its tensor-factor dimensions.
#[derive(Debug, Clone)]
pub struct PureState {
    amps: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amps: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let tol = Tolerances::default();
        let prod: usize = dims.iter().product();
        if dims.is_empty() || prod != amps.len() {
            return Err(Error::Dimension(format!(
                "factor dimensions {:?} do not match amplitude count {}",
                dims,
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne((norm - 1.0).abs()));
        }
        Ok(PureState { amps, dims })
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(dims: Vec<usize>, index: usize) -> Result<Self> {
        let prod: usize = dims.iter().product();
        if index >= prod {
            return Err(Error::Index(format!("basis index {index} out of {prod}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); prod];
        amps[index] = Complex64::new(1.0, 0.0);
        PureState::new(amps, dims)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Projector `|psi><psi|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.amps.len();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        DensityMatrix::new(m, self.dims.clone()).expect("projector of a unit vector")
    }

    /// Marginal on one factor, computed from the amplitudes without
    /// materializing the full projector.
    pub fn marginal(&self, factor: usize) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if factor >= n {
            return Err(Error::Index(format!(
                "factor index {factor} out of range for {n} factors"
            )));
        }
        let d = self.dims[factor];
        let stride: usize = self.dims[factor + 1..].iter().product();
        let outer = self.amps.len() / (d * stride);
        let mut m = ComplexMatrix::zeros(d);
        for a in 0..d {
            for b in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for hi in 0..outer {
                    let base = hi * d * stride;
                    for lo in 0..stride {
                        acc += self.amps[base + a * stride + lo]
                            * self.amps[base + b * stride + lo].conj();
                    }
                }
                m.set(a, b, acc);
            }
        }
        DensityMatrix::new(m, vec![d])
    }

    /// Applies a `d x d` unitary to a single tensor factor in place.
    pub fn apply_local_unitary(&mut self, factor: usize, u: &ComplexMatrix) -> Result<()> {
        let n = self.dims.len();
        if factor >= n {
            return Err(Error::Index(format!(
                "factor index {factor} out of range for {n} factors"
            )));
        }
        let d = self.dims[factor];
        if u.dim() != d {
            return Err(Error::Dimension(format!(
                "unitary is {}x{}, factor {factor} has dimension {d}",
                u.dim(),
                u.dim()
            )));
        }
        let stride: usize = self.dims[factor + 1..].iter().product();
        let outer = self.amps.len() / (d * stride);
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        for hi in 0..outer {
            let base = hi * d * stride;
            for lo in 0..stride {
                for (a, slot) in scratch.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..d {
                        acc += u.get(a, b) * self.amps[base + b * stride + lo];
                    }
                    *slot = acc;
                }
                for a in 0..d {
                    self.amps[base + a * stride + lo] = scratch[a];
                }
            }
        }
        Ok(())
    }
}

/// Checks the density-matrix invariants and wraps the matrix on success;
/// the error distinguishes which invariant failed and by how much.
pub fn validate_density(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<DensityMatrix> {
    DensityMatrix::new(matrix, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeededStream;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(dim: usize, s: &mut SeededStream) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, c(s.gaussian(), s.gaussian()));
            }
        }
        m
    }

    fn random_hermitian(dim: usize, s: &mut SeededStream) -> ComplexMatrix {
        let m = random_matrix(dim, s);
        m.add(&m.adjoint()).unwrap().scaled(c(0.5, 0.0))
    }

    #[test]
    fn kron_identity_and_diag() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let p = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let k = kron(&p, &p).unwrap();
        assert_eq!(k, ComplexMatrix::from_diag(&[1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_matches_index_formula() {
        let mut s = SeededStream::new(11);
        let a = random_matrix(2, &mut s);
        let b = random_matrix(2, &mut s);
        let k = kron(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    for m in 0..2 {
                        let expect = a.get(i, j) * b.get(l, m);
                        assert!((k.get(2 * i + l, 2 * j + m) - expect).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_respects_dimension_cap() {
        let m = ComplexMatrix::identity(16);
        let k = kron(&m, &m).unwrap(); // 256 is exactly the cap
        assert_eq!(k.dim(), 256);
        let err = kron(&k, &ComplexMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { got: 512, cap: 256 }));
    }

    #[test]
    fn partial_trace_bell_state() {
        let inv = 1.0 / 2f64.sqrt();
        let bell = PureState::new(
            vec![c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)],
            vec![2, 2],
        )
        .unwrap();
        let rho = bell.to_density();
        let a = rho.partial_trace(&[0]).unwrap();
        assert!(a.matrix().max_abs_diff(&ComplexMatrix::identity(2).scaled(c(0.5, 0.0))) < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        let mut s = SeededStream::new(3);
        let sa = crate::numerics::random_fixed_spectrum(
            &Spectrum::new(vec![0.8, 0.2]).unwrap(),
            &mut s,
        );
        let sb = crate::numerics::random_fixed_spectrum(
            &Spectrum::new(vec![0.6, 0.4]).unwrap(),
            &mut s,
        );
        let joint = DensityMatrix::new(
            kron(sa.matrix(), sb.matrix()).unwrap(),
            vec![2, 2],
        )
        .unwrap();
        let back = joint.partial_trace(&[0]).unwrap();
        assert!(back.matrix().max_abs_diff(sa.matrix()) < 1e-12);
        let back_b = joint.partial_trace(&[1]).unwrap();
        assert!(back_b.matrix().max_abs_diff(sb.matrix()) < 1e-12);
    }

    // Independent reduction of a two-qubit state by direct summation over
    // basis indices, used as the oracle for partial_trace.
    fn naive_first_qubit(rho: &DensityMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = c(0.0, 0.0);
                for k in 0..2 {
                    acc += rho.matrix().get(2 * a + k, 2 * b + k);
                }
                out.set(a, b, acc);
            }
        }
        out
    }

    #[test]
    fn partial_trace_matches_naive_reduction() {
        let mut s = SeededStream::new(17);
        for _ in 0..20 {
            let spec = Spectrum::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
            let rho = crate::numerics::random_fixed_spectrum(&spec, &mut s);
            let rho = DensityMatrix::new(rho.matrix().clone(), vec![2, 2]).unwrap();
            let kept = rho.partial_trace(&[0]).unwrap();
            assert!((kept.matrix().trace().re - 1.0).abs() < 1e-12);
            assert!(kept.matrix().max_abs_diff(&naive_first_qubit(&rho)) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_chaining_agrees() {
        let mut s = SeededStream::new(5);
        let h = random_hermitian(8, &mut s);
        let (_, v) = eig_hermitian(&h).unwrap();
        let rho = DensityMatrix::new(
            ComplexMatrix::from_diag(&[0.3, 0.2, 0.15, 0.1, 0.1, 0.05, 0.05, 0.05])
                .conjugate_by(&v.adjoint())
                .unwrap(),
            vec![2, 2, 2],
        )
        .unwrap();
        let once = rho.partial_trace(&[0]).unwrap();
        let chained = rho
            .partial_trace(&[0, 2])
            .unwrap()
            .partial_trace(&[0])
            .unwrap();
        assert!(once.matrix().max_abs_diff(chained.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_index() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(4).scaled(c(0.25, 0.0)),
            vec![2, 2],
        )
        .unwrap();
        assert!(matches!(
            rho.partial_trace(&[2]),
            Err(Error::Index(_))
        ));
        assert!(matches!(rho.partial_trace(&[]), Err(Error::Index(_))));
    }

    #[test]
    fn eig_diagonal_cases() {
        let (vals, _) = eig_hermitian(&ComplexMatrix::from_diag(&[0.1, 0.7, 0.2, 0.0])).unwrap();
        assert_eq!(vals, vec![0.7, 0.2, 0.1, 0.0]);
        let (vals, _) =
            eig_hermitian(&ComplexMatrix::identity(4).scaled(c(0.25, 0.0))).unwrap();
        assert!(vals.iter().all(|v| (v - 0.25).abs() < 1e-15));
    }

    #[test]
    fn eig_reconstructs_random_hermitians() {
        let mut s = SeededStream::new(29);
        for dim in [2usize, 3, 5, 8, 13, 16] {
            let h = random_hermitian(dim, &mut s);
            let (vals, vecs) = eig_hermitian(&h).unwrap();
            assert!(vecs.orthonormality_defect() < 1e-10);
            let lam = ComplexMatrix::from_diag(&vals);
            let rebuilt = vecs.mul(&lam).unwrap().mul(&vecs.adjoint()).unwrap();
            assert!(rebuilt.max_abs_diff(&h) < 1e-10, "dim {dim}");
            for w in vals.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn purify_pure_state() {
        let psi = PureState::new(vec![c(0.6, 0.0), c(0.8, 0.0)], vec![2]).unwrap();
        let rho = psi.to_density();
        let purified = rho.purify();
        assert_eq!(purified.dims(), &[2, 2]);
        let ancilla = purified.to_density().partial_trace(&[1]).unwrap();
        let spec = ancilla.spectrum();
        assert!((spec.values()[0] - 1.0).abs() < 1e-10);
        assert!(spec.values()[1].abs() < 1e-10);
    }

    #[test]
    fn purify_maximally_mixed_gives_bell_type_state() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(2).scaled(c(0.5, 0.0)),
            vec![2],
        )
        .unwrap();
        let p = rho.purify();
        let sys = p.to_density().partial_trace(&[0]).unwrap();
        let anc = p.to_density().partial_trace(&[1]).unwrap();
        let half = ComplexMatrix::identity(2).scaled(c(0.5, 0.0));
        assert!(sys.matrix().max_abs_diff(&half) < 1e-10);
        assert!(anc.matrix().max_abs_diff(&half) < 1e-10);
    }

    #[test]
    fn purify_round_trip_random() {
        let mut s = SeededStream::new(41);
        let spec = Spectrum::new(vec![0.5, 0.3, 0.15, 0.05]).unwrap();
        for _ in 0..10 {
            let rho = crate::numerics::random_fixed_spectrum(&spec, &mut s);
            let pure = rho.purify();
            let back = pure.to_density().partial_trace(&[0]).unwrap();
            assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-10);
        }
    }

    #[test]
    fn validate_density_reports_each_invariant() {
        assert!(validate_density(
            ComplexMatrix::identity(4).scaled(c(0.25, 0.0)),
            vec![2, 2]
        )
        .is_ok());

        let err =
            validate_density(ComplexMatrix::from_diag(&[1.5, -0.5, 0.0, 0.0]), vec![4])
                .unwrap_err();
        match err {
            Error::NotPositive(mag) => assert!((mag - 0.5).abs() < 1e-12),
            other => panic!("expected positivity violation, got {other:?}"),
        }

        let err = validate_density(
            ComplexMatrix::from_diag(&[0.5, 0.4, 0.0, 0.0]),
            vec![4],
        )
        .unwrap_err();
        match err {
            Error::TraceNotOne(mag) => assert!((mag - 0.1).abs() < 1e-12),
            other => panic!("expected trace violation, got {other:?}"),
        }

        let mut skew = ComplexMatrix::from_diag(&[0.5, 0.5]);
        skew.set(0, 1, c(0.3, 0.0));
        let err = validate_density(skew, vec![2]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian(_)));
    }

    #[test]
    fn marginal_matches_partial_trace() {
        let mut s = SeededStream::new(7);
        let psi = crate::numerics::random_haar_pure(&[2, 2, 2], &mut s);
        for f in 0..3 {
            let direct = psi.marginal(f).unwrap();
            let via_density = psi.to_density().partial_trace(&[f]).unwrap();
            assert!(direct.matrix().max_abs_diff(via_density.matrix()) < 1e-12);
        }
    }

    #[test]
    fn local_unitary_rotates_marginal() {
        let mut s = SeededStream::new(9);
        let mut psi = crate::numerics::random_haar_pure(&[2, 2], &mut s);
        let u = crate::numerics::random_haar_unitary(2, &mut s);
        let before = psi.marginal(0).unwrap();
        psi.apply_local_unitary(0, &u).unwrap();
        let after = psi.marginal(0).unwrap();
        let expect = u
            .mul(before.matrix())
            .unwrap()
            .mul(&u.adjoint())
            .unwrap();
        assert!(after.matrix().max_abs_diff(&expect) < 1e-12);
    }
}
