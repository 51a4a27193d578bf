//! Dense third-order tensor containers and the transform-free parts of the
//! t-product algebra: fold/unfold, block circulant, transpose, identity,
//! Frobenius norm, and row sampling.
//!
//! Layout is frontal-slice major, each slice row-major: entry `(i, j, k)`
//! of an `m x l x q` tensor lives at `k*m*l + i*l + j`. The `.t3b` file
//! format mirrors this layout byte for byte.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Real third-order tensor of shape `m x l x q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3<T: Scalar> {
    m: usize,
    l: usize,
    q: usize,
    data: Vec<T>,
}

impl<T: Scalar> Tensor3<T> {
    pub fn zeros(m: usize, l: usize, q: usize) -> Self {
        Self {
            m,
            l,
            q,
            data: vec![T::zero(); m * l * q],
        }
    }

    /// Build from raw slice-major data. Fails if the length is not `m*l*q`.
    pub fn from_data(m: usize, l: usize, q: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != m * l * q {
            return Err(Error::DimensionMismatch(format!(
                "data length {} does not match {}x{}x{}",
                data.len(),
                m,
                l,
                q
            )));
        }
        Ok(Self { m, l, q, data })
    }

    /// Stack frontal slices (all `m x l`) along the third dimension.
    pub fn from_frontal_slices(slices: &[DMatrix<T>]) -> Result<Self> {
        let q = slices.len();
        if q == 0 {
            return Err(Error::DimensionMismatch("no frontal slices".into()));
        }
        let (m, l) = (slices[0].nrows(), slices[0].ncols());
        let mut out = Self::zeros(m, l, q);
        for (k, s) in slices.iter().enumerate() {
            if s.nrows() != m || s.ncols() != l {
                return Err(Error::DimensionMismatch(format!(
                    "frontal slice {} is {}x{}, expected {}x{}",
                    k + 1,
                    s.nrows(),
                    s.ncols(),
                    m,
                    l
                )));
            }
            out.set_frontal_slice(k, s);
        }
        Ok(out)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.l, self.q)
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.l
    }

    pub fn depth(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> T {
        self.data[k * self.m * self.l + i * self.l + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        self.data[k * self.m * self.l + i * self.l + j] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Copy of frontal slice `k` as a matrix.
    pub fn frontal_slice(&self, k: usize) -> DMatrix<T> {
        let ml = self.m * self.l;
        DMatrix::from_row_slice(self.m, self.l, &self.data[k * ml..(k + 1) * ml])
    }

    pub fn set_frontal_slice(&mut self, k: usize, s: &DMatrix<T>) {
        for i in 0..self.m {
            for j in 0..self.l {
                self.set(i, j, k, s[(i, j)]);
            }
        }
    }

    /// Lateral slice `j` as an `m x 1 x q` tensor.
    pub fn lateral_slice(&self, j: usize) -> Tensor3<T> {
        let mut out = Tensor3::zeros(self.m, 1, self.q);
        for k in 0..self.q {
            for i in 0..self.m {
                out.set(i, 0, k, self.at(i, j, k));
            }
        }
        out
    }

    /// Sub-tensor over row range `rows` and lateral range `cols`, all slices.
    pub fn subtensor(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Tensor3<T> {
        let mut out = Tensor3::zeros(rows.len(), cols.len(), self.q);
        for k in 0..self.q {
            for (oi, i) in rows.clone().enumerate() {
                for (oj, j) in cols.clone().enumerate() {
                    out.set(oi, oj, k, self.at(i, j, k));
                }
            }
        }
        out
    }

    /// First `n` lateral slices.
    pub fn lateral_range(&self, cols: std::ops::Range<usize>) -> Tensor3<T> {
        self.subtensor(0..self.m, cols)
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for v in &self.data {
            acc += *v * *v;
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, v| acc.smax(v.sabs()))
    }

    /// Vertically stack the frontal slices into an `mq x l` matrix.
    pub fn unfold(&self) -> DMatrix<T> {
        // slice-major row-major layout is exactly the row-major unfold
        DMatrix::from_row_slice(self.m * self.q, self.l, &self.data)
    }

    /// Inverse of [`Tensor3::unfold`]: split an `mq x l` matrix into `q`
    /// frontal slices of `m` rows each.
    pub fn fold(mat: &DMatrix<T>, m: usize, q: usize) -> Result<Self> {
        if mat.nrows() != m * q {
            return Err(Error::DimensionMismatch(format!(
                "cannot fold {} rows into {} slices of {} rows",
                mat.nrows(),
                q,
                m
            )));
        }
        let l = mat.ncols();
        let mut data = Vec::with_capacity(m * l * q);
        for r in 0..m * q {
            for c in 0..l {
                data.push(mat[(r, c)]);
            }
        }
        Self::from_data(m, l, q, data)
    }

    /// Block circulant matrix: block `(i, j)` is frontal slice `(i - j) mod q`.
    pub fn bcirc(&self) -> DMatrix<T> {
        let (m, l, q) = self.dims();
        DMatrix::from_fn(m * q, l * q, |r, c| {
            let (bi, i) = (r / m, r % m);
            let (bj, j) = (c / l, c % l);
            self.at(i, j, (bi + q - bj) % q)
        })
    }

    /// Transpose every frontal slice, then reverse the order of slices
    /// 2 through q.
    pub fn t_transpose(&self) -> Tensor3<T> {
        let (m, l, q) = self.dims();
        let mut out = Tensor3::zeros(l, m, q);
        for k in 0..q {
            let src = if k == 0 { 0 } else { q - k };
            for i in 0..m {
                for j in 0..l {
                    out.set(j, i, k, self.at(i, j, src));
                }
            }
        }
        out
    }

    /// Identity tensor: first frontal slice `I_m`, remaining slices zero.
    pub fn t_identity(m: usize, q: usize) -> Tensor3<T> {
        let mut out = Tensor3::zeros(m, m, q);
        for i in 0..m {
            out.set(i, i, 0, T::one());
        }
        out
    }

    /// Extract horizontal slices (rows) in the order given by `p`.
    pub fn sample_rows(&self, p: &IndexSet) -> Result<Tensor3<T>> {
        if let Some(&bad) = p.as_slice().iter().find(|&&i| i >= self.m) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                bound: self.m,
            });
        }
        let mut out = Tensor3::zeros(p.len(), self.l, self.q);
        for k in 0..self.q {
            for (oi, &i) in p.as_slice().iter().enumerate() {
                for j in 0..self.l {
                    out.set(oi, j, k, self.at(i, j, k));
                }
            }
        }
        Ok(out)
    }

    pub fn map<F: Fn(T) -> T>(&self, f: F) -> Tensor3<T> {
        Tensor3 {
            m: self.m,
            l: self.l,
            q: self.q,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl<T: Scalar> std::ops::Sub for &Tensor3<T> {
    type Output = Tensor3<T>;

    fn sub(self, rhs: Self) -> Tensor3<T> {
        assert_eq!(self.dims(), rhs.dims(), "tensor dims must match");
        Tensor3 {
            m: self.m,
            l: self.l,
            q: self.q,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: Scalar> std::ops::Add for &Tensor3<T> {
    type Output = Tensor3<T>;

    fn add(self, rhs: Self) -> Tensor3<T> {
        assert_eq!(self.dims(), rhs.dims(), "tensor dims must match");
        Tensor3 {
            m: self.m,
            l: self.l,
            q: self.q,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

/// Relative Frobenius distance `|a - b|_F / max(|b|_F, 1e-300)`.
pub fn rel_frobenius_distance<T: Scalar>(a: &Tensor3<T>, b: &Tensor3<T>) -> T {
    let denom = b.frobenius_norm().smax(T::from_f64_lossy(1e-300));
    (a - b).frobenius_norm() / denom
}

/// Complex third-order tensor, the Fourier-domain counterpart of
/// [`Tensor3`]; same slice-major layout.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTensor3<T: Scalar> {
    m: usize,
    l: usize,
    q: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> FourierTensor3<T> {
    pub fn zeros(m: usize, l: usize, q: usize) -> Self {
        Self {
            m,
            l,
            q,
            data: vec![Complex::new(T::zero(), T::zero()); m * l * q],
        }
    }

    pub fn from_data(m: usize, l: usize, q: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != m * l * q {
            return Err(Error::DimensionMismatch(format!(
                "data length {} does not match {}x{}x{}",
                data.len(),
                m,
                l,
                q
            )));
        }
        Ok(Self { m, l, q, data })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.l, self.q)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> Complex<T> {
        self.data[k * self.m * self.l + i * self.l + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Complex<T>) {
        self.data[k * self.m * self.l + i * self.l + j] = v;
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn frontal_slice(&self, k: usize) -> DMatrix<Complex<T>> {
        let ml = self.m * self.l;
        DMatrix::from_row_slice(self.m, self.l, &self.data[k * ml..(k + 1) * ml])
    }

    pub fn set_frontal_slice(&mut self, k: usize, s: &DMatrix<Complex<T>>) {
        for i in 0..self.m {
            for j in 0..self.l {
                self.set(i, j, k, s[(i, j)]);
            }
        }
    }

    /// Raw slice data (`m*l` entries, row-major) of frontal slice `k`.
    pub(crate) fn slice_data(&self, k: usize) -> &[Complex<T>] {
        let ml = self.m * self.l;
        &self.data[k * ml..(k + 1) * ml]
    }

    pub(crate) fn slice_data_mut(&mut self, k: usize) -> &mut [Complex<T>] {
        let ml = self.m * self.l;
        &mut self.data[k * ml..(k + 1) * ml]
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc += z.norm_sqr();
        }
        acc.sqrt()
    }

    /// Worst-case deviation from conjugate symmetry between slice `k` and
    /// slice `(q - k) mod q`. Zero (to rounding) for transforms of real
    /// tensors.
    pub fn conjugate_symmetry_residue(&self) -> T {
        let (m, l, q) = self.dims();
        let mut worst = T::zero();
        for k in 0..q {
            let mirror = (q - k) % q;
            for i in 0..m {
                for j in 0..l {
                    let d = self.at(i, j, k) - self.at(i, j, mirror).conj();
                    worst = worst.smax(d.norm_sqr().sqrt());
                }
            }
        }
        worst
    }
}

/// Ordered set of distinct row indices, stored zero-based.
///
/// External artifacts (pivot files, reports, error messages) use 1-based
/// indices; conversion happens at those boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Build from zero-based indices, validating distinctness and range.
    pub fn from_zero_based(indices: Vec<usize>, bound: usize) -> Result<Self> {
        let mut seen = vec![false; bound];
        for &i in &indices {
            if i >= bound {
                return Err(Error::IndexOutOfRange {
                    index: i + 1,
                    bound,
                });
            }
            if seen[i] {
                return Err(Error::DuplicateIndex(i + 1));
            }
            seen[i] = true;
        }
        Ok(Self { indices })
    }

    /// Build from 1-based indices as they appear in files.
    pub fn from_one_based(indices: &[usize], bound: usize) -> Result<Self> {
        let mut zero = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > bound {
                return Err(Error::IndexOutOfRange { index: i, bound });
            }
            zero.push(i - 1);
        }
        Self::from_zero_based(zero, bound)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|&i| i + 1).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Sampling tensor `P` of shape `nrows x p.len() x q`: the first frontal
/// slice holds the selected identity columns, remaining slices are zero,
/// so that `P^T * A` extracts the rows listed in `p`.
pub fn sampling_tensor<T: Scalar>(p: &IndexSet, nrows: usize, q: usize) -> Tensor3<T> {
    let mut out = Tensor3::zeros(nrows, p.len(), q);
    for (j, &i) in p.as_slice().iter().enumerate() {
        out.set(i, j, 0, T::one());
    }
    out
}
