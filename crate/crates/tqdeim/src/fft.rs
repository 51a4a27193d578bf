//! Fourier transport along the third dimension and the operations that
//! live there: facewise multiplication, the t-product, and the t-spectral
//! norm.
//!
//! Convention: unnormalized forward DFT, `1/q`-scaled inverse. For real
//! inputs the transform is conjugate symmetric across frontal slices, so
//! per-slice work is done only for slices `0..=q/2` and mirrored.

use std::cell::Cell;

use nalgebra::DMatrix;
use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{FourierTensor3, Tensor3};

thread_local! {
    static MAC_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Thread-local multiply-add counter over the facewise-multiply path.
/// Used by cost-scaling tests; negligible overhead (one add per slice
/// product).
pub mod mac_probe {
    use super::MAC_COUNT;

    pub fn reset() {
        MAC_COUNT.with(|c| c.set(0));
    }

    /// Scalar multiply-adds spent in facewise slice products on this
    /// thread since the last [`reset`].
    pub fn multiply_adds() -> u64 {
        MAC_COUNT.with(|c| c.get())
    }
}

fn record_macs(n: u64) {
    MAC_COUNT.with(|c| c.set(c.get() + n));
}

/// Forward FFT along the third dimension.
pub fn fft3<T: Scalar>(a: &Tensor3<T>) -> FourierTensor3<T> {
    let (m, l, q) = a.dims();
    let mut out = FourierTensor3::zeros(m, l, q);
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft_forward(q);
    let stride = m * l;
    let mut buf = vec![Complex::new(T::zero(), T::zero()); q];
    let src = a.data();
    let dst = out.data_mut();
    for base in 0..stride {
        for k in 0..q {
            buf[k] = Complex::new(src[k * stride + base], T::zero());
        }
        fft.process(&mut buf);
        for k in 0..q {
            dst[k * stride + base] = buf[k];
        }
    }
    out
}

/// Inverse FFT along the third dimension, discarding the imaginary part.
///
/// Fails when the imaginary residue exceeds `1e-8 * |A|_F`, which flags
/// upstream conjugate-symmetry bugs instead of silently corrupting data.
pub fn ifft3<T: Scalar>(a: &FourierTensor3<T>) -> Result<Tensor3<T>> {
    let (m, l, q) = a.dims();
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft_inverse(q);
    let stride = m * l;
    let scale = T::one() / T::from_f64_lossy(q as f64);
    let mut buf = vec![Complex::new(T::zero(), T::zero()); q];
    let mut data = vec![T::zero(); m * l * q];
    let src = a.data();
    let mut max_imag = T::zero();
    for base in 0..stride {
        for k in 0..q {
            buf[k] = src[k * stride + base];
        }
        fft.process(&mut buf);
        for k in 0..q {
            let z = buf[k] * scale;
            max_imag = max_imag.smax(z.im.sabs());
            data[k * stride + base] = z.re;
        }
    }
    let tolerance = T::from_f64_lossy(1e-8) * a.frobenius_norm();
    if max_imag > tolerance {
        return Err(Error::ImaginaryResidue {
            residue: max_imag.as_f64(),
            tolerance: tolerance.as_f64(),
        });
    }
    Tensor3::from_data(m, l, q, data)
}

/// out += a * b on row-major slice data (a: m x inner, b: inner x n).
fn mul_slice_into<T: Scalar>(
    a: &[Complex<T>],
    b: &[Complex<T>],
    out: &mut [Complex<T>],
    m: usize,
    inner: usize,
    n: usize,
) {
    for i in 0..m {
        for k in 0..inner {
            let aik = a[i * inner + k];
            let brow = &b[k * n..(k + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                orow[j] += aik * brow[j];
            }
        }
    }
    record_macs((m * inner * n) as u64);
}

fn check_product_dims<T: Scalar>(
    (am, al, aq): (usize, usize, usize),
    (bm, bl, bq): (usize, usize, usize),
) -> Result<()> {
    let _ = bl;
    if al != bm || aq != bq {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{}x{} by {}x{}x{}",
            am, al, aq, bm, bl, bq
        )));
    }
    let _ = std::marker::PhantomData::<T>;
    Ok(())
}

/// Frontal-slice-wise matrix product of two Fourier-domain tensors
/// (every slice computed; no symmetry assumption).
pub fn facewise_multiply<T: Scalar>(
    a: &FourierTensor3<T>,
    b: &FourierTensor3<T>,
) -> Result<FourierTensor3<T>> {
    check_product_dims::<T>(a.dims(), b.dims())?;
    let (m, inner, q) = a.dims();
    let n = b.dims().1;
    let mut out = FourierTensor3::zeros(m, n, q);
    for k in 0..q {
        let (ad, bd) = (a.slice_data(k), b.slice_data(k));
        mul_slice_into(ad, bd, out.slice_data_mut(k), m, inner, n);
    }
    Ok(out)
}

/// Facewise product of transforms of real tensors: slices `0..=q/2` are
/// computed, the rest filled by conjugate symmetry.
pub(crate) fn facewise_multiply_symmetric<T: Scalar>(
    a: &FourierTensor3<T>,
    b: &FourierTensor3<T>,
) -> Result<FourierTensor3<T>> {
    check_product_dims::<T>(a.dims(), b.dims())?;
    let (m, inner, q) = a.dims();
    let n = b.dims().1;
    let mut out = FourierTensor3::zeros(m, n, q);
    let half = q / 2;
    for k in 0..=half.min(q - 1) {
        let (ad, bd) = (a.slice_data(k), b.slice_data(k));
        mul_slice_into(ad, bd, out.slice_data_mut(k), m, inner, n);
    }
    for k in half + 1..q {
        let mirror = q - k;
        let ml = m * n;
        for idx in 0..ml {
            let v = out.data()[mirror * ml + idx].conj();
            out.data_mut()[k * ml + idx] = v;
        }
    }
    Ok(out)
}

/// t-product `A * B = fold(bcirc(A) . unfold(B))`, evaluated via the FFT.
pub fn t_product<T: Scalar>(a: &Tensor3<T>, b: &Tensor3<T>) -> Result<Tensor3<T>> {
    check_product_dims::<T>(a.dims(), b.dims())?;
    let ah = fft3(a);
    let bh = fft3(b);
    let ch = facewise_multiply_symmetric(&ah, &bh)?;
    ifft3(&ch)
}

/// Largest singular value of a complex matrix.
pub(crate) fn spectral_norm_complex<T: Scalar>(m: &DMatrix<Complex<T>>) -> T {
    if m.nrows() == 0 || m.ncols() == 0 {
        return T::zero();
    }
    m.singular_values()
        .iter()
        .fold(T::zero(), |acc, &s| acc.smax(s))
}

/// t-spectral norm: maximum matrix spectral norm over the Fourier-domain
/// frontal slices; equals the spectral norm of `bcirc(A)`.
pub fn t_spectral_norm<T: Scalar>(a: &Tensor3<T>) -> T {
    let ah = fft3(a);
    let q = a.depth();
    let half = q / 2;
    let mut worst = T::zero();
    for k in 0..=half.min(q - 1) {
        worst = worst.smax(spectral_norm_complex(&ah.frontal_slice(k)));
    }
    worst
}
