//! Fourier-domain factorizations: t-SVD (full and truncated), t-QR,
//! pivoted t-QR, and the frontal-slicewise tensor inverse.
//!
//! Every factorization transforms to the Fourier domain, factors the
//! frontal slices `0..=q/2` independently (the rest follow by conjugate
//! symmetry of real inputs), and transforms back.

use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft::{fft3, ifft3, t_spectral_norm};
use crate::scalar::Scalar;
use crate::tensor::{FourierTensor3, IndexSet, Tensor3};

/// Condition threshold beyond which slicewise inverses are flagged.
pub const ILL_CONDITION_THRESHOLD: f64 = 1e12;

/// t-SVD factors `A = U * S * W^T` with `U`, `W` orthogonal and `S`
/// f-diagonal (diagonal in every Fourier frontal slice).
#[derive(Debug, Clone)]
pub struct TSvdFactors<T: Scalar> {
    pub u: Tensor3<T>,
    pub s: Tensor3<T>,
    pub w: Tensor3<T>,
}

impl<T: Scalar> TSvdFactors<T> {
    /// Number of retained lateral slices.
    pub fn rank(&self) -> usize {
        self.u.ncols()
    }

    /// `U * S * W^T`.
    pub fn reconstruct(&self) -> Result<Tensor3<T>> {
        let sw = crate::fft::t_product(&self.s, &self.w.t_transpose())?;
        crate::fft::t_product(&self.u, &sw)
    }

    /// Leading-`n` truncation (per lateral slice, exact).
    pub fn truncate(&self, n: usize) -> Result<TSvdFactors<T>> {
        let k = self.rank();
        if n == 0 || n > k {
            return Err(Error::RankOutOfRange { rank: n, max: k });
        }
        Ok(TSvdFactors {
            u: self.u.lateral_range(0..n),
            s: self.s.subtensor(0..n, 0..n),
            w: self.w.lateral_range(0..n),
        })
    }

    /// Per-Fourier-slice singular values `sigma_i(A_hat_k)`, recovered
    /// from the diagonal of the transformed `S`; `result[k][i]`.
    pub fn fourier_singular_values(&self) -> Vec<Vec<T>> {
        let sh = fft3(&self.s);
        let (k, _, q) = sh.dims();
        (0..q)
            .map(|slice| (0..k).map(|i| sh.at(i, i, slice).re.smax(T::zero())).collect())
            .collect()
    }
}

/// t-QR factors `A (* P) = Q * R`; `R` is upper triangular in every
/// Fourier frontal slice. `pivots` is present for the pivoted variant.
#[derive(Debug, Clone)]
pub struct TQrFactors<T: Scalar> {
    pub q: Tensor3<T>,
    pub r: Tensor3<T>,
    pub pivots: Option<IndexSet>,
}

fn truncated_svd_slice<T: Scalar>(
    slice: DMatrix<Complex<T>>,
    keep: usize,
) -> Result<(DMatrix<Complex<T>>, Vec<T>, DMatrix<Complex<T>>)> {
    let svd = slice
        .try_svd(true, true, T::eps(), 10_000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let u_full = svd.u.expect("u requested");
    let vt_full = svd.v_t.expect("v_t requested");
    let mut u = u_full.columns(0, keep).into_owned();
    let mut v = vt_full.rows(0, keep).adjoint();
    let sigma: Vec<T> = svd.singular_values.iter().take(keep).copied().collect();

    // phase convention: largest-magnitude entry of each left singular
    // vector is real-positive (first index on ties)
    for c in 0..keep {
        let mut best = 0usize;
        let mut best_mag = T::zero();
        for i in 0..u.nrows() {
            let mag = u[(i, c)].norm_sqr().sqrt();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag > T::zero() {
            let phase = u[(best, c)] / Complex::new(best_mag, T::zero());
            let rot = phase.conj();
            for i in 0..u.nrows() {
                u[(i, c)] *= rot;
            }
            for i in 0..v.nrows() {
                v[(i, c)] *= rot;
            }
        }
    }
    Ok((u, sigma, v))
}

/// Mirror Fourier slices `q/2+1..q` from their conjugate partners.
fn mirror_conjugate<T: Scalar>(t: &mut FourierTensor3<T>) {
    let (m, l, q) = t.dims();
    let half = q / 2;
    let ml = m * l;
    for k in half + 1..q {
        let mirror = q - k;
        for idx in 0..ml {
            let v = t.data()[mirror * ml + idx].conj();
            t.data_mut()[k * ml + idx] = v;
        }
    }
}

/// t-SVD via per-slice SVDs in the Fourier domain. When `rank` is given,
/// the factors are the leading-rank truncation.
pub fn t_svd<T: Scalar>(a: &Tensor3<T>, rank: Option<usize>) -> Result<TSvdFactors<T>> {
    let (m, l, q) = a.dims();
    let rmax = m.min(l);
    let keep = match rank {
        Some(n) => {
            if n == 0 || n > rmax {
                return Err(Error::RankOutOfRange { rank: n, max: rmax });
            }
            n
        }
        None => rmax,
    };
    let ah = fft3(a);
    let half = (q / 2).min(q - 1);
    let per_slice: Vec<_> = (0..=half)
        .into_par_iter()
        .map(|k| truncated_svd_slice(ah.frontal_slice(k), keep))
        .collect::<Result<Vec<_>>>()?;

    let mut uh = FourierTensor3::zeros(m, keep, q);
    let mut sh = FourierTensor3::zeros(keep, keep, q);
    let mut wh = FourierTensor3::zeros(l, keep, q);
    for (k, (u, sigma, v)) in per_slice.iter().enumerate() {
        uh.set_frontal_slice(k, u);
        wh.set_frontal_slice(k, v);
        for (i, &s) in sigma.iter().enumerate() {
            sh.set(i, i, k, Complex::new(s, T::zero()));
        }
    }
    mirror_conjugate(&mut uh);
    mirror_conjugate(&mut sh);
    mirror_conjugate(&mut wh);
    Ok(TSvdFactors {
        u: ifft3(&uh)?,
        s: ifft3(&sh)?,
        w: ifft3(&wh)?,
    })
}

/// t-spectral norm of the truncated singular block `S(n+1.., n+1.., :)`.
/// Zero when `n` equals the retained rank (empty tail).
pub fn t_svd_tail_spectral<T: Scalar>(factors: &TSvdFactors<T>, n: usize) -> Result<T> {
    let k = factors.rank();
    if n > k {
        return Err(Error::RankOutOfRange { rank: n, max: k });
    }
    if n == k {
        return Ok(T::zero());
    }
    Ok(t_spectral_norm(&factors.s.subtensor(n..k, n..k)))
}

/// Unpivoted t-QR: per-slice Householder QR in the Fourier domain.
pub fn t_qr<T: Scalar>(a: &Tensor3<T>) -> Result<TQrFactors<T>> {
    let (m, l, q) = a.dims();
    let r = m.min(l);
    let ah = fft3(a);
    let half = (q / 2).min(q - 1);
    let per_slice: Vec<_> = (0..=half)
        .into_par_iter()
        .map(|k| {
            let qr = ah.frontal_slice(k).qr();
            (qr.q(), qr.r())
        })
        .collect::<Vec<_>>();

    let mut qh = FourierTensor3::zeros(m, r, q);
    let mut rh = FourierTensor3::zeros(r, l, q);
    for (k, (qm, rm)) in per_slice.iter().enumerate() {
        qh.set_frontal_slice(k, qm);
        rh.set_frontal_slice(k, rm);
    }
    mirror_conjugate(&mut qh);
    mirror_conjugate(&mut rh);
    Ok(TQrFactors {
        q: ifft3(&qh)?,
        r: ifft3(&rh)?,
        pivots: None,
    })
}

/// Householder QR with greedy column pivoting. Returns thin `Q`
/// (`m x min(m,n)`), `R` (`min(m,n) x n`, upper triangular), and the full
/// column pivot sequence. Ties in residual column norms (within `1e-14`
/// relative) resolve to the smaller column index.
pub(crate) fn col_pivoted_qr<T: Scalar>(
    a: &DMatrix<Complex<T>>,
) -> (DMatrix<Complex<T>>, DMatrix<Complex<T>>, Vec<usize>) {
    let (m, n) = a.shape();
    let steps = m.min(n);
    let mut work = a.clone();
    let mut qmat = DMatrix::<Complex<T>>::identity(m, m);
    let mut piv: Vec<usize> = (0..n).collect();
    let tie_tol = T::from_f64_lossy(1e-14);

    for j in 0..steps {
        // residual column norms below row j, recomputed exactly
        let mut norms = vec![T::zero(); n - j];
        for (ci, c) in (j..n).enumerate() {
            let mut acc = T::zero();
            for i in j..m {
                acc += work[(i, c)].norm_sqr();
            }
            norms[ci] = acc.sqrt();
        }
        let max_norm = norms.iter().fold(T::zero(), |acc, &v| acc.smax(v));
        let mut pick = 0usize;
        for (ci, &v) in norms.iter().enumerate() {
            if v >= max_norm - tie_tol * max_norm {
                pick = ci;
                break;
            }
        }
        let c = j + pick;
        if c != j {
            work.swap_columns(j, c);
            piv.swap(j, c);
        }
        if max_norm == T::zero() {
            continue;
        }

        // Householder reflector for column j below row j
        let x0 = work[(j, j)];
        let xnorm = {
            let mut acc = T::zero();
            for i in j..m {
                acc += work[(i, j)].norm_sqr();
            }
            acc.sqrt()
        };
        if xnorm == T::zero() {
            continue;
        }
        let x0_mag = x0.norm_sqr().sqrt();
        let phase = if x0_mag > T::zero() {
            x0 / Complex::new(x0_mag, T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = phase * Complex::new(xnorm, T::zero());
        let mut v = vec![Complex::new(T::zero(), T::zero()); m - j];
        for i in j..m {
            v[i - j] = work[(i, j)];
        }
        v[0] += alpha;
        let vnorm_sqr: T = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if vnorm_sqr == T::zero() {
            continue;
        }
        let two_over = T::from_f64_lossy(2.0) / vnorm_sqr;

        // apply H = I - 2 v v^H / (v^H v) to work[j.., j..]
        for c2 in j..n {
            let mut dot = Complex::new(T::zero(), T::zero());
            for i in j..m {
                dot += v[i - j].conj() * work[(i, c2)];
            }
            let scaled = dot * Complex::new(two_over, T::zero());
            for i in j..m {
                let upd = v[i - j] * scaled;
                work[(i, c2)] -= upd;
            }
        }
        // accumulate Q := Q * diag(I_j, H)
        for rrow in 0..m {
            let mut dot = Complex::new(T::zero(), T::zero());
            for i in j..m {
                dot += qmat[(rrow, i)] * v[i - j];
            }
            let scaled = dot * Complex::new(two_over, T::zero());
            for i in j..m {
                let upd = scaled * v[i - j].conj();
                qmat[(rrow, i)] -= upd;
            }
        }
        // column j is now +-alpha e1; clean rounding below the diagonal
        for i in j + 1..m {
            work[(i, j)] = Complex::new(T::zero(), T::zero());
        }
    }

    let q_thin = qmat.columns(0, steps).into_owned();
    let mut r = DMatrix::<Complex<T>>::zeros(steps, n);
    for i in 0..steps {
        for c in i..n {
            r[(i, c)] = work[(i, c)];
        }
    }
    (q_thin, r, piv)
}

/// Sampling indices for a basis tensor: column-pivoted QR of the
/// conjugate transpose of the first Fourier frontal slice of `U`,
/// keeping the first `n` pivots.
pub fn t_pqr_pivots<T: Scalar>(u: &Tensor3<T>) -> Result<IndexSet> {
    t_pqr_pivots_on_slice(u, 0)
}

/// Same as [`t_pqr_pivots`], pivoting on an arbitrary Fourier frontal
/// slice (zero-based).
pub fn t_pqr_pivots_on_slice<T: Scalar>(u: &Tensor3<T>, slice: usize) -> Result<IndexSet> {
    let (nrows, n, q) = u.dims();
    if n > nrows {
        return Err(Error::RankOutOfRange { rank: n, max: nrows });
    }
    if slice >= q {
        return Err(Error::IndexOutOfRange {
            index: slice + 1,
            bound: q,
        });
    }
    let uh = fft3(u);
    let target = uh.frontal_slice(slice).adjoint();
    let (_, _, piv) = col_pivoted_qr(&target);
    IndexSet::from_zero_based(piv[..n].to_vec(), nrows)
}

/// Full pivoted t-QR `A * P = Q * R`: column-pivoted QR of the first
/// Fourier slice fixes the permutation, remaining slices are factored
/// with their columns permuted accordingly.
pub fn t_pqr<T: Scalar>(a: &Tensor3<T>) -> Result<TQrFactors<T>> {
    let (m, l, q) = a.dims();
    let r = m.min(l);
    let ah = fft3(a);
    let (q0, r0, piv) = col_pivoted_qr(&ah.frontal_slice(0));

    let half = (q / 2).min(q - 1);
    let mut qh = FourierTensor3::zeros(m, r, q);
    let mut rh = FourierTensor3::zeros(r, l, q);
    qh.set_frontal_slice(0, &q0);
    rh.set_frontal_slice(0, &r0);
    let rest: Vec<_> = (1..=half)
        .into_par_iter()
        .map(|k| {
            let slice = ah.frontal_slice(k);
            let permuted = DMatrix::from_fn(m, l, |i, j| slice[(i, piv[j])]);
            let qr = permuted.qr();
            (k, qr.q(), qr.r())
        })
        .collect();
    for (k, qm, rm) in &rest {
        qh.set_frontal_slice(*k, qm);
        rh.set_frontal_slice(*k, rm);
    }
    mirror_conjugate(&mut qh);
    mirror_conjugate(&mut rh);
    Ok(TQrFactors {
        q: ifft3(&qh)?,
        r: ifft3(&rh)?,
        pivots: Some(IndexSet::from_zero_based(piv, l)?),
    })
}

/// Conditioning summary of a slicewise inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    /// Largest per-slice condition estimate (ratio of extreme LU
    /// diagonal magnitudes).
    pub max_estimate: f64,
    /// 1-based Fourier slice attaining the estimate.
    pub worst_slice: usize,
    /// True when the estimate exceeds [`ILL_CONDITION_THRESHOLD`].
    pub ill_conditioned: bool,
}

/// Slicewise tensor inverse together with its conditioning report.
#[derive(Debug, Clone)]
pub struct TensorInverse<T: Scalar> {
    pub tensor: Tensor3<T>,
    pub cond: ConditionReport,
}

/// t-inverse of a square tensor via per-slice LU with partial pivoting.
/// Singular slices are reported by (1-based) index; ill-conditioned
/// slices produce a warning in the [`ConditionReport`], not an error.
pub fn t_inverse<T: Scalar>(a: &Tensor3<T>) -> Result<TensorInverse<T>> {
    let (m, l, q) = a.dims();
    if m != l {
        return Err(Error::DimensionMismatch(format!(
            "t-inverse requires a square tensor, got {}x{}x{}",
            m, l, q
        )));
    }
    let ah = fft3(a);
    let half = (q / 2).min(q - 1);
    let per_slice: Vec<_> = (0..=half)
        .into_par_iter()
        .map(|k| -> Result<(DMatrix<Complex<T>>, f64)> {
            let slice = ah.frontal_slice(k);
            let lu = slice.lu();
            let diag = lu.u().map_diagonal(|d| d.norm_sqr().sqrt());
            let mut dmin = T::from_f64_lossy(f64::INFINITY);
            let mut dmax = T::zero();
            for i in 0..m {
                dmin = dmin.smin(diag[i]);
                dmax = dmax.smax(diag[i]);
            }
            if dmin == T::zero() || !dmin.is_finite() {
                return Err(Error::SingularSlice { slice: k + 1 });
            }
            let inv = lu
                .try_inverse()
                .ok_or(Error::SingularSlice { slice: k + 1 })?;
            Ok((inv, (dmax / dmin).as_f64()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut inv_h = FourierTensor3::zeros(m, m, q);
    let mut cond = ConditionReport {
        max_estimate: 0.0,
        worst_slice: 1,
        ill_conditioned: false,
    };
    for (k, (inv, est)) in per_slice.iter().enumerate() {
        inv_h.set_frontal_slice(k, inv);
        if *est > cond.max_estimate {
            cond.max_estimate = *est;
            cond.worst_slice = k + 1;
        }
    }
    cond.ill_conditioned = cond.max_estimate > ILL_CONDITION_THRESHOLD;
    mirror_conjugate(&mut inv_h);
    Ok(TensorInverse {
        tensor: ifft3(&inv_h)?,
        cond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::t_product;
    use crate::tensor::{rel_frobenius_distance, sampling_tensor};
    use crate::test_support::{rand_tensor, rand_tensor_t};

    fn orthogonality_defect(x: &Tensor3<f64>) -> f64 {
        let gram = t_product(&x.t_transpose(), x).unwrap();
        let eye = Tensor3::<f64>::t_identity(x.ncols(), x.depth());
        (&gram - &eye).frobenius_norm()
    }

    /// Greedy max-residual-norm pivot oracle via modified Gram-Schmidt,
    /// independent of the Householder implementation.
    fn greedy_pivot_oracle(a: &DMatrix<Complex<f64>>) -> Vec<usize> {
        let (m, n) = a.shape();
        let steps = m.min(n);
        let mut cols: Vec<nalgebra::DVector<Complex<f64>>> =
            (0..n).map(|c| a.column(c).into_owned()).collect();
        let mut chosen = Vec::new();
        let mut used = vec![false; n];
        for _ in 0..steps {
            let mut best = usize::MAX;
            let mut best_norm = -1.0;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let nm = cols[c].norm();
                if nm > best_norm * (1.0 + 1e-14) {
                    best_norm = nm;
                    best = c;
                }
            }
            used[best] = true;
            chosen.push(best);
            if best_norm <= 0.0 {
                continue;
            }
            let qv = cols[best].clone() / Complex::new(best_norm, 0.0);
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let coef = qv.dotc(&cols[c]);
                let sub = &qv * coef;
                cols[c] -= sub;
            }
        }
        chosen
    }

    #[test]
    fn svd_of_identity_has_unit_fourier_diagonals() {
        let a = Tensor3::<f64>::t_identity(3, 2);
        let f = t_svd(&a, None).unwrap();
        let sh = fft3(&f.s);
        for k in 0..2 {
            for i in 0..3 {
                assert!((sh.at(i, i, k).re - 1.0).abs() < 1e-12);
                assert!(sh.at(i, i, k).im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn svd_depth_one_matches_matrix_svd() {
        let a = rand_tensor(5, 3, 1, 101);
        let f = t_svd(&a, None).unwrap();
        let ours = f.fourier_singular_values();
        let oracle = a.frontal_slice(0).svd(false, false).singular_values;
        for (i, &sv) in oracle.iter().enumerate() {
            assert!((ours[0][i] - sv).abs() < 1e-10);
        }
    }

    #[test]
    fn svd_truncation_error_matches_tail_formula() {
        let a = rand_tensor(6, 4, 3, 102);
        let full = t_svd(&a, None).unwrap();
        let rank2 = t_svd(&a, Some(2)).unwrap();
        let a2 = rank2.reconstruct().unwrap();
        let err_sq = (&a - &a2).frobenius_norm().powi(2);

        // per-slice SVD tail oracle computed directly from fft slices
        let ah = fft3(&a);
        let mut tail = 0.0;
        for k in 0..3 {
            let sv = ah.frontal_slice(k).singular_values();
            for i in 2..sv.len() {
                tail += sv[i] * sv[i];
            }
        }
        tail /= 3.0;
        assert!((err_sq - tail).abs() / tail.max(1e-30) < 1e-9);
        assert_eq!(full.rank(), 4);
    }

    #[test]
    fn svd_factors_are_orthogonal_and_reconstruct() {
        let a = rand_tensor(6, 4, 4, 103);
        let f = t_svd(&a, None).unwrap();
        assert!(orthogonality_defect(&f.u) < 1e-10);
        assert!(orthogonality_defect(&f.w) < 1e-10);
        let rec = f.reconstruct().unwrap();
        assert!(rel_frobenius_distance(&rec, &a) < 1e-9);
    }

    #[test]
    fn svd_truncate_matches_direct_truncated_fit() {
        let a = rand_tensor(6, 5, 3, 104);
        let full = t_svd(&a, None).unwrap();
        let direct = t_svd(&a, Some(2)).unwrap();
        let cut = full.truncate(2).unwrap();
        assert!(rel_frobenius_distance(&cut.u, &direct.u) < 1e-10);
        assert!(rel_frobenius_distance(&cut.s, &direct.s) < 1e-10);
        assert!(rel_frobenius_distance(&cut.w, &direct.w) < 1e-10);
    }

    #[test]
    fn svd_rank_out_of_range() {
        let a = rand_tensor(4, 3, 2, 105);
        assert!(matches!(
            t_svd(&a, Some(4)),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            t_svd(&a, Some(0)),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn svd_is_deterministic() {
        let a = rand_tensor(6, 4, 3, 106);
        let f1 = t_svd(&a, Some(3)).unwrap();
        let f2 = t_svd(&a, Some(3)).unwrap();
        assert_eq!(f1.u, f2.u);
        assert_eq!(f1.s, f2.s);
        assert_eq!(f1.w, f2.w);
    }

    #[test]
    fn tail_spectral_empty_tail_is_zero() {
        let a = rand_tensor(4, 3, 2, 107);
        let f = t_svd(&a, None).unwrap();
        assert_eq!(t_svd_tail_spectral(&f, 3).unwrap(), 0.0);
        assert!(t_svd_tail_spectral(&f, 4).is_err());
    }

    #[test]
    fn tail_spectral_depth_one_is_next_singular_value() {
        let a = rand_tensor(5, 4, 1, 108);
        let f = t_svd(&a, None).unwrap();
        let sv = a.frontal_slice(0).singular_values();
        let got = t_svd_tail_spectral(&f, 1).unwrap();
        assert!((got - sv[1]).abs() < 1e-10);
    }

    #[test]
    fn tail_spectral_matches_max_over_slices() {
        let a = rand_tensor(6, 5, 4, 109);
        let f = t_svd(&a, None).unwrap();
        let ah = fft3(&a);
        let n = 2;
        let mut oracle: f64 = 0.0;
        for k in 0..4 {
            let sv = ah.frontal_slice(k).singular_values();
            oracle = oracle.max(sv[n]);
        }
        assert!((t_svd_tail_spectral(&f, n).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn qr_reconstructs() {
        let a = rand_tensor(5, 3, 2, 110);
        let f = t_qr(&a).unwrap();
        let rec = t_product(&f.q, &f.r).unwrap();
        assert!(rel_frobenius_distance(&rec, &a) < 1e-9);
        assert!(orthogonality_defect(&f.q) < 1e-10);
    }

    #[test]
    fn qr_of_orthogonal_input_gives_unit_modulus_diagonal() {
        let base = rand_tensor(5, 5, 3, 111);
        let orth = t_qr(&base).unwrap().q;
        let f = t_qr(&orth).unwrap();
        let rh = fft3(&f.r);
        for k in 0..3 {
            let slice = rh.frontal_slice(k);
            for i in 0..5 {
                for j in 0..5 {
                    if i == j {
                        assert!((slice[(i, j)].norm() - 1.0).abs() < 1e-9);
                    } else {
                        assert!(slice[(i, j)].norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn qr_depth_one_is_matrix_qr() {
        let a = rand_tensor(5, 3, 1, 112);
        let f = t_qr(&a).unwrap();
        let qr = a.frontal_slice(0).qr();
        assert!((f.q.frontal_slice(0) - qr.q()).norm() < 1e-10);
        assert!((f.r.frontal_slice(0) - qr.r()).norm() < 1e-10);
    }

    #[test]
    fn pivots_from_embedded_unit_rows() {
        // Fourier slice 0 rows 3 and 7 (1-based) carry the only mass
        let mut u = Tensor3::<f64>::zeros(10, 2, 3);
        u.set(2, 0, 0, 2.0);
        u.set(6, 1, 0, 1.0);
        let p = t_pqr_pivots(&u).unwrap();
        assert_eq!(p.one_based(), vec![3, 7]);
    }

    #[test]
    fn pivots_match_greedy_oracle() {
        let a = rand_tensor(20, 4, 3, 113);
        let u = t_svd(&a, Some(4)).unwrap().u;
        let p = t_pqr_pivots(&u).unwrap();
        let target = fft3(&u).frontal_slice(0).adjoint();
        let oracle = greedy_pivot_oracle(&target);
        assert_eq!(p.as_slice(), &oracle[..4]);
    }

    #[test]
    fn pivots_depth_one_match_oracle_on_transpose() {
        let a = rand_tensor(15, 3, 1, 114);
        let u = t_svd(&a, Some(3)).unwrap().u;
        let p = t_pqr_pivots(&u).unwrap();
        let target = fft3(&u).frontal_slice(0).adjoint();
        let oracle = greedy_pivot_oracle(&target);
        assert_eq!(p.as_slice(), &oracle[..3]);
    }

    #[test]
    fn pivot_tie_break_prefers_smaller_index() {
        let a = DMatrix::<Complex<f64>>::from_row_slice(
            2,
            3,
            &[
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.0),
            ],
        );
        // columns 0 and 2 are identical; column 0 must win the first pivot
        let (_, _, piv) = col_pivoted_qr(&a);
        assert_eq!(piv[0], 0);
        assert_eq!(piv[1], 1);
    }

    #[test]
    fn pivots_are_deterministic() {
        let a = rand_tensor(18, 5, 4, 115);
        let u = t_svd(&a, Some(5)).unwrap().u;
        assert_eq!(t_pqr_pivots(&u).unwrap(), t_pqr_pivots(&u).unwrap());
    }

    #[test]
    fn full_pivoted_qr_reconstructs_permuted_input() {
        let a = rand_tensor(5, 4, 3, 116);
        let f = t_pqr(&a).unwrap();
        let piv = f.pivots.as_ref().unwrap();
        let p = sampling_tensor::<f64>(piv, 4, 3);
        let ap = t_product(&a, &p).unwrap();
        let qr = t_product(&f.q, &f.r).unwrap();
        assert!(rel_frobenius_distance(&qr, &ap) < 1e-9);
        assert!(orthogonality_defect(&f.q) < 1e-10);
    }

    #[test]
    fn col_pivoted_qr_reconstructs() {
        use crate::test_support::rand_fourier;
        let a = rand_fourier(6, 4, 1, 117).frontal_slice(0);
        let (q, r, piv) = col_pivoted_qr(&a);
        let permuted = DMatrix::from_fn(6, 4, |i, j| a[(i, piv[j])]);
        assert!((q * r - permuted).norm() < 1e-12);
    }

    #[test]
    fn inverse_of_identity() {
        let i = Tensor3::<f64>::t_identity(4, 3);
        let inv = t_inverse(&i).unwrap();
        assert!(rel_frobenius_distance(&inv.tensor, &i) < 1e-12);
        assert!(!inv.cond.ill_conditioned);
    }

    #[test]
    fn inverse_depth_one_is_matrix_inverse() {
        let mut a = rand_tensor(4, 4, 1, 118);
        for i in 0..4 {
            a.set(i, i, 0, a.at(i, i, 0) + 3.0);
        }
        let inv = t_inverse(&a).unwrap();
        let direct = a.frontal_slice(0).try_inverse().unwrap();
        assert!((inv.tensor.frontal_slice(0) - direct).norm() < 1e-9);
    }

    #[test]
    fn inverse_residual_small() {
        let mut a = rand_tensor(4, 4, 3, 119);
        for i in 0..4 {
            a.set(i, i, 0, a.at(i, i, 0) + 4.0);
        }
        let inv = t_inverse(&a).unwrap();
        let prod = t_product(&a, &inv.tensor).unwrap();
        let eye = Tensor3::<f64>::t_identity(4, 3);
        assert!((&prod - &eye).frobenius_norm() < 1e-9);
    }

    #[test]
    fn inverse_rejects_singular_slice() {
        let z = Tensor3::<f64>::zeros(3, 3, 2);
        assert!(matches!(
            t_inverse(&z),
            Err(Error::SingularSlice { slice: 1 })
        ));
    }

    #[test]
    fn inverse_warns_on_ill_conditioning() {
        let mut a = Tensor3::<f64>::zeros(2, 2, 1);
        a.set(0, 0, 0, 1.0);
        a.set(1, 1, 0, 1e-14);
        let inv = t_inverse(&a).unwrap();
        assert!(inv.cond.ill_conditioned);
        assert!(inv.cond.max_estimate > 1e12);
    }

    #[test]
    fn orthogonal_slice_product_identity() {
        // B = first k lateral slices of orthogonal A; B^T * A = [I | O]
        let base = rand_tensor(6, 6, 3, 120);
        let a = t_qr(&base).unwrap().q;
        for k in 1..=6 {
            let b = a.lateral_range(0..k);
            let prod = t_product(&b.t_transpose(), &a).unwrap();
            let mut expected = Tensor3::<f64>::zeros(k, 6, 3);
            for i in 0..k {
                expected.set(i, i, 0, 1.0);
            }
            assert!((&prod - &expected).frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn generic_scalar_smoke_f32() {
        let a = rand_tensor_t::<f32>(4, 3, 2, 121);
        let f = t_svd(&a, Some(2)).unwrap();
        assert_eq!(f.rank(), 2);
        let p = t_pqr_pivots(&f.u).unwrap();
        assert_eq!(p.len(), 2);
    }
}
