//! Tensor t-product algebra and t-Q-DEIM sparse interpolation.
//!
//! The crate provides, generic over the scalar type (`f32`/`f64`):
//!
//! - [`tensor`]: dense third-order tensors and the t-product algebra
//!   (fold/unfold, block circulant, FFT transport, t-product, norms),
//! - [`factor`]: Fourier-domain factorizations (t-SVD, t-QR, pivoted
//!   t-QR, slicewise inverse),
//! - [`interp`]: the t-Q-DEIM and Q-DEIM fit/reconstruct pipeline with
//!   the computable error bound,
//! - [`datagen`]: deterministic Burgers' and FitzHugh-Nagumo snapshot
//!   generators (`f64`),
//! - [`io`]: the `.t3b` binary tensor format, model bundles, and error
//!   reports (`f64`).
//!
//! Concrete `f64` aliases for the core types live at the crate root.

pub mod datagen;
pub mod error;
pub mod factor;
pub mod fft;
pub mod interp;
pub mod io;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default-precision real tensor.
pub type Tensor3 = tensor::Tensor3<f64>;
/// Default-precision Fourier-domain tensor.
pub type FourierTensor3 = tensor::FourierTensor3<f64>;
/// Default-precision t-SVD factors.
pub type TSvdFactors = factor::TSvdFactors<f64>;
/// Default-precision t-QR factors.
pub type TQrFactors = factor::TQrFactors<f64>;
/// Default-precision t-Q-DEIM model.
pub type TQDeimModel = interp::TQDeimModel<f64>;
/// Default-precision Q-DEIM model.
pub type QDeimModel = interp::QDeimModel<f64>;

pub use tensor::IndexSet;
