//! placeholder
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct TQDeimModel<T: Scalar> {
    pub rank: usize,
    _marker: std::marker::PhantomData<T>,
}

#[derive(Debug, Clone)]
pub struct QDeimModel<T: Scalar> {
    pub rank: usize,
    _marker: std::marker::PhantomData<T>,
}
