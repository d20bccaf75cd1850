//! Dense row-major matrices and boolean masks.
//!
//! Everything the model computes with is a rank-2 tensor; scalars are `1x1`
//! and row vectors are `1xn`. Values are `f32` for training and `f64` for
//! gradient audits, selected through the [`Scalar`] trait.

use crate::error::{Error, Result};

/// Element type of a tensor: `f32` in training mode, `f64` in audit mode.
pub trait Scalar:
    num_traits::Float + std::fmt::Debug + std::fmt::Display + Default + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
}

/// Dense rank-2 tensor, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::InvalidShape {
                op: "Tensor::new",
                shape: vec![rows, cols],
                reason: format!("{} values for {}x{} tensor", data.len(), rows, cols),
            });
        }
        Ok(Tensor { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tensor {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Tensor {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn scalar(v: T) -> Self {
        Tensor {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
    }

    /// Row vector `1xn`.
    pub fn row(data: Vec<T>) -> Self {
        Tensor {
            rows: 1,
            cols: data.len(),
            data,
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidShape {
                    op: "Tensor::from_rows",
                    shape: vec![r, c],
                    reason: "ragged rows".to_string(),
                });
            }
            data.extend_from_slice(row);
        }
        Tensor::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.rows, self.cols]
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> T {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// True when the tensor is `1x1`.
    pub fn is_scalar(&self) -> bool {
        self.rows == 1 && self.cols == 1
    }

    pub fn scalar_value(&self) -> Result<T> {
        if !self.is_scalar() {
            return Err(Error::InvalidShape {
                op: "scalar_value",
                shape: self.shape(),
                reason: "expected 1x1 tensor".to_string(),
            });
        }
        Ok(self.data[0])
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Elementwise cast between scalar types (used when switching to audit mode).
    pub fn cast<U: Scalar>(&self) -> Tensor<U> {
        Tensor {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| U::from_f64(v.to_f64())).collect(),
        }
    }
}

/// Boolean mask with the same row-major layout as [`Tensor`].
/// `true` marks a valid position; `false` positions are masked out.
#[derive(Debug, Clone, PartialEq)]
pub struct BoolMask {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BoolMask {
    pub fn new(rows: usize, cols: usize, data: Vec<bool>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::InvalidShape {
                op: "BoolMask::new",
                shape: vec![rows, cols],
                reason: format!("{} values for {}x{} mask", data.len(), rows, cols),
            });
        }
        Ok(BoolMask { rows, cols, data })
    }

    /// Broadcast one key-validity row over `rows` query rows.
    pub fn broadcast_row(valid: &[bool], rows: usize) -> Self {
        let mut data = Vec::with_capacity(rows * valid.len());
        for _ in 0..rows {
            data.extend_from_slice(valid);
        }
        BoolMask {
            rows,
            cols: valid.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.rows, self.cols]
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> bool {
        self.data[r * self.cols + c]
    }
}

/// Float 0/1 matrix from a per-row validity flag, spread across `cols` columns.
/// Multiplying by it zeroes all rows outside the support.
pub fn row_support_tensor<T: Scalar>(support: &[bool], cols: usize) -> Tensor<T> {
    let mut data = Vec::with_capacity(support.len() * cols);
    for &keep in support {
        let v = if keep { T::one() } else { T::zero() };
        data.extend(std::iter::repeat(v).take(cols));
    }
    Tensor {
        rows: support.len(),
        cols,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_wrong_length() {
        assert!(Tensor::<f64>::new(2, 2, vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn indexing_is_row_major() {
        let t = Tensor::new(2, 3, vec![1.0f64, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(t.at(0, 2), 3.0);
        assert_eq!(t.at(1, 0), 4.0);
        assert_eq!(t.row_slice(1), &[4.0, 5.0, 6.0]);
    }

    #[test]
    fn support_tensor_zeroes_outside_rows() {
        let m = row_support_tensor::<f64>(&[true, false], 2);
        assert_eq!(m.data(), &[1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn cast_round_trips_between_precisions() {
        let t = Tensor::new(1, 3, vec![1.5f32, -2.25, 0.125]).unwrap();
        let d: Tensor<f64> = t.cast();
        assert_eq!(d.data(), &[1.5, -2.25, 0.125]);
    }
}
