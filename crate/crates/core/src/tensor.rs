//! Dense row-major f64 tensors.
//!
//! Deliberately minimal: shape-checked construction, element access, and the
//! handful of linear-algebra kernels the optimizers need. No broadcasting.

use crate::alloc_stats;
use crate::error::{Error, Result};

/// Shape-carrying dense array of 64-bit floats, stored flat in row-major order.
#[derive(Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    /// Builds a tensor from a shape and flat data; the lengths must agree.
    pub fn from_vec(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if shape.iter().any(|&d| d == 0) {
            return Err(Error::usage("Tensor::from_vec", "zero-sized dimension"));
        }
        if data.len() != expected {
            return Err(Error::structure(
                "Tensor::from_vec",
                format!("shape {:?} needs {} elements, got {}", shape, expected, data.len()),
            ));
        }
        alloc_stats::record_alloc(data.len());
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n: usize = shape.iter().product();
        alloc_stats::record_alloc(n);
        Tensor { shape, data: vec![0.0; n] }
    }

    /// Rank-1 tensor from a flat slice.
    pub fn vector(data: &[f64]) -> Self {
        alloc_stats::record_alloc(data.len());
        Tensor { shape: vec![data.len()], data: data.to_vec() }
    }

    /// Rank-2 tensor from rows × cols and flat row-major data.
    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        Tensor::from_vec(vec![rows, cols], data)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Rows of the per-channel view: the product of all leading dimensions.
    /// Rank-1 tensors count as a single row.
    pub fn channel_rows(&self) -> usize {
        if self.shape.len() <= 1 {
            1
        } else {
            self.shape[..self.shape.len() - 1].iter().product()
        }
    }

    /// Columns of the per-channel view: the last dimension.
    pub fn channel_cols(&self) -> usize {
        *self.shape.last().unwrap_or(&0)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// y = A·x for rank-2 A (m×n) and rank-1 x (n), accumulated into `out` (m).
    pub fn matvec_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let (m, n) = self.require_rank2("matvec")?;
        if x.len() != n || out.len() != m {
            return Err(Error::structure(
                "matvec",
                format!("A is {m}x{n}, x has {} entries, out has {}", x.len(), out.len()),
            ));
        }
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * n..(r + 1) * n];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            *o = acc;
        }
        Ok(())
    }

    /// C = A·B for rank-2 A (m×n) and B given as n×p columns-major-free slice
    /// interpretation: `b` is row-major n×p. Result is row-major m×p.
    pub fn matmul(&self, b: &Tensor) -> Result<Tensor> {
        let (m, n) = self.require_rank2("matmul lhs")?;
        let (bn, p) = b.require_rank2("matmul rhs")?;
        if bn != n {
            return Err(Error::structure(
                "matmul",
                format!("inner dimensions differ: {n} vs {bn}"),
            ));
        }
        let mut out = vec![0.0; m * p];
        for r in 0..m {
            let arow = &self.data[r * n..(r + 1) * n];
            let orow = &mut out[r * p..(r + 1) * p];
            for (kk, &a) in arow.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let brow = &b.data[kk * p..(kk + 1) * p];
                for (o, &bv) in orow.iter_mut().zip(brow) {
                    *o += a * bv;
                }
            }
        }
        Tensor::from_vec(vec![m, p], out)
    }

    fn require_rank2(&self, context: &'static str) -> Result<(usize, usize)> {
        if self.shape.len() == 2 {
            Ok((self.shape[0], self.shape[1]))
        } else {
            Err(Error::structure(
                "rank",
                format!("{context}: expected rank-2 tensor, got shape {:?}", self.shape),
            ))
        }
    }
}

impl Clone for Tensor {
    fn clone(&self) -> Self {
        alloc_stats::record_alloc(self.data.len());
        Tensor { shape: self.shape.clone(), data: self.data.clone() }
    }
}

impl Drop for Tensor {
    fn drop(&mut self) {
        alloc_stats::record_free(self.data.len());
    }
}
