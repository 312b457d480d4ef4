use crate::error::{Error, Result};

/// Dense real symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl WeightedSymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        WeightedSymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Wraps row-major data, rejecting asymmetry larger than `tol` (scaled
    /// by the largest entry).
    pub fn from_row_major(n: usize, data: Vec<f64>, tol: f64) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Contract(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                data.len()
            )));
        }
        let m = WeightedSymmetricMatrix { n, data };
        let asym = m.asymmetry();
        if asym > tol * m.max_abs().max(1.0) {
            return Err(Error::Contract(format!(
                "matrix is not symmetric (max |m_ij - m_ji| = {asym:e})"
            )));
        }
        Ok(m)
    }

    pub(crate) fn from_row_major_unchecked(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        WeightedSymmetricMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Row sums `M_i = sum_j m_ij`.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// True when the pattern of nonzero entries forms a connected graph on
    /// all `n` indices (an irreducible nonnegative matrix). Order 1 counts
    /// as irreducible only with a nonzero entry.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return self.get(0, 0) != 0.0;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.get(i, j) != 0.0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
