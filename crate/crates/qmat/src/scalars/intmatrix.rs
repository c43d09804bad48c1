//! Exact integer matrices: rank, kernels, determinants, minor gcds.

use itertools::Itertools;
use num::{BigInt, BigRational, Integer as _, One, Signed, Zero};

use crate::{Error, Result};

/// A dense matrix over the arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn matmul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += t;
                }
            }
        }
        out
    }

    /// `self^e` for a square matrix, `e >= 0`.
    pub fn pow(&self, e: u32) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = IntMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.matmul(self);
        }
        out
    }

    pub fn mul_int_vec(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Rank over the rationals, computed by fraction-free (Bareiss)
    /// elimination over the integers: every intermediate entry is a minor of
    /// the input, so nothing ever leaves `Z` and divisions are exact.
    pub fn rank_rational(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * cols + j].clone();
        let mut prev = BigInt::one();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..cols {
                    a.swap(src * cols + j, pivot_row * cols + j);
                }
            }
            let pivot = at(&a, pivot_row, col);
            for r in pivot_row + 1..rows {
                let lead = at(&a, r, col);
                for j in col + 1..cols {
                    let num = &pivot * at(&a, r, j) - &lead * at(&a, pivot_row, j);
                    let (quot, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    a[r * cols + j] = quot;
                }
                a[r * cols + col] = BigInt::zero();
            }
            prev = pivot;
            pivot_row += 1;
        }
        pivot_row
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i64;
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigInt::zero();
            };
            if src != col {
                for j in 0..n {
                    a.swap(src * n + j, col * n + j);
                }
                sign = -sign;
            }
            let pivot = a[col * n + col].clone();
            for r in col + 1..n {
                let lead = a[r * n + col].clone();
                for j in col + 1..n {
                    let num = &pivot * &a[r * n + j] - &lead * &a[col * n + j];
                    let (quot, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    a[r * n + j] = quot;
                }
                a[r * n + col] = BigInt::zero();
            }
            prev = pivot;
        }
        if sign < 0 {
            -a[(n - 1) * n + (n - 1)].clone()
        } else {
            a[(n - 1) * n + (n - 1)].clone()
        }
    }

    /// A basis of the integer kernel `{v : M v = 0}`.
    ///
    /// Row-reduces over the rationals, then scales each free-column solution
    /// to a primitive integer vector whose first nonzero coordinate is
    /// positive.  Basis vectors are ordered by ascending free column, making
    /// the output deterministic.
    pub fn kernel_basis_integer(&self) -> Vec<Vec<BigInt>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<BigRational> = self
            .data
            .iter()
            .map(|v| BigRational::from(v.clone()))
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..cols {
                    a.swap(src * cols + j, pivot_row * cols + j);
                }
            }
            let inv = a[pivot_row * cols + col].recip();
            for j in col..cols {
                let t = &a[pivot_row * cols + j] * &inv;
                a[pivot_row * cols + j] = t;
            }
            for r in 0..rows {
                if r == pivot_row || a[r * cols + col].is_zero() {
                    continue;
                }
                let factor = a[r * cols + col].clone();
                for j in col..cols {
                    let t = &a[pivot_row * cols + j] * &factor;
                    a[r * cols + j] -= t;
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[r * cols + free].clone();
            }
            basis.push(primitive_integer(&v));
        }
        basis
    }

    /// The gcd of all `d x d` minors of a full-row-rank `d x N` matrix.
    ///
    /// Errors when the matrix does not have exactly `d` rows of rank `d`.
    /// The scan over column subsets stops as soon as the running gcd hits 1.
    pub fn minor_gcd_full_rank(&self, d: usize) -> Result<BigInt> {
        if self.rows != d {
            return Err(Error::invalid(format!(
                "minor gcd needs a {d}-row matrix, got {} rows",
                self.rows
            )));
        }
        if d == 0 {
            return Ok(BigInt::one());
        }
        if self.rank_rational() != d {
            return Err(Error::invalid(format!(
                "minor gcd needs full row rank {d}, got rank {}",
                self.rank_rational()
            )));
        }
        let mut g = BigInt::zero();
        for subset in (0..self.cols).combinations(d) {
            let sub = IntMatrix {
                rows: d,
                cols: d,
                data: (0..d)
                    .flat_map(|i| subset.iter().map(move |&j| self.get(i, j).clone()))
                    .collect(),
            };
            g = g.gcd(&sub.det());
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }
}

/// Scale a rational vector to a primitive integer vector with positive first
/// nonzero coordinate.  The input must be nonzero.
fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    assert!(!g.is_zero(), "kernel vector must be nonzero");
    for x in &mut ints {
        *x = &*x / &g;
    }
    if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    ints
}
