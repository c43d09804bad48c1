//! The quantum affine space attached to `O_q(M_{m,n})` and the center of its
//! quantum torus.
//!
//! The generators `T[i,a]` q-commute: generators in the same row or column
//! interact exactly as in the matrix algebra, while generators in distinct
//! rows and columns commute on the nose (the crossing correction term is
//! gone).  All pairwise exponents are collected in the commutation matrix
//! `B` with `T_k T_l = q^(B[k][l]) T_l T_k` in row-major generator order.
//!
//! Monomials `T^s` with integer exponent vectors `s` form a basis of the
//! quantum torus; `T^s` is central exactly when `B^t s = 0`.  When the
//! 2-adic valuations of `m` and `n` agree, the center is a Laurent
//! polynomial ring on `d = gcd(m, n)` monomials whose exponent vectors are
//! alternating sums of staircase vectors; [`center_basis`] builds them and
//! certifies that they generate the full center.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::pbw::{monomial_string, write_term, Shape};
use crate::scalars::{IntMatrix, QLaurent};
use crate::spectrum::{stratum_dim, v2};
use crate::{Error, Result};

/// Exponent `c` in `T_k T_l = q^c T_l T_k` for flat generator positions.
fn commutation(shape: Shape, k: usize, l: usize) -> i64 {
    let (i, a) = shape.coords(k);
    let (j, b) = shape.coords(l);
    if i == j && a != b {
        if a < b {
            1
        } else {
            -1
        }
    } else if a == b && i != j {
        if i < j {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// The antisymmetric commutation matrix of the quantum affine space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BMatrix {
    shape: Shape,
    mat: IntMatrix,
}

/// Build `B` from the pairwise commutation relations of the `T[i,a]`.
pub fn build_b(shape: Shape) -> BMatrix {
    let mat = IntMatrix::from_fn(shape.gens(), shape.gens(), |k, l| commutation(shape, k, l));
    BMatrix { shape, mat }
}

impl BMatrix {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.gens()
    }

    pub fn entry(&self, k: usize, l: usize) -> i64 {
        commutation(self.shape, k, l)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }
}

/// The bicharacter exponent `sigma(s, t) = sum B[k][l] s_k t_l`, so that
/// `T^s T^t = q^(sigma(s,t)) T^t T^s`.
pub fn sigma_exponent(b: &BMatrix, s: &[i64], t: &[i64]) -> i64 {
    assert_eq!(s.len(), b.size());
    assert_eq!(t.len(), b.size());
    let mut total = 0;
    for (k, &sk) in s.iter().enumerate() {
        if sk == 0 {
            continue;
        }
        for (l, &tl) in t.iter().enumerate() {
            if tl != 0 {
                total += b.entry(k, l) * sk * tl;
            }
        }
    }
    total
}

/// q-power picked up when `T^s * T^t` is rewritten in normal order:
/// each factor of `T_l` from `t` moves left past each `T_k` from `s` with
/// `k > l`.
fn reorder_exponent(shape: Shape, s: &[i64], t: &[i64]) -> i64 {
    let mut total = 0;
    for (k, &sk) in s.iter().enumerate() {
        if sk == 0 {
            continue;
        }
        for (l, &tl) in t.iter().enumerate().take(k) {
            if tl != 0 {
                total += commutation(shape, k, l) * sk * tl;
            }
        }
    }
    total
}

/// An element of the quantum torus: a linear combination of monomials `T^s`
/// with integer exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusElement {
    shape: Shape,
    terms: BTreeMap<Vec<i64>, QLaurent>,
}

impl TorusElement {
    pub fn zero(shape: Shape) -> Self {
        TorusElement {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        let mut out = TorusElement::zero(shape);
        out.add_term(&vec![0; shape.gens()], &QLaurent::one());
        out
    }

    pub fn monomial(shape: Shape, exps: &[i64], coeff: &QLaurent) -> Result<Self> {
        if exps.len() != shape.gens() {
            return Err(Error::invalid(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                shape.gens()
            )));
        }
        let mut out = TorusElement::zero(shape);
        out.add_term(&exps.to_vec(), coeff);
        Ok(out)
    }

    /// The generator `T[i,a]` (1-based indices).
    pub fn generator(shape: Shape, i: usize, a: usize) -> Result<Self> {
        let k = shape.checked_flat(i, a)?;
        let mut exps = vec![0i64; shape.gens()];
        exps[k] = 1;
        TorusElement::monomial(shape, &exps, &QLaurent::one())
    }

    fn add_term(&mut self, exps: &Vec<i64>, coeff: &QLaurent) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exps.clone())
            .or_insert_with(QLaurent::zero);
        *entry = entry.add(coeff);
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> QLaurent {
        self.terms.get(exps).cloned().unwrap_or_else(QLaurent::zero)
    }

    fn check_same_shape(&self, other: &TorusElement) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::invalid(format!(
                "shape mismatch: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TorusElement) -> Result<TorusElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &QLaurent) -> TorusElement {
        let mut out = TorusElement::zero(self.shape);
        for (e, d) in self.terms() {
            out.add_term(e, &c.mul(d));
        }
        out
    }

    /// Product with q-power bookkeeping: exponent vectors add, and each
    /// monomial pair contributes `q^(reorder exponent)`.
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement> {
        self.check_same_shape(other)?;
        let mut out = TorusElement::zero(self.shape);
        for (s, c1) in self.terms() {
            for (t, c2) in other.terms() {
                let e = reorder_exponent(self.shape, s, t);
                let exps: Vec<i64> = s.iter().zip(t).map(|(a, b)| a + b).collect();
                out.add_term(&exps, &c1.mul(c2).mul_q_pow(e));
            }
        }
        Ok(out)
    }

    /// Inverse of a single monomial with unit coefficient.  Errors on
    /// anything else — this is the invertibility assertion behind the
    /// restoration steps.
    pub fn inverse_monomial(&self) -> Result<TorusElement> {
        if self.terms.len() != 1 {
            return Err(Error::check(format!(
                "inverse of a non-monomial torus element ({} terms)",
                self.terms.len()
            )));
        }
        let (s, c) = self.terms.iter().next().unwrap();
        let c_inv = c.unit_inverse().ok_or_else(|| {
            Error::check(format!("monomial coefficient {c} is not a unit"))
        })?;
        let neg_s: Vec<i64> = s.iter().map(|x| -x).collect();
        // (c T^s)^-1 = c^-1 q^(-e) T^(-s) with e the reorder exponent of
        // T^s * T^(-s).
        let e = reorder_exponent(self.shape, s, &neg_s);
        TorusElement::monomial(self.shape, &neg_s, &c_inv.mul_q_pow(-e))
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(&self.shape, exps, "T");
            write_term(f, idx == 0, coeff, &mono)?;
        }
        Ok(())
    }
}

/// Exponent vector of the staircase torus monomial equal to the q-normal
/// element `b_i`; index `m + n` is the empty product.
///
/// For `m <= n` the staircase runs, per index range,
///
/// ```text
/// 1 <= i <= m:        T[1,n-i+1] T[2,n-i+2] ... T[i,n]
/// m <  i <= n:        T[1,n-i+1] T[2,n-i+2] ... T[m,n+m-i]
/// n <  i <= m+n-1:    T[i-n+1,1] T[i-n+2,2] ... T[m,m+n-i]
/// ```
///
/// and for `m > n` the transposed staircase with row/column roles swapped.
pub fn b_monomial_exponent(shape: Shape, i: usize) -> Result<Vec<i64>> {
    let (m, n) = (shape.m(), shape.n());
    if i == 0 || i > m + n {
        return Err(Error::invalid(format!(
            "staircase index {i} out of range 1..={}",
            m + n
        )));
    }
    let mut exps = vec![0i64; shape.gens()];
    if i == m + n {
        return Ok(exps);
    }
    if m > n {
        let t = b_monomial_exponent(shape.transposed(), i)?;
        for (k, &e) in t.iter().enumerate() {
            let (r, c) = shape.transposed().coords(k);
            exps[shape.flat(c, r)] += e;
        }
        return Ok(exps);
    }
    let positions: Vec<(usize, usize)> = if i <= m {
        (1..=i).map(|k| (k, n - i + k)).collect()
    } else if i <= n {
        (1..=m).map(|k| (k, n - i + k)).collect()
    } else {
        (1..=(m + n - i)).map(|k| (i - n + k, k)).collect()
    };
    for (r, c) in positions {
        exps[shape.flat(r, c)] += 1;
    }
    Ok(exps)
}

/// Exponent vector of the `j`-th central monomial: the alternating sum of
/// the staircase vectors at indices `j, d+j, 2d+j, ...` with `d = gcd(m,n)`,
/// the top index `m+n` contributing nothing.
///
/// Requires `v2(m) == v2(n)` and `1 <= j <= d`.
pub fn delta_exponent(shape: Shape, j: usize) -> Result<Vec<i64>> {
    let (m, n) = (shape.m(), shape.n());
    if v2(m) != v2(n) {
        return Err(Error::invalid(format!(
            "shape {shape} has v2({m}) != v2({n}); the torus center is trivial"
        )));
    }
    let d = stratum_dim(m, n);
    if j == 0 || j > d {
        return Err(Error::invalid(format!(
            "central index {j} out of range 1..={d}"
        )));
    }
    let (mp, np) = (m / d, n / d);
    let mut acc = vec![0i64; shape.gens()];
    for i in 0..(mp + np) {
        let idx = i * d + j;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (k, e) in b_monomial_exponent(shape, idx)?.iter().enumerate() {
            acc[k] += sign * e;
        }
    }
    Ok(acc)
}

/// The `j`-th central monomial as a torus element with coefficient exactly 1.
pub fn delta_element(shape: Shape, j: usize) -> Result<TorusElement> {
    TorusElement::monomial(shape, &delta_exponent(shape, j)?, &QLaurent::one())
}

/// An integer basis of the group of central monomial exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralBasis {
    pub shape: Shape,
    pub vectors: Vec<Vec<i64>>,
}

impl CentralBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// The central monomial exponents `delta_1, ..., delta_d`, verified to
/// really present the center:
///
/// 1. each vector lies in `ker(B^t)` (so the monomial is central),
/// 2. `d` equals `dim ker B` computed by rank,
/// 3. the `d x mn` stack of exponent vectors has full rank `d` and gcd of
///    maximal minors 1, so the vectors generate the full kernel lattice and
///    the center is exactly the Laurent ring on these monomials.
pub fn center_basis(shape: Shape) -> Result<CentralBasis> {
    let (m, n) = (shape.m(), shape.n());
    let b = build_b(shape);
    let d = stratum_dim(m, n);
    let rank = b.matrix().rank_rational();
    if shape.gens() - rank != d {
        return Err(Error::check(format!(
            "dim ker B = {} but the closed form gives {d}",
            shape.gens() - rank
        )));
    }
    let mut vectors = Vec::with_capacity(d);
    for j in 1..=d {
        vectors.push(delta_exponent(shape, j)?);
    }
    let bt = b.matrix().transpose();
    for (j, v) in vectors.iter().enumerate() {
        let image = bt.mul_int_vec(v);
        if !image.iter().all(|x| x.is_zero()) {
            return Err(Error::check(format!(
                "delta_{} exponent vector is not in ker(B^t)",
                j + 1
            )));
        }
    }
    if d > 0 {
        let stack = IntMatrix::from_fn(d, shape.gens(), |i, k| vectors[i][k]);
        let gcd = stack.minor_gcd_full_rank(d)?;
        if !gcd.is_one() {
            return Err(Error::check(format!(
                "central exponent stack has minor gcd {gcd}, expected 1"
            )));
        }
    }
    Ok(CentralBasis { shape, vectors })
}
