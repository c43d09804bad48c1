//! Primitivity of the zero ideal, the kernel dimension of the commutation
//! matrix by three independent methods, the height-one prime catalog, and
//! the normal-element constructor `build_u`.
//!
//! The zero ideal is primitive exactly when the 2-adic valuations of `m`
//! and `n` differ, equivalently when the antisymmetric commutation matrix
//! `B` is invertible.  When the valuations agree the kernel has dimension
//! `d = gcd(m, n)` and the height-one catalog acquires an extra family of
//! normal elements `u`, one per polynomial `V` in `d` variables, built from
//! the staircase generators by [`build_u`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::minors::{b_generator, BGen};
use crate::pbw::{q_normal_check, MatElement, Shape};
use crate::scalars::{rat_int, IntMatrix, QLaurent, Rational};
use crate::torus::build_b;
use crate::{Error, Result};

/// 2-adic valuation of a positive integer.
pub fn v2(k: usize) -> u32 {
    assert!(k > 0, "v2 of 0 is undefined");
    k.trailing_zeros()
}

/// Dimension of the zero stratum: `gcd(m, n)` when `v2(m) == v2(n)`,
/// otherwise 0 (the zero ideal is then primitive).
pub fn stratum_dim(m: usize, n: usize) -> usize {
    assert!(m > 0 && n > 0);
    if v2(m) == v2(n) {
        num::integer::gcd(m, n)
    } else {
        0
    }
}

/// How to decide primitivity of the zero ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimitivityMethod {
    /// The valuation criterion `v2(m) != v2(n)`.
    Formula,
    /// Invertibility of the commutation matrix, by exact rank.
    Rank,
    /// Both, erroring loudly on disagreement.
    Both,
}

/// Whether the zero ideal of the `(m, n)` algebra is primitive.
pub fn is_primitive(m: usize, n: usize, method: PrimitivityMethod) -> Result<bool> {
    let shape = Shape::new(m, n)?;
    let by_formula = || v2(m) != v2(n);
    let by_rank = || {
        let b = build_b(shape);
        b.matrix().rank_rational() == m * n
    };
    match method {
        PrimitivityMethod::Formula => Ok(by_formula()),
        PrimitivityMethod::Rank => Ok(by_rank()),
        PrimitivityMethod::Both => {
            let (f, r) = (by_formula(), by_rank());
            if f != r {
                return Err(Error::check(format!(
                    "primitivity methods disagree at {shape}: formula {f}, rank {r}"
                )));
            }
            Ok(f)
        }
    }
}

/// How to compute the kernel dimension of the commutation matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelMethod {
    /// `m*n` minus the exact rank of the `mn x mn` matrix.
    Rank,
    /// The closed form: 0 when valuations differ, else `gcd(m, n)`.
    ClosedForm,
    /// `m` minus the rank of `(A+I)^n + (A-I)^n`, where `A` is the `m x m`
    /// matrix with `+1` above and `-1` below the diagonal.
    Intermediate,
}

/// Kernel dimension of the commutation matrix by the chosen method.
pub fn dim_ker_b(m: usize, n: usize, method: KernelMethod) -> Result<usize> {
    let shape = Shape::new(m, n)?;
    match method {
        KernelMethod::Rank => {
            let b = build_b(shape);
            Ok(m * n - b.matrix().rank_rational())
        }
        KernelMethod::ClosedForm => Ok(stratum_dim(m, n)),
        KernelMethod::Intermediate => {
            // A has +1 above and -1 below the diagonal; shift by +/- I.
            let shifted = |diag: i64| {
                IntMatrix::from_fn(m, m, move |i, j| {
                    if j > i {
                        1
                    } else if j < i {
                        -1
                    } else {
                        diag
                    }
                })
            };
            let combined = shifted(1).pow(n as u32).add(&shifted(-1).pow(n as u32));
            Ok(m - combined.rank_rational())
        }
    }
}

/// Kernel dimension with all three methods cross-checked; errors on any
/// disagreement.
pub fn dim_ker_b_checked(m: usize, n: usize) -> Result<usize> {
    let rank = dim_ker_b(m, n, KernelMethod::Rank)?;
    let closed = dim_ker_b(m, n, KernelMethod::ClosedForm)?;
    let inter = dim_ker_b(m, n, KernelMethod::Intermediate)?;
    if rank != closed || rank != inter {
        return Err(Error::check(format!(
            "kernel dimension methods disagree at ({m}, {n}): rank {rank}, closed form {closed}, intermediate {inter}"
        )));
    }
    Ok(rank)
}

/// Summary of the primitivity data for one shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub m: usize,
    pub n: usize,
    pub v2_m: u32,
    pub v2_n: u32,
    /// `gcd(m, n)` and the coprime parts, present only when the valuations
    /// agree (the non-primitive case where they parameterize the extra
    /// height-one family).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_prime: Option<usize>,
    /// Dimension of the zero stratum; zero exactly when primitive.
    pub alpha: usize,
    pub primitive: bool,
    pub methods_agree: bool,
}

/// Compute the full report, cross-checking the formula and rank methods
/// and the three kernel-dimension methods.
pub fn spectrum_report(m: usize, n: usize) -> Result<SpectrumReport> {
    Shape::new(m, n)?;
    let primitive = is_primitive(m, n, PrimitivityMethod::Both)?;
    let alpha = dim_ker_b_checked(m, n)?;
    let (d, m_prime, n_prime) = if v2(m) == v2(n) {
        let d = num::integer::gcd(m, n);
        (Some(d), Some(m / d), Some(n / d))
    } else {
        (None, None, None)
    };
    Ok(SpectrumReport {
        m,
        n,
        v2_m: v2(m),
        v2_n: v2(n),
        d,
        m_prime,
        n_prime,
        alpha,
        primitive,
        methods_agree: true,
    })
}

/// Parameters of the extra height-one family present when the zero ideal
/// is not primitive.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumParams {
    pub d: usize,
    pub m_prime: usize,
    pub n_prime: usize,
}

/// The height-one prime generators of the `(m, n)` algebra.
#[derive(Clone, Debug)]
pub struct HeightOneCatalog {
    pub shape: Shape,
    /// The `m + n - 1` staircase generators.
    pub gens: Vec<BGen>,
    /// True when the staircase generators exhaust the catalog (the
    /// primitive case); otherwise the infinite extra family parameterized
    /// by polynomials in `d` variables remains, with its parameters below.
    pub complete: bool,
    pub extra_family: Option<StratumParams>,
}

/// The `m + n - 1` staircase generators, flagged complete exactly when the
/// zero ideal is primitive.
pub fn height_one_catalog(m: usize, n: usize) -> Result<HeightOneCatalog> {
    let shape = Shape::new(m, n)?;
    let gens = (1..=(m + n - 1))
        .map(|i| b_generator(shape, i))
        .collect::<Result<Vec<_>>>()?;
    let complete = is_primitive(m, n, PrimitivityMethod::Formula)?;
    let extra_family = if complete {
        None
    } else {
        let d = num::integer::gcd(m, n);
        Some(StratumParams {
            d,
            m_prime: m / d,
            n_prime: n / d,
        })
    };
    Ok(HeightOneCatalog {
        shape,
        gens,
        complete,
        extra_family,
    })
}

/// A commutative polynomial with rational coefficients in variables
/// `X_1, ..., X_d`, stored canonically (no zero coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyV {
    d: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyV {
    pub fn zero(d: usize) -> Self {
        PolyV {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: Rational) -> Self {
        let mut p = PolyV::zero(d);
        p.add_term(vec![0; d], c);
        p
    }

    /// The variable `X_j`, 1-based.
    pub fn var(d: usize, j: usize) -> Result<Self> {
        if j == 0 || j > d {
            return Err(Error::invalid(format!(
                "variable index {j} out of range 1..={d}"
            )));
        }
        let mut exps = vec![0; d];
        exps[j - 1] = 1;
        let mut p = PolyV::zero(d);
        p.add_term(exps, rat_int(1));
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        use num::Zero;
        assert_eq!(exps.len(), self.d);
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    fn merged(&self, other: &PolyV, negate: bool) -> Result<PolyV> {
        if self.d != other.d {
            return Err(Error::invalid(format!(
                "variable count mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if negate { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyV) -> Result<PolyV> {
        self.merged(other, false)
    }

    pub fn sub(&self, other: &PolyV) -> Result<PolyV> {
        self.merged(other, true)
    }

    pub fn neg(&self) -> PolyV {
        let mut out = PolyV::zero(self.d);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &PolyV) -> Result<PolyV> {
        if self.d != other.d {
            return Err(Error::invalid(format!(
                "variable count mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        let mut out = PolyV::zero(self.d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> PolyV {
        let mut out = PolyV::constant(self.d, rat_int(1));
        for _ in 0..k {
            out = out.mul(self).unwrap();
        }
        out
    }

    /// Degree in `X_j` (1-based); zero for the zero polynomial.
    pub fn degree_in(&self, j: usize) -> u32 {
        assert!(j >= 1 && j <= self.d);
        self.terms.keys().map(|e| e[j - 1]).max().unwrap_or(0)
    }

    /// True when every term contains `X_j` (1-based).
    pub fn divisible_by_var(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.d);
        !self.is_zero() && self.terms.keys().all(|e| e[j - 1] >= 1)
    }
}

/// Build the normal element `u` attached to a polynomial `V` in
/// `d = gcd(m, n)` variables (valuations of `m` and `n` must agree):
///
/// ```text
/// u = sum over terms a * X^(i_1, ..., i_d) of V of
///     a * prod_{j=1..d} E_j^(i_j) * O_j^(r_j - i_j)
/// ```
///
/// where `r_j` is the degree of `V` in `X_j`, and `E_j` (resp. `O_j`) is
/// the product of the staircase generators `b_{i*d + j}` over even (resp.
/// odd) `i >= 0`, factors in increasing `i`.  The result is verified
/// q-normal before returning.
pub fn build_u(m: usize, n: usize, v: &PolyV) -> Result<MatElement> {
    let shape = Shape::new(m, n)?;
    if v2(m) != v2(n) {
        return Err(Error::invalid(format!(
            "the extra normal family needs v2(m) = v2(n); got v2({m}) = {} and v2({n}) = {}",
            v2(m),
            v2(n)
        )));
    }
    let d = num::integer::gcd(m, n);
    if v.d() != d {
        return Err(Error::invalid(format!(
            "polynomial has {} variables, expected d = gcd({m}, {n}) = {d}",
            v.d()
        )));
    }
    if v.is_zero() || v.is_constant() {
        return Err(Error::invalid("polynomial must be nonconstant"));
    }
    for j in 1..=d {
        if v.divisible_by_var(j) {
            return Err(Error::invalid(format!(
                "polynomial must not be divisible by X{j}"
            )));
        }
    }
    let bracket = |j: usize, even: bool| -> Result<MatElement> {
        let mut out = MatElement::one(shape);
        let mut i = if even { 0 } else { 1 };
        while i * d + j <= m + n {
            out = out.mul(&b_generator(shape, i * d + j)?.element)?;
            i += 2;
        }
        Ok(out)
    };
    let r: Vec<u32> = (1..=d).map(|j| v.degree_in(j)).collect();
    let mut u = MatElement::zero(shape);
    for (exps, coeff) in v.terms() {
        let mut term = MatElement::one(shape);
        for j in 1..=d {
            let e = bracket(j, true)?.pow(exps[j - 1])?;
            let o = bracket(j, false)?.pow(r[j - 1] - exps[j - 1])?;
            term = term.mul(&e)?.mul(&o)?;
        }
        u = u.add(&term.scale(&QLaurent::from_rational(coeff.clone())))?;
    }
    if q_normal_check(&u).is_none() {
        return Err(Error::check(
            "constructed element failed the q-normality verification",
        ));
    }
    Ok(u)
}
