//! Elements of `O_q(M_{m,n})` in normal form and their arithmetic.
//!
//! A monomial is an exponent vector over the generators `Y[i,a]` listed in
//! row-major order, and elements are linear combinations of monomials with
//! [`QLaurent`] coefficients.  The ordered monomials form a basis, so
//! structural equality of the term maps is equality in the algebra.
//!
//! Multiplication straightens products by repeatedly rewriting the leftmost
//! adjacent out-of-order generator pair with the defining relations.  Each
//! rewrite preserves total degree and strictly lowers the number of
//! inversions, so the process terminates.

use std::collections::BTreeMap;
use std::fmt;

use num::Signed;

use crate::scalars::{ql_proportional, QLaurent, QRatio};
use crate::{Error, Result};

/// The size `(m, n)` of a quantum matrix algebra; both sides at least 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Shape {
    m: usize,
    n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Shape> {
        if m == 0 || n == 0 {
            return Err(Error::invalid(format!(
                "shape ({m}, {n}) must have both sides >= 1"
            )));
        }
        Ok(Shape { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, `m * n`.
    pub fn gens(&self) -> usize {
        self.m * self.n
    }

    /// Row-major position of `Y[i,a]`; indices are 1-based.
    pub fn flat(&self, i: usize, a: usize) -> usize {
        assert!(
            (1..=self.m).contains(&i) && (1..=self.n).contains(&a),
            "generator Y[{i},{a}] out of range for shape ({}, {})",
            self.m,
            self.n
        );
        (i - 1) * self.n + (a - 1)
    }

    pub fn checked_flat(&self, i: usize, a: usize) -> Result<usize> {
        if (1..=self.m).contains(&i) && (1..=self.n).contains(&a) {
            Ok((i - 1) * self.n + (a - 1))
        } else {
            Err(Error::invalid(format!(
                "generator Y[{i},{a}] out of range for shape ({}, {})",
                self.m, self.n
            )))
        }
    }

    /// 1-based `(row, column)` of the generator at flat position `k`.
    pub fn coords(&self, k: usize) -> (usize, usize) {
        assert!(k < self.gens());
        (k / self.n + 1, k % self.n + 1)
    }

    pub fn transposed(&self) -> Shape {
        Shape {
            m: self.n,
            n: self.m,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Which defining relation a generator pair falls under, for flat positions
/// `k < l` with coordinates `(i, a)` and `(j, b)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationCase {
    /// Same row, `a < b`: the later generator q-commutes past with `q^-1`.
    SameRow,
    /// Same column, `i < j`: the later generator q-commutes past with `q^-1`.
    SameColumn,
    /// `i < j`, `a > b`: the pair commutes.
    Commuting,
    /// `i < j`, `a < b`: commuting up to the correction term
    /// `-(q - q^-1) * Y[i,b] * Y[j,a]`.
    Crossing,
}

/// Classify the relation satisfied by `Y[j,b] * Y[i,a]` for `(i,a)` strictly
/// before `(j,b)` in row-major order.
pub fn relation_case(i: usize, a: usize, j: usize, b: usize) -> RelationCase {
    assert!(i < j || (i == j && a < b), "pair must be ordered");
    if i == j {
        RelationCase::SameRow
    } else if a == b {
        RelationCase::SameColumn
    } else if a > b {
        RelationCase::Commuting
    } else {
        RelationCase::Crossing
    }
}

/// An element of `O_q(M_{m,n})` as a normal-form linear combination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatElement {
    shape: Shape,
    terms: BTreeMap<Vec<u32>, QLaurent>,
}

impl MatElement {
    pub fn zero(shape: Shape) -> Self {
        MatElement {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        let mut out = MatElement::zero(shape);
        out.add_term(&vec![0; shape.gens()], &QLaurent::one());
        out
    }

    /// The generator `Y[i,a]` (1-based indices).
    pub fn generator(shape: Shape, i: usize, a: usize) -> Result<Self> {
        let k = shape.checked_flat(i, a)?;
        let mut exps = vec![0u32; shape.gens()];
        exps[k] = 1;
        let mut out = MatElement::zero(shape);
        out.add_term(&exps, &QLaurent::one());
        Ok(out)
    }

    /// A single scaled monomial.  The exponent vector must have length `m*n`.
    pub fn monomial(shape: Shape, exps: &[u32], coeff: &QLaurent) -> Result<Self> {
        if exps.len() != shape.gens() {
            return Err(Error::invalid(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                shape.gens()
            )));
        }
        let mut out = MatElement::zero(shape);
        out.add_term(&exps.to_vec(), coeff);
        Ok(out)
    }

    pub fn from_terms<'a>(
        shape: Shape,
        terms: impl IntoIterator<Item = (&'a [u32], QLaurent)>,
    ) -> Result<Self> {
        let mut out = MatElement::zero(shape);
        for (exps, coeff) in terms {
            if exps.len() != shape.gens() {
                return Err(Error::invalid("exponent vector length mismatch"));
            }
            out.add_term(&exps.to_vec(), &coeff);
        }
        Ok(out)
    }

    fn add_term(&mut self, exps: &Vec<u32>, coeff: &QLaurent) {
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

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> QLaurent {
        self.terms.get(exps).cloned().unwrap_or_else(QLaurent::zero)
    }

    fn check_same_shape(&self, other: &MatElement) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::invalid(format!(
                "shape mismatch: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatElement) -> Result<MatElement> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatElement) -> Result<MatElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatElement {
        MatElement {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &QLaurent) -> MatElement {
        let mut out = MatElement::zero(self.shape);
        for (e, d) in self.terms() {
            out.add_term(e, &c.mul(d));
        }
        out
    }

    /// Product in the algebra, straightened to normal form.
    pub fn mul(&self, other: &MatElement) -> Result<MatElement> {
        self.check_same_shape(other)?;
        let mut out = MatElement::zero(self.shape);
        for (e1, c1) in self.terms() {
            let w1 = exps_to_word(e1);
            for (e2, c2) in other.terms() {
                let mut word = w1.clone();
                word.extend(exps_to_word(e2));
                straighten(self.shape, word, c1.mul(c2), &mut out);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MatElement> {
        let mut out = MatElement::one(self.shape);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Row and column multidegrees when every monomial shares them.
    /// `None` for the zero element or a mixed-character element.
    pub fn h_character(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut result: Option<(Vec<u32>, Vec<u32>)> = None;
        for (exps, _) in self.terms() {
            let mut row = vec![0u32; self.shape.m];
            let mut col = vec![0u32; self.shape.n];
            for (k, &e) in exps.iter().enumerate() {
                let (i, a) = self.shape.coords(k);
                row[i - 1] += e;
                col[a - 1] += e;
            }
            match &result {
                None => result = Some((row, col)),
                Some(seen) if *seen == (row.clone(), col.clone()) => {}
                Some(_) => return None,
            }
        }
        result
    }

    /// Total degree when the element is homogeneous; `None` otherwise or for 0.
    pub fn total_degree(&self) -> Option<u32> {
        let mut result: Option<u32> = None;
        for (exps, _) in self.terms() {
            let d = exps.iter().sum();
            match result {
                None => result = Some(d),
                Some(seen) if seen == d => {}
                Some(_) => return None,
            }
        }
        result
    }

    /// Largest total degree among the monomials; `None` for the zero element.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms().map(|(e, _)| e.iter().sum()).max()
    }
}

fn exps_to_word(exps: &[u32]) -> Vec<u16> {
    let mut word = Vec::new();
    for (k, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            word.push(k as u16);
        }
    }
    word
}

fn word_to_exps(word: &[u16], gens: usize) -> Vec<u32> {
    let mut exps = vec![0u32; gens];
    for &g in word {
        exps[g as usize] += 1;
    }
    exps
}

/// Straighten `coeff * word` into `out`.
///
/// Pending unsorted words are pooled in a map so that intermediate duplicates
/// merge (and possibly cancel) instead of multiplying.
fn straighten(shape: Shape, word: Vec<u16>, coeff: QLaurent, out: &mut MatElement) {
    let mut pending: BTreeMap<Vec<u16>, QLaurent> = BTreeMap::new();
    pending.insert(word, coeff);
    while let Some((word, coeff)) = pending.pop_first() {
        // Cancelled duplicates may leave zero coefficients behind; skip them.
        if coeff.is_zero() {
            continue;
        }
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let Some(p) = descent else {
            out.add_term(&word_to_exps(&word, shape.gens()), &coeff);
            continue;
        };
        let (j, b) = shape.coords(word[p] as usize);
        let (i, a) = shape.coords(word[p + 1] as usize);
        let mut swapped = word.clone();
        swapped.swap(p, p + 1);
        let mut push = |w: Vec<u16>, c: QLaurent| {
            let entry = pending.entry(w).or_insert_with(QLaurent::zero);
            *entry = entry.add(&c);
        };
        if i == j || a == b {
            push(swapped, coeff.mul(&QLaurent::q_pow(-1)));
        } else if b < a {
            push(swapped, coeff);
        } else {
            // i < j and a < b: swap plus the lower-order correction term.
            let mut corrected = word.clone();
            corrected[p] = shape.flat(i, b) as u16;
            corrected[p + 1] = shape.flat(j, a) as u16;
            let correction = coeff.mul(&QLaurent::q_minus_q_inv().neg());
            push(swapped, coeff);
            push(corrected, correction);
        }
    }
}

/// The single ratio `c` with `p = c * r` monomial-by-monomial, or `None`
/// when supports differ or the ratios disagree.  Decided by
/// cross-multiplication against the reduced ratio of the first coefficients.
pub fn element_proportional(p: &MatElement, r: &MatElement) -> Option<QRatio> {
    if p.shape != r.shape {
        return None;
    }
    if p.is_zero() && r.is_zero() {
        return Some(QRatio::one());
    }
    if p.num_terms() != r.num_terms() {
        return None;
    }
    let mut ratio: Option<QRatio> = None;
    for ((ep, cp), (er, cr)) in p.terms().zip(r.terms()) {
        if ep != er {
            return None;
        }
        match &ratio {
            None => ratio = Some(ql_proportional(cp, cr)?),
            Some(c) => {
                if cp.mul(&c.den) != c.num.mul(cr) {
                    return None;
                }
            }
        }
    }
    ratio
}

/// The q-normality test: for every generator `g`, `x * g` and `g * x` must
/// have identical support with a single constant ratio `c_g` such that
/// `x * g = c_g * (g * x)`.  Returns the per-generator ratios in row-major
/// generator order, or `None` when some generator fails (or `x = 0`).
pub fn q_normal_check(x: &MatElement) -> Option<Vec<QRatio>> {
    if x.is_zero() {
        return None;
    }
    let shape = x.shape();
    let mut ratios = Vec::with_capacity(shape.gens());
    for k in 0..shape.gens() {
        let (i, a) = shape.coords(k);
        let g = MatElement::generator(shape, i, a).expect("generator in range");
        let p = x.mul(&g).expect("same shape");
        let q = g.mul(x).expect("same shape");
        ratios.push(element_proportional(&p, &q)?);
    }
    Some(ratios)
}

impl fmt::Display for MatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(&self.shape, exps, "Y");
            write_term(f, idx == 0, coeff, &mono)?;
        }
        Ok(())
    }
}

/// Shared pretty-printing of `coeff * monomial` with sign handling.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &QLaurent,
    mono: &str,
) -> fmt::Result {
    let (neg, body) = match coeff.as_unit() {
        Some((k, c)) => {
            let mag = QLaurent::term(k, c.abs());
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.to_string()
            } else {
                format!("{mag}*{mono}")
            };
            (c.is_negative(), body)
        }
        None => {
            // Factor the sign of the leading q-power out of block coefficients.
            let neg = coeff.coeff(coeff.max_exp().unwrap()).is_negative();
            let shown = if neg { coeff.neg() } else { coeff.clone() };
            let body = if mono.is_empty() {
                format!("({shown})")
            } else {
                format!("({shown})*{mono}")
            };
            (neg, body)
        }
    };
    match (first, neg) {
        (true, false) => write!(f, "{body}"),
        (true, true) => write!(f, "-{body}"),
        (false, false) => write!(f, " + {body}"),
        (false, true) => write!(f, " - {body}"),
    }
}

pub(crate) fn monomial_string<E>(shape: &Shape, exps: &[E], letter: &str) -> String
where
    E: Copy + Into<i64>,
{
    let mut factors = Vec::new();
    for (k, &e) in exps.iter().enumerate() {
        let e: i64 = e.into();
        if e == 0 {
            continue;
        }
        let (i, a) = shape.coords(k);
        if e == 1 {
            factors.push(format!("{letter}[{i},{a}]"));
        } else {
            factors.push(format!("{letter}[{i},{a}]^{e}"));
        }
    }
    factors.join("*")
}
