//! Laurent polynomials in `q` over the rationals, and reduced formal ratios.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::Rational;

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Stored as a sparse exponent-to-coefficient map; zero coefficients are
/// never kept, so structural equality is arithmetic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::q_pow(0)
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i64) -> Self {
        QLaurent::term(k, Rational::one())
    }

    /// The single term `c * q^k` (empty when `c == 0`).
    pub fn term(k: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        QLaurent { terms }
    }

    pub fn from_rational(c: Rational) -> Self {
        QLaurent::term(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        QLaurent::from_rational(super::rat_int(n))
    }

    /// The binomial `q - q^-1`.
    pub fn q_minus_q_inv() -> Self {
        QLaurent::q_pow(1).sub(&QLaurent::q_pow(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_unit()
            .map(|(k, c)| k == 0 && c.is_one())
            .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^k` (zero when absent).
    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exponent/coefficient pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((k, c))` when `self` is the single term `c * q^k` with `c != 0`.
    pub fn as_unit(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((*k, c))
        } else {
            None
        }
    }

    /// True when `self` is a nonzero rational multiple of a power of `q`.
    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    /// Inverse of a unit: `(c * q^k)^-1 = c^-1 * q^-k`.  `None` otherwise.
    pub fn unit_inverse(&self) -> Option<QLaurent> {
        let (k, c) = self.as_unit()?;
        Some(QLaurent::term(-k, c.recip()))
    }

    pub(crate) fn add_assign_term(&mut self, k: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_assign_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &QLaurent) -> QLaurent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (k1, c1) in self.iter() {
            for (k2, c2) in other.iter() {
                out.add_assign_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(k, d)| (*k, c * d)).collect(),
        }
    }

    pub fn mul_q_pow(&self, k: i64) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> QLaurent {
        let mut out = QLaurent::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient vector of `self / q^min_exp`, ascending from degree 0.
    /// Empty for zero.
    fn poly_coeffs(&self) -> Vec<Rational> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|k| self.coeff(k)).collect(),
            _ => Vec::new(),
        }
    }

    fn from_poly_coeffs(shift: i64, coeffs: &[Rational]) -> QLaurent {
        let mut out = QLaurent::zero();
        for (d, c) in coeffs.iter().enumerate() {
            out.add_assign_term(shift + d as i64, c);
        }
        out
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

/// A formal ratio `num/den` of Laurent polynomials, reduced so that
/// `gcd(num, den)` is a unit and `den` is monic with minimum exponent 0
/// (`den == 1` exactly when the ratio is itself a Laurent polynomial).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRatio {
    pub num: QLaurent,
    pub den: QLaurent,
}

impl QRatio {
    pub fn one() -> Self {
        QRatio {
            num: QLaurent::one(),
            den: QLaurent::one(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some((k, c))` when the ratio is the Laurent unit `c * q^k`.
    pub fn as_unit(&self) -> Option<(i64, &Rational)> {
        if self.den.is_one() {
            self.num.as_unit()
        } else {
            None
        }
    }

    /// `Some(k)` when the ratio is exactly `q^k` with coefficient one.
    pub fn as_q_power(&self) -> Option<i64> {
        self.as_unit()
            .and_then(|(k, c)| if c.is_one() { Some(k) } else { None })
    }
}

impl fmt::Display for QRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Remainder of `a` modulo `b` in `Q[q]` (coefficient vectors, ascending).
fn poly_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let factor = &a[da] / &lead;
        if !factor.is_zero() {
            for j in 0..=db {
                let t = &factor * &b[j];
                a[da - db + j] -= t;
            }
        }
        a.pop();
        while a.last().map(|c| c.is_zero()).unwrap_or(false) {
            a.pop();
        }
        if a.is_empty() {
            break;
        }
    }
    a
}

/// Monic gcd in `Q[q]` by the Euclidean algorithm.  Inputs nonempty.
fn poly_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    for c in &mut a {
        *c /= &lead;
    }
    a
}

/// Exact quotient `a / b` in `Q[q]`; panics if the division is inexact
/// (callers only divide by known divisors).
fn poly_div_exact(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() {
        return a;
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![Rational::zero(); a.len() - db];
    while a.len() > db {
        let da = a.len() - 1;
        let factor = &a[da] / &lead;
        quot[da - db] = factor.clone();
        if !factor.is_zero() {
            for j in 0..=db {
                let t = &factor * &b[j];
                a[da - db + j] -= t;
            }
        }
        a.pop();
        while a.last().map(|c| c.is_zero()).unwrap_or(false) {
            a.pop();
        }
    }
    assert!(a.is_empty(), "inexact polynomial division");
    quot
}

/// The reduced formal ratio `c = p/r` with `p = c * r`.
///
/// Decided entirely inside `Q[q]`: divide both arguments by their monic gcd,
/// then normalize the denominator to be monic with minimum exponent 0,
/// absorbing the unit into the numerator.  Unit denominators collapse to 1,
/// so `(q^3 - q, q - q^-1)` yields `q^2 / 1`.  Returns `None` when exactly
/// one argument is zero; the zero ratio `0/1` when both are.
pub fn ql_proportional(p: &QLaurent, r: &QLaurent) -> Option<QRatio> {
    match (p.is_zero(), r.is_zero()) {
        (true, true) => {
            return Some(QRatio {
                num: QLaurent::zero(),
                den: QLaurent::one(),
            })
        }
        (true, false) | (false, true) => return None,
        (false, false) => {}
    }
    let (pa, pc) = (p.min_exp().unwrap(), p.poly_coeffs());
    let (ra, rc) = (r.min_exp().unwrap(), r.poly_coeffs());
    let g = poly_gcd(pc.clone(), rc.clone());
    let u = QLaurent::from_poly_coeffs(pa, &poly_div_exact(pc, &g));
    let v = QLaurent::from_poly_coeffs(ra, &poly_div_exact(rc, &g));
    // Normalize: den monic, min exponent 0.
    let unit = QLaurent::term(v.min_exp().unwrap(), v.coeff(v.max_exp().unwrap()));
    let unit_inv = unit.unit_inverse().unwrap();
    Some(QRatio {
        num: u.mul(&unit_inv),
        den: v.mul(&unit_inv),
    })
}
