//! Step-by-step restoration of the matrix generators inside the quantum
//! torus, inverting the deleting-derivations reduction.
//!
//! Starting from the torus generators `T[i,a]`, the pivots `(j,b)` of the
//! grid are visited in ascending lexicographic order; at pivot `(j,b)` every
//! entry strictly north-west of it is updated in place:
//!
//! ```text
//! entry(i,a) += entry(i,b) * entry(j,b)^-1 * entry(j,a)    (i < j, a < b)
//! ```
//!
//! After the final pivot the entries generate a copy of the matrix algebra:
//! they satisfy the defining relations ([`verify_embedding`]), and each
//! staircase generator `b_i` evaluates to the single torus monomial
//! predicted by [`crate::torus::b_monomial_exponent`]
//! ([`verify_b_monomials`]).

use crate::minors::b_generator;
use crate::pbw::{relation_case, MatElement, RelationCase, Shape};
use crate::scalars::QLaurent;
use crate::torus::{b_monomial_exponent, TorusElement};
use crate::{Error, Result};

/// The pivot schedule: the grid positions `(1,1) < ... < (m,n)` without
/// `(1,1)`, followed by the terminal marker `(m, n+1)`.  Restoration applies
/// one update round per non-terminal entry.
pub fn step_order(shape: Shape) -> Vec<(usize, usize)> {
    let mut order: Vec<(usize, usize)> = (1..=shape.m())
        .flat_map(|j| (1..=shape.n()).map(move |b| (j, b)))
        .skip(1)
        .collect();
    order.push((shape.m(), shape.n() + 1));
    order
}

/// The matrix generators realized inside the quantum torus.
#[derive(Clone, PartialEq, Debug)]
pub struct RestoredGenerators {
    shape: Shape,
    entries: Vec<TorusElement>,
}

impl RestoredGenerators {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// The image of `Y[i,a]`, 1-based.
    pub fn entry(&self, i: usize, a: usize) -> &TorusElement {
        &self.entries[self.shape.flat(i, a)]
    }

    /// All images in row-major generator order.
    pub fn entries(&self) -> &[TorusElement] {
        &self.entries
    }
}

/// Run the full pivot schedule starting from the torus generators.
///
/// At each pivot the inverted entry is required to still be the bare
/// generator monomial `T[j,b]`; the schedule guarantees this (an entry is
/// only modified by pivots in strictly lower rows), and it is what makes
/// the in-place inversion legal.
pub fn restore_generators(shape: Shape) -> Result<RestoredGenerators> {
    let mut entries: Vec<TorusElement> = Vec::with_capacity(shape.gens());
    for i in 1..=shape.m() {
        for a in 1..=shape.n() {
            entries.push(TorusElement::generator(shape, i, a)?);
        }
    }
    for (j, b) in step_order(shape) {
        if b > shape.n() {
            break;
        }
        let pivot = &entries[shape.flat(j, b)];
        let mut expected = vec![0i64; shape.gens()];
        expected[shape.flat(j, b)] = 1;
        if *pivot != TorusElement::monomial(shape, &expected, &QLaurent::one())? {
            return Err(Error::check(format!(
                "pivot ({j},{b}) is no longer the bare generator: {pivot}"
            )));
        }
        let inv = pivot.inverse_monomial()?;
        for i in 1..j {
            for a in 1..b {
                let correction = entries[shape.flat(i, b)]
                    .mul(&inv)?
                    .mul(&entries[shape.flat(j, a)])?;
                let k = shape.flat(i, a);
                entries[k] = entries[k].add(&correction)?;
            }
        }
    }
    Ok(RestoredGenerators { shape, entries })
}

/// Substitute `entries[k]` for the `k`-th generator of a normal-form
/// element, multiplying factors in ascending generator order.
pub fn evaluate_in_torus(x: &MatElement, entries: &[TorusElement]) -> Result<TorusElement> {
    let shape = x.shape();
    if entries.len() != shape.gens() {
        return Err(Error::invalid(format!(
            "expected {} substitution values, got {}",
            shape.gens(),
            entries.len()
        )));
    }
    let mut out = TorusElement::zero(shape);
    for (exps, coeff) in x.terms() {
        let mut term = TorusElement::one(shape);
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&entries[k])?;
            }
        }
        out = out.add(&term.scale(coeff))?;
    }
    Ok(out)
}

fn relation_holds(
    shape: Shape,
    entries: &[TorusElement],
    (i, a): (usize, usize),
    (j, b): (usize, usize),
) -> Result<bool> {
    let low = &entries[shape.flat(i, a)];
    let high = &entries[shape.flat(j, b)];
    let lhs = high.mul(low)?;
    let rhs = match relation_case(i, a, j, b) {
        RelationCase::SameRow | RelationCase::SameColumn => {
            low.mul(high)?.scale(&QLaurent::q_pow(-1))
        }
        RelationCase::Commuting => low.mul(high)?,
        RelationCase::Crossing => {
            let correction = entries[shape.flat(i, b)]
                .mul(&entries[shape.flat(j, a)])?
                .scale(&QLaurent::q_minus_q_inv());
            low.mul(high)?.sub(&correction)?
        }
    };
    Ok(lhs == rhs)
}

/// Check that the restored entries satisfy every defining relation of the
/// matrix algebra, i.e. that they generate a genuine copy of it.
pub fn verify_embedding(restored: &RestoredGenerators) -> Result<()> {
    let shape = restored.shape();
    for kl in 0..shape.gens() {
        for kh in (kl + 1)..shape.gens() {
            let pos_l = shape.coords(kl);
            let pos_h = shape.coords(kh);
            if !relation_holds(shape, &restored.entries, pos_l, pos_h)? {
                return Err(Error::check(format!(
                    "relation between Y[{},{}] and Y[{},{}] fails on restored entries",
                    pos_l.0, pos_l.1, pos_h.0, pos_h.1
                )));
            }
        }
    }
    Ok(())
}

/// Check that each staircase generator `b_i` evaluates on the restored
/// entries to exactly the staircase torus monomial with coefficient one.
pub fn verify_b_monomials(restored: &RestoredGenerators) -> Result<()> {
    let shape = restored.shape();
    for i in 1..=(shape.m() + shape.n()) {
        let b = b_generator(shape, i)?;
        let value = evaluate_in_torus(&b.element, &restored.entries)?;
        let expected =
            TorusElement::monomial(shape, &b_monomial_exponent(shape, i)?, &QLaurent::one())?;
        if value != expected {
            return Err(Error::check(format!(
                "b_{i} in {shape} evaluates to {value}, expected {expected}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::commutation_exponent;
    use crate::torus::{build_b, sigma_exponent};

    fn sh(m: usize, n: usize) -> Shape {
        Shape::new(m, n).unwrap()
    }

    #[test]
    fn pivot_schedule() {
        assert_eq!(
            step_order(sh(2, 2)),
            vec![(1, 2), (2, 1), (2, 2), (2, 3)]
        );
        assert_eq!(step_order(sh(1, 3)), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn single_row_restores_to_plain_generators() {
        for shape in [sh(1, 4), sh(3, 1)] {
            let restored = restore_generators(shape).unwrap();
            for k in 0..shape.gens() {
                let (i, a) = shape.coords(k);
                assert_eq!(
                    restored.entry(i, a),
                    &TorusElement::generator(shape, i, a).unwrap()
                );
            }
        }
    }

    #[test]
    fn two_by_two_corner_entry() {
        let s = sh(2, 2);
        let restored = restore_generators(s).unwrap();
        // Y[1,1] = T[1,1] + q * T^(0,1,1,-1): the correction
        // T[1,2] T[2,2]^-1 T[2,1] reorders with a single factor of q.
        let expected = TorusElement::generator(s, 1, 1)
            .unwrap()
            .add(&TorusElement::monomial(s, &[0, 1, 1, -1], &QLaurent::q_pow(1)).unwrap())
            .unwrap();
        assert_eq!(restored.entry(1, 1), &expected);
        for (i, a) in [(1, 2), (2, 1), (2, 2)] {
            assert_eq!(
                restored.entry(i, a),
                &TorusElement::generator(s, i, a).unwrap()
            );
        }
    }

    #[test]
    fn restored_entries_satisfy_defining_relations() {
        for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 4), (3, 2)] {
            let restored = restore_generators(sh(m, n)).unwrap();
            verify_embedding(&restored).unwrap();
        }
    }

    #[test]
    fn staircase_generators_collapse_to_single_monomials() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
            let restored = restore_generators(sh(m, n)).unwrap();
            verify_b_monomials(&restored).unwrap();
        }
    }

    #[test]
    fn evaluate_respects_products() {
        // Evaluation of x*y must match evaluating x and y separately and
        // multiplying in the torus, since the entries satisfy the relations.
        let s = sh(2, 2);
        let restored = restore_generators(s).unwrap();
        let x = crate::minors::quantum_determinant(s).unwrap();
        let y = MatElement::generator(s, 1, 2).unwrap();
        let xy = evaluate_in_torus(&x.mul(&y).unwrap(), restored.entries()).unwrap();
        let x_then_y = evaluate_in_torus(&x, restored.entries())
            .unwrap()
            .mul(&evaluate_in_torus(&y, restored.entries()).unwrap())
            .unwrap();
        assert_eq!(xy, x_then_y);
    }

    #[test]
    fn evaluate_rejects_wrong_arity() {
        let s = sh(2, 2);
        let x = MatElement::one(s);
        let entries = vec![TorusElement::one(s); 3];
        assert!(evaluate_in_torus(&x, &entries).is_err());
    }

    #[test]
    fn staircase_commutation_matches_torus_pairing() {
        // Two independent routes to the same exponent: straightening the
        // product b_i b_j in normal form, and the antisymmetric pairing of
        // their staircase exponent vectors in the torus.
        for (m, n) in [(2, 3), (2, 2), (1, 4)] {
            let s = sh(m, n);
            let b = build_b(s);
            for i in 1..=(m + n - 1) {
                for j in 1..=(m + n - 1) {
                    if i == j {
                        continue;
                    }
                    let bi = b_generator(s, i).unwrap().element;
                    let bj = b_generator(s, j).unwrap().element;
                    let straightened = commutation_exponent(&bi, &bj).unwrap();
                    let si = b_monomial_exponent(s, i).unwrap();
                    let sj = b_monomial_exponent(s, j).unwrap();
                    assert_eq!(
                        straightened,
                        Some(sigma_exponent(&b, &si, &sj)),
                        "(b_{i}, b_{j}) in {s}"
                    );
                }
            }
        }
    }
}
