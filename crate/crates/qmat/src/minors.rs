//! Quantum minors, the quantum determinant, and the staircase family of
//! q-normal elements `b_1, ..., b_{m+n-1}`.
//!
//! The quantum minor on row set `I = {i_1 < ... < i_t}` and column set
//! `G = {g_1 < ... < g_t}` is the signed permutation sum
//!
//! ```text
//! [I|G] = sum over permutations s of (-q)^(inversions of s)
//!         * Y[i_1, g_{s(1)}] * ... * Y[i_t, g_{s(t)}]
//! ```
//!
//! whose terms are already in normal form because rows strictly increase.
//! The `b_i` are the minors along the antidiagonal staircase of the matrix;
//! each is q-normal, and their pairwise q-commutation exponents have the
//! closed forms in [`b_commutation_formula`].

use crate::pbw::{element_proportional, MatElement, Shape};
use crate::scalars::QLaurent;
use crate::{Error, Result};

/// All permutations of `0..t` with their inversion counts, in a fixed
/// deterministic order.
pub(crate) fn permutations_with_inversions(t: usize) -> Vec<(Vec<usize>, u32)> {
    use itertools::Itertools;
    (0..t)
        .permutations(t)
        .map(|p| {
            let inv = (0..t)
                .flat_map(|x| ((x + 1)..t).map(move |y| (x, y)))
                .filter(|&(x, y)| p[x] > p[y])
                .count() as u32;
            (p, inv)
        })
        .collect()
}

fn check_index_set(len: usize, set: &[usize], what: &str, max: usize) -> Result<()> {
    if set.len() != len || set.is_empty() {
        return Err(Error::invalid(format!(
            "{what} index set must be nonempty and match the other side"
        )));
    }
    if !set.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid(format!(
            "{what} indices must be strictly increasing"
        )));
    }
    if set[0] < 1 || *set.last().unwrap() > max {
        return Err(Error::invalid(format!(
            "{what} indices must lie in 1..={max}"
        )));
    }
    Ok(())
}

/// The quantum minor `[rows|cols]` as a normal-form element.
pub fn quantum_minor(shape: Shape, rows: &[usize], cols: &[usize]) -> Result<MatElement> {
    check_index_set(cols.len(), rows, "row", shape.m())?;
    check_index_set(rows.len(), cols, "column", shape.n())?;
    let t = rows.len();
    let mut out = MatElement::zero(shape);
    for (perm, inv) in permutations_with_inversions(t) {
        let mut exps = vec![0u32; shape.gens()];
        for (k, &pk) in perm.iter().enumerate() {
            exps[shape.flat(rows[k], cols[pk])] += 1;
        }
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        let coeff = QLaurent::term(inv as i64, crate::scalars::rat_int(sign));
        out = out.add(&MatElement::monomial(shape, &exps, &coeff)?)?;
    }
    Ok(out)
}

/// The quantum determinant of a square shape: `[1..m | 1..n]`.
pub fn quantum_determinant(shape: Shape) -> Result<MatElement> {
    if shape.m() != shape.n() {
        return Err(Error::invalid(format!(
            "quantum determinant needs a square shape, got {shape}"
        )));
    }
    let all: Vec<usize> = (1..=shape.m()).collect();
    quantum_minor(shape, &all, &all)
}

/// A staircase generator: its index, defining row/column sets, and the
/// expanded element.  Index `m + n` denotes the empty minor, i.e. 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BGen {
    pub index: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub element: MatElement,
}

/// Row and column sets of `b_i`.  For `m <= n`:
///
/// ```text
/// 1 <= i <= m:        [1..i   | n-i+1..n]
/// m <  i <= n:        [1..m   | n-i+1..n+m-i]
/// n <  i <= m+n-1:    [i-n+1..m | 1..m+n-i]
/// ```
///
/// For `m > n` the sets are those of the transposed shape with row and
/// column roles swapped.  Index `m + n` yields empty sets.
pub fn b_index_sets(shape: Shape, i: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let (m, n) = (shape.m(), shape.n());
    if i == 0 || i > m + n {
        return Err(Error::invalid(format!(
            "staircase index {i} out of range 1..={}",
            m + n
        )));
    }
    if i == m + n {
        return Ok((Vec::new(), Vec::new()));
    }
    if m > n {
        let (rows, cols) = b_index_sets(shape.transposed(), i)?;
        return Ok((cols, rows));
    }
    let sets = if i <= m {
        ((1..=i).collect(), (n - i + 1..=n).collect())
    } else if i <= n {
        ((1..=m).collect(), (n - i + 1..=n + m - i).collect())
    } else {
        ((i - n + 1..=m).collect(), (1..=m + n - i).collect())
    };
    Ok(sets)
}

/// The staircase generator `b_i`, `1 <= i <= m+n` (the top index is 1).
pub fn b_generator(shape: Shape, i: usize) -> Result<BGen> {
    let (rows, cols) = b_index_sets(shape, i)?;
    let element = if rows.is_empty() {
        MatElement::one(shape)
    } else {
        quantum_minor(shape, &rows, &cols)?
    };
    Ok(BGen {
        index: i,
        rows,
        cols,
        element,
    })
}

/// `Some(k)` when `x * y = q^k * (y * x)` with ratio exactly `+q^k`;
/// `None` when the products are not proportional or the ratio is not a
/// plain q-power with coefficient one.  Errors on zero inputs or mismatched
/// shapes.
pub fn commutation_exponent(x: &MatElement, y: &MatElement) -> Result<Option<i64>> {
    if x.shape() != y.shape() {
        return Err(Error::invalid(format!(
            "shape mismatch: {} vs {}",
            x.shape(),
            y.shape()
        )));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::invalid("commutation exponent of a zero element"));
    }
    let p = x.mul(y)?;
    let q = y.mul(x)?;
    Ok(element_proportional(&p, &q).and_then(|c| c.as_q_power()))
}

/// Which closed-form commutation exponent to evaluate, for shapes `m < n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BCommutationCase {
    /// `(b_i, b_j)` with `m <= i < j <= n` (both in the sliding window).
    MiddlePair,
    /// `(b_n, b_i)` with `1 <= i <= m-1`.
    LowPair,
    /// `(b_n, b_{m+n-i})` with `1 <= i <= m-1`; these commute.
    MirrorPair,
}

/// Closed form for staircase commutation exponents when `m < n`:
///
/// - `MiddlePair`: `b_i b_j = q^a b_j b_i` with
///   `a = |[n-i+1, m+n-i] meet [n-j+1, m+n-j]| - m`,
/// - `LowPair`: `b_n b_i = q^a b_i b_n` with `a = |[n-i+1, n] meet [m+1, n]|`,
/// - `MirrorPair`: exponent 0.
///
/// The returned exponent is oriented as `commutation_exponent(first, second)`
/// for the pairs written above.
pub fn b_commutation_formula(
    m: usize,
    n: usize,
    case: BCommutationCase,
    i: usize,
    j: usize,
) -> Result<i64> {
    if m >= n {
        return Err(Error::invalid(format!(
            "closed commutation forms require m < n, got ({m}, {n})"
        )));
    }
    let overlap = |lo1: usize, hi1: usize, lo2: usize, hi2: usize| -> i64 {
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        if lo > hi {
            0
        } else {
            (hi - lo + 1) as i64
        }
    };
    match case {
        BCommutationCase::MiddlePair => {
            if !(m <= i && i < j && j <= n) {
                return Err(Error::invalid(format!(
                    "middle pair needs {m} <= i < j <= {n}, got ({i}, {j})"
                )));
            }
            Ok(overlap(n - i + 1, m + n - i, n - j + 1, m + n - j) - m as i64)
        }
        BCommutationCase::LowPair | BCommutationCase::MirrorPair => {
            if !(1 <= i && i + 1 <= m && j == n) {
                return Err(Error::invalid(format!(
                    "edge pair needs 1 <= i <= {} and j = {n}, got ({i}, {j})",
                    m - 1
                )));
            }
            match case {
                BCommutationCase::LowPair => Ok(overlap(n - i + 1, n, m + 1, n)),
                _ => Ok(0),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::q_normal_check;
    use crate::scalars::rat_int;

    fn sh(m: usize, n: usize) -> Shape {
        Shape::new(m, n).unwrap()
    }

    fn gen(shape: Shape, i: usize, a: usize) -> MatElement {
        MatElement::generator(shape, i, a).unwrap()
    }

    /// Test oracle: expansion of `[rows|cols]` along the first column,
    /// `[I|G] = sum_k (-q)^(k-1) Y[i_k, g_1] * [I \ i_k | G \ g_1]`.
    /// Unlike the permutation sum, the products here need straightening,
    /// so agreement exercises the multiplication path independently.
    fn laplace_first_column(shape: Shape, rows: &[usize], cols: &[usize]) -> MatElement {
        if rows.len() == 1 {
            return gen(shape, rows[0], cols[0]);
        }
        let mut out = MatElement::zero(shape);
        for (k, &row) in rows.iter().enumerate() {
            let sub_rows: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| r != row)
                .collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let coeff = QLaurent::term(k as i64, rat_int(sign));
            let term = gen(shape, row, cols[0])
                .mul(&laplace_first_column(shape, &sub_rows, &cols[1..]))
                .unwrap()
                .scale(&coeff);
            out = out.add(&term).unwrap();
        }
        out
    }

    #[test]
    fn two_by_two_minor() {
        let s = sh(2, 2);
        let det = quantum_determinant(s).unwrap();
        let expected = MatElement::monomial(s, &[1, 0, 0, 1], &QLaurent::one())
            .unwrap()
            .add(&MatElement::monomial(s, &[0, 1, 1, 0], &QLaurent::term(1, rat_int(-1))).unwrap())
            .unwrap();
        assert_eq!(det, expected, "det_q = Y[1,1]Y[2,2] - q Y[1,2]Y[2,1]");
    }

    #[test]
    fn single_entry_minor() {
        let s = sh(2, 3);
        assert_eq!(quantum_minor(s, &[1], &[3]).unwrap(), gen(s, 1, 3));
    }

    #[test]
    fn three_by_three_determinant_structure() {
        let s = sh(3, 3);
        let det = quantum_determinant(s).unwrap();
        assert_eq!(det.num_terms(), 6);
        // The order-reversing permutation has 3 inversions: coefficient -q^3.
        let mut reversal = vec![0u32; 9];
        reversal[s.flat(1, 3)] = 1;
        reversal[s.flat(2, 2)] = 1;
        reversal[s.flat(3, 1)] = 1;
        assert_eq!(det.coeff(&reversal), QLaurent::term(3, rat_int(-1)));
    }

    #[test]
    fn minor_matches_laplace_oracle() {
        for (m, n, rows, cols) in [
            (2usize, 2usize, vec![1, 2], vec![1, 2]),
            (2, 3, vec![1, 2], vec![1, 3]),
            (3, 3, vec![1, 2, 3], vec![1, 2, 3]),
            (3, 4, vec![1, 3], vec![2, 4]),
            (3, 3, vec![2, 3], vec![1, 2]),
        ] {
            let s = sh(m, n);
            assert_eq!(
                quantum_minor(s, &rows, &cols).unwrap(),
                laplace_first_column(s, &rows, &cols),
                "minor [{rows:?}|{cols:?}] in {s}"
            );
        }
    }

    #[test]
    fn minor_index_validation() {
        let s = sh(2, 3);
        assert!(quantum_minor(s, &[1, 2], &[1]).is_err());
        assert!(quantum_minor(s, &[2, 1], &[1, 2]).is_err());
        assert!(quantum_minor(s, &[1, 3], &[1, 2]).is_err());
        assert!(quantum_minor(s, &[], &[]).is_err());
        assert!(quantum_minor(s, &[1], &[4]).is_err());
        assert!(quantum_determinant(s).is_err());
    }

    #[test]
    fn staircase_family_in_2x3() {
        let s = sh(2, 3);
        let expect = [
            (1, vec![1], vec![3]),
            (2, vec![1, 2], vec![2, 3]),
            (3, vec![1, 2], vec![1, 2]),
            (4, vec![2], vec![1]),
        ];
        for (i, rows, cols) in expect {
            let b = b_generator(s, i).unwrap();
            assert_eq!((b.rows, b.cols), (rows, cols), "b_{i} index sets");
        }
        let top = b_generator(s, 5).unwrap();
        assert_eq!(top.element, MatElement::one(s));
        assert!(b_generator(s, 6).is_err());
        assert!(b_generator(s, 0).is_err());
    }

    #[test]
    fn staircase_family_in_1x2_and_transpose() {
        let s = sh(1, 2);
        assert_eq!(b_generator(s, 1).unwrap().element, gen(s, 1, 2));
        assert_eq!(b_generator(s, 2).unwrap().element, gen(s, 1, 1));
        // Transposed shape: roles of rows and columns swap.
        let t = sh(2, 1);
        assert_eq!(b_generator(t, 1).unwrap().element, gen(t, 2, 1));
        assert_eq!(b_generator(t, 2).unwrap().element, gen(t, 1, 1));
        let tall = sh(3, 2);
        let wide = sh(2, 3);
        for i in 1..=4 {
            let (r, c) = b_index_sets(wide, i).unwrap();
            let (rt, ct) = b_index_sets(tall, i).unwrap();
            assert_eq!((rt, ct), (c, r), "b_{i} transposed index sets");
        }
    }

    #[test]
    fn staircase_generators_are_q_normal() {
        for (m, n) in [(2, 2), (2, 3), (1, 4)] {
            let s = sh(m, n);
            for i in 1..=(m + n - 1) {
                let b = b_generator(s, i).unwrap();
                assert!(
                    q_normal_check(&b.element).is_some(),
                    "b_{i} in {s} must be q-normal"
                );
            }
        }
    }

    #[test]
    fn commutation_exponents_in_2x3() {
        let s = sh(2, 3);
        let b: Vec<MatElement> = (1..=4)
            .map(|i| b_generator(s, i).unwrap().element)
            .collect();
        // b_2 b_3 = q^-1 b_3 b_2 and b_3 b_1 = q b_1 b_3.
        assert_eq!(commutation_exponent(&b[1], &b[2]).unwrap(), Some(-1));
        assert_eq!(commutation_exponent(&b[2], &b[0]).unwrap(), Some(1));
        assert_eq!(
            b_commutation_formula(2, 3, BCommutationCase::MiddlePair, 2, 3).unwrap(),
            -1
        );
        assert_eq!(
            b_commutation_formula(2, 3, BCommutationCase::LowPair, 1, 3).unwrap(),
            1
        );
        // b_3 and b_{4} = b_{m+n-1} commute.
        assert_eq!(commutation_exponent(&b[2], &b[3]).unwrap(), Some(0));
        assert_eq!(
            b_commutation_formula(2, 3, BCommutationCase::MirrorPair, 1, 3).unwrap(),
            0
        );
    }

    #[test]
    fn commutation_exponent_rejects_crossing_pair() {
        let s = sh(2, 2);
        let x = gen(s, 1, 1);
        let y = gen(s, 2, 2);
        assert_eq!(commutation_exponent(&x, &y).unwrap(), None);
        assert!(commutation_exponent(&x, &MatElement::zero(s)).is_err());
    }

    #[test]
    fn formula_matches_straightening_up_to_3x4() {
        for (m, n) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let s = sh(m, n);
            let b: Vec<MatElement> = (1..=(m + n))
                .map(|i| b_generator(s, i).unwrap().element)
                .collect();
            for i in m..=n {
                for j in (i + 1)..=n {
                    let formula =
                        b_commutation_formula(m, n, BCommutationCase::MiddlePair, i, j).unwrap();
                    let computed = commutation_exponent(&b[i - 1], &b[j - 1]).unwrap();
                    assert_eq!(computed, Some(formula), "(b_{i}, b_{j}) in {s}");
                }
            }
            for i in 1..m {
                let formula =
                    b_commutation_formula(m, n, BCommutationCase::LowPair, i, n).unwrap();
                let computed = commutation_exponent(&b[n - 1], &b[i - 1]).unwrap();
                assert_eq!(computed, Some(formula), "(b_{n}, b_{i}) in {s}");
                let mirror = commutation_exponent(&b[n - 1], &b[m + n - i - 1]).unwrap();
                assert_eq!(mirror, Some(0), "(b_{n}, b_{}) in {s}", m + n - i);
            }
        }
    }

    #[test]
    fn formula_input_validation() {
        assert!(b_commutation_formula(2, 2, BCommutationCase::MiddlePair, 2, 2).is_err());
        assert!(b_commutation_formula(3, 2, BCommutationCase::MiddlePair, 2, 3).is_err());
        assert!(b_commutation_formula(2, 3, BCommutationCase::MiddlePair, 3, 2).is_err());
        assert!(b_commutation_formula(2, 3, BCommutationCase::LowPair, 2, 3).is_err());
        assert!(b_commutation_formula(2, 3, BCommutationCase::LowPair, 1, 2).is_err());
    }

    #[test]
    fn quantum_determinant_is_central() {
        for (m, n) in [(2, 2), (3, 3)] {
            let s = sh(m, n);
            let det = quantum_determinant(s).unwrap();
            let ratios = q_normal_check(&det).unwrap();
            assert!(
                ratios.iter().all(|c| c.is_one()),
                "det_q must commute with every generator in {s}"
            );
        }
    }
}
