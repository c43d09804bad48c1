//! Named verification suites sweeping the library's mathematical
//! invariants over all shapes up to a size bound.
//!
//! Each suite produces one [`Check`] per (shape, property) pair; a check
//! never panics, it records failure detail instead.  The `all` suite is
//! the union of the six topical suites.

use std::fmt;
use std::str::FromStr;

use crate::minors::{
    b_commutation_formula, b_generator, commutation_exponent, quantum_determinant,
    BCommutationCase,
};
use crate::morphisms::{
    check_homomorphism, exceptional_auto, torus_auto, transpose_iso, GeneratorImages,
    TorusAutoParams,
};
use crate::pbw::{element_proportional, q_normal_check, MatElement, Shape};
use crate::restoration::{restore_generators, verify_b_monomials, verify_embedding};
use crate::scalars::{rat, QLaurent};
use crate::spectrum::{
    dim_ker_b_checked, is_primitive, spectrum_report, stratum_dim, v2, PrimitivityMethod,
};
use crate::torus::{
    b_monomial_exponent, build_b, center_basis, delta_element, sigma_exponent, TorusElement,
};
use crate::{Error, Result};

/// Outcome of one named verification step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn run_check(name: String, body: impl FnOnce() -> Result<()>) -> Check {
    match body() {
        Ok(()) => Check {
            name,
            pass: true,
            detail: String::new(),
        },
        Err(e) => Check {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::check(msg.into()))
    }
}

/// Which suite to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Relations,
    Commutation,
    Center,
    Restore,
    Spectrum,
    Morphisms,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "relations" => Ok(Suite::Relations),
            "commutation" => Ok(Suite::Commutation),
            "center" => Ok(Suite::Center),
            "restore" => Ok(Suite::Restore),
            "spectrum" => Ok(Suite::Spectrum),
            "morphisms" => Ok(Suite::Morphisms),
            "all" => Ok(Suite::All),
            other => Err(Error::invalid(format!(
                "unknown suite {other:?} (expected all, relations, commutation, center, restore, spectrum, or morphisms)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Relations => "relations",
            Suite::Commutation => "commutation",
            Suite::Center => "center",
            Suite::Restore => "restore",
            Suite::Spectrum => "spectrum",
            Suite::Morphisms => "morphisms",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// All shapes with `m * n <= max_size`, both orientations, ascending.
fn shapes_up_to(max_size: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for m in 1..=max_size {
        for n in 1..=max_size {
            if m * n <= max_size {
                out.push(Shape::new(m, n).unwrap());
            }
        }
    }
    out
}

fn relations_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for shape in shapes_up_to(max_size) {
        checks.push(run_check(format!("relations/defining {shape}"), || {
            ensure(
                check_homomorphism(&GeneratorImages::identity(shape))?,
                "generator relations fail under straightening",
            )
        }));
        checks.push(run_check(format!("relations/associativity {shape}"), || {
            let (m, n) = (shape.m(), shape.n());
            let gen = |i, a| MatElement::generator(shape, i, a).unwrap();
            let x = gen(1, 1).add(&gen(m, n).scale(&QLaurent::term(1, rat(2, 3))))?;
            let y = gen(1, n).mul(&gen(m, 1))?;
            let z = gen(m, n).add(&MatElement::one(shape))?;
            ensure(
                x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?,
                "associativity fails on sample triple",
            )
        }));
        checks.push(run_check(format!("relations/grading {shape}"), || {
            let gen = |i: usize, a: usize| MatElement::generator(shape, i, a).unwrap();
            let product = gen(shape.m(), shape.n()).mul(&gen(1, 1))?;
            ensure(
                product.h_character().is_some(),
                "product of generators must stay a scaling-action eigenvector",
            )
        }));
    }
    checks
}

fn commutation_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for shape in shapes_up_to(max_size) {
        let (m, n) = (shape.m(), shape.n());
        checks.push(run_check(format!("commutation/q-normal {shape}"), || {
            for i in 1..=(m + n - 1) {
                let b = b_generator(shape, i)?.element;
                ensure(
                    q_normal_check(&b).is_some(),
                    format!("b_{i} is not q-normal"),
                )?;
            }
            Ok(())
        }));
        if m < n {
            checks.push(run_check(format!("commutation/formulas {shape}"), || {
                let b: Vec<MatElement> = (1..=(m + n))
                    .map(|i| b_generator(shape, i).map(|g| g.element))
                    .collect::<Result<_>>()?;
                for i in m..=n {
                    for j in (i + 1)..=n {
                        let formula =
                            b_commutation_formula(m, n, BCommutationCase::MiddlePair, i, j)?;
                        ensure(
                            commutation_exponent(&b[i - 1], &b[j - 1])? == Some(formula),
                            format!("middle pair (b_{i}, b_{j}) mismatch"),
                        )?;
                    }
                }
                for i in 1..m {
                    let formula = b_commutation_formula(m, n, BCommutationCase::LowPair, i, n)?;
                    ensure(
                        commutation_exponent(&b[n - 1], &b[i - 1])? == Some(formula),
                        format!("low pair (b_{n}, b_{i}) mismatch"),
                    )?;
                    ensure(
                        commutation_exponent(&b[n - 1], &b[m + n - i - 1])? == Some(0),
                        format!("mirror pair (b_{n}, b_{}) must commute", m + n - i),
                    )?;
                }
                Ok(())
            }));
        }
        if m == n {
            checks.push(run_check(format!("commutation/determinant {shape}"), || {
                let det = quantum_determinant(shape)?;
                let ratios = q_normal_check(&det)
                    .ok_or_else(|| Error::check("determinant is not q-normal"))?;
                ensure(
                    ratios.iter().all(|c| c.is_one()),
                    "determinant must be central",
                )
            }));
        }
    }
    checks
}

fn center_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for shape in shapes_up_to(max_size) {
        let (m, n) = (shape.m(), shape.n());
        if v2(m) != v2(n) {
            continue;
        }
        checks.push(run_check(format!("center/basis {shape}"), || {
            let basis = center_basis(shape)?;
            ensure(
                basis.dim() == stratum_dim(m, n),
                "central basis dimension mismatch",
            )
        }));
        checks.push(run_check(format!("center/delta-commutes {shape}"), || {
            let d = num::integer::gcd(m, n);
            for j in 1..=d {
                let delta = delta_element(shape, j)?;
                for k in 0..shape.gens() {
                    let (i, a) = shape.coords(k);
                    let t = TorusElement::generator(shape, i, a)?;
                    ensure(
                        delta.mul(&t)? == t.mul(&delta)?,
                        format!("delta_{j} fails to commute with T[{i},{a}]"),
                    )?;
                }
            }
            Ok(())
        }));
    }
    checks
}

fn restore_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for shape in shapes_up_to(max_size) {
        checks.push(run_check(format!("restore/embedding {shape}"), || {
            verify_embedding(&restore_generators(shape)?)
        }));
        checks.push(run_check(format!("restore/staircase {shape}"), || {
            verify_b_monomials(&restore_generators(shape)?)
        }));
        checks.push(run_check(format!("restore/coherence {shape}"), || {
            // The q-exponent from straightening b_i b_j must equal the
            // torus pairing of their staircase exponent vectors.
            let (m, n) = (shape.m(), shape.n());
            let b = build_b(shape);
            for i in 1..=(m + n - 1) {
                for j in 1..=(m + n - 1) {
                    if i == j {
                        continue;
                    }
                    let bi = b_generator(shape, i)?.element;
                    let bj = b_generator(shape, j)?.element;
                    let pairing =
                        sigma_exponent(&b, &b_monomial_exponent(shape, i)?, &b_monomial_exponent(shape, j)?);
                    ensure(
                        commutation_exponent(&bi, &bj)? == Some(pairing),
                        format!("(b_{i}, b_{j}) exponent differs from torus pairing"),
                    )?;
                }
            }
            Ok(())
        }));
    }
    checks
}

fn spectrum_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for shape in shapes_up_to(max_size) {
        let (m, n) = (shape.m(), shape.n());
        if m > n {
            continue;
        }
        checks.push(run_check(format!("spectrum/kernel {shape}"), || {
            ensure(
                dim_ker_b_checked(m, n)? == stratum_dim(m, n),
                "kernel dimension differs from the closed form",
            )
        }));
        checks.push(run_check(format!("spectrum/primitivity {shape}"), || {
            let primitive = is_primitive(m, n, PrimitivityMethod::Both)?;
            ensure(
                primitive == (stratum_dim(m, n) == 0),
                "primitivity must match a zero-dimensional stratum",
            )?;
            let report = spectrum_report(m, n)?;
            ensure(
                report.methods_agree && (report.alpha == 0) == report.primitive,
                "report invariants violated",
            )
        }));
    }
    checks
}

fn morphisms_suite(max_size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let unit = |p: i64, r: i64, e: i64| QLaurent::term(e, rat(p, r));
    for shape in shapes_up_to(max_size) {
        let (m, n) = (shape.m(), shape.n());
        // Deterministic unit parameters varying with position.
        let params = |offset: i64| {
            TorusAutoParams::new(
                (0..m).map(|i| unit(2 + i as i64 + offset, 1, 1)).collect(),
                (0..n)
                    .map(|a| unit(1, 1 + a as i64 + offset, -1))
                    .collect(),
            )
        };
        checks.push(run_check(format!("morphisms/scaling {shape}"), || {
            let p1 = params(0)?;
            let p2 = params(1)?;
            let g1 = torus_auto(shape, &p1)?;
            ensure(check_homomorphism(&g1)?, "scaling map fails relations")?;
            let composed = GeneratorImages::compose(&g1, &torus_auto(shape, &p2)?)?;
            ensure(
                composed == torus_auto(shape, &p1.compose(&p2)?)?,
                "composition differs from the parameter product",
            )
        }));
        checks.push(run_check(format!("morphisms/staircase {shape}"), || {
            let g = torus_auto(shape, &params(0)?)?;
            for i in 1..=(m + n - 1) {
                let b = b_generator(shape, i)?.element;
                let ratio = element_proportional(&g.apply(&b)?, &b)
                    .ok_or_else(|| Error::check(format!("image of b_{i} not proportional")))?;
                ensure(
                    ratio.num.is_unit() && ratio.den.is_unit(),
                    format!("image of b_{i} is not a unit multiple"),
                )?;
            }
            Ok(())
        }));
        checks.push(run_check(format!("morphisms/transpose {shape}"), || {
            let t = transpose_iso(shape);
            ensure(check_homomorphism(&t)?, "transposition fails relations")?;
            let back = GeneratorImages::compose(&transpose_iso(shape.transposed()), &t)?;
            ensure(
                back == GeneratorImages::identity(shape),
                "transposing twice must be the identity",
            )
        }));
    }
    if max_size >= 3 {
        checks.push(run_check("morphisms/exceptional (1, 3)".to_string(), || {
            let a = exceptional_auto(&unit(2, 1, 0), &unit(3, 2, 1), &unit(1, 5, -1), &unit(7, 1, 2))?;
            let s = Shape::new(1, 3)?;
            let image = a.forward.image(1, 2).clone();
            let b1 = b_generator(s, 1)?.element;
            let b2 = b_generator(s, 2)?.element;
            let b3 = b_generator(s, 3)?.element;
            let c2 = image.coeff(&[0, 1, 0]);
            let c13 = image.coeff(&[1, 0, 1]);
            ensure(
                c2.is_unit() && c13.is_unit(),
                "image of the middle generator must have unit coefficients",
            )?;
            let rebuilt = b2
                .scale(&c2)
                .add(&b1.mul(&b3)?.scale(&c13.mul_q_pow(1)))?;
            ensure(
                rebuilt == image,
                "image must be unit * b_2 + unit * b_1 b_3",
            )
        }));
    }
    checks
}

/// Run a suite over all shapes with `m * n <= max_size`.
pub fn run_suite(suite: Suite, max_size: usize) -> Vec<Check> {
    match suite {
        Suite::Relations => relations_suite(max_size),
        Suite::Commutation => commutation_suite(max_size),
        Suite::Center => center_suite(max_size),
        Suite::Restore => restore_suite(max_size),
        Suite::Spectrum => spectrum_suite(max_size),
        Suite::Morphisms => morphisms_suite(max_size),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Relations,
                Suite::Commutation,
                Suite::Center,
                Suite::Restore,
                Suite::Spectrum,
                Suite::Morphisms,
            ] {
                out.extend(run_suite(s, max_size));
            }
            out
        }
    }
}
