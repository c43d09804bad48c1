//! Algebra maps given by generator images: relation checking, the scaling
//! automorphisms coming from the torus action, the transposition
//! isomorphism, and the exceptional automorphism of the (1, 3) algebra.

use crate::pbw::{relation_case, MatElement, RelationCase, Shape};
use crate::scalars::QLaurent;
use crate::{Error, Result};

/// A map out of the `(m, n)` algebra, stored as the images of its
/// generators in row-major order.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratorImages {
    source: Shape,
    target: Shape,
    images: Vec<MatElement>,
}

impl GeneratorImages {
    pub fn new(source: Shape, target: Shape, images: Vec<MatElement>) -> Result<Self> {
        if images.len() != source.gens() {
            return Err(Error::invalid(format!(
                "expected {} generator images, got {}",
                source.gens(),
                images.len()
            )));
        }
        if let Some(x) = images.iter().find(|x| x.shape() != target) {
            return Err(Error::invalid(format!(
                "image over shape {}, expected target {target}",
                x.shape()
            )));
        }
        Ok(GeneratorImages {
            source,
            target,
            images,
        })
    }

    pub fn identity(shape: Shape) -> Self {
        let images = (0..shape.gens())
            .map(|k| {
                let (i, a) = shape.coords(k);
                MatElement::generator(shape, i, a).unwrap()
            })
            .collect();
        GeneratorImages {
            source: shape,
            target: shape,
            images,
        }
    }

    pub fn source(&self) -> Shape {
        self.source
    }

    pub fn target(&self) -> Shape {
        self.target
    }

    /// The image of `Y[i,a]`, 1-based.
    pub fn image(&self, i: usize, a: usize) -> &MatElement {
        &self.images[self.source.flat(i, a)]
    }

    pub fn images(&self) -> &[MatElement] {
        &self.images
    }

    /// Substitute the images into a normal-form element over the source.
    pub fn apply(&self, x: &MatElement) -> Result<MatElement> {
        if x.shape() != self.source {
            return Err(Error::invalid(format!(
                "element over {}, expected source {}",
                x.shape(),
                self.source
            )));
        }
        let mut out = MatElement::zero(self.target);
        for (exps, coeff) in x.terms() {
            let mut term = MatElement::one(self.target);
            for (k, &e) in exps.iter().enumerate() {
                term = term.mul(&self.images[k].pow(e)?)?;
            }
            out = out.add(&term.scale(coeff))?;
        }
        Ok(out)
    }

    /// The composite `outer . inner` (apply `inner` first).
    pub fn compose(outer: &GeneratorImages, inner: &GeneratorImages) -> Result<GeneratorImages> {
        if inner.target != outer.source {
            return Err(Error::invalid(format!(
                "cannot compose: inner target {} differs from outer source {}",
                inner.target, outer.source
            )));
        }
        let images = inner
            .images
            .iter()
            .map(|x| outer.apply(x))
            .collect::<Result<Vec<_>>>()?;
        GeneratorImages::new(inner.source, outer.target, images)
    }
}

/// True when the images satisfy every defining relation of the source
/// algebra, so that the assignment extends to an algebra map.
pub fn check_homomorphism(g: &GeneratorImages) -> Result<bool> {
    let shape = g.source;
    for kl in 0..shape.gens() {
        for kh in (kl + 1)..shape.gens() {
            let (i, a) = shape.coords(kl);
            let (j, b) = shape.coords(kh);
            let low = &g.images[kl];
            let high = &g.images[kh];
            let lhs = high.mul(low)?;
            let rhs = match relation_case(i, a, j, b) {
                RelationCase::SameRow | RelationCase::SameColumn => {
                    low.mul(high)?.scale(&QLaurent::q_pow(-1))
                }
                RelationCase::Commuting => low.mul(high)?,
                RelationCase::Crossing => {
                    let correction = g.images[shape.flat(i, b)]
                        .mul(&g.images[shape.flat(j, a)])?
                        .scale(&QLaurent::q_minus_q_inv());
                    low.mul(high)?.sub(&correction)?
                }
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Parameters of a scaling automorphism `Y[i,a] -> h_i h'_a Y[i,a]`.
///
/// Rescaling all `h_i` by a unit `c` and all `h'_a` by `c^-1` gives the
/// same map, so parameters are stored canonically with `h'_n = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct TorusAutoParams {
    h: Vec<QLaurent>,
    h_prime: Vec<QLaurent>,
}

impl TorusAutoParams {
    /// Validate that every parameter is a unit (nonzero rational times a
    /// q-power) and store the canonical form.
    pub fn new(h: Vec<QLaurent>, h_prime: Vec<QLaurent>) -> Result<Self> {
        if h.is_empty() || h_prime.is_empty() {
            return Err(Error::invalid("parameter lists must be nonempty"));
        }
        if let Some(c) = h.iter().chain(&h_prime).find(|c| !c.is_unit()) {
            return Err(Error::invalid(format!(
                "scaling parameter {c} is not a unit"
            )));
        }
        let last = h_prime.last().unwrap().clone();
        let last_inv = last.unit_inverse().unwrap();
        Ok(TorusAutoParams {
            h: h.iter().map(|c| c.mul(&last)).collect(),
            h_prime: h_prime.iter().map(|c| c.mul(&last_inv)).collect(),
        })
    }

    pub fn row_scalars(&self) -> &[QLaurent] {
        &self.h
    }

    pub fn column_scalars(&self) -> &[QLaurent] {
        &self.h_prime
    }

    /// The scalar applied to `Y[i,a]`, 1-based.
    pub fn scalar(&self, i: usize, a: usize) -> QLaurent {
        self.h[i - 1].mul(&self.h_prime[a - 1])
    }

    /// Componentwise product, the parameter form of map composition.
    pub fn compose(&self, other: &TorusAutoParams) -> Result<TorusAutoParams> {
        if self.h.len() != other.h.len() || self.h_prime.len() != other.h_prime.len() {
            return Err(Error::invalid("parameter lists have different shapes"));
        }
        TorusAutoParams::new(
            self.h.iter().zip(&other.h).map(|(a, b)| a.mul(b)).collect(),
            self.h_prime
                .iter()
                .zip(&other.h_prime)
                .map(|(a, b)| a.mul(b))
                .collect(),
        )
    }
}

/// The scaling automorphism `Y[i,a] -> h_i h'_a Y[i,a]`.
pub fn torus_auto(shape: Shape, p: &TorusAutoParams) -> Result<GeneratorImages> {
    if p.h.len() != shape.m() || p.h_prime.len() != shape.n() {
        return Err(Error::invalid(format!(
            "parameter counts ({}, {}) do not match shape {shape}",
            p.h.len(),
            p.h_prime.len()
        )));
    }
    let images = (0..shape.gens())
        .map(|k| {
            let (i, a) = shape.coords(k);
            Ok(MatElement::generator(shape, i, a)?.scale(&p.scalar(i, a)))
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorImages::new(shape, shape, images)
}

/// The isomorphism onto the transposed shape, `Y[i,a] -> Y'[a,i]`.
pub fn transpose_iso(shape: Shape) -> GeneratorImages {
    let target = shape.transposed();
    let images = (0..shape.gens())
        .map(|k| {
            let (i, a) = shape.coords(k);
            MatElement::generator(target, a, i).unwrap()
        })
        .collect();
    GeneratorImages::new(shape, target, images).unwrap()
}

/// The exceptional automorphism of the (1, 3) algebra together with its
/// verified two-sided inverse:
///
/// ```text
/// Y[1,1] -> m1 Y[1,1]
/// Y[1,2] -> m2 Y[1,2] + l Y[1,1]Y[1,3]
/// Y[1,3] -> m3 Y[1,3]
/// ```
///
/// The inverse sends `Y[1,2]` to `m2^-1 (Y[1,2] - l m1^-1 m3^-1
/// Y[1,1]Y[1,3])` and rescales the other two generators.
#[derive(Clone, PartialEq, Debug)]
pub struct ExceptionalAuto {
    pub forward: GeneratorImages,
    pub inverse: GeneratorImages,
}

pub fn exceptional_auto(
    mu1: &QLaurent,
    mu2: &QLaurent,
    mu3: &QLaurent,
    lambda: &QLaurent,
) -> Result<ExceptionalAuto> {
    let shape = Shape::new(1, 3)?;
    let inverses: Vec<QLaurent> = [mu1, mu2, mu3]
        .iter()
        .map(|c| {
            c.unit_inverse()
                .ok_or_else(|| Error::invalid(format!("parameter {c} is not a unit")))
        })
        .collect::<Result<Vec<_>>>()?;
    let gen = |a: usize| MatElement::generator(shape, 1, a).unwrap();
    let outer = gen(1).mul(&gen(3))?;
    let forward = GeneratorImages::new(
        shape,
        shape,
        vec![
            gen(1).scale(mu1),
            gen(2).scale(mu2).add(&outer.scale(lambda))?,
            gen(3).scale(mu3),
        ],
    )?;
    let back = lambda.mul(&inverses[0]).mul(&inverses[2]);
    let inverse = GeneratorImages::new(
        shape,
        shape,
        vec![
            gen(1).scale(&inverses[0]),
            gen(2).sub(&outer.scale(&back))?.scale(&inverses[1]),
            gen(3).scale(&inverses[2]),
        ],
    )?;
    for g in [&forward, &inverse] {
        if !check_homomorphism(g)? {
            return Err(Error::check(
                "exceptional map images violate a defining relation",
            ));
        }
    }
    let id = GeneratorImages::identity(shape);
    if GeneratorImages::compose(&forward, &inverse)? != id
        || GeneratorImages::compose(&inverse, &forward)? != id
    {
        return Err(Error::check(
            "exceptional map inverse fails the round-trip check",
        ));
    }
    Ok(ExceptionalAuto { forward, inverse })
}
