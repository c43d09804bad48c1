//! JSON interchange for elements.
//!
//! A document carries the element kind (`"pbw"` for normal-form elements,
//! `"torus"` for Laurent torus elements), the shape, and a list of terms.
//! Each term holds a row-major exponent vector and a coefficient given as
//! `[q-power, rational]` pairs with the rational rendered as a string
//! (`"p"` or `"p/r"` in lowest terms) so no consumer loses precision.
//!
//! Emission is canonical: terms ascend lexicographically by exponent
//! vector, coefficient pairs ascend by q-power.  Parsing is liberal
//! (duplicate exponent vectors, unordered or zero entries are tolerated
//! and normalized), so `parse . serialize` is the identity on elements.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pbw::{MatElement, Shape};
use crate::scalars::{QLaurent, Rational};
use crate::torus::TorusElement;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermDocument {
    pub exp: Vec<i64>,
    pub coef: Vec<(i64, String)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ElementDocument {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub terms: Vec<TermDocument>,
}

/// A parsed document of either kind.
#[derive(Clone, PartialEq, Debug)]
pub enum AnyElement {
    Pbw(MatElement),
    Torus(TorusElement),
}

impl AnyElement {
    pub fn shape(&self) -> Shape {
        match self {
            AnyElement::Pbw(x) => x.shape(),
            AnyElement::Torus(x) => x.shape(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyElement::Pbw(_) => "pbw",
            AnyElement::Torus(_) => "torus",
        }
    }
}

fn coeff_pairs(c: &QLaurent) -> Vec<(i64, String)> {
    c.iter().map(|(k, r)| (k, r.to_string())).collect()
}

fn parse_coeff(pairs: &[(i64, String)]) -> Result<QLaurent> {
    let mut c = QLaurent::zero();
    for (k, s) in pairs {
        let r = Rational::from_str(s).map_err(|e| {
            Error::invalid(format!("bad rational coefficient {s:?}: {e}"))
        })?;
        c.add_assign_term(*k, &r);
    }
    Ok(c)
}

pub fn pbw_to_document(x: &MatElement) -> ElementDocument {
    ElementDocument {
        kind: "pbw".to_string(),
        m: x.shape().m(),
        n: x.shape().n(),
        terms: x
            .terms()
            .map(|(exps, c)| TermDocument {
                exp: exps.iter().map(|&e| e as i64).collect(),
                coef: coeff_pairs(c),
            })
            .collect(),
    }
}

pub fn torus_to_document(x: &TorusElement) -> ElementDocument {
    ElementDocument {
        kind: "torus".to_string(),
        m: x.shape().m(),
        n: x.shape().n(),
        terms: x
            .terms()
            .map(|(exps, c)| TermDocument {
                exp: exps.clone(),
                coef: coeff_pairs(c),
            })
            .collect(),
    }
}

pub fn document_to_pbw(doc: &ElementDocument) -> Result<MatElement> {
    if doc.kind != "pbw" {
        return Err(Error::invalid(format!(
            "expected kind \"pbw\", got {:?}",
            doc.kind
        )));
    }
    let shape = Shape::new(doc.m, doc.n)?;
    let mut out = MatElement::zero(shape);
    for term in &doc.terms {
        let exps = term
            .exp
            .iter()
            .map(|&e| {
                u32::try_from(e).map_err(|_| {
                    Error::invalid(format!(
                        "normal-form exponents must be naturals, got {e}"
                    ))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let coeff = parse_coeff(&term.coef)?;
        out = out.add(&MatElement::monomial(shape, &exps, &coeff)?)?;
    }
    Ok(out)
}

pub fn document_to_torus(doc: &ElementDocument) -> Result<TorusElement> {
    if doc.kind != "torus" {
        return Err(Error::invalid(format!(
            "expected kind \"torus\", got {:?}",
            doc.kind
        )));
    }
    let shape = Shape::new(doc.m, doc.n)?;
    let mut out = TorusElement::zero(shape);
    for term in &doc.terms {
        let coeff = parse_coeff(&term.coef)?;
        out = out.add(&TorusElement::monomial(shape, &term.exp, &coeff)?)?;
    }
    Ok(out)
}

/// Dispatch on the document's `kind` field.
pub fn document_to_element(doc: &ElementDocument) -> Result<AnyElement> {
    match doc.kind.as_str() {
        "pbw" => Ok(AnyElement::Pbw(document_to_pbw(doc)?)),
        "torus" => Ok(AnyElement::Torus(document_to_torus(doc)?)),
        other => Err(Error::invalid(format!(
            "unknown element kind {other:?} (expected \"pbw\" or \"torus\")"
        ))),
    }
}

pub fn element_to_document(x: &AnyElement) -> ElementDocument {
    match x {
        AnyElement::Pbw(x) => pbw_to_document(x),
        AnyElement::Torus(x) => torus_to_document(x),
    }
}

/// Parse a document from JSON text.
pub fn read_document(json: &str) -> Result<ElementDocument> {
    serde_json::from_str(json).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("invalid element document: {e}"),
    })
}

/// Serialize a document as pretty-printed JSON with a trailing newline.
pub fn write_document(doc: &ElementDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization cannot fail");
    s.push('\n');
    s
}
