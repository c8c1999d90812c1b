//! JSON exchange formats for multivectors, covectors and polynomials.
//!
//! Coefficients are strings `"p/q"` (integers without a denominator) and
//! index lists must be strictly ascending.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WedgeError};
use crate::index::{IndexSet, Window};
use crate::multivector::{Covector, Multivector};
use crate::poly::{Monomial, WedgePolynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub indices: IndexSet,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultivectorRecord {
    pub window: Window,
    pub grade: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovectorRecord {
    pub window: Window,
    pub coeffs: Vec<(i32, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRecord {
    pub coeff: String,
    pub factors: Vec<IndexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialRecord {
    pub window: Window,
    pub grade: usize,
    pub label: String,
    pub terms: Vec<MonomialRecord>,
}

fn parse_coeff<S: Scalar>(text: &str) -> Result<S> {
    S::parse_exact(text).ok_or_else(|| WedgeError::Parse(format!("not an exact rational: {text:?}")))
}

pub fn multivector_record<S: Scalar>(v: &Multivector<S>) -> MultivectorRecord {
    MultivectorRecord {
        window: v.window(),
        grade: v.grade(),
        terms: v.terms().iter().map(|(s, c)| TermRecord { indices: s.clone(), coeff: c.to_string() }).collect(),
    }
}

pub fn multivector_from_record<S: Scalar>(rec: &MultivectorRecord) -> Result<Multivector<S>> {
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(rec.terms.len());
    for t in &rec.terms {
        if !seen.insert(t.indices.clone()) {
            return Err(WedgeError::Parse(format!("repeated term {}", t.indices)));
        }
        terms.push((t.indices.clone(), parse_coeff(&t.coeff)?));
    }
    Multivector::from_terms(rec.window, rec.grade, terms)
}

pub fn multivector_to_json<S: Scalar>(v: &Multivector<S>) -> String {
    serde_json::to_string_pretty(&multivector_record(v)).expect("records always serialize")
}

pub fn multivector_from_json<S: Scalar>(text: &str) -> Result<Multivector<S>> {
    let rec: MultivectorRecord = serde_json::from_str(text).map_err(|e| WedgeError::Parse(e.to_string()))?;
    multivector_from_record(&rec)
}

pub fn covector_to_json<S: Scalar>(f: &Covector<S>) -> String {
    let rec = CovectorRecord { window: f.window(), coeffs: f.coeffs().iter().map(|(i, c)| (*i, c.to_string())).collect() };
    serde_json::to_string_pretty(&rec).expect("records always serialize")
}

pub fn covector_from_json<S: Scalar>(text: &str) -> Result<Covector<S>> {
    let rec: CovectorRecord = serde_json::from_str(text).map_err(|e| WedgeError::Parse(e.to_string()))?;
    let coeffs = rec.coeffs.iter().map(|(i, c)| Ok((*i, parse_coeff(c)?))).collect::<Result<Vec<_>>>()?;
    Covector::new(rec.window, coeffs)
}

pub fn polynomial_record<S: Scalar>(p: &WedgePolynomial<S>, label: &str) -> PolynomialRecord {
    PolynomialRecord {
        window: p.window(),
        grade: p.grade(),
        label: label.to_string(),
        terms: p
            .terms()
            .iter()
            .map(|(m, c)| MonomialRecord { coeff: c.to_string(), factors: m.factors().to_vec() })
            .collect(),
    }
}

/// Returns the polynomial and its label.
pub fn polynomial_from_record<S: Scalar>(rec: &PolynomialRecord) -> Result<(WedgePolynomial<S>, String)> {
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(rec.terms.len());
    for t in &rec.terms {
        let mono = Monomial::new(t.factors.clone());
        if !seen.insert(mono.clone()) {
            return Err(WedgeError::Parse(format!("repeated monomial {mono}")));
        }
        terms.push((mono, parse_coeff(&t.coeff)?));
    }
    Ok((WedgePolynomial::from_terms(rec.window, rec.grade, terms)?, rec.label.clone()))
}

pub fn polynomial_to_json<S: Scalar>(p: &WedgePolynomial<S>, label: &str) -> String {
    serde_json::to_string_pretty(&polynomial_record(p, label)).expect("records always serialize")
}

pub fn polynomial_from_json<S: Scalar>(text: &str) -> Result<(WedgePolynomial<S>, String)> {
    let rec: PolynomialRecord = serde_json::from_str(text).map_err(|e| WedgeError::Parse(e.to_string()))?;
    polynomial_from_record(&rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn multivector_round_trip() {
        let w = Window::new(2, 2);
        let v = Multivector::<Rational>::basis(w, &[-2, 1])
            .unwrap()
            .scale(&Rational::from_ratio(-3, 4))
            .add(&Multivector::basis(w, &[1, 2]).unwrap())
            .unwrap();
        let text = multivector_to_json(&v);
        assert!(text.contains("\"-3/4\""));
        assert!(text.contains("\"1\""));
        assert_eq!(multivector_from_json::<Rational>(&text).unwrap(), v);
    }

    #[test]
    fn rejects_bad_input() {
        let unsorted = r#"{"window":[0,3],"grade":2,"terms":[{"indices":[2,1],"coeff":"1"}]}"#;
        assert!(matches!(multivector_from_json::<Rational>(unsorted), Err(WedgeError::Parse(_))));
        let float = r#"{"window":[0,3],"grade":2,"terms":[{"indices":[1,2],"coeff":"0.5"}]}"#;
        assert!(matches!(multivector_from_json::<Rational>(float), Err(WedgeError::Parse(_))));
        let outside = r#"{"window":[0,3],"grade":2,"terms":[{"indices":[1,4],"coeff":"1"}]}"#;
        assert!(matches!(multivector_from_json::<Rational>(outside), Err(WedgeError::IndexOutOfWindow { .. })));
        let wrong_grade = r#"{"window":[0,3],"grade":1,"terms":[{"indices":[1,2],"coeff":"1"}]}"#;
        assert!(matches!(multivector_from_json::<Rational>(wrong_grade), Err(WedgeError::GradeMismatch { .. })));
        let repeated = r#"{"window":[0,3],"grade":1,"terms":[{"indices":[1],"coeff":"1"},{"indices":[1],"coeff":"2"}]}"#;
        assert!(matches!(multivector_from_json::<Rational>(repeated), Err(WedgeError::Parse(_))));
    }

    #[test]
    fn covector_round_trip() {
        let w = Window::new(1, 2);
        let f = Covector::<Rational>::new(w, [(-1, Rational::from_int(2)), (2, Rational::from_ratio(1, 3))]).unwrap();
        assert_eq!(covector_from_json::<Rational>(&covector_to_json(&f)).unwrap(), f);
    }
}
