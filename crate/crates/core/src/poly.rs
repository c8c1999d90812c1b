//! Polynomials in Plücker coordinates `x_I`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, WedgeError};
use crate::index::{IndexSet, Window};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// A multiset of variables, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<IndexSet>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut factors: Vec<IndexSet>) -> Self {
        factors.sort();
        Monomial(factors)
    }

    pub fn var(set: IndexSet) -> Self {
        Monomial(vec![set])
    }

    pub fn factors(&self) -> &[IndexSet] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut f = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        f.push(a.next().unwrap().clone());
                    } else {
                        f.push(b.next().unwrap().clone());
                    }
                }
                (Some(_), None) => f.push(a.next().unwrap().clone()),
                (None, Some(_)) => f.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Monomial(f)
    }

    /// Multiplicity of `x_set` in this monomial.
    pub fn power_of(&self, set: &IndexSet) -> usize {
        self.0.iter().filter(|f| *f == set).count()
    }

    fn without_one(&self, set: &IndexSet) -> Monomial {
        let mut f = self.0.clone();
        if let Some(pos) = f.iter().position(|x| x == set) {
            f.remove(pos);
        }
        Monomial(f)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, set) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{set}")?;
        }
        Ok(())
    }
}

/// A polynomial whose variables are the `grade`-subsets of a window.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgePolynomial<S> {
    window: Window,
    grade: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> WedgePolynomial<S> {
    pub fn zero(window: Window, grade: usize) -> Self {
        WedgePolynomial { window, grade, terms: BTreeMap::new() }
    }

    pub fn constant(window: Window, grade: usize, c: S) -> Self {
        let mut p = Self::zero(window, grade);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(window: Window, set: IndexSet) -> Result<Self> {
        let grade = set.len();
        Self::from_terms(window, grade, [(Monomial::var(set), S::one())])
    }

    pub fn from_terms(window: Window, grade: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut p = Self::zero(window, grade);
        for (mono, c) in terms {
            for f in mono.factors() {
                if f.len() != grade {
                    return Err(WedgeError::GradeMismatch { expected: grade, found: f.len() });
                }
                window.check(f)?;
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, mono: &Monomial) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(WedgeError::WindowMismatch { left: self.window, right: other.window });
        }
        if self.grade != other.grade {
            return Err(WedgeError::GradeMismatch { expected: self.grade, found: other.grade });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.window, self.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.window, self.grade);
        }
        WedgePolynomial {
            window: self.window,
            grade: self.grade,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    /// The same polynomial over a larger window.
    pub fn embed(&self, window: Window) -> Result<Self> {
        if !self.window.is_within(window) {
            return Err(WedgeError::WindowNotContained { inner: self.window, outer: window });
        }
        Ok(WedgePolynomial { window, grade: self.grade, terms: self.terms.clone() })
    }

    /// Substitutes `x_I := coefficient of e_I in v`.
    ///
    /// `v` may live in any window containing the polynomial's window.
    pub fn eval(&self, v: &Multivector<S>) -> Result<S> {
        if v.grade() != self.grade {
            return Err(WedgeError::GradeMismatch { expected: self.grade, found: v.grade() });
        }
        if !self.window.is_within(v.window()) {
            return Err(WedgeError::WindowNotContained { inner: self.window, outer: v.window() });
        }
        self.eval_with(|set| Some(v.coeff(set)))
    }

    /// Evaluates with a partial assignment; unknown variables are an error.
    pub fn eval_with(&self, mut value: impl FnMut(&IndexSet) -> Option<S>) -> Result<S> {
        let mut total = S::zero();
        for (mono, c) in &self.terms {
            let mut prod = c.clone();
            for f in mono.factors() {
                let x = value(f).ok_or_else(|| WedgeError::MissingCoordinate(f.clone()))?;
                if x.is_zero() {
                    prod = S::zero();
                    break;
                }
                prod = prod * x;
            }
            total = total + prod;
        }
        Ok(total)
    }

    /// Every variable occurring in the polynomial.
    pub fn variables(&self) -> Vec<IndexSet> {
        let mut vars: Vec<IndexSet> = self.terms.keys().flat_map(|m| m.factors().iter().cloned()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Writes `P = x · D + Q` where `x` does not occur in `Q`.
    ///
    /// Fails unless `P` has degree at most one in `x`.
    pub fn split_linear(&self, var: &IndexSet) -> Result<(Self, Self)> {
        let mut d = Self::zero(self.window, self.grade);
        let mut q = Self::zero(self.window, self.grade);
        for (mono, c) in &self.terms {
            match mono.power_of(var) {
                0 => q.add_term(mono.clone(), c.clone()),
                1 => d.add_term(mono.without_one(var), c.clone()),
                _ => return Err(WedgeError::Precondition(format!("x{var} occurs to a power above one"))),
            }
        }
        Ok((d, q))
    }

    /// Linear change of variables `x_I ↦ c_I · y_{φ(I)}` into another ring.
    pub fn substitute(&self, window: Window, grade: usize, mut map: impl FnMut(&IndexSet) -> Result<(IndexSet, S)>) -> Result<Self> {
        let mut cache: BTreeMap<IndexSet, (IndexSet, S)> = BTreeMap::new();
        let mut out = Self::zero(window, grade);
        for (mono, c) in &self.terms {
            let mut factors = Vec::with_capacity(mono.degree());
            let mut coeff = c.clone();
            for f in mono.factors() {
                if !cache.contains_key(f) {
                    let image = map(f)?;
                    if image.0.len() != grade {
                        return Err(WedgeError::GradeMismatch { expected: grade, found: image.0.len() });
                    }
                    window.check(&image.0)?;
                    cache.insert(f.clone(), image);
                }
                let (set, x) = &cache[f];
                factors.push(set.clone());
                coeff = coeff * x.clone();
            }
            out.add_term(Monomial::new(factors), coeff);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for WedgePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{mono}")?;
        }
        Ok(())
    }
}
