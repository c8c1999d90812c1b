//! Sparse exact multivectors in `∧^g V_{n,p}`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Result, WedgeError};
use crate::index::{pair_sign, sort_with_sign, IndexSet, Window};
use crate::linalg;
use crate::scalar::{random_nonzero_scalar, random_scalar, signed, Scalar};

/// A sparse linear combination of basis wedges `e_I` of one grade.
///
/// Zero coefficients are never stored, and the zero element still carries
/// its window and grade.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    window: Window,
    grade: usize,
    terms: BTreeMap<IndexSet, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(window: Window, grade: usize) -> Self {
        Multivector { window, grade, terms: BTreeMap::new() }
    }

    /// The scalar `c` in grade 0.
    pub fn scalar(window: Window, c: S) -> Self {
        let mut v = Self::zero(window, 0);
        v.add_term(IndexSet::empty(), c);
        v
    }

    /// `e_I` for `I` given in any order (with the sorting sign).
    pub fn basis(window: Window, indices: &[i32]) -> Result<Self> {
        let (set, sign) = sort_with_sign(indices)?;
        window.check(&set)?;
        let mut v = Self::zero(window, indices.len());
        if sign != 0 {
            v.terms.insert(set, signed(S::one(), sign));
        }
        Ok(v)
    }

    pub fn from_terms(window: Window, grade: usize, terms: impl IntoIterator<Item = (IndexSet, S)>) -> Result<Self> {
        let mut v = Self::zero(window, grade);
        for (set, c) in terms {
            if set.len() != grade {
                return Err(WedgeError::GradeMismatch { expected: grade, found: set.len() });
            }
            window.check(&set)?;
            v.add_term(set, c);
        }
        Ok(v)
    }

    /// Grade-1 vector `Σ c_i e_i`.
    pub fn vector(window: Window, coeffs: impl IntoIterator<Item = (i32, S)>) -> Result<Self> {
        Self::from_terms(window, 1, coeffs.into_iter().map(|(i, c)| (IndexSet::from_sorted_unchecked(vec![i]), c)))
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, set: &IndexSet) -> S {
        self.terms.get(set).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, set: IndexSet, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&set) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&set);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(set, c);
            }
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(WedgeError::WindowMismatch { left: self.window, right: other.window });
        }
        if self.grade != other.grade {
            return Err(WedgeError::GradeMismatch { expected: self.grade, found: other.grade });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (set, c) in &other.terms {
            out.add_term(set.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.window, self.grade);
        }
        Multivector {
            window: self.window,
            grade: self.grade,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Same terms, reinterpreted in a larger window.
    pub fn embed(&self, window: Window) -> Result<Self> {
        if !self.window.is_within(window) {
            return Err(WedgeError::WindowNotContained { inner: self.window, outer: window });
        }
        Ok(Multivector { window, grade: self.grade, terms: self.terms.clone() })
    }

    /// The exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.window != other.window {
            return Err(WedgeError::WindowMismatch { left: self.window, right: other.window });
        }
        let mut out = Self::zero(self.window, self.grade + other.grade);
        if out.grade > self.window.dim() {
            return Ok(out);
        }
        let mut buf = Vec::with_capacity(out.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if !a.is_disjoint(b) {
                    continue;
                }
                buf.clear();
                buf.extend(a.iter());
                buf.extend(b.iter());
                let (set, sign) = sort_with_sign(&buf)?;
                out.add_term(set, signed(ca.clone() * cb.clone(), sign));
            }
        }
        Ok(out)
    }

    /// `v ∧ v ∧ … ∧ v` (`l` factors); `l = 0` gives the scalar 1.
    pub fn wedge_power(&self, l: usize) -> Self {
        let mut out = Self::scalar(self.window, S::one());
        for _ in 0..l {
            out = out.wedge(self).expect("same window");
            if out.is_zero() {
                return Self::zero(self.window, self.grade * l);
            }
        }
        out
    }

    /// Left-to-right product of all factors.
    pub fn wedge_all(factors: &[Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| WedgeError::Precondition("empty wedge product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.wedge(f))
    }

    /// The terms as a dense coefficient vector over the window's `grade`-subsets.
    pub fn to_dense(&self) -> Vec<S> {
        self.window.subsets(self.grade).iter().map(|s| self.coeff(s)).collect()
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (set, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})e{set}")?;
        }
        Ok(())
    }
}

/// A linear functional `f = Σ f_i e^i` with `e^i(e_j) = δ_{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<S> {
    window: Window,
    coeffs: BTreeMap<i32, S>,
}

impl<S: Scalar> Covector<S> {
    pub fn new(window: Window, coeffs: impl IntoIterator<Item = (i32, S)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            if !window.contains(i) {
                return Err(WedgeError::IndexOutOfWindow { index: i, window });
            }
            if !c.is_zero() {
                map.insert(i, c);
            }
        }
        Ok(Covector { window, coeffs: map })
    }

    /// The coordinate functional `e^k`.
    pub fn basis(window: Window, k: i32) -> Result<Self> {
        Self::new(window, [(k, S::one())])
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, S> {
        &self.coeffs
    }

    pub fn random<R: Rng + ?Sized>(window: Window, half_range: i64, rng: &mut R) -> Self {
        let coeffs = window.elements().into_iter().map(|i| (i, S::from_int(rng.random_range(-half_range..half_range))));
        Self::new(window, coeffs).expect("indices from the window")
    }
}

/// Right contraction: `e^k` removes `k` from `e_I` after moving it to the last slot.
///
/// `contract(e^2, e_{12}) = e_1`, `contract(e^1, e_{12}) = -e_2`.
pub fn contract<S: Scalar>(f: &Covector<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
    if f.window != v.window {
        return Err(WedgeError::WindowMismatch { left: f.window, right: v.window });
    }
    if v.grade == 0 {
        return Err(WedgeError::Precondition("cannot contract a grade-0 element".into()));
    }
    let mut out = Multivector::zero(v.window, v.grade - 1);
    for (set, c) in &v.terms {
        for (&k, fk) in &f.coeffs {
            if set.contains(k) {
                let sign = if set.count_above(k) % 2 == 0 { 1 } else { -1 };
                out.add_term(set.without(k), signed(c.clone() * fk.clone(), sign));
            }
        }
    }
    Ok(out)
}

/// The four maps linking neighbouring windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// `(n,p) → (n+1,p)`, same terms.
    I,
    /// `(n,p) → (n,p+1)`, `ω ↦ ω ∧ e_{p+1}`.
    J,
    /// `(n,p) → (n-1,p)`, terms containing `-n` die.
    IDagger,
    /// `(n,p) → (n,p-1)`, contraction by `e^p`.
    JDagger,
}

impl Transition {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "i" => Some(Transition::I),
            "j" => Some(Transition::J),
            "i-dagger" | "idagger" | "i†" => Some(Transition::IDagger),
            "j-dagger" | "jdagger" | "j†" => Some(Transition::JDagger),
            _ => None,
        }
    }
}

pub fn transition<S: Scalar>(kind: Transition, v: &Multivector<S>) -> Result<Multivector<S>> {
    let w = v.window;
    match kind {
        Transition::I => v.embed(Window::new(w.n + 1, w.p)),
        Transition::J => {
            let target = Window::new(w.n, w.p + 1);
            let top = w.p as i32 + 1;
            let terms = v.terms.iter().map(|(s, c)| (s.with(top).expect("p+1 is new"), c.clone()));
            Multivector::from_terms(target, v.grade + 1, terms)
        }
        Transition::IDagger => {
            if w.n == 0 {
                return Err(WedgeError::Precondition("i† needs n >= 1".into()));
            }
            let bottom = -(w.n as i32);
            let target = Window::new(w.n - 1, w.p);
            let terms = v.terms.iter().filter(|(s, _)| !s.contains(bottom)).map(|(s, c)| (s.clone(), c.clone()));
            Multivector::from_terms(target, v.grade, terms)
        }
        Transition::JDagger => {
            if w.p == 0 || v.grade == 0 {
                return Err(WedgeError::Precondition("j† needs p >= 1 and grade >= 1".into()));
            }
            let top = w.p as i32;
            let contracted = contract(&Covector::basis(w, top)?, v)?;
            Multivector::from_terms(Window::new(w.n, w.p - 1), contracted.grade, contracted.terms)
        }
    }
}

/// `e_I ↦ sgn(I, I^c) e_{I^c}` in the same window.
///
/// The output is labelled by the dual basis `e^j` of the window itself.
pub fn complement_star<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    let all = v.window.all_indices();
    let mut out = Multivector::zero(v.window, v.window.dim().saturating_sub(v.grade));
    for (set, c) in &v.terms {
        let rest = all.difference(set);
        let sign = pair_sign(set, &rest);
        out.add_term(rest, signed(c.clone(), sign));
    }
    out
}

/// Relabels `e^j ↦ e_{-j}`, moving window `(n,p)` to `(p,n)`.
pub fn negate_indices<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    let g = v.grade;
    let reversal = if (g * g.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut out = Multivector::zero(v.window.dual(), g);
    for (set, c) in &v.terms {
        out.add_term(set.negated(), signed(c.clone(), reversal));
    }
    out
}

/// Hodge dual `∧^g V_{n,p} → ∧^{n+p-g} V_{p,n}` through the pairing `⟨e_i,e_j⟩ = δ_{-i,j}`.
pub fn hodge_star<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    negate_indices(&complement_star(v))
}

/// A square matrix over the window's basis; column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    window: Window,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(window: Window, entries: Vec<Vec<S>>) -> Result<Self> {
        let d = window.dim();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(WedgeError::Precondition(format!("matrix must be {d}x{d} for window {window}")));
        }
        Ok(Matrix { window, entries })
    }

    pub fn identity(window: Window) -> Self {
        let d = window.dim();
        let entries = (0..d).map(|r| (0..d).map(|c| if r == c { S::one() } else { S::zero() }).collect()).collect();
        Matrix { window, entries }
    }

    /// Entry at (row index `i`, column index `j`), both signed indices.
    pub fn get(&self, i: i32, j: i32) -> S {
        match (self.window.position(i), self.window.position(j)) {
            (Some(r), Some(c)) => self.entries[r][c].clone(),
            _ => S::zero(),
        }
    }

    pub fn set(&mut self, i: i32, j: i32, value: S) -> Result<()> {
        let r = self.window.position(i).ok_or(WedgeError::IndexOutOfWindow { index: i, window: self.window })?;
        let c = self.window.position(j).ok_or(WedgeError::IndexOutOfWindow { index: j, window: self.window })?;
        self.entries[r][c] = value;
        Ok(())
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn entries(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.window != other.window {
            return Err(WedgeError::WindowMismatch { left: self.window, right: other.window });
        }
        Ok(Matrix { window: self.window, entries: linalg::mat_mul(&self.entries, &other.entries) })
    }

    pub fn determinant(&self) -> S {
        linalg::determinant(&self.entries)
    }

    /// `M e_j` as a grade-1 multivector.
    pub fn column(&self, j: i32) -> Multivector<S> {
        let c = self.window.position(j).expect("index in window");
        let coeffs = self.window.elements().into_iter().enumerate().map(|(r, i)| (i, self.entries[r][c].clone()));
        Multivector::vector(self.window, coeffs).expect("indices from the window")
    }

    pub fn random<R: Rng + ?Sized>(window: Window, max_numer: i64, max_denom: i64, rng: &mut R) -> Self {
        let d = window.dim();
        let entries = (0..d).map(|_| (0..d).map(|_| random_scalar(rng, max_numer, max_denom)).collect()).collect();
        Matrix { window, entries }
    }

    pub fn random_invertible<R: Rng + ?Sized>(window: Window, max_numer: i64, max_denom: i64, rng: &mut R) -> Self {
        loop {
            let m = Self::random(window, max_numer, max_denom, rng);
            if !m.determinant().is_zero() {
                return m;
            }
        }
    }
}

/// The induced action `e_I ↦ (M e_{i_1}) ∧ ⋯ ∧ (M e_{i_g})`.
pub fn gl_apply<S: Scalar>(m: &Matrix<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
    if m.window != v.window {
        return Err(WedgeError::WindowMismatch { left: m.window, right: v.window });
    }
    let columns: BTreeMap<i32, Multivector<S>> = m.window.elements().into_iter().map(|j| (j, m.column(j))).collect();
    let mut out = Multivector::zero(v.window, v.grade);
    for (set, c) in &v.terms {
        let mut image = Multivector::scalar(v.window, c.clone());
        for i in set.iter() {
            image = image.wedge(&columns[&i])?;
            if image.is_zero() {
                break;
            }
        }
        for (s, x) in image.terms {
            out.add_term(s, x);
        }
    }
    Ok(out)
}

/// The antisymmetric coefficient matrix `A` of a 2-form (`A_{ij} = x_{ij}` for `i < j`).
pub fn antisymmetric_matrix<S: Scalar>(v: &Multivector<S>) -> Result<Vec<Vec<S>>> {
    if v.grade != 2 {
        return Err(WedgeError::GradeMismatch { expected: 2, found: v.grade });
    }
    let w = v.window;
    let d = w.dim();
    let mut a = vec![vec![S::zero(); d]; d];
    for (set, c) in &v.terms {
        let (i, j) = (set.first().unwrap(), set.last().unwrap());
        let (r, k) = (w.position(i).unwrap(), w.position(j).unwrap());
        a[r][k] = c.clone();
        a[k][r] = -c.clone();
    }
    Ok(a)
}

/// Rank of a 2-form: the largest `r` with `v^{∧r} ≠ 0`.
pub fn rank_two_form<S: Scalar>(v: &Multivector<S>) -> Result<usize> {
    let a = antisymmetric_matrix(v)?;
    let mut r = 0;
    let mut power = Multivector::scalar(v.window, S::one());
    loop {
        power = power.wedge(v)?;
        if power.is_zero() {
            break;
        }
        r += 1;
    }
    debug_assert_eq!(2 * r, linalg::rank(&a), "wedge-power rank disagrees with matrix rank");
    Ok(r)
}

/// A random multivector where each coordinate is nonzero with probability `density`.
pub fn random_multivector<S: Scalar, R: Rng + ?Sized>(window: Window, grade: usize, density: f64, rng: &mut R) -> Multivector<S> {
    let mut terms = Vec::new();
    for s in window.subsets(grade) {
        if rng.random_bool(density.clamp(0.0, 1.0)) {
            let c: S = random_nonzero_scalar(rng, 9, 4);
            terms.push((s, c));
        }
    }
    Multivector::from_terms(window, grade, terms).expect("subsets of the window")
}

pub fn random_vector<S: Scalar, R: Rng + ?Sized>(window: Window, rng: &mut R) -> Multivector<S> {
    let coeffs: Vec<(i32, S)> = window.elements().into_iter().map(|i| (i, random_scalar(rng, 9, 3))).collect();
    Multivector::vector(window, coeffs).expect("indices from the window")
}

/// A wedge of `grade` random vectors.
pub fn random_decomposable<S: Scalar, R: Rng + ?Sized>(window: Window, grade: usize, rng: &mut R) -> Multivector<S> {
    let mut out = Multivector::scalar(window, S::one());
    for _ in 0..grade {
        out = out.wedge(&random_vector(window, rng)).expect("same window");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    fn e(w: Window, idx: &[i32]) -> Multivector<Rational> {
        Multivector::basis(w, idx).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let w = Window::new(0, 4);
        assert_eq!(e(w, &[1]).wedge(&e(w, &[2])).unwrap(), e(w, &[1, 2]));
        assert_eq!(e(w, &[2]).wedge(&e(w, &[1])).unwrap(), e(w, &[1, 2]).scale(&q(-1)));
        let v = e(w, &[1, 2]).add(&e(w, &[3, 4])).unwrap();
        assert_eq!(v.wedge(&v).unwrap(), e(w, &[1, 2, 3, 4]).scale(&q(2)));
        let other = e(Window::new(1, 4), &[1]);
        assert!(matches!(v.wedge(&other), Err(WedgeError::WindowMismatch { .. })));
    }

    #[test]
    fn wedge_power_examples() {
        let w = Window::new(0, 6);
        assert!(e(w, &[1, 2, 3]).wedge_power(2).is_zero());
        let v = e(w, &[1, 2]).add(&e(w, &[3, 4])).unwrap();
        assert_eq!(v.wedge_power(2), e(w, &[1, 2, 3, 4]).scale(&q(2)));
        assert!(v.wedge_power(3).is_zero());
        let u = v.add(&e(w, &[5, 6])).unwrap();
        assert_eq!(u.wedge_power(3), e(w, &[1, 2, 3, 4, 5, 6]).scale(&q(6)));
        assert_eq!(u.wedge_power(0), Multivector::scalar(w, q(1)));
    }

    #[test]
    fn contraction_examples() {
        let w = Window::new(0, 3);
        let e12 = e(w, &[1, 2]);
        let f = |k| Covector::<Rational>::basis(w, k).unwrap();
        assert_eq!(contract(&f(2), &e12).unwrap(), e(w, &[1]));
        assert!(contract(&f(3), &e12).unwrap().is_zero());
        assert_eq!(contract(&f(1), &e12).unwrap(), e(w, &[2]).scale(&q(-1)));
        assert!(contract(&f(1), &Multivector::scalar(w, q(1))).is_err());
    }

    #[test]
    fn transition_examples() {
        let e12 = e(Window::new(0, 2), &[1, 2]);
        assert_eq!(transition(Transition::J, &e12).unwrap(), e(Window::new(0, 3), &[1, 2, 3]));
        let w = Window::new(4, 4);
        let v = e(w, &[-4, 1, 2, 3]).add(&e(w, &[-3, 1, 2, 3])).unwrap();
        assert_eq!(transition(Transition::IDagger, &v).unwrap(), e(Window::new(3, 4), &[-3, 1, 2, 3]));
        assert!(transition(Transition::IDagger, &e(Window::new(0, 2), &[1])).is_err());
        assert!(transition(Transition::JDagger, &Multivector::scalar(Window::new(0, 2), q(1))).is_err());
    }

    #[test]
    fn gl_examples() {
        let w = Window::new(0, 2);
        let e12 = e(w, &[1, 2]);
        assert_eq!(gl_apply(&Matrix::identity(w), &e12).unwrap(), e12);
        let swap = Matrix::new(w, vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(gl_apply(&swap, &e12).unwrap(), e12.scale(&q(-1)));
        let w = Window::new(1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v: Multivector<Rational> = random_multivector(w, 3, 0.7, &mut rng);
        let mut lambda = Matrix::identity(w);
        for i in w.elements() {
            lambda.set(i, i, q(3)).unwrap();
        }
        assert_eq!(gl_apply(&lambda, &v).unwrap(), v.scale(&q(27)));
    }

    #[test]
    fn rank_examples() {
        let w = Window::new(0, 4);
        assert_eq!(rank_two_form(&Multivector::<Rational>::zero(w, 2)).unwrap(), 0);
        assert_eq!(rank_two_form(&e(w, &[1, 2])).unwrap(), 1);
        assert_eq!(rank_two_form(&e(w, &[1, 2]).add(&e(w, &[3, 4])).unwrap()).unwrap(), 2);
        assert!(rank_two_form(&e(w, &[1])).is_err());
    }

    #[test]
    fn star_of_top_basis_is_basis() {
        let w = Window::new(2, 3);
        let s = hodge_star(&e(w, &[1, 2, 3]));
        assert_eq!(s.window(), Window::new(3, 2));
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms().keys().next().unwrap(), &IndexSet::new(&[1, 2]).unwrap());
    }
}
