//! Hyper-Pfaffian forms, Plücker relations and the structure-constant product.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Result, WedgeError};
use crate::index::{block_partitions, combinations, enumerate_partitions, pair_sign, sort_with_sign, IndexSet, Window};
use crate::multivector::{hodge_star, Multivector};
use crate::poly::{Monomial, WedgePolynomial};
use crate::scalar::{sign_scalar, signed, Scalar};

/// `hpf^{(m,l)}_{A|J}`: width `m`, degree `l`, on `A` (`|A| = ml`), with a
/// possibly empty tail `J` appended to every coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormSpec {
    pub m: usize,
    pub l: usize,
    pub a: IndexSet,
    pub j: IndexSet,
}

impl FormSpec {
    pub fn new(m: usize, l: usize, a: IndexSet) -> Result<Self> {
        Self::relative(m, l, a, IndexSet::empty())
    }

    pub fn relative(m: usize, l: usize, a: IndexSet, j: IndexSet) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(WedgeError::InvalidForm("width and degree must be positive".into()));
        }
        if a.len() != m * l {
            return Err(WedgeError::InvalidForm(format!("|A| = {} but m*l = {}", a.len(), m * l)));
        }
        if !a.is_disjoint(&j) {
            return Err(WedgeError::InvalidForm(format!("A = {a} and J = {j} overlap")));
        }
        Ok(FormSpec { m, l, a, j })
    }

    /// Size of the coordinates the form is written in.
    pub fn coordinate_size(&self) -> usize {
        self.m + self.j.len()
    }

    /// The smallest window holding `A ∪ J`.
    pub fn minimal_window(&self) -> Window {
        let all = self.a.union(&self.j).to_vec();
        Window::enclosing(&all)
    }

    pub fn label(&self) -> String {
        if self.j.is_empty() {
            format!("hpf({},{})@{}", self.m, self.l, self.a)
        } else {
            format!("hpf({},{})@{}|{}", self.m, self.l, self.a, self.j)
        }
    }

    fn check_window(&self, window: Window) -> Result<()> {
        window.check(&self.a)?;
        window.check(&self.j)
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The signed blocks of every partition of `A`, each block already merged with `J`.
fn signed_monomials(spec: &FormSpec) -> Result<Vec<(i8, Vec<IndexSet>)>> {
    if spec.m % 2 == 1 {
        return Ok(Vec::new());
    }
    let out = enumerate_partitions(&spec.a, spec.m)?
        .map(|(blocks, sign)| {
            let coords = blocks.into_iter().map(|b| b.union(&spec.j)).collect();
            (sign, coords)
        })
        .collect();
    Ok(out)
}

/// The form as a polynomial over `window`; identically zero for odd `m`.
pub fn hpf_polynomial<S: Scalar>(spec: &FormSpec, window: Window) -> Result<WedgePolynomial<S>> {
    spec.check_window(window)?;
    let terms = signed_monomials(spec)?.into_iter().map(|(sign, coords)| (Monomial::new(coords), sign_scalar(sign)));
    WedgePolynomial::from_terms(window, spec.coordinate_size(), terms)
}

/// Evaluates the form at `v` without building the polynomial.
pub fn hpf_eval<S: Scalar>(spec: &FormSpec, v: &Multivector<S>) -> Result<S> {
    if v.grade() != spec.coordinate_size() {
        return Err(WedgeError::GradeMismatch { expected: spec.coordinate_size(), found: v.grade() });
    }
    spec.check_window(v.window())?;
    if spec.m % 2 == 1 {
        return Ok(S::zero());
    }
    let parts = block_partitions(spec.a.len(), spec.m)?;
    let elems = spec.a.to_vec();
    let mut total = S::zero();
    'outer: for part in parts.iter() {
        let mut prod = S::one();
        for block in &part.blocks {
            let set = IndexSet::from_sorted_unchecked(block.iter().map(|&p| elems[p]).collect()).union(&spec.j);
            let x = v.coeff(&set);
            if x.is_zero() {
                continue 'outer;
            }
            prod = prod * x;
        }
        total = total + signed(prod, part.sign);
    }
    Ok(total)
}

/// The multilinear form: a sum over ordered tuples `(I_1, …, I_l)` partitioning
/// `A`, of `sgn(I_1,…,I_l) · a_{1,I_1} ⋯ a_{l,I_l}`.
///
/// Defined for every width, including odd `m`.
pub fn hpf_multilinear<S: Scalar>(spec: &FormSpec, vs: &[Multivector<S>]) -> Result<S> {
    if !spec.j.is_empty() {
        return Err(WedgeError::InvalidForm("multilinear form takes no tail".into()));
    }
    if vs.len() != spec.l {
        return Err(WedgeError::Precondition(format!("expected {} arguments, got {}", spec.l, vs.len())));
    }
    let window = vs[0].window();
    for v in vs {
        if v.window() != window {
            return Err(WedgeError::WindowMismatch { left: window, right: v.window() });
        }
        if v.grade() != spec.m {
            return Err(WedgeError::GradeMismatch { expected: spec.m, found: v.grade() });
        }
    }
    spec.check_window(window)?;

    fn go<S: Scalar>(vs: &[Multivector<S>], remaining: &IndexSet, concat: &mut Vec<i32>, prod: S, total: &mut S) {
        let Some((first, rest)) = vs.split_first() else {
            let (_, sign) = sort_with_sign(concat).expect("nonzero indices");
            *total = total.clone() + signed(prod, sign);
            return;
        };
        for (set, c) in first.terms() {
            if set.is_subset(remaining) {
                let len = concat.len();
                concat.extend(set.iter());
                go(rest, &remaining.difference(set), concat, prod.clone() * c.clone(), total);
                concat.truncate(len);
            }
        }
    }
    let mut total = S::zero();
    go(vs, &spec.a, &mut Vec::with_capacity(spec.a.len()), S::one(), &mut total);
    Ok(total)
}

/// `v_1 ∧ ⋯ ∧ v_l = Σ_A hpf^{(m,l)}_A(v_1, …, v_l) e_A`.
pub fn wedge_via_hpf<S: Scalar>(vs: &[Multivector<S>]) -> Result<Multivector<S>> {
    let first = vs.first().ok_or_else(|| WedgeError::Precondition("no factors".into()))?;
    let (window, m, l) = (first.window(), first.grade(), vs.len());
    let mut out = Multivector::zero(window, m * l);
    if m * l > window.dim() {
        return Ok(out);
    }
    for a in window.subsets(m * l) {
        let spec = FormSpec::new(m, l, a.clone())?;
        let c = hpf_multilinear(&spec, vs)?;
        out.add_term(a, c);
    }
    Ok(out)
}

/// Every full form `hpf^{(m,l)}_A`, `A` an `ml`-subset of the window.
pub fn full_forms(m: usize, l: usize, window: Window) -> Result<Vec<FormSpec>> {
    window.subsets(m * l).into_iter().map(|a| FormSpec::new(m, l, a)).collect()
}

/// `Σ_{j ∈ J∖I} sgn(j, I) · sgn(j, J∖j) · x_{I∪j} x_{J∖j}`.
///
/// The second sign puts `j` back in place inside `J`; without it the sum is
/// not a relation.
pub fn plucker_relation<S: Scalar>(i: &IndexSet, j: &IndexSet, window: Window) -> Result<WedgePolynomial<S>> {
    let p = i.len() + 1;
    if j.len() != p + 1 {
        return Err(WedgeError::InvalidForm(format!("|I| = {} needs |J| = {}, got {}", i.len(), p + 1, j.len())));
    }
    window.check(i)?;
    window.check(j)?;
    let terms = plucker_terms(i, j).into_iter().map(|(sign, a, b)| (Monomial::new(vec![a, b]), sign_scalar::<S>(sign)));
    WedgePolynomial::from_terms(window, p, terms)
}

fn plucker_terms(i: &IndexSet, j: &IndexSet) -> Vec<(i8, IndexSet, IndexSet)> {
    j.iter()
        .filter(|&x| !i.contains(x))
        .map(|x| {
            let single = IndexSet::from_sorted_unchecked(vec![x]);
            let rest = j.without(x);
            let sign = pair_sign(&single, i) * pair_sign(&single, &rest);
            (sign, i.union(&single), rest)
        })
        .collect()
}

/// Value of a Plücker relation at `v`.
pub fn plucker_eval<S: Scalar>(i: &IndexSet, j: &IndexSet, v: &Multivector<S>) -> S {
    plucker_terms(i, j).into_iter().fold(S::zero(), |acc, (sign, a, b)| acc + signed(v.coeff(&a) * v.coeff(&b), sign))
}

/// One summand `sign · x_I · hpf^{(m,l)}_{A∖I}` of the filtration identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationTerm {
    pub sign: i8,
    pub block: IndexSet,
    pub residual: FormSpec,
}

type FiltrationCache = RwLock<HashMap<(usize, usize, usize), SignTable>>;

fn filtration_cache() -> &'static FiltrationCache {
    static CACHE: OnceLock<FiltrationCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Positional signs for `hpf^{(m,l+1)}_{[m(l+1)]}` expanded along `pivot`,
/// found by matching against the full polynomial.
/// Residual positions with their sign.
type SignTable = Arc<Vec<(Vec<usize>, i8)>>;

fn filtration_signs(m: usize, l: usize, pivot: usize) -> Result<SignTable> {
    let key = (m, l, pivot);
    if let Some(hit) = filtration_cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    type Q = num_rational::BigRational;
    let size = m * (l + 1);
    let labels: Vec<i32> = (1..=size as i32).collect();
    let window = Window::new(0, size);
    let full_set = IndexSet::from_sorted_unchecked(labels.clone());
    let full: WedgePolynomial<Q> = hpf_polynomial(&FormSpec::new(m, l + 1, full_set.clone())?, window)?;
    let others: Vec<usize> = (0..size).filter(|&k| k != pivot).collect();
    let mut signs = Vec::new();
    let mut assembled = WedgePolynomial::<Q>::zero(window, m);
    for rest in combinations(&others, m - 1) {
        let mut block: Vec<usize> = rest.clone();
        block.push(pivot);
        block.sort_unstable();
        let set = IndexSet::from_sorted_unchecked(block.iter().map(|&k| labels[k]).collect());
        let residual: WedgePolynomial<Q> = hpf_polynomial(&FormSpec::new(m, l, full_set.difference(&set))?, window)?;
        let product = WedgePolynomial::var(window, set)?.mul(&residual)?;
        let (mono, c) = product.terms().iter().next().ok_or_else(|| WedgeError::Inconsistent("empty residual form".into()))?;
        let ratio = full.coeff(mono) / c.clone();
        let sign = if ratio == Q::from_int(1) {
            1
        } else if ratio == Q::from_int(-1) {
            -1
        } else {
            return Err(WedgeError::Inconsistent(format!("no sign matches block {block:?}")));
        };
        assembled = assembled.add(&product.scale(&sign_scalar(sign)))?;
        signs.push((block, sign));
    }
    if assembled != full {
        return Err(WedgeError::Inconsistent("filtration expansion does not reassemble the form".into()));
    }
    let value = Arc::new(signs);
    let mut cache = filtration_cache().write().expect("cache poisoned");
    Ok(Arc::clone(cache.entry(key).or_insert(value)))
}

/// `hpf^{(m,l+1)}_A = Σ_{I ∋ a} sign_I · x_I · hpf^{(m,l)}_{A∖I}`, with signs
/// computed once per shape and cached.
pub fn filtration_expansion(m: usize, l: usize, a: &IndexSet, pivot: i32) -> Result<Vec<FiltrationTerm>> {
    if m % 2 == 1 {
        return Err(WedgeError::InvalidForm("odd width forms vanish; the expansion has no signs".into()));
    }
    if l == 0 || a.len() != m * (l + 1) {
        return Err(WedgeError::InvalidForm(format!("|A| = {} but m*(l+1) = {}", a.len(), m * (l + 1))));
    }
    let elems = a.to_vec();
    let pos = elems
        .iter()
        .position(|&x| x == pivot)
        .ok_or_else(|| WedgeError::Precondition(format!("pivot {pivot} is not in {a}")))?;
    filtration_signs(m, l, pos)?
        .iter()
        .map(|(block, sign)| {
            let set = IndexSet::from_sorted_unchecked(block.iter().map(|&k| elems[k]).collect());
            Ok(FiltrationTerm { sign: *sign, residual: FormSpec::new(m, l, a.difference(&set))?, block: set })
        })
        .collect()
}

/// Reassembles `Σ sign · x_I · hpf_{A∖I}` over `window`.
pub fn assemble_filtration<S: Scalar>(terms: &[FiltrationTerm], window: Window) -> Result<WedgePolynomial<S>> {
    let m = terms.first().map_or(0, |t| t.block.len());
    let mut out = WedgePolynomial::zero(window, m);
    for t in terms {
        let residual: WedgePolynomial<S> = hpf_polynomial(&t.residual, window)?;
        let product = WedgePolynomial::var(window, t.block.clone())?.mul(&residual)?;
        out = out.add(&product.scale(&sign_scalar(t.sign)))?;
    }
    Ok(out)
}

/// Why a component imposes no equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialReason {
    /// `p < m`.
    NarrowWindow { p: usize, m: usize },
    /// `n < m(l-1)`.
    ShallowWindow { n: usize, bound: usize },
}

impl fmt::Display for TrivialReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrivialReason::NarrowWindow { p, m } => write!(f, "p = {p} < m = {m}"),
            TrivialReason::ShallowWindow { n, bound } => write!(f, "n = {n} < m(l-1) = {bound}"),
        }
    }
}

pub fn trivial_reason(m: usize, l: usize, window: Window) -> Option<TrivialReason> {
    let bound = m * l.saturating_sub(1);
    if window.p < m {
        Some(TrivialReason::NarrowWindow { p: window.p, m })
    } else if window.n < bound {
        Some(TrivialReason::ShallowWindow { n: window.n, bound })
    } else {
        None
    }
}

/// The relative forms `hpf^{(m,l)}_{A|J}` cutting out the component in
/// `∧^p V_{n,p}`: `J` runs over the `(p-m)`-subsets of the window and `A`
/// over the `ml`-subsets of the rest. Empty in the trivial region.
pub fn component_forms(m: usize, l: usize, window: Window) -> Result<Vec<FormSpec>> {
    if m == 0 || l == 0 {
        return Err(WedgeError::InvalidForm("width and degree must be positive".into()));
    }
    if trivial_reason(m, l, window).is_some() {
        return Ok(Vec::new());
    }
    let all = window.all_indices();
    let mut out = Vec::new();
    for j in window.subsets(window.p - m) {
        let rest = all.difference(&j);
        for a in rest.subsets(m * l) {
            out.push(FormSpec::relative(m, l, a, j.clone())?);
        }
    }
    Ok(out)
}

/// Ordered `d`-tuples of distinct window indices.
pub fn contraction_sequences(window: Window, d: usize) -> Vec<Vec<i32>> {
    fn go(items: &[i32], d: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for &i in items {
            if !cur.contains(&i) {
                cur.push(i);
                go(items, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&window.elements(), d, &mut Vec::new(), &mut out);
    out
}

/// One coefficient of `(f_d ⌟ ⋯ ⌟ f_1 ⌟ v)^{∧l}` viewed as a polynomial in
/// the covector entries. `key[k]` is the multiset of indices drawn from `f_{k+1}`;
/// `terms` lists multisets of sequences (by position) with their multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarGroup {
    pub key: Vec<Vec<i32>>,
    pub terms: Vec<PolarTerm>,
}

/// Positions into the sequence list, with multiplicity.
pub type PolarTerm = (Vec<usize>, u64);

impl PolarGroup {
    /// All sequences in the group are equal: the plain relative form.
    pub fn is_diagonal(&self) -> bool {
        self.key.iter().all(|k| k.windows(2).all(|w| w[0] == w[1]))
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Groups the `l`-multisets of `seqs` by the covector monomial they multiply.
pub fn polar_groups(seqs: &[Vec<i32>], l: usize) -> Vec<PolarGroup> {
    fn go(n: usize, l: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, l, i, cur, out);
            cur.pop();
        }
    }
    let mut multisets = Vec::new();
    go(seqs.len(), l, 0, &mut Vec::new(), &mut multisets);
    let d = seqs.first().map_or(0, Vec::len);
    let mut groups: std::collections::BTreeMap<Vec<Vec<i32>>, Vec<PolarTerm>> = Default::default();
    for ms in multisets {
        let key: Vec<Vec<i32>> = (0..d)
            .map(|k| {
                let mut col: Vec<i32> = ms.iter().map(|&i| seqs[i][k]).collect();
                col.sort_unstable();
                col
            })
            .collect();
        let mut mult = factorial(l);
        let mut run = 1;
        for w in ms.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                mult /= factorial(run);
                run = 1;
            }
        }
        mult /= factorial(run);
        groups.entry(key).or_default().push((ms, mult));
    }
    groups.into_iter().map(|(key, terms)| PolarGroup { key, terms }).collect()
}

/// Coefficient of `e_I` in `e^{s_d} ⌟ ⋯ ⌟ e^{s_1} ⌟ e_{I ∪ S}`.
fn contraction_sign(i: &IndexSet, seq: &[i32]) -> Result<(IndexSet, i8)> {
    let (tail, _) = sort_with_sign(seq)?;
    let mut u = i.union(&tail);
    let mut sign = 1i8;
    for &k in seq {
        if u.count_above(k) % 2 == 1 {
            sign = -sign;
        }
        u = u.without(k);
    }
    Ok((i.union(&tail), sign))
}

fn ordered_blocks(rest: &IndexSet, m: usize, l: usize, cur: &mut Vec<IndexSet>, out: &mut Vec<Vec<IndexSet>>) {
    if cur.len() == l {
        out.push(cur.clone());
        return;
    }
    for b in rest.subsets(m) {
        let next = rest.difference(&b);
        cur.push(b);
        ordered_blocks(&next, m, l, cur, out);
        cur.pop();
    }
}

fn polar_polynomial<S: Scalar>(m: usize, l: usize, a: &IndexSet, group: &PolarGroup, seqs: &[Vec<i32>], window: Window) -> Result<WedgePolynomial<S>> {
    let mut blockings = Vec::new();
    ordered_blocks(a, m, l, &mut Vec::new(), &mut blockings);
    let mut acc: std::collections::BTreeMap<Monomial, S> = Default::default();
    for (ms, mult) in &group.terms {
        'block: for blocks in &blockings {
            let concat: Vec<i32> = blocks.iter().flat_map(|b| b.iter()).collect();
            let (_, mut sign) = sort_with_sign(&concat)?;
            let mut factors = Vec::with_capacity(l);
            for (b, &si) in blocks.iter().zip(ms) {
                let seq = &seqs[si];
                if seq.iter().any(|&k| b.contains(k)) {
                    continue 'block;
                }
                let (coord, s) = contraction_sign(b, seq)?;
                sign *= s;
                factors.push(coord);
            }
            let c = acc.entry(Monomial::new(factors)).or_insert_with(S::zero);
            *c = c.clone() + signed(S::from_u64(*mult).expect("small multiplicity"), sign);
        }
    }
    WedgePolynomial::from_terms(window, m + seqs.first().map_or(0, Vec::len), acc.into_iter().filter(|(_, c)| !c.is_zero()))
}

fn polar_label(m: usize, l: usize, a: &IndexSet, group: &PolarGroup, seqs: &[Vec<i32>]) -> String {
    let (first, _) = &group.terms[0];
    let parts: Vec<String> = first
        .iter()
        .map(|&i| seqs[i].iter().map(i32::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("hpf({m},{l})@{a}|({})", parts.join(";"))
}

/// Equations of the `HPf^{(m,l)}` component in `∧^p V_{n,p}`, invariant under
/// `GL(V_{n,p})`: every coefficient of `(f_d ⌟ ⋯ ⌟ f_1 ⌟ v)^{∧l}`, `d = p - m`,
/// as a polynomial in the covectors. Diagonal coefficients are the relative
/// forms of [`component_forms`]; duplicates up to sign are dropped.
pub fn component_equations<S: Scalar>(m: usize, l: usize, window: Window) -> Result<Vec<(String, WedgePolynomial<S>)>> {
    if m == 0 || l == 0 {
        return Err(WedgeError::InvalidForm("width and degree must be positive".into()));
    }
    if trivial_reason(m, l, window).is_some() {
        return Ok(Vec::new());
    }
    let d = window.p - m;
    let mut out: Vec<(String, WedgePolynomial<S>)> = Vec::new();
    let mut seen: std::collections::HashSet<String> = Default::default();
    let mut push = |label: String, poly: WedgePolynomial<S>, out: &mut Vec<(String, WedgePolynomial<S>)>| {
        if poly.is_zero() {
            return;
        }
        let lead = poly.terms().iter().next().map(|(_, c)| c.clone()).expect("nonzero");
        let canon = poly.scale(&(S::one() / lead)).to_string();
        if seen.insert(canon) {
            out.push((label, poly));
        }
    };
    if d == 0 {
        for spec in full_forms(m, l, window)? {
            push(spec.label(), hpf_polynomial(&spec, window)?, &mut out);
        }
        return Ok(out);
    }
    let seqs = contraction_sequences(window, d);
    let all = window.all_indices();
    let groups = polar_groups(&seqs, l);
    // relative forms first so they keep their labels after deduplication
    let (diagonal, mixed): (Vec<_>, Vec<_>) = groups.into_iter().partition(PolarGroup::is_diagonal);
    for group in diagonal.iter().chain(&mixed) {
        for a in all.subsets(m * l) {
            if group.is_diagonal() {
                let (j, _) = sort_with_sign(&seqs[group.terms[0].0[0]])?;
                if !a.is_disjoint(&j) {
                    continue;
                }
                let spec = FormSpec::relative(m, l, a.clone(), j)?;
                push(spec.label(), hpf_polynomial(&spec, window)?, &mut out);
            } else {
                let poly = polar_polynomial(m, l, &a, group, &seqs, window)?;
                push(polar_label(m, l, &a, group, &seqs), poly, &mut out);
            }
        }
    }
    Ok(out)
}

/// Rewrites a polynomial in the coordinates `y_K` of `★v` (window `w.dual()`,
/// grade `dim - g`) as a polynomial in the coordinates `x_I` of `v`.
pub fn pull_back_through_star<S: Scalar>(poly: &WedgePolynomial<S>, window: Window, grade: usize) -> Result<WedgePolynomial<S>> {
    if poly.window() != window.dual() || poly.grade() + grade != window.dim() {
        return Err(WedgeError::Precondition(format!(
            "polynomial over {} in grade {} is not a star image of grade {grade} in {window}",
            poly.window(),
            poly.grade()
        )));
    }
    let all = window.all_indices();
    poly.substitute(window, grade, |k| {
        let source = all.difference(&k.negated());
        let image = hodge_star(&Multivector::<S>::from_terms(window, grade, [(source.clone(), S::one())])?);
        Ok((source, image.coeff(k)))
    })
}
