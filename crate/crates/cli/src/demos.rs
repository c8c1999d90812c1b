//! Named worked examples, each a list of expected-vs-computed checks.

use hyperwedge::hpf::{hpf_polynomial, FormSpec};
use hyperwedge::multivector::{complement_star, contract, gl_apply, random_decomposable, random_multivector, transition, Matrix, Transition};
use hyperwedge::variety::{contraction_membership, in_grassmannian, in_hpf, lift_through_j, pf_contraction_identically_zero, pf_contraction_witness, DEFAULT_SEED, DEFAULT_TRIALS};
use hyperwedge::{IndexSet, QMultivector, QPolynomial, Rational, Scalar, Window};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn equal(name: &str, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check { name: name.into(), pass: expected == computed, expected, computed }
    }
}

pub struct Demo {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn() -> CliResult<Vec<Check>>,
}

pub fn registry() -> &'static [Demo] {
    &[
        Demo { name: "gr24", description: "the Pfaffian cutting out Gr(2,4) and its two nonzero orbits", run: gr24 },
        Demo { name: "lift", description: "grade-3 points lift into HPf(4,2) and come back under j-dagger", run: lift },
        Demo { name: "trivector", description: "two trivectors told apart by contraction, and a star value", run: trivector },
        Demo { name: "omega", description: "a nilpotent 4-vector in window (5,4)", run: omega },
        Demo { name: "limit-element", description: "(e1+e2)^(e2+e3)^... truncates compatibly up to (6,6)", run: limit_element },
    ]
}

pub fn find(name: &str) -> Option<&'static Demo> {
    registry().iter().find(|d| d.name == name)
}

fn q(x: i64) -> Rational {
    Rational::from_int(x)
}

fn e(w: Window, idx: &[i32]) -> CliResult<QMultivector> {
    Ok(QMultivector::basis(w, idx)?)
}

fn sum(w: Window, grade: usize, parts: &[&[i32]]) -> CliResult<QMultivector> {
    let mut out = QMultivector::zero(w, grade);
    for p in parts {
        out = out.add(&e(w, p)?)?;
    }
    Ok(out)
}

fn x(w: Window, s: &[i32]) -> CliResult<QPolynomial> {
    Ok(QPolynomial::var(w, IndexSet::new(s)?)?)
}

fn gr24() -> CliResult<Vec<Check>> {
    let w = Window::new(0, 4);
    let pf: QPolynomial = hpf_polynomial(&FormSpec::new(2, 2, IndexSet::new(&[1, 2, 3, 4])?)?, w)?;
    let display = x(w, &[1, 2])?
        .mul(&x(w, &[3, 4])?)?
        .sub(&x(w, &[1, 3])?.mul(&x(w, &[2, 4])?)?)?
        .add(&x(w, &[1, 4])?.mul(&x(w, &[2, 3])?)?)?;
    let mut checks = vec![Check::equal("pf_1234 = x12 x34 - x13 x24 + x14 x23", &display, &pf)];

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let split = sum(w, 2, &[&[1, 2], &[3, 4]])?;
    let (mut dec_ok, mut split_ok) = (0, 0);
    for _ in 0..20 {
        let m = Matrix::random_invertible(w, 3, 2, &mut rng);
        let d = gl_apply(&m, &e(w, &[1, 2])?)?;
        dec_ok += (in_grassmannian(&d)?.member && pf.eval(&d)?.is_zero()) as usize;
        let s = gl_apply(&m, &split)?;
        split_ok += (!in_grassmannian(&s)?.member && !pf.eval(&s)?.is_zero()) as usize;
    }
    checks.push(Check::equal("moved e12 lie on Gr(2,4)", "20/20", format!("{dec_ok}/20")));
    checks.push(Check::equal("moved e12+e34 lie off Gr(2,4)", "20/20", format!("{split_ok}/20")));
    checks.push(Check::equal("pf_1234(e12+e34)", "1", pf.eval(&split)?));
    checks.push(Check::equal("zero lies on Gr(2,4)", true, in_grassmannian(&QMultivector::zero(w, 2))?.member));
    Ok(checks)
}

fn lift() -> CliResult<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut checks = Vec::new();
    for w in [Window::new(4, 3), Window::new(6, 3)] {
        let (mut inside, mut back) = (0, 0);
        for _ in 0..20 {
            let a: QMultivector = random_multivector(w, 3, 0.6, &mut rng);
            let lifted = lift_through_j(&a)?;
            inside += in_hpf(4, 2, &lifted)?.member as usize;
            back += (transition(Transition::JDagger, &lifted)? == a) as usize;
        }
        checks.push(Check::equal(&format!("lifts from {w} in HPf(4,2)"), "20/20", format!("{inside}/20")));
        checks.push(Check::equal(&format!("j-dagger recovers the point in {w}"), "20/20", format!("{back}/20")));
    }
    Ok(checks)
}

/// `(e_{-4}e_{-3} + e_{-2}e_{-1} + e_1e_2) ∧ e_3`.
pub fn trivector_t() -> CliResult<QMultivector> {
    let w = Window::new(4, 3);
    Ok(sum(w, 2, &[&[-4, -3], &[-2, -1], &[1, 2]])?.wedge(&e(w, &[3])?)?)
}

/// `e_{-4}e_{-3}e_{-2} + e_{-1}e_1e_2`.
pub fn trivector_u() -> CliResult<QMultivector> {
    sum(Window::new(4, 3), 3, &[&[-4, -3, -2], &[-1, 1, 2]])
}

fn trivector() -> CliResult<Vec<Check>> {
    let (t, u) = (trivector_t()?, trivector_u()?);
    let w = t.window();
    let mut checks = vec![
        Check::equal("t passes the exact contraction test", false, pf_contraction_identically_zero(&t)?),
        Check::equal("u passes the exact contraction test", true, pf_contraction_identically_zero(&u)?),
        Check::equal("t passes the random contraction test", false, contraction_membership(2, 3, &t, DEFAULT_TRIALS, DEFAULT_SEED)?.member),
        Check::equal("u passes the random contraction test", true, contraction_membership(2, 3, &u, DEFAULT_TRIALS, DEFAULT_SEED)?.member),
    ];
    let by_e3 = contract(&hyperwedge::QCovector::basis(w, 3)?, &t)?;
    checks.push(Check::equal("(e^3 ⌟ t)^3 is nonzero", true, !by_e3.wedge_power(3).is_zero()));
    if let Some(f) = pf_contraction_witness(&t)? {
        let cube = contract(&f, &t)?.wedge_power(3);
        let coeffs: Vec<String> = f.coeffs().iter().map(|(i, c)| format!("{i}:{c}")).collect();
        checks.push(Check::equal(&format!("witness covector [{}] cubes to nonzero", coeffs.join(" ")), true, !cube.is_zero()));
    } else {
        checks.push(Check::equal("t has a witness covector", true, false));
    }
    let printed = sum(w, 4, &[&[-2, -1, 1, 2], &[-4, -3, 1, 2], &[-4, -3, -2, -1]])?;
    checks.push(Check::equal("star of t", &printed, complement_star(&t)));
    Ok(checks)
}

/// `e_{-5,-4,-3,-2} + e_{-1,1,2,3} + e_{-5,-4,-3,-1} + e_{-2,1,2,3} + e_{-5,-2,-1,4}`.
pub fn omega_5_4() -> CliResult<QMultivector> {
    sum(Window::new(5, 4), 4, &[&[-5, -4, -3, -2], &[-1, 1, 2, 3], &[-5, -4, -3, -1], &[-2, 1, 2, 3], &[-5, -2, -1, 4]])
}

fn omega() -> CliResult<Vec<Check>> {
    let w = omega_5_4()?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let v54 = Window::new(5, 4);
    let dec: QMultivector = random_decomposable(v54, 4, &mut rng);
    let split = sum(v54, 4, &[&[-4, -3, -2, -1], &[1, 2, 3, 4]])?;
    let top = e(v54, &[-4, -3, -2, -1, 1, 2, 3, 4])?;
    Ok(vec![
        Check::equal("ω ∧ ω", "0", w.wedge(&w)?),
        Check::equal("ω in HPf(4,2)", true, in_hpf(4, 2, &w)?.member),
        Check::equal("ω is decomposable", false, in_grassmannian(&w)?.member),
        Check::equal("a random decomposable 4-vector in HPf(4,2)", true, in_hpf(4, 2, &dec)?.member),
        Check::equal("e_{-4,-3,-2,-1} + e_{1,2,3,4} in HPf(4,2)", false, in_hpf(4, 2, &split)?.member),
        Check::equal("its square", top.scale(&q(2)), split.wedge_power(2)),
    ])
}

/// `(e_1+e_2) ∧ (e_2+e_3) ∧ ⋯ ∧ (e_{p-1}+e_p) ∧ e_p` in window `(n,p)`.
pub fn limit_truncation(n: usize, p: usize) -> CliResult<QMultivector> {
    let w = Window::new(n, p);
    let mut out = QMultivector::scalar(w, q(1));
    for k in 1..p as i32 {
        out = out.wedge(&sum(w, 1, &[&[k], &[k + 1]])?)?;
    }
    Ok(out.wedge(&e(w, &[p as i32])?)?)
}

fn limit_element() -> CliResult<Vec<Check>> {
    let (mut total, mut good) = (0, 0);
    for n in 0..=6 {
        for p in 1..=6 {
            let v = limit_truncation(n, p)?;
            total += 2;
            good += (transition(Transition::JDagger, &limit_truncation(n, p + 1)?)? == v) as usize;
            good += (transition(Transition::IDagger, &limit_truncation(n + 1, p)?)? == v) as usize;
        }
    }
    let top = limit_truncation(0, 6)?;
    Ok(vec![
        Check::equal("i-dagger and j-dagger truncations agree", format!("{total}/{total}"), format!("{good}/{total}")),
        Check::equal("the (0,6) truncation", e(Window::new(0, 6), &[1, 2, 3, 4, 5, 6])?, top),
    ])
}
