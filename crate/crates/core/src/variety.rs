//! Membership tests for Grassmannian, Pfaffian and hyper-Pfaffian varieties.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WedgeError};
use crate::hpf::{contraction_sequences, full_forms, hpf_eval, plucker_eval, polar_groups, trivial_reason};
use crate::index::{IndexSet, Partition, Window};
use crate::multivector::{contract, hodge_star, random_multivector, transition, Covector, Multivector, Transition};
use crate::scalar::Scalar;

/// Covector entries for randomized tests are drawn from `[-2^19, 2^19)`.
pub const COVECTOR_HALF_RANGE: i64 = 1 << 19;
pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietySpec {
    Grassmannian,
    /// `Pf^{(l)}`: 2-forms with `v^{∧l} = 0`.
    Pf { l: usize },
    /// `HPf^{(m,l)}`, at grade `m` or as the component at grade `p`.
    Hpf { m: usize, l: usize },
    /// `HPf^{(r,s),★}`.
    DualHpf { r: usize, s: usize },
    /// Component-wise intersection of `HPf^{(m,l)}` and `HPf^{(r,s),★}`.
    TwoSided { m: usize, l: usize, r: usize, s: usize },
    /// Randomized contraction test for the maximal component of `HPf^{(m,l)}`.
    Contraction { m: usize, l: usize },
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Grassmannian => write!(f, "Gr"),
            VarietySpec::Pf { l } => write!(f, "Pf({l})"),
            VarietySpec::Hpf { m, l } => write!(f, "HPf({m},{l})"),
            VarietySpec::DualHpf { r, s } => write!(f, "HPf*({r},{s})"),
            VarietySpec::TwoSided { m, l, r, s } => write!(f, "HPf({m},{l})*({r},{s})"),
            VarietySpec::Contraction { m, l } => write!(f, "max-HPf({m},{l})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An equation that does not vanish.
    ViolatedForm { label: String, value: String },
    /// A coordinate of `v^{∧power}` that survives.
    NonzeroPower { power: usize, grade: usize, coordinate: IndexSet, coeff: String },
    /// Every equation (or the wedge power) vanishes exactly.
    Vanishes { equations: usize, power: Option<usize> },
    /// Randomized test passed every trial.
    TrialsPassed { trials: usize, half_range: i64 },
    /// Contraction by these covectors gives a non-member.
    Contraction { covectors: Vec<Vec<(i32, String)>>, inner: Box<Certificate> },
    Trivial { reason: String },
    Both { primal: Box<Certificate>, dual: Box<Certificate> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    pub variety: String,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl MembershipReport {
    fn exact(member: bool, variety: impl fmt::Display, certificate: Certificate) -> Self {
        MembershipReport { member, variety: variety.to_string(), certificate, seed: None, trials: None }
    }
}

fn expect_grade<S: Scalar>(v: &Multivector<S>, grade: usize) -> Result<()> {
    if v.grade() != grade {
        return Err(WedgeError::GradeMismatch { expected: grade, found: v.grade() });
    }
    Ok(())
}

/// `Ok(None)` if `v^{∧l} = 0`, else a surviving coordinate.
fn power_certificate<S: Scalar>(v: &Multivector<S>, l: usize) -> Option<Certificate> {
    let power = v.wedge_power(l);
    power.terms().iter().next().map(|(set, c)| Certificate::NonzeroPower {
        power: l,
        grade: v.grade(),
        coordinate: set.clone(),
        coeff: c.to_string(),
    })
}

/// Least `l` with `v^{∧l} = 0`.
pub fn nilpotency_degree<S: Scalar>(v: &Multivector<S>) -> Result<usize> {
    if v.grade() == 0 {
        return if v.is_zero() { Ok(1) } else { Err(WedgeError::NotNilpotent) };
    }
    let mut power = Multivector::scalar(v.window(), S::one());
    let mut l = 0;
    while !power.is_zero() {
        power = power.wedge(v)?;
        l += 1;
    }
    Ok(l)
}

/// `v ∈ HPf^{(m,l)}` at grade `m`: `v^{∧l} = 0`, checked against every full form.
pub fn in_hpf<S: Scalar>(m: usize, l: usize, v: &Multivector<S>) -> Result<MembershipReport> {
    expect_grade(v, m)?;
    let variety = VarietySpec::Hpf { m, l };
    let by_power = power_certificate(v, l);
    let forms = full_forms(m, l, v.window())?;
    let mut violated = None;
    for spec in &forms {
        let value = hpf_eval(spec, v)?;
        if !value.is_zero() {
            violated = Some(Certificate::ViolatedForm { label: spec.label(), value: value.to_string() });
            break;
        }
    }
    match (by_power, violated) {
        (None, None) => Ok(MembershipReport::exact(true, variety, Certificate::Vanishes { equations: forms.len(), power: Some(l) })),
        (Some(_), Some(form)) => Ok(MembershipReport::exact(false, variety, form)),
        (Some(power), None) if m % 2 == 1 => Ok(MembershipReport::exact(false, variety, power)),
        _ => Err(WedgeError::Inconsistent(format!("wedge power and forms disagree for {variety}"))),
    }
}

/// `v ∈ Pf^{(l)}`: rank of the 2-form below `l`.
pub fn in_pf<S: Scalar>(l: usize, v: &Multivector<S>) -> Result<MembershipReport> {
    expect_grade(v, 2)?;
    let mut report = in_hpf(2, l, v)?;
    report.variety = VarietySpec::Pf { l }.to_string();
    Ok(report)
}

/// Decomposability, by every Plücker relation of the window.
pub fn in_grassmannian<S: Scalar>(v: &Multivector<S>) -> Result<MembershipReport> {
    let (w, g) = (v.window(), v.grade());
    let variety = VarietySpec::Grassmannian;
    if g == 0 || g >= w.dim() {
        return Ok(MembershipReport::exact(true, variety, Certificate::Vanishes { equations: 0, power: None }));
    }
    let is = w.subsets(g - 1);
    let js = w.subsets(g + 1);
    let mut verdict = None;
    'outer: for i in &is {
        for j in &js {
            let value = plucker_eval(i, j, v);
            if !value.is_zero() {
                verdict = Some(Certificate::ViolatedForm { label: format!("plucker{i}|{j}"), value: value.to_string() });
                break 'outer;
            }
        }
    }
    if g == 2 {
        let rank_one = nilpotency_degree(v)? <= 2;
        if rank_one != verdict.is_none() {
            return Err(WedgeError::Inconsistent("Plücker relations disagree with the rank of the 2-form".into()));
        }
    }
    Ok(match verdict {
        None => MembershipReport::exact(true, variety, Certificate::Vanishes { equations: is.len() * js.len(), power: None }),
        Some(c) => MembershipReport::exact(false, variety, c),
    })
}

/// The component of `HPf^{(m,l)}` in `∧^p V_{n,p}`: every coefficient of
/// `(f_d ⌟ ⋯ ⌟ f_1 ⌟ v)^{∧l}`, `d = p - m`, must vanish identically in the covectors.
pub fn in_hpf_component<S: Scalar>(m: usize, l: usize, v: &Multivector<S>) -> Result<MembershipReport> {
    let w = v.window();
    expect_grade(v, w.p)?;
    let variety = VarietySpec::Hpf { m, l };
    if let Some(reason) = trivial_reason(m, l, w) {
        return Ok(MembershipReport::exact(true, variety, Certificate::Trivial { reason: reason.to_string() }));
    }
    let d = w.p - m;
    if d == 0 {
        let forms = full_forms(m, l, w)?;
        for spec in &forms {
            let value = hpf_eval(spec, v)?;
            if !value.is_zero() {
                return Ok(MembershipReport::exact(false, variety, Certificate::ViolatedForm { label: spec.label(), value: value.to_string() }));
            }
        }
        return Ok(MembershipReport::exact(true, variety, Certificate::Vanishes { equations: forms.len(), power: None }));
    }
    let seqs = contraction_sequences(w, d);
    let contracted = seqs
        .iter()
        .map(|seq| seq.iter().try_fold(v.clone(), |acc, &k| contract(&Covector::basis(w, k)?, &acc)))
        .collect::<Result<Vec<_>>>()?;
    let groups = polar_groups(&seqs, l);
    for group in &groups {
        let mut total = Multivector::zero(w, m * l);
        for (ms, mult) in &group.terms {
            if ms.iter().any(|&i| contracted[i].is_zero()) {
                continue;
            }
            let factors: Vec<_> = ms.iter().map(|&i| contracted[i].clone()).collect();
            let product = Multivector::wedge_all(&factors)?;
            total = total.add(&product.scale(&S::from_u64(*mult).expect("small multiplicity")))?;
        }
        if let Some((a, c)) = total.terms().iter().next() {
            let parts: Vec<String> = group.terms[0]
                .0
                .iter()
                .map(|&i| seqs[i].iter().map(i32::to_string).collect::<Vec<_>>().join(","))
                .collect();
            let label = format!("hpf({m},{l})@{a}|({})", parts.join(";"));
            return Ok(MembershipReport::exact(false, variety, Certificate::ViolatedForm { label, value: c.to_string() }));
        }
    }
    Ok(MembershipReport::exact(true, variety, Certificate::Vanishes { equations: groups.len(), power: None }))
}

/// `v ∈ HPf^{(r,s),★}`: `v` of grade `dim - r` and `(★v)^{∧s} = 0`.
pub fn in_dual_hpf<S: Scalar>(r: usize, s: usize, v: &Multivector<S>) -> Result<MembershipReport> {
    let dim = v.window().dim();
    if r > dim {
        return Err(WedgeError::Precondition(format!("r = {r} exceeds the dimension {dim}")));
    }
    expect_grade(v, dim - r)?;
    let variety = VarietySpec::DualHpf { r, s };
    Ok(match power_certificate(&hodge_star(v), s) {
        None => MembershipReport::exact(true, variety, Certificate::Vanishes { equations: 0, power: Some(s) }),
        Some(c) => MembershipReport::exact(false, variety, c),
    })
}

/// Both components: `v` in the `HPf^{(m,l)}` component and `★v` in the
/// `HPf^{(r,s)}` component of the dual window.
pub fn in_two_sided<S: Scalar>(m: usize, l: usize, r: usize, s: usize, v: &Multivector<S>) -> Result<MembershipReport> {
    let primal = in_hpf_component(m, l, v)?;
    let dual = in_hpf_component(r, s, &hodge_star(v))?;
    let variety = VarietySpec::TwoSided { m, l, r, s };
    Ok(MembershipReport::exact(
        primal.member && dual.member,
        variety,
        Certificate::Both { primal: Box::new(primal.certificate), dual: Box::new(dual.certificate) },
    ))
}

fn covector_record<S: Scalar>(f: &Covector<S>) -> Vec<(i32, String)> {
    f.coeffs().iter().map(|(i, c)| (*i, c.to_string())).collect()
}

/// Contracts `v` (grade `p ≥ m`) by `p - m` random covectors and checks the
/// result is nilpotent of degree at most `l`, `trials` times.
///
/// A failure is an exact refutation; passing is probabilistic.
pub fn contraction_membership<S: Scalar>(m: usize, l: usize, v: &Multivector<S>, trials: usize, seed: u64) -> Result<MembershipReport> {
    let p = v.grade();
    if p < m {
        return Err(WedgeError::Precondition(format!("grade {p} is below the width {m}")));
    }
    let variety = VarietySpec::Contraction { m, l };
    if p == m {
        let mut report = MembershipReport::exact(true, variety, Certificate::Vanishes { equations: 0, power: Some(l) });
        if let Some(c) = power_certificate(v, l) {
            report.member = false;
            report.certificate = c;
        }
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut w = v.clone();
        let mut used = Vec::with_capacity(p - m);
        for _ in m..p {
            let f = Covector::random(v.window(), COVECTOR_HALF_RANGE, &mut rng);
            w = contract(&f, &w)?;
            used.push(f);
        }
        if let Some(inner) = power_certificate(&w, l) {
            let certificate = Certificate::Contraction { covectors: used.iter().map(covector_record).collect(), inner: Box::new(inner) };
            return Ok(MembershipReport { member: false, variety: variety.to_string(), certificate, seed: Some(seed), trials: Some(trials) });
        }
    }
    Ok(MembershipReport {
        member: true,
        variety: variety.to_string(),
        certificate: Certificate::TrialsPassed { trials, half_range: COVECTOR_HALF_RANGE },
        seed: Some(seed),
        trials: Some(trials),
    })
}

/// Exact test that `(f ⌟ v)^{∧3} = 0` for every covector `f`, `v` a trivector.
///
/// With `w_i = e^i ⌟ v` the cube is `Σ f_i f_j f_k w_i ∧ w_j ∧ w_k`, so it
/// vanishes identically iff every `w_i ∧ w_j ∧ w_k` does.
pub fn pf_contraction_identically_zero<S: Scalar>(v: &Multivector<S>) -> Result<bool> {
    Ok(pf_contraction_witness(v)?.is_none())
}

/// A covector `f` with `(f ⌟ v)^{∧3} ≠ 0`, if one exists.
pub fn pf_contraction_witness<S: Scalar>(v: &Multivector<S>) -> Result<Option<Covector<S>>> {
    expect_grade(v, 3)?;
    let w = v.window();
    let idx = w.elements();
    let parts: Vec<Multivector<S>> = idx.iter().map(|&i| contract(&Covector::basis(w, i)?, v)).collect::<Result<_>>()?;
    for a in 0..idx.len() {
        for b in a..idx.len() {
            let ab = parts[a].wedge(&parts[b])?;
            if ab.is_zero() {
                continue;
            }
            for c in b..idx.len() {
                if ab.wedge(&parts[c])?.is_zero() {
                    continue;
                }
                // a nonzero cubic in three variables cannot vanish on a 5x5x5 grid
                let mut chosen = vec![idx[a], idx[b], idx[c]];
                chosen.dedup();
                return grid_witness(v, &chosen).map(Some);
            }
        }
    }
    Ok(None)
}

fn grid_witness<S: Scalar>(v: &Multivector<S>, support: &[i32]) -> Result<Covector<S>> {
    let k = support.len();
    let total = 5usize.pow(k as u32);
    // try the sparse 0/1 combinations first, then the full grid
    let mut order: Vec<usize> = (0..total).collect();
    let digits = |mut code: usize| -> Vec<i64> {
        (0..k)
            .map(|_| {
                let d = (code % 5) as i64;
                code /= 5;
                [0, 1, -1, 2, -2][d as usize]
            })
            .collect()
    };
    order.sort_by_key(|&code| digits(code).iter().map(|x| x.unsigned_abs()).sum::<u64>());
    for code in order {
        let f = Covector::new(v.window(), support.iter().zip(digits(code)).map(|(&i, x)| (i, S::from_int(x))))?;
        if f.coeffs().is_empty() {
            continue;
        }
        if !contract(&f, v)?.wedge_power(3).is_zero() {
            return Ok(f);
        }
    }
    Err(WedgeError::Inconsistent("nonzero cubic vanished on the whole grid".into()))
}

/// The lift `a ↦ a ∧ e_{p+1}`; it squares to zero and `j†` undoes it.
pub fn lift_through_j<S: Scalar>(a: &Multivector<S>) -> Result<Multivector<S>> {
    transition(Transition::J, a)
}

/// Shape `(π, k)`: sums of `k` products of elements of `∧^{π_1}, ∧^{π_2}, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpec {
    pub pi: Partition,
    pub k: usize,
}

impl TypeSpec {
    pub fn new(pi: Partition, k: usize) -> Result<Self> {
        if k == 0 || pi.is_empty() {
            return Err(WedgeError::Precondition("type needs a nonempty partition and k >= 1".into()));
        }
        Ok(TypeSpec { pi, k })
    }

    pub fn grade(&self) -> usize {
        self.pi.size()
    }
}

fn sample_type<S: Scalar, R: Rng + ?Sized>(ts: &TypeSpec, window: Window, rng: &mut R) -> Result<Multivector<S>> {
    if ts.grade() > window.dim() {
        return Err(WedgeError::Precondition(format!("grade {} does not fit window {window}", ts.grade())));
    }
    let mut out = Multivector::zero(window, ts.grade());
    for _ in 0..ts.k {
        let mut term = Multivector::scalar(window, S::one());
        for &part in ts.pi.parts() {
            let factor = random_multivector(window, part, 0.5, rng);
            term = term.wedge(&factor)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// A random element of type `(π, k)`, deterministic in `seed`.
pub fn type_witness<S: Scalar>(ts: &TypeSpec, window: Window, seed: u64) -> Result<Multivector<S>> {
    sample_type(ts, window, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Checks `β^{∧(k+1)} = 0` on `samples` witnesses of a type with an odd part.
pub fn odd_partition_check<S: Scalar>(ts: &TypeSpec, samples: usize, window: Window, seed: u64) -> Result<bool> {
    if !ts.pi.has_odd_part() {
        return Err(WedgeError::Precondition(format!("partition {} has no odd part", ts.pi)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let beta: Multivector<S> = sample_type(ts, window, &mut rng)?;
        if !beta.wedge_power(ts.k + 1).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dispatches on `spec`. Hyper-Pfaffian specs use the grade-`m` test when the
/// grade is `m`, and the component test when it equals the window's `p`.
pub fn member<S: Scalar>(spec: VarietySpec, v: &Multivector<S>, trials: usize, seed: u64) -> Result<MembershipReport> {
    match spec {
        VarietySpec::Grassmannian => in_grassmannian(v),
        VarietySpec::Pf { l } => in_pf(l, v),
        VarietySpec::Hpf { m, l } if v.grade() == m => in_hpf(m, l, v),
        VarietySpec::Hpf { m, l } => in_hpf_component(m, l, v),
        VarietySpec::DualHpf { r, s } => in_dual_hpf(r, s, v),
        VarietySpec::TwoSided { m, l, r, s } => in_two_sided(m, l, r, s, v),
        VarietySpec::Contraction { m, l } => contraction_membership(m, l, v, trials, seed),
    }
}
