//! Good-coordinate projection and rational reconstruction of the rest.
//!
//! On the locus `hpf^{(m,l+1)} = 0` with `hpf^{(m,l)} ≠ 0`, a coordinate `x_I`
//! that is an initial block of a carrier `𝓘` satisfies
//! `0 = hpf^{(m,l+1)}_𝓘 = x_I · D + Q`, so `x_I = -Q / D`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WedgeError};
use crate::format::TermRecord;
use crate::hpf::{hpf_polynomial, FormSpec};
use crate::index::{combinations, is_good, young_diagram, CofiniteSet, GoodParams, IndexSet, Partition, Window};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Known coordinates of a point (zeros included) and the ones still missing.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateAssignment<S> {
    pub window: Window,
    pub grade: usize,
    pub params: GoodParams,
    pub known: BTreeMap<IndexSet, S>,
    pub missing: Vec<IndexSet>,
}

impl<S: Scalar> CoordinateAssignment<S> {
    /// Every coordinate known.
    pub fn complete(v: &Multivector<S>, params: GoodParams) -> Self {
        let known = v.window().subsets(v.grade()).into_iter().map(|s| (s.clone(), v.coeff(&s))).collect();
        CoordinateAssignment { window: v.window(), grade: v.grade(), params, known, missing: Vec::new() }
    }

    pub fn value(&self, set: &IndexSet) -> Option<S> {
        self.known.get(set).cloned()
    }

    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    /// Forgets `set`, moving it to the missing list.
    pub fn forget(&mut self, set: &IndexSet) {
        if self.known.remove(set).is_some() {
            self.missing.push(set.clone());
            self.missing.sort();
        }
    }

    pub fn to_multivector(&self) -> Result<Multivector<S>> {
        if let Some(set) = self.missing.first() {
            return Err(WedgeError::MissingCoordinate(set.clone()));
        }
        Multivector::from_terms(self.window, self.grade, self.known.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn record(&self) -> AssignmentRecord {
        AssignmentRecord {
            window: self.window,
            grade: self.grade,
            good_params: self.params,
            terms: self.known.iter().map(|(k, c)| TermRecord { indices: k.clone(), coeff: c.to_string() }).collect(),
            missing: self.missing.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub window: Window,
    pub grade: usize,
    pub good_params: GoodParams,
    pub terms: Vec<TermRecord>,
    pub missing: Vec<IndexSet>,
}

/// Whether the coordinate `I` is good once extended by `{p+1, p+2, …}`.
pub fn is_good_coordinate(set: &IndexSet, window: Window, params: &GoodParams) -> Result<bool> {
    is_good(&CofiniteSet::from_window_coordinate(set, window), params)
}

/// Keeps exactly the good coordinates of `v`.
pub fn good_projection<S: Scalar>(v: &Multivector<S>, params: GoodParams) -> Result<CoordinateAssignment<S>> {
    let mut out = CoordinateAssignment { window: v.window(), grade: v.grade(), params, known: BTreeMap::new(), missing: Vec::new() };
    for set in v.window().subsets(v.grade()) {
        if is_good_coordinate(&set, v.window(), &params)? {
            let c = v.coeff(&set);
            out.known.insert(set, c);
        } else {
            out.missing.push(set);
        }
    }
    out.missing.sort();
    Ok(out)
}

/// `x_I = -Q / D` from `hpf^{(m,l+1)}_𝓘 = x_I · D + Q`, evaluated on the known coordinates.
pub fn reconstruct_coordinate<S: Scalar>(m: usize, l: usize, assignment: &CoordinateAssignment<S>, target: &IndexSet, carrier: &IndexSet) -> Result<S> {
    if target.len() != m || carrier.len() != m * (l + 1) || carrier.prefix(m) != *target {
        return Err(WedgeError::NotInitial { target: target.clone(), carrier: carrier.clone() });
    }
    let full = hpf_polynomial::<S>(&FormSpec::new(m, l + 1, carrier.clone())?, assignment.window)?;
    let (d, q) = full.split_linear(target)?;
    let lookup = |set: &IndexSet| assignment.value(set);
    let denominator = d.eval_with(lookup)?;
    if denominator.is_zero() {
        return Err(WedgeError::ZeroDenominator { target: target.clone(), carrier: carrier.clone() });
    }
    let numerator = q.eval_with(lookup)?;
    Ok(-numerator / denominator)
}

/// Carriers for `target`: `target ∪ S` with `S` an `ml`-set of window indices
/// above `max target`, in lexicographic order.
pub fn carriers(m: usize, l: usize, target: &IndexSet, window: Window) -> Vec<IndexSet> {
    let top = target.last().unwrap_or(i32::MIN);
    let above: Vec<i32> = window.elements().into_iter().filter(|&i| i > top).collect();
    combinations(&above, m * l)
        .into_iter()
        .map(|s| target.union(&IndexSet::from_sorted_unchecked(s)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reconstruction<S> {
    Complete(Multivector<S>),
    /// No carrier worked for these coordinates; `partial` holds everything found.
    Stuck { partial: CoordinateAssignment<S>, stuck: Vec<IndexSet> },
}

impl<S> Reconstruction<S> {
    pub fn is_complete(&self) -> bool {
        matches!(self, Reconstruction::Complete(_))
    }
}

/// Fills in missing coordinates in Young-diagram order, sweeping until nothing
/// changes or `max_passes` sweeps have run. Needs `grade = window.p`.
pub fn reconstruct_all<S: Scalar>(m: usize, l: usize, projected: &CoordinateAssignment<S>, max_passes: usize) -> Result<Reconstruction<S>> {
    let window = projected.window;
    if projected.grade != window.p {
        return Err(WedgeError::GradeMismatch { expected: window.p, found: projected.grade });
    }
    let mut state = projected.clone();
    let mut keyed: Vec<(Partition, IndexSet)> =
        state.missing.iter().map(|s| Ok((young_diagram(s, window)?, s.clone()))).collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| a.0.parts().cmp(b.0.parts())).then_with(|| a.1.cmp(&b.1)));
    let mut pending: Vec<IndexSet> = keyed.into_iter().map(|(_, s)| s).collect();
    for _ in 0..max_passes {
        if pending.is_empty() {
            break;
        }
        let before = pending.len();
        let mut still = Vec::new();
        for target in pending {
            let found = carriers(m, l, &target, window).into_iter().find_map(|c| match reconstruct_coordinate(m, l, &state, &target, &c) {
                Ok(value) => Some(Ok(value)),
                Err(WedgeError::ZeroDenominator { .. } | WedgeError::MissingCoordinate(_)) => None,
                Err(e) => Some(Err(e)),
            });
            match found {
                Some(value) => {
                    state.known.insert(target.clone(), value?);
                    state.missing.retain(|s| *s != target);
                }
                None => still.push(target),
            }
        }
        pending = still;
        if pending.len() == before {
            break;
        }
    }
    if pending.is_empty() {
        Ok(Reconstruction::Complete(state.to_multivector()?))
    } else {
        Ok(Reconstruction::Stuck { partial: state, stuck: pending })
    }
}
