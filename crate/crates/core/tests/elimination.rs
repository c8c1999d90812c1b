mod common;

use common::*;
use hyperwedge::elimination::*;
use hyperwedge::multivector::{random_vector, Multivector};
use hyperwedge::{GoodParams, IndexSet, QMultivector, Rational, WedgeError, Window};

fn params() -> GoodParams {
    GoodParams::new(2, 2, 2, 3).unwrap()
}

/// `Σ_k v_{k,1} ∧ ⋯ ∧ v_{k,m}` with random vectors: nilpotent of degree `terms + 1`.
fn sum_of_products(w: Window, m: usize, terms: usize, seed: u64) -> QMultivector {
    let mut r = rng(seed);
    let mut out = Multivector::zero(w, m);
    for _ in 0..terms {
        let factors: Vec<QMultivector> = (0..m).map(|_| random_vector(w, &mut r)).collect();
        out = out.add(&Multivector::wedge_all(&factors).unwrap()).unwrap();
    }
    out
}

fn round_trip(m: usize, l: usize, w: Window, seeds: std::ops::Range<u64>) -> usize {
    let mut recovered = 0;
    for seed in seeds {
        let v = sum_of_products(w, m, l, seed);
        assert!(v.wedge_power(l + 1).is_zero());
        let projected = good_projection(&v, GoodParams::new(m, l, 2, 3).unwrap()).unwrap();
        assert!(!projected.missing.is_empty());
        match reconstruct_all(m, l, &projected, 8).unwrap() {
            Reconstruction::Complete(back) => {
                assert_eq!(back, v, "seed {seed}");
                recovered += 1;
            }
            Reconstruction::Stuck { stuck, .. } => panic!("seed {seed} in {w}: stuck on {stuck:?}"),
        }
    }
    recovered
}

#[test]
fn rank_two_points_round_trip() {
    for w in [Window::new(4, 2), Window::new(5, 2), Window::new(6, 2)] {
        assert_eq!(round_trip(2, 2, w, 0..20), 20);
    }
}

#[test]
fn rank_three_points_round_trip() {
    assert_eq!(round_trip(2, 3, Window::new(6, 2), 100..120), 20);
}

#[test]
fn width_four_coordinate_from_a_twelve_index_carrier() {
    let w = Window::new(8, 4);
    let target = set(&[-8, -7, -6, -5]);
    let carrier = w.all_indices().difference(&set(&[-8, -7, -6, -5])).union(&target);
    assert_eq!(carrier.len(), 12);
    for seed in 0..3 {
        let v = sum_of_products(w, 4, 2, seed);
        assert!(v.wedge_power(3).is_zero());
        let mut assignment = CoordinateAssignment::complete(&v, params());
        assignment.forget(&target);
        let value = reconstruct_coordinate(4, 2, &assignment, &target, &carrier).unwrap();
        assert_eq!(value, v.coeff(&target));
    }
}

#[test]
fn carriers_agree() {
    let w = Window::new(6, 2);
    for seed in 0..10 {
        let v = sum_of_products(w, 2, 2, 50 + seed);
        for target in [set(&[-6, -5]), set(&[-6, -4]), set(&[-5, -4])] {
            let mut assignment = CoordinateAssignment::complete(&v, params());
            assignment.forget(&target);
            let values: Vec<Rational> = carriers(2, 2, &target, w)
                .iter()
                .filter_map(|c| match reconstruct_coordinate(2, 2, &assignment, &target, c) {
                    Ok(x) => Some(x),
                    Err(WedgeError::ZeroDenominator { .. }) => None,
                    Err(e) => panic!("{e}"),
                })
                .collect();
            assert!(values.len() >= 2, "{target}: only {} usable carriers", values.len());
            assert!(values.iter().all(|x| *x == v.coeff(&target)));
        }
    }
}

#[test]
fn carriers_start_with_the_target() {
    let w = Window::new(4, 2);
    let target = set(&[-4, -2]);
    assert!(carriers(2, 2, &target, w).is_empty());
    let target = set(&[-4, -3]);
    let all = carriers(2, 2, &target, w);
    assert_eq!(all, vec![w.all_indices()]);
    let w = Window::new(6, 2);
    for c in carriers(2, 2, &set(&[-6, -4]), w) {
        assert_eq!(c.prefix(2), set(&[-6, -4]));
        assert_eq!(c.len(), 6);
    }
}

#[test]
fn decomposable_point_has_zero_denominator() {
    let w = Window::new(4, 2);
    let v = random_dec(w, 2, 3);
    let target = set(&[-4, -3]);
    let mut assignment = CoordinateAssignment::complete(&v, params());
    assignment.forget(&target);
    let err = reconstruct_coordinate(2, 2, &assignment, &target, &w.all_indices()).unwrap_err();
    assert!(matches!(err, WedgeError::ZeroDenominator { .. }));
}

#[test]
fn missing_prerequisites_are_reported() {
    let w = Window::new(4, 2);
    let v = sum_of_products(w, 2, 2, 8);
    let target = set(&[-4, -3]);
    let mut assignment = CoordinateAssignment::complete(&v, params());
    assignment.forget(&target);
    assignment.forget(&set(&[-2, -1]));
    let err = reconstruct_coordinate(2, 2, &assignment, &target, &w.all_indices()).unwrap_err();
    assert!(matches!(err, WedgeError::MissingCoordinate(_)));
}

#[test]
fn projection_shape() {
    let w = Window::new(6, 2);
    let vac = e(w, &[1, 2]);
    let projected = good_projection(&vac, params()).unwrap();
    assert_eq!(projected.value(&set(&[1, 2])), Some(q(1)));
    for s in &projected.missing {
        assert!(projected.value(s).is_none());
        assert!(!is_good_coordinate(s, w, &params()).unwrap());
    }
    assert_eq!(projected.known.len() + projected.missing.len(), w.subsets(2).len());
    let deep: IndexSet = set(&[-6, -5]);
    assert!(projected.missing.contains(&deep));

    let complete = CoordinateAssignment::complete(&vac, params());
    assert_eq!(reconstruct_all(2, 2, &complete, 1).unwrap(), Reconstruction::Complete(vac));
}

#[test]
fn assignment_record_lists_missing() {
    let w = Window::new(4, 2);
    let v = sum_of_products(w, 2, 2, 1);
    let projected = good_projection(&v, params()).unwrap();
    let record = projected.record();
    let text = serde_json::to_string(&record).unwrap();
    assert!(text.contains("\"good_params\""));
    assert!(text.contains("\"missing\""));
    let back: AssignmentRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(back, record);
}
