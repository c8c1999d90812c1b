#![allow(dead_code)]

use hyperwedge::multivector::{random_decomposable, random_multivector};
use hyperwedge::{IndexSet, QMultivector, Rational, Scalar, Window};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(x: i64) -> Rational {
    Rational::from_int(x)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(x: &[i32]) -> IndexSet {
    IndexSet::new(x).unwrap()
}

pub fn e(w: Window, idx: &[i32]) -> QMultivector {
    QMultivector::basis(w, idx).unwrap()
}

pub fn sum(parts: &[QMultivector]) -> QMultivector {
    parts[1..].iter().fold(parts[0].clone(), |acc, x| acc.add(x).unwrap())
}

pub fn random_mv(w: Window, grade: usize, seed: u64) -> QMultivector {
    random_multivector(w, grade, 0.6, &mut rng(seed))
}

pub fn random_dec(w: Window, grade: usize, seed: u64) -> QMultivector {
    random_decomposable(w, grade, &mut rng(seed))
}

/// The trivector `(e_{-4}e_{-3} + e_{-2}e_{-1} + e_1e_2) ∧ e_3` in window (4,3).
pub fn trivector_t() -> QMultivector {
    let w = Window::new(4, 3);
    sum(&[e(w, &[-4, -3]), e(w, &[-2, -1]), e(w, &[1, 2])]).wedge(&e(w, &[3])).unwrap()
}

/// `e_{-4}e_{-3}e_{-2} + e_{-1}e_1e_2` in window (4,3).
pub fn trivector_u() -> QMultivector {
    let w = Window::new(4, 3);
    sum(&[e(w, &[-4, -3, -2]), e(w, &[-1, 1, 2])])
}

/// The nilpotent 4-vector in window (5,4).
pub fn omega_5_4() -> QMultivector {
    let w = Window::new(5, 4);
    sum(&[
        e(w, &[-5, -4, -3, -2]),
        e(w, &[-1, 1, 2, 3]),
        e(w, &[-5, -4, -3, -1]),
        e(w, &[-2, 1, 2, 3]),
        e(w, &[-5, -2, -1, 4]),
    ])
}
