mod common;

use common::*;
use hyperwedge::multivector::{complement_star, hodge_star, negate_indices};
use hyperwedge::variety::in_grassmannian;
use hyperwedge::{QMultivector, Window};
use proptest::prelude::*;

/// `σ` with `★★e_I = σ e_I`, read off one basis vector.
fn double_star_sign(w: Window, g: usize) -> hyperwedge::Rational {
    let basis = QMultivector::from_terms(w, g, [(w.subsets(g)[0].clone(), q(1))]).unwrap();
    let back = hodge_star(&hodge_star(&basis));
    back.coeff(&w.subsets(g)[0])
}

#[test]
fn printed_star_of_the_trivector() {
    let w = Window::new(4, 3);
    let expected = sum(&[e(w, &[-2, -1, 1, 2]), e(w, &[-4, -3, 1, 2]), e(w, &[-4, -3, -2, -1])]);
    let t = trivector_t();
    assert_eq!(complement_star(&t), expected);
    let star = hodge_star(&t);
    assert_eq!(star.window(), Window::new(3, 4));
    assert_eq!(star, negate_indices(&expected));
}

#[test]
fn double_star_sign_is_constant() {
    for n in 0..=3 {
        for p in 0..=3 {
            let w = Window::new(n, p);
            for g in 0..=w.dim() {
                let sigma = double_star_sign(w, g);
                assert!(sigma == q(1) || sigma == q(-1));
                for seed in 0..100 {
                    let v = random_mv(w, g, seed);
                    assert_eq!(hodge_star(&hodge_star(&v)), v.scale(&sigma), "window {w}, grade {g}");
                }
            }
        }
    }
}

#[test]
fn star_of_top_basis_wedge_is_basis_wedge() {
    for p in 1..=4 {
        let w = Window::new(2, p);
        let top: Vec<i32> = (1..=p as i32).collect();
        let s = hodge_star(&e(w, &top));
        assert_eq!(s.len(), 1);
        assert!(in_grassmannian(&s).unwrap().member);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn star_preserves_decomposables(n in 1usize..=3, p in 1usize..=3, seed in any::<u64>()) {
        let w = Window::new(n, p);
        let g = 1 + (seed as usize) % w.dim();
        let v = random_dec(w, g, seed);
        prop_assert!(in_grassmannian(&hodge_star(&v)).unwrap().member);
    }

    #[test]
    fn star_preserves_grassmannian_membership(n in 1usize..=3, p in 1usize..=3, seed in any::<u64>()) {
        let w = Window::new(n, p);
        let g = (seed as usize) % (w.dim() + 1);
        let v = random_mv(w, g, seed);
        prop_assert_eq!(in_grassmannian(&v).unwrap().member, in_grassmannian(&hodge_star(&v)).unwrap().member);
    }
}
