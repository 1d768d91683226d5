mod common;

use common::TNORMS;
use fqfrs::connectives::check_d_convex;
use fqfrs::sets::FuzzyRelation;
use fqfrs::{build_relation, TNorm};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 1 => Just(1.0), 8 => 0.0..=1.0f64]
}

fn tnorm() -> impl Strategy<Value = TNorm> {
    (0..3usize).prop_map(|i| TNORMS[i].clone())
}

fn attributes() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (2..8usize, 1..4usize).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(prop::collection::vec(-5.0..5.0f64, m), n),
            prop::collection::vec(0.05..3.0f64, m),
        )
    })
}

proptest! {
    #[test]
    fn tnorm_axioms(t in tnorm(), x in unit(), y in unit(), z in unit(), w in unit()) {
        let v = t.apply(x, y);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(v, t.apply(y, x));
        prop_assert_eq!(t.apply(1.0, x), x);
        prop_assert!((t.apply(t.apply(x, y), z) - t.apply(x, t.apply(y, z))).abs() <= TOL);
        prop_assert!(v <= x.min(y));
        if x <= w {
            prop_assert!(t.apply(x, y) <= t.apply(w, y));
        }
    }

    #[test]
    fn implicator_axioms(t in tnorm(), x in unit(), y in unit(), w in unit()) {
        let i = t.residual().unwrap();
        prop_assert_eq!(i.apply(0.0, 0.0), 1.0);
        prop_assert_eq!(i.apply(0.0, 1.0), 1.0);
        prop_assert_eq!(i.apply(1.0, 1.0), 1.0);
        prop_assert_eq!(i.apply(1.0, 0.0), 0.0);
        prop_assert_eq!(i.apply(1.0, y), y);
        prop_assert_eq!(i.apply(x, y) == 1.0, x <= y);
        if x <= w {
            prop_assert!(i.apply(x, y) >= i.apply(w, y));
            prop_assert!(i.apply(y, x) <= i.apply(y, w));
        }
    }

    #[test]
    fn residuation(t in tnorm(), x in unit(), y in unit(), z in unit()) {
        let i = t.residual().unwrap();
        prop_assert!((i.apply(t.apply(x, y), z) - i.apply(x, i.apply(y, z))).abs() <= TOL);
        prop_assert_eq!(t.apply(x, z) <= y + TOL, z <= i.apply(x, y) + TOL);
    }

    #[test]
    fn residual_of_d_convex_tnorm_is_concave(
        prod in any::<bool>(), a in unit(), x in unit(), y in unit(), w in unit()
    ) {
        let t = if prod { TNorm::Product } else { TNorm::Lukasiewicz };
        let i = t.residual().unwrap();
        let lhs = i.apply(a, w * x + (1.0 - w) * y);
        let rhs = w * i.apply(a, x) + (1.0 - w) * i.apply(a, y);
        prop_assert!(lhs >= rhs - TOL);
    }

    #[test]
    fn relation_is_lukasiewicz_equivalence((rows, sigmas) in attributes()) {
        let r = build_relation(&rows, &sigmas).unwrap();
        let n = r.size();
        let t = TNorm::Lukasiewicz;
        for x in 0..n {
            prop_assert_eq!(r.get(x, x), 1.0);
            prop_assert_eq!(r.foreset(x).unwrap().get(x), 1.0);
            for y in 0..n {
                prop_assert!((0.0..=1.0).contains(&r.get(x, y)));
                prop_assert_eq!(r.get(x, y), r.get(y, x));
                let factor = (0..n).map(|z| t.apply(r.get(x, z), r.get(z, y))).fold(0.0, f64::max);
                prop_assert!((factor - r.get(x, y)).abs() <= TOL);
            }
        }
        prop_assert!(r.validate_t_equivalence(&t, TOL).is_equivalence());
    }

    #[test]
    fn closure_gives_equivalence_for_every_tnorm((rows, sigmas) in attributes(), t in tnorm()) {
        let r = build_relation(&rows, &sigmas).unwrap().transitive_closure(&t);
        prop_assert!(r.validate_t_equivalence(&t, TOL).is_equivalence());
    }
}

#[test]
fn d_convexity_of_named_tnorms() {
    assert!(check_d_convex(&TNorm::Lukasiewicz, 0.05));
    assert!(check_d_convex(&TNorm::Product, 0.05));
    assert!(!check_d_convex(&TNorm::Minimum, 0.05));
}

#[test]
fn broken_transitivity_triple() {
    let r = FuzzyRelation::from_rows(&[
        vec![1.0, 1.0, 0.0],
        vec![1.0, 1.0, 1.0],
        vec![0.0, 1.0, 1.0],
    ])
    .unwrap();
    assert!(!r.is_t_transitive(&TNorm::Lukasiewicz, 1e-9));
}
