use indefinite_theta::arith::{format_rational, int, parse_rational, Rational};
use indefinite_theta::periodic::PeriodicFunction;
use indefinite_theta::theta::{theta_quadrant, theta_quadrant_with, theta_sector, ThetaOptions};
use indefinite_theta::{Exec, GroupAction, QSeries, QuadFieldElem, QuadForm};
use num_integer::Integer;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn field_elem(disc: Rational) -> impl Strategy<Value = QuadFieldElem> {
    (rational(), rational()).prop_map(move |(x, y)| QuadFieldElem::new(x, y, disc.clone()))
}

fn disc() -> impl Strategy<Value = Rational> {
    // squares included so the split algebra is exercised too
    prop_oneof![Just(int(5)), Just(Rational::new(21.into(), 4.into())), Just(int(8)), Just(Rational::new(9.into(), 4.into()))]
}

/// Integral forms with `p, r ∈ [−12, −1]`, `pr > 4`.
fn form() -> impl Strategy<Value = QuadForm> {
    (1i64..=12, 1i64..=12, 1i64..=2)
        .prop_filter("indefinite", |(p, r, _)| p * r > 4)
        .prop_map(|(p, r, k)| {
            let l = p.lcm(&r) * k;
            QuadForm::new(int(l / p), Rational::new(l.into(), 2.into()), int(l / r)).unwrap()
        })
}

/// A random integer combination of admissible orbit functions.
fn admissible(q: &QuadForm, n: u64, weights: &[i64]) -> PeriodicFunction {
    let analysis = GroupAction::from_form(q, n).unwrap().orbits();
    let mut f = PeriodicFunction::zero(n);
    for (o, &w) in analysis.admissible().zip(weights.iter().cycle()) {
        f = f.add(&o.sign_function(n).unwrap().scale(&int(w)));
    }
    f
}

fn series(precision: u64) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec((0..precision, -5i64..=5), 0..12)
        .prop_map(move |terms| QSeries::from_terms(precision, terms.into_iter().map(|(e, c)| (e, int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in disc().prop_flat_map(|d| (field_elem(d.clone()), field_elem(d.clone()), field_elem(d)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
        prop_assert_eq!(x.conj().conj(), x.clone());
        if x.norm() != int(0) {
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
        }
    }

    #[test]
    fn rational_text_roundtrip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn series_module_laws(s in series(30), t in series(30), k in -4i64..=4) {
        prop_assert_eq!(s.add(&t), t.add(&s));
        prop_assert!(s.sub(&s).is_zero());
        prop_assert_eq!(s.add(&t).scale(&int(k)), s.scale(&int(k)).add(&t.scale(&int(k))));
        prop_assert_eq!(s.neg().neg(), s.clone());
        prop_assert_eq!(s.truncate(10).precision(), 10);
    }

    #[test]
    fn orbits_partition_and_tests_agree(p in -15i64..=-1, r in -15i64..=-1, n in 2u64..=20) {
        let analysis = GroupAction::new(p, r, n).unwrap().orbits();
        let total: usize = analysis.orbits.iter().map(|o| o.len()).sum();
        prop_assert_eq!(total as u64, n * n);
        let ctx = &analysis.context;
        for o in &analysis.orbits {
            prop_assert_eq!(o.admissible, o.fixed_point_free);
            for &x in &o.points {
                prop_assert!(o.contains(ctx.a.apply_mod(x, n)));
                prop_assert!(o.contains(ctx.b.apply_mod(x, n)));
                if let Some(s) = o.sign_at(x) {
                    prop_assert_eq!(o.sign_at(ctx.a.apply_mod(x, n)), Some(-s));
                    prop_assert_eq!(o.sign_at(ctx.b.apply_mod(x, n)), Some(-s));
                }
            }
            if !o.symmetric {
                let neg = |(m, k): (u64, u64)| ((n - m) % n, (n - k) % n);
                prop_assert!(o.points.iter().all(|&x| !o.contains(neg(x))));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrant_equals_sector(q in form(), n in 3u64..=12, w in proptest::collection::vec(-2i64..=2, 1..4)) {
        let f = admissible(&q, n, &w);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(theta_quadrant(&q, &f, 50).unwrap(), theta_sector(&q, &f, 50).unwrap());
    }

    #[test]
    fn negation_flips_sign(q in form(), n in 3u64..=12, w in proptest::collection::vec(-2i64..=2, 1..4)) {
        let f = admissible(&q, n, &w);
        prop_assume!(!f.is_zero());
        let t = theta_quadrant(&q, &f, 80).unwrap();
        prop_assert_eq!(theta_quadrant(&q, &f.negate_arg(), 80).unwrap(), t.neg());
    }

    #[test]
    fn swap_matches_swapped_form(q in form(), n in 3u64..=12, w in proptest::collection::vec(-2i64..=2, 1..4)) {
        let f = admissible(&q, n, &w);
        prop_assume!(!f.is_zero());
        let t = theta_quadrant(&q, &f, 80).unwrap();
        prop_assert_eq!(theta_quadrant(&q.swapped(), &f.tau(), 80).unwrap(), t);
    }

    #[test]
    fn linear_in_f(q in form(), n in 3u64..=10, w1 in proptest::collection::vec(-2i64..=2, 1..3), w2 in proptest::collection::vec(-2i64..=2, 1..3), k in -3i64..=3) {
        let f = admissible(&q, n, &w1);
        prop_assume!(!f.is_zero());
        let g = admissible(&q, n, &w2);
        let lhs = theta_quadrant(&q, &f.add(&g.scale(&int(k))), 80).unwrap();
        let rhs = theta_quadrant(&q, &f, 80).unwrap().add(&theta_quadrant(&q, &g, 80).unwrap().scale(&int(k)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_agree(q in form(), n in 3u64..=12, w in proptest::collection::vec(-2i64..=2, 1..4)) {
        let f = admissible(&q, n, &w);
        prop_assume!(!f.is_zero());
        let seq = ThetaOptions { exec: Exec::Sequential, waive_admissibility: false };
        let par = ThetaOptions { exec: Exec::Parallel, waive_admissibility: false };
        prop_assert_eq!(
            theta_quadrant_with(&q, &f, 120, &seq).unwrap(),
            theta_quadrant_with(&q, &f, 120, &par).unwrap()
        );
    }

    #[test]
    fn admissible_means_line_sums_vanish(q in form(), n in 3u64..=10, w in proptest::collection::vec(-2i64..=2, 1..4)) {
        let f = admissible(&q, n, &w);
        prop_assume!(!f.is_zero());
        prop_assert!(f.is_admissible(&q));
        prop_assert!(f.check_line_sums(&q).holds);
    }
}
