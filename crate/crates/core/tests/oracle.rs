//! Independent oracles: a naive double loop for the quadrant sum and a brute
//! force over a box for the cone sums, both written without the engine's
//! enumeration code.

use std::collections::BTreeMap;

use indefinite_theta::arith::{int, Rational};
use indefinite_theta::catalog::chi3;
use indefinite_theta::hecke::{qf_to_hecke, theta_hecke, HeckeCoset, QuadLattice};
use indefinite_theta::theta::{theta_quadrant, theta_sector};
use indefinite_theta::{GroupAction, PeriodicFunction, QSeries, QuadForm};

fn form(a: &str, b: &str, c: &str) -> QuadForm {
    QuadForm::parse(a, b, c).unwrap()
}

/// `Σ_{0≤m,n≤R} f(m,n) q^Q − Σ_{1≤m,n≤R} f(−m,−n) q^Q`, with `R` large
/// enough that every omitted term has exponent ≥ `precision`.
fn naive_quadrant(q: &QuadForm, f: &PeriodicFunction, precision: u64) -> BTreeMap<u64, Rational> {
    let bound = int(precision as i64);
    let mut radius = 0;
    while q.eval(radius, 0) < bound || q.eval(0, radius) < bound {
        radius += 1;
    }
    let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
    for m in 0..=radius {
        for n in 0..=radius {
            let e = q.eval(m, n);
            if e >= bound {
                continue;
            }
            let e: u64 = e.to_integer().try_into().unwrap();
            *out.entry(e).or_default() += f.get(m, n);
            if m > 0 && n > 0 {
                *out.entry(e).or_default() -= f.get(-m, -n);
            }
        }
    }
    out.retain(|_, v| *v != int(0));
    out
}

fn as_map(s: &QSeries) -> BTreeMap<u64, Rational> {
    s.terms().map(|(e, c)| (e, c.clone())).collect()
}

fn orbit_functions(q: &QuadForm, n: u64) -> Vec<PeriodicFunction> {
    GroupAction::from_form(q, n)
        .unwrap()
        .orbits()
        .admissible()
        .map(|o| o.sign_function(n).unwrap())
        .collect()
}

#[test]
fn quadrant_matches_naive_double_loop() {
    let cases = [
        (form("1", "5/2", "1"), 3),
        (form("1", "7/2", "7"), 3),
        (form("1", "3", "1"), 7),
        (form("4", "18", "9"), 5),
        (form("1", "4", "4"), 5),
        (form("2", "7", "7"), 5),
        (form("1", "2", "2"), 4),
        (form("3", "9", "2"), 11),
    ];
    for (q, n) in cases {
        for f in orbit_functions(&q, n) {
            let engine = theta_quadrant(&q, &f, 150).unwrap();
            assert_eq!(as_map(&engine), naive_quadrant(&q, &f, 150), "{q} N={n}");
        }
    }
}

#[test]
fn sector_matches_naive_double_loop() {
    for (q, n) in [(form("1", "5/2", "1"), 3), (form("1", "3", "1"), 7), (form("2", "7", "7"), 5)] {
        for f in orbit_functions(&q, n) {
            let sector = theta_sector(&q, &f, 120).unwrap();
            assert_eq!(as_map(&sector), naive_quadrant(&q, &f, 120), "{q} N={n}");
        }
    }
}

/// Expansion of n3 computed by hand: Q(1,0) = Q(0,1) = 1, Q(2,0) = Q(0,2)
/// = 4, Q(1,1) = 7, with χ₃ values 1, 1, −1, −1, −1.
#[test]
fn n3_hand_expansion() {
    let q = form("1", "5/2", "1");
    let got = naive_quadrant(&q, &chi3(1), 9);
    let want: BTreeMap<u64, Rational> = [(1, int(2)), (4, int(-2)), (7, int(-2))].into_iter().collect();
    assert_eq!(got, want);
}

/// The sign of `f₂` in case (iii): `(2,0) = BA·(0,1)`, so `f₂(2,0) = f₂(0,1)`
/// and the initial terms are `q^c + q^{4a}`.
#[test]
fn case_iii_second_orbit_signs() {
    for (a, b, c) in [("7", "28", "8"), ("14", "21", "6"), ("1", "4", "4")] {
        let q = form(a, b, c);
        assert_eq!((q.p().rem_euclid(5), q.r().rem_euclid(5)), (2, 3));
        let action = GroupAction::from_form(&q, 5).unwrap();
        let ba = action.b().mul_mod(&action.a(), 5);
        assert_eq!(ba.apply_mod((0, 1), 5), (2, 0));
        let o = action.orbits();
        let o = o.orbit_of((2, 0)).unwrap();
        assert_eq!(o.sign_at((2, 0)), o.sign_at((0, 1)));
        let f = o.sign_function(5).unwrap().scale(&int(o.sign_at((0, 1)).unwrap() as i64));
        let naive = naive_quadrant(&q, &f, 200);
        let qc: u64 = q.c().to_integer().try_into().unwrap();
        let qa: u64 = q.a().to_integer().try_into().unwrap();
        if qc == 4 * qa {
            assert_eq!(naive.get(&qc), Some(&int(2)));
        } else {
            assert_eq!(naive.get(&qc), Some(&int(1)));
            assert_eq!(naive.get(&(4 * qa)), Some(&int(1)));
        }
    }
}

/// Brute-force Hecke sum: every `λ = γ + u e₁ + v e₂` in a box, filtered by
/// `k ≤ λ/λ' < k̄`-type membership tested through the defining inequalities
/// rather than the engine's sector enumeration.
fn naive_hecke(coset: &HeckeCoset, precision: u64, radius: i64) -> BTreeMap<u64, Rational> {
    use indefinite_theta::ConeSector;
    let eps = coset.unit();
    let one = indefinite_theta::QuadFieldElem::one(eps.disc().clone());
    let k = &one + eps;
    let pos = ConeSector::new(k.clone(), k.conj(), true, false).unwrap();
    let neg = ConeSector::new(-&k, -&k.conj(), false, true).unwrap();
    let (e1, e2) = coset.lattice().basis();
    let d = coset.multiplier();
    let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
    for u in -radius..=radius {
        for v in -radius..=radius {
            let lam = coset.shift() + &(&e1.scale(&int(u)) + &e2.scale(&int(v)));
            let nm = d * lam.norm();
            if nm <= int(0) || nm >= int(precision as i64) {
                continue;
            }
            let e: u64 = nm.to_integer().try_into().unwrap();
            if pos.contains(&lam) {
                *out.entry(e).or_default() += int(1);
            }
            if neg.contains(&lam) {
                *out.entry(e).or_default() -= int(1);
            }
        }
    }
    out.retain(|_, v| *v != int(0));
    out
}

#[test]
fn hecke_matches_box_brute_force() {
    let q = form("1", "5/2", "1");
    let fw = qf_to_hecke(&q, &chi3(1), 40).unwrap();
    for coset in fw.decomposition.cosets(&q).unwrap() {
        let engine = theta_hecke(&coset, 40).unwrap();
        assert_eq!(as_map(&engine), naive_hecke(&coset, 40, 120));
    }
    // γ = e₁/2 on ι(ℤ²) of (1,3,1) with d = 4
    let q = form("1", "3", "1");
    let lattice = QuadLattice::new(q.embed(1, 0), q.embed(0, 1)).unwrap();
    let coset = HeckeCoset::new(lattice, q.embed(1, 0).scale(&Rational::new(1.into(), 2.into())), int(4), q.unit()).unwrap();
    let engine = theta_hecke(&coset, 60).unwrap();
    assert_eq!(as_map(&engine), naive_hecke(&coset, 60, 150));
}
