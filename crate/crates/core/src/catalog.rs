//! Canned instances from the worked examples, each reduced to a list of
//! checkable claims.

use num_traits::Signed;

use crate::arith::int;
use crate::error::{Error, Result};
use crate::orbits::{GroupAction, OrbitAnalysis, Parity};
use crate::periodic::PeriodicFunction;
use crate::qseries::QSeries;
use crate::quadform::QuadForm;
use crate::relations::find_linear_relations;
use crate::theta::theta_quadrant;
use crate::Rational;

pub const EXAMPLE_IDS: [&str; 5] = ["n3", "n5a", "n5b", "n7", "ex4"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub description: String,
    pub pass: bool,
}

fn claim(description: impl Into<String>, pass: bool) -> Claim {
    Claim {
        description: description.into(),
        pass,
    }
}

pub fn all_pass(claims: &[Claim]) -> bool {
    claims.iter().all(|c| c.pass)
}

/// Runs the named example at the given precision.
pub fn run_example(id: &str, precision: u64) -> Result<Vec<Claim>> {
    match id {
        "n3" => n3(precision),
        "n5a" => n5a(precision),
        "n5b" => n5b(precision),
        "n7" => n7(precision),
        "ex4" => ex4(),
        other => Err(Error::InvalidInput(format!(
            "unknown example {other:?}; expected one of {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }
}

fn form(a: &str, b: &str, c: &str) -> Result<QuadForm> {
    QuadForm::parse(a, b, c)
}

/// `χ₃(m + s·n)`.
pub fn chi3(s: i64) -> PeriodicFunction {
    PeriodicFunction::from_fn(3, |m, n| match (m as i64 + s * n as i64).rem_euclid(3) {
        1 => int(1),
        2 => int(-1),
        _ => int(0),
    })
}

/// `Θ_{Q,f_O}` for the orbit through `x`, with `f_O(x) = 1`.
fn orbit_series(q: &QuadForm, analysis: &OrbitAnalysis, x: (u64, u64), precision: u64) -> Result<QSeries> {
    let n = analysis.context.modulus;
    let orbit = analysis
        .orbit_of(x)
        .ok_or_else(|| Error::InvalidInput(format!("no orbit through {x:?}")))?;
    let sign = orbit.sign_at(x).ok_or(Error::NotAdmissible { rep: orbit.representative() })?;
    Ok(theta_quadrant(q, &orbit.sign_function(n)?, precision)?.scale(&int(sign as i64)))
}

fn leading_is(s: &QSeries, exp: u64, coeff: i64) -> bool {
    s.leading() == Some((exp, int(coeff)))
}

fn admissible_reps(analysis: &OrbitAnalysis) -> Vec<(u64, u64)> {
    analysis.admissible().map(|o| o.representative()).collect()
}

/// Same admissible function up to a global sign.
fn equal_up_to_sign(f: &PeriodicFunction, g: &PeriodicFunction) -> bool {
    f == g || *f == g.scale(&int(-1))
}

fn n3(precision: u64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let q = form("1", "5/2", "1")?;
    let analysis = GroupAction::from_form(&q, 3)?.orbits();
    let reps = admissible_reps(&analysis);
    out.push(claim("(1,5/2,1), N=3: unique admissible orbit", reps.len() == 1));
    let orbit = analysis.orbit_of((1, 0));
    out.push(claim(
        "the admissible orbit is the orbit of (1,0)",
        orbit.is_some_and(|o| o.admissible),
    ));
    let f = match orbit {
        Some(o) if o.admissible => Some(o.sign_function(3)?),
        _ => None,
    };
    out.push(claim(
        "f_O = chi3(m+n) up to sign",
        f.as_ref().is_some_and(|f| equal_up_to_sign(f, &chi3(1))),
    ));
    let theta = theta_quadrant(&q, &chi3(1), precision)?;
    let expected = QSeries::from_terms(9, [(1, int(2)), (4, int(-2)), (7, int(-2))]);
    out.push(claim(
        "Theta = 2q - 2q^4 - 2q^7 + O(q^9)",
        precision < 9 || theta.truncate(9) == expected,
    ));
    // q^a + χ₃(r)·q^c with a = c = 1, r = −5 ≡ 1
    out.push(claim("coefficient 2 at q^1", theta.coeff(1) == int(2)));

    let q = form("1", "7/2", "7")?;
    let theta = theta_quadrant(&q, &chi3(-1), precision)?;
    out.push(claim(
        "(1,7/2,7), f = chi3(m-n): leading term q^1",
        leading_is(&theta, 1, 1),
    ));
    out.push(claim(
        "(1,7/2,7): coefficient -1 at q^7",
        precision <= 7 || theta.coeff(7) == int(-1),
    ));

    let q = form("1", "7/2", "1")?;
    let theta = theta_quadrant(&q, &chi3(-1), precision)?;
    out.push(claim("(1,7/2,1), f = chi3(m-n): Theta = 0", theta.is_zero()));
    Ok(out)
}

fn n5a(precision: u64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for (a, b, c) in [("4", "18", "9"), ("1", "3", "1"), ("1", "4", "4")] {
        let q = form(a, b, c)?;
        let analysis = GroupAction::from_form(&q, 5)?.orbits();
        let mut reps = admissible_reps(&analysis);
        reps.sort();
        out.push(claim(
            format!("{q}, N=5: admissible orbits are those of (1,0) and (2,0)"),
            analysis.orbit_of((1, 0)).is_some_and(|o| o.admissible)
                && analysis.orbit_of((2, 0)).is_some_and(|o| o.admissible)
                && reps.len() == 2,
        ));
    }

    // (i) p ≡ r ≡ 1: q^a + q^c and q^{4a} + q^{4c} with a = 4, c = 9
    let q = form("4", "18", "9")?;
    let analysis = GroupAction::from_form(&q, 5)?.orbits();
    let f1 = orbit_series(&q, &analysis, (1, 0), precision)?;
    let f2 = orbit_series(&q, &analysis, (2, 0), precision)?;
    out.push(claim(
        "(4,18,9): Theta_f1 = q^4 + ..., Theta_f2 = q^16 + ...",
        leading_is(&f1, 4, 1) && leading_is(&f2, 16, 1),
    ));
    out.push(claim(
        "(4,18,9): Theta_f1 and Theta_f2 are independent",
        find_linear_relations(&q, 5, precision)?.kernel_dim() == 0,
    ));

    // (ii) p ≡ r ≡ −1 with a = c: both vanish
    let q = form("1", "3", "1")?;
    let analysis = GroupAction::from_form(&q, 5)?.orbits();
    let f1 = orbit_series(&q, &analysis, (1, 0), precision)?;
    let f2 = orbit_series(&q, &analysis, (2, 0), precision)?;
    out.push(claim(
        "(1,3,1): Theta_f1 = Theta_f2 = 0",
        f1.is_zero() && f2.is_zero(),
    ));

    // (iii) p ≡ 2, r ≡ −2 with c = 4a: q^a − q^{4c} and q^{9a}
    let q = form("1", "4", "4")?;
    let analysis = GroupAction::from_form(&q, 5)?.orbits();
    let f1 = orbit_series(&q, &analysis, (1, 0), precision)?;
    let f2 = orbit_series(&q, &analysis, (2, 0), precision)?;
    out.push(claim("(1,4,4): Theta_f1 = q + ...", leading_is(&f1, 1, 1)));
    out.push(claim(
        "(1,4,4): Theta_f2 = q^9 + ...",
        f2.leading().is_some_and(|(e, c)| e == 9 && c.abs() == int(1)),
    ));
    Ok(out)
}

fn n5b(precision: u64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let q = form("1", "3/2", "1")?;
    let action = GroupAction::from_form(&q, 5)?;
    out.push(claim("(1,3/2,1): AB has order 5 mod 5", action.ab_order() == 5));
    let analysis = action.orbits();
    let mut reps = admissible_reps(&analysis);
    reps.sort();
    out.push(claim(
        "(1,3/2,1): two admissible orbits, of (1,0) and (2,0)",
        reps == vec![(0, 1), (0, 2)]
            && analysis.orbit_of((1, 0)).is_some_and(|o| o.representative() == (0, 1))
            && analysis.orbit_of((2, 0)).is_some_and(|o| o.representative() == (0, 2)),
    ));
    let q = form("2", "7", "7")?;
    let report = find_linear_relations(&q, 5, precision)?;
    out.push(claim(
        "(2,7,7), a != c: the two series are independent",
        report.labels.len() == 2 && report.kernel_dim() == 0,
    ));
    Ok(out)
}

fn n7(precision: u64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let q = form("1", "3", "1")?;
    let analysis = GroupAction::from_form(&q, 7)?.orbits();
    let admissible: Vec<_> = analysis.admissible().collect();
    let symmetric = admissible.iter().filter(|o| o.symmetric).count();
    out.push(claim(
        "(1,3,1), N=7: 5 admissible orbits, 3 symmetric and 2 asymmetric",
        admissible.len() == 5 && symmetric == 3,
    ));
    let sym_reps = [(1, 0), (2, 0), (3, 0)];
    out.push(claim(
        "symmetric orbits are O1, 2*O1, 3*O1 with O1 the orbit of (1,0)",
        sym_reps
            .iter()
            .all(|&x| analysis.orbit_of(x).is_some_and(|o| o.admissible && o.symmetric)),
    ));
    let o2 = analysis.orbit_of((1, 3));
    out.push(claim(
        "O2, the orbit of (1,3), is asymmetric with partner -O2",
        o2.is_some_and(|o| {
            o.admissible && !o.symmetric && o.partner.is_some_and(|p| analysis.orbit_of(p).is_some_and(|m| m.contains((6, 4))))
        }),
    ));
    out.push(claim(
        "symmetric orbits are odd",
        admissible
            .iter()
            .filter(|o| o.symmetric)
            .all(|o| o.parity == Parity::Odd),
    ));
    let mut leads = Vec::new();
    for x in [(1, 0), (2, 0), (3, 0), (1, 3)] {
        leads.push(orbit_series(&q, &analysis, x, precision)?.leading());
    }
    // q^a + q^c, q^{4a} + q^{4c}, q^{9a} + q^{9c}, q^{9a+c+6b} + q^{a+9c+6b}
    let expected = [1u64, 4, 9, 28];
    out.push(claim(
        "leading terms 2q, 2q^4, 2q^9, 2q^28",
        leads
            .iter()
            .zip(expected)
            .all(|(l, e)| precision <= e || *l == Some((e, int(2)))),
    ));
    let report = find_linear_relations(&q, 7, precision)?;
    out.push(claim(
        "the four representative series are independent",
        report.labels.len() == 4 && report.kernel_dim() == 0,
    ));
    out.push(claim(
        "Theta_{-O2} = -Theta_{O2}",
        {
            let f = o2.map(|o| o.sign_function(7)).transpose()?;
            match f {
                Some(f) => {
                    let g = f.negate_arg();
                    theta_quadrant(&q, &g, precision)? == theta_quadrant(&q, &f, precision)?.neg()
                }
                None => false,
            }
        },
    ));
    Ok(out)
}

/// `v_{s₁,s₂} = ((b/a)s₂ − s₁, (b/c)s₁ − s₂)` and `v_l = (2D/(lac))(1,1)`.
fn ex4() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let q = form("1", "2", "2")?;
    let (b_a, b_c) = integral_ratios(&q)?;
    let n = modulus_4d_ac(&q)?;
    out.push(claim("(1,2,2): N = 4D/(ac) = 4", n == 4));
    let (s1, s2) = (1i64, 1i64);
    let v = (
        (b_a * s2 - s1).rem_euclid(n as i64) as u64,
        (b_c * s1 - s2).rem_euclid(n as i64) as u64,
    );
    out.push(claim("v_{1,1} = (1,0)", v == (1, 0)));
    let analysis = GroupAction::from_form(&q, n)?.orbits();
    let orbit = analysis.orbit_of(v);
    let half = n / 2;
    out.push(claim(
        "orbit of v_{1,1} is admissible with 4 elements",
        orbit.is_some_and(|o| o.admissible && o.len() == 4),
    ));
    out.push(claim(
        "every element is congruent to v_{1,1} mod N/2",
        orbit.is_some_and(|o| o.points.iter().all(|&(x, y)| x % half == v.0 % half && y % half == v.1 % half)),
    ));
    out.push(claim(
        "orbit is {(1,0),(3,0),(1,2),(3,2)}",
        orbit.is_some_and(|o| o.points == vec![(1, 0), (1, 2), (3, 0), (3, 2)]),
    ));

    let q = form("1", "2", "1")?;
    let (b_a, b_c) = integral_ratios(&q)?;
    let n = modulus_4d_ac(&q)?;
    let l = 3u64;
    let divides = (b_a + 1) % l as i64 == 0 && (b_c + 1) % l as i64 == 0;
    out.push(claim("(1,2,1): l = 3 divides b/a + 1 and b/c + 1, N = 12", divides && n == 12));
    let ac = q.a() * q.c();
    let coef = int(2) * q.disc() / (int(l as i64) * ac);
    let k = crate::arith::to_i64(&coef).ok_or(Error::Overflow)?;
    let vl = (k.rem_euclid(n as i64) as u64, k.rem_euclid(n as i64) as u64);
    let action = GroupAction::from_form(&q, n)?;
    out.push(claim(
        "v_l = (2,2) is fixed by A and B mod 12",
        vl == (2, 2) && action.a().apply_mod(vl, n) == vl && action.b().apply_mod(vl, n) == vl,
    ));
    Ok(out)
}

fn integral_ratios(q: &QuadForm) -> Result<(i64, i64)> {
    let b_a: Rational = q.b() / q.a();
    let b_c: Rational = q.b() / q.c();
    match (crate::arith::to_i64(&b_a), crate::arith::to_i64(&b_c)) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::InvalidInput(format!("{q}: b/a and b/c must be integers"))),
    }
}

fn modulus_4d_ac(q: &QuadForm) -> Result<u64> {
    let n = int(4) * q.disc() / (q.a() * q.c());
    crate::arith::to_i64(&n)
        .and_then(|n| u64::try_from(n).ok())
        .ok_or_else(|| Error::InvalidInput(format!("{q}: 4D/(ac) is not a positive integer")))
}
