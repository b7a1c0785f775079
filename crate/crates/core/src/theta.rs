//! `Θ_{Q,f}` computed two independent ways.
//!
//! The quadrant sum enumerates `m, n ≥ 0` and `m, n < 0` directly. The
//! sector sum embeds `ℤ²` into `K` by `ι(m,n) = bm + cn + m√D` and sums
//! `q^{Nm(λ)/c}` over the points of `S₁ = f⁻¹(1)` in the cone
//! `⟨b−√D, b+√D]`, minus those in `[−b+√D, −b−√D⟩`. Equality of the two is
//! the computational content of the modularity argument.

use num_traits::Signed;

use crate::arith::Rational;
use crate::enumerate::{self, CosetLattice};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::periodic::PeriodicFunction;
use crate::qseries::QSeries;
use crate::quadfield::{ConeSector, QuadFieldElem};
use crate::quadform::QuadForm;

#[derive(Clone, Copy, Debug, Default)]
pub struct ThetaOptions {
    pub exec: Exec,
    /// Skip the admissibility precondition (for negative controls).
    pub waive_admissibility: bool,
}

fn check_preconditions(form: &QuadForm, f: &PeriodicFunction, opts: &ThetaOptions) -> Result<()> {
    if opts.waive_admissibility {
        return Ok(());
    }
    match f.check_admissible(form).witness {
        Some((m, n)) => Err(Error::AdmissibilityViolation { m, n }),
        None => Ok(()),
    }
}

pub fn theta_quadrant(form: &QuadForm, f: &PeriodicFunction, precision: u64) -> Result<QSeries> {
    theta_quadrant_with(form, f, precision, &ThetaOptions::default())
}

/// `Σ_{m,n≥0} f(m,n) q^{Q(m,n)} − Σ_{m,n<0} f(m,n) q^{Q(m,n)}` below
/// `q^precision`.
///
/// Each nonzero residue `(r₁, r₂)` is lifted along `r + Nℤ²`; on both
/// quadrants `Q` grows with `|m|` and `|n|`, so each row and column scan
/// stops at the first value `≥ precision`.
pub fn theta_quadrant_with(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
    opts: &ThetaOptions,
) -> Result<QSeries> {
    check_preconditions(form, f, opts)?;
    let period = f.period() as i64;
    let residues: Vec<((u64, u64), Rational)> =
        f.support().map(|(&x, v)| (x, v.clone())).collect();
    let parts = opts.exec.try_map(residues, |((r1, r2), value)| {
        let mut terms = Vec::new();
        let (r1, r2) = (r1 as i64, r2 as i64);
        // positive quadrant: m = r₁ + iN, n = r₂ + jN with i, j ≥ 0;
        // negative quadrant: m = r₁ − iN, n = r₂ − jN with i, j ≥ 1
        for (start, step, sign) in [(0i64, period, false), (1, -period, true)] {
            let mut i = start;
            loop {
                let m = r1 + i * step;
                let mut j = start;
                let mut row_empty = true;
                loop {
                    let n = r2 + j * step;
                    if !form.below(m, n, precision)? {
                        break;
                    }
                    row_empty = false;
                    let e = form.exponent(m, n)?;
                    terms.push((e, if sign { -&value } else { value.clone() }));
                    j += 1;
                }
                if row_empty {
                    break;
                }
                i += 1;
            }
        }
        Ok::<_, Error>(terms)
    })?;
    Ok(QSeries::from_terms(precision, parts.into_iter().flatten()))
}

pub fn theta_sector(form: &QuadForm, f: &PeriodicFunction, precision: u64) -> Result<QSeries> {
    theta_sector_with(form, f, precision, &ThetaOptions::default())
}

/// The cone sum over `S₁`.
///
/// A rational `f` is the combination `Σ w·g_w` of its sign layers, and the
/// sum over `g_w⁻¹(1)` is the set where `f = w > 0`. Weighting each point
/// by `max(f, 0)` therefore evaluates every layer in a single enumeration.
pub fn theta_sector_with(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
    opts: &ThetaOptions,
) -> Result<QSeries> {
    check_preconditions(form, f, opts)?;
    let mut series = QSeries::zero(precision);
    if f.is_zero() {
        return Ok(series);
    }
    let disc = form.disc().clone();
    let lattice = CosetLattice {
        shift: QuadFieldElem::zero(disc.clone()),
        e1: form.embed(1, 0),
        e2: form.embed(0, 1),
    };
    let plus = QuadFieldElem::new(form.b().clone(), Rational::from_integer(1.into()), disc);
    let minus = plus.conj();
    let positive = ConeSector::new(minus.clone(), plus.clone(), false, true)?;
    let negative = ConeSector::new(-&minus, -&plus, true, false)?;
    // Nm(ι(m,n)) = c·Q(m,n) < c·precision
    let bound = form.c() * Rational::from_integer(precision.into());
    for (sector, sign) in [(positive, 1), (negative, -1)] {
        for p in enumerate::sector_points(&lattice, &sector, &bound, opts.exec)? {
            let value = match f.get_ref(p.u, p.v) {
                Some(v) => v,
                None => continue,
            };
            let e = form.exponent(p.u, p.v)?;
            if value.is_positive() {
                let coeff = if sign > 0 { value.clone() } else { -value };
                series.add_term(e, &coeff);
            }
        }
    }
    Ok(series)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainIdentity {
    pub quadrant: QSeries,
    pub sector: QSeries,
    pub holds: bool,
    pub first_mismatch: Option<u64>,
}

pub fn verify_main_identity(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
) -> Result<MainIdentity> {
    verify_main_identity_with(form, f, precision, &ThetaOptions::default())
}

pub fn verify_main_identity_with(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
    opts: &ThetaOptions,
) -> Result<MainIdentity> {
    let quadrant = theta_quadrant_with(form, f, precision, opts)?;
    let sector = theta_sector_with(form, f, precision, opts)?;
    let first_mismatch = quadrant.first_difference(&sector);
    Ok(MainIdentity {
        holds: first_mismatch.is_none(),
        quadrant,
        sector,
        first_mismatch,
    })
}
