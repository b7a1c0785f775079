//! Exact enumeration of lattice-coset points in a cone of `K` below a norm
//! bound.
//!
//! A point `λ` of a totally positive cone with `Nm(λ) < B` has embeddings
//! `λ₁, λ₂ > 0` with `λ₁λ₂ < B`, but the ratio `λ₁/λ₂` can range over
//! several orders of magnitude (a unit sector spans a factor `ε²`). The
//! ratio range is therefore cut into slices `[4^e, 4^{e+1})`; in a slice
//! `λ₁ < 2^{e+1}√B` and `λ₂ < 2^{−e}√B`, a box of area `2B` independent of
//! `e`. Each box is a parallelogram in lattice coordinates `(u, v)`, scanned
//! row by row with exact bounds. Every candidate is then filtered exactly,
//! so the box only has to contain the answer.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, int, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quadfield::{ConeSector, QuadFieldElem};

/// `shift + ℤ·e1 + ℤ·e2 ⊂ K`.
#[derive(Clone, Debug)]
pub(crate) struct CosetLattice {
    pub shift: QuadFieldElem,
    pub e1: QuadFieldElem,
    pub e2: QuadFieldElem,
}

impl CosetLattice {
    pub fn point(&self, u: i64, v: i64) -> QuadFieldElem {
        let a = self.e1.scale(&int(u));
        let b = self.e2.scale(&int(v));
        &(&self.shift + &a) + &b
    }

    fn negated(&self) -> Self {
        CosetLattice {
            shift: -&self.shift,
            e1: -&self.e1,
            e2: -&self.e2,
        }
    }
}

/// A coset point `shift + u·e1 + v·e2` together with its value.
#[derive(Clone, Debug)]
pub(crate) struct SectorPoint {
    pub u: i64,
    pub v: i64,
    pub value: QuadFieldElem,
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn pow4(e: i64) -> Rational {
    let base = int(4);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

fn pow2(e: i64) -> Rational {
    let base = int(2);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

/// `⌊log₄(λ₁/λ₂)⌋` for totally positive `λ`.
fn ratio_slice(z: &QuadFieldElem) -> i64 {
    let ratio = z.div_first(&z.conj());
    let ge = |e: i64| {
        let t = QuadFieldElem::from_rational(pow4(e), z.disc().clone());
        (&ratio - &t).sign_first() >= 0
    };
    let mut e = 0;
    while ge(e + 1) {
        e += 1;
    }
    while !ge(e) {
        e -= 1;
    }
    e
}

/// Closed integer interval containing every real `t` with
/// `σ(base) + t·σ(step) ∈ (0, limit]`, where `σ` is the first embedding
/// applied to `base` and `step` as given. `None` when `σ(step) = 0` and the
/// constraint does not involve `t`.
fn row_bounds(
    base: &QuadFieldElem,
    step: &QuadFieldElem,
    limit: &Rational,
) -> Option<(BigInt, BigInt)> {
    if step.sign_first() == 0 {
        return None;
    }
    let lim = QuadFieldElem::from_rational(limit.clone(), base.disc().clone());
    let t0 = (-base).div_first(step);
    let t1 = (&lim - base).div_first(step);
    let (lo, hi) = if t0.cmp_first(&t1).is_le() {
        (t0, t1)
    } else {
        (t1, t0)
    };
    Some((lo.floor_first(), hi.ceil_first()))
}

/// Candidates of one slice: lattice points whose embeddings satisfy
/// `0 < λ₁ ≤ x_max`, `0 < λ₂ ≤ y_max`.
fn box_points(
    lat: &CosetLattice,
    x_max: &Rational,
    y_max: &Rational,
) -> Result<Vec<(i64, i64)>> {
    let disc = lat.shift.disc().clone();
    let (e1, e2, g) = (&lat.e1, &lat.e2, &lat.shift);
    let (e1c, e2c, gc) = (e1.conj(), e2.conj(), g.conj());
    // Cramer's rule in the first embedding, using σ₂(z) = σ₁(z̄):
    // u = (σ₁(x − g)σ₁(ē₂) − σ₁(e₂)σ₁(y − ḡ)) / σ₁(e₁ē₂ − e₂ē₁)
    let det = &(e1 * &e2c) - &(e2 * &e1c);
    let mut u_lo: Option<BigInt> = None;
    let mut u_hi: Option<BigInt> = None;
    for x in [Rational::zero(), x_max.clone()] {
        for y in [Rational::zero(), y_max.clone()] {
            let xs = QuadFieldElem::from_rational(x.clone(), disc.clone());
            let ys = QuadFieldElem::from_rational(y, disc.clone());
            let num = &(&(&xs - g) * &e2c) - &(e2 * &(&ys - &gc));
            let u = num.div_first(&det);
            let (f, c) = (u.floor_first(), u.ceil_first());
            u_lo = Some(u_lo.map_or(f.clone(), |m| m.min(f)));
            u_hi = Some(u_hi.map_or(c.clone(), |m| m.max(c)));
        }
    }
    let (u_lo, u_hi) = (
        to_i64(u_lo.expect("four corners"))?,
        to_i64(u_hi.expect("four corners"))?,
    );
    let mut out = Vec::new();
    for u in u_lo..=u_hi {
        let base = g + &e1.scale(&int(u));
        let first = row_bounds(&base, e2, x_max);
        let second = row_bounds(&base.conj(), &e2c, y_max);
        let (lo, hi) = match (first, second) {
            (Some((a, b)), Some((c, d))) => (a.max(c), b.min(d)),
            (Some(r), None) | (None, Some(r)) => r,
            (None, None) => return Err(Error::DegenerateLattice),
        };
        if lo > hi {
            continue;
        }
        for v in to_i64(lo)?..=to_i64(hi)? {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// All points `λ` of the coset lying in `sector` with `0 < Nm(λ) < bound`.
///
/// The sector's rays must both be totally positive or both totally
/// negative. Points are returned grouped by slice, then by `(u, v)`.
pub(crate) fn sector_points(
    lat: &CosetLattice,
    sector: &ConeSector,
    bound: &Rational,
    exec: Exec,
) -> Result<Vec<SectorPoint>> {
    if sector.ray1.is_totally_negative() && sector.ray2.is_totally_negative() {
        // −λ lies in the negated sector and in the negated coset with the
        // same coordinates
        let pts = sector_points(&lat.negated(), &sector.negated(), bound, exec)?;
        return Ok(pts
            .into_iter()
            .map(|p| SectorPoint {
                value: -p.value,
                ..p
            })
            .collect());
    }
    if !(sector.ray1.is_totally_positive() && sector.ray2.is_totally_positive()) {
        return Err(Error::DegenerateSector);
    }
    if !bound.is_positive() {
        return Ok(Vec::new());
    }
    let (s1, s2) = (ratio_slice(&sector.ray1), ratio_slice(&sector.ray2));
    let slices: Vec<i64> = (s1.min(s2)..=s1.max(s2)).collect();
    let root = Rational::from_integer(arith::ceil_sqrt(bound));
    let per_slice = exec.try_map(slices, |e| -> Result<Vec<SectorPoint>> {
        let x_max = pow2(e + 1) * &root;
        let y_max = pow2(-e) * &root;
        let lower = pow4(e);
        let upper = pow4(e + 1);
        let mut found = Vec::new();
        for (u, v) in box_points(lat, &x_max, &y_max)? {
            let z = lat.point(u, v);
            let nm = z.norm();
            if !nm.is_positive() || &nm >= bound || !z.is_totally_positive() {
                continue;
            }
            // slice membership: 4^e ≤ λ₁/λ₂ < 4^{e+1}
            let zc = z.conj();
            let lo = &z - &zc.scale(&lower);
            let hi = &z - &zc.scale(&upper);
            if lo.sign_first() < 0 || hi.sign_first() >= 0 {
                continue;
            }
            if sector.contains(&z) {
                found.push(SectorPoint { u, v, value: z });
            }
        }
        Ok(found)
    })?;
    Ok(per_slice.into_iter().flatten().collect())
}

/// Lattice points in the closed box `|u|, |v| ≤ r` lying in `sector` with
/// `0 < Nm < bound`; a brute-force reference used by tests.
#[cfg(test)]
pub(crate) fn brute_force(
    lat: &CosetLattice,
    sector: &ConeSector,
    bound: &Rational,
    r: i64,
) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for u in -r..=r {
        for v in -r..=r {
            let z = lat.point(u, v);
            let nm = z.norm();
            if nm.is_positive() && &nm < bound && sector.contains(&z) {
                out.push((u, v));
            }
        }
    }
    out
}
