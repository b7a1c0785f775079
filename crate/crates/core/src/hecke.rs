//! Hecke's series `Θ_{Λ,γ} = Σ sign(λ) q^{d·Nm(λ)}` over a fundamental
//! domain for a unit group acting on a lattice coset, and the two
//! conversions between `(Q, f)` data and lattice cosets.
//!
//! For a unit `ε` the element `k = 1 + ε` is totally positive and satisfies
//! `ε·k̄ = k`, so the half-open cone `[k, k̄⟩` is a fundamental domain for
//! `⟨ε⟩` on the totally positive cone; its negative `⟨−k, −k̄]` plays the
//! same role on the totally negative cone.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, int, Rational};
use crate::enumerate::{self, CosetLattice};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::orbits::GroupAction;
use crate::periodic::PeriodicFunction;
use crate::qseries::QSeries;
use crate::quadfield::{ConeSector, QuadFieldElem};
use crate::quadform::QuadForm;
use crate::theta::{self, ThetaOptions};

/// A rank-2 `ℤ`-submodule `ℤe₁ + ℤe₂` of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadLattice {
    e1: QuadFieldElem,
    e2: QuadFieldElem,
}

impl QuadLattice {
    pub fn new(e1: QuadFieldElem, e2: QuadFieldElem) -> Result<Self> {
        if e1.disc() != e2.disc() {
            return Err(Error::InvalidInput(
                "lattice basis elements have different discriminants".into(),
            ));
        }
        let det = &e1.x * &e2.y - &e2.x * &e1.y;
        if det.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(QuadLattice { e1, e2 })
    }

    /// `ι(L)` for the sublattice `L ⊂ ℤ²` with the given basis.
    pub fn embedded(form: &QuadForm, basis: [(i64, i64); 2]) -> Result<Self> {
        let [(m1, n1), (m2, n2)] = basis;
        Self::new(form.embed(m1, n1), form.embed(m2, n2))
    }

    pub fn disc(&self) -> &Rational {
        self.e1.disc()
    }

    pub fn basis(&self) -> (&QuadFieldElem, &QuadFieldElem) {
        (&self.e1, &self.e2)
    }

    /// `(u, v) ∈ ℚ²` with `z = u·e₁ + v·e₂`.
    pub fn coordinates(&self, z: &QuadFieldElem) -> (Rational, Rational) {
        let det = &self.e1.x * &self.e2.y - &self.e2.x * &self.e1.y;
        let u = (&z.x * &self.e2.y - &self.e2.x * &z.y) / &det;
        let v = (&self.e1.x * &z.y - &z.x * &self.e1.y) / &det;
        (u, v)
    }

    pub fn contains(&self, z: &QuadFieldElem) -> bool {
        if z.disc() != self.disc() {
            return false;
        }
        let (u, v) = self.coordinates(z);
        u.is_integer() && v.is_integer()
    }

    /// `u·Λ = Λ`. For `|Nm(u)| = 1` multiplication by `u` has determinant
    /// `±1`, so `u·Λ ⊂ Λ` already gives equality.
    pub fn is_preserved_by(&self, u: &QuadFieldElem) -> bool {
        u.norm().abs().is_one() && self.contains(&(u * &self.e1)) && self.contains(&(u * &self.e2))
    }
}

pub fn lattice_contains(lattice: &QuadLattice, z: &QuadFieldElem) -> bool {
    lattice.contains(z)
}

/// `Λ + γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCoset {
    pub lattice: QuadLattice,
    pub shift: QuadFieldElem,
}

impl LatticeCoset {
    pub fn new(lattice: QuadLattice, shift: QuadFieldElem) -> Result<Self> {
        if shift.disc() != lattice.disc() {
            return Err(Error::InvalidInput(
                "shift and lattice have different discriminants".into(),
            ));
        }
        Ok(LatticeCoset { lattice, shift })
    }

    pub fn contains(&self, z: &QuadFieldElem) -> bool {
        self.lattice.contains(&(z - &self.shift))
    }

    /// `u·(Λ + γ) = Λ + γ`, for `|Nm(u)| = 1`.
    pub fn is_preserved_by(&self, u: &QuadFieldElem) -> bool {
        self.lattice.is_preserved_by(u) && self.lattice.contains(&(&(u * &self.shift) - &self.shift))
    }

    /// Whether `d·Nm` is integral on the coset.
    ///
    /// `(u, v) ↦ d·Nm(γ + u·e₁ + v·e₂)` is a quadratic polynomial. Such a
    /// polynomial is integer valued on `ℤ²` iff its coefficients in the
    /// binomial basis `1, u, v, C(u,2), uv, C(v,2)` are integers, and those
    /// coefficients are integer combinations of its values at the six
    /// points below (and conversely).
    pub fn norm_integral(&self, d: &Rational) -> bool {
        let (e1, e2) = self.lattice.basis();
        [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 1)]
            .into_iter()
            .all(|(u, v)| {
                let z = &(&self.shift + &e1.scale(&int(u))) + &e2.scale(&int(v));
                (d * z.norm()).is_integer()
            })
    }

    fn enumeration_lattice(&self) -> CosetLattice {
        let (e1, e2) = self.lattice.basis();
        CosetLattice {
            shift: self.shift.clone(),
            e1: e1.clone(),
            e2: e2.clone(),
        }
    }
}

/// A coset `Λ + γ` with a multiplier `d` and a unit `ε ≠ 1` preserving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeCoset {
    coset: LatticeCoset,
    multiplier: Rational,
    unit: QuadFieldElem,
}

impl HeckeCoset {
    pub fn new(
        lattice: QuadLattice,
        shift: QuadFieldElem,
        multiplier: Rational,
        unit: QuadFieldElem,
    ) -> Result<Self> {
        let coset = LatticeCoset::new(lattice, shift)?;
        if unit.disc() != coset.lattice.disc() {
            return Err(Error::InvalidUnit("discriminant differs from the lattice".into()));
        }
        if unit.is_one() {
            return Err(Error::UnitIsOne);
        }
        if !unit.norm().is_one() {
            return Err(Error::InvalidUnit(format!("Nm({unit}) ≠ 1")));
        }
        if !unit.is_totally_positive() {
            return Err(Error::InvalidUnit(format!("{unit} is not totally positive")));
        }
        if !coset.is_preserved_by(&unit) {
            return Err(Error::InvalidUnit(format!("{unit} does not preserve the coset")));
        }
        if !multiplier.is_positive() {
            return Err(Error::InvalidInput("multiplier d must be positive".into()));
        }
        if !coset.norm_integral(&multiplier) {
            return Err(Error::NonIntegralMultiplier(multiplier));
        }
        Ok(HeckeCoset {
            coset,
            multiplier,
            unit,
        })
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.coset.lattice
    }

    pub fn shift(&self) -> &QuadFieldElem {
        &self.coset.shift
    }

    pub fn coset(&self) -> &LatticeCoset {
        &self.coset
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }

    pub fn unit(&self) -> &QuadFieldElem {
        &self.unit
    }

    /// The same coset with another unit.
    pub fn with_unit(&self, unit: QuadFieldElem) -> Result<Self> {
        Self::new(
            self.coset.lattice.clone(),
            self.coset.shift.clone(),
            self.multiplier.clone(),
            unit,
        )
    }
}

pub fn coset_preserved_by(coset: &HeckeCoset, u: &QuadFieldElem) -> bool {
    coset.coset.is_preserved_by(u)
}

/// Smallest `j ≥ 1` with `unit^j` preserving every target coset.
pub fn stabilizer_power(
    unit: &QuadFieldElem,
    targets: &[LatticeCoset],
    max_iter: u32,
) -> Result<u32> {
    let mut power = unit.clone();
    for j in 1..=max_iter {
        if targets.iter().all(|t| t.is_preserved_by(&power)) {
            return Ok(j);
        }
        power = &power * unit;
    }
    Err(Error::IterationExceeded(max_iter))
}

pub fn theta_hecke(coset: &HeckeCoset, precision: u64) -> Result<QSeries> {
    theta_hecke_with(coset, precision, Exec::default())
}

/// `Σ_{λ ∈ (Λ+γ) ∩ [k, k̄⟩} q^{d·Nm(λ)} − Σ_{λ ∈ (Λ+γ) ∩ ⟨−k, −k̄]} q^{d·Nm(λ)}`
/// with `k = 1 + ε`.
pub fn theta_hecke_with(coset: &HeckeCoset, precision: u64, exec: Exec) -> Result<QSeries> {
    let disc = coset.lattice().disc().clone();
    let k = &QuadFieldElem::one(disc) + coset.unit();
    let kc = k.conj();
    let positive = ConeSector::new(k.clone(), kc.clone(), true, false)?;
    let negative = ConeSector::new(-&k, -&kc, false, true)?;
    let d = coset.multiplier();
    let bound = Rational::from_integer(precision.into()) / d;
    let lattice = coset.coset.enumeration_lattice();
    let mut series = QSeries::zero(precision);
    for (sector, sign) in [(positive, 1), (negative, -1)] {
        for p in enumerate::sector_points(&lattice, &sector, &bound, exec)? {
            let value = d * p.value.norm();
            let e = arith::to_i64(&value)
                .and_then(|e| u64::try_from(e).ok())
                .ok_or(Error::NonIntegralExponent {
                    m: p.u,
                    n: p.v,
                    value,
                })?;
            series.add_term(e, &int(sign));
        }
    }
    Ok(series)
}

/// The decomposition of `S₁ = f⁻¹(1)` into cosets of its translation
/// stabilizer `Λ₁ ⊂ ℤ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// Basis `(g₁, h₁), (0, h₂)` of `Λ₁` in Hermite normal form.
    pub sublattice_basis: [(i64, i64); 2],
    /// `ι(Λ₁)`.
    pub sublattice: QuadLattice,
    /// Canonical representatives `x_i` of `S₁ / Λ₁`.
    pub shifts: Vec<(i64, i64)>,
    /// `[G : G₀]`, the least `j` with `ε^j` preserving every `ι(Λ₁ + x_i)`.
    pub index: u32,
    pub unit: QuadFieldElem,
    pub multiplier: Rational,
}

impl CosetDecomposition {
    /// The Hecke cosets `ι(Λ₁ + x_i)` with unit `ε^index`.
    pub fn cosets(&self, form: &QuadForm) -> Result<Vec<HeckeCoset>> {
        let unit = self.unit.pow(self.index);
        self.shifts
            .iter()
            .map(|&(m, n)| {
                HeckeCoset::new(
                    self.sublattice.clone(),
                    form.embed(m, n),
                    self.multiplier.clone(),
                    unit.clone(),
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardCorrespondence {
    pub decomposition: CosetDecomposition,
    /// `[G:G₀]·Θ_{Q,f}` from the quadrant sum.
    pub scaled_theta: QSeries,
    /// `Σᵢ Θ_{Λ₁+xᵢ}` with unit `ε^{[G:G₀]}`.
    pub hecke_sum: QSeries,
    pub holds: bool,
    pub first_mismatch: Option<u64>,
}

/// `{v ∈ (ℤ/N)² : S + v = S}` for a set of residues `S`.
fn translation_stabilizer(support: &BTreeSet<(u64, u64)>, n: u64) -> BTreeSet<(u64, u64)> {
    let Some(&(a0, b0)) = support.iter().next() else {
        return (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    };
    support
        .iter()
        .map(|&(a, b)| ((a + n - a0) % n, (b + n - b0) % n))
        .filter(|&(v1, v2)| {
            support
                .iter()
                .all(|&(a, b)| support.contains(&((a + v1) % n, (b + v2) % n)))
        })
        .collect()
}

/// Hermite basis `(g₁, h₁), (0, h₂)` of the preimage of `h ⊂ (ℤ/N)²`.
fn hermite_basis(h: &BTreeSet<(u64, u64)>, n: u64) -> [(i64, i64); 2] {
    let h2 = (1..=n).find(|&y| h.contains(&(0, y % n))).expect("N ∈ h₂ℤ");
    let g1 = (1..=n)
        .find(|&x| h.iter().any(|&(a, _)| a == x % n))
        .expect("N ∈ g₁ℤ");
    let h1 = h
        .iter()
        .filter(|&&(a, _)| a == g1 % n)
        .map(|&(_, b)| b % h2)
        .min()
        .expect("g₁ occurs");
    debug_assert_eq!((g1 * h2) as usize * h.len(), (n * n) as usize);
    [(g1 as i64, h1 as i64), (0, h2 as i64)]
}

fn reduce_mod_hermite((m, n): (i64, i64), basis: [(i64, i64); 2]) -> (i64, i64) {
    let [(g1, h1), (_, h2)] = basis;
    let k = Integer::div_floor(&m, &g1);
    (m - k * g1, (n - k * h1).rem_euclid(h2))
}

/// Decomposes `f⁻¹(1)` into cosets and checks
/// `[G:G₀]·Θ_{Q,f} = Σᵢ Θ_{Λ₁+xᵢ}` with `d = 1/c`, `ε = (b+√D)/(b−√D)`.
pub fn qf_to_hecke(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
) -> Result<ForwardCorrespondence> {
    qf_to_hecke_with(form, f, precision, Exec::default())
}

pub fn qf_to_hecke_with(
    form: &QuadForm,
    f: &PeriodicFunction,
    precision: u64,
    exec: Exec,
) -> Result<ForwardCorrespondence> {
    if let Some((m, n)) = f.check_admissible(form).witness {
        return Err(Error::AdmissibilityViolation { m, n });
    }
    if let Some((_, v)) = f.support().find(|(_, v)| !v.abs().is_one()) {
        return Err(Error::NotSignValued(v.clone()));
    }
    let n = f.period();
    let s1 = f.positive_part();
    let stab = translation_stabilizer(&s1, n);
    let basis = hermite_basis(&stab, n);
    let shifts: BTreeSet<(i64, i64)> = s1
        .iter()
        .map(|&(a, b)| reduce_mod_hermite((a as i64, b as i64), basis))
        .collect();
    let sublattice = QuadLattice::embedded(form, basis)?;
    let unit = form.unit();
    let targets = shifts
        .iter()
        .map(|&(a, b)| LatticeCoset::new(sublattice.clone(), form.embed(a, b)))
        .collect::<Result<Vec<_>>>()?;
    // ε acts as AB, so ε^{ord(AB mod N)} fixes every class mod N ⊃ Λ₁
    let bound = GroupAction::from_form(form, n)?.ab_order();
    let index = stabilizer_power(&unit, &targets, bound.try_into().unwrap_or(u32::MAX))?;
    let decomposition = CosetDecomposition {
        sublattice_basis: basis,
        sublattice,
        shifts: shifts.into_iter().collect(),
        index,
        unit,
        multiplier: form.c().recip(),
    };
    let opts = ThetaOptions {
        exec,
        waive_admissibility: false,
    };
    let scaled_theta = theta::theta_quadrant_with(form, f, precision, &opts)?
        .scale(&Rational::from_integer(index.into()));
    let mut hecke_sum = QSeries::zero(precision);
    for coset in decomposition.cosets(form)? {
        hecke_sum = hecke_sum.add(&theta_hecke_with(&coset, precision, exec)?);
    }
    let first_mismatch = scaled_theta.first_difference(&hecke_sum);
    Ok(ForwardCorrespondence {
        decomposition,
        scaled_theta,
        hecke_sum,
        holds: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseCorrespondence {
    /// `Q″(m, n) = d·Nm((m + n·k)/M₀)`.
    pub form: QuadForm,
    /// `δ_{M₀(Λ+γ)} − δ_{M₀·B(Λ+γ)}` in `(1, k)`-coordinates, `B(z) = −z̄`.
    pub function: PeriodicFunction,
    /// `M₀`, the least positive integer with `M₀·S ⊂ ℤ²`.
    pub scale: u64,
    pub admissible: bool,
    pub hecke: QSeries,
    pub quadrant: QSeries,
    pub holds: bool,
    pub first_mismatch: Option<u64>,
}

fn to_u64(r: &num_bigint::BigInt) -> Result<u64> {
    r.to_u64().ok_or(Error::Overflow)
}

fn to_i64(r: &Rational) -> Result<i64> {
    arith::to_i64(r).ok_or(Error::Overflow)
}

/// Basis `(g₁, h₁), (0, h₂)` of `ℤw₁ + ℤw₂ ⊂ ℤ²` with `g₁, h₂ > 0`.
fn hermite_of(w1: (i64, i64), w2: (i64, i64)) -> [(i64, i64); 2] {
    let e = w1.0.extended_gcd(&w2.0);
    let g1 = e.gcd;
    let first = (g1, e.x * w1.1 + e.y * w2.1);
    let h2 = ((w2.0 / g1) * w1.1 - (w1.0 / g1) * w2.1).abs();
    let (first, h2) = if g1 < 0 { ((-first.0, -first.1), h2) } else { (first, h2) };
    [(first.0, first.1.rem_euclid(h2)), (0, h2)]
}

/// Rewrites `Θ_{Λ,γ}` as `Θ_{Q″,f″}` and checks the two series agree.
pub fn hecke_to_qf(coset: &HeckeCoset, precision: u64) -> Result<ReverseCorrespondence> {
    hecke_to_qf_with(coset, precision, Exec::default())
}

pub fn hecke_to_qf_with(
    coset: &HeckeCoset,
    precision: u64,
    exec: Exec,
) -> Result<ReverseCorrespondence> {
    let eps = coset.unit();
    if eps.is_one() {
        return Err(Error::UnitIsOne);
    }
    let disc = coset.lattice().disc().clone();
    let k = &QuadFieldElem::one(disc) + eps;
    // z = m + n·k: n = z_y / k_y, m = z_x − n·k_x
    let coords = |z: &QuadFieldElem| {
        let n = &z.y / &k.y;
        let m = &z.x - &n * &k.x;
        (m, n)
    };
    let (e1, e2) = coset.lattice().basis();
    let c1 = coords(e1);
    let c2 = coords(e2);
    let cg = coords(coset.shift());
    let scale_big = arith::lcm_denominators([&c1.0, &c1.1, &c2.0, &c2.1, &cg.0, &cg.1]);
    let scale = to_u64(&scale_big)?;
    let s = Rational::from_integer(scale_big);
    let w1 = (to_i64(&(&c1.0 * &s))?, to_i64(&(&c1.1 * &s))?);
    let w2 = (to_i64(&(&c2.0 * &s))?, to_i64(&(&c2.1 * &s))?);
    let g = (to_i64(&(&cg.0 * &s))?, to_i64(&(&cg.1 * &s))?);
    // N′ℤ² ⊂ ℤw₁ + ℤw₂ iff N′·W⁻¹ is integral, W⁻¹ = adj(W)/det(W)
    let det = w1.0 * w2.1 - w2.0 * w1.1;
    let adj = [w2.1, -w2.0, -w1.1, w1.0];
    let period = adj
        .iter()
        .fold(1i64, |acc, &x| acc.lcm(&(det / det.gcd(&x)).abs()));
    let period = period as u64;
    let trace = k.trace();
    let d = coset.multiplier();
    let s2 = &s * &s;
    let form = QuadForm::new(d / &s2, d * &trace / (int(2) * &s2), d * k.norm() / &s2)?;
    let t = to_i64(&trace)?;
    let np = period as i64;
    // one representative per class of g + ℤw₁ + ℤw₂ mod N′, via the
    // Hermite basis (g₁, h₁), (0, h₂) of ℤw₁ + ℤw₂
    let [(g1, h1), (_, h2)] = hermite_of(w1, w2);
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for u in 0..np / g1 {
        for v in 0..np / h2 {
            let m = (g.0 + u * g1).rem_euclid(np);
            let n = (g.1 + u * h1 + v * h2).rem_euclid(np);
            plus.insert((m, n));
            // B(m + n·k) = −m − n·k̄ = (−m − Tr(k)·n) + n·k
            minus.insert(((-m - t * n).rem_euclid(np), n));
        }
    }
    let mut function = PeriodicFunction::zero(period);
    for &(m, n) in &plus {
        function.set(m, n, int(1));
    }
    for &(m, n) in &minus {
        let v = function.get(m, n) - int(1);
        function.set(m, n, v);
    }
    let admissible = function.is_admissible(&form);
    let opts = ThetaOptions {
        exec,
        waive_admissibility: true,
    };
    let quadrant = theta::theta_quadrant_with(&form, &function, precision, &opts)?;
    let hecke = theta_hecke_with(coset, precision, exec)?;
    let first_mismatch = quadrant.first_difference(&hecke);
    Ok(ReverseCorrespondence {
        form,
        function,
        scale,
        admissible,
        holds: admissible && first_mismatch.is_none(),
        hecke,
        quadrant,
        first_mismatch,
    })
}

/// Outcome of the vanishing test for a totally negative norm-1 `δ`
/// preserving the coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingVerdict {
    pub totally_negative: bool,
    pub norm_one: bool,
    pub preserves_coset: bool,
    /// `Θ_{Λ,γ}`, computed only when every hypothesis holds.
    pub series: Option<QSeries>,
}

impl VanishingVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.totally_negative && self.norm_one && self.preserves_coset
    }

    /// Hypotheses hold and the series vanishes to the computed precision.
    pub fn holds(&self) -> bool {
        self.hypotheses_hold() && self.series.as_ref().is_some_and(QSeries::is_zero)
    }
}

pub fn satz1_vanishing(
    coset: &HeckeCoset,
    delta: &QuadFieldElem,
    precision: u64,
) -> Result<VanishingVerdict> {
    let mut verdict = VanishingVerdict {
        totally_negative: delta.is_totally_negative(),
        norm_one: delta.norm().is_one(),
        preserves_coset: false,
        series: None,
    };
    verdict.preserves_coset = verdict.norm_one && coset.coset.is_preserved_by(delta);
    if verdict.hypotheses_hold() {
        verdict.series = Some(theta_hecke(coset, precision)?);
    }
    Ok(verdict)
}
