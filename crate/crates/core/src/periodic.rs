//! Doubly periodic coefficient functions on `ℤ²`.
//!
//! Values are exact rationals. Only the nonzero residues of one period
//! block are stored; every other residue is zero. The admissibility
//! condition `f(Ax) = f(Bx) = −f(x)` is checked two ways: directly on
//! residues, and by summing `f` along horizontal and vertical lines grouped
//! by the value of `Q`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::quadform::QuadForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFunction {
    period: u64,
    values: BTreeMap<(u64, u64), Rational>,
}

/// Outcome of [`PeriodicFunction::check_admissible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub holds: bool,
    /// A residue `x` at which `f(Ax) = f(Bx) = −f(x)` fails.
    pub witness: Option<(u64, u64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    /// The line `{(m, n₀)}`.
    Horizontal(u64),
    /// The line `{(m₀, n)}`.
    Vertical(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSums {
    pub holds: bool,
    pub failing_line: Option<Line>,
}

impl PeriodicFunction {
    pub fn zero(period: u64) -> Self {
        assert!(period > 0, "period must be positive");
        PeriodicFunction {
            period,
            values: BTreeMap::new(),
        }
    }

    /// Builds `f` from `(point, value)` pairs; points are reduced mod
    /// `period`, later entries overwrite earlier ones.
    pub fn from_entries(
        period: u64,
        entries: impl IntoIterator<Item = ((i64, i64), Rational)>,
    ) -> Self {
        let mut f = Self::zero(period);
        for ((m, n), v) in entries {
            f.set(m, n, v);
        }
        f
    }

    pub fn from_fn(period: u64, mut value: impl FnMut(u64, u64) -> Rational) -> Self {
        let mut f = Self::zero(period);
        for m in 0..period {
            for n in 0..period {
                f.set(m as i64, n as i64, value(m, n));
            }
        }
        f
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residue(&self, m: i64, n: i64) -> (u64, u64) {
        let k = self.period as i64;
        (m.rem_euclid(k) as u64, n.rem_euclid(k) as u64)
    }

    pub fn set(&mut self, m: i64, n: i64, v: Rational) {
        let key = self.residue(m, n);
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn get(&self, m: i64, n: i64) -> Rational {
        self.values
            .get(&self.residue(m, n))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn get_ref(&self, m: i64, n: i64) -> Option<&Rational> {
        self.values.get(&self.residue(m, n))
    }

    /// Nonzero residues in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (&(u64, u64), &Rational)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every value lies in {−1, 1} (zeros are not stored).
    pub fn is_sign_valued(&self) -> bool {
        self.values.values().all(|v| v.abs().is_one())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut f = Self::zero(self.period);
        for (&(m, n), v) in &self.values {
            f.set(m as i64, n as i64, v * k);
        }
        f
    }

    /// The same function viewed with a multiple of its period.
    pub fn lift(&self, period: u64) -> Result<Self> {
        if !period.is_multiple_of(self.period) {
            return Err(Error::InvalidInput(format!(
                "{period} is not a multiple of the period {}",
                self.period
            )));
        }
        let k = period / self.period;
        let mut f = Self::zero(period);
        for (&(m, n), v) in &self.values {
            for i in 0..k {
                for j in 0..k {
                    f.set(
                        (m + i * self.period) as i64,
                        (n + j * self.period) as i64,
                        v.clone(),
                    );
                }
            }
        }
        Ok(f)
    }

    /// Pointwise sum; the result has period `lcm` of the two periods.
    pub fn add(&self, other: &Self) -> Self {
        let period = self.period.lcm(&other.period);
        let mut f = self.lift(period).expect("lcm is a multiple");
        let g = other.lift(period).expect("lcm is a multiple");
        for (&(m, n), v) in &g.values {
            let sum = f.get(m as i64, n as i64) + v;
            f.set(m as i64, n as i64, sum);
        }
        f
    }

    /// `f(Ax) = f(Bx) = −f(x)` for every residue `x`.
    ///
    /// Checking the support suffices: `A` and `B` are involutions, so a
    /// failure at a zero `x` with `f(Ax) ≠ 0` is also a failure at `Ax`.
    pub fn check_admissible(&self, form: &QuadForm) -> Admissibility {
        let (a, b) = (form.reflection_a(), form.reflection_b());
        for (&x, v) in &self.values {
            let neg = -v;
            let fa = self.values.get(&a.apply_mod(x, self.period));
            let fb = self.values.get(&b.apply_mod(x, self.period));
            if fa != Some(&neg) || fb != Some(&neg) {
                return Admissibility {
                    holds: false,
                    witness: Some(x),
                };
            }
        }
        Admissibility {
            holds: true,
            witness: None,
        }
    }

    pub fn is_admissible(&self, form: &QuadForm) -> bool {
        self.check_admissible(form).holds
    }

    /// Verifies that `Σ_m f(m,n₀) q^{Q(m,n₀)}` and `Σ_n f(m₀,n) q^{Q(m₀,n)}`
    /// vanish for every line.
    ///
    /// Along a horizontal line `Q` is a quadratic in `m` symmetric about
    /// `m* = p·n₀/2`, so each value is taken at most twice. Summing `f` over
    /// a window symmetric about `m*` and at least one period wide, grouped
    /// by the exact value of `Q`, therefore decides the line.
    pub fn check_line_sums(&self, form: &QuadForm) -> LineSums {
        let rows: BTreeSet<u64> = self.values.keys().map(|&(_, n)| n).collect();
        let cols: BTreeSet<u64> = self.values.keys().map(|&(m, _)| m).collect();
        for n0 in rows {
            if !self.line_vanishes(form, n0, true) {
                return LineSums {
                    holds: false,
                    failing_line: Some(Line::Horizontal(n0)),
                };
            }
        }
        for m0 in cols {
            if !self.line_vanishes(form, m0, false) {
                return LineSums {
                    holds: false,
                    failing_line: Some(Line::Vertical(m0)),
                };
            }
        }
        LineSums {
            holds: true,
            failing_line: None,
        }
    }

    fn line_vanishes(&self, form: &QuadForm, fixed: u64, horizontal: bool) -> bool {
        let k = self.period as i64;
        let slope = if horizontal { form.p() } else { form.r() };
        let twice_center = slope * fixed as i64;
        let lo = Integer::div_floor(&twice_center, &2) - k;
        let hi = twice_center - lo;
        let mut sums: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (&(m, n), v) in &self.values {
            let (moving, other) = if horizontal { (m, n) } else { (n, m) };
            if other != fixed {
                continue;
            }
            let first = lo + (moving as i64 - lo).rem_euclid(k);
            let mut t = first;
            while t <= hi {
                let q = if horizontal {
                    form.eval(t, fixed as i64)
                } else {
                    form.eval(fixed as i64, t)
                };
                *sums.entry(q).or_insert_with(Rational::zero) += v;
                t += k;
            }
        }
        sums.values().all(Zero::is_zero)
    }

    /// `f∘[−1] : (m,n) ↦ f(−m,−n)`.
    pub fn negate_arg(&self) -> Self {
        let mut f = Self::zero(self.period);
        for (&(m, n), v) in &self.values {
            f.set(-(m as i64), -(n as i64), v.clone());
        }
        f
    }

    /// `f∘τ : (m,n) ↦ f(n,m)`.
    pub fn tau(&self) -> Self {
        let mut f = Self::zero(self.period);
        for (&(m, n), v) in &self.values {
            f.set(n as i64, m as i64, v.clone());
        }
        f
    }

    /// `f∘τ_t` with `τ_t(m,n) = (tn, m/t)` and `t² = c/a`.
    ///
    /// For `t = u/v` in lowest terms the result has period `N·u·v`.
    pub fn tau_t(&self, form: &QuadForm, t: &Rational) -> Result<Self> {
        if !t.is_positive() || t * t != form.c() / form.a() {
            return Err(Error::NotASquare(form.c() / form.a()));
        }
        let u = t.numer().to_u64().ok_or(Error::Overflow)?;
        let v = t.denom().to_u64().ok_or(Error::Overflow)?;
        let big_n = self.period;
        let new_period = big_n
            .checked_mul(u)
            .and_then(|x| x.checked_mul(v))
            .ok_or(Error::Overflow)?;
        let mut g = Self::zero(new_period);
        for (&(s1, s2), val) in &self.values {
            // every lift (s1 + iN, s2 + jN) must satisfy u | first, v | second
            if s1 % u != 0 || !big_n.is_multiple_of(u) {
                return Err(Error::SupportNotPreserved {
                    m: s1 as i64,
                    n: s2 as i64,
                });
            }
            if s2 % v != 0 || !big_n.is_multiple_of(v) {
                return Err(Error::SupportNotPreserved {
                    m: s1 as i64,
                    n: s2 as i64,
                });
            }
            // g(x) = f(τ_t x) and τ_t is an involution, so supp g = τ_t(supp f)
            for i in 0..u * u {
                for j in 0..v * v {
                    let y1 = s1 + i * big_n;
                    let y2 = s2 + j * big_n;
                    let x1 = u * y2 / v;
                    let x2 = v * y1 / u;
                    g.set(x1 as i64, x2 as i64, val.clone());
                }
            }
        }
        Ok(g)
    }

    /// Splits `f` into `Σ w·g_w` over the distinct positive values `w` of
    /// `|f|`, each `g_w` taking values in {0, ±1}.
    pub fn sign_layers(&self) -> Vec<(Rational, PeriodicFunction)> {
        let mut layers: BTreeMap<Rational, PeriodicFunction> = BTreeMap::new();
        for (&(m, n), v) in &self.values {
            let w = v.abs();
            let sign = if v.is_positive() { int(1) } else { int(-1) };
            layers
                .entry(w)
                .or_insert_with(|| Self::zero(self.period))
                .set(m as i64, n as i64, sign);
        }
        layers.into_iter().collect()
    }

    /// Residues where `f = 1`.
    pub fn positive_part(&self) -> BTreeSet<(u64, u64)> {
        self.values
            .iter()
            .filter(|(_, v)| v.is_one())
            .map(|(&x, _)| x)
            .collect()
    }
}
