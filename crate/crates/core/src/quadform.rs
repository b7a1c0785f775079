//! The indefinite form `Q(m,n) = am² + 2bmn + cn²`, its two reflections
//! and the embedding of `ℤ²` into `K = ℚ(√D)`, `D = b² − ac`.

use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{self, int, Rational};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::quadfield::QuadFieldElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    a: Rational,
    b: Rational,
    c: Rational,
    p: i64,
    r: i64,
    disc: Rational,
    scaled: ScaledForm,
}

/// `Q = (sa·m² + sb·mn + sc·n²) / den` with integer numerators, used by the
/// enumeration loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ScaledForm {
    sa: i128,
    sb: i128,
    sc: i128,
    den: i128,
}

impl ScaledForm {
    fn new(a: &Rational, b2: &Rational, c: &Rational) -> Result<Self> {
        let den = arith::lcm_denominators([a, b2, c]);
        let to = |r: &Rational| -> Result<i128> {
            (r * Rational::from_integer(den.clone()))
                .to_integer()
                .to_i128()
                .ok_or(Error::Overflow)
        };
        Ok(ScaledForm {
            sa: to(a)?,
            sb: to(b2)?,
            sc: to(c)?,
            den: den.to_i128().ok_or(Error::Overflow)?,
        })
    }

    fn numerator(&self, m: i64, n: i64) -> Option<i128> {
        let (m, n) = (m as i128, n as i128);
        let t1 = self.sa.checked_mul(m.checked_mul(m)?)?;
        let t2 = self.sb.checked_mul(m.checked_mul(n)?)?;
        let t3 = self.sc.checked_mul(n.checked_mul(n)?)?;
        t1.checked_add(t2)?.checked_add(t3)
    }
}

impl QuadForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if !(a.is_positive() && b.is_positive() && c.is_positive()) {
            return Err(Error::NotPositiveCoefficients {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
            });
        }
        let b2 = &b * &b;
        let ac = &a * &c;
        if b2 <= ac {
            return Err(Error::NotIndefinite {
                b2: b2.to_string(),
                ac: ac.to_string(),
            });
        }
        let disc = &b2 - &ac;
        let two_b = &b * int(2);
        let p = -(&two_b / &a);
        let r = -(&two_b / &c);
        let p_int = arith::to_i64(&p).ok_or(Error::NonIntegralReflection {
            name: "p",
            value: p.clone(),
        })?;
        let r_int = arith::to_i64(&r).ok_or(Error::NonIntegralReflection {
            name: "r",
            value: r.clone(),
        })?;
        let scaled = ScaledForm::new(&a, &two_b, &c)?;
        Ok(QuadForm {
            a,
            b,
            c,
            p: p_int,
            r: r_int,
            disc,
            scaled,
        })
    }

    /// Convenience constructor from rational strings such as `"5/2"`.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        Self::new(
            arith::parse_rational(a)?,
            arith::parse_rational(b)?,
            arith::parse_rational(c)?,
        )
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    /// `p = −2b/a`.
    pub fn p(&self) -> i64 {
        self.p
    }
    /// `r = −2b/c`.
    pub fn r(&self) -> i64 {
        self.r
    }
    /// `D = b² − ac`.
    pub fn disc(&self) -> &Rational {
        &self.disc
    }

    pub fn reflection_a(&self) -> Mat2 {
        Mat2([[-1, self.p], [0, 1]])
    }

    pub fn reflection_b(&self) -> Mat2 {
        Mat2([[1, 0], [self.r, -1]])
    }

    pub fn eval(&self, m: i64, n: i64) -> Rational {
        let (m, n) = (int(m), int(n));
        &self.a * &m * &m + int(2) * &self.b * &m * &n + &self.c * &n * &n
    }

    /// `Q(m,n)` as a non-negative integer exponent.
    pub(crate) fn exponent(&self, m: i64, n: i64) -> Result<u64> {
        let num = self.scaled.numerator(m, n).ok_or(Error::Overflow)?;
        if num < 0 || num % self.scaled.den != 0 {
            return Err(Error::NonIntegralExponent {
                m,
                n,
                value: self.eval(m, n),
            });
        }
        u64::try_from(num / self.scaled.den).map_err(|_| Error::Overflow)
    }

    /// Whether `Q(m,n) < bound`, decided in integer arithmetic.
    pub(crate) fn below(&self, m: i64, n: i64, bound: u64) -> Result<bool> {
        let num = self.scaled.numerator(m, n).ok_or(Error::Overflow)?;
        let lim = (bound as i128)
            .checked_mul(self.scaled.den)
            .ok_or(Error::Overflow)?;
        Ok(num < lim)
    }

    /// `ι(m,n) = (bm + cn) + m√D`; satisfies `Nm(ι(m,n)) = c·Q(m,n)`.
    pub fn embed(&self, m: i64, n: i64) -> QuadFieldElem {
        QuadFieldElem::new(
            &self.b * int(m) + &self.c * int(n),
            int(m),
            self.disc.clone(),
        )
    }

    /// The form `Q(t₁m, t₂n)`.
    pub fn rescale(&self, t1: &Rational, t2: &Rational) -> Result<Self> {
        if !(t1.is_positive() && t2.is_positive()) {
            return Err(Error::InvalidInput(
                "rescaling factors must be positive".into(),
            ));
        }
        Self::new(
            &self.a * t1 * t1,
            &self.b * t1 * t2,
            &self.c * t2 * t2,
        )
    }

    /// `Q∘τ` with `τ(m,n) = (n,m)`.
    pub fn swapped(&self) -> Self {
        Self::new(self.c.clone(), self.b.clone(), self.a.clone())
            .expect("swapping a and c preserves every form invariant")
    }

    /// `(b + √D)/(b − √D)`, the element acting as `AB` through the embedding.
    pub fn unit(&self) -> QuadFieldElem {
        let plus = QuadFieldElem::new(self.b.clone(), Rational::one(), self.disc.clone());
        let minus = plus.conj();
        &plus * &minus.inv().expect("b − √D has norm ac ≠ 0")
    }

    /// Positive `t` with `c/a = t²`, when it exists.
    pub fn tau_t_parameter(&self) -> Option<Rational> {
        arith::rational_sqrt(&(&self.c / &self.a))
    }

    /// True when `Q` takes integer values on all of `ℤ²`.
    pub fn is_integral(&self) -> bool {
        let two_b = &self.b * int(2);
        self.a.is_integer() && self.c.is_integer() && two_b.is_integer()
    }

    /// Gram matrix `[[a, b], [b, c]]`.
    pub fn gram(&self) -> [[Rational; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.b.clone(), self.c.clone()],
        ]
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            arith::format_rational(&self.a),
            arith::format_rational(&self.b),
            arith::format_rational(&self.c)
        )
    }
}
