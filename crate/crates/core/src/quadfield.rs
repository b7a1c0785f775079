//! Elements `x + y√D` of the real quadratic algebra `K = ℚ(√D)`.
//!
//! `D` is any positive rational. When `D` is the square of a rational the
//! same representation stands for `ℚ ⊕ ℚ` through the two embeddings
//! `x ± y√D`; elements of norm zero then exist and are not invertible.
//! All sign decisions are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, floor_int, floor_sqrt, format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    pub x: Rational,
    pub y: Rational,
    disc: Rational,
}

fn sign_of(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl QuadFieldElem {
    pub fn new(x: Rational, y: Rational, disc: Rational) -> Self {
        assert!(disc.is_positive(), "discriminant must be positive");
        QuadFieldElem { x, y, disc }
    }

    pub fn from_rational(x: Rational, disc: Rational) -> Self {
        Self::new(x, Rational::zero(), disc)
    }

    pub fn zero(disc: Rational) -> Self {
        Self::from_rational(Rational::zero(), disc)
    }

    pub fn one(disc: Rational) -> Self {
        Self::from_rational(Rational::one(), disc)
    }

    pub fn disc(&self) -> &Rational {
        &self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    fn check_disc(&self, other: &Self) {
        assert_eq!(
            self.disc, other.disc,
            "quadratic field elements with different discriminants"
        );
    }

    /// `Nm(x + y√D) = x² − D·y²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - &self.disc * &self.y * &self.y
    }

    pub fn trace(&self) -> Rational {
        &self.x + &self.x
    }

    pub fn conj(&self) -> Self {
        QuadFieldElem {
            x: self.x.clone(),
            y: -&self.y,
            disc: self.disc.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadFieldElem {
            x: &self.x * k,
            y: &self.y * k,
            disc: self.disc.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.disc.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of the first embedding `x + y√D`.
    pub fn sign_first(&self) -> i8 {
        let sx = sign_of(&self.x);
        let sy = sign_of(&self.y);
        if sy == 0 {
            return sx;
        }
        if sx == 0 || sx == sy {
            return sy;
        }
        // opposite signs: the larger of x² and D·y² wins
        let x2 = &self.x * &self.x;
        let dy2 = &self.disc * &self.y * &self.y;
        match x2.cmp(&dy2) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => 0,
        }
    }

    /// Signs of `(x + y√D, x − y√D)`, each in {−1, 0, 1}.
    pub fn embedding_signs(&self) -> (i8, i8) {
        (self.sign_first(), self.conj().sign_first())
    }

    pub fn is_totally_positive(&self) -> bool {
        self.embedding_signs() == (1, 1)
    }

    pub fn is_totally_negative(&self) -> bool {
        self.embedding_signs() == (-1, -1)
    }

    /// `⌊x + y√D⌋` computed exactly.
    pub fn floor_first(&self) -> BigInt {
        if self.y.is_zero() {
            return floor_int(&self.x);
        }
        let root = floor_sqrt(&(&self.disc * &self.y * &self.y));
        let base = floor_int(&self.x);
        let mut k = if self.y.is_positive() {
            base + root - 1
        } else {
            base - root - 2
        };
        loop {
            let next = Rational::from_integer(&k + 1);
            let shifted = QuadFieldElem::new(&self.x - next, self.y.clone(), self.disc.clone());
            if shifted.sign_first() >= 0 {
                k += 1;
            } else {
                break;
            }
        }
        k
    }

    /// `⌈x + y√D⌉` computed exactly.
    pub fn ceil_first(&self) -> BigInt {
        -(-self).floor_first()
    }

    /// Compares first embeddings exactly.
    pub fn cmp_first(&self, other: &Self) -> Ordering {
        match (self - other).sign_first() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// An element whose first embedding is `σ₁(self) / σ₁(den)`.
    ///
    /// Panics when `σ₁(den) = 0`.
    pub fn div_first(&self, den: &Self) -> Self {
        self.check_disc(den);
        let n = den.norm();
        if !n.is_zero() {
            return (self * &den.conj()).scale(&n.recip());
        }
        // norm zero with σ₁(den) ≠ 0 only happens in the split case, where
        // σ₁(den) is itself rational
        let root = arith::rational_sqrt(&self.disc).expect("norm-zero element in a field");
        let value = &den.x + &den.y * root;
        assert!(!value.is_zero(), "division by an element with σ₁ = 0");
        self.scale(&value.recip())
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}·√({})",
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.disc)
        )
    }
}

impl Add for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn add(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_disc(rhs);
        QuadFieldElem {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            disc: self.disc.clone(),
        }
    }
}

impl Sub for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn sub(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_disc(rhs);
        QuadFieldElem {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            disc: self.disc.clone(),
        }
    }
}

impl Mul for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn mul(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_disc(rhs);
        QuadFieldElem {
            x: &self.x * &rhs.x + &self.disc * &self.y * &rhs.y,
            y: &self.x * &rhs.y + &rhs.x * &self.y,
            disc: self.disc.clone(),
        }
    }
}

impl Neg for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn neg(self) -> QuadFieldElem {
        QuadFieldElem {
            x: -&self.x,
            y: -&self.y,
            disc: self.disc.clone(),
        }
    }
}

impl Neg for QuadFieldElem {
    type Output = QuadFieldElem;
    fn neg(self) -> QuadFieldElem {
        -&self
    }
}

/// A rational cone spanned by two rays, each edge open or closed.
///
/// `edge1_closed` means the ray through `ray1` belongs to the sector, so
/// `[k₁, k₂⟩` is `{ edge1_closed: true, edge2_closed: false }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSector {
    pub ray1: QuadFieldElem,
    pub ray2: QuadFieldElem,
    pub edge1_closed: bool,
    pub edge2_closed: bool,
}

impl ConeSector {
    pub fn new(
        ray1: QuadFieldElem,
        ray2: QuadFieldElem,
        edge1_closed: bool,
        edge2_closed: bool,
    ) -> Result<Self> {
        ray1.check_disc(&ray2);
        if ray1.is_zero() || ray2.is_zero() || Self::det(&ray1, &ray2).is_zero() {
            return Err(Error::DegenerateSector);
        }
        Ok(ConeSector {
            ray1,
            ray2,
            edge1_closed,
            edge2_closed,
        })
    }

    fn det(u: &QuadFieldElem, v: &QuadFieldElem) -> Rational {
        &u.x * &v.y - &v.x * &u.y
    }

    /// Coefficients `(α, β)` with `z = α·ray1 + β·ray2`.
    pub fn coordinates(&self, z: &QuadFieldElem) -> (Rational, Rational) {
        let det = Self::det(&self.ray1, &self.ray2);
        let alpha = (&z.x * &self.ray2.y - &self.ray2.x * &z.y) / &det;
        let beta = (&self.ray1.x * &z.y - &z.x * &self.ray1.y) / &det;
        (alpha, beta)
    }

    pub fn contains(&self, z: &QuadFieldElem) -> bool {
        let (alpha, beta) = self.coordinates(z);
        if alpha.is_negative() || beta.is_negative() {
            return false;
        }
        match (alpha.is_zero(), beta.is_zero()) {
            (true, true) => self.edge1_closed && self.edge2_closed,
            (false, true) => self.edge1_closed,
            (true, false) => self.edge2_closed,
            (false, false) => true,
        }
    }

    /// The sector `{−z : z ∈ self}`.
    pub fn negated(&self) -> Self {
        ConeSector {
            ray1: -&self.ray1,
            ray2: -&self.ray2,
            edge1_closed: self.edge1_closed,
            edge2_closed: self.edge2_closed,
        }
    }
}
