//! 2×2 integer matrices acting on column vectors `(m, n)`.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn apply(&self, (m, n): (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.0;
        (a * m + b * n, c * m + d * n)
    }

    /// Action on `(ℤ/Nℤ)²`, with residues in `[0, N)`.
    pub fn apply_mod(&self, (m, n): (u64, u64), modulus: u64) -> (u64, u64) {
        let (x, y) = self.apply((m as i64, n as i64));
        let k = modulus as i64;
        (x.rem_euclid(k) as u64, y.rem_euclid(k) as u64)
    }

    pub fn reduce(&self, modulus: u64) -> Mat2 {
        let k = modulus as i64;
        let mut out = self.0;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v = v.rem_euclid(k);
            }
        }
        Mat2(out)
    }

    pub fn mul_mod(&self, rhs: &Mat2, modulus: u64) -> Mat2 {
        (*self * *rhs).reduce(modulus)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let a = Mat2([[-1, -5], [0, 1]]);
        let b = Mat2([[1, 0], [-5, -1]]);
        assert_eq!(a * a, Mat2::IDENTITY);
        assert_eq!(b * b, Mat2::IDENTITY);
        assert_eq!((a * b).trace(), 25 - 2);
        assert_eq!((a * b).det(), 1);
        assert_eq!(a.apply_mod((1, 1), 3), (0, 1));
    }
}
