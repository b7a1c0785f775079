//! Orbits of the dihedral group `G_N = ⟨A, B⟩ ⊂ GL₂(ℤ/Nℤ)` on `(ℤ/Nℤ)²`.
//!
//! An orbit is admissible when neither reflection fixes any of its points.
//! Equivalently, propagating a sign `+1` from the representative and
//! flipping it across every `A`- and `B`-edge never produces a conflict
//! (the character `χ(A) = χ(B) = −1` is trivial on stabilizers). Both tests
//! are run and recorded; they must agree.

use std::collections::{BTreeSet, VecDeque};

use crate::arith::{self, int};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::periodic::PeriodicFunction;
use crate::quadform::QuadForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Orbit points in lexicographic order; `points[0]` is the representative.
    pub points: Vec<(u64, u64)>,
    /// `f_O` on `points`, normalized to `+1` at the representative; present
    /// exactly when the orbit is admissible.
    pub signs: Option<Vec<i8>>,
    pub admissible: bool,
    /// Result of the fixed-point test; always equal to `admissible`.
    pub fixed_point_free: bool,
    pub symmetric: bool,
    pub parity: Parity,
    /// Representative of `−O` for asymmetric orbits.
    pub partner: Option<(u64, u64)>,
}

impl OrbitRecord {
    pub fn representative(&self) -> (u64, u64) {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: (u64, u64)) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn sign_at(&self, x: (u64, u64)) -> Option<i8> {
        let idx = self.points.binary_search(&x).ok()?;
        self.signs.as_ref().map(|s| s[idx])
    }

    /// `f_O` as a periodic function of period `modulus`.
    pub fn sign_function(&self, modulus: u64) -> Result<PeriodicFunction> {
        let signs = self.signs.as_ref().ok_or(Error::NotAdmissible {
            rep: self.representative(),
        })?;
        Ok(PeriodicFunction::from_entries(
            modulus,
            self.points
                .iter()
                .zip(signs)
                .map(|(&(m, n), &s)| ((m as i64, n as i64), int(s as i64))),
        ))
    }
}

/// The group data attached to `(p, r, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    pub modulus: u64,
    pub a: Mat2,
    pub b: Mat2,
    pub ab_order: u64,
    pub contains_minus_id: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAnalysis {
    pub context: GroupContext,
    pub orbits: Vec<OrbitRecord>,
}

impl OrbitAnalysis {
    pub fn admissible(&self) -> impl Iterator<Item = &OrbitRecord> {
        self.orbits.iter().filter(|o| o.admissible)
    }

    /// The orbit containing `x`.
    pub fn orbit_of(&self, x: (u64, u64)) -> Option<&OrbitRecord> {
        let n = self.context.modulus;
        let x = (x.0 % n, x.1 % n);
        self.orbits.iter().find(|o| o.contains(x))
    }
}

/// The action of `A = [[−1, p], [0, 1]]` and `B = [[1, 0], [r, −1]]` mod `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    modulus: u64,
    p: i64,
    r: i64,
    a: Mat2,
    b: Mat2,
}

impl GroupAction {
    /// Low-level entry point taking the reflection parameters directly.
    pub fn new(p: i64, r: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let a = Mat2([[-1, p], [0, 1]]).reduce(modulus);
        let b = Mat2([[1, 0], [r, -1]]).reduce(modulus);
        Ok(GroupAction {
            modulus,
            p,
            r,
            a,
            b,
        })
    }

    pub fn from_form(form: &QuadForm, modulus: u64) -> Result<Self> {
        Self::new(form.p(), form.r(), modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn a(&self) -> Mat2 {
        self.a
    }

    pub fn b(&self) -> Mat2 {
        self.b
    }

    pub fn ab(&self) -> Mat2 {
        self.a.mul_mod(&self.b, self.modulus)
    }

    fn minus_identity(&self) -> Mat2 {
        Mat2([[-1, 0], [0, -1]]).reduce(self.modulus)
    }

    fn identity(&self) -> Mat2 {
        Mat2::IDENTITY.reduce(self.modulus)
    }

    /// Multiplicative order of `AB` in `GL₂(ℤ/Nℤ)`.
    pub fn ab_order(&self) -> u64 {
        let ab = self.ab();
        let id = self.identity();
        let mut power = ab;
        let mut k = 1;
        while power != id {
            power = power.mul_mod(&ab, self.modulus);
            k += 1;
        }
        k
    }

    /// Whether `−id ∈ G_N`. Since `G_N ∩ SL₂` is generated by `AB`, this
    /// holds iff some power of `AB` equals `−id`.
    pub fn contains_minus_id(&self) -> bool {
        let ab = self.ab();
        let id = self.identity();
        let minus = self.minus_identity();
        let mut power = id;
        loop {
            if power == minus {
                return true;
            }
            power = power.mul_mod(&ab, self.modulus);
            if power == id {
                return false;
            }
        }
    }

    pub fn context(&self) -> GroupContext {
        GroupContext {
            modulus: self.modulus,
            a: self.a,
            b: self.b,
            ab_order: self.ab_order(),
            contains_minus_id: self.contains_minus_id(),
        }
    }

    fn index(&self, (m, n): (u64, u64)) -> usize {
        (m * self.modulus + n) as usize
    }

    /// Partitions `(ℤ/Nℤ)²` into orbits, in order of representative.
    pub fn orbits(&self) -> OrbitAnalysis {
        let n = self.modulus;
        let size = (n * n) as usize;
        let mut visited = vec![false; size];
        let mut orbits = Vec::new();
        for m in 0..n {
            for k in 0..n {
                let start = (m, k);
                if visited[self.index(start)] {
                    continue;
                }
                orbits.push(self.explore(start, &mut visited));
            }
        }
        let mut analysis = OrbitAnalysis {
            context: self.context(),
            orbits,
        };
        self.classify(&mut analysis);
        analysis
    }

    fn explore(&self, start: (u64, u64), visited: &mut [bool]) -> OrbitRecord {
        let n = self.modulus;
        // sign[x] = χ(g) for the first g found with g·start = x
        let mut sign: Vec<(usize, i8)> = Vec::new();
        let mut found = std::collections::HashMap::new();
        let mut queue = VecDeque::new();
        let mut consistent = true;
        visited[self.index(start)] = true;
        found.insert(start, 1i8);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let s = found[&x];
            for g in [self.a, self.b] {
                let y = g.apply_mod(x, n);
                match found.get(&y) {
                    Some(&t) => {
                        if t != -s {
                            consistent = false;
                        }
                    }
                    None => {
                        found.insert(y, -s);
                        visited[self.index(y)] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut points: Vec<(u64, u64)> = found.keys().copied().collect();
        points.sort_unstable();
        sign.extend(points.iter().enumerate().map(|(i, x)| (i, found[x])));
        let fixed_point_free = points
            .iter()
            .all(|&x| self.a.apply_mod(x, n) != x && self.b.apply_mod(x, n) != x);
        // the representative is the lexicographically least point, which is
        // where traversal started
        debug_assert_eq!(points[0], start);
        OrbitRecord {
            signs: consistent.then(|| sign.into_iter().map(|(_, s)| s).collect()),
            points,
            admissible: consistent,
            fixed_point_free,
            symmetric: false,
            parity: Parity::NotApplicable,
            partner: None,
        }
    }

    fn classify(&self, analysis: &mut OrbitAnalysis) {
        let n = self.modulus;
        let neg = |(m, k): (u64, u64)| ((n - m) % n, (n - k) % n);
        for orbit in analysis.orbits.iter_mut() {
            let rep = orbit.representative();
            orbit.symmetric = orbit.contains(neg(rep));
            if orbit.symmetric {
                if let Some(s) = orbit.sign_at(rep) {
                    let t = orbit.sign_at(neg(rep)).expect("symmetric orbit");
                    orbit.parity = if s == t { Parity::Even } else { Parity::Odd };
                }
            } else {
                orbit.partner = orbit.points.iter().map(|&x| neg(x)).min();
            }
        }
    }
}

/// Residues `ρ = rp mod N` for which `−id ∈ G_N`, with the count check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusIdResidues {
    pub modulus: u64,
    pub with_minus_id: Vec<u64>,
    pub without_minus_id: Vec<u64>,
    /// `N − (n₁ + n₂)/2` with `n₁`, `n₂` the odd parts of `N − 1`, `N + 1`.
    pub predicted_count: u64,
}

impl MinusIdResidues {
    pub fn count_matches(&self) -> bool {
        self.with_minus_id.len() as u64 == self.predicted_count
    }
}

/// Sweeps every residue `ρ` mod an odd prime `N` (including `ρ = 0`),
/// realizing it with `p = 1`, `r = ρ`.
pub fn minus_id_residues(modulus: u64) -> Result<MinusIdResidues> {
    if modulus == 2 || !arith::is_prime(modulus) {
        return Err(Error::NotOddPrime(modulus));
    }
    let mut with = Vec::new();
    let mut without = Vec::new();
    for rho in 0..modulus {
        let action = GroupAction::new(1, rho as i64, modulus)?;
        if action.contains_minus_id() {
            with.push(rho);
        } else {
            without.push(rho);
        }
    }
    let n1 = arith::odd_part(modulus - 1);
    let n2 = arith::odd_part(modulus + 1);
    Ok(MinusIdResidues {
        modulus,
        with_minus_id: with,
        without_minus_id: without,
        predicted_count: modulus - (n1 + n2) / 2,
    })
}

/// For an odd prime `N`: either `−id ∈ G_N` or every symmetric admissible
/// orbit is odd. Returns whether this holds for the given action.
pub fn symmetric_orbits_odd(action: &GroupAction) -> Result<bool> {
    let n = action.modulus();
    if n == 2 || !arith::is_prime(n) {
        return Err(Error::NotOddPrime(n));
    }
    if action.contains_minus_id() {
        return Ok(true);
    }
    Ok(action
        .orbits()
        .admissible()
        .filter(|o| o.symmetric)
        .all(|o| o.parity == Parity::Odd))
}

/// Lexicographically sorted set of points, for order-independent checks.
pub fn point_set(points: &[(u64, u64)]) -> BTreeSet<(u64, u64)> {
    points.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: &str, b: &str, c: &str) -> QuadForm {
        QuadForm::parse(a, b, c).unwrap()
    }

    #[test]
    fn n3_single_admissible_orbit() {
        let action = GroupAction::from_form(&form("1", "5/2", "1"), 3).unwrap();
        let analysis = action.orbits();
        assert_eq!(analysis.orbits.len(), 4);
        let adm: Vec<_> = analysis.admissible().collect();
        assert_eq!(adm.len(), 1);
        let o = adm[0];
        assert_eq!(
            point_set(&o.points),
            point_set(&[(1, 0), (2, 0), (1, 1), (2, 2), (0, 1), (0, 2)])
        );
        for (x, s) in [((1, 0), 1), ((2, 2), 1), ((0, 1), 1), ((2, 0), -1), ((1, 1), -1), ((0, 2), -1)] {
            assert_eq!(o.sign_at(x), Some(s));
        }
        assert!(o.symmetric);
        assert_eq!(o.parity, Parity::Odd);
        let singletons: Vec<_> = analysis.orbits.iter().filter(|o| o.len() == 1).collect();
        assert_eq!(singletons.len(), 3);
        assert!(analysis.orbit_of((1, 2)).unwrap().len() == 1);
        assert!(analysis.orbit_of((2, 1)).unwrap().len() == 1);
    }

    #[test]
    fn n7_orbit_classification() {
        let analysis = GroupAction::from_form(&form("1", "3", "1"), 7).unwrap().orbits();
        let adm: Vec<_> = analysis.admissible().collect();
        assert_eq!(adm.len(), 5);
        assert_eq!(adm.iter().filter(|o| o.symmetric).count(), 3);
        for x in [(1, 0), (2, 0), (3, 0)] {
            let o = analysis.orbit_of(x).unwrap();
            assert!(o.admissible && o.symmetric);
        }
        let o2 = analysis.orbit_of((1, 3)).unwrap();
        assert!(o2.admissible && !o2.symmetric);
        let minus = analysis.orbit_of((6, 4)).unwrap();
        assert!(minus.admissible && !minus.symmetric);
        assert_eq!(o2.partner, Some(minus.representative()));
        assert!(point_set(&o2.points).is_disjoint(&point_set(&minus.points)));
    }

    #[test]
    fn both_admissibility_tests_agree() {
        for (p, r) in [(-5, -5), (-6, -6), (-3, -4), (-8, -2), (-12, -7)] {
            for n in 1..=16 {
                let analysis = GroupAction::new(p, r, n).unwrap().orbits();
                let total: usize = analysis.orbits.iter().map(|o| o.len()).sum();
                assert_eq!(total as u64, n * n);
                for o in &analysis.orbits {
                    assert_eq!(o.admissible, o.fixed_point_free, "p={p} r={r} N={n}");
                }
            }
        }
    }

    #[test]
    fn sign_functions_are_admissible() {
        let q = form("1", "3", "1");
        let analysis = GroupAction::from_form(&q, 7).unwrap().orbits();
        for o in analysis.admissible() {
            let f = o.sign_function(7).unwrap();
            assert!(f.is_admissible(&q));
            assert_eq!(f.get(o.representative().0 as i64, o.representative().1 as i64), int(1));
        }
        let inadmissible = analysis.orbits.iter().find(|o| !o.admissible).unwrap();
        assert!(matches!(inadmissible.sign_function(7), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn minus_id_membership() {
        assert!(GroupAction::new(-3, -4, 5).unwrap().contains_minus_id());
        assert!(!GroupAction::new(-4, -4, 5).unwrap().contains_minus_id());
        assert!(GroupAction::new(-3, -3, 3).unwrap().contains_minus_id());
    }

    #[test]
    fn ab_order_n5b() {
        assert_eq!(GroupAction::new(-3, -3, 5).unwrap().ab_order(), 5);
    }

    #[test]
    fn residue_lists() {
        let r5 = minus_id_residues(5).unwrap();
        assert_eq!(r5.without_minus_id, vec![1, 4]);
        assert_eq!(r5.predicted_count, 3);
        assert!(r5.count_matches());
        let r13 = minus_id_residues(13).unwrap();
        assert_eq!(r13.without_minus_id, vec![1, 4, 9, 10, 12]);
        assert!(r13.count_matches());
        assert!(matches!(minus_id_residues(9), Err(Error::NotOddPrime(9))));
        assert!(matches!(minus_id_residues(2), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn symmetric_orbits_are_odd() {
        let a3 = GroupAction::from_form(&form("1", "5/2", "1"), 3).unwrap();
        assert!(symmetric_orbits_odd(&a3).unwrap());
        let a7 = GroupAction::from_form(&form("1", "3", "1"), 7).unwrap();
        assert!(symmetric_orbits_odd(&a7).unwrap());
        assert!(matches!(
            symmetric_orbits_odd(&GroupAction::new(-1, -5, 4).unwrap()),
            Err(Error::NotOddPrime(4))
        ));
    }
}
