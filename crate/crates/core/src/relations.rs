//! Linear relations among the orbit series `Θ_{Q,f_O}` at a fixed form.
//!
//! Known relations come from symmetries of the sum: `f ↦ f∘[−1]` negates
//! the series, and the swap `τ(m,n) = (n,m)` (when `a = c`) or the rescaled
//! swap `τ_t(m,n) = (tn, m/t)` (when `c/a = t²`) preserve `Q` and hence the
//! series. Everything else found in the kernel of the coefficient matrix is
//! reported as a candidate valid only to the computed precision.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::error::Result;
use crate::exec::Exec;
use crate::linalg;
use crate::orbits::{GroupAction, OrbitAnalysis, OrbitRecord, Parity};
use crate::periodic::PeriodicFunction;
use crate::qseries::QSeries;
use crate::quadform::QuadForm;
use crate::theta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// `Θ_{f_{−O}} = ±Θ_{f_O}` for an asymmetric pair.
    Negation,
    /// `Θ_{f_O} = 0` for an even symmetric orbit.
    EvenSymmetricZero,
    /// `Θ_{f_O} = ±Θ_{f_{τO}}` when `a = c`.
    Tau,
    /// `Θ_{f_O} = ±Θ_{f_{O′}}` with `f_O∘τ_t = ±f_{O′}` when `c/a = t²`.
    TauT,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Negation => "negation",
            RelationKind::EvenSymmetricZero => "even-symmetric-zero",
            RelationKind::Tau => "tau",
            RelationKind::TauT => "tau_t",
        }
    }
}

/// `Θ_left = sign·Θ_right`, or `Θ_left = 0` when `right` is `None`.
/// Orbits are named by their representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymbolicRelation {
    pub kind: RelationKind,
    pub left: (u64, u64),
    pub right: Option<(u64, u64)>,
    pub sign: i8,
}

impl SymbolicRelation {
    /// Whether the relation holds for the given series.
    pub fn holds(&self, series: &BTreeMap<(u64, u64), QSeries>) -> bool {
        let left = &series[&self.left];
        match self.right {
            None => left.is_zero(),
            Some(r) => left.sub(&series[&r].scale(&int(self.sign as i64))).is_zero(),
        }
    }
}

/// `s ∈ {±1}` with `g = s·h`, if any.
fn sign_between(g: &PeriodicFunction, h: &PeriodicFunction) -> Option<i8> {
    if g == h {
        Some(1)
    } else if *g == h.scale(&int(-1)) {
        Some(-1)
    } else {
        None
    }
}

fn sign_functions(analysis: &OrbitAnalysis) -> BTreeMap<(u64, u64), PeriodicFunction> {
    let n = analysis.context.modulus;
    analysis
        .admissible()
        .map(|o| (o.representative(), o.sign_function(n).expect("admissible")))
        .collect()
}

fn push_pair(
    out: &mut BTreeSet<SymbolicRelation>,
    kind: RelationKind,
    a: (u64, u64),
    b: (u64, u64),
    sign: i8,
) {
    if a == b && sign == 1 {
        return;
    }
    let (left, right) = if a <= b { (a, b) } else { (b, a) };
    out.insert(SymbolicRelation {
        kind,
        left,
        right: Some(right),
        sign,
    });
}

/// Relations implied by the symmetries of the quadrant sum.
pub fn symbolic_relations(form: &QuadForm, analysis: &OrbitAnalysis) -> Vec<SymbolicRelation> {
    let n = analysis.context.modulus;
    let funcs = sign_functions(analysis);
    let admissible: Vec<&OrbitRecord> = analysis.admissible().collect();
    let orbit_rep = |x: (u64, u64)| analysis.orbit_of(x).map(OrbitRecord::representative);
    let mut out = BTreeSet::new();
    for o in &admissible {
        let rep = o.representative();
        let f = &funcs[&rep];
        if let Some(partner) = o.partner {
            if rep < partner {
                // Θ_{f∘[−1]} = −Θ_f and f_{−O} = s·(f_O∘[−1])
                if let Some(s) = sign_between(&funcs[&partner], &f.negate_arg()) {
                    push_pair(&mut out, RelationKind::Negation, partner, rep, -s);
                }
            }
        }
        if o.symmetric && o.parity == Parity::Even {
            out.insert(SymbolicRelation {
                kind: RelationKind::EvenSymmetricZero,
                left: rep,
                right: None,
                sign: 1,
            });
        }
    }

    if form.a() == form.c() {
        for o in &admissible {
            let rep = o.representative();
            let image = funcs[&rep].tau();
            if let Some(other) = orbit_rep((rep.1, rep.0)) {
                if let Some(s) = funcs.get(&other).and_then(|g| sign_between(&image, g)) {
                    push_pair(&mut out, RelationKind::Tau, rep, other, s);
                }
            }
        }
    }

    if let Some(t) = form.tau_t_parameter() {
        if t != int(1) {
            for o in &admissible {
                let rep = o.representative();
                let Ok(image) = funcs[&rep].tau_t(form, &t) else {
                    continue;
                };
                let Some((&(m, k), _)) = image.support().next() else {
                    continue;
                };
                let Some(other) = orbit_rep((m % n, k % n)) else {
                    continue;
                };
                let Some(g) = funcs.get(&other) else { continue };
                let lifted = g.lift(image.period()).expect("period multiple of N");
                if let Some(s) = sign_between(&image, &lifted) {
                    push_pair(&mut out, RelationKind::TauT, rep, other, s);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedRelation {
    pub relation: SymbolicRelation,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub modulus: u64,
    pub precision: u64,
    /// One representative per `±` pair of admissible orbits.
    pub labels: Vec<(u64, u64)>,
    pub series: Vec<QSeries>,
    pub relations: Vec<CheckedRelation>,
    /// Basis of the rational kernel of the coefficient matrix (columns are
    /// `labels`, rows are exponents below `precision`).
    pub kernel_basis: Vec<Vec<Rational>>,
    /// Kernel vectors outside the span of the symbolic relations: candidate
    /// relations valid modulo `q^precision` only.
    pub unexplained: Vec<Vec<Rational>>,
}

impl RelationReport {
    pub fn all_relations_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

pub fn find_linear_relations(form: &QuadForm, modulus: u64, precision: u64) -> Result<RelationReport> {
    find_linear_relations_with(form, modulus, precision, Exec::default())
}

pub fn find_linear_relations_with(
    form: &QuadForm,
    modulus: u64,
    precision: u64,
    exec: Exec,
) -> Result<RelationReport> {
    let analysis = GroupAction::from_form(form, modulus)?.orbits();
    let funcs: Vec<((u64, u64), PeriodicFunction)> = sign_functions(&analysis).into_iter().collect();
    let opts = theta::ThetaOptions {
        exec: Exec::Sequential,
        waive_admissibility: false,
    };
    let computed = exec.try_map(funcs, |(rep, f)| {
        theta::theta_quadrant_with(form, &f, precision, &opts).map(|s| (rep, s))
    })?;
    let all_series: BTreeMap<(u64, u64), QSeries> = computed.into_iter().collect();

    let labels: Vec<(u64, u64)> = analysis
        .admissible()
        .filter(|o| o.partner.is_none_or(|p| o.representative() < p))
        .map(OrbitRecord::representative)
        .collect();
    let relations: Vec<CheckedRelation> = symbolic_relations(form, &analysis)
        .into_iter()
        .map(|r| CheckedRelation {
            holds: r.holds(&all_series),
            relation: r,
        })
        .collect();

    // every orbit series as a multiple of a labelled one
    let mut column: BTreeMap<(u64, u64), (usize, Rational)> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, (i, int(1))))
        .collect();
    for r in &relations {
        if r.relation.kind == RelationKind::Negation {
            let (partner, rep) = if column.contains_key(&r.relation.left) {
                (r.relation.right.expect("pair"), r.relation.left)
            } else {
                (r.relation.left, r.relation.right.expect("pair"))
            };
            let (i, f) = column[&rep].clone();
            column.insert(partner, (i, f * int(r.relation.sign as i64)));
        }
    }
    let width = labels.len();
    let mut explained: Vec<Vec<Rational>> = Vec::new();
    for r in &relations {
        let mut v = vec![Rational::zero(); width];
        let Some((i, f)) = column.get(&r.relation.left) else {
            continue;
        };
        v[*i] += f;
        if let Some(right) = r.relation.right {
            let Some((j, g)) = column.get(&right) else {
                continue;
            };
            v[*j] -= g * int(r.relation.sign as i64);
        }
        if v.iter().any(|x| !x.is_zero()) {
            explained.push(v);
        }
    }

    let series: Vec<QSeries> = labels.iter().map(|l| all_series[l].clone()).collect();
    let matrix: Vec<Vec<Rational>> = (0..precision)
        .map(|e| series.iter().map(|s| s.coeff(e)).collect())
        .collect();
    let kernel_basis = linalg::kernel(&matrix, width);
    let mut span = explained;
    let mut unexplained = Vec::new();
    for w in &kernel_basis {
        let before = linalg::rank(&span, width);
        span.push(w.clone());
        if linalg::rank(&span, width) == before {
            span.pop();
        } else {
            unexplained.push(w.clone());
        }
    }
    Ok(RelationReport {
        modulus,
        precision,
        labels,
        series,
        relations,
        kernel_basis,
        unexplained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: &str, b: &str, c: &str) -> QuadForm {
        QuadForm::parse(a, b, c).unwrap()
    }

    #[test]
    fn n7_relations() {
        let q = form("1", "3", "1");
        let report = find_linear_relations(&q, 7, 100).unwrap();
        assert_eq!(report.labels.len(), 4);
        assert!(report.all_relations_hold());
        assert_eq!(report.kernel_dim(), 0);
        assert!(report
            .relations
            .iter()
            .any(|r| r.relation.kind == RelationKind::Negation && r.relation.left == (1, 3)));
        assert!(report.relations.iter().any(|r| r.relation.kind == RelationKind::Tau));
    }

    #[test]
    fn vanishing_by_tau() {
        let q = form("1", "7/2", "1");
        let report = find_linear_relations(&q, 3, 100).unwrap();
        assert_eq!(report.labels, vec![(0, 1)]);
        assert!(report.series[0].is_zero());
        assert_eq!(report.kernel_dim(), 1);
        assert!(report.unexplained.is_empty());
        assert!(report.all_relations_hold());
    }

    #[test]
    fn minus_id_forces_vanishing() {
        // p = −3, r = −4: rp ≡ 2 mod 5
        let q = form("4", "6", "3");
        let analysis = GroupAction::from_form(&q, 5).unwrap().orbits();
        assert!(analysis.context.contains_minus_id);
        let rels = symbolic_relations(&q, &analysis);
        for o in analysis.admissible() {
            assert!(o.symmetric && o.parity == Parity::Even);
            assert!(rels.iter().any(|r| r.kind == RelationKind::EvenSymmetricZero
                && r.left == o.representative()));
        }
        let report = find_linear_relations(&q, 5, 60).unwrap();
        assert!(report.all_relations_hold());
        assert!(report.series.iter().all(QSeries::is_zero));
        assert!(report.unexplained.is_empty());
    }
}
