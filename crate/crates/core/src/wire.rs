//! JSON wire formats. Rationals travel as strings (`"5/2"`), so values
//! round-trip exactly.

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::hecke::{HeckeCoset, QuadLattice};
use crate::orbits::{OrbitRecord, Parity};
use crate::periodic::PeriodicFunction;
use crate::qseries::QSeries;
use crate::quadfield::QuadFieldElem;
use crate::quadform::QuadForm;
use crate::relations::RelationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl FormJson {
    pub fn from_form(q: &QuadForm) -> Self {
        FormJson {
            a: format_rational(q.a()),
            b: format_rational(q.b()),
            c: format_rational(q.c()),
        }
    }

    pub fn to_form(&self) -> Result<QuadForm> {
        QuadForm::parse(&self.a, &self.b, &self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub m: i64,
    pub n: i64,
    pub v: String,
}

/// `{"period": N, "values": [{"m":1,"n":0,"v":"1"}, ...]}`; residues not
/// listed are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub period: u64,
    pub values: Vec<ValueJson>,
}

impl FunctionJson {
    pub fn from_function(f: &PeriodicFunction) -> Self {
        FunctionJson {
            period: f.period(),
            values: f
                .support()
                .map(|(&(m, n), v)| ValueJson {
                    m: m as i64,
                    n: n as i64,
                    v: format_rational(v),
                })
                .collect(),
        }
    }

    pub fn to_function(&self) -> Result<PeriodicFunction> {
        if self.period == 0 {
            return Err(Error::InvalidInput("period must be positive".into()));
        }
        let entries = self
            .values
            .iter()
            .map(|e| Ok(((e.m, e.n), parse_rational(&e.v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicFunction::from_entries(self.period, entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: u64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub precision: u64,
    pub terms: Vec<TermJson>,
}

impl SeriesJson {
    pub fn from_series(s: &QSeries) -> Self {
        SeriesJson {
            precision: s.precision(),
            terms: s
                .terms()
                .map(|(exp, c)| TermJson {
                    exp,
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<QSeries> {
        if self.precision == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exp, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_terms(self.precision, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub x: String,
    pub y: String,
}

impl ElemJson {
    pub fn from_elem(z: &QuadFieldElem) -> Self {
        ElemJson {
            x: format_rational(&z.x),
            y: format_rational(&z.y),
        }
    }

    pub fn to_elem(&self, disc: &Rational) -> Result<QuadFieldElem> {
        Ok(QuadFieldElem::new(
            parse_rational(&self.x)?,
            parse_rational(&self.y)?,
            disc.clone(),
        ))
    }
}

/// `{"D":"21/4","basis":[{..},{..}],"shift":{..},"d":"1","epsilon":{..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(rename = "D")]
    pub disc: String,
    pub basis: [ElemJson; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ElemJson>,
    pub d: String,
    pub epsilon: ElemJson,
}

impl LatticeJson {
    pub fn from_coset(c: &HeckeCoset) -> Self {
        let (e1, e2) = c.lattice().basis();
        LatticeJson {
            disc: format_rational(c.lattice().disc()),
            basis: [ElemJson::from_elem(e1), ElemJson::from_elem(e2)],
            shift: Some(ElemJson::from_elem(c.shift())),
            d: format_rational(c.multiplier()),
            epsilon: ElemJson::from_elem(c.unit()),
        }
    }

    /// Validates every coset invariant; a missing shift means `γ = 0`.
    pub fn to_coset(&self) -> Result<HeckeCoset> {
        let disc = parse_rational(&self.disc)?;
        if disc <= Rational::from_integer(0.into()) {
            return Err(Error::InvalidInput("D must be positive".into()));
        }
        let lattice = QuadLattice::new(self.basis[0].to_elem(&disc)?, self.basis[1].to_elem(&disc)?)?;
        let shift = match &self.shift {
            Some(s) => s.to_elem(&disc)?,
            None => QuadFieldElem::zero(disc.clone()),
        };
        HeckeCoset::new(
            lattice,
            shift,
            parse_rational(&self.d)?,
            self.epsilon.to_elem(&disc)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub representative: [u64; 2],
    pub size: usize,
    pub points: Vec<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    pub admissible: bool,
    pub symmetric: bool,
    pub parity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<[u64; 2]>,
}

pub fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::NotApplicable => "n/a",
    }
}

impl OrbitJson {
    pub fn from_record(o: &OrbitRecord) -> Self {
        let pair = |(a, b): (u64, u64)| [a, b];
        OrbitJson {
            representative: pair(o.representative()),
            size: o.len(),
            points: o.points.iter().copied().map(pair).collect(),
            signs: o.signs.clone(),
            admissible: o.admissible,
            symmetric: o.symmetric,
            parity: parity_name(o.parity).to_string(),
            partner: o.partner.map(pair),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub kind: String,
    pub left: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<[u64; 2]>,
    pub sign: i8,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReportJson {
    pub modulus: u64,
    pub precision: u64,
    pub labels: Vec<[u64; 2]>,
    pub series: Vec<SeriesJson>,
    pub relations: Vec<RelationJson>,
    pub kernel_basis: Vec<Vec<String>>,
    pub unexplained: Vec<Vec<String>>,
}

impl RelationReportJson {
    pub fn from_report(r: &RelationReport) -> Self {
        let vecs = |vs: &[Vec<Rational>]| {
            vs.iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect()
        };
        RelationReportJson {
            modulus: r.modulus,
            precision: r.precision,
            labels: r.labels.iter().map(|&(a, b)| [a, b]).collect(),
            series: r.series.iter().map(SeriesJson::from_series).collect(),
            relations: r
                .relations
                .iter()
                .map(|c| RelationJson {
                    kind: c.relation.kind.name().to_string(),
                    left: [c.relation.left.0, c.relation.left.1],
                    right: c.relation.right.map(|(a, b)| [a, b]),
                    sign: c.relation.sign,
                    holds: c.holds,
                })
                .collect(),
            kernel_basis: vecs(&r.kernel_basis),
            unexplained: vecs(&r.unexplained),
        }
    }
}
