//! `itheta`: command-line front end for the indefinite theta engine.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 verification
//! failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indefinite_theta::arith::format_rational;
use indefinite_theta::catalog::{run_example, EXAMPLE_IDS};
use indefinite_theta::hecke::{hecke_to_qf, qf_to_hecke, theta_hecke};
use indefinite_theta::orbits::{minus_id_residues, GroupAction};
use indefinite_theta::relations::find_linear_relations;
use indefinite_theta::theta::{theta_quadrant_with, theta_sector_with, ThetaOptions};
use indefinite_theta::wire::{
    parity_name, FormJson, FunctionJson, LatticeJson, OrbitJson, RelationReportJson, SeriesJson,
};
use indefinite_theta::{PeriodicFunction, QSeries, QuadForm, DEFAULT_PRECISION};
use serde::de::DeserializeOwned;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "itheta",
    version,
    about = "Exact indefinite theta series of binary quadratic forms",
    after_help = "Exit status: 0 success, 1 usage error, 2 input error, 3 verification failure.\n\
Rationals in JSON files are strings such as \"5/2\"; forms are {\"a\",\"b\",\"c\"} with Q = am^2 + 2bmn + cn^2."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbits of the group generated by A and B on (Z/N)^2.
    Orbits {
        #[arg(long, value_name = "Q.json")]
        form: PathBuf,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        period: u64,
        #[arg(long)]
        json: bool,
    },
    /// Theta series of a form and an admissible coefficient function.
    Theta {
        #[arg(long, value_name = "Q.json")]
        form: PathBuf,
        #[arg(long = "fn", value_name = "f.json")]
        function: PathBuf,
        #[command(flatten)]
        prec: Precision,
        #[arg(long, value_enum, default_value_t = Method::Quadrant)]
        method: Method,
        /// Skip the admissibility check (the result is then not a theorem).
        #[arg(long)]
        waive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Hecke's theta series of a lattice coset.
    Hecke {
        #[arg(long, value_name = "L.json")]
        lattice: PathBuf,
        #[command(flatten)]
        prec: Precision,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a quadrant series into Hecke cosets.
    ToHecke {
        #[arg(long, value_name = "Q.json")]
        form: PathBuf,
        #[arg(long = "fn", value_name = "f.json")]
        function: PathBuf,
        #[command(flatten)]
        prec: Precision,
        /// Exit with status 3 unless both sides agree.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a Hecke series as a quadrant series.
    FromHecke {
        #[arg(long, value_name = "L.json")]
        lattice: PathBuf,
        #[command(flatten)]
        prec: Precision,
        /// Exit with status 3 unless both sides agree.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Symbolic relations and the kernel of the orbit series.
    Relations {
        #[arg(long, value_name = "Q.json")]
        form: PathBuf,
        /// Defaults to the period of --fn when given.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        period: Option<u64>,
        #[arg(long = "fn", value_name = "f.json")]
        function: Option<PathBuf>,
        #[command(flatten)]
        prec: Precision,
        #[arg(long)]
        json: bool,
    },
    /// Whether -id lies in the group mod N.
    MinusId {
        #[command(flatten)]
        source: ReflectionSource,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        period: u64,
        #[arg(long)]
        json: bool,
    },
    /// Residues rp mod N for which -id lies in the group, N an odd prime.
    Residues {
        #[arg(long, value_name = "N")]
        period: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the canned examples and check their claims.
    Examples {
        /// One of n3, n5a, n5b, n7, ex4; all when omitted.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        prec: Precision,
    },
}

#[derive(Args)]
struct Precision {
    /// Truncation order M: series are computed mod q^M.
    #[arg(long = "prec", value_name = "M", default_value_t = DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u64).range(1..))]
    value: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReflectionSource {
    /// Use p = 1 and r = k, so that rp = k.
    #[arg(long, value_name = "k", allow_negative_numbers = true)]
    rp: Option<i64>,
    #[arg(long, value_name = "Q.json")]
    form: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Quadrant,
    Sector,
    Both,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<indefinite_theta::Error> for Failure {
    fn from(e: indefinite_theta::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_form(path: &Path) -> Result<QuadForm, Failure> {
    Ok(read_json::<FormJson>(path)?.to_form()?)
}

fn read_function(path: &Path) -> Result<PeriodicFunction, Failure> {
    Ok(read_json::<FunctionJson>(path)?.to_function()?)
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn series_json(s: &QSeries) -> serde_json::Value {
    serde_json::to_value(SeriesJson::from_series(s)).expect("serializable")
}

fn orbits(form: &Path, period: u64, as_json: bool) -> Outcome {
    let q = read_form(form)?;
    let analysis = GroupAction::from_form(&q, period)?.orbits();
    if as_json {
        let records: Vec<OrbitJson> = analysis.orbits.iter().map(OrbitJson::from_record).collect();
        return Ok(pretty(&records));
    }
    let ctx = &analysis.context;
    let mut out = format!(
        "Q = {q}, N = {period}, ord(AB) = {}, -id in G_N: {}\n",
        ctx.ab_order, ctx.contains_minus_id
    );
    writeln!(out, "{:<14} {:>5}  {:<10} {:<9} {:<6} partner", "representative", "size", "admissible", "symmetric", "parity").unwrap();
    for o in &analysis.orbits {
        let partner = o.partner.map_or("-".to_string(), |p| format!("{p:?}"));
        writeln!(
            out,
            "{:<14} {:>5}  {:<10} {:<9} {:<6} {partner}",
            format!("{:?}", o.representative()),
            o.len(),
            o.admissible,
            o.symmetric,
            parity_name(o.parity),
        )
        .unwrap();
    }
    Ok(out)
}

fn theta(form: &Path, function: &Path, prec: u64, method: Method, waive: bool, as_json: bool) -> Outcome {
    let q = read_form(form)?;
    let f = read_function(function)?;
    let opts = ThetaOptions {
        waive_admissibility: waive,
        ..Default::default()
    };
    let quadrant = match method {
        Method::Sector => None,
        _ => Some(theta_quadrant_with(&q, &f, prec, &opts)?),
    };
    let sector = match method {
        Method::Quadrant => None,
        _ => Some(theta_sector_with(&q, &f, prec, &opts)?),
    };
    let equal = match (&quadrant, &sector) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let out = if as_json {
        let mut v = serde_json::Map::new();
        if let Some(s) = &quadrant {
            v.insert("quadrant".into(), series_json(s));
        }
        if let Some(s) = &sector {
            v.insert("sector".into(), series_json(s));
        }
        if let Some(e) = equal {
            v.insert("equal".into(), e.into());
        }
        pretty(&v)
    } else {
        let mut out = String::new();
        match (&quadrant, &sector) {
            (Some(a), Some(b)) => {
                writeln!(out, "quadrant: {a}\nsector:   {b}\nequal: {}", a == b).unwrap();
            }
            (Some(s), None) | (None, Some(s)) => writeln!(out, "{s}").unwrap(),
            (None, None) => unreachable!("some method is selected"),
        }
        out
    };
    match equal {
        Some(false) => Err(Failure::Verification(out)),
        _ => Ok(out),
    }
}

fn hecke(lattice: &Path, prec: u64, as_json: bool) -> Outcome {
    let coset = read_json::<LatticeJson>(lattice)?.to_coset()?;
    let s = theta_hecke(&coset, prec)?;
    Ok(if as_json { pretty(&SeriesJson::from_series(&s)) } else { format!("{s}\n") })
}

fn verdict(out: String, holds: bool, verify: bool) -> Outcome {
    if verify && !holds {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn to_hecke(form: &Path, function: &Path, prec: u64, verify: bool, as_json: bool) -> Outcome {
    let q = read_form(form)?;
    let f = read_function(function)?;
    let fw = qf_to_hecke(&q, &f, prec)?;
    let d = &fw.decomposition;
    let cosets = d.cosets(&q)?;
    let out = if as_json {
        pretty(&json!({
            "sublattice_basis": d.sublattice_basis,
            "shifts": d.shifts,
            "index": d.index,
            "cosets": cosets.iter().map(LatticeJson::from_coset).collect::<Vec<_>>(),
            "scaled_theta": series_json(&fw.scaled_theta),
            "hecke_sum": series_json(&fw.hecke_sum),
            "holds": fw.holds,
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "Lambda_1 basis: {:?}", d.sublattice_basis).unwrap();
        writeln!(out, "shifts: {:?}", d.shifts).unwrap();
        writeln!(out, "[G:G_0] = {}, d = {}", d.index, format_rational(&d.multiplier)).unwrap();
        writeln!(out, "{} * Theta_Q,f = {}", d.index, fw.scaled_theta).unwrap();
        writeln!(out, "sum of Hecke series = {}", fw.hecke_sum).unwrap();
        match fw.first_mismatch {
            None => writeln!(out, "verified: true").unwrap(),
            Some(e) => writeln!(out, "verified: false (first mismatch at q^{e})").unwrap(),
        }
        out
    };
    verdict(out, fw.holds, verify)
}

fn from_hecke(lattice: &Path, prec: u64, verify: bool, as_json: bool) -> Outcome {
    let coset = read_json::<LatticeJson>(lattice)?.to_coset()?;
    let rev = hecke_to_qf(&coset, prec)?;
    let out = if as_json {
        pretty(&json!({
            "form": FormJson::from_form(&rev.form),
            "function": FunctionJson::from_function(&rev.function),
            "scale": rev.scale,
            "admissible": rev.admissible,
            "hecke": series_json(&rev.hecke),
            "quadrant": series_json(&rev.quadrant),
            "holds": rev.holds,
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "Q'' = {}, scale M0 = {}, period {}", rev.form, rev.scale, rev.function.period()).unwrap();
        writeln!(out, "f'' admissible: {}, support size {}", rev.admissible, rev.function.support_len()).unwrap();
        writeln!(out, "Hecke:    {}", rev.hecke).unwrap();
        writeln!(out, "quadrant: {}", rev.quadrant).unwrap();
        writeln!(out, "verified: {}", rev.holds).unwrap();
        out
    };
    verdict(out, rev.holds, verify)
}

fn relations(form: &Path, period: Option<u64>, function: Option<&Path>, prec: u64, as_json: bool) -> Outcome {
    let q = read_form(form)?;
    let n = match (period, function) {
        (Some(n), _) => n,
        (None, Some(path)) => read_function(path)?.period(),
        (None, None) => return Err(Failure::Input("relations needs --period or --fn".into())),
    };
    let report = find_linear_relations(&q, n, prec)?;
    let out = if as_json {
        pretty(&RelationReportJson::from_report(&report))
    } else {
        let mut out = format!("Q = {q}, N = {n}, M = {prec}\n");
        for (label, s) in report.labels.iter().zip(&report.series) {
            writeln!(out, "Theta[{label:?}] = {}", s.truncate(prec.min(40))).unwrap();
        }
        for r in &report.relations {
            let rel = &r.relation;
            let rhs = match rel.right {
                Some(x) => format!("{}Theta[{x:?}]", if rel.sign < 0 { "-" } else { "" }),
                None => "0".to_string(),
            };
            writeln!(out, "{:<20} Theta[{:?}] = {rhs}  holds: {}", rel.kind.name(), rel.left, r.holds).unwrap();
        }
        writeln!(out, "kernel dimension: {}", report.kernel_dim()).unwrap();
        for v in &report.unexplained {
            let v: Vec<String> = v.iter().map(format_rational).collect();
            writeln!(out, "candidate relation valid to q^{prec}: [{}]", v.join(", ")).unwrap();
        }
        out
    };
    if report.all_relations_hold() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn minus_id(source: &ReflectionSource, period: u64, as_json: bool) -> Outcome {
    let action = match (&source.rp, &source.form) {
        (Some(k), _) => GroupAction::new(1, *k, period)?,
        (None, Some(path)) => GroupAction::from_form(&read_form(path)?, period)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let ctx = action.context();
    Ok(if as_json {
        pretty(&json!({
            "p": action.p(),
            "r": action.r(),
            "period": period,
            "ab_order": ctx.ab_order,
            "contains_minus_id": ctx.contains_minus_id,
        }))
    } else {
        format!(
            "p = {}, r = {}, N = {period}: ord(AB) = {}, -id in G_N: {}\n",
            action.p(),
            action.r(),
            ctx.ab_order,
            ctx.contains_minus_id
        )
    })
}

fn residues(period: u64, as_json: bool) -> Outcome {
    let res = minus_id_residues(period)?;
    let out = if as_json {
        pretty(&json!({
            "period": res.modulus,
            "with_minus_id": res.with_minus_id,
            "without_minus_id": res.without_minus_id,
            "predicted_count": res.predicted_count,
            "count_matches": res.count_matches(),
        }))
    } else {
        format!(
            "N = {}\n-id in G_N for rp = {:?}\n-id not in G_N for rp = {:?}\ncount {} (predicted {}): {}\n",
            res.modulus,
            res.with_minus_id,
            res.without_minus_id,
            res.with_minus_id.len(),
            res.predicted_count,
            if res.count_matches() { "PASS" } else { "FAIL" }
        )
    };
    if res.count_matches() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn examples(id: Option<&str>, prec: u64) -> Outcome {
    let ids: Vec<&str> = match id {
        Some(id) => vec![id],
        None => EXAMPLE_IDS.to_vec(),
    };
    let mut out = String::new();
    let mut all = true;
    for id in ids {
        for claim in run_example(id, prec)? {
            all &= claim.pass;
            writeln!(out, "{}: [{id}] {}", if claim.pass { "PASS" } else { "FAIL" }, claim.description).unwrap();
        }
    }
    if all {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Orbits { form, period, json } => orbits(&form, period, json),
        Command::Theta { form, function, prec, method, waive, json } => {
            theta(&form, &function, prec.value, method, waive, json)
        }
        Command::Hecke { lattice, prec, json } => hecke(&lattice, prec.value, json),
        Command::ToHecke { form, function, prec, verify, json } => {
            to_hecke(&form, &function, prec.value, verify, json)
        }
        Command::FromHecke { lattice, prec, verify, json } => from_hecke(&lattice, prec.value, verify, json),
        Command::Relations { form, period, function, prec, json } => {
            relations(&form, period, function.as_deref(), prec.value, json)
        }
        Command::MinusId { source, period, json } => minus_id(&source, period, json),
        Command::Residues { period, json } => residues(period, json),
        Command::Examples { id, prec } => examples(id.as_deref(), prec.value),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            eprintln!("verification failed");
            ExitCode::from(3)
        }
    }
}
