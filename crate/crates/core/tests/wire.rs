use indefinite_theta::catalog::chi3;
use indefinite_theta::hecke::qf_to_hecke;
use indefinite_theta::relations::find_linear_relations;
use indefinite_theta::theta::theta_quadrant;
use indefinite_theta::wire::{FormJson, FunctionJson, LatticeJson, OrbitJson, RelationReportJson, SeriesJson};
use indefinite_theta::{GroupAction, QuadForm};

fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned>(value: &T) -> T {
    serde_json::from_str(&serde_json::to_string(value).unwrap()).unwrap()
}

#[test]
fn form_schema() {
    let json = r#"{"a":"1","b":"5/2","c":"1"}"#;
    let parsed: FormJson = serde_json::from_str(json).unwrap();
    let q = parsed.to_form().unwrap();
    assert_eq!(q, QuadForm::parse("1", "5/2", "1").unwrap());
    assert_eq!(serde_json::to_string(&FormJson::from_form(&q)).unwrap(), json);
}

#[test]
fn invalid_form_is_rejected() {
    let parsed: FormJson = serde_json::from_str(r#"{"a":"1","b":"1","c":"1"}"#).unwrap();
    assert!(parsed.to_form().is_err());
    assert!(serde_json::from_str::<FormJson>(r#"{"a":"1","b":"5/2"}"#).is_err());
}

#[test]
fn function_schema() {
    let json = r#"{"period":3,"values":[{"m":0,"n":1,"v":"1"},{"m":0,"n":2,"v":"-1"},{"m":1,"n":0,"v":"1"},{"m":1,"n":1,"v":"-1"},{"m":2,"n":0,"v":"-1"},{"m":2,"n":2,"v":"1"}]}"#;
    let parsed: FunctionJson = serde_json::from_str(json).unwrap();
    let f = parsed.to_function().unwrap();
    assert_eq!(f, chi3(1));
    assert_eq!(serde_json::to_string(&FunctionJson::from_function(&f)).unwrap(), json);
}

#[test]
fn function_entries_reduce_mod_period() {
    let json = r#"{"period":3,"values":[{"m":-2,"n":4,"v":"1/2"}]}"#;
    let f = serde_json::from_str::<FunctionJson>(json).unwrap().to_function().unwrap();
    assert_eq!(f.get(1, 1), indefinite_theta::arith::rat(1, 2));
}

#[test]
fn series_schema() {
    let q = QuadForm::parse("1", "5/2", "1").unwrap();
    let s = theta_quadrant(&q, &chi3(1), 9).unwrap();
    let j = SeriesJson::from_series(&s);
    assert_eq!(
        serde_json::to_string(&j).unwrap(),
        r#"{"precision":9,"terms":[{"exp":1,"coeff":"2"},{"exp":4,"coeff":"-2"},{"exp":7,"coeff":"-2"}]}"#
    );
    assert_eq!(roundtrip(&j).to_series().unwrap(), s);
}

#[test]
fn lattice_schema_roundtrips_every_coset() {
    let q = QuadForm::parse("1", "3", "1").unwrap();
    let analysis = GroupAction::from_form(&q, 7).unwrap().orbits();
    for o in analysis.admissible() {
        let fw = qf_to_hecke(&q, &o.sign_function(7).unwrap(), 10).unwrap();
        for coset in fw.decomposition.cosets(&q).unwrap() {
            let j = LatticeJson::from_coset(&coset);
            assert_eq!(roundtrip(&j).to_coset().unwrap(), coset);
        }
    }
}

#[test]
fn lattice_schema_example() {
    let json = r#"{"D":"21/4","basis":[{"x":"5/2","y":"1"},{"x":"1","y":"0"}],"d":"1","epsilon":{"x":"23/2","y":"5"}}"#;
    let j: LatticeJson = serde_json::from_str(json).unwrap();
    let coset = j.to_coset().unwrap();
    assert!(coset.shift().is_zero());
    assert_eq!(coset.unit().norm(), indefinite_theta::arith::int(1));
}

#[test]
fn lattice_with_bad_unit_is_rejected() {
    let json = r#"{"D":"21/4","basis":[{"x":"5/2","y":"1"},{"x":"1","y":"0"}],"d":"1","epsilon":{"x":"2","y":"0"}}"#;
    let j: LatticeJson = serde_json::from_str(json).unwrap();
    assert!(j.to_coset().is_err());
}

#[test]
fn orbit_and_report_output_is_deterministic() {
    let q = QuadForm::parse("1", "3", "1").unwrap();
    let render = || {
        let analysis = GroupAction::from_form(&q, 7).unwrap().orbits();
        let orbits: Vec<OrbitJson> = analysis.orbits.iter().map(OrbitJson::from_record).collect();
        let report = RelationReportJson::from_report(&find_linear_relations(&q, 7, 60).unwrap());
        (
            serde_json::to_string(&orbits).unwrap(),
            serde_json::to_string(&report).unwrap(),
        )
    };
    let first = render();
    assert_eq!(first, render());
    let orbits: Vec<OrbitJson> = serde_json::from_str(&first.0).unwrap();
    assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), 49);
    let report: RelationReportJson = serde_json::from_str(&first.1).unwrap();
    assert_eq!(report.labels.len(), 4);
}
