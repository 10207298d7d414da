mod common;

use bisector::json::{self, AnalysisDocument};
use bisector::{Field, StandardFormField};
use common::*;
use proptest::prelude::*;
use serde_json::json;

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![
        Field::Rational,
        Field::Real,
        Field::Prime(5),
        Field::Prime(7),
        Field::Prime(11),
    ])
}

fn fixed_point(doc: &AnalysisDocument) -> Result<(), TestCaseError> {
    let text = serde_json::to_string_pretty(&doc.to_json()).unwrap();
    let back = AnalysisDocument::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    prop_assert_eq!(&back, doc);
    prop_assert_eq!(serde_json::to_string_pretty(&back.to_json()).unwrap(), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn quadrilateral_documents_round_trip(f in field(), seed in any::<u64>()) {
        let q = random_quadrilateral(f, &mut rng(seed));
        fixed_point(&AnalysisDocument::analyze_quadrilateral(&q).unwrap())?;
    }

    #[test]
    fn triple_documents_round_trip(f in field(), seed in any::<u64>()) {
        let t = random_triple(f, &mut rng(seed));
        fixed_point(&AnalysisDocument::analyze_triple(&t).unwrap())?;
    }
}

#[test]
fn header_names_field_and_version() {
    let t = StandardFormField::from_ints(Field::Prime(7), 0, 1, 2).unwrap();
    let v = AnalysisDocument::analyze_triple(&t).unwrap().to_json();
    assert_eq!(v["field"], json!("prime:7"));
    assert_eq!(v["tool"], json!("bisector"));
    assert_eq!(v["version"], json!(bisector::VERSION));
    assert_eq!(
        v["standard_form"],
        json!({ "h": "0", "k": "1", "mu": "2", "class": "cubic" })
    );
}

#[test]
fn boundary_coefficients_are_named_monomials() {
    let t = StandardFormField::parse(Field::Rational, "0", "1/2", "-1").unwrap();
    let v = json::boundary_to_json(&bisector::boundary::boundary(&t).unwrap());
    assert_eq!(v["variant"], json!("quartic"));
    assert_eq!(v["coeffs"]["X4"], json!("1"));
    assert_eq!(v["coeffs"]["X2Y"], json!("10"));
    assert_eq!(v["coeffs"]["Y"], json!("-8"));
}

#[test]
fn real_mode_has_no_singular_point_list() {
    let t = StandardFormField::parse(Field::Real, "0", "1/2", "-1").unwrap();
    let doc = AnalysisDocument::analyze_triple(&t).unwrap();
    assert!(doc.singular_points.is_none());
    assert_eq!(doc.to_json()["singular_points"], serde_json::Value::Null);
}

#[test]
fn malformed_documents_are_parse_errors() {
    let f = Field::Rational;
    assert!(matches!(
        json::line_from_json(f, &json!({ "t": "1", "u": "x", "v": "0" })),
        Err(bisector::Error::Parse(_))
    ));
    assert!(matches!(
        json::quad_from_json(f, &json!({ "A": { "t": "1", "u": "0", "v": "0" } })),
        Err(bisector::Error::Parse(_))
    ));
    assert!(matches!(
        json::affine_from_json(f, &json!({ "m": [[1, 0]], "tr": [0, 0] })),
        Err(bisector::Error::Parse(_))
    ));
}
