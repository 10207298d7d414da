//! JSON encoding of the core types and the analysis document.
//!
//! Field elements are strings ("a/b" for rationals, decimal residues for
//! GF(p)). Every document carries a header with the tool name, version and
//! field descriptor. Maps use sorted keys so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::boundary::{boundary, boundary_of_quadrilateral, singular_points, BoundaryCurve};
use crate::dual::{reduce_dual, BisectorFieldClass, FieldPolynomials};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::BinaryForm;
use crate::plane::{AffineMap, Line, Quadrilateral};
use crate::poly::{monomial_name, MPoly};
use crate::standard::{standardize, StandardFormField};

pub const TOOL: &str = "bisector";

fn bad(what: &str) -> Error {
    Error::Parse(what.to_string())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(&format!("missing key {key:?}")))
}

pub fn header(field: Field) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(crate::VERSION));
    m.insert("field".into(), json!(field.to_string()));
    m
}

/// The field named in a document header, if any.
pub fn document_field(doc: &Value) -> Result<Option<Field>> {
    match doc.get("field") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => s.parse().map(Some),
        Some(_) => Err(bad("field must be a string")),
    }
}

pub fn element(x: &FieldElement) -> Value {
    Value::String(x.to_string())
}

/// Accepts "a/b" strings and JSON integers.
pub fn parse_element(field: Field, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse(&n.to_string()),
        _ => Err(bad(&format!("expected a field element, found {v}"))),
    }
}

pub fn line_to_json(l: &Line) -> Value {
    json!({ "t": element(l.t()), "u": element(l.u()), "v": element(l.v()) })
}

pub fn line_from_json(field: Field, v: &Value) -> Result<Line> {
    Line::new(
        parse_element(field, get(v, "t")?)?,
        parse_element(field, get(v, "u")?)?,
        parse_element(field, get(v, "v")?)?,
    )
}

pub fn quad_to_json(q: &Quadrilateral) -> Value {
    json!({
        "A": line_to_json(q.a()),
        "B": line_to_json(q.b()),
        "A1": line_to_json(q.a1()),
        "B1": line_to_json(q.b1()),
    })
}

/// Parses the four sides. Geometric validation errors pass through unchanged
/// so callers can tell a malformed document from an invalid quadrilateral.
pub fn quad_from_json(field: Field, v: &Value) -> Result<Quadrilateral> {
    let side = |k| line_from_json(field, get(v, k)?);
    let (a, b, a1, b1) = (side("A")?, side("B")?, side("A1")?, side("B1")?);
    Quadrilateral::new(a, b, a1, b1)
}

pub fn affine_to_json(m: &AffineMap) -> Value {
    let [[a, b], [c, d]] = m.matrix();
    let [e, f] = m.translation_part();
    json!({
        "m": [[element(a), element(b)], [element(c), element(d)]],
        "tr": [element(e), element(f)],
    })
}

pub fn affine_from_json(field: Field, v: &Value) -> Result<AffineMap> {
    let el = |x: Option<&Value>| parse_element(field, x.ok_or_else(|| bad("short affine map"))?);
    let m = get(v, "m")?;
    let tr = get(v, "tr")?;
    let row = |i: usize| m.get(i).ok_or_else(|| bad("short affine matrix"));
    AffineMap::new(
        el(row(0)?.get(0))?,
        el(row(0)?.get(1))?,
        el(row(1)?.get(0))?,
        el(row(1)?.get(1))?,
        el(tr.get(0))?,
        el(tr.get(1))?,
    )
}

pub fn triple_to_json(f: &StandardFormField) -> Value {
    json!({ "h": element(f.h()), "k": element(f.k()), "mu": element(f.mu()), "class": f.class().name() })
}

/// Parses {"h","k","mu"}; a "class" tag, if present, must agree.
pub fn triple_from_json(field: Field, v: &Value) -> Result<StandardFormField> {
    let f = StandardFormField::new(
        parse_element(field, get(v, "h")?)?,
        parse_element(field, get(v, "k")?)?,
        parse_element(field, get(v, "mu")?)?,
    )?;
    check_class(v, f.class())?;
    Ok(f)
}

fn check_class(v: &Value, class: BisectorFieldClass) -> Result<()> {
    match v.get("class") {
        None => Ok(()),
        Some(Value::String(s)) if s == class.name() => Ok(()),
        Some(other) => Err(bad(&format!(
            "class tag {other} does not match computed class {class}"
        ))),
    }
}

pub fn form_to_json(b: &BinaryForm) -> Value {
    json!({ "degree": b.degree(), "coeffs": b.coeffs().iter().map(element).collect::<Vec<_>>() })
}

pub fn form_from_json(field: Field, v: &Value) -> Result<BinaryForm> {
    let degree = get(v, "degree")?
        .as_u64()
        .ok_or_else(|| bad("degree must be an integer"))? as usize;
    let coeffs = get(v, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("coeffs must be an array"))?
        .iter()
        .map(|c| parse_element(field, c))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != degree + 1 {
        return Err(bad("coefficient count does not match degree"));
    }
    Ok(BinaryForm::new(field, coeffs))
}

pub fn polynomials_to_json(fp: &FieldPolynomials) -> Value {
    json!({
        "class": fp.class().name(),
        "Phi": form_to_json(fp.shape()),
        "Psi": form_to_json(fp.position()),
        "phi": form_to_json(fp.phi()),
        "psi": form_to_json(fp.psi()),
    })
}

/// Rebuilds from Φ and Ψ; the stored reduced pair and class must match.
pub fn polynomials_from_json(field: Field, v: &Value) -> Result<FieldPolynomials> {
    let fp = reduce_dual(
        &form_from_json(field, get(v, "Phi")?)?,
        &form_from_json(field, get(v, "Psi")?)?,
    )?;
    if &form_from_json(field, get(v, "phi")?)? != fp.phi()
        || &form_from_json(field, get(v, "psi")?)? != fp.psi()
    {
        return Err(bad("reduced pair does not match Phi and Psi"));
    }
    check_class(v, fp.class())?;
    Ok(fp)
}

const XY: [&str; 2] = ["X", "Y"];

pub fn mpoly_coeffs(p: &MPoly) -> Value {
    let m: Map<String, Value> = p
        .terms()
        .map(|(e, c)| (monomial_name(e, &XY), element(c)))
        .collect();
    Value::Object(m)
}

fn parse_monomial(name: &str) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; 2];
    if name == "1" {
        return Ok(exps);
    }
    let mut chars = name.chars().peekable();
    while let Some(c) = chars.next() {
        let i = XY
            .iter()
            .position(|n| n.starts_with(c))
            .ok_or_else(|| bad(&format!("bad monomial {name:?}")))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        exps[i] += if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| bad(name))?
        };
    }
    Ok(exps)
}

pub fn mpoly_from_coeffs(field: Field, v: &Value) -> Result<MPoly> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("coeffs must be an object"))?;
    let terms = obj
        .iter()
        .map(|(k, c)| Ok((parse_element(field, c)?, parse_monomial(k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MPoly::from_terms(field, 2, terms))
}

pub fn boundary_to_json(b: &BoundaryCurve) -> Value {
    match b {
        BoundaryCurve::Point(x, y) => {
            json!({ "variant": "point", "point": [element(x), element(y)] })
        }
        BoundaryCurve::Parabola(p) | BoundaryCurve::Quartic(p) => {
            json!({ "variant": b.variant(), "coeffs": mpoly_coeffs(p) })
        }
    }
}

pub fn boundary_from_json(field: Field, v: &Value) -> Result<BoundaryCurve> {
    match get(v, "variant")?.as_str() {
        Some("point") => {
            let pt = get(v, "point")?;
            let el = |i: usize| parse_element(field, pt.get(i).ok_or_else(|| bad("short point"))?);
            Ok(BoundaryCurve::Point(el(0)?, el(1)?))
        }
        Some("parabola") => Ok(BoundaryCurve::Parabola(mpoly_from_coeffs(
            field,
            get(v, "coeffs")?,
        )?)),
        Some("quartic") => Ok(BoundaryCurve::Quartic(mpoly_from_coeffs(
            field,
            get(v, "coeffs")?,
        )?)),
        _ => Err(bad("unknown boundary variant")),
    }
}

fn points_to_json(pts: &[(FieldElement, FieldElement)]) -> Value {
    Value::Array(
        pts.iter()
            .map(|(x, y)| json!([element(x), element(y)]))
            .collect(),
    )
}

fn points_from_json(field: Field, v: &Value) -> Result<Vec<(FieldElement, FieldElement)>> {
    v.as_array()
        .ok_or_else(|| bad("points must be an array"))?
        .iter()
        .map(|p| {
            let el = |i: usize| parse_element(field, p.get(i).ok_or_else(|| bad("short point"))?);
            Ok((el(0)?, el(1)?))
        })
        .collect()
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalysisInput {
    Quadrilateral(Quadrilateral),
    Triple(StandardFormField),
}

/// Everything computed about one bisector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisDocument {
    pub field: Field,
    pub input: AnalysisInput,
    pub polynomials: FieldPolynomials,
    pub standard_form: StandardFormField,
    /// Map taking the input quadrilateral to standard position.
    pub standardizer: Option<AffineMap>,
    pub boundary: BoundaryCurve,
    pub well_centered: bool,
    pub pencils: usize,
    /// Finite singular points of a quartic boundary; `None` when not computed.
    pub singular_points: Option<Vec<(FieldElement, FieldElement)>>,
}

fn singular_in_input_coords(
    f: &StandardFormField,
    m: Option<&AffineMap>,
) -> Option<Vec<(FieldElement, FieldElement)>> {
    if f.class() != BisectorFieldClass::Cubic {
        return Some(Vec::new());
    }
    let pts = singular_points(f).ok()?;
    let inv = m.map(AffineMap::inverse);
    Some(
        pts.into_iter()
            .map(|(x, y)| match &inv {
                Some(i) => i.apply(&x, &y),
                None => (x, y),
            })
            .collect(),
    )
}

impl AnalysisDocument {
    pub fn analyze_quadrilateral(q: &Quadrilateral) -> Result<AnalysisDocument> {
        let polynomials = FieldPolynomials::from_quadrilateral(q)?;
        let (m, f) = standardize(q)?;
        Ok(AnalysisDocument {
            field: q.field(),
            input: AnalysisInput::Quadrilateral(q.clone()),
            pencils: polynomials.count_parallel_pencils(),
            polynomials,
            boundary: boundary_of_quadrilateral(q)?,
            well_centered: f.well_centered(),
            singular_points: singular_in_input_coords(&f, Some(&m)),
            standardizer: Some(m),
            standard_form: f,
        })
    }

    pub fn analyze_triple(f: &StandardFormField) -> Result<AnalysisDocument> {
        let polynomials = f.polynomials();
        Ok(AnalysisDocument {
            field: f.field(),
            input: AnalysisInput::Triple(f.clone()),
            pencils: polynomials.count_parallel_pencils(),
            polynomials,
            boundary: boundary(f)?,
            well_centered: f.well_centered(),
            singular_points: singular_in_input_coords(f, None),
            standardizer: None,
            standard_form: f.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut m = header(self.field);
        let input = match &self.input {
            AnalysisInput::Quadrilateral(q) => json!({ "quadrilateral": quad_to_json(q) }),
            AnalysisInput::Triple(f) => json!({ "triple": triple_to_json(f) }),
        };
        m.insert("input".into(), input);
        m.insert("class".into(), json!(self.standard_form.class().name()));
        m.insert("polynomials".into(), polynomials_to_json(&self.polynomials));
        m.insert("standard_form".into(), triple_to_json(&self.standard_form));
        m.insert(
            "standardizer".into(),
            self.standardizer
                .as_ref()
                .map_or(Value::Null, affine_to_json),
        );
        m.insert("boundary".into(), boundary_to_json(&self.boundary));
        m.insert("well_centered".into(), json!(self.well_centered));
        m.insert("parallel_pencils".into(), json!(self.pencils));
        m.insert(
            "singular_points".into(),
            self.singular_points
                .as_deref()
                .map_or(Value::Null, points_to_json),
        );
        Value::Object(m)
    }

    /// Reads back a document produced by [`AnalysisDocument::to_json`].
    pub fn from_json(v: &Value) -> Result<AnalysisDocument> {
        let field = document_field(v)?.ok_or_else(|| bad("document has no field header"))?;
        let input_v = get(v, "input")?;
        let input = if let Some(q) = input_v.get("quadrilateral") {
            AnalysisInput::Quadrilateral(quad_from_json(field, q)?)
        } else {
            AnalysisInput::Triple(triple_from_json(field, get(input_v, "triple")?)?)
        };
        let standard_form = triple_from_json(field, get(v, "standard_form")?)?;
        check_class(v, standard_form.class())?;
        let standardizer = match get(v, "standardizer")? {
            Value::Null => None,
            s => Some(affine_from_json(field, s)?),
        };
        let singular_points = match get(v, "singular_points")? {
            Value::Null => None,
            s => Some(points_from_json(field, s)?),
        };
        Ok(AnalysisDocument {
            field,
            input,
            polynomials: polynomials_from_json(field, get(v, "polynomials")?)?,
            standard_form,
            standardizer,
            boundary: boundary_from_json(field, get(v, "boundary")?)?,
            well_centered: get(v, "well_centered")?
                .as_bool()
                .ok_or_else(|| bad("well_centered must be a bool"))?,
            pencils: get(v, "parallel_pencils")?
                .as_u64()
                .ok_or_else(|| bad("parallel_pencils must be an integer"))?
                as usize,
            singular_points,
        })
    }
}
