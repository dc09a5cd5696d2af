//! JSON encodings of fields, scalars, polynomials, matrices, maps, witnesses
//! and classes.
//!
//! Objects are `serde_json` maps with sorted keys, so encodings are byte
//! stable. Scalars of ℚ and prime fields are written as decimal strings
//! (`"3"`, `"-1/2"`); elements of extension fields as digit arrays in the
//! generator, low to high. Inputs additionally accept plain JSON integers.

use serde_json::{json, Map, Value};

use crate::birat::{ProjMap, StepKind, Witness, WitnessStep};
use crate::classify::BirClass;
use crate::error::{Error, Result};
use crate::expmat::{Failure, PolyMatrix, VerifyReport};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::ppoly::PPoly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("{what} must be an integer")))
}

pub fn field_to_json(f: &Field) -> Value {
    if !f.is_finite() {
        return json!({ "char": 0 });
    }
    match f.modulus() {
        Some(m) => json!({ "char": f.characteristic(), "degree": f.degree(), "modulus": m }),
        None => json!({ "char": f.characteristic(), "degree": 1 }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let p = as_u64(get(v, "char")?, "char")?;
    if p == 0 {
        return Ok(Field::rationals());
    }
    let degree = match v.get("degree") {
        Some(d) => as_u64(d, "degree")? as u32,
        None => 1,
    };
    match v.get("modulus") {
        Some(m) => {
            let coeffs = as_array(m, "modulus")?.iter().map(|c| as_i64(c, "modulus coefficient")).collect::<Result<Vec<_>>>()?;
            let f = Field::extension(p, &coeffs)?;
            if f.degree() != degree.max(1) && v.get("degree").is_some() {
                return Err(Error::InvalidField(format!("modulus has degree {} but degree {degree} was declared", f.degree())));
            }
            Ok(f)
        }
        None => Field::gf(p, degree),
    }
}

/// `"p"`, `"p^m"`, `"0"`/`"Q"`, or a JSON field object.
pub fn field_from_str(s: &str) -> Result<Field> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
        return field_from_json(v.get("field").unwrap_or(&v));
    }
    if s == "0" || s.eq_ignore_ascii_case("q") {
        return Ok(Field::rationals());
    }
    let bad = || parse_err(format!("cannot parse field {s:?}; expected p, p^m, or a JSON object"));
    match s.split_once('^') {
        Some((p, m)) => Field::gf(p.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
        None => Field::prime(s.parse().map_err(|_| bad())?),
    }
}

pub fn elem_to_json(f: &Field, a: &Elem) -> Value {
    if f.is_finite() && f.degree() > 1 {
        json!(f.digits(a))
    } else {
        Value::String(f.format(a))
    }
}

pub fn elem_from_json(f: &Field, v: &Value) -> Result<Elem> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| parse_err(format!("scalar {n} must be an integer or a string")))?;
            Ok(f.from_int(i))
        }
        Value::String(s) => f.parse(s),
        Value::Array(ds) => {
            let digits = ds.iter().map(|d| as_i64(d, "digit")).collect::<Result<Vec<_>>>()?;
            f.from_digits(&digits)
        }
        _ => Err(parse_err(format!("cannot read scalar from {v}"))),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| elem_to_json(p.field(), c)).collect())
}

/// Reads a coefficient array, or an expression such as `"1 - 1/2*T^2"` (or
/// a bare number) whose coefficients are integers or fractions.
pub fn poly_from_json(f: &Field, v: &Value) -> Result<Poly> {
    match v {
        Value::Array(cs) => {
            let coeffs = cs.iter().map(|c| elem_from_json(f, c)).collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(f, coeffs))
        }
        Value::String(s) => poly_from_str(f, s),
        Value::Number(_) => Ok(Poly::constant(f, elem_from_json(f, v)?)),
        _ => Err(parse_err(format!("cannot read polynomial from {v}"))),
    }
}

pub fn poly_from_str(f: &Field, s: &str) -> Result<Poly> {
    let bad = || parse_err(format!("cannot parse polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        // A sign starts a new term unless it follows `^`, `*` or `/`.
        if i > start && (ch == '+' || ch == '-') && !compact[..i].ends_with(['^', '*', '/']) {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    let mut out = Poly::zero(f);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coeff, degree) = match body.find(['T', 't']) {
            Some(pos) => {
                let c = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                let c = if c.is_empty() { f.one() } else { f.parse(c)? };
                let d = match &body[pos + 1..] {
                    "" => 1,
                    rest => rest.strip_prefix('^').and_then(|k| k.parse().ok()).ok_or_else(bad)?,
                };
                (c, d)
            }
            None if body.is_empty() => return Err(bad()),
            None => (f.parse(body)?, 0),
        };
        let coeff = if sign < 0 { f.neg(&coeff) } else { coeff };
        out = &out + &Poly::monomial(f, coeff, degree);
    }
    Ok(out)
}

pub fn ppoly_to_json(p: &PPoly) -> Value {
    json!({ "ppoly": p.coeffs().iter().map(|c| elem_to_json(p.field(), c)).collect::<Vec<_>>() })
}

pub fn ppoly_from_json(f: &Field, v: &Value) -> Result<PPoly> {
    let arr = as_array(get(v, "ppoly")?, "ppoly")?;
    let coeffs = arr.iter().map(|c| elem_from_json(f, c)).collect::<Result<Vec<_>>>()?;
    PPoly::new(f, coeffs)
}

pub fn scalar_matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|c| elem_to_json(m.field(), c)).collect())).collect())
}

pub fn scalar_matrix_from_json(f: &Field, v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(|c| elem_from_json(f, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
        return Err(parse_err("matrix rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(f, rows))
}

/// Entries only, without the field.
pub fn entries_to_json(m: &PolyMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(poly_to_json).collect())).collect())
}

pub fn entries_from_json(f: &Field, v: &Value) -> Result<PolyMatrix> {
    let rows = as_array(v, "entries")?
        .iter()
        .map(|r| as_array(r, "entries row")?.iter().map(|p| poly_from_json(f, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(f, rows)
}

pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    json!({ "field": field_to_json(m.field()), "n": m.n(), "entries": entries_to_json(m) })
}

/// Reads `{"field", "n", "entries"}`. With `field_override` the `field` key
/// is optional and, when present, must agree.
pub fn matrix_from_json(v: &Value, field_override: Option<&Field>) -> Result<PolyMatrix> {
    let field = match (v.get("field"), field_override) {
        (Some(fv), Some(f)) => {
            let g = field_from_json(fv)?;
            if &g != f {
                return Err(Error::MixedFields);
            }
            g
        }
        (Some(fv), None) => field_from_json(fv)?,
        (None, Some(f)) => f.clone(),
        (None, None) => return Err(parse_err("missing field \"field\" (or pass --field)")),
    };
    let m = entries_from_json(&field, get(v, "entries")?)?;
    if let Some(n) = v.get("n") {
        if as_u64(n, "n")? as usize != m.n() {
            return Err(Error::DimensionMismatch(format!("declared n = {n} but entries are {0}×{0}", m.n())));
        }
    }
    Ok(m)
}

/// Reads a polynomial matrix given as `{"field", "n", "entries"}`, as a bare
/// array of rows, or wrapped under a `"matrix"` key. Without a field in the
/// document or in `field`, entries are read over ℚ.
pub fn matrix_input(v: &Value, field: Option<&Field>) -> Result<PolyMatrix> {
    match v {
        Value::Array(_) => entries_from_json(&field.cloned().unwrap_or_else(Field::rationals), v),
        Value::Object(o) if o.contains_key("entries") => {
            if o.contains_key("field") {
                matrix_from_json(v, field)
            } else {
                matrix_from_json(v, Some(&field.cloned().unwrap_or_else(Field::rationals)))
            }
        }
        Value::Object(o) if o.contains_key("matrix") => matrix_input(&o["matrix"], field.or(document_field(v)?.as_ref())),
        _ => Err(parse_err("expected a matrix: an array of rows or an object with \"entries\"")),
    }
}

/// Reads a scalar matrix given as a bare array of rows or as an object with
/// `"matrix"` (and optionally `"field"`).
pub fn scalar_matrix_input(v: &Value, field: Option<&Field>) -> Result<Matrix> {
    let field = match field {
        Some(f) => f.clone(),
        None => document_field(v)?.unwrap_or_else(Field::rationals),
    };
    match v {
        Value::Array(_) => scalar_matrix_from_json(&field, v),
        Value::Object(o) => match o.get("matrix").or_else(|| o.get("nilpotent")) {
            Some(m) => scalar_matrix_input(m, Some(&field)),
            None => Err(parse_err("expected an object with \"matrix\"")),
        },
        _ => Err(parse_err("expected a scalar matrix")),
    }
}

fn document_field(v: &Value) -> Result<Option<Field>> {
    v.get("field").map(field_from_json).transpose()
}

/// Reads a witness chain, either bare or under a report's `"witness"` key.
pub fn witness_input(v: &Value) -> Result<Witness> {
    match v.get("witness") {
        Some(w) if v.get("steps").is_none() => witness_from_json(w),
        _ => witness_from_json(v),
    }
}

pub fn mpoly_to_json(p: &MPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, elem_to_json(p.field(), c)])).collect())
}

pub fn mpoly_from_json(f: &Field, nvars: usize, v: &Value) -> Result<MPoly> {
    let mut out = MPoly::zero(f, nvars);
    for term in as_array(v, "polynomial terms")? {
        let pair = as_array(term, "term")?;
        if pair.len() != 2 {
            return Err(parse_err("a term is [exponents, coefficient]"));
        }
        let exps = as_array(&pair[0], "exponents")?.iter().map(|e| as_u64(e, "exponent").map(|x| x as u32)).collect::<Result<Vec<_>>>()?;
        if exps.len() != nvars {
            return Err(parse_err(format!("exponent vector has {} entries, expected {nvars}", exps.len())));
        }
        out.add_term(exps, elem_from_json(f, &pair[1])?);
    }
    Ok(out)
}

pub fn projmap_to_json(m: &ProjMap) -> Value {
    json!({
        "n": m.n(),
        "degree": m.degree(),
        "vars": m.variable_names(),
        "components": m.components().iter().map(mpoly_to_json).collect::<Vec<_>>(),
    })
}

pub fn projmap_from_json(f: &Field, v: &Value) -> Result<ProjMap> {
    let n = as_u64(get(v, "n")?, "n")? as usize;
    let with_t = match v.get("vars") {
        Some(vars) => {
            let names = as_array(vars, "vars")?;
            match names.len() {
                l if l == n => false,
                l if l == n + 1 => true,
                l => return Err(parse_err(format!("{l} variable names for a map on ℙ^{}", n as i64 - 1))),
            }
        }
        None => false,
    };
    let nvars = n + usize::from(with_t);
    let comps = as_array(get(v, "components")?, "components")?.iter().map(|c| mpoly_from_json(f, nvars, c)).collect::<Result<Vec<_>>>()?;
    let m = ProjMap::new(f, n, with_t, comps)?;
    if let Some(d) = v.get("degree") {
        if as_u64(d, "degree")? != m.degree() {
            return Err(parse_err("declared degree differs from the components"));
        }
    }
    Ok(m)
}

pub fn step_to_json(s: &WitnessStep) -> Value {
    let mut obj = Map::new();
    obj.insert("from".into(), entries_to_json(&s.from));
    obj.insert("to".into(), entries_to_json(&s.to));
    match &s.kind {
        StepKind::Conjugation { p, p_inv } => {
            obj.insert("kind".into(), json!("conjugation"));
            obj.insert("p".into(), scalar_matrix_to_json(p));
            obj.insert("p_inv".into(), scalar_matrix_to_json(p_inv));
        }
        StepKind::Birational { sigma, sigma_inv } => {
            obj.insert("kind".into(), json!("birational"));
            obj.insert("sigma".into(), projmap_to_json(sigma));
            obj.insert("sigma_inv".into(), projmap_to_json(sigma_inv));
        }
    }
    Value::Object(obj)
}

pub fn step_from_json(f: &Field, v: &Value) -> Result<WitnessStep> {
    let from = entries_from_json(f, get(v, "from")?)?;
    let to = entries_from_json(f, get(v, "to")?)?;
    let kind = match get(v, "kind")?.as_str() {
        Some("conjugation") => StepKind::Conjugation {
            p: scalar_matrix_from_json(f, get(v, "p")?)?,
            p_inv: scalar_matrix_from_json(f, get(v, "p_inv")?)?,
        },
        Some("birational") => StepKind::Birational {
            sigma: projmap_from_json(f, get(v, "sigma")?)?,
            sigma_inv: projmap_from_json(f, get(v, "sigma_inv")?)?,
        },
        _ => return Err(parse_err("step kind must be \"conjugation\" or \"birational\"")),
    };
    Ok(WitnessStep { from, to, kind })
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({
        "field": field_to_json(w.source.field()),
        "n": w.source.n(),
        "source": entries_to_json(&w.source),
        "target": entries_to_json(&w.target),
        "steps": w.steps.iter().map(step_to_json).collect::<Vec<_>>(),
    })
}

pub fn witness_from_json(v: &Value) -> Result<Witness> {
    let f = field_from_json(get(v, "field")?)?;
    let source = entries_from_json(&f, get(v, "source")?)?;
    let target = entries_from_json(&f, get(v, "target")?)?;
    let steps = as_array(get(v, "steps")?, "steps")?.iter().map(|s| step_from_json(&f, s)).collect::<Result<Vec<_>>>()?;
    if let Some(n) = v.get("n") {
        if as_u64(n, "n")? as usize != source.n() {
            return Err(Error::DimensionMismatch("declared n differs from the source matrix".into()));
        }
    }
    Ok(Witness { source, target, steps })
}

pub fn class_to_json(c: &BirClass) -> Value {
    let coeffs = |p: &PPoly| ppoly_to_json(p);
    match c {
        BirClass::Identity | BirClass::Char0Standard => json!({ "kind": c.kind(), "display": c.to_string() }),
        BirClass::Line(g) => json!({ "kind": c.kind(), "display": c.to_string(), "gamma": coeffs(g) }),
        BirClass::Plane(a, b) => json!({ "kind": c.kind(), "display": c.to_string(), "gamma1": coeffs(a), "gamma2": coeffs(b) }),
    }
}

pub fn failure_to_json(fail: &Failure) -> Value {
    json!({
        "condition": format!("{:?}", fail.condition),
        "entry": [fail.entry.0, fail.entry.1],
        "residual": fail.residual.format_with(&["T", "T'"]),
        "residual_terms": mpoly_to_json(&fail.residual),
    })
}

pub fn verify_report_to_json(r: &VerifyReport) -> Value {
    let opt = |f: &Option<Failure>| f.as_ref().map_or(Value::Null, failure_to_json);
    json!({
        "valid": r.valid(),
        "routes_agree": r.routes_agree(),
        "checks": {
            "at_zero": r.at_zero.is_none(),
            "product": r.product.is_none(),
            "coproduct": r.coproduct.is_none(),
            "determinant": r.determinant.is_none(),
        },
        "failure": r.first_failure().map_or(Value::Null, failure_to_json),
        "failures": {
            "at_zero": opt(&r.at_zero),
            "product": opt(&r.product),
            "coproduct": opt(&r.coproduct),
            "determinant": opt(&r.determinant),
        },
    })
}
