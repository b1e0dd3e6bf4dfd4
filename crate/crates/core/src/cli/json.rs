//! Canonical JSON encoding of engine values, and parsers for the encodable types.
//!
//! Objects are `serde_json` maps (sorted keys), rationals are `"num/den"` strings, polynomials
//! inside matrices and ideals are their canonical text.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::groebner::{Codim, Ideal, QuotientContext};
use crate::homalg::{BeReport, ChainComplex, CmReport, PeriodicityReport, ProperIntersection, ResolutionDiagnostics};
use crate::polyring::{
    format_rational, poly_parse, Monomial, MonomialOrder, PolyMatrix, Polynomial, PolynomialRing, Rational,
};
use crate::residues::{
    ChainMap, CurrentKind, CurrentRecipe, FormalCurrent, Homotopy, LocusCheck, MeromorphicForm, RegularSequenceReport,
    ShapeComponent, StructureFormShape, TransformationVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed JSON value: {0}")]
pub struct JsonError(pub String);

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError(msg.into())
}

/// Compact serialization; maps are ordered, so equal values give equal bytes.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn rational_to_json(c: &Rational) -> Value {
    Value::String(format_rational(c))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    let s = v.as_str().ok_or_else(|| bad("rational must be a string"))?;
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad numerator in `{s}`")))?;
    let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad denominator in `{s}`")))?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn ring_to_json(r: &PolynomialRing) -> Value {
    json!({ "vars": r.vars(), "order": r.order().name() })
}

pub fn ring_from_json(v: &Value) -> Result<PolynomialRing, JsonError> {
    let vars = string_list(v.get("vars").ok_or_else(|| bad("ring without vars"))?)?;
    let order = match v.get("order") {
        Some(o) => o.as_str().ok_or_else(|| bad("order must be a string"))?.parse().map_err(bad)?,
        None => MonomialOrder::GrevLex,
    };
    PolynomialRing::new(&vars, order).map_err(|e| bad(e.to_string()))
}

/// `{"vars": [...], "terms": [{"coeff": "c", "exps": [...]}, ...]}`, terms in descending order.
pub fn poly_to_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> =
        p.terms().iter().map(|(m, c)| json!({ "coeff": format_rational(c), "exps": m.exps() })).collect();
    json!({ "vars": p.ring().vars(), "terms": terms })
}

/// Reads a polynomial object into `ring`, whose variables must match the object's.
pub fn poly_from_json(v: &Value, ring: &PolynomialRing) -> Result<Polynomial, JsonError> {
    let vars = string_list(v.get("vars").ok_or_else(|| bad("polynomial without vars"))?)?;
    if vars != ring.vars() {
        return Err(bad(format!("variables {vars:?} do not match {}", ring)));
    }
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("polynomial without terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = rational_from_json(t.get("coeff").ok_or_else(|| bad("term without coeff"))?)?;
        let exps = t.get("exps").and_then(Value::as_array).ok_or_else(|| bad("term without exps"))?;
        let exps = exps
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("exponent out of range")))
            .collect::<Result<Vec<u32>, _>>()?;
        if exps.len() != ring.nvars() {
            return Err(bad("exponent vector of the wrong length"));
        }
        out.push((Monomial::new(exps), c));
    }
    Ok(Polynomial::from_terms(ring, out))
}

fn text(p: &Polynomial) -> Value {
    Value::String(p.to_text())
}

fn string_list(v: &Value) -> Result<Vec<String>, JsonError> {
    v.as_array()
        .ok_or_else(|| bad("expected an array"))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("expected a string")))
        .collect()
}

fn poly_text_from_json(v: &Value, ring: &PolynomialRing) -> Result<Polynomial, JsonError> {
    let s = v.as_str().ok_or_else(|| bad("polynomial entry must be a string"))?;
    poly_parse(s, ring).map_err(|e| bad(e.to_string()))
}

pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(text).collect())).collect())
}

/// Row-major nested arrays; an `r x 0` or `0 x c` shape needs the explicit dimensions.
pub fn matrix_from_json(v: &Value, ring: &PolynomialRing, rows: usize, cols: usize) -> Result<PolyMatrix, JsonError> {
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().ok_or_else(|| bad("row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, found {}", row.len())));
        }
        for e in row {
            data.push(poly_text_from_json(e, ring)?);
        }
    }
    PolyMatrix::from_data(ring, rows, cols, data).map_err(|e| bad(e.to_string()))
}

fn matrix_shape(v: &Value) -> Result<(usize, usize), JsonError> {
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let cols = arr.first().and_then(Value::as_array).map(Vec::len).unwrap_or(0);
    Ok((arr.len(), cols))
}

pub fn ideal_to_json(i: &Ideal) -> Value {
    json!({ "gens": i.gens().iter().map(text).collect::<Vec<_>>() })
}

pub fn ideal_from_json(v: &Value, ring: &PolynomialRing) -> Result<Ideal, JsonError> {
    let gens = v.get("gens").and_then(Value::as_array).ok_or_else(|| bad("ideal without gens"))?;
    let gens = gens.iter().map(|g| poly_text_from_json(g, ring)).collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ring, gens).map_err(|e| bad(e.to_string()))
}

pub fn complex_to_json(c: &ChainComplex) -> Value {
    json!({ "ranks": c.ranks(), "diffs": c.diffs().iter().map(matrix_to_json).collect::<Vec<_>>() })
}

/// Reads `{ranks, diffs}`; ring, context and truncation travel outside the schema.
pub fn complex_from_json(
    v: &Value,
    ring: &PolynomialRing,
    context: Option<&QuotientContext>,
    truncated: bool,
) -> Result<ChainComplex, JsonError> {
    let ranks = v
        .get("ranks")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("complex without ranks"))?
        .iter()
        .map(|r| r.as_u64().map(|r| r as usize).ok_or_else(|| bad("rank must be a non-negative integer")))
        .collect::<Result<Vec<usize>, _>>()?;
    let diffs = v.get("diffs").and_then(Value::as_array).ok_or_else(|| bad("complex without diffs"))?;
    if ranks.len() != diffs.len() + 1 {
        return Err(bad("ranks and diffs disagree in length"));
    }
    let mats = diffs
        .iter()
        .enumerate()
        .map(|(k, d)| matrix_from_json(d, ring, ranks[k], ranks[k + 1]))
        .collect::<Result<Vec<_>, _>>()?;
    ChainComplex::new(ring, context, ranks, mats, truncated).map_err(|e| bad(e.to_string()))
}

pub fn chain_map_to_json(a: &ChainMap) -> Value {
    json!({ "levels": a.maps().iter().map(matrix_to_json).collect::<Vec<_>>() })
}

pub fn chain_map_from_json(v: &Value, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap, JsonError> {
    let levels = v.get("levels").and_then(Value::as_array).ok_or_else(|| bad("chain map without levels"))?;
    let mut maps = Vec::with_capacity(levels.len());
    for (k, m) in levels.iter().enumerate() {
        let (rows, cols) = (target.rank(k), source.rank(k));
        let (r, c) = matrix_shape(m)?;
        if r != rows || (r > 0 && c != cols) {
            return Err(bad(format!("level {k} has shape {r}x{c}, expected {rows}x{cols}")));
        }
        maps.push(matrix_from_json(m, source.ring(), rows, cols)?);
    }
    ChainMap::new(source, target, maps).map_err(|e| bad(e.to_string()))
}

pub fn homotopy_to_json(h: &Homotopy) -> Value {
    json!({ "levels": h.maps().iter().map(matrix_to_json).collect::<Vec<_>>() })
}

pub fn codim_to_json(c: Codim) -> Value {
    match c {
        Codim::Finite(k) => json!(k),
        Codim::Infinite => json!("infinite"),
    }
}

pub fn codim_from_json(v: &Value) -> Result<Codim, JsonError> {
    match v {
        Value::String(s) if s == "infinite" => Ok(Codim::Infinite),
        _ => v
            .as_u64()
            .map(|k| Codim::Finite(k as usize))
            .ok_or_else(|| bad("codimension must be an integer or \"infinite\"")),
    }
}

pub fn be_report_to_json(r: &BeReport) -> Value {
    let levels: Vec<Value> = r
        .levels
        .iter()
        .map(|l| {
            json!({
                "k": l.k,
                "generic_rank": l.generic_rank,
                "rank_condition": l.rank_condition,
                "codim": codim_to_json(l.codim),
                "codim_condition": l.codim_condition,
            })
        })
        .collect();
    json!({ "passed": r.passed, "failing_level": r.failing_level, "levels": levels })
}

pub fn proper_to_json(p: &ProperIntersection) -> Value {
    let triple = |&(k, l, c): &(usize, usize, Codim)| json!([k, l, codim_to_json(c)]);
    json!({
        "proper": p.proper,
        "witness": p.witness.as_ref().map(triple),
        "checked": p.checked.iter().map(triple).collect::<Vec<_>>(),
    })
}

pub fn periodicity_to_json(p: &PeriodicityReport) -> Value {
    json!({ "detected": p.detected, "offset": p.offset, "period": p.period, "exact": p.exact })
}

pub fn cm_to_json(c: &CmReport) -> Value {
    json!({ "cohen_macaulay": c.cohen_macaulay, "length": c.length, "codim": codim_to_json(c.codim) })
}

pub fn loci_to_json(d: &ResolutionDiagnostics) -> Value {
    json!({
        "source": format!("{:?}", d.source).to_lowercase(),
        "ranks": d.ranks,
        "expected_ranks": d.expected_ranks,
        "loci": d.loci.iter().map(ideal_to_json).collect::<Vec<_>>(),
        "codims": d.codims.iter().map(|c| codim_to_json(*c)).collect::<Vec<_>>(),
        "verdicts": d.verdicts,
        "nested": d.nested,
    })
}

pub fn regseq_to_json(r: &RegularSequenceReport) -> Value {
    json!({ "regular": r.regular, "failing_index": r.failing_index, "reason": r.reason })
}

pub fn current_to_json(c: &FormalCurrent) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(c.kind.name()));
    match &c.kind {
        CurrentKind::ColeffHerrera { tuple } => {
            m.insert("tuple".into(), Value::Array(tuple.iter().map(text).collect()));
        }
        CurrentKind::AwCurrent { resolution_length } => {
            m.insert("resolution_length".into(), json!(resolution_length));
        }
        CurrentKind::PoincareResidue => {}
    }
    m.insert("annihilator".into(), ideal_to_json(&c.annihilator));
    m.insert("context".into(), c.context.as_ref().map(|z| ideal_to_json(z.ideal())).unwrap_or(Value::Null));
    m.insert("degree_span".into(), json!([c.degree_span.0, c.degree_span.1]));
    m.insert("twopi_exponent".into(), json!(c.twopi_exponent));
    Value::Object(m)
}

pub fn verdict_to_json(v: &TransformationVerdict) -> Value {
    match v {
        TransformationVerdict::NotATransformation { column } => {
            json!({ "verdict": "not_a_transformation", "column": column })
        }
        TransformationVerdict::NotInvertibleAtOrigin { det } => {
            json!({ "verdict": "not_invertible_at_origin", "det": text(det) })
        }
        TransformationVerdict::Certified { det } => json!({ "verdict": "certified", "det": text(det) }),
        TransformationVerdict::LocalOnly { det } => json!({ "verdict": "local_only", "det": text(det) }),
    }
}

pub fn form_to_json(f: &MeromorphicForm) -> Value {
    let vars = f.ring().vars();
    json!({
        "hypersurface": ideal_to_json(f.context.ideal()),
        "wedge": f.wedge.iter().map(|&i| vars[i].clone()).collect::<Vec<_>>(),
        "numerator": text(&f.numerator),
        "denominator": text(&f.denominator),
        "twopi_exponent": f.twopi_exponent,
    })
}

fn shape_component_to_json(c: &ShapeComponent) -> Value {
    match c {
        ShapeComponent::Pure { r, bidegree, level } => {
            json!({ "r": r, "bidegree": [bidegree.0, bidegree.1], "level": level })
        }
        ShapeComponent::Mixed { e, bidimension, level, support } => {
            json!({ "e": e, "bidimension": [bidimension.0, bidimension.1], "level": level, "support": support })
        }
    }
}

fn locus_check_to_json(l: &LocusCheck) -> Value {
    json!({ "e": l.e, "e_prime": l.e_prime, "level": l.level, "codim": codim_to_json(l.codim), "ok": l.ok })
}

pub fn shape_to_json(s: &StructureFormShape) -> Value {
    json!({
        "pure": s.is_pure(),
        "purity": format!("{:?}", s.purity).to_lowercase(),
        "n": s.n,
        "d": s.d,
        "p": s.p,
        "resolution_length": s.resolution_length,
        "components": s.components.iter().map(shape_component_to_json).collect::<Vec<_>>(),
        "locus_checks": s.locus_checks.iter().map(locus_check_to_json).collect::<Vec<_>>(),
    })
}

pub fn recipe_to_json(r: &CurrentRecipe) -> Value {
    json!({
        "z": ideal_to_json(r.z.ideal()),
        "j": ideal_to_json(&r.j),
        "j_lift": ideal_to_json(&r.j_lift),
        "e": complex_to_json(&r.e),
        "f": complex_to_json(&r.f),
        "a": chain_map_to_json(&r.a),
        "shape": shape_to_json(&r.shape),
        "current": current_to_json(&r.current),
        "z_cohen_macaulay": r.z_cohen_macaulay,
        "j_lift_cohen_macaulay": r.j_lift_cohen_macaulay,
    })
}
