//! JSON encodings. Every document carries `version` and `kind`; matrices are
//! row-major arrays of `[re, im]` pairs.

use std::collections::BTreeMap;
use std::fmt;

use qrep_core::additive::{AdditiveRep, Certificate, DegenerationWitness, Direction, MonotoneCheck};
use qrep_core::kempf_ness::{FlowReport, KNResidual};
use qrep_core::matrix::C64;
use qrep_core::ops::ReductionTrace;
use qrep_core::toric::MonomialBasis;
use qrep_core::{CMatrix, Family, GaugeElement, GroupSpec, Quiver, RelationSet, Representation, Word};
use serde_json::{json, Map, Value};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeError(pub String);

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DecodeError {}

type DResult<T> = Result<T, DecodeError>;

fn err<T>(msg: impl Into<String>) -> DResult<T> {
    Err(DecodeError(msg.into()))
}

fn envelope(kind: &str, mut body: Map<String, Value>) -> Value {
    body.insert("version".into(), json!(VERSION));
    body.insert("kind".into(), json!(kind));
    Value::Object(body)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

pub fn matrix(m: &CMatrix) -> Value {
    let n = m.n();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

fn number(v: &Value, what: &str) -> DResult<f64> {
    v.as_f64().ok_or_else(|| DecodeError(format!("{what}: expected a number")))
}

pub fn decode_matrix(v: &Value) -> DResult<CMatrix> {
    let rows = v.as_array().ok_or_else(|| DecodeError("matrix: expected an array of rows".into()))?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        let row = row.as_array().ok_or_else(|| DecodeError("matrix row: expected an array".into()))?;
        if row.len() != n {
            return err(format!("matrix must be square, found a row of length {} in a {n}-row matrix", row.len()));
        }
        for z in row {
            match z.as_array().map(Vec::as_slice) {
                Some([re, im]) => data.push(C64::new(number(re, "real part")?, number(im, "imaginary part")?)),
                _ => return err("matrix entry: expected [re, im]"),
            }
        }
    }
    CMatrix::new(n, data).map_err(|e| DecodeError(e.to_string()))
}

fn matrices(ms: &BTreeMap<String, CMatrix>) -> Value {
    Value::Object(ms.iter().map(|(k, m)| (k.clone(), matrix(m))).collect())
}

fn decode_matrices(v: Option<&Value>, what: &str) -> DResult<BTreeMap<String, CMatrix>> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| DecodeError(format!("`{what}`: expected an object")))?;
    obj.iter()
        .map(|(k, m)| Ok((k.clone(), decode_matrix(m).map_err(|e| DecodeError(format!("{what}.{k}: {e}")))?)))
        .collect()
}

pub fn group(g: &GroupSpec) -> Value {
    json!({"family": g.family.name(), "n": g.n})
}

pub fn decode_group(v: &Value) -> DResult<GroupSpec> {
    let family: Family = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| DecodeError("group.family: expected a string".into()))?
        .parse()
        .map_err(|e: qrep_core::Error| DecodeError(e.to_string()))?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| DecodeError("group.n: expected a positive integer".into()))?;
    GroupSpec::new(family, n as usize).map_err(|e| DecodeError(e.to_string()))
}

fn check_kind(v: &Value, kinds: &[&str]) -> DResult<String> {
    if let Some(ver) = v.get("version") {
        if ver.as_u64() != Some(VERSION) {
            return err(format!("unsupported version {ver}"));
        }
    }
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or(kinds[0]);
    if !kinds.contains(&kind) {
        return err(format!("expected a {} document, found `{kind}`", kinds.join(" or ")));
    }
    Ok(kind.to_string())
}

pub fn representation(f: &Representation) -> Value {
    envelope(
        "representation",
        object(json!({"group": group(f.group()), "markings": matrices(f.markings())})),
    )
}

/// Numeric failures (not in the group, wrong arrows) come back as
/// `qrep_core::Error` so the CLI can tell them from malformed JSON.
pub fn decode_representation(q: &Quiver, v: &Value) -> DResult<Result<Representation, qrep_core::Error>> {
    check_kind(v, &["representation"])?;
    let g = decode_group(v.get("group").ok_or_else(|| DecodeError("missing `group`".into()))?)?;
    let markings = decode_matrices(v.get("markings"), "markings")?;
    Ok(Representation::new(q.clone(), g, markings))
}

pub fn gauge(g: &GaugeElement) -> Value {
    envelope("gauge", object(json!({"group": group(g.group()), "values": matrices(g.values())})))
}

pub fn decode_gauge(q: &Quiver, v: &Value) -> DResult<Result<GaugeElement, qrep_core::Error>> {
    check_kind(v, &["gauge"])?;
    let g = decode_group(v.get("group").ok_or_else(|| DecodeError("missing `group`".into()))?)?;
    let values = decode_matrices(v.get("values"), "values")?;
    Ok(GaugeElement::new(q.clone(), g, values))
}

pub fn additive(x: &AdditiveRep) -> Value {
    envelope("additive", object(json!({"n": x.n(), "markings": matrices(x.markings())})))
}

/// Accepts an additive document or a representation (which is embedded).
pub fn decode_additive(q: &Quiver, v: &Value) -> DResult<Result<AdditiveRep, qrep_core::Error>> {
    let kind = check_kind(v, &["additive", "representation"])?;
    let markings = decode_matrices(v.get("markings"), "markings")?;
    let n = if kind == "representation" {
        decode_group(v.get("group").ok_or_else(|| DecodeError("missing `group`".into()))?)?.n
    } else {
        v.get("n").and_then(Value::as_u64).ok_or_else(|| DecodeError("n: expected an integer".into()))? as usize
    };
    Ok(AdditiveRep::new(q.clone(), n, markings))
}

pub fn quiver(q: &Quiver) -> Value {
    json!({
        "vertices": q.vertices(),
        "arrows": q.arrows().iter().map(|a| json!({"id": a.id, "tail": a.tail, "head": a.head})).collect::<Vec<_>>(),
    })
}

pub fn word(w: &Word) -> Value {
    Value::Array(
        w.letters
            .iter()
            .map(|l| Value::String(if l.inverse { format!("{}^-1", l.arrow) } else { l.arrow.clone() }))
            .collect(),
    )
}

pub fn relations(r: &RelationSet) -> Value {
    Value::Array(r.relations.iter().map(word).collect())
}

pub fn reduction_trace(t: &ReductionTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({"arrow": s.arrow, "tail": s.tail, "head": s.head, "merged": s.merged}))
        .collect();
    envelope(
        "reduction_trace",
        object(json!({
            "source": quiver(&t.source),
            "source_relations": relations(&t.source_relations),
            "steps": steps,
            "target": quiver(&t.target),
            "relations": relations(&t.relations),
        })),
    )
}

pub fn kn_residual(r: &KNResidual) -> Value {
    envelope("kn_residual", object(json!({"aggregate": r.aggregate, "moments": matrices(&r.moments)})))
}

pub fn flow_report(r: &FlowReport) -> Value {
    envelope(
        "flow_report",
        object(json!({
            "iterations": r.iterations,
            "converged": r.converged,
            "residual_history": r.residual_history,
            "norm_history": r.norm_history,
            "representation": representation(&r.representation),
        })),
    )
}

pub fn witness(w: &DegenerationWitness) -> Value {
    let samples: Vec<Value> = w
        .samples
        .iter()
        .map(|s| json!({"t": s.t, "markings": matrices(s.representation.markings())}))
        .collect();
    envelope(
        "degeneration_witness",
        object(json!({
            "vertex": w.vertex,
            "direction": match w.direction { Direction::Sink => "sink", Direction::Source => "source" },
            "samples": samples,
            "limit": matrices(w.limit.markings()),
            "zeroed": w.zeroed,
        })),
    )
}

fn monotone(c: &MonotoneCheck) -> Value {
    match c {
        MonotoneCheck::Constant => json!({"result": "constant"}),
        MonotoneCheck::NotMonotone { arrow, cycle } => {
            json!({"result": "not_monotone", "arrow": arrow, "cycle": word(cycle)})
        }
        MonotoneCheck::Contradiction { cycle } => json!({"result": "contradiction", "cycle": word(cycle)}),
    }
}

pub fn certificate(c: &Certificate) -> Value {
    let body = match c {
        Certificate::AllInvertibleOrbitsClosed { sample } => json!({
            "verdict": "all_invertible_orbits_closed",
            "sample": sample.as_ref().map(|(alpha, check)| json!({"alpha": alpha, "check": monotone(check)})),
        }),
        Certificate::EndsObstruct(ends) => json!({"verdict": "ends_obstruct", "ends": ends}),
        Certificate::Inconclusive => json!({"verdict": "inconclusive"}),
    };
    envelope("certificate", object(body))
}

/// Machine-sized integers as numbers, anything larger as a decimal string.
fn integer(x: &num_bigint::BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), |v| json!(v))
}

pub fn monomial_basis(b: &MonomialBasis) -> Value {
    let vectors: Vec<Value> = b.vectors.iter().map(|v| Value::Array(v.iter().map(integer).collect())).collect();
    envelope(
        "monomial_basis",
        object(json!({
            "arrows": b.arrows,
            "vectors": vectors,
            "rank": b.rank,
            "cell_dimension": b.cell_dimension,
            "smith": b.smith.iter().map(integer).collect::<Vec<_>>(),
            "saturated": b.is_saturated(),
        })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_round_trip() {
        let q = Quiver::from_triples(&["v0", "v1"], &[("a", "v0", "v1"), ("b", "v1", "v0")]).unwrap();
        let f = Representation::random(q.clone(), GroupSpec::sl(2), 9);
        let text = serde_json::to_string(&representation(&f)).unwrap();
        let back = decode_representation(&q, &serde_json::from_str(&text).unwrap()).unwrap().unwrap();
        assert_eq!(back, f);
        let g = GaugeElement::random(q.clone(), GroupSpec::gl(3), 2);
        let back = decode_gauge(&q, &gauge(&g)).unwrap().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn malformed_matrices() {
        assert!(decode_matrix(&json!([[[1.0, 0.0]], [[0.0, 0.0]]])).is_err());
        assert!(decode_matrix(&json!([[1.0]])).is_err());
        assert!(decode_matrix(&json!("x")).is_err());
        let m = decode_matrix(&json!([[[1.0, 2.0]]])).unwrap();
        assert_eq!(m[(0, 0)], C64::new(1.0, 2.0));
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let q = Quiver::from_triples(&["v"], &[("a", "v", "v")]).unwrap();
        let g = GaugeElement::identity(q.clone(), GroupSpec::gl(1));
        assert!(decode_representation(&q, &gauge(&g)).is_err());
    }
}
