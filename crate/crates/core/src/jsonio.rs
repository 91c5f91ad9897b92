//! JSON interchange: lattices as {"rank": n, "gram": [[…]]} with named
//! built-ins, isometries as {"lattice": …, "matrix": [[…]]}, arrangements as
//! {"ambient_dim": N, "subspaces": […]}, and serializers for every report
//! type. Rationals travel as exact "a/b" strings.

use crate::arrangement::{Arrangement, ArrangementError, BettiTable, TransversalityOutcome};
use crate::genus::{Bo3RelationReport, EllRelationReport, SurfaceProductEll};
use crate::graded::GradedPolynomial;
use crate::isometry::{Isometry, IsometryClass, IsometryError};
use crate::lattice::{by_name, IndexInAmbient, Lattice, Signature, SublatticeReport, Vector};
use crate::obstruction::{
    Certification, E2Report, ObstructionReport, StabilizerReport, StableRange, Verdict,
};
use crate::series::FormalPowerSeries;
use crate::tensor::{IndependenceCertificate, TensorClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("expected {expected} at {context}")]
    Shape {
        context: &'static str,
        expected: &'static str,
    },
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("declared rank {declared} does not match gram size {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error(transparent)]
    Isometry(#[from] IsometryError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

fn shape(context: &'static str, expected: &'static str) -> JsonError {
    JsonError::Shape { context, expected }
}

fn as_i64(v: &Value, context: &'static str) -> Result<i64, JsonError> {
    v.as_i64().ok_or_else(|| shape(context, "an integer"))
}

fn int_matrix(v: &Value, context: &'static str) -> Result<Vec<Vec<BigInt>>, JsonError> {
    let rows = v.as_array().ok_or_else(|| shape(context, "an array"))?;
    rows.iter()
        .map(|row| {
            let cells = row
                .as_array()
                .ok_or_else(|| shape(context, "an array of arrays"))?;
            cells
                .iter()
                .map(|c| Ok(BigInt::from(as_i64(c, context)?)))
                .collect()
        })
        .collect()
}

/// Parse a lattice from a built-in name or a JSON object
/// {"rank": n, "gram": [[…]]} (the rank field is optional).
pub fn lattice_from_json(v: &Value) -> Result<Lattice, JsonError> {
    if let Some(name) = v.as_str() {
        return by_name(name).ok_or_else(|| JsonError::UnknownName(name.to_string()));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| shape("lattice", "a name or an object with a gram field"))?;
    let gram_value = obj
        .get("gram")
        .ok_or_else(|| shape("lattice", "a gram field"))?;
    let gram = int_matrix(gram_value, "lattice.gram")?;
    if let Some(declared) = obj.get("rank") {
        let declared = as_i64(declared, "lattice.rank")? as usize;
        if declared != gram.len() {
            return Err(JsonError::RankMismatch {
                declared,
                actual: gram.len(),
            });
        }
    }
    Ok(Lattice::new(gram)?)
}

/// Resolve a lattice given on the command line: built-in name first, then
/// inline JSON.
pub fn lattice_from_spec(spec: &str) -> Result<Lattice, JsonError> {
    if let Some(l) = by_name(spec) {
        return Ok(l);
    }
    let v: Value = serde_json::from_str(spec)?;
    lattice_from_json(&v)
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    let gram: Vec<Vec<String>> = l
        .gram()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    // gram entries re-parsed as numbers when they fit
    let gram_numeric: Value = Value::Array(
        gram.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|s| match i64::from_str(s) {
                            Ok(n) => json!(n),
                            Err(_) => json!(s),
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    json!({ "rank": l.rank(), "gram": gram_numeric })
}

pub fn vector_from_json(v: &Value) -> Result<Vector, JsonError> {
    let cells = v.as_array().ok_or_else(|| shape("vector", "an array"))?;
    let coords = cells
        .iter()
        .map(|c| Ok(BigInt::from(as_i64(c, "vector")?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(Vector(coords))
}

pub fn vectors_from_json(v: &Value) -> Result<Vec<Vector>, JsonError> {
    let rows = v
        .as_array()
        .ok_or_else(|| shape("vectors", "an array of arrays"))?;
    rows.iter().map(vector_from_json).collect()
}

pub fn vector_to_json(v: &Vector) -> Value {
    Value::Array(
        v.coords()
            .iter()
            .map(|c| match c.to_string().parse::<i64>() {
                Ok(n) => json!(n),
                Err(_) => json!(c.to_string()),
            })
            .collect(),
    )
}

/// Parse an isometry {"lattice": <name-or-object>, "matrix": [[…]]} and
/// verify gram preservation.
pub fn isometry_from_json(v: &Value) -> Result<Isometry, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape("isometry", "an object with lattice and matrix"))?;
    let lattice = lattice_from_json(
        obj.get("lattice")
            .ok_or_else(|| shape("isometry", "a lattice field"))?,
    )?;
    let matrix = int_matrix(
        obj.get("matrix")
            .ok_or_else(|| shape("isometry", "a matrix field"))?,
        "isometry.matrix",
    )?;
    Ok(Isometry::new(lattice, matrix)?)
}

pub fn isometry_to_json(g: &Isometry) -> Value {
    json!({
        "lattice": lattice_to_json(g.lattice()),
        "matrix": g.matrix().iter().map(|row| {
            Value::Array(row.iter().map(|x| match x.to_string().parse::<i64>() {
                Ok(n) => json!(n),
                Err(_) => json!(x.to_string()),
            }).collect())
        }).collect::<Vec<_>>(),
    })
}

fn rational_from_json(v: &Value, context: &'static str) -> Result<BigRational, JsonError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigRational::from_integer(BigInt::from(n)));
    }
    let s = v
        .as_str()
        .ok_or_else(|| shape(context, "an integer or a \"a/b\" string"))?;
    parse_rational(s)
}

pub fn parse_rational(s: &str) -> Result<BigRational, JsonError> {
    let bad = || JsonError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Parse {"ambient_dim": N, "subspaces": [[[…],[…],[…]], …]} with rational
/// entries as integers or "a/b" strings.
pub fn arrangement_from_json(v: &Value) -> Result<Arrangement, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape("arrangement", "an object"))?;
    let ambient = as_i64(
        obj.get("ambient_dim")
            .ok_or_else(|| shape("arrangement", "an ambient_dim field"))?,
        "arrangement.ambient_dim",
    )? as usize;
    let subs = obj
        .get("subspaces")
        .and_then(|s| s.as_array())
        .ok_or_else(|| shape("arrangement", "a subspaces array"))?;
    let mut subspaces = Vec::new();
    for sub in subs {
        let normals = sub
            .as_array()
            .ok_or_else(|| shape("arrangement.subspaces", "arrays of normal vectors"))?;
        let mat = normals
            .iter()
            .map(|normal| {
                let cells = normal
                    .as_array()
                    .ok_or_else(|| shape("arrangement.normal", "an array"))?;
                cells
                    .iter()
                    .map(|c| rational_from_json(c, "arrangement.normal"))
                    .collect()
            })
            .collect::<Result<Vec<_>, JsonError>>()?;
        subspaces.push(mat);
    }
    Ok(Arrangement::new(ambient, subspaces)?)
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    json!({
        "ambient_dim": a.ambient_dim(),
        "subspaces": a.subspaces().iter().map(|normals| {
            Value::Array(normals.iter().map(|normal| {
                Value::Array(normal.iter().map(|q| json!(q.to_string())).collect())
            }).collect())
        }).collect::<Vec<_>>(),
    })
}

pub fn signature_to_json(s: &Signature) -> Value {
    json!({
        "positive": s.positive,
        "negative": s.negative,
        "rank_deficit": s.rank_deficit,
    })
}

pub fn lattice_summary_to_json(l: &Lattice) -> Value {
    let sig = l.signature();
    json!({
        "rank": l.rank(),
        "det": l.det().to_string(),
        "even": l.is_even(),
        "unimodular": l.is_unimodular(),
        "signature": signature_to_json(&sig),
    })
}

pub fn sublattice_report_to_json(r: &SublatticeReport) -> Value {
    let index = match &r.index_in_ambient {
        IndexInAmbient::Finite(n) => json!(n.to_string()),
        IndexInAmbient::Degenerate => json!("degenerate"),
    };
    json!({
        "span_basis": r.span_basis.iter().map(vector_to_json).collect::<Vec<_>>(),
        "span_gram": int_mat_to_json(&r.span_gram),
        "span_rank": r.span_rank,
        "span_signature": signature_to_json(&r.span_signature),
        "complement_basis": r.complement_basis.iter().map(vector_to_json).collect::<Vec<_>>(),
        "complement_signature": signature_to_json(&r.complement_signature),
        "index_in_ambient": index,
    })
}

fn int_mat_to_json(m: &[Vec<BigInt>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| match x.to_string().parse::<i64>() {
                            Ok(n) => json!(n),
                            Err(_) => json!(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn isometry_class_to_json(c: &IsometryClass) -> Value {
    json!({
        "determinant": c.determinant,
        "spinor_norm": c.spinor_norm,
        "subgroup": c.subgroup_tag.to_string(),
    })
}

pub fn stable_range_to_json(r: &StableRange) -> Value {
    json!({
        "p": r.p,
        "q": r.q,
        "bijective_upto": r.bijective_upto,
        "iso_upto_with_2q": r.iso_upto_with_2q,
    })
}

pub fn stabilizer_report_to_json(r: &StabilizerReport) -> Value {
    json!({
        "tuple_size": r.tuple_size,
        "span_signature": { "n1": r.span_signature.0, "n2": r.span_signature.1 },
        "degenerate_span": r.degenerate_span,
        "ambient_so": { "p": r.ambient_so.0, "q": r.ambient_so.1 },
        "stable_range": stable_range_to_json(&r.stable_range),
        "odd_vanishing_upto": r.odd_vanishing_upto,
        "finite_quotient_bound": r.finite_quotient_bound.to_string(),
        "index_in_ambient": match &r.sublattice.index_in_ambient {
            IndexInAmbient::Finite(n) => json!(n.to_string()),
            IndexInAmbient::Degenerate => json!("degenerate"),
        },
    })
}

pub fn e2_report_to_json(r: &E2Report) -> Value {
    json!({
        "max_total_degree": r.max_total_degree,
        "all_ok": r.all_ok,
        "rows": r.rows.iter().map(|row| json!({
            "tuple_size": row.tuple_size,
            "partition": { "n1": row.partition.0, "n2": row.partition.1 },
            "max_odd_degree": row.max_odd_degree,
            "vanishing_upto": row.vanishing_upto,
            "ok": row.ok,
        })).collect::<Vec<_>>(),
    })
}

fn certification_to_json(c: &Certification, cite: bool) -> Value {
    match c {
        Certification::K3Summand => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("k3-summand"));
            m.insert("class".into(), json!("l2"));
            if cite {
                m.insert(
                    "why".into(),
                    json!(
                        "the degree-8 class is nonzero on the mapping class group when the \
                           K3 form splits off, via the Einstein-moduli detection chain"
                    ),
                );
            }
            Value::Object(m)
        }
        Certification::SurfaceGenus { genus, threshold } => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("surface-genus"));
            m.insert("genus".into(), json!(genus));
            m.insert("threshold".into(), json!(threshold));
            if cite {
                m.insert(
                    "why".into(),
                    json!(
                        "kappa classes stay independent up to degree genus/2 - 1, which \
                           reaches the first flat-vanishing degree"
                    ),
                );
            }
            Value::Object(m)
        }
    }
}

pub fn obstruction_report_to_json(r: &ObstructionReport, cite: bool) -> Value {
    let mut root = Map::new();
    root.insert("k".into(), json!(r.fiber_dim_quarter));
    root.insert(
        "signature".into(),
        json!({ "positive": r.signature.0, "negative": r.signature.1 }),
    );
    root.insert("stable_range".into(), stable_range_to_json(&r.stable_range));
    root.insert(
        "candidates".into(),
        Value::Array(
            r.candidates
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("i".into(), json!(c.class_index));
                    m.insert("degree".into(), json!(c.degree));
                    m.insert("in_stable_range".into(), json!(c.in_stable_range));
                    m.insert("bott_obstruction".into(), json!(c.bott_obstruction));
                    if cite && c.bott_obstruction {
                        m.insert(
                            "why".into(),
                            json!("vanishes on flat bundles: degree exceeds twice the fiber dimension"),
                        );
                    }
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    root.insert("verdict".into(), json!(r.verdict.text()));
    if let Verdict::Obstructed(certs) = &r.verdict {
        root.insert(
            "certifications".into(),
            Value::Array(
                certs
                    .iter()
                    .map(|c| certification_to_json(c, cite))
                    .collect(),
            ),
        );
    }
    Value::Object(root)
}

pub fn betti_table_to_json(t: &BettiTable) -> Value {
    json!({
        "valid_upto": t.valid_upto,
        "betti": t.betti.iter()
            .map(|(d, r)| (d.to_string(), json!(r.to_string())))
            .collect::<Map<String, Value>>(),
    })
}

pub fn transversality_to_json(t: &TransversalityOutcome) -> Value {
    json!({ "ok": t.ok, "witness": t.witness })
}

pub fn series_to_json(s: &FormalPowerSeries) -> Value {
    json!({
        "order": s.order(),
        "coefficients": s.coeffs().iter().map(|c| json!(c.to_string())).collect::<Vec<_>>(),
    })
}

pub fn graded_to_json(p: &GradedPolynomial) -> Value {
    let mut entries: Vec<_> = p.terms().collect();
    entries.sort_by_key(|(m, _)| (m.degree(), (*m).clone()));
    Value::Array(
        entries
            .into_iter()
            .map(|(m, c)| {
                json!({
                    "monomial": m.to_string(),
                    "degree": m.degree(),
                    "coefficient": c.to_string(),
                })
            })
            .collect(),
    )
}

pub fn tensor_to_json(t: &TensorClass) -> Value {
    json!({
        "arity": t.arity(),
        "terms": t.terms().map(|(slots, c)| json!({
            "slots": slots.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "coefficient": c.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn bo3_report_to_json(r: &Bo3RelationReport) -> Value {
    json!({
        "ch4_squared": graded_to_json(&r.ch4_squared),
        "twelve_ch8": graded_to_json(&r.twelve_ch8),
        "equal": r.equal,
        "ch4_times_ch8": graded_to_json(&r.ch4_times_ch8),
        "ch12": graded_to_json(&r.ch12),
        "degree12_ratio": r.degree12_ratio.as_ref().map(|q| q.to_string()),
    })
}

pub fn ell_relation_to_json(r: &EllRelationReport) -> Value {
    json!({
        "computed_constant": r.computed_constant.to_string(),
        "chern_relation_constant": r.chern_relation_constant.to_string(),
        "matches_chern_constant": r.matches_chern_constant,
        "note": "substituting l_i = 2*ch_{4i} into ch4^2 = 12*ch8 doubles the constant",
    })
}

pub fn surface_product_to_json(r: &SurfaceProductEll) -> Value {
    json!({
        "genera": r.genera,
        "class_index": r.class_index,
        "expansion": tensor_to_json(&r.expansion),
    })
}

pub fn certificate_to_json(c: &IndependenceCertificate) -> Value {
    json!({
        "generators": c.generators,
        "total_degree_cap": c.total_degree_cap,
        "injective": c.injective,
        "entries": c.entries.iter().map(|e| json!({
            "monomial": e.monomial.to_string(),
            "max_length": e.max_length,
            "slot_multiset": e.slot_multiset.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// One rational as the CLI prints it.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
