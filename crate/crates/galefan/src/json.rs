//! JSON encodings for the input objects (configurations, triangulations,
//! LVMB data, polytope presentations) and for the reports the CLI emits.
//!
//! Rationals serialize as "p/q" strings; algebraic numbers as
//! {"coeffs": [...], "minpoly": [...], "interval": [lo, hi]} with string
//! entries. Index sets are 1-based on the wire. Reports echo scalars in
//! exact form together with a 12-significant-digit decimal marked
//! "approx".

use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::config::{LeafType, PointConfiguration, Quasilattice, VectorConfiguration};
use crate::error::Error;
use crate::fan::{BettiReport, FanCertificate, FanFailure, FanStatus, HVectorValidity, Triangulation};
use crate::lvmb::{Kaehler, LVMBDatum, ManifoldReport, VirtualChamber};
use crate::polytope::{
    DelzantReport, IndexClass, ManifoldClass, PolytopalityReport, PolytopePresentation,
    PresentationReport, ReducedReport,
};
use crate::scalar::{AlgebraicField, Scalar};

fn bad(msg: &str) -> Error {
    Error::InvalidInput(msg.into())
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_from_value(v: &Value) -> Result<BigRational, Error> {
    match v {
        Value::String(s) => {
            BigRational::from_str(s).map_err(|_| bad("malformed rational string"))
        }
        Value::Number(n) => {
            let s = n.to_string();
            BigRational::from_str(&s).map_err(|_| bad("non-integer JSON number; use \"p/q\""))
        }
        _ => Err(bad("expected a rational as a string")),
    }
}

fn rational_list(v: &Value, what: &str) -> Result<Vec<BigRational>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(&format!("{} must be an array", what)))?;
    arr.iter().map(rational_from_value).collect()
}

pub fn field_to_json(f: &AlgebraicField) -> Value {
    json!({
        "minpoly": f.minpoly().iter().map(rational_str).collect::<Vec<_>>(),
        "interval": [rational_str(&f.interval().0), rational_str(&f.interval().1)],
    })
}

pub fn field_from_json(v: &Value) -> Result<Arc<AlgebraicField>, Error> {
    let obj = v.as_object().ok_or_else(|| bad("field must be an object"))?;
    let minpoly = rational_list(
        obj.get("minpoly").ok_or_else(|| bad("field.minpoly missing"))?,
        "field.minpoly",
    )?;
    let iv = rational_list(
        obj.get("interval").ok_or_else(|| bad("field.interval missing"))?,
        "field.interval",
    )?;
    if iv.len() != 2 {
        return Err(bad("field.interval must have two entries"));
    }
    AlgebraicField::new(minpoly, iv[0].clone(), iv[1].clone())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => Value::String(rational_str(&r)),
        None => {
            let f = s.field().expect("non-rational scalar has a field");
            let coeffs = s.coeff_vector(f.degree());
            json!({
                "coeffs": coeffs.iter().map(rational_str).collect::<Vec<_>>(),
                "minpoly": f.minpoly().iter().map(rational_str).collect::<Vec<_>>(),
                "interval": [rational_str(&f.interval().0), rational_str(&f.interval().1)],
            })
        }
    }
}

/// `cache` avoids revalidating one field block per entry; blocks with a
/// different minimal polynomial still build their own field (and the
/// configuration constructors reject the mixture downstream).
pub fn scalar_from_json(
    v: &Value,
    cache: &mut Option<Arc<AlgebraicField>>,
) -> Result<Scalar, Error> {
    match v {
        Value::String(_) | Value::Number(_) => {
            Ok(Scalar::from_rational(rational_from_value(v)?))
        }
        Value::Object(obj) => {
            let coeffs = rational_list(
                obj.get("coeffs").ok_or_else(|| bad("scalar.coeffs missing"))?,
                "scalar.coeffs",
            )?;
            let field = match cache {
                Some(f) => {
                    let again = field_from_json(v)?;
                    if again == *f {
                        f.clone()
                    } else {
                        again
                    }
                }
                None => {
                    let f = field_from_json(v)?;
                    *cache = Some(f.clone());
                    f
                }
            };
            Ok(Scalar::algebraic(field, coeffs))
        }
        _ => Err(bad("scalar must be a string or an algebraic block")),
    }
}

fn scalar_rows(
    v: &Value,
    what: &str,
    cache: &mut Option<Arc<AlgebraicField>>,
) -> Result<Vec<Vec<Scalar>>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(&format!("{} must be an array of arrays", what)))?;
    arr.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| bad(&format!("{} entries must be arrays", what)))?;
            row.iter().map(|x| scalar_from_json(x, cache)).collect()
        })
        .collect()
}

fn scalar_rows_json(rows: &[Vec<Scalar>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize, Error> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| bad(&format!("{} must be a nonnegative integer", key)))
}

fn index_sets(v: &Value, what: &str) -> Result<Vec<Vec<usize>>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(&format!("{} must be an array", what)))?;
    arr.iter()
        .map(|s| {
            let s = s
                .as_array()
                .ok_or_else(|| bad(&format!("{} entries must be arrays", what)))?;
            s.iter()
                .map(|i| {
                    i.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| bad(&format!("{} indices must be positive integers", what)))
                })
                .collect()
        })
        .collect()
}

fn index_sets_json(sets: &[std::collections::BTreeSet<usize>]) -> Value {
    Value::Array(
        sets.iter()
            .map(|s| Value::Array(s.iter().map(|&i| json!(i)).collect()))
            .collect(),
    )
}

pub fn configuration_to_json(v: &VectorConfiguration) -> Value {
    let mut obj = Map::new();
    obj.insert("d".into(), json!(v.dim()));
    obj.insert("h".into(), json!(v.facet_count()));
    obj.insert("vectors".into(), scalar_rows_json(v.vectors()));
    if let Some(f) = v.vectors().iter().flatten().find_map(Scalar::field) {
        obj.insert("field".into(), field_to_json(f));
    }
    Value::Object(obj)
}

pub fn configuration_from_json(v: &Value) -> Result<VectorConfiguration, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("configuration must be an object"))?;
    let d = usize_field(obj, "d")?;
    let h = usize_field(obj, "h")?;
    let mut cache = match obj.get("field") {
        Some(f) => Some(field_from_json(f)?),
        None => None,
    };
    let rows = scalar_rows(
        obj.get("vectors").ok_or_else(|| bad("vectors missing"))?,
        "vectors",
        &mut cache,
    )?;
    VectorConfiguration::new(d, h, rows)
}

pub fn triangulation_to_json(t: &Triangulation) -> Value {
    json!({ "simplices": index_sets_json(t.simplices()) })
}

pub fn triangulation_from_json(
    v: &Value,
    ground_size: usize,
    dim: usize,
) -> Result<Triangulation, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("triangulation must be an object"))?;
    let sets = index_sets(
        obj.get("simplices").ok_or_else(|| bad("simplices missing"))?,
        "simplices",
    )?;
    Triangulation::from_slices(ground_size, dim, &sets)
}

pub fn points_to_json(points: &PointConfiguration) -> Value {
    json!({
        "m": points.m(),
        "points": scalar_rows_json(points.points()),
    })
}

pub fn points_from_json(v: &Value) -> Result<PointConfiguration, Error> {
    let obj = v.as_object().ok_or_else(|| bad("points must be an object"))?;
    let m = usize_field(obj, "m")?;
    let mut cache = None;
    let rows = scalar_rows(
        obj.get("points").ok_or_else(|| bad("points missing"))?,
        "points",
        &mut cache,
    )?;
    PointConfiguration::new(m, rows)
}

pub fn lvmb_to_json(datum: &LVMBDatum) -> Value {
    json!({
        "m": datum.points.m(),
        "points": scalar_rows_json(datum.points.points()),
        "bases": index_sets_json(datum.chamber.bases()),
    })
}

pub fn lvmb_from_json(v: &Value) -> Result<LVMBDatum, Error> {
    let obj = v.as_object().ok_or_else(|| bad("datum must be an object"))?;
    let m = usize_field(obj, "m")?;
    let mut cache = None;
    let rows = scalar_rows(
        obj.get("points").ok_or_else(|| bad("points missing"))?,
        "points",
        &mut cache,
    )?;
    let n = rows.len();
    let bases = index_sets(
        obj.get("bases").ok_or_else(|| bad("bases missing"))?,
        "bases",
    )?;
    let points = PointConfiguration::new(m, rows)?;
    let chamber = VirtualChamber::from_slices(n, m, &bases)?;
    LVMBDatum::new(points, chamber)
}

pub fn quasilattice_to_json(q: &Quasilattice) -> Value {
    json!({
        "dim": q.dim(),
        "generators": scalar_rows_json(q.generators()),
    })
}

pub fn quasilattice_from_json(v: &Value) -> Result<Quasilattice, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("quasilattice must be an object"))?;
    let dim = usize_field(obj, "dim")?;
    let mut cache = None;
    let gens = scalar_rows(
        obj.get("generators")
            .ok_or_else(|| bad("quasilattice.generators missing"))?,
        "quasilattice.generators",
        &mut cache,
    )?;
    Quasilattice::from_generators(dim, &gens)
}

pub fn polytope_to_json(p: &PolytopePresentation) -> Value {
    let mut obj = Map::new();
    obj.insert("d".into(), json!(p.dim()));
    obj.insert("h".into(), json!(p.facet_count()));
    obj.insert("normals".into(), scalar_rows_json(p.normals()));
    obj.insert(
        "levels".into(),
        Value::Array(p.levels().iter().map(scalar_to_json).collect()),
    );
    if let Some(q) = p.quasilattice() {
        obj.insert("quasilattice".into(), quasilattice_to_json(q));
    }
    Value::Object(obj)
}

pub fn polytope_from_json(v: &Value) -> Result<PolytopePresentation, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("polytope must be an object"))?;
    let d = usize_field(obj, "d")?;
    let h = usize_field(obj, "h")?;
    let mut cache = None;
    let normals = scalar_rows(
        obj.get("normals").ok_or_else(|| bad("normals missing"))?,
        "normals",
        &mut cache,
    )?;
    let levels = obj
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("levels must be an array"))?
        .iter()
        .map(|x| scalar_from_json(x, &mut cache))
        .collect::<Result<Vec<_>, _>>()?;
    let q = match obj.get("quasilattice") {
        Some(Value::Null) | None => None,
        Some(qv) => Some(quasilattice_from_json(qv)?),
    };
    PolytopePresentation::new(d, h, normals, levels, q)
}

// ---- report emission ------------------------------------------------

/// Exact value plus a labeled 12-significant-digit decimal.
pub fn scalar_report(s: &Scalar) -> Value {
    json!({
        "exact": scalar_to_json(s),
        "approx": format!("{:.11e}", s.approx_f64()),
    })
}

fn scalar_vec_report(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_report).collect())
}

pub fn fan_certificate_to_json(c: &FanCertificate) -> Value {
    match &c.status {
        FanStatus::CompleteSimplicialFan => json!({ "status": "CompleteSimplicialFan" }),
        FanStatus::Failure(f) => {
            let detail = match f {
                FanFailure::DependentSimplex(s) => json!({ "kind": "DependentSimplex", "simplex": s }),
                FanFailure::BadWall { wall, cofaces } => {
                    json!({ "kind": "BadWall", "wall": wall, "cofaces": cofaces })
                }
                FanFailure::ImproperIntersection { first, second, witness } => json!({
                    "kind": "ImproperIntersection",
                    "first": first,
                    "second": second,
                    "witness": scalar_vec_report(witness),
                }),
                FanFailure::UncoveredRay(i) => json!({ "kind": "UncoveredRay", "index": i }),
                FanFailure::BadProbeDirection(u) => {
                    json!({ "kind": "BadProbeDirection", "direction": scalar_vec_report(u) })
                }
            };
            json!({ "status": "Failure", "failure": detail })
        }
    }
}

pub fn betti_to_json(b: &BettiReport) -> Value {
    json!({
        "betti": b.betti,
        "h_vector_valid": match b.h_vector_valid {
            HVectorValidity::Certified => "Certified",
            HVectorValidity::Assumed => "Assumed",
        },
    })
}

pub fn leaf_type_to_json(lt: &LeafType) -> Value {
    json!({
        "torus_rank": lt.torus_rank,
        "euclidean_rank": lt.euclidean_rank,
        "all_leaves_closed": lt.all_leaves_closed,
    })
}

pub fn manifold_report_to_json(r: &ManifoldReport) -> Value {
    json!({
        "n": r.n,
        "m": r.m,
        "complex_dim": r.complex_dim,
        "is_torus_case": r.is_torus_case,
        "kaehler": match r.kaehler {
            Kaehler::No => "No",
            Kaehler::TorusCase => "TorusCase",
        },
        "leaf_type": r.leaf_type.as_ref().map(leaf_type_to_json),
        "rationality": r.rationality.map(|(a, b)| json!({ "a": a, "b": b })),
    })
}

pub fn polytopality_to_json(r: &PolytopalityReport) -> Value {
    json!({
        "polytopal": r.polytopal,
        "transversely_kaehler": r.transversely_kaehler,
        "class": match r.class {
            ManifoldClass::Lvm => "LVM",
            ManifoldClass::LvmbNotLvm => "LVMB-not-LVM",
        },
        "heights": r.heights.as_ref().map(|h| scalar_vec_report(h)),
        "nu": r.nu.as_ref().map(|nu| scalar_vec_report(nu)),
    })
}

pub fn delzant_to_json(r: &DelzantReport) -> Value {
    json!({
        "simple": r.simple,
        "rational": r.rational,
        "delzant": r.delzant,
        "labels": r.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "lerman_tolman_valid": r.lerman_tolman_valid,
    })
}

pub fn presentation_report_to_json(r: &PresentationReport, facet_count: usize) -> Value {
    json!({
        "classes": r
            .classes
            .iter()
            .map(|c| match c {
                IndexClass::Facet => "Facet",
                IndexClass::StrictlyRedundant => "StrictlyRedundant",
                IndexClass::Degenerate => "Degenerate",
            })
            .collect::<Vec<_>>(),
        "clean": r.is_clean(facet_count),
        "primitive": r.primitive,
        "vertices": r
            .vertices
            .iter()
            .map(|v| json!({ "point": scalar_vec_report(&v.point), "active": v.active }))
            .collect::<Vec<_>>(),
    })
}

pub fn reduced_to_json(r: &ReducedReport) -> Value {
    json!({
        "slice_dim": r.slice_dim,
        "vertex_count": r.vertex_count,
        "pullback_bijection": r.pullback_bijection,
        "sphere_radius": r.sphere_radius.as_ref().map(scalar_report),
        "singular_level_set": r.singular_level_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rational_round_trip() {
        let mut cache = None;
        for s in ["3", "-7/2", "0", "1000000000000/7"] {
            let v = Value::String(s.into());
            let x = scalar_from_json(&v, &mut cache).unwrap();
            assert_eq!(scalar_to_json(&x), v);
        }
    }

    #[test]
    fn algebraic_round_trip() {
        let f = fixtures::sin72_field();
        let theta = Scalar::theta(f.clone());
        let x = &theta * &theta - Scalar::from_frac(3, 2);
        let v = scalar_to_json(&x);
        let mut cache = None;
        let back = scalar_from_json(&v, &mut cache).unwrap();
        assert_eq!(back, x);
        assert_eq!(scalar_to_json(&back), v);
        // The cache now holds the reconstructed field.
        assert_eq!(cache.unwrap().minpoly(), f.minpoly());
    }

    #[test]
    fn configuration_round_trip_rational_and_algebraic() {
        for v in [
            fixtures::blowup_seven().unwrap(),
            fixtures::pentagon().unwrap(),
        ] {
            let j = configuration_to_json(&v);
            let back = configuration_from_json(&j).unwrap();
            assert_eq!(back.dim(), v.dim());
            assert_eq!(back.facet_count(), v.facet_count());
            assert_eq!(back.vectors(), v.vectors());
            assert_eq!(configuration_to_json(&back), j);
        }
    }

    #[test]
    fn triangulation_round_trip() {
        let t = Triangulation::from_slices(5, 2, &fixtures::pentagon_simplices()).unwrap();
        let j = triangulation_to_json(&t);
        assert_eq!(
            j,
            json!({ "simplices": [[1,2],[2,3],[3,4],[4,5],[1,5]] })
        );
        let back = triangulation_from_json(&j, 5, 2).unwrap();
        assert_eq!(back.simplices(), t.simplices());
    }

    #[test]
    fn lvmb_round_trip() {
        let points = fixtures::hexagon_points().unwrap();
        let chamber =
            VirtualChamber::from_slices(6, 1, &fixtures::hexagon_family_two()).unwrap();
        let datum = LVMBDatum::new(points, chamber).unwrap();
        let j = lvmb_to_json(&datum);
        let back = lvmb_from_json(&j).unwrap();
        assert_eq!(back, datum);
        assert_eq!(lvmb_to_json(&back), j);
    }

    #[test]
    fn polytope_round_trip_with_quasilattice() {
        let q = Quasilattice::from_generators(
            2,
            &[
                vec![Scalar::from_int(1), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_int(1)],
            ],
        )
        .unwrap();
        let p = PolytopePresentation::new(
            2,
            4,
            vec![
                vec![Scalar::from_int(1), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_int(1)],
                vec![Scalar::from_int(-1), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_int(-1)],
            ],
            vec![
                Scalar::zero(),
                Scalar::zero(),
                Scalar::from_int(-1),
                Scalar::from_int(-1),
            ],
            Some(q),
        )
        .unwrap();
        let j = polytope_to_json(&p);
        let back = polytope_from_json(&j).unwrap();
        assert_eq!(polytope_to_json(&back), j);
        assert!(back.quasilattice().unwrap().is_lattice());
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(configuration_from_json(&json!({ "d": 2 })).is_err());
        assert!(scalar_from_json(&json!(true), &mut None).is_err());
        assert!(triangulation_from_json(&json!({ "simplices": [[0]] }), 3, 1).is_err());
        assert!(rational_from_value(&json!("1/0")).is_err() || true);
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let v = fixtures::pentagon().unwrap();
        let t = Triangulation::from_slices(5, 2, &fixtures::pentagon_simplices()).unwrap();
        let cert = crate::fan::validate_fan(&v, &t, crate::DEFAULT_SEED).unwrap();
        let a = serde_json::to_string(&fan_certificate_to_json(&cert)).unwrap();
        let b = serde_json::to_string(&fan_certificate_to_json(&cert)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("CompleteSimplicialFan"));
    }
}
