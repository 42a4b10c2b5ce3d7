//! JSON document formats: strict parsing, canonical (sorted-key) output,
//! and conversion to and from the in-memory types.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::cells::CellComplex;
use crate::classify::{Arrangement2D, GraphTopology, Mark, MarkedGraph, MonodromyElement};
use crate::exact::gauss::GaussianRational;
use crate::exact::{Int, IntegerLattice, Rat};
use crate::fans::{Fan, SimplicialCone};
use crate::models::{HertInvariant, LinearModel, TwistingGroup};
use crate::vfield::PolyVectorField;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

// ---------------------------------------------------------------------------
// Scalar encodings: rationals as "p/q" (or "p"), big integers as strings,
// Gaussian rationals as {"re", "im"}. Plain JSON integers are also accepted.

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a rational written as "p/q" or "p"; zero denominators are errors.
pub fn parse_rat_str(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = Int::from_str(num.trim())
        .map_err(|_| Error::Parse(format!("bad rational numerator {num:?}")))?;
    let d = Int::from_str(den.trim())
        .map_err(|_| Error::Parse(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatField(pub Rat);

impl Serialize for RatField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RatField;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\", \"p\", or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatField, E> {
                Ok(RatField(Rat::from_integer(Int::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatField, E> {
                Ok(RatField(Rat::from_integer(Int::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RatField, E> {
                parse_rat_str(v).map(RatField).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntField(pub Int);

impl Serialize for IntField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for IntField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntField;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, possibly as a string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<IntField, E> {
                Ok(IntField(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<IntField, E> {
                Ok(IntField(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<IntField, E> {
                Int::from_str(v.trim())
                    .map(IntField)
                    .map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussField {
    pub re: RatField,
    pub im: RatField,
}

impl GaussField {
    fn to_gauss(&self) -> GaussianRational {
        GaussianRational::new(self.re.0.clone(), self.im.0.clone())
    }
    fn of(g: &GaussianRational) -> Self {
        GaussField {
            re: RatField(g.re.clone()),
            im: RatField(g.im.clone()),
        }
    }
}

fn rats(v: &[Rat]) -> Vec<RatField> {
    v.iter().cloned().map(RatField).collect()
}

fn unrats(v: &[RatField]) -> Vec<Rat> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn ints(v: &[Int]) -> Vec<IntField> {
    v.iter().cloned().map(IntField).collect()
}

fn unints(v: &[IntField]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

// ---------------------------------------------------------------------------
// Payload schemas.

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanPayload {
    pub dim: usize,
    pub cones: Vec<Vec<Vec<RatField>>>,
    pub ray_marks: Vec<(usize, Vec<RatField>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermPayload {
    pub exponents: Vec<u32>,
    pub component: usize,
    pub coefficient: GaussField,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFieldPayload {
    pub dim: usize,
    pub eigenvalues: Vec<GaussField>,
    pub terms: Vec<TermPayload>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelPayload {
    pub h: usize,
    pub e: usize,
    pub r: usize,
    pub t: usize,
    pub n: usize,
    pub hyperbolic_masks: Vec<u64>,
    pub torus_targets: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexPayload {
    pub v: Vec<RatField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<IntField>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedGraphPayload {
    pub topology: String,
    pub ambient_dim: usize,
    pub vertices: Vec<VertexPayload>,
    pub lattice: Vec<Vec<IntField>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementPayload {
    pub curve_count: usize,
    pub domains: Vec<Vec<usize>>,
    pub orientation_flags: Vec<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexPayload {
    pub n: usize,
    pub counts: Vec<usize>,
    pub boundary: Vec<Vec<Vec<usize>>>,
    pub labels: Vec<Vec<(u64, usize)>>,
    pub facet_sides: Vec<(Vec<usize>, i8)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyPayload {
    pub relations: Vec<Vec<IntField>>,
    pub generator_count: usize,
    pub modulus_dim: usize,
    pub modulus_generators: Vec<Vec<IntField>>,
    pub mu: Vec<Vec<RatField>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_free: Option<Vec<Vec<RatField>>>,
}

/// Monodromy command input: a presentation, the isotropy lattice, the
/// monodromy values, and (for retwisting) replacement free values.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyInput {
    pub relations: Vec<Vec<Int>>,
    pub generator_count: usize,
    pub modulus: IntegerLattice,
    pub mu: Vec<MonodromyElement>,
    pub new_free: Option<Vec<MonodromyElement>>,
}

// ---------------------------------------------------------------------------
// Documents.

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: String,
    kind: String,
    payload: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Fan(Fan),
    VectorField(PolyVectorField),
    Model(LinearModel),
    MarkedGraph {
        graph: MarkedGraph,
        lattice: IntegerLattice,
    },
    Arrangement(Arrangement2D),
    Complex(CellComplex),
    Monodromy(MonodromyInput),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Fan(_) => "Fan",
            Document::VectorField(_) => "VectorField",
            Document::Model(_) => "Model",
            Document::MarkedGraph { .. } => "MarkedGraph",
            Document::Arrangement(_) => "Arrangement",
            Document::Complex(_) => "Complex",
            Document::Monodromy(_) => "Monodromy",
        }
    }
}

fn payload_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("payload schema violation: {e}"))
}

fn fan_from_payload(p: FanPayload) -> Result<Fan> {
    let cones = p
        .cones
        .into_iter()
        .map(|gens| {
            SimplicialCone::new(p.dim, gens.iter().map(|g| unrats(g)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let marks: BTreeMap<usize, Vec<Rat>> = p
        .ray_marks
        .into_iter()
        .map(|(i, v)| (i, unrats(&v)))
        .collect();
    Fan::new(p.dim, cones, marks)
}

fn fan_to_payload(f: &Fan) -> FanPayload {
    FanPayload {
        dim: f.ambient_dim(),
        cones: f
            .cones()
            .iter()
            .map(|c| c.generators().iter().map(|g| rats(g)).collect())
            .collect(),
        ray_marks: f
            .ray_marks()
            .iter()
            .map(|(&i, v)| (i, rats(v)))
            .collect(),
    }
}

fn vf_from_payload(p: VectorFieldPayload) -> Result<PolyVectorField> {
    let eigs: Vec<GaussianRational> = p.eigenvalues.iter().map(GaussField::to_gauss).collect();
    if eigs.len() != p.dim {
        return Err(Error::DimensionMismatch("one eigenvalue per variable".into()));
    }
    let mut x = PolyVectorField::linear(eigs);
    for t in p.terms {
        x.add_term(t.exponents, t.component, t.coefficient.to_gauss())?;
    }
    Ok(x)
}

fn vf_to_payload(x: &PolyVectorField) -> VectorFieldPayload {
    VectorFieldPayload {
        dim: x.dim(),
        eigenvalues: x.eigenvalues().iter().map(GaussField::of).collect(),
        terms: x
            .terms()
            .iter()
            .map(|((exps, comp), coeff)| TermPayload {
                exponents: exps.clone(),
                component: *comp,
                coefficient: GaussField::of(coeff),
            })
            .collect(),
    }
}

fn model_from_payload(p: ModelPayload) -> Result<LinearModel> {
    let hert = HertInvariant::new(p.h, p.e, p.r, p.t, p.n)?;
    let twist = TwistingGroup::new(p.hyperbolic_masks, p.torus_targets)?;
    LinearModel::new(hert, twist)
}

fn model_to_payload(m: &LinearModel) -> ModelPayload {
    ModelPayload {
        h: m.hert.h,
        e: m.hert.e,
        r: m.hert.r,
        t: m.hert.t,
        n: m.hert.n,
        hyperbolic_masks: m.twist.hyperbolic_masks.clone(),
        torus_targets: m.twist.torus_targets.clone(),
    }
}

fn graph_from_payload(p: MarkedGraphPayload) -> Result<(MarkedGraph, IntegerLattice)> {
    let topology = match p.topology.as_str() {
        "circle" => GraphTopology::Circle,
        "interval" => GraphTopology::Interval,
        other => return Err(Error::Parse(format!("unknown topology {other:?}"))),
    };
    let vertices = p
        .vertices
        .into_iter()
        .map(|vp| match vp.w {
            Some(w) => Mark::Couple {
                v: unrats(&vp.v),
                w: unints(&w),
            },
            None => Mark::Single(unrats(&vp.v)),
        })
        .collect();
    let lattice = IntegerLattice::from_generators(
        p.ambient_dim,
        p.lattice.iter().map(|g| unints(g)).collect(),
    )?;
    Ok((
        MarkedGraph {
            topology,
            vertices,
            ambient_dim: p.ambient_dim,
        },
        lattice,
    ))
}

fn graph_to_payload(g: &MarkedGraph, z: &IntegerLattice) -> MarkedGraphPayload {
    MarkedGraphPayload {
        topology: match g.topology {
            GraphTopology::Circle => "circle".into(),
            GraphTopology::Interval => "interval".into(),
        },
        ambient_dim: g.ambient_dim,
        vertices: g
            .vertices
            .iter()
            .map(|m| match m {
                Mark::Single(v) => VertexPayload {
                    v: rats(v),
                    w: None,
                },
                Mark::Couple { v, w } => VertexPayload {
                    v: rats(v),
                    w: Some(ints(w)),
                },
            })
            .collect(),
        lattice: z.basis().iter().map(|g| ints(g)).collect(),
    }
}

fn complex_from_payload(p: ComplexPayload) -> Result<CellComplex> {
    CellComplex::new(p.n, p.counts, p.boundary, p.labels, p.facet_sides)
}

fn complex_to_payload(c: &CellComplex) -> ComplexPayload {
    let n = c.top_dim();
    ComplexPayload {
        n,
        counts: c.counts().to_vec(),
        boundary: (0..=n)
            .map(|d| {
                (0..c.counts()[d])
                    .map(|i| if d == 0 { Vec::new() } else { c.boundary_of(d, i).to_vec() })
                    .collect()
            })
            .collect(),
        labels: c.labels().to_vec(),
        facet_sides: c.facet_sides().to_vec(),
    }
}

fn monodromy_from_payload(p: MonodromyPayload) -> Result<MonodromyInput> {
    let modulus = IntegerLattice::from_generators(
        p.modulus_dim,
        p.modulus_generators.iter().map(|g| unints(g)).collect(),
    )?;
    let mu = p
        .mu
        .iter()
        .map(|v| MonodromyElement::new(unrats(v), modulus.clone()))
        .collect::<Result<Vec<_>>>()?;
    let new_free = match p.new_free {
        Some(rows) => Some(
            rows.iter()
                .map(|v| MonodromyElement::new(unrats(v), modulus.clone()))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(MonodromyInput {
        relations: p.relations.iter().map(|r| unints(r)).collect(),
        generator_count: p.generator_count,
        modulus,
        mu,
        new_free,
    })
}

fn monodromy_to_payload(m: &MonodromyInput) -> MonodromyPayload {
    MonodromyPayload {
        relations: m.relations.iter().map(|r| ints(r)).collect(),
        generator_count: m.generator_count,
        modulus_dim: m.modulus.ambient_dim(),
        modulus_generators: m.modulus.basis().iter().map(|g| ints(g)).collect(),
        mu: m.mu.iter().map(|e| rats(&e.representative)).collect(),
        new_free: m
            .new_free
            .as_ref()
            .map(|v| v.iter().map(|e| rats(&e.representative)).collect()),
    }
}

/// Strict parse of a JSON document: unknown fields, unknown kinds, malformed
/// scalars, and unrecognized schema versions are all errors.
pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unrecognized schema_version {:?} (expected {SCHEMA_VERSION:?})",
            raw.schema_version
        )));
    }
    match raw.kind.as_str() {
        "Fan" => fan_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)
            .map(Document::Fan),
        "VectorField" => {
            vf_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)
                .map(Document::VectorField)
        }
        "Model" => model_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)
            .map(Document::Model),
        "MarkedGraph" => {
            let (graph, lattice) =
                graph_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)?;
            Ok(Document::MarkedGraph { graph, lattice })
        }
        "Arrangement" => {
            let p: ArrangementPayload =
                serde_json::from_value(raw.payload).map_err(payload_err)?;
            Ok(Document::Arrangement(Arrangement2D {
                curve_count: p.curve_count,
                domains: p.domains,
                orientation_flags: p.orientation_flags,
            }))
        }
        "Complex" => {
            complex_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)
                .map(Document::Complex)
        }
        "Monodromy" => {
            monodromy_from_payload(serde_json::from_value(raw.payload).map_err(payload_err)?)
                .map(Document::Monodromy)
        }
        other => Err(Error::Parse(format!("unknown document kind {other:?}"))),
    }
}

/// Canonical serialization: sorted keys, canonical rational strings, pretty
/// printed. Byte-stable for equal documents.
pub fn serialize_document(doc: &Document) -> Result<String> {
    let payload = match doc {
        Document::Fan(f) => serde_json::to_value(fan_to_payload(f)),
        Document::VectorField(x) => serde_json::to_value(vf_to_payload(x)),
        Document::Model(m) => serde_json::to_value(model_to_payload(m)),
        Document::MarkedGraph { graph, lattice } => {
            serde_json::to_value(graph_to_payload(graph, lattice))
        }
        Document::Arrangement(a) => serde_json::to_value(ArrangementPayload {
            curve_count: a.curve_count,
            domains: a.domains.clone(),
            orientation_flags: a.orientation_flags.clone(),
        }),
        Document::Complex(c) => serde_json::to_value(complex_to_payload(c)),
        Document::Monodromy(m) => serde_json::to_value(monodromy_to_payload(m)),
    }
    .map_err(|e| Error::Parse(e.to_string()))?;
    let raw = RawDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: doc.kind().to_string(),
        payload,
    };
    // Route through Value so maps are emitted with sorted keys.
    let value = serde_json::to_value(&raw).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out =
        serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

/// Pretty, canonical JSON for report values (sorted keys).
pub fn canonical_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(format_rat(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};
    use crate::fans::quadrant_fan;

    fn round_trip(doc: &Document) {
        let text = serialize_document(doc).unwrap();
        let back = parse_document(&text).unwrap();
        let text2 = serialize_document(&back).unwrap();
        assert_eq!(text, text2, "serialization must be byte-stable");
        assert_eq!(doc, &back);
    }

    #[test]
    fn quadrant_fan_round_trip() {
        let f = quadrant_fan().unwrap();
        let doc = Document::Fan(f);
        let text = serialize_document(&doc).unwrap();
        assert!(text.contains("\"kind\": \"Fan\""));
        let Document::Fan(back) = parse_document(&text).unwrap() else {
            panic!("expected a fan");
        };
        assert_eq!(back.cones().len(), 9);
        round_trip(&doc);
    }

    #[test]
    fn vector_field_round_trip() {
        // x1 d1 + 2 x2 d2 + 5 x1^2 d2.
        let text = r#"{
            "schema_version": "1",
            "kind": "VectorField",
            "payload": {
                "dim": 2,
                "eigenvalues": [{"re": "1", "im": "0"}, {"re": "2", "im": "0"}],
                "terms": [{"exponents": [2, 0], "component": 1,
                           "coefficient": {"re": "5", "im": "0"}}]
            }
        }"#;
        let Document::VectorField(x) = parse_document(text).unwrap() else {
            panic!("expected a vector field");
        };
        assert_eq!(x.dim(), 2);
        assert_eq!(x.terms().len(), 1);
        round_trip(&Document::VectorField(x));
    }

    #[test]
    fn zero_denominator_rejected() {
        let text = r#"{
            "schema_version": "1",
            "kind": "VectorField",
            "payload": {
                "dim": 1,
                "eigenvalues": [{"re": "1/0", "im": "0"}],
                "terms": []
            }
        }"#;
        let err = parse_document(text).unwrap_err();
        assert!(err.to_string().contains("zero denominator"));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{
            "schema_version": "1",
            "kind": "Arrangement",
            "payload": {
                "curve_count": 3,
                "domains": [[0, 1, 2]],
                "orientation_flags": [true],
                "extra": 1
            }
        }"#;
        assert!(parse_document(text).is_err());
        let top = r#"{"schema_version": "1", "kind": "Arrangement", "payload": {}, "junk": 0}"#;
        assert!(parse_document(top).is_err());
    }

    #[test]
    fn unknown_version_and_kind_rejected() {
        let v = r#"{"schema_version": "99", "kind": "Fan", "payload": {}}"#;
        assert!(parse_document(v).is_err());
        let k = r#"{"schema_version": "1", "kind": "Blob", "payload": {}}"#;
        assert!(parse_document(k).is_err());
    }

    #[test]
    fn rational_forms_accepted() {
        assert_eq!(parse_rat_str("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rat_str("-4").unwrap(), rat(-4));
        assert!(parse_rat_str("x").is_err());
    }

    #[test]
    fn marked_graph_and_monodromy_round_trip() {
        let text = r#"{
            "schema_version": "1",
            "kind": "MarkedGraph",
            "payload": {
                "topology": "interval",
                "ambient_dim": 2,
                "vertices": [
                    {"v": ["1", "0"], "w": ["0", "1"]},
                    {"v": ["-1", "0"]}
                ],
                "lattice": [["0", "1"]]
            }
        }"#;
        let doc = parse_document(text).unwrap();
        round_trip(&doc);
        let mono = r#"{
            "schema_version": "1",
            "kind": "Monodromy",
            "payload": {
                "relations": [["2", "0"]],
                "generator_count": 2,
                "modulus_dim": 2,
                "modulus_generators": [["0", "1"]],
                "mu": [["0", "1/2"], ["3", "7"]]
            }
        }"#;
        let doc = parse_document(mono).unwrap();
        round_trip(&doc);
    }

    #[test]
    fn complex_round_trip() {
        let c = crate::cells::glue_polygon(3, &[1, 2, 3]).unwrap();
        round_trip(&Document::Complex(c));
    }

    #[test]
    fn model_round_trip() {
        let m = LinearModel::totally_hyperbolic_chart(3).unwrap();
        round_trip(&Document::Model(m));
    }
}
