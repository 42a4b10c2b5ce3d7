//! Command-line front end: validates, locates, glues, normalizes, and
//! classifies documents in the JSON formats of the `doc` module.
//!
//! Exit codes: 0 = ok / feasible / valid, 1 = a validly computed negative
//! answer (invalid fan, infeasible arrangement, ...), 2 = usage or parse
//! error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hyperfan::cells::{
    complex_invariants, domain_from_fan, glue_reflections, standard_surface, CellComplex,
    FacetLabeling, SurfaceKind,
};
use hyperfan::classify::{
    check_2d_arrangement, classify_case, monodromy_decompose, monodromy_retwist,
    validate_marked_graph, AbelianPresentation, ArrangementResult, CaseLetter,
};
use hyperfan::doc::{
    canonical_json, parse_document, rat_to_json, serialize_document, Document,
};
use hyperfan::exact::Rat;
use hyperfan::fans::{fan_locate, is_complete, validate_fan, Fan};
use hyperfan::models::enumerate_singularity_types;
use hyperfan::resonance::{resonance_report, EigenvalueTuple};
use hyperfan::vfield::{is_pb_normal, pd_normalize};
use hyperfan::Error;

#[derive(Parser)]
#[command(name = "hyperfan", version, about = "Fans, normal forms, gluings, and classifications", disable_help_subcommand = true)]
struct Cli {
    /// Emit machine-readable JSON reports (sorted keys, byte-stable).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms (disjointness, face closure, ray marks).
    ValidateFan { file: String },
    /// Check whether a valid fan is complete.
    Complete { file: String },
    /// Locate a point in a fan (exactly one relatively open cone).
    Locate {
        file: String,
        /// Comma-separated rational coordinates, e.g. "1,-2/3".
        #[arg(long)]
        point: String,
    },
    /// Build the domain cell complex dual to a complete fan.
    Domain { file: String },
    /// Glue reflected copies of a fan's domain complex along labeled facets.
    Glue {
        file: String,
        /// Comma-separated facet labels, one per top-dimensional facet wall
        /// of the polygon (e.g. "1,2,3").
        #[arg(long)]
        labels: String,
    },
    /// Euler characteristic, closedness, and orientability of a complex.
    Invariants { file: String },
    /// Emit a standard surface as a Complex document.
    Surface {
        /// "sphere8" or "genus:G".
        #[arg(long)]
        kind: String,
    },
    /// Resonance relations and the toric degree of an eigenvalue tuple.
    Resonance {
        file: String,
        /// Degree bound for resonance enumeration.
        #[arg(long)]
        bound: u32,
    },
    /// Poincare-Dulac normalization up to a degree.
    Normalize {
        file: String,
        #[arg(long)]
        degree: u32,
    },
    /// Check whether a field is already in normal form up to a degree.
    NfCheck {
        file: String,
        #[arg(long)]
        degree: u32,
    },
    /// Enumerate nondegenerate singularity types for given invariants.
    Types {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        toric_degree: usize,
    },
    /// Validate a marked graph against its isotropy lattice.
    MarkedGraph { file: String },
    /// Classify a valid marked graph (case letter and manifold name).
    Classify { file: String },
    /// Decide realizability of a 2D curve arrangement.
    Arrangement { file: String },
    /// Monodromy operations on a presented abelian group.
    Monodromy {
        #[command(subcommand)]
        op: MonodromyOp,
    },
}

#[derive(Subcommand)]
enum MonodromyOp {
    /// Split a monodromy map into torsion and free parts.
    Decompose { file: String },
    /// Replace the free part (payload field new_free) and reassemble.
    Retwist { file: String },
}

/// A computed outcome: `ok` decides exit 0 vs 1; the report is printed
/// either as text lines or as canonical JSON.
struct Outcome {
    ok: bool,
    text: Vec<String>,
    json: Value,
}

fn load(path: &str) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    parse_document(&text)
}

fn want_fan(doc: Document) -> Result<Fan, Error> {
    match doc {
        Document::Fan(f) => Ok(f),
        other => Err(Error::Parse(format!(
            "expected a Fan document, got {}",
            other.kind()
        ))),
    }
}

fn want_complex(doc: Document) -> Result<CellComplex, Error> {
    match doc {
        Document::Complex(c) => Ok(c),
        other => Err(Error::Parse(format!(
            "expected a Complex document, got {}",
            other.kind()
        ))),
    }
}

fn parse_point(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',').map(hyperfan::doc::parse_rat_str).collect()
}

fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

fn invariants_outcome(c: &CellComplex) -> Outcome {
    let inv = complex_invariants(c);
    Outcome {
        ok: true,
        text: vec![format!(
            "chi={} orientable={} closed={} cells={:?}",
            inv.euler, inv.orientable, inv.closed, inv.census
        )],
        json: json!({
            "chi": inv.euler,
            "orientable": inv.orientable,
            "closed": inv.closed,
            "cells": inv.census,
        }),
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::ValidateFan { file } => {
            let fan = want_fan(load(&file)?)?;
            let report = validate_fan(&fan)?;
            let mut text = vec![format!("valid={}", report.ok)];
            for v in &report.violations {
                text.push(format!("violation: {} cones {:?}", v.rule, v.cones));
            }
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "rule": v.rule.to_string(),
                        "cones": v.cones,
                        "witness": v.witness.as_ref().map(|w| rat_vec_json(w)),
                    })
                })
                .collect();
            Ok(Outcome {
                ok: report.ok,
                text,
                json: json!({"valid": report.ok, "violations": violations}),
            })
        }
        Command::Complete { file } => {
            let fan = want_fan(load(&file)?)?;
            let complete = is_complete(&fan)?;
            Ok(Outcome {
                ok: complete,
                text: vec![format!("complete={complete}")],
                json: json!({"complete": complete}),
            })
        }
        Command::Locate { file, point } => {
            let fan = want_fan(load(&file)?)?;
            let w = parse_point(&point)?;
            let idx = fan_locate(&fan, &w)?;
            Ok(Outcome {
                ok: true,
                text: vec![format!("cone={idx}")],
                json: json!({"cone": idx}),
            })
        }
        Command::Domain { file } => {
            let fan = want_fan(load(&file)?)?;
            let d = domain_from_fan(&fan)?;
            let doc = Document::Complex(d.complex);
            let out = serialize_document(&doc)?;
            Ok(Outcome {
                ok: true,
                text: vec![out.trim_end().to_string()],
                json: serde_json::from_str(&out).expect("serialized document is valid JSON"),
            })
        }
        Command::Glue { file, labels } => {
            let fan = want_fan(load(&file)?)?;
            let d = domain_from_fan(&fan)?;
            let labels: Vec<usize> = labels
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad label {x:?}")))
                })
                .collect::<Result<_, Error>>()?;
            let glued = glue_reflections(&d, &FacetLabeling::from_list(&labels))?;
            let doc = Document::Complex(glued);
            let out = serialize_document(&doc)?;
            Ok(Outcome {
                ok: true,
                text: vec![out.trim_end().to_string()],
                json: serde_json::from_str(&out).expect("serialized document is valid JSON"),
            })
        }
        Command::Invariants { file } => {
            let c = want_complex(load(&file)?)?;
            Ok(invariants_outcome(&c))
        }
        Command::Surface { kind } => {
            let parsed = if kind == "sphere8" {
                SurfaceKind::Sphere8
            } else if let Some(g) = kind.strip_prefix("genus:") {
                SurfaceKind::OrientableGenus(
                    g.parse()
                        .map_err(|_| Error::Parse(format!("bad genus {g:?}")))?,
                )
            } else {
                return Err(Error::Parse(format!(
                    "unknown surface kind {kind:?} (want sphere8 or genus:G)"
                )));
            };
            let c = standard_surface(parsed)?;
            let doc = Document::Complex(c);
            let out = serialize_document(&doc)?;
            Ok(Outcome {
                ok: true,
                text: vec![out.trim_end().to_string()],
                json: serde_json::from_str(&out).expect("serialized document is valid JSON"),
            })
        }
        Command::Resonance { file, bound } => {
            let doc = load(&file)?;
            let Document::VectorField(x) = doc else {
                return Err(Error::Parse(format!(
                    "expected a VectorField document, got {}",
                    doc.kind()
                )));
            };
            let report = resonance_report(&EigenvalueTuple::new(x.eigenvalues().to_vec()), bound)?;
            let gens: Vec<Vec<String>> = report
                .generators
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(Outcome {
                ok: true,
                text: vec![format!(
                    "resonance_rank={} toric_degree={} generators={:?}",
                    report.resonance_rank, report.toric_degree, gens
                )],
                json: json!({
                    "resonance_rank": report.resonance_rank,
                    "toric_degree": report.toric_degree,
                    "relations": report.relations.iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "generators": gens,
                    "degree_bound": report.degree_bound,
                }),
            })
        }
        Command::Normalize { file, degree } => {
            let doc = load(&file)?;
            let Document::VectorField(x) = doc else {
                return Err(Error::Parse(format!(
                    "expected a VectorField document, got {}",
                    doc.kind()
                )));
            };
            let (nf, steps) = pd_normalize(&x, degree)?;
            let out = serialize_document(&Document::VectorField(nf))?;
            let mut json: Value =
                serde_json::from_str(&out).expect("serialized document is valid JSON");
            json["eliminations"] = Value::from(steps.len());
            Ok(Outcome {
                ok: true,
                text: vec![
                    format!("eliminations={}", steps.len()),
                    out.trim_end().to_string(),
                ],
                json,
            })
        }
        Command::NfCheck { file, degree } => {
            let doc = load(&file)?;
            let Document::VectorField(x) = doc else {
                return Err(Error::Parse(format!(
                    "expected a VectorField document, got {}",
                    doc.kind()
                )));
            };
            let normal = is_pb_normal(&x, degree)?;
            Ok(Outcome {
                ok: normal,
                text: vec![format!("normal={normal}")],
                json: json!({"normal": normal}),
            })
        }
        Command::Types { dim, toric_degree } => {
            let types = enumerate_singularity_types(dim, toric_degree)?;
            let mut text = Vec::new();
            let mut items = Vec::new();
            for t in &types {
                let label = t.label.unwrap_or("-");
                text.push(format!(
                    "{label}\t{}\t(h,e,r,t)=({},{},{},{})",
                    t.name, t.hert.h, t.hert.e, t.hert.r, t.hert.t
                ));
                items.push(json!({
                    "label": t.label,
                    "name": t.name,
                    "h": t.hert.h, "e": t.hert.e, "r": t.hert.r, "t": t.hert.t,
                    "twist_rank": t.twist.rank,
                    "hyperbolic_masks": t.twist.hyperbolic_masks,
                    "torus_targets": t.twist.torus_targets,
                }));
            }
            text.push(format!("count={}", types.len()));
            Ok(Outcome {
                ok: true,
                text,
                json: json!({"count": types.len(), "types": items}),
            })
        }
        Command::MarkedGraph { file } => {
            let doc = load(&file)?;
            let Document::MarkedGraph { graph, lattice } = doc else {
                return Err(Error::Parse(format!(
                    "expected a MarkedGraph document, got {}",
                    doc.kind()
                )));
            };
            let report = validate_marked_graph(&graph, &lattice)?;
            let mut text = vec![format!("valid={}", report.ok)];
            text.extend(report.violations.iter().map(|v| format!("violation: {v}")));
            Ok(Outcome {
                ok: report.ok,
                text,
                json: json!({"valid": report.ok, "violations": report.violations}),
            })
        }
        Command::Classify { file } => {
            let doc = load(&file)?;
            let Document::MarkedGraph { graph, lattice } = doc else {
                return Err(Error::Parse(format!(
                    "expected a MarkedGraph document, got {}",
                    doc.kind()
                )));
            };
            match classify_case(&graph, &lattice) {
                Ok(c) => {
                    let case = match c.case {
                        CaseLetter::A => "a",
                        CaseLetter::B => "b",
                        CaseLetter::C => "c",
                        CaseLetter::D => "d",
                    };
                    Ok(Outcome {
                        ok: true,
                        text: vec![format!("case={case} name={}", c.name)],
                        json: json!({"case": case, "name": c.name}),
                    })
                }
                Err(Error::InvalidArgument(msg)) => Ok(Outcome {
                    ok: false,
                    text: vec![format!("invalid: {msg}")],
                    json: json!({"valid": false, "error": msg}),
                }),
                Err(e) => Err(e),
            }
        }
        Command::Arrangement { file } => {
            let doc = load(&file)?;
            let Document::Arrangement(a) = doc else {
                return Err(Error::Parse(format!(
                    "expected an Arrangement document, got {}",
                    doc.kind()
                )));
            };
            match check_2d_arrangement(&a)? {
                ArrangementResult::Feasible(angles) => Ok(Outcome {
                    ok: true,
                    text: vec![format!(
                        "feasible=true angles={:?}",
                        angles.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                    )],
                    json: json!({"feasible": true, "angles": rat_vec_json(&angles)}),
                }),
                ArrangementResult::Infeasible(cert) => Ok(Outcome {
                    ok: false,
                    text: vec![format!("feasible=false certificate_domains={cert:?}")],
                    json: json!({"feasible": false, "certificate_domains": cert}),
                }),
            }
        }
        Command::Monodromy { op } => {
            let (file, retwist) = match &op {
                MonodromyOp::Decompose { file } => (file, false),
                MonodromyOp::Retwist { file } => (file, true),
            };
            let doc = load(file)?;
            let Document::Monodromy(m) = doc else {
                return Err(Error::Parse(format!(
                    "expected a Monodromy document, got {}",
                    doc.kind()
                )));
            };
            let p = AbelianPresentation::new(m.relations.clone(), m.generator_count)?;
            let d = match monodromy_decompose(&p, &m.mu) {
                Ok(d) => d,
                Err(Error::InvalidArgument(msg)) => {
                    return Ok(Outcome {
                        ok: false,
                        text: vec![format!("invalid: {msg}")],
                        json: json!({"valid": false, "error": msg}),
                    })
                }
                Err(e) => return Err(e),
            };
            if retwist {
                let new_free = m.new_free.as_ref().ok_or_else(|| {
                    Error::Parse("retwist needs the payload field new_free".into())
                })?;
                let mu2 = monodromy_retwist(&d, new_free)?;
                let rows: Vec<Value> = mu2
                    .iter()
                    .map(|e| rat_vec_json(&e.representative))
                    .collect();
                Ok(Outcome {
                    ok: true,
                    text: vec![format!(
                        "mu={:?}",
                        mu2.iter()
                            .map(|e| e
                                .representative
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>())
                            .collect::<Vec<_>>()
                    )],
                    json: json!({"mu": rows}),
                })
            } else {
                let torsion: Vec<Value> = d
                    .torsion
                    .iter()
                    .map(|(i, order, e)| {
                        json!({
                            "generator": i,
                            "order": order.to_string(),
                            "value": rat_vec_json(&e.representative),
                        })
                    })
                    .collect();
                let free: Vec<Value> = d
                    .free
                    .iter()
                    .map(|(i, e)| {
                        json!({"generator": i, "value": rat_vec_json(&e.representative)})
                    })
                    .collect();
                Ok(Outcome {
                    ok: true,
                    text: vec![format!(
                        "torsion_generators={} free_generators={}",
                        d.torsion.len(),
                        d.free.len()
                    )],
                    json: json!({"torsion": torsion, "free": free}),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                print!("{}", canonical_json(&outcome.json));
            } else {
                for line in &outcome.text {
                    println!("{line}");
                }
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
