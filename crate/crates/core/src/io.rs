//! JSON instance and certificate documents. Rationals travel as strings
//! ("p/q" or "p"), never floating point, so exactness survives
//! serialization.

use crate::engine::SplitDisjunction;
use crate::error::IoError;
use crate::geom::{Direction2, Point2};
use crate::model::{CutIneq, TwoRowModel};
use crate::num::{fmt_rat, parse_rat};
use crate::synth::{
    Certificate, CertStep, Conclusion, CutRef, SubCertificate, SubKind,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub f: [String; 2],
    pub columns: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cuts: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl InstanceDocument {
    pub fn from_model(model: &TwoRowModel, cuts: &BTreeMap<String, CutIneq>) -> Self {
        InstanceDocument {
            f: [fmt_rat(&model.f.x), fmt_rat(&model.f.y)],
            columns: model
                .columns
                .iter()
                .map(|c| [fmt_rat(&c.x), fmt_rat(&c.y)])
                .collect(),
            cuts: cuts
                .iter()
                .map(|(k, v)| (k.clone(), v.alpha.iter().map(fmt_rat).collect()))
                .collect(),
            metadata: None,
        }
    }

    pub fn to_model(&self) -> Result<(TwoRowModel, BTreeMap<String, CutIneq>), IoError> {
        let fx = parse_rat(&self.f[0]).map_err(IoError::ParseError)?;
        let fy = parse_rat(&self.f[1]).map_err(IoError::ParseError)?;
        let f = Point2::new(fx, fy);
        if f.is_integral() {
            return Err(IoError::InvalidModel("f is integral".to_string()));
        }
        let mut columns = Vec::new();
        for (i, c) in self.columns.iter().enumerate() {
            let x = parse_rat(&c[0]).map_err(IoError::ParseError)?;
            let y = parse_rat(&c[1]).map_err(IoError::ParseError)?;
            let d = Direction2::new(x, y)
                .map_err(|_| IoError::InvalidModel(format!("column {} is zero", i + 1)))?;
            columns.push(d);
        }
        let model = TwoRowModel::new(f, columns)
            .map_err(|e| IoError::InvalidModel(e.to_string()))?;
        let mut cuts = BTreeMap::new();
        for (name, coeffs) in &self.cuts {
            if coeffs.len() != model.k() {
                return Err(IoError::InvalidModel(format!(
                    "cut {name} has {} coefficients for {} columns",
                    coeffs.len(),
                    model.k()
                )));
            }
            let mut alpha = Vec::new();
            for c in coeffs {
                alpha.push(parse_rat(c).map_err(IoError::ParseError)?);
            }
            let cut =
                CutIneq::new(alpha).map_err(|e| IoError::InvalidModel(format!("cut {name}: {e}")))?;
            cuts.insert(name.clone(), cut);
        }
        Ok((model, cuts))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::ParseError(e.to_string()))
    }
}

pub fn parse_instance(text: &str) -> Result<(TwoRowModel, BTreeMap<String, CutIneq>), IoError> {
    InstanceDocument::from_json(text)?.to_model()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    pub f: [String; 2],
    pub columns: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDoc {
    pub pi: [String; 2],
    pub pi0: String,
    pub entering_cuts: Vec<CutRefDoc>,
    pub produced_cut: Vec<String>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    pub x_vertices_le: Vec<[String; 2]>,
    pub x_vertices_ge: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CutRefDoc {
    #[serde(rename = "step")]
    Step { index: usize },
    #[serde(rename = "sub")]
    Sub { name: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kept_columns: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub contributed_cut: Vec<String>,
    pub certificate: CertificateDocument,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub model: ModelDoc,
    pub goal: Vec<String>,
    pub steps: Vec<StepDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sub_certificates: BTreeMap<String, SubDoc>,
    pub conclusion: String,
    pub rank_bound: u32,
}

fn model_doc(m: &TwoRowModel) -> ModelDoc {
    ModelDoc {
        f: [fmt_rat(&m.f.x), fmt_rat(&m.f.y)],
        columns: m
            .columns
            .iter()
            .map(|c| [fmt_rat(&c.x), fmt_rat(&c.y)])
            .collect(),
    }
}

fn model_from_doc(d: &ModelDoc) -> Result<TwoRowModel, IoError> {
    let f = Point2::new(
        parse_rat(&d.f[0]).map_err(IoError::ParseError)?,
        parse_rat(&d.f[1]).map_err(IoError::ParseError)?,
    );
    let mut columns = Vec::new();
    for c in &d.columns {
        columns.push(
            Direction2::new(
                parse_rat(&c[0]).map_err(IoError::ParseError)?,
                parse_rat(&c[1]).map_err(IoError::ParseError)?,
            )
            .map_err(|e| IoError::InvalidModel(e.to_string()))?,
        );
    }
    TwoRowModel::new(f, columns).map_err(|e| IoError::InvalidModel(e.to_string()))
}

fn cut_doc(c: &CutIneq) -> Vec<String> {
    c.alpha.iter().map(fmt_rat).collect()
}

fn cut_from_doc(v: &[String]) -> Result<CutIneq, IoError> {
    let mut alpha = Vec::new();
    for s in v {
        alpha.push(parse_rat(s).map_err(IoError::ParseError)?);
    }
    CutIneq::new(alpha).map_err(|e| IoError::InvalidModel(e.to_string()))
}

pub fn certificate_to_document(cert: &Certificate) -> CertificateDocument {
    CertificateDocument {
        model: model_doc(&cert.model),
        goal: cut_doc(&cert.goal),
        steps: cert
            .steps
            .iter()
            .map(|s| StepDoc {
                pi: [s.disjunction.pi.0.to_string(), s.disjunction.pi.1.to_string()],
                pi0: s.disjunction.pi0.to_string(),
                entering_cuts: s
                    .entering
                    .iter()
                    .map(|r| match r {
                        CutRef::Step(i) => CutRefDoc::Step { index: *i },
                        CutRef::Sub(n) => CutRefDoc::Sub { name: n.clone() },
                    })
                    .collect(),
                produced_cut: cut_doc(&s.produced),
                verified: s.record.pass,
                witness: s
                    .record
                    .witness
                    .as_ref()
                    .map(|w| [fmt_rat(&w.x.x), fmt_rat(&w.x.y)]),
                x_vertices_le: s
                    .record
                    .le
                    .x_vertices
                    .iter()
                    .map(|p| [fmt_rat(&p.x), fmt_rat(&p.y)])
                    .collect(),
                x_vertices_ge: s
                    .record
                    .ge
                    .x_vertices
                    .iter()
                    .map(|p| [fmt_rat(&p.x), fmt_rat(&p.y)])
                    .collect(),
            })
            .collect(),
        sub_certificates: cert
            .subs
            .iter()
            .map(|(name, sub)| {
                let (kind, kept, reason) = match &sub.kind {
                    SubKind::Plain => ("plain".to_string(), None, None),
                    SubKind::Lifting {
                        kept_columns,
                        general,
                    } => (
                        if *general {
                            "general_lifting".to_string()
                        } else {
                            "lifting".to_string()
                        },
                        Some(kept_columns.clone()),
                        None,
                    ),
                    SubKind::Projection => ("projection".to_string(), None, None),
                    SubKind::Shape { reason } => {
                        ("shape".to_string(), None, Some(reason.clone()))
                    }
                };
                (
                    name.clone(),
                    SubDoc {
                        kind,
                        kept_columns: kept,
                        reason,
                        contributed_cut: cut_doc(&sub.contributed),
                        certificate: certificate_to_document(&sub.cert),
                    },
                )
            })
            .collect(),
        conclusion: match &cert.conclusion {
            Conclusion::FinalStep => "final_step".to_string(),
            Conclusion::BySub(n) => format!("by_sub:{n}"),
        },
        rank_bound: cert.rank_bound,
    }
}

pub fn certificate_from_document(doc: &CertificateDocument) -> Result<Certificate, IoError> {
    let model = model_from_doc(&doc.model)?;
    let goal = cut_from_doc(&doc.goal)?;
    let mut subs = BTreeMap::new();
    for (name, sd) in &doc.sub_certificates {
        let kind = match sd.kind.as_str() {
            "plain" => SubKind::Plain,
            "lifting" => SubKind::Lifting {
                kept_columns: sd.kept_columns.clone().unwrap_or_default(),
                general: false,
            },
            "general_lifting" => SubKind::Lifting {
                kept_columns: sd.kept_columns.clone().unwrap_or_default(),
                general: true,
            },
            "projection" => SubKind::Projection,
            "shape" => SubKind::Shape {
                reason: sd.reason.clone().unwrap_or_default(),
            },
            other => {
                return Err(IoError::ParseError(format!("unknown sub kind {other}")))
            }
        };
        subs.insert(
            name.clone(),
            SubCertificate {
                kind,
                contributed: cut_from_doc(&sd.contributed_cut)?,
                cert: certificate_from_document(&sd.certificate)?,
            },
        );
    }
    let mut steps = Vec::new();
    for sd in &doc.steps {
        let pi0 = BigInt::from_str(&sd.pi0)
            .map_err(|_| IoError::ParseError(format!("bad pi0 {}", sd.pi0)))?;
        let pi = (
            BigInt::from_str(&sd.pi[0])
                .map_err(|_| IoError::ParseError("bad pi".to_string()))?,
            BigInt::from_str(&sd.pi[1])
                .map_err(|_| IoError::ParseError("bad pi".to_string()))?,
        );
        let mut entering = Vec::new();
        for r in &sd.entering_cuts {
            entering.push(match r {
                CutRefDoc::Step { index } => CutRef::Step(*index),
                CutRefDoc::Sub { name } => {
                    if !subs.contains_key(name) && !doc.sub_certificates.contains_key(name) {
                        return Err(IoError::UnknownCutReference(name.clone()));
                    }
                    CutRef::Sub(name.clone())
                }
            });
        }
        let disjunction = SplitDisjunction::from_bigint(pi, pi0);
        let produced = cut_from_doc(&sd.produced_cut)?;
        // Records are recomputed during verification; parse placeholders.
        steps.push(CertStep {
            disjunction,
            entering,
            produced,
            record: crate::engine::VerificationRecord {
                pass: sd.verified,
                le: crate::engine::PieceReport {
                    empty: sd.x_vertices_le.is_empty(),
                    x_vertices: Vec::new(),
                    vertex_count: 0,
                    ray_count: 0,
                },
                ge: crate::engine::PieceReport {
                    empty: sd.x_vertices_ge.is_empty(),
                    x_vertices: Vec::new(),
                    vertex_count: 0,
                    ray_count: 0,
                },
                witness: None,
            },
        });
    }
    let conclusion = if doc.conclusion == "final_step" {
        Conclusion::FinalStep
    } else if let Some(name) = doc.conclusion.strip_prefix("by_sub:") {
        if !subs.contains_key(name) {
            return Err(IoError::UnknownCutReference(name.to_string()));
        }
        Conclusion::BySub(name.to_string())
    } else {
        return Err(IoError::ParseError(format!(
            "unknown conclusion {}",
            doc.conclusion
        )));
    };
    Ok(Certificate {
        model,
        goal,
        steps,
        subs,
        conclusion,
        rank_bound: doc.rank_bound,
    })
}

/// Independent re-verification of a serialized certificate against an
/// instance: re-runs every engine check, confirms the final domination, and
/// reports the first failure.
pub fn verify_certificate(
    model: &TwoRowModel,
    doc: &CertificateDocument,
) -> Result<(), String> {
    let cert = certificate_from_document(doc).map_err(|e| e.to_string())?;
    if &cert.model != model {
        return Err("certificate model differs from the instance".to_string());
    }
    crate::synth::verify_certificate_struct(&cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat_int;

    #[test]
    fn parse_example_instance() {
        let text = r#"{
            "f": ["1/2", "1/2"],
            "columns": [["-1/2","3/2"],["1","0"],["3/2","-1/2"],["-1/2","-1/2"]],
            "cuts": {"goal": ["1","1","1","1"]}
        }"#;
        let (model, cuts) = parse_instance(text).unwrap();
        assert_eq!(model.k(), 4);
        assert_eq!(cuts["goal"].alpha, vec![rat_int(1); 4]);
    }

    #[test]
    fn reject_integral_f() {
        let text = r#"{"f": ["1", "2"], "columns": [["1","0"]]}"#;
        assert!(matches!(
            parse_instance(text).unwrap_err(),
            IoError::InvalidModel(_)
        ));
    }

    #[test]
    fn reject_malformed_rational() {
        let text = r#"{"f": ["1/0", "2"], "columns": [["1","0"]]}"#;
        assert!(matches!(
            parse_instance(text).unwrap_err(),
            IoError::ParseError(_)
        ));
    }

    #[test]
    fn instance_round_trip_is_canonical() {
        let text = r#"{
            "f": ["1/2", "1/2"],
            "columns": [["-1/2","3/2"],["1","0"],["-1/2","-1/2"]],
            "cuts": {"goal": ["1","1","1"]}
        }"#;
        let (model, cuts) = parse_instance(text).unwrap();
        let doc = InstanceDocument::from_model(&model, &cuts);
        let json = doc.to_json();
        let (model2, cuts2) = parse_instance(&json).unwrap();
        assert_eq!(model, model2);
        assert_eq!(cuts, cuts2);
        let doc2 = InstanceDocument::from_model(&model2, &cuts2);
        assert_eq!(json, doc2.to_json());
    }
}
