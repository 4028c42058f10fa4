//! Report documents: a self-contained, schema-versioned record of one run.
//! JSON field order is fixed by struct declaration order, so reports are
//! byte-stable across runs; timing fields are the only nondeterministic
//! part and tests normalize them away.

use std::collections::BTreeMap;

use selfnorm_core::classx::{CrossReport, DecideError, Verdict};
use selfnorm_core::star::{StarOutcome, StarReport};
use selfnorm_core::structure::StructureProfile;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProfileDoc {
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<u32>,
    pub is_soluble: bool,
    pub is_perfect: bool,
    pub is_simple: bool,
    pub fitting_order: u64,
    pub frattini_order: Option<u64>,
    pub center_order: u64,
    pub hypercenter_order: u64,
    pub abelianization_shape: Vec<u64>,
}

impl ProfileDoc {
    pub fn from_core(p: &StructureProfile<'_>) -> Self {
        ProfileDoc {
            is_nilpotent: p.is_nilpotent,
            nilpotency_class: p.nilpotency_class,
            is_soluble: p.is_soluble,
            is_perfect: p.is_perfect,
            is_simple: p.is_simple,
            fitting_order: p.fitting.order() as u64,
            frattini_order: p.frattini.as_ref().map(|f| f.order() as u64),
            center_order: p.center.order() as u64,
            hypercenter_order: p.hypercenter.order() as u64,
            abelianization_shape: p.abelianization_shape.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerdictDoc {
    pub decider: String,
    pub status: String,
    pub member: Option<bool>,
    pub route: Option<String>,
    pub refusal: Option<String>,
}

impl VerdictDoc {
    pub fn from_verdict(decider: &str, v: &Verdict) -> Self {
        VerdictDoc {
            decider: decider.into(),
            status: if v.member {
                "member".into()
            } else {
                "non-member".into()
            },
            member: Some(v.member),
            route: Some(v.route.name()),
            refusal: None,
        }
    }

    pub fn refused(decider: &str, e: &DecideError) -> Self {
        VerdictDoc {
            decider: decider.into(),
            status: "refused".into(),
            member: None,
            route: None,
            refusal: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessDoc {
    pub order: u64,
    pub normalizer_order: u64,
    pub member_indices: Vec<u32>,
    pub description: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SplittingDoc {
    pub prime: u32,
    pub exponent: u32,
    pub x_index: u32,
    pub h_order: u64,
    pub h_member_indices: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StarDoc {
    pub holds: bool,
    pub checked: u64,
    pub violator_indices: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub spec: String,
    pub order: u64,
    pub profile: Option<ProfileDoc>,
    pub verdicts: Vec<VerdictDoc>,
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star: Option<StarDoc>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl ReportDocument {
    pub fn new(spec: &str, order: u64) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            spec: spec.into(),
            order,
            profile: None,
            verdicts: Vec::new(),
            agreement: None,
            witness: None,
            splitting: None,
            star: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn attach_cross(&mut self, g: &selfnorm_core::FiniteGroup, cross: &CrossReport) {
        self.verdicts
            .push(VerdictDoc::from_verdict("structural", &cross.structural));
        match &cross.bruteforce {
            Ok(v) => {
                self.verdicts
                    .push(VerdictDoc::from_verdict("bruteforce", v));
                if let Some(w) = &v.witness {
                    self.witness = Some(WitnessDoc {
                        order: w.order,
                        normalizer_order: w.normalizer_order,
                        member_indices: w.members.clone(),
                        description: format!(
                            "non-nilpotent subgroup of order {} with normalizer of order {}",
                            w.order, w.normalizer_order
                        ),
                    });
                }
            }
            Err(e) => self.verdicts.push(VerdictDoc::refused("bruteforce", e)),
        }
        self.agreement = cross.agreement;
        if let Some(s) = &cross.structural.splitting {
            self.splitting = Some(SplittingDoc {
                prime: s.prime,
                exponent: s.exponent,
                x_index: s.x,
                h_order: s.h_members.len() as u64,
                h_member_indices: s.h_members.clone(),
            });
        }
        if let Some(star) = &cross.structural.star {
            self.star = Some(StarDoc {
                holds: star.holds,
                checked: star.checked,
                violator_indices: star.violator.clone(),
            });
        }
        let _ = g;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("spec: {}\norder: {}\n", self.spec, self.order));
        if let Some(p) = &self.profile {
            out.push_str(&format!(
                "profile: nilpotent={}{} soluble={} perfect={} simple={}\n",
                p.is_nilpotent,
                p.nilpotency_class
                    .map(|c| format!(" (class {c})"))
                    .unwrap_or_default(),
                p.is_soluble,
                p.is_perfect,
                p.is_simple
            ));
            out.push_str(&format!(
                "subgroups: fitting={} frattini={} center={} hypercenter={}\n",
                p.fitting_order,
                p.frattini_order
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "unavailable".into()),
                p.center_order,
                p.hypercenter_order
            ));
            let shape: Vec<String> = p
                .abelianization_shape
                .iter()
                .map(|f| format!("C{f}"))
                .collect();
            out.push_str(&format!(
                "abelianization: {}\n",
                if shape.is_empty() {
                    "trivial".into()
                } else {
                    shape.join(" x ")
                }
            ));
        }
        for v in &self.verdicts {
            match v.status.as_str() {
                "refused" => out.push_str(&format!(
                    "{}: refused ({})\n",
                    v.decider,
                    v.refusal.as_deref().unwrap_or("")
                )),
                s => out.push_str(&format!(
                    "{}: {} via {}\n",
                    v.decider,
                    s,
                    v.route.as_deref().unwrap_or("?")
                )),
            }
        }
        if let Some(a) = self.agreement {
            out.push_str(&format!(
                "agreement: {}\n",
                if a { "yes" } else { "NO (bug)" }
            ));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: {} (indices {:?})\n",
                w.description, w.member_indices
            ));
        }
        if let Some(s) = &self.splitting {
            out.push_str(&format!(
                "splitting: p={} exponent={} x=#{} |H|={}\n",
                s.prime, s.exponent, s.x_index, s.h_order
            ));
        }
        if let Some(s) = &self.star {
            out.push_str(&format!(
                "star: {} ({} invariant subgroups checked{})\n",
                if s.holds { "holds" } else { "violated" },
                s.checked,
                s.violator_indices
                    .as_ref()
                    .map(|v| format!(", violator of order {}", v.len()))
                    .unwrap_or_default()
            ));
        }
        let timing: Vec<String> = self
            .timings_ms
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!("timings_ms: {}\n", timing.join(" ")));
        out
    }
}

/// Per-subgroup outcome lines for the star subcommand.
pub fn render_star_report(report: &StarReport) -> String {
    let mut out = String::new();
    for (members, outcome) in &report.outcomes {
        let desc = match outcome {
            StarOutcome::Vanishes(n) => format!("vanishes({n})"),
            StarOutcome::Regenerates => "regenerates".into(),
            StarOutcome::Violates => "VIOLATES".into(),
        };
        out.push_str(&format!(
            "K order {:>4} {:?} -> {desc}\n",
            members.len(),
            members
        ));
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.holds { "holds" } else { "violated" }
    ));
    out
}

/// Zeroes timing fields so byte-comparisons see only deterministic content.
pub fn normalize_timings(json: &str) -> String {
    let mut doc: serde_json::Value = serde_json::from_str(json).expect("valid report json");
    zero_timings(&mut doc);
    serde_json::to_string_pretty(&doc).expect("re-serializes") + "\n"
}

fn zero_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map.iter_mut() {
                if k == "timings_ms" || k == "elapsed_ms" {
                    *val = serde_json::Value::from(0u64);
                } else {
                    zero_timings(val);
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(zero_timings),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_and_round_trips() {
        let doc = ReportDocument::new("C:1", 1);
        let json = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert!(json.contains("\"schema_version\": 1"));
        assert!(back.verdicts.is_empty());
    }

    #[test]
    fn timing_normalization() {
        let mut doc = ReportDocument::new("D:7", 14);
        doc.timings_ms.insert("total".into(), 42);
        let a = normalize_timings(&doc.to_json());
        doc.timings_ms.insert("total".into(), 977);
        let b = normalize_timings(&doc.to_json());
        assert_eq!(a, b);
    }
}
