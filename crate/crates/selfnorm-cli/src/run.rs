//! Single-group run drivers shared by the CLI and the test suites.
//!
//! Exit codes: 0 member, 1 non-member, 2 refused (budget exhausted, decider
//! disagreement, or resource caps), 3 usage errors.

use std::path::Path;
use std::time::Instant;

use selfnorm_core::catalog::{CatalogError, CatalogSpec};
use selfnorm_core::classx::{cross_check, DecideOptions};
use selfnorm_core::group::{semidirect_parts, semidirect_product, GroupError, SubgroupHandle};
use selfnorm_core::lattice::{all_subgroups_with, LatticeBudget};
use selfnorm_core::star::star_check;
use selfnorm_core::structure::StructureProfile;

use crate::files::{self, FileError};
use crate::report::{render_star_report, ReportDocument};

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub budget: LatticeBudget,
    pub slow_iso: bool,
    pub seed: u64,
    pub parallel: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: LatticeBudget::default(),
            slow_iso: false,
            seed: 1,
            parallel: 1,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            budget: self.budget,
            nilpotent_fast_path: true,
            slow_iso: self.slow_iso,
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl RunOutput {
    fn usage(msg: String) -> Self {
        RunOutput {
            stdout: String::new(),
            stderr: msg + "\n",
            exit: EXIT_USAGE,
        }
    }

    fn refused(msg: String) -> Self {
        RunOutput {
            stdout: String::new(),
            stderr: msg + "\n",
            exit: EXIT_REFUSED,
        }
    }
}

fn classify_build_error(e: &FileError) -> i32 {
    match e {
        FileError::Catalog(CatalogError::Resource { .. }) => EXIT_REFUSED,
        FileError::Group(GroupError::ClosureCapExceeded { .. }) => EXIT_REFUSED,
        _ => EXIT_USAGE,
    }
}

pub fn build_group(spec_str: &str) -> Result<(CatalogSpec, selfnorm_core::FiniteGroup), RunOutput> {
    let spec = CatalogSpec::parse(spec_str).map_err(|e| RunOutput::usage(format!("error: {e}")))?;
    let g = files::resolve_spec(&spec).map_err(|e| {
        let exit = classify_build_error(&e);
        let msg = format!("error: {e}");
        if exit == EXIT_REFUSED {
            RunOutput::refused(msg)
        } else {
            RunOutput::usage(msg)
        }
    })?;
    Ok((spec, g))
}

/// Full check: profile, both deciders, cross-check.
pub fn run_check(spec_str: &str, cfg: &RunConfig) -> RunOutput {
    let started = Instant::now();
    let (spec, g) = match build_group(spec_str) {
        Ok(v) => v,
        Err(out) => return out,
    };
    let opts = cfg.decide_options();
    let lat = all_subgroups_with(&g, cfg.budget);
    let profile = StructureProfile::compute(&g, Some(&lat));
    let cross = cross_check(&g, &opts);

    let mut doc = ReportDocument::new(&spec.render(), g.order() as u64);
    doc.profile = Some(crate::report::ProfileDoc::from_core(&profile));
    doc.attach_cross(&g, &cross);
    doc.timings_ms
        .insert("total".into(), started.elapsed().as_millis() as u64);

    let stdout = match cfg.format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Text => doc.to_text(),
    };
    let mut stderr = String::new();
    let exit = if cross.is_disagreement() {
        stderr.push_str(
            "DECIDER DISAGREEMENT: structural and brute-force verdicts differ; this is a bug, not a tie\n",
        );
        EXIT_REFUSED
    } else {
        match &cross.bruteforce {
            Err(_) => {
                stderr.push_str(&format!(
                    "brute force refused; structural verdict alone says {} (not cross-certified)\n",
                    if cross.structural.member {
                        "member"
                    } else {
                        "non-member"
                    }
                ));
                EXIT_REFUSED
            }
            Ok(b) => {
                if b.member {
                    EXIT_MEMBER
                } else {
                    EXIT_NON_MEMBER
                }
            }
        }
    };
    RunOutput {
        stdout,
        stderr,
        exit,
    }
}

/// Brute-force only; prints the rejection witness when there is one.
pub fn run_witness(spec_str: &str, cfg: &RunConfig) -> RunOutput {
    let started = Instant::now();
    let (spec, g) = match build_group(spec_str) {
        Ok(v) => v,
        Err(out) => return out,
    };
    let opts = cfg.decide_options();
    let mut doc = ReportDocument::new(&spec.render(), g.order() as u64);
    let verdict = selfnorm_core::classx::bruteforce_verdict(&g, &opts);
    let exit = match &verdict {
        Err(e) => {
            doc.verdicts
                .push(crate::report::VerdictDoc::refused("bruteforce", e));
            EXIT_REFUSED
        }
        Ok(v) => {
            doc.verdicts
                .push(crate::report::VerdictDoc::from_verdict("bruteforce", v));
            if let Some(w) = &v.witness {
                doc.witness = Some(crate::report::WitnessDoc {
                    order: w.order,
                    normalizer_order: w.normalizer_order,
                    member_indices: w.members.clone(),
                    description: format!(
                        "non-nilpotent subgroup of order {} with normalizer of order {}",
                        w.order, w.normalizer_order
                    ),
                });
            }
            if v.member {
                EXIT_MEMBER
            } else {
                EXIT_NON_MEMBER
            }
        }
    };
    doc.timings_ms
        .insert("total".into(), started.elapsed().as_millis() as u64);
    let stdout = match cfg.format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Text => {
            let mut s = doc.to_text();
            if exit == EXIT_MEMBER {
                s.push_str("member: no witness exists\n");
            }
            s
        }
    };
    RunOutput {
        stdout,
        stderr: String::new(),
        exit,
    }
}

/// Star-property inspection of a semidirect spec file.
pub fn run_star(path: &Path, cfg: &RunConfig) -> RunOutput {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return RunOutput::usage(format!("error: cannot read {}: {e}", path.display())),
    };
    let sd = match files::parse_sd_spec(&text, &path.display().to_string()) {
        Ok(s) => s,
        Err(e) => return RunOutput::usage(format!("error: {e}")),
    };
    let (base, x_order, action) = match files::resolve_sd_parts(&sd, 0) {
        Ok(v) => v,
        Err(e) => return RunOutput::usage(format!("error: {e}")),
    };
    let g = match semidirect_product(&base, x_order, &action) {
        Ok(g) => g,
        Err(e) => return RunOutput::usage(format!("error: {e}")),
    };
    let parts = semidirect_parts(&g).expect("product was just built as semidirect");
    let h = SubgroupHandle::new_unchecked(&g, parts.base_members.clone());
    let report = match star_check(&g, parts.acting_index, &h) {
        Ok(r) => r,
        Err(e) => return RunOutput::usage(format!("error: {e}")),
    };
    let stdout = match cfg.format {
        OutputFormat::Text => {
            format!(
                "spec: sd:{}\norder: {}\nacting element: #{} (order {})\n{}",
                path.display(),
                g.order(),
                parts.acting_index,
                g.order_of_index(parts.acting_index),
                render_star_report(&report)
            )
        }
        OutputFormat::Json => {
            let outcomes: Vec<serde_json::Value> = report
                .outcomes
                .iter()
                .map(|(members, o)| {
                    serde_json::json!({
                        "order": members.len(),
                        "members": members,
                        "outcome": match o {
                            selfnorm_core::star::StarOutcome::Vanishes(n) => format!("vanishes({n})"),
                            selfnorm_core::star::StarOutcome::Regenerates => "regenerates".into(),
                            selfnorm_core::star::StarOutcome::Violates => "violates".into(),
                        },
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": crate::report::SCHEMA_VERSION,
                "spec": format!("sd:{}", path.display()),
                "order": g.order(),
                "holds": report.holds,
                "outcomes": outcomes,
            });
            serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
        }
    };
    let exit = if report.holds {
        EXIT_MEMBER
    } else {
        EXIT_NON_MEMBER
    };
    RunOutput {
        stdout,
        stderr: String::new(),
        exit,
    }
}
