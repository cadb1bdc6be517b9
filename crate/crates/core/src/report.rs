//! Runs the certification suite and renders it as JSON or a text table.
//!
//! Reports are deterministic: with timing off, equal options give
//! byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    check_cocycle, verify_twisted_relations, AlgebraError, CocycleMode, CocycleReport, TwistedReport,
};
use crate::congruence::{verify_presentation, CongruenceError, Strategy, VerificationReport, VerifyOptions};
use crate::enumeration::{
    closure_of_tokens, rook_partition_count, search_generating_sets, EnumerationError, SEARCH_LIMIT,
};
use crate::presentation::{instantiate, Family, PresentationError, Preset};
use crate::words::Alphabet;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub degrees: Vec<usize>,
    pub strategy: Strategy,
    pub timing: bool,
    pub seed: u64,
    /// Sampled cocycle triples for degrees above 2.
    pub cocycle_samples: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            degrees: vec![2, 3],
            strategy: Strategy::Felsch,
            timing: false,
            seed: 0,
            cocycle_samples: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalityRow {
    pub n: usize,
    pub monoid: String,
    pub closure: usize,
    pub oracle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub n: usize,
    pub monoid: String,
    pub size: usize,
    /// Whether some generating set of this size should exist.
    pub expected: bool,
    pub witness: Option<Vec<String>>,
}

impl RankRow {
    pub fn passed(&self) -> bool {
        self.witness.is_some() == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub claim: String,
    pub scope: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub cardinalities: Vec<CardinalityRow>,
    pub presentations: Vec<VerificationReport>,
    pub rank_certificates: Vec<RankRow>,
    pub cocycle: Vec<CocycleReport>,
    pub twisted: Vec<TwistedReport>,
    pub summary: Vec<SummaryRow>,
}

fn presets_for(n: usize) -> Vec<Family> {
    let mut out = vec![Family::R1to17, Family::R18to43];
    if n >= 3 {
        out.extend([Family::R44to59, Family::R60to70]);
    }
    out
}

fn claim_for(family: Family) -> &'static str {
    match family {
        Family::R1to17 => "singular part presentation",
        Family::R18to43 => "monoid presentation over S, E, Q, O",
        Family::R44to59 => "monoid presentation over s1, s2, e, q, o",
        Family::R60to70 => "monoid presentation over s, c, e, q, o",
        _ => "sub-presentation",
    }
}

pub fn run_suite(options: &ReportOptions) -> Result<Report, ReportError> {
    let mut report = Report::default();
    for &n in &options.degrees {
        let full = closure_of_tokens(n, &Alphabet::Seqo.generators(n), true, usize::MAX)?;
        let singular = closure_of_tokens(n, &Alphabet::Eto.generators(n), false, usize::MAX)?;
        let units: u64 = (1..=n as u64).product();
        let oracle = rook_partition_count(n)?;
        report.cardinalities.push(CardinalityRow {
            n,
            monoid: "RPn".into(),
            closure: full.len(),
            oracle,
        });
        report.cardinalities.push(CardinalityRow {
            n,
            monoid: "RPn-singular".into(),
            closure: singular.len(),
            oracle: oracle - units,
        });

        for family in presets_for(n) {
            let p = instantiate(Preset { family, twisted: false }, n)?;
            let mut v = verify_presentation(
                &p,
                &VerifyOptions {
                    strategy: options.strategy,
                    cap: None,
                    twisted: false,
                },
            )?;
            if !options.timing {
                v.wall_time = None;
            }
            report.presentations.push(v);
            if n <= 3 || family == Family::R60to70 {
                report
                    .twisted
                    .push(verify_twisted_relations(Preset { family, twisted: true }, n)?);
            }
        }

        if n == 2 {
            let search = |table, size, expected, monoid: &str| -> Result<RankRow, ReportError> {
                let witness = search_generating_sets(table, size, SEARCH_LIMIT)?
                    .map(|gens| gens.iter().map(ToString::to_string).collect());
                Ok(RankRow {
                    n,
                    monoid: monoid.into(),
                    size,
                    expected,
                    witness,
                })
            };
            let target = (n * n + 3 * n) / 2;
            report
                .rank_certificates
                .push(search(&singular, target - 1, false, "RPn-singular")?);
            report.rank_certificates.push(search(&full, 3, false, "RPn")?);
            report.rank_certificates.push(search(&full, 4, true, "RPn")?);
        }

        match n {
            0..=2 => report.cocycle.push(check_cocycle(n, CocycleMode::Exhaustive)),
            3 => report.cocycle.push(check_cocycle(
                n,
                CocycleMode::Sampled {
                    count: options.cocycle_samples,
                    seed: options.seed,
                },
            )),
            _ => {}
        }
    }
    report.summarize();
    Ok(report)
}

impl Report {
    /// Rebuilds the summary rows from the detailed sections.
    pub fn summarize(&mut self) {
        let mut rows = Vec::new();
        for c in &self.cardinalities {
            rows.push(SummaryRow {
                claim: format!("cardinality of {}", c.monoid),
                scope: format!("n={}", c.n),
                passed: c.closure as u64 == c.oracle,
            });
        }
        for v in &self.presentations {
            let family = v
                .preset
                .parse::<Preset>()
                .map(|p| claim_for(p.family))
                .unwrap_or("presentation");
            rows.push(SummaryRow {
                claim: format!("{family} ({})", v.preset),
                scope: format!("n={}", v.n),
                passed: v.passed(),
            });
        }
        for r in &self.rank_certificates {
            let verb = if r.expected { "has" } else { "has no" };
            rows.push(SummaryRow {
                claim: format!("{} {verb} a {}-element generating set", r.monoid, r.size),
                scope: format!("n={}", r.n),
                passed: r.passed(),
            });
        }
        for c in &self.cocycle {
            rows.push(SummaryRow {
                claim: "cocycle identity".into(),
                scope: format!("n={} {}", c.n, c.mode),
                passed: c.passed(),
            });
        }
        for t in &self.twisted {
            rows.push(SummaryRow {
                claim: format!("twisted relations ({})", t.preset),
                scope: format!("n={}", t.n),
                passed: t.passed(),
            });
        }
        self.summary = rows;
    }

    pub fn passed(&self) -> bool {
        self.summary.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let width = self.summary.iter().map(|r| r.claim.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        writeln!(out, "{:<width$}  {:<24}  result", "claim", "scope").unwrap();
        for r in &self.summary {
            let mark = if r.passed { "pass" } else { "FAIL" };
            writeln!(out, "{:<width$}  {:<24}  {mark}", r.claim, r.scope).unwrap();
        }
        for v in self.presentations.iter().filter(|v| !v.passed()) {
            writeln!(
                out,
                "  {} n={}: sound={} abstract={} concrete={}",
                v.preset, v.n, v.sound, v.abstract_size, v.concrete_size
            )
            .unwrap();
            for f in &v.relation_failures {
                writeln!(out, "    {f}").unwrap();
            }
        }
        out
    }

    pub fn write(&self, path: &Path, json: bool) -> Result<(), ReportError> {
        let body = if json { self.to_json()? } else { self.to_text() };
        std::fs::write(path, body)?;
        Ok(())
    }
}
