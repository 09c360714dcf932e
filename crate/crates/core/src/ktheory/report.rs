//! Formula evaluation reports: per-orbit terms keyed by canonical
//! representatives, totals, and truncation metadata.

use serde::{Deserialize, Serialize};

use crate::abgrp::GradedAb;

/// Truncation metadata attached to every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// true only when the enumeration provably exhausted the index set
    pub complete: bool,
    pub max_subset_size: Option<usize>,
    /// window entries `piece -> finite multiplicity` used to realize omega
    /// pieces, if any
    pub window: Option<std::collections::BTreeMap<usize, u64>>,
}

impl Truncation {
    pub fn exact() -> Self {
        Truncation {
            complete: true,
            max_subset_size: None,
            window: None,
        }
    }
}

/// One contributing term, keyed by the canonical orbit representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub key: String,
    pub value: GradedAb,
}

/// A formula evaluation result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KReport {
    pub formula: String,
    pub params: serde_json::Value,
    /// standing hypothesis flag: the formulas hold for groups satisfying the
    /// Baum-Connes conjecture with coefficients
    pub assumes_bcc: bool,
    pub truncation: Truncation,
    pub terms: Vec<Term>,
    /// direct sum of all terms (a partial sum when incomplete)
    pub total: GradedAb,
}

impl KReport {
    pub fn new(
        formula: &str,
        params: serde_json::Value,
        truncation: Truncation,
        terms: Vec<Term>,
    ) -> Self {
        let total = terms
            .iter()
            .fold(GradedAb::zero(), |acc, t| acc.direct_sum(&t.value));
        KReport {
            formula: formula.to_string(),
            params,
            assumes_bcc: true,
            truncation,
            terms,
            total,
        }
    }

    /// Renders the deterministic text form: truncation banner first when
    /// incomplete, then terms, then the total in the canonical grammar.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if !self.truncation.complete {
            out.push_str("# truncated: ");
            if let Some(k) = self.truncation.max_subset_size {
                out.push_str(&format!("max subset size {k}"));
            }
            if let Some(w) = &self.truncation.window {
                let parts: Vec<String> =
                    w.iter().map(|(p, m)| format!("{p}:{m}")).collect();
                out.push_str(&format!(" window {{{}}}", parts.join(",")));
            }
            out.push_str(" — totals are partial sums\n");
        }
        out.push_str(&format!("formula: {}\n", self.formula));
        for t in &self.terms {
            out.push_str(&format!("  {} -> {}\n", t.key, t.value));
        }
        out.push_str(&format!("{}\n", self.total));
        out
    }
}

/// Round-trippable JSON schema of a report (mirrors the struct).
pub type KReportJson = KReport;
