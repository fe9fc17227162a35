//! Report model and serialization. Every field is ordered deterministically
//! (struct order for JSON objects, `BTreeMap` for counters), so identical
//! inputs produce byte-identical reports.

use std::collections::BTreeMap;

use serde::Serialize;
use twinlab_core::{Classification, ConditionVerdict, CoxeterSystem, LemmaReport, LemmaStatus};

/// One-sentence statement of what each named check verifies. Embedded in the
/// report so an entry can be read without consulting the source code.
pub fn statement_for(name: &str) -> &'static str {
    // twin-model entries are suffixed with the field size, e.g. "-q2"
    let base = name.split("-q").next().unwrap_or(name);
    match base {
        "cell-type-sphericity" => {
            "every cell type set of the panel complex generates a finite standard parabolic subgroup"
        }
        "tree-check" => {
            "the complex realized over the chamber ball is connected and acyclic with edge count = vertex count - 1"
        }
        "panel-gluing-center" => {
            "two chambers carry the same glued copy iff their Weyl distance lies in W_J, and are glued at the s-leaf iff it lies in W_{J u {s}}"
        }
        "panel-gluing-leaf" => {
            "two chambers are glued at a part leaf iff their Weyl distance lies in that part's parabolic, and share an interior cell only when equal"
        }
        "residue-collapse" => {
            "the realization contains exactly one glued copy of the panel complex per W_J-residue of the ball"
        }
        "cellular-action" => {
            "left translation descends to cells, and a group element stabilizing a cell fixes it pointwise"
        }
        "block-factorization-2" | "block-factorization-3" | "block-factorization" => {
            "every alternating product of pivot blocks is nontrivial and splits every reduced expression positionally into its blocks"
        }
        "amalgam-decomposition" => {
            "the group acts on the realized tree with a single-segment fundamental domain: three cell orbits, vertex/edge stabilizers the two vertex parabolics over their intersection, and nontrivial alternating normal forms"
        }
        "sphere-product" => {
            "in a thick building, the w-sphere around a chamber has exactly q_{i_1}...q_{i_l} chambers for any reduced expression of w, and spheres partition the building"
        }
        "twin-stabilizer-orders" => {
            "the intersection of the positive Borel subgroup with a w-conjugated negative one has order exactly (q-1)q^{l(w)}, stable under raising the degree bound"
        }
        "twin-negative-orbit" => {
            "that intersection moves the opposite base chamber in an orbit of size q^{l(w)} with stabilizer exactly the diagonal torus"
        }
        "twin-unbounded-orders" => {
            "the twisted Borel intersections form finite subgroups whose orders grow strictly with l(w)"
        }
        "twin-parabolic-index" => {
            "twisted parabolic intersections contain the core with index at most (q+1)^(#I + #J)"
        }
        "realization-suite" => {
            "the tree-realization checks apply only to diagrams with an admissible panel split"
        }
        _ => "unnamed check",
    }
}

#[derive(Serialize)]
pub struct SystemEcho {
    pub rank: usize,
    /// Matrix rows with the 0 = infinite-label convention.
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Serialize)]
pub struct ClassificationEcho {
    /// Full rendering, e.g. "A(J={2}, K={0,1})".
    pub verdict: String,
    /// Coarse tag: "A" | "B" | "two-spherical" | "unknown".
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank3_case: Option<String>,
}

#[derive(Serialize)]
pub struct LemmaEntry {
    pub name: String,
    pub statement: String,
    pub status: String,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Reason a check was skipped; absent for executed checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaEntry {
    pub fn from_report(report: LemmaReport) -> Self {
        let statement = statement_for(&report.name).to_string();
        LemmaEntry {
            name: report.name,
            statement,
            status: report.status.as_str().to_string(),
            counts: report.counts,
            witness: report.witness,
            note: None,
        }
    }

    pub fn skipped(name: &str, note: &str) -> Self {
        LemmaEntry {
            name: name.to_string(),
            statement: statement_for(name).to_string(),
            status: LemmaStatus::Skipped.as_str().to_string(),
            counts: BTreeMap::new(),
            witness: None,
            note: Some(note.to_string()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

#[derive(Serialize)]
pub struct Conclusion {
    /// What this run actually established, including the ball-to-whole-complex gap.
    pub scope: String,
    /// The external result consumed as an axiom; not re-verified here.
    pub criterion: String,
    /// What follows once the criterion is granted.
    pub assertion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_note: Option<String>,
}

#[derive(Serialize)]
pub struct VerificationReport {
    pub system: SystemEcho,
    pub classification: ClassificationEcho,
    pub lemmas: Vec<LemmaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<Conclusion>,
    pub version: String,
}

pub fn system_echo(system: &CoxeterSystem) -> SystemEcho {
    SystemEcho {
        rank: system.rank(),
        matrix: system.raw_rows(),
    }
}

pub fn classification_echo(classification: &Classification) -> ClassificationEcho {
    let condition = match classification.verdict {
        ConditionVerdict::ConditionA { .. } => "A",
        ConditionVerdict::ConditionB { .. } => "B",
        ConditionVerdict::TwoSpherical => "two-spherical",
        ConditionVerdict::Unknown => "unknown",
    };
    ClassificationEcho {
        verdict: classification.verdict.to_string(),
        condition: condition.to_string(),
        rank3_case: classification.rank3_case.map(|c| c.as_str().to_string()),
    }
}

impl VerificationReport {
    /// Process exit code: 0 iff no executed check failed.
    pub fn exit_code(&self) -> i32 {
        if self.lemmas.iter().any(LemmaEntry::failed) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# twinlab verification report\n\n");

        out.push_str("## System\n\n");
        out.push_str(&format!("- rank: {}\n", self.system.rank));
        out.push_str("- matrix (0 = infinite label):\n\n");
        let header: Vec<String> = (0..self.system.rank).map(|j| format!("s{j}")).collect();
        out.push_str(&format!("| m | {} |\n", header.join(" | ")));
        out.push_str(&format!("|---|{}\n", "---|".repeat(self.system.rank)));
        for (i, row) in self.system.matrix.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&format!("| **s{i}** | {} |\n", cells.join(" | ")));
        }

        out.push_str("\n## Classification\n\n");
        out.push_str(&format!("- verdict: `{}`\n", self.classification.verdict));
        out.push_str(&format!("- condition: {}\n", self.classification.condition));
        if let Some(case) = &self.classification.rank3_case {
            out.push_str(&format!("- rank-3 case: {case}\n"));
        }

        out.push_str("\n## Checks\n\n");
        if self.lemmas.is_empty() {
            out.push_str("No checks were executed.\n");
        } else {
            out.push_str("| check | status | counters | statement |\n");
            out.push_str("|---|---|---|---|\n");
            for lemma in &self.lemmas {
                let counters: Vec<String> = lemma
                    .counts
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    lemma.name,
                    lemma.status,
                    counters.join(", "),
                    lemma.statement
                ));
            }
            let annotated: Vec<&LemmaEntry> = self
                .lemmas
                .iter()
                .filter(|l| l.witness.is_some() || l.note.is_some())
                .collect();
            if !annotated.is_empty() {
                out.push_str("\n### Details\n\n");
                for lemma in annotated {
                    if let Some(witness) = &lemma.witness {
                        out.push_str(&format!("- **{}** witness: {}\n", lemma.name, witness));
                    }
                    if let Some(note) = &lemma.note {
                        out.push_str(&format!("- **{}** note: {}\n", lemma.name, note));
                    }
                }
            }
        }

        if let Some(conclusion) = &self.conclusion {
            out.push_str("\n## Conclusion\n\n");
            out.push_str(&format!("- scope: {}\n", conclusion.scope));
            out.push_str(&format!("- criterion: {}\n", conclusion.criterion));
            out.push_str(&format!("- assertion: {}\n", conclusion.assertion));
            if let Some(note) = &conclusion.case_note {
                out.push_str(&format!("- case note: {note}\n"));
            }
        }

        out.push_str(&format!("\n---\ntwinlab {}\n", self.version));
        out
    }
}
