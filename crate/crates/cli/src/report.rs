//! Deterministic run reports.
//!
//! A report is rendered as line-oriented text: a header, the echoed command,
//! one entry per check or stage, and a final `result pass|fail` line. The
//! rendering contains no timing or host information, so identical inputs
//! produce byte-identical reports; wall-clock timing goes to the diagnostic
//! stream instead.

use brucknet::AxiomVerdict;

#[derive(Debug, Clone)]
pub struct RunReport {
    command: String,
    entries: Vec<String>,
    pass: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, entry: impl Into<String>) {
        self.entries.push(entry.into());
    }

    /// Marks the run failed; entries keep accumulating so reports stay complete.
    pub fn fail(&mut self) {
        self.pass = false;
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("report v1\n");
        out.push_str(&format!("command: {}\n", self.command));
        for entry in &self.entries {
            out.push_str(entry);
            out.push('\n');
        }
        out.push_str(if self.pass {
            "result pass\n"
        } else {
            "result fail\n"
        });
        out
    }
}

pub fn verdict_line(verdict: &AxiomVerdict) -> String {
    let state = if verdict.holds { "hold" } else { "fail" };
    match &verdict.witness {
        Some(w) => format!("axiom {} {state} witness {w}", verdict.axiom),
        None => format!("axiom {} {state}", verdict.axiom),
    }
}
