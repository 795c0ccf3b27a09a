//! Machine-readable verification reports. One report per claim; each
//! instance records what was checked, the expected and computed values, and
//! a pass flag (null when the run is outside the claim's hypotheses).
//! Serialization is deterministic: field order is fixed and instance lists
//! are emitted in construction order.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub delta: String,
    pub r: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub index: String,
    pub expected: String,
    pub computed: String,
    pub pass: Option<bool>,
}

impl Instance {
    pub fn checked(
        index: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) -> Instance {
        Instance {
            index: index.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass: Some(pass),
        }
    }

    pub fn out_of_hypothesis(
        index: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Instance {
        Instance {
            index: index.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub claim: String,
    pub hypothesis: Hypothesis,
    pub instances: Vec<Instance>,
}

impl Report {
    pub fn new(claim: impl Into<String>, hypothesis: Hypothesis) -> Report {
        Report {
            claim: claim.into(),
            hypothesis,
            instances: Vec::new(),
        }
    }

    pub fn push(&mut self, instance: Instance) {
        self.instances.push(instance);
    }

    pub fn all_pass(&self) -> bool {
        self.instances.iter().all(|i| i.pass != Some(false))
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(Report::all_pass)
}

pub fn to_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(reports: &[Report]) -> String {
    let mut out = String::from("claim,index,expected,computed,pass\n");
    for r in reports {
        for i in &r.instances {
            let pass = match i.pass {
                Some(true) => "true",
                Some(false) => "false",
                None => "out-of-hypothesis",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_quote(&r.claim),
                csv_quote(&i.index),
                csv_quote(&i.expected),
                csv_quote(&i.computed),
                pass
            ));
        }
    }
    out
}

pub fn to_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "claim: {} [char {}, delta {}, r {}]\n",
            r.claim, r.hypothesis.characteristic, r.hypothesis.delta, r.hypothesis.r
        ));
        for i in &r.instances {
            let mark = match i.pass {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "out-of-hypothesis",
            };
            out.push_str(&format!(
                "  [{mark}] {}: expected {}, computed {}\n",
                i.index, i.expected, i.computed
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Report> {
        let mut r = Report::new(
            "cells square to themselves",
            Hypothesis {
                characteristic: 5,
                delta: "1".into(),
                r: 2,
            },
        );
        r.push(Instance::checked("0:1|1", "1", "1", true));
        r.push(Instance::checked("1:1|-", "0", "1, with a comma", false));
        vec![r]
    }

    #[test]
    fn json_is_deterministic() {
        let a = to_json(&sample());
        let b = to_json(&sample());
        assert_eq!(a, b);
        assert!(a.contains("\"char\": 5"));
        assert!(!all_pass(&sample()));
    }

    #[test]
    fn csv_escapes_commas() {
        let csv = to_csv(&sample());
        assert!(csv.starts_with("claim,index,expected,computed,pass\n"));
        assert!(csv.contains("\"1, with a comma\""));
        assert!(csv.lines().count() == 3);
    }
}
