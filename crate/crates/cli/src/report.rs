use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// One comparison between two independently computed sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub lhs_invariants: String,
    pub rhs_invariants: String,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Wall time, only recorded with `--timings` so that output stays reproducible.
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub space: String,
    pub n_range: [usize; 2],
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    /// Checks whose groups carry torsion; no expectation backs those values.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl VerificationReport {
    pub fn new(space: String, n_range: [usize; 2], checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().all(|c| c.matched) { Verdict::Pass } else { Verdict::Fail };
        let notes = checks
            .iter()
            .filter(|c| c.lhs_invariants.contains("Z/") || c.rhs_invariants.contains("Z/"))
            .map(|c| format!("torsion in {}", c.check_id))
            .collect();
        VerificationReport { space, n_range, checks, verdict, notes }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let timed = self.checks.iter().any(|c| c.ms.is_some());
        let mut rows: Vec<Vec<String>> = vec![["check", "lhs", "rhs", "match"].iter().map(|s| s.to_string()).collect()];
        if timed {
            rows[0].push("ms".into());
        }
        for c in &self.checks {
            let mut row = vec![
                c.check_id.clone(),
                c.lhs_invariants.clone(),
                c.rhs_invariants.clone(),
                if c.matched { "yes" } else { "NO" }.to_string(),
            ];
            if timed {
                row.push(c.ms.map_or_else(String::new, |m| m.to_string()));
            }
            rows.push(row);
        }
        let widths: Vec<usize> =
            (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "space {}  n {}..{}", self.space, self.n_range[0], self.n_range[1]);
        for (i, r) in rows.iter().enumerate() {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            if i == 0 {
                let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "pass" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport::new(
            "wedge(2)".into(),
            [2, 2],
            vec![CheckRecord {
                check_id: "bdg n=2".into(),
                lhs_invariants: "Z^6".into(),
                rhs_invariants: "Z^6".into(),
                matched: true,
                ms: None,
            }],
        )
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = r.to_json();
        assert!(text.contains("\"match\": true"));
        assert!(text.contains("\"ms\": null"));
        assert_eq!(VerificationReport::from_json(&text).unwrap(), r);
    }

    #[test]
    fn verdict_follows_checks() {
        let mut r = sample();
        assert!(r.passed());
        r.checks[0].matched = false;
        let r = VerificationReport::new(r.space, r.n_range, r.checks);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.to_table().contains("verdict: FAIL"));
        assert!(!r.to_json().contains("notes"));
    }

    #[test]
    fn torsion_is_flagged() {
        let mut r = sample();
        r.checks[0].lhs_invariants = "Z/2 + Z".into();
        let r = VerificationReport::new(r.space, r.n_range, r.checks);
        assert_eq!(r.notes, vec!["torsion in bdg n=2".to_string()]);
        assert!(r.to_table().contains("note: torsion in bdg n=2"));
    }
}
