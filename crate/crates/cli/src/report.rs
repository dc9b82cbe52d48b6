//! Machine-readable check reports.
//!
//! JSON schema: top-level `{meta: {version, seed, config}, checks: [...],
//! summary: {total, passed, worst_defect}}`. Every floating-point value is
//! serialized as a decimal string with 17 significant digits so no reader
//! locale can lose precision; complex values are "re,im" string pairs.
//! Wall time is printed in the human rendering only — reports for
//! identical configurations (including the seed) must be byte-identical.

use std::collections::BTreeMap;
use std::time::Duration;

use num_complex::Complex64;
use serde::Serialize;

/// 17-significant-digit decimal rendering.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex rendering as a "re,im" pair.
pub fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im))
}

/// One verification record: pass ⇔ defect ≤ tol.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub computed: String,
    pub reference: String,
    pub defect: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        inputs: BTreeMap<String, String>,
        computed: String,
        reference: String,
        defect: f64,
        tol: f64,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            inputs,
            computed,
            reference,
            defect,
            tol,
            pass: defect.is_finite() && defect <= tol,
        }
    }
}

/// Aggregated report over an ordered list of checks.
#[derive(Debug, Clone)]
pub struct Report {
    pub version: String,
    pub seed: Option<u64>,
    pub config: String,
    pub checks: Vec<CheckRecord>,
    pub wall_time: Duration,
}

impl Report {
    pub fn new(config: impl Into<String>, seed: Option<u64>) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config: config.into(),
            checks: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.checks.push(rec);
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn worst_defect(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| if c.defect.is_finite() { c.defect } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    /// Process exit code: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Meta<'a> {
            version: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            seed: Option<u64>,
            config: &'a str,
        }
        #[derive(Serialize)]
        struct Check<'a> {
            name: &'a str,
            inputs: &'a BTreeMap<String, String>,
            computed: &'a str,
            reference: &'a str,
            defect: String,
            tol: String,
            pass: bool,
        }
        #[derive(Serialize)]
        struct Summary {
            total: usize,
            passed: usize,
            worst_defect: String,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            meta: Meta<'a>,
            checks: Vec<Check<'a>>,
            summary: Summary,
        }
        let out = Out {
            meta: Meta { version: &self.version, seed: self.seed, config: &self.config },
            checks: self
                .checks
                .iter()
                .map(|c| Check {
                    name: &c.name,
                    inputs: &c.inputs,
                    computed: &c.computed,
                    reference: &c.reference,
                    defect: fmt_f64(c.defect),
                    tol: fmt_f64(c.tol),
                    pass: c.pass,
                })
                .collect(),
            summary: Summary {
                total: self.total(),
                passed: self.passed(),
                worst_defect: fmt_f64(self.worst_defect()),
            },
        };
        let mut s = serde_json::to_string_pretty(&out).expect("report serialization");
        s.push('\n');
        s
    }

    /// CSV: one check per row, columns name,defect,tol,pass.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,defect,tol,pass\n");
        for c in &self.checks {
            s.push_str(&format!(
                "{},{},{},{}\n",
                c.name,
                fmt_f64(c.defect),
                fmt_f64(c.tol),
                c.pass
            ));
        }
        s
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let show_values = self.checks.len() <= 8;
        for c in &self.checks {
            s.push_str(&format!(
                "[{}] {:<42} defect {:>12.5e}  tol {:>9.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.defect,
                c.tol
            ));
            if show_values || !c.pass {
                s.push_str(&format!(
                    "       computed  {}\n       reference {}\n",
                    c.computed, c.reference
                ));
            }
        }
        s.push_str(&format!(
            "{}/{} checks passed, worst defect {:.5e}, {:.2}s\n",
            self.passed(),
            self.total(),
            self.worst_defect(),
            self.wall_time.as_secs_f64()
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_and_counts() {
        let mut r = Report::new("test", Some(42));
        r.push(CheckRecord::new(
            "a",
            BTreeMap::new(),
            fmt_f64(1.5),
            fmt_f64(1.5),
            1e-12,
            1e-10,
        ));
        r.push(CheckRecord::new(
            "b",
            BTreeMap::new(),
            "x".into(),
            "y".into(),
            2e-8,
            1e-10,
        ));
        assert_eq!(r.total(), 2);
        assert_eq!(r.passed(), 1);
        assert_eq!(r.exit_code(), 1);
        assert!((r.worst_defect() - 2e-8).abs() < 1e-20);
        let json = r.to_json();
        assert!(json.contains("\"seed\": 42"));
        assert!(json.contains("\"worst_defect\": \"2.0000000000000000e-8\""));
        let csv = r.to_csv();
        assert!(csv.starts_with("name,defect,tol,pass\n"));
        assert!(csv.lines().count() == 3);
    }

    #[test]
    fn nan_defect_fails() {
        let rec = CheckRecord::new("x", BTreeMap::new(), "".into(), "".into(), f64::NAN, 1.0);
        assert!(!rec.pass);
    }
}
