//! Verification reports: one entry per check, each carrying the name of the
//! mathematical fact it certifies, the measured residual, and the threshold
//! it was held to. Serialization is byte-deterministic: fields appear in a
//! fixed order, checks are sorted by name, and every floating-point number
//! is rounded to 15 significant digits before it is stored, so the emitted
//! JSON parses back to exactly the in-memory report.

use std::collections::BTreeMap;

use serde::Deserialize;

pub const SCHEMA_VERSION: &str = "1.0";

/// Round to 15 significant decimal digits. The rounded value re-prints in
/// at most 15 significant digits under shortest round-trip formatting.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("scientific notation round trip")
}

fn fmt_f64(x: f64) -> String {
    format!("{:e}", sig15(x))
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A single verified claim. `pass` is computed from the rounded residual
/// and threshold, so the emitted numbers are self-consistent.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub value: Option<f64>,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: Option<f64>,
        residual: f64,
        threshold: f64,
    ) -> Self {
        let residual = sig15(residual);
        let threshold = sig15(threshold);
        Check {
            name: name.into(),
            anchor: anchor.into(),
            value: value.map(sig15),
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }

    fn to_json(&self, indent: &str) -> String {
        let value = match self.value {
            Some(v) => fmt_f64(v),
            None => "null".into(),
        };
        format!(
            "{indent}{{\n\
             {indent}  \"name\": {},\n\
             {indent}  \"anchor\": {},\n\
             {indent}  \"value\": {},\n\
             {indent}  \"residual\": {},\n\
             {indent}  \"threshold\": {},\n\
             {indent}  \"pass\": {}\n\
             {indent}}}",
            json_string(&self.name),
            json_string(&self.anchor),
            value,
            fmt_f64(self.residual),
            fmt_f64(self.threshold),
            self.pass,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub subcommand: String,
    pub seed: u64,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(
        subcommand: impl Into<String>,
        seed: u64,
        tolerance_overrides: &BTreeMap<String, f64>,
        mut checks: Vec<Check>,
    ) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        Report {
            schema_version: SCHEMA_VERSION.into(),
            subcommand: subcommand.into(),
            seed,
            tolerance_overrides: tolerance_overrides
                .iter()
                .map(|(k, &v)| (k.clone(), sig15(v)))
                .collect(),
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        s.push_str(&format!("  \"schema_version\": {},\n", json_string(&self.schema_version)));
        s.push_str(&format!("  \"subcommand\": {},\n", json_string(&self.subcommand)));
        s.push_str(&format!("  \"seed\": {},\n", self.seed));
        if self.tolerance_overrides.is_empty() {
            s.push_str("  \"tolerance_overrides\": {},\n");
        } else {
            s.push_str("  \"tolerance_overrides\": {\n");
            let last = self.tolerance_overrides.len() - 1;
            for (k, (name, &v)) in self.tolerance_overrides.iter().enumerate() {
                let comma = if k == last { "" } else { "," };
                s.push_str(&format!("    {}: {}{}\n", json_string(name), fmt_f64(v), comma));
            }
            s.push_str("  },\n");
        }
        if self.checks.is_empty() {
            s.push_str("  \"checks\": [],\n");
        } else {
            s.push_str("  \"checks\": [\n");
            let last = self.checks.len() - 1;
            for (k, c) in self.checks.iter().enumerate() {
                let comma = if k == last { "" } else { "," };
                s.push_str(&c.to_json("    "));
                s.push_str(comma);
                s.push('\n');
            }
            s.push_str("  ],\n");
        }
        s.push_str(&format!("  \"pass\": {}\n", self.pass));
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "report for `{}` (seed {}, schema {})\n",
            self.subcommand, self.seed, self.schema_version
        ));
        if self.tolerance_overrides.is_empty() {
            s.push_str("tolerance overrides: none\n");
        } else {
            let listed: Vec<String> = self
                .tolerance_overrides
                .iter()
                .map(|(k, &v)| format!("{k}={}", fmt_f64(v)))
                .collect();
            s.push_str(&format!("tolerance overrides: {}\n", listed.join(", ")));
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let value = match c.value {
                Some(v) => format!("  value {}", fmt_f64(v)),
                None => String::new(),
            };
            s.push_str(&format!(
                "[{verdict}] {:width$}  residual {} within {}{}  :: {}\n",
                c.name,
                fmt_f64(c.residual),
                fmt_f64(c.threshold),
                value,
                c.anchor,
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("overall: {verdict} ({passed}/{} checks)\n", self.checks.len()));
        s
    }
}
