//! Verdicts and reports shared by the numeric comparisons and the identity checkers.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Prime(u64),
    Coefficient { m: usize, n: usize },
    Check(String),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Prime(p) => write!(f, "p={p}"),
            Site::Coefficient { m, n } => write!(f, "u^{m}v^{n}"),
            Site::Check(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Some rational coefficient has a denominator divisible by the prime.
    Undefined,
    /// Below the prime floor: informational, never counted as a failure.
    BelowFloor { held: bool },
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undefined => "undefined",
            Status::BelowFloor { held: true } => "below-floor(held)",
            Status::BelowFloor { held: false } => "below-floor(failed)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub site: Site,
    pub status: Status,
    /// For failures: the two sides that differ.
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(site: Site, status: Status) -> Self {
        Verdict { site, status, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub undefined: usize,
    pub below_floor_held: usize,
    pub below_floor_failed: usize,
}

#[derive(Serialize)]
struct Record<'a> {
    identity: &'a str,
    params: String,
    site: String,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

impl VerifyReport {
    pub fn new(identity: impl Into<String>) -> Self {
        VerifyReport {
            identity: identity.into(),
            params: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, vs: impl IntoIterator<Item = Verdict>) {
        self.verdicts.extend(vs);
    }

    /// True iff no verdict at or above the floor failed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail)
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for v in &self.verdicts {
            match v.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Undefined => t.undefined += 1,
                Status::BelowFloor { held: true } => t.below_floor_held += 1,
                Status::BelowFloor { held: false } => t.below_floor_failed += 1,
            }
        }
        t
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn summary_line(&self) -> String {
        let t = self.tally();
        format!(
            "{} [{}]: {} (pass {}, fail {}, undefined {}, below floor {} held / {} failed)",
            self.identity,
            self.params_string(),
            if self.passed() { "PASS" } else { "FAIL" },
            t.pass,
            t.fail,
            t.undefined,
            t.below_floor_held,
            t.below_floor_failed
        )
    }

    /// Human-readable rendering: summary, then every non-passing verdict.
    pub fn render_text(&self) -> String {
        let mut out = self.summary_line();
        out.push('\n');
        for v in &self.verdicts {
            if v.status == Status::Pass {
                continue;
            }
            out.push_str(&format!("  {} {}", v.site, v.status));
            if let Some(d) = &v.detail {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
        }
        out
    }

    /// One JSON object per verdict per line.
    pub fn render_records(&self) -> String {
        let params = self.params_string();
        let mut out = String::new();
        for v in &self.verdicts {
            let rec = Record {
                identity: &self.identity,
                params: params.clone(),
                site: v.site.to_string(),
                status: v.status.to_string(),
                detail: v.detail.as_deref(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("plain struct"));
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let params = self.params_string();
        let mut out = String::from("identity,params,site,status,detail\n");
        for v in &self.verdicts {
            out.push_str(&format!(
                "{},\"{}\",{},{},\"{}\"\n",
                self.identity,
                params,
                v.site,
                v.status,
                v.detail.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_failures_do_not_count() {
        let mut r = VerifyReport::new("demo").param("N", 2);
        r.push(Verdict::new(Site::Prime(3), Status::BelowFloor { held: false }));
        r.push(Verdict::new(Site::Prime(11), Status::Pass));
        r.push(Verdict::new(Site::Prime(13), Status::Undefined));
        assert!(r.passed());
        r.push(Verdict::new(Site::Prime(17), Status::Fail).with_detail("1 != 2"));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let records = r.render_records();
        assert_eq!(records.lines().count(), 4);
        assert!(records.lines().last().unwrap().contains("\"site\":\"p=17\""));
    }
}
