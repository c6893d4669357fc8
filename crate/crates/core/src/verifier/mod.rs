//! Exact coefficient checks of polynomial identities at sampled rational
//! parameter points.
//!
//! Each check compares two independently built sides, `P_n(x)` as a
//! polynomial in `x`, for every `n` up to the configured order. Identities
//! whose printed form is doubtful come with a short list of alternative
//! readings; all are evaluated and the report records which ones hold.

mod checks;
mod config;
mod harness;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use config::{CheckConfig, ConfigOverrides, DEFAULT_ORDER, DEFAULT_SEED, MAX_BIVARIATE_ORDER};
pub use harness::Mismatch;

use checks::CheckDef;
use harness::{Ctx, Harness};

/// Version of the report layout.
pub const SUITE_VERSION: &str = "1.0.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Appell,
    Bernoulli,
    Stirling,
    Symmetrized,
    Type2,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::All,
        Suite::Appell,
        Suite::Bernoulli,
        Suite::Stirling,
        Suite::Symmetrized,
        Suite::Type2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Appell => "appell",
            Suite::Bernoulli => "bernoulli",
            Suite::Stirling => "stirling",
            Suite::Symmetrized => "symmetrized",
            Suite::Type2 => "type2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::ConfigError(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The printed form fails and exactly one alternative reading holds.
    ResolvedVariant,
}

impl Status {
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ResolvedVariant => "resolved-variant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantOutcome {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    /// The identity under test, in words.
    pub reference: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant_note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<VariantOutcome>,
    /// Number of side-by-side comparisons performed.
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    /// `id  status  note`, as printed by the command line.
    pub fn summary_line(&self) -> String {
        let mut line = format!("{:<34} {}", self.id, self.status.name());
        if let Some(note) = &self.variant_note {
            line.push_str(&format!("  [{note}]"));
        }
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(
                "  first mismatch n={} deg={} ({}): {} vs {}",
                m.n, m.x_degree, m.case, m.lhs, m.rhs
            ));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!("  error: {e}"));
        }
        line
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Pass,
    Fail,
}

/// One line of the variant ledger: a check whose outcome came with a note.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub check_id: String,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite_version: String,
    pub suite: Suite,
    pub config: CheckConfig,
    pub results: Vec<CheckResult>,
    pub variant_ledger: Vec<LedgerEntry>,
    pub overall: Overall,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
}

impl Report {
    pub fn result(&self, id: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

/// Ids of the checks that make up a suite, in report order.
pub fn suite_check_ids(suite: Suite) -> Vec<String> {
    let mut ids: Vec<String> = checks::registry()
        .into_iter()
        .filter(|d| d.in_suite(suite))
        .map(|d| d.id)
        .collect();
    ids.sort();
    ids
}

/// Runs a suite without timing information, so equal configs give equal
/// reports.
pub fn run_suite(cfg: &CheckConfig, suite: Suite) -> Result<Report> {
    run_suite_with(cfg, suite, false)
}

pub fn run_suite_with(cfg: &CheckConfig, suite: Suite, timings: bool) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let ctx = Ctx::new(cfg);
    let defs: Vec<CheckDef> = checks::registry()
        .into_iter()
        .filter(|d| d.in_suite(suite))
        .collect();

    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(defs.len()));
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(defs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(def) = defs.get(i) else { break };
                let r = run_check(&ctx, def, timings);
                results.lock().unwrap().push(r);
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by(|a, b| a.id.cmp(&b.id));

    let variant_ledger = results
        .iter()
        .filter_map(|r| {
            r.variant_note.as_ref().map(|note| LedgerEntry {
                check_id: r.id.clone(),
                status: r.status,
                note: note.clone(),
            })
        })
        .collect();
    let overall = if results.iter().all(|r| r.status.is_ok()) {
        Overall::Pass
    } else {
        Overall::Fail
    };
    Ok(Report {
        suite_version: SUITE_VERSION.to_string(),
        suite,
        config: cfg.clone(),
        results,
        variant_ledger,
        overall,
        elapsed_ms: timings.then(|| started.elapsed().as_millis() as u64),
        generated_at: None,
    })
}

fn run_check(ctx: &Ctx, def: &CheckDef, timings: bool) -> CheckResult {
    let started = Instant::now();
    let mut result = CheckResult {
        id: def.id.clone(),
        reference: def.reference.to_string(),
        status: Status::Pass,
        variant_note: None,
        variants: Vec::new(),
        cases: 0,
        first_mismatch: None,
        error: None,
        elapsed_ms: None,
    };
    let outcome = if def.variants.is_empty() {
        run_single(ctx, def, &mut result)
    } else {
        run_variants(ctx, def, &mut result)
    };
    if let Err(e) = outcome {
        result.status = Status::Fail;
        result.error = Some(e.to_string());
    }
    if timings {
        result.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    result
}

fn run_single(ctx: &Ctx, def: &CheckDef, result: &mut CheckResult) -> Result<()> {
    let mut h = Harness::new(ctx.cfg.inject_fault);
    (def.body)(ctx, &mut h, 0)?;
    result.cases = h.cases;
    if h.failed() {
        result.status = Status::Fail;
        result.first_mismatch = h.mismatch;
    }
    Ok(())
}

fn run_variants(ctx: &Ctx, def: &CheckDef, result: &mut CheckResult) -> Result<()> {
    for (i, name) in def.variants.iter().enumerate() {
        let mut h = Harness::new(ctx.cfg.inject_fault);
        (def.body)(ctx, &mut h, i)?;
        result.cases += h.cases;
        result.variants.push(VariantOutcome {
            name: name.to_string(),
            pass: !h.failed(),
            cases: h.cases,
            first_mismatch: h.mismatch,
        });
    }
    let passing: Vec<&VariantOutcome> = result.variants.iter().filter(|v| v.pass).collect();
    let printed = &result.variants[0];
    let mut notes = Vec::new();
    if printed.pass {
        result.status = Status::Pass;
        let others: Vec<&str> = passing[1..].iter().map(|v| v.name.as_str()).collect();
        if !others.is_empty() {
            notes.push(format!(
                "printed form holds; also holds: {}",
                others.join(", ")
            ));
        }
    } else if passing.len() == 1 {
        result.status = Status::ResolvedVariant;
        notes.push(format!(
            "printed form fails; holds with: {}",
            passing[0].name
        ));
    } else {
        result.status = Status::Fail;
        result.first_mismatch = printed.first_mismatch.clone();
        if passing.len() > 1 {
            let names: Vec<&str> = passing.iter().map(|v| v.name.as_str()).collect();
            notes.push(format!(
                "printed form fails; several readings hold: {}",
                names.join(", ")
            ));
        } else {
            notes.push("no listed reading holds".to_string());
        }
    }
    if let Some(extra) = &def.note {
        if let Some(text) = extra(ctx)? {
            notes.push(text);
        }
    }
    result.variant_note = (!notes.is_empty()).then(|| notes.join("; "));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_are_nonempty_and_all_is_the_union() {
        let all = suite_check_ids(Suite::All);
        assert!(all.len() >= 12);
        for s in Suite::ALL {
            let ids = suite_check_ids(s);
            assert!(!ids.is_empty(), "{s}");
            assert!(ids.iter().all(|id| all.contains(id)));
        }
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup, all);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let mut cfg = CheckConfig::default();
        cfg.samples.clear();
        assert!(matches!(
            run_suite(&cfg, Suite::All),
            Err(Error::ConfigError(_))
        ));
    }
}
