//! Running a claims file: selection, a worker pool, and report output.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::claim::{run_claim, Claim, Report, Status, Table};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// a table tag or a claim id prefix
    pub filter: Option<String>,
    pub jobs: usize,
    pub seed: u64,
    pub stretch: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { filter: None, jobs: 1, seed: 1, stretch: false }
    }
}

/// The claims a filter picks out. A table tag selects that table; anything
/// else is taken as an id prefix and must match something.
pub fn select<'a>(claims: &'a [Claim], filter: Option<&str>) -> Result<Vec<&'a Claim>> {
    let Some(f) = filter else {
        return Ok(claims.iter().collect());
    };
    if let Some(t) = Table::ALL.iter().find(|t| t.tag() == f) {
        return Ok(claims.iter().filter(|c| c.table == *t).collect());
    }
    let picked: Vec<_> = claims.iter().filter(|c| c.id.starts_with(f)).collect();
    if picked.is_empty() {
        return Err(Error::InvalidArgument(format!("unknown filter `{f}`")));
    }
    Ok(picked)
}

/// Reports in claim-file order, whatever order the workers finish in.
pub fn run_suite(claims: &[Claim], opts: &SuiteOptions) -> Result<Vec<Report>> {
    let picked = select(claims, opts.filter.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
    Ok(pool.install(|| picked.par_iter().map(|c| run_claim(c, opts.seed, opts.stretch)).collect()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub refused: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail(_) => s.fail += 1,
                Status::Skip(_) => s.skip += 1,
                Status::Refused(_) => s.refused += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }
}

/// Zero the timings so two runs compare byte for byte.
pub fn canonicalize(reports: &mut [Report]) {
    for r in reports {
        r.elapsed_ms = 0;
    }
}

/// One JSON object per line.
pub fn render_records(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

fn short(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in reports {
        let keys = ["G_order", "A_order", "B_order", "meet_order", "A_orbit", "max_metacyclic", "exists", "classes", "reason"];
        let mut bits = Vec::new();
        for k in keys {
            if let Some(v) = r.witnesses.get(k) {
                if !v.is_null() {
                    bits.push(format!("{k}={}", short(v)));
                }
            }
        }
        let _ = writeln!(out, "{:<width$}  {:<22} {:>8.2}s  {}", r.id, r.status.to_string(), r.elapsed_ms as f64 / 1000.0, bits.join(" "));
    }
    let s = Summary::of(reports);
    let _ = writeln!(out, "{} pass, {} fail, {} skipped, {} refused", s.pass, s.fail, s.skip, s.refused);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::claim::parse_claims;

    const SMALL: &str = r#"[
        {"id":"a-1","table":"table1","row":"1","group":"PSL(2,7)","A":"sylow(7)","B":"search(order=24, structure=Sym(4))",
         "expect":{"factorization":true,"orders":[7,24],"group_order":168}},
        {"id":"a-2","table":"table4","row":"4","group":"Sym(5)","A":"search(order=6, metacyclic, structure=C(6))",
         "B":"sylow_normalizer(5)","expect":{"factorization":true,"A_metacyclic":true,"orders":[6,20]}},
        {"id":"b-1","table":"lemma","row":"-","group":"PSL(2,27)","kind":"max_metacyclic","expect":{"max_metacyclic":28},
         "cost":"stretch"}
    ]"#;

    #[test]
    fn filters() {
        let claims = parse_claims(SMALL).unwrap();
        assert_eq!(select(&claims, Some("table1")).unwrap().len(), 1);
        assert_eq!(select(&claims, Some("thmHA")).unwrap().len(), 0);
        assert_eq!(select(&claims, Some("a-")).unwrap().len(), 2);
        assert!(select(&claims, Some("table9")).is_err());
    }

    #[test]
    fn order_and_determinism() {
        let claims = parse_claims(SMALL).unwrap();
        let opts = SuiteOptions { jobs: 3, ..Default::default() };
        let mut r1 = run_suite(&claims, &opts).unwrap();
        let mut r2 = run_suite(&claims, &SuiteOptions { jobs: 1, ..opts.clone() }).unwrap();
        let ids: Vec<_> = r1.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["a-1", "a-2", "b-1"]);
        assert_eq!(r1[2].status.to_string(), "skip(stretch)");
        canonicalize(&mut r1);
        canonicalize(&mut r2);
        assert_eq!(render_records(&r1), render_records(&r2));
        assert!(Summary::of(&r1).ok());
        let line: serde_json::Value = serde_json::from_str(render_records(&r1).lines().next().unwrap()).unwrap();
        let keys: Vec<_> = line.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["elapsed_ms", "id", "status", "witnesses"]);
    }
}
