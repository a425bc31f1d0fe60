//! Claim records and their evaluation.
//!
//! A claim names an ambient group and up to two subgroup recipes, plus the
//! properties expected of them. Search recipes can yield several
//! candidates; a claim holds when some candidate (or pair) meets every
//! expectation, and otherwise fails on the expectation its best candidate
//! got stuck at.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::atlas::groups::{build, Built};
use crate::atlas::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::factorization::{check_factorization, order_filter, search_metacyclic_transitive};
use crate::permcore::coset::{core_order, DEFAULT_DEGREE_CAP};
use crate::permcore::orbit::is_transitive;
use crate::permcore::{Group, Subgroup};
use crate::structure::expr::StructExpr;
use crate::structure::metacyclic::{max_metacyclic_order, metacyclic_witness, ConjugacyDedup, MetacyclicWitness};
use crate::verifier::recipe::{candidates, Recipe};

/// Conjugation orbits longer than this are not walked when deduplicating
/// candidates.
const DEDUP_ORBIT_CAP: usize = 5_000;
/// Candidates larger than this are not deduplicated.
const DEDUP_ORDER_CAP: u128 = 20_000;
/// Distinct candidates kept per side.
const KEEP: usize = 16;
/// Raw candidates looked at per side before giving up.
const VISIT_CAP: usize = 4_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    #[serde(rename = "table1")]
    Table1,
    #[serde(rename = "table2")]
    Table2,
    #[serde(rename = "table3")]
    Table3,
    #[serde(rename = "table4")]
    Table4,
    #[serde(rename = "thmHA")]
    ThmHA,
    #[serde(rename = "thmDiag")]
    ThmDiag,
    #[serde(rename = "thmPA")]
    ThmPA,
    #[serde(rename = "lemma")]
    Lemma,
}

impl Table {
    pub const ALL: [Table; 8] =
        [Table::Table1, Table::Table2, Table::Table3, Table::Table4, Table::ThmHA, Table::ThmDiag, Table::ThmPA, Table::Lemma];

    pub fn tag(self) -> &'static str {
        match self {
            Table::Table1 => "table1",
            Table::Table2 => "table2",
            Table::Table3 => "table3",
            Table::Table4 => "table4",
            Table::ThmHA => "thmHA",
            Table::ThmDiag => "thmDiag",
            Table::ThmPA => "thmPA",
            Table::Lemma => "lemma",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `G = AB` for some candidate pair
    #[default]
    Factorization,
    /// whether some candidate of `A` meets the `A` expectations
    Exists,
    /// the transitive metacyclic subgroups of `G`, up to conjugacy
    MetacyclicSet,
    MaxMetacyclic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cost {
    #[default]
    Fast,
    Slow,
    Stretch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<bool>,
    #[serde(rename = "A_metacyclic", default, skip_serializing_if = "Option::is_none")]
    pub a_metacyclic: Option<bool>,
    #[serde(rename = "A_transitive", default, skip_serializing_if = "Option::is_none")]
    pub a_transitive: Option<bool>,
    #[serde(rename = "A_regular", default, skip_serializing_if = "Option::is_none")]
    pub a_regular: Option<bool>,
    #[serde(rename = "B_corefree", default, skip_serializing_if = "Option::is_none")]
    pub b_corefree: Option<bool>,
    #[serde(rename = "A_structure", default, skip_serializing_if = "Option::is_none")]
    pub a_structure: Option<String>,
    #[serde(rename = "B_structure", default, skip_serializing_if = "Option::is_none")]
    pub b_structure: Option<String>,
    /// `(|A|, |B|)`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<(u128, u128)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u128>,
    /// structure expressions, one per class of metacyclic subgroup
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signatures: Option<Vec<String>>,
    /// restrict `signatures` to regular subgroups
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exists: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_metacyclic: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub table: Table,
    pub row: String,
    pub group: String,
    #[serde(default)]
    pub kind: Kind,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    pub expect: Expect,
    #[serde(default)]
    pub cost: Cost,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The parsed forms of a claim's text fields.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub group: GroupSpec,
    pub a: Option<Recipe>,
    pub b: Option<Recipe>,
    pub a_structure: Option<StructExpr>,
    pub b_structure: Option<StructExpr>,
    pub signatures: Vec<StructExpr>,
}

fn context(id: &str, what: &str, e: Error) -> Error {
    match e {
        Error::Syntax { line, col, msg } => Error::Syntax { line, col, msg: format!("claim {id}, {what}: {msg}") },
        other => Error::InvalidArgument(format!("claim {id}, {what}: {other}")),
    }
}

impl Claim {
    pub fn parse(&self) -> Result<Parsed> {
        let id = &self.id;
        let group = GroupSpec::parse(&self.group).map_err(|e| context(id, "group", e))?;
        let rec = |s: &Option<String>, what| s.as_deref().map(Recipe::parse).transpose().map_err(|e| context(id, what, e));
        let st = |s: &Option<String>, what| s.as_deref().map(StructExpr::parse).transpose().map_err(|e| context(id, what, e));
        let a = rec(&self.a, "A")?;
        let b = rec(&self.b, "B")?;
        let a_structure = st(&self.expect.a_structure, "A_structure")?;
        let b_structure = st(&self.expect.b_structure, "B_structure")?;
        let mut signatures = Vec::new();
        for s in self.expect.signatures.iter().flatten() {
            signatures.push(StructExpr::parse(s).map_err(|e| context(id, "signatures", e))?);
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("claim {id}: kind {:?} needs {what}", self.kind)))
            }
        };
        match self.kind {
            Kind::Factorization => {
                need(a.is_some() && b.is_some(), "A and B")?;
                need(self.expect.factorization.is_some(), "expect.factorization")?;
            }
            Kind::Exists => {
                need(a.is_some(), "A")?;
                need(self.expect.exists.is_some(), "expect.exists")?;
            }
            Kind::MetacyclicSet => need(self.expect.signatures.is_some(), "expect.signatures")?,
            Kind::MaxMetacyclic => need(self.expect.max_metacyclic.is_some(), "expect.max_metacyclic")?,
        }
        Ok(Parsed { group, a, b, a_structure, b_structure, signatures })
    }
}

/// Parse a claims file: a JSON array of claim records. Every claim's text
/// fields are parsed up front and ids must be unique.
pub fn parse_claims(text: &str) -> Result<Vec<Claim>> {
    let claims: Vec<Claim> = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("claims file: {e}")))?;
    let mut seen = std::collections::HashSet::new();
    for c in &claims {
        if !seen.insert(c.id.as_str()) {
            return Err(Error::InvalidArgument(format!("duplicate claim id {}", c.id)));
        }
        c.parse()?;
    }
    Ok(claims)
}

pub fn load_claims(path: &std::path::Path) -> Result<Vec<Claim>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_claims(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// the first violated expectation
    Fail(String),
    Skip(String),
    /// the computation hit a limit or could not be carried out
    Refused(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail(x) => write!(f, "fail({x})"),
            Status::Skip(x) => write!(f, "skip({x})"),
            Status::Refused(x) => write!(f, "refused({x})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub status: Status,
    pub witnesses: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

fn refusal(e: &Error) -> &'static str {
    match e {
        Error::CapExceeded { .. } => "cap",
        Error::SearchFailed(_) => "search",
        Error::Construction(_) | Error::Unknown { .. } => "construction",
        _ => "error",
    }
}

type Witnesses = BTreeMap<String, Value>;

/// Evaluate one claim. `stretch` permits claims of that cost class.
pub fn run_claim(claim: &Claim, seed: u64, stretch: bool) -> Report {
    let t0 = Instant::now();
    let mut w = Witnesses::new();
    let status = if claim.cost == Cost::Stretch && !stretch {
        Status::Skip("stretch".into())
    } else {
        match evaluate(claim, seed, &mut w) {
            Ok(s) => s,
            Err(e) => {
                w.insert("reason".into(), json!(e.to_string()));
                Status::Refused(refusal(&e).into())
            }
        }
    };
    Report { id: claim.id.clone(), status, witnesses: w, elapsed_ms: t0.elapsed().as_millis() as u64 }
}

fn evaluate(claim: &Claim, seed: u64, w: &mut Witnesses) -> Result<Status> {
    let parsed = claim.parse()?;
    let ex = &claim.expect;
    // arithmetic first, before anything is built
    if let (Some((a, b)), Some(g)) = (ex.orders, ex.group_order) {
        if ex.factorization == Some(true) && !order_filter(a, b, 1, g)? {
            return Ok(Status::Fail("orders".into()));
        }
    }
    let built = build(&parsed.group)?;
    let g = &built.group;
    w.insert("G_order".into(), json!(g.order()));
    w.insert("degree".into(), json!(g.degree()));
    if ex.group_order.is_some_and(|o| o != g.order()) {
        return Ok(Status::Fail("group_order".into()));
    }
    match claim.kind {
        Kind::Factorization => factorization(&built, &parsed, ex, seed, w),
        Kind::Exists => exists(&built, &parsed, ex, seed, w),
        Kind::MetacyclicSet => metacyclic_set(g, &parsed, ex, seed, w),
        Kind::MaxMetacyclic => {
            let (m, wit) = max_metacyclic_order(g, seed)?;
            w.insert("max_metacyclic".into(), json!(m));
            w.insert("witness".into(), witness_json(&wit));
            Ok(if Some(m) == ex.max_metacyclic { Status::Pass } else { Status::Fail("max_metacyclic".into()) })
        }
    }
}

fn witness_json(m: &MetacyclicWitness) -> Value {
    json!({"c_order": m.c_order, "quotient_order": m.quotient_order})
}

/// A candidate that met every expectation on its side, with what was
/// learned about it.
struct Accepted {
    group: Group,
    info: Witnesses,
}

/// Checks on one side, in order; `Err(name)` is the first one violated.
type Check<'a> = dyn Fn(&Group, &mut Witnesses) -> Result<std::result::Result<(), &'static str>> + 'a;

fn a_checks<'a>(g: &'a Group, parsed: &'a Parsed, ex: &'a Expect) -> Box<Check<'a>> {
    Box::new(move |h: &Group, info: &mut Witnesses| {
        if ex.orders.is_some_and(|(a, _)| a != h.order()) {
            return Ok(Err("A_order"));
        }
        if let Some(want) = ex.a_metacyclic {
            let wit = metacyclic_witness(h)?;
            if let Some(m) = &wit {
                info.insert("A_metacyclic".into(), witness_json(m));
            }
            if wit.is_some() != want {
                return Ok(Err("A_metacyclic"));
            }
        }
        let transitive = is_transitive(g.degree(), h.gens());
        if ex.a_transitive.is_some_and(|t| t != transitive) {
            return Ok(Err("A_transitive"));
        }
        let regular = transitive && h.order() == g.degree() as u128;
        if ex.a_regular.is_some_and(|r| r != regular) {
            return Ok(Err("A_regular"));
        }
        if let Some(s) = &parsed.a_structure {
            if !s.matches(h)? {
                return Ok(Err("A_structure"));
            }
        }
        info.insert("A_order".into(), json!(h.order()));
        info.insert("A_transitive".into(), json!(transitive));
        Ok(Ok(()))
    })
}

fn b_checks<'a>(g: &'a Group, parsed: &'a Parsed, ex: &'a Expect) -> Box<Check<'a>> {
    Box::new(move |h: &Group, info: &mut Witnesses| {
        if ex.orders.is_some_and(|(_, b)| b != h.order()) {
            return Ok(Err("B_order"));
        }
        if let Some(s) = &parsed.b_structure {
            if !s.matches(h)? {
                return Ok(Err("B_structure"));
            }
        }
        if let Some(want) = ex.b_corefree {
            let core = core_order(g, &Subgroup::from_group(g, h.clone()), DEFAULT_DEGREE_CAP)?;
            info.insert("B_core".into(), json!(core));
            if (core == 1) != want {
                return Ok(Err("B_corefree"));
            }
        }
        info.insert("B_order".into(), json!(h.order()));
        Ok(Ok(()))
    })
}

/// Stream the candidates of `recipe`, keep up to `keep` pairwise
/// non-conjugate ones that pass `check`, and stop early when `take`
/// returns true for an accepted one. On no acceptance, returns the name of
/// the latest check any candidate reached.
fn gather(
    built: &Built,
    recipe: &Recipe,
    seed: u64,
    check: &Check<'_>,
    keep: usize,
    take: &mut dyn FnMut(&Accepted) -> Result<bool>,
) -> Result<(Vec<Accepted>, Option<&'static str>, usize)> {
    let g = &built.group;
    let mut dedup = ConjugacyDedup::new(g, DEDUP_ORBIT_CAP);
    let mut out: Vec<Accepted> = Vec::new();
    let mut worst: Option<&'static str> = None;
    let mut visited = 0usize;
    let single = recipe.is_single();
    let mut err = None;
    candidates(built, recipe, seed, &mut |h| {
        visited += 1;
        let mut info = Witnesses::new();
        match check(&h, &mut info) {
            Err(e) => {
                err = Some(e);
                return false;
            }
            Ok(Err(name)) => {
                // keep the failure furthest along the check order
                if worst.is_none_or(|x| rank(name) > rank(x)) {
                    worst = Some(name);
                }
            }
            Ok(Ok(())) => {
                let fresh = single || h.order() > DEDUP_ORDER_CAP || dedup.is_new(&h);
                if out.len() < keep && fresh {
                    let acc = Accepted { group: h, info };
                    match take(&acc) {
                        Err(e) => {
                            err = Some(e);
                            return false;
                        }
                        Ok(true) => {
                            out.push(acc);
                            return false;
                        }
                        Ok(false) => out.push(acc),
                    }
                }
            }
        }
        visited < VISIT_CAP && out.len() < keep
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((out, worst, visited))
}

fn rank(name: &str) -> usize {
    ["A_order", "A_metacyclic", "A_transitive", "A_regular", "A_structure", "B_order", "B_structure", "B_corefree"]
        .iter()
        .position(|x| *x == name)
        .unwrap_or(usize::MAX)
}

fn factorization(built: &Built, parsed: &Parsed, ex: &Expect, seed: u64, w: &mut Witnesses) -> Result<Status> {
    let g = &built.group;
    let a_recipe = parsed.a.as_ref().expect("checked by parse");
    let b_recipe = parsed.b.as_ref().expect("checked by parse");
    let want = ex.factorization.expect("checked by parse");

    let check_a = a_checks(g, parsed, ex);
    let (a_list, a_fail, a_seen) = gather(built, a_recipe, seed, &*check_a, KEEP, &mut |_| Ok(false))?;
    w.insert("A_candidates".into(), json!(a_seen));
    if a_list.is_empty() {
        return Ok(Status::Fail(a_fail.unwrap_or("A_exists").into()));
    }

    // pairs are tried as B candidates arrive
    let mut hit: Option<(usize, Witnesses)> = None;
    let mut pairs = 0usize;
    let mut last: Option<Witnesses> = None;
    let check_b = b_checks(g, parsed, ex);
    let (b_list, b_fail, b_seen) = gather(built, b_recipe, seed, &*check_b, KEEP, &mut |b| {
        for (i, a) in a_list.iter().enumerate() {
            pairs += 1;
            let cert = check_factorization(g, &a.group, &b.group)?;
            let mut info = Witnesses::new();
            info.insert("meet_order".into(), json!(cert.meet_order));
            info.insert("A_orbit".into(), json!(cert.a_orbit));
            info.insert("index".into(), json!(cert.index));
            info.insert("exact".into(), json!(cert.exact));
            info.insert("factorization".into(), json!(cert.verdict));
            // a factorizing pair settles the claim either way
            if cert.verdict {
                hit = Some((i, info));
                return Ok(true);
            }
            last = Some(info);
        }
        Ok(false)
    })?;
    w.insert("B_candidates".into(), json!(b_seen));
    w.insert("pairs".into(), json!(pairs));
    if b_list.is_empty() {
        return Ok(Status::Fail(b_fail.unwrap_or("B_exists").into()));
    }
    let (ai, info) = match hit {
        Some((i, info)) => (Some(i), info),
        None => (None, last.unwrap_or_default()),
    };
    let a = &a_list[ai.unwrap_or(0)];
    let b = b_list.last().expect("nonempty");
    w.extend(a.info.clone());
    w.extend(b.info.clone());
    w.extend(info);
    w.insert("A".into(), json!(a_recipe.to_string()));
    w.insert("B".into(), json!(b_recipe.to_string()));
    let ok = if want { ai.is_some() } else { ai.is_none() };
    Ok(if ok { Status::Pass } else { Status::Fail("factorization".into()) })
}

fn exists(built: &Built, parsed: &Parsed, ex: &Expect, seed: u64, w: &mut Witnesses) -> Result<Status> {
    let g = &built.group;
    let a_recipe = parsed.a.as_ref().expect("checked by parse");
    let check_a = a_checks(g, parsed, ex);
    let (found, _, seen) = gather(built, a_recipe, seed, &*check_a, 1, &mut |_| Ok(true))?;
    w.insert("A_candidates".into(), json!(seen));
    w.insert("exists".into(), json!(!found.is_empty()));
    if let Some(a) = found.first() {
        w.extend(a.info.clone());
    }
    Ok(if Some(!found.is_empty()) == ex.exists { Status::Pass } else { Status::Fail("exists".into()) })
}

fn metacyclic_set(g: &Group, parsed: &Parsed, ex: &Expect, seed: u64, w: &mut Witnesses) -> Result<Status> {
    let (found, exact) = search_metacyclic_transitive(g, seed)?;
    w.insert("dedup_exact".into(), json!(exact));
    let degree = g.degree() as u128;
    let kept: Vec<_> = found.iter().filter(|(f, _)| !ex.regular_only || f.group.order() == degree).collect();
    w.insert("classes".into(), json!(kept.len()));
    // one representative per signature
    let mut by_sig: BTreeMap<String, &Group> = BTreeMap::new();
    for (f, s) in &kept {
        by_sig.entry(s.to_string()).or_insert(&f.group);
    }
    let mut hits = vec![0usize; parsed.signatures.len()];
    let mut listed = Vec::new();
    let mut stray = false;
    for (sig, h) in &by_sig {
        let mut matched = Vec::new();
        for (i, e) in parsed.signatures.iter().enumerate() {
            if e.matches(h)? {
                hits[i] += 1;
                matched.push(ex.signatures.as_ref().expect("checked by parse")[i].clone());
            }
        }
        stray |= matched.len() != 1;
        listed.push(json!({"order": h.order(), "signature": sig, "matches": matched}));
    }
    w.insert("found".into(), Value::Array(listed));
    // a pattern can name several isomorphism types, but every type found
    // must fall under exactly one pattern
    let ok = !stray && hits.iter().all(|&k| k >= 1);
    Ok(if ok { Status::Pass } else { Status::Fail("signatures".into()) })
}

/// Consistency of a passing factorization report's numbers: `|A||B|` is
/// divisible by `|G|` and equals `|G| |A ∩ B|` when the meet is known.
pub fn witnesses_consistent(r: &Report) -> bool {
    if r.status != Status::Pass || r.witnesses.get("factorization") != Some(&json!(true)) {
        return true;
    }
    let num = |k: &str| r.witnesses.get(k).and_then(|v| v.as_u64()).map(|x| x as u128);
    let (Some(g), Some(a), Some(b)) = (num("G_order"), num("A_order"), num("B_order")) else {
        return false;
    };
    if !order_filter(a, b, 1, g).unwrap_or(false) {
        return false;
    }
    match num("meet_order") {
        Some(m) => a * b == g * m,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(json: &str) -> Claim {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn psl_2_7_row() {
        let c = claim(
            r#"{"id":"t","table":"table1","row":"1","group":"PSL(2,7)","A":"sylow_normalizer(7)",
                "B":"search(order=24)","expect":{"factorization":true,"A_metacyclic":true,"B_corefree":true,
                "orders":[21,24],"group_order":168}}"#,
        );
        let r = run_claim(&c, 1, false);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witnesses);
        assert_eq!(r.witnesses["A_order"], json!(21));
        assert_eq!(r.witnesses["B_order"], json!(24));
        assert!(witnesses_consistent(&r));
    }

    #[test]
    fn a4_mutation_fails_on_factorization() {
        let c = claim(
            r#"{"id":"t","table":"table1","row":"1","group":"PSL(2,7)","A":"sylow_normalizer(7)",
                "B":"search(order=12, structure=Alt(4))","expect":{"factorization":true,"A_metacyclic":true}}"#,
        );
        assert_eq!(run_claim(&c, 1, false).status, Status::Fail("factorization".into()));
    }

    #[test]
    fn order_filter_runs_first() {
        let c = claim(
            r#"{"id":"t","table":"lemma","row":"-","group":"PSL(2,7)","A":"sylow(7)","B":"sylow(2)",
                "expect":{"factorization":true,"orders":[7,8],"group_order":168}}"#,
        );
        assert_eq!(run_claim(&c, 1, false).status, Status::Fail("orders".into()));
    }

    #[test]
    fn stretch_is_skipped() {
        let c = claim(
            r#"{"id":"t","table":"table4","row":"13","group":"PSU(3,8)","A":"sylow(19)","B":"sylow(2)",
                "expect":{"factorization":true},"cost":"stretch"}"#,
        );
        assert_eq!(run_claim(&c, 1, false).status.to_string(), "skip(stretch)");
        assert!(matches!(run_claim(&c, 1, true).status, Status::Refused(_)));
    }

    #[test]
    fn bad_claims_are_rejected() {
        assert!(parse_claims("[{]").is_err());
        let dup = r#"[{"id":"x","table":"lemma","row":"1","group":"C(5)","kind":"max_metacyclic","expect":{"max_metacyclic":5}},
                      {"id":"x","table":"lemma","row":"1","group":"C(5)","kind":"max_metacyclic","expect":{"max_metacyclic":5}}]"#;
        assert!(parse_claims(dup).is_err());
        let bad = r#"[{"id":"x","table":"lemma","row":"1","group":"PSL(2,)","kind":"max_metacyclic","expect":{"max_metacyclic":5}}]"#;
        assert!(matches!(parse_claims(bad), Err(Error::Syntax { col: 7, .. })));
    }

    #[test]
    fn regular_set_of_agl_3_2() {
        let c = claim(
            r#"{"id":"t","table":"thmHA","row":"c","group":"AGL(3,2)","kind":"metacyclic_set",
                "expect":{"signatures":["C(4)*C(2)","D(8)","Q(8)"],"regular_only":true}}"#,
        );
        let r = run_claim(&c, 1, false);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witnesses);
    }
}
