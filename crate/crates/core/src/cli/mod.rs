//! Front end shared by the `morphic` binary: reports, census tables and the
//! verification suites.

mod parse;
pub mod verify;

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::abgroup::{FgAbGroup, GroupOrder};
use crate::error::{Error, Result};
use crate::morphic::{ann_mul, coker_mul, image_mul, is_morphic_fg, is_mul_regular, is_weakly_morphic};
use crate::oracle::{self, Endo, FinitePresentation};

pub use parse::parse_group;

/// Version of the JSON row layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

/// Exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Disagreement(_) => EXIT_DISAGREEMENT,
        Error::Parse { .. } | Error::Domain(_) | Error::Shape(_) | Error::Overflow(_) => EXIT_USAGE,
    }
}

/// Group order as it appears in JSON: a number, or `"infinite"`. Orders past
/// `u64` are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub struct ReportOrder(pub GroupOrder);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawOrder {
    Number(u64),
    Text(String),
}

impl From<ReportOrder> for RawOrder {
    fn from(o: ReportOrder) -> Self {
        match o.0 {
            GroupOrder::Infinite => RawOrder::Text("infinite".into()),
            GroupOrder::Finite(n) => match n.to_u64() {
                Some(v) => RawOrder::Number(v),
                None => RawOrder::Text(n.to_string()),
            },
        }
    }
}

impl TryFrom<RawOrder> for ReportOrder {
    type Error = String;

    fn try_from(raw: RawOrder) -> std::result::Result<Self, String> {
        match raw {
            RawOrder::Number(v) => Ok(ReportOrder(GroupOrder::Finite(v.into()))),
            RawOrder::Text(s) if s == "infinite" => Ok(ReportOrder(GroupOrder::Infinite)),
            RawOrder::Text(s) => s
                .parse::<BigUint>()
                .map(|n| ReportOrder(GroupOrder::Finite(n)))
                .map_err(|_| format!("invalid order {s:?}")),
        }
    }
}

/// Every predicate for one group; one JSON row of `check` and `census`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub schema: u32,
    pub group: String,
    pub order: ReportOrder,
    pub weakly_morphic: bool,
    pub witness: Option<i64>,
    pub morphic: bool,
    pub regular_scalars: Vec<u64>,
    pub oracle_used: bool,
}

impl PredicateReport {
    /// Closed-form report; with `oracle`, finite groups are also decided by
    /// endomorphism enumeration and any mismatch is an error.
    pub fn build(g: &FgAbGroup, oracle: bool, budget: u64) -> Result<Self> {
        let verdict = is_weakly_morphic(g);
        let morphic = is_morphic_fg(g);
        let regular_scalars: Vec<u64> = match g.exponent() {
            Some(e) => (0..e).filter(|&a| is_mul_regular(g, a as i64)).collect(),
            None => [0u64, 1].into_iter().filter(|&a| is_mul_regular(g, a as i64)).collect(),
        };
        let mut report = Self {
            schema: SCHEMA_VERSION,
            group: g.to_string(),
            order: ReportOrder(g.order()),
            weakly_morphic: verdict.holds,
            witness: verdict.witness,
            morphic,
            regular_scalars,
            oracle_used: false,
        };
        if oracle && g.is_finite() {
            cross_check(g, &report, budget)?;
            report.oracle_used = true;
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let witness = self.witness.map_or("-".to_string(), |w| w.to_string());
        writeln!(s, "group:           {}", self.group).unwrap();
        writeln!(s, "order:           {}", self.order.0).unwrap();
        writeln!(s, "weakly_morphic:  {}", self.weakly_morphic).unwrap();
        writeln!(s, "witness:         {witness}").unwrap();
        writeln!(s, "morphic:         {}", self.morphic).unwrap();
        writeln!(s, "regular_scalars: {}", join(&self.regular_scalars)).unwrap();
        write!(s, "oracle_used:     {}", self.oracle_used).unwrap();
        s
    }
}

fn join(xs: &[u64]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn disagree(g: &FgAbGroup, what: impl std::fmt::Display) -> Error {
    Error::Disagreement(format!("{g}: {what}"))
}

/// Compares the report against the element-level oracle.
fn cross_check(g: &FgAbGroup, report: &PredicateReport, budget: u64) -> Result<()> {
    let p = FinitePresentation::from_group(g)?;
    let brute_morphic = oracle::brute_is_morphic_with_budget(&p, budget)?;
    if brute_morphic != report.morphic {
        return Err(disagree(g, format_args!("oracle morphic = {brute_morphic}")));
    }
    let brute_weak = oracle::brute_is_weakly_morphic(&p);
    if brute_weak != report.weakly_morphic {
        return Err(disagree(g, format_args!("oracle weakly_morphic = {brute_weak}")));
    }
    for a in 0..p.exponent() {
        let phi = Endo::multiplication(&p, a as i64);
        let a = a as i64;
        if oracle::endo_image(&phi) != image_mul(g, a)
            || oracle::endo_kernel(&phi) != ann_mul(g, a)
            || oracle::endo_coker(&phi) != coker_mul(g, a)
        {
            return Err(disagree(g, format_args!("multiplication by {a} differs")));
        }
        let found = oracle::regular_witness_search(&p, a).is_some();
        if found != is_mul_regular(g, a) {
            return Err(disagree(g, format_args!("oracle regularity of {a} = {found}")));
        }
    }
    Ok(())
}

/// `check EXPR`.
pub fn cmd_check(expr: &str, oracle: bool, json: bool, budget: u64) -> Result<String> {
    let g = parse_group(expr)?;
    let report = PredicateReport::build(&g, oracle, budget)?;
    Ok(if json { report.to_json() } else { report.to_text() })
}

/// Reports for every class of order at most `max_order`, in enumeration order.
pub fn census_rows(max_order: u64) -> Vec<PredicateReport> {
    crate::abgroup::enumerate_groups(max_order)
        .map(|g| PredicateReport::build(&g, false, oracle::DEFAULT_BUDGET).expect("no oracle"))
        .collect()
}

/// `census MAX_ORDER`: aligned text table or JSON lines.
pub fn cmd_census(max_order: u64, json: bool) -> Result<String> {
    if max_order == 0 {
        return Err(Error::Domain("max order must be at least 1".into()));
    }
    let rows = census_rows(max_order);
    if json {
        return Ok(rows.iter().map(PredicateReport::to_json).collect::<Vec<_>>().join("\n"));
    }
    let width = rows.iter().map(|r| r.group.len()).max().unwrap_or(0).max(5);
    let mut s = String::new();
    write!(
        s,
        "{:<width$}  {:>8}  {:<14}  {:<7}  {:<7}  regular_scalars",
        "group", "order", "weakly_morphic", "witness", "morphic"
    )
    .unwrap();
    for r in &rows {
        let witness = r.witness.map_or("-".to_string(), |w| w.to_string());
        write!(
            s,
            "\n{:<width$}  {:>8}  {:<14}  {:<7}  {:<7}  {}",
            r.group,
            r.order.0.to_string(),
            r.weakly_morphic,
            witness,
            r.morphic,
            join(&r.regular_scalars)
        )
        .unwrap();
    }
    Ok(s)
}
