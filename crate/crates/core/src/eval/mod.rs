//! Profit upper bounds, the exhaustive oracle and result tables.

mod oracle;

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use oracle::{brute_force_optimum, OracleResult, ORACLE_MAX_SITES};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::solution::{check_feasibility, compute_profit, Solution};

/// `U = sum_i max(0, q_i - (nn1(i) + nn2(i)) / 2)`.
///
/// `nn1 <= nn2` are the two smallest lengths among the edges a loop can use
/// at site `i`: one per other site and the depot edge twice, since a loop
/// serving only `i` leaves and enters through the depot. Every route pays
/// half of each visited site's two incident edges, so `U` bounds any
/// solution's profit.
pub fn upper_bound(problem: &Problem) -> f64 {
    let n = problem.n();
    (0..n)
        .map(|i| {
            let depot = problem.dist(Some(i), None);
            let (mut a, mut b) = (depot, depot);
            for j in (0..n).filter(|&j| j != i) {
                let d = problem.dist(Some(i), Some(j));
                if d < a {
                    b = a;
                    a = d;
                } else if d < b {
                    b = d;
                }
            }
            (problem.quantity(i) - (a + b) / 2.0).max(0.0)
        })
        .sum()
}

/// `U / P`, infinite when nothing was earned.
pub fn ratio(upper: f64, profit: f64) -> f64 {
    if profit > 0.0 {
        upper / profit
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteDiagnostics {
    pub vehicle: usize,
    pub visits: usize,
    pub load: f64,
    pub cost: f64,
    pub profit: f64,
}

/// One table row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub problem: String,
    pub n: usize,
    pub profit: f64,
    pub upper_bound: f64,
    #[serde(serialize_with = "ser_rho", deserialize_with = "de_rho")]
    pub rho: f64,
    pub time_ms: f64,
    pub horizon: u32,
    #[serde(default)]
    pub algorithm: String,
    #[serde(default)]
    pub vehicles: usize,
    #[serde(default)]
    pub routes: Vec<RouteDiagnostics>,
    #[serde(default)]
    pub flags: Vec<String>,
}

fn ser_rho<S: Serializer>(rho: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if rho.is_finite() {
        s.serialize_f64(*rho)
    } else {
        s.serialize_str("inf")
    }
}

fn de_rho<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Rho {
        Num(f64),
        Text(String),
    }
    match Rho::deserialize(d)? {
        Rho::Num(v) => Ok(v),
        Rho::Text(t) if t == "inf" => Ok(f64::INFINITY),
        Rho::Text(t) => Err(serde::de::Error::custom(format!("bad rho '{t}'"))),
    }
}

impl EvaluationReport {
    /// A row from bare figures; `rho` is derived.
    pub fn new(problem: &str, n: usize, profit: f64, upper_bound: f64, time_ms: f64, horizon: u32) -> Self {
        EvaluationReport {
            problem: problem.to_string(),
            n,
            profit,
            upper_bound,
            rho: ratio(upper_bound, profit),
            time_ms,
            horizon,
            algorithm: String::new(),
            vehicles: 0,
            routes: Vec::new(),
            flags: Vec::new(),
        }
    }
}

/// Checks `solution` and builds its report row. Profit is recomputed from
/// the visit orders; an infeasible solution is an error.
pub fn evaluate(
    problem: &Problem,
    solution: &Solution,
    algorithm: &str,
    time_ms: f64,
    flags: Vec<String>,
) -> Result<EvaluationReport> {
    let violations = check_feasibility(problem, solution)?;
    if !violations.is_empty() {
        return Err(Error::Infeasible(violations));
    }
    let inst = problem.instance();
    let mut report = EvaluationReport::new(
        &inst.name,
        inst.len(),
        compute_profit(problem, solution),
        upper_bound(problem),
        time_ms,
        inst.horizon,
    );
    report.algorithm = algorithm.to_string();
    report.vehicles = solution.routes.iter().filter(|r| !r.is_empty()).count();
    report.routes = solution
        .routes
        .iter()
        .map(|r| RouteDiagnostics {
            vehicle: r.vehicle,
            visits: r.visits.len(),
            load: r.load,
            cost: r.cost,
            profit: r.profit(),
        })
        .collect();
    report.flags = flags;
    Ok(report)
}

/// Table number format: at most two decimals, trailing zeros dropped.
pub fn format_number(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

const HEADER: [&str; 7] = ["problem", "n", "P", "U", "rho", "time_ms", "T"];

/// Aligned text table with columns problem, n, P, U, rho, time (ms), T.
pub fn render_table(reports: &[EvaluationReport]) -> String {
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.problem.clone(),
                r.n.to_string(),
                format_number(r.profit),
                format_number(r.upper_bound),
                format_number(r.rho),
                format_number(r.time_ms),
                r.horizon.to_string(),
            ]
        })
        .collect();
    let mut width = HEADER.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut text = format!("{:<w$}", cells[0], w = width[0]);
        for (cell, w) in cells[1..].iter().zip(&width[1..]) {
            let _ = write!(text, "  {cell:>w$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&HEADER);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    out
}

pub fn reports_to_json(reports: &[EvaluationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization cannot fail")
}

pub fn reports_from_json(text: &str) -> Result<Vec<EvaluationReport>> {
    Ok(serde_json::from_str(text)?)
}
