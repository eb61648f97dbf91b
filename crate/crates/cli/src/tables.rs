//! Regression report: recomputes every published table cell from the
//! embedded fixtures and compares.
//!
//! Column ids in `data/published.tsv`:
//!
//! * `M4` a fixture, `~M4` its estimate, `M7+J5/5` smoothed;
//! * `M4|2` one-vs-rest for class 2 (1-based), `~M4|2` the estimate of that,
//!   `~M7|4+J` the estimate of the smoothed one-vs-rest matrix;
//! * `M6->M7` the relative drop in percent from the first to the second.
//!
//! Table 5 evaluates the pair-counting matrix of each column.

use eve_core::convert::{one_vs_rest, pairs_binary, pairs_binary_literal};
use eve_core::measures::{accuracy, binary_measures, compute, Measure};
use eve_core::spectral::{b_eigenvalues, spectrum};
use eve_core::{ConfusionMatrix, Error, Fixture};

const PUBLISHED: &str = include_str!("../data/published.tsv");

pub const ALL_TABLES: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

const PAIR_TABLE: u8 = 5;

/// Cells whose printed value is inconsistent with the other printed values
/// of the same column.
const KNOWN_DISCREPANCIES: &[(u8, &str, &str, &str)] = &[
    (2, "~M2", "kappa", "kappa formula on this matrix gives 0.428; every other cell of the column matches"),
    (4, "~M7", "mcen_s", "printed 0.726, formula gives 0.757"),
    (5, "*", "mcen_s", "row repeats the multi-class values of table 4"),
    (6, "M4|2", "f1s", "printed pre and sen give 0.761"),
    (6, "~M4|3", "cen_s", "formula gives 0.476"),
    (6, "~M5|2", "auc", "printed sen and spe give 0.655"),
    (8, "M7|2", "mcc_s", "formula gives 0.9212"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct PublishedCell {
    pub table: u8,
    pub column: String,
    pub row: String,
    pub text: String,
}

pub fn published() -> Vec<PublishedCell> {
    PUBLISHED
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            assert_eq!(f.len(), 4, "malformed published line: {l}");
            PublishedCell {
                table: f[0].parse().expect("table number"),
                column: f[1].to_string(),
                row: f[2].to_string(),
                text: f[3].to_string(),
            }
        })
        .collect()
}

/// Looks up one published cell's text.
pub fn published_text(table: u8, column: &str, row: &str) -> Option<String> {
    published()
        .into_iter()
        .find(|c| c.table == table && c.column == column && c.row == row)
        .map(|c| c.text)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expected {
    Value(f64),
    Percent(f64),
    Na,
}

/// Parses a printed cell and returns it with its tolerance: `10^-d` for
/// `d >= 3` decimals, 0.01 for fewer, half a point for percentages.
pub fn expected(text: &str) -> (Expected, f64) {
    if text == "NA" {
        return (Expected::Na, 0.0);
    }
    if let Some(p) = text.strip_suffix('%') {
        return (Expected::Percent(p.parse().expect("percentage")), 0.5);
    }
    let decimals = text.split_once('.').map_or(0, |(_, frac)| frac.len());
    let tol = if decimals >= 3 { 10f64.powi(-(decimals as i32)) } else { 0.01 };
    (Expected::Value(text.parse().expect("number")), tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Unsupported,
    NotApplicable,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "MISMATCH",
            Status::Unsupported => "unsupported",
            Status::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub cell: PublishedCell,
    /// `Some(None)` is a computed NA.
    pub computed: Option<Option<f64>>,
    pub tolerance: f64,
    pub status: Status,
    pub note: Option<String>,
}

enum Computed {
    Value(Option<f64>),
    Unsupported,
    NotApplicable(String),
}

fn fixture(name: &str) -> Result<ConfusionMatrix, String> {
    Fixture::from_name(name).map(Fixture::matrix).ok_or_else(|| format!("unknown fixture {name}"))
}

/// Builds the matrix a column id refers to.
pub fn column_matrix(column: &str) -> Result<ConfusionMatrix, String> {
    let (estimate, rest) = match column.strip_prefix('~') {
        Some(r) => (true, r),
        None => (false, column),
    };
    let (base, smooth) = match rest.split_once('+') {
        Some((b, _)) => (b, true),
        None => (rest, false),
    };
    let mut m = match base.split_once('|') {
        Some((name, class)) => {
            let j: usize = class.parse().map_err(|_| format!("bad class in {column}"))?;
            one_vs_rest(&fixture(name)?, j - 1).map_err(|e| e.to_string())?
        }
        None => fixture(base)?,
    };
    if smooth {
        m = m.smooth();
    }
    if estimate {
        m = m.estimate().map_err(|e| e.to_string())?;
    }
    Ok(m)
}

fn indexed(row: &str, prefix: &str) -> Option<usize> {
    row.strip_prefix(prefix)?.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1)
}

/// Evaluates one row id on a matrix.
pub fn row_value(m: &ConfusionMatrix, row: &str) -> Result<Option<f64>, Error> {
    if let Some(k) = indexed(row, "lambda") {
        return Ok(b_eigenvalues(m)?.get(k).copied());
    }
    if let Some(k) = indexed(row, "mu") {
        return Ok(spectrum(m)?.mus.get(k).copied());
    }
    match row {
        "thr_min" => Ok(Some(spectrum(m)?.thr_min)),
        "thr_max" => Ok(Some(spectrum(m)?.thr_max)),
        id => {
            let measure: Measure = id.parse().map_err(|_| Error::Unsupported { measure: "unknown row", n: m.n() })?;
            compute(m, measure)
        }
    }
}

fn compute_cell(table: u8, column: &str, row: &str) -> Computed {
    if let Some((from, to)) = column.split_once("->") {
        let value = |c: &str| column_matrix(c).ok().and_then(|m| row_value(&m, row).ok().flatten());
        return match (value(from), value(to)) {
            (Some(a), Some(b)) if a != 0.0 => Computed::Value(Some((a - b) / a * 100.0)),
            _ => Computed::NotApplicable("drop needs both values".to_string()),
        };
    }
    if table == PAIR_TABLE && column.starts_with('~') {
        return Computed::NotApplicable("pair counting needs integer counts; the estimate is real-valued".to_string());
    }
    let m = match column_matrix(column) {
        Ok(m) => m,
        Err(e) => return Computed::NotApplicable(e),
    };
    let m = if table == PAIR_TABLE {
        match pairs_binary(&m).and_then(|c| c.to_confusion()) {
            Ok(b) => b,
            Err(e) => return Computed::NotApplicable(e.to_string()),
        }
    } else {
        m
    };
    match row_value(&m, row) {
        Ok(v) => Computed::Value(v),
        Err(Error::Unsupported { .. }) => Computed::Unsupported,
        Err(e) => Computed::NotApplicable(e.to_string()),
    }
}

fn known_note(cell: &PublishedCell) -> Option<String> {
    KNOWN_DISCREPANCIES
        .iter()
        .find(|(t, c, r, _)| *t == cell.table && (*c == "*" || *c == cell.column) && *r == cell.row)
        .map(|(_, _, _, note)| format!("known discrepancy: {note}"))
}

pub fn check_cell(cell: &PublishedCell) -> CellCheck {
    let (want, tolerance) = expected(&cell.text);
    let (computed, status, mut note) = match compute_cell(cell.table, &cell.column, &cell.row) {
        Computed::Value(v) => {
            let ok = match (want, v) {
                (Expected::Na, None) => true,
                (Expected::Value(w) | Expected::Percent(w), Some(got)) => (got - w).abs() <= tolerance + 1e-12,
                _ => false,
            };
            (Some(v), if ok { Status::Ok } else { Status::Mismatch }, None)
        }
        Computed::Unsupported => (None, Status::Unsupported, Some("measure not defined for 2 classes".to_string())),
        Computed::NotApplicable(why) => (None, Status::NotApplicable, Some(why)),
    };
    if status == Status::Mismatch || status == Status::Unsupported {
        if let Some(k) = known_note(cell) {
            note = Some(k);
        }
    }
    CellCheck { cell: cell.clone(), computed, tolerance, status, note }
}

pub fn check_tables(tables: &[u8]) -> Vec<CellCheck> {
    published().iter().filter(|c| tables.contains(&c.table)).map(check_cell).collect()
}

fn pair_erratum_section() -> String {
    let mut out = String::from(
        "\npair counting: b = (P - m)/2 - a, c = (Q - m)/2 - a, d = m(m-1)/2 - a - b - c,\n\
         with P, Q the sums of squared row and column sums. The variant without the\n\
         -m/2 terms (b = P/2 - a, c = Q/2 - a) does not reproduce the table:\n\n",
    );
    out.push_str(&format!(
        "{:<8} {:<5} {:>9} {:>10} {:>12}\n",
        "column", "row", "published", "corrected", "uncorrected"
    ));
    let mut literal_hits = 0;
    let mut cells = 0;
    for name in ["M4", "M5", "M6", "M7"] {
        let m = fixture(name).expect("fixture");
        let corrected = binary_measures(&pairs_binary(&m).and_then(|c| c.to_confusion()).expect("pairs"));
        let literal_cm = pairs_binary_literal(&m).and_then(|c| c.to_confusion()).expect("pairs");
        let literal = binary_measures(&literal_cm);
        let corrected_acc = accuracy(&pairs_binary(&m).and_then(|c| c.to_confusion()).expect("pairs"));
        let rows = [
            ("sen", corrected.as_ref().ok().and_then(|b| b.sen), literal.as_ref().ok().and_then(|b| b.sen)),
            ("pre", corrected.as_ref().ok().and_then(|b| b.pre), literal.as_ref().ok().and_then(|b| b.pre)),
            ("acc", Some(corrected_acc), Some(accuracy(&literal_cm))),
        ];
        for (row, c, l) in rows {
            let Some(text) = published_text(PAIR_TABLE, name, row) else { continue };
            let (Expected::Value(w), tol) = expected(&text) else { continue };
            cells += 1;
            if l.is_some_and(|l| (l - w).abs() <= tol + 1e-12) {
                literal_hits += 1;
            }
            out.push_str(&format!(
                "{:<8} {:<5} {:>9} {:>10} {:>12}\n",
                name,
                row,
                text,
                c.map_or("NA".to_string(), |v| format!("{v:.4}")),
                l.map_or("NA".to_string(), |v| format!("{v:.4}")),
            ));
        }
    }
    out.push_str(&format!("uncorrected counts reproduce {literal_hits} of {cells} cells\n"));
    out
}

fn fmt_computed(c: &Option<Option<f64>>) -> String {
    match c {
        None => "-".to_string(),
        Some(None) => "NA".to_string(),
        Some(Some(v)) => format!("{v:.5}"),
    }
}

/// Runs the regression for the selected tables and renders the report.
pub fn run_paper_tables(tables: &[u8]) -> String {
    let checks = check_tables(tables);
    let mut out = String::new();
    for &t in tables {
        let rows: Vec<&CellCheck> = checks.iter().filter(|c| c.cell.table == t).collect();
        if rows.is_empty() {
            continue;
        }
        let ok = rows.iter().filter(|c| c.status == Status::Ok).count();
        out.push_str(&format!("table {t}: {ok}/{} cells within tolerance\n", rows.len()));
        out.push_str(&format!(
            "{:<10} {:<8} {:>9} {:>10} {:>9} {:>7}  {}\n",
            "column", "row", "published", "computed", "|diff|", "tol", "status"
        ));
        for c in rows {
            let diff = match (c.computed, expected(&c.cell.text).0) {
                (Some(Some(v)), Expected::Value(w) | Expected::Percent(w)) => format!("{:.5}", (v - w).abs()),
                _ => "-".to_string(),
            };
            out.push_str(&format!(
                "{:<10} {:<8} {:>9} {:>10} {:>9} {:>7}  {}{}\n",
                c.cell.column,
                c.cell.row,
                c.cell.text,
                fmt_computed(&c.computed),
                diff,
                c.tolerance,
                c.status.label(),
                c.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default(),
            ));
        }
        if t == PAIR_TABLE {
            out.push_str(&pair_erratum_section());
        }
        out.push('\n');
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    out.push_str(&format!(
        "summary: {} cells, {} ok, {} mismatch, {} unsupported, {} n/a\n",
        checks.len(),
        count(Status::Ok),
        count(Status::Mismatch),
        count(Status::Unsupported),
        count(Status::NotApplicable),
    ));
    out
}
