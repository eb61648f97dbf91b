//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any result differs from what is expected below.

use std::process::ExitCode;
use std::time::Instant;

use eve_cli::tables::{expected, published, published_text, Expected};
use eve_core::convert::{one_vs_rest, pairs_binary, pairs_binary_literal, pairs_binary_oracle};
use eve_core::densemat::{determinant, matrix_rank, symmetric_eigenvalues, Matrix, DEFAULT_RANK_TOL};
use eve_core::measures::{binary_measures, compute, Measure};
use eve_core::spectral::{
    b_eigenvalues, binary_eigenvalues, column_stochastic, derive, eve, gershgorin_bounds, is_diagonally_dominant,
    spectrum, symmetrize,
};
use eve_core::{ConfusionMatrix, Error, Fixture};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated, with the reason.
const EXPECTED_FAILURES: &[(usize, &str)] = &[(
    2,
    "kappa of the M2 estimate is printed as 0.423; the kappa formula gives 0.42777 on a matrix whose other 11 cells all match",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

struct Checker {
    checked: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { checked: 0, failures: Vec::new() }
    }

    fn near(&mut self, label: &str, got: Option<f64>, want: f64, tol: f64) {
        self.checked += 1;
        match got {
            Some(g) if (g - want).abs() <= tol + 1e-12 => {}
            Some(g) => self.failures.push(format!("{label}: {g:.5} vs {want} (tol {tol})")),
            None => self.failures.push(format!("{label}: NA vs {want}")),
        }
    }

    /// For cells printed with fewer than 3 decimals: the computed value,
    /// rounded to the printed precision, must equal the printed value.
    fn rounds_to(&mut self, label: &str, got: Option<f64>, text: &str) {
        self.checked += 1;
        let shown = got.map(|g| format!("{g:.*}", decimals(text)));
        if shown.as_deref() != Some(text) {
            self.failures.push(format!("{label}: {} vs {text}", shown.unwrap_or_else(|| "NA".into())));
        }
    }

    fn truth(&mut self, label: &str, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn outcome(self, what: &str) -> Outcome {
        let detail = if self.failures.is_empty() {
            format!("{} {what} checked", self.checked)
        } else {
            format!("{} of {} {what} off: {}", self.failures.len(), self.checked, self.failures.join("; "))
        };
        Outcome { passed: self.failures.is_empty(), detail }
    }
}

fn fixture(name: &str) -> ConfusionMatrix {
    Fixture::from_name(name).unwrap_or_else(|| panic!("no fixture {name}")).matrix()
}

/// Matrix for a column id: optional `~` (estimate), `|j` (one-vs-rest, 1-based), `+...` (smoothed).
fn column(id: &str) -> ConfusionMatrix {
    let (est, rest) = id.strip_prefix('~').map_or((false, id), |r| (true, r));
    let (base, smooth) = rest.split_once('+').map_or((rest, false), |(b, _)| (b, true));
    let mut m = match base.split_once('|') {
        Some((name, j)) => one_vs_rest(&fixture(name), j.parse::<usize>().unwrap() - 1).unwrap(),
        None => fixture(base),
    };
    if smooth {
        m = m.smooth();
    }
    if est {
        m = m.estimate().unwrap();
    }
    m
}

/// `Err` when the row's measure does not apply to this matrix.
fn row(m: &ConfusionMatrix, id: &str) -> Result<Option<f64>, Error> {
    let nth = |prefix: &str| id.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()).map(|k| k - 1);
    if let Some(k) = nth("lambda") {
        return Ok(b_eigenvalues(m)?.get(k).copied());
    }
    if let Some(k) = nth("mu") {
        return Ok(spectrum(m)?.mus.get(k).copied());
    }
    match id {
        "thr_min" => Ok(Some(spectrum(m)?.thr_min)),
        "thr_max" => Ok(Some(spectrum(m)?.thr_max)),
        _ => compute(m, id.parse::<Measure>().unwrap()),
    }
}

fn value(text: &str) -> f64 {
    match expected(text).0 {
        Expected::Value(v) | Expected::Percent(v) => v,
        Expected::Na => panic!("NA has no value"),
    }
}

fn decimals(text: &str) -> usize {
    text.split_once('.').map_or(0, |(_, f)| f.len())
}

fn ladder(text: &str) -> f64 {
    if decimals(text) <= 2 {
        0.01
    } else {
        0.001
    }
}

fn relative_drop(from: f64, to: f64) -> f64 {
    (from - to) / from * 100.0
}

fn criterion_1() -> Outcome {
    let mut c = Checker::new();
    for cell in published().iter().filter(|p| p.table == 1) {
        let got = row(&column(&cell.column), &cell.row).unwrap();
        c.near(&format!("{} {}", cell.column, cell.row), got, value(&cell.text), 0.001);
    }
    c.outcome("cells")
}

fn criterion_2() -> Outcome {
    let mut c = Checker::new();
    for cell in published().iter().filter(|p| p.table == 2) {
        match row(&column(&cell.column), &cell.row) {
            Err(Error::Unsupported { measure: "mcen_s", .. }) => continue,
            got => c.near(&format!("{} {}", cell.column, cell.row), got.unwrap(), value(&cell.text), ladder(&cell.text)),
        }
    }
    for (col, r, want) in [("Ma", "kappa", "0.000"), ("Mc", "kappa", "-0.8"), ("Mc", "cen_s", "-0.04"), ("Mb", "eve", "0.99")] {
        c.truth(&format!("{col} {r} printed as {want}"), published_text(2, col, r).as_deref() == Some(want));
    }
    c.outcome("cells")
}

fn criterion_3() -> Outcome {
    let mut c = Checker::new();
    for cell in published().iter().filter(|p| p.table == 3) {
        let m = column(&cell.column);
        let label = format!("{} {}", cell.column, cell.row);
        if cell.row == "eve" {
            c.near(&label, eve(&m).ok(), value(&cell.text), 0.0005);
        } else if decimals(&cell.text) < 3 {
            c.rounds_to(&label, row(&m, &cell.row).unwrap(), &cell.text);
        } else {
            c.near(&label, row(&m, &cell.row).unwrap(), value(&cell.text), 0.001);
        }
    }
    for (col, r, want) in [("M7+J5/5", "mu5", "-1.65"), ("M7+J5/5", "lambda5", "-0.104"), ("M7", "eve", "0.77604"), ("M7+J5/5", "eve", "0.77539")] {
        c.truth(&format!("{col} {r} printed as {want}"), published_text(3, col, r).as_deref() == Some(want));
    }
    c.outcome("cells")
}

fn criterion_4() -> Outcome {
    let mut c = Checker::new();
    let rows = ["acc", "kappa", "mcc_s", "nmi", "cen_s", "eve"];
    for cell in published().iter().filter(|p| p.table == 4 && rows.contains(&p.row.as_str()) && !p.column.contains("->")) {
        let got = row(&column(&cell.column), &cell.row).unwrap();
        c.near(&format!("{} {}", cell.column, cell.row), got, value(&cell.text), 0.001);
    }
    let drop = relative_drop(eve(&fixture("M6")).unwrap(), eve(&fixture("M7")).unwrap());
    c.near("eve drop M6->M7 (%)", Some(drop), 9.7, 0.5);
    c.outcome("cells")
}

fn criterion_5() -> Outcome {
    let mut c = Checker::new();
    let names = ["M4", "M5", "M6", "M7"];
    for name in names {
        let m = fixture(name);
        let counts = pairs_binary(&m).unwrap();
        c.truth(&format!("{name} formula equals oracle"), pairs_binary_oracle(&m).unwrap() == counts);
        let binary = counts.to_confusion().unwrap();
        for cell in published().iter().filter(|p| p.table == 5 && p.column == name) {
            match row(&binary, &cell.row) {
                Err(Error::Unsupported { measure: "mcen_s", .. }) => continue,
                got => c.near(&format!("{name} {}", cell.row), got.unwrap(), value(&cell.text), 0.001),
            }
        }
        // the uncorrected counts must miss the table
        let literal = binary_measures(&pairs_binary_literal(&m).unwrap().to_confusion().unwrap()).unwrap();
        let want = value(&published_text(5, name, "sen").unwrap());
        c.truth(
            &format!("{name} uncorrected sen misses the table"),
            literal.sen.is_some_and(|s| (s - want).abs() > 0.001),
        );
    }
    let m4 = pairs_binary(&fixture("M4")).unwrap();
    c.truth("M4 counts (2849, 890, 826, 6610)", [m4.a, m4.b, m4.c, m4.d] == [2849.0, 890.0, 826.0, 6610.0]);
    c.outcome("checks")
}

fn criterion_6() -> Outcome {
    let mut c = Checker::new();
    for (table, col) in [(6, "M4|1"), (7, "M6|5")] {
        let m = column(col);
        for cell in published().iter().filter(|p| p.table == table && p.column == col) {
            match row(&m, &cell.row) {
                Err(Error::Unsupported { .. }) => continue,
                got => {
                    c.truth(&format!("{col} {} printed 1.0", cell.row), value(&cell.text) == 1.0);
                    c.near(&format!("{col} {}", cell.row), got.unwrap(), 1.0, 0.01);
                }
            }
        }
    }
    let m6_4 = column("M6|4");
    c.near("M6|4 pre", row(&m6_4, "pre").unwrap(), 0.231, 0.01);
    c.near("M6|4 eve", row(&m6_4, "eve").unwrap(), 0.585, 0.01);
    let m7_4 = column("M7|4");
    c.truth("M7|4 f1s is NA", row(&m7_4, "f1s").unwrap().is_none());
    c.near("M7|4 kappa", row(&m7_4, "kappa").unwrap(), -0.02, 0.01);
    c.outcome("checks")
}

fn criterion_7() -> Outcome {
    let mut c = Checker::new();
    for cell in published().iter().filter(|p| p.table == 9 && p.row.starts_with("lambda")) {
        let got = row(&column(&cell.column), &cell.row).unwrap();
        c.near(&format!("{} {}", cell.column, cell.row), got, value(&cell.text), 0.002);
    }
    let (m8, m9) = (fixture("M8"), fixture("M9"));
    let lambdas8 = b_eigenvalues(&m8).unwrap();
    let lambdas9 = b_eigenvalues(&m9).unwrap();
    c.near("M8 lambda1", lambdas8.first().copied(), 1.019, 0.002);
    c.near("M8 lambda10", lambdas8.last().copied(), 0.649, 0.002);
    c.near("M9 lambda1", lambdas9.first().copied(), 1.001, 0.002);
    c.near("M9 lambda10", lambdas9.last().copied(), 0.128, 0.002);
    let acc = |m: &ConfusionMatrix| compute(m, Measure::Acc).unwrap().unwrap();
    let (acc8, acc9) = (acc(&m8), acc(&m9));
    let (eve8, eve9) = (eve(&m8).unwrap(), eve(&m9).unwrap());
    c.near("M8 acc", Some(acc8), 0.854, 0.001);
    c.near("M9 acc", Some(acc9), 0.335, 0.001);
    c.near("M8 eve", Some(eve8), 0.996, 0.001);
    c.near("M9 eve", Some(eve9), 0.912, 0.001);
    c.near("acc drop (%)", Some(relative_drop(acc8, acc9)), 60.8, 0.5);
    c.near("eve drop (%)", Some(relative_drop(eve8, eve9)), 8.4, 0.5);
    c.outcome("checks")
}

/// Integer matrix with entries in `0..100` and a positive diagonal.
fn random_cm(rng: &mut ChaCha8Rng, n: usize) -> ConfusionMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| rng.gen_range(0..100) as f64 + if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    ConfusionMatrix::from_dense(&rows).unwrap()
}

fn random_dominant(rng: &mut ChaCha8Rng, n: usize) -> ConfusionMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for j in 0..n {
        let diag = rng.gen_range(0.5001..1.0);
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let off: f64 = (0..n).filter(|&i| i != j).map(|i| weights[i]).sum();
        for (i, row) in rows.iter_mut().enumerate() {
            row[j] = if i == j { diag } else { (1.0 - diag) * weights[i] / off };
        }
    }
    ConfusionMatrix::from_dense(&rows).unwrap()
}

fn theorem_checks(c: &mut Checker, label: &str, m: &ConfusionMatrix) {
    let d = derive(m).unwrap();
    let s = spectrum(m).unwrap();
    let n = m.n();
    c.truth(&format!("{label}: rank of estimate"), matrix_rank(&d.m_tilde, DEFAULT_RANK_TOL) == m.rank());
    c.truth(&format!("{label}: trace of estimate"), (d.m_tilde.trace() - m.trace()).abs() <= 1e-9 * m.total());
    if n <= 4 {
        let (a, b) = (determinant(m.as_matrix()).unwrap(), determinant(&d.m_tilde).unwrap());
        c.truth(&format!("{label}: determinant of estimate"), (a - b).abs() <= 1e-9 * m.total().powi(n as i32));
    }
    c.truth(&format!("{label}: trace of B"), (s.lambdas.iter().sum::<f64>() - d.p.trace()).abs() < 1e-9);
    if is_diagonally_dominant(&d.p) {
        c.truth(&format!("{label}: dominant => positive"), *s.lambdas.last().unwrap() > 0.0);
    }
    c.truth(&format!("{label}: rank of P"), m.rank() == matrix_rank(&d.p, DEFAULT_RANK_TOL));
    let (lo, hi) = gershgorin_bounds(&d.a);
    c.truth(&format!("{label}: Gershgorin"), s.mus.iter().all(|&mu| mu >= lo - 1e-12 && mu <= hi + 1e-12));
    c.truth(&format!("{label}: lambda1 <= mu1"), s.lambdas[0] <= s.mus[0] + 1e-12);
}

fn criterion_8() -> Outcome {
    let mut c = Checker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    for f in Fixture::ALL {
        let m = f.matrix();
        let m = if derive(&m).is_ok() { m } else { m.smooth() };
        theorem_checks(&mut c, f.name(), &m);
    }
    for k in 0..1000 {
        let n = rng.gen_range(2..=6);
        let m = random_cm(&mut rng, n);
        theorem_checks(&mut c, &format!("random #{k}"), &m);
    }
    for k in 0..1000 {
        let n = rng.gen_range(2..=6);
        let m = random_dominant(&mut rng, n);
        let lambdas = b_eigenvalues(&m).unwrap();
        c.truth(&format!("dominant #{k}: positive spectrum"), *lambdas.last().unwrap() > 0.0);
    }
    for k in 0..1000 {
        let (p11, p22): (f64, f64) = (rng.gen(), rng.gen());
        let p = Matrix::from_rows(&[[p11, 1.0 - p22], [1.0 - p11, p22]]).unwrap();
        let (l1, l2) = binary_eigenvalues(&p).unwrap();
        let jacobi = symmetric_eigenvalues(&symmetrize(&p)).unwrap();
        c.truth(
            &format!("binary #{k}: closed form vs Jacobi"),
            (l1 - jacobi[0]).abs() < 1e-12 && (l2 - jacobi[1]).abs() < 1e-12,
        );
    }
    for f in Fixture::ALL.into_iter().filter(|f| f.matrix().n() == 2) {
        let m = f.matrix();
        let b = binary_measures(&m).unwrap();
        let (sen, spe, auc, gini) = (b.sen.unwrap(), b.spe.unwrap(), b.auc.unwrap(), b.gini.unwrap());
        let (l1, l2) = binary_eigenvalues(&column_stochastic(&m).unwrap()).unwrap();
        c.truth(&format!("{}: auc = mean eigenvalue", f.name()), (auc - (l1 + l2) / 2.0).abs() < 1e-12);
        c.truth(
            &format!("{}: eigenvalue product", f.name()),
            (l1 * l2 - (gini - 0.25 * (sen - spe).powi(2))).abs() < 1e-12,
        );
    }
    for n in 2..=10 {
        let eye = ConfusionMatrix::from_matrix(Matrix::identity(n)).unwrap();
        c.truth(&format!("eve(I_{n}) = 1"), eve(&eye).unwrap() == 1.0);
        let flat = ConfusionMatrix::from_matrix(Matrix::filled(n, n, 1.0 / n as f64)).unwrap();
        c.truth(&format!("eve(J_{n}/{n}) = 0"), eve(&flat).unwrap() == 0.0);
    }
    for k in 0..200 {
        let n = rng.gen_range(2..=5);
        let budget = rng.gen_range(2..=200u32);
        let mut rows = vec![vec![0.0; n]; n];
        for _ in 0..budget {
            rows[rng.gen_range(0..n)][rng.gen_range(0..n)] += 1.0;
        }
        let m = ConfusionMatrix::from_dense(&rows).unwrap();
        c.truth(&format!("pairs #{k}: formula = oracle"), pairs_binary(&m).unwrap() == pairs_binary_oracle(&m).unwrap());
    }
    c.outcome("property checks")
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let trials = 10_000;
    let mut violating = 0;
    let mut pairs_checked = 0;
    let mut pairs_violated = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let s = spectrum(&random_cm(&mut rng, n)).unwrap();
        let mut hit = false;
        for (l, mu) in s.lambdas.iter().zip(&s.mus) {
            pairs_checked += 1;
            let excess = l.abs() - mu.abs();
            if excess > 1e-12 {
                pairs_violated += 1;
                worst = worst.max(excess);
                hit = true;
            }
        }
        violating += usize::from(hit);
    }
    Outcome {
        passed: true,
        detail: format!(
            "{trials} matrices, {violating} with some |lambda_i| > |mu_i| ({pairs_violated} of {pairs_checked} pairs, largest excess {worst:.4})"
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 9] = [
        ("table 1 bounds and eigenvalues", criterion_1),
        ("table 2 binary measures", criterion_2),
        ("table 3 spectra and eve of M7", criterion_3),
        ("table 4 multi-class measures", criterion_4),
        ("table 5 pair counting", criterion_5),
        ("tables 6-8 one-vs-rest spot checks", criterion_6),
        ("MNIST spectra and measures", criterion_7),
        ("property suite", criterion_8),
        ("exploratory |lambda_i| <= |mu_i| run", criterion_9),
    ];
    let mut unexpected = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        let outcome = run();
        let expected_failure = EXPECTED_FAILURES.iter().find(|(c, _)| *c == id);
        println!(
            "criterion {id}: {} - {name}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail
        );
        match (outcome.passed, expected_failure) {
            (false, Some((_, why))) => println!("  expected failure: {why}"),
            (true, Some(_)) => {
                println!("  unexpected pass: remove it from the expected failures");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
            (true, None) => {}
        }
    }
    println!("acceptance finished in {:.2}s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
