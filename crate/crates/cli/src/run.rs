//! The `evaluate` and `bounds` commands.

use std::fs;

use eve_core::convert::{pairs_binary, pairs_binary_literal, BinaryCounts};
use eve_core::measures::{evaluate, evaluate_per_class, Measure, MeasureReport};
use eve_core::spectral::{b_eigenvalues, spectrum};
use eve_core::{ConfusionMatrix, Error};

use crate::config::{Conversion, InputFormat, OutputFormat, RunConfig};
use crate::error::{CliError, EXIT_OK};
use crate::input::{parse_labels, parse_matrix_csv};
use crate::report;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSummary {
    pub n: usize,
    pub total: f64,
    /// `None` when some class is empty.
    pub ir: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub lambdas: Vec<f64>,
    /// The normalised matrix needs a positive diagonal; otherwise these are `None`.
    pub mus: Option<Vec<f64>>,
    pub thr_min: Option<f64>,
    pub thr_max: Option<f64>,
    pub dominant: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairSummary {
    pub counts: BinaryCounts,
    pub literal: Option<BinaryCounts>,
    pub literal_report: Option<MeasureReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub matrix: MatrixSummary,
    pub spectrum: Option<SpectrumSummary>,
    pub report: MeasureReport,
    pub pairs: Option<PairSummary>,
    pub echo_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn from_result(result: Result<String, CliError>) -> Self {
        match result {
            Ok(text) => Outcome { text, exit_code: EXIT_OK },
            Err(e) => Outcome { text: format!("error: {e}\n"), exit_code: e.exit_code() },
        }
    }
}

/// Reads and parses the configured input, then applies `transpose` and `smooth`.
pub fn load_matrix(cfg: &RunConfig) -> Result<ConfusionMatrix, CliError> {
    let text = fs::read_to_string(&cfg.input_path).map_err(|e| CliError::Io {
        path: cfg.input_path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut m = match cfg.input_format {
        InputFormat::Matrix => parse_matrix_csv(&text)?,
        InputFormat::Labels => parse_labels(&text, false)?,
        InputFormat::Soft => parse_labels(&text, true)?,
    };
    if cfg.transpose {
        m = m.transpose();
    }
    if cfg.smooth {
        m = m.smooth();
    }
    Ok(m)
}

fn matrix_id(cfg: &RunConfig) -> String {
    cfg.input_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

pub fn summarize_matrix(m: &ConfusionMatrix) -> MatrixSummary {
    MatrixSummary { n: m.n(), total: m.total(), ir: m.imbalance_ratio().ok() }
}

pub fn summarize_spectrum(m: &ConfusionMatrix) -> Result<SpectrumSummary, CliError> {
    match spectrum(m) {
        Ok(s) => Ok(SpectrumSummary {
            lambdas: s.lambdas,
            mus: Some(s.mus),
            thr_min: Some(s.thr_min),
            thr_max: Some(s.thr_max),
            dominant: Some(s.diagonally_dominant),
            note: None,
        }),
        Err(e @ Error::ZeroDiagonal(_)) => Ok(SpectrumSummary {
            lambdas: b_eigenvalues(m)?,
            mus: None,
            thr_min: None,
            thr_max: None,
            dominant: Some(false),
            note: Some(e.to_string()),
        }),
        Err(e @ Error::EmptyColumn(_)) => Ok(SpectrumSummary {
            lambdas: Vec::new(),
            mus: None,
            thr_min: None,
            thr_max: None,
            dominant: None,
            note: Some(e.to_string()),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn evaluate_config(cfg: &RunConfig) -> Result<Evaluation, CliError> {
    if cfg.paper_literal && cfg.convert != Conversion::Pairs {
        return Err(CliError::Config("--paper-literal only applies with --convert pairs".to_string()));
    }
    let m = load_matrix(cfg)?;
    let id = matrix_id(cfg);
    let matrix = summarize_matrix(&m);

    let (target, report, pairs) = match cfg.convert {
        Conversion::None => {
            let report = evaluate(&m, cfg.use_estimate, &cfg.measures, &id)?;
            (m, report, None)
        }
        Conversion::Pairs => {
            let counts = pairs_binary(&m)?;
            let binary = counts.to_confusion()?;
            let report = evaluate(&binary, cfg.use_estimate, &cfg.measures, &id)?;
            let (literal, literal_report) = if cfg.paper_literal {
                let lit = pairs_binary_literal(&m)?;
                let lit_report = lit
                    .to_confusion()
                    .ok()
                    .and_then(|c| evaluate(&c, cfg.use_estimate, &cfg.measures, &id).ok());
                (Some(lit), lit_report)
            } else {
                (None, None)
            };
            (binary, report, Some(PairSummary { counts, literal, literal_report }))
        }
        Conversion::Ovr => {
            let report = evaluate_per_class(&m, cfg.use_estimate, &cfg.measures, &id)?;
            (m, report, None)
        }
    };

    let spectrum = if cfg.measures.measures().contains(&Measure::Eve) {
        let evaluated = if cfg.use_estimate { target.estimate()? } else { target };
        Some(summarize_spectrum(&evaluated)?)
    } else {
        None
    };

    Ok(Evaluation { matrix, spectrum, report, pairs, echo_tolerance: cfg.echo_tolerance })
}

pub fn run_evaluate(cfg: &RunConfig) -> Outcome {
    Outcome::from_result(evaluate_config(cfg).map(|ev| match cfg.output_format {
        OutputFormat::Table => report::evaluation_table(&ev),
        OutputFormat::Json => report::evaluation_json(&ev),
    }))
}

pub fn run_bounds(cfg: &RunConfig) -> Outcome {
    Outcome::from_result((|| {
        let m = load_matrix(cfg)?;
        let m = if cfg.use_estimate { m.estimate()? } else { m };
        let matrix = summarize_matrix(&m);
        let spectrum = summarize_spectrum(&m)?;
        Ok(match cfg.output_format {
            OutputFormat::Table => report::bounds_table(&matrix, &spectrum),
            OutputFormat::Json => report::bounds_json(&matrix, &spectrum),
        })
    })())
}
