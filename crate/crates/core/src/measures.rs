//! Classifier comparison measures.
//!
//! Every measure is `Option<f64>`: `None` is NA, reported whenever a
//! denominator vanishes. Binary measures take class 1 (index 0) as the
//! positive class under the column-is-truth orientation of
//! [`ConfusionMatrix`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::confusion::ConfusionMatrix;
use crate::convert::one_vs_rest;
use crate::error::{Error, Result};
use crate::spectral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Sen,
    Spe,
    Pre,
    Ipre,
    F1s,
    Fmi,
    Auc,
    Gini,
    Acc,
    Kappa,
    Mcc,
    MccS,
    Nmi,
    HJoint,
    Mi,
    Cen,
    CenS,
    Mcen,
    McenS,
    Eve,
}

impl Measure {
    pub const ALL: [Measure; 20] = [
        Measure::Sen,
        Measure::Spe,
        Measure::Pre,
        Measure::Ipre,
        Measure::F1s,
        Measure::Fmi,
        Measure::Auc,
        Measure::Gini,
        Measure::Acc,
        Measure::Kappa,
        Measure::Mcc,
        Measure::MccS,
        Measure::Nmi,
        Measure::HJoint,
        Measure::Mi,
        Measure::Cen,
        Measure::CenS,
        Measure::Mcen,
        Measure::McenS,
        Measure::Eve,
    ];

    /// The columns of the multi-class comparison tables.
    pub const MULTICLASS: [Measure; 7] = [
        Measure::Acc,
        Measure::Kappa,
        Measure::MccS,
        Measure::Nmi,
        Measure::CenS,
        Measure::McenS,
        Measure::Eve,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Measure::Sen => "sen",
            Measure::Spe => "spe",
            Measure::Pre => "pre",
            Measure::Ipre => "ipre",
            Measure::F1s => "f1s",
            Measure::Fmi => "fmi",
            Measure::Auc => "auc",
            Measure::Gini => "gini",
            Measure::Acc => "acc",
            Measure::Kappa => "kappa",
            Measure::Mcc => "mcc",
            Measure::MccS => "mcc_s",
            Measure::Nmi => "nmi",
            Measure::HJoint => "h_joint",
            Measure::Mi => "mi",
            Measure::Cen => "cen",
            Measure::CenS => "cen_s",
            Measure::Mcen => "mcen",
            Measure::McenS => "mcen_s",
            Measure::Eve => "eve",
        }
    }

    pub fn is_binary_only(self) -> bool {
        matches!(
            self,
            Measure::Sen
                | Measure::Spe
                | Measure::Pre
                | Measure::Ipre
                | Measure::F1s
                | Measure::Fmi
                | Measure::Auc
                | Measure::Gini
        )
    }

    /// Whether this measure can be computed for `n` classes.
    pub fn supports(self, n: usize) -> bool {
        match self {
            Measure::Mcen | Measure::McenS => n >= 3,
            m if m.is_binary_only() => n == 2,
            _ => true,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMeasure(pub String);

impl fmt::Display for UnknownMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown measure '{}'", self.0)
    }
}

impl std::error::Error for UnknownMeasure {}

impl FromStr for Measure {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('.', "_");
        Measure::ALL
            .into_iter()
            .find(|m| m.id() == key)
            .ok_or_else(|| UnknownMeasure(s.trim().to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryMeasures {
    pub sen: Option<f64>,
    pub spe: Option<f64>,
    pub pre: Option<f64>,
    pub ipre: Option<f64>,
    pub f1s: Option<f64>,
    pub fmi: Option<f64>,
    pub auc: Option<f64>,
    pub gini: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

fn require_binary(m: &ConfusionMatrix) -> Result<()> {
    if m.n() != 2 {
        return Err(Error::NotBinary { rows: m.n(), cols: m.n() });
    }
    Ok(())
}

pub fn binary_measures(m: &ConfusionMatrix) -> Result<BinaryMeasures> {
    require_binary(m)?;
    let (tp, fp, fne, tn) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let sen = ratio(tp, tp + fne);
    let spe = ratio(tn, tn + fp);
    let pre = ratio(tp, tp + fp);
    let ipre = ratio(tn, tn + fne);
    let f1s = match (pre, sen) {
        (Some(p), Some(s)) => ratio(2.0 * p * s, p + s),
        _ => None,
    };
    let fmi = pre.zip(sen).map(|(p, s)| (p * s).sqrt());
    let auc = sen.zip(spe).map(|(s, t)| (s + t) / 2.0);
    let gini = auc.map(|a| 2.0 * a - 1.0);
    Ok(BinaryMeasures { sen, spe, pre, ipre, f1s, fmi, auc, gini })
}

/// Binary measures of the estimate matrix, which corrects for class imbalance.
pub fn adjusted_binary_measures(m: &ConfusionMatrix) -> Result<BinaryMeasures> {
    require_binary(m)?;
    binary_measures(&m.estimate()?)
}

pub fn accuracy(m: &ConfusionMatrix) -> f64 {
    m.trace() / m.total()
}

/// `(m * trace - sum_i m_i. m_.i, sum_i m_i. m_.i)`
fn agreement_terms(m: &ConfusionMatrix) -> (f64, f64) {
    let chance: f64 = m.predicted_sizes().iter().zip(m.class_sizes()).map(|(r, c)| r * c).sum();
    (m.total() * m.trace() - chance, chance)
}

pub fn cohen_kappa(m: &ConfusionMatrix) -> Option<f64> {
    let (num, chance) = agreement_terms(m);
    ratio(num, m.total().powi(2) - chance)
}

pub fn mcc(m: &ConfusionMatrix) -> Option<f64> {
    let (num, _) = agreement_terms(m);
    let total_sq = m.total().powi(2);
    let sq_sum = |v: Vec<f64>| v.iter().map(|x| x * x).sum::<f64>();
    let den = (total_sq - sq_sum(m.predicted_sizes())) * (total_sq - sq_sum(m.class_sizes()));
    ratio(num, den.max(0.0).sqrt()).map(|v| v.clamp(-1.0, 1.0))
}

/// Joint entropy of the cell distribution, in nats.
pub fn joint_entropy(m: &ConfusionMatrix) -> f64 {
    let total = m.total();
    -m.as_matrix()
        .as_slice()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| {
            let p = v / total;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Mutual information between predicted and true class, in nats.
pub fn mutual_information(m: &ConfusionMatrix) -> f64 {
    let total = m.total();
    let rows = m.predicted_sizes();
    let cols = m.class_sizes();
    let mut info = 0.0;
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let v = m.get(i, j);
            if v > 0.0 {
                info += v / total * (v * total / (r * c)).ln();
            }
        }
    }
    info.max(0.0)
}

/// `I / H`. With a single nonzero cell `H = 0`: 1 if that cell is on the
/// diagonal, NA otherwise.
pub fn nmi(m: &ConfusionMatrix) -> Option<f64> {
    let h = joint_entropy(m);
    if h <= 0.0 {
        let n = m.n();
        let cell = (0..n * n).find(|&k| m.get(k / n, k % n) > 0.0)?;
        return (cell / n == cell % n).then_some(1.0);
    }
    Some((mutual_information(m) / h).clamp(0.0, 1.0))
}

fn entropy_in_base(probs: impl Iterator<Item = f64>, base: f64) -> f64 {
    -probs.filter(|&p| p > 0.0).map(|p| p * p.ln()).sum::<f64>() / base.ln()
}

/// Confusion entropy: per-class entropy of misclassification mass, log base
/// `2(n-1)`, weighted by each class's share of row plus column mass. Can
/// exceed 1 for two classes.
pub fn cen(m: &ConfusionMatrix) -> f64 {
    let n = m.n();
    let base = 2.0 * (n as f64 - 1.0);
    let rows = m.predicted_sizes();
    let cols = m.class_sizes();
    (0..n)
        .map(|j| {
            let mass = rows[j] + cols[j];
            if mass == 0.0 {
                return 0.0;
            }
            let off = (0..n).filter(|&k| k != j).flat_map(|k| [m.get(j, k), m.get(k, j)]);
            let h = entropy_in_base(off.map(|v| v / mass), base);
            mass / (2.0 * m.total()) * h
        })
        .sum()
}

/// Modified confusion entropy, bounded in `[0, 1]`. Like [`cen`] but each
/// class only counts its off-diagonal mass `m_j. + m_.j - m_jj`, and class
/// weights are that mass over `2m - trace`. Defined for three or more classes.
pub fn mcen(m: &ConfusionMatrix) -> Result<f64> {
    let n = m.n();
    if n < 3 {
        return Err(Error::Unsupported { measure: "mcen", n });
    }
    let base = 2.0 * (n as f64 - 1.0);
    let rows = m.predicted_sizes();
    let cols = m.class_sizes();
    let weight_total = 2.0 * m.total() - m.trace();
    if weight_total <= 0.0 {
        return Ok(0.0);
    }
    let value = (0..n)
        .map(|j| {
            let mass = rows[j] + cols[j] - m.get(j, j);
            if mass <= 0.0 {
                return 0.0;
            }
            let off = (0..n).filter(|&k| k != j).flat_map(|k| [m.get(j, k), m.get(k, j)]);
            let h = entropy_in_base(off.map(|v| v / mass), base);
            mass / weight_total * h
        })
        .sum::<f64>();
    Ok(value.clamp(0.0, 1.0))
}

/// Computes one measure. `Err(Unsupported)` when the measure does not apply
/// to this number of classes.
pub fn compute(m: &ConfusionMatrix, measure: Measure) -> Result<Option<f64>> {
    if !measure.supports(m.n()) {
        return Err(Error::Unsupported { measure: measure.id(), n: m.n() });
    }
    if measure.is_binary_only() {
        let b = binary_measures(m)?;
        return Ok(match measure {
            Measure::Sen => b.sen,
            Measure::Spe => b.spe,
            Measure::Pre => b.pre,
            Measure::Ipre => b.ipre,
            Measure::F1s => b.f1s,
            Measure::Fmi => b.fmi,
            Measure::Auc => b.auc,
            _ => b.gini,
        });
    }
    Ok(match measure {
        Measure::Acc => Some(accuracy(m)),
        Measure::Kappa => cohen_kappa(m),
        Measure::Mcc => mcc(m),
        Measure::MccS => mcc(m).map(|v| (v + 1.0) / 2.0),
        Measure::Nmi => nmi(m),
        Measure::HJoint => Some(joint_entropy(m)),
        Measure::Mi => Some(mutual_information(m)),
        Measure::Cen => Some(cen(m)),
        Measure::CenS => Some(1.0 - cen(m)),
        Measure::Mcen => Some(mcen(m)?),
        Measure::McenS => Some(1.0 - mcen(m)?),
        // an empty class leaves P undefined
        Measure::Eve => match spectral::eve(m) {
            Ok(v) => Some(v),
            Err(Error::EmptyColumn(_)) => None,
            Err(e) => return Err(e),
        },
        _ => unreachable!("binary measures handled above"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MeasureSelection {
    #[default]
    All,
    Multiclass,
    List(Vec<Measure>),
}

impl MeasureSelection {
    pub fn measures(&self) -> Vec<Measure> {
        match self {
            MeasureSelection::All => Measure::ALL.to_vec(),
            MeasureSelection::Multiclass => Measure::MULTICLASS.to_vec(),
            MeasureSelection::List(list) => list.clone(),
        }
    }
}

impl FromStr for MeasureSelection {
    type Err = UnknownMeasure;

    /// `all`, `multiclass`, or a comma-separated list of measure ids.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "all" => Ok(MeasureSelection::All),
            "multiclass" => Ok(MeasureSelection::Multiclass),
            list => {
                let mut out = Vec::new();
                for part in list.split(',').filter(|p| !p.trim().is_empty()) {
                    let m: Measure = part.parse()?;
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
                if out.is_empty() {
                    return Err(UnknownMeasure(s.to_string()));
                }
                Ok(MeasureSelection::List(out))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Raw,
    Estimate,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Raw => "raw",
            Source::Estimate => "estimate",
        })
    }
}

pub type MeasureValues = BTreeMap<Measure, Option<f64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub matrix_id: String,
    pub source: Source,
    pub values: MeasureValues,
    /// One entry per class (one-vs-rest), when requested.
    pub per_class: Option<Vec<MeasureValues>>,
    /// Requested measures that do not apply to this matrix.
    pub unsupported: Vec<Measure>,
}

impl MeasureReport {
    /// `None` if the measure was not computed, `Some(None)` for NA.
    pub fn get(&self, measure: Measure) -> Option<Option<f64>> {
        self.values.get(&measure).copied()
    }
}

fn compute_all(m: &ConfusionMatrix, measures: &[Measure]) -> Result<(MeasureValues, Vec<Measure>)> {
    let mut values = MeasureValues::new();
    let mut unsupported = Vec::new();
    for &measure in measures {
        match compute(m, measure) {
            Ok(v) => {
                values.insert(measure, v);
            }
            Err(Error::Unsupported { .. }) => unsupported.push(measure),
            Err(e) => return Err(e),
        }
    }
    Ok((values, unsupported))
}

/// Evaluates `m`, or its estimate when `use_estimate` is set. Binary-only
/// measures appear only for 2x2 input; others land in `unsupported`.
pub fn evaluate(
    m: &ConfusionMatrix,
    use_estimate: bool,
    selection: &MeasureSelection,
    matrix_id: &str,
) -> Result<MeasureReport> {
    let (source, target) = if use_estimate {
        (Source::Estimate, m.estimate()?)
    } else {
        (Source::Raw, m.clone())
    };
    let (values, unsupported) = compute_all(&target, &selection.measures())?;
    Ok(MeasureReport {
        matrix_id: matrix_id.to_string(),
        source,
        values,
        per_class: None,
        unsupported,
    })
}

/// Like [`evaluate`], plus a one-vs-rest report for every class. With
/// `use_estimate` each class matrix is collapsed first and then estimated.
pub fn evaluate_per_class(
    m: &ConfusionMatrix,
    use_estimate: bool,
    selection: &MeasureSelection,
    matrix_id: &str,
) -> Result<MeasureReport> {
    let mut report = evaluate(m, use_estimate, selection, matrix_id)?;
    let measures = selection.measures();
    let mut per_class = Vec::with_capacity(m.n());
    for j in 0..m.n() {
        let collapsed = one_vs_rest(m, j)?;
        let target = if use_estimate { collapsed.estimate()? } else { collapsed };
        let (values, _) = compute_all(&target, &measures)?;
        per_class.push(values);
    }
    report.per_class = Some(per_class);
    Ok(report)
}
