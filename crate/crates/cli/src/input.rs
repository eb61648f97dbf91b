//! Text formats: comma-separated matrices and tab-separated label files.
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use eve_core::ConfusionMatrix;

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_real(field: &str, line: usize, column: usize) -> Result<f64> {
    let field = field.trim();
    let value: f64 = field
        .parse()
        .map_err(|_| CliError::parse(line, Some(column), format!("'{field}' is not a number")))?;
    if !value.is_finite() {
        return Err(CliError::parse(line, Some(column), format!("'{field}' is not finite")));
    }
    Ok(value)
}

fn parse_label(field: &str, line: usize, column: usize) -> Result<usize> {
    let field = field.trim();
    field
        .parse()
        .map_err(|_| CliError::parse(line, Some(column), format!("'{field}' is not a class label")))
}

/// Parses comma-separated rows. Entries may be decimal. Rows must all have
/// the same length; squareness and sign are checked by [`ConfusionMatrix`].
pub fn parse_matrix_csv(text: &str) -> Result<ConfusionMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, content) in data_lines(text) {
        let row = content
            .split(',')
            .enumerate()
            .map(|(k, f)| parse_real(f, line, k + 1))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::parse(
                    line,
                    None,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::parse(1, None, "no matrix rows found"));
    }
    if rows.len() != rows[0].len() {
        return Err(eve_core::Error::NotSquare { rows: rows.len(), cols: rows[0].len() }.into());
    }
    Ok(ConfusionMatrix::from_dense(&rows)?)
}

/// Writes one comma-separated line per row using the shortest exact
/// decimal form, so [`parse_matrix_csv`] reads it back unchanged.
pub fn render_matrix_csv(m: &ConfusionMatrix) -> String {
    let mut out = String::new();
    for row in m.to_rows() {
        let fields: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Parses a label file. Hard labels: `true<TAB>predicted` per line. Soft
/// labels: `true<TAB>w_1<TAB>...<TAB>w_n`, one membership weight per class.
pub fn parse_labels(text: &str, soft: bool) -> Result<ConfusionMatrix> {
    let mut truth = Vec::new();
    let mut predicted = Vec::new();
    let mut memberships: Vec<Vec<f64>> = Vec::new();
    let mut arity = None;
    for (line, content) in data_lines(text) {
        let fields: Vec<&str> = content.split('\t').collect();
        let expected = *arity.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(CliError::parse(
                line,
                None,
                format!("{} fields, expected {expected} as on the first line", fields.len()),
            ));
        }
        if soft {
            if fields.len() < 3 {
                return Err(CliError::parse(line, None, "soft labels need a class and at least 2 weights"));
            }
            truth.push(parse_label(fields[0], line, 1)?);
            let weights = fields[1..]
                .iter()
                .enumerate()
                .map(|(k, f)| parse_real(f, line, k + 2))
                .collect::<Result<Vec<f64>>>()?;
            memberships.push(weights);
        } else {
            if fields.len() != 2 {
                return Err(CliError::parse(line, None, "hard labels need exactly 2 fields"));
            }
            truth.push(parse_label(fields[0], line, 1)?);
            predicted.push(parse_label(fields[1], line, 2)?);
        }
    }
    if truth.is_empty() {
        return Err(CliError::parse(1, None, "no label lines found"));
    }
    let m = if soft {
        ConfusionMatrix::from_soft(&truth, &memberships)?
    } else {
        ConfusionMatrix::from_labels(&truth, &predicted, None)?
    };
    Ok(m)
}
