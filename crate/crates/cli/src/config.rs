use std::path::PathBuf;

use clap::ValueEnum;
use eve_core::MeasureSelection;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum InputFormat {
    /// Comma-separated matrix rows.
    #[default]
    Matrix,
    /// `true<TAB>predicted` label pairs.
    Labels,
    /// `true<TAB>w_1<TAB>...<TAB>w_n` membership rows.
    Soft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Conversion {
    #[default]
    None,
    /// Global pair counting into one 2x2 matrix.
    Pairs,
    /// One 2x2 matrix per class against the rest.
    Ovr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub input_format: InputFormat,
    /// Input has true classes on rows; flip to the column-is-truth layout.
    pub transpose: bool,
    pub smooth: bool,
    pub use_estimate: bool,
    pub convert: Conversion,
    pub measures: MeasureSelection,
    pub output_format: OutputFormat,
    pub echo_tolerance: bool,
    /// With `convert = pairs`, also report the uncorrected pair counts.
    pub paper_literal: bool,
}

impl RunConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        Self {
            input_path: input_path.into(),
            input_format: InputFormat::default(),
            transpose: false,
            smooth: false,
            use_estimate: false,
            convert: Conversion::default(),
            measures: MeasureSelection::All,
            output_format: OutputFormat::default(),
            echo_tolerance: false,
            paper_literal: false,
        }
    }
}
