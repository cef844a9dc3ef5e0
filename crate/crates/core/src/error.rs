use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(PathBuf),
    #[error("corrupt image: {0}")]
    CorruptImage(String),
    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("median kernel must be odd and positive, got {0}")]
    InvalidKernel(usize),
    #[error("plane has no pixels")]
    EmptyPlane,
    #[error("bin count must be at least 2, got {0}")]
    InvalidBinCount(usize),
    #[error("input vector is empty")]
    EmptyVector,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("plane {width}x{height} is smaller than one block ({need}px per side)")]
    PlaneTooSmall {
        width: usize,
        height: usize,
        need: usize,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("feature method mismatch: expected {expected}, got {got}")]
    MethodMismatch { expected: String, got: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("training data contains a single class")]
    SingleClass,
    #[error("invalid neighbor count k={k} for {n} stored samples")]
    InvalidK { k: usize, n: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file version {found} not supported (expected {expected})")]
    VersionMismatch { found: u8, expected: u8 },
    #[error("corrupt model file: {0}")]
    CorruptModel(String),
    #[error("class {label} has {count} samples; at least {need} required")]
    ClassTooSmall {
        label: String,
        count: usize,
        need: usize,
    },
    #[error("requested {size} samples per class but the smallest class has {available}")]
    SizeTooLarge { size: usize, available: usize },
    #[error("need at least {need} samples per class, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("cannot generate {requested} classes: color separation supports at most {cap}")]
    TooManyClasses { requested: usize, cap: usize },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("train fraction must lie in (0,1), got {0}")]
    InvalidFraction(f64),
}
