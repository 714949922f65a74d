use thiserror::Error;

/// Errors raised across path sampling, hull construction, solving and the
/// experiment driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} = {value} is outside the domain [{lo}, {hi}]")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// The boundary vertices of the majorant reach into the analysis window,
    /// so the global argmax may lie off the grid.
    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Parameter(_) | Error::Grid(_) | Error::Input(_) => 3,
            Error::WindowTooSmall(_) => 4,
            Error::InsufficientData(_) => 5,
            Error::Io(_) => 6,
            Error::OutOfDomain { .. } => 7,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Grid(_) => "grid",
            Error::Input(_) => "input",
            Error::OutOfDomain { .. } => "out_of_domain",
            Error::WindowTooSmall(_) => "window_too_small",
            Error::InsufficientData(_) => "insufficient_data",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }

    /// Single-line JSON object describing the error.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}
