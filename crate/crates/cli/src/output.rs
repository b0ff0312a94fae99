use adesurf::SurfaceFamily;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Input(String),
    /// Exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<adesurf::Error> for CliError {
    fn from(e: adesurf::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub command: &'static str,
    pub family: Option<SurfaceFamily>,
    pub results: Vec<Value>,
    pub table: Option<Table>,
    pub passed: bool,
}

impl Output {
    pub fn new(command: &'static str, family: Option<SurfaceFamily>) -> Self {
        Output {
            command,
            family,
            results: Vec::new(),
            table: None,
            passed: true,
        }
    }

    /// Records a comparison of exact values.
    pub fn check(&mut self, name: impl Into<String>, got: Value, expected: Value, passed: bool) {
        self.passed &= passed;
        self.results.push(json!({
            "check": name.into(),
            "got": got,
            "expected": expected,
            "passed": passed,
        }));
    }

    pub fn document(&self) -> Value {
        json!({
            "family": self.family.map(|f| f.kind().to_string()),
            "n": self.family.map(|f| f.n()),
            "command": self.command,
            "results": self.results,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document())
                    .map_err(|e| CliError::Failed(format!("serialization failed: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| CliError::Input(format!("{} has no CSV form", self.command)))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Failed(format!("csv output failed: {e}"));
                w.write_record(&table.header).map_err(io)?;
                for row in &table.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::Failed(format!("csv output failed: {e}")))?;
                String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
            }
        }
    }
}
