use std::io::Write;

use serde::Serialize;

use crate::config::{ExperimentConfig, Format, Tolerances};
use crate::CliError;

/// One asserted inequality.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub bound: f64,
    pub holds: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { name: name.into(), value, relation: "<=", bound, holds: value <= bound }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { name: name.into(), value, relation: ">=", bound, holds: value >= bound }
    }
}

/// Tabular view of a report for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    config: &'a ExperimentConfig,
    tolerances: &'a Tolerances,
    results: &'a R,
    checks: &'a [Check],
    passed: bool,
}

pub struct Report<R> {
    pub subcommand: &'static str,
    pub config: ExperimentConfig,
    pub results: R,
    pub checks: Vec<Check>,
    pub table: Table,
}

impl<R: Serialize> Report<R> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        let env = Envelope {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            subcommand: self.subcommand,
            config: &self.config,
            tolerances: &self.config.tolerances,
            results: &self.results,
            checks: &self.checks,
            passed: self.passed(),
        };
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&env).map_err(|e| CliError::Run(e.to_string()))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut out = Vec::new();
                let meta = |v: &dyn erased::Json| v.json();
                writeln!(out, "# {} {} {}", env.tool, env.version, env.subcommand).expect("in-memory write");
                writeln!(out, "# config {}", meta(&self.config)).expect("in-memory write");
                writeln!(out, "# tolerances {}", meta(&self.config.tolerances)).expect("in-memory write");
                for c in &self.checks {
                    writeln!(out, "# check {} {} {} {} {}", c.name, c.value, c.relation, c.bound, if c.holds { "holds" } else { "FAILS" })
                        .expect("in-memory write");
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.table.header).map_err(|e| CliError::Run(e.to_string()))?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(|e| CliError::Run(e.to_string()))?;
                }
                w.into_inner().map_err(|e| CliError::Run(e.to_string()))
            }
        }
    }
}

mod erased {
    pub trait Json {
        fn json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn json(&self) -> String {
            serde_json::to_string(self).unwrap_or_default()
        }
    }
}
