use std::path::Path;

use serde::Serialize;

use crate::{CliError, EXIT_OK};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Everything a command produces: report files and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub files: Vec<OutputFile>,
    /// One-line summary for stderr.
    pub summary: String,
}

impl Outcome {
    pub fn new(summary: impl Into<String>) -> Self {
        Outcome {
            exit_code: EXIT_OK,
            files: Vec::new(),
            summary: summary.into(),
        }
    }

    pub fn with_exit(mut self, code: i32) -> Self {
        self.exit_code = code;
        self
    }

    pub fn file(mut self, name: impl Into<String>, contents: String) -> Self {
        self.files.push(OutputFile {
            name: name.into(),
            contents,
        });
        self
    }

    pub fn json<T: Serialize>(self, name: &str, value: &T) -> Result<Self, CliError> {
        let mut s =
            serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
        s.push('\n');
        Ok(self.file(name, s))
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.contents.as_str())
    }

    /// Writes the files into `out` (created if needed) or to stdout.
    pub fn write(&self, out: Option<&Path>) -> Result<(), CliError> {
        match out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for f in &self.files {
                    std::fs::write(dir.join(&f.name), &f.contents)?;
                }
            }
            None => {
                for (i, f) in self.files.iter().enumerate() {
                    if self.files.len() > 1 {
                        if i > 0 {
                            println!();
                        }
                        println!("# {}", f.name);
                    }
                    print!("{}", f.contents);
                }
            }
        }
        eprintln!("{}", self.summary);
        Ok(())
    }
}

/// CSV text from a header and rows of already formatted fields.
pub fn csv_table(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Config(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
