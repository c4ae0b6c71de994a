//! Specification files.
//!
//! ```text
//! # comments run to the end of the line
//! [INPUT_VARS]
//! r1 r2
//! [OUTPUT_VARS]
//! g1, g2
//! [ASSUME]
//! G F r1
//! [GUARANTEE]
//! G (r1 -> F g1)
//! ```
//!
//! Variable sections take names separated by whitespace or commas; the
//! formula sections take one formula per line.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub input_vars: Vec<String>,
    pub output_vars: Vec<String>,
    pub assume: Vec<Item>,
    pub guarantee: Vec<Item>,
}

/// A formula line with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub line: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Inputs,
    Outputs,
    Assume,
    Guarantee,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
        let mut spec = SpecFile::default();
        let mut section = None;
        let err = |line: usize, message: String| Err(SpecError { line, message });
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if content.starts_with('[') {
                section = Some(match content {
                    "[INPUT_VARS]" => Section::Inputs,
                    "[OUTPUT_VARS]" => Section::Outputs,
                    "[ASSUME]" => Section::Assume,
                    "[GUARANTEE]" => Section::Guarantee,
                    other => return err(line, format!("unknown section {other}")),
                });
                continue;
            }
            match section {
                None => return err(line, "content before the first section".into()),
                Some(Section::Inputs | Section::Outputs) => {
                    for name in content
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                    {
                        if !is_identifier(name) {
                            return err(line, format!("`{name}` is not a variable name"));
                        }
                        if spec.input_vars.iter().chain(&spec.output_vars).any(|v| v == name) {
                            return err(line, format!("variable `{name}` declared twice"));
                        }
                        let list = if section == Some(Section::Inputs) {
                            &mut spec.input_vars
                        } else {
                            &mut spec.output_vars
                        };
                        list.push(name.to_string());
                    }
                }
                Some(s) => {
                    let item = Item {
                        line,
                        text: content.to_string(),
                    };
                    if s == Section::Assume {
                        spec.assume.push(item);
                    } else {
                        spec.guarantee.push(item);
                    }
                }
            }
        }
        if spec.input_vars.is_empty() && spec.output_vars.is_empty() {
            return err(0, "no variables declared".into());
        }
        if spec.guarantee.is_empty() {
            return err(0, "no guarantees".into());
        }
        Ok(spec)
    }

    /// Inputs first, then outputs.
    pub fn variables(&self) -> Vec<String> {
        self.input_vars.iter().chain(&self.output_vars).cloned().collect()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(
            s,
            "true" | "false" | "X" | "F" | "G" | "Y" | "Z" | "U" | "W" | "S" | "T" | "B"
        )
}
