//! Whitespace-separated line formats of the intermediate files. Blank lines
//! and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use chc_core::selection::Rating;

/// A schema violation at a 1-based line.
#[derive(Debug, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

fn records(text: &str, width: usize) -> impl Iterator<Item = Result<(usize, Vec<&str>), LineError>> {
    text.lines().enumerate().filter_map(move |(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            return None;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        Some(if fields.len() == width {
            Ok((i + 1, fields))
        } else {
            Err(LineError {
                line: i + 1,
                message: format!("expected {width} fields, found {}", fields.len()),
            })
        })
    })
}

#[derive(Debug, PartialEq, Eq)]
pub struct Probe {
    pub line: usize,
    pub benchmark: String,
    pub repository: String,
    pub solver: String,
    pub solved: bool,
}

/// `<benchmark> <repository> <solver> <solved|unsolved>`
pub fn read_probes(text: &str) -> Result<Vec<Probe>, LineError> {
    records(text, 4)
        .map(|r| {
            let (line, f) = r?;
            let solved = match f[3] {
                "solved" => true,
                "unsolved" => false,
                other => {
                    return Err(LineError {
                        line,
                        message: format!("expected solved or unsolved, found {other}"),
                    })
                }
            };
            Ok(Probe {
                line,
                benchmark: f[0].into(),
                repository: f[1].into(),
                solver: f[2].into(),
                solved,
            })
        })
        .collect()
}

/// `<benchmark> <repository> <A|B|C>`
pub fn read_ratings(text: &str) -> Result<Vec<(String, String, Rating)>, LineError> {
    records(text, 3)
        .map(|r| {
            let (line, f) = r?;
            let rating = f[2].parse().map_err(|message| LineError { line, message })?;
            Ok((f[0].to_string(), f[1].to_string(), rating))
        })
        .collect()
}

/// `<repository> <quota>`
pub fn read_quotas(text: &str) -> Result<BTreeMap<String, usize>, LineError> {
    let mut out = BTreeMap::new();
    for r in records(text, 2) {
        let (line, f) = r?;
        let n: usize = f[1].parse().map_err(|_| LineError {
            line,
            message: format!("invalid quota {}", f[1]),
        })?;
        if out.insert(f[0].to_string(), n).is_some() {
            return Err(LineError {
                line,
                message: format!("repository {} listed twice", f[0]),
            });
        }
    }
    Ok(out)
}
