//! Reading the text formats from disk. Each reader attaches the path to the
//! parse error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use trunkkit_core::arrangement::{parse_arrangement, parse_configuration, Arrangement, PieceConfiguration};
use trunkkit_core::bounds::{parse_certified, CertifiedDatum};
use trunkkit_core::morse::{parse_morse, MorsePresentation};
use trunkkit_core::pattern::{parse_tangle, CylinderTangle};

/// The certified data shipped with the crate.
pub const SHIPPED_CERTIFIED: &str = include_str!("../data/certified.kv");

#[derive(Debug)]
pub enum ReadError {
    Io { path: PathBuf, source: std::io::Error },
    Parse { path: PathBuf, message: String },
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            ReadError::Parse { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl std::error::Error for ReadError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ReadError::Io { source, .. } => Some(source),
            ReadError::Parse { .. } => None,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, ReadError> {
    fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T, E: fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, ReadError> {
    r.map_err(|e| ReadError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Blanks `#` comments while keeping byte offsets.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|line| match line.find('#') {
            Some(i) => format!("{}{}", &line[..i], " ".repeat(line.len() - i)),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn read_presentation(path: &Path) -> Result<MorsePresentation, ReadError> {
    parsed(path, parse_morse(&read_text(path)?))
}

pub fn read_tangle(path: &Path) -> Result<CylinderTangle, ReadError> {
    parsed(path, parse_tangle(&read_text(path)?))
}

/// `.arr` files; `#` comments are allowed.
pub fn read_arrangement(path: &Path) -> Result<Arrangement, ReadError> {
    parsed(path, parse_arrangement(&strip_comments(&read_text(path)?)))
}

pub fn read_configuration(path: &Path) -> Result<PieceConfiguration, ReadError> {
    parsed(path, parse_configuration(&strip_comments(&read_text(path)?)))
}

/// The shipped records when `path` is `None`.
pub fn read_certified(path: Option<&Path>) -> Result<Vec<CertifiedDatum>, ReadError> {
    match path {
        Some(p) => parsed(p, parse_certified(&read_text(p)?)),
        None => parsed(Path::new("<shipped certified.kv>"), parse_certified(SHIPPED_CERTIFIED)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_keep_offsets() {
        assert_eq!(strip_comments("{()} # two\n{"), "{()}      \n{");
    }

    #[test]
    fn shipped_data_parses() {
        let data = read_certified(None).unwrap();
        assert!(data.iter().any(|d| d.name == "trefoil" && d.companion_trunk == 4));
        for d in &data {
            d.validate().unwrap();
        }
    }

    #[test]
    fn missing_file_reports_path() {
        let e = read_presentation(Path::new("/nonexistent/x.morse")).unwrap_err();
        assert!(e.to_string().starts_with("/nonexistent/x.morse: "));
    }
}
