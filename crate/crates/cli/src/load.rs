//! Reading command arguments and files, and the error type that carries an
//! exit code.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use delaycalc::format::{parse_signal, parse_signals};
use delaycalc::{DelayModel, Netlist, Signal, Time};

pub const VIOLATION: u8 = 1;
pub const INVALID: u8 = 2;
pub const BUDGET: u8 = 3;
pub const EXHAUSTED: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub fn invalid(message: impl Display) -> Failure {
    Failure { code: INVALID, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub fn time(text: &str) -> Result<Time, Failure> {
    text.parse().map_err(|e| invalid(format!("bad time `{text}`: {e}")))
}

pub fn model(text: &str) -> Result<DelayModel, Failure> {
    text.parse().map_err(|e| invalid(format!("bad model `{text}`: {e}")))
}

/// Split `name=rest` at the first `=`.
pub fn assignment(text: &str) -> Result<(String, String), Failure> {
    match text.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(invalid(format!("expected NET=VALUE, got `{text}`"))),
    }
}

pub fn signals_file(path: &Path) -> Result<BTreeMap<String, Signal>, Failure> {
    parse_signals(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// A signal given either as a path to a one-line signal file or as a literal.
pub fn signal(arg: &str) -> Result<(String, Signal), Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let mut all = signals_file(path)?;
        if all.len() != 1 {
            return Err(invalid(format!("{}: expected exactly one signal, found {}", path.display(), all.len())));
        }
        return Ok(all.pop_first().expect("one entry"));
    }
    let named = parse_signal(arg).map_err(|e| invalid(format!("`{arg}` is not a readable file or a signal literal: {e}")))?;
    Ok((named.name, named.signal))
}

pub fn netlist(path: &Path) -> Result<Netlist, Failure> {
    read(path)?.parse().map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub fn emit(output: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    let result = match output {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(bytes).map_err(|e| e.to_string()),
    };
    result.map_err(invalid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_or_file() {
        let (name, s) = signal("x: 0 @ 1, 5/2").unwrap();
        assert_eq!(name, "x");
        assert_eq!(s.toggles(), vec![Time::ONE, Time::new(5, 2)]);
        let err = signal("x: 0 @ 2, 1").unwrap_err();
        assert_eq!(err.code, INVALID);
        assert!(err.message.contains("column"), "{}", err.message);
    }

    #[test]
    fn assignments_split_at_the_first_equals() {
        assert_eq!(assignment("y=bdc mr=1").unwrap(), ("y".into(), "bdc mr=1".into()));
        assert!(assignment("=1").is_err());
        assert!(assignment("x").is_err());
    }
}
