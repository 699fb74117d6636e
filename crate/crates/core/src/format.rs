//! Signal literal text: `name: <0|1> @ t1, t2, ...`.
//!
//! The bit is the value on `(-inf, t1)` and every listed time is a toggle, so
//! `u: 0 @ 0, 5/2` is `chi[0, 5/2)`. Files hold one literal per line; `#`
//! starts a comment and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::stepfn::Signal;
use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message} (at `{token}`)")]
pub struct SignalParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

/// A named signal as written in a literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSignal {
    pub name: String,
    pub signal: Signal,
}

impl fmt::Display for NamedSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.signal)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '$'))
}

/// Byte offset of `sub` inside `whole`; both must come from the same buffer.
fn offset(whole: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - whole.as_ptr() as usize
}

struct LineCtx<'a> {
    text: &'a str,
    line: usize,
}

impl LineCtx<'_> {
    fn err(&self, at: &str, message: impl Into<String>) -> SignalParseError {
        let token = if at.trim().is_empty() { "<end of line>".to_string() } else { at.trim().to_string() };
        let col = if at.is_empty() { self.text.len() } else { offset(self.text, at.trim_start()) };
        SignalParseError { line: self.line, column: col + 1, token, message: message.into() }
    }
}

fn parse_line(text: &str, line: usize) -> Result<NamedSignal, SignalParseError> {
    let cx = LineCtx { text, line };
    let (name_part, rest) = text.split_once(':').ok_or_else(|| cx.err(text, "expected `name: <0|1> @ times`"))?;
    let name = name_part.trim();
    if !is_identifier(name) {
        return Err(cx.err(name_part, "invalid signal name"));
    }
    let (bit_part, times_part) = match rest.split_once('@') {
        Some((b, ts)) => (b, Some(ts)),
        None => (rest, None),
    };
    let initial = match bit_part.trim() {
        "0" => false,
        "1" => true,
        _ => return Err(cx.err(bit_part, "initial value must be 0 or 1")),
    };
    let mut toggles: Vec<Time> = Vec::new();
    if let Some(ts) = times_part {
        if ts.trim().is_empty() {
            return Err(cx.err(ts, "expected at least one toggle time after `@`"));
        }
        for tok in ts.split(',') {
            let v: Time = tok.trim().parse().map_err(|e| cx.err(tok, format!("bad time: {e}")))?;
            if v.is_negative() {
                return Err(cx.err(tok, "toggle times must be >= 0"));
            }
            if let Some(&prev) = toggles.last() {
                if v <= prev {
                    return Err(cx.err(tok, format!("toggle times must increase strictly (after {prev})")));
                }
            }
            toggles.push(v);
        }
    }
    let signal = Signal::from_toggles(initial, &toggles).expect("checked increasing and non-negative");
    Ok(NamedSignal { name: name.to_string(), signal })
}

/// Parse a single literal such as `x: 0 @ 1, 2`.
pub fn parse_signal(text: &str) -> Result<NamedSignal, SignalParseError> {
    let body = strip_comment(text);
    if body.trim().is_empty() {
        return Err(SignalParseError {
            line: 1,
            column: 1,
            token: "<empty>".into(),
            message: "empty signal literal".into(),
        });
    }
    parse_line(body, 1)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Parse a file of literals. Names must be unique.
pub fn parse_signals(text: &str) -> Result<BTreeMap<String, Signal>, SignalParseError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let ns = parse_line(body, i + 1)?;
        if out.contains_key(&ns.name) {
            let cx = LineCtx { text: body, line: i + 1 };
            let at = body.split_once(':').map_or(body, |(a, _)| a);
            return Err(cx.err(at, format!("signal `{}` defined twice", ns.name)));
        }
        out.insert(ns.name, ns.signal);
    }
    Ok(out)
}

/// One literal per line, in name order.
pub fn emit_signals(signals: &BTreeMap<String, Signal>) -> String {
    let mut s = String::new();
    for (name, sig) in signals {
        s.push_str(&format!("{name}: {sig}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::t;

    #[test]
    fn literal_denotes_indicator() {
        let ns = parse_signal("u: 0 @ 0, 5/2").unwrap();
        assert_eq!(ns.name, "u");
        assert_eq!(ns.signal, Signal::pulse(Time::ZERO, t(5, 2)).unwrap());
        assert_eq!(ns.to_string(), "u: 0 @ 0, 5/2");
        assert_eq!(parse_signal("c: 1").unwrap().signal, Signal::constant(true));
        assert_eq!(parse_signal("d: 1 @ 0.25 # tail").unwrap().signal.toggles(), vec![t(1, 4)]);
    }

    #[test]
    fn diagnostics_name_line_and_token() {
        let e = parse_signals("a: 0 @ 1\n\nb: 0 @ 2, 1\n").unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (3, "1"));
        assert_eq!(e.column, 11);
        let e = parse_signals("a: 2 @ 1").unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (1, 4, "2"));
        let e = parse_signals("a: 0 @ 1.5e2").unwrap_err();
        assert_eq!(e.token, "1.5e2");
        let e = parse_signals("a: 0 @ -1").unwrap_err();
        assert!(e.message.contains(">= 0"));
        let e = parse_signals("a: 0\na: 1").unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (2, "a"));
        assert!(parse_signals("a 0 @ 1").is_err());
        assert!(parse_signals("a: 0 @").is_err());
        assert!(parse_signals("1a: 0").is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = "# inputs\nu: 0 @ 0, 5/2\nv: 1 @ 1/3, 7/4, 9\n";
        let sigs = parse_signals(text).unwrap();
        let emitted = emit_signals(&sigs);
        assert_eq!(emitted, "u: 0 @ 0, 5/2\nv: 1 @ 1/3, 7/4, 9\n");
        assert_eq!(parse_signals(&emitted).unwrap(), sigs);
    }
}
