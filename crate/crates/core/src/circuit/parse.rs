//! Netlist text format, one statement per line:
//!
//! ```text
//! input u
//! gate NAND x u y z
//! delay z x fixed d=1
//! init x 1
//! output x
//! ```

use std::str::FromStr;

use thiserror::Error;

use super::{GateKind, Netlist};
use crate::conditions::DelayModel;
use crate::format::is_identifier;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message} (at `{token}`)")]
pub struct NetlistParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Tok { text: &line[s..i], col: s + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], col: s + 1 });
    }
    out
}

impl FromStr for Netlist {
    type Err = NetlistParseError;

    fn from_str(text: &str) -> Result<Netlist, NetlistParseError> {
        let mut n = Netlist::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(a, _)| a);
            let toks = tokens(line);
            let Some(head) = toks.first() else { continue };
            let err = |tok: Option<&Tok>, message: String| NetlistParseError {
                line: i + 1,
                column: tok.map_or(line.trim_end().len() + 1, |t| t.col),
                token: tok.map_or_else(|| "<end of line>".to_string(), |t| t.text.to_string()),
                message,
            };
            let net = |k: usize| -> Result<String, NetlistParseError> {
                let t = toks.get(k).ok_or_else(|| err(None, "expected a net name".into()))?;
                if is_identifier(t.text) {
                    Ok(t.text.to_string())
                } else {
                    Err(err(Some(t), "invalid net name".into()))
                }
            };
            let exact = |k: usize| -> Result<(), NetlistParseError> {
                match toks.get(k) {
                    Some(t) => Err(err(Some(t), "unexpected token".into())),
                    None => Ok(()),
                }
            };
            match head.text {
                "input" => {
                    let name = net(1)?;
                    exact(2)?;
                    n.input(&name);
                }
                "output" => {
                    let name = net(1)?;
                    exact(2)?;
                    n.output(&name);
                }
                "init" => {
                    let name = net(1)?;
                    let v = match toks.get(2).map(|t| t.text) {
                        Some("0") => false,
                        Some("1") => true,
                        _ => return Err(err(toks.get(2), "initial value must be 0 or 1".into())),
                    };
                    exact(3)?;
                    if n.inits.insert(name.clone(), v).is_some() {
                        return Err(err(toks.get(1), format!("`init {name}` given twice")));
                    }
                }
                "gate" => {
                    let kt = toks.get(1).ok_or_else(|| err(None, "expected a gate kind".into()))?;
                    let kind: GateKind = kt.text.parse().map_err(|m| err(Some(kt), m))?;
                    let out = net(2)?;
                    let ins = (3..toks.len()).map(net).collect::<Result<Vec<_>, _>>()?;
                    if ins.is_empty() {
                        return Err(err(None, "gate needs at least one input".into()));
                    }
                    let refs: Vec<&str> = ins.iter().map(String::as_str).collect();
                    n.gate(kind, &out, &refs);
                }
                "delay" => {
                    let out = net(1)?;
                    let input = net(2)?;
                    let mt = toks.get(3).ok_or_else(|| err(None, "expected a delay model".into()))?;
                    let model_text = &line[mt.col - 1..];
                    let model: DelayModel = model_text.parse().map_err(|e| err(Some(mt), format!("{e}")))?;
                    n.delay(&out, &input, model);
                }
                _ => return Err(err(Some(head), "expected input, output, init, gate or delay".into())),
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::Time;

    const LOOP: &str = "\
# NOT gate fed back through two delays
gate NOT x v
delay y x fixed d=1
delay v y sdbridc d=1/2   # symmetric
init x 0
output x
";

    #[test]
    fn parses_and_round_trips() {
        let n: Netlist = LOOP.parse().unwrap();
        assert_eq!(n.elements.len(), 3);
        assert_eq!(n.delay_model("v"), Some(&DelayModel::SdbridcPrime(crate::time::t(1, 2))));
        assert_eq!(n.inits.get("x"), Some(&false));
        let again: Netlist = n.to_string().parse().unwrap();
        assert_eq!(again, n);
        assert!(n.validate().is_ok());
        assert_eq!(n.delay_model("y"), Some(&DelayModel::Fixed(Time::ONE)));
    }

    #[test]
    fn errors_carry_line_and_token() {
        let e = "input u\ngate FOO x u\n".parse::<Netlist>().unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 6, "FOO"));
        let e = "delay x u fixed d=1/0".parse::<Netlist>().unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (1, 11, "fixed"));
        let e = "init x 2".parse::<Netlist>().unwrap_err();
        assert_eq!(e.token, "2");
        let e = "input u v".parse::<Netlist>().unwrap_err();
        assert_eq!(e.token, "v");
        let e = "wire a b".parse::<Netlist>().unwrap_err();
        assert_eq!(e.token, "wire");
        let e = "gate AND y".parse::<Netlist>().unwrap_err();
        assert_eq!(e.token, "<end of line>");
        let e = "init x 1\ninit x 0".parse::<Netlist>().unwrap_err();
        assert_eq!(e.line, 2);
    }
}
