//! Value change dump export and import.
//!
//! Times are written as integer ticks of `1/L` time units, where `L` is the
//! least common multiple of every switch-time denominator and the horizon's.
//! `L` is recorded in a `$comment` so import recovers exact rationals; the
//! `$timescale` line is nominal. The `$dumpvars` block at `#0` holds the values
//! at `0-0`, switches at 0 follow under a second `#0`, and the last timestamp
//! is the horizon.

use std::collections::BTreeMap;
use std::io::{self, BufRead};

use thiserror::Error;
use ::vcd::{Command, IdCode, SimulationCommand, TimescaleUnit, Value};

use crate::circuit::WaveformSet;
use crate::stepfn::Signal;
use crate::time::Time;

const TICKS_KEY: &str = "ticks_per_unit=";

#[derive(Debug, Error)]
pub enum VcdError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Format(String),
}

fn fmt_err<T>(msg: impl Into<String>) -> Result<T, VcdError> {
    Err(VcdError::Format(msg.into()))
}

/// Write `w` as VCD.
pub fn export_vcd(w: &WaveformSet) -> Vec<u8> {
    let mut out = Vec::new();
    write_vcd(w, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn write_vcd(w: &WaveformSet, sink: impl io::Write) -> io::Result<()> {
    let all: Vec<Time> = w.signals.values().flat_map(|s| s.toggles()).chain([w.horizon]).collect();
    let scale = Time::common_denominator(&all);
    let tick = |t: Time| -> u64 {
        let k = t.scaled(scale).expect("scale is a common denominator");
        u64::try_from(k).expect("signal switches are at times >= 0")
    };
    let mut wr = ::vcd::Writer::new(sink);
    wr.comment(&format!("delaycalc {TICKS_KEY}{scale}: one tick is 1/{scale} time unit"))?;
    wr.timescale(1, TimescaleUnit::S)?;
    wr.add_module("top")?;
    let mut ids: Vec<(IdCode, &Signal)> = Vec::new();
    for (name, sig) in &w.signals {
        ids.push((wr.add_wire(1, name)?, sig));
    }
    wr.upscope()?;
    wr.enddefinitions()?;
    wr.timestamp(0)?;
    wr.begin(SimulationCommand::Dumpvars)?;
    for &(id, sig) in &ids {
        wr.change_scalar(id, sig.initial())?;
    }
    wr.end()?;
    let mut events: BTreeMap<u64, Vec<(IdCode, bool)>> = BTreeMap::new();
    for &(id, sig) in &ids {
        let mut v = sig.initial();
        for t in sig.toggles() {
            v = !v;
            events.entry(tick(t)).or_default().push((id, v));
        }
    }
    let mut last = 0;
    for (k, changes) in &events {
        wr.timestamp(*k)?;
        for &(id, v) in changes {
            wr.change_scalar(id, v)?;
        }
        last = *k;
    }
    let h = tick(w.horizon);
    if h > last {
        wr.timestamp(h)?;
    }
    wr.flush()
}

struct Var {
    names: Vec<String>,
    initial: Option<bool>,
    value: bool,
    toggles: Vec<u64>,
}

/// Read a single-bit VCD back into exact waveforms.
pub fn import_vcd(reader: impl BufRead) -> Result<WaveformSet, VcdError> {
    let mut scale: i128 = 1;
    let mut vars: BTreeMap<IdCode, Var> = BTreeMap::new();
    let mut now: u64 = 0;
    let mut seen_time = false;
    for cmd in ::vcd::Parser::new(reader) {
        match cmd? {
            Command::Comment(c) => {
                if let Some(pos) = c.find(TICKS_KEY) {
                    let digits: String =
                        c[pos + TICKS_KEY.len()..].chars().take_while(|ch| ch.is_ascii_digit()).collect();
                    scale = match digits.parse::<i128>() {
                        Ok(v) if v > 0 => v,
                        _ => return fmt_err(format!("bad tick scale in comment `{}`", c.trim())),
                    };
                }
            }
            Command::VarDef(_, width, id, name, _) => {
                if width != 1 {
                    return fmt_err(format!("`{name}` has width {width}; only scalar variables are supported"));
                }
                vars.entry(id)
                    .or_insert_with(|| Var { names: Vec::new(), initial: None, value: false, toggles: Vec::new() })
                    .names
                    .push(name);
            }
            Command::Timestamp(t) => {
                if seen_time && t < now {
                    return fmt_err(format!("timestamp #{t} goes backwards (after #{now})"));
                }
                now = t;
                seen_time = true;
            }
            Command::ChangeScalar(id, v) => {
                let Some(var) = vars.get_mut(&id) else {
                    return fmt_err(format!("change for undeclared id `{id}`"));
                };
                let v = match v {
                    Value::V0 => false,
                    Value::V1 => true,
                    other => return fmt_err(format!("value {other} at #{now} for `{}`", var.names[0])),
                };
                match var.initial {
                    None if now == 0 => {
                        var.initial = Some(v);
                        var.value = v;
                    }
                    None => return fmt_err(format!("`{}` has no value at #0", var.names[0])),
                    Some(_) if v == var.value => {}
                    Some(_) => {
                        var.value = v;
                        if var.toggles.last() == Some(&now) {
                            var.toggles.pop();
                        } else {
                            var.toggles.push(now);
                        }
                    }
                }
            }
            Command::ChangeVector(id, _) | Command::ChangeReal(id, _) | Command::ChangeString(id, _) => {
                return fmt_err(format!("non-scalar change for id `{id}`"));
            }
            _ => {}
        }
    }
    let mut signals = BTreeMap::new();
    for var in vars.into_values() {
        let Some(init) = var.initial else {
            return fmt_err(format!("`{}` has no value at #0", var.names[0]));
        };
        let ts: Vec<Time> = var.toggles.iter().map(|&k| Time::new(i128::from(k), scale)).collect();
        let sig = Signal::from_toggles(init, &ts).expect("timestamps are non-decreasing");
        for name in var.names {
            if signals.insert(name.clone(), sig.clone()).is_some() {
                return fmt_err(format!("`{name}` declared twice"));
            }
        }
    }
    Ok(WaveformSet { signals, horizon: Time::new(i128::from(now), scale) })
}
