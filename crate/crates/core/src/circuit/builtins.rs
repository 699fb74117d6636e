//! Ready-made circuits, each with parameterizable delay models.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{GateKind, Netlist};
use crate::conditions::DelayModel;
use crate::stepfn::Signal;
use crate::time::Time;

pub const BUILTINS: [&str; 7] = [
    "delay-buffer",
    "delay-feedback",
    "not-gate-wire",
    "not-feedback",
    "delay-line-falling",
    "transient-oscillator",
    "c-element",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown builtin `{0}` (known: {})", BUILTINS.join(", "))]
pub struct UnknownBuiltin(pub String);

/// `x = D(u)`.
pub fn delay_buffer(model: DelayModel) -> Netlist {
    let mut n = Netlist::new();
    n.input("u").delay("x", "u", model).output("x");
    n
}

/// `x = D(x)`: a delay whose output is wired back to its input.
pub fn delay_feedback(model: DelayModel, initial: bool) -> Netlist {
    let mut n = Netlist::new();
    n.delay("x", "x", model).init("x", initial).output("x");
    n
}

/// A NOT gate between two wires: `v = D1(u)`, `x = not v`, `y = D2(x)`.
pub fn not_gate_wire(d1: DelayModel, d2: DelayModel) -> Netlist {
    let mut n = Netlist::new();
    n.input("u")
        .delay("v", "u", d1)
        .gate(GateKind::Not, "x", &["v"])
        .delay("y", "x", d2)
        .output("x")
        .output("y");
    n
}

/// A NOT gate fed back through two delays: `x = not v`, `y = D1(x)`,
/// `v = D2(y)`, with `x(0-0) = 0`.
pub fn not_feedback(d1: DelayModel, d2: DelayModel) -> Netlist {
    let mut n = Netlist::new();
    n.gate(GateKind::Not, "x", &["v"])
        .delay("y", "x", d1)
        .delay("v", "y", d2)
        .init("x", false)
        .output("x")
        .output("y")
        .output("v");
    n
}

/// The falling-transition delay line: a chain of NOT stages with two NAND
/// gates re-reading `x1`. Statically `w = u`. `models[i]` drives `x{i+1}` for
/// `i < 5` and `models[5]` drives `w`.
pub fn delay_line_falling(models: [DelayModel; 6]) -> Netlist {
    let mut n = Netlist::new();
    n.input("u")
        .gate(GateKind::Not, "y1", &["u"])
        .delay("x1", "y1", models[0])
        .gate(GateKind::Not, "y2", &["x1"])
        .delay("x2", "y2", models[1])
        .gate(GateKind::Not, "y3", &["x2"])
        .delay("x3", "y3", models[2])
        .gate(GateKind::Nand, "y4", &["x3", "x1"])
        .delay("x4", "y4", models[3])
        .gate(GateKind::Not, "y5", &["x4"])
        .delay("x5", "y5", models[4])
        .gate(GateKind::Nand, "z", &["x5", "x1"])
        .delay("w", "z", models[5])
        .output("w");
    n
}

/// `v = not u`, `y = D(v)`, `x = NAND(u, y, z)`, `z = D'(x)` with
/// `v(0-0) = x(0-0) = 1`. For `u = 1` and fixed delays the output oscillates
/// with period `2d'` until `y` falls at `d`.
pub fn transient_oscillator(d: DelayModel, d_prime: DelayModel) -> Netlist {
    let mut n = Netlist::new();
    n.input("u")
        .gate(GateKind::Not, "v", &["u"])
        .delay("y", "v", d)
        .gate(GateKind::Nand, "x", &["u", "y", "z"])
        .delay("z", "x", d_prime)
        .init("v", true)
        .init("x", true)
        .output("x");
    n
}

/// Muller C element with localized delays: three AND gates sharing
/// `and_model`, an OR gate, and `or_model` on the fed-back output `x`.
pub fn c_element(and_model: DelayModel, or_model: DelayModel) -> Netlist {
    let mut n = Netlist::new();
    n.input("u")
        .input("v")
        .gate(GateKind::And, "ystar", &["u", "v"])
        .gate(GateKind::And, "zstar", &["u", "x"])
        .gate(GateKind::And, "wstar", &["v", "x"])
        .delay("y", "ystar", and_model)
        .delay("z", "zstar", and_model)
        .delay("w", "wstar", and_model)
        .gate(GateKind::Or, "xstar", &["y", "z", "w"])
        .delay("x", "xstar", or_model)
        .output("x");
    n
}

/// The named circuit with unit fixed delays, except the transient oscillator,
/// which uses `d = 3` and `d' = 1`.
pub fn builtin(name: &str) -> Result<Netlist, UnknownBuiltin> {
    let unit = DelayModel::Fixed(Time::ONE);
    Ok(match name {
        "delay-buffer" => delay_buffer(unit),
        "delay-feedback" => delay_feedback(unit, false),
        "not-gate-wire" => not_gate_wire(unit, unit),
        "not-feedback" => not_feedback(unit, unit),
        "delay-line-falling" => delay_line_falling([unit; 6]),
        "transient-oscillator" => transient_oscillator(DelayModel::Fixed(Time::int(3)), unit),
        "c-element" => c_element(unit, unit),
        _ => return Err(UnknownBuiltin(name.to_string())),
    })
}

/// Input signals that exercise each builtin.
pub fn default_inputs(name: &str) -> Result<BTreeMap<String, Signal>, UnknownBuiltin> {
    let sig = |init: bool, ts: &[i128]| {
        let ts: Vec<Time> = ts.iter().map(|&k| Time::int(k)).collect();
        Signal::from_toggles(init, &ts).expect("increasing")
    };
    let one = |s: Signal| BTreeMap::from([("u".to_string(), s)]);
    Ok(match name {
        "delay-buffer" | "not-gate-wire" => one(sig(false, &[1, 4])),
        "delay-feedback" | "not-feedback" => BTreeMap::new(),
        "delay-line-falling" => one(sig(true, &[1, 5])),
        "transient-oscillator" => one(Signal::constant(true)),
        "c-element" => {
            BTreeMap::from([("u".to_string(), sig(false, &[1, 6])), ("v".to_string(), sig(false, &[2, 5]))])
        }
        _ => return Err(UnknownBuiltin(name.to_string())),
    })
}
