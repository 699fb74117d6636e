//! Netlists of ideal gates and deterministic delay elements.
//!
//! Gates are instantaneous: for `t >= 0` a gate output equals its function of
//! the inputs at `t`, and before 0 it holds its initial value. All wire and
//! switching delay is localized in delay elements, each of which relates its
//! input and output nets through a [`DelayModel`].

mod builtins;
mod conformance;
mod init;
mod parse;
mod sim;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::conditions::{DelayModel, ParamError};
use crate::stepfn::Signal;
use crate::time::Time;

pub use builtins::{
    builtin, c_element, default_inputs, delay_buffer, delay_feedback, delay_line_falling, not_feedback,
    not_gate_wire, transient_oscillator, UnknownBuiltin, BUILTINS,
};
pub use conformance::{check_trace_conformance, ConformanceError, ConformanceReport, ElementViolation};
pub use init::resolve_initial_values;
pub use parse::NetlistParseError;
pub use sim::{simulate, simulate_with_budget, SimError, DEFAULT_EVENT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Not,
    And,
    Or,
    Nand,
    Nor,
    Xor,
}

impl GateKind {
    pub fn eval(self, ins: &[bool]) -> bool {
        match self {
            GateKind::Not => !ins[0],
            GateKind::And => ins.iter().all(|&b| b),
            GateKind::Or => ins.iter().any(|&b| b),
            GateKind::Nand => !ins.iter().all(|&b| b),
            GateKind::Nor => !ins.iter().any(|&b| b),
            GateKind::Xor => ins.iter().fold(false, |a, &b| a ^ b),
        }
    }

    /// Three-valued evaluation: `None` is unknown. A result is known whenever
    /// every completion of the unknown inputs gives the same value.
    pub fn eval_kleene(self, ins: &[Option<bool>]) -> Option<bool> {
        let and = || {
            if ins.contains(&Some(false)) {
                Some(false)
            } else if ins.iter().all(|&b| b == Some(true)) {
                Some(true)
            } else {
                None
            }
        };
        let or = || {
            if ins.contains(&Some(true)) {
                Some(true)
            } else if ins.iter().all(|&b| b == Some(false)) {
                Some(false)
            } else {
                None
            }
        };
        match self {
            GateKind::Not => ins[0].map(|b| !b),
            GateKind::And => and(),
            GateKind::Or => or(),
            GateKind::Nand => and().map(|b| !b),
            GateKind::Nor => or().map(|b| !b),
            GateKind::Xor => ins.iter().try_fold(false, |a, &b| b.map(|b| a ^ b)),
        }
    }

    /// Apply the gate function to whole signals.
    pub fn eval_signals(self, ins: &[&Signal]) -> Signal {
        let mut acc = ins[0].clone();
        for s in &ins[1..] {
            acc = match self {
                GateKind::And | GateKind::Nand => acc.and(s),
                GateKind::Or | GateKind::Nor => acc.or(s),
                GateKind::Xor => acc.xor(s),
                GateKind::Not => unreachable!("NOT has one input"),
            };
        }
        match self {
            GateKind::Not | GateKind::Nand | GateKind::Nor => acc.not(),
            _ => acc,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Nand => "NAND",
            GateKind::Nor => "NOR",
            GateKind::Xor => "XOR",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = String;
    fn from_str(s: &str) -> Result<GateKind, String> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "NOT" => GateKind::Not,
            "AND" => GateKind::And,
            "OR" => GateKind::Or,
            "NAND" => GateKind::Nand,
            "NOR" => GateKind::Nor,
            "XOR" => GateKind::Xor,
            _ => return Err(format!("unknown gate `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Gate { kind: GateKind, out: String, ins: Vec<String> },
    Delay { out: String, input: String, model: DelayModel },
}

impl Element {
    pub fn out(&self) -> &str {
        match self {
            Element::Gate { out, .. } | Element::Delay { out, .. } => out,
        }
    }

    pub fn ins(&self) -> Vec<&str> {
        match self {
            Element::Gate { ins, .. } => ins.iter().map(String::as_str).collect(),
            Element::Delay { input, .. } => vec![input.as_str()],
        }
    }

    /// True when the output at `t` can depend on inputs at `t` itself.
    pub fn is_zero_lookback(&self) -> bool {
        match self {
            Element::Gate { .. } => true,
            Element::Delay { model, .. } => model_is_zero_lookback(model),
        }
    }
}

/// Models whose output at `t` may read the input at `t`. Nondeterministic
/// models never reach simulation and count as zero-lookback here.
pub fn model_is_zero_lookback(model: &DelayModel) -> bool {
    match *model {
        DelayModel::Fixed(d) => d.is_zero(),
        DelayModel::WindowAnd { m, d } | DelayModel::WindowOr { m, d } => m == d,
        DelayModel::Dbridc(p) => p.d_r == p.m_r || p.d_f == p.m_f,
        DelayModel::SdbridcPrime(_) => false,
        _ => true,
    }
}

impl fmt::Display for Element {
    /// One netlist statement.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Gate { kind, out, ins } => write!(f, "gate {kind} {out} {}", ins.join(" ")),
            Element::Delay { out, input, model } => write!(f, "delay {out} {input} {model}"),
        }
    }
}

/// A circuit: primary inputs, gates, delay elements, initial-value overrides
/// and the nets of interest.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub elements: Vec<Element>,
    pub inits: BTreeMap<String, bool>,
}

impl Netlist {
    pub fn new() -> Netlist {
        Netlist::default()
    }

    pub fn input(&mut self, net: &str) -> &mut Self {
        self.inputs.push(net.to_string());
        self
    }

    pub fn output(&mut self, net: &str) -> &mut Self {
        self.outputs.push(net.to_string());
        self
    }

    pub fn gate(&mut self, kind: GateKind, out: &str, ins: &[&str]) -> &mut Self {
        self.elements.push(Element::Gate {
            kind,
            out: out.to_string(),
            ins: ins.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn delay(&mut self, out: &str, input: &str, model: DelayModel) -> &mut Self {
        self.elements.push(Element::Delay { out: out.to_string(), input: input.to_string(), model });
        self
    }

    pub fn init(&mut self, net: &str, value: bool) -> &mut Self {
        self.inits.insert(net.to_string(), value);
        self
    }

    /// Every net mentioned anywhere, sorted.
    pub fn nets(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.inputs.iter().cloned().collect();
        for e in &self.elements {
            s.insert(e.out().to_string());
            s.extend(e.ins().into_iter().map(str::to_string));
        }
        s.extend(self.outputs.iter().cloned());
        s.extend(self.inits.keys().cloned());
        s
    }

    /// Index of the element driving each net.
    pub fn drivers(&self) -> BTreeMap<&str, usize> {
        self.elements.iter().enumerate().map(|(i, e)| (e.out(), i)).collect()
    }

    pub fn delay_model(&self, net: &str) -> Option<&DelayModel> {
        self.elements.iter().find_map(|e| match e {
            Element::Delay { out, model, .. } if out == net => Some(model),
            _ => None,
        })
    }

    /// Replace the model of the delay element driving `net`.
    pub fn set_delay_model(&mut self, net: &str, new: DelayModel) -> bool {
        for e in &mut self.elements {
            if let Element::Delay { out, model, .. } = e {
                if out == net {
                    *model = new;
                    return true;
                }
            }
        }
        false
    }

    /// Check drivers, arities, models, zero-lookback cycles and the
    /// initial-value overrides. Never panics.
    pub fn validate(&self) -> Result<(), Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let inputs: BTreeSet<&str> = self.inputs.iter().map(String::as_str).collect();
        if inputs.len() != self.inputs.len() {
            let mut seen = BTreeSet::new();
            for i in &self.inputs {
                if !seen.insert(i.as_str()) {
                    diags.push(Diagnostic::DuplicateInput(i.clone()));
                }
            }
        }
        let mut driven: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &self.elements {
            let out = e.out();
            *driven.entry(out).or_default() += 1;
            if inputs.contains(out) {
                diags.push(Diagnostic::DrivenInput(out.to_string()));
            }
            match e {
                Element::Gate { kind, out, ins } => {
                    let ok = match kind {
                        GateKind::Not => ins.len() == 1,
                        _ => !ins.is_empty(),
                    };
                    if !ok {
                        diags.push(Diagnostic::Arity { net: out.clone(), kind: *kind, got: ins.len() });
                    }
                }
                Element::Delay { out, model, .. } => {
                    if !model.is_deterministic() {
                        diags.push(Diagnostic::Nondeterministic { net: out.clone(), model: model.name() });
                    } else if let Err(error) = model.validate() {
                        diags.push(Diagnostic::Params { net: out.clone(), error });
                    }
                }
            }
        }
        for (net, n) in &driven {
            if *n > 1 {
                diags.push(Diagnostic::MultipleDrivers { net: net.to_string(), count: *n });
            }
        }
        for net in self.nets() {
            if !inputs.contains(net.as_str()) && !driven.contains_key(net.as_str()) {
                diags.push(Diagnostic::Undriven(net));
            }
        }
        if diags.is_empty() {
            if let Some(cycle) = self.zero_lookback_cycle() {
                diags.push(Diagnostic::ZeroLookbackCycle(cycle));
            }
        }
        if diags.is_empty() {
            if let Err(mut d) = init::resolve(self, &BTreeMap::new()) {
                d.retain(|d| !matches!(d, Diagnostic::InitUndetermined(_)));
                diags.extend(d);
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    /// A cycle through zero-lookback elements, as a closed path of nets.
    pub fn zero_lookback_cycle(&self) -> Option<Vec<String>> {
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for e in self.elements.iter().filter(|e| e.is_zero_lookback()) {
            for i in e.ins() {
                succ.entry(i).or_default().push(e.out());
            }
        }
        // 0 unvisited, 1 on stack, 2 done
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        let nodes: Vec<&str> = succ.keys().copied().collect();
        for &start in &nodes {
            if state.get(start).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut path: Vec<&str> = vec![start];
            let mut iters: Vec<usize> = vec![0];
            state.insert(start, 1);
            while let Some(&node) = path.last() {
                let k = *iters.last().expect("parallel stacks");
                let next = succ.get(node).and_then(|v| v.get(k)).copied();
                match next {
                    Some(n) => {
                        *iters.last_mut().expect("parallel stacks") += 1;
                        match state.get(n).copied().unwrap_or(0) {
                            0 => {
                                state.insert(n, 1);
                                path.push(n);
                                iters.push(0);
                            }
                            1 => {
                                let from = path.iter().position(|&p| p == n).expect("on stack");
                                let mut cyc: Vec<String> = path[from..].iter().map(|s| s.to_string()).collect();
                                cyc.push(n.to_string());
                                return Some(cyc);
                            }
                            _ => {}
                        }
                    }
                    None => {
                        state.insert(node, 2);
                        path.pop();
                        iters.pop();
                    }
                }
            }
        }
        None
    }

    /// Zero-lookback elements ordered so every element comes after the
    /// zero-lookback elements driving its inputs. Requires an acyclic
    /// zero-lookback graph.
    pub(crate) fn zero_lookback_order(&self) -> Vec<usize> {
        let zl: Vec<usize> = (0..self.elements.len()).filter(|&i| self.elements[i].is_zero_lookback()).collect();
        let zl_out: BTreeMap<&str, usize> = zl.iter().map(|&i| (self.elements[i].out(), i)).collect();
        let mut order = Vec::with_capacity(zl.len());
        let mut done: BTreeSet<usize> = BTreeSet::new();
        fn visit(
            i: usize,
            n: &Netlist,
            zl_out: &BTreeMap<&str, usize>,
            done: &mut BTreeSet<usize>,
            order: &mut Vec<usize>,
        ) {
            if !done.insert(i) {
                return;
            }
            for inp in n.elements[i].ins() {
                if let Some(&j) = zl_out.get(inp) {
                    visit(j, n, zl_out, done, order);
                }
            }
            order.push(i);
        }
        for &i in &zl {
            visit(i, self, &zl_out, &mut done, &mut order);
        }
        order
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("net `{net}` is driven by {count} elements")]
    MultipleDrivers { net: String, count: usize },
    #[error("net `{0}` is neither an input nor driven by any element")]
    Undriven(String),
    #[error("input `{0}` declared twice")]
    DuplicateInput(String),
    #[error("input `{0}` is also driven by an element")]
    DrivenInput(String),
    #[error("{kind} gate driving `{net}` has {got} inputs")]
    Arity { net: String, kind: GateKind, got: usize },
    #[error("delay `{net}`: model {model} is not deterministic and cannot be simulated")]
    Nondeterministic { net: String, model: &'static str },
    #[error("delay `{net}`: {error}")]
    Params { net: String, error: ParamError },
    #[error("zero-lookback cycle: {}", .0.join(" -> "))]
    ZeroLookbackCycle(Vec<String>),
    #[error("initial value of `{net}` conflicts: {detail}")]
    InitMismatch { net: String, detail: String },
    #[error("initial value of `{0}` is undetermined; add `init {0} <0|1>`")]
    InitUndetermined(String),
    #[error("input `{0}` has no signal")]
    MissingInput(String),
    #[error("signal `{0}` is not a primary input")]
    UnknownInput(String),
}

/// Named signals with the time up to which they were computed or recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveformSet {
    pub signals: BTreeMap<String, Signal>,
    pub horizon: Time,
}

impl WaveformSet {
    pub fn get(&self, net: &str) -> Option<&Signal> {
        self.signals.get(net)
    }
}

impl fmt::Display for Netlist {
    /// The text format accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.inputs {
            writeln!(f, "input {i}")?;
        }
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        for (n, v) in &self.inits {
            writeln!(f, "init {n} {}", u8::from(*v))?;
        }
        for o in &self.outputs {
            writeln!(f, "output {o}")?;
        }
        Ok(())
    }
}
