//! Event-driven simulation.
//!
//! Each delay element keeps a prediction: the solution of its model for the
//! input history seen so far, extended with the current input value forever.
//! The prediction stays exact up to the next input switch plus the element's
//! look-back, so the next event is the earliest of the pending input switches
//! and the predicted output switches. At every event the positive-look-back
//! delays are read from their predictions first, then the primary inputs,
//! then the zero-look-back elements in dependency order.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{init, Diagnostic, Element, Netlist, WaveformSet};
use crate::conditions::DelayModel;
use crate::solvers::solve;
use crate::stepfn::Signal;
use crate::time::Time;

pub const DEFAULT_EVENT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("invalid netlist:\n{}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("event budget of {budget} exceeded at t={time} (net `{net}` still switching)")]
    EventBudget { budget: usize, time: Time, net: String },
    #[error("horizon must be >= 0 (got {0})")]
    NegativeHorizon(Time),
}

fn join(d: &[Diagnostic]) -> String {
    d.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

struct DelayState {
    input: usize,
    out: usize,
    model: DelayModel,
    zero: bool,
    pred: Signal,
}

struct Nets {
    names: Vec<String>,
    init: Vec<bool>,
    value: Vec<bool>,
    toggles: Vec<Vec<Time>>,
}

impl Nets {
    fn set(&mut self, i: usize, v: bool, now: Time) {
        if self.value[i] != v {
            self.value[i] = v;
            self.toggles[i].push(now);
        }
    }

    fn switched_at(&self, i: usize, now: Time) -> bool {
        self.toggles[i].last() == Some(&now)
    }

    fn history(&self, i: usize) -> Signal {
        Signal::from_toggles(self.init[i], &self.toggles[i]).expect("toggles recorded in time order")
    }
}

fn predict(nets: &Nets, d: &DelayState) -> Signal {
    solve(&nets.history(d.input), &d.model).expect("model validated before simulation")
}

fn next_after(s: &Signal, now: Time) -> Option<Time> {
    s.breakpoint_times().find(|&b| b > now)
}

/// Simulate with the default event budget.
pub fn simulate(n: &Netlist, inputs: &BTreeMap<String, Signal>, horizon: Time) -> Result<WaveformSet, SimError> {
    simulate_with_budget(n, inputs, horizon, DEFAULT_EVENT_BUDGET)
}

/// Simulate on `(-inf, horizon]`. Every net's returned signal switches only
/// at times `<= horizon` and holds its value afterwards.
pub fn simulate_with_budget(
    n: &Netlist,
    inputs: &BTreeMap<String, Signal>,
    horizon: Time,
    budget: usize,
) -> Result<WaveformSet, SimError> {
    if horizon.is_negative() {
        return Err(SimError::NegativeHorizon(horizon));
    }
    n.validate().map_err(SimError::Invalid)?;
    let mut diags: Vec<Diagnostic> = n
        .inputs
        .iter()
        .filter(|i| !inputs.contains_key(*i))
        .map(|i| Diagnostic::MissingInput(i.clone()))
        .collect();
    diags.extend(inputs.keys().filter(|k| !n.inputs.contains(k)).map(|k| Diagnostic::UnknownInput(k.clone())));
    if !diags.is_empty() {
        return Err(SimError::Invalid(diags));
    }
    let input_values: BTreeMap<String, bool> = inputs.iter().map(|(k, s)| (k.clone(), s.initial())).collect();
    let init_values = init::resolve(n, &input_values).map_err(SimError::Invalid)?;

    let names: Vec<String> = init_values.keys().cloned().collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let init: Vec<bool> = init_values.values().copied().collect();
    let mut nets = Nets { value: init.clone(), toggles: vec![Vec::new(); names.len()], init, names: names.clone() };

    let input_sigs: Vec<(usize, &Signal)> = n.inputs.iter().map(|i| (index[i.as_str()], &inputs[i])).collect();
    let mut delays: Vec<DelayState> = Vec::new();
    let mut delay_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, e) in n.elements.iter().enumerate() {
        if let Element::Delay { out, input, model } = e {
            let d = DelayState {
                input: index[input.as_str()],
                out: index[out.as_str()],
                model: *model,
                zero: e.is_zero_lookback(),
                pred: Signal::constant(false),
            };
            delay_of.insert(k, delays.len());
            delays.push(d);
        }
    }
    for d in &mut delays {
        d.pred = predict(&nets, d);
    }
    let order = n.zero_lookback_order();

    let mut now = Time::ZERO;
    let mut events = 0usize;
    let mut trigger = String::new();
    loop {
        events += 1;
        if events > budget {
            return Err(SimError::EventBudget { budget, time: now, net: trigger });
        }
        for d in delays.iter().filter(|d| !d.zero) {
            nets.set(d.out, d.pred.value_at(now), now);
        }
        for &(i, s) in &input_sigs {
            nets.set(i, s.value_at(now), now);
        }
        for &k in &order {
            match &n.elements[k] {
                Element::Gate { kind, out, ins } => {
                    let vals: Vec<bool> = ins.iter().map(|i| nets.value[index[i.as_str()]]).collect();
                    nets.set(index[out.as_str()], kind.eval(&vals), now);
                }
                Element::Delay { .. } => {
                    let d = &mut delays[delay_of[&k]];
                    if nets.switched_at(d.input, now) {
                        d.pred = predict(&nets, d);
                    }
                    nets.set(d.out, d.pred.value_at(now), now);
                }
            }
        }
        for d in delays.iter_mut().filter(|d| !d.zero) {
            if nets.switched_at(d.input, now) {
                d.pred = predict(&nets, d);
            }
        }

        let mut next: Option<(Time, usize)> = None;
        let mut consider = |t: Option<Time>, net: usize| {
            if let Some(t) = t {
                if next.is_none_or(|(b, _)| t < b) {
                    next = Some((t, net));
                }
            }
        };
        for &(i, s) in &input_sigs {
            consider(next_after(s, now), i);
        }
        for d in &delays {
            consider(next_after(&d.pred, now), d.out);
        }
        match next {
            Some((t, net)) if t <= horizon => {
                now = t;
                trigger = nets.names[net].clone();
            }
            _ => break,
        }
    }

    let signals = (0..nets.names.len()).map(|i| (nets.names[i].clone(), nets.history(i))).collect();
    Ok(WaveformSet { signals, horizon })
}
