//! Checking recorded waveforms against a netlist, optionally replacing delay
//! models with nondeterministic ones.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Element, Netlist, WaveformSet};
use crate::conditions::{check_membership, Clause, DelayModel, ParamError, Violation};
use crate::stepfn::{Bound, Interval, StepFunction};
use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConformanceError {
    #[error("no signal for net `{0}`")]
    MissingNet(String),
    #[error("`{0}` is not driven by a delay element")]
    NotADelay(String),
    #[error("delay `{net}`: {error}")]
    Params { net: String, error: ParamError },
}

/// The first violation of one element, named by its output net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementViolation {
    pub net: String,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformanceReport {
    pub ok: bool,
    /// At most one entry per element, earliest first.
    pub violations: Vec<ElementViolation>,
}

fn within(v: &Violation, horizon: Time) -> bool {
    match v.time {
        None => true,
        Some(t) => t < horizon || (t == horizon && v.attained),
    }
}

fn first_in(set: &StepFunction, clause: Clause) -> Option<Violation> {
    set.support_start().map(|b| match b {
        Bound::Unbounded => Violation { clause, time: None, attained: false },
        Bound::Closed(t) => Violation { clause, time: Some(t), attained: true },
        Bound::Open(t) => Violation { clause, time: Some(t), attained: false },
    })
}

/// Every gate equation must hold on `[0, horizon]`, and every delay pair must
/// belong to its model (the entry in `nondet` when present) up to the
/// horizon. Violations strictly after the horizon are not reported.
pub fn check_trace_conformance(
    n: &Netlist,
    nondet: &BTreeMap<String, DelayModel>,
    w: &WaveformSet,
) -> Result<ConformanceReport, ConformanceError> {
    for net in nondet.keys() {
        if n.delay_model(net).is_none() {
            return Err(ConformanceError::NotADelay(net.clone()));
        }
    }
    let get = |net: &str| w.signals.get(net).ok_or_else(|| ConformanceError::MissingNet(net.to_string()));
    let after_zero = StepFunction::indicator(&[Interval::closed(Time::ZERO, w.horizon)]);
    let mut violations = Vec::new();
    for e in &n.elements {
        let found = match e {
            Element::Gate { kind, out, ins } => {
                let y = get(out)?;
                let xs = ins.iter().map(|i| get(i)).collect::<Result<Vec<_>, _>>()?;
                let f = kind.eval_signals(&xs);
                first_in(&y.as_step().xor(&f).and(&after_zero), Clause::Gate)
            }
            Element::Delay { out, input, model } => {
                let m = nondet.get(out).unwrap_or(model);
                let report = check_membership(get(input)?, get(out)?, m)
                    .map_err(|error| ConformanceError::Params { net: out.clone(), error })?;
                report.first_violation.filter(|v| within(v, w.horizon))
            }
        };
        if let Some(violation) = found {
            violations.push(ElementViolation { net: e.out().to_string(), violation });
        }
    }
    violations.sort_by(|a, b| {
        let key = |v: &Violation| (v.time.is_some(), v.time, !v.attained);
        key(&a.violation).cmp(&key(&b.violation)).then_with(|| a.net.cmp(&b.net))
    });
    Ok(ConformanceReport { ok: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{builtin, default_inputs, simulate, BUILTINS};
    use crate::stepfn::Signal;

    #[test]
    fn simulations_conform_to_themselves() {
        for name in BUILTINS {
            let n = builtin(name).unwrap();
            let w = simulate(&n, &default_inputs(name).unwrap(), Time::int(9)).unwrap();
            let r = check_trace_conformance(&n, &BTreeMap::new(), &w).unwrap();
            assert!(r.ok, "{name}: {:?}", r.violations);
        }
    }

    #[test]
    fn mismatch_is_localized() {
        let n = builtin("not-gate-wire").unwrap();
        let mut w = simulate(&n, &default_inputs("not-gate-wire").unwrap(), Time::int(9)).unwrap();
        w.signals.insert("y".into(), Signal::from_toggles(true, &[Time::int(2)]).unwrap());
        let r = check_trace_conformance(&n, &BTreeMap::new(), &w).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].net, "y");
        w.signals.remove("x");
        assert_eq!(check_trace_conformance(&n, &BTreeMap::new(), &w), Err(ConformanceError::MissingNet("x".into())));
        let bad = BTreeMap::from([("x".to_string(), DelayModel::Sc)]);
        assert_eq!(check_trace_conformance(&n, &bad, &w), Err(ConformanceError::NotADelay("x".into())));
    }
}
