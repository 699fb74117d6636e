use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use delaycalc::circuit::{
    builtin, check_trace_conformance, default_inputs, simulate_with_budget, ElementViolation, SimError, BUILTINS,
};
use delaycalc::conditions::{cc_baidc, cc_bdc, cc_bridc, cc_bridc_edgewise, check_membership, compose_bdc, zeno_free};
use delaycalc::format::emit_signals;
use delaycalc::solvers::{sample_bdc, sample_bridc, solve, SolveError};
use delaycalc::vcd::{export_vcd, import_vcd};
use delaycalc::{BdcParams, DelayModel, Signal, Time, Violation, WaveformSet};

use crate::load::{self, invalid, Failure, BUDGET, EXHAUSTED, VIOLATION};
use crate::{ascii, CheckArgs, ComposeArgs, ConsistentArgs, NetlistArgs, ReportFormat, SampleArgs, SimulateArgs, WaveFormat};

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn list_builtins() {
    for b in BUILTINS {
        println!("{b}");
    }
}

pub fn netlist(a: NetlistArgs) -> Result<u8, Failure> {
    if a.builtin == "list" {
        list_builtins();
    } else {
        print!("{}", builtin(&a.builtin).map_err(invalid)?);
    }
    Ok(0)
}

pub fn simulate(a: SimulateArgs) -> Result<u8, Failure> {
    let (mut n, defaults) = match (&a.netlist, &a.builtin) {
        (Some(p), _) => (load::netlist(p)?, BTreeMap::new()),
        (None, Some(name)) if name == "list" => {
            list_builtins();
            return Ok(0);
        }
        (None, Some(name)) => (builtin(name).map_err(invalid)?, default_inputs(name).map_err(invalid)?),
        (None, None) => return Err(invalid("give --netlist or --builtin")),
    };
    for text in &a.inits {
        let (net, v) = load::assignment(text)?;
        let v = match v.as_str() {
            "0" => false,
            "1" => true,
            _ => return Err(invalid(format!("initial value for `{net}` must be 0 or 1, got `{v}`"))),
        };
        n.init(&net, v);
    }
    for text in &a.delays {
        let (net, m) = load::assignment(text)?;
        if !n.set_delay_model(&net, load::model(&m)?) {
            return Err(invalid(format!("`{net}` is not driven by a delay element")));
        }
    }
    let inputs = match &a.inputs {
        Some(p) => load::signals_file(p)?,
        None => defaults,
    };
    let horizon = load::time(&a.until)?;
    let w = simulate_with_budget(&n, &inputs, horizon, a.budget).map_err(|e| match e {
        SimError::EventBudget { .. } => Failure { code: BUDGET, message: e.to_string() },
        _ => invalid(e),
    })?;
    let bytes = match a.format {
        WaveFormat::Ascii => ascii::render(&w, a.width).into_bytes(),
        WaveFormat::Vcd => export_vcd(&w),
        WaveFormat::Signals => emit_signals(&w.signals).into_bytes(),
        WaveFormat::Json => {
            let signals: serde_json::Map<String, Value> =
                w.signals.iter().map(|(k, s)| (k.clone(), json!(s.to_string()))).collect();
            let v = json!({ "horizon": w.horizon.to_string(), "signals": signals });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize")).into_bytes()
        }
    };
    load::emit(a.output.as_ref(), &bytes)?;
    Ok(0)
}

fn violation_json(net: Option<&str>, v: &Violation) -> Value {
    let mut o = json!({
        "time": v.time.map(|t| t.to_string()),
        "attained": v.attained,
        "clause": v.clause.to_string(),
    });
    if let Some(net) = net {
        o["net"] = json!(net);
    }
    o
}

fn state_only(m: &DelayModel) -> bool {
    matches!(m, DelayModel::Aic(_) | DelayModel::AicPrime(_))
}

pub fn check(a: CheckArgs) -> Result<u8, Failure> {
    if let Some(netlist) = &a.netlist {
        let trace = a.trace.as_ref().expect("clap requires --trace with --netlist");
        return check_netlist(&a, netlist, trace);
    }
    let Some(text) = &a.model else {
        return Err(invalid("give --model or --netlist"));
    };
    let m = load::model(text)?;
    m.validate().map_err(invalid)?;
    let (u, x) = match (&a.input, &a.output, &a.state) {
        (_, _, Some(s)) if state_only(&m) => {
            let x = load::signal(s)?.1;
            (x.clone(), x)
        }
        (_, _, Some(_)) => {
            return Err(invalid(format!("`{}` relates an input and an output; use --input and --output", m.name())))
        }
        (Some(i), Some(o), None) => (load::signal(i)?.1, load::signal(o)?.1),
        _ if state_only(&m) => return Err(invalid("give --state")),
        _ => return Err(invalid("give --input and --output")),
    };
    let report = check_membership(&u, &x, &m).map_err(invalid)?;
    match a.format {
        ReportFormat::Json => {
            let violations: Vec<Value> = report.first_violation.iter().map(|v| violation_json(None, v)).collect();
            print_json(&json!({ "ok": report.ok, "violations": violations, "parameters": { "model": m.to_string() } }));
        }
        ReportFormat::Text => match &report.first_violation {
            None => println!("ok: trace satisfies `{m}`"),
            Some(v) => println!("violation: {v}"),
        },
    }
    Ok(if report.ok { 0 } else { VIOLATION })
}

fn check_netlist(a: &CheckArgs, netlist: &std::path::Path, trace: &std::path::Path) -> Result<u8, Failure> {
    let n = load::netlist(netlist)?;
    let mut overrides = BTreeMap::new();
    for text in &a.delays {
        let (net, m) = load::assignment(text)?;
        overrides.insert(net, load::model(&m)?);
    }
    let is_vcd = trace.extension().is_some_and(|e| e.eq_ignore_ascii_case("vcd"));
    let w = if is_vcd {
        let f = File::open(trace).map_err(|e| invalid(format!("{}: {e}", trace.display())))?;
        let mut w = import_vcd(BufReader::new(f)).map_err(|e| invalid(format!("{}: {e}", trace.display())))?;
        if let Some(u) = &a.until {
            w.horizon = load::time(u)?;
        }
        w
    } else {
        let signals = load::signals_file(trace)?;
        let horizon = match &a.until {
            Some(u) => load::time(u)?,
            None => signals.values().filter_map(Signal::last_toggle).max().unwrap_or(Time::ZERO),
        };
        WaveformSet { signals, horizon }
    };
    let report = check_trace_conformance(&n, &overrides, &w).map_err(invalid)?;
    let parameters: serde_json::Map<String, Value> = n
        .elements
        .iter()
        .filter_map(|e| match e {
            delaycalc::Element::Delay { out, model, .. } => {
                Some((out.clone(), json!(overrides.get(out).unwrap_or(model).to_string())))
            }
            _ => None,
        })
        .collect();
    match a.format {
        ReportFormat::Json => {
            let violations: Vec<Value> =
                report.violations.iter().map(|ElementViolation { net, violation }| violation_json(Some(net), violation)).collect();
            print_json(&json!({ "ok": report.ok, "violations": violations, "parameters": parameters }));
        }
        ReportFormat::Text => {
            if report.ok {
                println!("ok: trace conforms up to t={}", w.horizon);
            }
            for ElementViolation { net, violation } in &report.violations {
                println!("violation in `{net}`: {violation}");
            }
        }
    }
    Ok(if report.ok { 0 } else { VIOLATION })
}

struct Verdict {
    condition: &'static str,
    holds: bool,
    detail: String,
}

fn bdc_verdict(p: &BdcParams) -> Verdict {
    let detail = match DelayModel::Bdc(*p).validate() {
        Ok(()) => format!("dr-mr={} <= df={} and df-mf={} <= dr={}", p.d_r - p.m_r, p.d_f, p.d_f - p.m_f, p.d_r),
        Err(e) => e.to_string(),
    };
    Verdict { condition: "CC_BDC", holds: cc_bdc(p), detail }
}

pub fn consistent(a: ConsistentArgs) -> Result<u8, Failure> {
    let m = load::model(&a.model)?;
    let mut verdicts = Vec::new();
    match &m {
        DelayModel::Bdc(p) | DelayModel::Dbridc(p) => verdicts.push(bdc_verdict(p)),
        DelayModel::Baidc(p, aic) => {
            verdicts.push(bdc_verdict(p));
            let (sum, mem) = (aic.delta_r + aic.delta_f, p.m_r + p.m_f);
            let holds = cc_baidc(p, aic);
            let op = if sum <= mem { "<=" } else { ">" };
            verdicts.push(Verdict { condition: "CC_BAIDC", holds, detail: format!("deltar+deltaf={sum} {op} mr+mf={mem}") });
        }
        DelayModel::Bridc(p, r) => {
            let (holds, detail) = match (cc_bridc(p, r), cc_bridc_edgewise(p, r)) {
                (Some(c), _) => (true, format!("clause {c}")),
                (None, Some((rise, fall))) => {
                    (true, format!("edge-wise only: rising edge clause {rise}, falling edge clause {fall}"))
                }
                (None, None) => (false, "no clause holds for one of the edges".to_string()),
            };
            verdicts.push(Verdict { condition: "CC_BRIDC", holds, detail });
            let z = zeno_free(r);
            verdicts.push(Verdict { condition: "zeno-free", holds: z, detail: String::new() });
        }
        DelayModel::Ric(r) | DelayModel::RicPrime(r) => {
            verdicts.push(Verdict { condition: "zeno-free", holds: zeno_free(r), detail: String::new() });
        }
        _ => {}
    }
    let valid = m.validate();
    match a.format {
        ReportFormat::Json => {
            let checks: Vec<Value> = verdicts
                .iter()
                .map(|v| json!({ "condition": v.condition, "holds": v.holds, "detail": v.detail }))
                .collect();
            print_json(&json!({
                "model": m.to_string(),
                "consistent": valid.is_ok(),
                "error": valid.as_ref().err().map(ToString::to_string),
                "checks": checks,
            }));
        }
        ReportFormat::Text => {
            if verdicts.is_empty() {
                match &valid {
                    Ok(()) => println!("`{}` has no consistency condition; parameters are valid", m.name()),
                    Err(e) => println!("invalid parameters: {e}"),
                }
            }
            for v in &verdicts {
                let state = if v.holds { "holds" } else { "fails" };
                if v.detail.is_empty() {
                    println!("{} {state}", v.condition);
                } else {
                    println!("{} {state}: {}", v.condition, v.detail);
                }
            }
        }
    }
    Ok(if valid.is_ok() { 0 } else { load::INVALID })
}

fn as_bdc(text: &str) -> Result<BdcParams, Failure> {
    match load::model(text)? {
        DelayModel::Bdc(p) => Ok(p),
        DelayModel::Fixed(d) => Ok(BdcParams::fixed(d)),
        other => Err(invalid(format!("compose takes bdc or fixed models, got `{}`", other.name()))),
    }
}

pub fn compose(a: ComposeArgs) -> Result<u8, Failure> {
    let p = compose_bdc(&as_bdc(&a.a)?, &as_bdc(&a.b)?).map_err(invalid)?;
    println!("{p}");
    Ok(0)
}

/// A random signal on a grid fine enough to separate the input's switches
/// and the model's parameters, over the span where the output can move.
fn random_free(rng: &mut ChaCha8Rng, u: &Signal, params: &[Time]) -> Signal {
    let mut times = u.toggles();
    times.extend_from_slice(params);
    let den = Time::common_denominator(&times) * 2;
    let reach = params.iter().copied().max().unwrap_or(Time::ZERO);
    let end = u.last_toggle().unwrap_or(Time::ZERO).max(Time::ZERO) + reach + Time::ONE;
    let slots = end.scaled(den).expect("den is a multiple of end's denominator") as usize + 1;
    let count = rng.gen_range(0..=slots.min(2 * (u.toggles().len() + 2)));
    let mut picks = index::sample(rng, slots, count).into_vec();
    picks.sort_unstable();
    let ts: Vec<Time> = picks.into_iter().map(|k| Time::new(k as i128, den)).collect();
    Signal::from_toggles(rng.gen_bool(0.5), &ts).expect("sorted distinct times")
}

fn exhausted(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXHAUSTED, message: message.to_string() }
}

pub fn sample(a: SampleArgs) -> Result<u8, Failure> {
    let m = load::model(&a.model)?;
    m.validate().map_err(invalid)?;
    let (_, u) = load::signal(&a.input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let rejection = |rng: &mut ChaCha8Rng, p: &BdcParams| -> Result<Signal, Failure> {
        for _ in 0..a.retries {
            let free = random_free(rng, &u, &[p.d_r, p.d_f]);
            let x = sample_bdc(&u, p, &free).map_err(invalid)?;
            if check_membership(&u, &x, &m).map_err(invalid)?.ok {
                return Ok(x);
            }
        }
        Err(exhausted(format!("no member of `{m}` found in {} draws", a.retries)))
    };
    let x = match &m {
        m if m.is_deterministic() => solve(&u, m).map_err(invalid)?,
        DelayModel::Bdc(p) | DelayModel::Baidc(p, _) => rejection(&mut rng, p)?,
        DelayModel::Bridc(p, r) => {
            let free = random_free(&mut rng, &u, &[p.d_r, p.d_f, r.delta_r, r.delta_f]);
            sample_bridc(&u, p, r, &free, a.search_steps).map_err(|e| match e {
                SolveError::Exhausted(_) => exhausted(e),
                other => invalid(other),
            })?
        }
        other => return Err(invalid(format!("no sampler for `{}`; use fixed, windowand, windowor, dbridc, sdbridc, bdc, baidc or bridc", other.name()))),
    };
    let report = check_membership(&u, &x, &m).map_err(invalid)?;
    if !report.ok {
        return Err(exhausted(format!("sampled output failed verification: {:?}", report.first_violation)));
    }
    let text = emit_signals(&BTreeMap::from([(a.name.clone(), x)]));
    load::emit(a.output.as_ref(), text.as_bytes())?;
    Ok(0)
}
