mod common;

use std::collections::BTreeMap;

use common::{grid_time, inf_over, lookback_inf, lookback_sup, probes, random_signal, seeded, sup_over, value};
use delaycalc::circuit::{
    builtin, c_element, check_trace_conformance, default_inputs, delay_line_falling, not_feedback, simulate,
    ConformanceReport, BUILTINS,
};
use delaycalc::conditions::{check_membership, compose_bdc};
use delaycalc::format::{emit_signals, parse_signals};
use delaycalc::vcd::{export_vcd, import_vcd};
use delaycalc::{BdcParams, DelayModel, GateKind, Netlist, Signal, Time, WaveformSet};
use proptest::prelude::*;
use rand::Rng;

fn inputs(pairs: &[(&str, &Signal)]) -> BTreeMap<String, Signal> {
    pairs.iter().map(|(k, s)| (k.to_string(), (*s).clone())).collect()
}

#[test]
fn fixed_not_loop_period_is_twice_the_loop_delay() {
    let mut rng = seeded(11);
    for _ in 0..60 {
        let d1 = grid_time(&mut rng, 8, 1, 24);
        let d2 = grid_time(&mut rng, 8, 1, 24);
        let lap = d1 + d2;
        let horizon = lap.times(7);
        let w = simulate(&not_feedback(DelayModel::Fixed(d1), DelayModel::Fixed(d2)), &BTreeMap::new(), horizon)
            .unwrap();
        let expected: Vec<Time> = (0..=7).map(|k| lap.times(k)).collect();
        assert_eq!(w.signals["x"].toggles(), expected, "d1={d1} d2={d2}");
        assert_eq!(w.signals["y"], truncate(&w.signals["x"].delayed(d1).unwrap(), horizon));
    }
}

fn truncate(s: &Signal, horizon: Time) -> Signal {
    let ts: Vec<Time> = s.toggles().into_iter().filter(|&t| t <= horizon).collect();
    Signal::from_toggles(s.initial(), &ts).unwrap()
}

#[test]
fn sdbridc_not_loop_matches_fixed_loop() {
    for (d1, d2) in [(1, 1), (1, 2), (3, 1)] {
        let (d1, d2) = (Time::int(d1), Time::int(d2));
        let horizon = Time::int(24);
        let fixed = simulate(&not_feedback(DelayModel::Fixed(d1), DelayModel::Fixed(d2)), &BTreeMap::new(), horizon)
            .unwrap();
        let sym = simulate(
            &not_feedback(DelayModel::SdbridcPrime(d1), DelayModel::SdbridcPrime(d2)),
            &BTreeMap::new(),
            horizon,
        )
        .unwrap();
        assert_eq!(fixed.signals, sym.signals, "d1={d1} d2={d2}");
    }
}

fn random_deterministic(rng: &mut impl Rng) -> DelayModel {
    let q = |rng: &mut _, lo, hi| grid_time(rng, 4, lo, hi);
    match rng.gen_range(0..5) {
        0 => DelayModel::Fixed(q(rng, 1, 12)),
        1 => {
            let d = q(rng, 1, 12);
            let m = Time::new(rng.gen_range(0..d.numer() * 4 / d.denom()), 4);
            DelayModel::WindowAnd { m, d }
        }
        2 => {
            let d = q(rng, 1, 12);
            let m = Time::new(rng.gen_range(0..d.numer() * 4 / d.denom()), 4);
            DelayModel::WindowOr { m, d }
        }
        3 => DelayModel::SdbridcPrime(q(rng, 1, 12)),
        _ => loop {
            let d_r = q(rng, 1, 12);
            let d_f = q(rng, 1, 12);
            let m_r = Time::new(rng.gen_range(0..d_r.numer() * 4 / d_r.denom()), 4);
            let m_f = Time::new(rng.gen_range(0..d_f.numer() * 4 / d_f.denom()), 4);
            let m = DelayModel::Dbridc(BdcParams { m_r, d_r, m_f, d_f });
            if m.validate().is_ok() {
                break m;
            }
        },
    }
}

#[test]
fn not_pipelines_settle_to_the_complement() {
    let mut rng = seeded(12);
    for _ in 0..150 {
        let stages = rng.gen_range(1..=4);
        let mut n = Netlist::new();
        n.input("u");
        let mut prev = "u".to_string();
        for k in 0..stages {
            let wire = format!("w{k}");
            let gate = format!("g{k}");
            n.delay(&wire, &prev, random_deterministic(&mut rng));
            n.gate(GateKind::Not, &gate, &[&wire]);
            prev = gate;
        }
        n.output(&prev);
        let u = random_signal(&mut rng, 4, 10, 8);
        let w = simulate(&n, &inputs(&[("u", &u)]), Time::int(80)).unwrap();
        let out = &w.signals[&prev];
        assert!(out.last_toggle().is_none_or(|t| t < Time::int(80)));
        assert_eq!(out.limit_at_infinity(), u.limit_at_infinity() ^ (stages % 2 == 1), "{n}");
        let r = check_trace_conformance(&n, &BTreeMap::new(), &w).unwrap();
        assert!(r.ok, "{n}\n{:?}", r.violations);
    }
}

#[test]
fn simulation_is_deterministic() {
    let mut rng = seeded(13);
    for name in BUILTINS {
        let n = builtin(name).unwrap();
        let mut ins = default_inputs(name).unwrap();
        for s in ins.values_mut() {
            let r = random_signal(&mut rng, 4, 8, 6);
            *s = Signal::from_toggles(s.initial(), &r.toggles()).unwrap();
        }
        let a = simulate(&n, &ins, Time::int(15)).unwrap();
        let b = simulate(&n, &ins, Time::int(15)).unwrap();
        assert_eq!(a, b);
        assert_eq!(export_vcd(&a), export_vcd(&b));
    }
}

/// `AND of u over [t-dr-df, t) <= w <= OR of u over [t-3dr-3df, t)` with `dr = df = 1`.
fn envelope_holds(u: &Signal, w: &Signal) -> Result<(), Time> {
    let (lo, hi) = (Time::int(2), Time::int(6));
    for p in probes(&[u, w], &[lo, hi]) {
        let below = inf_over(u, p, -lo, true, Time::ZERO, false);
        let above = sup_over(u, p, -hi, true, Time::ZERO, false);
        let x = value(w, p);
        if (below && !x) || (x && !above) {
            return Err(p);
        }
    }
    Ok(())
}

#[test]
fn delay_line_stays_inside_its_envelope() {
    let mut rng = seeded(14);
    for _ in 0..200 {
        let u = random_signal(&mut rng, 4, 10, 10);
        let models: [DelayModel; 6] = std::array::from_fn(|_| DelayModel::Fixed(grid_time(&mut rng, 4, 1, 4)));
        let n = delay_line_falling(models);
        let w = simulate(&n, &inputs(&[("u", &u)]), Time::int(40)).unwrap();
        let nondet: BTreeMap<String, DelayModel> = ["x1", "x2", "x3", "x4", "x5", "w"]
            .iter()
            .map(|s| (s.to_string(), DelayModel::BdcPrime { d_r: Time::ONE, d_f: Time::ONE }))
            .collect();
        let r = check_trace_conformance(&n, &nondet, &w).unwrap();
        assert!(r.ok, "{:?}", r.violations);
        if let Err(p) = envelope_holds(&u, &w.signals["w"]) {
            panic!("envelope fails at t={p}: u={u} w={} models={models:?}", w.signals["w"]);
        }
    }
}

fn random_dbridc(rng: &mut impl Rng) -> BdcParams {
    loop {
        let d_r = grid_time(rng, 4, 1, 8);
        let d_f = grid_time(rng, 4, 1, 8);
        let m_r = Time::new(rng.gen_range(0..d_r.numer() * 4 / d_r.denom()), 4);
        let m_f = Time::new(rng.gen_range(0..d_f.numer() * 4 / d_f.denom()), 4);
        let p = BdcParams { m_r, d_r, m_f, d_f };
        if DelayModel::Dbridc(p).validate().is_ok() {
            return p;
        }
    }
}

#[test]
fn c_element_bounds() {
    let mut rng = seeded(15);
    for _ in 0..120 {
        let p = random_dbridc(&mut rng);
        let q = random_dbridc(&mut rng);
        let n = c_element(DelayModel::Dbridc(p), DelayModel::Dbridc(q));
        let u = random_signal(&mut rng, 4, 10, 6);
        let v0 = random_signal(&mut rng, 4, 10, 6);
        let v = Signal::from_toggles(u.initial(), &v0.toggles()).unwrap();
        let w = simulate(&n, &inputs(&[("u", &u), ("v", &v)]), Time::int(60)).unwrap();
        let x = &w.signals["x"];
        let both = u.and(&v);
        let either = u.or(&v);
        let (dr, mr) = (p.d_r + q.d_r, p.m_r + q.m_r);
        let (df, mf) = (p.d_f + q.d_f, p.m_f + q.m_f);
        for t in probes(&[&u, &v, x], &[dr, df, dr - mr, df - mf]) {
            let xv = value(x, t);
            assert!(!lookback_inf(&both, t, dr, mr) || xv, "lower bound at {t}: u={u} v={v} x={x}");
            assert!(!xv || lookback_sup(&either, t, df, mf), "upper bound at {t}: u={u} v={v} x={x}");
        }
    }
}

#[test]
fn c_element_with_equal_inputs_is_a_delay_buffer() {
    let mut rng = seeded(16);
    for _ in 0..120 {
        let p = random_dbridc(&mut rng);
        let q = random_dbridc(&mut rng);
        let n = c_element(DelayModel::Dbridc(p), DelayModel::Dbridc(q));
        let u = random_signal(&mut rng, 4, 10, 6);
        let w = simulate(&n, &inputs(&[("u", &u), ("v", &u)]), Time::int(60)).unwrap();
        let sum = compose_bdc(&p, &q).unwrap();
        let r = check_membership(&u, &w.signals["x"], &DelayModel::Bdc(sum)).unwrap();
        assert!(r.ok, "p={p} q={q} u={u} x={} {:?}", w.signals["x"], r.first_violation);
    }
}

fn perturbed(w: &WaveformSet, net: &str, from: Time, to: Time) -> WaveformSet {
    let mut out = w.clone();
    let s = &w.signals[net];
    let ts: Vec<Time> = s.toggles().into_iter().map(|t| if t == from { to } else { t }).collect();
    out.signals.insert(net.to_string(), Signal::from_toggles(s.initial(), &ts).unwrap());
    out
}

#[test]
fn early_switch_is_localized_to_its_element() {
    let half = Time::new(1, 2);
    let n = delay_line_falling([DelayModel::Fixed(half); 6]);
    let u = Signal::from_toggles(true, &[Time::int(1), Time::int(5)]).unwrap();
    let w = simulate(&n, &inputs(&[("u", &u)]), Time::int(20)).unwrap();
    let bdcp = DelayModel::BdcPrime { d_r: Time::ONE, d_f: Time::ONE };
    let nondet: BTreeMap<String, DelayModel> =
        ["x1", "x2", "x3", "x4", "x5", "w"].iter().map(|s| (s.to_string(), bdcp)).collect();
    assert!(check_trace_conformance(&n, &nondet, &w).unwrap().ok);

    let names = |r: &ConformanceReport| r.violations.iter().map(|v| v.net.clone()).collect::<Vec<_>>();
    // The output may not switch before the net driving it has.
    let cause = w.signals["z"].toggles()[0];
    let first = w.signals["w"].toggles()[0];
    let bad = perturbed(&w, "w", first, cause - Time::new(1, 4));
    let r = check_trace_conformance(&n, &nondet, &bad).unwrap();
    assert_eq!(names(&r), ["w"]);
    assert_eq!(r.violations[0].violation.time, Some(cause - Time::new(1, 4)));

    // Inside the chain, the gates reading the perturbed net see it too.
    let cause = w.signals["y3"].toggles()[0];
    let first = w.signals["x3"].toggles()[0];
    let bad = perturbed(&w, "x3", first, cause - Time::new(1, 8));
    let r = check_trace_conformance(&n, &nondet, &bad).unwrap();
    let got = names(&r);
    assert!(got.contains(&"x3".to_string()), "{got:?}");
    assert!(got.iter().all(|g| g == "x3" || g == "y4"), "{got:?}");
}

#[test]
fn netlist_text_round_trips_for_builtins() {
    for name in BUILTINS {
        let n = builtin(name).unwrap();
        let again: Netlist = n.to_string().parse().unwrap();
        assert_eq!(again, n, "{name}");
    }
}

#[test]
fn vcd_round_trip_preserves_conformance() {
    for name in BUILTINS {
        let n = builtin(name).unwrap();
        let w = simulate(&n, &default_inputs(name).unwrap(), Time::int(12)).unwrap();
        let back = import_vcd(export_vcd(&w).as_slice()).unwrap();
        assert_eq!(back, w, "{name}");
        assert!(check_trace_conformance(&n, &BTreeMap::new(), &back).unwrap().ok, "{name}");
    }
}

proptest! {
    #[test]
    fn vcd_round_trip(sigs in prop::collection::btree_map("[a-z][a-z0-9_]{0,5}", common::arb_signal(), 1..5),
                      extra in 0i128..8) {
        let last = sigs.values().filter_map(|s| s.last_toggle()).max().unwrap_or(Time::ZERO);
        let w = WaveformSet { signals: sigs, horizon: last + Time::new(extra, 2) };
        prop_assert_eq!(import_vcd(export_vcd(&w).as_slice()).unwrap(), w);
    }

    #[test]
    fn signal_file_emit_is_idempotent(sigs in prop::collection::btree_map("[a-z][a-z0-9_]{0,5}", common::arb_signal(), 0..5)) {
        let text = emit_signals(&sigs);
        let back = parse_signals(&text).unwrap();
        prop_assert_eq!(&back, &sigs);
        prop_assert_eq!(emit_signals(&back), text);
    }
}
