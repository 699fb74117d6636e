//! Test support: a brute-force pointwise evaluator that never goes through
//! the interval machinery of the library, and random generators.
#![allow(dead_code)]

use delaycalc::{Breakpoint, Signal, StepFunction, Time};
use proptest::prelude::*;
use rand::Rng;

/// Value at `t` by a linear scan over the breakpoints.
pub fn value(f: &StepFunction, t: Time) -> bool {
    let mut v = f.leading();
    for b in f.breakpoints() {
        if b.at < t {
            v = b.right;
        } else if b.at == t {
            return b.point;
        } else {
            break;
        }
    }
    v
}

/// `f(t-0)`: the value at a point strictly between `t` and the previous breakpoint.
pub fn left(f: &StepFunction, t: Time) -> bool {
    let prev = f.breakpoint_times().filter(|&b| b < t).last();
    let probe = match prev {
        Some(p) => p.midpoint(t),
        None => t - Time::ONE,
    };
    value(f, probe)
}

/// `f(t+0)`: the value strictly between `t` and the next breakpoint.
pub fn right(f: &StepFunction, t: Time) -> bool {
    let next = f.breakpoint_times().find(|&b| b > t);
    let probe = match next {
        Some(p) => p.midpoint(t),
        None => t + Time::ONE,
    };
    value(f, probe)
}

/// Every value `f` takes on the set `{ s : lo <? s <? hi }`.
fn window_values(f: &StepFunction, lo: Time, lo_closed: bool, hi: Time, hi_closed: bool) -> Vec<bool> {
    if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
        return Vec::new();
    }
    if lo == hi {
        return vec![value(f, lo)];
    }
    let mut pts = vec![lo];
    pts.extend(f.breakpoint_times().filter(|&b| b > lo && b < hi));
    pts.push(hi);
    let mut vals = Vec::new();
    if lo_closed {
        vals.push(value(f, lo));
    }
    if hi_closed {
        vals.push(value(f, hi));
    }
    for w in pts.windows(2) {
        vals.push(value(f, w[0].midpoint(w[1])));
    }
    for &p in &pts[1..pts.len() - 1] {
        vals.push(value(f, p));
    }
    vals
}

/// AND of `f` over `t + [lo, hi]` with the given closures; empty window gives 1.
pub fn inf_over(f: &StepFunction, t: Time, lo: Time, lo_closed: bool, hi: Time, hi_closed: bool) -> bool {
    window_values(f, t + lo, lo_closed, t + hi, hi_closed).into_iter().all(|v| v)
}

/// OR of `f` over `t + [lo, hi]`; empty window gives 0.
pub fn sup_over(f: &StepFunction, t: Time, lo: Time, lo_closed: bool, hi: Time, hi_closed: bool) -> bool {
    window_values(f, t + lo, lo_closed, t + hi, hi_closed).into_iter().any(|v| v)
}

/// AND over the closed window `[t-d, t-d+m]`.
pub fn lookback_inf(f: &StepFunction, t: Time, d: Time, m: Time) -> bool {
    inf_over(f, t, -d, true, m - d, true)
}

/// OR over the closed window `[t-d, t-d+m]`.
pub fn lookback_sup(f: &StepFunction, t: Time, d: Time, m: Time) -> bool {
    sup_over(f, t, -d, true, m - d, true)
}

/// Probe instants: every breakpoint of every function, shifted by each of
/// `offsets`, plus points just around each and midpoints between
/// consecutive ones, plus far-left and far-right points.
pub fn probes(fs: &[&StepFunction], offsets: &[Time]) -> Vec<Time> {
    let mut base: Vec<Time> = Vec::new();
    for f in fs {
        for b in f.breakpoint_times() {
            base.push(b);
            for &o in offsets {
                base.push(b + o);
                base.push(b - o);
            }
        }
    }
    base.push(Time::ZERO);
    base.sort();
    base.dedup();
    let min_gap = base
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .unwrap_or(Time::ONE)
        .min(Time::ONE);
    let eps = min_gap.div_int(7);
    let mut out = Vec::with_capacity(base.len() * 4 + 2);
    out.push(base[0] - Time::int(100));
    for (i, &b) in base.iter().enumerate() {
        out.push(b - eps);
        out.push(b);
        out.push(b + eps);
        if let Some(&n) = base.get(i + 1) {
            out.push(b.midpoint(n));
        }
    }
    out.push(*base.last().unwrap() + Time::int(100));
    out
}

/// Assert `f` agrees with the defining formula at every probe point.
pub fn assert_pointwise(f: &StepFunction, pts: &[Time], what: &str, expected: impl Fn(Time) -> bool) {
    for &p in pts {
        assert_eq!(value(f, p), expected(p), "{what} disagrees with brute force at t={p}; f={f:?}");
    }
}

pub fn agrees_pointwise(f: &StepFunction, pts: &[Time], expected: impl Fn(Time) -> bool) -> bool {
    pts.iter().all(|&p| value(f, p) == expected(p))
}

/// `k/den` for k in `lo..=hi`.
pub fn grid_time(rng: &mut impl Rng, den: i128, lo: i128, hi: i128) -> Time {
    Time::new(rng.gen_range(lo..=hi), den)
}

/// A signal with up to `max_toggles` toggles on the grid `1/den` within `[0, horizon]`.
pub fn random_signal(rng: &mut impl Rng, den: i128, horizon: i128, max_toggles: usize) -> Signal {
    let k = rng.gen_range(0..=max_toggles);
    let mut ts: Vec<Time> = (0..k).map(|_| grid_time(rng, den, 0, horizon * den)).collect();
    ts.sort();
    ts.dedup();
    Signal::from_toggles(rng.gen_bool(0.5), &ts).unwrap()
}

/// An arbitrary step function, possibly with isolated point values and
/// breakpoints before 0.
pub fn random_step(rng: &mut impl Rng, den: i128, span: i128, max_bps: usize) -> StepFunction {
    let k = rng.gen_range(0..=max_bps);
    let mut ts: Vec<Time> = (0..k).map(|_| grid_time(rng, den, -span * den, span * den)).collect();
    ts.sort();
    ts.dedup();
    let bps = ts
        .into_iter()
        .map(|at| Breakpoint { at, point: rng.gen_bool(0.5), right: rng.gen_bool(0.5) })
        .collect();
    StepFunction::from_parts(rng.gen_bool(0.5), bps).unwrap()
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Proptest strategy: a rational on the grid `1/den` in `[lo, hi]`.
pub fn arb_time(den: i128, lo: i128, hi: i128) -> impl Strategy<Value = Time> {
    ((lo * den)..=(hi * den)).prop_map(move |k| Time::new(k, den))
}

pub fn arb_step() -> impl Strategy<Value = StepFunction> {
    (
        any::<bool>(),
        prop::collection::btree_map(-40i128..=40, (any::<bool>(), any::<bool>()), 0..8),
    )
        .prop_map(|(lead, m)| {
            let bps = m
                .into_iter()
                .map(|(k, (p, r))| Breakpoint { at: Time::new(k, 4), point: p, right: r })
                .collect();
            StepFunction::from_parts(lead, bps).unwrap()
        })
}

pub fn arb_signal() -> impl Strategy<Value = Signal> {
    (any::<bool>(), prop::collection::btree_set(0i128..=40, 0..8)).prop_map(|(init, ts)| {
        let ts: Vec<Time> = ts.into_iter().map(|k| Time::new(k, 4)).collect();
        Signal::from_toggles(init, &ts).unwrap()
    })
}

/// `(d, m)` with `0 <= m <= d`, on the quarter grid.
pub fn arb_window() -> impl Strategy<Value = (Time, Time)> {
    (0i128..=16).prop_flat_map(|d| (Just(d), 0..=d)).prop_map(|(d, m)| (Time::new(d, 4), Time::new(m, 4)))
}

/// Exhaustive search over every signal with toggles on `{0, step, ..., horizon}`
/// (no bound on the toggle count) for one satisfying
/// `AND_[t-d_r, t-d_r+m_r] u <= x(t) <= OR_[t-d_f, t-d_f+m_f] u`, with every
/// 1-pulse longer than `delta_r` and every 0-pulse after a fall longer than
/// `delta_f`. A forward reachability pass over states `(grid index, value,
/// index of the last toggle)`; bounds are evaluated by brute force at each
/// grid point and each midpoint, which covers every value when `u` and all
/// parameters lie on the grid.
pub fn grid_member_bdc_aic(
    u: &Signal,
    (m_r, d_r, m_f, d_f): (Time, Time, Time, Time),
    (delta_r, delta_f): (Time, Time),
    step: Time,
    horizon: Time,
) -> Option<Signal> {
    use std::collections::HashMap;
    let uf: &StepFunction = u;
    let n = {
        let mut k = 0usize;
        while step * Time::int(k as i128 + 1) <= horizon {
            k += 1;
        }
        k
    };
    let g = |i: usize| step * Time::int(i as i128);
    let half = step.div_int(2);
    let fits = |t: Time, v: bool| {
        let lo = lookback_inf(uf, t, d_r, m_r);
        let hi = lookback_sup(uf, t, d_f, m_f);
        (!lo || v) && (hi || !v)
    };
    let seg_ok = |i: usize, v: bool| fits(g(i), v) && fits(g(i) + half, v);
    let tail_ok = |v: bool| {
        let far = horizon + d_r.max(d_f) + Time::ONE;
        let mut t = horizon;
        while t <= far {
            if !fits(t, v) {
                return false;
            }
            t += half;
        }
        true
    };
    let init = u.initial();
    if !fits(-half, init) {
        return None;
    }
    type State = (bool, Option<usize>);
    // back[i] maps a state after deciding grid point i to its predecessor state.
    let mut back: Vec<HashMap<State, State>> = Vec::with_capacity(n + 1);
    let mut frontier: Vec<State> = vec![(init, None)];
    for i in 0..=n {
        let mut next: HashMap<State, State> = HashMap::new();
        for &(v, last) in &frontier {
            if seg_ok(i, v) {
                next.entry((v, last)).or_insert((v, last));
            }
            let allowed = match last {
                None => true,
                Some(j) => g(i) - g(j) > if v { delta_r } else { delta_f },
            };
            if allowed && seg_ok(i, !v) {
                next.entry((!v, Some(i))).or_insert((v, last));
            }
        }
        frontier = next.keys().copied().collect();
        frontier.sort();
        back.push(next);
    }
    let end = frontier.into_iter().find(|&(v, _)| tail_ok(v))?;
    let mut toggles = Vec::new();
    let mut s = end;
    for i in (0..=n).rev() {
        let prev = back[i][&s];
        if prev.0 != s.0 {
            toggles.push(g(i));
        }
        s = prev;
    }
    toggles.reverse();
    Some(Signal::from_toggles(init, &toggles).unwrap())
}

/// The pulse train `[0, m_r+e) v [m_r+m_f+2e, 2m_r+m_f+3e) v ...` with `count` pulses.
pub fn pulse_train(m_r: Time, m_f: Time, eps: Time, count: usize) -> Signal {
    let period = m_r + m_f + eps + eps;
    let mut ts = Vec::new();
    for k in 0..count {
        let start = period * Time::int(k as i128);
        ts.push(start);
        ts.push(start + m_r + eps);
    }
    Signal::from_toggles(false, &ts).unwrap()
}

/// Serial connection at grid resolution. Returns the members of
/// `Sol_q(Sol_p(u))` on `coarse` that fall outside `Sol_{p+q}(u)`, and the
/// members of `Sol_{p+q}(u)` on `coarse` not reachable through any
/// intermediate signal on `fine`.
pub fn serial_gaps(
    u: &Signal,
    p: &delaycalc::BdcParams,
    q: &delaycalc::BdcParams,
    coarse: &[Signal],
    fine: &[Signal],
) -> (Vec<Signal>, Vec<Signal>) {
    use delaycalc::conditions::compose_bdc;
    use delaycalc::solvers::filter_members;
    use delaycalc::{DelayModel, MembershipChecker};
    let pq = compose_bdc(p, q).unwrap();
    let direct_checker = MembershipChecker::new(u, &DelayModel::Bdc(pq)).unwrap();
    let direct = filter_members(&direct_checker, coarse);
    let p_checker = MembershipChecker::new(u, &DelayModel::Bdc(*p)).unwrap();
    let mut extra = Vec::new();
    for y in filter_members(&p_checker, coarse) {
        let qc = MembershipChecker::new(&y, &DelayModel::Bdc(*q)).unwrap();
        for z in coarse.iter().filter(|z| qc.check(z).ok) {
            if !direct_checker.check(z).ok && !extra.contains(z) {
                extra.push(z.clone());
            }
        }
    }
    let mut missing: Vec<Signal> = direct;
    for y in filter_members(&p_checker, fine) {
        if missing.is_empty() {
            break;
        }
        let qc = MembershipChecker::new(&y, &DelayModel::Bdc(*q)).unwrap();
        missing.retain(|z| !qc.check(z).ok);
    }
    (extra, missing)
}
