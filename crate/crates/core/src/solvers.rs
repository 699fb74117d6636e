//! Constructing outputs: exact solvers for the deterministic conditions,
//! extremal members and samplers for the nondeterministic ones, and a
//! brute-force grid enumerator used as an independent oracle.

use thiserror::Error;

use crate::conditions::{cc_bdc, cc_bridc_edgewise, BdcParams, DelayModel, MembershipChecker, ParamError, RicParams};
use crate::stepfn::{Signal, StepFunction};
use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("model `{0}` is not deterministic")]
    Nondeterministic(String),
    #[error("no verified solution found within {0} search steps")]
    Exhausted(usize),
    #[error("grid enumeration needs {needed} candidates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("bad grid: {0}")]
    Grid(String),
}

fn sig(f: StepFunction) -> Signal {
    Signal::new(f).expect("operation preserves signals")
}

/// `x(t) = u(t - d)`.
pub fn solve_fixed(u: &Signal, d: Time) -> Result<Signal, SolveError> {
    DelayModel::Fixed(d).validate()?;
    Ok(sig(u.shift(d)))
}

/// `(AND of u over [t-d_r, t-d_r+m_r], OR of u over [t-d_f, t-d_f+m_f])`:
/// the least and greatest bounded-delay outputs.
pub fn bdc_bounds(u: &Signal, p: &BdcParams) -> Result<(Signal, Signal), SolveError> {
    DelayModel::Bdc(*p).validate()?;
    let lower = u.window_inf(p.d_r, p.m_r).expect("validated");
    let upper = u.window_sup(p.d_f, p.m_f).expect("validated");
    Ok((lower, upper))
}

/// `lower or (free and upper)`: every bounded-delay output has this form for
/// some `free`, and every `free` gives one.
pub fn sample_bdc(u: &Signal, p: &BdcParams, free: &Signal) -> Result<Signal, SolveError> {
    let (lower, upper) = bdc_bounds(u, p)?;
    Ok(lower.or(&free.and(&upper)))
}

/// The unique output with `x = 1` where `a`, `x = 0` where `b0`, and
/// `x(t) = x(t-0)` elsewhere, where `a` is the AND of u over
/// `[t-d_r, t-d_r+m_r]` and `b0` the AND of not u over `[t-d_f, t-d_f+m_f]`.
pub fn solve_dbridc(u: &Signal, p: &BdcParams) -> Result<Signal, SolveError> {
    DelayModel::Dbridc(*p).validate()?;
    let a = u.window_inf(p.d_r, p.m_r).expect("validated");
    let b0 = u.not().window_inf(p.d_f, p.m_f).expect("validated");
    debug_assert!(a.and(&b0).is_zero(), "consistency keeps a and b0 disjoint");
    let mut times: Vec<Time> = a.breakpoint_times().chain(b0.breakpoint_times()).collect();
    times.sort();
    times.dedup();
    let initial = u.initial();
    let mut x = initial;
    let mut toggles = Vec::new();
    for t in times {
        let next = if a.value_at(t) {
            true
        } else if b0.value_at(t) {
            false
        } else {
            x
        };
        if next != x {
            toggles.push(t);
            x = next;
        }
    }
    Ok(Signal::from_toggles(initial, &toggles).expect("increasing"))
}

/// The unique output of `Dx(t) = (x(t-0) xor u(t-0)) * not OR of Du over (t-d, t)`:
/// x follows every input run lasting at least `d`, `d` after the run starts.
pub fn solve_sdbridc(u: &Signal, d: Time) -> Result<Signal, SolveError> {
    DelayModel::SdbridcPrime(d).validate()?;
    let initial = u.initial();
    let starts = u.toggles();
    let mut x = initial;
    let mut value = initial;
    let mut toggles = Vec::new();
    for (i, &s) in starts.iter().enumerate() {
        value = !value;
        let long_enough = starts.get(i + 1).is_none_or(|&next| next - s >= d);
        if long_enough && value != x {
            toggles.push(s + d);
            x = value;
        }
    }
    Ok(Signal::from_toggles(initial, &toggles).expect("increasing"))
}

/// Solve any deterministic model.
pub fn solve(u: &Signal, model: &DelayModel) -> Result<Signal, SolveError> {
    match *model {
        DelayModel::Fixed(d) => solve_fixed(u, d),
        DelayModel::WindowAnd { m, d } => {
            model.validate()?;
            Ok(u.window_inf(d, m).expect("validated"))
        }
        DelayModel::WindowOr { m, d } => {
            model.validate()?;
            Ok(u.window_sup(d, m).expect("validated"))
        }
        DelayModel::Dbridc(p) => solve_dbridc(u, &p),
        DelayModel::SdbridcPrime(d) => solve_sdbridc(u, d),
        _ => Err(SolveError::Nondeterministic(model.to_string())),
    }
}

/// A member of the bounded-delay-with-relative-inertia condition.
///
/// The first candidate is `sample_bdc(u, p, free)`. If it breaks the inertia
/// clauses, a depth-first search over switch decisions follows: every
/// constraint is constant between consecutive breakpoints of the four bound
/// signals, so switching at a breakpoint is never worse than switching later
/// inside the same interval. `free` orders the optional choices. Every
/// returned signal has passed the membership checker.
pub fn sample_bridc(
    u: &Signal,
    p: &BdcParams,
    r: &RicParams,
    free: &Signal,
    retries: usize,
) -> Result<Signal, SolveError> {
    let model = DelayModel::Bridc(*p, *r);
    let checker = MembershipChecker::new(u, &model)?;
    debug_assert!(cc_bdc(p) && cc_bridc_edgewise(p, r).is_some());
    let first = sample_bdc(u, p, free)?;
    if checker.check(&first).ok {
        return Ok(first);
    }
    let nu = u.not();
    let search = Search {
        lower: u.window_inf(p.d_r, p.m_r).expect("validated"),
        upper: u.window_sup(p.d_f, p.m_f).expect("validated"),
        rise: u.window_inf(r.delta_r, r.mu_r).expect("validated"),
        fall: nu.window_inf(r.delta_f, r.mu_f).expect("validated"),
        free: free.clone(),
    };
    let mut times: Vec<Time> = [&search.lower, &search.upper, &search.rise, &search.fall, &search.free]
        .iter()
        .flat_map(|s| s.breakpoint_times().collect::<Vec<_>>())
        .collect();
    times.sort();
    times.dedup();
    let mut steps = 0usize;
    let mut toggles = Vec::new();
    let initial = u.initial();
    if search.dfs(&times, 0, initial, &mut toggles, &mut steps, retries, &checker, initial) {
        return Ok(Signal::from_toggles(initial, &toggles).expect("increasing"));
    }
    Err(SolveError::Exhausted(steps))
}

struct Search {
    lower: Signal,
    upper: Signal,
    rise: Signal,
    fall: Signal,
    free: Signal,
}

impl Search {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        times: &[Time],
        i: usize,
        x: bool,
        toggles: &mut Vec<Time>,
        steps: &mut usize,
        budget: usize,
        checker: &MembershipChecker,
        initial: bool,
    ) -> bool {
        if *steps >= budget {
            return false;
        }
        *steps += 1;
        let Some(&t) = times.get(i) else {
            let cand = Signal::from_toggles(initial, toggles).expect("increasing");
            return checker.check(&cand).ok;
        };
        let (must1, must0) = (self.lower.value_at(t), !self.upper.value_at(t));
        let may_switch = if x { self.fall.value_at(t) } else { self.rise.value_at(t) };
        let forced = (!x && must1) || (x && must0);
        let mut options: Vec<bool> = Vec::with_capacity(2);
        if forced {
            if may_switch {
                options.push(true);
            }
        } else if may_switch {
            let want = self.free.value_at(t);
            let switch_first = want != x;
            options.push(switch_first);
            options.push(!switch_first);
        } else {
            options.push(false);
        }
        for switch in options {
            if switch {
                toggles.push(t);
            }
            if self.dfs(times, i + 1, x ^ switch, toggles, steps, budget, checker, initial) {
                return true;
            }
            if switch {
                toggles.pop();
            }
        }
        false
    }
}

/// Grid for exhaustive enumeration: toggles on `{0, step, 2 step, ..., horizon}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub step: Time,
    pub horizon: Time,
    pub max_toggles: usize,
    /// Upper limit on the number of candidate signals.
    pub budget: u128,
}

impl GridSpec {
    pub fn new(step: Time, horizon: Time, max_toggles: usize) -> Result<GridSpec, SolveError> {
        let g = GridSpec { step, horizon, max_toggles, budget: 1 << 20 };
        g.validate()?;
        Ok(g)
    }

    pub fn with_budget(mut self, budget: u128) -> GridSpec {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<(), SolveError> {
        if !self.step.is_positive() || !self.horizon.is_positive() {
            return Err(SolveError::Grid("step and horizon must be positive".into()));
        }
        if self.horizon.scaled(self.step.denom()).is_none_or(|n| n % self.step.numer() != 0) {
            return Err(SolveError::Grid(format!("step {} does not divide horizon {}", self.step, self.horizon)));
        }
        Ok(())
    }

    /// The grid points `0, step, ..., horizon`.
    pub fn points(&self) -> Vec<Time> {
        let mut out = Vec::new();
        let mut t = Time::ZERO;
        while t <= self.horizon {
            out.push(t);
            t += self.step;
        }
        out
    }

    /// `2 * sum_{k <= max_toggles} C(n, k)` for `n` grid points.
    pub fn candidate_count(&self) -> u128 {
        let n = self.points().len() as u128;
        let mut total: u128 = 0;
        let mut c: u128 = 1;
        for k in 0..=(self.max_toggles as u128).min(n) {
            total += c;
            c = c * (n - k) / (k + 1);
        }
        2 * total
    }

    /// Every signal with toggles on the grid, in lexicographic order of
    /// `(initial value, toggle list)`.
    pub fn candidates(&self) -> Result<Vec<Signal>, SolveError> {
        self.validate()?;
        let needed = self.candidate_count();
        if needed > self.budget {
            return Err(SolveError::Budget { needed, budget: self.budget });
        }
        let pts = self.points();
        let mut subsets: Vec<Vec<Time>> = Vec::new();
        let mut cur = Vec::new();
        subsets_lex(&pts, 0, self.max_toggles, &mut cur, &mut subsets);
        let mut out = Vec::with_capacity(needed as usize);
        for initial in [false, true] {
            for s in &subsets {
                out.push(Signal::from_toggles(initial, s).expect("increasing"));
            }
        }
        Ok(out)
    }
}

fn subsets_lex(pts: &[Time], from: usize, left: usize, cur: &mut Vec<Time>, out: &mut Vec<Vec<Time>>) {
    out.push(cur.clone());
    if left == 0 {
        return;
    }
    for i in from..pts.len() {
        cur.push(pts[i]);
        subsets_lex(pts, i + 1, left - 1, cur, out);
        cur.pop();
    }
}

/// All grid signals that are members of `model` for input `u`, in the
/// candidate order of `GridSpec::candidates`.
pub fn enumerate_grid_solutions(u: &Signal, model: &DelayModel, g: &GridSpec) -> Result<Vec<Signal>, SolveError> {
    let checker = MembershipChecker::new(u, model)?;
    Ok(filter_members(&checker, &g.candidates()?))
}

/// The members of `candidates` accepted by `checker`.
pub fn filter_members(checker: &MembershipChecker, candidates: &[Signal]) -> Vec<Signal> {
    candidates.iter().filter(|x| checker.check(x).ok).cloned().collect()
}
