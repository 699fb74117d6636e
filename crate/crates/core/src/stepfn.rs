//! Binary step functions over rational time and the signal refinement.
//!
//! A [`StepFunction`] is constant on the open intervals between finitely many
//! breakpoints and carries an independent value at each breakpoint, so left
//! and right limits, derivatives and half-open windows all stay inside the
//! type. A [`Signal`] is a step function that is right-continuous and does not
//! switch before time 0.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("breakpoints must be strictly increasing (at {0})")]
    NotIncreasing(Time),
    #[error("window requires 0 <= m <= d (got d={d}, m={m})")]
    BadWindow { d: Time, m: Time },
    #[error("half-open window requires d > 0 (got {0})")]
    NonPositiveWindow(Time),
    #[error("negative delay {0}")]
    NegativeDelay(Time),
    #[error("not a signal: {0}")]
    NotASignal(String),
}

/// A breakpoint: the value at `at` and the value on the open interval that
/// follows it (up to the next breakpoint, or to +inf).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Breakpoint {
    pub at: Time,
    pub point: bool,
    pub right: bool,
}

/// One end of an interval. `Unbounded` is -inf on the low side and +inf on
/// the high side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(Time),
    Open(Time),
}

impl Bound {
    fn value(&self) -> Option<Time> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(t) | Bound::Open(t) => Some(*t),
        }
    }

    fn is_open(&self) -> bool {
        matches!(self, Bound::Open(_))
    }

    fn offset(self, by: Bound) -> Bound {
        match (self, by) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => Bound::Unbounded,
            (Bound::Closed(a), Bound::Closed(b)) => Bound::Closed(a + b),
            (a, b) => Bound::Open(a.value().unwrap() + b.value().unwrap()),
        }
    }
}

fn cmp_lo(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(&y).then(a.is_open().cmp(&b.is_open()))
        }
    }
}

fn cmp_hi(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(&y).then(b.is_open().cmp(&a.is_open()))
        }
    }
}

/// A non-empty interval of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Interval {
        Interval { lo, hi }
    }

    /// `[a, b)`
    pub fn closed_open(a: Time, b: Time) -> Interval {
        Interval::new(Bound::Closed(a), Bound::Open(b))
    }

    /// `[a, b]`
    pub fn closed(a: Time, b: Time) -> Interval {
        Interval::new(Bound::Closed(a), Bound::Closed(b))
    }

    /// `(a, b)`
    pub fn open(a: Time, b: Time) -> Interval {
        Interval::new(Bound::Open(a), Bound::Open(b))
    }

    /// `(a, b]`
    pub fn open_closed(a: Time, b: Time) -> Interval {
        Interval::new(Bound::Open(a), Bound::Closed(b))
    }

    /// `{a}`
    pub fn point(a: Time) -> Interval {
        Interval::closed(a, a)
    }

    /// `[a, inf)`
    pub fn from(a: Time) -> Interval {
        Interval::new(Bound::Closed(a), Bound::Unbounded)
    }

    /// `(-inf, b)`
    pub fn before(b: Time) -> Interval {
        Interval::new(Bound::Unbounded, Bound::Open(b))
    }

    pub fn everything() -> Interval {
        Interval::new(Bound::Unbounded, Bound::Unbounded)
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => a > b || (a == b && (self.lo.is_open() || self.hi.is_open())),
            _ => false,
        }
    }

    pub fn contains(&self, t: Time) -> bool {
        let above = match self.lo {
            Bound::Unbounded => true,
            Bound::Closed(a) => a <= t,
            Bound::Open(a) => a < t,
        };
        let below = match self.hi {
            Bound::Unbounded => true,
            Bound::Closed(b) => t <= b,
            Bound::Open(b) => t < b,
        };
        above && below
    }

    /// Whether some `(t, t + eps)` lies inside the interval.
    fn contains_right_of(&self, t: Time) -> bool {
        let above = match self.lo.value() {
            None => true,
            Some(a) => a <= t,
        };
        let below = match self.hi.value() {
            None => true,
            Some(b) => t < b,
        };
        above && below
    }

    /// Whether `self` followed by `next` (in lower-bound order) form one
    /// connected set.
    fn joins(&self, next: &Interval) -> bool {
        match (self.hi, next.lo) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => true,
            (h, l) => {
                let (x, y) = (h.value().unwrap(), l.value().unwrap());
                y < x || (y == x && !(h.is_open() && l.is_open()))
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Bound::Closed(a), Bound::Closed(b)) = (self.lo, self.hi) {
            if a == b {
                return write!(f, "{{{a}}}");
            }
        }
        match self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Closed(a) => write!(f, "[{a}")?,
            Bound::Open(a) => write!(f, "({a}")?,
        }
        write!(f, ", ")?;
        match self.hi {
            Bound::Unbounded => write!(f, "inf)"),
            Bound::Closed(b) => write!(f, "{b}]"),
            Bound::Open(b) => write!(f, "{b})"),
        }
    }
}

/// Sort and merge a list of intervals into a minimal disjoint union.
fn normalize(mut set: Vec<Interval>) -> Vec<Interval> {
    set.retain(|i| !i.is_empty());
    set.sort_by(|a, b| cmp_lo(&a.lo, &b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(set.len());
    for iv in set {
        match out.last_mut() {
            Some(last) if last.joins(&iv) => {
                if cmp_hi(&iv.hi, &last.hi) == Ordering::Greater {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// A window of look-around offsets relative to the evaluation instant `t`:
/// the set `{ t + s : s in [lo, hi] }` with each end open or closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Time,
    pub lo_closed: bool,
    pub hi: Time,
    pub hi_closed: bool,
}

impl Window {
    pub fn new(lo: Time, lo_closed: bool, hi: Time, hi_closed: bool) -> Window {
        Window { lo, lo_closed, hi, hi_closed }
    }

    /// `[t+lo, t+hi]`
    pub fn closed(lo: Time, hi: Time) -> Window {
        Window::new(lo, true, hi, true)
    }

    /// `[t+lo, t+hi)`
    pub fn closed_open(lo: Time, hi: Time) -> Window {
        Window::new(lo, true, hi, false)
    }

    /// `(t+lo, t+hi)`
    pub fn open(lo: Time, hi: Time) -> Window {
        Window::new(lo, false, hi, false)
    }

    /// `[t-d, t-d+m]`, the bounded-delay look-back window.
    pub fn lookback(d: Time, m: Time) -> Window {
        Window::closed(-d, m - d)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    /// The reflected offset set `-W`, as an interval.
    fn reflected(&self) -> (Bound, Bound) {
        let lo = if self.hi_closed { Bound::Closed(-self.hi) } else { Bound::Open(-self.hi) };
        let hi = if self.lo_closed { Bound::Closed(-self.lo) } else { Bound::Open(-self.lo) };
        (lo, hi)
    }
}

/// Which one-sided limit a derivative compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Df(t) = f(t-0) xor f(t)`
    Left,
    /// `D*f(t) = f(t+0) xor f(t)`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiKind {
    /// `not f(t-0) and f(t)`
    Rise,
    /// `f(t-0) and not f(t)`
    Fall,
    /// `not f(t) and f(t+0)`
    RiseRight,
    /// `f(t) and not f(t+0)`
    FallRight,
}

/// A function R -> {0,1} with finitely many breakpoints, kept canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    leading: bool,
    bps: Vec<Breakpoint>,
}

impl StepFunction {
    pub fn constant(v: bool) -> StepFunction {
        StepFunction { leading: v, bps: Vec::new() }
    }

    /// Build from a leading value and breakpoints; the result is canonicalized.
    pub fn from_parts(leading: bool, bps: Vec<Breakpoint>) -> Result<StepFunction, StepError> {
        for w in bps.windows(2) {
            if w[0].at >= w[1].at {
                return Err(StepError::NotIncreasing(w[1].at));
            }
        }
        Ok(Self::canonical(leading, bps))
    }

    fn canonical(leading: bool, bps: Vec<Breakpoint>) -> StepFunction {
        let mut left = leading;
        let mut kept = Vec::with_capacity(bps.len());
        for bp in bps {
            if bp.point == left && bp.right == left {
                continue;
            }
            left = bp.right;
            kept.push(bp);
        }
        StepFunction { leading, bps: kept }
    }

    /// Right-continuous function starting at `initial` and flipping at each toggle.
    pub fn from_toggles(initial: bool, toggles: &[Time]) -> Result<StepFunction, StepError> {
        let mut v = initial;
        let mut bps = Vec::with_capacity(toggles.len());
        for &at in toggles {
            v = !v;
            bps.push(Breakpoint { at, point: v, right: v });
        }
        Self::from_parts(initial, bps)
    }

    /// Characteristic function of a union of intervals.
    pub fn indicator(set: &[Interval]) -> StepFunction {
        Self::indicator_normalized(&normalize(set.to_vec()))
    }

    fn indicator_normalized(set: &[Interval]) -> StepFunction {
        let leading = set.first().is_some_and(|i| i.lo == Bound::Unbounded);
        let mut ends: Vec<Time> = Vec::with_capacity(set.len() * 2);
        for iv in set {
            ends.extend(iv.lo.value());
            ends.extend(iv.hi.value());
        }
        ends.dedup();
        let mut bps = Vec::with_capacity(ends.len());
        let mut idx = 0;
        for at in ends {
            while idx < set.len() && set[idx].hi.value().is_some_and(|h| h < at) {
                idx += 1;
            }
            let near = &set[idx..(idx + 3).min(set.len())];
            let point = near.iter().any(|i| i.contains(at));
            let right = near.iter().any(|i| i.contains_right_of(at));
            bps.push(Breakpoint { at, point, right });
        }
        Self::canonical(leading, bps)
    }

    pub fn leading(&self) -> bool {
        self.leading
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.bps
    }

    pub fn breakpoint_times(&self) -> impl Iterator<Item = Time> + '_ {
        self.bps.iter().map(|b| b.at)
    }

    /// The value on `(b_last, inf)`; every step function is eventually constant.
    pub fn limit_at_infinity(&self) -> bool {
        self.bps.last().map_or(self.leading, |b| b.right)
    }

    pub fn is_constant(&self) -> bool {
        self.bps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bps.is_empty() && !self.leading
    }

    pub fn value_at(&self, t: Time) -> bool {
        match self.bps.binary_search_by(|b| b.at.cmp(&t)) {
            Ok(i) => self.bps[i].point,
            Err(0) => self.leading,
            Err(i) => self.bps[i - 1].right,
        }
    }

    /// `f(t-0)`
    pub fn left_limit_at(&self, t: Time) -> bool {
        match self.bps.binary_search_by(|b| b.at.cmp(&t)) {
            Ok(0) | Err(0) => self.leading,
            Ok(i) | Err(i) => self.bps[i - 1].right,
        }
    }

    /// `f(t+0)`
    pub fn right_limit_at(&self, t: Time) -> bool {
        match self.bps.binary_search_by(|b| b.at.cmp(&t)) {
            Ok(i) => self.bps[i].right,
            Err(0) => self.leading,
            Err(i) => self.bps[i - 1].right,
        }
    }

    pub fn map(&self, op: impl Fn(bool) -> bool) -> StepFunction {
        let bps = self
            .bps
            .iter()
            .map(|b| Breakpoint { at: b.at, point: op(b.point), right: op(b.right) })
            .collect();
        Self::canonical(op(self.leading), bps)
    }

    /// Pointwise combination of two functions.
    pub fn combine(&self, other: &StepFunction, op: impl Fn(bool, bool) -> bool) -> StepFunction {
        let (a, b) = (&self.bps, &other.bps);
        let (mut i, mut j) = (0, 0);
        let (mut av, mut bv) = (self.leading, other.leading);
        let mut bps = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let at = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.at.min(y.at),
                (Some(x), None) => x.at,
                (None, Some(y)) => y.at,
                (None, None) => unreachable!(),
            };
            let (ap, ar) = match a.get(i) {
                Some(x) if x.at == at => {
                    i += 1;
                    (x.point, x.right)
                }
                _ => (av, av),
            };
            let (bp, br) = match b.get(j) {
                Some(y) if y.at == at => {
                    j += 1;
                    (y.point, y.right)
                }
                _ => (bv, bv),
            };
            bps.push(Breakpoint { at, point: op(ap, bp), right: op(ar, br) });
            av = ar;
            bv = br;
        }
        Self::canonical(op(self.leading, other.leading), bps)
    }

    pub fn not(&self) -> StepFunction {
        self.map(|v| !v)
    }

    pub fn and(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a && b)
    }

    pub fn or(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a || b)
    }

    pub fn xor(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a ^ b)
    }

    /// Pointwise order `self <= other`.
    pub fn le(&self, other: &StepFunction) -> bool {
        self.combine(other, |a, b| a && !b).is_zero()
    }

    /// `t -> f(t - d)`
    pub fn shift(&self, d: Time) -> StepFunction {
        let bps = self.bps.iter().map(|b| Breakpoint { at: b.at + d, ..*b }).collect();
        StepFunction { leading: self.leading, bps }
    }

    /// `t -> f(t-0)`
    pub fn left_limit(&self) -> StepFunction {
        let mut left = self.leading;
        let mut bps = Vec::with_capacity(self.bps.len());
        for b in &self.bps {
            bps.push(Breakpoint { at: b.at, point: left, right: b.right });
            left = b.right;
        }
        Self::canonical(self.leading, bps)
    }

    /// `t -> f(t+0)`
    pub fn right_limit(&self) -> StepFunction {
        let bps = self.bps.iter().map(|b| Breakpoint { point: b.right, ..*b }).collect();
        Self::canonical(self.leading, bps)
    }

    /// Pointwise comparison of each breakpoint value with its left value and
    /// right value; the result is supported on breakpoints only.
    fn point_map(&self, op: impl Fn(bool, bool, bool) -> bool) -> StepFunction {
        let mut left = self.leading;
        let mut bps = Vec::with_capacity(self.bps.len());
        for b in &self.bps {
            bps.push(Breakpoint { at: b.at, point: op(left, b.point, b.right), right: false });
            left = b.right;
        }
        Self::canonical(false, bps)
    }

    pub fn derivative(&self, side: Side) -> StepFunction {
        match side {
            Side::Left => self.point_map(|l, p, _| l ^ p),
            Side::Right => self.point_map(|_, p, r| p ^ r),
        }
    }

    pub fn semi_derivative(&self, kind: SemiKind) -> StepFunction {
        match kind {
            SemiKind::Rise => self.point_map(|l, p, _| !l && p),
            SemiKind::Fall => self.point_map(|l, p, _| l && !p),
            SemiKind::RiseRight => self.point_map(|_, p, r| !p && r),
            SemiKind::FallRight => self.point_map(|_, p, r| p && !r),
        }
    }

    /// The set where the function equals `v`, as a minimal disjoint union of
    /// intervals in increasing order.
    pub fn level_set(&self, v: bool) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut start = (self.leading == v).then_some(Bound::Unbounded);
        for b in &self.bps {
            match (start, b.point == v) {
                (Some(lo), false) => {
                    out.push(Interval::new(lo, Bound::Open(b.at)));
                    start = None;
                }
                (None, true) => start = Some(Bound::Closed(b.at)),
                _ => {}
            }
            match (start, b.right == v) {
                (Some(lo), false) => {
                    out.push(Interval::new(lo, Bound::Closed(b.at)));
                    start = None;
                }
                (None, true) => start = Some(Bound::Open(b.at)),
                _ => {}
            }
        }
        if let Some(lo) = start {
            out.push(Interval::new(lo, Bound::Unbounded));
        }
        out
    }

    pub fn support(&self) -> Vec<Interval> {
        self.level_set(true)
    }

    /// Infimum of the support, or `None` if the function is identically 0.
    /// `Bound::Closed` means the infimum is attained.
    pub fn support_start(&self) -> Option<Bound> {
        self.support().first().map(|i| i.lo)
    }

    /// `t -> AND of f over the window around t`; an empty window gives 1.
    ///
    /// `inf(t) = 0` iff the zero set `Z` meets `t + W`, i.e. iff
    /// `t` lies in the Minkowski sum `Z + (-W)`.
    pub fn inf_over(&self, w: Window) -> StepFunction {
        if w.is_empty() {
            return StepFunction::constant(true);
        }
        Self::indicator_normalized(&minkowski(self.level_set(false), w.reflected())).not()
    }

    /// `t -> OR of f over the window around t`; an empty window gives 0.
    pub fn sup_over(&self, w: Window) -> StepFunction {
        if w.is_empty() {
            return StepFunction::constant(false);
        }
        Self::indicator_normalized(&minkowski(self.level_set(true), w.reflected()))
    }

    /// `t -> AND of f over [t-d, t-d+m]`
    pub fn window_inf(&self, d: Time, m: Time) -> Result<StepFunction, StepError> {
        check_window(d, m)?;
        Ok(self.inf_over(Window::lookback(d, m)))
    }

    /// `t -> OR of f over [t-d, t-d+m]`
    pub fn window_sup(&self, d: Time, m: Time) -> Result<StepFunction, StepError> {
        check_window(d, m)?;
        Ok(self.sup_over(Window::lookback(d, m)))
    }

    /// `t -> AND of f over [t-d, t)`
    pub fn window_inf_halfopen(&self, d: Time) -> Result<StepFunction, StepError> {
        if !d.is_positive() {
            return Err(StepError::NonPositiveWindow(d));
        }
        Ok(self.inf_over(Window::closed_open(-d, Time::ZERO)))
    }

    /// `t -> OR of f over [t-d, t)`
    pub fn window_sup_halfopen(&self, d: Time) -> Result<StepFunction, StepError> {
        if !d.is_positive() {
            return Err(StepError::NonPositiveWindow(d));
        }
        Ok(self.sup_over(Window::closed_open(-d, Time::ZERO)))
    }

    /// Right-continuous with no breakpoint before 0.
    pub fn is_signal(&self) -> bool {
        self.bps.iter().all(|b| b.point == b.right && !b.at.is_negative())
    }
}

fn check_window(d: Time, m: Time) -> Result<(), StepError> {
    if m.is_negative() || m > d {
        return Err(StepError::BadWindow { d, m });
    }
    Ok(())
}

fn minkowski(set: Vec<Interval>, (lo, hi): (Bound, Bound)) -> Vec<Interval> {
    normalize(
        set.into_iter()
            .map(|i| Interval::new(i.lo.offset(lo), i.hi.offset(hi)))
            .collect(),
    )
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.leading))?;
        for b in &self.bps {
            write!(f, " |{}: {}{}", b.at, u8::from(b.point), u8::from(b.right))?;
        }
        Ok(())
    }
}

impl fmt::Display for StepFunction {
    /// Writes the support, e.g. `[0, 1] u {2}`, or `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support();
        if s.is_empty() {
            return write!(f, "0");
        }
        for (k, iv) in s.iter().enumerate() {
            if k > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseKind {
    One,
    Zero,
}

/// A maximal pulse: the signal holds one value on `[start, end)` and the
/// other value just before `start` and at `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pulse {
    pub kind: PulseKind,
    pub start: Time,
    pub end: Time,
    pub length: Time,
}

/// A right-continuous step function with every switch at a time >= 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signal(StepFunction);

impl Signal {
    pub fn new(f: StepFunction) -> Result<Signal, StepError> {
        if let Some(b) = f.bps.iter().find(|b| b.point != b.right) {
            return Err(StepError::NotASignal(format!("not right-continuous at {}", b.at)));
        }
        if let Some(b) = f.bps.iter().find(|b| b.at.is_negative()) {
            return Err(StepError::NotASignal(format!("switches at negative time {}", b.at)));
        }
        Ok(Signal(f))
    }

    pub fn constant(v: bool) -> Signal {
        Signal(StepFunction::constant(v))
    }

    pub fn from_toggles(initial: bool, toggles: &[Time]) -> Result<Signal, StepError> {
        Signal::new(StepFunction::from_toggles(initial, toggles)?)
    }

    /// `chi[a, b)` for `0 <= a < b`.
    pub fn pulse(a: Time, b: Time) -> Result<Signal, StepError> {
        Signal::from_toggles(false, &[a, b])
    }

    /// `chi[a, inf)` for `a >= 0`.
    pub fn step_up(a: Time) -> Result<Signal, StepError> {
        Signal::from_toggles(false, &[a])
    }

    /// `chi(-inf, a)` for `a >= 0`.
    pub fn step_down(a: Time) -> Result<Signal, StepError> {
        Signal::from_toggles(true, &[a])
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }

    pub fn into_step(self) -> StepFunction {
        self.0
    }

    /// The value on `(-inf, 0)`, written `x(0-0)`.
    pub fn initial(&self) -> bool {
        self.0.leading
    }

    pub fn toggles(&self) -> Vec<Time> {
        self.0.bps.iter().map(|b| b.at).collect()
    }

    pub fn last_toggle(&self) -> Option<Time> {
        self.0.bps.last().map(|b| b.at)
    }

    pub fn not(&self) -> Signal {
        Signal(self.0.not())
    }

    pub fn and(&self, other: &Signal) -> Signal {
        Signal(self.0.and(&other.0))
    }

    pub fn or(&self, other: &Signal) -> Signal {
        Signal(self.0.or(&other.0))
    }

    pub fn xor(&self, other: &Signal) -> Signal {
        Signal(self.0.xor(&other.0))
    }

    /// `t -> x(t - d)` for `d >= 0`.
    pub fn delayed(&self, d: Time) -> Result<Signal, StepError> {
        if d.is_negative() {
            return Err(StepError::NegativeDelay(d));
        }
        Ok(Signal(self.0.shift(d)))
    }

    pub fn window_inf(&self, d: Time, m: Time) -> Result<Signal, StepError> {
        Ok(Signal(self.0.window_inf(d, m)?))
    }

    pub fn window_sup(&self, d: Time, m: Time) -> Result<Signal, StepError> {
        Ok(Signal(self.0.window_sup(d, m)?))
    }

    /// All maximal pulses, in time order.
    pub fn pulses(&self) -> Vec<Pulse> {
        self.0
            .bps
            .windows(2)
            .map(|w| Pulse {
                kind: if w[0].right { PulseKind::One } else { PulseKind::Zero },
                start: w[0].at,
                end: w[1].at,
                length: w[1].at - w[0].at,
            })
            .collect()
    }
}

impl Deref for Signal {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

impl TryFrom<StepFunction> for Signal {
    type Error = StepError;
    fn try_from(f: StepFunction) -> Result<Signal, StepError> {
        Signal::new(f)
    }
}

impl From<Signal> for StepFunction {
    fn from(s: Signal) -> StepFunction {
        s.0
    }
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signal({self})")
    }
}

impl fmt::Display for Signal {
    /// Toggle notation, e.g. `0 @ 0, 5/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.initial()))?;
        let ts = self.toggles();
        if !ts.is_empty() {
            write!(f, " @ ")?;
            for (k, x) in ts.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::t;

    fn n(k: i128) -> Time {
        Time::int(k)
    }

    fn ind(set: &[Interval]) -> StepFunction {
        StepFunction::indicator(set)
    }

    /// `chi[0,1] xor chi{2}`
    fn example_function() -> StepFunction {
        ind(&[Interval::closed(n(0), n(1)), Interval::point(n(2))])
    }

    #[test]
    fn from_toggles_examples() {
        let f = StepFunction::from_toggles(false, &[n(0), n(2)]).unwrap();
        assert_eq!(f, ind(&[Interval::closed_open(n(0), n(2))]));
        assert_eq!(StepFunction::from_toggles(true, &[]).unwrap(), StepFunction::constant(true));
        let g = StepFunction::from_toggles(false, &[n(1), n(3), t(9, 2)]).unwrap();
        let h = ind(&[Interval::closed_open(n(1), n(3)), Interval::from(t(9, 2))]);
        assert_eq!(g, h);
        assert!(StepFunction::from_toggles(false, &[n(2), n(2)]).is_err());
        assert!(StepFunction::from_toggles(false, &[n(3), n(1)]).is_err());
    }

    #[test]
    fn canonical_form_drops_silent_breakpoints() {
        let bps = vec![
            Breakpoint { at: n(1), point: false, right: false },
            Breakpoint { at: n(2), point: true, right: true },
        ];
        let f = StepFunction::from_parts(false, bps).unwrap();
        assert_eq!(f.breakpoints().len(), 1);
        assert_eq!(f, StepFunction::from_toggles(false, &[n(2)]).unwrap());
    }

    #[test]
    fn pointwise_examples() {
        let a = Signal::pulse(n(0), n(2)).unwrap();
        let b = Signal::pulse(n(1), n(3)).unwrap();
        assert_eq!(a.and(&b), Signal::pulse(n(1), n(2)).unwrap());
        let up = Signal::step_up(n(0)).unwrap();
        assert_eq!(up.not(), Signal::step_down(n(0)).unwrap());
        assert!(a.xor(&a).is_zero());
    }

    #[test]
    fn shift_examples() {
        let up = StepFunction::from_toggles(false, &[n(0)]).unwrap();
        assert_eq!(up.shift(n(2)), StepFunction::from_toggles(false, &[n(2)]).unwrap());
        let early = up.shift(n(-1));
        assert_eq!(early, ind(&[Interval::from(n(-1))]));
        assert!(!early.is_signal());
    }

    #[test]
    fn limits_and_derivatives_of_the_example_function() {
        let f = example_function();
        assert_eq!(f.left_limit(), ind(&[Interval::open_closed(n(0), n(1))]));
        assert_eq!(f.right_limit(), ind(&[Interval::closed_open(n(0), n(1))]));
        assert_eq!(f.derivative(Side::Left), ind(&[Interval::point(n(0)), Interval::point(n(2))]));
        assert_eq!(f.derivative(Side::Right), ind(&[Interval::point(n(1)), Interval::point(n(2))]));
        assert!(!f.is_signal());
        assert!(StepFunction::constant(true).derivative(Side::Left).is_zero());
    }

    #[test]
    fn semi_derivatives_split_the_derivative() {
        let f = example_function();
        assert_eq!(f.semi_derivative(SemiKind::Rise), ind(&[Interval::point(n(0)), Interval::point(n(2))]));
        assert!(f.semi_derivative(SemiKind::Fall).is_zero());
        assert_eq!(f.semi_derivative(SemiKind::FallRight), ind(&[Interval::point(n(1)), Interval::point(n(2))]));
        assert!(f.semi_derivative(SemiKind::RiseRight).is_zero());
    }

    #[test]
    fn window_examples() {
        let up = Signal::step_up(n(0)).unwrap();
        assert_eq!(up.window_inf(n(3), n(1)).unwrap(), Signal::step_up(n(3)).unwrap());
        let p = Signal::pulse(n(0), n(5)).unwrap();
        assert_eq!(p.window_inf(n(2), n(1)).unwrap(), Signal::pulse(n(2), n(6)).unwrap());
        let down = Signal::step_down(n(0)).unwrap();
        assert_eq!(down.window_sup(n(3), n(1)).unwrap(), Signal::step_down(n(3)).unwrap());
        assert!(up.window_inf(n(1), n(2)).is_err());
        assert!(up.window_inf(n(1), n(-1)).is_err());
    }

    #[test]
    fn half_open_window_examples() {
        let down = StepFunction::from_toggles(true, &[n(0)]).unwrap();
        let w = down.window_inf_halfopen(n(2)).unwrap();
        assert_eq!(w, ind(&[Interval::new(Bound::Unbounded, Bound::Closed(n(0)))]));
        assert!(!w.is_signal());
        let up = down.not();
        assert_eq!(up.window_inf_halfopen(n(2)).unwrap(), ind(&[Interval::from(n(2))]));
        assert!(up.window_inf_halfopen(n(0)).is_err());
    }

    #[test]
    fn empty_windows_follow_the_empty_meet_convention() {
        let f = example_function();
        let empty = Window::closed_open(n(1), n(1));
        assert_eq!(f.inf_over(empty), StepFunction::constant(true));
        assert_eq!(f.sup_over(empty), StepFunction::constant(false));
    }

    #[test]
    fn support_and_signal_checks() {
        assert!(!ind(&[Interval::from(n(-1))]).is_signal());
        assert!(!example_function().is_signal());
        let f = example_function();
        assert_eq!(f.support(), vec![Interval::closed(n(0), n(1)), Interval::point(n(2))]);
        assert_eq!(f.to_string(), "[0, 1] u {2}");
        assert_eq!(f.support_start(), Some(Bound::Closed(n(0))));
        assert!(!f.limit_at_infinity());
        assert!(Signal::step_up(n(4)).unwrap().limit_at_infinity());
    }

    #[test]
    fn pulses_of_a_signal() {
        let p = Signal::pulse(n(1), n(3)).unwrap();
        assert_eq!(
            p.pulses(),
            vec![Pulse { kind: PulseKind::One, start: n(1), end: n(3), length: n(2) }]
        );
        let s = Signal::from_toggles(true, &[n(0), t(1, 2), n(2)]).unwrap();
        let ps = s.pulses();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].kind, PulseKind::Zero);
        assert_eq!(ps[0].length, t(1, 2));
        assert_eq!(ps[1].kind, PulseKind::One);
    }

    #[test]
    fn signal_refinement_rejects_invalid_functions() {
        assert!(Signal::new(example_function()).is_err());
        assert!(Signal::new(ind(&[Interval::from(n(-1))])).is_err());
        assert!(Signal::new(ind(&[Interval::closed_open(n(0), n(1))])).is_ok());
        assert!(Signal::from_toggles(false, &[n(1)]).unwrap().delayed(n(-1)).is_err());
    }

    #[test]
    fn signal_display_uses_toggle_notation() {
        let s = Signal::pulse(n(0), t(5, 2)).unwrap();
        assert_eq!(s.to_string(), "0 @ 0, 5/2");
        assert_eq!(Signal::constant(true).to_string(), "1");
    }

    #[test]
    fn value_queries() {
        let f = example_function();
        assert!(!f.value_at(n(-1)));
        assert!(f.value_at(n(0)));
        assert!(!f.left_limit_at(n(0)));
        assert!(f.right_limit_at(n(0)));
        assert!(f.value_at(n(1)));
        assert!(!f.right_limit_at(n(1)));
        assert!(f.value_at(n(2)));
        assert!(!f.left_limit_at(n(2)));
        assert!(!f.value_at(t(5, 2)));
    }
}
