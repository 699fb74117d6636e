//! Delay conditions: parameter types, consistency predicates, and exact
//! membership checkers for pairs `(u, x)` of input and output signals.

pub mod forms;
mod syntax;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::stepfn::{Bound, SemiKind, Side, Signal, StepFunction, Window};
use crate::time::Time;

pub use syntax::ModelParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: Time },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: Time },
    #[error("{memory}={m} exceeds {delay}={d}")]
    MemoryExceedsDelay { memory: &'static str, m: Time, delay: &'static str, d: Time },
    #[error("CC_BDC fails: need dr-mr <= df and df-mf <= dr (mr={m_r} dr={d_r} mf={m_f} df={d_f})")]
    CcBdc { m_r: Time, d_r: Time, m_f: Time, d_f: Time },
    #[error("CC_BAIDC fails: deltar+deltaf={sum} exceeds mr+mf={memories}")]
    CcBaidc { sum: Time, memories: Time },
    #[error("CC_BRIDC fails: no clause holds for one of the edges")]
    CcBridc,
    #[error("{0}")]
    Other(String),
}

fn non_negative(name: &'static str, value: Time) -> Result<(), ParamError> {
    if value.is_negative() {
        return Err(ParamError::Negative { name, value });
    }
    Ok(())
}

fn positive(name: &'static str, value: Time) -> Result<(), ParamError> {
    if !value.is_positive() {
        return Err(ParamError::NonPositive { name, value });
    }
    Ok(())
}

fn memory_le_delay(memory: &'static str, m: Time, delay: &'static str, d: Time) -> Result<(), ParamError> {
    non_negative(memory, m)?;
    if m > d {
        return Err(ParamError::MemoryExceedsDelay { memory, m, delay, d });
    }
    Ok(())
}

/// Memories and upper delay bounds of a bounded delay condition.
/// The lower bounds `d_f - m_f` (rising) and `d_r - m_r` (falling) are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BdcParams {
    pub m_r: Time,
    pub d_r: Time,
    pub m_f: Time,
    pub d_f: Time,
}

impl BdcParams {
    pub fn new(m_r: Time, d_r: Time, m_f: Time, d_f: Time) -> Result<BdcParams, ParamError> {
        let p = BdcParams { m_r, d_r, m_f, d_f };
        p.validate()?;
        Ok(p)
    }

    /// `(0, d, 0, d)`: the parameters of the pure delay by `d`.
    pub fn fixed(d: Time) -> BdcParams {
        BdcParams { m_r: Time::ZERO, d_r: d, m_f: Time::ZERO, d_f: d }
    }

    /// `(d, d, d, d)`.
    pub fn uniform(d: Time) -> BdcParams {
        BdcParams { m_r: d, d_r: d, m_f: d, d_f: d }
    }

    /// `0 <= m_r <= d_r` and `0 <= m_f <= d_f`.
    pub fn validate(&self) -> Result<(), ParamError> {
        memory_le_delay("mr", self.m_r, "dr", self.d_r)?;
        memory_le_delay("mf", self.m_f, "df", self.d_f)
    }

    pub fn rise_lower(&self) -> Time {
        self.d_f - self.m_f
    }

    pub fn fall_lower(&self) -> Time {
        self.d_r - self.m_r
    }

    fn require_consistent(&self) -> Result<(), ParamError> {
        self.validate()?;
        if !cc_bdc(self) {
            return Err(ParamError::CcBdc { m_r: self.m_r, d_r: self.d_r, m_f: self.m_f, d_f: self.d_f });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AicParams {
    pub delta_r: Time,
    pub delta_f: Time,
}

impl AicParams {
    pub fn new(delta_r: Time, delta_f: Time) -> Result<AicParams, ParamError> {
        let a = AicParams { delta_r, delta_f };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        non_negative("deltar", self.delta_r)?;
        non_negative("deltaf", self.delta_f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RicParams {
    pub mu_r: Time,
    pub delta_r: Time,
    pub mu_f: Time,
    pub delta_f: Time,
}

impl RicParams {
    pub fn new(mu_r: Time, delta_r: Time, mu_f: Time, delta_f: Time) -> Result<RicParams, ParamError> {
        let r = RicParams { mu_r, delta_r, mu_f, delta_f };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        memory_le_delay("mur", self.mu_r, "deltar", self.delta_r)?;
        memory_le_delay("muf", self.mu_f, "deltaf", self.delta_f)
    }

    /// The same four numbers read as bounded-delay parameters.
    pub fn as_bdc(&self) -> BdcParams {
        BdcParams { m_r: self.mu_r, d_r: self.delta_r, m_f: self.mu_f, d_f: self.delta_f }
    }

    pub fn from_bdc(p: &BdcParams) -> RicParams {
        RicParams { mu_r: p.m_r, delta_r: p.d_r, mu_f: p.m_f, delta_f: p.d_f }
    }
}

/// One delay condition with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DelayModel {
    /// Stability only: equal final values.
    Sc,
    /// `x(t) = u(t - d)`.
    Fixed(Time),
    Bdc(BdcParams),
    /// Bounds over the half-open windows `[t-d_r, t)` and `[t-d_f, t)`.
    BdcPrime { d_r: Time, d_f: Time },
    /// `x(t) = AND of u over [t-d, t-d+m]`.
    WindowAnd { m: Time, d: Time },
    /// `x(t) = OR of u over [t-d, t-d+m]`.
    WindowOr { m: Time, d: Time },
    Aic(AicParams),
    /// Inertia over `[t, t+delta)` instead of `[t, t+delta]`.
    AicPrime(AicParams),
    Ric(RicParams),
    /// Input windows `[t-delta, t)` instead of `[t-delta, t-delta+mu]`; `mu` is unused.
    RicPrime(RicParams),
    Baidc(BdcParams, AicParams),
    Bridc(BdcParams, RicParams),
    Dbridc(BdcParams),
    /// `Dx(t) = (x(t-0) xor u(t-0)) * not OR of Du over (t-d, t)`.
    SdbridcPrime(Time),
}

impl DelayModel {
    /// Parameter invariants and, where the condition requires one, its
    /// consistency predicate.
    pub fn validate(&self) -> Result<(), ParamError> {
        match self {
            DelayModel::Sc => Ok(()),
            DelayModel::Fixed(d) => non_negative("d", *d),
            DelayModel::Bdc(p) | DelayModel::Dbridc(p) => p.require_consistent(),
            DelayModel::BdcPrime { d_r, d_f } => {
                positive("dr", *d_r)?;
                positive("df", *d_f)
            }
            DelayModel::WindowAnd { m, d } | DelayModel::WindowOr { m, d } => memory_le_delay("m", *m, "d", *d),
            DelayModel::Aic(a) | DelayModel::AicPrime(a) => a.validate(),
            DelayModel::Ric(r) | DelayModel::RicPrime(r) => r.validate(),
            DelayModel::Baidc(p, a) => {
                p.require_consistent()?;
                a.validate()?;
                if !cc_baidc(p, a) {
                    return Err(ParamError::CcBaidc { sum: a.delta_r + a.delta_f, memories: p.m_r + p.m_f });
                }
                Ok(())
            }
            DelayModel::Bridc(p, r) => {
                p.validate()?;
                r.validate()?;
                if cc_bridc_edgewise(p, r).is_none() {
                    return Err(ParamError::CcBridc);
                }
                Ok(())
            }
            DelayModel::SdbridcPrime(d) => positive("d", *d),
        }
    }

    /// Parameter invariants only (signs, memories within delays), without
    /// the consistency predicates.
    pub fn validate_params(&self) -> Result<(), ParamError> {
        match self {
            DelayModel::Bdc(p) | DelayModel::Dbridc(p) => p.validate(),
            DelayModel::Baidc(p, a) => {
                p.validate()?;
                a.validate()
            }
            DelayModel::Bridc(p, r) => {
                p.validate()?;
                r.validate()
            }
            _ => self.validate(),
        }
    }

    /// Whether the output is a function of the input (the simulatable models).
    pub fn is_deterministic(&self) -> bool {
        matches!(
            self,
            DelayModel::Fixed(_)
                | DelayModel::WindowAnd { .. }
                | DelayModel::WindowOr { .. }
                | DelayModel::Dbridc(_)
                | DelayModel::SdbridcPrime(_)
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            DelayModel::Sc => "sc",
            DelayModel::Fixed(_) => "fixed",
            DelayModel::Bdc(_) => "bdc",
            DelayModel::BdcPrime { .. } => "bdcprime",
            DelayModel::WindowAnd { .. } => "windowand",
            DelayModel::WindowOr { .. } => "windowor",
            DelayModel::Aic(_) => "aic",
            DelayModel::AicPrime(_) => "aicprime",
            DelayModel::Ric(_) => "ric",
            DelayModel::RicPrime(_) => "ricprime",
            DelayModel::Baidc(..) => "baidc",
            DelayModel::Bridc(..) => "bridc",
            DelayModel::Dbridc(_) => "dbridc",
            DelayModel::SdbridcPrime(_) => "sdbridc",
        }
    }
}

/// Which inequality or equality of a condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    /// Final values of input and output differ.
    Stability,
    /// Output below the lower bound.
    LowerBound,
    /// Output above the upper bound.
    UpperBound,
    /// A rising output switch not held long enough afterwards.
    RisingInertia,
    FallingInertia,
    /// A rising output switch the input does not justify.
    RisingCause,
    FallingCause,
    /// Equation for rising switches (`not x(t-0) * x(t) = ...`).
    RisingEquation,
    FallingEquation,
    /// Output differs from the value the condition determines.
    Output,
    /// `Dx` differs from the value the condition determines.
    Switching,
    /// A gate output differs from the gate function of its inputs.
    Gate,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Stability => "stability",
            Clause::LowerBound => "lower bound",
            Clause::UpperBound => "upper bound",
            Clause::RisingInertia => "rising inertia",
            Clause::FallingInertia => "falling inertia",
            Clause::RisingCause => "rising cause",
            Clause::FallingCause => "falling cause",
            Clause::RisingEquation => "rising equation",
            Clause::FallingEquation => "falling equation",
            Clause::Output => "output equation",
            Clause::Switching => "switching equation",
            Clause::Gate => "gate equation",
        };
        f.write_str(s)
    }
}

/// Where a condition first fails: the infimum of the violation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    /// `None` when the violation set is unbounded below.
    pub time: Option<Time>,
    /// Whether `time` itself belongs to the violation set.
    pub attained: bool,
}

impl Violation {
    fn from_set(clause: Clause, set: &StepFunction) -> Option<Violation> {
        set.support_start().map(|b| match b {
            Bound::Unbounded => Violation { clause, time: None, attained: false },
            Bound::Closed(t) => Violation { clause, time: Some(t), attained: true },
            Bound::Open(t) => Violation { clause, time: Some(t), attained: false },
        })
    }

    fn order(&self, other: &Violation) -> Ordering {
        match (self.time, other.time) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b).then(other.attained.cmp(&self.attained)),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.time, self.attained) {
            (None, _) => write!(f, "{} violated from -inf", self.clause),
            (Some(t), true) => write!(f, "{} violated at t={}", self.clause, t),
            (Some(t), false) => write!(f, "{} violated just after t={}", self.clause, t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub first_violation: Option<Violation>,
}

impl CheckReport {
    pub fn pass() -> CheckReport {
        CheckReport { ok: true, first_violation: None }
    }

    pub fn fail(v: Violation) -> CheckReport {
        CheckReport { ok: false, first_violation: Some(v) }
    }

    /// Combine two reports, keeping the earlier violation.
    pub fn merge(self, other: CheckReport) -> CheckReport {
        match (self.first_violation, other.first_violation) {
            (None, None) => CheckReport::pass(),
            (Some(a), None) | (None, Some(a)) => CheckReport::fail(a),
            (Some(a), Some(b)) => CheckReport::fail(if b.order(&a) == Ordering::Less { b } else { a }),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_violation {
            None => f.write_str("ok"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// `lhs <= rhs` everywhere.
pub(crate) fn le(clause: Clause, lhs: &StepFunction, rhs: &StepFunction) -> CheckReport {
    verdict(clause, &lhs.and(&rhs.not()))
}

/// `lhs = rhs` everywhere.
pub(crate) fn eq(clause: Clause, lhs: &StepFunction, rhs: &StepFunction) -> CheckReport {
    verdict(clause, &lhs.xor(rhs))
}

fn verdict(clause: Clause, bad: &StepFunction) -> CheckReport {
    match Violation::from_set(clause, bad) {
        None => CheckReport::pass(),
        Some(v) => CheckReport::fail(v),
    }
}

/// Window `[0, delta]` ahead of `t`.
fn ahead(delta: Time) -> Window {
    Window::closed(Time::ZERO, delta)
}

fn rises(x: &StepFunction) -> StepFunction {
    x.semi_derivative(SemiKind::Rise)
}

fn falls(x: &StepFunction) -> StepFunction {
    x.semi_derivative(SemiKind::Fall)
}

fn lookback_inf(u: &StepFunction, d: Time, m: Time) -> StepFunction {
    u.window_inf(d, m).expect("window parameters validated")
}

fn lookback_sup(u: &StepFunction, d: Time, m: Time) -> StepFunction {
    u.window_sup(d, m).expect("window parameters validated")
}

// ---------------------------------------------------------------------------
// Consistency predicates and parameter algebra

/// `d_r - m_r <= d_f` and `d_f - m_f <= d_r`.
pub fn cc_bdc(p: &BdcParams) -> bool {
    p.d_r - p.m_r <= p.d_f && p.d_f - p.m_f <= p.d_r
}

/// `cc_bdc(p)` and `delta_r + delta_f <= m_r + m_f`.
pub fn cc_baidc(p: &BdcParams, a: &AicParams) -> bool {
    cc_bdc(p) && a.delta_r + a.delta_f <= p.m_r + p.m_f
}

/// The four double-inequality chains under which bounded delays with relative
/// inertia are solvable for every input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridcClause {
    A,
    B,
    C,
    D,
}

impl fmt::Display for BridcClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BridcClause::A => "a",
            BridcClause::B => "b",
            BridcClause::C => "c",
            BridcClause::D => "d",
        };
        f.write_str(s)
    }
}

fn chain(xs: &[Time]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

/// One side of a clause, written for the rising edge; the falling edge is the
/// same chain with `r` and `f` exchanged.
fn bridc_edge(c: BridcClause, m_r: Time, d_r: Time, m_f: Time, d_f: Time, mu_r: Time, delta_r: Time) -> bool {
    match c {
        BridcClause::A => chain(&[d_f - m_f, delta_r, d_r, delta_r - mu_r + m_r]),
        BridcClause::B => chain(&[d_r - m_r + mu_r, delta_r, d_f - m_f, d_r]),
        BridcClause::C => chain(&[d_f - m_f, delta_r, d_r - m_r + mu_r, d_r]),
        BridcClause::D => chain(&[delta_r, d_f - m_f, delta_r + m_r - mu_r, d_r]),
    }
}

fn bridc_rising(c: BridcClause, p: &BdcParams, r: &RicParams) -> bool {
    bridc_edge(c, p.m_r, p.d_r, p.m_f, p.d_f, r.mu_r, r.delta_r)
}

fn bridc_falling(c: BridcClause, p: &BdcParams, r: &RicParams) -> bool {
    bridc_edge(c, p.m_f, p.d_f, p.m_r, p.d_r, r.mu_f, r.delta_f)
}

const BRIDC_CLAUSES: [BridcClause; 4] = [BridcClause::A, BridcClause::B, BridcClause::C, BridcClause::D];

/// The first clause whose rising and falling chains both hold, if any.
pub fn cc_bridc(p: &BdcParams, r: &RicParams) -> Option<BridcClause> {
    BRIDC_CLAUSES.into_iter().find(|&c| bridc_rising(c, p, r) && bridc_falling(c, p, r))
}

/// The edge-wise reading of the same chains: some clause holds for the rising
/// edge and some (possibly different) clause holds for the falling edge.
/// Equivalently `max(d_f-m_f, delta_r) <= min(d_r, delta_r-mu_r+m_r)` and dually.
pub fn cc_bridc_edgewise(p: &BdcParams, r: &RicParams) -> Option<(BridcClause, BridcClause)> {
    let rise = BRIDC_CLAUSES.into_iter().find(|&c| bridc_rising(c, p, r))?;
    let fall = BRIDC_CLAUSES.into_iter().find(|&c| bridc_falling(c, p, r))?;
    Some((rise, fall))
}

/// No accepted traces with switches arbitrarily close together:
/// `delta_f > delta_r - mu_r` and `delta_r > delta_f - mu_f`.
pub fn zeno_free(r: &RicParams) -> bool {
    r.delta_f > r.delta_r - r.mu_r && r.delta_r > r.delta_f - r.mu_f
}

/// Serial connection: parameters add component-wise.
pub fn compose_bdc(p: &BdcParams, q: &BdcParams) -> Result<BdcParams, ParamError> {
    p.require_consistent()?;
    q.require_consistent()?;
    Ok(BdcParams { m_r: p.m_r + q.m_r, d_r: p.d_r + q.d_r, m_f: p.m_f + q.m_f, d_f: p.d_f + q.d_f })
}

/// Whether every solution under `p` is a solution under `q`:
/// `d'_r-m'_r <= d_r-m_r <= d_f <= d'_f` and `d'_f-m'_f <= d_f-m_f <= d_r <= d'_r`.
pub fn bdc_includes(p: &BdcParams, q: &BdcParams) -> bool {
    chain(&[q.d_r - q.m_r, p.d_r - p.m_r, p.d_f, q.d_f]) && chain(&[q.d_f - q.m_f, p.d_f - p.m_f, p.d_r, q.d_r])
}

/// Null memories.
pub fn bdc_deterministic(p: &BdcParams) -> bool {
    p.m_r.is_zero() && p.m_f.is_zero()
}

/// Invariant under complementing input and output.
pub fn bdc_symmetric(p: &BdcParams) -> bool {
    p.d_r == p.d_f && p.m_r == p.m_f
}

/// Bounded delay parameters from minimum and maximum rising and falling delays.
pub fn convert_minmax(d_r_min: Time, d_r_max: Time, d_f_min: Time, d_f_max: Time) -> Result<BdcParams, ParamError> {
    non_negative("dr_min", d_r_min)?;
    non_negative("df_min", d_f_min)?;
    let order = |lo: &'static str, a: Time, hi: &'static str, b: Time| {
        if a > b {
            Err(ParamError::Other(format!("{lo}={a} exceeds {hi}={b}")))
        } else {
            Ok(())
        }
    };
    order("dr_min", d_r_min, "dr_max", d_r_max)?;
    order("df_min", d_f_min, "df_max", d_f_max)?;
    order("dr_min", d_r_min, "df_max", d_f_max)?;
    order("df_min", d_f_min, "dr_max", d_r_max)?;
    BdcParams::new(d_r_max - d_f_min, d_r_max, d_f_max - d_r_min, d_f_max)
}

// ---------------------------------------------------------------------------
// Trace checks

/// Equal final values.
pub fn check_sc(u: &Signal, x: &Signal) -> CheckReport {
    if u.limit_at_infinity() == x.limit_at_infinity() {
        return CheckReport::pass();
    }
    // Report the instant from which both have settled.
    let last = [u.last_toggle(), x.last_toggle()].into_iter().flatten().max();
    CheckReport::fail(Violation { clause: Clause::Stability, time: last, attained: last.is_some() })
}

/// `D01x(t) <= u(t-d_r)` and `D10x(t) <= not u(t-d_f)`.
pub fn check_constancy(u: &Signal, x: &Signal, d_r: Time, d_f: Time) -> Result<CheckReport, ParamError> {
    non_negative("dr", d_r)?;
    non_negative("df", d_f)?;
    Ok(le(Clause::RisingCause, &rises(x), &u.shift(d_r))
        .merge(le(Clause::FallingCause, &falls(x), &u.not().shift(d_f))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionKind {
    Rising,
    Falling,
    Unclassified,
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransitionKind::Rising => "rising",
            TransitionKind::Falling => "falling",
            TransitionKind::Unclassified => "unclassified",
        })
    }
}

/// Distance from the last input switch to the last output switch, or `None`
/// when the pair is not stable.
pub fn transmission_delay(u: &Signal, x: &Signal) -> Option<(Time, TransitionKind)> {
    if !check_sc(u, x).ok {
        return None;
    }
    let (t1, t2) = (u.last_toggle(), x.last_toggle());
    let d = (t2.unwrap_or(Time::ZERO) - t1.unwrap_or(Time::ZERO)).max(Time::ZERO);
    let kind = match (t1, t2) {
        (Some(a), Some(b)) => {
            let (ur, xr) = (u.value_at(a), x.value_at(b));
            match (ur, xr) {
                (true, true) => TransitionKind::Rising,
                (false, false) => TransitionKind::Falling,
                _ => TransitionKind::Unclassified,
            }
        }
        _ => TransitionKind::Unclassified,
    };
    Some((d, kind))
}

/// Exact membership of `(u, x)` in the condition `model`.
pub fn check_membership(u: &Signal, x: &Signal, model: &DelayModel) -> Result<CheckReport, ParamError> {
    Ok(MembershipChecker::new(u, model)?.check(x))
}

/// Membership checker with the input-dependent parts precomputed, for
/// checking many candidate outputs against one input.
#[derive(Debug, Clone)]
pub struct MembershipChecker {
    model: DelayModel,
    u: Signal,
    prepared: Prepared,
}

#[derive(Debug, Clone)]
enum Prepared {
    Sc,
    /// The output is determined: `x = image`.
    Image(StepFunction),
    Bounds { lower: StepFunction, upper: StepFunction },
    Inertia(Window, Window),
    Causes { rise: StepFunction, fall: StepFunction },
    BoundsInertia { lower: StepFunction, upper: StepFunction, wr: Window, wf: Window },
    BoundsCauses { lower: StepFunction, upper: StepFunction, rise: StepFunction, fall: StepFunction },
    Equations { rise: StepFunction, fall: StepFunction },
    Sdbridc { u_left: StepFunction, quiet: StepFunction },
}

impl MembershipChecker {
    pub fn new(u: &Signal, model: &DelayModel) -> Result<MembershipChecker, ParamError> {
        model.validate()?;
        Ok(Self::prepare(u, model))
    }

    /// Like `new` but accepts parameters that fail the consistency predicate;
    /// membership is still well defined, there may just be no members.
    pub fn without_consistency(u: &Signal, model: &DelayModel) -> Result<MembershipChecker, ParamError> {
        model.validate_params()?;
        Ok(Self::prepare(u, model))
    }

    fn prepare(u: &Signal, model: &DelayModel) -> MembershipChecker {
        let uf: &StepFunction = u;
        let nu = uf.not();
        let prepared = match *model {
            DelayModel::Sc => Prepared::Sc,
            DelayModel::Fixed(d) => Prepared::Image(uf.shift(d)),
            DelayModel::WindowAnd { m, d } => Prepared::Image(lookback_inf(uf, d, m)),
            DelayModel::WindowOr { m, d } => Prepared::Image(lookback_sup(uf, d, m)),
            DelayModel::Bdc(p) => Prepared::Bounds {
                lower: lookback_inf(uf, p.d_r, p.m_r),
                upper: lookback_sup(uf, p.d_f, p.m_f),
            },
            DelayModel::BdcPrime { d_r, d_f } => Prepared::Bounds {
                lower: uf.window_inf_halfopen(d_r).expect("validated"),
                upper: uf.window_sup_halfopen(d_f).expect("validated"),
            },
            DelayModel::Aic(a) => Prepared::Inertia(ahead(a.delta_r), ahead(a.delta_f)),
            DelayModel::AicPrime(a) => Prepared::Inertia(
                Window::closed_open(Time::ZERO, a.delta_r),
                Window::closed_open(Time::ZERO, a.delta_f),
            ),
            DelayModel::Ric(r) => Prepared::Causes {
                rise: lookback_inf(uf, r.delta_r, r.mu_r),
                fall: lookback_inf(&nu, r.delta_f, r.mu_f),
            },
            DelayModel::RicPrime(r) => Prepared::Causes {
                rise: uf.inf_over(Window::closed_open(-r.delta_r, Time::ZERO)),
                fall: nu.inf_over(Window::closed_open(-r.delta_f, Time::ZERO)),
            },
            DelayModel::Baidc(p, a) => Prepared::BoundsInertia {
                lower: lookback_inf(uf, p.d_r, p.m_r),
                upper: lookback_sup(uf, p.d_f, p.m_f),
                wr: ahead(a.delta_r),
                wf: ahead(a.delta_f),
            },
            DelayModel::Bridc(p, r) => Prepared::BoundsCauses {
                lower: lookback_inf(uf, p.d_r, p.m_r),
                upper: lookback_sup(uf, p.d_f, p.m_f),
                rise: lookback_inf(uf, r.delta_r, r.mu_r),
                fall: lookback_inf(&nu, r.delta_f, r.mu_f),
            },
            DelayModel::Dbridc(p) => Prepared::Equations {
                rise: lookback_inf(uf, p.d_r, p.m_r),
                fall: lookback_inf(&nu, p.d_f, p.m_f),
            },
            DelayModel::SdbridcPrime(d) => {
                let du = uf.derivative(Side::Left);
                Prepared::Sdbridc { u_left: uf.left_limit(), quiet: du.sup_over(Window::open(-d, Time::ZERO)).not() }
            }
        };
        MembershipChecker { model: *model, u: u.clone(), prepared }
    }

    pub fn model(&self) -> &DelayModel {
        &self.model
    }

    pub fn input(&self) -> &Signal {
        &self.u
    }

    pub fn check(&self, x: &Signal) -> CheckReport {
        let xf: &StepFunction = x;
        match &self.prepared {
            Prepared::Sc => check_sc(&self.u, x),
            Prepared::Image(img) => eq(Clause::Output, xf, img),
            Prepared::Bounds { lower, upper } => bounds(xf, lower, upper),
            Prepared::Inertia(wr, wf) => inertia(xf, *wr, *wf),
            Prepared::Causes { rise, fall } => causes(xf, rise, fall),
            Prepared::BoundsInertia { lower, upper, wr, wf } => {
                bounds(xf, lower, upper).merge(inertia(xf, *wr, *wf))
            }
            Prepared::BoundsCauses { lower, upper, rise, fall } => {
                bounds(xf, lower, upper).merge(causes(xf, rise, fall))
            }
            Prepared::Equations { rise, fall } => {
                let xl = xf.left_limit();
                let nxl = xl.not();
                eq(Clause::RisingEquation, &rises(xf), &nxl.and(rise))
                    .merge(eq(Clause::FallingEquation, &falls(xf), &xl.and(fall)))
            }
            Prepared::Sdbridc { u_left, quiet } => {
                let rhs = xf.left_limit().xor(u_left).and(quiet);
                eq(Clause::Switching, &xf.derivative(Side::Left), &rhs)
            }
        }
    }
}

fn bounds(x: &StepFunction, lower: &StepFunction, upper: &StepFunction) -> CheckReport {
    le(Clause::LowerBound, lower, x).merge(le(Clause::UpperBound, x, upper))
}

fn inertia(x: &StepFunction, wr: Window, wf: Window) -> CheckReport {
    le(Clause::RisingInertia, &rises(x), &x.inf_over(wr))
        .merge(le(Clause::FallingInertia, &falls(x), &x.not().inf_over(wf)))
}

fn causes(x: &StepFunction, rise: &StepFunction, fall: &StepFunction) -> CheckReport {
    le(Clause::RisingCause, &rises(x), rise).merge(le(Clause::FallingCause, &falls(x), fall))
}
