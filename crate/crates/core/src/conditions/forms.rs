//! Alternative, independently written formulations of the same conditions.
//! Each function decides membership on its own; they exist so that the
//! equivalences between formulations can be tested rather than assumed.

use super::{eq, le, AicParams, BdcParams, CheckReport, Clause, RicParams, Violation};
use crate::stepfn::{SemiKind, Side, Signal, StepFunction, Window};
use crate::time::Time;

fn win_inf(u: &StepFunction, d: Time, m: Time) -> StepFunction {
    u.window_inf(d, m).expect("0 <= m <= d")
}

fn win_sup(u: &StepFunction, d: Time, m: Time) -> StepFunction {
    u.window_sup(d, m).expect("0 <= m <= d")
}

/// Deterministic bounded delays with relative inertia (shared parameters).
pub mod dbridc {
    use super::*;

    struct Parts {
        /// AND of u over `[t-d_r, t-d_r+m_r]`.
        a: StepFunction,
        /// AND of not u over `[t-d_f, t-d_f+m_f]`.
        b0: StepFunction,
        x_left: StepFunction,
    }

    fn parts(u: &Signal, x: &Signal, p: &BdcParams) -> Parts {
        Parts { a: win_inf(u, p.d_r, p.m_r), b0: win_inf(&u.not(), p.d_f, p.m_f), x_left: x.left_limit() }
    }

    /// Bounds plus relative inertia with the same four parameters.
    pub fn form_a(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let upper = win_sup(u, p.d_f, p.m_f);
        le(Clause::LowerBound, &ps.a, x)
            .merge(le(Clause::UpperBound, x, &upper))
            .merge(le(Clause::RisingCause, &x.semi_derivative(SemiKind::Rise), &ps.a))
            .merge(le(Clause::FallingCause, &x.semi_derivative(SemiKind::Fall), &ps.b0))
    }

    /// `not x(t-0) x(t) = not x(t-0) a(t)` and `x(t-0) not x(t) = x(t-0) b0(t)`.
    pub fn form_b(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let nxl = ps.x_left.not();
        eq(Clause::RisingEquation, &nxl.and(x), &nxl.and(&ps.a))
            .merge(eq(Clause::FallingEquation, &ps.x_left.and(&x.not()), &ps.x_left.and(&ps.b0)))
    }

    /// `x(t) = 1` where `a`, `0` where `b0`, `x(t-0)` otherwise.
    pub fn form_d(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let rhs = ps.a.or(&ps.b0.not().and(&ps.x_left));
        eq(Clause::Output, x, &rhs)
    }

    /// `x(t) = a(t) or x(t-0) * OR of u over [t-d_f, t-d_f+m_f]`.
    pub fn form_e(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let rhs = ps.a.or(&ps.x_left.and(&win_sup(u, p.d_f, p.m_f)));
        eq(Clause::Output, x, &rhs)
    }

    /// `Dx(t) = not x(t-0) a(t) or x(t-0) b0(t)`.
    pub fn form_f(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let rhs = ps.x_left.not().and(&ps.a).or(&ps.x_left.and(&ps.b0));
        eq(Clause::Switching, &x.derivative(Side::Left), &rhs)
    }

    /// The four-term sum that must be identically 1.
    pub fn form_g(u: &Signal, x: &Signal, p: &BdcParams) -> CheckReport {
        let ps = parts(u, x, p);
        let (xl, nxl, nx) = (&ps.x_left, ps.x_left.not(), x.not());
        let na = ps.a.not();
        let nb0 = ps.b0.not();
        let sum = nxl
            .and(x)
            .and(&ps.a)
            .or(&xl.and(&nx).and(&ps.b0))
            .or(&nxl.and(&nx).and(&na))
            .or(&xl.and(x).and(&nb0));
        le(Clause::Output, &StepFunction::constant(true), &sum)
    }
}

/// Absolute inertia.
pub mod aic {
    use super::*;

    fn ahead(d: Time) -> Window {
        Window::closed(Time::ZERO, d)
    }

    /// `D01x <= AND of x over [t, t+delta_r]`, `D10x <= AND of not x over [t, t+delta_f]`.
    pub fn form_a(x: &Signal, a: &AicParams) -> CheckReport {
        le(Clause::RisingInertia, &x.semi_derivative(SemiKind::Rise), &x.inf_over(ahead(a.delta_r))).merge(le(
            Clause::FallingInertia,
            &x.semi_derivative(SemiKind::Fall),
            &x.not().inf_over(ahead(a.delta_f)),
        ))
    }

    /// As `form_a` with both sides multiplied by the relevant `x(t-0)` factor.
    pub fn form_b(x: &Signal, a: &AicParams) -> CheckReport {
        let xl = x.left_limit();
        let nxl = xl.not();
        le(Clause::RisingInertia, &nxl.and(x), &nxl.and(&x.inf_over(ahead(a.delta_r))))
            .merge(le(Clause::FallingInertia, &xl.and(&x.not()), &xl.and(&x.not().inf_over(ahead(a.delta_f)))))
    }

    /// The equalities `not x(t-0) x(t) = not x(t-0) * AND of x over [t, t+delta_r]` and dual.
    pub fn form_c(x: &Signal, a: &AicParams) -> CheckReport {
        let xl = x.left_limit();
        let nxl = xl.not();
        eq(Clause::RisingInertia, &nxl.and(x), &nxl.and(&x.inf_over(ahead(a.delta_r))))
            .merge(eq(Clause::FallingInertia, &xl.and(&x.not()), &xl.and(&x.not().inf_over(ahead(a.delta_f)))))
    }

    /// Looking backwards: before rising, x was 0 on `[t-delta_f-0, t)`; before
    /// falling, x was 1 on `[t-delta_r-0, t)`.
    pub fn form_d(x: &Signal, a: &AicParams) -> CheckReport {
        let behind = |d: Time| Window::closed_open(-d, Time::ZERO);
        let xl = x.left_limit();
        let nx = x.not();
        let rise_ok = xl.not().shift(a.delta_f).and(&nx.inf_over(behind(a.delta_f)));
        let fall_ok = xl.shift(a.delta_r).and(&x.inf_over(behind(a.delta_r)));
        le(Clause::RisingInertia, &x.semi_derivative(SemiKind::Rise), &rise_ok).merge(le(
            Clause::FallingInertia,
            &x.semi_derivative(SemiKind::Fall),
            &fall_ok,
        ))
    }

    /// Scan consecutive switches: a rise followed by a fall must be more than
    /// `delta_r` apart, a fall followed by a rise more than `delta_f`.
    pub fn form_e(x: &Signal, a: &AicParams) -> CheckReport {
        let toggles = x.toggles();
        for w in toggles.windows(2) {
            let (d, d2) = (w[0], w[1]);
            let rising = x.value_at(d);
            let (limit, clause) =
                if rising { (a.delta_r, Clause::RisingInertia) } else { (a.delta_f, Clause::FallingInertia) };
            if d2 - d <= limit {
                return CheckReport::fail(Violation { clause, time: Some(d), attained: true });
            }
        }
        CheckReport::pass()
    }
}

/// Bounded delays with relative inertia written with minimum and maximum
/// window parameters: for rising switches
/// `not x(t-0) * AND_max(u) <= not x(t-0) x(t) <= not x(t-0) * AND_min(u)`,
/// dually for falling switches with `not u`.
pub mod bridc {
    use super::*;

    /// `max` carries `(m_max, d_max)` per edge, `min` carries `(m_min, d_min)`.
    pub fn form_minmax(u: &Signal, x: &Signal, max: &BdcParams, min: &BdcParams) -> CheckReport {
        let xl = x.left_limit();
        let nxl = xl.not();
        let nu = u.not();
        let rise = nxl.and(x);
        let fall = xl.and(&x.not());
        le(Clause::LowerBound, &nxl.and(&win_inf(u, max.d_r, max.m_r)), &rise)
            .merge(le(Clause::RisingCause, &rise, &nxl.and(&win_inf(u, min.d_r, min.m_r))))
            .merge(le(Clause::UpperBound, &xl.and(&win_inf(&nu, max.d_f, max.m_f)), &fall))
            .merge(le(Clause::FallingCause, &fall, &xl.and(&win_inf(&nu, min.d_f, min.m_f))))
    }

    /// The parameter constraints under which the min/max form and the
    /// bounds-plus-inertia form coincide:
    /// `d_f-m_f <= delta_f-mu_f <= delta_r <= d_r` and
    /// `d_r-m_r <= delta_r-mu_r <= delta_f <= d_f`.
    pub fn minmax_applicable(p: &BdcParams, r: &RicParams) -> bool {
        let c = |xs: [Time; 4]| xs.windows(2).all(|w| w[0] <= w[1]);
        c([p.d_f - p.m_f, r.delta_f - r.mu_f, r.delta_r, p.d_r]) && c([p.d_r - p.m_r, r.delta_r - r.mu_r, r.delta_f, p.d_f])
    }
}
