//! Exact calculus of binary signals over rational time, delay conditions for
//! asynchronous circuits, solvers, and an event-driven netlist simulator.

// Errors carry exact rational times, which makes them wide.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod circuit;
pub mod conditions;
pub mod format;
pub mod solvers;
pub mod stepfn;
pub mod time;
pub mod vcd;

pub use stepfn::{Bound, Breakpoint, Interval, Pulse, PulseKind, SemiKind, Side, Signal, StepError, StepFunction, Window};
pub use conditions::{
    AicParams, BdcParams, CheckReport, Clause, DelayModel, MembershipChecker, ParamError, RicParams, Violation,
};
pub use circuit::{Diagnostic, Element, GateKind, Netlist, WaveformSet};
pub use time::{t, Time, TimeParseError};
