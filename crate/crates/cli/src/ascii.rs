//! Text waveforms. Each net takes two rows: `_` on the upper row while high,
//! `_` on the lower row while low, and `|` on the lower row in the column
//! where a switch takes effect. That column already shows the attained
//! value, so a rising edge reads `|` under `_` and a falling edge `|` under a
//! blank. The first column holds the value before time 0.
//!
//! When the exact resolution does not fit in `max_width`, columns are
//! coarsened (never below one column per time unit) and a column containing
//! a switch away from its left edge is drawn as `*`.

use delaycalc::{Signal, Time, WaveformSet};

/// Columns per time unit: the common denominator of every switch time and the
/// horizon, reduced until the picture fits.
fn columns_per_unit(w: &WaveformSet, max_width: usize) -> i128 {
    let all: Vec<Time> = w.signals.values().flat_map(|s| s.toggles()).chain([w.horizon]).collect();
    let exact = Time::common_denominator(&all);
    let fits = |k: i128| w.horizon.times(k).numer() / w.horizon.times(k).denom() + 2 <= max_width as i128;
    if fits(exact) {
        return exact;
    }
    let mut k = exact;
    while k > 1 && !fits(k) {
        k /= 2;
    }
    k
}

fn cell(s: &Signal, start: Time, end: Time) -> (char, char) {
    let v = s.value_at(start);
    let inside = s.toggles().into_iter().filter(|&t| t >= start && t < end).collect::<Vec<_>>();
    let top = if v { '_' } else { ' ' };
    match inside.as_slice() {
        [] => (top, if v { ' ' } else { '_' }),
        [t] if *t == start => (top, '|'),
        _ => (top, '*'),
    }
}

pub fn render(w: &WaveformSet, max_width: usize) -> String {
    let k = columns_per_unit(w, max_width);
    let step = Time::new(1, k);
    let last = {
        let h = w.horizon.times(k);
        h.numer() / h.denom()
    };
    let pad = w.signals.keys().map(String::len).max().unwrap_or(0).max(1);
    let mut out = String::new();
    for (name, s) in &w.signals {
        let (mut top, mut bottom) = (String::new(), String::new());
        let before = s.initial();
        top.push(if before { '_' } else { ' ' });
        bottom.push(if before { ' ' } else { '_' });
        for c in 0..=last {
            let start = step.times(c);
            let (a, b) = cell(s, start, start + step);
            top.push(a);
            bottom.push(b);
        }
        out.push_str(&format!("{name:<pad$} {}\n", top.trim_end()));
        out.push_str(&format!("{:<pad$} {}\n", "", bottom.trim_end()));
    }
    let mut axis = String::from("<");
    let mut labels = vec![' '; last as usize + 2];
    for c in 0..=last {
        let on_unit = c % k == 0;
        axis.push(if on_unit { '+' } else { '-' });
        if on_unit {
            let text = (c / k).to_string();
            let at = c as usize + 1;
            if text.chars().enumerate().all(|(i, _)| labels.get(at + i) == Some(&' ')) && labels[at - 1] == ' ' {
                for (i, ch) in text.chars().enumerate() {
                    labels[at + i] = ch;
                }
            }
        }
    }
    let labels: String = labels.into_iter().collect();
    out.push_str(&format!("{:<pad$} {axis}\n", "t"));
    out.push_str(&format!("{:<pad$} {}\n", "", labels.trim_end()));
    if k > 1 {
        out.push_str(&format!("one column = 1/{k} time unit\n"));
    }
    out
}
