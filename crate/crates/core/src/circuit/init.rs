//! Values at `0-0`.
//!
//! A delay element's output starts at its input's initial value, so nets
//! joined by delays form classes sharing one value. A class takes its value
//! from an override, from a primary input, or from the gate driving it,
//! evaluated three-valued on whatever is known so far. Gate overrides may
//! differ from the gate function: the output is clamped to its own initial
//! value before 0.

use std::collections::BTreeMap;

use super::{Diagnostic, Element, Netlist};

struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = i;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub(super) fn resolve(
    n: &Netlist,
    input_values: &BTreeMap<String, bool>,
) -> Result<BTreeMap<String, bool>, Vec<Diagnostic>> {
    let nets: Vec<String> = n.nets().into_iter().collect();
    let index: BTreeMap<&str, usize> = nets.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut classes = Classes { parent: (0..nets.len()).collect() };
    for e in &n.elements {
        if let Element::Delay { out, input, .. } = e {
            classes.union(index[out.as_str()], index[input.as_str()]);
        }
    }
    let mut value: Vec<Option<(bool, String)>> = vec![None; nets.len()];
    let mut diags = Vec::new();
    let mut pin = |classes: &mut Classes, net: &str, v: bool, why: String, diags: &mut Vec<Diagnostic>| {
        let c = classes.find(index[net]);
        match &value[c] {
            None => value[c] = Some((v, why)),
            Some((w, other)) if *w != v => diags.push(Diagnostic::InitMismatch {
                net: net.to_string(),
                detail: format!("{why} gives {} but {other} gives {}", u8::from(v), u8::from(*w)),
            }),
            Some(_) => {}
        }
    };
    for (net, &v) in &n.inits {
        pin(&mut classes, net, v, format!("`init {net}`"), &mut diags);
    }
    for (net, &v) in input_values {
        if index.contains_key(net.as_str()) {
            pin(&mut classes, net, v, format!("input signal `{net}`"), &mut diags);
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let gates: Vec<(usize, &Element)> = n
        .elements
        .iter()
        .filter(|e| matches!(e, Element::Gate { .. }))
        .map(|e| (index[e.out()], e))
        .collect();
    loop {
        let mut changed = false;
        for &(out, e) in &gates {
            let c = classes.find(out);
            if value[c].is_some() {
                continue;
            }
            let Element::Gate { kind, ins, .. } = e else { unreachable!() };
            let known: Vec<Option<bool>> = ins
                .iter()
                .map(|i| {
                    let ci = classes.find(index[i.as_str()]);
                    value[ci].as_ref().map(|(v, _)| *v)
                })
                .collect();
            if let Some(v) = kind.eval_kleene(&known) {
                value[c] = Some((v, format!("gate `{}`", e.out())));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = BTreeMap::new();
    let mut reported = vec![false; nets.len()];
    for (i, net) in nets.iter().enumerate() {
        let c = classes.find(i);
        match &value[c] {
            Some((v, _)) => {
                out.insert(net.clone(), *v);
            }
            None if !reported[c] => {
                reported[c] = true;
                diags.push(Diagnostic::InitUndetermined(net.clone()));
            }
            None => {}
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(diags)
    }
}

/// Values at `0-0` of every net, given the initial values of the primary
/// inputs.
pub fn resolve_initial_values(
    n: &Netlist,
    input_values: &BTreeMap<String, bool>,
) -> Result<BTreeMap<String, bool>, Vec<Diagnostic>> {
    resolve(n, input_values)
}
