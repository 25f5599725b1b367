//! Incrementer, controlled incrementer and in-place adder, all using a
//! single flag ancilla that starts and ends at 1.
//!
//! The incrementer flips `b_0, b_1, ..` in turn under the flag. The flag
//! drops to 0 right after the first bit that goes 0 -> 1, so later bits
//! are left alone. A final NOT resets it, except when the low `k - 1`
//! bits wrapped to all zeros, in which case the flag never dropped and a
//! zero-controlled NOT cancels the reset.

use crate::circuit::{Circuit, Control, Gate, RegisterLayout, WireId};
use crate::error::{Error, Result};

/// Size of an `n`-bit adder; the circuit has `2n + 1` wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderSpec {
    n: usize,
}

impl AdderSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Spec("adder width must be at least 1".into()));
        }
        Ok(AdderSpec { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn width(self) -> usize {
        2 * self.n + 1
    }
}

/// Gate list of the incrementer on `b` (LSB first) with flag `flag`.
pub(crate) fn increment_gates(b: &[WireId], flag: WireId) -> Vec<Gate> {
    let k = b.len();
    if k == 1 {
        return vec![Gate::not(b[0].0)];
    }
    let mut gates = Vec::with_capacity(2 * k + 1);
    for i in 0..k - 1 {
        gates.push(Gate::cnot(flag.0, b[i].0));
        // Flag drops iff b_i just became 1 while every lower bit reads 0.
        let mut controls = vec![Control::pos(b[i].0)];
        controls.extend((0..i).rev().map(|j| Control::neg(b[j].0)));
        gates.push(Gate::new(controls, flag).expect("distinct register wires"));
    }
    gates.push(Gate::cnot(flag.0, b[k - 1].0));
    gates.push(Gate::not(flag.0));
    let low_all_zero = (0..k - 1).map(|j| Control::neg(b[j].0)).collect();
    gates.push(Gate::new(low_all_zero, flag).expect("distinct register wires"));
    gates
}

/// Gate list of the incrementer on `b` controlled by `control`.
pub(crate) fn controlled_increment_gates(
    control: WireId,
    b: &[WireId],
    flag: WireId,
) -> Vec<Gate> {
    increment_gates(b, flag)
        .iter()
        .map(|g| {
            g.with_extra_control(Control::pos(control.0))
                .expect("control wire is disjoint from the register")
        })
        .collect()
}

fn check_size(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Spec("register width must be at least 1".into()));
    }
    Ok(())
}

/// `b, 1 -> b + 1 mod 2^k, 1` on `k + 1` wires (`b` then flag).
pub fn synth_increment(k: usize) -> Result<Circuit> {
    check_size(k)?;
    let layout = RegisterLayout::incrementer(k);
    let gates = increment_gates(&layout.b, layout.flag.expect("incrementer flag"));
    Circuit::from_gates(k + 1, layout, gates)
}

/// Adds a positive control on `control_wire` to every gate.
pub fn with_control(circuit: &Circuit, control_wire: WireId) -> Result<Circuit> {
    if control_wire.0 >= circuit.width() {
        return Err(Error::WireOutOfRange {
            wire: control_wire.0,
            width: circuit.width(),
        });
    }
    if let Some(index) = circuit.gates().iter().position(|g| g.touches(control_wire)) {
        return Err(Error::GateShape(format!(
            "control wire {control_wire} is already used by gate {index}"
        )));
    }
    let gates = circuit
        .gates()
        .iter()
        .map(|g| g.with_extra_control(Control::pos(control_wire.0)))
        .collect::<Result<Vec<_>>>()?;
    Circuit::from_gates(circuit.width(), circuit.layout().clone(), gates)
}

/// `a, b, 1 -> a, b + a mod 2^k, 1` with a one-bit `a` on wire 0, `b` on
/// wires `1..=k` and the flag on `k + 1`.
pub fn synth_controlled_increment(k: usize) -> Result<Circuit> {
    check_size(k)?;
    let layout = RegisterLayout::controlled_incrementer(k);
    let gates = controlled_increment_gates(layout.a[0], &layout.b, layout.flag.expect("flag"));
    Circuit::from_gates(k + 2, layout, gates)
}

/// `a, b, 1 -> a, a + b mod 2^n, 1`.
///
/// For `k = n` down to `1`, bit `a_(n-k)` (weight `2^(n-k)`) drives an
/// increment of the top `k` bits of `b`, which adds `2^(n-k)` to `b`.
pub fn synth_adder(spec: AdderSpec) -> Result<Circuit> {
    let n = spec.n();
    let layout = RegisterLayout::adder(n);
    let flag = layout.flag.expect("adder flag");
    let mut gates = Vec::new();
    for k in (1..=n).rev() {
        let control = layout.a[n - k];
        gates.extend(controlled_increment_gates(control, &layout.b[n - k..], flag));
    }
    Circuit::from_gates(spec.width(), layout, gates)
}
