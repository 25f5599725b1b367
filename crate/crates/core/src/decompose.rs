//! Lowering of multi-controlled NOTs to {NOT, CNOT, Toffoli}.
//!
//! Negative controls are conjugated with NOTs. Gates with three or more
//! positive controls become a Toffoli ladder over borrowed wires: any
//! wire not touched by the gate may be used, whatever its value, and is
//! restored afterwards.

use crate::circuit::{Circuit, Control, Gate, Polarity, WireId};
use crate::error::{Error, Result};

/// How borrowed wires are chosen for the Toffoli ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BorrowPolicy {
    /// Lowest-index wires not among the gate's controls and target.
    #[default]
    LowestFreeIndex,
}

impl BorrowPolicy {
    fn select(self, gate: &Gate, width: usize, needed: usize) -> Result<Vec<WireId>> {
        match self {
            BorrowPolicy::LowestFreeIndex => {
                let free: Vec<WireId> = (0..width)
                    .map(WireId)
                    .filter(|&w| !gate.touches(w))
                    .take(needed)
                    .collect();
                if free.len() < needed {
                    return Err(Error::NotEnoughBorrows {
                        needed,
                        available: free.len(),
                    });
                }
                Ok(free)
            }
        }
    }
}

/// Most controls the ladder supports on a circuit of `width` wires.
pub fn max_ladder_controls(width: usize) -> usize {
    width.div_ceil(2)
}

/// NOTs on each negative control, the all-positive gate, then the NOTs again.
pub fn conjugate_negative_controls(gate: &Gate) -> Vec<Gate> {
    let negatives: Vec<WireId> = gate
        .controls()
        .iter()
        .filter(|c| c.polarity == Polarity::Negative)
        .map(|c| c.wire)
        .collect();
    let mut out = Vec::with_capacity(2 * negatives.len() + 1);
    out.extend(negatives.iter().map(|w| Gate::not(w.0)));
    out.push(gate.positive());
    out.extend(negatives.iter().map(|w| Gate::not(w.0)));
    out
}

/// Lowers an all-positive gate with `k >= 3` controls to exactly `4(k-2)`
/// Toffolis using `k - 2` borrowed wires.
///
/// With controls `c1..ck`, borrows `w1..w(k-2)` and target `t`, the first
/// sweep is the V
///
/// ```text
/// T(ck, w(k-2) -> t), T(c(k-1), w(k-3) -> w(k-2)), .., T(c3, w1 -> w2),
/// T(c1, c2 -> w1),
/// T(c3, w1 -> w2), .., T(ck, w(k-2) -> t)
/// ```
///
/// and the second sweep repeats it without the two gates on `t`, undoing
/// the garbage left on the borrows.
pub fn barenco_lower(gate: &Gate, width: usize, policy: BorrowPolicy) -> Result<Vec<Gate>> {
    let k = gate.num_controls();
    if k < 3 {
        return Err(Error::GateShape(format!(
            "ladder lowering needs at least 3 controls, got {k}"
        )));
    }
    if gate.has_negative() {
        return Err(Error::Polarity);
    }
    let max = max_ladder_controls(width);
    if k > max {
        return Err(Error::TooManyControls {
            controls: k,
            width,
            max,
        });
    }
    let borrows = policy.select(gate, width, k - 2)?;

    let c: Vec<usize> = gate.controls().iter().map(|c| c.wire.0).collect();
    let w: Vec<usize> = borrows.iter().map(|w| w.0).collect();
    let t = gate.target().0;

    // Rung j (1-based, j = 1..=k-3) is T(c[j+1], w[j-1] -> w[j]).
    let rung = |j: usize| Gate::toffoli(c[j + 1], w[j - 1], w[j]);
    let apex = Gate::toffoli(c[0], c[1], w[0]);
    let top = Gate::toffoli(c[k - 1], w[k - 3], t);

    let mut inner = Vec::with_capacity(2 * k - 5);
    inner.extend((1..=k - 3).rev().map(rung));
    inner.push(apex);
    inner.extend((1..=k - 3).map(rung));

    let mut out = Vec::with_capacity(4 * (k - 2));
    out.push(top.clone());
    out.extend(inner.iter().cloned());
    out.push(top);
    out.extend(inner);
    debug_assert_eq!(out.len(), 4 * (k - 2));
    Ok(out)
}

/// Lowers any gate to elementary gates with the same action.
pub fn lower_gate(gate: &Gate, width: usize, policy: BorrowPolicy) -> Result<Vec<Gate>> {
    if gate.is_elementary() {
        return Ok(vec![gate.clone()]);
    }
    if gate.num_controls() <= 2 {
        return Ok(conjugate_negative_controls(gate));
    }
    // Check the positive core first so nothing is emitted on failure.
    let core = barenco_lower(&gate.positive(), width, policy)?;
    let negatives: Vec<Gate> = gate
        .controls()
        .iter()
        .filter(|c| c.polarity == Polarity::Negative)
        .map(|c| Gate::not(c.wire.0))
        .collect();
    let mut out = Vec::with_capacity(core.len() + 2 * negatives.len());
    out.extend(negatives.iter().cloned());
    out.extend(core);
    out.extend(negatives);
    Ok(out)
}

/// Lowers every gate; errors carry the index of the offending gate.
pub fn lower_circuit(circuit: &Circuit, policy: BorrowPolicy) -> Result<Circuit> {
    let width = circuit.width();
    let mut gates = Vec::with_capacity(circuit.len());
    for (index, gate) in circuit.gates().iter().enumerate() {
        let lowered = lower_gate(gate, width, policy).map_err(|e| Error::AtGate {
            index,
            source: Box::new(e),
        })?;
        gates.extend(lowered);
    }
    Ok(Circuit::from_parts_unchecked(
        width,
        circuit.layout().clone(),
        gates,
    ))
}

/// Builds a gate from `(wire, positive?)` pairs; test and CLI helper.
pub fn mcx(controls: &[(usize, bool)], target: usize) -> Result<Gate> {
    Gate::new(
        controls
            .iter()
            .map(|&(w, pos)| if pos { Control::pos(w) } else { Control::neg(w) })
            .collect(),
        WireId(target),
    )
}
