//! Gate IR and the circuit container.
//!
//! Every gate is a multi-controlled NOT whose controls each carry a
//! polarity. NOT, CNOT and Toffoli are the zero, one and two positive
//! control cases. Registers are listed least-significant wire first.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a wire inside a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WireId(pub usize);

impl WireId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for WireId {
    fn from(index: usize) -> Self {
        WireId(index)
    }
}

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether a control fires on 1 (solid dot) or on 0 (hollow circle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    /// Bit value on which a control of this polarity fires.
    pub fn fires_on(self) -> bool {
        matches!(self, Polarity::Positive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Control {
    pub wire: WireId,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(wire: usize) -> Self {
        Control {
            wire: WireId(wire),
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(wire: usize) -> Self {
        Control {
            wire: WireId(wire),
            polarity: Polarity::Negative,
        }
    }
}

/// A mixed-polarity multi-controlled NOT.
///
/// Control order is kept for display and lowering but does not affect
/// equality: two gates are equal when they have the same target and the
/// same set of controls.
#[derive(Debug, Clone)]
pub struct Gate {
    controls: Vec<Control>,
    target: WireId,
}

impl Gate {
    /// Builds a gate, rejecting self-controls and repeated control wires.
    pub fn new(controls: Vec<Control>, target: WireId) -> Result<Self> {
        let mut seen = HashSet::with_capacity(controls.len());
        for c in &controls {
            if c.wire == target {
                return Err(Error::GateShape(format!(
                    "target wire {target} also appears as a control"
                )));
            }
            if !seen.insert(c.wire) {
                return Err(Error::GateShape(format!(
                    "control wire {} appears more than once",
                    c.wire
                )));
            }
        }
        Ok(Gate { controls, target })
    }

    pub fn not(target: usize) -> Self {
        Gate {
            controls: Vec::new(),
            target: WireId(target),
        }
    }

    /// # Panics
    /// If `control == target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(vec![Control::pos(control)], WireId(target)).expect("cnot control equals target")
    }

    /// # Panics
    /// If any two of the wires coincide.
    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::new(vec![Control::pos(c1), Control::pos(c2)], WireId(target))
            .expect("toffoli wires must be distinct")
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn target(&self) -> WireId {
        self.target
    }

    pub fn num_controls(&self) -> usize {
        self.controls.len()
    }

    pub fn num_negative(&self) -> usize {
        self.controls
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .count()
    }

    pub fn has_negative(&self) -> bool {
        self.num_negative() > 0
    }

    /// Every wire the gate touches, controls first.
    pub fn wires(&self) -> impl Iterator<Item = WireId> + '_ {
        self.controls
            .iter()
            .map(|c| c.wire)
            .chain(std::iter::once(self.target))
    }

    pub fn touches(&self, wire: WireId) -> bool {
        self.wires().any(|w| w == wire)
    }

    pub fn max_wire(&self) -> WireId {
        self.wires().max().unwrap_or(self.target)
    }

    /// Same gate with every control made positive.
    pub fn positive(&self) -> Gate {
        Gate {
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    wire: c.wire,
                    polarity: Polarity::Positive,
                })
                .collect(),
            target: self.target,
        }
    }

    /// Adds one more control, keeping the gate well formed.
    pub fn with_extra_control(&self, control: Control) -> Result<Gate> {
        let mut controls = self.controls.clone();
        controls.push(control);
        Gate::new(controls, self.target)
    }

    /// True for NOT, CNOT and Toffoli: at most two controls, all positive.
    pub fn is_elementary(&self) -> bool {
        self.controls.len() <= 2 && !self.has_negative()
    }

    fn sorted_controls(&self) -> Vec<Control> {
        let mut c = self.controls.clone();
        c.sort();
        c
    }
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target
            && self.controls.len() == other.controls.len()
            && self.sorted_controls() == other.sorted_controls()
    }
}

impl Eq for Gate {}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mcx")?;
        for c in &self.controls {
            let sign = if c.polarity.fires_on() { '+' } else { '-' };
            write!(f, " {sign}{}", c.wire)?;
        }
        write!(f, " : {}", self.target)
    }
}

/// Free function form of [`Gate::is_elementary`].
pub fn is_elementary(gate: &Gate) -> bool {
    gate.is_elementary()
}

/// Named wires of an arithmetic circuit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegisterLayout {
    /// `a_0 .. a_{n-1}`, least significant first. Empty for a bare incrementer.
    pub a: Vec<WireId>,
    /// `b_0 .. b_{n-1}`, least significant first.
    pub b: Vec<WireId>,
    /// The single ancilla.
    pub flag: Option<WireId>,
}

impl RegisterLayout {
    pub fn new(a: Vec<WireId>, b: Vec<WireId>, flag: Option<WireId>) -> Result<Self> {
        let layout = RegisterLayout { a, b, flag };
        layout.check_distinct()?;
        Ok(layout)
    }

    /// Layout with no named wires.
    pub fn empty() -> Self {
        RegisterLayout::default()
    }

    /// `a = [0, n)`, `b = [n, 2n)`, flag `2n`.
    pub fn adder(n: usize) -> Self {
        RegisterLayout {
            a: (0..n).map(WireId).collect(),
            b: (n..2 * n).map(WireId).collect(),
            flag: Some(WireId(2 * n)),
        }
    }

    /// `b = [0, k)`, flag `k`.
    pub fn incrementer(k: usize) -> Self {
        RegisterLayout {
            a: Vec::new(),
            b: (0..k).map(WireId).collect(),
            flag: Some(WireId(k)),
        }
    }

    /// `a = [0]`, `b = [1, k]`, flag `k + 1`.
    pub fn controlled_incrementer(k: usize) -> Self {
        RegisterLayout {
            a: vec![WireId(0)],
            b: (1..=k).map(WireId).collect(),
            flag: Some(WireId(k + 1)),
        }
    }

    pub fn wires(&self) -> impl Iterator<Item = WireId> + '_ {
        self.a
            .iter()
            .chain(self.b.iter())
            .copied()
            .chain(self.flag)
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.flag.is_none()
    }

    fn check_distinct(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for w in self.wires() {
            if !seen.insert(w) {
                return Err(Error::Layout(format!("wire {w} is listed twice")));
            }
        }
        Ok(())
    }

    fn check_width(&self, width: usize) -> Result<()> {
        self.check_distinct()?;
        match self.wires().find(|w| w.0 >= width) {
            Some(w) => Err(Error::WireOutOfRange { wire: w.0, width }),
            None => Ok(()),
        }
    }
}

/// An ordered gate list over a fixed number of wires, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    layout: RegisterLayout,
}

impl Circuit {
    /// Empty (identity) circuit.
    pub fn new(width: usize, layout: RegisterLayout) -> Result<Self> {
        if width == 0 {
            return Err(Error::Layout("circuit width must be positive".into()));
        }
        layout.check_width(width)?;
        Ok(Circuit {
            width,
            gates: Vec::new(),
            layout,
        })
    }

    /// Empty circuit with no named registers.
    pub fn bare(width: usize) -> Result<Self> {
        Circuit::new(width, RegisterLayout::empty())
    }

    /// Builds a circuit from a gate list, checking every gate.
    pub fn from_gates(
        width: usize,
        layout: RegisterLayout,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self> {
        let mut circuit = Circuit::new(width, layout)?;
        for (index, gate) in gates.into_iter().enumerate() {
            circuit.append(gate).map_err(|e| Error::AtGate {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(circuit)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate at the end.
    pub fn append(&mut self, gate: Gate) -> Result<()> {
        let max = gate.max_wire();
        if max.0 >= self.width {
            return Err(Error::WireOutOfRange {
                wire: max.0,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Builder-style [`append`](Self::append).
    pub fn with_gate(mut self, gate: Gate) -> Result<Self> {
        self.append(gate)?;
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.append(g))
    }

    /// Reverses the gate order. Each gate is self-inverse, so this is the
    /// inverse permutation.
    pub fn invert(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().cloned().collect(),
            layout: self.layout.clone(),
        }
    }

    /// `self` followed by `second`; the layout of `self` is kept.
    pub fn compose(&self, second: &Circuit) -> Result<Circuit> {
        if self.width != second.width {
            return Err(Error::Composition {
                first: self.width,
                second: second.width,
            });
        }
        let mut gates = Vec::with_capacity(self.gates.len() + second.gates.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&second.gates);
        Ok(Circuit {
            width: self.width,
            gates,
            layout: self.layout.clone(),
        })
    }

    /// Same gates over a new layout.
    pub fn with_layout(self, layout: RegisterLayout) -> Result<Self> {
        layout.check_width(self.width)?;
        Ok(Circuit { layout, ..self })
    }

    /// Same gates and layout with idle wires added above the current ones.
    pub fn widen(&self, width: usize) -> Result<Circuit> {
        if width < self.width {
            return Err(Error::Layout(format!(
                "cannot narrow a width-{} circuit to {width}",
                self.width
            )));
        }
        Ok(Circuit {
            width,
            ..self.clone()
        })
    }

    pub(crate) fn from_parts_unchecked(width: usize, layout: RegisterLayout, gates: Vec<Gate>) -> Self {
        debug_assert!(gates.iter().all(|g| g.max_wire().0 < width));
        Circuit {
            width,
            gates,
            layout,
        }
    }
}
