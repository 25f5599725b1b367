//! Sequential depth accounting.
//!
//! Depth here is a per-gate charge summed over the gate list, not the
//! layered depth of a lowered circuit. Elementary gates cost 1, a ladder
//! lowered `k`-control gate costs `4k - 8`, and any negative controls add
//! a flat conjugation charge of 2 regardless of how many there are.

use std::fmt;

use crate::circuit::{Circuit, Gate};
use crate::decompose::{lower_circuit, BorrowPolicy};
use crate::error::{Error, Result};

/// Per-gate depth table keyed on control count and polarity mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthModel {
    /// Flat charge for a gate with one or more negative controls.
    pub conjugation: u64,
}

impl Default for DepthModel {
    fn default() -> Self {
        DepthModel { conjugation: 2 }
    }
}

impl DepthModel {
    /// `1` for at most two controls, `4k - 8` for `k >= 3`, plus the
    /// conjugation charge when any control is negative.
    pub fn depth(&self, controls: usize, has_negative: bool) -> u64 {
        let base = if controls <= 2 {
            1
        } else {
            4 * controls as u64 - 8
        };
        if has_negative {
            base + self.conjugation
        } else {
            base
        }
    }
}

pub fn gate_depth(gate: &Gate, model: &DepthModel) -> u64 {
    model.depth(gate.num_controls(), gate.has_negative())
}

pub fn circuit_depth(circuit: &Circuit, model: &DepthModel) -> u64 {
    circuit.gates().iter().map(|g| gate_depth(g, model)).sum()
}

/// Tabulated depth of the controlled `k`-bit incrementer:
/// 1, 10, then `2k^2 + k - 5`.
pub fn formula_cinc_depth(k: usize) -> Result<u64> {
    let k = k as u64;
    match k {
        0 => Err(Error::Domain("controlled incrementer needs k >= 1".into())),
        1 => Ok(1),
        2 => Ok(10),
        _ => Ok(2 * k * k + k - 5),
    }
}

/// Closed form `(2/3)n^3 + (3/2)n^2 - (25/6)n + 8`, valid for `n >= 3`.
pub fn formula_adder_depth(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "closed form holds for n >= 3, got {n}; use formula_adder_depth_sum"
        )));
    }
    let n = n as i128;
    let sixfold = 4 * n * n * n + 9 * n * n - 25 * n + 48;
    debug_assert_eq!(sixfold % 6, 0);
    u64::try_from(sixfold / 6).map_err(|_| Error::Domain("adder depth overflows u64".into()))
}

/// `sum_{k=1..n} formula_cinc_depth(k)`, defined for every `n >= 1`.
pub fn formula_adder_depth_sum(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("adder needs n >= 1".into()));
    }
    (1..=n).map(formula_cinc_depth).sum()
}

/// Measured depth set against a reference value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub per_gate: Vec<u64>,
    pub measured: u64,
    pub formula: Option<u64>,
    /// Gate count after lowering to NOT/CNOT/Toffoli.
    pub elementary: usize,
}

impl CostReport {
    /// `measured - formula`.
    pub fn delta(&self) -> Option<i64> {
        self.formula.map(|f| self.measured as i64 - f as i64)
    }

    /// `measured / ((2/3) n^3)`, the leading-order adder depth.
    pub fn cubic_ratio(&self, n: usize) -> f64 {
        self.measured as f64 / (2.0 / 3.0 * (n as f64).powi(3))
    }

    /// `key=value` lines: `measured`, `formula`, `delta`, `elementary`.
    /// `formula` and `delta` are omitted when there is no reference value.
    pub fn to_key_values(&self) -> String {
        let mut out = format!("measured={}\n", self.measured);
        if let (Some(f), Some(d)) = (self.formula, self.delta()) {
            out.push_str(&format!("formula={f}\ndelta={d}\n"));
        }
        out.push_str(&format!("elementary={}\n", self.elementary));
        out
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gates:            {}", self.per_gate.len())?;
        writeln!(f, "measured depth:   {}", self.measured)?;
        if let (Some(formula), Some(delta)) = (self.formula, self.delta()) {
            writeln!(f, "formula depth:    {formula}")?;
            writeln!(f, "delta:            {delta:+}")?;
        }
        write!(f, "elementary gates: {}", self.elementary)
    }
}

pub fn compare(circuit: &Circuit, formula: Option<u64>, model: &DepthModel) -> Result<CostReport> {
    let per_gate: Vec<u64> = circuit.gates().iter().map(|g| gate_depth(g, model)).collect();
    let measured = per_gate.iter().sum();
    let elementary = lower_circuit(circuit, BorrowPolicy::default())?.len();
    Ok(CostReport {
        per_gate,
        measured,
        formula,
        elementary,
    })
}
