//! Reversible in-place addition with a single ancilla.
//!
//! The crate builds an incrementer, a controlled incrementer and an
//! `n`-bit adder out of mixed-polarity multi-controlled NOT gates, lowers
//! them to NOT/CNOT/Toffoli with a borrowed-wire Toffoli ladder, checks
//! them against integer arithmetic by classical simulation, and accounts
//! for their depth.
//!
//! ```
//! use revadd_core::{synth_adder, AdderSpec, pack_registers, run, unpack_registers};
//!
//! let adder = synth_adder(AdderSpec::new(4).unwrap()).unwrap();
//! let input = pack_registers(adder.width(), adder.layout(), 3, 5, true).unwrap();
//! let output = run(&adder, &input).unwrap();
//! assert_eq!(unpack_registers(adder.layout(), &output).unwrap(), (3, 8, true));
//! ```

pub mod circuit;
pub mod cost;
pub mod decompose;
pub mod error;
pub mod simulate;
pub mod synth;

pub use circuit::{is_elementary, Circuit, Control, Gate, Polarity, RegisterLayout, WireId};
pub use cost::{
    circuit_depth, compare, formula_adder_depth, formula_adder_depth_sum, formula_cinc_depth,
    gate_depth, CostReport, DepthModel,
};
pub use decompose::{
    barenco_lower, conjugate_negative_controls, lower_circuit, lower_gate, max_ladder_controls,
    BorrowPolicy,
};
pub use error::{Error, Result};
pub use simulate::{
    apply_gate, arithmetic_reference, oracle_add, oracle_mcx, pack_registers, run, truth_table,
    truth_table_with_limit, unpack_registers, verify_equivalence, verify_equivalence_with_limit,
    BasisState, Counterexample, Domain, Simulator, TruthTable, VerificationReport, VerifyMode,
    DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use synth::{
    synth_adder, synth_controlled_increment, synth_increment, with_control, AdderSpec,
};
