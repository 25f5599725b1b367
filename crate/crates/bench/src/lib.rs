//! Fixtures shared by the criterion benches.

use revadd_core::{pack_registers, synth_adder, AdderSpec, BasisState, Circuit};

pub fn adder(n: usize) -> Circuit {
    synth_adder(AdderSpec::new(n).expect("n >= 1")).expect("adder synthesis")
}

/// `count` adder inputs with flag set, spread over the register range.
pub fn adder_inputs(circuit: &Circuit, count: u64) -> Vec<BasisState> {
    let n = circuit.layout().b.len();
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..count)
        .map(|i| {
            let a = i.wrapping_mul(0x9e37_79b9_7f4a_7c15) & mask;
            let b = i.wrapping_mul(0xc2b2_ae3d_27d4_eb4f).rotate_left(17) & mask;
            pack_registers(circuit.width(), circuit.layout(), a, b, true).expect("inputs fit")
        })
        .collect()
}
