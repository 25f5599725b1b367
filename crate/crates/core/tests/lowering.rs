use proptest::prelude::*;
use revadd_core::decompose::mcx;
use revadd_core::{
    barenco_lower, lower_circuit, lower_gate, oracle_mcx, synth_adder, synth_controlled_increment,
    truth_table, AdderSpec, BasisState, BorrowPolicy, Circuit, Error, Gate, RegisterLayout,
    Simulator,
};

fn lowered_circuit(width: usize, gates: Vec<Gate>) -> Circuit {
    Circuit::from_gates(width, RegisterLayout::empty(), gates).unwrap()
}

/// Controls on wires `0..k`, target `k`, with the given negatives.
fn gate_with_pattern(k: usize, negative: &[usize]) -> Gate {
    let controls: Vec<(usize, bool)> = (0..k).map(|w| (w, !negative.contains(&w))).collect();
    mcx(&controls, k).unwrap()
}

fn patterns(k: usize) -> Vec<Vec<usize>> {
    vec![
        vec![],
        vec![0],
        vec![k - 1],
        (0..k).step_by(2).collect(),
        (0..k).collect(),
    ]
}

#[test]
fn lowered_gates_match_oracle_on_every_state() {
    for k in 3..=8 {
        let width = 2 * k + 1;
        for negative in patterns(k) {
            let gate = gate_with_pattern(k, &negative);
            let lowered = lower_gate(&gate, width, BorrowPolicy::default()).unwrap();
            assert!(lowered.iter().all(Gate::is_elementary));
            let sim = Simulator::new(&lowered_circuit(width, lowered));
            for bits in 0..1u64 << width {
                let s = BasisState::from_u64(width, bits);
                assert_eq!(
                    sim.run(&s).unwrap(),
                    oracle_mcx(&gate, &s),
                    "k={k} negatives={negative:?} input={s}"
                );
            }
        }
    }
}

#[test]
fn count_law() {
    for k in 3..=10 {
        let width = 2 * k + 1;
        let positive = gate_with_pattern(k, &[]);
        let ladder = barenco_lower(&positive, width, BorrowPolicy::default()).unwrap();
        assert_eq!(ladder.len(), 4 * k - 8);
        assert!(ladder.iter().all(|g| g.num_controls() == 2 && !g.has_negative()));
        for j in 1..=k {
            let negative: Vec<usize> = (0..j).collect();
            let lowered = lower_gate(&gate_with_pattern(k, &negative), width, BorrowPolicy::default()).unwrap();
            assert_eq!(lowered.len(), 4 * k - 8 + 2 * j, "k={k} j={j}");
        }
    }
}

#[test]
fn lowering_is_deterministic() {
    let g = gate_with_pattern(6, &[1, 4]);
    let first = lower_gate(&g, 13, BorrowPolicy::default()).unwrap();
    let second = lower_gate(&g, 13, BorrowPolicy::default()).unwrap();
    assert_eq!(format!("{first:?}"), format!("{second:?}"));
}

#[test]
fn narrowest_width_for_each_k() {
    // ceil(N/2) >= k first holds at N = 2k - 1, which leaves exactly k - 2
    // free wires for borrowing.
    for k in 3..=7 {
        let g = gate_with_pattern(k, &[]);
        let width = 2 * k - 1;
        let ladder = barenco_lower(&g, width, BorrowPolicy::default()).unwrap();
        let sim = Simulator::new(&lowered_circuit(width, ladder));
        for bits in 0..1u64 << width {
            let s = BasisState::from_u64(width, bits);
            assert_eq!(sim.run(&s).unwrap(), oracle_mcx(&g, &s));
        }
        assert!(matches!(
            barenco_lower(&g, width - 1, BorrowPolicy::default()),
            Err(Error::TooManyControls { .. })
        ));
    }
}

#[test]
fn lowered_adder_matches_high_level_truth_table() {
    let adder = synth_adder(AdderSpec::new(3).unwrap()).unwrap();
    let lowered = lower_circuit(&adder, BorrowPolicy::default()).unwrap();
    assert!(lowered.gates().iter().all(Gate::is_elementary));
    assert_eq!(lowered.width(), adder.width());
    assert_eq!(lowered.layout(), adder.layout());
    assert_eq!(truth_table(&lowered).unwrap(), truth_table(&adder).unwrap());
}

#[test]
fn lowering_preserves_synthesized_circuits_up_to_width_12() {
    let mut circuits = Vec::new();
    for n in 1..=5 {
        circuits.push(synth_adder(AdderSpec::new(n).unwrap()).unwrap());
    }
    for k in 1..=10 {
        // Widened to the adder context so the ladder has room to borrow.
        let cinc = synth_controlled_increment(k).unwrap();
        let width = (2 * k + 1).max(cinc.width());
        if width <= 12 {
            circuits.push(cinc.widen(width).unwrap());
        }
    }
    for c in circuits {
        let lowered = lower_circuit(&c, BorrowPolicy::default()).unwrap();
        assert_eq!(truth_table(&lowered).unwrap(), truth_table(&c).unwrap());
    }
}

fn arb_gate(width: usize, max_controls: usize) -> impl Strategy<Value = Gate> {
    (Just(()), 0..width)
        .prop_flat_map(move |(_, target)| {
            let others: Vec<usize> = (0..width).filter(|&w| w != target).collect();
            (
                Just(target),
                proptest::sample::subsequence(others, 0..=max_controls),
                proptest::collection::vec(any::<bool>(), max_controls),
            )
        })
        .prop_map(|(target, wires, signs)| {
            let controls: Vec<(usize, bool)> = wires.into_iter().zip(signs).collect();
            mcx(&controls, target).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_gates_lower_faithfully(gate in arb_gate(11, 6)) {
        let width = 11;
        let lowered = lower_gate(&gate, width, BorrowPolicy::default()).unwrap();
        prop_assert!(lowered.iter().all(Gate::is_elementary));
        let sim = Simulator::new(&lowered_circuit(width, lowered));
        for bits in 0..1u64 << width {
            let s = BasisState::from_u64(width, bits);
            prop_assert_eq!(sim.run(&s).unwrap(), oracle_mcx(&gate, &s));
        }
    }
}
