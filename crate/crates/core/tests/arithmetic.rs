use revadd_core::{
    oracle_add, pack_registers, synth_adder, synth_controlled_increment,
    synth_increment, truth_table, unpack_registers, AdderSpec, Circuit, Simulator,
};

fn run_regs(sim: &Simulator, c: &Circuit, a: u64, b: u64) -> (u64, u64, bool) {
    let s = pack_registers(c.width(), c.layout(), a, b, true).unwrap();
    unpack_registers(c.layout(), &sim.run(&s).unwrap()).unwrap()
}

#[test]
fn incrementer_exhaustive() {
    for k in 1..=8 {
        let c = synth_increment(k).unwrap();
        let sim = Simulator::new(&c);
        for b in 0..1u64 << k {
            assert_eq!(run_regs(&sim, &c, 0, b), (0, (b + 1) % (1 << k), true), "k={k} b={b}");
        }
    }
}

#[test]
fn controlled_incrementer_exhaustive() {
    for k in 1..=7 {
        let c = synth_controlled_increment(k).unwrap();
        let sim = Simulator::new(&c);
        for a in 0..=1 {
            for b in 0..1u64 << k {
                assert_eq!(run_regs(&sim, &c, a, b), (a, (b + a) % (1 << k), true));
            }
        }
    }
}

#[test]
fn adder_exhaustive_small() {
    for n in 1..=6 {
        let c = synth_adder(AdderSpec::new(n).unwrap()).unwrap();
        let sim = Simulator::new(&c);
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                let want = oracle_add(n, a, b).unwrap();
                assert_eq!(run_regs(&sim, &c, a, b), (a, want, true), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn adder_spot_checks() {
    let c = synth_adder(AdderSpec::new(2).unwrap()).unwrap();
    let sim = Simulator::new(&c);
    assert_eq!(run_regs(&sim, &c, 1, 2), (1, 3, true));

    let c = synth_adder(AdderSpec::new(64).unwrap()).unwrap();
    let sim = Simulator::new(&c);
    assert_eq!(run_regs(&sim, &c, u64::MAX, 1), (u64::MAX, 0, true));
    assert_eq!(
        run_regs(&sim, &c, 0x8000_0000_0000_0000, 0x8000_0000_0000_0001),
        (0x8000_0000_0000_0000, 1, true)
    );
}

#[test]
fn synthesized_circuits_are_permutations() {
    for n in 1..=5 {
        let c = synth_adder(AdderSpec::new(n).unwrap()).unwrap();
        assert!(truth_table(&c).unwrap().is_bijection());
    }
    for k in 1..=8 {
        assert!(truth_table(&synth_increment(k).unwrap()).unwrap().is_bijection());
        assert!(truth_table(&synth_controlled_increment(k).unwrap()).unwrap().is_bijection());
    }
}

#[test]
fn adder_then_inverse_is_identity() {
    for n in 1..=4 {
        let c = synth_adder(AdderSpec::new(n).unwrap()).unwrap();
        let round_trip = c.compose(&c.invert()).unwrap();
        assert!(truth_table(&round_trip).unwrap().is_identity());
    }
}
