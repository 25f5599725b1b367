//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run
//! with `cargo test -p revadd-cli --test acceptance -- --nocapture` to see
//! them.

use std::time::{Duration, Instant};

use revadd_cli::netlist::{parse, serialize};
use revadd_cli::{synthesize, Kind};
use revadd_core::decompose::mcx;
use revadd_core::{
    barenco_lower, circuit_depth, formula_adder_depth, formula_cinc_depth, lower_circuit,
    lower_gate, max_ladder_controls, oracle_add, oracle_mcx, pack_registers, synth_adder,
    synth_controlled_increment, synth_increment, truth_table, unpack_registers,
    verify_equivalence, AdderSpec, BasisState, BorrowPolicy, Circuit, DepthModel, Domain, Error,
    Gate, RegisterLayout, Simulator, VerifyMode,
};

const TIME_BUDGET: Duration = Duration::from_secs(120);

fn verdict(id: u32, title: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] AC{id} {title}: {detail}");
    assert!(ok, "AC{id} {title}: {detail}");
}

fn adder(n: usize) -> Circuit {
    synth_adder(AdderSpec::new(n).unwrap()).unwrap()
}

#[test]
fn ac1_adder_exhaustive() {
    let start = Instant::now();
    let mut failures = 0u64;
    let mut checked = 0u64;
    for n in 1..=8 {
        let c = adder(n);
        let sim = Simulator::new(&c);
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                let input = pack_registers(c.width(), c.layout(), a, b, true).unwrap();
                let out = unpack_registers(c.layout(), &sim.run(&input).unwrap()).unwrap();
                if out != (a, oracle_add(n, a, b).unwrap(), true) {
                    failures += 1;
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "adder exhaustive n=1..8",
        failures == 0 && elapsed < TIME_BUDGET,
        &format!("{checked} pairs, {failures} failures, {elapsed:.2?}"),
    );
}

#[test]
fn ac2_adder_randomized() {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for n in [16usize, 32, 64] {
        let c = adder(n);
        let layout = c.layout().clone();
        let width = c.width();
        let reference = |s: &BasisState| {
            let (a, b, flag) = unpack_registers(&layout, s).unwrap();
            pack_registers(width, &layout, a, oracle_add(n, a, b).unwrap(), flag).unwrap()
        };
        let mode = VerifyMode::Random {
            count: 10_000,
            seed: 42,
        };
        let r = verify_equivalence(&c, reference, mode, Domain::FlagSlice).unwrap();
        ok &= r.passed() && r.states_checked == 10_000;
        detail.push(format!("n={n}: {}", r.to_string().replace('\n', " ")));
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "adder randomized n=16,32,64",
        ok && elapsed < TIME_BUDGET,
        &format!("{} ({elapsed:.2?})", detail.join("; ")),
    );
}

#[test]
fn ac3_lowering_preserves_semantics() {
    let mut ok = true;
    let mut states = 0usize;
    for n in 1..=6 {
        let c = adder(n);
        let lowered = lower_circuit(&c, BorrowPolicy::default()).unwrap();
        ok &= lowered.gates().iter().all(Gate::is_elementary);
        let (hi, lo) = (truth_table(&c).unwrap(), truth_table(&lowered).unwrap());
        ok &= hi == lo;
        states += hi.mapping().len();
    }
    verdict(
        3,
        "lowering preserves truth tables n=1..6",
        ok,
        &format!("{states} basis states compared"),
    );
}

fn gate_with_negatives(k: usize, negative: &[usize]) -> Gate {
    let controls: Vec<(usize, bool)> = (0..k).map(|w| (w, !negative.contains(&w))).collect();
    mcx(&controls, k).unwrap()
}

#[test]
fn ac4_ladder_counts_and_equivalence() {
    let policy = BorrowPolicy::default();
    let mut ok = true;

    for k in 3..=10 {
        let ladder = barenco_lower(&gate_with_negatives(k, &[]), 2 * k + 1, policy).unwrap();
        let toffolis = ladder
            .iter()
            .filter(|g| g.num_controls() == 2 && !g.has_negative())
            .count();
        ok &= ladder.len() == 4 * k - 8 && toffolis == ladder.len();
    }

    let zero_cnot = mcx(&[(0, false)], 1).unwrap();
    let lowered = lower_gate(&zero_cnot, 2, policy).unwrap();
    ok &= lowered.len() == 3 && lowered.iter().all(Gate::is_elementary);

    let mut states = 0u64;
    for k in 3..=8 {
        let width = 2 * k + 1;
        let patterns: Vec<Vec<usize>> = vec![
            vec![],
            vec![1],
            (0..k).step_by(2).collect(),
            (0..k).collect(),
        ];
        for negative in patterns {
            let gate = gate_with_negatives(k, &negative);
            let lowered = lower_gate(&gate, width, policy).unwrap();
            let circuit = Circuit::from_gates(width, RegisterLayout::empty(), lowered).unwrap();
            let sim = Simulator::new(&circuit);
            for bits in 0..1u64 << width {
                let s = BasisState::from_u64(width, bits);
                ok &= sim.run(&s).unwrap() == oracle_mcx(&gate, &s);
                states += 1;
            }
        }
    }
    verdict(
        4,
        "ladder counts 4k-8, zero-controlled NOT = 3, oracle equivalence k=3..8",
        ok,
        &format!("{states} basis states checked with dirty borrows"),
    );
}

#[test]
fn ac5_constraint_enforcement() {
    let mut ok = true;
    for width in 5..=15 {
        let max = max_ladder_controls(width);
        let k = max + 1;
        if k < width {
            let g = gate_with_negatives(k, &[]);
            ok &= matches!(
                lower_gate(&g, width, BorrowPolicy::default()),
                Err(Error::TooManyControls { .. })
            );
        }
    }
    let mut max_seen = 0;
    for n in 1..=64 {
        let c = adder(n);
        max_seen = max_seen.max(c.gates().iter().map(Gate::num_controls).max().unwrap_or(0));
        ok &= c.gates().iter().all(|g| g.num_controls() <= n);
        ok &= lower_circuit(&c, BorrowPolicy::default()).is_ok();
    }
    verdict(
        5,
        "k > ceil(N/2) rejected; adder n<=64 always lowerable",
        ok,
        &format!("largest control count in adder(64) = {max_seen}"),
    );
}

#[test]
fn ac6_formula_suite() {
    let firsts: Vec<u64> = (1..=4).map(|k| formula_cinc_depth(k).unwrap()).collect();
    let mut ok = firsts == [1, 10, 16, 31];
    for n in 3..=100usize {
        let sum: u64 = (1..=n).map(|k| formula_cinc_depth(k).unwrap()).sum();
        // (2/3)n^3 + (3/2)n^2 - (25/6)n + 8 over the common denominator 6.
        let n128 = n as i128;
        let sixfold = 4 * n128.pow(3) + 9 * n128.pow(2) - 25 * n128 + 48;
        ok &= sixfold % 6 == 0 && sixfold / 6 == sum as i128;
        ok &= formula_adder_depth(n).unwrap() == sum;
    }
    verdict(
        6,
        "depth formulas",
        ok,
        &format!("c-inc(1..4) = {firsts:?}; closed form = sum for n=3..100"),
    );
}

#[test]
fn ac7_measured_cost_vs_formula() {
    let model = DepthModel::default();
    let deltas: Vec<i64> = (3..=50)
        .map(|k| {
            let measured = circuit_depth(&synth_controlled_increment(k).unwrap(), &model);
            measured as i64 - formula_cinc_depth(k).unwrap() as i64
        })
        .collect();
    let constant = deltas.iter().all(|&d| d == deltas[0]);
    let bounded = deltas.iter().all(|d| d.abs() <= 3);

    let measured = circuit_depth(&adder(50), &model);
    let ratio = measured as f64 / (2.0 / 3.0 * 50f64.powi(3));
    let formula = formula_adder_depth(50).unwrap();
    verdict(
        7,
        "measured depth vs formula",
        constant && bounded && (0.90..=1.10).contains(&ratio),
        &format!(
            "c-inc delta = {:+} for every k in 3..=50; adder(50) measured={measured} formula={formula} delta={:+} ratio={ratio:.4}",
            deltas[0],
            measured as i64 - formula as i64
        ),
    );
}

#[test]
fn ac8_property_suite() {
    let mut ok = true;
    let mut notes = Vec::new();

    // Flag restored to 1 on every flag=1 input of the building blocks.
    let mut blocks: Vec<Circuit> = Vec::new();
    for k in 1..=8 {
        blocks.push(synth_increment(k).unwrap());
        blocks.push(synth_controlled_increment(k).unwrap());
        blocks.push(adder(k));
    }
    for c in &blocks {
        let sim = Simulator::new(c);
        let (na, nb) = (c.layout().a.len(), c.layout().b.len());
        for a in 0..1u64 << na {
            for b in 0..1u64 << nb {
                let s = pack_registers(c.width(), c.layout(), a, b, true).unwrap();
                ok &= unpack_registers(c.layout(), &sim.run(&s).unwrap()).unwrap().2;
            }
        }
    }
    notes.push(format!("flag restored in {} circuits", blocks.len()));

    for n in 1..=5 {
        for kind in [Kind::Inc, Kind::Cinc, Kind::Add] {
            ok &= truth_table(&synthesize(kind, n).unwrap()).unwrap().is_bijection();
        }
    }
    notes.push("bijective for n<=5".into());

    for n in 1..=4 {
        let c = adder(n);
        ok &= truth_table(&c.compose(&c.invert()).unwrap()).unwrap().is_identity();
    }
    notes.push("C;C^-1 = id for n<=4".into());

    let mut round_trips = 0;
    for n in 1..=8 {
        for kind in [Kind::Inc, Kind::Cinc, Kind::Add] {
            let c = synthesize(kind, n).unwrap();
            let text = serialize(&c).unwrap();
            let again = serialize(&parse(&text).unwrap().circuit).unwrap();
            ok &= again == text;
            round_trips += 1;
        }
    }
    notes.push(format!("{round_trips} byte-identical netlist round trips"));

    verdict(8, "property suite", ok, &notes.join("; "));
}
