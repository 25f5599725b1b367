//! Classical basis-state simulation, truth tables and brute-force oracles.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, RegisterLayout, WireId};
use crate::error::{Error, Result};

/// Widest circuit (or register slice) scanned exhaustively by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 22;

/// Classical assignment of every wire; bit `i` is wire `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    width: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zero(width: usize) -> Self {
        BasisState {
            width,
            words: vec![0; width.div_ceil(64).max(1)],
        }
    }

    /// Low `width` bits of `bits`; higher bits are dropped.
    pub fn from_u64(width: usize, bits: u64) -> Self {
        let mut s = BasisState::zero(width);
        s.words[0] = bits & low_mask(width.min(64));
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The whole state as an integer, when it fits in 64 bits.
    pub fn as_u64(&self) -> Option<u64> {
        (self.width <= 64).then(|| self.words[0])
    }

    pub fn get(&self, wire: WireId) -> bool {
        debug_assert!(wire.0 < self.width);
        (self.words[wire.0 / 64] >> (wire.0 % 64)) & 1 == 1
    }

    pub fn set(&mut self, wire: WireId, value: bool) {
        assert!(wire.0 < self.width, "wire {wire} outside state of width {}", self.width);
        let bit = 1u64 << (wire.0 % 64);
        if value {
            self.words[wire.0 / 64] |= bit;
        } else {
            self.words[wire.0 / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, wire: WireId) {
        assert!(wire.0 < self.width, "wire {wire} outside state of width {}", self.width);
        self.words[wire.0 / 64] ^= 1u64 << (wire.0 % 64);
    }

    /// Reads `wires` as an integer, first wire least significant.
    pub fn read_register(&self, wires: &[WireId]) -> Result<u64> {
        if wires.len() > 64 {
            return Err(Error::Range {
                value: 0,
                bits: wires.len(),
            });
        }
        Ok(wires
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &w)| acc | (u64::from(self.get(w)) << i)))
    }

    /// Writes `value` into `wires`, first wire least significant.
    pub fn write_register(&mut self, wires: &[WireId], value: u64) -> Result<()> {
        check_fits(value, wires.len())?;
        for (i, &w) in wires.iter().enumerate() {
            self.set(w, (value >> i) & 1 == 1);
        }
        Ok(())
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisState({self})")
    }
}

/// Wire 0 is printed first.
impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.get(WireId(i)) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn check_fits(value: u64, bits: usize) -> Result<()> {
    if bits < 64 && value >> bits != 0 {
        return Err(Error::Range {
            value: value.into(),
            bits,
        });
    }
    Ok(())
}

/// A gate reduced to word masks: it fires when every `(word, care, want)`
/// condition has `state[word] & care == want`.
#[derive(Debug, Clone)]
struct MaskedGate {
    conditions: Vec<(usize, u64, u64)>,
    target_word: usize,
    target_bit: u64,
}

impl MaskedGate {
    fn new(gate: &Gate) -> Self {
        let mut conditions: Vec<(usize, u64, u64)> = Vec::new();
        for c in gate.controls() {
            let word = c.wire.0 / 64;
            let bit = 1u64 << (c.wire.0 % 64);
            let want = if c.polarity.fires_on() { bit } else { 0 };
            match conditions.iter_mut().find(|(w, _, _)| *w == word) {
                Some(entry) => {
                    entry.1 |= bit;
                    entry.2 |= want;
                }
                None => conditions.push((word, bit, want)),
            }
        }
        MaskedGate {
            conditions,
            target_word: gate.target().0 / 64,
            target_bit: 1u64 << (gate.target().0 % 64),
        }
    }

    #[inline]
    fn apply(&self, words: &mut [u64]) {
        if self
            .conditions
            .iter()
            .all(|&(w, care, want)| words[w] & care == want)
        {
            words[self.target_word] ^= self.target_bit;
        }
    }
}

/// A circuit pre-reduced to masks for repeated simulation.
#[derive(Debug, Clone)]
pub struct Simulator {
    width: usize,
    gates: Vec<MaskedGate>,
}

impl Simulator {
    pub fn new(circuit: &Circuit) -> Self {
        Simulator {
            width: circuit.width(),
            gates: circuit.gates().iter().map(MaskedGate::new).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn run(&self, state: &BasisState) -> Result<BasisState> {
        let mut out = state.clone();
        self.run_in_place(&mut out)?;
        Ok(out)
    }

    pub fn run_in_place(&self, state: &mut BasisState) -> Result<()> {
        if state.width != self.width {
            return Err(Error::WidthMismatch {
                circuit: self.width,
                state: state.width,
            });
        }
        for g in &self.gates {
            g.apply(&mut state.words);
        }
        Ok(())
    }

    /// Fast path for circuits of at most 64 wires.
    pub fn run_u64(&self, bits: u64) -> u64 {
        debug_assert!(self.width <= 64);
        let mut words = [bits];
        for g in &self.gates {
            g.apply(&mut words);
        }
        words[0]
    }
}

/// Flips the target iff every control matches its polarity.
pub fn apply_gate(gate: &Gate, state: &BasisState) -> BasisState {
    let mut out = state.clone();
    MaskedGate::new(gate).apply(&mut out.words);
    out
}

/// Runs the circuit left to right.
pub fn run(circuit: &Circuit, state: &BasisState) -> Result<BasisState> {
    Simulator::new(circuit).run(state)
}

/// Direct bit-by-bit evaluation of a multi-controlled NOT, kept apart from
/// the mask-based simulator so the two can check each other.
pub fn oracle_mcx(gate: &Gate, state: &BasisState) -> BasisState {
    let mut out = state.clone();
    let fires = gate
        .controls()
        .iter()
        .all(|c| state.get(c.wire) == c.polarity.fires_on());
    if fires {
        let t = gate.target();
        out.set(t, !state.get(t));
    }
    out
}

/// `(a + b) mod 2^n` for `1 <= n <= 64`.
pub fn oracle_add(n: usize, a: u64, b: u64) -> Result<u64> {
    if n == 0 || n > 64 {
        return Err(Error::Range { value: 0, bits: n });
    }
    check_fits(a, n)?;
    check_fits(b, n)?;
    Ok(((u128::from(a) + u128::from(b)) & ((1u128 << n) - 1)) as u64)
}

/// Encodes register values into a basis state; unnamed wires are 0.
pub fn pack_registers(
    width: usize,
    layout: &RegisterLayout,
    a: u64,
    b: u64,
    flag: bool,
) -> Result<BasisState> {
    let mut s = BasisState::zero(width);
    if let Some(w) = layout.wires().find(|w| w.0 >= width) {
        return Err(Error::WireOutOfRange { wire: w.0, width });
    }
    if layout.a.len() > 64 || layout.b.len() > 64 {
        return Err(Error::Range {
            value: 0,
            bits: layout.a.len().max(layout.b.len()),
        });
    }
    s.write_register(&layout.a, a)?;
    s.write_register(&layout.b, b)?;
    match layout.flag {
        Some(f) => s.set(f, flag),
        None if flag => return Err(Error::Layout("layout has no flag wire".into())),
        None => {}
    }
    Ok(s)
}

/// Inverse of [`pack_registers`]; a missing flag wire reads as 0.
pub fn unpack_registers(layout: &RegisterLayout, state: &BasisState) -> Result<(u64, u64, bool)> {
    let a = state.read_register(&layout.a)?;
    let b = state.read_register(&layout.b)?;
    let flag = layout.flag.is_some_and(|f| state.get(f));
    Ok((a, b, flag))
}

/// Full input-to-output map of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    width: usize,
    mapping: Vec<u64>,
}

impl TruthTable {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn mapping(&self) -> &[u64] {
        &self.mapping
    }

    pub fn get(&self, input: u64) -> u64 {
        self.mapping[input as usize]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.mapping.len()];
        for &out in &self.mapping {
            match seen.get_mut(out as usize) {
                Some(s) if !*s => *s = true,
                _ => return false,
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &o)| i as u64 == o)
    }
}

pub fn truth_table(circuit: &Circuit) -> Result<TruthTable> {
    truth_table_with_limit(circuit, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn truth_table_with_limit(circuit: &Circuit, limit: usize) -> Result<TruthTable> {
    let width = circuit.width();
    if width > limit.min(40) {
        return Err(Error::TooWide { width, limit });
    }
    let sim = Simulator::new(circuit);
    let mapping = (0..1u64 << width)
        .into_par_iter()
        .map(|s| sim.run_u64(s))
        .collect();
    Ok(TruthTable { width, mapping })
}

/// How inputs are drawn during verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Random { count: u64, seed: u64 },
}

/// Which inputs count as the verification domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Every assignment of every wire.
    AllStates,
    /// Every `(a, b)` register pair with the flag set to 1; other wires 0.
    FlagSlice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: BasisState,
    pub expected: BasisState,
    pub actual: BasisState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub domain: Domain,
    pub states_checked: u64,
    /// Lowest-index failing input, if any.
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn seed(&self) -> Option<u64> {
        match self.mode {
            VerifyMode::Random { seed, .. } => Some(seed),
            VerifyMode::Exhaustive => None,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "fail" };
        write!(f, "{verdict} checked={}", self.states_checked)?;
        if let Some(seed) = self.seed() {
            write!(f, " seed={seed}")?;
        }
        if let Some(cx) = &self.counterexample {
            write!(
                f,
                "\ncounterexample input={} expected={} actual={}",
                cx.input, cx.expected, cx.actual
            )?;
        }
        Ok(())
    }
}

/// Compares `circuit` against `reference` on the chosen domain.
///
/// Exhaustive scans run in parallel but report as a sequential scan would:
/// the counterexample is the lowest failing input index and
/// `states_checked` counts inputs up to and including it.
pub fn verify_equivalence<F>(
    circuit: &Circuit,
    reference: F,
    mode: VerifyMode,
    domain: Domain,
) -> Result<VerificationReport>
where
    F: Fn(&BasisState) -> BasisState + Sync,
{
    verify_equivalence_with_limit(circuit, reference, mode, domain, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn verify_equivalence_with_limit<F>(
    circuit: &Circuit,
    reference: F,
    mode: VerifyMode,
    domain: Domain,
    limit: usize,
) -> Result<VerificationReport>
where
    F: Fn(&BasisState) -> BasisState + Sync,
{
    let sampler = InputSampler::new(circuit, domain)?;
    let sim = Simulator::new(circuit);
    let check = |input: BasisState| -> Option<Counterexample> {
        let expected = reference(&input);
        let mut actual = input.clone();
        sim.run_in_place(&mut actual).expect("sampler builds circuit-width states");
        (actual != expected).then_some(Counterexample {
            input,
            expected,
            actual,
        })
    };

    let (states_checked, counterexample) = match mode {
        VerifyMode::Exhaustive => {
            if sampler.bits > limit {
                return Err(Error::TooWide {
                    width: sampler.bits,
                    limit,
                });
            }
            let total = 1u64 << sampler.bits;
            let hit = (0..total)
                .into_par_iter()
                .find_map_first(|i| check(sampler.nth(i)).map(|cx| (i, cx)));
            match hit {
                Some((i, cx)) => (i + 1, Some(cx)),
                None => (total, None),
            }
        }
        VerifyMode::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            let mut checked = 0;
            for _ in 0..count {
                checked += 1;
                if let Some(cx) = check(sampler.random(&mut rng)) {
                    found = Some(cx);
                    break;
                }
            }
            (checked, found)
        }
    };
    Ok(VerificationReport {
        mode,
        domain,
        states_checked,
        counterexample,
    })
}

struct InputSampler<'a> {
    width: usize,
    layout: &'a RegisterLayout,
    domain: Domain,
    bits: usize,
}

impl<'a> InputSampler<'a> {
    fn new(circuit: &'a Circuit, domain: Domain) -> Result<Self> {
        let layout = circuit.layout();
        let bits = match domain {
            Domain::AllStates => circuit.width(),
            Domain::FlagSlice => {
                if layout.flag.is_none() {
                    return Err(Error::Layout("flag slice needs a flag wire".into()));
                }
                if layout.a.len() > 64 || layout.b.len() > 64 {
                    return Err(Error::Range {
                        value: 0,
                        bits: layout.a.len().max(layout.b.len()),
                    });
                }
                layout.a.len() + layout.b.len()
            }
        };
        Ok(InputSampler {
            width: circuit.width(),
            layout,
            domain,
            bits,
        })
    }

    /// Input number `i` of an exhaustive scan (`bits <= 64`).
    fn nth(&self, i: u64) -> BasisState {
        match self.domain {
            Domain::AllStates => BasisState::from_u64(self.width, i),
            Domain::FlagSlice => {
                let na = self.layout.a.len();
                let a = i & low_mask(na);
                let b = if na >= 64 { 0 } else { i >> na };
                pack_registers(self.width, self.layout, a, b, true).expect("slice index fits")
            }
        }
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> BasisState {
        match self.domain {
            Domain::AllStates => {
                let mut s = BasisState::zero(self.width);
                for w in s.words.iter_mut() {
                    *w = rng.gen();
                }
                let tail = self.width % 64;
                if tail != 0 {
                    *s.words.last_mut().unwrap() &= low_mask(tail);
                }
                s
            }
            Domain::FlagSlice => {
                let a = rng.gen::<u64>() & low_mask(self.layout.a.len());
                let b = rng.gen::<u64>() & low_mask(self.layout.b.len());
                pack_registers(self.width, self.layout, a, b, true).expect("sample fits")
            }
        }
    }
}

/// Reference map for arithmetic layouts: `b <- b + a (mod 2^|b|)`, or
/// `b <- b + 1` when the layout has no `a` register. Everything else is
/// left as is.
pub fn arithmetic_reference(
    layout: &RegisterLayout,
) -> Result<impl Fn(&BasisState) -> BasisState + Sync + '_> {
    let n = layout.b.len();
    if n == 0 || n > 64 {
        return Err(Error::Layout(format!(
            "arithmetic reference needs a b register of 1..=64 wires, got {n}"
        )));
    }
    if layout.flag.is_none() {
        return Err(Error::Layout("arithmetic reference needs a flag wire".into()));
    }
    if layout.a.len() > n {
        return Err(Error::Layout("a register is wider than b register".into()));
    }
    Ok(move |state: &BasisState| {
        let (a, b, _) = unpack_registers(layout, state).expect("registers fit in 64 bits");
        let addend = if layout.a.is_empty() { 1 } else { a };
        let sum = ((u128::from(b) + u128::from(addend)) & ((1u128 << n) - 1)) as u64;
        let mut out = state.clone();
        out.write_register(&layout.b, sum).expect("sum reduced mod 2^n");
        out
    })
}
