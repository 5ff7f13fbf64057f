//! Pauli-frame simulation: channel sampling, syndrome extraction, windowed table-lookup
//! decoding and residual classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::conv_core::{in_rowspace, shifted_product, ConvCheckMatrix};
use crate::distill::DistillConstruction;
use crate::error::{Error, Result};
use crate::grandfather::{GrandfatherCode, SyndromeEntry, SyndromeTable};
use crate::pauli::{ConvGenerator, Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl PauliChannel {
    pub fn new(p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let ok = [p_x, p_y, p_z].iter().all(|p| (0.0..=1.0).contains(p)) && p_x + p_y + p_z <= 1.0 + 1e-12;
        if !ok {
            return Err(Error::InvalidParams(format!("bad channel ({p_x}, {p_y}, {p_z})")));
        }
        Ok(PauliChannel { p_x, p_y, p_z })
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(p / 3.0, p / 3.0, p / 3.0)
    }

    fn sample(&self, rng: &mut impl Rng) -> Pauli {
        let u: f64 = rng.random();
        if u < self.p_x {
            Pauli::X
        } else if u < self.p_x + self.p_y {
            Pauli::Y
        } else if u < self.p_x + self.p_y + self.p_z {
            Pauli::Z
        } else {
            Pauli::I
        }
    }
}

/// What a receiver measures and which residuals are harmless.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrectionModel {
    /// Qubits per frame, including noiseless ones.
    pub n: usize,
    /// Measured generators, each shifted to start in frame 0.
    pub measured: Vec<ConvGenerator>,
    /// Residuals in the row space of these are harmless.
    pub passive: Vec<ConvGenerator>,
    pub noiseless: Vec<usize>,
    /// Frames spanned by the longest measured generator.
    pub window: usize,
}

impl CorrectionModel {
    pub fn new(n: usize, measured: Vec<ConvGenerator>, passive: Vec<ConvGenerator>, noiseless: Vec<usize>) -> Self {
        let mut window = 1;
        let measured = measured
            .into_iter()
            .filter_map(|g| {
                let (lo, hi) = g.frame_range()?;
                window = window.max((hi - lo + 1) as usize);
                Some(g.shift(-lo))
            })
            .collect();
        CorrectionModel { n, measured, passive, noiseless, window }
    }

    pub fn from_stabilizer(h: &ConvCheckMatrix) -> Self {
        Self::new(h.n, h.gens.clone(), h.gens.clone(), Vec::new())
    }

    pub fn from_grandfather(code: &GrandfatherCode) -> Self {
        Self::new(code.params.n, code.measured(), code.passive(), Vec::new())
    }

    pub fn from_distill(d: &DistillConstruction) -> Self {
        let h = &d.stabilizer;
        Self::new(h.n, h.gens.clone(), h.gens.clone(), d.noiseless_columns.clone())
    }

    pub fn noisy(&self) -> Vec<usize> {
        (0..self.n).filter(|q| !self.noiseless.contains(q)).collect()
    }

    pub fn table(&self, weight: usize) -> Result<SyndromeTable> {
        SyndromeTable::build(&self.measured, self.n, &self.noiseless, weight, self.window)
    }
}

fn put(e: &mut ConvGenerator, q: usize, frame: i64, p: Pauli) {
    let (z, x) = p.zx();
    let m = LaurentPoly::monomial(frame);
    if z == 1 {
        e.z[q] = e.z[q].add(&m);
    }
    if x == 1 {
        e.x[q] = e.x[q].add(&m);
    }
}

fn sample_with(ch: &PauliChannel, n: usize, noiseless: &[usize], frames: usize, rng: &mut impl Rng) -> ConvGenerator {
    let mut e = ConvGenerator::zero(n);
    for t in 0..frames {
        for q in (0..n).filter(|q| !noiseless.contains(q)) {
            let p = ch.sample(rng);
            if p != Pauli::I {
                put(&mut e, q, t as i64, p);
            }
        }
    }
    e
}

/// I.i.d. errors on the noisy qubits of frames 0..frames.
pub fn sample_errors(ch: &PauliChannel, n: usize, noiseless: &[usize], frames: usize, seed: u64) -> ConvGenerator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(ch, n, noiseless, frames, &mut rng)
}

/// Row g, column t: coefficient of D^t in (g . e).
pub fn syndromes_of(gens: &[ConvGenerator], e: &ConvGenerator, window: usize) -> Result<Vec<Vec<u8>>> {
    gens.iter()
        .map(|g| {
            let p = shifted_product(g, e)?;
            Ok((0..window as i64).map(|t| p.coeff(t) as u8).collect())
        })
        .collect()
}

/// Outcomes of measuring every shift of every generator that touches frames 0..frames.
/// Entry [g][s + window - 1] belongs to generator g started in frame s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamSyndrome {
    pub window: usize,
    pub bits: Vec<Vec<u8>>,
}

impl StreamSyndrome {
    pub fn measure(model: &CorrectionModel, e: &ConvGenerator, frames: usize) -> Result<Self> {
        let w = model.window as i64;
        let bits = model
            .measured
            .iter()
            .map(|g| {
                let p = shifted_product(g, e)?;
                Ok((-(w - 1)..frames as i64).map(|s| p.coeff(-s) as u8).collect())
            })
            .collect::<Result<_>>()?;
        Ok(StreamSyndrome { window: model.window, bits })
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().flatten().all(|&b| b == 0)
    }

    /// Table key for an error in frame f: bit (g, t) from the generator started in frame f - t.
    pub fn key(&self, f: usize) -> Vec<u8> {
        let mut k = Vec::with_capacity(self.bits.len() * self.window);
        for row in &self.bits {
            for t in 0..self.window {
                k.push(row[f + self.window - 1 - t]);
            }
        }
        k
    }

    fn flip(&mut self, f: usize, key: &[u8]) {
        let w = self.window;
        for (g, row) in self.bits.iter_mut().enumerate() {
            for t in 0..w {
                row[f + w - 1 - t] ^= key[g * w + t];
            }
        }
    }
}

pub trait Decoder {
    /// Estimated error over frames 0..frames.
    fn decode(&self, model: &CorrectionModel, syndrome: &StreamSyndrome, frames: usize) -> ConvGenerator;
}

/// Frame-by-frame lookup, assuming errors only in frames that are multiples of `spacing`.
#[derive(Clone, Debug)]
pub struct TableDecoder {
    pub table: SyndromeTable,
    pub spacing: usize,
}

impl TableDecoder {
    pub fn new(table: SyndromeTable) -> Self {
        let spacing = table.window;
        TableDecoder { table, spacing }
    }
}

impl Decoder for TableDecoder {
    fn decode(&self, model: &CorrectionModel, syndrome: &StreamSyndrome, frames: usize) -> ConvGenerator {
        let mut syn = syndrome.clone();
        let mut est = ConvGenerator::zero(model.n);
        for f in (0..frames).step_by(self.spacing.max(1)) {
            let key = syn.key(f);
            if key.iter().all(|&b| b == 0) {
                continue;
            }
            if let Some(entry) = self.table.lookup(&key) {
                for (q, &p) in entry.error.0.iter().enumerate() {
                    if p != Pauli::I {
                        put(&mut est, q, f as i64, p);
                    }
                }
                syn.flip(f, &entry.syndrome);
            }
        }
        est
    }
}

/// Lookup at any frame: scanning generator start frames in order, the first nonzero start s
/// is explained by the frame f in s..s+window whose key is a table entry that first
/// reaches back exactly to s.
#[derive(Clone, Debug)]
pub struct SlidingDecoder {
    pub table: SyndromeTable,
}

impl SlidingDecoder {
    pub fn new(table: SyndromeTable) -> Self {
        SlidingDecoder { table }
    }

    /// Largest t with a nonzero bit from the generator started t frames before the error.
    fn reach(&self, key: &[u8]) -> Option<usize> {
        let w = self.table.window;
        (0..w).rev().find(|&t| key.chunks(w).any(|g| g[t] == 1))
    }
}

impl Decoder for SlidingDecoder {
    fn decode(&self, model: &CorrectionModel, syndrome: &StreamSyndrome, frames: usize) -> ConvGenerator {
        let w = syndrome.window;
        let mut syn = syndrome.clone();
        let mut est = ConvGenerator::zero(model.n);
        let len = syn.bits.first().map_or(0, |r| r.len());
        for idx in 0..len {
            if syn.bits.iter().all(|r| r[idx] == 0) {
                continue;
            }
            // generator start frame of this column is idx - (w - 1)
            let lo = idx.saturating_sub(w - 1);
            let mut best: Option<(usize, usize, &SyndromeEntry)> = None;
            for f in lo..(idx + 1).min(frames) {
                let Some(entry) = self.table.lookup(&syn.key(f)) else { continue };
                if self.reach(&entry.syndrome) != Some(f + w - 1 - idx) {
                    continue;
                }
                // bits left in the next window of start frames if this explanation is taken
                let mut trial = syn.clone();
                trial.flip(f, &entry.syndrome);
                let left = trial.bits.iter().flat_map(|r| r.iter().skip(idx).take(w)).filter(|&&b| b == 1).count();
                if best.is_none_or(|b| left < b.1) {
                    best = Some((f, left, entry));
                }
            }
            if let Some((f, _, entry)) = best {
                for (q, &p) in entry.error.0.iter().enumerate() {
                    if p != Pauli::I {
                        put(&mut est, q, f as i64, p);
                    }
                }
                syn.flip(f, &entry.syndrome);
            }
        }
        est
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Injection {
    Channel(PauliChannel),
    /// Exactly one uniformly random single-qubit error in every aligned frame.
    OnePerAlignedFrame {
        spacing: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trials: usize,
    pub frames: usize,
    pub raw_error_rate: f64,
    pub residual_logical_rate: f64,
    pub syndrome_miss_rate: f64,
    pub seed: u64,
    /// Series depth for rational encoder entries; frames outside it are not simulated.
    pub truncate_depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimOptions {
    pub trials: usize,
    pub frames: usize,
    pub seed: u64,
    pub truncate_depth: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { trials: 1000, frames: 20, seed: 0, truncate_depth: 32 }
    }
}

fn inject(model: &CorrectionModel, how: &Injection, frames: usize, rng: &mut impl Rng) -> ConvGenerator {
    match how {
        Injection::Channel(ch) => sample_with(ch, model.n, &model.noiseless, frames, rng),
        Injection::OnePerAlignedFrame { spacing } => {
            let noisy = model.noisy();
            let mut e = ConvGenerator::zero(model.n);
            for f in (0..frames).step_by((*spacing).max(1)) {
                let q = noisy[rng.random_range(0..noisy.len())];
                let p = [Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..3)];
                put(&mut e, q, f as i64, p);
            }
            e
        }
    }
}

fn weight(e: &ConvGenerator) -> usize {
    (0..e.n)
        .map(|q| {
            let mut t: Vec<i64> = e.z[q].terms().iter().chain(e.x[q].terms()).copied().collect();
            t.sort_unstable();
            t.dedup();
            t.len()
        })
        .sum()
}

/// Outcome of decoding one error stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub residual: ConvGenerator,
    pub syndrome_left: bool,
    pub logical: bool,
}

pub fn correct_once(
    model: &CorrectionModel,
    decoder: &dyn Decoder,
    e: &ConvGenerator,
    frames: usize,
) -> Result<TrialOutcome> {
    let syn = StreamSyndrome::measure(model, e, frames)?;
    let est = decoder.decode(model, &syn, frames);
    let residual = e.add(&est);
    let syndrome_left = !StreamSyndrome::measure(model, &residual, frames)?.is_zero();
    let logical = !in_rowspace(&model.passive, &residual);
    Ok(TrialOutcome { residual, syndrome_left, logical })
}

/// Independent trials; trial i draws from stream i of the seeded generator.
pub fn run_correction(
    model: &CorrectionModel,
    decoder: &dyn Decoder,
    how: &Injection,
    opts: &SimOptions,
) -> Result<TrialReport> {
    let SimOptions { trials, frames, seed, truncate_depth } = *opts;
    let (mut raw, mut logical, mut missed) = (0usize, 0usize, 0usize);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let e = inject(model, how, frames, &mut rng);
        raw += weight(&e);
        let out = correct_once(model, decoder, &e, frames)?;
        logical += out.logical as usize;
        missed += out.syndrome_left as usize;
    }
    let uses = (trials * frames * model.noisy().len()).max(1);
    let t = trials.max(1) as f64;
    Ok(TrialReport {
        trials,
        frames,
        raw_error_rate: raw as f64 / uses as f64,
        residual_logical_rate: logical as f64 / t,
        syndrome_miss_rate: missed as f64 / t,
        seed,
        truncate_depth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Every single-qubit error in every aligned frame, and every pair of single-qubit errors in
/// two consecutive aligned frames; each must be recovered exactly.
pub fn exhaustive_single_errors(
    model: &CorrectionModel,
    decoder: &TableDecoder,
    frames: usize,
) -> Result<ExhaustiveReport> {
    let sp = decoder.spacing.max(1);
    let singles: Vec<(usize, Pauli)> =
        model.noisy().into_iter().flat_map(|q| [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (q, p))).collect();
    let label = |q: usize, p: Pauli, f: usize| format!("{}{}@{}", p.letter(), q + 1, f);
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut check = |e: ConvGenerator, name: String| -> Result<()> {
        cases += 1;
        if !correct_once(model, decoder, &e, frames)?.residual.is_zero() {
            failures.push(name);
        }
        Ok(())
    };
    for f in (0..frames).step_by(sp) {
        for &(q, p) in &singles {
            let mut e = ConvGenerator::zero(model.n);
            put(&mut e, q, f as i64, p);
            check(e, label(q, p, f))?;
        }
    }
    if frames > sp {
        for &(q1, p1) in &singles {
            for &(q2, p2) in &singles {
                let mut e = ConvGenerator::zero(model.n);
                put(&mut e, q1, 0, p1);
                put(&mut e, q2, sp as i64, p2);
                check(e, format!("{} {}", label(q1, p1, 0), label(q2, p2, sp)))?;
            }
        }
    }
    Ok(ExhaustiveReport { cases, failures })
}

/// The single-frame error as a Pauli string, for reporting.
pub fn frame_error(e: &ConvGenerator, t: i64) -> PauliString {
    e.frame(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_channel_is_identity() {
        let ch = PauliChannel::depolarizing(0.0).unwrap();
        assert!(sample_errors(&ch, 3, &[], 10, 1).is_zero());
    }

    #[test]
    fn full_x_channel() {
        let ch = PauliChannel::new(1.0, 0.0, 0.0).unwrap();
        let e = sample_errors(&ch, 2, &[1], 4, 1);
        assert_eq!(e.x[0], LaurentPoly::from_exponents(0..4));
        assert!(e.x[1].is_zero() && e.z[0].is_zero());
    }

    #[test]
    fn rejects_bad_channel() {
        assert!(PauliChannel::new(0.6, 0.6, 0.0).is_err());
        assert!(PauliChannel::new(-0.1, 0.0, 0.0).is_err());
    }
}
