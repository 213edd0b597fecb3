//! Code-capacity Monte Carlo under depolarizing noise, and threshold
//! estimation from the resulting logical error curves.
//!
//! Trial `t` of a point draws from ChaCha8 stream `t` of the generator seeded
//! by `seed`, so results do not depend on how trials are spread over threads.

pub mod io;
pub mod threshold;

use gbcode::code::CodeSpaces;
use gbcode::{Bits, GBCode};
use gbdecode::{CssDecoder, DecodeError, DecoderChoice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{read_results, write_results, RunManifest};
pub use threshold::{estimate_threshold, ordered_below, PairCrossing, ThresholdEstimate};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("no crossing is bracketed by the data")]
    InsufficientData,
    #[error("invalid simulation input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Independent single-qubit Pauli noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl NoiseModel {
    pub fn depolarizing(p: f64) -> Self {
        NoiseModel {
            p_x: p / 3.0,
            p_y: p / 3.0,
            p_z: p / 3.0,
        }
    }

    pub fn p_phys(&self) -> f64 {
        self.p_x + self.p_y + self.p_z
    }
}

/// X and Z components of a random Pauli error on `len` qubits.
pub fn sample_error<R: Rng>(len: usize, noise: &NoiseModel, rng: &mut R) -> (Bits, Bits) {
    let mut x = Bits::zeros(len);
    let mut z = Bits::zeros(len);
    let (cx, cy, cz) = (noise.p_x, noise.p_x + noise.p_y, noise.p_phys());
    for q in 0..len {
        let r: f64 = rng.gen();
        if r < cx {
            x.set(q, true);
        } else if r < cy {
            x.set(q, true);
            z.set(q, true);
        } else if r < cz {
            z.set(q, true);
        }
    }
    (x, z)
}

/// What counts as a successful decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureCriterion {
    /// The residual must be a stabilizer.
    #[default]
    Class,
    /// The correction must equal the error.
    Exact,
}

/// True when the residual errors leave a syndrome or act as a nontrivial logical.
pub fn is_logical_failure(code: &GBCode, spaces: &CodeSpaces, residual_x: &Bits, residual_z: &Bits) -> bool {
    !code.hz().mul_vec(residual_x).is_zero()
        || !code.hx().mul_vec(residual_z).is_zero()
        || spaces.x_class(residual_x) != 0
        || spaces.z_class(residual_z) != 0
}

/// A code under simulation, with an identifier and known distance if any.
#[derive(Debug, Clone)]
pub struct SimCode {
    pub id: String,
    pub code: GBCode,
    pub d: Option<usize>,
}

/// One Monte Carlo point. `n` is the number of physical qubits and `k` the
/// number of logical qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub decoder: String,
    pub p_phys: f64,
    pub trials: u64,
    pub failures: u64,
    pub p_log: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
}

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959963984540054;
    let n = trials as f64;
    let p = failures as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let centre = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Number of failing trials out of `trials`.
pub fn count_failures(
    code: &GBCode,
    decoder: &CssDecoder,
    noise: &NoiseModel,
    trials: u64,
    seed: u64,
    criterion: FailureCriterion,
) -> u64 {
    let spaces = code.spaces();
    (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = trial_rng(seed, t);
            let (ex, ez) = sample_error(code.len(), noise, &mut rng);
            let decoded = decoder.decode(&code.hz().mul_vec(&ex), &code.hx().mul_vec(&ez));
            let Ok((cx, cz)) = decoded else {
                return true;
            };
            let (rx, rz) = (ex.xor(&cx.support), ez.xor(&cz.support));
            match criterion {
                FailureCriterion::Class => is_logical_failure(code, &spaces, &rx, &rz),
                FailureCriterion::Exact => !(rx.is_zero() && rz.is_zero()),
            }
        })
        .count() as u64
}

pub fn run_point(
    code: &SimCode,
    choice: DecoderChoice,
    noise: &NoiseModel,
    trials: u64,
    seed: u64,
) -> Result<SimResult, SimError> {
    if trials == 0 {
        return Err(SimError::Invalid("trials must be positive".into()));
    }
    let p = tidy(noise.p_phys());
    let decoder = CssDecoder::new(&code.code, choice, p)?;
    let failures = count_failures(&code.code, &decoder, noise, trials, seed, FailureCriterion::Class);
    let (ci_lo, ci_hi) = wilson_interval(failures, trials);
    Ok(SimResult {
        code_id: code.id.clone(),
        n: code.code.len(),
        k: code.code.logical_qubits(),
        d: code.d,
        decoder: choice.to_string(),
        p_phys: p,
        trials,
        failures,
        p_log: failures as f64 / trials as f64,
        ci_lo,
        ci_hi,
        seed,
    })
}

/// Every code at every grid point under depolarizing noise, code-major order.
/// All points share `seed`, so curves use common random numbers.
pub fn sweep(
    codes: &[SimCode],
    choice: DecoderChoice,
    grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<SimResult>, SimError> {
    let mut out = Vec::with_capacity(codes.len() * grid.len());
    for code in codes {
        for &p in grid {
            out.push(run_point(code, choice, &NoiseModel::depolarizing(p), trials, seed)?);
        }
    }
    Ok(out)
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced in `ln p`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    spaced(lo.ln(), hi.ln(), points).into_iter().map(|x| tidy(x.exp())).collect()
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    spaced(lo, hi, points).into_iter().map(tidy).collect()
}

fn spaced(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

// rounds away float noise such as 0.09999999999999999
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}
