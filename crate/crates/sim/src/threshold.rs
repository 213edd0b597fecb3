//! Threshold estimates from crossings of logical error curves.
//!
//! For each pair of codes with consecutive distances, `ln p_log` of the larger
//! code minus that of the smaller is interpolated linearly in `ln p` and the
//! first upward zero crossing is taken. The estimate is the median over pairs,
//! with a parametric bootstrap interval (binomial resampling of every point).

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::{SimError, SimResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCrossing {
    pub small: String,
    pub large: String,
    pub d_small: usize,
    pub d_large: usize,
    pub crossing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub decoder: String,
    pub estimate: f64,
    /// 95% bootstrap interval; absent when no resample had a crossing.
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub pairs: Vec<PairCrossing>,
    pub bootstrap: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
struct Curve {
    id: String,
    d: usize,
    // (p, failures, trials), sorted by p
    points: Vec<(f64, u64, u64)>,
}

fn curves(results: &[SimResult]) -> Result<(String, Vec<Curve>), SimError> {
    let Some(first) = results.first() else {
        return Err(SimError::InsufficientData);
    };
    if results.iter().any(|r| r.decoder != first.decoder) {
        return Err(SimError::Invalid("results mix several decoders".into()));
    }
    let mut by_code: BTreeMap<&str, Curve> = BTreeMap::new();
    for r in results {
        let d = r
            .d
            .ok_or_else(|| SimError::Invalid(format!("code {} has no distance", r.code_id)))?;
        by_code
            .entry(&r.code_id)
            .or_insert_with(|| Curve {
                id: r.code_id.clone(),
                d,
                points: Vec::new(),
            })
            .points
            .push((r.p_phys, r.failures, r.trials));
    }
    let mut out: Vec<Curve> = by_code.into_values().collect();
    for c in &mut out {
        c.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out.sort_by(|a, b| a.d.cmp(&b.d).then(a.id.cmp(&b.id)));
    Ok((first.decoder.clone(), out))
}

fn log_rate(failures: u64, trials: u64) -> f64 {
    ((failures as f64 + 0.5) / (trials as f64 + 1.0)).ln()
}

// first upward crossing of ln rate(large) - ln rate(small) over shared p values
fn crossing(small: &[(f64, u64, u64)], large: &[(f64, u64, u64)]) -> Option<f64> {
    let diffs: Vec<(f64, f64)> = small
        .iter()
        .filter_map(|&(p, fs, ts)| {
            large
                .iter()
                .find(|q| q.0 == p)
                .map(|&(_, fl, tl)| (p.ln(), log_rate(fl, tl) - log_rate(fs, ts)))
        })
        .collect();
    diffs.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        (y0 < 0.0 && y1 >= 0.0).then(|| (x0 + (x1 - x0) * (-y0) / (y1 - y0)).exp())
    })
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[m] } else { (xs[m - 1] + xs[m]) / 2.0 })
}

// all code pairs whose distances are adjacent among the distinct distances
fn consecutive_pairs(curves: &[Curve]) -> Vec<(usize, usize)> {
    let mut ds: Vec<usize> = curves.iter().map(|c| c.d).collect();
    ds.dedup();
    let with = |d: usize| (0..curves.len()).filter(move |&i| curves[i].d == d);
    ds.windows(2)
        .flat_map(|w| with(w[0]).flat_map(move |i| with(w[1]).map(move |j| (i, j))))
        .collect()
}

fn median_crossing(curves: &[Curve], pairs: &[(usize, usize)]) -> Option<f64> {
    median(
        pairs
            .iter()
            .filter_map(|&(i, j)| crossing(&curves[i].points, &curves[j].points))
            .collect(),
    )
}

pub fn estimate_threshold(results: &[SimResult], bootstrap: usize, seed: u64) -> Result<ThresholdEstimate, SimError> {
    let (decoder, curves) = curves(results)?;
    let pairs = consecutive_pairs(&curves);
    let crossings: Vec<PairCrossing> = pairs
        .iter()
        .filter_map(|&(i, j)| {
            crossing(&curves[i].points, &curves[j].points).map(|x| PairCrossing {
                small: curves[i].id.clone(),
                large: curves[j].id.clone(),
                d_small: curves[i].d,
                d_large: curves[j].d,
                crossing: x,
            })
        })
        .collect();
    let estimate = median(crossings.iter().map(|c| c.crossing).collect()).ok_or(SimError::InsufficientData)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(bootstrap);
    for _ in 0..bootstrap {
        let resampled: Vec<Curve> = curves
            .iter()
            .map(|c| Curve {
                points: c
                    .points
                    .iter()
                    .map(|&(p, f, t)| {
                        let rate = f as f64 / t as f64;
                        let draw = Binomial::new(t, rate).expect("rate in [0, 1]").sample(&mut rng);
                        (p, draw, t)
                    })
                    .collect(),
                ..c.clone()
            })
            .collect();
        if let Some(x) = median_crossing(&resampled, &pairs) {
            samples.push(x);
        }
    }
    samples.sort_by(f64::total_cmp);
    let pick = |q: f64| samples[((samples.len() - 1) as f64 * q).round() as usize];
    let (ci_lo, ci_hi) = if samples.is_empty() {
        (None, None)
    } else {
        (Some(pick(0.025)), Some(pick(0.975)))
    };
    Ok(ThresholdEstimate {
        decoder,
        estimate,
        ci_lo,
        ci_hi,
        pairs: crossings,
        bootstrap,
        seed,
    })
}

/// Whether, at every shared grid point below `p_max`, each code's Wilson
/// interval lies strictly below that of the next smaller distance.
pub fn ordered_below(results: &[SimResult], p_max: f64) -> Result<bool, SimError> {
    let (_, curves) = curves(results)?;
    let pairs = consecutive_pairs(&curves);
    let mut compared = 0;
    for (i, j) in pairs {
        for &(p, fs, ts) in curves[i].points.iter().filter(|pt| pt.0 < p_max) {
            let Some(&(_, fl, tl)) = curves[j].points.iter().find(|q| q.0 == p) else {
                continue;
            };
            compared += 1;
            let (small_lo, _) = crate::wilson_interval(fs, ts);
            let (_, large_hi) = crate::wilson_interval(fl, tl);
            if large_hi >= small_lo {
                return Ok(false);
            }
        }
    }
    if compared == 0 {
        return Err(SimError::InsufficientData);
    }
    Ok(true)
}
