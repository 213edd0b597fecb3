use gbcode::families::{logical_reps_odd, make_even, make_odd};
use gbcode::Bits;
use gbdecode::{CssDecoder, DecoderChoice};
use gbsim::{
    count_failures, estimate_threshold, is_logical_failure, linear_grid, log_grid, ordered_below, read_results,
    run_point, sample_error, sweep, wilson_interval, write_results, FailureCriterion, NoiseModel, SimCode, SimError,
    SimResult,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn odd(d: usize) -> SimCode {
    SimCode {
        id: format!("odd-d{d}"),
        code: make_odd(d).unwrap(),
        d: Some(d),
    }
}

#[test]
fn sampling_edge_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (x, z) = sample_error(50, &NoiseModel::depolarizing(0.0), &mut rng);
    assert!(x.is_zero() && z.is_zero());
    let all_x = NoiseModel {
        p_x: 1.0,
        p_y: 0.0,
        p_z: 0.0,
    };
    let (x, z) = sample_error(50, &all_x, &mut rng);
    assert_eq!(x, Bits::ones(50));
    assert!(z.is_zero());
}

#[test]
fn sampling_marginals() {
    let p = 0.12;
    let draws = 1_000_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut any, mut xs, mut zs, mut ys) = (0u64, 0u64, 0u64, 0u64);
    for _ in 0..draws / 10 {
        let (x, z) = sample_error(10, &NoiseModel::depolarizing(p), &mut rng);
        any += x.or_count(&z);
        xs += x.weight() as u64;
        zs += z.weight() as u64;
        ys += x.and(&z).weight() as u64;
    }
    let within = |count: u64, q: f64| {
        let sigma = (draws as f64 * q * (1.0 - q)).sqrt();
        (count as f64 - draws as f64 * q).abs() < 3.0 * sigma
    };
    assert!(within(any, p));
    assert!(within(xs, 2.0 * p / 3.0));
    assert!(within(zs, 2.0 * p / 3.0));
    assert!(within(ys, p / 3.0));
}

trait OrCount {
    fn or_count(&self, other: &Bits) -> u64;
}

impl OrCount for Bits {
    fn or_count(&self, other: &Bits) -> u64 {
        (self.weight() + other.weight() - self.and(other).weight()) as u64
    }
}

#[test]
fn failure_examples() {
    let code = make_odd(3).unwrap();
    let spaces = code.spaces();
    let zero = Bits::zeros(10);
    assert!(!is_logical_failure(&code, &spaces, &zero, &zero));
    assert!(!is_logical_failure(&code, &spaces, code.hx().row(0), &zero));
    assert!(!is_logical_failure(&code, &spaces, &zero, code.hz().row(2)));
    let reps = logical_reps_odd(3).unwrap();
    assert!(is_logical_failure(&code, &spaces, &reps.xi, &zero));
    assert!(is_logical_failure(&code, &spaces, &zero, &reps.zz));
    // nonzero syndrome
    assert!(is_logical_failure(&code, &spaces, &Bits::from_indices(10, [0]), &zero));
}

#[test]
fn noiseless_point_never_fails() {
    let r = run_point(&odd(3), DecoderChoice::bp_osd(0), &NoiseModel::depolarizing(0.0), 500, 9).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.p_log, 0.0);
    assert_eq!((r.n, r.k, r.d), (10, 2, Some(3)));
}

#[test]
fn suppression_below_pseudothreshold() {
    let r = run_point(&odd(3), DecoderChoice::bp_osd(0), &NoiseModel::depolarizing(0.01), 10_000, 5).unwrap();
    // every single-qubit error is corrected, so a failure needs at least two faults
    let q = 0.01f64;
    let two_or_more = 1.0 - (1.0 - q).powi(10) - 10.0 * q * (1.0 - q).powi(9);
    let sigma = (two_or_more / 10_000.0).sqrt();
    assert!(r.p_log <= two_or_more + 3.0 * sigma, "{} vs {two_or_more}", r.p_log);
    assert!(r.p_log < q / 2.0);
    let hi = run_point(&odd(3), DecoderChoice::Mwpm, &NoiseModel::depolarizing(0.5), 2_000, 5).unwrap();
    assert!(hi.p_log < 1.0 && hi.p_log > 0.3);
}

#[test]
fn independent_of_thread_count() {
    let code = odd(5);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_point(&code, DecoderChoice::bp_osd(2), &NoiseModel::depolarizing(0.1), 3_000, 42).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
    assert_ne!(one.failures, run_point(&code, DecoderChoice::bp_osd(2), &NoiseModel::depolarizing(0.1), 3_000, 43).unwrap().failures);
}

#[test]
fn exact_recovery_overcounts_on_degenerate_code() {
    let code = make_odd(5).unwrap();
    let noise = NoiseModel::depolarizing(0.03);
    for choice in [DecoderChoice::bp_osd(0), DecoderChoice::Mwpm] {
        let dec = CssDecoder::new(&code, choice, 0.03).unwrap();
        let class = count_failures(&code, &dec, &noise, 5_000, 11, FailureCriterion::Class);
        let exact = count_failures(&code, &dec, &noise, 5_000, 11, FailureCriterion::Exact);
        assert!(exact > class, "{choice}: exact {exact} class {class}");
    }
}

fn synthetic(id: &str, d: usize, points: &[(f64, f64)]) -> Vec<SimResult> {
    let trials = 100_000;
    points
        .iter()
        .map(|&(p, rate)| {
            let failures = (rate * trials as f64).round() as u64;
            let (ci_lo, ci_hi) = wilson_interval(failures, trials);
            SimResult {
                code_id: id.into(),
                n: 0,
                k: 2,
                d: Some(d),
                decoder: "mwpm".into(),
                p_phys: p,
                trials,
                failures,
                p_log: failures as f64 / trials as f64,
                ci_lo,
                ci_hi,
                seed: 0,
            }
        })
        .collect()
}

// p_log = A (p / pth)^((d+1)/2), so every pair crosses at exactly pth
fn power_law(d: usize, pth: f64, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&p| (p, (0.3 * (p / pth).powf((d as f64 + 1.0) / 2.0)).min(0.9)))
        .collect()
}

#[test]
fn threshold_from_synthetic_curves() {
    let grid = linear_grid(0.08, 0.24, 9);
    let mut results = Vec::new();
    for d in [3, 5, 7] {
        results.extend(synthetic(&format!("c{d}"), d, &power_law(d, 0.145, &grid)));
    }
    let est = estimate_threshold(&results, 200, 3).unwrap();
    assert_eq!(est.pairs.len(), 2);
    assert!((est.estimate - 0.145).abs() < 0.01, "{}", est.estimate);
    let (lo, hi) = (est.ci_lo.unwrap(), est.ci_hi.unwrap());
    assert!(lo <= est.estimate && est.estimate <= hi);
    assert_eq!(estimate_threshold(&results, 200, 3).unwrap(), est);
    assert!(ordered_below(&results, 0.1).unwrap());
    assert!(!ordered_below(&results, 0.2).unwrap());
}

#[test]
fn identical_codes_have_no_crossing() {
    let grid = linear_grid(0.08, 0.24, 5);
    let curve = power_law(5, 0.145, &grid);
    let mut results = synthetic("a", 3, &curve);
    results.extend(synthetic("b", 5, &curve));
    assert!(matches!(estimate_threshold(&results, 10, 0), Err(SimError::InsufficientData)));
    assert!(matches!(estimate_threshold(&[], 10, 0), Err(SimError::InsufficientData)));
}

#[test]
fn csv_round_trip() {
    let codes = [odd(3), SimCode { id: "even-d4".into(), code: make_even(4).unwrap(), d: None }];
    let results = sweep(&codes, DecoderChoice::Mwpm, &[0.05, 0.1], 200, 8).unwrap();
    let mut buf = Vec::new();
    write_results(&mut buf, &results).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("code_id,n,k,d,decoder,p_phys,trials,failures,p_log,ci_lo,ci_hi,seed\n"));
    assert!(text.contains("even-d4,16,2,,mwpm,0.05,200,"));
    assert_eq!(read_results(buf.as_slice()).unwrap(), results);
}

#[test]
fn grids() {
    assert_eq!(linear_grid(0.08, 0.24, 9)[1], 0.1);
    let g = log_grid(0.01, 0.3, 20);
    assert_eq!((g[0], g[19], g.len()), (0.01, 0.3, 20));
    assert!(g.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn logical_rate_trends_upward() {
    let grid = linear_grid(0.02, 0.2, 7);
    let results = sweep(&[odd(5)], DecoderChoice::bp_osd(0), &grid, 1_500, 21).unwrap();
    let rates: Vec<f64> = results.iter().map(|r| r.p_log).collect();
    // rank correlation with p: count increasing pairs
    let mut up = 0;
    let mut total = 0;
    for i in 0..rates.len() {
        for j in i + 1..rates.len() {
            total += 1;
            up += usize::from(rates[j] >= rates[i]);
        }
    }
    assert!(up * 10 >= total * 9, "{rates:?}");
    assert!(rates[6] > rates[0]);
}
