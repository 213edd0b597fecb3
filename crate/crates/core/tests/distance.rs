use gbcode::distance::{
    classical_cyclic_distance, divisibility_upper_bound, effective_distance, gb_distance_bounds,
    min_distance_bruteforce, min_distance_with, min_distance_z, refine_case_a, DistanceError,
    Engine, ExtractionPattern,
};
use gbcode::families::{make_even, make_odd};
use gbcode::{build_gb, Bits, CyclicPoly, F2Poly, GBCode, RowEchelon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cp(n: usize, e: &[usize]) -> CyclicPoly {
    CyclicPoly::from_exponents(n, e.iter().copied())
}

fn progression_p(n: usize) -> CyclicPoly {
    CyclicPoly::progression(n, 0, 3, 7)
}

// Minimum weight over all of ker(H_z) minus rowspace(H_x), by listing the kernel.
fn kernel_enumeration_distance(code: &GBCode) -> Option<usize> {
    let ker = code.hz().kernel();
    assert!(ker.len() <= 22);
    let stab = RowEchelon::new(code.hx());
    let mut best: Option<usize> = None;
    let mut v = Bits::zeros(code.len());
    for t in 1u64..(1u64 << ker.len()) {
        v.xor_assign(&ker[t.trailing_zeros() as usize]);
        if !stab.contains(&v) {
            let w = v.weight();
            best = Some(best.map_or(w, |b: usize| b.min(w)));
        }
    }
    best
}

fn random_code(rng: &mut ChaCha8Rng, n: usize) -> GBCode {
    loop {
        let a = CyclicPoly::from_bits(Bits::from_bools((0..n).map(|_| rng.gen_bool(0.3)))).unwrap();
        let b = CyclicPoly::from_bits(Bits::from_bools((0..n).map(|_| rng.gen_bool(0.3)))).unwrap();
        if let Ok(c) = build_gb(&a, &b) {
            if c.k() > 0 {
                return c;
            }
        }
    }
}

#[test]
fn family_distances() {
    for d in [3, 5, 7] {
        assert_eq!(min_distance_bruteforce(&make_odd(d).unwrap(), d + 1).unwrap().weight, d);
    }
    for d in [4, 6] {
        assert_eq!(min_distance_bruteforce(&make_even(d).unwrap(), d + 1).unwrap().weight, d);
    }
}

#[test]
fn witness_is_a_logical() {
    let code = make_odd(5).unwrap();
    let w = min_distance_bruteforce(&code, 6).unwrap();
    assert!(code.hz().mul_vec(&w.vector).is_zero());
    assert!(!RowEchelon::new(code.hx()).contains(&w.vector));
    assert_eq!(w.vector.weight(), 5);
}

#[test]
fn search_errors() {
    let code = make_odd(5).unwrap();
    assert_eq!(min_distance_bruteforce(&code, 4), Err(DistanceError::NotFoundBelow(4)));
    let unit = build_gb(&cp(5, &[0]), &cp(5, &[1])).unwrap();
    assert_eq!(min_distance_bruteforce(&unit, 3), Err(DistanceError::DimensionZero));
}

#[test]
fn engines_agree_with_kernel_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(3..=10);
        let code = random_code(&mut rng, n);
        let truth = kernel_enumeration_distance(&code).unwrap();
        let ex = min_distance_with(&code, 2 * n, Engine::Exhaustive).unwrap().weight;
        let mm = min_distance_with(&code, 2 * n, Engine::MeetInMiddle).unwrap().weight;
        assert_eq!((ex, mm), (truth, truth), "a={} b={}", code.a(), code.b());
        assert_eq!(min_distance_z(&code, 2 * n, Engine::Auto).unwrap(), truth);
    }
}

#[test]
fn engines_agree_up_to_fifteen() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..25 {
        let n = rng.gen_range(11..=15);
        let code = random_code(&mut rng, n);
        let ex = min_distance_with(&code, 7, Engine::Exhaustive);
        let mm = min_distance_with(&code, 7, Engine::MeetInMiddle);
        assert_eq!(ex.map(|w| w.weight), mm.map(|w| w.weight));
    }
}

#[test]
fn equivalences_preserve_distance() {
    let code = make_odd(3).unwrap();
    let shifted = gbcode::code::shift_pair(&code, 1, 2);
    assert_eq!(min_distance_bruteforce(&shifted, 5).unwrap().weight, 3);
    let xzzx = build_gb(&cp(5, &[1, 3]), &cp(5, &[0, 4])).unwrap();
    let sub = gbcode::code::substitute_equivalence(&xzzx, 2).unwrap();
    assert_eq!(sub.a(), &cp(5, &[1, 2]));
    assert_eq!(sub.b(), &cp(5, &[0, 3]));
    assert_eq!(min_distance_bruteforce(&xzzx, 5).unwrap().weight, 3);
    assert_eq!(min_distance_bruteforce(&sub, 5).unwrap().weight, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let n = rng.gen_range(5..=12);
        let code = random_code(&mut rng, n);
        let d = min_distance_bruteforce(&code, 2 * n).unwrap().weight;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        assert_eq!(min_distance_bruteforce(&gbcode::code::shift_pair(&code, i, j), 2 * n).unwrap().weight, d);
        let s = (1..n).find(|s| gcd(*s, n) == 1 && *s > 1).unwrap_or(1);
        let eq = gbcode::code::substitute_equivalence(&code, s).unwrap();
        assert_eq!(eq.k(), code.k());
        assert_eq!(min_distance_bruteforce(&eq, 2 * n).unwrap().weight, d);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn classical_distances() {
    assert_eq!(classical_cyclic_distance(&CyclicPoly::all_ones(9).lift(), 9).unwrap(), 9);
    for n in [48, 27] {
        let h = F2Poly::cyclic_modulus(n).div_rem(&F2Poly::from_exponents([0, 1, 2])).0;
        assert_eq!(classical_cyclic_distance(&h, n).unwrap(), 2 * n / 3);
    }
    assert!(matches!(
        classical_cyclic_distance(&F2Poly::from_exponents([0, 2]), 7),
        Err(DistanceError::NotADivisor(_))
    ));
    assert_eq!(
        classical_cyclic_distance(&F2Poly::from_exponents([0, 1]), 40),
        Err(DistanceError::TooLarge(39))
    );
}

#[test]
fn divisibility_bound_examples() {
    let code = make_odd(3).unwrap();
    let b = divisibility_upper_bound(&code).unwrap();
    assert_eq!(b.m, cp(5, &[0, 1, 2]));
    assert_eq!(b.bound, 4);
    let same = build_gb(&cp(6, &[0, 1]), &cp(6, &[0, 1])).unwrap();
    assert_eq!(divisibility_upper_bound(&same).unwrap().bound, 2);
    let no = build_gb(&cp(7, &[0, 1, 3]), &cp(7, &[0, 2])).unwrap();
    assert!(no.k() == 0 || divisibility_upper_bound(&no).is_err());
    let odd = build_gb(&cp(4, &[0, 2]), &cp(4, &[1])).unwrap();
    assert_eq!(divisibility_upper_bound(&odd), Err(DistanceError::Inapplicable));
}

#[test]
fn first_worked_example() {
    let n = 48;
    let f = cp(n, &[0, 1, 2]);
    let p = progression_p(n);
    let rep = gb_distance_bounds(&f, &p, None, 4).unwrap();
    assert_eq!(rep.classical_d, 32);
    assert_eq!(rep.p_inv, cp(n, &[3, 6, 12, 18, 24, 27, 33, 39, 45]));
    assert_eq!(rep.m, 9);
    assert_eq!(rep.m_prime, 4);
    assert_eq!((rep.lower, rep.upper), (8, 8));
    let (r, s) = &rep.decomposition;
    assert_eq!(r + &(&p * s), rep.h);
    let (r2, s2) = &rep.decomposition_inv;
    assert_eq!(r2 + &(&rep.p_inv * s2), rep.h);
    let code = build_gb(&f, &(&f * &p)).unwrap();
    for w in &rep.witnesses {
        assert!(code.hz().mul_vec(w).is_zero());
        assert!(!RowEchelon::new(code.hx()).contains(w));
    }
    let given = (cp(n, &[0, 1, 3, 4]), cp(n, &[6, 7, 27, 28]));
    assert_eq!(&given.0 + &(&p * &given.1), rep.h);
}

#[test]
fn first_worked_example_bruteforce() {
    let n = 48;
    let f = cp(n, &[0, 1, 2]);
    let code = build_gb(&f, &(&f * &progression_p(n))).unwrap();
    assert_eq!(code.logical_qubits(), 4);
    assert_eq!(min_distance_bruteforce(&code, 8).unwrap().weight, 8);
}

#[test]
fn second_worked_example() {
    let n = 27;
    let f = cp(n, &[0, 1, 2]);
    let p = progression_p(n);
    let rep = gb_distance_bounds(&f, &p, None, 4).unwrap();
    assert_eq!(rep.classical_d, 18);
    assert_eq!(rep.p_inv, cp(n, &[3, 6, 12, 18, 24]));
    assert_eq!((rep.lower, rep.upper), (5, 6));
    let refined = refine_case_a(&f, &p, &rep, 5);
    assert!(refined.case_a >= 6);
    assert_eq!(refined.lower, 6);
    let given = (cp(n, &[0, 1, 3, 4]), cp(n, &[6, 7]));
    assert_eq!(&given.0 + &(&p * &given.1), rep.h);
    let code = build_gb(&f, &(&f * &p)).unwrap();
    assert_eq!(min_distance_bruteforce(&code, 7).unwrap().weight, 6);
    // weight-four stabilizer (1 + x^3, 1 + x^21)
    let stab = code.pair_vector(&cp(n, &[0, 3]), &cp(n, &[0, 21]));
    assert!(RowEchelon::new(code.hx()).contains(&stab));
}

#[test]
fn family_bounds_are_tight() {
    for d in [3, 5, 7, 9] {
        let n = (d * d + 1) / 2;
        let f = cp(n, &[0, 1]);
        let p = CyclicPoly::progression(n, 0, 1, d);
        let rep = gb_distance_bounds(&f, &p, None, 3).unwrap();
        assert_eq!((rep.lower, rep.upper), (d, d), "odd d={d}");
        assert_eq!(refine_case_a(&f, &p, &rep, 3).lower, d);
    }
    for d in [4, 6, 8] {
        let n = d * d / 2;
        let f = cp(n, &[0, 1]);
        let p = CyclicPoly::progression(n, 0, 1, d + 1);
        let rep = gb_distance_bounds(&f, &p, None, 3).unwrap();
        assert_eq!((rep.lower, rep.upper), (d, d), "even d={d}");
    }
}

#[test]
fn bounds_bracket_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 25 {
        let n = rng.gen_range(6..=21);
        let f = cp(n, &[0, 1]);
        let p = CyclicPoly::from_bits(Bits::from_bools((0..n).map(|_| rng.gen_bool(0.4)))).unwrap();
        if p.invert().is_err() || (&f * &p).is_zero() {
            continue;
        }
        let rep = gb_distance_bounds(&f, &p, None, 3).unwrap();
        let code = build_gb(&f, &(&f * &p)).unwrap();
        let d = min_distance_bruteforce(&code, 2 * n).unwrap().weight;
        assert!(rep.lower <= d && d <= rep.upper, "n={n} p={p}");
        assert!(refine_case_a(&f, &p, &rep, 4).lower <= d, "n={n} p={p}");
        checked += 1;
    }
}

#[test]
fn effective_distance_rl_matches_distance() {
    for d in [3, 5, 7] {
        let code = make_odd(d).unwrap();
        let rl = ExtractionPattern::right_left(&code);
        assert_eq!(effective_distance(&code, &rl, d).unwrap(), d, "odd d={d}");
    }
    for d in [4, 6] {
        let code = make_even(d).unwrap();
        let rl = ExtractionPattern::right_left(&code);
        assert_eq!(effective_distance(&code, &rl, d).unwrap(), d, "even d={d}");
    }
}

#[test]
fn effective_distance_interleaved_halves() {
    for d in [3, 5, 7] {
        let code = make_odd(d).unwrap();
        let bad = ExtractionPattern::interleaved(&code);
        assert_eq!(bad.to_string(), format!("L0,R0,L1,R{d}"));
        assert_eq!(effective_distance(&code, &bad, d).unwrap(), d.div_ceil(2), "d={d}");
    }
}
