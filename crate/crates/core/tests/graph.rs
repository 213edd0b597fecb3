use gbcode::alist::{export_alist, import_alist};
use gbcode::families::{make_even, make_odd};
use gbcode::graph::{
    decoding_graph, eight_cycle_walk, girth, girth4_predicate, girth6_predicate, is_closed_walk,
    tanner, walk_cycle_length, GraphError, Vertex,
};
use gbcode::{build_gb, BinaryMatrix, Bits, CyclicPoly, GBCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cp(n: usize, e: &[usize]) -> CyclicPoly {
    CyclicPoly::from_exponents(n, e.iter().copied())
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, weights: std::ops::RangeInclusive<usize>) -> CyclicPoly {
    let weight = rng.gen_range(weights);
    let mut e: Vec<usize> = (0..n).collect();
    for i in 0..weight {
        let j = rng.gen_range(i..n);
        e.swap(i, j);
    }
    CyclicPoly::from_exponents(n, e[..weight].iter().copied())
}

fn gb(a: &CyclicPoly, b: &CyclicPoly) -> GBCode {
    build_gb(a, b).unwrap()
}

#[test]
fn tanner_of_odd_family() {
    let code = make_odd(3).unwrap();
    let g = tanner(code.hx());
    assert_eq!((g.check_count(), g.qubit_count(), g.edge_count()), (5, 10, 20));
    assert!((0..5).all(|c| g.check_neighbors(c).len() == 4));
    assert!((0..10).all(|q| g.qubit_neighbors(q).len() == 2));
    for i in 0..5 {
        let mut expect = vec![i, (i + 1) % 5, 5 + i, 5 + (i + 3) % 5];
        expect.sort_unstable();
        assert_eq!(g.check_neighbors(i), &expect[..]);
    }
    assert!(g.to_dot().starts_with("graph"));
}

#[test]
fn identity_is_acyclic() {
    assert_eq!(girth(&tanner(&BinaryMatrix::identity(6))), None);
}

#[test]
fn family_girths() {
    assert_eq!(girth(&tanner(make_odd(3).unwrap().hx())), Some(6));
    for d in [5, 7] {
        assert_eq!(girth(&tanner(make_odd(d).unwrap().hx())), Some(8), "odd d={d}");
    }
    for d in [4, 6] {
        assert_eq!(girth(&tanner(make_even(d).unwrap().hx())), Some(8), "even d={d}");
    }
    let p = cp(7, &[0, 1, 3]);
    assert_eq!(girth(&tanner(gb(&p, &p).hx())), Some(4));
}

#[test]
fn family_predicates() {
    let c3 = make_odd(3).unwrap();
    assert!(!girth4_predicate(c3.a(), c3.b()));
    assert!(girth6_predicate(c3.a(), c3.b()));
    let c5 = make_odd(5).unwrap();
    assert!(!girth4_predicate(c5.a(), c5.b()));
    assert!(!girth6_predicate(c5.a(), c5.b()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = rng.gen_range(3..=20);
        let w = rng.gen_range(2..=n.min(5));
        let a = random_poly(&mut rng, n, w..=w);
        assert!(girth4_predicate(&a, &a));
        assert_eq!(girth(&tanner(gb(&a, &a).hx())), Some(4));
    }
}

#[test]
fn six_cycle_with_repeated_step() {
    // a 6-cycle through checks 0, i, 2i with the same step twice
    let (a, b) = (cp(7, &[0, 1]), cp(7, &[0, 2]));
    assert_eq!(girth(&tanner(gb(&a, &b).hx())), Some(6));
    assert!(girth6_predicate(&a, &b));
}

#[test]
fn predicates_match_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = [0usize; 3];
    for _ in 0..600 {
        let n = rng.gen_range(2..=24);
        let a = random_poly(&mut rng, n, 1..=n.min(4));
        let b = random_poly(&mut rng, n, 1..=n.min(4));
        let g = girth(&tanner(gb(&a, &b).hx()));
        assert_eq!(girth4_predicate(&a, &b), g == Some(4), "a={a} b={b}");
        assert_eq!(girth6_predicate(&a, &b), g == Some(6), "a={a} b={b}");
        match g {
            Some(4) => seen[0] += 1,
            Some(6) => seen[1] += 1,
            _ => seen[2] += 1,
        }
    }
    assert!(seen.iter().all(|&c| c >= 20), "{seen:?}");
}

#[test]
fn girth_at_most_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let n = rng.gen_range(2..=30);
        let a = random_poly(&mut rng, n, 2..=n.min(4));
        let b = random_poly(&mut rng, n, 2..=n.min(4));
        let code = gb(&a, &b);
        let gx = girth(&tanner(code.hx()));
        assert!(gx.is_some_and(|g| g <= 8), "a={a} b={b}");
        assert_eq!(gx, girth(&tanner(code.hz())));
    }
}

#[test]
fn eight_cycle_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let n = rng.gen_range(3..=30);
        let a = random_poly(&mut rng, n, 2..=2);
        let b = random_poly(&mut rng, n, 2..=2);
        let walk = eight_cycle_walk(&a, &b).unwrap();
        let g = tanner(gb(&a, &b).hx());
        assert!(is_closed_walk(&g, n, &walk));
        let len = walk_cycle_length(&walk).expect("walk contains a cycle");
        let true_girth = girth(&g).unwrap();
        assert!(true_girth <= len && len <= 8);
    }
    let c5 = make_odd(5).unwrap();
    let walk = eight_cycle_walk(c5.a(), c5.b()).unwrap();
    assert_eq!(walk[1], Vertex::Check(0));
    assert_eq!(walk_cycle_length(&walk), Some(8));
    assert!(eight_cycle_walk(&cp(5, &[0, 1, 2]), c5.b()).is_none());
}

#[test]
fn decoding_graph_counts() {
    let code = make_odd(3).unwrap();
    let dg = decoding_graph(code.hx(), &[0.1; 10]).unwrap();
    assert_eq!(dg.nodes, 5);
    assert_eq!(dg.boundary(), None);
    let alts: usize = dg.edges.iter().map(|e| 1 + e.alternatives.len()).sum();
    assert_eq!(alts, 10);
    let w = (0.9f64 / 0.1).ln();
    assert!(dg.edges.iter().all(|e| (e.weight - w).abs() < 1e-12));

    let h = BinaryMatrix::from_rows(3, vec![Bits::from_indices(3, [0, 1]), Bits::from_indices(3, [1, 2])]);
    let dg = decoding_graph(&h, &[0.5, 0.2, 0.2]).unwrap();
    assert_eq!(dg.boundary(), Some(2));
    let e0 = dg.edges.iter().find(|e| e.qubit == 0).unwrap();
    assert_eq!((e0.u, e0.v), (0, None));
    assert!(e0.weight.abs() < 1e-12);

    let heavy = BinaryMatrix::from_rows(3, vec![Bits::from_indices(3, [0]); 3]);
    assert_eq!(
        decoding_graph(&heavy, &[0.1; 3]),
        Err(GraphError::MatchingStructureViolated { column: 0, weight: 3 })
    );
}

#[test]
fn alist_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let n = rng.gen_range(3..=20);
        let a = random_poly(&mut rng, n, 1..=n.min(4));
        let b = random_poly(&mut rng, n, 1..=n.min(4));
        let code = gb(&a, &b);
        for h in [code.hx(), code.hz()] {
            assert_eq!(&import_alist(&export_alist(h)).unwrap(), h);
        }
    }
    assert!(import_alist("3 2\n").is_err());
}
