use gbcode::code::{circulant, shift_pair, substitute_equivalence};
use gbcode::{build_gb, Bits, CodeDescriptor, CyclicPoly, F2Poly, PolyError, RowEchelon};
use proptest::prelude::*;

fn poly(n: usize) -> impl Strategy<Value = CyclicPoly> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|v| CyclicPoly::from_bits(Bits::from_bools(v)).unwrap())
}

fn triple() -> impl Strategy<Value = (CyclicPoly, CyclicPoly, CyclicPoly)> {
    (1usize..=24).prop_flat_map(|n| (poly(n), poly(n), poly(n)))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// schoolbook product mod x^n - 1, straight from the coefficients
fn naive_mul(p: &CyclicPoly, q: &CyclicPoly) -> CyclicPoly {
    let n = p.n();
    let mut out = vec![false; n];
    for i in p.exponents() {
        for j in q.exponents() {
            out[(i + j) % n] ^= true;
        }
    }
    CyclicPoly::from_bits(Bits::from_bools(out)).unwrap()
}

proptest! {
    #[test]
    fn ring_laws((p, q, r) in triple()) {
        prop_assert_eq!(&p * &q, naive_mul(&p, &q));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p * &q).weight() <= p.weight() * q.weight());
        prop_assert_eq!(p.reciprocal().reciprocal(), p.clone());
        prop_assert_eq!((&p * &q).reciprocal(), &p.reciprocal() * &q.reciprocal());
    }

    #[test]
    fn inverse_when_coprime((p, _q, _r) in triple()) {
        let g = p.gcd_with_modulus();
        match p.invert() {
            Ok(inv) => {
                prop_assert!(g.is_one());
                prop_assert!((&p * &inv).is_one());
            }
            Err(e) => {
                prop_assert!(!g.is_one());
                let not_invertible = matches!(e, PolyError::NotInvertible { .. });
                prop_assert!(not_invertible);
            }
        }
        prop_assert!(g.divides(&F2Poly::cyclic_modulus(p.n())));
    }

    #[test]
    fn substitution_is_automorphism((p, q, _r) in triple(), s in 1usize..24) {
        let n = p.n();
        prop_assume!(gcd(s, n) == 1);
        prop_assert_eq!((&p * &q).substitute_power(s), &p.substitute_power(s) * &q.substitute_power(s));
        prop_assert_eq!(p.substitute_power(s).weight(), p.weight());
    }

    #[test]
    fn circulant_rows((p, _q, _r) in triple()) {
        let m = circulant(&p);
        for i in 0..p.n() {
            prop_assert_eq!(m.row(i), &p.shift(i).into_bits());
        }
    }

    #[test]
    fn css_and_dimension((a, b, _r) in triple(), i in 0usize..24, j in 0usize..24) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let code = build_gb(&a, &b).unwrap();
        let n = code.n();
        prop_assert!(code.hx().mul(&code.hz().transpose()).is_zero());
        prop_assert_eq!(code.hx().rank(), n - code.k());
        prop_assert_eq!(code.hz().rank(), n - code.k());
        let g = a.lift().gcd(&b.lift()).gcd(&F2Poly::cyclic_modulus(n));
        prop_assert_eq!(code.k(), g.degree().unwrap());
        for r in 0..n {
            let row = a.shift(r).bits().concat(b.shift(r).bits());
            prop_assert_eq!(code.hx().row(r), &row);
        }
        let shifted = shift_pair(&code, i % n, j % n);
        prop_assert_eq!(shifted.k(), code.k());
        let (rx, rz) = code.reduced_checks();
        prop_assert!(RowEchelon::new(&rx).same_span(&RowEchelon::new(code.hx())));
        prop_assert_eq!(rz.num_rows(), n - code.k());
    }

    #[test]
    fn parse_round_trip((p, _q, _r) in triple()) {
        let text = p.to_string();
        prop_assert_eq!(CyclicPoly::parse(p.n(), &text).unwrap(), p);
    }
}

#[test]
fn examples() {
    let five = |e: &[usize]| CyclicPoly::from_exponents(5, e.iter().copied());
    assert_eq!(five(&[0, 3]).gcd_with_modulus(), F2Poly::from_exponents([0, 1]));
    assert_eq!(five(&[0, 1, 2]).substitute_power(3), five(&[0, 1, 3]));
    assert!(matches!(five(&[0, 1]).invert(), Err(PolyError::NotInvertible { .. })));
    let four = CyclicPoly::from_exponents(4, [0, 1]);
    assert_eq!(four.substitute_power(2), CyclicPoly::from_exponents(4, [0, 2]));
    let code = build_gb(&four, &four).unwrap();
    assert_eq!((code.len(), code.logical_qubits()), (8, 2));
    assert!(substitute_equivalence(&code, 2).is_err());
    let desc: CodeDescriptor = serde_json::from_str(r#"{"n":5,"a":[0,1],"b":[0,3]}"#).unwrap();
    assert_eq!(desc.build().unwrap().b(), &five(&[0, 3]));
}
