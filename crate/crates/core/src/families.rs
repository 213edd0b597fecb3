//! The weight-four families `[[d²+1, 2, d]]` (odd `d`) and `[[d², 2, d]]`
//! (even `d`), their logical operators and the permutation CNOT.

use thiserror::Error;

use crate::bits::Bits;
use crate::code::{build_gb, CodeSpaces, GBCode};
use crate::matrix::{BinaryMatrix, RowEchelon};
use crate::poly::CyclicPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad family parameter d = {d}: {reason}")]
    BadParameter { d: usize, reason: &'static str },
    #[error("permutation does not preserve the stabilizer group")]
    NotStabilizerPreserving,
}

fn check_odd(d: usize) -> Result<(), FamilyError> {
    if d < 3 || d % 2 == 0 {
        return Err(FamilyError::BadParameter {
            d,
            reason: "expected an odd integer >= 3",
        });
    }
    Ok(())
}

fn check_even(d: usize) -> Result<(), FamilyError> {
    if d < 4 || d % 2 == 1 {
        return Err(FamilyError::BadParameter {
            d,
            reason: "expected an even integer >= 4",
        });
    }
    Ok(())
}

pub fn odd_length(d: usize) -> usize {
    (d * d + 1) / 2
}

pub fn even_length(d: usize) -> usize {
    d * d / 2
}

/// `P_m = 1 + x + ... + x^{m-1}` in the ring of length `n`.
pub fn all_ones_prefix(n: usize, m: usize) -> CyclicPoly {
    CyclicPoly::progression(n, 0, 1, m)
}

/// `a = 1 + x`, `b = 1 + x^d` with `n = (d² + 1)/2`.
pub fn make_odd(d: usize) -> Result<GBCode, FamilyError> {
    check_odd(d)?;
    let n = odd_length(d);
    Ok(build_gb(
        &CyclicPoly::from_exponents(n, [0, 1]),
        &CyclicPoly::from_exponents(n, [0, d]),
    )
    .expect("nonzero pair"))
}

/// `a = 1 + x`, `b = 1 + x^{d+1}` with `n = d²/2`.
pub fn make_even(d: usize) -> Result<GBCode, FamilyError> {
    check_even(d)?;
    let n = even_length(d);
    Ok(build_gb(
        &CyclicPoly::from_exponents(n, [0, 1]),
        &CyclicPoly::from_exponents(n, [0, d + 1]),
    )
    .expect("nonzero pair"))
}

/// `x·P_d(x^d)`, the inverse of `P_d` for odd `d`.
pub fn odd_inverse(d: usize) -> Result<CyclicPoly, FamilyError> {
    check_odd(d)?;
    let n = odd_length(d);
    Ok(all_ones_prefix(n, d).substitute_power(d).shift(1))
}

/// `(s, r)` with `P_n = P_d·s + r`: `s = Σ_{i < (d-1)/2} x^{id}` and
/// `r = x^{d(d-1)/2} + ... + x^{n-1}`.
pub fn odd_decomposition(d: usize) -> Result<(CyclicPoly, CyclicPoly), FamilyError> {
    check_odd(d)?;
    let n = odd_length(d);
    let s = CyclicPoly::progression(n, 0, d, (d - 1) / 2);
    let start = d * (d - 1) / 2;
    let r = CyclicPoly::progression(n, start, 1, n - start);
    Ok((s, r))
}

/// Closed form of `P_{d+1}^{-1}` for even `d`.
pub fn even_inverse(d: usize) -> Result<CyclicPoly, FamilyError> {
    check_even(d)?;
    let n = even_length(d);
    let first = CyclicPoly::progression(n, 1, d + 1, d / 2);
    let second = CyclicPoly::progression(n, d / 2 + 1, d + 1, d / 2 - 1);
    Ok(&first + &second)
}

/// The two decompositions `P_n = q·s + r` for even `d`, as `(q, s, r)` with
/// `q = P_{d+1}` and `q = P_{d+1}^{-1}` respectively.
pub fn even_decompositions(d: usize) -> Result<[(CyclicPoly, CyclicPoly, CyclicPoly); 2], FamilyError> {
    let inv = even_inverse(d)?;
    let n = even_length(d);
    let p = all_ones_prefix(n, d + 1);
    let s1 = CyclicPoly::progression(n, d / 2 + 1, d + 1, d / 2 - 1);
    let r1 = all_ones_prefix(n, d / 2 + 1);
    let s2 = all_ones_prefix(n, d / 2);
    let r2 = CyclicPoly::progression(n, 0, d + 1, d / 2);
    Ok([(p, s1, r1), (inv, s2, r2)])
}

/// X logical representatives and their Z partners for the odd family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalSet {
    pub xi: Bits,
    pub ix: Bits,
    pub xx: Bits,
    pub zi: Bits,
    pub iz: Bits,
    pub zz: Bits,
}

impl LogicalSet {
    pub fn x_ops(&self) -> [(&'static str, &Bits); 3] {
        [("XI", &self.xi), ("IX", &self.ix), ("XX", &self.xx)]
    }

    pub fn z_ops(&self) -> [(&'static str, &Bits); 3] {
        [("ZI", &self.zi), ("IZ", &self.iz), ("ZZ", &self.zz)]
    }
}

/// `(u, v) -> (v(x^-1), u(x^-1))`, taking X-type vectors to Z-type vectors.
pub fn x_to_z(n: usize, e: &Bits) -> Bits {
    let u = CyclicPoly::from_bits(e.slice(0, n)).expect("n >= 1");
    let v = CyclicPoly::from_bits(e.slice(n, n)).expect("n >= 1");
    v.reciprocal().bits().concat(u.reciprocal().bits())
}

pub fn logical_reps_odd(d: usize) -> Result<LogicalSet, FamilyError> {
    check_odd(d)?;
    let n = odd_length(d);
    let u = CyclicPoly::progression(n, 0, d, (d - 1) / 2);
    let v = CyclicPoly::progression(n, n - (d + 1) / 2, 1, (d + 1) / 2);
    let pair = |l: &CyclicPoly, r: &CyclicPoly| l.bits().concat(r.bits());
    let xi = pair(&u, &v);
    let xx = pair(&v.substitute_power(d).shift(1), &u.substitute_power(d));
    let ix = pair(&CyclicPoly::one(n), &all_ones_prefix(n, d));
    // the map preserves the commutation pairing, and XI commutes with its own image
    Ok(LogicalSet {
        zi: x_to_z(n, &ix),
        iz: x_to_z(n, &xi),
        zz: x_to_z(n, &xx),
        xi,
        ix,
        xx,
    })
}

/// A permutation of the `2n` data qubits; qubit `i` moves to `map[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation {
    map: Vec<usize>,
}

impl QubitPermutation {
    pub fn identity(len: usize) -> Self {
        QubitPermutation {
            map: (0..len).collect(),
        }
    }

    /// Panics unless `map` is a bijection on `0..map.len()`.
    pub fn from_map(map: Vec<usize>) -> Self {
        let mut seen = vec![false; map.len()];
        for &j in &map {
            assert!(j < map.len() && !seen[j], "not a permutation");
            seen[j] = true;
        }
        QubitPermutation { map }
    }

    /// `S`: swaps the two blocks.
    pub fn block_swap(n: usize) -> Self {
        QubitPermutation::from_map((0..2 * n).map(|i| (i + n) % (2 * n)).collect())
    }

    /// `E_s`: index `j -> s·j mod n` in each block.
    pub fn scale(n: usize, s: usize) -> Self {
        QubitPermutation::from_map(
            (0..2 * n)
                .map(|i| (i / n) * n + (s * (i % n)) % n)
                .collect(),
        )
    }

    /// `Π_{1,0}`: cyclic shift of the first block.
    pub fn shift_left_block(n: usize) -> Self {
        QubitPermutation::from_map(
            (0..2 * n)
                .map(|i| if i < n { (i + 1) % n } else { i })
                .collect(),
        )
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &QubitPermutation) -> QubitPermutation {
        assert_eq!(self.map.len(), inner.map.len());
        QubitPermutation {
            map: inner.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn apply(&self, e: &Bits) -> Bits {
        e.map_indices(self.map.len(), |i| self.map[i])
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// `Π_{1,0} ∘ E_d ∘ S`, acting as `(u, v) -> (x·v(x^d), u(x^d))`.
pub fn cnot_permutation(d: usize) -> Result<QubitPermutation, FamilyError> {
    check_odd(d)?;
    let n = odd_length(d);
    Ok(QubitPermutation::shift_left_block(n)
        .after(&QubitPermutation::scale(n, d))
        .after(&QubitPermutation::block_swap(n)))
}

/// True when the images of the rows of `h` span the same space as `h`.
pub fn preserves_row_space(h: &BinaryMatrix, perm: &QubitPermutation) -> bool {
    let orig = RowEchelon::new(h);
    let image = RowEchelon::from_vectors(h.num_cols(), h.rows().iter().map(|r| perm.apply(r)));
    orig.same_span(&image)
}

/// Induced action on logical X classes, in the basis `(XI, IX)`.
///
/// Row `j` holds the coordinates of the image of basis element `j`; for the
/// Z sector use [`logical_action_z`].
pub fn logical_action(
    code: &GBCode,
    perm: &QubitPermutation,
    logicals: &LogicalSet,
) -> Result<BinaryMatrix, FamilyError> {
    let spaces = logical_spaces(code, perm, logicals)?;
    Ok(action_matrix(&spaces.x_logicals, |e| spaces.x_class(e), perm))
}

/// Induced action on logical Z classes, in the basis dual to `(XI, IX)`.
pub fn logical_action_z(
    code: &GBCode,
    perm: &QubitPermutation,
    logicals: &LogicalSet,
) -> Result<BinaryMatrix, FamilyError> {
    let spaces = logical_spaces(code, perm, logicals)?;
    Ok(action_matrix(&spaces.z_logicals, |e| spaces.z_class(e), perm))
}

fn logical_spaces(
    code: &GBCode,
    perm: &QubitPermutation,
    logicals: &LogicalSet,
) -> Result<CodeSpaces, FamilyError> {
    if !preserves_row_space(code.hx(), perm) || !preserves_row_space(code.hz(), perm) {
        return Err(FamilyError::NotStabilizerPreserving);
    }
    Ok(CodeSpaces::with_x_basis(
        RowEchelon::new(code.hx()),
        RowEchelon::new(code.hz()),
        vec![logicals.xi.clone(), logicals.ix.clone()],
        vec![logicals.zi.clone(), logicals.iz.clone()],
    ))
}

fn action_matrix<F: Fn(&Bits) -> u64>(basis: &[Bits], class: F, perm: &QubitPermutation) -> BinaryMatrix {
    let m = basis.len();
    let mut out = BinaryMatrix::zeros(m, m);
    for (i, b) in basis.iter().enumerate() {
        let c = class(&perm.apply(b));
        for j in 0..m {
            out.set(i, j, (c >> j) & 1 == 1);
        }
    }
    out
}

/// Family code by name, `odd-d<D>` or `even-d<D>`, with its distance.
pub fn by_name(name: &str) -> Option<(GBCode, usize)> {
    let (kind, d) = name.split_once("-d")?;
    let d: usize = d.parse().ok()?;
    let code = match kind {
        "odd" => make_odd(d).ok()?,
        "even" => make_even(d).ok()?,
        _ => return None,
    };
    Some((code, d))
}

/// The X-sector CNOT matrix `X1 -> X1 X2`, `X2 -> X2`.
pub fn cnot_matrix() -> BinaryMatrix {
    BinaryMatrix::from_rows(
        2,
        vec![
            Bits::from_indices(2, [0, 1]),
            Bits::from_indices(2, [1]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: usize, e: &[usize]) -> CyclicPoly {
        CyclicPoly::from_exponents(n, e.iter().copied())
    }

    #[test]
    fn constructors() {
        let c = make_odd(3).unwrap();
        assert_eq!((c.n(), c.logical_qubits()), (5, 2));
        assert_eq!(c.b(), &cp(5, &[0, 3]));
        assert_eq!(make_odd(7).unwrap().len(), 50);
        let e = make_even(4).unwrap();
        assert_eq!((e.n(), e.b()), (8, &cp(8, &[0, 5])));
        assert_eq!(by_name("even-d4").map(|(c, d)| (c.n(), d)), Some((8, 4)));
        assert!(by_name("odd-d4").is_none() && by_name("odd").is_none());
        assert!(make_even(2).is_err());
        assert!(make_odd(4).is_err());
    }

    #[test]
    fn d3_representatives() {
        let l = logical_reps_odd(3).unwrap();
        let n = 5;
        let pair = |a: &[usize], b: &[usize]| cp(n, a).bits().concat(cp(n, b).bits());
        assert_eq!(l.xi, pair(&[0], &[3, 4]));
        assert_eq!(l.xx, pair(&[0, 3], &[0]));
        assert_eq!(l.ix, pair(&[0], &[0, 1, 2]));
    }

    #[test]
    fn permutation_formula() {
        let d = 5;
        let n = odd_length(d);
        let perm = cnot_permutation(d).unwrap();
        let u = cp(n, &[0, 2, 7]);
        let v = cp(n, &[1, 12]);
        let image = perm.apply(&u.bits().concat(v.bits()));
        let expect = v.substitute_power(d).shift(1).bits().concat(u.substitute_power(d).bits());
        assert_eq!(image, expect);
    }

    #[test]
    fn identity_acts_trivially() {
        let code = make_odd(3).unwrap();
        let l = logical_reps_odd(3).unwrap();
        let id = QubitPermutation::identity(10);
        assert_eq!(logical_action(&code, &id, &l).unwrap(), BinaryMatrix::identity(2));
    }
}
