//! Circulant matrices and generalized bicycle (GB) codes.
//!
//! Row `i` of the circulant of `p` is the coefficient vector of `x^i·p`, so
//! row `i` of `H_x = [G_a | G_b]` is the pair `(x^i·a, x^i·b)` and check `i`
//! of a weight-four code touches left qubits `i + supp(a)` and right qubits
//! `i + supp(b)`. With this orientation `H_z = [G_{b(x^-1)} | G_{a(x^-1)}]`
//! has kernel `{(u, v) : u·b + v·a = 0}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::matrix::{BinaryMatrix, RowEchelon};
use crate::poly::{CyclicPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("both polynomials are zero")]
    ZeroPair,
    #[error("substitution x -> x^{s} is not invertible for n = {n}")]
    NotCoprime { s: usize, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid code descriptor: {0}")]
    Descriptor(String),
}

/// The `n × n` circulant whose row `i` is `x^i·p`.
pub fn circulant(p: &CyclicPoly) -> BinaryMatrix {
    let rows = (0..p.n()).map(|i| p.shift(i).into_bits()).collect();
    BinaryMatrix::from_rows(p.n(), rows)
}

/// A GB code `[[2n, 2k]]` defined by the polynomial pair `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GBCode {
    n: usize,
    a: CyclicPoly,
    b: CyclicPoly,
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    k: usize,
}

pub fn build_gb(a: &CyclicPoly, b: &CyclicPoly) -> Result<GBCode, CodeError> {
    if a.n() != b.n() {
        return Err(PolyError::LengthMismatch(a.n(), b.n()).into());
    }
    if a.is_zero() && b.is_zero() {
        return Err(CodeError::ZeroPair);
    }
    let n = a.n();
    let hx = circulant(a).hstack(&circulant(b));
    let hz = circulant(&b.reciprocal()).hstack(&circulant(&a.reciprocal()));
    let g = a.lift().gcd(&b.lift()).gcd(&crate::poly::F2Poly::cyclic_modulus(n));
    let k = g.degree().unwrap_or(0);
    Ok(GBCode {
        n,
        a: a.clone(),
        b: b.clone(),
        hx,
        hz,
        k,
    })
}

impl GBCode {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of physical qubits, `2n`.
    pub fn len(&self) -> usize {
        2 * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn a(&self) -> &CyclicPoly {
        &self.a
    }

    pub fn b(&self) -> &CyclicPoly {
        &self.b
    }

    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }

    /// `deg gcd(a, b, x^n - 1)`; the code encodes `2k` logical qubits.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn logical_qubits(&self) -> usize {
        2 * self.k
    }

    /// Row-reduced X and Z check matrices (redundant rows dropped).
    pub fn reduced_checks(&self) -> (BinaryMatrix, BinaryMatrix) {
        let rx = RowEchelon::new(&self.hx);
        let rz = RowEchelon::new(&self.hz);
        (
            BinaryMatrix::from_rows(2 * self.n, rx.basis().to_vec()),
            BinaryMatrix::from_rows(2 * self.n, rz.basis().to_vec()),
        )
    }

    /// X-stabilizer basis `x^i·(a, b)` for `0 <= i <= n - 2`.
    pub fn stabilizer_basis_rows(&self) -> Vec<usize> {
        (0..self.n.saturating_sub(1).max(1)).collect()
    }

    /// Concatenation `(u | v)` of a polynomial pair on the two blocks.
    pub fn pair_vector(&self, u: &CyclicPoly, v: &CyclicPoly) -> Bits {
        assert_eq!(u.n(), self.n);
        assert_eq!(v.n(), self.n);
        u.bits().concat(v.bits())
    }

    /// Splits a length-`2n` vector into its left and right polynomials.
    pub fn split_vector(&self, e: &Bits) -> (CyclicPoly, CyclicPoly) {
        let l = CyclicPoly::from_bits(e.slice(0, self.n)).expect("n >= 1");
        let r = CyclicPoly::from_bits(e.slice(self.n, self.n)).expect("n >= 1");
        (l, r)
    }

    pub fn spaces(&self) -> CodeSpaces {
        CodeSpaces::new(self)
    }

    pub fn descriptor(&self, family: Option<String>) -> CodeDescriptor {
        CodeDescriptor {
            n: self.n,
            a: self.a.exponents(),
            b: self.b.exponents(),
            family,
        }
    }
}

/// GB code of `(x^i·a, x^j·b)`.
pub fn shift_pair(code: &GBCode, i: usize, j: usize) -> GBCode {
    build_gb(&code.a.shift(i), &code.b.shift(j)).expect("shifts keep a nonzero pair")
}

/// GB code of `(a(x^s), b(x^s))`; requires `gcd(s, n) = 1`.
pub fn substitute_equivalence(code: &GBCode, s: usize) -> Result<GBCode, CodeError> {
    if gcd_usize(s % code.n, code.n) != 1 {
        return Err(CodeError::NotCoprime { s, n: code.n });
    }
    build_gb(&code.a.substitute_power(s), &code.b.substitute_power(s))
}

pub(crate) fn gcd_usize(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct column and row weights of the stabilizer matrix `diag(H_x, H_z)`.
pub fn regularity(code: &GBCode) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut cols = BTreeSet::new();
    let mut rows = BTreeSet::new();
    for h in [&code.hx, &code.hz] {
        cols.extend(h.column_weights());
        rows.extend(h.row_weights());
    }
    (cols, rows)
}

/// Stabilizer spaces and a dual pair of logical bases.
///
/// `x_logicals[i] · z_logicals[j] = δ_ij`. An X-type vector with zero
/// `H_z`-syndrome is a stabilizer iff it pairs trivially with every Z
/// logical; `x_class` packs those pairings into a bit mask.
#[derive(Debug, Clone)]
pub struct CodeSpaces {
    pub x_stabilizers: RowEchelon,
    pub z_stabilizers: RowEchelon,
    pub x_logicals: Vec<Bits>,
    pub z_logicals: Vec<Bits>,
}

impl CodeSpaces {
    pub fn new(code: &GBCode) -> Self {
        let xs = RowEchelon::new(code.hx());
        let zs = RowEchelon::new(code.hz());
        let x_log = complement_basis(&xs, code.hz().kernel());
        let z_log = complement_basis(&zs, code.hx().kernel());
        CodeSpaces::with_x_basis(xs, zs, x_log, z_log)
    }

    /// Uses the given X logical representatives as the basis and builds the dual Z basis.
    pub fn with_x_basis(
        xs: RowEchelon,
        zs: RowEchelon,
        x_log: Vec<Bits>,
        z_cand: Vec<Bits>,
    ) -> Self {
        assert_eq!(x_log.len(), z_cand.len(), "logical counts disagree");
        let m = x_log.len();
        let mut pairing = BinaryMatrix::zeros(m, m);
        for (i, x) in x_log.iter().enumerate() {
            for (j, z) in z_cand.iter().enumerate() {
                pairing.set(i, j, x.dot(z));
            }
        }
        let inv_t = pairing
            .transpose()
            .inverse()
            .expect("logical pairing is nondegenerate");
        let z_log = (0..m)
            .map(|j| {
                let mut acc = Bits::zeros(xs.dim());
                for l in inv_t.row(j).iter_ones() {
                    acc.xor_assign(&z_cand[l]);
                }
                acc
            })
            .collect();
        CodeSpaces {
            x_stabilizers: xs,
            z_stabilizers: zs,
            x_logicals: x_log,
            z_logicals: z_log,
        }
    }

    /// Logical class of an X-type vector, bit `j` = pairing with `z_logicals[j]`.
    pub fn x_class(&self, e: &Bits) -> u64 {
        class_mask(&self.z_logicals, e)
    }

    /// Logical class of a Z-type vector, bit `j` = pairing with `x_logicals[j]`.
    pub fn z_class(&self, e: &Bits) -> u64 {
        class_mask(&self.x_logicals, e)
    }
}

fn class_mask(basis: &[Bits], e: &Bits) -> u64 {
    assert!(basis.len() <= 64, "more than 64 logical qubits");
    basis
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, l)| acc | ((l.dot(e) as u64) << j))
}

// Vectors from `candidates` that extend `span` to the span of both, in order.
fn complement_basis(span: &RowEchelon, candidates: Vec<Bits>) -> Vec<Bits> {
    let mut ech = span.clone();
    let mut out = Vec::new();
    for c in candidates {
        if ech.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

/// JSON code descriptor: `{ "n": 5, "a": [0, 1], "b": [0, 3], "family": "odd-d3" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub n: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<GBCode, CodeError> {
        if self.n == 0 {
            return Err(CodeError::Descriptor("n must be positive".into()));
        }
        build_gb(
            &CyclicPoly::from_exponents(self.n, self.a.iter().copied()),
            &CyclicPoly::from_exponents(self.n, self.b.iter().copied()),
        )
    }
}
