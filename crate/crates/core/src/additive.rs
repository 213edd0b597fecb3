//! One-generator additive cyclic codes over F4 and their binary images.
//!
//! Elements of F4 = {0, 1, w, w²} are stored as a pair of bits (one-part,
//! w-part), so `w² = 1 + w` is `(1, 1)` and the map ψ to F2^{2n} is a plain
//! reinterpretation of the two bit planes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::Bits;
use crate::code::{build_gb, CodeError, GBCode};
use crate::matrix::{BinaryMatrix, RowEchelon};
use crate::poly::{parse_monomials, CyclicPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdditiveError {
    #[error("generator is not symplectic orthogonal to its reciprocal code")]
    NotSelfOrthogonal,
    #[error("cannot parse F4 generator {0:?}")]
    Parse(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum F4 {
    Zero,
    One,
    W,
    W2,
}

impl F4 {
    /// The pair `φ(x)`.
    pub fn phi(self) -> (bool, bool) {
        match self {
            F4::Zero => (false, false),
            F4::One => (true, false),
            F4::W => (false, true),
            F4::W2 => (true, true),
        }
    }

    pub fn from_phi(one: bool, w: bool) -> F4 {
        match (one, w) {
            (false, false) => F4::Zero,
            (true, false) => F4::One,
            (false, true) => F4::W,
            (true, true) => F4::W2,
        }
    }

    /// Frobenius conjugation `x -> x²`, swapping `w` and `w²`.
    pub fn conj(self) -> F4 {
        match self {
            F4::W => F4::W2,
            F4::W2 => F4::W,
            x => x,
        }
    }
}

impl std::ops::Add for F4 {
    type Output = F4;
    fn add(self, rhs: F4) -> F4 {
        let (a, b) = self.phi();
        let (c, d) = rhs.phi();
        F4::from_phi(a ^ c, b ^ d)
    }
}

impl std::ops::Mul for F4 {
    type Output = F4;
    fn mul(self, rhs: F4) -> F4 {
        // (a + b w)(c + d w) = ac + bd + (ad + bc + bd) w
        let (a, b) = self.phi();
        let (c, d) = rhs.phi();
        F4::from_phi((a & c) ^ (b & d), (a & d) ^ (b & c) ^ (b & d))
    }
}

/// A vector in F4^n, held as its two φ bit planes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct F4Vector {
    ones: Bits,
    ws: Bits,
}

impl F4Vector {
    pub fn zeros(n: usize) -> Self {
        F4Vector {
            ones: Bits::zeros(n),
            ws: Bits::zeros(n),
        }
    }

    pub fn from_entries(entries: &[F4]) -> Self {
        let mut v = F4Vector::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            v.set(i, *e);
        }
        v
    }

    /// Inverse of ψ: the vector with one-part `u1` and w-part `u2`.
    pub fn from_planes(u1: Bits, u2: Bits) -> Self {
        assert_eq!(u1.len(), u2.len());
        F4Vector { ones: u1, ws: u2 }
    }

    pub fn len(&self) -> usize {
        self.ones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }

    pub fn get(&self, i: usize) -> F4 {
        F4::from_phi(self.ones.get(i), self.ws.get(i))
    }

    pub fn set(&mut self, i: usize, e: F4) {
        let (a, b) = e.phi();
        self.ones.set(i, a);
        self.ws.set(i, b);
    }

    /// Hamming weight over F4 (nonzero coordinates).
    pub fn weight(&self) -> usize {
        self.ones.xor(&self.ws).weight() + self.ones.and(&self.ws).weight()
    }

    pub fn add(&self, other: &F4Vector) -> F4Vector {
        F4Vector {
            ones: self.ones.xor(&other.ones),
            ws: self.ws.xor(&other.ws),
        }
    }
}

/// `ψ(v) = (u1, u2)`: the one-part followed by the w-part.
pub fn psi(v: &F4Vector) -> Bits {
    v.ones.concat(&v.ws)
}

/// Trace-symplectic product `Σ a_i d_i + b_i c_i` of `a + wb` and `c + wd`.
pub fn symplectic(u: &F4Vector, v: &F4Vector) -> bool {
    assert_eq!(u.len(), v.len(), "length mismatch");
    u.ones.dot(&v.ws) ^ u.ws.dot(&v.ones)
}

/// The additive cyclic code generated by `a(x) + w b(x)` over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCyclicCode {
    gen_a: CyclicPoly,
    gen_b: CyclicPoly,
}

impl AdditiveCyclicCode {
    pub fn new(gen_a: CyclicPoly, gen_b: CyclicPoly) -> Self {
        assert_eq!(gen_a.n(), gen_b.n(), "generator parts differ in length");
        AdditiveCyclicCode { gen_a, gen_b }
    }

    pub fn n(&self) -> usize {
        self.gen_a.n()
    }

    pub fn gen_a(&self) -> &CyclicPoly {
        &self.gen_a
    }

    pub fn gen_b(&self) -> &CyclicPoly {
        &self.gen_b
    }

    pub fn generator(&self) -> F4Vector {
        F4Vector::from_planes(self.gen_a.bits().clone(), self.gen_b.bits().clone())
    }

    /// ψ-images of the generator shifts: the rows of `[G_a | G_b]`.
    pub fn binary_generator(&self) -> BinaryMatrix {
        let n = self.n();
        let rows = (0..n)
            .map(|i| self.gen_a.shift(i).bits().concat(self.gen_b.shift(i).bits()))
            .collect();
        BinaryMatrix::from_rows(2 * n, rows)
    }

    /// Dimension over F2.
    pub fn dim(&self) -> usize {
        self.binary_generator().rank()
    }

    /// ψ-image of the symplectic dual.
    pub fn symplectic_dual_image(&self) -> RowEchelon {
        // (p, q) is orthogonal to (c, d) iff p·d + q·c = 0, i.e. (p, q) ⊥ (d, c)
        let n = self.n();
        let rows = (0..n)
            .map(|i| self.gen_b.shift(i).bits().concat(self.gen_a.shift(i).bits()))
            .collect();
        let swapped = BinaryMatrix::from_rows(2 * n, rows);
        RowEchelon::from_vectors(2 * n, swapped.kernel())
    }

    /// Every codeword of the symplectic dual (feasible for small dual dimension).
    pub fn symplectic_dual_words(&self) -> Vec<F4Vector> {
        let n = self.n();
        let basis = self.symplectic_dual_image().basis().to_vec();
        assert!(basis.len() <= 24, "dual too large to enumerate");
        let mut out = Vec::with_capacity(1 << basis.len());
        for mask in 0u32..(1u32 << basis.len()) {
            let mut acc = Bits::zeros(2 * n);
            for (i, b) in basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc.xor_assign(b);
                }
            }
            out.push(F4Vector::from_planes(acc.slice(0, n), acc.slice(n, n)));
        }
        out
    }

    pub fn contains(&self, v: &F4Vector) -> bool {
        RowEchelon::new(&self.binary_generator()).contains(&psi(v))
    }

    pub fn parse(n: usize, text: &str) -> Result<Self, AdditiveError> {
        let (a, b) = parse_f4_poly(n, text)?;
        Ok(AdditiveCyclicCode::new(a, b))
    }
}

impl fmt::Display for AdditiveCyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for e in 0..self.n() {
            let name = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let coeff = F4::from_phi(self.gen_a.coeff(e), self.gen_b.coeff(e));
            let prefix = match coeff {
                F4::Zero => continue,
                F4::One => "",
                F4::W => "w",
                F4::W2 => "w^2",
            };
            terms.push(match (prefix, name.as_str()) {
                ("", "") => "1".to_string(),
                (p, "") => p.to_string(),
                ("", m) => m.to_string(),
                (p, m) => format!("{p}*{m}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Splits "w + x + x^3 + w*x^4" into its one-part and w-part polynomials.
pub fn parse_f4_poly(n: usize, text: &str) -> Result<(CyclicPoly, CyclicPoly), AdditiveError> {
    let err = || AdditiveError::Parse(text.to_string());
    if n == 0 {
        return Err(err());
    }
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let mut a = CyclicPoly::zero(n);
    let mut b = CyclicPoly::zero(n);
    if t == "0" {
        return Ok((a, b));
    }
    for term in t.split('+') {
        let (coeff, mono) = split_coefficient(term).ok_or_else(err)?;
        let exps = parse_monomials(mono).ok_or_else(err)?;
        let [e] = exps[..] else { return Err(err()) };
        let m = CyclicPoly::monomial(n, e);
        let (one, w) = coeff.phi();
        if one {
            a = &a + &m;
        }
        if w {
            b = &b + &m;
        }
    }
    Ok((a, b))
}

fn split_coefficient(term: &str) -> Option<(F4, &str)> {
    for (prefix, c) in [("w^2", F4::W2), ("w2", F4::W2), ("w", F4::W)] {
        if let Some(rest) = term.strip_prefix(prefix) {
            return match rest {
                "" => Some((c, "1")),
                r => r.strip_prefix('*').map(|m| (c, m)),
            };
        }
    }
    if term.is_empty() {
        None
    } else {
        Some((F4::One, term))
    }
}

impl FromStr for F4 {
    type Err = AdditiveError;
    fn from_str(s: &str) -> Result<F4, AdditiveError> {
        match s.trim() {
            "0" => Ok(F4::Zero),
            "1" => Ok(F4::One),
            "w" => Ok(F4::W),
            "w^2" | "w2" => Ok(F4::W2),
            other => Err(AdditiveError::Parse(other.to_string())),
        }
    }
}

/// `C^R = <a(x^-1) + w b(x^-1)>`.
pub fn reciprocal_code(c: &AdditiveCyclicCode) -> AdditiveCyclicCode {
    AdditiveCyclicCode::new(c.gen_a.reciprocal(), c.gen_b.reciprocal())
}

/// `C̄ = <b(x) + w a(x)>`.
pub fn conjugate_code(c: &AdditiveCyclicCode) -> AdditiveCyclicCode {
    AdditiveCyclicCode::new(c.gen_b.clone(), c.gen_a.clone())
}

/// True when both codes have the same ψ-image.
pub fn same_code(c: &AdditiveCyclicCode, d: &AdditiveCyclicCode) -> bool {
    c.n() == d.n()
        && RowEchelon::new(&c.binary_generator()).same_span(&RowEchelon::new(&d.binary_generator()))
}

/// Whether every generator shift of `C` is symplectic orthogonal to every shift of `C^R`.
pub fn reciprocal_orthogonal(c: &AdditiveCyclicCode) -> bool {
    let g = c.generator();
    let r = reciprocal_code(c);
    (0..c.n()).all(|j| {
        let h = F4Vector::from_planes(
            r.gen_a.shift(j).into_bits(),
            r.gen_b.shift(j).into_bits(),
        );
        !symplectic(&g, &h)
    })
}

/// The GB code `CSS(ψ(C), ψ(conj(C^R)))`, i.e. the GB code of `(a, b)`.
pub fn to_gb(c: &AdditiveCyclicCode) -> Result<GBCode, AdditiveError> {
    // by shift invariance it suffices to pair the generator with all shifts of g^R
    if !reciprocal_orthogonal(c) {
        return Err(AdditiveError::NotSelfOrthogonal);
    }
    Ok(build_gb(&c.gen_a, &c.gen_b)?)
}

/// Checks `ψ(D^{⊥s}) = ψ(conj(D))^⊥` for `D = C^R`, by rank and containment.
///
/// `ψ((C^R)^{⊥s})` is the kernel of the Z-check matrix of [`to_gb`]'s code.
pub fn duality_check(c: &AdditiveCyclicCode) -> bool {
    let r = reciprocal_code(c);
    euclidean_image_matches(&r, &conjugate_code(&r))
}

/// Checks `ψ((C^R)^{⊥s}) = ψ(conj(C))^⊥` with the conjugate of `C` itself.
///
/// This holds for palindromic codes but fails in general; see the tests.
pub fn reciprocal_duality_literal(c: &AdditiveCyclicCode) -> bool {
    euclidean_image_matches(&reciprocal_code(c), &conjugate_code(c))
}

// ψ(d^{⊥s}) == ψ(e)^⊥
fn euclidean_image_matches(d: &AdditiveCyclicCode, e: &AdditiveCyclicCode) -> bool {
    let n = d.n();
    let lhs = d.symplectic_dual_image();
    let rhs = RowEchelon::from_vectors(2 * n, e.binary_generator().kernel());
    lhs.same_span(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: usize, e: &[usize]) -> CyclicPoly {
        CyclicPoly::from_exponents(n, e.iter().copied())
    }

    #[test]
    fn field_arithmetic() {
        let all = [F4::Zero, F4::One, F4::W, F4::W2];
        assert_eq!(F4::W * F4::W, F4::W2);
        assert_eq!(F4::W * F4::W2, F4::One);
        assert_eq!(F4::W + F4::One, F4::W2);
        for x in all {
            assert_eq!(x + x, F4::Zero);
            assert_eq!(x.conj().conj(), x);
            for y in all {
                assert_eq!((x * y).conj(), x.conj() * y.conj());
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert!(psi(&F4Vector::zeros(4)).is_zero());
        let v = F4Vector::from_entries(&[F4::One, F4::W]);
        assert_eq!(psi(&v).to_bitstring(), "1001");
        assert_eq!(psi(&F4Vector::from_entries(&[F4::W2])).to_bitstring(), "11");
    }

    #[test]
    fn symplectic_examples() {
        let one = F4Vector::from_entries(&[F4::One]);
        let w = F4Vector::from_entries(&[F4::W]);
        assert!(symplectic(&one, &w));
        assert!(!symplectic(&one, &one));
        let v = F4Vector::from_entries(&[F4::W2, F4::W, F4::One]);
        assert!(!symplectic(&v, &v));
    }

    #[test]
    fn parse_and_display() {
        let c = AdditiveCyclicCode::parse(5, "w + x + x^3 + w*x^4").unwrap();
        assert_eq!(c.gen_a(), &cp(5, &[1, 3]));
        assert_eq!(c.gen_b(), &cp(5, &[0, 4]));
        assert_eq!(c.to_string(), "w + x + x^3 + w*x^4");
        let d = AdditiveCyclicCode::parse(3, "w^2*x + 1").unwrap();
        assert_eq!(d.gen_a(), &cp(3, &[0, 1]));
        assert_eq!(d.gen_b(), &cp(3, &[1]));
        assert!(AdditiveCyclicCode::parse(3, "w**x").is_err());
        assert!(AdditiveCyclicCode::parse(3, "").is_err());
    }

    #[test]
    fn reciprocal_and_conjugate() {
        let c = AdditiveCyclicCode::parse(5, "w + x + x^3 + w*x^4").unwrap();
        assert!(same_code(&reciprocal_code(&c), &c));
        assert_eq!(conjugate_code(&conjugate_code(&c)), c);
        assert_eq!(
            reciprocal_code(&conjugate_code(&c)),
            conjugate_code(&reciprocal_code(&c))
        );
    }

    #[test]
    fn to_gb_small_example() {
        let c = AdditiveCyclicCode::parse(5, "w + x + x^3 + w*x^4").unwrap();
        let gb = to_gb(&c).unwrap();
        assert_eq!(gb.a(), &cp(5, &[1, 3]));
        assert_eq!(gb.b(), &cp(5, &[0, 4]));
        assert_eq!(gb.logical_qubits(), 2 * (5 - c.dim()));
    }

    #[test]
    fn reciprocal_orthogonality_holds_for_any_generator() {
        let c = AdditiveCyclicCode::parse(3, "1 + w*x").unwrap();
        assert!(reciprocal_orthogonal(&c));
        assert!(to_gb(&c).is_ok());
    }

    #[test]
    fn duality_identity() {
        let c = AdditiveCyclicCode::parse(5, "w + x + x^3 + w*x^4").unwrap();
        assert!(duality_check(&c));
        assert!(reciprocal_duality_literal(&c));
        let zero = AdditiveCyclicCode::new(CyclicPoly::zero(4), CyclicPoly::zero(4));
        assert!(duality_check(&zero));
        // non-palindromic generator: the identity needs the conjugate of C^R
        let c = AdditiveCyclicCode::parse(3, "1 + w*x").unwrap();
        assert!(duality_check(&c));
        assert!(!reciprocal_duality_literal(&c));
    }

    #[test]
    fn dual_image_is_z_check_kernel() {
        let c = AdditiveCyclicCode::parse(7, "1 + x + w*x^2 + w*x^5 + x^3").unwrap();
        let gb = to_gb(&c).unwrap();
        let kernel = RowEchelon::from_vectors(14, gb.hz().kernel());
        assert!(reciprocal_code(&c).symplectic_dual_image().same_span(&kernel));
    }
}
