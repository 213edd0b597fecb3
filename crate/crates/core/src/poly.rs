//! Arithmetic in F2[x] and in the cyclic ring F2[x]/(x^n - 1).

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

use crate::bits::Bits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("ring length must be positive")]
    ZeroLength,
    #[error("polynomial is not invertible modulo x^{n}-1 (gcd = {gcd})")]
    NotInvertible { n: usize, gcd: F2Poly },
    #[error("{divisor} does not divide x^{n}-1")]
    NotADivisor { n: usize, divisor: F2Poly },
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// An ordinary polynomial over F2, stored densely by coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    // little-endian words, no trailing zero words
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        F2Poly { words: vec![1] }
    }

    pub fn monomial(e: usize) -> Self {
        let mut p = F2Poly::zero();
        p.flip(e);
        p
    }

    /// `x^n - 1`, which equals `x^n + 1` over F2.
    pub fn cyclic_modulus(n: usize) -> Self {
        let mut p = F2Poly::monomial(n);
        p.flip(0);
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = F2Poly::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    pub fn flip(&mut self, e: usize) {
        let w = e / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (e % 64);
        self.normalize();
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .is_some_and(|w| (w >> (e % 64)) & 1 == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.words
            .last()
            .map(|&w| (self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    // self ^= other * x^shift
    fn xor_shifted(&mut self, other: &F2Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn add(&self, other: &F2Poly) -> F2Poly {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        let mut out = F2Poly::zero();
        for e in self.exponents() {
            out.xor_shifted(other, e);
        }
        out
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &F2Poly) -> (F2Poly, F2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = F2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quo.flip(rd - dd);
            rem.xor_shifted(divisor, rd - dd);
        }
        (quo, rem)
    }

    pub fn gcd(&self, other: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g = gcd(self, other)`.
    pub fn ext_gcd(&self, other: &F2Poly) -> (F2Poly, F2Poly, F2Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (F2Poly::one(), F2Poly::zero());
        let (mut t0, mut t1) = (F2Poly::zero(), F2Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.add(&q.mul(&s1));
            let t = t0.add(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn divides(&self, other: &F2Poly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomials(f, &self.exponents())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

fn write_monomials(f: &mut fmt::Formatter<'_>, exps: &[usize]) -> fmt::Result {
    if exps.is_empty() {
        return f.write_str("0");
    }
    for (i, &e) in exps.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        match e {
            0 => f.write_str("1")?,
            1 => f.write_str("x")?,
            _ => write!(f, "x^{e}")?,
        }
    }
    Ok(())
}

/// A residue of F2[x]/(x^n - 1), stored as its `n` coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    n: usize,
    bits: Bits,
}

impl CyclicPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ring length must be positive");
        CyclicPoly {
            n,
            bits: Bits::zeros(n),
        }
    }

    pub fn one(n: usize) -> Self {
        CyclicPoly::monomial(n, 0)
    }

    pub fn monomial(n: usize, e: usize) -> Self {
        let mut p = CyclicPoly::zero(n);
        p.bits.set(e % n, true);
        p
    }

    /// Sum of `x^e` for each exponent, reduced mod n. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(n: usize, exps: I) -> Self {
        let mut p = CyclicPoly::zero(n);
        for e in exps {
            p.bits.flip(e % n);
        }
        p
    }

    pub fn from_bits(bits: Bits) -> Result<Self, PolyError> {
        if bits.is_empty() {
            return Err(PolyError::ZeroLength);
        }
        Ok(CyclicPoly { n: bits.len(), bits })
    }

    /// Reduces an ordinary polynomial modulo x^n - 1.
    pub fn from_f2(n: usize, p: &F2Poly) -> Self {
        CyclicPoly::from_exponents(n, p.exponents())
    }

    /// `P_n(x) = 1 + x + ... + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        CyclicPoly {
            n,
            bits: Bits::ones(n),
        }
    }

    /// `x^start · (1 + x^step + x^(2·step) + ... )` with `count` terms, before reduction.
    pub fn progression(n: usize, start: usize, step: usize, count: usize) -> Self {
        CyclicPoly::from_exponents(n, (0..count).map(|i| start + i * step))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn into_bits(self) -> Bits {
        self.bits
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.bits.get(e % self.n)
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.bits.weight() == 1 && self.bits.get(0)
    }

    /// Degree of the canonical representative; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.bits.last_one()
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.bits.ones_vec()
    }

    /// The canonical lift to F2[x] (degree < n).
    pub fn lift(&self) -> F2Poly {
        F2Poly::from_exponents(self.bits.iter_ones())
    }

    fn check_len(&self, other: &CyclicPoly) -> Result<(), PolyError> {
        if self.n != other.n {
            Err(PolyError::LengthMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CyclicPoly) -> Result<CyclicPoly, PolyError> {
        self.check_len(other)?;
        Ok(CyclicPoly {
            n: self.n,
            bits: self.bits.xor(&other.bits),
        })
    }

    pub fn checked_mul(&self, other: &CyclicPoly) -> Result<CyclicPoly, PolyError> {
        self.check_len(other)?;
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Bits::zeros(self.n);
        for e in sparse.bits.iter_ones() {
            acc.xor_assign(&dense.bits.rotate_up(e));
        }
        Ok(CyclicPoly {
            n: self.n,
            bits: acc,
        })
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> CyclicPoly {
        CyclicPoly {
            n: self.n,
            bits: self.bits.rotate_up(k),
        }
    }

    /// `p(x^-1)`: the coefficient of `x^i` moves to `x^((n-i) mod n)`.
    pub fn reciprocal(&self) -> CyclicPoly {
        let n = self.n;
        CyclicPoly {
            n,
            bits: self.bits.map_indices(n, |i| (n - i) % n),
        }
    }

    /// `p(x^s)`: the coefficient of `x^i` moves to `x^((s·i) mod n)`.
    pub fn substitute_power(&self, s: usize) -> CyclicPoly {
        let n = self.n;
        CyclicPoly {
            n,
            bits: self.bits.map_indices(n, |i| (i * s) % n),
        }
    }

    /// `gcd(lift(p), x^n - 1)` as an ordinary polynomial.
    pub fn gcd_with_modulus(&self) -> F2Poly {
        self.lift().gcd(&F2Poly::cyclic_modulus(self.n))
    }

    /// Returns `(g, s)` with `s·p ≡ g (mod x^n - 1)` and `g = gcd(lift(p), x^n - 1)`.
    pub fn gcd_with_modulus_ext(&self) -> (F2Poly, CyclicPoly) {
        let (g, s, _) = self.lift().ext_gcd(&F2Poly::cyclic_modulus(self.n));
        (g, CyclicPoly::from_f2(self.n, &s))
    }

    pub fn invert(&self) -> Result<CyclicPoly, PolyError> {
        let (g, s) = self.gcd_with_modulus_ext();
        if g.is_one() {
            Ok(s)
        } else {
            Err(PolyError::NotInvertible { n: self.n, gcd: g })
        }
    }

    /// `(x^n - 1) / lift(self)` as an exact quotient.
    pub fn quotient_by(&self) -> Result<F2Poly, PolyError> {
        let f = self.lift();
        let modulus = F2Poly::cyclic_modulus(self.n);
        if f.is_zero() {
            return Err(PolyError::NotADivisor {
                n: self.n,
                divisor: f,
            });
        }
        let (q, r) = modulus.div_rem(&f);
        if !r.is_zero() {
            return Err(PolyError::NotADivisor {
                n: self.n,
                divisor: f,
            });
        }
        Ok(q)
    }

    /// All `m` with `m·self ≡ target`, as a particular solution plus a basis of
    /// the annihilator of `self`. `None` when no solution exists.
    pub fn solve_multiple(&self, target: &CyclicPoly) -> Option<RingSolution> {
        assert_eq!(self.n, target.n);
        let n = self.n;
        let (g, s) = self.gcd_with_modulus_ext();
        let (tq, tr) = target.lift().div_rem(&g);
        if !tr.is_zero() {
            return None;
        }
        let particular = &s * &CyclicPoly::from_f2(n, &tq);
        let annihilator = CyclicPoly::from_f2(n, &F2Poly::cyclic_modulus(n).div_rem(&g).0);
        let dim = g.degree().unwrap_or(0);
        let kernel = (0..dim).map(|i| annihilator.shift(i)).collect();
        Some(RingSolution { particular, kernel })
    }

    /// Parses "1+x^3+x^17" (exponents reduced mod n) or a length-n bitstring.
    pub fn parse(n: usize, text: &str) -> Result<CyclicPoly, PolyError> {
        if n == 0 {
            return Err(PolyError::ZeroLength);
        }
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || PolyError::Parse(text.to_string());
        if t.is_empty() {
            return Err(err());
        }
        let is_bitstring = t.len() > 1 && t.chars().all(|c| c == '0' || c == '1');
        if is_bitstring {
            if t.len() != n {
                return Err(err());
            }
            let bits = Bits::from_bitstring(&t).ok_or_else(err)?;
            return CyclicPoly::from_bits(bits);
        }
        let exps = parse_monomials(&t).ok_or_else(err)?;
        Ok(CyclicPoly::from_exponents(n, exps))
    }
}

/// Solutions of `m·a ≡ b`: `particular + span(kernel)`.
#[derive(Debug, Clone)]
pub struct RingSolution {
    pub particular: CyclicPoly,
    pub kernel: Vec<CyclicPoly>,
}

impl RingSolution {
    /// Every solution, or `None` if the solution space exceeds `2^max_dim` elements.
    pub fn enumerate(&self, max_dim: usize) -> Option<Vec<CyclicPoly>> {
        if self.kernel.len() > max_dim {
            return None;
        }
        let mut out = Vec::with_capacity(1 << self.kernel.len());
        for mask in 0u64..(1u64 << self.kernel.len()) {
            let mut m = self.particular.clone();
            for (i, k) in self.kernel.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    m = &m + k;
                }
            }
            out.push(m);
        }
        Some(out)
    }
}

/// Exponents of a "+"-separated monomial list such as "1+x+x^4" or "0".
pub(crate) fn parse_monomials(t: &str) -> Option<Vec<usize>> {
    if t == "0" {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for term in t.split('+') {
        let e = match term {
            "1" => 0,
            "x" => 1,
            _ => term.strip_prefix("x^")?.parse().ok()?,
        };
        out.push(e);
    }
    Some(out)
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomials(f, &self.exponents())
    }
}

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicPoly[n={}]({self})", self.n)
    }
}

impl FromStr for F2Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_monomials(&t)
            .map(F2Poly::from_exponents)
            .ok_or_else(|| PolyError::Parse(s.to_string()))
    }
}

// Operator forms panic on mismatched ring lengths; use checked_* to get an error.
impl Add for &CyclicPoly {
    type Output = CyclicPoly;
    fn add(self, rhs: &CyclicPoly) -> CyclicPoly {
        self.checked_add(rhs).expect("ring length mismatch")
    }
}

impl Mul for &CyclicPoly {
    type Output = CyclicPoly;
    fn mul(self, rhs: &CyclicPoly) -> CyclicPoly {
        self.checked_mul(rhs).expect("ring length mismatch")
    }
}

impl Add for CyclicPoly {
    type Output = CyclicPoly;
    fn add(self, rhs: CyclicPoly) -> CyclicPoly {
        &self + &rhs
    }
}

impl Mul for CyclicPoly {
    type Output = CyclicPoly;
    fn mul(self, rhs: CyclicPoly) -> CyclicPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: usize, e: &[usize]) -> CyclicPoly {
        CyclicPoly::from_exponents(n, e.iter().copied())
    }

    #[test]
    fn addition_examples() {
        assert!((cp(5, &[0, 1]) + cp(5, &[0, 1])).is_zero());
        assert_eq!(cp(5, &[0, 1]) + cp(5, &[1, 2]), cp(5, &[0, 2]));
        assert_eq!(CyclicPoly::all_ones(5) + CyclicPoly::one(5), cp(5, &[1, 2, 3, 4]));
        assert_eq!(
            cp(5, &[0]).checked_add(&cp(4, &[0])),
            Err(PolyError::LengthMismatch(5, 4))
        );
    }

    #[test]
    fn multiplication_examples() {
        let q = cp(9, &[1, 4, 7]);
        assert_eq!(&CyclicPoly::one(9) * &q, q);
        // P_3 and x·P_3(x^3) are inverse in the ring of length 5
        assert!((cp(5, &[0, 1, 2]) * cp(5, &[1, 2, 4])).is_one());
        let p27 = CyclicPoly::progression(27, 0, 3, 7);
        assert!((p27 * cp(27, &[3, 6, 12, 18, 24])).is_one());
        assert!(cp(5, &[0]).checked_mul(&cp(6, &[0])).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(cp(5, &[0, 1]).gcd_with_modulus(), F2Poly::from_exponents([0, 1]));
        assert_eq!(cp(5, &[0, 3]).gcd_with_modulus(), F2Poly::from_exponents([0, 1]));
        assert!(CyclicPoly::one(7).gcd_with_modulus().is_one());
        assert_eq!(CyclicPoly::zero(6).gcd_with_modulus(), F2Poly::cyclic_modulus(6));
    }

    #[test]
    fn inversion_examples() {
        assert!(CyclicPoly::one(3).invert().unwrap().is_one());
        let p48 = CyclicPoly::progression(48, 0, 3, 7);
        assert_eq!(
            p48.invert().unwrap(),
            cp(48, &[3, 6, 12, 18, 24, 27, 33, 39, 45])
        );
        assert!(matches!(
            cp(5, &[0, 1]).invert(),
            Err(PolyError::NotInvertible { .. })
        ));
    }

    #[test]
    fn reciprocal_and_substitution_examples() {
        assert!(CyclicPoly::one(5).reciprocal().is_one());
        assert_eq!(cp(5, &[1]).reciprocal(), cp(5, &[4]));
        let p = cp(5, &[0, 1, 2]);
        assert_eq!(p.substitute_power(1), p);
        assert_eq!(p.substitute_power(3), cp(5, &[0, 1, 3]));
        assert_eq!(cp(4, &[0, 1]).substitute_power(2), cp(4, &[0, 2]));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(cp(5, &[0, 1]).quotient_by().unwrap(), CyclicPoly::all_ones(5).lift());
        assert_eq!(CyclicPoly::one(6).quotient_by().unwrap(), F2Poly::cyclic_modulus(6));
        let f = cp(27, &[0, 1, 2]);
        let h = f.quotient_by().unwrap();
        assert_eq!(h.mul(&f.lift()), F2Poly::cyclic_modulus(27));
        assert!(matches!(
            cp(5, &[0, 1, 2]).quotient_by(),
            Err(PolyError::NotADivisor { .. })
        ));
        assert_eq!(CyclicPoly::all_ones(13).weight(), 13);
    }

    #[test]
    fn solve_multiple_finds_all_quotients() {
        // (1+x)·m = 1+x^3 in n=5: m ∈ {1+x+x^2, 1+x+x^2 + P_5}
        let sol = cp(5, &[0, 1]).solve_multiple(&cp(5, &[0, 3])).unwrap();
        let all = sol.enumerate(8).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&cp(5, &[0, 1, 2])));
        assert!(cp(5, &[0, 1]).solve_multiple(&CyclicPoly::one(5)).is_none());
    }

    #[test]
    fn parse_and_display() {
        let p = CyclicPoly::parse(20, "1 + x^3 + x^17").unwrap();
        assert_eq!(p.to_string(), "1+x^3+x^17");
        assert_eq!(CyclicPoly::parse(5, "10010").unwrap(), cp(5, &[0, 3]));
        assert_eq!(CyclicPoly::parse(5, "x^7").unwrap(), cp(5, &[2]));
        assert!(CyclicPoly::parse(5, "100").is_err());
        assert!(CyclicPoly::parse(5, "y+1").is_err());
        assert_eq!(CyclicPoly::zero(4).to_string(), "0");
    }
}
