//! Algebraic distance bounds for GB codes of the form `(f, p·f)` with `p` a unit.

use crate::bits::Bits;
use crate::code::{build_gb, GBCode};
use crate::distance::{is_x_logical, DistanceError};
use crate::poly::{CyclicPoly, F2Poly};

/// `wt(m) + 1` for `b = m·a` (lowest-degree such `m`), with the logical `(1, m)` as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityBound {
    pub bound: usize,
    pub m: CyclicPoly,
    pub witness: Bits,
}

const MULTIPLIER_SEARCH_DIM: usize = 12;

pub fn divisibility_upper_bound(code: &GBCode) -> Result<DivisibilityBound, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::Inapplicable);
    }
    let sol = code
        .a()
        .solve_multiple(code.b())
        .ok_or(DistanceError::Inapplicable)?;
    let candidates = sol
        .enumerate(MULTIPLIER_SEARCH_DIM)
        .unwrap_or_else(|| vec![sol.particular.clone()]);
    let spaces = code.spaces();
    let one = CyclicPoly::one(code.n());
    candidates
        .into_iter()
        .map(|m| {
            let witness = code.pair_vector(&one, &m);
            (m, witness)
        })
        .filter(|(_, w)| is_x_logical(code, &spaces, w))
        .min_by(|(m1, _), (m2, _)| {
            (m1.degree(), m1.exponents()).cmp(&(m2.degree(), m2.exponents()))
        })
        .map(|(m, witness)| DivisibilityBound {
            bound: m.weight() + 1,
            m,
            witness,
        })
        .ok_or(DistanceError::Inapplicable)
}

/// Minimum weight of a nonzero codeword of the cyclic code generated by `g`.
pub fn classical_cyclic_distance(g: &F2Poly, n: usize) -> Result<usize, DistanceError> {
    const MAX_DIM: usize = 24;
    let modulus = F2Poly::cyclic_modulus(n);
    if g.is_zero() || !g.divides(&modulus) {
        return Err(DistanceError::NotADivisor(g.clone()));
    }
    let dim = n - g.degree().expect("nonzero");
    if dim == 0 {
        return Err(DistanceError::PreconditionViolated(
            "generator yields the zero code".into(),
        ));
    }
    if dim > MAX_DIM {
        return Err(DistanceError::TooLarge(dim));
    }
    let base = CyclicPoly::from_f2(n, g);
    let rows: Vec<Bits> = (0..dim).map(|i| base.shift(i).into_bits()).collect();
    let mut word = Bits::zeros(n);
    let mut best = usize::MAX;
    for t in 1u64..(1u64 << dim) {
        word.xor_assign(&rows[t.trailing_zeros() as usize]);
        best = best.min(word.weight());
    }
    Ok(best)
}

/// Bounds on the distance of the GB code of `(f, p·f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBoundReport {
    pub n: usize,
    /// Distance of the cyclic code generated by `h = (x^n - 1)/f`.
    pub classical_d: usize,
    pub h: CyclicPoly,
    pub p_inv: CyclicPoly,
    pub m: usize,
    pub m_prime: usize,
    /// `(r, s)` with `r + p·s = h`.
    pub decomposition: (CyclicPoly, CyclicPoly),
    /// `(r', s')` with `r' + p^-1·s' = h`.
    pub decomposition_inv: (CyclicPoly, CyclicPoly),
    pub lower: usize,
    pub upper: usize,
    /// Verified logical operators; the lightest has weight `upper`.
    pub witnesses: Vec<Bits>,
}

impl DistanceBoundReport {
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

pub fn gb_distance_bounds(
    f: &CyclicPoly,
    p: &CyclicPoly,
    classical_d: Option<usize>,
    decomposition_budget: usize,
) -> Result<DistanceBoundReport, DistanceError> {
    let n = f.n();
    if p.n() != n {
        return Err(DistanceError::PreconditionViolated(
            "f and p live in different rings".into(),
        ));
    }
    let modulus = F2Poly::cyclic_modulus(n);
    let f_lift = f.lift();
    if f_lift.degree().unwrap_or(0) == 0 || !f_lift.divides(&modulus) {
        return Err(DistanceError::PreconditionViolated(format!(
            "{f_lift} is not a proper divisor of x^{n}-1"
        )));
    }
    let p_inv = p
        .invert()
        .map_err(|_| DistanceError::PreconditionViolated(format!("{p} is not a unit")))?;
    let h_poly = modulus.div_rem(&f_lift).0;
    let h = CyclicPoly::from_f2(n, &h_poly);
    let d = match classical_d {
        Some(d) => d,
        None => classical_cyclic_distance(&h_poly, n)?,
    };

    let (wp, wpi) = (p.weight(), p_inv.weight());
    let m = wp.max(wpi);
    let decomposition = best_decomposition(p, &h, decomposition_budget);
    let decomposition_inv = best_decomposition(&p_inv, &h, decomposition_budget);
    let span = |(r, s): &(CyclicPoly, CyclicPoly)| r.weight().max(s.weight());
    let m_prime = span(&decomposition).min(span(&decomposition_inv));

    // ceil(min{(wp + wpi)·d / (m + wp·wpi), d / m'})
    let case_b = (((wp + wpi) * d) as u128, (m + wp * wpi) as u128);
    let case_a = (d as u128, m_prime.max(1) as u128);
    let smaller = if case_b.0 * case_a.1 <= case_a.0 * case_b.1 {
        case_b
    } else {
        case_a
    };
    let lower = smaller.0.div_ceil(smaller.1) as usize;

    let code = build_gb(f, &(f * p))?;
    let spaces = code.spaces();
    let one = CyclicPoly::one(n);
    let (r, s) = &decomposition;
    let mut witnesses: Vec<Bits> = [
        code.pair_vector(&one, p),
        code.pair_vector(&p_inv, &one),
        code.pair_vector(s, r),
    ]
    .into_iter()
    .filter(|w| is_x_logical(&code, &spaces, w))
    .collect();
    witnesses.sort_by_key(Bits::weight);
    let upper = witnesses
        .first()
        .map(Bits::weight)
        .ok_or_else(|| DistanceError::PreconditionViolated("no logical witness".into()))?;

    Ok(DistanceBoundReport {
        n,
        classical_d: d,
        h,
        p_inv,
        m,
        m_prime,
        decomposition,
        decomposition_inv,
        lower,
        upper,
        witnesses,
    })
}

// The pair (h + q·s, s) minimizing max{wt r, wt s}, then wt r + wt s, over s
// of weight at most `budget` and over shifted arithmetic progressions.
fn best_decomposition(q: &CyclicPoly, h: &CyclicPoly, budget: usize) -> (CyclicPoly, CyclicPoly) {
    let n = q.n();
    let mut best: Option<((usize, usize, Vec<usize>), CyclicPoly, CyclicPoly)> = None;
    let mut consider = |s: CyclicPoly| {
        let r = h + &(q * &s);
        let key = (r.weight().max(s.weight()), r.weight() + s.weight(), s.exponents());
        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
            best = Some((key, r, s));
        }
    };
    for_each_low_weight(n, budget, &mut |exps| consider(CyclicPoly::from_exponents(n, exps.iter().copied())));
    let max_count = 2 * n.isqrt() + 2;
    for step in 1..n {
        for count in (budget + 1)..=max_count.min(n) {
            let base = CyclicPoly::progression(n, 0, step, count);
            if base.weight() != count {
                continue;
            }
            for c in 0..n {
                consider(base.shift(c));
            }
        }
    }
    let (_, r, s) = best.expect("s = 0 is always a candidate");
    (r, s)
}

// Every exponent set of size at most `w` (including the empty set) in lexicographic order.
pub(crate) fn for_each_low_weight<F: FnMut(&[usize])>(n: usize, w: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(n: usize, start: usize, left: usize, cur: &mut Vec<usize>, f: &mut F) {
        f(cur);
        if left == 0 {
            return;
        }
        for e in start..n {
            cur.push(e);
            rec(n, e + 1, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(n, 0, w.min(n), &mut Vec::new(), f);
}

/// Lower bound refined by splitting logicals into the two cases of
/// `f·(u·p + v) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseSplitBound {
    /// Lower bound on `wt(u) + wt(v)` over case (a): `v = u·p`, `f ∤ u`.
    pub case_a: usize,
    /// Lower bound over case (b): `u·p + v` a nonzero codeword of `<h>`.
    pub case_b: usize,
    pub lower: usize,
}

/// Improves `report.lower` by exact enumeration of case-(a) vectors with
/// `wt(u) <= weight_cap` or `wt(v) <= weight_cap`, and by integer
/// minimization of the weight inequalities elsewhere.
pub fn refine_case_a(
    f: &CyclicPoly,
    p: &CyclicPoly,
    report: &DistanceBoundReport,
    weight_cap: usize,
) -> CaseSplitBound {
    let n = f.n();
    let d = report.classical_d;
    let h = &report.h;
    let p_inv = &report.p_inv;
    assert_eq!(f.n(), report.n, "report belongs to another ring");

    // case (a), light side enumerated exactly; by shift invariance u ∋ 0
    let mut enumerated = usize::MAX;
    for q in [p, p_inv] {
        for_each_low_weight(n - 1, weight_cap.saturating_sub(1), &mut |rest| {
            let u = CyclicPoly::from_exponents(n, std::iter::once(0).chain(rest.iter().map(|e| e + 1)));
            if (&u * h).is_zero() {
                return;
            }
            let v = &u * q;
            enumerated = enumerated.min(u.weight() + v.weight());
        });
    }
    let (r, s) = &report.decomposition;
    let (r2, s2) = &report.decomposition_inv;
    let (wr, ws, wr2, ws2) = (r.weight(), s.weight(), r2.weight(), s2.weight());
    let heavy = min_sum(weight_cap + 1, n, |a, b| {
        d <= wr * a + ws * b && d <= ws2 * a + wr2 * b
    });
    let case_a = enumerated.min(heavy);

    let (wp, wpi) = (p.weight(), p_inv.weight());
    let case_b = min_sum(0, n, |a, b| a + b > 0 && d <= wp * a + b && d <= a + wpi * b);

    let lower = report.lower.max(case_a.min(case_b));
    CaseSplitBound {
        case_a,
        case_b,
        lower,
    }
}

// min a + b over from <= a, b <= n satisfying `ok`, or usize::MAX.
fn min_sum<F: Fn(usize, usize) -> bool>(from: usize, n: usize, ok: F) -> usize {
    let mut best = usize::MAX;
    for a in from..=n {
        for b in from..=n {
            if a + b < best && ok(a, b) {
                best = a + b;
            }
        }
    }
    best
}
