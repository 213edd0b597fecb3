//! Ordered-statistics post-processing of soft decoder output.

use gbcode::{BinaryMatrix, Bits};

/// Largest number of information columns swept exhaustively.
pub const MAX_SWEEP: usize = 15;

/// Result of ordered-statistics decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct OsdOutput {
    pub correction: Bits,
    /// `Σ llr_j` over the support, the quantity minimized over candidates.
    pub cost: f64,
    /// False only when the syndrome is outside the column space of `H`.
    pub consistent: bool,
}

struct Reduced {
    order: Vec<usize>,
    // per reduced row: its pivot position in `order`, the row (over positions) and syndrome bit
    rows: Vec<(usize, Bits, bool)>,
    info: Vec<usize>,
    consistent: bool,
}

fn reduce(h: &BinaryMatrix, syndrome: &Bits, llr: &[f64]) -> Reduced {
    let ncols = h.num_cols();
    let mut order: Vec<usize> = (0..ncols).collect();
    order.sort_by(|&i, &j| llr[i].total_cmp(&llr[j]).then(i.cmp(&j)));
    let mut rows: Vec<(Bits, bool)> = h
        .rows()
        .iter()
        .zip(0..)
        .map(|(r, i)| (Bits::from_bools(order.iter().map(|&c| r.get(c))), syndrome.get(i)))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    let mut info = Vec::new();
    for pos in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| rows[r].0.get(pos)) else {
            info.push(pos);
            continue;
        };
        rows.swap(next, found);
        let (pivot_row, pivot_bit) = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.0.get(pos) {
                row.0.xor_assign(&pivot_row);
                row.1 ^= pivot_bit;
            }
        }
        pivots.push(pos);
        next += 1;
    }
    let consistent = rows[next..].iter().all(|(_, s)| !s);
    rows.truncate(next);
    Reduced {
        order,
        rows: pivots.into_iter().zip(rows).map(|(p, (r, s))| (p, r, s)).collect(),
        info,
        consistent,
    }
}

impl Reduced {
    // full assignment over positions for a set of flipped information positions
    fn solve(&self, flips: &[usize]) -> Bits {
        let mut x = Bits::from_indices(self.order.len(), flips.iter().copied());
        for (p, row, s) in &self.rows {
            let v = flips.iter().fold(*s, |acc, &t| acc ^ row.get(t));
            x.set(*p, v);
        }
        x
    }

    fn to_original(&self, x: &Bits) -> Bits {
        Bits::from_indices(x.len(), x.iter_ones().map(|pos| self.order[pos]))
    }
}

fn cost(x: &Bits, llr: &[f64]) -> f64 {
    x.iter_ones().map(|j| llr[j]).sum()
}

/// OSD of order `order`: order 0 keeps every information column at zero;
/// higher orders also try every assignment of the `min(order, 15)` least
/// reliable information columns and every single information-column flip,
/// keeping the candidate of least cost (ties go to the earlier candidate).
pub fn osd_decode(h: &BinaryMatrix, syndrome: &Bits, llr: &[f64], order: usize) -> OsdOutput {
    assert_eq!(llr.len(), h.num_cols(), "llr length");
    assert_eq!(syndrome.len(), h.num_rows(), "syndrome length");
    let red = reduce(h, syndrome, llr);
    let mut best = red.to_original(&red.solve(&[]));
    let mut best_cost = cost(&best, llr);
    if order > 0 {
        let sweep = order.min(MAX_SWEEP).min(red.info.len());
        let mut consider = |flips: &[usize]| {
            let cand = red.to_original(&red.solve(flips));
            let c = cost(&cand, llr);
            if c < best_cost {
                best = cand;
                best_cost = c;
            }
        };
        for mask in 1u32..(1u32 << sweep) {
            let flips: Vec<usize> = (0..sweep)
                .filter(|&i| (mask >> i) & 1 == 1)
                .map(|i| red.info[i])
                .collect();
            consider(&flips);
        }
        for &t in &red.info[sweep..] {
            consider(&[t]);
        }
    }
    OsdOutput {
        correction: best,
        cost: best_cost,
        consistent: red.consistent,
    }
}
