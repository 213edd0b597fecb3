//! Effective distance under hook errors from syndrome extraction.
//!
//! X checks `x^i·(a, b)` are measured with an ancilla that controls one CNOT
//! per term. An X fault on the ancilla after the `t`-th CNOT spreads to the
//! remaining targets, so the damaging faults are the schedule suffixes of
//! length `2..=w-2` (shorter or longer ones are equivalent to a single data
//! error). One ancilla per check `0 <= i <= n - 2` is assumed, matching the
//! stabilizer basis `x^i·(a, b)`.

use std::fmt;

use thiserror::Error;

use crate::code::GBCode;
use crate::distance::search::{self, Engine};
use crate::distance::{data_columns, DistanceError};
use crate::poly::CyclicPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("schedule does not touch every check term exactly once")]
    NotAPermutation,
    #[error("unknown pattern {0:?} (expected rl, lr or bad)")]
    Unknown(String),
}

/// The CNOT order shared by every X check: terms `(Left, e)` of `a` and `(Right, e)` of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionPattern {
    order: Vec<(Block, usize)>,
}

fn terms(code: &GBCode) -> (Vec<(Block, usize)>, Vec<(Block, usize)>) {
    (
        code.a().exponents().into_iter().map(|e| (Block::Left, e)).collect(),
        code.b().exponents().into_iter().map(|e| (Block::Right, e)).collect(),
    )
}

impl ExtractionPattern {
    pub fn new(code: &GBCode, order: Vec<(Block, usize)>) -> Result<Self, PatternError> {
        let (l, r) = terms(code);
        let mut expected: Vec<_> = l.into_iter().chain(r).collect();
        let mut given = order.clone();
        expected.sort_unstable();
        given.sort_unstable();
        if expected != given {
            return Err(PatternError::NotAPermutation);
        }
        Ok(ExtractionPattern { order })
    }

    /// All right-block CNOTs, then all left-block CNOTs.
    pub fn right_left(code: &GBCode) -> Self {
        let (l, r) = terms(code);
        ExtractionPattern {
            order: r.into_iter().chain(l).collect(),
        }
    }

    pub fn left_right(code: &GBCode) -> Self {
        let (l, r) = terms(code);
        ExtractionPattern {
            order: l.into_iter().chain(r).collect(),
        }
    }

    /// Alternates left and right terms, lowest exponents first:
    /// `(x^i, x^i)` then `(x^{i+1}, x^{i+d})` for `a = 1 + x`, `b = 1 + x^d`.
    pub fn interleaved(code: &GBCode) -> Self {
        let (l, r) = terms(code);
        let mut order = Vec::with_capacity(l.len() + r.len());
        let (mut li, mut ri) = (l.into_iter(), r.into_iter());
        loop {
            match (li.next(), ri.next()) {
                (None, None) => break,
                (x, y) => order.extend(x.into_iter().chain(y)),
            }
        }
        ExtractionPattern { order }
    }

    pub fn by_name(code: &GBCode, name: &str) -> Result<Self, PatternError> {
        match name {
            "rl" => Ok(Self::right_left(code)),
            "lr" => Ok(Self::left_right(code)),
            "bad" | "interleaved" => Ok(Self::interleaved(code)),
            other => Err(PatternError::Unknown(other.to_string())),
        }
    }

    pub fn order(&self) -> &[(Block, usize)] {
        &self.order
    }

    /// Hook shapes for check 0, as `(left, right)` polynomial pairs.
    pub fn hooks(&self, n: usize) -> Vec<(CyclicPoly, CyclicPoly)> {
        let w = self.order.len();
        (2..=w.saturating_sub(2))
            .map(|len| {
                let suffix = &self.order[w - len..];
                let pick = |b: Block| {
                    CyclicPoly::from_exponents(
                        n,
                        suffix.iter().filter(|(blk, _)| *blk == b).map(|&(_, e)| e),
                    )
                };
                (pick(Block::Left), pick(Block::Right))
            })
            .collect()
    }
}

impl fmt::Display for ExtractionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .order
            .iter()
            .map(|(b, e)| format!("{}{e}", if *b == Block::Left { 'L' } else { 'R' }))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Minimum number of data and ancilla faults that produce an undetected
/// nontrivial X logical, searched up to `w_max`.
pub fn effective_distance(
    code: &GBCode,
    pattern: &ExtractionPattern,
    w_max: usize,
) -> Result<usize, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::DimensionZero);
    }
    let n = code.n();
    let spaces = code.spaces();
    let mut cols = data_columns(code, &spaces);
    cols.shift_block = None;
    let hooks = pattern.hooks(n);
    for i in 0..n.saturating_sub(1).max(1) {
        for (hl, hr) in &hooks {
            let v = code.pair_vector(&hl.shift(i), &hr.shift(i));
            cols.syndromes.push(code.hz().mul_vec(&v));
            cols.classes.push(spaces.x_class(&v));
        }
    }
    search::min_nontrivial(&cols, w_max, Engine::Auto)
        .map(|s| s.len())
        .ok_or(DistanceError::NotFoundBelow(w_max))
}
