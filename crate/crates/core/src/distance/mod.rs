//! Minimum distance: exact search, algebraic bounds and hook-aware effective distance.

mod bounds;
mod hook;
pub mod search;

pub use bounds::{
    classical_cyclic_distance, divisibility_upper_bound, gb_distance_bounds, refine_case_a,
    DistanceBoundReport, DivisibilityBound,
};
pub use hook::{effective_distance, Block, ExtractionPattern, PatternError};
pub use search::Engine;

use thiserror::Error;

use crate::bits::Bits;
use crate::code::{CodeError, CodeSpaces, GBCode};
use crate::poly::{F2Poly, PolyError};
use search::ColumnSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("code encodes no logical qubits")]
    DimensionZero,
    #[error("no logical operator of weight at most {0}")]
    NotFoundBelow(usize),
    #[error("no polynomial m with b = m·a")]
    Inapplicable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cyclic code of dimension {0} is too large to enumerate")]
    TooLarge(usize),
    #[error("{0} does not divide x^n - 1")]
    NotADivisor(F2Poly),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A minimum-weight logical operator found by search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceWitness {
    pub weight: usize,
    pub support: Vec<usize>,
    pub vector: Bits,
}

/// Minimum weight of an X-type logical (zero `H_z` syndrome, outside the
/// row space of `H_x`), searched up to `w_max`.
pub fn min_distance_bruteforce(code: &GBCode, w_max: usize) -> Result<DistanceWitness, DistanceError> {
    min_distance_with(code, w_max, Engine::Auto)
}

pub fn min_distance_with(
    code: &GBCode,
    w_max: usize,
    engine: Engine,
) -> Result<DistanceWitness, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::DimensionZero);
    }
    let spaces = code.spaces();
    let cols = data_columns(code, &spaces);
    let support = search::min_nontrivial(&cols, w_max, engine).ok_or(DistanceError::NotFoundBelow(w_max))?;
    let vector = Bits::from_indices(code.len(), support.iter().copied());
    Ok(DistanceWitness {
        weight: support.len(),
        support,
        vector,
    })
}

/// Same as [`min_distance_bruteforce`] for Z-type logicals.
pub fn min_distance_z(code: &GBCode, w_max: usize, engine: Engine) -> Result<usize, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::DimensionZero);
    }
    let spaces = code.spaces();
    let hx = code.hx();
    let cols = ColumnSet {
        syndromes: (0..code.len()).map(|j| hx.column(j)).collect(),
        classes: (0..code.len())
            .map(|j| unit_class(&spaces.x_logicals, j))
            .collect(),
        shift_block: Some(code.n()),
    };
    search::min_nontrivial(&cols, w_max, engine)
        .map(|s| s.len())
        .ok_or(DistanceError::NotFoundBelow(w_max))
}

pub(crate) fn data_columns(code: &GBCode, spaces: &CodeSpaces) -> ColumnSet {
    let hz = code.hz();
    ColumnSet {
        syndromes: (0..code.len()).map(|j| hz.column(j)).collect(),
        classes: (0..code.len())
            .map(|j| unit_class(&spaces.z_logicals, j))
            .collect(),
        shift_block: Some(code.n()),
    }
}

fn unit_class(basis: &[Bits], j: usize) -> u64 {
    assert!(basis.len() <= 64, "more than 64 logical qubits");
    basis
        .iter()
        .enumerate()
        .fold(0, |acc, (l, z)| acc | ((z.get(j) as u64) << l))
}

/// True when `e` is an X-type logical operator of `code` (not a stabilizer).
pub fn is_x_logical(code: &GBCode, spaces: &CodeSpaces, e: &Bits) -> bool {
    code.hz().mul_vec(e).is_zero() && spaces.x_class(e) != 0
}
