//! Syndrome decoders for CSS codes: belief propagation with ordered-statistics
//! post-processing, and minimum-weight perfect matching.

pub mod bp;
pub mod matching;
pub mod osd;

use std::fmt;
use std::str::FromStr;

use gbcode::graph::{decoding_graph, GraphError};
use gbcode::{BinaryMatrix, Bits, GBCode};
use thiserror::Error;

pub use bp::{bp_decode, BeliefPropagation, BpConfig, BpOutput, Schedule};
pub use matching::{MatchingDecoder, MatchingOutput};
pub use osd::{osd_decode, OsdOutput};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("syndrome cannot be matched: a component has odd parity and no boundary")]
    Unmatchable,
    #[error("expected a syndrome of length {expected}, got {got}")]
    SyndromeLength { expected: usize, got: usize },
    #[error("unknown decoder {0:?} (expected mwpm or bp-osd:<order>)")]
    UnknownDecoder(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Decoder selection, written `bp-osd:<order>` or `mwpm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoderChoice {
    BpOsd { order: usize, bp: BpConfig },
    Mwpm,
}

impl DecoderChoice {
    pub fn bp_osd(order: usize) -> Self {
        DecoderChoice::BpOsd {
            order,
            bp: BpConfig::default(),
        }
    }
}

impl FromStr for DecoderChoice {
    type Err = DecodeError;

    fn from_str(s: &str) -> Result<Self, DecodeError> {
        let bad = || DecodeError::UnknownDecoder(s.to_string());
        match s.trim() {
            "mwpm" => Ok(DecoderChoice::Mwpm),
            "bp-osd" => Ok(DecoderChoice::bp_osd(0)),
            t => {
                let order = t.strip_prefix("bp-osd:").ok_or_else(bad)?;
                Ok(DecoderChoice::bp_osd(order.parse().map_err(|_| bad())?))
            }
        }
    }
}

impl fmt::Display for DecoderChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderChoice::BpOsd { order, .. } => write!(f, "bp-osd:{order}"),
            DecoderChoice::Mwpm => f.write_str("mwpm"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub support: Bits,
    /// BP convergence for BP-OSD (the OSD stage still runs when false);
    /// always true for matching.
    pub converged: bool,
    pub method: DecoderChoice,
}

/// A decoder bound to one parity-check matrix and one set of priors.
#[derive(Debug, Clone)]
pub enum SectorDecoder {
    BpOsd {
        bp: BeliefPropagation,
        cfg: BpConfig,
        order: usize,
        priors: Vec<f64>,
    },
    Mwpm(MatchingDecoder),
}

impl SectorDecoder {
    pub fn new(choice: DecoderChoice, h: &BinaryMatrix, priors: &[f64]) -> Result<Self, DecodeError> {
        match choice {
            DecoderChoice::BpOsd { order, bp } => Ok(SectorDecoder::BpOsd {
                bp: BeliefPropagation::new(h),
                cfg: bp,
                order,
                priors: priors.to_vec(),
            }),
            DecoderChoice::Mwpm => Ok(SectorDecoder::Mwpm(MatchingDecoder::new(
                decoding_graph(h, priors)?,
                h.num_cols(),
            ))),
        }
    }

    pub fn choice(&self) -> DecoderChoice {
        match self {
            SectorDecoder::BpOsd { cfg, order, .. } => DecoderChoice::BpOsd {
                order: *order,
                bp: *cfg,
            },
            SectorDecoder::Mwpm(_) => DecoderChoice::Mwpm,
        }
    }

    pub fn decode(&self, syndrome: &Bits) -> Result<Correction, DecodeError> {
        let method = self.choice();
        match self {
            SectorDecoder::BpOsd { bp, cfg, order, priors } => {
                let rows = bp.matrix().num_rows();
                if syndrome.len() != rows {
                    return Err(DecodeError::SyndromeLength {
                        expected: rows,
                        got: syndrome.len(),
                    });
                }
                let out = bp.decode(syndrome, priors, cfg);
                let support = if out.converged {
                    out.hard
                } else {
                    osd_decode(bp.matrix(), syndrome, &out.llr, *order).correction
                };
                Ok(Correction {
                    support,
                    converged: out.converged,
                    method,
                })
            }
            SectorDecoder::Mwpm(m) => Ok(Correction {
                support: m.decode(syndrome)?.correction,
                converged: true,
                method,
            }),
        }
    }
}

/// Per-sector prior for depolarizing noise of strength `p`: an X error
/// component arises from X or Y, each with probability `p/3`.
pub fn sector_prior(p: f64) -> f64 {
    (2.0 * p / 3.0).clamp(1e-12, 0.5)
}

/// Independent X and Z sector decoders for a GB code.
#[derive(Debug, Clone)]
pub struct CssDecoder {
    /// Decodes X errors from the syndrome of `H_z`.
    pub x_sector: SectorDecoder,
    /// Decodes Z errors from the syndrome of `H_x`.
    pub z_sector: SectorDecoder,
}

impl CssDecoder {
    pub fn new(code: &GBCode, choice: DecoderChoice, p: f64) -> Result<Self, DecodeError> {
        let priors = vec![sector_prior(p); code.len()];
        Ok(CssDecoder {
            x_sector: SectorDecoder::new(choice, code.hz(), &priors)?,
            z_sector: SectorDecoder::new(choice, code.hx(), &priors)?,
        })
    }

    /// `x_syndrome = H_z·e_x` and `z_syndrome = H_x·e_z`; returns the X and Z corrections.
    pub fn decode(&self, x_syndrome: &Bits, z_syndrome: &Bits) -> Result<(Correction, Correction), DecodeError> {
        Ok((self.x_sector.decode(x_syndrome)?, self.z_sector.decode(z_syndrome)?))
    }
}

/// One-shot CSS decode with depolarizing priors of strength `p`.
pub fn decode_css(
    code: &GBCode,
    x_syndrome: &Bits,
    z_syndrome: &Bits,
    choice: DecoderChoice,
    p: f64,
) -> Result<(Correction, Correction), DecodeError> {
    CssDecoder::new(code, choice, p)?.decode(x_syndrome, z_syndrome)
}
