//! Exhaustive enumeration and exact counting: nilpotent elements of `g` and
//! `g*`, the pieces of the nilpotent forms, ratios between piece sizes and
//! distinguished graded forms, and exact polynomial fits of the counts.

mod counts;
mod engine;
mod fit;
mod report;
mod sizes;

pub use counts::{
    alternating_operators, borel_cross_check, count_alternating_nilpotent, count_nilpotent, fiber_census, transport_census,
    BorelReport,
};
pub use engine::{is_nilpotent_bits, is_nilpotent_flat, tally, LinearEnumeration};
pub use fit::{integer_interpolant, poly_fit, Polynomial};
pub use report::{CountReport, LabelCount, Status, Target};
pub use sizes::{piece_census, ratio_check, ratio_consistency, Ratio};

use thiserror::Error;

use crate::classical::ClassicalError;
use crate::gf::GfError;
use crate::pieces::PiecesError;

/// Default cap on the number of enumerated points.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("enumeration of q^{dim} = {q}^{dim} points exceeds the budget {budget}")]
    BudgetExceeded { q: u32, dim: usize, budget: u64 },
    #[error("|ζ| / |Q_2^0| = {zeta} / {distinguished} is not a power of {q}")]
    NonIntegralRatio { zeta: u64, distinguished: u64, q: u32 },
    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("point q = {q} deviates from the interpolating polynomial")]
    Inconsistent { q: i64 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("requires characteristic 2")]
    OddCharacteristic,
    #[error("target {} is not a count of g or g*", .0.as_str())]
    UnsupportedTarget(Target),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Pieces(#[from] PiecesError),
}

/// Worker count, enumeration budget, whether to record wall-clock time, and
/// the seed for sampled checks.
#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub shards: usize,
    pub budget: u64,
    pub timing: bool,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            shards: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            timing: false,
            seed: DEFAULT_SEED,
        }
    }
}

impl CensusConfig {
    /// Defaults, with the budget taken from `NILCONE_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(b) = std::env::var("NILCONE_BUDGET").ok().and_then(|s| s.trim().parse().ok()) {
            cfg.budget = b;
        }
        cfg
    }

    /// Fails before any work if `q^dim` points exceed the budget.
    pub fn check_budget(&self, q: u32, dim: usize) -> Result<(), CensusError> {
        let points = (q as u128).checked_pow(dim as u32);
        match points {
            Some(n) if n <= self.budget as u128 => Ok(()),
            _ => Err(CensusError::BudgetExceeded {
                q,
                dim,
                budget: self.budget,
            }),
        }
    }
}

/// `q^e` as `u64`.
pub(crate) fn qpow(q: u32, e: u64) -> u64 {
    (q as u64).pow(e as u32)
}
