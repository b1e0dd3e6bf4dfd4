//! Detection of eventually periodic differentials in truncated resolutions.

use super::complex::{canonical_matrix, ChainComplex};
use super::HomalgError;

pub const MIN_PERIODICITY_LEVELS: usize = 4;

/// `detected` means `phi_{k + period} = phi_k` (after canonicalization) for every computed
/// `k > offset`; `offset = 0` means the repetition starts at `phi_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub detected: bool,
    pub offset: usize,
    pub period: usize,
    /// The repetition also holds entry for entry, not only up to units and permutations.
    pub exact: bool,
}

impl PeriodicityReport {
    fn none() -> Self {
        PeriodicityReport { detected: false, offset: 0, period: 0, exact: false }
    }
}

/// Smallest `(offset, period)` with the tail after `offset` covering at least two periods.
pub fn detect_periodicity(c: &ChainComplex) -> Result<PeriodicityReport, HomalgError> {
    if c.is_complete() {
        return Ok(PeriodicityReport::none());
    }
    let n = c.num_levels();
    if n < MIN_PERIODICITY_LEVELS {
        return Err(HomalgError::TooShort { levels: n, needed: MIN_PERIODICITY_LEVELS });
    }
    let canon: Vec<_> = c.diffs().iter().map(canonical_matrix).collect();
    for offset in 0..n {
        for period in 1..=(n - offset) / 2 {
            if (offset..n - period).all(|i| canon[i] == canon[i + period]) {
                let exact = (offset..n - period).all(|i| c.diffs()[i] == c.diffs()[i + period]);
                return Ok(PeriodicityReport { detected: true, offset, period, exact });
            }
        }
    }
    Ok(PeriodicityReport::none())
}
