//! Working precision for ball midpoints.

use std::fmt;

/// Midpoint precision in bits. Radii always carry [`crate::mag::MAG_PREC`]
/// bits regardless of this value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN: u32 = 2;

    /// # Panics
    ///
    /// Panics if `bits < 2` (MPFR's minimum).
    pub fn new(bits: u32) -> Self {
        assert!(bits >= Self::MIN, "precision must be at least {} bits", Self::MIN);
        Precision(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Precision with `extra` guard bits added.
    pub fn plus(self, extra: u32) -> Self {
        Precision(self.0.saturating_add(extra))
    }

    /// Double the working precision (for oracle/cross-check computations).
    pub fn double(self) -> Self {
        Precision(self.0.saturating_mul(2))
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Precision {
    fn from(bits: u32) -> Self {
        Precision::new(bits)
    }
}
