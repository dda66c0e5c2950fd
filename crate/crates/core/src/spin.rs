//! Half-integer bookkeeping for angular momentum labels.
//!
//! Every label (`j`, `μ`, `ν`) is stored as twice its value so that integer and
//! half-odd-integer spins share one exact representation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An angular momentum quantum number stored as `2 × value`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinIndex {
    twice_value: i64,
}

impl SpinIndex {
    pub const ZERO: SpinIndex = SpinIndex { twice_value: 0 };

    pub const fn from_twice(twice_value: i64) -> Self {
        SpinIndex { twice_value }
    }

    pub const fn from_int(value: i64) -> Self {
        SpinIndex { twice_value: 2 * value }
    }

    /// Total spin `j = N/2` of an `N`-photon two-mode state.
    pub const fn for_photons(photons: u32) -> Self {
        SpinIndex {
            twice_value: photons as i64,
        }
    }

    pub const fn twice(self) -> i64 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice_value % 2 == 0
    }

    /// Integer difference `self − other`, if both labels share parity.
    pub fn integer_difference(self, other: SpinIndex) -> Option<i64> {
        let d = self.twice_value - other.twice_value;
        (d % 2 == 0).then_some(d / 2)
    }

    /// Number of projections `2j + 1` for a total spin label.
    pub fn multiplicity(self) -> usize {
        (self.twice_value + 1) as usize
    }

    /// Position of the projection `m` in a vector ordered `m = −j, …, j`.
    pub fn offset_of(self, m: SpinIndex) -> usize {
        ((m.twice_value + self.twice_value) / 2) as usize
    }

    /// Projection stored at `offset` in a vector ordered `m = −j, …, j`.
    pub fn projection_at(self, offset: usize) -> SpinIndex {
        SpinIndex::from_twice(2 * offset as i64 - self.twice_value)
    }

    /// Iterates `m = −j, −j+1, …, j`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = SpinIndex> + ExactSizeIterator {
        let tj = self.twice_value;
        (0..(tj + 1).max(0) as usize).map(move |k| SpinIndex::from_twice(2 * k as i64 - tj))
    }

    /// Checks that `m` is an admissible projection of the total spin `self`.
    pub fn check_projection(self, m: SpinIndex) -> Result<()> {
        if self.twice_value < 0 {
            return Err(Error::domain(format!("negative total spin 2j = {}", self.twice_value)));
        }
        if m.twice_value.abs() > self.twice_value {
            return Err(Error::domain(format!("projection {m} exceeds j = {self}")));
        }
        if (self.twice_value - m.twice_value) % 2 != 0 {
            return Err(Error::domain(format!(
                "projection {m} has the wrong parity for j = {self}"
            )));
        }
        Ok(())
    }
}

impl std::ops::Neg for SpinIndex {
    type Output = SpinIndex;
    fn neg(self) -> SpinIndex {
        SpinIndex::from_twice(-self.twice_value)
    }
}

impl fmt::Display for SpinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projections_cover_the_multiplet() {
        let j = SpinIndex::from_twice(3);
        let ms: Vec<i64> = j.projections().map(SpinIndex::twice).collect();
        assert_eq!(ms, vec![-3, -1, 1, 3]);
        for (k, m) in j.projections().enumerate() {
            assert_eq!(j.offset_of(m), k);
            assert_eq!(j.projection_at(k), m);
        }
    }

    #[test]
    fn parity_and_range_are_enforced() {
        let j = SpinIndex::from_int(2);
        assert!(j.check_projection(SpinIndex::from_int(-2)).is_ok());
        assert!(j.check_projection(SpinIndex::from_twice(1)).is_err());
        assert!(j.check_projection(SpinIndex::from_int(3)).is_err());
    }

    #[test]
    fn display_uses_halves() {
        assert_eq!(SpinIndex::from_twice(5).to_string(), "5/2");
        assert_eq!(SpinIndex::from_int(-1).to_string(), "-1");
        assert_eq!(SpinIndex::for_photons(40).value(), 20.0);
    }
}
