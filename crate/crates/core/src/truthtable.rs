//! Canonical bitmask representation of Boolean functions of up to 6 inputs.
//!
//! A function of arity n is stored as a `u64` whose bit at position p
//! (0 <= p < 2^n) is the output on the assignment where variable i takes the
//! value of bit i of p. Variable 0 is the least significant bit of p. Two
//! tables are equal iff arity and mask are equal; this single convention is
//! shared by every module and every serialized artifact.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ARITY: u8 = 6;

/// Bit p of `VAR_PATTERNS[i]` is set iff bit i of p is set, for p in 0..64.
const VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Mask with exactly the 2^arity valid bit positions set.
pub fn full_mask(arity: u8) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << arity)) - 1
    }
}

pub(crate) fn check_arity(arity: usize) -> Result<u8> {
    if arity == 0 || arity > MAX_ARITY as usize {
        Err(Error::ArityOutOfRange { arity })
    } else {
        Ok(arity as u8)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    mask: u64,
}

impl TruthTable {
    pub fn new(arity: usize, mask: u64) -> Result<Self> {
        let arity = check_arity(arity)?;
        if mask & !full_mask(arity) != 0 {
            return Err(Error::MaskOverflow { arity, mask });
        }
        Ok(TruthTable { arity, mask })
    }

    /// Caller guarantees arity is in range and mask fits; used on hot paths
    /// where both were established once up front.
    pub(crate) fn new_unchecked(arity: u8, mask: u64) -> Self {
        debug_assert!(arity >= 1 && arity <= MAX_ARITY);
        debug_assert_eq!(mask & !full_mask(arity), 0);
        TruthTable { arity, mask }
    }

    pub fn constant_false(arity: usize) -> Result<Self> {
        Ok(TruthTable {
            arity: check_arity(arity)?,
            mask: 0,
        })
    }

    pub fn constant_true(arity: usize) -> Result<Self> {
        let arity = check_arity(arity)?;
        Ok(TruthTable {
            arity,
            mask: full_mask(arity),
        })
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn num_assignments(&self) -> u32 {
        1u32 << self.arity
    }

    /// Output on the assignment encoded by index p (bit i of p = variable i).
    pub fn evaluate_index(&self, p: u32) -> bool {
        debug_assert!(p < self.num_assignments());
        (self.mask >> p) & 1 == 1
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.arity as usize {
            return Err(Error::AssignmentLength {
                expected: self.arity as usize,
                got: assignment.len(),
            });
        }
        let p = assignment
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
        Ok(self.evaluate_index(p))
    }

    /// True iff flipping any input from 0 to 1 never drops the output, i.e.
    /// output(p) <= output(q) whenever p's set bits are a subset of q's.
    /// Checked one variable at a time with whole-mask bit arithmetic.
    pub fn is_monotone(&self) -> bool {
        for i in 0..self.arity {
            let v = VAR_PATTERNS[i as usize];
            let shift = 1u32 << i;
            // Positions with x_i = 0 where the output is 1 but turning x_i on
            // gives 0.
            if self.mask & !v & !(self.mask >> shift) != 0 {
                return false;
            }
        }
        true
    }

    /// Lowercase hex form used in CSV/JSON artifacts, e.g. "0xe0".
    pub fn hex(&self) -> String {
        format!("{:#x}", self.mask)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.hex(), self.arity)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, mask={})", self.arity, self.hex())
    }
}

/// Deduplicating set of truth-table masks sharing one arity.
///
/// Producers running in parallel each fill a private set and [`merge`] them;
/// union is associative and commutative, so results do not depend on the
/// partitioning.
///
/// [`merge`]: FunctionSet::merge
#[derive(Clone, Debug)]
pub struct FunctionSet {
    arity: u8,
    members: HashSet<u64>,
}

impl FunctionSet {
    pub fn new(arity: usize) -> Result<Self> {
        Ok(FunctionSet {
            arity: check_arity(arity)?,
            members: HashSet::new(),
        })
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inserts a table, returning whether it was newly added.
    pub fn insert(&mut self, tt: TruthTable) -> Result<bool> {
        if tt.arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tt.arity,
            });
        }
        Ok(self.members.insert(tt.mask))
    }

    /// Hot-path insert for masks already known to fit the arity.
    pub(crate) fn insert_mask(&mut self, mask: u64) -> bool {
        debug_assert_eq!(mask & !full_mask(self.arity), 0);
        self.members.insert(mask)
    }

    pub fn contains(&self, tt: &TruthTable) -> bool {
        tt.arity == self.arity && self.members.contains(&tt.mask)
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members.contains(&mask)
    }

    /// Set union with another set of the same arity.
    pub fn merge(&mut self, other: FunctionSet) -> Result<()> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        if self.members.is_empty() {
            self.members = other.members;
        } else {
            self.members.extend(other.members);
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &FunctionSet) -> bool {
        self.arity == other.arity && self.members.is_subset(&other.members)
    }

    /// Number of this set's members absent from `other`.
    pub fn count_missing_from(&self, other: &FunctionSet) -> usize {
        self.members
            .iter()
            .filter(|m| !other.members.contains(m))
            .count()
    }

    /// Members absent from `other`, sorted for stable reporting.
    pub fn missing_from(&self, other: &FunctionSet) -> Vec<TruthTable> {
        let mut out: Vec<u64> = self
            .members
            .iter()
            .copied()
            .filter(|m| !other.members.contains(m))
            .collect();
        out.sort_unstable();
        out.into_iter()
            .map(|m| TruthTable::new_unchecked(self.arity, m))
            .collect()
    }

    pub fn sorted_masks(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.members.iter().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = TruthTable> + '_ {
        let arity = self.arity;
        self.members
            .iter()
            .map(move |&m| TruthTable::new_unchecked(arity, m))
    }
}

impl PartialEq for FunctionSet {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.members == other.members
    }
}

impl Eq for FunctionSet {}
