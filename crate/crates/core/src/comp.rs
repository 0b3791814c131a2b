//! Integer compositions and dominance-based pattern containment.
//!
//! A composition `d` contains a pattern `c` when some subsequence of `d`
//! dominates `c` part-wise; this is containment by dominance, not order
//! isomorphism.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default bound for exhaustive composition iteration (2^25 items at n = 26).
pub const DEFAULT_COMPOSITION_BOUND: usize = 26;

/// A finite sequence of positive integers; the empty composition (weight 0)
/// is a legal value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Part-wise `>=` against a pattern of the same length.
    pub fn dominates(&self, pattern: &Composition) -> Result<bool> {
        if self.len() != pattern.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: pattern.len(),
            });
        }
        Ok(self.parts.iter().zip(&pattern.parts).all(|(&d, &c)| d >= c))
    }

    /// True iff some subsequence of `self` dominates `pattern`. Every
    /// composition contains the empty pattern.
    pub fn contains(&self, pattern: &Composition) -> bool {
        slice_contains_composition(&self.parts, &pattern.parts)
    }

    pub fn avoids(&self, pattern: &Composition) -> bool {
        !self.contains(pattern)
    }

    /// True iff `self` avoids every member of `set`; always false when the
    /// set includes the empty composition.
    pub fn avoids_all(&self, set: &CompositionSet) -> bool {
        set.members().iter().all(|c| !self.contains(c))
    }
}

/// Greedy left-to-right matching: for each pattern part in order, take the
/// earliest unused host part that covers it. Correct because promoting a
/// match to an earlier position only enlarges the remaining suffix.
pub(crate) fn slice_contains_composition(host: &[u32], pattern: &[u32]) -> bool {
    let mut host_iter = host.iter();
    pattern.iter().all(|&c| host_iter.any(|&d| d >= c))
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers; the empty string is the empty
    /// composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition part {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// A deduplicated set of composition patterns, stored sorted by first part
/// ascending with lexicographic tie-breaking (the order the set recurrence
/// peels members in).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CompositionSet {
    members: Vec<Composition>,
}

impl CompositionSet {
    pub fn new(members: impl IntoIterator<Item = Composition>) -> Self {
        let mut members: Vec<Composition> = members.into_iter().collect();
        members.sort();
        members.dedup();
        Self { members }
    }

    pub fn members(&self) -> &[Composition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_empty_composition(&self) -> bool {
        self.members.first().is_some_and(Composition::is_empty)
    }

    pub fn union(&self, other: &CompositionSet) -> CompositionSet {
        CompositionSet::new(self.members.iter().chain(&other.members).cloned())
    }

    /// Drops members that contain another member: a composition avoiding the
    /// smaller pattern necessarily avoids the larger, so counts are
    /// unchanged.
    pub fn prune_redundant(&self) -> CompositionSet {
        let keep: Vec<Composition> = self
            .members
            .iter()
            .filter(|candidate| {
                !self
                    .members
                    .iter()
                    .any(|other| *candidate != other && candidate.contains(other))
            })
            .cloned()
            .collect();
        CompositionSet { members: keep }
    }
}

impl fmt::Display for CompositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.members {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CompositionSet {
    type Err = Error;

    /// Semicolon-separated compositions, e.g. `3,2;6`. Empty segments are
    /// rejected; the set holding the empty composition can only be built
    /// programmatically.
    fn from_str(s: &str) -> Result<Self> {
        let mut members = Vec::new();
        for segment in s.split(';') {
            if segment.trim().is_empty() {
                return Err(Error::Parse(
                    "empty segment in composition set; each member needs at least one part".into(),
                ));
            }
            members.push(segment.parse::<Composition>()?);
        }
        if members.is_empty() {
            return Err(Error::Parse("composition set must be nonempty".into()));
        }
        Ok(Self::new(members))
    }
}

// ---------------------------------------------------------------------------
// Exhaustive generation
// ---------------------------------------------------------------------------

/// Streams all `2^(n-1)` compositions of `n` (the empty composition for
/// n = 0), each exactly once.
pub fn generate_compositions(n: usize, bound: usize) -> Result<Compositions> {
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "composition iteration",
            requested: n,
            bound,
        });
    }
    Ok(Compositions {
        n,
        next_mask: 0,
        end: if n == 0 { 1 } else { 1u64 << (n - 1) },
    })
}

/// Iterator over compositions of `n`, in break-mask order.
pub struct Compositions {
    n: usize,
    next_mask: u64,
    end: u64,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.next_mask >= self.end {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        Some(composition_from_mask(self.n, mask))
    }
}

/// Bits of `mask` mark break points after positions 1..n-1.
fn composition_from_mask(n: usize, mask: u64) -> Composition {
    if n == 0 {
        return Composition::empty();
    }
    let mut parts = Vec::new();
    let mut run = 1u32;
    for bit in 0..n - 1 {
        if mask & (1 << bit) != 0 {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    Composition::from_parts_unchecked(parts)
}

/// Counts compositions of `n` satisfying `pred`, partitioned by first part
/// across workers. No allocation per candidate.
pub(crate) fn count_compositions_where<F>(n: usize, pred: F) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if n == 0 {
        return u64::from(pred(&[]));
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut parts = Vec::with_capacity(n);
            parts.push(first);
            count_compositions_rec(n - first as usize, &pred, &mut parts)
        })
        .sum()
}

fn count_compositions_rec<F>(remaining: usize, pred: &F, parts: &mut Vec<u32>) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if remaining == 0 {
        return u64::from(pred(parts));
    }
    let mut total = 0;
    for next in 1..=remaining as u32 {
        parts.push(next);
        total += count_compositions_rec(remaining - next as usize, pred, parts);
        parts.pop();
    }
    total
}
