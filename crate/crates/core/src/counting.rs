//! Exact counts of compositions avoiding a pattern set.
//!
//! The fast path peels the leading part: a composition with first part `i`
//! avoids the set iff its tail avoids the set with the first `j` members
//! hatted, where `j` is the number of members whose first part is at most
//! `i`. Tables are memoized per canonical (optionally pruned) set; an
//! exhaustive generator provides the independent oracle.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::comp::{
    count_compositions_where, slice_contains_composition, Composition, CompositionSet,
};
use crate::error::{Error, Result};

/// How a count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Recurrence,
    BruteForce,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountMethod::Recurrence => write!(f, "recurrence"),
            CountMethod::BruteForce => write!(f, "brute-force"),
        }
    }
}

/// An exact count at a single index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub n: usize,
    pub count: BigUint,
    pub method: CountMethod,
}

/// Drops the first part; the hat of a singleton is the empty composition.
pub fn hat(c: &Composition) -> Result<Composition> {
    if c.is_empty() {
        return Err(Error::InvalidInput(
            "hat of the empty composition is undefined".into(),
        ));
    }
    Ok(Composition::new(c.parts()[1..].to_vec()).expect("parts stay positive"))
}

/// Replaces the first `j` members (in canonical order) by their hats and
/// re-canonicalizes.
pub fn hat_set(set: &CompositionSet, j: usize) -> Result<CompositionSet> {
    if j > set.len() {
        return Err(Error::InvalidInput(format!(
            "hat index {j} out of range for a set of {} members",
            set.len()
        )));
    }
    let mut members = Vec::with_capacity(set.len());
    for (idx, member) in set.members().iter().enumerate() {
        if idx < j {
            members.push(hat(member)?);
        } else {
            members.push(member.clone());
        }
    }
    Ok(CompositionSet::new(members))
}

/// Memoizing counter for `b_n(C)`, the number of compositions of `n`
/// avoiding every member of `C`.
pub struct CompCounter {
    tables: HashMap<CompositionSet, Vec<BigUint>>,
    prune: bool,
    max_cached_sets: Option<usize>,
}

impl Default for CompCounter {
    fn default() -> Self {
        Self::new()
    }
}

struct Transition {
    lo: u32,
    hi: u32,
    child: CompositionSet,
}

impl CompCounter {
    /// A counter with redundancy pruning enabled (the default for counting
    /// paths).
    pub fn new() -> Self {
        Self {
            tables: HashMap::new(),
            prune: true,
            max_cached_sets: None,
        }
    }

    pub fn with_pruning(prune: bool) -> Self {
        Self {
            tables: HashMap::new(),
            prune,
            max_cached_sets: None,
        }
    }

    /// Caps the number of cached set tables; the cache is flushed when the
    /// cap is exceeded.
    pub fn with_capacity_limit(mut self, max_cached_sets: usize) -> Self {
        self.max_cached_sets = Some(max_cached_sets);
        self
    }

    /// `b_n(set)`. The empty set of patterns is rejected; callers wanting
    /// the unconstrained count use `2^(n-1)` directly.
    pub fn count(&mut self, n: usize, set: &CompositionSet) -> Result<BigUint> {
        if set.is_empty() {
            return Err(Error::EmptyCompositionSet);
        }
        if let Some(cap) = self.max_cached_sets {
            if self.tables.len() > cap {
                self.tables.clear();
            }
        }
        let key = self.normalize(set);
        self.ensure(n, &key);
        Ok(self.tables[&key][n].clone())
    }

    fn normalize(&self, set: &CompositionSet) -> CompositionSet {
        if self.prune {
            set.prune_redundant()
        } else {
            set.clone()
        }
    }

    /// Ranges of the leading part grouped by how many members it covers.
    fn transitions(&self, set: &CompositionSet) -> Vec<Transition> {
        let members = set.members();
        let first_parts: Vec<u32> = members.iter().map(|c| c.parts()[0]).collect();
        let mut transitions = Vec::new();
        if first_parts[0] > 1 {
            transitions.push(Transition {
                lo: 1,
                hi: first_parts[0] - 1,
                child: set.clone(),
            });
        }
        let mut idx = 0;
        while idx < members.len() {
            let value = first_parts[idx];
            let mut covered = idx + 1;
            while covered < members.len() && first_parts[covered] == value {
                covered += 1;
            }
            let hi = if covered < members.len() {
                first_parts[covered] - 1
            } else {
                u32::MAX
            };
            let child = self.normalize(&hat_set(set, covered).expect("covered <= len"));
            transitions.push(Transition {
                lo: value,
                hi,
                child,
            });
            idx = covered;
        }
        transitions
    }

    fn ensure(&mut self, n: usize, key: &CompositionSet) {
        // Reachable sets: hatting strictly shrinks total part count, so the
        // closure is finite and children can be filled in ascending order.
        let mut infos: HashMap<CompositionSet, Vec<Transition>> = HashMap::new();
        let mut stack = vec![key.clone()];
        while let Some(set) = stack.pop() {
            if infos.contains_key(&set) || set.contains_empty_composition() {
                continue;
            }
            let transitions = self.transitions(&set);
            for t in &transitions {
                if t.child != set && !infos.contains_key(&t.child) {
                    stack.push(t.child.clone());
                }
            }
            infos.insert(set, transitions);
        }

        let mut order: Vec<CompositionSet> = infos.keys().cloned().collect();
        order.sort_by_key(total_parts);

        for set in order {
            let transitions = &infos[&set];
            let mut table = self.tables.remove(&set).unwrap_or_default();
            if table.is_empty() {
                table.push(BigUint::one());
            }
            for m in table.len()..=n {
                let mut acc = BigUint::zero();
                for t in transitions {
                    let hi = (t.hi as usize).min(m);
                    for i in (t.lo as usize)..=hi {
                        if t.child == set {
                            acc += &table[m - i];
                        } else if let Some(child_table) = self.tables.get(&t.child) {
                            acc += &child_table[m - i];
                        }
                        // zero sets have no table and contribute nothing
                    }
                }
                table.push(acc);
            }
            self.tables.insert(set, table);
        }

        // A set holding the empty composition counts zero everywhere.
        if key.contains_empty_composition() {
            let table = self.tables.entry(key.clone()).or_default();
            while table.len() <= n {
                table.push(BigUint::zero());
            }
        }
    }
}

fn total_parts(set: &CompositionSet) -> usize {
    set.members().iter().map(Composition::len).sum()
}

/// `b_n(set)` by the recurrence, with a fresh memo.
pub fn count_avoiders(n: usize, set: &CompositionSet) -> Result<CountResult> {
    let mut counter = CompCounter::new();
    Ok(CountResult {
        n,
        count: counter.count(n, set)?,
        method: CountMethod::Recurrence,
    })
}

/// `b_n(set)` by filtering every composition of `n`; the independent oracle
/// for the recurrence.
pub fn count_avoiders_bruteforce(
    n: usize,
    set: &CompositionSet,
    bound: usize,
) -> Result<CountResult> {
    if set.is_empty() {
        return Err(Error::EmptyCompositionSet);
    }
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "composition iteration",
            requested: n,
            bound,
        });
    }
    let members: Vec<&[u32]> = set.members().iter().map(Composition::parts).collect();
    let count = count_compositions_where(n, |parts| {
        members
            .iter()
            .all(|pattern| !slice_contains_composition(parts, pattern))
    });
    Ok(CountResult {
        n,
        count: BigUint::from(count),
        method: CountMethod::BruteForce,
    })
}
