//! Chain avoidance: level i of a chain constrains the i-th functional power
//! of a permutation. Provides the generic predicates, tiered brute-force
//! oracles, the composition-avoidance fast path for base class {312,321},
//! the closed forms for base class {312,4321} with their ends-in-1
//! machinery, and the open-conjecture comparison reports.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::comp::{count_compositions_where, CompositionSet};
use crate::counting::{CompCounter, CountMethod, CountResult};
use crate::error::{Error, Result};
use crate::pattern_class::forcing_set;
use crate::perm::{
    count_avoider_leaves, count_permutations_where, slice_contains, PatternSet, Permutation,
    DEFAULT_FULL_SN_BOUND,
};
use crate::sequences::{
    gf_nonnegative_coefficient, tetranacci, tribonacci, GF_231_DEN, GF_321_DEN, GF_321_NUM,
};

/// A chain of pattern constraints: level i (1-based) constrains the i-th
/// power; `None` levels impose nothing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainSpec {
    levels: Vec<Option<PatternSet>>,
}

impl ChainSpec {
    pub fn new(levels: Vec<Option<PatternSet>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput(
                "a chain needs at least one level".into(),
            ));
        }
        if levels.iter().all(Option::is_none) {
            return Err(Error::InvalidInput(
                "a chain needs at least one constrained level".into(),
            ));
        }
        Ok(Self { levels })
    }

    pub fn two_level(level1: PatternSet, level2: PatternSet) -> Self {
        Self {
            levels: vec![Some(level1), Some(level2)],
        }
    }

    pub fn levels(&self) -> &[Option<PatternSet>] {
        &self.levels
    }

    pub fn level1(&self) -> Option<&PatternSet> {
        self.levels[0].as_ref()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, level) in self.levels.iter().enumerate() {
            if idx > 0 {
                write!(f, ":")?;
            }
            match level {
                Some(set) => write!(f, "{set}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, ")")
    }
}

/// The base class {312, 321}.
pub fn base_class_312_321() -> PatternSet {
    "312;321".parse().expect("valid patterns")
}

/// The base class {312, 4321}.
pub fn base_class_312_4321() -> PatternSet {
    "312;4321".parse().expect("valid patterns")
}

pub fn is_312_321(set: &PatternSet) -> bool {
    *set == base_class_312_321()
}

pub fn is_312_4321(set: &PatternSet) -> bool {
    *set == base_class_312_4321()
}

/// True iff every constrained power of `p` avoids its level's patterns.
pub fn avoids_chain(p: &Permutation, spec: &ChainSpec) -> bool {
    chain_ok_values(p.values(), spec, false)
}

/// Slice-level chain check; `skip_level1` is set when candidates satisfy
/// level 1 by construction.
fn chain_ok_values(values: &[u32], spec: &ChainSpec, skip_level1: bool) -> bool {
    let mut current: Vec<u32> = values.to_vec();
    for (idx, level) in spec.levels.iter().enumerate() {
        if idx > 0 {
            // next power: apply the base permutation first
            current = values.iter().map(|&v| current[(v - 1) as usize]).collect();
        }
        if idx == 0 && skip_level1 {
            continue;
        }
        if let Some(patterns) = level {
            if patterns
                .iter()
                .any(|pat| slice_contains(&current, pat.values()))
            {
                return false;
            }
        }
    }
    true
}

/// One-line values of the direct sum of epsilon blocks indexed by `parts`.
fn epsilon_sum_values(parts: &[u32]) -> Vec<u32> {
    let total: u32 = parts.iter().sum();
    let mut values = Vec::with_capacity(total as usize);
    let mut offset = 0u32;
    for &d in parts {
        for v in 2..=d {
            values.push(offset + v);
        }
        values.push(offset + 1);
        offset += d;
    }
    values
}

/// Bounds for the three oracle tiers, slowest to fastest.
#[derive(Clone, Copy, Debug)]
pub struct OracleBounds {
    /// Filtering all of S_n; hard-capped at 10.
    pub full: usize,
    /// Backtracking over the level-1 class.
    pub backtrack: usize,
    /// Composition iteration when level 1 is {312, 321}.
    pub compositions: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self {
            full: 9,
            backtrack: 14,
            compositions: 26,
        }
    }
}

impl OracleBounds {
    /// Replaces every tier bound; the full-S_n tier stays hard-capped.
    pub fn with_override(limit: usize) -> Self {
        Self {
            full: limit.min(DEFAULT_FULL_SN_BOUND),
            backtrack: limit,
            compositions: limit,
        }
    }
}

/// Counts chain avoiders by brute force. With `restrict_to_level1`,
/// candidates come from the level-1 class (composition iteration when that
/// class is {312, 321}, pruned backtracking otherwise); without it, all of
/// S_n is filtered.
pub fn count_chain_bruteforce(
    n: usize,
    spec: &ChainSpec,
    restrict_to_level1: bool,
    bounds: &OracleBounds,
) -> Result<CountResult> {
    let count: u64 = if restrict_to_level1 {
        let level1 = spec.level1().ok_or_else(|| {
            Error::InvalidInput(
                "level-1 restriction requires a nonempty level-1 pattern set".into(),
            )
        })?;
        if is_312_321(level1) {
            if n > bounds.compositions {
                return Err(Error::ResourceLimit {
                    what: "composition iteration",
                    requested: n,
                    bound: bounds.compositions,
                });
            }
            count_compositions_where(n, |parts| {
                chain_ok_values(&epsilon_sum_values(parts), spec, true)
            })
        } else {
            if n > bounds.backtrack {
                return Err(Error::ResourceLimit {
                    what: "class backtracking",
                    requested: n,
                    bound: bounds.backtrack,
                });
            }
            count_avoider_leaves(n, level1, |values| chain_ok_values(values, spec, true))
        }
    } else {
        let cap = bounds.full.min(DEFAULT_FULL_SN_BOUND);
        if n > cap {
            return Err(Error::ResourceLimit {
                what: "full S_n iteration",
                requested: n,
                bound: cap,
            });
        }
        count_permutations_where(n, |values| chain_ok_values(values, spec, false))
    };
    Ok(CountResult {
        n,
        count: BigUint::from(count),
        method: CountMethod::BruteForce,
    })
}

fn unconstrained_312_321_count(n: usize) -> BigUint {
    if n == 0 {
        BigUint::one()
    } else {
        BigUint::one() << (n - 1)
    }
}

/// Chain (312,321:sigma) via the forcing-set reduction. Patterns that are
/// not square-realizable impose no constraint, so those counts are
/// `2^(n-1)`.
pub fn count_chain_312_321(n: usize, sigma: &Permutation) -> Result<CountResult> {
    if sigma.is_empty() {
        return Err(Error::InvalidInput("pattern must be nonempty".into()));
    }
    let count = match forcing_set(sigma) {
        Ok(set) => CompCounter::new().count(n, &set)?,
        Err(Error::NotSquareRealizable { .. }) => unconstrained_312_321_count(n),
        Err(e) => return Err(e),
    };
    Ok(CountResult {
        n,
        count,
        method: CountMethod::Recurrence,
    })
}

/// Chain (312,321:S) for a set of square patterns: compositions must avoid
/// the union of the members' forcing sets. Members outside the realizable
/// class are dropped.
pub fn count_chain_312_321_set(n: usize, sigmas: &PatternSet) -> Result<CountResult> {
    let mut union: Option<CompositionSet> = None;
    for sigma in sigmas.iter() {
        match forcing_set(sigma) {
            Ok(set) => {
                union = Some(match union {
                    Some(existing) => existing.union(&set),
                    None => set,
                });
            }
            Err(Error::NotSquareRealizable { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let count = match union {
        Some(set) => CompCounter::new().count(n, &set)?,
        None => unconstrained_312_321_count(n),
    };
    Ok(CountResult {
        n,
        count,
        method: CountMethod::Recurrence,
    })
}

/// Counts, per length, of chain avoiders whose last value is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndsInOneTable {
    /// counts[k] is the number of length-k avoiders ending in 1; counts[0] = 0.
    counts: Vec<BigUint>,
}

impl EndsInOneTable {
    /// Wraps explicit counts; `counts[0]` must be 0 and `counts[1]` (when
    /// present) at most 1.
    pub fn from_counts(counts: Vec<BigUint>) -> Result<Self> {
        if counts.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidInput(
                "no empty permutation ends in 1; counts[0] must be 0".into(),
            ));
        }
        if counts.get(1).is_some_and(|c| *c > BigUint::one()) {
            return Err(Error::InvalidInput(
                "at most one permutation of length 1 ends in 1".into(),
            ));
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, len: usize) -> Option<&BigUint> {
        self.counts.get(len)
    }

    pub fn max_len(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

/// Number of length-n chain avoiders with last value 1.
pub fn ends_in_one_count(n: usize, spec: &ChainSpec, bounds: &OracleBounds) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let level1 = spec.level1().ok_or_else(|| {
        Error::InvalidInput("ends-in-1 counting requires a level-1 pattern set".into())
    })?;
    if n > bounds.backtrack {
        return Err(Error::ResourceLimit {
            what: "class backtracking",
            requested: n,
            bound: bounds.backtrack,
        });
    }
    let count = count_avoider_leaves(n, level1, |values| {
        *values.last().expect("n >= 1") == 1 && chain_ok_values(values, spec, true)
    });
    Ok(BigUint::from(count))
}

/// Ends-in-1 counts for every length up to `n_max`.
pub fn ends_in_one_table(
    n_max: usize,
    spec: &ChainSpec,
    bounds: &OracleBounds,
) -> Result<EndsInOneTable> {
    let mut counts = vec![BigUint::zero()];
    for n in 1..=n_max {
        counts.push(ends_in_one_count(n, spec, bounds)?);
    }
    Ok(EndsInOneTable { counts })
}

/// `a_n = sum_{i=1..n} b_i * tail_{n-i}` with `a_0 = 1`: splitting an
/// avoider at the block ending in 1 turns class counts into a convolution
/// of ends-in-1 counts with tail counts.
pub fn convolve_ends_in_one(
    ends: &EndsInOneTable,
    tail: &[BigUint],
    n_max: usize,
) -> Result<Vec<BigUint>> {
    if ends.max_len() < n_max {
        return Err(Error::InvalidInput(format!(
            "ends-in-1 table covers lengths up to {}, need {}",
            ends.max_len(),
            n_max
        )));
    }
    if tail.len() < n_max.max(1) {
        return Err(Error::InvalidInput(format!(
            "tail counts cover 0..{}, need 0..{}",
            tail.len().saturating_sub(1),
            n_max.saturating_sub(1)
        )));
    }
    if !tail[0].is_one() {
        return Err(Error::InvalidInput(
            "tail count at length 0 must be 1".into(),
        ));
    }
    let mut out = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for i in 1..=n {
            acc += &ends.counts[i] * &tail[n - i];
        }
        out.push(acc);
    }
    Ok(out)
}

/// Self-convolution: the tail counts are the output sequence itself.
pub fn self_convolve_ends_in_one(ends: &EndsInOneTable, n_max: usize) -> Result<Vec<BigUint>> {
    if ends.max_len() < n_max {
        return Err(Error::InvalidInput(format!(
            "ends-in-1 table covers lengths up to {}, need {}",
            ends.max_len(),
            n_max
        )));
    }
    let mut out = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for i in 1..=n {
            acc += &ends.counts[i] * &out[n - i];
        }
        out.push(acc);
    }
    Ok(out)
}

/// Number of involutions in S_m(312, 4321): direct sums of decreasing blocks
/// of size at most 3, counted by `T_{m+2}`.
pub fn involution_tail_count(m: usize) -> BigUint {
    tribonacci(m as i64 + 2)
}

/// Chain (312,4321:sigma) for sigma of length 3, via the per-pattern closed
/// form, recurrence, or generating function.
pub fn count_chain_312_4321(n: usize, sigma: &Permutation) -> Result<CountResult> {
    if sigma.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "chain (312,4321:sigma) closed forms cover sigma of length 3, got length {}",
            sigma.len()
        )));
    }
    let count = match sigma.values() {
        [1, 2, 3] => prefix_123(n),
        [1, 3, 2] | [2, 1, 3] => {
            if n == 0 {
                BigUint::one()
            } else {
                tribonacci(n as i64 + 2) + tribonacci(n as i64 + 1) - 1u32
            }
        }
        [2, 3, 1] => gf_nonnegative_coefficient(&[1], &GF_231_DEN, n),
        [3, 1, 2] => tetranacci(n as i64 + 3),
        [3, 2, 1] => gf_nonnegative_coefficient(&GF_321_NUM, &GF_321_DEN, n),
        _ => unreachable!("all patterns of length 3 are covered"),
    };
    Ok(CountResult {
        n,
        count,
        method: CountMethod::Recurrence,
    })
}

/// Counts for (312,4321:123) vanish from n = 7 on; the finite prefix is
/// computed once by the restricted brute-force oracle, never hand-written.
fn prefix_123(n: usize) -> BigUint {
    static PREFIX: OnceLock<Vec<BigUint>> = OnceLock::new();
    let prefix = PREFIX.get_or_init(|| {
        let spec = ChainSpec::two_level(
            base_class_312_4321(),
            PatternSet::single("123".parse().expect("valid")).expect("nonempty"),
        );
        (0..=6)
            .map(|m| {
                count_chain_bruteforce(m, &spec, true, &OracleBounds::default())
                    .expect("within bounds")
                    .count
            })
            .collect()
    });
    prefix.get(n).cloned().unwrap_or_else(BigUint::zero)
}

/// Comparison record for the cube conjecture: permutations avoiding
/// {312,321} whose cube avoids 2143, against compositions with at most one
/// part outside {1,3}. Reports both counts without asserting either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComparison {
    pub n: usize,
    pub left: BigUint,
    pub right: BigUint,
    pub equal: bool,
}

pub fn conjecture_cube_2143(n: usize, bounds: &OracleBounds) -> Result<CubeComparison> {
    if n > bounds.compositions {
        return Err(Error::ResourceLimit {
            what: "composition iteration",
            requested: n,
            bound: bounds.compositions,
        });
    }
    let spec = cube_chain_spec();
    let left = count_compositions_where(n, |parts| {
        chain_ok_values(&epsilon_sum_values(parts), &spec, true)
    });
    let right = count_compositions_where(n, |parts| {
        parts.iter().filter(|&&p| p != 1 && p != 3).count() <= 1
    });
    Ok(CubeComparison {
        n,
        left: BigUint::from(left),
        right: BigUint::from(right),
        equal: left == right,
    })
}

/// The three-level chain constraining the cube: ({312,321} : - : 2143).
pub fn cube_chain_spec() -> ChainSpec {
    ChainSpec::new(vec![
        Some(base_class_312_321()),
        None,
        Some(PatternSet::single("2143".parse().expect("valid")).expect("nonempty")),
    ])
    .expect("constrained")
}

/// One row of a recurrence comparison: the brute-forced value and, where the
/// claimed recurrence applies, its prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub n: usize,
    pub value: BigUint,
    pub predicted: Option<BigUint>,
    pub matches: Option<bool>,
}

/// Brute-forces (312,54321:132) counts and reports, for each n >= 6, whether
/// `a_n = a_{n-1} + a_{n-2} + a_{n-3} + a_{n-4} + n - 1` holds. No initial
/// values are assumed.
pub fn conjecture_54321_132(n_max: usize, bounds: &OracleBounds) -> Result<Vec<RecurrenceCheck>> {
    let spec = ChainSpec::two_level(
        "312;54321".parse().expect("valid patterns"),
        PatternSet::single("132".parse().expect("valid")).expect("nonempty"),
    );
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        values.push(count_chain_bruteforce(n, &spec, true, bounds)?.count);
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let predicted = (n >= 6).then(|| {
            &values[n - 1]
                + &values[n - 2]
                + &values[n - 3]
                + &values[n - 4]
                + BigUint::from(n as u64 - 1)
        });
        let matches = predicted.as_ref().map(|p| *p == values[n]);
        rows.push(RecurrenceCheck {
            n,
            value: values[n].clone(),
            predicted,
            matches,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn spec_312_321(sigma: &str) -> ChainSpec {
        ChainSpec::two_level(base_class_312_321(), PatternSet::single(p(sigma)).unwrap())
    }

    fn spec_312_4321(sigma: &str) -> ChainSpec {
        ChainSpec::two_level(base_class_312_4321(), PatternSet::single(p(sigma)).unwrap())
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn chain_predicate_examples() {
        // 231 avoids the base class but its square is 312
        assert_eq!(p("231").power(2), p("312"));
        assert!(!avoids_chain(&p("231"), &spec_312_321("312")));
        // 2341 squares to 3412, which avoids 2341
        assert!(avoids_chain(&p("2341"), &spec_312_321("2341")));
        // identity powers are identity
        assert!(avoids_chain(&Permutation::identity(4), &spec_312_321("21")));
    }

    #[test]
    fn chain_spec_validation() {
        assert!(ChainSpec::new(vec![]).is_err());
        assert!(ChainSpec::new(vec![None, None]).is_err());
        let cube = cube_chain_spec();
        assert_eq!(cube.depth(), 3);
        assert_eq!(cube.to_string(), "(3,1,2;3,2,1:-:2,1,4,3)");
    }

    #[test]
    fn bruteforce_small_values() {
        let bounds = OracleBounds::default();
        assert_eq!(
            count_chain_bruteforce(3, &spec_312_321("231"), false, &bounds)
                .unwrap()
                .count,
            big(4)
        );
        assert_eq!(
            count_chain_bruteforce(3, &spec_312_321("312"), false, &bounds)
                .unwrap()
                .count,
            big(3)
        );
        assert_eq!(
            count_chain_bruteforce(5, &spec_312_321("123"), false, &bounds)
                .unwrap()
                .count,
            big(0)
        );
        // restricted tiers agree
        for restrict in [true, false] {
            assert_eq!(
                count_chain_bruteforce(6, &spec_312_321("231"), restrict, &bounds)
                    .unwrap()
                    .count,
                tribonacci(8)
            );
        }
    }

    #[test]
    fn bruteforce_bounds() {
        let bounds = OracleBounds::default();
        assert!(matches!(
            count_chain_bruteforce(11, &spec_312_321("231"), false, &bounds),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            count_chain_bruteforce(27, &spec_312_321("231"), true, &bounds),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            count_chain_bruteforce(15, &spec_312_4321("231"), true, &bounds),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn fast_path_312_321() {
        // 321 is not square-realizable, so it imposes nothing
        assert_eq!(count_chain_312_321(8, &p("321")).unwrap().count, big(128));
        assert_eq!(count_chain_312_321(0, &p("321")).unwrap().count, big(1));
        // tribonacci column
        assert_eq!(
            count_chain_312_321(10, &p("231")).unwrap().count,
            tribonacci(12)
        );
        // increasing pattern of length 4 dies at n = 6
        assert_eq!(count_chain_312_321(6, &p("1234")).unwrap().count, big(0));
    }

    #[test]
    fn fast_path_agrees_with_bruteforce() {
        let bounds = OracleBounds::default();
        for sigma in ["231", "2143", "1324", "12345"] {
            for n in 0..=10 {
                assert_eq!(
                    count_chain_312_321(n, &p(sigma)).unwrap().count,
                    count_chain_bruteforce(n, &spec_312_321(sigma), true, &bounds)
                        .unwrap()
                        .count,
                    "sigma = {sigma}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn fast_path_sets() {
        let set = PatternSet::new([p("321")]).unwrap();
        assert_eq!(count_chain_312_321_set(9, &set).unwrap().count, big(256));

        let pair = PatternSet::new([p("132"), p("213")]).unwrap();
        let via_union = count_chain_312_321_set(7, &pair).unwrap().count;
        let union_sets: CompositionSet = "1,3;3,1".parse().unwrap();
        assert_eq!(via_union, CompCounter::new().count(7, &union_sets).unwrap());
        // and against the restricted oracle
        let spec = ChainSpec::two_level(base_class_312_321(), pair);
        assert_eq!(
            via_union,
            count_chain_bruteforce(7, &spec, true, &OracleBounds::default())
                .unwrap()
                .count
        );
    }

    #[test]
    fn ends_in_one_prefixes() {
        let bounds = OracleBounds::default();
        let table_312 = ends_in_one_table(6, &spec_312_4321("312"), &bounds).unwrap();
        assert_eq!(table_312.counts()[1..], [1, 1, 1, 1, 0, 0].map(big)[..]);
        let table_321 = ends_in_one_table(6, &spec_312_4321("321"), &bounds).unwrap();
        assert_eq!(table_321.counts()[1..], [1, 1, 2, 2, 1, 1].map(big)[..]);
        let table_231 = ends_in_one_table(6, &spec_312_4321("231"), &bounds).unwrap();
        assert_eq!(table_231.counts()[1..], [1, 1, 2, 3, 2, 0].map(big)[..]);
        let table_132 = ends_in_one_table(6, &spec_312_4321("132"), &bounds).unwrap();
        assert_eq!(table_132.counts()[1..], [1, 1, 2, 2, 2, 2].map(big)[..]);
    }

    #[test]
    fn table2_closed_forms() {
        assert_eq!(count_chain_312_4321(4, &p("312")).unwrap().count, big(8));
        assert_eq!(count_chain_312_4321(4, &p("231")).unwrap().count, big(12));
        assert_eq!(count_chain_312_4321(3, &p("132")).unwrap().count, big(5));
        assert_eq!(count_chain_312_4321(3, &p("213")).unwrap().count, big(5));
        assert_eq!(count_chain_312_4321(7, &p("123")).unwrap().count, big(0));
        assert_eq!(count_chain_312_4321(4, &p("321")).unwrap().count, big(11));
        assert!(count_chain_312_4321(3, &p("1234")).is_err());
    }

    #[test]
    fn prefix_123_matches_oracle() {
        let bounds = OracleBounds::default();
        for n in 0..=8 {
            assert_eq!(
                count_chain_312_4321(n, &p("123")).unwrap().count,
                count_chain_bruteforce(n, &spec_312_4321("123"), true, &bounds)
                    .unwrap()
                    .count,
                "n = {n}"
            );
        }
    }

    #[test]
    fn convolution_examples() {
        let b231 =
            EndsInOneTable::from_counts([0u64, 1, 1, 2, 3, 2, 0, 0, 0].map(big).to_vec()).unwrap();
        let a = self_convolve_ends_in_one(&b231, 4).unwrap();
        assert_eq!(a[4], big(12));

        let b321 =
            EndsInOneTable::from_counts([0u64, 1, 1, 2, 2, 1, 1, 1, 1].map(big).to_vec()).unwrap();
        let a = self_convolve_ends_in_one(&b321, 4).unwrap();
        assert_eq!(a[4], big(11));

        let single = EndsInOneTable::from_counts([0u64, 1, 0, 0, 0, 0].map(big).to_vec()).unwrap();
        let ones = vec![big(1); 6];
        let a = convolve_ends_in_one(&single, &ones, 5).unwrap();
        assert!(a[1..].iter().all(|v| *v == big(1)));
    }

    #[test]
    fn convolution_validation() {
        let table = EndsInOneTable::from_counts([0u64, 1].map(big).to_vec()).unwrap();
        assert!(convolve_ends_in_one(&table, &[big(1)], 4).is_err());
        assert!(self_convolve_ends_in_one(&table, 4).is_err());
        let bad_tail = vec![big(2), big(1)];
        assert!(convolve_ends_in_one(&table, &bad_tail, 1).is_err());
        assert!(EndsInOneTable::from_counts(vec![big(1)]).is_err());
        assert!(EndsInOneTable::from_counts([0u64, 2].map(big).to_vec()).is_err());
    }

    #[test]
    fn involution_tails() {
        assert_eq!(involution_tail_count(0), big(1));
        assert_eq!(involution_tail_count(3), big(4));
        assert_eq!(involution_tail_count(4), big(7));
    }

    #[test]
    fn cube_comparison_small() {
        let bounds = OracleBounds::default();
        let row1 = conjecture_cube_2143(1, &bounds).unwrap();
        assert_eq!((row1.left.clone(), row1.right.clone()), (big(1), big(1)));
        assert!(row1.equal);
        let row2 = conjecture_cube_2143(2, &bounds).unwrap();
        assert_eq!((row2.left.clone(), row2.right.clone()), (big(2), big(2)));
        assert!(row2.equal);
    }

    #[test]
    fn recurrence_report_shape() {
        let rows = conjecture_54321_132(7, &OracleBounds::default()).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0].n, 1);
        assert_eq!(rows[0].value, big(1));
        assert!(rows[0].predicted.is_none());
        let last = &rows[6];
        assert_eq!(last.n, 7);
        assert!(last.predicted.is_some());
        assert!(last.matches.is_some());
    }
}
