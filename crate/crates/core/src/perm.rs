//! Permutations in one-line notation: pattern containment, functional powers,
//! direct sums, block decomposition, symmetry maps, and pruned backtracking
//! generation of avoider classes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::comp::Composition;
use crate::error::{Error, Result};

/// Default bound for backtracking generation over a restricted class.
pub const DEFAULT_GENERATOR_BOUND: usize = 16;
/// Default bound for walking all of S_n without restriction.
pub const DEFAULT_FULL_SN_BOUND: usize = 10;

/// A permutation of `{1..n}` in one-line notation. Length 0 is the empty
/// permutation.
///
/// Values are immutable after construction; all operations are pure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a bijection on `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range for length {n}"
                )));
            }
            if std::mem::replace(&mut seen[(v - 1) as usize], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeats")));
            }
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    /// The block `1`, `21`, or `23..d1` used in the composition bijection.
    pub fn epsilon(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput(
                "epsilon block size must be positive".into(),
            ));
        }
        let mut values: Vec<u32> = (2..=d as u32).collect();
        values.push(1);
        Ok(Self { values })
    }

    /// The decreasing permutation `d (d-1) .. 1`.
    pub fn delta(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput(
                "delta block size must be positive".into(),
            ));
        }
        Ok(Self {
            values: (1..=d as u32).rev().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: u32) -> u32 {
        self.values[(point - 1) as usize]
    }

    /// Functional composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composition requires equal lengths"
        );
        Self {
            values: other.values.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    /// `self` applied `k` times; `k = 0` yields the identity.
    pub fn power(&self, k: u32) -> Self {
        let mut result = Self::identity(self.len());
        for _ in 0..k {
            result = result.compose(self);
        }
        result
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[(v - 1) as usize] = i as u32 + 1;
        }
        Self { values }
    }

    pub fn reverse(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u32;
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Reverse-complement-inverse symmetry; an involution on each S_n that
    /// preserves pattern containment.
    pub fn rci(&self) -> Self {
        self.reverse().complement().inverse()
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        slice_contains(&self.values, &pattern.values)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|p| !self.contains(p))
    }

    /// `⊕` over blocks: each block's values shifted above the preceding ones.
    pub fn direct_sum(parts: &[Permutation]) -> Self {
        let total: usize = parts.iter().map(Permutation::len).sum();
        let mut values = Vec::with_capacity(total);
        let mut offset = 0u32;
        for part in parts {
            values.extend(part.values.iter().map(|&v| v + offset));
            offset += part.len() as u32;
        }
        Self { values }
    }

    /// The unique maximal decomposition into sum-indecomposable blocks.
    pub fn sum_decompose(&self) -> Vec<Permutation> {
        let mut blocks = Vec::new();
        let mut start = 0usize;
        let mut max = 0u32;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                let offset = start as u32;
                let block = self.values[start..=i].iter().map(|&v| v - offset).collect();
                blocks.push(Self { values: block });
                start = i + 1;
            }
        }
        blocks
    }

    /// The `⊕ epsilon(d_i)` permutation encoded by a composition.
    pub fn from_composition(comp: &Composition) -> Self {
        let parts: Vec<Permutation> = comp
            .parts()
            .iter()
            .map(|&d| Self::epsilon(d as usize).expect("composition parts are positive"))
            .collect();
        Self::direct_sum(&parts)
    }

    /// Inverts [`Permutation::from_composition`]. Fails for permutations that
    /// contain 312 or 321, which lie outside the bijection's domain.
    pub fn to_composition(&self) -> Result<Composition> {
        if scan_312(&self.values) || scan_321(&self.values) {
            return Err(Error::InvalidInput(format!(
                "{self} contains 312 or 321 and is not a direct sum of epsilon blocks"
            )));
        }
        let parts: Vec<u32> = self
            .sum_decompose()
            .iter()
            .map(|block| {
                debug_assert_eq!(block, &Self::epsilon(block.len()).unwrap());
                block.len() as u32
            })
            .collect();
        Ok(Composition::new(parts).expect("block lengths are positive"))
    }

    /// Compact form used in running text: digits, with values above 9 in
    /// parentheses, e.g. `2341567(10)89(11)(12)`.
    pub fn compact(&self) -> String {
        self.values
            .iter()
            .map(|&v| {
                if v <= 9 {
                    v.to_string()
                } else {
                    format!("({v})")
                }
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.compact())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts either compact tokens (`digit` or `(integer)`) or the
    /// comma-separated form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let values = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad permutation token {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_compact(s)?
        };
        Self::new(values)
    }
}

fn parse_compact(s: &str) -> Result<Vec<u32>> {
    let mut values = Vec::new();
    let mut chars = s.char_indices();
    while let Some((pos, c)) = chars.next() {
        match c {
            '1'..='9' => values.push(c.to_digit(10).unwrap()),
            '(' => {
                let rest = &s[pos + 1..];
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed parenthesis in {s:?}")))?;
                let tok = &rest[..close];
                let v = tok
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad permutation token {tok:?}")))?;
                values.push(v);
                for _ in 0..=close {
                    chars.next();
                }
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(values)
}

/// A nonempty set of nonempty patterns, stored sorted by length then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::InvalidInput("pattern set must be nonempty".into()));
        }
        if patterns.iter().any(Permutation::is_empty) {
            return Err(Error::InvalidInput(
                "the empty permutation cannot be used as a pattern".into(),
            ));
        }
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.values.cmp(&b.values)));
        patterns.dedup();
        Ok(Self { patterns })
    }

    pub fn single(pattern: Permutation) -> Result<Self> {
        Self::new([pattern])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.patterns {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .split(';')
            .map(|tok| tok.parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(patterns)
    }
}

// ---------------------------------------------------------------------------
// Containment matching
// ---------------------------------------------------------------------------

/// Containment over raw value slices (any sequence of distinct values).
pub(crate) fn slice_contains(host: &[u32], pat: &[u32]) -> bool {
    if pat.is_empty() {
        return true;
    }
    if pat.len() > host.len() {
        return false;
    }
    match pat {
        [_] => true,
        [a, b] => {
            if a < b {
                has_ascent(host)
            } else {
                has_descent(host)
            }
        }
        [3, 1, 2] => scan_312(host),
        [3, 2, 1] => scan_321(host),
        _ => contains_generic(host, pat, false),
    }
}

/// Containment check for a freshly extended prefix: assumes `host` without
/// its last element already avoids `pat`, so any occurrence must use the last
/// element.
pub(crate) fn slice_contains_extended(host: &[u32], pat: &[u32]) -> bool {
    if pat.is_empty() {
        return true;
    }
    if pat.len() > host.len() {
        return false;
    }
    let last = *host.last().unwrap();
    match pat {
        [_] => true,
        [a, b] => {
            let earlier = &host[..host.len() - 1];
            if a < b {
                earlier.iter().any(|&v| v < last)
            } else {
                earlier.iter().any(|&v| v > last)
            }
        }
        // Any hit found by the full scan must end at the new element.
        [3, 1, 2] => scan_312(host),
        [3, 2, 1] => scan_321(host),
        _ => contains_generic(host, pat, true),
    }
}

// any ascent (descent) implies an adjacent one
fn has_ascent(seq: &[u32]) -> bool {
    seq.windows(2).any(|w| w[0] < w[1])
}

fn has_descent(seq: &[u32]) -> bool {
    seq.windows(2).any(|w| w[0] > w[1])
}

/// Linear scan for a decreasing subsequence of length 3: track the largest
/// value that has a larger element before it; any later smaller value
/// completes the triple.
pub(crate) fn scan_321(seq: &[u32]) -> bool {
    let mut prefix_max = 0u32;
    let mut best_middle: Option<u32> = None;
    for &v in seq {
        if let Some(m) = best_middle {
            if v < m {
                return true;
            }
        }
        if v < prefix_max {
            best_middle = Some(best_middle.map_or(v, |m| m.max(v)));
        }
        prefix_max = prefix_max.max(v);
    }
    false
}

/// Linear scan for a 312 occurrence: a 132 stack scan over complemented
/// values.
pub(crate) fn scan_312(seq: &[u32]) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut third: Option<u32> = None;
    for &raw in seq.iter().rev() {
        let v = u32::MAX - raw;
        if let Some(t) = third {
            if v < t {
                return true;
            }
        }
        while stack.last().is_some_and(|&top| top < v) {
            third = Some(stack.pop().unwrap());
        }
        stack.push(v);
    }
    false
}

/// Backtracking matcher. For each pattern position, only the tightest
/// already-matched lower and upper value bounds need checking.
fn contains_generic(host: &[u32], pat: &[u32], anchor_last: bool) -> bool {
    const NONE: usize = usize::MAX;
    let k = pat.len();
    let mut lower = vec![NONE; k];
    let mut upper = vec![NONE; k];
    for j in 0..k {
        for t in 0..j {
            if pat[t] < pat[j] {
                if lower[j] == NONE || pat[t] > pat[lower[j]] {
                    lower[j] = t;
                }
            } else if upper[j] == NONE || pat[t] < pat[upper[j]] {
                upper[j] = t;
            }
        }
    }

    fn fits(v: u32, j: usize, chosen: &[u32], lower: &[usize], upper: &[usize]) -> bool {
        (lower[j] == usize::MAX || v > chosen[lower[j]])
            && (upper[j] == usize::MAX || v < chosen[upper[j]])
    }

    fn dfs(
        host: &[u32],
        k: usize,
        lower: &[usize],
        upper: &[usize],
        chosen: &mut Vec<u32>,
        start: usize,
        anchor_last: bool,
    ) -> bool {
        let j = chosen.len();
        if j == k {
            return true;
        }
        if anchor_last && j == k - 1 {
            return fits(*host.last().unwrap(), j, chosen, lower, upper);
        }
        // leave room for the remaining pattern elements
        let max_pos = host.len() + j - k;
        for pos in start..=max_pos {
            let v = host[pos];
            if fits(v, j, chosen, lower, upper) {
                chosen.push(v);
                if dfs(host, k, lower, upper, chosen, pos + 1, anchor_last) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::with_capacity(k);
    dfs(host, k, &lower, &upper, &mut chosen, 0, anchor_last)
}

pub(crate) fn prefix_avoids_extended(prefix: &[u32], forbidden: &PatternSet) -> bool {
    forbidden
        .iter()
        .all(|p| !slice_contains_extended(prefix, p.values()))
}

// ---------------------------------------------------------------------------
// Avoider generation
// ---------------------------------------------------------------------------

/// Streams `S_n(forbidden)` via prefix-pruned backtracking: a prefix that
/// already contains a forbidden pattern is never extended.
pub fn generate_avoiders(n: usize, forbidden: &PatternSet, bound: usize) -> Result<Avoiders> {
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "avoider generation",
            requested: n,
            bound,
        });
    }
    Ok(Avoiders {
        n,
        forbidden: forbidden.clone(),
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        next_try: vec![1],
        finished: false,
    })
}

pub struct Avoiders {
    n: usize,
    forbidden: PatternSet,
    prefix: Vec<u32>,
    used: Vec<bool>,
    /// next candidate value per depth; always one longer than `prefix`
    next_try: Vec<u32>,
    finished: bool,
}

impl Avoiders {
    fn retreat(&mut self) {
        let v = self.prefix.pop().expect("retreat from root");
        self.used[(v - 1) as usize] = false;
        self.next_try.pop();
    }
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.finished {
            return None;
        }
        if self.n == 0 {
            self.finished = true;
            return Some(Permutation::empty());
        }
        loop {
            if self.prefix.len() == self.n {
                let item = Permutation::from_vec_unchecked(self.prefix.clone());
                self.retreat();
                return Some(item);
            }
            let depth = self.prefix.len();
            let mut candidate = self.next_try[depth];
            let mut descended = false;
            while candidate <= self.n as u32 {
                let idx = (candidate - 1) as usize;
                if !self.used[idx] {
                    self.prefix.push(candidate);
                    if prefix_avoids_extended(&self.prefix, &self.forbidden) {
                        self.next_try[depth] = candidate + 1;
                        self.used[idx] = true;
                        self.next_try.push(1);
                        descended = true;
                        break;
                    }
                    self.prefix.pop();
                }
                candidate += 1;
            }
            if !descended {
                if depth == 0 {
                    self.finished = true;
                    return None;
                }
                self.retreat();
            }
        }
    }
}

/// Counts avoiders of `forbidden` whose completed value sequence satisfies
/// `leaf`, partitioning the search by first value across workers.
pub(crate) fn count_avoider_leaves<F>(n: usize, forbidden: &PatternSet, leaf: F) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if n == 0 {
        return u64::from(leaf(&[]));
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut prefix = Vec::with_capacity(n);
            let mut used = vec![false; n];
            prefix.push(first);
            used[(first - 1) as usize] = true;
            if !prefix_avoids_extended(&prefix, forbidden) {
                return 0;
            }
            count_leaves_rec(n, forbidden, &leaf, &mut prefix, &mut used)
        })
        .sum()
}

fn count_leaves_rec<F>(
    n: usize,
    forbidden: &PatternSet,
    leaf: &F,
    prefix: &mut Vec<u32>,
    used: &mut [bool],
) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if prefix.len() == n {
        return u64::from(leaf(prefix));
    }
    let mut total = 0;
    for v in 1..=n as u32 {
        let idx = (v - 1) as usize;
        if used[idx] {
            continue;
        }
        prefix.push(v);
        if prefix_avoids_extended(prefix, forbidden) {
            used[idx] = true;
            total += count_leaves_rec(n, forbidden, leaf, prefix, used);
            used[idx] = false;
        }
        prefix.pop();
    }
    total
}

/// Counts permutations of S_n satisfying `pred`, with no pruning.
pub(crate) fn count_permutations_where<F>(n: usize, pred: F) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if n == 0 {
        return u64::from(pred(&[]));
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut prefix = Vec::with_capacity(n);
            let mut used = vec![false; n];
            prefix.push(first);
            used[(first - 1) as usize] = true;
            count_perms_rec(n, &pred, &mut prefix, &mut used)
        })
        .sum()
}

fn count_perms_rec<F>(n: usize, pred: &F, prefix: &mut Vec<u32>, used: &mut [bool]) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if prefix.len() == n {
        return u64::from(pred(prefix));
    }
    let mut total = 0;
    for v in 1..=n as u32 {
        let idx = (v - 1) as usize;
        if used[idx] {
            continue;
        }
        used[idx] = true;
        prefix.push(v);
        total += count_perms_rec(n, pred, prefix, used);
        prefix.pop();
        used[idx] = false;
    }
    total
}
