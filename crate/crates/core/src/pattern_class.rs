//! The class of patterns realizable inside squares of {312,321}-avoiders:
//! membership testing, block classification, enumeration and counting, and
//! the forcing-set construction that reduces chain avoidance to composition
//! avoidance.
//!
//! A pattern is square-realizable exactly when each of its
//! sum-indecomposable blocks is a singleton, a cycled-up run `23..m1`, or a
//! doubly shifted run `34..m12`.

use num_bigint::BigUint;
use num_traits::One;

use crate::comp::{Composition, CompositionSet, DEFAULT_COMPOSITION_BOUND};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound for enumerating the class at a given length.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// The three block families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// The single point `1`.
    Singleton,
    /// `23..m1` for m >= 2.
    CycleUp,
    /// `34..m12` for m >= 3.
    ShiftTwo,
}

/// One classified sum-indecomposable block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    kind: BlockKind,
    size: usize,
}

impl Block {
    pub fn new(kind: BlockKind, size: usize) -> Result<Self> {
        let minimum = match kind {
            BlockKind::Singleton => 1,
            BlockKind::CycleUp => 2,
            BlockKind::ShiftTwo => 3,
        };
        if size < minimum || (kind == BlockKind::Singleton && size != 1) {
            return Err(Error::InvalidInput(format!(
                "{kind:?} block cannot have size {size}"
            )));
        }
        Ok(Self { kind, size })
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Recognizes a sum-indecomposable block, or returns None.
    pub fn classify(p: &Permutation) -> Option<Block> {
        let m = p.len();
        if m == 1 {
            return Some(Block {
                kind: BlockKind::Singleton,
                size: 1,
            });
        }
        if m >= 2 && p == &Permutation::epsilon(m).expect("m >= 2") {
            return Some(Block {
                kind: BlockKind::CycleUp,
                size: m,
            });
        }
        if m >= 3 && p == &shift_two(m) {
            return Some(Block {
                kind: BlockKind::ShiftTwo,
                size: m,
            });
        }
        None
    }

    pub fn permutation(&self) -> Permutation {
        match self.kind {
            BlockKind::Singleton => Permutation::identity(1),
            BlockKind::CycleUp => Permutation::epsilon(self.size).expect("size >= 2"),
            BlockKind::ShiftTwo => shift_two(self.size),
        }
    }
}

/// `34..m12`, the square of the cycled-up block of the same size.
fn shift_two(m: usize) -> Permutation {
    let mut values: Vec<u32> = (3..=m as u32).collect();
    values.push(1);
    values.push(2);
    Permutation::new(values).expect("shifted run is a bijection")
}

/// An ordered block classification of a class member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    blocks: Vec<Block>,
}

impl Decomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    pub fn permutation(&self) -> Permutation {
        let parts: Vec<Permutation> = self.blocks.iter().map(Block::permutation).collect();
        Permutation::direct_sum(&parts)
    }
}

/// Sum-decomposes `sigma` and classifies each block. Non-membership is a
/// regular outcome, reported with the offending block.
pub fn decompose(sigma: &Permutation) -> Result<Decomposition> {
    let mut blocks = Vec::new();
    let mut position = 1usize;
    for part in sigma.sum_decompose() {
        match Block::classify(&part) {
            Some(block) => {
                position += block.size();
                blocks.push(block);
            }
            None => {
                return Err(Error::NotSquareRealizable {
                    perm: sigma.to_string(),
                    block: part.to_string(),
                    position,
                })
            }
        }
    }
    Ok(Decomposition { blocks })
}

pub fn is_square_realizable(sigma: &Permutation) -> bool {
    decompose(sigma).is_ok()
}

/// All class members of length `n`, sorted lexicographically.
pub fn enumerate_members(n: usize, bound: usize) -> Result<Vec<Permutation>> {
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "class enumeration",
            requested: n,
            bound,
        });
    }
    let mut members = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    build_members(n, &mut blocks, &mut members);
    members.sort();
    Ok(members)
}

fn build_members(remaining: usize, blocks: &mut Vec<Block>, out: &mut Vec<Permutation>) {
    if remaining == 0 {
        let decomp = Decomposition {
            blocks: blocks.clone(),
        };
        out.push(decomp.permutation());
        return;
    }
    blocks.push(Block {
        kind: BlockKind::Singleton,
        size: 1,
    });
    build_members(remaining - 1, blocks, out);
    blocks.pop();
    for size in 2..=remaining {
        blocks.push(Block {
            kind: BlockKind::CycleUp,
            size,
        });
        build_members(remaining - size, blocks, out);
        blocks.pop();
    }
    for size in 3..=remaining {
        blocks.push(Block {
            kind: BlockKind::ShiftTwo,
            size,
        });
        build_members(remaining - size, blocks, out);
        blocks.pop();
    }
}

/// Class size at length `n`, by the first-block recurrence
/// `s_n = s_{n-1} + sum_{i=2}^{n} s_{n-i} + sum_{i=3}^{n} s_{n-i}` with
/// `s_0 = 1`.
pub fn member_count(n: usize) -> BigUint {
    let mut s: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=n {
        let mut total = s[m - 1].clone();
        for i in 2..=m {
            total += &s[m - i];
        }
        for i in 3..=m {
            total += &s[m - i];
        }
        s.push(total);
    }
    s.pop().expect("nonempty")
}

/// Forcing set of the increasing pattern of length `k`: every composition of
/// `k` with 2 added to each part of size at least 3. Contains `2^(k-1)`
/// members.
pub fn increasing_forcing_set(k: usize) -> Result<CompositionSet> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "increasing pattern length must be positive".into(),
        ));
    }
    let members = crate::comp::generate_compositions(k, DEFAULT_COMPOSITION_BOUND)?.map(|comp| {
        let parts = comp
            .parts()
            .iter()
            .map(|&p| if p >= 3 { p + 2 } else { p })
            .collect();
        Composition::new(parts).expect("parts stay positive")
    });
    Ok(CompositionSet::new(members))
}

/// The base composition of a decomposition: singletons contribute 1, shifted
/// runs their size, cycled-up runs their size plus one.
pub fn base_composition(decomposition: &Decomposition) -> Composition {
    let parts = decomposition
        .blocks()
        .iter()
        .map(|b| match b.kind() {
            BlockKind::Singleton => 1,
            BlockKind::ShiftTwo => b.size() as u32,
            BlockKind::CycleUp => b.size() as u32 + 1,
        })
        .collect();
    Composition::new(parts).expect("block sizes are positive")
}

/// The set of composition patterns whose containment by an encoding
/// composition is equivalent to the square containing `sigma`.
///
/// Every maximal run of 1s in the base composition (runs come only from
/// singleton blocks) is independently replaced by each member of the
/// increasing pattern's forcing set; choices multiply across runs and the
/// results are deduplicated.
pub fn forcing_set(sigma: &Permutation) -> Result<CompositionSet> {
    let decomposition = decompose(sigma)?;
    let base = base_composition(&decomposition);

    enum Segment {
        Fixed(Vec<u32>),
        OnesRun(usize),
    }

    let mut segments: Vec<Segment> = Vec::new();
    for &part in base.parts() {
        if part == 1 {
            match segments.last_mut() {
                Some(Segment::OnesRun(len)) => *len += 1,
                _ => segments.push(Segment::OnesRun(1)),
            }
        } else {
            match segments.last_mut() {
                Some(Segment::Fixed(parts)) => parts.push(part),
                _ => segments.push(Segment::Fixed(vec![part])),
            }
        }
    }

    let mut combos: Vec<Vec<u32>> = vec![Vec::new()];
    for segment in &segments {
        let choices: Vec<Vec<u32>> = match segment {
            Segment::Fixed(parts) => vec![parts.clone()],
            Segment::OnesRun(len) => increasing_forcing_set(*len)?
                .members()
                .iter()
                .map(|c| c.parts().to_vec())
                .collect(),
        };
        let mut next = Vec::with_capacity(combos.len() * choices.len());
        for prefix in &combos {
            for choice in &choices {
                let mut extended = prefix.clone();
                extended.extend_from_slice(choice);
                next.push(extended);
            }
        }
        combos = next;
    }

    Ok(CompositionSet::new(combos.into_iter().map(|parts| {
        Composition::new(parts).expect("parts stay positive")
    })))
}
