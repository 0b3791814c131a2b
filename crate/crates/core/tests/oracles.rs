//! Brute-force oracles for the fast paths: naive containment, exhaustive
//! filtering of S_n, and the main reduction's witness-level biconditional.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use permchain::chain::{
    self, base_class_312_4321, count_chain_312_321, count_chain_bruteforce, ChainSpec, OracleBounds,
};
use permchain::counting::CompCounter;
use permchain::pattern_class;
use permchain::perm::{generate_avoiders, DEFAULT_GENERATOR_BOUND};
use permchain::{Composition, PatternSet, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|values| Permutation::new(values).unwrap())
        .collect()
}

/// Definition-level containment: try every index subset.
fn naive_contains(host: &Permutation, pattern: &Permutation) -> bool {
    let host = host.values();
    let pat = pattern.values();
    if pat.is_empty() {
        return true;
    }
    if pat.len() > host.len() {
        return false;
    }
    (0..host.len()).combinations(pat.len()).any(|indices| {
        indices.iter().enumerate().all(|(a, &ia)| {
            indices[..a]
                .iter()
                .enumerate()
                .all(|(b, &ib)| (host[ib] < host[ia]) == (pat[b] < pat[a]))
        })
    })
}

#[test]
fn containment_matches_naive_oracle() {
    let mut patterns: Vec<Permutation> = Vec::new();
    for k in 1..=4 {
        patterns.extend(all_permutations(k));
    }
    patterns.extend(["12345", "35142", "24153"].iter().map(|s| p(s)));

    for n in 0..=6 {
        for host in all_permutations(n) {
            for pattern in &patterns {
                assert_eq!(
                    host.contains(pattern),
                    naive_contains(&host, pattern),
                    "host {host}, pattern {pattern}"
                );
            }
        }
    }
}

#[test]
fn generator_equals_exhaustive_filter() {
    let sets = [
        "312",
        "321",
        "312;321",
        "312;4321",
        "2143",
        "1234;4321",
        "312;54321",
    ];
    for set in sets {
        let forbidden: PatternSet = set.parse().unwrap();
        for n in 0..=8 {
            let generated: Vec<Permutation> =
                generate_avoiders(n, &forbidden, DEFAULT_GENERATOR_BOUND)
                    .unwrap()
                    .collect();
            let filtered: Vec<Permutation> = all_permutations(n)
                .into_iter()
                .filter(|q| q.avoids_all(&forbidden))
                .collect();
            assert_eq!(generated, filtered, "set {set}, n = {n}");
        }
    }
}

#[test]
fn base_class_sizes_are_powers_of_two() {
    let base: PatternSet = "312;321".parse().unwrap();
    for n in 1..=12 {
        let count = generate_avoiders(n, &base, DEFAULT_GENERATOR_BOUND)
            .unwrap()
            .count();
        assert_eq!(BigUint::from(count), BigUint::one() << (n - 1), "n = {n}");
    }
}

#[test]
fn class_enumeration_equals_membership_filter() {
    // stream S_n rather than collecting it: only the members are kept
    for n in 1..=10 {
        let enumerated = pattern_class::enumerate_members(n, 20).unwrap();
        let filtered: Vec<Permutation> = (1..=n as u32)
            .permutations(n)
            .map(|values| Permutation::new(values).unwrap())
            .filter(pattern_class::is_square_realizable)
            .collect();
        assert_eq!(enumerated, filtered, "n = {n}");
        assert_eq!(
            pattern_class::member_count(n),
            BigUint::from(enumerated.len()),
            "n = {n}"
        );
    }
}

/// The core biconditional behind the reduction: an encoding composition
/// contains some member of the forcing set exactly when the encoded
/// permutation's square contains the pattern.
#[test]
fn forcing_sets_witness_square_containment() {
    let omega4 = pattern_class::enumerate_members(4, 20).unwrap();
    let forcing: Vec<_> = omega4
        .iter()
        .map(|sigma| (sigma, pattern_class::forcing_set(sigma).unwrap()))
        .collect();
    for n in 0..=12 {
        for d in permchain::comp::generate_compositions(n, 26).unwrap() {
            let square = Permutation::from_composition(&d).power(2);
            for (sigma, set) in &forcing {
                let hits_set = set.members().iter().any(|c| d.contains(c));
                assert_eq!(hits_set, square.contains(sigma), "sigma {sigma}, d ({d})");
            }
        }
    }
}

#[test]
fn counts_invariant_under_rci() {
    let mut counter = CompCounter::new();
    for n in 1..=6 {
        for sigma in pattern_class::enumerate_members(n, 20).unwrap() {
            let mirrored = sigma.rci();
            assert!(
                pattern_class::is_square_realizable(&mirrored),
                "class not closed under rci at {sigma}"
            );
            let left = pattern_class::forcing_set(&sigma).unwrap();
            let right = pattern_class::forcing_set(&mirrored).unwrap();
            for m in 0..=14 {
                assert_eq!(
                    counter.count(m, &left).unwrap(),
                    counter.count(m, &right).unwrap(),
                    "sigma {sigma}, m = {m}"
                );
            }
        }
    }
}

#[test]
fn chain_full_oracle_small() {
    let bounds = OracleBounds::default();
    let base = chain::base_class_312_321();
    for sigma in pattern_class::enumerate_members(3, 20).unwrap() {
        let spec = ChainSpec::two_level(base.clone(), PatternSet::single(sigma.clone()).unwrap());
        for n in 1..=7 {
            assert_eq!(
                count_chain_bruteforce(n, &spec, false, &bounds)
                    .unwrap()
                    .count,
                count_chain_312_321(n, &sigma).unwrap().count,
                "sigma {sigma}, n = {n}"
            );
        }
    }
}

#[test]
fn involution_tail_counts_match_bruteforce() {
    let base = base_class_312_4321();
    for m in 0..=9 {
        let identity = Permutation::identity(m);
        let count = generate_avoiders(m, &base, DEFAULT_GENERATOR_BOUND)
            .unwrap()
            .filter(|q| q.power(2) == identity)
            .count();
        assert_eq!(
            BigUint::from(count),
            chain::involution_tail_count(m),
            "m = {m}"
        );
    }
}

#[test]
fn bijection_covers_base_class() {
    // every {312,321}-avoider round-trips through its composition
    let base: PatternSet = "312;321".parse().unwrap();
    for n in 1..=10 {
        for avoider in generate_avoiders(n, &base, DEFAULT_GENERATOR_BOUND).unwrap() {
            let comp: Composition = avoider.to_composition().unwrap();
            assert_eq!(comp.weight(), n);
            assert_eq!(Permutation::from_composition(&comp), avoider);
        }
    }
}
