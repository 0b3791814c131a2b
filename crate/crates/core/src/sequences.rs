//! Exact integer sequences: k-nacci families, partial sums, rational
//! generating-function coefficients, and the closed-form registry backing the
//! two summary tables.
//!
//! Everything is arbitrary precision; indices below the sequence start
//! evaluate to zero so shifted formulas need no special-casing.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `F_n` with `F_0 = 0`, `F_1 = 1`; zero for negative indices.
pub fn fibonacci(n: i64) -> BigUint {
    knacci(2, n)
}

/// Tribonacci `T_n` (the 3-nacci sequence).
pub fn tribonacci(n: i64) -> BigUint {
    knacci(3, n)
}

/// Tetranacci `Q_n` (the 4-nacci sequence).
pub fn tetranacci(n: i64) -> BigUint {
    knacci(4, n)
}

/// The n-th k-nacci number: each term is the sum of the previous `k` terms,
/// seeded by `F^(k)_i = 0` for `0 <= i < k-1` and `F^(k)_{k-1} = 1`.
///
/// Negative indices evaluate to 0. The degenerate order `k = 1` is the
/// all-ones sequence (each term equals its single predecessor).
pub fn knacci(k: usize, n: i64) -> BigUint {
    assert!(k >= 1, "k-nacci order must be at least 1");
    if n < 0 {
        return BigUint::zero();
    }
    let n = n as usize;
    if n < k - 1 {
        return BigUint::zero();
    }
    if n == k - 1 {
        return BigUint::one();
    }
    // window holds the k values at indices idx-k .. idx-1
    let mut window: Vec<BigUint> = vec![BigUint::zero(); k];
    window[k - 1] = BigUint::one();
    let mut sum: BigUint = BigUint::one();
    for _idx in k..=n {
        let next = sum.clone();
        sum += &next;
        sum -= &window[0];
        window.rotate_left(1);
        window[k - 1] = next;
    }
    window[k - 1].clone()
}

/// `sum_{i=1}^{n+1} T_i`, the partial sum of Tribonacci numbers.
pub fn partial_sum_tribonacci(n: usize) -> BigUint {
    let mut total = BigUint::zero();
    for i in 1..=(n as i64 + 1) {
        total += tribonacci(i);
    }
    total
}

/// First `n_max + 1` Taylor coefficients of `numerator / denominator`.
///
/// The denominator's constant term must be +1 or -1 so that every
/// coefficient is an exact integer; the coefficients are produced by the
/// induced linear recurrence with numerator corrections.
pub fn gf_coefficients(
    numerator: &[i64],
    denominator: &[i64],
    n_max: usize,
) -> Result<Vec<BigInt>> {
    let d0 = *denominator.first().ok_or_else(|| {
        Error::InvalidInput("generating-function denominator must be nonempty".into())
    })?;
    if d0 != 1 && d0 != -1 {
        return Err(Error::InvalidInput(format!(
            "generating-function denominator must have constant term ±1, got {d0}"
        )));
    }
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = if n < numerator.len() {
            BigInt::from(numerator[n])
        } else {
            BigInt::zero()
        };
        for j in 1..denominator.len().min(n + 1) {
            acc -= BigInt::from(denominator[j]) * &coeffs[n - j];
        }
        if d0 == -1 {
            acc = -acc;
        }
        coeffs.push(acc);
    }
    Ok(coeffs)
}

/// Reference to an OEIS entry: our sequence at index `n` equals the OEIS
/// value at index `n + shift`, plus `add`.
#[derive(Debug, Clone, Copy)]
pub struct OeisRef {
    pub id: &'static str,
    pub shift: i64,
    pub add: i64,
}

/// A registered closed form for one table row.
pub struct Formula {
    pub id: &'static str,
    pub expression: &'static str,
    /// Smallest n for which the formula is claimed to equal the count.
    pub valid_from: usize,
    pub oeis: Option<OeisRef>,
    eval: fn(usize) -> BigUint,
}

impl Formula {
    pub fn eval(&self, n: usize) -> BigUint {
        (self.eval)(n)
    }
}

/// Result of evaluating a registered formula; `in_range` is false when the
/// requested index is below the formula's validity start (the value is still
/// computed).
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: BigUint,
    pub in_range: bool,
}

/// Evaluate a registered closed form by id.
pub fn closed_form(id: &str, n: usize) -> Result<Evaluation> {
    let formula = formula(id).ok_or_else(|| {
        Error::InvalidInput(format!(
            "unknown formula id {id:?}; known ids: {}",
            formula_ids().join(", ")
        ))
    })?;
    Ok(Evaluation {
        value: formula.eval(n),
        in_range: n >= formula.valid_from,
    })
}

/// Look up a registered formula.
pub fn formula(id: &str) -> Option<&'static Formula> {
    FORMULAS.iter().find(|f| f.id == id)
}

/// All registered formula ids, in table order.
pub fn formula_ids() -> Vec<&'static str> {
    FORMULAS.iter().map(|f| f.id).collect()
}

pub fn formulas() -> &'static [Formula] {
    FORMULAS
}

fn eval_zero(_n: usize) -> BigUint {
    BigUint::zero()
}

fn eval_fib_n_plus_2_minus_1(n: usize) -> BigUint {
    fibonacci(n as i64 + 2) - 1u32
}

fn eval_trib_n_plus_2(n: usize) -> BigUint {
    tribonacci(n as i64 + 2)
}

fn eval_fib_n_plus_1(n: usize) -> BigUint {
    fibonacci(n as i64 + 1)
}

fn eval_two_fib_n_plus_1_minus_2(n: usize) -> BigUint {
    fibonacci(n as i64 + 1) * 2u32 - 2u32
}

fn eval_fib_n_plus_3_minus_n_minus_1(n: usize) -> BigUint {
    fibonacci(n as i64 + 3) - BigUint::from(n) - 1u32
}

fn eval_partial_sum_trib(n: usize) -> BigUint {
    partial_sum_tribonacci(n)
}

/// `1 + (n F_{n+2} + (n-3) F_n) / 5`; the division is asserted exact.
fn eval_fib_weighted_fifth(n: usize) -> BigUint {
    let n_int = BigInt::from(n);
    let numerator = &n_int * BigInt::from(fibonacci(n as i64 + 2))
        + (&n_int - 3) * BigInt::from(fibonacci(n as i64));
    let (quotient, remainder) = num_integer_div_rem(numerator, BigInt::from(5));
    assert!(
        remainder.is_zero(),
        "n*F(n+2) + (n-3)*F(n) must be divisible by 5 (n = {n})"
    );
    let value: BigInt = quotient + 1;
    assert!(!value.is_negative());
    value.to_biguint().expect("nonnegative")
}

fn num_integer_div_rem(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    let q = &a / &b;
    let r = &a % &b;
    (q, r)
}

fn eval_tetra_n_plus_3(n: usize) -> BigUint {
    tetranacci(n as i64 + 3)
}

fn eval_trib_pair_minus_1(n: usize) -> BigUint {
    tribonacci(n as i64 + 2) + tribonacci(n as i64 + 1) - 1u32
}

/// Denominator of the table-2 231 generating function.
pub const GF_231_DEN: [i64; 6] = [1, -1, -1, -2, -3, -2];
/// Numerator/denominator of the table-2 321 generating function.
pub const GF_321_NUM: [i64; 2] = [1, -1];
pub const GF_321_DEN: [i64; 6] = [1, -2, 0, -1, 0, 1];

/// Coefficient extraction for series known to be nonnegative (counting
/// sequences); panics if the series goes negative.
pub fn gf_nonnegative_coefficient(num: &[i64], den: &[i64], n: usize) -> BigUint {
    let coeffs = gf_coefficients(num, den, n).expect("constant term is ±1");
    coeffs[n].to_biguint().expect("series is nonnegative")
}

fn eval_gf_231(n: usize) -> BigUint {
    gf_nonnegative_coefficient(&[1], &GF_231_DEN, n)
}

fn eval_gf_321(n: usize) -> BigUint {
    gf_nonnegative_coefficient(&GF_321_NUM, &GF_321_DEN, n)
}

static FORMULAS: &[Formula] = &[
    Formula {
        id: "table1-123",
        expression: "0",
        valid_from: 5,
        oeis: None,
        eval: eval_zero,
    },
    Formula {
        id: "table1-132",
        expression: "F(n+2) - 1",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000071",
            shift: 2,
            add: 0,
        }),
        eval: eval_fib_n_plus_2_minus_1,
    },
    Formula {
        id: "table1-213",
        expression: "F(n+2) - 1",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000071",
            shift: 2,
            add: 0,
        }),
        eval: eval_fib_n_plus_2_minus_1,
    },
    Formula {
        id: "table1-231",
        expression: "T(n+2)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000073",
            shift: 2,
            add: 0,
        }),
        eval: eval_trib_n_plus_2,
    },
    Formula {
        id: "table1-312",
        expression: "F(n+1)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000045",
            shift: 1,
            add: 0,
        }),
        eval: eval_fib_n_plus_1,
    },
    Formula {
        id: "table1-1234",
        expression: "0",
        valid_from: 6,
        oeis: None,
        eval: eval_zero,
    },
    Formula {
        id: "table1-1243",
        expression: "2 F(n+1) - 2",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A019274",
            shift: 0,
            add: 0,
        }),
        eval: eval_two_fib_n_plus_1_minus_2,
    },
    Formula {
        id: "table1-2134",
        expression: "2 F(n+1) - 2",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A019274",
            shift: 0,
            add: 0,
        }),
        eval: eval_two_fib_n_plus_1_minus_2,
    },
    Formula {
        id: "table1-1324",
        expression: "F(n+3) - n - 1",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000126",
            shift: 0,
            add: 0,
        }),
        eval: eval_fib_n_plus_3_minus_n_minus_1,
    },
    Formula {
        id: "table1-1342",
        expression: "sum_{i=1..n+1} T(i)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A008937",
            shift: 1,
            add: 0,
        }),
        eval: eval_partial_sum_trib,
    },
    Formula {
        id: "table1-2314",
        expression: "sum_{i=1..n+1} T(i)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A008937",
            shift: 1,
            add: 0,
        }),
        eval: eval_partial_sum_trib,
    },
    Formula {
        id: "table1-1423",
        expression: "F(n+2) - 1",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000071",
            shift: 2,
            add: 0,
        }),
        eval: eval_fib_n_plus_2_minus_1,
    },
    Formula {
        id: "table1-3124",
        expression: "F(n+2) - 1",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000071",
            shift: 2,
            add: 0,
        }),
        eval: eval_fib_n_plus_2_minus_1,
    },
    Formula {
        id: "table1-2143",
        expression: "1 + (n F(n+2) + (n-3) F(n)) / 5",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A023610",
            shift: -2,
            add: 1,
        }),
        eval: eval_fib_weighted_fifth,
    },
    Formula {
        id: "table1-2341",
        expression: "Q(n+3)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000078",
            shift: 3,
            add: 0,
        }),
        eval: eval_tetra_n_plus_3,
    },
    Formula {
        id: "table1-3412",
        expression: "T(n+2)",
        valid_from: 2,
        oeis: Some(OeisRef {
            id: "A000073",
            shift: 2,
            add: 0,
        }),
        eval: eval_trib_n_plus_2,
    },
    Formula {
        id: "table2-123",
        expression: "0",
        valid_from: 7,
        oeis: None,
        eval: eval_zero,
    },
    Formula {
        id: "table2-132",
        expression: "T(n+2) + T(n+1) - 1",
        valid_from: 1,
        oeis: Some(OeisRef {
            id: "A001590",
            shift: 3,
            add: -1,
        }),
        eval: eval_trib_pair_minus_1,
    },
    Formula {
        id: "table2-213",
        expression: "T(n+2) + T(n+1) - 1",
        valid_from: 1,
        oeis: Some(OeisRef {
            id: "A001590",
            shift: 3,
            add: -1,
        }),
        eval: eval_trib_pair_minus_1,
    },
    Formula {
        id: "table2-231",
        expression: "[x^n] 1/(1 - x - x^2 - 2x^3 - 3x^4 - 2x^5)",
        valid_from: 0,
        oeis: Some(OeisRef {
            id: "A381858",
            shift: 0,
            add: 0,
        }),
        eval: eval_gf_231,
    },
    Formula {
        id: "table2-312",
        expression: "Q(n+3)",
        valid_from: 1,
        oeis: Some(OeisRef {
            id: "A000078",
            shift: 3,
            add: 0,
        }),
        eval: eval_tetra_n_plus_3,
    },
    Formula {
        id: "table2-321",
        expression: "[x^n] (1-x)/(1 - 2x - x^3 + x^5)",
        valid_from: 0,
        oeis: Some(OeisRef {
            id: "A381859",
            shift: 0,
            add: 0,
        }),
        eval: eval_gf_321,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn fibonacci_seeds_and_values() {
        let expected = [0u64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(fibonacci(n as i64), big(want), "F_{n}");
        }
        assert_eq!(fibonacci(-3), big(0));
    }

    #[test]
    fn knacci_matches_hand_iteration() {
        // k = 3: 0, 0, 1, 1, 2, 4, 7, 13, 24
        assert_eq!(knacci(3, 2), big(1));
        assert_eq!(knacci(3, 8), big(24));
        // k = 4: 0, 0, 0, 1, 1, 2, 4, 8
        assert_eq!(knacci(4, 7), big(8));
        // k = 1 degenerates to all ones.
        for n in 0..6 {
            assert_eq!(knacci(1, n), big(1));
        }
    }

    #[test]
    fn knacci_2_is_fibonacci() {
        for n in 0..=50 {
            assert_eq!(knacci(2, n), fibonacci(n));
        }
    }

    #[test]
    fn partial_sums() {
        assert_eq!(partial_sum_tribonacci(0), big(0)); // T_1
        assert_eq!(partial_sum_tribonacci(1), big(1)); // T_1 + T_2
        assert_eq!(partial_sum_tribonacci(5), big(15)); // 0+1+1+2+4+7
    }

    #[test]
    fn gf_geometric_series() {
        let coeffs = gf_coefficients(&[1], &[1, -1], 3).unwrap();
        assert_eq!(
            coeffs,
            vec![1, 1, 1, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn gf_table2_initial_coefficients() {
        let a = gf_coefficients(&[1], &GF_231_DEN, 4).unwrap();
        assert_eq!(a, [1, 1, 2, 5, 12].map(BigInt::from).to_vec());
        let b = gf_coefficients(&GF_321_NUM, &GF_321_DEN, 4).unwrap();
        assert_eq!(b, [1, 1, 2, 5, 11].map(BigInt::from).to_vec());
    }

    #[test]
    fn gf_rejects_bad_constant_term() {
        assert!(gf_coefficients(&[1], &[0, 1], 3).is_err());
        assert!(gf_coefficients(&[1], &[2, 1], 3).is_err());
        assert!(gf_coefficients(&[1], &[], 3).is_err());
    }

    #[test]
    fn gf_of_knacci_denominator_matches_knacci() {
        for k in 2..=4usize {
            let mut den = vec![1i64];
            den.extend(std::iter::repeat_n(-1, k));
            let coeffs = gf_coefficients(&[1], &den, 30).unwrap();
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(
                    c.to_biguint().unwrap(),
                    knacci(k, n as i64 + k as i64 - 1),
                    "k = {k}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form("table1-1324", 5).unwrap().value, big(15));
        assert_eq!(closed_form("table1-2143", 3).unwrap().value, big(4));
        assert_eq!(closed_form("table2-132", 3).unwrap().value, big(5));
    }

    #[test]
    fn closed_form_flags_out_of_range() {
        let eval = closed_form("table1-123", 3).unwrap();
        assert!(!eval.in_range);
        assert_eq!(eval.value, big(0));
        assert!(closed_form("table1-123", 5).unwrap().in_range);
    }

    #[test]
    fn closed_form_unknown_id() {
        assert!(closed_form("table9-000", 3).is_err());
    }

    #[test]
    fn weighted_fifth_divisibility() {
        // The internal division by 5 must be exact over the whole test range.
        for n in 0..=100 {
            let _ = eval_fib_weighted_fifth(n);
        }
    }

    #[test]
    fn fibonacci_partial_sum_identity() {
        // sum_{i=1}^{n} F_i = F_{n+2} - 1
        for n in 0..=30i64 {
            let sum: BigUint = (1..=n).map(fibonacci).sum();
            assert_eq!(sum, fibonacci(n + 2) - 1u32);
        }
    }

    #[test]
    fn tribonacci_sum_identity() {
        // T_{n+1} + T_n + 2 sum_{i=1}^{n-1} T_i = T_{n+2} + T_{n+1} - 1
        for n in 1..=30i64 {
            let sum: BigUint = (1..n).map(tribonacci).sum();
            let left = tribonacci(n + 1) + tribonacci(n) + sum * 2u32;
            let right = tribonacci(n + 2) + tribonacci(n + 1) - 1u32;
            assert_eq!(left, right, "n = {n}");
        }
    }
}
