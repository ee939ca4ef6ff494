//! Test-only independent oracles: brute-force enumerations and direct
//! expansions used to freeze expected values. Nothing here touches the
//! production computation routes.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{LambdaPoly, Rational, XPoly};

/// Counts set partitions of `{1..n}` into exactly `k` nonempty blocks by
/// exhaustive enumeration of block assignments.
pub fn set_partition_count(n: usize, k: usize) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    if k == 0 || k > n {
        return 0;
    }
    let mut count = 0u64;
    let mut assign = vec![0usize; n];
    loop {
        let used = assign.iter().copied().max().unwrap() + 1;
        if used == k {
            // canonical labellings only: block j must first appear before block j+1
            let mut next = 0usize;
            let mut ok = true;
            for &a in &assign {
                if a > next {
                    ok = false;
                    break;
                }
                if a == next {
                    next += 1;
                }
            }
            if ok {
                count += 1;
            }
        }
        // odometer over assignments 0..k
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if assign[i] + 1 < k {
                assign[i] += 1;
                for a in assign.iter_mut().skip(i + 1) {
                    *a = 0;
                }
                break;
            }
        }
    }
}

/// Coefficients of the falling factorial `x(x-1)...(x-n+1)` in powers of
/// `x`, by direct polynomial expansion.
pub fn falling_factorial_coeffs(n: usize) -> Vec<BigInt> {
    let mut p = XPoly::one();
    for j in 0..n {
        let factor = XPoly::from_coeffs(vec![
            Rational::from_integer(BigInt::from(-(j as i64))),
            Rational::one(),
        ]);
        p = p.mul(&factor);
    }
    (0..=n).map(|i| p.coeff(i).to_integer()).collect()
}

/// Coefficients of `x(x-l)(x-2l)...(x-(n-1)l)` in powers of `x`, each a
/// polynomial in `l`, by direct expansion.
pub fn lambda_falling_factorial_coeffs(n: usize) -> Vec<LambdaPoly> {
    let mut coeffs = vec![LambdaPoly::one()]; // constant polynomial 1 = x^0 coefficient of empty product
    for j in 0..n {
        let jl = LambdaPoly::monomial(Rational::from_integer(BigInt::from(j)), 1);
        let mut next = vec![LambdaPoly::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            // multiply by (x - j*l): shift for x, subtract j*l times current
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&jl.mul(c));
        }
        coeffs = next;
    }
    coeffs
}

/// Derangement numbers by the alternating factorial sum
/// `d_n = n! sum_{k=0}^n (-1)^k / k!`.
pub fn derangement_by_sum(n: usize) -> BigInt {
    let mut acc = Rational::from_integer(BigInt::one());
    let mut term = Rational::one();
    for k in 1..=n {
        term = -term / Rational::from_integer(BigInt::from(k));
        acc += &term;
    }
    (acc * Rational::from_integer(crate::exact::factorial(n))).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_hand_values() {
        assert_eq!(set_partition_count(4, 2), 7);
        assert_eq!(set_partition_count(3, 2), 3);
        assert_eq!(set_partition_count(0, 0), 1);
        assert_eq!(
            falling_factorial_coeffs(3),
            vec![0.into(), 2.into(), (-3).into(), 1.into()]
        );
        assert_eq!(derangement_by_sum(4), BigInt::from(9));
        assert_eq!(derangement_by_sum(5), BigInt::from(44));
    }
}
