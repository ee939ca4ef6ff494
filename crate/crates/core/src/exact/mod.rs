//! Exact arithmetic substrate: arbitrary-precision rationals, dense
//! polynomials over the rationals, and truncated formal power series
//! generic over either coefficient ring.
//!
//! Everything here is exact; no floating point enters any code path.

mod poly;
mod series;

pub use poly::{LambdaPoly, LambdaVar, Poly, TPoly, TVar, Variable, XPoly, XVar};
pub use series::{Ring, Series};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `numer/denom` as a reduced rational. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// An integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient; zero outside the triangle.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(l_1 + ... + l_r)! / (l_1! ... l_r!)`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let total: usize = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with decimal integer parts.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (numer, denom) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Visits every weak composition of `total` into `parts` nonnegative
/// summands, in lexicographic order on the tuple.
///
/// With `parts == 0` the single empty composition exists only when
/// `total == 0`.
pub fn for_each_weak_composition<F: FnMut(&[usize])>(total: usize, parts: usize, mut f: F) {
    fn rec(buf: &mut [usize], idx: usize, remaining: usize, f: &mut dyn FnMut(&[usize])) {
        if idx + 1 == buf.len() {
            buf[idx] = remaining;
            f(buf);
            return;
        }
        for v in 0..=remaining {
            buf[idx] = v;
            rec(buf, idx + 1, remaining - v, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0usize; parts];
    rec(&mut buf, 0, total, &mut f);
}

/// `(-1)^n` as a rational sign.
pub fn alt_sign(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `base^exp` by repeated multiplication.
pub fn rational_pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_triangle_edges() {
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(5, 5), BigInt::one());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 5), BigInt::zero());
    }

    #[test]
    fn multinomial_matches_factorials() {
        // 6!/(2!1!3!) = 60
        assert_eq!(multinomial(&[2, 1, 3]), BigInt::from(60));
        assert_eq!(multinomial(&[]), BigInt::one());
    }

    #[test]
    fn weak_compositions_lex_order() {
        let mut seen = Vec::new();
        for_each_weak_composition(2, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);

        let mut count = 0usize;
        for_each_weak_composition(5, 3, |_| count += 1);
        assert_eq!(count, 21); // C(7,2)

        let mut empty = 0usize;
        for_each_weak_composition(0, 0, |_| empty += 1);
        assert_eq!(empty, 1);
        for_each_weak_composition(3, 0, |_| panic!("no compositions of 3 into 0 parts"));
    }

    #[test]
    fn rational_formatting_and_parsing() {
        assert_eq!(format_rational(&rat(7, 6)), "7/6");
        assert_eq!(format_rational(&rat_int(125)), "125");
        assert_eq!(format_rational(&rat(-1, 6)), "-1/6");
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("42").unwrap(), rat_int(42));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
