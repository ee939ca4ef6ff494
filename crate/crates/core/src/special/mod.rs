//! Special-number families, each memoized in an append-only table built
//! by its canonical route. Independent cross-check routes live in
//! [`routes`].
//!
//! Canonical routes:
//! - Stirling numbers of the first kind (signed): `S1(n+1,k) = S1(n,k-1) - n*S1(n,k)`.
//! - Stirling numbers of the second kind: `S2(n+1,k) = k*S2(n,k) + S2(n,k-1)`.
//! - Degenerate first kind: `S1l(n+1,k) = S1l(n,k-1) - n*l*S1l(n,k)` as λ-polynomials.
//! - Degenerate second kind: the finite sum `sum_m l^(n-m) S1(n,m) (1/k!)Δ^k 0^m`.
//! - Bernoulli numbers of the second kind: coefficient recursion for the
//!   reciprocal of `log(1+t)/t`.
//! - Higher-order Bernoulli numbers: series power of `t/(e^t - 1)`.
//! - Derangement numbers: `d_n = n*d_{n-1} + (-1)^n`.

pub mod routes;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use parking_lot::RwLock;

use crate::exact::{
    binomial, factorial, rational_pow, LambdaPoly, Rational, Ring, Series,
};

/// `(1/k!) Δ^k 0^m = (1/k!) sum_{l=0}^k C(k,l) (-1)^(k-l) l^m`, with the
/// convention `0^0 = 1`. Equals the Stirling number of the second kind
/// `S2(m,k)` when `m >= k` and vanishes when `m < k`.
pub fn forward_difference_power(k: usize, m: usize) -> Rational {
    let mut acc = BigInt::zero();
    for l in 0..=k {
        let term = binomial(k, l) * BigInt::from(l).pow(m as u32);
        if (k - l) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Rational::new(acc, factorial(k))
}

/// Derangement polynomial `d_n(x) = sum_{k=0}^n (n!/k!) (-1)^k x^(n-k)`,
/// the coefficient form of the generating function `e^(-t)/(1-xt)`.
/// `d_n(1)` is the derangement number `d_n`.
pub fn derangement_poly(n: usize, x: &Rational) -> Rational {
    let n_fact = factorial(n);
    let mut acc = Rational::zero();
    for k in 0..=n {
        let mag = Rational::new(n_fact.clone(), factorial(k));
        let term = mag * rational_pow(x, n - k);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Table family tags, used to address entries for cache warming and for
/// fault injection in the verification harness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    S1,
    S2,
    S1Deg,
    S2Deg,
    Bern2,
    Derange,
    /// Higher-order Bernoulli numbers of the given (possibly negative) order.
    BernHigher(i64),
}

/// Memoized special-number tables.
///
/// Reads are lock-free once a row is filled; extension is serialized and
/// append-only. All accessors return clones of exact values.
pub struct Tables {
    s1: RwLock<Vec<Vec<Rational>>>,
    s2: RwLock<Vec<Vec<Rational>>>,
    s1deg: RwLock<Vec<Vec<LambdaPoly>>>,
    s2deg: RwLock<Vec<Vec<LambdaPoly>>>,
    bern2: RwLock<Vec<Rational>>,
    derange: RwLock<Vec<BigInt>>,
    bern_higher: RwLock<HashMap<i64, Vec<Rational>>>,
}

impl Default for Tables {
    fn default() -> Self {
        Self::new()
    }
}

impl Tables {
    pub fn new() -> Self {
        Tables {
            s1: RwLock::new(vec![vec![Rational::one()]]),
            s2: RwLock::new(vec![vec![Rational::one()]]),
            s1deg: RwLock::new(vec![vec![LambdaPoly::one()]]),
            s2deg: RwLock::new(vec![vec![LambdaPoly::one()]]),
            bern2: RwLock::new(vec![Rational::one()]),
            derange: RwLock::new(vec![BigInt::one()]),
            bern_higher: RwLock::new(HashMap::new()),
        }
    }

    /// Signed Stirling number of the first kind. Zero outside the triangle.
    pub fn stirling1(&self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        {
            let t = self.s1.read();
            if n < t.len() {
                return t[n][k].clone();
            }
        }
        let mut t = self.s1.write();
        while t.len() <= n {
            let prev = t.last().unwrap();
            let m = t.len() - 1; // prev is row m
            let mut row = vec![Rational::zero(); m + 2];
            for j in 0..=m + 1 {
                let carry = if j > 0 { prev.get(j - 1).cloned().unwrap_or_else(Rational::zero) } else { Rational::zero() };
                let keep = prev.get(j).cloned().unwrap_or_else(Rational::zero);
                row[j] = carry - Rational::from_integer(BigInt::from(m)) * keep;
            }
            t.push(row);
        }
        t[n][k].clone()
    }

    /// Stirling number of the second kind. Zero outside the triangle.
    pub fn stirling2(&self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        {
            let t = self.s2.read();
            if n < t.len() {
                return t[n][k].clone();
            }
        }
        let mut t = self.s2.write();
        while t.len() <= n {
            let prev = t.last().unwrap();
            let m = t.len() - 1;
            let mut row = vec![Rational::zero(); m + 2];
            for j in 0..=m + 1 {
                let carry = if j > 0 { prev.get(j - 1).cloned().unwrap_or_else(Rational::zero) } else { Rational::zero() };
                let keep = prev.get(j).cloned().unwrap_or_else(Rational::zero);
                row[j] = carry + Rational::from_integer(BigInt::from(j)) * keep;
            }
            t.push(row);
        }
        t[n][k].clone()
    }

    /// Degenerate Stirling number of the first kind as an exact
    /// λ-polynomial (always a single monomial in λ^(n-k)).
    pub fn stirling1_deg(&self, n: usize, k: usize) -> LambdaPoly {
        if k > n {
            return LambdaPoly::zero();
        }
        {
            let t = self.s1deg.read();
            if n < t.len() {
                return t[n][k].clone();
            }
        }
        let mut t = self.s1deg.write();
        while t.len() <= n {
            let prev = t.last().unwrap();
            let m = t.len() - 1;
            let ml = LambdaPoly::monomial(Rational::from_integer(BigInt::from(m)), 1);
            let mut row = vec![LambdaPoly::zero(); m + 2];
            for j in 0..=m + 1 {
                let carry = if j > 0 { prev.get(j - 1).cloned().unwrap_or_else(LambdaPoly::zero) } else { LambdaPoly::zero() };
                let keep = prev.get(j).cloned().unwrap_or_else(LambdaPoly::zero);
                row[j] = carry.sub(&ml.mul(&keep));
            }
            t.push(row);
        }
        t[n][k].clone()
    }

    /// Degenerate Stirling number of the second kind as a λ-polynomial,
    /// built from the finite sum over signed first-kind values and
    /// forward differences of powers.
    pub fn stirling2_deg(&self, n: usize, k: usize) -> LambdaPoly {
        if k > n {
            return LambdaPoly::zero();
        }
        {
            let t = self.s2deg.read();
            if n < t.len() {
                return t[n][k].clone();
            }
        }
        // Pre-touch the first-kind rows outside the s2deg lock.
        self.stirling1(n, 0);
        let mut t = self.s2deg.write();
        while t.len() <= n {
            let row_n = t.len();
            let s1_row: Vec<Rational> = (0..=row_n).map(|m| self.stirling1(row_n, m)).collect();
            let mut row = Vec::with_capacity(row_n + 1);
            for kk in 0..=row_n {
                let mut coeffs = vec![Rational::zero(); row_n + 1];
                for (m, s1_nm) in s1_row.iter().enumerate() {
                    if s1_nm.is_zero() {
                        continue;
                    }
                    let fdp = forward_difference_power(kk, m);
                    if fdp.is_zero() {
                        continue;
                    }
                    coeffs[row_n - m] += s1_nm * fdp;
                }
                row.push(LambdaPoly::from_coeffs(coeffs));
            }
            t.push(row);
        }
        t[n][k].clone()
    }

    /// Bernoulli number of the second kind `b_n`, by the coefficient
    /// recursion for the reciprocal of `log(1+t)/t`.
    pub fn bernoulli_second_kind(&self, n: usize) -> Rational {
        {
            let t = self.bern2.read();
            if n < t.len() {
                return t[n].clone();
            }
        }
        let mut t = self.bern2.write();
        while t.len() <= n {
            let m = t.len();
            let mut acc = Rational::zero();
            for j in 1..=m {
                // coefficient of t^j in log(1+t)/t is (-1)^j/(j+1)
                let lj = Rational::new(
                    BigInt::from(if j % 2 == 0 { 1 } else { -1 }),
                    BigInt::from(j + 1),
                );
                acc += lj * &t[m - j] / Rational::from_integer(factorial(m - j));
            }
            let bm = -acc * Rational::from_integer(factorial(m));
            t.push(bm);
        }
        t[n].clone()
    }

    /// Higher-order Bernoulli number `B_n^(r) = B_n^(r)(0)`. Negative
    /// orders are powers of the inverse kernel `(e^t - 1)/t`.
    fn bernoulli_higher_number(&self, n: usize, r: i64) -> Rational {
        {
            let t = self.bern_higher.read();
            if let Some(v) = t.get(&r) {
                if n < v.len() {
                    return v[n].clone();
                }
            }
        }
        let mut t = self.bern_higher.write();
        let v = t.entry(r).or_default();
        if n >= v.len() {
            let series = bernoulli_kernel_power(r, n);
            *v = (0..=n).map(|j| series.egf_coeff(j)).collect();
        }
        v[n].clone()
    }

    /// Higher-order Bernoulli polynomial value `B_n^(r)(x)`, via the
    /// binomial expansion over the cached order-`r` numbers.
    pub fn bernoulli_higher(&self, n: usize, r: i64, x: &Rational) -> Rational {
        if x.is_zero() {
            return self.bernoulli_higher_number(n, r);
        }
        let mut acc = Rational::zero();
        for j in 0..=n {
            acc += Rational::from_integer(binomial(n, j))
                * self.bernoulli_higher_number(j, r)
                * rational_pow(x, n - j);
        }
        acc
    }

    /// Derangement number `d_n`.
    pub fn derangement(&self, n: usize) -> BigInt {
        {
            let t = self.derange.read();
            if n < t.len() {
                return t[n].clone();
            }
        }
        let mut t = self.derange.write();
        while t.len() <= n {
            let m = t.len();
            let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let next = BigInt::from(m) * t.last().unwrap() + sign;
            t.push(next);
        }
        t[n].clone()
    }

    /// Pre-fills every table up to index `n_max` and the higher-order
    /// Bernoulli caches for orders `-1..=r_max`, so that later concurrent
    /// reads never contend on extension.
    pub fn warm(&self, n_max: usize, r_max: i64) {
        self.stirling1(n_max, 0);
        self.stirling2(n_max, 0);
        self.stirling1_deg(n_max, 0);
        self.stirling2_deg(n_max, 0);
        self.bernoulli_second_kind(n_max);
        self.derangement(n_max);
        let mut r = -(n_max as i64);
        while r <= r_max {
            self.bernoulli_higher_number(n_max, r);
            r += 1;
        }
    }

    /// Adds one to a single stored entry. This exists so the verification
    /// harness can prove that the two sides of every identity flow through
    /// different tables: any perturbed entry that an identity reads must
    /// flip at least one report to FAIL.
    pub fn perturb(&self, family: Family, n: usize, k: usize) {
        match family {
            Family::S1 => {
                self.stirling1(n, k);
                self.s1.write()[n][k] += Rational::one();
            }
            Family::S2 => {
                self.stirling2(n, k);
                self.s2.write()[n][k] += Rational::one();
            }
            Family::S1Deg => {
                self.stirling1_deg(n, k);
                let mut t = self.s1deg.write();
                let v = t[n][k].add(&LambdaPoly::one());
                t[n][k] = v;
            }
            Family::S2Deg => {
                self.stirling2_deg(n, k);
                let mut t = self.s2deg.write();
                let v = t[n][k].add(&LambdaPoly::one());
                t[n][k] = v;
            }
            Family::Bern2 => {
                self.bernoulli_second_kind(n);
                self.bern2.write()[n] += Rational::one();
            }
            Family::Derange => {
                self.derangement(n);
                self.derange.write()[n] += BigInt::one();
            }
            Family::BernHigher(r) => {
                self.bernoulli_higher_number(n, r);
                self.bern_higher.write().get_mut(&r).unwrap()[n] += Rational::one();
            }
        }
    }
}

/// `(t/(e^t - 1))^r` for `r >= 0`, or `((e^t - 1)/t)^|r|` for `r < 0`,
/// truncated at `order`.
fn bernoulli_kernel_power(r: i64, order: usize) -> Series<Rational> {
    if r == 0 {
        return Series::one(order);
    }
    let t = Series::identity(order + 1);
    let expm1_over_t = t.exp().unwrap().sub(&Series::one(order + 1)).div_t().unwrap();
    let base = if r > 0 {
        expm1_over_t.inv().expect("constant term of (e^t-1)/t is 1")
    } else {
        expm1_over_t
    };
    base.pow(r.unsigned_abs())
}
