//! Independent computation routes for every number family, used to
//! cross-check the memoized tables. Each function here extracts
//! coefficients from the family's generating function through the series
//! engine (or, for the degenerate second kind, rebuilds the triangle from
//! its three-term recurrence), sharing no code with the table fills.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{factorial, LambdaPoly, Rational, Ring, Series};

/// Exponential generating series of the degenerate logarithm,
/// `log(1 + l*t)/l = sum_{j>=1} (-1)^(j-1) l^(j-1) t^j / j`.
fn degenerate_log(order: usize) -> Series<LambdaPoly> {
    Series::from_fn(order, |j| {
        if j == 0 {
            LambdaPoly::zero()
        } else {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            LambdaPoly::monomial(Rational::new(BigInt::from(sign), BigInt::from(j)), j - 1)
        }
    })
}

fn scale_inv_factorial<C: Ring>(s: &Series<C>, k: usize) -> Series<C> {
    s.scale(&Rational::new(BigInt::one(), factorial(k)))
}

/// Signed Stirling numbers of the first kind for `n = 0..=n_max` at fixed
/// `k`: `n! [t^n] log(1+t)^k / k!`.
pub fn stirling1_series_column(k: usize, n_max: usize) -> Vec<Rational> {
    let log = Series::identity(n_max).log1p().unwrap();
    let s = scale_inv_factorial(&log.pow(k as u64), k);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Stirling numbers of the second kind for `n = 0..=n_max` at fixed `k`:
/// `n! [t^n] (e^t - 1)^k / k!`.
pub fn stirling2_series_column(k: usize, n_max: usize) -> Vec<Rational> {
    let em1 = Series::identity(n_max).exp().unwrap().sub(&Series::one(n_max));
    let s = scale_inv_factorial(&em1.pow(k as u64), k);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Degenerate Stirling numbers of the first kind, as λ-polynomials, from
/// the k-th power of the degenerate logarithm.
pub fn stirling1_deg_series_column(k: usize, n_max: usize) -> Vec<LambdaPoly> {
    let s = scale_inv_factorial(&degenerate_log(n_max).pow(k as u64), k);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Degenerate Stirling numbers of the second kind, as λ-polynomials, from
/// the k-th power of `(1 + l*t)^(1/l) - 1 = exp(log(1 + l*t)/l) - 1`.
pub fn stirling2_deg_series_column(k: usize, n_max: usize) -> Vec<LambdaPoly> {
    let em1 = degenerate_log(n_max).exp().unwrap().sub(&Series::one(n_max));
    let s = scale_inv_factorial(&em1.pow(k as u64), k);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Degenerate second-kind triangle rebuilt from the recurrence
/// `S(n+1,k) = k*S(n,k) + S(n,k-1) - n*l*S(n,k)`, rows `0..=n_max`.
pub fn stirling2_deg_recurrence_table(n_max: usize) -> Vec<Vec<LambdaPoly>> {
    let mut table = vec![vec![LambdaPoly::one()]];
    for n in 0..n_max {
        let prev = table.last().unwrap();
        let nl = LambdaPoly::monomial(Rational::from_integer(BigInt::from(n)), 1);
        let mut row = vec![LambdaPoly::zero(); n + 2];
        for (k, slot) in row.iter_mut().enumerate() {
            let keep = prev.get(k).cloned().unwrap_or_else(LambdaPoly::zero);
            let carry = if k > 0 {
                prev.get(k - 1).cloned().unwrap_or_else(LambdaPoly::zero)
            } else {
                LambdaPoly::zero()
            };
            let scaled = keep.scale(&Rational::from_integer(BigInt::from(k)));
            *slot = scaled.add(&carry).sub(&nl.mul(&keep));
        }
        table.push(row);
    }
    table
}

/// Bernoulli numbers of the second kind `b_0..=b_n_max` from the series
/// `t/log(1+t)`.
pub fn bernoulli_second_kind_series(n_max: usize) -> Vec<Rational> {
    let kernel = Series::identity(n_max + 1)
        .log1p()
        .unwrap()
        .div_t()
        .unwrap()
        .inv()
        .unwrap();
    (0..=n_max).map(|n| kernel.egf_coeff(n)).collect()
}

/// Derangement numbers `d_0..=d_n_max` from `e^(-t)/(1-t)`.
pub fn derangement_series(n_max: usize) -> Vec<BigInt> {
    let exp_neg = Series::identity(n_max).neg().exp().unwrap();
    let geo = Series::from_fn(n_max, |_| Rational::one());
    let s = exp_neg.mul(&geo);
    (0..=n_max).map(|n| s.egf_coeff(n).to_integer()).collect()
}

/// Derangement polynomial value `d_n(x)` from `e^(-t)/(1-xt)`.
pub fn derangement_poly_series(n: usize, x: &Rational) -> Rational {
    let exp_neg = Series::identity(n).neg().exp().unwrap();
    let mut pw = Rational::one();
    let geo = Series::from_fn(n, |_j| {
        let c = pw.clone();
        pw *= x;
        c
    });
    exp_neg.mul(&geo).egf_coeff(n)
}

/// `n! [t^n] (t/log(1+t))^k (1+t)^(x-1)` for `n = 0..=n_max`; this equals
/// the higher-order Bernoulli polynomial value `B_n^(n-k+1)(x)`.
pub fn bernoulli_higher_log_kernel(k: usize, x: &Rational, n_max: usize) -> Vec<Rational> {
    let log = Series::identity(n_max + 1).log1p().unwrap();
    let kernel = log.div_t().unwrap().inv().unwrap().pow(k as u64);
    let shift = log
        .truncated(n_max)
        .scale(&(x - Rational::one()))
        .exp()
        .unwrap();
    let s = kernel.mul(&shift);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Moment sequence `E[(M_1 + ... + M_k)^n]` for `n = 0..=n_max`, where the
/// `M_i` are independent gamma-uniform mixtures, read off the moment
/// generating function `(-t/((1-t) log(1-t)))^k`.
pub fn mixture_sum_moment_series(k: usize, n_max: usize) -> Vec<Rational> {
    let neg_t = Series::identity(n_max + 1).neg();
    let one_minus_t = Series::one(n_max + 1).sub(&Series::identity(n_max + 1));
    let denom = one_minus_t.mul(&neg_t.log1p().unwrap());
    let base = denom.div_t().unwrap().inv().unwrap().neg();
    let s = base.pow(k as u64);
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::special::Tables;

    #[test]
    fn series_columns_match_tables_on_small_triangles() {
        let t = Tables::new();
        for k in 0..=6 {
            let s1 = stirling1_series_column(k, 8);
            let s2 = stirling2_series_column(k, 8);
            let s1d = stirling1_deg_series_column(k, 8);
            let s2d = stirling2_deg_series_column(k, 8);
            for n in 0..=8 {
                assert_eq!(s1[n], t.stirling1(n, k), "S1({n},{k})");
                assert_eq!(s2[n], t.stirling2(n, k), "S2({n},{k})");
                assert_eq!(s1d[n], t.stirling1_deg(n, k), "degenerate S1({n},{k})");
                assert_eq!(s2d[n], t.stirling2_deg(n, k), "degenerate S2({n},{k})");
            }
        }
    }

    #[test]
    fn recurrence_table_matches_finite_sum_route() {
        let t = Tables::new();
        let rec = stirling2_deg_recurrence_table(8);
        for (n, row) in rec.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, t.stirling2_deg(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn scalar_series_match_tables() {
        let t = Tables::new();
        let b = bernoulli_second_kind_series(10);
        let d = derangement_series(10);
        for n in 0..=10 {
            assert_eq!(b[n], t.bernoulli_second_kind(n), "b_{n}");
            assert_eq!(d[n], t.derangement(n), "d_{n}");
        }
        assert_eq!(
            derangement_poly_series(2, &rat(2, 1)),
            crate::special::derangement_poly(2, &rat(2, 1))
        );
    }

    #[test]
    fn log_kernel_route_reproduces_higher_order_values() {
        let t = Tables::new();
        for k in 0..=4usize {
            for x in [rat(0, 1), rat(1, 1), rat(-2, 1), rat(1, 2)] {
                let col = bernoulli_higher_log_kernel(k, &x, 8);
                for (n, v) in col.iter().enumerate() {
                    let r = n as i64 - k as i64 + 1;
                    assert_eq!(*v, t.bernoulli_higher(n, r, &x), "k={k} x={x} n={n}");
                }
            }
        }
    }
}
