use std::fmt;

use num_traits::{One, Zero};

use super::{factorial, Poly, Rational, Variable};
use crate::error::{Error, Result};

/// Coefficient ring of a truncated power series: the rationals, or
/// polynomials over the rationals. Scalar division by nonzero integers
/// (via [`Ring::scale`]) is assumed exact, which holds for both.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact multiplication by a rational scalar.
    fn scale(&self, s: &Rational) -> Self;
    /// Multiplicative inverse, when the element is a unit.
    fn try_inverse(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Rational) -> Self {
        self * s
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl<V: Variable> Ring for Poly<V> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn scale(&self, s: &Rational) -> Self {
        Poly::scale(self, s)
    }
    /// Units of the polynomial ring are the nonzero constants.
    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(Poly::constant(self.coeff(0).recip())),
            _ => None,
        }
    }
}

/// Truncated formal power series: exact coefficients of `t^0 ..= t^order`.
///
/// Binary operations truncate to the minimum order of their inputs and
/// never silently extend beyond it.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: Ring> {
    coeffs: Vec<C>, // invariant: len == order + 1
}

impl<C: Ring> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(C::one(), 0, order)
    }

    /// `c * t^power + O(t^(order+1))`. Panics if `power > order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        assert!(power <= order, "monomial power beyond truncation order");
        let mut s = Self::zero(order);
        s.coeffs[power] = c;
        s
    }

    /// Builds from the full coefficient list `t^0 ..= t^len-1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { coeffs }
    }

    /// Fills coefficients from a function of the power.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    /// Inclusive truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `n! * coeff(n)`: the coefficient in exponential-generating-function
    /// normalization.
    pub fn egf_coeff(&self, n: usize) -> C {
        self.coeffs[n].scale(&Rational::from_integer(factorial(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |j| self.coeffs[j].add(&rhs.coeffs[j]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |j| self.coeffs[j].sub(&rhs.coeffs[j]))
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// Exact Cauchy product up to the minimum order of the inputs.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse via the coefficient recursion
    /// `b_0 = a_0^-1`, `b_n = -a_0^-1 * sum_{j=1}^{n} a_j b_{n-j}`.
    pub fn inv(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::SingularSeries)?;
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&out[n - j]));
            }
            out[n] = inv0.mul(&acc).neg();
        }
        Ok(Series { coeffs: out })
    }

    /// `exp(a)` for `a` with zero constant term, via
    /// `n f_n = sum_{j=1}^{n} j a_j f_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "exp" });
        }
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        out[0] = C::one();
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].scale(&Rational::from_integer(j.into())).mul(&out[n - j]));
            }
            out[n] = acc.scale(&Rational::new(1.into(), n.into()));
        }
        Ok(Series { coeffs: out })
    }

    /// `log(1 + a)` for `a` with zero constant term, via
    /// `g_n = a_n - (1/n) sum_{j=1}^{n-1} (n-j) a_j g_{n-j}`.
    pub fn log1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "log1p" });
        }
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 1..n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].scale(&Rational::from_integer((n - j).into())).mul(&out[n - j]));
            }
            out[n] = self.coeffs[n].sub(&acc.scale(&Rational::new(1.into(), n.into())));
        }
        Ok(Series { coeffs: out })
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides by `t`, dropping the (required-zero) constant term; the
    /// truncation order decreases by one.
    pub fn div_t(&self) -> Result<Self> {
        assert!(self.order() >= 1, "div_t needs order >= 1");
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "div_t" });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }
}

impl Series<Rational> {
    /// The series of `t` itself at the given order.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, LambdaPoly};
    use num_bigint::BigInt;

    fn srs(vals: &[(i64, i64)]) -> Series<Rational> {
        Series::from_coeffs(vals.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = srs(&[(1, 1), (1, 1), (0, 1)]);
        let b = srs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b), srs(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn mul_geometric_by_exp_neg_gives_derangement_egf() {
        // Independent oracle: d_n = n*d_{n-1} + (-1)^n.
        let mut d = vec![BigInt::from(1)];
        for n in 1..=4usize {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            d.push(BigInt::from(n) * &d[n - 1] + BigInt::from(sign));
        }
        assert_eq!(d, vec![1.into(), 0.into(), 1.into(), 2.into(), 9.into()]);

        let geo = Series::from_fn(4, |_| Rational::one());
        let exp_neg = Series::from_fn(4, |n| {
            Rational::new(BigInt::from(if n % 2 == 0 { 1 } else { -1 }), factorial(n))
        });
        let prod = geo.mul(&exp_neg);
        // frozen from the oracle: d_n / n! for d = 1, 0, 1, 2, 9
        assert_eq!(prod, srs(&[(1, 1), (0, 1), (1, 2), (1, 3), (3, 8)]));
        for n in 0..=4 {
            assert_eq!(prod.egf_coeff(n), Rational::from_integer(d[n].clone()));
        }
    }

    #[test]
    fn zero_series_absorbs() {
        let z = Series::<Rational>::zero(3);
        let a = srs(&[(2, 1), (5, 7), (-1, 3), (0, 1)]);
        assert_eq!(z.mul(&a), z);
    }

    #[test]
    fn inv_geometric() {
        let a = srs(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.inv().unwrap(), srs(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn inv_matches_reciprocal_recursion_oracle() {
        // 1 - t/2 + t^2/3 - t^3/4, i.e. log(1+t)/t
        let a = srs(&[(1, 1), (-1, 2), (1, 3), (-1, 4)]);
        // Independent oracle: textbook reciprocal recursion.
        let mut b = vec![rat_int(1)];
        for n in 1..=3usize {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc += a.coeff(j) * &b[n - j];
            }
            b.push(-acc);
        }
        let inv = a.inv().unwrap();
        assert_eq!(inv.coeffs(), &b[..]);
        // frozen: coefficients of t/log(1+t) are b_n/n! for b = 1, 1/2, -1/6, 1/4
        assert_eq!(inv, srs(&[(1, 1), (1, 2), (-1, 12), (1, 24)]));
    }

    #[test]
    fn inv_rejects_zero_constant_term() {
        let a = srs(&[(0, 1), (1, 1)]);
        assert_eq!(a.inv().unwrap_err(), Error::SingularSeries);
    }

    #[test]
    fn exp_and_log_basics() {
        let t = Series::identity(3);
        assert_eq!(t.exp().unwrap(), srs(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        assert_eq!(t.log1p().unwrap(), srs(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        let bad = srs(&[(1, 1), (1, 1)]);
        assert!(matches!(bad.exp(), Err(Error::NonzeroConstantTerm { op: "exp" })));
        assert!(matches!(bad.log1p(), Err(Error::NonzeroConstantTerm { op: "log1p" })));
    }

    #[test]
    fn pow_of_exp_minus_one_counts_partitions() {
        // Oracle: brute-force count of 2-block set partitions of {1,2,3}.
        let blocks = crate::testutil::set_partition_count(3, 2);
        assert_eq!(blocks, 3);

        let t = Series::identity(3);
        let em1 = t.exp().unwrap().sub(&Series::one(3));
        let sq = em1.pow(2);
        // coefficient of t^3 times 3!/2!
        let got = sq.coeff(3) * Rational::from_integer(factorial(3)) / rat_int(2);
        assert_eq!(got, rat_int(blocks as i64));
    }

    #[test]
    fn div_t_shifts_and_checks() {
        let t = Series::identity(3);
        assert_eq!(t.div_t().unwrap(), Series::one(2));
        let bad = srs(&[(1, 1), (1, 1)]);
        assert!(matches!(bad.div_t(), Err(Error::NonzeroConstantTerm { op: "div_t" })));
    }

    #[test]
    fn min_order_propagates() {
        let a = Series::<Rational>::one(5);
        let b = Series::<Rational>::one(2);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&b).order(), 2);
    }

    #[test]
    fn poly_coefficients_work_in_series() {
        // exp(l * t) over the polynomial ring: coefficient of t^2 is l^2/2.
        let lt = Series::<LambdaPoly>::monomial(LambdaPoly::monomial(rat_int(1), 1), 1, 4);
        let e = lt.exp().unwrap();
        assert_eq!(e.coeff(2), &LambdaPoly::monomial(rat(1, 2), 2));
        assert_eq!(
            lt.exp().unwrap().sub(&Series::one(4)).log1p().unwrap(),
            lt,
            "log1p(exp(a) - 1) = a"
        );
    }

    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<Rational>();
        check::<LambdaPoly>();
        check::<Series<Rational>>();
        check::<Series<LambdaPoly>>();
    }
}
