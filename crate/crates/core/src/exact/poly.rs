use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};

/// Marker for the formal variable a polynomial is written in. Mixing
/// variables is a type error, not a runtime check.
pub trait Variable: Copy + Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    /// Symbol used when rendering polynomials as text.
    const SYMBOL: &'static str;
}

/// Deformation variable of the degenerate number families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LambdaVar;

/// Generic evaluation variable (e.g. the argument of a Bernoulli polynomial).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct XVar;

/// Series variable, used to report truncated-series prefixes as values.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TVar;

impl Variable for LambdaVar {
    const SYMBOL: &'static str = "l";
}
impl Variable for XVar {
    const SYMBOL: &'static str = "x";
}
impl Variable for TVar {
    const SYMBOL: &'static str = "t";
}

/// Dense univariate polynomial over [`Rational`].
///
/// Canonical form: no trailing zero coefficients; the zero polynomial is
/// the empty coefficient list. Every operation restores canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<V: Variable = LambdaVar> {
    coeffs: Vec<Rational>,
    _var: PhantomData<V>,
}

pub type LambdaPoly = Poly<LambdaVar>;
pub type XPoly = Poly<XVar>;
pub type TPoly = Poly<TVar>;

impl<V: Variable> Poly<V> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * v^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs, _var: PhantomData }
    }

    /// Builds from a low-to-high coefficient list, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, _var: PhantomData }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `v^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            _var: PhantomData,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            _var: PhantomData,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }
}

impl<V: Variable> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if p == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !unit {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                if p == 1 {
                    write!(f, "{}", V::SYMBOL)?;
                } else {
                    write!(f, "{}^{}", V::SYMBOL, p)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn eval_examples() {
        // 1 - l at l = 0 and l = 1
        let p = LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(-1)]);
        assert_eq!(p.eval(&rat_int(0)), rat_int(1));
        assert_eq!(p.eval(&rat_int(1)), rat_int(0));
        assert_eq!(LambdaPoly::zero().eval(&rat(7, 3)), rat_int(0));
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = LambdaPoly::from_coeffs(vec![rat_int(3), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        let q = LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(2)]);
        // (1 + 2l) - (1 + 2l) must collapse to the canonical zero
        assert!(q.sub(&q).is_zero());
        assert_eq!(q.sub(&q).coeffs().len(), 0);
    }

    #[test]
    fn display_matches_csv_form() {
        let p = LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(-3), rat_int(2)]);
        assert_eq!(p.to_string(), "1 - 3*l + 2*l^2");
        assert_eq!(LambdaPoly::monomial(rat_int(-1), 1).to_string(), "-l");
        assert_eq!(LambdaPoly::monomial(rat(1, 2), 3).to_string(), "1/2*l^3");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
        assert_eq!(XPoly::monomial(rat_int(2), 2).to_string(), "2*x^2");
    }

    #[test]
    fn mul_expands_products() {
        // (1 + l)(1 - l) = 1 - l^2
        let a = LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(1)]);
        let b = LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(-1)]);
        assert_eq!(
            a.mul(&b),
            LambdaPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)])
        );
    }
}
