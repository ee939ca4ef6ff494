//! Exact rational moments `E[expr^n]` for affine expressions in
//! independent random atoms.
//!
//! Supported atoms: `U` (uniform on (0,1)), `X` (gamma with shape 1 and
//! rate 1), `M` (gamma whose shape is itself drawn uniform on (0,1)).
//! An expression is a sum of terms, each a rational coefficient times a
//! product of distinct atoms. Terms must be pairwise atom-disjoint: that
//! is exactly what makes the multinomial expansion below factor over
//! independent atom moments, so the guard is enforced at construction.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    factorial, for_each_weak_composition, format_rational, rational_pow, Rational,
};
use crate::special::Tables;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomKind {
    /// Uniform on the open interval (0,1); `E[U^m] = 1/(m+1)`.
    Uniform,
    /// Gamma with shape 1 and rate 1 (standard exponential); `E[X^m] = m!`.
    ExpGamma,
    /// Gamma with rate 1 whose shape is drawn uniform on (0,1);
    /// `E[M^m] = sum_l |S1(m,l)|/(l+1)`.
    Mixture,
}

impl AtomKind {
    pub fn letter(self) -> char {
        match self {
            AtomKind::Uniform => 'U',
            AtomKind::ExpGamma => 'X',
            AtomKind::Mixture => 'M',
        }
    }
}

/// One independent random variable. Atoms with distinct `(kind, id)` are
/// mutually independent; equal atoms are the same variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom {
    pub kind: AtomKind,
    pub id: u32,
}

impl Atom {
    /// `id` must be positive; ids distinguish independent copies.
    pub fn new(kind: AtomKind, id: u32) -> Self {
        assert!(id >= 1, "atom ids start at 1");
        Atom { kind, id }
    }

    pub fn uniform(id: u32) -> Self {
        Self::new(AtomKind::Uniform, id)
    }

    pub fn exp_gamma(id: u32) -> Self {
        Self::new(AtomKind::ExpGamma, id)
    }

    pub fn mixture(id: u32) -> Self {
        Self::new(AtomKind::Mixture, id)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.id)
    }
}

/// A rational coefficient times a product of distinct atoms. The empty
/// product is a constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    coeff: Rational,
    atoms: Vec<Atom>, // sorted, no duplicates
}

impl Term {
    pub fn new(coeff: Rational, mut atoms: Vec<Atom>) -> Result<Self> {
        atoms.sort();
        for pair in atoms.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateAtom { atom: pair[0] });
            }
        }
        Ok(Term { coeff, atoms })
    }

    pub fn constant(coeff: Rational) -> Self {
        Term { coeff, atoms: Vec::new() }
    }

    pub fn atom(coeff: Rational, atom: Atom) -> Self {
        Term { coeff, atoms: vec![atom] }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_constant(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Affine combination of pairwise atom-disjoint products of independent
/// atoms, in canonical form: like monomials merged, zero terms dropped,
/// non-constant terms sorted with the constant term last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RVExpression {
    terms: Vec<Term>,
}

impl RVExpression {
    /// Canonicalizes and enforces the atom-disjointness guard.
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<Atom>, Rational> = BTreeMap::new();
        for t in terms {
            *merged.entry(t.atoms).or_insert_with(Rational::zero) += t.coeff;
        }
        let mut atom_terms = Vec::new();
        let mut constant = None;
        for (atoms, coeff) in merged {
            if coeff.is_zero() {
                continue;
            }
            if atoms.is_empty() {
                constant = Some(Term { coeff, atoms });
            } else {
                atom_terms.push(Term { coeff, atoms });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for t in &atom_terms {
            for a in &t.atoms {
                if !seen.insert(*a) {
                    return Err(Error::SharedAtom { atom: *a });
                }
            }
        }
        atom_terms.extend(constant);
        Ok(RVExpression { terms: atom_terms })
    }

    /// Parses the expression DSL, e.g. `"X1 + 2*X2 + 3*X3 - 3"` or
    /// `"1/2*U1*X1"`.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse(text)
    }

    /// `U1 + U2 + ... + Uk`.
    pub fn uniform_sum(k: usize) -> Self {
        let terms = (1..=k as u32)
            .map(|i| Term::atom(Rational::one(), Atom::uniform(i)))
            .collect();
        Self::new(terms).expect("distinct uniform atoms are disjoint")
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for RVExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = t.coeff.abs();
            if t.is_constant() {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                let names: Vec<String> = t.atoms.iter().map(Atom::to_string).collect();
                write!(f, "{}", names.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Exact `E[atom^m]`.
pub fn atom_moment(tables: &Tables, kind: AtomKind, m: usize) -> Rational {
    match kind {
        AtomKind::Uniform => Rational::new(BigInt::one(), BigInt::from(m + 1)),
        AtomKind::ExpGamma => Rational::from_integer(factorial(m)),
        AtomKind::Mixture => {
            // integral over (0,1) of the rising factorial u(u+1)...(u+m-1),
            // expanded through unsigned first-kind Stirling numbers
            let mut acc = Rational::zero();
            for l in 0..=m {
                acc += tables.stirling1(m, l).abs()
                    / Rational::from_integer(BigInt::from(l + 1));
            }
            acc
        }
    }
}

/// Exact `E[expr^n]` by multinomial expansion over the terms. Because the
/// atoms within a term are distinct and the terms are atom-disjoint, the
/// expectation of each monomial factors into single-atom moments.
pub fn moment(tables: &Tables, expr: &RVExpression, n: usize) -> Rational {
    let terms = expr.terms();
    // per-term weights: w[j][l] = coeff_j^l * prod_{a in term j} E[a^l]
    let w: Vec<Vec<Rational>> = terms
        .iter()
        .map(|t| {
            (0..=n)
                .map(|l| {
                    let mut v = rational_pow(t.coeff(), l);
                    for a in t.atoms() {
                        v *= atom_moment(tables, a.kind, l);
                    }
                    v
                })
                .collect()
        })
        .collect();
    let facts: Vec<BigInt> = (0..=n).map(factorial).collect();
    let mut total = Rational::zero();
    for_each_weak_composition(n, terms.len(), |comp| {
        let mut denom = BigInt::one();
        for &l in comp {
            denom *= &facts[l];
        }
        let mut v = Rational::new(facts[n].clone(), denom);
        for (j, &l) in comp.iter().enumerate() {
            if l > 0 {
                v *= &w[j][l];
            }
        }
        total += v;
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn tables() -> Tables {
        Tables::new()
    }

    #[test]
    fn atom_moment_examples() {
        let t = tables();
        assert_eq!(atom_moment(&t, AtomKind::Uniform, 3), rat(1, 4));
        assert_eq!(atom_moment(&t, AtomKind::ExpGamma, 4), rat_int(24));
        // integral of u(u+1) over (0,1) is 1/3 + 1/2
        assert_eq!(atom_moment(&t, AtomKind::Mixture, 2), rat(5, 6));
        for kind in [AtomKind::Uniform, AtomKind::ExpGamma, AtomKind::Mixture] {
            assert_eq!(atom_moment(&t, kind, 0), rat_int(1));
        }
    }

    #[test]
    fn mixture_moments_match_generating_function_route() {
        let t = tables();
        let series = crate::special::routes::mixture_sum_moment_series(1, 8);
        for (m, expect) in series.iter().enumerate() {
            assert_eq!(atom_moment(&t, AtomKind::Mixture, m), *expect, "m = {m}");
        }
    }

    #[test]
    fn moment_of_uniform_pair_squared() {
        let t = tables();
        let e = RVExpression::uniform_sum(2);
        // 2*(1/3) + 2*(1/2)^2
        assert_eq!(moment(&t, &e, 2), rat(7, 6));
    }

    #[test]
    fn centered_exponential_matches_derangements() {
        let t = tables();
        let e = RVExpression::parse("X1 - 1").unwrap();
        assert_eq!(moment(&t, &e, 2), rat_int(1));
        assert_eq!(moment(&t, &e, 3), rat_int(2));
        assert_eq!(moment(&t, &e, 0), rat_int(1));
    }

    #[test]
    fn zeroth_moment_is_one() {
        let t = tables();
        for text in ["U1+U2", "X1*M2", "0", "5"] {
            let e = RVExpression::parse(text).unwrap();
            assert_eq!(moment(&t, &e, 0), rat_int(1), "{text}");
        }
    }

    #[test]
    fn uniform_single_atom_reproduces_power_moments() {
        let t = tables();
        let e = RVExpression::parse("U1").unwrap();
        for k in 0..=10usize {
            assert_eq!(moment(&t, &e, k), rat(1, k as i64 + 1));
        }
    }

    #[test]
    fn like_terms_merge_and_zero_terms_drop() {
        let e = RVExpression::parse("U1 + U1").unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].coeff(), &rat_int(2));
        let z = RVExpression::parse("U1 - U1").unwrap();
        assert!(z.is_zero());
        let t = tables();
        assert_eq!(moment(&t, &z, 0), rat_int(1));
        assert_eq!(moment(&t, &z, 3), rat_int(0));
    }

    #[test]
    fn shared_atom_across_terms_is_rejected() {
        let err = RVExpression::parse("U1*X1 + U1*X2").unwrap_err();
        assert_eq!(
            err,
            Error::SharedAtom { atom: Atom::uniform(1) }
        );
    }

    #[test]
    fn duplicate_atom_within_term_is_rejected() {
        let err = RVExpression::parse("U1*U1").unwrap_err();
        assert_eq!(err, Error::DuplicateAtom { atom: Atom::uniform(1) });
    }

    #[test]
    fn display_round_trips_canonical_form() {
        let e = RVExpression::parse("3*X3+X1 + 2*X2 - 3").unwrap();
        assert_eq!(e.to_string(), "X1 + 2*X2 + 3*X3 - 3");
        let again = RVExpression::parse(&e.to_string()).unwrap();
        assert_eq!(e, again);
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    fn arb_kind() -> impl Strategy<Value = AtomKind> {
        prop_oneof![
            Just(AtomKind::Uniform),
            Just(AtomKind::ExpGamma),
            Just(AtomKind::Mixture),
        ]
    }

    /// Small expressions with guaranteed-disjoint atoms: term j uses ids
    /// {10j+1, ...}, so the guard always holds.
    fn arb_expr() -> impl Strategy<Value = RVExpression> {
        prop::collection::vec((arb_kind(), 1usize..=2, -3i64..=3), 1..=3).prop_map(|spec| {
            let mut terms = Vec::new();
            for (j, (kind, width, c)) in spec.into_iter().enumerate() {
                let atoms: Vec<Atom> = (0..width)
                    .map(|i| Atom::new(kind, (10 * j + i + 1) as u32))
                    .collect();
                terms.push(Term::new(rat_int(c), atoms).unwrap());
            }
            RVExpression::new(terms).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn first_moment_is_linear(e in arb_expr()) {
            let t = Tables::new();
            let mut expect = Rational::zero();
            for term in e.terms() {
                let mut v = term.coeff().clone();
                for a in term.atoms() {
                    v *= atom_moment(&t, a.kind, 1);
                }
                expect += v;
            }
            prop_assert_eq!(moment(&t, &e, 1), expect);
        }

        #[test]
        fn moment_is_invariant_under_term_order_and_relabeling(e in arb_expr(), n in 0usize..=4) {
            let t = Tables::new();
            let base = moment(&t, &e, n);

            let mut reversed: Vec<Term> = e.terms().to_vec();
            reversed.reverse();
            let shuffled = RVExpression::new(reversed).unwrap();
            prop_assert_eq!(moment(&t, &shuffled, n), base.clone());

            // relabel ids within each kind (order-preserving shift)
            let relabeled: Vec<Term> = e.terms().iter().map(|term| {
                let atoms = term.atoms().iter()
                    .map(|a| Atom::new(a.kind, a.id + 100))
                    .collect();
                Term::new(term.coeff().clone(), atoms).unwrap()
            }).collect();
            let relabeled = RVExpression::new(relabeled).unwrap();
            prop_assert_eq!(moment(&t, &relabeled, n), base);
        }

        #[test]
        fn uniform_sum_moments_are_bounded(k in 1usize..=4, n in 0usize..=6) {
            let t = Tables::new();
            let e = RVExpression::uniform_sum(k);
            let m = moment(&t, &e, n);
            prop_assert!(m >= Rational::zero());
            prop_assert!(m <= rat_int((k as i64).pow(n as u32)));
        }
    }
}
