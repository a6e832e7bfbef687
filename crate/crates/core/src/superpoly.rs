//! The super polynomial ring `Q[x] ⊗ Λ(ξ)` in one even and one odd variable.
//!
//! The same ring serves both coordinate flavors: the general superdomain
//! `(x, ξ)` and the contact superstring `(t, θ)`. The flavor is only a tag;
//! mixing flavors in one operation is an error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, qi, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// Coordinates `x` (even) and `ξ` (odd).
    General,
    /// Coordinates `t` (even) and `θ` (odd) carrying the contact form `dt + θ dθ`.
    Contact,
}

impl Flavor {
    pub fn even_name(self) -> &'static str {
        match self {
            Flavor::General => "x",
            Flavor::Contact => "t",
        }
    }

    pub fn odd_name(self) -> &'static str {
        match self {
            Flavor::General => "xi",
            Flavor::Contact => "theta",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a product.
    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit((self.bit() + other.bit()) % 2 == 1)
    }

    /// The sign `(-1)^{p q}` picked up when two homogeneous objects swap.
    pub fn swap_sign(self, other: Parity) -> Rational {
        rational::sign(self.bit() * other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Result of [`SuperPoly::parity`]; the zero polynomial reports `Even`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityKind {
    Even,
    Odd,
    Mixed,
}

/// Which variable to differentiate by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Even,
    Odd,
}

/// A monomial `x^deg ξ^odd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub deg: u32,
    pub odd: bool,
}

impl Term {
    pub fn new(deg: u32, odd: bool) -> Self {
        Term { deg, odd }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    flavor: Flavor,
    terms: BTreeMap<Term, Rational>,
}

impl SuperPoly {
    pub fn zero(flavor: Flavor) -> Self {
        SuperPoly {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(flavor: Flavor) -> Self {
        Self::monomial(flavor, 0, false)
    }

    pub fn constant(flavor: Flavor, c: Rational) -> Self {
        Self::term(flavor, c, 0, false)
    }

    /// `x^deg ξ^odd` with coefficient 1.
    pub fn monomial(flavor: Flavor, deg: u32, odd: bool) -> Self {
        Self::term(flavor, Rational::one(), deg, odd)
    }

    pub fn term(flavor: Flavor, c: Rational, deg: u32, odd: bool) -> Self {
        let mut p = Self::zero(flavor);
        p.add_term(Term::new(deg, odd), c);
        p
    }

    /// The even coordinate `x` (or `t`).
    pub fn even_var(flavor: Flavor) -> Self {
        Self::monomial(flavor, 1, false)
    }

    /// The odd coordinate `ξ` (or `θ`).
    pub fn odd_var(flavor: Flavor) -> Self {
        Self::monomial(flavor, 0, true)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg: u32, odd: bool) -> Rational {
        self.terms
            .get(&Term::new(deg, odd))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Value at the origin `x = ξ = 0`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(0, false)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.deg).max()
    }

    fn add_term(&mut self, term: Term, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(term).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&term);
        }
    }

    pub fn parity(&self) -> ParityKind {
        let odd = self.terms.keys().filter(|t| t.odd).count();
        if odd == 0 {
            ParityKind::Even
        } else if odd == self.terms.len() {
            ParityKind::Odd
        } else {
            ParityKind::Mixed
        }
    }

    /// Parity of a homogeneous polynomial; zero counts as even.
    pub fn homogeneous_parity(&self) -> Result<Parity> {
        match self.parity() {
            ParityKind::Even => Ok(Parity::Even),
            ParityKind::Odd => Ok(Parity::Odd),
            ParityKind::Mixed => Err(Error::MixedParity(self.to_string())),
        }
    }

    /// Splits into even and odd homogeneous parts.
    pub fn split_parity(&self) -> (SuperPoly, SuperPoly) {
        let mut even = Self::zero(self.flavor);
        let mut odd = Self::zero(self.flavor);
        for (t, c) in &self.terms {
            if t.odd {
                odd.add_term(*t, c.clone());
            } else {
                even.add_term(*t, c.clone());
            }
        }
        (even, odd)
    }

    pub fn scale(&self, c: &Rational) -> SuperPoly {
        let mut out = Self::zero(self.flavor);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.terms {
            out.terms.insert(*t, v * c);
        }
        out
    }

    fn check_flavor(&self, other: &SuperPoly) -> Result<()> {
        if self.flavor == other.flavor {
            Ok(())
        } else {
            Err(Error::FlavorMismatch(format!(
                "{:?} vs {:?}",
                self.flavor, other.flavor
            )))
        }
    }

    pub fn try_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_flavor(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, c.clone());
        }
        Ok(out)
    }

    /// Super-commutative product; `ξ·ξ = 0`.
    pub fn try_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_flavor(other)?;
        let mut out = Self::zero(self.flavor);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if s.odd && t.odd {
                    continue;
                }
                out.add_term(Term::new(s.deg + t.deg, s.odd || t.odd), a * b);
            }
        }
        Ok(out)
    }

    /// `d/dx` for [`Var::Even`]; the left derivative `∂_ξ` for [`Var::Odd`].
    pub fn derive(&self, var: Var) -> SuperPoly {
        let mut out = Self::zero(self.flavor);
        match var {
            Var::Even => {
                for (t, c) in &self.terms {
                    if t.deg > 0 {
                        out.add_term(Term::new(t.deg - 1, t.odd), c * qi(t.deg as i64));
                    }
                }
            }
            Var::Odd => {
                for (t, c) in &self.terms {
                    if t.odd {
                        out.add_term(Term::new(t.deg, false), c.clone());
                    }
                }
            }
        }
        out
    }

    /// `∂^k` in the even variable.
    pub fn derive_n(&self, k: u32) -> SuperPoly {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derive(Var::Even);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    /// Parses the text form `c*x^a*xi^b + ...` (or with `t`, `theta`).
    pub fn parse(text: &str, flavor: Flavor) -> Result<SuperPoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let starts_term = (ch == '+' || ch == '-')
                && !current.is_empty()
                && !matches!(prev, Some('*') | Some('^') | Some('/'));
            if starts_term {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut out = Self::zero(flavor);
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let mut coeff = Rational::one();
            let mut deg = 0u32;
            let mut odd = 0u32;
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                if base == flavor.even_name() {
                    deg += exp;
                } else if base == flavor.odd_name() {
                    odd += exp;
                } else {
                    coeff *= rational::parse(factor)?;
                }
            }
            if odd > 1 {
                continue;
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Term::new(deg, odd == 1), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            let magnitude = if c < &Rational::zero() { -c } else { c.clone() };
            let bare = t.deg == 0 && !t.odd;
            if !magnitude.is_one() || bare {
                factors.push(rational::format(&magnitude));
            }
            match t.deg {
                0 => {}
                1 => factors.push(self.flavor.even_name().to_string()),
                d => factors.push(format!("{}^{d}", self.flavor.even_name())),
            }
            if t.odd {
                factors.push(self.flavor.odd_name().to_string());
            }
            let negative = c < &Rational::zero();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

// Operator sugar for same-flavor arithmetic. Flavor mismatches panic here;
// use `try_add` / `try_mul` when flavors are not known to agree.

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(rhs).expect("flavor mismatch in +")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(&-rhs).expect("flavor mismatch in -")
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_mul(rhs).expect("flavor mismatch in *")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    const G: Flavor = Flavor::General;

    fn p(s: &str) -> SuperPoly {
        SuperPoly::parse(s, G).unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let xi = SuperPoly::odd_var(G);
        assert!((&xi * &xi).is_zero());
    }

    #[test]
    fn products() {
        assert_eq!(&p("x") * &p("x*xi"), p("x^2*xi"));
        let xi = SuperPoly::odd_var(G);
        let x = SuperPoly::even_var(G);
        assert!((&(&xi * &x) - &(&x * &xi)).is_zero());
    }

    #[test]
    fn flavor_mismatch_is_an_error() {
        let a = SuperPoly::one(Flavor::General);
        let b = SuperPoly::one(Flavor::Contact);
        assert!(matches!(a.try_mul(&b), Err(Error::FlavorMismatch(_))));
    }

    #[test]
    fn derivatives() {
        let f = p("x^2*xi");
        assert_eq!(f.derive(Var::Even), p("2*x*xi"));
        assert_eq!(f.derive(Var::Odd), p("x^2"));
        assert!(p("x*xi").derive(Var::Odd).derive(Var::Odd).is_zero());
    }

    #[test]
    fn parity_kinds() {
        assert_eq!(p("x^3").parity(), ParityKind::Even);
        assert_eq!(p("x*xi").parity(), ParityKind::Odd);
        assert_eq!(p("1 + xi").parity(), ParityKind::Mixed);
        assert!(p("1 + xi").homogeneous_parity().is_err());
    }

    #[test]
    fn text_roundtrip() {
        let f = p("-1/2*x^3*xi + 2 - x");
        assert_eq!(f.coeff(3, true), q(-1, 2));
        assert_eq!(f.coeff(0, false), qi(2));
        assert_eq!(f.coeff(1, false), qi(-1));
        assert_eq!(p(&f.to_string()), f);
        let c = SuperPoly::parse("t*theta - 3*t^2", Flavor::Contact).unwrap();
        assert_eq!(c.to_string(), "t*theta - 3*t^2");
    }

    fn homogeneous() -> impl Strategy<Value = SuperPoly> {
        (
            any::<bool>(),
            prop::collection::vec((0u32..5, -6i64..6, 1i64..4), 0..4),
        )
            .prop_map(|(odd, terms)| {
                let mut f = SuperPoly::zero(G);
                for (d, a, b) in terms {
                    f = &f + &SuperPoly::term(G, q(a, b), d, odd);
                }
                f
            })
    }

    fn parity_of(f: &SuperPoly) -> Parity {
        f.homogeneous_parity().unwrap()
    }

    proptest! {
        #[test]
        fn super_commutative(f in homogeneous(), g in homogeneous()) {
            let sign = parity_of(&f).swap_sign(parity_of(&g));
            prop_assert_eq!(&f * &g, (&g * &f).scale(&sign));
        }

        #[test]
        fn odd_leibniz_rule(f in homogeneous(), g in homogeneous()) {
            let lhs = (&f * &g).derive(Var::Odd);
            let sign = rational::sign(parity_of(&f).bit());
            let rhs = &(&f.derive(Var::Odd) * &g) + &(&f * &g.derive(Var::Odd)).scale(&sign);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associative(f in homogeneous(), g in homogeneous(), h in homogeneous()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }
    }
}
