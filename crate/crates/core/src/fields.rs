//! Vector fields, contact fields, the odd operator `D_θ` and Lie derivatives
//! on weighted densities.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, qi, Rational};
use crate::superpoly::{Flavor, Parity, ParityKind, SuperPoly, Var};

/// `P ∂ + Q δ`, where `∂` and `δ` are the even and odd coordinate derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    even: SuperPoly,
    odd: SuperPoly,
    parity: Parity,
}

impl VectorField {
    /// Builds `even·∂ + odd·δ`, inferring the parity.
    pub fn new(even: SuperPoly, odd: SuperPoly) -> Result<Self> {
        if even.flavor() != odd.flavor() {
            return Err(Error::FlavorMismatch(format!(
                "{:?} vs {:?}",
                even.flavor(),
                odd.flavor()
            )));
        }
        let from_even = (!even.is_zero())
            .then(|| even.homogeneous_parity())
            .transpose()?;
        let from_odd = (!odd.is_zero())
            .then(|| odd.homogeneous_parity().map(Parity::flip))
            .transpose()?;
        let parity = match (from_even, from_odd) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::MixedParity(format!("({even})∂ + ({odd})δ")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => Parity::Even,
        };
        Ok(VectorField { even, odd, parity })
    }

    /// Parses the two coefficients from text, e.g. `("x^2", "0")`.
    pub fn parse(even: &str, odd: &str, flavor: Flavor) -> Result<Self> {
        Self::new(
            SuperPoly::parse(even, flavor)?,
            SuperPoly::parse(odd, flavor)?,
        )
    }

    pub fn even_part(&self) -> &SuperPoly {
        &self.even
    }

    pub fn odd_part(&self) -> &SuperPoly {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn flavor(&self) -> Flavor {
        self.even.flavor()
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// `X(h) = P ∂h + Q δh`.
    pub fn apply(&self, h: &SuperPoly) -> SuperPoly {
        &(&self.even * &h.derive(Var::Even)) + &(&self.odd * &h.derive(Var::Odd))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
            parity: self.parity,
        }
    }

    pub fn try_add(&self, other: &VectorField) -> Result<VectorField> {
        VectorField::new(
            self.even.try_add(&other.even)?,
            self.odd.try_add(&other.odd)?,
        )
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})d + ({})delta", self.even, self.odd)
    }
}

/// Which volume symbol a density weight multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `f (dx)^w` on the line.
    LineDx,
    /// `φ α^{w/2}` on the contact superstring, `α = dt + θ dθ`.
    ContactAlpha,
    /// `f vol^w` on the (1|1) superdomain.
    SuperVol,
}

/// `coeff · (vol)^weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDensity {
    pub coeff: SuperPoly,
    pub weight: Rational,
    pub convention: Convention,
}

impl WeightedDensity {
    pub fn new(coeff: SuperPoly, weight: Rational, convention: Convention) -> Self {
        WeightedDensity {
            coeff,
            weight,
            convention,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.coeff.flavor()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// `Div(P∂ + Qδ) = ∂P/∂x + (−1)^{p(Q)} ∂Q/∂ξ`.
pub fn divergence(x: &VectorField) -> SuperPoly {
    let odd_parity = x.parity.flip();
    let odd_term = x
        .odd
        .derive(Var::Odd)
        .scale(&rational::sign(odd_parity.bit()));
    &x.even.derive(Var::Even) + &odd_term
}

/// `K_f = (2 − θ∂_θ)(f) ∂_t − (−1)^{p(f)} D_θ(f) ∂_θ`.
pub fn contact_field(f: &SuperPoly) -> Result<VectorField> {
    require_contact(f)?;
    let parity = f.homogeneous_parity()?;
    let theta = SuperPoly::odd_var(Flavor::Contact);
    let even = &f.scale(&qi(2)) - &(&theta * &f.derive(Var::Odd));
    let odd = d_theta(f).scale(&-rational::sign(parity.bit()));
    let field = VectorField::new(even, odd)?;
    debug_assert!(field.is_zero() || field.parity == parity);
    Ok(VectorField { parity, ..field })
}

/// Recovers `f` from `K_f`; errors if the field is not a contact field.
pub fn generating_function(x: &VectorField) -> Result<SuperPoly> {
    if x.flavor() != Flavor::Contact {
        return Err(Error::NotContact);
    }
    // With f = f0 + θ f1, the ∂_t coefficient is 2 f0 + θ f1.
    let (p0, p1) = x.even.split_parity();
    let f = &p0.scale(&rational::q(1, 2)) + &p1;
    if f.is_zero() && x.is_zero() {
        return Ok(f);
    }
    let candidate = contact_field(&f).map_err(|_| Error::NotContact)?;
    if candidate.even == x.even && candidate.odd == x.odd {
        Ok(f)
    } else {
        Err(Error::NotContact)
    }
}

/// `{f, g} = (2 − θ∂_θ)f · ∂_t g − ∂_t f · (2 − θ∂_θ)g − (−1)^{p(f)} ∂_θ f · ∂_θ g`.
pub fn contact_bracket(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    require_contact(f)?;
    require_contact(g)?;
    let pf = f.homogeneous_parity()?;
    g.homogeneous_parity()?;
    let theta = SuperPoly::odd_var(Flavor::Contact);
    let euler = |h: &SuperPoly| &h.scale(&qi(2)) - &(&theta * &h.derive(Var::Odd));
    let first = &euler(f) * &g.derive(Var::Even);
    let second = &f.derive(Var::Even) * &euler(g);
    let third = (&f.derive(Var::Odd) * &g.derive(Var::Odd)).scale(&rational::sign(pf.bit()));
    Ok(&(&first - &second) - &third)
}

/// `D_θ = ∂_θ − θ ∂_t`.
pub fn d_theta(f: &SuperPoly) -> SuperPoly {
    let theta = SuperPoly::odd_var(f.flavor());
    &f.derive(Var::Odd) - &(&theta * &f.derive(Var::Even))
}

/// The supercommutator `[X, Y] = X∘Y − (−1)^{p(X)p(Y)} Y∘X`.
pub fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.flavor() != y.flavor() {
        return Err(Error::FlavorMismatch(format!(
            "{:?} vs {:?}",
            x.flavor(),
            y.flavor()
        )));
    }
    let s = x.parity.swap_sign(y.parity);
    let even = &x.apply(&y.even) - &y.apply(&x.even).scale(&s);
    let odd = &x.apply(&y.odd) - &y.apply(&x.odd).scale(&s);
    let parity = x.parity.add(y.parity);
    let field = VectorField::new(even, odd)?;
    Ok(VectorField { parity, ..field })
}

/// `L_X (h vol^w) = (X(h) + w·λ_X·h) vol^w`, with `λ_X = Div X` for the line and
/// super-volume conventions and `λ_{K_f} = ∂_t f` (the factor by which `K_f`
/// rescales `α^{1/2}`) for the contact convention.
pub fn lie_derivative(x: &VectorField, d: &WeightedDensity) -> Result<WeightedDensity> {
    if x.flavor() != d.flavor() {
        return Err(Error::FlavorMismatch(format!(
            "{:?} vs {:?}",
            x.flavor(),
            d.flavor()
        )));
    }
    let scaling = match d.convention {
        Convention::ContactAlpha => generating_function(x)?.derive(Var::Even),
        Convention::LineDx | Convention::SuperVol => divergence(x),
    };
    let coeff = lie_coefficient(x, &scaling, &d.weight, &d.coeff);
    Ok(WeightedDensity::new(coeff, d.weight.clone(), d.convention))
}

/// `X(h) + w·λ·h` for a precomputed scaling term `λ`.
pub(crate) fn lie_coefficient(
    x: &VectorField,
    scaling: &SuperPoly,
    weight: &Rational,
    h: &SuperPoly,
) -> SuperPoly {
    let mut out = x.apply(h);
    if !weight.is_zero() {
        out = &out + &(scaling * h).scale(weight);
    }
    out
}

fn require_contact(f: &SuperPoly) -> Result<()> {
    if f.flavor() == Flavor::Contact {
        Ok(())
    } else {
        Err(Error::FlavorMismatch(
            "contact operations need (t, theta) coordinates".into(),
        ))
    }
}

/// Parity of a homogeneous polynomial, for callers that already checked it.
pub(crate) fn parity_of(f: &SuperPoly) -> Parity {
    match f.parity() {
        ParityKind::Odd => Parity::Odd,
        _ => Parity::Even,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    const G: Flavor = Flavor::General;
    const C: Flavor = Flavor::Contact;

    fn vf(p: &str, q: &str) -> VectorField {
        VectorField::parse(p, q, G).unwrap()
    }

    fn c(s: &str) -> SuperPoly {
        SuperPoly::parse(s, C).unwrap()
    }

    fn kf(s: &str) -> VectorField {
        contact_field(&c(s)).unwrap()
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(divergence(&vf("x", "0")), SuperPoly::one(G));
        assert_eq!(
            divergence(&vf("0", "xi")),
            SuperPoly::parse("-1", G).unwrap()
        );
        assert!(divergence(&vf("xi", "0")).is_zero());
    }

    #[test]
    fn parity_inference() {
        assert_eq!(vf("xi", "0").parity(), Parity::Odd);
        assert_eq!(vf("0", "x").parity(), Parity::Odd);
        assert_eq!(vf("x^2", "x*xi").parity(), Parity::Even);
        assert!(VectorField::parse("x", "x", G).is_err());
    }

    #[test]
    fn line_lie_derivative() {
        let w = q(3, 5);
        let d = WeightedDensity::new(SuperPoly::one(G), w.clone(), Convention::LineDx);
        let out = lie_derivative(&vf("x", "0"), &d).unwrap();
        assert_eq!(out.coeff, SuperPoly::constant(G, w.clone()));

        let f = SuperPoly::parse("x^3 + 2*x", G).unwrap();
        let d = WeightedDensity::new(f.clone(), w.clone(), Convention::LineDx);
        let out = lie_derivative(&vf("1", "0"), &d).unwrap();
        assert_eq!(out.coeff, f.derive(Var::Even));

        let a = 4;
        let d = WeightedDensity::new(
            SuperPoly::monomial(G, a, false),
            w.clone(),
            Convention::LineDx,
        );
        let out = lie_derivative(&vf("x^2", "0"), &d).unwrap();
        let expected = qi(a as i64) + qi(2) * &w;
        assert_eq!(out.coeff, SuperPoly::term(G, expected, a + 1, false));
    }

    #[test]
    fn contact_field_examples() {
        assert_eq!(kf("1"), VectorField::parse("2", "0", C).unwrap());
        assert_eq!(kf("t"), VectorField::parse("2*t", "theta", C).unwrap());
        // The formula gives a plus sign on ∂_θ.
        assert_eq!(kf("theta"), VectorField::parse("theta", "1", C).unwrap());
        assert_eq!(kf("theta").parity(), Parity::Odd);
        assert!(contact_field(&c("1 + theta")).is_err());
    }

    #[test]
    fn contact_bracket_examples() {
        assert_eq!(contact_bracket(&c("theta"), &c("theta")).unwrap(), c("1"));
        assert_eq!(
            contact_bracket(&c("t*theta"), &c("1")).unwrap(),
            c("-2*theta")
        );
        assert_eq!(contact_bracket(&c("t*theta"), &c("theta")).unwrap(), c("t"));
    }

    #[test]
    fn d_theta_examples() {
        assert_eq!(d_theta(&c("theta")), c("1"));
        assert_eq!(d_theta(&c("t")), c("-theta"));
        for k in 1..=10u32 {
            let tk = SuperPoly::monomial(C, k, false);
            let twice = d_theta(&d_theta(&tk));
            // D_θ² = −∂_t with this sign of D_θ.
            assert_eq!(twice, SuperPoly::term(C, qi(-(k as i64)), k - 1, false));
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(
            bracket(&vf("x", "0"), &vf("1", "0")).unwrap(),
            vf("-1", "0")
        );
        // Two odd fields anticommute: {xδ, ξ∂} = x∂ + ξδ = E.
        assert_eq!(
            bracket(&vf("0", "x"), &vf("xi", "0")).unwrap(),
            vf("x", "xi")
        );
        let kt = kf("theta");
        assert_eq!(bracket(&kt, &kt).unwrap(), kf("1"));
    }

    #[test]
    fn contact_fields_are_recognized() {
        assert_eq!(
            generating_function(&kf("t^2*theta")).unwrap(),
            c("t^2*theta")
        );
        let not_contact = VectorField::parse("t", "0", C).unwrap();
        assert_eq!(generating_function(&not_contact), Err(Error::NotContact));
        let d = WeightedDensity::new(c("t"), qi(1), Convention::ContactAlpha);
        assert_eq!(lie_derivative(&not_contact, &d), Err(Error::NotContact));
    }

    #[test]
    fn contact_scaling_matches_divergence() {
        for f in ["1", "t", "t^2", "theta", "t*theta", "t^3*theta", "t^4"] {
            let f = c(f);
            let k = contact_field(&f).unwrap();
            assert_eq!(divergence(&k), f.derive(Var::Even));
        }
    }

    fn monomials(flavor: Flavor, max_deg: u32) -> Vec<SuperPoly> {
        let mut out = Vec::new();
        for d in 0..=max_deg {
            for odd in [false, true] {
                out.push(SuperPoly::monomial(flavor, d, odd));
            }
        }
        out
    }

    #[test]
    fn contact_field_is_a_homomorphism() {
        let ms = monomials(C, 6);
        for f in &ms {
            for g in &ms {
                let lhs = bracket(&contact_field(f).unwrap(), &contact_field(g).unwrap()).unwrap();
                let rhs = contact_field(&contact_bracket(f, g).unwrap()).unwrap();
                assert_eq!(lhs.even_part(), rhs.even_part(), "f={f} g={g}");
                assert_eq!(lhs.odd_part(), rhs.odd_part(), "f={f} g={g}");
            }
        }
    }

    #[test]
    fn contact_bracket_super_antisymmetry() {
        let ms = monomials(C, 5);
        for f in &ms {
            for g in &ms {
                let s = parity_of(f).swap_sign(parity_of(g));
                let fg = contact_bracket(f, g).unwrap();
                let gf = contact_bracket(g, f).unwrap();
                assert_eq!(fg, gf.scale(&-s));
            }
        }
    }

    fn rep_check(x: &VectorField, y: &VectorField, h: &SuperPoly, w: &Rational, conv: Convention) {
        let d = WeightedDensity::new(h.clone(), w.clone(), conv);
        let xy = bracket(x, y).unwrap();
        let lhs = lie_derivative(&xy, &d).unwrap();
        let ly = lie_derivative(y, &d).unwrap();
        let lx = lie_derivative(x, &d).unwrap();
        let xy_h = lie_derivative(x, &ly).unwrap();
        let yx_h = lie_derivative(y, &lx).unwrap();
        let s = x.parity().swap_sign(y.parity());
        assert_eq!(lhs.coeff, &xy_h.coeff - &yx_h.coeff.scale(&s));
    }

    #[test]
    fn lie_derivative_is_a_representation() {
        let w = q(-2, 7);
        let line = [vf("1", "0"), vf("x", "0"), vf("x^2", "0")];
        let superdomain = [
            vf("1", "0"),
            vf("0", "1"),
            vf("xi", "0"),
            vf("x", "0"),
            vf("0", "xi"),
            vf("0", "x"),
            vf("x*xi", "0"),
            vf("x^2", "x*xi"),
        ];
        let contact: Vec<_> = ["1", "theta", "t", "t*theta", "t^2"]
            .iter()
            .map(|s| kf(s))
            .collect();
        for h in monomials(G, 10)
            .into_iter()
            .filter(|h| h.parity() == ParityKind::Even)
        {
            for x in &line {
                for y in &line {
                    rep_check(x, y, &h, &w, Convention::LineDx);
                }
            }
        }
        for h in monomials(G, 10) {
            for x in &superdomain {
                for y in &superdomain {
                    rep_check(x, y, &h, &w, Convention::SuperVol);
                }
            }
        }
        for h in monomials(C, 10) {
            for x in &contact {
                for y in &contact {
                    rep_check(x, y, &h, &w, Convention::ContactAlpha);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn d_theta_squared_is_minus_d_t(
            terms in prop::collection::vec((0u32..=10, any::<bool>(), -9i64..9), 0..6)
        ) {
            let mut f = SuperPoly::zero(C);
            for (d, odd, a) in terms {
                f = &f + &SuperPoly::term(C, qi(a), d, odd);
            }
            prop_assert_eq!(d_theta(&d_theta(&f)), -&f.derive(Var::Even));
        }
    }
}
