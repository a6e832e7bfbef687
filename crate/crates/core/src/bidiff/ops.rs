use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{d_theta, lie_coefficient, Convention, WeightedDensity};
use crate::rational::{self, qi, Rational};
use crate::superpoly::{Flavor, Parity, SuperPoly, Var};

use super::generators::Generator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Pgl2,
    Osp12,
    Pgl21,
}

impl Algebra {
    pub const ALL: [Algebra; 3] = [Algebra::Pgl2, Algebra::Osp12, Algebra::Pgl21];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Pgl2 => "pgl2",
            Algebra::Osp12 => "osp12",
            Algebra::Pgl21 => "pgl21",
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            Algebra::Osp12 => Flavor::Contact,
            Algebra::Pgl2 | Algebra::Pgl21 => Flavor::General,
        }
    }

    pub fn convention(self) -> Convention {
        match self {
            Algebra::Pgl2 => Convention::LineDx,
            Algebra::Osp12 => Convention::ContactAlpha,
            Algebra::Pgl21 => Convention::SuperVol,
        }
    }

    /// Whether arguments carry an odd coordinate.
    pub fn has_odd_coordinate(self) -> bool {
        self != Algebra::Pgl2
    }

    /// Shift of the output density weight relative to `w1 + w2`.
    ///
    /// For pgl(2|1) the target is not a density; the shift is zero and is only
    /// used with generators of zero divergence.
    pub fn weight_shift(self, order: u32) -> Rational {
        match self {
            Algebra::Pgl2 | Algebra::Osp12 => qi(order as i64),
            Algebra::Pgl21 => Rational::zero(),
        }
    }

    /// Total order of a key: derivative counts, with `D_θ` counted as one
    /// and `∂_t` as two for osp(1|2).
    pub fn key_order(self, key: &Monomial) -> u32 {
        let odd = key.o1 as u32 + key.o2 as u32;
        match self {
            Algebra::Pgl2 => key.d1 + key.d2,
            Algebra::Osp12 => 2 * (key.d1 + key.d2) + odd,
            Algebra::Pgl21 => key.d1 + key.d2 + odd,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pgl2" => Ok(Algebra::Pgl2),
            "osp12" => Ok(Algebra::Osp12),
            "pgl21" => Ok(Algebra::Pgl21),
            other => Err(Error::Parse(format!("unknown algebra {other:?}"))),
        }
    }
}

/// `∂^{d1} ε^{o1} ⊗ ∂^{d2} ε^{o2}`, where `ε` is the odd derivative of the
/// algebra (`δ` or `D_θ`), applied after the even derivatives in each slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub d1: u32,
    pub o1: bool,
    pub d2: u32,
    pub o2: bool,
}

impl Monomial {
    pub fn new(d1: u32, o1: bool, d2: u32, o2: bool) -> Self {
        Monomial { d1, o1, d2, o2 }
    }

    /// Shorthand for an even key `f^{(d1)} g^{(d2)}`.
    pub fn even(d1: u32, d2: u32) -> Self {
        Self::new(d1, false, d2, false)
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.o1 ^ self.o2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d1:{},o1:{},d2:{},o2:{}",
            self.d1, self.o1 as u8, self.d2, self.o2 as u8
        )
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed monomial key {s:?}"));
        let mut vals = [0u32; 4];
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        for (slot, (part, name)) in parts.iter().zip(["d1", "o1", "d2", "o2"]).enumerate() {
            let (k, v) = part.split_once(':').ok_or_else(bad)?;
            if k.trim() != name {
                return Err(bad());
            }
            vals[slot] = v.trim().parse().map_err(|_| bad())?;
        }
        if vals[1] > 1 || vals[3] > 1 {
            return Err(bad());
        }
        Ok(Monomial::new(vals[0], vals[1] == 1, vals[2], vals[3] == 1))
    }
}

/// All monomial keys of the given total order and parity, sorted.
pub fn ansatz(algebra: Algebra, order: u32, parity: Parity) -> Vec<Monomial> {
    let mut keys = Vec::new();
    let flags: &[bool] = if algebra.has_odd_coordinate() {
        &[false, true]
    } else {
        &[false]
    };
    for &o1 in flags {
        for &o2 in flags {
            if Parity::from_bit(o1 ^ o2) != parity {
                continue;
            }
            for d1 in 0..=order {
                for d2 in 0..=order {
                    let key = Monomial::new(d1, o1, d2, o2);
                    if algebra.key_order(&key) == order {
                        keys.push(key);
                    }
                }
            }
        }
    }
    keys.sort();
    keys
}

/// A bilinear differential operator with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiDiffOp {
    pub algebra: Algebra,
    pub order: u32,
    /// Density weights of the two arguments.
    pub weights: [Rational; 2],
    pub parity: Parity,
    pub coeffs: BTreeMap<Monomial, Rational>,
}

impl BiDiffOp {
    pub fn new(
        algebra: Algebra,
        order: u32,
        weights: [Rational; 2],
        coeffs: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (key, c) in coeffs {
            if algebra.key_order(&key) != order {
                return Err(Error::InvalidArgument(format!(
                    "key {key} does not have order {order} for {algebra}"
                )));
            }
            if (key.o1 || key.o2) && !algebra.has_odd_coordinate() {
                return Err(Error::InvalidArgument(format!(
                    "odd key {key} for {algebra}"
                )));
            }
            let entry = table.entry(key).or_insert_with(Rational::zero);
            *entry += c;
        }
        table.retain(|_, c: &mut Rational| !c.is_zero());
        let parity = match table.keys().next() {
            Some(k) => k.parity(),
            None if algebra == Algebra::Osp12 => Parity::from_bit(order % 2 == 1),
            None => Parity::Even,
        };
        if table.keys().any(|k| k.parity() != parity) {
            return Err(Error::MixedParity("operator keys of both parities".into()));
        }
        Ok(BiDiffOp {
            algebra,
            order,
            weights,
            parity,
            coeffs: table,
        })
    }

    /// Builds an operator from a coefficient vector over `keys`.
    pub fn from_vector(
        algebra: Algebra,
        order: u32,
        weights: [Rational; 2],
        keys: &[Monomial],
        v: &[Rational],
    ) -> Result<Self> {
        Self::new(
            algebra,
            order,
            weights,
            keys.iter().copied().zip(v.iter().cloned()),
        )
    }

    pub fn coeff(&self, key: &Monomial) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients as a vector over `keys`.
    pub fn vector(&self, keys: &[Monomial]) -> Vec<Rational> {
        keys.iter().map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn output_weight(&self) -> Rational {
        &self.weights[0] + &self.weights[1] + self.algebra.weight_shift(self.order)
    }

    pub fn scale(&self, c: &Rational) -> BiDiffOp {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c));
        let mut out = self.clone();
        out.coeffs = coeffs.filter(|(_, v)| !v.is_zero()).collect();
        out
    }

    /// Same coefficients at different weights.
    pub fn with_weights(&self, weights: [Rational; 2]) -> BiDiffOp {
        BiDiffOp {
            weights,
            ..self.clone()
        }
    }

    fn slot(&self, h: &SuperPoly, d: u32, odd: bool) -> SuperPoly {
        let h = h.derive_n(d);
        if !odd {
            return h;
        }
        match self.algebra {
            Algebra::Osp12 => d_theta(&h),
            _ => h.derive(Var::Odd),
        }
    }

    /// `B(f, g)` on coefficient polynomials, with the Koszul sign
    /// `(−1)^{o2·p(f)}` for the second odd derivative passing `f`.
    pub fn apply_poly(&self, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(f.flavor());
        let (f_even, f_odd) = f.split_parity();
        for (part, pf) in [(f_even, 0usize), (f_odd, 1usize)] {
            if part.is_zero() {
                continue;
            }
            for (key, c) in &self.coeffs {
                let left = self.slot(&part, key.d1, key.o1);
                if left.is_zero() {
                    continue;
                }
                let right = self.slot(g, key.d2, key.o2);
                if right.is_zero() {
                    continue;
                }
                let sign = rational::sign(key.o2 as usize * pf);
                out = &out + &(&left * &right).scale(&(c * sign));
            }
        }
        out
    }

    fn check_args(&self, f: &WeightedDensity, g: &WeightedDensity) -> Result<()> {
        let flavor = self.algebra.flavor();
        let convention = self.algebra.convention();
        for (arg, w) in [(f, &self.weights[0]), (g, &self.weights[1])] {
            if arg.flavor() != flavor || arg.convention != convention {
                return Err(Error::FlavorMismatch(format!(
                    "{} operator applied to a {:?} density",
                    self.algebra, arg.convention
                )));
            }
            if &arg.weight != w {
                return Err(Error::WeightMismatch(format!(
                    "argument weight {} but operator expects {}",
                    rational::format(&arg.weight),
                    rational::format(w)
                )));
            }
        }
        Ok(())
    }

    /// Applies the operator to two densities of the operator's weights.
    pub fn apply(&self, f: &WeightedDensity, g: &WeightedDensity) -> Result<WeightedDensity> {
        self.check_args(f, g)?;
        Ok(WeightedDensity::new(
            self.apply_poly(&f.coeff, &g.coeff),
            self.output_weight(),
            self.algebra.convention(),
        ))
    }

    /// The full invariance defect
    /// `L_X B(f,g) − (−1)^{p(X)p(B)} [B(L_X f, g) + (−1)^{p(X)p(f)} B(f, L_X g)]`.
    pub fn defect(
        &self,
        x: &crate::fields::VectorField,
        f: &WeightedDensity,
        g: &WeightedDensity,
    ) -> Result<WeightedDensity> {
        self.check_args(f, g)?;
        let generator = Generator::defect("X", x.clone(), self.algebra.convention())?;
        let mut total = SuperPoly::zero(f.flavor());
        let (f_even, f_odd) = f.coeff.split_parity();
        for part in [f_even, f_odd] {
            if !part.is_zero() {
                total = &total + &self.defect_poly(&generator, &part, &g.coeff);
            }
        }
        Ok(WeightedDensity::new(
            total,
            self.output_weight(),
            self.algebra.convention(),
        ))
    }

    /// `B(L_X f, g) + (−1)^{p(X)p(f)} B(f, L_X g)`, times `(−1)^{p(X)p(B)}`;
    /// `f` must be homogeneous.
    pub(crate) fn transported(&self, gen: &Generator, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        let px = gen.field.parity();
        let pf = crate::fields::parity_of(f);
        let lf = lie_coefficient(&gen.field, &gen.scaling, &self.weights[0], f);
        let lg = lie_coefficient(&gen.field, &gen.scaling, &self.weights[1], g);
        let first = self.apply_poly(&lf, g);
        let second = self.apply_poly(f, &lg).scale(&px.swap_sign(pf));
        (&first + &second).scale(&px.swap_sign(self.parity))
    }

    pub(crate) fn defect_poly(&self, gen: &Generator, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        let out = self.apply_poly(f, g);
        let lout = lie_coefficient(&gen.field, &gen.scaling, &self.output_weight(), &out);
        &lout - &self.transported(gen, f, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn key_text_roundtrip() {
        let k = Monomial::new(3, true, 0, false);
        assert_eq!(k.to_string(), "d1:3,o1:1,d2:0,o2:0");
        assert_eq!("d1:3,o1:1,d2:0,o2:0".parse::<Monomial>().unwrap(), k);
        assert!("d1:3,o1:2,d2:0,o2:0".parse::<Monomial>().is_err());
        assert!("d1:3,o1:1".parse::<Monomial>().is_err());
    }

    #[test]
    fn ansatz_sizes() {
        assert_eq!(ansatz(Algebra::Pgl2, 4, Parity::Even).len(), 5);
        assert!(ansatz(Algebra::Pgl2, 4, Parity::Odd).is_empty());
        assert_eq!(ansatz(Algebra::Osp12, 4, Parity::Even).len(), 5);
        assert!(ansatz(Algebra::Osp12, 4, Parity::Odd).is_empty());
        assert_eq!(ansatz(Algebra::Osp12, 5, Parity::Odd).len(), 6);
        // Four families of lengths n+1, n, n, n−1.
        assert_eq!(ansatz(Algebra::Pgl21, 3, Parity::Even).len(), 4 + 2);
        assert_eq!(ansatz(Algebra::Pgl21, 3, Parity::Odd).len(), 3 + 3);
    }

    #[test]
    fn product_operator() {
        let w = [q(1, 2), q(1, 3)];
        let op =
            BiDiffOp::new(Algebra::Pgl2, 0, w.clone(), [(Monomial::even(0, 0), qi(1))]).unwrap();
        let f = WeightedDensity::new(
            SuperPoly::monomial(Flavor::General, 2, false),
            w[0].clone(),
            Convention::LineDx,
        );
        let g = WeightedDensity::new(
            SuperPoly::monomial(Flavor::General, 3, false),
            w[1].clone(),
            Convention::LineDx,
        );
        let out = op.apply(&f, &g).unwrap();
        assert_eq!(out.coeff, SuperPoly::monomial(Flavor::General, 5, false));
        assert_eq!(out.weight, q(5, 6));
        let wrong = WeightedDensity::new(g.coeff.clone(), qi(0), Convention::LineDx);
        assert!(matches!(
            op.apply(&f, &wrong),
            Err(Error::WeightMismatch(_))
        ));
    }

    #[test]
    fn rejects_bad_keys() {
        let w = [qi(0), qi(0)];
        assert!(
            BiDiffOp::new(Algebra::Pgl2, 2, w.clone(), [(Monomial::even(1, 0), qi(1))]).is_err()
        );
        let mixed = [
            (Monomial::new(1, true, 0, false), qi(1)),
            (Monomial::new(0, true, 0, true), qi(1)),
        ];
        assert!(matches!(
            BiDiffOp::new(Algebra::Pgl21, 2, w.clone(), mixed),
            Err(Error::MixedParity(_))
        ));
        assert!(BiDiffOp::new(
            Algebra::Pgl2,
            1,
            w,
            [(Monomial::new(0, true, 0, false), qi(1))]
        )
        .is_err());
    }
}
