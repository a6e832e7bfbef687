use crate::error::Result;
use crate::fields::{contact_field, divergence, generating_function, Convention, VectorField};
use crate::superpoly::{Flavor, SuperPoly, Var};

use super::ops::Algebra;

/// How a generator is tested against an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// The full defect polynomial must vanish.
    Defect,
    /// Only its value at the origin must vanish (singular-vector condition).
    Jet,
    /// At the origin the operator must be an eigenvector of the generator.
    JetEigen,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub field: VectorField,
    /// Factor multiplying the weight in the Lie derivative.
    pub scaling: SuperPoly,
    pub check: Check,
}

impl Generator {
    pub fn defect(name: &str, field: VectorField, convention: Convention) -> Result<Self> {
        let scaling = match convention {
            Convention::ContactAlpha => generating_function(&field)?.derive(Var::Even),
            Convention::LineDx | Convention::SuperVol => divergence(&field),
        };
        Ok(Generator {
            name: name.to_string(),
            field,
            scaling,
            check: Check::Defect,
        })
    }

    fn with_check(mut self, check: Check) -> Self {
        self.check = check;
        self
    }
}

fn general(name: &str, even: &str, odd: &str, convention: Convention) -> Generator {
    let field = VectorField::parse(even, odd, Flavor::General).expect("static field");
    Generator::defect(name, field, convention).expect("static field")
}

/// `K_f` as a generator for the contact convention.
pub fn contact_generator(name: &str, f: &SuperPoly) -> Result<Generator> {
    Generator::defect(name, contact_field(f)?, Convention::ContactAlpha)
}

fn contact(name: &str, f: &str) -> Generator {
    let f = SuperPoly::parse(f, Flavor::Contact).expect("static polynomial");
    contact_generator(name, &f).expect("static field")
}

/// The generators an invariant operator is checked against.
///
/// For pgl(2|1) the targets are not densities, so only the translations and
/// `X_+` are checked on the full defect; `s_x`, `s_ξ` are checked at the
/// origin and `H_1`, `H_2` through the eigenvector condition. `X_−` moves the
/// singular vector inside its fiber and is not a check.
pub fn full_generators(algebra: Algebra) -> Vec<Generator> {
    match algebra {
        Algebra::Pgl2 => {
            let c = Convention::LineDx;
            vec![
                general("d", "1", "0", c),
                general("x*d", "x", "0", c),
                general("x^2*d", "x^2", "0", c),
            ]
        }
        Algebra::Osp12 => vec![
            contact("K_1", "1"),
            contact("K_theta", "theta"),
            contact("K_t", "t"),
            contact("K_t*theta", "t*theta"),
            contact("K_t^2", "t^2"),
        ],
        Algebra::Pgl21 => {
            let c = Convention::SuperVol;
            vec![
                general("d", "1", "0", c),
                general("delta", "0", "1", c),
                general("X_+", "0", "x", c),
                general("s_xi", "x*xi", "0", c).with_check(Check::Jet),
                general("s_x", "x^2", "x*xi", c).with_check(Check::Jet),
                general("H_1", "x", "0", c).with_check(Check::JetEigen),
                general("H_2", "0", "xi", c).with_check(Check::JetEigen),
            ]
        }
    }
}

/// Raising generators whose singular-vector conditions define the oracle system.
pub fn raising_generators(algebra: Algebra) -> Vec<Generator> {
    match algebra {
        Algebra::Pgl2 => {
            vec![general("x^2*d", "x^2", "0", Convention::LineDx).with_check(Check::Jet)]
        }
        Algebra::Osp12 => vec![contact("K_t*theta", "t*theta").with_check(Check::Jet)],
        Algebra::Pgl21 => vec![
            general("X_+", "0", "x", Convention::SuperVol).with_check(Check::Jet),
            general("s_xi", "x*xi", "0", Convention::SuperVol).with_check(Check::Jet),
        ],
    }
}

/// All `K_f` with `f` a monomial of `t`-degree at most `max_degree`.
pub fn contact_generators(max_degree: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for odd in [false, true] {
            let f = SuperPoly::monomial(Flavor::Contact, d, odd);
            out.push(contact_generator(&format!("K_{f}"), &f).expect("monomial is homogeneous"));
        }
    }
    out
}

/// Looks up generators by name in the full set plus the contact monomials.
pub fn subset(algebra: Algebra, names: &[&str]) -> Vec<Generator> {
    full_generators(algebra)
        .into_iter()
        .filter(|g| names.contains(&g.name.as_str()))
        .collect()
}
