use num_traits::Zero;

use crate::closedform;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::Rational;
use crate::superpoly::{Parity, SuperPoly};

use super::calibrate::WeightMap;
use super::generators::{raising_generators, Check, Generator};
use super::ops::{ansatz, Algebra, BiDiffOp, Monomial};

/// Exact classification of invariant operators of one order at one weight pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub algebra: Algebra,
    pub order: u32,
    /// Density weights of the arguments (operator side).
    pub weights: [Rational; 2],
    pub dim_even: usize,
    pub dim_odd: usize,
    /// Even basis elements first, each in canonical normalization.
    pub basis: Vec<BiDiffOp>,
    pub case_label: String,
}

impl ClassificationResult {
    pub fn basis_of(&self, parity: Parity) -> impl Iterator<Item = &BiDiffOp> {
        self.basis.iter().filter(move |b| b.parity == parity)
    }
}

/// A generator and monomial pair on which an operator fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    /// `(degree, odd)` of the first argument.
    pub f: (u32, bool),
    pub g: (u32, bool),
    pub residual: SuperPoly,
}

/// Monomials `x^a ξ^e` with `a ≤ bound`.
pub(crate) fn test_monomials(algebra: Algebra, bound: u32) -> Vec<SuperPoly> {
    let flags: &[bool] = if algebra.has_odd_coordinate() {
        &[false, true]
    } else {
        &[false]
    };
    let mut out = Vec::new();
    for a in 0..=bound {
        for &e in flags {
            out.push(SuperPoly::monomial(algebra.flavor(), a, e));
        }
    }
    out
}

fn key_of(h: &SuperPoly) -> (u32, bool) {
    let (t, _) = h.terms().next().expect("monomial");
    (t.deg, t.odd)
}

/// Smallest degree bound accepted by [`is_invariant`].
///
/// Applied to `x^a`, `x^b`, every defect coefficient is a polynomial in `a`
/// and `b` of degree at most `order + 1` in each, so vanishing on a grid of
/// `2·order + 4` points per axis forces it to vanish identically.
pub fn minimal_degree_bound(order: u32) -> u32 {
    2 * order + 3
}

/// Finds the first generator and monomial pair violating invariance.
pub fn find_violation(
    op: &BiDiffOp,
    generators: &[Generator],
    degree_bound: u32,
) -> Result<Option<Violation>> {
    let needed = minimal_degree_bound(op.order);
    if degree_bound < needed {
        return Err(Error::DegreeBound {
            bound: degree_bound as usize,
            order: op.order as usize,
            needed: needed as usize,
        });
    }
    let monomials = test_monomials(op.algebra, degree_bound);
    for gen in generators {
        if gen.field.flavor() != op.algebra.flavor() {
            return Err(Error::FlavorMismatch(format!(
                "generator {} for {}",
                gen.name, op.algebra
            )));
        }
        let mut eigenvalue: Option<Rational> = None;
        for f in &monomials {
            for g in &monomials {
                let residual = match gen.check {
                    Check::Defect => op.defect_poly(gen, f, g),
                    Check::Jet => {
                        let c = op.transported(gen, f, g).constant_term();
                        SuperPoly::constant(f.flavor(), c)
                    }
                    Check::JetEigen => {
                        let moved = op.transported(gen, f, g).constant_term();
                        let value = op.apply_poly(f, g).constant_term();
                        if eigenvalue.is_none() && !value.is_zero() {
                            eigenvalue = Some(&moved / &value);
                        }
                        let chi = eigenvalue.clone().unwrap_or_else(Rational::zero);
                        SuperPoly::constant(f.flavor(), moved - chi * value)
                    }
                };
                if !residual.is_zero() {
                    return Ok(Some(Violation {
                        generator: gen.name.clone(),
                        f: key_of(f),
                        g: key_of(g),
                        residual,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// True iff the operator passes every generator's check on the monomial grid.
pub fn is_invariant(op: &BiDiffOp, generators: &[Generator], degree_bound: u32) -> Result<bool> {
    Ok(find_violation(op, generators, degree_bound)?.is_none())
}

/// Rows of the singular-vector system over `keys`: one row per raising
/// generator and monomial pair, holding the value at the origin.
pub(crate) fn singular_rows(
    algebra: Algebra,
    order: u32,
    weights: &[Rational; 2],
    keys: &[Monomial],
) -> Vec<Vec<Rational>> {
    let gens = raising_generators(algebra);
    let monomials = test_monomials(algebra, order + 2);
    let unit_ops: Vec<BiDiffOp> = keys
        .iter()
        .map(|k| {
            BiDiffOp::new(
                algebra,
                order,
                weights.clone(),
                [(*k, Rational::from_integer(1.into()))],
            )
            .expect("ansatz key")
        })
        .collect();
    let mut rows = Vec::new();
    for gen in &gens {
        for f in &monomials {
            for g in &monomials {
                let row: Vec<Rational> = unit_ops
                    .iter()
                    .map(|op| op.transported(gen, f, g).constant_term())
                    .collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Null space of the singular-vector system restricted to `keys`.
pub fn solve_sector(
    algebra: Algebra,
    order: u32,
    weights: &[Rational; 2],
    keys: &[Monomial],
) -> Vec<Vec<Rational>> {
    if keys.is_empty() {
        return Vec::new();
    }
    nullspace(&singular_rows(algebra, order, weights, keys), keys.len())
}

/// Classifies invariant operators of the given order between densities of
/// weights `w1`, `w2` by solving the singular-vector conditions exactly.
pub fn solve_invariant_space(
    algebra: Algebra,
    order: u32,
    w1: &Rational,
    w2: &Rational,
) -> Result<ClassificationResult> {
    let weights = [w1.clone(), w2.clone()];
    let mut basis = Vec::new();
    let mut dims = [0usize; 2];
    for parity in [Parity::Even, Parity::Odd] {
        let keys = ansatz(algebra, order, parity);
        for v in solve_sector(algebra, order, &weights, &keys) {
            basis.push(BiDiffOp::from_vector(
                algebra,
                order,
                weights.clone(),
                &keys,
                &v,
            )?);
            dims[parity.bit()] += 1;
        }
    }
    let map = WeightMap::frozen(algebra);
    let label = closedform::case_label(algebra, order, &map.to_sv(w1), &map.to_sv(w2));
    Ok(ClassificationResult {
        algebra,
        order,
        weights,
        dim_even: dims[0],
        dim_odd: dims[1],
        basis,
        case_label: label.tag(),
    })
}

/// Weight sectors of the pgl(2|1) ansatz: `A` (no odd derivative), `D` (two),
/// `BC` (one).
pub fn pgl21_sectors(order: u32) -> [Vec<Monomial>; 3] {
    let even = ansatz(Algebra::Pgl21, order, Parity::Even);
    let (d, a): (Vec<_>, Vec<_>) = even.into_iter().partition(|k| k.o1 && k.o2);
    [a, d, ansatz(Algebra::Pgl21, order, Parity::Odd)]
}
