//! Explicit operator families: Rankin–Cohen brackets, the Grozman operator,
//! order-one families, Cohen–Manin–Zagier super brackets, and the bidiagonal
//! coefficient systems with their case analysis for each algebra.
//!
//! Functions taking `μ1, μ2` without further comment use singular-vector
//! parameters; [`WeightMap`] converts to operator-side density weights.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bidiff::{Algebra, BiDiffOp, Monomial, WeightMap};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::{self, binomial, factorial, is_nonneg_even, q, qi, Rational};
use crate::superpoly::Parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Line, pgl(2).
    Line,
    /// Contact superstring, even order.
    ContactEven,
    /// Contact superstring, odd order.
    ContactOdd,
    /// (1|1) superdomain, pgl(2|1).
    Superdomain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub setting: Classification,
    pub case: String,
    /// Dimension of the solution space.
    pub parameter_count: usize,
}

impl CaseLabel {
    fn new(setting: Classification, case: &str, parameter_count: usize) -> Self {
        CaseLabel {
            setting,
            case: case.to_string(),
            parameter_count,
        }
    }

    /// Short tag, e.g. `"2a"`, `"even-generic"`, `"super-(i)"`.
    pub fn tag(&self) -> String {
        match self.setting {
            Classification::Line => self.case.clone(),
            Classification::ContactEven => format!("even-{}", self.case),
            Classification::ContactOdd => format!("odd-{}", self.case),
            Classification::Superdomain => format!("super-{}", self.case),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A closed-form family turned into operators at density weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub label: CaseLabel,
    pub basis: Vec<BiDiffOp>,
}

impl ClosedForm {
    pub fn basis_of(&self, parity: Parity) -> impl Iterator<Item = &BiDiffOp> {
        self.basis.iter().filter(move |b| b.parity == parity)
    }

    pub fn dims(&self) -> (usize, usize) {
        (
            self.basis_of(Parity::Even).count(),
            self.basis_of(Parity::Odd).count(),
        )
    }
}

/// Null space of the bidiagonal system `α_i y_i + β_i y_{i+1} = 0`.
pub fn chain_solutions(alpha: &[Rational], beta: &[Rational]) -> Vec<Vec<Rational>> {
    assert_eq!(alpha.len(), beta.len());
    let n = alpha.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n + 1];
            row[i] = alpha[i].clone();
            row[i + 1] = beta[i].clone();
            row
        })
        .collect();
    nullspace(&rows, n + 1)
}

fn first_zero(v: &[Rational]) -> Option<usize> {
    v.iter().position(|x| x.is_zero())
}

fn inv_factorials(i: u32, j: u32) -> Rational {
    (factorial(i as usize) * factorial(j as usize)).recip()
}

fn ops_from(
    algebra: Algebra,
    order: u32,
    weights: &[Rational; 2],
    terms: Vec<(Monomial, Rational)>,
) -> BiDiffOp {
    BiDiffOp::new(algebra, order, weights.clone(), terms).expect("closed-form keys fit the ansatz")
}

fn density_weights(algebra: Algebra, mu1: &Rational, mu2: &Rational) -> [Rational; 2] {
    let map = WeightMap::frozen(algebra);
    [map.to_density(mu1), map.to_density(mu2)]
}

fn product(
    algebra: Algebra,
    mu1: &Rational,
    mu2: &Rational,
    setting: Classification,
) -> ClosedForm {
    let w = density_weights(algebra, mu1, mu2);
    ClosedForm {
        label: CaseLabel::new(setting, "product", 1),
        basis: vec![ops_from(
            algebra,
            0,
            &w,
            vec![(Monomial::even(0, 0), Rational::one())],
        )],
    }
}

// ---------------------------------------------------------------------------
// Named operators.

/// Rankin–Cohen bracket: coefficient `(−1)^r C(μ1+n−1, n−r) C(μ2+n−1, r)` on
/// `f^{(r)} g^{(n−r)}`. Here `μ` is the modular weight; the operator acts on
/// densities of weight `μ/2`.
pub fn rc_bracket(mu1: &Rational, mu2: &Rational, n: u32) -> BiDiffOp {
    let top1 = mu1 + qi(n as i64 - 1);
    let top2 = mu2 + qi(n as i64 - 1);
    let terms = (0..=n)
        .map(|r| {
            let c = rational::sign(r as usize)
                * binomial(&top1, (n - r) as usize)
                * binomial(&top2, r as usize);
            (Monomial::even(r, n - r), c)
        })
        .collect();
    let half = q(1, 2);
    ops_from(Algebra::Pgl2, n, &[mu1 * &half, mu2 * &half], terms)
}

/// `2fg‴ + 3f′g″ − 3f″g′ − 2f‴g` on densities of weight −2/3.
pub fn grozman() -> BiDiffOp {
    let terms = [(0, 2), (1, 3), (2, -3), (3, -2)]
        .into_iter()
        .map(|(i, c)| (Monomial::even(i, 3 - i), qi(c)))
        .collect();
    ops_from(Algebra::Pgl2, 3, &[q(-2, 3), q(-2, 3)], terms)
}

fn nonzero_pair(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_zero() && b.is_zero() {
        Err(Error::InvalidArgument(
            "(a, b) = (0, 0) is not a family member".into(),
        ))
    } else {
        Ok(())
    }
}

/// `a f′g + b f g′` on functions (weight 0).
pub fn order1_family(a: &Rational, b: &Rational) -> Result<BiDiffOp> {
    nonzero_pair(a, b)?;
    let terms = vec![
        (Monomial::even(1, 0), a.clone()),
        (Monomial::even(0, 1), b.clone()),
    ];
    Ok(ops_from(Algebra::Pgl2, 1, &[qi(0), qi(0)], terms))
}

/// `a D_θ(f) g + b f D_θ(g)` on functions (weight 0); odd.
pub fn super_order1_family(a: &Rational, b: &Rational) -> Result<BiDiffOp> {
    nonzero_pair(a, b)?;
    let terms = vec![
        (Monomial::new(0, true, 0, false), a.clone()),
        (Monomial::new(0, false, 0, true), b.clone()),
    ];
    Ok(ops_from(Algebra::Osp12, 1, &[qi(0), qi(0)], terms))
}

/// `γ_{a,K} = (−1)^{a+1} C(μ1+K, K−a) C(μ2+K, a)`.
pub fn cmz_gamma(a: u32, big_k: u32, mu1: &Rational, mu2: &Rational) -> Rational {
    let kk = qi(big_k as i64);
    -rational::sign(a as usize)
        * binomial(&(mu1 + &kk), (big_k - a) as usize)
        * binomial(&(mu2 + &kk), a as usize)
}

/// The super bracket `J_k` on contact densities of weights `μ1`, `μ2`, for
/// `k` a positive integer or half-integer; total order `2k` in `D_θ` units.
///
/// Half-integer `k = K + 1/2`:
/// `Σ_a γ_{a,K} [(μ1+a) φ^{(a)} D_θψ^{(K−a)} − (μ2+K−a) D_θφ^{(a)} ψ^{(K−a)}]`.
///
/// Integer `k`: `Σ_a γ_{a,k−1} D_θφ^{(a)} D_θψ^{(k−1−a)} + Σ_a γ'_{a,k} φ^{(a)} ψ^{(k−a)}`
/// with `γ'_{a,k} = (−1)^{a+1} C(μ1+k−1, k−a) C(μ2+k−1, a)`. This is the form
/// invariant under `K_f` and `D_θ = ∂_θ − θ∂_t` as defined here.
pub fn cmz_bracket(mu1: &Rational, mu2: &Rational, k: &Rational) -> Result<BiDiffOp> {
    let twice = k * qi(2);
    let order = match rational::as_integer(&twice) {
        Some(t) if t > 0 => t as u32,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "k = {} is not a positive integer or half-integer",
                rational::format(k)
            )))
        }
    };
    let mut terms = Vec::new();
    if order % 2 == 1 {
        let big_k = order / 2;
        for a in 0..=big_k {
            let g = cmz_gamma(a, big_k, mu1, mu2);
            let left = mu1 + qi(a as i64);
            let right = mu2 + qi((big_k - a) as i64);
            terms.push((Monomial::new(a, false, big_k - a, true), &g * left));
            terms.push((Monomial::new(a, true, big_k - a, false), -(&g * right)));
        }
    } else {
        let kk = order / 2;
        let m1 = mu1 + qi(kk as i64 - 1);
        let m2 = mu2 + qi(kk as i64 - 1);
        for a in 0..kk {
            terms.push((
                Monomial::new(a, true, kk - 1 - a, true),
                cmz_gamma(a, kk - 1, mu1, mu2),
            ));
        }
        for a in 0..=kk {
            let g = -rational::sign(a as usize)
                * binomial(&m1, (kk - a) as usize)
                * binomial(&m2, a as usize);
            terms.push((Monomial::even(a, kk - a), g));
        }
    }
    Ok(ops_from(
        Algebra::Osp12,
        order,
        &[mu1.clone(), mu2.clone()],
        terms,
    ))
}

// ---------------------------------------------------------------------------
// Line: the chain (2μ2 − n + i + 1) c_i + (2μ1 − i) c_{i+1} = 0.

fn line_system(mu1: &Rational, mu2: &Rational, n: u32) -> (Vec<Rational>, Vec<Rational>) {
    let alpha = (0..n)
        .map(|i| mu2 * qi(2) - qi(n as i64) + qi(i as i64 + 1))
        .collect();
    let beta = (0..n).map(|i| mu1 * qi(2) - qi(i as i64)).collect();
    (alpha, beta)
}

/// Case and solution vectors `(c_0, …, c_n)` of the line system. The operator
/// has coefficient `c_i / (i! (n−i)!)` on `f^{(i)} g^{(n−i)}`.
///
/// Cases: `1` when no `α_i` vanishes; `2a`–`2d` when `α_j = β_j = 0`
/// (`n = 1`; `j = 0`; `j = n−1`; otherwise); `2e` when `α_j = 0` and
/// `β_i = 0` for some `i > j` (two parameters); `2f` when `α_j = 0` and no
/// `β_i` with `i ≥ j` vanishes (one parameter).
pub fn line_coeffs(mu1: &Rational, mu2: &Rational, n: u32) -> (CaseLabel, Vec<Vec<Rational>>) {
    if n == 0 {
        return (
            CaseLabel::new(Classification::Line, "product", 1),
            vec![vec![Rational::one()]],
        );
    }
    let (alpha, beta) = line_system(mu1, mu2, n);
    let sols = chain_solutions(&alpha, &beta);
    let case = match first_zero(&alpha) {
        None => "1",
        Some(j) if beta[j].is_zero() => match (n, j) {
            (1, _) => "2a",
            (_, 0) => "2b",
            (_, j) if j as u32 == n - 1 => "2c",
            _ => "2d",
        },
        Some(j) if beta[j + 1..].iter().any(|b| b.is_zero()) => "2e",
        Some(_) => "2f",
    };
    (CaseLabel::new(Classification::Line, case, sols.len()), sols)
}

fn line_family(mu1: &Rational, mu2: &Rational, n: u32) -> ClosedForm {
    let (label, sols) = line_coeffs(mu1, mu2, n);
    let w = density_weights(Algebra::Pgl2, mu1, mu2);
    let basis = sols
        .iter()
        .map(|c| {
            let terms = (0..=n)
                .map(|i| {
                    (
                        Monomial::even(i, n - i),
                        &c[i as usize] * inv_factorials(i, n - i),
                    )
                })
                .collect();
            ops_from(Algebra::Pgl2, n, &w, terms)
        })
        .collect();
    ClosedForm { label, basis }
}

// ---------------------------------------------------------------------------
// Contact superstring.

fn osp_label(setting: Classification, alpha: &[Rational], dim: usize) -> CaseLabel {
    let case = if dim == 2 {
        "resonant"
    } else if first_zero(alpha).is_some() {
        "zero-diagonal"
    } else {
        "generic"
    };
    CaseLabel::new(setting, case, dim)
}

/// Solutions `(c, e)` for order `2n`, `n ≥ 1`:
/// `((n−1−i) − μ2) e_i + ((i+1) − μ1) e_{i+1} = 0` for `i ≤ n−2`,
/// `c_i = (i − μ1) e_i` for `i ≤ n−1` and `c_n = μ2 e_{n−1}`.
///
/// The operator has coefficient `c_i/(i!(n−i)!)` on `φ^{(i)} ψ^{(n−i)}` and
/// `e_i/(i!(n−1−i)!)` on `D_θφ^{(i)} D_θψ^{(n−1−i)}`.
pub fn osp_even_coeffs(
    mu1: &Rational,
    mu2: &Rational,
    n: u32,
) -> (CaseLabel, Vec<(Vec<Rational>, Vec<Rational>)>) {
    assert!(n >= 1, "order 2n with n >= 1");
    let alpha: Vec<Rational> = (0..n - 1).map(|i| qi((n - 1 - i) as i64) - mu2).collect();
    let beta: Vec<Rational> = (0..n - 1).map(|i| qi(i as i64 + 1) - mu1).collect();
    let sols: Vec<_> = chain_solutions(&alpha, &beta)
        .into_iter()
        .map(|e| {
            let mut c: Vec<Rational> = (0..n as usize)
                .map(|i| (qi(i as i64) - mu1) * &e[i])
                .collect();
            c.push(mu2 * &e[n as usize - 1]);
            (c, e)
        })
        .collect();
    (
        osp_label(Classification::ContactEven, &alpha, sols.len()),
        sols,
    )
}

/// Solutions `(a, b)` for order `2n+1`: with `y = (b_0, a_0, …, a_n)`,
/// `((n−k) − μ2) y_k + (k − μ1) y_{k+1} = 0` for `k ≤ n`, and `b_{i+1} = a_i`.
///
/// The operator has coefficient `a_i/(i!(n−i)!)` on `D_θφ^{(i)} ψ^{(n−i)}` and
/// `b_i/(i!(n−i)!)` on `φ^{(i)} D_θψ^{(n−i)}`.
pub fn osp_odd_coeffs(
    mu1: &Rational,
    mu2: &Rational,
    n: u32,
) -> (CaseLabel, Vec<(Vec<Rational>, Vec<Rational>)>) {
    let alpha: Vec<Rational> = (0..=n).map(|k| qi((n - k) as i64) - mu2).collect();
    let beta: Vec<Rational> = (0..=n).map(|k| qi(k as i64) - mu1).collect();
    let sols: Vec<_> = chain_solutions(&alpha, &beta)
        .into_iter()
        .map(|y| {
            let a: Vec<Rational> = y[1..].to_vec();
            let mut b = vec![y[0].clone()];
            b.extend(a[..n as usize].iter().cloned());
            (a, b)
        })
        .collect();
    (
        osp_label(Classification::ContactOdd, &alpha, sols.len()),
        sols,
    )
}

fn osp_even_ops(
    w: &[Rational; 2],
    n: u32,
    sols: &[(Vec<Rational>, Vec<Rational>)],
) -> Vec<BiDiffOp> {
    sols.iter()
        .map(|(c, e)| {
            let mut terms = Vec::new();
            for i in 0..=n {
                terms.push((
                    Monomial::even(i, n - i),
                    &c[i as usize] * inv_factorials(i, n - i),
                ));
            }
            for i in 0..n {
                let key = Monomial::new(i, true, n - 1 - i, true);
                terms.push((key, &e[i as usize] * inv_factorials(i, n - 1 - i)));
            }
            ops_from(Algebra::Osp12, 2 * n, w, terms)
        })
        .filter(|op| !op.is_zero())
        .collect()
}

fn osp_odd_ops(
    w: &[Rational; 2],
    n: u32,
    sols: &[(Vec<Rational>, Vec<Rational>)],
    factorials: bool,
) -> Vec<BiDiffOp> {
    sols.iter()
        .map(|(a, b)| {
            let mut terms = Vec::new();
            for i in 0..=n {
                let f = if factorials {
                    inv_factorials(i, n - i)
                } else {
                    Rational::one()
                };
                terms.push((Monomial::new(i, true, n - i, false), &a[i as usize] * &f));
                terms.push((Monomial::new(i, false, n - i, true), &b[i as usize] * &f));
            }
            ops_from(Algebra::Osp12, 2 * n + 1, w, terms)
        })
        .filter(|op| !op.is_zero())
        .collect()
}

fn osp_family(mu1: &Rational, mu2: &Rational, order: u32) -> ClosedForm {
    if order == 0 {
        return product(Algebra::Osp12, mu1, mu2, Classification::ContactEven);
    }
    let w = density_weights(Algebra::Osp12, mu1, mu2);
    let n = order / 2;
    if order % 2 == 0 {
        let (label, sols) = osp_even_coeffs(mu1, mu2, n);
        ClosedForm {
            label,
            basis: osp_even_ops(&w, n, &sols),
        }
    } else {
        let (label, sols) = osp_odd_coeffs(mu1, mu2, n);
        ClosedForm {
            label,
            basis: osp_odd_ops(&w, n, &sols, true),
        }
    }
}

/// Reference even-order system, kept for discrepancy reports: `(3(n+i+1) − μ2) e_i + ((i+1) − μ1) e_{i+1} = 0`
/// for `i ≤ n−1`, `c_i = (μ1 − i) e_i / 2`, `2 c_n = (6n − μ2) e_{n−1}`; `e_n` is not
/// an ansatz coefficient and is dropped.
pub fn reference_osp_even(
    mu1: &Rational,
    mu2: &Rational,
    n: u32,
) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let alpha: Vec<Rational> = (0..n).map(|i| qi(3 * (n + i + 1) as i64) - mu2).collect();
    let beta: Vec<Rational> = (0..n).map(|i| qi(i as i64 + 1) - mu1).collect();
    let half = q(1, 2);
    chain_solutions(&alpha, &beta)
        .into_iter()
        .map(|e| {
            let e: Vec<Rational> = e[..n as usize].to_vec();
            let mut c: Vec<Rational> = (0..n as usize)
                .map(|i| (mu1 - qi(i as i64)) * &e[i] * &half)
                .collect();
            c.push((qi(6 * n as i64) - mu2) * &e[n as usize - 1] * &half);
            (c, e)
        })
        .collect()
}

/// Reference odd-order system, kept for discrepancy reports, in unknowns `a_0..a_n`, `b_0..b_{n−1}`:
/// `(i − μ1) a_i = (μ2 − n + i) b_i`, `a_i = (i+1)/(n−i) b_{i+1}`,
/// `a_{n−1} = 0`, `(μ1 − n) a_n = 0`.
pub fn reference_osp_odd(
    mu1: &Rational,
    mu2: &Rational,
    n: u32,
) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let n_us = n as usize;
    let cols = 2 * n_us + 1;
    let a = |i: usize| i;
    let b = |i: usize| n_us + 1 + i;
    let mut rows = Vec::new();
    let mut row = |entries: &[(usize, Rational)]| {
        let mut r = vec![Rational::zero(); cols];
        for (c, v) in entries {
            r[*c] += v;
        }
        rows.push(r);
    };
    for i in 0..n_us {
        row(&[
            (a(i), qi(i as i64) - mu1),
            (b(i), -(mu2 - qi(n as i64) + qi(i as i64))),
        ]);
    }
    for i in 0..n_us.saturating_sub(1) {
        row(&[
            (a(i), qi(1)),
            (b(i + 1), -q(i as i64 + 1, (n_us - i) as i64)),
        ]);
    }
    if n_us >= 1 {
        row(&[(a(n_us - 1), qi(1))]);
    }
    row(&[(a(n_us), mu1 - qi(n as i64))]);
    nullspace(&rows, cols)
        .into_iter()
        .map(|v| {
            let av = v[..=n_us].to_vec();
            let mut bv = v[n_us + 1..].to_vec();
            bv.push(Rational::zero());
            (av, bv)
        })
        .collect()
}

/// The reference osp(1|2) systems as operators, for discrepancy reports.
pub fn reference_system(mu1: &Rational, mu2: &Rational, order: u32) -> Vec<BiDiffOp> {
    if order == 0 {
        return product(Algebra::Osp12, mu1, mu2, Classification::ContactEven).basis;
    }
    let w = density_weights(Algebra::Osp12, mu1, mu2);
    let n = order / 2;
    if order % 2 == 0 {
        osp_even_ops(&w, n, &reference_osp_even(mu1, mu2, n))
    } else {
        osp_odd_ops(&w, n, &reference_osp_odd(mu1, mu2, n), false)
    }
}

// ---------------------------------------------------------------------------
// (1|1) superdomain.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pgl21Family {
    pub label: CaseLabel,
    /// `Some(k)`: the even solution `D_k` on `∂^kδ ⊗ ∂^{n−2−k}δ`.
    pub even: Option<u32>,
    /// Solution vectors `(b_0, …, b_n)` of the odd system.
    pub odd: Vec<Vec<Rational>>,
}

/// Superdomain case: `(i)` 1|1, `(ii)` 0|2, `(iii)` 0|1.
pub fn superdomain_case(mu1: &Rational, mu2: &Rational, n: u32) -> (&'static str, usize, usize) {
    let n2 = qi(2 * n as i64);
    let sum = mu1 + mu2;
    let both_even = is_nonneg_even(mu1) && is_nonneg_even(mu2);
    if both_even && sum == &n2 - qi(4) {
        ("(i)", 1, 1)
    } else if both_even && mu1 <= &(&n2 - qi(2)) && mu2 <= &(&n2 - qi(2)) && sum >= &n2 - qi(2) {
        ("(ii)", 0, 2)
    } else {
        ("(iii)", 0, 1)
    }
}

/// Even solution iff `μ1 = 2k`, `μ2 = 2n−4−2k` with `k ≥ 0`; odd solutions
/// from `α_i b_i + β_i b_{i+1} = 0`, `α_i = (n−i)(μ2 − 2(n−i−1))`,
/// `β_i = (i+1)(μ1 − 2i)`. The odd operator has `k b_k` on `∂^{k−1}δ ⊗ ∂^{n−k}`
/// and `(n−k) b_k` on `∂^k ⊗ ∂^{n−k−1}δ`.
pub fn pgl21_coeffs(mu1: &Rational, mu2: &Rational, n: u32) -> Pgl21Family {
    let (case, _, _) = superdomain_case(mu1, mu2, n);
    let even = if n >= 2
        && is_nonneg_even(mu1)
        && is_nonneg_even(mu2)
        && mu1 + mu2 == qi(2 * n as i64 - 4)
    {
        rational::as_integer(&(mu1 / qi(2))).map(|k| k as u32)
    } else {
        None
    };
    let alpha: Vec<Rational> = (0..n)
        .map(|i| qi((n - i) as i64) * (mu2 - qi(2 * (n - i - 1) as i64)))
        .collect();
    let beta: Vec<Rational> = (0..n)
        .map(|i| qi(i as i64 + 1) * (mu1 - qi(2 * i as i64)))
        .collect();
    let odd = chain_solutions(&alpha, &beta);
    let count = odd.len() + even.is_some() as usize;
    Pgl21Family {
        label: CaseLabel::new(Classification::Superdomain, case, count),
        even,
        odd,
    }
}

fn pgl21_family(mu1: &Rational, mu2: &Rational, n: u32) -> ClosedForm {
    if n == 0 {
        return product(Algebra::Pgl21, mu1, mu2, Classification::Superdomain);
    }
    let fam = pgl21_coeffs(mu1, mu2, n);
    let w = density_weights(Algebra::Pgl21, mu1, mu2);
    let mut basis = Vec::new();
    if let Some(k) = fam.even {
        let key = Monomial::new(k, true, n - 2 - k, true);
        basis.push(ops_from(
            Algebra::Pgl21,
            n,
            &w,
            vec![(key, Rational::one())],
        ));
    }
    for b in &fam.odd {
        let mut terms = Vec::new();
        for k in 0..=n {
            let bk = &b[k as usize];
            if k >= 1 {
                terms.push((Monomial::new(k - 1, true, n - k, false), bk * qi(k as i64)));
            }
            if k < n {
                terms.push((
                    Monomial::new(k, false, n - k - 1, true),
                    bk * qi((n - k) as i64),
                ));
            }
        }
        basis.push(ops_from(Algebra::Pgl21, n, &w, terms));
    }
    ClosedForm {
        label: fam.label,
        basis,
    }
}

/// The closed-form solution space at singular-vector parameters `μ1`, `μ2`,
/// as operators at the corresponding density weights.
pub fn closed_form(algebra: Algebra, order: u32, mu1: &Rational, mu2: &Rational) -> ClosedForm {
    match algebra {
        Algebra::Pgl2 => line_family(mu1, mu2, order),
        Algebra::Osp12 => osp_family(mu1, mu2, order),
        Algebra::Pgl21 => pgl21_family(mu1, mu2, order),
    }
}

pub fn case_label(algebra: Algebra, order: u32, mu1: &Rational, mu2: &Rational) -> CaseLabel {
    closed_form(algebra, order, mu1, mu2).label
}

/// True when a weight pair (singular-vector side) may sit on a resonance locus
/// of any order: some `2μ` is an integer.
pub fn near_resonance(mu1: &Rational, mu2: &Rational) -> bool {
    [mu1, mu2].iter().any(|m| (*m * qi(2)).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidiff::{full_generators, is_invariant, subset};
    use crate::linalg::normalize;

    #[test]
    fn rc_examples() {
        let a = q(3, 5);
        let b = q(-7, 4);
        let r0 = rc_bracket(&a, &b, 0);
        assert_eq!(r0.coeffs.len(), 1);
        assert_eq!(r0.coeff(&Monomial::even(0, 0)), qi(1));
        let r1 = rc_bracket(&a, &b, 1);
        assert_eq!(r1.coeff(&Monomial::even(0, 1)), a);
        assert_eq!(r1.coeff(&Monomial::even(1, 0)), -b);
        let r3 = rc_bracket(&q(-4, 3), &q(-4, 3), 3);
        let keys: Vec<_> = (0..=3).map(|i| Monomial::even(i, 3 - i)).collect();
        assert_eq!(
            normalize(&r3.vector(&keys)),
            normalize(&grozman().vector(&keys))
        );
    }

    #[test]
    fn grozman_shape() {
        let g = grozman();
        assert_eq!(g.coeff(&Monomial::even(0, 3)), qi(2));
        assert_eq!(g.coeff(&Monomial::even(3, 0)), qi(-2));
        assert_eq!(g.output_weight(), q(5, 3));
        for (k, c) in &g.coeffs {
            assert_eq!(g.coeff(&Monomial::even(k.d2, k.d1)), -c.clone());
        }
        assert!(is_invariant(&g, &full_generators(Algebra::Pgl2), 9).unwrap());
    }

    #[test]
    fn order_one_families() {
        let op = order1_family(&qi(1), &qi(-1)).unwrap();
        assert_eq!(op.coeff(&Monomial::even(1, 0)), qi(1));
        assert_eq!(op.coeff(&Monomial::even(0, 1)), qi(-1));
        assert!(order1_family(&qi(0), &qi(0)).is_err());
        let s = super_order1_family(&qi(1), &qi(0)).unwrap();
        assert_eq!(s.parity, Parity::Odd);
        assert_eq!(s.coeffs.len(), 1);
        let s01 = super_order1_family(&qi(0), &qi(1)).unwrap();
        assert!(is_invariant(&s01, &subset(Algebra::Osp12, &["K_t^2"]), 5).unwrap());
    }

    #[test]
    fn cmz_examples() {
        let (m1, m2) = (q(2, 7), q(-5, 3));
        let half = cmz_bracket(&m1, &m2, &q(1, 2)).unwrap();
        assert_eq!(half.parity, Parity::Odd);
        assert_eq!(half.coeff(&Monomial::new(0, false, 0, true)), -m1.clone());
        assert_eq!(half.coeff(&Monomial::new(0, true, 0, false)), m2.clone());
        let one = cmz_bracket(&m1, &m2, &qi(1)).unwrap();
        assert_eq!(one.parity, Parity::Even);
        assert_eq!(one.coeff(&Monomial::new(0, true, 0, true)), qi(-1));
        assert_eq!(one.coeff(&Monomial::even(0, 1)), -m1.clone());
        assert_eq!(one.coeff(&Monomial::even(1, 0)), m2.clone());
        assert!(cmz_bracket(&m1, &m2, &q(1, 3)).is_err());
        assert!(cmz_bracket(&m1, &m2, &qi(0)).is_err());
    }

    #[test]
    fn line_cases() {
        let (label, sols) = line_coeffs(&q(2, 3), &q(2, 3), 3);
        assert_eq!(label.case, "1");
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0][2], &sols[0][3] * q(1, 2));
        assert_eq!(line_coeffs(&qi(0), &qi(0), 1).0.tag(), "2a");
        assert_eq!(line_coeffs(&qi(0), &qi(1), 3).0.tag(), "2b");
        assert_eq!(line_coeffs(&qi(1), &qi(0), 3).0.tag(), "2c");
        assert_eq!(line_coeffs(&q(1, 2), &q(1, 2), 3).0.tag(), "2d");
        for case in [(qi(0), qi(1), 3), (qi(1), qi(0), 3), (q(1, 2), q(1, 2), 3)] {
            assert_eq!(line_coeffs(&case.0, &case.1, case.2).0.parameter_count, 2);
        }
    }

    #[test]
    fn osp_cases() {
        assert_eq!(
            osp_even_coeffs(&q(1, 3), &q(2, 5), 3).0.tag(),
            "even-generic"
        );
        assert_eq!(osp_even_coeffs(&qi(1), &qi(2), 3).0.parameter_count, 2);
        assert_eq!(osp_odd_coeffs(&qi(1), &qi(1), 2).0.parameter_count, 2);
        assert_eq!(osp_odd_coeffs(&q(1, 3), &q(2, 5), 2).0.parameter_count, 1);
    }

    #[test]
    fn pgl21_cases() {
        let f = pgl21_coeffs(&qi(0), &qi(0), 2);
        assert_eq!(f.label.tag(), "super-(i)");
        assert_eq!((f.even.is_some() as usize, f.odd.len()), (1, 1));
        let f = pgl21_coeffs(&qi(0), &qi(0), 1);
        assert_eq!(f.label.tag(), "super-(ii)");
        assert_eq!((f.even.is_some() as usize, f.odd.len()), (0, 2));
        let f = pgl21_coeffs(&q(1, 2), &q(7, 3), 4);
        assert_eq!(f.label.tag(), "super-(iii)");
        assert_eq!((f.even.is_some() as usize, f.odd.len()), (0, 1));
    }
}
