//! Finite-dimensional gl(1|1)-modules with explicit action matrices: induced
//! modules `M^{λ;μ}`, their irreducible quotients, tensor products with the
//! sign rule, highest vectors and the four-case analysis of a tensor product
//! of two irreducibles.
//!
//! Generators are `X_−`, `H_1`, `H_2`, `X_+` with `E = H_1 + H_2` central,
//! `H = H_1 − H_2`, `[H_1, X_±] = ±X_±`, `[H_2, X_±] = ∓X_±`, `[X_+, X_−] = E`.
//! Matrices act on column vectors: `m[i][j]` is the `i`-th coordinate of the
//! image of basis vector `j`.

use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{mat_vec, nullspace, rank};
use crate::rational::{self, q, Rational};
use crate::superpoly::Parity;

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    XMinus,
    H1,
    H2,
    XPlus,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::XMinus, Gen::H1, Gen::H2, Gen::XPlus];

    pub fn parity(self) -> Parity {
        match self {
            Gen::XMinus | Gen::XPlus => Parity::Odd,
            Gen::H1 | Gen::H2 => Parity::Even,
        }
    }
}

fn zeros(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

fn mat_lin(a: &Matrix, ca: &Rational, b: &Matrix, cb: &Rational) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x * ca + y * cb).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL11Module {
    pub labels: Vec<String>,
    pub parities: Vec<Parity>,
    pub x_minus: Matrix,
    pub h1: Matrix,
    pub h2: Matrix,
    pub x_plus: Matrix,
}

impl GL11Module {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_even(&self) -> usize {
        self.parities.iter().filter(|p| **p == Parity::Even).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.dim() - self.dim_even()
    }

    pub fn action(&self, g: Gen) -> &Matrix {
        match g {
            Gen::XMinus => &self.x_minus,
            Gen::H1 => &self.h1,
            Gen::H2 => &self.h2,
            Gen::XPlus => &self.x_plus,
        }
    }

    /// `E = H_1 + H_2`.
    pub fn e(&self) -> Matrix {
        mat_lin(&self.h1, &Rational::one(), &self.h2, &Rational::one())
    }

    /// `H = H_1 − H_2`.
    pub fn h(&self) -> Matrix {
        mat_lin(&self.h1, &Rational::one(), &self.h2, &-Rational::one())
    }

    pub fn apply(&self, g: Gen, v: &[Rational]) -> Vec<Rational> {
        mat_vec(self.action(g), v)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Supercommutator of two generator actions.
    fn super_commutator(&self, a: Gen, b: Gen) -> Matrix {
        let ab = mat_mul(self.action(a), self.action(b));
        let ba = mat_mul(self.action(b), self.action(a));
        let s = a.parity().swap_sign(b.parity());
        mat_lin(&ab, &Rational::one(), &ba, &-s)
    }

    /// Every defining relation, with whether it holds.
    pub fn relation_report(&self) -> Vec<(String, bool)> {
        let n = self.dim();
        let one = Rational::one();
        let neg = -Rational::one();
        let mut out = Vec::new();
        let mut expect =
            |name: &str, lhs: Matrix, rhs: Matrix| out.push((name.to_string(), lhs == rhs));
        expect(
            "[H1,H2]=0",
            self.super_commutator(Gen::H1, Gen::H2),
            zeros(n),
        );
        expect(
            "[H1,X+]=X+",
            self.super_commutator(Gen::H1, Gen::XPlus),
            self.x_plus.clone(),
        );
        expect(
            "[H1,X-]=-X-",
            self.super_commutator(Gen::H1, Gen::XMinus),
            mat_lin(&self.x_minus, &neg, &zeros(n), &one),
        );
        expect(
            "[H2,X+]=-X+",
            self.super_commutator(Gen::H2, Gen::XPlus),
            mat_lin(&self.x_plus, &neg, &zeros(n), &one),
        );
        expect(
            "[H2,X-]=X-",
            self.super_commutator(Gen::H2, Gen::XMinus),
            self.x_minus.clone(),
        );
        expect(
            "[X+,X-]=E",
            self.super_commutator(Gen::XPlus, Gen::XMinus),
            self.e(),
        );
        expect("X+^2=0", mat_mul(&self.x_plus, &self.x_plus), zeros(n));
        expect("X-^2=0", mat_mul(&self.x_minus, &self.x_minus), zeros(n));
        for g in Gen::ALL {
            let m = self.action(g);
            let graded = (0..n).all(|i| {
                (0..n).all(|j| {
                    m[i][j].is_zero() || self.parities[i] == self.parities[j].add(g.parity())
                })
            });
            out.push((format!("{g:?} respects parity"), graded));
        }
        out
    }

    pub fn relations_hold(&self) -> bool {
        self.relation_report().iter().all(|(_, ok)| *ok)
    }

    /// True when the span of `vectors` is closed under every generator.
    pub fn is_invariant_subspace(&self, vectors: &[Vec<Rational>]) -> bool {
        let r = rank(vectors, self.dim());
        Gen::ALL.iter().all(|&g| {
            vectors.iter().all(|v| {
                let mut extended = vectors.to_vec();
                extended.push(self.apply(g, v));
                rank(&extended, self.dim()) == r
            })
        })
    }
}

/// A one-dimensional module: `H_1 = a`, `H_2 = b`, `X_± = 0`.
pub fn one_dimensional(a: &Rational, b: &Rational, parity_flip: bool) -> GL11Module {
    GL11Module {
        labels: vec!["v".into()],
        parities: vec![Parity::from_bit(parity_flip)],
        x_minus: zeros(1),
        h1: vec![vec![a.clone()]],
        h2: vec![vec![b.clone()]],
        x_plus: zeros(1),
    }
}

fn ab(lambda: &Rational, mu: &Rational) -> (Rational, Rational) {
    let half = q(1, 2);
    ((lambda + mu) * &half, (lambda - mu) * &half)
}

/// `M^{λ;μ}` on `{v, X_−v}` with `E v = λ v`, `H v = μ v`; `parity_flip` makes `v` odd.
pub fn induced_module(lambda: &Rational, mu: &Rational, parity_flip: bool) -> GL11Module {
    let (a, b) = ab(lambda, mu);
    let one = Rational::one();
    let z = Rational::zero();
    let pv = Parity::from_bit(parity_flip);
    GL11Module {
        labels: vec!["v".into(), "X-v".into()],
        parities: vec![pv, pv.flip()],
        x_minus: vec![vec![z.clone(), z.clone()], vec![one.clone(), z.clone()]],
        h1: vec![vec![a.clone(), z.clone()], vec![z.clone(), &a - &one]],
        h2: vec![vec![b.clone(), z.clone()], vec![z.clone(), &b + &one]],
        x_plus: vec![vec![z.clone(), lambda.clone()], vec![z.clone(), z]],
    }
}

/// The irreducible quotient of `M^{λ;μ}`: all of it for `λ ≠ 0`, the line
/// spanned by `v` for `λ = 0`.
pub fn irreducible(lambda: &Rational, mu: &Rational, parity_flip: bool) -> GL11Module {
    if lambda.is_zero() {
        let (a, b) = ab(lambda, mu);
        one_dimensional(&a, &b, parity_flip)
    } else {
        induced_module(lambda, mu, parity_flip)
    }
}

/// `M ⊗ N` with `g(m ⊗ n) = gm ⊗ n + (−1)^{p(g)p(m)} m ⊗ gn`.
pub fn tensor(m: &GL11Module, n: &GL11Module) -> GL11Module {
    let (dm, dn) = (m.dim(), n.dim());
    let d = dm * dn;
    let idx = |i: usize, k: usize| i * dn + k;
    let act = |g: Gen| {
        let gm = m.action(g);
        let gn = n.action(g);
        let mut out = zeros(d);
        for i in 0..dm {
            for k in 0..dn {
                let col = idx(i, k);
                for j in 0..dm {
                    if !gm[j][i].is_zero() {
                        out[idx(j, k)][col] += gm[j][i].clone();
                    }
                }
                let s = g.parity().swap_sign(m.parities[i]);
                for l in 0..dn {
                    if !gn[l][k].is_zero() {
                        out[idx(i, l)][col] += &s * &gn[l][k];
                    }
                }
            }
        }
        out
    };
    let mut labels = Vec::with_capacity(d);
    let mut parities = Vec::with_capacity(d);
    for i in 0..dm {
        for k in 0..dn {
            labels.push(format!(
                "{}(x){}",
                m.labels[i],
                n.labels[k].replace('v', "w")
            ));
            parities.push(m.parities[i].add(n.parities[k]));
        }
    }
    GL11Module {
        labels,
        parities,
        x_minus: act(Gen::XMinus),
        h1: act(Gen::H1),
        h2: act(Gen::H2),
        x_plus: act(Gen::XPlus),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestVector {
    /// Eigenvalue of `E`.
    pub e: Rational,
    /// Eigenvalue of `H`.
    pub h: Rational,
    /// `H_1`-eigenvalue minus the largest `H_1`-eigenvalue in the module.
    pub level: Rational,
    pub parity: Parity,
    pub vector: Vec<Rational>,
}

/// Basis of `ker X_+` made of joint `H_1`, `H_2` eigenvectors of pure parity.
///
/// The module's `H_1` and `H_2` must be diagonal, which holds for every module
/// built here.
pub fn highest_vectors(m: &GL11Module) -> Vec<HighestVector> {
    let n = m.dim();
    for (i, row) in m.h1.iter().chain(m.h2.iter()).enumerate() {
        let r = i % n;
        assert!(
            row.iter().enumerate().all(|(j, v)| j == r || v.is_zero()),
            "H_1 and H_2 must be diagonal"
        );
    }
    let top = (0..n)
        .map(|i| m.h1[i][i].clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut groups: Vec<(Rational, Rational, Parity, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let key = (m.h1[i][i].clone(), m.h2[i][i].clone(), m.parities[i]);
        match groups
            .iter_mut()
            .find(|g| (g.0.clone(), g.1.clone(), g.2) == key)
        {
            Some(g) => g.3.push(i),
            None => groups.push((key.0, key.1, key.2, vec![i])),
        }
    }
    let mut out = Vec::new();
    for (h1, h2, parity, idx) in groups {
        let rows: Vec<Vec<Rational>> = m
            .x_plus
            .iter()
            .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
            .collect();
        for local in nullspace(&rows, idx.len()) {
            let mut v = vec![Rational::zero(); n];
            for (c, &j) in local.into_iter().zip(&idx) {
                v[j] = c;
            }
            out.push(HighestVector {
                e: &h1 + &h2,
                h: &h1 - &h2,
                level: &h1 - &top,
                parity,
                vector: v,
            });
        }
    }
    out.sort_by(|a, b| b.level.cmp(&a.level));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorCase {
    /// `λ = σ = 0`.
    I,
    /// Exactly one of `λ`, `σ` vanishes.
    II,
    /// `λσ ≠ 0`, `λ + σ ≠ 0`.
    III,
    /// `λσ ≠ 0`, `λ + σ = 0`.
    IV,
}

impl fmt::Display for TensorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorCase::I => "(i)",
            TensorCase::II => "(ii)",
            TensorCase::III => "(iii)",
            TensorCase::IV => "(iv)",
        })
    }
}

pub fn tensor_case(lambda: &Rational, sigma: &Rational) -> TensorCase {
    match (lambda.is_zero(), sigma.is_zero()) {
        (true, true) => TensorCase::I,
        (true, false) | (false, true) => TensorCase::II,
        _ if (lambda + sigma).is_zero() => TensorCase::IV,
        _ => TensorCase::III,
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: TensorCase,
    pub module: GL11Module,
    pub highest: Vec<HighestVector>,
    /// Arrow coefficients of the gluing diagram, case (iv) only, in the order
    /// `X_−` top→left, `X_+` top→right, `X_−` right→bottom, `X_+` left→bottom.
    pub arrows: Vec<Rational>,
    /// Length of the verified composition series.
    pub composition_length: usize,
    pub checks: Vec<(String, bool)>,
}

impl CaseReport {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// `c` with `u = c·w`, if `u` is a multiple of the nonzero vector `w`.
fn ratio(u: &[Rational], w: &[Rational]) -> Option<Rational> {
    let j = w.iter().position(|x| !x.is_zero())?;
    let c = &u[j] / &w[j];
    u.iter().zip(w).all(|(a, b)| a == &(&c * b)).then_some(c)
}

fn combo(terms: &[(usize, Rational)], n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

/// Classifies `irr(M^{λ;μ}) ⊗ irr(M^{σ;ρ})` and verifies its structure by
/// explicit matrix computation.
pub fn decompose_case(
    lambda: &Rational,
    mu: &Rational,
    sigma: &Rational,
    rho: &Rational,
) -> CaseReport {
    let case = tensor_case(lambda, sigma);
    let module = tensor(
        &irreducible(lambda, mu, false),
        &irreducible(sigma, rho, false),
    );
    let highest = highest_vectors(&module);
    let mut checks = module.relation_report();
    let mut arrows = Vec::new();
    let n = module.dim();
    let total = lambda + sigma;
    let hsum = mu + rho;
    let two = rational::qi(2);
    let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));
    let e_scalar = module.e() == mat_lin(&identity(n), &total, &zeros(n), &Rational::one());
    check("E acts by lambda+sigma", e_scalar);

    let composition_length = match case {
        TensorCase::I => {
            check("dimension 1", n == 1);
            check("one highest vector", highest.len() == 1);
            n
        }
        TensorCase::II => {
            check("dimension 2", n == 2);
            check("one highest vector", highest.len() == 1);
            if let Some(h) = highest.first() {
                let lowered = module.apply(Gen::XMinus, &h.vector);
                let back = module.apply(Gen::XPlus, &lowered);
                check(
                    "generates the module",
                    rank(&[h.vector.clone(), lowered], n) == 2,
                );
                check(
                    "irreducible: X+X- h = (lambda+sigma) h",
                    ratio(&back, &h.vector) == Some(total.clone()),
                );
                check("H weight mu+rho", h.h == hsum);
            }
            1
        }
        TensorCase::III => {
            check("two highest vectors", highest.len() == 2);
            if let [top, low] = highest.as_slice() {
                check(
                    "top is v(x)w, even, H weight mu+rho",
                    top.vector == module.basis_vector(0)
                        && top.parity == Parity::Even
                        && top.h == hsum,
                );
                check(
                    "second at level -1, odd, H weight mu+rho-2",
                    low.level == -Rational::one()
                        && low.parity == Parity::Odd
                        && low.h == &hsum - &two,
                );
                // Coordinates: 1 = v(x)X-w (y), 2 = X-v(x)w (x).
                let (y, x) = (&low.vector[1], &low.vector[2]);
                check("x = -y sigma/lambda", x == &(-(y * sigma) / lambda));
                let sub0 = vec![top.vector.clone(), module.apply(Gen::XMinus, &top.vector)];
                let sub1 = vec![low.vector.clone(), module.apply(Gen::XMinus, &low.vector)];
                check(
                    "first submodule invariant",
                    module.is_invariant_subspace(&sub0),
                );
                check(
                    "second submodule invariant",
                    module.is_invariant_subspace(&sub1),
                );
                check(
                    "each of dimension 2",
                    rank(&sub0, n) == 2 && rank(&sub1, n) == 2,
                );
                let all: Vec<_> = sub0.iter().chain(&sub1).cloned().collect();
                check("complementary", rank(&all, n) == 4);
                for (name, h) in [("first", top), ("second", low)] {
                    let back = module.apply(Gen::XPlus, &module.apply(Gen::XMinus, &h.vector));
                    check(
                        &format!("{name} irreducible"),
                        ratio(&back, &h.vector) == Some(total.clone()),
                    );
                }
            }
            2
        }
        TensorCase::IV => {
            let one = Rational::one();
            let vw = module.basis_vector(0);
            let mm = module.basis_vector(3);
            let top = combo(&[(2, one.clone()), (1, -one.clone())], n);
            let bottom = combo(&[(1, one.clone()), (2, one.clone())], n);
            let arrow =
                |g: Gen, src: &[Rational], dst: &[Rational]| ratio(&module.apply(g, src), dst);
            let found = [
                arrow(Gen::XMinus, &top, &mm),
                arrow(Gen::XPlus, &top, &vw),
                arrow(Gen::XMinus, &vw, &bottom),
                arrow(Gen::XPlus, &mm, &bottom),
            ];
            check(
                "all arrows are multiples",
                found.iter().all(Option::is_some),
            );
            arrows = found.into_iter().flatten().collect();
            check(
                "arrows (-2, 2 lambda, 1, lambda)",
                arrows == vec![-&two, &two * lambda, one.clone(), lambda.clone()],
            );
            check(
                "X+ and X- kill the bottom vector",
                module.apply(Gen::XPlus, &bottom).iter().all(Zero::is_zero)
                    && module.apply(Gen::XMinus, &bottom).iter().all(Zero::is_zero),
            );
            let chain = [
                vec![bottom.clone()],
                vec![bottom.clone(), vw.clone()],
                vec![bottom.clone(), vw.clone(), mm.clone()],
                vec![bottom.clone(), vw.clone(), mm.clone(), top.clone()],
            ];
            let mut length = 0;
            for (k, sub) in chain.iter().enumerate() {
                let ok = rank(sub, n) == k + 1 && module.is_invariant_subspace(sub);
                check(&format!("composition step {}", k + 1), ok);
                length += ok as usize;
            }
            let weights = [
                (&top, &hsum - &two),
                (&mm, &hsum - rational::qi(4)),
                (&vw, hsum.clone()),
                (&bottom, &hsum - &two),
            ];
            let h = module.h();
            check(
                "H weights of the diagram",
                weights
                    .iter()
                    .all(|(v, w)| ratio(&mat_vec(&h, v), v) == Some(w.clone())),
            );
            check("two highest vectors", highest.len() == 2);
            length
        }
    };
    CaseReport {
        case,
        module,
        highest,
        arrows,
        composition_length,
        checks,
    }
}
