//! Exact linear algebra over the rationals: fraction-free row reduction,
//! canonical reduced echelon form and null spaces.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rational};

/// Scales a rational row to a primitive integer row with positive leading entry.
fn primitive_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    let lcm = denominator_lcm(row);
    let mut ints: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return None;
    }
    let lead_negative = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    for v in ints.iter_mut() {
        *v /= &g;
        if lead_negative {
            *v = -&*v;
        }
    }
    Some(ints)
}

/// Bareiss elimination. Returns the nonzero echelon rows and their pivot columns.
fn bareiss(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut seen = HashSet::new();
    let mut m: Vec<Vec<BigInt>> = Vec::new();
    for row in rows {
        assert_eq!(row.len(), ncols, "ragged matrix");
        if let Some(p) = primitive_row(row) {
            if seen.insert(p.clone()) {
                m.push(p);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division not exact");
                row[j] = quo;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical reduced row echelon form: nonzero rows only, each pivot equal to 1.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (ech, pivots) = bareiss(rows, ncols);
    let mut out: Vec<Vec<Rational>> = ech
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = out[i][c].recip();
        for v in out[i].iter_mut() {
            *v *= &inv;
        }
        for k in 0..i {
            let factor = out[k][c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..ncols {
                let delta = &factor * &out[i][j];
                out[k][j] -= delta;
            }
        }
    }
    out
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    bareiss(rows, ncols).1.len()
}

/// Basis of `{v : M v = 0}` in canonical form: the reduced echelon form of the
/// null space, so each vector starts with 1 and vectors are in pivot order.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let reduced = rref(rows, ncols);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|v| !v.is_zero()).expect("nonzero row"))
        .collect();
    let mut raw = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        raw.push(v);
    }
    rref(&raw, ncols)
}

/// Canonical form of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref(vectors, ncols)
}

/// Scales `v` so its first nonzero entry is 1.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(nullspace(&m(&[&[2, 2]]), 2), vec![vec![qi(1), qi(-1)]]);
        assert_eq!(nullspace(&m(&[&[0, 0]]), 2).len(), 2);
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert_eq!(nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(&[&[1, 2, 3], &[2, 4, 7]]);
        let b = m(&[&[3, 6, 10], &[0, 0, 5]]);
        assert_eq!(rref(&a, 3), rref(&b, 3));
        assert_eq!(rref(&a, 3), m(&[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(rank(&a, 3), 2);
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop::collection::vec((-4i64..5, 1i64..4).prop_map(|(a, b)| q(a, b)), c),
                r,
            )
        })
    }

    proptest! {
        #[test]
        fn null_vectors_are_annihilated(a in matrix()) {
            let n = a[0].len();
            let ns = nullspace(&a, n);
            prop_assert_eq!(ns.len() + rank(&a, n), n);
            for v in &ns {
                prop_assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn row_scaling_does_not_change_the_basis(a in matrix(), s in prop::collection::vec((1i64..7, 1i64..5, any::<bool>()), 6)) {
            let n = a[0].len();
            let scaled: Vec<Vec<Rational>> = a.iter().zip(&s).map(|(row, &(p, d, neg))| {
                let f = if neg { -q(p, d) } else { q(p, d) };
                row.iter().map(|x| x * &f).collect()
            }).collect();
            prop_assert_eq!(nullspace(&a, n), nullspace(&scaled, n));
        }
    }
}
