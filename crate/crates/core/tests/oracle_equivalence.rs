use grc::bidiff::{
    ansatz, full_generators, is_invariant, solve_invariant_space, Algebra, WeightMap,
};
use grc::closedform::{closed_form, cmz_bracket, near_resonance, rc_bracket};
use grc::linalg::rref;
use grc::rational::{q, qi, Rational};
use grc::sampling::Lcg;
use grc::superpoly::Parity;

fn generic_pairs(seed: u64, count: usize) -> Vec<[Rational; 2]> {
    let mut rng = Lcg::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let pair = [rng.rational(), rng.rational()];
        if !near_resonance(&pair[0], &pair[1]) {
            out.push(pair);
        }
    }
    out
}

/// Compares oracle and closed-form spans at singular-vector parameters.
fn assert_equivalent(alg: Algebra, order: u32, mu: &[Rational; 2]) {
    let map = WeightMap::frozen(alg);
    let (w1, w2) = (map.to_density(&mu[0]), map.to_density(&mu[1]));
    let oracle = solve_invariant_space(alg, order, &w1, &w2).unwrap();
    let family = closed_form(alg, order, &mu[0], &mu[1]);
    for parity in [Parity::Even, Parity::Odd] {
        let keys = ansatz(alg, order, parity);
        let a: Vec<_> = oracle.basis_of(parity).map(|b| b.vector(&keys)).collect();
        let b: Vec<_> = family.basis_of(parity).map(|b| b.vector(&keys)).collect();
        assert_eq!(
            a,
            rref(&b, keys.len()),
            "{alg} order {order} mu {mu:?} {parity}"
        );
    }
}

fn resonant_grid(order: u32, step: Rational) -> Vec<[Rational; 2]> {
    let limit = 2 * order as i64 + 2;
    let mut out = Vec::new();
    let mut m1 = qi(-2);
    while m1 <= qi(limit) {
        let mut m2 = qi(-2);
        while m2 <= qi(limit) {
            out.push([m1.clone(), m2.clone()]);
            m2 += &step;
        }
        m1 += &step;
    }
    out
}

#[test]
fn line_closed_form_matches_oracle() {
    for n in 0..=5 {
        for mu in generic_pairs(11, 6)
            .iter()
            .chain(resonant_grid(n, q(1, 2)).iter())
        {
            assert_equivalent(Algebra::Pgl2, n, mu);
        }
    }
}

#[test]
fn contact_closed_form_matches_oracle() {
    for order in 0..=7 {
        let grid = resonant_grid(order / 2 + 1, qi(1));
        for mu in generic_pairs(12, 4).iter().chain(grid.iter()) {
            assert_equivalent(Algebra::Osp12, order, mu);
        }
    }
}

#[test]
fn superdomain_closed_form_matches_oracle() {
    for n in 0..=4 {
        for mu in generic_pairs(13, 4)
            .iter()
            .chain(resonant_grid(n, qi(1)).iter())
        {
            assert_equivalent(Algebra::Pgl21, n, mu);
        }
    }
}

#[test]
fn rc_bracket_is_invariant() {
    for n in 0..=6 {
        for [m1, m2] in generic_pairs(21, 3) {
            let op = rc_bracket(&m1, &m2, n);
            assert!(is_invariant(&op, &full_generators(Algebra::Pgl2), 2 * n + 3).unwrap());
        }
    }
}

#[test]
fn cmz_brackets_are_invariant() {
    for twice_k in 1..=6 {
        let k = q(twice_k, 2);
        for [m1, m2] in generic_pairs(31, 3) {
            let op = cmz_bracket(&m1, &m2, &k).unwrap();
            let bound = 2 * op.order + 3;
            assert!(
                is_invariant(&op, &full_generators(Algebra::Osp12), bound).unwrap(),
                "k={k}"
            );
        }
    }
}

#[test]
fn oracle_bases_pass_the_full_generator_set() {
    for alg in Algebra::ALL {
        for order in 0..=4 {
            for mu in [[qi(0), qi(0)], [q(1, 3), q(-2, 7)], [qi(2), qi(2)]] {
                let map = WeightMap::frozen(alg);
                let res = solve_invariant_space(
                    alg,
                    order,
                    &map.to_density(&mu[0]),
                    &map.to_density(&mu[1]),
                )
                .unwrap();
                for b in &res.basis {
                    assert!(
                        is_invariant(b, &full_generators(alg), 2 * order + 3).unwrap(),
                        "{alg} {order} {mu:?}"
                    );
                }
            }
        }
    }
}
