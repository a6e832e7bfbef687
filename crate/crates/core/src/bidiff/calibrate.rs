use crate::closedform;
use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::rational::{self, q, qi, Rational};
use crate::superpoly::Parity;

use super::ops::{ansatz, Algebra};
use super::oracle::solve_sector;

/// Affine map `μ_sv = scale·w + shift` from operator-side density weights to
/// the singular-vector parameters used by the closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    pub scale: Rational,
    pub shift: Rational,
}

impl WeightMap {
    /// The calibrated dictionary, frozen. `calibrate_weight_dictionary`
    /// recomputes it and the test suite checks the two agree.
    pub fn frozen(algebra: Algebra) -> WeightMap {
        let scale = match algebra {
            Algebra::Pgl2 | Algebra::Osp12 => qi(-1),
            Algebra::Pgl21 => qi(-2),
        };
        WeightMap {
            scale,
            shift: qi(0),
        }
    }

    pub fn to_sv(&self, w: &Rational) -> Rational {
        &self.scale * w + &self.shift
    }

    pub fn to_density(&self, mu: &Rational) -> Rational {
        (mu - &self.shift) / &self.scale
    }

    pub fn describe(&self) -> String {
        format!(
            "mu_sv = {}*w + {}",
            rational::format(&self.scale),
            rational::format(&self.shift)
        )
    }
}

/// Generic probe weights (operator side).
fn probes() -> [[Rational; 2]; 3] {
    [[q(1, 3), q(2, 7)], [q(-2, 5), q(3, 4)], [q(5, 4), q(-1, 6)]]
}

fn probe_orders(algebra: Algebra) -> std::ops::RangeInclusive<u32> {
    match algebra {
        // Orders 1 and 2 of osp(1|2) are homogeneous in the weights and cannot
        // fix the scale; orders 3 and 4 can.
        Algebra::Osp12 => 1..=4,
        Algebra::Pgl2 | Algebra::Pgl21 => 1..=2,
    }
}

fn candidates() -> Vec<WeightMap> {
    let scales = [q(-2, 1), qi(-1), q(-1, 2), q(1, 2), qi(1), qi(2)];
    let mut out = Vec::new();
    for scale in scales {
        for k in -4..=4 {
            out.push(WeightMap {
                scale: scale.clone(),
                shift: q(k, 2),
            });
        }
    }
    out
}

/// Determines the weight dictionary by matching oracle null spaces against
/// the closed-form families over a grid of affine candidates.
pub fn calibrate_weight_dictionary(algebra: Algebra) -> Result<WeightMap> {
    struct Probe {
        order: u32,
        weights: [Rational; 2],
        spans: [Vec<Vec<Rational>>; 2],
    }
    let mut data = Vec::new();
    for order in probe_orders(algebra) {
        for weights in probes() {
            let spans = [Parity::Even, Parity::Odd]
                .map(|p| solve_sector(algebra, order, &weights, &ansatz(algebra, order, p)));
            data.push(Probe {
                order,
                weights,
                spans,
            });
        }
    }
    let matching: Vec<WeightMap> = candidates()
        .into_iter()
        .filter(|map| {
            data.iter().all(|probe| {
                let mu = probe.weights.clone().map(|w| map.to_sv(&w));
                let family = closedform::closed_form(algebra, probe.order, &mu[0], &mu[1]);
                [Parity::Even, Parity::Odd].iter().all(|&p| {
                    let keys = ansatz(algebra, probe.order, p);
                    let vectors: Vec<_> = family.basis_of(p).map(|b| b.vector(&keys)).collect();
                    rref(&vectors, keys.len()) == probe.spans[p.bit()]
                })
            })
        })
        .collect();
    match matching.as_slice() {
        [only] => Ok(only.clone()),
        [] => Err(Error::Calibration(format!("no affine map fits {algebra}"))),
        many => Err(Error::Calibration(format!(
            "{} affine maps fit {algebra}",
            many.len()
        ))),
    }
}
