//! Seeded rational sampling with a fixed 64-bit linear congruential generator,
//! so every implementation draws the same weights from the same seed.

use crate::rational::{q, Rational};

pub const MULTIPLIER: u64 = 6364136223846793005;
pub const INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    /// `s ← a·s + c (mod 2^64)`; returns the new state.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    fn high(&mut self) -> u64 {
        self.next_u64() >> 33
    }

    /// `p/q` with `p = (s >> 33) mod 41 − 20` and, from the next step,
    /// `q = (s >> 33) mod 9 + 1`.
    pub fn rational(&mut self) -> Rational {
        let p = (self.high() % 41) as i64 - 20;
        let d = (self.high() % 9) as i64 + 1;
        q(p, d)
    }

    /// Uniform index below `n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.high() % n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_stream() {
        let mut a = Lcg::new(7);
        assert_eq!(
            a.next_u64(),
            7u64.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT)
        );
        let mut b = Lcg::new(7);
        let xs: Vec<_> = (0..5).map(|_| b.rational()).collect();
        let mut c = Lcg::new(7);
        let ys: Vec<_> = (0..5).map(|_| c.rational()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn range() {
        let mut g = Lcg::new(1);
        for _ in 0..500 {
            let r = g.rational();
            assert!(r.denom() <= &9.into());
            assert!(r.numer().magnitude() <= &20u32.into());
        }
    }
}
