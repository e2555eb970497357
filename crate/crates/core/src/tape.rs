//! Public random tape: a counter-mode pseudorandom function addressed by
//! `(seed, label, index)`.
//!
//! Draws do not depend on call order, so every query replays exactly the same
//! bits for the same address.

use rand_core::{impls, RngCore};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn fmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xCBF2_9CE4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomTape {
    seed: u64,
}

impl RandomTape {
    pub fn new(seed: u64) -> Self {
        RandomTape { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, label: &str) -> Stream {
        Stream { key: fmix(self.seed ^ fmix(fnv1a(label.as_bytes()))) }
    }

    pub fn draw(&self, label: &str, index: u64) -> u64 {
        self.stream(label).draw(index)
    }
}

/// One labelled stream of a tape, with the label hash precomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stream {
    key: u64,
}

impl Stream {
    #[inline]
    pub fn draw(&self, index: u64) -> u64 {
        let h = fmix(self.key.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)));
        fmix(h ^ self.key.rotate_left(29))
    }

    /// Uniform integer in `1..=m` (1-based, matching `Nbr` indexing).
    #[inline]
    pub fn uniform1(&self, index: u64, m: u64) -> u64 {
        debug_assert!(m > 0);
        (((self.draw(index) as u128) * (m as u128)) >> 64) as u64 + 1
    }

    /// Bernoulli(q) coin; `q >= 1` always succeeds.
    #[inline]
    pub fn coin(&self, index: u64, q: f64) -> bool {
        if q >= 1.0 {
            return true;
        }
        if q <= 0.0 {
            return false;
        }
        self.draw(index) < (q * 18_446_744_073_709_551_616.0) as u64
    }

    #[inline]
    pub fn unit(&self, index: u64) -> f64 {
        (self.draw(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Sequential reader over this stream, usable wherever `rand` wants an RNG.
    pub fn reader(&self) -> TapeReader {
        TapeReader { stream: *self, next: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct TapeReader {
    stream: Stream,
    next: u64,
}

impl TapeReader {
    pub fn position(&self) -> u64 {
        self.next
    }
}

impl RngCore for TapeReader {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        let x = self.stream.draw(self.next);
        self.next += 1;
        x
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        impls::fill_bytes_via_next(self, dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand_core::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_independent() {
        let tape = RandomTape::new(42);
        let forward: Vec<u64> = (0..100).map(|i| tape.draw("walk/3", i)).collect();
        let backward: Vec<u64> = (0..100).rev().map(|i| tape.draw("walk/3", i)).collect();
        assert!(forward.iter().eq(backward.iter().rev()));
        assert_ne!(tape.draw("walk/3", 0), tape.draw("walk/4", 0));
        assert_ne!(tape.draw("walk/3", 0), RandomTape::new(43).draw("walk/3", 0));
    }

    #[test]
    fn uniform_is_roughly_flat() {
        let s = RandomTape::new(7).stream("u");
        let mut counts = [0usize; 6];
        let trials = 60_000;
        for i in 0..trials {
            let r = s.uniform1(i, 6);
            assert!((1..=6).contains(&r));
            counts[(r - 1) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 400.0, "{counts:?}");
        }
    }

    #[test]
    fn streams_uncorrelated() {
        let tape = RandomTape::new(1);
        let (a, b) = (tape.stream("a"), tape.stream("b"));
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|i| a.unit(i)).collect();
        let ys: Vec<f64> = (0..n).map(|i| b.unit(i)).collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let (mx, my) = (mean(&xs), mean(&ys));
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / n as f64;
        let corr = cov / (1.0 / 12.0);
        assert!(corr.abs() < 0.03, "correlation {corr}");
        assert!((mx - 0.5).abs() < 0.01);
    }

    #[test]
    fn coin_rate() {
        let s = RandomTape::new(9).stream("coin");
        let hits = (0..100_000).filter(|&i| s.coin(i, 0.3)).count();
        assert!((hits as f64 / 100_000.0 - 0.3).abs() < 0.01);
        assert!(s.coin(0, 1.0));
        assert!(!s.coin(0, 0.0));
    }
}
