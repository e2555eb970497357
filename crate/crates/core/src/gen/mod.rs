//! Instance generators and full-access structural oracles.
//!
//! Generators are pure functions of `(GenSpec, seed)`: all randomness is read
//! from the public tape (`"gen"` for structure, `"weights"` for weights).

mod fixtures;
mod random;
mod spectral;
mod structure;

pub use fixtures::Fixture;
pub use spectral::{lazy_mixing_bound, spectral_estimate, SpectralReport};
pub use structure::{components, conductance_exact, percolation_profile, PercolationProfile, EXACT_CONDUCTANCE_MAX_N};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, Weight};
use crate::tape::RandomTape;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Model {
    Regular { n: usize, d: usize },
    /// `G(n, p)` with `p = n^(delta - 1)`, so the expected degree is about `n^delta`.
    ErdosRenyi { n: usize, delta: f64 },
    PathOrCycle { n: usize, cycle: bool },
    Fixture(Fixture),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightSpec {
    Unweighted,
    Uniform { max: Weight },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    pub model: Model,
    pub weights: WeightSpec,
    pub seed: u64,
}

impl GenSpec {
    pub fn regular(n: usize, d: usize, seed: u64) -> Self {
        GenSpec { model: Model::Regular { n, d }, weights: WeightSpec::Unweighted, seed }
    }

    pub fn erdos_renyi(n: usize, delta: f64, seed: u64) -> Self {
        GenSpec { model: Model::ErdosRenyi { n, delta }, weights: WeightSpec::Unweighted, seed }
    }

    pub fn weighted(mut self, max: Weight) -> Self {
        self.weights = WeightSpec::Uniform { max };
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.model {
            Model::Regular { n, d } => {
                if d < 3 || d >= n {
                    return Err(Error::InvalidSpec(format!("regular model needs 3 <= d < n (n={n}, d={d})")));
                }
                if (n * d) % 2 != 0 {
                    return Err(Error::InvalidSpec(format!("n*d must be even (n={n}, d={d})")));
                }
            }
            Model::ErdosRenyi { n, delta } => {
                if !(delta > 0.0 && delta <= 1.0) {
                    return Err(Error::InvalidSpec(format!("delta must be in (0, 1], got {delta}")));
                }
                if n < 2 {
                    return Err(Error::InvalidSpec("G(n,p) needs n >= 2".into()));
                }
            }
            Model::PathOrCycle { n, cycle } => {
                if n < 2 || (cycle && n < 3) {
                    return Err(Error::InvalidSpec(format!("path needs n >= 2, cycle n >= 3 (n={n})")));
                }
            }
            Model::Fixture(f) => f.validate()?,
        }
        if let WeightSpec::Uniform { max: 0 } = self.weights {
            return Err(Error::InvalidSpec("W must be at least 1".into()));
        }
        Ok(())
    }
}

/// Edge probability for `G(n, p)` with `np ≈ n^delta`.
pub fn gnp_probability(n: usize, delta: f64) -> f64 {
    (n as f64).powf(delta - 1.0).min(1.0)
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let tape = RandomTape::new(spec.seed);
    let (n, edges): (usize, Vec<(Vertex, Vertex)>) = match &spec.model {
        Model::Regular { n, d } => (*n, random::regular_edges(*n, *d, &tape)?),
        Model::ErdosRenyi { n, delta } => (*n, random::gnp_edges(*n, gnp_probability(*n, *delta), &tape)),
        Model::PathOrCycle { n, cycle } => {
            let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            if *cycle {
                e.push((0, n - 1));
            }
            (*n, e)
        }
        Model::Fixture(f) => return f.build(spec.weights, &tape),
    };
    assign_weights(n, edges, spec.weights, &tape)
}

/// Assigns i.i.d. uniform weights in canonical `(lo, hi)` edge order.
pub(crate) fn assign_weights(
    n: usize,
    mut edges: Vec<(Vertex, Vertex)>,
    weights: WeightSpec,
    tape: &RandomTape,
) -> Result<Graph> {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    match weights {
        WeightSpec::Unweighted => Graph::from_edges(n, &edges),
        WeightSpec::Uniform { max } => {
            let stream = tape.stream("weights");
            let weighted: Vec<_> = edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u, v, stream.uniform1(i as u64, max as u64) as Weight))
                .collect();
            Graph::from_weighted_edges(n, &weighted, max)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_4_3_is_k4() {
        for seed in 0..5 {
            let g = generate(&GenSpec::regular(4, 3, seed)).unwrap();
            assert_eq!(g.m(), 6);
            for v in 0..4 {
                assert_eq!(g.degree(v), 3);
            }
        }
    }

    #[test]
    fn regular_is_regular_and_simple() {
        for (n, d) in [(64, 8), (100, 3), (256, 16), (1024, 32)] {
            let g = generate(&GenSpec::regular(n, d, 11)).unwrap();
            assert!((0..n).all(|v| g.degree(v) == d));
            assert_eq!(g.m(), n * d / 2);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = generate(&GenSpec::regular(128, 6, 3)).unwrap();
        let b = generate(&GenSpec::regular(128, 6, 3)).unwrap();
        let c = generate(&GenSpec::regular(128, 6, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let a = generate(&GenSpec::erdos_renyi(500, 0.5, 3).weighted(3)).unwrap();
        let b = generate(&GenSpec::erdos_renyi(500, 0.5, 3).weighted(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GenSpec::regular(5, 3, 0)).is_err(), "odd n*d");
        assert!(generate(&GenSpec::regular(4, 4, 0)).is_err(), "d >= n");
        assert!(generate(&GenSpec::regular(10, 2, 0)).is_err(), "d < 3");
        assert!(generate(&GenSpec::erdos_renyi(10, 0.0, 0)).is_err());
        assert!(generate(&GenSpec::erdos_renyi(10, 1.5, 0)).is_err());
        assert!(generate(&GenSpec::regular(10, 3, 0).weighted(0)).is_err());
    }

    #[test]
    fn gnp_mean_degree() {
        // Expected degree is (n-1)p with p = n^(delta-1).
        let (n, delta) = (4096, 0.5);
        let expected = (n as f64 - 1.0) * gnp_probability(n, delta);
        let mean: f64 = (0..20)
            .map(|seed| {
                let g = generate(&GenSpec::erdos_renyi(n, delta, seed)).unwrap();
                2.0 * g.m() as f64 / n as f64
            })
            .sum::<f64>()
            / 20.0;
        assert!((mean - expected).abs() < 0.1 * expected, "mean {mean} vs {expected}");
        assert!((mean - 64.0).abs() < 6.4);
    }

    #[test]
    fn gnp_full_density() {
        let g = generate(&GenSpec::erdos_renyi(12, 1.0, 0)).unwrap();
        assert_eq!(g.m(), 66);
    }

    #[test]
    fn uniform_weight_two_is_fair() {
        let mut ones = 0usize;
        let mut total = 0usize;
        let mut seed = 0;
        while total < 100_000 {
            let g = generate(&GenSpec::regular(2048, 16, seed).weighted(2)).unwrap();
            for (_, w) in g.edges() {
                assert!((1..=2).contains(&w));
                ones += (w == 1) as usize;
                total += 1;
            }
            seed += 1;
        }
        let frac = ones as f64 / total as f64;
        assert!((frac - 0.5).abs() < 0.02, "weight-1 fraction {frac}");
    }

    #[test]
    fn path_and_cycle() {
        let p = generate(&GenSpec { model: Model::PathOrCycle { n: 5, cycle: false }, weights: WeightSpec::Unweighted, seed: 0 }).unwrap();
        assert_eq!(p.m(), 4);
        let c = generate(&GenSpec { model: Model::PathOrCycle { n: 5, cycle: true }, weights: WeightSpec::Unweighted, seed: 0 }).unwrap();
        assert_eq!(c.m(), 5);
        assert!(c.has_edge(0, 4));
    }
}
