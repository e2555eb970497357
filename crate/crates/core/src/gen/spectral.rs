//! Adjacency-spectrum estimates used to certify generated expanders.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::structure::{components, conductance_exact, EXACT_CONDUCTANCE_MAX_N};
use crate::graph::Graph;
use crate::tape::RandomTape;

const DENSE_MAX_N: usize = 400;
const LANCZOS_STEPS: usize = 120;
const RESIDUAL_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda_n: f64,
    /// `max(λ2, |λn|)`.
    pub lambda: f64,
    /// Exact conductance when `n <= 20`, otherwise the Cheeger lower bound
    /// `(λ1 - λ2) / (2 λ1)`.
    pub phi: f64,
    pub phi_exact: bool,
    pub is_connected: bool,
    /// `false` when the iterative solver did not reach the residual tolerance;
    /// the eigenvalue fields are then estimates only.
    pub converged: bool,
    /// Heuristic `λ = o(d)` flag: `λ / λ1 <= 0.5`.
    pub expander: bool,
}

pub fn spectral_estimate(g: &Graph) -> SpectralReport {
    let n = g.n();
    let regular = n > 0 && (0..n).all(|v| g.degree(v) == g.degree(0));
    let (lambda1, lambda2, lambda_n, converged) = if n <= DENSE_MAX_N {
        dense(g)
    } else {
        lanczos(g, regular)
    };
    let lambda = lambda2.max(lambda_n.abs());
    let is_connected = components(g, g.max_weight()).len() <= 1;
    let (phi, phi_exact) = if (2..=EXACT_CONDUCTANCE_MAX_N).contains(&n) {
        (conductance_exact(g).unwrap_or(0.0), true)
    } else if lambda1 > 0.0 {
        (((lambda1 - lambda2) / (2.0 * lambda1)).max(0.0), false)
    } else {
        (0.0, false)
    };
    SpectralReport {
        lambda1,
        lambda2,
        lambda_n,
        lambda,
        phi,
        phi_exact,
        is_connected,
        converged,
        expander: lambda1 > 0.0 && lambda / lambda1 <= 0.5,
    }
}

/// Steps after which a lazy walk on a `d`-regular graph with second adjacency
/// eigenvalue `lambda2` hits every vertex with probability at least `1/(2n)`:
/// the lazy transition matrix has second eigenvalue `μ = (1 + λ2/d)/2`, and
/// `|P^t(x,y) - 1/n| <= μ^t`.
pub fn lazy_mixing_bound(n: usize, d: usize, lambda2: f64) -> usize {
    let mu = ((1.0 + lambda2 / d as f64) / 2.0).clamp(1e-12, 1.0 - 1e-12);
    ((2.0 * n as f64).ln() / -mu.ln()).ceil().max(1.0) as usize
}

fn dense(g: &Graph) -> (f64, f64, f64, bool) {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (e, _) in g.edges() {
        a[(e.lo, e.hi)] = 1.0;
        a[(e.hi, e.lo)] = 1.0;
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let second = if n >= 2 { ev[1] } else { ev[0] };
    (ev[0], second, *ev.last().unwrap(), true)
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        *out = g.neighbors(v).iter().map(|&w| x[w]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Lanczos with full reorthogonalization. For regular graphs the constant
/// eigenvector is locked out, so the extreme Ritz values are `λ2` and `λn`.
fn lanczos(g: &Graph, regular: bool) -> (f64, f64, f64, bool) {
    let n = g.n();
    let locked: Option<Vec<f64>> = regular.then(|| vec![1.0 / (n as f64).sqrt(); n]);
    let stream = RandomTape::new(0x5eed).stream("spectral");
    let mut q: Vec<f64> = (0..n as u64).map(|i| stream.unit(i) - 0.5).collect();
    let orth = |w: &mut Vec<f64>, basis: &[Vec<f64>], locked: &Option<Vec<f64>>| {
        for _ in 0..2 {
            if let Some(l) = locked {
                let c = dot(w, l);
                axpy(-c, l, w);
            }
            for b in basis {
                let c = dot(w, b);
                axpy(-c, b, w);
            }
        }
    };
    orth(&mut q, &[], &locked);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= norm);

    let steps = LANCZOS_STEPS.min(n - regular as usize);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    for j in 0..steps {
        matvec(g, &basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        let mut next = w.clone();
        orth(&mut next, &basis, &locked);
        let b = dot(&next, &next).sqrt();
        if b < 1e-10 || j + 1 == steps {
            beta.push(b);
            break;
        }
        next.iter_mut().for_each(|x| *x /= b);
        beta.push(b);
        basis.push(next);
    }
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].partial_cmp(&eig.eigenvalues[x]).unwrap());
    let last_beta = *beta.last().unwrap_or(&0.0);
    let residual = |idx: usize| (last_beta * eig.eigenvectors[(k - 1, idx)]).abs();
    let top = eig.eigenvalues[order[0]];
    let bottom = eig.eigenvalues[order[k - 1]];
    let scale = top.abs().max(1.0);
    if regular {
        let d = g.degree(0) as f64;
        let ok = residual(order[0]) < RESIDUAL_TOL * scale.max(d) && residual(order[k - 1]) < RESIDUAL_TOL * scale.max(d);
        (d, top, bottom, ok)
    } else {
        let second = if k >= 2 { eig.eigenvalues[order[1]] } else { top };
        let ok = residual(order[0]) < RESIDUAL_TOL * scale
            && (k < 2 || residual(order[1]) < RESIDUAL_TOL * scale)
            && residual(order[k - 1]) < RESIDUAL_TOL * scale;
        (top, second, bottom, ok)
    }
}
