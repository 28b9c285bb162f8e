use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{AlgebraElement, Scalar};
use crate::group::{GroupDescription, GroupElement};

/// Seed of the start vector used by every power iteration.
pub const POWER_ITERATION_SEED: u64 = 0x0005_eed0_fa11;

/// Compression of left multiplication by `a` to the span of a finite basis:
/// `entry(u, v) = α_{u v^{-1}}`.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    basis: Vec<GroupElement>,
    /// Row-major: `rows[i]` holds `(j, entry(i, j))`, sorted by `j`.
    rows: Vec<Vec<(usize, Complex64)>>,
    /// The conjugate transpose, same layout.
    adjoint_rows: Vec<Vec<(usize, Complex64)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerIteration {
    /// Largest `‖T x‖ / ‖x‖` seen; always a lower bound for `‖T‖`.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl TruncatedOperator {
    /// Panics if `basis` has repeated elements.
    pub fn new<S: Scalar>(
        group: &GroupDescription,
        a: &AlgebraElement<S>,
        basis: Vec<GroupElement>,
    ) -> Self {
        let index: HashMap<&GroupElement, usize> =
            basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
        assert_eq!(index.len(), basis.len(), "basis elements must be distinct");
        let coeffs: Vec<(&GroupElement, Complex64)> =
            a.terms().iter().map(|(g, c)| (g, c.to_complex())).collect();
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); basis.len()];
        let mut adjoint_rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); basis.len()];
        for (j, v) in basis.iter().enumerate() {
            for &(s, c) in &coeffs {
                if let Some(&i) = index.get(&group.mul(s, v)) {
                    rows[i].push((j, c));
                    adjoint_rows[j].push((i, c.conj()));
                }
            }
        }
        for r in rows.iter_mut().chain(adjoint_rows.iter_mut()) {
            r.sort_by_key(|&(j, _)| j);
        }
        TruncatedOperator {
            basis,
            rows,
            adjoint_rows,
        }
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i]
            .iter()
            .filter(|&&(k, _)| k == j)
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, c)| (i, j, c)))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.nonzero_entries()
            .all(|(i, j, c)| (self.entry(j, i) - c.conj()).norm() <= tol)
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        mat_vec(&self.rows, x)
    }

    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        mat_vec(&self.adjoint_rows, x)
    }

    /// Top singular value by power iteration on `T^* T` from a fixed
    /// positive start vector.
    pub fn top_singular_value(&self, max_iterations: usize, tol: f64) -> PowerIteration {
        let n = self.dim();
        if n == 0 {
            return PowerIteration {
                value: 0.0,
                iterations: 0,
                converged: true,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(POWER_ITERATION_SEED);
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(0.5..1.5), 0.0))
            .collect();
        normalize(&mut x);
        let mut best = 0.0f64;
        let mut prev = f64::NAN;
        for it in 1..=max_iterations {
            let y = self.apply(&x);
            let sigma = norm(&y);
            best = best.max(sigma);
            let mut z = self.apply_adjoint(&y);
            let zn = norm(&z);
            if zn == 0.0 {
                return PowerIteration {
                    value: best,
                    iterations: it,
                    converged: true,
                };
            }
            if (sigma - prev).abs() <= tol * sigma {
                return PowerIteration {
                    value: best,
                    iterations: it,
                    converged: true,
                };
            }
            prev = sigma;
            z.iter_mut().for_each(|v| *v /= zn);
            x = z;
        }
        PowerIteration {
            value: best,
            iterations: max_iterations,
            converged: false,
        }
    }
}

fn mat_vec(rows: &[Vec<(usize, Complex64)>], x: &[Complex64]) -> Vec<Complex64> {
    rows.par_iter()
        .with_min_len(1024)
        .map(|r| r.iter().map(|&(j, c)| c * x[j]).sum())
        .collect()
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(x: &mut [Complex64]) {
    let n = norm(x);
    x.iter_mut().for_each(|v| *v /= n);
}
