//! Damped Newton iteration for complex nonlinear systems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

/// Iteration controls.
#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub max_steps: usize,
    /// Convergence threshold on the max-norm of the residual.
    pub tol: f64,
    /// Relative finite-difference step for the Jacobian.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_steps: 60, tol: 1e-12, fd_step: 1e-7 }
    }
}

/// Converged solution with its residual history.
#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub steps: usize,
    pub trace: Vec<f64>,
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn two_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Central-difference Jacobian of a holomorphic map.
pub fn jacobian<F>(f: &F, x: &[Complex64], fd_step: f64) -> Result<DMatrix<Complex64>>
where
    F: Fn(&[Complex64]) -> Result<Vec<Complex64>>,
{
    let n = x.len();
    let m = f(x)?.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut xp = x.to_vec();
    for k in 0..n {
        let h = fd_step * x[k].norm().max(1.0);
        xp[k] = x[k] + h;
        let fp = f(&xp)?;
        xp[k] = x[k] - h;
        let fm = f(&xp)?;
        xp[k] = x[k];
        for r in 0..m {
            jac[(r, k)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Newton with Armijo backtracking on the residual 2-norm.
///
/// The map must have as many outputs as inputs. Trial points whose residual cannot be
/// evaluated are treated as failed line-search steps.
pub fn solve<F>(f: F, x0: &[Complex64], opts: NewtonOptions) -> Result<NewtonOutcome>
where
    F: Fn(&[Complex64]) -> Result<Vec<Complex64>>,
{
    let mut x = x0.to_vec();
    let mut r = f(&x)?;
    if r.len() != x.len() {
        return Err(Error::InvalidInput(format!("{} equations for {} unknowns", r.len(), x.len())));
    }
    let mut trace = vec![max_norm(&r)];
    if x.is_empty() {
        return Ok(NewtonOutcome { x, residual: 0.0, steps: 0, trace });
    }
    for step in 0..opts.max_steps {
        let res = max_norm(&r);
        if res < opts.tol {
            return Ok(NewtonOutcome { x, residual: res, steps: step, trace });
        }
        let jac = jacobian(&f, &x, opts.fd_step)?;
        let rhs = DVector::from_iterator(r.len(), r.iter().map(|z| -z));
        let Some(dx) = jac.lu().solve(&rhs) else {
            return Err(Error::NoConvergence { steps: step, residual: res });
        };
        let base = two_norm(&r);
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-10 {
            let trial: Vec<Complex64> = x.iter().zip(dx.iter()).map(|(a, d)| a + d * t).collect();
            if let Ok(rt) = f(&trial) {
                if rt.iter().all(|z| z.is_finite()) && two_norm(&rt) <= (1.0 - 1e-4 * t) * base {
                    accepted = Some((trial, rt));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((xn, rn)) => {
                x = xn;
                r = rn;
            }
            None => {
                // No descent left: either converged to rounding level or stuck.
                let res = max_norm(&r);
                if res < opts.tol * 1e3 && res < 1e-9 {
                    return Ok(NewtonOutcome { x, residual: res, steps: step, trace });
                }
                return Err(Error::NoConvergence { steps: step, residual: res });
            }
        }
        trace.push(max_norm(&r));
    }
    let res = max_norm(&r);
    if res < opts.tol {
        Ok(NewtonOutcome { x, residual: res, steps: opts.max_steps, trace })
    } else {
        Err(Error::NoConvergence { steps: opts.max_steps, residual: res })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_root_of_complex() {
        let target = c(3.0, 4.0);
        let out = solve(|x: &[Complex64]| Ok(vec![x[0] * x[0] - target]), &[c(1.0, 1.0)], NewtonOptions::default()).unwrap();
        assert!((out.x[0] - c(2.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn coupled_system() {
        // x + y = 3, x y = 2 from a generic start
        let f = |v: &[Complex64]| Ok(vec![v[0] + v[1] - 3.0, v[0] * v[1] - 2.0]);
        let out = solve(f, &[c(0.3, 0.1), c(2.5, -0.2)], NewtonOptions::default()).unwrap();
        let mut xs = [out.x[0].re, out.x[1].re];
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] - 1.0).abs() < 1e-12 && (xs[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_system_converges() {
        let out = solve(|_: &[Complex64]| Ok(vec![]), &[], NewtonOptions::default()).unwrap();
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn real_start_cannot_reach_complex_root() {
        // Newton on x^2 + 1 stays on the real axis from a real start.
        let r = solve(|x: &[Complex64]| Ok(vec![x[0] * x[0] + 1.0]), &[c(0.5, 0.0)], NewtonOptions::default());
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }
}
