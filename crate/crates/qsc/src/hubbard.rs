//! Nested Bethe equations of the centrally extended su(2|2) chain and the Lieb-Wu equations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::Coupling;
use crate::newton::{self, NewtonOptions};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Denominators below this modulus count as collisions.
const SINGULAR: f64 = 1e-13;

/// Parameters of the nested system.
///
/// Without inhomogeneities the per-site factors take their homogeneous limit, `−x` on the
/// first node and `−1/x` on the last, which corresponds to the source `F = x^{−L}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HubbardSpec {
    pub c: Coupling,
    pub m_theta: usize,
    pub inhom: Option<Vec<(Complex64, Complex64)>>,
    pub x1: Complex64,
    pub y1: Complex64,
}

impl HubbardSpec {
    /// Homogeneous spec with `F = x^{−L}`.
    pub fn homogeneous(c: Coupling, m_theta: usize, x1: Complex64, y1: Complex64) -> Self {
        HubbardSpec { c, m_theta, inhom: None, x1, y1 }
    }

    /// Inhomogeneous spec; every pair must satisfy the full shell condition.
    pub fn with_inhomogeneities(c: Coupling, inhom: Vec<(Complex64, Complex64)>, x1: Complex64, y1: Complex64) -> Result<Self> {
        for (p, m) in &inhom {
            crate::analytic::check_shell(*p, *m, c, 1e-9)?;
        }
        Ok(HubbardSpec { c, m_theta: inhom.len(), inhom: Some(inhom), x1, y1 })
    }

    /// Inhomogeneous spec continued under the cut: only the shift constraint is enforced.
    pub fn with_continued_inhomogeneities(c: Coupling, inhom: Vec<(Complex64, Complex64)>, x1: Complex64, y1: Complex64) -> Result<Self> {
        for (p, m) in &inhom {
            let gap = p + 1.0 / p - m - 1.0 / m - I * (2.0 / c.h);
            if gap.norm() > 1e-9 * (1.0 + p.norm()) {
                return Err(Error::ShellViolation(format!("shift constraint off by {:e}", gap.norm())));
            }
        }
        Ok(HubbardSpec { c, m_theta: inhom.len(), inhom: Some(inhom), x1, y1 })
    }

    fn first_site_product(&self, x: Complex64) -> Result<Complex64> {
        match &self.inhom {
            None => Ok((-x).powu(self.m_theta as u32)),
            Some(list) => list.iter().try_fold(Complex64::new(1.0, 0.0), |acc, (yp, ym)| {
                let den = ym - 1.0 / x;
                if den.norm() < SINGULAR {
                    return Err(Error::SingularDenominator("y⁻ − 1/x".into()));
                }
                Ok(acc * (ym / yp).sqrt() * (yp - 1.0 / x) / den)
            }),
        }
    }

    fn last_site_product(&self, x: Complex64) -> Result<Complex64> {
        match &self.inhom {
            None => Ok((-1.0 / x).powu(self.m_theta as u32)),
            Some(list) => list.iter().try_fold(Complex64::new(1.0, 0.0), |acc, (yp, ym)| {
                let den = x - ym;
                if den.norm() < SINGULAR {
                    return Err(Error::SingularDenominator("x − y⁻".into()));
                }
                Ok(acc * (ym / yp).sqrt() * (x - yp) / den)
            }),
        }
    }
}

/// Roots of the nested system: first-sheet zeros, middle-node rapidities, second-sheet zeros.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct HubbardRoots {
    pub x1e: Vec<Complex64>,
    pub u11: Vec<Complex64>,
    pub x112: Vec<Complex64>,
}

fn ratio(num: Complex64, den: Complex64, what: &str) -> Result<Complex64> {
    if den.norm() < SINGULAR {
        return Err(Error::SingularDenominator(what.into()));
    }
    Ok(num / den)
}

/// Product over middle-node roots of `(v − u_k + i/2)/(v − u_k − i/2)`.
fn half_shift_product(v: Complex64, u11: &[Complex64]) -> Result<Complex64> {
    u11.iter().try_fold(Complex64::new(1.0, 0.0), |acc, w| Ok(acc * ratio(v - w + 0.5 * I, v - w - 0.5 * I, "u − u₁₁ ∓ i/2")?))
}

/// Principal-log residuals, ordered first node, middle node, last node.
pub fn nested_residuals(spec: &HubbardSpec, roots: &HubbardRoots) -> Result<Vec<Complex64>> {
    let c = spec.c;
    let u1e: Vec<Complex64> = roots.x1e.iter().map(|&x| c.u_of_x(x)).collect();
    let u112: Vec<Complex64> = roots.x112.iter().map(|&x| c.u_of_x(x)).collect();
    let lead = spec.x1 / spec.y1;
    let mut out = Vec::with_capacity(u1e.len() + roots.u11.len() + u112.len());
    for (&x, &u) in roots.x1e.iter().zip(&u1e) {
        let lhs = lead * spec.first_site_product(x)? * half_shift_product(u, &roots.u11)?;
        out.push(lhs.ln());
    }
    for &v in &roots.u11 {
        let mut lhs = 1.0 / (spec.y1 * spec.y1);
        for &w in &roots.u11 {
            lhs *= ratio(v - w + I, v - w - I, "u₁₁ collision")?;
        }
        for &w in u1e.iter().chain(&u112) {
            lhs *= ratio(v - w - 0.5 * I, v - w + 0.5 * I, "u₁₁ − u ∓ i/2")?;
        }
        out.push((-lhs).ln());
    }
    for (&x, &u) in roots.x112.iter().zip(&u112) {
        let lhs = lead * spec.last_site_product(x)? * half_shift_product(u, &roots.u11)?;
        out.push(lhs.ln());
    }
    Ok(out)
}

fn split_roots(v: &[Complex64], counts: (usize, usize, usize)) -> HubbardRoots {
    HubbardRoots {
        x1e: v[..counts.0].to_vec(),
        u11: v[counts.0..counts.0 + counts.1].to_vec(),
        x112: v[counts.0 + counts.1..].to_vec(),
    }
}

/// Damped Newton on the nested log residuals from a seed with the given root counts.
pub fn solve_nested(spec: &HubbardSpec, counts: (usize, usize, usize), seed: &HubbardRoots, opts: NewtonOptions) -> Result<HubbardRoots> {
    if (seed.x1e.len(), seed.u11.len(), seed.x112.len()) != counts {
        return Err(Error::InvalidInput(format!("seed does not carry {counts:?} roots")));
    }
    let x0: Vec<Complex64> = seed.x1e.iter().chain(&seed.u11).chain(&seed.x112).copied().collect();
    let out = newton::solve(|v| nested_residuals(spec, &split_roots(v, counts)), &x0, opts)?;
    Ok(split_roots(&out.x, counts))
}

/// Charge momenta and spin rapidities of a Lieb-Wu state.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct LiebWuRoots {
    pub k: Vec<Complex64>,
    pub lambda: Vec<Complex64>,
}

/// Principal-log residuals of the Lieb-Wu equations, spin family first, then charge family.
///
/// Spin: `Π_j (λ_i − λ_j + 2i𝐮)/(λ_i − λ_j − 2i𝐮) Π_j (λ_i − sin k_j − i𝐮)/(λ_i − sin k_j + i𝐮) = −1`.
/// Charge: `Π_j (sin k_i − λ_j + i𝐮)/(sin k_i − λ_j − i𝐮) = e^{iLk_i}`.
pub fn liebwu_residuals(l: usize, u: f64, roots: &LiebWuRoots) -> Result<Vec<Complex64>> {
    let s: Vec<Complex64> = roots.k.iter().map(|k| k.sin()).collect();
    let mut out = Vec::with_capacity(roots.k.len() + roots.lambda.len());
    for &li in &roots.lambda {
        let mut lhs = Complex64::new(1.0, 0.0);
        for &lj in &roots.lambda {
            lhs *= ratio(li - lj + 2.0 * I * u, li - lj - 2.0 * I * u, "λ collision")?;
        }
        for &sj in &s {
            lhs *= ratio(li - sj - I * u, li - sj + I * u, "λ − sin k ± i𝐮")?;
        }
        out.push((-lhs).ln());
    }
    for (&k, &si) in roots.k.iter().zip(&s) {
        let mut lhs = (-I * (l as f64) * k).exp();
        for &lj in &roots.lambda {
            lhs *= ratio(si - lj + I * u, si - lj - I * u, "sin k − λ ± i𝐮")?;
        }
        out.push(lhs.ln());
    }
    Ok(out)
}

/// Lieb-Wu equations in logarithmic form with quantum numbers, spin family first.
///
/// Half-integer offsets follow the parity rules: `I_j` is shifted by `M/2` and `J_α` by
/// `(N − M + 1)/2`, both taken mod 1.
fn takahashi_residuals(l: usize, u: f64, it: &[f64], jt: &[f64], k: &[Complex64], lam: &[Complex64]) -> Vec<Complex64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let s: Vec<Complex64> = k.iter().map(|k| k.sin()).collect();
    let mut out = Vec::with_capacity(k.len() + lam.len());
    for (a, &la) in lam.iter().enumerate() {
        let mut r = Complex64::new(-two_pi * jt[a], 0.0);
        for &sj in &s {
            r += 2.0 * ((la - sj) / u).atan();
        }
        for &lb in lam {
            r -= 2.0 * ((la - lb) / (2.0 * u)).atan();
        }
        out.push(r);
    }
    for (j, (&kj, &sj)) in k.iter().zip(&s).enumerate() {
        let mut r = kj * l as f64 - two_pi * it[j];
        for &lb in lam {
            r += 2.0 * ((sj - lb) / u).atan();
        }
        out.push(r);
    }
    out
}

/// Starting coupling of the homotopy.
const HOMOTOPY_START: f64 = 1e3;
/// Spin rapidities beyond this modulus are treated as escaped to infinity.
const LAMBDA_ESCAPE: f64 = 1e6;

/// Solves the decoupled spin equations `N·2atan μ_a − 2πJ_a − Σ_b 2atan((μ_a − μ_b)/2) = 0`.
fn decoupled_spin_seed(n: usize, jt: &[f64]) -> Result<Vec<Complex64>> {
    let m = jt.len();
    if m == 0 {
        return Ok(vec![]);
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let x0: Vec<Complex64> = jt.iter().map(|j| Complex64::new((std::f64::consts::PI * j / n as f64).tan(), 0.0)).collect();
    let f = |mu: &[Complex64]| {
        Ok((0..m)
            .map(|a| {
                let mut r = 2.0 * n as f64 * mu[a].atan() - two_pi * jt[a];
                for b in 0..m {
                    r -= 2.0 * ((mu[a] - mu[b]) / 2.0).atan();
                }
                r
            })
            .collect())
    };
    Ok(newton::solve(f, &x0, NewtonOptions::default())?.x)
}

fn has_collision(lw: &LiebWuRoots) -> bool {
    let phases: Vec<Complex64> = lw.k.iter().map(|k| (I * k).exp()).collect();
    let close = |v: &[Complex64]| (0..v.len()).any(|i| ((i + 1)..v.len()).any(|j| (v[i] - v[j]).norm() < 1e-8));
    close(&phases) || close(&lw.lambda)
}

/// Homotopy continuation in the coupling from the decoupled point, then Newton at `u`.
///
/// The coupling runs geometrically from a large value down to `u` in `steps` stages. Two
/// momenta with equal `e^{ik}` or two equal rapidities abort with [`Error::PathCollision`].
pub fn solve_liebwu(l: usize, u: f64, n: usize, m: usize, qi: &[i64], qj: &[i64]) -> Result<LiebWuRoots> {
    solve_liebwu_with(l, u, n, m, qi, qj, 40, NewtonOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn solve_liebwu_with(l: usize, u: f64, n: usize, m: usize, qi: &[i64], qj: &[i64], steps: usize, opts: NewtonOptions) -> Result<LiebWuRoots> {
    if l == 0 || qi.len() != n || qj.len() != m || m > n || !(u.is_finite() && u > 0.0) || steps == 0 {
        return Err(Error::InvalidInput(format!("bad Lieb-Wu request L={l} u={u} N={n} M={m}")));
    }
    let distinct = |q: &[i64]| (0..q.len()).all(|i| ((i + 1)..q.len()).all(|j| q[i] != q[j]));
    if !distinct(qi) || !distinct(qj) {
        return Err(Error::InvalidInput("quantum numbers must be distinct within each type".into()));
    }
    let it: Vec<f64> = qi.iter().map(|&x| x as f64 + (m % 2) as f64 / 2.0).collect();
    let jt: Vec<f64> = qj.iter().map(|&x| x as f64 + ((n - m + 1) % 2) as f64 / 2.0).collect();
    let two_pi = 2.0 * std::f64::consts::PI;
    let mu = decoupled_spin_seed(n, &jt)?;
    let mut z: Vec<Complex64> = it.iter().map(|i| Complex64::new(two_pi * i / l as f64, 0.0)).collect();
    z.extend(mu.iter().map(|m| m * HOMOTOPY_START));
    let ratio = (u / HOMOTOPY_START).powf(1.0 / steps as f64);
    let stage_opts = NewtonOptions { tol: opts.tol.max(1e-13), ..opts };
    for step in 0..=steps {
        let c = if step == steps { u } else { HOMOTOPY_START * ratio.powi(step as i32) };
        let f = |v: &[Complex64]| Ok(takahashi_residuals(l, c, &it, &jt, &v[..n], &v[n..]));
        z = newton::solve(f, &z, stage_opts)?.x;
        let lw = LiebWuRoots { k: z[..n].to_vec(), lambda: z[n..].to_vec() };
        if has_collision(&lw) {
            return Err(Error::PathCollision(step));
        }
    }
    let roots = LiebWuRoots { k: z[..n].to_vec(), lambda: z[n..].to_vec() };
    if roots.lambda.iter().any(|x| x.norm() > LAMBDA_ESCAPE) {
        return Err(Error::Degenerate("spin rapidity escaped to infinity".into()));
    }
    let res = liebwu_residuals(l, u, &roots)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    if res >= 1e-12 {
        return Err(Error::NoConvergence { steps, residual: res });
    }
    Ok(roots)
}

/// Energy and momentum of a Lieb-Wu state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyMomentum {
    pub e: Complex64,
    /// Total momentum reduced to `[0, 2π)`.
    pub p: f64,
}

/// `E = 𝐮(L − 2N) − 2Σcos k_j`, `P = Σk_j mod 2π`.
pub fn energy_momentum(l: usize, u: f64, roots: &LiebWuRoots) -> EnergyMomentum {
    let n = roots.k.len() as f64;
    let e = Complex64::new(u * (l as f64 - 2.0 * n), 0.0) - 2.0 * roots.k.iter().map(|k| k.cos()).sum::<Complex64>();
    let p = roots.k.iter().fold(0.0, |acc, k| acc + k.re).rem_euclid(2.0 * std::f64::consts::PI);
    EnergyMomentum { e, p }
}

/// Maps Lieb-Wu roots onto nested roots; the first `n_first` momenta go to the first sheet.
pub fn liebwu_to_nested(u: f64, roots: &LiebWuRoots, n_first: usize) -> HubbardRoots {
    let h = 1.0 / (2.0 * u);
    let (a, b) = roots.k.split_at(n_first.min(roots.k.len()));
    HubbardRoots {
        x1e: a.iter().map(|k| I * (-I * k).exp()).collect(),
        u11: roots.lambda.iter().map(|l| l * h).collect(),
        x112: b.iter().map(|k| (I * k).exp() / I).collect(),
    }
}

/// Nested spec approaching the homogeneous limit: `y⁻ = ε`, `y⁺` the large shell root,
/// `𝚡₁ = i^L`, `𝚢₁ = 1`.
pub fn limit_spec(l: usize, u: f64, eps: f64) -> Result<HubbardSpec> {
    let c = Coupling::new(1.0 / (2.0 * u))?;
    let ym = Complex64::new(eps, 0.0);
    // y⁺ + 1/y⁺ = s has roots (s ± sqrt(s² − 4))/2; take the large one.
    let s = ym + 1.0 / ym + I * (2.0 / c.h);
    let disc = (s * s - 4.0).sqrt();
    let yp = [(s + disc) / 2.0, (s - disc) / 2.0].into_iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(s);
    HubbardSpec::with_continued_inhomogeneities(c, vec![(yp, ym); l], I.powu(l as u32), Complex64::new(1.0, 0.0))
}

/// Largest gap between nested residuals in the limit spec and the Lieb-Wu residuals.
///
/// Nested residuals come out as first node, middle node, last node; they are reordered to
/// the Lieb-Wu layout (spin family, then charge family) before comparison.
pub fn nested_limit_gap(l: usize, u: f64, roots: &LiebWuRoots, n_first: usize, eps: f64) -> Result<f64> {
    let spec = limit_spec(l, u, eps)?;
    let nested = nested_residuals(&spec, &liebwu_to_nested(u, roots, n_first))?;
    let lw = liebwu_residuals(l, u, roots)?;
    let nf = n_first.min(roots.k.len());
    let m = roots.lambda.len();
    let mut reordered = nested[nf..nf + m].to_vec();
    reordered.extend_from_slice(&nested[..nf]);
    reordered.extend_from_slice(&nested[nf + m..]);
    Ok(reordered.iter().zip(&lw).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_systems() {
        let spec = HubbardSpec::homogeneous(Coupling::new(1.0).unwrap(), 2, c(1.0, 0.0), c(1.0, 0.0));
        assert!(nested_residuals(&spec, &HubbardRoots::default()).unwrap().is_empty());
        let out = solve_nested(&spec, (0, 0, 0), &HubbardRoots::default(), NewtonOptions::default()).unwrap();
        assert_eq!(out, HubbardRoots::default());
        assert!(liebwu_residuals(2, 1.0, &LiebWuRoots::default()).unwrap().is_empty());
    }

    #[test]
    fn lone_middle_root() {
        // The self-factor (+i)/(−i) = −1 cancels the right-hand side, leaving log(1/𝚢₁²).
        let cp = Coupling::new(1.0).unwrap();
        let roots = HubbardRoots { u11: vec![c(0.3, 0.0)], ..Default::default() };
        let r = nested_residuals(&HubbardSpec::homogeneous(cp, 0, c(1.0, 0.0), c(1.0, 0.0)), &roots).unwrap();
        assert!(r[0].norm() < 1e-15);
        let y1 = c(0.2f64.cos(), 0.2f64.sin());
        let r = nested_residuals(&HubbardSpec::homogeneous(cp, 0, c(1.0, 0.0), y1), &roots).unwrap();
        assert!((r[0] - c(0.0, -0.4)).norm() < 1e-15);
    }

    #[test]
    fn middle_node_translation_invariance() {
        let spec = HubbardSpec::homogeneous(Coupling::new(1.0).unwrap(), 0, c(1.0, 0.0), c(1.0, 0.0));
        let roots = HubbardRoots { u11: vec![c(0.3, 0.0), c(-0.4, 0.1)], ..Default::default() };
        let shifted = HubbardRoots { u11: roots.u11.iter().map(|u| u + 1.7).collect(), ..Default::default() };
        let a = nested_residuals(&spec, &roots).unwrap();
        let b = nested_residuals(&spec, &shifted).unwrap();
        assert!(a.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-14));
    }

    #[test]
    fn two_site_single_electron() {
        for k in [0.0, PI] {
            let r = liebwu_residuals(2, 1.0, &LiebWuRoots { k: vec![c(k, 0.0)], lambda: vec![] }).unwrap();
            assert!(r[0].norm() < 1e-15);
        }
        let s = solve_liebwu(2, 0.7, 1, 0, &[0], &[]).unwrap();
        assert!(s.k[0].norm() < 1e-14);
        let em = energy_momentum(2, 1.0, &LiebWuRoots { k: vec![c(0.0, 0.0)], lambda: vec![] });
        assert!((em.e - c(-2.0, 0.0)).norm() < 1e-15 && em.p == 0.0);
        let em = energy_momentum(2, 1.0, &LiebWuRoots { k: vec![c(PI, 0.0)], lambda: vec![] });
        assert!((em.e - c(2.0, 0.0)).norm() < 1e-15 && (em.p - PI).abs() < 1e-15);
    }

    #[test]
    fn empty_state_energy() {
        let em = energy_momentum(3, 0.8, &LiebWuRoots::default());
        assert!((em.e - c(2.4, 0.0)).norm() < 1e-15 && em.p == 0.0);
    }

    #[test]
    fn two_site_singlet_matches_ed() {
        let ev = ed::sector_spectrum(2, 1.0, (1, 1)).unwrap();
        let s = solve_liebwu(2, 1.0, 2, 1, &[-1, 0], &[0]).unwrap();
        assert!(liebwu_residuals(2, 1.0, &s).unwrap().iter().all(|r| r.norm() < 1e-12));
        let e = energy_momentum(2, 1.0, &s).e;
        assert!(e.im.abs() < 1e-10);
        assert!(ed::match_spectrum(&[e.re], &ev, 1e-8).pass);
    }

    #[test]
    fn nested_limit_reproduces_liebwu() {
        let s = solve_liebwu(3, 1.0, 2, 1, &[0, 1], &[0]).unwrap();
        for split in 0..=2 {
            assert!(nested_limit_gap(3, 1.0, &s, split, 1e-6).unwrap() < 1e-4);
        }
    }

    #[test]
    fn nested_solver_with_inhomogeneities() {
        let cp = Coupling::new(0.8).unwrap();
        let inhom: Vec<_> = [0.2, -0.5].iter().map(|&u0| crate::analytic::shell_pair(c(u0, 0.0), cp).unwrap()).collect();
        let spec = HubbardSpec::with_inhomogeneities(cp, inhom, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let seed = HubbardRoots { x1e: vec![c(-24.0, 0.3)], u11: vec![c(-5.5, 0.1)], x112: vec![c(-0.3, 0.01)] };
        let sol = solve_nested(&spec, (1, 1, 1), &seed, NewtonOptions::default()).unwrap();
        assert!(nested_residuals(&spec, &sol).unwrap().iter().all(|r| r.norm() < 1e-12));
    }

    #[test]
    fn collision_is_singular() {
        let spec = HubbardSpec::homogeneous(Coupling::new(1.0).unwrap(), 1, c(1.0, 0.0), c(1.0, 0.0));
        let x = c(2.0, 0.0);
        let u = spec.c.u_of_x(x);
        let roots = HubbardRoots { x1e: vec![x], u11: vec![u - 0.5 * I], x112: vec![] };
        assert!(matches!(nested_residuals(&spec, &roots), Err(Error::SingularDenominator(_))));
    }
}
