//! Zhukovsky map with explicit sheets, source functions `F`, truncated products and Pμ checks.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coupling `h > 0`; the homogeneous Hubbard coupling is `1 / (2h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub h: f64,
}

impl Coupling {
    pub fn new(h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 {
            Ok(Coupling { h })
        } else {
            Err(Error::InvalidInput(format!("coupling must be positive, got {h}")))
        }
    }

    /// Hubbard interaction `𝐮 = 1 / (2h)`.
    pub fn hubbard_u(&self) -> f64 {
        1.0 / (2.0 * self.h)
    }

    /// `u(x) = (h/2)(x + 1/x)`.
    pub fn u_of_x(&self, x: Complex64) -> Complex64 {
        0.5 * self.h * (x + 1.0 / x)
    }
}

/// Sheet of the Zhukovsky map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sheet {
    /// `|x| >= 1`.
    Outer,
    /// `|x| <= 1`.
    Inner,
}

impl Sheet {
    pub fn swap(self) -> Sheet {
        match self {
            Sheet::Outer => Sheet::Inner,
            Sheet::Inner => Sheet::Outer,
        }
    }
}

/// Side from which an on-cut point is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

/// A spectral parameter with a sheet choice, plus a side flag for points on the cut.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZhukPoint {
    pub u: Complex64,
    pub sheet: Sheet,
    pub side: Option<Side>,
}

impl ZhukPoint {
    pub fn outer(u: Complex64) -> Self {
        ZhukPoint { u, sheet: Sheet::Outer, side: None }
    }

    pub fn new(u: Complex64, sheet: Sheet) -> Self {
        ZhukPoint { u, sheet, side: None }
    }

    /// The same point on the other sheet.
    pub fn swapped(&self) -> Self {
        ZhukPoint { sheet: self.sheet.swap(), ..*self }
    }

    /// Shifted by `i n / 2` onto the outer sheet.
    pub fn shifted_outer(&self, n: i64) -> Self {
        ZhukPoint::outer(self.u + I * (n as f64 * 0.5))
    }

    pub fn x(&self, c: Coupling) -> Result<Complex64> {
        match self.side {
            Some(side) => x_of_u_side(self.u, self.sheet, side, c),
            None => x_of_u(self.u, self.sheet, c),
        }
    }
}

fn on_cut(u: Complex64, c: Coupling) -> bool {
    u.im == 0.0 && u.re.abs() < c.h
}

/// `x + 1/x = 2u/h` with `x = (u + √(u−h)√(u+h))/h` on the outer sheet.
pub fn x_of_u(u: Complex64, sheet: Sheet, c: Coupling) -> Result<Complex64> {
    if on_cut(u, c) {
        return Err(Error::OnCut);
    }
    let outer = (u + (u - c.h).sqrt() * (u + c.h).sqrt()) / c.h;
    Ok(match sheet {
        Sheet::Outer => outer,
        Sheet::Inner => 1.0 / outer,
    })
}

/// Boundary value of `x` approaching the cut from the given side; off the cut the side is ignored.
pub fn x_of_u_side(u: Complex64, sheet: Sheet, side: Side, c: Coupling) -> Result<Complex64> {
    if !on_cut(u, c) {
        return x_of_u(u, sheet, c);
    }
    let r = u.re;
    let above = Complex64::new(r, (c.h * c.h - r * r).sqrt()) / c.h;
    let outer = match side {
        Side::Above => above,
        Side::Below => above.conj(),
    };
    Ok(match sheet {
        Sheet::Outer => outer,
        Sheet::Inner => 1.0 / outer,
    })
}

/// Kind of source function.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceKind {
    /// Inhomogeneities `y_k^±` with `|y^±| > 1`.
    Ext { yp: Vec<Complex64>, ym: Vec<Complex64> },
    /// `sign · ∏ (x − θ)/(xθ − 1)`.
    Pol { theta: Vec<Complex64>, sign: f64 },
    /// `x^{−M}`.
    PolInfinity { m: i32 },
    /// `exp(θ (x − 1/x))`.
    Exp { theta: Complex64 },
}

/// A source function `F` with `F(x) F(1/x) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceF {
    pub c: Coupling,
    pub kind: SourceKind,
}

/// Shell condition `y⁺ + 1/y⁺ − y⁻ − 1/y⁻ = 2i/h` with `|y^±| > 1`.
pub fn check_shell(yp: Complex64, ym: Complex64, c: Coupling, tol: f64) -> Result<()> {
    if yp.norm() <= 1.0 || ym.norm() <= 1.0 {
        return Err(Error::ShellViolation(format!("|y±| must exceed 1: {yp}, {ym}")));
    }
    let gap = yp + 1.0 / yp - ym - 1.0 / ym - I * (2.0 / c.h);
    if gap.norm() > tol {
        return Err(Error::ShellViolation(format!("shift constraint off by {:e}", gap.norm())));
    }
    Ok(())
}

/// Outer-sheet pair `y^± = x(u ± i/2)` for a real or complex rapidity.
pub fn shell_pair(u: Complex64, c: Coupling) -> Result<(Complex64, Complex64)> {
    Ok((x_of_u(u + I * 0.5, Sheet::Outer, c)?, x_of_u(u - I * 0.5, Sheet::Outer, c)?))
}

impl SourceF {
    pub fn new(c: Coupling, kind: SourceKind) -> Result<Self> {
        match &kind {
            SourceKind::Ext { yp, ym } => {
                if yp.len() != ym.len() {
                    return Err(Error::InvalidInput("y⁺ and y⁻ lists differ in length".into()));
                }
                for (p, m) in yp.iter().zip(ym) {
                    check_shell(*p, *m, c, 1e-9)?;
                }
            }
            SourceKind::Pol { sign, .. } if (sign.abs() - 1.0).abs() > 0.0 => {
                return Err(Error::InvalidInput("Pol sign must be ±1".into()));
            }
            _ => {}
        }
        Ok(SourceF { c, kind })
    }

    /// Homogeneous Ext source with `m` identical inhomogeneities at rapidity `u0`.
    pub fn ext_homogeneous(c: Coupling, u0: Complex64, m: usize) -> Result<Self> {
        let (p, q) = shell_pair(u0, c)?;
        SourceF::new(c, SourceKind::Ext { yp: vec![p; m], ym: vec![q; m] })
    }

    /// Value at a Zhukovsky variable.
    pub fn eval_x(&self, x: Complex64) -> Complex64 {
        match &self.kind {
            SourceKind::Ext { yp, ym } => {
                let f = ZhukFactors { c: self.c, yp: yp.clone(), ym: ym.clone() };
                f.sqrt_q_ratio(self.c.u_of_x(x)) * f.b_plus(x) / f.b_minus(x)
            }
            SourceKind::Pol { theta, sign } => theta.iter().fold(Complex64::new(*sign, 0.0), |acc, t| acc * (x - t) / (x * t - 1.0)),
            SourceKind::PolInfinity { m } => x.powi(-*m),
            SourceKind::Exp { theta } => (theta * (x - 1.0 / x)).exp(),
        }
    }

    pub fn eval(&self, p: &ZhukPoint) -> Result<Complex64> {
        Ok(self.eval_x(p.x(self.c)?))
    }
}

/// Root-factor builders for a set of `y^±` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ZhukFactors {
    pub c: Coupling,
    pub yp: Vec<Complex64>,
    pub ym: Vec<Complex64>,
}

impl ZhukFactors {
    fn pref(&self, y: Complex64) -> Complex64 {
        (Complex64::new(self.c.h, 0.0) / (2.0 * y)).sqrt()
    }

    /// `B_(+) = ∏ √(h/2y⁻)(1/x − y⁻)`.
    pub fn b_plus(&self, x: Complex64) -> Complex64 {
        self.ym.iter().map(|y| self.pref(*y) * (1.0 / x - y)).product()
    }

    /// `B_(−) = ∏ √(h/2y⁺)(1/x − y⁺)`.
    pub fn b_minus(&self, x: Complex64) -> Complex64 {
        self.yp.iter().map(|y| self.pref(*y) * (1.0 / x - y)).product()
    }

    /// `R_(+) = ∏ √(h/2y⁻)(x − y⁻)`.
    pub fn r_plus(&self, x: Complex64) -> Complex64 {
        self.ym.iter().map(|y| self.pref(*y) * (x - y)).product()
    }

    /// `R_(−) = ∏ √(h/2y⁺)(x − y⁺)`.
    pub fn r_minus(&self, x: Complex64) -> Complex64 {
        self.yp.iter().map(|y| self.pref(*y) * (x - y)).product()
    }

    /// `ℚ⁺(u) = ∏ (u − u(y⁻))`.
    pub fn q_plus(&self, u: Complex64) -> Complex64 {
        self.ym.iter().map(|y| u - self.c.u_of_x(*y)).product()
    }

    /// `ℚ⁻(u) = ∏ (u − u(y⁺))`.
    pub fn q_minus(&self, u: Complex64) -> Complex64 {
        self.yp.iter().map(|y| u - self.c.u_of_x(*y)).product()
    }

    /// `√(ℚ⁻/ℚ⁺)` as a product of per-root principal square roots.
    pub fn sqrt_q_ratio(&self, u: Complex64) -> Complex64 {
        self.yp
            .iter()
            .zip(&self.ym)
            .map(|(p, m)| ((u - self.c.u_of_x(*p)) / (u - self.c.u_of_x(*m))).sqrt())
            .product()
    }
}

/// Finite product value with the magnitude of its last factor as a truncation diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncated {
    pub value: Complex64,
    /// `|F − 1|` at the outermost shift; small values mean the tail is close to trivial.
    pub tail: f64,
}

/// `f_N(u) = ∏_{n=0}^{N} F(x(u + i n))`; only the `n = 0` factor follows the point's sheet.
pub fn truncated_f(f: &SourceF, n: usize, p: &ZhukPoint) -> Result<Truncated> {
    product_along(f, n, p, 1.0)
}

/// Mirror product `∏_{n=0}^{N} F(x(u − i n))`.
pub fn truncated_fbar(f: &SourceF, n: usize, p: &ZhukPoint) -> Result<Truncated> {
    product_along(f, n, p, -1.0)
}

fn product_along(f: &SourceF, n: usize, p: &ZhukPoint, dir: f64) -> Result<Truncated> {
    let mut value = f.eval(p)?;
    let mut last = value;
    for k in 1..=n {
        last = f.eval(&ZhukPoint::outer(p.u + I * (dir * k as f64)))?;
        value *= last;
    }
    Ok(Truncated { value, tail: (last - 1.0).norm() })
}

/// Truncated `(μ, ω)`: `ω = ∏_{n=−N}^{N} F^{[2n]}`, `μ = F ∏_{n=1}^{N} F^{[2n]} / F^{[−2n]}`.
pub fn mu_omega(f: &SourceF, n: usize, p: &ZhukPoint) -> Result<(Complex64, Complex64)> {
    let centre = f.eval(p)?;
    let ratio = mirror_ratio(f, n, p.u)?;
    let mut omega = centre;
    for k in 1..=n {
        omega *= f.eval(&ZhukPoint::outer(p.u + I * k as f64))? * f.eval(&ZhukPoint::outer(p.u - I * k as f64))?;
    }
    Ok((centre * ratio, omega))
}

/// `m(u) = ∏_{n=1}^{N} F^{[2n]} / F^{[−2n]}`, sheet independent.
pub fn mirror_ratio(f: &SourceF, n: usize, u: Complex64) -> Result<Complex64> {
    let mut m = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        m *= f.eval(&ZhukPoint::outer(u + I * k as f64))? / f.eval(&ZhukPoint::outer(u - I * k as f64))?;
    }
    Ok(m)
}

/// Evaluator returning a two-component function at a point.
pub type PairFn<'a> = dyn Fn(&ZhukPoint) -> Result<[Complex64; 2]> + 'a;

/// Residuals of the square-root Pμ system at one point, in the order
/// `P̃_a − (μ/F)ε_{ab}P^b` (2), `P̃^a + (F/μ)ε^{ab}P_b` (2), `μ − μ̃ − ε^{ab}P_aP̃_b`, `P^aP_a − (1/F − F)`.
pub fn pmu_residual_case_b(p_low: &PairFn, p_up: &PairFn, f: &SourceF, n: usize, pt: &ZhukPoint) -> Result<Vec<Complex64>> {
    let sw = pt.swapped();
    let fv = f.eval(pt)?;
    let (mu, _) = mu_omega(f, n, pt)?;
    let (mu_t, _) = mu_omega(f, n, &sw)?;
    let pl = p_low(pt)?;
    let pu = p_up(pt)?;
    let pl_t = p_low(&sw)?;
    let pu_t = p_up(&sw)?;
    // ε_{12} = ε^{12} = 1
    let eps_up = [pu[1], -pu[0]];
    let eps_low = [pl[1], -pl[0]];
    Ok(vec![
        pl_t[0] - mu / fv * eps_up[0],
        pl_t[1] - mu / fv * eps_up[1],
        pu_t[0] + fv / mu * eps_low[0],
        pu_t[1] + fv / mu * eps_low[1],
        mu - mu_t - (pl[0] * pl_t[1] - pl[1] * pl_t[0]),
        pu[0] * pl[0] + pu[1] * pl[1] - (1.0 / fv - fv),
    ])
}

/// Exact finite-truncation solution of the Pμ relations built on a Zhukovsky polynomial.
///
/// `P_1 = t^{−1}𝐩(x)`, `P_2 = t·m(u)/(F(x)𝐩(1/x))` with `t = 𝚡₁^{iu}`, and
/// `P^a = −(1/m) ε^{ab} P̃_b`. The relations hold identically for every `𝐩`.
pub struct PmuSolution<'a> {
    pub source: &'a SourceF,
    pub n: usize,
    /// Twist `𝚡₁`.
    pub twist: Complex64,
    /// Zeros `x` of `𝐩` on the first sheet.
    pub first_sheet: Vec<Complex64>,
    /// Zeros of `𝐩` placed on the second sheet: factors `(1/x − z)`.
    pub second_sheet: Vec<Complex64>,
}

impl PmuSolution<'_> {
    fn poly(&self, x: Complex64) -> Complex64 {
        let a: Complex64 = self.first_sheet.iter().map(|z| x - z).product();
        let b: Complex64 = self.second_sheet.iter().map(|z| 1.0 / x - z).product();
        a * b
    }

    fn t(&self, u: Complex64) -> Complex64 {
        (I * u * self.twist.ln()).exp()
    }

    pub fn lower(&self, p: &ZhukPoint) -> Result<[Complex64; 2]> {
        let x = p.x(self.source.c)?;
        let m = mirror_ratio(self.source, self.n, p.u)?;
        let t = self.t(p.u);
        Ok([self.poly(x) / t, t * m / (self.source.eval_x(x) * self.poly(1.0 / x))])
    }

    pub fn upper(&self, p: &ZhukPoint) -> Result<[Complex64; 2]> {
        let lt = self.lower(&p.swapped())?;
        let m = mirror_ratio(self.source, self.n, p.u)?;
        Ok([-lt[1] / m, lt[0] / m])
    }
}

/// Baxter step `μ' = M μ Mᵀ` with `M = 1 + P ⊗ P*/F`.
pub fn baxter_step(mu: &Matrix2<Complex64>, p: &[Complex64; 2], pstar: &[Complex64; 2], fval: Complex64) -> Matrix2<Complex64> {
    let m = baxter_factor(p, pstar, fval);
    m * mu * m.transpose()
}

/// `M_a^b = δ_a^b + P_a P^b / F`.
pub fn baxter_factor(p: &[Complex64; 2], pstar: &[Complex64; 2], fval: Complex64) -> Matrix2<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Matrix2::new(one, zero, zero, one) + Matrix2::new(p[0] * pstar[0], p[0] * pstar[1], p[1] * pstar[0], p[1] * pstar[1]) / fval
}

/// Antisymmetric coefficient `(μ_12 − μ_21)/2`.
pub fn antisym_part(mu: &Matrix2<Complex64>) -> Complex64 {
    (mu[(0, 1)] - mu[(1, 0)]) * 0.5
}

/// Determinant of the symmetric part `(μ + μᵀ)/2`.
pub fn sym_det(mu: &Matrix2<Complex64>) -> Complex64 {
    ((mu + mu.transpose()) * Complex64::new(0.5, 0.0)).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coupling() -> Coupling {
        Coupling::new(0.8).unwrap()
    }

    #[test]
    fn zhukovsky_examples() {
        let h = coupling();
        let u = c(1.25 * h.h, 0.0);
        assert!((x_of_u(u, Sheet::Outer, h).unwrap() - 2.0).norm() < 1e-14);
        assert!((x_of_u(u, Sheet::Inner, h).unwrap() - 0.5).norm() < 1e-14);
        assert!((x_of_u(c(h.h, 0.0), Sheet::Outer, h).unwrap() - 1.0).norm() < 1e-7);
        assert_eq!(x_of_u(c(0.1, 0.0), Sheet::Outer, h), Err(Error::OnCut));
        let above = x_of_u_side(c(0.1, 0.0), Sheet::Outer, Side::Above, h).unwrap();
        let near = x_of_u(c(0.1, 1e-12), Sheet::Outer, h).unwrap();
        assert!((above - near).norm() < 1e-5);
        let below = x_of_u_side(c(0.1, 0.0), Sheet::Outer, Side::Below, h).unwrap();
        assert!((below - x_of_u(c(0.1, -1e-12), Sheet::Outer, h).unwrap()).norm() < 1e-5);
    }

    #[test]
    fn source_examples() {
        let h = coupling();
        let pinf = SourceF::new(h, SourceKind::PolInfinity { m: 2 }).unwrap();
        assert!((pinf.eval_x(c(2.0, 0.0)) - 0.25).norm() < 1e-15);
        let e = SourceF::new(h, SourceKind::Exp { theta: c(1.0, 0.0) }).unwrap();
        assert!((e.eval_x(c(2.0, 0.0)) - 1.5f64.exp()).norm() < 1e-13);
    }

    #[test]
    fn ext_source_is_reflection_unimodular() {
        let h = coupling();
        let f = SourceF::ext_homogeneous(h, c(0.3, 0.0), 3).unwrap();
        for x in [c(1.7, 0.4), c(-0.3, 2.2), c(0.2, -0.1)] {
            assert!((f.eval_x(x) * f.eval_x(1.0 / x) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn truncation_zero_order_is_single_factor() {
        let h = coupling();
        let f = SourceF::new(h, SourceKind::Pol { theta: vec![c(2.0, 1.0)], sign: 1.0 }).unwrap();
        let p = ZhukPoint::outer(c(0.4, 0.7));
        assert_eq!(truncated_f(&f, 0, &p).unwrap().value, f.eval(&p).unwrap());
        let (mu, om) = mu_omega(&f, 0, &p).unwrap();
        assert_eq!(mu, om);
    }

    #[test]
    fn baxter_inverse_identity() {
        let fval = c(0.7, 0.2);
        let p = [c(0.3, 1.0), c(-0.5, 0.4)];
        let p1 = c(1.1, -0.3);
        let p2 = (1.0 / fval - fval - p1 * p[0]) / p[1];
        let ps = [p1, p2];
        let one = Matrix2::identity();
        let a = Matrix2::new(p[0] * ps[0], p[0] * ps[1], p[1] * ps[0], p[1] * ps[1]);
        let prod = (one + a / fval) * (one - a * fval);
        assert!((prod - one).norm() < 1e-13);
        assert!((baxter_factor(&p, &ps, fval).determinant() - 1.0 / (fval * fval)).norm() < 1e-13);
    }

    #[test]
    fn trivial_pmu_null_pair() {
        let h = coupling();
        let f = SourceF::new(h, SourceKind::PolInfinity { m: 0 }).unwrap();
        let p = |_: &ZhukPoint| Ok([c(0.0, 0.0), c(2.0, 1.0)]);
        let ps = |_: &ZhukPoint| Ok([c(0.0, 0.0), c(0.0, 0.0)]);
        let pt = ZhukPoint::outer(c(0.3, 0.9));
        let r = pmu_residual_case_b(&p, &ps, &f, 4, &pt).unwrap();
        // Monodromy and constraint residuals vanish for the null pair with F ≡ 1.
        assert!(r[4].norm() < 1e-15 && r[5].norm() < 1e-15);
    }
}
