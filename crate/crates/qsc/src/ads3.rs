//! Asymptotic AdS3×S³×T⁴ massive sector: Bethe residuals, asymptotic Q's, crossing structure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{shell_pair, x_of_u, Coupling, Sheet};
use crate::exact::GaussRat;
use crate::newton::{self, NewtonOptions};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SINGULAR: f64 = 1e-13;
const SHELL_TOL: f64 = 1e-9;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn ratio(num: Complex64, den: Complex64, what: &str) -> Result<Complex64> {
    if den.norm() < SINGULAR {
        return Err(Error::SingularDenominator(what.into()));
    }
    Ok(num / den)
}

/// Massive and auxiliary roots of the asymptotic Bethe ansatz.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdS3Roots {
    #[serde(rename = "hcoup")]
    pub h: f64,
    #[serde(rename = "L")]
    pub l: usize,
    pub xp: Vec<Complex64>,
    pub xm: Vec<Complex64>,
    pub xbp: Vec<Complex64>,
    pub xbm: Vec<Complex64>,
    pub y1: Vec<Complex64>,
    pub y3: Vec<Complex64>,
    pub y1b: Vec<Complex64>,
    pub y3b: Vec<Complex64>,
}

/// Auxiliary roots grouped by node.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Auxiliary {
    pub y1: Vec<Complex64>,
    pub y3: Vec<Complex64>,
    pub y1b: Vec<Complex64>,
    pub y3b: Vec<Complex64>,
}

impl AdS3Roots {
    /// Builds and validates the shell condition for every massive pair.
    pub fn new(c: Coupling, l: usize, left: Vec<(Complex64, Complex64)>, right: Vec<(Complex64, Complex64)>, aux: Auxiliary) -> Result<Self> {
        let (xp, xm) = left.into_iter().unzip();
        let (xbp, xbm) = right.into_iter().unzip();
        let r = AdS3Roots { h: c.h, l, xp, xm, xbp, xbm, y1: aux.y1, y3: aux.y3, y1b: aux.y1b, y3b: aux.y3b };
        r.validate()?;
        Ok(r)
    }

    /// Massive roots from rapidities on the outer sheet, `x^± = x(u ± i/2)`.
    pub fn from_rapidities(c: Coupling, l: usize, u: &[Complex64], ub: &[Complex64], aux: Auxiliary) -> Result<Self> {
        let left = u.iter().map(|&v| shell_pair(v, c)).collect::<Result<Vec<_>>>()?;
        let right = ub.iter().map(|&v| shell_pair(v, c)).collect::<Result<Vec<_>>>()?;
        AdS3Roots::new(c, l, left, right, aux)
    }

    pub fn coupling(&self) -> Coupling {
        Coupling { h: self.h }
    }

    pub fn validate(&self) -> Result<()> {
        let c = Coupling::new(self.h)?;
        if self.xp.len() != self.xm.len() || self.xbp.len() != self.xbm.len() {
            return Err(Error::InvalidInput("x⁺ and x⁻ lists differ in length".into()));
        }
        for (p, m) in self.xp.iter().zip(&self.xm).chain(self.xbp.iter().zip(&self.xbm)) {
            crate::analytic::check_shell(*p, *m, c, SHELL_TOL)?;
        }
        Ok(())
    }

    /// `|Π x⁺/x⁻ · Π x̄⁺/x̄⁻ − 1|`.
    pub fn momentum_defect(&self) -> f64 {
        let p: Complex64 = self.xp.iter().zip(&self.xm).chain(self.xbp.iter().zip(&self.xbm)).map(|(a, b)| a / b).product();
        (p - 1.0).norm()
    }

    /// Rapidities `u = (h/2)(x⁺ + 1/x⁺) − i/2` of the left massive roots.
    pub fn u_left(&self) -> Vec<Complex64> {
        self.xp.iter().map(|&x| self.coupling().u_of_x(x) - 0.5 * I).collect()
    }

    pub fn u_right(&self) -> Vec<Complex64> {
        self.xbp.iter().map(|&x| self.coupling().u_of_x(x) - 0.5 * I).collect()
    }

    fn left(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.xp.iter().copied().zip(self.xm.iter().copied())
    }

    fn right(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.xbp.iter().copied().zip(self.xbm.iter().copied())
    }
}

type PairPhase = Box<dyn Fn((Complex64, Complex64), (Complex64, Complex64)) -> Complex64 + Send + Sync>;

/// Dressing phases `σ••(x_k, x_j)` and `σ̂••(x_k, x_j)` as callbacks on `(x⁺, x⁻)` pairs.
pub struct DressingModel {
    pub sigma: PairPhase,
    pub sigma_hat: PairPhase,
}

impl Default for DressingModel {
    fn default() -> Self {
        DressingModel { sigma: Box::new(|_, _| one()), sigma_hat: Box::new(|_, _| one()) }
    }
}

fn aux_left(y: Complex64, r: &AdS3Roots) -> Result<Complex64> {
    let mut p = one();
    for (xp, xm) in r.left() {
        p *= ratio(y - xm, y - xp, "y − x⁺")?;
    }
    for (xp, xm) in r.right() {
        p *= ratio(1.0 - 1.0 / (y * xp), 1.0 - 1.0 / (y * xm), "1 − 1/(y x̄⁻)")?;
    }
    Ok(p)
}

fn aux_right(y: Complex64, r: &AdS3Roots) -> Result<Complex64> {
    let mut p = one();
    for (xp, xm) in r.right() {
        p *= ratio(y - xp, y - xm, "y − x̄⁻")?;
    }
    for (xp, xm) in r.left() {
        p *= ratio(1.0 - 1.0 / (y * xm), 1.0 - 1.0 / (y * xp), "1 − 1/(y x⁺)")?;
    }
    Ok(p)
}

fn massive_left(k: usize, r: &AdS3Roots, d: &DressingModel) -> Result<Complex64> {
    let (xpk, xmk) = (r.xp[k], r.xm[k]);
    let u = r.u_left();
    let mut rhs = one();
    for j in 0..r.xp.len() {
        if j != k {
            let s = (d.sigma)((xpk, xmk), (r.xp[j], r.xm[j]));
            rhs *= ratio(u[k] - u[j] + I, u[k] - u[j] - I, "u collision")? * s * s;
        }
    }
    for (bp, bm) in r.right() {
        let s = (d.sigma_hat)((xpk, xmk), (bp, bm));
        rhs *= ratio(1.0 - 1.0 / (xpk * bp), 1.0 - 1.0 / (xmk * bm), "1 − 1/(x⁻x̄⁻)")?;
        rhs *= ratio(1.0 - 1.0 / (xpk * bm), 1.0 - 1.0 / (xmk * bp), "1 − 1/(x⁻x̄⁺)")? * s * s;
    }
    for &y in r.y1.iter().chain(&r.y3) {
        rhs *= ratio(xmk - y, xpk - y, "x⁺ − y")?;
    }
    for &y in r.y1b.iter().chain(&r.y3b) {
        rhs *= ratio(1.0 - 1.0 / (xmk * y), 1.0 - 1.0 / (xpk * y), "1 − 1/(x⁺ȳ)")?;
    }
    Ok(rhs / (xpk / xmk).powu(r.l as u32))
}

fn massive_right(k: usize, r: &AdS3Roots, d: &DressingModel) -> Result<Complex64> {
    let (xpk, xmk) = (r.xbp[k], r.xbm[k]);
    let mut rhs = one();
    for j in 0..r.xbp.len() {
        if j != k {
            let (xpj, xmj) = (r.xbp[j], r.xbm[j]);
            let s = (d.sigma)((xpk, xmk), (xpj, xmj));
            rhs *= ratio(xmk - xpj, xpk - xmj, "x̄⁺ − x̄⁻")?;
            rhs *= ratio(1.0 - 1.0 / (xpk * xmj), 1.0 - 1.0 / (xmk * xpj), "1 − 1/(x̄⁻x̄⁺)")? * s * s;
        }
    }
    for (xp, xm) in r.left() {
        let s = (d.sigma_hat)((xpk, xmk), (xp, xm));
        rhs *= ratio(1.0 - 1.0 / (xmk * xm), 1.0 - 1.0 / (xmk * xp), "1 − 1/(x̄⁻x⁺)")?;
        rhs *= ratio(1.0 - 1.0 / (xpk * xm), 1.0 - 1.0 / (xpk * xp), "1 − 1/(x̄⁺x⁺)")? * s * s;
    }
    for &y in r.y1b.iter().chain(&r.y3b) {
        rhs *= ratio(xpk - y, xmk - y, "x̄⁻ − ȳ")?;
    }
    for &y in r.y1.iter().chain(&r.y3) {
        rhs *= ratio(1.0 - 1.0 / (xpk * y), 1.0 - 1.0 / (xmk * y), "1 − 1/(x̄⁻y)")?;
    }
    Ok(rhs / (xpk / xmk).powu(r.l as u32))
}

/// Principal-log residuals, ordered `y₁, y₃, y₁̄, y₃̄, x, x̄`.
pub fn aba_residuals(r: &AdS3Roots, d: &DressingModel) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for &y in r.y1.iter().chain(&r.y3) {
        out.push(aux_left(y, r)?.ln());
    }
    for &y in r.y1b.iter().chain(&r.y3b) {
        out.push(aux_right(y, r)?.ln());
    }
    for k in 0..r.xp.len() {
        out.push(massive_left(k, r, d)?.ln());
    }
    for k in 0..r.xbp.len() {
        out.push(massive_right(k, r, d)?.ln());
    }
    Ok(out)
}

/// Starting point for [`solve_aba`]: massive rapidities plus auxiliary roots.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct AbaSeed {
    pub u: Vec<Complex64>,
    pub ub: Vec<Complex64>,
    pub aux: Auxiliary,
}

impl AbaSeed {
    fn flatten(&self) -> Vec<Complex64> {
        [&self.u, &self.ub, &self.aux.y1, &self.aux.y3, &self.aux.y1b, &self.aux.y3b].into_iter().flatten().copied().collect()
    }

    fn rebuild(&self, v: &[Complex64]) -> AbaSeed {
        let mut at = 0;
        let mut take = |n: usize| {
            let s = v[at..at + n].to_vec();
            at += n;
            s
        };
        let u = take(self.u.len());
        let ub = take(self.ub.len());
        let aux = Auxiliary { y1: take(self.aux.y1.len()), y3: take(self.aux.y3.len()), y1b: take(self.aux.y1b.len()), y3b: take(self.aux.y3b.len()) };
        AbaSeed { u, ub, aux }
    }
}

/// Newton solve of the Bethe equations in massive rapidities and auxiliary roots.
///
/// Massive roots stay on the shell by construction. Zero momentum is not imposed; check it
/// with [`AdS3Roots::momentum_defect`].
pub fn solve_aba(c: Coupling, l: usize, seed: &AbaSeed, d: &DressingModel, opts: NewtonOptions) -> Result<AdS3Roots> {
    let build = |s: &AbaSeed| AdS3Roots::from_rapidities(c, l, &s.u, &s.ub, s.aux.clone());
    let f = |v: &[Complex64]| aba_residuals(&build(&seed.rebuild(v))?, d);
    let out = newton::solve(f, &seed.flatten(), opts)?;
    build(&seed.rebuild(&out.x))
}

/// `Π √(h/(2x_j)) (z − x_j)` with `z` either `x` or `1/x`.
fn zhuk_product(h: f64, roots: &[Complex64], z: Complex64) -> Complex64 {
    roots.iter().map(|&r| (h / (2.0 * r)).sqrt() * (z - r)).product()
}

/// Factor builders `B_{(±)}`, `R_{(±)}` and their barred versions at a Zhukovsky variable.
impl AdS3Roots {
    pub fn b_plus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xm, 1.0 / x)
    }

    pub fn b_minus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xp, 1.0 / x)
    }

    pub fn r_plus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xm, x)
    }

    pub fn r_minus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xp, x)
    }

    pub fn bbar_plus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xbm, 1.0 / x)
    }

    pub fn bbar_minus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xbp, 1.0 / x)
    }

    pub fn rbar_plus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xbm, x)
    }

    pub fn rbar_minus(&self, x: Complex64) -> Complex64 {
        zhuk_product(self.h, &self.xbp, x)
    }

    fn aux_lists(&self, node: AuxNode) -> (&[Complex64], &[Complex64]) {
        match node {
            AuxNode::One => (&self.y1, &self.y1b),
            AuxNode::Three => (&self.y3, &self.y3b),
        }
    }

    /// `R_{y_i} = Π(x − y_{i,k}) Π(1/x − y_{ī,k})`.
    pub fn r_y(&self, node: AuxNode, x: Complex64) -> Complex64 {
        let (y, yb) = self.aux_lists(node);
        y.iter().map(|&v| x - v).product::<Complex64>() * yb.iter().map(|&v| 1.0 / x - v).product::<Complex64>()
    }

    /// `B_{y_i} = Π(x − y_{ī,k}) Π(1/x − y_{i,k})`, the continuation of `R_{y_i}`.
    pub fn b_y(&self, node: AuxNode, x: Complex64) -> Complex64 {
        let (y, yb) = self.aux_lists(node);
        yb.iter().map(|&v| x - v).product::<Complex64>() * y.iter().map(|&v| 1.0 / x - v).product::<Complex64>()
    }
}

/// Auxiliary node label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxNode {
    One,
    Three,
}

/// Exact `R_y` over Gaussian rationals: `Π(x − y) Π(1/x − ȳ)`.
pub fn r_y_exact(y: &[GaussRat], yb: &[GaussRat], x: &GaussRat) -> Option<GaussRat> {
    let inv = x.inv()?;
    Some(y.iter().map(|v| x - v).chain(yb.iter().map(|v| &inv - v)).fold(GaussRat::one(), |a, b| &a * &b))
}

/// Exact `B_y`: `Π(x − ȳ) Π(1/x − y)`.
pub fn b_y_exact(y: &[GaussRat], yb: &[GaussRat], x: &GaussRat) -> Option<GaussRat> {
    r_y_exact(yb, y, x)
}

/// Single-variable dressing factors entering the asymptotic Q's.
pub struct QDressing {
    pub sigma: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub sigma_hat: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub sigma_bar: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub sigma_hat_bar: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl Default for QDressing {
    fn default() -> Self {
        QDressing { sigma: Box::new(|_| one()), sigma_hat: Box::new(|_| one()), sigma_bar: Box::new(|_| one()), sigma_hat_bar: Box::new(|_| one()) }
    }
}

/// Asymptotic Q-functions with unit normalization constants, evaluated at `u` on the
/// outer sheet with `N`-term truncated `𝚏` products.
pub struct AsymptoticQ<'a> {
    pub roots: &'a AdS3Roots,
    pub n: usize,
    pub dressing: QDressing,
}

impl<'a> AsymptoticQ<'a> {
    pub fn new(roots: &'a AdS3Roots, n: usize) -> Result<Self> {
        roots.validate()?;
        Ok(AsymptoticQ { roots, n, dressing: QDressing::default() })
    }

    fn x(&self, u: Complex64) -> Result<Complex64> {
        x_of_u(u, Sheet::Outer, self.roots.coupling())
    }

    fn x_pow_half_l(&self, x: Complex64, sign: f64) -> Complex64 {
        x.powf(sign * self.roots.l as f64 / 2.0)
    }

    /// Truncated `𝚏 = Π_{n<N} B_{(+)}^{[2n]}/B_{(−)}^{[2n]}`.
    pub fn f(&self, u: Complex64) -> Result<Complex64> {
        (0..self.n).try_fold(one(), |acc, k| {
            let x = self.x(u + I * k as f64)?;
            Ok(acc * ratio(self.roots.b_plus(x), self.roots.b_minus(x), "B₋ zero")?)
        })
    }

    pub fn fbar(&self, u: Complex64) -> Result<Complex64> {
        (0..self.n).try_fold(one(), |acc, k| {
            let x = self.x(u + I * k as f64)?;
            Ok(acc * ratio(self.roots.bbar_plus(x), self.roots.bbar_minus(x), "B̄₋ zero")?)
        })
    }

    /// Truncated `𝚏*_tot = Π_{n<N} B_{(−)}^{[−2n]}/B_{(+)}^{[−2n]} · (barred)`.
    pub fn f_tot_star(&self, u: Complex64) -> Result<Complex64> {
        let r = self.roots;
        (0..self.n).try_fold(one(), |acc, k| {
            let x = self.x(u - I * k as f64)?;
            Ok(acc * ratio(r.b_minus(x) * r.bbar_minus(x), r.b_plus(x) * r.bbar_plus(x), "B₊ zero")?)
        })
    }

    pub fn f_tot(&self, u: Complex64) -> Result<Complex64> {
        Ok(self.f(u)? * self.fbar(u)?)
    }

    /// `ℚ(u) = Π(u − u_k)` over left massive roots.
    pub fn big_q(&self, u: Complex64) -> Complex64 {
        self.roots.u_left().iter().map(|v| u - v).product()
    }

    pub fn big_qbar(&self, u: Complex64) -> Complex64 {
        self.roots.u_right().iter().map(|v| u - v).product()
    }

    pub fn q11(&self, u: Complex64) -> Result<Complex64> {
        Ok(self.big_q(u) * self.f(u + 0.5 * I)? * self.fbar(u + 0.5 * I)?)
    }

    pub fn qbar11(&self, u: Complex64) -> Result<Complex64> {
        Ok(self.big_qbar(u) * self.fbar(u + 0.5 * I)? * self.f(u + 0.5 * I)?)
    }

    fn dress(&self, u: Complex64) -> Complex64 {
        (self.dressing.sigma)(u) * (self.dressing.sigma_hat_bar)(u)
    }

    fn dress_bar(&self, u: Complex64) -> Complex64 {
        (self.dressing.sigma_hat)(u) * (self.dressing.sigma_bar)(u)
    }

    /// `𝚀_{1|∅} = x^{−L/2} B_{(−)} R_{ỹ₁} σσ̂̄`.
    pub fn q1e(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        Ok(self.x_pow_half_l(x, -1.0) * self.roots.b_minus(x) * self.roots.b_y(AuxNode::One, x) * self.dress(u))
    }

    /// `𝚀_{1|12} = x^{−L/2} B_{(+)} R_{ỹ₃} σσ̂̄`.
    pub fn q112(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        Ok(self.x_pow_half_l(x, -1.0) * self.roots.b_plus(x) * self.roots.b_y(AuxNode::Three, x) * self.dress(u))
    }

    /// `𝚀_{∅|1} = x^{L/2} (𝚏̄/B̄_{(+)}) 𝚏 R_{y₁} / (σσ̂̄)`.
    pub fn qe1(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        let pre = ratio(self.fbar(u)?, self.roots.bbar_plus(x), "B̄₊ zero")?;
        Ok(self.x_pow_half_l(x, 1.0) * pre * self.f(u)? * self.roots.r_y(AuxNode::One, x) / self.dress(u))
    }

    /// `𝚀_{12|1} = x^{L/2} (𝚏̄/B̄_{(+)}) 𝚏^{[2]} R_{y₃} / (σσ̂̄)`.
    pub fn q121(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        let pre = ratio(self.fbar(u)?, self.roots.bbar_plus(x), "B̄₊ zero")?;
        Ok(self.x_pow_half_l(x, 1.0) * pre * self.f(u + I)? * self.roots.r_y(AuxNode::Three, x) / self.dress(u))
    }

    /// `𝚀̄_{1̇|∅} = x^{−L/2} B̄_{(−)} B_{y₁} σ̂σ̄`.
    pub fn qbar1e(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        Ok(self.x_pow_half_l(x, -1.0) * self.roots.bbar_minus(x) * self.roots.b_y(AuxNode::One, x) * self.dress_bar(u))
    }

    pub fn qbar112(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        Ok(self.x_pow_half_l(x, -1.0) * self.roots.bbar_plus(x) * self.roots.b_y(AuxNode::Three, x) * self.dress_bar(u))
    }

    /// `𝚀̄_{∅|1̇} = x^{L/2} (𝚏/B_{(+)}) 𝚏̄ B_{ỹ₁} / (σ̂σ̄)`.
    pub fn qbare1(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        let pre = ratio(self.f(u)?, self.roots.b_plus(x), "B₊ zero")?;
        Ok(self.x_pow_half_l(x, 1.0) * pre * self.fbar(u)? * self.roots.r_y(AuxNode::One, x) / self.dress_bar(u))
    }

    pub fn qbar121(&self, u: Complex64) -> Result<Complex64> {
        let x = self.x(u)?;
        let pre = ratio(self.f(u)?, self.roots.b_plus(x), "B₊ zero")?;
        Ok(self.x_pow_half_l(x, 1.0) * pre * self.fbar(u + I)? * self.roots.r_y(AuxNode::Three, x) / self.dress_bar(u))
    }
}

/// Spread of the ratio `R_{ỹ₁}R_{y₁} / (R_{y₃}R_{ỹ₃})` over sample points.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DualityReport {
    pub mean: Complex64,
    pub std_dev: f64,
}

pub fn fermionic_duality_ratio(r: &AdS3Roots, xs: &[Complex64]) -> Result<DualityReport> {
    let vals = xs
        .iter()
        .map(|&x| {
            let num = r.b_y(AuxNode::One, x) * r.r_y(AuxNode::One, x);
            ratio(num, r.r_y(AuxNode::Three, x) * r.b_y(AuxNode::Three, x), "R_{y₃} zero")
        })
        .collect::<Result<Vec<_>>>()?;
    let n = vals.len().max(1) as f64;
    let mean = vals.iter().sum::<Complex64>() / n;
    let std_dev = (vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / n).sqrt();
    Ok(DualityReport { mean, std_dev })
}

/// Auxiliary roots of node 3 solving the duality condition for given node-1 roots.
///
/// `(x − y)(1/x − y)` depends on `x` only through `x + 1/x`, so `y ↦ 1/y` leaves
/// `R_y B_y` invariant up to the constant `y²`.
pub fn dual_auxiliary(y1: &[Complex64], y1b: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    (y1.iter().map(|y| 1.0 / y).collect(), y1b.iter().map(|y| 1.0 / y).collect())
}

/// Comparison of `μ̄^{[2]}/μ̄` computed two ways at one point.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MuRatioPoint {
    pub u: Complex64,
    /// Relative gap of the route through `𝚀_{1|1}𝚀̄_{1̇|1̇}`; vanishes at every `N`.
    pub exact_gap: f64,
    /// Relative gap of the route through `𝚏_tot 𝚏*_tot^{[−2]}` after removing the
    /// asymptotic boundary constant, at `N` and `2N`.
    pub periodic_gap: [f64; 2],
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MuRatioReport {
    pub points: Vec<MuRatioPoint>,
    pub max_exact_gap: f64,
    pub pass: bool,
}

/// `(μ̄_as)^{[2]}/μ̄_as = ℚ⁺ℚ̄⁺/(ℚ⁻ℚ̄⁻) · (𝚏_tot^{[2]}/𝚏_tot)²` at sample points.
pub fn mu_as_ratio_check(r: &AdS3Roots, n: usize, us: &[Complex64], tol: f64) -> Result<MuRatioReport> {
    let q = AsymptoticQ::new(r, n)?;
    let q2 = AsymptoticQ::new(r, 2 * n)?;
    // Π B₊/B₋ at x → ∞ tends to Π √(x⁻/x⁺) (and barred); the periodic route picks it up.
    let boundary: Complex64 = r.left().chain(r.right()).map(|(p, m)| (p / m).sqrt()).product::<Complex64>();
    let mut points = Vec::with_capacity(us.len());
    for &u in us {
        let rhs_of = |q: &AsymptoticQ| -> Result<Complex64> {
            let qs = q.big_q(u + 0.5 * I) * q.big_qbar(u + 0.5 * I) / (q.big_q(u - 0.5 * I) * q.big_qbar(u - 0.5 * I));
            let ft = ratio(q.f_tot(u + I)?, q.f_tot(u)?, "𝚏_tot zero")?;
            Ok(qs * ft * ft)
        };
        let rhs = rhs_of(&q)?;
        let lhs = ratio(q.q11(u + 0.5 * I)? * q.qbar11(u + 0.5 * I)?, q.q11(u - 0.5 * I)? * q.qbar11(u - 0.5 * I)?, "𝚀₁₁ zero")?;
        let exact_gap = (lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
        let periodic = |q: &AsymptoticQ| -> Result<f64> {
            let mu = |v: Complex64| -> Result<Complex64> {
                Ok(q.big_q(v - 0.5 * I) * q.big_qbar(v - 0.5 * I) * q.f_tot(v)? * q.f_tot_star(v - I)?)
            };
            let lhs = ratio(mu(u + I)?, mu(u)?, "μ̄ zero")? * boundary;
            let rhs = rhs_of(q)?;
            Ok((lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE))
        };
        points.push(MuRatioPoint { u, exact_gap, periodic_gap: [periodic(&q)?, periodic(&q2)?] });
    }
    let max_exact_gap = points.iter().map(|p| p.exact_gap).fold(0.0, f64::max);
    Ok(MuRatioReport { points, max_exact_gap, pass: max_exact_gap < tol })
}

/// Result of comparing a dressing model's double-crossing monodromy with the roots.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CrossingReport {
    /// `B₋/B₊ · R̄₊/R̄₋` at the test point.
    pub base: Complex64,
    /// `(B₋/B₊ · R̄₊/R̄₋)²`, the clockwise double-crossing factor.
    pub factor: Complex64,
    /// Measured `σ(u, 2)/σ(u, 0)` and `σ(u, −2)/σ(u, 0)`.
    pub measured: [Complex64; 2],
    /// Whether the factor differs from 1, i.e. the monodromy is not of square-root type.
    pub logarithmic: bool,
    pub pass: bool,
}

/// Base factor `B₋/B₊ · R̄₊/R̄₋` at a Zhukovsky variable.
pub fn crossing_base(r: &AdS3Roots, x: Complex64) -> Result<Complex64> {
    Ok(ratio(r.b_minus(x), r.b_plus(x), "B₊ zero")? * ratio(r.rbar_plus(x), r.rbar_minus(x), "R̄₋ zero")?)
}

/// Checks `σ̃̃^{(+)} = (B₋/B₊ · R̄₊/R̄₋)^{2η} σ^{(+)}` for `η = ±1`.
///
/// `sigma(u, n)` evaluates the model on the cover of the cut, `n` counting signed crossings
/// from the outer sheet.
pub fn crossing_structure_check<S>(r: &AdS3Roots, u: Complex64, sigma: S, tol: f64) -> Result<CrossingReport>
where
    S: Fn(Complex64, i32) -> Complex64,
{
    let x = x_of_u(u, Sheet::Outer, r.coupling())?;
    let base = crossing_base(r, x)?;
    let factor = base * base;
    let s0 = sigma(u, 0);
    let measured = [ratio(sigma(u, 2), s0, "σ zero")?, ratio(sigma(u, -2), s0, "σ zero")?];
    let expected = [factor, 1.0 / factor];
    let pass = measured.iter().zip(&expected).all(|(m, e)| (m - e).norm() <= tol * e.norm().max(1.0));
    Ok(CrossingReport { base, factor, measured, logarithmic: (factor - 1.0).norm() > tol, pass })
}

/// Toy σ^{(+)} with logarithmic monodromy: `exp(n · Σ log factors)` over the individual
/// linear factors of `B₋/B₊ · R̄₊/R̄₋`, evaluated on the sheet reached after `n` crossings.
pub fn toy_log_sigma(r: &AdS3Roots) -> impl Fn(Complex64, i32) -> Complex64 + '_ {
    move |u, n| {
        let sheet = if n.rem_euclid(2) == 0 { Sheet::Outer } else { Sheet::Inner };
        let Ok(x) = x_of_u(u, sheet, r.coupling()) else { return Complex64::new(f64::NAN, f64::NAN) };
        let lin = |roots: &[Complex64], z: Complex64, sign: f64| -> Complex64 {
            roots.iter().map(|&v| sign * ((r.h / (2.0 * v)).sqrt() * (z - v)).ln()).sum()
        };
        let log_sum = lin(&r.xp, 1.0 / x, 1.0) - lin(&r.xm, 1.0 / x, 1.0) + lin(&r.xbm, x, 1.0) - lin(&r.xbp, x, 1.0);
        (log_sum * n as f64).exp()
    }
}

/// Global charges entering the asymptotic weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Charges {
    pub delta: f64,
    pub s: f64,
    pub j: f64,
    pub k: f64,
    pub m1: f64,
    pub m3: f64,
    pub m1b: f64,
    pub m3b: f64,
}

/// Weights and shifted weights of the left and right algebras.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightTable {
    pub lambda_l: [f64; 2],
    pub nu_l: [f64; 2],
    pub lambda_r: [f64; 2],
    pub nu_r: [f64; 2],
    pub lambda_hat_l: [f64; 2],
    pub nu_hat_l: [f64; 2],
    pub lambda_hat_r: [f64; 2],
    pub nu_hat_r: [f64; 2],
    /// Large-u exponent of `(μ̄_as)_{11̇}`.
    pub mu_bar_11: f64,
}

pub fn weight_exponents(q: Charges) -> WeightTable {
    let ll = 0.5 * (q.m1 - q.m3);
    let lr = -0.5 * (q.m1b - q.m3b);
    let lambda_l = [0.5 * (q.j + q.k) + ll, -0.5 * (q.j + q.k) + ll];
    let nu_l = [-0.5 * (q.delta + q.s) - ll, 0.5 * (q.delta + q.s) - ll];
    let lambda_r = [0.5 * (q.j - q.k) + lr, -0.5 * (q.j - q.k) + lr];
    let nu_r = [-0.5 * (q.delta - q.s) - lr, 0.5 * (q.delta - q.s) - lr];
    let lambda_hat_l = [lambda_l[0] + 1.0, lambda_l[1]];
    let nu_hat_l = [nu_l[0] - 1.0, nu_l[1]];
    let lambda_hat_r = [lambda_r[0], lambda_r[1] + 1.0];
    let nu_hat_r = [nu_r[0], nu_r[1] - 1.0];
    let mu_bar_11 = -(lambda_hat_l[0] + nu_hat_l[0] + lambda_hat_r[0] + nu_hat_r[0]);
    WeightTable { lambda_l, nu_l, lambda_r, nu_r, lambda_hat_l, nu_hat_l, lambda_hat_r, nu_hat_r, mu_bar_11 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn empty(l: usize) -> AdS3Roots {
        AdS3Roots::new(Coupling::new(1.0).unwrap(), l, vec![], vec![], Auxiliary::default()).unwrap()
    }

    fn one_pair() -> AdS3Roots {
        AdS3Roots::from_rapidities(Coupling::new(0.7).unwrap(), 3, &[c(0.4, 0.0)], &[], Auxiliary::default()).unwrap()
    }

    #[test]
    fn empty_configuration() {
        let r = empty(2);
        assert!(aba_residuals(&r, &DressingModel::default()).unwrap().is_empty());
        let q = AsymptoticQ::new(&r, 16).unwrap();
        let u = c(1.3, 0.4);
        let x = x_of_u(u, Sheet::Outer, r.coupling()).unwrap();
        assert!((q.q1e(u).unwrap() - 1.0 / x).norm() < 1e-14);
        assert!((q.qe1(u).unwrap() - x).norm() < 1e-14);
        assert!((q.q1e(u).unwrap() * q.qe1(u).unwrap() - 1.0).norm() < 1e-14);
        let m = mu_as_ratio_check(&r, 16, &[u], 1e-12).unwrap();
        assert!(m.pass && m.points[0].exact_gap == 0.0);
        let cr = crossing_structure_check(&r, u, |_, _| one(), 1e-12).unwrap();
        assert!(cr.pass && !cr.logarithmic);
    }

    #[test]
    fn shell_violation_rejected() {
        let bad = AdS3Roots::new(Coupling::new(1.0).unwrap(), 2, vec![(c(2.0, 0.0), c(3.0, 0.0))], vec![], Auxiliary::default());
        assert!(matches!(bad, Err(Error::ShellViolation(_))));
    }

    #[test]
    fn continuation_of_single_y() {
        let mut r = empty(2);
        r.y1 = vec![c(1.5, 0.3)];
        let x = c(0.8, -1.1);
        assert!((r.r_y(AuxNode::One, x) - (x - r.y1[0])).norm() < 1e-15);
        assert!((r.r_y(AuxNode::One, 1.0 / x) - r.b_y(AuxNode::One, x)).norm() < 1e-15);
    }

    #[test]
    fn exact_continuation() {
        let y = [GaussRat::from_ratios(3, 2, 1, 3)];
        let yb = [GaussRat::from_ratios(-2, 5, 7, 4)];
        let x = GaussRat::from_ratios(5, 7, -1, 2);
        let lhs = r_y_exact(&y, &yb, &x.inv().unwrap()).unwrap();
        assert_eq!(lhs, b_y_exact(&y, &yb, &x).unwrap());
    }

    #[test]
    fn duality_ratio_is_constant() {
        let mut r = one_pair();
        r.y1 = vec![c(1.7, 0.2), c(-0.6, 1.1)];
        r.y1b = vec![c(0.3, -1.4)];
        (r.y3, r.y3b) = dual_auxiliary(&r.y1, &r.y1b);
        let xs: Vec<_> = (0..10).map(|k| c(1.1 + 0.3 * k as f64, 0.2 * k as f64 - 0.7)).collect();
        let d = fermionic_duality_ratio(&r, &xs).unwrap();
        assert!(d.std_dev < 1e-10 * d.mean.norm());
    }

    #[test]
    fn mu_ratio_one_pair() {
        let r = one_pair();
        let m = mu_as_ratio_check(&r, 16, &[c(0.9, 0.3), c(-1.7, 0.8)], 1e-8).unwrap();
        assert!(m.pass);
        for p in &m.points {
            assert!(p.periodic_gap[1] < p.periodic_gap[0]);
        }
    }

    #[test]
    fn crossing_models() {
        let r = one_pair();
        let u = c(0.3, 0.6);
        let constant = crossing_structure_check(&r, u, |_, _| one(), 1e-8).unwrap();
        assert!(constant.logarithmic && !constant.pass);
        let toy = crossing_structure_check(&r, u, toy_log_sigma(&r), 1e-8).unwrap();
        assert!(toy.pass);
    }

    #[test]
    fn weights() {
        let zero = weight_exponents(Charges::default());
        assert_eq!(zero.lambda_hat_l, [1.0, 0.0]);
        assert_eq!(zero.nu_hat_l, [-1.0, 0.0]);
        assert_eq!(zero.lambda_hat_r, [0.0, 1.0]);
        assert_eq!(zero.nu_hat_r, [0.0, -1.0]);
        let bps = weight_exponents(Charges { delta: 3.0, j: 3.0, ..Default::default() });
        assert_eq!(bps.mu_bar_11, 0.0);
        assert_eq!(bps.lambda_hat_l[0] + bps.nu_hat_l[0], 0.0);
    }

    #[test]
    fn two_particle_solution() {
        let cp = Coupling::new(0.5).unwrap();
        let seed = AbaSeed { u: vec![c(0.6, 0.0)], ub: vec![c(-0.6, 0.0)], aux: Auxiliary::default() };
        let r = solve_aba(cp, 4, &seed, &DressingModel::default(), NewtonOptions::default()).unwrap();
        assert!(aba_residuals(&r, &DressingModel::default()).unwrap().iter().all(|z| z.norm() < 1e-10));
        assert!(r.momentum_defect() < 1e-9);
    }
}
