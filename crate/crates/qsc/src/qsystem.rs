//! gl(2|2) Q-systems: generation from a seed, symmetries and the exact QQ-relation audit.
//!
//! Multi-indices are bitmasks over `{1, 2}`: `0` is the empty set, `1 = {1}`, `2 = {2}`,
//! `3 = {1, 2}`. Bosonic indices come first, `Q_{A|I}` is stored unshifted.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{GaussRat, TwistedPoly};
use crate::grassmann::Grassmann;
use crate::{Error, Result};

/// Empty multi-index.
pub const E: u8 = 0;
/// Full multi-index `{1, 2}`.
pub const F: u8 = 3;

/// Levi-Civita symbol on single indices `1, 2`.
pub fn eps(a: u8, b: u8) -> i64 {
    match (a, b) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// Permutation sign of the concatenation of two disjoint multi-indices.
fn concat_sign(x: u8, y: u8) -> bool {
    x == 2 && y == 1
}

fn idx(a: u8, i: u8) -> usize {
    (a | (i << 2)) as usize
}

fn set_name(m: u8) -> &'static str {
    ["0", "1", "2", "12"][m as usize]
}

fn parse_set(s: &str) -> Option<u8> {
    match s {
        "0" | "" => Some(0),
        "1" => Some(1),
        "2" => Some(2),
        "12" => Some(3),
        _ => None,
    }
}

/// Human-readable component label such as `12|1`.
pub fn key(a: u8, i: u8) -> String {
    format!("{}|{}", set_name(a), set_name(i))
}

/// The sixteen functions `Q_{A|I}`; the two corners `Q_{12|0}` and `Q_{0|12}` may be absent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSystem {
    q: Vec<Option<TwistedPoly>>,
}

impl QSystem {
    /// Builds a system from components; all non-corner components are required.
    pub fn from_components(comps: BTreeMap<(u8, u8), TwistedPoly>) -> Result<Self> {
        let mut q = vec![None; 16];
        for ((a, i), f) in comps {
            if a > 3 || i > 3 {
                return Err(Error::InvalidInput(format!("bad multi-index ({a},{i})")));
            }
            q[idx(a, i)] = Some(f);
        }
        let sys = QSystem { q };
        for a in 0..4 {
            for i in 0..4 {
                let corner = (a == F && i == E) || (a == E && i == F);
                if !corner && sys.get(a, i).is_none() {
                    return Err(Error::InvalidInput(format!("missing component Q_{}", key(a, i))));
                }
            }
        }
        if sys.q(E, E).is_zero() {
            return Err(Error::Degenerate("Q_{0|0} vanishes".into()));
        }
        Ok(sys)
    }

    pub fn get(&self, a: u8, i: u8) -> Option<&TwistedPoly> {
        self.q[idx(a, i)].as_ref()
    }

    /// Component access; panics on an absent corner.
    pub fn q(&self, a: u8, i: u8) -> &TwistedPoly {
        self.get(a, i).unwrap_or_else(|| panic!("Q_{} is absent", key(a, i)))
    }

    pub fn set(&mut self, a: u8, i: u8, f: TwistedPoly) {
        self.q[idx(a, i)] = Some(f);
    }

    pub fn has_corners(&self) -> bool {
        self.get(F, E).is_some() && self.get(E, F).is_some()
    }

    fn map(&self, f: impl Fn(u8, u8, &TwistedPoly) -> Result<TwistedPoly>) -> Result<QSystem> {
        let mut q = vec![None; 16];
        for a in 0..4 {
            for i in 0..4 {
                if let Some(x) = self.get(a, i) {
                    q[idx(a, i)] = Some(f(a, i, x)?);
                }
            }
        }
        Ok(QSystem { q })
    }

    pub fn to_json(&self) -> QSystemJson {
        let mut m = BTreeMap::new();
        for a in 0..4 {
            for i in 0..4 {
                if let Some(f) = self.get(a, i) {
                    m.insert(key(a, i), f.clone());
                }
            }
        }
        QSystemJson { q: m }
    }

    pub fn from_json(j: &QSystemJson) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for (k, f) in &j.q {
            let (a, i) = k
                .split_once('|')
                .and_then(|(a, i)| Some((parse_set(a)?, parse_set(i)?)))
                .ok_or_else(|| Error::InvalidInput(format!("bad key {k:?}")))?;
            comps.insert((a, i), f.clone());
        }
        QSystem::from_components(comps)
    }
}

impl fmt::Display for QSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..4 {
            for i in 0..4 {
                if let Some(x) = self.get(a, i) {
                    writeln!(f, "Q_{} = {}", key(a, i), x)?;
                }
            }
        }
        Ok(())
    }
}

/// JSON form `{"Q": {"A|I": poly}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QSystemJson {
    #[serde(rename = "Q")]
    pub q: BTreeMap<String, TwistedPoly>,
}

/// Seed `B_0`, `B_m` of the fused Plücker recursion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BSeed {
    #[serde(rename = "bEmpty")]
    pub b_empty: TwistedPoly,
    #[serde(rename = "bOne")]
    pub b_one: [TwistedPoly; 4],
}

impl BSeed {
    /// Constant `B_0` and `B_m` of degree at most `degree` with small Gaussian-integer coefficients.
    pub fn random<R: Rng>(rng: &mut R, degree: usize) -> BSeed {
        let gi = |rng: &mut R| GaussRat::int(rng.gen_range(-3..=3)) + &GaussRat::i() * &GaussRat::int(rng.gen_range(-3..=3));
        let mut b0 = gi(rng);
        while b0.is_zero() {
            b0 = gi(rng);
        }
        let b_one = std::array::from_fn(|_| TwistedPoly::poly((0..=degree).map(|_| gi(rng)).collect()));
        BSeed { b_empty: TwistedPoly::constant(b0), b_one }
    }

    /// `B_0 = 1`, `B_m = u + c_m`.
    pub fn linear(c: [i64; 4]) -> BSeed {
        BSeed {
            b_empty: TwistedPoly::one(),
            b_one: c.map(|cm| TwistedPoly::poly(vec![GaussRat::int(cm), GaussRat::one()])),
        }
    }
}

/// Mask bits: `θ1..θ4` are bits 0..3, `ψ1, ψ2` are bits 4, 5.
fn grassmann_mask(a: u8, i: u8) -> u8 {
    a | (i << 4)
}

/// Full generating function `Σ_k B_(k) θ^k` from the seed.
fn generating_function(seed: &BSeed) -> Result<Grassmann> {
    let mut b1 = Grassmann::default();
    for (m, bm) in seed.b_one.iter().enumerate() {
        b1 = b1.add(&Grassmann::monomial(1 << m, bm.shift(1)));
    }
    let mut level = Grassmann::scalar(seed.b_empty.shift(2));
    let mut total = level.clone();
    for _ in 1..=4 {
        level = b1.mul(&level.shift(-2)).exact_div(&seed.b_empty)?;
        total = total.add(&level);
    }
    Ok(total)
}

/// Builds the Q-system by the odd Fourier transform over `θ3, θ4`.
pub fn generate_from_seed(seed: &BSeed) -> Result<QSystem> {
    if seed.b_empty.is_zero() {
        return Err(Error::InvalidInput("B_0 must be nonzero".into()));
    }
    if seed.b_one.iter().all(TwistedPoly::is_zero) {
        return Err(Error::InvalidInput("B_m must not all vanish".into()));
    }
    let b = generating_function(seed)?;
    let t3p1 = Grassmann::monomial(0b0001_0100, TwistedPoly::one());
    let t4p2 = Grassmann::monomial(0b0010_1000, TwistedPoly::one());
    let kernel = Grassmann::scalar(TwistedPoly::one()).add(&t3p1).add(&t4p2).add(&t3p1.mul(&t4p2));
    let transformed = kernel.mul(&b).deriv(3).deriv(2);

    let mut comps = BTreeMap::new();
    for a in 0..4u8 {
        for i in 0..4u8 {
            let raw = transformed.get(grassmann_mask(a, i));
            // The component sits at u + (|I| - |A|) i/2; undo that shift.
            let n = i.count_ones() as i64 - a.count_ones() as i64;
            let mut f = raw.shift(-n);
            // Sign convention fixed against the QQ-relations.
            if i == 2 {
                f = -&f;
            }
            comps.insert((a, i), f);
        }
    }
    if comps[&(E, E)].is_zero() || comps[&(F, F)].is_zero() {
        return Err(Error::Degenerate("Q_{0|0} or Q_{12|12} vanishes".into()));
    }
    let sys = QSystem::from_components(comps)?;
    let report = check_qq(&sys);
    if !report.pass {
        return Err(Error::InconsistentSigns(report.failing().join(", ")));
    }
    Ok(sys)
}

/// Hodge dual `Q^{A|I} = (-1)^{|B||I|} ε^{AB} ε^{IJ} Q_{B|J}` with `B, J` the complements.
pub fn hodge(q: &QSystem) -> QSystem {
    let mut out = vec![None; 16];
    for a in 0..4u8 {
        for i in 0..4u8 {
            let (b, j) = (3 - a, 3 - i);
            if let Some(f) = q.get(b, j) {
                let neg = (b.count_ones() * i.count_ones()) % 2 == 1;
                let neg = neg ^ concat_sign(a, b) ^ concat_sign(i, j);
                out[idx(a, i)] = Some(if neg { -f } else { f.clone() });
            }
        }
    }
    QSystem { q: out }
}

/// One named residual of a relation family.
#[derive(Clone, Debug)]
pub struct Residual {
    pub label: String,
    pub value: TwistedPoly,
}

/// Residuals of one relation family.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: &'static str,
    pub residuals: Vec<Residual>,
}

impl Family {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_zero())
    }
}

/// Report of [`check_qq`]; passes iff every residual is the zero element.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub families: Vec<Family>,
    pub pass: bool,
}

impl RelationReport {
    fn new(families: Vec<Family>) -> Self {
        let pass = families.iter().all(Family::pass);
        RelationReport { families, pass }
    }

    /// Labels of all nonzero residuals.
    pub fn failing(&self) -> Vec<String> {
        self.families
            .iter()
            .flat_map(|f| f.residuals.iter().filter(|r| !r.value.is_zero()).map(move |r| format!("{}[{}]", f.name, r.label)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fams: Vec<_> = self
            .families
            .iter()
            .map(|f| {
                serde_json::json!({
                    "family": f.name,
                    "pass": f.pass(),
                    "residuals": f.residuals.iter().map(|r| serde_json::json!({
                        "label": r.label,
                        "zero": r.value.is_zero(),
                        "value": r.value,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "pass": self.pass, "families": fams })
    }
}

fn sh(f: &TwistedPoly, n: i64) -> TwistedPoly {
    f.shift(n)
}

fn scaled(f: &TwistedPoly, c: i64) -> TwistedPoly {
    match c {
        1 => f.clone(),
        -1 => -f,
        0 => TwistedPoly::zero(),
        _ => f.scale(&GaussRat::int(c)),
    }
}

fn sum(items: impl IntoIterator<Item = TwistedPoly>) -> TwistedPoly {
    items.into_iter().fold(TwistedPoly::zero(), |acc, x| &acc + &x)
}

const IDX: [u8; 2] = [1, 2];

fn sign_label(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// Evaluates every QQ-relation family as an exact ring expression.
pub fn check_qq(q: &QSystem) -> RelationReport {
    let d = hodge(q);
    let qq = |a, i| q.q(a, i);
    let dd = |a, i| d.q(a, i);
    let q00 = qq(E, E);
    let mut families = Vec::new();

    let mut bilinear = Vec::new();
    for a in IDX {
        for i in IDX {
            let v = &(&(&sh(qq(a, i), 1) * &sh(q00, -1)) - &(&sh(qq(a, i), -1) * &sh(q00, 1))) - &(qq(a, E) * qq(E, i));
            bilinear.push(Residual { label: format!("a={a},i={i}"), value: v });
        }
    }
    families.push(Family { name: "bilinear", residuals: bilinear });

    let lhs = &(&sh(dd(E, E), 1) * &sh(q00, -1)) - &(&sh(dd(E, E), -1) * &sh(q00, 1));
    let bos = sum(IDX.map(|a| qq(a, E) * dd(a, E)));
    let fer = sum(IDX.map(|i| qq(E, i) * dd(E, i)));
    families.push(Family {
        name: "dual-bilinear",
        residuals: vec![
            Residual { label: "bosonic".into(), value: &lhs - &bos },
            Residual { label: "fermionic".into(), value: &lhs - &fer },
        ],
    });

    let det = &(&(qq(1, 1) * qq(2, 2)) - &(qq(1, 2) * qq(2, 1))) - &(qq(F, F) * q00);
    families.push(Family { name: "determinant", residuals: vec![Residual { label: "det".into(), value: det }] });

    let mut orth = Vec::new();
    let diag = dd(E, E) * q00;
    for i in IDX {
        for j in IDX {
            let delta = if i == j { diag.clone() } else { TwistedPoly::zero() };
            let v1 = &sum(IDX.map(|a| qq(a, i) * dd(a, j))) + &delta;
            let v2 = &sum(IDX.map(|k| qq(i, k) * dd(j, k))) + &delta;
            orth.push(Residual { label: format!("fermionic i={i},j={j}"), value: v1 });
            orth.push(Residual { label: format!("bosonic a={i},b={j}"), value: v2 });
        }
    }
    families.push(Family { name: "orthogonality", residuals: orth });

    let mut lower = Vec::new();
    let mut mixed = Vec::new();
    for s in [1i64, -1] {
        let q00s = sh(q00, s);
        let qffs = sh(qq(F, F), s);
        let d00s = sh(dd(E, E), s);
        let sl = sign_label(s);
        for a in IDX {
            let eps_sum = |f: &dyn Fn(u8, u8) -> TwistedPoly| {
                sum(IDX.iter().flat_map(|&x| IDX.map(move |y| (x, y))).map(|(x, y)| scaled(&f(x, y), eps(x, y))))
            };
            let v = &(qq(a, F) * &q00s) - &eps_sum(&|i, j| qq(E, i) * &sh(qq(a, j), s));
            lower.push(Residual { label: format!("Q_a|12 a={a} s={sl}"), value: v });
            let v = &(qq(F, a) * &q00s) - &eps_sum(&|b, c| qq(b, E) * &sh(qq(c, a), s));
            lower.push(Residual { label: format!("Q_12|i i={a} s={sl}"), value: v });
            let v = &(qq(a, E) * &qffs) + &eps_sum(&|i, j| qq(F, i) * &sh(qq(a, j), s));
            lower.push(Residual { label: format!("Q_a|0 a={a} s={sl}"), value: v });
            let v = &(qq(E, a) * &qffs) + &eps_sum(&|b, c| qq(b, F) * &sh(qq(c, a), s));
            lower.push(Residual { label: format!("Q_0|i i={a} s={sl}"), value: v });

            let v = &(dd(a, E) * &q00s) + &sum(IDX.map(|i| &sh(dd(a, i), s) * qq(E, i)));
            mixed.push(Residual { label: format!("Q^a|0 a={a} s={sl}"), value: v });
            let v = &(dd(E, a) * &q00s) + &sum(IDX.map(|b| &sh(dd(b, a), s) * qq(b, E)));
            mixed.push(Residual { label: format!("Q^0|i i={a} s={sl}"), value: v });
            let v = &(qq(a, E) * &d00s) - &sum(IDX.map(|i| &sh(qq(a, i), s) * dd(E, i)));
            mixed.push(Residual { label: format!("Q_a|0 Q^0|0 a={a} s={sl}"), value: v });
            let v = &(qq(E, a) * &d00s) - &sum(IDX.map(|b| &sh(qq(b, a), s) * dd(b, E)));
            mixed.push(Residual { label: format!("Q_0|i Q^0|0 i={a} s={sl}"), value: v });
        }
    }
    families.push(Family { name: "local-lower", residuals: lower });
    families.push(Family { name: "local-mixed", residuals: mixed });

    let mut corners = Vec::new();
    if let Some(c) = q.get(F, E) {
        corners.push(Residual { label: "Q_12|0".into(), value: &(c * q00) - &qq(1, E).wronskian(qq(2, E)) });
    }
    if let Some(c) = q.get(E, F) {
        corners.push(Residual { label: "Q_0|12".into(), value: &(c * q00) - &qq(E, 1).wronskian(qq(E, 2)) });
    }
    if !corners.is_empty() {
        families.push(Family { name: "corner", residuals: corners });
    }
    RelationReport::new(families)
}

/// Hasse-diagram gauge transformation with bosonic and fermionic multipliers.
pub fn gauge_transform(q: &QSystem, gb: &TwistedPoly, gf: &TwistedPoly) -> Result<QSystem> {
    if gb.is_zero() || gf.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let both = gb * gf;
    let bb = &sh(gb, 1) * &sh(gb, -1);
    let ff = &sh(gf, 1) * &sh(gf, -1);
    let b3 = &(&sh(gb, 2) * gb) * &sh(gb, -2);
    let f3 = &(&sh(gf, 2) * gf) * &sh(gf, -2);
    q.map(|a, i, x| {
        let na = a.count_ones();
        let ni = i.count_ones();
        match (na, ni) {
            (0, 0) | (1, 1) | (2, 2) => Ok(x * &both),
            (1, 0) | (2, 1) => Ok(x * &bb),
            (0, 1) | (1, 2) => Ok(x * &ff),
            (2, 0) => (x * &b3).exact_div(gf),
            (0, 2) => (x * &f3).exact_div(gb),
            _ => unreachable!(),
        }
    })
}

/// The `h`-gauge that leaves `Q_{0|0}` invariant.
pub fn gauge_h(q: &QSystem, h: &TwistedPoly) -> Result<QSystem> {
    if h.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let hh = &sh(h, 1) * &sh(h, -1);
    q.map(|a, i, x| match (a.count_ones(), i.count_ones()) {
        (0, 0) | (1, 1) | (2, 2) => Ok(x.clone()),
        (1, 0) | (2, 1) => Ok(x * h),
        (0, 1) | (1, 2) => x.exact_div(h),
        (2, 0) => Ok(x * &hh),
        (0, 2) => x.exact_div(&hh),
        _ => unreachable!(),
    })
}

/// A constant 2x2 matrix over the Gaussian rationals, row-major.
pub type Mat2 = [[GaussRat; 2]; 2];

pub fn mat_det(m: &Mat2) -> GaussRat {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

pub fn identity2() -> Mat2 {
    [[GaussRat::one(), GaussRat::zero()], [GaussRat::zero(), GaussRat::one()]]
}

/// Constant H-rotation of bosonic and fermionic indices.
pub fn h_rotate(q: &QSystem, hb: &Mat2, hf: &Mat2) -> Result<QSystem> {
    let db = mat_det(hb);
    let df = mat_det(hf);
    if db.is_zero() || df.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let rot = |m: &Mat2, r: u8, f: &dyn Fn(u8) -> TwistedPoly| sum(IDX.map(|c| f(c).scale(&m[r as usize - 1][c as usize - 1])));
    let mut out = q.clone();
    for a in IDX {
        out.set(a, E, rot(hb, a, &|b| q.q(b, E).clone()));
        out.set(E, a, rot(hf, a, &|j| q.q(E, j).clone()));
        out.set(F, a, rot(hf, a, &|j| q.q(F, j).clone()).scale(&db));
        out.set(a, F, rot(hb, a, &|b| q.q(b, F).clone()).scale(&df));
        for i in IDX {
            let v = sum(IDX.iter().flat_map(|&b| IDX.map(move |j| (b, j))).map(|(b, j)| {
                q.q(b, j).scale(&(&hb[a as usize - 1][b as usize - 1] * &hf[i as usize - 1][j as usize - 1]))
            }));
            out.set(a, i, v);
        }
    }
    out.set(F, F, q.q(F, F).scale(&(&db * &df)));
    if let Some(c) = q.get(F, E) {
        out.set(F, E, c.scale(&db));
    }
    if let Some(c) = q.get(E, F) {
        out.set(E, F, c.scale(&df));
    }
    Ok(out)
}

/// Fills `Q_{12|0}` and `Q_{0|12}` from the Wronskians of the single-index functions.
pub fn complete_corners(q: &QSystem) -> Result<QSystem> {
    let mut out = q.clone();
    let q00 = q.q(E, E);
    out.set(F, E, q.q(1, E).wronskian(q.q(2, E)).exact_div(q00)?);
    out.set(E, F, q.q(E, 1).wronskian(q.q(E, 2)).exact_div(q00)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c_seed() -> QSystem {
        generate_from_seed(&BSeed::linear([0, 1, 2, 3])).unwrap()
    }

    #[test]
    fn c_seed_passes_and_has_constant_pair_wronskians() {
        let q = c_seed();
        assert!(check_qq(&q).pass);
        // Q_{a|i} = B_{a, 5-i} = i (c_{5-i} - c_a) up to the fermionic sign convention.
        for a in IDX {
            for i in IDX {
                let expect = GaussRat::i() * GaussRat::int((4 - i as i64) - (a as i64 - 1));
                let got = q.q(a, i);
                assert!(*got == TwistedPoly::constant(expect.clone()) || *got == -&TwistedPoly::constant(expect));
            }
        }
    }

    #[test]
    fn equal_b_is_degenerate() {
        let s = BSeed::linear([1, 1, 1, 1]);
        assert!(matches!(generate_from_seed(&s), Err(Error::Degenerate(_))));
    }

    #[test]
    fn constant_b_over_linear_empty_is_not_divisible() {
        let mut s = BSeed::linear([0, 1, 2, 3]);
        s.b_empty = TwistedPoly::u();
        assert_eq!(generate_from_seed(&s), Err(Error::NotDivisible));
    }

    #[test]
    fn hodge_twice_signs() {
        let q = c_seed();
        let hh = hodge(&hodge(&q));
        for a in 0..4u8 {
            for i in 0..4u8 {
                let sign = (a.count_ones() + i.count_ones()) % 2;
                let expect = if sign == 1 { -q.q(a, i) } else { q.q(a, i).clone() };
                assert_eq!(hh.q(a, i), &expect);
            }
        }
        assert_eq!(hodge(&q).q(E, E), q.q(F, F));
    }

    #[test]
    fn perturbation_breaks_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut q = generate_from_seed(&BSeed::random(&mut rng, 2)).unwrap();
        q.set(1, 1, q.q(1, 1) + &TwistedPoly::one());
        let r = check_qq(&q);
        assert!(!r.pass);
        assert!(!r.families.iter().find(|f| f.name == "bilinear").unwrap().pass());
    }

    #[test]
    fn trivial_constant_system() {
        let one = TwistedPoly::one();
        let zero = TwistedPoly::zero();
        let mut m = BTreeMap::new();
        for a in 0..4u8 {
            for i in 0..4u8 {
                m.insert((a, i), zero.clone());
            }
        }
        m.insert((E, E), one.clone());
        m.insert((F, F), one.clone());
        m.insert((1, 1), one.clone());
        m.insert((2, 2), one.clone());
        let q = QSystem::from_components(m).unwrap();
        assert!(check_qq(&q).pass);
    }

    #[test]
    fn complete_corners_footnote_orientation() {
        let q0 = c_seed();
        let mut q = q0.clone();
        q.set(E, E, TwistedPoly::one());
        q.set(1, E, TwistedPoly::u());
        q.set(2, E, TwistedPoly::one());
        let c = complete_corners(&q).unwrap();
        assert_eq!(c.q(F, E), &TwistedPoly::constant(GaussRat::i()));
        q.set(2, E, TwistedPoly::u());
        assert!(complete_corners(&q).unwrap().q(F, E).is_zero());
    }

    #[test]
    fn corners_agree_with_fourier_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = generate_from_seed(&BSeed::random(&mut rng, 2)).unwrap();
        let c = complete_corners(&q).unwrap();
        assert_eq!(c.q(F, E), q.q(F, E));
        assert_eq!(c.q(E, F), q.q(E, F));
    }

    #[test]
    fn gauge_identity_and_h_scaling() {
        let q = c_seed();
        assert_eq!(gauge_transform(&q, &TwistedPoly::one(), &TwistedPoly::one()).unwrap(), q);
        let h = TwistedPoly::int(3);
        let g = gauge_h(&q, &h).unwrap();
        assert_eq!(g.q(E, E), q.q(E, E));
        assert_eq!(g.q(1, E), &(q.q(1, E) * &h));
        assert_eq!(&(g.q(E, 2) * &h), q.q(E, 2));
        assert!(check_qq(&g).pass);
    }

    #[test]
    fn h_rotation_matches_h_gauge() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = generate_from_seed(&BSeed::random(&mut rng, 2)).unwrap();
        let h = GaussRat::from_ratios(2, 3, 1, 1);
        let hi = h.inv().unwrap();
        let z = GaussRat::zero();
        let hb = [[h.clone(), z.clone()], [z.clone(), h.clone()]];
        let hf = [[hi.clone(), z.clone()], [z, hi]];
        assert_eq!(h_rotate(&q, &hb, &hf).unwrap(), gauge_h(&q, &TwistedPoly::constant(h)).unwrap());
        assert_eq!(h_rotate(&q, &identity2(), &identity2()).unwrap(), q);
    }

    #[test]
    fn singular_rotation_rejected() {
        let q = c_seed();
        let z = [[GaussRat::one(), GaussRat::one()], [GaussRat::one(), GaussRat::one()]];
        assert_eq!(h_rotate(&q, &z, &identity2()), Err(Error::SingularMatrix));
    }

    #[test]
    fn json_keys() {
        let q = c_seed();
        let j = q.to_json();
        assert!(j.q.contains_key("12|1"));
        assert!(j.q.contains_key("0|0"));
        assert_eq!(QSystem::from_json(&j).unwrap(), q);
    }
}
