//! T-functions on the SU(2|2) L-hook: Wronskian solution, Hirota check, Y-functions and gauges.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact::{GaussRat, TwistedPoly};
use crate::qsystem::{complete_corners, eps, QSystem, E, F};
use crate::{Error, Result};

/// True when `(a, s)` lies in the L-hook `{s <= 2} ∪ {a <= 2}` of the positive quadrant.
pub fn in_hook(a: i64, s: i64) -> bool {
    a >= 0 && s >= 0 && (a <= 2 || s <= 2)
}

/// T-functions on the hook intersected with the window `a <= max_a`, `s <= max_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct THook {
    pub window: (i64, i64),
    pub t: BTreeMap<(i64, i64), TwistedPoly>,
}

impl THook {
    /// Builds a hook from a cell function evaluated on every in-hook cell of the window.
    pub fn from_fn(window: (i64, i64), mut f: impl FnMut(i64, i64) -> TwistedPoly) -> THook {
        let mut t = BTreeMap::new();
        for a in 0..=window.0 {
            for s in 0..=window.1 {
                if in_hook(a, s) {
                    t.insert((a, s), f(a, s));
                }
            }
        }
        THook { window, t }
    }

    /// Value at a cell: zero outside the hook, `None` outside the window.
    pub fn get(&self, a: i64, s: i64) -> Option<TwistedPoly> {
        if !in_hook(a, s) {
            return Some(TwistedPoly::zero());
        }
        self.t.get(&(a, s)).cloned()
    }

    pub fn to_json(&self) -> THookJson {
        THookJson {
            window: [self.window.0, self.window.1],
            t: self.t.iter().map(|((a, s), f)| (format!("{a},{s}"), f.clone())).collect(),
        }
    }

    pub fn from_json(j: &THookJson) -> Result<THook> {
        let mut t = BTreeMap::new();
        for (k, f) in &j.t {
            let cell = k
                .split_once(',')
                .and_then(|(a, s)| Some((a.trim().parse::<i64>().ok()?, s.trim().parse::<i64>().ok()?)))
                .ok_or_else(|| Error::InvalidInput(format!("bad cell key {k:?}")))?;
            if !in_hook(cell.0, cell.1) || cell.0 > j.window[0] || cell.1 > j.window[1] {
                return Err(Error::InvalidInput(format!("cell {k} outside the hook window")));
            }
            t.insert(cell, f.clone());
        }
        Ok(THook { window: (j.window[0], j.window[1]), t })
    }
}

/// JSON form `{"window": [A, S], "T": {"a,s": poly}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct THookJson {
    pub window: [i64; 2],
    #[serde(rename = "T")]
    pub t: BTreeMap<String, TwistedPoly>,
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn signed(f: TwistedPoly, c: i64) -> TwistedPoly {
    if c < 0 {
        -&f
    } else {
        f
    }
}

fn eps_sum(f: impl Fn(u8, u8) -> TwistedPoly) -> TwistedPoly {
    let mut acc = TwistedPoly::zero();
    for (x, y) in [(1u8, 2u8), (2, 1)] {
        acc = &acc + &signed(f(x, y), eps(x, y));
    }
    acc
}

fn t_row_first(q: &QSystem, s: i64) -> TwistedPoly {
    signed(&q.q(E, E).shift(s) * &q.q(F, F).shift(-s), sign(s))
}

fn t_col_first(q: &QSystem, a: i64) -> TwistedPoly {
    signed(&q.q(F, F).shift(a) * &q.q(E, E).shift(-a), sign(a))
}

fn t_a1(q: &QSystem, s: i64) -> TwistedPoly {
    signed(eps_sum(|x, y| &q.q(x, E).shift(s) * &q.q(y, F).shift(-s)), sign(s + 1))
}

fn t_s1(q: &QSystem, a: i64) -> TwistedPoly {
    -&eps_sum(|x, y| &q.q(F, x).shift(a) * &q.q(E, y).shift(-a))
}

fn t_corner(q: &QSystem, n: i64) -> TwistedPoly {
    signed(&q.q(F, E).shift(n) * &q.q(E, F).shift(-n), sign(n))
}

/// T-functions from the six Wronskian families; corners are required.
pub fn wronskian_t(q: &QSystem, window: (i64, i64)) -> Result<THook> {
    if q.get(F, E).is_none() {
        return Err(Error::MissingCorner("Q_12|0"));
    }
    if q.get(E, F).is_none() {
        return Err(Error::MissingCorner("Q_0|12"));
    }
    Ok(THook::from_fn(window, |a, s| match (a, s) {
        (0, s) => t_row_first(q, s),
        (a, 0) => t_col_first(q, a),
        (1, s) => t_a1(q, s),
        (a, 1) => t_s1(q, a),
        (2, s) => t_corner(q, s),
        (a, _) => t_corner(q, a),
    }))
}

/// Differences between the two defining formulas at the overlap cells `(0,0)`, `(1,1)`, `(2,2)`.
pub fn overlap_residuals(q: &QSystem) -> Vec<((i64, i64), TwistedPoly)> {
    vec![
        ((0, 0), &t_row_first(q, 0) - &t_col_first(q, 0)),
        ((1, 1), &t_a1(q, 1) - &t_s1(q, 1)),
        ((2, 2), &t_corner(q, 2) - &t_corner(q, 2)),
    ]
}

/// Per-cell Hirota residuals.
#[derive(Clone, Debug)]
pub struct HirotaReport {
    pub residuals: Vec<((i64, i64), TwistedPoly)>,
    pub pass: bool,
}

impl HirotaReport {
    pub fn failing_cells(&self) -> Vec<(i64, i64)> {
        self.residuals.iter().filter(|(_, r)| !r.is_zero()).map(|(c, _)| *c).collect()
    }
}

/// Residual `T⁺T⁻ − T_{a,s+1}T_{a,s−1} − T_{a+1,s}T_{a−1,s}` at every checkable cell.
///
/// A cell is checkable when all its neighbours are known; the hook corner `(0,0)`
/// is excluded because both products on the right vanish identically there.
pub fn check_hirota(t: &THook) -> HirotaReport {
    let mut residuals = Vec::new();
    for (&(a, s), f) in &t.t {
        if (a, s) == (0, 0) {
            continue;
        }
        let nb = [t.get(a, s + 1), t.get(a, s - 1), t.get(a + 1, s), t.get(a - 1, s)];
        let [Some(up), Some(dn), Some(rt), Some(lt)] = nb else { continue };
        let r = &(&(&f.shift(1) * &f.shift(-1)) - &(&up * &dn)) - &(&rt * &lt);
        residuals.push(((a, s), r));
    }
    let pass = residuals.iter().all(|(_, r)| r.is_zero());
    HirotaReport { residuals, pass }
}

/// `Y_{a,s} = num / den` as an exact ratio of ring elements.
#[derive(Clone, Debug, PartialEq)]
pub struct YRatio {
    pub num: TwistedPoly,
    pub den: TwistedPoly,
}

impl YRatio {
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.num.eval(u) / self.den.eval(u)
    }

    /// Equality of ratios after clearing denominators.
    pub fn same_as(&self, o: &YRatio) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

fn y_parts(t: &THook, a: i64, s: i64) -> Option<YRatio> {
    let num = &t.get(a, s - 1)? * &t.get(a, s + 1)?;
    let den = &t.get(a - 1, s)? * &t.get(a + 1, s)?;
    Some(YRatio { num, den })
}

/// `Y_{a,s} = T_{a,s−1}T_{a,s+1} / (T_{a−1,s}T_{a+1,s})` on every cell with `a, s >= 1` and known neighbours.
pub fn y_functions(t: &THook) -> Result<BTreeMap<(i64, i64), YRatio>> {
    let mut out = BTreeMap::new();
    for &(a, s) in t.t.keys().filter(|(a, s)| *a >= 1 && *s >= 1) {
        if let Some(y) = y_parts(t, a, s) {
            if y.den.is_zero() {
                return Err(Error::ZeroDenominatorCell(a, s));
            }
            out.insert((a, s), y);
        }
    }
    Ok(out)
}

/// Cleared form of `Y_{1,1} Y_{2,2} = Q_{12|12}⁺ Q_{0|0}⁻ / (Q_{12|12}⁻ Q_{0|0}⁺)`.
///
/// For constant `Q_{0|0}` this is the plain ratio of shifted `Q_{12|12}`.
pub fn y11_y22_residual(t: &THook, q: &QSystem) -> Result<TwistedPoly> {
    let y11 = y_parts(t, 1, 1).ok_or(Error::InvalidInput("window too small for Y_11".into()))?;
    let y22 = y_parts(t, 2, 2).ok_or(Error::InvalidInput("window too small for Y_22 (needs a, s >= 3)".into()))?;
    let qff = q.q(F, F);
    let q00 = q.q(E, E);
    let lhs = &(&(&y11.num * &y22.num) * &qff.shift(-1)) * &q00.shift(1);
    let rhs = &(&(&y11.den * &y22.den) * &qff.shift(1)) * &q00.shift(-1);
    Ok(&lhs - &rhs)
}

/// Gauge `T_{a,s} → g₊₊^{[a+s]} g₊₋^{[a−s]} g₋₊^{[−a+s]} g₋₋^{[−a−s]} T_{a,s}`.
pub fn gauge_t(t: &THook, g: &[TwistedPoly; 4]) -> Result<THook> {
    if g.iter().any(TwistedPoly::is_zero) {
        return Err(Error::DivisionByZero);
    }
    let mut out = t.clone();
    for (&(a, s), f) in out.t.iter_mut() {
        let m = &(&g[0].shift(a + s) * &g[1].shift(a - s)) * &(&g[2].shift(-a + s) * &g[3].shift(-a - s));
        *f = &*f * &m;
    }
    Ok(out)
}

/// Pure-twist Q-system with half-twists `sx1`, `sy1` (so `𝚡₁ = sx1²`, `𝚢₁ = sy1²`) and its T-hook.
pub fn character_solution(sx1: &GaussRat, sy1: &GaussRat, window: (i64, i64)) -> Result<(QSystem, THook)> {
    let one = GaussRat::one();
    let (Some(sx2), Some(sy2)) = (sx1.inv(), sy1.inv()) else {
        return Err(Error::DegenerateTwist("zero twist".into()));
    };
    if sx1.pow(4) == Some(one.clone()) || sy1.pow(4) == Some(one.clone()) {
        return Err(Error::DegenerateTwist("coinciding twist eigenvalues".into()));
    }
    let sx = [sx1.clone(), sx2];
    let sy = [sy1.clone(), sy2];
    let mut comps = BTreeMap::new();
    comps.insert((E, E), TwistedPoly::one());
    for a in 1..=2u8 {
        comps.insert((a, E), TwistedPoly::twist(sx[a as usize - 1].clone()));
        let syi = sy[a as usize - 1].inv().expect("nonzero");
        comps.insert((E, a), TwistedPoly::twist(syi));
    }
    for a in 1..=2u8 {
        for i in 1..=2u8 {
            let s = &sx[a as usize - 1] * &sy[i as usize - 1].inv().expect("nonzero");
            let gap = &s - &s.inv().expect("nonzero");
            let c = gap.inv().ok_or_else(|| Error::DegenerateTwist(format!("bosonic/fermionic twist clash at ({a},{i})")))?;
            comps.insert((a, i), TwistedPoly::twist(s).scale(&c));
        }
    }
    let q = |a, i| comps[&(a, i)].clone();
    let det = &(&q(1, 1) * &q(2, 2)) - &(&q(1, 2) * &q(2, 1));
    let mut extra = Vec::new();
    extra.push(((F, F), det));
    for a in 1..=2u8 {
        extra.push(((a, F), eps_sum(|i, j| &q(E, i) * &q(a, j).shift(1))));
        extra.push(((F, a), eps_sum(|b, c| &q(b, E) * &q(c, a).shift(1))));
    }
    for (k, v) in extra {
        comps.insert(k, v);
    }
    let sys = complete_corners(&QSystem::from_components(comps)?)?;
    let hook = wronskian_t(&sys, window)?;
    Ok((sys, hook))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsystem::{check_qq, generate_from_seed, hodge, BSeed};

    fn c_system() -> QSystem {
        generate_from_seed(&BSeed::linear([0, 1, 2, 3])).unwrap()
    }

    #[test]
    fn unit_corner_functions() {
        let mut q = c_system();
        q.set(E, E, TwistedPoly::one());
        q.set(F, F, TwistedPoly::one());
        let t = wronskian_t(&q, (3, 3)).unwrap();
        for s in 0..=3 {
            assert_eq!(t.get(0, s).unwrap(), TwistedPoly::int(sign(s)));
            assert_eq!(t.get(s, 0).unwrap(), TwistedPoly::int(sign(s)));
        }
    }

    #[test]
    fn c_seed_hirota_and_overlaps() {
        let q = c_system();
        let t = wronskian_t(&q, (4, 4)).unwrap();
        assert!(check_hirota(&t).pass);
        assert!(overlap_residuals(&q).iter().all(|(_, r)| r.is_zero()));
        assert!(y11_y22_residual(&t, &q).unwrap().is_zero());
    }

    #[test]
    fn missing_corner() {
        let q = c_system();
        let mut m = BTreeMap::new();
        for a in 0..4u8 {
            for i in 0..4u8 {
                if (a, i) != (F, E) {
                    m.insert((a, i), q.q(a, i).clone());
                }
            }
        }
        let q = QSystem::from_components(m).unwrap();
        assert_eq!(wronskian_t(&q, (2, 2)), Err(Error::MissingCorner("Q_12|0")));
    }

    #[test]
    fn perturbed_cell_fails_locally() {
        let q = c_system();
        let mut t = wronskian_t(&q, (4, 4)).unwrap();
        let cell = t.t.get_mut(&(1, 2)).unwrap();
        *cell = &*cell + &TwistedPoly::one();
        let bad = check_hirota(&t).failing_cells();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|&(a, s)| (a - 1).abs() + (s - 2).abs() <= 1));
    }

    #[test]
    fn all_ones_fails() {
        let t = THook::from_fn((4, 4), |_, _| TwistedPoly::one());
        let r = check_hirota(&t);
        assert!(!r.pass);
        let interior = r.residuals.iter().find(|(c, _)| *c == (1, 1)).unwrap();
        assert_eq!(interior.1, TwistedPoly::int(-1));
    }

    #[test]
    fn gauge_keeps_hirota_and_y() {
        let q = c_system();
        let t = wronskian_t(&q, (4, 4)).unwrap();
        let g = [TwistedPoly::int(2), TwistedPoly::u(), TwistedPoly::int(3), TwistedPoly::poly(vec![GaussRat::one(), GaussRat::one()])];
        let gt = gauge_t(&t, &g).unwrap();
        assert!(check_hirota(&gt).pass);
        let ident = gauge_t(&t, &[TwistedPoly::one(), TwistedPoly::one(), TwistedPoly::one(), TwistedPoly::one()]).unwrap();
        assert_eq!(ident, t);
    }

    #[test]
    fn character_solution_properties() {
        let sx = GaussRat::from_ratios(3, 2, 1, 3);
        let sy = GaussRat::from_ratios(-1, 5, 2, 1);
        let (q, t) = character_solution(&sx, &sy, (3, 3)).unwrap();
        assert!(check_qq(&q).pass, "{:?}", check_qq(&q).failing());
        assert!(check_hirota(&t).pass);
        for f in t.t.values() {
            assert_eq!(&f.shift(2), f);
        }
        let tstar = wronskian_t(&hodge(&q), (3, 3)).unwrap();
        assert_eq!(tstar, t);
        let ys = y_functions(&t).unwrap();
        assert!(ys.values().all(|y| y.same_as(&YRatio { num: y.num.shift(2), den: y.den.shift(2) })));
    }

    #[test]
    fn degenerate_twist_rejected() {
        let r = character_solution(&GaussRat::i(), &GaussRat::int(2), (2, 2));
        assert!(matches!(r, Err(Error::DegenerateTwist(_))));
        let r = character_solution(&GaussRat::int(2), &GaussRat::int(2), (2, 2));
        assert!(matches!(r, Err(Error::DegenerateTwist(_))));
    }
}
