//! Grassmann algebra on six generators with twisted-polynomial coefficients.

use std::collections::BTreeMap;

use crate::exact::TwistedPoly;
use crate::Result;

/// Element of the exterior algebra; keys are generator bitmasks.
#[derive(Clone, Debug, Default)]
pub(crate) struct Grassmann {
    pub(crate) comps: BTreeMap<u8, TwistedPoly>,
}

/// Sign of reordering `θ^a θ^b` into ascending generator order.
fn reorder_sign(a: u8, b: u8) -> bool {
    let mut inversions = 0u32;
    for i in 0..8 {
        if a >> i & 1 == 1 {
            inversions += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

impl Grassmann {
    pub(crate) fn scalar(f: TwistedPoly) -> Self {
        Grassmann::monomial(0, f)
    }

    pub(crate) fn monomial(mask: u8, f: TwistedPoly) -> Self {
        let mut comps = BTreeMap::new();
        if !f.is_zero() {
            comps.insert(mask, f);
        }
        Grassmann { comps }
    }

    fn accumulate(&mut self, mask: u8, f: TwistedPoly) {
        let e = self.comps.entry(mask).or_insert_with(TwistedPoly::zero);
        *e = &*e + &f;
        if e.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub(crate) fn add(&self, o: &Grassmann) -> Grassmann {
        let mut out = self.clone();
        for (m, f) in &o.comps {
            out.accumulate(*m, f.clone());
        }
        out
    }

    pub(crate) fn mul(&self, o: &Grassmann) -> Grassmann {
        let mut out = Grassmann::default();
        for (ma, fa) in &self.comps {
            for (mb, fb) in &o.comps {
                if ma & mb != 0 {
                    continue;
                }
                let p = fa * fb;
                out.accumulate(ma | mb, if reorder_sign(*ma, *mb) { -&p } else { p });
            }
        }
        out
    }

    pub(crate) fn shift(&self, n: i64) -> Grassmann {
        Grassmann { comps: self.comps.iter().map(|(m, f)| (*m, f.shift(n))).collect() }
    }

    pub(crate) fn exact_div(&self, g: &TwistedPoly) -> Result<Grassmann> {
        let mut comps = BTreeMap::new();
        for (m, f) in &self.comps {
            comps.insert(*m, f.exact_div(g)?);
        }
        Ok(Grassmann { comps })
    }

    /// Left derivative with respect to generator `k`.
    pub(crate) fn deriv(&self, k: u8) -> Grassmann {
        let mut out = Grassmann::default();
        for (m, f) in &self.comps {
            if m >> k & 1 == 1 {
                let neg = (m & ((1u8 << k) - 1)).count_ones() % 2 == 1;
                out.accumulate(m & !(1 << k), if neg { -f } else { f.clone() });
            }
        }
        out
    }

    pub(crate) fn get(&self, mask: u8) -> TwistedPoly {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_anticommute() {
        let a = Grassmann::monomial(1, TwistedPoly::one());
        let b = Grassmann::monomial(2, TwistedPoly::one());
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert_eq!(ab.get(3), TwistedPoly::one());
        assert_eq!(ba.get(3), TwistedPoly::int(-1));
        assert!(a.mul(&a).comps.is_empty());
    }

    #[test]
    fn derivative_is_left_acting() {
        // d/dθ2 (θ1 θ2) = -θ1
        let x = Grassmann::monomial(0b11, TwistedPoly::one());
        assert_eq!(x.deriv(1).get(1), TwistedPoly::int(-1));
        assert_eq!(x.deriv(0).get(2), TwistedPoly::one());
    }
}
