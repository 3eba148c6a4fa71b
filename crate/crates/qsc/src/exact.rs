//! Exact twisted polynomials over the Gaussian rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators and denominators before converting.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        GaussRat::new(rat(n, 1), BigRational::zero())
    }

    /// `(re_n / re_d) + i (im_n / im_d)`.
    pub fn from_ratios(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussRat::new(rat(re_n, re_d), rat(im_n, im_d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut out = GaussRat::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Lexicographic order on `(re, im)` used to sort twisted terms.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// `["re", "im"]` with each part written as `num/den` (or an integer).
    fn to_strings(&self) -> [String; 2] {
        [self.re.to_string(), self.im.to_string()]
    }

    fn from_strings(s: &[String]) -> Result<Self, String> {
        let [re, im] = s else {
            return Err(format!("expected [re, im] rational strings, got {} entries", s.len()));
        };
        let p = |x: &String| {
            let (n, d) = x.split_once('/').unwrap_or((x.as_str(), "1"));
            let n = n.trim().parse::<BigInt>().map_err(|e| format!("bad rational {x:?}: {e}"))?;
            let d = d.trim().parse::<BigInt>().map_err(|e| format!("bad rational {x:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {x:?}"));
            }
            Ok(BigRational::new(n, d))
        };
        Ok(GaussRat::new(p(re)?, p(im)?))
    }

    /// Parses `"re,im"`, each part an integer or `num/den`.
    pub fn parse_pair(s: &str) -> Result<Self, String> {
        let parts: Vec<String> = s.split(',').map(str::to_string).collect();
        GaussRat::from_strings(&parts)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        GaussRat::from_strings(&v).map_err(D::Error::custom)
    }
}

/// Dense polynomial in `u`, coefficients in ascending order, no trailing zeros.
pub type Poly = Vec<GaussRat>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(GaussRat::is_zero) {
        p.pop();
    }
}

fn poly_add(a: &[GaussRat], b: &[GaussRat]) -> Poly {
    let n = a.len().max(b.len());
    let z = GaussRat::zero();
    let mut out: Poly = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z))
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[GaussRat], b: &[GaussRat]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_scale(a: &[GaussRat], c: &GaussRat) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    poly_trim(&mut out);
    out
}

/// `p(u + c)` by Horner recomposition.
fn poly_taylor_shift(p: &[GaussRat], c: &GaussRat) -> Poly {
    let mut out: Poly = Vec::new();
    for coef in p.iter().rev() {
        // out = out * (u + c) + coef
        let mut next = vec![GaussRat::zero(); out.len() + 1];
        for (k, x) in out.iter().enumerate() {
            next[k + 1] = &next[k + 1] + x;
            next[k] = &next[k] + &(x * c);
        }
        next[0] = &next[0] + coef;
        out = next;
    }
    poly_trim(&mut out);
    out
}

/// Exact polynomial division; `None` if the remainder is nonzero.
fn poly_div_exact(f: &[GaussRat], g: &[GaussRat]) -> Option<Poly> {
    let lead_inv = g.last()?.inv()?;
    if f.is_empty() {
        return Some(Vec::new());
    }
    if f.len() < g.len() {
        return None;
    }
    let mut rem: Poly = f.to_vec();
    let mut q = vec![GaussRat::zero(); f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &rem[k + g.len() - 1] * &lead_inv;
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * gj);
            }
        }
        q[k] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    poly_trim(&mut q);
    Some(q)
}

/// A finite sum of terms `s^{-2iu} p(u)`; a shift `u -> u + i/2` multiplies a term by `s`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TwistedPoly {
    terms: Vec<(GaussRat, Poly)>,
}

impl TwistedPoly {
    pub fn zero() -> Self {
        TwistedPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        TwistedPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        TwistedPoly::from_terms(vec![(GaussRat::one(), vec![c])])
    }

    pub fn int(n: i64) -> Self {
        TwistedPoly::constant(GaussRat::int(n))
    }

    /// The monomial `u`.
    pub fn u() -> Self {
        TwistedPoly::poly(vec![GaussRat::zero(), GaussRat::one()])
    }

    /// Untwisted polynomial with ascending coefficients.
    pub fn poly(coeffs: Vec<GaussRat>) -> Self {
        TwistedPoly::from_terms(vec![(GaussRat::one(), coeffs)])
    }

    /// The pure twist `s^{-2iu}`.
    pub fn twist(s: GaussRat) -> Self {
        TwistedPoly::from_terms(vec![(s, vec![GaussRat::one()])])
    }

    /// Builds the canonical form: merges equal twists, drops zero terms, sorts.
    ///
    /// Panics if a term with nonzero polynomial has a zero half-twist.
    pub fn from_terms(terms: Vec<(GaussRat, Poly)>) -> Self {
        let mut acc: Vec<(GaussRat, Poly)> = Vec::new();
        for (s, mut p) in terms {
            poly_trim(&mut p);
            if p.is_empty() {
                continue;
            }
            assert!(!s.is_zero(), "half-twist must be nonzero");
            match acc.iter_mut().find(|(t, _)| *t == s) {
                Some((_, q)) => *q = poly_add(q, &p),
                None => acc.push((s, p)),
            }
        }
        acc.retain(|(_, p)| !p.is_empty());
        acc.sort_by(|a, b| a.0.lex_cmp(&b.0));
        TwistedPoly { terms: acc }
    }

    pub fn terms(&self) -> &[(GaussRat, Poly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for an untwisted polynomial (including zero).
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(s, _)| *s == GaussRat::one())
    }

    /// Maximal polynomial degree over all terms; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(_, p)| p.len() - 1).max()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        TwistedPoly::from_terms(self.terms.iter().map(|(s, p)| (s.clone(), poly_scale(p, c))).collect())
    }

    /// `f^{[n]}(u) = f(u + i n / 2)`.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let c = GaussRat::new(BigRational::zero(), rat(n, 2));
        let terms = self
            .terms
            .iter()
            .map(|(s, p)| {
                let factor = s.pow(n).expect("half-twist is nonzero");
                (s.clone(), poly_scale(&poly_taylor_shift(p, &c), &factor))
            })
            .collect();
        TwistedPoly::from_terms(terms)
    }

    /// `f^{[1]} g^{[-1]} - f^{[-1]} g^{[1]}`.
    pub fn wronskian(&self, g: &Self) -> Self {
        &(&self.shift(1) * &g.shift(-1)) - &(&self.shift(-1) * &g.shift(1))
    }

    /// Exact quotient `q` with `q * g = f`.
    ///
    /// Multi-term divisors need a unique term of largest and of smallest `|s|`.
    pub fn exact_div(&self, g: &Self) -> Result<Self, Error> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(TwistedPoly::zero());
        }
        if g.terms.len() == 1 {
            let (sg, pg) = &g.terms[0];
            let sg_inv = sg.inv().expect("nonzero half-twist");
            let mut terms = Vec::with_capacity(self.terms.len());
            for (s, p) in &self.terms {
                let q = poly_div_exact(p, pg).ok_or(Error::NotDivisible)?;
                terms.push((s * &sg_inv, q));
            }
            return Ok(TwistedPoly::from_terms(terms));
        }
        self.exact_div_multi(g)
    }

    fn exact_div_multi(&self, g: &Self) -> Result<Self, Error> {
        let mags: Vec<BigRational> = g.terms.iter().map(|(s, _)| s.norm_sqr()).collect();
        let max = mags.iter().max().expect("nonempty").clone();
        let min = mags.iter().min().expect("nonempty").clone();
        if mags.iter().filter(|m| **m == max).count() != 1 || mags.iter().filter(|m| **m == min).count() != 1 {
            return Err(Error::UnsupportedDivisor);
        }
        let top = &g.terms[mags.iter().position(|m| *m == max).expect("present")];
        let top_inv = top.0.inv().expect("nonzero");
        // Every quotient term satisfies |s_q|^2 >= min_f / min_g.
        let f_min = self.terms.iter().map(|(s, _)| s.norm_sqr()).min().expect("nonzero f");
        let floor = &f_min / &min;

        let mut rem = self.clone();
        let mut quotient = TwistedPoly::zero();
        while !rem.is_zero() {
            let rmax = rem.terms.iter().map(|(s, _)| s.norm_sqr()).max().expect("nonzero");
            let mut step_terms = Vec::new();
            for (s, p) in rem.terms.iter().filter(|(s, _)| s.norm_sqr() == rmax) {
                let q = poly_div_exact(p, &top.1).ok_or(Error::NotDivisible)?;
                let sq = s * &top_inv;
                if sq.norm_sqr() < floor {
                    return Err(Error::NotDivisible);
                }
                step_terms.push((sq, q));
            }
            let step = TwistedPoly::from_terms(step_terms);
            rem = &rem - &(&step * g);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }

    /// Numeric value with `s^{-2iu} = exp(-2iu Log s)`, principal logarithm.
    ///
    /// Because of the principal branch, `eval` of a product equals the product of
    /// values only when no twist product wraps around the negative real axis.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, p) in &self.terms {
            let mut pv = Complex64::new(0.0, 0.0);
            for c in p.iter().rev() {
                pv = pv * u + c.to_c64();
            }
            let tw = if *s == GaussRat::one() {
                Complex64::new(1.0, 0.0)
            } else {
                (Complex64::new(0.0, -2.0) * u * s.to_c64().ln()).exp()
            };
            acc += tw * pv;
        }
        acc
    }

    /// Exact value of an untwisted polynomial at a Gaussian-rational point.
    pub fn eval_exact(&self, u: &GaussRat) -> Result<GaussRat, Error> {
        if !self.is_polynomial() {
            return Err(Error::Twisted);
        }
        let mut acc = GaussRat::zero();
        if let Some((_, p)) = self.terms.first() {
            for c in p.iter().rev() {
                acc = &(&acc * u) + c;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, p) in &self.terms {
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{c}")?;
                match k {
                    0 => {}
                    1 => write!(f, "*u")?,
                    _ => write!(f, "*u^{k}")?,
                }
                if *s != GaussRat::one() {
                    write!(f, "*[{s}]^(-2iu)")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &TwistedPoly {
    type Output = TwistedPoly;
    fn add(self, o: &TwistedPoly) -> TwistedPoly {
        TwistedPoly::from_terms(self.terms.iter().chain(o.terms.iter()).cloned().collect())
    }
}

impl Sub for &TwistedPoly {
    type Output = TwistedPoly;
    fn sub(self, o: &TwistedPoly) -> TwistedPoly {
        self + &(-o)
    }
}

impl Neg for &TwistedPoly {
    type Output = TwistedPoly;
    fn neg(self) -> TwistedPoly {
        TwistedPoly {
            terms: self.terms.iter().map(|(s, p)| (s.clone(), p.iter().map(|c| -c).collect())).collect(),
        }
    }
}

impl Mul for &TwistedPoly {
    type Output = TwistedPoly;
    fn mul(self, o: &TwistedPoly) -> TwistedPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (s1, p1) in &self.terms {
            for (s2, p2) in &o.terms {
                terms.push((s1 * s2, poly_mul(p1, p2)));
            }
        }
        TwistedPoly::from_terms(terms)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(TwistedPoly, Add add, Sub sub, Mul mul);
forward_owned!(GaussRat, Add add, Sub sub, Mul mul);

#[derive(Serialize, Deserialize)]
struct TermJson {
    s: GaussRat,
    coeffs: Vec<GaussRat>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for TwistedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(t, p)| TermJson { s: t.clone(), coeffs: p.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        if j.terms.iter().any(|t| t.s.is_zero()) {
            return Err(D::Error::custom("half-twist must be nonzero"));
        }
        Ok(TwistedPoly::from_terms(j.terms.into_iter().map(|t| (t.s, t.coeffs)).collect()))
    }
}
