//! Exact diagonalization of the periodic Hubbard chain in fixed `(N↑, N↓)` sectors.

use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};

/// Default cap on the sector dimension.
pub const SECTOR_CAP: usize = 20_000;

/// Occupation basis of one sector, ordered lexicographically by `(up_mask, down_mask)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSector {
    pub l: usize,
    pub n_up: usize,
    pub n_down: usize,
    pub basis: Vec<(u32, u32)>,
}

fn masks_with(l: usize, n: usize) -> Vec<u32> {
    (0u32..(1 << l)).filter(|m| m.count_ones() as usize == n).collect()
}

impl FockSector {
    pub fn new(l: usize, n_up: usize, n_down: usize) -> Result<Self> {
        if !(1..=8).contains(&l) || n_up > l || n_down > l {
            return Err(Error::InvalidInput(format!("sector ({n_up},{n_down}) on L = {l} is out of range")));
        }
        let ups = masks_with(l, n_up);
        let downs = masks_with(l, n_down);
        let basis = ups.iter().flat_map(|&u| downs.iter().map(move |&d| (u, d))).collect();
        Ok(FockSector { l, n_up, n_down, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Dense real symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseSymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        DenseSymMatrix { n, data: rows.iter().flatten().copied().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn scale(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Applies `c†_p c_q` to a mode occupation; returns the new occupation and its sign.
fn hop(occ: u64, p: usize, q: usize) -> Option<(u64, f64)> {
    if occ >> q & 1 == 0 {
        return None;
    }
    let below = |m: u64, k: usize| (m & ((1u64 << k) - 1)).count_ones();
    let mut parity = below(occ, q);
    let mid = occ & !(1 << q);
    if mid >> p & 1 == 1 {
        return None;
    }
    parity += below(mid, p);
    Some((mid | (1 << p), if parity % 2 == 0 { 1.0 } else { -1.0 }))
}

/// Sector Hamiltonian `−Σ_{j,σ}(c†_{j,σ}c_{j+1,σ} + h.c.) + 𝐮 Σ_j (1 − 2n_{j↑})(1 − 2n_{j↓})`.
///
/// The bond sum runs literally over `j = 1..L` with periodic closure, so `L = 2` carries
/// both bonds between its two sites. For `L = 1` the self-bond is dropped.
pub fn build_hamiltonian(l: usize, u: f64, sector: (usize, usize)) -> Result<DenseSymMatrix> {
    build_hamiltonian_capped(l, u, sector, SECTOR_CAP)
}

pub fn build_hamiltonian_capped(l: usize, u: f64, sector: (usize, usize), cap: usize) -> Result<DenseSymMatrix> {
    let fs = FockSector::new(l, sector.0, sector.1)?;
    if fs.dim() > cap {
        return Err(Error::SectorTooLarge(fs.dim()));
    }
    let index: std::collections::HashMap<(u32, u32), usize> = fs.basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut h = DenseSymMatrix::zeros(fs.dim());
    let lmask = (1u64 << l) - 1;
    for (col, &(up, dn)) in fs.basis.iter().enumerate() {
        let diag: f64 = (0..l)
            .map(|j| {
                let nu = (up >> j & 1) as f64;
                let nd = (dn >> j & 1) as f64;
                u * (1.0 - 2.0 * nu) * (1.0 - 2.0 * nd)
            })
            .sum();
        h.set(col, col, diag);
        if l == 1 {
            continue;
        }
        let occ = up as u64 | ((dn as u64) << l);
        for spin in 0..2 {
            let off = spin * l;
            for j in 0..l {
                let jp = (j + 1) % l;
                for (p, q) in [(j, jp), (jp, j)] {
                    if let Some((o, s)) = hop(occ, p + off, q + off) {
                        let row = index[&((o & lmask) as u32, (o >> l) as u32)];
                        let v = h.get(row, col) - s;
                        h.set(row, col, v);
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Ascending eigenvalues by cyclic Jacobi rotations.
pub fn spectrum(h: &DenseSymMatrix) -> Result<Vec<f64>> {
    let n = h.n;
    let mut a = h.data.clone();
    let scale = h.scale().max(f64::MIN_POSITIVE);
    let thresh = 1e-12 * scale;
    let max_sweeps = 100;
    for sweep in 0..=max_sweeps {
        let off = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).fold(0.0f64, |m, (i, j)| m.max(a[i * n + j].abs()));
        if off <= thresh {
            let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
        if sweep == max_sweeps {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(Error::NoConvergence { steps: max_sweeps, residual: f64::NAN })
}

/// Spectrum of one sector.
pub fn sector_spectrum(l: usize, u: f64, sector: (usize, usize)) -> Result<Vec<f64>> {
    spectrum(&build_hamiltonian(l, u, sector)?)
}

/// Ascending spectrum tagged with its `(N↑, N↓)` sector.
pub type SectorSpectrum = ((usize, usize), Vec<f64>);

/// Spectra of every `(N↑, N↓)` sector, computed in parallel.
pub fn all_sector_spectra(l: usize, u: f64) -> Result<Vec<SectorSpectrum>> {
    let sectors: Vec<(usize, usize)> = (0..=l).flat_map(|a| (0..=l).map(move |b| (a, b))).collect();
    sectors.into_par_iter().map(|s| Ok((s, sector_spectrum(l, u, s)?))).collect()
}

/// Nearest-eigenvalue match of one Bethe energy.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MatchEntry {
    pub energy: f64,
    pub nearest: Option<f64>,
    pub gap: f64,
}

/// One-directional matching of Bethe energies into an ED spectrum.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MatchReport {
    pub entries: Vec<MatchEntry>,
    pub pass: bool,
}

pub fn match_spectrum(bethe: &[f64], ed: &[f64], tol: f64) -> MatchReport {
    let entries: Vec<MatchEntry> = bethe
        .iter()
        .map(|&e| {
            let nearest = ed.iter().copied().min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()));
            MatchEntry { energy: e, nearest, gap: nearest.map_or(f64::INFINITY, |n| (n - e).abs()) }
        })
        .collect();
    let pass = entries.iter().all(|m| m.gap < tol);
    MatchReport { entries, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_sectors() {
        assert_eq!(build_hamiltonian(1, 0.7, (0, 0)).unwrap().data, vec![0.7]);
        assert_eq!(build_hamiltonian(1, 0.7, (1, 1)).unwrap().data, vec![0.7]);
        assert_eq!(build_hamiltonian(1, 0.7, (1, 0)).unwrap().data, vec![-0.7]);
    }

    #[test]
    fn two_site_double_bond() {
        let h = build_hamiltonian(2, 1.0, (1, 0)).unwrap();
        assert_eq!(h.data, vec![0.0, -2.0, -2.0, 0.0]);
        let ev = spectrum(&h).unwrap();
        assert!((ev[0] + 2.0).abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_small_cases() {
        let d = DenseSymMatrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]);
        assert_eq!(spectrum(&d).unwrap(), vec![1.0, 2.0, 3.0]);
        let m = DenseSymMatrix::from_rows(&[vec![0.0, -2.0], vec![-2.0, 0.0]]);
        let ev = spectrum(&m).unwrap();
        assert!((ev[0] + 2.0).abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_symmetric() {
        let h = build_hamiltonian(4, 1.3, (2, 1)).unwrap();
        for i in 0..h.n {
            for j in 0..h.n {
                assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
    }

    #[test]
    fn sector_cap() {
        assert_eq!(build_hamiltonian_capped(4, 1.0, (2, 2), 10), Err(Error::SectorTooLarge(36)));
    }

    #[test]
    fn matching_examples() {
        assert!(match_spectrum(&[-2.0, 2.0], &[-2.0, 2.0], 1e-12).pass);
        assert!(match_spectrum(&[-2.0], &[-2.0, 2.0], 1e-12).pass);
        let r = match_spectrum(&[0.0], &[-2.0, 2.0], 1e-8);
        assert!(!r.pass && (r.entries[0].gap - 2.0).abs() < 1e-15);
    }
}
