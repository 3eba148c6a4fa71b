//! Independent ED oracle: interleaved mode order and Sturm-sequence bisection instead of Jacobi.

use proptest::prelude::*;
use qsc::ed::{self, DenseSymMatrix};

/// Hamiltonian with modes ordered `(site, spin)` interleaved, built from explicit
/// Jordan-Wigner strings over the full Fock space and then restricted to a sector.
fn oracle_hamiltonian(l: usize, u: f64, n_up: usize, n_down: usize) -> Vec<Vec<f64>> {
    let mode = |site: usize, spin: usize| 2 * site + spin;
    let states: Vec<u32> = (0u32..(1 << (2 * l)))
        .filter(|s| (0..l).filter(|&j| s >> mode(j, 0) & 1 == 1).count() == n_up && (0..l).filter(|&j| s >> mode(j, 1) & 1 == 1).count() == n_down)
        .collect();
    let pos = |s: u32| states.iter().position(|&t| t == s).unwrap();
    let n = states.len();
    let mut h = vec![vec![0.0; n]; n];
    // c_p acting on |s⟩: sign from the occupied modes above p in this ordering convention.
    let annihilate = |s: u32, p: usize| -> Option<(u32, f64)> {
        if s >> p & 1 == 0 {
            return None;
        }
        let above = (s >> (p + 1)).count_ones();
        Some((s & !(1 << p), if above.is_multiple_of(2) { 1.0 } else { -1.0 }))
    };
    let create = |s: u32, p: usize| -> Option<(u32, f64)> {
        if s >> p & 1 == 1 {
            return None;
        }
        let above = (s >> (p + 1)).count_ones();
        Some((s | (1 << p), if above.is_multiple_of(2) { 1.0 } else { -1.0 }))
    };
    for (col, &s) in states.iter().enumerate() {
        h[col][col] += (0..l)
            .map(|j| {
                let nu = (s >> mode(j, 0) & 1) as f64;
                let nd = (s >> mode(j, 1) & 1) as f64;
                u * (1.0 - 2.0 * nu) * (1.0 - 2.0 * nd)
            })
            .sum::<f64>();
        if l == 1 {
            continue;
        }
        for spin in 0..2 {
            for j in 0..l {
                let jp = (j + 1) % l;
                for (p, q) in [(mode(j, spin), mode(jp, spin)), (mode(jp, spin), mode(j, spin))] {
                    if let Some((mid, s1)) = annihilate(s, q) {
                        if let Some((out, s2)) = create(mid, p) {
                            h[pos(out)][col] -= s1 * s2;
                        }
                    }
                }
            }
        }
    }
    h
}

/// Householder reduction to tridiagonal form `(diagonal, off-diagonal)`.
fn tridiagonalize(a: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut m = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = ((k + 1)..n).map(|i| m[i][k]).collect();
        let alpha = -x[0].signum() * x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = v.iter().map(|t| t * t).sum::<f64>();
        if vn < 1e-300 {
            continue;
        }
        // m ← P m P with P = 1 − 2 v vᵀ / |v|², acting on indices k+1..n.
        let idx: Vec<usize> = ((k + 1)..n).collect();
        let w: Vec<f64> = (0..n).map(|col| idx.iter().zip(&v).map(|(&i, vi)| m[i][col] * vi).sum::<f64>() * 2.0 / vn).collect();
        for (&i, vi) in idx.iter().zip(&v) {
            for (x, wc) in m[i].iter_mut().zip(&w) {
                *x -= wc * vi;
            }
        }
        for row in m.iter_mut() {
            let dot: f64 = idx.iter().zip(&v).map(|(&j, vj)| row[j] * vj).sum::<f64>() * 2.0 / vn;
            for (&j, vj) in idx.iter().zip(&v) {
                row[j] -= dot * vj;
            }
        }
    }
    ((0..n).map(|i| m[i][i]).collect(), (1..n).map(|i| m[i][i - 1]).collect())
}

/// Number of eigenvalues below `sigma` from the Sturm sequence of the tridiagonal form.
fn count_below(t: &(Vec<f64>, Vec<f64>), sigma: f64) -> usize {
    let (d, e) = t;
    let tiny = f64::EPSILON * (1.0 + d.iter().chain(e).fold(0.0f64, |x, v| x.max(v.abs())));
    let mut q = 1.0;
    let mut negatives = 0;
    for k in 0..d.len() {
        let off = if k == 0 { 0.0 } else { e[k - 1] * e[k - 1] / q };
        q = d[k] - sigma - off;
        if q.abs() < tiny {
            q = -tiny;
        }
        if q < 0.0 {
            negatives += 1;
        }
    }
    negatives
}

fn bisection_spectrum(a: &[Vec<f64>]) -> Vec<f64> {
    let r = a.iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max) + 1.0;
    let t = tridiagonalize(a);
    (0..a.len())
        .map(|k| {
            let (mut lo, mut hi) = (-r, r);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(&t, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

#[test]
fn jacobi_spectra_match_oracle_on_all_sectors() {
    for l in 1..=4 {
        for u in [0.0, 0.7, 2.5] {
            for a in 0..=l {
                for b in 0..=l {
                    let lib = ed::sector_spectrum(l, u, (a, b)).unwrap();
                    let oracle = bisection_spectrum(&oracle_hamiltonian(l, u, a, b));
                    assert_eq!(lib.len(), oracle.len());
                    for (x, y) in lib.iter().zip(&oracle) {
                        assert!((x - y).abs() < 1e-9, "L={l} u={u} ({a},{b}): {x} vs {y}");
                    }
                }
            }
        }
    }
}

#[test]
fn sector_dimensions_are_binomial_products() {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for l in 1..=6 {
        for a in 0..=l {
            for b in 0..=l {
                assert_eq!(ed::FockSector::new(l, a, b).unwrap().dim(), binom(l, a) * binom(l, b));
            }
        }
    }
}

#[test]
fn free_single_particle_band() {
    // At zero coupling one spin-up particle occupies a band level −2cos(2πk/L).
    for l in 3..=6usize {
        let ev = ed::sector_spectrum(l, 0.0, (1, 0)).unwrap();
        let mut band: Vec<f64> = (0..l).map(|k| -2.0 * (2.0 * std::f64::consts::PI * k as f64 / l as f64).cos()).collect();
        band.sort_by(f64::total_cmp);
        for (x, y) in ev.iter().zip(&band) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

fn sym_matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..8).prop_flat_map(|n| prop::collection::vec(-3.0f64..3.0, n * n)).prop_map(|v| {
        let n = (v.len() as f64).sqrt() as usize;
        (0..n).map(|i| (0..n).map(|j| if i <= j { v[i * n + j] } else { v[j * n + i] }).collect()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_agrees_with_sturm_bisection(rows in sym_matrix()) {
        let ev = ed::spectrum(&DenseSymMatrix::from_rows(&rows)).unwrap();
        let oracle = bisection_spectrum(&rows);
        for (x, y) in ev.iter().zip(&oracle) {
            prop_assert!((x - y).abs() < 1e-9, "{} vs {}", x, y);
        }
        let trace: f64 = (0..rows.len()).map(|i| rows[i][i]).sum();
        prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-9);
        let frob: f64 = rows.iter().flatten().map(|v| v * v).sum();
        prop_assert!((ev.iter().map(|v| v * v).sum::<f64>() - frob).abs() < 1e-8 * (1.0 + frob));
    }
}
