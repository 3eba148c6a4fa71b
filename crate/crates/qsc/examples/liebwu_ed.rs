//! Solve the Lieb-Wu equations and match the energy against exact diagonalization.

use qsc::{ed, hubbard};

fn main() -> qsc::Result<()> {
    let (l, u) = (4, 1.0);
    let (n, m) = (3, 1);
    let roots = hubbard::solve_liebwu(l, u, n, m, &[-1, 0, 1], &[0])?;
    let em = hubbard::energy_momentum(l, u, &roots);
    let residual = hubbard::liebwu_residuals(l, u, &roots)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    println!("k = {:?}", roots.k);
    println!("lambda = {:?}", roots.lambda);
    println!("E = {:.12}, P = {:.6}, residual = {residual:.2e}", em.e.re, em.p);

    let spectrum = ed::sector_spectrum(l, u, (n - m, m))?;
    let report = ed::match_spectrum(&[em.e.re], &spectrum, 1e-8);
    println!("nearest ED level {:?}, gap {:.2e}", report.entries[0].nearest, report.entries[0].gap);
    Ok(())
}
