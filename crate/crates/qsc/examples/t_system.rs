//! Wronskian T-functions on the L-hook, the Hirota equation, and the character solution.

use qsc::exact::GaussRat;
use qsc::qsystem::{generate_from_seed, BSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use qsc::tysystem::{character_solution, check_hirota, wronskian_t, y11_y22_residual, y_functions};
use qsc::Complex64;

fn main() -> qsc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = generate_from_seed(&BSeed::random(&mut rng, 3))?;
    let t = wronskian_t(&q, (3, 3))?;
    let report = check_hirota(&t);
    println!("Hirota on {} cells: pass = {}", report.residuals.len(), report.pass);
    println!("Y11 Y22 residual is zero: {}", y11_y22_residual(&t, &q)?.is_zero());

    let u = Complex64::new(0.3, 0.1);
    for ((a, s), y) in y_functions(&t)?.iter().take(4) {
        println!("Y_{a},{s}({u}) = {:.6}", y.eval(u));
    }

    let sx = GaussRat::from_ratios(3, 2, 1, 3);
    let sy = GaussRat::from_ratios(-1, 5, 2, 1);
    let (_, chi) = character_solution(&sx, &sy, (3, 3))?;
    println!("character solution: Hirota pass = {}, T_1,1 = {}", check_hirota(&chi).pass, chi.get(1, 1).expect("cell in window"));
    Ok(())
}
