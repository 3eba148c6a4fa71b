//! Nested Bethe equations with inhomogeneities, and their limit onto Lieb-Wu.

use qsc::analytic::{shell_pair, Coupling};
use qsc::hubbard::{self, HubbardRoots, HubbardSpec};
use qsc::newton::NewtonOptions;
use qsc::Complex64;

fn main() -> qsc::Result<()> {
    let c = Coupling::new(0.8)?;
    let one = Complex64::new(1.0, 0.0);
    let inhom = vec![shell_pair(Complex64::new(0.2, 0.0), c)?, shell_pair(Complex64::new(-0.5, 0.0), c)?];
    let spec = HubbardSpec::with_inhomogeneities(c, inhom, one, one)?;
    let seed = HubbardRoots { x1e: vec![Complex64::new(-24.0, 0.3)], u11: vec![Complex64::new(-5.5, 0.1)], x112: vec![Complex64::new(-0.3, 0.01)] };
    let roots = hubbard::solve_nested(&spec, (1, 1, 1), &seed, NewtonOptions::default())?;
    println!("solved nested roots: {roots:?}");

    let lw = hubbard::solve_liebwu(3, 1.0, 2, 1, &[0, 1], &[0])?;
    for eps in [1e-2, 1e-4, 1e-6] {
        println!("eps = {eps:e}: nested residual at the Lieb-Wu roots {:.3e}", hubbard::nested_limit_gap(3, 1.0, &lw, 1, eps)?);
    }
    Ok(())
}
