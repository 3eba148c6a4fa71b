//! AdS3 asymptotic Bethe ansatz: a two-particle solution, the mu ratio and crossing structure.

use qsc::ads3::{self, AbaSeed, Charges, DressingModel};
use qsc::analytic::Coupling;
use qsc::newton::NewtonOptions;
use qsc::Complex64;

fn main() -> qsc::Result<()> {
    let c = Coupling::new(0.5)?;
    let seed = AbaSeed { u: vec![Complex64::new(0.6, 0.0)], ub: vec![Complex64::new(-0.6, 0.0)], ..Default::default() };
    let d = DressingModel::default();
    let roots = ads3::solve_aba(c, 4, &seed, &d, NewtonOptions::default())?;
    let residual = ads3::aba_residuals(&roots, &d)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    println!("u = {:?}, ub = {:?}", roots.u_left(), roots.u_right());
    println!("residual {residual:.2e}, momentum defect {:.2e}", roots.momentum_defect());

    let us = [Complex64::new(0.2, 1.3), Complex64::new(-1.1, 2.0)];
    let report = ads3::mu_as_ratio_check(&roots, 8, &us, 1e-10)?;
    println!("mu ratio: exact gap {:.2e}, pass = {}", report.max_exact_gap, report.pass);

    let u = Complex64::new(0.3, 0.6);
    let constant = ads3::crossing_structure_check(&roots, u, |_, _| Complex64::new(1.0, 0.0), 1e-8)?;
    let toy = ads3::crossing_structure_check(&roots, u, ads3::toy_log_sigma(&roots), 1e-8)?;
    println!("double-crossing factor {:.6}: constant sigma pass = {}, toy sigma pass = {}", constant.factor, constant.pass, toy.pass);

    let q = Charges { delta: 6.5, s: 0.5, j: 4.0, k: 1.0, m1: 1.0, m3: 0.0, m1b: 0.0, m3b: 1.0 };
    println!("{:?}", ads3::weight_exponents(q));
    Ok(())
}
