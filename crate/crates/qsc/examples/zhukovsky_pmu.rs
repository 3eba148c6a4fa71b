//! Source functions on the Zhukovsky cover, truncated f-products, and case-B Pμ residuals.

use qsc::analytic::{self, Coupling, Sheet, ZhukPoint};
use qsc::suite;
use qsc::Complex64;

fn main() -> qsc::Result<()> {
    let c = Coupling::new(0.8)?;
    let f = suite::test_source(c)?;
    let p = ZhukPoint::new(Complex64::new(0.4, 0.7), Sheet::Outer);
    let fv = f.eval(&p)?;
    println!("F(x) F(1/x) = {:.12}", fv * f.eval(&p.swapped())?);

    for n in [4, 16] {
        let (mu, omega) = analytic::mu_omega(&f, n, &p)?;
        let (mu_t, omega_t) = analytic::mu_omega(&f, n, &p.swapped())?;
        println!("N = {n}: mu ratio - F^2 = {:.2e}, omega ratio - F^2 = {:.2e}", (mu / mu_t - fv * fv).norm(), (omega / omega_t - fv * fv).norm());
    }

    let (spec, roots) = suite::solved_nested_configuration()?;
    let worst = suite::pmu_max_residual(&spec, &roots, 12, 20, &mut suite::seeded_rng(7, 7))?;
    println!("case-B Pmu residual at N = 12: {worst:.2e}");
    Ok(())
}
