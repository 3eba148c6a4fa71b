//! Generate a Q-system from a linear seed and audit its QQ-relations and Hodge dual.

use qsc::qsystem::{check_qq, complete_corners, generate_from_seed, hodge, BSeed};

fn main() -> qsc::Result<()> {
    let q = generate_from_seed(&BSeed::linear([1, -2, 3, 5]))?;
    let q = complete_corners(&q)?;
    print!("{q}");

    let report = check_qq(&q);
    for family in &report.families {
        println!("{:<14} {} residuals, pass = {}", family.name, family.residuals.len(), family.pass());
    }
    println!("Hodge dual passes: {}", check_qq(&hodge(&q)).pass);
    Ok(())
}
