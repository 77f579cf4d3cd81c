use freiman::bohr::{bohr_set, dimension_estimate, dyadic_grid, nested_bohr_audit, rounding_check};
use freiman::group::FinAbGroup;
use freiman::set::GroupSet;

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::new(&[64, 64])?;
    let freqs = GroupSet::from_elements(&g, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])?;
    for radius in [0.02, 0.05, 0.1] {
        println!("radius {radius}: |Bohr| = {}", bohr_set(&freqs, radius)?.members().len());
    }
    let est = dimension_estimate(|r| bohr_set(&freqs, r).unwrap().into_members(), &dyadic_grid(0.25, 6))?;
    println!("empirical dimension {:.3}", est.empirical_dim);
    let nested = nested_bohr_audit(&freqs, 3, 0.05)?;
    println!("Bohr(3 Lambda, 0.15) == Bohr(Lambda, 0.05): {}", nested.is_equal());
    println!("rounding check consistent: {}", rounding_check(2.01, 4, 0.02)?.consistent());
    Ok(())
}
