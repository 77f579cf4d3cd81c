use freiman::group::FinAbGroup;
use freiman::pipeline::{run_freiman, FreimanConfig};
use freiman::set::GroupSet;

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::cyclic(256)?;
    let a = GroupSet::interval(&g, 2)?;
    let report = run_freiman(&a, &FreimanConfig::empirical(1.0, 0.5))?;
    println!("{}", report.to_json()?);
    println!("A - A inside the Bohr set: {}", report.passes());
    Ok(())
}
