use freiman::group::FinAbGroup;
use freiman::set::{growth_profile, GroupSet};

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::new(&[64, 64])?;
    let a = GroupSet::cube(&g, 2);
    let profile = growth_profile(&a, 2.0, 8)?;
    println!("|A| = {}, window starts at n = {}", profile.base_measure, profile.window_start);
    for row in &profile.rows {
        println!("n = {:2}  |nA| = {:5}  bound {:9.1}  ok {}", row.n, row.measure, row.bound, row.satisfied);
    }
    println!("hypothesis holds: {}", profile.hypothesis_holds());
    Ok(())
}
