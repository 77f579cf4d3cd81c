use freiman::covering::{chang_cover, ruzsa_cover};
use freiman::group::FinAbGroup;
use freiman::set::GroupSet;

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::new(&[32, 32])?;
    let b = GroupSet::cube(&g, 1);
    let ruzsa = ruzsa_cover(&b)?;
    println!("Ruzsa: |T| = {}, valid {}", ruzsa.size(), ruzsa.is_valid());
    let target = GroupSet::from_elements(&g, &[vec![0, 0], vec![5, 0], vec![10, 0]])?;
    let aux = GroupSet::cube(&g, 4);
    let chang = chang_cover(&target, &aux, 2)?;
    println!(
        "Chang: T = {:?}, precondition {:?}, valid {}",
        chang.t,
        chang.precondition_held,
        chang.is_valid()
    );
    Ok(())
}
