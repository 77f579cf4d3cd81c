use freiman::group::FinAbGroup;
use freiman::set::GroupSet;
use freiman::spectrum::SpectralProfile;

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::cyclic(256)?;
    let a = GroupSet::interval(&g, 6)?;
    let profile = SpectralProfile::new(&a)?;
    for delta in [0.1, 0.25, 0.5, 1.0] {
        let spec = profile.lspec(delta)?;
        println!("delta = {delta:4}: threshold {:6.3}, |LSpec| = {}", spec.threshold(), spec.members().len());
    }
    println!("distance(1, 2) = {:.5}", profile.distance(1, 2));
    Ok(())
}
