use freiman::bourgain::{birkhoff_metric, factor_two_audit, sandwich_audit, system_from_family, SystemFamily};
use freiman::group::FinAbGroup;

fn main() -> freiman::error::Result<()> {
    for n in [32usize, 256] {
        let g = FinAbGroup::cyclic(n)?;
        let system = system_from_family(&g, &SystemFamily::Interval { scale: n as f64 / 4.0 }, 2.0, None)?;
        let metric = birkhoff_metric(&system);
        println!("Z_{n}: depth {}, axioms clean {}", system.depth(), system.audit().clean());
        println!("  factor two: {}", factor_two_audit(&metric).passes());
        for v in sandwich_audit(&metric)? {
            if !v.passes() {
                println!("  sandwich fails at delta {:.5}, witness {:?}", v.delta, v.left_witness.or(v.right_witness));
            }
        }
    }
    Ok(())
}
