use freiman::fourier::{convolve_indicators, moment_lower_bound_audit, parseval_audit, transform_set};
use freiman::group::FinAbGroup;
use freiman::set::GroupSet;

fn main() -> freiman::error::Result<()> {
    let g = FinAbGroup::new(&[12, 30])?;
    let a = GroupSet::from_indices(&g, [0, 1, 5, 17, 40, 41, 200])?;
    let hat = transform_set(&a);
    println!("1_A^(0) = {:.3}", hat.values()[0]);
    let p = parseval_audit(&g, &a.indicator())?;
    println!("Parseval: {:.12} vs {:.12}", p.lhs, p.rhs);
    let conv = convolve_indicators(&a, &a)?;
    println!("representations of 0 in A + A: {}", conv[0]);
    for k in 1..=4 {
        let m = moment_lower_bound_audit(&a, k)?;
        println!("k = {k}: |kA| = {}, bound holds {}", m.sumset_measure, m.holds);
    }
    Ok(())
}
