//! Seeded randomized self-checks, grouped into suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bohr::{dimension_estimate, nested_bohr_audit, rounding_check};
use crate::bourgain::{
    birkhoff_metric, factor_two_audit, sandwich_audit, system_from_family, triangle_audit, SystemFamily,
};
use crate::config::Config;
use crate::covering::{chang_cover, ruzsa_cover};
use crate::error::{Error, Result};
use crate::fourier::{
    moment_lower_bound_audit, parseval_audit, transform, transform_set, transform_with, TransformPath,
};
use crate::group::{FinAbGroup, GroupRef};
use crate::pipeline::{lowerbound_audit, run_freiman, FreimanConfig};
use crate::set::{iterated_measures, GroupSet};
use crate::spectrum::{spectral_distance, DistanceMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Fourier,
    Covering,
    Bohr,
    Bourgain,
    Pipeline,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "fourier" => Suite::Fourier,
            "covering" => Suite::Covering,
            "bohr" => Suite::Bohr,
            "bourgain" => Suite::Bourgain,
            "pipeline" => Suite::Pipeline,
            other => return Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run_suite(suite: Suite, seed: u64, config: &Config) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    if wanted(Suite::Fourier) {
        checks.extend(fourier_suite(seed, config)?);
    }
    if wanted(Suite::Covering) {
        checks.extend(covering_suite(seed)?);
    }
    if wanted(Suite::Bohr) {
        checks.extend(bohr_suite(seed)?);
    }
    if wanted(Suite::Bourgain) {
        checks.extend(bourgain_suite()?);
    }
    if wanted(Suite::Pipeline) {
        checks.extend(pipeline_suite(seed, config)?);
    }
    Ok(VerifyReport { seed, checks })
}

/// Random cycles with product at most `max_order`.
pub fn random_group(rng: &mut ChaCha8Rng, max_order: usize) -> GroupRef {
    let rank = rng.gen_range(1..=3);
    let mut cycles = Vec::new();
    let mut room = max_order;
    for i in 0..rank {
        if room < 2 {
            break;
        }
        let hi = if i + 1 == rank { room } else { room.min(64) };
        let n = rng.gen_range(2..=hi.max(2));
        cycles.push(n);
        room /= n;
    }
    FinAbGroup::new(&cycles).expect("cycles are positive and small")
}

pub fn random_set(rng: &mut ChaCha8Rng, g: &GroupRef, max_size: usize) -> GroupSet {
    let size = rng.gen_range(1..=max_size.min(g.order()));
    GroupSet::from_indices(g, (0..size).map(|_| rng.gen_range(0..g.order()))).expect("indices below order")
}

fn check(suite: Suite, name: &str, instances: usize, failures: usize, detail: String) -> Check {
    Check { suite, name: name.into(), instances, failures, detail }
}

fn fourier_suite(seed: u64, config: &Config) -> Result<Vec<Check>> {
    let tol = config.tolerance;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xF0);
    let (mut parseval_fail, mut conv_fail, mut worst_conv) = (0, 0, 0.0f64);
    for _ in 0..50 {
        let g = random_group(&mut rng, 4096);
        let a = random_set(&mut rng, &g, 64);
        if !parseval_audit(&g, &a.indicator())?.passes() {
            parseval_fail += 1;
        }
        // convolution theorem against a direct sparse convolution
        let f: Vec<(usize, f64)> = (0..16).map(|_| (rng.gen_range(0..g.order()), rng.gen_range(-1.0..1.0))).collect();
        let h: Vec<(usize, f64)> = (0..16).map(|_| (rng.gen_range(0..g.order()), rng.gen_range(-1.0..1.0))).collect();
        let dense = |pts: &[(usize, f64)]| {
            let mut v = vec![0.0; g.order()];
            for &(i, x) in pts {
                v[i] += x;
            }
            v
        };
        let mut direct = vec![0.0; g.order()];
        for &(x, fx) in &f {
            for &(y, hy) in &h {
                direct[g.add_idx(x, y)] += fx * hy;
            }
        }
        let lhs = transform(&g, &direct)?;
        let (fh, hh) = (transform(&g, &dense(&f))?, transform(&g, &dense(&h))?);
        let scale = fh.values().iter().zip(hh.values()).map(|(a, b)| a.norm() * b.norm()).fold(1.0, f64::max);
        let err = lhs
            .values()
            .iter()
            .zip(fh.values().iter().zip(hh.values()))
            .map(|(l, (a, b))| (l - a * b).norm())
            .fold(0.0, f64::max)
            / scale;
        worst_conv = worst_conv.max(err);
        if err > tol {
            conv_fail += 1;
        }
    }
    let mut fast_fail = 0;
    for _ in 0..20 {
        let g = random_group(&mut rng, 512);
        let a = random_set(&mut rng, &g, 32);
        let naive = transform_with(&g, &a.indicator(), TransformPath::Naive)?;
        if transform_set(&a).max_abs_diff(&naive) > tol * a.len() as f64 {
            fast_fail += 1;
        }
    }
    let (mut spec_fail, mut worst_spec) = (0, 0.0f64);
    for _ in 0..30 {
        let g = random_group(&mut rng, 1024);
        let a = random_set(&mut rng, &g, 24);
        let hat = transform_set(&a);
        let mass = a.measure();
        let zero = g.trivial_character();
        let mut bad = false;
        for m in 0..g.order() {
            let d = spectral_distance(&g.character_at(m)?, &zero, &a, DistanceMethod::DoubleSum)?;
            let closed = 2.0 * (1.0 - hat.values()[m].norm_sqr() / (mass * mass));
            let err = (d * d - closed).abs();
            worst_spec = worst_spec.max(err);
            bad |= err > tol;
        }
        spec_fail += bad as usize;
    }
    let mut moment_fail = 0;
    for _ in 0..100 {
        let g = random_group(&mut rng, 1024);
        let a = random_set(&mut rng, &g, 32);
        let k = rng.gen_range(1..=12);
        if !moment_lower_bound_audit(&a, k)?.holds {
            moment_fail += 1;
        }
    }
    let s = Suite::Fourier;
    Ok(vec![
        check(s, "parseval", 50, parseval_fail, "relative gap within tolerance".into()),
        check(s, "convolution_theorem", 50, conv_fail, format!("worst relative error {worst_conv:.3e}")),
        check(s, "fast_matches_naive", 20, fast_fail, "factor-wise FFT against quadratic DFT".into()),
        check(s, "spectral_identity", 30, spec_fail, format!("worst squared-distance error {worst_spec:.3e}")),
        check(s, "moment_lower_bound", 100, moment_fail, "k <= 12".into()),
    ])
}

fn covering_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0);
    let (mut chang_done, mut chang_fail, mut attempts) = (0, 0, 0);
    while chang_done < 50 && attempts < 5000 {
        attempts += 1;
        let g = random_group(&mut rng, 512);
        let b_prime = GroupSet::cube(&g, rng.gen_range(0..4)).union(&random_set(&mut rng, &g, 4))?;
        let b = random_set(&mut rng, &g, 8);
        let k = rng.gen_range(1..=6);
        let cert = chang_cover(&b, &b_prime, k)?;
        if cert.precondition_held != Some(true) {
            continue;
        }
        chang_done += 1;
        if !cert.is_valid() {
            chang_fail += 1;
        }
    }
    let mut ruzsa_fail = 0;
    for _ in 0..50 {
        let g = random_group(&mut rng, 512);
        let b = random_set(&mut rng, &g, 6);
        if !ruzsa_cover(&b)?.containment_verified {
            ruzsa_fail += 1;
        }
    }
    let s = Suite::Covering;
    Ok(vec![
        check(s, "chang", chang_done, chang_fail, format!("{chang_done} precondition-satisfying of {attempts} drawn")),
        check(s, "ruzsa", 50, ruzsa_fail, "2B-2B ⊆ T+B-B".into()),
    ])
}

fn bohr_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xB0);
    let (mut nested, mut nested_fail) = (0, 0);
    for _ in 0..20 {
        let g = random_group(&mut rng, 512);
        let mut lambda = random_set(&mut rng, &g, 3);
        lambda.insert(0);
        for k in 1..=4usize {
            for j in 3..=7 {
                let delta = 0.5f64.powi(j);
                if k as f64 * delta >= 1.0 / 3.0 {
                    continue;
                }
                nested += 1;
                if !nested_bohr_audit(&lambda, k, delta)?.is_equal() {
                    nested_fail += 1;
                }
            }
        }
    }
    let mut rounding_fail = 0;
    for _ in 0..10_000 {
        let k = rng.gen_range(1..=16usize);
        let delta = rng.gen_range(0.0..1.0 / (3.0 * k as f64));
        let t = rng.gen_range(-4.0..4.0);
        if !rounding_check(t, k, delta)?.consistent() {
            rounding_fail += 1;
        }
    }
    let g = FinAbGroup::new(&[17, 17])?;
    let dim = dimension_estimate(|r| GroupSet::cube(&g, r as usize), &[1.0, 2.0, 3.0])?.empirical_dim;
    let s = Suite::Bohr;
    Ok(vec![
        check(s, "nested_bohr", nested, nested_fail, "Bohr(k Lambda, k delta) = Bohr(Lambda, delta)".into()),
        check(s, "rounding", 10_000, rounding_fail, "premise and k delta < 1/3 imply conclusion".into()),
        check(s, "dimension_z17_squared", 1, !(1.3..=2.0).contains(&dim) as usize, format!("empirical_dim {dim:.6}")),
    ])
}

/// Interval systems `S_delta = {|x| <= floor(n delta / 4)}` and subgroup systems, `|G| <= 256`.
pub fn reference_systems() -> Result<Vec<(String, GroupRef, SystemFamily, f64)>> {
    let mut out = Vec::new();
    for n in [16usize, 32, 64, 128, 256] {
        out.push((format!("interval Z_{n}"), FinAbGroup::cyclic(n)?, SystemFamily::Interval { scale: n as f64 / 4.0 }, 2.0));
    }
    for (cycles, gens) in [(vec![24], vec![6]), (vec![8, 8], vec![9]), (vec![2, 4, 8], vec![1, 10]), (vec![256], vec![16])] {
        let g = FinAbGroup::new(&cycles)?;
        out.push((format!("subgroup {cycles:?} <{gens:?}>"), g, SystemFamily::Subgroup { generators: gens }, 0.0));
    }
    Ok(out)
}

fn bourgain_suite() -> Result<Vec<Check>> {
    let (mut f2_fail, mut sw_fail, mut tri_fail, mut clean) = (0, 0, 0, 0);
    let mut notes = Vec::new();
    let systems = reference_systems()?;
    for (name, g, family, d) in &systems {
        let system = system_from_family(g, family, *d, None)?;
        if !system.audit().clean() {
            notes.push(format!("{name}: axioms fail"));
            continue;
        }
        clean += 1;
        let metric = birkhoff_metric(&system);
        if !factor_two_audit(&metric).passes() {
            f2_fail += 1;
        }
        for v in sandwich_audit(&metric)? {
            if !v.passes() {
                sw_fail += 1;
                notes.push(format!("{name}: delta {:.5} left {} right {}", v.delta, v.left, v.right));
            }
        }
        if triangle_audit(&metric).is_some() {
            tri_fail += 1;
        }
    }
    let s = Suite::Bourgain;
    Ok(vec![
        check(s, "factor_two", clean, f2_fail, "rho_star/2 <= rho <= rho_star".into()),
        check(s, "sandwich", clean, sw_fail, notes.join("; ")),
        check(s, "triangle", clean, tri_fail, "exhaustive pairs".into()),
    ])
}

fn pipeline_suite(seed: u64, config: &Config) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70);
    let mut lb_fail = 0;
    for _ in 0..200 {
        let g = random_group(&mut rng, 1024);
        let a = random_set(&mut rng, &g, 8);
        let l = rng.gen_range(2..=4);
        let m = iterated_measures(&a, l)?;
        let k = m[l - 1] as f64 / m[l - 2] as f64;
        let eps = rng.gen_range(0.01..=1.0);
        if !lowerbound_audit(&a, l, eps, k)?.holds {
            lb_fail += 1;
        }
    }
    let g = FinAbGroup::cyclic(256)?;
    let a = GroupSet::interval(&g, 2)?;
    let cfg = FreimanConfig {
        c: config.c,
        n_scan: config.n_scan,
        max_retries: config.max_retries,
        dim_depth: config.dim_depth,
        ..FreimanConfig::empirical(1.0, 0.5)
    };
    let first = run_freiman(&a, &cfg)?;
    let second = run_freiman(&a, &cfg)?;
    let dim = first.empirical_dim.as_ref().map_or(f64::INFINITY, |e| e.empirical_dim);
    let ok = first.containment == Some(true)
        && dim <= 4.0
        && first.measure_ratio.is_some_and(f64::is_finite)
        && first.to_json()? == second.to_json()?;
    let s = Suite::Pipeline;
    Ok(vec![
        check(s, "difference_set_in_bohr", 200, lb_fail, "A-A ⊆ Bohr(LSpec(lA,eps), 2 eps sqrt(2K))".into()),
        check(
            s,
            "end_to_end_z256",
            1,
            !ok as usize,
            format!(
                "containment {:?}, empirical_dim {dim:.4}, ratio {:?}, epsilon {:?}",
                first.containment, first.measure_ratio, first.epsilon
            ),
        ),
    ])
}
