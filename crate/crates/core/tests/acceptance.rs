//! Acceptance criteria, each checked against oracles written here from the
//! definitions. One PASS/FAIL line per criterion; exits non-zero on any FAIL.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use freiman::bohr::{dimension_estimate, nested_bohr_audit, rounding_check};
use freiman::bourgain::{birkhoff_metric, factor_two_audit, sandwich_audit, system_from_family, SystemFamily};
use freiman::covering::{chang_cover, ruzsa_cover};
use freiman::fourier::{convolve_indicators, moment_lower_bound_audit, transform_set};
use freiman::group::{FinAbGroup, GroupRef};
use freiman::pipeline::lowerbound_audit;
use freiman::set::GroupSet;
use freiman::spectrum::{spectral_distance, DistanceMethod};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

// ---- oracles ------------------------------------------------------------

/// Phase numerator of character `m` at `x`, out of `lcm(n_j)`.
fn phase(g: &GroupRef, m: usize, x: usize) -> usize {
    let l = g.exponent();
    let (mc, xc) = (g.decode(m), g.decode(x));
    g.cycles().iter().zip(mc.iter().zip(&xc)).map(|(&n, (&a, &b))| (a * b % n) * (l / n)).sum::<usize>() % l
}

/// `||gamma_m(x)||`, distance of the phase to the nearest integer.
fn circle(g: &GroupRef, m: usize, x: usize) -> f64 {
    let t = phase(g, m, x) as f64 / g.exponent() as f64;
    t.min(1.0 - t)
}

/// `sum_{x in supp} f(x) conj(gamma_m(x))` for every `m`, from a cosine table.
fn sparse_dft(g: &GroupRef, f: &[(usize, f64)]) -> Vec<Complex64> {
    let l = g.exponent();
    let table: Vec<Complex64> =
        (0..l).map(|p| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * p as f64 / l as f64)).collect();
    (0..g.order()).map(|m| f.iter().map(|&(x, v)| table[phase(g, m, x)] * v).sum()).collect()
}

fn sumset(g: &GroupRef, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| g.add_idx(x, y))).collect()
}

fn difference(g: &GroupRef, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| g.sub_idx(x, y))).collect()
}

fn iterate(g: &GroupRef, a: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
    (1..k).fold(a.clone(), |acc, _| sumset(g, &acc, a))
}

fn bohr(g: &GroupRef, freqs: &BTreeSet<usize>, radius: f64) -> BTreeSet<usize> {
    (0..g.order()).filter(|&x| freqs.iter().all(|&m| circle(g, m, x) <= radius + 1e-9)).collect()
}

/// `{sum eps_i t_i : eps in {-1,0,1}^T}`
fn prog1(g: &GroupRef, t: &[usize]) -> BTreeSet<usize> {
    t.iter().fold(BTreeSet::from([0]), |acc, &x| {
        acc.iter().flat_map(|&s| [s, g.add_idx(s, x), g.sub_idx(s, x)]).collect()
    })
}

fn to_set(s: &GroupSet) -> BTreeSet<usize> {
    s.iter().collect()
}

fn random_group(rng: &mut ChaCha8Rng, max_order: usize) -> GroupRef {
    loop {
        let rank = rng.gen_range(1..=3);
        let cycles: Vec<usize> = (0..rank).map(|_| rng.gen_range(2..=max_order.min(64))).collect();
        let cycles = if rank == 1 { vec![rng.gen_range(2..=max_order)] } else { cycles };
        if cycles.iter().product::<usize>() <= max_order {
            return FinAbGroup::new(&cycles).unwrap();
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, g: &GroupRef, max_size: usize) -> BTreeSet<usize> {
    let size = rng.gen_range(1..=max_size.min(g.order()));
    (0..size).map(|_| rng.gen_range(0..g.order())).collect()
}

fn lib_set(g: &GroupRef, s: &BTreeSet<usize>) -> GroupSet {
    GroupSet::from_indices(g, s.iter().copied()).unwrap()
}

// ---- criteria -----------------------------------------------------------

fn fourier_identities() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut worst_parseval, mut worst_conv, mut worst_dft) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let g = random_group(&mut rng, 4096);
        let a = random_subset(&mut rng, &g, 256);
        let b = random_subset(&mut rng, &g, 64);
        let hat = transform_set(&lib_set(&g, &a));
        let oracle = sparse_dft(&g, &a.iter().map(|&x| (x, 1.0)).collect::<Vec<_>>());
        let dft_err = hat.values().iter().zip(&oracle).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        worst_dft = worst_dft.max(dft_err / a.len() as f64);
        let lhs = hat.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / g.order() as f64;
        worst_parseval = worst_parseval.max((lhs - a.len() as f64).abs() / a.len() as f64);
        let mut direct = vec![0u64; g.order()];
        for &x in &a {
            for &y in &b {
                direct[g.add_idx(x, y)] += 1;
            }
        }
        let via_fft = convolve_indicators(&lib_set(&g, &a), &lib_set(&g, &b)).unwrap();
        let peak = *direct.iter().max().unwrap() as f64;
        let err = via_fft.iter().zip(&direct).map(|(&u, &v)| (u as f64 - v as f64).abs()).fold(0.0, f64::max);
        worst_conv = worst_conv.max(err / peak);
    }
    let elapsed = start.elapsed();
    let pass = worst_parseval <= 1e-9 && worst_conv <= 1e-9 && worst_dft <= 1e-9 && elapsed <= Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "50 instances |G|<=4096; Parseval rel {worst_parseval:.2e}, convolution rel {worst_conv:.2e}, DFT vs oracle rel {worst_dft:.2e}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn spectral_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let (mut worst, mut checked) = (0.0f64, 0usize);
    for _ in 0..30 {
        let g = random_group(&mut rng, 1024);
        let a = random_subset(&mut rng, &g, 16);
        let set = lib_set(&g, &a);
        let oracle = sparse_dft(&g, &a.iter().map(|&x| (x, 1.0)).collect::<Vec<_>>());
        let mass = a.len() as f64;
        let zero = g.trivial_character();
        for m in 0..g.order() {
            let rhs = 2.0 * (1.0 - oracle[m].norm_sqr() / (mass * mass));
            let gamma = g.character_at(m).unwrap();
            for method in [DistanceMethod::ClosedForm, DistanceMethod::DoubleSum] {
                let d = spectral_distance(&gamma, &zero, &set, method).unwrap();
                worst = worst.max((d * d - rhs).abs());
            }
            checked += 1;
        }
    }
    outcome(worst <= 1e-9, format!("30 instances |G|<=1024, {checked} characters, both distance forms; max error {worst:.2e}"))
}

fn moment_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut failures = 0;
    let mut worst_rel = 0.0f64;
    for _ in 0..100 {
        let g = random_group(&mut rng, 1024);
        let a = random_subset(&mut rng, &g, 32);
        let k = rng.gen_range(1..=12);
        // r_k(x) = #{(a_1..a_k) : sum = x}, exactly
        let mut r = vec![0u128; g.order()];
        r[0] = 1;
        for _ in 0..k {
            let mut next = vec![0u128; g.order()];
            for (x, &c) in r.iter().enumerate().filter(|(_, &c)| c > 0) {
                for &y in &a {
                    next[g.add_idx(x, y)] += c;
                }
            }
            r = next;
        }
        let moment: u128 = r.iter().map(|&c| c * c).sum();
        let support = r.iter().filter(|&&c| c > 0).count() as u128;
        let lhs = (a.len() as u128).pow(2 * k as u32);
        let oracle_holds = moment.checked_mul(support).map_or(true, |v| v >= lhs);
        let audit = moment_lower_bound_audit(&lib_set(&g, &a), k).unwrap();
        worst_rel = worst_rel.max((audit.moment.ln_value - (moment as f64).ln()).abs());
        if !(oracle_holds && audit.holds && audit.sumset_measure as u128 == support) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("100 instances k<=12; {failures} failures; max |ln moment - ln oracle| {worst_rel:.2e}"))
}

fn nested_bohr() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let (mut checked, mut failures) = (0, 0);
    for _ in 0..20 {
        let g = random_group(&mut rng, 512);
        let mut lambda = random_subset(&mut rng, &g, 3);
        lambda.insert(0);
        let lib_lambda = lib_set(&g, &lambda);
        for k in 1..=5usize {
            for delta in [1.0 / 64.0, 1.0 / 32.0, 3.0 / 64.0, 1.0 / 16.0, 0.1, 1.0 / 8.0, 0.2, 0.3] {
                if k as f64 * delta >= 1.0 / 3.0 {
                    continue;
                }
                checked += 1;
                let coarse = bohr(&g, &iterate(&g, &lambda, k), k as f64 * delta);
                let fine = bohr(&g, &lambda, delta);
                let audit = nested_bohr_audit(&lib_lambda, k, delta).unwrap();
                if coarse != fine || !audit.is_equal() || to_set(audit.fine.as_ref().unwrap().members()) != fine {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures == 0, format!("20 instances |G|<=512, {checked} grid pairs with k delta < 1/3; {failures} failures"))
}

fn rounding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let dist = |x: f64| (x - x.round()).abs();
    let (mut failures, mut premised) = (0, 0);
    for i in 0..10_000 {
        let k = rng.gen_range(1..=20usize);
        let delta = rng.gen_range(1e-6..1.0 / (3.0 * k as f64));
        // half the samples sit near integers so the premise is exercised
        let t = if i % 2 == 0 {
            rng.gen_range(-3.0..3.0)
        } else {
            rng.gen_range(-3i32..=3) as f64 + rng.gen_range(-1.5 * delta..1.5 * delta)
        };
        let premise = (1..=k).all(|r| dist(r as f64 * t) <= k as f64 * delta);
        let conclusion = dist(t) <= delta;
        let c = rounding_check(t, k, delta).unwrap();
        premised += premise as usize;
        if (premise && !conclusion) || c.premise != premise || c.conclusion != conclusion || !c.consistent() {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("10000 samples, {premised} with premise true; {failures} failures"))
}

fn coverings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let (mut chang_done, mut chang_fail, mut drawn) = (0, 0, 0);
    while chang_done < 50 {
        drawn += 1;
        assert!(drawn < 10_000, "precondition too rare");
        let g = random_group(&mut rng, 256);
        let mut bp: BTreeSet<usize> = to_set(&GroupSet::cube(&g, rng.gen_range(0..3)));
        bp.extend(random_subset(&mut rng, &g, 3));
        let b = random_subset(&mut rng, &g, 6);
        let k = rng.gen_range(1..=5);
        let measured = sumset(&g, &iterate(&g, &b, k), &bp).len();
        if measured as f64 >= 2f64.powi(k as i32) * bp.len() as f64 {
            continue;
        }
        chang_done += 1;
        let cert = chang_cover(&lib_set(&g, &b), &lib_set(&g, &bp), k).unwrap();
        let cover = sumset(&g, &prog1(&g, &cert.t), &difference(&g, &bp, &bp));
        let t_in_b = cert.t.iter().all(|x| b.contains(x));
        if !(cert.t.len() <= k && b.is_subset(&cover) && t_in_b && cert.precondition_held == Some(true)) {
            chang_fail += 1;
        }
    }
    let mut ruzsa_fail = 0;
    for _ in 0..50 {
        let g = random_group(&mut rng, 256);
        let b = random_subset(&mut rng, &g, 5);
        let cert = ruzsa_cover(&lib_set(&g, &b)).unwrap();
        let two_b = sumset(&g, &b, &b);
        let target = difference(&g, &two_b, &two_b);
        let t: BTreeSet<usize> = cert.t.iter().copied().collect();
        let cover = sumset(&g, &t, &difference(&g, &b, &b));
        if !(target.is_subset(&cover) && t.is_subset(&target) && cert.containment_verified) {
            ruzsa_fail += 1;
        }
    }
    outcome(
        chang_fail == 0 && ruzsa_fail == 0,
        format!("Chang {chang_done} instances under the measured precondition ({drawn} drawn), {chang_fail} failures; Ruzsa 50 instances, {ruzsa_fail} failures"),
    )
}

/// A system given by an exact membership rule at every radius.
struct SystemCase {
    name: String,
    group: GroupRef,
    family: SystemFamily,
    d: f64,
    member: Box<dyn Fn(usize, f64) -> bool>,
}

fn system_cases() -> Vec<SystemCase> {
    let mut out = Vec::new();
    for n in [16usize, 27, 32, 64, 100, 128, 256] {
        let g = FinAbGroup::cyclic(n).unwrap();
        let scale = n as f64 / 4.0;
        out.push(SystemCase {
            name: format!("interval Z_{n}"),
            group: g,
            family: SystemFamily::Interval { scale },
            d: 2.0,
            member: Box::new(move |x, delta| (x.min(n - x) as f64) <= (scale * delta + 1e-9).floor()),
        });
    }
    for (cycles, gens) in [(vec![24usize], vec![6usize]), (vec![8, 8], vec![9]), (vec![2, 4, 8], vec![1, 10]), (vec![256], vec![16])] {
        let g = FinAbGroup::new(&cycles).unwrap();
        let mut h = BTreeSet::from([0usize]);
        loop {
            let next: BTreeSet<usize> = h.iter().flat_map(|&x| gens.iter().map(move |&s| (x, s))).map(|(x, s)| g.add_idx(x, s)).chain(h.iter().copied()).collect();
            if next == h {
                break;
            }
            h = next;
        }
        out.push(SystemCase {
            name: format!("subgroup of {cycles:?}"),
            group: g,
            family: SystemFamily::Subgroup { generators: gens },
            d: 0.0,
            member: Box::new(move |x, _| h.contains(&x)),
        });
    }
    out
}

fn birkhoff() -> Outcome {
    let mut notes = Vec::new();
    let (mut f2_fail, mut left_fail, mut right_fail, mut agree_fail, mut sandwich_checks) = (0, 0, 0, 0, 0);
    for case in system_cases() {
        let g = &case.group;
        let n = g.order();
        let system = system_from_family(g, &case.family, case.d, None).unwrap();
        assert!(system.audit().clean(), "{} is not axiom-clean", case.name);
        let depth = system.depth();
        // rho_star from the definition; levels beyond the depth equal the limit S_0
        let rho_star: Vec<Option<f64>> = (0..n)
            .map(|x| {
                if (case.member)(x, 0.0) {
                    return Some(0.0);
                }
                (0..=depth).rev().find(|&k| (case.member)(x, 3f64.powi(-(k as i32)))).map(|k| 0.5f64.powi(k as i32))
            })
            .collect();
        // chain infimum by plain relaxation
        let mut rho = rho_star.clone();
        loop {
            let mut changed = false;
            for x in 0..n {
                let Some(rx) = rho[x] else { continue };
                for y in 0..n {
                    let Some(wy) = rho_star[y] else { continue };
                    let z = g.add_idx(x, y);
                    if rho[z].map_or(true, |rz| rx + wy < rz) {
                        rho[z] = Some(rx + wy);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let metric = birkhoff_metric(&system);
        if metric.rho() != rho.as_slice() || metric.rho_star() != rho_star.as_slice() || !factor_two_audit(&metric).passes() {
            agree_fail += 1;
        }
        for x in 0..n {
            if let Some(s) = rho_star[x] {
                let r = rho[x].unwrap();
                if !(s / 2.0 <= r && r <= s) {
                    f2_fail += 1;
                }
            }
        }
        let lib_sandwich = sandwich_audit(&metric).unwrap();
        for level in system.levels() {
            let delta = level.radius;
            sandwich_checks += 1;
            let ball: Vec<usize> = (0..n).filter(|&x| rho[x].is_some_and(|r| r <= delta + 1e-12)).collect();
            let left = (0..n).filter(|&x| (case.member)(x, delta / 4.0)).all(|x| ball.contains(&x));
            let right = ball.iter().all(|&x| (case.member)(x, delta));
            let lib = lib_sandwich.iter().find(|v| v.delta == delta).unwrap();
            if lib.left != left || lib.right != right {
                agree_fail += 1;
            }
            if !left {
                left_fail += 1;
                let w = (0..n).find(|&x| (case.member)(x, delta / 4.0) && !ball.contains(&x)).unwrap();
                notes.push(format!("{} delta={delta:.5}: x={:?} in S_(delta/4) has rho={:?}", case.name, g.decode(w), rho[w]));
            }
            if !right {
                right_fail += 1;
                notes.push(format!("{} delta={delta:.5}: right inclusion fails", case.name));
            }
        }
    }
    let pass = f2_fail == 0 && left_fail == 0 && right_fail == 0 && agree_fail == 0;
    outcome(
        pass,
        format!(
            "factor-2 violations {f2_fail}; sandwich checks {sandwich_checks}: left failures {left_fail}, right failures {right_fail}; library/oracle disagreements {agree_fail}{}",
            if notes.is_empty() { String::new() } else { format!(" [{}]", notes.join("; ")) }
        ),
    )
}

fn difference_set_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut failures = 0;
    for _ in 0..200 {
        let g = random_group(&mut rng, 1024);
        let a = random_subset(&mut rng, &g, 6);
        let l = rng.gen_range(2..=4);
        let eps: f64 = rng.gen_range(0.02..=1.0);
        let prev = iterate(&g, &a, l - 1);
        let la = sumset(&g, &prev, &a);
        let k = la.len() as f64 / prev.len() as f64;
        let hat = sparse_dft(&g, &la.iter().map(|&x| (x, 1.0)).collect::<Vec<_>>());
        let threshold = (1.0 - eps * eps / 2.0).sqrt() * la.len() as f64;
        let spec: BTreeSet<usize> = (0..g.order()).filter(|&m| hat[m].norm() >= threshold - 1e-9 * la.len() as f64).collect();
        let radius = 2.0 * eps * (2.0 * k).sqrt();
        let diff = difference(&g, &a, &a);
        let oracle = diff.iter().all(|&x| spec.iter().all(|&m| circle(&g, m, x) <= radius + 1e-9));
        let audit = lowerbound_audit(&lib_set(&g, &a), l, eps, k).unwrap();
        if !(oracle && audit.holds && audit.hypothesis_holds) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("200 instances |G|<=1024 with K = mu(lA)/mu((l-1)A); {failures} failures"))
}

fn end_to_end() -> Outcome {
    let dir = std::env::temp_dir().join(format!("freiman-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("a.json");
    std::fs::write(&input, r#"{"group": {"cycles": [256]}, "elements": [-2, -1, 0, 1, 2]}"#).unwrap();
    let start = Instant::now();
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("report{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_freiman"))
            .args(["freiman", input.to_str().unwrap(), "--d", "1", "--mode", "empirical", "--epsilon", "0.5", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        if !status.success() {
            return outcome(false, format!("run {i} exited with {status}"));
        }
        texts.push(std::fs::read(&out).unwrap());
    }
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&texts[0]).unwrap();
    let g = FinAbGroup::cyclic(256).unwrap();
    let index = |v: &serde_json::Value| v[0].as_u64().unwrap() as usize;
    let mut freqs: BTreeSet<usize> = report["spectrum"]["members"].as_array().unwrap().iter().map(index).collect();
    freqs.extend(report["x"].as_array().unwrap().iter().map(index));
    let radius = report["radius"].as_f64().unwrap();
    let a: BTreeSet<usize> = [254, 255, 0, 1, 2].into();
    let ball = bohr(&g, &freqs, radius);
    let oracle_containment = difference(&g, &a, &a).is_subset(&ball);
    let dim = report["empirical_dim"]["empirical_dim"].as_f64().unwrap();
    let ratio = report["measure_ratio"].as_f64();
    let identical = texts[0] == texts[1];
    let pass = report["containment"] == true
        && oracle_containment
        && dim <= 4.0
        && ratio.is_some_and(f64::is_finite)
        && ratio == Some(ball.len() as f64 / 5.0)
        && identical
        && elapsed <= Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "containment {} (oracle {oracle_containment}), empirical_dim {dim:.4}, measure ratio {:?}, eps used {}, byte-identical {identical}, {:.2}s",
            report["containment"], ratio, report["epsilon"], elapsed.as_secs_f64()
        ),
    )
}

fn dimension_sanity() -> Outcome {
    let g = FinAbGroup::new(&[17, 17]).unwrap();
    let oracle = (1..=3)
        .map(|r: usize| (((4 * r + 1).pow(2)) as f64 / ((2 * r + 1).pow(2)) as f64).log2())
        .fold(0.0, f64::max);
    let est = dimension_estimate(|r| GroupSet::cube(&g, r as usize), &[1.0, 2.0, 3.0]).unwrap();
    let counts_ok = est.points.iter().all(|p| {
        let r = p.radius as usize;
        p.measure == (2 * r + 1).pow(2) && p.measure_double == (4 * r + 1).pow(2)
    });
    let dim = est.empirical_dim;
    let pass = counts_ok && (dim - oracle).abs() < 1e-12 && (1.3..=2.0).contains(&dim);
    outcome(pass, format!("Z_17^2 cubes r in {{1,2,3}}: empirical_dim {dim:.6}, oracle {oracle:.6}"))
}

fn verify_runtime() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_freiman")).args(["verify", "--suite", "all"]).output().unwrap();
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: HashSet<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["failures"] != 0)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    outcome(
        elapsed <= Duration::from_secs(300),
        format!("completed in {:.2}s (exit {:?}; failing checks: {failing:?})", elapsed.as_secs_f64(), out.status.code()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1 Fourier identities", fourier_identities),
        ("2 spectral identity", spectral_identity),
        ("3 moment lower bound", moment_bound),
        ("4 nested Bohr sets", nested_bohr),
        ("5 rounding lemma", rounding),
        ("6 Chang and Ruzsa covering", coverings),
        ("7 Birkhoff metric", birkhoff),
        ("8 difference set in Bohr set", difference_set_bound),
        ("9 end-to-end containment", end_to_end),
        ("10 dimension estimator", dimension_sanity),
        ("verify --suite all runtime", verify_runtime),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        failed += !o.pass as usize;
        println!("{} [{name}] {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
