//! Bourgain systems sampled on a ternary grid, and the Birkhoff pseudo-metric
//! built from them by shortest chains.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::set::GroupSet;

/// Cap on the ternary depth `K`.
pub const MAX_DEPTH: usize = 20;
const GRID_EPS: f64 = 1e-12;

/// A radius-indexed family of sets from which a system is sampled.
#[derive(Clone, Debug)]
pub enum SystemFamily {
    /// `S_delta = {x : |x|_inf <= floor(scale * delta)}` in coordinates centred at 0.
    Interval { scale: f64 },
    /// The subgroup generated by the given elements, at every radius.
    Subgroup { generators: Vec<usize> },
    /// Explicit levels; `S_delta` is the level with the smallest radius `>= delta`,
    /// or the largest level when `delta` exceeds every radius.
    Levels(Vec<(f64, GroupSet)>),
}

impl SystemFamily {
    pub fn ball(&self, group: &GroupRef, delta: f64) -> Result<GroupSet> {
        match self {
            SystemFamily::Interval { scale } => {
                let r = (scale * delta + 1e-9).floor().max(0.0) as usize;
                Ok(GroupSet::cube(group, r))
            }
            SystemFamily::Subgroup { generators } => generated_subgroup(group, generators),
            SystemFamily::Levels(levels) => {
                if levels.is_empty() {
                    return Err(Error::EmptySet("system levels"));
                }
                let chosen = levels
                    .iter()
                    .filter(|(r, _)| *r >= delta - GRID_EPS)
                    .min_by(|a, b| a.0.total_cmp(&b.0))
                    .or_else(|| levels.iter().max_by(|a, b| a.0.total_cmp(&b.0)))
                    .expect("levels nonempty");
                crate::group::ensure_same(group, chosen.1.group())?;
                Ok(chosen.1.clone())
            }
        }
    }
}

pub fn generated_subgroup(group: &GroupRef, generators: &[usize]) -> Result<GroupSet> {
    let mut step = GroupSet::from_indices(group, generators.iter().copied())?;
    step.insert(0);
    let step = step.union(&step.negate())?;
    let mut h = GroupSet::zero(group);
    loop {
        let next = h.sumset(&step)?;
        if next == h {
            return Ok(h);
        }
        h = next;
    }
}

/// Grid `{2 * 3^-j, 3^-j : j = 0..=depth}` in descending order.
pub fn system_grid(depth: usize) -> Vec<f64> {
    (0..=depth)
        .flat_map(|j| {
            let t = 3f64.powi(-(j as i32));
            [2.0 * t, t]
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Level {
    pub radius: f64,
    pub set: GroupSet,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomAudit {
    /// Radii whose level is not a symmetric neighbourhood of 0.
    pub symmetric_violations: Vec<f64>,
    /// `(delta', delta)` with `delta' < delta` and `S_delta' ⊄ S_delta`.
    pub nesting_violations: Vec<(f64, f64)>,
    /// `(delta, delta', target)` with `S_delta + S_delta' ⊄ S_target`.
    pub subadditivity_violations: Vec<(f64, f64, f64)>,
    /// `(delta, log2 ratio)` with growth above `2^d`.
    pub growth_violations: Vec<(f64, f64)>,
    /// Largest `log2(mu(S_{2 delta}) / mu(S_delta))` over audited pairs.
    pub empirical_dim: f64,
}

impl AxiomAudit {
    pub fn clean(&self) -> bool {
        self.symmetric_violations.is_empty()
            && self.nesting_violations.is_empty()
            && self.subadditivity_violations.is_empty()
            && self.growth_violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct BourgainSystem {
    group: GroupRef,
    d: f64,
    depth: usize,
    levels: Vec<Level>,
    /// `S_{delta/4}` for each level, sampled off the grid.
    quarters: Vec<GroupSet>,
    bottom: GroupSet,
    audit: AxiomAudit,
}

impl BourgainSystem {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Levels in descending radius order.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn audit(&self) -> &AxiomAudit {
        &self.audit
    }

    /// `S_delta` at a grid radius.
    pub fn level(&self, radius: f64) -> Option<&GroupSet> {
        self.levels.iter().find(|l| (l.radius - radius).abs() <= GRID_EPS).map(|l| &l.set)
    }

    /// `S_{3^-k}`.
    pub fn ternary_level(&self, k: usize) -> &GroupSet {
        &self.levels[2 * k + 1].set
    }

    /// Largest grid radius `<= delta`.
    pub fn round_down(&self, delta: f64) -> Option<f64> {
        self.levels.iter().map(|l| l.radius).find(|&r| r <= delta + GRID_EPS)
    }

    /// Smallest grid radius `>= delta`.
    pub fn round_up(&self, delta: f64) -> Option<f64> {
        self.levels.iter().rev().map(|l| l.radius).find(|&r| r >= delta - GRID_EPS)
    }

    /// The deepest sampled ternary level equals the limit `S_0` of the family.
    pub fn bottomed_out(&self) -> bool {
        *self.ternary_level(self.depth) == self.bottom
    }
}

pub fn system_from_family(
    group: &GroupRef,
    family: &SystemFamily,
    d: f64,
    depth: Option<usize>,
) -> Result<BourgainSystem> {
    system_from_balls(group, |r| family.ball(group, r), d, depth)
}

/// Samples `family` on the grid and runs the four axiom audits.
pub fn system_from_balls<F>(group: &GroupRef, family: F, d: f64, depth: Option<usize>) -> Result<BourgainSystem>
where
    F: Fn(f64) -> Result<GroupSet>,
{
    if !(d >= 0.0) {
        return Err(Error::InvalidParameter(format!("dimension must be nonnegative, got {d}")));
    }
    let bottom = family(0.0)?;
    let depth = match depth {
        Some(0) => return Err(Error::InvalidParameter("system depth must be at least 1".into())),
        Some(k) if k > MAX_DEPTH => {
            return Err(Error::Guard { what: "system depth", limit: MAX_DEPTH, got: k })
        }
        Some(k) => k,
        None => (1..=MAX_DEPTH)
            .find(|&k| family(3f64.powi(-(k as i32))).map(|s| s == bottom).unwrap_or(false))
            .unwrap_or(MAX_DEPTH),
    };
    let levels = system_grid(depth)
        .into_iter()
        .map(|radius| {
            let set = family(radius)?;
            crate::group::ensure_same(group, set.group())?;
            Ok(Level { radius, set })
        })
        .collect::<Result<Vec<_>>>()?;
    let quarters = levels.iter().map(|l| family(l.radius / 4.0)).collect::<Result<Vec<_>>>()?;
    let mut system =
        BourgainSystem { group: group.clone(), d, depth, levels, quarters, bottom, audit: AxiomAudit::default() };
    system.audit = audit_axioms(&system)?;
    Ok(system)
}

fn audit_axioms(system: &BourgainSystem) -> Result<AxiomAudit> {
    let levels = &system.levels;
    let mut audit = AxiomAudit::default();
    for l in levels {
        if !(l.set.contains_zero() && l.set.is_symmetric()) {
            audit.symmetric_violations.push(l.radius);
        }
    }
    for w in levels.windows(2) {
        if !w[1].set.is_subset(&w[0].set)? {
            audit.nesting_violations.push((w[1].radius, w[0].radius));
        }
    }
    for (i, a) in levels.iter().enumerate() {
        for b in &levels[i..] {
            let total = a.radius + b.radius;
            if total > 2.0 + GRID_EPS {
                continue;
            }
            let target = system.round_up(total).expect("total <= 2 is below the top radius");
            let target_set = system.level(target).expect("grid radius");
            if !a.set.sumset(&b.set)?.is_subset(target_set)? {
                audit.subadditivity_violations.push((a.radius, b.radius, target));
            }
        }
    }
    for k in 0..=system.depth {
        let small = system.ternary_level(k).len();
        let large = system.levels[2 * k].set.len();
        let ratio = (large as f64 / small as f64).log2();
        audit.empirical_dim = audit.empirical_dim.max(ratio);
        if ratio > system.d + 1e-12 {
            audit.growth_violations.push((system.levels[2 * k + 1].radius, ratio));
        }
    }
    Ok(audit)
}

/// `rho_star` and its chain closure `rho`; `None` encodes infinity.
#[derive(Clone, Debug)]
pub struct BirkhoffMetric {
    system: BourgainSystem,
    rho_star: Vec<Option<f64>>,
    rho: Vec<Option<f64>>,
}

impl BirkhoffMetric {
    pub fn system(&self) -> &BourgainSystem {
        &self.system
    }

    pub fn rho_star(&self) -> &[Option<f64>] {
        &self.rho_star
    }

    pub fn rho(&self) -> &[Option<f64>] {
        &self.rho
    }

    pub fn distance(&self, x: usize, y: usize) -> Option<f64> {
        self.rho[self.system.group.sub_idx(x, y)]
    }

    /// `{x : rho(x) <= radius}`.
    pub fn ball(&self, radius: f64) -> GroupSet {
        let members = self
            .rho
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some_and(|r| r <= radius + GRID_EPS))
            .map(|(i, _)| i);
        GroupSet::from_indices(&self.system.group, members).expect("indices below order")
    }
}

/// `rho_star(x) = min 2^-k` over `x in S_{3^-k}`, then `rho` by shortest paths from 0.
pub fn birkhoff_metric(system: &BourgainSystem) -> BirkhoffMetric {
    let g = &system.group;
    let mut rho_star = vec![None; g.order()];
    for k in (0..=system.depth).rev() {
        let w = 0.5f64.powi(k as i32);
        for x in system.ternary_level(k).iter() {
            if rho_star[x].is_none() {
                rho_star[x] = Some(w);
            }
        }
    }
    if system.bottomed_out() {
        for x in system.bottom.iter() {
            rho_star[x] = Some(0.0);
        }
    }
    rho_star[0] = Some(0.0);

    let steps: Vec<(usize, f64)> =
        rho_star.iter().enumerate().filter_map(|(y, w)| w.map(|w| (y, w))).filter(|&(y, _)| y != 0).collect();
    let mut rho: Vec<Option<f64>> = vec![None; g.order()];
    let mut done = vec![false; g.order()];
    let mut heap = BinaryHeap::new();
    rho[0] = Some(0.0);
    heap.push(Reverse((0.0f64.to_bits(), 0usize)));
    while let Some(Reverse((bits, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        let dx = f64::from_bits(bits);
        for &(y, w) in &steps {
            let z = g.add_idx(x, y);
            let cand = dx + w;
            if !done[z] && rho[z].map_or(true, |r| cand < r) {
                rho[z] = Some(cand);
                heap.push(Reverse((cand.to_bits(), z)));
            }
        }
    }
    BirkhoffMetric { system: system.clone(), rho_star, rho }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichVerdict {
    pub delta: f64,
    pub inner_radius: f64,
    pub inner_size: usize,
    pub ball_size: usize,
    pub outer_size: usize,
    /// `S_{delta/4} ⊆ {rho <= delta}`
    pub left: bool,
    /// `{rho <= delta} ⊆ S_delta`
    pub right: bool,
    /// Smallest element (by index) witnessing a left failure.
    pub left_witness: Option<usize>,
    pub right_witness: Option<usize>,
}

impl SandwichVerdict {
    pub fn passes(&self) -> bool {
        self.left && self.right
    }
}

pub fn sandwich_audit(metric: &BirkhoffMetric) -> Result<Vec<SandwichVerdict>> {
    let system = &metric.system;
    system
        .levels
        .iter()
        .zip(&system.quarters)
        .map(|(level, inner)| {
            let ball = metric.ball(level.radius);
            let left_witness = inner.iter().find(|&x| !ball.contains(x));
            let right_witness = ball.iter().find(|&x| !level.set.contains(x));
            Ok(SandwichVerdict {
                delta: level.radius,
                inner_radius: level.radius / 4.0,
                inner_size: inner.len(),
                ball_size: ball.len(),
                outer_size: level.set.len(),
                left: left_witness.is_none(),
                right: right_witness.is_none(),
                left_witness,
                right_witness,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorTwoAudit {
    pub checked: usize,
    /// Elements with `rho > rho_star`.
    pub upper_violations: Vec<usize>,
    /// Elements with `rho < rho_star / 2`.
    pub lower_violations: Vec<usize>,
}

impl FactorTwoAudit {
    pub fn passes(&self) -> bool {
        self.upper_violations.is_empty() && self.lower_violations.is_empty()
    }
}

/// `rho_star / 2 <= rho <= rho_star` wherever `rho_star` is finite.
pub fn factor_two_audit(metric: &BirkhoffMetric) -> FactorTwoAudit {
    let mut audit = FactorTwoAudit { checked: 0, upper_violations: Vec::new(), lower_violations: Vec::new() };
    for (x, (s, r)) in metric.rho_star.iter().zip(&metric.rho).enumerate() {
        let Some(s) = *s else { continue };
        audit.checked += 1;
        let r = r.expect("finite rho_star gives a one-step chain");
        if r > s {
            audit.upper_violations.push(x);
        }
        if r < s / 2.0 {
            audit.lower_violations.push(x);
        }
    }
    audit
}

/// Exhaustive `rho(x + y) <= rho(x) + rho(y)`; returns the first failing pair.
pub fn triangle_audit(metric: &BirkhoffMetric) -> Option<(usize, usize)> {
    let g = &metric.system.group;
    let n = g.order();
    for x in 0..n {
        let Some(rx) = metric.rho[x] else { continue };
        for y in 0..n {
            let Some(ry) = metric.rho[y] else { continue };
            match metric.rho[g.add_idx(x, y)] {
                Some(rz) if rz <= rx + ry => {}
                _ => return Some((x, y)),
            }
        }
    }
    None
}
