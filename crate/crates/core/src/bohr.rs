//! Bohr sets `Bohr(Gamma, delta) = {x : ||gamma(x)|| <= delta for all gamma in Gamma}`,
//! the sup-norm pseudo-metric behind them, and empirical ball dimension.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ensure_same, GroupElement, GroupRef};
use crate::set::{prog_indices, GroupSet};

/// Inclusion slack on Bohr radii.
pub const RADIUS_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct BohrSet {
    frequencies: GroupSet,
    radius: f64,
    members: GroupSet,
}

impl BohrSet {
    pub fn frequencies(&self) -> &GroupSet {
        &self.frequencies
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn members(&self) -> &GroupSet {
        &self.members
    }

    pub fn into_members(self) -> GroupSet {
        self.members
    }
}

/// Largest phase numerator `p` (out of `exponent`) with `p / exponent <= radius + slack`.
fn phase_bound(exponent: usize, radius: f64) -> usize {
    ((radius + RADIUS_SLACK) * exponent as f64).floor() as usize
}

pub fn bohr_set(frequencies: &GroupSet, radius: f64) -> Result<BohrSet> {
    if !(radius >= 0.0) {
        return Err(Error::InvalidParameter(format!("Bohr radius must be nonnegative, got {radius}")));
    }
    let g = frequencies.group();
    let members = if radius >= 0.5 {
        GroupSet::full(g)
    } else {
        bohr_members(g, frequencies, radius)
    };
    Ok(BohrSet { frequencies: frequencies.clone(), radius, members })
}

fn bohr_members(g: &GroupRef, frequencies: &GroupSet, radius: f64) -> GroupSet {
    let e = g.exponent();
    let bound = phase_bound(e, radius);
    let weights: Vec<Vec<usize>> =
        frequencies.iter().filter(|&m| m != 0).map(|m| g.character_weights(m)).collect();
    let mut coords = vec![0; g.rank()];
    let mut members = Vec::new();
    'scan: for x in 0..g.order() {
        g.decode_into(x, &mut coords);
        for w in &weights {
            let p = w.iter().zip(&coords).map(|(a, b)| a * b).sum::<usize>() % e;
            if p.min(e - p) > bound {
                continue 'scan;
            }
        }
        members.push(x);
    }
    GroupSet::from_indices(g, members).expect("indices below order")
}

/// `sup_{gamma in Gamma} ||gamma(x - y)||`.
pub fn bohr_distance(x: &GroupElement, y: &GroupElement, frequencies: &GroupSet) -> Result<f64> {
    ensure_same(x.group(), y.group())?;
    ensure_same(x.group(), frequencies.group())?;
    if frequencies.is_empty() {
        return Err(Error::EmptySet("Bohr frequency set"));
    }
    let g = frequencies.group();
    let diff = g.sub_idx(x.index(), y.index());
    Ok(frequencies.iter().map(|m| g.character_norm(m, diff)).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionPoint {
    pub radius: f64,
    pub measure: usize,
    pub measure_double: usize,
    pub log2_ratio: f64,
}

/// `max log2(mu(B_{2 delta'}) / mu(B_{delta'}))` over a grid of radii.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionEstimate {
    pub grid: Vec<f64>,
    pub points: Vec<DimensionPoint>,
    /// Grid radii skipped because the ball there was empty.
    pub excluded: Vec<f64>,
    pub empirical_dim: f64,
    /// Whether `B_{delta'} ⊆ B_{2 delta'}` held at every used grid point.
    pub monotone: bool,
}

impl DimensionEstimate {
    /// Empirical dimension restricted to grid radii `<= radius`.
    pub fn dim_up_to(&self, radius: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.radius <= radius + 1e-15)
            .map(|p| p.log2_ratio)
            .fold(0.0, f64::max)
    }

    /// `d`-dimensional at `radius` on this grid.
    pub fn certifies(&self, d: f64, radius: f64) -> bool {
        self.dim_up_to(radius) <= d + 1e-12
    }
}

pub fn dimension_estimate<F>(family: F, grid: &[f64]) -> Result<DimensionEstimate>
where
    F: Fn(f64) -> GroupSet,
{
    if grid.is_empty() {
        return Err(Error::InvalidParameter("dimension grid is empty".into()));
    }
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    let mut monotone = true;
    for &r in grid {
        let ball = family(r);
        if ball.is_empty() {
            excluded.push(r);
            continue;
        }
        let double = family(2.0 * r);
        monotone &= ball.is_subset(&double)?;
        points.push(DimensionPoint {
            radius: r,
            measure: ball.len(),
            measure_double: double.len(),
            log2_ratio: (double.len() as f64 / ball.len() as f64).log2(),
        });
    }
    let empirical_dim = points.iter().map(|p| p.log2_ratio).fold(0.0, f64::max);
    Ok(DimensionEstimate { grid: grid.to_vec(), points, excluded, empirical_dim, monotone })
}

/// `top * 2^-j` for `j = 0..=depth`.
pub fn dyadic_grid(top: f64, depth: usize) -> Vec<f64> {
    (0..=depth).map(|j| top * 0.5f64.powi(j as i32)).collect()
}

/// Dyadic grid below `top`, continued until the ball reaches `family(0)` (or `max_depth`).
pub fn default_grid<F>(family: F, top: f64, max_depth: usize) -> Vec<f64>
where
    F: Fn(f64) -> GroupSet,
{
    let bottom = family(0.0);
    let mut grid = Vec::new();
    for r in dyadic_grid(top, max_depth) {
        grid.push(r);
        if family(r) == bottom {
            break;
        }
    }
    grid
}

/// Distance to the nearest integer, with ties rounded to even.
pub fn nearest_int_distance(x: f64) -> f64 {
    (x - x.round_ties_even()).abs()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RoundingCheck {
    /// `<r t> <= k delta` for `r = 1..=k`
    pub premise: bool,
    /// `<t> <= delta`
    pub conclusion: bool,
    /// `k delta < 1/3`
    pub applies: bool,
}

impl RoundingCheck {
    /// False only on a counterexample to the rounding lemma.
    pub fn consistent(&self) -> bool {
        !(self.applies && self.premise) || self.conclusion
    }
}

pub fn rounding_check(t: f64, k: usize, delta: f64) -> Result<RoundingCheck> {
    if k == 0 {
        return Err(Error::InvalidParameter("rounding check needs k >= 1".into()));
    }
    let bound = k as f64 * delta;
    let premise = (1..=k).all(|r| nearest_int_distance(r as f64 * t) <= bound);
    Ok(RoundingCheck { premise, conclusion: nearest_int_distance(t) <= delta, applies: bound < 1.0 / 3.0 })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NestedBohrVerdict {
    Equal,
    Different { only_in_coarse: usize, only_in_fine: usize },
    Skipped { reason: String },
}

#[derive(Clone, Debug)]
pub struct NestedBohrAudit {
    pub k: usize,
    pub delta: f64,
    pub verdict: NestedBohrVerdict,
    /// `Bohr(k Lambda, k delta)`
    pub coarse: Option<BohrSet>,
    /// `Bohr(Lambda, delta)`
    pub fine: Option<BohrSet>,
}

impl NestedBohrAudit {
    pub fn is_equal(&self) -> bool {
        matches!(self.verdict, NestedBohrVerdict::Equal)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, NestedBohrVerdict::Skipped { .. })
    }
}

/// Compares `Bohr(k Lambda, k delta)` with `Bohr(Lambda, delta)`.
pub fn nested_bohr_audit(lambda: &GroupSet, k: usize, delta: f64) -> Result<NestedBohrAudit> {
    if k == 0 || !(delta >= 0.0) {
        return Err(Error::InvalidParameter(format!("need k >= 1 and delta >= 0, got k={k}, delta={delta}")));
    }
    let skipped = |reason: String| NestedBohrAudit {
        k,
        delta,
        verdict: NestedBohrVerdict::Skipped { reason },
        coarse: None,
        fine: None,
    };
    if !lambda.contains_zero() {
        return Ok(skipped("frequency set does not contain the trivial character".into()));
    }
    if k as f64 * delta >= 1.0 / 3.0 {
        return Ok(skipped(format!("k * delta = {} is not below 1/3", k as f64 * delta)));
    }
    let k_lambda = lambda.iterate(k)?;
    let coarse = bohr_set(&k_lambda, k as f64 * delta)?;
    let fine = bohr_set(lambda, delta)?;
    let verdict = if coarse.members == fine.members {
        NestedBohrVerdict::Equal
    } else {
        NestedBohrVerdict::Different {
            only_in_coarse: coarse.members.without(&fine.members)?.len(),
            only_in_fine: fine.members.without(&coarse.members)?.len(),
        }
    };
    Ok(NestedBohrAudit { k, delta, verdict, coarse: Some(coarse), fine: Some(fine) })
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuredGrowthAudit {
    /// `Gamma + Gamma ⊆ Prog(X, 1) + Gamma`
    pub hypothesis_holds: bool,
    pub measure_small: usize,
    pub measure_large: usize,
    /// `mu(Bohr(Gamma ∪ X, 2 delta)) / mu(Bohr(Gamma ∪ X, delta))`
    pub ratio: f64,
    /// `ln(ratio) / (|X| ln |X|)` for `|X| >= 2`; reported, never asserted.
    pub empirical_constant: Option<f64>,
}

pub fn structured_growth_audit(gamma: &GroupSet, x: &GroupSet, delta: f64) -> Result<StructuredGrowthAudit> {
    ensure_same(gamma.group(), x.group())?;
    if !(delta > 0.0 && delta <= 1.0 / 16.0) {
        return Err(Error::Precondition(format!("delta must lie in (0, 1/16], got {delta}")));
    }
    if !gamma.contains_zero() {
        return Err(Error::Precondition("Gamma must contain the trivial character".into()));
    }
    if !gamma.is_symmetric() {
        return Err(Error::Precondition("Gamma must be symmetric".into()));
    }
    let g = gamma.group();
    let x_idx = x.indices();
    let lhs = gamma.sumset(gamma)?;
    let rhs = prog_indices(g, &x_idx, 1)?.sumset(gamma)?;
    let hypothesis_holds = lhs.is_subset(&rhs)?;
    let freqs = gamma.union(x)?;
    let small = bohr_set(&freqs, delta)?.members.len();
    let large = bohr_set(&freqs, 2.0 * delta)?.members.len();
    let ratio = large as f64 / small as f64;
    let n = x_idx.len() as f64;
    Ok(StructuredGrowthAudit {
        hypothesis_holds,
        measure_small: small,
        measure_large: large,
        ratio,
        empirical_constant: (x_idx.len() >= 2).then(|| ratio.ln() / (n * n.ln())),
    })
}
