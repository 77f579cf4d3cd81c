//! Large spectra and the `L^2(mu(A)^-2 1_A * 1_-A)` pseudo-metric on the dual.
//!
//! `LSpec(A, delta)` is the `delta`-ball around the trivial character, which
//! reduces to the threshold set `{gamma : |1_A^(gamma)| >= sqrt(1 - delta^2/2) mu(A)}`.

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{self, Moment};
use crate::group::{Character, GroupRef};
use crate::set::{hypothesis_window_start, GroupSet};

/// Inclusion slack on spectral thresholds, in units of `mu(A)`.
pub const INCLUSION_SLACK: f64 = 1e-9;

/// Default scan cap for [`find_k`].
pub const DEFAULT_K_CAP: usize = 1_000_000;

/// `|1_A^|` for one set, reusable across thresholds and distance queries.
#[derive(Clone, Debug)]
pub struct SpectralProfile {
    source: GroupSet,
    magnitudes: Arc<[f64]>,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    source: GroupSet,
    delta: f64,
    threshold: f64,
    members: GroupSet,
    magnitudes: Arc<[f64]>,
}

impl Spectrum {
    pub fn source(&self) -> &GroupSet {
        &self.source
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `sqrt(1 - delta^2/2) mu(A)`, clamped at 0.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn members(&self) -> &GroupSet {
        &self.members
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn into_members(self) -> GroupSet {
        self.members
    }
}

pub fn spectral_threshold(mass: f64, delta: f64) -> f64 {
    (1.0 - delta * delta / 2.0).max(0.0).sqrt() * mass
}

impl SpectralProfile {
    pub fn new(a: &GroupSet) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet("spectrum source set"));
        }
        let raw = fourier::transform_set(a).magnitudes();
        let g = a.group();
        let mass = a.measure();
        // |1_A^(-gamma)| = |1_A^(gamma)| exactly; average away the rounding asymmetry
        let magnitudes: Arc<[f64]> = (0..g.order())
            .map(|m| (0.5 * (raw[m] + raw[g.neg_idx(m)])).min(mass))
            .collect();
        Ok(SpectralProfile { source: a.clone(), magnitudes })
    }

    pub fn source(&self) -> &GroupSet {
        &self.source
    }

    pub fn group(&self) -> &GroupRef {
        self.source.group()
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn lspec(&self, delta: f64) -> Result<Spectrum> {
        if !(delta >= 0.0) {
            return Err(Error::InvalidParameter(format!("spectral radius must be nonnegative, got {delta}")));
        }
        let mass = self.source.measure();
        let threshold = spectral_threshold(mass, delta);
        let cut = threshold - INCLUSION_SLACK * mass;
        let members = if delta >= SQRT_2 {
            GroupSet::full(self.group())
        } else {
            GroupSet::from_indices(
                self.group(),
                self.magnitudes.iter().enumerate().filter(|(_, &m)| m >= cut).map(|(i, _)| i),
            )?
        };
        Ok(Spectrum {
            source: self.source.clone(),
            delta,
            threshold,
            members,
            magnitudes: Arc::clone(&self.magnitudes),
        })
    }

    /// Closed-form `rho(gamma_m, gamma_m')`.
    pub fn distance(&self, m: usize, m2: usize) -> f64 {
        let g = self.group();
        let diff = g.sub_idx(m, m2);
        let r = self.magnitudes[diff] / self.source.measure();
        (2.0 * (1.0 - r * r)).max(0.0).sqrt()
    }

    pub fn moment(&self, k: usize) -> Moment {
        fourier::moment_from_magnitudes(&self.magnitudes, self.source.measure(), k)
    }

    pub fn moment_split(&self, eta: f64, k: usize) -> Result<MomentSplit> {
        if !(eta > 0.0 && eta <= 0.5) {
            return Err(Error::InvalidParameter(format!("eta must lie in (0, 1/2], got {eta}")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("moment split needs k >= 1".into()));
        }
        let spectrum = self.lspec(eta)?;
        let mass = self.source.measure();
        let order = self.group().order() as f64;
        let exponent = 2 * k as i32;
        let mut inside = 0.0;
        let mut total = 0.0;
        for (i, &m) in self.magnitudes.iter().enumerate() {
            let term = (m / mass).min(1.0).powi(exponent);
            total += term;
            if spectrum.members.contains(i) {
                inside += term;
            }
        }
        inside /= order;
        total /= order;
        let tail_bound = (1.0 - eta * eta / 2.0).powi(k as i32 - 1) / mass;
        let slack = fourier::IDENTITY_TOLERANCE * total;
        Ok(MomentSplit {
            eta,
            k,
            ln_scale: exponent as f64 * mass.ln(),
            inside,
            total,
            tail_bound,
            spectrum_size: spectrum.members.len(),
            inside_at_least_half: inside >= total / 2.0 - slack,
            tail_holds: inside + tail_bound >= total - slack,
        })
    }
}

pub fn lspec(a: &GroupSet, delta: f64) -> Result<Spectrum> {
    SpectralProfile::new(a)?.lspec(delta)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DistanceMethod {
    /// `sqrt(2 (1 - |1_A^(gamma - gamma')|^2 / mu(A)^2))`
    #[default]
    ClosedForm,
    /// The literal average of `|1 - gamma(a - a') conj(gamma'(a - a'))|^2` over `A x A`.
    DoubleSum,
}

pub fn spectral_distance(
    gamma: &Character,
    gamma2: &Character,
    a: &GroupSet,
    method: DistanceMethod,
) -> Result<f64> {
    crate::group::ensure_same(gamma.group(), gamma2.group())?;
    crate::group::ensure_same(gamma.group(), a.group())?;
    if a.is_empty() {
        return Err(Error::EmptySet("spectral distance source set"));
    }
    match method {
        DistanceMethod::ClosedForm => {
            Ok(SpectralProfile::new(a)?.distance(gamma.index(), gamma2.index()))
        }
        DistanceMethod::DoubleSum => {
            let g = a.group();
            let diff = g.sub_idx(gamma.index(), gamma2.index());
            let elems = a.indices();
            let mut acc = 0.0;
            for &x in &elems {
                for &y in &elems {
                    let v = g.character_value(diff, g.sub_idx(x, y));
                    acc += (num_complex::Complex64::new(1.0, 0.0) - v).norm_sqr();
                }
            }
            Ok((acc / (a.measure() * a.measure())).sqrt())
        }
    }
}

/// The split of `int |1_A^|^{2k} dnu` over `LSpec(A, eta)` and its complement.
/// `inside`, `total` and `tail_bound` are divided by `mu(A)^{2k}`; multiply by
/// `exp(ln_scale)` for absolute values.
#[derive(Clone, Debug, Serialize)]
pub struct MomentSplit {
    pub eta: f64,
    pub k: usize,
    pub ln_scale: f64,
    pub inside: f64,
    pub total: f64,
    /// `(1 - eta^2/2)^{k-1} mu(A)^{2k-1}`, normalized.
    pub tail_bound: f64,
    pub spectrum_size: usize,
    pub inside_at_least_half: bool,
    pub tail_holds: bool,
}

pub fn moment_split(a: &GroupSet, eta: f64, k: usize) -> Result<MomentSplit> {
    SpectralProfile::new(a)?.moment_split(eta, k)
}

/// Smallest `k >= max(2, ceil(d ln d))` with `(1 - eta^2/2)^{k-1} <= 1 / (2 k^d)`.
pub fn k_witness(eta: f64, d: f64, cap: usize) -> Option<usize> {
    let base = (1.0 - eta * eta / 2.0).ln();
    (hypothesis_window_start(d)..=cap)
        .find(|&k| (k as f64 - 1.0) * base <= -(2.0f64.ln()) - d * (k as f64).ln())
}

#[derive(Clone, Debug, Serialize)]
pub struct KWitness {
    pub k: usize,
    pub eta: f64,
    pub d: f64,
    pub window_start: usize,
    /// `k eta^2 / (d ln(d / eta))`, when `d > eta`.
    pub calibration: Option<f64>,
    pub measure_ka: usize,
    /// `mu(kA) <= k^d mu(A)`, the growth hypothesis at the witness.
    pub growth_holds_at_k: bool,
}

pub fn find_k(a: &GroupSet, eta: f64, d: f64, cap: usize) -> Result<KWitness> {
    if a.is_empty() {
        return Err(Error::EmptySet("find_k source set"));
    }
    if !(eta > 0.0 && eta < SQRT_2) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0, sqrt 2), got {eta}")));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("dimension must be positive, got {d}")));
    }
    let k = k_witness(eta, d, cap).ok_or(Error::Guard { what: "find_k scan", limit: cap, got: cap + 1 })?;
    let measure_ka = a.iterate(k)?.len();
    let calibration = (d > eta).then(|| k as f64 * eta * eta / (d * (d / eta).ln()));
    Ok(KWitness {
        k,
        eta,
        d,
        window_start: hypothesis_window_start(d),
        calibration,
        measure_ka,
        growth_holds_at_k: measure_ka as f64 <= (k as f64).powf(d) * a.measure(),
    })
}
