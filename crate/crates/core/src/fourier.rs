//! Discrete Fourier analysis on `Z_{n1} x ... x Z_{nk}`.
//!
//! `f^(gamma_m) = sum_x f(x) conj(gamma_m(x))`. The fast path runs a 1-D FFT
//! along each cyclic factor; the naive quadratic sum is kept as an oracle path.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ensure_same, GroupRef};
use crate::set::GroupSet;

/// Relative tolerance for identity audits.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Indicator convolutions are snapped to integers within this distance.
pub const INTEGER_SNAP: f64 = 1e-6;
/// Moments above this magnitude are carried in log space.
pub const LOG_SPACE_THRESHOLD: f64 = 1e300;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TransformPath {
    #[default]
    Fast,
    Naive,
}

/// A complex function on the dual group.
#[derive(Clone, Debug)]
pub struct DualFunction {
    group: GroupRef,
    values: Vec<Complex64>,
}

impl DualFunction {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn max_abs_diff(&self, other: &DualFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn check_len(group: &GroupRef, len: usize) -> Result<()> {
    if len != group.order() {
        return Err(Error::InvalidParameter(format!(
            "function has {len} values, group order is {}",
            group.order()
        )));
    }
    Ok(())
}

/// In-place multidimensional DFT along every cyclic factor. The inverse
/// direction is unnormalized.
fn fft_in_place(group: &GroupRef, data: &mut [Complex64], direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let order = group.order();
    for (&n, &stride) in group.cycles().iter().zip(group.strides()) {
        let fft = planner.plan_fft(n, direction);
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let block = stride * n;
        for outer in (0..order).step_by(block) {
            for inner in 0..stride {
                let start = outer + inner;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}

pub fn transform(group: &GroupRef, f: &[f64]) -> Result<DualFunction> {
    transform_with(group, f, TransformPath::Fast)
}

pub fn transform_with(group: &GroupRef, f: &[f64], path: TransformPath) -> Result<DualFunction> {
    check_len(group, f.len())?;
    let values = match path {
        TransformPath::Fast => {
            let mut data: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            fft_in_place(group, &mut data, FftDirection::Forward);
            data
        }
        TransformPath::Naive => naive_dft(group, f),
    };
    Ok(DualFunction { group: group.clone(), values })
}

/// Quadratic-time DFT with exact integer phases.
fn naive_dft(group: &GroupRef, f: &[f64]) -> Vec<Complex64> {
    let e = group.exponent();
    let roots: Vec<Complex64> =
        (0..e).map(|p| Complex64::from_polar(1.0, -2.0 * PI * p as f64 / e as f64)).collect();
    let support: Vec<(usize, f64)> =
        f.iter().copied().enumerate().filter(|&(_, v)| v != 0.0).collect();
    (0..group.order())
        .map(|m| support.iter().map(|&(x, v)| roots[group.phase(m, x)] * v).sum())
        .collect()
}

pub fn transform_set(a: &GroupSet) -> DualFunction {
    transform(a.group(), &a.indicator()).expect("indicator has group length")
}

/// `f(x) = |G|^-1 sum_m f^(m) gamma_m(x)`, real part.
pub fn inverse_real(dual: &DualFunction) -> Vec<f64> {
    let mut data = dual.values.clone();
    fft_in_place(&dual.group, &mut data, FftDirection::Inverse);
    let scale = dual.group.order() as f64;
    data.iter().map(|v| v.re / scale).collect()
}

/// `f * g (x) = sum_y f(y) g(x - y)`.
pub fn convolve(group: &GroupRef, f: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    check_len(group, f.len())?;
    check_len(group, g.len())?;
    let ff = transform(group, f)?;
    let gg = transform(group, g)?;
    let product = DualFunction {
        group: group.clone(),
        values: ff.values.iter().zip(&gg.values).map(|(a, b)| a * b).collect(),
    };
    Ok(inverse_real(&product))
}

/// `1_A * 1_B` as exact integer counts of representations `x = a + b`.
pub fn convolve_indicators(a: &GroupSet, b: &GroupSet) -> Result<Vec<u64>> {
    ensure_same(a.group(), b.group())?;
    let raw = convolve(a.group(), &a.indicator(), &b.indicator())?;
    raw.iter()
        .map(|&v| {
            let r = v.round();
            if (v - r).abs() < INTEGER_SNAP && r >= 0.0 {
                Ok(r as u64)
            } else {
                Err(Error::InvalidParameter(format!(
                    "indicator convolution value {v} is not within {INTEGER_SNAP} of a nonnegative integer"
                )))
            }
        })
        .collect()
}

/// k-fold convolution `1_A * ... * 1_A`, snapped to integers.
pub fn convolution_power(a: &GroupSet, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("convolution power needs k >= 1".into()));
    }
    let hat = transform_set(a);
    let powered = DualFunction {
        group: a.group().clone(),
        values: hat.values.iter().map(|v| v.powi(k as i32)).collect(),
    };
    Ok(inverse_real(&powered).into_iter().map(|v| v.round()).collect())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParsevalAudit {
    /// `|G|^-1 sum_gamma |f^(gamma)|^2`
    pub lhs: f64,
    /// `sum_x |f(x)|^2`
    pub rhs: f64,
    pub gap: f64,
}

impl ParsevalAudit {
    pub fn passes(&self) -> bool {
        self.gap <= IDENTITY_TOLERANCE * self.rhs.max(1.0)
    }
}

pub fn parseval_audit(group: &GroupRef, f: &[f64]) -> Result<ParsevalAudit> {
    let hat = transform(group, f)?;
    let lhs = hat.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / group.order() as f64;
    let rhs = f.iter().map(|v| v * v).sum::<f64>();
    Ok(ParsevalAudit { lhs, rhs, gap: (lhs - rhs).abs() })
}

/// `int |1_A^|^{2k} dnu`. `value` is `None` when the moment only fits in log space.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Moment {
    pub k: usize,
    pub ln_value: f64,
    pub value: Option<f64>,
    pub log_space: bool,
}

/// Moment from precomputed magnitudes `|1_A^|`; `mass` is `mu(A)`.
pub(crate) fn moment_from_magnitudes(mags: &[f64], mass: f64, k: usize) -> Moment {
    let order = mags.len() as f64;
    let exponent = 2 * k as i32;
    let normalized: f64 = mags.iter().map(|&m| (m / mass).min(1.0).powi(exponent)).sum();
    let ln_scale = exponent as f64 * mass.ln();
    let ln_value = ln_scale + normalized.ln() - order.ln();
    let log_space = ln_scale > LOG_SPACE_THRESHOLD.ln();
    let value = if log_space { None } else { Some(mags.iter().map(|&m| m.powi(exponent)).sum::<f64>() / order) };
    Moment { k, ln_value, value, log_space }
}

pub fn moment(a: &GroupSet, k: usize) -> Result<Moment> {
    if a.is_empty() {
        return Err(Error::EmptySet("moment source set"));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("moment needs k >= 1".into()));
    }
    Ok(moment_from_magnitudes(&transform_set(a).magnitudes(), a.measure(), k))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentLowerBound {
    pub k: usize,
    pub moment: Moment,
    /// `ln(mu(A)^{2k} / mu(kA))`
    pub ln_bound: f64,
    pub sumset_measure: usize,
    pub holds: bool,
}

/// Audits `int |1_A^|^{2k} dnu >= mu(A)^{2k} / mu(kA)`.
pub fn moment_lower_bound_audit(a: &GroupSet, k: usize) -> Result<MomentLowerBound> {
    let m = moment(a, k)?;
    let ka = a.iterate(k)?;
    let ln_bound = 2.0 * k as f64 * a.measure().ln() - ka.measure().ln();
    Ok(MomentLowerBound {
        k,
        moment: m,
        ln_bound,
        sumset_measure: ka.len(),
        holds: m.ln_value >= ln_bound - IDENTITY_TOLERANCE,
    })
}
