//! The end-to-end construction: pick `l`, cover the large spectrum of `lA`
//! by a Chang set `X`, and check that `A - A` lies in `Bohr(LSpec(lA, eps) ∪ X, radius)`.

use serde::{Deserialize, Serialize};

use crate::bohr::{bohr_set, default_grid, dimension_estimate, DimensionEstimate};
use crate::covering::{chang_cover, CoverCertificate};
use crate::error::{Error, Result};
use crate::set::{growth_profile, iterated_measures, prog_indices, GroupSet};
use crate::spectrum::SpectralProfile;

/// Pigeonhole ratio bound for `mu(lA) / mu((l-1)A)`.
pub const PAPER_RATIO_BOUND: f64 = 32768.0;
/// Radius of the containing ball.
pub const PAPER_RADIUS: f64 = 0.0625;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Paper,
    Empirical,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct FreimanConfig {
    pub d: f64,
    pub mode: Mode,
    pub l: Option<usize>,
    pub epsilon: Option<f64>,
    pub radius: Option<f64>,
    pub ratio_bound: Option<f64>,
    /// Constant in the epsilon formula; the argument leaves it unspecified.
    pub c: f64,
    /// `n` range scanned when measuring growth and `d'`.
    pub n_scan: usize,
    /// Epsilon halvings after an escape from the spectrum cover.
    pub max_retries: usize,
    /// Depth cap of the dyadic grid for the dimension estimate.
    pub dim_depth: usize,
}

impl Default for FreimanConfig {
    fn default() -> Self {
        FreimanConfig {
            d: 1.0,
            mode: Mode::Paper,
            l: None,
            epsilon: None,
            radius: None,
            ratio_bound: None,
            c: 1.0,
            n_scan: 32,
            max_retries: 4,
            dim_depth: 16,
        }
    }
}

impl FreimanConfig {
    pub fn empirical(d: f64, epsilon: f64) -> Self {
        FreimanConfig { d, mode: Mode::Empirical, epsilon: Some(epsilon), ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::InvalidParameter(format!("d must be positive, got {}", self.d)));
        }
        if self.mode == Mode::Paper
            && (self.l.is_some() || self.epsilon.is_some() || self.radius.is_some() || self.ratio_bound.is_some())
        {
            return Err(Error::InvalidParameter("paper mode takes no l, epsilon, radius or ratio overrides".into()));
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e <= 1.0) {
                return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {e}")));
            }
        }
        if let Some(l) = self.l {
            if l < 2 {
                return Err(Error::InvalidParameter(format!("l must be at least 2, got {l}")));
            }
        }
        if let Some(r) = self.radius {
            if !(r >= 0.0) {
                return Err(Error::InvalidParameter(format!("radius must be nonnegative, got {r}")));
            }
        }
        if self.n_scan < 2 {
            return Err(Error::InvalidParameter("n_scan must be at least 2".into()));
        }
        Ok(())
    }

    fn ratio_bound(&self) -> f64 {
        self.ratio_bound.unwrap_or(PAPER_RATIO_BOUND)
    }
}

/// `[max(2, ceil(d ln d)), max(4, ceil(2 d ln d))]`.
pub fn l_window(d: f64) -> (usize, usize) {
    let dl = if d > 1.0 { d * d.ln() } else { 0.0 };
    ((dl.ceil() as usize).max(2), ((2.0 * dl).ceil() as usize).max(4))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LChoice {
    pub l: usize,
    /// `mu(lA) / mu((l-1)A)`
    pub k_l: f64,
}

/// Smallest `l` in the window with `mu(lA) <= ratio_bound mu((l-1)A)`.
pub fn find_l(a: &GroupSet, d: f64, ratio_bound: f64) -> Result<Option<LChoice>> {
    if a.is_empty() {
        return Err(Error::EmptySet("find_l base set"));
    }
    let (lo, hi) = l_window(d);
    let measures = iterated_measures(a, hi)?;
    Ok((lo..=hi).find_map(|l| {
        let k_l = measures[l - 1] as f64 / measures[l - 2] as f64;
        (k_l <= ratio_bound).then_some(LChoice { l, k_l })
    }))
}

/// `max_n ln(mu(n S) / mu(S)) / ln n` over `n = 2..=n_scan`.
pub fn growth_exponent(s: &GroupSet, n_scan: usize) -> Result<f64> {
    let measures = iterated_measures(s, n_scan)?;
    Ok((2..=n_scan)
        .map(|n| (measures[n - 1] as f64 / measures[0] as f64).ln() / (n as f64).ln())
        .fold(0.0, f64::max))
}

/// `1 / (2^13 (1 + C) d' ln^2 d')`, when that is a positive real.
pub fn paper_epsilon(d_prime: f64, c: f64) -> Option<f64> {
    let inv = 8192.0 * (1.0 + c) * d_prime * d_prime.ln().powi(2);
    (inv > 0.0 && inv.is_finite()).then(|| 1.0 / inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct RScan {
    pub r: usize,
    /// `nu(LSpec((2r + 1/2) eps))`, as a count of characters
    pub lhs: usize,
    /// `2^r nu(LSpec(eps / 2))`, as a count of characters
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumCover {
    pub epsilon: f64,
    pub scans: Vec<RScan>,
    pub r: Option<usize>,
    /// Characters of `X`, as tuples.
    pub x: Vec<Vec<usize>>,
    pub certificate: Option<CoverCertificate>,
    /// `LSpec(eps) + LSpec(eps) ⊆ Prog(X,1) + LSpec(eps)`
    pub stated_form: Option<bool>,
    /// `LSpec(2 eps) ⊆ Prog(X,1) + LSpec(eps/2) - LSpec(eps/2)`
    pub proof_form: Option<bool>,
    /// `LSpec(eps) ∪ X ⊆ LSpec(2 eps)`
    pub within_wide_spectrum: Option<bool>,
    pub escaped: bool,
    #[serde(skip)]
    pub x_indices: Vec<usize>,
}

impl SpectrumCover {
    pub fn succeeded(&self) -> bool {
        !self.escaped
    }
}

/// Searches `r = 2, 3, ...` with `(2r + 1/2) eps <= 1` for a Chang cover of the spectrum of `profile`.
pub fn spectrum_cover(profile: &SpectralProfile, epsilon: f64) -> Result<SpectrumCover> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let g = profile.group();
    let narrow = profile.lspec(epsilon / 2.0)?.into_members();
    let base = profile.lspec(epsilon)?.into_members();
    let wide = profile.lspec(2.0 * epsilon)?.into_members();
    let mut out = SpectrumCover {
        epsilon,
        scans: Vec::new(),
        r: None,
        x: Vec::new(),
        certificate: None,
        stated_form: None,
        proof_form: None,
        within_wide_spectrum: None,
        escaped: true,
        x_indices: Vec::new(),
    };
    let mut r = 2usize;
    while (2.0 * r as f64 + 0.5) * epsilon <= 1.0 + 1e-12 {
        let lhs = profile.lspec((2.0 * r as f64 + 0.5) * epsilon)?.members().len();
        let rhs = 2f64.powi(r as i32) * narrow.len() as f64;
        let holds = (lhs as f64) < rhs;
        out.scans.push(RScan { r, lhs, rhs, holds });
        if holds {
            let cert = chang_cover(&wide, &narrow, r)?;
            if cert.containment_verified && cert.t.len() <= r && !cert.partial {
                let x = cert.t.clone();
                let prog = prog_indices(g, &x, 1)?;
                let x_set = GroupSet::from_indices(g, x.iter().copied())?;
                out.stated_form = Some(base.sumset(&base)?.is_subset(&prog.sumset(&base)?)?);
                out.proof_form = Some(wide.is_subset(&prog.sumset(&narrow.difference_set(&narrow)?)?)?);
                out.within_wide_spectrum = Some(base.union(&x_set)?.is_subset(&wide)?);
                out.x = x.iter().map(|&i| g.decode(i)).collect();
                out.x_indices = x;
                out.r = Some(r);
                out.certificate = Some(cert);
                out.escaped = false;
                return Ok(out);
            }
            out.certificate = Some(cert);
        }
        r += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundAudit {
    pub l: usize,
    pub epsilon: f64,
    pub k: f64,
    /// `mu(lA) <= K mu((l-1)A)`
    pub hypothesis_holds: bool,
    /// `2 eps sqrt(2K)`
    pub radius: f64,
    pub difference_size: usize,
    pub bohr_size: usize,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

/// `A - A ⊆ Bohr(LSpec(lA, eps), 2 eps sqrt(2K))`, checked exhaustively.
pub fn lowerbound_audit(a: &GroupSet, l: usize, epsilon: f64, k: f64) -> Result<LowerBoundAudit> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("l must be at least 2, got {l}")));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    if a.is_empty() {
        return Err(Error::EmptySet("lower bound audit base set"));
    }
    let prev = a.iterate(l - 1)?;
    let la = prev.sumset(a)?;
    let spectrum = SpectralProfile::new(&la)?.lspec(epsilon)?;
    let radius = 2.0 * epsilon * (2.0 * k).sqrt();
    let ball = bohr_set(spectrum.members(), radius)?.into_members();
    let diff = a.difference_set(a)?;
    let witness = diff.iter().find(|&x| !ball.contains(x));
    Ok(LowerBoundAudit {
        l,
        epsilon,
        k,
        hypothesis_holds: la.len() as f64 <= k * prev.len() as f64 * (1.0 + 1e-12),
        radius,
        difference_size: diff.len(),
        bohr_size: ball.len(),
        holds: witness.is_none(),
        witness: witness.map(|x| a.group().decode(x)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BohrMeasureAudit {
    pub epsilon: f64,
    pub d: f64,
    pub bohr_measure: usize,
    pub set_measure: usize,
    pub ratio: f64,
    /// `ln(ratio) / (d ln(d / eps))`, when the denominator is positive.
    pub exponent: Option<f64>,
}

/// `mu(Bohr(LSpec(A, eps), 1/(2 pi)))` against `mu(A)`.
pub fn bohr_measure_audit(a: &GroupSet, epsilon: f64, d: f64) -> Result<BohrMeasureAudit> {
    let spectrum = SpectralProfile::new(a)?.lspec(epsilon)?;
    let ball = bohr_set(spectrum.members(), 1.0 / (2.0 * std::f64::consts::PI))?;
    let ratio = ball.members().len() as f64 / a.len() as f64;
    let denom = d * (d / epsilon).ln();
    Ok(BohrMeasureAudit {
        epsilon,
        d,
        bohr_measure: ball.members().len(),
        set_measure: a.len(),
        ratio,
        exponent: (denom > 0.0).then(|| ratio.ln() / denom),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthSummary {
    pub window_start: usize,
    pub scanned_to: usize,
    pub hypothesis_holds: bool,
    pub first_violation: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub delta: f64,
    pub threshold: f64,
    pub size: usize,
    pub members: Vec<Vec<usize>>,
}

/// The three inclusions `A - A ⊆ W(r1) ⊆ W(radius) ⊆ B`, with `W(r) = Bohr(LSpec(lA, 2 eps), r)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainAudit {
    /// `4 eps sqrt(2 K_l)`
    pub inner_radius: f64,
    pub difference_in_wide: bool,
    pub wide_radius_nesting: bool,
    pub wide_in_ball: bool,
}

impl ChainAudit {
    pub fn holds(&self) -> bool {
        self.difference_in_wide && self.wide_radius_nesting && self.wide_in_ball
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FreimanReport {
    pub mode: Mode,
    pub d: f64,
    pub group: Vec<usize>,
    pub set_size: usize,
    pub growth: GrowthSummary,
    pub l_window: (usize, usize),
    pub ratio_bound: f64,
    pub l: Option<usize>,
    pub k_l: Option<f64>,
    pub d_prime: Option<f64>,
    pub c: f64,
    pub epsilon_formula: Option<f64>,
    pub epsilon_requested: Option<f64>,
    pub epsilon: Option<f64>,
    pub cover_attempts: Vec<SpectrumCover>,
    pub spectrum: Option<SpectrumSummary>,
    pub x: Vec<Vec<usize>>,
    pub radius: Option<f64>,
    pub frequency_count: Option<usize>,
    pub bohr_size: Option<usize>,
    pub chain: Option<ChainAudit>,
    /// `A - A ⊆ B`, by direct membership.
    pub containment: Option<bool>,
    /// `A - A ⊆ Bohr(LSpec(lA, eps) ∪ X, 2^-4)`
    pub containment_at_paper_radius: Option<bool>,
    pub empirical_dim: Option<DimensionEstimate>,
    /// `mu(B) / mu(A)`
    pub measure_ratio: Option<f64>,
    pub degeneracies: Vec<String>,
    pub failure: Option<String>,
}

impl FreimanReport {
    pub fn passes(&self) -> bool {
        self.containment == Some(true)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn run_freiman(a: &GroupSet, config: &FreimanConfig) -> Result<FreimanReport> {
    config.validate()?;
    if a.is_empty() {
        return Err(Error::EmptySet("Freiman input set"));
    }
    let g = a.group();
    let profile = growth_profile(a, config.d, config.n_scan)?;
    let mut report = FreimanReport {
        mode: config.mode,
        d: config.d,
        group: g.cycles().to_vec(),
        set_size: a.len(),
        growth: GrowthSummary {
            window_start: profile.window_start,
            scanned_to: config.n_scan,
            hypothesis_holds: profile.hypothesis_holds(),
            first_violation: profile.first_violation().map(|r| r.n),
        },
        l_window: l_window(config.d),
        ratio_bound: config.ratio_bound(),
        l: None,
        k_l: None,
        d_prime: None,
        c: config.c,
        epsilon_formula: None,
        epsilon_requested: None,
        epsilon: None,
        cover_attempts: Vec::new(),
        spectrum: None,
        x: Vec::new(),
        radius: None,
        frequency_count: None,
        bohr_size: None,
        chain: None,
        containment: None,
        containment_at_paper_radius: None,
        empirical_dim: None,
        measure_ratio: None,
        degeneracies: Vec::new(),
        failure: None,
    };

    let choice = match config.l {
        Some(l) => {
            let m = iterated_measures(a, l)?;
            LChoice { l, k_l: m[l - 1] as f64 / m[l - 2] as f64 }
        }
        None => match find_l(a, config.d, config.ratio_bound())? {
            Some(c) => c,
            None => {
                report.failure = Some("no l in the window meets the ratio bound".into());
                return Ok(report);
            }
        },
    };
    report.l = Some(choice.l);
    report.k_l = Some(choice.k_l);
    let la = a.iterate(choice.l)?;
    let d_prime = growth_exponent(&la, config.n_scan)?;
    report.d_prime = Some(d_prime);
    let formula = paper_epsilon(d_prime, config.c);
    report.epsilon_formula = formula;

    let requested = match (config.mode, config.epsilon) {
        (Mode::Empirical, Some(e)) => e,
        (_, _) => match formula {
            Some(e) if e <= 0.5 => e,
            _ => {
                let note = format!("epsilon formula gives {formula:?} for d' = {d_prime}; outside (0, 1/2]");
                if config.mode == Mode::Empirical {
                    return Err(Error::InvalidParameter(format!("{note}; pass an explicit epsilon")));
                }
                report.degeneracies.push(format!("{note}; clamped to 1/2"));
                0.5
            }
        },
    };
    report.epsilon_requested = Some(requested);

    let spectral = SpectralProfile::new(&la)?;
    let mut epsilon = requested;
    let mut cover = spectrum_cover(&spectral, epsilon)?;
    report.cover_attempts.push(cover.clone());
    for _ in 0..config.max_retries {
        if cover.succeeded() {
            break;
        }
        epsilon /= 2.0;
        cover = spectrum_cover(&spectral, epsilon)?;
        report.cover_attempts.push(cover.clone());
    }
    if cover.escaped {
        report.degeneracies.push(format!(
            "spectrum cover escaped for every epsilon down to {epsilon}; continuing with X empty"
        ));
    }
    report.epsilon = Some(epsilon);

    let spectrum = spectral.lspec(epsilon)?;
    if spectrum.members().len() == 1 {
        report.degeneracies.push("LSpec(lA, eps) is the trivial character alone".into());
    }
    report.spectrum = Some(SpectrumSummary {
        delta: epsilon,
        threshold: spectrum.threshold(),
        size: spectrum.members().len(),
        members: spectrum.members().elements(),
    });
    report.x = cover.x.clone();
    let x_set = GroupSet::from_indices(g, cover.x_indices.iter().copied())?;
    let frequencies = spectrum.members().union(&x_set)?;
    report.frequency_count = Some(frequencies.len());

    let inner_radius = 4.0 * epsilon * (2.0 * choice.k_l).sqrt();
    let radius = match (config.mode, config.radius) {
        (Mode::Paper, _) => PAPER_RADIUS,
        (Mode::Empirical, Some(r)) => r,
        (Mode::Empirical, None) => PAPER_RADIUS.max(inner_radius),
    };
    report.radius = Some(radius);
    let ball = bohr_set(&frequencies, radius)?.into_members();
    report.bohr_size = Some(ball.len());
    if ball.is_full() {
        report.degeneracies.push("the containing ball is the whole group".into());
    }
    if epsilon > 0.5 {
        report.degeneracies.push("2 eps exceeds 1, outside the range of the difference-set bound".into());
    }

    let diff = a.difference_set(a)?;
    let wide = spectral.lspec(2.0 * epsilon)?.into_members();
    let wide_inner = bohr_set(&wide, inner_radius)?.into_members();
    let wide_outer = bohr_set(&wide, radius)?.into_members();
    let chain = ChainAudit {
        inner_radius,
        difference_in_wide: diff.is_subset(&wide_inner)?,
        wide_radius_nesting: wide_inner.is_subset(&wide_outer)?,
        wide_in_ball: wide_outer.is_subset(&ball)?,
    };
    if !chain.wide_radius_nesting {
        report
            .degeneracies
            .push(format!("inner radius {inner_radius} exceeds the ball radius {radius}"));
    }
    report.chain = Some(chain);
    report.containment = Some(diff.is_subset(&ball)?);
    report.containment_at_paper_radius =
        Some(diff.is_subset(&bohr_set(&frequencies, PAPER_RADIUS)?.into_members())?);

    let family = |r: f64| bohr_set(&frequencies, r).expect("radius is nonnegative").into_members();
    let grid = default_grid(family, radius, config.dim_depth);
    report.empirical_dim = Some(dimension_estimate(family, &grid)?);
    report.measure_ratio = Some(ball.len() as f64 / a.len() as f64);
    Ok(report)
}
