//! Gaussian Z interference channel with a rate-limited cooperative link.
//!
//! Receiver 1 sees `hd*x1 + hc*x2 + z1`, receiver 2 sees `hd*x2 + z2`, both
//! inputs are limited to power `P`, and transmitter 2 can push `CG` bits per
//! use to transmitter 1. All rates are in bits per channel use.
//!
//! The achievable scheme splits transmitter 2's message into a stochastically
//! encoded private part (power `Pp2`) and a cooperative part (power `Pcp2`)
//! that transmitter 1 cancels at receiver 1. Transmitter 1 adds its own data
//! (`Pp1`) and artificial noise (`Pa1`).

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, ZicError};

/// Relative slack used when checking power constraints.
const POWER_TOL: f64 = 1e-12;

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussConfig {
    p: f64,
    hd: f64,
    hc: f64,
    cg: f64,
}

impl GaussConfig {
    pub fn new(p: f64, hd: f64, hc: f64, cg: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(invalid(format!("power P must be positive, got {p}")));
        }
        if !hd.is_finite() || hd == 0.0 {
            return Err(invalid(format!("direct gain hd must be nonzero, got {hd}")));
        }
        if !hc.is_finite() {
            return Err(invalid(format!("cross gain hc must be finite, got {hc}")));
        }
        if !(cg.is_finite() && cg >= 0.0) {
            return Err(invalid(format!("CG must be nonnegative, got {cg}")));
        }
        Ok(Self { p, hd, hc, cg })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn hd(&self) -> f64 {
        self.hd
    }

    pub fn hc(&self) -> f64 {
        self.hc
    }

    pub fn cg(&self) -> f64 {
        self.cg
    }

    pub fn snr(&self) -> f64 {
        self.hd * self.hd * self.p
    }

    pub fn inr(&self) -> f64 {
        self.hc * self.hc * self.p
    }

    pub fn with_cg(&self, cg: f64) -> Result<Self> {
        Self::new(self.p, self.hd, self.hc, cg)
    }
}

/// One point of a secure sum-GDOF curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GdofPoint {
    pub kappa: f64,
    pub gamma: f64,
    pub dsum: f64,
}

/// Power control (`beta`) and rate splitting (`theta`, `lambda`) parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodebookParams {
    pub theta1: f64,
    pub theta2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl CodebookParams {
    fn validate(&self) -> Result<()> {
        let named = [
            ("theta1", self.theta1),
            ("theta2", self.theta2),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
        ];
        for (name, v) in named {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    pub pp1: f64,
    pub pa1: f64,
    pub pp2: f64,
    pub pcp2: f64,
}

impl PowerSplit {
    /// Transmitter power budgets `Pp2 + hd^2 Pcp2 <= P` and
    /// `Pp1 + hc^2 Pcp2 + Pa1 <= P`, all parts nonnegative.
    pub fn check(&self, cfg: &GaussConfig) -> Result<()> {
        let parts = [self.pp1, self.pa1, self.pp2, self.pcp2];
        if parts.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(invalid(format!("negative or non-finite power in {self:?}")));
        }
        let limit = cfg.p * (1.0 + POWER_TOL);
        let tx2 = self.pp2 + cfg.hd * cfg.hd * self.pcp2;
        let tx1 = self.pp1 + cfg.hc * cfg.hc * self.pcp2 + self.pa1;
        if tx2 > limit {
            return Err(invalid(format!(
                "transmitter 2 uses power {tx2} above P = {}",
                cfg.p
            )));
        }
        if tx1 > limit {
            return Err(invalid(format!(
                "transmitter 1 uses power {tx1} above P = {}",
                cfg.p
            )));
        }
        Ok(())
    }
}

/// Splits a total between two parts in proportion `a : b`, evenly when both
/// weights are zero.
fn proportion(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if s == 0.0 {
        (0.5, 0.5)
    } else {
        (a / s, b / s)
    }
}

pub fn power_allocation(cfg: &GaussConfig, params: &CodebookParams) -> Result<PowerSplit> {
    params.validate()?;
    let p1 = params.beta1 * cfg.p;
    let p2 = params.beta2 * cfg.p;
    let (l1, l2) = proportion(params.lambda1, params.lambda2);
    let pcp2 = l2 * p2 / (cfg.hd * cfg.hd);
    let pp2 = l1 * p2;
    let remaining = (p1 - cfg.hc * cfg.hc * pcp2).max(0.0);
    let (t1, t2) = proportion(params.theta1, params.theta2);
    Ok(PowerSplit {
        pp1: t1 * remaining,
        pa1: t2 * remaining,
        pp2,
        pcp2,
    })
}

/// Rate lost by user 2 to stochastic encoding: what receiver 1 could learn
/// about the private codeword, `0.5 log2(1 + hc^2 Pp2 / (1 + hd^2 Pa1))`.
pub fn stochastic_encoding_loss(cfg: &GaussConfig, ps: &PowerSplit) -> f64 {
    let (hd2, hc2) = (cfg.hd * cfg.hd, cfg.hc * cfg.hc);
    half_log2(1.0 + hc2 * ps.pp2 / (1.0 + hd2 * ps.pa1))
}

pub fn rate_pair(cfg: &GaussConfig, ps: &PowerSplit) -> Result<(f64, f64)> {
    ps.check(cfg)?;
    let (hd2, hc2) = (cfg.hd * cfg.hd, cfg.hc * cfg.hc);
    let r1 = half_log2(1.0 + hd2 * ps.pp1 / (1.0 + hd2 * ps.pa1 + hc2 * ps.pp2));
    let joint = half_log2(1.0 + hd2 * ps.pp2 + hd2 * hd2 * ps.pcp2);
    let split = half_log2(1.0 + hd2 * ps.pp2) + cfg.cg.min(half_log2(1.0 + hd2 * hd2 * ps.pcp2));
    let r2 = (joint.min(split) - stochastic_encoding_loss(cfg, ps)).max(0.0);
    Ok((r1, r2))
}

/// Samples per codebook parameter for [`achievable_region`].
///
/// A count of 1 pins a power-control parameter at full power (`beta = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub theta1: usize,
    pub theta2: usize,
    pub beta1: usize,
    pub beta2: usize,
    pub lambda1: usize,
    pub lambda2: usize,
}

pub const DEFAULT_GRID_DENSITY: usize = 17;

impl GridSpec {
    pub fn uniform(samples: usize) -> Self {
        Self {
            theta1: samples,
            theta2: samples,
            beta1: samples,
            beta2: samples,
            lambda1: samples,
            lambda2: samples,
        }
    }

    /// Same density for the splitting parameters, both transmitters at full power.
    pub fn full_power(samples: usize) -> Self {
        Self {
            beta1: 1,
            beta2: 1,
            ..Self::uniform(samples)
        }
    }

    fn validate(&self) -> Result<()> {
        let split = [self.theta1, self.theta2, self.lambda1, self.lambda2];
        if split.iter().any(|&c| c < 2) {
            return Err(invalid("splitting parameters need at least 2 samples each"));
        }
        if self.beta1 == 0 || self.beta2 == 0 {
            return Err(invalid("power parameters need at least 1 sample each"));
        }
        Ok(())
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_DENSITY)
    }
}

fn samples(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![1.0];
    }
    (0..count).map(|i| i as f64 / (count - 1) as f64).collect()
}

/// Evaluates the grid in parallel chunks, reducing each chunk with `reduce`.
fn sweep<T, F>(cfg: &GaussConfig, grid: &GridSpec, reduce: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Vec<(f64, f64)>) -> T + Sync,
{
    grid.validate()?;
    let (t1, t2, b1, b2, l1, l2) = (
        samples(grid.theta1),
        samples(grid.theta2),
        samples(grid.beta1),
        samples(grid.beta2),
        samples(grid.lambda1),
        samples(grid.lambda2),
    );
    let mut outer = Vec::with_capacity(b1.len() * b2.len() * l1.len());
    for &beta1 in &b1 {
        for &beta2 in &b2 {
            for &lambda1 in &l1 {
                outer.push((beta1, beta2, lambda1));
            }
        }
    }
    outer
        .par_iter()
        .map(|&(beta1, beta2, lambda1)| {
            let mut pts = Vec::with_capacity(l2.len() * t1.len() * t2.len());
            for &lambda2 in &l2 {
                for &theta1 in &t1 {
                    for &theta2 in &t2 {
                        let params = CodebookParams {
                            theta1,
                            theta2,
                            beta1,
                            beta2,
                            lambda1,
                            lambda2,
                        };
                        let ps = power_allocation(cfg, &params)?;
                        if ps.check(cfg).is_ok() {
                            pts.push(rate_pair(cfg, &ps)?);
                        }
                    }
                }
            }
            Ok(reduce(pts))
        })
        .collect()
}

/// Every rate pair reached on the parameter grid. Grid points whose split
/// breaks transmitter 1's power budget are skipped.
pub fn rate_cloud(cfg: &GaussConfig, grid: &GridSpec) -> Result<Vec<(f64, f64)>> {
    Ok(sweep(cfg, grid, |pts| pts)?.into_iter().flatten().collect())
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Pareto frontier of the time-sharing closure of `cloud`, listed
/// counterclockwise from `(max R1, 0)` to `(0, max R2)`.
pub fn upper_right_hull(cloud: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let r1_max = cloud.iter().map(|p| p.0).fold(0.0, f64::max);
    let r2_max = cloud.iter().map(|p| p.1).fold(0.0, f64::max);
    let mut pts: Vec<(f64, f64)> = cloud
        .iter()
        .copied()
        .chain([(0.0, 0.0), (r1_max, 0.0), (0.0, r2_max)])
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    pts.dedup();

    // Upper chain, left to right.
    let mut chain: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        if chain.last().is_some_and(|l| l.0 == p.0) {
            continue;
        }
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) >= 0.0 {
            chain.pop();
        }
        chain.push(p);
    }
    if chain.last().is_some_and(|l| l.1 > 0.0) {
        chain.push((r1_max, 0.0));
    }
    chain.reverse();
    chain
}

/// Frontier of the achievable region, see [`upper_right_hull`].
pub fn achievable_region(cfg: &GaussConfig, grid: &GridSpec) -> Result<Vec<(f64, f64)>> {
    // Hull of per-chunk hulls: the full cloud can run to millions of points.
    let partial: Vec<(f64, f64)> = sweep(cfg, grid, |pts| upper_right_hull(&pts))?
        .into_iter()
        .flatten()
        .collect();
    Ok(upper_right_hull(&partial))
}

/// Height of a frontier (as returned by [`upper_right_hull`]) at `r1`.
pub fn frontier_height(frontier: &[(f64, f64)], r1: f64) -> f64 {
    let mut best: f64 = 0.0;
    for w in frontier.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        let (left, right) = (lo.0.min(hi.0), lo.0.max(hi.0));
        if r1 < left || r1 > right {
            continue;
        }
        let y = if right == left {
            lo.1.max(hi.1)
        } else {
            lo.1 + (hi.1 - lo.1) * (r1 - lo.0) / (hi.0 - lo.0)
        };
        best = best.max(y);
    }
    best
}

/// Closed-form sum rate of the achievable scheme under the allocation
/// `Pp1 = P/2, Pp2 = 1/hc^2, Pcp2 = (P - 1/hc^2)/2, Pa1 = 0`, after
/// normalizing to `hd = 1` (so `P = SNR`, `hc^2 = INR/SNR`).
///
/// Requires `1 <= INR` so that `Pcp2 >= 0`.
pub fn gap_allocation_sum_rate(snr: f64, inr: f64, cg: f64) -> f64 {
    let pp1 = snr / 2.0;
    let pp2 = snr / inr;
    let pcp2 = (snr - pp2) / 2.0;
    // hc^2 * Pp2 = 1 by construction.
    let leak = 1.0;
    let i1 = half_log2(1.0 + pp2 + pcp2);
    let i2 = half_log2(1.0 + pp2) + cg.min(half_log2(1.0 + pcp2));
    half_log2(1.0 + pp1 / (1.0 + leak)) + i1.min(i2) - half_log2(1.0 + leak)
}

/// The allocation used by [`gap_allocation_sum_rate`], in the config's own gains.
pub fn gap_power_split(cfg: &GaussConfig) -> Result<PowerSplit> {
    check_gap_preconditions(cfg)?;
    let (hd2, hc2) = (cfg.hd * cfg.hd, cfg.hc * cfg.hc);
    // Normalized powers divided by hd^2 give the unnormalized ones.
    let snr = cfg.snr();
    let pp2_norm = snr / cfg.inr();
    let split = PowerSplit {
        pp1: snr / 2.0 / hd2,
        pa1: 0.0,
        pp2: pp2_norm / hd2,
        pcp2: (snr - pp2_norm) / 2.0 / (hd2 * hd2),
    };
    debug_assert!((hc2 * split.pp2 - 1.0).abs() < 1e-9);
    Ok(split)
}

fn check_gap_preconditions(cfg: &GaussConfig) -> Result<()> {
    let (snr, inr) = (cfg.snr(), cfg.inr());
    if inr <= 1.0 {
        return Err(ZicError::Precondition(format!(
            "hc^2 P > 1 required for the gap power allocation (INR = {inr})"
        )));
    }
    if inr >= snr {
        return Err(ZicError::Precondition(format!(
            "INR < SNR required (weak/moderate interference), got INR = {inr}, SNR = {snr}"
        )));
    }
    Ok(())
}

pub fn sum_rate_lower(cfg: &GaussConfig) -> Result<f64> {
    check_gap_preconditions(cfg)?;
    Ok(gap_allocation_sum_rate(cfg.snr(), cfg.inr(), cfg.cg))
}

/// Minimum of the closed-form sum-rate outer bounds.
///
/// The bound `log2(1+SNR) - 0.5 log2(1+INR) + CG` holds only for
/// `INR <= SNR` and is dropped outside that regime.
pub fn sum_rate_outer(cfg: &GaussConfig) -> f64 {
    let (snr, inr, cg) = (cfg.snr(), cfg.inr(), cfg.cg);
    let trivial = (1.0 + snr).log2();
    let cooperative = half_log2(1.0 + snr + inr + 2.0 * (snr * inr).sqrt())
        + half_log2(1.0 + snr / (1.0 + inr))
        + cg;
    let mut bound = trivial.min(cooperative);
    if inr <= snr {
        bound = bound.min((1.0 + snr).log2() - half_log2(1.0 + inr) + cg);
    }
    bound
}

pub fn gap(cfg: &GaussConfig) -> Result<f64> {
    Ok(sum_rate_outer(cfg) - sum_rate_lower(cfg)?)
}

/// Secure sum GDOF in the weak/moderate regime.
pub fn sum_gdof(kappa: f64, gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(invalid(format!("kappa = {kappa} outside [0, 1]")));
    }
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(invalid(format!("gamma = {gamma} must be nonnegative")));
    }
    Ok(2.0_f64.min(2.0 - kappa + gamma.min(1.0)))
}

/// Numerical GDOF estimate from the achievable sum rate.
///
/// Each SNR in `snr_list` gets `INR = SNR^kappa` and `CG = gamma * 0.5 log2 SNR`.
/// The estimate is the slope of the sum rate against `0.5 log2 SNR` between
/// the two largest usable SNRs, which cancels the constant offsets.
pub fn gdof_numeric(kappa: f64, gamma: f64, snr_list: &[f64]) -> Result<f64> {
    if snr_list.len() < 2 {
        return Err(invalid("need at least two SNR values"));
    }
    if snr_list.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(invalid("SNR list must be strictly increasing"));
    }
    let usable: Vec<(f64, f64)> = snr_list
        .iter()
        .filter_map(|&snr| {
            let inr = snr.powf(kappa);
            if !(1.0..=snr).contains(&inr) {
                warn!("skipping SNR = {snr}: INR = {inr} makes the allocation infeasible");
                return None;
            }
            let dof_unit = half_log2(snr);
            Some((dof_unit, gap_allocation_sum_rate(snr, inr, gamma * dof_unit)))
        })
        .collect();
    if usable.len() < 2 {
        return Err(ZicError::Precondition(format!(
            "only {} feasible SNR points for kappa = {kappa}",
            usable.len()
        )));
    }
    let (x0, y0) = usable[usable.len() - 2];
    let (x1, y1) = usable[usable.len() - 1];
    Ok((y1 - y0) / (x1 - x0))
}
