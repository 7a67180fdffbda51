//! Rotational surfaces in the 3-sphere `S³_c` whose induced metric is a
//! member of the spherical family.
//!
//! The profile curve is `α(s) = (r cos θ, r sin θ, f, 0)` with
//! `r = √(1/c - f²)`, and the surface is swept by rotating the `(z, w)` plane.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate, QuadratureConfig};
use crate::numerics::rational::{convergents, gcd};
use crate::numerics::roots::{brent, BrentConfig};
use crate::spherical_family::{Classification, SphericalParams, SphericalProfile};

/// Default tolerance on `|qΘ - 2πp|`.
pub const CLOSURE_TOL: f64 = 1e-8;
/// Default largest denominator tried by [`detect_closure`].
pub const DEFAULT_Q_MAX: u64 = 50;
/// Gap above which a profile is declared not to close.
pub const SEAM_LIMIT: f64 = 1e-6;

fn not_immersible(params: &SphericalParams) -> Error {
    Error::NotImmersible {
        c: params.c,
        m: params.m,
        ell: params.ell,
    }
}

/// Profiles whose image fits in `S³_c`: the Λ' region, plus the constant
/// profiles with `f² < 1/c`.
pub fn check_immersible(params: &SphericalParams) -> Result<()> {
    match params.classification() {
        Classification::InteriorLambdaPrime => Ok(()),
        Classification::BoundaryConstant if params.c * params.m < 1.0 => Ok(()),
        _ => Err(not_immersible(params)),
    }
}

fn theta_quadrature() -> QuadratureConfig {
    // Absolute 1e-12; the relative term only binds when Θ is large enough
    // that the absolute target is below the rounding floor of the sum.
    QuadratureConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-13,
        max_intervals: 4000,
    }
}

/// `θ'` as a function of `g = f²`.
fn rate_from_g(c: f64, m: f64, ell: f64, g: f64) -> f64 {
    let num = (m + (1.0 - 2.0 * ell) * g).max(0.0);
    c.sqrt() * num.sqrt() / (g.sqrt() * (1.0 - c * g))
}

/// `θ'(s) = √c·√(m + (1 - 2ℓ)f²) / (f (1 - c f²))`.
pub fn theta_rate(params: &SphericalParams, s: f64) -> Result<f64> {
    check_immersible(params)?;
    let prof = SphericalProfile::new(params)?;
    Ok(rate_from_g(params.c, params.m, params.ell, prof.g_jet(s)[0]))
}

/// The rotation angle `θ`, its advance `Θ` per period of `f`, and bounds
/// `S1 ≤ θ' ≤ S2`.
#[derive(Debug, Clone)]
pub struct ThetaProfile {
    params: SphericalParams,
    profile: SphericalProfile,
    big_theta: f64,
    s1: f64,
    s2: f64,
    quad: QuadratureConfig,
}

impl ThetaProfile {
    pub fn new(params: &SphericalParams) -> Result<Self> {
        check_immersible(params)?;
        let profile = SphericalProfile::new(params)?;
        let (s1, s2) = slack_bounds(params);
        let mut out = Self {
            params: *params,
            profile,
            big_theta: f64::NAN,
            s1,
            s2,
            quad: theta_quadrature(),
        };
        out.big_theta = out.theta_between(0.0, params.period())?;
        Ok(out)
    }

    pub fn params(&self) -> &SphericalParams {
        &self.params
    }

    pub fn profile(&self) -> &SphericalProfile {
        &self.profile
    }

    /// Period `π/√c` of `f`.
    pub fn period(&self) -> f64 {
        self.params.period()
    }

    /// `Θ = θ(π/√c)`.
    pub fn big_theta(&self) -> f64 {
        self.big_theta
    }

    /// `(S1, S2)`.
    pub fn slack_bounds(&self) -> (f64, f64) {
        (self.s1, self.s2)
    }

    pub fn rate(&self, s: f64) -> f64 {
        let p = &self.params;
        rate_from_g(p.c, p.m, p.ell, self.profile.g_jet(s)[0])
    }

    /// `θ(s)`, integrated from 0.
    pub fn theta(&self, s: f64) -> Result<f64> {
        self.theta_between(0.0, s)
    }

    /// `∫ₐᵇ θ'`. The range is split at the extrema of `f`, where the
    /// integrand concentrates as `c f²` approaches 1.
    pub fn theta_between(&self, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        if a > b {
            return Ok(-self.theta_between(b, a)?);
        }
        let w = 2.0 * self.params.c.sqrt();
        let phase = self.params.phase;
        // extrema at w s + phase = π/2 + kπ
        let k0 = ((w * a + phase - 0.5 * PI) / PI).floor() as i64 + 1;
        let mut total = 0.0;
        let mut lo = a;
        let mut k = k0;
        loop {
            let brk = ((k as f64) * PI + 0.5 * PI - phase) / w;
            let hi = if brk < b { brk } else { b };
            if hi > lo {
                total += integrate(|s| self.rate(s), lo, hi, &self.quad)?.value;
            }
            if hi >= b {
                break;
            }
            lo = hi;
            k += 1;
        }
        Ok(total)
    }

    /// `θ` at each point of an ascending grid, accumulated interval by interval.
    pub fn theta_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(grid.len());
        let mut prev_s = 0.0;
        let mut acc = 0.0;
        for &s in grid {
            acc += self.theta_between(prev_s, s)?;
            prev_s = s;
            out.push(acc);
        }
        Ok(out)
    }

    /// `α(s)` given `θ(s)`.
    pub fn profile_point_at(&self, s: f64, theta: f64) -> [f64; 4] {
        let g = self.profile.g_jet(s)[0];
        let r = (1.0 / self.params.c - g).max(0.0).sqrt();
        let (sin, cos) = theta.sin_cos();
        [r * cos, r * sin, g.sqrt(), 0.0]
    }

    /// `X(s, t)` given `θ(s)`.
    pub fn surface_point_at(&self, s: f64, theta: f64, t: f64) -> [f64; 4] {
        let [x, y, f, _] = self.profile_point_at(s, theta);
        let (sin, cos) = t.sin_cos();
        [x, y, f * cos, f * sin]
    }
}

/// `θ' = √c·N(g)/D(g)` with `N = √(m + (1 - 2ℓ)g)` monotone in `g` and
/// `D = √g (1 - cg)` maximal at `g = 1/(3c)`.
fn slack_bounds(p: &SphericalParams) -> (f64, f64) {
    let (glo, ghi) = p.f2_range();
    let num = |g: f64| (p.m + (1.0 - 2.0 * p.ell) * g).max(0.0).sqrt();
    let den = |g: f64| g.sqrt() * (1.0 - p.c * g);
    let (n1, n2) = (num(glo), num(ghi));
    let (d1, d2) = (den(glo), den(ghi));
    let g_star = 1.0 / (3.0 * p.c);
    let dmax = if g_star > glo && g_star < ghi {
        den(g_star)
    } else {
        d1.max(d2)
    };
    let dmin = d1.min(d2);
    let sc = p.c.sqrt();
    (sc * n1.min(n2) / dmax, sc * n1.max(n2) / dmin)
}

pub fn theta(params: &SphericalParams, s: f64) -> Result<f64> {
    ThetaProfile::new(params)?.theta(s)
}

pub fn big_theta(params: &SphericalParams) -> Result<f64> {
    Ok(ThetaProfile::new(params)?.big_theta())
}

/// Boundary behaviour of `Θ` on the immersible region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ThetaLimit {
    /// `m → ℓ²/c` at fixed `ℓ ∈ (0, 1)`: `π/√(1 - ℓ)`.
    MToEllSquared { ell: f64 },
    /// `m → 0` at fixed `ℓ ∈ (0, 1/2]`: `π`.
    MToZero { ell: f64 },
    /// `ℓ → (cm + 1)/2` at fixed `m ∈ (0, 1/c)`: `+∞`.
    EllToUpper { m: f64 },
    /// `ℓ → √(cm)` at fixed `m ∈ (0, 1/c)`: `π/√(1 - √(cm))`.
    EllToLower { m: f64 },
}

/// Closed-form limit of `Θ`; `Θ(c, m, ℓ) = Θ(1, cm, ℓ)`, so `c` enters only
/// through `cm`. Returns `f64::INFINITY` for the divergent edge.
pub fn theta_limits(c: f64, which: ThetaLimit) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Range(format!("c = {c} must be positive")));
    }
    let in_m_range = |m: f64| m > 0.0 && c * m < 1.0;
    match which {
        ThetaLimit::MToEllSquared { ell } if ell > 0.0 && ell < 1.0 => Ok(PI / (1.0 - ell).sqrt()),
        ThetaLimit::MToZero { ell } if ell > 0.0 && ell <= 0.5 => Ok(PI),
        ThetaLimit::EllToUpper { m } if in_m_range(m) => Ok(f64::INFINITY),
        ThetaLimit::EllToLower { m } if in_m_range(m) => Ok(PI / (1.0 - (c * m).sqrt()).sqrt()),
        other => Err(Error::Range(format!("{other:?} is outside its range for c = {c}"))),
    }
}

/// A rational closure `qΘ = 2πp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub p: u64,
    pub q: u64,
    pub embedded: bool,
}

impl ClosureResult {
    /// Reduces `p/q`. Both must be positive.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Range(format!("closure p/q = {p}/{q} needs positive integers")));
        }
        let d = gcd(p, q);
        let (p, q) = (p / d, q / d);
        Ok(Self {
            p,
            q,
            embedded: p == 1,
        })
    }

    /// `2πp/q`.
    pub fn target(&self) -> f64 {
        TAU * self.p as f64 / self.q as f64
    }

    pub fn defect(&self, big_theta: f64) -> f64 {
        (self.q as f64 * big_theta - TAU * self.p as f64).abs()
    }
}

/// First convergent `p/q` of `Θ/2π` with `p ≥ 1`, `q ≤ q_max` and
/// `|qΘ - 2πp| ≤ tol`.
pub fn detect_closure(big_theta: f64, q_max: u64, tol: f64) -> Option<ClosureResult> {
    if !(big_theta > 0.0 && big_theta.is_finite()) || q_max == 0 {
        return None;
    }
    convergents(big_theta / TAU)
        .take_while(|&(_, q)| q <= q_max)
        .filter(|&(p, _)| p > 0)
        .find(|&(p, q)| (q as f64 * big_theta - TAU * p as f64).abs() <= tol)
        .map(|(p, q)| ClosureResult {
            p,
            q,
            embedded: p == 1,
        })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub samples: usize,
    /// Required `|Θ - Θ*|`.
    pub tol: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            samples: 64,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolvedRoot {
    pub ell: f64,
    pub theta: f64,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    /// Smallest root.
    pub ell: f64,
    pub theta: f64,
    pub target: f64,
    pub closure: ClosureResult,
    /// Every root found, in increasing `ℓ`.
    pub roots: Vec<SolvedRoot>,
    /// Scan interval `(√(cm) + δ, (cm + 1)/2 - δ)`.
    pub scan_range: (f64, f64),
}

pub fn solve_for_ell(c: f64, m: f64, p: u64, q: u64) -> Result<SolveOutcome> {
    solve_for_ell_with(c, m, p, q, &SolveConfig::default())
}

/// Finds `ℓ` with `Θ(c, m, ℓ) = 2πp/q`.
///
/// `Θ` is sampled across the admissible `ℓ` interval, every sign change of
/// `Θ - Θ*` is refined with Brent's method, and the smallest root is
/// returned. No monotonicity in `ℓ` is assumed.
pub fn solve_for_ell_with(c: f64, m: f64, p: u64, q: u64, cfg: &SolveConfig) -> Result<SolveOutcome> {
    if !(c > 0.0 && c.is_finite() && m > 0.0 && c * m < 1.0) {
        return Err(Error::NotImmersible { c, m, ell: f64::NAN });
    }
    let closure = ClosureResult::new(p, q)?;
    let target = closure.target();
    let cm = c * m;
    let delta = 1e-9 * (1.0 + cm);
    let lo = cm.sqrt() + delta;
    let hi = 0.5 * (cm + 1.0) - delta;
    let n = cfg.samples.max(2);

    let eval = |ell: f64| -> Result<f64> {
        let params = SphericalParams::new(c, m, ell)?;
        Ok(ThetaProfile::new(&params)?.big_theta() - target)
    };

    let grid: Vec<f64> = (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect();
    let values: Vec<Option<f64>> = grid.iter().map(|&l| eval(l).ok()).collect();

    let brent_cfg = BrentConfig {
        x_tol: 0.0,
        f_tol: 0.1 * cfg.tol,
        max_iter: 200,
    };
    let mut roots = Vec::new();
    for k in 0..n - 1 {
        let (Some(fa), Some(fb)) = (values[k], values[k + 1]) else {
            continue;
        };
        let (a, b) = (grid[k], grid[k + 1]);
        let root = if fa == 0.0 {
            a
        } else if fb == 0.0 {
            if k + 2 < n {
                continue; // picked up as the left end of the next bracket
            }
            b
        } else if fa.signum() != fb.signum() {
            let mut failure = None;
            let r = brent(
                |l| match eval(l) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                a,
                b,
                &brent_cfg,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            r?.x
        } else {
            continue;
        };
        let residual = eval(root)?;
        if residual.abs() > cfg.tol {
            return Err(Error::RootFinding(format!(
                "refined ell = {root} leaves |Theta - target| = {:e}",
                residual.abs()
            )));
        }
        roots.push(SolvedRoot {
            ell: root,
            theta: residual + target,
            bracket: (a, b),
        });
    }

    let first = *roots.first().ok_or(Error::NoBracket { target, lo, hi })?;
    Ok(SolveOutcome {
        ell: first.ell,
        theta: first.theta,
        target,
        closure,
        roots,
        scan_range: (lo, hi),
    })
}

/// Both evaluations of the mean curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCurvature {
    /// `(f f'' + f'² + 2cf² - 1) / (2f √(1 - cf² - f'²))`.
    pub raw: f64,
    /// `(2ℓ - 1) / (2√(m + (1 - 2ℓ)f²))`.
    pub simplified: f64,
}

pub fn mean_curvature_pair(params: &SphericalParams, s: f64) -> Result<MeanCurvature> {
    check_immersible(params)?;
    let prof = SphericalProfile::new(params)?;
    let (c, m, ell) = (params.c, params.m, params.ell);
    let (f, df, d2f) = prof.jet(s);
    let slack = 1.0 - c * f * f - df * df;
    let raw = (f * d2f + df * df + 2.0 * c * f * f - 1.0) / (2.0 * f * slack.sqrt());
    let simplified = (2.0 * ell - 1.0) / (2.0 * (m + (1.0 - 2.0 * ell) * f * f).sqrt());
    Ok(MeanCurvature { raw, simplified })
}

/// Mean curvature of the rotational surface along the profile.
pub fn mean_curvature(params: &SphericalParams, s: f64) -> Result<f64> {
    let h = mean_curvature_pair(params, s)?;
    debug_assert!(
        (h.raw - h.simplified).abs() <= 1e-11 * (1.0 + h.simplified.abs()),
        "mean curvature forms disagree: {h:?}"
    );
    Ok(h.raw)
}

pub fn profile_point(params: &SphericalParams, s: f64) -> Result<[f64; 4]> {
    let tp = ThetaProfile::new(params)?;
    Ok(tp.profile_point_at(s, tp.theta(s)?))
}

pub fn surface_point(params: &SphericalParams, s: f64, t: f64) -> Result<[f64; 4]> {
    let tp = ThetaProfile::new(params)?;
    Ok(tp.surface_point_at(s, tp.theta(s)?, t))
}

/// Projection of `S³_c` from `(0, 0, 0, -1/√c)` after scaling to the unit sphere.
pub fn stereographic(point: [f64; 4], c: f64) -> Result<[f64; 3]> {
    let k = c.sqrt();
    let denom = 1.0 + k * point[3];
    if denom.abs() < 1e-12 {
        return Err(Error::PoleSingularity(denom));
    }
    Ok([k * point[0] / denom, k * point[1] / denom, k * point[2] / denom])
}

/// Inverse of [`stereographic`].
pub fn inverse_stereographic(p: [f64; 3], c: f64) -> [f64; 4] {
    let rho = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    let k = 1.0 / (c.sqrt() * (1.0 + rho));
    [2.0 * p[0] * k, 2.0 * p[1] * k, 2.0 * p[2] * k, (1.0 - rho) * k]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub s: f64,
    pub theta: f64,
    pub point: [f64; 4],
}

/// How often the closed curve wraps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winding {
    /// Turns around the rotation axis (`p`).
    pub turns: u64,
    /// Periods of `f` traversed (`q`).
    pub periods: u64,
}

/// Uniformly sampled profile curve, one closed circuit when `closure` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub params: SphericalParams,
    pub samples: Vec<ProfileSample>,
    pub closure: Option<ClosureResult>,
    pub winding: Option<Winding>,
    /// `|α(qπ/√c) - α(0)|` when closed.
    pub seam_gap: Option<f64>,
}

impl ProfileCurve {
    /// Samples `α` at `n` points of `[0, periods·π/√c)`.
    pub fn sample(tp: &ThetaProfile, periods: u64, n: usize) -> Result<Self> {
        if n == 0 || periods == 0 {
            return Err(Error::Range("profile needs n >= 1 and at least one period".into()));
        }
        let span = periods as f64 * tp.period();
        let grid: Vec<f64> = (0..n).map(|i| span * i as f64 / n as f64).collect();
        let thetas = tp.theta_grid(&grid)?;
        let samples = grid
            .iter()
            .zip(&thetas)
            .map(|(&s, &theta)| ProfileSample {
                s,
                theta,
                point: tp.profile_point_at(s, theta),
            })
            .collect();
        Ok(Self {
            params: *tp.params(),
            samples,
            closure: None,
            winding: None,
            seam_gap: None,
        })
    }

    /// Closed curve over `closure.q` periods; fails with `SeamMismatch` when
    /// the end does not return to the start.
    pub fn closed(tp: &ThetaProfile, closure: &ClosureResult, n: usize) -> Result<Self> {
        let mut curve = Self::sample(tp, closure.q, n)?;
        let span = closure.q as f64 * tp.period();
        let end_theta = closure.q as f64 * tp.big_theta();
        let end = tp.profile_point_at(span, end_theta);
        let start = curve.samples[0].point;
        let gap = dist4(&end, &start);
        if !(gap <= SEAM_LIMIT) {
            return Err(Error::SeamMismatch {
                gap,
                limit: SEAM_LIMIT,
            });
        }
        curve.closure = Some(*closure);
        curve.winding = Some(Winding {
            turns: closure.p,
            periods: closure.q,
        });
        curve.seam_gap = Some(gap);
        Ok(curve)
    }

    /// Projection to the `(x, y)` plane of the totally geodesic sphere.
    pub fn planar(&self) -> Vec<[f64; 2]> {
        self.samples.iter().map(|p| [p.point[0], p.point[1]]).collect()
    }
}

fn dist4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Index gap below which two polyline vertices count as neighbours when
/// measuring the smallest feature.
const FEATURE_WINDOW: usize = 8;

/// True when the closed planar polyline has no self-intersection.
///
/// A crossing is conclusive. Without one, the answer is only trusted when
/// non-neighbouring parts of the curve stay at least four sample spacings
/// apart; otherwise `ResolutionWarning` is returned.
pub fn polyline_is_simple(points: &[[f64; 2]]) -> Result<bool> {
    let n = points.len();
    if n < 4 {
        return Err(Error::Range(format!("closed polyline needs at least 4 points, got {n}")));
    }
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let bbox = |(a, b): ([f64; 2], [f64; 2])| {
        [a[0].min(b[0]), a[0].max(b[0]), a[1].min(b[1]), a[1].max(b[1])]
    };
    let boxes: Vec<[f64; 4]> = (0..n).map(|i| bbox(seg(i))).collect();

    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                continue;
            }
            let (p1, p2) = seg(i);
            let (q1, q2) = seg(j);
            if segments_cross(p1, p2, q1, q2) {
                return Ok(false);
            }
        }
    }

    let spacing = (0..n)
        .map(|i| {
            let (a, b) = seg(i);
            (a[0] - b[0]).hypot(a[1] - b[1])
        })
        .fold(0.0, f64::max);
    let mut feature = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i).min(n - (j - i));
            if gap <= FEATURE_WINDOW {
                continue;
            }
            let d = (points[i][0] - points[j][0]).hypot(points[i][1] - points[j][1]);
            feature = feature.min(d);
        }
    }
    if feature < 4.0 * spacing {
        return Err(Error::ResolutionWarning { feature, spacing });
    }
    Ok(true)
}

/// Numerical embeddedness check of the closed profile curve.
pub fn profile_simple_check(
    params: &SphericalParams,
    closure: Option<&ClosureResult>,
    n_samples: usize,
) -> Result<bool> {
    let closure = closure.ok_or_else(|| {
        Error::ClosureMismatch("profile_simple_check needs a closed profile (no closure given)".into())
    })?;
    let tp = ThetaProfile::new(params)?;
    let curve = ProfileCurve::closed(&tp, closure, n_samples)?;
    polyline_is_simple(&curve.planar())
}
