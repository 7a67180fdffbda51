//! The closed-form `a = 4` family
//! `f(s) = √((ℓ + √(ℓ² - cm) sin(2√c s + c₁)) / c)`.
//!
//! Every member solves `(f')² + c f² + m f⁻² = 2ℓ`, has period `π/√c` and
//! curvature `K = c - m f⁻⁴ < c`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::warped_geometry::{Interval, MetricProfile, Provenance};

/// Relative band around `ℓ² = cm` classified as the constant solution.
pub const BOUNDARY_TOL: f64 = 1e-14;

/// Where `(m, ℓ)` sits relative to the admissible sets for a given `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// `m > 0`, `ℓ > √(cm)`, but the profile does not fit inside `S³_c`.
    InteriorLambda,
    /// Additionally `m < 1/c` and `ℓ < (cm + 1)/2`.
    InteriorLambdaPrime,
    /// `ℓ² = cm`: the constant (flat) solution.
    BoundaryConstant,
    Outside,
}

impl Classification {
    /// In the metric family (closed form exists).
    pub fn in_family(self) -> bool {
        !matches!(self, Classification::Outside)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::InteriorLambda => "InteriorLambda",
            Classification::InteriorLambdaPrime => "InteriorLambdaPrime",
            Classification::BoundaryConstant => "BoundaryConstant",
            Classification::Outside => "Outside",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(c: f64, m: f64, ell: f64) -> Classification {
    if !(c > 0.0 && c.is_finite() && m > 0.0 && m.is_finite() && ell > 0.0 && ell.is_finite()) {
        return Classification::Outside;
    }
    let disc = ell * ell - c * m;
    if disc.abs() <= BOUNDARY_TOL * (1.0 + ell * ell) {
        return Classification::BoundaryConstant;
    }
    if disc < 0.0 {
        return Classification::Outside;
    }
    if m < 1.0 / c && ell < 0.5 * (c * m + 1.0) {
        Classification::InteriorLambdaPrime
    } else {
        Classification::InteriorLambda
    }
}

/// `(c, m, ℓ)` plus the phase `c₁` (zero unless overridden).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalParams {
    pub c: f64,
    pub m: f64,
    pub ell: f64,
    pub phase: f64,
}

impl SphericalParams {
    pub fn new(c: f64, m: f64, ell: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("curvature c = {c} must be positive")));
        }
        Ok(Self {
            c,
            m,
            ell,
            phase: 0.0,
        })
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn classification(&self) -> Classification {
        classify(self.c, self.m, self.ell)
    }

    /// Amplitude `√(ℓ² - cm)`, clamped at zero on the boundary.
    pub fn amplitude(&self) -> f64 {
        match self.classification() {
            Classification::BoundaryConstant => 0.0,
            _ => (self.ell * self.ell - self.c * self.m).max(0.0).sqrt(),
        }
    }

    /// Fundamental period `π/√c`.
    pub fn period(&self) -> f64 {
        std::f64::consts::PI / self.c.sqrt()
    }

    /// `(min f², max f²) = ((ℓ ∓ √(ℓ² - cm))/c)`.
    pub fn f2_range(&self) -> (f64, f64) {
        let r = self.amplitude();
        let hi = self.ell + r;
        // ℓ - r = cm/(ℓ + r)
        let lo = if r == 0.0 { self.ell } else { self.c * self.m / hi };
        (lo / self.c, hi / self.c)
    }

    fn outside(&self) -> Error {
        Error::OutsideFamily {
            c: self.c,
            m: self.m,
            ell: self.ell,
        }
    }

    fn require_family(&self) -> Result<()> {
        if self.classification().in_family() {
            Ok(())
        } else {
            Err(self.outside())
        }
    }
}

/// The closed-form warping function as a [`MetricProfile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalProfile {
    params: SphericalParams,
    amplitude: f64,
    omega: f64,
}

impl SphericalProfile {
    pub fn new(params: &SphericalParams) -> Result<Self> {
        params.require_family()?;
        Ok(Self {
            params: *params,
            amplitude: params.amplitude(),
            omega: 2.0 * params.c.sqrt(),
        })
    }

    pub fn params(&self) -> &SphericalParams {
        &self.params
    }

    /// `g = f²` and its first two derivatives.
    pub fn g_jet(&self, s: f64) -> [f64; 3] {
        let (c, ell, r) = (self.params.c, self.params.ell, self.amplitude);
        let (sin, cos) = (self.omega * s + self.params.phase).sin_cos();
        [
            (ell + r * sin) / c,
            r * self.omega * cos / c,
            -r * self.omega * self.omega * sin / c,
        ]
    }

    /// `(f, f', f'')`.
    pub fn jet(&self, s: f64) -> (f64, f64, f64) {
        let [g, dg, d2g] = self.g_jet(s);
        let f = g.sqrt();
        let df = dg / (2.0 * f);
        let d2f = (0.5 * d2g - df * df) / f;
        (f, df, d2f)
    }

    /// Max over `grid` of `|(f')² + c f² + m f⁻² - 2·ell|` for a claimed level.
    pub fn edo_residual_at_level(&self, ell: f64, grid: &[f64]) -> f64 {
        let (c, m) = (self.params.c, self.params.m);
        grid.iter()
            .map(|&s| {
                let (f, df, _) = self.jet(s);
                (df * df + c * f * f + m / (f * f) - 2.0 * ell).abs()
            })
            .fold(0.0, f64::max)
    }
}

impl MetricProfile for SphericalProfile {
    fn f(&self, s: f64) -> f64 {
        self.jet(s).0
    }
    fn df(&self, s: f64) -> f64 {
        self.jet(s).1
    }
    fn d2f(&self, s: f64) -> f64 {
        self.jet(s).2
    }
    fn domain(&self) -> Interval {
        Interval::REAL_LINE
    }
    fn provenance(&self) -> Provenance {
        Provenance::ClosedForm
    }
    fn curvature_jet(&self, s: f64) -> Option<[f64; 3]> {
        let (c, m) = (self.params.c, self.params.m);
        let [g, dg, d2g] = self.g_jet(s);
        let g2 = g * g;
        let g3 = g2 * g;
        Some([
            c - m / g2,
            2.0 * m * dg / g3,
            2.0 * m * (d2g / g3 - 3.0 * dg * dg / (g3 * g)),
        ])
    }
}

/// `(f, f', f'')` at `s`.
pub fn f_closed(params: &SphericalParams, s: f64) -> Result<(f64, f64, f64)> {
    Ok(SphericalProfile::new(params)?.jet(s))
}

/// Max residual of `(f')² + c f² + m f⁻² = 2ℓ` over `grid`.
pub fn edo_residual(params: &SphericalParams, grid: &[f64]) -> Result<f64> {
    Ok(SphericalProfile::new(params)?.edo_residual_at_level(params.ell, grid))
}

/// Range `[L1, L2]` of `c - K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureRange {
    pub l1: f64,
    pub l2: f64,
}

pub fn curvature_range(params: &SphericalParams) -> Result<CurvatureRange> {
    let (c, m, ell) = (params.c, params.m, params.ell);
    match params.classification() {
        Classification::Outside => Err(params.outside()),
        Classification::BoundaryConstant => {
            let v = m * c * c / (ell * ell);
            Ok(CurvatureRange { l1: v, l2: v })
        }
        _ => {
            let plus = ell + params.amplitude();
            Ok(CurvatureRange {
                l1: m * c * c / (plus * plus),
                // m c² / (ℓ - r)² with ℓ - r = cm/(ℓ + r)
                l2: plus * plus / m,
            })
        }
    }
}

/// Which invariant separates two metrics of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    DistinctL1 { first: f64, second: f64 },
    DistinctL2 { first: f64, second: f64 },
    /// `√m₁·ℓ₂` against `√m₂·ℓ₁`.
    ScalingInvariant { first: f64, second: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IsometryVerdict {
    SameParameters,
    NonIsometric(Witness),
    Inconclusive,
}

fn rel_differs(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() > tol * x.abs().max(y.abs())
}

/// Compares two members `(m, ℓ)` of the family for fixed `c` through the
/// curvature range and the invariant `√m·ℓ*` = `√m*·ℓ`, both of which an
/// isometry must preserve.
pub fn nonisometry_certificate(c: f64, first: (f64, f64), second: (f64, f64)) -> Result<IsometryVerdict> {
    let p1 = SphericalParams::new(c, first.0, first.1)?;
    let p2 = SphericalParams::new(c, second.0, second.1)?;
    let r1 = curvature_range(&p1)?;
    let r2 = curvature_range(&p2)?;

    if (p1.m - p2.m).abs() <= 1e-12 * p1.m.abs().max(p2.m.abs())
        && (p1.ell - p2.ell).abs() <= 1e-12 * p1.ell.abs().max(p2.ell.abs())
    {
        return Ok(IsometryVerdict::SameParameters);
    }
    if rel_differs(r1.l1, r2.l1, 1e-10) {
        return Ok(IsometryVerdict::NonIsometric(Witness::DistinctL1 {
            first: r1.l1,
            second: r2.l1,
        }));
    }
    if rel_differs(r1.l2, r2.l2, 1e-10) {
        return Ok(IsometryVerdict::NonIsometric(Witness::DistinctL2 {
            first: r1.l2,
            second: r2.l2,
        }));
    }
    let lhs = p1.m.sqrt() * p2.ell;
    let rhs = p2.m.sqrt() * p1.ell;
    if rel_differs(lhs, rhs, 1e-10) {
        return Ok(IsometryVerdict::NonIsometric(Witness::ScalingInvariant {
            first: lhs,
            second: rhs,
        }));
    }
    Ok(IsometryVerdict::Inconclusive)
}

/// Delaunay-surface parameters of the sub-family `4cm = (1 - 2ℓ)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelaunayParams {
    pub b: f64,
    pub h: f64,
}

impl DelaunayParams {
    /// Warping function of the induced Delaunay metric,
    /// `√(1 + B² + 2B sin(2Hs)) / (2|H|)`.
    pub fn warping(&self, s: f64) -> f64 {
        let b = self.b;
        (1.0 + b * b + 2.0 * b * (2.0 * self.h * s).sin()).sqrt() / (2.0 * self.h.abs())
    }
}

pub fn delaunay_parameters(params: &SphericalParams) -> Option<DelaunayParams> {
    if !params.classification().in_family() {
        return None;
    }
    let (c, m, ell) = (params.c, params.m, params.ell);
    let rhs = (1.0 - 2.0 * ell).powi(2);
    if (4.0 * c * m - rhs).abs() <= 1e-12 * (1.0 + rhs) && 4.0 * ell > 1.0 {
        Some(DelaunayParams {
            b: (4.0 * ell - 1.0).sqrt(),
            h: c.sqrt(),
        })
    } else {
        None
    }
}

/// Minimal rotational profiles `z_j`: `j ∈ (0, 1)` maps to
/// `(m, ℓ) = ((1 - j²)/(4c), 1/2)`.
pub fn minimal_from_j(c: f64, j: f64) -> Result<(f64, f64)> {
    if !(c > 0.0) {
        return Err(Error::Range(format!("c = {c} must be positive")));
    }
    if !(j > 0.0 && j < 1.0) {
        return Err(Error::Range(format!("j = {j} must lie in (0, 1)")));
    }
    Ok(((1.0 - j * j) / (4.0 * c), 0.5))
}

/// Inverse of [`minimal_from_j`]: `j = √(1 - 4cm)`.
pub fn j_from_minimal(c: f64, m: f64, ell: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Range(format!("c = {c} must be positive")));
    }
    if (ell - 0.5).abs() > 1e-14 {
        return Err(Error::Range(format!("minimal slice needs ell = 1/2, got {ell}")));
    }
    if !(m > 0.0 && m < 0.25 / c) {
        return Err(Error::Range(format!("m = {m} must lie in (0, 1/(4c))")));
    }
    Ok((1.0 - 4.0 * c * m).sqrt())
}

/// `z_j(s) = √((1 + j sin(2√c s)) / (2c))`.
pub fn minimal_profile(c: f64, j: f64, s: f64) -> f64 {
    ((1.0 + j * (2.0 * c.sqrt() * s).sin()) / (2.0 * c)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classification_examples() {
        assert_eq!(classify(1.0, 0.51, 0.73), Classification::InteriorLambdaPrime);
        assert_eq!(classify(1.0, 0.0625, 0.75), Classification::InteriorLambda);
        assert_eq!(classify(1.0, 0.25, 0.5), Classification::BoundaryConstant);
        assert_eq!(classify(1.0, 0.0, 0.5), Classification::Outside);
        assert_eq!(classify(1.0, 1.0, 0.5), Classification::Outside);
        assert_eq!(classify(-1.0, 1.0, 2.0), Classification::Outside);
        // ℓ = 1/2, m = 1/(4c) is both Delaunay-boundary and constant; constant wins.
        assert_eq!(classify(2.0, 0.125, 0.5), Classification::BoundaryConstant);
    }

    #[test]
    fn closed_form_values() {
        let p = SphericalParams::new(1.0, 0.51, 0.73).unwrap();
        let (f, _, _) = f_closed(&p, 0.0).unwrap();
        assert!((f - 0.73f64.sqrt()).abs() < 1e-15);

        for c in [0.5, 1.0, 2.0] {
            let p = SphericalParams::new(c, 0.3 / c, 0.9).unwrap();
            let (f, df, _) = f_closed(&p, PI / (4.0 * c.sqrt())).unwrap();
            let (_, hi) = p.f2_range();
            assert!((f * f - hi).abs() < 1e-14);
            assert!(df.abs() < 1e-14);
        }

        let p = SphericalParams::new(1.0, 0.25, 0.5).unwrap();
        for s in [0.0, 0.3, 1.7] {
            let (f, df, d2f) = f_closed(&p, s).unwrap();
            assert!((f - 0.25f64.powf(0.25)).abs() < 1e-15);
            assert_eq!((df, d2f), (0.0, 0.0));
        }

        let p = SphericalParams::new(1.0, 2.0, 0.5).unwrap();
        assert!(matches!(f_closed(&p, 0.0), Err(Error::OutsideFamily { .. })));
    }

    #[test]
    fn edo_residual_examples() {
        let grid: Vec<f64> = (0..1024).map(|i| i as f64 * 0.01).collect();
        let p = SphericalParams::new(1.0, 0.51, 0.73).unwrap();
        assert!(edo_residual(&p, &grid).unwrap() <= 1e-12);
        let b = SphericalParams::new(1.0, 0.25, 0.5).unwrap();
        assert_eq!(edo_residual(&b, &grid).unwrap(), 0.0);
        let prof = SphericalProfile::new(&p).unwrap();
        let tampered = prof.edo_residual_at_level(0.74, &grid);
        assert!((tampered - 0.02).abs() < 1e-12);
    }

    #[test]
    fn curvature_range_examples() {
        let p = SphericalParams::new(1.0, 1.0, 2.0).unwrap();
        let r = curvature_range(&p).unwrap();
        let s3 = 3f64.sqrt();
        assert!((r.l1 - (2.0 - s3).powi(2)).abs() < 1e-14);
        assert!((r.l2 - (2.0 + s3).powi(2)).abs() < 1e-12);

        let b = SphericalParams::new(1.0, 0.25, 0.5).unwrap();
        let r = curvature_range(&b).unwrap();
        assert_eq!((r.l1, r.l2), (1.0, 1.0));

        // m → 0: L1 → 0 while L2 ~ 4ℓ²/m grows without bound
        let tiny = SphericalParams::new(1.0, 1e-10, 0.6).unwrap();
        let r = curvature_range(&tiny).unwrap();
        assert!(r.l1 < 1e-10);
        assert!((r.l2 * 1e-10 / (4.0 * 0.36) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn curvature_range_matches_sampled_extremes() {
        let p = SphericalParams::new(2.0, 0.2, 1.1).unwrap();
        let prof = SphericalProfile::new(&p).unwrap();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..20000 {
            let s = p.period() * i as f64 / 20000.0;
            let v = p.m / prof.f(s).powi(4);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let r = curvature_range(&p).unwrap();
        assert!((r.l1 - lo).abs() / r.l1 < 1e-6);
        assert!((r.l2 - hi).abs() / r.l2 < 1e-6);
    }

    #[test]
    fn isometry_verdicts() {
        let v = nonisometry_certificate(1.0, (1.0, 2.0), (1.0, 3.0)).unwrap();
        assert!(matches!(v, IsometryVerdict::NonIsometric(Witness::DistinctL1 { .. })));
        let v = nonisometry_certificate(1.0, (1.0, 2.0), (4.0, 4.0)).unwrap();
        assert_eq!(v, IsometryVerdict::Inconclusive);
        let v = nonisometry_certificate(1.0, (1.0, 2.0), (1.0, 2.0)).unwrap();
        assert_eq!(v, IsometryVerdict::SameParameters);
        assert!(nonisometry_certificate(1.0, (1.0, 0.5), (1.0, 2.0)).is_err());
    }

    #[test]
    fn delaunay_examples() {
        let p = SphericalParams::new(1.0, 0.0625, 0.75).unwrap();
        let d = delaunay_parameters(&p).unwrap();
        assert!((d.b - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(d.h, 1.0);
        let prof = SphericalProfile::new(&p).unwrap();
        for i in 0..50 {
            let s = 0.07 * i as f64;
            assert!((prof.f(s) - d.warping(s)).abs() < 1e-14);
        }
        let q = SphericalParams::new(1.0, 0.51, 0.73).unwrap();
        assert!(delaunay_parameters(&q).is_none());
        let edge = SphericalParams::new(1.0, 0.0, 0.5).unwrap();
        assert!(delaunay_parameters(&edge).is_none());
    }

    #[test]
    fn minimal_map_examples() {
        let (m, ell) = minimal_from_j(1.0, 0.6).unwrap();
        assert!((m - 0.16).abs() < 1e-15);
        assert_eq!(ell, 0.5);
        let p = SphericalParams::new(1.0, m, ell).unwrap();
        let prof = SphericalProfile::new(&p).unwrap();
        for i in 0..100 {
            let s = 0.031 * i as f64;
            assert!((prof.f(s) - minimal_profile(1.0, 0.6, s)).abs() <= 1e-14);
        }
        assert!((j_from_minimal(1.0, m, ell).unwrap() - 0.6).abs() < 1e-14);

        let (m, _) = minimal_from_j(1.0, 1.0 - 1e-12).unwrap();
        assert!(m < 1e-11);
        let (m, _) = minimal_from_j(2.0, 1e-9).unwrap();
        assert!((m - 0.125).abs() < 1e-15);
        assert_eq!(classify(2.0, m, 0.5), Classification::BoundaryConstant);

        assert!(matches!(minimal_from_j(1.0, 0.0), Err(Error::Range(_))));
        assert!(matches!(minimal_from_j(1.0, 1.0), Err(Error::Range(_))));
        assert!(matches!(j_from_minimal(1.0, 0.3, 0.5), Err(Error::Range(_))));
    }
}
