//! Rotationally symmetric warped metrics `ds² + f(s)² dt²`.
//!
//! Curvature, the Laplacian of rotation-invariant functions, and the residual
//! of the generalized Ricci condition
//! `(K - c) ΔK - |∇K|² - (aK + b)(K - c)² = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::central_diff4;
use crate::phase_portrait::RicciParams;

/// Where a profile's derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm,
    Sampled,
}

/// Open interval of arclength values, possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, s: f64) -> bool {
        s > self.lo && s < self.hi
    }
}

/// A warping function `f` together with `f'` and `f''`.
pub trait MetricProfile {
    fn f(&self, s: f64) -> f64;
    fn df(&self, s: f64) -> f64;
    fn d2f(&self, s: f64) -> f64;
    fn domain(&self) -> Interval;
    fn provenance(&self) -> Provenance;

    /// `(K, K', K'')` from closed-form expressions, when the profile has them.
    fn curvature_jet(&self, _s: f64) -> Option<[f64; 3]> {
        None
    }
}

/// Round sphere chart `f(s) = sin(√c s)/√c` on `(0, π/√c)`; curvature `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineProfile {
    pub c: f64,
}

impl MetricProfile for SineProfile {
    fn f(&self, s: f64) -> f64 {
        let r = self.c.sqrt();
        (r * s).sin() / r
    }
    fn df(&self, s: f64) -> f64 {
        (self.c.sqrt() * s).cos()
    }
    fn d2f(&self, s: f64) -> f64 {
        let r = self.c.sqrt();
        -r * (r * s).sin()
    }
    fn domain(&self) -> Interval {
        Interval::new(0.0, std::f64::consts::PI / self.c.sqrt())
    }
    fn provenance(&self) -> Provenance {
        Provenance::ClosedForm
    }
    fn curvature_jet(&self, _s: f64) -> Option<[f64; 3]> {
        Some([self.c, 0.0, 0.0])
    }
}

/// Flat cylinder `f ≡ radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantProfile {
    pub radius: f64,
}

impl MetricProfile for ConstantProfile {
    fn f(&self, _s: f64) -> f64 {
        self.radius
    }
    fn df(&self, _s: f64) -> f64 {
        0.0
    }
    fn d2f(&self, _s: f64) -> f64 {
        0.0
    }
    fn domain(&self) -> Interval {
        Interval::REAL_LINE
    }
    fn provenance(&self) -> Provenance {
        Provenance::ClosedForm
    }
    fn curvature_jet(&self, _s: f64) -> Option<[f64; 3]> {
        Some([0.0; 3])
    }
}

type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Profile assembled from arbitrary closures. Curvature derivatives always go
/// through finite differences.
pub struct FnProfile {
    f: ScalarFn,
    df: ScalarFn,
    d2f: ScalarFn,
    domain: Interval,
    provenance: Provenance,
}

impl FnProfile {
    pub fn new<F, D1, D2>(f: F, df: D1, d2f: D2, domain: Interval, provenance: Provenance) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Box::new(f),
            df: Box::new(df),
            d2f: Box::new(d2f),
            domain,
            provenance,
        }
    }
}

impl MetricProfile for FnProfile {
    fn f(&self, s: f64) -> f64 {
        (self.f)(s)
    }
    fn df(&self, s: f64) -> f64 {
        (self.df)(s)
    }
    fn d2f(&self, s: f64) -> f64 {
        (self.d2f)(s)
    }
    fn domain(&self) -> Interval {
        self.domain
    }
    fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Type `(a, b, c)` of a generalized Ricci condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RicciType {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RicciType {
    /// The `c`-spherical type `(4, 0, c)`.
    pub fn spherical(c: f64) -> Self {
        Self { a: 4.0, b: 0.0, c }
    }
}

/// Lattice `(T, γ₁)ℤ ⊕ (0, γ₂)ℤ` used to pass a `T`-periodic metric to a torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusLattice {
    pub period: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl TorusLattice {
    pub fn new(period: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::Domain(format!("lattice period {period} must be positive")));
        }
        if gamma2 == 0.0 || !gamma2.is_finite() || !gamma1.is_finite() {
            return Err(Error::Domain(format!(
                "lattice generators ({gamma1}, {gamma2}) need finite values and gamma2 != 0"
            )));
        }
        Ok(Self {
            period,
            gamma1,
            gamma2,
        })
    }

    /// Reduces `(s, t)` into the fundamental parallelogram `[0, T) × [0, γ₂)`.
    pub fn reduce(&self, s: f64, t: f64) -> (f64, f64) {
        let n = (s / self.period).floor();
        let s = s - n * self.period;
        let t = t - n * self.gamma1;
        (s, t.rem_euclid(self.gamma2.abs()))
    }
}

fn positive_value<P: MetricProfile + ?Sized>(profile: &P, s: f64) -> Result<f64> {
    if !profile.domain().contains(s) {
        return Err(Error::Domain(format!("s = {s} is outside the profile domain")));
    }
    let f = profile.f(s);
    if !(f > 0.0) {
        return Err(Error::DegenerateProfile { s, value: f });
    }
    Ok(f)
}

/// `K(s) = -f''(s)/f(s)`.
pub fn gaussian_curvature<P: MetricProfile + ?Sized>(profile: &P, s: f64) -> Result<f64> {
    let f = positive_value(profile, s)?;
    Ok(-profile.d2f(s) / f)
}

/// `Δu = u'' + (f'/f) u'` for a function of `s` alone; `u` returns `(u, u', u'')`.
pub fn laplacian_rotinv<P, U>(profile: &P, u: U, s: f64) -> Result<f64>
where
    P: MetricProfile + ?Sized,
    U: Fn(f64) -> [f64; 3],
{
    let f = positive_value(profile, s)?;
    let [_, du, d2u] = u(s);
    Ok(d2u + profile.df(s) / f * du)
}

/// Finite-difference step used when closed-form curvature derivatives are
/// unavailable.
pub fn fd_step(s: f64) -> f64 {
    1e-5f64.max(f64::EPSILON.cbrt() * (1.0 + s.abs()))
}

fn curvature_jet_fd<P: MetricProfile + ?Sized>(profile: &P, s: f64) -> Result<[f64; 3]> {
    let h = fd_step(s);
    let dom = profile.domain();
    if !(dom.contains(s - 2.0 * h) && dom.contains(s + 2.0 * h)) {
        return Err(Error::NonFiniteDerivative { s });
    }
    let k = |x: f64| -profile.d2f(x) / profile.f(x);
    let (dk, d2k) = central_diff4(&k, s, h);
    let jet = [k(s), dk, d2k];
    if jet.iter().all(|v| v.is_finite()) {
        Ok(jet)
    } else {
        Err(Error::NonFiniteDerivative { s })
    }
}

/// Pointwise residuals of the generalized Ricci condition on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub s: Vec<f64>,
    pub residual: Vec<f64>,
    pub max_abs: f64,
    /// `max(1, |K - c|, |K - c|³)` over the grid.
    pub scale: f64,
    pub normalized: f64,
}

/// Evaluates `R(s) = (K - c)ΔK - (K')² - (aK + b)(K - c)²` on `grid`.
pub fn ricci_residual<P: MetricProfile + ?Sized>(
    profile: &P,
    ty: RicciType,
    grid: &[f64],
) -> Result<ResidualReport> {
    let mut residual = Vec::with_capacity(grid.len());
    let mut max_abs: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for &s in grid {
        let f = positive_value(profile, s)?;
        let [k, dk, d2k] = match profile.curvature_jet(s) {
            Some(jet) => jet,
            None => curvature_jet_fd(profile, s)?,
        };
        let lap_k = d2k + profile.df(s) / f * dk;
        let dev = k - ty.c;
        let r = dev * lap_k - dk * dk - (ty.a * k + ty.b) * dev * dev;
        max_abs = max_abs.max(r.abs());
        scale = scale.max(dev.abs()).max(dev.abs().powi(3));
        residual.push(r);
    }
    Ok(ResidualReport {
        s: grid.to_vec(),
        residual,
        max_abs,
        scale,
        normalized: max_abs / scale,
    })
}

/// Checks `df`, `d2f` against centered differences of `f` on `n` interior
/// points; returns the worst relative mismatch.
pub fn derivative_consistency<P: MetricProfile + ?Sized>(profile: &P, lo: f64, hi: f64, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let s = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
        let h = 1e-3 * (1.0 + s.abs());
        let f = |x: f64| profile.f(x);
        let (d1, d2) = central_diff4(&f, s, h);
        let scale = 1.0 + profile.f(s).abs();
        worst = worst
            .max((d1 - profile.df(s)).abs() / scale)
            .max((d2 - profile.d2f(s)).abs() / scale);
    }
    worst
}

/// Parameters of the metric `η·dσ²` in arclength `s̃ = √η s`:
/// `(a, c/η, m·η^{(a-2)/2}, ℓ)`.
pub fn rescale_params(params: &RicciParams, eta: f64) -> Result<RicciParams> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidScale(eta));
    }
    RicciParams::new(
        params.a,
        params.c / eta,
        params.m * eta.powf((params.a - 2.0) / 2.0),
        params.ell,
    )
}

/// Starting curvature and scale factor that put a `c̃`-spherical Ricci metric on
/// `S¹(r₁) × S¹(r₂)`: the family with `c = 1/(4r₁²)` has `s`-period `2πr₁`,
/// and scaling the metric by `η = c/c̃` moves its type to `(4, 0, c̃)`.
pub fn circle_product_scaling(r1: f64, c_target: f64) -> Result<(f64, f64)> {
    if !(r1 > 0.0 && c_target > 0.0) {
        return Err(Error::Domain(format!(
            "radius {r1} and target curvature {c_target} must be positive"
        )));
    }
    let c = 1.0 / (4.0 * r1 * r1);
    Ok((c, c / c_target))
}
