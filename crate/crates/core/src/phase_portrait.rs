//! The autonomous profile equation `f'' = m f^{1-a} - c f`.
//!
//! Written as the conservative system `x' = y, y' = m x^{1-a} - c x` with
//! energy `E = y²/2 + P(x)`. Periodic orbits live on the level sets
//! `E = ℓ` with `P(x_*) < ℓ < lim_{x→0} P(x)`; their period is computed two
//! independent ways, by quadrature of the period integral and by direct
//! integration of the orbit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ode::{self, Crossing, Event, OdeConfig, Solution};
use crate::numerics::quadrature::{integrate, QuadratureConfig};
use crate::numerics::roots::{brent, BrentConfig};
use crate::spherical_family::{SphericalParams, SphericalProfile};
use crate::warped_geometry::{Interval, MetricProfile, Provenance};

/// Relative width of the band above the window floor treated as the
/// equilibrium itself.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Closest approach to `x = 0` tolerated by the orbit integrator.
pub const BLOW_UP_GUARD: f64 = 1e-8;

fn check_signs(a: f64, c: f64, m: f64) -> Result<()> {
    let all_finite = a.is_finite() && c.is_finite() && m.is_finite();
    let same_sign = (a > 0.0 && c > 0.0 && m > 0.0) || (a < 0.0 && c < 0.0 && m < 0.0);
    if all_finite && same_sign {
        Ok(())
    } else {
        Err(Error::Sign { a, c, m })
    }
}

/// `P(x) = -m log x + c x²/2` for `a = 2`, `-m x^{2-a}/(2-a) + c x²/2` otherwise.
pub fn potential(a: f64, c: f64, m: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("potential needs x > 0, got {x}")));
    }
    Ok(potential_unchecked(a, c, m, x))
}

fn potential_unchecked(a: f64, c: f64, m: f64, x: f64) -> f64 {
    if a == 2.0 {
        -m * x.ln() + 0.5 * c * x * x
    } else {
        -m * x.powf(2.0 - a) / (2.0 - a) + 0.5 * c * x * x
    }
}

/// `P(y) - P(y(1 + τ))` without cancellation for small `τ`.
fn level_gap(a: f64, c: f64, m: f64, y: f64, tau: f64) -> f64 {
    let quad = 0.5 * c * y * y * tau * (2.0 + tau);
    let log1p = tau.ln_1p();
    let power = if a == 2.0 {
        m * log1p
    } else {
        m * y.powf(2.0 - a) * ((2.0 - a) * log1p).exp_m1() / (2.0 - a)
    };
    power - quad
}

fn force(a: f64, c: f64, m: f64, x: f64) -> f64 {
    m * x.powf(1.0 - a) - c * x
}

/// Conserved energy `y²/2 + P(x)`.
pub fn energy(a: f64, c: f64, m: f64, x: f64, y: f64) -> Result<f64> {
    Ok(0.5 * y * y + potential(a, c, m, x)?)
}

/// Energies bounding the closed orbits around the equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyWindow {
    pub lower: f64,
    /// `+∞` when `a >= 2`.
    pub upper: f64,
    pub equilibrium: f64,
}

impl EnergyWindow {
    pub fn is_degenerate(&self, ell: f64) -> bool {
        ell <= self.lower + DEGENERACY_TOL * (1.0 + self.lower.abs())
    }

    pub fn check(&self, ell: f64) -> Result<()> {
        if !ell.is_finite() || ell >= self.upper || ell < self.lower {
            return Err(Error::Window {
                ell,
                lower: self.lower,
                upper: self.upper,
            });
        }
        if self.is_degenerate(ell) {
            return Err(Error::DegenerateLevel {
                ell,
                lower: self.lower,
            });
        }
        Ok(())
    }
}

pub fn admissible_energy_window(a: f64, c: f64, m: f64) -> Result<EnergyWindow> {
    check_signs(a, c, m)?;
    let equilibrium = (m / c).powf(1.0 / a);
    let lower = potential_unchecked(a, c, m, equilibrium);
    let upper = if a >= 2.0 { f64::INFINITY } else { 0.0 };
    Ok(EnergyWindow {
        lower,
        upper,
        equilibrium,
    })
}

/// Whether an energy level traces a closed orbit or sits on the equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LevelKind {
    Periodic,
    Degenerate,
}

/// `(a, c, m, ℓ)` for the profile equation, validated against the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RicciParams {
    pub a: f64,
    pub c: f64,
    pub m: f64,
    pub ell: f64,
    pub level: LevelKind,
}

impl RicciParams {
    pub fn new(a: f64, c: f64, m: f64, ell: f64) -> Result<Self> {
        let window = admissible_energy_window(a, c, m)?;
        let level = match window.check(ell) {
            Ok(()) => LevelKind::Periodic,
            Err(Error::DegenerateLevel { .. }) => LevelKind::Degenerate,
            Err(e) => return Err(e),
        };
        Ok(Self {
            a,
            c,
            m,
            ell,
            level,
        })
    }

    pub fn window(&self) -> EnergyWindow {
        admissible_energy_window(self.a, self.c, self.m).expect("validated at construction")
    }

    /// Harmonic period `2π/√(P''(x_*))`, with `P''(x_*) = a·c`.
    pub fn small_oscillation_period(&self) -> f64 {
        2.0 * PI / (self.a * self.c).sqrt()
    }
}

/// Roots `x⁻ < x_* < x⁺` of `P(x) = ℓ`.
pub fn turning_points(a: f64, c: f64, m: f64, ell: f64) -> Result<(f64, f64)> {
    let window = admissible_energy_window(a, c, m)?;
    window.check(ell)?;
    let x_star = window.equilibrium;

    if a == 4.0 {
        let r = (ell * ell - c * m).max(0.0).sqrt();
        let hi = ell + r;
        // ℓ - √(ℓ² - cm) without cancellation.
        let lo = c * m / hi;
        return Ok(((lo / c).sqrt(), (hi / c).sqrt()));
    }

    let g = |x: f64| potential_unchecked(a, c, m, x) - ell;
    let cfg = BrentConfig::default();

    let mut lo = (x_star * 1e-6).max(1e-12);
    while g(lo) <= 0.0 {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(Error::Window {
                ell,
                lower: window.lower,
                upper: window.upper,
            });
        }
    }
    let mut hi = 2.0 * x_star;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::RootFinding(format!("no upper bracket for ell = {ell}")));
        }
    }
    let x_minus = brent(g, lo, x_star, &cfg)?.x;
    let x_plus = brent(g, x_star, hi, &cfg)?.x;
    Ok((x_minus, x_plus))
}

/// Minimal period `√2 ∫ dx / √(ℓ - P(x))` between the turning points.
///
/// The substitution `x = x⁻ + (x⁺ - x⁻)(1 - cos φ)/2` removes both endpoint
/// square-root singularities.
pub fn period_integral(a: f64, c: f64, m: f64, ell: f64) -> Result<f64> {
    period_integral_with(a, c, m, ell, &QuadratureConfig::default())
}

pub fn period_integral_with(a: f64, c: f64, m: f64, ell: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let (x_minus, x_plus) = turning_points(a, c, m, ell)?;
    let half_width = 0.5 * (x_plus - x_minus);
    if a == 4.0 {
        // ℓ - P(x) = c(x - x⁻)(x + x⁻)(x⁺ - x)(x⁺ + x) / (2x²): the
        // Jacobian cancels the vanishing factors exactly.
        let smooth = |phi: f64| {
            let x = x_minus + half_width * (1.0 - phi.cos());
            x * (2.0 / (c * (x + x_minus) * (x + x_plus))).sqrt()
        };
        let q = integrate(smooth, 0.0, PI, cfg)?;
        return Ok(std::f64::consts::SQRT_2 * q.value);
    }
    // The gap is measured from the nearer turning point, where subtracting
    // P(x) from ℓ directly would lose every digit.
    let integrand = |phi: f64| {
        let half = 0.5 * phi;
        let gap = if phi <= 0.5 * PI {
            let tau = 2.0 * half_width * half.sin().powi(2) / x_minus;
            level_gap(a, c, m, x_minus, tau)
        } else {
            let tau = -2.0 * half_width * half.cos().powi(2) / x_plus;
            level_gap(a, c, m, x_plus, tau)
        };
        if gap <= 0.0 {
            return 0.0;
        }
        half_width * phi.sin() / gap.sqrt()
    };
    let q = integrate(integrand, 0.0, PI, cfg)?;
    Ok(std::f64::consts::SQRT_2 * q.value)
}

/// Local tolerances for [`integrate_orbit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitTolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for OrbitTolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            atol: 1e-11,
        }
    }
}

impl OrbitTolerances {
    fn ode_config(&self) -> OdeConfig {
        OdeConfig {
            rtol: self.rtol,
            atol: self.atol,
            ..OdeConfig::default()
        }
    }
}

/// A numerically integrated trajectory of the system, with its energy ledger.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    pub a: f64,
    pub c: f64,
    pub m: f64,
    /// `(s, x, y)` at every accepted step, starting with the initial point.
    pub steps: Vec<(f64, f64, f64)>,
    pub energies: Vec<f64>,
    pub rejected_steps: usize,
    solution: Solution<2>,
}

impl OrbitSample {
    pub fn initial_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn max_energy_drift(&self) -> f64 {
        let e0 = self.initial_energy();
        self.energies
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max)
    }

    /// Dense-output state `(x, y)` at `s`.
    pub fn sample(&self, s: f64) -> Option<(f64, f64)> {
        if s == self.solution.s_start {
            let y = self.solution.y_start;
            return Some((y[0], y[1]));
        }
        self.solution.sample(s).map(|y| (y[0], y[1]))
    }

    pub fn span(&self) -> (f64, f64) {
        let a = self.solution.s_start;
        let b = self.solution.s_end();
        (a.min(b), a.max(b))
    }
}

fn integrate_system(
    a: f64,
    c: f64,
    m: f64,
    start: [f64; 2],
    s_span: (f64, f64),
    tol: &OrbitTolerances,
    event: Option<&Event<'_, 2>>,
) -> Result<Solution<2>> {
    let rhs = move |_: f64, y: &[f64; 2]| [y[1], force(a, c, m, y[0])];
    let guard = |s: f64, y: &[f64; 2]| {
        if y[0] < BLOW_UP_GUARD || !y[0].is_finite() {
            Err(Error::BlowUp { s, x: y[0] })
        } else {
            Ok(())
        }
    };
    ode::solve(rhs, s_span.0, start, s_span.1, &tol.ode_config(), event, guard)
}

/// Integrates `x' = y, y' = m x^{1-a} - c x` from `(x0, y0)` over `s_span`.
pub fn integrate_orbit(
    a: f64,
    c: f64,
    m: f64,
    x0: f64,
    y0: f64,
    s_span: (f64, f64),
    tol: &OrbitTolerances,
) -> Result<OrbitSample> {
    check_signs(a, c, m)?;
    if !(x0 > 0.0) {
        return Err(Error::Domain(format!("initial x0 = {x0} must be positive")));
    }
    let solution = integrate_system(a, c, m, [x0, y0], s_span, tol, None)?;
    let steps: Vec<_> = solution.nodes().map(|(s, y)| (s, y[0], y[1])).collect();
    let energies = steps
        .iter()
        .map(|&(_, x, y)| 0.5 * y * y + potential_unchecked(a, c, m, x))
        .collect();
    Ok(OrbitSample {
        a,
        c,
        m,
        steps,
        energies,
        rejected_steps: solution.rejected,
        solution,
    })
}

/// Period measured by integrating from `(x⁺, 0)` to the first return to the
/// section `{y = 0, x > x_*}`.
pub fn orbit_period_numeric(a: f64, c: f64, m: f64, ell: f64) -> Result<f64> {
    let (_, x_plus) = turning_points(a, c, m, ell)?;
    let g = |_: f64, y: &[f64; 2]| y[1];
    let event = Event {
        g: &g,
        crossing: Crossing::Falling,
        s_tol: 1e-13,
    };
    let horizon = 1e3 * 2.0 * PI / (a * c).sqrt();
    let sol = integrate_system(
        a,
        c,
        m,
        [x_plus, 0.0],
        (0.0, horizon),
        &OrbitTolerances::default(),
        Some(&event),
    )?;
    match sol.event {
        Some((s, _)) => Ok(s),
        None => Err(Error::StepFailure {
            s: sol.s_end(),
            h: 0.0,
        }),
    }
}

/// Warping function sampled from an integrated orbit. `f''` and the
/// curvature derivatives come from the vector field evaluated on the dense
/// output.
#[derive(Debug, Clone)]
pub struct OrbitProfile {
    forward: OrbitSample,
    backward: OrbitSample,
}

impl OrbitProfile {
    /// The periodic solution at energy `params.ell`, started at `(x⁺, 0)` and
    /// integrated over `[-margin, periods·T + margin]`.
    pub fn new(params: &RicciParams, periods: f64, margin: f64) -> Result<Self> {
        let (a, c, m) = (params.a, params.c, params.m);
        let (_, x_plus) = turning_points(a, c, m, params.ell)?;
        let period = period_integral(a, c, m, params.ell)?;
        let tol = OrbitTolerances::default();
        let forward = integrate_orbit(a, c, m, x_plus, 0.0, (0.0, periods * period + margin), &tol)?;
        let backward = integrate_orbit(a, c, m, x_plus, 0.0, (0.0, -margin), &tol)?;
        Ok(Self { forward, backward })
    }

    pub fn orbit(&self) -> &OrbitSample {
        &self.forward
    }

    fn state(&self, s: f64) -> Option<(f64, f64)> {
        if s >= 0.0 {
            self.forward.sample(s)
        } else {
            self.backward.sample(s)
        }
    }
}

impl MetricProfile for OrbitProfile {
    fn f(&self, s: f64) -> f64 {
        self.state(s).map_or(f64::NAN, |st| st.0)
    }
    fn df(&self, s: f64) -> f64 {
        self.state(s).map_or(f64::NAN, |st| st.1)
    }
    fn d2f(&self, s: f64) -> f64 {
        let o = &self.forward;
        force(o.a, o.c, o.m, self.f(s))
    }
    fn domain(&self) -> Interval {
        Interval::new(self.backward.span().0, self.forward.span().1)
    }
    fn provenance(&self) -> Provenance {
        Provenance::Sampled
    }
    fn curvature_jet(&self, s: f64) -> Option<[f64; 3]> {
        let (a, c, m) = (self.forward.a, self.forward.c, self.forward.m);
        let (x, y) = self.state(s)?;
        // K = c - m x^{-a}; differentiate along the flow.
        let k = c - m * x.powf(-a);
        let dk = a * m * x.powf(-a - 1.0) * y;
        let d2k = a * m * ((-a - 1.0) * x.powf(-a - 2.0) * y * y + x.powf(-a - 1.0) * force(a, c, m, x));
        Some([k, dk, d2k])
    }
}

/// A periodic warping function for `params`: closed form when `a = 4`,
/// integrated orbit otherwise.
pub fn periodic_profile(params: &RicciParams, periods: f64) -> Result<Box<dyn MetricProfile + Send + Sync>> {
    if params.a == 4.0 {
        let sp = SphericalParams::new(params.c, params.m, params.ell)?;
        Ok(Box::new(SphericalProfile::new(&sp)?))
    } else {
        if params.level == LevelKind::Degenerate {
            return Err(Error::DegenerateLevel {
                ell: params.ell,
                lower: params.window().lower,
            });
        }
        let margin = 0.25 * period_integral(params.a, params.c, params.m, params.ell)?;
        Ok(Box::new(OrbitProfile::new(params, periods, margin)?))
    }
}

/// Outcome of the conformal-coordinate check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConformalCheck {
    pub max_residual: f64,
    /// `v`-length of one period, `∫_0^T ds/f`.
    pub conformal_period: f64,
    /// `m = c`: the Delaunay-type sub-family.
    pub delaunay_type: bool,
}

/// Verifies that `y(v) = -log f(s(v))`, with `v = ∫ ds/f`, solves
/// `ÿ = c e^{-2y} - m e^{(a-2)y}` on `n` interior points of one period.
///
/// `ÿ` is taken by fourth-order central differences on a uniform `v` grid.
pub fn conformal_profile_check(params: &RicciParams, n: usize) -> Result<ConformalCheck> {
    if n == 0 {
        return Err(Error::Domain("conformal check needs at least one grid point".into()));
    }
    let (a, c, m) = (params.a, params.c, params.m);
    let delaunay_type = (m - c).abs() <= 1e-12 * c.abs().max(m.abs());

    if params.level == LevelKind::Degenerate {
        // Constant solution f = x_*: y is constant and ÿ = 0.
        let f = params.window().equilibrium;
        let y = -f.ln();
        let r = (c * (-2.0 * y).exp() - m * ((a - 2.0) * y).exp()).abs();
        return Ok(ConformalCheck {
            max_residual: r,
            conformal_period: f64::NAN,
            delaunay_type,
        });
    }

    let period = period_integral(a, c, m, params.ell)?;
    let profile = periodic_profile(params, 1.0)?;
    let dom = profile.domain();
    let s0 = if dom.contains(0.0) { 0.0 } else { dom.lo };

    let qcfg = QuadratureConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_intervals: 2000,
    };
    let conformal = |s: f64| -> Result<f64> {
        Ok(integrate(|u| 1.0 / profile.f(u), s0, s, &qcfg)?.value)
    };
    let v_total = conformal(s0 + period)?;

    let (f_min, f_max) = {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..=256 {
            let f = profile.f(s0 + period * i as f64 / 256.0);
            lo = lo.min(f);
            hi = hi.max(f);
        }
        (lo, hi)
    };

    let nodes = n + 3;
    let dv = v_total / nodes as f64;
    let mut ys = Vec::with_capacity(nodes + 1);
    let mut s_prev = s0;
    for k in 0..=nodes {
        let v = k as f64 * dv;
        // ds/dv = f, so s(v) lies in [s0 + v f_min, s0 + v f_max].
        let lo = (s0 + v * f_min * 0.999).max(s_prev);
        let hi = s0 + v * f_max * 1.001 + 1e-15;
        let s = if k == 0 {
            s0
        } else {
            let root = brent(
                |s| conformal(s).map(|x| x - v).unwrap_or(f64::NAN),
                lo,
                hi,
                &BrentConfig {
                    x_tol: 1e-15,
                    ..BrentConfig::default()
                },
            )
            .map_err(|e| Error::Resample(e.to_string()))?;
            root.x
        };
        if s < s_prev {
            return Err(Error::Resample(format!("s(v) not monotone at v = {v}")));
        }
        s_prev = s;
        ys.push(-profile.f(s).ln());
    }

    let mut max_residual: f64 = 0.0;
    for k in 2..=nodes - 2 {
        let ydd = (-ys[k - 2] + 16.0 * ys[k - 1] - 30.0 * ys[k] + 16.0 * ys[k + 1] - ys[k + 2])
            / (12.0 * dv * dv);
        let y = ys[k];
        let r = ydd - c * (-2.0 * y).exp() + m * ((a - 2.0) * y).exp();
        max_residual = max_residual.max(r.abs());
    }
    Ok(ConformalCheck {
        max_residual,
        conformal_period: v_total,
        delaunay_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_values() {
        assert_eq!(potential(2.0, 1.0, 1.0, 1.0).unwrap(), 0.5);
        assert_eq!(potential(4.0, 1.0, 1.0, 1.0).unwrap(), 1.0);
        let p1 = potential(4.0, 1.0, 1.0, 1.0).unwrap();
        for x in [0.5, 2.0] {
            assert!(potential(4.0, 1.0, 1.0, x).unwrap() > p1);
        }
        assert_eq!(force(4.0, 1.0, 1.0, 1.0), 0.0);
        assert!(matches!(potential(4.0, 1.0, 1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn energy_values() {
        let w = admissible_energy_window(4.0, 1.0, 1.0).unwrap();
        assert_eq!(energy(4.0, 1.0, 1.0, w.equilibrium, 0.0).unwrap(), w.lower);
        assert_eq!(energy(4.0, 1.0, 1.0, 1.0, 1.0).unwrap(), 1.5);
    }

    #[test]
    fn windows() {
        let w = admissible_energy_window(4.0, 1.0, 1.0).unwrap();
        assert_eq!((w.lower, w.upper, w.equilibrium), (1.0, f64::INFINITY, 1.0));
        let w = admissible_energy_window(4.0, 1.0, 16.0).unwrap();
        assert_eq!(w.equilibrium, 2.0);
        let w = admissible_energy_window(-2.0, -1.0, -1.0).unwrap();
        assert_eq!(w.upper, 0.0);
        assert!(w.lower < 0.0);
        assert!((w.lower + 0.25).abs() < 1e-15);
        let w = admissible_energy_window(1.0, 1.0, 1.0).unwrap();
        assert_eq!(w.upper, 0.0);
        assert!(w.lower < 0.0);
        assert!(matches!(
            admissible_energy_window(4.0, -1.0, 1.0),
            Err(Error::Sign { .. })
        ));
        assert!(matches!(
            admissible_energy_window(0.0, 1.0, 1.0),
            Err(Error::Sign { .. })
        ));
    }

    #[test]
    fn turning_points_closed_form() {
        let (lo, hi) = turning_points(4.0, 1.0, 0.75, 1.0).unwrap();
        assert!((lo - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((hi - 1.5f64.sqrt()).abs() < 1e-15);
        for x in [lo, hi] {
            assert!((potential(4.0, 1.0, 0.75, x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn turning_points_collapse_near_floor() {
        let (lo, hi) = turning_points(4.0, 1.0, 1.0, 1.0 + 1e-10).unwrap();
        assert!((lo - 1.0).abs() < 1e-4 && (hi - 1.0).abs() < 1e-4);
    }

    #[test]
    fn turning_points_by_bracketing() {
        let (lo, hi) = turning_points(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(lo < 1.0 && 1.0 < hi);
        for x in [lo, hi] {
            assert!((potential(2.0, 1.0, 1.0, x).unwrap() - 1.0).abs() < 1e-12);
        }
        let w = admissible_energy_window(-2.0, -1.0, -1.0).unwrap();
        let ell = 0.5 * w.lower;
        let (lo, hi) = turning_points(-2.0, -1.0, -1.0, ell).unwrap();
        assert!(lo < w.equilibrium && w.equilibrium < hi);
        for x in [lo, hi] {
            let p = potential(-2.0, -1.0, -1.0, x).unwrap();
            assert!((p - ell).abs() <= 1e-12 * ell.abs());
        }
    }

    #[test]
    fn level_errors() {
        assert!(matches!(
            turning_points(4.0, 1.0, 1.0, 1.0),
            Err(Error::DegenerateLevel { .. })
        ));
        assert!(matches!(
            turning_points(4.0, 1.0, 1.0, 0.5),
            Err(Error::Window { .. })
        ));
        assert!(matches!(
            turning_points(1.0, 1.0, 1.0, 0.1),
            Err(Error::Window { .. })
        ));
        assert!(matches!(
            orbit_period_numeric(4.0, 1.0, 1.0, 1.0),
            Err(Error::DegenerateLevel { .. })
        ));
        let p = RicciParams::new(4.0, 1.0, 0.25, 0.5).unwrap();
        assert_eq!(p.level, LevelKind::Degenerate);
    }

    #[test]
    fn spherical_period_is_pi_over_sqrt_c() {
        let t = period_integral(4.0, 1.0, 0.5, 0.8).unwrap();
        assert!((t - PI).abs() < 1e-10);
        let t = period_integral(4.0, 4.0, 1.0, 3.0).unwrap();
        assert!((t - PI / 2.0).abs() < 1e-10);
        let t = orbit_period_numeric(4.0, 1.0, 0.5, 0.8).unwrap();
        assert!((t - PI).abs() < 1e-8);
    }

    #[test]
    fn equilibrium_start_stays_put() {
        let orbit = integrate_orbit(4.0, 1.0, 1.0, 1.0, 0.0, (0.0, 10.0), &OrbitTolerances::default()).unwrap();
        for &(_, x, y) in &orbit.steps {
            assert!((x - 1.0).abs() <= 1e-12 && y.abs() <= 1e-12);
        }
    }

    #[test]
    fn blow_up_is_reported() {
        // Energy above the a < 2 window: the orbit escapes to x = 0.
        let err = integrate_orbit(1.0, 1.0, 1.0, 1.0, -3.0, (0.0, 10.0), &OrbitTolerances::default())
            .unwrap_err();
        assert!(matches!(err, Error::BlowUp { .. } | Error::StepFailure { .. }));
    }

    #[test]
    fn conformal_check_constant_solution() {
        let p = RicciParams::new(4.0, 1.0, 0.25, 0.5).unwrap();
        let chk = conformal_profile_check(&p, 16).unwrap();
        assert!(chk.max_residual < 1e-15);
        let p = RicciParams::new(4.0, 1.0, 1.0, 1.3).unwrap();
        assert!(conformal_profile_check(&p, 16).unwrap().delaunay_type);
    }
}
