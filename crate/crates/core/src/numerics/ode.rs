//! Dormand–Prince 5(4) integrator with dense output and event location.

use crate::error::{Error, Result};
use crate::numerics::roots::{brent, BrentConfig};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

#[cfg(test)]
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

// Fifth-order weights minus the embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

// Continuous extension: y(s0 + t h) = y0 + h * sum_k K_k * (P_k . [t, t^2, t^3, t^4]).
const P: [[f64; 4]; 7] = [
    [
        1.0,
        -8048581381.0 / 2820520608.0,
        8663915743.0 / 2820520608.0,
        -12715105075.0 / 11282082432.0,
    ],
    [0.0, 0.0, 0.0, 0.0],
    [
        0.0,
        131558114200.0 / 32700410799.0,
        -68118460800.0 / 10900136933.0,
        87487479700.0 / 32700410799.0,
    ],
    [
        0.0,
        -1754552775.0 / 470086768.0,
        14199869525.0 / 1410260304.0,
        -10690763975.0 / 1880347072.0,
    ],
    [
        0.0,
        127303824393.0 / 49829197408.0,
        -318862633887.0 / 49829197408.0,
        701980252875.0 / 199316789632.0,
    ],
    [
        0.0,
        -282668133.0 / 205662961.0,
        2019193451.0 / 616988883.0,
        -1453857185.0 / 822651844.0,
    ],
    [
        0.0,
        40617522.0 / 29380423.0,
        -110615467.0 / 29380423.0,
        69997945.0 / 29380423.0,
    ],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: Option<f64>,
    /// Controller stall threshold, relative to `1 + |s|`.
    pub h_min_rel: f64,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            atol: 1e-11,
            h_init: None,
            h_min_rel: 1e-14,
            max_steps: 1_000_000,
        }
    }
}

/// Sign-change direction that triggers an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    Rising,
    Falling,
    Either,
}

/// A scalar event function `g(s, y)`; integration stops at its first root
/// crossed in the requested direction.
pub struct Event<'a, const N: usize> {
    pub g: &'a dyn Fn(f64, &[f64; N]) -> f64,
    pub crossing: Crossing,
    pub s_tol: f64,
}

/// One accepted step with everything needed to evaluate the interpolant.
#[derive(Debug, Clone)]
pub struct DenseStep<const N: usize> {
    pub s0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    k: [[f64; N]; 7],
}

impl<const N: usize> DenseStep<N> {
    pub fn s1(&self) -> f64 {
        self.s0 + self.h
    }

    /// Dense-output evaluation at `s` (meant for `s` inside the step).
    pub fn eval(&self, s: f64) -> [f64; N] {
        let t = (s - self.s0) / self.h;
        let powers = [t, t * t, t * t * t, t * t * t * t];
        let mut out = self.y0;
        for (k, row) in self.k.iter().zip(P.iter()) {
            let w: f64 = row.iter().zip(powers.iter()).map(|(p, q)| p * q).sum();
            if w != 0.0 {
                for i in 0..N {
                    out[i] += self.h * w * k[i];
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Solution<const N: usize> {
    pub steps: Vec<DenseStep<N>>,
    /// Location and state of the event root, when one was requested and hit.
    pub event: Option<(f64, [f64; N])>,
    pub s_start: f64,
    pub y_start: [f64; N],
    pub rejected: usize,
}

impl<const N: usize> Solution<N> {
    pub fn s_end(&self) -> f64 {
        match (&self.event, self.steps.last()) {
            (Some((s, _)), _) => *s,
            (None, Some(step)) => step.s1(),
            (None, None) => self.s_start,
        }
    }

    /// Step nodes `(s, y)` including the initial point.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, [f64; N])> + '_ {
        std::iter::once((self.s_start, self.y_start))
            .chain(self.steps.iter().map(|st| (st.s1(), st.y1)))
    }

    /// Interpolated state at `s`, or `None` outside the integrated span.
    pub fn sample(&self, s: f64) -> Option<[f64; N]> {
        let first = self.steps.first()?;
        let last = self.steps.last()?;
        let forward = first.h > 0.0;
        let (lo, hi) = if forward {
            (first.s0, last.s1())
        } else {
            (last.s1(), first.s0)
        };
        if s < lo || s > hi {
            return None;
        }
        let idx = self
            .steps
            .partition_point(|st| if forward { st.s1() < s } else { st.s1() > s });
        let step = &self.steps[idx.min(self.steps.len() - 1)];
        Some(step.eval(s))
    }
}

fn stages<const N: usize, F>(rhs: &F, s: f64, y: &[f64; N], h: f64, f0: [f64; N]) -> ([[f64; N]; 7], [f64; N])
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; 7];
    k[0] = f0;
    let mut y_stage = *y;
    for stage in 1..7 {
        for i in 0..N {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(stage) {
                acc += A[stage][j] * kj[i];
            }
            y_stage[i] = y[i] + h * acc;
        }
        k[stage] = rhs(s + C[stage] * h, &y_stage);
    }
    // Row 6 of A equals B, so the last stage state is the fifth-order solution.
    (k, y_stage)
}

fn error_norm<const N: usize>(k: &[[f64; N]; 7], h: f64, y0: &[f64; N], y1: &[f64; N], cfg: &OdeConfig) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        let err: f64 = h * k.iter().zip(E.iter()).map(|(kj, e)| e * kj[i]).sum::<f64>();
        let scale = cfg.atol + cfg.rtol * y0[i].abs().max(y1[i].abs());
        acc += (err / scale).powi(2);
    }
    (acc / N as f64).sqrt()
}

fn rms_scaled<const N: usize>(v: &[f64; N], y: &[f64; N], cfg: &OdeConfig) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        let scale = cfg.atol + cfg.rtol * y[i].abs();
        acc += (v[i] / scale).powi(2);
    }
    (acc / N as f64).sqrt()
}

fn initial_step<const N: usize, F>(rhs: &F, s0: f64, y0: &[f64; N], f0: &[f64; N], dir: f64, cfg: &OdeConfig) -> f64
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let d0 = rms_scaled(y0, y0, cfg);
    let d1 = rms_scaled(f0, y0, cfg);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let mut y1 = *y0;
    for i in 0..N {
        y1[i] += dir * h0 * f0[i];
    }
    let f1 = rhs(s0 + dir * h0, &y1);
    let mut diff = [0.0; N];
    for i in 0..N {
        diff[i] = f1[i] - f0[i];
    }
    let d2 = rms_scaled(&diff, y0, cfg) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

/// Integrates `y' = rhs(s, y)` from `s0` towards `s_end`.
///
/// `guard` runs on every accepted state and can abort the integration with an
/// error (used for singular regions of the vector field). When `event` is
/// given, the integration stops at its first root.
pub fn solve<const N: usize, F, G>(
    rhs: F,
    s0: f64,
    y0: [f64; N],
    s_end: f64,
    cfg: &OdeConfig,
    event: Option<&Event<'_, N>>,
    guard: G,
) -> Result<Solution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> Result<()>,
{
    let mut sol = Solution {
        steps: Vec::new(),
        event: None,
        s_start: s0,
        y_start: y0,
        rejected: 0,
    };
    if s_end == s0 {
        return Ok(sol);
    }
    guard(s0, &y0)?;

    let dir = (s_end - s0).signum();
    let mut s = s0;
    let mut y = y0;
    let mut f = rhs(s, &y);
    let mut h = cfg
        .h_init
        .unwrap_or_else(|| initial_step(&rhs, s0, &y0, &f, dir, cfg))
        .abs()
        * dir;

    let mut accepted = 0usize;
    while (s_end - s) * dir > 0.0 {
        if accepted + sol.rejected >= cfg.max_steps {
            return Err(Error::StepFailure { s, h });
        }
        if (s + h - s_end) * dir > 0.0 {
            h = s_end - s;
        }
        if h.abs() < cfg.h_min_rel * (1.0 + s.abs()) {
            return Err(Error::StepFailure { s, h });
        }

        let (k, y_new) = stages(&rhs, s, &y, h, f);
        let err = error_norm(&k, h, &y, &y_new, cfg);
        if !err.is_finite() || err > 1.0 {
            sol.rejected += 1;
            let factor = if err.is_finite() {
                (0.9 * err.powf(-0.2)).max(0.2)
            } else {
                0.2
            };
            h *= factor;
            continue;
        }

        let step = DenseStep {
            s0: s,
            h,
            y0: y,
            y1: y_new,
            k,
        };
        let s_new = s + h;
        guard(s_new, &y_new)?;

        if let Some(ev) = event {
            if let Some(hit) = locate_event(&rhs, &step, ev)? {
                sol.event = Some(hit);
                sol.steps.push(step);
                return Ok(sol);
            }
        }

        sol.steps.push(step);
        accepted += 1;
        s = s_new;
        y = y_new;
        f = k[6];
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(sol)
}

fn crosses(g0: f64, g1: f64, crossing: Crossing) -> bool {
    match crossing {
        Crossing::Rising => g0 < 0.0 && g1 >= 0.0,
        Crossing::Falling => g0 > 0.0 && g1 <= 0.0,
        Crossing::Either => (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0),
    }
}

fn locate_event<const N: usize, F>(rhs: &F, step: &DenseStep<N>, ev: &Event<'_, N>) -> Result<Option<(f64, [f64; N])>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let g0 = (ev.g)(step.s0, &step.y0);
    let g1 = (ev.g)(step.s1(), &step.y1);
    if !crosses(g0, g1, ev.crossing) {
        return Ok(None);
    }
    // Re-step from the start of the step with the exact sub-step length: a
    // fresh fifth-order step is more accurate than the interpolant.
    let f0 = step.k[0];
    let state_at = |tau: f64| -> [f64; N] {
        if tau == 0.0 {
            step.y0
        } else {
            stages(rhs, step.s0, &step.y0, tau, f0).1
        }
    };
    let cfg = BrentConfig {
        x_tol: ev.s_tol,
        f_tol: 0.0,
        max_iter: 200,
    };
    let root = brent(|tau| (ev.g)(step.s0 + tau, &state_at(tau)), 0.0, step.h, &cfg)?;
    Ok(Some((step.s0 + root.x, state_at(root.x))))
}
