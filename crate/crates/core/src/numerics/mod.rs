//! Numerical building blocks shared by the geometry modules.

pub mod ode;
pub mod quadrature;
pub mod rational;
pub mod roots;

/// Fourth-order central first and second derivatives of `g` at `s` with step `h`.
pub fn central_diff4<F: Fn(f64) -> f64>(g: &F, s: f64, h: f64) -> (f64, f64) {
    let (m2, m1, p1, p2) = (g(s - 2.0 * h), g(s - h), g(s + h), g(s + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * g(s) + 16.0 * p1 - p2) / (12.0 * h * h);
    (d1, d2)
}
