//! Parameter sets shared by the benchmarks.

use ricci_lab::SphericalParams;

/// The embedded example near `Θ = 2π`.
pub fn embedded_example() -> SphericalParams {
    SphericalParams::new(1.0, 0.51, 0.73).expect("c > 0")
}

/// The immersed example near `Θ = 3π`.
pub fn immersed_example() -> SphericalParams {
    SphericalParams::new(1.0, 0.75, 0.870_002_4).expect("c > 0")
}

/// A level close to the divergent edge `ℓ → (cm + 1)/2`.
pub fn near_blow_up() -> SphericalParams {
    SphericalParams::new(1.0, 0.51, 0.755 - 1e-6).expect("c > 0")
}
