//! Numerical toolkit for rotationally symmetric generalized Ricci metrics,
//! the spherical `a = 4` family they contain, and the rotational tori in
//! the 3-sphere that realize them.

pub mod error;
pub mod immersion;
pub mod mesh_io;
pub mod numerics;
pub mod phase_portrait;
pub mod spherical_family;
pub mod warped_geometry;

pub use error::{Error, Result};
pub use immersion::{
    big_theta, detect_closure, mean_curvature, profile_point, profile_simple_check, solve_for_ell,
    stereographic, surface_point, theta, theta_limits, theta_rate, ClosureResult, ProfileCurve,
    SolveOutcome, ThetaLimit, ThetaProfile,
};
pub use mesh_io::{
    build_profile, build_surface_mesh, export_csv, export_json, export_obj, scan_theta, Projection,
    ScanConfig, ScanTable, SurfaceMesh,
};
pub use phase_portrait::{
    admissible_energy_window, integrate_orbit, orbit_period_numeric, period_integral, potential,
    EnergyWindow, RicciParams,
};
pub use spherical_family::{
    classify, curvature_range, f_closed, Classification, CurvatureRange, SphericalParams,
    SphericalProfile,
};
pub use warped_geometry::{gaussian_curvature, ricci_residual, MetricProfile, RicciType};
