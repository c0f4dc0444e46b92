//! Growth functions, convergence of sphere measures, and sphere and ball
//! averages of functionals.

pub mod averages;
pub mod coprime;
pub mod density;
pub mod functional;
pub mod growth;
pub mod sectors;

pub use averages::{
    average_profile, ball_average, limit_integral, sphere_average, sphere_ball_factor_check,
    standard_plane_ball_mean, AverageValue, FactorCheck, LimitIntegral,
};
pub use coprime::{coprimality_demo, CoprimeReport, CoprimeRow, SIX_OVER_PI_SQUARED};
pub use density::{planar_density_target, simple_spelling_density, DensityReport};
pub use functional::Functional;
pub use growth::{default_window, growth_series, leading_coefficient, CoefficientFit, GrowthSeries};
pub use sectors::{measure_convergence_report, sector_histogram, ConvergenceReport, SectorHistogram};
