//! Fermi-surface-aware quadrature: panel rules, kernel integrals, region
//! integrals in two and three dimensions, and closed-form references.

pub mod gauss_legendre;
pub mod integrals;
pub mod oracles;
pub mod panel;
pub mod regions;

pub use gauss_legendre::{gauss_legendre, GaussLegendre};
pub use integrals::{
    default_cutoff, fermi_breakpoints, thermal_breakpoints, integrate_m_t, integrate_n_t, integrate_n_t_fullline,
    weighted_m_integral, FullLineIntegral, MWeight,
};
pub use oracles::ClosedForm;
pub use panel::{clip_breakpoints, integrate, integrate_interval, integrate_vec, Integral, PanelScheme, VecIntegral};
pub use regions::{a2_cap, region_integral_m, Region, RegionIntegral, RegionSpec};
