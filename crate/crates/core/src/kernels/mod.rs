//! Numerical primitives shared by the features and the selector.

mod acf;
mod histogram;
mod linfit;
mod special;
mod spline;
mod symbolize;
mod welch;

pub use acf::{autocorr, autocorr_direct, autocorr_fft, autocov_fft, first_zero_ac, first_zero_in, Acf};
pub use histogram::{bin_of as histogram_bin, histogram, Histogram};
pub use linfit::{ols_linfit, LinFit};
pub use special::{chi2_sf, ln_gamma, normal_sf, regularized_gamma_q};
pub use spline::cubic_spline_fit;
pub use symbolize::quantile_symbolize;
pub use welch::{welch, welch_psd, WelchSpectrum};

pub(crate) fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}
