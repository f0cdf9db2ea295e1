use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::next_pow2;
use crate::error::{Error, Result};
use crate::series::mean;

/// Direct summation is cheaper than an FFT below this many lags.
const DIRECT_MAX_LAG: usize = 64;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Biased autocorrelation coefficients for lags `0..=max_lag`.
#[derive(Debug, Clone, PartialEq)]
pub struct Acf {
    values: Vec<f64>,
}

impl Acf {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, lag: usize) -> f64 {
        self.values[lag]
    }
}

fn centered(x: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = mean(x);
    let y: Vec<f64> = x.iter().map(|v| v - m).collect();
    let ss: f64 = y.iter().map(|v| v * v).sum();
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let floor = scale * scale * x.len() as f64 * 1e-26;
    if !(ss > floor) {
        return Err(Error::DegenerateInput("constant series"));
    }
    Ok((y, ss))
}

/// rho(tau) = sum_t (x_t - mu)(x_{t+tau} - mu) / sum_t (x_t - mu)^2
pub fn autocorr(x: &[f64], max_lag: usize) -> Result<Acf> {
    if max_lag >= x.len() {
        return Err(Error::DegenerateInput("max_lag must be below the series length"));
    }
    if max_lag <= DIRECT_MAX_LAG {
        autocorr_direct(x, max_lag)
    } else {
        autocorr_fft(x, max_lag)
    }
}

pub fn autocorr_direct(x: &[f64], max_lag: usize) -> Result<Acf> {
    let (y, ss) = centered(x)?;
    let max_lag = max_lag.min(x.len() - 1);
    let mut values = Vec::with_capacity(max_lag + 1);
    values.push(1.0);
    for lag in 1..=max_lag {
        let s: f64 = y[..y.len() - lag]
            .iter()
            .zip(&y[lag..])
            .map(|(a, b)| a * b)
            .sum();
        values.push(s / ss);
    }
    Ok(Acf { values })
}

pub fn autocorr_fft(x: &[f64], max_lag: usize) -> Result<Acf> {
    let (y, ss) = centered(x)?;
    let max_lag = max_lag.min(x.len() - 1);
    let cov = lagged_products(&y, max_lag);
    let mut values: Vec<f64> = cov.iter().map(|c| c / ss).collect();
    values[0] = 1.0;
    Ok(Acf { values })
}

/// Biased autocovariance `(1/N) sum_t y_t y_{t+tau}` of the mean-removed
/// series, lags `0..=max_lag`. Zero-variance input yields zeros.
pub fn autocov_fft(x: &[f64], max_lag: usize) -> Vec<f64> {
    let m = mean(x);
    let y: Vec<f64> = x.iter().map(|v| v - m).collect();
    let n = x.len() as f64;
    lagged_products(&y, max_lag.min(x.len() - 1))
        .into_iter()
        .map(|c| c / n)
        .collect()
}

/// sum_t y_t y_{t+tau} for tau in 0..=max_lag via a zero-padded FFT.
fn lagged_products(y: &[f64], max_lag: usize) -> Vec<f64> {
    let nfft = next_pow2(2 * y.len());
    let mut buf: Vec<Complex<f64>> = y
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(nfft)
        .collect();
    PLANNER.with(|p| {
        let mut planner = p.borrow_mut();
        planner.plan_fft_forward(nfft).process(&mut buf);
        for c in buf.iter_mut() {
            *c = Complex::new(c.norm_sqr(), 0.0);
        }
        planner.plan_fft_inverse(nfft).process(&mut buf);
    });
    let scale = 1.0 / nfft as f64;
    buf[..=max_lag].iter().map(|c| c.re * scale).collect()
}

/// Smallest lag >= 1 with rho <= 0; the last lag when none crosses.
pub fn first_zero_in(acf: &Acf) -> usize {
    acf.values
        .iter()
        .skip(1)
        .position(|&r| r <= 0.0)
        .map_or(acf.max_lag(), |p| p + 1)
}

/// First zero crossing of the full-length autocorrelation.
pub fn first_zero_ac(x: &[f64]) -> Result<usize> {
    if x.len() < 3 {
        return Err(Error::DegenerateInput("first zero crossing needs 3 samples"));
    }
    let acf = autocorr(x, x.len() - 1)?;
    Ok(first_zero_in(&acf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sine(n: usize, period: f64) -> Vec<f64> {
        (0..n)
            .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period).sin())
            .collect()
    }

    #[test]
    fn lag_zero_is_one() {
        let acf = autocorr(&[0.3, 1.0, -2.0, 4.0, 0.0], 4).unwrap();
        assert_eq!(acf.at(0), 1.0);
        let acf = autocorr(&sine(500, 7.0), 499).unwrap();
        assert_eq!(acf.at(0), 1.0);
    }

    #[test]
    fn sinusoid_quarter_period() {
        let acf = autocorr(&sine(1000, 20.0), 10).unwrap();
        assert!(acf.at(5).abs() < 0.01, "{}", acf.at(5));
    }

    #[test]
    fn alternating_is_anticorrelated() {
        let x: Vec<f64> = (0..100).map(|t| if t % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let acf = autocorr(&x, 1).unwrap();
        assert!((acf.at(1) + 0.99).abs() < 1e-12);
        assert_eq!(first_zero_ac(&x).unwrap(), 1);
    }

    #[test]
    fn constant_is_degenerate() {
        assert!(autocorr(&[2.0; 10], 3).is_err());
        assert!(first_zero_ac(&[2.0; 10]).is_err());
    }

    #[test]
    fn fft_and_direct_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 17, 64, 65, 300, 1031] {
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 1.0).collect();
            let a = autocorr_direct(&x, n - 1).unwrap();
            let b = autocorr_fft(&x, n - 1).unwrap();
            for (u, v) in a.values().iter().zip(b.values()) {
                assert!((u - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sinusoid_first_zero() {
        let x = sine(1000, 20.0);
        let r = autocorr(&x, 10).unwrap();
        assert!(r.values()[5].abs() < 0.01);
        assert!(r.values()[5] > 0.0);
        assert_eq!(first_zero_ac(&x).unwrap(), 6);
    }

    #[test]
    fn white_noise_first_zero_small() {
        use rand_distr::{Distribution, StandardNormal};
        let mut hits = 0;
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..10_000)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            if first_zero_ac(&x).unwrap() <= 5 {
                hits += 1;
            }
        }
        assert!(hits >= 95, "{hits}");
    }

    #[test]
    fn bounded_by_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<f64> = (0..777).map(|_| rng.random::<f64>().powi(3)).collect();
        let acf = autocorr(&x, 776).unwrap();
        assert!(acf.values().iter().all(|r| r.abs() <= 1.0 + 1e-9));
    }
}
