//! Moving-average processes driven by seeded Gaussian innovations.
//!
//! A [`ProcessSample`] holds `X_t = Σ_{j=0..q} a_j ε_{t−j}` for
//! `t = 0..T_len` together with the innovations that generated it, including
//! the `q` pre-sample draws `ε_{−q}, …, ε_{−1}` so the path is stationary from
//! the first observation.
//!
//! Innovations come from `ChaCha20Rng::seed_from_u64(seed)` passed through
//! `rand_distr::StandardNormal`; see [`GENERATOR`].

use std::collections::VecDeque;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invertibility::{classify_roots, invert_causal, DEFAULT_ROOT_TOL};
use crate::scalar::Scalar;
use crate::wiener::WienerElement;

/// Generator identification recorded alongside every stochastic output.
pub const GENERATOR: &str = "ChaCha20Rng::seed_from_u64 (rand_chacha 0.9) -> StandardNormal (rand_distr 0.5)";

/// Upper bound on innovations-algorithm steps in [`wold_estimate`].
pub const WOLD_MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessSample<T: Scalar> {
    /// `X_0 … X_{T_len−1}`.
    pub path: Vec<T>,
    /// `ε_{−q} … ε_{T_len−1}`; the first `warmup` entries precede the path.
    pub innovations: Vec<T>,
    pub warmup: usize,
    pub sigma: T,
    pub transfer: WienerElement<T>,
    pub seed: u64,
}

impl<T: Scalar> ProcessSample<T> {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Innovations aligned with the path, `ε_0 … ε_{T_len−1}`.
    pub fn aligned_innovations(&self) -> &[T] {
        &self.innovations[self.warmup..]
    }
}

/// Real causal coefficients `(1, a_1, …, a_q)` of a Wold-normalized transfer.
fn normalized_coeffs<T: Scalar>(transfer: &WienerElement<T>) -> Result<Vec<T>> {
    transfer.require_causal()?;
    if !transfer.is_real() {
        return Err(Error::NotReal);
    }
    let a0 = transfer.coeff(0);
    if transfer.offset() != 0 || a0 != Complex::one() {
        return Err(Error::NotNormalized {
            a0: format!("{}{:+}i", a0.re, a0.im),
        });
    }
    Ok(transfer.coeffs().iter().map(|c| c.re).collect())
}

/// Simulates `T_len` observations of the MA process with the given transfer
/// function and innovation standard deviation. Deterministic in `seed`.
pub fn simulate<T: Scalar>(
    transfer: &WienerElement<T>,
    sigma: T,
    t_len: usize,
    seed: u64,
) -> Result<ProcessSample<T>> {
    let a = normalized_coeffs(transfer)?;
    if !(sigma > T::zero() && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    if t_len == 0 {
        return Err(Error::InvalidArgument("T_len must be at least 1".into()));
    }
    let warmup = a.len() - 1;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let innovations: Vec<T> = (0..warmup + t_len)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            T::lit(z) * sigma
        })
        .collect();
    let path = (0..t_len)
        .map(|t| {
            let idx = t + warmup;
            a.iter()
                .enumerate()
                .fold(T::zero(), |acc, (j, &aj)| acc + aj * innovations[idx - j])
        })
        .collect();
    Ok(ProcessSample {
        path,
        innovations,
        warmup,
        sigma,
        transfer: transfer.clone(),
        seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport<T> {
    /// `b_1 … b_M`, stored at index `n − 1`.
    pub ar_coeffs: Vec<T>,
    pub lag_cutoff: usize,
    /// `(M, mean of (ε̂_t − ε_t)²)` for `M = 0..=lag_cutoff`.
    pub mse_per_cutoff: Vec<(usize, T)>,
}

/// Mean square of `Σ_{n=0..M} g_n X_{t−n} − ε_t` for every `M <= max_lag`,
/// over the common window `t >= max_lag`.
fn cutoff_mse<T: Scalar>(sample: &ProcessSample<T>, g: &[T], max_lag: usize) -> Result<Vec<(usize, T)>> {
    let x = &sample.path;
    if x.len() <= max_lag {
        return Err(Error::InvalidArgument(format!(
            "path length {} must exceed max_lag {max_lag}",
            x.len()
        )));
    }
    let eps = sample.aligned_innovations();
    let count = T::from_len(x.len() - max_lag);
    let mut recon = vec![T::zero(); x.len() - max_lag];
    let mut out = Vec::with_capacity(max_lag + 1);
    for (m, &gm) in g.iter().enumerate().take(max_lag + 1) {
        let mut sq = T::zero();
        for (i, r) in recon.iter_mut().enumerate() {
            let t = i + max_lag;
            *r += gm * x[t - m];
            let e = *r - eps[t];
            sq += e * e;
        }
        out.push((m, sq / count));
    }
    Ok(out)
}

/// Reconstructs innovations from observations with the truncated AR(∞)
/// filter `ε̂_t = X_t − Σ_{n=1..M} b_n X_{t−n}`, `b_n = −g_n`, `g = 1/f`,
/// and reports the error against the true innovations for every
/// `M <= max_lag`.
pub fn reconstruct_innovations<T: Scalar>(
    sample: &ProcessSample<T>,
    max_lag: usize,
) -> Result<ReconstructionReport<T>> {
    // certifies invertibility; the coefficients are the same recursion
    invert_causal(&sample.transfer, (max_lag + 1).max(1 << 16), T::tol(1e-12))?;
    let g: Vec<T> = sample
        .transfer
        .series_inverse(max_lag + 1)?
        .into_iter()
        .map(|c| c.re)
        .collect();
    let mse_per_cutoff = cutoff_mse(sample, &g, max_lag)?;
    Ok(ReconstructionReport {
        ar_coeffs: g[1..].iter().map(|&v| -v).collect(),
        lag_cutoff: max_lag,
        mse_per_cutoff,
    })
}

/// The same reconstruction run with the formal (divergent) coefficients of
/// `1/f` for a transfer with a root strictly inside the unit circle.
pub fn divergence_demo<T: Scalar>(sample: &ProcessSample<T>, max_lag: usize) -> Result<Vec<(usize, T)>> {
    let class = classify_roots(&sample.transfer, T::lit(DEFAULT_ROOT_TOL))?;
    if class.inside == 0 {
        return Err(Error::InvalidArgument(
            "divergence demo needs a transfer with a root strictly inside the unit circle".into(),
        ));
    }
    let g: Vec<T> = sample
        .transfer
        .series_inverse(max_lag + 1)?
        .into_iter()
        .map(|c| c.re)
        .collect();
    cutoff_mse(sample, &g, max_lag)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterRow<T> {
    pub cutoff: usize,
    /// `max_t |partial_t − full_t|`.
    pub max_deviation: T,
    /// Mean of `|partial_t − full_t|²`.
    pub mse: T,
}

/// Applies `Σ a_n X_{t−n}` in full and with the coefficients restricted to
/// `|n| <= cutoff`, over every `t` where the full sum is defined.
pub fn l1_filter_convergence<T: Scalar>(
    sample: &ProcessSample<T>,
    filter: &WienerElement<T>,
    cutoffs: &[usize],
) -> Result<Vec<FilterRow<T>>> {
    if cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("cutoffs must be strictly increasing".into()));
    }
    let x = &sample.path;
    let t_lo = filter.last_index().max(0);
    let t_hi = x.len() as i64 - 1 + filter.offset().min(0);
    if t_hi < t_lo {
        return Err(Error::InvalidArgument("filter support exceeds the path length".into()));
    }
    let apply = |t: i64, cutoff: Option<usize>| -> Complex<T> {
        let mut s = Complex::zero();
        for (i, &a) in filter.coeffs().iter().enumerate() {
            let n = filter.offset() + i as i64;
            if cutoff.is_some_and(|k| n.unsigned_abs() as usize > k) {
                continue;
            }
            s += a * x[(t - n) as usize];
        }
        s
    };
    let full: Vec<Complex<T>> = (t_lo..=t_hi).map(|t| apply(t, None)).collect();
    let count = T::from_len(full.len());
    Ok(cutoffs
        .par_iter()
        .map(|&k| {
            let (mut max_dev, mut sq) = (T::zero(), T::zero());
            for (t, &fv) in (t_lo..=t_hi).zip(&full) {
                let d = (apply(t, Some(k)) - fv).norm();
                max_dev = max_dev.max(d);
                sq += d * d;
            }
            FilterRow {
                cutoff: k,
                max_deviation: max_dev,
                mse: sq / count,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgodicRow<T> {
    pub t_len: usize,
    pub mean: T,
    /// `|f(1)| σ / √T_len`, the asymptotic standard deviation of the mean.
    pub predicted_std: T,
}

impl<T: Scalar> ErgodicRow<T> {
    pub fn abs_mean(&self) -> T {
        self.mean.abs()
    }
}

/// Sample means of simulated paths against `|f(1)| σ / √T_len`.
pub fn ergodic_mean_check<T: Scalar>(
    transfer: &WienerElement<T>,
    sigma: T,
    t_lens: &[usize],
    seed: u64,
) -> Result<Vec<ErgodicRow<T>>> {
    let a = normalized_coeffs(transfer)?;
    let f1: T = a.iter().copied().sum();
    t_lens
        .par_iter()
        .map(|&t_len| {
            let sample = simulate(transfer, sigma, t_len, seed)?;
            let mean = sample.path.iter().copied().sum::<T>() / T::from_len(t_len);
            Ok(ErgodicRow {
                t_len,
                mean,
                predicted_std: f1.abs() * sigma / T::from_len(t_len).sqrt(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct WoldEstimate<T: Scalar> {
    /// `(1, θ_1, …, θ_q)`.
    pub transfer: WienerElement<T>,
    /// Innovation variance `σ²`.
    pub variance: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Cholesky test of the `(q+1)×(q+1)` autocovariance matrix.
fn check_positive_definite<T: Scalar>(gamma: &[T]) -> Result<()> {
    let n = gamma.len();
    let mut l = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = gamma[i - j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return Err(Error::NotPositiveDefinite {
                        index: i,
                        pivot: s.to_f64().unwrap_or(f64::NAN),
                    });
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Ok(())
}

/// Recovers MA(q) coefficients and innovation variance from the
/// autocovariances `γ(0..=q)` with the innovations algorithm, iterated until
/// the coefficients stop changing.
///
/// The iteration converges to the representative with every root outside
/// (or on) the unit circle.
pub fn wold_estimate<T: Scalar>(autocov: &[T], order: usize) -> Result<WoldEstimate<T>> {
    if autocov.len() < order + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} autocovariances for order {order}, got {}",
            order + 1,
            autocov.len()
        )));
    }
    let gamma = &autocov[..=order];
    if gamma.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidArgument("autocovariances must be finite".into()));
    }
    check_positive_definite(gamma)?;
    let q = order;
    if q == 0 {
        return Ok(WoldEstimate {
            transfer: WienerElement::one(),
            variance: gamma[0],
            iterations: 0,
            converged: true,
        });
    }
    let gam = |h: usize| if h <= q { gamma[h] } else { T::zero() };
    let tol = T::epsilon() * T::lit(16.0);
    // history of (θ_{k,1..q}, v_k) for the last q steps, most recent at the back
    let mut hist: VecDeque<(Vec<T>, T)> = VecDeque::with_capacity(q + 1);
    hist.push_back((vec![T::zero(); q], gamma[0]));
    let mut iterations = 0;
    let mut converged = false;
    for n in 1..=WOLD_MAX_ITERATIONS {
        iterations = n;
        let start = n.saturating_sub(q);
        // hist holds k = start..n-1 (older entries dropped)
        let base = n - hist.len();
        let entry = |k: usize| &hist[k - base];
        let mut theta = vec![T::zero(); q]; // theta[j-1] = θ_{n,j}
        for k in start..n {
            let mut s = gam(n - k);
            for j in start..k {
                let (ref th_k, _) = *entry(k);
                let (_, v_j) = *entry(j);
                if k - j <= q {
                    s -= th_k[k - j - 1] * theta[n - j - 1] * v_j;
                }
            }
            let (_, v_k) = *entry(k);
            theta[n - k - 1] = s / v_k;
        }
        let mut v = gamma[0];
        for j in start..n {
            let (_, v_j) = *entry(j);
            let t = theta[n - j - 1];
            v -= t * t * v_j;
        }
        if !(v > T::zero()) {
            return Err(Error::NotPositiveDefinite {
                index: n,
                pivot: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (prev_theta, prev_v) = hist.back().unwrap();
        let change = theta
            .iter()
            .zip(prev_theta)
            .map(|(a, b)| (*a - *b).abs())
            .fold((v - *prev_v).abs() / v, T::max);
        hist.push_back((theta, v));
        if hist.len() > q {
            hist.pop_front();
        }
        if n > q && change <= tol {
            converged = true;
            break;
        }
    }
    let (theta, v) = hist.back().unwrap().clone();
    let mut coeffs = vec![T::one()];
    coeffs.extend(theta);
    Ok(WoldEstimate {
        transfer: WienerElement::from_real(&coeffs),
        variance: v,
        iterations,
        converged,
    })
}
