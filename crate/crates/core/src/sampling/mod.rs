//! Monte Carlo estimates of entry and trace moments, checked against the exact engine.

mod ensembles;
mod spec;
mod stats;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coe::{coe_diag_moment_closed, coe_offdiag_moment, Entry};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::value::Evaluation;

pub use ensembles::{
    ensemble, ensembles, orthogonality_residual, sample_coe, sample_haar_orthogonal, sample_haar_unitary,
    sample_haar_unitary_columns, sample_uncorrected_unitary, symmetry_residual, unitarity_residual, Draw, Ensemble,
    SYMMETRY_TOLERANCE, UNITARITY_TOLERANCE,
};
pub use spec::{Factor, FactorKind, IndexPairs, MomentSpec};
pub use stats::{gate, z_score, Gate, Welford, Z_FAIL, Z_PASS};

pub const MIN_SAMPLES: u64 = 1000;
/// Samples per RNG stream.
pub const BATCH_SIZE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn as_string<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub ensemble: String,
    pub target: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub mean: ComplexValue,
    pub stderr: f64,
    #[serde(serialize_with = "as_string")]
    pub exact: Option<BigRational>,
    pub exact_float: Option<f64>,
    pub z_score: Option<f64>,
}

impl EstimateReport {
    pub fn gate(&self) -> Option<Gate> {
        self.z_score.map(gate)
    }
}

/// One Monte Carlo run: dimension, sample count and seed.
///
/// Samples are split into batches of [`BATCH_SIZE`]; batch `b` draws from
/// `ChaCha8Rng::seed_from_u64(seed)` on stream `b`, and the per-batch
/// accumulators are merged in batch order, so results do not depend on the
/// thread count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleRun {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Check unitarity and symmetry residuals on every draw.
    pub verify: bool,
}

impl SampleRun {
    pub fn new(n: usize, samples: u64, seed: u64) -> Self {
        Self {
            n,
            samples,
            seed,
            verify: false,
        }
    }

    pub fn verified(self) -> Self {
        Self { verify: true, ..self }
    }

    fn validate(&self, specs: &[MomentSpec]) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::domain("N must be a positive integer"));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::domain(format!("at least {MIN_SAMPLES} samples are required")));
        }
        if specs.is_empty() {
            return Err(Error::domain("no moment specs given"));
        }
        let mut m = 0;
        for s in specs {
            s.check_dimension(self.n)?;
            m = m.max(s.max_index().unwrap_or(self.n));
        }
        Ok(m)
    }

    /// Raw accumulators, one per spec.
    pub fn accumulate(&self, ensemble: &dyn Ensemble, specs: &[MomentSpec]) -> Result<Vec<Welford>> {
        let m = self.validate(specs)?;
        let batches = self.samples.div_ceil(BATCH_SIZE);
        let parts: Vec<Vec<Welford>> = (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(b);
                let size = BATCH_SIZE.min(self.samples - b * BATCH_SIZE);
                let mut acc = vec![Welford::new(); specs.len()];
                for _ in 0..size {
                    let draw = ensemble.draw(self.n, m, self.verify, &mut rng);
                    if self.verify {
                        draw.check()?;
                    }
                    for (a, s) in acc.iter_mut().zip(specs) {
                        a.push(s.evaluate(&draw.entries));
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let mut total = vec![Welford::new(); specs.len()];
        for part in &parts {
            for (t, p) in total.iter_mut().zip(part) {
                t.merge(p);
            }
        }
        Ok(total)
    }

    /// Estimates every spec on the same draws.
    pub fn estimate(&self, ensemble: &dyn Ensemble, specs: &[MomentSpec]) -> Result<Vec<EstimateReport>> {
        let acc = self.accumulate(ensemble, specs)?;
        Ok(specs
            .iter()
            .zip(acc)
            .map(|(spec, w)| {
                let exact = ensemble.exact(spec, self.n);
                let exact_float = exact.as_ref().and_then(|q| q.to_f64());
                EstimateReport {
                    ensemble: ensemble.name().to_string(),
                    target: spec.to_string(),
                    n: self.n,
                    samples: w.count(),
                    seed: self.seed,
                    mean: w.mean().into(),
                    stderr: w.stderr(),
                    z_score: exact_float.map(|e| z_score(w.mean(), e, w.stderr())),
                    exact,
                    exact_float,
                }
            })
            .collect())
    }
}

pub fn estimate_moment(
    ensemble: &dyn Ensemble,
    spec: &MomentSpec,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<EstimateReport> {
    Ok(SampleRun::new(n, samples, seed).estimate(ensemble, std::slice::from_ref(spec))?.remove(0))
}

fn entry_name(e: &Entry) -> &'static str {
    match e {
        Entry::Diagonal => "diagonal",
        Entry::OffDiagonal => "offdiagonal",
    }
}

fn serialize_entry<S: Serializer>(e: &Entry, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(entry_name(e))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// Exact finite-`N` moment before rescaling.
    #[serde(serialize_with = "as_string")]
    pub exact: Option<BigRational>,
    pub rescaled_exact: f64,
    /// `|rescaled_exact - n!| / n!`
    pub relative_gap: f64,
    pub rescaled_mean: Option<f64>,
    pub rescaled_stderr: Option<f64>,
    pub z_score: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianLimitReport {
    #[serde(serialize_with = "serialize_entry")]
    pub entry: Entry,
    pub n: usize,
    /// `n!`, the `2n`-th absolute moment of a standard complex Gaussian.
    pub limit: u64,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<LimitRow>,
}

/// Rescaled moments `(N/2)^n E|v_11|^{2n}` or `N^n E|v_12|^{2n}` of the COE
/// across `dims`, exact and (when `samples > 0`) by Monte Carlo.
pub fn gaussian_limit_check(
    entry: Entry,
    n: usize,
    dims: &[usize],
    samples: u64,
    seed: u64,
) -> Result<GaussianLimitReport> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let limit = factorial(n).to_f64().expect("small factorial");
    let coe = ensemble("coe")?;
    let mut rows = Vec::with_capacity(dims.len());
    for &big_n in dims {
        let (exact, scale, spec) = match entry {
            Entry::Diagonal => {
                let v = coe_diag_moment_closed(n)?.eval(big_n as u64)?;
                (v, (big_n as f64 / 2.0).powi(n as i32), MomentSpec::abs_power(1, 1, 2 * n as u32))
            }
            Entry::OffDiagonal => {
                let v = coe_offdiag_moment(n, Evaluation::At(big_n as u64))?
                    .into_number()
                    .expect("concrete evaluation");
                (v, (big_n as f64).powi(n as i32), MomentSpec::abs_power(1, 2, 2 * n as u32))
            }
        };
        let rescaled_exact = exact.to_f64().expect("finite moment") * scale;
        let mut row = LimitRow {
            n: big_n,
            exact: Some(exact),
            rescaled_exact,
            relative_gap: (rescaled_exact - limit).abs() / limit,
            rescaled_mean: None,
            rescaled_stderr: None,
            z_score: None,
        };
        if samples > 0 {
            let w = SampleRun::new(big_n, samples, seed).accumulate(coe, std::slice::from_ref(&spec))?[0];
            let (mean, stderr) = (w.mean() * scale, w.stderr() * scale);
            row.rescaled_mean = Some(mean.re);
            row.rescaled_stderr = Some(stderr);
            row.z_score = Some(z_score(mean, rescaled_exact, stderr));
        }
        rows.push(row);
    }
    Ok(GaussianLimitReport {
        entry,
        n,
        limit: limit as u64,
        samples,
        seed,
        rows,
    })
}
