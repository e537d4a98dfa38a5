use num_complex::Complex64;

/// Streaming mean and spread of complex samples. `m2` is `Σ|x - mean|²`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    count: u64,
    mean: Complex64,
    m2: f64,
}

impl Welford {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: Complex64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += (delta.conj() * (x - self.mean)).re;
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        self.mean += delta * (nb / n as f64);
        self.m2 += other.m2 + delta.norm_sqr() * na * nb / n as f64;
        self.count = n;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> Complex64 {
        self.mean
    }

    /// Unbiased `E|x - μ|²`.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        self.m2 / (self.count - 1) as f64
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        (self.variance() / self.count as f64).sqrt()
    }
}

/// `|mean - exact| / stderr`; infinite when a zero spread meets a mismatch.
pub fn z_score(mean: Complex64, exact: f64, stderr: f64) -> f64 {
    let gap = (mean - Complex64::new(exact, 0.0)).norm();
    if stderr > 0.0 {
        gap / stderr
    } else if gap == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Pass,
    /// Borderline: rerun once with the next seed.
    Retry,
    Fail,
}

pub const Z_PASS: f64 = 4.0;
pub const Z_FAIL: f64 = 5.0;

pub fn gate(z: f64) -> Gate {
    if z < Z_PASS {
        Gate::Pass
    } else if z < Z_FAIL {
        Gate::Retry
    } else {
        Gate::Fail
    }
}
