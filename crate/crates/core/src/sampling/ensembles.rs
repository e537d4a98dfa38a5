//! Haar samplers and the ensemble registry.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::coe::{coe_joint_moment, coe_trace_moments_degree2, CoeMomentSpec};
use crate::combinatorics::IndexSequence;
use crate::error::{Error, Result};
use crate::exact::double_factorial_odd;
use crate::unitary::{cue_joint_moment, CueMomentSpec};
use crate::value::Evaluation;

use super::spec::{FactorKind, MomentSpec};

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    })
}

fn real_ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Householder QR followed by `Q ← Q·diag(r_kk/|r_kk|)`, which makes the
/// diagonal of `R` positive and the factorization unique.
fn phase_corrected_q(z: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..q.ncols() {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for x in q.column_mut(k).iter_mut() {
            *x *= phase;
        }
    }
    q
}

/// Gram–Schmidt with one reorthogonalization pass; the implied `R` has a
/// positive real diagonal.
fn orthonormalize_columns(mut z: DMatrix<Complex64>) -> DMatrix<Complex64> {
    for k in 0..z.ncols() {
        for _ in 0..2 {
            for p in 0..k {
                let proj = z.column(p).dotc(&z.column(k));
                let qp = z.column(p).clone_owned();
                z.column_mut(k).axpy(-proj, &qp, Complex64::new(1.0, 0.0));
            }
        }
        let norm = z.column(k).norm();
        z.column_mut(k).unscale_mut(norm);
    }
    z
}

/// Haar unitary `N × N`.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    phase_corrected_q(ginibre(n, n, rng))
}

/// First `m` columns of a Haar unitary `N × N`.
pub fn sample_haar_unitary_columns<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> DMatrix<Complex64> {
    if m >= n {
        return sample_haar_unitary(n, rng);
    }
    orthonormalize_columns(ginibre(n, m, rng))
}

/// Householder QR with the LAPACK `zgeqrf` reflector convention: each
/// `r_kk = -sign(Re a_kk)·‖a_k‖` is real but of data-dependent sign.
/// Returns `(Q, R)`.
fn lapack_style_qr(mut a: DMatrix<Complex64>) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = a.nrows();
    let one = Complex64::new(1.0, 0.0);
    let mut reflectors = Vec::new();
    for k in 0..a.ncols().min(n) {
        let alpha = a[(k, k)];
        let tail: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 && alpha.im == 0.0 {
            continue;
        }
        let beta = -alpha.re.signum() * (alpha.norm_sqr() + tail).sqrt();
        let tau = Complex64::new((beta - alpha.re) / beta, -alpha.im / beta);
        let scale = one / (alpha - beta);
        let mut v = vec![one; n - k];
        for i in k + 1..n {
            v[i - k] = a[(i, k)] * scale;
        }
        // A ← (I - conj(τ) v vᴴ) A
        for c in k..a.ncols() {
            let w: Complex64 = (k..n).map(|i| v[i - k].conj() * a[(i, c)]).sum();
            for i in k..n {
                a[(i, c)] -= tau.conj() * v[i - k] * w;
            }
        }
        reflectors.push((k, v, tau));
    }
    // Q = H_0 H_1 ⋯ applied to I from the right end
    let mut q = DMatrix::identity(n, n);
    for (k, v, tau) in reflectors.iter().rev() {
        for c in 0..n {
            let w: Complex64 = (*k..n).map(|i| v[i - k].conj() * q[(i, c)]).sum();
            for i in *k..n {
                q[(i, c)] -= tau * v[i - k] * w;
            }
        }
    }
    (q, a.upper_triangle())
}

/// `Q` of a LAPACK-convention QR without the phase fix; not Haar.
pub fn sample_uncorrected_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    lapack_style_qr(ginibre(n, n, rng)).0
}

/// `V_{ab} = Σ_k u_{ka} u_{kb}` for `a, b ≤ cols(u)`, summed in the same order
/// on both sides of the diagonal.
fn transpose_product(u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let m = u.ncols();
    let mut v = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let s: Complex64 = u.column(a).iter().zip(u.column(b).iter()).map(|(x, y)| x * y).sum();
            v[(a, b)] = s;
            v[(b, a)] = s;
        }
    }
    v
}

/// COE matrix `V = UᵀU`.
pub fn sample_coe<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    transpose_product(&sample_haar_unitary(n, rng))
}

/// Haar orthogonal `N × N`: real QR with the signs of `diag R` moved into `Q`.
pub fn sample_haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let qr = real_ginibre(n, n, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..n {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    q
}

/// `max |(Q*Q - I)_{ab}|` over the columns of `q`.
pub fn unitarity_residual(q: &DMatrix<Complex64>) -> f64 {
    let g = q.adjoint() * q;
    g.iter()
        .enumerate()
        .map(|(k, x)| {
            let (a, b) = (k % g.nrows(), k / g.nrows());
            (x - if a == b { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).norm()
        })
        .fold(0.0, f64::max)
}

pub fn orthogonality_residual(q: &DMatrix<f64>) -> f64 {
    let g = q.transpose() * q;
    (g - DMatrix::identity(q.ncols(), q.ncols())).amax()
}

/// `max |v_{ij} - v_{ji}|`
pub fn symmetry_residual(v: &DMatrix<Complex64>) -> f64 {
    (v - v.transpose()).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub const UNITARITY_TOLERANCE: f64 = 1e-10;
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// One draw: `entries[(i-1, j-1)]` is the sampled `x_{ij}` for every index the
/// caller asked for.
#[derive(Clone, Debug)]
pub struct Draw {
    pub entries: DMatrix<Complex64>,
    /// Orthonormality defect of the underlying Haar frame (`None` unless verified).
    pub unitarity: Option<f64>,
    /// `Some` for ensembles of symmetric matrices when verified.
    pub symmetry: Option<f64>,
}

impl Draw {
    pub fn check(&self) -> Result<()> {
        if let Some(r) = self.unitarity.filter(|&r| !(r < UNITARITY_TOLERANCE)) {
            return Err(Error::Verification(format!("unitarity residual {r:e} exceeds {UNITARITY_TOLERANCE:e}")));
        }
        if let Some(r) = self.symmetry.filter(|&r| !(r < SYMMETRY_TOLERANCE)) {
            return Err(Error::Verification(format!("symmetry residual {r:e} exceeds {SYMMETRY_TOLERANCE:e}")));
        }
        Ok(())
    }
}

pub trait Ensemble: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Draws a sample covering indices `≤ m` (`m = N` for the full matrix).
    fn draw(&self, n: usize, m: usize, verify: bool, rng: &mut ChaCha8Rng) -> Draw;
    /// Exact expectation of `spec` at dimension `n`, when the engine has one.
    fn exact(&self, spec: &MomentSpec, n: usize) -> Option<BigRational>;
}

fn sequences(pairs: &[(usize, usize)]) -> Option<(IndexSequence, IndexSequence)> {
    let rows = IndexSequence::new(pairs.iter().map(|p| p.0).collect()).ok()?;
    let cols = IndexSequence::new(pairs.iter().map(|p| p.1).collect()).ok()?;
    Some((rows, cols))
}

fn cue_exact(spec: &MomentSpec, n: usize) -> Option<BigRational> {
    let (plain, conj) = spec.index_pairs()?;
    let (i, j) = sequences(&plain)?;
    let (ip, jp) = sequences(&conj)?;
    let spec = CueMomentSpec::new(i, j, ip, jp).ok()?;
    cue_joint_moment(&spec, Evaluation::At(n as u64)).ok()?.into_number()
}

struct Cue;
struct CueUncorrected;
struct Coe;
struct Orthogonal;

impl Ensemble for Cue {
    fn name(&self) -> &'static str {
        "cue"
    }

    fn description(&self) -> &'static str {
        "Haar unitary U via phase-corrected QR of a complex Ginibre matrix"
    }

    fn draw(&self, n: usize, m: usize, verify: bool, rng: &mut ChaCha8Rng) -> Draw {
        let u = sample_haar_unitary_columns(n, m, rng);
        Draw {
            unitarity: verify.then(|| unitarity_residual(&u)),
            symmetry: None,
            entries: u,
        }
    }

    fn exact(&self, spec: &MomentSpec, n: usize) -> Option<BigRational> {
        cue_exact(spec, n)
    }
}

impl Ensemble for CueUncorrected {
    fn name(&self) -> &'static str {
        "cue-uncorrected"
    }

    fn description(&self) -> &'static str {
        "Q of a LAPACK-convention Householder QR without the phase fix (not Haar; for comparison)"
    }

    fn draw(&self, n: usize, _m: usize, verify: bool, rng: &mut ChaCha8Rng) -> Draw {
        let u = sample_uncorrected_unitary(n, rng);
        Draw {
            unitarity: verify.then(|| unitarity_residual(&u)),
            symmetry: None,
            entries: u,
        }
    }

    /// The Haar value, so the z-score measures the bias.
    fn exact(&self, spec: &MomentSpec, n: usize) -> Option<BigRational> {
        cue_exact(spec, n)
    }
}

impl Ensemble for Coe {
    fn name(&self) -> &'static str {
        "coe"
    }

    fn description(&self) -> &'static str {
        "V = U^T U for a Haar unitary U"
    }

    fn draw(&self, n: usize, m: usize, verify: bool, rng: &mut ChaCha8Rng) -> Draw {
        let u = sample_haar_unitary_columns(n, m, rng);
        let v = transpose_product(&u);
        Draw {
            unitarity: verify.then(|| unitarity_residual(&u)),
            symmetry: verify.then(|| symmetry_residual(&v)),
            entries: v,
        }
    }

    fn exact(&self, spec: &MomentSpec, n: usize) -> Option<BigRational> {
        if let MomentSpec::Trace(t) = spec {
            return coe_trace_moments_degree2(*t).ok()?.eval(n as u64).ok();
        }
        let (plain, conj) = spec.index_pairs()?;
        let flat = |ps: &[(usize, usize)]| IndexSequence::new(ps.iter().flat_map(|&(a, b)| [a, b]).collect());
        let spec = CoeMomentSpec::new(flat(&plain).ok()?, flat(&conj).ok()?).ok()?;
        coe_joint_moment(&spec, Evaluation::At(n as u64)).ok()?.into_number()
    }
}

impl Ensemble for Orthogonal {
    fn name(&self) -> &'static str {
        "orthogonal"
    }

    fn description(&self) -> &'static str {
        "Haar orthogonal O via sign-corrected real QR"
    }

    fn draw(&self, n: usize, _m: usize, verify: bool, rng: &mut ChaCha8Rng) -> Draw {
        let o = sample_haar_orthogonal(n, rng);
        Draw {
            unitarity: verify.then(|| orthogonality_residual(&o)),
            symmetry: None,
            entries: o.map(|x| Complex64::new(x, 0.0)),
        }
    }

    /// Powers of a single real entry: `E[o^{2k}] = (2k-1)!!/(N(N+2)⋯(N+2k-2))`.
    fn exact(&self, spec: &MomentSpec, n: usize) -> Option<BigRational> {
        let MomentSpec::Monomial(fs) = spec else {
            return None;
        };
        let at = (fs.first()?.row, fs[0].col);
        if fs.iter().any(|f| (f.row, f.col) != at) {
            return None;
        }
        if fs.iter().any(|f| f.kind == FactorKind::Abs && f.power % 2 == 1) {
            return None;
        }
        let degree: u32 = fs.iter().map(|f| f.power).sum();
        if degree % 2 == 1 {
            return Some(BigRational::from_integer(0.into()));
        }
        let k = (degree / 2) as usize;
        let den: BigInt = (0..k).map(|t| BigInt::from(n + 2 * t)).product();
        Some(BigRational::new(double_factorial_odd(k), den))
    }
}

static ENSEMBLES: [&dyn Ensemble; 4] = [&Cue, &Coe, &Orthogonal, &CueUncorrected];

pub fn ensembles() -> &'static [&'static dyn Ensemble] {
    &ENSEMBLES
}

pub fn ensemble(name: &str) -> Result<&'static dyn Ensemble> {
    ENSEMBLES.iter().copied().find(|e| e.name() == name).ok_or_else(|| {
        let known: Vec<&str> = ENSEMBLES.iter().map(|e| e.name()).collect();
        Error::domain(format!("unknown ensemble `{name}` (known: {})", known.join(", ")))
    })
}
