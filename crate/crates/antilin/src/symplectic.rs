//! Conjugation geometry: one-parameter families of conjugations driven by a
//! commuting Hermitian generator, discrete winding indices of closed curves
//! of conjugations, curve lengths, and the correspondence between
//! conjugations and the real subspaces they fix.
//!
//! A line through the manifold of conjugations is written
//! `theta_t = exp(itH) theta_0 exp(-itH)` with `H` Hermitian and commuting
//! with `theta_0` as a map.  Such lines satisfy the midpoint exchange rule
//! `theta_r theta_{(r+s)/2} = theta_{(r+s)/2} theta_s` and return to their
//! start after `t = pi` exactly when `H` has integer spectrum.

use ndarray::{Array1, Array2};

use crate::core::{
    compose_anti_anti, AntiOp, Cplx, HVector, LinOp, DEFAULT_TOL,
};
use crate::decomp::{classify, OpClass};
use crate::error::{Error, Result};
use crate::{batch, linalg};

/// Largest operator-norm gap allowed between consecutive samples of a curve.
/// Keeping steps under 2 keeps each transition away from the antipode, so
/// discrete winding sums cannot silently skip a whole loop.
const STEP_BOUND: f64 = 1.9;

/// One-parameter family `t -> exp(itH) theta_0 exp(-itH)` of conjugations.
///
/// The eigendecomposition of the generator is cached at construction, so each
/// sample costs two dense multiplications.
#[derive(Debug, Clone)]
pub struct AcqLine {
    base: AntiOp,
    generator: LinOp,
    evals: Array1<f64>,
    w: Array2<Cplx>,
    /// Base matrix expressed in the eigenbasis: W^dag M_0 conj(W).
    m0p: Array2<Cplx>,
}

impl AcqLine {
    /// The conjugation at `t = 0`.
    pub fn base(&self) -> &AntiOp {
        &self.base
    }

    /// The Hermitian generator.
    pub fn generator(&self) -> &LinOp {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Evaluates the family at parameter `t`.
    pub fn sample(&self, t: f64) -> AntiOp {
        // In the eigenbasis the map is phase scaling on both sides:
        // M_t = W diag(e^{it a_j}) M_0' diag(e^{it a_k}) W^T.
        let d = self.dim();
        let ph: Vec<Cplx> = self
            .evals
            .iter()
            .map(|a| Cplx::from_polar(1.0, t * a))
            .collect();
        let scaled = Array2::from_shape_fn((d, d), |(j, k)| ph[j] * self.m0p[(j, k)] * ph[k]);
        let m = self.w.dot(&scaled).dot(&self.w.t());
        AntiOp::new(m).expect("finite by construction")
    }

    /// Evaluates the family at many parameters; order follows the input.
    pub fn sample_many(&self, ts: &[f64]) -> Vec<AntiOp> {
        batch::map(ts, |t| self.sample(*t))
    }
}

/// Builds the family `t -> exp(itH) theta_0 exp(-itH)`.
///
/// `theta0` must be a conjugation and `h` a Hermitian operator commuting with
/// it as a map (`h(theta0 v) = theta0(h v)` for all `v`).  Commutation keeps
/// every sample a conjugation rather than a mere antiunitary.
pub fn make_acq_line(theta0: &AntiOp, h: &LinOp) -> Result<AcqLine> {
    if theta0.dim() != h.dim() {
        return Err(Error::Dim(format!(
            "base dim {} vs generator dim {}",
            theta0.dim(),
            h.dim()
        )));
    }
    if classify(theta0, DEFAULT_TOL) != OpClass::Conjugation {
        return Err(Error::NotConjugation(
            "base of the family must be a conjugation".into(),
        ));
    }
    let hm = h.mat();
    let scale_h = linalg::max_abs(hm).max(1.0);
    if linalg::max_abs(&(hm - &linalg::dagger(hm))) > DEFAULT_TOL * scale_h {
        return Err(Error::Commutation(
            "generator must be Hermitian".into(),
        ));
    }
    // h theta0 = theta0 h as maps reads H M0 = M0 conj(H) on matrices.
    let m0 = theta0.mat();
    let resid = hm.dot(m0) - m0.dot(&linalg::conj_mat(hm));
    if linalg::max_abs(&resid) > DEFAULT_TOL * scale_h {
        return Err(Error::Commutation(
            "generator must commute with the base conjugation".into(),
        ));
    }
    let (evals, w) = linalg::eigh_parts(hm);
    let m0p = linalg::dagger(&w).dot(m0).dot(&linalg::conj_mat(&w));
    Ok(AcqLine {
        base: theta0.clone(),
        generator: h.clone(),
        evals,
        w,
        m0p,
    })
}

/// An ordered list of conjugations sampled along a curve.
#[derive(Debug, Clone)]
pub struct ConjugationCurve {
    samples: Vec<AntiOp>,
    closed: bool,
}

impl ConjugationCurve {
    /// Validates and wraps curve samples.
    ///
    /// Every sample must classify as a conjugation and consecutive samples
    /// must be close in operator norm; a curve claiming to be closed is only
    /// checked at winding time so partial curves can still be assembled.
    pub fn new(samples: Vec<AntiOp>, closed: bool) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Dim(
                "a curve needs at least two samples".into(),
            ));
        }
        let d = samples[0].dim();
        for (i, s) in samples.iter().enumerate() {
            if s.dim() != d {
                return Err(Error::Dim(format!(
                    "sample {i} has dim {} but the curve started at {d}",
                    s.dim()
                )));
            }
            if classify(s, DEFAULT_TOL) != OpClass::Conjugation {
                return Err(Error::NotConjugation(format!(
                    "sample {i} is not a conjugation"
                )));
            }
        }
        for i in 0..samples.len() - 1 {
            let gap = samples[i + 1].sub(&samples[i])?.op_norm();
            if gap > STEP_BOUND {
                return Err(Error::SamplingTooCoarse(format!(
                    "step {i} -> {} has size {gap:.3}; refine the sampling",
                    i + 1
                )));
            }
        }
        Ok(ConjugationCurve { samples, closed })
    }

    pub fn samples(&self) -> &[AntiOp] {
        &self.samples
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.samples[0].dim()
    }
}

/// Midpoint exchange rule `a mid = mid b` compared within `tol`.
///
/// Samples `theta_r, theta_{(r+s)/2}, theta_s` of any commuting-generator
/// family satisfy it; unrelated conjugations generically do not.
pub fn quandle_check(a: &AntiOp, mid: &AntiOp, b: &AntiOp, tol: f64) -> Result<bool> {
    let left = compose_anti_anti(a, mid)?;
    let right = compose_anti_anti(mid, b)?;
    let scale = linalg::max_abs(left.mat())
        .max(linalg::max_abs(right.mat()))
        .max(1.0);
    let diff = linalg::max_abs(&(left.mat() - right.mat()));
    Ok(diff <= tol * scale)
}

/// Winding index of a closed curve of conjugations.
///
/// Accumulates the discrete 1-form `Tr[(theta_{i+1} - theta_i) theta_i]`
/// around the loop (wrap step included) and divides by `2 pi i`.  The sum
/// must land within 0.1 of an integer; a larger residual means the samples
/// are too sparse to trust the rounding.
pub fn maslov_index(curve: &ConjugationCurve) -> Result<i64> {
    if !curve.closed() {
        return Err(Error::NotClosed(
            "winding index needs a closed curve".into(),
        ));
    }
    let n = curve.len();
    let samples = curve.samples();
    let wrap = samples[0].sub(&samples[n - 1])?.op_norm();
    if wrap > STEP_BOUND {
        return Err(Error::NotClosed(format!(
            "closing step has size {wrap:.3}; endpoints do not meet"
        )));
    }
    let idx: Vec<usize> = (0..n).collect();
    let terms = batch::map(&idx, |&i| {
        let cur = samples[i].mat();
        let next = samples[(i + 1) % n].mat();
        let diff = next - cur;
        // Tr[(theta_{i+1} - theta_i) theta_i]: the antilinear factors
        // compose to the linear matrix diff * conj(cur).
        linalg::trace(&diff.dot(&linalg::conj_mat(cur)))
    });
    let total: Cplx = terms.into_iter().sum();
    let s = total * Cplx::new(0.0, -1.0 / (2.0 * std::f64::consts::PI));
    let rounded = s.re.round();
    let resid = (s - Cplx::new(rounded, 0.0)).norm();
    if resid > 0.1 {
        return Err(Error::SamplingTooCoarse(format!(
            "winding sum {:.4}{:+.4}i is {resid:.3} away from an integer",
            s.re, s.im
        )));
    }
    Ok(rounded as i64)
}

/// Length of the segment `t0 <= t <= t1` of a commuting-generator family:
/// `2 (t1 - t0) sqrt(sum a_j^2)` over the generator eigenvalues `a_j`.  A
/// closed loop over `[0, pi]` with integer spectrum `n_j` therefore has
/// length `2 pi sqrt(sum n_j^2)`, and the shortest closed loops measure
/// exactly `2 pi`.
pub fn curve_length(line: &AcqLine, t0: f64, t1: f64) -> f64 {
    let quad: f64 = line.evals.iter().map(|a| a * a).sum();
    2.0 * (t1 - t0) * quad.sqrt()
}

/// The unique conjugation that fixes the real span of `basis` pointwise.
///
/// The basis must consist of `d` vectors in dimension `d`, real-linearly
/// independent, with all pairwise inner products real; these are exactly the
/// spanning sets of maximal real subspaces on which the imaginary part of
/// the inner product vanishes.  Inverse of the fixed-subspace extraction up
/// to a real change of basis.
pub fn conjugation_from_real_subspace(basis: &[HVector]) -> Result<AntiOp> {
    let d = basis.len();
    if d == 0 {
        return Err(Error::Dim("basis must be nonempty".into()));
    }
    for v in basis {
        if v.dim() != d {
            return Err(Error::Dim(format!(
                "need {d} vectors of dimension {d}, got one of dimension {}",
                v.dim()
            )));
        }
    }
    for i in 0..d {
        for j in i..d {
            let z = basis[i].inner(&basis[j])?;
            let scale = basis[i].norm() * basis[j].norm();
            if z.im.abs() > DEFAULT_TOL * scale.max(1e-300) {
                return Err(Error::NotLagrangian(format!(
                    "inner product of vectors {i} and {j} has imaginary part {:.3e}",
                    z.im
                )));
            }
        }
    }
    // Real-linear independence: stack Re over Im as a 2d x d real matrix.
    let mut stacked = Array2::<f64>::zeros((2 * d, d));
    for (j, v) in basis.iter().enumerate() {
        for (i, z) in v.data().iter().enumerate() {
            stacked[(i, j)] = z.re;
            stacked[(i + d, j)] = z.im;
        }
    }
    let sv = linalg::real_singular_values(&stacked);
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > DEFAULT_TOL * smax.max(1.0)) {
        return Err(Error::NotLagrangian(
            "vectors are not real-linearly independent".into(),
        ));
    }
    // Gram-Schmidt with real coefficients keeps the real span; since the
    // pairwise inner products are real the output is orthonormal over C too.
    let mut cols: Vec<Array1<Cplx>> = Vec::with_capacity(d);
    for v in basis {
        let mut w = v.data().clone();
        for _ in 0..2 {
            for e in &cols {
                let c: Cplx = e.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
                let c = Cplx::new(c.re, 0.0);
                w = &w - &e.mapv(|z| z * c);
            }
        }
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n <= 1e-12 {
            return Err(Error::NotLagrangian(
                "vectors are not real-linearly independent".into(),
            ));
        }
        cols.push(w.mapv(|z| z / n));
    }
    let e = Array2::from_shape_fn((d, d), |(i, j)| cols[j][i]);
    let m = e.dot(&e.t());
    AntiOp::new(m)
}
