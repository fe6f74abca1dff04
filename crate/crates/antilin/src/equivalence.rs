//! Transpose-equivalence machinery: the conjugation-twisted transpose, trace
//! criteria for unitary equivalence of a matrix to its transpose, completely
//! copositive maps built from vector frames and a coupling matrix, angle
//! tests, geometric phases of projection cycles, and inertia invariants of
//! spaces of antilinear operators.

use ndarray::Array2;

use crate::core::{
    canonical_form, AntiOp, Cplx, HVector, LinOp, DEFAULT_TOL,
};
use crate::decomp::{classify, OpClass};
use crate::error::{Error, Result};
use crate::linalg;

/// A completely copositive map `X -> sum_i k_i X^dag k_i^dag` with
/// conjugate-linear Kraus terms `k_i`.
///
/// The trace correction operator `K = sum_i k_i^dag k_i` satisfies
/// `Tr T(X) = Tr(K X)`; the map is trace preserving exactly when `K = 1`.
#[derive(Debug, Clone)]
pub struct CopositiveMap {
    kraus: Vec<AntiOp>,
    k_op: LinOp,
}

impl CopositiveMap {
    /// The conjugate-linear Kraus terms.
    pub fn kraus(&self) -> &[AntiOp] {
        &self.kraus
    }

    /// `K = sum_i k_i^dag k_i`, the operator weighting output traces.
    pub fn k_op(&self) -> &LinOp {
        &self.k_op
    }

    /// Number of Kraus terms.
    pub fn length(&self) -> usize {
        self.kraus.len()
    }

    pub fn dim(&self) -> usize {
        self.k_op.dim()
    }
}

/// Coupling matrix for a copositive-map construction: positive semi-definite
/// with unit diagonal.
#[derive(Debug, Clone)]
pub struct BetaMatrix {
    entries: Array2<Cplx>,
}

impl BetaMatrix {
    pub fn new(entries: Array2<Cplx>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c || r == 0 {
            return Err(Error::Beta(format!(
                "coupling matrix must be square and nonempty, got {r} x {c}"
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Beta("coupling matrix entries must be finite".into()));
        }
        let scale = linalg::max_abs(&entries).max(1.0);
        if linalg::max_abs(&(&entries - &linalg::dagger(&entries))) > DEFAULT_TOL * scale {
            return Err(Error::Beta("coupling matrix must be Hermitian".into()));
        }
        for j in 0..r {
            if (entries[(j, j)] - Cplx::new(1.0, 0.0)).norm() > DEFAULT_TOL {
                return Err(Error::Beta(format!(
                    "diagonal entry {j} must be 1, got {}",
                    entries[(j, j)]
                )));
            }
        }
        let (vals, _) = linalg::eigh_parts(&entries);
        let vmax = vals.iter().cloned().fold(0.0f64, f64::max).max(1.0);
        if vals.iter().any(|&v| v < -DEFAULT_TOL * vmax) {
            return Err(Error::Beta(
                "coupling matrix must be positive semi-definite".into(),
            ));
        }
        Ok(BetaMatrix { entries })
    }

    /// The all-ones matrix: rank one, couples every pair fully.
    pub fn all_ones(n: usize) -> Result<Self> {
        BetaMatrix::new(Array2::from_elem((n, n), Cplx::new(1.0, 0.0)))
    }

    /// The identity matrix: full rank, no cross coupling.
    pub fn identity(n: usize) -> Result<Self> {
        BetaMatrix::new(Array2::eye(n))
    }

    /// The rank-one matrix `beta_jk = conj(eps_j) eps_k` from unimodular
    /// phases.
    pub fn from_phases(eps: &[Cplx]) -> Result<Self> {
        if eps.iter().any(|z| (z.norm() - 1.0).abs() > DEFAULT_TOL) {
            return Err(Error::Beta("phases must be unimodular".into()));
        }
        let n = eps.len();
        BetaMatrix::new(Array2::from_shape_fn((n, n), |(j, k)| {
            eps[j].conj() * eps[k]
        }))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Cplx> {
        &self.entries
    }
}

/// Signature of the canonical Hermitian form restricted to a space of
/// antilinear operators: counts of positive, negative, and null directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AoSpaceInertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

/// Transpose of `x` twisted by a conjugation: `theta x^dag theta`.
///
/// With the standard (entrywise) conjugation this is the plain matrix
/// transpose; it is an involutive superoperator for every conjugation.
pub fn theta_transpose(x: &LinOp, theta: &AntiOp) -> Result<LinOp> {
    if x.dim() != theta.dim() {
        return Err(Error::Dim(format!(
            "operator dim {} vs conjugation dim {}",
            x.dim(),
            theta.dim()
        )));
    }
    if classify(theta, DEFAULT_TOL) != OpClass::Conjugation {
        return Err(Error::NotConjugation(
            "twisted transpose needs a conjugation".into(),
        ));
    }
    let mt = theta.mat();
    let m = mt.dot(&x.mat().t()).dot(&linalg::conj_mat(mt));
    Ok(LinOp::new(m).expect("finite by construction"))
}

/// The complete unitary-equivalence invariants of a 2 x 2 matrix:
/// `(Tr X, Tr X^2, Tr X^dag X)`.
///
/// The triple is invariant under `X -> theta X^dag theta`, so in dimension 2
/// every matrix is unitarily equivalent to its transpose.
pub fn uet_invariants_dim2(x: &LinOp) -> Result<(Cplx, Cplx, f64)> {
    if x.dim() != 2 {
        return Err(Error::Dim(format!(
            "invariant triple is for dimension 2, got {}",
            x.dim()
        )));
    }
    let m = x.mat();
    let t1 = linalg::trace(m);
    let t2 = linalg::trace(&m.dot(m));
    let t3 = linalg::trace(&linalg::dagger(m).dot(m)).re;
    Ok((t1, t2, t3))
}

/// Trace test for unitary equivalence of a 3 x 3 matrix to its transpose:
/// `Tr(X^dag X X^dag X^2 X^dag) = Tr(X^dag X^2 X^dag X X^dag)` within
/// `tol * ||X||^6`.  Both words have degree six, hence the scaling.
pub fn uet_test_dim3(x: &LinOp, tol: f64) -> Result<bool> {
    if x.dim() != 3 {
        return Err(Error::Dim(format!(
            "trace test is for dimension 3, got {}",
            x.dim()
        )));
    }
    let m = x.mat();
    let md = linalg::dagger(m);
    let m2 = m.dot(m);
    let w1 = md.dot(m).dot(&md).dot(&m2).dot(&md);
    let w2 = md.dot(&m2).dot(&md).dot(m).dot(&md);
    let diff = (linalg::trace(&w1) - linalg::trace(&w2)).norm();
    let scale = x.op_norm().powi(6);
    Ok(diff <= tol * scale)
}

fn unit_frame(vectors: &[HVector], what: &str) -> Result<()> {
    for (j, v) in vectors.iter().enumerate() {
        if (v.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::DegenerateInput(format!(
                "{what} vector {j} has norm {:.6}, expected 1",
                v.norm()
            )));
        }
    }
    Ok(())
}

fn column_matrix(vectors: &[HVector]) -> Array2<Cplx> {
    let d = vectors[0].dim();
    let n = vectors.len();
    Array2::from_shape_fn((d, n), |(i, j)| vectors[j].data()[i])
}

/// Builds the copositive map sending `|in_j><in_k|` to
/// `beta_jk |out_k><out_j|`.
///
/// The coupling matrix is factored as `beta = alpha^dag alpha` through its
/// eigendecomposition, dropping the null part, so the number of Kraus terms
/// equals the rank of `beta` and can never be smaller.
pub fn build_copositive(
    inputs: &[HVector],
    outputs: &[HVector],
    beta: &BetaMatrix,
) -> Result<CopositiveMap> {
    let n = inputs.len();
    if n == 0 {
        return Err(Error::Dim("need at least one input vector".into()));
    }
    if outputs.len() != n || beta.dim() != n {
        return Err(Error::Dim(format!(
            "got {n} inputs, {} outputs, coupling of size {}",
            outputs.len(),
            beta.dim()
        )));
    }
    let d = inputs[0].dim();
    if inputs.iter().any(|v| v.dim() != d) || outputs.iter().any(|v| v.dim() != d) {
        return Err(Error::Dim(
            "all input and output vectors must share one dimension".into(),
        ));
    }
    if n > d {
        return Err(Error::DegenerateInput(format!(
            "{n} vectors cannot be independent in dimension {d}"
        )));
    }
    unit_frame(inputs, "input")?;
    unit_frame(outputs, "output")?;
    let f = column_matrix(inputs);
    let sv = linalg::singular_values(&f);
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > smax * 1e-12) {
        return Err(Error::DegenerateInput(
            "input vectors are numerically dependent".into(),
        ));
    }
    // Duals tilde(f)_j, the columns of F (F^dag F)^{-1}: <tilde(f)_j, f_k> = delta_jk.
    let gram_inv = linalg::inverse(&linalg::dagger(&f).dot(&f));
    let duals = f.dot(&gram_inv);
    let out = column_matrix(outputs);
    let (vals, w) = linalg::eigh_parts(beta.entries());
    let vmax = vals.iter().cloned().fold(0.0f64, f64::max).max(1.0);
    let mut kraus = Vec::new();
    for i in (0..n).rev() {
        let lam = vals[i];
        if lam <= DEFAULT_TOL * vmax {
            continue;
        }
        // Row i of the factor alpha with alpha^dag alpha = beta.
        let alpha: Vec<Cplx> = (0..n)
            .map(|j| w[(j, i)].conj() * lam.sqrt())
            .collect();
        let weighted = Array2::from_shape_fn((d, n), |(r, j)| out[(r, j)] * alpha[j]);
        let m = weighted.dot(&duals.t());
        kraus.push(AntiOp::new(m).expect("finite by construction"));
    }
    let mut ksum = Array2::<Cplx>::zeros((d, d));
    for k in &kraus {
        ksum = ksum + linalg::dagger(k.mat()).dot(k.mat());
    }
    let k_op = LinOp::new(ksum.t().to_owned()).expect("finite by construction");
    Ok(CopositiveMap { kraus, k_op })
}

/// Applies the map: `X -> sum_i k_i X^dag k_i^dag`.
pub fn apply_copositive(t: &CopositiveMap, x: &LinOp) -> Result<LinOp> {
    if x.dim() != t.dim() {
        return Err(Error::Dim(format!(
            "operator dim {} vs map dim {}",
            x.dim(),
            t.dim()
        )));
    }
    let xt = x.mat().t().to_owned();
    let mut acc = Array2::<Cplx>::zeros((t.dim(), t.dim()));
    for k in &t.kraus {
        let m = k.mat();
        acc = acc + m.dot(&xt).dot(&linalg::dagger(m));
    }
    Ok(LinOp::new(acc).expect("finite by construction"))
}

/// Checks whether two vector families have antiunitarily matched angles:
/// `<in_i,in_j><in_j,in_k><in_k,in_i>` must equal the reversed-cycle product
/// `<out_j,out_i><out_i,out_k><out_k,out_j>` for every index triple.
///
/// Passing the test means a single antiunitary maps each `in_j` to `out_j`
/// up to phases, so the associated length-one map is a cochannel.  Inputs
/// must be linearly independent unit vectors, outputs unit vectors.
pub fn strong_angle_test(
    inputs: &[HVector],
    outputs: &[HVector],
    tol: f64,
) -> Result<bool> {
    let n = inputs.len();
    if n == 0 || outputs.len() != n {
        return Err(Error::Dim(format!(
            "need matching nonempty families, got {n} inputs and {} outputs",
            outputs.len()
        )));
    }
    let din = inputs[0].dim();
    let dout = outputs[0].dim();
    if inputs.iter().any(|v| v.dim() != din) || outputs.iter().any(|v| v.dim() != dout) {
        return Err(Error::Dim(
            "each family must share one dimension".into(),
        ));
    }
    if n > din {
        return Err(Error::DegenerateInput(format!(
            "{n} vectors cannot be independent in dimension {din}"
        )));
    }
    unit_frame(inputs, "input")?;
    unit_frame(outputs, "output")?;
    let f = column_matrix(inputs);
    let sv = linalg::singular_values(&f);
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > smax * 1e-12) {
        return Err(Error::DegenerateInput(
            "input vectors are numerically dependent".into(),
        ));
    }
    let gin = Array2::from_shape_fn((n, n), |(i, j)| {
        inputs[i].inner(&inputs[j]).expect("dims checked")
    });
    let gout = Array2::from_shape_fn((n, n), |(i, j)| {
        outputs[i].inner(&outputs[j]).expect("dims checked")
    });
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = gin[(i, j)] * gin[(j, k)] * gin[(k, i)];
                let rhs = gout[(j, i)] * gout[(i, k)] * gout[(k, j)];
                if (lhs - rhs).norm() > tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks whether a coupling matrix is of the pure-phase form
/// `beta_jk = conj(eps_j) eps_k`, which holds exactly when every cyclic
/// triple product `beta_ij beta_jk beta_ki` equals 1.
pub fn rank_one_beta_test(beta: &BetaMatrix, tol: f64) -> bool {
    let n = beta.dim();
    let b = beta.entries();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let prod = b[(i, j)] * b[(j, k)] * b[(k, i)];
                if (prod - Cplx::new(1.0, 0.0)).norm() > tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Geometric phase of a cycle of rank-one projections: the argument of
/// `Tr(P_1 P_2 ... P_n)`, defined modulo 2 pi.
///
/// The phase is undefined when the trace vanishes (consecutive states
/// orthogonal somewhere along the cycle) or when an input fails to be a
/// rank-one projection.
pub fn geometric_phase(projections: &[LinOp]) -> Result<f64> {
    if projections.is_empty() {
        return Err(Error::Dim("need at least one projection".into()));
    }
    let d = projections[0].dim();
    const PROJ_TOL: f64 = 1e-8;
    for (i, p) in projections.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::Dim(format!(
                "projection {i} has dim {} but the cycle started at {d}",
                p.dim()
            )));
        }
        let m = p.mat();
        let herm = linalg::max_abs(&(m - &linalg::dagger(m)));
        let idem = linalg::max_abs(&(&m.dot(m) - m));
        let tr = (linalg::trace(m) - Cplx::new(1.0, 0.0)).norm();
        if herm > PROJ_TOL || idem > PROJ_TOL || tr > PROJ_TOL {
            return Err(Error::UndefinedPhase(format!(
                "input {i} is not a rank-one projection"
            )));
        }
    }
    let mut prod = projections[0].mat().clone();
    for p in &projections[1..] {
        prod = prod.dot(p.mat());
    }
    let z = linalg::trace(&prod);
    if z.norm() < DEFAULT_TOL {
        return Err(Error::UndefinedPhase(format!(
            "trace of the projection cycle is {:.2e}; phase undefined",
            z.norm()
        )));
    }
    Ok(z.arg())
}

/// Inertia of the canonical Hermitian form `(s, t) = Tr(t s)` restricted to
/// the span of a family of linearly independent antilinear operators.
///
/// The signature is an invariant of the span: it does not depend on the
/// chosen basis or on the Hilbert space scalar product.
pub fn ao_space_inertia(basis: &[AntiOp]) -> Result<AoSpaceInertia> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::Dim("need at least one operator".into()));
    }
    let d = basis[0].dim();
    if basis.iter().any(|t| t.dim() != d) {
        return Err(Error::Dim("operators must share one dimension".into()));
    }
    // Independence of the flattened operators.
    let flat = Array2::from_shape_fn((d * d, n), |(i, j)| basis[j].mat()[(i / d, i % d)]);
    let sv = linalg::singular_values(&flat);
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = if sv.len() < n {
        0.0
    } else {
        sv.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    if !(smin > smax.max(1.0) * 1e-12) {
        return Err(Error::DegenerateInput(
            "operators are numerically dependent".into(),
        ));
    }
    let mut gram = Array2::<Cplx>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = canonical_form(&basis[i], &basis[j]).expect("dims checked");
        }
    }
    let herm = (&gram + &linalg::dagger(&gram)).mapv(|z| z * 0.5);
    let (vals, _) = linalg::eigh_parts(&herm);
    let vmax = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let thresh = DEFAULT_TOL * vmax;
    let n_plus = vals.iter().filter(|&&v| v > thresh).count();
    let n_minus = vals.iter().filter(|&&v| v < -thresh).count();
    Ok(AoSpaceInertia {
        n_plus,
        n_minus,
        n_zero: n - n_plus - n_minus,
    })
}

/// The copositive map `X -> sum_j t_j X^dag t_j^dag` attached to a family of
/// antilinear operators that is orthonormal in the trace scalar product
/// `Tr(s^dag t)`.
///
/// The map depends only on the span: re-mixing the basis by any unitary
/// matrix leaves it unchanged.  Over the full family of Hermitian antilinear
/// operators it evaluates to `((Tr X) 1 + X)/2`; over the skew family, to
/// `((Tr X) 1 - X)/2`.
pub fn ao_space_map(basis: &[AntiOp]) -> Result<CopositiveMap> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::Dim("need at least one operator".into()));
    }
    let d = basis[0].dim();
    if basis.iter().any(|t| t.dim() != d) {
        return Err(Error::Dim("operators must share one dimension".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let hs = linalg::trace(&linalg::dagger(basis[i].mat()).dot(basis[j].mat()));
            let want = if i == j {
                Cplx::new(1.0, 0.0)
            } else {
                Cplx::new(0.0, 0.0)
            };
            if (hs - want).norm() > 1e-9 {
                return Err(Error::Basis(format!(
                    "operators {i} and {j} are not orthonormal in the trace product"
                )));
            }
        }
    }
    let mut ksum = Array2::<Cplx>::zeros((d, d));
    for t in basis {
        ksum = ksum + linalg::dagger(t.mat()).dot(t.mat());
    }
    let k_op = LinOp::new(ksum.t().to_owned()).expect("finite by construction");
    Ok(CopositiveMap {
        kraus: basis.to_vec(),
        k_op,
    })
}
