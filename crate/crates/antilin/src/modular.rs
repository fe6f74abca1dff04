//! Positive operators with their metric involutions X -> A^{-1} X^dag A,
//! the operator geometric mean and the interpolation line it generates, and
//! the modular data (S, Delta, J) attached to a bipartite vector with full
//! Schmidt rank: the conjugate-linear closure map S(A (x) 1)psi =
//! (A^dag (x) 1)psi, its positive part Delta, and the conjugation J.

use ndarray::{Array1, Array2};

use crate::core::{Cplx, LinOp, AntiOp, DEFAULT_TOL};
use crate::epr_teleport::BipartiteVector;
use crate::error::{Error, Result};
use crate::linalg;

/// A positive-definite operator with its spectral data cached.
///
/// `new` verifies Hermiticity and a strict relative eigenvalue floor;
/// positivity failures are rejected here rather than clipped downstream.
#[derive(Debug, Clone)]
pub struct PositiveOp {
    mat: Array2<Cplx>,
    evals: Array1<f64>,
    evecs: Array2<Cplx>,
}

impl PositiveOp {
    pub fn new(mat: Array2<Cplx>) -> Result<Self> {
        if mat.nrows() == 0 || mat.nrows() != mat.ncols() {
            return Err(Error::Dim(format!(
                "expected a nonempty square matrix, got {} x {}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Dim("entries must be finite".into()));
        }
        let scale = linalg::max_abs(&mat).max(1.0);
        if linalg::max_abs(&(&mat - &linalg::dagger(&mat))) > DEFAULT_TOL * scale {
            return Err(Error::NotPositive("matrix is not Hermitian".into()));
        }
        let herm = (&mat + &linalg::dagger(&mat)).mapv(|z| z * 0.5);
        let (evals, evecs) = linalg::eigh_parts(&herm);
        let lmax = evals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lmin = evals.iter().cloned().fold(f64::INFINITY, f64::min);
        if lmax <= 0.0 || lmin <= DEFAULT_TOL * lmax {
            return Err(Error::NotPositive(format!(
                "eigenvalues reach down to {lmin:.3e} against a maximum of {lmax:.3e}"
            )));
        }
        Ok(PositiveOp {
            mat: herm,
            evals,
            evecs,
        })
    }

    /// Assembles the operator from eigenpairs already known to be positive;
    /// `evecs` columns must be orthonormal.
    pub(crate) fn from_spectral(evals: Array1<f64>, evecs: Array2<Cplx>) -> Self {
        debug_assert!(evals.iter().all(|&x| x > 0.0));
        let d = evals.len();
        let scaled = Array2::from_shape_fn((d, d), |(i, j)| {
            evecs[(i, j)] * evals[j]
        });
        let mat = scaled.dot(&linalg::dagger(&evecs));
        let mat = (&mat + &linalg::dagger(&mat)).mapv(|z| z * 0.5);
        PositiveOp { mat, evals, evecs }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        &self.mat
    }

    pub fn eigenvalues(&self) -> &Array1<f64> {
        &self.evals
    }

    fn spectral_map(&self, f: impl Fn(f64) -> Cplx) -> Array2<Cplx> {
        let d = self.dim();
        let scaled = Array2::from_shape_fn((d, d), |(i, j)| {
            self.evecs[(i, j)] * f(self.evals[j])
        });
        scaled.dot(&linalg::dagger(&self.evecs))
    }

    /// The real power `A^t`.
    pub fn power(&self, t: f64) -> LinOp {
        let m = self.spectral_map(|x| Cplx::new(x.powf(t), 0.0));
        LinOp::new(m).expect("finite by construction")
    }

    /// The unitary `A^{it}` from the one-parameter group the operator
    /// generates.
    pub fn imaginary_power(&self, t: f64) -> LinOp {
        let m = self.spectral_map(|x| Cplx::new(0.0, t * x.ln()).exp());
        LinOp::new(m).expect("finite by construction")
    }
}

/// The conjugate-linear superoperator `X -> A^{-1} X^dag A` induced by a
/// positive `A`; an involution on operators, the building block of the
/// metric quandle.
#[derive(Debug, Clone)]
pub struct MetricInvolution {
    base: PositiveOp,
    inv: Array2<Cplx>,
}

impl MetricInvolution {
    pub fn base(&self) -> &PositiveOp {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn apply(&self, x: &LinOp) -> Result<LinOp> {
        if x.dim() != self.dim() {
            return Err(Error::Dim(format!(
                "operator dim {} vs base dim {}",
                x.dim(),
                self.dim()
            )));
        }
        let m = self.inv.dot(&linalg::dagger(x.mat())).dot(self.base.mat());
        Ok(LinOp::new(m).expect("finite by construction"))
    }
}

pub fn metric_involution(a: &PositiveOp) -> MetricInvolution {
    MetricInvolution {
        inv: a.power(-1.0).mat().clone(),
        base: a.clone(),
    }
}

/// The operator geometric mean
/// `A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}`: the unique
/// positive solution `C` of `C A^{-1} C = B`, symmetric in its arguments.
pub fn geometric_mean(a: &PositiveOp, b: &PositiveOp) -> Result<PositiveOp> {
    interpolate(a, b, 0.5)
}

/// The point `C_t = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` on the
/// geodesic of positive operators through `A` (t = 0) and `B` (t = 1).
fn interpolate(a: &PositiveOp, b: &PositiveOp, t: f64) -> Result<PositiveOp> {
    if a.dim() != b.dim() {
        return Err(Error::Dim(format!(
            "dims differ: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let half = a.power(0.5);
    let ihalf = a.power(-0.5);
    let y_mat = ihalf.mat().dot(b.mat()).dot(ihalf.mat());
    let y = PositiveOp::new(y_mat)?;
    let c = half.mat().dot(y.power(t).mat()).dot(half.mat());
    PositiveOp::new(c)
}

/// The metric involution of the geodesic point `C_t` between `A` and `B`.
/// The endpoints reproduce the involutions of `A` and `B`, and midpoints
/// obey `C_{(t+r)/2} = C_r # C_t`.
pub fn metric_acq_line(a: &PositiveOp, b: &PositiveOp, t: f64) -> Result<MetricInvolution> {
    Ok(metric_involution(&interpolate(a, b, t)?))
}

/// Modular data on a doubled space: the closure involution `S`, its
/// positive part `Delta`, and the conjugation `J`, tied together by
/// `S = J Delta^{1/2} = Delta^{-1/2} J`.
#[derive(Debug, Clone)]
pub struct ModularTriple {
    s: AntiOp,
    delta: PositiveOp,
    j: AntiOp,
}

impl ModularTriple {
    pub fn s(&self) -> &AntiOp {
        &self.s
    }

    pub fn delta(&self) -> &PositiveOp {
        &self.delta
    }

    pub fn j(&self) -> &AntiOp {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }
}

/// Modular data of a square bipartite vector of full Schmidt rank, the
/// conjugate-linear operator closing `S(A (x) 1)psi = (A^dag (x) 1)psi`.
///
/// In the Schmidt basis pairs `(j, k)` carry `S: |jk> -> sqrt(p_j/p_k)|kj>`,
/// `Delta |jk> = (p_j/p_k)|jk>`, `J: |jk> -> |kj>`; globally
/// `Delta = rho_A (x) rho_B^{-1}`.
///
/// The input need not be normalized: all three objects are unchanged under
/// positive rescaling of `psi`.  A complex phase `e^{i a}` on `psi` rotates
/// `S` and `J` by `e^{2ia}` and leaves `Delta` fixed.
pub fn modular_from_bipartite(psi: &BipartiteVector) -> Result<ModularTriple> {
    let d = psi.dim_a();
    if psi.dim_b() != d {
        return Err(Error::Dim(format!(
            "factors must have equal dims, got {} x {}",
            d,
            psi.dim_b()
        )));
    }
    let (u, sv, vt) = linalg::svd_parts(psi.coeffs());
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if smax <= 0.0 || smin <= DEFAULT_TOL * smax {
        return Err(Error::NotSeparating(format!(
            "Schmidt values reach down to {smin:.3e} against a maximum of {smax:.3e}; \
             the vector is not cyclic and separating"
        )));
    }
    let p: Vec<f64> = sv.iter().map(|x| x * x).collect();
    // Schmidt product basis: columns u_j (x) conj(v)_k, with conj(V) = vt^T
    let w = linalg::kron(&u, &vt.t().to_owned());
    let n = d * d;
    let mut d_s = Array2::<Cplx>::zeros((n, n));
    let mut d_j = Array2::<Cplx>::zeros((n, n));
    let mut d_delta = Array1::<f64>::zeros(n);
    for j in 0..d {
        for k in 0..d {
            let ratio = p[j] / p[k];
            d_s[(k * d + j, j * d + k)] = Cplx::new(ratio.sqrt(), 0.0);
            d_j[(k * d + j, j * d + k)] = Cplx::new(1.0, 0.0);
            d_delta[j * d + k] = ratio;
        }
    }
    // conjugate-linear basis change: M = W D W^T
    let s_mat = w.dot(&d_s).dot(&w.t());
    let j_mat = w.dot(&d_j).dot(&w.t());
    Ok(ModularTriple {
        s: AntiOp::new(s_mat)?,
        delta: PositiveOp::from_spectral(d_delta, w),
        j: AntiOp::new(j_mat)?,
    })
}

/// Modular data of the commutative (diagonal) case: a fixed-phase family
/// `eps` of unimodular numbers gives `S = J = diag(eps)` composed with
/// entrywise conjugation, and a trivial `Delta`.
pub fn modular_commutative(eps: &[Cplx]) -> Result<ModularTriple> {
    if eps.is_empty() {
        return Err(Error::Dim("need at least one phase".into()));
    }
    for (i, e) in eps.iter().enumerate() {
        if (e.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotUnimodular(format!(
                "entry {i} has modulus {:.6}",
                e.norm()
            )));
        }
    }
    let d = eps.len();
    let mut m = Array2::<Cplx>::zeros((d, d));
    for (i, e) in eps.iter().enumerate() {
        m[(i, i)] = *e;
    }
    let s = AntiOp::new(m)?;
    Ok(ModularTriple {
        j: s.clone(),
        delta: PositiveOp::from_spectral(Array1::ones(d), Array2::eye(d)),
        s,
    })
}

/// Combines two modular triples sharing the same conjugation `J` into the
/// triple with `Delta = Delta_1 # Delta_2` and `S = J Delta^{1/2}`.  The
/// result interlocks with the inputs through the unsquared involutions
/// `T_k = J Delta_k`: they satisfy `T_1 T = T T_2`, which is equivalent to
/// the sandwich relation `Delta Delta_1^{-1} Delta = Delta_2`.  (With the
/// polar dressing `J Delta^{1/2}` the exchange only survives for commuting
/// means.)
pub fn modular_geomean(t1: &ModularTriple, t2: &ModularTriple) -> Result<ModularTriple> {
    if t1.dim() != t2.dim() {
        return Err(Error::Dim(format!(
            "dims differ: {} vs {}",
            t1.dim(),
            t2.dim()
        )));
    }
    let scale = linalg::max_abs(t1.j().mat()).max(1.0);
    if linalg::max_abs(&(t1.j().mat() - t2.j().mat())) > DEFAULT_TOL * scale {
        return Err(Error::Incompatible(
            "the two triples carry different conjugations".into(),
        ));
    }
    let delta = geometric_mean(t1.delta(), t2.delta())?;
    let half = delta.power(0.5);
    let s_mat = t1.j().mat().dot(&linalg::conj_mat(half.mat()));
    Ok(ModularTriple {
        s: AntiOp::new(s_mat)?,
        delta,
        j: t1.j().clone(),
    })
}
