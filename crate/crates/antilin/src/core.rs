//! Vectors and the two operator kinds on a finite-dimensional complex
//! Hilbert space: complex-linear maps v -> M v and conjugate-linear maps
//! v -> M conj(v), with the four-case composition table, adjoints, the
//! canonical Hermitian pairing on conjugate-linear operators, and the
//! circle eigenvalue structure.
//!
//! Inner products are linear in the second argument throughout.

use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Complex scalar type used across the crate.
pub type Cplx = Complex64;

/// Default relative tolerance for predicates and validations.
pub const DEFAULT_TOL: f64 = 1e-9;

fn check_finite_1d(v: &Array1<Cplx>) -> Result<()> {
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Dim("vector entries must be finite".into()));
    }
    Ok(())
}

fn check_finite_2d(m: &Array2<Cplx>) -> Result<()> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Dim("matrix entries must be finite".into()));
    }
    Ok(())
}

fn check_square(m: &Array2<Cplx>) -> Result<usize> {
    let (r, c) = m.dim();
    if r == 0 || r != c {
        return Err(Error::Dim(format!(
            "operator matrix must be square and nonempty, got {r}x{c}"
        )));
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// HVector

/// A vector of a finite-dimensional complex Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector {
    data: Array1<Cplx>,
}

impl HVector {
    pub fn new(entries: Vec<Cplx>) -> Result<Self> {
        Self::from_array(Array1::from(entries))
    }

    pub fn from_array(data: Array1<Cplx>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Dim("vector must have dimension >= 1".into()));
        }
        check_finite_1d(&data)?;
        Ok(HVector { data })
    }

    /// k-th standard basis vector of the d-dimensional space.
    pub fn basis_vector(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 || k >= dim {
            return Err(Error::Dim(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut data = Array1::zeros(dim);
        data[k] = Cplx::new(1.0, 0.0);
        Ok(HVector { data })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dim("vector must have dimension >= 1".into()));
        }
        Ok(HVector {
            data: Array1::zeros(dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &Array1<Cplx> {
        &self.data
    }

    pub fn into_array(self) -> Array1<Cplx> {
        self.data
    }

    /// Inner product, linear in the second argument: <self, other>.
    pub fn inner(&self, other: &HVector) -> Result<Cplx> {
        if self.dim() != other.dim() {
            return Err(Error::Dim(format!(
                "inner product dims {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, c: Cplx) -> HVector {
        HVector {
            data: self.data.mapv(|z| c * z),
        }
    }

    pub fn conj(&self) -> HVector {
        HVector {
            data: self.data.mapv(|z| z.conj()),
        }
    }

    pub fn add(&self, other: &HVector) -> Result<HVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("vector sum dimension mismatch".into()));
        }
        Ok(HVector {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &HVector) -> Result<HVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("vector difference dimension mismatch".into()));
        }
        Ok(HVector {
            data: &self.data - &other.data,
        })
    }

    pub fn normalized(&self) -> Result<HVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(Cplx::new(1.0 / n, 0.0)))
    }
}

// ---------------------------------------------------------------------------
// LinOp

/// A complex-linear operator, acting as v -> mat * v.
#[derive(Clone, Debug, PartialEq)]
pub struct LinOp {
    mat: Array2<Cplx>,
}

impl LinOp {
    pub fn new(mat: Array2<Cplx>) -> Result<Self> {
        check_square(&mat)?;
        check_finite_2d(&mat)?;
        Ok(LinOp { mat })
    }

    pub fn from_rows(rows: Vec<Vec<Cplx>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dim("matrix rows must all have the same length".into()));
        }
        let flat: Vec<Cplx> = rows.into_iter().flatten().collect();
        let mat = Array2::from_shape_vec((d, d), flat)
            .map_err(|e| Error::Dim(format!("bad matrix shape: {e}")))?;
        Self::new(mat)
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        LinOp {
            mat: Array2::eye(dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        LinOp {
            mat: Array2::zeros((dim, dim)),
        }
    }

    /// |phi_out><phi_in| with action phi -> <phi_in, phi> phi_out.
    pub fn rank_one(phi_out: &HVector, phi_in: &HVector) -> Result<Self> {
        if phi_out.dim() != phi_in.dim() {
            return Err(Error::Dim("rank-one factors must share a dimension".into()));
        }
        let d = phi_out.dim();
        let mat = Array2::from_shape_fn((d, d), |(i, j)| {
            phi_out.data()[i] * phi_in.data()[j].conj()
        });
        Ok(LinOp { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        &self.mat
    }

    pub fn into_mat(self) -> Array2<Cplx> {
        self.mat
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        if self.dim() != v.dim() {
            return Err(Error::Dim(format!(
                "operator dim {} vs vector dim {}",
                self.dim(),
                v.dim()
            )));
        }
        Ok(HVector {
            data: self.mat.dot(v.data()),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> LinOp {
        LinOp {
            mat: linalg::dagger(&self.mat),
        }
    }

    pub fn trace(&self) -> Cplx {
        linalg::trace(&self.mat)
    }

    pub fn op_norm(&self) -> f64 {
        linalg::op_norm(&self.mat)
    }

    pub fn scaled(&self, c: Cplx) -> LinOp {
        LinOp {
            mat: self.mat.mapv(|z| c * z),
        }
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("operator sum dimension mismatch".into()));
        }
        Ok(LinOp {
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("operator difference dimension mismatch".into()));
        }
        Ok(LinOp {
            mat: &self.mat - &other.mat,
        })
    }
}

// ---------------------------------------------------------------------------
// AntiOp

/// A conjugate-linear operator, acting as v -> mat * conj(v).
#[derive(Clone, Debug, PartialEq)]
pub struct AntiOp {
    mat: Array2<Cplx>,
}

impl AntiOp {
    pub fn new(mat: Array2<Cplx>) -> Result<Self> {
        check_square(&mat)?;
        check_finite_2d(&mat)?;
        Ok(AntiOp { mat })
    }

    pub fn from_rows(rows: Vec<Vec<Cplx>>) -> Result<Self> {
        Ok(AntiOp {
            mat: LinOp::from_rows(rows)?.into_mat(),
        })
    }

    /// Entrywise conjugation in the standard basis (matrix = identity).
    pub fn standard_conjugation(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        AntiOp {
            mat: Array2::eye(dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        AntiOp {
            mat: Array2::zeros((dim, dim)),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        &self.mat
    }

    pub fn into_mat(self) -> Array2<Cplx> {
        self.mat
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        apply_anti(self, v)
    }

    /// Adjoint of a conjugate-linear operator: the plain transpose, no
    /// conjugation. It satisfies <phi1, adj(theta) phi2> = <phi2, theta phi1>
    /// and is complex-linear in theta.
    pub fn adjoint(&self) -> AntiOp {
        AntiOp {
            mat: self.mat.t().to_owned(),
        }
    }

    pub fn op_norm(&self) -> f64 {
        linalg::op_norm(&self.mat)
    }

    pub fn scaled(&self, c: Cplx) -> AntiOp {
        AntiOp {
            mat: self.mat.mapv(|z| c * z),
        }
    }

    pub fn add(&self, other: &AntiOp) -> Result<AntiOp> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("operator sum dimension mismatch".into()));
        }
        Ok(AntiOp {
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &AntiOp) -> Result<AntiOp> {
        if self.dim() != other.dim() {
            return Err(Error::Dim("operator difference dimension mismatch".into()));
        }
        Ok(AntiOp {
            mat: &self.mat - &other.mat,
        })
    }
}

// ---------------------------------------------------------------------------
// Op: either kind, for generic composition chains

/// An operator of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Linear(LinOp),
    Antilinear(AntiOp),
}

impl Op {
    pub fn dim(&self) -> usize {
        match self {
            Op::Linear(a) => a.dim(),
            Op::Antilinear(t) => t.dim(),
        }
    }

    pub fn is_antilinear(&self) -> bool {
        matches!(self, Op::Antilinear(_))
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        match self {
            Op::Linear(a) => a.mat(),
            Op::Antilinear(t) => t.mat(),
        }
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        match self {
            Op::Linear(a) => a.apply(v),
            Op::Antilinear(t) => t.apply(v),
        }
    }

    pub fn adjoint(&self) -> Op {
        match self {
            Op::Linear(a) => Op::Linear(a.adjoint()),
            Op::Antilinear(t) => Op::Antilinear(t.adjoint()),
        }
    }

    pub fn op_norm(&self) -> f64 {
        match self {
            Op::Linear(a) => a.op_norm(),
            Op::Antilinear(t) => t.op_norm(),
        }
    }

    /// self after other: compose(x, y) applied to v is x(y(v)).
    pub fn compose(&self, other: &Op) -> Result<Op> {
        compose(self, other)
    }
}

// ---------------------------------------------------------------------------
// operations

/// Apply a conjugate-linear operator: returns mat * conj(v). The map is
/// conjugate-linear in v.
pub fn apply_anti(theta: &AntiOp, v: &HVector) -> Result<HVector> {
    if theta.dim() != v.dim() {
        return Err(Error::Dim(format!(
            "operator dim {} vs vector dim {}",
            theta.dim(),
            v.dim()
        )));
    }
    Ok(HVector {
        data: theta.mat().dot(&v.data().mapv(|z| z.conj())),
    })
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dim(format!("composition dims {a} vs {b}")));
    }
    Ok(())
}

/// theta1 after theta2: matrix M1 * conj(M2); the result is linear.
pub fn compose_anti_anti(t1: &AntiOp, t2: &AntiOp) -> Result<LinOp> {
    check_dims(t1.dim(), t2.dim())?;
    Ok(LinOp {
        mat: t1.mat().dot(&linalg::conj_mat(t2.mat())),
    })
}

/// theta after a: matrix M_theta * conj(M_a); the result is antilinear.
pub fn compose_anti_lin(t: &AntiOp, a: &LinOp) -> Result<AntiOp> {
    check_dims(t.dim(), a.dim())?;
    Ok(AntiOp {
        mat: t.mat().dot(&linalg::conj_mat(a.mat())),
    })
}

/// a after theta: matrix M_a * M_theta; the result is antilinear.
pub fn compose_lin_anti(a: &LinOp, t: &AntiOp) -> Result<AntiOp> {
    check_dims(a.dim(), t.dim())?;
    Ok(AntiOp {
        mat: a.mat().dot(t.mat()),
    })
}

/// a1 after a2: ordinary matrix product.
pub fn compose_lin_lin(a1: &LinOp, a2: &LinOp) -> Result<LinOp> {
    check_dims(a1.dim(), a2.dim())?;
    Ok(LinOp {
        mat: a1.mat().dot(a2.mat()),
    })
}

/// Compose two operators of either kind; y is applied first. The result is
/// linear exactly when the two kinds agree.
pub fn compose(x: &Op, y: &Op) -> Result<Op> {
    Ok(match (x, y) {
        (Op::Linear(a), Op::Linear(b)) => Op::Linear(compose_lin_lin(a, b)?),
        (Op::Linear(a), Op::Antilinear(t)) => Op::Antilinear(compose_lin_anti(a, t)?),
        (Op::Antilinear(t), Op::Linear(a)) => Op::Antilinear(compose_anti_lin(t, a)?),
        (Op::Antilinear(s), Op::Antilinear(t)) => Op::Linear(compose_anti_anti(s, t)?),
    })
}

/// Adjoint of either kind: conjugate transpose for linear operators, plain
/// transpose for conjugate-linear ones.
pub fn adjoint(x: &Op) -> Op {
    x.adjoint()
}

/// The canonical Hermitian pairing (theta1, theta2) = Tr(theta2 theta1),
/// conjugate-linear in the first argument and linear in the second.
pub fn canonical_form(theta1: &AntiOp, theta2: &AntiOp) -> Result<Cplx> {
    let prod = compose_anti_anti(theta2, theta1)?;
    Ok(prod.trace())
}

/// Split into Hermitian and skew-Hermitian parts:
/// theta = (theta + adj)/2 + (theta - adj)/2.
pub fn hermitian_split(theta: &AntiOp) -> (AntiOp, AntiOp) {
    let adj = theta.adjoint();
    let half = Cplx::new(0.5, 0.0);
    let plus = theta.add(&adj).expect("same dims").scaled(half);
    let minus = theta.sub(&adj).expect("same dims").scaled(half);
    (plus, minus)
}

/// Rank-one conjugate-linear operator |phi_out><phi_in|_c with action
/// phi -> <phi, phi_in> phi_out; its matrix is phi_out * phi_in^T.
pub fn rank_one_anti(phi_out: &HVector, phi_in: &HVector) -> Result<AntiOp> {
    if phi_out.dim() != phi_in.dim() {
        return Err(Error::Dim("rank-one factors must share a dimension".into()));
    }
    if phi_out.norm() == 0.0 || phi_in.norm() == 0.0 {
        return Err(Error::ZeroVector(
            "rank-one factors must both be nonzero".into(),
        ));
    }
    let d = phi_out.dim();
    let mat = Array2::from_shape_fn((d, d), |(i, j)| phi_out.data()[i] * phi_in.data()[j]);
    Ok(AntiOp { mat })
}

/// Operator norm of either kind. For a conjugate-linear operator this is
/// the largest singular value of its matrix, since entrywise conjugation
/// is an isometry.
pub fn operator_norm(x: &Op) -> f64 {
    x.op_norm()
}

/// Radius of the field of values {<phi, theta phi> : ||phi|| = 1}, which is
/// a disk centered at the origin in dimension >= 2; the radius equals the
/// operator norm of the Hermitian part.
pub fn field_of_values_radius(theta: &AntiOp) -> Result<f64> {
    if theta.dim() < 2 {
        return Err(Error::UnsupportedDim(
            "the disk description of the field of values requires dimension >= 2".into(),
        ));
    }
    let (plus, _) = hermitian_split(theta);
    Ok(plus.op_norm())
}

// ---------------------------------------------------------------------------
// eigenvalue structure

/// Circle spectrum of a conjugate-linear operator: eigenvalues come in full
/// circles. Each entry is (radius, number of independent eigenvectors on
/// that circle). `diagonalizable` reports whether eigenvectors span.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenStructure {
    pub circles: Vec<(f64, usize)>,
    pub diagonalizable: bool,
}

/// Kernel dimension of the matrix by singular value count.
fn kernel_dim(m: &Array2<Cplx>, thresh: f64) -> usize {
    let s = linalg::singular_values(m);
    s.iter().filter(|x| **x <= thresh).count()
}

/// Orthonormal basis columns for the numerical nullspace of (B - w I),
/// taking exactly `k` right singular directions of smallest singular value.
fn eigenspace_columns(b: &Array2<Cplx>, w: Cplx, k: usize) -> Array2<Cplx> {
    let d = b.nrows();
    let shifted = b - &Array2::from_diag_elem(d, w);
    let (_, _, vt) = linalg::svd_parts(&shifted);
    let mut cols = Array2::<Cplx>::zeros((d, k));
    for j in 0..k {
        let row = vt.row(d - 1 - j);
        for i in 0..d {
            cols[(i, j)] = row[i].conj();
        }
    }
    cols
}

/// Number of fixed directions of the conjugate-linear map x -> K conj(x)
/// restricted to a subspace: the real nullity of (R - I) for the real
/// representation R. For a genuine involution the singular values of R - I
/// sit near 0 and 2, so the 0.5 cutoff is robust.
fn fixed_space_dim(k: &Array2<Cplx>) -> usize {
    let n = k.nrows();
    let r = linalg::real_rep_conj(k);
    let shifted = &r - &Array2::<f64>::eye(2 * n);
    let s = linalg::real_singular_values(&shifted);
    s.iter().filter(|x| **x <= 0.5).count()
}

/// Shared diagonalizability test: theta is diagonalizable iff theta^2 is
/// semisimple with real nonnegative spectrum and theta vanishes on the
/// kernel of theta^2.
pub(crate) fn diagonalizable_impl(m: &Array2<Cplx>, tol: f64) -> bool {
    let d = m.nrows();
    let s = linalg::op_norm(m);
    if s == 0.0 {
        return true;
    }
    let ctol = tol * s * s;
    let b = m.dot(&linalg::conj_mat(m));
    let (vals, _) = linalg::eig_parts(&b);
    let vals: Vec<Cplx> = vals.to_vec();
    let mut total = 0usize;
    for group in linalg::cluster_complex(&vals, ctol) {
        let centroid = group.iter().map(|&i| vals[i]).sum::<Cplx>() / linalg::cr(group.len() as f64);
        if centroid.im.abs() > ctol || centroid.re < -ctol {
            return false;
        }
        if centroid.norm() <= 1.5 * ctol {
            // kernel cluster: theta must vanish there, not merely theta^2
            let g = kernel_dim(&b, ctol);
            if g == 0 {
                continue;
            }
            let cols = eigenspace_columns(&b, Cplx::new(0.0, 0.0), g);
            let img = m.dot(&linalg::conj_mat(&cols));
            if linalg::max_abs(&img) > tol * s {
                return false;
            }
            total += g;
        } else {
            let shifted = &b - &Array2::from_diag_elem(d, centroid);
            total += kernel_dim(&shifted, ctol);
        }
    }
    total == d
}

/// Report the circle spectrum with eigenvector multiplicities and whether
/// the operator admits a basis of eigenvectors. Radii are the square roots
/// of the real nonnegative eigenvalues of theta^2 that carry eigenvectors;
/// multiplicities are the fixed-space dimensions of the rescaled
/// restriction of theta to each eigenspace.
pub fn eigen_structure(theta: &AntiOp) -> EigenStructure {
    let m = theta.mat();
    let d = theta.dim();
    let s = theta.op_norm();
    if s == 0.0 {
        return EigenStructure {
            circles: vec![(0.0, d)],
            diagonalizable: true,
        };
    }
    let ctol = DEFAULT_TOL * s * s;
    let b = m.dot(&linalg::conj_mat(m));
    let (vals, _) = linalg::eig_parts(&b);
    let vals: Vec<Cplx> = vals.to_vec();
    let mut circles: Vec<(f64, usize)> = Vec::new();
    for group in linalg::cluster_complex(&vals, ctol) {
        let centroid = group.iter().map(|&i| vals[i]).sum::<Cplx>() / linalg::cr(group.len() as f64);
        if centroid.norm() <= 1.5 * ctol {
            let mult = kernel_dim(m, DEFAULT_TOL * s);
            if mult > 0 {
                circles.push((0.0, mult));
            }
        } else if centroid.im.abs() <= ctol && centroid.re > 0.0 {
            let z = centroid.re.sqrt();
            let cols = eigenspace_columns(&b, Cplx::new(centroid.re, 0.0), group.len());
            // restriction of theta to the eigenspace, rescaled to an involution
            let k = linalg::dagger(&cols)
                .dot(m)
                .dot(&linalg::conj_mat(&cols))
                .mapv(|x| x / linalg::cr(z));
            let mult = fixed_space_dim(&k);
            if mult > 0 {
                circles.push((z, mult));
            }
        }
        // negative-real and complex clusters carry no eigenvectors
    }
    circles.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    EigenStructure {
        circles,
        diagonalizable: diagonalizable_impl(m, DEFAULT_TOL),
    }
}

// ---------------------------------------------------------------------------
// Pauli family

/// The Pauli operators in dimension 2 together with their conjugate-linear
/// counterparts tau_0..tau_3 and the metric g = diag(-1,1,1,1) governing
/// the anticommutation relations tau_j tau_k + tau_k tau_j = 2 g_jk.
#[derive(Clone, Debug)]
pub struct PauliBasis {
    pub dim: usize,
    pub sigma: [LinOp; 3],
    pub tau: [AntiOp; 4],
    pub g: Array2<f64>,
}

/// Construct the Pauli family in the standard basis and validate its
/// anticommutation and pairing relations at build time.
pub fn pauli_basis() -> PauliBasis {
    let c = Cplx::new;
    let sigma1 = LinOp::from_rows(vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap();
    let sigma2 = LinOp::from_rows(vec![
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ])
    .unwrap();
    let sigma3 = LinOp::from_rows(vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ])
    .unwrap();
    let tau0 = AntiOp::from_rows(vec![
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap();
    let tau1 = AntiOp::from_rows(vec![
        vec![c(-1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0)],
    ])
    .unwrap();
    let tau2 = AntiOp::from_rows(vec![
        vec![c(0.0, 1.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 1.0)],
    ])
    .unwrap();
    let tau3 = AntiOp::from_rows(vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap();
    let mut g = Array2::<f64>::eye(4);
    g[(0, 0)] = -1.0;

    let basis = PauliBasis {
        dim: 2,
        sigma: [sigma1, sigma2, sigma3],
        tau: [tau0, tau1, tau2, tau3],
        g,
    };

    // sigma_j sigma_k + sigma_k sigma_j = 2 delta_jk
    for j in 0..3 {
        for k in 0..3 {
            let jk = compose_lin_lin(&basis.sigma[j], &basis.sigma[k]).unwrap();
            let kj = compose_lin_lin(&basis.sigma[k], &basis.sigma[j]).unwrap();
            let anti = jk.add(&kj).unwrap();
            let expect = if j == k { 2.0 } else { 0.0 };
            let resid = anti.sub(&LinOp::identity(2).scaled(Cplx::new(expect, 0.0)));
            assert!(linalg::max_abs(resid.unwrap().mat()) < 1e-14);
        }
    }
    // tau_j tau_k + tau_k tau_j = 2 g_jk and (tau_j, tau_k) = 2 g_jk
    for j in 0..4 {
        for k in 0..4 {
            let jk = compose_anti_anti(&basis.tau[j], &basis.tau[k]).unwrap();
            let kj = compose_anti_anti(&basis.tau[k], &basis.tau[j]).unwrap();
            let anti = jk.add(&kj).unwrap();
            let expect = 2.0 * basis.g[(j, k)];
            let resid = anti
                .sub(&LinOp::identity(2).scaled(Cplx::new(expect, 0.0)))
                .unwrap();
            assert!(linalg::max_abs(resid.mat()) < 1e-14);
            let pair = canonical_form(&basis.tau[j], &basis.tau[k]).unwrap();
            assert!((pair - Cplx::new(expect, 0.0)).norm() < 1e-14);
        }
    }
    basis
}

/// Normality test: || adj(theta) theta - theta adj(theta) || <= tol ||theta||^2
/// in the operator norm. Equivalent to the Hermitian and skew-Hermitian
/// parts commuting.
pub fn is_normal(theta: &AntiOp, tol: f64) -> bool {
    let adj = theta.adjoint();
    let left = compose_anti_anti(&adj, theta).unwrap();
    let right = compose_anti_anti(theta, &adj).unwrap();
    let resid = left.sub(&right).unwrap().op_norm();
    let s = theta.op_norm();
    resid <= tol * s * s
}
