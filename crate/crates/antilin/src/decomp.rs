//! Structure theory for conjugate-linear operators: polar decomposition,
//! the two-dimensional block normal form for normal operators, the
//! classification ladder, involution polar parts, diagonalizability and
//! fixed real subspaces, conjugation factorizations of unitaries, and the
//! orthogonal conjugation families in dimension 2^n.

use crate::core::{is_normal, AntiOp, Cplx, HVector, LinOp, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array1, Array2};

/// Polar factorization of a conjugate-linear operator: theta equals
/// left * sqrt(adj(theta) theta) and also sqrt(theta adj(theta)) * right.
/// The stored modulus is the left one, sqrt(theta adj(theta)). For
/// singular theta the antiunitary factors degrade to partial isometries
/// whose support matches the support of theta.
#[derive(Clone, Debug)]
pub struct PolarParts {
    pub left_antiunitary: AntiOp,
    pub modulus: LinOp,
    pub right_antiunitary: AntiOp,
}

/// Block normal form of a normal conjugate-linear operator: in the basis
/// given by the columns of `basis`, the operator is block diagonal with
/// 1x1 blocks holding nonnegative radii and 2x2 blocks [[0, z], [z*, 0]]
/// for non-real z. Reassembly is basis * D * basis^T under the
/// conjugate-action convention.
#[derive(Clone, Debug)]
pub struct WhvForm {
    pub blocks_1d: Vec<f64>,
    pub blocks_2d: Vec<Cplx>,
    pub basis: Array2<Cplx>,
}

impl WhvForm {
    pub fn dim(&self) -> usize {
        self.blocks_1d.len() + 2 * self.blocks_2d.len()
    }

    /// The block-diagonal matrix D in the reported basis.
    pub fn block_matrix(&self) -> Array2<Cplx> {
        let d = self.dim();
        let mut out = Array2::<Cplx>::zeros((d, d));
        let mut k = 0;
        for r in &self.blocks_1d {
            out[(k, k)] = Cplx::new(*r, 0.0);
            k += 1;
        }
        for z in &self.blocks_2d {
            out[(k, k + 1)] = *z;
            out[(k + 1, k)] = z.conj();
            k += 2;
        }
        out
    }

    /// Rebuild the operator: matrix = basis * D * basis^T.
    pub fn reassemble(&self) -> AntiOp {
        let w = &self.basis;
        let m = w.dot(&self.block_matrix()).dot(&w.t());
        AntiOp::new(m).expect("reassembled matrix is finite and square")
    }
}

/// Classification labels, ordered from most to least specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpClass {
    Conjugation,
    SkewConjugation,
    Antiunitary,
    Involution,
    SkewInvolution,
    HermitianAnti,
    SkewHermitianAnti,
    Normal,
    General,
}

impl OpClass {
    pub fn name(&self) -> &'static str {
        match self {
            OpClass::Conjugation => "Conjugation",
            OpClass::SkewConjugation => "SkewConjugation",
            OpClass::Antiunitary => "Antiunitary",
            OpClass::Involution => "Involution",
            OpClass::SkewInvolution => "SkewInvolution",
            OpClass::HermitianAnti => "HermitianAnti",
            OpClass::SkewHermitianAnti => "SkewHermitianAnti",
            OpClass::Normal => "Normal",
            OpClass::General => "General",
        }
    }
}

/// Which sign the square of an involution carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    Involution,
    SkewInvolution,
}

/// Polar parts of an involution: S = modulus * conj_part with conj_part a
/// conjugation (S^2 = 1) or skew conjugation (S^2 = -1); the modulus
/// spectrum pairs as (lambda, 1/lambda).
#[derive(Clone, Debug)]
pub struct InvolutionParts {
    pub modulus: LinOp,
    pub conj_part: AntiOp,
    pub kind: InvolutionKind,
}

// ---------------------------------------------------------------------------

/// Polar decomposition through the SVD: M = U Sigma V-adj gives the shared
/// partial-isometry factor U_r V_r-adj over the numerical support, the
/// left modulus U Sigma U-adj, and identical left and right antiunitary
/// matrices (they differ only through which modulus they pair with).
pub fn polar_anti(theta: &AntiOp) -> PolarParts {
    let m = theta.mat();
    let d = theta.dim();
    let (u, s, vt) = linalg::svd_parts(m);
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let rank = s.iter().filter(|x| **x > smax * 1e-12).count();
    let mut iso = Array2::<Cplx>::zeros((d, d));
    if rank > 0 {
        let ur = u.slice(ndarray::s![.., ..rank]).to_owned();
        let vtr = vt.slice(ndarray::s![..rank, ..]).to_owned();
        iso = ur.dot(&vtr);
    }
    let sig = Array2::from_diag(&s.mapv(|x| Cplx::new(x, 0.0)));
    let modulus = u.dot(&sig).dot(&linalg::dagger(&u));
    PolarParts {
        left_antiunitary: AntiOp::new(iso.clone()).expect("finite"),
        modulus: LinOp::new(modulus).expect("finite"),
        right_antiunitary: AntiOp::new(iso).expect("finite"),
    }
}

/// The right modulus sqrt(adj(theta) theta) as a linear operator; the
/// reconstruction theta = left_antiunitary after right_modulus holds.
pub fn right_modulus(theta: &AntiOp) -> LinOp {
    let m = theta.mat();
    let mtm = linalg::dagger(m).dot(m);
    let transposed = mtm.t().to_owned();
    LinOp::new(linalg::sqrtm_psd(&transposed)).expect("finite")
}

// ---------------------------------------------------------------------------
// block normal form

fn centroid(vals: &[Cplx], group: &[usize]) -> Cplx {
    group.iter().map(|&i| vals[i]).sum::<Cplx>() / linalg::cr(group.len() as f64)
}

fn columns_at(mat: &Array2<Cplx>, idx: &[usize]) -> Array2<Cplx> {
    let d = mat.nrows();
    let mut out = Array2::<Cplx>::zeros((d, idx.len()));
    for (j, &i) in idx.iter().enumerate() {
        out.column_mut(j).assign(&mat.column(i));
    }
    out
}

/// Decompose a normal conjugate-linear operator into its minimal block
/// form. The eigenvalues of theta^2 are clustered at scale tol * norm^2;
/// real nonnegative clusters yield 1x1 blocks (radii sqrt(w)), negative
/// real clusters pair into 2x2 blocks with purely imaginary z, and complex
/// clusters pair with their conjugates into 2x2 blocks. The 2x2 gauge is
/// fixed by z = |Re sqrt(w)| + i |Im sqrt(w)|.
pub fn whv_decompose(theta: &AntiOp, tol: f64) -> Result<WhvForm> {
    let d = theta.dim();
    let m = theta.mat();
    let s = theta.op_norm();
    if s == 0.0 {
        return Ok(WhvForm {
            blocks_1d: vec![0.0; d],
            blocks_2d: vec![],
            basis: Array2::eye(d),
        });
    }
    if !is_normal(theta, tol) {
        return Err(Error::NotNormal(
            "block normal form requires a normal operator".into(),
        ));
    }
    let ctol = tol * s * s;
    let b = m.dot(&linalg::conj_mat(m));
    let (vals, vecs) = linalg::normal_eig(&b, ctol);
    let vals: Vec<Cplx> = vals.to_vec();
    let clusters = linalg::cluster_complex(&vals, ctol);
    let mut used = vec![false; clusters.len()];

    // (radius, column) for 1x1 blocks; (z, col', col'') for 2x2 blocks
    let mut ones: Vec<(f64, Array1<Cplx>)> = Vec::new();
    let mut twos: Vec<(Cplx, Array1<Cplx>, Array1<Cplx>)> = Vec::new();

    for ci in 0..clusters.len() {
        if used[ci] {
            continue;
        }
        used[ci] = true;
        let group = &clusters[ci];
        let w = centroid(&vals, group);
        let cols = columns_at(&vecs, group);
        let k = group.len();

        if w.norm() <= 1.5 * ctol {
            for j in 0..k {
                ones.push((0.0, cols.column(j).to_owned()));
            }
        } else if w.im.abs() <= ctol && w.re > 0.0 {
            // positive circle: split the eigenspace along the fixed
            // directions of the rescaled restriction, a conjugation here
            let z = w.re.sqrt();
            let kmat = linalg::dagger(&cols)
                .dot(m)
                .dot(&linalg::conj_mat(&cols))
                .mapv(|x| x / linalg::cr(z));
            let r = linalg::real_rep_conj(&kmat);
            let shifted = &r - &Array2::<f64>::eye(2 * k);
            let vt = linalg::real_svd_vt(&shifted);
            for j in 0..k {
                let row = vt.row(2 * k - 1 - j);
                let x = Array1::from_shape_fn(k, |i| Cplx::new(row[i], row[i + k]));
                ones.push((z, cols.dot(&x)));
            }
        } else if w.im.abs() <= ctol {
            // negative circle: the rescaled restriction squares to -1, so
            // vectors pair Wigner-style into purely imaginary 2x2 blocks
            if k % 2 != 0 {
                return Err(Error::NotNormal(
                    "negative eigenvalue cluster of odd dimension".into(),
                ));
            }
            let radius = (-w.re).sqrt();
            let z = Cplx::new(0.0, radius);
            let kappa = linalg::dagger(&cols)
                .dot(m)
                .dot(&linalg::conj_mat(&cols))
                .mapv(|x| x / linalg::cr(radius));
            let mut frame = Array2::<Cplx>::eye(k);
            while frame.ncols() > 0 {
                let a = frame.column(0).to_owned();
                let mut bvec = kappa.dot(&a.mapv(|x| x.conj()));
                // orthogonality to a is automatic; renormalize for safety
                let ab: Cplx = a.iter().zip(bvec.iter()).map(|(x, y)| x.conj() * y).sum();
                bvec = &bvec - &a.mapv(|x| ab * x);
                let bn = bvec.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                bvec.mapv_inplace(|x| x / linalg::cr(bn));
                twos.push((z, cols.dot(&a), cols.dot(&bvec.mapv(|x| Cplx::new(0.0, 1.0) * x))));
                // deflate the pair and re-orthonormalize the rest
                let mut proj = Array2::<Cplx>::eye(k);
                for v in [&a, &bvec] {
                    for i in 0..k {
                        for j in 0..k {
                            proj[(i, j)] -= v[i] * v[j].conj();
                        }
                    }
                }
                let rest = proj.dot(&frame);
                let (u, sv, _) = linalg::svd_parts(&rest);
                let keep: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] > 0.5).collect();
                frame = columns_at(&u, &keep);
            }
        } else {
            // complex cluster: find the conjugate partner, put the block
            // eigenvector columns on the z^2 side
            let mut partner = None;
            for cj in (ci + 1)..clusters.len() {
                if used[cj] {
                    continue;
                }
                let wj = centroid(&vals, &clusters[cj]);
                if (wj - w.conj()).norm() <= 10.0 * ctol {
                    partner = Some(cj);
                    break;
                }
            }
            let cj = partner.ok_or_else(|| {
                Error::NotNormal("complex eigenvalue cluster without conjugate partner".into())
            })?;
            if clusters[cj].len() != k {
                return Err(Error::NotNormal(
                    "conjugate eigenvalue clusters of unequal dimension".into(),
                ));
            }
            used[cj] = true;
            let s0 = w.sqrt();
            let z = Cplx::new(s0.re.abs(), s0.im.abs());
            let zz = z * z;
            let (side_cols, side_w) = if (zz - w).norm() <= (zz - w.conj()).norm() {
                (cols, w)
            } else {
                (columns_at(&vecs, &clusters[cj]), w.conj())
            };
            let _ = side_w;
            let phi2 = m.dot(&linalg::conj_mat(&side_cols)).mapv(|x| x / z.conj());
            for j in 0..k {
                twos.push((z, side_cols.column(j).to_owned(), phi2.column(j).to_owned()));
            }
        }
    }

    ones.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    twos.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap()
    });

    let mut basis = Array2::<Cplx>::zeros((d, d));
    let mut col = 0;
    let mut blocks_1d = Vec::with_capacity(ones.len());
    for (r, c) in &ones {
        basis.column_mut(col).assign(c);
        blocks_1d.push(*r);
        col += 1;
    }
    let mut blocks_2d = Vec::with_capacity(twos.len());
    for (z, c1, c2) in &twos {
        basis.column_mut(col).assign(c1);
        basis.column_mut(col + 1).assign(c2);
        blocks_2d.push(*z);
        col += 2;
    }
    debug_assert_eq!(col, d);
    Ok(WhvForm {
        blocks_1d,
        blocks_2d,
        basis,
    })
}

// ---------------------------------------------------------------------------
// classification

/// Classify into the most specific label whose defining identities hold
/// within tol, testing in the order of the enum. Unitarity and squared
/// identities are compared in max norm at scale max(1, norm^2); matrix
/// (anti)symmetry at scale norm.
pub fn classify(theta: &AntiOp, tol: f64) -> OpClass {
    let m = theta.mat();
    let d = theta.dim();
    let s = theta.op_norm();
    let eye = Array2::<Cplx>::eye(d);
    let quad_scale = tol * 1.0f64.max(s * s);

    let unitary = linalg::max_abs(&(&linalg::dagger(m).dot(m) - &eye)) <= quad_scale;
    let sq = m.dot(&linalg::conj_mat(m));
    let sq_plus = linalg::max_abs(&(&sq - &eye)) <= quad_scale;
    let sq_minus = linalg::max_abs(&(&sq + &eye)) <= quad_scale;

    if unitary && sq_plus {
        return OpClass::Conjugation;
    }
    if unitary && sq_minus {
        return OpClass::SkewConjugation;
    }
    if unitary {
        return OpClass::Antiunitary;
    }
    if sq_plus {
        return OpClass::Involution;
    }
    if sq_minus {
        return OpClass::SkewInvolution;
    }
    let sym = linalg::max_abs(&(m - &m.t().to_owned()));
    if sym <= tol * s {
        return OpClass::HermitianAnti;
    }
    let skewsym = linalg::max_abs(&(m + &m.t().to_owned()));
    if skewsym <= tol * s {
        return OpClass::SkewHermitianAnti;
    }
    if is_normal(theta, tol) {
        return OpClass::Normal;
    }
    OpClass::General
}

/// Polar parts of an involution: with P = sqrt(S adj(S)), the conjugate
/// part P^{-1} S is exactly a conjugation or skew conjugation, matching
/// the sign of S^2.
pub fn involution_polar(s_op: &AntiOp, tol: f64) -> Result<InvolutionParts> {
    let m = s_op.mat();
    let d = s_op.dim();
    let s = s_op.op_norm();
    let eye = Array2::<Cplx>::eye(d);
    let quad_scale = tol * 1.0f64.max(s * s);
    let sq = m.dot(&linalg::conj_mat(m));
    let kind = if linalg::max_abs(&(&sq - &eye)) <= quad_scale {
        InvolutionKind::Involution
    } else if linalg::max_abs(&(&sq + &eye)) <= quad_scale {
        InvolutionKind::SkewInvolution
    } else {
        return Err(Error::NotInvolution(
            "operator square is neither +1 nor -1".into(),
        ));
    };
    let mmd = m.dot(&linalg::dagger(m));
    let modulus = linalg::sqrtm_psd(&mmd);
    let inv_sqrt = linalg::hermitian_fn(&mmd, |x| 1.0 / x.max(1e-300).sqrt());
    let conj_mat = inv_sqrt.dot(m);
    Ok(InvolutionParts {
        modulus: LinOp::new(modulus).expect("finite"),
        conj_part: AntiOp::new(conj_mat).expect("finite"),
        kind,
    })
}

/// Whether the operator admits a basis of eigenvectors.
pub fn is_diagonalizable(theta: &AntiOp, tol: f64) -> bool {
    crate::core::diagonalizable_impl(theta.mat(), tol)
}

/// Real-orthonormal basis (d vectors) of the fixed set {phi : theta phi =
/// phi} of a conjugation or non-unitary involution. The fixed set is a
/// real-linear subspace with E = F + iF, so it always carries exactly d
/// real dimensions.
pub fn fixed_real_subspace(theta: &AntiOp, tol: f64) -> Result<Vec<HVector>> {
    match classify(theta, tol) {
        OpClass::Conjugation | OpClass::Involution => {}
        other => {
            return Err(Error::NotInvolution(format!(
                "fixed real subspace requires an involution, got {}",
                other.name()
            )))
        }
    }
    let d = theta.dim();
    let r = linalg::real_rep_conj(theta.mat());
    let shifted = &r - &Array2::<f64>::eye(2 * d);
    let vt = linalg::real_svd_vt(&shifted);
    let s = theta.op_norm();
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let row = vt.row(2 * d - 1 - j);
        let x = Array1::from_shape_fn(d, |i| Cplx::new(row[i], row[i + d]));
        let v = HVector::from_array(x)?;
        let residual = theta.apply(&v)?.sub(&v)?.norm();
        if residual > 100.0 * tol * 1.0f64.max(s) {
            return Err(Error::NotInvolution(
                "fixed subspace has unexpected dimension".into(),
            ));
        }
        out.push(v);
    }
    Ok(out)
}

/// Factor a unitary as a product of two conjugations, u = theta1 theta2,
/// built on an orthonormal eigenbasis W of u: theta2 fixes the basis
/// (matrix W W^T) and theta1 additionally applies the eigenvalue phases.
pub fn unitary_as_two_conjugations(u: &LinOp) -> Result<(AntiOp, AntiOp)> {
    let m = u.mat();
    let d = u.dim();
    let resid = linalg::max_abs(&(&linalg::dagger(m).dot(m) - &Array2::<Cplx>::eye(d)));
    if resid > DEFAULT_TOL {
        return Err(Error::NotUnitary(format!(
            "unitarity residual {resid:.3e} exceeds tolerance"
        )));
    }
    let (vals, w) = linalg::normal_eig(m, DEFAULT_TOL);
    let phases = Array2::from_diag(&vals);
    let m1 = w.dot(&phases).dot(&w.t());
    let m2 = w.dot(&w.t());
    Ok((
        AntiOp::new(m1).expect("finite"),
        AntiOp::new(m2).expect("finite"),
    ))
}

/// Mutually orthogonal conjugations and skew conjugations on dimension
/// 2^n, built by tensor products of the 2-dimensional family: conjugations
/// come from conj x conj and skew x skew, skew conjugations from the mixed
/// products. Counts are d(d+1)/2 and d(d-1)/2, and the pairing satisfies
/// (theta_j, theta_k) = +/- d delta_jk.
pub fn orthogonal_conjugation_family(n: usize) -> Result<(Vec<AntiOp>, Vec<AntiOp>)> {
    if n < 1 {
        return Err(Error::UnsupportedDim(
            "the family is defined on dimensions 2^n with n >= 1".into(),
        ));
    }
    let pb = crate::core::pauli_basis();
    let base_conj: Vec<Array2<Cplx>> = (1..4).map(|k| pb.tau[k].mat().clone()).collect();
    let base_skew: Vec<Array2<Cplx>> = vec![pb.tau[0].mat().clone()];
    let mut conj = base_conj.clone();
    let mut skew = base_skew.clone();
    for _ in 1..n {
        let mut next_conj = Vec::new();
        let mut next_skew = Vec::new();
        for c in &conj {
            for c1 in &base_conj {
                next_conj.push(linalg::kron(c, c1));
            }
            for s1 in &base_skew {
                next_skew.push(linalg::kron(c, s1));
            }
        }
        for s in &skew {
            for s1 in &base_skew {
                next_conj.push(linalg::kron(s, s1));
            }
            for c1 in &base_conj {
                next_skew.push(linalg::kron(s, c1));
            }
        }
        conj = next_conj;
        skew = next_skew;
    }
    Ok((
        conj.into_iter()
            .map(|m| AntiOp::new(m).expect("finite"))
            .collect(),
        skew.into_iter()
            .map(|m| AntiOp::new(m).expect("finite"))
            .collect(),
    ))
}
