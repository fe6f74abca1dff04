//! Shared test helpers: seeded random generators and independent oracles.
//!
//! The oracles here work on raw `ndarray` matrices with index loops or
//! textbook formulas, deliberately avoiding the library's own composition
//! and decomposition routines, so that agreement between the two routes is
//! evidence and not circularity.

#![allow(dead_code)]

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, SVD, UPLO};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

// ---------------------------------------------------------------------------
// random inputs (all seeded by the caller; no ambient entropy)

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<C64> {
    Array2::from_shape_fn((rows, cols), |_| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Array1<C64> {
    Array1::from_shape_fn(dim, |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Array1<C64> {
    loop {
        let v = random_vector(rng, dim);
        let n = vec_norm(&v);
        if n > 0.3 {
            return v.mapv(|z| z / n);
        }
    }
}

/// Haar-ish unitary: orthonormal column span of a generic square matrix.
/// Uniformity is irrelevant for the tests; genericity is what matters.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> Array2<C64> {
    loop {
        let g = random_matrix(rng, dim, dim);
        let (u_opt, s, vt_opt) = g.svd(true, true).unwrap();
        if s[dim - 1] > 1e-3 {
            return u_opt.unwrap().dot(&vt_opt.unwrap());
        }
    }
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> Array2<C64> {
    let g = random_matrix(rng, dim, dim);
    (&g + &dagger(&g)).mapv(|z| 0.5 * z)
}

/// Positive definite with spectrum bounded away from zero.
pub fn random_positive(rng: &mut ChaCha8Rng, dim: usize) -> Array2<C64> {
    let g = random_matrix(rng, dim, dim);
    let p = dagger(&g).dot(&g);
    &p + &Array2::eye(dim).mapv(|z: C64| z * 0.2)
}

/// Complex symmetric matrix (M = M^T).
pub fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize) -> Array2<C64> {
    let g = random_matrix(rng, dim, dim);
    (&g + &g.t().to_owned()).mapv(|z| 0.5 * z)
}

/// Bipartite coefficient matrix with all Schmidt values in [0.3, 1.3],
/// then normalized: full Schmidt rank by construction.
pub fn random_full_rank_coeffs(rng: &mut ChaCha8Rng, da: usize, db: usize) -> Array2<C64> {
    let r = da.min(db);
    let u = random_unitary(rng, da);
    let v = random_unitary(rng, db);
    let mut sig = Array2::<C64>::zeros((da, db));
    for k in 0..r {
        sig[(k, k)] = cr(rng.gen_range(0.3..1.3));
    }
    let cmat = u.dot(&sig).dot(&dagger(&v));
    let n = frob_norm(&cmat);
    cmat.mapv(|z| z / n)
}

// ---------------------------------------------------------------------------
// elementary matrix helpers

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

pub fn conj_mat(m: &Array2<C64>) -> Array2<C64> {
    m.mapv(|z| z.conj())
}

/// Descending singular values.
pub fn singular_values_of(m: &Array2<C64>) -> Vec<f64> {
    let (_, s, _) = m.svd(false, false).expect("svd");
    s.to_vec()
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &Array2<C64>) -> Vec<f64> {
    let (vals, _) = m.eigh(UPLO::Lower).expect("hermitian eigendecomposition");
    vals.to_vec()
}

pub fn vec_norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product, linear in the second argument.
pub fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frob_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn trace(m: &Array2<C64>) -> C64 {
    m.diag().sum()
}

pub fn sigma_max(m: &Array2<C64>) -> f64 {
    let (_, s, _) = m.svd(false, false).unwrap();
    s.iter().cloned().fold(0.0, f64::max)
}

pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    ndarray::linalg::kron(a, b)
}

pub fn kron_vec(a: &Array1<C64>, b: &Array1<C64>) -> Array1<C64> {
    let mut out = Array1::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Hermitian square root via eigendecomposition; negative dust is clipped.
/// The backend reports eigenvectors of the conjugate matrix, hence the mapv.
pub fn sqrtm_psd(m: &Array2<C64>) -> Array2<C64> {
    let (vals, vecs_c) = m.eigh(UPLO::Lower).unwrap();
    let vecs = vecs_c.mapv(|z| z.conj());
    let d = Array2::from_diag(&vals.mapv(|x| cr(x.max(0.0).sqrt())));
    vecs.dot(&d).dot(&dagger(&vecs))
}

// ---------------------------------------------------------------------------
// oracles

/// Pairing oracle: (theta1, theta2) = sum_k <e_k, theta2(theta1 e_k)>,
/// evaluated through vector-level conjugate application only.
pub fn pairing_oracle(m1: &Array2<C64>, m2: &Array2<C64>) -> C64 {
    let d = m1.nrows();
    let mut acc = c(0.0, 0.0);
    for k in 0..d {
        let mut e = Array1::<C64>::zeros(d);
        e[k] = cr(1.0);
        let s1 = apply_conj(m1, &e);
        let s2 = apply_conj(m2, &s1);
        acc += s2[k];
    }
    acc
}

/// Apply a conjugate-linear map given by matrix m: v -> m * conj(v).
pub fn apply_conj(m: &Array2<C64>, v: &Array1<C64>) -> Array1<C64> {
    m.dot(&v.mapv(|z| z.conj()))
}

/// Largest output norm of v -> m*conj(v) over a random sample of unit
/// vectors: a lower bound that converges to the operator norm.
pub fn search_op_norm(rng: &mut ChaCha8Rng, m: &Array2<C64>, tries: usize) -> f64 {
    let d = m.ncols();
    let mut best = 0.0f64;
    for _ in 0..tries {
        let v = random_unit_vector(rng, d);
        best = best.max(vec_norm(&apply_conj(m, &v)));
    }
    best
}

/// Largest |<phi, theta phi>| over a random sample of unit vectors:
/// a lower bound on the numerical radius of the conjugate-linear map.
pub fn search_fov_radius(rng: &mut ChaCha8Rng, m: &Array2<C64>, tries: usize) -> f64 {
    let d = m.ncols();
    let mut best = 0.0f64;
    for _ in 0..tries {
        let v = random_unit_vector(rng, d);
        best = best.max(inner(&v, &apply_conj(m, &v)).norm());
    }
    best
}

/// Dense grid version for dim 2: phi = (cos a, e^{ib} sin a) up to phase.
pub fn grid_fov_radius_dim2(m: &Array2<C64>, steps: usize) -> f64 {
    let mut best = 0.0f64;
    for ia in 0..=steps {
        let a = std::f64::consts::FRAC_PI_2 * ia as f64 / steps as f64;
        for ib in 0..steps {
            let b = 2.0 * std::f64::consts::PI * ib as f64 / steps as f64;
            let v = Array1::from(vec![cr(a.cos()), c(0.0, b).exp() * a.sin()]);
            best = best.max(inner(&v, &apply_conj(m, &v)).norm());
        }
    }
    best
}

/// Partial traces of a pure bipartite state given by its coefficient
/// matrix, computed with explicit index sums over the rank-one projector.
pub fn partial_traces_oracle(coeffs: &Array2<C64>) -> (Array2<C64>, Array2<C64>) {
    let (da, db) = coeffs.dim();
    let psi: Vec<C64> = coeffs.iter().cloned().collect(); // index a*db + b
    let mut rho_a = Array2::<C64>::zeros((da, da));
    let mut rho_b = Array2::<C64>::zeros((db, db));
    for a in 0..da {
        for ap in 0..da {
            for b in 0..db {
                rho_a[(a, ap)] += psi[a * db + b] * psi[ap * db + b].conj();
            }
        }
    }
    for b in 0..db {
        for bp in 0..db {
            for a in 0..da {
                rho_b[(b, bp)] += psi[a * db + b] * psi[a * db + bp].conj();
            }
        }
    }
    (rho_a, rho_b)
}

/// Apply |bv><bv| (tensored with identity elsewhere) to the pair of
/// adjacent tensor factors (pos, pos+1) of a state, by plain index loops
/// over the multi-index. Returns (projected state, ||out||^2 / ||in||^2).
pub fn project_pair_oracle(
    data: &[C64],
    dims: &[usize],
    pos: usize,
    bv: &Array2<C64>,
) -> (Vec<C64>, f64) {
    let (da, db) = bv.dim();
    assert_eq!(dims[pos], da);
    assert_eq!(dims[pos + 1], db);
    let left: usize = dims[..pos].iter().product();
    let right: usize = dims[pos + 2..].iter().product();
    let block = da * db * right;
    let mut out = vec![c(0.0, 0.0); data.len()];
    // overlap(l, r) = sum_{a,b} conj(bv[a,b]) * data[l, a, b, r]
    for l in 0..left {
        for r in 0..right {
            let mut ov = c(0.0, 0.0);
            for a in 0..da {
                for b in 0..db {
                    ov += bv[(a, b)].conj() * data[l * block + (a * db + b) * right + r];
                }
            }
            for a in 0..da {
                for b in 0..db {
                    out[l * block + (a * db + b) * right + r] = ov * bv[(a, b)];
                }
            }
        }
    }
    let out_sq: f64 = out.iter().map(|z| z.norm_sqr()).sum();
    let in_sq: f64 = data.iter().map(|z| z.norm_sqr()).sum();
    (out, out_sq / in_sq)
}

/// Winding number of t -> det M_t around zero, from accumulated
/// principal-branch argument increments over the closed sample loop.
pub fn det_winding_oracle(samples: &[Array2<C64>]) -> f64 {
    use ndarray_linalg::Determinant;
    let dets: Vec<C64> = samples.iter().map(|m| m.det().unwrap()).collect();
    let n = dets.len();
    let mut total = 0.0;
    for i in 0..n {
        let ratio = dets[(i + 1) % n] / dets[i];
        total += ratio.arg();
    }
    total / (2.0 * std::f64::consts::PI)
}

/// Basis of the solution space of X^T A = A X, via the SVD kernel of
/// kron(X^T, I) - kron(I, X^T) acting on row-major vec(A).
pub fn cosimilarity_solutions(x: &Array2<C64>, tol: f64) -> Vec<Array2<C64>> {
    let d = x.nrows();
    let xt = x.t().to_owned();
    let eye = Array2::<C64>::eye(d);
    let big = kron(&xt, &eye) - kron(&eye, &xt);
    let (_, s, vt_opt) = big.svd(false, true).unwrap();
    let vt = vt_opt.unwrap();
    let smax = s.iter().cloned().fold(0.0, f64::max).max(1.0);
    let mut out = Vec::new();
    for (k, sv) in s.iter().enumerate() {
        if *sv <= tol * smax {
            let row = vt.row(k).mapv(|z| z.conj());
            out.push(Array2::from_shape_vec((d, d), row.to_vec()).unwrap());
        }
    }
    // rows of vt beyond the length of s also span the kernel when big is wide
    for k in s.len()..vt.nrows() {
        let row = vt.row(k).mapv(|z| z.conj());
        out.push(Array2::from_shape_vec((d, d), row.to_vec()).unwrap());
    }
    out
}

/// Fidelity between density matrices by the spectral formula
/// Tr sqrt( sqrt(r1) r2 sqrt(r1) ).
pub fn fidelity_oracle(r1: &Array2<C64>, r2: &Array2<C64>) -> f64 {
    let s1 = sqrtm_psd(r1);
    let mid = s1.dot(r2).dot(&s1);
    let (vals, _) = mid.eigh(UPLO::Lower).unwrap();
    vals.iter().map(|x| x.max(0.0).sqrt()).sum()
}

/// Trace norm as the sum of singular values.
pub fn trace_norm_oracle(m: &Array2<C64>) -> f64 {
    let (_, s, _) = m.svd(false, false).unwrap();
    s.sum()
}

// ---------------------------------------------------------------------------
// fixed matrices

pub fn pauli_sigma(k: usize) -> Array2<C64> {
    match k {
        1 => ndarray::array![[cr(0.0), cr(1.0)], [cr(1.0), cr(0.0)]],
        2 => ndarray::array![[cr(0.0), c(0.0, -1.0)], [c(0.0, 1.0), cr(0.0)]],
        3 => ndarray::array![[cr(1.0), cr(0.0)], [cr(0.0), cr(-1.0)]],
        _ => panic!("sigma index"),
    }
}

/// Matrices of the conjugate-linear Pauli family in the standard basis.
pub fn pauli_tau(k: usize) -> Array2<C64> {
    match k {
        0 => ndarray::array![[cr(0.0), cr(-1.0)], [cr(1.0), cr(0.0)]],
        1 => ndarray::array![[cr(-1.0), cr(0.0)], [cr(0.0), cr(1.0)]],
        2 => ndarray::array![[c(0.0, 1.0), cr(0.0)], [cr(0.0), c(0.0, 1.0)]],
        3 => ndarray::array![[cr(0.0), cr(1.0)], [cr(1.0), cr(0.0)]],
        _ => panic!("tau index"),
    }
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, want {expected} (tol {tol})"
    );
}

pub fn assert_mat_close(a: &Array2<C64>, b: &Array2<C64>, tol: f64, what: &str) {
    let diff = max_abs(&(a - b));
    assert!(diff <= tol, "{what}: max abs diff {diff} > {tol}");
}
