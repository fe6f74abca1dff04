//! Internal numeric helpers: thin panicking wrappers over the LAPACK-backed
//! decompositions, spectral clustering, and the spectral-decomposition
//! routine for normal matrices used by the block-form algorithms.
//!
//! The wrappers panic on backend failure. Inputs reaching them are validated
//! finite by the public constructors, and LAPACK does not fail on finite
//! input of these sizes, so the panic paths are unreachable in practice.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Determinant, Eig, Eigh, Inverse, SVD, UPLO};
use num_complex::Complex64 as C64;

pub(crate) fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub(crate) fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

pub(crate) fn conj_mat(m: &Array2<C64>) -> Array2<C64> {
    m.mapv(|z| z.conj())
}

pub(crate) fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn frob_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn trace(m: &Array2<C64>) -> C64 {
    m.diag().sum()
}

/// Largest singular value; 0 for the zero matrix.
pub(crate) fn op_norm(m: &Array2<C64>) -> f64 {
    if max_abs(m) == 0.0 {
        return 0.0;
    }
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s.iter().cloned().fold(0.0, f64::max)
}

pub(crate) fn svd_parts(m: &Array2<C64>) -> (Array2<C64>, Array1<f64>, Array2<C64>) {
    let (u, s, vt) = m.svd(true, true).expect("svd failed");
    (u.unwrap(), s, vt.unwrap())
}

pub(crate) fn singular_values(m: &Array2<C64>) -> Array1<f64> {
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s
}

pub(crate) fn eigh_parts(m: &Array2<C64>) -> (Array1<f64>, Array2<C64>) {
    // this backend hands the row-major array to LAPACK as if column-major,
    // so the reported vectors diagonalize the conjugate matrix; conjugate
    // them back so columns satisfy m v_j = lambda_j v_j
    let std = m.as_standard_layout().to_owned();
    let (vals, vecs) = std.eigh(UPLO::Lower).expect("eigh failed");
    (vals, vecs.mapv(|z| z.conj()))
}

pub(crate) fn eig_parts(m: &Array2<C64>) -> (Array1<C64>, Array2<C64>) {
    m.eig().expect("eig failed")
}

pub(crate) fn inverse(m: &Array2<C64>) -> Array2<C64> {
    m.inv().expect("inverse failed")
}

#[cfg_attr(not(test), allow(dead_code))] // exercised by in-crate tests
pub(crate) fn determinant(m: &Array2<C64>) -> C64 {
    m.det().expect("determinant failed")
}

pub(crate) fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    ndarray::linalg::kron(a, b)
}

/// f(M) for Hermitian M through its eigendecomposition, f acting on the
/// (real) spectrum.
pub(crate) fn hermitian_fn(m: &Array2<C64>, f: impl Fn(f64) -> f64) -> Array2<C64> {
    let (vals, vecs) = eigh_parts(m);
    let d = Array2::from_diag(&vals.mapv(|x| cr(f(x))));
    vecs.dot(&d).dot(&dagger(&vecs))
}

/// Hermitian square root of a positive semidefinite matrix; negative
/// rounding dust in the spectrum is clipped to zero.
pub(crate) fn sqrtm_psd(m: &Array2<C64>) -> Array2<C64> {
    hermitian_fn(m, |x| x.max(0.0).sqrt())
}

/// Group indices of complex values into chained clusters: i and j share a
/// cluster whenever some chain of pairwise distances ≤ ctol connects them.
pub(crate) fn cluster_complex(vals: &[C64], ctol: f64) -> Vec<Vec<usize>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (vals[i] - vals[j]).norm() <= ctol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Spectral decomposition B = W diag(vals) W† of a normal matrix with
/// orthonormal W, built from the commuting Hermitian parts: eigenspaces of
/// (B+B†)/2 are refined by -i(B-B†)/2, so degenerate real parts still come
/// out jointly diagonalized. `ctol` sets the eigenvalue clustering scale.
/// Eigenvalues are recovered per column as Rayleigh quotients.
pub(crate) fn normal_eig(b: &Array2<C64>, ctol: f64) -> (Array1<C64>, Array2<C64>) {
    let d = b.nrows();
    let bd = dagger(b);
    let h1 = (b + &bd).mapv(|z| 0.5 * z);
    let h2 = (b - &bd).mapv(|z| C64::new(0.0, -0.5) * z);
    let (w1, w) = eigh_parts(&h1);
    let vals1: Vec<C64> = w1.iter().map(|x| cr(*x)).collect();
    let mut vecs = Array2::<C64>::zeros((d, d));
    let mut col = 0;
    for group in cluster_complex(&vals1, ctol) {
        let k = group.len();
        let mut wc = Array2::<C64>::zeros((d, k));
        for (j, &gi) in group.iter().enumerate() {
            wc.column_mut(j).assign(&w.column(gi));
        }
        let a2 = dagger(&wc).dot(&h2).dot(&wc);
        // symmetrize rounding dust so eigh sees an exactly Hermitian input
        let a2 = (&a2 + &dagger(&a2)).mapv(|z| 0.5 * z);
        let (_, v) = eigh_parts(&a2);
        let refined = wc.dot(&v);
        for j in 0..k {
            vecs.column_mut(col + j).assign(&refined.column(j));
        }
        col += k;
    }
    let mut vals = Array1::<C64>::zeros(d);
    for j in 0..d {
        let cj = vecs.column(j).to_owned();
        let bc = b.dot(&cj);
        vals[j] = cj.iter().zip(bc.iter()).map(|(x, y)| x.conj() * y).sum();
    }
    (vals, vecs)
}

/// Real-linear representation of the conjugate-linear map x -> K conj(x)
/// on stacked coordinates (Re x; Im x): [[A, B], [B, -A]] for K = A + iB.
pub(crate) fn real_rep_conj(k: &Array2<C64>) -> Array2<f64> {
    let n = k.nrows();
    let mut r = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let a = k[(i, j)].re;
            let b = k[(i, j)].im;
            r[(i, j)] = a;
            r[(i, j + n)] = b;
            r[(i + n, j)] = b;
            r[(i + n, j + n)] = -a;
        }
    }
    r
}

/// Right singular vectors (rows of Vᵀ) of a real matrix.
pub(crate) fn real_svd_vt(m: &Array2<f64>) -> Array2<f64> {
    m.svd(false, true).expect("real svd failed").2.expect("vt")
}

/// Singular values of a real matrix, descending.
pub(crate) fn real_singular_values(m: &Array2<f64>) -> Array1<f64> {
    m.svd(false, false).expect("real svd failed").1
}
