//! Bipartite vectors and the conjugate-linear maps they induce: s-maps and
//! their polar parts (j-maps), twisted products acting on the joint space,
//! superoperators attached to density-matrix decompositions, teleportation
//! compositions with their trace-norm fidelity, distributed chains, swapping,
//! and a brute-force tensor projector used as the measurement model.
//!
//! Conventions: a bipartite vector on `H_A (x) H_B` is stored as its
//! coefficient matrix `c` with `psi = sum c[j][k] e_j (x) e_k`; joint-space
//! vectors are flattened row-major, index `(a, b) -> a * dim_b + b`, matching
//! the Kronecker product of operators on the factors.

use ndarray::{Array1, Array2};

use crate::core::{Cplx, HVector, LinOp, AntiOp, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg;

fn check_finite(data: &Array2<Cplx>) -> Result<()> {
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Dim("entries must be finite".into()));
    }
    Ok(())
}

/// A vector on a two-factor tensor product, stored by its coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteVector {
    coeffs: Array2<Cplx>,
}

impl BipartiteVector {
    pub fn new(coeffs: Array2<Cplx>) -> Result<Self> {
        if coeffs.nrows() == 0 || coeffs.ncols() == 0 {
            return Err(Error::Dim("coefficient matrix must be nonempty".into()));
        }
        check_finite(&coeffs)?;
        Ok(BipartiteVector { coeffs })
    }

    /// `(1/sqrt(d)) sum_j e_j (x) e_j`.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dim("dimension must be positive".into()));
        }
        let s = 1.0 / (d as f64).sqrt();
        let mut c = Array2::<Cplx>::zeros((d, d));
        for j in 0..d {
            c[(j, j)] = Cplx::new(s, 0.0);
        }
        Ok(BipartiteVector { coeffs: c })
    }

    pub fn dim_a(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn dim_b(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &Array2<Cplx> {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        linalg::frob_norm(&self.coeffs)
    }

    pub fn scaled(&self, z: Cplx) -> BipartiteVector {
        BipartiteVector {
            coeffs: self.coeffs.mapv(|w| w * z),
        }
    }

    /// The same vector on the flattened joint space.
    pub fn flatten(&self) -> HVector {
        let (da, db) = (self.dim_a(), self.dim_b());
        let data = Array1::from_shape_fn(da * db, |i| self.coeffs[(i / db, i % db)]);
        HVector::from_array(data).expect("finite by construction")
    }

    /// Rebuilds the coefficient matrix from a flattened joint-space vector.
    pub fn from_flat(dim_a: usize, dim_b: usize, v: &HVector) -> Result<Self> {
        if v.dim() != dim_a * dim_b {
            return Err(Error::Dim(format!(
                "vector length {} does not factor as {dim_a} x {dim_b}",
                v.dim()
            )));
        }
        let c = Array2::from_shape_fn((dim_a, dim_b), |(a, b)| v.data()[a * dim_b + b]);
        BipartiteVector::new(c)
    }

    /// Schmidt coefficients, descending.
    pub fn schmidt_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = linalg::singular_values(&self.coeffs).to_vec();
        sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
        sv
    }
}

/// A conjugate-linear map between spaces of possibly different dimensions,
/// acting as `v -> mat * conj(v)`.  Its adjoint is the plain transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiMap {
    mat: Array2<Cplx>,
}

impl AntiMap {
    pub fn new(mat: Array2<Cplx>) -> Result<Self> {
        if mat.nrows() == 0 || mat.ncols() == 0 {
            return Err(Error::Dim("map matrix must be nonempty".into()));
        }
        check_finite(&mat)?;
        Ok(AntiMap { mat })
    }

    pub fn dim_in(&self) -> usize {
        self.mat.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        &self.mat
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        if v.dim() != self.dim_in() {
            return Err(Error::Dim(format!(
                "map takes dim {}, got {}",
                self.dim_in(),
                v.dim()
            )));
        }
        let out = self.mat.dot(&v.data().mapv(|z| z.conj()));
        HVector::from_array(out)
    }

    /// The adjoint, satisfying `<w, t v> = <v, t^dag w>`.
    pub fn adjoint(&self) -> AntiMap {
        AntiMap {
            mat: self.mat.t().to_owned(),
        }
    }
}

/// A linear map between spaces of possibly different dimensions, arising as
/// the composition of two conjugate-linear maps.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportMap {
    mat: Array2<Cplx>,
}

impl TeleportMap {
    pub fn new(mat: Array2<Cplx>) -> Result<Self> {
        if mat.nrows() == 0 || mat.ncols() == 0 {
            return Err(Error::Dim("map matrix must be nonempty".into()));
        }
        check_finite(&mat)?;
        Ok(TeleportMap { mat })
    }

    pub fn dim_in(&self) -> usize {
        self.mat.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Array2<Cplx> {
        &self.mat
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        if v.dim() != self.dim_in() {
            return Err(Error::Dim(format!(
                "map takes dim {}, got {}",
                self.dim_in(),
                v.dim()
            )));
        }
        HVector::from_array(self.mat.dot(v.data()))
    }

    /// Sum of the singular values.
    pub fn trace_norm(&self) -> f64 {
        linalg::singular_values(&self.mat).iter().sum()
    }
}

/// The map `phi^A -> sum_jk c_jk <phi^A, e_j> e_k` sending the first factor
/// into the second: the relative state left on side B when side A is found
/// in `phi`.  The defining identity is
/// `(|phi><phi| (x) 1) psi = phi (x) smap_ba(psi) phi` for every `phi`.
pub fn smap_ba(psi: &BipartiteVector) -> AntiMap {
    AntiMap {
        mat: psi.coeffs().t().to_owned(),
    }
}

/// The adjoint map, sending the second factor into the first; together with
/// [`smap_ba`] it satisfies the amplitude identity
/// `<phi^A (x) phi^B, psi> = <phi^A, smap_ab phi^B> = <phi^B, smap_ba phi^A>`.
pub fn smap_ab(psi: &BipartiteVector) -> AntiMap {
    AntiMap {
        mat: psi.coeffs().clone(),
    }
}

/// Both reduced density operators `(rho_A, rho_B)`, computed as the two
/// compositions of the s-maps: `rho_A = s_ab s_ba`, `rho_B = s_ba s_ab`.
pub fn reduced_densities(psi: &BipartiteVector) -> (LinOp, LinOp) {
    let c = psi.coeffs();
    let rho_a = c.dot(&linalg::dagger(c));
    let rho_b = c.t().dot(&linalg::conj_mat(c));
    (
        LinOp::new(rho_a).expect("finite by construction"),
        LinOp::new(rho_b).expect("finite by construction"),
    )
}

/// The partial-isometry parts `(j_ba, j_ab)` of the polar decompositions
/// `s_ba = j_ba sqrt(rho_A) = sqrt(rho_B) j_ba`, with `j_ab = (j_ba)^dag`.
///
/// On the Schmidt vectors `j_ba` acts as the plain relabeling A_j -> B_j;
/// it annihilates the orthocomplement of the support.
pub fn jmaps(psi: &BipartiteVector) -> (AntiMap, AntiMap) {
    let c = psi.coeffs();
    let (u, s, vt) = linalg::svd_parts(c);
    let smax = s.iter().cloned().fold(0.0f64, f64::max);
    let r = s.iter().filter(|&&x| x > smax * 1e-12).count();
    let (da, db) = (psi.dim_a(), psi.dim_b());
    let mut jab = Array2::<Cplx>::zeros((da, db));
    if r > 0 {
        let ur = u.slice(ndarray::s![.., ..r]).to_owned();
        let vtr = vt.slice(ndarray::s![..r, ..]).to_owned();
        jab = ur.dot(&vtr);
    }
    let jba = AntiMap {
        mat: jab.t().to_owned(),
    };
    let jab = AntiMap { mat: jab };
    (jba, jab)
}

/// The joint-space conjugate-linear operator acting factorwise:
/// `phi^A (x) phi^B -> (t_ab phi^B) (x) (t_ba phi^A)`.
///
/// Its square is the ordinary tensor product `(t_ab t_ba) (x) (t_ba t_ab)`.
pub fn twisted_product(t_ab: &AntiMap, t_ba: &AntiMap) -> Result<AntiOp> {
    let da = t_ab.dim_out();
    let db = t_ba.dim_out();
    if t_ab.dim_in() != db || t_ba.dim_in() != da {
        return Err(Error::Dim(format!(
            "factor maps {}x{} and {}x{} do not pair into a square operator",
            da,
            t_ab.dim_in(),
            db,
            t_ba.dim_in()
        )));
    }
    let mab = t_ab.mat();
    let mba = t_ba.mat();
    let n = da * db;
    let m = Array2::from_shape_fn((n, n), |(row, col)| {
        let (a, b) = (row / db, row % db);
        let (ap, bp) = (col / db, col % db);
        mab[(a, bp)] * mba[(b, ap)]
    });
    AntiOp::new(m)
}

/// The pair of superoperators attached to a decomposition
/// `rho = sum_j |psi_j><psi_j|` of a joint-space density operator.
#[derive(Debug, Clone)]
pub struct PhiMaps {
    coeffs: Vec<Array2<Cplx>>,
    dim_a: usize,
    dim_b: usize,
}

impl PhiMaps {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// `X^A -> sum_j s_j_ba X^dag s_j_ab`, an operator on side B.
    pub fn apply_ba(&self, x: &LinOp) -> Result<LinOp> {
        if x.dim() != self.dim_a {
            return Err(Error::Dim(format!(
                "operator dim {} vs side-A dim {}",
                x.dim(),
                self.dim_a
            )));
        }
        let xt = x.mat().t().to_owned();
        let mut acc = Array2::<Cplx>::zeros((self.dim_b, self.dim_b));
        for c in &self.coeffs {
            acc = acc + c.t().dot(&xt).dot(&linalg::conj_mat(c));
        }
        Ok(LinOp::new(acc).expect("finite by construction"))
    }

    /// `X^B -> sum_j s_j_ab X^dag s_j_ba`, an operator on side A.
    pub fn apply_ab(&self, x: &LinOp) -> Result<LinOp> {
        if x.dim() != self.dim_b {
            return Err(Error::Dim(format!(
                "operator dim {} vs side-B dim {}",
                x.dim(),
                self.dim_b
            )));
        }
        let xt = x.mat().t().to_owned();
        let mut acc = Array2::<Cplx>::zeros((self.dim_a, self.dim_a));
        for c in &self.coeffs {
            acc = acc + c.dot(&xt).dot(&linalg::conj_mat(&c.t().to_owned()));
        }
        Ok(LinOp::new(acc).expect("finite by construction"))
    }
}

/// Builds [`PhiMaps`] after verifying that the supplied vectors really
/// decompose `rho`, i.e. `rho = sum_j |psi_j><psi_j|` within tolerance.
///
/// The maps satisfy the duality
/// `Tr((X^A (x) X^B) rho) = Tr(X^B PhiMaps::apply_ba(X^A))`.
pub fn phi_maps(rho: &LinOp, decomposition: &[BipartiteVector]) -> Result<PhiMaps> {
    if decomposition.is_empty() {
        return Err(Error::Dim("need at least one vector".into()));
    }
    let da = decomposition[0].dim_a();
    let db = decomposition[0].dim_b();
    if decomposition
        .iter()
        .any(|p| p.dim_a() != da || p.dim_b() != db)
    {
        return Err(Error::Dim(
            "decomposition vectors must share their factor dimensions".into(),
        ));
    }
    if rho.dim() != da * db {
        return Err(Error::Dim(format!(
            "operator dim {} does not match {da} x {db}",
            rho.dim()
        )));
    }
    let mut sum = Array2::<Cplx>::zeros((da * db, da * db));
    for p in decomposition {
        let f = p.flatten();
        let col = f.data();
        for i in 0..da * db {
            for j in 0..da * db {
                sum[(i, j)] += col[i] * col[j].conj();
            }
        }
    }
    let scale = linalg::max_abs(rho.mat()).max(1.0);
    if linalg::max_abs(&(&sum - rho.mat())) > DEFAULT_TOL * scale {
        return Err(Error::Decomposition(
            "vectors do not sum to the given operator".into(),
        ));
    }
    Ok(PhiMaps {
        coeffs: decomposition.iter().map(|p| p.coeffs().clone()).collect(),
        dim_a: da,
        dim_b: db,
    })
}

/// The linear map `A -> C` composed from two s-maps across a shared middle
/// system: `t = s_phi_cb  s_psi_ba`.  Teleporting `v` through the resource
/// `psi` after a measurement outcome `phi` leaves side C in `t v` up to
/// normalization.
pub fn teleport_map(
    phi_bc: &BipartiteVector,
    psi_ab: &BipartiteVector,
) -> Result<TeleportMap> {
    if phi_bc.dim_a() != psi_ab.dim_b() {
        return Err(Error::Dim(format!(
            "middle dimensions differ: {} vs {}",
            phi_bc.dim_a(),
            psi_ab.dim_b()
        )));
    }
    let m = phi_bc
        .coeffs()
        .t()
        .dot(&linalg::conj_mat(&psi_ab.coeffs().t().to_owned()));
    Ok(TeleportMap { mat: m })
}

/// Trace norm of the teleportation map for unit-norm resources; equals the
/// fidelity `Tr sqrt(sqrt(rho_psi^B) rho_phi^B sqrt(rho_psi^B))` of the two
/// middle-system reductions.
pub fn teleport_fidelity(
    phi_bc: &BipartiteVector,
    psi_ab: &BipartiteVector,
) -> Result<f64> {
    for (name, v) in [("phi", phi_bc.norm()), ("psi", psi_ab.norm())] {
        if (v - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized(format!(
                "{name} has norm {v:.6}, expected a unit vector"
            )));
        }
    }
    Ok(teleport_map(phi_bc, psi_ab)?.trace_norm())
}

/// Composition of the s-maps along a chain of bipartite links; linear for an
/// even number of links, conjugate-linear for an odd number.
#[derive(Debug, Clone)]
pub enum ChainMap {
    Linear(TeleportMap),
    Antilinear(AntiMap),
}

/// Folds the links `psi_12, psi_23, ...` into the end-to-end map
/// `s_{n+1,n} ... s_{3,2} s_{2,1}`.
pub fn chain_map(links: &[BipartiteVector]) -> Result<ChainMap> {
    if links.is_empty() {
        return Err(Error::Dim("need at least one link".into()));
    }
    let mut cur = links[0].coeffs().t().to_owned();
    let mut antilinear = true;
    for (i, link) in links.iter().enumerate().skip(1) {
        if link.dim_a() != cur.nrows() {
            return Err(Error::Dim(format!(
                "link {i} starts at dim {} but the chain reached dim {}",
                link.dim_a(),
                cur.nrows()
            )));
        }
        cur = link.coeffs().t().dot(&linalg::conj_mat(&cur));
        antilinear = !antilinear;
    }
    Ok(if antilinear {
        ChainMap::Antilinear(AntiMap { mat: cur })
    } else {
        ChainMap::Linear(TeleportMap { mat: cur })
    })
}

/// The bipartite vector on the outer pair `(2, 5)` produced by projecting
/// the middle pair of `phi_23 (x) phi_45` onto `psi_34`: coefficientwise
/// `c_23 conj(c_34) c_45`.
pub fn entanglement_swap(
    phi23: &BipartiteVector,
    phi45: &BipartiteVector,
    psi34: &BipartiteVector,
) -> Result<BipartiteVector> {
    if phi23.dim_b() != psi34.dim_a() {
        return Err(Error::Dim(format!(
            "space-3 dims differ: {} vs {}",
            phi23.dim_b(),
            psi34.dim_a()
        )));
    }
    if phi45.dim_a() != psi34.dim_b() {
        return Err(Error::Dim(format!(
            "space-4 dims differ: {} vs {}",
            phi45.dim_a(),
            psi34.dim_b()
        )));
    }
    let c = phi23
        .coeffs()
        .dot(&linalg::conj_mat(psi34.coeffs()))
        .dot(phi45.coeffs());
    BipartiteVector::new(c)
}

/// A vector on an n-fold tensor product, flattened row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorState {
    dims: Vec<usize>,
    data: Array1<Cplx>,
}

impl TensorState {
    pub fn new(dims: Vec<usize>, data: Vec<Cplx>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Dim("factor dimensions must be positive".into()));
        }
        let total: usize = dims.iter().product();
        if data.len() != total {
            return Err(Error::Dim(format!(
                "data length {} does not match factor product {total}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Dim("entries must be finite".into()));
        }
        Ok(TensorState {
            dims,
            data: Array1::from_vec(data),
        })
    }

    /// The product state `v_1 (x) v_2 (x) ... (x) v_n`.
    pub fn from_factors(factors: &[HVector]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Dim("need at least one factor".into()));
        }
        let mut data = vec![Cplx::new(1.0, 0.0)];
        let mut dims = Vec::new();
        for f in factors {
            let mut next = Vec::with_capacity(data.len() * f.dim());
            for z in &data {
                for w in f.data() {
                    next.push(z * w);
                }
            }
            data = next;
            dims.push(f.dim());
        }
        TensorState::new(dims, data)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &Array1<Cplx> {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Applies the (unnormalized) rank-one projector `|bv><bv| (x) 1` to the
/// factor pair `(position, position + 1)` of `state`.
///
/// Returns the projected state and the outcome probability
/// `|projected|^2 / |state|^2`.  This is the measurement model every
/// composition law in this module is checked against.
pub fn measure_project(
    bv: &BipartiteVector,
    state: &TensorState,
    position: usize,
) -> Result<(TensorState, f64)> {
    let dims = state.dims();
    if position + 1 >= dims.len() {
        return Err(Error::Dim(format!(
            "factor pair ({position}, {}) out of range for {} factors",
            position + 1,
            dims.len()
        )));
    }
    if bv.dim_a() != dims[position] || bv.dim_b() != dims[position + 1] {
        return Err(Error::Dim(format!(
            "projector is {} x {} but the factors are {} x {}",
            bv.dim_a(),
            bv.dim_b(),
            dims[position],
            dims[position + 1]
        )));
    }
    let snorm = state.norm();
    if snorm == 0.0 {
        return Err(Error::ZeroVector("cannot project the zero state".into()));
    }
    let left: usize = dims[..position].iter().product();
    let ma = dims[position];
    let mb = dims[position + 1];
    let right: usize = dims[position + 2..].iter().product();
    let c = bv.coeffs();
    let mut out = vec![Cplx::new(0.0, 0.0); state.data.len()];
    for l in 0..left {
        for r in 0..right {
            let mut amp = Cplx::new(0.0, 0.0);
            for j in 0..ma {
                for k in 0..mb {
                    let idx = ((l * ma + j) * mb + k) * right + r;
                    amp += c[(j, k)].conj() * state.data[idx];
                }
            }
            for j in 0..ma {
                for k in 0..mb {
                    let idx = ((l * ma + j) * mb + k) * right + r;
                    out[idx] = c[(j, k)] * amp;
                }
            }
        }
    }
    let projected = TensorState {
        dims: dims.to_vec(),
        data: Array1::from_vec(out),
    };
    let p = (projected.norm() / snorm).powi(2);
    Ok((projected, p))
}
