//! Finite-dimensional corepresentations `sigma(v_j) = sum_i v_i (x) a_ij`.
//!
//! A corepresentation is stored as one matrix per basis element of the
//! algebra: `blocks[h][(i, j)]` is the coefficient of `b_h` in `a_ij`. These
//! are exactly the images of the dual basis under the dual representation,
//! which is why most identities below reduce to matrix algebra.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::group::GroupRep;
use crate::hopf::{Element, FiniteGroup, HopfStarAlgebra};
use crate::numkit::{
    herm_eig, kron, psd_sqrt_pair, stacked_null_space_scaled, ComplexMatrix, MorphismSpace, Tolerance, C0, C1,
};

/// A corepresentation of a Hopf *-algebra on `C^vdim`.
#[derive(Clone, Debug)]
pub struct Corepresentation {
    algebra: Arc<HopfStarAlgebra>,
    vdim: usize,
    blocks: Vec<ComplexMatrix>,
}

/// Residuals of the corepresentation laws.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CorepCheck {
    /// `Delta(a_ij) = sum_k a_ik (x) a_kj`.
    pub coassociativity: f64,
    /// `eps(a_ij) = delta_ij`.
    pub counit: f64,
    /// `S(a_ij) = a_ji^*`.
    pub unitarity: f64,
}

impl CorepCheck {
    pub fn max(&self) -> f64 {
        self.coassociativity.max(self.counit).max(self.unitarity)
    }
}

fn same_algebra(a: &Arc<HopfStarAlgebra>, b: &Arc<HopfStarAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Corepresentation {
    /// Build from per-basis-element coefficient matrices. Rejects `vdim = 0`.
    pub fn new(algebra: Arc<HopfStarAlgebra>, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficient matrices for an algebra of dimension {}",
                blocks.len(),
                algebra.dim()
            )));
        }
        let vdim = blocks[0].rows();
        if vdim == 0 {
            return Err(Error::InvalidInput("corepresentation on the zero space".into()));
        }
        if blocks.iter().any(|b| b.shape() != (vdim, vdim)) {
            return Err(Error::DimensionMismatch("coefficient matrices must be square of equal size".into()));
        }
        Ok(Corepresentation { algebra, vdim, blocks })
    }

    /// Build from sparse entries `(i, j, h, c)`: `a_ij` has coefficient `c` on `b_h`.
    pub fn from_entries(
        algebra: Arc<HopfStarAlgebra>,
        vdim: usize,
        entries: &[(usize, usize, usize, Complex64)],
    ) -> Result<Self> {
        if vdim == 0 {
            return Err(Error::InvalidInput("corepresentation on the zero space".into()));
        }
        let mut blocks = vec![ComplexMatrix::zeros(vdim, vdim); algebra.dim()];
        for &(i, j, h, c) in entries {
            if i >= vdim || j >= vdim || h >= algebra.dim() {
                return Err(Error::InvalidInput(format!("coefficient index ({i}, {j}, {h}) out of range")));
            }
            blocks[h][(i, j)] += c;
        }
        Self::new(algebra, blocks)
    }

    /// The trivial corepresentation `v -> v (x) 1`.
    pub fn trivial(algebra: Arc<HopfStarAlgebra>) -> Self {
        let blocks = algebra.unit().iter().map(|&u| ComplexMatrix::from_vec(1, 1, vec![u]).unwrap()).collect();
        Corepresentation { algebra, vdim: 1, blocks }
    }

    /// Corepresentation of the function algebra from a unitary group representation:
    /// `a_ij = sum_g U(g)_ij delta_g`.
    pub fn from_group_rep(algebra: Arc<HopfStarAlgebra>, group: &FiniteGroup, rep: &GroupRep) -> Result<Self> {
        crate::hopf::group::check_group_rep(group, rep, 1e-9)?;
        if algebra.dim() != group.order {
            return Err(Error::DimensionMismatch("algebra dimension differs from the group order".into()));
        }
        Self::new(algebra, rep.clone())
    }

    /// Corepresentation of a group algebra from a grading: `v_i -> v_i (x) g_i`.
    pub fn graded(algebra: Arc<HopfStarAlgebra>, grades: &[usize]) -> Result<Self> {
        let n = grades.len();
        let entries: Vec<_> = grades.iter().enumerate().map(|(i, &g)| (i, i, g, C1)).collect();
        Self::from_entries(algebra, n, &entries)
    }

    /// The comultiplication as a corepresentation on `H`, written in a basis
    /// orthonormal for `<a, b> = tau(a b^*)`.
    pub fn regular(algebra: Arc<HopfStarAlgebra>, tol: &Tolerance) -> Result<Self> {
        let n = algebra.dim();
        let haar = algebra.haar_trace(tol)?;
        let (_, inv_sqrt) = psd_sqrt_pair(&haar.gram, tol)?;
        // e_j = sum_p c_pj b_p with c = conj(G^{-1/2}) is orthonormal.
        let c = inv_sqrt.conj();
        let (sqrt, _) = psd_sqrt_pair(&haar.gram, tol)?;
        let c_inv = sqrt.conj();
        let mut gamma = vec![ComplexMatrix::zeros(n, n); n];
        for &(p, q, k, z) in algebra.comult_nonzeros() {
            gamma[k][(q, p)] += z;
        }
        let blocks = gamma.iter().map(|g| &(&c_inv * g) * &c).collect();
        Self::new(algebra, blocks)
    }

    pub fn algebra(&self) -> &Arc<HopfStarAlgebra> {
        &self.algebra
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    /// `blocks()[h][(i, j)]` is the coefficient of `b_h` in `a_ij`.
    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    /// The matrix coefficient `a_ij` as an algebra element.
    pub fn coefficient(&self, i: usize, j: usize) -> Element {
        self.blocks.iter().map(|b| b[(i, j)]).collect()
    }

    /// Residuals of the corepresentation laws and of unitarity.
    pub fn check(&self) -> CorepCheck {
        let h = &self.algebra;
        let n = h.dim();
        // Delta(a_ij) = sum_k a_ik (x) a_kj, read off on b_p (x) b_q: sum_h c^h_pq A_h = A_p A_q.
        let mut lhs = vec![ComplexMatrix::zeros(self.vdim, self.vdim); n * n];
        for &(i, p, q, c) in h.comult_nonzeros() {
            lhs[p * n + q].axpy(c, &self.blocks[i]);
        }
        let mut coassoc = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                coassoc = coassoc.max(lhs[p * n + q].max_abs_diff(&(&self.blocks[p] * &self.blocks[q])));
            }
        }
        let mut eps_sum = ComplexMatrix::zeros(self.vdim, self.vdim);
        for (b, &e) in self.blocks.iter().zip(h.counit_vector()) {
            eps_sum.axpy(e, b);
        }
        let counit = eps_sum.max_abs_diff(&ComplexMatrix::identity(self.vdim));
        let mut unitarity = 0.0f64;
        for p in 0..n {
            let mut s = ComplexMatrix::zeros(self.vdim, self.vdim);
            let mut st = ComplexMatrix::zeros(self.vdim, self.vdim);
            for q in 0..n {
                s.axpy(h.antipode_coeff(q, p), &self.blocks[q]);
                st.axpy(h.star_coeff(q, p), &self.blocks[q].adjoint());
            }
            unitarity = unitarity.max(s.max_abs_diff(&st));
        }
        CorepCheck { coassociativity: coassoc, counit, unitarity }
    }

    /// Fails unless the corepresentation laws and unitarity hold to `check_eps`.
    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        let c = self.check();
        if c.coassociativity.max(c.counit) > tol.check_eps {
            return Err(Error::NotCorepresentation(c.coassociativity.max(c.counit)));
        }
        if c.unitarity > tol.check_eps {
            return Err(Error::NotUnitary(c.unitarity));
        }
        Ok(())
    }

    /// Tensor product with coefficients `c_(ik)(jl) = a_ij b_kl`.
    pub fn tensor(&self, other: &Corepresentation) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.vdim * other.vdim;
        let mut blocks = vec![ComplexMatrix::zeros(n, n); self.algebra.dim()];
        for &(p, q, h, c) in self.algebra.mult_nonzeros() {
            if self.blocks[p].max_abs() == 0.0 || other.blocks[q].max_abs() == 0.0 {
                continue;
            }
            blocks[h].axpy(c, &kron(&self.blocks[p], &other.blocks[q]));
        }
        Ok(Corepresentation { algebra: self.algebra.clone(), vdim: n, blocks })
    }

    /// Conjugate corepresentation with coefficients `S(a_ji)` on the dual basis.
    pub fn conjugate(&self) -> Self {
        let n = self.algebra.dim();
        let mut blocks = vec![ComplexMatrix::zeros(self.vdim, self.vdim); n];
        for (p, bp) in self.blocks.iter().enumerate() {
            let t = bp.transpose();
            for (h, out) in blocks.iter_mut().enumerate() {
                let s = self.algebra.antipode_coeff(p, h);
                if s != C0 {
                    out.axpy(s, &t);
                }
            }
        }
        Corepresentation { algebra: self.algebra.clone(), vdim: self.vdim, blocks }
    }

    /// Restriction `V^* sigma V` along an isometry whose range is invariant.
    pub fn compress(&self, v: &ComplexMatrix) -> Result<Self> {
        if v.rows() != self.vdim {
            return Err(Error::DimensionMismatch("isometry does not match the space".into()));
        }
        let vt = v.adjoint();
        let blocks = self.blocks.iter().map(|b| &(&vt * b) * v).collect();
        Corepresentation::new(self.algebra.clone(), blocks)
    }

    /// Whether `t` intertwines `self` into `target`: `t a_h = b_h t`.
    pub fn intertwining_residual(&self, target: &Corepresentation, t: &ComplexMatrix) -> f64 {
        self.blocks.iter().zip(&target.blocks).map(|(a, b)| (&(t * a) - &(b * t)).max_abs()).fold(0.0, f64::max)
    }
}

/// Intertwiners `T : r -> s` with `(T (x) id) r = s T`, orthonormal for `Tr(B^* A)`.
pub fn hom(r: &Corepresentation, s: &Corepresentation, tol: &Tolerance) -> Result<MorphismSpace> {
    if !same_algebra(&r.algebra, &s.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let (nr, ns) = (r.vdim, s.vdim);
    let id_r = ComplexMatrix::identity(nr);
    let id_s = ComplexMatrix::identity(ns);
    let blocks: Vec<ComplexMatrix> = r
        .blocks
        .iter()
        .zip(&s.blocks)
        .filter(|(a, b)| a.max_abs() > 0.0 || b.max_abs() > 0.0)
        .map(|(a, b)| &kron(&id_s, &a.transpose()) - &kron(b, &id_r))
        .collect();
    let scale = r
        .blocks
        .iter()
        .zip(&s.blocks)
        .map(|(a, b)| ns as f64 * a.frobenius_norm().powi(2) + nr as f64 * b.frobenius_norm().powi(2))
        .sum::<f64>()
        .sqrt();
    let ns_mat = stacked_null_space_scaled(&blocks, nr * ns, scale, tol)?;
    let basis = (0..ns_mat.cols()).map(|k| ComplexMatrix::column(ns_mat.col_vec(k)).reshape(ns, nr).unwrap()).collect();
    Ok(MorphismSpace { rows: ns, cols: nr, basis })
}

/// Direct sum with the inclusion isometries; `sum V_i V_i^* = 1` exactly.
pub fn direct_sum(parts: &[Corepresentation]) -> Result<(Corepresentation, Vec<ComplexMatrix>)> {
    let first = parts.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
    if parts.iter().any(|p| !same_algebra(&p.algebra, &first.algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let n: usize = parts.iter().map(|p| p.vdim).sum();
    let blocks = (0..first.algebra.dim())
        .map(|h| ComplexMatrix::block_diag(&parts.iter().map(|p| p.blocks[h].clone()).collect::<Vec<_>>()))
        .collect();
    let mut isos = Vec::new();
    let mut off = 0;
    for p in parts {
        let mut v = ComplexMatrix::zeros(n, p.vdim);
        for i in 0..p.vdim {
            v[(off + i, i)] = C1;
        }
        off += p.vdim;
        isos.push(v);
    }
    Ok((Corepresentation { algebra: first.algebra.clone(), vdim: n, blocks }, isos))
}

/// One isotypic component: an irreducible and isometries `V_k : irrep -> s`
/// with `V_k^* V_l = delta_kl`.
#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub irrep: Corepresentation,
    pub isometries: Vec<ComplexMatrix>,
}

impl IsotypicComponent {
    pub fn multiplicity(&self) -> usize {
        self.isometries.len()
    }

    pub fn central_projection(&self) -> ComplexMatrix {
        let n = self.isometries[0].rows();
        let mut p = ComplexMatrix::zeros(n, n);
        for v in &self.isometries {
            p += &(v * &v.adjoint());
        }
        p
    }
}

/// Decomposition into isotypic components.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<IsotypicComponent>,
}

impl Decomposition {
    /// `(irrep dimension, multiplicity)` per component.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.irrep.vdim(), c.multiplicity())).collect()
    }

    pub fn minimal_projections(&self) -> Vec<ComplexMatrix> {
        self.components.iter().flat_map(|c| c.isometries.iter().map(|v| v * &v.adjoint())).collect()
    }
}

const GENERIC_SEED: u64 = 0x7e57_ca75;

/// Split `s` into irreducibles.
///
/// The minimal projections are the spectral projections of a generic
/// Hermitian element of `End(s)`, drawn with a fixed seed so the result is
/// deterministic. A draw whose eigenspaces are not minimal invariant
/// subspaces is rejected and redrawn. Components are ordered by irreducible
/// dimension, then by the order in which they appear in the spectrum.
pub fn decompose(s: &Corepresentation, tol: &Tolerance) -> Result<Decomposition> {
    let end = hom(s, s, tol)?;
    let n = s.vdim;
    if end.dim() == 1 {
        return Ok(Decomposition {
            components: vec![IsotypicComponent { irrep: s.clone(), isometries: vec![ComplexMatrix::identity(n)] }],
        });
    }
    for attempt in 0..16u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED + attempt);
        let mut h = ComplexMatrix::zeros(n, n);
        for e in &end.basis {
            let w = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h.axpy(w, e);
        }
        let h = &h + &h.adjoint();
        let eig = herm_eig(&h, tol)?;
        let clusters: Vec<ComplexMatrix> = (0..eig.clusters.len()).map(|c| eig.cluster_vectors(c)).collect();
        if let Some(d) = classify_clusters(s, &end, clusters, tol)? {
            return Ok(d);
        }
    }
    Err(Error::NoSolution("could not find a generic element of the commutant".into()))
}

fn classify_clusters(
    s: &Corepresentation,
    end: &MorphismSpace,
    clusters: Vec<ComplexMatrix>,
    tol: &Tolerance,
) -> Result<Option<Decomposition>> {
    let eps = tol.check_eps.sqrt();
    for v in &clusters {
        let m = v.cols();
        let p = v * &v.adjoint();
        if end.residual(&p) > eps {
            return Ok(None);
        }
        let vt = v.adjoint();
        for e in &end.basis {
            let c = &(&vt * e) * v;
            let avg = c.trace() / m as f64;
            if c.max_abs_diff(&ComplexMatrix::identity(m).scale(avg)) > eps {
                return Ok(None);
            }
        }
    }
    // Group equivalent minimal projections and align each to its class representative.
    let mut class_of: Vec<Option<usize>> = vec![None; clusters.len()];
    let mut comps: Vec<(usize, Vec<ComplexMatrix>)> = Vec::new();
    for j in 0..clusters.len() {
        let mut placed = false;
        for (ci, (rep_idx, isos)) in comps.iter_mut().enumerate() {
            let vi = &clusters[*rep_idx];
            let vj = &clusters[j];
            if vi.cols() != vj.cols() {
                continue;
            }
            let vjt = vj.adjoint();
            let ts: Vec<ComplexMatrix> = end.basis.iter().map(|e| &(&vjt * e) * vi).collect();
            let weight: f64 = ts.iter().map(|t| t.frobenius_norm().powi(2)).sum();
            if weight > 0.5 {
                let t = ts.iter().max_by(|a, b| a.frobenius_norm().total_cmp(&b.frobenius_norm())).unwrap();
                let c = (t.frobenius_norm().powi(2) / vi.cols() as f64).sqrt();
                isos.push((vj * t).scale_re(1.0 / c));
                class_of[j] = Some(ci);
                placed = true;
                break;
            }
        }
        if !placed {
            class_of[j] = Some(comps.len());
            comps.push((j, vec![clusters[j].clone()]));
        }
    }
    let mut components = Vec::new();
    for (rep_idx, isos) in comps {
        let irrep = s.compress(&clusters[rep_idx])?;
        components.push(IsotypicComponent { irrep, isometries: isos });
    }
    components.sort_by_key(|c| c.irrep.vdim());
    let total: usize = components.iter().map(|c| c.irrep.vdim() * c.multiplicity()).sum();
    if total != s.vdim {
        return Ok(None);
    }
    Ok(Some(Decomposition { components }))
}

/// A unitary intertwiner `a -> b` between equivalent irreducibles, if any.
///
/// Equivalence requires a one-dimensional intertwiner space whose basis
/// element, rescaled, is unitary.
pub fn equivalence(a: &Corepresentation, b: &Corepresentation, tol: &Tolerance) -> Result<Option<ComplexMatrix>> {
    if a.vdim != b.vdim {
        return Ok(None);
    }
    let h = hom(a, b, tol)?;
    if h.dim() != 1 {
        return Ok(None);
    }
    let u = h.basis[0].scale_re((a.vdim as f64).sqrt());
    let defect = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(a.vdim));
    if defect > tol.check_eps.sqrt() {
        return Ok(None);
    }
    Ok(Some(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::group::{character, character_inner, cyclic_characters, s3_irreps};
    use proptest::prelude::*;

    fn fun(name: &str) -> (Arc<HopfStarAlgebra>, FiniteGroup) {
        let g = FiniteGroup::builtin(name).unwrap();
        (Arc::new(HopfStarAlgebra::fun_algebra(&g, name)), g)
    }

    fn cg(name: &str) -> (Arc<HopfStarAlgebra>, FiniteGroup) {
        let g = FiniteGroup::builtin(name).unwrap();
        (Arc::new(HopfStarAlgebra::group_algebra(&g, name)), g)
    }

    fn group_irreps(name: &str) -> Vec<GroupRep> {
        match name {
            "S3" => s3_irreps().to_vec(),
            _ => cyclic_characters(FiniteGroup::builtin(name).unwrap().order),
        }
    }

    fn kron_rep(a: &GroupRep, b: &GroupRep) -> GroupRep {
        a.iter().zip(b).map(|(x, y)| kron(x, y)).collect()
    }

    #[test]
    fn builtin_coreps_are_unitary() {
        let tol = Tolerance::default();
        for name in ["Z2", "Z3", "Z4", "S3"] {
            let (h, g) = fun(name);
            for r in group_irreps(name) {
                Corepresentation::from_group_rep(h.clone(), &g, &r).unwrap().validate(&tol).unwrap();
            }
            Corepresentation::regular(h.clone(), &tol).unwrap().validate(&tol).unwrap();
            let (c, g) = cg(name);
            for x in 0..g.order {
                Corepresentation::graded(c.clone(), &[x]).unwrap().validate(&tol).unwrap();
            }
            Corepresentation::regular(c, &tol).unwrap().validate(&tol).unwrap();
        }
    }

    #[test]
    fn tensor_of_z2_characters() {
        let (h, _) = cg("Z2");
        let chi1 = Corepresentation::graded(h.clone(), &[1]).unwrap();
        let t = chi1.tensor(&chi1).unwrap();
        assert_eq!(t.coefficient(0, 0), h.basis(0));
    }

    #[test]
    fn conjugate_of_z3_character_is_its_inverse() {
        let (h, _) = cg("Z3");
        let chi = Corepresentation::graded(h.clone(), &[1]).unwrap();
        assert_eq!(chi.conjugate().coefficient(0, 0), h.basis(2));
    }

    #[test]
    fn hom_dimensions_match_characters_for_fun_s3_and_fun_z4() {
        let tol = Tolerance::default();
        for name in ["S3", "Z4"] {
            let (h, g) = fun(name);
            let irreps = group_irreps(name);
            // All irreducibles and all pairwise tensor products.
            let mut reps: Vec<GroupRep> = irreps.clone();
            for a in &irreps {
                for b in &irreps {
                    reps.push(kron_rep(a, b));
                }
            }
            for a in &reps {
                for b in &reps {
                    let ra = Corepresentation::from_group_rep(h.clone(), &g, a).unwrap();
                    let rb = Corepresentation::from_group_rep(h.clone(), &g, b).unwrap();
                    let expect = character_inner(&character(a), &character(b)).re.round() as usize;
                    assert_eq!(
                        hom(&ra, &rb, &tol).unwrap().dim(),
                        expect,
                        "{name} {:?} {:?}",
                        character(a),
                        character(b)
                    );
                }
            }
        }
    }

    #[test]
    fn hom_dimensions_match_gradings_for_group_algebras() {
        let tol = Tolerance::default();
        for name in ["S3", "Z4"] {
            let (h, g) = cg(name);
            let grades = [vec![0, 1], vec![1, 1, 2], vec![g.order - 1, 0, 1, 1]];
            for a in &grades {
                for b in &grades {
                    let ra = Corepresentation::graded(h.clone(), a).unwrap();
                    let rb = Corepresentation::graded(h.clone(), b).unwrap();
                    let expect: usize = (0..g.order)
                        .map(|x| a.iter().filter(|&&y| y == x).count() * b.iter().filter(|&&y| y == x).count())
                        .sum();
                    assert_eq!(hom(&ra, &rb, &tol).unwrap().dim(), expect);
                }
            }
        }
    }

    #[test]
    fn hom_elements_intertwine() {
        let tol = Tolerance::default();
        let (h, g) = fun("S3");
        let std = Corepresentation::from_group_rep(h.clone(), &g, &s3_irreps()[2]).unwrap();
        let ss = std.tensor(&std).unwrap();
        let sp = hom(&ss, &ss, &tol).unwrap();
        assert_eq!(sp.dim(), 3);
        for t in &sp.basis {
            assert!(ss.intertwining_residual(&ss, t) < 1e-10);
        }
    }

    #[test]
    fn hom_rejects_different_algebras() {
        let (a, _) = fun("S3");
        let (b, _) = cg("S3");
        let r = hom(&Corepresentation::trivial(a), &Corepresentation::trivial(b), &Tolerance::default());
        assert!(matches!(r, Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn zero_dimensional_input_is_rejected() {
        let (a, _) = fun("Z2");
        assert!(Corepresentation::from_entries(a, 0, &[]).is_err());
    }

    #[test]
    fn regular_corep_of_fun_s3_splits_by_irrep_dimension() {
        let tol = Tolerance::default();
        let (h, _) = fun("S3");
        let reg = Corepresentation::regular(h, &tol).unwrap();
        let d = decompose(&reg, &tol).unwrap();
        let mut shape = d.shape();
        shape.sort();
        assert_eq!(shape, vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn regular_corep_of_cg_s3_splits_into_group_elements() {
        let tol = Tolerance::default();
        let (h, _) = cg("S3");
        let reg = Corepresentation::regular(h, &tol).unwrap();
        let d = decompose(&reg, &tol).unwrap();
        assert_eq!(d.shape(), vec![(1, 1); 6]);
    }

    #[test]
    fn decomposition_isometries_are_consistent() {
        let tol = Tolerance::default();
        let (h, _) = fun("S3");
        let reg = Corepresentation::regular(h, &tol).unwrap();
        let d = decompose(&reg, &tol).unwrap();
        let mut total = ComplexMatrix::zeros(6, 6);
        for c in &d.components {
            c.irrep.validate(&tol).unwrap();
            for (k, v) in c.isometries.iter().enumerate() {
                assert!(c.irrep.intertwining_residual(&reg, v) < 1e-9);
                for (l, w) in c.isometries.iter().enumerate() {
                    let expect = if k == l {
                        ComplexMatrix::identity(v.cols())
                    } else {
                        ComplexMatrix::zeros(v.cols(), v.cols())
                    };
                    assert!((&v.adjoint() * w).max_abs_diff(&expect) < 1e-9);
                }
            }
            total += &c.central_projection();
        }
        assert!(total.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-9);
    }

    #[test]
    fn direct_sum_isometries_resolve_identity() {
        let (h, g) = fun("S3");
        let [t, s, st] = s3_irreps();
        let parts: Vec<_> =
            [t, s, st].iter().map(|r| Corepresentation::from_group_rep(h.clone(), &g, r).unwrap()).collect();
        let (sum, isos) = direct_sum(&parts).unwrap();
        let mut total = ComplexMatrix::zeros(sum.vdim(), sum.vdim());
        for v in &isos {
            total += &(v * &v.adjoint());
        }
        assert_eq!(total, ComplexMatrix::identity(4));
    }

    #[test]
    fn equivalence_detects_conjugated_copies() {
        let tol = Tolerance::default();
        let (h, g) = fun("S3");
        let std = Corepresentation::from_group_rep(h.clone(), &g, &s3_irreps()[2]).unwrap();
        let u = equivalence(&std, &std.conjugate(), &tol).unwrap().unwrap();
        assert!(std.intertwining_residual(&std.conjugate(), &u) < 1e-10);
        let sign = Corepresentation::from_group_rep(h, &g, &s3_irreps()[1]).unwrap();
        let triv = Corepresentation::trivial(sign.algebra().clone());
        assert!(equivalence(&sign, &triv, &tol).unwrap().is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tensor_and_conjugate_preserve_the_laws(a in 0usize..3, b in 0usize..3, zi in 0usize..4) {
            let (h, g) = fun("S3");
            let irr = s3_irreps();
            let ra = Corepresentation::from_group_rep(h.clone(), &g, &irr[a]).unwrap();
            let rb = Corepresentation::from_group_rep(h, &g, &irr[b]).unwrap();
            let t = ra.tensor(&rb).unwrap();
            prop_assert!(t.check().max() < 1e-10);
            prop_assert!(t.conjugate().check().max() < 1e-10);
            prop_assert!(ra.conjugate().conjugate().blocks().iter().zip(ra.blocks()).all(|(x, y)| x.max_abs_diff(y) < 1e-12));
            let (c, _) = cg("Z4");
            let gr = Corepresentation::graded(c, &[zi, (zi + 1) % 4]).unwrap();
            prop_assert!(gr.tensor(&gr.conjugate()).unwrap().check().max() < 1e-12);
        }

        #[test]
        fn hom_is_closed_under_composition_and_adjoint(a in 0usize..3, b in 0usize..3) {
            let tol = Tolerance::default();
            let (h, g) = fun("S3");
            let irr = s3_irreps();
            let x = Corepresentation::from_group_rep(h.clone(), &g, &irr[a]).unwrap();
            let y = Corepresentation::from_group_rep(h, &g, &irr[b]).unwrap();
            let xy = x.tensor(&y).unwrap();
            let yx = y.tensor(&x).unwrap();
            let f = hom(&xy, &yx, &tol).unwrap();
            let back = hom(&yx, &xy, &tol).unwrap();
            let end = hom(&xy, &xy, &tol).unwrap();
            for s in &f.basis {
                prop_assert!(back.residual(&s.adjoint()) < 1e-9);
                for t in &back.basis {
                    prop_assert!(end.residual(&(t * s)) < 1e-9);
                }
            }
        }
    }
}
