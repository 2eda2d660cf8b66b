//! The maps `f(rho, phi, psi)(K) : End(rho phi) -> End(rho psi)`, the projections
//! `g_m` and the shift operators `R_l^[m]`.
//!
//! `f(K)(S) = sqrt(d(psi)/d(phi)) (1_(rho psi) x R_psi^*)(1_rho x K x 1_psi)(S x 1_(phibar psi))(1_rho x Rbar_phi x 1_psi)`
//! with the standard pairs of words built letter by letter.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{Category, Word};
use crate::error::{Error, Result};
use crate::numkit::{kron, random_element, rank, ComplexMatrix};
use crate::report::CheckReport;
use crate::tower::{jones_projection, Sigma};

fn require_cap(cat: &Category, n: usize) -> Result<()> {
    if n > cat.cap() {
        return Err(Error::CapExceeded { dim: n, cap: cat.cap() });
    }
    Ok(())
}

fn eye(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n)
}

/// `f(rho, phi, psi)(K)` with its two fixed outer factors.
#[derive(Clone, Debug)]
pub struct FMap {
    pub rho: Word,
    pub phi: Word,
    pub psi: Word,
    pub k: ComplexMatrix,
    /// `sqrt(d(psi)/d(phi)) (1 x R_psi^*)(1 x K x 1)`.
    left: ComplexMatrix,
    /// `1_rho x Rbar_phi x 1_psi`.
    right: ComplexMatrix,
    /// `dim phibar psi`.
    pad: usize,
}

/// Build `f(rho, phi, psi)(K)` for `K` in `hom(phi phibar, psi psibar)`.
pub fn f_map(cat: &Category, rho: &Word, phi: &Word, psi: &Word, k: &ComplexMatrix) -> Result<FMap> {
    let (nr, nf, ns) = (cat.vdim(rho), cat.vdim(phi), cat.vdim(psi));
    if k.shape() != (ns * ns, nf * nf) {
        return Err(Error::DimensionMismatch(format!(
            "K must be {}x{}, got {}x{}",
            ns * ns,
            nf * nf,
            k.rows(),
            k.cols()
        )));
    }
    require_cap(cat, nr * nf * nf * ns)?;
    require_cap(cat, nr * ns * ns * ns)?;
    let pf = cat.standard_pair(phi)?;
    let ps = cat.standard_pair(psi)?;
    let c = (ps.dim() / pf.dim()).sqrt();
    let cap = kron(&eye(nr * ns), &ps.r_vector().adjoint());
    let mid = kron(&eye(nr), &kron(k, &eye(ns)));
    let left = (&cap * &mid).scale_re(c);
    let right = kron(&eye(nr), &kron(&pf.rbar_vector(), &eye(ns)));
    Ok(FMap { rho: rho.clone(), phi: phi.clone(), psi: psi.clone(), k: k.clone(), left, right, pad: nf * ns })
}

impl FMap {
    /// `f(K)(S)` for `S` in `End(rho phi)`.
    pub fn apply(&self, s: &ComplexMatrix) -> ComplexMatrix {
        &self.left * &(&kron(s, &eye(self.pad)) * &self.right)
    }

    /// The map in the orthonormal bases of `End(rho phi)` and `End(rho psi)`.
    pub fn matrix_rep(&self, cat: &Category) -> Result<ComplexMatrix> {
        let src = cat.end_basis(&self.rho.concat(&self.phi))?;
        let dst = cat.end_basis(&self.rho.concat(&self.psi))?;
        let mut m = ComplexMatrix::zeros(dst.dim(), src.dim());
        for (j, s) in src.basis.iter().enumerate() {
            for (i, c) in dst.coordinates(&self.apply(s)).into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }
}

fn max_diff(pairs: impl IntoIterator<Item = (ComplexMatrix, ComplexMatrix)>) -> f64 {
    pairs.into_iter().map(|(a, b)| a.max_abs_diff(&b)).fold(0.0, f64::max)
}

/// Properties (a) to (f) of the maps `f(rho)`.
///
/// `S` and `T` run over full bases; `K` and `L` are seeded random elements of
/// their hom-spaces. (b) is the rank of `K -> f(K)` on a basis of `K`, together
/// with `tr(f(K)(1)) = sqrt(d(psi)/d(phi)) Rbar_psi^* K Rbar_phi / d(psi)`.
/// (e) uses `1` in `End(phi phibar)`. (f) splits `rho` after its first letter.
pub fn verify_f_properties(
    cat: &Category,
    rho: &Word,
    phi: &Word,
    psi: &Word,
    tau: &Word,
    seed: u64,
) -> Result<CheckReport> {
    let tol = cat.tol();
    let eps = tol.check_eps;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rphi, rpsi) = (rho.concat(phi), rho.concat(psi));
    let hom_k = cat.hom_words(&phi.concat(&cat.conj_word(phi)), &psi.concat(&cat.conj_word(psi)))?;
    let hom_l = cat.hom_words(&psi.concat(&cat.conj_word(psi)), &tau.concat(&cat.conj_word(tau)))?;
    let k = random_element(&hom_k, &mut rng);
    let l = random_element(&hom_l, &mut rng);
    let fk = f_map(cat, rho, phi, psi, &k)?;
    let s_basis = cat.end_basis(&rphi)?.basis;
    let (nphi, npsi) = (cat.vdim(phi), cat.vdim(psi));
    let mut r = CheckReport::new();

    let d_basis = cat.end_basis(rho)?.basis;
    let mut lin: f64 = 0.0;
    for a in &d_basis {
        let (af, ap) = (kron(a, &eye(nphi)), kron(a, &eye(npsi)));
        for s in &s_basis {
            lin = lin.max(fk.apply(&(&af * s)).max_abs_diff(&(&ap * &fk.apply(s))));
            lin = lin.max(fk.apply(&(s * &af)).max_abs_diff(&(&fk.apply(s) * &ap)));
        }
    }
    r.residual("(a) f(K) is End(rho)-bilinear", lin, eps);

    let mut cols = Vec::new();
    for kb in &hom_k.basis {
        let f = f_map(cat, rho, phi, psi, kb)?;
        let mut v = Vec::new();
        for s in &s_basis {
            v.extend_from_slice(f.apply(s).data());
        }
        cols.push(v);
    }
    let lin_map = ComplexMatrix::from_fn(cols.first().map_or(0, |c| c.len()), cols.len(), |i, j| cols[j][i]);
    r.flag("(b) K -> f(K) is injective", rank(&lin_map, tol) == hom_k.dim());
    let pf = cat.standard_pair(phi)?;
    let ps = cat.standard_pair(psi)?;
    let pairing = (&(&ps.rbar_vector().adjoint() * &k) * &pf.rbar_vector())[(0, 0)];
    let expected = pairing * ((ps.dim() / pf.dim()).sqrt() / ps.dim());
    let got = cat.trace(&rpsi, &fk.apply(&eye(cat.vdim(&rphi))))?;
    r.residual("(b) trace pairing of f(K)(1)", (got - expected).norm(), eps);

    let fl = f_map(cat, rho, psi, tau, &l)?;
    let flk = f_map(cat, rho, phi, tau, &(&l * &k))?;
    let mult = max_diff(s_basis.iter().map(|s| (flk.apply(s), fl.apply(&fk.apply(s)))));
    r.residual("(c) f(L K) = f(L) f(K)", mult, eps);

    let fks = f_map(cat, rho, psi, phi, &k.adjoint())?;
    let t_basis = cat.end_basis(&rpsi)?.basis;
    let images: Vec<ComplexMatrix> = s_basis.iter().map(|s| fk.apply(s)).collect();
    let back: Vec<ComplexMatrix> = t_basis.iter().map(|t| fks.apply(t)).collect();
    let mut adj: f64 = 0.0;
    for (s, fs) in s_basis.iter().zip(&images) {
        for (t, ft) in t_basis.iter().zip(&back) {
            let lhs = cat.trace(&rpsi, &(&t.adjoint() * fs))?;
            let rhs = cat.trace(&rphi, &(&ft.adjoint() * s))?;
            adj = adj.max((lhs - rhs).norm());
        }
    }
    r.residual("(d) <f(K)S, T> = <S, f(K^*)T>", adj, eps);

    let one = eye(nphi * nphi);
    let fid = f_map(cat, rho, phi, phi, &one)?;
    r.residual("(e) f(1) = id", max_diff(s_basis.iter().map(|s| (fid.apply(s), s.clone()))), eps);

    if let Some((&first, rest)) = rho.0.split_first() {
        let rho2 = Word(rest.to_vec());
        let n1 = cat.vdim(&Word::letter(first));
        let f2 = f_map(cat, &rho2, phi, psi, &k)?;
        let inner = cat.end_basis(&rho2.concat(phi))?.basis;
        let res = max_diff(inner.iter().map(|s| (fk.apply(&kron(&eye(n1), s)), kron(&eye(n1), &f2.apply(s)))));
        r.residual("(f) f(rho1 rho2)(K)(1 x S) = 1 x f(rho2)(K)(S)", res, eps);
    }
    Ok(r)
}

/// `g_m = d^-m 1_rho x Rbar_sigma(m) Rbar_sigma(m)^*` in `End(rho (sigma sbar)^m)`.
pub fn g_projection(cat: &Category, rho: &Word, m: usize) -> Result<ComplexMatrix> {
    let sigma = Sigma::of(cat);
    let sm = sigma.alternating(m);
    let nr = cat.vdim(rho);
    let ns = cat.vdim(&sm);
    require_cap(cat, nr * ns * ns)?;
    let p = cat.standard_pair(&sm)?;
    let v = p.rbar_vector();
    Ok(kron(&eye(nr), &(&v * &v.adjoint()).scale_re(1.0 / p.dim())))
}

/// `1_rho x f_k` realized in `End(rho sigma(2m))`.
fn jones_in(cat: &Category, nr: usize, k: usize, total: usize) -> Result<ComplexMatrix> {
    let f = jones_projection(cat, k)?;
    Ok(kron(&kron(&eye(nr), &f), &eye(total / (nr * f.rows()))))
}

/// Projection checks of `g_m`, commutation with `End(rho) x 1`, the factorization
/// `g_m = d^((m-1)m) f_(m-1,0) f_(m,1) ... f_(2m-2,m-1)` with `f_(a,b) = f_a f_(a-1) ... f_b`,
/// and, when `with_factorization` is set, `f(K x L)(S g_m T) = f(K)(S) g_m f(L)(T)`
/// on full bases of `End(rho sigma(m))` with seeded random `K, L`.
pub fn verify_gm_factorization(
    cat: &Category,
    rho: &Word,
    m: usize,
    with_factorization: bool,
    seed: u64,
) -> Result<CheckReport> {
    let eps = cat.tol().check_eps;
    let sigma = Sigma::of(cat);
    let g = g_projection(cat, rho, m)?;
    let n = g.rows();
    let nr = cat.vdim(rho);
    let d = cat.standard_pair(&Word::letter(sigma.s))?.dim();
    let mut r = CheckReport::new();
    r.residual(format!("g{m} is idempotent"), (&g * &g).max_abs_diff(&g), eps);
    r.residual(format!("g{m} is self-adjoint"), g.adjoint().max_abs_diff(&g), eps);
    let mut comm: f64 = 0.0;
    for a in &cat.end_basis(rho)?.basis {
        let a1 = kron(a, &eye(n / nr));
        comm = comm.max((&a1 * &g).max_abs_diff(&(&g * &a1)));
    }
    r.residual(format!("g{m} commutes with End(rho) x 1"), comm, eps);

    let mut prod = eye(n).scale_re(d.powi(((m - 1) * m) as i32));
    for k in 0..m {
        for j in (k..=m - 1 + k).rev() {
            prod = &prod * &jones_in(cat, nr, j, n)?;
        }
    }
    r.residual(
        format!("g{m} = d^{} f_({},0) ... f_({},{})", (m - 1) * m, m - 1, 2 * m - 2, m - 1),
        prod.max_abs_diff(&g),
        eps,
    );

    if with_factorization {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = sigma.alternating(m);
        let ssb = sigma.alternating(2 * m);
        let end_k = cat.end_basis(&ssb)?;
        let k = random_element(&end_k, &mut rng);
        let l = random_element(&end_k, &mut rng);
        let fkl = f_map(cat, rho, &ssb, &ssb, &kron(&k, &l))?;
        let fk = f_map(cat, rho, &sm, &sm, &k)?;
        let fl = f_map(cat, rho, &sm, &sm, &l)?;
        let basis = cat.end_basis(&rho.concat(&sm))?.basis;
        let pad = n / basis.first().map_or(1, |b| b.rows());
        let up = |x: &ComplexMatrix| kron(x, &eye(pad));
        let images: Vec<(ComplexMatrix, ComplexMatrix)> =
            basis.iter().map(|s| (up(&fk.apply(s)), up(&fl.apply(s)))).collect();
        let mut worst: f64 = 0.0;
        for (s, (cs, _)) in basis.iter().zip(&images) {
            let sg = &up(s) * &g;
            let cg = cs * &g;
            for (t, (_, dt)) in basis.iter().zip(&images) {
                let lhs = fkl.apply(&(&sg * &up(t)));
                worst = worst.max(lhs.max_abs_diff(&(&cg * dt)));
            }
        }
        r.residual(format!("f(K x L)(S g{m} T) = f(K)(S) g{m} f(L)(T)"), worst, eps);
    }
    Ok(r)
}

/// The shift operator `R_l^[m]` in `(rho sigma(m), rho sigma(m+2))`: `Rbar_sigma` inserted
/// after `rho sigma(l)` for even `l`, `R_sigma` for odd `l`.
pub fn shift(cat: &Category, rho: &Word, l: usize, m: usize) -> Result<ComplexMatrix> {
    if l > m {
        return Err(Error::InvalidInput(format!("shift index {l} exceeds level {m}")));
    }
    let sigma = Sigma::of(cat);
    let nr = cat.vdim(rho);
    let n = cat.vdim(&Word::letter(sigma.s));
    require_cap(cat, nr * n.pow(m as u32 + 2))?;
    let p = cat.standard_pair(&Word::letter(sigma.s))?;
    let cup = if l.is_multiple_of(2) { p.rbar_vector() } else { p.r_vector() };
    Ok(kron(&eye(nr * n.pow(l as u32)), &kron(&cup, &eye(n.pow((m - l) as u32)))))
}

/// `R_(k +- 1)^*[m+2] R_k^[m] = 1` for every realizable `k` and `m <= m_max`.
pub fn check_shift_identity(cat: &Category, rho: &Word, m_max: usize) -> Result<CheckReport> {
    let eps = cat.tol().check_eps;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for m in 0..=m_max {
        for k in 0..=m {
            let rk = shift(cat, rho, k, m)?;
            let one = eye(rk.cols());
            for j in [k.checked_sub(1), Some(k + 1)].into_iter().flatten() {
                if j > m {
                    continue;
                }
                let rj = shift(cat, rho, j, m)?;
                worst = worst.max((&rj.adjoint() * &rk).max_abs_diff(&one));
                count += 1;
            }
        }
    }
    let mut r = CheckReport::new();
    r.flag("shift identity has cases", count > 0);
    r.residual("R_(k+-1)^* R_k = 1", worst, eps);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::tests::{regular_cg, s3_std};

    #[test]
    fn identity_kernel_gives_identity_map() {
        let cat = s3_std();
        let sigma = Sigma::of(&cat);
        let s = Word::letter(sigma.s);
        let f = f_map(&cat, &Word::empty(), &s, &s, &eye(4)).unwrap();
        let m = f.matrix_rep(&cat).unwrap();
        assert!(m.max_abs_diff(&eye(m.rows())) < 1e-10);
    }

    #[test]
    fn s3_properties_hold_on_full_bases() {
        let cat = s3_std();
        let sigma = Sigma::of(&cat);
        let ss = sigma.alternating(2);
        let r = verify_f_properties(&cat, &ss, &ss, &ss, &ss, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let s = Word::letter(sigma.s);
        let r = verify_f_properties(&cat, &ss, &ss, &s, &ss, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let cat = s3_std();
        let s = Word::letter(Sigma::of(&cat).s);
        assert!(matches!(f_map(&cat, &Word::empty(), &s, &s, &eye(3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn g1_is_the_first_jones_projection() {
        let cat = s3_std();
        let g = g_projection(&cat, &Word::empty(), 1).unwrap();
        assert!(g.max_abs_diff(&jones_projection(&cat, 0).unwrap()) < 1e-12);
    }

    #[test]
    fn factorization_at_level_one() {
        let cat = s3_std();
        let sigma = Sigma::of(&cat);
        let r = verify_gm_factorization(&cat, &sigma.alternating(2), 1, true, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let r = verify_gm_factorization(&cat, &Word::letter(sigma.sb), 1, true, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn g2_factorizes_into_jones_projections() {
        let cat = regular_cg("Z2");
        let r = verify_gm_factorization(&cat, &Word::empty(), 2, false, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let r = verify_gm_factorization(&s3_std(), &Word::empty(), 3, false, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn shift_identity() {
        let cat = s3_std();
        let sigma = Sigma::of(&cat);
        let r = check_shift_identity(&cat, &Word::letter(sigma.sb), 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(shift(&cat, &Word::empty(), 2, 1).is_err());
    }
}
