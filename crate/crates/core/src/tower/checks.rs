//! Concrete checks on realized tower algebras.

use super::{Sigma, Tower};
use crate::catcore::{Category, Word};
use crate::error::{Error, Result};
use crate::numkit::{kron, orthonormal_span, ComplexMatrix};
use crate::report::CheckReport;

/// `d^-1 1_rho (x) v v^*` for a cup vector `v` (a column in the last two factors).
pub fn cup_projection(n_rho: usize, cup: &ComplexMatrix, d: f64) -> ComplexMatrix {
    kron(&ComplexMatrix::identity(n_rho), &(cup * &cup.adjoint()).scale_re(1.0 / d))
}

/// The Jones projection `f_m` in `End(sigma(m + 2))`.
///
/// `f_m = d^-1 1_sigma(m) (x) Rbar Rbar^*` for even `m` and `d^-1 1_sigma(m) (x) R R^*` for odd `m`.
pub fn jones_projection(cat: &Category, m: usize) -> Result<ComplexMatrix> {
    let sigma = Sigma::of(cat);
    let word = sigma.alternating(m + 2);
    let n = cat.vdim(&word);
    if n > cat.cap() {
        return Err(Error::CapExceeded { dim: n, cap: cat.cap() });
    }
    let p = cat.standard_pair(&Word::letter(sigma.s))?;
    let cup = if m.is_multiple_of(2) { p.rbar_vector() } else { p.r_vector() };
    Ok(cup_projection(cat.vdim(&sigma.alternating(m)), &cup, p.dim()))
}

/// Embed `x` in `End(w)` into `End(w v)` as `x (x) 1`.
fn pad_right(x: &ComplexMatrix, extra: usize) -> ComplexMatrix {
    kron(x, &ComplexMatrix::identity(extra))
}

/// Jones relations for `f_0, ..., f_{m_max}` realized in `End(sigma(m_max + 2))`.
pub fn check_jones(cat: &Category, m_max: usize) -> Result<CheckReport> {
    let sigma = Sigma::of(cat);
    let eps = cat.tol().check_eps;
    let top = sigma.alternating(m_max + 2);
    let n_top = cat.vdim(&top);
    let p = cat.standard_pair(&Word::letter(sigma.s))?;
    let d = p.dim();
    let beta_inv = 1.0 / (d * d);
    let mut fs = Vec::new();
    let mut r = CheckReport::new();
    for m in 0..=m_max {
        let f = jones_projection(cat, m)?;
        let w = sigma.alternating(m + 2);
        let end = cat.end_basis(&w)?;
        r.residual(format!("f{m} lies in its End-algebra"), end.residual(&f), eps);
        r.residual(format!("f{m} is idempotent"), (&f * &f).max_abs_diff(&f), eps);
        r.residual(format!("f{m} is self-adjoint"), f.adjoint().max_abs_diff(&f), eps);
        r.residual(format!("tr(f{m}) = d^-2"), (cat.trace(&w, &f)?.re - beta_inv).abs(), eps);
        let lower = sigma.alternating(m + 1);
        let last = Word::letter(w.0[m + 1]);
        let e = cat.right_expectation(&last, &lower, &f)?;
        let id = ComplexMatrix::identity(cat.vdim(&lower)).scale_re(beta_inv);
        r.residual(format!("E(f{m}) = d^-2"), e.max_abs_diff(&id), eps);
        fs.push(pad_right(&f, n_top / f.rows()));
    }
    for m in 0..fs.len() {
        for l in 0..fs.len() {
            if l + 1 == m || m + 1 == l {
                let lhs = &(&fs[m] * &fs[l]) * &fs[m];
                r.residual(format!("f{m} f{l} f{m} = d^-2 f{m}"), lhs.max_abs_diff(&fs[m].scale_re(beta_inv)), eps);
            } else if l >= m + 2 {
                let c = (&fs[m] * &fs[l]).max_abs_diff(&(&fs[l] * &fs[m]));
                r.residual(format!("f{m} f{l} = f{l} f{m}"), c, eps);
            }
        }
    }
    Ok(r)
}

/// Commuting square `A^n ⊂ A^(n+1)`, `B^n ⊂ B^(n+1)`.
pub fn check_commuting_square(t: &Tower, n: usize) -> Result<CheckReport> {
    check_commuting_square_perturbed(t, n, 0.0)
}

/// As [`check_commuting_square`], with `perturbation * 1` added to the upper expectation.
///
/// Checks `Phi(X (x) 1_sigma) = Phi(X) (x) 1_sigma` for `X` running over a basis of `A^(n+1)`.
pub fn check_commuting_square_perturbed(t: &Tower, n: usize, perturbation: f64) -> Result<CheckReport> {
    let cat = &t.cat;
    let eps = cat.tol().check_eps;
    let l = Word::letter(Tower::left_letter(t.mode, t.sigma, n));
    let a = Tower::a_word(t.mode, t.sigma, n);
    let a_up = l.concat(&a);
    let b = a.push(t.sigma.s);
    let ns = cat.vdim(&Word::letter(t.sigma.s));
    let nb = cat.vdim(&b);
    let mut r = CheckReport::new();
    let mut worst: f64 = 0.0;
    let id_up = ComplexMatrix::identity(cat.vdim(&a_up));
    let mut basis = cat.end_basis(&a_up)?.basis;
    basis.push(id_up.clone());
    for (k, x) in basis.iter().enumerate() {
        let mut lhs = cat.left_expectation(&l, &b, &pad_right(x, ns))?;
        lhs += &ComplexMatrix::identity(nb).scale_re(perturbation);
        let rhs = pad_right(&cat.left_expectation(&l, &a, x)?, ns);
        let res = lhs.max_abs_diff(&rhs);
        if k + 1 == basis.len() {
            r.residual("unit: both sides are 1", lhs.max_abs_diff(&ComplexMatrix::identity(nb)), eps);
        }
        worst = worst.max(res);
    }
    r.residual(format!("commuting square at level {n}"), worst, eps);
    Ok(r)
}

/// Markov relation and `f b f = Psi(b) f` for `rho = A^n`, with `f` in `End(rho sigma sbar)`.
pub fn check_markov(t: &Tower, n: usize) -> Result<CheckReport> {
    check_markov_for(&t.cat, &Tower::a_word(t.mode, t.sigma, n))
}

/// As [`check_markov`] for an arbitrary word `rho`.
pub fn check_markov_for(cat: &Category, rho: &Word) -> Result<CheckReport> {
    let eps = cat.tol().check_eps;
    let sigma = Sigma::of(cat);
    let s = Word::letter(sigma.s);
    let rs = rho.push(sigma.s);
    let rss = rs.push(sigma.sb);
    let f = lfund_projection(cat, rho, sigma)?;
    let nsb = cat.vdim(&Word::letter(sigma.sb));
    let d = cat.standard_pair(&s)?.dim();
    let d2 = d * d;
    let mut r = CheckReport::new();
    r.residual("tr(f) = d^-2", (cat.trace(&rss, &f)?.re - 1.0 / d2).abs(), eps);
    let mut markov: f64 = 0.0;
    let mut fbf: f64 = 0.0;
    let nsig = cat.vdim(&s) * nsb;
    for x in &cat.end_basis(&rs)?.basis {
        let xe = pad_right(x, nsb);
        let lhs = cat.trace(&rss, &(&xe * &f))?;
        let rhs = cat.trace(&rs, x)? / d2;
        markov = markov.max((lhs - rhs).norm());
        let psi = cat.right_expectation(&s, rho, x)?;
        let a = &(&f * &xe) * &f;
        let b = &pad_right(&psi, nsig) * &f;
        fbf = fbf.max(a.max_abs_diff(&b));
    }
    r.residual("Markov relation on a basis", markov, eps);
    r.residual("f b f = Psi(b) f on a basis", fbf, eps);
    Ok(r)
}

fn lfund_projection(cat: &Category, rho: &Word, sigma: Sigma) -> Result<ComplexMatrix> {
    let p = cat.standard_pair(&Word::letter(sigma.s))?;
    let rss = rho.push(sigma.s).push(sigma.sb);
    let n = cat.vdim(&rss);
    if n > cat.cap() {
        return Err(Error::CapExceeded { dim: n, cap: cat.cap() });
    }
    Ok(cup_projection(cat.vdim(rho), &p.rbar_vector(), p.dim()))
}

/// Outcome of [`basic_construction_check`].
#[derive(Clone, Debug)]
pub struct BasicConstruction {
    pub report: CheckReport,
    /// `dim span B f B`.
    pub dim_d: usize,
    /// `dim End(rho sigma sbar)`.
    pub dim_c: usize,
    /// Whether every irreducible of `rho sigma sbar` occurs in `rho`.
    pub condition: bool,
}

/// The basic construction inside `C = End(rho sigma sbar)` for `rho = A^n`.
///
/// `D = span B f B` with `B = End(rho sigma) (x) 1`. Checks that `D` is an ideal,
/// that `D = C` exactly when the subobject condition holds, and the edge symmetry
/// `dim(tau, pi sigma) = dim(pi, tau sbar)`.
pub fn basic_construction_check(t: &Tower, n: usize) -> Result<BasicConstruction> {
    basic_construction_for(&t.cat, &Tower::a_word(t.mode, t.sigma, n))
}

/// As [`basic_construction_check`] for an arbitrary word `rho`.
pub fn basic_construction_for(cat: &Category, rho: &Word) -> Result<BasicConstruction> {
    let eps = cat.tol().check_eps;
    let sigma = Sigma::of(cat);
    let rs = rho.push(sigma.s);
    let rss = rs.push(sigma.sb);
    let f = lfund_projection(cat, rho, sigma)?;
    let nsb = cat.vdim(&Word::letter(sigma.sb));
    let nc = cat.vdim(&rss);
    let b: Vec<ComplexMatrix> = cat.end_basis(&rs)?.basis.iter().map(|x| pad_right(x, nsb)).collect();
    let mut vecs = Vec::new();
    for x in &b {
        let xf = x * &f;
        for y in &b {
            vecs.push((&xf * y).into_data());
        }
    }
    let span = orthonormal_span(&vecs, nc * nc, cat.tol());
    let dim_d = span.cols();
    let c_basis = cat.end_basis(&rss)?.basis;
    let dim_c = c_basis.len();
    let d_basis: Vec<ComplexMatrix> =
        (0..dim_d).map(|k| ComplexMatrix::column(span.col_vec(k)).reshape(nc, nc)).collect::<Result<_>>()?;
    let outside = |z: &ComplexMatrix| -> f64 {
        let mut rem = z.clone();
        for e in &d_basis {
            let c = e.inner(z);
            rem.axpy(-c, e);
        }
        rem.max_abs()
    };
    let mut ideal: f64 = 0.0;
    for c in &c_basis {
        for x in &d_basis {
            ideal = ideal.max(outside(&(c * x))).max(outside(&(x * c)));
        }
    }
    let m_rho = cat.multiplicities(rho);
    let m_rss = cat.multiplicities(&rss);
    let condition = m_rss.iter().zip(&m_rho).all(|(&a, &b)| a == 0 || b > 0);
    let reg = cat.registry();
    let m_rs = cat.multiplicities(&rs);
    let mut symmetric = true;
    for (pi, &mp) in m_rho.iter().enumerate() {
        for (tau, &mt) in m_rs.iter().enumerate() {
            if mp > 0 && mt > 0 && reg.right_mult(pi, sigma.s, tau) != reg.right_mult(tau, sigma.sb, pi) {
                symmetric = false;
            }
        }
    }
    let mut report = CheckReport::new();
    report.residual("span B f B is an ideal of C", ideal, eps);
    report.flag("D = C exactly when every irreducible of rho sigma sbar lies in rho", (dim_d == dim_c) == condition);
    report.flag("dim(tau, pi sigma) = dim(pi, tau sbar)", symmetric);
    Ok(BasicConstruction { report, dim_d, dim_c, condition })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{regular_cg, s3_std};
    use super::super::TowerMode;
    use super::*;

    #[test]
    fn jones_relations_for_s3_std() {
        let cat = s3_std();
        let r = check_jones(&cat, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(r.get("f0 f2 = f2 f0").is_some());
        assert!(r.get("f1 f2 f1 = d^-2 f1").is_some());
    }

    #[test]
    fn jones_relations_for_regular_z2() {
        let r = check_jones(&regular_cg("Z2"), 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn commuting_squares_and_fault_injection() {
        let t = Tower::build(s3_std(), 4, TowerMode::Alternating).unwrap();
        for n in 1..=3 {
            let r = check_commuting_square(&t, n).unwrap();
            assert!(r.passed(), "level {n}: {:?}", r.failures());
        }
        let r = check_commuting_square_perturbed(&t, 1, 1e-3).unwrap();
        assert!(!r.passed());
        let c = r.get("commuting square at level 1").unwrap();
        assert!((c.residual - 1e-3).abs() < 1e-9);
        let t = Tower::build(s3_std(), 4, TowerMode::SigmaOnly).unwrap();
        assert!(check_commuting_square(&t, 2).unwrap().passed());
    }

    #[test]
    fn markov_relation_for_rho_sigma_sbar() {
        let t = Tower::build(s3_std(), 4, TowerMode::Alternating).unwrap();
        for n in 1..=3 {
            let r = check_markov(&t, n).unwrap();
            assert!(r.passed(), "level {n}: {:?}", r.failures());
        }
    }

    #[test]
    fn basic_construction_fills_c_exactly_under_the_condition() {
        let t = Tower::build(s3_std(), 4, TowerMode::Alternating).unwrap();
        let bc = basic_construction_check(&t, 3).unwrap();
        assert!(bc.report.passed(), "{:?}", bc.report.failures());
        assert!(bc.condition);
        assert_eq!(bc.dim_d, bc.dim_c);
        let bc = basic_construction_check(&t, 1).unwrap();
        assert!(bc.report.passed());
        assert!(!bc.condition);
        assert!(bc.dim_d < bc.dim_c);
    }
}
