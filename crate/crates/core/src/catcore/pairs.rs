//! Standard solutions of the conjugate equations and the structure built on them:
//! statistical dimension, categorical trace, conditional expectations and
//! Frobenius reciprocity.
//!
//! A vector `R` in `V_a (x) V_b` is stored as the `dim a x dim b` matrix of its
//! coefficients, so `R = sum_{i,j} r[(i, j)] e_i (x) e_j`.

use num_complex::Complex64;

use super::{Category, Word};
use crate::corep::{decompose, Corepresentation};
use crate::error::{Error, Result};
use crate::numkit::{ComplexMatrix, Tolerance, C0};

/// `R` in `(1, conj(x) x)` and `Rbar` in `(1, x conj(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardPair {
    /// `dim conj(x) x dim x`.
    pub r: ComplexMatrix,
    /// `dim x x dim conj(x)`.
    pub rbar: ComplexMatrix,
}

/// Residuals of the conjugate equations and of the balance `R^*R = Rbar^*Rbar`.
#[derive(Clone, Copy, Debug)]
pub struct PairCheck {
    pub conjugate_eq_1: f64,
    pub conjugate_eq_2: f64,
    pub balance: f64,
}

impl PairCheck {
    pub fn max(&self) -> f64 {
        self.conjugate_eq_1.max(self.conjugate_eq_2).max(self.balance)
    }
}

fn vectorize(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::column(m.data().to_vec())
}

impl StandardPair {
    /// Canonical pair of a letter and its conjugate: both are `sum_j e_j (x) e_j`.
    pub fn canonical(n: usize) -> Self {
        StandardPair { r: ComplexMatrix::identity(n), rbar: ComplexMatrix::identity(n) }
    }

    pub fn r_vector(&self) -> ComplexMatrix {
        vectorize(&self.r)
    }

    pub fn rbar_vector(&self) -> ComplexMatrix {
        vectorize(&self.rbar)
    }

    /// `R^* R`.
    pub fn dim(&self) -> f64 {
        self.r.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `(Rbar^* (x) 1)(1 (x) R) = 1` and `(R^* (x) 1)(1 (x) Rbar) = 1`.
    pub fn check(&self) -> PairCheck {
        let snake1 = (&self.rbar.conj() * &self.r).transpose();
        let snake2 = (&self.r.conj() * &self.rbar).transpose();
        PairCheck {
            conjugate_eq_1: snake1.max_abs_diff(&ComplexMatrix::identity(snake1.rows())),
            conjugate_eq_2: snake2.max_abs_diff(&ComplexMatrix::identity(snake2.rows())),
            balance: (self.dim() - self.rbar.frobenius_norm().powi(2)).abs(),
        }
    }

    /// Pair of `x l` from the pair of `x` and the pair of the letter `l`.
    pub fn extend_right(&self, letter: &StandardPair) -> StandardPair {
        let (nb, n) = self.r.shape();
        let (lb, l) = letter.r.shape();
        let mut r = ComplexMatrix::zeros(lb * nb, n * l);
        for c in 0..lb {
            for a in 0..nb {
                for b in 0..n {
                    let x = self.r[(a, b)];
                    if x == C0 {
                        continue;
                    }
                    for d in 0..l {
                        r[(c * nb + a, b * l + d)] = letter.r[(c, d)] * x;
                    }
                }
            }
        }
        let mut rbar = ComplexMatrix::zeros(n * l, lb * nb);
        for b in 0..n {
            for a in 0..nb {
                let x = self.rbar[(b, a)];
                if x == C0 {
                    continue;
                }
                for d in 0..l {
                    for c in 0..lb {
                        rbar[(b * l + d, c * nb + a)] = x * letter.rbar[(d, c)];
                    }
                }
            }
        }
        StandardPair { r, rbar }
    }
}

/// Standard pair of an arbitrary corepresentation built from its irreducible pieces.
///
/// Each component gets the canonical pair of its irreducible, rescaled by
/// `lambda = (Rbar^*Rbar / R^*R)^(1/4)` so both halves have equal norm, and is
/// pushed forward along its isometry `V` and the conjugate isometry `conj(V)`.
/// The conjugate object is [`Corepresentation::conjugate`].
pub fn isometric_standard_pair(s: &Corepresentation, tol: &Tolerance) -> Result<StandardPair> {
    let n = s.vdim();
    let mut r = ComplexMatrix::zeros(n, n);
    let mut rbar = ComplexMatrix::zeros(n, n);
    for comp in decompose(s, tol)?.components {
        let p = StandardPair::canonical(comp.irrep.vdim());
        let lambda = (p.rbar.frobenius_norm().powi(2) / p.dim()).powf(0.25);
        for v in &comp.isometries {
            let vc = v.conj();
            r += &(&(&vc * &p.r) * &v.transpose()).scale_re(lambda);
            rbar += &(&(v * &p.rbar) * &vc.transpose()).scale_re(1.0 / lambda);
        }
    }
    Ok(StandardPair { r, rbar })
}

fn square(x: &ComplexMatrix, n: usize, what: &str) -> Result<()> {
    if x.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!("{what}: expected {n}x{n}, got {}x{}", x.rows(), x.cols())));
    }
    Ok(())
}

impl Category {
    /// Standard pair of a word, built letter by letter from the canonical letter pairs.
    pub fn standard_pair(&self, w: &Word) -> Result<StandardPair> {
        self.check_cap(w)?;
        let mut p = StandardPair::canonical(1);
        for &l in &w.0 {
            p = p.extend_right(&StandardPair::canonical(self.letters[l].corep.vdim()));
        }
        Ok(p)
    }

    /// Statistical dimension `R^*R`. Above the cap it is the product of letter dimensions.
    pub fn dim_stat(&self, w: &Word) -> f64 {
        match self.standard_pair(w) {
            Ok(p) => p.dim(),
            Err(_) => w.0.iter().map(|&l| StandardPair::canonical(self.letters[l].corep.vdim()).dim()).product(),
        }
    }

    /// Normalized categorical trace `d^-1 R^*(1 (x) X)R` on `End(w)`.
    pub fn trace(&self, w: &Word, x: &ComplexMatrix) -> Result<Complex64> {
        let p = self.standard_pair(w)?;
        square(x, p.r.cols(), "trace")?;
        let k = &p.r.adjoint() * &p.r;
        Ok(k.data().iter().zip(x.data()).map(|(a, b)| a * b).sum::<Complex64>() / p.dim())
    }

    /// The same trace computed with the other half of the pair, `d^-1 Rbar^*(X (x) 1)Rbar`.
    pub fn trace_rbar(&self, w: &Word, x: &ComplexMatrix) -> Result<Complex64> {
        let p = self.standard_pair(w)?;
        square(x, p.rbar.rows(), "trace")?;
        let k = (&p.rbar * &p.rbar.adjoint()).transpose();
        Ok(k.data().iter().zip(x.data()).map(|(a, b)| a * b).sum::<Complex64>() / p.dim())
    }

    /// Left inverse `End(rho sigma) -> End(sigma)`, `X -> d^-1 (R^* (x) 1)(1 (x) X)(R (x) 1)`.
    pub fn left_expectation(&self, rho: &Word, sigma: &Word, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns) = (self.vdim(rho), self.vdim(sigma));
        square(x, nr * ns, "left expectation")?;
        let k = &p.r.adjoint() * &p.r;
        let mut out = ComplexMatrix::zeros(ns, ns);
        for b1 in 0..nr {
            for b in 0..nr {
                let kk = k[(b1, b)];
                if kk == C0 {
                    continue;
                }
                out.axpy(kk, &x.block(b1 * ns, b * ns, ns, ns));
            }
        }
        Ok(out.scale_re(1.0 / p.dim()))
    }

    /// Right inverse `End(sigma rho) -> End(sigma)`, `X -> d^-1 (1 (x) Rbar^*)(X (x) 1)(1 (x) Rbar)`.
    pub fn right_expectation(&self, rho: &Word, sigma: &Word, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns) = (self.vdim(rho), self.vdim(sigma));
        square(x, nr * ns, "right expectation")?;
        let l = &p.rbar * &p.rbar.adjoint();
        let mut out = ComplexMatrix::zeros(ns, ns);
        for j in 0..ns {
            for i in 0..ns {
                let mut acc = C0;
                for b in 0..nr {
                    for b1 in 0..nr {
                        acc += l[(b, b1)] * x[(j * nr + b1, i * nr + b)];
                    }
                }
                out[(j, i)] = acc;
            }
        }
        Ok(out.scale_re(1.0 / p.dim()))
    }

    /// `(rho sigma, tau) -> (sigma, conj(rho) tau)`, `S -> (1 (x) S)(R (x) 1)`.
    pub fn frobenius_left(&self, rho: &Word, sigma: &Word, tau: &Word, s: &ComplexMatrix) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns, nt) = (self.vdim(rho), self.vdim(sigma), self.vdim(tau));
        check_shape(s, nt, nr * ns)?;
        let mut out = ComplexMatrix::zeros(nr * nt, ns);
        for a in 0..nr {
            for b in 0..nr {
                let x = p.r[(a, b)];
                if x == C0 {
                    continue;
                }
                for t in 0..nt {
                    for c in 0..ns {
                        out[(a * nt + t, c)] += x * s[(t, b * ns + c)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Category::frobenius_left`], `S' -> (Rbar^* (x) 1)(1 (x) S')`.
    pub fn frobenius_left_inv(&self, rho: &Word, sigma: &Word, tau: &Word, s: &ComplexMatrix) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns, nt) = (self.vdim(rho), self.vdim(sigma), self.vdim(tau));
        check_shape(s, nr * nt, ns)?;
        let mut out = ComplexMatrix::zeros(nt, nr * ns);
        for i in 0..nr {
            for a in 0..nr {
                let x = p.rbar[(i, a)].conj();
                if x == C0 {
                    continue;
                }
                for t in 0..nt {
                    for c in 0..ns {
                        out[(t, i * ns + c)] += x * s[(a * nt + t, c)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(sigma rho, tau) -> (sigma, tau conj(rho))`, `T -> (T (x) 1)(1 (x) Rbar)`.
    pub fn frobenius_right(&self, rho: &Word, sigma: &Word, tau: &Word, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns, nt) = (self.vdim(rho), self.vdim(sigma), self.vdim(tau));
        check_shape(t, nt, ns * nr)?;
        let mut out = ComplexMatrix::zeros(nt * nr, ns);
        for b in 0..nr {
            for a in 0..nr {
                let x = p.rbar[(b, a)];
                if x == C0 {
                    continue;
                }
                for u in 0..nt {
                    for c in 0..ns {
                        out[(u * nr + a, c)] += x * t[(u, c * nr + b)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Category::frobenius_right`], `T' -> (1 (x) R^*)(T' (x) 1)`.
    pub fn frobenius_right_inv(
        &self,
        rho: &Word,
        sigma: &Word,
        tau: &Word,
        t: &ComplexMatrix,
    ) -> Result<ComplexMatrix> {
        let p = self.standard_pair(rho)?;
        let (nr, ns, nt) = (self.vdim(rho), self.vdim(sigma), self.vdim(tau));
        check_shape(t, nt * nr, ns)?;
        let mut out = ComplexMatrix::zeros(nt, ns * nr);
        for a in 0..nr {
            for b in 0..nr {
                let x = p.r[(a, b)].conj();
                if x == C0 {
                    continue;
                }
                for u in 0..nt {
                    for c in 0..ns {
                        out[(u, c * nr + b)] += x * t[(u * nr + a, c)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vectors `R` in `(1, s r)` and `Rbar` in `(1, r s)` with `(Rbar^* (x) 1)(1 (x) R) != 0`, if any.
    ///
    /// For irreducible `r` and `s` such a pair exists exactly when `s` is conjugate to `r`.
    pub fn conjugacy_witness(&self, r: &Word, s: &Word) -> Result<Option<(ComplexMatrix, ComplexMatrix)>> {
        let (nr, ns) = (self.vdim(r), self.vdim(s));
        let unit = Word::empty();
        let hs = self.hom_words(&unit, &s.concat(r))?;
        let hr = self.hom_words(&unit, &r.concat(s))?;
        let eps = self.tol.check_eps.sqrt();
        for a in &hs.basis {
            let am = a.reshape(ns, nr)?;
            for b in &hr.basis {
                let bm = b.reshape(nr, ns)?;
                let snake = &bm.conj() * &am;
                if snake.max_abs() > eps {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }
}

fn check_shape(x: &ComplexMatrix, rows: usize, cols: usize) -> Result<()> {
    if x.shape() != (rows, cols) {
        return Err(Error::DimensionMismatch(format!("expected {rows}x{cols}, got {}x{}", x.rows(), x.cols())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catcore::DEFAULT_CAP;
    use crate::hopf::group::s3_irreps;
    use crate::hopf::{FiniteGroup, HopfStarAlgebra};
    use crate::numkit::kron;
    use proptest::prelude::*;

    fn s3_cat() -> Category {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        let std = Corepresentation::from_group_rep(h, &g, &s3_irreps()[2]).unwrap();
        Category::generated_by(std, Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    /// Letters triv, sgn, std (and their conjugates) of `Rep(S3)`.
    fn s3_irrep_cat() -> Category {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        let irr = s3_irreps();
        let mk = |k: usize| Corepresentation::from_group_rep(h.clone(), &g, &irr[k]).unwrap();
        Category::builder(h.clone()).generator("std", mk(2)).letter("triv", mk(0)).letter("sgn", mk(1)).build().unwrap()
    }

    fn words() -> Vec<Word> {
        vec![Word::empty(), Word(vec![0]), Word(vec![1]), Word(vec![0, 1]), Word(vec![1, 0, 1]), Word(vec![0, 1, 0, 1])]
    }

    #[test]
    fn word_pairs_solve_conjugate_equations_and_are_invariant() {
        let c = s3_cat();
        for w in words() {
            let p = c.standard_pair(&w).unwrap();
            assert!(p.check().max() < 1e-12, "{}", c.display(&w));
            let wb = c.conj_word(&w);
            let unit = c.realize(&Word::empty()).unwrap();
            let inv_r = c.realize(&wb.concat(&w)).unwrap();
            let inv_rbar = c.realize(&w.concat(&wb)).unwrap();
            assert!(unit.intertwining_residual(&inv_r, &p.r_vector()) < 1e-12);
            assert!(unit.intertwining_residual(&inv_rbar, &p.rbar_vector()) < 1e-12);
            assert!((p.dim() - c.vdim(&w) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn dim_stat_is_additive_and_multiplicative() {
        let c = s3_cat();
        let ws = words();
        for a in &ws {
            let m = c.multiplicities(a);
            let sum: f64 = m.iter().enumerate().map(|(k, &mk)| mk as f64 * c.registry().entry(k).dim as f64).sum();
            assert!((c.dim_stat(a) - sum).abs() < 1e-10);
            for b in &ws {
                assert!((c.dim_stat(&a.concat(b)) - c.dim_stat(a) * c.dim_stat(b)).abs() < 1e-9);
            }
        }
        let long = Word(vec![0; 9]);
        assert!((c.dim_stat(&long) - 512.0).abs() < 1e-9);
    }

    #[test]
    fn trace_is_normalized_matrix_trace_and_spherical() {
        let c = s3_cat();
        for w in words().into_iter().skip(1) {
            let n = c.vdim(&w);
            for e in &c.end_basis(&w).unwrap().basis {
                let t = c.trace(&w, e).unwrap();
                assert!((t - e.trace() / n as f64).norm() < 1e-12);
                assert!((t - c.trace_rbar(&w, e).unwrap()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn weighted_trace_property_for_hom_spaces() {
        let c = s3_cat();
        let (rho, sigma) = (Word(vec![0, 1]), Word(vec![1, 0]));
        let h = c.hom_words(&rho, &sigma).unwrap();
        for a in &h.basis {
            for b in &h.basis {
                let lhs = c.trace(&rho, &(&b.adjoint() * a)).unwrap() * c.dim_stat(&rho);
                let rhs = c.trace(&sigma, &(a * &b.adjoint())).unwrap() * c.dim_stat(&sigma);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn expectations_are_bimodular_unital_and_land_in_the_commutant() {
        let c = s3_cat();
        let rho = Word(vec![0]);
        let sigma = Word(vec![1, 0]);
        let big = rho.concat(&sigma);
        let end_big = c.end_basis(&big).unwrap();
        let end_sigma = c.end_basis(&sigma).unwrap();
        let id = ComplexMatrix::identity(c.vdim(&big));
        assert!(c.left_expectation(&rho, &sigma, &id).unwrap().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        for x in &end_big.basis {
            let phi = c.left_expectation(&rho, &sigma, x).unwrap();
            assert!(end_sigma.residual(&phi) < 1e-10);
            for y in &end_sigma.basis {
                let iy = kron(&ComplexMatrix::identity(2), y);
                let lhs = c.left_expectation(&rho, &sigma, &(&iy * x)).unwrap();
                assert!(lhs.max_abs_diff(&(y * &phi)) < 1e-12);
            }
        }
        let big_r = sigma.concat(&rho);
        for x in &c.end_basis(&big_r).unwrap().basis {
            let psi = c.right_expectation(&rho, &sigma, x).unwrap();
            assert!(end_sigma.residual(&psi) < 1e-10);
            for y in &end_sigma.basis {
                let yi = kron(y, &ComplexMatrix::identity(2));
                let lhs = c.right_expectation(&rho, &sigma, &(&yi * x)).unwrap();
                assert!(lhs.max_abs_diff(&(y * &psi)) < 1e-12);
            }
        }
    }

    #[test]
    fn frobenius_dimensions_agree_on_all_irreducible_triples() {
        let c = s3_irrep_cat();
        let irr: Vec<Word> =
            ["triv", "sgn", "std"].iter().map(|n| Word::letter(c.letter_by_name(n).unwrap())).collect();
        for r in &irr {
            for s in &irr {
                for t in &irr {
                    let rb = c.conj_word(r);
                    let lhs = c.hom_words(&r.concat(s), t).unwrap();
                    let rhs = c.hom_words(s, &rb.concat(t)).unwrap();
                    assert_eq!(lhs.dim(), rhs.dim());
                    let direct =
                        crate::corep::hom(&c.realize(&r.concat(s)).unwrap(), &c.realize(t).unwrap(), c.tol()).unwrap();
                    assert_eq!(lhs.dim(), direct.dim());
                    for x in &lhs.basis {
                        let y = c.frobenius_left(r, s, t, x).unwrap();
                        assert!(rhs.residual(&y) < 1e-10);
                        assert!(c.frobenius_left_inv(r, s, t, &y).unwrap().max_abs_diff(x) < 1e-12);
                    }
                    let lhs = c.hom_words(&s.concat(r), t).unwrap();
                    let rhs = c.hom_words(s, &t.concat(&rb)).unwrap();
                    assert_eq!(lhs.dim(), rhs.dim());
                    for x in &lhs.basis {
                        let y = c.frobenius_right(r, s, t, x).unwrap();
                        assert!(rhs.residual(&y) < 1e-10);
                        assert!(c.frobenius_right_inv(r, s, t, &y).unwrap().max_abs_diff(x) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugacy_witness_detects_conjugates() {
        let c = s3_irrep_cat();
        let std = Word::letter(c.letter_by_name("std").unwrap());
        let stdb = Word::letter(c.letter_by_name("std~").unwrap());
        let sgn = Word::letter(c.letter_by_name("sgn").unwrap());
        assert!(c.conjugacy_witness(&std, &stdb).unwrap().is_some());
        assert!(c.conjugacy_witness(&std, &std).unwrap().is_some());
        assert!(c.conjugacy_witness(&sgn, &sgn).unwrap().is_some());
        assert!(c.conjugacy_witness(&std, &sgn).unwrap().is_none());
    }

    #[test]
    fn conjugacy_witness_distinguishes_z4_characters() {
        let g = FiniteGroup::cyclic(4);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "Z4"));
        let chars = crate::hopf::group::cyclic_characters(4);
        let mk = |k: usize| Corepresentation::from_group_rep(h.clone(), &g, &chars[k]).unwrap();
        let c =
            Category::builder(h.clone()).generator("x", mk(1)).letter("y", mk(3)).letter("z", mk(2)).build().unwrap();
        let x = Word::letter(0);
        let y = Word::letter(c.letter_by_name("y").unwrap());
        let z = Word::letter(c.letter_by_name("z").unwrap());
        assert!(c.conjugacy_witness(&x, &y).unwrap().is_some());
        assert!(c.conjugacy_witness(&x, &x).unwrap().is_none());
        assert!(c.conjugacy_witness(&z, &z).unwrap().is_some());
    }

    #[test]
    fn isometric_pair_of_a_reducible_object_is_canonical() {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        let tol = Tolerance::default();
        let reg = Corepresentation::regular(h, &tol).unwrap();
        let p = isometric_standard_pair(&reg, &tol).unwrap();
        assert!(p.check().max() < 1e-10);
        assert!((p.dim() - 6.0).abs() < 1e-10);
        let unit = Corepresentation::trivial(reg.algebra().clone());
        assert!(unit.intertwining_residual(&reg.conjugate().tensor(&reg).unwrap(), &p.r_vector()) < 1e-10);
    }

    #[test]
    fn shape_errors_are_reported() {
        let c = s3_cat();
        let w = Word(vec![0]);
        assert!(matches!(c.trace(&w, &ComplexMatrix::identity(3)), Err(Error::DimensionMismatch(_))));
        assert!(c.left_expectation(&w, &w, &ComplexMatrix::identity(3)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn trace_is_tracial_on_end_algebras(coeffs in proptest::collection::vec(-1.0f64..1.0, 2 * 14)) {
            let c = s3_cat();
            let w = Word(vec![0, 1, 0]);
            let basis = c.end_basis(&w).unwrap().basis;
            let mut a = ComplexMatrix::zeros(8, 8);
            let mut b = ComplexMatrix::zeros(8, 8);
            for (k, e) in basis.iter().enumerate() {
                a.axpy(Complex64::new(coeffs[k % coeffs.len()], 0.0), e);
                b.axpy(Complex64::new(0.0, coeffs[(k + 7) % coeffs.len()]), e);
            }
            let lhs = c.trace(&w, &(&a * &b)).unwrap();
            let rhs = c.trace(&w, &(&b * &a)).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
