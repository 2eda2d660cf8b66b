//! The Hopf fixed-point model at finite level.
//!
//! A corepresentation `rho` of `H` gives the representation `rho^o` of the
//! dual `H^o` with `rho^o(delta^h) = blocks[h]`. With `K = cop(H^o)` the
//! adjoint action `alpha(a) x = sum mu(a1) x mu(S(a2))` acts on `End(V)`,
//! represented as `n^2 x n^2` matrices on row-major vectorized operators.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{Category, Word};
use crate::corep::Corepresentation;
use crate::error::Result;
use crate::hopf::HopfStarAlgebra;
use crate::numkit::{
    commutant_basis, kron, principal_cosines, random_matrix, stacked_null_space_scaled, ComplexMatrix, MorphismSpace,
    Tolerance, C0,
};
use crate::report::CheckReport;
use crate::tower::Sigma;

/// The representation `rho^o` of `H^o` attached to a corepresentation.
#[derive(Clone, Debug)]
pub struct DualRep {
    pub source: Corepresentation,
    /// `H^o` on the dual basis.
    pub algebra: Arc<HopfStarAlgebra>,
    /// Image of each dual basis functional.
    pub images: Vec<ComplexMatrix>,
}

/// `rho^o(f) w = (id (x) f) rho(w)`.
pub fn dual_rep(s: &Corepresentation) -> DualRep {
    DualRep { source: s.clone(), algebra: Arc::new(s.algebra().dual()), images: s.blocks().to_vec() }
}

impl DualRep {
    pub fn vdim(&self) -> usize {
        self.source.vdim()
    }

    /// Image of an element given by coefficients over the basis.
    pub fn image(&self, f: &[Complex64]) -> ComplexMatrix {
        let n = self.vdim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (c, m) in f.iter().zip(&self.images) {
            if *c != C0 {
                out.axpy(*c, m);
            }
        }
        out
    }

    /// Multiplicativity, unitality and the *-property on basis elements.
    pub fn check(&self, tol: &Tolerance) -> CheckReport {
        let a = &self.algebra;
        let n = a.dim();
        let mut mult: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.image(&a.mul(&a.basis(i), &a.basis(j)));
                mult = mult.max(lhs.max_abs_diff(&(&self.images[i] * &self.images[j])));
            }
        }
        let unit = self.image(a.unit()).max_abs_diff(&ComplexMatrix::identity(self.vdim()));
        let mut star: f64 = 0.0;
        for i in 0..n {
            star = star.max(self.image(&a.star(&a.basis(i))).max_abs_diff(&self.images[i].adjoint()));
        }
        let mut r = CheckReport::new();
        r.residual("dual representation is multiplicative", mult, tol.check_eps);
        r.residual("dual representation is unital", unit, tol.check_eps);
        r.residual("dual representation preserves *", star, tol.check_eps);
        r
    }
}

/// The adjoint action of `K = cop(H^o)` on `End(V)` through `mu`.
#[derive(Clone, Debug)]
pub struct AdjointAction {
    pub rep: DualRep,
    pub k: Arc<HopfStarAlgebra>,
    /// `n^2 x n^2` operator of each basis element of `K`.
    pub operators: Vec<ComplexMatrix>,
}

pub fn adjoint_action(mu: &DualRep) -> AdjointAction {
    let k = Arc::new(mu.algebra.cop());
    let n = mu.vdim();
    let mut operators = vec![ComplexMatrix::zeros(n * n, n * n); k.dim()];
    for &(a, j, l, c) in k.comult_nonzeros() {
        let left = &mu.images[j];
        let right = mu.image(&k.antipode(&k.basis(l)));
        operators[a].axpy(c, &kron(left, &right.transpose()));
    }
    AdjointAction { rep: mu.clone(), k, operators }
}

fn vec_of(x: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::column(x.data().to_vec())
}

impl AdjointAction {
    pub fn vdim(&self) -> usize {
        self.rep.vdim()
    }

    /// Operator of an element of `K`.
    pub fn operator(&self, a: &[Complex64]) -> ComplexMatrix {
        let n = self.vdim();
        let mut out = ComplexMatrix::zeros(n * n, n * n);
        for (c, m) in a.iter().zip(&self.operators) {
            if *c != C0 {
                out.axpy(*c, m);
            }
        }
        out
    }

    /// `alpha(a) x`.
    pub fn apply(&self, a: &[Complex64], x: &ComplexMatrix) -> ComplexMatrix {
        let n = self.vdim();
        (&self.operator(a) * &vec_of(x)).reshape(n, n).expect("square operator")
    }

    /// Action axioms on all basis elements of `K`, evaluated at operator samples.
    ///
    /// Samples are all pairs of matrix units when `n <= 4` and seeded random
    /// pairs otherwise.
    pub fn check_axioms(&self, tol: &Tolerance, seed: u64) -> CheckReport {
        let k = &self.k;
        let n = self.vdim();
        let dk = k.dim();
        let samples: Vec<(ComplexMatrix, ComplexMatrix)> = if n <= 4 {
            let units: Vec<_> = (0..n * n).map(|e| ComplexMatrix::unit(n, n, e / n, e % n)).collect();
            units.iter().flat_map(|x| units.iter().map(move |y| (x.clone(), y.clone()))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..16).map(|_| (random_matrix(n, n, &mut rng), random_matrix(n, n, &mut rng))).collect()
        };
        let mut rep: f64 = 0.0;
        for i in 0..dk {
            for j in 0..dk {
                let lhs = self.operator(&k.mul(&k.basis(i), &k.basis(j)));
                rep = rep.max(lhs.max_abs_diff(&(&self.operators[i] * &self.operators[j])));
            }
        }
        let unit = self.operator(k.unit()).max_abs_diff(&ComplexMatrix::identity(n * n));
        let id = ComplexMatrix::identity(n);
        let mut on_unit: f64 = 0.0;
        let mut leibniz: f64 = 0.0;
        let mut star: f64 = 0.0;
        for a in 0..dk {
            let ea = k.counit(&k.basis(a));
            on_unit = on_unit.max(self.apply(&k.basis(a), &id).max_abs_diff(&id.scale(ea)));
            let sa = k.star(&k.antipode(&k.basis(a)));
            let delta = k.comul(&k.basis(a));
            for (x, y) in &samples {
                let lhs = self.apply(&k.basis(a), &(x * y));
                let mut rhs = ComplexMatrix::zeros(n, n);
                for p in 0..dk {
                    for q in 0..dk {
                        let c = delta[(p, q)];
                        if c != C0 {
                            rhs.axpy(c, &(&self.apply(&k.basis(p), x) * &self.apply(&k.basis(q), y)));
                        }
                    }
                }
                leibniz = leibniz.max(lhs.max_abs_diff(&rhs));
                let s1 = self.apply(&k.basis(a), x).adjoint();
                star = star.max(s1.max_abs_diff(&self.apply(&sa, &x.adjoint())));
            }
        }
        let mut r = CheckReport::new();
        r.residual("alpha(ab) = alpha(a) alpha(b)", rep, tol.check_eps);
        r.residual("alpha(1) = id", unit, tol.check_eps);
        r.residual("alpha(a) 1 = eps(a) 1", on_unit, tol.check_eps);
        r.residual("alpha(a)(xy) = sum alpha(a1)x alpha(a2)y", leibniz, tol.check_eps);
        r.residual("(alpha(a)x)^* = alpha(S(a)^*) x^*", star, tol.check_eps);
        r
    }
}

/// Fixed points of the action computed two ways.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// `{x : alpha(a) x = eps(a) x}` by a direct solve.
    pub invariant: MorphismSpace,
    /// The commutant of the image of `mu`.
    pub commutant: MorphismSpace,
    /// Cosines of the principal angles between the two spans.
    pub cosines: Vec<f64>,
}

impl FixedPoints {
    pub fn dim(&self) -> usize {
        self.invariant.dim()
    }

    /// `1 - min cosine`, or `1` when the dimensions differ.
    pub fn span_defect(&self) -> f64 {
        if self.invariant.dim() != self.commutant.dim() {
            return 1.0;
        }
        self.cosines.iter().map(|c| 1.0 - c).fold(0.0, f64::max)
    }
}

fn columns_of(space: &MorphismSpace) -> ComplexMatrix {
    let n = space.rows * space.cols;
    ComplexMatrix::from_fn(n, space.dim(), |i, k| space.basis[k].data()[i])
}

pub fn fixed_points(act: &AdjointAction, tol: &Tolerance) -> Result<FixedPoints> {
    let n = act.vdim();
    let id = ComplexMatrix::identity(n * n);
    let blocks: Vec<ComplexMatrix> =
        (0..act.k.dim()).map(|a| &act.operators[a] - &id.scale(act.k.counit(&act.k.basis(a)))).collect();
    let scale = act.operators.iter().map(|o| o.frobenius_norm().powi(2)).sum::<f64>().sqrt();
    let ns = stacked_null_space_scaled(&blocks, n * n, scale, tol)?;
    let invariant = MorphismSpace {
        rows: n,
        cols: n,
        basis: (0..ns.cols())
            .map(|k| ComplexMatrix::column(ns.col_vec(k)).reshape(n, n).expect("n^2 entries"))
            .collect(),
    };
    let commutant = commutant_basis(&act.rep.images, tol)?;
    let cosines = principal_cosines(&columns_of(&invariant), &columns_of(&commutant));
    Ok(FixedPoints { invariant, commutant, cosines })
}

/// Fixed points of `alpha` for the corepresentation realizing `w`, compared with `End(w)`.
pub fn fixed_point_check(cat: &Category, w: &Word) -> Result<CheckReport> {
    let tol = cat.tol();
    let act = adjoint_action(&dual_rep(&cat.realize(w)?));
    let fp = fixed_points(&act, tol)?;
    let name = cat.display(w);
    let mut r = CheckReport::new();
    r.flag(format!("dim fixed points of {name} = dim End({name})"), fp.dim() == cat.end_dim(w));
    r.residual(format!("fixed-point spans agree for {name}"), fp.span_defect(), tol.check_eps);
    Ok(r)
}

/// `alpha_(rho tau)(f)(1 (x) x) = 1 (x) alpha_tau(f) x` for `tau = sbar(k)`, `rho = sigma`,
/// `k = n, n + 1`, over all basis elements `f` and all matrix units `x`.
pub fn tower_action_consistency(cat: &Category, n: usize) -> Result<CheckReport> {
    let sigma = Sigma::of(cat);
    let tol = cat.tol();
    let mut r = CheckReport::new();
    for k in [n, n + 1] {
        let tau = sigma.alternating_bar(k);
        let big = tau.prepend(sigma.s);
        let inner = adjoint_action(&dual_rep(&cat.realize(&tau)?));
        let outer = adjoint_action(&dual_rep(&cat.realize(&big)?));
        let nt = inner.vdim();
        let ns = outer.vdim() / nt;
        let one = ComplexMatrix::identity(ns);
        let mut worst: f64 = 0.0;
        for a in 0..inner.k.dim() {
            let f = inner.k.basis(a);
            for e in 0..nt * nt {
                let x = ComplexMatrix::unit(nt, nt, e / nt, e % nt);
                let lhs = outer.apply(&f, &kron(&one, &x));
                let rhs = kron(&one, &inner.apply(&f, &x));
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        r.residual(format!("action is compatible with the embedding at level {k}"), worst, tol.check_eps);
    }
    Ok(r)
}

/// The unitary `U : End(V) -> conj(V) (x) V`, `sqrt(n) e_ij -> e_j (x) e_i`, intertwining
/// `alpha` with `(conj(s) (x) s)^o`.
pub fn conjugate_action_equivalence(s: &Corepresentation, tol: &Tolerance) -> Result<CheckReport> {
    let n = s.vdim();
    let mut u = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            u[(j * n + i, i * n + j)] = Complex64::new(1.0, 0.0);
        }
    }
    let act = adjoint_action(&dual_rep(s));
    let target = dual_rep(&s.conjugate().tensor(s)?);
    let mut worst: f64 = 0.0;
    for (op, img) in act.operators.iter().zip(&target.images) {
        worst = worst.max((&u * op).max_abs_diff(&(img * &u)));
    }
    let mut r = CheckReport::new();
    r.residual("U is unitary", (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(n * n)), tol.check_eps);
    r.residual("U intertwines alpha with (conj(s) s)^o", worst, tol.check_eps);
    Ok(r)
}

/// Smallest `1 <= n <= n_max` such that `(sigma sbar)^n` contains every registry irreducible.
pub fn outerness_criterion(cat: &Category, n_max: usize) -> Option<usize> {
    let sigma = Sigma::of(cat);
    let mut w = Word::empty();
    for n in 1..=n_max {
        w = w.push(sigma.s).push(sigma.sb);
        if cat.multiplicities(&w).iter().all(|&m| m > 0) {
            return Some(n);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::DEFAULT_CAP;
    use crate::hopf::group::s3_irreps;
    use crate::hopf::FiniteGroup;
    use crate::tower::tests::{regular_cg, s3_std};

    fn s3_std_corep() -> Corepresentation {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        Corepresentation::from_group_rep(h, &g, &s3_irreps()[2]).unwrap()
    }

    #[test]
    fn trivial_dual_rep_is_the_counit() {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        let d = dual_rep(&Corepresentation::trivial(h.clone()));
        for (img, e) in d.images.iter().zip(h.unit()) {
            assert_eq!(img[(0, 0)], *e);
        }
        assert!(d.check(&Tolerance::default()).passed());
    }

    #[test]
    fn regular_group_algebra_dual_rep_gives_point_projections() {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::group_algebra(&g, "S3"));
        let tol = Tolerance::default();
        let d = dual_rep(&Corepresentation::regular(h, &tol).unwrap());
        assert!(d.check(&tol).passed());
        let mut sum = ComplexMatrix::zeros(6, 6);
        for p in &d.images {
            assert!((p * p).max_abs_diff(p) < 1e-10);
            assert!(p.adjoint().max_abs_diff(p) < 1e-10);
            assert!((p.trace().re - 1.0).abs() < 1e-10);
            sum += p;
        }
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-10);
    }

    #[test]
    fn adjoint_action_satisfies_the_axioms() {
        let tol = Tolerance::default();
        let act = adjoint_action(&dual_rep(&s3_std_corep()));
        let r = act.check_axioms(&tol, 0);
        assert!(r.passed(), "{:?}", r.failures());
        let big = adjoint_action(&dual_rep(&s3_std_corep().tensor(&s3_std_corep().conjugate()).unwrap()));
        assert!(big.check_axioms(&tol, 7).passed());
    }

    #[test]
    fn irreducible_fixed_points_are_scalars() {
        let tol = Tolerance::default();
        let fp = fixed_points(&adjoint_action(&dual_rep(&s3_std_corep())), &tol).unwrap();
        assert_eq!(fp.dim(), 1);
        let x = &fp.invariant.basis[0];
        assert!(x.max_abs_diff(&ComplexMatrix::identity(2).scale_re(x[(0, 0)].norm())) < 1e-9);
        assert!(fp.span_defect() < 1e-8);
    }

    #[test]
    fn fixed_points_match_end_along_the_tower() {
        let cat = s3_std();
        let sigma = Sigma::of(&cat);
        for n in 1..=3 {
            let r = fixed_point_check(&cat, &sigma.alternating_bar(n)).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
        }
    }

    #[test]
    fn action_is_compatible_along_the_tower() {
        let r = tower_action_consistency(&s3_std(), 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let r = tower_action_consistency(&regular_cg("Z3"), 0).unwrap();
        assert!(r.max_residual() < 1e-12);
    }

    #[test]
    fn conjugate_action_is_unitarily_equivalent() {
        let tol = Tolerance::default();
        let r = conjugate_action_equivalence(&s3_std_corep(), &tol).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        assert!(conjugate_action_equivalence(&Corepresentation::trivial(h), &tol).unwrap().passed());
    }

    #[test]
    fn outerness_criterion_cases() {
        assert_eq!(outerness_criterion(&regular_cg("S3"), 4), Some(1));
        assert_eq!(outerness_criterion(&s3_std(), 4), Some(1));
        assert_eq!(outerness_criterion(&s3_std(), 0), None);
        let g = FiniteGroup::cyclic(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "Z3"));
        let rep = crate::hopf::group::cyclic_characters(3).remove(1);
        let chi = Corepresentation::from_group_rep(h, &g, &rep).unwrap();
        let cat = Category::generated_by(chi, Tolerance::default(), DEFAULT_CAP).unwrap();
        assert_eq!(outerness_criterion(&cat, 5), None);
    }
}
