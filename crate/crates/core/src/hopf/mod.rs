//! Finite-dimensional Hopf *-algebras given by structure constants.
//!
//! Elements are coefficient vectors over the basis `b_0, ..., b_{n-1}`.
//! Elements of `H (x) H` are `n x n` coefficient matrices.

pub mod group;

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{herm_eig, null_space, ComplexMatrix, Tolerance, C0, C1};
pub use group::FiniteGroup;

/// Element of a Hopf algebra: coefficients over its basis.
pub type Element = Vec<Complex64>;

/// A Hopf *-algebra with a cached Haar trace.
#[derive(Clone, Debug)]
pub struct HopfStarAlgebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    unit: Element,
    /// `mult[(i n + j) n + k]`: coefficient of `b_k` in `b_i b_j`.
    mult: Vec<Complex64>,
    /// `comult[(i n + j) n + k]`: coefficient of `b_j (x) b_k` in `Delta(b_i)`.
    comult: Vec<Complex64>,
    counit: Element,
    /// Row `i` holds `S(b_i)`.
    antipode: ComplexMatrix,
    /// Row `i` holds `b_i^*`; the star extends antilinearly.
    star: ComplexMatrix,
    mult_nz: Vec<(usize, usize, usize, Complex64)>,
    comult_nz: Vec<(usize, usize, usize, Complex64)>,
    haar: OnceLock<std::result::Result<Element, String>>,
}

impl PartialEq for HopfStarAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim
            && self.unit == o.unit
            && self.mult == o.mult
            && self.comult == o.comult
            && self.counit == o.counit
            && self.antipode == o.antipode
            && self.star == o.star
    }
}

fn nonzeros(t: &[Complex64], n: usize) -> Vec<(usize, usize, usize, Complex64)> {
    let mut out = Vec::new();
    for (idx, &z) in t.iter().enumerate() {
        if z != C0 {
            out.push((idx / (n * n), (idx / n) % n, idx % n, z));
        }
    }
    out
}

/// One line of an axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Per-axiom residuals.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, residual: f64, eps: f64) {
        self.checks.push(AxiomCheck { name: name.into(), residual, passed: residual <= eps, detail: None });
    }
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

impl HopfStarAlgebra {
    /// Build from dense structure constants, checking shapes only.
    ///
    /// `mult[i][j]` is the coefficient vector of `b_i b_j`; `comult[i]` is the
    /// `n x n` coefficient matrix of `Delta(b_i)`; `antipode[i]` and `star[i]`
    /// are the coefficient vectors of `S(b_i)` and `b_i^*`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_structure_constants(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: Element,
        mult: Vec<Vec<Element>>,
        comult: Vec<ComplexMatrix>,
        counit: Element,
        antipode: Vec<Element>,
        star: Vec<Element>,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |what: &str| Err(Error::InvalidInput(format!("{what} has the wrong shape for dimension {n}")));
        if n == 0 {
            return Err(Error::InvalidInput("algebra of dimension 0".into()));
        }
        if unit.len() != n {
            return bad("unit");
        }
        if counit.len() != n {
            return bad("counit");
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("multiplication");
        }
        if comult.len() != n || comult.iter().any(|m| m.shape() != (n, n)) {
            return bad("comultiplication");
        }
        if antipode.len() != n || antipode.iter().any(|v| v.len() != n) {
            return bad("antipode");
        }
        if star.len() != n || star.iter().any(|v| v.len() != n) {
            return bad("star");
        }
        let mult: Vec<Complex64> = mult.into_iter().flatten().flatten().collect();
        let comult: Vec<Complex64> = comult.into_iter().flat_map(|m| m.into_data()).collect();
        let antipode = ComplexMatrix::from_vec(n, n, antipode.into_iter().flatten().collect())?;
        let star = ComplexMatrix::from_vec(n, n, star.into_iter().flatten().collect())?;
        Ok(Self::from_parts(name.into(), labels, unit, mult, comult, counit, antipode, star))
    }

    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        name: String,
        labels: Vec<String>,
        unit: Element,
        mult: Vec<Complex64>,
        comult: Vec<Complex64>,
        counit: Element,
        antipode: ComplexMatrix,
        star: ComplexMatrix,
    ) -> Self {
        let dim = labels.len();
        let mult_nz = nonzeros(&mult, dim);
        let comult_nz = nonzeros(&comult, dim);
        HopfStarAlgebra {
            name,
            dim,
            labels,
            unit,
            mult,
            comult,
            counit,
            antipode,
            star,
            mult_nz,
            comult_nz,
            haar: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn counit_vector(&self) -> &Element {
        &self.counit
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = vec![C0; self.dim];
        e[i] = C1;
        e
    }

    /// Coefficient of `b_k` in `b_i b_j`.
    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.mult[(i * self.dim + j) * self.dim + k]
    }

    /// Coefficient of `b_j (x) b_k` in `Delta(b_i)`.
    pub fn comult_coeff(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.comult[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, k, c)` with `b_i b_j = sum c b_k`.
    pub fn mult_nonzeros(&self) -> &[(usize, usize, usize, Complex64)] {
        &self.mult_nz
    }

    /// Nonzero `(i, j, k, c)` with `Delta(b_i) = sum c b_j (x) b_k`.
    pub fn comult_nonzeros(&self) -> &[(usize, usize, usize, Complex64)] {
        &self.comult_nz
    }

    /// Coefficient of `b_j` in `S(b_i)`.
    pub fn antipode_coeff(&self, i: usize, j: usize) -> Complex64 {
        self.antipode[(i, j)]
    }

    /// Coefficient of `b_j` in `b_i^*`.
    pub fn star_coeff(&self, i: usize, j: usize) -> Complex64 {
        self.star[(i, j)]
    }

    pub fn mul(&self, x: &[Complex64], y: &[Complex64]) -> Element {
        let mut out = vec![C0; self.dim];
        for &(i, j, k, c) in &self.mult_nz {
            out[k] += x[i] * y[j] * c;
        }
        out
    }

    pub fn comul(&self, x: &[Complex64]) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for &(i, j, k, c) in &self.comult_nz {
            out[(j, k)] += x[i] * c;
        }
        out
    }

    pub fn counit(&self, x: &[Complex64]) -> Complex64 {
        x.iter().zip(&self.counit).map(|(a, b)| a * b).sum()
    }

    pub fn antipode(&self, x: &[Complex64]) -> Element {
        (0..self.dim).map(|j| (0..self.dim).map(|i| x[i] * self.antipode[(i, j)]).sum()).collect()
    }

    pub fn star(&self, x: &[Complex64]) -> Element {
        (0..self.dim).map(|j| (0..self.dim).map(|i| x[i].conj() * self.star[(i, j)]).sum()).collect()
    }

    /// `m (S (x) id)` or `m (id (x) S)` applied to a tensor.
    fn mult_tensor(&self, t: &ComplexMatrix, left_s: bool, right_s: bool) -> Element {
        let mut out = vec![C0; self.dim];
        for a in 0..self.dim {
            for b in 0..self.dim {
                let c = t[(a, b)];
                if c == C0 {
                    continue;
                }
                let x = if left_s { self.antipode(&self.basis(a)) } else { self.basis(a) };
                let y = if right_s { self.antipode(&self.basis(b)) } else { self.basis(b) };
                for (o, v) in out.iter_mut().zip(self.mul(&x, &y)) {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// Residuals of every Hopf *-algebra axiom and of the Haar trace.
    pub fn check_axioms(&self, tol: &Tolerance) -> ValidationReport {
        let n = self.dim;
        let eps = tol.check_eps;
        let mut rep = ValidationReport { checks: Vec::new() };
        let b = |i: usize| self.basis(i);

        let mut r = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let bij = self.mul(&b(i), &b(j));
                for k in 0..n {
                    let l = self.mul(&bij, &b(k));
                    let rr = self.mul(&b(i), &self.mul(&b(j), &b(k)));
                    r = r.max(dist(&l, &rr));
                }
            }
        }
        rep.push("associativity", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            r = r.max(dist(&self.mul(&self.unit, &b(i)), &b(i)));
            r = r.max(dist(&self.mul(&b(i), &self.unit), &b(i)));
        }
        rep.push("unit", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            let d = self.comul(&b(i));
            let mut left = vec![C0; n * n * n];
            let mut right = vec![C0; n * n * n];
            for a in 0..n {
                for c in 0..n {
                    let z = d[(a, c)];
                    if z == C0 {
                        continue;
                    }
                    let da = self.comul(&b(a));
                    let dc = self.comul(&b(c));
                    for p in 0..n {
                        for q in 0..n {
                            left[(p * n + q) * n + c] += z * da[(p, q)];
                            right[(a * n + p) * n + q] += z * dc[(p, q)];
                        }
                    }
                }
            }
            r = r.max(dist(&left, &right));
        }
        rep.push("coassociativity", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            let d = self.comul(&b(i));
            let left: Element = (0..n).map(|k| (0..n).map(|j| self.counit[j] * d[(j, k)]).sum()).collect();
            let right: Element = (0..n).map(|j| (0..n).map(|k| d[(j, k)] * self.counit[k]).sum()).collect();
            r = r.max(dist(&left, &b(i))).max(dist(&right, &b(i)));
        }
        rep.push("counit", r, eps);

        let mut r = dist(self.comul(&self.unit).data(), kron_vec(&self.unit, &self.unit).data());
        for i in 0..n {
            for j in 0..n {
                let lhs = self.comul(&self.mul(&b(i), &b(j)));
                let rhs = self.tensor_mul(&self.comul(&b(i)), &self.comul(&b(j)));
                r = r.max(lhs.max_abs_diff(&rhs));
            }
        }
        rep.push("comultiplication is multiplicative", r, eps);

        let mut r = (self.counit(&self.unit) - C1).norm();
        for i in 0..n {
            for j in 0..n {
                r = r.max((self.counit(&self.mul(&b(i), &b(j))) - self.counit[i] * self.counit[j]).norm());
            }
        }
        rep.push("counit is multiplicative", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            let d = self.comul(&b(i));
            let target: Element = self.unit.iter().map(|u| u * self.counit[i]).collect();
            r = r.max(dist(&self.mult_tensor(&d, true, false), &target));
            r = r.max(dist(&self.mult_tensor(&d, false, true), &target));
        }
        rep.push("antipode", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            r = r.max(dist(&self.star(&self.star(&b(i))), &b(i)));
            for j in 0..n {
                let lhs = self.star(&self.mul(&b(i), &b(j)));
                let rhs = self.mul(&self.star(&b(j)), &self.star(&b(i)));
                r = r.max(dist(&lhs, &rhs));
            }
        }
        rep.push("star is an antimultiplicative involution", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            let lhs = self.comul(&self.star(&b(i)));
            let rhs = self.tensor_star(&self.comul(&b(i)));
            r = r.max(lhs.max_abs_diff(&rhs));
        }
        rep.push("comultiplication preserves the star", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            r = r.max((self.counit(&self.star(&b(i))) - self.counit[i].conj()).norm());
        }
        rep.push("counit preserves the star", r, eps);

        let mut r = 0.0f64;
        for i in 0..n {
            r = r.max(dist(&self.antipode(&self.antipode(&b(i))), &b(i)));
        }
        rep.push("antipode is involutive", r, eps);

        match self.haar_trace(tol) {
            Ok(h) => {
                rep.push("haar trace is invariant", h.invariance_residual, eps);
                rep.push("haar trace is tracial", h.tracial_residual, eps);
                rep.checks.push(AxiomCheck {
                    name: "haar trace is faithful".into(),
                    residual: h.min_gram_eigenvalue,
                    passed: h.min_gram_eigenvalue > eps,
                    detail: Some("smallest eigenvalue of the Gram matrix".into()),
                });
            }
            Err(e) => rep.checks.push(AxiomCheck {
                name: "haar trace".into(),
                residual: f64::INFINITY,
                passed: false,
                detail: Some(e.to_string()),
            }),
        }
        rep
    }

    /// Product in `H (x) H`.
    pub fn tensor_mul(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for &(a, c, p, u) in &self.mult_nz {
            for &(b, d, q, v) in &self.mult_nz {
                let z = x[(a, b)] * y[(c, d)];
                if z != C0 {
                    out[(p, q)] += z * u * v;
                }
            }
        }
        out
    }

    /// `*` applied on both legs of `H (x) H`.
    pub fn tensor_star(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let z = x[(a, b)].conj();
                if z == C0 {
                    continue;
                }
                for p in 0..n {
                    for q in 0..n {
                        out[(p, q)] += z * self.star[(a, p)] * self.star[(b, q)];
                    }
                }
            }
        }
        out
    }

    /// Solve for the normalized two-sided invariant functional and verify it.
    ///
    /// Fails with `NoSolution` unless the invariant functionals form a line
    /// not annihilating the unit, `NotTracial` if it is not a trace and
    /// `NonFaithful` if `tau(b_i b_j^*)` is not positive definite.
    pub fn haar_trace(&self, tol: &Tolerance) -> Result<HaarTrace> {
        let n = self.dim;
        let mut sys = ComplexMatrix::zeros(2 * n * n, n);
        for &(i, j, k, c) in &self.comult_nz {
            // (tau (x) id) Delta(b_i) = tau(b_i) 1  and  (id (x) tau) Delta(b_i) = tau(b_i) 1
            sys[(i * n + k, j)] += c;
            sys[(n * n + i * n + j, k)] += c;
        }
        for i in 0..n {
            for k in 0..n {
                sys[(i * n + k, i)] -= self.unit[k];
                sys[(n * n + i * n + k, i)] -= self.unit[k];
            }
        }
        let ns = null_space(&sys, tol);
        if ns.dim() != 1 {
            return Err(Error::NoSolution(format!("invariant functionals span dimension {}", ns.dim())));
        }
        let t = ns.basis[0].col_vec(0);
        let at_unit: Complex64 = t.iter().zip(&self.unit).map(|(a, b)| a * b).sum();
        if at_unit.norm() < tol.check_eps {
            return Err(Error::NoSolution("invariant functional vanishes on the unit".into()));
        }
        let tau: Element = t.iter().map(|x| x / at_unit).collect();
        let eval = |x: &[Complex64]| -> Complex64 { x.iter().zip(&tau).map(|(a, b)| a * b).sum() };

        let mut inv = 0.0f64;
        for i in 0..n {
            let d = self.comul(&self.basis(i));
            let left: Element = (0..n).map(|k| (0..n).map(|j| tau[j] * d[(j, k)]).sum()).collect();
            let right: Element = (0..n).map(|j| (0..n).map(|k| d[(j, k)] * tau[k]).sum()).collect();
            let target: Element = self.unit.iter().map(|u| u * tau[i]).collect();
            inv = inv.max(dist(&left, &target)).max(dist(&right, &target));
        }
        let mut tracial = 0.0f64;
        let mut gram = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let bi = self.basis(i);
                let bj = self.basis(j);
                tracial = tracial.max((eval(&self.mul(&bi, &bj)) - eval(&self.mul(&bj, &bi))).norm());
                gram[(i, j)] = eval(&self.mul(&bi, &self.star(&bj)));
            }
        }
        if tracial > tol.check_eps {
            return Err(Error::NotTracial(format!("tau(ab) - tau(ba) reaches {tracial:e}")));
        }
        let eig = herm_eig(&gram, tol).map_err(|e| Error::NonFaithful(format!("Gram matrix: {e}")))?;
        let min = eig.values[0];
        if min <= tol.check_eps {
            return Err(Error::NonFaithful(format!("Gram matrix has eigenvalue {min:e}")));
        }
        Ok(HaarTrace {
            values: tau,
            invariance_residual: inv,
            tracial_residual: tracial,
            min_gram_eigenvalue: min,
            gram,
        })
    }

    /// Haar trace values `tau(b_i)`, computed once with default tolerances.
    pub fn haar(&self) -> Result<&Element> {
        self.haar
            .get_or_init(|| self.haar_trace(&Tolerance::default()).map(|h| h.values).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::NoSolution(e.clone()))
    }

    /// `tau(x)` for the cached Haar trace.
    pub fn tau(&self, x: &[Complex64]) -> Result<Complex64> {
        Ok(x.iter().zip(self.haar()?).map(|(a, b)| a * b).sum())
    }

    /// Same algebra with reversed comultiplication.
    pub fn cop(&self) -> Self {
        let n = self.dim;
        let mut comult = vec![C0; n * n * n];
        for &(i, j, k, c) in &self.comult_nz {
            comult[(i * n + k) * n + j] = c;
        }
        Self::from_parts(
            format!("cop({})", self.name),
            self.labels.clone(),
            self.unit.clone(),
            self.mult.clone(),
            comult,
            self.counit.clone(),
            self.inverse_antipode(),
            self.star.clone(),
        )
    }

    /// Same coalgebra with reversed multiplication.
    pub fn op(&self) -> Self {
        let n = self.dim;
        let mut mult = vec![C0; n * n * n];
        for &(i, j, k, c) in &self.mult_nz {
            mult[(j * n + i) * n + k] = c;
        }
        Self::from_parts(
            format!("op({})", self.name),
            self.labels.clone(),
            self.unit.clone(),
            mult,
            self.comult.clone(),
            self.counit.clone(),
            self.inverse_antipode(),
            self.star.clone(),
        )
    }

    fn inverse_antipode(&self) -> ComplexMatrix {
        match self.antipode.to_nalgebra().try_inverse() {
            Some(inv) => ComplexMatrix::from_nalgebra(&inv),
            None => self.antipode.clone(),
        }
    }

    /// Dual Hopf *-algebra on the dual basis `delta^i`.
    ///
    /// Product and coproduct are the transposes of the coproduct and product,
    /// the antipode is the transpose of `S`, and `f^*(a) = conj(f(S(a)^*))`.
    pub fn dual(&self) -> Self {
        let n = self.dim;
        let mut mult = vec![C0; n * n * n];
        for &(i, j, k, c) in &self.comult_nz {
            mult[(j * n + k) * n + i] = c;
        }
        let mut comult = vec![C0; n * n * n];
        for &(j, k, i, c) in &self.mult_nz {
            comult[(i * n + j) * n + k] = c;
        }
        let antipode = self.antipode.transpose();
        let mut star = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let sa = self.star(&self.antipode(&self.basis(j)));
            for i in 0..n {
                star[(i, j)] = sa[i].conj();
            }
        }
        let labels = self.labels.iter().map(|l| format!("d[{l}]")).collect();
        Self::from_parts(
            format!("dual({})", self.name),
            labels,
            self.counit.clone(),
            mult,
            comult,
            self.unit.clone(),
            antipode,
            star,
        )
    }

    /// Group algebra: `Delta g = g (x) g`, `S g = g^-1 = g^*`.
    pub fn group_algebra(g: &FiniteGroup, name: &str) -> Self {
        let n = g.order;
        let mut mult = vec![C0; n * n * n];
        let mut comult = vec![C0; n * n * n];
        let mut antipode = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                mult[(a * n + b) * n + g.mul(a, b)] = C1;
            }
            comult[(a * n + a) * n + a] = C1;
            antipode[(a, g.inverse(a))] = C1;
        }
        let mut unit = vec![C0; n];
        unit[0] = C1;
        Self::from_parts(
            format!("CG:{name}"),
            g.labels.clone(),
            unit,
            mult,
            comult,
            vec![C1; n],
            antipode.clone(),
            antipode,
        )
    }

    /// Function algebra on the group, basis of point masses `delta_g`.
    pub fn fun_algebra(g: &FiniteGroup, name: &str) -> Self {
        let n = g.order;
        let mut mult = vec![C0; n * n * n];
        let mut comult = vec![C0; n * n * n];
        let mut antipode = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            mult[(a * n + a) * n + a] = C1;
            for b in 0..n {
                comult[(g.mul(a, b) * n + a) * n + b] = C1;
            }
            antipode[(a, g.inverse(a))] = C1;
        }
        let mut counit = vec![C0; n];
        counit[0] = C1;
        let labels = g.labels.iter().map(|l| format!("delta_{l}")).collect();
        Self::from_parts(
            format!("Fun:{name}"),
            labels,
            vec![C1; n],
            mult,
            comult,
            counit,
            antipode,
            ComplexMatrix::identity(n),
        )
    }

    /// Built-in algebras `CG:<group>` and `Fun:<group>`, e.g. `Fun:S3`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (kind, group) = name
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("built-in algebra names look like 'CG:S3', got '{name}'")))?;
        let g = FiniteGroup::builtin(group)?;
        match kind {
            "CG" => Ok(Self::group_algebra(&g, group)),
            "Fun" => Ok(Self::fun_algebra(&g, group)),
            _ => Err(Error::InvalidInput(format!("unknown algebra family '{kind}'"))),
        }
    }

    /// Copy with one multiplication constant changed. Used to exercise the validator.
    pub fn with_mult_coeff(&self, i: usize, j: usize, k: usize, c: Complex64) -> Self {
        let mut mult = self.mult.clone();
        mult[(i * self.dim + j) * self.dim + k] = c;
        Self::from_parts(
            format!("{}*", self.name),
            self.labels.clone(),
            self.unit.clone(),
            mult,
            self.comult.clone(),
            self.counit.clone(),
            self.antipode.clone(),
            self.star.clone(),
        )
    }
}

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j])
}

/// The Haar trace together with the residuals of its defining properties.
#[derive(Clone, Debug)]
pub struct HaarTrace {
    pub values: Element,
    pub invariance_residual: f64,
    pub tracial_residual: f64,
    pub min_gram_eigenvalue: f64,
    /// `gram[(i, j)] = tau(b_i b_j^*)`.
    pub gram: ComplexMatrix,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn groups() -> Vec<(&'static str, FiniteGroup)> {
        ["Z2", "Z3", "Z4", "S3"].iter().map(|n| (*n, FiniteGroup::builtin(n).unwrap())).collect()
    }

    fn same_structure(a: &HopfStarAlgebra, b: &HopfStarAlgebra) -> f64 {
        let mut r = dist(&a.unit, &b.unit).max(dist(&a.counit, &b.counit));
        r = r.max(dist(&a.mult, &b.mult)).max(dist(&a.comult, &b.comult));
        r.max(a.antipode.max_abs_diff(&b.antipode)).max(a.star.max_abs_diff(&b.star))
    }

    #[test]
    fn builtins_satisfy_every_axiom() {
        let tol = Tolerance::default();
        for (name, g) in groups() {
            for h in [HopfStarAlgebra::group_algebra(&g, name), HopfStarAlgebra::fun_algebra(&g, name)] {
                let rep = h.check_axioms(&tol);
                assert!(rep.passed(), "{}: {:?}", h.name(), rep);
            }
        }
    }

    #[test]
    fn haar_values_match_the_group_formulas() {
        let tol = Tolerance::default();
        for (name, g) in groups() {
            let fun = HopfStarAlgebra::fun_algebra(&g, name);
            let h = fun.haar_trace(&tol).unwrap();
            for v in &h.values {
                assert!((v - Complex64::new(1.0 / g.order as f64, 0.0)).norm() < 1e-12);
            }
            let cg = HopfStarAlgebra::group_algebra(&g, name);
            let h = cg.haar_trace(&tol).unwrap();
            for (k, v) in h.values.iter().enumerate() {
                let expect = if k == 0 { 1.0 } else { 0.0 };
                assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn perturbed_multiplication_breaks_associativity_by_the_perturbation() {
        let g = FiniteGroup::cyclic(2);
        let h = HopfStarAlgebra::group_algebra(&g, "Z2");
        // e * g = g + 0.1 e
        let bad = h.with_mult_coeff(0, 1, 0, Complex64::new(0.1, 0.0));
        let rep = bad.check_axioms(&Tolerance::default());
        let a = rep.get("associativity").unwrap();
        assert!(!a.passed);
        assert!((a.residual - 0.1).abs() < 1e-12, "{}", a.residual);
    }

    #[test]
    fn degenerate_trace_is_reported() {
        // C^2 with the trivial (non-faithful) coalgebra structure is not Hopf.
        let n = 2;
        let labels = vec!["a".into(), "b".into()];
        let mut mult = vec![vec![vec![C0; n]; n]; n];
        mult[0][0][0] = C1;
        mult[1][1][1] = C1;
        let mut comult = vec![ComplexMatrix::zeros(n, n); n];
        comult[0][(0, 0)] = C1;
        comult[1][(1, 1)] = C1;
        let h = HopfStarAlgebra::from_structure_constants(
            "bad",
            labels,
            vec![C1, C1],
            mult,
            comult,
            vec![C1, C1],
            vec![vec![C1, C0], vec![C0, C1]],
            vec![vec![C1, C0], vec![C0, C1]],
        )
        .unwrap();
        assert!(matches!(h.haar_trace(&Tolerance::default()), Err(Error::NoSolution(_))));
        assert!(!h.check_axioms(&Tolerance::default()).passed());
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        for (name, g) in groups() {
            let d = HopfStarAlgebra::group_algebra(&g, name).dual();
            let f = HopfStarAlgebra::fun_algebra(&g, name);
            assert!(same_structure(&d, &f) < 1e-12, "{name}");
            let d = HopfStarAlgebra::fun_algebra(&g, name).dual();
            let c = HopfStarAlgebra::group_algebra(&g, name);
            assert!(same_structure(&d, &c) < 1e-12, "{name}");
        }
    }

    #[test]
    fn duals_and_opposites_are_hopf_star_algebras() {
        let tol = Tolerance::default();
        let g = FiniteGroup::symmetric(3);
        for h in [HopfStarAlgebra::group_algebra(&g, "S3"), HopfStarAlgebra::fun_algebra(&g, "S3")] {
            for x in [h.dual(), h.cop(), h.op(), h.dual().cop()] {
                let rep = x.check_axioms(&tol);
                assert!(rep.passed(), "{}: {:?}", x.name(), rep);
            }
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(HopfStarAlgebra::builtin("Fun:S3").unwrap().dim(), 6);
        assert!(HopfStarAlgebra::builtin("S3").is_err());
        assert!(HopfStarAlgebra::builtin("Foo:S3").is_err());
    }

    proptest! {
        #[test]
        fn double_dual_is_identity(gi in 0usize..4, fun in any::<bool>()) {
            let (name, g) = groups().swap_remove(gi);
            let h = if fun { HopfStarAlgebra::fun_algebra(&g, name) } else { HopfStarAlgebra::group_algebra(&g, name) };
            prop_assert!(same_structure(&h.dual().dual(), &h) < 1e-12);
        }

        #[test]
        fn cop_and_op_are_involutions(gi in 0usize..4, fun in any::<bool>()) {
            let (name, g) = groups().swap_remove(gi);
            let h = if fun { HopfStarAlgebra::fun_algebra(&g, name) } else { HopfStarAlgebra::group_algebra(&g, name) };
            prop_assert!(same_structure(&h.cop().cop(), &h) < 1e-12);
            prop_assert!(same_structure(&h.op().op(), &h) < 1e-12);
        }

        #[test]
        fn haar_is_normalized_tracial_faithful(gi in 0usize..4, fun in any::<bool>()) {
            let (name, g) = groups().swap_remove(gi);
            let h = if fun { HopfStarAlgebra::fun_algebra(&g, name) } else { HopfStarAlgebra::group_algebra(&g, name) };
            let t = h.haar_trace(&Tolerance::default()).unwrap();
            let at_unit: Complex64 = t.values.iter().zip(h.unit()).map(|(a, b)| a * b).sum();
            prop_assert!((at_unit - C1).norm() < 1e-12);
            prop_assert!(t.tracial_residual < 1e-12);
            prop_assert!(t.min_gram_eigenvalue > 0.0);
        }
    }
}
