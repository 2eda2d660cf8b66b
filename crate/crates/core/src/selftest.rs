//! The eleven acceptance checks, each returning a [`CheckReport`].
//!
//! Every random draw is seeded from [`SelftestConfig::seed`] and every report is
//! assembled in criterion order, so equal configurations give equal JSON.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catcore::{isometric_standard_pair, Category, StandardPair, Word};
use crate::corep::{hom, Corepresentation};
use crate::equiv4::{check_shift_identity, verify_f_properties, verify_gm_factorization};
use crate::error::Result;
use crate::fixedpoint::{
    adjoint_action, conjugate_action_equivalence, dual_rep, fixed_point_check, outerness_criterion,
    tower_action_consistency,
};
use crate::hopf::group::{character, character_inner, cyclic_characters, s3_irreps, GroupRep};
use crate::hopf::{FiniteGroup, HopfStarAlgebra};
use crate::numkit::{kron, random_element, ComplexMatrix, Tolerance};
use crate::report::{real, CheckReport};
use crate::tower::{
    basic_construction_for, check_assumption_nu, check_commuting_square, check_jones, check_markov_for,
    check_periodicity, principal_graph, standard_invariant, Sigma, Tower, TowerMode,
};

/// Thoroughness of a self-test run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Criteria 1 to 9.
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level '{s}', expected fast or full")),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub level: Level,
    pub seed: u64,
    pub tol: Tolerance,
    pub cap: usize,
    /// Worker threads for independent criteria. Output order does not depend on it.
    pub threads: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            level: Level::Full,
            seed: 0,
            tol: Tolerance::default(),
            cap: crate::catcore::DEFAULT_CAP,
            threads: 1,
        }
    }
}

impl SelftestConfig {
    fn seed_for(&self, id: usize, k: u64) -> u64 {
        self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add((id as u64) << 32 | k)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level.to_string(),
            "seed": self.seed,
            "rank_eps": real(self.tol.rank_eps),
            "check_eps": real(self.tol.check_eps),
            "cap": self.cap,
        })
    }
}

/// Id, title and whether the criterion belongs to the fast level.
pub const CRITERIA: [(usize, &str, bool); 11] = [
    (1, "conjugate equations for group and function algebras", true),
    (2, "additivity and multiplicativity of the statistical dimension", true),
    (3, "Frobenius reciprocity", true),
    (4, "traces and conditional expectations", true),
    (5, "Markov relation and basic construction", true),
    (6, "Jones relations", true),
    (7, "standard invariant", true),
    (8, "principal graph and periodicity", true),
    (9, "fixed-point model", true),
    (10, "bimodule maps and the projections g_m", false),
    (11, "determinism", false),
];

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: String,
    pub report: CheckReport,
    /// Set when a computation aborted; the criterion then fails.
    pub error: Option<String>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.report.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed(),
            "error": self.error,
            "checks": self.report.to_json()["checks"],
        })
    }
}

/// All outcomes of one run, in criterion order.
#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CriterionOutcome::passed)
    }

    pub fn failing(&self) -> Vec<usize> {
        self.outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config.to_json(),
            "passed": self.passed(),
            "failing": self.failing(),
            "criteria": self.outcomes.iter().map(CriterionOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Criteria run at `level`, in order.
pub fn criteria_for(level: Level) -> Vec<usize> {
    CRITERIA.iter().filter(|c| level == Level::Full || c.2).map(|c| c.0).collect()
}

fn title(id: usize) -> &'static str {
    CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown criterion")
}

/// Run one criterion. Id 11 reruns the other criteria of the level twice.
pub fn run_criterion(id: usize, cfg: &SelftestConfig) -> CriterionOutcome {
    let result = match id {
        1 => conjugate_equations(cfg),
        2 => dimension_calculus(cfg),
        3 => frobenius(cfg),
        4 => traces_and_expectations(cfg),
        5 => markov(cfg),
        6 => jones(cfg),
        7 => invariant(cfg),
        8 => principal_graphs(cfg),
        9 => fixed_point_model(cfg),
        10 => bimodule_maps(cfg),
        11 => Ok(determinism(cfg)),
        _ => Err(crate::Error::InvalidInput(format!("no criterion {id}"))),
    };
    let (report, error) = match result {
        Ok(r) => (r, None),
        Err(e) => (CheckReport::new(), Some(e.to_string())),
    };
    CriterionOutcome { id, title: title(id).to_string(), report, error }
}

/// Run `ids` on `cfg.threads` workers and return the outcomes in the order of `ids`.
pub fn run_criteria(ids: &[usize], cfg: &SelftestConfig) -> Vec<CriterionOutcome> {
    let slots: Vec<Mutex<Option<CriterionOutcome>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..cfg.threads.clamp(1, ids.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= ids.len() {
                    break;
                }
                let out = run_criterion(ids[k], cfg);
                *slots[k].lock().expect("slot lock") = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().expect("slot lock").expect("criterion ran")).collect()
}

/// Run every criterion of `cfg.level`.
pub fn run(cfg: &SelftestConfig) -> SelftestReport {
    SelftestReport { config: cfg.clone(), outcomes: run_criteria(&criteria_for(cfg.level), cfg) }
}

// Fixtures.

fn fun_irreps(g: &FiniteGroup, name: &str) -> Result<(Arc<HopfStarAlgebra>, Vec<Corepresentation>)> {
    let h = Arc::new(HopfStarAlgebra::fun_algebra(g, name));
    let reps: Vec<GroupRep> = if name == "S3" { s3_irreps().to_vec() } else { cyclic_characters(g.order) };
    let irr = reps.iter().map(|r| Corepresentation::from_group_rep(h.clone(), g, r)).collect::<Result<_>>()?;
    Ok((h, irr))
}

fn cg_irreps(g: &FiniteGroup, name: &str) -> Result<(Arc<HopfStarAlgebra>, Vec<Corepresentation>)> {
    let h = Arc::new(HopfStarAlgebra::group_algebra(g, name));
    let irr = (0..g.order).map(|k| Corepresentation::graded(h.clone(), &[k])).collect::<Result<_>>()?;
    Ok((h, irr))
}

/// Fixtures are built with `check_eps` no tighter than the default and then
/// report checks against the requested `check_eps`.
fn build_tol(tol: Tolerance) -> Tolerance {
    Tolerance { rank_eps: tol.rank_eps, check_eps: tol.check_eps.max(Tolerance::default().check_eps) }
}

/// The category generated by the two-dimensional irreducible of `S3` over `Fun(S3)`.
pub fn s3_std_category(tol: Tolerance, cap: usize) -> Result<Arc<Category>> {
    let g = FiniteGroup::symmetric(3);
    let (_, irr) = fun_irreps(&g, "S3")?;
    Ok(Arc::new(Category::generated_by(irr[2].clone(), build_tol(tol), cap)?.with_check_eps(tol.check_eps)))
}

/// The category generated by the regular corepresentation of `CG:<name>`.
pub fn regular_group_algebra_category(name: &str, tol: Tolerance, cap: usize) -> Result<Arc<Category>> {
    let g = FiniteGroup::builtin(name)?;
    let h = Arc::new(HopfStarAlgebra::group_algebra(&g, name));
    let reg = Corepresentation::regular(h, &build_tol(tol))?;
    Ok(Arc::new(Category::generated_by(reg, build_tol(tol), cap)?.with_check_eps(tol.check_eps)))
}

fn s3_irrep_category(tol: Tolerance, cap: usize) -> Result<Category> {
    let g = FiniteGroup::symmetric(3);
    let (h, irr) = fun_irreps(&g, "S3")?;
    let cat = Category::builder(h)
        .tolerance(build_tol(tol))
        .cap(cap)
        .generator("std", irr[2].clone())
        .letter("triv", irr[0].clone())
        .letter("sgn", irr[1].clone())
        .build()?;
    Ok(cat.with_check_eps(tol.check_eps))
}

/// Character of each registry irreducible of a `Fun(G)` category.
fn registry_characters(cat: &Category) -> Vec<Vec<Complex64>> {
    cat.registry().entries().iter().map(|e| e.corep.blocks().iter().map(|b| b.trace()).collect()).collect()
}

fn oracle_multiplicity(chi: &[Complex64], psi: &[Complex64]) -> usize {
    character_inner(chi, psi).re.round() as usize
}

fn std_character_power(len: usize) -> Vec<Complex64> {
    character(&s3_irreps()[2]).iter().map(|c| c.powu(len as u32)).collect()
}

// Criterion 1.

fn conjugate_equations(cfg: &SelftestConfig) -> Result<CheckReport> {
    let eps = cfg.tol.check_eps;
    let mut r = CheckReport::new();
    for name in ["Z2", "Z3", "Z4", "S3"] {
        let g = FiniteGroup::builtin(name)?;
        for (family, (h, irr)) in [("CG", cg_irreps(&g, name)?), ("Fun", fun_irreps(&g, name)?)] {
            let label = format!("{family}:{name}");
            let unit = Corepresentation::trivial(h.clone());
            let (mut pair, mut inter, mut norms) = (0f64, 0f64, 0f64);
            let mut irreducible = true;
            let mut total = 0;
            for s in &irr {
                let n = s.vdim();
                total += n * n;
                irreducible &= hom(s, s, &cfg.tol)?.dim() == 1;
                let p = StandardPair::canonical(n);
                let sb = s.conjugate();
                pair = pair.max(p.check().max());
                inter = inter
                    .max(unit.intertwining_residual(&sb.tensor(s)?, &p.r_vector()))
                    .max(unit.intertwining_residual(&s.tensor(&sb)?, &p.rbar_vector()));
                let rr = (&p.r_vector().adjoint() * &p.r_vector())[(0, 0)].re;
                let rbrb = (&p.rbar_vector().adjoint() * &p.rbar_vector())[(0, 0)].re;
                norms = norms.max((rr - n as f64).abs()).max((rbrb - n as f64).abs());
            }
            r.flag(format!("{label}: every listed corepresentation is irreducible"), irreducible);
            r.flag(format!("{label}: sum of vdim^2 equals dim H"), total == h.dim());
            r.residual(format!("{label}: conjugate equations"), pair, eps);
            r.residual(format!("{label}: R and Rbar are intertwiners"), inter, eps);
            r.residual(format!("{label}: R^*R = Rbar^*Rbar = vdim"), norms, eps);
            let reg = Corepresentation::regular(h.clone(), &build_tol(cfg.tol))?;
            let p = isometric_standard_pair(&reg, &cfg.tol)?;
            let rsb = reg.conjugate();
            let res = p
                .check()
                .max()
                .max(unit.intertwining_residual(&rsb.tensor(&reg)?, &p.r_vector()))
                .max(unit.intertwining_residual(&reg.tensor(&rsb)?, &p.rbar_vector()));
            r.residual(format!("{label}: regular corepresentation pair"), res, eps);
            r.residual(format!("{label}: d(regular) = dim H"), (p.dim() - h.dim() as f64).abs(), eps);
        }
    }
    Ok(r)
}

// Criterion 2.

fn dimension_calculus(cfg: &SelftestConfig) -> Result<CheckReport> {
    let eps = cfg.tol.check_eps;
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let entries = cat.registry().entries();
    let dims: Vec<f64> =
        entries.iter().map(|e| isometric_standard_pair(&e.corep, &cfg.tol).map(|p| p.dim())).collect::<Result<_>>()?;
    let (mut mult, mut add, mut conj) = (0f64, 0f64, 0f64);
    for (i, a) in entries.iter().enumerate() {
        conj = conj.max((dims[a.conj] - dims[i]).abs());
        for (j, b) in entries.iter().enumerate() {
            let t = a.corep.tensor(&b.corep)?;
            let dt = isometric_standard_pair(&t, &cfg.tol)?.dim();
            mult = mult.max((dt - dims[i] * dims[j]).abs());
            let mut sum = 0.0;
            for (k, e) in entries.iter().enumerate() {
                sum += hom(&e.corep, &t, &cfg.tol)?.dim() as f64 * dims[k];
            }
            add = add.max((dt - sum).abs());
        }
    }
    let mut r = CheckReport::new();
    r.residual("d(pi psi) = d(pi) d(psi) over registry pairs", mult, eps);
    r.residual("d(pi psi) = sum of multiplicities times d over registry pairs", add, eps);
    r.residual("d(conj(pi)) = d(pi)", conj, eps);
    let sigma = Sigma::of(&cat);
    let words = [sigma.alternating(1), sigma.alternating(2), sigma.alternating_bar(3), sigma.power(2)];
    let (mut wmult, mut wadd, mut pairs) = (0f64, 0f64, 0f64);
    for a in &words {
        let mut sum = 0.0;
        for (k, &m) in cat.multiplicities(a).iter().enumerate() {
            sum += m as f64 * dims[k];
        }
        wadd = wadd.max((cat.dim_stat(a) - sum).abs());
        for b in &words {
            let ab = a.concat(b);
            wmult = wmult.max((cat.dim_stat(&ab) - cat.dim_stat(a) * cat.dim_stat(b)).abs());
            pairs = pairs.max(cat.standard_pair(&ab)?.check().max());
        }
    }
    r.residual("d on words is multiplicative", wmult, eps);
    r.residual("d on words is the sum over irreducible summands", wadd, eps);
    r.residual("product pairs solve the conjugate equations", pairs, eps);
    Ok(r)
}

// Criterion 3.

fn frobenius(cfg: &SelftestConfig) -> Result<CheckReport> {
    let eps = cfg.tol.check_eps;
    let round_trip = eps * 0.1;
    let c = s3_irrep_category(cfg.tol, cfg.cap)?;
    let chars: Vec<Vec<Complex64>> = s3_irreps().iter().map(character).collect();
    let names = ["triv", "sgn", "std"];
    let ids: Vec<usize> = names.iter().map(|n| c.letter_by_name(n).expect("letter")).collect();
    let mut dims_ok = true;
    let mut oracle_ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed_for(3, 0));
    let (mut image, mut back) = (0f64, 0f64);
    let mut triples: Vec<(Word, Word, Word)> = Vec::new();
    for (a, &ra) in ids.iter().enumerate() {
        for (b, &sb) in ids.iter().enumerate() {
            for (t, &tt) in ids.iter().enumerate() {
                let (r, s, tau) = (Word::letter(ra), Word::letter(sb), Word::letter(tt));
                let lhs = c.hom_dim(&r.concat(&s), &tau);
                let rhs = c.hom_dim(&s, &c.conj_word(&r).concat(&tau));
                dims_ok &= lhs == rhs;
                let prod: Vec<Complex64> = chars[a].iter().zip(&chars[b]).map(|(x, y)| x * y).collect();
                oracle_ok &= lhs == oracle_multiplicity(&chars[t], &prod);
                triples.push((r, s, tau));
            }
        }
    }
    let std = Word::letter(ids[2]);
    let sgn = Word::letter(ids[1]);
    triples.push((std.concat(&std), std.clone(), std.concat(&std).concat(&std)));
    triples.push((std.concat(&sgn), std.concat(&std), std.concat(&std).concat(&sgn)));
    for (r, s, tau) in &triples {
        let rb = c.conj_word(r);
        let lhs = c.hom_words(&r.concat(s), tau)?;
        if lhs.dim() > 0 {
            let rhs = c.hom_words(s, &rb.concat(tau))?;
            let x = random_element(&lhs, &mut rng);
            let y = c.frobenius_left(r, s, tau, &x)?;
            image = image.max(rhs.residual(&y));
            back = back.max(c.frobenius_left_inv(r, s, tau, &y)?.max_abs_diff(&x));
        }
        let lhs = c.hom_words(&s.concat(r), tau)?;
        if lhs.dim() > 0 {
            let rhs = c.hom_words(s, &tau.concat(&rb))?;
            let x = random_element(&lhs, &mut rng);
            let y = c.frobenius_right(r, s, tau, &x)?;
            image = image.max(rhs.residual(&y));
            back = back.max(c.frobenius_right_inv(r, s, tau, &y)?.max_abs_diff(&x));
        }
    }
    let mut r = CheckReport::new();
    r.flag("dim (rho sigma, tau) = dim (sigma, conj(rho) tau) on irreducible triples", dims_ok);
    r.flag("dimensions match the character oracle", oracle_ok);
    r.residual("Frobenius images are intertwiners", image, eps);
    r.residual("Frobenius round trip on random morphisms", back, round_trip);
    Ok(r)
}

// Criterion 4.

fn traces_and_expectations(cfg: &SelftestConfig) -> Result<CheckReport> {
    let eps = cfg.tol.check_eps;
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let sigma = Sigma::of(&cat);
    let (s, sb) = (sigma.s, sigma.sb);
    let mut r = CheckReport::new();

    let ss = Word(vec![s, s]);
    let dec = cat.decompose_word(&ss)?;
    let trivial = dec.minimal_projections().into_iter().find(|(l, _)| *l == 0).map(|(_, p)| p);
    match trivial {
        Some(p) => r.residual("tr of the trivial projection in s s is 1/4", (cat.trace(&ss, &p)?.re - 0.25).abs(), eps),
        None => r.flag("s s contains the trivial object", false),
    }
    let words = [
        vec![s, s],
        vec![s, sb],
        vec![s, sb, s],
        vec![s, s, s],
        vec![s, sb, s, sb],
        vec![sb, s, sb, s, sb],
        vec![s, sb, s, sb, s, sb],
    ];
    let mut e21 = 0f64;
    for w in words.iter().map(|w| Word(w.clone())) {
        let dw = cat.dim_stat(&w);
        for (label, p) in cat.decompose_word(&w)?.minimal_projections() {
            let dp = cat.registry().entry(label).dim as f64;
            e21 = e21.max((cat.trace(&w, &p)?.re - dp / dw).abs());
        }
    }
    r.residual("tr(E) = d(pi)/d(rho) for minimal projections", e21, eps);

    let hom_pairs = [
        (vec![s, s], vec![s, sb]),
        (vec![s, sb], vec![sb, s]),
        (vec![s, s, s], vec![s, sb, s]),
        (vec![s], vec![s, s, sb]),
        (vec![s, sb, s, sb], vec![s, s, s, s]),
    ];
    let mut zw = 0f64;
    for (a, b) in &hom_pairs {
        let (rho, tau) = (Word(a.clone()), Word(b.clone()));
        let (dr, dt) = (cat.dim_stat(&rho), cat.dim_stat(&tau));
        let space = cat.hom_words(&rho, &tau)?;
        for x in &space.basis {
            for y in &space.basis {
                let lhs = cat.trace(&rho, &(&y.adjoint() * x))? * dr;
                let rhs = cat.trace(&tau, &(x * &y.adjoint()))? * dt;
                zw = zw.max((lhs - rhs).norm());
            }
        }
    }
    r.residual("d(rho) tr(B^*A) = d(sigma) tr(AB^*) on hom bases", zw, eps);

    let exp_pairs =
        [(vec![s], vec![s, sb]), (vec![sb], vec![s, sb, s]), (vec![s, sb], vec![s, sb]), (vec![s, s], vec![s, s, s])];
    let (mut left, mut right, mut bimod) = (0f64, 0f64, 0f64);
    for (a, b) in &exp_pairs {
        let (rho, sig) = (Word(a.clone()), Word(b.clone()));
        let nr = cat.vdim(&rho);
        let end_sig = cat.end_basis(&sig)?;
        let rs = rho.concat(&sig);
        for x in &cat.end_basis(&rs)?.basis {
            let phi = cat.left_expectation(&rho, &sig, x)?;
            left = left.max((cat.trace(&sig, &phi)? - cat.trace(&rs, x)?).norm());
            if cat.vdim(&rs) <= 16 {
                for y in &end_sig.basis {
                    let yl = kron(&ComplexMatrix::identity(nr), y);
                    let lhs = cat.left_expectation(&rho, &sig, &(&(&yl * x) * &yl.adjoint()))?;
                    bimod = bimod.max(lhs.max_abs_diff(&(&(y * &phi) * &y.adjoint())));
                }
            }
        }
        let sr = sig.concat(&rho);
        for x in &cat.end_basis(&sr)?.basis {
            let psi = cat.right_expectation(&rho, &sig, x)?;
            right = right.max((cat.trace(&sig, &psi)? - cat.trace(&sr, x)?).norm());
        }
    }
    r.residual("tr(Phi(X)) = tr(X) on full bases", left, eps);
    r.residual("tr(Psi(X)) = tr(X) on full bases", right, eps);
    r.residual("Phi(a X b) = a Phi(X) b", bimod, eps);

    let t = Tower::build(cat.clone(), 5, TowerMode::Alternating)?;
    for n in 1..=4 {
        r.extend_prefixed(&format!("level {n}"), check_commuting_square(&t, n)?);
    }
    Ok(r)
}

// Criterion 5.

fn markov(cfg: &SelftestConfig) -> Result<CheckReport> {
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let sigma = Sigma::of(&cat);
    let rho = sigma.alternating(2);
    let mut r = CheckReport::new();
    r.extend_prefixed("rho = s s~", check_markov_for(&cat, &rho)?);
    let bc = basic_construction_for(&cat, &rho)?;
    r.extend_prefixed("rho = s s~", bc.report);
    r.flag("rho = s s~: condition holds and D = C", bc.condition && bc.dim_d == bc.dim_c);
    let small = basic_construction_for(&cat, &Word::letter(sigma.s))?;
    r.extend_prefixed("rho = s", small.report);
    r.flag("rho = s: condition fails and D is a proper ideal", !small.condition && small.dim_d < small.dim_c);
    Ok(r)
}

// Criterion 6.

fn jones(cfg: &SelftestConfig) -> Result<CheckReport> {
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let mut r = check_jones(&cat, 2)?;
    let d = cat.standard_pair(&Word::letter(Sigma::of(&cat).s))?.dim();
    r.residual("beta = d(sigma)^2 = 4", (d * d - 4.0).abs(), cfg.tol.check_eps);
    Ok(r)
}

// Criterion 7.

fn invariant(cfg: &SelftestConfig) -> Result<CheckReport> {
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let si = standard_invariant(&cat, 3, TowerMode::Alternating)?;
    let chars = registry_characters(&cat);
    let oracle = |len: usize| -> Vec<usize> {
        let cw = std_character_power(len);
        chars.iter().map(|c| oracle_multiplicity(c, &cw)).filter(|&m| m > 0).collect()
    };
    let mut r = CheckReport::new();
    for m in 0..=3 {
        r.flag(
            format!("upper row at m = {m} matches the character oracle"),
            si.top[m + 1].multiplicities == oracle(m + 1),
        );
        r.flag(format!("lower row at m = {m} matches the character oracle"), si.bottom[m].multiplicities == oracle(m));
    }
    r.flag("index is exactly 4", si.index == 4.0);
    r.flag("rows agree with the tower recomputation", si.tower_rows_agree);
    let std = &cat.letter(Sigma::of(&cat).s).corep;
    r.flag(
        "S3 std: irreducible flag is true iff sigma is irreducible",
        si.irreducible == (hom(std, std, &cfg.tol)?.dim() == 1),
    );
    let z2 = regular_group_algebra_category("Z2", cfg.tol, cfg.cap)?;
    let sz = standard_invariant(&z2, 2, TowerMode::Alternating)?;
    let reg = &z2.letter(Sigma::of(&z2).s).corep;
    r.flag(
        "regular CG:Z2: irreducible flag is true iff sigma is irreducible",
        sz.irreducible == (hom(reg, reg, &cfg.tol)?.dim() == 1),
    );
    Ok(r)
}

// Criterion 8.

fn principal_graphs(cfg: &SelftestConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    for name in ["Z2", "Z3"] {
        let cat = regular_group_algebra_category(name, cfg.tol, cfg.cap)?;
        let order = FiniteGroup::builtin(name)?.order;
        let g = principal_graph(&cat, 10)?;
        let label = format!("regular CG:{name}");
        r.flag(format!("{label}: graph stabilizes"), g.stabilized);
        let ones = vec![vec![1usize; order]; order];
        let full = g.even_vertices.len() == order && g.odd_vertices.len() == order;
        r.flag(format!("{label}: adjacency equals the group fusion oracle"), full && g.adjacency == ones);
        let t = Tower::build(cat, 7, TowerMode::Alternating)?;
        r.flag(format!("{label}: composite inclusion is primitive"), check_periodicity(&t)?.primitive);
    }
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let g = principal_graph(&cat, 10)?;
    r.flag("S3 std: graph stabilizes", g.stabilized);
    let chars = registry_characters(&cat);
    let chi = std_character_power(1);
    let mut oracle_ok = true;
    for (i, &p) in g.even_vertices.iter().enumerate() {
        let prod: Vec<Complex64> = chars[p].iter().zip(&chi).map(|(a, b)| a * b).collect();
        for (j, &q) in g.odd_vertices.iter().enumerate() {
            oracle_ok &= g.adjacency[i][j] == oracle_multiplicity(&chars[q], &prod);
        }
    }
    r.flag("S3 std: adjacency equals the character oracle", oracle_ok && g.even_vertices.len() == chars.len());
    for mode in [TowerMode::Alternating, TowerMode::SigmaOnly] {
        let t = Tower::build(cat.clone(), 7, mode)?;
        r.flag(format!("S3 std: composite inclusion is primitive ({mode})"), check_periodicity(&t)?.primitive);
    }
    let nu = check_assumption_nu(&cat, 5);
    r.flag("S3 std: assumption check returns nu = 3", nu == Some(3));
    let sigma = Sigma::of(&cat);
    r.flag("S3 std: sbar lies in sigma^2", cat.hom_dim(&Word::letter(sigma.sb), &sigma.power(2)) > 0);
    let a = standard_invariant(&cat, 3, TowerMode::Alternating)?;
    let v = standard_invariant(&cat, 3, TowerMode::SigmaOnly)?;
    r.flag(
        "S3 std: variant tower gives identical standard-invariant rows",
        nu.is_some() && v.tower_rows_agree && a.top_row() == v.top_row() && a.bottom_row() == v.bottom_row(),
    );
    Ok(r)
}

// Criterion 9.

fn fixed_point_model(cfg: &SelftestConfig) -> Result<CheckReport> {
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let sigma = Sigma::of(&cat);
    let mut r = CheckReport::new();
    for n in 1..=3 {
        r.extend_prefixed(&format!("n = {n}"), fixed_point_check(&cat, &sigma.alternating_bar(n))?);
    }
    let std = &cat.letter(sigma.s).corep;
    let mu = dual_rep(std);
    r.extend_prefixed("dual representation", mu.check(&cfg.tol));
    r.extend_prefixed("adjoint action", adjoint_action(&mu).check_axioms(&cfg.tol, cfg.seed_for(9, 0)));
    r.extend_prefixed("conjugate action", conjugate_action_equivalence(std, &cfg.tol)?);
    r.extend_prefixed("tower", tower_action_consistency(&cat, 1)?);
    let reg = regular_group_algebra_category("S3", cfg.tol, cfg.cap)?;
    r.flag("outerness criterion gives n = 1 for the regular CG:S3", outerness_criterion(&reg, 4) == Some(1));
    Ok(r)
}

// Criterion 10.

fn bimodule_maps(cfg: &SelftestConfig) -> Result<CheckReport> {
    let cat = s3_std_category(cfg.tol, cfg.cap)?;
    let sigma = Sigma::of(&cat);
    let ss = sigma.alternating(2);
    let s = Word::letter(sigma.s);
    let mut r = CheckReport::new();
    r.extend_prefixed(
        "rho = phi = psi = tau = s s~",
        verify_f_properties(&cat, &ss, &ss, &ss, &ss, cfg.seed_for(10, 0))?,
    );
    r.extend_prefixed("psi = s", verify_f_properties(&cat, &ss, &ss, &s, &ss, cfg.seed_for(10, 1))?);
    r.extend_prefixed("g_1, rho = s s~", verify_gm_factorization(&cat, &ss, 1, true, cfg.seed_for(10, 2))?);
    r.extend_prefixed("g_2", verify_gm_factorization(&cat, &Word::empty(), 2, false, cfg.seed_for(10, 3))?);
    let z2 = regular_group_algebra_category("Z2", cfg.tol, cfg.cap)?;
    r.extend_prefixed(
        "g_2, regular CG:Z2",
        verify_gm_factorization(&z2, &Word::empty(), 2, false, cfg.seed_for(10, 4))?,
    );
    r.extend_prefixed("shift", check_shift_identity(&cat, &Word::letter(sigma.sb), 3)?);
    Ok(r)
}

// Criterion 11.

fn determinism(cfg: &SelftestConfig) -> CheckReport {
    let ids: Vec<usize> = criteria_for(cfg.level).into_iter().filter(|&id| id != 11).collect();
    let once = || -> String {
        let outcomes = run_criteria(&ids, cfg);
        serde_json::to_string(&outcomes.iter().map(CriterionOutcome::to_json).collect::<Vec<_>>()).expect("json")
    };
    let (a, b) = (once(), once());
    let mut r = CheckReport::new();
    r.flag("two runs with the same seed give byte-identical JSON", a == b);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_parse_and_select_criteria() {
        assert_eq!("fast".parse::<Level>().unwrap(), Level::Fast);
        assert!("slow".parse::<Level>().is_err());
        assert_eq!(criteria_for(Level::Full).len(), 11);
        assert!(criteria_for(Level::Fast).len() < 11);
    }

    #[test]
    fn unknown_criterion_is_an_error_outcome() {
        let o = run_criterion(12, &SelftestConfig::default());
        assert!(!o.passed());
        assert!(o.error.is_some());
    }

    #[test]
    fn tiny_tolerance_reports_residuals() {
        let cfg = SelftestConfig { tol: Tolerance { rank_eps: 1e-9, check_eps: 1e-20 }, ..SelftestConfig::default() };
        let o = run_criterion(6, &cfg);
        assert!(!o.passed());
        let f = o.report.failures();
        assert!(!f.is_empty());
        assert!(f.iter().all(|c| c.residual > 1e-20));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = SelftestConfig::default();
        let four = SelftestConfig { threads: 4, ..one.clone() };
        let ids = [1, 2, 3];
        let a: Vec<Value> = run_criteria(&ids, &one).iter().map(CriterionOutcome::to_json).collect();
        let b: Vec<Value> = run_criteria(&ids, &four).iter().map(CriterionOutcome::to_json).collect();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
