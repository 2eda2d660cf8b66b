//! Towers of End-algebras of words in `sigma` and its conjugate.
//!
//! Two towers are supported. In [`TowerMode::Alternating`] the lower row is
//! `A^n = End(sb(n-1))` with `sb(0) = 1`, `sb(1) = sbar`, `sb(2) = sigma sbar`,
//! `sb(3) = sbar sigma sbar`, ... and the upper row is `B^n = End(sb(n-1) sigma)`.
//! In [`TowerMode::SigmaOnly`] the rows are `A^n = End(sigma^(n-1))` and
//! `B^n = End(sigma^n)`. In both towers `A^n` sits in `A^(n+1)` by tensoring
//! with a letter on the left and `A^n` sits in `B^n` by `T -> T (x) 1_sigma`.
//!
//! Levels carry combinatorial data only (labels, multiplicities, trace
//! weights), so they exist at any depth. Concrete matrices are produced on
//! demand by the checks and are subject to the category's dimension cap.

mod checks;
mod invariant;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

pub use checks::{
    basic_construction_check, basic_construction_for, check_commuting_square, check_commuting_square_perturbed,
    check_jones, check_markov, check_markov_for, cup_projection, jones_projection, BasicConstruction,
};
pub use invariant::{principal_graph, standard_invariant, PrincipalGraphData, StandardInvariant};

use crate::catcore::{Category, LetterId, Word};
use crate::error::{Error, Result};
use crate::numkit::{herm_eig, ComplexMatrix, Tolerance};
use crate::report::{dot_id, int_matrix, reals, IntMatrix};

/// Which tower to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerMode {
    Alternating,
    SigmaOnly,
}

impl FromStr for TowerMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alternating" => Ok(TowerMode::Alternating),
            "sigma-only" => Ok(TowerMode::SigmaOnly),
            _ => Err(Error::InvalidInput(format!("unknown tower mode '{s}'"))),
        }
    }
}

impl fmt::Display for TowerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerMode::Alternating => "alternating",
            TowerMode::SigmaOnly => "sigma-only",
        })
    }
}

/// `sigma` and its conjugate letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sigma {
    pub s: LetterId,
    pub sb: LetterId,
}

impl Sigma {
    /// The first generator of the category.
    pub fn of(cat: &Category) -> Self {
        let s = cat.generators()[0];
        Sigma { s, sb: cat.letter(s).conj }
    }

    /// `sigma(n) = sigma sbar sigma ...` of length `n`.
    pub fn alternating(&self, n: usize) -> Word {
        Word((0..n).map(|k| if k % 2 == 0 { self.s } else { self.sb }).collect())
    }

    /// `sb(n)`, the conjugate of `sigma(n)`.
    pub fn alternating_bar(&self, n: usize) -> Word {
        Word((0..n).map(|k| if (n - k) % 2 == 1 { self.sb } else { self.s }).collect())
    }

    pub fn power(&self, n: usize) -> Word {
        Word(vec![self.s; n])
    }
}

/// Summand data of one End-algebra in a tower.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerLevel {
    pub word: Word,
    /// Registry labels of the simple summands, ascending.
    pub labels: Vec<usize>,
    /// Multiplicity of each label, i.e. the size of the matrix block.
    pub multiplicities: Vec<usize>,
    /// Statistical dimension of each label.
    pub irrep_dims: Vec<f64>,
    /// Trace of a minimal projection in each block, `d(label) / d(word)`.
    pub trace_weights: Vec<f64>,
    pub dim_stat: f64,
}

impl TowerLevel {
    pub fn new(cat: &Category, word: Word) -> Self {
        let m = cat.multiplicities(&word);
        let d = cat.dim_stat(&word);
        let labels: Vec<usize> = (0..m.len()).filter(|&k| m[k] > 0).collect();
        let irrep_dims: Vec<f64> = labels.iter().map(|&k| cat.registry().entry(k).dim as f64).collect();
        TowerLevel {
            multiplicities: labels.iter().map(|&k| m[k]).collect(),
            trace_weights: irrep_dims.iter().map(|x| x / d).collect(),
            irrep_dims,
            labels,
            word,
            dim_stat: d,
        }
    }

    /// Dimension of the algebra, the sum of squared block sizes.
    pub fn algebra_dim(&self) -> usize {
        self.multiplicities.iter().map(|m| m * m).sum()
    }

    /// `sum mult * d(label) - d(word)`.
    pub fn dimension_defect(&self) -> f64 {
        let s: f64 = self.multiplicities.iter().zip(&self.irrep_dims).map(|(&m, d)| m as f64 * d).sum();
        (s - self.dim_stat).abs()
    }

    /// Trace of the identity under the weighted block trace.
    pub fn trace_of_identity(&self) -> f64 {
        self.multiplicities.iter().zip(&self.trace_weights).map(|(&m, w)| m as f64 * w).sum()
    }

    pub fn multiplicity_of(&self, label: usize) -> usize {
        self.labels.iter().position(|&l| l == label).map_or(0, |i| self.multiplicities[i])
    }

    pub fn to_json(&self, cat: &Category) -> Value {
        json!({
            "word": cat.display(&self.word),
            "labels": self.labels.iter().map(|&l| cat.registry().entry(l).label.clone()).collect::<Vec<_>>(),
            "multiplicities": self.multiplicities,
            "trace_weights": reals(&self.trace_weights),
            "dim_stat": crate::report::real(self.dim_stat),
        })
    }
}

/// Which side a letter is tensored on when passing to the next level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `m[i][j]` = multiplicity of `upper.labels[j]` in the letter times `lower.labels[i]`.
pub fn inclusion_matrix(
    cat: &Category,
    lower: &TowerLevel,
    upper: &TowerLevel,
    letter: LetterId,
    side: Side,
) -> IntMatrix {
    let reg = cat.registry();
    lower
        .labels
        .iter()
        .map(|&p| {
            upper
                .labels
                .iter()
                .map(|&q| match side {
                    Side::Left => reg.left_mult(letter, p, q),
                    Side::Right => reg.right_mult(p, letter, q),
                })
                .collect()
        })
        .collect()
}

/// Largest `|w_lower - M w_upper|` over an inclusion.
pub fn trace_consistency_residual(lower: &TowerLevel, upper: &TowerLevel, m: &IntMatrix) -> f64 {
    lower
        .trace_weights
        .iter()
        .zip(m)
        .map(|(wl, row)| {
            let s: f64 = row.iter().zip(&upper.trace_weights).map(|(&k, wu)| k as f64 * wu).sum();
            (wl - s).abs()
        })
        .fold(0.0, f64::max)
}

/// The two rows `A^1 ⊂ A^2 ⊂ ...` and `B^1 ⊂ B^2 ⊂ ...` with their inclusions.
#[derive(Clone, Debug)]
pub struct Tower {
    pub cat: Arc<Category>,
    pub mode: TowerMode,
    pub sigma: Sigma,
    pub d: f64,
    /// `a_levels[n - 1]` is `A^n`.
    pub a_levels: Vec<TowerLevel>,
    pub b_levels: Vec<TowerLevel>,
    /// `a_inclusions[n - 1]` is `A^n ⊂ A^(n+1)`.
    pub a_inclusions: Vec<IntMatrix>,
    pub b_inclusions: Vec<IntMatrix>,
    /// `ab_inclusions[n - 1]` is `A^n ⊂ B^n`.
    pub ab_inclusions: Vec<IntMatrix>,
}

/// Reject `d(sigma) <= 1`.
pub fn require_dimension_above_one(cat: &Category) -> Result<f64> {
    let sigma = Sigma::of(cat);
    let d = cat.dim_stat(&Word::letter(sigma.s));
    if d <= 1.0 + cat.tol().check_eps {
        return Err(Error::DimensionOne(d));
    }
    Ok(d)
}

impl Tower {
    /// Word of `A^n`, `n >= 1`.
    pub fn a_word(mode: TowerMode, sigma: Sigma, n: usize) -> Word {
        match mode {
            TowerMode::Alternating => sigma.alternating_bar(n - 1),
            TowerMode::SigmaOnly => sigma.power(n - 1),
        }
    }

    /// Word of `B^n`, `n >= 1`.
    pub fn b_word(mode: TowerMode, sigma: Sigma, n: usize) -> Word {
        Self::a_word(mode, sigma, n).push(sigma.s)
    }

    /// Letter added on the left when passing from level `n` to `n + 1`.
    pub fn left_letter(mode: TowerMode, sigma: Sigma, n: usize) -> LetterId {
        match mode {
            TowerMode::Alternating if n % 2 == 1 => sigma.sb,
            TowerMode::Alternating => sigma.s,
            TowerMode::SigmaOnly => sigma.s,
        }
    }

    /// Build levels `1..=depth`. Fails with `DimensionOne` when `d(sigma) <= 1`.
    pub fn build(cat: Arc<Category>, depth: usize, mode: TowerMode) -> Result<Tower> {
        if depth == 0 {
            return Err(Error::InvalidInput("tower depth must be at least 1".into()));
        }
        let d = require_dimension_above_one(&cat)?;
        let sigma = Sigma::of(&cat);
        let a_levels: Vec<TowerLevel> =
            (1..=depth).map(|n| TowerLevel::new(&cat, Self::a_word(mode, sigma, n))).collect();
        let b_levels: Vec<TowerLevel> =
            (1..=depth).map(|n| TowerLevel::new(&cat, Self::b_word(mode, sigma, n))).collect();
        let mut a_inclusions = Vec::new();
        let mut b_inclusions = Vec::new();
        for n in 1..depth {
            let l = Self::left_letter(mode, sigma, n);
            a_inclusions.push(inclusion_matrix(&cat, &a_levels[n - 1], &a_levels[n], l, Side::Left));
            b_inclusions.push(inclusion_matrix(&cat, &b_levels[n - 1], &b_levels[n], l, Side::Left));
        }
        let ab_inclusions =
            (0..depth).map(|k| inclusion_matrix(&cat, &a_levels[k], &b_levels[k], sigma.s, Side::Right)).collect();
        Ok(Tower { cat, mode, sigma, d, a_levels, b_levels, a_inclusions, b_inclusions, ab_inclusions })
    }

    pub fn depth(&self) -> usize {
        self.a_levels.len()
    }

    /// `[B : A] = d(sigma)^2`.
    pub fn index(&self) -> f64 {
        self.d * self.d
    }

    pub fn tol(&self) -> &Tolerance {
        self.cat.tol()
    }

    /// Largest trace-consistency residual over all inclusions of the tower.
    pub fn trace_consistency(&self) -> f64 {
        let mut r: f64 = 0.0;
        for n in 0..self.a_inclusions.len() {
            r = r.max(trace_consistency_residual(&self.a_levels[n], &self.a_levels[n + 1], &self.a_inclusions[n]));
            r = r.max(trace_consistency_residual(&self.b_levels[n], &self.b_levels[n + 1], &self.b_inclusions[n]));
        }
        for n in 0..self.depth() {
            r = r.max(trace_consistency_residual(&self.a_levels[n], &self.b_levels[n], &self.ab_inclusions[n]));
        }
        r
    }

    /// `||M||^2` for the last `A^n ⊂ B^n` inclusion and its deviation from `d(sigma)^2`.
    pub fn norm_cross_check(&self) -> Result<(f64, f64)> {
        let m = self.ab_inclusions.last().expect("depth >= 1");
        let norm_sq = spectral_norm_sq(m, self.tol())?;
        Ok((norm_sq, (norm_sq - self.index()).abs()))
    }

    pub fn to_json(&self) -> Value {
        let cat = &self.cat;
        json!({
            "mode": self.mode.to_string(),
            "d_sigma": crate::report::real(self.d),
            "index": crate::report::real(self.index()),
            "a_levels": self.a_levels.iter().map(|l| l.to_json(cat)).collect::<Vec<_>>(),
            "b_levels": self.b_levels.iter().map(|l| l.to_json(cat)).collect::<Vec<_>>(),
            "a_inclusions": self.a_inclusions.iter().map(int_matrix).collect::<Vec<_>>(),
            "b_inclusions": self.b_inclusions.iter().map(int_matrix).collect::<Vec<_>>(),
            "ab_inclusions": self.ab_inclusions.iter().map(int_matrix).collect::<Vec<_>>(),
        })
    }

    /// Bratteli diagram of both rows. Vertex `A3:1` is label `1` of `A^3`.
    pub fn to_dot(&self) -> String {
        let reg = self.cat.registry();
        let mut out = String::from("graph bratteli {\n");
        let node = |row: &str, n: usize, l: usize| dot_id(&format!("{row}{n}:{}", reg.entry(l).label));
        for (row, levels) in [("A", &self.a_levels), ("B", &self.b_levels)] {
            for (k, lev) in levels.iter().enumerate() {
                for (&l, &m) in lev.labels.iter().zip(&lev.multiplicities) {
                    out.push_str(&format!("  {} [label=\"{}\", mult={m}];\n", node(row, k + 1, l), reg.entry(l).label));
                }
            }
        }
        let mut edges =
            |row_lo: &str, lo: &TowerLevel, n_lo: usize, row_hi: &str, hi: &TowerLevel, n_hi: usize, m: &IntMatrix| {
                for (i, &p) in lo.labels.iter().enumerate() {
                    for (j, &q) in hi.labels.iter().enumerate() {
                        for _ in 0..m[i][j] {
                            out.push_str(&format!("  {} -- {};\n", node(row_lo, n_lo, p), node(row_hi, n_hi, q)));
                        }
                    }
                }
            };
        for n in 0..self.a_inclusions.len() {
            edges("A", &self.a_levels[n], n + 1, "A", &self.a_levels[n + 1], n + 2, &self.a_inclusions[n]);
            edges("B", &self.b_levels[n], n + 1, "B", &self.b_levels[n + 1], n + 2, &self.b_inclusions[n]);
        }
        for n in 0..self.depth() {
            edges("A", &self.a_levels[n], n + 1, "B", &self.b_levels[n], n + 1, &self.ab_inclusions[n]);
        }
        out.push_str("}\n");
        out
    }
}

/// Largest eigenvalue of `M M^T`.
pub fn spectral_norm_sq(m: &IntMatrix, tol: &Tolerance) -> Result<f64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Ok(0.0);
    }
    let vals: Vec<f64> = m.iter().flat_map(|r| r.iter().map(|&x| x as f64)).collect();
    let a = ComplexMatrix::from_real(rows, cols, &vals)?;
    let g = &a * &a.transpose();
    let e = herm_eig(&g, tol)?;
    Ok(*e.values.last().expect("nonempty"))
}

/// Integer matrix product.
pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

/// Whether a square nonnegative integer matrix has a strictly positive power.
///
/// Powers up to `n^2` are examined, which exceeds Wielandt's bound `(n-1)^2 + 1`.
pub fn is_primitive(m: &IntMatrix) -> bool {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return false;
    }
    let b: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = b.clone();
    for _ in 0..n * n {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        p = (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| p[i][k] && b[k][j])).collect()).collect();
    }
    false
}

/// Result of [`check_periodicity`].
#[derive(Clone, Debug, PartialEq)]
pub struct Periodicity {
    /// First level `n` (1-based) from which `A^n ⊂ A^(n+1)` repeats.
    pub start: usize,
    pub period: usize,
    /// Number of steps composed for the primitivity test.
    pub stride: usize,
    pub primitive: bool,
    pub composite: IntMatrix,
}

/// Smallest period of `(labels of A^n, inclusion A^n ⊂ A^(n+1))`, witnessed by two
/// consecutive repeats, and primitivity of the composite inclusion over one stride.
///
/// The stride is `2` for the alternating tower and `nu` for the sigma-only tower.
pub fn check_periodicity(t: &Tower) -> Result<Periodicity> {
    let stride = match t.mode {
        TowerMode::Alternating => 2,
        TowerMode::SigmaOnly => check_assumption_nu(&t.cat, t.depth().max(2))
            .ok_or_else(|| Error::InvalidInput("sigma does not satisfy the assumption on its conjugate".into()))?,
    };
    let steps: Vec<(&Vec<usize>, &IntMatrix)> =
        t.a_inclusions.iter().enumerate().map(|(k, m)| (&t.a_levels[k].labels, m)).collect();
    for period in 1..steps.len() {
        for s in 0..steps.len() {
            if s + period + 1 >= steps.len() {
                break;
            }
            if steps[s] == steps[s + period] && steps[s + 1] == steps[s + period + 1] {
                if s + stride > t.a_inclusions.len() {
                    return Err(Error::NoStabilization(t.depth()));
                }
                let mut composite = t.a_inclusions[s].clone();
                for k in 1..stride {
                    composite = int_mul(&composite, &t.a_inclusions[s + k]);
                }
                let square = t.a_levels[s].labels == t.a_levels[s + stride].labels;
                return Ok(Periodicity {
                    start: s + 1,
                    period,
                    stride,
                    primitive: square && is_primitive(&composite),
                    composite,
                });
            }
        }
    }
    Err(Error::NoStabilization(t.depth()))
}

/// Smallest `nu` in `[2, nu_max]` with `sbar` contained in `sigma^(nu - 1)`.
pub fn check_assumption_nu(cat: &Category, nu_max: usize) -> Option<usize> {
    let sigma = Sigma::of(cat);
    let sb = Word::letter(sigma.sb);
    (2..=nu_max).find(|&nu| cat.hom_dim(&sb, &sigma.power(nu - 1)) > 0)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catcore::DEFAULT_CAP;
    use crate::corep::Corepresentation;
    use crate::hopf::group::{character, character_inner, cyclic_characters, s3_irreps};
    use crate::hopf::{FiniteGroup, HopfStarAlgebra};

    pub(crate) fn s3_std() -> Arc<Category> {
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        let std = Corepresentation::from_group_rep(h, &g, &s3_irreps()[2]).unwrap();
        Arc::new(Category::generated_by(std, Tolerance::default(), DEFAULT_CAP).unwrap())
    }

    pub(crate) fn regular_cg(name: &str) -> Arc<Category> {
        let g = FiniteGroup::builtin(name).unwrap();
        let h = Arc::new(HopfStarAlgebra::group_algebra(&g, name));
        let tol = Tolerance::default();
        let reg = Corepresentation::regular(h, &tol).unwrap();
        Arc::new(Category::generated_by(reg, tol, DEFAULT_CAP).unwrap())
    }

    /// Character of each registry irreducible of a `Fun(G)` category.
    fn registry_characters(cat: &Category) -> Vec<Vec<num_complex::Complex64>> {
        cat.registry().entries().iter().map(|e| e.corep.blocks().iter().map(|b| b.trace()).collect()).collect()
    }

    #[test]
    fn sigma_words_follow_the_alternating_pattern() {
        let s = Sigma { s: 0, sb: 1 };
        assert_eq!(s.alternating(3), Word(vec![0, 1, 0]));
        assert_eq!(s.alternating_bar(1), Word(vec![1]));
        assert_eq!(s.alternating_bar(2), Word(vec![0, 1]));
        assert_eq!(s.alternating_bar(3), Word(vec![1, 0, 1]));
        for n in 1..6 {
            let next = Tower::a_word(TowerMode::Alternating, s, n + 1);
            let prev = Tower::a_word(TowerMode::Alternating, s, n);
            assert_eq!(next, prev.prepend(Tower::left_letter(TowerMode::Alternating, s, n)));
        }
    }

    #[test]
    fn s3_tower_matches_character_oracle() {
        let cat = s3_std();
        let t = Tower::build(cat.clone(), 5, TowerMode::Alternating).unwrap();
        let chars = registry_characters(&cat);
        let chi_std: Vec<_> = character(&s3_irreps()[2]);
        for (lev_row, levels) in [("A", &t.a_levels), ("B", &t.b_levels)] {
            for lev in levels.iter() {
                let len = lev.word.len() as u32;
                let chi_w: Vec<_> = chi_std.iter().map(|c| c.powu(len)).collect();
                for (k, ch) in chars.iter().enumerate() {
                    let expect = character_inner(ch, &chi_w).re.round() as usize;
                    assert_eq!(lev.multiplicity_of(k), expect, "{lev_row} {:?}", lev.word);
                }
                assert!(lev.dimension_defect() < 1e-10);
                assert!((lev.trace_of_identity() - 1.0).abs() < 1e-12);
            }
        }
        for (k, m) in t.ab_inclusions.iter().enumerate() {
            let lo = &t.a_levels[k];
            let hi = &t.b_levels[k];
            for (i, &p) in lo.labels.iter().enumerate() {
                for (j, &q) in hi.labels.iter().enumerate() {
                    let prod: Vec<_> = chars[p].iter().zip(&chi_std).map(|(a, b)| a * b).collect();
                    assert_eq!(m[i][j], character_inner(&chars[q], &prod).re.round() as usize);
                }
            }
        }
        assert!(t.trace_consistency() < 1e-12);
        let counts: Vec<usize> = t.a_levels.iter().map(|l| l.labels.len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 3, 3]);
        let (norm_sq, dev) = t.norm_cross_check().unwrap();
        assert!((norm_sq - 4.0).abs() < 1e-9 && dev < 1e-9);
    }

    #[test]
    fn dimension_one_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "Z2"));
        let chi = Corepresentation::from_group_rep(h, &g, &cyclic_characters(2)[1]).unwrap();
        let cat = Arc::new(Category::generated_by(chi, Tolerance::default(), DEFAULT_CAP).unwrap());
        assert!(matches!(Tower::build(cat, 3, TowerMode::Alternating), Err(Error::DimensionOne(_))));
    }

    #[test]
    fn regular_z2_first_upper_level_has_two_one_dimensional_summands() {
        let t = Tower::build(regular_cg("Z2"), 3, TowerMode::Alternating).unwrap();
        assert_eq!(t.b_levels[0].multiplicities, vec![1, 1]);
        assert!((t.index() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn periodicity_and_primitivity() {
        let t = Tower::build(s3_std(), 7, TowerMode::Alternating).unwrap();
        let p = check_periodicity(&t).unwrap();
        assert_eq!(p.period, 1);
        assert!(p.primitive);
        let t = Tower::build(regular_cg("Z3"), 7, TowerMode::Alternating).unwrap();
        let p = check_periodicity(&t).unwrap();
        assert!(p.primitive);
        assert_eq!(t.a_levels.last().unwrap().labels.len(), 3);
        let t = Tower::build(s3_std(), 7, TowerMode::SigmaOnly).unwrap();
        assert!(check_periodicity(&t).unwrap().primitive);
    }

    #[test]
    fn block_diagonal_matrix_is_not_primitive() {
        assert!(!is_primitive(&vec![vec![1, 0], vec![0, 1]]));
        assert!(!is_primitive(&vec![vec![0, 1], vec![1, 0]]));
        assert!(is_primitive(&vec![vec![1, 1], vec![1, 0]]));
        assert!(!is_primitive(&vec![]));
    }

    #[test]
    fn assumption_nu_uses_the_smallest_exponent() {
        assert_eq!(check_assumption_nu(&s3_std(), 5), Some(2));
        let g = FiniteGroup::cyclic(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "Z3"));
        let chi = Corepresentation::from_group_rep(h, &g, &cyclic_characters(3)[1]).unwrap();
        let cat = Category::generated_by(chi, Tolerance::default(), DEFAULT_CAP).unwrap();
        assert_eq!(check_assumption_nu(&cat, 5), Some(3));
        assert_eq!(check_assumption_nu(&cat, 2), None);
    }

    #[test]
    fn left_inclusions_transpose_under_frobenius() {
        let cat = s3_std();
        let t = Tower::build(cat.clone(), 5, TowerMode::Alternating).unwrap();
        let sigma = t.sigma;
        for k in 0..t.depth() {
            let lo = &t.a_levels[k];
            let hi = &t.b_levels[k];
            let up = inclusion_matrix(&cat, hi, lo, sigma.sb, Side::Right);
            for i in 0..lo.labels.len() {
                for j in 0..hi.labels.len() {
                    assert_eq!(t.ab_inclusions[k][i][j], up[j][i]);
                }
            }
        }
    }

    #[test]
    fn exports_are_deterministic() {
        let t = Tower::build(s3_std(), 3, TowerMode::Alternating).unwrap();
        assert_eq!(t.to_json().to_string(), t.to_json().to_string());
        assert!(t.to_dot().starts_with("graph bratteli {"));
        assert_eq!(t.to_json()["index"].to_string(), "4.0000000000000000e+0");
    }
}
