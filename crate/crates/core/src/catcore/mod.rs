//! The rigid C*-tensor category of unitary corepresentations.
//!
//! Objects are [`Word`]s: strict tensor products of letters. Each letter is a
//! corepresentation paired with a conjugate letter; words are realized left to
//! right as Kronecker products. The [`IrreducibleRegistry`] holds one
//! representative per irreducible class reachable from the letters, together
//! with explicit isometries for every `irreducible (x) letter`. Composing those
//! along a word gives an orthonormal path basis of the word, so `End(word)` and
//! all intertwiner spaces between words come out as explicit matrix units.

mod decorated;
mod pairs;
mod registry;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use decorated::DecoratedObject;
pub use pairs::{isometric_standard_pair, StandardPair};
pub use registry::{FusionChannel, IrreducibleRegistry, RegistryEntry};

use crate::corep::Corepresentation;
use crate::error::{Error, Result};
use crate::hopf::HopfStarAlgebra;
use crate::numkit::{ComplexMatrix, MorphismSpace, Tolerance, C0};

/// Default cap on the vector-space dimension of realized words.
pub const DEFAULT_CAP: usize = 256;

pub type LetterId = usize;

/// A generating object together with its conjugate letter.
#[derive(Clone, Debug)]
pub struct Letter {
    pub name: String,
    pub corep: Corepresentation,
    pub conj: LetterId,
    /// Whether the letter was added as a conjugate (`bar`) of another.
    pub barred: bool,
}

/// A finite sequence of letters, read as a left-to-right tensor product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(pub Vec<LetterId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: LetterId) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn push(&self, l: LetterId) -> Word {
        let mut w = self.0.clone();
        w.push(l);
        Word(w)
    }

    pub fn prepend(&self, l: LetterId) -> Word {
        let mut w = vec![l];
        w.extend(&self.0);
        Word(w)
    }
}

/// Isotypic data of a word in the path basis.
#[derive(Clone, Debug)]
pub struct WordDecomposition {
    pub vdim: usize,
    /// `(registry label, isometries registry irreducible -> word)`, sorted by label.
    pub components: Vec<(usize, Vec<ComplexMatrix>)>,
}

impl WordDecomposition {
    pub fn multiplicity(&self, label: usize) -> usize {
        self.components.iter().find(|(l, _)| *l == label).map_or(0, |(_, v)| v.len())
    }

    /// Minimal projections, grouped by label.
    pub fn minimal_projections(&self) -> Vec<(usize, ComplexMatrix)> {
        self.components.iter().flat_map(|(l, isos)| isos.iter().map(move |v| (*l, v * &v.adjoint()))).collect()
    }

    pub fn central_projection(&self, label: usize) -> Option<ComplexMatrix> {
        let (_, isos) = self.components.iter().find(|(l, _)| *l == label)?;
        let mut p = ComplexMatrix::zeros(self.vdim, self.vdim);
        for v in isos {
            p += &(v * &v.adjoint());
        }
        Some(p)
    }
}

/// A corepresentation category with a fixed set of letters and its registry.
#[derive(Clone, Debug)]
pub struct Category {
    algebra: Arc<HopfStarAlgebra>,
    tol: Tolerance,
    cap: usize,
    letters: Vec<Letter>,
    generators: Vec<LetterId>,
    registry: IrreducibleRegistry,
}

/// Collects letters before the registry is built.
pub struct CategoryBuilder {
    algebra: Arc<HopfStarAlgebra>,
    tol: Tolerance,
    cap: usize,
    generators: Vec<(String, Corepresentation)>,
    extras: Vec<(String, Corepresentation)>,
}

impl CategoryBuilder {
    pub fn tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// A letter whose fusion generates the registry. Its conjugate is added too.
    pub fn generator(mut self, name: impl Into<String>, corep: Corepresentation) -> Self {
        self.generators.push((name.into(), corep));
        self
    }

    /// A letter available in words but explored only after the generators.
    pub fn letter(mut self, name: impl Into<String>, corep: Corepresentation) -> Self {
        self.extras.push((name.into(), corep));
        self
    }

    pub fn build(self) -> Result<Category> {
        let mut letters = Vec::new();
        let mut generators = Vec::new();
        let all = self.generators.iter().map(|g| (g, true)).chain(self.extras.iter().map(|g| (g, false)));
        for ((name, corep), is_gen) in all {
            if !Arc::ptr_eq(corep.algebra(), &self.algebra) && **corep.algebra() != *self.algebra {
                return Err(Error::AlgebraMismatch);
            }
            corep.validate(&self.tol)?;
            let id = letters.len();
            letters.push(Letter { name: name.clone(), corep: corep.clone(), conj: id + 1, barred: false });
            letters.push(Letter { name: format!("{name}~"), corep: corep.conjugate(), conj: id, barred: true });
            if is_gen {
                generators.extend([id, id + 1]);
            }
        }
        let registry = IrreducibleRegistry::build(&self.algebra, &letters, &generators, &self.tol)?;
        Ok(Category { algebra: self.algebra, tol: self.tol, cap: self.cap, letters, generators, registry })
    }
}

impl Category {
    pub fn builder(algebra: Arc<HopfStarAlgebra>) -> CategoryBuilder {
        CategoryBuilder { algebra, tol: Tolerance::default(), cap: DEFAULT_CAP, generators: vec![], extras: vec![] }
    }

    /// Category generated by one corepresentation `sigma` and its conjugate.
    /// Letter `0` is `sigma`, letter `1` is its conjugate.
    pub fn generated_by(sigma: Corepresentation, tol: Tolerance, cap: usize) -> Result<Self> {
        let alg = sigma.algebra().clone();
        Self::builder(alg).tolerance(tol).cap(cap).generator("s", sigma).build()
    }

    /// The same category with another threshold for reported checks.
    pub fn with_check_eps(mut self, check_eps: f64) -> Self {
        self.tol.check_eps = check_eps;
        self
    }

    pub fn algebra(&self) -> &Arc<HopfStarAlgebra> {
        &self.algebra
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id]
    }

    pub fn generators(&self) -> &[LetterId] {
        &self.generators
    }

    pub fn letter_by_name(&self, name: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l.name == name)
    }

    pub fn registry(&self) -> &IrreducibleRegistry {
        &self.registry
    }

    /// Vector-space dimension of a word (product of letter dimensions).
    pub fn vdim(&self, w: &Word) -> usize {
        w.0.iter().map(|&l| self.letters[l].corep.vdim()).product()
    }

    fn check_cap(&self, w: &Word) -> Result<usize> {
        let n = self.vdim(w);
        if n > self.cap {
            return Err(Error::CapExceeded { dim: n, cap: self.cap });
        }
        Ok(n)
    }

    /// Conjugate word: reversed, each letter replaced by its conjugate.
    pub fn conj_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&l| self.letters[l].conj).collect())
    }

    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.0.iter().map(|&l| self.letters[l].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// The word as a corepresentation (Kronecker product of its letters).
    pub fn realize(&self, w: &Word) -> Result<Corepresentation> {
        self.check_cap(w)?;
        let mut out = Corepresentation::trivial(self.algebra.clone());
        for &l in &w.0 {
            out = out.tensor(&self.letters[l].corep)?;
        }
        Ok(out)
    }

    /// Multiplicity of each registry irreducible in the word, without matrices.
    pub fn multiplicities(&self, w: &Word) -> Vec<usize> {
        let mut m = vec![0usize; self.registry.len()];
        m[0] = 1;
        for &l in &w.0 {
            m = self.registry.right_step(&m, l);
        }
        m
    }

    /// Isotypic decomposition of a word in the path basis.
    pub fn decompose_word(&self, w: &Word) -> Result<WordDecomposition> {
        self.check_cap(w)?;
        let mut comps: Vec<(usize, Vec<ComplexMatrix>)> = vec![(0, vec![ComplexMatrix::identity(1)])];
        let mut n = 1;
        for &l in &w.0 {
            let dl = self.letters[l].corep.vdim();
            let mut next: Vec<Vec<ComplexMatrix>> = vec![Vec::new(); self.registry.len()];
            for (p, isos) in &comps {
                for v in isos {
                    for ch in self.registry.right_fusion(*p, l) {
                        next[ch.label].push(kron_id_mul(v, dl, &ch.isometry));
                    }
                }
            }
            n *= dl;
            comps = next.into_iter().enumerate().filter(|(_, v)| !v.is_empty()).collect();
        }
        Ok(WordDecomposition { vdim: n, components: comps })
    }

    /// Intertwiners `w1 -> w2`, orthonormal for `Tr(B^* A)`.
    pub fn hom_words(&self, w1: &Word, w2: &Word) -> Result<MorphismSpace> {
        let d1 = self.decompose_word(w1)?;
        let d2 = self.decompose_word(w2)?;
        Ok(hom_from_decompositions(&d1, &d2, &self.registry))
    }

    /// Orthonormal basis of `End(w)` made of rescaled matrix units.
    pub fn end_basis(&self, w: &Word) -> Result<MorphismSpace> {
        let d = self.decompose_word(w)?;
        Ok(hom_from_decompositions(&d, &d, &self.registry))
    }

    /// `dim End(w) = sum of squared multiplicities`, without matrices.
    pub fn end_dim(&self, w: &Word) -> usize {
        self.multiplicities(w).iter().map(|m| m * m).sum()
    }

    /// `dim (w1, w2)` without matrices.
    pub fn hom_dim(&self, w1: &Word, w2: &Word) -> usize {
        self.multiplicities(w1).iter().zip(self.multiplicities(w2)).map(|(a, b)| a * b).sum()
    }
}

/// `(V (x) 1_l) W` without forming the Kronecker product.
fn kron_id_mul(v: &ComplexMatrix, dl: usize, w: &ComplexMatrix) -> ComplexMatrix {
    let (nv, dp) = v.shape();
    let dpsi = w.cols();
    let mut out = ComplexMatrix::zeros(nv * dl, dpsi);
    for a in 0..nv {
        for b in 0..dp {
            let x = v[(a, b)];
            if x == C0 {
                continue;
            }
            for c in 0..dl {
                for y in 0..dpsi {
                    out[(a * dl + c, y)] += x * w[(b * dl + c, y)];
                }
            }
        }
    }
    out
}

fn hom_from_decompositions(d1: &WordDecomposition, d2: &WordDecomposition, reg: &IrreducibleRegistry) -> MorphismSpace {
    let mut basis = Vec::new();
    for (l, isos2) in &d2.components {
        if let Some((_, isos1)) = d1.components.iter().find(|(m, _)| m == l) {
            let s = 1.0 / (reg.entry(*l).dim as f64).sqrt();
            for a in isos2 {
                for b in isos1 {
                    basis.push((a * &b.adjoint()).scale_re(s));
                }
            }
        }
    }
    MorphismSpace { rows: d2.vdim, cols: d1.vdim, basis }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
