//! Representatives of the irreducible classes reachable from the letters.

use std::sync::Arc;

use serde_json::{json, Value};

use super::Letter;
use crate::corep::{decompose, equivalence, Corepresentation};
use crate::error::{Error, Result};
use crate::hopf::HopfStarAlgebra;
use crate::numkit::{ComplexMatrix, Tolerance};

/// One irreducible class. Label `0` is the tensor unit.
#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub label: String,
    pub corep: Corepresentation,
    pub dim: usize,
    /// Index of the conjugate class.
    pub conj: usize,
}

/// An isometry `registry irreducible -> (irreducible (x) letter)`.
#[derive(Clone, Debug)]
pub struct FusionChannel {
    pub label: usize,
    pub isometry: ComplexMatrix,
}

/// Irreducible classes found by breadth-first fusion from the unit.
///
/// Generators are explored first, so labels follow the order in which
/// classes appear in the powers of the generating letters.
#[derive(Clone, Debug)]
pub struct IrreducibleRegistry {
    entries: Vec<RegistryEntry>,
    /// `right[p][l]`: channels of `p (x) l`, sorted by label.
    right: Vec<Vec<Vec<FusionChannel>>>,
    /// `left[l][p][psi]`: multiplicity of `psi` in `l (x) p`.
    left: Vec<Vec<Vec<usize>>>,
}

fn find_class(
    entries: &[RegistryEntry],
    c: &Corepresentation,
    tol: &Tolerance,
) -> Result<Option<(usize, ComplexMatrix)>> {
    for (k, e) in entries.iter().enumerate() {
        if e.dim == c.vdim() {
            if let Some(u) = equivalence(&e.corep, c, tol)? {
                return Ok(Some((k, u)));
            }
        }
    }
    Ok(None)
}

impl IrreducibleRegistry {
    pub(super) fn build(
        alg: &Arc<HopfStarAlgebra>,
        letters: &[Letter],
        generators: &[usize],
        tol: &Tolerance,
    ) -> Result<Self> {
        let mut entries =
            vec![RegistryEntry { label: "0".into(), corep: Corepresentation::trivial(alg.clone()), dim: 1, conj: 0 }];
        let mut right: Vec<Vec<Option<Vec<FusionChannel>>>> = Vec::new();
        let all: Vec<usize> = (0..letters.len()).collect();
        for set in [generators, &all[..]] {
            let mut q = 0;
            while q < entries.len() {
                if right.len() <= q {
                    right.push(vec![None; letters.len()]);
                }
                for &l in set {
                    if right[q][l].is_some() {
                        continue;
                    }
                    let t = entries[q].corep.tensor(&letters[l].corep)?;
                    let mut chans = Vec::new();
                    for comp in decompose(&t, tol)?.components {
                        let (label, u) = match find_class(&entries, &comp.irrep, tol)? {
                            Some(found) => found,
                            None => {
                                let k = entries.len();
                                entries.push(RegistryEntry {
                                    label: k.to_string(),
                                    dim: comp.irrep.vdim(),
                                    corep: comp.irrep.clone(),
                                    conj: usize::MAX,
                                });
                                (k, ComplexMatrix::identity(comp.irrep.vdim()))
                            }
                        };
                        for v in &comp.isometries {
                            chans.push(FusionChannel { label, isometry: v * &u });
                        }
                    }
                    chans.sort_by_key(|c| c.label);
                    right[q][l] = Some(chans);
                }
                q += 1;
            }
        }
        let right: Vec<Vec<Vec<FusionChannel>>> =
            right.into_iter().map(|row| row.into_iter().map(|c| c.expect("fusion computed")).collect()).collect();
        for k in 0..entries.len() {
            let c = entries[k].corep.conjugate();
            let (j, _) = find_class(&entries, &c, tol)?
                .ok_or_else(|| Error::NotInRegistry(format!("conjugate of irreducible {k}")))?;
            entries[k].conj = j;
        }
        let mut left = vec![vec![vec![0usize; entries.len()]; entries.len()]; letters.len()];
        for (l, letter) in letters.iter().enumerate() {
            for p in 0..entries.len() {
                let t = letter.corep.tensor(&entries[p].corep)?;
                for comp in decompose(&t, tol)?.components {
                    let (psi, _) = find_class(&entries, &comp.irrep, tol)?
                        .ok_or_else(|| Error::NotInRegistry(format!("letter {} times irreducible {p}", letter.name)))?;
                    left[l][p][psi] += comp.multiplicity();
                }
            }
        }
        Ok(IrreducibleRegistry { entries, right, left })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> &RegistryEntry {
        &self.entries[k]
    }

    pub fn right_fusion(&self, p: usize, l: usize) -> &[FusionChannel] {
        &self.right[p][l]
    }

    /// Multiplicity of `psi` in `p (x) l`.
    pub fn right_mult(&self, p: usize, l: usize, psi: usize) -> usize {
        self.right[p][l].iter().filter(|c| c.label == psi).count()
    }

    /// Multiplicity of `psi` in `l (x) p`.
    pub fn left_mult(&self, l: usize, p: usize, psi: usize) -> usize {
        self.left[l][p][psi]
    }

    /// Multiplicity vector of `x (x) l` from that of `x`.
    pub fn right_step(&self, m: &[usize], l: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (p, &mp) in m.iter().enumerate() {
            if mp > 0 {
                for c in &self.right[p][l] {
                    out[c.label] += mp;
                }
            }
        }
        out
    }

    /// Multiplicity vector of `l (x) x` from that of `x`.
    pub fn left_step(&self, m: &[usize], l: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (p, &mp) in m.iter().enumerate() {
            for (psi, o) in out.iter_mut().enumerate() {
                *o += mp * self.left[l][p][psi];
            }
        }
        out
    }

    /// Labels, dimensions, conjugates and fusion multiplicities.
    pub fn to_json(&self, letters: &[Letter]) -> Value {
        let irr: Vec<Value> = self
            .entries
            .iter()
            .enumerate()
            .map(|(p, e)| {
                let fusion: serde_json::Map<String, Value> = letters
                    .iter()
                    .enumerate()
                    .map(|(l, letter)| {
                        let m: Vec<Value> = (0..self.len())
                            .filter_map(|psi| {
                                let k = self.right_mult(p, l, psi);
                                (k > 0).then(|| json!([self.entries[psi].label, k]))
                            })
                            .collect();
                        (letter.name.clone(), Value::Array(m))
                    })
                    .collect();
                json!({
                    "label": e.label,
                    "dim": e.dim,
                    "conjugate": self.entries[e.conj].label,
                    "right_fusion": fusion,
                })
            })
            .collect();
        json!({ "irreducibles": irr })
    }
}
