//! Finite groups given by multiplication tables, plus a few explicit representations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{ComplexMatrix, C1};

/// A finite group with elements `0..order` and identity `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    /// `table[g][h]` is the index of `g h`.
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    /// Validate a multiplication table: Latin square, identity at `0`, associative.
    pub fn new(order: usize, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("group of order 0".into()));
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidInput(format!("multiplication table must be {order}x{order}")));
        }
        if labels.len() != order {
            return Err(Error::InvalidInput(format!("{} labels for a group of order {order}", labels.len())));
        }
        for g in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for h in 0..order {
                let (a, b) = (table[g][h], table[h][g]);
                if a >= order || b >= order || seen_row[a] || seen_col[b] {
                    return Err(Error::InvalidInput(format!("row or column {g} is not a permutation")));
                }
                seen_row[a] = true;
                seen_col[b] = true;
            }
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, labels })
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order).find(|&h| self.table[g][h] == 0).expect("validated group has inverses")
    }

    /// Cyclic group `Z/n` with generator `1`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|a| format!("g{a}")).collect();
        FiniteGroup { order: n, table, labels }
    }

    /// Symmetric group on `n` points, elements in lexicographic order of one-line notation.
    ///
    /// The product is composition `(g h)(x) = g(h(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table =
            perms.iter().map(|g| perms.iter().map(|h| index(&h.iter().map(|&x| g[x]).collect())).collect()).collect();
        let labels = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<String>()).collect();
        FiniteGroup { order: perms.len(), table, labels }
    }

    /// Built-in groups by name: `Z<n>` or `S<n>` with `n <= 4`.
    pub fn builtin(name: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown built-in group '{name}'"));
        let (kind, n) = name.split_at(1.min(name.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" if (1..=12).contains(&n) => Ok(Self::cyclic(n)),
            "S" if (1..=4).contains(&n) => Ok(Self::symmetric(n)),
            _ => Err(bad()),
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// One matrix per group element.
pub type GroupRep = Vec<ComplexMatrix>;

/// The `n` one-dimensional characters of `Z/n`: `k -> exp(2 pi i j k / n)`.
pub fn cyclic_characters(n: usize) -> Vec<GroupRep> {
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
                    ComplexMatrix::from_vec(1, 1, vec![Complex64::from_polar(1.0, t)]).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Permutation matrices of `S_n` in the element order of [`FiniteGroup::symmetric`].
pub fn permutation_matrices(n: usize) -> GroupRep {
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut m = ComplexMatrix::zeros(n, n);
            for (x, &gx) in p.iter().enumerate() {
                m[(gx, x)] = C1;
            }
            m
        })
        .collect()
}

/// Trivial, sign and two-dimensional standard representations of `S3`.
///
/// The standard one is the permutation action restricted to the sum-zero
/// plane, written in a real orthonormal basis, so every matrix is orthogonal.
pub fn s3_irreps() -> [GroupRep; 3] {
    let perms = permutation_matrices(3);
    let r2 = 1.0 / 2f64.sqrt();
    let r6 = 1.0 / 6f64.sqrt();
    let basis = ComplexMatrix::from_real(3, 2, &[r2, r6, -r2, r6, 0.0, -2.0 * r6]).unwrap();
    let triv = perms.iter().map(|_| ComplexMatrix::identity(1)).collect();
    let sign = permutations(3)
        .iter()
        .map(|p| {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let s = if inversions % 2 == 0 { C1 } else { -C1 };
            ComplexMatrix::from_vec(1, 1, vec![s]).unwrap()
        })
        .collect();
    let std = perms.iter().map(|p| &(&basis.adjoint() * p) * &basis).collect();
    [triv, sign, std]
}

/// Character of a representation.
pub fn character(rep: &GroupRep) -> Vec<Complex64> {
    rep.iter().map(|m| m.trace()).collect()
}

/// `(1/|G|) sum_g conj(chi(g)) psi(g)`.
pub fn character_inner(chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let n = chi.len() as f64;
    chi.iter().zip(psi).map(|(a, b)| a.conj() * b).sum::<Complex64>() / n
}

/// Whether `rep` is a unitary homomorphism for `g`.
pub fn check_group_rep(g: &FiniteGroup, rep: &GroupRep, eps: f64) -> Result<()> {
    if rep.len() != g.order {
        return Err(Error::InvalidInput(format!("{} matrices for a group of order {}", rep.len(), g.order)));
    }
    let n = rep[0].rows();
    for (k, m) in rep.iter().enumerate() {
        if m.shape() != (n, n) {
            return Err(Error::InvalidInput(format!("matrix {k} is not {n}x{n}")));
        }
        let r = (&m.adjoint() * m).max_abs_diff(&ComplexMatrix::identity(n));
        if r > eps {
            return Err(Error::NotUnitary(r));
        }
    }
    for a in 0..g.order {
        for b in 0..g.order {
            let r = (&rep[a] * &rep[b]).max_abs_diff(&rep[g.mul(a, b)]);
            if r > eps {
                return Err(Error::InvalidInput(format!("not a homomorphism at ({a}, {b}), residual {r:e}")));
            }
        }
    }
    Ok(())
}
