//! Standard invariant rows and the principal graph.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{inclusion_matrix, require_dimension_above_one, Side, Sigma, Tower, TowerLevel, TowerMode};
use crate::catcore::{Category, Word};
use crate::error::{Error, Result};
use crate::report::{dot_id, int_matrix, real, IntMatrix};

/// The two rows `End(sigma(k))` and `End(bottom(k))` with `bottom(0) = 1` and
/// `bottom(k) = sbar sigma(k - 1)`, where `bottom(k)` sits under `sigma(k + 1)`
/// through the left embedding `T -> 1_sigma (x) T`.
#[derive(Clone, Debug)]
pub struct StandardInvariant {
    pub mode: TowerMode,
    pub depth: usize,
    pub index: f64,
    /// `top[k] = End(sigma(k))` for `k = 0..=depth + 1`.
    pub top: Vec<TowerLevel>,
    /// `bottom[k]` for `k = 0..=depth`.
    pub bottom: Vec<TowerLevel>,
    pub top_inclusions: Vec<IntMatrix>,
    pub bottom_inclusions: Vec<IntMatrix>,
    /// `vertical[k]`: `bottom[k] ⊂ top[k + 1]`.
    pub vertical: Vec<IntMatrix>,
    /// The first relative commutant `End(sigma)` is one-dimensional.
    pub irreducible: bool,
    /// Rows recomputed from the mode's tower agree with the rows above.
    pub tower_rows_agree: bool,
    /// Level `n` of the mode's tower used for the recomputation.
    pub tower_level: usize,
}

fn row_multiplicities(levels: &[TowerLevel]) -> Vec<Vec<(usize, usize)>> {
    levels.iter().map(|l| l.labels.iter().copied().zip(l.multiplicities.iter().copied()).collect()).collect()
}

impl StandardInvariant {
    /// `(label, multiplicity)` per entry of the upper row.
    pub fn top_row(&self) -> Vec<Vec<(usize, usize)>> {
        row_multiplicities(&self.top)
    }

    pub fn bottom_row(&self) -> Vec<Vec<(usize, usize)>> {
        row_multiplicities(&self.bottom)
    }

    pub fn to_json(&self, cat: &Category) -> Value {
        json!({
            "mode": self.mode.to_string(),
            "depth": self.depth,
            "index": real(self.index),
            "irreducible": self.irreducible,
            "tower_rows_agree": self.tower_rows_agree,
            "tower_level": self.tower_level,
            "top": self.top.iter().map(|l| l.to_json(cat)).collect::<Vec<_>>(),
            "bottom": self.bottom.iter().map(|l| l.to_json(cat)).collect::<Vec<_>>(),
            "top_inclusions": self.top_inclusions.iter().map(int_matrix).collect::<Vec<_>>(),
            "bottom_inclusions": self.bottom_inclusions.iter().map(int_matrix).collect::<Vec<_>>(),
            "vertical": self.vertical.iter().map(int_matrix).collect::<Vec<_>>(),
        })
    }
}

fn bottom_word(sigma: Sigma, k: usize) -> Word {
    if k == 0 {
        Word::empty()
    } else {
        sigma.alternating(k - 1).prepend(sigma.sb)
    }
}

/// Multiplicities reached from the unit inside `base` by appending `letters` one at a time,
/// using the integer inclusion matrices of the levels `base`, `base l1`, `base l1 l2`, ...
fn unit_row(cat: &Category, base: &Word, letters: &Word) -> Vec<Vec<(usize, usize)>> {
    let mut level = TowerLevel::new(cat, base.clone());
    let mut v: Vec<usize> = level.labels.iter().map(|&l| usize::from(l == 0)).collect();
    let mut out = vec![vec![(0usize, 1usize)]];
    let mut w = base.clone();
    for &l in &letters.0 {
        w = w.push(l);
        let next = TowerLevel::new(cat, w.clone());
        let m = inclusion_matrix(cat, &level, &next, l, Side::Right);
        v = (0..next.labels.len()).map(|j| (0..level.labels.len()).map(|i| v[i] * m[i][j]).sum()).collect();
        out.push(next.labels.iter().copied().zip(v.iter().copied()).filter(|&(_, k)| k > 0).collect());
        level = next;
    }
    out
}

/// Both rows of the standard invariant up to `depth`.
///
/// The rows are computed directly from the words and again from the tower of
/// the given mode: at the first level `n >= 2` whose `A^n` (resp. `B^n`)
/// contains the unit, the unit row of the composite inclusions into
/// `A^n sigma(k)` reproduces the upper (resp. lower) row.
pub fn standard_invariant(cat: &Arc<Category>, depth: usize, mode: TowerMode) -> Result<StandardInvariant> {
    let d = require_dimension_above_one(cat)?;
    let sigma = Sigma::of(cat);
    let top: Vec<TowerLevel> = (0..=depth + 1).map(|k| TowerLevel::new(cat, sigma.alternating(k))).collect();
    let bottom: Vec<TowerLevel> = (0..=depth).map(|k| TowerLevel::new(cat, bottom_word(sigma, k))).collect();
    let top_inclusions = (0..=depth)
        .map(|k| inclusion_matrix(cat, &top[k], &top[k + 1], sigma.alternating(k + 1).0[k], Side::Right))
        .collect();
    let bottom_inclusions = (0..depth)
        .map(|k| {
            let l = *bottom[k + 1].word.0.last().expect("nonempty");
            inclusion_matrix(cat, &bottom[k], &bottom[k + 1], l, Side::Right)
        })
        .collect();
    let vertical = (0..=depth).map(|k| inclusion_matrix(cat, &bottom[k], &top[k + 1], sigma.s, Side::Left)).collect();

    let search = 2 * cat.registry().len() + 4;
    let has_unit = |w: &Word| cat.multiplicities(w)[0] > 0;
    let n = (2..=search)
        .find(|&n| has_unit(&Tower::a_word(mode, sigma, n)))
        .ok_or_else(|| Error::InvalidInput("no level of the tower contains the unit object".into()))?;
    let nb = (2..=search)
        .find(|&n| has_unit(&Tower::b_word(mode, sigma, n)))
        .ok_or_else(|| Error::InvalidInput("no upper level of the tower contains the unit object".into()))?;
    let via_top = unit_row(cat, &Tower::a_word(mode, sigma, n), &sigma.alternating(depth + 1));
    let via_bottom = unit_row(cat, &Tower::b_word(mode, sigma, nb), &bottom_word(sigma, depth));
    let tower_rows_agree = via_top == row_multiplicities(&top) && via_bottom == row_multiplicities(&bottom);

    let irreducible = top[1].algebra_dim() == 1;
    Ok(StandardInvariant {
        mode,
        depth,
        index: d * d,
        top,
        bottom,
        top_inclusions,
        bottom_inclusions,
        vertical,
        irreducible,
        tower_rows_agree,
        tower_level: n,
    })
}

/// Bipartite graph of irreducibles in `(sigma sbar)^k` (even) and `(sigma sbar)^k sigma` (odd).
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalGraphData {
    pub even_vertices: Vec<usize>,
    pub odd_vertices: Vec<usize>,
    /// `adjacency[i][j] = dim(odd_j, even_i sigma)`.
    pub adjacency: IntMatrix,
    /// Largest `m` at which `sigma(m)` contributed a new vertex.
    pub depth: usize,
    pub stabilized: bool,
    pub max_depth: usize,
}

impl PrincipalGraphData {
    /// `Err(NoStabilization)` unless the graph stabilized.
    pub fn require_stabilized(&self) -> Result<()> {
        if self.stabilized {
            Ok(())
        } else {
            Err(Error::NoStabilization(self.max_depth))
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().flatten().sum()
    }

    pub fn to_json(&self, cat: &Category) -> Value {
        let lab = |v: &Vec<usize>| v.iter().map(|&l| cat.registry().entry(l).label.clone()).collect::<Vec<_>>();
        json!({
            "even_vertices": lab(&self.even_vertices),
            "odd_vertices": lab(&self.odd_vertices),
            "adjacency": int_matrix(&self.adjacency),
            "depth": self.depth,
            "stabilized": self.stabilized,
            "max_depth": self.max_depth,
        })
    }

    /// DOT with vertex ids `e<label>` and `o<label>` sorted lexicographically.
    pub fn to_dot(&self, cat: &Category) -> String {
        let reg = cat.registry();
        let mut nodes = Vec::new();
        for &v in &self.even_vertices {
            let l = &reg.entry(v).label;
            nodes.push(format!("  {} [label={}, parity=even];", dot_id(&format!("e{l}")), dot_id(l)));
        }
        for &v in &self.odd_vertices {
            let l = &reg.entry(v).label;
            nodes.push(format!("  {} [label={}, parity=odd];", dot_id(&format!("o{l}")), dot_id(l)));
        }
        let mut edges = Vec::new();
        for (i, &p) in self.even_vertices.iter().enumerate() {
            for (j, &q) in self.odd_vertices.iter().enumerate() {
                let m = self.adjacency[i][j];
                if m > 0 {
                    let a = dot_id(&format!("e{}", reg.entry(p).label));
                    let b = dot_id(&format!("o{}", reg.entry(q).label));
                    edges.push(format!("  {a} -- {b} [multiplicity={m}];"));
                }
            }
        }
        nodes.sort();
        edges.sort();
        let mut out = String::from("graph principal {\n");
        out.push_str(&format!("  graph [stabilized={}, depth={}];\n", self.stabilized, self.depth));
        for line in nodes.iter().chain(&edges) {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("}\n");
        out
    }
}

/// Principal graph from the words `sigma(0), ..., sigma(max_depth)`.
///
/// Stabilized once two consecutive depths add no vertex; the adjacency is
/// determined by the vertex sets, so edge multiplicities repeat as well.
pub fn principal_graph(cat: &Category, max_depth: usize) -> Result<PrincipalGraphData> {
    require_dimension_above_one(cat)?;
    let sigma = Sigma::of(cat);
    let mut even: Vec<usize> = Vec::new();
    let mut odd: Vec<usize> = Vec::new();
    let mut quiet = 0;
    let mut depth = 0;
    let mut stabilized = false;
    for m in 0..=max_depth {
        let mult = cat.multiplicities(&sigma.alternating(m));
        let set = if m % 2 == 0 { &mut even } else { &mut odd };
        let mut added = false;
        for (l, &k) in mult.iter().enumerate() {
            if k > 0 && !set.contains(&l) {
                set.push(l);
                added = true;
            }
        }
        if added {
            depth = m;
            quiet = 0;
        } else {
            quiet += 1;
            if quiet >= 2 {
                stabilized = true;
                break;
            }
        }
    }
    even.sort_unstable();
    odd.sort_unstable();
    let reg = cat.registry();
    let adjacency = even.iter().map(|&p| odd.iter().map(|&q| reg.right_mult(p, sigma.s, q)).collect()).collect();
    Ok(PrincipalGraphData { even_vertices: even, odd_vertices: odd, adjacency, depth, stabilized, max_depth })
}
