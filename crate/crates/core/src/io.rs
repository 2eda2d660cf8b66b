//! JSON input files: Hopf algebras, groups, corepresentations and group
//! representations.
//!
//! Complex numbers are `[re, im]` pairs and structure constants are sparse:
//!
//! * Hopf algebra: `{name?, dim, basis?, unit: [[i, c]], mult: [[i, j, k, c]],
//!   comult: [[i, j, k, c]], counit: [[i, c]], antipode: [[i, j, c]], star: [[i, j, c]]}`
//!   where `mult` gives the coefficient of `b_k` in `b_i b_j`, `comult` the
//!   coefficient of `b_j (x) b_k` in `Delta(b_i)`, and `antipode`/`star` the
//!   coefficient of `b_j` in `S(b_i)`/`b_i^*`.
//! * Group: `{order, table, labels?}` with identity `0`.
//! * Corepresentation: `{algebra_ref, vdim, coeff: [[i, j, h, re, im]]}`, or
//!   `{algebra_ref, regular: true}` for the regular corepresentation.
//! * Group representation: `{group, matrices}` with one matrix per element
//!   (rows of `[re, im]`), read as a corepresentation of `Fun(G)`.
//!
//! `algebra_ref` and `group` are built-in names (`Fun:S3`, `CG:Z2`, `S3`) or
//! paths relative to the referring file.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::corep::Corepresentation;
use crate::error::{Error, Result};
use crate::hopf::group::GroupRep;
use crate::hopf::{FiniteGroup, HopfStarAlgebra};
use crate::numkit::{ComplexMatrix, Tolerance, C0};

type Pair = [f64; 2];

fn c(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfSpec {
    name: Option<String>,
    dim: usize,
    basis: Option<Vec<String>>,
    unit: Vec<(usize, Pair)>,
    mult: Vec<(usize, usize, usize, Pair)>,
    comult: Vec<(usize, usize, usize, Pair)>,
    counit: Vec<(usize, Pair)>,
    antipode: Vec<(usize, usize, Pair)>,
    star: Vec<(usize, usize, Pair)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    order: usize,
    table: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorepSpec {
    algebra_ref: String,
    vdim: Option<usize>,
    #[serde(default)]
    coeff: Vec<(usize, usize, usize, f64, f64)>,
    #[serde(default)]
    regular: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepSpec {
    group: Value,
    matrices: Vec<Vec<Vec<Pair>>>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum SpecDocument {
    Hopf(HopfStarAlgebra),
    Group(FiniteGroup),
    Corep(Corepresentation),
}

impl SpecDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecDocument::Hopf(_) => "hopf",
            SpecDocument::Group(_) => "group",
            SpecDocument::Corep(_) => "corep",
        }
    }
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse { path: path.display().to_string(), message: message.into() }
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))
}

fn typed<T: for<'de> Deserialize<'de>>(path: &Path, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| parse_err(path, e.to_string()))
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

fn check_index(path: &Path, what: &str, i: usize, n: usize) -> Result<()> {
    if i >= n {
        return Err(parse_err(path, format!("{what} index {i} out of range for dimension {n}")));
    }
    Ok(())
}

/// Load any supported document, recognised by its fields.
pub fn load(path: &Path) -> Result<SpecDocument> {
    let v = read_json(path)?;
    parse_document(path, v)
}

fn parse_document(path: &Path, v: Value) -> Result<SpecDocument> {
    let obj = v.as_object().ok_or_else(|| parse_err(path, "expected a JSON object"))?;
    if obj.contains_key("mult") {
        Ok(SpecDocument::Hopf(parse_hopf(path, v)?))
    } else if obj.contains_key("table") {
        Ok(SpecDocument::Group(parse_group(path, v)?))
    } else if obj.contains_key("algebra_ref") {
        Ok(SpecDocument::Corep(parse_corep(path, v)?))
    } else if obj.contains_key("matrices") {
        Ok(SpecDocument::Corep(parse_group_rep(path, v)?))
    } else {
        Err(parse_err(path, "not a Hopf algebra, group, corepresentation or group representation document"))
    }
}

/// Load a corepresentation or group-representation file.
pub fn load_corep(path: &Path) -> Result<Corepresentation> {
    match load(path)? {
        SpecDocument::Corep(c) => Ok(c),
        other => Err(parse_err(path, format!("expected a corepresentation, found a {} document", other.kind()))),
    }
}

fn parse_hopf(path: &Path, v: Value) -> Result<HopfStarAlgebra> {
    let s: HopfSpec = typed(path, v)?;
    let n = s.dim;
    let labels = s.basis.unwrap_or_else(|| (0..n).map(|i| format!("b{i}")).collect());
    if labels.len() != n {
        return Err(parse_err(path, format!("{} basis labels for dimension {n}", labels.len())));
    }
    let vector = |entries: &[(usize, Pair)], what: &str| -> Result<Vec<Complex64>> {
        let mut out = vec![C0; n];
        for &(i, z) in entries {
            check_index(path, what, i, n)?;
            out[i] += c(z);
        }
        Ok(out)
    };
    let square = |entries: &[(usize, usize, Pair)], what: &str| -> Result<Vec<Vec<Complex64>>> {
        let mut out = vec![vec![C0; n]; n];
        for &(i, j, z) in entries {
            check_index(path, what, i.max(j), n)?;
            out[i][j] += c(z);
        }
        Ok(out)
    };
    let unit = vector(&s.unit, "unit")?;
    let counit = vector(&s.counit, "counit")?;
    let mut mult = vec![vec![vec![C0; n]; n]; n];
    for &(i, j, k, z) in &s.mult {
        check_index(path, "mult", i.max(j).max(k), n)?;
        mult[i][j][k] += c(z);
    }
    let mut comult = vec![ComplexMatrix::zeros(n, n); n];
    for &(i, j, k, z) in &s.comult {
        check_index(path, "comult", i.max(j).max(k), n)?;
        comult[i][(j, k)] += c(z);
    }
    let antipode = square(&s.antipode, "antipode")?;
    let star = square(&s.star, "star")?;
    let name =
        s.name.unwrap_or_else(|| path.file_stem().map_or("algebra".into(), |f| f.to_string_lossy().into_owned()));
    HopfStarAlgebra::from_structure_constants(name, labels, unit, mult, comult, counit, antipode, star)
}

fn parse_group(path: &Path, v: Value) -> Result<FiniteGroup> {
    let s: GroupSpec = typed(path, v)?;
    let labels = s.labels.unwrap_or_else(|| (0..s.order).map(|g| format!("g{g}")).collect());
    FiniteGroup::new(s.order, s.table, labels)
}

fn resolve_algebra(path: &Path, reference: &str) -> Result<HopfStarAlgebra> {
    if reference.contains(':') && !reference.ends_with(".json") {
        return HopfStarAlgebra::builtin(reference);
    }
    let target = resolve(path, reference);
    match load(&target)? {
        SpecDocument::Hopf(h) => Ok(h),
        other => Err(parse_err(path, format!("algebra_ref points to a {} document", other.kind()))),
    }
}

fn parse_corep(path: &Path, v: Value) -> Result<Corepresentation> {
    let s: CorepSpec = typed(path, v)?;
    let h = Arc::new(resolve_algebra(path, &s.algebra_ref)?);
    if s.regular {
        if !s.coeff.is_empty() {
            return Err(parse_err(path, "a regular corepresentation takes no coefficients"));
        }
        return Corepresentation::regular(h, &Tolerance::default());
    }
    let vdim = s.vdim.ok_or_else(|| parse_err(path, "missing field `vdim`"))?;
    let mut entries = Vec::with_capacity(s.coeff.len());
    for &(i, j, b, re, im) in &s.coeff {
        check_index(path, "coefficient row", i.max(j), vdim)?;
        check_index(path, "basis", b, h.dim())?;
        entries.push((i, j, b, Complex64::new(re, im)));
    }
    Corepresentation::from_entries(h, vdim, &entries)
}

fn resolve_group(path: &Path, g: &Value) -> Result<FiniteGroup> {
    match g {
        Value::String(name) if name.ends_with(".json") => match load(&resolve(path, name))? {
            SpecDocument::Group(g) => Ok(g),
            other => Err(parse_err(path, format!("group points to a {} document", other.kind()))),
        },
        Value::String(name) => FiniteGroup::builtin(name),
        Value::Object(_) => parse_group(path, g.clone()),
        _ => Err(parse_err(path, "`group` must be a name, a path or an inline group")),
    }
}

fn parse_group_rep(path: &Path, v: Value) -> Result<Corepresentation> {
    let s: GroupRepSpec = typed(path, v)?;
    let g = resolve_group(path, &s.group)?;
    let mut rep: GroupRep = Vec::with_capacity(s.matrices.len());
    for (k, m) in s.matrices.iter().enumerate() {
        let rows = m.len();
        if rows == 0 || m.iter().any(|r| r.len() != rows) {
            return Err(parse_err(path, format!("matrix {k} is not square")));
        }
        rep.push(ComplexMatrix::from_fn(rows, rows, |i, j| c(m[i][j])));
    }
    let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, &group_name(&s.group)));
    Corepresentation::from_group_rep(h, &g, &rep)
}

fn group_name(g: &Value) -> String {
    match g {
        Value::String(s) => Path::new(s).file_stem().map_or(s.clone(), |f| f.to_string_lossy().into_owned()),
        _ => "G".into(),
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Sparse JSON form of an algebra, readable by [`load`].
pub fn hopf_to_json(h: &HopfStarAlgebra) -> Value {
    let n = h.dim();
    let vec1 = |v: &[Complex64]| -> Vec<Value> {
        v.iter().enumerate().filter(|(_, z)| **z != C0).map(|(i, z)| json!([i, pair(*z)])).collect()
    };
    let mat = |f: &dyn Fn(usize, usize) -> Complex64| -> Vec<Value> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let z = f(i, j);
                if z != C0 {
                    out.push(json!([i, j, pair(z)]));
                }
            }
        }
        out
    };
    let triples = |t: &[(usize, usize, usize, Complex64)]| -> Vec<Value> {
        t.iter().map(|&(i, j, k, z)| json!([i, j, k, pair(z)])).collect()
    };
    let mut m = Map::new();
    m.insert("name".into(), json!(h.name()));
    m.insert("dim".into(), json!(n));
    m.insert("basis".into(), json!(h.labels()));
    m.insert("unit".into(), json!(vec1(h.unit())));
    m.insert("mult".into(), json!(triples(h.mult_nonzeros())));
    m.insert("comult".into(), json!(triples(h.comult_nonzeros())));
    m.insert("counit".into(), json!(vec1(h.counit_vector())));
    m.insert("antipode".into(), json!(mat(&|i, j| h.antipode_coeff(i, j))));
    m.insert("star".into(), json!(mat(&|i, j| h.star_coeff(i, j))));
    Value::Object(m)
}

/// Sparse JSON form of a corepresentation over `algebra_ref`.
pub fn corep_to_json(s: &Corepresentation, algebra_ref: &str) -> Value {
    let mut coeff = Vec::new();
    for (h, b) in s.blocks().iter().enumerate() {
        for i in 0..s.vdim() {
            for j in 0..s.vdim() {
                let z = b[(i, j)];
                if z != C0 {
                    coeff.push(json!([i, j, h, z.re, z.im]));
                }
            }
        }
    }
    json!({ "algebra_ref": algebra_ref, "vdim": s.vdim(), "coeff": coeff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::group::s3_irreps;

    fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
        p
    }

    fn tmpdir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("tensorcat-io-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn hopf_round_trip() {
        let d = tmpdir("hopf");
        let g = FiniteGroup::symmetric(3);
        let h = HopfStarAlgebra::group_algebra(&g, "S3");
        let p = write(&d, "cg_s3.json", &hopf_to_json(&h));
        match load(&p).unwrap() {
            SpecDocument::Hopf(back) => {
                assert_eq!(back, h);
                assert!(back.check_axioms(&Tolerance::default()).passed());
            }
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn corep_references_a_file_or_a_builtin() {
        let d = tmpdir("corep");
        let g = FiniteGroup::symmetric(3);
        let h = Arc::new(HopfStarAlgebra::fun_algebra(&g, "S3"));
        write(&d, "fun_s3.json", &hopf_to_json(&h));
        let s = Corepresentation::from_group_rep(h, &g, &s3_irreps()[2]).unwrap();
        let by_file = load_corep(&write(&d, "a.json", &corep_to_json(&s, "fun_s3.json"))).unwrap();
        let by_name = load_corep(&write(&d, "b.json", &corep_to_json(&s, "Fun:S3"))).unwrap();
        for c in [by_file, by_name] {
            assert_eq!(c.blocks(), s.blocks());
        }
    }

    #[test]
    fn group_rep_shortcut() {
        let d = tmpdir("grep");
        let mats: Vec<Value> = s3_irreps()[2]
            .iter()
            .map(|m| json!((0..2).map(|i| (0..2).map(|j| pair(m[(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>()))
            .collect();
        let c = load_corep(&write(&d, "std.json", &json!({ "group": "S3", "matrices": mats }))).unwrap();
        assert_eq!(c.vdim(), 2);
        assert!(c.validate(&Tolerance::default()).is_ok());
        let reg = load_corep(&write(&d, "reg.json", &json!({ "algebra_ref": "CG:Z2", "regular": true }))).unwrap();
        assert_eq!(reg.vdim(), 2);
    }

    #[test]
    fn parse_errors_carry_position_and_path() {
        let d = tmpdir("err");
        let p = d.join("bad.json");
        std::fs::write(&p, "{\"order\": 2,\n \"table\": [[0, 1], [1, 0]").unwrap();
        let e = load(&p).unwrap_err();
        assert!(matches!(&e, Error::Parse { message, .. } if message.contains("line 2")), "{e}");
        let missing = load(&d.join("missing.json")).unwrap_err();
        assert!(matches!(missing, Error::Io { .. }));
        let p = write(&d, "idx.json", &json!({ "algebra_ref": "Fun:Z2", "vdim": 1, "coeff": [[0, 0, 5, 1.0, 0.0]] }));
        assert!(matches!(load(&p), Err(Error::Parse { .. })));
    }

    #[test]
    fn group_table_is_validated() {
        let d = tmpdir("grp");
        let ok = write(&d, "z2.json", &json!({ "order": 2, "table": [[0, 1], [1, 0]] }));
        assert!(matches!(load(&ok).unwrap(), SpecDocument::Group(g) if g.order == 2));
        let bad = write(&d, "bad.json", &json!({ "order": 2, "table": [[0, 1], [1, 1]] }));
        assert!(matches!(load(&bad), Err(Error::InvalidInput(_))));
    }
}
