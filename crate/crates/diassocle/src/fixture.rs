//! JSON fixture files.
//!
//! A fixture is a JSON object with a declared `kind`, `"field": "rationals"`,
//! named `spaces` (`{"dim": n}`, optionally `"degrees": [..]` per basis
//! vector), `structures` and `operators`. Every number is a fraction string
//! (`"-3/2"`, `"0"`). A bilinear map `X × Y → Z` is an array indexed
//! `[x][y]` of output vectors; a matrix `X → Y` is `dim Y` rows of `dim X`
//! entries. Nested structures (`base`, `total`, `coefficients`) are fixture
//! objects of their own. Keys are emitted in sorted order.

use std::fmt;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::{
    verify_associative, verify_associative_bimodule, verify_diass, verify_ravg_bimodule, verify_relative_averaging, AlgebraData,
    BilinearMap, BimoduleData, DiassData, RAvgAlgebra, RAvgBimodule,
};
use crate::cochain::{Cochain, Multilinear};
use crate::cohomology::{MixedCochain, RAvgCochain, RAvgContext};
use crate::deformations::{verify_deformation, DeformationJet};
use crate::error::{Error, Result};
use crate::extensions::{verify_extension, AbelianExtension, Section};
use crate::homotopy::{
    homotopy_ravg_check, verify_ainf, verify_ainf_rep, verify_diass_inf, AInfRep, GradedCochain, GradedOps, GradedSpace, HomotopyOperator,
    OpsKind,
};
use crate::linalg::{format_scalar, parse_scalar, Matrix, Scalar, Vector};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Bimodule,
    Diass,
    Ravg,
    RavgBimodule,
    Jet,
    Extension,
    Section,
    RavgCochain,
    GradedOps,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::Algebra,
        Kind::Bimodule,
        Kind::Diass,
        Kind::Ravg,
        Kind::RavgBimodule,
        Kind::Jet,
        Kind::Extension,
        Kind::Section,
        Kind::RavgCochain,
        Kind::GradedOps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::Diass => "diass",
            Kind::Ravg => "ravg",
            Kind::RavgBimodule => "ravg-bimodule",
            Kind::Jet => "jet",
            Kind::Extension => "extension",
            Kind::Section => "section",
            Kind::RavgCochain => "ravg-cochain",
            Kind::GradedOps => "graded-ops",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown fixture kind {s:?}")))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The three flavours of graded fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedFixture {
    AInf(GradedOps),
    DiassInf(GradedOps),
    /// A representation (stored as its square-zero structure on `A ⊕ M`),
    /// optionally with a homotopy operator `P = Σ P_k`.
    AInfRep { rep: AInfRep, operator: Option<HomotopyOperator> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Algebra(AlgebraData),
    Bimodule { algebra: AlgebraData, bimodule: BimoduleData },
    Diass(DiassData),
    Ravg(RAvgAlgebra),
    RavgBimodule { base: RAvgAlgebra, bimodule: RAvgBimodule },
    Jet(DeformationJet),
    Extension(AbelianExtension),
    Section(Section),
    RavgCochain { base: RAvgAlgebra, coefficients: Option<RAvgBimodule>, cochain: RAvgCochain },
    Graded(GradedFixture),
}

impl Fixture {
    pub fn kind(&self) -> Kind {
        match self {
            Fixture::Algebra(_) => Kind::Algebra,
            Fixture::Bimodule { .. } => Kind::Bimodule,
            Fixture::Diass(_) => Kind::Diass,
            Fixture::Ravg(_) => Kind::Ravg,
            Fixture::RavgBimodule { .. } => Kind::RavgBimodule,
            Fixture::Jet(_) => Kind::Jet,
            Fixture::Extension(_) => Kind::Extension,
            Fixture::Section(_) => Kind::Section,
            Fixture::RavgCochain { .. } => Kind::RavgCochain,
            Fixture::Graded(_) => Kind::GradedOps,
        }
    }
}

/// A parsed fixture with the report of its eager verification.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: Option<String>,
    pub fixture: Fixture,
    pub report: Report,
}

// ---------------------------------------------------------------- reading

struct Obj<'a> {
    path: String,
    map: &'a Map<String, Value>,
}

fn perr(path: &str, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// An inner error's message without a second `parse error:` prefix.
fn inner(e: Error) -> String {
    match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    }
}

impl<'a> Obj<'a> {
    fn new(path: impl Into<String>, v: &'a Value) -> Result<Obj<'a>> {
        let path = path.into();
        match v.as_object() {
            Some(map) => Ok(Obj { path, map }),
            None => Err(perr(&path, "expected an object")),
        }
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn get(&self, key: &str) -> Result<&'a Value> {
        self.map.get(key).ok_or_else(|| perr(&self.path, format!("missing '{key}'")))
    }

    fn opt(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key).filter(|v| !v.is_null())
    }

    fn obj(&self, key: &str) -> Result<Obj<'a>> {
        Obj::new(self.sub(key), self.get(key)?)
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.get(key)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| perr(&self.sub(key), "expected a non-negative integer"))
    }
}

fn scalar(path: &str, v: &Value) -> Result<Scalar> {
    match v.as_str() {
        Some(s) => parse_scalar(s).map_err(|e| perr(path, inner(e))),
        None => Err(perr(path, "expected a fraction string")),
    }
}

fn array<'a>(path: &str, v: &'a Value, len: usize) -> Result<&'a Vec<Value>> {
    match v.as_array() {
        Some(a) if a.len() == len => Ok(a),
        Some(a) => Err(perr(path, format!("expected {len} entries, found {}", a.len()))),
        None => Err(perr(path, "expected an array")),
    }
}

fn vector(path: &str, v: &Value, len: usize) -> Result<Vector> {
    array(path, v, len)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(&format!("{path}[{i}]"), x))
        .collect()
}

fn matrix(path: &str, v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = array(path, v, rows)?;
    let mut m = Matrix::zeros(rows, cols);
    for (i, r) in rs.iter().enumerate() {
        for (j, x) in vector(&format!("{path}[{i}]"), r, cols)?.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn bilinear(path: &str, v: &Value, d1: usize, d2: usize, out: usize) -> Result<BilinearMap> {
    let mut b = BilinearMap::zero(d1, d2, out);
    for (i, row) in array(path, v, d1)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        for (j, x) in array(&p, row, d2)?.iter().enumerate() {
            b.get_mut(i, j).clone_from_slice(&vector(&format!("{p}[{j}]"), x, out)?);
        }
    }
    Ok(b)
}

fn multilinear(path: &str, v: &Value) -> Result<Multilinear> {
    let o = Obj::new(path, v)?;
    let dims: Vec<usize> = o
        .get("dims")?
        .as_array()
        .ok_or_else(|| perr(&o.sub("dims"), "expected an array"))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| perr(&o.sub("dims"), "expected integers")))
        .collect::<Result<_>>()?;
    let tgt = o.usize("target_dim")?;
    let mut m = Multilinear::zero(&dims, tgt);
    let rows = array(&o.sub("rows"), o.get("rows")?, m.num_tuples())?;
    for (u, r) in rows.iter().enumerate() {
        let x = vector(&format!("{}[{u}]", o.sub("rows")), r, tgt)?;
        m.data[u * tgt..(u + 1) * tgt].clone_from_slice(&x);
    }
    Ok(m)
}

fn cochain(path: &str, v: &Value) -> Result<Cochain> {
    Cochain::from_json(v).map_err(|e| perr(path, inner(e)))
}

fn space_dim(o: &Obj, name: &str) -> Result<usize> {
    o.obj("spaces")?.obj(name)?.usize("dim")
}

fn graded_space(o: &Obj, name: &str) -> Result<GradedSpace> {
    let s = o.obj("spaces")?.obj(name)?;
    let dim = s.usize("dim")?;
    let degs = match s.opt("degrees") {
        None => vec![0; dim],
        Some(v) => array(&s.sub("degrees"), v, dim)?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| perr(&s.sub("degrees"), "expected integers")))
            .collect::<Result<_>>()?,
    };
    Ok(GradedSpace::new(degs))
}

fn structure(o: &Obj, key: &str, d1: usize, d2: usize, out: usize) -> Result<BilinearMap> {
    let s = o.obj("structures")?;
    bilinear(&s.sub(key), s.get(key)?, d1, d2, out)
}

fn structure_or_zero(o: &Obj, key: &str, d1: usize, d2: usize, out: usize) -> Result<BilinearMap> {
    match o.opt("structures").and_then(|s| s.get(key)) {
        Some(v) => bilinear(&format!("{}.structures.{key}", o.path), v, d1, d2, out),
        None => Ok(BilinearMap::zero(d1, d2, out)),
    }
}

fn operator(o: &Obj, key: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let s = o.obj("operators")?;
    matrix(&s.sub(key), s.get(key)?, rows, cols)
}

fn operator_or_zero(o: &Obj, key: &str, rows: usize, cols: usize) -> Result<Matrix> {
    match o.opt("operators").and_then(|s| s.get(key)) {
        Some(v) => matrix(&format!("{}.operators.{key}", o.path), v, rows, cols),
        None => Ok(Matrix::zeros(rows, cols)),
    }
}

fn check_header(o: &Obj, want: Kind) -> Result<()> {
    let k = o.get("kind")?.as_str().ok_or_else(|| perr(&o.sub("kind"), "expected a string"))?;
    let k = Kind::parse(k).map_err(|e| perr(&o.sub("kind"), inner(e)))?;
    if k != want {
        return Err(perr(&o.sub("kind"), format!("expected '{want}', found '{k}'")));
    }
    if let Some(f) = o.opt("field") {
        if f.as_str() != Some("rationals") {
            return Err(perr(&o.sub("field"), "only \"rationals\" is supported"));
        }
    }
    Ok(())
}

fn read_algebra(o: &Obj) -> Result<AlgebraData> {
    let da = space_dim(o, "A")?;
    AlgebraData::new(da, structure(o, "mu", da, da, da)?)
}

fn read_bimodule(o: &Obj, a: &AlgebraData) -> Result<BimoduleData> {
    let dm = space_dim(o, "M")?;
    let left = structure(o, "left", a.dim, dm, dm)?;
    let right = structure(o, "right", dm, a.dim, dm)?;
    BimoduleData::new(a.dim, dm, left, right)
}

fn read_ravg(o: &Obj) -> Result<RAvgAlgebra> {
    let a = read_algebra(o)?;
    let m = read_bimodule(o, &a)?;
    let p = operator(o, "P", a.dim, m.dim)?;
    RAvgAlgebra::new(a, m, p)
}

fn nested_ravg(o: &Obj, key: &str) -> Result<RAvgAlgebra> {
    let b = o.obj(key)?;
    check_header(&b, Kind::Ravg)?;
    read_ravg(&b)
}

fn read_ravg_bimodule(o: &Obj, base: &RAvgAlgebra) -> Result<RAvgBimodule> {
    let (da, dm) = (base.a.dim, base.m.dim);
    let (db, dn) = (space_dim(o, "B")?, space_dim(o, "N")?);
    let b = BimoduleData::new(da, db, structure(o, "B_left", da, db, db)?, structure(o, "B_right", db, da, db)?)?;
    let n = BimoduleData::new(da, dn, structure(o, "N_left", da, dn, dn)?, structure(o, "N_right", dn, da, dn)?)?;
    let bm = RAvgBimodule {
        b,
        n,
        q: operator(o, "Q", db, dn)?,
        l: structure(o, "l", dm, db, dn)?,
        r: structure(o, "r", db, dm, dn)?,
    };
    bm.check_shapes(base)?;
    Ok(bm)
}

fn read_jet(o: &Obj) -> Result<DeformationJet> {
    let base = nested_ravg(o, "base")?;
    let order = o.usize("order")?;
    let (da, dm) = (base.a.dim, base.m.dim);
    let mut j = DeformationJet::trivial(&base, order);
    for k in 1..=order {
        j.mu[k] = structure_or_zero(o, &format!("mu_{k}"), da, da, da)?;
        j.l[k] = structure_or_zero(o, &format!("left_{k}"), da, dm, dm)?;
        j.r[k] = structure_or_zero(o, &format!("right_{k}"), dm, da, dm)?;
        j.p[k] = operator_or_zero(o, &format!("P_{k}"), da, dm)?;
    }
    Ok(j)
}

fn read_extension(o: &Obj) -> Result<AbelianExtension> {
    let base = nested_ravg(o, "base")?;
    let total = nested_ravg(o, "total")?;
    let (db, dn) = (space_dim(o, "B")?, space_dim(o, "N")?);
    let (da, dm, dah, dmh) = (base.a.dim, base.m.dim, total.a.dim, total.m.dim);
    Ok(AbelianExtension {
        q: operator(o, "Q", db, dn)?,
        i: operator(o, "i", dah, db)?,
        p: operator(o, "p", da, dah)?,
        ibar: operator(o, "ibar", dmh, dn)?,
        pbar: operator(o, "pbar", dm, dmh)?,
        base,
        total,
    })
}

fn read_section(o: &Obj) -> Result<Section> {
    let (da, dm) = (space_dim(o, "A")?, space_dim(o, "M")?);
    let (dah, dmh) = (space_dim(o, "Ahat")?, space_dim(o, "Mhat")?);
    Ok(Section {
        s: operator(o, "s", dah, da)?,
        sbar: operator(o, "sbar", dmh, dm)?,
    })
}

fn read_cochain(o: &Obj) -> Result<Fixture> {
    let base = nested_ravg(o, "base")?;
    let coefficients = match o.opt("coefficients") {
        Some(v) => {
            let c = Obj::new(o.sub("coefficients"), v)?;
            check_header(&c, Kind::RavgBimodule)?;
            Some(read_ravg_bimodule(&c, &base)?)
        }
        None => None,
    };
    let ctx = match &coefficients {
        Some(bm) => RAvgContext::with_coefficients(&base, bm)?,
        None => RAvgContext::adjoint(&base)?,
    };
    let degree = o.usize("degree")?;
    let c = o.obj("cochain")?;
    let f = multilinear(&c.sub("f"), c.get("f")?)?;
    let gs = c.get("g")?.as_array().ok_or_else(|| perr(&c.sub("g"), "expected an array"))?;
    let parts = gs
        .iter()
        .enumerate()
        .map(|(j, g)| multilinear(&format!("{}[{j}]", c.sub("g")), g))
        .collect::<Result<Vec<_>>>()?;
    let (da, dm, _, dn) = ctx.dims();
    let g = MixedCochain { arity: degree, da, dm, tgt: dn, parts };
    let gamma = match c.opt("gamma") {
        Some(v) => Some(cochain(&c.sub("gamma"), v)?),
        None => None,
    };
    let cochain = RAvgCochain { degree, f, g, gamma };
    ctx.check(&cochain).map_err(|e| perr(&o.sub("cochain"), inner(e)))?;
    Ok(Fixture::RavgCochain { base, coefficients, cochain })
}

fn ops_cochains(o: &Obj, key: &str) -> Result<Vec<Cochain>> {
    let s = o.obj("structures")?;
    let v = s.get(key)?.as_array().ok_or_else(|| perr(&s.sub(key), "expected an array"))?;
    v.iter()
        .enumerate()
        .map(|(k, c)| {
            let p = format!("{}[{k}]", s.sub(key));
            let c = cochain(&p, c)?;
            if c.arity != k + 1 {
                return Err(perr(&p, format!("expected arity {}", k + 1)));
            }
            Ok(c)
        })
        .collect()
}

fn read_graded(o: &Obj) -> Result<GradedFixture> {
    let kind = o.get("ops_kind")?.as_str().ok_or_else(|| perr(&o.sub("ops_kind"), "expected a string"))?;
    match kind {
        "ainf" | "diass-inf" => {
            let space = graded_space(o, "D")?;
            let ops = ops_cochains(o, "ops")?;
            let g = GradedOps::diass_inf(space, ops)?;
            if kind == "ainf" {
                if !g.ops.is_tree_independent() {
                    return Err(Error::InvalidStructure("A∞ operations must not depend on trees".into()));
                }
                Ok(GradedFixture::AInf(GradedOps { kind: OpsKind::AInfinity, ..g }))
            } else {
                Ok(GradedFixture::DiassInf(g))
            }
        }
        "ainf-rep" => {
            let (a, m) = (graded_space(o, "A")?, graded_space(o, "M")?);
            let d = a.dim() + m.dim();
            let ops = ops_cochains(o, "ops")?;
            let total = GradedCochain::from_parts(1, d, ops)?;
            let rep = AInfRep::from_total(a, m, total)?;
            let operator = match o.opt("operators").and_then(|s| s.get("P")) {
                Some(v) => {
                    let path = o.sub("operators.P");
                    let list = v.as_array().ok_or_else(|| perr(&path, "expected an array"))?;
                    let parts = list
                        .iter()
                        .enumerate()
                        .map(|(k, c)| {
                            let c = cochain(&format!("{path}[{k}]"), c)?;
                            if (c.arity, c.src, c.tgt) != (k + 1, rep.dm(), rep.da()) {
                                return Err(perr(&format!("{path}[{k}]"), "P_k : M^⊗k → A has the wrong shape"));
                            }
                            Ok(c)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(HomotopyOperator { parts })
                }
                None => None,
            };
            Ok(GradedFixture::AInfRep { rep, operator })
        }
        other => Err(perr(&o.sub("ops_kind"), format!("unknown ops kind {other:?}"))),
    }
}

/// Parses a fixture object; shapes are checked, identities are not.
pub fn from_value(v: &Value) -> Result<Fixture> {
    let o = Obj::new("$", v)?;
    let k = o.get("kind")?.as_str().ok_or_else(|| perr("$.kind", "expected a string"))?;
    let kind = Kind::parse(k)?;
    check_header(&o, kind)?;
    Ok(match kind {
        Kind::Algebra => Fixture::Algebra(read_algebra(&o)?),
        Kind::Bimodule => {
            let algebra = read_algebra(&o)?;
            let bimodule = read_bimodule(&o, &algebra)?;
            Fixture::Bimodule { algebra, bimodule }
        }
        Kind::Diass => {
            let d = space_dim(&o, "D")?;
            Fixture::Diass(DiassData::new(d, structure(&o, "dashv", d, d, d)?, structure(&o, "vdash", d, d, d)?)?)
        }
        Kind::Ravg => Fixture::Ravg(read_ravg(&o)?),
        Kind::RavgBimodule => {
            let base = nested_ravg(&o, "base")?;
            let bimodule = read_ravg_bimodule(&o, &base)?;
            Fixture::RavgBimodule { base, bimodule }
        }
        Kind::Jet => Fixture::Jet(read_jet(&o)?),
        Kind::Extension => Fixture::Extension(read_extension(&o)?),
        Kind::Section => Fixture::Section(read_section(&o)?),
        Kind::RavgCochain => read_cochain(&o)?,
        Kind::GradedOps => Fixture::Graded(read_graded(&o)?),
    })
}

/// Parses fixture text; syntax errors carry line and column.
pub fn parse_str(text: &str) -> Result<(Option<String>, Fixture)> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let name = v.get("name").and_then(Value::as_str).map(str::to_string);
    Ok((name, from_value(&v)?))
}

pub fn read(path: &Path) -> Result<(Option<String>, Fixture)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_str(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Reads and eagerly verifies a fixture.
pub fn load(path: &Path) -> Result<Loaded> {
    let (name, fixture) = read(path)?;
    let report = verify(&fixture, crate::homotopy::DEFAULT_MAX_ARITY)?;
    Ok(Loaded { name, fixture, report })
}

/// The verifier for the declared kind; graded structures are checked up to
/// arity `max_arity`.
pub fn verify(f: &Fixture, max_arity: usize) -> Result<Report> {
    Ok(match f {
        Fixture::Algebra(a) => verify_associative(a),
        Fixture::Bimodule { algebra, bimodule } => verify_associative_bimodule(algebra, bimodule)?,
        Fixture::Diass(d) => verify_diass(d),
        Fixture::Ravg(r) => verify_relative_averaging(r)?,
        Fixture::RavgBimodule { base, bimodule } => verify_ravg_bimodule(base, bimodule)?,
        Fixture::Jet(j) => verify_deformation(j)?,
        Fixture::Extension(e) => verify_extension(e)?,
        Fixture::Section(_) => {
            let mut r = Report::new("section");
            r.pass();
            r
        }
        Fixture::RavgCochain { cochain, .. } => {
            let mut r = Report::new(format!("relative averaging {}-cochain", cochain.degree));
            r.pass();
            r
        }
        Fixture::Graded(g) => match g {
            GradedFixture::AInf(a) => verify_ainf(a, max_arity.min(a.max_arity()))?,
            GradedFixture::DiassInf(d) => verify_diass_inf(d, max_arity.min(d.max_arity()))?,
            GradedFixture::AInfRep { rep, operator } => {
                let k = max_arity.min(rep.total.max_arity());
                let mut r = verify_ainf_rep(rep, k)?;
                if let Some(p) = operator {
                    r.merge(homotopy_ravg_check(rep, p, k)?);
                }
                r
            }
        },
    })
}

// ---------------------------------------------------------------- writing

fn s(x: &Scalar) -> Value {
    Value::from(format_scalar(x))
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::from(v.iter().map(s).collect::<Vec<_>>())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::from((0..m.rows).map(|i| vector_json(m.row(i))).collect::<Vec<_>>())
}

pub fn bilinear_json(b: &BilinearMap) -> Value {
    Value::from(
        (0..b.d1)
            .map(|i| Value::from((0..b.d2).map(|j| vector_json(b.get(i, j))).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

pub fn multilinear_json(m: &Multilinear) -> Value {
    json!({
        "dims": m.dims,
        "target_dim": m.tgt,
        "rows": (0..m.num_tuples()).map(|u| vector_json(m.get(u))).collect::<Vec<_>>(),
    })
}

fn dim(n: usize) -> Value {
    json!({ "dim": n })
}

fn graded_dim(s: &GradedSpace) -> Value {
    json!({ "dim": s.dim(), "degrees": s.degs })
}

fn header(kind: Kind) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(kind.as_str()));
    m.insert("field".into(), Value::from("rationals"));
    m
}

fn with(mut m: Map<String, Value>, key: &str, v: Value) -> Map<String, Value> {
    m.insert(key.into(), v);
    m
}

fn ravg_value(r: &RAvgAlgebra) -> Value {
    let m = header(Kind::Ravg);
    let m = with(m, "spaces", json!({ "A": dim(r.a.dim), "M": dim(r.m.dim) }));
    let m = with(
        m,
        "structures",
        json!({ "mu": bilinear_json(&r.a.mu), "left": bilinear_json(&r.m.left), "right": bilinear_json(&r.m.right) }),
    );
    Value::Object(with(m, "operators", json!({ "P": matrix_json(&r.p) })))
}

fn ravg_bimodule_value(base: &RAvgAlgebra, bm: &RAvgBimodule) -> Value {
    let m = header(Kind::RavgBimodule);
    let m = with(m, "base", ravg_value(base));
    let m = with(m, "spaces", json!({ "B": dim(bm.b.dim), "N": dim(bm.n.dim) }));
    let m = with(
        m,
        "structures",
        json!({
            "B_left": bilinear_json(&bm.b.left),
            "B_right": bilinear_json(&bm.b.right),
            "N_left": bilinear_json(&bm.n.left),
            "N_right": bilinear_json(&bm.n.right),
            "l": bilinear_json(&bm.l),
            "r": bilinear_json(&bm.r),
        }),
    );
    Value::Object(with(m, "operators", json!({ "Q": matrix_json(&bm.q) })))
}

fn ops_json(parts: &[Cochain]) -> Value {
    Value::from(parts.iter().map(Cochain::to_json).collect::<Vec<_>>())
}

pub fn to_value(f: &Fixture) -> Value {
    match f {
        Fixture::Algebra(a) => {
            let m = with(header(Kind::Algebra), "spaces", json!({ "A": dim(a.dim) }));
            Value::Object(with(m, "structures", json!({ "mu": bilinear_json(&a.mu) })))
        }
        Fixture::Bimodule { algebra, bimodule } => {
            let m = with(header(Kind::Bimodule), "spaces", json!({ "A": dim(algebra.dim), "M": dim(bimodule.dim) }));
            Value::Object(with(
                m,
                "structures",
                json!({
                    "mu": bilinear_json(&algebra.mu),
                    "left": bilinear_json(&bimodule.left),
                    "right": bilinear_json(&bimodule.right),
                }),
            ))
        }
        Fixture::Diass(d) => {
            let m = with(header(Kind::Diass), "spaces", json!({ "D": dim(d.dim) }));
            Value::Object(with(
                m,
                "structures",
                json!({ "dashv": bilinear_json(&d.dashv), "vdash": bilinear_json(&d.vdash) }),
            ))
        }
        Fixture::Ravg(r) => ravg_value(r),
        Fixture::RavgBimodule { base, bimodule } => ravg_bimodule_value(base, bimodule),
        Fixture::Jet(j) => {
            let mut st = Map::new();
            let mut ops = Map::new();
            for k in 1..=j.order {
                if !j.mu[k].is_zero() {
                    st.insert(format!("mu_{k}"), bilinear_json(&j.mu[k]));
                }
                if !j.l[k].is_zero() {
                    st.insert(format!("left_{k}"), bilinear_json(&j.l[k]));
                }
                if !j.r[k].is_zero() {
                    st.insert(format!("right_{k}"), bilinear_json(&j.r[k]));
                }
                if !j.p[k].is_zero() {
                    ops.insert(format!("P_{k}"), matrix_json(&j.p[k]));
                }
            }
            let m = with(header(Kind::Jet), "base", ravg_value(&j.base));
            let m = with(m, "order", Value::from(j.order));
            let m = with(m, "structures", Value::Object(st));
            Value::Object(with(m, "operators", Value::Object(ops)))
        }
        Fixture::Extension(e) => {
            let m = with(header(Kind::Extension), "base", ravg_value(&e.base));
            let m = with(m, "total", ravg_value(&e.total));
            let m = with(m, "spaces", json!({ "B": dim(e.i.cols), "N": dim(e.ibar.cols) }));
            Value::Object(with(
                m,
                "operators",
                json!({
                    "Q": matrix_json(&e.q),
                    "i": matrix_json(&e.i),
                    "p": matrix_json(&e.p),
                    "ibar": matrix_json(&e.ibar),
                    "pbar": matrix_json(&e.pbar),
                }),
            ))
        }
        Fixture::Section(sec) => {
            let m = with(
                header(Kind::Section),
                "spaces",
                json!({
                    "A": dim(sec.s.cols),
                    "M": dim(sec.sbar.cols),
                    "Ahat": dim(sec.s.rows),
                    "Mhat": dim(sec.sbar.rows),
                }),
            );
            Value::Object(with(m, "operators", json!({ "s": matrix_json(&sec.s), "sbar": matrix_json(&sec.sbar) })))
        }
        Fixture::RavgCochain { base, coefficients, cochain } => {
            let m = with(header(Kind::RavgCochain), "base", ravg_value(base));
            let m = match coefficients {
                Some(bm) => with(m, "coefficients", ravg_bimodule_value(base, bm)),
                None => m,
            };
            let m = with(m, "degree", Value::from(cochain.degree));
            let gamma = cochain.gamma.as_ref().map(Cochain::to_json).unwrap_or(Value::Null);
            Value::Object(with(
                m,
                "cochain",
                json!({
                    "f": multilinear_json(&cochain.f),
                    "g": cochain.g.parts.iter().map(multilinear_json).collect::<Vec<_>>(),
                    "gamma": gamma,
                }),
            ))
        }
        Fixture::Graded(g) => {
            let m = header(Kind::GradedOps);
            let m = match g {
                GradedFixture::AInf(a) | GradedFixture::DiassInf(a) => {
                    let kind = if matches!(g, GradedFixture::AInf(_)) { "ainf" } else { "diass-inf" };
                    let m = with(m, "ops_kind", Value::from(kind));
                    let m = with(m, "spaces", json!({ "D": graded_dim(&a.space) }));
                    with(m, "structures", json!({ "ops": ops_json(&a.ops.parts) }))
                }
                GradedFixture::AInfRep { rep, operator } => {
                    let m = with(m, "ops_kind", Value::from("ainf-rep"));
                    let m = with(m, "spaces", json!({ "A": graded_dim(&rep.base.space), "M": graded_dim(&rep.module) }));
                    let m = with(m, "structures", json!({ "ops": ops_json(&rep.total.ops.parts) }));
                    match operator {
                        Some(p) => with(m, "operators", json!({ "P": ops_json(&p.parts) })),
                        None => m,
                    }
                }
            };
            Value::Object(m)
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_string(f: &Fixture, name: Option<&str>) -> String {
    let mut v = to_value(f);
    if let (Some(n), Some(o)) = (name, v.as_object_mut()) {
        o.insert("name".into(), Value::from(n));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn save(path: &Path, f: &Fixture, name: Option<&str>) -> Result<()> {
    std::fs::write(path, to_string(f, name)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{kx2_adjoint, shipping};

    #[test]
    fn ravg_round_trip() {
        for (name, r) in shipping() {
            let text = to_string(&Fixture::Ravg(r.clone()), Some(name));
            let (n, back) = parse_str(&text).unwrap();
            assert_eq!(n.as_deref(), Some(name));
            assert_eq!(back, Fixture::Ravg(r));
        }
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = to_string(&Fixture::Ravg(kx2_adjoint()), None).replacen("\"1\"", "\"1/0\"", 1);
        match parse_str(&text) {
            Err(Error::Parse(m)) => assert!(m.contains("zero denominator"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_str("{\n  \"kind\": \"ravg\",\n  oops\n}") {
            Err(Error::Parse(m)) => assert!(m.starts_with("line 3, column"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_dimensions_are_reported_with_a_path() {
        let text = to_string(&Fixture::Ravg(kx2_adjoint()), None).replace("\"dim\": 2", "\"dim\": 3");
        match parse_str(&text) {
            Err(Error::Parse(m)) => assert!(m.starts_with("$.structures."), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = to_string(&Fixture::Ravg(kx2_adjoint()), Some("kx2"));
        let order: Vec<usize> = ["\"field\"", "\"kind\"", "\"name\"", "\"operators\"", "\"spaces\"", "\"structures\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }
}
