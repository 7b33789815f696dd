//! The `diassocle` command line: argument parsing and every subcommand.
//!
//! [`run`] never prints or exits; the binary forwards its [`Outcome`].
//! Exit codes: `0` all checks pass, `1` a mathematical check failed, `2`
//! input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::algebra::{verify_relative_averaging, BimoduleData, DiassRepData, RAvgAlgebra, RAvgBimodule};
use crate::cochain::{mm_bracket, Cochain, DerivedBracket};
use crate::cohomology::{
    avg_complex, betti, cohomology_report, diass_complex, hochschild_complex, les_check, operator_complex, ComplexSpec, RAvgCochain,
    RAvgContext,
};
use crate::constructions::induced_diass;
use crate::deformations::{deformation_to_cocycle, equivalence_check, find_equivalence, is_trivial, verify_deformation, DeformationJet};
use crate::error::{Error, Result};
use crate::extensions::{cocycle_to_extension, extension_to_cocycle, find_isomorphism, verify_extension, verify_isomorphism, AbelianExtension, Section};
use crate::fixture::{self, matrix_json, Fixture, GradedFixture};
use crate::homotopy::{
    bidegree_vanishing, controlling_linf, diass_inf_semidirect, embed_ravg_cochain, homotopy_element, homotopy_linf, homotopy_ravg_check,
    induced_diass_inf, mc_check_ravg, mc_sum, verify_ainf, verify_ainf_rep, verify_diass_inf, AInfRep, GradedOps, HomotopyOperator,
    LInfinity, OpsKind, ShiftedPair, DEFAULT_MAX_ARITY,
};
use crate::linalg::{int, zeros, Scalar};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "diassocle", version, about = "Exact checks for diassociative and relative averaging algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized checks (default: DIASSOCLE_SEED, then a fixed seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BracketOp {
    /// The tree-indexed bracket on `CY(V, V)`.
    Mm,
    /// The derived bracket on `CY(M, A)`.
    Derived,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComplexKind {
    Ravg,
    Avg,
    Diass,
    Operator,
    Assbimod,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HomotopyCheck {
    Ainf,
    Diassinf,
    Mc,
    Twist,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a fixture and run the verifier for its declared kind.
    Verify { file: PathBuf },
    /// Bracket one or two cochain files; with one input, test its square.
    Bracket {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: BracketOp,
        #[arg(long, num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Betti numbers and representatives of a cochain complex.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum)]
        complex: ComplexKind,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// A ravg-bimodule fixture over the same base.
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// Exactness of the long exact sequence at every node up to `nmax`.
    Les {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// Verify a deformation jet, emit its cocycle, test triviality.
    Deform {
        file: PathBuf,
        #[arg(long)]
        jet: PathBuf,
        /// A second jet; an order-1 equivalence to it is searched.
        #[arg(long)]
        equiv: Option<PathBuf>,
    },
    /// Build an extension from a cocycle, or extract the cocycle of one.
    Extension {
        file: PathBuf,
        #[arg(long, required_unless_present = "extract", conflicts_with = "extract")]
        cocycle: Option<PathBuf>,
        #[arg(long, requires = "section")]
        extract: Option<PathBuf>,
        #[arg(long, requires = "extract")]
        section: Option<PathBuf>,
        /// A second extension to test for isomorphism.
        #[arg(long, requires = "extract")]
        compare: Option<PathBuf>,
        /// Section of the second extension (default: canonical).
        #[arg(long, requires = "compare")]
        compare_section: Option<PathBuf>,
    },
    /// Checks of the homotopy layer, truncated at arity `K`.
    Homotopy {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: HomotopyCheck,
        #[arg(long = "K", default_value_t = DEFAULT_MAX_ARITY)]
        k: usize,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Response {
    ok: bool,
    json: Map<String, Value>,
    text: String,
}

impl Response {
    fn new() -> Response {
        Response { ok: true, json: Map::new(), text: String::new() }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn report(&mut self, key: &str, r: &Report) {
        self.ok &= r.is_valid();
        self.set(key, r.to_json());
        self.text.push_str(&r.to_text());
    }

    fn flag(&mut self, key: &str, label: &str, value: bool) {
        self.ok &= value;
        self.set(key, value);
        self.line(format!("{label}: {value}"));
    }

    fn info(&mut self, key: &str, label: &str, value: bool) {
        self.set(key, value);
        self.line(format!("{label}: {value}"));
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let seed = cli.seed.unwrap_or_else(crate::random::seed);
    let (name, res) = dispatch(&cli.command, seed);
    match res {
        Ok(mut r) => {
            let stdout = match cli.format {
                Format::Json => {
                    r.json.insert("command".into(), Value::from(name));
                    r.json.insert("ok".into(), Value::from(r.ok));
                    let mut s = serde_json::to_string_pretty(&Value::Object(r.json)).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Format::Text => {
                    r.text.push_str(if r.ok { "result: pass\n" } else { "result: FAIL\n" });
                    r.text
                }
            };
            Outcome { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = if matches!(e, Error::NotACocycle(_)) { 1 } else { 2 };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(c: &Command, seed: u64) -> (&'static str, Result<Response>) {
    match c {
        Command::Verify { file } => ("verify", cmd_verify(file)),
        Command::Bracket { file, op, inputs } => ("bracket", cmd_bracket(file, *op, inputs)),
        Command::Cohomology { file, complex, nmax, coeffs } => ("cohomology", cmd_cohomology(file, *complex, *nmax, coeffs.as_deref())),
        Command::Les { file, nmax, coeffs } => ("les", cmd_les(file, *nmax, coeffs.as_deref())),
        Command::Deform { file, jet, equiv } => ("deform", cmd_deform(file, jet, equiv.as_deref())),
        Command::Extension { file, cocycle, extract, section, compare, compare_section } => (
            "extension",
            match (cocycle, extract, section) {
                (Some(c), _, _) => cmd_extension_build(file, c),
                (None, Some(e), Some(s)) => cmd_extension_extract(file, e, s, compare.as_deref(), compare_section.as_deref()),
                _ => Err(Error::Parse("extension needs --cocycle, or --extract with --section".into())),
            },
        ),
        Command::Homotopy { file, check, k } => ("homotopy", cmd_homotopy(file, *check, *k, seed)),
    }
}

// ---------------------------------------------------------------- inputs

struct Input {
    name: String,
    fixture: Fixture,
}

fn input(path: &Path) -> Result<Input> {
    let (name, fixture) = fixture::read(path)?;
    let name = name.unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    Ok(Input { name, fixture })
}

fn wrong_kind(path: &Path, want: &str, f: &Fixture) -> Error {
    Error::Parse(format!("{}: expected a {want} fixture, found '{}'", path.display(), f.kind()))
}

/// A relative averaging base, verified; the report goes into the response.
fn base_ravg(path: &Path, out: &mut Response) -> Result<RAvgAlgebra> {
    let inp = input(path)?;
    let Fixture::Ravg(r) = inp.fixture else {
        return Err(wrong_kind(path, "ravg", &inp.fixture));
    };
    out.set("fixture", inp.name.clone());
    out.line(format!("fixture: {}", inp.name));
    out.report("base", &verify_relative_averaging(&r)?);
    Ok(r)
}

fn coefficients(path: Option<&Path>, base: &RAvgAlgebra, out: &mut Response) -> Result<RAvgContext> {
    let Some(path) = path else {
        return RAvgContext::adjoint(base);
    };
    let inp = input(path)?;
    let Fixture::RavgBimodule { base: b, bimodule } = inp.fixture else {
        return Err(wrong_kind(path, "ravg-bimodule", &inp.fixture));
    };
    if &b != base {
        return Err(Error::Parse(format!("{}: coefficients over a different base", path.display())));
    }
    out.report("coefficients", &crate::algebra::verify_ravg_bimodule(base, &bimodule)?);
    RAvgContext::with_coefficients(base, &bimodule)
}

fn read_cochain(path: &Path) -> Result<Cochain> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    Cochain::from_json(&v).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cochain_fixture(ctx: &RAvgContext, c: &RAvgCochain) -> Value {
    fixture::to_value(&Fixture::RavgCochain {
        base: ctx.r.clone(),
        coefficients: (!ctx.adjoint).then(|| ctx.bm.clone()),
        cochain: c.clone(),
    })
}

// ---------------------------------------------------------------- commands

fn cmd_verify(file: &Path) -> Result<Response> {
    let inp = input(file)?;
    let mut out = Response::new();
    out.set("fixture", inp.name.clone());
    out.set("kind", inp.fixture.kind().as_str());
    out.line(format!("fixture: {} ({})", inp.name, inp.fixture.kind()));
    out.report("report", &fixture::verify(&inp.fixture, DEFAULT_MAX_ARITY)?);
    Ok(out)
}

fn cmd_bracket(file: &Path, op: BracketOp, inputs: &[PathBuf]) -> Result<Response> {
    let inp = input(file)?;
    let f = read_cochain(&inputs[0])?;
    let g = match inputs.get(1) {
        Some(p) => read_cochain(p)?,
        None => f.clone(),
    };
    let mut out = Response::new();
    out.set("fixture", inp.name.clone());
    out.line(format!("fixture: {}", inp.name));
    let result = match op {
        BracketOp::Derived => {
            let (a, m) = match &inp.fixture {
                Fixture::Ravg(r) => (r.a.clone(), r.m.clone()),
                Fixture::Bimodule { algebra, bimodule } => (algebra.clone(), bimodule.clone()),
                other => return Err(wrong_kind(file, "ravg or bimodule", other)),
            };
            for (p, c) in inputs.iter().zip([&f, &g]) {
                if !c.fits(m.dim, a.dim) {
                    return Err(Error::Parse(format!("{}: the derived bracket takes cochains M → A", p.display())));
                }
            }
            DerivedBracket::new(&a, &m).bracket(&f, &g)?
        }
        BracketOp::Mm => {
            let d = match &inp.fixture {
                Fixture::Diass(d) => d.dim,
                Fixture::Algebra(a) => a.dim,
                Fixture::Ravg(r) => r.a.dim + r.m.dim,
                other => return Err(wrong_kind(file, "diass, algebra or ravg", other)),
            };
            for (p, c) in inputs.iter().zip([&f, &g]) {
                if !c.fits(d, d) {
                    return Err(Error::Parse(format!("{}: expected cochains on a {d}-dimensional space", p.display())));
                }
            }
            mm_bracket(&f, &g)?
        }
    };
    let v = result.to_json();
    out.set("result", v.clone());
    out.line(format!("bracket (arity {}):", result.arity));
    out.line(pretty(&v));
    if inputs.len() == 1 {
        out.flag("square_vanishes", "square vanishes", result.is_zero());
    } else {
        out.info("vanishes", "vanishes", result.is_zero());
    }
    Ok(out)
}

fn complex_for(file: &Path, kind: ComplexKind, nmax: usize, coeffs: Option<&Path>, out: &mut Response) -> Result<ComplexSpec> {
    let inp = input(file)?;
    let needs_ravg = |f: &Fixture| -> Result<RAvgAlgebra> {
        match f {
            Fixture::Ravg(r) => Ok(r.clone()),
            other => Err(wrong_kind(file, "ravg", other)),
        }
    };
    if coeffs.is_some() && !matches!(kind, ComplexKind::Ravg | ComplexKind::Assbimod) {
        return Err(Error::Parse("--coeffs applies to the ravg and assbimod complexes".into()));
    }
    Ok(match (kind, &inp.fixture) {
        (ComplexKind::Diass, Fixture::Diass(d)) => {
            out.set("fixture", inp.name.clone());
            out.line(format!("fixture: {}", inp.name));
            out.report("base", &crate::algebra::verify_diass(d));
            diass_complex(d, &DiassRepData::adjoint(d), nmax)?
        }
        (ComplexKind::Assbimod, Fixture::Algebra(a)) => {
            out.set("fixture", inp.name.clone());
            out.line(format!("fixture: {}", inp.name));
            out.report("base", &crate::algebra::verify_associative(a));
            hochschild_complex(a, &BimoduleData::adjoint(a), nmax)?
        }
        (ComplexKind::Assbimod, Fixture::Bimodule { algebra, bimodule }) => {
            out.set("fixture", inp.name.clone());
            out.line(format!("fixture: {}", inp.name));
            out.report("base", &crate::algebra::verify_associative_bimodule(algebra, bimodule)?);
            hochschild_complex(algebra, bimodule, nmax)?
        }
        (_, f) => {
            let r = needs_ravg(f)?;
            let r = base_ravg(file, out).map(|_| r)?;
            match kind {
                ComplexKind::Ravg => coefficients(coeffs, &r, out)?.complex(nmax)?,
                ComplexKind::Assbimod => coefficients(coeffs, &r, out)?.bimod_complex(nmax)?,
                ComplexKind::Avg => avg_complex(&r, nmax)?,
                ComplexKind::Operator => operator_complex(&r, nmax)?,
                ComplexKind::Diass => diass_complex(&induced_diass(&r), &crate::cochain::operator_rep(&r), nmax)?,
            }
        }
    })
}

fn cmd_cohomology(file: &Path, kind: ComplexKind, nmax: usize, coeffs: Option<&Path>) -> Result<Response> {
    let mut out = Response::new();
    let spec = complex_for(file, kind, nmax, coeffs, &mut out)?;
    let rep = cohomology_report(&spec)?;
    out.line(format!("{} (n_max = {nmax})", spec.name));
    out.line(" n  dim C^n  dim H^n");
    for d in rep["degrees"].as_array().into_iter().flatten() {
        let num = |k: &str| d[k].as_u64().unwrap_or_default();
        out.line(format!("{:>2}  {:>7}  {:>7}", num("degree"), num("space_dim"), num("dim")));
    }
    out.set("cohomology", rep);
    Ok(out)
}

fn cmd_les(file: &Path, nmax: usize, coeffs: Option<&Path>) -> Result<Response> {
    let mut out = Response::new();
    let r = base_ravg(file, &mut out)?;
    let ctx = coefficients(coeffs, &r, &mut out)?;
    let les = les_check(&ctx, nmax)?;
    out.text.push_str(&les.to_text());
    let bad = les.nodes.iter().filter(|n| !n.exact).count();
    let total = les.nodes.len();
    let summary = if les.is_exact() {
        format!("exact at {total} nodes")
    } else {
        format!("not exact at {bad} of {total} nodes")
    };
    out.line(&summary);
    out.ok &= les.is_exact();
    out.set("les", les.to_json());
    out.set("summary", summary);
    Ok(out)
}

fn read_jet(path: &Path, base: &RAvgAlgebra) -> Result<(String, DeformationJet)> {
    let inp = input(path)?;
    let Fixture::Jet(j) = inp.fixture else {
        return Err(wrong_kind(path, "jet", &inp.fixture));
    };
    if &j.base != base {
        return Err(Error::Parse(format!("{}: jet over a different base", path.display())));
    }
    Ok((inp.name, j))
}

fn cmd_deform(file: &Path, jet: &Path, equiv: Option<&Path>) -> Result<Response> {
    let mut out = Response::new();
    let base = base_ravg(file, &mut out)?;
    let (name, j) = read_jet(jet, &base)?;
    out.set("jet", name.clone());
    out.line(format!("jet: {name} (order {})", j.order));
    let rep = verify_deformation(&j)?;
    let valid = rep.is_valid();
    out.report("deformation", &rep);
    if !valid {
        return Ok(out);
    }
    let ctx = RAvgContext::adjoint(&base)?;
    let c = deformation_to_cocycle(&j)?;
    let cv = cochain_fixture(&ctx, &c);
    out.line("first-order cocycle:");
    out.line(pretty(&cv));
    out.set("cocycle", cv);
    out.info("trivial", "trivial at order 1", is_trivial(&j)?);
    if let Some(p) = equiv {
        let (name2, j2) = read_jet(p, &base)?;
        out.set("equiv_jet", name2.clone());
        out.line(format!("second jet: {name2}"));
        out.report("equiv_deformation", &verify_deformation(&j2)?);
        match find_equivalence(&j, &j2)? {
            Some(eq) => {
                out.flag("equivalent", "equivalent at order 1", true);
                out.set("phi_1", matrix_json(&eq.phi[1]));
                out.set("psi_1", matrix_json(&eq.psi[1]));
                out.line(format!("phi_1 = {}", serde_json::to_string(&matrix_json(&eq.phi[1])).expect("serializes")));
                out.line(format!("psi_1 = {}", serde_json::to_string(&matrix_json(&eq.psi[1])).expect("serializes")));
                let (mut a, mut b) = (j.clone(), j2.clone());
                truncate_jet(&mut a);
                truncate_jet(&mut b);
                out.report("equivalence", &equivalence_check(&a, &b, &eq)?);
            }
            None => out.flag("equivalent", "equivalent at order 1", false),
        }
    }
    Ok(out)
}

fn truncate_jet(j: &mut DeformationJet) {
    j.order = 1;
    j.mu.truncate(2);
    j.l.truncate(2);
    j.r.truncate(2);
    j.p.truncate(2);
}

fn cmd_extension_build(file: &Path, cocycle: &Path) -> Result<Response> {
    let mut out = Response::new();
    let base = base_ravg(file, &mut out)?;
    let inp = input(cocycle)?;
    let Fixture::RavgCochain { base: b, coefficients, cochain } = inp.fixture else {
        return Err(wrong_kind(cocycle, "ravg-cochain", &inp.fixture));
    };
    if b != base {
        return Err(Error::Parse(format!("{}: cocycle over a different base", cocycle.display())));
    }
    let bm = coefficients.unwrap_or_else(|| RAvgBimodule::adjoint(&base));
    out.set("cocycle", inp.name.clone());
    out.line(format!("cocycle: {}", inp.name));
    let e = cocycle_to_extension(&cochain, &base, &bm)?;
    out.report("extension", &verify_extension(&e)?);
    let (back, _) = extension_to_cocycle(&e, &e.canonical_section())?;
    out.flag("round_trip", "cocycle → extension → cocycle is the identity", back == cochain);
    let v = fixture::to_value(&Fixture::Extension(e));
    out.line("extension:");
    out.line(pretty(&v));
    out.set("result", v);
    Ok(out)
}

fn read_extension(path: &Path, base: &RAvgAlgebra) -> Result<AbelianExtension> {
    let inp = input(path)?;
    let Fixture::Extension(e) = inp.fixture else {
        return Err(wrong_kind(path, "extension", &inp.fixture));
    };
    if &e.base != base {
        return Err(Error::Parse(format!("{}: extension of a different base", path.display())));
    }
    Ok(e)
}

fn read_section(path: &Path, e: &AbelianExtension) -> Result<Section> {
    let inp = input(path)?;
    let Fixture::Section(s) = inp.fixture else {
        return Err(wrong_kind(path, "section", &inp.fixture));
    };
    e.check_section(&s).map_err(|err| Error::Parse(format!("{}: {err}", path.display())))?;
    Ok(s)
}

fn cmd_extension_extract(file: &Path, ext: &Path, sec: &Path, compare: Option<&Path>, compare_sec: Option<&Path>) -> Result<Response> {
    let mut out = Response::new();
    let base = base_ravg(file, &mut out)?;
    let e = read_extension(ext, &base)?;
    let s = read_section(sec, &e)?;
    let rep = verify_extension(&e)?;
    let valid = rep.is_valid();
    out.report("extension", &rep);
    if !valid {
        return Ok(out);
    }
    let (c, ctx) = extension_to_cocycle(&e, &s)?;
    out.flag("closed", "cocycle is closed", ctx.coboundary(&c)?.is_zero());
    let h2 = betti(&ctx.complex(2)?, 2)?;
    out.info("split", "class is zero (split extension)", h2.is_coboundary(&ctx.flatten(&c))?);
    let cv = cochain_fixture(&ctx, &c);
    out.line("cocycle:");
    out.line(pretty(&cv));
    out.set("result", cv);
    if let Some(p) = compare {
        let e2 = read_extension(p, &base)?;
        let s2 = match compare_sec {
            Some(q) => read_section(q, &e2)?,
            None => e2.canonical_section(),
        };
        out.report("compare_extension", &verify_extension(&e2)?);
        match find_isomorphism(&e, &s, &e2, &s2)? {
            Some((phi, psi)) => {
                out.flag("isomorphic", "isomorphic over the identity on A, M", true);
                out.set("phi", matrix_json(&phi));
                out.set("psi", matrix_json(&psi));
                out.report("isomorphism", &verify_isomorphism(&e, &e2, &phi, &psi)?);
            }
            None => out.flag("isomorphic", "isomorphic over the identity on A, M", false),
        }
    }
    Ok(out)
}

/// The graded structures a homotopy check can run on.
enum GradedInput {
    Ops(GradedOps),
    Rep { rep: AInfRep, operator: Option<HomotopyOperator> },
}

fn graded_input(f: Fixture, k: usize, file: &Path) -> Result<GradedInput> {
    Ok(match f {
        Fixture::Graded(GradedFixture::AInf(g)) | Fixture::Graded(GradedFixture::DiassInf(g)) => GradedInput::Ops(g),
        Fixture::Graded(GradedFixture::AInfRep { rep, operator }) => GradedInput::Rep { rep, operator },
        Fixture::Algebra(a) => GradedInput::Ops(GradedOps::from_associative(&a, k)),
        Fixture::Diass(d) => GradedInput::Ops(GradedOps::from_diass(&d, k)),
        Fixture::Bimodule { algebra, bimodule } => GradedInput::Rep { rep: AInfRep::from_bimodule(&algebra, &bimodule, k)?, operator: None },
        Fixture::Ravg(r) => GradedInput::Rep {
            rep: AInfRep::from_bimodule(&r.a, &r.m, k)?,
            operator: Some(HomotopyOperator::strict(&r.p, k)),
        },
        other => return Err(wrong_kind(file, "graded-ops, algebra, bimodule, diass or ravg", &other)),
    })
}

fn cmd_homotopy(file: &Path, check: HomotopyCheck, k: usize, seed: u64) -> Result<Response> {
    if k == 0 {
        return Err(Error::Parse("--K must be at least 1".into()));
    }
    let inp = input(file)?;
    let mut out = Response::new();
    out.set("fixture", inp.name.clone());
    out.set("K", k);
    out.line(format!("fixture: {} (K = {k})", inp.name));
    match check {
        HomotopyCheck::Twist => {
            let Fixture::Ravg(r) = inp.fixture else {
                return Err(wrong_kind(file, "ravg", &inp.fixture));
            };
            twist(&r, k, seed, &mut out)?;
            return Ok(out);
        }
        HomotopyCheck::Mc => {
            if let Fixture::Ravg(r) = &inp.fixture {
                let flag = mc_check_ravg(r)?;
                let direct = verify_relative_averaging(r)?.is_valid();
                out.info("maurer_cartan", "Maurer–Cartan flag", flag);
                out.info("direct", "direct averaging verifier", direct);
                out.flag("agree", "flag agrees with the direct verifier", flag == direct);
                out.flag("averaging", "P is a relative averaging operator", direct);
                out.flag("bidegree_vanishing", "[[[Δ,P],P],P] = 0", bidegree_vanishing(r)?);
                return Ok(out);
            }
        }
        _ => {}
    }
    let g = graded_input(inp.fixture, k, file)?;
    let clamp = |m: usize| k.min(m);
    match (check, g) {
        (HomotopyCheck::Ainf, GradedInput::Ops(g)) => {
            if g.kind != OpsKind::AInfinity {
                return Err(Error::Parse(format!("{}: not an A∞ structure", file.display())));
            }
            out.report("report", &verify_ainf(&g, clamp(g.max_arity()))?);
        }
        (HomotopyCheck::Ainf, GradedInput::Rep { rep, .. }) => {
            out.report("report", &verify_ainf_rep(&rep, clamp(rep.total.max_arity()))?);
        }
        (HomotopyCheck::Diassinf, GradedInput::Ops(g)) => {
            let g = GradedOps { kind: OpsKind::DiassInfinity, ..g };
            out.report("report", &verify_diass_inf(&g, clamp(g.max_arity()))?);
        }
        (HomotopyCheck::Diassinf, GradedInput::Rep { rep, operator }) => {
            let kk = clamp(rep.total.max_arity());
            out.report("semidirect", &verify_diass_inf(&diass_inf_semidirect(&rep, kk), kk)?);
            if let Some(p) = operator {
                let chk = homotopy_ravg_check(&rep, &p, kk)?;
                let valid = chk.is_valid();
                out.report("operator", &chk);
                if valid {
                    let induced = induced_diass_inf(&rep, &p, kk)?;
                    out.report("induced", &verify_diass_inf(&induced, kk)?);
                }
            }
        }
        (HomotopyCheck::Mc, GradedInput::Rep { rep, operator: Some(p) }) => {
            let kk = clamp(rep.total.max_arity());
            let chk = homotopy_ravg_check(&rep, &p, kk)?;
            let l = homotopy_linf(&rep, kk);
            let x = homotopy_element(&p, &rep, kk)?;
            let flag = l.is_zero(&mc_sum(&l, &x, kk + 2)?);
            out.info("maurer_cartan", "Maurer–Cartan flag", flag);
            out.flag("agree", "flag agrees with the direct verifier", flag == chk.is_valid());
            out.report("report", &chk);
        }
        (HomotopyCheck::Mc, _) => {
            return Err(Error::Parse(format!("{}: the mc check needs a ravg fixture or an ainf-rep with P", file.display())));
        }
        (HomotopyCheck::Twist, _) => unreachable!("handled above"),
    }
    Ok(out)
}

fn pair_flat(p: &ShiftedPair<Cochain>) -> Vec<Scalar> {
    p.h.data.iter().chain(p.a.data.iter()).cloned().collect()
}

/// Enough terms of `Σ (1/k!) l_{k+1}(α, …, α, x)` for cochains of degree ≤ 3.
const TWIST_TOTAL: usize = 7;

/// `(l₁^α)² = 0` and `l₁^α = (−1)ⁿ δ_rAvg` on random cochains of degree
/// `1..=3`.
fn twist(r: &RAvgAlgebra, k: usize, seed: u64, out: &mut Response) -> Result<()> {
    let direct = verify_relative_averaging(r)?;
    let valid = direct.is_valid();
    out.report("base", &direct);
    if !valid || !mc_check_ravg(r)? {
        out.flag("maurer_cartan", "(s⁻¹Δ, P) is Maurer–Cartan", false);
        return Ok(());
    }
    let total = k.max(TWIST_TOTAL);
    out.set("total_truncation", total);
    out.line(format!("series truncated at {total} arguments"));
    let l = controlling_linf(r, total)?;
    let ctx = RAvgContext::adjoint(r)?;
    let (da, dm) = (r.a.dim, r.m.dim);
    let mut rng = crate::random::rng_from(seed, 0x7715);
    let mut rep = Report::new("twisted L∞ differential");
    for n in 1..=3 {
        for s in 0..3 {
            let v = crate::random::vector(&mut rng, ctx.space_dim(n));
            let c = ctx.unflatten(n, &v)?;
            let x = embed_ravg_cochain(&c, da, dm);
            let lx = l.l(&[&x])?;
            let llx = l.l(&[&lx])?;
            let z = zeros(llx.h.data.len() + llx.a.data.len());
            rep.check("(l₁^α)² = 0", || format!("(n={n}, sample {s})"), &pair_flat(&llx), &z);
            let d = embed_ravg_cochain(&ctx.coboundary(&c)?, da, dm);
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            let rhs: Vec<Scalar> = pair_flat(&d).iter().map(|x| x * &sign).collect();
            rep.check("l₁^α = (−1)ⁿ δ_rAvg", || format!("(n={n}, sample {s})"), &pair_flat(&lx), &rhs);
        }
    }
    out.set("seed", seed.to_string());
    out.report("report", &rep);
    Ok(())
}
