//! `A∞`-algebras, their representations, `Diass∞`-algebras, homotopy
//! relative averaging operators and the quotient `D → D/I`.

use num_traits::{One, Zero};
use rand::Rng;

use super::graded::{bracket_unchecked, odd, sign_of, GradedCochain, GradedSpace};
use crate::algebra::{AlgebraData, BimoduleData, DiassData};
use crate::cochain::{embed_ma, restrict_ma, Cochain, Multilinear};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, kernel_basis, unit, zeros, Matrix, Scalar, Vector};
use crate::report::Report;
use crate::trees::table;

pub const DEFAULT_MAX_ARITY: usize = 4;

const TRUNCATION_NOTE: &str = "structures truncated in arity; identities of arity ≤ K are exact";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpsKind {
    AInfinity,
    DiassInfinity,
}

/// Degree-1 operations `μ_k` (tree-independent) or `π_k` (tree-indexed) on a
/// graded space, up to a maximal arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOps {
    pub kind: OpsKind,
    pub space: GradedSpace,
    pub ops: GradedCochain,
}

fn tree_independent(m: &Multilinear) -> Cochain {
    let d = m.tgt;
    let mut c = Cochain::zero(m.arity(), d, d);
    for t in 0..c.num_trees() {
        for u in 0..c.num_tuples() {
            c.get_mut(t, u).clone_from_slice(m.get(u));
        }
    }
    c
}

fn tree_zero(c: &Cochain) -> Multilinear {
    let mut m = Multilinear::zero(&vec![c.src; c.arity], c.tgt);
    for u in 0..c.num_tuples() {
        let t = c.tgt;
        m.data[u * t..(u + 1) * t].clone_from_slice(c.get(0, u));
    }
    m
}

fn location(n: usize, tree: Option<usize>, ix: &[usize]) -> String {
    let inputs: Vec<String> = ix.iter().map(|i| format!("e{i}")).collect();
    match tree {
        Some(t) => format!("(n={n}, y={}, inputs=({}))", table(n).trees[t], inputs.join(",")),
        None => format!("(n={n}, inputs=({}))", inputs.join(",")),
    }
}

impl GradedOps {
    pub fn ainf(space: GradedSpace, mus: &[Multilinear]) -> Result<GradedOps> {
        let d = space.dim();
        let mut parts = vec![];
        for (j, m) in mus.iter().enumerate() {
            if m.dims != vec![d; j + 1] || m.tgt != d {
                return Err(Error::DimensionMismatch(format!("μ_{} shape", j + 1)));
            }
            parts.push(tree_independent(m));
        }
        let ops = GradedCochain::from_parts(1, d, parts)?;
        ops.check_degree(&space)?;
        Ok(GradedOps { kind: OpsKind::AInfinity, space, ops })
    }

    pub fn diass_inf(space: GradedSpace, pis: Vec<Cochain>) -> Result<GradedOps> {
        let ops = GradedCochain::from_parts(1, space.dim(), pis)?;
        ops.check_degree(&space)?;
        Ok(GradedOps { kind: OpsKind::DiassInfinity, space, ops })
    }

    pub fn zero(kind: OpsKind, space: GradedSpace, max_arity: usize) -> GradedOps {
        let ops = GradedCochain::zero(space.dim(), max_arity, 1);
        GradedOps { kind, space, ops }
    }

    /// An associative algebra placed in degree `−1`, with `μ_2` only.
    pub fn from_associative(a: &AlgebraData, max_arity: usize) -> GradedOps {
        let space = GradedSpace::concentrated(a.dim, -1);
        let mut g = GradedOps::zero(OpsKind::AInfinity, space, max_arity.max(2));
        *g.ops.part_mut(2) = tree_independent(&Multilinear::from_bilinear(&a.mu));
        g
    }

    /// A diassociative algebra placed in degree `−1`, with `π_2` only.
    pub fn from_diass(d: &DiassData, max_arity: usize) -> GradedOps {
        let space = GradedSpace::concentrated(d.dim, -1);
        let mut g = GradedOps::zero(OpsKind::DiassInfinity, space, max_arity.max(2));
        *g.ops.part_mut(2) = Cochain::from_diass(d);
        g
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_arity(&self) -> usize {
        self.ops.max_arity()
    }

    /// `μ_k` read at the first tree.
    pub fn mu(&self, k: usize) -> Multilinear {
        match self.ops.parts.get(k - 1) {
            Some(c) => tree_zero(c),
            None => Multilinear::zero(&vec![self.dim(); k], self.dim()),
        }
    }
}

/// A representation `(M, η_k)` of an `A∞`-algebra, stored together with the
/// square-zero `A∞` structure on `A ⊕ M` it is equivalent to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfRep {
    pub base: GradedOps,
    pub module: GradedSpace,
    /// `ν_k = μ_k` on `A`-inputs, `η_k` on inputs with one `M` entry, `0`
    /// otherwise.
    pub total: GradedOps,
}

impl AInfRep {
    /// `eta[k−1][j]` is `η_k` with the module in slot `j`.
    pub fn new(base: &GradedOps, module: GradedSpace, eta: &[Vec<Multilinear>]) -> Result<AInfRep> {
        if base.kind != OpsKind::AInfinity {
            return Err(Error::Precondition("representations are of A∞-algebras".into()));
        }
        let (da, dm) = (base.dim(), module.dim());
        let k_max = base.max_arity().max(eta.len());
        let d = da + dm;
        let mut parts = vec![];
        for k in 1..=k_max {
            let mu = base.mu(k);
            let etas = eta.get(k - 1);
            if let Some(e) = etas {
                for (j, m) in e.iter().enumerate() {
                    let mut want = vec![da; k];
                    want[j] = dm;
                    if m.dims != want || m.tgt != dm {
                        return Err(Error::DimensionMismatch(format!("η_{k} slot {j} shape")));
                    }
                }
            }
            let c = Cochain::from_fn(k, d, d, |_, ix| {
                let ms: Vec<usize> = (0..k).filter(|&s| ix[s] >= da).collect();
                let mut v = zeros(d);
                match ms.as_slice() {
                    [] => v[..da].clone_from_slice(mu.entry(ix)),
                    [j] => {
                        if let Some(m) = etas.and_then(|e| e.get(*j)) {
                            let mut sub = ix.to_vec();
                            sub[*j] -= da;
                            v[da..].clone_from_slice(m.entry(&sub));
                        }
                    }
                    _ => {}
                }
                v
            });
            parts.push(c);
        }
        let space = base.space.direct_sum(&module);
        let ops = GradedCochain::from_parts(1, d, parts)?;
        ops.check_degree(&space)?;
        Ok(AInfRep {
            base: base.clone(),
            module,
            total: GradedOps { kind: OpsKind::AInfinity, space, ops },
        })
    }

    /// The `A∞`-algebra acting on itself.
    pub fn adjoint(base: &GradedOps) -> Result<AInfRep> {
        let eta: Vec<Vec<Multilinear>> = (1..=base.max_arity())
            .map(|k| {
                let mu = base.mu(k);
                vec![mu; k]
            })
            .collect();
        AInfRep::new(base, base.space.clone(), &eta)
    }

    /// A bimodule over an associative algebra, both placed in degree `−1`.
    pub fn from_bimodule(a: &AlgebraData, m: &BimoduleData, max_arity: usize) -> Result<AInfRep> {
        let base = GradedOps::from_associative(a, max_arity);
        let mut eta = vec![vec![]; base.max_arity()];
        eta[1] = vec![Multilinear::from_bilinear(&m.right), Multilinear::from_bilinear(&m.left)];
        AInfRep::new(&base, GradedSpace::concentrated(m.dim, -1), &eta)
    }

    /// Reads a representation off a square-zero structure on `A ⊕ M`.
    pub fn from_total(a_space: GradedSpace, m_space: GradedSpace, total: GradedCochain) -> Result<AInfRep> {
        let (da, dm) = (a_space.dim(), m_space.dim());
        let space = a_space.direct_sum(&m_space);
        if total.degree != 1 || total.dim != da + dm {
            return Err(Error::DimensionMismatch("square-zero structure".into()));
        }
        total.check_degree(&space)?;
        if !total.is_tree_independent() {
            return Err(Error::InvalidStructure("A∞ operations must not depend on trees".into()));
        }
        for p in &total.parts {
            let mut ix = vec![0; p.arity];
            for u in 0..p.num_tuples() {
                p.decode_into(u, &mut ix);
                let nm = ix.iter().filter(|&&i| i >= da).count();
                let v = p.get(0, u);
                let bad = match nm {
                    0 => !is_zero_vec(&v[da..]),
                    1 => !is_zero_vec(&v[..da]),
                    _ => !is_zero_vec(v),
                };
                if bad {
                    return Err(Error::InvalidStructure(format!(
                        "not a square-zero structure at {}",
                        location(p.arity, None, &ix)
                    )));
                }
            }
        }
        let base_parts = total
            .parts
            .iter()
            .map(|p| Cochain::from_fn(p.arity, da, da, |_, ix| p.entry(0, ix)[..da].to_vec()))
            .collect();
        let base = GradedOps {
            kind: OpsKind::AInfinity,
            space: a_space,
            ops: GradedCochain::from_parts(1, da, base_parts)?,
        };
        Ok(AInfRep {
            base,
            module: m_space,
            total: GradedOps { kind: OpsKind::AInfinity, space, ops: total },
        })
    }

    pub fn da(&self) -> usize {
        self.base.dim()
    }

    pub fn dm(&self) -> usize {
        self.module.dim()
    }

    /// `η_k` with the module in slot `j`.
    pub fn eta(&self, k: usize, j: usize) -> Multilinear {
        let (da, dm) = (self.da(), self.dm());
        let mut dims = vec![da; k];
        dims[j] = dm;
        let p = self.total.ops.parts.get(k - 1);
        Multilinear::from_fn(&dims, dm, |ix| match p {
            Some(p) => {
                let mut full = ix.to_vec();
                full[j] += da;
                p.entry(0, &full)[da..].to_vec()
            }
            None => zeros(dm),
        })
    }
}

/// `Σ_{k+l=n+1} Σ_i ± op_k(…, op_l(…), …)` at one tree and basis tuple.
fn identity_sum(ops: &GradedCochain, space: &GradedSpace, n: usize, tree: Option<usize>, ix: &[usize]) -> Vector {
    let d = ops.dim;
    let mut acc = zeros(d);
    for l in 1..=n {
        let k = n + 1 - l;
        let (Some(outer), Some(inner)) = (ops.parts.get(k - 1), ops.parts.get(l - 1)) else {
            continue;
        };
        if outer.is_zero() || inner.is_zero() {
            continue;
        }
        for i in 1..=k {
            let (to, ti) = match tree {
                Some(t) => table(n).comps(k, i)[t],
                None => (0, 0),
            };
            let v = inner.entry(ti, &ix[i - 1..i - 1 + l]);
            if is_zero_vec(v) {
                continue;
            }
            let sign = sign_of(odd(ops.degree) && odd(space.tuple_degree(&ix[..i - 1])));
            let mut idx: Vec<usize> = ix[..i - 1].to_vec();
            idx.push(0);
            idx.extend_from_slice(&ix[i - 1 + l..]);
            for (c, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                idx[i - 1] = c;
                axpy(&mut acc, &(&sign * x), outer.entry(to, &idx));
            }
        }
    }
    acc
}

fn for_each_tuple(d: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let total = d.pow(n as u32);
    let mut ix = vec![0; n];
    for mut u in 0..total {
        for s in ix.iter_mut().rev() {
            *s = u % d;
            u /= d;
        }
        f(&ix);
    }
}

fn check_identities(
    rep: &mut Report,
    ops: &GradedCochain,
    space: &GradedSpace,
    max_arity: usize,
    trees: bool,
    label: impl Fn(&[usize]) -> Option<&'static str>,
) {
    let d = ops.dim;
    let z = zeros(d);
    for n in 1..=max_arity {
        let nt = if trees { table(n).len() } else { 1 };
        for_each_tuple(d, n, |ix| {
            let Some(name) = label(ix) else { return };
            for t in 0..nt {
                let tree = trees.then_some(t);
                let s = identity_sum(ops, space, n, tree, ix);
                rep.check(name, || location(n, tree, ix), &s, &z);
            }
        });
    }
}

fn require_ainf(a: &GradedOps) -> Result<()> {
    if a.kind != OpsKind::AInfinity {
        return Err(Error::Precondition("A∞ operations expected".into()));
    }
    if a.ops.degree != 1 {
        return Err(Error::InvalidStructure("A∞ operations have degree 1".into()));
    }
    a.ops.check_degree(&a.space)?;
    if !a.ops.is_tree_independent() {
        return Err(Error::InvalidStructure("A∞ operations must not depend on trees".into()));
    }
    Ok(())
}

/// The higher associativities for every `n ≤ max_arity`.
pub fn verify_ainf(a: &GradedOps, max_arity: usize) -> Result<Report> {
    require_ainf(a)?;
    let mut rep = Report::new("A∞-algebra");
    check_identities(&mut rep, &a.ops, &a.space, max_arity, false, |_| Some("higher associativity"));
    rep.note(TRUNCATION_NOTE);
    Ok(rep)
}

/// The higher associativities with one module entry (and without any).
pub fn verify_ainf_rep(r: &AInfRep, max_arity: usize) -> Result<Report> {
    require_ainf(&r.base)?;
    require_ainf(&r.total)?;
    let da = r.da();
    let mut rep = Report::new("A∞-representation");
    check_identities(&mut rep, &r.total.ops, &r.total.space, max_arity, false, |ix| {
        match ix.iter().filter(|&&i| i >= da).count() {
            0 => Some("higher associativity"),
            1 => Some("representation identity"),
            _ => None,
        }
    });
    rep.note(TRUNCATION_NOTE);
    Ok(rep)
}

/// The tree-indexed higher diassociativities for every `n ≤ max_arity`.
pub fn verify_diass_inf(d: &GradedOps, max_arity: usize) -> Result<Report> {
    if d.ops.degree != 1 {
        return Err(Error::InvalidStructure("Diass∞ operations have degree 1".into()));
    }
    d.ops.check_degree(&d.space)?;
    let mut rep = Report::new("Diass∞-algebra");
    check_identities(&mut rep, &d.ops, &d.space, max_arity, true, |_| Some("higher diassociativity"));
    rep.note(TRUNCATION_NOTE);
    Ok(rep)
}

/// `π_k(y; (a_i, u_i)) = (μ_k(a…), η_k(a_1, …, u_i, …, a_k))` with `i` the
/// split index of `y`.
pub fn diass_inf_semidirect(r: &AInfRep, max_arity: usize) -> GradedOps {
    let da = r.da();
    let d = r.total.dim();
    let parts = (1..=max_arity)
        .map(|k| match r.total.ops.parts.get(k - 1) {
            None => Cochain::zero(k, d, d),
            Some(nu) => Cochain::from_fn(k, d, d, |t, ix| {
                let ms: Vec<usize> = (0..k).filter(|&s| ix[s] >= da).collect();
                let keep = match ms.as_slice() {
                    [] => true,
                    [j] => *j + 1 == table(k).split[t],
                    _ => false,
                };
                if keep {
                    nu.entry(0, ix).to_vec()
                } else {
                    zeros(d)
                }
            }),
        })
        .collect();
    GradedOps {
        kind: OpsKind::DiassInfinity,
        space: r.total.space.clone(),
        ops: GradedCochain { degree: 1, dim: d, parts },
    }
}

/// The converse: a `Diass∞` structure on `A ⊕ M` of semidirect shape gives
/// back `(μ_k)` and `(η_k)`.
pub fn diass_inf_components(dd: &GradedOps, a_space: &GradedSpace, m_space: &GradedSpace) -> Result<AInfRep> {
    let (da, dm) = (a_space.dim(), m_space.dim());
    if dd.dim() != da + dm || a_space.direct_sum(m_space) != dd.space {
        return Err(Error::DimensionMismatch("A ⊕ M layout".into()));
    }
    let d = da + dm;
    let mut total = vec![];
    for p in &dd.ops.parts {
        let k = p.arity;
        let tab = table(k);
        let rep_tree = |j: usize| (0..tab.len()).find(|&t| tab.split[t] == j + 1).expect("every split occurs");
        let mut ix = vec![0; k];
        for t in 0..p.num_trees() {
            for u in 0..p.num_tuples() {
                p.decode_into(u, &mut ix);
                let ms: Vec<usize> = (0..k).filter(|&s| ix[s] >= da).collect();
                let v = p.get(t, u);
                let ok = match ms.as_slice() {
                    [] => is_zero_vec(&v[da..]) && v == p.get(0, u),
                    [j] if *j + 1 == tab.split[t] => is_zero_vec(&v[..da]) && v == p.get(rep_tree(*j), u),
                    _ => is_zero_vec(v),
                };
                if !ok {
                    return Err(Error::InvalidStructure(format!(
                        "not of semidirect shape at {}",
                        location(k, Some(t), &ix)
                    )));
                }
            }
        }
        total.push(Cochain::from_fn(k, d, d, |_, ix| {
            let ms: Vec<usize> = (0..k).filter(|&s| ix[s] >= da).collect();
            match ms.as_slice() {
                [] => p.entry(0, ix).to_vec(),
                [j] => p.entry(rep_tree(*j), ix).to_vec(),
                _ => zeros(d),
            }
        }));
    }
    let total = GradedCochain::from_parts(1, d, total)?;
    AInfRep::from_total(a_space.clone(), m_space.clone(), total)
}

/// A degree-0 element `P = Σ P_k`, `P_k : 𝐤[Y_k] ⊗ M^{⊗k} → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyOperator {
    pub parts: Vec<Cochain>,
}

impl HomotopyOperator {
    pub fn zero(max_arity: usize, dm: usize, da: usize) -> HomotopyOperator {
        HomotopyOperator {
            parts: (1..=max_arity).map(|k| Cochain::zero(k, dm, da)).collect(),
        }
    }

    /// `P_1 = p`, `P_k = 0` otherwise.
    pub fn strict(p: &Matrix, max_arity: usize) -> HomotopyOperator {
        let mut h = HomotopyOperator::zero(max_arity.max(1), p.cols, p.rows);
        h.parts[0] = Cochain::from_matrix(p);
        h
    }

    pub fn max_arity(&self) -> usize {
        self.parts.len()
    }

    pub fn is_strict(&self) -> bool {
        self.parts.iter().skip(1).all(Cochain::is_zero)
    }

    /// `P` as an element of `CY^0(A ⊕ M, A ⊕ M)`.
    pub fn to_graded(&self, da: usize, dm: usize, max_arity: usize) -> Result<GradedCochain> {
        let parts = (1..=max_arity)
            .map(|k| match self.parts.get(k - 1) {
                Some(p) if (p.src, p.tgt) == (dm, da) => Ok(embed_ma(p, da, dm)),
                Some(_) => Err(Error::DimensionMismatch(format!("P_{k} shape"))),
                None => Ok(Cochain::zero(k, da + dm, da + dm)),
            })
            .collect::<Result<Vec<_>>>()?;
        GradedCochain::from_parts(0, da + dm, parts)
    }
}

/// `e^{[−,P]} x = Σ (1/k!) [⋯[x, P], …, P]`, truncated at `max_arity`. The
/// series is finite: every bracket with `P` either feeds `P` into an input
/// or applies `P` to an `M`-valued output.
pub fn exp_ad(x: &GradedCochain, p: &GradedCochain, space: &GradedSpace, max_arity: usize) -> Result<GradedCochain> {
    let mut term = x.truncate(max_arity);
    let mut acc = term.clone();
    for k in 1..=max_arity + 2 {
        term = bracket_unchecked(&term, p, space, max_arity)?.scale(&Scalar::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn exp_semidirect(r: &AInfRep, p: &HomotopyOperator, max_arity: usize) -> Result<GradedCochain> {
    let pg = p.to_graded(r.da(), r.dm(), max_arity)?;
    pg.check_degree(&r.total.space)?;
    let pi = diass_inf_semidirect(r, max_arity);
    exp_ad(&pi.ops, &pg, &r.total.space, max_arity)
}

/// `p(e^{[−,P]} π) = 0` in arities `≤ max_arity`, with `π` the semidirect
/// `Diass∞` structure. The representation itself is not re-verified.
pub fn homotopy_ravg_check(r: &AInfRep, p: &HomotopyOperator, max_arity: usize) -> Result<Report> {
    let e = exp_semidirect(r, p, max_arity)?;
    let (da, dm) = (r.da(), r.dm());
    let mut rep = Report::new("homotopy relative averaging operator");
    let z = zeros(da);
    for c in &e.parts {
        let pa = restrict_ma(c, da, dm);
        let mut ix = vec![0; c.arity];
        for t in 0..pa.num_trees() {
            for u in 0..pa.num_tuples() {
                pa.decode_into(u, &mut ix);
                let full: Vec<usize> = ix.iter().map(|i| i + da).collect();
                rep.check("homotopy averaging", || location(c.arity, Some(t), &full), pa.get(t, u), &z);
            }
        }
    }
    rep.note(TRUNCATION_NOTE);
    Ok(rep)
}

/// `μ_k(P u_1, …, P u_k) = P η_k(P u_1, …, u_i, …, P u_k)` for all `k ≤ K`
/// and all `i`.
pub fn strict_operator_check(r: &AInfRep, p: &Matrix, max_arity: usize) -> Result<Report> {
    let (da, dm) = (r.da(), r.dm());
    if (p.rows, p.cols) != (da, dm) {
        return Err(Error::DimensionMismatch("P : M → A".into()));
    }
    for i in 0..da {
        for j in 0..dm {
            if !p.get(i, j).is_zero() && r.base.space.degs[i] != r.module.degs[j] {
                return Err(Error::InvalidStructure("degree bookkeeping: P has degree 0".into()));
            }
        }
    }
    let pu: Vec<Vector> = (0..dm).map(|u| p.column(u)).collect();
    let mut rep = Report::new("strict homotopy relative averaging operator");
    for k in 1..=max_arity {
        let mu = r.base.mu(k);
        let etas: Vec<Multilinear> = (0..k).map(|j| r.eta(k, j)).collect();
        for_each_tuple(dm, k, |ix| {
            let args: Vec<&[Scalar]> = ix.iter().map(|&u| pu[u].as_slice()).collect();
            let lhs = mu.eval(&args);
            for (i, eta) in etas.iter().enumerate() {
                let e = unit(dm, ix[i]);
                let mut a2 = args.clone();
                a2[i] = &e;
                let rhs = p.apply(&eta.eval(&a2));
                rep.check(
                    "strict averaging",
                    || {
                        let full: Vec<usize> = ix.iter().map(|x| x + da).collect();
                        format!("{}, module slot {}", location(k, None, &full), i + 1)
                    },
                    &lhs,
                    &rhs,
                );
            }
        });
    }
    Ok(rep)
}

/// `π_k^P = (e^{[−,P]} π)|_{𝐤[Y_k] ⊗ M^{⊗k}}`.
pub fn induced_diass_inf(r: &AInfRep, p: &HomotopyOperator, max_arity: usize) -> Result<GradedOps> {
    let chk = homotopy_ravg_check(r, p, max_arity)?;
    if let Some(v) = chk.first_violation() {
        return Err(Error::Precondition(format!(
            "not a homotopy relative averaging operator: {} at {}",
            v.identity, v.location
        )));
    }
    let e = exp_semidirect(r, p, max_arity)?;
    let (da, dm) = (r.da(), r.dm());
    let parts = e
        .parts
        .iter()
        .map(|c| {
            Cochain::from_fn(c.arity, dm, dm, |t, ix| {
                let full: Vec<usize> = ix.iter().map(|i| i + da).collect();
                c.entry(t, &full)[da..].to_vec()
            })
        })
        .collect();
    GradedOps::diass_inf(r.module.clone(), parts)
}

/// Incremental span with reduced rows.
struct Span {
    rows: Vec<(usize, Vector)>,
}

impl Span {
    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let c = -(&v[*piv] / &row[*piv]);
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(piv) => {
                for (_, row) in self.rows.iter_mut() {
                    if !row[piv].is_zero() {
                        let c = -(&row[piv] / &r[piv]);
                        axpy(row, &c, &r);
                    }
                }
                self.rows.push((piv, r));
                true
            }
        }
    }
}

/// `D → D/I` with `I` the ideal generated by the tree differences.
#[derive(Clone, Debug)]
pub struct DiassQuotient {
    /// `D/I` with its `A∞` structure, acting on `D`.
    pub rep: AInfRep,
    /// The quotient map `q : D → D/I`.
    pub q: Matrix,
    /// The chosen splitting `D/I → D` by standard basis vectors.
    pub section: Matrix,
    /// A homogeneous basis of `I`.
    pub ideal: Vec<Vector>,
    /// Representation identities, strictness of `q` and equality of the
    /// induced structure with `D`.
    pub report: Report,
}

pub fn quotient_ainf(dd: &GradedOps, max_arity: usize) -> Result<DiassQuotient> {
    dd.ops.check_degree(&dd.space)?;
    let n = dd.dim();
    let k_max = max_arity.min(dd.max_arity());
    let mut span = Span { rows: vec![] };
    let mut ideal: Vec<Vector> = vec![];
    let mut queue: Vec<Vector> = vec![];
    for k in 1..=k_max {
        let p = dd.ops.part(k);
        for t in 1..p.num_trees() {
            for u in 0..p.num_tuples() {
                let v: Vector = p.get(t, u).iter().zip(p.get(0, u)).map(|(a, b)| a - b).collect();
                if span.insert(&v) {
                    ideal.push(v.clone());
                    queue.push(v);
                }
            }
        }
    }
    while let Some(v) = queue.pop() {
        for k in 1..=k_max {
            let p = dd.ops.part(k);
            for t in 0..p.num_trees() {
                for j in 0..k {
                    for_each_tuple(n, k - 1, |rest| {
                        let mut ix: Vec<usize> = rest[..j].to_vec();
                        ix.push(0);
                        ix.extend_from_slice(&rest[j..]);
                        let mut w = zeros(n);
                        for (c, x) in v.iter().enumerate() {
                            if !x.is_zero() {
                                ix[j] = c;
                                axpy(&mut w, x, p.entry(t, &ix));
                            }
                        }
                        if span.insert(&w) {
                            ideal.push(w.clone());
                            queue.push(w);
                        }
                    });
                }
            }
        }
    }
    // complement by standard basis vectors
    let mut chosen = vec![];
    for j in 0..n {
        if span.insert(&unit(n, j)) {
            chosen.push(j);
        }
    }
    let r = chosen.len();
    let mut cols = ideal.clone();
    cols.extend(chosen.iter().map(|&j| unit(n, j)));
    let basis = Matrix::from_columns(n, &cols)?;
    let mut q = Matrix::zeros(r, n);
    for x in 0..n {
        let coeffs = crate::linalg::coset_solve(&basis, &unit(n, x))?.expect("basis of D");
        for (i, c) in coeffs[ideal.len()..].iter().enumerate() {
            q.set(i, x, c.clone());
        }
    }
    let mut section = Matrix::zeros(n, r);
    for (i, &j) in chosen.iter().enumerate() {
        section.set(j, i, Scalar::one());
    }
    let qspace = GradedSpace::new(chosen.iter().map(|&j| dd.space.degs[j]).collect());
    let mus: Vec<Multilinear> = (1..=k_max)
        .map(|k| {
            let p = dd.ops.part(k);
            Multilinear::from_fn(&vec![r; k], r, |ix| {
                let lifted: Vec<usize> = ix.iter().map(|&i| chosen[i]).collect();
                q.apply(p.entry(0, &lifted))
            })
        })
        .collect();
    let base = GradedOps::ainf(qspace, &mus)?;
    let eta: Vec<Vec<Multilinear>> = (1..=k_max)
        .map(|k| {
            let p = dd.ops.part(k);
            let tab = table(k);
            (0..k)
                .map(|j| {
                    let t = (0..tab.len()).find(|&t| tab.split[t] == j + 1).expect("split occurs");
                    let mut dims = vec![r; k];
                    dims[j] = n;
                    Multilinear::from_fn(&dims, n, |ix| {
                        let lifted: Vec<usize> = ix
                            .iter()
                            .enumerate()
                            .map(|(s, &i)| if s == j { i } else { chosen[i] })
                            .collect();
                        p.entry(t, &lifted).to_vec()
                    })
                })
                .collect()
        })
        .collect();
    let rep = AInfRep::new(&base, dd.space.clone(), &eta)?;
    let mut report = Report::new("quotient A∞-algebra");
    report.merge(verify_ainf_rep(&rep, k_max)?);
    report.merge(strict_operator_check(&rep, &q, k_max)?);
    match induced_diass_inf(&rep, &HomotopyOperator::strict(&q, k_max), k_max) {
        Ok(ind) => {
            for k in 1..=k_max {
                let (a, b) = (ind.ops.part(k), dd.ops.part(k));
                let mut ix = vec![0; k];
                for t in 0..a.num_trees() {
                    for u in 0..a.num_tuples() {
                        a.decode_into(u, &mut ix);
                        report.check("induced structure equals D", || location(k, Some(t), &ix), a.get(t, u), b.get(t, u));
                    }
                }
            }
        }
        Err(e) => report.fail("q is a homotopy relative averaging operator", e.to_string()),
    }
    report.subject = "quotient A∞-algebra".into();
    Ok(DiassQuotient { rep, q, section, ideal, report })
}

/// A random degree-1 `d` with `d² = 0`.
pub fn random_differential<R: Rng>(rng: &mut R, space: &GradedSpace) -> Matrix {
    let n = space.dim();
    let mut d = Matrix::zeros(n, n);
    let Some((lo, hi)) = space.range() else { return d };
    // top-down: d_i lands in ker d_{i+1}
    for deg in (lo..hi).rev() {
        let src = space.indices_of(deg);
        let dst = space.indices_of(deg + 1);
        let next = space.indices_of(deg + 2);
        let mut blk = Matrix::zeros(next.len(), dst.len());
        for (a, &i) in next.iter().enumerate() {
            for (b, &j) in dst.iter().enumerate() {
                blk.set(a, b, d.get(i, j).clone());
            }
        }
        let ker = if next.is_empty() {
            (0..dst.len()).map(|j| unit(dst.len(), j)).collect()
        } else {
            kernel_basis(&blk)
        };
        for &j in &src {
            let col = crate::random::combination(rng, &ker, dst.len());
            for (b, &i) in dst.iter().enumerate() {
                d.set(i, j, col[b].clone());
            }
        }
    }
    d
}

/// A random degree-respecting arity-`k` map (tree-independent if asked).
pub fn random_graded_cochain<R: Rng>(
    rng: &mut R,
    space: &GradedSpace,
    arity: usize,
    degree: i64,
    tree_independent: bool,
) -> Cochain {
    let d = space.dim();
    if tree_independent {
        let m = Multilinear::from_fn(&vec![d; arity], d, |ix| {
            let want = space.tuple_degree(ix) + degree;
            (0..d)
                .map(|o| if space.degs[o] == want { crate::random::scalar(rng) } else { Scalar::zero() })
                .collect()
        });
        tree_independent_of(&m)
    } else {
        Cochain::from_fn(arity, d, d, |_, ix| {
            let want = space.tuple_degree(ix) + degree;
            (0..d)
                .map(|o| if space.degs[o] == want { crate::random::scalar(rng) } else { Scalar::zero() })
                .collect()
        })
    }
}

fn tree_independent_of(m: &Multilinear) -> Cochain {
    tree_independent(m)
}

/// A random `A∞`-algebra: a random differential moved by the gauge
/// `e^{[−,φ]}` of a random degree-0 binary `φ`.
pub fn random_ainf<R: Rng>(rng: &mut R, space: &GradedSpace, max_arity: usize) -> GradedOps {
    let d = space.dim();
    let mut mu = GradedCochain::zero(d, max_arity, 1);
    let diff = random_differential(rng, space);
    mu.parts[0] = Cochain::from_matrix(&diff);
    let mut phi = GradedCochain::zero(d, max_arity, 0);
    if max_arity >= 2 {
        phi.parts[1] = random_graded_cochain(rng, space, 2, 0, true);
    }
    let ops = exp_ad(&mu, &phi, space, max_arity).expect("shapes agree");
    GradedOps { kind: OpsKind::AInfinity, space: space.clone(), ops }
}

/// A random representation: differentials on `A` and `M` moved by a random
/// square-zero degree-0 binary gauge.
pub fn random_ainf_rep<R: Rng>(rng: &mut R, a_space: &GradedSpace, m_space: &GradedSpace, max_arity: usize) -> AInfRep {
    let (da, dm) = (a_space.dim(), m_space.dim());
    let space = a_space.direct_sum(m_space);
    let d = da + dm;
    let (xa, xm) = (random_differential(rng, a_space), random_differential(rng, m_space));
    let mut nu = GradedCochain::zero(d, max_arity, 1);
    nu.parts[0] = Cochain::from_fn(1, d, d, |_, ix| {
        let mut v = zeros(d);
        if ix[0] < da {
            v[..da].clone_from_slice(&xa.column(ix[0]));
        } else {
            v[da..].clone_from_slice(&xm.column(ix[0] - da));
        }
        v
    });
    let mut phi = GradedCochain::zero(d, max_arity, 0);
    if max_arity >= 2 {
        let raw = random_graded_cochain(rng, &space, 2, 0, true);
        phi.parts[1] = Cochain::from_fn(2, d, d, |t, ix| {
            let nm = ix.iter().filter(|&&i| i >= da).count();
            let mut v = raw.entry(t, ix).to_vec();
            match nm {
                0 => v[da..].iter_mut().for_each(|x| *x = Scalar::zero()),
                1 => v[..da].iter_mut().for_each(|x| *x = Scalar::zero()),
                _ => v.iter_mut().for_each(|x| *x = Scalar::zero()),
            }
            v
        });
    }
    let total = exp_ad(&nu, &phi, &space, max_arity).expect("shapes agree");
    AInfRep::from_total(a_space.clone(), m_space.clone(), total).expect("square-zero shape is preserved")
}

/// Random degree-1 tree-indexed operations, usually not `Diass∞`.
pub fn random_diass_candidate<R: Rng>(rng: &mut R, space: &GradedSpace, max_arity: usize) -> GradedOps {
    let parts = (1..=max_arity)
        .map(|k| random_graded_cochain(rng, space, k, 1, false))
        .collect();
    GradedOps {
        kind: OpsKind::DiassInfinity,
        space: space.clone(),
        ops: GradedCochain { degree: 1, dim: space.dim(), parts },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::kx2_adjoint;

    #[test]
    fn associative_in_degree_minus_one() {
        let r = kx2_adjoint();
        let a = GradedOps::from_associative(&r.a, 3);
        assert!(verify_ainf(&a, 3).unwrap().is_valid());
        let rep = AInfRep::from_bimodule(&r.a, &r.m, 3).unwrap();
        assert!(verify_ainf_rep(&rep, 3).unwrap().is_valid());
        let p = HomotopyOperator::strict(&r.p, 3);
        assert!(homotopy_ravg_check(&rep, &p, 3).unwrap().is_valid());
        assert!(strict_operator_check(&rep, &r.p, 3).unwrap().is_valid());
    }

    #[test]
    fn random_ainf_is_ainf() {
        let mut rng = crate::random::rng(81);
        let space = GradedSpace::from_dims(-2, &[1, 1, 1]);
        let a = random_ainf(&mut rng, &space, 3);
        assert!(verify_ainf(&a, 3).unwrap().is_valid());
        let rep = random_ainf_rep(&mut rng, &space, &GradedSpace::from_dims(-1, &[1, 1]), 3);
        assert!(verify_ainf_rep(&rep, 3).unwrap().is_valid());
        let dd = diass_inf_semidirect(&rep, 3);
        assert!(verify_diass_inf(&dd, 3).unwrap().is_valid());
        let back = diass_inf_components(&dd, &rep.base.space, &rep.module).unwrap();
        assert_eq!(back.total.ops.truncate(3), rep.total.ops.truncate(3));
    }

    #[test]
    fn squared_differential_fails_first_identity() {
        let space = GradedSpace::from_dims(0, &[1, 1, 1]);
        let d = Matrix::from_i64(3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
        let mut a = GradedOps::zero(OpsKind::AInfinity, space, 2);
        a.ops.parts[0] = Cochain::from_matrix(&d);
        let rep = verify_ainf(&a, 2).unwrap();
        assert!(rep.first_violation().unwrap().location.starts_with("(n=1"));
        let mut bad = GradedOps::zero(OpsKind::AInfinity, GradedSpace::concentrated(1, 0), 1);
        bad.ops.parts[0] = Cochain::from_matrix(&Matrix::identity(1));
        assert!(verify_ainf(&bad, 1).is_err());
    }
}
