//! Tree-indexed cochains, the Majumdar–Mukherjee bracket, the diassociative
//! coboundary, the derived bracket on `CY^•(M, A)`, `d_P`, the `Θ` maps and
//! bidegree bookkeeping.

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraData, BilinearMap, BimoduleData, DiassData, DiassRepData, RAvgAlgebra, RAvgBimodule};
use crate::constructions::{diass_direct_sum, induced_diass, induced_rep_on_b};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, is_zero_vec, parse_scalar, zeros, Scalar, Vector};
use crate::trees::{table, PlanarTree, Star};

pub(crate) fn pow(base: usize, e: usize) -> usize {
    base.pow(e as u32)
}

pub(crate) fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `f : 𝐤[Y_n] ⊗ V^{⊗n} → W`, stored densely as
/// `data[((tree · dim V^n + tuple) · dim W) + k]` with tuples in
/// lexicographic order (first slot most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub arity: usize,
    pub src: usize,
    pub tgt: usize,
    pub data: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(arity: usize, src: usize, tgt: usize) -> Cochain {
        let len = table(arity).len() * pow(src, arity) * tgt;
        Cochain {
            arity,
            src,
            tgt,
            data: zeros(len),
        }
    }

    pub fn from_fn(arity: usize, src: usize, tgt: usize, mut f: impl FnMut(usize, &[usize]) -> Vector) -> Cochain {
        let mut c = Cochain::zero(arity, src, tgt);
        let mut digits = vec![0; arity];
        for t in 0..c.num_trees() {
            for tup in 0..c.num_tuples() {
                c.decode_into(tup, &mut digits);
                let v = f(t, &digits);
                debug_assert_eq!(v.len(), tgt);
                c.get_mut(t, tup).clone_from_slice(&v);
            }
        }
        c
    }

    pub fn from_data(arity: usize, src: usize, tgt: usize, data: Vec<Scalar>) -> Result<Cochain> {
        let c = Cochain::zero(arity, src, tgt);
        if data.len() != c.data.len() {
            return Err(Error::DimensionMismatch(format!(
                "cochain of arity {arity} needs {} coordinates, got {}",
                c.data.len(),
                data.len()
            )));
        }
        Ok(Cochain { data, ..c })
    }

    /// An element of the target, as an arity-0 cochain.
    pub fn element(v: &[Scalar]) -> Cochain {
        Cochain {
            arity: 0,
            src: 0,
            tgt: v.len(),
            data: v.to_vec(),
        }
    }

    /// A linear map (a `tgt × src` matrix) on the unique tree of `Y_1`.
    pub fn from_matrix(p: &crate::linalg::Matrix) -> Cochain {
        Cochain::from_fn(1, p.cols, p.rows, |_, t| p.column(t[0]))
    }

    pub fn to_matrix(&self) -> crate::linalg::Matrix {
        assert_eq!(self.arity, 1, "only arity-one cochains are linear maps");
        let cols: Vec<Vector> = (0..self.src).map(|u| self.get(0, u).to_vec()).collect();
        crate::linalg::Matrix::from_columns(self.tgt, &cols).expect("shape")
    }

    /// `π` with `π(⊣-tree) = ⊣` and `π(⊢-tree) = ⊢`.
    pub fn from_diass(d: &DiassData) -> Cochain {
        Cochain::from_fn(2, d.dim, d.dim, |t, ix| {
            let prod = if t == 0 { &d.dashv } else { &d.vdash };
            prod.get(ix[0], ix[1]).to_vec()
        })
    }

    pub fn to_diass(&self) -> Result<DiassData> {
        if self.arity != 2 || self.src != self.tgt {
            return Err(Error::ArityMismatch("a diassociative structure is a 2-cochain on one space".into()));
        }
        let get = |t: usize| BilinearMap::from_fn(self.src, self.src, self.tgt, |i, j| self.entry(t, &[i, j]).to_vec());
        Ok(DiassData {
            dim: self.src,
            dashv: get(0),
            vdash: get(1),
        })
    }

    /// Whether the cochain maps `V^{⊗n} → W`; the source is vacuous in arity 0.
    pub fn fits(&self, src: usize, tgt: usize) -> bool {
        self.tgt == tgt && (self.arity == 0 || self.src == src)
    }

    pub fn num_trees(&self) -> usize {
        table(self.arity).len()
    }

    pub fn num_tuples(&self) -> usize {
        pow(self.src, self.arity)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, tree: usize, tuple: usize) -> usize {
        (tree * self.num_tuples() + tuple) * self.tgt
    }

    pub fn get(&self, tree: usize, tuple: usize) -> &[Scalar] {
        let o = self.offset(tree, tuple);
        &self.data[o..o + self.tgt]
    }

    pub fn get_mut(&mut self, tree: usize, tuple: usize) -> &mut [Scalar] {
        let o = self.offset(tree, tuple);
        let t = self.tgt;
        &mut self.data[o..o + t]
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.src + i)
    }

    pub fn decode_into(&self, mut tup: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = tup % self.src;
            tup /= self.src;
        }
    }

    pub fn entry(&self, tree: usize, idx: &[usize]) -> &[Scalar] {
        self.get(tree, self.encode(idx))
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, tree: usize, args: &[&[Scalar]]) -> Vector {
        assert_eq!(args.len(), self.arity);
        let mut out = zeros(self.tgt);
        let mut digits = vec![0; self.arity];
        for tup in 0..self.num_tuples() {
            self.decode_into(tup, &mut digits);
            let mut c = Scalar::one();
            for (a, &d) in args.iter().zip(&digits) {
                if a[d].is_zero() {
                    c = Scalar::zero();
                    break;
                }
                c *= &a[d];
            }
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, &c, self.get(tree, tup));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    fn same_shape(&self, o: &Cochain) -> bool {
        self.arity == o.arity && self.src == o.src && self.tgt == o.tgt
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        assert!(self.same_shape(o), "cochain shapes differ");
        let mut c = self.clone();
        crate::linalg::add_into(&mut c.data, &o.data);
        c
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        assert!(self.same_shape(o), "cochain shapes differ");
        let mut c = self.clone();
        crate::linalg::sub_into(&mut c.data, &o.data);
        c
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        let mut c = self.clone();
        for x in c.data.iter_mut() {
            *x *= s;
        }
        c
    }

    pub fn add_scaled(&mut self, s: &Scalar, o: &Cochain) {
        assert!(self.same_shape(o), "cochain shapes differ");
        crate::linalg::axpy(&mut self.data, s, &o.data);
    }

    pub fn to_json(&self) -> Value {
        let mut tbl = Map::new();
        for (t, tree) in table(self.arity).trees.iter().enumerate() {
            let rows: Vec<Value> = (0..self.num_tuples())
                .map(|tup| Value::from(self.get(t, tup).iter().map(format_scalar).collect::<Vec<_>>()))
                .collect();
            tbl.insert(tree.to_string(), Value::from(rows));
        }
        json!({"arity": self.arity, "source_dim": self.src, "target_dim": self.tgt, "table": tbl})
    }

    pub fn from_json(v: &Value) -> Result<Cochain> {
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("cochain: missing integer field '{k}'")))
        };
        let (arity, src, tgt) = (field("arity")?, field("source_dim")?, field("target_dim")?);
        let tbl = v
            .get("table")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("cochain: missing 'table'".into()))?;
        let mut c = Cochain::zero(arity, src, tgt);
        for (key, rows) in tbl {
            let tree = PlanarTree::parse(key)?;
            if tree.vertices() != arity {
                return Err(Error::Parse(format!("cochain: tree {key} has the wrong arity")));
            }
            let t = tree.index();
            let rows = rows
                .as_array()
                .filter(|r| r.len() == c.num_tuples())
                .ok_or_else(|| Error::Parse(format!("cochain: tree {key} needs {} rows", c.num_tuples())))?;
            for (tup, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == tgt)
                    .ok_or_else(|| Error::Parse(format!("cochain: row of length {tgt} expected")))?;
                for (k, x) in row.iter().enumerate() {
                    let s = x.as_str().ok_or_else(|| Error::Parse("cochain: entries are fraction strings".into()))?;
                    c.get_mut(t, tup)[k] = parse_scalar(s)?;
                }
            }
        }
        Ok(c)
    }
}

/// `f ∘_i g` for `f` of arity `m`, `g` of arity `n`, `1 ≤ i ≤ m`.
pub fn circ_i(f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain> {
    let (m, n) = (f.arity, g.arity);
    if m == 0 || n == 0 || i == 0 || i > m {
        return Err(Error::ArityMismatch(format!("∘_{i} of arities {m} and {n}")));
    }
    if g.tgt != f.src || g.src != f.src {
        return Err(Error::DimensionMismatch("partial composition needs g's target to be f's inputs".into()));
    }
    let d = f.src;
    let out_arity = m + n - 1;
    let mut out = Cochain::zero(out_arity, d, f.tgt);
    let comps = table(out_arity).comps(m, i);
    let (npre, nmid, nsuf) = (pow(d, i - 1), pow(d, n), pow(d, m - i));
    let tgt = f.tgt;
    for (t, &(o, inn)) in comps.iter().enumerate() {
        for mid in 0..nmid {
            let v = g.get(inn, mid);
            if is_zero_vec(v) {
                continue;
            }
            for pre in 0..npre {
                for suf in 0..nsuf {
                    let dst = out.offset(t, (pre * nmid + mid) * nsuf + suf);
                    for (c, vc) in v.iter().enumerate() {
                        if vc.is_zero() {
                            continue;
                        }
                        let src = f.get(o, (pre * d + c) * nsuf + suf);
                        for k in 0..tgt {
                            if !src[k].is_zero() {
                                out.data[dst + k] += vc * &src[k];
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `[f, g]_MM` for `f ∈ CY^m(D,D)`, `g ∈ CY^n(D,D)`, `m, n ≥ 1`.
pub fn mm_bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (m, n) = (f.arity, g.arity);
    if f.src != f.tgt || g.src != g.tgt || f.src != g.src {
        return Err(Error::DimensionMismatch("MM bracket needs cochains on a common space".into()));
    }
    if m == 0 || n == 0 {
        return Err(Error::ArityMismatch("MM bracket is defined for arities ≥ 1".into()));
    }
    let mut out = Cochain::zero(m + n - 1, f.src, f.tgt);
    for i in 1..=m {
        out.add_scaled(&sign((i - 1) * (n - 1)), &circ_i(f, g, i)?);
    }
    let outer = -sign((m - 1) * (n - 1));
    for i in 1..=n {
        out.add_scaled(&(&outer * sign((i - 1) * (m - 1))), &circ_i(g, f, i)?);
    }
    Ok(out)
}

/// Which leaf orientation is read as `⊣` at interior leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StarConvention {
    /// Left children are `⊣`.
    #[default]
    Standard,
    /// Left children are `⊢`; used only to show the conventions are pinned.
    SwappedOrientation,
}

fn star_at(arity: usize, t: usize, i: usize, conv: StarConvention) -> Star {
    let s = table(arity).stars[t][i];
    if conv == StarConvention::SwappedOrientation && i > 0 && i < arity {
        s.flipped()
    } else {
        s
    }
}

/// `δ_Diass f` for `f ∈ CY^n(D, M)`.
pub fn delta_diass(f: &Cochain, d: &DiassData, rep: &DiassRepData) -> Result<Cochain> {
    delta_diass_with(f, d, rep, StarConvention::Standard)
}

pub fn delta_diass_with(f: &Cochain, d: &DiassData, rep: &DiassRepData, conv: StarConvention) -> Result<Cochain> {
    if !f.fits(d.dim, rep.dim) || rep.base_dim != d.dim {
        return Err(Error::DimensionMismatch("cochain does not match algebra and representation".into()));
    }
    let n = f.arity;
    let dd = d.dim;
    let tbl = table(n + 1);
    let mut out = Cochain::zero(n + 1, dd, f.tgt);
    let mut digits = vec![0; n + 1];
    let mut sub = vec![0; n];
    for t in 0..tbl.len() {
        let faces = &tbl.faces[t];
        for tup in 0..out.num_tuples() {
            out.decode_into(tup, &mut digits);
            let mut acc = zeros(f.tgt);
            // a₁ ⋆₀ f(d₀y; a₂, …)
            let fv = f.get(faces[0], f.encode(&digits[1..]));
            let act = rep.left(star_at(n + 1, t, 0, conv));
            for (c, x) in fv.iter().enumerate() {
                if !x.is_zero() {
                    crate::linalg::axpy(&mut acc, x, act.get(digits[0], c));
                }
            }
            for i in 1..=n {
                let w = d.product(star_at(n + 1, t, i, conv)).get(digits[i - 1], digits[i]);
                let s = sign(i);
                for (c, wc) in w.iter().enumerate() {
                    if wc.is_zero() {
                        continue;
                    }
                    sub[..i - 1].copy_from_slice(&digits[..i - 1]);
                    sub[i - 1] = c;
                    sub[i..].copy_from_slice(&digits[i + 1..]);
                    crate::linalg::axpy(&mut acc, &(&s * wc), f.get(faces[i], f.encode(&sub)));
                }
            }
            let fv = f.get(faces[n + 1], f.encode(&digits[..n]));
            let act = rep.right(star_at(n + 1, t, n + 1, conv));
            let s = sign(n + 1);
            for (c, x) in fv.iter().enumerate() {
                if !x.is_zero() {
                    crate::linalg::axpy(&mut acc, &(&s * x), act.get(c, digits[n]));
                }
            }
            out.get_mut(t, tup).clone_from_slice(&acc);
        }
    }
    Ok(out)
}

/// `Δ ∈ CY²(A⊕M, A⊕M)` encoding `A ⊕_Diass M`.
pub fn assemble_delta(a: &AlgebraData, m: &BimoduleData) -> Cochain {
    Cochain::from_diass(&diass_direct_sum(a, m))
}

/// `f ∈ CY^n(M, A)` viewed on `A ⊕ M`: `F(y; x…) = (f(y; p_M x…), 0)`.
pub fn embed_ma(f: &Cochain, da: usize, dm: usize) -> Cochain {
    assert_eq!((f.src, f.tgt), (dm, da));
    let d = da + dm;
    Cochain::from_fn(f.arity, d, d, |t, ix| {
        let mut v = zeros(d);
        if ix.iter().all(|&i| i >= da) {
            let sub: Vec<usize> = ix.iter().map(|&i| i - da).collect();
            v[..da].clone_from_slice(f.entry(t, &sub));
        }
        v
    })
}

/// The `M`-input, `A`-output part of a cochain on `A ⊕ M`.
pub fn restrict_ma(f: &Cochain, da: usize, dm: usize) -> Cochain {
    Cochain::from_fn(f.arity, dm, da, |t, ix| {
        let full: Vec<usize> = ix.iter().map(|&i| i + da).collect();
        f.entry(t, &full)[..da].to_vec()
    })
}

/// The graded Lie bracket `⟦·,·⟧` on `CY^•(M, A)`.
#[derive(Clone, Debug)]
pub struct DerivedBracket {
    pub a: AlgebraData,
    pub m: BimoduleData,
    pub delta: Cochain,
}

impl DerivedBracket {
    pub fn new(a: &AlgebraData, m: &BimoduleData) -> DerivedBracket {
        DerivedBracket {
            a: a.clone(),
            m: m.clone(),
            delta: assemble_delta(a, m),
        }
    }

    fn check(&self, f: &Cochain) -> Result<()> {
        if f.fits(self.m.dim, self.a.dim) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch("derived bracket inputs must lie in CY(M, A)".into()))
        }
    }

    /// `⟦f, a⟧` for `f` of arity `≥ 1` and `a ∈ A`.
    fn with_element(&self, f: &Cochain, a: &[Scalar]) -> Cochain {
        let (m, dm) = (f.arity, self.m.dim);
        // ad_a on M: u ↦ a·u − u·a, as columns
        let ad: Vec<Vector> = (0..dm)
            .map(|u| {
                let e = crate::linalg::unit(dm, u);
                crate::linalg::vsub(&self.m.act_left(a, &e), &self.m.act_right(&e, a))
            })
            .collect();
        let mut out = Cochain::zero(m, dm, self.a.dim);
        let mut digits = vec![0; m];
        let mut sub = vec![0; m];
        for t in 0..f.num_trees() {
            for tup in 0..f.num_tuples() {
                f.decode_into(tup, &mut digits);
                let mut acc = zeros(self.a.dim);
                for i in 0..m {
                    for (c, x) in ad[digits[i]].iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        sub.copy_from_slice(&digits);
                        sub[i] = c;
                        crate::linalg::axpy(&mut acc, x, f.get(t, f.encode(&sub)));
                    }
                }
                let fv = f.get(t, tup);
                acc = crate::linalg::vadd(&acc, &self.a.mul(fv, a));
                acc = crate::linalg::vsub(&acc, &self.a.mul(a, fv));
                out.get_mut(t, tup).clone_from_slice(&acc);
            }
        }
        out
    }

    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        self.check(g)?;
        let (m, n) = (f.arity, g.arity);
        let (da, dm) = (self.a.dim, self.m.dim);
        match (m, n) {
            (0, 0) => {
                let x = crate::linalg::vsub(&self.a.mul(&f.data, &g.data), &self.a.mul(&g.data, &f.data));
                Ok(Cochain::element(&x))
            }
            (_, 0) => Ok(self.with_element(f, &g.data)),
            (0, _) => Ok(self.with_element(g, &f.data).scale(&-Scalar::one())),
            _ => {
                let ff = embed_ma(f, da, dm);
                let gg = embed_ma(g, da, dm);
                let inner = mm_bracket(&self.delta, &ff)?;
                let outer = mm_bracket(&inner, &gg)?;
                Ok(restrict_ma(&outer, da, dm).scale(&sign(m)))
            }
        }
    }
}

/// `d_P f = ⟦P, f⟧`.
pub fn d_p(f: &Cochain, r: &RAvgAlgebra) -> Result<Cochain> {
    let b = DerivedBracket::new(&r.a, &r.m);
    b.bracket(&Cochain::from_matrix(&r.p), f)
}

/// The representation of `M_P` on `A` used by `δ^P_Diass`.
pub fn operator_rep(r: &RAvgAlgebra) -> DiassRepData {
    induced_rep_on_b(r, &RAvgBimodule::adjoint(r))
}

/// `δ^P_Diass f` for `f ∈ CY^n(M_P, A)`.
pub fn delta_diass_p(f: &Cochain, r: &RAvgAlgebra) -> Result<Cochain> {
    delta_diass(f, &induced_diass(r), &operator_rep(r))
}

/// `Θ_n : CY^n(M, A) → CY^{n+1}(M_P, M_P)`.
pub fn theta(f: &Cochain, r: &RAvgAlgebra) -> Result<Cochain> {
    let (da, dm) = (r.a.dim, r.m.dim);
    if !f.fits(dm, da) {
        return Err(Error::DimensionMismatch("Θ takes cochains in CY(M, A)".into()));
    }
    let n = f.arity;
    let tbl = table(n + 1);
    let lsign = sign(n + 1);
    Ok(Cochain::from_fn(n + 1, dm, dm, |t, ix| {
        let mut v = zeros(dm);
        let enc = |s: &[usize]| s.iter().fold(0, |acc, &i| acc * dm + i);
        if let Some(y1) = tbl.left_leaf_graft[t] {
            let fv = f.get(y1, enc(&ix[1..]));
            let e = crate::linalg::unit(dm, ix[0]);
            let x = r.m.act_right(&e, fv);
            crate::linalg::axpy(&mut v, &lsign, &x);
        }
        if let Some(y1) = tbl.right_leaf_graft[t] {
            let fv = f.get(y1, enc(&ix[..n]));
            let e = crate::linalg::unit(dm, ix[n]);
            v = crate::linalg::vadd(&v, &r.m.act_left(fv, &e));
        }
        v
    }))
}

/// A cochain on `A ⊕ M` together with a bidegree `k|l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedCochain {
    pub cochain: Cochain,
    pub k: i64,
    pub l: usize,
}

/// The bidegree `k|l` component of `F ∈ CY^{k+l+1}(A⊕M, A⊕M)`: `A`-output on
/// inputs with `k+1` entries from `A`, `M`-output on inputs with `k` entries
/// from `A`.
pub fn bidegree_project(f: &Cochain, da: usize, k: i64, l: usize) -> Result<TypedCochain> {
    let n = f.arity as i64;
    if k < -1 || k + l as i64 != n - 1 {
        return Err(Error::InvalidStructure(format!("bidegree {k}|{l} for arity {n}")));
    }
    let d = f.src;
    let c = Cochain::from_fn(f.arity, d, f.tgt, |t, ix| {
        let na = ix.iter().filter(|&&i| i < da).count() as i64;
        let src = f.entry(t, ix);
        let mut v = zeros(d);
        if na == k + 1 {
            v[..da].clone_from_slice(&src[..da]);
        }
        if na == k {
            v[da..].clone_from_slice(&src[da..]);
        }
        v
    });
    Ok(TypedCochain { cochain: c, k, l })
}

/// All homogeneous components of `F`, in order of increasing `k`.
pub fn bidegree_components(f: &Cochain, da: usize) -> Vec<TypedCochain> {
    let n = f.arity as i64;
    (-1..n)
        .map(|k| bidegree_project(f, da, k, (n - 1 - k) as usize).expect("valid bidegree"))
        .collect()
}

/// The part of `F` not captured by any bidegree.
pub fn bidegree_remainder(f: &Cochain, da: usize) -> Cochain {
    bidegree_components(f, da)
        .iter()
        .fold(f.clone(), |acc, c| acc.sub(&c.cochain))
}

pub fn has_bidegree(f: &Cochain, da: usize, k: i64, l: usize) -> bool {
    match bidegree_project(f, da, k, l) {
        Ok(c) => &c.cochain == f,
        Err(_) => false,
    }
}

/// A tree-independent multilinear map with per-slot input dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multilinear {
    pub dims: Vec<usize>,
    pub tgt: usize,
    pub data: Vec<Scalar>,
}

impl Multilinear {
    pub fn zero(dims: &[usize], tgt: usize) -> Multilinear {
        let n: usize = dims.iter().product();
        Multilinear {
            dims: dims.to_vec(),
            tgt,
            data: zeros(n * tgt),
        }
    }

    pub fn from_fn(dims: &[usize], tgt: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Multilinear {
        let mut m = Multilinear::zero(dims, tgt);
        let mut digits = vec![0; dims.len()];
        for tup in 0..m.num_tuples() {
            m.decode_into(tup, &mut digits);
            let v = f(&digits);
            let o = tup * tgt;
            m.data[o..o + tgt].clone_from_slice(&v);
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn num_tuples(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn decode_into(&self, mut tup: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = tup % d;
            tup /= d;
        }
    }

    pub fn get(&self, tup: usize) -> &[Scalar] {
        &self.data[tup * self.tgt..(tup + 1) * self.tgt]
    }

    pub fn entry(&self, idx: &[usize]) -> &[Scalar] {
        self.get(self.encode(idx))
    }

    pub fn entry_mut(&mut self, idx: &[usize]) -> &mut [Scalar] {
        let t = self.encode(idx);
        let tgt = self.tgt;
        &mut self.data[t * tgt..(t + 1) * tgt]
    }

    /// Multilinear evaluation with one slot replaced by a vector.
    pub fn eval_slot(&self, idx: &[usize], slot: usize, v: &[Scalar]) -> Vector {
        let mut out = zeros(self.tgt);
        let mut ix = idx.to_vec();
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            ix[slot] = c;
            crate::linalg::axpy(&mut out, x, self.entry(&ix));
        }
        out
    }

    /// Full multilinear evaluation on vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        let mut out = zeros(self.tgt);
        let mut digits = vec![0; self.arity()];
        for tup in 0..self.num_tuples() {
            self.decode_into(tup, &mut digits);
            let mut c = Scalar::one();
            for (a, &d) in args.iter().zip(&digits) {
                if a[d].is_zero() {
                    c = Scalar::zero();
                    break;
                }
                c *= &a[d];
            }
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, &c, self.get(tup));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn from_bilinear(b: &BilinearMap) -> Multilinear {
        Multilinear {
            dims: vec![b.d1, b.d2],
            tgt: b.out,
            data: b.data.clone(),
        }
    }

    pub fn to_bilinear(&self) -> BilinearMap {
        assert_eq!(self.arity(), 2);
        BilinearMap {
            d1: self.dims[0],
            d2: self.dims[1],
            out: self.tgt,
            data: self.data.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_diass, DiassRepData};
    use crate::linalg::{int, Matrix};

    fn const_cochain(arity: usize, vals: &[i64]) -> Cochain {
        Cochain::from_fn(arity, 1, 1, |t, _| vec![int(vals[t])])
    }

    #[test]
    fn circ_with_identity_is_neutral() {
        let f = const_cochain(2, &[3, 5]);
        let id = Cochain::from_matrix(&Matrix::identity(1));
        assert_eq!(circ_i(&f, &id, 1).unwrap(), f);
        assert_eq!(circ_i(&f, &id, 2).unwrap(), f);
        assert_eq!(circ_i(&id, &f, 1).unwrap(), f);
    }

    #[test]
    fn circ_on_constant_tables() {
        // f = (1 on ⊣, 2 on ⊢), g = (10, 20); trees of Y₃ in order map to
        // (outer, inner) = (R,R), (R,R), (R,L), (L,R), (L,L) for ∘₁
        let f = const_cochain(2, &[1, 2]);
        let g = const_cochain(2, &[10, 20]);
        let c = circ_i(&f, &g, 1).unwrap();
        let vals: Vec<Scalar> = (0..5).map(|t| c.get(t, 0)[0].clone()).collect();
        assert_eq!(vals, vec![int(10), int(10), int(20), int(20), int(40)]);
    }

    #[test]
    fn zero_cochain_has_zero_coboundary() {
        let d = DiassData::zero(2);
        let rep = DiassRepData::adjoint(&d);
        let f = Cochain::zero(2, 2, 2);
        assert!(delta_diass(&f, &d, &rep).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_coboundary() {
        // δm(a) = a ⊣ m − m ⊢ a
        let a = AlgebraData::truncated_polynomial(2);
        let d = DiassData::from_associative(&a);
        let rep = DiassRepData::adjoint(&d);
        let m = Cochain::element(&[int(0), int(1)]);
        let dm = delta_diass(&m, &d, &rep).unwrap();
        assert!(dm.is_zero()); // commutative
    }

    #[test]
    fn mc_element_of_diass_structure() {
        let a = AlgebraData::truncated_polynomial(2);
        let d = diass_direct_sum(&a, &BimoduleData::adjoint(&a));
        assert!(verify_diass(&d).is_valid());
        let pi = Cochain::from_diass(&d);
        assert!(mm_bracket(&pi, &pi).unwrap().is_zero());
        assert_eq!(pi.to_diass().unwrap(), d);
    }

    #[test]
    fn derived_bracket_of_averaging_operator() {
        let a = AlgebraData::truncated_polynomial(2);
        let m = BimoduleData::adjoint(&a);
        let b = DerivedBracket::new(&a, &m);
        let p = Cochain::from_matrix(&Matrix::identity(2));
        assert!(b.bracket(&p, &p).unwrap().is_zero());
        // commutative A: ⟦a, b⟧ = 0
        let x = Cochain::element(&[int(1), int(2)]);
        let y = Cochain::element(&[int(3), int(-1)]);
        assert!(b.bracket(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn bidegree_of_delta() {
        let a = AlgebraData::truncated_polynomial(2);
        let delta = assemble_delta(&a, &BimoduleData::adjoint(&a));
        assert!(has_bidegree(&delta, 2, 1, 0));
        assert!(bidegree_remainder(&delta, 2).is_zero());
        let p = embed_ma(&Cochain::from_matrix(&Matrix::identity(2)), 2, 2);
        assert!(has_bidegree(&p, 2, -1, 1));
    }

    #[test]
    fn cochain_json_round_trip() {
        let f = const_cochain(2, &[1, -2]);
        assert_eq!(Cochain::from_json(&f.to_json()).unwrap(), f);
    }
}
