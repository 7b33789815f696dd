//! Cochain complexes of relative averaging algebras and their cohomology:
//! Hochschild, diassociative, operator, relative averaging (adjoint and
//! arbitrary coefficients), averaging and associative-bimodule complexes, plus
//! the long exact sequence linking the operator, relative averaging and
//! bimodule cohomologies.
//!
//! Every cochain space is flattened to coordinates deterministically: tree
//! index major, then basis tuples lexicographically (first slot most
//! significant). Composite spaces concatenate their components in the order
//! they are listed (`f`, then `g` by position of the `M`-slot, then `γ`).

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{
    verify_relative_averaging, verify_ravg_bimodule, AlgebraData, BimoduleData, DiassData, DiassRepData,
    RAvgAlgebra, RAvgBimodule,
};
use crate::cochain::{d_p, delta_diass, pow, sign, Cochain, Multilinear};
use crate::constructions::{induced_diass, induced_rep_on_b};
use crate::error::{Error, Result};
use crate::linalg::{axpy, span_basis, span_rank, unit, vscale, vsub, zeros, Matrix, Scalar, Vector};
use crate::report::Report;
use crate::trees::{catalan, table};

/// A map `𝒜^{n−1,1} → N`: one multilinear map per position of the `M`-slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCochain {
    pub arity: usize,
    pub da: usize,
    pub dm: usize,
    pub tgt: usize,
    /// `parts[j]` takes its `M`-argument in slot `j`.
    pub parts: Vec<Multilinear>,
}

impl MixedCochain {
    pub fn part_dims(arity: usize, da: usize, dm: usize, j: usize) -> Vec<usize> {
        (0..arity).map(|s| if s == j { dm } else { da }).collect()
    }

    pub fn zero(arity: usize, da: usize, dm: usize, tgt: usize) -> MixedCochain {
        MixedCochain {
            arity,
            da,
            dm,
            tgt,
            parts: (0..arity)
                .map(|j| Multilinear::zero(&Self::part_dims(arity, da, dm, j), tgt))
                .collect(),
        }
    }

    pub fn from_fn(
        arity: usize,
        da: usize,
        dm: usize,
        tgt: usize,
        mut f: impl FnMut(usize, &[usize]) -> Vector,
    ) -> MixedCochain {
        MixedCochain {
            arity,
            da,
            dm,
            tgt,
            parts: (0..arity)
                .map(|j| Multilinear::from_fn(&Self::part_dims(arity, da, dm, j), tgt, |ix| f(j, ix)))
                .collect(),
        }
    }

    /// The mixed cochain with every part equal to `f` (requires `da = dm`).
    pub fn diagonal(f: &Multilinear) -> MixedCochain {
        let n = f.arity();
        let d = f.dims.first().copied().unwrap_or(0);
        MixedCochain {
            arity: n,
            da: d,
            dm: d,
            tgt: f.tgt,
            parts: vec![f.clone(); n],
        }
    }

    pub fn flat_len(arity: usize, da: usize, dm: usize, tgt: usize) -> usize {
        if arity == 0 {
            0
        } else {
            arity * dm * pow(da, arity - 1) * tgt
        }
    }

    pub fn len(&self) -> usize {
        Self::flat_len(self.arity, self.da, self.dm, self.tgt)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flatten(&self) -> Vector {
        self.parts.iter().flat_map(|p| p.data.iter().cloned()).collect()
    }

    pub fn from_flat(arity: usize, da: usize, dm: usize, tgt: usize, v: &[Scalar]) -> Result<MixedCochain> {
        if v.len() != Self::flat_len(arity, da, dm, tgt) {
            return Err(Error::DimensionMismatch("mixed cochain coordinates".into()));
        }
        let mut out = MixedCochain::zero(arity, da, dm, tgt);
        let mut off = 0;
        for p in &mut out.parts {
            let k = p.data.len();
            p.data.clone_from_slice(&v[off..off + k]);
            off += k;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }
}

/// `(f, g, γ)` in `C^n_rAvg`; `γ` is absent in degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RAvgCochain {
    pub degree: usize,
    pub f: Multilinear,
    pub g: MixedCochain,
    pub gamma: Option<Cochain>,
}

impl RAvgCochain {
    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.gamma.as_ref().map_or(true, |c| c.is_zero())
    }
}

/// `(f, γ)` in `C^n_Avg`; `γ` is absent in degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvgCochain {
    pub degree: usize,
    pub f: Multilinear,
    pub gamma: Option<Cochain>,
}

/// `δ_Hoch` of `A` with coefficients in the bimodule `B`.
pub fn hochschild_coboundary(a: &AlgebraData, b: &BimoduleData, f: &Multilinear) -> Result<Multilinear> {
    let da = a.dim;
    if b.base_dim != da || f.tgt != b.dim || f.dims.iter().any(|&d| d != da) {
        return Err(Error::DimensionMismatch("Hochschild cochain A^⊗n → B".into()));
    }
    let n = f.arity();
    Ok(Multilinear::from_fn(&vec![da; n + 1], b.dim, |ix| {
        let mut v = b.act_left(&unit(da, ix[0]), f.entry(&ix[1..]));
        let mut red = vec![0; n];
        for i in 1..=n {
            red[..i].copy_from_slice(&ix[..i]);
            red[i..].copy_from_slice(&ix[i + 1..]);
            let t = f.eval_slot(&red, i - 1, a.mu.get(ix[i - 1], ix[i]));
            axpy(&mut v, &sign(i), &t);
        }
        let t = b.act_right(f.entry(&ix[..n]), &unit(da, ix[n]));
        axpy(&mut v, &sign(n + 1), &t);
        v
    }))
}

/// Precompose slot `s` of `f` with `maps[s]` (`None` keeps the slot).
fn pull_back(f: &Multilinear, maps: &[Option<&Matrix>]) -> Multilinear {
    let mut cur = f.clone();
    for (s, m) in maps.iter().enumerate() {
        let Some(m) = m else { continue };
        let cols: Vec<Vector> = (0..m.cols).map(|c| m.column(c)).collect();
        let mut dims = cur.dims.clone();
        dims[s] = m.cols;
        let prev = cur;
        cur = Multilinear::from_fn(&dims, prev.tgt, |ix| {
            let mut ix2 = ix.to_vec();
            ix2[s] = 0;
            prev.eval_slot(&ix2, s, &cols[ix[s]])
        });
    }
    cur
}

/// A relative averaging algebra with a bimodule of coefficients, plus the
/// derived diassociative data used by its cochain complex.
#[derive(Clone, Debug)]
pub struct RAvgContext {
    pub r: RAvgAlgebra,
    pub bm: RAvgBimodule,
    /// The induced diassociative algebra `M_P`.
    pub mp: DiassData,
    /// The representation of `M_P` on `B`.
    pub rep: DiassRepData,
    pub adjoint: bool,
}

impl RAvgContext {
    pub fn adjoint(r: &RAvgAlgebra) -> Result<RAvgContext> {
        let rep = verify_relative_averaging(r)?;
        if !rep.is_valid() {
            return Err(Error::Precondition(format!(
                "not a relative averaging algebra: {}",
                rep.to_text().trim_end()
            )));
        }
        let bm = RAvgBimodule::adjoint(r);
        Ok(Self::build(r, bm, true))
    }

    pub fn with_coefficients(r: &RAvgAlgebra, bm: &RAvgBimodule) -> Result<RAvgContext> {
        let rep = verify_relative_averaging(r)?;
        if !rep.is_valid() {
            return Err(Error::Precondition("not a relative averaging algebra".into()));
        }
        let rb = verify_ravg_bimodule(r, bm)?;
        if !rb.is_valid() {
            return Err(Error::Precondition(format!(
                "not a bimodule: {}",
                rb.to_text().trim_end()
            )));
        }
        Ok(Self::build(r, bm.clone(), false))
    }

    fn build(r: &RAvgAlgebra, bm: RAvgBimodule, adjoint: bool) -> RAvgContext {
        RAvgContext {
            r: r.clone(),
            mp: induced_diass(r),
            rep: induced_rep_on_b(r, &bm),
            bm,
            adjoint,
        }
    }

    /// `(dim A, dim M, dim B, dim N)`.
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.r.a.dim, self.r.m.dim, self.bm.b.dim, self.bm.n.dim)
    }

    fn f_len(&self, n: usize) -> usize {
        let (da, _, db, _) = self.dims();
        pow(da, n) * db
    }

    fn g_len(&self, n: usize) -> usize {
        let (da, dm, _, dn) = self.dims();
        MixedCochain::flat_len(n, da, dm, dn)
    }

    fn gamma_len(&self, n: usize) -> usize {
        let (_, dm, db, _) = self.dims();
        if n < 2 {
            0
        } else {
            catalan(n - 1) * pow(dm, n - 1) * db
        }
    }

    /// `dim C^n_rAvg`.
    pub fn space_dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.f_len(n) + self.g_len(n) + self.gamma_len(n)
        }
    }

    /// `dim C^n_AssBimod`.
    pub fn bimod_dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.f_len(n) + self.g_len(n)
        }
    }

    pub fn zero_cochain(&self, n: usize) -> Result<RAvgCochain> {
        if n == 0 {
            return Err(Error::ArityMismatch("C^0_rAvg is zero".into()));
        }
        let (da, dm, db, dn) = self.dims();
        Ok(RAvgCochain {
            degree: n,
            f: Multilinear::zero(&vec![da; n], db),
            g: MixedCochain::zero(n, da, dm, dn),
            gamma: (n >= 2).then(|| Cochain::zero(n - 1, dm, db)),
        })
    }

    pub fn check(&self, c: &RAvgCochain) -> Result<()> {
        let (da, dm, db, dn) = self.dims();
        let n = c.degree;
        let ok = n >= 1
            && c.f.dims == vec![da; n]
            && c.f.tgt == db
            && c.g.arity == n
            && (c.g.da, c.g.dm, c.g.tgt) == (da, dm, dn)
            && match &c.gamma {
                None => n == 1,
                Some(g) => n >= 2 && g.arity == n - 1 && g.fits(dm, db),
            };
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("cochain does not lie in C^{n}_rAvg")))
        }
    }

    pub fn flatten(&self, c: &RAvgCochain) -> Vector {
        let mut v = c.f.data.clone();
        v.extend(c.g.flatten());
        if let Some(g) = &c.gamma {
            v.extend(g.data.iter().cloned());
        }
        v
    }

    pub fn unflatten(&self, n: usize, v: &[Scalar]) -> Result<RAvgCochain> {
        if v.len() != self.space_dim(n) || n == 0 {
            return Err(Error::DimensionMismatch(format!("coordinates for C^{n}_rAvg")));
        }
        let (da, dm, db, dn) = self.dims();
        let (lf, lg) = (self.f_len(n), self.g_len(n));
        let mut f = Multilinear::zero(&vec![da; n], db);
        f.data.clone_from_slice(&v[..lf]);
        let g = MixedCochain::from_flat(n, da, dm, dn, &v[lf..lf + lg])?;
        let gamma = if n >= 2 {
            Some(Cochain::from_data(n - 1, dm, db, v[lf + lg..].to_vec())?)
        } else {
            None
        };
        Ok(RAvgCochain { degree: n, f, g, gamma })
    }

    pub fn hoch(&self, f: &Multilinear) -> Result<Multilinear> {
        hochschild_coboundary(&self.r.a, &self.bm.b, f)
    }

    /// `δ^f_Hoch(g)`.
    pub fn hoch_mixed(&self, f: &Multilinear, g: &MixedCochain) -> Result<MixedCochain> {
        let (da, dm, db, dn) = self.dims();
        let n = f.arity();
        if g.arity != n || f.tgt != db || (g.da, g.dm, g.tgt) != (da, dm, dn) {
            return Err(Error::DimensionMismatch("δ^f_Hoch(g) needs f, g of equal arity".into()));
        }
        let (a, m, bm) = (&self.r.a, &self.r.m, &self.bm);
        Ok(MixedCochain::from_fn(n + 1, da, dm, dn, |j, ix| {
            let mut v = if j == 0 {
                bm.l.apply(&unit(dm, ix[0]), f.entry(&ix[1..]))
            } else {
                bm.n.act_left(&unit(da, ix[0]), g.parts[j - 1].entry(&ix[1..]))
            };
            let mut red = vec![0; n];
            for i in 1..=n {
                let (p, jr) = if j == i - 1 {
                    (m.right.get(ix[i - 1], ix[i]), i - 1)
                } else if j == i {
                    (m.left.get(ix[i - 1], ix[i]), i - 1)
                } else if j < i - 1 {
                    (a.mu.get(ix[i - 1], ix[i]), j)
                } else {
                    (a.mu.get(ix[i - 1], ix[i]), j - 1)
                };
                red[..i].copy_from_slice(&ix[..i]);
                red[i..].copy_from_slice(&ix[i + 1..]);
                let t = g.parts[jr].eval_slot(&red, i - 1, p);
                axpy(&mut v, &sign(i), &t);
            }
            let t = if j == n {
                bm.r.apply(f.entry(&ix[..n]), &unit(dm, ix[n]))
            } else {
                bm.n.act_right(g.parts[j].entry(&ix[..n]), &unit(da, ix[n]))
            };
            axpy(&mut v, &sign(n + 1), &t);
            v
        }))
    }

    /// `h(f, g)(y; u₁..uₙ) = (−1)ⁿ(f(Pu₁,…,Puₙ) − Q g(Pu₁,…,uᵢ,…,Puₙ))` with
    /// `i` the split index of `y`.
    pub fn h(&self, f: &Multilinear, g: &MixedCochain) -> Result<Cochain> {
        let (da, dm, db, dn) = self.dims();
        let n = f.arity();
        if n == 0 || g.arity != n || f.tgt != db || (g.da, g.dm, g.tgt) != (da, dm, dn) {
            return Err(Error::ArityMismatch("h needs f, g of equal arity ≥ 1".into()));
        }
        let p = &self.r.p;
        let fp = pull_back(f, &vec![Some(p); n]);
        let gps: Vec<Multilinear> = (0..n)
            .map(|i| {
                let maps: Vec<Option<&Matrix>> = (0..n).map(|s| (s != i).then_some(p)).collect();
                pull_back(&g.parts[i], &maps)
            })
            .collect();
        let tbl = table(n);
        let s = sign(n);
        Ok(Cochain::from_fn(n, dm, db, |t, ix| {
            let i = tbl.split[t];
            let x = vsub(fp.entry(ix), &self.bm.q.apply(gps[i - 1].entry(ix)));
            vscale(&s, &x)
        }))
    }

    /// `δ^P_Diass` on `CY^n(M_P, B)`.
    pub fn delta_p(&self, gamma: &Cochain) -> Result<Cochain> {
        delta_diass(gamma, &self.mp, &self.rep)
    }

    /// `δ_rAvg(f, g, γ) = (δ_Hoch f, δ^f_Hoch g, δ^P_Diass γ + h(f, g))`.
    pub fn coboundary(&self, c: &RAvgCochain) -> Result<RAvgCochain> {
        self.check(c)?;
        let f = self.hoch(&c.f)?;
        let g = self.hoch_mixed(&c.f, &c.g)?;
        let mut gamma = self.h(&c.f, &c.g)?;
        if let Some(x) = &c.gamma {
            gamma = gamma.add(&self.delta_p(x)?);
        }
        Ok(RAvgCochain {
            degree: c.degree + 1,
            f,
            g,
            gamma: Some(gamma),
        })
    }

    fn labels(&self, n: usize) -> Vec<String> {
        if n == 0 {
            return vec![];
        }
        let (da, dm, db, dn) = self.dims();
        let mut out = multilinear_labels("f", &vec![da; n], db);
        for j in 0..n {
            out.extend(multilinear_labels(
                &format!("g{}", j + 1),
                &MixedCochain::part_dims(n, da, dm, j),
                dn,
            ));
        }
        if n >= 2 {
            out.extend(cochain_labels("γ", n - 1, dm, db));
        }
        out
    }

    /// `C^•_rAvg` in degrees `0..=n_max+1`.
    pub fn complex(&self, n_max: usize) -> Result<ComplexSpec> {
        let mut dims = vec![];
        let mut labels = vec![];
        let mut maps = vec![];
        for n in 0..=n_max + 1 {
            dims.push(self.space_dim(n));
            labels.push(self.labels(n));
        }
        for n in 0..=n_max {
            maps.push(if n == 0 {
                Matrix::zeros(self.space_dim(1), 0)
            } else {
                assemble(self.space_dim(n), self.space_dim(n + 1), |v| {
                    let c = self.unflatten(n, v)?;
                    Ok(self.flatten(&self.coboundary(&c)?))
                })?
            });
        }
        ComplexSpec::new("relative averaging cohomology", 0, dims, labels, maps)
    }

    /// `C^•_AssBimod` in degrees `0..=n_max+1`.
    pub fn bimod_complex(&self, n_max: usize) -> Result<ComplexSpec> {
        let mut dims = vec![];
        let mut labels = vec![];
        let mut maps = vec![];
        for n in 0..=n_max + 1 {
            dims.push(self.bimod_dim(n));
            let mut l = self.labels(n);
            l.truncate(self.bimod_dim(n));
            labels.push(l);
        }
        let (da, dm, db, dn) = self.dims();
        for n in 0..=n_max {
            maps.push(if n == 0 {
                Matrix::zeros(self.bimod_dim(1), 0)
            } else {
                assemble(self.bimod_dim(n), self.bimod_dim(n + 1), |v| {
                    let lf = self.f_len(n);
                    let mut f = Multilinear::zero(&vec![da; n], db);
                    f.data.clone_from_slice(&v[..lf]);
                    let g = MixedCochain::from_flat(n, da, dm, dn, &v[lf..])?;
                    let mut out = self.hoch(&f)?.data;
                    out.extend(self.hoch_mixed(&f, &g)?.flatten());
                    Ok(out)
                })?
            });
        }
        ComplexSpec::new("associative bimodule cohomology", 0, dims, labels, maps)
    }

    /// The kernel complex `K^n = CY^{n−1}(M_P, B)` (`K^0 = K^1 = 0`) in
    /// degrees `0..=n_max+1`.
    pub fn kernel_complex(&self, n_max: usize) -> Result<ComplexSpec> {
        let (_, dm, db, _) = self.dims();
        let mut dims = vec![];
        let mut labels = vec![];
        let mut maps = vec![];
        for n in 0..=n_max + 1 {
            dims.push(self.gamma_len(n));
            labels.push(if n >= 2 { cochain_labels("γ", n - 1, dm, db) } else { vec![] });
        }
        for n in 0..=n_max {
            maps.push(if n < 2 {
                Matrix::zeros(self.gamma_len(n + 1), self.gamma_len(n))
            } else {
                assemble(self.gamma_len(n), self.gamma_len(n + 1), |v| {
                    let c = Cochain::from_data(n - 1, dm, db, v.to_vec())?;
                    Ok(self.delta_p(&c)?.data)
                })?
            });
        }
        ComplexSpec::new("shifted operator cohomology", 0, dims, labels, maps)
    }

    /// Inclusion `K^n → C^n_rAvg`.
    pub fn inclusion(&self, n: usize) -> Matrix {
        let (rows, cols) = (self.space_dim(n), self.gamma_len(n));
        let off = rows - cols;
        let mut m = Matrix::zeros(rows, cols);
        for k in 0..cols {
            m.set(off + k, k, Scalar::one());
        }
        m
    }

    /// Projection `C^n_rAvg → C^n_AssBimod`.
    pub fn projection(&self, n: usize) -> Matrix {
        let (rows, cols) = (self.bimod_dim(n), self.space_dim(n));
        let mut m = Matrix::zeros(rows, cols);
        for k in 0..rows {
            m.set(k, k, Scalar::one());
        }
        m
    }

    /// The chain-level connecting map `C^n_AssBimod → K^{n+1}`, `(f, g) ↦ h(f, g)`:
    /// lift with `γ = 0`, apply `δ_rAvg`, read off the `γ`-component.
    pub fn connecting(&self, n: usize) -> Result<Matrix> {
        let (rows, cols) = (self.gamma_len(n + 1), self.bimod_dim(n));
        if n == 0 {
            return Ok(Matrix::zeros(rows, 0));
        }
        assemble(cols, rows, |v| {
            let mut lifted = v.to_vec();
            lifted.extend(zeros(self.gamma_len(n)));
            let c = self.coboundary(&self.unflatten(n, &lifted)?)?;
            Ok(c.gamma.expect("degree ≥ 2").data)
        })
    }
}

fn tuple_label(prefix: &str, ix: &[usize], k: usize) -> String {
    let parts: Vec<String> = ix.iter().map(|i| i.to_string()).collect();
    format!("{prefix}({})_{k}", parts.join(","))
}

fn multilinear_labels(prefix: &str, dims: &[usize], tgt: usize) -> Vec<String> {
    let m = Multilinear::zero(dims, tgt);
    let mut ix = vec![0; dims.len()];
    let mut out = Vec::with_capacity(m.data.len());
    for tup in 0..m.num_tuples() {
        m.decode_into(tup, &mut ix);
        for k in 0..tgt {
            out.push(tuple_label(prefix, &ix, k));
        }
    }
    out
}

fn cochain_labels(prefix: &str, arity: usize, src: usize, tgt: usize) -> Vec<String> {
    let c = Cochain::zero(arity, src, tgt);
    let tbl = table(arity);
    let mut ix = vec![0; arity];
    let mut out = Vec::with_capacity(c.data.len());
    for t in 0..c.num_trees() {
        for tup in 0..c.num_tuples() {
            c.decode_into(tup, &mut ix);
            for k in 0..tgt {
                out.push(tuple_label(&format!("{prefix}[{}]", tbl.trees[t]), &ix, k));
            }
        }
    }
    out
}

/// The matrix whose `j`-th column is `op(e_j)`.
fn assemble(src: usize, tgt: usize, mut op: impl FnMut(&[Scalar]) -> Result<Vector>) -> Result<Matrix> {
    let mut m = Matrix::zeros(tgt, src);
    for j in 0..src {
        let col = op(&unit(src, j))?;
        if col.len() != tgt {
            return Err(Error::DimensionMismatch("assembled column".into()));
        }
        for (i, x) in col.into_iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x);
            }
        }
    }
    Ok(m)
}

/// A finite segment of a cochain complex: spaces in degrees
/// `low..=low+dims.len()−1` and the coboundaries between consecutive ones.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub name: String,
    pub low: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// `coboundaries[k] : C^{low+k} → C^{low+k+1}`.
    pub coboundaries: Vec<Matrix>,
}

impl ComplexSpec {
    /// Checks shapes and `δ∘δ = 0`.
    pub fn new(
        name: impl Into<String>,
        low: usize,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        coboundaries: Vec<Matrix>,
    ) -> Result<ComplexSpec> {
        let name = name.into();
        if dims.is_empty() || coboundaries.len() + 1 != dims.len() || labels.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!("{name}: degree ranges disagree")));
        }
        for (k, d) in coboundaries.iter().enumerate() {
            if d.cols != dims[k] || d.rows != dims[k + 1] {
                return Err(Error::DimensionMismatch(format!("{name}: coboundary in degree {}", low + k)));
            }
        }
        for (k, l) in labels.iter().enumerate() {
            if l.len() != dims[k] {
                return Err(Error::DimensionMismatch(format!("{name}: labels in degree {}", low + k)));
            }
        }
        for k in 1..coboundaries.len() {
            if !coboundaries[k].mul(&coboundaries[k - 1])?.is_zero() {
                return Err(Error::NotAComplex(format!("{name}: δ∘δ ≠ 0 in degree {}", low + k - 1)));
            }
        }
        Ok(ComplexSpec { name, low, dims, labels, coboundaries })
    }

    /// The top degree with a space.
    pub fn top(&self) -> usize {
        self.low + self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        if n < self.low || n > self.top() {
            0
        } else {
            self.dims[n - self.low]
        }
    }

    /// `δ : C^n → C^{n+1}`; zero outside the stored range. `None` at the
    /// top degree, where the outgoing map is not known.
    pub fn coboundary(&self, n: usize) -> Option<Matrix> {
        if n >= self.top() {
            return None;
        }
        if n + 1 < self.low {
            return Some(Matrix::zeros(0, 0));
        }
        if n < self.low {
            return Some(Matrix::zeros(self.dim(n + 1), 0));
        }
        Some(self.coboundaries[n - self.low].clone())
    }

    /// Dimensions of the spaces in degrees `low..=top`.
    pub fn euler_characteristic(&self, upto: usize) -> i64 {
        (self.low..=upto.min(self.top()))
            .map(|n| if n % 2 == 0 { self.dim(n) as i64 } else { -(self.dim(n) as i64) })
            .sum()
    }
}

/// `H^n` of a [`ComplexSpec`].
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub dim: usize,
    /// Cocycles whose classes form a basis of `H^n`.
    pub representatives: Vec<Vector>,
    /// Echelon basis of `Z^n`.
    pub cocycles: Vec<Vector>,
    /// Echelon basis of `B^n`.
    pub coboundaries: Vec<Vector>,
    incoming: Matrix,
    outgoing: Matrix,
}

impl CohomologyGroup {
    pub fn is_cocycle(&self, v: &[Scalar]) -> bool {
        v.len() == self.outgoing.cols && self.outgoing.apply(v).iter().all(|x| x.is_zero())
    }

    /// Some `x` with `δx = v`, if any.
    pub fn preimage(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        crate::linalg::coset_solve(&self.incoming, v)
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.preimage(v)?.is_some())
    }

    /// Two cocycles define the same class.
    pub fn cohomologous(&self, a: &[Scalar], b: &[Scalar]) -> Result<bool> {
        self.is_coboundary(&vsub(a, b))
    }
}

/// `dim H^n`, representatives, and a coboundary tester.
pub fn betti(spec: &ComplexSpec, n: usize) -> Result<CohomologyGroup> {
    let outgoing = spec.coboundary(n).ok_or_else(|| {
        Error::Precondition(format!("{}: H^{n} needs the coboundary out of degree {n}", spec.name))
    })?;
    let dim_n = spec.dim(n);
    let incoming = if n == 0 {
        Matrix::zeros(dim_n, 0)
    } else {
        spec.coboundary(n - 1).unwrap_or_else(|| Matrix::zeros(dim_n, 0))
    };
    let z = crate::linalg::kernel_basis(&outgoing);
    let cocycles = span_basis(dim_n, &z);
    let bcols: Vec<Vector> = (0..incoming.cols).map(|j| incoming.column(j)).collect();
    let coboundaries = span_basis(dim_n, &bcols);
    let mut acc = coboundaries.clone();
    let mut rank = acc.len();
    let mut representatives = vec![];
    for v in &cocycles {
        acc.push(v.clone());
        let r = span_rank(dim_n, &acc);
        if r > rank {
            rank = r;
            representatives.push(v.clone());
        } else {
            acc.pop();
        }
    }
    Ok(CohomologyGroup {
        degree: n,
        dim: representatives.len(),
        representatives,
        cocycles,
        coboundaries,
        incoming,
        outgoing,
    })
}

/// Betti numbers in degrees `low..top`, with the Euler-characteristic
/// bookkeeping at the truncation edge.
pub fn cohomology_report(spec: &ComplexSpec) -> Result<Value> {
    let mut degrees = vec![];
    let mut alt = 0i64;
    for n in spec.low..spec.top() {
        let h = betti(spec, n)?;
        alt += if n % 2 == 0 { h.dim as i64 } else { -(h.dim as i64) };
        degrees.push(json!({
            "degree": n,
            "space_dim": spec.dim(n),
            "dim": h.dim,
            "representatives": h.representatives.iter().map(|v| labelled(&spec.labels[n - spec.low], v)).collect::<Vec<_>>(),
        }));
    }
    let edge = spec.top() - 1;
    let edge_rank = spec.coboundary(edge).map(|m| m.rank()).unwrap_or(0) as i64;
    let correction = if edge % 2 == 0 { edge_rank } else { -edge_rank };
    Ok(json!({
        "complex": spec.name,
        "degrees": degrees,
        "euler": {
            "truncated_chi": spec.euler_characteristic(edge),
            "alternating_betti": alt,
            "edge_rank_correction": correction,
        }
    }))
}

fn labelled(labels: &[String], v: &[Scalar]) -> Value {
    let mut m = serde_json::Map::new();
    for (l, x) in labels.iter().zip(v) {
        if !x.is_zero() {
            m.insert(l.clone(), Value::String(crate::linalg::format_scalar(x)));
        }
    }
    Value::Object(m)
}

/// Hochschild complex of `A` with coefficients in `B`, degrees `0..=n_max+1`.
pub fn hochschild_complex(a: &AlgebraData, b: &BimoduleData, n_max: usize) -> Result<ComplexSpec> {
    let (da, db) = (a.dim, b.dim);
    let dims: Vec<usize> = (0..=n_max + 1).map(|n| pow(da, n) * db).collect();
    let labels = (0..=n_max + 1).map(|n| multilinear_labels("f", &vec![da; n], db)).collect();
    let mut maps = vec![];
    for n in 0..=n_max {
        maps.push(assemble(dims[n], dims[n + 1], |v| {
            let mut f = Multilinear::zero(&vec![da; n], db);
            f.data.clone_from_slice(v);
            Ok(hochschild_coboundary(a, b, &f)?.data)
        })?);
    }
    ComplexSpec::new("Hochschild cohomology", 0, dims, labels, maps)
}

/// `CY^•(D, M)` with `δ_Diass`, degrees `0..=n_max+1`.
pub fn diass_complex(d: &DiassData, rep: &DiassRepData, n_max: usize) -> Result<ComplexSpec> {
    let (dd, dm) = (d.dim, rep.dim);
    let dims: Vec<usize> = (0..=n_max + 1).map(|n| catalan(n) * pow(dd, n) * dm).collect();
    let labels = (0..=n_max + 1).map(|n| cochain_labels("f", n, dd, dm)).collect();
    let mut maps = vec![];
    for n in 0..=n_max {
        maps.push(assemble(dims[n], dims[n + 1], |v| {
            let c = Cochain::from_data(n, dd, dm, v.to_vec())?;
            Ok(delta_diass(&c, d, rep)?.data)
        })?);
    }
    ComplexSpec::new("diassociative cohomology", 0, dims, labels, maps)
}

/// `CY^•(M, A)` with `d_P = ⟦P, ·⟧`, degrees `0..=n_max+1`.
pub fn operator_complex(r: &RAvgAlgebra, n_max: usize) -> Result<ComplexSpec> {
    let rep = verify_relative_averaging(r)?;
    if !rep.is_valid() {
        return Err(Error::Precondition("not a relative averaging algebra".into()));
    }
    let (da, dm) = (r.a.dim, r.m.dim);
    let dims: Vec<usize> = (0..=n_max + 1).map(|n| catalan(n) * pow(dm, n) * da).collect();
    let labels = (0..=n_max + 1).map(|n| cochain_labels("f", n, dm, da)).collect();
    let mut maps = vec![];
    for n in 0..=n_max {
        maps.push(assemble(dims[n], dims[n + 1], |v| {
            let c = if n == 0 { Cochain::element(v) } else { Cochain::from_data(n, dm, da, v.to_vec())? };
            Ok(d_p(&c, r)?.data)
        })?);
    }
    ComplexSpec::new("operator cohomology", 0, dims, labels, maps)
}

fn require_averaging(r: &RAvgAlgebra) -> Result<RAvgContext> {
    if !r.m.is_adjoint_of(&r.a) {
        return Err(Error::Precondition("averaging cohomology needs M = A with the adjoint actions".into()));
    }
    RAvgContext::adjoint(r)
}

/// The embedding `i(f, γ) = (f, f, γ)`.
pub fn avg_embed(c: &AvgCochain) -> RAvgCochain {
    RAvgCochain {
        degree: c.degree,
        f: c.f.clone(),
        g: MixedCochain::diagonal(&c.f),
        gamma: c.gamma.clone(),
    }
}

/// `δ_Avg(f, γ) = (δ_Hoch f, δ^P_Diass γ + h_P(f, f))`.
pub fn avg_coboundary(c: &AvgCochain, r: &RAvgAlgebra) -> Result<AvgCochain> {
    let ctx = require_averaging(r)?;
    avg_coboundary_in(&ctx, c)
}

fn avg_coboundary_in(ctx: &RAvgContext, c: &AvgCochain) -> Result<AvgCochain> {
    let full = ctx.coboundary(&avg_embed(c))?;
    Ok(AvgCochain {
        degree: full.degree,
        f: full.f,
        gamma: full.gamma,
    })
}

/// `C^•_Avg` in degrees `0..=n_max+1`.
pub fn avg_complex(r: &RAvgAlgebra, n_max: usize) -> Result<ComplexSpec> {
    let ctx = require_averaging(r)?;
    let (da, dm, db, _) = ctx.dims();
    let dim = |n: usize| if n == 0 { 0 } else { ctx.f_len(n) + ctx.gamma_len(n) };
    let dims: Vec<usize> = (0..=n_max + 1).map(dim).collect();
    let labels = (0..=n_max + 1)
        .map(|n| {
            if n == 0 {
                return vec![];
            }
            let mut l = multilinear_labels("f", &vec![da; n], db);
            if n >= 2 {
                l.extend(cochain_labels("γ", n - 1, dm, db));
            }
            l
        })
        .collect();
    let mut maps = vec![];
    for n in 0..=n_max {
        maps.push(if n == 0 {
            Matrix::zeros(dim(1), 0)
        } else {
            assemble(dim(n), dim(n + 1), |v| {
                let lf = ctx.f_len(n);
                let mut f = Multilinear::zero(&vec![da; n], db);
                f.data.clone_from_slice(&v[..lf]);
                let gamma = if n >= 2 { Some(Cochain::from_data(n - 1, dm, db, v[lf..].to_vec())?) } else { None };
                let out = avg_coboundary_in(&ctx, &AvgCochain { degree: n, f, gamma })?;
                let mut w = out.f.data;
                w.extend(out.gamma.expect("degree ≥ 2").data);
                Ok(w)
            })?
        });
    }
    ComplexSpec::new("averaging cohomology", 0, dims, labels, maps)
}

// Free-function entry points.

pub fn hoch_coboundary(ctx: &RAvgContext, f: &Multilinear, g: &MixedCochain) -> Result<(Multilinear, MixedCochain)> {
    Ok((ctx.hoch(f)?, ctx.hoch_mixed(f, g)?))
}

pub fn h_map(ctx: &RAvgContext, f: &Multilinear, g: &MixedCochain) -> Result<Cochain> {
    ctx.h(f, g)
}

pub fn ravg_coboundary(ctx: &RAvgContext, c: &RAvgCochain) -> Result<RAvgCochain> {
    ctx.coboundary(c)
}

/// One node of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub degree: usize,
    /// `"operator"` (`H^{n−1}_P = H^n(K)`), `"rAvg"` or `"AssBimod"`.
    pub group: &'static str,
    pub dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
    pub report: Report,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.report.is_valid()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exact": self.is_exact(),
            "nodes": self.nodes.iter().map(|n| json!({
                "degree": n.degree, "group": n.group, "dim": n.dim, "exact": n.exact,
            })).collect::<Vec<_>>(),
            "report": self.report.to_json(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            s.push_str(&format!(
                "H^{} {:<9} dim {:>3}  {}\n",
                n.degree,
                n.group,
                n.dim,
                if n.exact { "exact" } else { "NOT EXACT" }
            ));
        }
        s.push_str(&self.report.to_text());
        s
    }
}

fn columns(m: &Matrix) -> Vec<Vector> {
    (0..m.cols).map(|j| m.column(j)).collect()
}

fn image(m: &Matrix, vs: &[Vector]) -> Vec<Vector> {
    vs.iter().map(|v| m.apply(v)).collect()
}

/// Basis of `{x ∈ span(domain) : m x ∈ span(target)}`.
fn preimage_in(m: &Matrix, domain: &[Vector], target: &[Vector]) -> Result<Vec<Vector>> {
    if domain.is_empty() {
        return Ok(vec![]);
    }
    let imgs = image(m, domain);
    let mut cols = imgs;
    cols.extend(target.iter().map(|t| t.iter().map(|x| -x).collect::<Vector>()));
    let big = Matrix::from_columns(m.rows, &cols)?;
    let ker = crate::linalg::kernel_basis(&big);
    let dom = Matrix::from_columns(m.cols, domain)?;
    Ok(ker.iter().map(|k| dom.apply(&k[..domain.len()])).collect())
}

/// `span(a) + B = span(b) + B`.
fn equal_mod(n: usize, a: &[Vector], b: &[Vector], base: &[Vector]) -> bool {
    let mut x = a.to_vec();
    x.extend_from_slice(base);
    let mut y = b.to_vec();
    y.extend_from_slice(base);
    crate::linalg::same_span(n, &x, &y) || (span_rank(n, &x) == 0 && span_rank(n, &y) == 0)
}

fn vecs_loc(group: &str, n: usize, vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().take(3).map(|v| crate::report::fmt_vec(v)).collect();
    format!("H^{n} {group}: {}", parts.join(" "))
}

/// Verifies the short exact sequence `0 → K → C_rAvg → C_AssBimod → 0`
/// degreewise and exactness of the induced long sequence at every node in
/// degrees `1..=n_max`.
pub fn les_check(ctx: &RAvgContext, n_max: usize) -> Result<LesReport> {
    let kc = ctx.kernel_complex(n_max)?;
    let cc = ctx.complex(n_max)?;
    let ac = ctx.bimod_complex(n_max)?;
    let mut report = Report::new("long exact sequence");
    // short exact sequence and chain maps
    for n in 1..=n_max + 1 {
        let (i, p) = (ctx.inclusion(n), ctx.projection(n));
        let loc = || format!("degree {n}");
        let pi = p.mul(&i)?;
        if !pi.is_zero() {
            report.fail("π∘ι = 0", loc());
        } else {
            report.pass();
        }
        let ok = i.rank() == i.cols && p.rank() == p.rows && i.cols + p.rows == i.rows;
        if ok {
            report.pass();
        } else {
            report.fail("0 → K → C → C_AssBimod → 0 exact", loc());
        }
        if n <= n_max {
            let dk = kc.coboundary(n).expect("in range");
            let dc = cc.coboundary(n).expect("in range");
            let da = ac.coboundary(n).expect("in range");
            if dc.mul(&i)? != ctx.inclusion(n + 1).mul(&dk)? {
                report.fail("δ∘ι = ι∘δ", loc());
            } else {
                report.pass();
            }
            if ctx.projection(n + 1).mul(&dc)? != da.mul(&p)? {
                report.fail("δ∘π = π∘δ", loc());
            } else {
                report.pass();
            }
        }
    }
    let hk: Vec<CohomologyGroup> = (0..=n_max).map(|n| betti(&kc, n)).collect::<Result<_>>()?;
    let hc: Vec<CohomologyGroup> = (0..=n_max).map(|n| betti(&cc, n)).collect::<Result<_>>()?;
    let ha: Vec<CohomologyGroup> = (0..=n_max).map(|n| betti(&ac, n)).collect::<Result<_>>()?;
    // coboundaries of K one degree past the range, for the connecting map target
    let kb_top: Vec<Vector> = {
        let d = kc.coboundary(n_max).expect("in range");
        span_basis(d.rows, &columns(&d))
    };
    let conn: Vec<Matrix> = (0..=n_max).map(|n| ctx.connecting(n)).collect::<Result<_>>()?;
    let mut nodes = vec![];
    for n in 1..=n_max {
        // at H^n(K): ker ι_* = im ∂_{n−1}
        let i = ctx.inclusion(n);
        let ker_i = preimage_in(&i, &hk[n].cocycles, &hc[n].coboundaries)?;
        let im_d = image(&conn[n - 1], &ha[n - 1].cocycles);
        let ok = equal_mod(kc.dim(n), &ker_i, &im_d, &hk[n].coboundaries);
        push_node(&mut report, &mut nodes, n, "operator", hk[n].dim, ok, &ker_i, &im_d);
        // at H^n(C): ker π_* = im ι_*
        let p = ctx.projection(n);
        let ker_p = preimage_in(&p, &hc[n].cocycles, &ha[n].coboundaries)?;
        let im_i = image(&i, &hk[n].cocycles);
        let ok = equal_mod(cc.dim(n), &ker_p, &im_i, &hc[n].coboundaries);
        push_node(&mut report, &mut nodes, n, "rAvg", hc[n].dim, ok, &ker_p, &im_i);
        // at H^n(AssBimod): ker ∂_n = im π_*
        let target = if n == n_max { kb_top.clone() } else { hk[n + 1].coboundaries.clone() };
        let ker_c = preimage_in(&conn[n], &ha[n].cocycles, &target)?;
        let im_p = image(&p, &hc[n].cocycles);
        let ok = equal_mod(ac.dim(n), &ker_c, &im_p, &ha[n].coboundaries);
        push_node(&mut report, &mut nodes, n, "AssBimod", ha[n].dim, ok, &ker_c, &im_p);
    }
    Ok(LesReport { nodes, report })
}

#[allow(clippy::too_many_arguments)]
fn push_node(
    report: &mut Report,
    nodes: &mut Vec<LesNode>,
    n: usize,
    group: &'static str,
    dim: usize,
    ok: bool,
    ker: &[Vector],
    im: &[Vector],
) {
    if ok {
        report.pass();
    } else {
        let mut reps = ker.to_vec();
        reps.extend_from_slice(im);
        report.fail("ker = im", vecs_loc(group, n, &reps));
    }
    nodes.push(LesNode { degree: n, group, dim, exact: ok });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{a_plus_a_sum, kx2_adjoint};
    use crate::linalg::int;

    #[test]
    fn hochschild_of_identity_on_commutative_algebra() {
        // δ(id)(a, b) = a·b − ab + a·b = ab on a commutative algebra
        let a = AlgebraData::truncated_polynomial(2);
        let b = BimoduleData::adjoint(&a);
        let id = Multilinear::from_fn(&[2], 2, |ix| unit(2, ix[0]));
        let d = hochschild_coboundary(&a, &b, &id).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(d.entry(&[x, y]), a.mu.get(x, y));
            }
        }
    }

    #[test]
    fn h_in_degree_one() {
        let r = a_plus_a_sum();
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let f = Multilinear::from_fn(&[1], 1, |_| vec![int(3)]);
        let g = MixedCochain::from_fn(1, 1, 2, 2, |_, ix| if ix[0] == 0 { vec![int(1), int(2)] } else { vec![int(0), int(5)] });
        let h = ctx.h(&f, &g).unwrap();
        for u in 0..2 {
            // −f(P u) + P g(u)
            let pu = r.p.column(u);
            let expect = vsub(&r.p.apply(&g.parts[0].data[u * 2..u * 2 + 2]), &f.eval(&[&pu]));
            assert_eq!(h.get(0, u), &expect[..]);
        }
    }

    #[test]
    fn zero_complex() {
        let spec = ComplexSpec::new(
            "z",
            0,
            vec![0, 3, 0],
            vec![vec![], vec!["a".into(), "b".into(), "c".into()], vec![]],
            vec![Matrix::zeros(3, 0), Matrix::zeros(0, 3)],
        )
        .unwrap();
        assert_eq!(betti(&spec, 1).unwrap().dim, 3);
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let e = ComplexSpec::new(
            "bad",
            0,
            vec![1, 1, 1],
            vec![vec!["x".into()]; 3],
            vec![Matrix::identity(1), Matrix::identity(1)],
        );
        assert!(matches!(e, Err(Error::NotAComplex(_))));
    }

    #[test]
    fn ravg_complex_squares_to_zero_on_fixture() {
        let ctx = RAvgContext::adjoint(&kx2_adjoint()).unwrap();
        ctx.complex(2).unwrap();
    }
}
