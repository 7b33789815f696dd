//! Finite-dimensional structures given by structure constants, and verifiers
//! for their defining identities.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit, vsub, zeros, Matrix, Scalar, Vector};
use crate::report::Report;
use crate::trees::Star;

/// A bilinear map `ℚ^{d1} × ℚ^{d2} → ℚ^{out}` stored by basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub d1: usize,
    pub d2: usize,
    pub out: usize,
    pub data: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(d1: usize, d2: usize, out: usize) -> BilinearMap {
        BilinearMap {
            d1,
            d2,
            out,
            data: zeros(d1 * d2 * out),
        }
    }

    pub fn from_fn(d1: usize, d2: usize, out: usize, mut f: impl FnMut(usize, usize) -> Vector) -> BilinearMap {
        let mut m = BilinearMap::zero(d1, d2, out);
        for i in 0..d1 {
            for j in 0..d2 {
                let v = f(i, j);
                assert_eq!(v.len(), out, "structure constant of wrong length");
                m.get_mut(i, j).clone_from_slice(&v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        let o = (i * self.d2 + j) * self.out;
        &self.data[o..o + self.out]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut [Scalar] {
        let o = (i * self.d2 + j) * self.out;
        &mut self.data[o..o + self.out]
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn add(&self, other: &BilinearMap) -> BilinearMap {
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> BilinearMap {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= c;
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub dim: usize,
    pub mu: BilinearMap,
}

impl AlgebraData {
    pub fn new(dim: usize, mu: BilinearMap) -> Result<AlgebraData> {
        if mu.d1 != dim || mu.d2 != dim || mu.out != dim {
            return Err(Error::DimensionMismatch("multiplication table shape".into()));
        }
        Ok(AlgebraData { dim, mu })
    }

    pub fn zero(dim: usize) -> AlgebraData {
        AlgebraData {
            dim,
            mu: BilinearMap::zero(dim, dim, dim),
        }
    }

    /// `ℚ[x]/(x^k)` on the basis `1, x, …, x^{k−1}`.
    pub fn truncated_polynomial(k: usize) -> AlgebraData {
        let mu = BilinearMap::from_fn(k, k, k, |i, j| if i + j < k { unit(k, i + j) } else { zeros(k) });
        AlgebraData { dim: k, mu }
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.mu.apply(x, y)
    }

    /// A two-sided unit, if one exists.
    pub fn unit_element(&self) -> Option<Vector> {
        // solve e·e_j = e_j and e_j·e = e_j for all j
        let d = self.dim;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.mu.get(i, j)[k].clone()).collect::<Vector>());
                rhs.push(if j == k { Scalar::one() } else { Scalar::zero() });
                rows.push((0..d).map(|i| self.mu.get(j, i)[k].clone()).collect::<Vector>());
                rhs.push(if j == k { Scalar::one() } else { Scalar::zero() });
            }
        }
        if d == 0 {
            return Some(vec![]);
        }
        let m = Matrix::from_rows(&rows).ok()?;
        crate::linalg::coset_solve(&m, &rhs).ok().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleData {
    pub base_dim: usize,
    pub dim: usize,
    /// `a·u`
    pub left: BilinearMap,
    /// `u·a`
    pub right: BilinearMap,
}

impl BimoduleData {
    pub fn new(base_dim: usize, dim: usize, left: BilinearMap, right: BilinearMap) -> Result<BimoduleData> {
        if (left.d1, left.d2, left.out) != (base_dim, dim, dim) || (right.d1, right.d2, right.out) != (dim, base_dim, dim) {
            return Err(Error::DimensionMismatch("bimodule action shapes".into()));
        }
        Ok(BimoduleData { base_dim, dim, left, right })
    }

    pub fn zero(base_dim: usize, dim: usize) -> BimoduleData {
        BimoduleData {
            base_dim,
            dim,
            left: BilinearMap::zero(base_dim, dim, dim),
            right: BilinearMap::zero(dim, base_dim, dim),
        }
    }

    pub fn adjoint(a: &AlgebraData) -> BimoduleData {
        BimoduleData {
            base_dim: a.dim,
            dim: a.dim,
            left: a.mu.clone(),
            right: a.mu.clone(),
        }
    }

    /// `A^{⊕k}` with componentwise actions.
    pub fn adjoint_power(a: &AlgebraData, k: usize) -> BimoduleData {
        let d = a.dim;
        let dm = d * k;
        let left = BilinearMap::from_fn(d, dm, dm, |i, j| {
            let (block, jj) = (j / d, j % d);
            let mut v = zeros(dm);
            v[block * d..(block + 1) * d].clone_from_slice(a.mu.get(i, jj));
            v
        });
        let right = BilinearMap::from_fn(dm, d, dm, |j, i| {
            let (block, jj) = (j / d, j % d);
            let mut v = zeros(dm);
            v[block * d..(block + 1) * d].clone_from_slice(a.mu.get(jj, i));
            v
        });
        BimoduleData { base_dim: d, dim: dm, left, right }
    }

    pub fn act_left(&self, a: &[Scalar], u: &[Scalar]) -> Vector {
        self.left.apply(a, u)
    }

    pub fn act_right(&self, u: &[Scalar], a: &[Scalar]) -> Vector {
        self.right.apply(u, a)
    }

    pub fn is_adjoint_of(&self, a: &AlgebraData) -> bool {
        self.base_dim == a.dim && self.dim == a.dim && self.left == a.mu && self.right == a.mu
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiassData {
    pub dim: usize,
    pub dashv: BilinearMap,
    pub vdash: BilinearMap,
}

impl DiassData {
    pub fn new(dim: usize, dashv: BilinearMap, vdash: BilinearMap) -> Result<DiassData> {
        for m in [&dashv, &vdash] {
            if (m.d1, m.d2, m.out) != (dim, dim, dim) {
                return Err(Error::DimensionMismatch("diassociative product shape".into()));
            }
        }
        Ok(DiassData { dim, dashv, vdash })
    }

    pub fn zero(dim: usize) -> DiassData {
        DiassData {
            dim,
            dashv: BilinearMap::zero(dim, dim, dim),
            vdash: BilinearMap::zero(dim, dim, dim),
        }
    }

    /// An associative algebra with `⊣ = ⊢ = ·`.
    pub fn from_associative(a: &AlgebraData) -> DiassData {
        DiassData {
            dim: a.dim,
            dashv: a.mu.clone(),
            vdash: a.mu.clone(),
        }
    }

    pub fn product(&self, s: Star) -> &BilinearMap {
        match s {
            Star::Left => &self.dashv,
            Star::Right => &self.vdash,
        }
    }

    pub fn mul(&self, s: Star, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.product(s).apply(x, y)
    }
}

/// A representation of a diassociative algebra on a space `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiassRepData {
    pub base_dim: usize,
    pub dim: usize,
    /// `a ⊣ m`
    pub left_dashv: BilinearMap,
    /// `a ⊢ m`
    pub left_vdash: BilinearMap,
    /// `m ⊣ a`
    pub right_dashv: BilinearMap,
    /// `m ⊢ a`
    pub right_vdash: BilinearMap,
}

impl DiassRepData {
    pub fn zero(base_dim: usize, dim: usize) -> DiassRepData {
        DiassRepData {
            base_dim,
            dim,
            left_dashv: BilinearMap::zero(base_dim, dim, dim),
            left_vdash: BilinearMap::zero(base_dim, dim, dim),
            right_dashv: BilinearMap::zero(dim, base_dim, dim),
            right_vdash: BilinearMap::zero(dim, base_dim, dim),
        }
    }

    pub fn adjoint(d: &DiassData) -> DiassRepData {
        DiassRepData {
            base_dim: d.dim,
            dim: d.dim,
            left_dashv: d.dashv.clone(),
            left_vdash: d.vdash.clone(),
            right_dashv: d.dashv.clone(),
            right_vdash: d.vdash.clone(),
        }
    }

    pub fn left(&self, s: Star) -> &BilinearMap {
        match s {
            Star::Left => &self.left_dashv,
            Star::Right => &self.left_vdash,
        }
    }

    pub fn right(&self, s: Star) -> &BilinearMap {
        match s {
            Star::Left => &self.right_dashv,
            Star::Right => &self.right_vdash,
        }
    }
}

/// `(A, M, P)` with `P : M → A` stored as a `dim A × dim M` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RAvgAlgebra {
    pub a: AlgebraData,
    pub m: BimoduleData,
    pub p: Matrix,
}

impl RAvgAlgebra {
    pub fn new(a: AlgebraData, m: BimoduleData, p: Matrix) -> Result<RAvgAlgebra> {
        if m.base_dim != a.dim || p.rows != a.dim || p.cols != m.dim {
            return Err(Error::DimensionMismatch("operator or bimodule shape".into()));
        }
        Ok(RAvgAlgebra { a, m, p })
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim
    }

    pub fn apply_p(&self, u: &[Scalar]) -> Vector {
        self.p.apply(u)
    }

    pub fn with_operator(&self, p: Matrix) -> RAvgAlgebra {
        RAvgAlgebra {
            a: self.a.clone(),
            m: self.m.clone(),
            p,
        }
    }
}

/// A bimodule `(N →Q B, l, r)` over a relative averaging algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RAvgBimodule {
    pub b: BimoduleData,
    pub n: BimoduleData,
    /// `Q : N → B`, a `dim B × dim N` matrix.
    pub q: Matrix,
    /// `l : M × B → N`
    pub l: BilinearMap,
    /// `r : B × M → N`
    pub r: BilinearMap,
}

impl RAvgBimodule {
    pub fn adjoint(r: &RAvgAlgebra) -> RAvgBimodule {
        RAvgBimodule {
            b: BimoduleData::adjoint(&r.a),
            n: r.m.clone(),
            q: r.p.clone(),
            l: r.m.right.clone(),
            r: r.m.left.clone(),
        }
    }

    pub fn zero(r: &RAvgAlgebra, dim_b: usize, dim_n: usize) -> RAvgBimodule {
        RAvgBimodule {
            b: BimoduleData::zero(r.a.dim, dim_b),
            n: BimoduleData::zero(r.a.dim, dim_n),
            q: Matrix::zeros(dim_b, dim_n),
            l: BilinearMap::zero(r.m.dim, dim_b, dim_n),
            r: BilinearMap::zero(dim_b, r.m.dim, dim_n),
        }
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim
    }

    pub fn dim_n(&self) -> usize {
        self.n.dim
    }

    pub fn check_shapes(&self, base: &RAvgAlgebra) -> Result<()> {
        let (da, dm, db, dn) = (base.a.dim, base.m.dim, self.b.dim, self.n.dim);
        let ok = self.b.base_dim == da
            && self.n.base_dim == da
            && self.q.rows == db
            && self.q.cols == dn
            && (self.l.d1, self.l.d2, self.l.out) == (dm, db, dn)
            && (self.r.d1, self.r.d2, self.r.out) == (db, dm, dn);
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch("bimodule over a relative averaging algebra".into()))
        }
    }
}

fn basis_loc(labels: &[(&str, usize)]) -> String {
    let parts: Vec<String> = labels.iter().map(|(n, i)| format!("{n}={i}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn verify_associative(a: &AlgebraData) -> Report {
    let mut rep = Report::new("associative algebra");
    let d = a.dim;
    for i in 0..d {
        for j in 0..d {
            let ij = a.mu.get(i, j).to_vec();
            for k in 0..d {
                let lhs = a.mul(&ij, &unit(d, k));
                let rhs = a.mul(&unit(d, i), a.mu.get(j, k));
                rep.check("(ab)c = a(bc)", || basis_loc(&[("a", i), ("b", j), ("c", k)]), &lhs, &rhs);
            }
        }
    }
    rep
}

pub fn verify_associative_bimodule(a: &AlgebraData, m: &BimoduleData) -> Result<Report> {
    if m.base_dim != a.dim || a.mu.d1 != a.dim {
        return Err(Error::DimensionMismatch("bimodule over a different algebra".into()));
    }
    let mut rep = verify_associative(a);
    rep.subject = "associative bimodule".into();
    let (da, dm) = (a.dim, m.dim);
    for i in 0..da {
        for j in 0..da {
            let ij = a.mu.get(i, j);
            for u in 0..dm {
                let eu = unit(dm, u);
                // (ab)u = a(bu)
                let lhs = m.act_left(ij, &eu);
                let rhs = m.act_left(&unit(da, i), m.left.get(j, u));
                rep.check("(ab)·u = a·(b·u)", || basis_loc(&[("a", i), ("b", j), ("u", u)]), &lhs, &rhs);
                // (au)b = a(ub)
                let lhs = m.act_right(m.left.get(i, u), &unit(da, j));
                let rhs = m.act_left(&unit(da, i), m.right.get(u, j));
                rep.check("(a·u)·b = a·(u·b)", || basis_loc(&[("a", i), ("u", u), ("b", j)]), &lhs, &rhs);
                // (ua)b = u(ab)
                let lhs = m.act_right(m.right.get(u, i), &unit(da, j));
                let rhs = m.act_right(&eu, ij);
                rep.check("(u·a)·b = u·(ab)", || basis_loc(&[("u", u), ("a", i), ("b", j)]), &lhs, &rhs);
            }
        }
    }
    Ok(rep)
}

/// Shape of a bracketed triple product.
#[derive(Clone, Copy, Debug)]
pub enum Triple {
    /// `(x s₁ y) s₂ z`
    LeftNested(Star, Star),
    /// `x s₁ (y s₂ z)`
    RightNested(Star, Star),
}

/// The five diassociative identities.
pub const DIASS_IDENTITIES: [(&str, Triple, Triple); 5] = [
    ("(x⊣y)⊣z = x⊣(y⊣z)", Triple::LeftNested(Star::Left, Star::Left), Triple::RightNested(Star::Left, Star::Left)),
    ("x⊣(y⊣z) = x⊣(y⊢z)", Triple::RightNested(Star::Left, Star::Left), Triple::RightNested(Star::Left, Star::Right)),
    ("(x⊢y)⊣z = x⊢(y⊣z)", Triple::LeftNested(Star::Right, Star::Left), Triple::RightNested(Star::Right, Star::Left)),
    ("(x⊣y)⊢z = (x⊢y)⊢z", Triple::LeftNested(Star::Left, Star::Right), Triple::LeftNested(Star::Right, Star::Right)),
    ("(x⊢y)⊢z = x⊢(y⊢z)", Triple::LeftNested(Star::Right, Star::Right), Triple::RightNested(Star::Right, Star::Right)),
];

/// An element either of the algebra (`D`) or of the representation (`M`).
#[derive(Clone, Debug)]
enum Elt {
    D(Vector),
    M(Vector),
}

fn rep_product(d: &DiassData, rep: Option<&DiassRepData>, s: Star, x: &Elt, y: &Elt) -> Elt {
    match (x, y) {
        (Elt::D(a), Elt::D(b)) => Elt::D(d.mul(s, a, b)),
        (Elt::D(a), Elt::M(m)) => Elt::M(rep.expect("representation").left(s).apply(a, m)),
        (Elt::M(m), Elt::D(a)) => Elt::M(rep.expect("representation").right(s).apply(m, a)),
        (Elt::M(_), Elt::M(_)) => unreachable!("at most one module variable"),
    }
}

fn eval_triple(d: &DiassData, rep: Option<&DiassRepData>, t: Triple, x: &Elt, y: &Elt, z: &Elt) -> Elt {
    match t {
        Triple::LeftNested(s1, s2) => {
            let xy = rep_product(d, rep, s1, x, y);
            rep_product(d, rep, s2, &xy, z)
        }
        Triple::RightNested(s1, s2) => {
            let yz = rep_product(d, rep, s2, y, z);
            rep_product(d, rep, s1, x, &yz)
        }
    }
}

fn elt_vec(e: Elt) -> Vector {
    match e {
        Elt::D(v) | Elt::M(v) => v,
    }
}

pub fn verify_diass(d: &DiassData) -> Report {
    let mut rep = Report::new("diassociative algebra");
    let n = d.dim;
    for (name, lhs_t, rhs_t) in DIASS_IDENTITIES {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (Elt::D(unit(n, i)), Elt::D(unit(n, j)), Elt::D(unit(n, k)));
                    let lhs = elt_vec(eval_triple(d, None, lhs_t, &x, &y, &z));
                    let rhs = elt_vec(eval_triple(d, None, rhs_t, &x, &y, &z));
                    rep.check(name, || basis_loc(&[("x", i), ("y", j), ("z", k)]), &lhs, &rhs);
                }
            }
        }
    }
    rep
}

pub fn verify_diass_rep(d: &DiassData, r: &DiassRepData) -> Result<Report> {
    if r.base_dim != d.dim {
        return Err(Error::DimensionMismatch("representation over a different algebra".into()));
    }
    let mut rep = Report::new("diassociative representation");
    let (nd, nm) = (d.dim, r.dim);
    for (name, lhs_t, rhs_t) in DIASS_IDENTITIES {
        for slot in 0..3 {
            let dims: Vec<usize> = (0..3).map(|s| if s == slot { nm } else { nd }).collect();
            for i in 0..dims[0] {
                for j in 0..dims[1] {
                    for k in 0..dims[2] {
                        let mk = |s: usize, idx: usize| {
                            if s == slot {
                                Elt::M(unit(nm, idx))
                            } else {
                                Elt::D(unit(nd, idx))
                            }
                        };
                        let (x, y, z) = (mk(0, i), mk(1, j), mk(2, k));
                        let lhs = elt_vec(eval_triple(d, Some(r), lhs_t, &x, &y, &z));
                        let rhs = elt_vec(eval_triple(d, Some(r), rhs_t, &x, &y, &z));
                        let label = format!("{name} with {} in M", ["x", "y", "z"][slot]);
                        rep.check(&label, || basis_loc(&[("x", i), ("y", j), ("z", k)]), &lhs, &rhs);
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Checks `P(u)P(v) = P(P(u)·v) = P(u·P(v))` on basis pairs of `M`.
pub fn verify_relative_averaging(r: &RAvgAlgebra) -> Result<Report> {
    let pre = verify_associative_bimodule(&r.a, &r.m)?;
    if !pre.is_valid() {
        return Err(Error::Precondition(format!(
            "underlying A-bimodule is not valid: {} violations",
            pre.violations.len()
        )));
    }
    Ok(averaging_identity_report(r))
}

/// The averaging identity alone, without the bimodule precondition.
pub fn averaging_identity_report(r: &RAvgAlgebra) -> Report {
    let mut rep = Report::new("relative averaging operator");
    let dm = r.m.dim;
    let pu: Vec<Vector> = (0..dm).map(|u| r.p.column(u)).collect();
    for u in 0..dm {
        for v in 0..dm {
            let lhs = r.a.mul(&pu[u], &pu[v]);
            let mid = r.apply_p(&r.m.act_left(&pu[u], &unit(dm, v)));
            let rhs = r.apply_p(&r.m.act_right(&unit(dm, u), &pu[v]));
            rep.check("P(u)P(v) = P(P(u)·v)", || basis_loc(&[("u", u), ("v", v)]), &lhs, &mid);
            rep.check("P(u)P(v) = P(u·P(v))", || basis_loc(&[("u", u), ("v", v)]), &lhs, &rhs);
        }
    }
    rep
}

pub fn verify_ravg_bimodule(base: &RAvgAlgebra, bm: &RAvgBimodule) -> Result<Report> {
    bm.check_shapes(base)?;
    let base_rep = verify_relative_averaging(base)?;
    if !base_rep.is_valid() {
        return Err(Error::Precondition("underlying relative averaging algebra is not valid".into()));
    }
    let mut rep = Report::new("bimodule over a relative averaging algebra");
    let mut b_rep = verify_associative_bimodule(&base.a, &bm.b)?;
    b_rep.violations.iter_mut().for_each(|v| v.identity = format!("B: {}", v.identity));
    let mut n_rep = verify_associative_bimodule(&base.a, &bm.n)?;
    n_rep.violations.iter_mut().for_each(|v| v.identity = format!("N: {}", v.identity));
    rep.merge(b_rep);
    rep.merge(n_rep);
    let (da, dm, db, dn) = (base.a.dim, base.m.dim, bm.b.dim, bm.n.dim);
    let m = &base.m;
    for a in 0..da {
        let ea = unit(da, a);
        for u in 0..dm {
            let eu = unit(dm, u);
            for b in 0..db {
                let eb = unit(db, b);
                let loc = || basis_loc(&[("a", a), ("u", u), ("b", b)]);
                // l(a·u, b) = a·l(u, b)
                rep.check("l(a·u,b) = a·l(u,b)", loc, &bm.l.apply(m.left.get(a, u), &eb), &bm.n.act_left(&ea, bm.l.get(u, b)));
                // l(u·a, b) = l(u, a·b)
                rep.check("l(u·a,b) = l(u,a·b)", loc, &bm.l.apply(m.right.get(u, a), &eb), &bm.l.apply(&eu, bm.b.left.get(a, b)));
                // l(u, b·a) = l(u, b)·a
                rep.check("l(u,b·a) = l(u,b)·a", loc, &bm.l.apply(&eu, bm.b.right.get(b, a)), &bm.n.act_right(bm.l.get(u, b), &ea));
                // r(a·b, u) = a·r(b, u)
                rep.check("r(a·b,u) = a·r(b,u)", loc, &bm.r.apply(bm.b.left.get(a, b), &eu), &bm.n.act_left(&ea, bm.r.get(b, u)));
                // r(b·a, u) = r(b, a·u)
                rep.check("r(b·a,u) = r(b,a·u)", loc, &bm.r.apply(bm.b.right.get(b, a), &eu), &bm.r.apply(&eb, m.left.get(a, u)));
                // r(b, u·a) = r(b, u)·a
                rep.check("r(b,u·a) = r(b,u)·a", loc, &bm.r.apply(&eb, m.right.get(u, a)), &bm.n.act_right(bm.r.get(b, u), &ea));
            }
        }
    }
    for u in 0..dm {
        let pu = base.p.column(u);
        let eu = unit(dm, u);
        for nn in 0..dn {
            let qn = bm.q.column(nn);
            let en = unit(dn, nn);
            let loc = || basis_loc(&[("u", u), ("n", nn)]);
            let lhs = bm.b.act_left(&pu, &qn);
            rep.check("P(u)·Q(n) = Q(P(u)·n)", loc, &lhs, &bm.q.apply(&bm.n.act_left(&pu, &en)));
            rep.check("P(u)·Q(n) = Q(l(u,Q(n)))", loc, &lhs, &bm.q.apply(&bm.l.apply(&eu, &qn)));
            let lhs = bm.b.act_right(&qn, &pu);
            rep.check("Q(n)·P(u) = Q(r(Q(n),u))", loc, &lhs, &bm.q.apply(&bm.r.apply(&qn, &eu)));
            rep.check("Q(n)·P(u) = Q(n·P(u))", loc, &lhs, &bm.q.apply(&bm.n.act_right(&en, &pu)));
        }
    }
    Ok(rep)
}

/// Result of testing an element `r ∈ A⊗A`.
#[derive(Clone, Debug)]
pub struct AveragingElement {
    pub valid: bool,
    pub p: Matrix,
}

/// Tests `r₁₃r₁₂ = r₁₂r₂₃ = r₂₃r₁₃` and returns `P(a) = Σ r₁·a·r₂`.
pub fn averaging_from_element(a: &AlgebraData, r: &[Scalar]) -> Result<AveragingElement> {
    let d = a.dim;
    if r.len() != d * d {
        return Err(Error::DimensionMismatch("element of A⊗A needs dim² coordinates".into()));
    }
    let idx3 = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    let mut t13_12 = zeros(d * d * d);
    let mut t12_23 = zeros(d * d * d);
    let mut t23_13 = zeros(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let rij = &r[i * d + j];
            if rij.is_zero() {
                continue;
            }
            for k in 0..d {
                for l in 0..d {
                    let rkl = &r[k * d + l];
                    if rkl.is_zero() {
                        continue;
                    }
                    let c = rij * rkl;
                    for (x, cx) in a.mu.get(i, k).iter().enumerate() {
                        if !cx.is_zero() {
                            t13_12[idx3(x, l, j)] += &c * cx;
                        }
                    }
                    for (x, cx) in a.mu.get(j, k).iter().enumerate() {
                        if !cx.is_zero() {
                            t12_23[idx3(i, x, l)] += &c * cx;
                        }
                    }
                    for (x, cx) in a.mu.get(l, j).iter().enumerate() {
                        if !cx.is_zero() {
                            t23_13[idx3(i, k, x)] += &c * cx;
                        }
                    }
                }
            }
        }
    }
    let valid = t13_12 == t12_23 && t12_23 == t23_13;
    let mut p = Matrix::zeros(d, d);
    for c in 0..d {
        let ec = unit(d, c);
        let mut col = zeros(d);
        for i in 0..d {
            for j in 0..d {
                let rij = &r[i * d + j];
                if rij.is_zero() {
                    continue;
                }
                let v = a.mul(&a.mul(&unit(d, i), &ec), &unit(d, j));
                axpy(&mut col, rij, &v);
            }
        }
        for (row, x) in col.into_iter().enumerate() {
            p.set(row, c, x);
        }
    }
    Ok(AveragingElement { valid, p })
}

pub fn verify_morphism(src: &RAvgAlgebra, dst: &RAvgAlgebra, phi: &Matrix, psi: &Matrix) -> Result<Report> {
    let (da, dm, da2, dm2) = (src.a.dim, src.m.dim, dst.a.dim, dst.m.dim);
    if (phi.rows, phi.cols) != (da2, da) || (psi.rows, psi.cols) != (dm2, dm) {
        return Err(Error::DimensionMismatch("morphism matrix shapes".into()));
    }
    let mut rep = Report::new("morphism of relative averaging algebras");
    let phis: Vec<Vector> = (0..da).map(|i| phi.column(i)).collect();
    let psis: Vec<Vector> = (0..dm).map(|i| psi.column(i)).collect();
    for i in 0..da {
        for j in 0..da {
            rep.check(
                "φ(ab) = φ(a)φ(b)",
                || basis_loc(&[("a", i), ("b", j)]),
                &phi.apply(src.a.mu.get(i, j)),
                &dst.a.mul(&phis[i], &phis[j]),
            );
        }
        for u in 0..dm {
            rep.check(
                "ψ(a·u) = φ(a)·ψ(u)",
                || basis_loc(&[("a", i), ("u", u)]),
                &psi.apply(src.m.left.get(i, u)),
                &dst.m.act_left(&phis[i], &psis[u]),
            );
            rep.check(
                "ψ(u·a) = ψ(u)·φ(a)",
                || basis_loc(&[("u", u), ("a", i)]),
                &psi.apply(src.m.right.get(u, i)),
                &dst.m.act_right(&psis[u], &phis[i]),
            );
        }
    }
    for u in 0..dm {
        rep.check(
            "φ∘P = P′∘ψ",
            || basis_loc(&[("u", u)]),
            &phi.apply(&src.p.column(u)),
            &dst.apply_p(&psis[u]),
        );
    }
    Ok(rep)
}

/// Difference helper used by several verifiers.
pub fn differs(a: &[Scalar], b: &[Scalar]) -> bool {
    !is_zero_vec(&vsub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn dual_numbers_adjoint_is_valid() {
        let a = AlgebraData::truncated_polynomial(2);
        let m = BimoduleData::adjoint(&a);
        assert!(verify_associative_bimodule(&a, &m).unwrap().is_valid());
    }

    #[test]
    fn perturbed_structure_constant_is_flagged() {
        let mut a = AlgebraData::truncated_polynomial(2);
        a.mu.get_mut(0, 1)[0] = int(1); // 1·x = 1 + x
        let rep = verify_associative(&a);
        assert!(!rep.is_valid());
        // (1·1)·x = 1 + x but 1·(1·x) = 2 + x
        assert!(rep.violations.iter().any(|v| v.location == "[a=0, b=0, c=1]"));
    }

    #[test]
    fn unit_of_dual_numbers() {
        let a = AlgebraData::truncated_polynomial(2);
        assert_eq!(a.unit_element(), Some(vec![int(1), int(0)]));
        assert_eq!(AlgebraData::zero(2).unit_element(), None);
    }

    #[test]
    fn associative_as_diassociative() {
        let a = AlgebraData::truncated_polynomial(3);
        assert!(verify_diass(&DiassData::from_associative(&a)).is_valid());
        assert!(verify_diass(&DiassData::zero(2)).is_valid());
    }

    #[test]
    fn sum_operator_on_two_copies() {
        let a = AlgebraData::truncated_polynomial(2);
        let m = BimoduleData::adjoint_power(&a, 2);
        // P(a₁, a₂) = a₁ + a₂
        let p = Matrix::from_i64(2, 4, &[1, 0, 1, 0, 0, 1, 0, 1]);
        let r = RAvgAlgebra::new(a, m, p).unwrap();
        assert!(verify_relative_averaging(&r).unwrap().is_valid());
        let zero = r.with_operator(Matrix::zeros(2, 4));
        assert!(verify_relative_averaging(&zero).unwrap().is_valid());
    }

    #[test]
    fn averaging_element_examples() {
        let a = AlgebraData::truncated_polynomial(2);
        let zero = averaging_from_element(&a, &zeros(4)).unwrap();
        assert!(zero.valid && zero.p.is_zero());
        let one = averaging_from_element(&a, &[int(1), int(0), int(0), int(0)]).unwrap();
        assert!(one.valid && one.p == Matrix::identity(2));
        // r = x⊗x: every triple product contains x² = 0
        let xx = averaging_from_element(&a, &[int(0), int(0), int(0), int(1)]).unwrap();
        assert!(xx.valid && xx.p.is_zero());
    }
}
