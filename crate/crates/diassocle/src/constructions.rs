//! Structure-producing constructions: direct sums, graphs, Nijenhuis
//! operators, induced and quotient structures, duals, semidirect products,
//! induced representations and the truncated free object.

use num_traits::Zero;

use crate::algebra::{
    verify_diass, verify_relative_averaging, AlgebraData, BilinearMap, BimoduleData, DiassData, DiassRepData,
    RAvgAlgebra, RAvgBimodule,
};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, span_basis, unit, vsub, zeros, Matrix, Scalar, Vector};
use crate::report::Report;
use crate::trees::Star;

/// `A ⊕ M` with `(a,u)⊣(b,v) = (ab, u·b)` and `(a,u)⊢(b,v) = (ab, a·v)`.
pub fn diass_direct_sum(a: &AlgebraData, m: &BimoduleData) -> DiassData {
    let (da, dm) = (a.dim, m.dim);
    let d = da + dm;
    let mut dashv = BilinearMap::zero(d, d, d);
    let mut vdash = BilinearMap::zero(d, d, d);
    for i in 0..da {
        for j in 0..da {
            dashv.get_mut(i, j)[..da].clone_from_slice(a.mu.get(i, j));
            vdash.get_mut(i, j)[..da].clone_from_slice(a.mu.get(i, j));
        }
        for u in 0..dm {
            // (u, ⊣ b) and (a ⊢ v)
            dashv.get_mut(da + u, i)[da..].clone_from_slice(m.right.get(u, i));
            vdash.get_mut(i, da + u)[da..].clone_from_slice(m.left.get(i, u));
        }
    }
    DiassData { dim: d, dashv, vdash }
}

fn in_graph(p: &Matrix, da: usize, x: &[Scalar]) -> bool {
    p.apply(&x[da..]) == x[..da]
}

/// Whether `{(P(u), u)}` is closed under both products of `A ⊕_Diass M`.
pub fn graph_is_subalgebra(r: &RAvgAlgebra) -> bool {
    let d = diass_direct_sum(&r.a, &r.m);
    let (da, dm) = (r.a.dim, r.m.dim);
    let gens: Vec<Vector> = (0..dm)
        .map(|u| {
            let mut g = r.p.column(u);
            g.extend(unit(dm, u));
            g
        })
        .collect();
    for x in &gens {
        for y in &gens {
            for s in [Star::Left, Star::Right] {
                if !in_graph(&r.p, da, &d.mul(s, x, y)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `N_P(a, u) = (P(u), 0)` as a matrix on `A ⊕ M`.
pub fn nijenhuis_operator(r: &RAvgAlgebra) -> Matrix {
    let (da, dm) = (r.a.dim, r.m.dim);
    let mut n = Matrix::zeros(da + dm, da + dm);
    for u in 0..dm {
        for i in 0..da {
            n.set(i, da + u, r.p.get(i, u).clone());
        }
    }
    n
}

/// Tests `N(x)⋆N(y) = N(N(x)⋆y + x⋆N(y) − N(x⋆y))` for both products.
pub fn nijenhuis_report(d: &DiassData, n: &Matrix) -> Report {
    let mut rep = Report::new("Nijenhuis operator");
    let dim = d.dim;
    let nx: Vec<Vector> = (0..dim).map(|i| n.column(i)).collect();
    for s in [Star::Left, Star::Right] {
        let name = format!("N(x){0}N(y) = N(N(x){0}y + x{0}N(y) − N(x{0}y))", s.symbol());
        for i in 0..dim {
            for j in 0..dim {
                let lhs = d.mul(s, &nx[i], &nx[j]);
                let mut inner = d.mul(s, &nx[i], &unit(dim, j));
                let t = d.mul(s, &unit(dim, i), &nx[j]);
                inner = crate::linalg::vadd(&inner, &t);
                inner = vsub(&inner, &n.apply(d.product(s).get(i, j)));
                let rhs = n.apply(&inner);
                rep.check(&name, || format!("[x={i}, y={j}]"), &lhs, &rhs);
            }
        }
    }
    rep
}

pub fn nijenhuis_check(r: &RAvgAlgebra) -> bool {
    let d = diass_direct_sum(&r.a, &r.m);
    nijenhuis_report(&d, &nijenhuis_operator(r)).is_valid()
}

/// `M_P`: `u ⊣ v = u·P(v)`, `u ⊢ v = P(u)·v`.
pub fn induced_diass(r: &RAvgAlgebra) -> DiassData {
    let dm = r.m.dim;
    let pcols: Vec<Vector> = (0..dm).map(|u| r.p.column(u)).collect();
    let dashv = BilinearMap::from_fn(dm, dm, dm, |u, v| r.m.act_right(&unit(dm, u), &pcols[v]));
    let vdash = BilinearMap::from_fn(dm, dm, dm, |u, v| r.m.act_left(&pcols[u], &unit(dm, v)));
    DiassData { dim: dm, dashv, vdash }
}

/// `D → D_Ass` together with the section used to build it.
#[derive(Clone, Debug)]
pub struct QuotientRavg {
    pub ravg: RAvgAlgebra,
    /// Basis of the ideal generated by `a⊣b − a⊢b`, in reduced echelon form.
    pub ideal: Vec<Vector>,
    /// `s : D_Ass → D`, sending each quotient basis vector to a standard basis vector.
    pub section: Matrix,
}

/// Smallest subspace containing `gens` and closed under `x ↦ x⋆e_k, e_k⋆x`
/// for every product in `prods`.
pub fn saturate_ideal(dim: usize, gens: Vec<Vector>, prods: &[&BilinearMap]) -> Vec<Vector> {
    let mut basis = span_basis(dim, &gens);
    loop {
        let mut cand = basis.clone();
        for v in &basis {
            for k in 0..dim {
                let ek = unit(dim, k);
                for p in prods {
                    cand.push(p.apply(v, &ek));
                    cand.push(p.apply(&ek, v));
                }
            }
        }
        let next = span_basis(dim, &cand);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

/// Reduction modulo a subspace given in reduced echelon form.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub dim: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
    /// Coordinates kept by the quotient, in increasing order.
    pub free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(dim: usize, subspace: &[Vector]) -> QuotientMap {
        let rows = span_basis(dim, subspace);
        let pivots: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"))
            .collect();
        let free = (0..dim).filter(|c| !pivots.contains(c)).collect();
        QuotientMap { dim, rows, pivots, free }
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of `[x]` in the quotient basis.
    pub fn project(&self, x: &[Scalar]) -> Vector {
        let mut v = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -v[p].clone() / &row[p];
                axpy(&mut v, &c, row);
            }
        }
        self.free.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|i| self.project(&unit(self.dim, i))).collect();
        Matrix::from_columns(self.quotient_dim(), &cols).expect("consistent shape")
    }

    pub fn section(&self) -> Matrix {
        let cols: Vec<Vector> = self.free.iter().map(|&c| unit(self.dim, c)).collect();
        Matrix::from_columns(self.dim, &cols).expect("consistent shape")
    }
}

/// `D → D_Ass = D / ⟨a⊣b − a⊢b⟩` with `[a]·b = a⊢b`, `b·[a] = b⊣a`.
pub fn quotient_ravg(d: &DiassData) -> Result<QuotientRavg> {
    let rep = verify_diass(d);
    if !rep.is_valid() {
        return Err(Error::InvalidStructure("input is not a diassociative algebra".into()));
    }
    let n = d.dim;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            gens.push(vsub(d.dashv.get(i, j), d.vdash.get(i, j)));
        }
    }
    let ideal = saturate_ideal(n, gens, &[&d.dashv, &d.vdash]);
    let q = QuotientMap::new(n, &ideal);
    let k = q.quotient_dim();
    let s = q.section();
    let lift: Vec<Vector> = (0..k).map(|c| s.column(c)).collect();
    let mu = BilinearMap::from_fn(k, k, k, |i, j| q.project(&d.dashv.apply(&lift[i], &lift[j])));
    let left = BilinearMap::from_fn(k, n, n, |i, b| d.vdash.apply(&lift[i], &unit(n, b)));
    let right = BilinearMap::from_fn(n, k, n, |b, i| d.dashv.apply(&unit(n, b), &lift[i]));
    let ravg = RAvgAlgebra {
        a: AlgebraData { dim: k, mu },
        m: BimoduleData {
            base_dim: k,
            dim: n,
            left,
            right,
        },
        p: q.matrix(),
    };
    Ok(QuotientRavg {
        ravg,
        ideal: q.rows.clone(),
        section: s,
    })
}

fn dual_module(m: &BimoduleData) -> BimoduleData {
    let (da, dm) = (m.base_dim, m.dim);
    // (a·f)(u) = f(u·a), (f·a)(u) = f(a·u)
    let left = BilinearMap::from_fn(da, dm, dm, |i, k| (0..dm).map(|u| m.right.get(u, i)[k].clone()).collect());
    let right = BilinearMap::from_fn(dm, da, dm, |k, i| (0..dm).map(|u| m.left.get(i, u)[k].clone()).collect());
    BimoduleData {
        base_dim: da,
        dim: dm,
        left,
        right,
    }
}

/// `(B* → N*, l*, r*)` with `l*(u,f)(b) = f(r(b,u))`, `r*(f,u)(b) = f(l(u,b))`.
pub fn dual_bimodule(bm: &RAvgBimodule) -> RAvgBimodule {
    let (db, dn, dm) = (bm.b.dim, bm.n.dim, bm.l.d1);
    let l = BilinearMap::from_fn(dm, dn, db, |u, k| (0..db).map(|b| bm.r.get(b, u)[k].clone()).collect());
    let r = BilinearMap::from_fn(dn, dm, db, |k, u| (0..db).map(|b| bm.l.get(u, b)[k].clone()).collect());
    RAvgBimodule {
        b: dual_module(&bm.n),
        n: dual_module(&bm.b),
        q: bm.q.transpose(),
        l,
        r,
    }
}

/// `M ⊕ N → A ⊕ B` with the semidirect product and operator `P ⊕ Q`.
pub fn semidirect(r: &RAvgAlgebra, bm: &RAvgBimodule) -> Result<RAvgAlgebra> {
    bm.check_shapes(r)?;
    let (da, dm, db, dn) = (r.a.dim, r.m.dim, bm.b.dim, bm.n.dim);
    let (dab, dmn) = (da + db, dm + dn);
    let split = |x: &[Scalar], d: usize| (x[..d].to_vec(), x[d..].to_vec());
    let basis_ab: Vec<(Vector, Vector)> = (0..dab).map(|i| split(&unit(dab, i), da)).collect();
    let basis_mn: Vec<(Vector, Vector)> = (0..dmn).map(|i| split(&unit(dmn, i), dm)).collect();
    let cat = |mut x: Vector, y: Vector| {
        x.extend(y);
        x
    };
    let mu = BilinearMap::from_fn(dab, dab, dab, |i, j| {
        let ((a, b), (a2, b2)) = (&basis_ab[i], &basis_ab[j]);
        let second = crate::linalg::vadd(&bm.b.act_left(a, b2), &bm.b.act_right(b, a2));
        cat(r.a.mul(a, a2), second)
    });
    let left = BilinearMap::from_fn(dab, dmn, dmn, |i, j| {
        let ((a, b), (u, n)) = (&basis_ab[i], &basis_mn[j]);
        let second = crate::linalg::vadd(&bm.n.act_left(a, n), &bm.r.apply(b, u));
        cat(r.m.act_left(a, u), second)
    });
    let right = BilinearMap::from_fn(dmn, dab, dmn, |j, i| {
        let ((a, b), (u, n)) = (&basis_ab[i], &basis_mn[j]);
        let second = crate::linalg::vadd(&bm.l.apply(u, b), &bm.n.act_right(n, a));
        cat(r.m.act_right(u, a), second)
    });
    let mut p = Matrix::zeros(dab, dmn);
    for i in 0..da {
        for j in 0..dm {
            p.set(i, j, r.p.get(i, j).clone());
        }
    }
    for i in 0..db {
        for j in 0..dn {
            p.set(da + i, dm + j, bm.q.get(i, j).clone());
        }
    }
    RAvgAlgebra::new(
        AlgebraData { dim: dab, mu },
        BimoduleData {
            base_dim: dab,
            dim: dmn,
            left,
            right,
        },
        p,
    )
}

/// The representation of `M_P` on `N`.
pub fn induced_rep_on_n(r: &RAvgAlgebra, bm: &RAvgBimodule) -> DiassRepData {
    let (dm, dn) = (r.m.dim, bm.n.dim);
    let pcols: Vec<Vector> = (0..dm).map(|u| r.p.column(u)).collect();
    let qcols: Vec<Vector> = (0..dn).map(|n| bm.q.column(n)).collect();
    DiassRepData {
        base_dim: dm,
        dim: dn,
        left_dashv: BilinearMap::from_fn(dm, dn, dn, |u, n| bm.l.apply(&unit(dm, u), &qcols[n])),
        left_vdash: BilinearMap::from_fn(dm, dn, dn, |u, n| bm.n.act_left(&pcols[u], &unit(dn, n))),
        right_dashv: BilinearMap::from_fn(dn, dm, dn, |n, u| bm.n.act_right(&unit(dn, n), &pcols[u])),
        right_vdash: BilinearMap::from_fn(dn, dm, dn, |n, u| bm.r.apply(&qcols[n], &unit(dm, u))),
    }
}

/// The representation of `M_P` on `B`.
pub fn induced_rep_on_b(r: &RAvgAlgebra, bm: &RAvgBimodule) -> DiassRepData {
    let (dm, db) = (r.m.dim, bm.b.dim);
    let pcols: Vec<Vector> = (0..dm).map(|u| r.p.column(u)).collect();
    DiassRepData {
        base_dim: dm,
        dim: db,
        left_dashv: BilinearMap::from_fn(dm, db, db, |u, b| {
            vsub(&bm.b.act_left(&pcols[u], &unit(db, b)), &bm.q.apply(bm.l.get(u, b)))
        }),
        left_vdash: BilinearMap::from_fn(dm, db, db, |u, b| bm.b.act_left(&pcols[u], &unit(db, b))),
        right_dashv: BilinearMap::from_fn(db, dm, db, |b, u| bm.b.act_right(&unit(db, b), &pcols[u])),
        right_vdash: BilinearMap::from_fn(db, dm, db, |b, u| {
            vsub(&bm.b.act_right(&unit(db, b), &pcols[u]), &bm.q.apply(bm.r.get(b, u)))
        }),
    }
}

/// `T(W)⊗V⊗T(W) → T(W)` truncated to total tensor degree `≤ N`.
#[derive(Clone, Debug)]
pub struct FreeRavg {
    pub degree: usize,
    pub dim_v: usize,
    pub dim_w: usize,
    /// Words in `W`-letters indexing the basis of the algebra part.
    pub a_words: Vec<Vec<usize>>,
    /// `(left word, V-letter, right word)` indexing the module part.
    pub m_words: Vec<(Vec<usize>, usize, Vec<usize>)>,
    pub ravg: RAvgAlgebra,
}

fn words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..alphabet {
                let mut x: Vec<usize> = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn free_ravg(f: &Matrix, degree: usize) -> Result<FreeRavg> {
    if degree < 1 {
        return Err(Error::Precondition("truncation degree must be at least 1".into()));
    }
    let (dim_w, dim_v) = (f.rows, f.cols);
    let a_words = words(dim_w, degree);
    let mut m_words = Vec::new();
    for total in 0..degree {
        for left_len in 0..=total {
            for l in a_words.iter().filter(|w| w.len() == left_len) {
                for v in 0..dim_v {
                    for r in a_words.iter().filter(|w| w.len() == total - left_len) {
                        m_words.push((l.clone(), v, r.clone()));
                    }
                }
            }
        }
    }
    let a_index = |w: &[usize]| a_words.iter().position(|x| x == w);
    let m_index = |l: &[usize], v: usize, r: &[usize]| m_words.iter().position(|(a, b, c)| a == l && *b == v && c == r);
    let (da, dm) = (a_words.len(), m_words.len());
    let concat = |x: &[usize], y: &[usize]| [x, y].concat();
    let mu = BilinearMap::from_fn(da, da, da, |i, j| match a_index(&concat(&a_words[i], &a_words[j])) {
        Some(k) => unit(da, k),
        None => zeros(da),
    });
    let left = BilinearMap::from_fn(da, dm, dm, |i, j| {
        let (l, v, r) = &m_words[j];
        match m_index(&concat(&a_words[i], l), *v, r) {
            Some(k) => unit(dm, k),
            None => zeros(dm),
        }
    });
    let right = BilinearMap::from_fn(dm, da, dm, |j, i| {
        let (l, v, r) = &m_words[j];
        match m_index(l, *v, &concat(r, &a_words[i])) {
            Some(k) => unit(dm, k),
            None => zeros(dm),
        }
    });
    let mut p = Matrix::zeros(da, dm);
    for (j, (l, v, r)) in m_words.iter().enumerate() {
        for w in 0..dim_w {
            let c = f.get(w, *v);
            if c.is_zero() {
                continue;
            }
            let k = a_index(&[l.as_slice(), &[w], r.as_slice()].concat()).expect("degree preserved");
            let cur = p.get(k, j).clone();
            p.set(k, j, cur + c);
        }
    }
    let ravg = RAvgAlgebra::new(
        AlgebraData { dim: da, mu },
        BimoduleData {
            base_dim: da,
            dim: dm,
            left,
            right,
        },
        p,
    )?;
    Ok(FreeRavg {
        degree,
        dim_v,
        dim_w,
        a_words,
        m_words,
        ravg,
    })
}

impl FreeRavg {
    pub fn word_degree_a(&self, i: usize) -> usize {
        self.a_words[i].len()
    }

    pub fn word_degree_m(&self, j: usize) -> usize {
        let (l, _, r) = &self.m_words[j];
        l.len() + 1 + r.len()
    }

    /// `i : W → T(W)` and `j : V → T(W)⊗V⊗T(W)`.
    pub fn inclusions(&self) -> (Matrix, Matrix) {
        let (da, dm) = (self.a_words.len(), self.m_words.len());
        let mut i = Matrix::zeros(da, self.dim_w);
        for w in 0..self.dim_w {
            let k = self.a_words.iter().position(|x| x == &[w]).expect("letter");
            i.set(k, w, Scalar::from_integer(1.into()));
        }
        let mut j = Matrix::zeros(dm, self.dim_v);
        for v in 0..self.dim_v {
            let k = self
                .m_words
                .iter()
                .position(|(l, b, r)| l.is_empty() && *b == v && r.is_empty())
                .expect("letter");
            j.set(k, v, Scalar::from_integer(1.into()));
        }
        (i, j)
    }

    /// The morphism `(φ̃, ψ̃)` extending a chain map `(φ : W → A′, ψ : V → M′)`.
    pub fn extend(&self, phi: &Matrix, psi: &Matrix, target: &RAvgAlgebra) -> Result<(Matrix, Matrix)> {
        let (da2, dm2) = (target.a.dim, target.m.dim);
        if (phi.rows, phi.cols) != (da2, self.dim_w) || (psi.rows, psi.cols) != (dm2, self.dim_v) {
            return Err(Error::DimensionMismatch("chain map shapes".into()));
        }
        let f = self.connecting_map();
        if phi.mul(&f)? != target.p.mul(psi)? {
            return Err(Error::Precondition("(φ, ψ) is not a chain map: φ∘f ≠ P′∘ψ".into()));
        }
        let one = target
            .a
            .unit_element()
            .ok_or_else(|| Error::Precondition("target algebra has no unit".into()))?;
        let eval_word = |w: &[usize]| {
            w.iter()
                .fold(one.clone(), |acc, &c| target.a.mul(&acc, &phi.column(c)))
        };
        let phi_cols: Vec<Vector> = self.a_words.iter().map(|w| eval_word(w)).collect();
        let psi_cols: Vec<Vector> = self
            .m_words
            .iter()
            .map(|(l, v, r)| {
                let x = target.m.act_left(&eval_word(l), &psi.column(*v));
                target.m.act_right(&x, &eval_word(r))
            })
            .collect();
        Ok((Matrix::from_columns(da2, &phi_cols)?, Matrix::from_columns(dm2, &psi_cols)?))
    }

    /// Recovers `f : V → W` from the operator.
    pub fn connecting_map(&self) -> Matrix {
        let (i, j) = self.inclusions();
        let pj = self.ravg.p.mul(&j).expect("shapes");
        // read the length-one rows
        let mut f = Matrix::zeros(self.dim_w, self.dim_v);
        for w in 0..self.dim_w {
            let k = (0..i.rows).find(|&k| !i.get(k, w).is_zero()).expect("letter row");
            for v in 0..self.dim_v {
                f.set(w, v, pj.get(k, v).clone());
            }
        }
        f
    }

    /// Morphism conditions on the products that stay within the truncation,
    /// plus `φ̃∘i = φ` and `ψ̃∘j = ψ`.
    pub fn check_extension(
        &self,
        target: &RAvgAlgebra,
        phi: &Matrix,
        psi: &Matrix,
        phi_t: &Matrix,
        psi_t: &Matrix,
    ) -> Result<Report> {
        let mut rep = Report::new("extension of a chain map from the free object");
        rep.note(format!(
            "products of tensor degree above {} vanish in the truncation and are not compared",
            self.degree
        ));
        let src = &self.ravg;
        let (da, dm) = (src.a.dim, src.m.dim);
        let pa: Vec<Vector> = (0..da).map(|i| phi_t.column(i)).collect();
        let pm: Vec<Vector> = (0..dm).map(|i| psi_t.column(i)).collect();
        for i in 0..da {
            for j in 0..da {
                if self.word_degree_a(i) + self.word_degree_a(j) <= self.degree {
                    rep.check(
                        "φ̃(ab) = φ̃(a)φ̃(b)",
                        || format!("[a={i}, b={j}]"),
                        &phi_t.apply(src.a.mu.get(i, j)),
                        &target.a.mul(&pa[i], &pa[j]),
                    );
                }
            }
            for u in 0..dm {
                if self.word_degree_a(i) + self.word_degree_m(u) <= self.degree {
                    rep.check(
                        "ψ̃(a·u) = φ̃(a)·ψ̃(u)",
                        || format!("[a={i}, u={u}]"),
                        &psi_t.apply(src.m.left.get(i, u)),
                        &target.m.act_left(&pa[i], &pm[u]),
                    );
                    rep.check(
                        "ψ̃(u·a) = ψ̃(u)·φ̃(a)",
                        || format!("[u={u}, a={i}]"),
                        &psi_t.apply(src.m.right.get(u, i)),
                        &target.m.act_right(&pm[u], &pa[i]),
                    );
                }
            }
        }
        for u in 0..dm {
            rep.check(
                "φ̃∘P = P′∘ψ̃",
                || format!("[u={u}]"),
                &phi_t.apply(&src.p.column(u)),
                &target.apply_p(&pm[u]),
            );
        }
        let (i, j) = self.inclusions();
        let lhs = phi_t.mul(&i)?;
        for w in 0..self.dim_w {
            rep.check("φ̃∘i = φ", || format!("[w={w}]"), &lhs.column(w), &phi.column(w));
        }
        let lhs = psi_t.mul(&j)?;
        for v in 0..self.dim_v {
            rep.check("ψ̃∘j = ψ", || format!("[v={v}]"), &lhs.column(v), &psi.column(v));
        }
        Ok(rep)
    }
}

/// `P` built as a bimodule map satisfies the averaging identity; this solves
/// the bimodule-map equations `P(a·u) = a·P(u)`, `P(u·a) = P(u)·a` and
/// returns a basis of solutions.
pub fn bimodule_maps(a: &AlgebraData, m: &BimoduleData) -> Vec<Matrix> {
    let (da, dm) = (a.dim, m.dim);
    let nvar = da * dm;
    let var = |row: usize, col: usize| row * dm + col;
    let mut eqs: Vec<Vector> = Vec::new();
    for i in 0..da {
        for u in 0..dm {
            // P(e_i·e_u)_k − (e_i·P(e_u))_k
            for k in 0..da {
                let mut e1 = zeros(nvar);
                let mut e2 = zeros(nvar);
                for (w, c) in m.left.get(i, u).iter().enumerate() {
                    e1[var(k, w)] += c;
                }
                for (w, c) in m.right.get(u, i).iter().enumerate() {
                    e2[var(k, w)] += c;
                }
                for j in 0..da {
                    e1[var(j, u)] -= &a.mu.get(i, j)[k];
                    e2[var(j, u)] -= &a.mu.get(j, i)[k];
                }
                eqs.push(e1);
                eqs.push(e2);
            }
        }
    }
    let sys = if eqs.is_empty() {
        Matrix::zeros(0, nvar)
    } else {
        Matrix::from_rows(&eqs).expect("rows")
    };
    crate::linalg::kernel_basis(&sys)
        .into_iter()
        .map(|v| {
            let mut p = Matrix::zeros(da, dm);
            for r in 0..da {
                for c in 0..dm {
                    p.set(r, c, v[var(r, c)].clone());
                }
            }
            p
        })
        .collect()
}

/// Convenience: checks a constructed relative averaging algebra.
pub fn is_valid_ravg(r: &RAvgAlgebra) -> bool {
    verify_relative_averaging(r).map(|x| x.is_valid()).unwrap_or(false)
}

/// True when all four action arrays vanish.
pub fn rep_is_zero(r: &DiassRepData) -> bool {
    [&r.left_dashv, &r.left_vdash, &r.right_dashv, &r.right_vdash]
        .iter()
        .all(|m| is_zero_vec(&m.data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_diass_rep, verify_morphism, verify_ravg_bimodule};
    use crate::linalg::int;

    fn kx2() -> AlgebraData {
        AlgebraData::truncated_polynomial(2)
    }

    fn sum_fixture() -> RAvgAlgebra {
        let a = kx2();
        let m = BimoduleData::adjoint_power(&a, 2);
        RAvgAlgebra::new(a, m, Matrix::from_i64(2, 4, &[1, 0, 1, 0, 0, 1, 0, 1])).unwrap()
    }

    #[test]
    fn direct_sum_is_diassociative() {
        let a = kx2();
        let d = diass_direct_sum(&a, &BimoduleData::adjoint(&a));
        assert_eq!(d.dim, 4);
        assert!(verify_diass(&d).is_valid());
        assert_eq!(diass_direct_sum(&AlgebraData::zero(0), &BimoduleData::zero(0, 0)).dim, 0);
    }

    #[test]
    fn graph_and_nijenhuis_on_sum_and_projection() {
        let r = sum_fixture();
        assert!(graph_is_subalgebra(&r) && nijenhuis_check(&r));
        let proj = r.with_operator(Matrix::from_i64(2, 4, &[1, 0, 0, 0, 0, 1, 0, 0]));
        assert!(is_valid_ravg(&proj) && graph_is_subalgebra(&proj) && nijenhuis_check(&proj));
        let bad = r.with_operator(Matrix::from_i64(2, 4, &[1, 0, 0, 0, 0, 0, 1, 0]));
        assert!(!is_valid_ravg(&bad));
        assert!(!graph_is_subalgebra(&bad) && !nijenhuis_check(&bad));
    }

    #[test]
    fn induced_structure_on_sum_fixture() {
        let r = sum_fixture();
        let d = induced_diass(&r);
        assert!(verify_diass(&d).is_valid());
        // (u₁,u₂) ⊣ (v₁,v₂) = (u₁(v₁+v₂), u₂(v₁+v₂)); take u = (x,0), v = (0,1)
        let u = vec![int(0), int(1), int(0), int(0)];
        let v = vec![int(0), int(0), int(1), int(0)];
        assert_eq!(d.mul(Star::Left, &u, &v), vec![int(0), int(1), int(0), int(0)]);
    }

    #[test]
    fn quotient_recovers_diass() {
        let a = kx2();
        let d = diass_direct_sum(&a, &BimoduleData::adjoint(&a));
        let q = quotient_ravg(&d).unwrap();
        assert!(is_valid_ravg(&q.ravg));
        assert_eq!(induced_diass(&q.ravg), d);
        let assoc = DiassData::from_associative(&a);
        let q2 = quotient_ravg(&assoc).unwrap();
        assert!(q2.ideal.is_empty());
        assert_eq!(q2.ravg.p, Matrix::identity(2));
    }

    #[test]
    fn dual_and_semidirect() {
        let r = sum_fixture();
        let adj = RAvgBimodule::adjoint(&r);
        assert!(verify_ravg_bimodule(&r, &adj).unwrap().is_valid());
        let dual = dual_bimodule(&adj);
        assert!(verify_ravg_bimodule(&r, &dual).unwrap().is_valid());
        assert_eq!(dual_bimodule(&dual), adj);
        let s = semidirect(&r, &adj).unwrap();
        assert!(is_valid_ravg(&s));
        let rep_n = induced_rep_on_n(&r, &adj);
        assert!(verify_diass_rep(&induced_diass(&r), &rep_n).unwrap().is_valid());
        let rep_b = induced_rep_on_b(&r, &adj);
        assert!(verify_diass_rep(&induced_diass(&r), &rep_b).unwrap().is_valid());
    }

    #[test]
    fn free_object_dimensions_and_extension() {
        let f = Matrix::identity(1);
        let fr = free_ravg(&f, 2).unwrap();
        assert_eq!(fr.ravg.a.dim, 3);
        // v, wv, vw
        assert_eq!(fr.ravg.m.dim, 3);
        assert!(is_valid_ravg(&fr.ravg));
        let (i, j) = fr.inclusions();
        let (pt, st) = fr.extend(&i, &j, &fr.ravg).unwrap();
        assert_eq!(pt, Matrix::identity(3));
        assert_eq!(st, Matrix::identity(3));
        assert!(fr.check_extension(&fr.ravg, &i, &j, &pt, &st).unwrap().is_valid());
        let zero_v = free_ravg(&Matrix::zeros(2, 0), 2).unwrap();
        assert_eq!((zero_v.ravg.a.dim, zero_v.ravg.m.dim), (7, 0));
    }

    #[test]
    fn bimodule_maps_are_averaging() {
        let a = kx2();
        let m = BimoduleData::adjoint_power(&a, 2);
        let maps = bimodule_maps(&a, &m);
        assert!(!maps.is_empty());
        for p in maps {
            let r = RAvgAlgebra::new(a.clone(), m.clone(), p).unwrap();
            assert!(is_valid_ravg(&r));
        }
    }

    #[test]
    fn identity_morphism() {
        let r = sum_fixture();
        assert!(verify_morphism(&r, &r, &Matrix::identity(2), &Matrix::identity(4)).unwrap().is_valid());
        assert!(verify_morphism(&r, &r, &Matrix::zeros(2, 2), &Matrix::zeros(4, 4)).unwrap().is_valid());
    }
}
