//! Abelian extensions `0 → (N →Q B) → (M̂ →P̂ Â) → (M →P A) → 0`, sections,
//! the induced bimodule, and the classification by `H²_rAvg` with
//! coefficients.

use crate::algebra::{
    verify_morphism, verify_relative_averaging, AlgebraData, BilinearMap, BimoduleData, RAvgAlgebra,
    RAvgBimodule,
};
use crate::cochain::{Cochain, Multilinear};
use crate::cohomology::{MixedCochain, RAvgCochain, RAvgContext};
use crate::error::{Error, Result};
use crate::linalg::{coset_solve, unit, vadd, vsub, zeros, Matrix, Scalar, Vector};
use crate::report::{fmt_vec, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension {
    pub base: RAvgAlgebra,
    pub total: RAvgAlgebra,
    /// `Q : N → B`
    pub q: Matrix,
    /// `i : B → Â`
    pub i: Matrix,
    /// `p : Â → A`
    pub p: Matrix,
    /// `ī : N → M̂`
    pub ibar: Matrix,
    /// `p̄ : M̂ → M`
    pub pbar: Matrix,
}

/// `(s, s̄)` with `p∘s = id_A`, `p̄∘s̄ = id_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub s: Matrix,
    pub sbar: Matrix,
}

impl AbelianExtension {
    pub fn dim_b(&self) -> usize {
        self.i.cols
    }

    pub fn dim_n(&self) -> usize {
        self.ibar.cols
    }

    /// The direct-sum section `a ↦ (a, 0)`, `u ↦ (u, 0)` of an extension
    /// built on `A ⊕ B`, `M ⊕ N`.
    pub fn canonical_section(&self) -> Section {
        let (da, dm) = (self.base.a.dim, self.base.m.dim);
        let mut s = Matrix::zeros(self.total.a.dim, da);
        for k in 0..da {
            s.set(k, k, crate::linalg::int(1));
        }
        let mut sbar = Matrix::zeros(self.total.m.dim, dm);
        for k in 0..dm {
            sbar.set(k, k, crate::linalg::int(1));
        }
        Section { s, sbar }
    }

    /// Another section: `s + i∘κ`, `s̄ + ī∘η`.
    pub fn shifted_section(&self, sec: &Section, kappa: &Matrix, eta: &Matrix) -> Result<Section> {
        Ok(Section {
            s: sec.s.add(&self.i.mul(kappa)?)?,
            sbar: sec.sbar.add(&self.ibar.mul(eta)?)?,
        })
    }

    pub fn check_section(&self, sec: &Section) -> Result<()> {
        let (da, dm) = (self.base.a.dim, self.base.m.dim);
        if (sec.s.rows, sec.s.cols) != (self.total.a.dim, da) || (sec.sbar.rows, sec.sbar.cols) != (self.total.m.dim, dm) {
            return Err(Error::DimensionMismatch("section shapes".into()));
        }
        if self.p.mul(&sec.s)? != Matrix::identity(da) || self.pbar.mul(&sec.sbar)? != Matrix::identity(dm) {
            return Err(Error::Precondition("not a section: p∘s ≠ id or p̄∘s̄ ≠ id".into()));
        }
        Ok(())
    }
}

fn check_rank(rep: &mut Report, name: &str, m: &Matrix, expect: usize) {
    if m.rank() == expect {
        rep.pass();
    } else {
        rep.fail(name, format!("rank {} ≠ {expect}", m.rank()));
    }
}

/// Exactness of both rows, commutativity of the diagram, validity of the
/// total space and the abelian condition on the kernel.
pub fn verify_extension(e: &AbelianExtension) -> Result<Report> {
    let (da, dm) = (e.base.a.dim, e.base.m.dim);
    let (dah, dmh) = (e.total.a.dim, e.total.m.dim);
    let (db, dn) = (e.dim_b(), e.dim_n());
    let shapes = (e.i.rows, e.p.rows, e.p.cols, e.ibar.rows, e.pbar.rows, e.pbar.cols, e.q.rows, e.q.cols)
        == (dah, da, dah, dmh, dm, dmh, db, dn);
    if !shapes {
        return Err(Error::DimensionMismatch("extension maps".into()));
    }
    let mut rep = Report::new("abelian extension");
    let tv = verify_relative_averaging(&e.total)?;
    if tv.is_valid() {
        rep.pass();
    } else {
        for v in tv.violations {
            rep.fail(&format!("total space: {}", v.identity), v.location);
        }
    }
    check_rank(&mut rep, "i injective", &e.i, db);
    check_rank(&mut rep, "ī injective", &e.ibar, dn);
    check_rank(&mut rep, "p surjective", &e.p, da);
    check_rank(&mut rep, "p̄ surjective", &e.pbar, dm);
    for (name, ok) in [
        ("p∘i = 0", e.p.mul(&e.i)?.is_zero()),
        ("p̄∘ī = 0", e.pbar.mul(&e.ibar)?.is_zero()),
        ("ker p = im i", dah == da + db),
        ("ker p̄ = im ī", dmh == dm + dn),
        ("P̂∘ī = i∘Q", e.total.p.mul(&e.ibar)? == e.i.mul(&e.q)?),
    ] {
        if ok {
            rep.pass();
        } else {
            rep.fail(name, "diagram");
        }
    }
    let mr = verify_morphism(&e.total, &e.base, &e.p, &e.pbar)?;
    if mr.is_valid() {
        rep.pass();
    } else {
        for v in mr.violations {
            rep.fail(&format!("(p, p̄) morphism: {}", v.identity), v.location);
        }
    }
    let icols: Vec<Vector> = (0..db).map(|k| e.i.column(k)).collect();
    let ncols: Vec<Vector> = (0..dn).map(|k| e.ibar.column(k)).collect();
    let z = |n: usize| zeros(n);
    for (x, bx) in icols.iter().enumerate() {
        for (y, by) in icols.iter().enumerate() {
            rep.check("i(b)·i(b′) = 0", || format!("[b={x}, b′={y}]"), &e.total.a.mul(bx, by), &z(dah));
        }
        for (y, ny) in ncols.iter().enumerate() {
            rep.check("i(b)·ī(n) = 0", || format!("[b={x}, n={y}]"), &e.total.m.act_left(bx, ny), &z(dmh));
            rep.check("ī(n)·i(b) = 0", || format!("[n={y}, b={x}]"), &e.total.m.act_right(ny, bx), &z(dmh));
        }
    }
    Ok(rep)
}

/// The unique `x` with `m x = v`; errors if `v ∉ im m`.
fn pull(m: &Matrix, v: &[Scalar], what: &str) -> Result<Vector> {
    coset_solve(m, v)?.ok_or_else(|| Error::InvalidStructure(format!("{what}: {} not in the kernel", fmt_vec(v))))
}

/// The bimodule induced on `N →Q B` by a section.
pub fn induced_bimodule(e: &AbelianExtension, sec: &Section) -> Result<RAvgBimodule> {
    e.check_section(sec)?;
    let (da, dm, db, dn) = (e.base.a.dim, e.base.m.dim, e.dim_b(), e.dim_n());
    let s: Vec<Vector> = (0..da).map(|k| sec.s.column(k)).collect();
    let sb: Vec<Vector> = (0..dm).map(|k| sec.sbar.column(k)).collect();
    let ib: Vec<Vector> = (0..db).map(|k| e.i.column(k)).collect();
    let nb: Vec<Vector> = (0..dn).map(|k| e.ibar.column(k)).collect();
    let (ta, tm) = (&e.total.a, &e.total.m);
    let mut err = None;
    let mut grab = |x: Result<Vector>, n: usize| match x {
        Ok(v) => v,
        Err(er) => {
            err.get_or_insert(er);
            zeros(n)
        }
    };
    let bl = BilinearMap::from_fn(da, db, db, |a, b| grab(pull(&e.i, &ta.mul(&s[a], &ib[b]), "a·b"), db));
    let br = BilinearMap::from_fn(db, da, db, |b, a| grab(pull(&e.i, &ta.mul(&ib[b], &s[a]), "b·a"), db));
    let nl = BilinearMap::from_fn(da, dn, dn, |a, n| grab(pull(&e.ibar, &tm.act_left(&s[a], &nb[n]), "a·n"), dn));
    let nr = BilinearMap::from_fn(dn, da, dn, |n, a| grab(pull(&e.ibar, &tm.act_right(&nb[n], &s[a]), "n·a"), dn));
    let l = BilinearMap::from_fn(dm, db, dn, |u, b| grab(pull(&e.ibar, &tm.act_right(&sb[u], &ib[b]), "l(u,b)"), dn));
    let r = BilinearMap::from_fn(db, dm, dn, |b, u| grab(pull(&e.ibar, &tm.act_left(&ib[b], &sb[u]), "r(b,u)"), dn));
    if let Some(er) = err {
        return Err(er);
    }
    Ok(RAvgBimodule {
        b: BimoduleData::new(da, db, bl, br)?,
        n: BimoduleData::new(da, dn, nl, nr)?,
        q: e.q.clone(),
        l,
        r,
    })
}

/// `(α, β, γ)` of an extension with a section, in the complex with
/// coefficients in the induced bimodule. Errors if it is not closed.
pub fn extension_to_cocycle(e: &AbelianExtension, sec: &Section) -> Result<(RAvgCochain, RAvgContext)> {
    let bm = induced_bimodule(e, sec)?;
    let ctx = RAvgContext::with_coefficients(&e.base, &bm)?;
    let (da, dm, db, dn) = ctx.dims();
    let (ta, tm) = (&e.total.a, &e.total.m);
    let s: Vec<Vector> = (0..da).map(|k| sec.s.column(k)).collect();
    let sb: Vec<Vector> = (0..dm).map(|k| sec.sbar.column(k)).collect();
    let mut err = None;
    let mut grab = |x: Result<Vector>, n: usize| match x {
        Ok(v) => v,
        Err(er) => {
            err.get_or_insert(er);
            zeros(n)
        }
    };
    let f = Multilinear::from_fn(&[da, da], db, |ix| {
        let v = vsub(&ta.mul(&s[ix[0]], &s[ix[1]]), &sec.s.apply(e.base.a.mu.get(ix[0], ix[1])));
        grab(pull(&e.i, &v, "α"), db)
    });
    let g = MixedCochain::from_fn(2, da, dm, dn, |j, ix| {
        let v = if j == 0 {
            let (u, a) = (ix[0], ix[1]);
            vsub(&tm.act_right(&sb[u], &s[a]), &sec.sbar.apply(e.base.m.right.get(u, a)))
        } else {
            let (a, u) = (ix[0], ix[1]);
            vsub(&tm.act_left(&s[a], &sb[u]), &sec.sbar.apply(e.base.m.left.get(a, u)))
        };
        grab(pull(&e.ibar, &v, "β"), dn)
    });
    let gamma = Cochain::from_fn(1, dm, db, |_, ix| {
        let v = vsub(&e.total.p.apply(&sb[ix[0]]), &sec.s.apply(&e.base.p.column(ix[0])));
        grab(pull(&e.i, &v, "γ"), db)
    });
    if let Some(er) = err {
        return Err(er);
    }
    let c = RAvgCochain { degree: 2, f, g, gamma: Some(gamma) };
    let d = ctx.coboundary(&c)?;
    if !d.is_zero() {
        return Err(Error::NotACocycle(nonzero_components(&d)));
    }
    Ok((c, ctx))
}

fn nonzero_components(d: &RAvgCochain) -> String {
    let mut parts = vec![];
    if !d.f.is_zero() {
        parts.push("Hochschild component");
    }
    if !d.g.is_zero() {
        parts.push("mixed component");
    }
    if d.gamma.as_ref().is_some_and(|g| !g.is_zero()) {
        parts.push("operator component");
    }
    format!("δ_rAvg has nonzero {}", parts.join(", "))
}

/// `Â = A ⊕ B`, `M̂ = M ⊕ N` with the structures twisted by `(α, β, γ)`.
pub fn cocycle_to_extension(c: &RAvgCochain, base: &RAvgAlgebra, bm: &RAvgBimodule) -> Result<AbelianExtension> {
    let ctx = RAvgContext::with_coefficients(base, bm)?;
    ctx.check(c)?;
    if c.degree != 2 {
        return Err(Error::ArityMismatch("a 2-cochain is required".into()));
    }
    let d = ctx.coboundary(c)?;
    if !d.is_zero() {
        return Err(Error::NotACocycle(nonzero_components(&d)));
    }
    let (da, dm, db, dn) = ctx.dims();
    let (dah, dmh) = (da + db, dm + dn);
    let gamma = c.gamma.as_ref().expect("degree 2");
    let split = |v: &[Scalar], k: usize| (v[..k].to_vec(), v[k..].to_vec());
    let cat = |x: Vector, y: Vector| {
        let mut v = x;
        v.extend(y);
        v
    };
    let mu = BilinearMap::from_fn(dah, dah, dah, |x, y| {
        let (a, b) = split(&unit(dah, x), da);
        let (a2, b2) = split(&unit(dah, y), da);
        let top = base.a.mul(&a, &a2);
        let mut bot = vadd(&bm.b.act_left(&a, &b2), &bm.b.act_right(&b, &a2));
        bot = vadd(&bot, &c.f.eval(&[&a, &a2]));
        cat(top, bot)
    });
    let left = BilinearMap::from_fn(dah, dmh, dmh, |x, y| {
        let (a, b) = split(&unit(dah, x), da);
        let (u, n) = split(&unit(dmh, y), dm);
        let top = base.m.act_left(&a, &u);
        let mut bot = vadd(&bm.n.act_left(&a, &n), &bm.r.apply(&b, &u));
        bot = vadd(&bot, &c.g.parts[1].eval(&[&a, &u]));
        cat(top, bot)
    });
    let right = BilinearMap::from_fn(dmh, dah, dmh, |y, x| {
        let (a, b) = split(&unit(dah, x), da);
        let (u, n) = split(&unit(dmh, y), dm);
        let top = base.m.act_right(&u, &a);
        let mut bot = vadd(&bm.l.apply(&u, &b), &bm.n.act_right(&n, &a));
        bot = vadd(&bot, &c.g.parts[0].eval(&[&u, &a]));
        cat(top, bot)
    });
    let gm = gamma.to_matrix();
    let phat = Matrix::from_columns(
        dah,
        &(0..dmh)
            .map(|y| {
                let (u, n) = split(&unit(dmh, y), dm);
                cat(base.p.apply(&u), vadd(&bm.q.apply(&n), &gm.apply(&u)))
            })
            .collect::<Vec<_>>(),
    )?;
    let total = RAvgAlgebra::new(
        AlgebraData::new(dah, mu)?,
        BimoduleData::new(dah, dmh, left, right)?,
        phat,
    )?;
    let block = |rows: usize, cols: usize, off_r: usize, off_c: usize, k: usize| {
        let mut m = Matrix::zeros(rows, cols);
        for t in 0..k {
            m.set(off_r + t, off_c + t, crate::linalg::int(1));
        }
        m
    };
    Ok(AbelianExtension {
        base: base.clone(),
        total,
        q: bm.q.clone(),
        i: block(dah, db, da, 0, db),
        p: block(da, dah, 0, 0, da),
        ibar: block(dmh, dn, dm, 0, dn),
        pbar: block(dm, dmh, 0, 0, dm),
    })
}

/// Checks that `(φ, ψ) : E ⇝ E′` is an isomorphism of relative averaging
/// algebras restricting to the identity on `N → B` and covering the identity
/// on `M → A`.
pub fn verify_isomorphism(e: &AbelianExtension, ep: &AbelianExtension, phi: &Matrix, psi: &Matrix) -> Result<Report> {
    let mut rep = verify_morphism(&e.total, &ep.total, phi, psi)?;
    rep.subject = "isomorphism of abelian extensions".into();
    for (name, ok) in [
        ("φ invertible", phi.rows == phi.cols && phi.rank() == phi.rows),
        ("ψ invertible", psi.rows == psi.cols && psi.rank() == psi.rows),
        ("φ∘i = i′", phi.mul(&e.i)? == ep.i),
        ("p′∘φ = p", ep.p.mul(phi)? == e.p),
        ("ψ∘ī = ī′", psi.mul(&e.ibar)? == ep.ibar),
        ("p̄′∘ψ = p̄", ep.pbar.mul(psi)? == e.pbar),
    ] {
        if ok {
            rep.pass();
        } else {
            rep.fail(name, "diagram");
        }
    }
    Ok(rep)
}

/// `x = s(p x) + i(b)` ↦ `s′(p x) + i′(b + κ(p x))`, as a matrix.
fn transport(
    total_dim: usize,
    p: &Matrix,
    s: &Matrix,
    i: &Matrix,
    sp: &Matrix,
    ip: &Matrix,
    kappa: &Matrix,
) -> Result<Matrix> {
    let cols = (0..total_dim)
        .map(|x| {
            let ex = unit(total_dim, x);
            let a = p.apply(&ex);
            let b = pull(i, &vsub(&ex, &s.apply(&a)), "transport")?;
            Ok(vadd(&sp.apply(&a), &ip.apply(&vadd(&b, &kappa.apply(&a)))))
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(sp.rows, &cols)
}

/// An isomorphism `E ⇝ E′` over the identities, found by solving
/// `c(E) − c(E′) = δ_rAvg(κ, η)`. `None`: not isomorphic over the identity on
/// `A, M` (different classes, or different induced bimodules).
pub fn find_isomorphism(
    e: &AbelianExtension,
    sec: &Section,
    ep: &AbelianExtension,
    secp: &Section,
) -> Result<Option<(Matrix, Matrix)>> {
    if e.base != ep.base || e.q != ep.q {
        return Err(Error::Precondition("extensions of different data".into()));
    }
    let (c, ctx) = extension_to_cocycle(e, sec)?;
    let (cp, ctxp) = extension_to_cocycle(ep, secp)?;
    if ctx.bm != ctxp.bm {
        return Ok(None);
    }
    let d1 = ctx.complex(1)?.coboundary(1).expect("degree 1 in range");
    let Some(x) = coset_solve(&d1, &vsub(&ctx.flatten(&c), &ctx.flatten(&cp)))? else {
        return Ok(None);
    };
    let one = ctx.unflatten(1, &x)?;
    let (da, dm, db, dn) = ctx.dims();
    let kappa = Matrix::from_columns(db, &(0..da).map(|a| one.f.entry(&[a]).to_vec()).collect::<Vec<_>>())?;
    let eta = Matrix::from_columns(dn, &(0..dm).map(|u| one.g.parts[0].entry(&[u]).to_vec()).collect::<Vec<_>>())?;
    let phi = transport(e.total.a.dim, &e.p, &sec.s, &e.i, &secp.s, &ep.i, &kappa)?;
    let psi = transport(e.total.m.dim, &e.pbar, &sec.sbar, &e.ibar, &secp.sbar, &ep.ibar, &eta)?;
    Ok(Some((phi, psi)))
}
