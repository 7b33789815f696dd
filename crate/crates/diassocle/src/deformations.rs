//! Truncated formal deformations `(μ_t, l_t, r_t, P_t)` over `𝐤[t]/(t^{N+1})`,
//! their equivalences, and the passage between order-1 jets and 2-cocycles of
//! the relative averaging complex.

use num_traits::Zero;

use crate::algebra::{AlgebraData, BilinearMap, BimoduleData, RAvgAlgebra};
use crate::cochain::{Cochain, Multilinear};
use crate::cohomology::{MixedCochain, RAvgCochain, RAvgContext};
use crate::error::{Error, Result};
use crate::linalg::{add_into, coset_solve, sub_into, unit, vsub, zeros, Matrix, Scalar, Vector};
use crate::report::Report;

/// `μ_t = Σ tⁱμᵢ`, `l_t`, `r_t`, `P_t` truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationJet {
    pub order: usize,
    pub base: RAvgAlgebra,
    pub mu: Vec<BilinearMap>,
    /// `lᵢ : A × M → M`
    pub l: Vec<BilinearMap>,
    /// `rᵢ : M × A → M`
    pub r: Vec<BilinearMap>,
    pub p: Vec<Matrix>,
}

/// `φ_t = Σ tⁱφᵢ`, `ψ_t = Σ tⁱψᵢ` with `φ₀ = id`, `ψ₀ = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceJet {
    pub order: usize,
    pub phi: Vec<Matrix>,
    pub psi: Vec<Matrix>,
}

impl EquivalenceJet {
    pub fn identity(order: usize, da: usize, dm: usize) -> EquivalenceJet {
        let mut phi = vec![Matrix::zeros(da, da); order + 1];
        let mut psi = vec![Matrix::zeros(dm, dm); order + 1];
        phi[0] = Matrix::identity(da);
        psi[0] = Matrix::identity(dm);
        EquivalenceJet { order, phi, psi }
    }

    /// `(id + tφ₁, id + tψ₁)`.
    pub fn first_order(phi1: Matrix, psi1: Matrix) -> EquivalenceJet {
        let mut e = EquivalenceJet::identity(1, phi1.rows, psi1.rows);
        e.phi[1] = phi1;
        e.psi[1] = psi1;
        e
    }

    pub fn check_shapes(&self, da: usize, dm: usize) -> Result<()> {
        let ok = self.phi.len() == self.order + 1
            && self.psi.len() == self.order + 1
            && self.phi.iter().all(|m| (m.rows, m.cols) == (da, da))
            && self.psi.iter().all(|m| (m.rows, m.cols) == (dm, dm));
        if !ok {
            return Err(Error::DimensionMismatch("equivalence jet components".into()));
        }
        if self.phi[0] != Matrix::identity(da) || self.psi[0] != Matrix::identity(dm) {
            return Err(Error::InvalidStructure("equivalence jet must be the identity at order 0".into()));
        }
        Ok(())
    }
}

impl DeformationJet {
    /// The jet with all higher terms zero.
    pub fn trivial(base: &RAvgAlgebra, order: usize) -> DeformationJet {
        let (da, dm) = (base.a.dim, base.m.dim);
        let mut j = DeformationJet {
            order,
            base: base.clone(),
            mu: vec![BilinearMap::zero(da, da, da); order + 1],
            l: vec![BilinearMap::zero(da, dm, dm); order + 1],
            r: vec![BilinearMap::zero(dm, da, dm); order + 1],
            p: vec![Matrix::zeros(da, dm); order + 1],
        };
        j.mu[0] = base.a.mu.clone();
        j.l[0] = base.m.left.clone();
        j.r[0] = base.m.right.clone();
        j.p[0] = base.p.clone();
        j
    }

    pub fn check_shapes(&self) -> Result<()> {
        let (da, dm) = (self.base.a.dim, self.base.m.dim);
        let n = self.order + 1;
        let ok = self.mu.len() == n
            && self.l.len() == n
            && self.r.len() == n
            && self.p.len() == n
            && self.mu.iter().all(|b| (b.d1, b.d2, b.out) == (da, da, da))
            && self.l.iter().all(|b| (b.d1, b.d2, b.out) == (da, dm, dm))
            && self.r.iter().all(|b| (b.d1, b.d2, b.out) == (dm, da, dm))
            && self.p.iter().all(|m| (m.rows, m.cols) == (da, dm));
        if !ok {
            return Err(Error::DimensionMismatch("deformation jet components".into()));
        }
        let b = &self.base;
        if self.mu[0] != b.a.mu || self.l[0] != b.m.left || self.r[0] != b.m.right || self.p[0] != b.p {
            return Err(Error::InvalidStructure("order-0 terms must be the base structure".into()));
        }
        Ok(())
    }

    /// The order-`k` terms packaged as a structure (shape check only).
    fn component(&self, k: usize) -> Result<RAvgAlgebra> {
        let a = AlgebraData::new(self.base.a.dim, self.mu[k].clone())?;
        let m = BimoduleData::new(a.dim, self.base.m.dim, self.l[k].clone(), self.r[k].clone())?;
        RAvgAlgebra::new(a, m, self.p[k].clone())
    }

    /// The `(μ₁, β₁, P₁)` triple as a degree-2 cochain.
    pub fn first_order_cochain(&self) -> Result<RAvgCochain> {
        if self.order < 1 {
            return Err(Error::Precondition("jet of order ≥ 1 required".into()));
        }
        let (da, dm) = (self.base.a.dim, self.base.m.dim);
        let f = Multilinear::from_bilinear(&self.mu[1]);
        // β₁(u, a) = r₁(u, a) with M in slot 0; β₁(a, u) = l₁(a, u) with M in slot 1
        let g = MixedCochain {
            arity: 2,
            da,
            dm,
            tgt: dm,
            parts: vec![Multilinear::from_bilinear(&self.r[1]), Multilinear::from_bilinear(&self.l[1])],
        };
        Ok(RAvgCochain {
            degree: 2,
            f,
            g,
            gamma: Some(Cochain::from_matrix(&self.p[1])),
        })
    }
}

fn e(n: usize, i: usize) -> Vector {
    unit(n, i)
}

/// Checks the deformation equations for every order `0 ≤ n ≤ N` on all basis
/// tuples.
pub fn verify_deformation(j: &DeformationJet) -> Result<Report> {
    j.check_shapes()?;
    let (da, dm) = (j.base.a.dim, j.base.m.dim);
    let mut rep = Report::new(format!("deformation jet of order {}", j.order));
    let _ = j.component(0)?;
    for n in 0..=j.order {
        let pairs: Vec<(usize, usize)> = (0..=n).map(|i| (i, n - i)).collect();
        let triples: Vec<(usize, usize, usize)> =
            (0..=n).flat_map(|i| (0..=n - i).map(move |k| (i, n - i - k, k))).collect();
        for a in 0..da {
            for b in 0..da {
                for c in 0..da {
                    let (mut lhs, mut rhs) = (zeros(da), zeros(da));
                    for &(i, k) in &pairs {
                        add_into(&mut lhs, &j.mu[i].apply(j.mu[k].get(a, b), &e(da, c)));
                        add_into(&mut rhs, &j.mu[i].apply(&e(da, a), j.mu[k].get(b, c)));
                    }
                    rep.check("associativity", || format!("(n={n}, a={a}, b={b}, c={c})"), &lhs, &rhs);
                }
                for u in 0..dm {
                    let (mut lhs, mut rhs) = (zeros(dm), zeros(dm));
                    for &(i, k) in &pairs {
                        add_into(&mut lhs, &j.l[i].apply(j.mu[k].get(a, b), &e(dm, u)));
                        add_into(&mut rhs, &j.l[i].apply(&e(da, a), j.l[k].get(b, u)));
                    }
                    rep.check("left module", || format!("(n={n}, a={a}, b={b}, u={u})"), &lhs, &rhs);
                }
            }
            for u in 0..dm {
                for b in 0..da {
                    let (mut lhs, mut rhs) = (zeros(dm), zeros(dm));
                    let (mut lhs2, mut rhs2) = (zeros(dm), zeros(dm));
                    for &(i, k) in &pairs {
                        add_into(&mut lhs, &j.r[i].apply(j.l[k].get(a, u), &e(da, b)));
                        add_into(&mut rhs, &j.l[i].apply(&e(da, a), j.r[k].get(u, b)));
                        add_into(&mut lhs2, &j.r[i].apply(j.r[k].get(u, a), &e(da, b)));
                        add_into(&mut rhs2, &j.r[i].apply(&e(dm, u), j.mu[k].get(a, b)));
                    }
                    rep.check("bimodule compatibility", || format!("(n={n}, a={a}, u={u}, b={b})"), &lhs, &rhs);
                    rep.check("right module", || format!("(n={n}, u={u}, a={a}, b={b})"), &lhs2, &rhs2);
                }
            }
        }
        for u in 0..dm {
            for v in 0..dm {
                let (mut lhs, mut mid, mut rhs) = (zeros(da), zeros(da), zeros(da));
                for &(i, jj, k) in &triples {
                    let pu = j.p[jj].column(u);
                    lhs = add(&lhs, &j.mu[i].apply(&pu, &j.p[k].column(v)));
                    let pku = j.p[k].column(u);
                    mid = add(&mid, &j.p[i].apply(&j.l[jj].apply(&pku, &e(dm, v))));
                    rhs = add(&rhs, &j.p[i].apply(&j.r[jj].apply(&e(dm, u), &j.p[k].column(v))));
                }
                rep.check("averaging (left)", || format!("(n={n}, u={u}, v={v})"), &lhs, &mid);
                rep.check("averaging (right)", || format!("(n={n}, u={u}, v={v})"), &lhs, &rhs);
            }
        }
    }
    Ok(rep)
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut v = a.to_vec();
    add_into(&mut v, b);
    v
}

/// Checks that `(φ_t, ψ_t)` is a morphism `J ⇝ J′` order by order.
pub fn equivalence_check(j: &DeformationJet, jp: &DeformationJet, eq: &EquivalenceJet) -> Result<Report> {
    j.check_shapes()?;
    jp.check_shapes()?;
    if j.order != jp.order || eq.order != j.order || j.base != jp.base {
        return Err(Error::Precondition("jets and equivalence must share base and order".into()));
    }
    let (da, dm) = (j.base.a.dim, j.base.m.dim);
    eq.check_shapes(da, dm)?;
    let mut rep = Report::new(format!("equivalence of order {}", j.order));
    let phi_cols: Vec<Vec<Vector>> = eq.phi.iter().map(|m| (0..da).map(|i| m.column(i)).collect()).collect();
    let psi_cols: Vec<Vec<Vector>> = eq.psi.iter().map(|m| (0..dm).map(|i| m.column(i)).collect()).collect();
    for n in 0..=j.order {
        let pairs: Vec<(usize, usize)> = (0..=n).map(|i| (i, n - i)).collect();
        let triples: Vec<(usize, usize, usize)> =
            (0..=n).flat_map(|i| (0..=n - i).map(move |k| (i, n - i - k, k))).collect();
        for a in 0..da {
            for b in 0..da {
                let (mut lhs, mut rhs) = (zeros(da), zeros(da));
                for &(i, k) in &pairs {
                    add_into(&mut lhs, &eq.phi[i].apply(j.mu[k].get(a, b)));
                }
                for &(i, jj, k) in &triples {
                    add_into(&mut rhs, &jp.mu[i].apply(&phi_cols[jj][a], &phi_cols[k][b]));
                }
                rep.check("φ multiplicative", || format!("(n={n}, a={a}, b={b})"), &lhs, &rhs);
            }
            for u in 0..dm {
                let (mut lhs, mut rhs) = (zeros(dm), zeros(dm));
                let (mut lhs2, mut rhs2) = (zeros(dm), zeros(dm));
                for &(i, k) in &pairs {
                    add_into(&mut lhs, &eq.psi[i].apply(j.l[k].get(a, u)));
                    add_into(&mut lhs2, &eq.psi[i].apply(j.r[k].get(u, a)));
                }
                for &(i, jj, k) in &triples {
                    add_into(&mut rhs, &jp.l[i].apply(&phi_cols[jj][a], &psi_cols[k][u]));
                    add_into(&mut rhs2, &jp.r[i].apply(&psi_cols[jj][u], &phi_cols[k][a]));
                }
                rep.check("ψ left-equivariant", || format!("(n={n}, a={a}, u={u})"), &lhs, &rhs);
                rep.check("ψ right-equivariant", || format!("(n={n}, u={u}, a={a})"), &lhs2, &rhs2);
            }
        }
        for u in 0..dm {
            let (mut lhs, mut rhs) = (zeros(da), zeros(da));
            for &(i, k) in &pairs {
                add_into(&mut lhs, &eq.phi[i].apply(&j.p[k].column(u)));
                add_into(&mut rhs, &jp.p[i].apply(&psi_cols[k][u]));
            }
            rep.check("φ∘P = P′∘ψ", || format!("(n={n}, u={u})"), &lhs, &rhs);
        }
    }
    Ok(rep)
}

/// `(μ₁, β₁, P₁)` of a verified jet; errors unless it is a deformation to
/// first order. The returned cochain is a cocycle.
pub fn deformation_to_cocycle(j: &DeformationJet) -> Result<RAvgCochain> {
    let mut first = j.clone();
    first.order = 1.min(j.order);
    first.mu.truncate(2);
    first.l.truncate(2);
    first.r.truncate(2);
    first.p.truncate(2);
    let rep = verify_deformation(&first)?;
    if !rep.is_valid() {
        return Err(Error::Precondition(format!("not a deformation: {}", rep.to_text().trim_end())));
    }
    let c = j.first_order_cochain()?;
    let ctx = RAvgContext::adjoint(&j.base)?;
    if !ctx.coboundary(&c)?.is_zero() {
        return Err(Error::NotACocycle("(μ₁, β₁, P₁) is not closed".into()));
    }
    Ok(c)
}

/// The infinitesimal deformation `(μ + tμ₁, l + tl₁, r + tr₁, P + tP₁)`.
pub fn cocycle_to_deformation(c: &RAvgCochain, base: &RAvgAlgebra) -> Result<DeformationJet> {
    let ctx = RAvgContext::adjoint(base)?;
    ctx.check(c)?;
    if c.degree != 2 {
        return Err(Error::ArityMismatch("a 2-cochain is required".into()));
    }
    if !ctx.coboundary(c)?.is_zero() {
        return Err(Error::NotACocycle("δ_rAvg(c) ≠ 0".into()));
    }
    let mut j = DeformationJet::trivial(base, 1);
    j.mu[1] = c.f.to_bilinear();
    j.r[1] = c.g.parts[0].to_bilinear();
    j.l[1] = c.g.parts[1].to_bilinear();
    j.p[1] = c.gamma.as_ref().expect("degree 2").to_matrix();
    Ok(j)
}

/// The degree-1 cochain `(φ₁, ψ₁)`.
pub fn equivalence_cochain(phi1: &Matrix, psi1: &Matrix) -> RAvgCochain {
    let (da, dm) = (phi1.rows, psi1.rows);
    RAvgCochain {
        degree: 1,
        f: Multilinear::from_fn(&[da], da, |ix| phi1.column(ix[0])),
        g: MixedCochain::from_fn(1, da, dm, dm, |_, ix| psi1.column(ix[0])),
        gamma: None,
    }
}

/// Searches an order-1 equivalence `J ⇝ J′` by solving
/// `c(J) − c(J′) = δ_rAvg(φ₁, ψ₁)`. `None` means the cocycles are not
/// cohomologous (an obstruction at order 1).
pub fn find_equivalence(j: &DeformationJet, jp: &DeformationJet) -> Result<Option<EquivalenceJet>> {
    if j.base != jp.base {
        return Err(Error::Precondition("jets over different bases".into()));
    }
    let ctx = RAvgContext::adjoint(&j.base)?;
    let c = ctx.flatten(&deformation_to_cocycle(j)?);
    let cp = ctx.flatten(&deformation_to_cocycle(jp)?);
    let (da, dm) = (j.base.a.dim, j.base.m.dim);
    let d1 = ctx.complex(1)?.coboundary(1).expect("degree 1 in range");
    let Some(x) = coset_solve(&d1, &vsub(&c, &cp))? else {
        return Ok(None);
    };
    let one = ctx.unflatten(1, &x)?;
    let phi1 = Matrix::from_columns(da, &(0..da).map(|i| one.f.entry(&[i]).to_vec()).collect::<Vec<_>>())?;
    let psi1 = Matrix::from_columns(dm, &(0..dm).map(|i| one.g.parts[0].entry(&[i]).to_vec()).collect::<Vec<_>>())?;
    Ok(Some(EquivalenceJet::first_order(phi1, psi1)))
}

/// The jet obtained from `J` by subtracting `δ_rAvg(φ₁, ψ₁)` from its
/// first-order cocycle; `(id + tφ₁, id + tψ₁)` is an equivalence `J ⇝ J′`.
pub fn gauge_first_order(j: &DeformationJet, phi1: &Matrix, psi1: &Matrix) -> Result<DeformationJet> {
    let ctx = RAvgContext::adjoint(&j.base)?;
    let c = deformation_to_cocycle(j)?;
    let d = ctx.coboundary(&equivalence_cochain(phi1, psi1))?;
    let mut v = ctx.flatten(&c);
    sub_into(&mut v, &ctx.flatten(&d));
    cocycle_to_deformation(&ctx.unflatten(2, &v)?, &j.base)
}

/// Whether the jet is equivalent to the trivial one at order 1.
pub fn is_trivial(j: &DeformationJet) -> Result<bool> {
    let t = DeformationJet::trivial(&j.base, 1);
    let mut first = j.clone();
    first.order = 1;
    first.mu.truncate(2);
    first.l.truncate(2);
    first.r.truncate(2);
    first.p.truncate(2);
    Ok(find_equivalence(&first, &t)?.is_some())
}

/// Nonzero entries of a cocycle, for quick inspection.
pub fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}
