//! `L∞`-algebras from V-data, twisting by Maurer–Cartan elements, and the
//! controlling `L∞`-algebras of relative averaging operators and algebras.

use std::fmt::Debug;

use num_traits::One;

use super::graded::{bracket_unchecked, koszul_sign, odd, sign_of, unshuffles, GradedCochain, GradedSpace};
use super::ops::{diass_inf_semidirect, AInfRep, HomotopyOperator};
use crate::algebra::{AlgebraData, BimoduleData, RAvgAlgebra};
use crate::cochain::{assemble_delta, embed_ma, mm_bracket, restrict_ma, Cochain};
use crate::cohomology::{MixedCochain, RAvgCochain};
use crate::error::{Error, Result};
use crate::linalg::{zeros, Scalar};
use crate::report::Report;

fn inv_factorial(n: usize) -> Scalar {
    let f: i64 = (1..=n as i64).product();
    Scalar::new(1.into(), f.into())
}

/// A graded Lie algebra whose elements are homogeneous.
pub trait GradedLie {
    type Elem: Clone + PartialEq + Debug;
    fn degree(&self, x: &Self::Elem) -> i64;
    fn zero(&self, degree: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
}

/// `(CY^{•+1}(D, D), [·,·]_MM)` for an ungraded `D`; an arity-`n` cochain has
/// degree `n − 1`.
#[derive(Clone, Debug)]
pub struct UngradedMM {
    pub dim: usize,
}

impl GradedLie for UngradedMM {
    type Elem = Cochain;

    fn degree(&self, x: &Cochain) -> i64 {
        x.arity as i64 - 1
    }

    fn zero(&self, degree: i64) -> Cochain {
        Cochain::zero((degree + 1).max(0) as usize, self.dim, self.dim)
    }

    fn add(&self, x: &Cochain, y: &Cochain) -> Cochain {
        x.add(y)
    }

    fn scale(&self, x: &Cochain, c: &Scalar) -> Cochain {
        x.scale(c)
    }

    fn is_zero(&self, x: &Cochain) -> bool {
        x.is_zero()
    }

    fn bracket(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        if x.is_zero() || y.is_zero() {
            return Ok(self.zero(self.degree(x) + self.degree(y)));
        }
        mm_bracket(x, y)
    }
}

/// `(CY^•(D, D), {[·,·]})` for a graded `D`, truncated in arity.
#[derive(Clone, Debug)]
pub struct GradedCY {
    pub space: GradedSpace,
    pub max_arity: usize,
}

impl GradedLie for GradedCY {
    type Elem = GradedCochain;

    fn degree(&self, x: &GradedCochain) -> i64 {
        x.degree
    }

    fn zero(&self, degree: i64) -> GradedCochain {
        GradedCochain::zero(self.space.dim(), self.max_arity, degree)
    }

    fn add(&self, x: &GradedCochain, y: &GradedCochain) -> GradedCochain {
        x.add(y)
    }

    fn scale(&self, x: &GradedCochain, c: &Scalar) -> GradedCochain {
        x.scale(c)
    }

    fn is_zero(&self, x: &GradedCochain) -> bool {
        x.is_zero()
    }

    fn bracket(&self, x: &GradedCochain, y: &GradedCochain) -> Result<GradedCochain> {
        bracket_unchecked(x, y, &self.space, self.max_arity)
    }
}

/// `(𝔤, 𝔞, p, Δ)`: `p` projects onto the abelian subalgebra `𝔞`, `ker p` is
/// a subalgebra, `Δ ∈ ker(p)_1` with `[Δ, Δ] = 0`.
pub struct VData<G: GradedLie> {
    pub lie: G,
    pub delta: G::Elem,
    pub proj: Box<dyn Fn(&G::Elem) -> G::Elem>,
}

impl<G: GradedLie> VData<G> {
    /// `[⋯[[x, a_1], a_2], …, a_k]`.
    pub fn nested(&self, x: &G::Elem, args: &[&G::Elem]) -> Result<G::Elem> {
        let mut acc = x.clone();
        for a in args {
            acc = self.lie.bracket(&acc, a)?;
        }
        Ok(acc)
    }

    /// `[Δ, Δ] = 0` and `p Δ = 0` on this instance.
    pub fn check(&self) -> Result<Report> {
        let mut rep = Report::new("V-data");
        let dd = self.lie.bracket(&self.delta, &self.delta)?;
        if self.lie.is_zero(&dd) {
            rep.pass();
        } else {
            rep.fail("[Δ, Δ] = 0", "Δ");
        }
        if self.lie.is_zero(&(self.proj)(&self.delta)) {
            rep.pass();
        } else {
            rep.fail("Δ ∈ ker p", "Δ");
        }
        if self.lie.degree(&self.delta) != 1 {
            rep.fail("Δ has degree 1", format!("degree {}", self.lie.degree(&self.delta)));
        }
        Ok(rep)
    }
}

/// An `L∞`-algebra in the shifted convention: every `l_k` has degree 1 and is
/// graded symmetric.
pub trait LInfinity {
    type Elem: Clone + PartialEq + Debug;
    fn degree(&self, x: &Self::Elem) -> i64;
    fn zero(&self, degree: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `l_k(x_1, …, x_k)` with `k = xs.len() ≥ 1`.
    fn l(&self, xs: &[&Self::Elem]) -> Result<Self::Elem>;
}

/// `l_k(a_1, …, a_k) = p[⋯[[Δ, a_1], a_2], …, a_k]` on `𝔞`.
pub struct DerivedLinf<G: GradedLie>(pub VData<G>);

impl<G: GradedLie> LInfinity for DerivedLinf<G> {
    type Elem = G::Elem;

    fn degree(&self, x: &G::Elem) -> i64 {
        self.0.lie.degree(x)
    }

    fn zero(&self, degree: i64) -> G::Elem {
        self.0.lie.zero(degree)
    }

    fn add(&self, x: &G::Elem, y: &G::Elem) -> G::Elem {
        self.0.lie.add(x, y)
    }

    fn scale(&self, x: &G::Elem, c: &Scalar) -> G::Elem {
        self.0.lie.scale(x, c)
    }

    fn is_zero(&self, x: &G::Elem) -> bool {
        self.0.lie.is_zero(x)
    }

    fn l(&self, xs: &[&G::Elem]) -> Result<G::Elem> {
        let v = &self.0;
        Ok((v.proj)(&v.nested(&v.delta, xs)?))
    }
}

/// `(s⁻¹x, a) ∈ s⁻¹𝔥 ⊕ 𝔞` of degree `degree`: `|x| = degree + 1`,
/// `|a| = degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedPair<E> {
    pub degree: i64,
    pub h: E,
    pub a: E,
}

/// The `L∞`-algebra on `s⁻¹𝔥 ⊕ 𝔞` for a subalgebra `𝔥` with `[Δ, 𝔥] ⊂ 𝔥`.
pub struct ShiftedLinf<G: GradedLie>(pub VData<G>);

impl<G: GradedLie> ShiftedLinf<G> {
    pub fn pair(&self, h: G::Elem, a: G::Elem) -> Result<ShiftedPair<G::Elem>> {
        let lie = &self.0.lie;
        let degree = lie.degree(&a);
        if lie.degree(&h) != degree + 1 && !(lie.is_zero(&h)) {
            return Err(Error::InvalidStructure(format!(
                "s⁻¹x and a of different degrees ({} − 1 vs {degree})",
                lie.degree(&h)
            )));
        }
        let h = if lie.is_zero(&h) { lie.zero(degree + 1) } else { h };
        Ok(ShiftedPair { degree, h, a })
    }

    pub fn from_h(&self, h: G::Elem) -> ShiftedPair<G::Elem> {
        let degree = self.0.lie.degree(&h) - 1;
        ShiftedPair { degree, h, a: self.0.lie.zero(degree) }
    }

    pub fn from_a(&self, a: G::Elem) -> ShiftedPair<G::Elem> {
        let degree = self.0.lie.degree(&a);
        ShiftedPair { degree, h: self.0.lie.zero(degree + 1), a }
    }
}

impl<G: GradedLie> LInfinity for ShiftedLinf<G> {
    type Elem = ShiftedPair<G::Elem>;

    fn degree(&self, x: &Self::Elem) -> i64 {
        x.degree
    }

    fn zero(&self, degree: i64) -> Self::Elem {
        let lie = &self.0.lie;
        ShiftedPair { degree, h: lie.zero(degree + 1), a: lie.zero(degree) }
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let lie = &self.0.lie;
        ShiftedPair { degree: x.degree, h: lie.add(&x.h, &y.h), a: lie.add(&x.a, &y.a) }
    }

    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem {
        let lie = &self.0.lie;
        ShiftedPair { degree: x.degree, h: lie.scale(&x.h, c), a: lie.scale(&x.a, c) }
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.0.lie.is_zero(&x.h) && self.0.lie.is_zero(&x.a)
    }

    fn l(&self, xs: &[&Self::Elem]) -> Result<Self::Elem> {
        let v = &self.0;
        let lie = &v.lie;
        let k = xs.len();
        let out_deg: i64 = xs.iter().map(|x| x.degree).sum::<i64>() + 1;
        if k == 1 {
            let x = xs[0];
            let h = lie.scale(&lie.bracket(&v.delta, &x.h)?, &-Scalar::one());
            let a = (v.proj)(&lie.add(&x.h, &lie.bracket(&v.delta, &x.a)?));
            return Ok(ShiftedPair { degree: out_deg, h, a });
        }
        let mut out = self.zero(out_deg);
        // no shifted entry
        let all_a: Vec<&G::Elem> = xs.iter().map(|x| &x.a).collect();
        if all_a.iter().all(|a| !lie.is_zero(a)) {
            out.a = lie.add(&out.a, &(v.proj)(&v.nested(&v.delta, &all_a)?));
        }
        // one shifted entry, moved to the front
        for j in 0..k {
            if lie.is_zero(&xs[j].h) {
                continue;
            }
            let rest: Vec<&G::Elem> = (0..k).filter(|&i| i != j).map(|i| &xs[i].a).collect();
            if rest.iter().any(|a| lie.is_zero(a)) {
                continue;
            }
            let before: i64 = xs[..j].iter().map(|x| x.degree).sum();
            let eps = sign_of(odd(xs[j].degree) && odd(before));
            let val = (v.proj)(&v.nested(&xs[j].h, &rest)?);
            out.a = lie.add(&out.a, &lie.scale(&val, &eps));
        }
        // two shifted entries
        if k == 2 && !lie.is_zero(&xs[0].h) && !lie.is_zero(&xs[1].h) {
            let s = sign_of(odd(lie.degree(&xs[0].h)));
            out.h = lie.add(&out.h, &lie.scale(&lie.bracket(&xs[0].h, &xs[1].h)?, &s));
        }
        Ok(out)
    }
}

/// `l_k^α(x…) = Σ_n (1/n!) l_{n+k}(α, …, α, x…)`, summed while
/// `n + k ≤ max_total`.
pub struct Twisted<L: LInfinity> {
    pub inner: L,
    pub alpha: L::Elem,
    pub max_total: usize,
}

impl<L: LInfinity> LInfinity for Twisted<L> {
    type Elem = L::Elem;

    fn degree(&self, x: &L::Elem) -> i64 {
        self.inner.degree(x)
    }

    fn zero(&self, degree: i64) -> L::Elem {
        self.inner.zero(degree)
    }

    fn add(&self, x: &L::Elem, y: &L::Elem) -> L::Elem {
        self.inner.add(x, y)
    }

    fn scale(&self, x: &L::Elem, c: &Scalar) -> L::Elem {
        self.inner.scale(x, c)
    }

    fn is_zero(&self, x: &L::Elem) -> bool {
        self.inner.is_zero(x)
    }

    fn l(&self, xs: &[&L::Elem]) -> Result<L::Elem> {
        let k = xs.len();
        let deg = xs.iter().map(|x| self.inner.degree(x)).sum::<i64>() + 1;
        let mut acc = self.inner.zero(deg);
        for n in 0..=self.max_total.saturating_sub(k) {
            let mut args: Vec<&L::Elem> = vec![&self.alpha; n];
            args.extend_from_slice(xs);
            let t = self.inner.l(&args)?;
            acc = self.inner.add(&acc, &self.inner.scale(&t, &inv_factorial(n)));
        }
        Ok(acc)
    }
}

/// Twists `l` by `α` after checking the Maurer–Cartan equation up to
/// `max_total`.
pub fn twist_linf<L: LInfinity>(l: L, alpha: L::Elem, max_total: usize) -> Result<Twisted<L>> {
    let mc = mc_sum(&l, &alpha, max_total)?;
    if !l.is_zero(&mc) {
        return Err(Error::Precondition("not a Maurer–Cartan element".into()));
    }
    Ok(Twisted { inner: l, alpha, max_total })
}

/// `Σ_{k=1}^{max_k} (1/k!) l_k(α, …, α)`.
pub fn mc_sum<L: LInfinity>(l: &L, alpha: &L::Elem, max_k: usize) -> Result<L::Elem> {
    let mut acc = l.zero(l.degree(alpha) + 1);
    for k in 1..=max_k {
        let args = vec![alpha; k];
        acc = l.add(&acc, &l.scale(&l.l(&args)?, &inv_factorial(k)));
    }
    Ok(acc)
}

/// `Σ_{i+j=n+1} Σ_{σ ∈ Sh(i,n−i)} ε(σ) l_j(l_i(x_σ(1..i)), x_σ(i+1..n))` for
/// `n = xs.len()`; zero iff the higher Jacobi identity holds on `xs`.
pub fn linf_jacobi<L: LInfinity>(l: &L, xs: &[L::Elem]) -> Result<L::Elem> {
    let n = xs.len();
    let degs: Vec<i64> = xs.iter().map(|x| l.degree(x)).collect();
    let mut acc = l.zero(degs.iter().sum::<i64>() + 2);
    for i in 1..=n {
        for s in unshuffles(i, n) {
            let inner_args: Vec<&L::Elem> = s[..i].iter().map(|&p| &xs[p]).collect();
            let inner = l.l(&inner_args)?;
            if l.is_zero(&inner) {
                continue;
            }
            let mut outer: Vec<&L::Elem> = vec![&inner];
            outer.extend(s[i..].iter().map(|&p| &xs[p]));
            let v = l.l(&outer)?;
            let e = Scalar::from_integer(koszul_sign(&degs, &s).into());
            acc = l.add(&acc, &l.scale(&v, &e));
        }
    }
    Ok(acc)
}

/// The `M`-input, `A`-output part of a cochain on `A ⊕ M`.
pub fn project_ma(f: &Cochain, da: usize, dm: usize) -> Cochain {
    if f.arity == 0 {
        return f.clone();
    }
    embed_ma(&restrict_ma(f, da, dm), da, dm)
}

/// `𝔤 = CY^{•+1}(A⊕M)`, `𝔞 = CY^{−1|•}`, and `Δ` encoding `(μ, l_M, r_M)`.
pub fn operator_vdata(a: &AlgebraData, m: &BimoduleData) -> VData<UngradedMM> {
    let (da, dm) = (a.dim, m.dim);
    VData {
        lie: UngradedMM { dim: da + dm },
        delta: assemble_delta(a, m),
        proj: Box::new(move |f| project_ma(f, da, dm)),
    }
}

/// The `L∞` (in fact graded Lie) structure on `CY^•(M, A)` whose
/// Maurer–Cartan elements are relative averaging operators.
pub fn operator_linf(a: &AlgebraData, m: &BimoduleData) -> DerivedLinf<UngradedMM> {
    DerivedLinf(operator_vdata(a, m))
}

/// The `L∞`-algebra on `s⁻¹CY^{•|0} ⊕ CY^{−1|•}` (with `Δ̄ = 0`) whose
/// Maurer–Cartan elements are relative averaging algebras.
pub fn ravg_linf(da: usize, dm: usize) -> ShiftedLinf<UngradedMM> {
    let lie = UngradedMM { dim: da + dm };
    let delta = lie.zero(1);
    ShiftedLinf(VData {
        lie,
        delta,
        proj: Box::new(move |f| project_ma(f, da, dm)),
    })
}

/// `α = (s⁻¹Δ, P)`.
pub fn ravg_mc_element(r: &RAvgAlgebra) -> ShiftedPair<Cochain> {
    let (da, dm) = (r.a.dim, r.m.dim);
    ShiftedPair {
        degree: 0,
        h: assemble_delta(&r.a, &r.m),
        a: embed_ma(&Cochain::from_matrix(&r.p), da, dm),
    }
}

/// `Σ (1/k!) l_k(α, …, α)` for `α = (s⁻¹Δ, P)`; terms with `k ≥ 4` vanish by
/// bidegree, so the sum is taken through `k = 4`.
pub fn mc_residual(r: &RAvgAlgebra) -> Result<ShiftedPair<Cochain>> {
    mc_sum(&ravg_linf(r.a.dim, r.m.dim), &ravg_mc_element(r), 4)
}

/// Whether `(μ, l_M, r_M, P)` is a Maurer–Cartan element (no axioms assumed).
pub fn mc_check_ravg(r: &RAvgAlgebra) -> Result<bool> {
    let res = mc_residual(r)?;
    Ok(res.h.is_zero() && res.a.is_zero())
}

/// `[[[Δ, P], P], P] = 0`: its bidegree `−2|3` is empty.
pub fn bidegree_vanishing(r: &RAvgAlgebra) -> Result<bool> {
    let v = operator_vdata(&r.a, &r.m);
    let p = embed_ma(&Cochain::from_matrix(&r.p), r.a.dim, r.m.dim);
    Ok(v.nested(&v.delta, &[&p, &p, &p])?.is_zero())
}

/// The controlling algebra: the twist of [`ravg_linf`] by `(s⁻¹Δ, P)`.
pub fn controlling_linf(r: &RAvgAlgebra, max_total: usize) -> Result<Twisted<ShiftedLinf<UngradedMM>>> {
    twist_linf(ravg_linf(r.a.dim, r.m.dim), ravg_mc_element(r), max_total.max(4))
}

/// `(f, g, γ) ↦ (s⁻¹(f̃ + g̃), γ)`, adjoint coefficients. `f̃` is
/// tree-independent; `g̃` carries `g_j` only on trees whose split index is the
/// slot `j` of the `M` input, which is what makes
/// `δ_rAvg = (−1)ⁿ l₁^α` on `C^n`.
pub fn embed_ravg_cochain(c: &RAvgCochain, da: usize, dm: usize) -> ShiftedPair<Cochain> {
    let n = c.degree;
    let d = da + dm;
    let tab = crate::trees::table(n);
    let h = Cochain::from_fn(n, d, d, |t, ix| {
        let ms: Vec<usize> = (0..n).filter(|&s| ix[s] >= da).collect();
        let mut v = zeros(d);
        match ms.as_slice() {
            [] => v[..da].clone_from_slice(c.f.entry(ix)),
            [j] if tab.split[t] == *j + 1 => {
                let mut sub = ix.to_vec();
                sub[*j] -= da;
                v[da..].clone_from_slice(c.g.parts[*j].entry(&sub));
            }
            _ => {}
        }
        v
    });
    let a = match &c.gamma {
        Some(g) => embed_ma(g, da, dm),
        None => Cochain::zero(n.saturating_sub(1), d, d),
    };
    ShiftedPair { degree: n as i64 - 2, h, a }
}

/// The inverse of [`embed_ravg_cochain`]; errors outside its image.
pub fn extract_ravg_cochain(p: &ShiftedPair<Cochain>, da: usize, dm: usize) -> Result<RAvgCochain> {
    let n = p.h.arity;
    let f = crate::cochain::Multilinear::from_fn(&vec![da; n], da, |ix| p.h.entry(0, ix)[..da].to_vec());
    let tab = crate::trees::table(n);
    let g = MixedCochain::from_fn(n, da, dm, dm, |j, ix| {
        let mut full = ix.to_vec();
        full[j] += da;
        let t = (0..tab.len()).find(|&t| tab.split[t] == j + 1).expect("split occurs");
        p.h.entry(t, &full)[da..].to_vec()
    });
    let c = RAvgCochain {
        degree: n,
        f,
        g,
        gamma: (n >= 2).then(|| restrict_ma(&p.a, da, dm)),
    };
    let back = embed_ravg_cochain(&c, da, dm);
    if back.h != p.h || (n >= 2 && back.a != p.a) || (n < 2 && !p.a.is_zero()) {
        return Err(Error::InvalidStructure(format!(
            "element of degree {} is not in the image of C^{n}",
            p.degree
        )));
    }
    Ok(c)
}

/// The `L∞`-algebra on `𝔞 = Hom(𝐤[Ȳ] ⊗ T̄(M), A)` built from the semidirect
/// `Diass∞` structure of an `A∞`-representation.
pub fn homotopy_linf(r: &AInfRep, max_arity: usize) -> DerivedLinf<GradedCY> {
    let (da, dm) = (r.da(), r.dm());
    let pi = diass_inf_semidirect(r, max_arity);
    DerivedLinf(VData {
        lie: GradedCY { space: r.total.space.clone(), max_arity },
        delta: pi.ops,
        proj: Box::new(move |x: &GradedCochain| GradedCochain {
            degree: x.degree,
            dim: x.dim,
            parts: x.parts.iter().map(|c| project_ma(c, da, dm)).collect(),
        }),
    })
}

/// `P` as an element of `𝔞`.
pub fn homotopy_element(p: &HomotopyOperator, r: &AInfRep, max_arity: usize) -> Result<GradedCochain> {
    p.to_graded(r.da(), r.dm(), max_arity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_relative_averaging;
    use crate::instances::shipping;

    #[test]
    fn shipping_instances_are_maurer_cartan() {
        for (name, r) in shipping() {
            assert!(mc_check_ravg(&r).unwrap(), "{name}");
            assert!(bidegree_vanishing(&r).unwrap(), "{name}");
        }
    }

    #[test]
    fn non_operator_is_not_maurer_cartan() {
        let mut r = crate::instances::kx2_adjoint();
        r.p = Matrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert!(!verify_relative_averaging(&r).unwrap().is_valid());
        assert!(!mc_check_ravg(&r).unwrap());
    }

    use crate::linalg::Matrix;
}
