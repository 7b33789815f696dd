//! The shipping instances used by the CLI fixtures and the property suites.

use crate::algebra::{AlgebraData, BilinearMap, BimoduleData, DiassData, RAvgAlgebra};
use crate::constructions::diass_direct_sum;
use crate::linalg::{int, zeros, Matrix};

/// `ℚ[x]/(x²)` acting on itself, `P = id`.
pub fn kx2_adjoint() -> RAvgAlgebra {
    let a = AlgebraData::truncated_polynomial(2);
    let m = BimoduleData::adjoint(&a);
    RAvgAlgebra::new(a, m, Matrix::identity(2)).expect("consistent shapes")
}

/// `A = ℚ`, `M = A ⊕ A`, `P(a₁, a₂) = a₁ + a₂`.
pub fn a_plus_a_sum() -> RAvgAlgebra {
    let a = AlgebraData::truncated_polynomial(1);
    let m = BimoduleData::adjoint_power(&a, 2);
    RAvgAlgebra::new(a, m, Matrix::from_i64(1, 2, &[1, 1])).expect("consistent shapes")
}

/// `A = ℚ`, `M = A ⊕ A`, `P(a₁, a₂) = a₁`.
pub fn a_plus_a_proj() -> RAvgAlgebra {
    a_plus_a_sum().with_operator(Matrix::from_i64(1, 2, &[1, 0]))
}

/// Two-dimensional `A` and `M` with all products and actions zero; every
/// operator is averaging.
pub fn zero_product() -> RAvgAlgebra {
    RAvgAlgebra::new(AlgebraData::zero(2), BimoduleData::zero(2, 2), Matrix::from_i64(2, 2, &[1, 2, 0, 1]))
        .expect("consistent shapes")
}

/// Upper-triangular `2×2` matrices (basis `e₁₁, e₁₂, e₂₂`) acting on
/// themselves, `P(u) = u·e₁₁`.
pub fn upper_triangular() -> RAvgAlgebra {
    let a = upper_triangular_algebra();
    let m = BimoduleData::adjoint(&a);
    // u·e₁₁: e₁₁ ↦ e₁₁, e₁₂ ↦ 0, e₂₂ ↦ 0
    RAvgAlgebra::new(a, m, Matrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0])).expect("consistent shapes")
}

pub fn upper_triangular_algebra() -> AlgebraData {
    // (i,j) pairs of the basis
    let idx = [(0usize, 0usize), (0, 1), (1, 1)];
    let mu = BilinearMap::from_fn(3, 3, 3, |x, y| {
        let (a, b) = idx[x];
        let (c, d) = idx[y];
        let mut v = zeros(3);
        if b == c {
            let k = idx.iter().position(|&e| e == (a, d)).expect("upper triangular");
            v[k] = int(1);
        }
        v
    });
    AlgebraData::new(3, mu).expect("consistent shapes")
}

pub fn shipping() -> Vec<(&'static str, RAvgAlgebra)> {
    vec![
        ("kx2_adjoint", kx2_adjoint()),
        ("a_plus_a_sum", a_plus_a_sum()),
        ("a_plus_a_proj", a_plus_a_proj()),
        ("zero_product", zero_product()),
        ("upper_triangular", upper_triangular()),
    ]
}

/// Diassociative instances: `A ⊕_Diass A` for `ℚ[x]/(x²)`, `ℚ ⊕_Diass ℚ²`,
/// the associative `ℚ[x]/(x³)` and a zero product.
pub fn diass_shipping() -> Vec<(&'static str, DiassData)> {
    let kx2 = AlgebraData::truncated_polynomial(2);
    let q = AlgebraData::truncated_polynomial(1);
    vec![
        ("kx2_direct_sum", diass_direct_sum(&kx2, &BimoduleData::adjoint(&kx2))),
        ("q_plus_q2", diass_direct_sum(&q, &BimoduleData::adjoint_power(&q, 2))),
        ("kx3_associative", DiassData::from_associative(&AlgebraData::truncated_polynomial(3))),
        ("zero_2", DiassData::zero(2)),
    ]
}

/// Every fixture file shipped under `fixtures/`, keyed by file stem.
///
/// Deformation and extension fixtures are derived from the first
/// representative of `H²_rAvg` with adjoint coefficients.
pub fn fixture_catalogue() -> crate::Result<Vec<(String, crate::fixture::Fixture)>> {
    use crate::cohomology::{betti, RAvgContext};
    use crate::deformations::{cocycle_to_deformation, gauge_first_order};
    use crate::extensions::cocycle_to_extension;
    use crate::fixture::{Fixture, GradedFixture};
    use crate::homotopy::{AInfRep, GradedOps, HomotopyOperator, DEFAULT_MAX_ARITY};

    let mut out: Vec<(String, Fixture)> = vec![];
    for (name, r) in shipping() {
        out.push((name.to_string(), Fixture::Ravg(r)));
    }
    for (name, d) in diass_shipping() {
        out.push((name.to_string(), Fixture::Diass(d)));
    }
    let kx2 = AlgebraData::truncated_polynomial(2);
    out.push(("kx2_algebra".into(), Fixture::Algebra(kx2.clone())));
    out.push(("upper_triangular_algebra".into(), Fixture::Algebra(upper_triangular_algebra())));
    out.push((
        "kx2_bimodule".into(),
        Fixture::Bimodule { algebra: kx2.clone(), bimodule: BimoduleData::adjoint(&kx2) },
    ));

    let base = kx2_adjoint();
    let ctx = RAvgContext::adjoint(&base)?;
    out.push(("kx2_adjoint_coefficients".into(), Fixture::RavgBimodule { base: base.clone(), bimodule: ctx.bm.clone() }));
    let h2 = betti(&ctx.complex(2)?, 2)?;
    let rep = h2
        .representatives
        .first()
        .ok_or_else(|| crate::Error::Precondition("kx2_adjoint has H² = 0".into()))?;
    let c = ctx.unflatten(2, rep)?;
    out.push((
        "kx2_adjoint_cocycle".into(),
        Fixture::RavgCochain { base: base.clone(), coefficients: None, cochain: c.clone() },
    ));
    let jet = cocycle_to_deformation(&c, &base)?;
    out.push(("kx2_adjoint_jet".into(), Fixture::Jet(jet.clone())));
    let (da, dm) = (base.a.dim, base.m.dim);
    let phi1 = Matrix::from_i64(da, da, &[0, 1, 0, 0]);
    let psi1 = Matrix::from_i64(dm, dm, &[1, 0, 0, 0]);
    out.push(("kx2_adjoint_jet_gauged".into(), Fixture::Jet(gauge_first_order(&jet, &phi1, &psi1)?)));
    let ext = cocycle_to_extension(&c, &base, &ctx.bm)?;
    out.push(("kx2_adjoint_section".into(), Fixture::Section(ext.canonical_section())));
    out.push(("kx2_adjoint_extension".into(), Fixture::Extension(ext)));

    out.push(("kx2_ainf".into(), Fixture::Graded(GradedFixture::AInf(GradedOps::from_associative(&kx2, DEFAULT_MAX_ARITY)))));
    let (_, q2) = diass_shipping().swap_remove(1);
    out.push(("q_plus_q2_diass_inf".into(), Fixture::Graded(GradedFixture::DiassInf(GradedOps::from_diass(&q2, DEFAULT_MAX_ARITY)))));
    let rep = AInfRep::from_bimodule(&base.a, &base.m, DEFAULT_MAX_ARITY)?;
    out.push((
        "kx2_adjoint_homotopy".into(),
        Fixture::Graded(GradedFixture::AInfRep {
            rep,
            operator: Some(HomotopyOperator::strict(&base.p, DEFAULT_MAX_ARITY)),
        }),
    ));
    Ok(out)
}

/// Bracket inputs shipped under `fixtures/cochains/`: operators as arity-1
/// cochains `M → A` and diassociative products as arity-2 cochains.
pub fn cochain_catalogue() -> Vec<(String, crate::cochain::Cochain)> {
    use crate::cochain::Cochain;
    let mut out = vec![];
    for (name, r) in shipping() {
        out.push((format!("{name}_P"), Cochain::from_matrix(&r.p)));
    }
    out.push(("kx2_adjoint_swap".into(), Cochain::from_matrix(&Matrix::from_i64(2, 2, &[0, 1, 1, 0]))));
    for (name, d) in diass_shipping() {
        out.push((format!("{name}_pi"), Cochain::from_diass(&d)));
    }
    out
}
