use diassocle::cohomology::{betti, RAvgCochain, RAvgContext};
use diassocle::deformations::{
    cocycle_to_deformation, deformation_to_cocycle, equivalence_check, find_equivalence, gauge_first_order, is_trivial,
    verify_deformation, DeformationJet, EquivalenceJet,
};
use diassocle::instances::shipping;
use diassocle::linalg::{int, vadd, vscale, Matrix};
use diassocle::{random, Error};

fn classes(ctx: &RAvgContext) -> Vec<RAvgCochain> {
    let h2 = betti(&ctx.complex(2).unwrap(), 2).unwrap();
    h2.representatives.iter().map(|v| ctx.unflatten(2, v).unwrap()).collect()
}

fn coboundary_of_random(ctx: &RAvgContext, seed: u64) -> (Matrix, Matrix, Vec<diassocle::linalg::Scalar>) {
    let mut rng = random::rng(seed);
    let (da, dm) = (ctx.r.a.dim, ctx.r.m.dim);
    let phi = random::matrix(&mut rng, da, da);
    let psi = random::matrix(&mut rng, dm, dm);
    let d = ctx.coboundary(&diassocle::deformations::equivalence_cochain(&phi, &psi)).unwrap();
    (phi, psi, ctx.flatten(&d))
}

#[test]
fn every_class_round_trips() {
    let mut seen = 0;
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        for c in classes(&ctx) {
            let j = cocycle_to_deformation(&c, &r).unwrap();
            assert!(verify_deformation(&j).unwrap().is_valid(), "{name}");
            assert_eq!(deformation_to_cocycle(&j).unwrap(), c, "{name}");
            assert!(!is_trivial(&j).unwrap(), "{name}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn cohomologous_cocycles_give_equivalent_jets() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let (_, _, db) = coboundary_of_random(&ctx, 41);
        let mut cs = classes(&ctx);
        cs.push(ctx.zero_cochain(2).unwrap());
        for c in cs {
            let moved = ctx.unflatten(2, &vadd(&ctx.flatten(&c), &db)).unwrap();
            let (j, jp) = (cocycle_to_deformation(&c, &r).unwrap(), cocycle_to_deformation(&moved, &r).unwrap());
            let eq = find_equivalence(&j, &jp).unwrap().expect("cohomologous");
            assert!(equivalence_check(&j, &jp, &eq).unwrap().is_valid(), "{name}");
        }
    }
}

#[test]
fn gauging_comes_with_its_witness() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let (phi, psi, _) = coboundary_of_random(&ctx, 42);
        for c in classes(&ctx) {
            let j = cocycle_to_deformation(&c, &r).unwrap();
            let jp = gauge_first_order(&j, &phi, &psi).unwrap();
            let eq = EquivalenceJet::first_order(phi.clone(), psi.clone());
            assert!(equivalence_check(&j, &jp, &eq).unwrap().is_valid(), "{name}");
        }
    }
}

#[test]
fn distinct_classes_are_not_equivalent() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let cs = classes(&ctx);
        for (k, c) in cs.iter().enumerate() {
            let j = cocycle_to_deformation(c, &r).unwrap();
            let twice = ctx.unflatten(2, &vscale(&int(2), &ctx.flatten(c))).unwrap();
            assert!(find_equivalence(&j, &cocycle_to_deformation(&twice, &r).unwrap()).unwrap().is_none(), "{name}");
            for other in &cs[k + 1..] {
                let jo = cocycle_to_deformation(other, &r).unwrap();
                assert!(find_equivalence(&j, &jo).unwrap().is_none(), "{name}");
            }
        }
    }
}

#[test]
fn trivial_jets_are_trivial() {
    for (name, r) in shipping() {
        for order in 1..=3 {
            let t = DeformationJet::trivial(&r, order);
            assert!(verify_deformation(&t).unwrap().is_valid(), "{name}");
            assert!(is_trivial(&t).unwrap(), "{name}");
        }
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let (_, _, db) = coboundary_of_random(&ctx, 43);
        let j = cocycle_to_deformation(&ctx.unflatten(2, &db).unwrap(), &r).unwrap();
        assert!(is_trivial(&j).unwrap(), "{name}");
    }
}

#[test]
fn open_cochains_are_rejected() {
    let mut rng = random::rng(44);
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let c = ctx.unflatten(2, &random::vector(&mut rng, ctx.space_dim(2))).unwrap();
        if ctx.coboundary(&c).unwrap().is_zero() {
            continue;
        }
        assert!(matches!(cocycle_to_deformation(&c, &r), Err(Error::NotACocycle(_))), "{name}");
    }
}
