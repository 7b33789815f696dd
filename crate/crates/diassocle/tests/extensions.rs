use diassocle::algebra::{RAvgAlgebra, RAvgBimodule};
use diassocle::cochain::Multilinear;
use diassocle::cohomology::{betti, MixedCochain, RAvgCochain, RAvgContext};
use diassocle::extensions::{
    cocycle_to_extension, extension_to_cocycle, find_isomorphism, induced_bimodule, verify_extension, verify_isomorphism,
};
use diassocle::instances::shipping;
use diassocle::linalg::{int, vadd, vscale, vsub, Matrix};
use diassocle::{random, Error};

fn coefficient_cases() -> Vec<(String, RAvgAlgebra, RAvgBimodule)> {
    let mut out = vec![];
    for (name, r) in shipping() {
        out.push((format!("{name}/adjoint"), r.clone(), RAvgBimodule::adjoint(&r)));
        out.push((format!("{name}/zero"), r.clone(), RAvgBimodule::zero(&r, 1, 2)));
    }
    out
}

/// `(κ, η)` as a 1-cochain with values in `(B, N)`.
fn one_cochain(kappa: &Matrix, eta: &Matrix) -> RAvgCochain {
    let (da, dm) = (kappa.cols, eta.cols);
    RAvgCochain {
        degree: 1,
        f: Multilinear::from_fn(&[da], kappa.rows, |ix| kappa.column(ix[0])),
        g: MixedCochain::from_fn(1, da, dm, eta.rows, |_, ix| eta.column(ix[0])),
        gamma: None,
    }
}

fn cocycles(ctx: &RAvgContext) -> Vec<RAvgCochain> {
    let h2 = betti(&ctx.complex(2).unwrap(), 2).unwrap();
    let mut out: Vec<_> = h2.representatives.iter().map(|v| ctx.unflatten(2, v).unwrap()).collect();
    out.push(ctx.zero_cochain(2).unwrap());
    out
}

#[test]
fn cocycles_round_trip_through_extensions() {
    for (name, r, bm) in coefficient_cases() {
        let ctx = RAvgContext::with_coefficients(&r, &bm).unwrap();
        for c in cocycles(&ctx) {
            let e = cocycle_to_extension(&c, &r, &bm).unwrap();
            assert!(verify_extension(&e).unwrap().is_valid(), "{name}");
            let sec = e.canonical_section();
            e.check_section(&sec).unwrap();
            assert_eq!(induced_bimodule(&e, &sec).unwrap(), bm, "{name}");
            assert_eq!(extension_to_cocycle(&e, &sec).unwrap().0, c, "{name}");
        }
    }
}

#[test]
fn changing_the_section_adds_a_coboundary() {
    let mut rng = random::rng(51);
    for (name, r, bm) in coefficient_cases() {
        let ctx = RAvgContext::with_coefficients(&r, &bm).unwrap();
        let h2 = betti(&ctx.complex(2).unwrap(), 2).unwrap();
        let (da, dm, db, dn) = ctx.dims();
        for c in cocycles(&ctx) {
            let e = cocycle_to_extension(&c, &r, &bm).unwrap();
            let kappa = random::matrix(&mut rng, db, da);
            let eta = random::matrix(&mut rng, dn, dm);
            let sec = e.shifted_section(&e.canonical_section(), &kappa, &eta).unwrap();
            e.check_section(&sec).unwrap();
            let (moved, _) = extension_to_cocycle(&e, &sec).unwrap();
            let (z, zp) = (ctx.flatten(&c), ctx.flatten(&moved));
            assert!(h2.is_cocycle(&zp), "{name}");
            assert!(h2.cohomologous(&z, &zp).unwrap(), "{name}");
            let d = ctx.flatten(&ctx.coboundary(&one_cochain(&kappa, &eta)).unwrap());
            let diff = vsub(&zp, &z);
            assert!(diff == d || diff == vscale(&int(-1), &d), "{name}");
        }
    }
}

#[test]
fn cohomologous_cocycles_give_isomorphic_extensions() {
    let mut rng = random::rng(52);
    for (name, r, bm) in coefficient_cases() {
        let ctx = RAvgContext::with_coefficients(&r, &bm).unwrap();
        let b = ctx.unflatten(1, &random::vector(&mut rng, ctx.space_dim(1))).unwrap();
        let db = ctx.flatten(&ctx.coboundary(&b).unwrap());
        for c in cocycles(&ctx) {
            let e = cocycle_to_extension(&c, &r, &bm).unwrap();
            let moved = ctx.unflatten(2, &vadd(&ctx.flatten(&c), &db)).unwrap();
            let ep = cocycle_to_extension(&moved, &r, &bm).unwrap();
            let (s, sp) = (e.canonical_section(), ep.canonical_section());
            let (phi, psi) = find_isomorphism(&e, &s, &ep, &sp).unwrap().expect("same class");
            assert!(verify_isomorphism(&e, &ep, &phi, &psi).unwrap().is_valid(), "{name}");
        }
    }
}

#[test]
fn different_classes_give_non_isomorphic_extensions() {
    let mut checked = 0;
    for (name, r, bm) in coefficient_cases() {
        let ctx = RAvgContext::with_coefficients(&r, &bm).unwrap();
        let cs = cocycles(&ctx);
        for c in &cs[..cs.len() - 1] {
            let e = cocycle_to_extension(c, &r, &bm).unwrap();
            let twice = ctx.unflatten(2, &vscale(&int(2), &ctx.flatten(c))).unwrap();
            let ep = cocycle_to_extension(&twice, &r, &bm).unwrap();
            let found = find_isomorphism(&e, &e.canonical_section(), &ep, &ep.canonical_section()).unwrap();
            assert!(found.is_none(), "{name}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn open_cochains_are_rejected() {
    let mut rng = random::rng(53);
    for (name, r, bm) in coefficient_cases() {
        let ctx = RAvgContext::with_coefficients(&r, &bm).unwrap();
        let c = ctx.unflatten(2, &random::vector(&mut rng, ctx.space_dim(2))).unwrap();
        if ctx.coboundary(&c).unwrap().is_zero() {
            continue;
        }
        assert!(matches!(cocycle_to_extension(&c, &r, &bm), Err(Error::NotACocycle(_))), "{name}");
    }
}
