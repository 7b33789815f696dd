use diassocle::algebra::{RAvgAlgebra, RAvgBimodule};
use diassocle::cohomology::{avg_coboundary, avg_complex, avg_embed, betti, les_check, AvgCochain, RAvgContext};
use diassocle::instances::shipping;
use diassocle::linalg::{unit, vsub, Matrix, Scalar, Vector};
use diassocle::random;

/// Residuals of `φ(ab) = φ(a)b + aφ(b)`, the two bimodule-map rules for `ψ`
/// and `φP = Pψ`, as a function of the flattened pair `(φ, ψ)`.
fn derivation_residual(r: &RAvgAlgebra, x: &[Scalar]) -> Vector {
    let (da, dm) = (r.a.dim, r.m.dim);
    let col = |off: usize, d: usize, j: usize| x[off + j * d..off + (j + 1) * d].to_vec();
    let phi = |v: &[Scalar]| {
        let mut out = vec![Scalar::default(); da];
        for (j, c) in v.iter().enumerate() {
            for (o, y) in out.iter_mut().zip(col(0, da, j)) {
                *o += c * y;
            }
        }
        out
    };
    let psi = |v: &[Scalar]| {
        let mut out = vec![Scalar::default(); dm];
        for (j, c) in v.iter().enumerate() {
            for (o, y) in out.iter_mut().zip(col(da * da, dm, j)) {
                *o += c * y;
            }
        }
        out
    };
    let mut res = vec![];
    for i in 0..da {
        for j in 0..da {
            let (a, b) = (unit(da, i), unit(da, j));
            let lhs = phi(&r.a.mul(&a, &b));
            let rhs = diassocle::linalg::vadd(&r.a.mul(&phi(&a), &b), &r.a.mul(&a, &phi(&b)));
            res.extend(vsub(&lhs, &rhs));
        }
    }
    for i in 0..da {
        for u in 0..dm {
            let (a, e) = (unit(da, i), unit(dm, u));
            let l = vsub(&psi(&r.m.act_left(&a, &e)), &diassocle::linalg::vadd(&r.m.act_left(&phi(&a), &e), &r.m.act_left(&a, &psi(&e))));
            let rr = vsub(&psi(&r.m.act_right(&e, &a)), &diassocle::linalg::vadd(&r.m.act_right(&psi(&e), &a), &r.m.act_right(&e, &phi(&a))));
            res.extend(l);
            res.extend(rr);
        }
    }
    for u in 0..dm {
        let e = unit(dm, u);
        res.extend(vsub(&phi(&r.p.apply(&e)), &r.p.apply(&psi(&e))));
    }
    res
}

fn derivation_count(r: &RAvgAlgebra) -> usize {
    let n = r.a.dim * r.a.dim + r.m.dim * r.m.dim;
    let cols: Vec<Vector> = (0..n).map(|k| derivation_residual(r, &unit(n, k))).collect();
    let rows = cols[0].len();
    Matrix::from_columns(rows, &cols).unwrap().nullity()
}

#[test]
fn first_cohomology_counts_derivations() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let h1 = betti(&ctx.complex(1).unwrap(), 1).unwrap();
        assert_eq!(h1.dim, derivation_count(&r), "{name}");
    }
}

#[test]
fn first_cohomology_by_hand() {
    // A = ℚ has no derivations; ψ ranges over 2×2 matrices with Pψ = 0.
    let expect = [("a_plus_a_sum", 2), ("a_plus_a_proj", 2), ("zero_product", 4)];
    for (name, r) in shipping() {
        if let Some(&(_, d)) = expect.iter().find(|(n, _)| *n == name) {
            let ctx = RAvgContext::adjoint(&r).unwrap();
            assert_eq!(betti(&ctx.complex(1).unwrap(), 1).unwrap().dim, d, "{name}");
        }
    }
}

#[test]
fn complexes_square_to_zero_on_random_cochains() {
    let mut rng = random::rng(21);
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        for n in 1..=3 {
            let c = ctx.unflatten(n, &random::vector(&mut rng, ctx.space_dim(n))).unwrap();
            let dd = ctx.coboundary(&ctx.coboundary(&c).unwrap()).unwrap();
            assert!(dd.is_zero(), "{name}, n = {n}");
        }
    }
}

#[test]
fn long_exact_sequence_is_exact() {
    for (name, r) in shipping() {
        let les = les_check(&RAvgContext::adjoint(&r).unwrap(), 3).unwrap();
        assert!(les.is_exact(), "{name}\n{}", les.to_text());
        assert_eq!(les.nodes.len(), 9);
    }
    let r = diassocle::instances::kx2_adjoint();
    let les = les_check(&RAvgContext::with_coefficients(&r, &RAvgBimodule::zero(&r, 1, 2)).unwrap(), 3).unwrap();
    assert!(les.is_exact(), "{}", les.to_text());
}

#[test]
fn inclusion_and_projection_are_chain_maps() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let (c, k, b) = (ctx.complex(3).unwrap(), ctx.kernel_complex(3).unwrap(), ctx.bimod_complex(3).unwrap());
        for n in 1..=3 {
            let dc = c.coboundary(n).unwrap();
            let lhs = dc.mul(&ctx.inclusion(n)).unwrap();
            assert_eq!(lhs, ctx.inclusion(n + 1).mul(&k.coboundary(n).unwrap()).unwrap(), "{name}, n = {n}");
            let lhs = ctx.projection(n + 1).mul(&dc).unwrap();
            assert_eq!(lhs, b.coboundary(n).unwrap().mul(&ctx.projection(n)).unwrap(), "{name}, n = {n}");
        }
    }
}

#[test]
fn averaging_cochains_embed() {
    let mut rng = random::rng(22);
    for (name, r) in shipping() {
        if !r.m.is_adjoint_of(&r.a) {
            assert!(avg_complex(&r, 2).is_err(), "{name}");
            continue;
        }
        let (da, dm) = (r.a.dim, r.m.dim);
        for n in 1..=3 {
            let c = AvgCochain {
                degree: n,
                f: random::multilinear(&mut rng, &vec![da; n], da),
                gamma: (n >= 2).then(|| random::cochain(&mut rng, n - 1, dm, da)),
            };
            let ctx = RAvgContext::adjoint(&r).unwrap();
            let lhs = ctx.coboundary(&avg_embed(&c)).unwrap();
            assert_eq!(lhs, avg_embed(&avg_coboundary(&c, &r).unwrap()), "{name}, n = {n}");
        }
        let spec = avg_complex(&r, 2).unwrap();
        for n in 1..=2 {
            betti(&spec, n).unwrap();
        }
    }
}

#[test]
fn cohomologous_classes_differ_by_a_coboundary() {
    let mut rng = random::rng(23);
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let spec = ctx.complex(2).unwrap();
        let h2 = betti(&spec, 2).unwrap();
        let b = ctx.unflatten(1, &random::vector(&mut rng, ctx.space_dim(1))).unwrap();
        let db = ctx.flatten(&ctx.coboundary(&b).unwrap());
        for z in &h2.representatives {
            let moved = diassocle::linalg::vadd(z, &db);
            assert!(h2.is_cocycle(&moved));
            assert!(h2.cohomologous(z, &moved).unwrap(), "{name}");
            assert!(!h2.is_coboundary(z).unwrap(), "{name}");
        }
    }
}
