use diassocle::algebra::{verify_associative, verify_diass, verify_relative_averaging, AlgebraData, BilinearMap, DiassData};
use diassocle::cochain::{embed_ma, restrict_ma, Cochain, DerivedBracket, Multilinear};
use diassocle::cohomology::RAvgContext;
use diassocle::constructions::{diass_direct_sum, induced_diass, quotient_ravg};
use diassocle::homotopy::*;
use diassocle::instances::{diass_shipping, kx2_adjoint, shipping};
use diassocle::linalg::{frac, int, kernel_basis, Matrix, Scalar, Vector};
use diassocle::random;
use diassocle::trees::table;
use rand::seq::SliceRandom;
use rand::Rng;

fn sgn(odd: bool) -> Scalar {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}

fn random_pair<R: Rng>(rng: &mut R, degree: usize, da: usize, dm: usize) -> ShiftedPair<Cochain> {
    let d = da + dm;
    ShiftedPair {
        degree: degree as i64,
        h: random::cochain(rng, degree + 2, d, d),
        a: embed_ma(&random::cochain(rng, degree + 1, dm, da), da, dm),
    }
}

#[test]
fn twisted_l1_is_the_ravg_coboundary() {
    for (name, r) in shipping() {
        let ctx = RAvgContext::adjoint(&r).unwrap();
        let (da, dm) = (r.a.dim, r.m.dim);
        let tw = controlling_linf(&r, 7).unwrap();
        let mut rng = random::rng(501);
        for n in 1..=3 {
            let c = ctx.unflatten(n, &random::vector(&mut rng, ctx.space_dim(n))).unwrap();
            let l1 = tw.l(&[&embed_ravg_cochain(&c, da, dm)]).unwrap();
            let d = ctx.coboundary(&c).unwrap();
            let want = embed_ravg_cochain(&d, da, dm);
            assert_eq!(tw.scale(&l1, &sgn(n % 2 == 1)), want, "{name}, n = {n}");
            let back = extract_ravg_cochain(&l1, da, dm).unwrap();
            assert_eq!(ctx.flatten(&back), ctx.flatten(&d).iter().map(|x| x * sgn(n % 2 == 1)).collect::<Vec<_>>());
        }
    }
}

#[test]
fn twisted_l1_squares_to_zero() {
    for (name, r) in shipping() {
        let (da, dm) = (r.a.dim, r.m.dim);
        let tw = controlling_linf(&r, 7).unwrap();
        let mut rng = random::rng(502);
        for degree in 0..=1 {
            let x = random_pair(&mut rng, degree, da, dm);
            let y = tw.l(&[&x]).unwrap();
            assert!(tw.is_zero(&tw.l(&[&y]).unwrap()), "{name}, degree {degree}");
        }
    }
}

#[test]
fn twisting_shifts_maurer_cartan_elements() {
    let mut cases: Vec<(&str, diassocle::algebra::RAvgAlgebra, ShiftedPair<Cochain>, bool)> = vec![];
    let kx2 = kx2_adjoint();
    let (da, dm) = (kx2.a.dim, kx2.m.dim);
    for lam in [int(2), int(0), frac(-1, 2), int(3)] {
        let pp = Matrix::identity(2).scale(&(lam - int(1)));
        let a = embed_ma(&Cochain::from_matrix(&pp), da, dm);
        cases.push(("kx2 λ·id", kx2.clone(), ShiftedPair { degree: 0, h: Cochain::zero(2, 4, 4), a }, true));
    }
    let all = shipping();
    let (sum, proj) = (&all[1].1, &all[2].1);
    let diff = embed_ma(&Cochain::from_matrix(&proj.p.sub(&sum.p).unwrap()), sum.a.dim, sum.m.dim);
    let d = sum.a.dim + sum.m.dim;
    cases.push(("sum → proj", sum.clone(), ShiftedPair { degree: 0, h: Cochain::zero(2, d, d), a: diff }, true));
    for (name, r) in &all {
        let alpha = ravg_mc_element(r);
        let neg = ShiftedPair { degree: 0, h: alpha.h.scale(&int(-1)), a: alpha.a.scale(&int(-1)) };
        cases.push((name, r.clone(), neg, true));
        cases.push((name, r.clone(), ShiftedPair { degree: 0, h: Cochain::zero(2, alpha.h.src, alpha.h.src), a: Cochain::zero(1, alpha.h.src, alpha.h.src) }, true));
    }
    let mut rng = random::rng(503);
    while cases.len() < 20 {
        let (name, r) = all[cases.len() % all.len()].clone();
        let x = random_pair(&mut rng, 0, r.a.dim, r.m.dim);
        cases.push((name, r, x, false));
    }
    let mut trues = 0;
    for (name, r, x, expect) in &cases {
        let (da, dm) = (r.a.dim, r.m.dim);
        let l = ravg_linf(da, dm);
        let alpha = ravg_mc_element(r);
        let sum = l.add(&alpha, x);
        let direct = mc_sum(&l, &sum, 6).unwrap();
        let tw = controlling_linf(r, 6).unwrap();
        let twisted = mc_sum(&tw, x, 6).unwrap();
        assert_eq!(direct, twisted, "{name}");
        assert_eq!(l.is_zero(&direct), *expect, "{name}");
        trues += *expect as usize;
    }
    assert!(trues >= 8);
}

#[test]
fn derived_linf_higher_jacobi() {
    for (name, r) in shipping() {
        let (da, dm) = (r.a.dim, r.m.dim);
        let l = operator_linf(&r.a, &r.m);
        let mut rng = random::rng(504);
        let xs: Vec<Cochain> = (0..3).map(|i| embed_ma(&random::cochain(&mut rng, 1 + (i == 0) as usize, dm, da), da, dm)).collect();
        for n in 1..=3 {
            assert!(l.is_zero(&linf_jacobi(&l, &xs[..n]).unwrap()), "{name}, n = {n}");
        }
        // graded Lie: nothing beyond l_2
        let l3 = l.l(&[&xs[1], &xs[2], &xs[1]]).unwrap();
        assert!(l3.is_zero(), "{name}");
    }
}

#[test]
fn shifted_and_twisted_linf_higher_jacobi() {
    for (name, r) in shipping() {
        let (da, dm) = (r.a.dim, r.m.dim);
        let mut rng = random::rng(505);
        let l = ravg_linf(da, dm);
        let mut xs: Vec<ShiftedPair<Cochain>> = (0..3).map(|_| random_pair(&mut rng, 0, da, dm)).collect();
        // one pure-𝔞 and one pure-𝔥 entry exercise every family
        xs[1].h = Cochain::zero(2, da + dm, da + dm);
        xs[2].a = Cochain::zero(1, da + dm, da + dm);
        for n in 1..=3 {
            assert!(l.is_zero(&linf_jacobi(&l, &xs[..n]).unwrap()), "{name}, n = {n}");
        }
        let tw = controlling_linf(&r, 6).unwrap();
        for n in 1..=3 {
            assert!(tw.is_zero(&linf_jacobi(&tw, &xs[..n]).unwrap()), "twisted {name}, n = {n}");
        }
    }
}

#[test]
fn trivial_vdata_is_abelian() {
    let r = kx2_adjoint();
    let (da, dm) = (r.a.dim, r.m.dim);
    let mut v = operator_vdata(&r.a, &r.m);
    v.delta = Cochain::zero(2, da + dm, da + dm);
    let l = DerivedLinf(v);
    let mut rng = random::rng(506);
    let x = embed_ma(&random::cochain(&mut rng, 1, dm, da), da, dm);
    let y = embed_ma(&random::cochain(&mut rng, 2, dm, da), da, dm);
    assert!(l.l(&[&x]).unwrap().is_zero());
    assert!(l.l(&[&x, &y]).unwrap().is_zero());
    assert!(operator_vdata(&r.a, &r.m).check().unwrap().is_valid());
}

#[test]
fn operator_l2_is_the_derived_bracket_up_to_sign() {
    for (name, r) in shipping() {
        let (da, dm) = (r.a.dim, r.m.dim);
        let l = operator_linf(&r.a, &r.m);
        let db = DerivedBracket::new(&r.a, &r.m);
        let mut rng = random::rng(507);
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let f = random::cochain(&mut rng, m, dm, da);
            let g = random::cochain(&mut rng, n, dm, da);
            let l2 = l.l(&[&embed_ma(&f, da, dm), &embed_ma(&g, da, dm)]).unwrap();
            let want = db.bracket(&f, &g).unwrap().scale(&sgn(m % 2 == 1));
            assert_eq!(restrict_ma(&l2, da, dm), want, "{name}, arities {m}, {n}");
        }
    }
}

#[test]
fn maurer_cartan_flag_matches_the_direct_verifier() {
    let mut rng = random::rng(508);
    for (name, r) in shipping() {
        for k in 0..20 {
            let p = match k % 4 {
                0 => r.p.scale(&random::scalar(&mut rng)),
                _ => random::matrix(&mut rng, r.a.dim, r.m.dim),
            };
            let c = r.with_operator(p);
            assert_eq!(mc_check_ravg(&c).unwrap(), verify_relative_averaging(&c).unwrap().is_valid(), "{name} #{k}");
            assert!(bidegree_vanishing(&c).unwrap());
        }
    }
}

#[test]
fn koszul_sign_is_multiplicative() {
    let mut rng = random::rng(509);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let degs: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut tau = sigma.clone();
        sigma.shuffle(&mut rng);
        tau.shuffle(&mut rng);
        let moved: Vec<i64> = sigma.iter().map(|&i| degs[i]).collect();
        let comp: Vec<usize> = tau.iter().map(|&j| sigma[j]).collect();
        assert_eq!(koszul_sign(&degs, &comp), koszul_sign(&degs, &sigma) * koszul_sign(&moved, &tau));
    }
    // unshuffles compose to unshuffle-sign products as well
    let degs = [1, 0, 1, 1];
    for s in unshuffles(2, 4) {
        for t in unshuffles(1, 4) {
            let moved: Vec<i64> = s.iter().map(|&i| degs[i]).collect();
            let comp: Vec<usize> = t.iter().map(|&j| s[j]).collect();
            assert_eq!(koszul_sign(&degs, &comp), koszul_sign(&degs, &s) * koszul_sign(&moved, &t));
        }
    }
}

fn diass_candidates() -> Vec<(GradedOps, &'static str)> {
    let mut rng = random::rng(510);
    let spaces = [
        GradedSpace::new(vec![-1, 0]),
        GradedSpace::new(vec![-2, -1]),
        GradedSpace::new(vec![-2, 0]),
        GradedSpace::new(vec![-1, -1]),
    ];
    let mut out = vec![];
    for i in 0..50 {
        let s = &spaces[i % spaces.len()];
        let ops = match i % 5 {
            0 => random_ainf(&mut rng, s, 3),
            1 => {
                let a = GradedSpace::new(vec![s.degs[0]]);
                let m = GradedSpace::new(vec![s.degs[1]]);
                diass_inf_semidirect(&random_ainf_rep(&mut rng, &a, &m, 3), 3)
            }
            2 => {
                let mut d = random_ainf(&mut rng, s, 3);
                let extra = random_graded_cochain(&mut rng, s, 2, 1, false);
                d.ops.parts[1].add_scaled(&int(1), &extra);
                d.kind = OpsKind::DiassInfinity;
                d
            }
            _ => random_diass_candidate(&mut rng, s, 3),
        };
        out.push((ops, ["ainf", "semidirect", "perturbed", "random", "random"][i % 5]));
    }
    for (_, d) in diass_shipping() {
        if d.dim == 2 {
            out.push((GradedOps::from_diass(&d, 3), "degree −1"));
        }
    }
    out
}

#[test]
fn graded_bracket_square_detects_diass_inf() {
    let mut trues = 0;
    for (i, (d, kind)) in diass_candidates().iter().enumerate() {
        let sq = graded_mm_bracket(&d.ops, &d.ops, &d.space, 3).unwrap();
        let ok = verify_diass_inf(d, 3).unwrap().is_valid();
        assert_eq!(sq.is_zero(), ok, "candidate {i} ({kind})");
        trues += ok as usize;
    }
    assert!(trues >= 20, "only {trues} true candidates");
}

#[test]
fn graded_bracket_is_antisymmetric() {
    let mut rng = random::rng(511);
    let space = GradedSpace::from_dims(-2, &[1, 1, 1]);
    for _ in 0..10 {
        let (dx, dy) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let mk = |rng: &mut rand_chacha::ChaCha8Rng, deg: i64| GradedCochain {
            degree: deg,
            dim: 3,
            parts: (1..=3).map(|k| random_graded_cochain(rng, &space, k, deg, false)).collect(),
        };
        let x = mk(&mut rng, dx);
        let y = mk(&mut rng, dy);
        let xy = graded_mm_bracket(&x, &y, &space, 3).unwrap();
        let yx = graded_mm_bracket(&y, &x, &space, 3).unwrap();
        assert!(xy.add(&yx.scale(&sgn(dx * dy % 2 != 0))).is_zero());
        let z = GradedCochain::zero(3, 3, 0);
        assert!(graded_mm_bracket(&x, &z, &space, 3).unwrap().is_zero());
    }
}

#[test]
fn semidirect_diass_inf_on_random_instances() {
    let mut rng = random::rng(512);
    for i in 0..6 {
        let a = GradedSpace::from_dims(-2, &[1 + i % 2, 1, 1, 1]);
        let m = GradedSpace::from_dims(-1, &[1, 2 - i % 2, 1]);
        let rep = random_ainf_rep(&mut rng, &a, &m, 3);
        assert!(verify_ainf_rep(&rep, 3).unwrap().is_valid());
        let dd = diass_inf_semidirect(&rep, 3);
        assert!(verify_diass_inf(&dd, 3).unwrap().is_valid(), "instance {i}");
    }
    // M = 0: π is μ on every tree
    let s = GradedSpace::from_dims(-1, &[1, 1]);
    let b = random_ainf(&mut rng, &s, 3);
    let rep = AInfRep::new(&b, GradedSpace::default(), &[]).unwrap();
    let dd = diass_inf_semidirect(&rep, 3);
    assert!(dd.ops.is_tree_independent());
    assert_eq!(dd.ops.truncate(3), b.ops.truncate(3));
}

#[test]
fn ungraded_specializations() {
    let mut rng = random::rng(513);
    for (name, r) in shipping() {
        let rep = AInfRep::from_bimodule(&r.a, &r.m, 3).unwrap();
        // semidirect π reproduces A ⊕_Diass M
        let dd = diass_inf_semidirect(&rep, 3);
        assert_eq!(dd.ops, GradedOps::from_diass(&diass_direct_sum(&r.a, &r.m), 3).ops, "{name}");
        // strict operator ⇔ averaging identity
        for k in 0..8 {
            let p = if k < 3 { r.p.scale(&random::scalar(&mut rng)) } else { random::matrix(&mut rng, r.a.dim, r.m.dim) };
            let c = r.with_operator(p.clone());
            let direct = verify_relative_averaging(&c).unwrap().is_valid();
            assert_eq!(strict_operator_check(&rep, &p, 3).unwrap().is_valid(), direct, "{name} #{k}");
            let hp = HomotopyOperator::strict(&p, 3);
            assert_eq!(homotopy_ravg_check(&rep, &hp, 3).unwrap().is_valid(), direct, "{name} #{k}");
            if direct {
                let ind = induced_diass_inf(&rep, &hp, 3).unwrap();
                assert_eq!(ind.ops, GradedOps::from_diass(&induced_diass(&c), 3).ops, "{name} #{k}");
            } else {
                assert!(induced_diass_inf(&rep, &hp, 3).is_err());
            }
        }
    }
    // verifiers agree with the classical ones on random products
    for k in 0..10 {
        let mu = BilinearMap::from_fn(2, 2, 2, |_, _| random::vector(&mut rng, 2));
        let a = if k < 3 { AlgebraData::truncated_polynomial(2) } else { AlgebraData::new(2, mu.clone()).unwrap() };
        assert_eq!(verify_ainf(&GradedOps::from_associative(&a, 3), 3).unwrap().is_valid(), verify_associative(&a).is_valid());
        let d = if k < 3 {
            diass_shipping()[k].1.clone()
        } else {
            DiassData::new(2, mu, BilinearMap::from_fn(2, 2, 2, |_, _| random::vector(&mut rng, 2))).unwrap()
        };
        assert_eq!(verify_diass_inf(&GradedOps::from_diass(&d, 3), 3).unwrap().is_valid(), verify_diass(&d).is_valid());
    }
}

#[test]
fn ungraded_quotient_matches_the_diass_quotient() {
    for (name, d) in diass_shipping() {
        let qa = quotient_ainf(&GradedOps::from_diass(&d, 3), 3).unwrap();
        assert!(qa.report.is_valid(), "{name}: {:?}", qa.report.first_violation());
        let qr = quotient_ravg(&d).unwrap();
        assert_eq!(qa.ideal.len(), qr.ideal.len(), "{name}");
        assert_eq!(qa.section, qr.section, "{name}");
        assert_eq!(qa.q, qr.ravg.p, "{name}");
        assert_eq!(qa.rep.base.mu(2), Multilinear::from_bilinear(&qr.ravg.a.mu), "{name}");
        assert_eq!(qa.rep.eta(2, 0), Multilinear::from_bilinear(&qr.ravg.m.right), "{name}");
        assert_eq!(qa.rep.eta(2, 1), Multilinear::from_bilinear(&qr.ravg.m.left), "{name}");
    }
    // tree-independent π: nothing to divide out
    let mut rng = random::rng(514);
    let b = random_ainf(&mut rng, &GradedSpace::from_dims(-1, &[1, 1]), 3);
    let d = GradedOps { kind: OpsKind::DiassInfinity, ..b.clone() };
    let q = quotient_ainf(&d, 3).unwrap();
    assert!(q.ideal.is_empty() && q.report.is_valid());
    assert_eq!(q.rep.base.ops, b.ops);
    let z = quotient_ainf(&GradedOps::zero(OpsKind::DiassInfinity, GradedSpace::concentrated(2, 0), 3), 3).unwrap();
    assert!(z.ideal.is_empty());
}

#[test]
fn homotopy_linf_sum_matches_the_exponential_check() {
    let mut rng = random::rng(515);
    let a = GradedSpace::from_dims(-2, &[1, 1, 1]);
    for i in 0..8 {
        let base = random_ainf(&mut rng, &a, 3);
        let rep = AInfRep::adjoint(&base).unwrap();
        let p = match i % 4 {
            0 => HomotopyOperator::zero(3, 3, 3),
            1 => HomotopyOperator::strict(&Matrix::identity(3).scale(&frac(i as i64 + 1, 2)), 3),
            _ => {
                let mut p = HomotopyOperator::zero(3, 3, 3);
                for k in 1..=2 {
                    let c = random_graded_cochain(&mut rng, &a, k, 0, false);
                    p.parts[k - 1] = c;
                }
                p
            }
        };
        let l = homotopy_linf(&rep, 3);
        assert!(l.0.check().unwrap().is_valid());
        let x = homotopy_element(&p, &rep, 3).unwrap();
        let s = mc_sum(&l, &x, 5).unwrap();
        let ok = homotopy_ravg_check(&rep, &p, 3).unwrap().is_valid();
        assert_eq!(s.is_zero(), ok, "instance {i}");
        if i % 4 < 2 {
            assert!(ok, "instance {i}");
        }
        // L∞ identities of the derived structure
        let y = homotopy_element(&HomotopyOperator { parts: vec![random_graded_cochain(&mut rng, &a, 1, 0, false), Cochain::zero(2, 3, 3), Cochain::zero(3, 3, 3)] }, &rep, 3).unwrap();
        for n in 1..=3 {
            let xs = vec![x.clone(), y.clone(), x.clone()];
            assert!(l.is_zero(&linf_jacobi(&l, &xs[..n]).unwrap()), "instance {i}, n = {n}");
        }
    }
}

/// A chain map `P` with `d_A P = P d_M`, solved degree by degree.
fn chain_map<R: Rng>(rng: &mut R, da_: &Matrix, dm_: &Matrix, a: &GradedSpace, m: &GradedSpace) -> Matrix {
    let vars: Vec<(usize, usize)> = (0..a.dim())
        .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.degs[i] == m.degs[j])
        .collect();
    let mut sys = Matrix::zeros(a.dim() * m.dim(), vars.len());
    for (v, &(i, j)) in vars.iter().enumerate() {
        // d_A E_ij − E_ij d_M
        for r in 0..a.dim() {
            let x = da_.get(r, i).clone();
            let cur = sys.get(r * m.dim() + j, v).clone();
            sys.set(r * m.dim() + j, v, cur + x);
        }
        for c in 0..m.dim() {
            let x = dm_.get(j, c).clone();
            let cur = sys.get(i * m.dim() + c, v).clone();
            sys.set(i * m.dim() + c, v, cur - x);
        }
    }
    let ker = kernel_basis(&sys);
    let coeffs = random::combination(rng, &ker, vars.len());
    let mut p = Matrix::zeros(a.dim(), m.dim());
    for (v, &(i, j)) in vars.iter().enumerate() {
        p.set(i, j, coeffs[v].clone());
    }
    p
}

fn strict_induced_formula(rep: &AInfRep, p: &Matrix, ind: &GradedOps, k: usize) {
    let tab = table(k);
    let dm = rep.dm();
    let pu: Vec<Vector> = (0..dm).map(|u| p.column(u)).collect();
    let part = ind.ops.part(k);
    let mut ix = vec![0; k];
    for t in 0..tab.len() {
        let i = tab.split[t] - 1;
        let eta = rep.eta(k, i);
        for u in 0..part.num_tuples() {
            part.decode_into(u, &mut ix);
            let e = diassocle::linalg::unit(dm, ix[i]);
            let args: Vec<&[Scalar]> = (0..k).map(|s| if s == i { e.as_slice() } else { pu[ix[s]].as_slice() }).collect();
            assert_eq!(part.get(t, u), eta.eval(&args).as_slice(), "arity {k}, tree {t}, inputs {ix:?}");
        }
    }
}

#[test]
fn strict_graded_operators() {
    let mut rng = random::rng(516);
    let a = GradedSpace::from_dims(-2, &[1, 2, 1]);
    let m = GradedSpace::from_dims(-2, &[1, 1, 1]);
    // μ_1 and η_1 only; P a chain map
    for _ in 0..4 {
        let (xa, xm) = (random_differential(&mut rng, &a), random_differential(&mut rng, &m));
        let ml = |x: &Matrix, d: usize| Multilinear::from_fn(&[d], d, |ix| x.column(ix[0]));
        let zero = |dims: &[usize], t: usize| Multilinear::zero(dims, t);
        let base = GradedOps::ainf(a.clone(), &[ml(&xa, 4), zero(&[4, 4], 4), zero(&[4, 4, 4], 4)]).unwrap();
        let eta = vec![vec![ml(&xm, 3)], vec![zero(&[3, 4], 3), zero(&[4, 3], 3)], vec![]];
        let rep = AInfRep::new(&base, m.clone(), &eta).unwrap();
        assert!(verify_ainf_rep(&rep, 3).unwrap().is_valid());
        let p = chain_map(&mut rng, &xa, &xm, &a, &m);
        assert!(strict_operator_check(&rep, &p, 3).unwrap().is_valid());
        let hp = HomotopyOperator::strict(&p, 3);
        assert!(homotopy_ravg_check(&rep, &hp, 3).unwrap().is_valid());
        let ind = induced_diass_inf(&rep, &hp, 3).unwrap();
        assert!(verify_diass_inf(&ind, 3).unwrap().is_valid());
        for k in 1..=3 {
            strict_induced_formula(&rep, &p, &ind, k);
        }
    }
    // P = λ·id on the adjoint representation of a random A∞-algebra
    for lam in [int(1), int(2), frac(-1, 3)] {
        let base = random_ainf(&mut rng, &a, 3);
        let rep = AInfRep::adjoint(&base).unwrap();
        let p = Matrix::identity(4).scale(&lam);
        assert!(strict_operator_check(&rep, &p, 3).unwrap().is_valid());
        let hp = HomotopyOperator::strict(&p, 3);
        let ind = induced_diass_inf(&rep, &hp, 3).unwrap();
        assert!(verify_diass_inf(&ind, 3).unwrap().is_valid());
        for k in 1..=3 {
            strict_induced_formula(&rep, &p, &ind, k);
        }
    }
    // P = 0: only the differential of M survives
    let base = random_ainf(&mut rng, &a, 3);
    let rep = AInfRep::adjoint(&base).unwrap();
    let ind = induced_diass_inf(&rep, &HomotopyOperator::zero(3, 4, 4), 3).unwrap();
    assert_eq!(ind.ops.part(1), base.ops.part(1));
    assert!(ind.ops.part(2).is_zero() && ind.ops.part(3).is_zero());
}
