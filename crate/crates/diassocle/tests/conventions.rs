use diassocle::algebra::{verify_diass, BilinearMap, verify_relative_averaging, DiassData, DiassRepData, RAvgAlgebra};
use diassocle::cochain::{
    d_p, delta_diass, delta_diass_p, delta_diass_with, mm_bracket, operator_rep, theta, Cochain, DerivedBracket, StarConvention,
};
use diassocle::cohomology::{betti, diass_complex, operator_complex};
use diassocle::constructions::induced_diass;
use diassocle::instances::{diass_shipping, shipping};
use diassocle::linalg::{int, Matrix, Scalar};
use diassocle::random;
use proptest::prelude::*;

fn sign(n: usize) -> Scalar {
    if n % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn basis(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| diassocle::linalg::unit(n, i)).collect()
}

/// `P(u)P(v) = P(P(u)v) = P(uP(v))` on basis vectors, computed directly.
fn averaging_oracle(r: &RAvgAlgebra) -> bool {
    let p = |u: &[Scalar]| r.p.apply(u);
    basis(r.m.dim).iter().all(|u| {
        basis(r.m.dim).iter().all(|v| {
            let lhs = r.a.mul(&p(u), &p(v));
            lhs == p(&r.m.act_right(u, &p(v))) && lhs == p(&r.m.act_left(&p(u), v))
        })
    })
}

/// The five diassociative identities, written out.
fn diass_oracle(d: &DiassData) -> bool {
    use diassocle::trees::Star::{Left as L, Right as R};
    let m = |s, x: &[Scalar], y: &[Scalar]| d.mul(s, x, y);
    let e = basis(d.dim);
    e.iter().all(|x| {
        e.iter().all(|y| {
            e.iter().all(|z| {
                let a = m(L, &m(L, x, y), z);
                a == m(L, x, &m(L, y, z))
                    && a == m(L, x, &m(R, y, z))
                    && m(L, &m(R, x, y), z) == m(R, x, &m(L, y, z))
                    && m(R, &m(L, x, y), z) == m(R, x, &m(R, y, z))
                    && m(R, &m(R, x, y), z) == m(R, x, &m(R, y, z))
            })
        })
    })
}

fn small_cochain(arity: usize, src: usize, tgt: usize) -> impl Strategy<Value = Cochain> {
    let len = diassocle::trees::catalan(arity) * src.pow(arity as u32) * tgt;
    prop::collection::vec(-2i64..=2, len).prop_map(move |v| Cochain::from_data(arity, src, tgt, v.into_iter().map(int).collect()).unwrap())
}

fn fixture_index() -> impl Strategy<Value = usize> {
    0..shipping().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_diass_p_squares_to_zero(k in fixture_index(), n in 0usize..=2, seed in any::<u64>()) {
        let r = shipping().swap_remove(k).1;
        let f = random::cochain(&mut random::rng_from(seed, 1), n, r.m.dim, r.a.dim);
        let dd = delta_diass_p(&delta_diass_p(&f, &r).unwrap(), &r).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn d_p_squares_to_zero(k in fixture_index(), n in 0usize..=2, seed in any::<u64>()) {
        let r = shipping().swap_remove(k).1;
        let f = random::cochain(&mut random::rng_from(seed, 2), n, r.m.dim, r.a.dim);
        prop_assert!(d_p(&d_p(&f, &r).unwrap(), &r).unwrap().is_zero());
    }

    #[test]
    fn d_p_is_a_signed_diassociative_coboundary(k in fixture_index(), n in 0usize..=3, seed in any::<u64>()) {
        let r = shipping().swap_remove(k).1;
        let f = random::cochain(&mut random::rng_from(seed, 3), n, r.m.dim, r.a.dim);
        prop_assert_eq!(d_p(&f, &r).unwrap(), delta_diass_p(&f, &r).unwrap().scale(&sign(n)));
    }

    #[test]
    fn adjoint_delta_squares_to_zero(f in small_cochain(2, 2, 2), k in 0usize..4) {
        let d = diass_shipping().swap_remove(k).1;
        prop_assume!(d.dim == 2);
        let rep = DiassRepData::adjoint(&d);
        prop_assert!(delta_diass(&delta_diass(&f, &d, &rep).unwrap(), &d, &rep).unwrap().is_zero());
    }

    #[test]
    fn theta_intertwines_the_coboundaries(k in fixture_index(), n in 0usize..=2, seed in any::<u64>()) {
        let r = shipping().swap_remove(k).1;
        let mp = induced_diass(&r);
        let f = random::cochain(&mut random::rng_from(seed, 4), n, r.m.dim, r.a.dim);
        let lhs = theta(&delta_diass_p(&f, &r).unwrap(), &r).unwrap();
        let rhs = delta_diass(&theta(&f, &r).unwrap(), &mp, &DiassRepData::adjoint(&mp)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_is_a_bracket_morphism(k in fixture_index(), m in 0usize..=2, n in 0usize..=2, seed in any::<u64>()) {
        let r = shipping().swap_remove(k).1;
        let mut rng = random::rng_from(seed, 5);
        let f = random::cochain(&mut rng, m, r.m.dim, r.a.dim);
        let g = random::cochain(&mut rng, n, r.m.dim, r.a.dim);
        let lhs = mm_bracket(&theta(&f, &r).unwrap(), &theta(&g, &r).unwrap()).unwrap();
        let fg = DerivedBracket::new(&r.a, &r.m).bracket(&f, &g).unwrap();
        prop_assert_eq!(lhs, theta(&fg, &r).unwrap());
    }
}

#[test]
fn swapped_orientation_breaks_delta_squared() {
    let (_, d) = diass_shipping().swap_remove(0);
    let rep = DiassRepData::adjoint(&d);
    let mut rng = random::rng(11);
    let mut broken = 0;
    for _ in 0..10 {
        let f = random::cochain(&mut rng, 2, d.dim, d.dim);
        let sw = StarConvention::SwappedOrientation;
        let once = delta_diass_with(&f, &d, &rep, sw).unwrap();
        broken += !delta_diass_with(&once, &d, &rep, sw).unwrap().is_zero() as usize;
        let std = delta_diass(&delta_diass(&f, &d, &rep).unwrap(), &d, &rep).unwrap();
        assert!(std.is_zero());
    }
    assert!(broken > 0);
}

#[test]
fn derived_square_detects_averaging_operators() {
    let mut trues = 0;
    for (name, r) in shipping() {
        let mut rng = random::rng(12);
        let br = DerivedBracket::new(&r.a, &r.m);
        let mut cands: Vec<Matrix> = (0..40).map(|_| random::matrix(&mut rng, r.a.dim, r.m.dim)).collect();
        for lam in [int(0), int(1), int(-3), diassocle::linalg::frac(1, 2)] {
            cands.push(r.p.scale(&lam));
        }
        for p in cands {
            let c = r.with_operator(p.clone());
            let pp = Cochain::from_matrix(&p);
            let mc = br.bracket(&pp, &pp).unwrap().is_zero();
            let oracle = averaging_oracle(&c);
            assert_eq!(mc, oracle, "{name}: {p:?}");
            assert_eq!(verify_relative_averaging(&c).unwrap().is_valid(), oracle, "{name}");
            trues += oracle as usize;
        }
    }
    assert!(trues >= 20);
}

#[test]
fn mm_square_detects_diassociative_structures() {
    let mut trues = 0;
    for (name, d) in diass_shipping() {
        let mut rng = random::rng(13);
        let mut cands = vec![];
        for _ in 0..30 {
            let mut b = || BilinearMap::from_fn(d.dim, d.dim, d.dim, |_, _| random::vector(&mut rng, d.dim));
            let (l, r) = (b(), b());
            cands.push(DiassData::new(d.dim, l, r).unwrap());
        }
        for lam in [int(0), int(2), int(-1)] {
            cands.push(DiassData::new(d.dim, d.dashv.scale(&lam), d.vdash.scale(&lam)).unwrap());
        }
        cands.push(DiassData::new(d.dim, d.vdash.clone(), d.dashv.clone()).unwrap());
        for c in cands {
            let pi = Cochain::from_diass(&c);
            let mc = mm_bracket(&pi, &pi).unwrap().is_zero();
            let oracle = diass_oracle(&c);
            assert_eq!(mc, oracle, "{name}");
            assert_eq!(verify_diass(&c).is_valid(), oracle, "{name}");
            trues += oracle as usize;
        }
    }
    assert!(trues >= 12);
}

#[test]
fn operator_and_diassociative_cohomology_agree() {
    for (name, r) in shipping() {
        let a = operator_complex(&r, 3).unwrap();
        let b = diass_complex(&induced_diass(&r), &operator_rep(&r), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(betti(&a, n).unwrap().dim, betti(&b, n).unwrap().dim, "{name}, n = {n}");
        }
    }
}

#[test]
fn theta_in_low_degree_by_hand() {
    for (name, r) in shipping() {
        assert!(theta(&Cochain::zero(1, r.m.dim, r.a.dim), &r).unwrap().is_zero());
        let mut rng = random::rng(14);
        let a = random::vector(&mut rng, r.a.dim);
        let t = theta(&Cochain::element(&a), &r).unwrap();
        for u in 0..r.m.dim {
            let e = diassocle::linalg::unit(r.m.dim, u);
            let want = diassocle::linalg::vsub(&r.m.act_left(&a, &e), &r.m.act_right(&e, &a));
            assert_eq!(t.get(0, u), &want[..], "{name}");
        }
        let t1 = theta(&Cochain::from_matrix(&r.p), &r).unwrap();
        assert_eq!(t1, Cochain::from_diass(&induced_diass(&r)), "{name}");
    }
}
