use std::collections::BTreeSet;

use diassocle::trees::{catalan, comp_trees, enumerate_trees, graft, table, PlanarTree, Star};
use proptest::prelude::*;

/// A tree as the leaf intervals `[a, b]` spanned by its internal vertices.
fn intervals(y: &PlanarTree) -> BTreeSet<(usize, usize)> {
    fn go(y: &PlanarTree, start: usize, out: &mut BTreeSet<(usize, usize)>) -> usize {
        match y.ungraft() {
            None => start + 1,
            Some((l, r)) => {
                let mid = go(l, start, out);
                let end = go(r, mid, out);
                out.insert((start, end - 1));
                end
            }
        }
    }
    let mut out = BTreeSet::new();
    go(y, 0, &mut out);
    out
}

/// Delete leaf `i`: shrink every interval, drop those that became a leaf.
fn face_oracle(iv: &BTreeSet<(usize, usize)>, i: usize) -> BTreeSet<(usize, usize)> {
    let shift = |x: usize| if x > i { x - 1 } else { x };
    iv.iter()
        .filter_map(|&(a, b)| {
            let (a2, b2) = if a == i {
                (a, shift(b))
            } else if b == i {
                (a, b - 1)
            } else {
                (shift(a), shift(b))
            };
            (b2 > a2).then_some((a2, b2))
        })
        .collect()
}

fn star_oracle(iv: &BTreeSet<(usize, usize)>, n: usize, i: usize) -> Star {
    let root_left_is_leaf = iv.iter().filter(|&&(a, _)| a == 0).count() == 1;
    let root_right_is_leaf = iv.iter().filter(|&&(_, b)| b == n).count() == 1;
    if i == 0 {
        return if root_left_is_leaf { Star::Left } else { Star::Right };
    }
    if i == n {
        return if root_right_is_leaf { Star::Right } else { Star::Left };
    }
    let parent = iv
        .iter()
        .filter(|&&(a, b)| a <= i && i <= b)
        .min_by_key(|&&(a, b)| b - a)
        .expect("the root contains every leaf");
    if parent.0 == i {
        Star::Left
    } else {
        Star::Right
    }
}

#[test]
fn catalan_counts_up_to_ten() {
    let mut c = vec![1usize];
    for n in 1..=10 {
        c.push((0..n).map(|k| c[k] * c[n - 1 - k]).sum());
    }
    assert_eq!(c, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]);
    for n in 0..=10 {
        assert_eq!(enumerate_trees(n).unwrap().len(), c[n], "n = {n}");
        assert_eq!(catalan(n), c[n]);
    }
}

#[test]
fn enumeration_is_duplicate_free_and_indexed() {
    for n in 0..=7 {
        let ys = enumerate_trees(n).unwrap();
        let set: BTreeSet<String> = ys.iter().map(|y| y.to_string()).collect();
        assert_eq!(set.len(), ys.len());
        for (k, y) in ys.iter().enumerate() {
            assert_eq!(y.vertices(), n);
            assert_eq!(y.index(), k);
            assert_eq!(&PlanarTree::from_index(n, k).unwrap(), y);
        }
    }
}

#[test]
fn face_identity_on_y4_and_y5() {
    for n in [4, 5] {
        for y in enumerate_trees(n).unwrap() {
            for j in 0..n {
                for i in 0..=j {
                    let lhs = y.face(i).unwrap().face(j).unwrap();
                    let rhs = y.face(j + 1).unwrap().face(i).unwrap();
                    assert_eq!(lhs, rhs, "{y}: d_{j} d_{i} vs d_{i} d_{}", j + 1);
                }
            }
        }
    }
}

#[test]
fn faces_and_stars_match_the_interval_model() {
    for n in 1..=6 {
        for y in enumerate_trees(n).unwrap() {
            let iv = intervals(&y);
            assert_eq!(iv.len(), n);
            for i in 0..=n {
                assert_eq!(intervals(&y.face(i).unwrap()), face_oracle(&iv, i), "{y}, d_{i}");
                assert_eq!(y.star(i).unwrap(), star_oracle(&iv, n, i), "{y}, ⋆_{i}");
            }
            assert!(y.face(n + 1).is_err());
        }
    }
}

#[test]
fn tables_agree_with_the_tree_methods() {
    for n in 1..=6 {
        let t = table(n);
        for (k, y) in t.trees.iter().enumerate() {
            assert_eq!(t.split[k], y.split_index().unwrap());
            for i in 0..=n {
                assert_eq!(t.faces[k][i], y.face(i).unwrap().index());
                assert_eq!(t.stars[k][i], y.star(i).unwrap());
            }
        }
    }
}

#[test]
fn small_arities_by_hand() {
    let l = PlanarTree::leaf;
    let y = graft(l(), l());
    assert_eq!(y.to_string(), "(• •)");
    assert_eq!((y.star(0).unwrap(), y.star(1).unwrap()), (Star::Left, Star::Right));
    let right = graft(l(), graft(l(), l()));
    let left = graft(graft(l(), l()), l());
    assert_eq!(right.split_index(), Some(1));
    assert_eq!(left.split_index(), Some(2));
    let stars = |y: &PlanarTree| (0..=2).map(|i| y.star(i).unwrap()).collect::<Vec<_>>();
    assert_eq!(stars(&right), [Star::Left; 3]);
    assert_eq!(stars(&left), [Star::Right; 3]);
}

#[test]
fn composition_trees_have_the_right_arities() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)] {
        for i in 1..=m {
            for y in enumerate_trees(m + n - 1).unwrap() {
                let (outer, inner) = comp_trees(m, i, n, &y).unwrap();
                assert_eq!((outer.vertices(), inner.vertices()), (m, n), "m={m} i={i} n={n} {y}");
            }
        }
        assert!(comp_trees(m, m + 1, n, &enumerate_trees(m + n - 1).unwrap()[0]).is_err());
    }
}

fn tree_strategy() -> impl Strategy<Value = PlanarTree> {
    let leaf = Just(PlanarTree::leaf());
    leaf.prop_recursive(6, 32, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| graft(a, b)))
}

proptest! {
    #[test]
    fn display_and_parse_round_trip(y in tree_strategy()) {
        let s = y.to_string();
        prop_assert_eq!(PlanarTree::parse(&s).unwrap(), y.clone());
        prop_assert_eq!(PlanarTree::parse(&s.replace('•', "|")).unwrap(), y);
    }

    #[test]
    fn faces_lower_the_arity(y in tree_strategy()) {
        let n = y.vertices();
        prop_assume!(n >= 1);
        for i in 0..=n {
            let f = y.face(i).unwrap();
            prop_assert_eq!(f.vertices(), n - 1);
            prop_assert_eq!(intervals(&f), face_oracle(&intervals(&y), i));
        }
    }
}
