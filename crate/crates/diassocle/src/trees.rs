//! Planar binary trees and their calculus: enumeration in canonical order,
//! grafting, face maps, ⋆-labels and the composition-tree maps used by the
//! tree-indexed partial compositions.
//!
//! Leaves of an n-tree are numbered `0..=n` from left to right.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest arity accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_ARITY: usize = 14;

/// Largest arity for which face/star/composition tables are cached.
pub const MAX_TABLE_ARITY: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlanarTree {
    Leaf,
    Node(Box<PlanarTree>, Box<PlanarTree>),
}

/// The two diassociative products, as labels on leaves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Star {
    /// ⊣
    Left,
    /// ⊢
    Right,
}

impl Star {
    pub fn symbol(self) -> &'static str {
        match self {
            Star::Left => "⊣",
            Star::Right => "⊢",
        }
    }

    pub fn flipped(self) -> Star {
        match self {
            Star::Left => Star::Right,
            Star::Right => Star::Left,
        }
    }
}

use PlanarTree::{Leaf, Node};

impl PlanarTree {
    pub fn leaf() -> Self {
        Leaf
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Leaf)
    }

    /// Number of internal vertices (the `n` of `Y_n`).
    pub fn vertices(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => l.vertices() + r.vertices() + 1,
        }
    }

    pub fn leaves(&self) -> usize {
        self.vertices() + 1
    }

    /// The unique decomposition `y = y₁ ∨ y₂` (None for the bare root).
    pub fn ungraft(&self) -> Option<(&PlanarTree, &PlanarTree)> {
        match self {
            Leaf => None,
            Node(l, r) => Some((l, r)),
        }
    }

    /// Split index `i` of `y = y₁ ∨ y₂` with `y₁ ∈ Y_{i−1}`.
    pub fn split_index(&self) -> Option<usize> {
        self.ungraft().map(|(l, _)| l.vertices() + 1)
    }

    /// Remove leaf `i` and contract its parent (the face map `d_i`).
    pub fn face(&self, i: usize) -> Result<PlanarTree> {
        let n = self.vertices();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!(
                "face d_{i} on a tree with {n} vertices"
            )));
        }
        Ok(face_rec(self, i))
    }

    /// ⋆-label at leaf position `i`.
    pub fn star(&self, i: usize) -> Result<Star> {
        let n = self.vertices();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!(
                "star ⋆_{i} on a tree with {n} vertices"
            )));
        }
        let (l, r) = self.ungraft().expect("n >= 1");
        Ok(if i == 0 {
            if l.is_leaf() {
                Star::Left
            } else {
                Star::Right
            }
        } else if i == n {
            if r.is_leaf() {
                Star::Right
            } else {
                Star::Left
            }
        } else if leaf_is_left_child(self, i) {
            Star::Left
        } else {
            Star::Right
        })
    }

    /// Whether leaf `i` is the left child of its parent.
    pub fn leaf_is_left_child(&self, i: usize) -> Result<bool> {
        let n = self.vertices();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("leaf {i} of an {n}-tree")));
        }
        Ok(leaf_is_left_child(self, i))
    }

    /// Canonical index inside `Y_n`.
    pub fn index(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => {
                let n = self.vertices();
                let k = l.vertices();
                let offset: usize = (0..k).map(|j| catalan(j) * catalan(n - 1 - j)).sum();
                offset + l.index() * catalan(n - 1 - k) + r.index()
            }
        }
    }

    /// Inverse of [`PlanarTree::index`].
    pub fn from_index(n: usize, mut idx: usize) -> Result<PlanarTree> {
        if n > MAX_ENUMERATION_ARITY || idx >= catalan(n) {
            return Err(Error::IndexOutOfRange(format!("tree index {idx} in Y_{n}")));
        }
        if n == 0 {
            return Ok(Leaf);
        }
        for k in 0..n {
            let block = catalan(k) * catalan(n - 1 - k);
            if idx < block {
                let right_count = catalan(n - 1 - k);
                let l = PlanarTree::from_index(k, idx / right_count)?;
                let r = PlanarTree::from_index(n - 1 - k, idx % right_count)?;
                return Ok(graft(l, r));
            }
            idx -= block;
        }
        unreachable!("index bounded by the Catalan number")
    }

    /// Parse the balanced-parenthesis form: `•` or `(L R)`.
    pub fn parse(s: &str) -> Result<PlanarTree> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let t = parse_rec(&chars, &mut pos)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in tree string {s:?}")));
        }
        Ok(t)
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => write!(f, "•"),
            Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Leaf, Leaf) => Ordering::Equal,
            _ => self
                .vertices()
                .cmp(&other.vertices())
                .then_with(|| match (self, other) {
                    (Node(l1, r1), Node(l2, r2)) => l1
                        .vertices()
                        .cmp(&l2.vertices())
                        .then_with(|| l1.cmp(l2))
                        .then_with(|| r1.cmp(r2)),
                    _ => Ordering::Equal,
                }),
        }
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn graft(y1: PlanarTree, y2: PlanarTree) -> PlanarTree {
    Node(Box::new(y1), Box::new(y2))
}

/// Catalan number `(2n)! / ((n+1)! n!)`.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as usize
}

/// All trees of `Y_n` in canonical order.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlanarTree>> {
    if n > MAX_ENUMERATION_ARITY {
        return Err(Error::Resource(format!(
            "refusing to enumerate Y_{n}: arity above {MAX_ENUMERATION_ARITY}"
        )));
    }
    Ok(enumerate_rec(n))
}

fn enumerate_rec(n: usize) -> Vec<PlanarTree> {
    if n == 0 {
        return vec![Leaf];
    }
    let mut out = Vec::with_capacity(catalan(n));
    for k in 0..n {
        let lefts = enumerate_rec(k);
        let rights = enumerate_rec(n - 1 - k);
        for l in &lefts {
            for r in &rights {
                out.push(graft(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// `(R₀^{m;i,n}(y), R_i^{m;i,n}(y))` for `y ∈ Y_{m+n−1}`.
pub fn comp_trees(m: usize, i: usize, n: usize, y: &PlanarTree) -> Result<(PlanarTree, PlanarTree)> {
    if m == 0 || n == 0 || i == 0 || i > m || y.vertices() != m + n - 1 {
        return Err(Error::ArityMismatch(format!(
            "comp_trees(m={m}, i={i}, n={n}) on a {}-tree",
            y.vertices()
        )));
    }
    // outer: d_i ∘ ⋯ ∘ d_{i+n−2}, rightmost first
    let mut outer = y.clone();
    for j in (i..=i + n - 2).rev() {
        outer = outer.face(j)?;
    }
    // inner: d_0 ∘ ⋯ ∘ d_{i−2} ∘ d_{i+n} ∘ ⋯ ∘ d_{m+n−1}, rightmost first
    let mut inner = y.clone();
    for j in (i + n..=m + n - 1).rev() {
        inner = inner.face(j)?;
    }
    for j in (0..i.saturating_sub(1)).rev() {
        inner = inner.face(j)?;
    }
    Ok((outer, inner))
}

fn face_rec(t: &PlanarTree, i: usize) -> PlanarTree {
    match t {
        Leaf => unreachable!("faces are taken on nodes"),
        Node(l, r) => {
            let nl = l.leaves();
            if i < nl {
                if l.is_leaf() {
                    (**r).clone()
                } else {
                    graft(face_rec(l, i), (**r).clone())
                }
            } else if r.is_leaf() {
                (**l).clone()
            } else {
                graft((**l).clone(), face_rec(r, i - nl))
            }
        }
    }
}

fn leaf_is_left_child(t: &PlanarTree, i: usize) -> bool {
    match t {
        Leaf => unreachable!("leaf parent lookup on a node"),
        Node(l, r) => {
            let nl = l.leaves();
            if i < nl {
                l.is_leaf() || leaf_is_left_child(l, i)
            } else {
                !r.is_leaf() && leaf_is_left_child(r, i - nl)
            }
        }
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_rec(chars: &[char], pos: &mut usize) -> Result<PlanarTree> {
    skip_ws(chars, pos);
    match chars.get(*pos) {
        Some('•') | Some('|') => {
            *pos += 1;
            Ok(Leaf)
        }
        Some('(') => {
            *pos += 1;
            let l = parse_rec(chars, pos)?;
            let r = parse_rec(chars, pos)?;
            skip_ws(chars, pos);
            if chars.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("expected ')' at offset {}", *pos)));
            }
            *pos += 1;
            Ok(graft(l, r))
        }
        other => Err(Error::Parse(format!(
            "unexpected {:?} at offset {} in tree string",
            other, *pos
        ))),
    }
}

/// Precomputed face/star/split data for every tree of one arity.
pub struct ArityTable {
    pub arity: usize,
    pub trees: Vec<PlanarTree>,
    /// `faces[t][i]` = index of `d_i(y_t)` in `Y_{n−1}`.
    pub faces: Vec<Vec<usize>>,
    /// `stars[t][i]` = `⋆_i` of `y_t`.
    pub stars: Vec<Vec<Star>>,
    /// `leaf_left[t][i]` = whether leaf `i` of `y_t` is a left child.
    pub leaf_left: Vec<Vec<bool>>,
    /// split index of each tree (0 for the bare root).
    pub split: Vec<usize>,
    /// whether `y = | ∨ y₁` and `y = y₁ ∨ |`, with the index of `y₁`.
    pub left_leaf_graft: Vec<Option<usize>>,
    pub right_leaf_graft: Vec<Option<usize>>,
    comps: OnceLock<Vec<Vec<Vec<(usize, usize)>>>>,
}

impl ArityTable {
    fn build(n: usize) -> ArityTable {
        let trees = enumerate_rec(n);
        let mut faces = Vec::with_capacity(trees.len());
        let mut stars = Vec::with_capacity(trees.len());
        let mut leaf_left = Vec::with_capacity(trees.len());
        let mut split = Vec::with_capacity(trees.len());
        let mut lg = Vec::with_capacity(trees.len());
        let mut rg = Vec::with_capacity(trees.len());
        for t in &trees {
            if n == 0 {
                faces.push(vec![]);
                stars.push(vec![]);
                leaf_left.push(vec![]);
                split.push(0);
                lg.push(None);
                rg.push(None);
                continue;
            }
            faces.push((0..=n).map(|i| face_rec(t, i).index()).collect());
            stars.push((0..=n).map(|i| t.star(i).expect("in range")).collect());
            leaf_left.push((0..=n).map(|i| leaf_is_left_child(t, i)).collect());
            split.push(t.split_index().expect("n >= 1"));
            let (l, r) = t.ungraft().expect("n >= 1");
            lg.push(l.is_leaf().then(|| r.index()));
            rg.push(r.is_leaf().then(|| l.index()));
        }
        ArityTable {
            arity: n,
            trees,
            faces,
            stars,
            leaf_left,
            split,
            left_leaf_graft: lg,
            right_leaf_graft: rg,
            comps: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// `comps(m, i)[t]` = (outer index in Y_m, inner index in Y_n) with
    /// `n = arity + 1 − m`.
    pub fn comps(&self, m: usize, i: usize) -> &[(usize, usize)] {
        let s = self.arity;
        let all = self.comps.get_or_init(|| {
            let mut by_m = vec![Vec::new(); s + 2];
            for (m, slot) in by_m.iter_mut().enumerate().take(s + 1).skip(1) {
                let n = s + 1 - m;
                let mut by_i = vec![Vec::new(); m + 1];
                for (i, row) in by_i.iter_mut().enumerate().skip(1) {
                    *row = self
                        .trees
                        .iter()
                        .map(|y| {
                            let (o, inn) = comp_trees(m, i, n, y).expect("valid arities");
                            (o.index(), inn.index())
                        })
                        .collect();
                }
                *slot = by_i;
            }
            by_m
        });
        &all[m][i]
    }
}

/// Cached tables for arity `n ≤ MAX_TABLE_ARITY`.
pub fn table(n: usize) -> &'static ArityTable {
    static TABLES: [OnceLock<ArityTable>; MAX_TABLE_ARITY + 1] =
        [const { OnceLock::new() }; MAX_TABLE_ARITY + 1];
    assert!(
        n <= MAX_TABLE_ARITY,
        "tree tables are cached only up to arity {MAX_TABLE_ARITY}"
    );
    TABLES[n].get_or_init(|| ArityTable::build(n))
}
