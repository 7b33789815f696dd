//! Graded spaces, Koszul signs and the graded Majumdar–Mukherjee bracket on
//! `CY^•(D, D) = Hom(𝐤[Ȳ] ⊗ T̄(D), D)`, truncated in arity.

use num_traits::Zero;

use crate::cochain::{circ_i, Cochain};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// A finite-dimensional graded space, given by the degree of each basis
/// vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    pub degs: Vec<i64>,
}

impl GradedSpace {
    pub fn new(degs: Vec<i64>) -> GradedSpace {
        GradedSpace { degs }
    }

    /// `dims[j]` basis vectors in degree `d_min + j`.
    pub fn from_dims(d_min: i64, dims: &[usize]) -> GradedSpace {
        let degs = dims
            .iter()
            .enumerate()
            .flat_map(|(j, &n)| std::iter::repeat_n(d_min + j as i64, n))
            .collect();
        GradedSpace { degs }
    }

    pub fn concentrated(dim: usize, degree: i64) -> GradedSpace {
        GradedSpace { degs: vec![degree; dim] }
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.degs.iter().min()?, *self.degs.iter().max()?))
    }

    pub fn dims_by_degree(&self) -> Vec<(i64, usize)> {
        let Some((lo, hi)) = self.range() else { return vec![] };
        (lo..=hi)
            .map(|d| (d, self.degs.iter().filter(|&&x| x == d).count()))
            .collect()
    }

    pub fn direct_sum(&self, o: &GradedSpace) -> GradedSpace {
        GradedSpace {
            degs: self.degs.iter().chain(&o.degs).copied().collect(),
        }
    }

    /// The basis indices of degree `d`.
    pub fn indices_of(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degs[i] == d).collect()
    }

    pub fn tuple_degree(&self, ix: &[usize]) -> i64 {
        ix.iter().map(|&i| self.degs[i]).sum()
    }
}

pub(crate) fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

pub(crate) fn sign_of(odd_: bool) -> Scalar {
    if odd_ {
        -Scalar::from_integer(1.into())
    } else {
        Scalar::from_integer(1.into())
    }
}

/// The Koszul sign `ε(σ)` in `x_{σ(1)} ⊗ ⋯ ⊗ x_{σ(n)} = ε(σ) x_1 ⊗ ⋯ ⊗ x_n`
/// (as a rule for moving graded symbols; `σ` is 0-based).
pub fn koszul_sign(degs: &[i64], sigma: &[usize]) -> i64 {
    let mut flip = false;
    for p in 0..sigma.len() {
        for q in p + 1..sigma.len() {
            if sigma[p] > sigma[q] && odd(degs[sigma[p]]) && odd(degs[sigma[q]]) {
                flip = !flip;
            }
        }
    }
    if flip {
        -1
    } else {
        1
    }
}

/// All `(i, n−i)`-unshuffles: `σ(0) < ⋯ < σ(i−1)` and `σ(i) < ⋯ < σ(n−1)`.
pub fn unshuffles(i: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut s = cur.clone();
            s.extend((0..n).filter(|x| !cur.contains(x)));
            out.push(s);
            return;
        }
        for x in start..n {
            if n - x < left {
                break;
            }
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if i <= n {
        rec(0, n, i, &mut vec![], &mut out);
    }
    out
}

/// A homogeneous element of `CY^degree(D, D)`: `parts[k−1]` is the arity-`k`
/// component, up to the truncation arity `parts.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCochain {
    pub degree: i64,
    pub dim: usize,
    pub parts: Vec<Cochain>,
}

impl GradedCochain {
    pub fn zero(dim: usize, max_arity: usize, degree: i64) -> GradedCochain {
        GradedCochain {
            degree,
            dim,
            parts: (1..=max_arity).map(|k| Cochain::zero(k, dim, dim)).collect(),
        }
    }

    pub fn from_parts(degree: i64, dim: usize, parts: Vec<Cochain>) -> Result<GradedCochain> {
        for (j, p) in parts.iter().enumerate() {
            if p.arity != j + 1 || p.src != dim || p.tgt != dim {
                return Err(Error::DimensionMismatch(format!("graded component of arity {}", j + 1)));
            }
        }
        Ok(GradedCochain { degree, dim, parts })
    }

    pub fn max_arity(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, k: usize) -> &Cochain {
        &self.parts[k - 1]
    }

    pub fn part_mut(&mut self, k: usize) -> &mut Cochain {
        &mut self.parts[k - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Cochain::is_zero)
    }

    fn zip(&self, o: &GradedCochain, c: &Scalar) -> GradedCochain {
        assert_eq!(self.dim, o.dim, "graded cochains on different spaces");
        let k = self.max_arity().max(o.max_arity());
        let mut out = GradedCochain::zero(self.dim, k, self.degree);
        for (j, p) in out.parts.iter_mut().enumerate() {
            if let Some(x) = self.parts.get(j) {
                p.add_scaled(&Scalar::from_integer(1.into()), x);
            }
            if let Some(y) = o.parts.get(j) {
                p.add_scaled(c, y);
            }
        }
        out
    }

    pub fn add(&self, o: &GradedCochain) -> GradedCochain {
        self.zip(o, &Scalar::from_integer(1.into()))
    }

    pub fn sub(&self, o: &GradedCochain) -> GradedCochain {
        self.zip(o, &-Scalar::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Scalar) -> GradedCochain {
        GradedCochain {
            degree: self.degree,
            dim: self.dim,
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn truncate(&self, k: usize) -> GradedCochain {
        let mut out = GradedCochain::zero(self.dim, k, self.degree);
        for (j, p) in self.parts.iter().take(k).enumerate() {
            out.parts[j] = p.clone();
        }
        out
    }

    /// First entry breaking `|output| = |inputs| + degree`, if any.
    pub fn degree_violation(&self, space: &GradedSpace) -> Option<String> {
        if space.dim() != self.dim {
            return Some("graded space has the wrong dimension".into());
        }
        for p in &self.parts {
            let mut ix = vec![0; p.arity];
            for t in 0..p.num_trees() {
                for tup in 0..p.num_tuples() {
                    p.decode_into(tup, &mut ix);
                    let want = space.tuple_degree(&ix) + self.degree;
                    for (o, x) in p.get(t, tup).iter().enumerate() {
                        if !x.is_zero() && space.degs[o] != want {
                            return Some(format!(
                                "arity {}, tree {t}, inputs {ix:?} → e{o}: degree {} ≠ {want}",
                                p.arity, space.degs[o]
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn check_degree(&self, space: &GradedSpace) -> Result<()> {
        match self.degree_violation(space) {
            Some(s) => Err(Error::InvalidStructure(format!("degree bookkeeping: {s}"))),
            None => Ok(()),
        }
    }

    pub fn is_tree_independent(&self) -> bool {
        self.parts.iter().all(|p| (1..p.num_trees()).all(|t| (0..p.num_tuples()).all(|u| p.get(t, u) == p.get(0, u))))
    }
}

/// `f ∘_i g` with the Koszul sign `(−1)^{|g|(|a_1|+⋯+|a_{i−1}|)}`.
pub fn graded_circ(f: &Cochain, g: &Cochain, i: usize, g_degree: i64, space: &GradedSpace) -> Result<Cochain> {
    let mut c = circ_i(f, g, i)?;
    if odd(g_degree) && i > 1 {
        let mut ix = vec![0; c.arity];
        for tup in 0..c.num_tuples() {
            c.decode_into(tup, &mut ix);
            if odd(space.tuple_degree(&ix[..i - 1])) {
                for t in 0..c.num_trees() {
                    for x in c.get_mut(t, tup) {
                        *x = -std::mem::take(x);
                    }
                }
            }
        }
    }
    Ok(c)
}

/// `f ⋄ g = Σ_i f ∘_i g` with Koszul signs.
pub fn diamond(f: &Cochain, g: &Cochain, g_degree: i64, space: &GradedSpace) -> Result<Cochain> {
    let mut out = Cochain::zero(f.arity + g.arity - 1, f.src, f.tgt);
    if f.is_zero() || g.is_zero() {
        return Ok(out);
    }
    for i in 1..=f.arity {
        out.add_scaled(&Scalar::from_integer(1.into()), &graded_circ(f, g, i, g_degree, space)?);
    }
    Ok(out)
}

/// `{[x, y]} = Σ x_k ⋄ y_l − (−1)^{|x||y|} y_l ⋄ x_k`, truncated at arity
/// `max_arity`. No degree checks; see [`graded_mm_bracket`].
pub(crate) fn bracket_unchecked(x: &GradedCochain, y: &GradedCochain, space: &GradedSpace, max_arity: usize) -> Result<GradedCochain> {
    let mut out = GradedCochain::zero(x.dim, max_arity, x.degree + y.degree);
    let back = -sign_of(odd(x.degree) && odd(y.degree));
    for (k, f) in (1..).zip(&x.parts) {
        if f.is_zero() {
            continue;
        }
        for (l, g) in (1..).zip(&y.parts) {
            if k + l - 1 > max_arity || g.is_zero() {
                continue;
            }
            let p = out.part_mut(k + l - 1);
            p.add_scaled(&Scalar::from_integer(1.into()), &diamond(f, g, y.degree, space)?);
            p.add_scaled(&back, &diamond(g, f, x.degree, space)?);
        }
    }
    Ok(out)
}

/// The graded bracket of two homogeneous elements, truncated at `max_arity`.
pub fn graded_mm_bracket(x: &GradedCochain, y: &GradedCochain, space: &GradedSpace, max_arity: usize) -> Result<GradedCochain> {
    if x.dim != y.dim || x.dim != space.dim() {
        return Err(Error::DimensionMismatch("graded bracket on different spaces".into()));
    }
    x.check_degree(space)?;
    y.check_degree(space)?;
    bracket_unchecked(x, y, space, max_arity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(2, 4).len(), 6);
        assert_eq!(unshuffles(0, 3), vec![vec![0, 1, 2]]);
        assert_eq!(unshuffles(3, 3), vec![vec![0, 1, 2]]);
        assert!(unshuffles(2, 4).contains(&vec![1, 3, 0, 2]));
    }

    #[test]
    fn koszul_transposition() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 1, 1], &[2, 0, 1]), 1);
    }

    #[test]
    fn from_dims_layout() {
        let s = GradedSpace::from_dims(-2, &[1, 0, 2]);
        assert_eq!(s.degs, vec![-2, 0, 0]);
        assert_eq!(s.dims_by_degree(), vec![(-2, 1), (-1, 0), (0, 2)]);
    }
}
