//! The relative Weyl group of the quasi-split even orthogonal group:
//! signed permutations on `l-1` coordinates, the subset supporting
//! Bessel functions, named representative matrices, and Bruhat cells.

use std::collections::HashMap;

use crate::fq::FieldTable;
use crate::group::Group;
use crate::mat::MatFq;
use crate::subgroups::{standard_subgroups, t_n_even};

/// Element of the hyperoctahedral group on `k` coordinates, acting on
/// torus characters by `e_j -> (-1)^{neg[j]} e_{perm[j]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    perm: Vec<usize>,
    neg: Vec<bool>,
}

impl SignedPerm {
    pub fn identity(k: usize) -> Self {
        SignedPerm {
            perm: (0..k).collect(),
            neg: vec![false; k],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.neg.iter().all(|&s| !s)
    }

    /// Image of a root written in the `e`-basis.
    pub fn act(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; v.len()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                out[self.perm[j]] += if self.neg[j] { -c } else { c };
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let k = self.rank();
        assert_eq!(k, other.rank());
        let mut perm = vec![0; k];
        let mut neg = vec![false; k];
        for j in 0..k {
            perm[j] = self.perm[other.perm[j]];
            neg[j] = other.neg[j] ^ self.neg[other.perm[j]];
        }
        SignedPerm { perm, neg }
    }

    pub fn inverse(&self) -> SignedPerm {
        let k = self.rank();
        let mut perm = vec![0; k];
        let mut neg = vec![false; k];
        for j in 0..k {
            perm[self.perm[j]] = j;
            neg[self.perm[j]] = self.neg[j];
        }
        SignedPerm { perm, neg }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        positive_roots(self.rank())
            .iter()
            .filter(|r| is_negative_root(&self.act(r)))
            .count()
    }

    /// Every simple root goes to a negative or a simple root.
    pub fn supports_bessel(&self) -> bool {
        let k = self.rank();
        simple_roots(k).iter().all(|a| {
            let im = self.act(a);
            is_negative_root(&im) || is_simple_root(&im, k)
        })
    }

    /// Indices `i` (0-based) of simple roots kept positive.
    pub fn theta(&self) -> Vec<usize> {
        simple_roots(self.rank())
            .iter()
            .enumerate()
            .filter(|(_, a)| is_positive_root(&self.act(a)))
            .map(|(i, _)| i)
            .collect()
    }
}

/// All `2^k k!` elements, in a canonical deterministic order.
pub fn all_signed_perms(k: usize) -> Vec<SignedPerm> {
    assert!(k <= 8, "hyperoctahedral enumeration capped at rank 8");
    let mut out = Vec::new();
    for perm in permutations(k) {
        for mask in 0..(1u32 << k) {
            let neg = (0..k).map(|j| mask >> j & 1 == 1).collect();
            out.push(SignedPerm {
                perm: perm.clone(),
                neg,
            });
        }
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(avail: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if avail.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..avail.len() {
            let v = avail.remove(i);
            cur.push(v);
            rec(avail, cur, out);
            cur.pop();
            avail.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Simple roots of the rank-`k` system: `e_i - e_{i+1}` and the short
/// root `e_{k-1}`.
pub fn simple_roots(k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let mut v = vec![0; k];
        v[i] = 1;
        v[i + 1] = -1;
        out.push(v);
    }
    if k > 0 {
        let mut v = vec![0; k];
        v[k - 1] = 1;
        out.push(v);
    }
    out
}

/// Positive roots: `e_i - e_j`, `e_i + e_j` for `i < j`, and `e_i`.
pub fn positive_roots(k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut v = vec![0; k];
            v[i] = 1;
            v[j] = -1;
            out.push(v);
            let mut v = vec![0; k];
            v[i] = 1;
            v[j] = 1;
            out.push(v);
        }
        let mut v = vec![0; k];
        v[i] = 1;
        out.push(v);
    }
    out
}

/// A root is positive exactly when its first nonzero coordinate is.
pub fn is_positive_root(v: &[i32]) -> bool {
    match v.iter().find(|&&c| c != 0) {
        Some(&c) => c > 0,
        None => false,
    }
}

pub fn is_negative_root(v: &[i32]) -> bool {
    match v.iter().find(|&&c| c != 0) {
        Some(&c) => c < 0,
        None => false,
    }
}

pub fn is_simple_root(v: &[i32], k: usize) -> bool {
    simple_roots(k).iter().any(|a| a.as_slice() == v)
}

/// The reflection pattern `e_i -> -e_{n-1-i}` on the first `n`
/// coordinates, identity beyond.
pub fn w_tilde_perm(k: usize, n: usize) -> SignedPerm {
    assert!(n <= k);
    let mut w = SignedPerm::identity(k);
    for j in 0..n {
        w.perm[j] = n - 1 - j;
        w.neg[j] = true;
    }
    w
}

/// Embed a permutation of the first `n` coordinates, no signs.
pub fn t_n_perm(k: usize, p: &[usize]) -> SignedPerm {
    let n = p.len();
    assert!(n <= k);
    let mut w = SignedPerm::identity(k);
    for (j, &pj) in p.iter().enumerate() {
        assert!(pj < n);
        w.perm[j] = pj;
    }
    w
}

/// The layer `B_n`: products `t_n(w') w̃_n` that support Bessel
/// functions, with `B_0 = {identity}`. Its size is `2^{n-1}` for
/// `n >= 1`: most permutations push a simple root to a positive
/// non-simple root.
pub fn b_n_set(k: usize, n: usize) -> Vec<SignedPerm> {
    assert!(n <= k);
    if n == 0 {
        return vec![SignedPerm::identity(k)];
    }
    permutations(n)
        .iter()
        .map(|p| t_n_perm(k, p).compose(&w_tilde_perm(k, n)))
        .filter(|w| w.supports_bessel())
        .collect()
}

/// Elements supporting Bessel functions, in enumeration order.
pub fn bessel_support(k: usize) -> Vec<SignedPerm> {
    all_signed_perms(k)
        .into_iter()
        .filter(|w| w.supports_bessel())
        .collect()
}

/// For `w` in the Bessel support, recover the unique `(n, w')` with
/// `w = t_n(w') w̃_n`. Returns `None` if `w` is outside the support or
/// fails to factor.
pub fn bessel_layer(w: &SignedPerm) -> Option<(usize, Vec<usize>)> {
    if !w.supports_bessel() {
        return None;
    }
    let k = w.rank();
    let theta = w.theta();
    // The layer index is one past the largest simple root sent negative.
    let n = (0..k).filter(|i| !theta.contains(i)).map(|i| i + 1).max().unwrap_or(0);
    let cand = w.compose(&w_tilde_perm(k, n).inverse());
    // The leftover factor must be an unsigned permutation of 0..n.
    let mut p = Vec::with_capacity(n);
    for j in 0..k {
        if cand.neg[j] {
            return None;
        }
        if j < n {
            if cand.perm[j] >= n {
                return None;
            }
            p.push(cand.perm[j]);
        } else if cand.perm[j] != j {
            return None;
        }
    }
    Some((n, p))
}

/// Permutation matrix sending basis vector `j` to `p[j]`.
pub fn perm_matrix(p: &[usize]) -> MatFq {
    let n = p.len();
    let mut m = MatFq::zero(n, n);
    for (j, &pj) in p.iter().enumerate() {
        m.set(pj, j, 1);
    }
    m
}

/// Long Weyl representative: antidiagonal identity blocks with middle
/// `diag((-1)^{l-1}, 1)`.
pub fn w_long_matrix(f: &FieldTable, l: usize) -> MatFq {
    let dim = 2 * l;
    let mut m = MatFq::zero(dim, dim);
    for i in 0..l - 1 {
        m.set(i, dim - 1 - i, 1);
        m.set(dim - 1 - i, i, 1);
    }
    let s = if (l - 1) % 2 == 1 { f.neg(1) } else { 1 };
    m.set(l - 1, l - 1, s);
    m.set(l, l, 1);
    m
}

/// Long Weyl representative of the standard Levi `GL_n x SO_{2(l-n)}`:
/// `diag(J_n, w_long(SO_{2(l-n)}), J_n)`.
pub fn w_m_matrix(f: &FieldTable, l: usize, n: usize) -> MatFq {
    assert!(n < l);
    let mut jn = MatFq::zero(n, n);
    for i in 0..n {
        jn.set(i, n - 1 - i, 1);
    }
    MatFq::block_diag(&[&jn, &w_long_matrix(f, l - n), &jn])
}

/// `w̃_n = w_long^{-1} w_{M_n}`, in its explicit block form.
pub fn w_tilde_matrix(f: &FieldTable, l: usize, n: usize) -> MatFq {
    assert!(n < l);
    let dim = 2 * l;
    let m = l - n - 1;
    let mut w = MatFq::zero(dim, dim);
    for i in 0..n {
        w.set(i, dim - n + i, 1);
        w.set(dim - n + i, i, 1);
    }
    for i in 0..m {
        w.set(n + i, n + i, 1);
        w.set(l + 1 + i, l + 1 + i, 1);
    }
    let s = if n % 2 == 1 { f.neg(1) } else { 1 };
    w.set(l - 1, l - 1, s);
    w.set(l, l, 1);
    let via_levi = w_long_matrix(f, l)
        .inv(f)
        .expect("Weyl representative is invertible")
        .mul(&w_m_matrix(f, l, n), f);
    assert_eq!(w, via_levi, "block form must agree with the Levi product");
    w
}

/// Representative matrix for the `i`-th simple reflection (0-based).
pub fn simple_reflection_matrix(f: &FieldTable, l: usize, i: usize) -> MatFq {
    let k = l - 1;
    assert!(i < k);
    let dim = 2 * l;
    let mut m = MatFq::identity(dim);
    if i < k - 1 {
        // Swap adjacent coordinates (and their mirrors) with the signs
        // that keep the determinant and the form intact.
        for &c in &[i, i + 1, dim - 2 - i, dim - 1 - i] {
            m.set(c, c, 0);
        }
        m.set(i, i + 1, 1);
        m.set(i + 1, i, f.neg(1));
        m.set(dim - 1 - i, dim - 2 - i, 1);
        m.set(dim - 2 - i, dim - 1 - i, f.neg(1));
    } else {
        // The short reflection swaps the innermost mirror pair and
        // reflects the anisotropic block.
        let c = l - 2;
        for d in 0..4 {
            m.set(c + d, c + d, 0);
        }
        m.set(c, c + 3, 1);
        m.set(c + 3, c, 1);
        m.set(c + 1, c + 1, f.neg(1));
        m.set(c + 2, c + 2, 1);
    }
    m
}

/// Representative matrix for an arbitrary Weyl element, built from a
/// reduced word in the simple reflections.
pub fn weyl_rep_matrix(f: &FieldTable, l: usize, w: &SignedPerm) -> MatFq {
    assert_eq!(w.rank(), l - 1);
    let k = l - 1;
    let simples: Vec<SignedPerm> = (0..k)
        .map(|i| {
            let mut s = SignedPerm::identity(k);
            if i < k - 1 {
                s.perm[i] = i + 1;
                s.perm[i + 1] = i;
            } else {
                s.neg[k - 1] = true;
            }
            s
        })
        .collect();
    let mut cur = w.clone();
    let mut word = Vec::new();
    while !cur.is_identity() {
        let roots = simple_roots(k);
        let i = (0..k)
            .find(|&i| is_negative_root(&cur.act(&roots[i])))
            .expect("a nontrivial element sends some simple root negative");
        cur = cur.compose(&simples[i]);
        word.push(i);
    }
    // cur * s_{i_1} * ... * s_{i_m} = id, so w = s_{i_m} ... s_{i_1}.
    let mut m = MatFq::identity(2 * l);
    for &i in word.iter().rev() {
        m = m.mul(&simple_reflection_matrix(f, l, i), f);
    }
    m
}

/// Canonical matrix for an element of the Bessel support, in its
/// factored form `t_n(w') w̃_n`.
pub fn bessel_elem_matrix(f: &FieldTable, l: usize, w: &SignedPerm) -> MatFq {
    let (n, p) = bessel_layer(w).expect("element must support Bessel functions");
    if n == 0 {
        return MatFq::identity(2 * l);
    }
    t_n_even(f, l, &perm_matrix(&p)).mul(&w_tilde_matrix(f, l, n), f)
}

/// Weyl combinatorics plus representative matrices for one group size.
pub struct WeylAtlas {
    pub k: usize,
    pub elems: Vec<SignedPerm>,
    pub index: HashMap<SignedPerm, usize>,
    pub reps: Vec<MatFq>,
}

pub fn weyl_atlas(f: &FieldTable, l: usize) -> WeylAtlas {
    let k = l - 1;
    let elems = all_signed_perms(k);
    let index = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let reps = elems.iter().map(|w| weyl_rep_matrix(f, l, w)).collect();
    WeylAtlas {
        k,
        elems,
        index,
        reps,
    }
}

/// Assign every group element to its Bruhat cell `B w B`. Returns the
/// Weyl index per element; panics if the cells fail to partition.
pub fn bruhat_cells(g: &Group, atlas: &WeylAtlas) -> Vec<usize> {
    let sub = standard_subgroups(g);
    let mut borel: Vec<u32> = Vec::new();
    for &t in &sub.t {
        for &u in &sub.u {
            borel.push(g.mul_idx(t, u));
        }
    }
    let mut cell = vec![usize::MAX; g.order() as usize];
    for (wi, rep) in atlas.reps.iter().enumerate() {
        let start = g.idx_expect(rep);
        assert_eq!(
            cell[start as usize],
            usize::MAX,
            "two Weyl representatives fell in one Bruhat cell"
        );
        let mut stack = vec![start];
        cell[start as usize] = wi;
        while let Some(x) = stack.pop() {
            for &b in &borel {
                for y in [g.mul_idx(b, x), g.mul_idx(x, b)] {
                    let c = &mut cell[y as usize];
                    if *c == usize::MAX {
                        *c = wi;
                        stack.push(y);
                    } else {
                        assert_eq!(*c, wi, "Bruhat cells must be disjoint");
                    }
                }
            }
        }
    }
    assert!(
        cell.iter().all(|&c| c != usize::MAX),
        "Bruhat cells must cover the group"
    );
    cell
}
