//! Subgroup atlas: tori, unipotent subgroups, parabolic subgroups and their
//! radicals, plus the named embeddings and elements used by the zeta sums.
//!
//! Subgroups of an enumerated group are represented as sorted vectors of
//! element indices. Parabolic subgroups are cut out by flag-stabilizer
//! predicates; parametrized subgroups (tori) are built from their defining
//! parameters and then located in the enumeration.

use crate::fq::{FieldTable, Fq};
use crate::group::{circle_block, Group, GroupKind};
use crate::mat::MatFq;

/// Atlas of the standard subgroups attached to a group.
pub struct SubgroupAtlas {
    /// Upper unitriangular members.
    pub u: Vec<u32>,
    /// Maximal torus.
    pub t: Vec<u32>,
    /// Split part of the torus.
    pub s: Vec<u32>,
    /// Standard Borel subgroup, `T * U`.
    pub b: Vec<u32>,
    /// Center.
    pub z: Vec<u32>,
}

pub fn standard_subgroups(g: &Group) -> SubgroupAtlas {
    let u = unitriangular_members(g);
    let t = torus_members(g);
    let s = split_torus_members(g);
    let b = product_set(g, &t, &u);
    let z = g.center();
    SubgroupAtlas { u, t, s, b, z }
}

/// Members of the group that are upper unitriangular.
pub fn unitriangular_members(g: &Group) -> Vec<u32> {
    (0..g.order() as u32).filter(|&i| g.elem(i).is_upper_unitriangular()).collect()
}

/// The maximal torus. For the even quasi-split kind this is the set of
/// elements that are diagonal outside the middle two coordinates; for the
/// other kinds it is the diagonal members.
pub fn torus_members(g: &Group) -> Vec<u32> {
    let dim = g.kind.dim();
    match g.kind {
        GroupKind::SoEvenQs { l } => (0..g.order() as u32)
            .filter(|&i| {
                let m = g.elem(i);
                (0..dim).all(|r| {
                    (0..dim).all(|c| {
                        let middle =
                            (l - 1..=l).contains(&r) && (l - 1..=l).contains(&c);
                        middle || r == c || m.get(r, c) == 0
                    })
                })
            })
            .collect(),
        _ => (0..g.order() as u32)
            .filter(|&i| {
                let m = g.elem(i);
                (0..dim).all(|r| (0..dim).all(|c| r == c || m.get(r, c) == 0))
            })
            .collect(),
    }
}

/// The split part of the torus (for the even kind: a = 1, b = 0 in the
/// middle block; otherwise the full diagonal torus).
pub fn split_torus_members(g: &Group) -> Vec<u32> {
    match g.kind {
        GroupKind::SoEvenQs { l } => (0..g.order() as u32)
            .filter(|&i| {
                let m = g.elem(i);
                let dim = m.rows();
                let diagonal =
                    (0..dim).all(|r| (0..dim).all(|c| r == c || m.get(r, c) == 0));
                diagonal && m.get(l - 1, l - 1) == 1 && m.get(l, l) == 1
            })
            .collect(),
        _ => torus_members(g),
    }
}

/// Torus element of the even quasi-split group from its parameters.
pub fn even_torus_elem(f: &FieldTable, l: usize, t: &[Fq], a: Fq, b: Fq) -> MatFq {
    assert_eq!(t.len(), l - 1);
    assert_eq!(f.sub(f.mul(a, a), f.mul(f.mul(b, b), f.rho)), 1, "norm-one condition");
    let mut m = MatFq::identity(2 * l);
    for (i, &ti) in t.iter().enumerate() {
        m.set(i, i, ti);
        m.set(2 * l - 1 - i, 2 * l - 1 - i, f.inv(ti));
    }
    m.set_block(l - 1, l - 1, &circle_block(f, a, b));
    m
}

/// Sorted, deduplicated set product of two element-index sets.
pub fn product_set(g: &Group, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> =
        a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul_idx(x, y))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Predicate: `m` stabilizes the standard isotropic flag given by `cuts`
/// (for each cut `c`, the span of the first `c` basis vectors).
pub fn stabilizes_flag(m: &MatFq, cuts: &[usize]) -> bool {
    cuts.iter().all(|&c| {
        (c..m.rows()).all(|i| (0..c).all(|j| m.get(i, j) == 0))
    })
}

/// Standard parabolic subgroup: stabilizer of the standard flag.
pub fn flag_parabolic(g: &Group, cuts: &[usize]) -> Vec<u32> {
    (0..g.order() as u32).filter(|&i| stabilizes_flag(g.elem(i), cuts)).collect()
}

/// Offsets and sizes of the diagonal blocks determined by `cuts`. For the
/// orthogonal kinds the flag is self-dual: each cut also contributes its
/// mirror, leaving a middle block and the dual blocks.
pub fn diag_block_offsets(dim: usize, cuts: &[usize], mirrored: bool) -> Vec<(usize, usize)> {
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    if mirrored {
        let top = *cuts.last().unwrap_or(&0);
        assert!(2 * top <= dim, "cuts exceed the isotropic range");
        for &c in std::iter::once(&top).chain(cuts.iter().rev()) {
            if dim - c > *bounds.last().unwrap() {
                bounds.push(dim - c);
            }
        }
    }
    bounds.push(dim);
    bounds.dedup();
    bounds.windows(2).map(|w| (w[0], w[1] - w[0])).collect()
}

/// Unipotent radical of the standard parabolic: members whose diagonal
/// blocks are all identity.
pub fn flag_radical(g: &Group, cuts: &[usize]) -> Vec<u32> {
    let mirrored = !matches!(g.kind, GroupKind::Gl { .. });
    let blocks = diag_block_offsets(g.kind.dim(), cuts, mirrored);
    flag_parabolic(g, cuts)
        .into_iter()
        .filter(|&i| {
            let m = g.elem(i);
            blocks.iter().all(|&(off, sz)| m.block(off, off, sz, sz).is_identity())
        })
        .collect()
}

/// The subgroup attached to a GL_n twist inside the even group: block
/// upper-triangular elements with unitriangular top-left `(l-n-1)`-block
/// and identity middle block.
pub fn n_upper_group(g: &Group, n_twist: usize) -> Vec<u32> {
    let GroupKind::SoEvenQs { l } = g.kind else {
        panic!("twist subgroup lives in the even quasi-split group");
    };
    assert!(n_twist <= l && n_twist >= 1);
    if n_twist == l {
        // The unipotent piece attached to the full-rank twist is trivial.
        return vec![g.identity_idx()];
    }
    let m = l - n_twist - 1; // may be zero, giving the trivial group
    let dim = 2 * l;
    (0..g.order() as u32)
        .filter(|&i| {
            let x = g.elem(i);
            stabilizes_flag(x, &[m])
                && x.block(0, 0, m, m).is_upper_unitriangular()
                && x.block(m, m, dim - 2 * m, dim - 2 * m).is_identity()
        })
        .collect()
}

/// The set of lower corrections appearing in the GL_n twist sums: identity
/// plus a free block in rows `n..l-1`, columns `0..n`, with the mirrored
/// block determined by membership in the group.
pub fn r_set(f: &FieldTable, l: usize, n: usize) -> Vec<MatFq> {
    assert!(n >= 1 && n < l);
    let m = l - n - 1;
    let kind = GroupKind::SoEvenQs { l };
    let q = f.q;
    let dim = 2 * l;
    let x_cells = m * n;
    let mut out = Vec::new();
    for code in 0..(q as u64).pow(x_cells as u32) {
        let mut x = MatFq::zero(m, n);
        let mut c = code;
        for i in 0..m {
            for jj in 0..n {
                x.set(i, jj, (c % q) as Fq);
                c /= q;
            }
        }
        // Solve for the unique mirrored block making the matrix a member.
        let mut found = None;
        for code2 in 0..(q as u64).pow((n * m) as u32) {
            let mut xp = MatFq::zero(n, m);
            let mut c2 = code2;
            for i in 0..n {
                for jj in 0..m {
                    xp.set(i, jj, (c2 % q) as Fq);
                    c2 /= q;
                }
            }
            let mut r = MatFq::identity(dim);
            r.set_block(n, 0, &x);
            r.set_block(2 * l - n, l + 1, &xp);
            if kind.contains_matrix(f, &r) {
                assert!(found.is_none(), "mirror block must be unique");
                found = Some(r);
            }
        }
        out.push(found.expect("every free block extends to a member"));
    }
    out.sort_unstable();
    out
}

/// `a* = J ta^{-1} J` for the antidiagonal-ones form of the size of `a`.
pub fn a_star(f: &FieldTable, a: &MatFq) -> MatFq {
    let n = a.rows();
    let mut j = MatFq::zero(n, n);
    for i in 0..n {
        j.set(i, n - 1 - i, 1);
    }
    let ainv_t = a.inv(f).expect("dual of an invertible matrix").transpose();
    j.mul(&ainv_t, f).mul(&j, f)
}

/// `t_n(a) = diag(a, I_{2l-2n}, a*)` in the even group. Defined for
/// n < l: the middle two coordinates must stay untouched.
pub fn t_n_even(f: &FieldTable, l: usize, a: &MatFq) -> MatFq {
    let n = a.rows();
    assert!(n < l);
    MatFq::block_diag(&[a, &MatFq::identity(2 * l - 2 * n), &a_star(f, a)])
}

/// `q_n(a) = diag(I_{l-n-1}, a, I_2, a*, I_{l-n-1})` in the even group.
pub fn q_n_even(f: &FieldTable, l: usize, a: &MatFq) -> MatFq {
    let n = a.rows();
    assert!(n < l);
    let pad = MatFq::identity(l - n - 1);
    MatFq::block_diag(&[&pad, a, &MatFq::identity(2), &a_star(f, a), &pad])
}

/// Siegel Levi section `l_n(a) = diag(a, 1, a*)` in the odd group of rank n.
pub fn l_n_odd(f: &FieldTable, a: &MatFq) -> MatFq {
    MatFq::block_diag(&[a, &MatFq::identity(1), &a_star(f, a)])
}

/// Top-left GL_n block of a Siegel parabolic member.
pub fn siegel_levi_block(h: &MatFq, n: usize) -> MatFq {
    h.block(0, 0, n, n)
}

/// `w_n` of the intertwining operator in the odd group of rank n.
pub fn w_n_odd(f: &FieldTable, n: usize) -> MatFq {
    let dim = 2 * n + 1;
    let mut m = MatFq::zero(dim, dim);
    for i in 0..n {
        m.set(i, n + 1 + i, 1);
        m.set(n + 1 + i, i, 1);
    }
    m.set(n, n, f.from_int(if n % 2 == 0 { 1 } else { -1 }));
    m
}

/// `d_n = diag(-1, 1, ..., (-1)^n)` in GL_n.
pub fn d_n_gl(f: &FieldTable, n: usize) -> MatFq {
    let mut m = MatFq::identity(n);
    for i in 0..n {
        m.set(i, i, f.from_int(if i % 2 == 0 { -1 } else { 1 }));
    }
    m
}

/// `w_{l,l} = diag(gamma I_l, 1, gamma^{-1} I_l)` in the odd group of rank l.
pub fn w_ll_odd(f: &FieldTable, l: usize) -> MatFq {
    let g = f.gamma;
    MatFq::block_diag(&[
        &MatFq::scalar(l, g),
        &MatFq::identity(1),
        &MatFq::scalar(l, f.inv(g)),
    ])
}

/// The block permutation `w^{l,n}` of the even group conjugating the
/// embedded odd group into its twist position.
pub fn w_ln_even(f: &FieldTable, l: usize, n: usize) -> MatFq {
    assert!(n >= 1 && n < l, "defined for twists of rank below l");
    let m = l - n - 1;
    let dim = 2 * l;
    let mut w = MatFq::zero(dim, dim);
    // Row blocks [n, m, 2, m, n], column blocks [m, n, 2, n, m].
    for i in 0..n {
        w.set(i, m + i, 1);
    }
    for i in 0..m {
        w.set(n + i, i, 1);
    }
    w.set(l - 1, l - 1, 1);
    w.set(l, l, 1);
    for i in 0..m {
        w.set(l + 1 + i, l + 1 + n + i, 1);
    }
    for i in 0..n {
        w.set(l + 1 + m + i, l + 1 + i, 1);
    }
    let kind = GroupKind::SoEvenQs { l };
    assert!(kind.contains_matrix(f, &w), "block permutation must lie in the group");
    w
}

/// Outer element `c = diag(I_{l-1}, 1, -1, I_{l-1})`; not in the group, but
/// conjugation by it preserves the group.
pub fn outer_c(f: &FieldTable, l: usize) -> MatFq {
    let mut m = MatFq::identity(2 * l);
    m.set(l, l, f.from_int(-1));
    m
}

/// `t~ = diag(I_{l-1}, -1, -1, I_{l-1})`, the torus element with a = -1.
pub fn t_tilde(f: &FieldTable, l: usize) -> MatFq {
    let mut m = MatFq::identity(2 * l);
    m.set(l - 1, l - 1, f.from_int(-1));
    m.set(l, l, f.from_int(-1));
    m
}

/// Conjugation by the outer element: `g -> c g c`.
pub fn outer_conj(f: &FieldTable, l: usize, g: &MatFq) -> MatFq {
    let c = outer_c(f, l);
    c.mul(g, f).mul(&c, f)
}
