//! Generic characters of unipotent subgroups and root-subgroup elements.
//!
//! Characters are evaluated in two stages: an exact field argument (the
//! linear functional of superdiagonal entries) and the additive character
//! of the field applied to it. Values land in the cyclotomic field of
//! conductor p.

use crate::cyclo::CycNum;
use crate::fq::{AdditiveChar, FieldTable, Fq};
use crate::mat::MatFq;
use crate::subgroups::outer_c;

/// Field argument of the generic character of the even group's
/// unitriangular subgroup: the superdiagonal sum with the half-weighted
/// corner term.
pub fn psi_so_even_arg(f: &FieldTable, l: usize, u: &MatFq) -> Fq {
    debug_assert!(u.is_upper_unitriangular());
    let mut acc = 0;
    for i in 0..l.saturating_sub(2) {
        acc = f.add(acc, u.get(i, i + 1));
    }
    f.add(acc, f.half(u.get(l - 2, l)))
}

/// Field argument of the conjugated character: the generic character
/// evaluated on the outer conjugate.
pub fn psi_c_arg(f: &FieldTable, l: usize, u: &MatFq) -> Fq {
    let c = outer_c(f, l);
    psi_so_even_arg(f, l, &c.mul(u, f).mul(&c, f))
}

/// Field argument of the generic character of GL_n's unitriangular group.
pub fn psi_gl_arg(f: &FieldTable, u: &MatFq) -> Fq {
    debug_assert!(u.is_upper_unitriangular());
    let mut acc = 0;
    for i in 0..u.rows() - 1 {
        acc = f.add(acc, u.get(i, i + 1));
    }
    acc
}

/// Field argument of a generic character on the unipotent radical of
/// the odd group's Borel: the first `l` superdiagonal entries.
pub fn psi_so_odd_arg(f: &FieldTable, l: usize, u: &MatFq) -> Fq {
    debug_assert!(u.is_upper_unitriangular());
    debug_assert_eq!(u.rows(), 2 * l + 1);
    let mut acc = 0;
    for i in 0..l {
        acc = f.add(acc, u.get(i, i + 1));
    }
    acc
}

/// Field argument of the character on the twist subgroup attached to a
/// rank-n twist (trivial when n = l - 1 or n = l).
pub fn psi_gamma_arg(f: &FieldTable, l: usize, n: usize, v: &MatFq) -> Fq {
    assert!(n >= 1 && n <= l);
    if n + 1 >= l {
        return 0;
    }
    let m = l - n - 1; // at least 1 here
    let mut acc = 0;
    for i in 0..m - 1 {
        acc = f.add(acc, v.get(i, i + 1));
    }
    f.add(acc, f.half(v.get(m - 1, l)))
}

/// Evaluate a field argument through the standard additive character.
pub fn psi_value(f: &FieldTable, arg: Fq) -> CycNum {
    AdditiveChar::standard(f).eval(f, arg)
}

pub fn psi_value_inv(f: &FieldTable, arg: Fq) -> CycNum {
    AdditiveChar::standard(f).eval_inv(f, arg)
}

/// Root-subgroup element of the even quasi-split group for the i-th simple
/// root (1-indexed, 1 <= i <= l-1) with parameter x. For i < l-1 this is
/// the sparse two-entry unipotent; for i = l-1 it is the quasi-split
/// four-by-four middle block.
pub fn root_elem(f: &FieldTable, l: usize, i: usize, x: Fq) -> MatFq {
    assert!((1..=l - 1).contains(&i), "simple root index out of range");
    let dim = 2 * l;
    let mut m = MatFq::identity(dim);
    if i <= l - 2 {
        let a = i - 1;
        m.set(a, a + 1, x);
        m.set(dim - 2 - a, dim - 1 - a, f.neg(x));
        return m;
    }
    // Middle 4x4 block in rows/cols l-2 .. l+1.
    let rho_inv = f.inv(f.rho);
    let x2 = f.mul(x, x);
    m.set(l - 2, l, x);
    m.set(l - 2, l + 1, f.half(f.mul(rho_inv, x2)));
    m.set(l, l + 1, f.mul(rho_inv, x));
    m
}
