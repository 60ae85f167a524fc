//! Zeta sums, induced sections, the intertwining operator and gamma
//! factors for twists of the quasi-split even orthogonal groups by
//! general linear groups, together with the embeddings across the
//! orthogonal families, big-cell membership witnesses and multiplicity
//! pairings.
//!
//! All values are exact cyclotomic numbers; every integral is a finite
//! group sum evaluated term by term.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::chartab::{char_table, CharTable};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fq::{FieldTable, Fq};
use crate::group::{Group, GroupKind};
use crate::mat::MatFq;
use crate::subgroups::{
    a_star, d_n_gl, diag_block_offsets, flag_parabolic, l_n_odd, r_set, t_n_even,
    unitriangular_members, w_ll_odd, w_ln_even, w_n_odd,
};
use crate::unip::{psi_gamma_arg, psi_gl_arg, psi_value, psi_value_inv};
use crate::weyl::w_tilde_matrix;

/// Exact equality of two cyclotomic numbers after canonical reduction.
pub fn cyc_eq(a: &CycNum, b: &CycNum) -> bool {
    a.sub(b).canonicalize().is_zero()
}

// ---------------------------------------------------------------------------
// Embeddings between the orthogonal families
// ---------------------------------------------------------------------------

/// Extend a square matrix by one decoupled coordinate at position `pos`,
/// carrying a one on the new diagonal slot.
fn insert_coordinate(g: &MatFq, pos: usize) -> MatFq {
    let d = g.rows();
    let mut out = MatFq::identity(d + 1);
    for i in 0..d {
        let ii = if i < pos { i } else { i + 1 };
        for j in 0..d {
            let jj = if j < pos { j } else { j + 1 };
            out.set(ii, jj, g.get(i, j));
        }
    }
    out
}

/// Conjugator straightening the inserted coordinate of the odd group of
/// rank `n` inside the even form of rank `n + 1`.
fn mid_conjugator_even(f: &FieldTable, n: usize) -> MatFq {
    let mut m = MatFq::identity(2 * n + 2);
    m.set(n, n, f.zero());
    m.set(n, n + 1, f.from_int(2));
    m.set(n + 1, n, f.one());
    m.set(n + 1, n + 1, f.zero());
    m
}

/// Embedding of the odd orthogonal group of rank `n` into the quasi-split
/// even group of rank `l` (`n < l`), landing inside the subgroup fixing
/// the first and last `l - n - 1` coordinates.
pub fn embed_odd_in_even(f: &FieldTable, l: usize, n: usize, g: &MatFq) -> MatFq {
    assert!(n < l, "the odd rank must be smaller than the even rank");
    assert_eq!(g.rows(), 2 * n + 1, "element has the wrong dimension");
    let m = mid_conjugator_even(f, n);
    let minv = m.inv(f).expect("conjugator is invertible");
    let inner = minv.mul(&insert_coordinate(g, n), f).mul(&m, f);
    if l == n + 1 {
        return inner;
    }
    let pad = MatFq::identity(l - n - 1);
    MatFq::block_diag(&[&pad, &inner, &pad])
}

/// Conjugator straightening the inserted middle coordinate of the even
/// group of rank `l` inside the odd group of the same rank.
fn mid_conjugator_odd(f: &FieldTable, l: usize) -> MatFq {
    let mut m = MatFq::identity(2 * l + 1);
    let half = f.half(f.one());
    let tg = f.inv(f.mul(f.from_int(2), f.gamma));
    let c = l - 1;
    for i in c..c + 3 {
        for j in c..c + 3 {
            m.set(i, j, f.zero());
        }
    }
    m.set(c, c + 1, f.one());
    m.set(c + 1, c, half);
    m.set(c + 1, c + 2, tg);
    m.set(c + 2, c, half);
    m.set(c + 2, c + 2, f.neg(tg));
    m
}

/// Full-rank embedding of the quasi-split even group of rank `l` into the
/// odd group of rank `l`.
pub fn embed_even_in_odd(f: &FieldTable, l: usize, g: &MatFq) -> MatFq {
    assert_eq!(g.rows(), 2 * l, "element has the wrong dimension");
    let m = mid_conjugator_odd(f, l);
    let minv = m.inv(f).expect("conjugator is invertible");
    minv.mul(&insert_coordinate(g, l), f).mul(&m, f)
}

/// Entrywise form of the full-rank embedding, assembled block by block.
/// This is an independent route used to cross-check the conjugation form.
pub fn embed_even_in_odd_blockwise(f: &FieldTable, l: usize, g: &MatFq) -> MatFq {
    assert_eq!(g.rows(), 2 * l);
    let k = l - 1;
    let g2 = f.gamma;
    let tg = f.inv(f.mul(f.from_int(2), g2));
    let a11 = g.block(0, 0, k, k);
    let a12 = g.block(0, k, k, 1);
    let a21 = g.block(k, 0, 1, k);
    let a22 = g.get(k, k);
    let b11 = g.block(0, l, k, 1);
    let b12 = g.block(0, l + 1, k, k);
    let b21 = g.get(k, l);
    let b22 = g.block(k, l + 1, 1, k);
    let c11 = g.block(l, 0, 1, k);
    let c12 = g.get(l, k);
    let c21 = g.block(l + 1, 0, k, k);
    let c22 = g.block(l + 1, k, k, 1);
    let d11 = g.get(l, l);
    let d12 = g.block(l, l + 1, 1, k);
    let d21 = g.block(l + 1, l, k, 1);
    let d22 = g.block(l + 1, l + 1, k, k);

    let mut out = MatFq::zero(2 * l + 1, 2 * l + 1);
    out.set_block(0, 0, &a11);
    out.set_block(0, k + 3, &b12);
    out.set_block(k + 3, 0, &c21);
    out.set_block(k + 3, k + 3, &d22);
    for i in 0..k {
        out.set(i, k, f.half(b11.get(i, 0)));
        out.set(i, k + 1, a12.get(i, 0));
        out.set(i, k + 2, f.neg(f.mul(b11.get(i, 0), tg)));
        out.set(k, i, c11.get(0, i));
        out.set(k + 1, i, a21.get(0, i));
        out.set(k + 2, i, f.neg(f.mul(g2, c11.get(0, i))));
        out.set(k, k + 3 + i, d12.get(0, i));
        out.set(k + 1, k + 3 + i, b22.get(0, i));
        out.set(k + 2, k + 3 + i, f.neg(f.mul(g2, d12.get(0, i))));
        out.set(k + 3 + i, k, f.half(d21.get(i, 0)));
        out.set(k + 3 + i, k + 1, c22.get(i, 0));
        out.set(k + 3 + i, k + 2, f.neg(f.mul(d21.get(i, 0), tg)));
    }
    let one_minus = f.sub(f.one(), d11);
    out.set(k, k, f.half(f.add(d11, f.one())));
    out.set(k, k + 1, c12);
    out.set(k, k + 2, f.mul(one_minus, tg));
    out.set(k + 1, k, f.half(b21));
    out.set(k + 1, k + 1, a22);
    out.set(k + 1, k + 2, f.neg(f.mul(b21, tg)));
    out.set(k + 2, k, f.mul(g2, f.half(one_minus)));
    out.set(k + 2, k + 1, f.neg(f.mul(g2, c12)));
    out.set(k + 2, k + 2, f.half(f.add(d11, f.one())));
    out
}

/// Closed formula for the full-rank embedding of a torus element given by
/// split entries `t` and circle coordinates `(a, b)`.
pub fn embedded_torus_display(f: &FieldTable, l: usize, t: &[Fq], a: Fq, b: Fq) -> MatFq {
    assert_eq!(t.len(), l - 1);
    let g2 = f.gamma;
    let tg = f.inv(f.mul(f.from_int(2), g2));
    let mut out = MatFq::identity(2 * l + 1);
    for (i, &ti) in t.iter().enumerate() {
        out.set(i, i, ti);
        out.set(2 * l - i, 2 * l - i, f.inv(ti));
    }
    let k = l - 1;
    let one_minus = f.sub(f.one(), a);
    out.set(k, k, f.half(f.add(f.one(), a)));
    out.set(k, k + 1, b);
    out.set(k, k + 2, f.mul(one_minus, tg));
    out.set(k + 1, k, f.mul(g2, b));
    out.set(k + 1, k + 1, a);
    out.set(k + 1, k + 2, f.neg(b));
    out.set(k + 2, k, f.mul(g2, f.half(one_minus)));
    out.set(k + 2, k + 1, f.neg(f.mul(g2, b)));
    out.set(k + 2, k + 2, f.half(f.add(f.one(), a)));
    out
}

// ---------------------------------------------------------------------------
// The Siegel parabolic of the odd group
// ---------------------------------------------------------------------------

fn antidiag_ones(f: &FieldTable, n: usize) -> MatFq {
    let mut m = MatFq::zero(n, n);
    for i in 0..n {
        m.set(i, n - 1 - i, f.one());
    }
    m
}

fn mat_key(m: &MatFq) -> Vec<Fq> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            v.push(m.get(i, j));
        }
    }
    v
}

/// The unipotent radical of the Siegel parabolic of the odd group of rank
/// `n`, generated by the one-parameter root subgroups and closed under
/// multiplication. The result is sorted and has size `q^{n(n+1)/2}`.
pub fn siegel_radical(f: &FieldTable, n: usize) -> Vec<MatFq> {
    let d = 2 * n + 1;
    let mut gens: Vec<MatFq> = Vec::new();
    for c in 1..f.q as Fq {
        for i in 0..n {
            let mut m = MatFq::identity(d);
            m.set(i, n, c);
            m.set(n, 2 * n - i, f.neg(c));
            m.set(i, 2 * n - i, f.neg(f.half(f.mul(c, c))));
            gens.push(m);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut m = MatFq::identity(d);
                m.set(i, 2 * n - j, c);
                m.set(j, 2 * n - i, f.neg(c));
                gens.push(m);
            }
        }
    }
    let mut out = vec![MatFq::identity(d)];
    let mut set: HashSet<MatFq> = out.iter().cloned().collect();
    let mut frontier = out.clone();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.mul(g, f);
            if set.insert(y.clone()) {
                out.push(y.clone());
                frontier.push(y);
            }
        }
    }
    let expect = (f.q).pow((n * (n + 1) / 2) as u32);
    assert_eq!(out.len() as u64, expect, "radical closure has the wrong size");
    out.sort_by(|a, b| mat_key(a).cmp(&mat_key(b)));
    out
}

/// Shape test for membership in the Siegel radical of the odd group.
pub fn in_siegel_radical(f: &FieldTable, n: usize, m: &MatFq) -> bool {
    if m.rows() != 2 * n + 1 || m.cols() != 2 * n + 1 {
        return false;
    }
    m.block(0, 0, n, n).is_identity()
        && m.get(n, n) == f.one()
        && m.block(n + 1, n + 1, n, n).is_identity()
        && m.block(n, 0, n + 1, n).is_zero()
        && m.block(n + 1, n, n, 1).is_zero()
        && GroupKind::SoOdd { l: n }.contains_matrix(f, m)
}

/// Factor a member of the Siegel parabolic of the odd group of rank `n`
/// as a Levi part times a radical part. Returns the general linear block
/// `a` and the radical factor `u` with `h = l_n(a) u`, or nothing when
/// the element lies outside the parabolic.
pub fn siegel_factor(f: &FieldTable, n: usize, h: &MatFq) -> Option<(MatFq, MatFq)> {
    debug_assert_eq!(h.rows(), 2 * n + 1);
    if !h.block(n, 0, n + 1, n).is_zero() {
        return None;
    }
    let a = h.block(0, 0, n, n);
    let ainv = a.inv(f)?;
    let u = l_n_odd(f, &ainv).mul(h, f);
    debug_assert!(in_siegel_radical(f, n, &u));
    Some((a, u))
}

/// Witness for membership in the big cell of the odd group of rank `m`:
/// the element factors as `l_m(a) · n1 · w_m · n2` with both `n1` and
/// `n2` in the Siegel radical.
#[derive(Clone, Debug)]
pub struct QwvWitness {
    pub a: MatFq,
    pub n1: MatFq,
    pub n2: MatFq,
}

/// Big-cell membership in the odd group of rank `m`. A group element lies
/// in the cell exactly when its lower-left `m x m` corner block is
/// invertible; the witness factorization is reconstructed explicitly and
/// validated before being returned.
pub fn membership_qwv(f: &FieldTable, m: usize, h: &MatFq) -> Option<QwvWitness> {
    debug_assert_eq!(h.rows(), 2 * m + 1);
    let corner = h.block(m + 1, 0, m, m);
    corner.inv(f)?;
    let a = a_star(f, &corner);
    let r = l_n_odd(f, &a).inv(f)?.mul(h, f);
    if !r.block(m + 1, 0, m, m).is_identity() {
        return None;
    }
    // The bottom block row of r reads [I, M, N]: exactly the top data of
    // the right radical factor.
    let mcol = r.block(m + 1, m, m, 1);
    let nblk = r.block(m + 1, m + 1, m, m);
    let jm = antidiag_ones(f, m);
    let mprime = mcol.transpose().mul(&jm, f).neg(f);
    let mut n2 = MatFq::identity(2 * m + 1);
    n2.set_block(0, m, &mcol);
    n2.set_block(0, m + 1, &nblk);
    n2.set_block(m, m + 1, &mprime);
    if !in_siegel_radical(f, m, &n2) {
        return None;
    }
    let wm = w_n_odd(f, m);
    let n1 = r.mul(&n2.inv(f)?, f).mul(&wm.inv(f)?, f);
    if !in_siegel_radical(f, m, &n1) {
        return None;
    }
    Some(QwvWitness { a, n1, n2 })
}

// ---------------------------------------------------------------------------
// Coset utilities
// ---------------------------------------------------------------------------

/// Representatives of the right cosets `H\G` of a subgroup given by
/// member indices, listed in index order.
pub fn coset_reps(g: &Group, subgroup: &[u32]) -> Vec<u32> {
    let ord = g.order() as usize;
    let mut seen = vec![false; ord];
    let mut reps = Vec::new();
    for x in 0..ord as u32 {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        for &s in subgroup {
            seen[g.mul_idx(s, x) as usize] = true;
        }
    }
    reps
}

/// The function supported on one `U`-coset that transforms on the left by
/// the inverse character: `x -> psi^{-1}(u)` at `x = u x0`, zero off the
/// coset.
pub fn averaged_delta_inv(g: &Group, u_members: &[u32], u_args: &[Fq], x0: u32) -> Vec<CycNum> {
    let f = g.f.as_ref();
    let mut out = vec![CycNum::zero(); g.order() as usize];
    for (k, &ui) in u_members.iter().enumerate() {
        out[g.mul_idx(ui, x0) as usize] = psi_value_inv(f, u_args[k]);
    }
    out
}

// ---------------------------------------------------------------------------
// Whittaker models of the general linear twists
// ---------------------------------------------------------------------------

/// A generic irreducible of a general linear group realized inside the
/// space of functions transforming on the left by the inverse generic
/// character, with the group acting by right translation. Every vector is
/// literally its own Whittaker function and the Whittaker functional is
/// evaluation at the identity.
pub struct GlModel<'a> {
    pub gl: &'a Group,
    pub table: &'a CharTable,
    pub row: usize,
    u_members: Vec<u32>,
    u_args: Vec<Fq>,
    star: Vec<u32>,
}

impl<'a> GlModel<'a> {
    /// Build the model, verifying that the restriction of the character
    /// to the unitriangular subgroup contains the inverse generic
    /// character exactly once.
    pub fn new(gl: &'a Group, table: &'a CharTable, row: usize) -> Result<GlModel<'a>> {
        let n = match gl.kind {
            GroupKind::Gl { n } => n,
            _ => return Err(Error::invalid("the twist model requires a general linear group")),
        };
        let f = gl.f.as_ref();
        let u_members = unitriangular_members(gl);
        let u_args: Vec<Fq> = u_members.iter().map(|&ui| psi_gl_arg(f, gl.elem(ui))).collect();
        let cls = gl.classes();
        let mut pairing = CycNum::zero();
        for (k, &ui) in u_members.iter().enumerate() {
            let c = cls.class_of[ui as usize] as usize;
            pairing = pairing.add(&table.values[row][c].mul(&psi_value(f, u_args[k])));
        }
        pairing = pairing.div_u64(u_members.len() as u64).canonicalize();
        if !pairing.is_one() {
            return Err(Error::invalid(format!(
                "row {row} does not pair to one against the inverse generic character"
            )));
        }
        let dn = d_n_gl(f, n);
        let star = (0..gl.order() as u32)
            .map(|ai| gl.idx_expect(&dn.mul(&a_star(f, gl.elem(ai)), f)))
            .collect();
        Ok(GlModel { gl, table, row, u_members, u_args, star })
    }

    /// Rank of the underlying general linear group.
    pub fn rank(&self) -> usize {
        match self.gl.kind {
            GroupKind::Gl { n } => n,
            _ => unreachable!(),
        }
    }

    /// Degree of the representation.
    pub fn dim(&self) -> u64 {
        self.table.degrees[self.row]
    }

    /// Size of the unitriangular subgroup.
    pub fn unipotent_count(&self) -> u64 {
        self.u_members.len() as u64
    }

    /// Index of the starred argument `d_n a^*` of a group element.
    pub fn star_index(&self, a: u32) -> u32 {
        self.star[a as usize]
    }

    fn chi_bar(&self, x: u32) -> &CycNum {
        let cls = self.gl.classes();
        let c = cls.class_of[x as usize] as usize;
        &self.table.values[self.row][cls.inverse_class[c] as usize]
    }

    /// Isotypic projection of a function on the group onto this
    /// representation.
    pub fn project(&self, v: &[CycNum]) -> Vec<CycNum> {
        let g = self.gl;
        let ord = g.order() as usize;
        let scale = BigRational::new(BigInt::from(self.dim()), BigInt::from(ord as u64));
        let mut out = Vec::with_capacity(ord);
        for x in 0..ord as u32 {
            let mut acc = CycNum::zero();
            for gi in 0..ord as u32 {
                let val = &v[g.mul_idx(x, gi) as usize];
                if val.is_zero() {
                    continue;
                }
                acc = acc.add(&self.chi_bar(gi).mul(val));
            }
            out.push(acc.scale(&scale).canonicalize());
        }
        out
    }

    /// The averaged delta at a coset representative.
    pub fn averaged_delta(&self, x0: u32) -> Vec<CycNum> {
        averaged_delta_inv(self.gl, &self.u_members, &self.u_args, x0)
    }

    /// Isotypic projection of an averaged delta, computed directly on the
    /// coset support instead of over the whole group.
    pub fn projected_delta(&self, x0: u32) -> Vec<CycNum> {
        let g = self.gl;
        let f = g.f.as_ref();
        let ord = g.order() as usize;
        let scale = BigRational::new(BigInt::from(self.dim()), BigInt::from(ord as u64));
        let mut out = Vec::with_capacity(ord);
        for x in 0..ord as u32 {
            let xin = g.inv_idx(x);
            let mut acc = CycNum::zero();
            for (k, &ui) in self.u_members.iter().enumerate() {
                let gi = g.mul_idx(g.mul_idx(xin, ui), x0);
                let c = self.chi_bar(gi);
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&c.mul(&psi_value_inv(f, self.u_args[k])));
            }
            out.push(acc.scale(&scale).canonicalize());
        }
        out
    }

    /// The normalized special vector of the model: the character averaged
    /// against the generic character over the unitriangular subgroup. Its
    /// value at the identity is one.
    pub fn bessel_vector(&self) -> Vec<CycNum> {
        let g = self.gl;
        let f = g.f.as_ref();
        let cls = g.classes();
        let ord = g.order() as usize;
        let mut out = Vec::with_capacity(ord);
        for x in 0..ord as u32 {
            let mut acc = CycNum::zero();
            for (k, &ui) in self.u_members.iter().enumerate() {
                let c = cls.class_of[g.mul_idx(x, ui) as usize] as usize;
                let val = &self.table.values[self.row][c];
                if val.is_zero() {
                    continue;
                }
                acc = acc.add(&val.mul(&psi_value(f, self.u_args[k])));
            }
            out.push(acc.div_u64(self.u_members.len() as u64).canonicalize());
        }
        out
    }

    /// Right translation of a model vector by a group element.
    pub fn right_translate(&self, v: &[CycNum], h: u32) -> Vec<CycNum> {
        (0..self.gl.order() as u32)
            .map(|x| v[self.gl.mul_idx(x, h) as usize].clone())
            .collect()
    }

    /// Whittaker coefficient of a vector (vectors are their own
    /// Whittaker functions).
    pub fn w_value(&self, v: &[CycNum], a: u32) -> CycNum {
        v[a as usize].clone()
    }

    /// The starred Whittaker coefficient appearing in the image of the
    /// intertwining operator.
    pub fn w_star_value(&self, v: &[CycNum], a: u32) -> CycNum {
        v[self.star[a as usize] as usize].clone()
    }

    /// Nonzero isotypic projections of averaged deltas over coset
    /// representatives, in a fixed deterministic order.
    pub fn spanning_vectors(&self, cap: usize) -> Vec<Vec<CycNum>> {
        let reps = coset_reps(self.gl, &self.u_members);
        let mut out = Vec::new();
        for x0 in reps {
            if out.len() >= cap {
                break;
            }
            let v = self.projected_delta(x0);
            if v.iter().any(|c| !c.is_zero()) {
                out.push(v);
            }
        }
        out
    }

    /// Left-equivariance test for membership in the model space.
    pub fn in_induced_space(&self, v: &[CycNum]) -> bool {
        let g = self.gl;
        let f = g.f.as_ref();
        for (k, &ui) in self.u_members.iter().enumerate() {
            let pv = psi_value_inv(f, self.u_args[k]);
            for x in 0..g.order() as u32 {
                let lhs = &v[g.mul_idx(ui, x) as usize];
                if !cyc_eq(lhs, &pv.mul(&v[x as usize])) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Sections of the induced space on the odd group
// ---------------------------------------------------------------------------

/// Evaluation interface for sections: the first argument is an odd-group
/// matrix of rank matching the twist, the second an index into the
/// general linear group of the twist.
pub trait SectionEval {
    /// The general linear group of the twist.
    fn gl(&self) -> &Group;
    /// Value of the section.
    fn eval(&self, h: &MatFq, a: u32) -> CycNum;
    /// Rank of the twist.
    fn rank(&self) -> usize {
        match self.gl().kind {
            GroupKind::Gl { n } => n,
            _ => unreachable!(),
        }
    }
}

/// The standard section attached to a model vector: supported on the
/// Siegel parabolic, where its value is the Whittaker coefficient of the
/// vector at the product of the second argument with the Levi part.
pub struct Section<'m> {
    pub model: &'m GlModel<'m>,
    pub v: Vec<CycNum>,
}

/// Build the standard section attached to a model vector.
pub fn make_fv<'m>(model: &'m GlModel<'m>, v: Vec<CycNum>) -> Section<'m> {
    assert_eq!(v.len(), model.gl.order() as usize);
    Section { model, v }
}

impl SectionEval for Section<'_> {
    fn gl(&self) -> &Group {
        self.model.gl
    }

    fn eval(&self, h: &MatFq, a: u32) -> CycNum {
        let f = self.model.gl.f.as_ref();
        match siegel_factor(f, self.model.rank(), h) {
            None => CycNum::zero(),
            Some((lev, _)) => {
                let li = self.model.gl.idx_expect(&lev);
                self.v[self.model.gl.mul_idx(a, li) as usize].clone()
            }
        }
    }
}

/// The image of a standard section under the intertwining operator: the
/// sum of translates against the long cell element over the Siegel
/// radical, evaluated at the starred second argument.
pub struct IntertwinedSection<'m> {
    model: &'m GlModel<'m>,
    v: Vec<CycNum>,
    wu: Vec<MatFq>,
}

/// Apply the intertwining operator to a standard section.
pub fn intertwining<'m>(base: &Section<'m>) -> IntertwinedSection<'m> {
    let f = base.model.gl.f.as_ref();
    let n = base.model.rank();
    let wn = w_n_odd(f, n);
    let wu = siegel_radical(f, n).iter().map(|u| wn.mul(u, f)).collect();
    IntertwinedSection { model: base.model, v: base.v.clone(), wu }
}

impl SectionEval for IntertwinedSection<'_> {
    fn gl(&self) -> &Group {
        self.model.gl
    }

    fn eval(&self, h: &MatFq, a: u32) -> CycNum {
        let f = self.model.gl.f.as_ref();
        let n = self.model.rank();
        let sa = self.model.star[a as usize];
        let mut acc = CycNum::zero();
        for wu in &self.wu {
            if let Some((lev, _)) = siegel_factor(f, n, &wu.mul(h, f)) {
                let li = self.model.gl.idx_expect(&lev);
                let val = &self.v[self.model.gl.mul_idx(sa, li) as usize];
                if !val.is_zero() {
                    acc = acc.add(val);
                }
            }
        }
        acc.canonicalize()
    }
}

/// A section precomposed with right translation in its first argument.
pub struct TranslatedSection<'s> {
    pub inner: &'s dyn SectionEval,
    pub right: MatFq,
}

impl SectionEval for TranslatedSection<'_> {
    fn gl(&self) -> &Group {
        self.inner.gl()
    }

    fn eval(&self, h: &MatFq, a: u32) -> CycNum {
        let f = self.inner.gl().f.as_ref();
        self.inner.eval(&h.mul(&self.right, f), a)
    }
}

// ---------------------------------------------------------------------------
// Zeta sums
// ---------------------------------------------------------------------------

/// Pair a Whittaker column against a section column and divide by the
/// order of the unipotent subgroup of the summation group.
pub fn zeta_pair_columns(wcol: &[CycNum], scol: &[CycNum], u_order: u64) -> CycNum {
    assert_eq!(wcol.len(), scol.len());
    let mut acc = CycNum::zero();
    for (a, b) in wcol.iter().zip(scol) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.add(&a.mul(b));
        }
    }
    acc.div_u64(u_order).canonicalize()
}

/// Whittaker column for a sub-rank twist, with the Whittaker data given
/// as a function on even-group matrices. Used when the even group is too
/// large to enumerate.
pub fn whittaker_column_sub_fn(
    go: &Group,
    l: usize,
    n: usize,
    wfun: &dyn Fn(&MatFq) -> CycNum,
) -> Vec<CycNum> {
    let f = go.f.as_ref();
    let wln = w_ln_even(f, l, n);
    let wli = wln.inv(f).expect("the conjugating element is invertible");
    let rmats = r_set(f, l, n);
    go.elems()
        .iter()
        .map(|g| {
            let img = wln.mul(&embed_odd_in_even(f, l, n, g), f).mul(&wli, f);
            let mut acc = CycNum::zero();
            for r in &rmats {
                let val = wfun(&r.mul(&img, f));
                if !val.is_zero() {
                    acc = acc.add(&val);
                }
            }
            acc.canonicalize()
        })
        .collect()
}

/// Section column over the odd group: the section evaluated at every
/// element with identity second argument.
pub fn section_column_sub_fn(go: &Group, sec: &dyn SectionEval) -> Vec<CycNum> {
    let ia = sec.gl().identity_idx();
    go.elems().iter().map(|h| sec.eval(h, ia)).collect()
}

/// Precomputed data for zeta sums of one twist rank against one even
/// group.
pub struct ZetaContext<'g> {
    pub ge: &'g Group,
    pub go: Option<&'g Group>,
    pub l: usize,
    pub n: usize,
    u_sum: Vec<u32>,
    sum_group_order: usize,
    wll_iota: Vec<MatFq>,
    sub_indices: Vec<Vec<u32>>,
}

impl<'g> ZetaContext<'g> {
    /// Build the context. For the full-rank twist (`n = l`) the sum runs
    /// over the even group itself against the translated full-rank
    /// embedding; for a sub-rank twist the sum runs over the odd group of
    /// rank `n` with the twisted embedding collected over the finite
    /// correction set.
    pub fn new(ge: &'g Group, go: Option<&'g Group>, l: usize, n: usize) -> Result<ZetaContext<'g>> {
        match ge.kind {
            GroupKind::SoEvenQs { l: observed } if observed == l => {}
            _ => return Err(Error::invalid("zeta context requires the quasi-split even group of rank l")),
        }
        if n == 0 || n > l {
            return Err(Error::invalid("the twist rank must lie between 1 and l"));
        }
        let f = ge.f.as_ref();
        if n == l {
            let wll = w_ll_odd(f, l);
            let wll_iota = ge
                .elems()
                .iter()
                .map(|g| wll.mul(&embed_even_in_odd(f, l, g), f))
                .collect();
            let u_sum = unitriangular_members(ge);
            Ok(ZetaContext {
                ge,
                go: None,
                l,
                n,
                u_sum,
                sum_group_order: ge.order() as usize,
                wll_iota,
                sub_indices: Vec::new(),
            })
        } else {
            let go = go.ok_or_else(|| Error::invalid("a sub-rank zeta context requires the odd group of the twist rank"))?;
            match go.kind {
                GroupKind::SoOdd { l: observed } if observed == n => {}
                _ => return Err(Error::invalid("the odd group must have the twist rank")),
            }
            if go.f.q != ge.f.q || go.f.rho != ge.f.rho {
                return Err(Error::invalid("the two groups must share the same field data"));
            }
            let wln = w_ln_even(f, l, n);
            let wli = wln.inv(f).expect("the conjugating element is invertible");
            let rmats = r_set(f, l, n);
            let mut sub_indices = Vec::with_capacity(go.order() as usize);
            for g in go.elems() {
                let img = wln.mul(&embed_odd_in_even(f, l, n, g), f).mul(&wli, f);
                sub_indices.push(rmats.iter().map(|r| ge.idx_expect(&r.mul(&img, f))).collect());
            }
            let u_sum = unitriangular_members(go);
            Ok(ZetaContext {
                ge,
                go: Some(go),
                l,
                n,
                u_sum,
                sum_group_order: go.order() as usize,
                wll_iota: Vec::new(),
                sub_indices,
            })
        }
    }

    /// Order of the unipotent subgroup dividing the sum.
    pub fn unipotent_order(&self) -> u64 {
        self.u_sum.len() as u64
    }

    /// The Whittaker-side column of the zeta sum for one Whittaker table
    /// on the even group.
    pub fn whittaker_column(&self, w: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(w.len(), self.ge.order() as usize);
        if self.n == self.l {
            w.to_vec()
        } else {
            self.sub_indices
                .iter()
                .map(|idxs| {
                    let mut acc = CycNum::zero();
                    for &i in idxs {
                        let val = &w[i as usize];
                        if !val.is_zero() {
                            acc = acc.add(val);
                        }
                    }
                    acc.canonicalize()
                })
                .collect()
        }
    }

    /// The section-side column of the zeta sum.
    pub fn section_column(&self, sec: &dyn SectionEval) -> Vec<CycNum> {
        let ia = sec.gl().identity_idx();
        if self.n == self.l {
            self.wll_iota.iter().map(|h| sec.eval(h, ia)).collect()
        } else {
            let go = self.go.expect("sub-rank context has the odd group");
            go.elems().iter().map(|h| sec.eval(h, ia)).collect()
        }
    }

    /// The zeta sum from precomputed columns: the full-group sum divided
    /// by the order of the unipotent subgroup.
    pub fn zeta_from_columns(&self, wcol: &[CycNum], scol: &[CycNum]) -> CycNum {
        zeta_pair_columns(wcol, scol, self.unipotent_order())
    }

    /// The zeta sum of one Whittaker table against one section.
    pub fn zeta(&self, w: &[CycNum], sec: &dyn SectionEval) -> CycNum {
        self.zeta_from_columns(&self.whittaker_column(w), &self.section_column(sec))
    }

    /// Cross-check variant summing over coset representatives of the
    /// unipotent subgroup instead of averaging over the full group. The
    /// agreement of the two forms is itself an equivariance check.
    pub fn zeta_cosets(&self, wcol: &[CycNum], scol: &[CycNum]) -> CycNum {
        let sum_group: &Group = if self.n == self.l {
            self.ge
        } else {
            self.go.expect("sub-rank context has the odd group")
        };
        let mut acc = CycNum::zero();
        let mut seen = vec![false; self.sum_group_order];
        for x in 0..self.sum_group_order as u32 {
            if seen[x as usize] {
                continue;
            }
            for &u in &self.u_sum {
                seen[sum_group.mul_idx(u, x) as usize] = true;
            }
            let (a, b) = (&wcol[x as usize], &scol[x as usize]);
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&a.mul(b));
            }
        }
        acc.canonicalize()
    }
}

// ---------------------------------------------------------------------------
// Gamma factors
// ---------------------------------------------------------------------------

/// Options for the gamma-factor certificate.
pub struct GammaOptions {
    pub min_pairs: usize,
    pub max_pairs: usize,
}

impl Default for GammaOptions {
    fn default() -> Self {
        GammaOptions { min_pairs: 16, max_pairs: 64 }
    }
}

/// The outcome of a gamma-factor computation: the exact value on the
/// canonical witness pair together with a proportionality certificate
/// over a grid of independent pairs.
#[derive(Clone, Debug)]
pub struct GammaOutcome {
    pub gamma: CycNum,
    pub witness_numerator: CycNum,
    pub witness_denominator: CycNum,
    pub pairs_checked: usize,
    pub nonzero_pairs: usize,
    pub mismatch: Option<String>,
}

/// Compute the gamma factor of one generic even-group representation,
/// given by its Bessel table, against one generic twist, certifying that
/// the same proportionality constant relates the plain and intertwined
/// zeta sums across a grid of Whittaker translates and section vectors.
pub fn gamma_factor(
    ctx: &ZetaContext,
    bessel: &[CycNum],
    model: &GlModel,
    opts: &GammaOptions,
) -> Result<GammaOutcome> {
    let f = ctx.ge.f.as_ref();
    let gl = model.gl;
    let besselv = model.bessel_vector();
    let v_can = if ctx.n == ctx.l {
        let gi = gl.idx_expect(&MatFq::scalar(ctx.n, f.gamma));
        model.right_translate(&besselv, gl.inv_idx(gi))
    } else {
        besselv
    };

    let sec = make_fv(model, v_can);
    let tsec = intertwining(&sec);
    let wcol_can = ctx.whittaker_column(bessel);
    let den_can = ctx.zeta_from_columns(&wcol_can, &ctx.section_column(&sec));
    let num_can = ctx.zeta_from_columns(&wcol_can, &ctx.section_column(&tsec));
    if den_can.is_zero() {
        return Err(Error::domain("the canonical zeta witness vanished; the gamma factor is undetermined"));
    }
    let gamma = num_can.div(&den_can)?.canonicalize();

    let v_list = model.spanning_vectors(8);
    let secs: Vec<Section> = v_list.iter().map(|v| make_fv(model, v.clone())).collect();
    let cols: Vec<(Vec<CycNum>, Vec<CycNum>)> = secs
        .iter()
        .map(|s| {
            let ts = intertwining(s);
            (ctx.section_column(s), ctx.section_column(&ts))
        })
        .collect();

    let ord = ctx.ge.order() as u32;
    let stride = std::cmp::max(1, (ord / 16) as usize);
    let h_list: Vec<u32> = (0..ord).step_by(stride).collect();

    let mut pairs = 0usize;
    let mut nonzero = 0usize;
    let mut mismatch = None;
    'outer: for &h in &h_list {
        let wt: Vec<CycNum> = (0..ord)
            .map(|x| bessel[ctx.ge.mul_idx(x, h) as usize].clone())
            .collect();
        let wc = ctx.whittaker_column(&wt);
        for (vi, (scol, tscol)) in cols.iter().enumerate() {
            if pairs >= opts.max_pairs {
                break 'outer;
            }
            let den = ctx.zeta_from_columns(&wc, scol);
            let num = ctx.zeta_from_columns(&wc, tscol);
            if !cyc_eq(&num.mul(&den_can), &num_can.mul(&den)) {
                mismatch = Some(format!(
                    "translate {h} against section vector {vi} breaks the proportionality"
                ));
                break 'outer;
            }
            pairs += 1;
            if !den.is_zero() {
                nonzero += 1;
            }
        }
    }
    if mismatch.is_none() && pairs < opts.min_pairs {
        mismatch = Some(format!("only {pairs} certificate pairs were available"));
    }

    Ok(GammaOutcome {
        gamma,
        witness_numerator: num_can,
        witness_denominator: den_can,
        pairs_checked: pairs,
        nonzero_pairs: nonzero,
        mismatch,
    })
}

/// The collapsed form of the twisted zeta sum against an intertwined
/// section for a sub-rank twist: the product of the radical and
/// correction-set volumes with the corner sum of Bessel values against
/// starred Whittaker coefficients.
pub fn collapsed_twist_sum(
    ctx: &ZetaContext,
    bessel: &[CycNum],
    model: &GlModel,
    v: &[CycNum],
) -> CycNum {
    assert!(ctx.n < ctx.l, "the collapsed form applies to sub-rank twists");
    let f = ctx.ge.f.as_ref();
    let gl = model.gl;
    let n = ctx.n;
    let vol_v = (f.q).pow((n * (n + 1) / 2) as u32);
    let vol_r = (f.q).pow((n * (ctx.l - n - 1)) as u32);
    let wt = w_tilde_matrix(f, ctx.l, n);
    let mut acc = CycNum::zero();
    for ai in 0..gl.order() as u32 {
        let ws = model.w_star_value(v, ai);
        if ws.is_zero() {
            continue;
        }
        let tnw = t_n_even(f, ctx.l, gl.elem(ai)).mul(&wt, f);
        let b = &bessel[ctx.ge.idx_expect(&tnw) as usize];
        if b.is_zero() {
            continue;
        }
        acc = acc.add(&b.mul(&ws));
    }
    acc.mul(&CycNum::from_u64(vol_v * vol_r))
        .div_u64(model.unipotent_count())
        .canonicalize()
}

// ---------------------------------------------------------------------------
// Induced characters and multiplicity pairings
// ---------------------------------------------------------------------------

/// Character of an induced representation on the classes of the ambient
/// group, from a subgroup given by member indices and a table of values
/// on those members. Uses the class-sum form of the induction formula:
/// one pass over the subgroup, no conjugation loops.
pub fn induced_class_values(
    gt: &Group,
    members: &[u32],
    sigma: &HashMap<u32, CycNum>,
) -> Vec<CycNum> {
    let cls = gt.classes();
    let mut sums = vec![CycNum::zero(); cls.count()];
    for &z in members {
        let val = &sigma[&z];
        if val.is_zero() {
            continue;
        }
        let c = cls.class_of[z as usize] as usize;
        sums[c] = sums[c].add(val);
    }
    let gord = gt.order();
    let qord = members.len() as u64;
    (0..cls.count())
        .map(|c| {
            let scale = BigRational::new(
                BigInt::from(gord),
                BigInt::from(cls.sizes[c] as u64 * qord),
            );
            sums[c].scale(&scale).canonicalize()
        })
        .collect()
}

/// All irreducible characters of the Levi quotient of a standard
/// parabolic of the odd group, inflated to value tables on the parabolic
/// members. The empty cut list gives the group itself. Returns the member
/// list together with labelled value tables.
pub fn levi_sigma_tables(
    gt: &Group,
    cuts: &[usize],
) -> Result<(Vec<u32>, Vec<(String, HashMap<u32, CycNum>)>)> {
    let dim = match gt.kind {
        GroupKind::SoOdd { l } => 2 * l + 1,
        _ => return Err(Error::invalid("the Levi tables are implemented for the odd groups")),
    };
    let members = flag_parabolic(gt, cuts);
    let offsets = diag_block_offsets(dim, cuts, true);
    let k = cuts.len();
    let mut factors: Vec<(GroupKind, (usize, usize), String)> = Vec::new();
    for (t, &(off, sz)) in offsets.iter().take(k).enumerate() {
        let prev = if t == 0 { 0 } else { offsets[t - 1].0 + offsets[t - 1].1 };
        debug_assert_eq!(off, prev);
        factors.push((GroupKind::Gl { n: sz }, (off, sz), format!("gl{sz}")));
    }
    let (moff, msz) = offsets[k];
    if msz > 1 {
        let ml = (msz - 1) / 2;
        factors.push((GroupKind::SoOdd { l: ml }, (moff, msz), format!("so{ml}")));
    }
    let mut groups = Vec::new();
    let mut tables = Vec::new();
    for (kind, _, _) in &factors {
        let g = Group::enumerate(gt.f.clone(), *kind)?;
        let t = char_table(&g)?;
        groups.push(g);
        tables.push(t);
    }
    let mut per_member_cls: Vec<Vec<usize>> = Vec::with_capacity(members.len());
    for &mi in &members {
        let m = gt.elem(mi);
        let mut v = Vec::with_capacity(groups.len());
        for (fi, (_, (off, sz), _)) in factors.iter().enumerate() {
            let b = m.block(*off, *off, *sz, *sz);
            let gi = groups[fi].idx_expect(&b);
            v.push(groups[fi].classes().class_of[gi as usize] as usize);
        }
        per_member_cls.push(v);
    }
    let mut out = Vec::new();
    if groups.is_empty() {
        let map: HashMap<u32, CycNum> = members.iter().map(|&mi| (mi, CycNum::one())).collect();
        out.push(("trivial".to_string(), map));
        return Ok((members, out));
    }
    let mut multi = vec![0usize; groups.len()];
    loop {
        let label = factors
            .iter()
            .zip(&multi)
            .map(|((_, _, name), r)| format!("{name}:{r}"))
            .collect::<Vec<_>>()
            .join("|");
        let mut map = HashMap::with_capacity(members.len());
        for (pos, &mi) in members.iter().enumerate() {
            let mut val = CycNum::one();
            for fi in 0..groups.len() {
                val = val.mul(&tables[fi].values[multi[fi]][per_member_cls[pos][fi]]);
            }
            map.insert(mi, val.canonicalize());
        }
        out.push((label, map));
        let mut fi = 0;
        loop {
            if fi == groups.len() {
                return Ok((members, out));
            }
            multi[fi] += 1;
            if multi[fi] < tables[fi].num_irreps() {
                break;
            }
            multi[fi] = 0;
            fi += 1;
        }
    }
}

fn rational_multiplicity(x: CycNum) -> Result<u64> {
    let x = x.canonicalize();
    let r = x
        .as_rational()
        .ok_or_else(|| Error::domain(format!("the multiplicity pairing is irrational: {}", x.canonical_string())))?;
    if !r.is_integer() || r.is_negative() {
        return Err(Error::domain(format!("the multiplicity pairing is not a non-negative integer: {r}")));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| Error::domain("the multiplicity pairing overflowed"))
}

/// Multiplicity of one irreducible of the even group inside the
/// restriction, through the full-rank embedding, of a class function of
/// the odd group of the same rank (given by its values on odd-group
/// classes).
pub fn hom_dimension_full(
    ge: &Group,
    te: &CharTable,
    pi_row: usize,
    godd: &Group,
    ind_vals: &[CycNum],
) -> Result<u64> {
    let f = ge.f.as_ref();
    let l = match ge.kind {
        GroupKind::SoEvenQs { l } => l,
        _ => return Err(Error::invalid("expected the quasi-split even group")),
    };
    match godd.kind {
        GroupKind::SoOdd { l: observed } if observed == l => {}
        _ => return Err(Error::invalid("expected the odd group of equal rank")),
    }
    let cls_e = ge.classes();
    let cls_o = godd.classes();
    let mut acc = CycNum::zero();
    for c in 0..cls_e.count() {
        let rep = ge.elem(cls_e.reps[c]);
        let img = embed_even_in_odd(f, l, rep);
        let co = cls_o.class_of[godd.idx_expect(&img) as usize] as usize;
        let chi_bar = &te.values[pi_row][cls_e.inverse_class[c] as usize];
        if chi_bar.is_zero() || ind_vals[co].is_zero() {
            continue;
        }
        acc = acc.add(&ind_vals[co].mul(chi_bar).mul(&CycNum::from_u64(cls_e.sizes[c] as u64)));
    }
    rational_multiplicity(acc.div_u64(ge.order()))
}

/// Multiplicity pairing for a sub-rank twist: one irreducible of the even
/// group restricted to the product of the embedded odd group of rank `n`
/// with its unipotent complement, against a class function of the odd
/// group tensored with the degenerate character of the complement. The
/// complement is passed as a list of even-group member indices.
pub fn hom_dimension_sub(
    ge: &Group,
    te: &CharTable,
    pi_row: usize,
    go: &Group,
    tau_vals: &[CycNum],
    n: usize,
    n_members: &[u32],
) -> Result<u64> {
    let f = ge.f.as_ref();
    let l = match ge.kind {
        GroupKind::SoEvenQs { l } => l,
        _ => return Err(Error::invalid("expected the quasi-split even group")),
    };
    match go.kind {
        GroupKind::SoOdd { l: observed } if observed == n && n < l => {}
        _ => return Err(Error::invalid("expected the odd group of the twist rank")),
    }
    let cls_e = ge.classes();
    let cls_o = go.classes();
    let mut acc = CycNum::zero();
    for si in 0..go.order() as u32 {
        let co = cls_o.class_of[si as usize] as usize;
        let tau_bar = &tau_vals[cls_o.inverse_class[co] as usize];
        if tau_bar.is_zero() {
            continue;
        }
        let img = ge.idx_expect(&embed_odd_in_even(f, l, n, go.elem(si)));
        for &vi in n_members {
            let x = ge.mul_idx(img, vi);
            let chi = &te.values[pi_row][cls_e.class_of[x as usize] as usize];
            if chi.is_zero() {
                continue;
            }
            let parg = psi_gamma_arg(f, l, n, ge.elem(vi));
            acc = acc.add(&chi.mul(tau_bar).mul(&psi_value_inv(f, parg)));
        }
    }
    rational_multiplicity(acc.div_u64(go.order() * n_members.len() as u64))
}

// ---------------------------------------------------------------------------
// Completeness of the generic spectrum
// ---------------------------------------------------------------------------

/// Completeness of the generic spectrum inside the space of functions
/// with inverse-character left equivariance: the generic isotypic
/// projections of every averaged delta sum back to the delta, and the
/// generic degrees fill the coset count.
pub fn whittaker_span_check(gl: &Group, table: &CharTable, generic_rows: &[usize]) -> Result<()> {
    let f = gl.f.as_ref();
    let u = unitriangular_members(gl);
    let args: Vec<Fq> = u.iter().map(|&ui| psi_gl_arg(f, gl.elem(ui))).collect();
    let dim_sum: u64 = generic_rows.iter().map(|&r| table.degrees[r]).sum();
    let cosets = gl.order() / u.len() as u64;
    if dim_sum != cosets {
        return Err(Error::domain(format!(
            "generic degrees sum to {dim_sum}, expected the coset count {cosets}"
        )));
    }
    let models: Vec<GlModel> = generic_rows
        .iter()
        .map(|&r| GlModel::new(gl, table, r))
        .collect::<Result<_>>()?;
    for x0 in coset_reps(gl, &u) {
        let delta = averaged_delta_inv(gl, &u, &args, x0);
        let mut total = vec![CycNum::zero(); gl.order() as usize];
        for m in &models {
            let p = m.projected_delta(x0);
            for (t, v) in total.iter_mut().zip(p) {
                *t = t.add(&v);
            }
        }
        for (t, d) in total.iter().zip(&delta) {
            if !cyc_eq(t, d) {
                return Err(Error::domain(
                    "the generic projections do not recover the averaged delta".to_string(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::char_table;
    use crate::reps::{analyze, bessel_closed_form, conjugate_rep_index};
    use crate::subgroups::{even_torus_elem, q_n_even, stabilizes_flag};
    use crate::unip::{psi_so_even_arg, root_elem};
    use crate::weyl::{bessel_elem_matrix, bessel_layer, bessel_support};
    use std::sync::Arc;

    fn field(p: u64) -> Arc<FieldTable> {
        Arc::new(FieldTable::new(p, 1).unwrap())
    }

    #[test]
    fn odd_into_even_embedding_basics() {
        let f = field(3);
        let ft = f.as_ref();
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let so4k = GroupKind::SoEvenQs { l: 2 };
        assert!(embed_odd_in_even(ft, 2, 1, &MatFq::identity(3)).is_identity());
        for i in 0..so3.order() as u32 {
            let gi = embed_odd_in_even(ft, 2, 1, so3.elem(i));
            assert!(so4k.contains_matrix(ft, &gi), "image must lie in the even group");
            for j in 0..so3.order() as u32 {
                let gj = embed_odd_in_even(ft, 2, 1, so3.elem(j));
                let prod = embed_odd_in_even(ft, 2, 1, &so3.elem(i).mul(so3.elem(j), ft));
                assert_eq!(gi.mul(&gj, ft), prod, "the embedding must be a homomorphism");
            }
        }
        for a0 in 1..3u16 {
            let a = MatFq::from_rows(&[vec![a0]]);
            assert_eq!(
                embed_odd_in_even(ft, 2, 1, &l_n_odd(ft, &a)),
                q_n_even(ft, 2, &a),
                "the Levi of the Siegel parabolic lands on the even Levi"
            );
        }
        let wln = w_ln_even(ft, 2, 1);
        let lhs = wln
            .mul(&embed_odd_in_even(ft, 2, 1, &w_n_odd(ft, 1)), ft)
            .mul(&wln.inv(ft).unwrap(), ft);
        assert_eq!(lhs, w_tilde_matrix(ft, 2, 1));
        assert_eq!(r_set(ft, 2, 1).len(), 1);
    }

    #[test]
    fn odd_into_even_higher_rank() {
        let f = field(3);
        let ft = f.as_ref();
        for (l, n) in [(3usize, 1usize), (3, 2), (4, 2)] {
            let kind = GroupKind::SoEvenQs { l };
            let mut samples = vec![MatFq::identity(2 * n + 1), w_n_odd(ft, n)];
            samples.extend(siegel_radical(ft, n).into_iter().take(4));
            let mut a = MatFq::identity(n);
            a.set(0, 0, 2);
            samples.push(l_n_odd(ft, &a));
            if n > 1 {
                let mut b = MatFq::identity(n);
                b.set(0, n - 1, 1);
                samples.push(l_n_odd(ft, &b));
            }
            for s in &samples {
                assert!(kind.contains_matrix(ft, &embed_odd_in_even(ft, l, n, s)));
            }
            for s in &samples {
                for t in &samples {
                    let lhs = embed_odd_in_even(ft, l, n, s).mul(&embed_odd_in_even(ft, l, n, t), ft);
                    assert_eq!(lhs, embed_odd_in_even(ft, l, n, &s.mul(t, ft)));
                }
            }
            let wln = w_ln_even(ft, l, n);
            let lhs = wln
                .mul(&embed_odd_in_even(ft, l, n, &w_n_odd(ft, n)), ft)
                .mul(&wln.inv(ft).unwrap(), ft);
            assert_eq!(lhs, w_tilde_matrix(ft, l, n), "the twisted long element identity fails at l={l}, n={n}");
            assert_eq!(r_set(ft, l, n).len() as u64, 3u64.pow((n * (l - n - 1)) as u32));
        }
    }

    #[test]
    fn even_into_odd_two_routes_agree() {
        let f = field(3);
        let ft = f.as_ref();
        let so4 = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l: 2 }).unwrap();
        let so5k = GroupKind::SoOdd { l: 2 };
        for g in so4.elems() {
            let a = embed_even_in_odd(ft, 2, g);
            assert_eq!(a, embed_even_in_odd_blockwise(ft, 2, g), "the two routes disagree");
            assert!(so5k.contains_matrix(ft, &a), "image must lie in the odd group");
        }
        for i in (0..so4.order() as u32).step_by(97) {
            for j in (0..so4.order() as u32).step_by(131) {
                let lhs = embed_even_in_odd(ft, 2, so4.elem(i)).mul(&embed_even_in_odd(ft, 2, so4.elem(j)), ft);
                let rhs = embed_even_in_odd(ft, 2, &so4.elem(i).mul(so4.elem(j), ft));
                assert_eq!(lhs, rhs);
            }
        }
        for t1 in [1u16, 2] {
            for a in 0..3u16 {
                for b in 0..3u16 {
                    let circ = ft.sub(ft.mul(a, a), ft.mul(ft.mul(b, b), ft.rho));
                    if circ != ft.one() {
                        continue;
                    }
                    let t = even_torus_elem(ft, 2, &[t1], a, b);
                    assert!(so4.contains(&t));
                    assert_eq!(
                        embed_even_in_odd(ft, 2, &t),
                        embedded_torus_display(ft, 2, &[t1], a, b),
                        "the torus display formula disagrees at t1={t1}, a={a}, b={b}"
                    );
                }
            }
        }
        // A rank-three sample: root elements, a torus element, and
        // products, compared route against route.
        let mut els = vec![MatFq::identity(6)];
        for i in 1..=2usize {
            for x in 1..3u16 {
                els.push(root_elem(ft, 3, i, x));
            }
        }
        els.push(even_torus_elem(ft, 3, &[2, 1], 0, 1));
        let so6k = GroupKind::SoEvenQs { l: 3 };
        let so7k = GroupKind::SoOdd { l: 3 };
        let mut prods = els.clone();
        for x in &els {
            for y in &els {
                prods.push(x.mul(y, ft));
            }
        }
        for p in &prods {
            assert!(so6k.contains_matrix(ft, p));
            let img = embed_even_in_odd(ft, 3, p);
            assert_eq!(img, embed_even_in_odd_blockwise(ft, 3, p));
            assert!(so7k.contains_matrix(ft, &img));
        }
    }

    #[test]
    fn full_rank_parabolic_preimages() {
        let f = field(3);
        let ft = f.as_ref();
        let so4 = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l: 2 }).unwrap();
        let mut in_q_count = 0u32;
        let mut stab_count = 0u32;
        for g in so4.elems() {
            let img = embed_even_in_odd(ft, 2, g);
            let in_q = siegel_factor(ft, 2, &img).is_some();
            if in_q {
                in_q_count += 1;
                assert!(
                    stabilizes_flag(g, &[1]),
                    "the parabolic preimage must lie in the flag stabilizer"
                );
            }
            if stabilizes_flag(g, &[1]) {
                stab_count += 1;
            }
            if let Some((_, u)) = siegel_factor(ft, 2, &img) {
                let is_levi = u.is_identity();
                let a = g.block(0, 0, 1, 1);
                let expected = a.get(0, 0) != 0 && *g == t_n_even(ft, 2, &a);
                assert_eq!(is_levi, expected, "the Levi preimage must be the split torus piece");
            }
        }
        assert!(in_q_count > 0 && in_q_count < stab_count, "the containment is proper");
    }

    #[test]
    fn siegel_radical_and_factorization() {
        let f = field(3);
        let ft = f.as_ref();
        assert_eq!(siegel_radical(ft, 1).len(), 3);
        let rad2 = siegel_radical(ft, 2);
        assert_eq!(rad2.len(), 27);
        for u in &rad2 {
            assert!(in_siegel_radical(ft, 2, u));
            assert!(GroupKind::SoOdd { l: 2 }.contains_matrix(ft, u));
        }
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        for ai in (0..gl2.order() as u32).step_by(5) {
            let a = gl2.elem(ai);
            for u in rad2.iter().step_by(4) {
                let h = l_n_odd(ft, a).mul(u, ft);
                let (a2, u2) = siegel_factor(ft, 2, &h).expect("the product lies in the parabolic");
                assert_eq!(&a2, a);
                assert_eq!(&u2, u);
            }
        }
        assert!(siegel_factor(ft, 2, &w_n_odd(ft, 2)).is_none());
    }

    #[test]
    fn big_cell_membership_witnesses() {
        let f = field(3);
        let ft = f.as_ref();
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let rad2 = siegel_radical(ft, 2);
        let w2 = w_n_odd(ft, 2);
        for ai in (0..gl2.order() as u32).step_by(7) {
            for x1 in rad2.iter().step_by(9) {
                for x2 in rad2.iter().step_by(5) {
                    let h = l_n_odd(ft, gl2.elem(ai)).mul(x1, ft).mul(&w2, ft).mul(x2, ft);
                    let wit = membership_qwv(ft, 2, &h).expect("cell members must be witnessed");
                    let rebuilt = l_n_odd(ft, &wit.a)
                        .mul(&wit.n1, ft)
                        .mul(&w2, ft)
                        .mul(&wit.n2, ft);
                    assert_eq!(rebuilt, h, "the witness must rebuild the element");
                    assert!(in_siegel_radical(ft, 2, &wit.n1));
                    assert!(in_siegel_radical(ft, 2, &wit.n2));
                }
            }
        }
        // Elements of the parabolic itself are never in the big cell.
        for ai in (0..gl2.order() as u32).step_by(11) {
            let h = l_n_odd(ft, gl2.elem(ai)).mul(&rad2[13], ft);
            assert!(membership_qwv(ft, 2, &h).is_none());
        }
    }

    #[test]
    fn big_cell_torus_boundary() {
        let f = field(3);
        let ft = f.as_ref();
        let support = bessel_support(1);
        let mut cases = 0;
        for t1 in [1u16, 2] {
            for a in 0..3u16 {
                for b in 0..3u16 {
                    let circ = ft.sub(ft.mul(a, a), ft.mul(ft.mul(b, b), ft.rho));
                    if circ != ft.one() {
                        continue;
                    }
                    let t = even_torus_elem(ft, 2, &[t1], a, b);
                    for w in &support {
                        let wm = bessel_elem_matrix(ft, 2, w);
                        let img = embed_even_in_odd(ft, 2, &t.mul(&wm, ft));
                        let member = membership_qwv(ft, 2, &img).is_some();
                        let layer = bessel_layer(w).map(|(nn, _)| nn);
                        let expected = layer == Some(1) && a != ft.one();
                        assert_eq!(
                            member, expected,
                            "membership mismatch at t1={t1}, a={a}, b={b}, layer={layer:?}"
                        );
                        cases += 1;
                    }
                }
            }
        }
        assert_eq!(cases, 16, "the torus-times-support sweep must cover sixteen cases");
    }

    #[test]
    fn whittaker_model_contracts() {
        let f = field(3);
        let ft = f.as_ref();
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let t2 = char_table(&gl2).unwrap();
        let rs = analyze(&gl2, &t2).unwrap();
        let generics: Vec<usize> = (0..t2.num_irreps()).filter(|&r| rs.is_generic(r)).collect();
        assert_eq!(generics.iter().map(|&r| t2.degrees[r]).sum::<u64>(), 16);
        for &r in &generics {
            let m = GlModel::new(&gl2, &t2, r).unwrap();
            let b = m.bessel_vector();
            assert!(b[gl2.identity_idx() as usize].is_one(), "the special vector is normalized");
            assert!(m.in_induced_space(&b));
            let pb = m.project(&b);
            for (x, y) in pb.iter().zip(&b) {
                assert!(cyc_eq(x, y), "the special vector must be isotypic");
            }
            for v in m.spanning_vectors(3) {
                assert!(m.in_induced_space(&v));
                let pv = m.project(&v);
                for (x, y) in pv.iter().zip(&v) {
                    assert!(cyc_eq(x, y));
                }
            }
        }
        // Non-generic rows are rejected.
        let non_generic: Vec<usize> = (0..t2.num_irreps()).filter(|&r| !rs.is_generic(r)).collect();
        assert!(!non_generic.is_empty());
        assert!(GlModel::new(&gl2, &t2, non_generic[0]).is_err());
        // The starred coefficient transforms on the left by the inverse
        // character under right unitriangular shifts of its argument.
        let m = GlModel::new(&gl2, &t2, generics[0]).unwrap();
        let v = m.bessel_vector();
        let u = unitriangular_members(&gl2);
        for &ui in &u {
            let arg = psi_gl_arg(ft, gl2.elem(ui));
            for a in (0..gl2.order() as u32).step_by(5) {
                let ua = gl2.mul_idx(ui, a);
                let lhs = m.w_star_value(&v, ua);
                let rhs = psi_value_inv(ft, arg).mul(&m.w_star_value(&v, a));
                assert!(cyc_eq(&lhs, &rhs), "the starred coefficient equivariance fails");
            }
        }
    }

    #[test]
    fn section_contracts_rank_one() {
        let f = field(3);
        let ft = f.as_ref();
        let gl1 = Group::enumerate(f.clone(), GroupKind::Gl { n: 1 }).unwrap();
        let t1 = char_table(&gl1).unwrap();
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let rad1 = siegel_radical(ft, 1);
        let w1 = w_n_odd(ft, 1);
        for r in 0..t1.num_irreps() {
            let m = GlModel::new(&gl1, &t1, r).unwrap();
            let v = m.bessel_vector();
            let sec = make_fv(&m, v.clone());
            for g in so3.elems() {
                match siegel_factor(ft, 1, g) {
                    Some((a, _)) => {
                        let li = gl1.idx_expect(&a);
                        for ai in 0..gl1.order() as u32 {
                            assert!(cyc_eq(
                                &sec.eval(g, ai),
                                &v[gl1.mul_idx(ai, li) as usize]
                            ));
                        }
                    }
                    None => {
                        for ai in 0..gl1.order() as u32 {
                            assert!(sec.eval(g, ai).is_zero());
                        }
                    }
                }
            }
            let ts = intertwining(&sec);
            let ia = gl1.identity_idx();
            // Support of the image lies in the big cell.
            for g in so3.elems() {
                if !ts.eval(g, ia).is_zero() {
                    assert!(membership_qwv(ft, 1, g).is_some());
                }
            }
            // Exact values on the big cell.
            for x in &rad1 {
                let base = ts.eval(&w1.mul(x, ft), ia);
                assert!(cyc_eq(&base, &m.w_star_value(&v, ia)));
                for ai in 0..gl1.order() as u32 {
                    let h = l_n_odd(ft, gl1.elem(ai)).mul(&w1, ft).mul(x, ft);
                    assert!(cyc_eq(&ts.eval(&h, ia), &m.w_star_value(&v, ai)));
                }
            }
            // Brute-force the operator definition.
            for g in so3.elems() {
                for ai in 0..gl1.order() as u32 {
                    let mut direct = CycNum::zero();
                    for x in &rad1 {
                        direct = direct.add(&sec.eval(&w1.mul(x, ft).mul(g, ft), m.star_index(ai)));
                    }
                    assert!(cyc_eq(&ts.eval(g, ai), &direct));
                }
            }
        }
    }

    #[test]
    fn section_equivariance_rank_two() {
        let f = field(3);
        let ft = f.as_ref();
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let t2 = char_table(&gl2).unwrap();
        let rs = analyze(&gl2, &t2).unwrap();
        let row = (0..t2.num_irreps()).find(|&r| rs.is_generic(r)).unwrap();
        let m = GlModel::new(&gl2, &t2, row).unwrap();
        let v = m.bessel_vector();
        let sec = make_fv(&m, v.clone());
        let ts = intertwining(&sec);
        let rad2 = siegel_radical(ft, 2);
        let w2 = w_n_odd(ft, 2);
        let u = unitriangular_members(&gl2);
        let samples: Vec<MatFq> = vec![
            w2.clone(),
            w2.mul(&rad2[5], ft),
            l_n_odd(ft, gl2.elem(7)).mul(&w2, ft).mul(&rad2[11], ft),
            l_n_odd(ft, gl2.elem(3)).mul(&rad2[2], ft),
        ];
        for h in &samples {
            for &ui in &u {
                let arg = psi_gl_arg(ft, gl2.elem(ui));
                for a in (0..gl2.order() as u32).step_by(7) {
                    let ua = gl2.mul_idx(ui, a);
                    for s in [&sec as &dyn SectionEval, &ts as &dyn SectionEval] {
                        let lhs = s.eval(h, ua);
                        let rhs = psi_value_inv(ft, arg).mul(&s.eval(h, a));
                        assert!(cyc_eq(&lhs, &rhs), "second-argument equivariance fails");
                    }
                }
            }
        }
        // First-argument law: a Levi shift on the left moves into the
        // second argument.
        for h in &samples {
            for bi in (0..gl2.order() as u32).step_by(9) {
                let shift = l_n_odd(ft, gl2.elem(bi)).mul(&rad2[4], ft).mul(h, ft);
                for a in (0..gl2.order() as u32).step_by(11) {
                    for s in [&sec as &dyn SectionEval, &ts as &dyn SectionEval] {
                        let lhs = s.eval(&shift, a);
                        let rhs = s.eval(h, gl2.mul_idx(a, bi));
                        assert!(cyc_eq(&lhs, &rhs), "first-argument equivariance fails");
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_and_gamma_desk_scale() {
        let f = field(3);
        let ft = f.as_ref();
        let so4 = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l: 2 }).unwrap();
        let te = char_table(&so4).unwrap();
        let rse = analyze(&so4, &te).unwrap();
        let pis = rse.generic_cuspidal();
        assert_eq!(pis.len(), 4);
        let pi = pis[0];
        let bess = bessel_closed_form(&so4, &te, pi);

        // Sub-rank twist.
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let gl1 = Group::enumerate(f.clone(), GroupKind::Gl { n: 1 }).unwrap();
        let t1 = char_table(&gl1).unwrap();
        let ctx1 = ZetaContext::new(&so4, Some(&so3), 2, 1).unwrap();
        let m1 = GlModel::new(&gl1, &t1, 1).unwrap();
        let out1 = gamma_factor(&ctx1, &bess, &m1, &GammaOptions::default()).unwrap();
        assert!(out1.mismatch.is_none(), "gamma certificate: {:?}", out1.mismatch);
        assert!(out1.pairs_checked >= 16);
        assert!(out1.witness_denominator.is_one(), "the canonical witness value must be one");

        // The index route and the matrix route agree on columns.
        let wcol = ctx1.whittaker_column(&bess);
        let wcol2 = whittaker_column_sub_fn(&so3, 2, 1, &|m: &MatFq| {
            bess[so4.idx_expect(m) as usize].clone()
        });
        for (a, b) in wcol.iter().zip(&wcol2) {
            assert!(cyc_eq(a, b));
        }

        // Collapsed form of the twisted sum.
        let v1 = m1.bessel_vector();
        let sec1 = make_fv(&m1, v1.clone());
        let ts1 = intertwining(&sec1);
        let lhs = ctx1.zeta_from_columns(&wcol, &ctx1.section_column(&ts1));
        let rhs = collapsed_twist_sum(&ctx1, &bess, &m1, &v1);
        assert!(cyc_eq(&lhs, &rhs), "the collapsed twisted sum disagrees");

        // Coset and averaged forms agree.
        let scol = ctx1.section_column(&sec1);
        assert!(cyc_eq(&ctx1.zeta_from_columns(&wcol, &scol), &ctx1.zeta_cosets(&wcol, &scol)));

        // Sub-rank equivariance: translating both sides by a group
        // element fixes the sum.
        let wln = w_ln_even(ft, 2, 1);
        let wli = wln.inv(ft).unwrap();
        let base = ctx1.zeta_from_columns(&wcol, &scol);
        for gi in [1u32, 5, 11] {
            let g = so3.elem(gi);
            let img = wln.mul(&embed_odd_in_even(ft, 2, 1, g), ft).mul(&wli, ft);
            let hi = so4.idx_expect(&img);
            let wt: Vec<CycNum> = (0..so4.order() as u32)
                .map(|x| bess[so4.mul_idx(x, hi) as usize].clone())
                .collect();
            let tsec = TranslatedSection { inner: &sec1, right: g.clone() };
            let lhs = ctx1.zeta(&wt, &tsec);
            assert!(cyc_eq(&lhs, &base), "sub-rank equivariance fails at {gi}");
        }

        // Full-rank twist.
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let t2 = char_table(&gl2).unwrap();
        let rs2 = analyze(&gl2, &t2).unwrap();
        let row2 = (0..t2.num_irreps()).find(|&r| rs2.is_generic(r)).unwrap();
        let ctx2 = ZetaContext::new(&so4, None, 2, 2).unwrap();
        let m2 = GlModel::new(&gl2, &t2, row2).unwrap();
        let out2 = gamma_factor(&ctx2, &bess, &m2, &GammaOptions::default()).unwrap();
        assert!(out2.mismatch.is_none(), "gamma certificate: {:?}", out2.mismatch);
        assert!(out2.witness_denominator.is_one(), "the canonical full-rank witness must be one");

        // Full-rank equivariance.
        let v2 = m2.bessel_vector();
        let gi2 = gl2.idx_expect(&MatFq::scalar(2, ft.gamma));
        let v2c = m2.right_translate(&v2, gl2.inv_idx(gi2));
        let sec2 = make_fv(&m2, v2c);
        let base2 = ctx2.zeta(&bess, &sec2);
        for gi in [3u32, 77, 400] {
            let wt: Vec<CycNum> = (0..so4.order() as u32)
                .map(|x| bess[so4.mul_idx(x, gi) as usize].clone())
                .collect();
            let tsec = TranslatedSection {
                inner: &sec2,
                right: embed_even_in_odd(ft, 2, so4.elem(gi)),
            };
            assert!(cyc_eq(&ctx2.zeta(&wt, &tsec), &base2), "full-rank equivariance fails at {gi}");
        }
        // Support of the intertwined section lies in the big cell.
        let ts2 = intertwining(&sec2);
        let ia2 = gl2.identity_idx();
        for gi in (0..so4.order() as u32).step_by(45) {
            let h = w_ll_odd(ft, 2).mul(&embed_even_in_odd(ft, 2, so4.elem(gi)), ft);
            if !ts2.eval(&h, ia2).is_zero() {
                assert!(membership_qwv(ft, 2, &h).is_some());
            }
        }

        // Conjugate-invariance of both gamma factors.
        let pic = conjugate_rep_index(&so4, &te, pi);
        let bessc = bessel_closed_form(&so4, &te, pic);
        let out1c = gamma_factor(&ctx1, &bessc, &m1, &GammaOptions::default()).unwrap();
        assert!(cyc_eq(&out1.gamma, &out1c.gamma), "the sub-rank gamma must be conjugation invariant");
        let out2c = gamma_factor(&ctx2, &bessc, &m2, &GammaOptions::default()).unwrap();
        assert!(cyc_eq(&out2.gamma, &out2c.gamma), "the full-rank gamma must be conjugation invariant");
    }

    #[test]
    fn sub_rank_equivariance_rank_three() {
        let f = field(3);
        let ft = f.as_ref();
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let gl1 = Group::enumerate(f.clone(), GroupKind::Gl { n: 1 }).unwrap();
        let t1 = char_table(&gl1).unwrap();
        let m = GlModel::new(&gl1, &t1, 1).unwrap();
        let v = m.bessel_vector();
        let sec = make_fv(&m, v);

        // Whittaker data on the rank-three even group: the delta at the
        // identity coset, extended by the generic character. The group
        // itself stays unenumerated.
        let wfun = move |x: &MatFq| -> CycNum {
            if x.is_upper_unitriangular() {
                psi_value(ft, psi_so_even_arg(ft, 3, x))
            } else {
                CycNum::zero()
            }
        };
        let wcol = whittaker_column_sub_fn(&so3, 3, 1, &wfun);
        let scol = section_column_sub_fn(&so3, &sec);
        let base = zeta_pair_columns(&wcol, &scol, 3);
        assert!(!base.is_zero(), "the base sum should not vanish for the delta data");

        // The unipotent complement, found by brute force over its shape.
        let mut nset = Vec::new();
        let kind = GroupKind::SoEvenQs { l: 3 };
        for code in 0..3u64.pow(9) {
            let mut c = code;
            let mut digits = [0u16; 9];
            for d in digits.iter_mut() {
                *d = (c % 3) as u16;
                c /= 3;
            }
            let mut mat = MatFq::identity(6);
            mat.set(0, 1, digits[0]);
            mat.set(0, 2, digits[1]);
            mat.set(0, 3, digits[2]);
            mat.set(0, 4, digits[3]);
            mat.set(0, 5, digits[4]);
            mat.set(1, 5, digits[5]);
            mat.set(2, 5, digits[6]);
            mat.set(3, 5, digits[7]);
            mat.set(4, 5, digits[8]);
            if kind.contains_matrix(ft, &mat) {
                nset.push(mat);
            }
        }
        assert_eq!(nset.len(), 81, "the complement has order q^4 at rank three");

        // Translating the Whittaker data by the conjugated image of an
        // element of the stabilizing subgroup, and the section by its
        // odd-group part, scales the sum by the exact degenerate
        // character value of the complement part.
        let wln = w_ln_even(ft, 3, 1);
        let wli = wln.inv(ft).unwrap();
        for gi in [0u32, 2, 7, 19] {
            let g = so3.elem(gi);
            let tsec = TranslatedSection { inner: &sec, right: g.clone() };
            let scol_t = section_column_sub_fn(&so3, &tsec);
            for nhat in nset.iter().step_by(11) {
                let inner = embed_odd_in_even(ft, 3, 1, g).mul(nhat, ft);
                let right = wln.mul(&inner, ft).mul(&wli, ft);
                let wfun_t = |x: &MatFq| -> CycNum { wfun(&x.mul(&right, ft)) };
                let wcol_t = whittaker_column_sub_fn(&so3, 3, 1, &wfun_t);
                let lhs = zeta_pair_columns(&wcol_t, &scol_t, 3);
                let parg = psi_gamma_arg(ft, 3, 1, nhat);
                let rhs = psi_value(ft, parg).mul(&base);
                assert!(
                    cyc_eq(&lhs, &rhs),
                    "rank-three equivariance fails at g={gi} with complement element {nhat:?}"
                );
            }
        }
    }

    #[test]
    fn induced_characters_frobenius_reciprocity() {
        let f = field(3);
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let t3 = char_table(&so3).unwrap();
        let (members, sigmas) = levi_sigma_tables(&so3, &[1]).unwrap();
        assert_eq!(members.len(), 6);
        assert_eq!(sigmas.len(), 2);
        let cls = so3.classes();
        let id_class = cls.class_of[so3.identity_idx() as usize] as usize;
        for (label, sig) in &sigmas {
            let vals = induced_class_values(&so3, &members, sig);
            assert!(
                cyc_eq(&vals[id_class], &CycNum::from_u64(4)),
                "the induced degree must be the index, sigma {label}"
            );
            for r in 0..t3.num_irreps() {
                let mut lhs = CycNum::zero();
                for c in 0..cls.count() {
                    lhs = lhs.add(
                        &vals[c]
                            .mul(&t3.values[r][cls.inverse_class[c] as usize])
                            .mul(&CycNum::from_u64(cls.sizes[c] as u64)),
                    );
                }
                let lhs = lhs.div_u64(so3.order()).canonicalize();
                let mut rhs = CycNum::zero();
                for &b in &members {
                    let binv = so3.inv_idx(b);
                    let cb = cls.class_of[binv as usize] as usize;
                    rhs = rhs.add(&sig[&b].mul(&t3.values[r][cb]));
                }
                let rhs = rhs.div_u64(members.len() as u64).canonicalize();
                assert!(cyc_eq(&lhs, &rhs), "reciprocity fails for sigma {label} against row {r}");
            }
        }
        // The empty cut list yields the irreducibles of the group itself.
        let (all_members, selfs) = levi_sigma_tables(&so3, &[]).unwrap();
        assert_eq!(all_members.len() as u64, so3.order());
        assert_eq!(selfs.len(), t3.num_irreps());
    }

    #[test]
    fn multiplicity_pairings_smoke() {
        let f = field(3);
        let so4 = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l: 2 }).unwrap();
        let te = char_table(&so4).unwrap();
        let rse = analyze(&so4, &te).unwrap();
        let pis = rse.generic_cuspidal();

        // Sub-rank pairing: restriction to the embedded rank-one odd
        // group against each of its irreducibles.
        let so3 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 1 }).unwrap();
        let t3 = char_table(&so3).unwrap();
        let n_members = crate::subgroups::n_upper_group(&so4, 1);
        assert_eq!(n_members.len(), 1, "the complement is trivial at this rank");
        for &pi in &pis {
            for r in 0..t3.num_irreps() {
                let d = hom_dimension_sub(&so4, &te, pi, &so3, &t3.values[r], 1, &n_members).unwrap();
                assert!(d <= 1, "multiplicity must be at most one, found {d}");
            }
            // Induced data from the Borel of the rank-one odd group.
            let (members, sigmas) = levi_sigma_tables(&so3, &[1]).unwrap();
            for (label, sig) in &sigmas {
                let vals = induced_class_values(&so3, &members, sig);
                let d = hom_dimension_sub(&so4, &te, pi, &so3, &vals, 1, &n_members).unwrap();
                assert!(d <= 1, "induced multiplicity must be at most one for {label}");
            }
        }

        // Full-rank pairing through the rank-two odd group, inducing from
        // the Siegel parabolic.
        let so5 = Group::enumerate(f.clone(), GroupKind::SoOdd { l: 2 }).unwrap();
        let (members, sigmas) = levi_sigma_tables(&so5, &[2]).unwrap();
        assert_eq!(members.len(), 48 * 27);
        for (label, sig) in sigmas.iter() {
            let vals = induced_class_values(&so5, &members, sig);
            for &pi in &pis {
                let d = hom_dimension_full(&so4, &te, pi, &so5, &vals).unwrap();
                assert!(d <= 1, "full-rank multiplicity must be at most one for {label}");
            }
        }
    }

    #[test]
    fn whittaker_span_completeness() {
        let f = field(3);
        let gl1 = Group::enumerate(f.clone(), GroupKind::Gl { n: 1 }).unwrap();
        let t1 = char_table(&gl1).unwrap();
        let rs1 = analyze(&gl1, &t1).unwrap();
        let g1: Vec<usize> = (0..t1.num_irreps()).filter(|&r| rs1.is_generic(r)).collect();
        whittaker_span_check(&gl1, &t1, &g1).unwrap();
        let gl2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let t2 = char_table(&gl2).unwrap();
        let rs2 = analyze(&gl2, &t2).unwrap();
        let g2: Vec<usize> = (0..t2.num_irreps()).filter(|&r| rs2.is_generic(r)).collect();
        whittaker_span_check(&gl2, &t2, &g2).unwrap();
        // Dropping one generic row must break completeness.
        assert!(whittaker_span_check(&gl2, &t2, &g2[1..]).is_err());
    }
}
