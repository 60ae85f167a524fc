//! Per-representation data derived from the character table: Whittaker
//! multiplicity (genericity), cuspidality, central characters, the
//! outer conjugate, and Bessel functions computed two independent ways.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chartab::CharTable;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::group::{Group, GroupKind};
use crate::mat::MatFq;
use crate::subgroups::{flag_radical, outer_c, standard_subgroups, t_tilde};
use crate::unip::{psi_gl_arg, psi_so_even_arg, psi_so_odd_arg, psi_value, psi_value_inv};

/// The fixed generic-character argument on the unipotent radical of
/// the standard Borel, per group family.
pub fn psi_u_arg(g: &Group, u: &MatFq) -> Fq {
    match g.kind {
        GroupKind::Gl { .. } => psi_gl_arg(&g.f, u),
        GroupKind::SoOdd { l } => psi_so_odd_arg(&g.f, l, u),
        GroupKind::SoEvenQs { l } => psi_so_even_arg(&g.f, l, u),
    }
}

/// Whittaker multiplicities and cuspidality flags, one per table row.
pub struct RepSet {
    pub whittaker_mult: Vec<u64>,
    pub cuspidal: Vec<bool>,
}

impl RepSet {
    pub fn is_generic(&self, r: usize) -> bool {
        self.whittaker_mult[r] == 1
    }

    /// Row indices that are both generic and cuspidal, in table order.
    pub fn generic_cuspidal(&self) -> Vec<usize> {
        (0..self.whittaker_mult.len())
            .filter(|&r| self.is_generic(r) && self.cuspidal[r])
            .collect()
    }
}

/// Average of `chi * weight` over a subset of the group, which must
/// come out a plain rational when the weights are class-function-like.
fn averaged_sum(
    g: &Group,
    t: &CharTable,
    r: usize,
    members: &[u32],
    weight: impl Fn(u32) -> CycNum,
) -> CycNum {
    let cls = g.classes();
    let mut s = CycNum::zero();
    for &m in members {
        let v = &t.values[r][cls.class_of[m as usize] as usize];
        s = s.add(&v.mul(&weight(m)));
    }
    let inv = BigRational::new(BigInt::from(1), BigInt::from(members.len() as u64));
    s.scale(&inv).canonicalize()
}

/// Compute genericity and cuspidality for every irreducible.
pub fn analyze(g: &Group, t: &CharTable) -> Result<RepSet> {
    let sub = standard_subgroups(g);
    // Radicals of the standard maximal parabolic subgroups.
    let cut_range: Vec<usize> = match g.kind {
        GroupKind::Gl { n } => (1..n).collect(),
        GroupKind::SoOdd { l } => (1..=l).collect(),
        GroupKind::SoEvenQs { l } => (1..l).collect(),
    };
    let radicals: Vec<Vec<u32>> = cut_range
        .iter()
        .map(|&c| flag_radical(g, &[c]))
        .collect();

    let mut whittaker_mult = Vec::with_capacity(t.num_irreps());
    let mut cuspidal = Vec::with_capacity(t.num_irreps());
    for r in 0..t.num_irreps() {
        let m = averaged_sum(g, t, r, &sub.u, |u| {
            psi_value_inv(&g.f, psi_u_arg(g, g.elem(u)))
        });
        let m = m
            .as_rational()
            .ok_or_else(|| Error::domain("Whittaker multiplicity must be rational"))?;
        if !m.is_integer() || m < BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::domain(format!(
                "Whittaker multiplicity {m} is not a non-negative integer"
            )));
        }
        whittaker_mult.push(
            m.to_integer()
                .try_into()
                .map_err(|_| Error::domain("multiplicity out of range"))?,
        );
        // Cuspidal: no invariants under any standard maximal radical.
        let mut cusp = true;
        for rad in &radicals {
            let inv_dim = averaged_sum(g, t, r, rad, |_| CycNum::one());
            let rational = inv_dim
                .as_rational()
                .ok_or_else(|| Error::domain("invariant dimension must be rational"))?;
            if !rational.is_integer() {
                return Err(Error::domain("invariant dimension must be an integer"));
            }
            if rational != BigRational::from_integer(BigInt::from(0)) {
                cusp = false;
            }
        }
        cuspidal.push(cusp);
    }
    Ok(RepSet {
        whittaker_mult,
        cuspidal,
    })
}

/// Central character of row `r`: values `chi(z)/chi(1)` over the
/// center, in the center's element order.
pub fn central_character(g: &Group, t: &CharTable, r: usize) -> Vec<CycNum> {
    let cls = g.classes();
    let dim = BigRational::new(BigInt::from(1), BigInt::from(t.degrees[r]));
    g.center()
        .iter()
        .map(|&z| {
            t.values[r][cls.class_of[z as usize] as usize]
                .scale(&dim)
                .canonicalize()
        })
        .collect()
}

/// Row index of the outer conjugate `pi^c` with character
/// `g -> chi(c g c)`.
pub fn conjugate_rep_index(g: &Group, t: &CharTable, r: usize) -> usize {
    let l = match g.kind {
        GroupKind::SoEvenQs { l } => l,
        _ => panic!("outer conjugation lives on the even family"),
    };
    let cls = g.classes();
    let c = outer_c(&g.f, l);
    let conj_vals: Vec<CycNum> = cls
        .reps
        .iter()
        .map(|&rep| {
            let m = c.mul(&g.elem(rep).mul(&c, &g.f), &g.f);
            let ci = cls.class_of[g.idx_expect(&m) as usize] as usize;
            t.values[r][ci].clone()
        })
        .collect();
    (0..t.num_irreps())
        .find(|&s| t.values[s] == conj_vals)
        .expect("the conjugate of an irreducible character is in the table")
}

/// Bessel function by the closed form
/// `B(g) = (1/|U|) sum_u psi^{-1}(u) chi(g u)`, one value per group
/// element.
pub fn bessel_closed_form(g: &Group, t: &CharTable, r: usize) -> Vec<CycNum> {
    let sub = standard_subgroups(g);
    let cls = g.classes();
    let psi_inv: Vec<CycNum> = sub
        .u
        .iter()
        .map(|&u| psi_value_inv(&g.f, psi_u_arg(g, g.elem(u))))
        .collect();
    let inv_u = BigRational::new(BigInt::from(1), BigInt::from(sub.u.len() as u64));
    (0..g.order() as u32)
        .map(|gi| {
            let mut s = CycNum::zero();
            for (j, &u) in sub.u.iter().enumerate() {
                let x = g.mul_idx(gi, u);
                s = s.add(&psi_inv[j].mul(&t.values[r][cls.class_of[x as usize] as usize]));
            }
            s.scale(&inv_u).canonicalize()
        })
        .collect()
}

/// Bessel function through the Whittaker model: project the delta
/// function at the identity of `Ind_U^G psi` onto the `chi`-isotypic
/// part, average into a Whittaker vector, and normalize at the
/// identity. Returns one value per group element.
pub fn bessel_whittaker_oracle(g: &Group, t: &CharTable, r: usize) -> Result<Vec<CycNum>> {
    let sub = standard_subgroups(g);
    let cls = g.classes();
    let order = g.order();
    let psi_of: Vec<CycNum> = sub
        .u
        .iter()
        .map(|&u| psi_value(&g.f, psi_u_arg(g, g.elem(u))))
        .collect();
    let psi_inv_of: Vec<CycNum> = sub
        .u
        .iter()
        .map(|&u| psi_value_inv(&g.f, psi_u_arg(g, g.elem(u))))
        .collect();
    // (e_chi phi_0)(x) = (chi(1)/|G|) sum_{u in U} conj(chi)(x^{-1} u) psi(u)
    let factor = BigRational::new(BigInt::from(t.degrees[r]), BigInt::from(order));
    let echi: Vec<CycNum> = (0..order as u32)
        .map(|x| {
            let xi = g.inv_idx(x);
            let mut s = CycNum::zero();
            for (j, &u) in sub.u.iter().enumerate() {
                let h = g.mul_idx(xi, u);
                let hc = cls.inverse_class[cls.class_of[h as usize] as usize] as usize;
                s = s.add(&t.values[r][hc].mul(&psi_of[j]));
            }
            s.scale(&factor)
        })
        .collect();
    // v_0 = (1/|U|) sum_{u} psi^{-1}(u) (right translate by u of e_chi phi_0)
    let inv_u = BigRational::new(BigInt::from(1), BigInt::from(sub.u.len() as u64));
    let v0: Vec<CycNum> = (0..order as u32)
        .map(|x| {
            let mut s = CycNum::zero();
            for (j, &u) in sub.u.iter().enumerate() {
                s = s.add(&psi_inv_of[j].mul(&echi[g.mul_idx(x, u) as usize]));
            }
            s.scale(&inv_u)
        })
        .collect();
    let at_e = v0[g.identity_idx() as usize].clone();
    // A generic representation pins v_0(e) = chi(1) |U| / |G|.
    let expected = CycNum::from_rational(BigRational::new(
        BigInt::from(t.degrees[r] * sub.u.len() as u64),
        BigInt::from(order),
    ));
    if at_e != expected {
        return Err(Error::domain(
            "Whittaker vector has the wrong value at the identity",
        ));
    }
    let inv_at_e = at_e.inv()?;
    Ok(v0
        .into_iter()
        .map(|v| v.mul(&inv_at_e).canonicalize())
        .collect())
}

/// Transported Bessel values `g -> B(c t~^{-1} g t~ c)` used to compare
/// the conjugate representation's Bessel function.
pub fn bessel_conj_transport(g: &Group, bessel: &[CycNum]) -> Vec<CycNum> {
    let l = match g.kind {
        GroupKind::SoEvenQs { l } => l,
        _ => panic!("outer conjugation lives on the even family"),
    };
    // c itself is outside the group; only the full sandwich lands back
    // inside, so transport is done at the matrix level.
    let c = outer_c(&g.f, l);
    let tt = t_tilde(&g.f, l);
    let tt_inv = tt.inv(&g.f).unwrap();
    (0..g.order() as u32)
        .map(|x| {
            let m = c
                .mul(&tt_inv, &g.f)
                .mul(g.elem(x), &g.f)
                .mul(&tt, &g.f)
                .mul(&c, &g.f);
            bessel[g.idx_expect(&m) as usize].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::char_table;
    use crate::fq::FieldTable;
    use std::sync::Arc;

    fn even_group() -> (Arc<FieldTable>, Group) {
        let f = Arc::new(FieldTable::new(3, 1).unwrap());
        let g = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l: 2 }).unwrap();
        (f, g)
    }

    #[test]
    fn profiles_of_the_even_group() {
        let (_, g) = even_group();
        let t = char_table(&g).unwrap();
        let reps = analyze(&g, &t).unwrap();
        // Multiplicity-one: the Gelfand-Graev representation is
        // multiplicity free.
        assert!(reps.whittaker_mult.iter().all(|&m| m <= 1));
        // Generic dimensions sum to |G|/|U| = 80.
        let gg: u64 = (0..t.num_irreps())
            .filter(|&r| reps.is_generic(r))
            .map(|r| t.degrees[r])
            .sum();
        assert_eq!(gg, 80);
        // The generic cuspidal representations are exactly the four
        // eight-dimensional rows.
        let gc = reps.generic_cuspidal();
        assert_eq!(gc.len(), 4);
        for &r in &gc {
            assert_eq!(t.degrees[r], 8);
        }
        // The trivial character is neither cuspidal nor generic.
        let triv = (0..t.num_irreps())
            .find(|&r| t.values[r].iter().all(|v| *v == CycNum::one()))
            .unwrap();
        assert!(!reps.cuspidal[triv]);
        assert!(!reps.is_generic(triv));
        // Central characters of the cuspidal rows at -1 are signs.
        for &r in &gc {
            let omega = central_character(&g, &t, r);
            assert_eq!(omega.len(), 2);
            for v in omega {
                let q = v.as_rational().unwrap();
                assert!(
                    q == BigRational::from_integer(BigInt::from(1))
                        || q == BigRational::from_integer(BigInt::from(-1))
                );
            }
        }
    }

    #[test]
    fn profiles_of_gl() {
        let f = Arc::new(FieldTable::new(3, 1).unwrap());
        let g2 = Group::enumerate(f.clone(), GroupKind::Gl { n: 2 }).unwrap();
        let t2 = char_table(&g2).unwrap();
        let reps2 = analyze(&g2, &t2).unwrap();
        // Cuspidals of GL_2(F_3): the three two-dimensionals.
        let cusp: Vec<u64> = (0..t2.num_irreps())
            .filter(|&r| reps2.cuspidal[r])
            .map(|r| t2.degrees[r])
            .collect();
        assert_eq!(cusp, vec![2, 2, 2]);
        // Generic = everything beyond the two characters of degree 1.
        for r in 0..t2.num_irreps() {
            assert_eq!(reps2.is_generic(r), t2.degrees[r] > 1);
        }
        // GL_1 is degenerate: U is trivial, everything is generic and
        // cuspidal.
        let g1 = Group::enumerate(f, GroupKind::Gl { n: 1 }).unwrap();
        let t1 = char_table(&g1).unwrap();
        let reps1 = analyze(&g1, &t1).unwrap();
        assert!(reps1.whittaker_mult.iter().all(|&m| m == 1));
        assert!(reps1.cuspidal.iter().all(|&c| c));
    }

    #[test]
    fn bessel_two_routes_agree_on_one_cuspidal() {
        let (f, g) = even_group();
        let t = char_table(&g).unwrap();
        let reps = analyze(&g, &t).unwrap();
        let r = reps.generic_cuspidal()[0];
        let closed = bessel_closed_form(&g, &t, r);
        let oracle = bessel_whittaker_oracle(&g, &t, r).unwrap();
        assert_eq!(closed, oracle);
        assert!(closed[g.identity_idx() as usize].is_one());
        // Equivariance under U on both sides, sampled across cells.
        let sub = standard_subgroups(&g);
        for (step, gi) in (0..g.order() as u32).step_by(97).enumerate() {
            let _ = step;
            for &u1 in sub.u.iter().step_by(4) {
                for &u2 in sub.u.iter().step_by(5) {
                    let x = g.mul_idx(u1, g.mul_idx(gi, u2));
                    let arg = f.add(
                        psi_u_arg(&g, g.elem(u1)),
                        psi_u_arg(&g, g.elem(u2)),
                    );
                    let want = psi_value(&f, arg).mul(&closed[gi as usize]);
                    assert_eq!(closed[x as usize], want.canonicalize());
                }
            }
        }
    }

    #[test]
    fn bessel_of_gl_reps() {
        let f = Arc::new(FieldTable::new(3, 1).unwrap());
        let g = Group::enumerate(f, GroupKind::Gl { n: 2 }).unwrap();
        let t = char_table(&g).unwrap();
        let reps = analyze(&g, &t).unwrap();
        for r in 0..t.num_irreps() {
            if !reps.is_generic(r) {
                continue;
            }
            let closed = bessel_closed_form(&g, &t, r);
            let oracle = bessel_whittaker_oracle(&g, &t, r).unwrap();
            assert_eq!(closed, oracle);
        }
    }

    #[test]
    fn conjugate_transport_matches_conjugate_rep() {
        let (_, g) = even_group();
        let t = char_table(&g).unwrap();
        let reps = analyze(&g, &t).unwrap();
        for &r in &reps.generic_cuspidal() {
            let rc = conjugate_rep_index(&g, &t, r);
            // The conjugate of a generic cuspidal is generic cuspidal.
            assert!(reps.is_generic(rc) && reps.cuspidal[rc]);
            let transported = bessel_conj_transport(&g, &bessel_closed_form(&g, &t, r));
            let direct = bessel_closed_form(&g, &t, rc);
            assert_eq!(transported, direct);
        }
    }
}
