//! Finite fields `F_q`, `q = p^r` with `p` an odd prime.
//!
//! Elements are stored as `u16` indices: the element with base-`p` digit
//! vector `(c_0, .., c_{r-1})` (coefficients of the power basis over the
//! fixed modulus) has index `sum c_i p^i`. Index 0 is zero and index 1 is
//! one, and for `r = 1` the index is the residue itself. All enumeration
//! orders below are index order, which makes every derived choice
//! (modulus, nonsquare `rho`, generators) deterministic.

use crate::cyclo::CycNum;
use crate::error::{Error, Result};

pub type Fq = u16;

/// Largest field size accepted; group enumeration bounds keep practical
/// sizes far below this.
pub const MAX_Q: u64 = 10_000;

/// Dense add/mul tables are built below this size (q^2 entries each).
const TABLE_Q: u64 = 256;

/// Arithmetic context for `F_{p^r}`.
///
/// The modulus is the lexicographically least monic irreducible polynomial
/// of degree `r` over `F_p`, where polynomials are ordered by the integer
/// encoding of their non-leading coefficient vector `(c_0, .., c_{r-1})`.
#[derive(Debug, Clone)]
pub struct FieldTable {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    /// Non-leading coefficients of the monic modulus, low degree first.
    pub modulus: Vec<u64>,
    add_table: Vec<Fq>,
    mul_table: Vec<Fq>,
    inv_table: Vec<Fq>,
    trace_table: Vec<u64>,
    square_table: Vec<bool>,
    /// Least nonsquare of `F_q^*` in index order.
    pub rho: Fq,
    /// `rho / 2`.
    pub gamma: Fq,
    inv2: Fq,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial remainder of `a` by monic `b` over `F_p`; coefficient vectors
/// are low degree first and not normalized for trailing zeros.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap() % p;
        let da = a.len() - 1;
        if lead != 0 {
            for i in 0..db {
                let t = (lead * b[i]) % p;
                let idx = da - db + i;
                a[idx] = (a[idx] + p - t) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// all monic polynomials of degree up to `deg/2`.
fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = k;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            if poly_is_zero(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    pub fn new(p: u64, r: u32) -> Result<FieldTable> {
        if !is_prime(p) || p == 2 {
            return Err(Error::invalid(format!("p = {p} must be an odd prime")));
        }
        if r == 0 {
            return Err(Error::invalid("extension degree r must be positive"));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::resource(format!("q = {p}^{r} exceeds bound {MAX_Q}")))?;

        // Least monic irreducible of degree r in index order.
        let mut modulus = None;
        for k in 0..q {
            let mut c = Vec::with_capacity(r as usize + 1);
            let mut t = k;
            for _ in 0..r {
                c.push(t % p);
                t /= p;
            }
            c.push(1);
            if poly_irreducible(&c, p) {
                c.pop();
                modulus = Some(c);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of each degree exists");

        let mut ft = FieldTable {
            p,
            r,
            q,
            modulus,
            add_table: Vec::new(),
            mul_table: Vec::new(),
            inv_table: Vec::new(),
            trace_table: Vec::new(),
            square_table: Vec::new(),
            rho: 0,
            gamma: 0,
            inv2: 0,
        };

        if q <= TABLE_Q {
            let qu = q as usize;
            let mut add = vec![0 as Fq; qu * qu];
            let mut mul = vec![0 as Fq; qu * qu];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = ft.add_direct(a as Fq, b as Fq);
                    mul[(a * q + b) as usize] = ft.mul_direct(a as Fq, b as Fq);
                }
            }
            ft.add_table = add;
            ft.mul_table = mul;
        }

        let mut inv = vec![0 as Fq; q as usize];
        for a in 1..q as Fq {
            inv[a as usize] = ft.pow(a, q - 2);
        }
        ft.inv_table = inv;

        let mut tr = vec![0u64; q as usize];
        for a in 0..q as Fq {
            let mut s = 0 as Fq;
            let mut frob = a;
            for _ in 0..r {
                s = ft.add(s, frob);
                frob = ft.pow(frob, p);
            }
            debug_assert!((s as u64) < p, "trace must land in the prime field");
            tr[a as usize] = s as u64;
        }
        ft.trace_table = tr;

        let mut sq = vec![false; q as usize];
        for a in 0..q as Fq {
            sq[(ft.mul(a, a)) as usize] = true;
        }
        ft.square_table = sq;

        ft.rho = (1..q as Fq)
            .find(|&a| !ft.square_table[a as usize])
            .expect("odd q has a nonsquare");
        ft.inv2 = ft.inv(ft.from_int(2));
        ft.gamma = ft.mul(ft.rho, ft.inv2);
        Ok(ft)
    }

    #[inline]
    pub fn zero(&self) -> Fq {
        0
    }

    #[inline]
    pub fn one(&self) -> Fq {
        1
    }

    /// Digits of the power-basis representation, low degree first.
    pub fn digits(&self, a: Fq) -> Vec<u64> {
        let mut c = Vec::with_capacity(self.r as usize);
        let mut t = a as u64;
        for _ in 0..self.r {
            c.push(t % self.p);
            t /= self.p;
        }
        c
    }

    fn encode(&self, digits: &[u64]) -> Fq {
        let mut k = 0u64;
        for &d in digits.iter().rev() {
            k = k * self.p + d % self.p;
        }
        k as Fq
    }

    fn add_direct(&self, a: Fq, b: Fq) -> Fq {
        if self.r == 1 {
            return ((a as u64 + b as u64) % self.p) as Fq;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn mul_direct(&self, a: Fq, b: Fq) -> Fq {
        if self.r == 1 {
            return ((a as u64 * b as u64) % self.p) as Fq;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let r = self.r as usize;
        let mut prod = vec![0u64; 2 * r - 1];
        for i in 0..r {
            if da[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // Reduce with x^r = -modulus.
        for d in (r..2 * r - 1).rev() {
            let lead = prod[d];
            if lead != 0 {
                prod[d] = 0;
                for i in 0..r {
                    let t = (lead * self.modulus[i]) % self.p;
                    prod[d - r + i] = (prod[d - r + i] + self.p - t) % self.p;
                }
            }
        }
        prod.truncate(r);
        self.encode(&prod)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if !self.add_table.is_empty() {
            self.add_table[a as usize * self.q as usize + b as usize]
        } else {
            self.add_direct(a, b)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if !self.mul_table.is_empty() {
            self.mul_table[a as usize * self.q as usize + b as usize]
        } else {
            self.mul_direct(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.r == 1 {
            return ((self.p - a as u64) % self.p) as Fq;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&d)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        self.inv_table[a as usize]
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Halve: multiply by the inverse of 2.
    #[inline]
    pub fn half(&self, a: Fq) -> Fq {
        self.mul(a, self.inv2)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        let m = n.rem_euclid(self.p as i64) as u64;
        m as Fq
    }

    /// Absolute trace to `F_p`, returned as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: Fq) -> u64 {
        self.trace_table[a as usize]
    }

    /// Norm to `F_p`: product of the Frobenius orbit.
    pub fn norm(&self, a: Fq) -> Fq {
        let mut acc = self.one();
        let mut frob = a;
        for _ in 0..self.r {
            acc = self.mul(acc, frob);
            frob = self.pow(frob, self.p);
        }
        debug_assert!((acc as u64) < self.p);
        acc
    }

    #[inline]
    pub fn is_square(&self, a: Fq) -> bool {
        self.square_table[a as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> u64 {
        assert!(a != 0);
        let mut t = a;
        let mut n = 1;
        while t != self.one() {
            t = self.mul(t, a);
            n += 1;
        }
        n
    }

    /// Least generator of `F_q^*` in index order.
    pub fn primitive_element(&self) -> Fq {
        (1..self.q as Fq)
            .find(|&a| self.mult_order(a) == self.q - 1)
            .expect("F_q^* is cyclic")
    }

    /// Discrete log base the least generator; panics on zero.
    pub fn dlog(&self, a: Fq) -> u64 {
        assert!(a != 0, "dlog of zero");
        let g = self.primitive_element();
        let mut t = self.one();
        for k in 0..self.q - 1 {
            if t == a {
                return k;
            }
            t = self.mul(t, g);
        }
        unreachable!("generator reaches every nonzero element");
    }

    /// Replace `rho` by a caller-chosen nonsquare (diagnostic override).
    pub fn with_rho(mut self, rho: Fq) -> Result<FieldTable> {
        if rho == 0 || self.is_square(rho) {
            return Err(Error::invalid(format!("rho = {rho} is not a nonsquare")));
        }
        self.rho = rho;
        self.gamma = self.mul(rho, self.inv2);
        Ok(self)
    }
}

/// Additive character `psi_a(x) = zeta_p^{Tr(a x)}` of `F_q`.
#[derive(Debug, Clone)]
pub struct AdditiveChar {
    pub p: u64,
    /// Scaling element `a`; the standard character has `a = 1`.
    pub scale: Fq,
}

impl AdditiveChar {
    pub fn standard(ft: &FieldTable) -> AdditiveChar {
        AdditiveChar { p: ft.p, scale: ft.one() }
    }

    pub fn scaled(ft: &FieldTable, a: Fq) -> AdditiveChar {
        AdditiveChar { p: ft.p, scale: a }
    }

    /// Exponent of `zeta_p`: `Tr(scale * x)` as a residue mod `p`.
    #[inline]
    pub fn exponent(&self, ft: &FieldTable, x: Fq) -> u64 {
        ft.trace(ft.mul(self.scale, x))
    }

    /// Exact character value in `Q(zeta_p)`.
    pub fn eval(&self, ft: &FieldTable, x: Fq) -> CycNum {
        CycNum::root_of_unity(self.p, self.exponent(ft, x))
    }

    /// Value of the inverse character.
    pub fn eval_inv(&self, ft: &FieldTable, x: Fq) -> CycNum {
        CycNum::root_of_unity(self.p, (self.p - self.exponent(ft, x)) % self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldTable::new(2, 1).is_err());
        assert!(FieldTable::new(4, 1).is_err());
        assert!(FieldTable::new(3, 0).is_err());
        assert!(FieldTable::new(101, 3).is_err()); // over the size bound
    }

    #[test]
    fn prime_field_f3() {
        let ft = FieldTable::new(3, 1).unwrap();
        assert_eq!(ft.q, 3);
        assert_eq!(ft.rho, 2, "least nonsquare of F_3");
        assert_eq!(ft.gamma, 1, "2/2 = 1 in F_3");
        assert_eq!(ft.add(2, 2), 1);
        assert_eq!(ft.mul(2, 2), 1);
        assert_eq!(ft.inv(2), 2);
        assert_eq!(ft.trace(2), 2);
    }

    #[test]
    fn prime_field_f5() {
        let ft = FieldTable::new(5, 1).unwrap();
        assert_eq!(ft.rho, 2, "least nonsquare of F_5");
        assert_eq!(ft.gamma, 1, "2/2 = 1 in F_5");
        assert_eq!(ft.half(3), 4, "3/2 = 3*3 = 4 mod 5");
    }

    // Oracle for F_9: direct polynomial arithmetic mod (x^2 + 1, 3),
    // computed by hand here and frozen.
    #[test]
    fn extension_field_f9() {
        let ft = FieldTable::new(3, 2).unwrap();
        assert_eq!(ft.modulus, vec![1, 0], "modulus is x^2 + 1");
        // x has index 3; (x)*(x) = -1 = 2.
        assert_eq!(ft.mul(3, 3), 2);
        // (1 + x)(1 + x) = 1 + 2x + x^2 = 2x, index 6.
        assert_eq!(ft.mul(4, 4), 6);
        // Trace of x is x + x^3 = x - x = 0.
        assert_eq!(ft.trace(3), 0);
        // Norm of x is x * x^3 = -x^2 = 1.
        assert_eq!(ft.norm(3), 1);
        // Norm of the least generator of F_9^* generates F_3^*.
        let g = ft.primitive_element();
        assert_eq!(ft.mult_order(g), 8);
        let n = ft.norm(g);
        let fp = FieldTable::new(3, 1).unwrap();
        assert_eq!(fp.mult_order(n), 2, "norm is surjective on generators");
        // Full norm table against the brute-force conjugate product.
        for a in 1..9 as Fq {
            let conj = ft.pow(a, 3);
            assert_eq!(ft.norm(a), ft.mul(a, conj));
        }
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let ft = FieldTable::new(3, 2).unwrap();
        let q = ft.q as Fq;
        for a in 0..q {
            for b in 0..q {
                assert_eq!(ft.add(a, b), ft.add(b, a));
                assert_eq!(ft.mul(a, b), ft.mul(b, a));
                for c in 0..q {
                    assert_eq!(ft.mul(a, ft.add(b, c)), ft.add(ft.mul(a, b), ft.mul(a, c)));
                    assert_eq!(ft.mul(ft.mul(a, b), c), ft.mul(a, ft.mul(b, c)));
                }
            }
            assert_eq!(ft.add(a, ft.neg(a)), 0);
            if a != 0 {
                assert_eq!(ft.mul(a, ft.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rho_override() {
        let ft = FieldTable::new(5, 1).unwrap().with_rho(3).unwrap();
        assert_eq!(ft.rho, 3);
        assert_eq!(ft.gamma, ft.mul(3, ft.inv(2)));
        assert!(FieldTable::new(5, 1).unwrap().with_rho(4).is_err());
    }

    #[test]
    fn additive_char_is_multiplicative_in_exponent() {
        let ft = FieldTable::new(3, 2).unwrap();
        let psi = AdditiveChar::standard(&ft);
        for a in 0..9 as Fq {
            for b in 0..9 as Fq {
                let lhs = psi.eval(&ft, ft.add(a, b));
                let rhs = psi.eval(&ft, a).mul(&psi.eval(&ft, b));
                assert_eq!(lhs, rhs);
            }
        }
        // Nontriviality: some element has nonzero trace.
        assert!((0..9 as Fq).any(|a| psi.exponent(&ft, a) != 0));
    }
}
