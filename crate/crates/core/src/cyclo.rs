//! Exact arithmetic in cyclotomic fields `Q(zeta_e)`.
//!
//! A value is a rational-coefficient vector over the power basis
//! `{zeta_e^k : 0 <= k < phi(e)}`, reduced modulo the `e`-th cyclotomic
//! polynomial. Conductors are unified to the lcm on demand, so values of
//! different conductors mix freely. Equality is exact; there is no
//! tolerance anywhere.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

fn phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

struct CycloPoly {
    /// Monic coefficients of the cyclotomic polynomial, low degree first.
    rat: Vec<BigRational>,
}

fn cyclo_poly(e: u64) -> Arc<CycloPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    let ints = cyclo_poly_int(e);
    let rat = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let arc = Arc::new(CycloPoly { rat });
    cache.lock().unwrap().insert(e, arc.clone());
    arc
}

/// Integer coefficients of the `e`-th cyclotomic polynomial via exact
/// division of `x^e - 1` by the cyclotomic polynomials of proper divisors.
fn cyclo_poly_int(e: u64) -> Vec<BigInt> {
    if e == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::from(1);
    for d in 1..e {
        if e % d == 0 {
            let fd = cyclo_poly_int(d);
            num = poly_div_exact_int(&num, &fd);
        }
    }
    num
}

/// Exact division of integer polynomials (low degree first), panicking on a
/// nonzero remainder; divisor must be monic.
fn poly_div_exact_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let da = rem.len() - 1;
    assert!(da >= db);
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for d in (db..=da).rev() {
        let c = rem[d].clone();
        if c.is_zero() {
            continue;
        }
        quot[d - db] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            rem[d - db + i] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

/// Exact cyclotomic number.
#[derive(Clone)]
pub struct CycNum {
    e: u64,
    /// Coefficients over the power basis, length `phi(e)`.
    c: Vec<BigRational>,
}

/// Equality is value equality: operands are unified to a common conductor
/// before comparing coefficient vectors, so `zeta_6 == -zeta_3^2`.
impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.e == other.e {
            return self.c == other.c;
        }
        let (a, b) = self.unified(other);
        a.c == b.c
    }
}

impl Eq for CycNum {}

impl CycNum {
    pub fn conductor(&self) -> u64 {
        self.e
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn zero() -> CycNum {
        CycNum { e: 1, c: vec![BigRational::zero()] }
    }

    pub fn one() -> CycNum {
        CycNum { e: 1, c: vec![BigRational::one()] }
    }

    pub fn from_rational(r: BigRational) -> CycNum {
        CycNum { e: 1, c: vec![r] }
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_u64(n: u64) -> CycNum {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_e^k`, reduced to the power basis.
    pub fn root_of_unity(e: u64, k: u64) -> CycNum {
        assert!(e >= 1);
        let k = (k % e) as usize;
        let deg = phi(e) as usize;
        if (k as u64) < deg as u64 {
            let mut c = vec![BigRational::zero(); deg];
            c[k] = BigRational::one();
            return CycNum { e, c };
        }
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        let c = reduce_mod_cyclo(raw, e);
        CycNum { e, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The value as a rational number, if it lies in `Q`.
    ///
    /// Correct for reduced power-basis vectors only when the tail
    /// coefficients vanish; callers needing the sharp test should
    /// `canonicalize` first (a rational can have nonzero tail at
    /// non-squarefree conductors, e.g. `zeta_4^2 = -1` reduces fine, but
    /// `zeta_9^3 + zeta_9^6 = -1` does not have zero tail at conductor 9).
    pub fn as_rational(&self) -> Option<BigRational> {
        let canon = self.canonicalize();
        if canon.e == 1 {
            Some(canon.c[0].clone())
        } else {
            None
        }
    }

    fn lift_to(&self, e: u64) -> CycNum {
        if self.e == e {
            return self.clone();
        }
        debug_assert!(e % self.e == 0);
        let step = (e / self.e) as usize;
        let deg = phi(e) as usize;
        let mut raw = vec![BigRational::zero(); (self.c.len() - 1) * step + 1];
        for (j, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                raw[j * step] += coeff;
            }
        }
        let mut c = reduce_mod_cyclo(raw, e);
        c.resize(deg, BigRational::zero());
        CycNum { e, c }
    }

    fn unified(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.e == other.e {
            return (self.clone(), other.clone());
        }
        let e = lcm(self.e, other.e);
        (self.lift_to(e), other.lift_to(e))
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = self.unified(other);
        for (x, y) in a.c.iter_mut().zip(&b.c) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = self.unified(other);
        for (x, y) in a.c.iter_mut().zip(&b.c) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycNum {
        CycNum { e: self.e, c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero();
        }
        let (a, b) = self.unified(other);
        let mut raw = vec![BigRational::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut c = reduce_mod_cyclo(raw, a.e);
        c.resize(phi(a.e) as usize, BigRational::zero());
        CycNum { e: a.e, c }
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum { e: self.e, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn div_u64(&self, n: u64) -> CycNum {
        assert!(n != 0);
        let r = BigRational::new(BigInt::one(), BigInt::from(n));
        self.scale(&r)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero cyclotomic number"));
        }
        let m = cyclo_poly(self.e);
        let inv = poly_mod_inverse(&self.c, &m.rat)
            .expect("nonzero element of a field has an inverse");
        let mut c = inv;
        c.resize(phi(self.e) as usize, BigRational::zero());
        Ok(CycNum { e: self.e, c })
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        let (a, b) = self.unified(other);
        Ok(a.mul(&b.inv()?))
    }

    /// Galois automorphism `zeta_e -> zeta_e^k`, `gcd(k, e) = 1`.
    pub fn galois(&self, k: u64) -> CycNum {
        assert_eq!(num_integer::gcd(k, self.e), 1, "galois index must be a unit");
        let mut acc = CycNum { e: self.e, c: vec![BigRational::zero(); self.c.len()] };
        for (j, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let t = CycNum::root_of_unity(self.e, (j as u64 * k) % self.e).scale(coeff);
            acc = acc.add(&t);
        }
        acc
    }

    /// Complex conjugation `zeta_e -> zeta_e^{-1}`.
    pub fn conj(&self) -> CycNum {
        if self.e == 1 {
            return self.clone();
        }
        self.galois(self.e - 1)
    }

    /// Rewrite at the minimal conductor (the conductor of the value).
    /// The result never has conductor congruent to 2 mod 4.
    pub fn canonicalize(&self) -> CycNum {
        let mut cur = self.clone();
        'outer: loop {
            if cur.e == 1 {
                return cur;
            }
            for p in prime_factors(cur.e) {
                let d = cur.e / p;
                if let Some(down) = cur.descend_to(d) {
                    cur = down;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Try to express the value in `Q(zeta_d)` for a proper divisor `d` of
    /// the conductor by solving an exact linear system over the basis images.
    fn descend_to(&self, d: u64) -> Option<CycNum> {
        debug_assert!(self.e % d == 0 && d >= 1);
        let rows = phi(self.e) as usize;
        let cols = phi(d) as usize;
        // Column j is zeta_d^j = zeta_e^{j * e/d} in the conductor-e basis.
        let step = self.e / d;
        let mut m = vec![vec![BigRational::zero(); cols]; rows];
        for j in 0..cols {
            let col = CycNum::root_of_unity(self.e, (j as u64 * step) % self.e);
            for i in 0..rows {
                m[i][j] = col.c[i].clone();
            }
        }
        let sol = solve_exact(m, self.c.clone())?;
        Some(CycNum { e: d, c: sol })
    }

    /// Canonical serialization string: conductor plus reduced coefficients.
    pub fn canonical_string(&self) -> String {
        let canon = self.canonicalize();
        let coeffs: Vec<String> = canon.c.iter().map(rat_string).collect();
        format!("cyc({};{})", canon.e, coeffs.join(","))
    }
}

fn rat_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let num: BigInt = n.parse().ok()?;
    let den: BigInt = d.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Reduce a raw coefficient vector modulo the cyclotomic polynomial,
/// wrapping exponents by `x^e = 1` first.
fn reduce_mod_cyclo(raw: Vec<BigRational>, e: u64) -> Vec<BigRational> {
    let deg = phi(e) as usize;
    let eu = e as usize;
    let mut wrapped = vec![BigRational::zero(); eu.min(raw.len()).max(deg)];
    for (k, coeff) in raw.into_iter().enumerate() {
        if !coeff.is_zero() {
            wrapped[k % eu] += coeff;
        }
    }
    if wrapped.len() <= deg {
        wrapped.resize(deg, BigRational::zero());
        return wrapped;
    }
    let m = cyclo_poly(e);
    let md = m.rat.len() - 1;
    for d in (md..wrapped.len()).rev() {
        if wrapped[d].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut wrapped[d], BigRational::zero());
        for i in 0..md {
            let t = &c * &m.rat[i];
            wrapped[d - md + i] -= t;
        }
    }
    wrapped.truncate(deg);
    wrapped.resize(deg, BigRational::zero());
    wrapped
}

fn poly_deg(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn poly_rem_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    while let Some(da) = poly_deg(&rem) {
        if da < db {
            break;
        }
        let f = &rem[da] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            rem[da - db + i] -= t;
        }
        rem[da] = BigRational::zero();
    }
    rem
}

/// Inverse of `a` modulo `m` in `Q[x]` via extended Euclid; `None` when
/// `gcd(a, m)` is not constant.
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // Invariants: r0 = s0 * a (mod m), r1 = s1 * a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: Vec<BigRational> = vec![BigRational::zero()];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let d = poly_deg(&r0)?;
    if d != 0 {
        return None;
    }
    let c = r0[0].clone();
    let inv = s0.iter().map(|x| x / &c).collect::<Vec<_>>();
    Some(poly_rem_rat(&inv, m))
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let da0 = poly_deg(&rem).unwrap_or(0);
    let mut quot = vec![BigRational::zero(); da0.saturating_sub(db) + 1];
    while let Some(da) = poly_deg(&rem) {
        if da < db {
            break;
        }
        let f = &rem[da] / &lead;
        quot[da - db] = f.clone();
        for i in 0..=db {
            let t = &f * &b[i];
            rem[da - db + i] -= t;
        }
        rem[da] = BigRational::zero();
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

/// Solve `M x = rhs` exactly over the rationals, returning `None` when
/// inconsistent. `m` is given row-major, possibly non-square.
fn solve_exact(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        rhs.swap(row, pr);
        let inv = m[row][col].clone();
        for c in col..cols {
            let v = &m[row][c] / &inv;
            m[row][c] = v;
        }
        rhs[row] = &rhs[row] / &inv;
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
                let t = &f * &rhs[row];
                rhs[r] -= t;
            }
        }
        pivot_of_col[col] = row;
        row += 1;
        if row == rows {
            break;
        }
    }
    // Consistency: remaining rows must have zero rhs.
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for col in 0..cols {
        if pivot_of_col[col] != usize::MAX {
            x[col] = rhs[pivot_of_col[col]].clone();
        }
    }
    Some(x)
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonicalize();
        if canon.e == 1 {
            let r = &canon.c[0];
            if r.denom().is_one() {
                return write!(f, "{}", r.numer());
            }
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let mut terms = Vec::new();
        for (j, coeff) in canon.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let base = if j == 0 {
                "1".to_string()
            } else if j == 1 {
                format!("z{}", canon.e)
            } else {
                format!("z{}^{}", canon.e, j)
            };
            let cs = if coeff.is_one() && j > 0 {
                base
            } else if (-coeff.clone()).is_one() && j > 0 {
                format!("-{base}")
            } else if coeff.denom().is_one() {
                if j == 0 {
                    format!("{}", coeff.numer())
                } else {
                    format!("{}*{}", coeff.numer(), base)
                }
            } else if j == 0 {
                format!("{}/{}", coeff.numer(), coeff.denom())
            } else {
                format!("{}/{}*{}", coeff.numer(), coeff.denom(), base)
            };
            terms.push(cs);
        }
        let mut s = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i > 0 && !t.starts_with('-') {
                s.push('+');
            }
            s.push_str(t);
        }
        write!(f, "{s}")
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumWire {
    e: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let canon = self.canonicalize();
        let wire = CycNumWire { e: canon.e, coeffs: canon.c.iter().map(rat_string).collect() };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CycNumWire::deserialize(deserializer)?;
        if wire.e == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if wire.coeffs.len() != phi(wire.e) as usize {
            return Err(D::Error::custom("coefficient count must equal phi(e)"));
        }
        let mut c = Vec::with_capacity(wire.coeffs.len());
        for s in &wire.coeffs {
            c.push(parse_rat(s).ok_or_else(|| D::Error::custom("bad rational"))?);
        }
        Ok(CycNum { e: wire.e, c })
    }
}

/// Sum of a slice of values.
pub fn cyc_sum<'a>(items: impl IntoIterator<Item = &'a CycNum>) -> CycNum {
    let mut acc = CycNum::zero();
    for x in items {
        acc = acc.add(x);
    }
    acc
}
