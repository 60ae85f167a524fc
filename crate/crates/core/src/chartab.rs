//! Exact character tables. The table is found by splitting the
//! class-algebra matrices into common eigenvectors over a prime field
//! `F_l` with `l = 1 (mod exponent)`, recovering degrees and root-of-
//! unity multiplicities mod `l`, lifting every value into an exact
//! cyclotomic number, and verifying the orthogonality relations with
//! zero tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::Group;

/// Rows are irreducible characters (sorted by degree, then by the
/// canonical serialization of the value row); columns follow the
/// group's conjugacy-class order.
pub struct CharTable {
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CycNum>>,
}

impl CharTable {
    pub fn num_irreps(&self) -> usize {
        self.degrees.len()
    }

    /// Value of character `r` at the class of `g^{-1}`.
    pub fn conj_value(&self, g: &Group, r: usize, class: usize) -> CycNum {
        let inv = g.classes().inverse_class[class] as usize;
        self.values[r][inv].clone()
    }
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    b %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn modinv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "division by zero mod {p}");
    modpow(a, p - 2, p)
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

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Least prime `l = 1 (mod e)` with `l^2 > 4n`.
fn choose_prime(e: u64, n: u64) -> u64 {
    let mut l = e + 1;
    loop {
        if (l as u128) * (l as u128) > 4 * n as u128 && is_prime(l) {
            return l;
        }
        l += e;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&w| fs.iter().all(|&f| modpow(w, (p - 1) / f, p) != 1))
        .expect("every prime has a primitive root")
}

/// Reduced row echelon form in place; returns pivot columns. Zero rows
/// are dropped.
fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) {
            rows.swap(r, pr);
            let inv = modinv(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] % p != 0 {
                    let f = rows[i][c];
                    for c2 in 0..ncols {
                        let sub = f * rows[r][c2] % p;
                        rows[i][c2] = (rows[i][c2] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the kernel of `a`, as rref rows.
fn kernel_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let pivots = rref_mod(&mut m, p);
    let mut basis = Vec::new();
    for c in 0..n {
        if pivots.contains(&c) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[c] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][c] % p) % p;
        }
        basis.push(v);
    }
    rref_mod(&mut basis, p);
    basis
}

/// Characteristic polynomial coefficients `[1, c_1, ..., c_m]` by the
/// trace recursion; valid because `p > m`.
fn char_poly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let m = a.len();
    assert!((m as u64) < p);
    let mut coeffs = vec![1u64];
    let mut b: Vec<Vec<u64>> = a.to_vec();
    for k in 1..=m {
        if k > 1 {
            // b = a * (b_prev + c_{k-1} I)
            let c = coeffs[k - 1];
            let mut shifted = b.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = (row[i] + c) % p;
            }
            let mut nb = vec![vec![0u64; m]; m];
            for i in 0..m {
                for t in 0..m {
                    let ait = a[i][t];
                    if ait == 0 {
                        continue;
                    }
                    for j in 0..m {
                        nb[i][j] = (nb[i][j] + ait * shifted[t][j]) % p;
                    }
                }
            }
            b = nb;
        }
        let tr = (0..m).fold(0u64, |s, i| (s + b[i][i]) % p);
        coeffs.push(tr * modinv(k as u64, p) % p * (p - 1) % p);
    }
    coeffs
}

fn poly_eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().fold(0u64, |acc, &c| (acc * x + c) % p)
}

/// One `(row i, col k) = a_{jik}` class matrix reduced mod `p`, where
/// `C_j C_i = sum_k a_{jik} C_k` in the center of the group algebra.
fn class_matrix_mod(g: &Group, members: &[Vec<u32>], j: usize, p: u64) -> Vec<Vec<u64>> {
    let cls = g.classes();
    let k = cls.reps.len();
    let mut m = vec![vec![0u64; k]; k];
    for (col, &zk) in cls.reps.iter().enumerate() {
        for &x in &members[j] {
            let y = g.mul_idx(g.inv_idx(x), zk);
            let i = cls.class_of[y as usize] as usize;
            m[i][col] = (m[i][col] + 1) % p;
        }
    }
    m
}

/// Compute the exact character table of an enumerated group.
pub fn char_table(g: &Group) -> Result<CharTable> {
    let cls = g.classes();
    let k = cls.reps.len();
    let order = g.order();
    let e = g.exponent();
    let l = choose_prime(e, order);
    let omega = primitive_root(l);
    let z_e = modpow(omega, (l - 1) / e, l);

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (idx, &c) in cls.class_of.iter().enumerate() {
        members[c as usize].push(idx as u32);
    }

    // Split the standard basis into common eigenvectors of the class
    // matrices. All class matrices commute and are semisimple with all
    // eigenvalues in F_l, so the process terminates with k lines.
    let mut spaces: Vec<Vec<Vec<u64>>> = {
        let mut id = vec![vec![0u64; k]; k];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = 1;
        }
        vec![id]
    };
    for j in 0..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mj = class_matrix_mod(g, &members, j, l);
        let mut next = Vec::new();
        for sp in std::mem::take(&mut spaces) {
            let m = sp.len();
            if m == 1 {
                next.push(sp);
                continue;
            }
            // Restrict mj to the subspace. The rref pivots make the
            // coordinates of any member vector directly readable.
            let mut piv_probe = sp.clone();
            let pivots = rref_mod(&mut piv_probe, l);
            assert_eq!(piv_probe, sp, "subspace bases are kept in rref");
            let mut a = vec![vec![0u64; m]; m];
            for (i, b) in sp.iter().enumerate() {
                let mut w = vec![0u64; k];
                for (c, wc) in w.iter_mut().enumerate() {
                    for (r, br) in b.iter().enumerate() {
                        *wc = (*wc + mj[c][r] * br) % l;
                    }
                }
                let coords: Vec<u64> = pivots.iter().map(|&pc| w[pc]).collect();
                // Invariance check: the coordinates reconstruct w.
                for (c, &wc) in w.iter().enumerate() {
                    let rec = sp
                        .iter()
                        .enumerate()
                        .fold(0u64, |s, (t, row)| (s + coords[t] * row[c]) % l);
                    assert_eq!(rec, wc, "class matrix must preserve the subspace");
                }
                for (t, &ct) in coords.iter().enumerate() {
                    a[t][i] = ct;
                }
            }
            let cp = char_poly(&a, l);
            let mut found = 0usize;
            for lam in 0..l {
                if poly_eval(&cp, lam, l) != 0 {
                    continue;
                }
                let mut shifted = a.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = (row[i] + l - lam % l) % l;
                }
                let ker = kernel_mod(&shifted, l);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let mut lifted: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|kv| {
                        let mut row = vec![0u64; k];
                        for (t, &c) in kv.iter().enumerate() {
                            for (cc, rv) in row.iter_mut().enumerate() {
                                *rv = (*rv + c * sp[t][cc]) % l;
                            }
                        }
                        row
                    })
                    .collect();
                rref_mod(&mut lifted, l);
                next.push(lifted);
            }
            assert_eq!(found, m, "class matrices must be semisimple over F_l");
        }
        spaces = next;
    }
    assert!(
        spaces.len() == k && spaces.iter().all(|s| s.len() == 1),
        "common eigenspaces must be one-dimensional"
    );

    let idc = cls.class_of[g.identity_idx() as usize] as usize;
    let size_mod: Vec<u64> = cls.sizes.iter().map(|&s| s as u64 % l).collect();
    let sqrt_order = isqrt(order);

    let mut rows: Vec<(u64, Vec<CycNum>, Vec<String>)> = Vec::new();
    for sp in &spaces {
        let raw = &sp[0];
        assert!(raw[idc] % l != 0, "eigenvector is unit at the identity class");
        let scale = modinv(raw[idc], l);
        let v: Vec<u64> = raw.iter().map(|&x| x * scale % l).collect();
        // Degree: d^2 = |G| / sum_i v_i v_{inv(i)} / |C_i| mod l, with
        // the true degree being the unique candidate at most sqrt|G|.
        let mut s = 0u64;
        for i in 0..k {
            let inv_i = cls.inverse_class[i] as usize;
            s = (s + v[i] * v[inv_i] % l * modinv(size_mod[i], l)) % l;
        }
        let d2 = order % l * modinv(s, l) % l;
        let cands: Vec<u64> = (1..=sqrt_order).filter(|&d| d * d % l == d2).collect();
        assert_eq!(cands.len(), 1, "degree must be uniquely determined");
        let degree = cands[0];
        // Character values mod l, then the multiplicity lift: on a
        // class of order d, the value is sum_t m_t zeta_d^t with
        // m_t = (1/d) sum_s chi(g^s) z_d^{-ts}, a plain integer < l.
        let u: Vec<u64> = (0..k)
            .map(|i| degree % l * v[i] % l * modinv(size_mod[i], l) % l)
            .collect();
        let mut vals = Vec::with_capacity(k);
        for i in 0..k {
            let d = cls.rep_orders[i];
            let pow_class: Vec<usize> = (0..d)
                .map(|s| cls.class_of[g.pow_idx(cls.reps[i], s) as usize] as usize)
                .collect();
            let z_d = modpow(z_e, e / d, l);
            let z_d_inv = modinv(z_d, l);
            let d_inv = modinv(d % l, l);
            let mut value = CycNum::zero();
            let mut total = 0u64;
            for t in 0..d {
                let mut acc = 0u64;
                for (s, &pc) in pow_class.iter().enumerate() {
                    acc = (acc + u[pc] * modpow(z_d_inv, t * s as u64, l)) % l;
                }
                let m_t = acc * d_inv % l;
                assert!(m_t <= degree, "multiplicities are bounded by the degree");
                total += m_t;
                if m_t > 0 {
                    let root = CycNum::root_of_unity(d, t);
                    value = value.add(&root.scale(&BigRational::from_integer(BigInt::from(m_t))));
                }
            }
            assert_eq!(total, degree, "multiplicities sum to the degree");
            vals.push(value.canonicalize());
        }
        assert_eq!(vals[idc], CycNum::from_u64(degree));
        let keys = vals.iter().map(|c| c.canonical_string()).collect();
        rows.push((degree, vals, keys));
    }
    rows.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));

    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<CycNum>> = rows.into_iter().map(|r| r.1).collect();

    let sum_sq: u128 = degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
    if sum_sq != order as u128 {
        return Err(Error::domain(format!(
            "degree squares sum to {sum_sq}, expected {order}"
        )));
    }
    verify_orthogonality(g, &degrees, &values)?;
    Ok(CharTable { degrees, values })
}

/// Exact row and column orthogonality over the cyclotomic field.
fn verify_orthogonality(g: &Group, degrees: &[u64], values: &[Vec<CycNum>]) -> Result<()> {
    let cls = g.classes();
    let k = cls.reps.len();
    let order = CycNum::from_u64(g.order());
    for (a, row_a) in values.iter().enumerate() {
        for (b, row_b) in values.iter().enumerate().skip(a) {
            let mut s = CycNum::zero();
            for i in 0..k {
                let term = row_a[i].mul(&row_b[cls.inverse_class[i] as usize]);
                s = s.add(&term.scale(&BigRational::from_integer(BigInt::from(cls.sizes[i]))));
            }
            let want = if a == b { order.clone() } else { CycNum::zero() };
            if s != want {
                return Err(Error::domain(format!(
                    "row orthogonality failed for rows {a}, {b}"
                )));
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            let mut s = CycNum::zero();
            for (r, row) in values.iter().enumerate() {
                let _ = degrees[r];
                s = s.add(&row[i].mul(&row[cls.inverse_class[j] as usize]));
            }
            let want = if i == j {
                CycNum::from_u64(g.order() / cls.sizes[i] as u64)
            } else {
                CycNum::zero()
            };
            if s != want {
                return Err(Error::domain(format!(
                    "column orthogonality failed for classes {i}, {j}"
                )));
            }
        }
    }
    Ok(())
}
