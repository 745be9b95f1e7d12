//! Dense polynomial arithmetic over `Z/mZ`, shared by the field and ring modules.
//!
//! Coefficient vectors are stored constant term first.

/// Quotient ring `(Z/mZ)[x] / (f)` for a monic `f` of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QuotientRing {
    pub modulus: u32,
    /// Monic defining polynomial, length `n + 1`.
    pub poly: Vec<u32>,
}

impl QuotientRing {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = 1 % self.modulus;
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        let m = self.modulus;
        a.iter().map(|&x| (m - x) % m).collect()
    }

    pub fn scale(&self, a: &[u32], s: u32) -> Vec<u32> {
        let m = self.modulus as u64;
        a.iter().map(|&x| ((x as u64 * s as u64) % m) as u32).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.degree();
        let m = self.modulus as u64;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % m;
            }
        }
        // x^n = -(f_0 + f_1 x + ... + f_{n-1} x^{n-1})
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for t in 0..n {
                let sub = c * self.poly[t] as u64 % m;
                prod[k - n + t] = (prod[k - n + t] + m - sub) % m;
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u32).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Trace of the multiplication-by-`a` map in the power basis.
    pub fn matrix_trace(&self, a: &[u32]) -> u32 {
        let n = self.degree();
        let m = self.modulus as u64;
        let mut t = 0u64;
        for nu in 0..n {
            let mut e = self.zero();
            e[nu] = 1;
            t += self.mul(a, &e)[nu] as u64;
        }
        (t % m) as u32
    }

    /// Enumerates every element, the coefficient tuple read as a base-`m`
    /// number with the constant term most significant.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let n = self.degree();
        let m = self.modulus;
        let total = (m as u64).pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut c = vec![0u32; n];
            for nu in (0..n).rev() {
                c[nu] = (idx % m as u64) as u32;
                idx /= m as u64;
            }
            c
        })
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let (mut old_r, mut r) = (a as i64 % p as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i64) as u32)
}

/// Strips trailing zero coefficients.
fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn is_zero_poly(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Remainder of `a` modulo `b` over the prime field `Z_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().unwrap(), p).expect("leading coefficient invertible");
    let db = b.len() - 1;
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor over `Z_p` (not normalized).
pub(crate) fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero_poly(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Degree of a polynomial after trimming; the zero polynomial has degree 0.
pub(crate) fn poly_degree(a: &[u32]) -> usize {
    trim(a.to_vec()).len() - 1
}
