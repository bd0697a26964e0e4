//! Arithmetic in GF(p^e).
//!
//! Elements are dense integers `0..q`. The base-p digits of an element are
//! the coefficients of its polynomial representative, lowest degree first, so
//! `0` is the additive identity and `1` the multiplicative identity.

use std::fmt;

use thiserror::Error;

/// Default upper bound on the field order.
pub const DEFAULT_ORDER_LIMIT: u64 = 1 << 20;

/// Orders up to this size get full addition and multiplication tables.
const TABLE_LIMIT: u32 = 1024;

pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the configured limit {limit}")]
    TooLarge { p: u64, e: u32, limit: u64 },
    #[error("element {element} is outside GF({q})")]
    OutOfRange { element: Elem, q: u32 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Polynomials over GF(p) as coefficient vectors, lowest degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let p64 = p as u64;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p64;
                let cur = r[shift + i] as u64;
                r[shift + i] = ((cur + p64 - sub) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// True if the monic polynomial `m` of degree `e` has no monic factor of
    /// degree `1..=e/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let e = m.len() - 1;
        if e <= 1 {
            return e == 1;
        }
        for d in 1..=e / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut divisor = super::digits(code as u32, p, d);
                divisor.push(1);
                if rem_monic(m, &divisor, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut value: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(value % p);
        value /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lexicographically smallest monic irreducible polynomial of degree `e`,
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for rank in 0..total {
        // Constant term is the most significant position of the ordering.
        let mut coeffs = vec![0u32; e];
        let mut r = rank;
        for slot in (0..e).rev() {
            coeffs[slot] = (r % p as u64) as u32;
            r /= p as u64;
        }
        coeffs.push(1);
        if poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// The finite field GF(p^e). Immutable once built.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    log: Vec<u32>,
    exp: Vec<Elem>,
    add_table: Option<Vec<Elem>>,
    mul_table: Option<Vec<Elem>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        Self::with_limit(p, e, DEFAULT_ORDER_LIMIT)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn with_limit(p: u64, e: u32, limit: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= limit && q <= u32::MAX as u64)
            .ok_or(FieldError::TooLarge { p, e, limit })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_irreducible(p, e);

        let mulmod = |a: Elem, b: Elem| -> Elem {
            let prod = poly::mul(&digits(a, p, e as usize), &digits(b, p, e as usize), p);
            undigits(&poly::rem_monic(&prod, &modulus, p), p)
        };
        let pow = |mut base: Elem, mut n: u64| -> Elem {
            let mut acc = 1;
            while n > 0 {
                if n & 1 == 1 {
                    acc = mulmod(acc, base);
                }
                base = mulmod(base, base);
                n >>= 1;
            }
            acc
        };

        let group = (q - 1) as u64;
        let factors = prime_factors(group);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| pow(g, group / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(2 * (q as usize - 1).max(1));
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..(q - 1) {
            exp.push(x);
            log[x as usize] = i;
            x = mulmod(x, generator);
        }
        for i in 0..(q - 1) as usize {
            exp.push(exp[i]);
        }

        let mut field = Field {
            p,
            e,
            q,
            modulus,
            neg: Vec::new(),
            inv: Vec::new(),
            log,
            exp,
            add_table: None,
            mul_table: None,
        };
        field.neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, e as usize).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        field.inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let l = field.log[a as usize];
                    field.exp[((q - 1 - l) % (q - 1)) as usize]
                }
            })
            .collect();
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = field.add_digits(a, b);
                    mul[a as usize * qs + b as usize] = field.mul_logs(a, b);
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the defining polynomial, constant term first; the
    /// last entry is the leading `1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_logs(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    fn check(&self, a: Elem) -> Result<Elem, FieldError> {
        if a < self.q {
            Ok(a)
        } else {
            Err(FieldError::OutOfRange { element: a, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q && b < self.q);
        match &self.add_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q && b < self.q);
        match &self.mul_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_logs(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        match self.check(a)? {
            0 => Err(FieldError::DivisionByZero(self.q)),
            a => Ok(self.inv[a as usize]),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(self.check(a)?, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u64 * (n % (self.q as u64 - 1));
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    pub fn checked_add(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    pub fn checked_mul(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }
}
