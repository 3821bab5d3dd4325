//! Finite fields GF(p^k) backed by discrete exponential/logarithm tables.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coefficients of its polynomial representative modulo
//! the field modulus. For prime fields this is just the residue.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the field size `q`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

/// Tables for the additive group are materialised up to this size.
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of some [`Field`], in canonical packed form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients `c_0..c_k` of the monic modulus (so `modulus[k] == 1`).
    modulus: Vec<u32>,
    generator: Fe,
    exp: Vec<Fe>,
    log: Vec<u32>,
    trace: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<Fe>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_field_size(p: u32, k: u32, bound: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::DegreeTooLarge { p, k, bound });
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.saturating_mul(p as u64);
        if q > bound {
            return Err(Error::DegreeTooLarge { p, k, bound });
        }
    }
    Ok(q as u32)
}

/// Polynomial arithmetic on packed digit vectors, used only while the
/// tables are being built.
struct PolyRing<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = vec![0; self.k];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce from the top using the monic modulus
        for top in (self.k..2 * self.k).rev() {
            let c = prod[top] % p;
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..self.k {
                let sub = c * self.modulus[i] as u64 % p;
                let idx = top - self.k + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        let reduced: Vec<u32> = prod[..self.k].iter().map(|&c| c as u32).collect();
        self.pack(&reduced)
    }

    /// Multiplicative order of `a` in the quotient ring, if it is at most
    /// `limit`.
    fn order(&self, a: u32, limit: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        for j in 1..=limit {
            if x == 1 {
                return Some(j);
            }
            x = self.mul(x, a);
        }
        None
    }
}

impl Field {
    /// GF(p^k) with the lexicographically smallest primitive modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::with_bound(p, k, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, k: u32, bound: u64) -> Result<Self> {
        let q = checked_field_size(p, k, bound)?;
        if k == 1 {
            let g = (1..p.max(2))
                .find(|&g| {
                    let ring = PolyRing { p, k: 1, modulus: &[0, 1] };
                    p == 2 || ring.order(g, p - 1) == Some(p - 1)
                })
                .unwrap_or(1);
            let modulus = vec![(p - g % p) % p, 1];
            return Self::build(p, 1, q, modulus, Fe(g));
        }
        // enumerate monic polynomials x^k + sum c_i x^i, ordered by the
        // packed integer of (c_0, .., c_{k-1})
        for code in 0..q {
            let mut modulus: Vec<u32> = PolyRing { p, k: k as usize, modulus: &[] }.digits(code);
            modulus.push(1);
            let ring = PolyRing { p, k: k as usize, modulus: &modulus };
            if ring.order(p, q - 1) == Some(q - 1) {
                return Self::build(p, k, q, modulus, Fe(p));
            }
        }
        Err(Error::NotIrreducible(p))
    }

    /// GF(p^k) defined by an explicit monic modulus `x^k + sum c_i x^i`
    /// (given as `c_0..c_{k-1}`), with an optional explicit generator. When
    /// no generator is given the smallest packed element of order `q-1` is
    /// used.
    pub fn with_modulus(p: u32, lower_coeffs: &[u32], generator: Option<Fe>) -> Result<Self> {
        let k = lower_coeffs.len() as u32;
        let q = checked_field_size(p, k, DEFAULT_FIELD_BOUND)?;
        let mut modulus: Vec<u32> = lower_coeffs.iter().map(|&c| c % p).collect();
        modulus.push(1);
        let ring = PolyRing { p, k: k as usize, modulus: &modulus };
        let gen = match generator {
            Some(g) => {
                if g.0 >= q || ring.order(g.0, q - 1) != Some(q - 1) {
                    // q - 1 == 1 means every nonzero element generates
                    if !(q == 2 && g.0 == 1) {
                        return Err(Error::BadGenerator);
                    }
                }
                g
            }
            None => {
                let found = (1..q).find(|&g| q == 2 || ring.order(g, q - 1) == Some(q - 1));
                Fe(found.ok_or(Error::NotIrreducible(p))?)
            }
        };
        if q > 2 && ring.order(gen.0, q - 1) != Some(q - 1) {
            return Err(Error::NotIrreducible(p));
        }
        Self::build(p, k, q, modulus, gen)
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>, generator: Fe) -> Result<Self> {
        let ring = PolyRing { p, k: k as usize, modulus: &modulus };
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for j in 0..q - 1 {
            if log[x as usize] != u32::MAX {
                return Err(Error::BadGenerator);
            }
            log[x as usize] = j;
            exp.push(Fe(x));
            x = if k == 1 { ((x as u64 * generator.0 as u64) % p as u64) as u32 } else { ring.mul(x, generator.0) };
        }
        if x != 1 {
            return Err(Error::BadGenerator);
        }
        let neg = (0..q)
            .map(|v| {
                let d = ring.digits(v);
                let nd: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                Fe(ring.pack(&nd))
            })
            .collect();
        let mut field = Field { p, k, q, modulus, generator, exp, log, trace: Vec::new(), add: None, neg };
        if k > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(Fe(a), Fe(b)).0 as u16;
                }
            }
            field.add = Some(table);
        }
        field.trace = (0..q).map(|v| field.compute_trace(Fe(v))).collect();
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// All field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Coefficients `c_0..c_{k-1}` of the polynomial representative.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Option<Fe> {
        if digits.len() != self.k as usize || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        Some(Fe(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)))
    }

    /// Image of an integer under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.k {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * scale;
            scale = scale.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        match &self.add {
            Some(t) => Fe(t[(a.0 * self.q + b.0) as usize] as u32),
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a.0 as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        if self.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the base of the fixed generator.
    pub fn dlog(&self, a: Fe) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[a.0 as usize])
    }

    pub fn exp(&self, j: u64) -> Fe {
        self.exp[(j % (self.q as u64 - 1)) as usize]
    }

    fn compute_trace(&self, a: Fe) -> u32 {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.k {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace must land in the prime field");
        acc.0
    }

    /// Absolute trace GF(q) -> GF(p), as an integer in `0..p`.
    #[inline]
    pub fn trace(&self, a: Fe) -> u32 {
        self.trace[a.0 as usize]
    }

    /// Renders an element as a JSON value: an integer for prime fields,
    /// a coefficient array otherwise.
    pub fn to_json(&self, a: Fe) -> serde_json::Value {
        if self.k == 1 {
            serde_json::Value::from(a.0)
        } else {
            serde_json::Value::from(self.digits(a))
        }
    }

    /// Human-readable rendering used in label strings.
    pub fn render(&self, a: Fe) -> String {
        if self.k == 1 {
            a.0.to_string()
        } else {
            let d = self.digits(a);
            format!("({})", d.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        }
    }
}
