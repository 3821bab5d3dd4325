//! Exact arithmetic in Q(zeta_m), stored as residues modulo the m-th
//! cyclotomic polynomial in the power basis `1, z, .., z^{phi(m)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Reduction data for one cyclotomic order, shared by all numbers of that
/// order.
#[derive(Debug)]
pub struct CycloRing {
    order: u32,
    /// Monic `Phi_m`, constant term first.
    phi: Vec<i64>,
    /// `powers[j]` is the reduced form of `z^j`, `0 <= j < m`.
    powers: Vec<Vec<i64>>,
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact quotient of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

fn cyclotomic_poly(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let phi_d = cyclotomic_poly(d, cache);
        poly = exact_div(&poly, &phi_d);
    }
    cache.insert(m, poly.clone());
    poly
}

impl CycloRing {
    fn build(m: u32) -> Self {
        let mut cache = HashMap::new();
        let phi = cyclotomic_poly(m, &mut cache);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by z and reduce
            let mut next = vec![0i64; deg + 1];
            next[1..].copy_from_slice(&cur);
            let top = next[deg];
            if top != 0 {
                for (i, &c) in phi.iter().enumerate().take(deg) {
                    next[i] -= top * c;
                }
            }
            next.truncate(deg);
            cur = next;
        }
        CycloRing { order: m, phi, powers }
    }

    /// Shared ring for order `m` (cached process-wide).
    pub fn get(m: u32) -> Arc<CycloRing> {
        assert!(m > 0, "cyclotomic order must be positive");
        static RINGS: OnceLock<Mutex<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = rings.lock().expect("cyclotomic cache poisoned");
        guard.entry(m).or_insert_with(|| Arc::new(CycloRing::build(m))).clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `deg Phi_m = phi(m)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn power(&self, j: u64) -> &[i64] {
        &self.powers[(j % self.order as u64) as usize]
    }
}

#[derive(Clone)]
pub struct CycloNumber {
    ring: Arc<CycloRing>,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[m={}]({})", self.ring.order, self)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ring.order == other.ring.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl CycloNumber {
    pub fn zero(m: u32) -> Self {
        let ring = CycloRing::get(m);
        let coeffs = vec![Rational::zero(); ring.degree()];
        CycloNumber { ring, coeffs }
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(m: u32, n: i128) -> Self {
        Self::from_rational(m, Rational::from_integer(n))
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `zeta_m^j`.
    pub fn root(m: u32, j: u64) -> Self {
        let ring = CycloRing::get(m);
        let coeffs = ring.power(j).iter().map(|&c| Rational::from_integer(c as i128)).collect();
        CycloNumber { ring, coeffs }
    }

    /// `sum_j counts[j] * zeta_m^j`, the usual shape of a character sum.
    pub fn from_root_counts(m: u32, counts: &[i64]) -> Self {
        let ring = CycloRing::get(m);
        let mut acc = vec![0i128; ring.degree()];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &pw) in acc.iter_mut().zip(ring.power(j as u64)) {
                *a += c as i128 * pw as i128;
            }
        }
        let coeffs = acc.into_iter().map(Rational::from_integer).collect();
        CycloNumber { ring, coeffs }
    }

    /// Builds a number from explicit power-basis coefficients.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let ring = CycloRing::get(m);
        if coeffs.len() != ring.degree() {
            return Err(Error::BadOrder { order: m, needed: ring.degree() as u32 });
        }
        Ok(CycloNumber { ring, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.ring.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.order != other.ring.order {
            return Err(Error::OrderMismatch(self.ring.order, other.ring.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNumber { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNumber { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let deg = self.ring.degree();
        let mut prod = vec![Rational::zero(); 2 * deg.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let phi = &self.ring.phi;
        for top in (deg..prod.len()).rev() {
            let c = prod[top];
            if c.is_zero() {
                continue;
            }
            for (i, &pc) in phi.iter().enumerate().take(deg) {
                prod[top - deg + i] -= c * Rational::from_integer(pc as i128);
            }
            prod[top] = Rational::zero();
        }
        prod.truncate(deg);
        Ok(CycloNumber { ring: self.ring.clone(), coeffs: prod })
    }

    pub fn scale(&self, r: Rational) -> Self {
        CycloNumber { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation, `zeta_m -> zeta_m^{m-1}`.
    pub fn conj(&self) -> Self {
        let m = self.ring.order as u64;
        let mut coeffs = vec![Rational::zero(); self.ring.degree()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let img = self.ring.power((m - i as u64 % m) % m);
            for (c, &pw) in coeffs.iter_mut().zip(img) {
                *c += a * Rational::from_integer(pw as i128);
            }
        }
        CycloNumber { ring: self.ring.clone(), coeffs }
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.ring.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            let v = *a.numer() as f64 / *a.denom() as f64;
            let ang = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_string(r: &Rational) -> String {
    render_rational(r)
}

impl fmt::Display for CycloNumber {
    /// `a_0 + a_1*z + ... + a_{d-1}*z^{d-1}` with zero terms dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => render_rational(c),
                1 => format!("{}*z", render_rational(c)),
                _ => format!("{}*z^{}", render_rational(c), i),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$checked(&rhs).expect("cyclotomic order mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Whether a rational is strictly positive.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
