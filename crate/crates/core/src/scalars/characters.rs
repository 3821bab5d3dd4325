//! The fixed additive character of GF(q) and the multiplicative characters
//! of GF(q)*, as roots of unity of a common order `m`.

use crate::error::{Error, Result};
use crate::scalars::{CycloNumber, Fe, Field};

/// Exponent `j` with `eps^c = zeta_m^j`, where `eps^c = zeta_p^{Tr(c)}`.
pub fn additive_exponent(field: &Field, c: Fe, m: u32) -> Result<u32> {
    if !m.is_multiple_of(field.p()) {
        return Err(Error::BadOrder { order: m, needed: field.p() });
    }
    Ok((m / field.p()) * field.trace(c))
}

pub fn additive_char(field: &Field, c: Fe, m: u32) -> Result<CycloNumber> {
    Ok(CycloNumber::root(m, additive_exponent(field, c, m)? as u64))
}

/// Exponent of `zeta_{q-1}^{e * dlog(h)}` at order `m`.
pub fn mult_exponent(field: &Field, e: u32, h: Fe, m: u32) -> Result<u32> {
    let n = field.q() - 1;
    if !m.is_multiple_of(n) {
        return Err(Error::BadOrder { order: m, needed: n });
    }
    let l = field.dlog(h)? as u64;
    Ok((((e as u64 % n as u64) * l % n as u64) * (m / n) as u64) as u32)
}

pub fn mult_char(field: &Field, e: u32, h: Fe, m: u32) -> Result<CycloNumber> {
    Ok(CycloNumber::root(m, mult_exponent(field, e, h, m)? as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_examples() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(additive_char(&f3, Fe(0), 3).unwrap(), CycloNumber::one(3));
        assert_eq!(additive_char(&f3, Fe(1), 3).unwrap(), CycloNumber::root(3, 1));
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.from_digits(&[0, 1]).unwrap();
        assert_eq!(additive_char(&f4, x, 6).unwrap(), CycloNumber::from_int(6, -1));
        assert!(matches!(additive_char(&f3, Fe(1), 4), Err(Error::BadOrder { .. })));
    }

    #[test]
    fn multiplicative_examples() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(mult_char(&f3, 0, Fe(2), 6).unwrap(), CycloNumber::one(6));
        assert_eq!(mult_char(&f3, 1, Fe(2), 2).unwrap(), CycloNumber::from_int(2, -1));
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(mult_char(&f5, 2, Fe(2), 4).unwrap(), CycloNumber::from_int(4, -1));
        assert!(matches!(mult_char(&f5, 1, Fe(0), 4), Err(Error::LogOfZero)));
        assert!(matches!(mult_char(&f5, 1, Fe(2), 6), Err(Error::BadOrder { .. })));
    }

    #[test]
    fn characters_are_homomorphisms() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = Field::new(p, k).unwrap();
            let m = num_integer::lcm(p, f.q() - 1);
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = additive_char(&f, a, m).unwrap() * additive_char(&f, b, m).unwrap();
                    assert_eq!(lhs, additive_char(&f, f.add(a, b), m).unwrap());
                }
            }
            for c in 0..f.q() - 1 {
                for a in f.nonzero_elements() {
                    for b in f.nonzero_elements() {
                        let lhs = mult_char(&f, c, a, m).unwrap() * mult_char(&f, c, b, m).unwrap();
                        assert_eq!(lhs, mult_char(&f, c, f.mul(a, b), m).unwrap());
                    }
                }
            }
        }
    }
}
