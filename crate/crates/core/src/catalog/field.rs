//! Small finite fields GF(p^e) with full operation tables.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coefficients in the polynomial basis `1, x, x², …`.

use crate::error::{Error, Result};
use crate::num_theory::is_prime;

/// Fixed defining polynomials for the non-prime fields, low degree first,
/// monic. These are the Conway polynomials.
const DEFINING: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
];

/// Largest field order supported.
pub const MAX_FIELD: u32 = 512;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

/// Splits `q` as `p^e`, returning `None` if it is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p as u32, e))
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q as u64).ok_or(Error::BadPrimePower(q as u64))?;
        if q > MAX_FIELD {
            return Err(Error::BadPrimePower(q as u64));
        }
        debug_assert!(is_prime(p as u64));
        let modulus: Vec<u32> = if e == 1 {
            vec![0, 1]
        } else {
            DEFINING
                .iter()
                .find(|&&(pp, ee, _)| pp == p && ee == e)
                .map(|&(_, _, poly)| poly.to_vec())
                .ok_or(Error::BadPrimePower(q as u64))?
        };
        let qs = q as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut y = x as u32;
            for _ in 0..e {
                v.push(y % p);
                y /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> usize {
            v.iter().rev().fold(0u32, |acc, &d| acc * p + d) as usize
        };
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&s) as u16;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (i, &m) in modulus.iter().enumerate() {
                        let t = deg - e as usize + i;
                        prod[t] = (prod[t] + (p - c) * m % p) % p;
                    }
                }
                mul[a * qs + b] = undigits(&prod[..e as usize]) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16;
            if a != 0 {
                // a missing inverse means the modulus was reducible
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or(Error::BadPrimePower(q as u64))? as u16;
            }
        }
        let mut field = Field {
            p,
            e,
            q,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q as u16)
            .find(|&a| field.mult_order(a) == q - 1)
            .expect("multiplicative group of a field is cyclic");
        Ok(field)
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u16, mut k: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The least element (as an integer) generating the multiplicative group.
    #[inline]
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    /// Frobenius `x ↦ x^p`.
    #[inline]
    pub fn frobenius(&self, a: u16) -> u16 {
        self.pow(a, self.p as u64)
    }

    pub fn mult_order(&self, a: u16) -> u32 {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The basis element `x^j` (as an integer, `p^j`).
    pub fn basis(&self, j: u32) -> u16 {
        self.p.pow(j) as u16
    }

    pub fn is_square(&self, a: u16) -> bool {
        a == 0 || self.pow(a, ((self.q - 1) / 2) as u64) == 1 || self.p == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q - 1);
            for a in 0..q as u16 {
                for b in 0..q as u16 {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u16 {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism_of_order_e() {
        let f = Field::new(32).unwrap();
        for a in 0..32u16 {
            let mut x = a;
            for _ in 0..5 {
                x = f.frobenius(x);
            }
            assert_eq!(x, a);
        }
        assert!((0..32u16).any(|a| f.frobenius(a) != a));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(49).is_err());
        assert_eq!(prime_power(81), Some((3, 4)));
    }
}
