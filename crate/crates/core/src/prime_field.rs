//! Exact arithmetic in prime fields F_p for odd primes p.
//!
//! Everything is kept in the canonical representative range `[0, p-1]`.
//! Besides the ring operations this module provides inverses, rational
//! literal parsing (`"-1/8"`), Legendre symbols, and modular square roots
//! via Tonelli-Shanks, which is all the scalar machinery the rest of the
//! crate needs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `(a * b) mod p` without overflow. Fast path for moduli below 2^32.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by extended Euclid. Returns `None` when `gcd(a, p) != 1`.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin, valid for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This witness set is a proven deterministic test for n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime field F_p.
///
/// Construction runs the deterministic primality test and rejects p = 2,
/// so every value of this type denotes a valid odd prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

/// A canonical residue in a specific [`PrimeField`].
///
/// Arithmetic operators panic when the operands live in different fields;
/// mixing moduli is a programming error, not a recoverable condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The canonical element congruent to `v`.
    #[inline]
    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            modulus: self.p,
        }
    }

    /// The element congruent to a signed integer.
    pub fn element_signed(&self, v: i64) -> FieldElement {
        self.element(v.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All field elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.p;
        (0..p).map(move |v| FieldElement { value: v, modulus: p })
    }

    /// Parses the rational literal grammar `[-]digits[/digits]`.
    ///
    /// The result is `numerator * denominator^-1` in this field; plain
    /// integers round-trip. Digit strings of any length are folded mod p.
    pub fn parse_rational(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (num_s, den_s) = match t.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (t, None),
        };
        let fold = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(text.to_string()));
            }
            let mut acc = 0u64;
            for b in s.bytes() {
                acc = add_mod(mul_mod(acc, 10, self.p), (b - b'0') as u64 % self.p, self.p);
            }
            Ok(acc)
        };
        let mut v = fold(num_s)?;
        if let Some(den_s) = den_s {
            let d = fold(den_s)?;
            let inv = inv_mod(d, self.p).ok_or(Error::DenominatorZeroModP {
                denom: d,
                p: self.p,
            })?;
            v = mul_mod(v, inv, self.p);
        }
        if neg {
            v = sub_mod(0, v, self.p);
        }
        Ok(self.element(v))
    }

    /// Parses a comma-separated list of rational literals.
    pub fn parse_rational_list(&self, text: &str) -> Result<Vec<FieldElement>> {
        text.split(',').map(|t| self.parse_rational(t)).collect()
    }
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn check_same(&self, other: &FieldElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements belong to different moduli ({} vs {})",
            self.modulus, other.modulus
        );
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        let v = inv_mod(self.value, self.modulus).ok_or(Error::ZeroInverse)?;
        Ok(FieldElement {
            value: v,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Legendre symbol: 0 for zero, +1 for a nonzero square, -1 otherwise.
    ///
    /// Consistent with Euler's criterion `u^((p-1)/2)`.
    pub fn legendre(&self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        let e = pow_mod(self.value, (self.modulus - 1) / 2, self.modulus);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    /// The two square roots, smaller canonical representative first.
    ///
    /// Zero yields `(0, 0)`; a non-residue is an error. Uses the
    /// `p = 3 (mod 4)` shortcut and Tonelli-Shanks otherwise.
    pub fn sqrt(&self) -> Result<(FieldElement, FieldElement)> {
        let p = self.modulus;
        if self.value == 0 {
            return Ok((*self, *self));
        }
        if self.legendre() == -1 {
            return Err(Error::NonResidue(self.value));
        }
        let r = if p % 4 == 3 {
            pow_mod(self.value, (p + 1) / 4, p)
        } else {
            tonelli_shanks(self.value, p)
        };
        let other = sub_mod(0, r, p);
        let (lo, hi) = if r <= other { (r, other) } else { (other, r) };
        Ok((
            FieldElement { value: lo, modulus: p },
            FieldElement { value: hi, modulus: p },
        ))
    }
}

/// Root of `c*x + d = 0`. `c` must be nonzero.
pub fn solve_linear(c: FieldElement, d: FieldElement) -> Result<FieldElement> {
    c.check_same(&d);
    if c.is_zero() {
        return Err(Error::DegenerateLinear);
    }
    Ok(-(d * c.inv()?))
}

fn tonelli_shanks(n: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    // Smallest non-residue as the group generator seed.
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime field has a quadratic non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Odd primes in ascending order starting from 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn construction_rejects_non_primes_and_two() {
        assert_eq!(PrimeField::new(2).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(PrimeField::new(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(PrimeField::new(1).unwrap_err(), Error::NotPrime(1));
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(2_147_483_647).is_ok()); // 2^31 - 1
    }

    #[test]
    fn ring_ops() {
        let f11 = f(11);
        assert_eq!((f11.element(6) + f11.element(7)).value(), 2);
        let f7 = f(7);
        assert_eq!((-f7.element(1)).value(), 6);
        for x in f7.elements() {
            assert!((f7.zero() * x).is_zero());
        }
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn mixed_moduli_rejected() {
        let _ = f(7).element(1) + f(11).element(1);
    }

    #[test]
    fn inverses() {
        assert_eq!(f(7).element(2).inv().unwrap().value(), 4);
        assert_eq!(f(13).element(2).inv().unwrap().value(), 7);
        assert_eq!(f(97).element(1).inv().unwrap().value(), 1);
        assert_eq!(f(7).element(0).inv().unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn rational_parsing() {
        let f13 = f(13);
        assert_eq!(f13.parse_rational("1/2").unwrap().value(), 7);
        assert_eq!(f(7).parse_rational("-1/8").unwrap().value(), 6);
        assert_eq!(f(11).parse_rational("-1/2").unwrap().value(), 5);
        assert_eq!(f13.parse_rational("42").unwrap().value(), 3);
        assert!(matches!(
            f(7).parse_rational("1/7"),
            Err(Error::DenominatorZeroModP { .. })
        ));
        assert!(matches!(f(7).parse_rational("1/14"), Err(Error::DenominatorZeroModP { .. })));
        for bad in ["", "-", "1/", "/2", "a", "1.5", "1 / 2", "+3"] {
            assert!(matches!(f13.parse_rational(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(f(13).element_signed(-1).legendre(), 1);
        assert_eq!(f(7).element(3).legendre(), -1);
        assert_eq!(f(23).element(0).legendre(), 0);
        // Euler consistency on a few fields.
        for p in [3, 5, 7, 11, 13, 17, 101] {
            let fp = f(p);
            for u in fp.elements() {
                let euler = pow_mod(u.value(), (p - 1) / 2, p);
                let expect = if u.is_zero() {
                    0
                } else if euler == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(u.legendre(), expect);
            }
        }
    }

    #[test]
    fn square_roots() {
        let r = f(13).element_signed(-1).sqrt().unwrap();
        assert_eq!((r.0.value(), r.1.value()), (5, 8));
        let r = f(23).element(2).sqrt().unwrap();
        assert_eq!((r.0.value(), r.1.value()), (5, 18));
        let r = f(17).element(2).sqrt().unwrap();
        assert_eq!((r.0.value(), r.1.value()), (6, 11));
        assert_eq!(f(7).element(0).sqrt().unwrap().0.value(), 0);
        assert!(matches!(f(7).element(3).sqrt(), Err(Error::NonResidue(3))));
        // Exhaustive root check for small fields, and residue counting.
        for p in odd_primes().take_while(|&p| p <= 101) {
            let fp = f(p);
            let mut residues = 0;
            for u in fp.elements() {
                match u.legendre() {
                    1 => {
                        residues += 1;
                        let (a, b) = u.sqrt().unwrap();
                        assert_eq!(a * a, u);
                        assert_eq!(b * b, u);
                        assert_eq!(a, -b);
                        assert!(a.value() <= b.value());
                    }
                    -1 => assert!(u.sqrt().is_err()),
                    _ => {}
                }
            }
            assert_eq!(residues, (p - 1) / 2, "p={p}");
        }
    }

    #[test]
    fn linear_solver() {
        let f13 = f(13);
        assert_eq!(solve_linear(f13.one(), f13.zero()).unwrap().value(), 0);
        assert_eq!(
            solve_linear(f13.element(2), f13.element_signed(-1)).unwrap().value(),
            7
        );
        let f7 = f(7);
        assert_eq!(solve_linear(f7.element(3), f7.one()).unwrap().value(), 2);
        assert_eq!(
            solve_linear(f7.zero(), f7.one()).unwrap_err(),
            Error::DegenerateLinear
        );
    }

    #[test]
    fn residue_laws_match_congruence_classes() {
        // Solvability of x^2 = u for u in {-1, 2, 3, -3, 5} is classified by
        // congruences on p; checked for every odd prime p <= 1000.
        for p in odd_primes().take_while(|&p| p <= 1000) {
            let fp = f(p);
            let cases: [(i64, bool); 5] = [
                (-1, p % 4 == 1),
                (2, p % 8 == 1 || p % 8 == 7),
                (3, p % 12 == 1 || p % 12 == 11),
                (-3, p % 3 == 1),
                (5, p % 5 == 1 || p % 5 == 4),
            ];
            for (u, solvable) in cases {
                let e = fp.element_signed(u);
                if e.is_zero() {
                    continue; // p divides u; the congruence statement assumes p > 5
                }
                assert_eq!(e.legendre() == 1, solvable, "u={u}, p={p}");
            }
        }
    }
}
