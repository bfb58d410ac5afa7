//! Prime field arithmetic.
//!
//! A [`Field`] fixes the modulus and caches a primitive root. [`Scalar`] is a
//! residue tagged with its modulus; binary operations between scalars of
//! different fields panic.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PRIME_SEARCH_CAP: u64 = 10_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
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

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Smallest prime `p > n` with `p ≡ 1 (mod n)`, additionally `p ≡ 1 (mod 3)`
/// when `require_cubic` is set. Primes 2 and 3 are never returned.
pub fn find_prime(n: u64, require_cubic: bool) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("order {n} < 3")));
    }
    let mut p = n + 1;
    while p < PRIME_SEARCH_CAP {
        if p >= 5 && (p - 1).is_multiple_of(n) && (!require_cubic || (p - 1).is_multiple_of(3)) && is_prime(p) {
            return Ok(p);
        }
        p += 1;
    }
    Err(Error::PrimeSearchExhausted(PRIME_SEARCH_CAP))
}

/// The prime field GF(p), p >= 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    generator: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let factors = prime_factors(p - 1);
        let generator = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("every prime field has a primitive root");
        Ok(Field { p, generator })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// A fixed primitive root (the smallest one).
    pub fn generator(&self) -> Scalar {
        self.raw(self.generator)
    }

    #[inline]
    fn raw(&self, v: u64) -> Scalar {
        Scalar { v, p: self.p }
    }

    /// Reduces a signed integer into the field.
    pub fn elem(&self, v: i64) -> Scalar {
        let p = self.p as i64;
        self.raw(v.rem_euclid(p) as u64)
    }

    pub fn zero(&self) -> Scalar {
        self.raw(0)
    }

    pub fn one(&self) -> Scalar {
        self.raw(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        (0..self.p).map(move |v| self.raw(v))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        (1..self.p).map(move |v| self.raw(v))
    }

    /// Both square roots of `a`, smaller residue first; `None` for non-residues.
    ///
    /// Tonelli–Shanks with the cached primitive root as the non-residue.
    pub fn sqrt(&self, a: Scalar) -> Option<(Scalar, Scalar)> {
        self.check(a);
        let p = self.p;
        if a.v == 0 {
            return Some((self.zero(), self.zero()));
        }
        if pow_mod(a.v, (p - 1) / 2, p) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = pow_mod(self.generator, q, p);
        let mut t = pow_mod(a.v, q, p);
        let mut r = pow_mod(a.v, q.div_ceil(2), p);
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
        let (lo, hi) = if r <= p - r { (r, p - r) } else { (p - r, r) };
        Some((self.raw(lo), self.raw(hi)))
    }

    pub fn is_square(&self, a: Scalar) -> bool {
        self.sqrt(a).is_some()
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Scalar) -> u64 {
        self.check(a);
        assert!(a.v != 0, "zero has no multiplicative order");
        let mut n = self.p - 1;
        for q in prime_factors(self.p - 1) {
            while n.is_multiple_of(q) && pow_mod(a.v, n / q, self.p) == 1 {
                n /= q;
            }
        }
        n
    }

    /// The smallest residue of multiplicative order exactly `n`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Scalar> {
        if n == 0 || !(self.p - 1).is_multiple_of(n) {
            return Err(Error::NoRootOfUnity {
                n,
                p_minus_one: self.p - 1,
            });
        }
        Ok(self
            .nonzero_elements()
            .find(|&x| self.order(x) == n)
            .expect("cyclic group of order p-1 has elements of every divisor order"))
    }

    /// The subgroup of n-th roots of unity as powers `[1, ξ, ξ², …]` of the
    /// root returned by [`Field::nth_root_of_unity`].
    pub fn roots_of_unity(&self, n: u64) -> Result<Vec<Scalar>> {
        let xi = self.nth_root_of_unity(n)?;
        Ok((0..n).map(|i| xi.pow(i)).collect())
    }

    /// The smallest primitive cube root of unity.
    pub fn cube_root_of_unity(&self) -> Result<Scalar> {
        self.nth_root_of_unity(3)
    }

    #[inline]
    fn check(&self, a: Scalar) {
        assert_eq!(a.p, self.p, "scalar from GF({}) used in GF({})", a.p, self.p);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// A residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Scalar {
    v: u64,
    p: u64,
}

impl Scalar {
    #[inline]
    pub fn value(self) -> u64 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn signed(self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.v == 1
    }

    pub fn zero_like(self) -> Scalar {
        Scalar { v: 0, p: self.p }
    }

    pub fn one_like(self) -> Scalar {
        Scalar { v: 1, p: self.p }
    }

    /// Integer constant in the same field.
    pub fn lift(self, v: i64) -> Scalar {
        Scalar {
            v: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn pow(self, e: u64) -> Scalar {
        Scalar {
            v: pow_mod(self.v, e, self.p),
            p: self.p,
        }
    }

    pub fn inv(self) -> Option<Scalar> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    #[inline]
    fn same(self, o: Scalar) {
        assert_eq!(self.p, o.p, "mixing GF({}) and GF({})", self.p, o.p);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, o: Scalar) -> Scalar {
        self.same(o);
        let s = self.v + o.v;
        Scalar {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, o: Scalar) -> Scalar {
        self.same(o);
        Scalar {
            v: if self.v >= o.v {
                self.v - o.v
            } else {
                self.p - (o.v - self.v)
            },
            p: self.p,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, o: Scalar) -> Scalar {
        self.same(o);
        Scalar {
            v: mul_mod(self.v, o.v, self.p),
            p: self.p,
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Scalar) -> Scalar {
        self * o.inv().expect("division by zero in GF(p)")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        Scalar {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = *self + o;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = *self - o;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, o: Scalar) {
        *self = *self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square_table(p: u64) -> Vec<Vec<u64>> {
        let mut t = vec![Vec::new(); p as usize];
        for x in 0..p {
            t[(x * x % p) as usize].push(x);
        }
        t
    }

    #[test]
    fn sqrt_examples_mod_13() {
        let f = Field::new(13).unwrap();
        let (a, b) = f.sqrt(f.elem(4)).unwrap();
        assert_eq!((a.value(), b.value()), (2, 11));
        // exhaustive table: 6^2 = 36 = 10, 7^2 = 49 = 10
        assert_eq!(square_table(13)[10], vec![6, 7]);
        let (a, b) = f.sqrt(f.elem(10)).unwrap();
        assert_eq!((a.value(), b.value()), (6, 7));
        assert!(square_table(13)[2].is_empty());
        assert!(f.sqrt(f.elem(2)).is_none());
    }

    #[test]
    fn sqrt_matches_square_table() {
        for p in [5u64, 7, 13, 17, 41, 97, 101, 257] {
            let f = Field::new(p).unwrap();
            let table = square_table(p);
            for a in 0..p {
                match f.sqrt(f.elem(a as i64)) {
                    Some((r, s)) => {
                        let mut roots = table[a as usize].clone();
                        roots.sort();
                        if a == 0 {
                            assert_eq!(roots, vec![0]);
                            assert_eq!((r.value(), s.value()), (0, 0));
                        } else {
                            assert_eq!(roots, vec![r.value(), s.value()]);
                        }
                    }
                    None => assert!(table[a as usize].is_empty(), "p={p} a={a}"),
                }
            }
        }
    }

    #[test]
    fn roots_of_unity_examples() {
        let f11 = Field::new(11).unwrap();
        let xi = f11.nth_root_of_unity(5).unwrap();
        assert_eq!(xi.value(), 3);
        assert!(xi.pow(5).is_one() && !xi.is_one());
        assert!(matches!(
            f11.nth_root_of_unity(4),
            Err(Error::NoRootOfUnity { n: 4, .. })
        ));
        let f13 = Field::new(13).unwrap();
        let w = f13.nth_root_of_unity(3).unwrap();
        assert!(w.value() == 3 || w.value() == 9);
        assert_eq!(w.pow(3).value(), 1);
    }

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(5, false).unwrap(), 11);
        assert_eq!(find_prime(3, true).unwrap(), 7);
        assert_eq!(find_prime(4, true).unwrap(), 13);
        assert!(find_prime(2, false).is_err());
    }

    #[test]
    fn rejects_small_or_composite_moduli() {
        for p in [0u64, 1, 2, 3, 4, 9, 15, 91] {
            assert_eq!(Field::new(p), Err(Error::InvalidModulus(p)));
        }
    }

    #[test]
    fn generator_has_full_order() {
        for p in [5u64, 7, 11, 13, 101, 1009] {
            let f = Field::new(p).unwrap();
            assert_eq!(f.order(f.generator()), p - 1);
        }
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_fields_panics() {
        let a = Field::new(7).unwrap().one();
        let b = Field::new(11).unwrap().one();
        let _ = a + b;
    }

    proptest! {
        #[test]
        fn sqrt_of_square_contains_root(a in 1i64..1009) {
            let f = Field::new(1009).unwrap();
            let x = f.elem(a);
            let (r, s) = f.sqrt(x * x).unwrap();
            prop_assert!(r == x || s == x);
            prop_assert!(r == -x || s == -x);
        }

        #[test]
        fn fermat_little_theorem(a in 1i64..10_000, idx in 0usize..6) {
            let p = [5u64, 7, 13, 101, 1009, 7919][idx];
            let f = Field::new(p).unwrap();
            let x = f.elem(a);
            prop_assume!(!x.is_zero());
            prop_assert!(x.pow(p - 1).is_one());
            prop_assert!((x * x.inv().unwrap()).is_one());
        }

        #[test]
        fn root_of_unity_has_exact_order(idx in 0usize..5) {
            let (p, n) = [(11u64, 5u64), (13, 3), (13, 4), (29, 7), (19, 9)][idx];
            let f = Field::new(p).unwrap();
            let xi = f.nth_root_of_unity(n).unwrap();
            for k in 1..n {
                prop_assert!(!xi.pow(k).is_one());
            }
            prop_assert!(xi.pow(n).is_one());
        }
    }
}
