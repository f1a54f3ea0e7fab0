//! Exact arithmetic in the `p`-th cyclotomic field `Q(ζ)`.
//!
//! Numbers are stored in the power basis `ζ^0, ..., ζ^{p-2}` as integer
//! numerators over one positive common denominator, kept in lowest terms.
//! The representation is canonical, so derived equality is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldRef, FqElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    pub fn zero(p: u32) -> Self {
        CycloNum { p, num: vec![BigInt::zero(); p as usize - 1], den: BigInt::one() }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        let mut z = Self::zero(p);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_bigint(p: u32, v: BigInt) -> Self {
        let mut z = Self::zero(p);
        z.num[0] = v;
        z
    }

    /// The rational number `n / d`.
    pub fn from_ratio(p: u32, n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut z = Self::zero(p);
        z.num[0] = BigInt::from(n);
        z.den = BigInt::from(d);
        z.normalize();
        Ok(z)
    }

    pub fn from_rational(p: u32, r: &BigRational) -> Self {
        let mut z = Self::zero(p);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// `ζ^k`, reduced to the power basis.
    pub fn zeta_pow(p: u32, k: u32) -> Self {
        let k = k % p;
        let mut z = Self::zero(p);
        if k == p - 1 {
            for c in z.num.iter_mut() {
                *c = BigInt::from(-1);
            }
        } else {
            z.num[k as usize] = BigInt::one();
        }
        z
    }

    /// Builds a number from rational coordinates in the power basis.
    pub fn from_coords(p: u32, coords: &[BigRational]) -> Result<Self> {
        if coords.len() != p as usize - 1 {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", p - 1, coords.len())));
        }
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = CycloNum { p, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    /// Rational coordinates in the power basis.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn check(&self, other: &CycloNum) {
        assert_eq!(self.p, other.p, "cyclotomic conductor mismatch");
    }

    /// Coefficients over the (non-reduced) length-`p` basis `ζ^0..ζ^{p-1}`.
    fn expand(&self) -> Vec<BigInt> {
        let mut v = self.num.clone();
        v.push(BigInt::zero());
        v
    }

    /// Reduces a length-`p` coefficient vector via `ζ^{p-1} = -(1 + ... + ζ^{p-2})`.
    fn reduce(p: u32, mut v: Vec<BigInt>, den: BigInt) -> CycloNum {
        let top = v.pop().expect("length p");
        if !top.is_zero() {
            for c in v.iter_mut() {
                *c -= &top;
            }
        }
        let mut z = CycloNum { p, num: v, den };
        z.normalize();
        z
    }

    pub fn add_ref(&self, other: &CycloNum) -> CycloNum {
        self.check(other);
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            let mut z = CycloNum { p: self.p, num, den: self.den.clone() };
            z.normalize();
            z
        } else {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a * &other.den + b * &self.den).collect();
            let mut z = CycloNum { p: self.p, num, den: &self.den * &other.den };
            z.normalize();
            z
        }
    }

    pub fn neg_ref(&self) -> CycloNum {
        CycloNum { p: self.p, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &CycloNum) -> CycloNum {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &CycloNum) -> CycloNum {
        self.check(other);
        let p = self.p as usize;
        if self.is_zero() || other.is_zero() {
            return CycloNum::zero(self.p);
        }
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        CycloNum::reduce(self.p, acc, &self.den * &other.den)
    }

    /// Multiplication by an integer.
    pub fn scale_int(&self, k: i64) -> CycloNum {
        let k = BigInt::from(k);
        let mut z = CycloNum { p: self.p, num: self.num.iter().map(|c| c * &k).collect(), den: self.den.clone() };
        z.normalize();
        z
    }

    /// Multiplication by a rational number.
    pub fn scale_rational(&self, r: &BigRational) -> CycloNum {
        let mut z =
            CycloNum { p: self.p, num: self.num.iter().map(|c| c * r.numer()).collect(), den: &self.den * r.denom() };
        z.normalize();
        z
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_zeta_pow(&self, k: u32) -> CycloNum {
        let p = self.p as usize;
        let k = k as usize % p;
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let e = self.expand();
        let mut v = vec![BigInt::zero(); p];
        for (i, c) in e.into_iter().enumerate() {
            v[(i + k) % p] = c;
        }
        CycloNum::reduce(self.p, v, self.den.clone())
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^a`, `p ∤ a`.
    pub fn galois(&self, a: u32) -> CycloNum {
        let p = self.p as usize;
        let a = a as usize % p;
        assert!(a != 0, "ζ ↦ ζ^0 is not an automorphism");
        let e = self.expand();
        let mut v = vec![BigInt::zero(); p];
        for (i, c) in e.into_iter().enumerate() {
            v[(i * a) % p] = c;
        }
        CycloNum::reduce(self.p, v, self.den.clone())
    }

    /// Complex conjugation `ζ ↦ ζ^{p-1}`.
    pub fn conj(&self) -> CycloNum {
        self.galois(self.p - 1)
    }

    /// Field norm to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let mut prod = self.clone();
        for a in 2..self.p {
            prod = prod.mul_ref(&self.galois(a));
        }
        prod.as_rational().expect("norm lies in Q")
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial `1 + x + ... + x^{p-1}`.
    pub fn invert(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p as usize;
        let a: Vec<BigRational> = self.coords();
        let phi: Vec<BigRational> = vec![BigRational::one(); p];
        // Invariant: s * a ≡ r (mod phi).
        let (mut r0, mut r1) = (phi, qpoly::trim(a));
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
        while !(r1.len() == 1) {
            let (quot, rem) = qpoly::divrem(&r0, &r1);
            let s2 = qpoly::sub(&s0, &qpoly::mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "gcd with an irreducible polynomial is constant");
        }
        let c = r1[0].clone();
        let mut coords: Vec<BigRational> =
            qpoly::rem(&s1, &vec![BigRational::one(); p]).into_iter().map(|x| x / &c).collect();
        coords.resize(p - 1, BigRational::zero());
        CycloNum::from_coords(self.p, &coords)
    }

    pub fn div_ref(&self, other: &CycloNum) -> Result<CycloNum> {
        Ok(self.mul_ref(&other.invert()?))
    }

    /// `self += ζ^k * other`, the kernel of the Fourier passes.
    pub fn add_assign_zeta_mul(&mut self, other: &CycloNum, k: u32) {
        if other.is_zero() {
            return;
        }
        let shifted = other.mul_zeta_pow(k);
        *self = self.add_ref(&shifted);
    }

    /// Serialized form: rational strings `"num/den"` in the power basis.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings(p: u32, items: &[String]) -> Result<CycloNum> {
        let coords: Result<Vec<BigRational>> = items.iter().map(|s| parse_rational(s)).collect();
        CycloNum::from_coords(p, &coords?)
    }
}

/// Accumulates `Σ ζ^{k_i} x_i` in the length-`p` basis over a common
/// denominator, normalizing once at the end.
pub struct ZetaSum {
    p: u32,
    acc: Vec<BigInt>,
    den: BigInt,
}

impl ZetaSum {
    pub fn new(p: u32) -> Self {
        ZetaSum { p, acc: vec![BigInt::zero(); p as usize], den: BigInt::one() }
    }

    pub fn add_zeta_mul(&mut self, x: &CycloNum, k: u32) {
        let p = self.p as usize;
        let k = k as usize % p;
        if x.den == self.den {
            for (i, c) in x.num.iter().enumerate() {
                if !c.is_zero() {
                    self.acc[(i + k) % p] += c;
                }
            }
            return;
        }
        let l = self.den.lcm(&x.den);
        let up = &l / &self.den;
        if !up.is_one() {
            for c in self.acc.iter_mut() {
                *c *= &up;
            }
        }
        let f = &l / &x.den;
        for (i, c) in x.num.iter().enumerate() {
            if !c.is_zero() {
                self.acc[(i + k) % p] += c * &f;
            }
        }
        self.den = l;
    }

    pub fn finish(self) -> CycloNum {
        CycloNum::reduce(self.p, self.acc, self.den)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Dense polynomials over `Q`, little-endian.
mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    pub fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x - y
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = &r[dr] / &lead;
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                r[dr - db + i] -= t;
            }
            q[dr - db] = c;
            r = trim(r);
            if r.len() <= db {
                break;
            }
        }
        (trim(q), r)
    }

    pub fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        divrem(a, b).1
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.add_ref(rhs)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.sub_ref(rhs)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.neg_ref()
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "ζ")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if !self.den.is_one() {
            write!(f, " (/{})", self.den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[p={}]({})", self.p, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire { p: self.p, coeffs: self.to_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycloWire::deserialize(d)?;
        CycloNum::from_strings(w.p, &w.coeffs).map_err(serde::de::Error::custom)
    }
}

/// The additive character `ω^{(m)}(λ) = ζ^{Tr(mλ)}` as an exponent of `ζ`.
#[inline]
pub fn omega_exp(field: &FieldRef, mass: FqElem, lam: FqElem) -> u32 {
    field.trace(field.mul(mass, lam))
}

/// `ω^{(m)}(λ)` as a cyclotomic number.
pub fn omega(field: &FieldRef, mass: FqElem, lam: FqElem) -> Result<CycloNum> {
    if mass.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(CycloNum::zeta_pow(field.p(), omega_exp(field, mass, lam)))
}
