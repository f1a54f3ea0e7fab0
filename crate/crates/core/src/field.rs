//! Finite fields `F_q` of odd characteristic.
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector
//! `(c_0, ..., c_{f-1})` of the polynomial representative maps to
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`. This encoding is also the fixed
//! enumeration order used to pick canonical representatives.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted.
pub const MAX_ORDER: u32 = 1000;

/// An element of `F_q`, encoded by its index in the field enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Square class of a nonzero element.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareClass {
    Square,
    Nonsquare,
}

impl SquareClass {
    pub fn mul(self, other: SquareClass) -> SquareClass {
        if self == other {
            SquareClass::Square
        } else {
            SquareClass::Nonsquare
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            SquareClass::Square => 1,
            SquareClass::Nonsquare => -1,
        }
    }
}

/// Operation selector for [`Field::arithmetic`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Shared handle to a field.
pub type FieldRef = Arc<Field>;

/// The field `F_q`, `q = p^f`, with precomputed operation tables.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    legendre: Vec<i8>,
    nonsquare: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("p", &self.p).field("f", &self.f).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over `F_p` as little-endian coefficient vectors.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = super::pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut v);
        v
    }
}

fn pow_mod(b: u32, mut e: u32, m: u32) -> u32 {
    let m = m as u64;
    let mut r: u64 = 1 % m;
    let mut b = b as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

/// Monic polynomials of the given degree over `F_p`, in encoding order.
fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        v.push(1);
        v
    })
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d) {
            if poly::rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The built-in modulus: the first monic irreducible polynomial of degree
/// `f` in encoding order.
pub fn default_modulus(p: u32, f: u32) -> Vec<u32> {
    monic_polys(p, f).find(|m| is_irreducible(m, p)).expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FieldRef> {
        Field::new(p, 1)
    }

    /// `F_{p^f}` with the built-in modulus.
    pub fn new(p: u32, f: u32) -> Result<FieldRef> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if f == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let modulus = if f == 1 { vec![0, 1] } else { default_modulus(p, f) };
        Field::with_modulus(p, modulus)
    }

    /// `F_q` for an odd prime power `q`.
    pub fn from_order(q: u32) -> Result<FieldRef> {
        if q < 3 {
            return Err(Error::InvalidField(format!("{q} is not an odd prime power")));
        }
        let mut p = 2;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let mut f = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            f += 1;
        }
        if r != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Field::new(p, f)
    }

    /// `F_{p^f}` with an explicit monic modulus (little-endian, degree `f`).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<FieldRef> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be reduced".into()));
        }
        let f = modulus.len() as u32 - 1;
        if f > 1 && !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q64 = (p as u64).pow(f);
        if q64 > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!("q = {q64} exceeds {MAX_ORDER}")));
        }
        let q = q64 as u32;
        let coeffs = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(f as usize);
            let mut c = x;
            for _ in 0..f {
                v.push(c % p);
                c /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 {
            let mut x = 0;
            for &c in v.iter().rev() {
                x = x * p + c;
            }
            x
        };
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let ca = coeffs(a);
            for b in 0..q {
                let cb = coeffs(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s);
                let mut pr = poly::rem(&poly::mul(&ca, &cb, p), &modulus, p);
                pr.resize(f as usize, 0);
                mul[a as usize * qs + b as usize] = encode(&pr);
            }
        }
        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u32;
                }
                if a != 0 && mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        // Frobenius sum a + a^p + ... + a^{p^{f-1}}.
        let mut trace = vec![0u32; qs];
        for a in 0..qs {
            let mut acc = 0u32;
            let mut power = a as u32;
            for _ in 0..f {
                acc = add[acc as usize * qs + power as usize];
                let mut next = 1u32;
                for _ in 0..p {
                    next = mul[next as usize * qs + power as usize];
                }
                power = next;
            }
            debug_assert!(acc < p, "trace must land in the prime field");
            trace[a] = acc;
        }
        let mut legendre = vec![-1i8; qs];
        legendre[0] = 0;
        for a in 1..qs {
            legendre[mul[a * qs + a] as usize] = 1;
        }
        let nonsquare = (1..q).find(|&a| legendre[a as usize] == -1).expect("odd q has nonsquares");
        Ok(Arc::new(Field { p, f, q, modulus, add, mul, neg, inv, trace, legendre, nonsquare }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem)
    }

    /// Element from an integer, reduced into the prime field.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Element from its coefficient vector (length at most `f`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        let mut x = 0;
        for &c in coeffs.iter().rev() {
            x = x * self.p + c % self.p;
        }
        FqElem(x)
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.f as usize);
        let mut c = a.0;
        for _ in 0..self.f {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[(a.0 * self.q + b.0) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FqElem(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn arithmetic(&self, a: FqElem, b: FqElem, op: ArithOp) -> Result<FqElem> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut r = FqElem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// The inverse of 2.
    pub fn half(&self) -> FqElem {
        FqElem(self.inv[2])
    }

    /// Legendre symbol extended by `legendre(0) = 0`.
    #[inline]
    pub fn legendre(&self, a: FqElem) -> i8 {
        self.legendre[a.0 as usize]
    }

    /// Field trace `F_q -> F_p`, as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize]
    }

    /// The least nonsquare in enumeration order.
    pub fn canonical_nonsquare(&self) -> FqElem {
        FqElem(self.nonsquare)
    }

    pub fn square_class(&self, a: FqElem) -> Result<SquareClass> {
        match self.legendre(a) {
            0 => Err(Error::ZeroSquareClass),
            1 => Ok(SquareClass::Square),
            _ => Ok(SquareClass::Nonsquare),
        }
    }

    /// Canonical representative of the square class of `a`: `1` or the
    /// canonical nonsquare.
    pub fn square_class_rep(&self, a: FqElem) -> Result<FqElem> {
        Ok(self.class_rep(self.square_class(a)?))
    }

    pub fn class_rep(&self, c: SquareClass) -> FqElem {
        match c {
            SquareClass::Square => FqElem::ONE,
            SquareClass::Nonsquare => self.canonical_nonsquare(),
        }
    }

    /// A square root of a square, the least one in enumeration order.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// A generator of the multiplicative group (least in enumeration order).
    pub fn primitive_element(&self) -> FqElem {
        let order = (self.q - 1) as u64;
        let mut factors = Vec::new();
        let mut r = order;
        let mut d = 2;
        while d * d <= r {
            if r.is_multiple_of(d) {
                factors.push(d);
                while r.is_multiple_of(d) {
                    r /= d;
                }
            }
            d += 1;
        }
        if r > 1 {
            factors.push(r);
        }
        self.nonzero()
            .find(|&g| factors.iter().all(|&pf| self.pow(g, order / pf) != FqElem::ONE))
            .expect("multiplicative group is cyclic")
    }

    /// An `F_p`-basis of `F_q`: the powers `1, x, ..., x^{f-1}`.
    pub fn prime_basis(&self) -> Vec<FqElem> {
        (0..self.f).map(|i| FqElem(self.p.pow(i))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.add(FqElem(2), FqElem(2)), FqElem(1));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.div(FqElem(2), FqElem(3)).unwrap(), FqElem(4));
        assert_eq!(f5.div(FqElem(2), FqElem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn q9_modulus() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let x = f9.from_coeffs(&[0, 1]);
        assert_eq!(f9.mul(x, x), FqElem(2));
    }

    #[test]
    fn legendre_and_classes() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.legendre(FqElem(1)), 1);
        assert_eq!(f5.legendre(FqElem(2)), -1);
        assert_eq!(f5.legendre(FqElem(0)), 0);
        assert_eq!(f5.square_class_rep(FqElem(4)).unwrap(), FqElem(1));
        assert_eq!(f5.square_class_rep(FqElem(3)).unwrap(), FqElem(2));
        assert_eq!(f5.square_class_rep(FqElem(0)), Err(Error::ZeroSquareClass));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.legendre(FqElem(2)), -1);
        assert_eq!(f3.square_class_rep(FqElem(2)).unwrap(), FqElem(2));
    }

    #[test]
    fn trace_examples() {
        let f9 = Field::new(3, 2).unwrap();
        let x = f9.from_coeffs(&[0, 1]);
        assert_eq!(f9.trace(x), 0);
        assert_eq!(f9.trace(FqElem::ONE), 2);
        let f7 = Field::prime(7).unwrap();
        for a in f7.elements() {
            assert_eq!(f7.trace(a), a.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::from_order(12).is_err());
        assert!(Field::with_modulus(3, vec![2, 0, 1]).is_err()); // x^2 + 2 = (x+1)(x+2)
        assert!(Field::from_order(1331).is_err());
    }

    #[test]
    fn exhaustive_field_laws() {
        for q in [3u32, 5, 7, 9, 11, 13, 25, 27] {
            let k = Field::from_order(q).unwrap();
            let squares = k.nonzero().filter(|&a| k.legendre(a) == 1).count();
            assert_eq!(squares as u32, (q - 1) / 2);
            for a in k.nonzero() {
                for b in k.nonzero() {
                    assert_eq!(k.legendre(k.mul(a, b)), k.legendre(a) * k.legendre(b));
                    assert_eq!(k.mul(k.div(a, b).unwrap(), b), a);
                }
            }
            // Trace: F_p-linear and onto.
            let mut hit = vec![false; k.p() as usize];
            for a in k.elements() {
                hit[k.trace(a) as usize] = true;
                for b in k.elements() {
                    assert_eq!(k.trace(k.add(a, b)), (k.trace(a) + k.trace(b)) % k.p());
                }
                for c in 0..k.p() {
                    let cc = FqElem(c);
                    assert_eq!(k.trace(k.mul(cc, a)), (c * k.trace(a)) % k.p());
                }
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn primitive_element_generates() {
        for q in [3u32, 5, 9, 25, 27] {
            let k = Field::from_order(q).unwrap();
            let g = k.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = FqElem::ONE;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = k.mul(x, g);
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }
}
