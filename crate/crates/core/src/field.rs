//! Tabulated finite fields F_{p^r}.
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coefficients of the representing polynomial, constant term first. The
//! modulus is the smallest monic irreducible polynomial of degree r in that
//! encoding order, and the generator is the smallest element (by encoding)
//! of multiplicative order q - 1. Both choices are deterministic, so every
//! run sees the same model of F_q.

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// An element of a [`FiniteField`], identified by its encoding.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn encoding(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElement,
    // exp[t] = generator^t for t in 0..q-1
    exp: Vec<u32>,
    // log[x] for x != 0; log[0] is unused
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish_non_exhaustive()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^r` with p prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn digits(mut enc: u64, p: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (enc % p) as u32;
        enc /= p;
    }
    out
}

fn encode(digits: &[u32], p: u64) -> u32 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * p + d as u64) as u32
}

/// Remainder of `f` modulo the monic polynomial `g` (coefficients low to high).
fn poly_rem(f: &[u32], g: &[u32], p: u64) -> Vec<u32> {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    if rem.len() <= dg {
        return rem.into_iter().map(|c| c as u32).collect();
    }
    for top in (dg..rem.len()).rev() {
        let c = rem[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = top - dg + i;
            rem[idx] = (rem[idx] + p * p - c * gi as u64 % p) % p;
        }
    }
    rem.truncate(dg);
    rem.into_iter().map(|c| (c % p) as u32).collect()
}

/// Product of two residues modulo a monic modulus of degree `a.len()`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let r = a.len();
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut out = poly_rem(&prod, modulus, p);
    out.resize(r, 0);
    out
}

fn poly_pow(base: &[u32], mut e: u64, modulus: &[u32], p: u64) -> Vec<u32> {
    let r = base.len();
    let mut acc = vec![0; r];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for lower in 0..p.pow(d as u32) {
            let mut g = digits(lower, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Builds F_{p^r} with the default size cap.
pub fn make_field(p: u64, r: u32) -> Result<FiniteField> {
    FiniteField::with_cap(p, r, Budget::default().field_size)
}

impl FiniteField {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        make_field(p, r)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u64, cap: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_cap(p, r, cap)
    }

    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::InvalidDegree(r));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= cap && q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, r, cap })?;

        let modulus = (0..q)
            .map(|lower| {
                let mut f = digits(lower, p, r as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&cand| {
                let g = digits(cand, p, r as usize);
                factors.iter().all(|&l| {
                    let h = poly_pow(&g, order / l, &modulus, p);
                    encode(&h, p) != 1
                })
            })
            .expect("F_q* is cyclic");

        let gen_digits = digits(generator, p, r as usize);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = digits(1, p, r as usize);
        for t in 0..order {
            let enc = encode(&cur, p);
            debug_assert_eq!(log[enc as usize], u32::MAX, "generator cycle repeated");
            exp.push(enc);
            log[enc as usize] = t as u32;
            cur = poly_mulmod(&cur, &gen_digits, &modulus, p);
        }

        let mut field = FiniteField {
            p: p as u32,
            r,
            q: q as u32,
            modulus,
            generator: FieldElement(generator as u32),
            exp,
            log,
            trace: Vec::new(),
        };
        field.trace = (0..field.q)
            .map(|x| field.compute_trace(FieldElement(x)))
            .collect();
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Coefficients of the modulus, constant term first; the last one is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, encoding: u64) -> Result<FieldElement> {
        if encoding < self.q as u64 {
            Ok(FieldElement(encoding as u32))
        } else {
            Err(Error::InvalidElement {
                value: encoding,
                q: self.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    /// Image of the integer `n` under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_enc(a.0, b.0))
    }

    #[inline]
    pub(crate) fn add_enc(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.r == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p;
        if p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a.0, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = (self.log[a.index()] as u64 + self.log[b.index()] as u64) % self.order() as u64;
        FieldElement(self.exp[t as usize])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let t = (self.log[a.index()] as u128 * e as u128) % self.order() as u128;
        FieldElement(self.exp[t as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let t = self.discrete_log(a)?;
        Ok(self.exp_of((self.order() - t) % self.order()))
    }

    /// generator^t, with t taken mod q - 1.
    #[inline]
    pub fn exp_of(&self, t: u32) -> FieldElement {
        FieldElement(self.exp[(t % self.order()) as usize])
    }

    /// The exponent t in `[0, q-1)` with generator^t = x.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u32> {
        if x.is_zero() {
            Err(Error::ZeroLog)
        } else {
            Ok(self.log[x.index()])
        }
    }

    #[inline]
    pub(crate) fn log_unchecked(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace[x.index()]
    }

    fn compute_trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut frob = x;
        for _ in 0..self.r {
            acc = self.add(acc, frob);
            frob = self.pow(frob, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace left the prime subfield");
        acc.0
    }
}

pub fn trace(field: &FiniteField, x: FieldElement) -> u32 {
    field.trace(x)
}

pub fn discrete_log(field: &FiniteField, x: FieldElement) -> Result<u32> {
    field.discrete_log(x)
}

/// The index-m subgroup H of F_q* together with its coset decomposition.
#[derive(Debug, Clone)]
pub struct SubgroupSpec {
    m: u32,
    subgroup_size: u32,
    cosets: Vec<Vec<FieldElement>>,
}

impl SubgroupSpec {
    pub fn new(field: &FiniteField, m: u32) -> Result<Self> {
        let order = field.order();
        if m == 0 || order % m != 0 {
            return Err(Error::IndexDoesNotDivide { m, order });
        }
        let size = order / m;
        let cosets = (0..m)
            .map(|j| (0..size).map(|i| field.exp_of(j + i * m)).collect())
            .collect();
        Ok(SubgroupSpec {
            m,
            subgroup_size: size,
            cosets,
        })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// |H| = (q - 1) / m.
    #[inline]
    pub fn subgroup_size(&self) -> u32 {
        self.subgroup_size
    }

    /// dlog(x) mod m, so that H itself is coset 0.
    pub fn coset_index(&self, field: &FiniteField, x: FieldElement) -> Result<u32> {
        Ok(field.discrete_log(x)? % self.m)
    }

    pub fn contains(&self, field: &FiniteField, x: FieldElement) -> bool {
        !x.is_zero() && field.log_unchecked(x.0) % self.m == 0
    }

    /// Elements of H, ordered by exponent.
    pub fn elements(&self) -> &[FieldElement] {
        &self.cosets[0]
    }

    pub fn coset(&self, j: u32) -> &[FieldElement] {
        &self.cosets[j as usize]
    }

    /// The sum of all elements of H.
    pub fn element_sum(&self, field: &FiniteField) -> FieldElement {
        self.elements()
            .iter()
            .fold(FieldElement::ZERO, |acc, &h| field.add(acc, h))
    }
}

pub fn subgroup(field: &FiniteField, m: u32) -> Result<SubgroupSpec> {
    SubgroupSpec::new(field, m)
}
