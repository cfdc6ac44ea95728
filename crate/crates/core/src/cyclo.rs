//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Values are stored on the Zumbroich canonical basis of Q(zeta_n) with the
//! conductor reduced to its minimum, so structural equality coincides with
//! mathematical equality and fixture files round-trip byte-identically.
//! There is no floating point anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. The backing type keeps the denominator positive
/// and the fraction fully reduced, which is exactly the invariant we need.
pub type Rational = num::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    /// The value does not lie in Q (conductor > 1).
    #[error("value is not rational: {0}")]
    NotRational(String),
    /// The value is rational but not a rational integer.
    #[error("value is not a rational integer: {0}")]
    NotInteger(String),
    /// Malformed text encoding.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inv(a: u64, m: u64) -> u64 {
    // extended Euclid; gcd(a, m) = 1 is a precondition
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Zumbroich basis membership for the exponent `e` at conductor `n`.
///
/// The basis consists of zeta_n^e where, for every prime power q = p^a
/// maximal in n, the residue t = e * (n/q)^{-1} mod q avoids
/// [-(q/p-1)/2, (q/p-1)/2] for odd p, and avoids [q/2, q-1] for p = 2.
fn in_basis(n: u64, factors: &[(u64, u32)], e: u64) -> bool {
    for &(p, a) in factors {
        let q = p.pow(a);
        let nq = (n / q) % q;
        let t = (e % q) * mod_inv(nq, q) % q;
        if p == 2 {
            if t >= q / 2 {
                return false;
            }
        } else {
            let half = (q / p - 1) / 2;
            if t <= half || t >= q - half {
                return false;
            }
        }
    }
    true
}

/// All basis exponents at conductor `n`; |result| = phi(n).
pub fn zumbroich_basis(n: u64) -> Vec<u64> {
    let factors = factorize(n);
    (0..n).filter(|&e| in_basis(n, &factors, e)).collect()
}

/// Rewrite zeta_n^e as a signed sum of basis exponents.
fn expand_to_basis(n: u64, factors: &[(u64, u32)], e: u64, out: &mut Vec<(i32, u64)>) {
    let mut work = vec![(1i32, e % n)];
    'next: while let Some((s, e)) = work.pop() {
        for &(p, a) in factors {
            let q = p.pow(a);
            let nq = (n / q) % q;
            let t = (e % q) * mod_inv(nq, q) % q;
            if p == 2 {
                if t >= q / 2 {
                    // zeta_n^{n/2} = -1
                    work.push((-s, (e + n - n / 2) % n));
                    continue 'next;
                }
            } else {
                let half = (q / p - 1) / 2;
                if t <= half || t >= q - half {
                    // 1 + zeta^{n/p} + ... + zeta^{(p-1)n/p} = 0
                    for k in 1..p {
                        work.push((-s, (e + k * (n / p)) % n));
                    }
                    continue 'next;
                }
            }
        }
        out.push((s, e));
    }
}

/// An element of Q(zeta_n), stored in canonical form: minimal conductor,
/// exponents on the Zumbroich basis, no zero coefficients. Zero is stored
/// with conductor 1 and no terms. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    terms: BTreeMap<u64, Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        Cyclotomic { conductor: 1, terms }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(k))
    }

    /// zeta_n^e, canonicalized.
    pub fn root_of_unity(n: u64, e: u64) -> Self {
        assert!(n > 0, "conductor must be positive");
        Self::from_terms(n, vec![(e, Rational::one())])
    }

    /// Build from arbitrary (exponent, coefficient) pairs at conductor `n`,
    /// then canonicalize. Exponents may repeat and need not lie in the basis.
    pub fn from_terms(n: u64, raw: Vec<(u64, Rational)>) -> Self {
        assert!(n > 0, "conductor must be positive");
        let factors = factorize(n);
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            buf.clear();
            expand_to_basis(n, &factors, e % n, &mut buf);
            for &(s, be) in &buf {
                let entry = map.entry(be).or_insert_with(Rational::zero);
                if s > 0 {
                    *entry += &c;
                } else {
                    *entry -= &c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut v = Cyclotomic { conductor: n, terms: map };
        v.reduce();
        v
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Coordinates of the value on the Zumbroich basis of conductor `n`
    /// (which the stored conductor must divide), as (exponent, coefficient)
    /// pairs sorted by exponent.
    pub fn coords_at(&self, n: u64) -> Vec<(u64, Rational)> {
        assert_eq!(
            n % self.conductor,
            0,
            "conductor {} does not divide requested level {}",
            self.conductor,
            n
        );
        self.lifted_terms(n).into_iter().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// The rational value, if the conductor is 1.
    pub fn as_rational(&self) -> Result<Rational, CycloError> {
        if self.conductor != 1 {
            return Err(CycloError::NotRational(self.to_string()));
        }
        Ok(self.terms.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    /// The value as a certified rational integer.
    pub fn as_integer(&self) -> Result<BigInt, CycloError> {
        let r = self.as_rational()?;
        if !r.is_integer() {
            return Err(CycloError::NotInteger(self.to_string()));
        }
        Ok(r.to_integer())
    }

    /// Lift into conductor `m` (self.conductor must divide m); exponents are
    /// rescaled and re-expanded on the basis of m. Internal helper.
    fn lifted_terms(&self, m: u64) -> BTreeMap<u64, Rational> {
        debug_assert_eq!(m % self.conductor, 0);
        let k = m / self.conductor;
        if k == 1 {
            return self.terms.clone();
        }
        let factors = factorize(m);
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (&e, c) in &self.terms {
            buf.clear();
            expand_to_basis(m, &factors, e * k % m, &mut buf);
            for &(s, be) in &buf {
                let entry = map.entry(be).or_insert_with(Rational::zero);
                if s > 0 {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        map
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        // fast path: both rational
        if self.conductor == 1 && other.conductor == 1 {
            let r = self.as_rational().unwrap() + other.as_rational().unwrap();
            return Self::from_rational(r);
        }
        let m = lcm(self.conductor, other.conductor);
        let mut map = self.lifted_terms(m);
        for (e, c) in other.lifted_terms(m) {
            let entry = map.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut v = Cyclotomic { conductor: m, terms: map };
        v.reduce();
        v
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Cyclotomic {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect();
        Cyclotomic { conductor: self.conductor, terms }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&e, c)| (e, c * r)).collect();
        Cyclotomic { conductor: self.conductor, terms }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 {
            return match self.terms.get(&0) {
                None => Self::zero(),
                Some(r) => other.scale(r),
            };
        }
        if other.conductor == 1 {
            return other.mul(self);
        }
        let m = lcm(self.conductor, other.conductor);
        let a = self.lifted_terms(m);
        let b = other.lifted_terms(m);
        let factors = factorize(m);
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (&ea, ca) in &a {
            for (&eb, cb) in &b {
                let c = ca * cb;
                buf.clear();
                expand_to_basis(m, &factors, (ea + eb) % m, &mut buf);
                for &(s, be) in &buf {
                    let entry = map.entry(be).or_insert_with(Rational::zero);
                    if s > 0 {
                        *entry += &c;
                    } else {
                        *entry -= &c;
                    }
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut v = Cyclotomic { conductor: m, terms: map };
        v.reduce();
        v
    }

    /// Image under zeta_n -> zeta_n^(-1); an involution fixing Q.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(self.conductor - 1 + u64::from(self.conductor == 1))
    }

    /// Galois image under zeta_n -> zeta_n^k, gcd(k, n) = 1. Conductor is
    /// preserved, so no descent is attempted.
    pub fn galois(&self, k: u64) -> Cyclotomic {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        assert_eq!(gcd(k % n, n), 1, "galois exponent must be coprime to conductor");
        let factors = factorize(n);
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (&e, c) in &self.terms {
            buf.clear();
            expand_to_basis(n, &factors, e * (k % n) % n, &mut buf);
            for &(s, be) in &buf {
                let entry = map.entry(be).or_insert_with(Rational::zero);
                if s > 0 {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Cyclotomic { conductor: n, terms: map }
    }

    /// Reduce to the minimal conductor. The stored form is already on the
    /// basis of the current conductor.
    fn reduce(&mut self) {
        if self.terms.is_empty() {
            self.conductor = 1;
            return;
        }
        loop {
            let n = self.conductor;
            if n == 1 {
                return;
            }
            // common divisor of all exponents and n descends directly
            let mut d = n;
            for &e in self.terms.keys() {
                d = gcd(d, e);
                if d == 1 {
                    break;
                }
            }
            if d > 1 {
                let m = n / d;
                let raw: Vec<(u64, Rational)> =
                    self.terms.iter().map(|(&e, c)| (e / d, c.clone())).collect();
                *self = Self::rebase(m, raw);
                continue;
            }
            // Q(zeta_{2m}) = Q(zeta_m) for odd m
            if n % 4 == 2 {
                let m = n / 2;
                let half = (m + 1) / 2;
                let raw: Vec<(u64, Rational)> = self
                    .terms
                    .iter()
                    .map(|(&e, c)| {
                        let c = if e % 2 == 1 { -c.clone() } else { c.clone() };
                        (e % m * half % m, c)
                    })
                    .collect();
                *self = Self::rebase(m, raw);
                continue;
            }
            // prime descent via Galois invariance
            let mut descended = false;
            for (p, _) in factorize(n) {
                let m = n / p;
                if self.invariant_under(n, m) {
                    *self = self.descend_to(m);
                    descended = true;
                    break;
                }
            }
            if !descended {
                return;
            }
        }
    }

    /// Re-expand raw terms on the basis of conductor m, without descent.
    fn rebase(m: u64, raw: Vec<(u64, Rational)>) -> Cyclotomic {
        let factors = factorize(m);
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (e, c) in raw {
            buf.clear();
            expand_to_basis(m, &factors, e % m, &mut buf);
            for &(s, be) in &buf {
                let entry = map.entry(be).or_insert_with(Rational::zero);
                if s > 0 {
                    *entry += &c;
                } else {
                    *entry -= &c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Cyclotomic { conductor: m, terms: map }
    }

    /// Is the value fixed by Gal(Q(zeta_n)/Q(zeta_m)), m | n?
    fn invariant_under(&self, n: u64, m: u64) -> bool {
        let mut k = 1 + m;
        while k < n {
            if gcd(k, n) == 1 && self.galois(k) != *self {
                return false;
            }
            k += m;
        }
        true
    }

    /// Rewrite a value known to lie in Q(zeta_m) on the basis of m, by
    /// solving a small exact linear system against the lifted m-basis.
    fn descend_to(&self, m: u64) -> Cyclotomic {
        let n = self.conductor;
        let basis_m = zumbroich_basis(m);
        let factors_n = factorize(n);
        let lift = n / m;
        // columns: each zeta_m^f expanded on the basis of n
        let mut columns: Vec<BTreeMap<u64, i32>> = Vec::with_capacity(basis_m.len());
        let mut support: Vec<u64> = self.terms.keys().copied().collect();
        let mut buf = Vec::new();
        for &f in &basis_m {
            buf.clear();
            expand_to_basis(n, &factors_n, f * lift % n, &mut buf);
            let mut col: BTreeMap<u64, i32> = BTreeMap::new();
            for &(s, e) in &buf {
                *col.entry(e).or_insert(0) += s;
                support.push(e);
            }
            col.retain(|_, c| *c != 0);
            columns.push(col);
        }
        support.sort_unstable();
        support.dedup();
        let rows = support.len();
        let cols = basis_m.len();
        // dense augmented matrix over Q
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols + 1]; rows];
        for (ri, &e) in support.iter().enumerate() {
            for (ci, col) in columns.iter().enumerate() {
                if let Some(&s) = col.get(&e) {
                    mat[ri][ci] = Rational::from_integer(BigInt::from(s));
                }
            }
            if let Some(c) = self.terms.get(&e) {
                mat[ri][cols] = c.clone();
            }
        }
        // Gaussian elimination
        let mut x = vec![Rational::zero(); cols];
        let mut pivot_row = 0;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for col in 0..cols {
            if let Some(r) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) {
                mat.swap(pivot_row, r);
                let inv = mat[pivot_row][col].recip();
                for v in mat[pivot_row].iter_mut() {
                    *v *= &inv;
                }
                for r2 in 0..rows {
                    if r2 != pivot_row && !mat[r2][col].is_zero() {
                        let f = mat[r2][col].clone();
                        for c2 in 0..=cols {
                            let t = &mat[pivot_row][c2] * &f;
                            mat[r2][c2] -= t;
                        }
                    }
                }
                pivots.push((pivot_row, col));
                pivot_row += 1;
            }
        }
        for r in pivot_row..rows {
            assert!(
                mat[r][cols].is_zero(),
                "descent solve inconsistent: value not in Q(zeta_{m})"
            );
        }
        for (r, c) in pivots {
            x[c] = mat[r][cols].clone();
        }
        let raw: Vec<(u64, Rational)> = basis_m
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&f, c)| (f, c))
            .collect();
        let mut v = Self::rebase(m, raw);
        v.reduce();
        v
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if self.conductor == 1 || e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "E({},{})", self.conductor, e)?;
            } else {
                write!(f, "{}*E({},{})", mag, self.conductor, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self)
    }
}

// ---------------------------------------------------------------------------
// text encoding
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> CycloError {
        CycloError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt, CycloError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// RATIONAL := INT [ '/' INT ]
    fn rational(&mut self) -> Result<Rational, CycloError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// FACTOR := RATIONAL | 'E' '(' INT [',' INT] ')'
    fn factor(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.peek() {
            Some(b'E') => {
                self.pos += 1;
                if self.peek() != Some(b'(') {
                    return Err(self.err("expected '(' after E"));
                }
                self.pos += 1;
                let n = self.integer()?;
                let n: u64 = n.try_into().map_err(|_| self.err("conductor too large"))?;
                if n == 0 {
                    return Err(self.err("conductor must be positive"));
                }
                let e = if self.peek() == Some(b',') {
                    self.pos += 1;
                    let e = self.integer()?;
                    let e: u64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    e
                } else {
                    1
                };
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(Cyclotomic::root_of_unity(n, e % n.max(1)))
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from_rational(self.rational()?)),
            _ => Err(self.err("expected rational or E(n,e)")),
        }
    }

    /// TERM := FACTOR ( '*' FACTOR )*
    fn term(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut v = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            v = v.mul(&f);
        }
        Ok(v)
    }

    /// EXPR := [+-]? TERM ( [+-] TERM )*
    fn expr(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut sign = 1i32;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            _ => {}
        }
        let t = self.term()?;
        let mut v = if sign < 0 { t.negate() } else { t };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = v.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = v.sub(&t);
                }
                _ => break,
            }
        }
        Ok(v)
    }
}

impl Cyclotomic {
    /// Parse the text encoding: a rational literal `p/q`, or a sum of terms
    /// `c*E(n,e)`. Whitespace-insensitive; non-canonical input (wrong basis,
    /// non-minimal conductor) is accepted and canonicalized.
    pub fn parse(s: &str) -> Result<Cyclotomic, CycloError> {
        let mut p = Parser::new(s);
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, e: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e)
    }

    fn int(k: i64) -> Cyclotomic {
        Cyclotomic::from_integer(k)
    }

    #[test]
    fn basis_sizes_are_phi() {
        // phi(n) for n = 1..=20
        let phi = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8, 8, 16, 6, 18, 8];
        for n in 1..=20u64 {
            assert_eq!(
                zumbroich_basis(n).len(),
                phi[n as usize - 1],
                "basis size at conductor {n}"
            );
        }
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = zeta(3, 1).add(&zeta(3, 2).add(&int(1)));
        assert!(s.is_zero());
        assert_eq!(s, Cyclotomic::zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(zeta(4, 1).mul(&zeta(4, 1)), int(-1));
    }

    #[test]
    fn primitive_fifth_roots_sum() {
        // independent route: 1 + z + z^2 + z^3 + z^4 = 0, so the sum of the
        // primitive roots must be -1
        let sum = zeta(5, 1).add(&zeta(5, 4)).add(&zeta(5, 2).add(&zeta(5, 3)));
        let total = sum.add(&int(1));
        assert!(total.is_zero());
        assert_eq!(sum, int(-1));
        assert_eq!(sum.conductor(), 1);
    }

    #[test]
    fn conjugate_of_i() {
        assert_eq!(zeta(4, 1).conjugate(), zeta(4, 1).negate());
        assert_eq!(zeta(4, 1).conjugate(), zeta(4, 3));
    }

    #[test]
    fn conjugate_fixes_rationals() {
        assert_eq!(int(5).conjugate(), int(5));
    }

    #[test]
    fn conjugate_is_termwise_inverse_exponent() {
        // zeta_7 + zeta_7^2 -> zeta_7^5 + zeta_7^6, checked by involution
        let v = zeta(7, 1).add(&zeta(7, 2));
        let w = zeta(7, 5).add(&zeta(7, 6));
        assert_eq!(v.conjugate(), w);
        assert_eq!(v.conjugate().conjugate(), v);
    }

    #[test]
    fn as_rational_reduces_first() {
        let v = zeta(3, 1).add(&zeta(3, 2));
        assert_eq!(v.as_rational().unwrap(), Rational::from_integer(BigInt::from(-1)));
        assert!(zeta(8, 1).as_rational().is_err());
        assert_eq!(int(-1).as_rational().unwrap(), Rational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn root_times_conjugate_is_one() {
        for (n, e) in [(5, 2), (8, 3), (9, 1), (12, 7), (45, 4)] {
            let z = zeta(n, e);
            assert_eq!(z.mul(&z.conjugate()), int(1), "at zeta_{n}^{e}");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        // built at conductor 12 from conductor-3 content
        let v = Cyclotomic::from_terms(
            12,
            vec![(4, Rational::one()), (8, Rational::one())],
        );
        assert_eq!(v, int(-1));
        let w = zeta(12, 4);
        assert_eq!(w.conductor(), 3);
        // zeta_6 = -zeta_3^2
        assert_eq!(zeta(6, 1), zeta(3, 2).negate());
    }

    #[test]
    fn gap_style_nine_expansion() {
        // zeta_9 = -zeta_9^4 - zeta_9^7 on the canonical basis
        let v = zeta(9, 1);
        let terms: Vec<(u64, String)> = v.terms().map(|(e, c)| (e, c.to_string())).collect();
        assert_eq!(terms, vec![(4, "-1".to_string()), (7, "-1".to_string())]);
        assert_eq!(v.to_string(), "-E(9,4)-E(9,7)");
    }

    #[test]
    fn mul_distributes_over_add() {
        let a = zeta(5, 1).add(&zeta(4, 1).scale(&Rational::new(BigInt::from(2), BigInt::from(3))));
        let b = zeta(3, 2).sub(&int(7));
        let c = zeta(20, 3).add(&zeta(5, 2));
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        assert_eq!(left, right);
    }

    #[test]
    fn conjugation_is_ring_automorphism() {
        let a = zeta(12, 7).add(&zeta(5, 2)).sub(&int(3));
        let b = zeta(8, 3).scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
        assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "0",
            "-1",
            "5",
            "2/3",
            "-7/2",
            "E(4,1)",
            "-E(9,4)-E(9,7)",
            "1/2*E(8,1)+3*E(8,3)",
            "2+E(4,1)",
        ] {
            let v = Cyclotomic::parse(s).unwrap();
            assert_eq!(v.to_string(), s, "canonical form should round-trip");
            let w = Cyclotomic::parse(&v.to_string()).unwrap();
            assert_eq!(v, w);
        }
    }

    #[test]
    fn parse_canonicalizes_noncanonical_input() {
        assert_eq!(Cyclotomic::parse(" 1 + E(3) + E(3,2) ").unwrap(), int(0));
        assert_eq!(Cyclotomic::parse("E(6,1)").unwrap(), zeta(3, 2).negate());
        assert_eq!(Cyclotomic::parse("E(4,2)").unwrap(), int(-1));
        assert_eq!(Cyclotomic::parse("2*E(4,1)*E(4,1)").unwrap(), int(-2));
        assert_eq!(Cyclotomic::parse("E(5)+E(5,2)+E(5,3)+E(5,4)").unwrap(), int(-1));
    }

    #[test]
    fn parse_errors() {
        assert!(Cyclotomic::parse("").is_err());
        assert!(Cyclotomic::parse("E(0,1)").is_err());
        assert!(Cyclotomic::parse("1/0").is_err());
        assert!(Cyclotomic::parse("E(4,1) junk").is_err());
    }

    #[test]
    fn canonical_idempotence() {
        let v = zeta(45, 7).add(&zeta(45, 11)).scale(&Rational::new(BigInt::from(3), BigInt::from(7)));
        let rebuilt = Cyclotomic::from_terms(
            v.conductor(),
            v.terms().map(|(e, c)| (e, c.clone())).collect(),
        );
        assert_eq!(v, rebuilt);
    }
}
