//! Exact arithmetic in finite fields `F_{p^k}` and mod-p binomial
//! combinatorics (Lucas's theorem).
//!
//! Elements are stored as coordinate vectors in the power basis of
//! `F_p[t]/(modulus)`. The modulus is user-supplied and checked for
//! irreducibility at construction (exhaustive divisor search, `k <= 4`).

use std::fmt;
use std::sync::Arc;

use arrayvec::ArrayVec;
use thiserror::Error;

/// Maximum supported extension degree.
pub const MAX_EXT_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree k = {expected}, got degree {got}")]
    BadModulus { expected: usize, got: usize },
    #[error("modulus is reducible: divisible by a degree-{0} factor")]
    Reducible(usize),
    #[error("extension degree {0} exceeds supported bound {MAX_EXT_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: elements belong to different field specs")]
    FieldMismatch,
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
}

/// Description of `F_{p^k}`: the prime, extension degree, and a monic
/// irreducible modulus (coefficients low-to-high, length `k + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
}

/// A field element: `k` residues mod p, coordinates in the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fq {
    c: ArrayVec<u64, MAX_EXT_DEGREE>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq{:?}", self.c.as_slice())
    }
}

impl Fq {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
}

/// Shared handle to a field; all arithmetic goes through this.
#[derive(Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.k == 1 {
            write!(f, "F_{}", self.spec.p)
        } else {
            write!(f, "F_{{{}^{}}}", self.spec.p, self.spec.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Opcode for the generic arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, &[0, 1])
    }

    /// `F_{p^k}` with the given monic modulus (low-to-high coefficients).
    pub fn new(p: u64, k: usize, modulus: &[u64]) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(FieldError::DegreeTooLarge(k));
        }
        if modulus.len() != k + 1 {
            return Err(FieldError::BadModulus {
                expected: k,
                got: modulus.len().saturating_sub(1),
            });
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if modulus[k] != 1 {
            return Err(FieldError::BadModulus {
                expected: k,
                got: k,
            });
        }
        if k > 1 {
            check_irreducible(p, &modulus)?;
        }
        Ok(Field {
            spec: Arc::new(FieldSpec { p, k, modulus }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    /// Field order p^k.
    pub fn order(&self) -> u64 {
        self.spec.p.pow(self.spec.k as u32)
    }

    pub fn zero(&self) -> Fq {
        let mut c = ArrayVec::new();
        for _ in 0..self.spec.k {
            c.push(0);
        }
        Fq { c }
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        let mut z = self.zero();
        z.c[0] = n % self.spec.p;
        z
    }

    /// Signed integer into the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fq {
        let p = self.spec.p as i64;
        let r = ((n % p) + p) % p;
        self.from_u64(r as u64)
    }

    /// Element from power-basis coordinates (length must be k).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq, FieldError> {
        if coeffs.len() != self.spec.k {
            return Err(FieldError::FieldMismatch);
        }
        let mut c = ArrayVec::new();
        for &x in coeffs {
            c.push(x % self.spec.p);
        }
        Ok(Fq { c })
    }

    /// The power-basis generator t (equals 1 when k = 1 would be wrong; for
    /// k = 1 there is no generator beyond the prime subfield, so this
    /// returns 1 in that case).
    pub fn gen(&self) -> Fq {
        if self.spec.k == 1 {
            self.one()
        } else {
            let mut z = self.zero();
            z.c[1] = 1;
            z
        }
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    fn check(&self, a: &Fq) {
        debug_assert_eq!(a.c.len(), self.spec.k, "element/field degree mismatch");
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        let mut c = ArrayVec::new();
        for i in 0..self.spec.k {
            c.push((a.c[i] + b.c[i]) % p);
        }
        Fq { c }
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        let mut c = ArrayVec::new();
        for i in 0..self.spec.k {
            c.push((a.c[i] + p - b.c[i]) % p);
        }
        Fq { c }
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        self.check(a);
        self.check(b);
        let p = self.spec.p;
        let k = self.spec.k;
        if k == 1 {
            let mut c = ArrayVec::new();
            c.push((a.c[0] * b.c[0]) % p);
            return Fq { c };
        }
        // Schoolbook product, then reduce by the monic modulus.
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            // t^d = -sum_j modulus[j] t^(d-k+j)
            for j in 0..k {
                let m = self.spec.modulus[j];
                if m != 0 {
                    let idx = d - k + j;
                    prod[idx] = (prod[idx] + p - lead * m % p) % p;
                }
            }
        }
        let mut c = ArrayVec::new();
        for item in prod.iter().take(k) {
            c.push(*item);
        }
        Fq { c }
    }

    pub fn scale(&self, lambda: &Fq, v: &Fq) -> Fq {
        self.mul(lambda, v)
    }

    pub fn pow(&self, a: &Fq, e: u64) -> Fq {
        let mut base = a.clone();
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q - 2) with q = p^k.
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &Fq, b: &Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Frobenius iterate a^(p^e).
    pub fn frobenius(&self, a: &Fq, e: usize) -> Fq {
        let e = e % self.spec.k;
        let mut out = a.clone();
        for _ in 0..e {
            out = self.pow(&out, self.spec.p);
        }
        out
    }

    /// Generic entry point mirroring the flat operation surface.
    pub fn arith(&self, a: &Fq, b: &Fq, op: ArithOp) -> Result<Fq, FieldError> {
        if a.c.len() != self.spec.k || b.c.len() != self.spec.k {
            return Err(FieldError::FieldMismatch);
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// All field elements, in lexicographic coordinate order.
    pub fn all_elements(&self) -> Vec<Fq> {
        let q = self.order() as usize;
        (0..q)
            .map(|mut idx| {
                let mut c = ArrayVec::new();
                for _ in 0..self.spec.k {
                    c.push(idx as u64 % self.spec.p);
                    idx /= self.spec.p as usize;
                }
                Fq { c }
            })
            .collect()
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Fq {
        let mut c = ArrayVec::new();
        for _ in 0..self.spec.k {
            c.push(rng.gen_range(0..self.spec.p));
        }
        Fq { c }
    }
}

/// Polynomial division check over F_p: does `div` divide `poly` exactly?
fn divides(p: u64, poly: &[u64], div: &[u64]) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = div.len() - 1;
    debug_assert_eq!(div[dd], 1);
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for j in 0..=dd {
                let idx = shift + j;
                rem[idx] = (rem[idx] + p - lead * div[j] % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&x| x == 0)
}

/// Exhaustive irreducibility check for degree <= 4: try every monic divisor
/// of degree 1..=k/2.
fn check_irreducible(p: u64, modulus: &[u64]) -> Result<(), FieldError> {
    let k = modulus.len() - 1;
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut c = code;
            for item in div.iter_mut().take(d) {
                *item = c % p;
                c /= p;
            }
            div[d] = 1;
            if divides(p, modulus, &div) {
                return Err(FieldError::Reducible(d));
            }
        }
    }
    Ok(())
}

/// Binomial coefficient C(n, k) mod p by Lucas's theorem.
pub fn lucas_binomial(n: u64, k: u64, p: u64) -> Result<u64, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k > n {
        return Err(FieldError::InvalidArgs(format!("k = {k} exceeds n = {n}")));
    }
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        acc = acc * small_binomial(nd, kd) % p;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// C(n, k) for n, k < p, exact in u64 (p <= 1e4 scale).
fn small_binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as u64
}

/// Multinomial coefficient (n; parts) mod p via iterated Lucas binomials.
pub fn lucas_multinomial(n: u64, parts: &[u64], p: u64) -> Result<u64, FieldError> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(FieldError::InvalidArgs(format!(
            "parts sum to {total}, expected {n}"
        )));
    }
    let mut rest = n;
    let mut acc = 1u64;
    for &part in parts {
        acc = acc * lucas_binomial(rest, part, p)? % p;
        rest -= part;
    }
    Ok(acc)
}

/// Unit part of n! mod p together with its p-adic valuation:
/// n! = p^val * unit with gcd(unit, p) = 1. The unit is computed digitwise
/// via Wilson's theorem (Anton's congruence).
pub fn factorial_unit(n: u64, p: u64) -> (u64, u64) {
    let mut val = 0u64;
    let mut q = n;
    while q >= p {
        q /= p;
        val += q;
    }
    // unit = (-1)^val * prod of digit factorials mod p
    let mut unit = 1u64;
    let mut m = n;
    while m > 0 {
        let d = m % p;
        for i in 2..=d {
            unit = unit * i % p;
        }
        m /= p;
    }
    if val % 2 == 1 && p > 2 {
        unit = (p - unit) % p;
    }
    (val, unit)
}

/// n! mod p (zero when n >= p).
pub fn factorial_mod(n: u64, p: u64) -> u64 {
    if n >= p {
        return 0;
    }
    let mut acc = 1u64;
    for i in 2..=n {
        acc = acc * i % p;
    }
    acc
}

/// The divided-power composition coefficient (ij)! / (i! (j!)^i) mod p,
/// computed as the product of binomials prod_{u=1}^{i-1} C(uj + j - 1, j - 1)
/// so no large factorial is ever formed.
pub fn pd_composition_coefficient(i: u64, j: u64, p: u64) -> Result<u64, FieldError> {
    if j == 0 {
        return Err(FieldError::InvalidArgs("j must be >= 1".into()));
    }
    let mut acc = 1u64;
    for u in 1..i {
        acc = acc * lucas_binomial(u * j + j - 1, j - 1, p)? % p;
    }
    Ok(acc)
}
