//! Exact arithmetic in finite fields GF(p^e).
//!
//! A [`FieldSpec`] is a small `Copy` descriptor (characteristic, extension
//! degree and, for e > 1, the defining modulus). Every [`FieldElement`] carries
//! its spec, so elements are self-contained values and mixing fields is
//! detected instead of silently coerced.
//!
//! Elements are stored by their canonical integer encoding: the coefficient
//! vector `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` (little-endian in the modulus
//! root `a`) maps to `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. This gives a stable
//! total order and the lexicographic enumeration order `0, 1, a, a+1, ...`.
//!
//! ```
//! use cartesian_lcd::field::FieldSpec;
//!
//! let gf7 = FieldSpec::prime(7).unwrap();
//! let a = gf7.element(3).unwrap();
//! let b = gf7.element(5).unwrap();
//! assert_eq!((a + b).to_int(), 1);
//! assert_eq!((a * b).to_int(), 1);
//! assert_eq!(a.inv().unwrap(), b);
//! ```

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// Description of GF(p^e).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldJson", into = "FieldJson")]
pub struct FieldSpec {
    p: u32,
    e: u32,
    /// Canonical encoding of the non-leading modulus coefficients (0 when e = 1).
    modulus: u32,
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(FieldSpec {
            p: p as u32,
            e: 1,
            modulus: 0,
        })
    }

    /// GF(p^e) using the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if e == 1 {
            return Self::prime(p);
        }
        check_prime(p)?;
        let q = checked_order(p, e)?;
        let p32 = p as u32;
        for code in 0..q {
            let lower = decode_digits(code, p32, e);
            if lower[0] == 0 {
                continue;
            }
            let mut full: Vec<u64> = lower.iter().map(|&c| c as u64).collect();
            full.push(1);
            if is_irreducible(&full, p) {
                return Ok(FieldSpec {
                    p: p32,
                    e,
                    modulus: code,
                });
            }
        }
        Err(Error::InvalidModulus(format!(
            "no irreducible polynomial of degree {e} over GF({p})"
        )))
    }

    /// GF(p^e) with an explicit modulus, coefficients low to high (length e + 1, monic).
    pub fn extension(p: u64, modulus: &[u32]) -> Result<Self> {
        check_prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus(
                "modulus must have degree at least 1".into(),
            ));
        }
        let e = (modulus.len() - 1) as u32;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficients must lie in [0, {p})"
            )));
        }
        if e == 1 {
            return Self::prime(p);
        }
        checked_order(p, e)?;
        let full: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if !is_irreducible(&full, p) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over GF({p})",
                format_fp_poly(&full)
            )));
        }
        Ok(FieldSpec {
            p: p as u32,
            e,
            modulus: encode_digits(&modulus[..e as usize], p as u32),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Monic modulus, coefficients low to high; `None` for prime fields.
    pub fn modulus(&self) -> Option<Vec<u32>> {
        if self.e == 1 {
            return None;
        }
        let mut m = decode_digits(self.modulus, self.p, self.e);
        m.push(1);
        Some(m)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: *self,
            value: 1,
        }
    }

    /// Element with the given canonical integer encoding.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.order() {
            return Err(domain(format!(
                "{value} is not a valid encoding in {self} (order {})",
                self.order()
            )));
        }
        Ok(FieldElement {
            field: *self,
            value: value as u32,
        })
    }

    /// Image of an integer under the ring map Z -> GF(p^e).
    pub fn from_integer(&self, n: i64) -> FieldElement {
        FieldElement {
            field: *self,
            value: n.rem_euclid(self.p as i64) as u32,
        }
    }

    /// Element from its coefficient vector (little-endian in the modulus root).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(domain(format!(
                "coefficient vector {coeffs:?} does not describe an element of {self}"
            )));
        }
        Ok(FieldElement {
            field: *self,
            value: encode_digits(coeffs, self.p),
        })
    }

    /// All elements in canonical order, starting at 0.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let field = *self;
        (0..self.order()).map(move |v| FieldElement {
            field,
            value: v as u32,
        })
    }

    /// All nonzero elements in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.enumerate().skip(1)
    }

    /// Decode an element from its JSON form: an integer encoding or a coefficient array.
    pub fn element_from_json(&self, value: &serde_json::Value) -> Result<FieldElement> {
        match value {
            serde_json::Value::Number(n) => {
                let v = n
                    .as_u64()
                    .ok_or_else(|| domain(format!("{n} is not a non-negative integer")))?;
                self.element(v)
            }
            serde_json::Value::Array(items) => {
                let mut coeffs = Vec::with_capacity(items.len());
                for item in items {
                    let c = item
                        .as_u64()
                        .filter(|&c| c < self.p as u64)
                        .ok_or_else(|| domain(format!("bad coefficient {item} for {self}")))?;
                    coeffs.push(c as u32);
                }
                self.from_coeffs(&coeffs)
            }
            other => Err(domain(format!("cannot read a field element from {other}"))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "GF({})", self.p),
            Some(m) => {
                let m: Vec<u64> = m.into_iter().map(u64::from).collect();
                write!(f, "GF({}^{}) mod {}", self.p, self.e, format_fp_poly(&m))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    p: u64,
    #[serde(default = "one_u32")]
    e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

fn one_u32() -> u32 {
    1
}

impl TryFrom<FieldJson> for FieldSpec {
    type Error = Error;

    fn try_from(j: FieldJson) -> Result<Self> {
        match j.modulus {
            Some(m) => {
                let spec = FieldSpec::extension(j.p, &m)?;
                if spec.e != j.e {
                    return Err(Error::InvalidModulus(format!(
                        "modulus degree {} does not match e = {}",
                        spec.e, j.e
                    )));
                }
                Ok(spec)
            }
            None => FieldSpec::new(j.p, j.e),
        }
    }
}

impl From<FieldSpec> for FieldJson {
    fn from(f: FieldSpec) -> Self {
        FieldJson {
            p: f.p as u64,
            e: f.e,
            modulus: f.modulus(),
        }
    }
}

/// An element of GF(p^e), tagged with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Canonical integer encoding.
    pub fn to_int(&self) -> u64 {
        self.value as u64
    }

    /// Coefficients little-endian in the modulus root (length e).
    pub fn coeffs(&self) -> Vec<u32> {
        decode_digits(self.value, self.field.p, self.field.e)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn try_add(self, rhs: FieldElement) -> Result<FieldElement> {
        self.check(&rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn try_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        self.check(&rhs)?;
        Ok(self.add_unchecked(rhs.neg_value()))
    }

    pub fn try_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        self.check(&rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn try_div(self, rhs: FieldElement) -> Result<FieldElement> {
        self.check(&rhs)?;
        Ok(self.mul_unchecked(rhs.inv()?))
    }

    /// Multiplicative inverse.
    pub fn inv(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.field.e == 1 {
            let p = self.field.p as i64;
            let (mut r0, mut r1) = (p, self.value as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            debug_assert_eq!(r0, 1);
            return Ok(FieldElement {
                field: self.field,
                value: s0.rem_euclid(p) as u32,
            });
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(base);
            }
            base = base.mul_unchecked(base);
            exp >>= 1;
        }
        acc
    }

    fn neg_value(self) -> FieldElement {
        let f = self.field;
        if f.e == 1 {
            let value = if self.value == 0 { 0 } else { f.p - self.value };
            return FieldElement { field: f, value };
        }
        let digits: Vec<u32> = decode_digits(self.value, f.p, f.e)
            .into_iter()
            .map(|d| if d == 0 { 0 } else { f.p - d })
            .collect();
        FieldElement {
            field: f,
            value: encode_digits(&digits, f.p),
        }
    }

    fn add_unchecked(self, rhs: FieldElement) -> FieldElement {
        let f = self.field;
        if f.e == 1 {
            let s = self.value as u64 + rhs.value as u64;
            let p = f.p as u64;
            let value = if s >= p { s - p } else { s } as u32;
            return FieldElement { field: f, value };
        }
        let a = decode_digits(self.value, f.p, f.e);
        let b = decode_digits(rhs.value, f.p, f.e);
        let digits: Vec<u32> = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| ((x as u64 + y as u64) % f.p as u64) as u32)
            .collect();
        FieldElement {
            field: f,
            value: encode_digits(&digits, f.p),
        }
    }

    fn mul_unchecked(self, rhs: FieldElement) -> FieldElement {
        let f = self.field;
        let p = f.p as u64;
        if f.e == 1 {
            let value = (self.value as u64 * rhs.value as u64 % p) as u32;
            return FieldElement { field: f, value };
        }
        let e = f.e as usize;
        let a = decode_digits(self.value, f.p, f.e);
        let b = decode_digits(rhs.value, f.p, f.e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m = decode_digits(f.modulus, f.p, f.e);
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // X^e = -(m_0 + ... + m_{e-1} X^{e-1})
            for (j, &mj) in m.iter().enumerate() {
                let idx = d - e + j;
                prod[idx] = (prod[idx] + (p - c) * mj as u64) % p;
            }
            prod[d] = 0;
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        FieldElement {
            field: f,
            value: encode_digits(&digits, f.p),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident, $body:expr) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            /// Panics if the operands belong to different fields.
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert!(
                    self.field == rhs.field,
                    "field mismatch: {} vs {}",
                    self.field,
                    rhs.field
                );
                $body(self, rhs)
            }
        }

        impl $assign_tr for FieldElement {
            fn $assign_method(&mut self, rhs: FieldElement) {
                *self = $tr::$method(*self, rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a: FieldElement, b| a
    .add_unchecked(b));
binop!(
    Sub,
    sub,
    SubAssign,
    sub_assign,
    |a: FieldElement, b: FieldElement| a.add_unchecked(b.neg_value())
);
binop!(Mul, mul, MulAssign, mul_assign, |a: FieldElement, b| a
    .mul_unchecked(b));

impl Div for FieldElement {
    type Output = FieldElement;

    /// Panics on division by zero or mismatched fields.
    fn div(self, rhs: FieldElement) -> FieldElement {
        self.try_div(rhs).expect("field division")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.neg_value()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            return write!(f, "{}", self.value);
        }
        let coeffs = self.coeffs();
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        if self.field.e == 1 {
            serializer.serialize_u32(self.value)
        } else {
            self.coeffs().serialize(serializer)
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !(2..=MAX_CHARACTERISTIC).contains(&p) {
        return Err(Error::NotPrime(p));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

fn checked_order(p: u64, e: u32) -> Result<u32> {
    if e == 0 {
        return Err(Error::InvalidModulus(
            "extension degree must be positive".into(),
        ));
    }
    p.checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .map(|q| q as u32)
        .ok_or(Error::OrderTooLarge { p, e })
}

fn decode_digits(mut value: u32, p: u32, e: u32) -> Vec<u32> {
    let mut digits = Vec::with_capacity(e as usize);
    for _ in 0..e {
        digits.push(value % p);
        value /= p;
    }
    digits
}

fn encode_digits(digits: &[u32], p: u32) -> u32 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
}

fn format_fp_poly(c: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in c.iter().enumerate().rev() {
        if x == 0 {
            continue;
        }
        parts.push(match i {
            0 => x.to_string(),
            1 if x == 1 => "X".to_string(),
            1 => format!("{x}X"),
            _ if x == 1 => format!("X^{i}"),
            _ => format!("{x}X^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

// Dense polynomials over GF(p) as little-endian u64 vectors; only used to
// validate and search for moduli.

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * bj % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Irreducibility of a monic polynomial over GF(p).
///
/// Degree <= 3: irreducible iff rootless. Otherwise: no factor of degree
/// i <= e/2, i.e. gcd(f, X^{p^i} - X) = 1 for each such i.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e <= 1 {
        return e == 1;
    }
    if e <= 3 {
        return (0..p).all(|x| fp_eval(f, x, p) != 0);
    }
    let x_poly = vec![0u64, 1];
    let mut power = x_poly.clone(); // X^{p^i} mod f
    for _ in 1..=e / 2 {
        // raise to the p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = power.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            exp >>= 1;
        }
        power = acc;
        let mut diff = power.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        let g = fp_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
