//! Dense univariate polynomials over a finite field.
//!
//! Besides ring arithmetic this module provides the handful of polynomials
//! the rest of the crate is built on: the vanishing polynomial `L` of a
//! point set, its Lagrange terms `L / (X - a)`, interpolation, and the
//! extended Euclidean remainder sequence for a pair `(L, H)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{domain, internal, Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial with coefficients indexed by exponent; the highest stored
/// coefficient is nonzero (the zero polynomial stores nothing).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Self::from_raw(field, coeffs))
    }

    fn from_raw(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Coefficients given as integers (low to high), mapped into the field.
    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_raw(
            field,
            coeffs.iter().map(|&c| field.from_integer(c)).collect(),
        )
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c])
    }

    /// `c * X^degree`.
    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![c.field().zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_raw(c.field(), coeffs)
    }

    /// `X - a`.
    pub fn linear_root(a: FieldElement) -> Self {
        Self::from_raw(a.field(), vec![-a, a.field().one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        assert_eq!(x.field(), self.field, "field mismatch in evaluation");
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        Self::from_raw(self.field, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: divisor.field,
            });
        }
        let lc = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + db] * lc_inv;
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= c * d;
            }
        }
        rem.truncate(db);
        Ok((
            Self::from_raw(self.field, quot),
            Self::from_raw(self.field, rem),
        ))
    }

    /// Formal derivative; coefficients whose exponent is a multiple of the
    /// characteristic vanish.
    pub fn formal_derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * self.field.from_integer(i as i64))
            .collect();
        Self::from_raw(self.field, coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_raw(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_raw(self.field, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_raw(self.field, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_raw(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if self.field.is_prime_field() {
                c.to_string()
            } else {
                format!("({c})")
            };
            parts.push(match i {
                0 => coeff,
                _ => {
                    let var = if i == 1 {
                        "X".to_string()
                    } else {
                        format!("X^{i}")
                    };
                    if c.is_one() {
                        var
                    } else {
                        format!("{coeff}*{var}")
                    }
                }
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn common_field(points: &[FieldElement]) -> Result<FieldSpec> {
    let first = points
        .first()
        .ok_or_else(|| domain("point set must be non-empty"))?;
    let field = first.field();
    if let Some(bad) = points.iter().find(|x| x.field() != field) {
        return Err(Error::FieldMismatch {
            left: field,
            right: bad.field(),
        });
    }
    Ok(field)
}

pub(crate) fn check_distinct(points: &[FieldElement]) -> Result<()> {
    let mut sorted = points.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(domain(format!("duplicate element {} in point set", w[0])));
    }
    Ok(())
}

/// `L_A(X) = prod_{a in A} (X - a)`: monic, degree |A|, roots exactly A.
pub fn vanishing_poly(points: &[FieldElement]) -> Result<Poly> {
    let field = common_field(points)?;
    check_distinct(points)?;
    Ok(points
        .iter()
        .fold(Poly::one(field), |acc, &a| &acc * &Poly::linear_root(a)))
}

/// `L_A(X) / (X - a)` for `a` in `A`; nonzero at `a` (where it equals
/// `L_A'(a)`) and zero on the rest of `A`.
pub fn lagrange_term(points: &[FieldElement], a: FieldElement) -> Result<Poly> {
    let l = vanishing_poly(points)?;
    if !points.contains(&a) {
        return Err(domain(format!("{a} is not in the point set")));
    }
    let (q, r) = l.divmod(&Poly::linear_root(a))?;
    if !r.is_zero() {
        return Err(internal("vanishing polynomial not divisible by its root"));
    }
    Ok(q)
}

/// The unique polynomial of degree < #points through the given points.
pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<Poly> {
    let xs: Vec<FieldElement> = points.iter().map(|p| p.0).collect();
    let field = common_field(&xs)?;
    if let Some((_, y)) = points.iter().find(|(_, y)| y.field() != field) {
        return Err(Error::FieldMismatch {
            left: field,
            right: y.field(),
        });
    }
    let l = vanishing_poly(&xs)?;
    let mut acc = Poly::zero(field);
    for &(x, y) in points {
        if y.is_zero() {
            continue;
        }
        let (term, _) = l.divmod(&Poly::linear_root(x))?;
        let weight = y * term.eval(x).inv()?;
        acc = &acc + &term.scale(weight);
    }
    Ok(acc)
}

/// One row of the extended Euclidean sequence for `(L, H)`:
/// `remainder = bezout_h * L + bezout_f * H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EeaStep {
    pub index: usize,
    pub remainder: Poly,
    /// Quotient that produced this remainder:
    /// `remainder = previous-but-one - quotient * previous`. Absent for steps 0 and 1.
    pub quotient: Option<Poly>,
    pub bezout_h: Poly,
    pub bezout_f: Poly,
}

/// Remainder sequence `g_0 = L, g_1 = H, ..., g_{t+1}` where `g_{t+1}` is the
/// last nonzero remainder. For coprime inputs it is a nonzero constant.
///
/// Steps are stored raw (not made monic), so every Bézout identity is exact.
/// The value of the final constant is kept in `final_constant`; the
/// normalized last row (`g_{t+1} = 1`) is available from [`EeaSequence::normalized_final`].
#[derive(Clone, Debug)]
pub struct EeaSequence {
    pub steps: Vec<EeaStep>,
    pub final_constant: FieldElement,
}

impl EeaSequence {
    /// Number of quotient steps `t`; the sequence has `t + 2` rows.
    pub fn t(&self) -> usize {
        self.steps.len() - 2
    }

    pub fn n(&self) -> usize {
        self.steps[0].remainder.degree().finite().unwrap_or(0)
    }

    /// Degrees of `g_1, ..., g_{t+1}`, strictly decreasing.
    pub fn remainder_degrees(&self) -> Vec<usize> {
        self.steps[1..]
            .iter()
            .map(|s| s.remainder.degree().finite().expect("nonzero remainder"))
            .collect()
    }

    /// Last row scaled so that the remainder is exactly 1.
    pub fn normalized_final(&self) -> EeaStep {
        let last = self.steps.last().expect("non-empty sequence");
        let c = self.final_constant.inv().expect("nonzero final constant");
        EeaStep {
            index: last.index,
            remainder: last.remainder.scale(c),
            quotient: last.quotient.clone(),
            bezout_h: last.bezout_h.scale(c),
            bezout_f: last.bezout_f.scale(c),
        }
    }

    /// Recompute `h_i L + f_i H` for every row and compare with `g_i`.
    pub fn verify_bezout(&self) -> bool {
        let l = &self.steps[0].remainder;
        let h = &self.steps[1].remainder;
        self.steps
            .iter()
            .all(|s| &(&s.bezout_h * l) + &(&s.bezout_f * h) == s.remainder)
    }
}

/// Extended Euclidean algorithm on `(L, H)` with `deg H < deg L`.
///
/// Fails with [`Error::NotCoprime`] when the last nonzero remainder is not a
/// constant, and with [`Error::Internal`] if the degree law
/// `deg f_i = deg L - deg g_{i-1}` is violated at any step `i >= 1`
/// (including the final one).
pub fn eea_sequence(l: &Poly, h: &Poly) -> Result<EeaSequence> {
    if l.field != h.field {
        return Err(Error::FieldMismatch {
            left: l.field,
            right: h.field,
        });
    }
    if l.is_zero() || h.is_zero() {
        return Err(domain("extended Euclid needs nonzero inputs"));
    }
    if h.degree() >= l.degree() {
        return Err(domain(format!(
            "need deg H < deg L, got {} >= {}",
            h.degree(),
            l.degree()
        )));
    }
    let field = l.field;
    let mut steps = vec![
        EeaStep {
            index: 0,
            remainder: l.clone(),
            quotient: None,
            bezout_h: Poly::one(field),
            bezout_f: Poly::zero(field),
        },
        EeaStep {
            index: 1,
            remainder: h.clone(),
            quotient: None,
            bezout_h: Poly::zero(field),
            bezout_f: Poly::one(field),
        },
    ];
    loop {
        let i = steps.len() - 1;
        let (q, r) = steps[i - 1].remainder.divmod(&steps[i].remainder)?;
        if r.is_zero() {
            break;
        }
        let bezout_h = &steps[i - 1].bezout_h - &(&q * &steps[i].bezout_h);
        let bezout_f = &steps[i - 1].bezout_f - &(&q * &steps[i].bezout_f);
        steps.push(EeaStep {
            index: i + 1,
            remainder: r,
            quotient: Some(q),
            bezout_h,
            bezout_f,
        });
    }
    let last = steps.last().unwrap();
    if !last.remainder.is_constant() {
        return Err(Error::NotCoprime {
            gcd: last.remainder.monic(),
        });
    }
    let n = l.degree().finite().unwrap();
    for i in 1..steps.len() {
        let prev = steps[i - 1].remainder.degree().finite().unwrap();
        if steps[i].bezout_f.degree() != Degree::Finite(n - prev) {
            return Err(internal(format!(
                "degree law fails at step {i}: deg f = {}, expected {}",
                steps[i].bezout_f.degree(),
                n - prev
            )));
        }
    }
    let final_constant = last.remainder.coeff(0);
    Ok(EeaSequence {
        steps,
        final_constant,
    })
}
