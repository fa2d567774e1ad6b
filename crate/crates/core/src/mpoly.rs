//! Sparse multivariate polynomials, Cartesian point sets and reduction
//! modulo their vanishing ideals.
//!
//! Monomials are ordered graded-lexicographically: first by total degree,
//! then by the leftmost differing exponent. The vanishing ideal of
//! `A_1 x ... x A_m` is generated by the univariate `L_i(X_i)`, which form a
//! Gröbner basis, so plain multivariate division by them gives the unique
//! reduced representative (every `deg_{X_i} < n_i`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{check_distinct, lagrange_term, vanishing_poly, Degree, Poly};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        Self::term(c, vec![0; nvars])
    }

    pub fn term(c: FieldElement, exponents: Vec<u32>) -> Self {
        let mut p = Self::zero(c.field(), exponents.len());
        p.add_term(Monomial(exponents), c);
        p
    }

    /// `X_var` (0-based).
    pub fn variable(field: FieldSpec, nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::term(field.one(), e)
    }

    /// Embed a univariate polynomial as a polynomial in `X_var`.
    pub fn from_univariate(p: &Poly, var: usize, nvars: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut out = Self::zero(p.field(), nvars);
        for (i, &c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            out.add_term(Monomial(e), c);
        }
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exponents: &[u32]) -> FieldElement {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .copied()
            .unwrap_or(self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Degree {
        match self.leading_term() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.total_degree() as usize),
        }
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.0[var] as usize))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(c.field(), self.field, "field mismatch");
        assert_eq!(m.0.len(), self.nvars, "arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: FieldElement) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(domain(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        if let Some(x) = point.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: x.field(),
            });
        }
        let mut acc = self.field.zero();
        for (m, &c) in &self.terms {
            let mut v = c;
            for (&x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= x.pow(e as u64);
                }
            }
            acc += v;
        }
        Ok(acc)
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        self.scale(-self.field.one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MPoly::zero(self.field, self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let e = a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect();
                out.add_term(Monomial(e), x * y);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("X{}", i + 1)
                        } else {
                            format!("X{}^{e}", i + 1)
                        }
                    })
                    .collect();
            let coeff = if self.field.is_prime_field() {
                c.to_string()
            } else {
                format!("({c})")
            };
            parts.push(if vars.is_empty() {
                coeff
            } else if c.is_one() {
                vars.join("*")
            } else {
                format!("{coeff}*{}", vars.join("*"))
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    exponents: &'a [u32],
    coeff: FieldElement,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, &c) in self.terms() {
            seq.serialize_element(&TermJson {
                exponents: &m.0,
                coeff: c,
            })?;
        }
        seq.end()
    }
}

/// `A_1 x ... x A_m` with its points listed row-major (last coordinate
/// varies fastest). This order fixes every coordinate index downstream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartesianSet {
    field: FieldSpec,
    components: Vec<Vec<FieldElement>>,
    points: Vec<Vec<FieldElement>>,
}

impl CartesianSet {
    pub fn new(components: Vec<Vec<FieldElement>>) -> Result<Self> {
        let field = components
            .first()
            .and_then(|c| c.first())
            .map(|x| x.field())
            .ok_or_else(|| domain("a Cartesian set needs at least one non-empty component"))?;
        for (i, comp) in components.iter().enumerate() {
            if comp.is_empty() {
                return Err(domain(format!("component {} is empty", i + 1)));
            }
            if let Some(x) = comp.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: x.field(),
                });
            }
            check_distinct(comp).map_err(|e| domain(format!("component {}: {e}", i + 1)))?;
        }
        let mut points: Vec<Vec<FieldElement>> = vec![Vec::new()];
        for comp in &components {
            points = points
                .into_iter()
                .flat_map(|prefix| {
                    comp.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        Ok(CartesianSet {
            field,
            components,
            points,
        })
    }

    /// Single-component set.
    pub fn univariate(points: Vec<FieldElement>) -> Result<Self> {
        Self::new(vec![points])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn components(&self) -> &[Vec<FieldElement>] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// `n = n_1 ... n_m`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum (n_i - 1)`: the largest total degree of a reduced monomial.
    pub fn max_reduced_degree(&self) -> usize {
        self.components.iter().map(|c| c.len() - 1).sum()
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    /// Position of a point in the row-major order.
    pub fn point_index(&self, point: &[FieldElement]) -> Option<usize> {
        if point.len() != self.nvars() {
            return None;
        }
        let mut idx = 0;
        for (comp, x) in self.components.iter().zip(point) {
            let j = comp.iter().position(|y| y == x)?;
            idx = idx * comp.len() + j;
        }
        Some(idx)
    }

    /// Generators `L_1(X_1), ..., L_m(X_m)` of the vanishing ideal.
    pub fn vanishing_polys(&self) -> Vec<Poly> {
        self.components
            .iter()
            .map(|c| vanishing_poly(c).expect("validated component"))
            .collect()
    }

    /// Values of `f` at every point, in point order.
    pub fn evaluate(&self, f: &MPoly) -> Result<Vec<FieldElement>> {
        self.points.iter().map(|p| f.eval(p)).collect()
    }
}

/// Remainder of `f` on division by `L_1, ..., L_m` (graded-lex, divisors in
/// order). The result has `deg_{X_i} < n_i`, agrees with `f` on the set and
/// has total degree at most that of `f`.
pub fn reduce_mod_ideal(f: &MPoly, set: &CartesianSet) -> MPoly {
    assert_eq!(f.nvars, set.nvars(), "arity mismatch");
    assert_eq!(f.field, set.field(), "field mismatch");
    let sizes = set.sizes();
    let gens = set.vanishing_polys();
    let mut work = f.clone();
    let mut rem = MPoly::zero(f.field, f.nvars);
    while let Some((m, &c)) = work.leading_term() {
        let m = m.clone();
        match (0..sizes.len()).find(|&i| m.0[i] as usize >= sizes[i]) {
            Some(i) => {
                // L_i is monic with leading term X_i^{n_i}
                let base = m.0[i] - sizes[i] as u32;
                for (j, &lc) in gens[i].coeffs().iter().enumerate() {
                    let mut e = m.0.clone();
                    e[i] = base + j as u32;
                    work.add_term(Monomial(e), -(c * lc));
                }
            }
            None => {
                work.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

/// `L_a(X) = prod_i L_i(X_i) / (X_i - a_i)`: zero at every point of the set
/// except `a`, where it equals `prod_i L_i'(a_i)`.
pub fn lagrange_point(set: &CartesianSet, a: &[FieldElement]) -> Result<MPoly> {
    if set.point_index(a).is_none() {
        return Err(domain(format!("{a:?} is not a point of the Cartesian set")));
    }
    let m = set.nvars();
    let mut acc = MPoly::constant(set.field.one(), m);
    for (i, (comp, &ai)) in set.components.iter().zip(a).enumerate() {
        let term = lagrange_term(comp, ai)?;
        acc = &acc * &MPoly::from_univariate(&term, i, m);
    }
    Ok(acc)
}

/// The unique polynomial with `deg_{X_i} < n_i` taking `values` (in point
/// order) on the set.
pub fn interpolate_multivariate(set: &CartesianSet, values: &[FieldElement]) -> Result<MPoly> {
    if values.len() != set.len() {
        return Err(domain(format!(
            "expected {} values, got {}",
            set.len(),
            values.len()
        )));
    }
    let mut acc = MPoly::zero(set.field, set.nvars());
    for (point, &c) in set.points.iter().zip(values) {
        if c.field() != set.field {
            return Err(Error::FieldMismatch {
                left: set.field,
                right: c.field(),
            });
        }
        if c.is_zero() {
            continue;
        }
        let l = lagrange_point(set, point)?;
        let at_a = l.eval(point)?;
        acc = &acc + &l.scale(c * at_a.inv()?);
    }
    Ok(acc)
}

/// Exponent vectors with `t_i < n_i` and total degree `< k`, in ascending
/// graded-lex order.
pub fn monomial_basis(set: &CartesianSet, k: usize) -> Vec<Vec<u32>> {
    monomial_basis_for_sizes(&set.sizes(), k)
}

pub(crate) fn monomial_basis_for_sizes(sizes: &[usize], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return Vec::new();
    }
    let mut out: Vec<Monomial> = Vec::new();
    let mut current = vec![0u32; sizes.len()];
    fn rec(
        i: usize,
        budget: usize,
        sizes: &[usize],
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == sizes.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        for t in 0..sizes[i].min(budget + 1) {
            current[i] = t as u32;
            rec(i + 1, budget - t, sizes, current, out);
        }
        current[i] = 0;
    }
    rec(0, k - 1, sizes, &mut current, &mut out);
    out.sort();
    out.into_iter().map(|m| m.0).collect()
}
