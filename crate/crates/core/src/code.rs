//! Generalized affine Cartesian codes `C_k(A, v)`: generator matrices,
//! closed-form parameters, duals and brute-force parameter oracles.

use serde::Serialize;

use crate::error::{domain, internal, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::mpoly::{monomial_basis, monomial_basis_for_sizes, CartesianSet};

/// The code `{(v_1 f(a_1), ..., v_n f(a_n)) : deg f < k}` over a Cartesian set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartesianSpec {
    set: CartesianSet,
    scalars: Vec<FieldElement>,
    k: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DistanceDecomposition {
    pub s: usize,
    pub ell: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DualSpec {
    Code(CartesianSpec),
    /// The dual of the full space.
    Zero,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    BruteForce,
}

/// A linear code given by a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: Matrix,
    min_distance: Option<(usize, Provenance)>,
}

impl CartesianSpec {
    pub fn new(set: CartesianSet, scalars: Vec<FieldElement>, k: usize) -> Result<Self> {
        if scalars.len() != set.len() {
            return Err(domain(format!(
                "{} scalars for {} points",
                scalars.len(),
                set.len()
            )));
        }
        if let Some(x) = scalars.iter().find(|x| x.field() != set.field()) {
            return Err(Error::FieldMismatch {
                left: set.field(),
                right: x.field(),
            });
        }
        if let Some(i) = scalars.iter().position(|x| x.is_zero()) {
            return Err(domain(format!("scalar {} is zero", i + 1)));
        }
        if k == 0 {
            return Err(domain("k must be at least 1"));
        }
        Ok(CartesianSpec { set, scalars, k })
    }

    /// All scalars equal to one.
    pub fn unit(set: CartesianSet, k: usize) -> Result<Self> {
        let ones = vec![set.field().one(); set.len()];
        Self::new(set, ones, k)
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.set.clone(), self.scalars.clone(), k)
    }

    pub fn field(&self) -> FieldSpec {
        self.set.field()
    }

    pub fn set(&self) -> &CartesianSet {
        &self.set
    }

    pub fn scalars(&self) -> &[FieldElement] {
        &self.scalars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k - 1 >= sum (n_i - 1)`: every reduced polynomial is allowed and the
    /// code is the whole space.
    pub fn trivial_range(&self) -> bool {
        self.k > self.set.max_reduced_degree()
    }

    /// `n_1 ... n_m`.
    pub fn length(&self) -> usize {
        self.set.len()
    }

    pub fn dimension_formula(&self) -> usize {
        dimension_for_sizes(&self.set.sizes(), self.k)
    }

    pub fn min_distance_formula(&self) -> (usize, Option<DistanceDecomposition>) {
        min_distance_for_sizes(&self.set.sizes(), self.k)
    }

    /// Rows `(v_1 M(a_1), ..., v_n M(a_n))` for the monomials `M` of
    /// `monomial_basis`, in that order.
    pub fn generator_matrix(&self) -> LinearCode {
        let basis = monomial_basis(&self.set, self.k);
        let n = self.length();
        let mut data = Vec::with_capacity(basis.len() * n);
        for exps in &basis {
            for (point, &v) in self.set.points().iter().zip(&self.scalars) {
                let mut x = v;
                for (&a, &t) in point.iter().zip(exps) {
                    x *= a.pow(u64::from(t));
                }
                data.push(x);
            }
        }
        let g = Matrix::new(self.field(), basis.len(), n, data).expect("shape from basis");
        LinearCode {
            generator: g,
            min_distance: None,
        }
    }

    /// `L_a(a) = prod_j L_j'(a_j)` at every point.
    pub fn lagrange_values(&self) -> Vec<FieldElement> {
        let derivs: Vec<_> = self
            .set
            .vanishing_polys()
            .iter()
            .map(|l| l.formal_derivative())
            .collect();
        self.set
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&derivs)
                    .fold(self.field().one(), |acc, (&a, d)| acc * d.eval(a))
            })
            .collect()
    }

    /// `C_k(A, v)^perp = C_{k'}(A, v')` with `k' = sum (n_i - 1) - k + 1`
    /// and `v'_i = (v_i L_{a_i}(a_i))^{-1}`.
    pub fn dual_spec(&self) -> DualSpec {
        if self.trivial_range() {
            return DualSpec::Zero;
        }
        let k_dual = self.set.max_reduced_degree() - self.k + 1;
        let scalars = self
            .lagrange_values()
            .into_iter()
            .zip(&self.scalars)
            .map(|(l, &v)| (v * l).inv().expect("nonzero by distinctness"))
            .collect();
        DualSpec::Code(CartesianSpec {
            set: self.set.clone(),
            scalars,
            k: k_dual,
        })
    }

    pub fn report(&self, bruteforce_budget: Option<u128>) -> Result<CodeReport> {
        let (d, _) = self.min_distance_formula();
        let n = self.length();
        let dim = self.dimension_formula();
        let d_bruteforce = match bruteforce_budget {
            Some(budget) => Some(brute_force_min_distance(&self.generator_matrix(), budget)?),
            None => None,
        };
        Ok(CodeReport {
            field: self.field(),
            components: self.set.components().to_vec(),
            scalars: self.scalars.clone(),
            k: self.k,
            n,
            dim,
            d_formula: d,
            d_bruteforce,
            mds: d + dim == n + 1,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub field: FieldSpec,
    pub components: Vec<Vec<FieldElement>>,
    pub scalars: Vec<FieldElement>,
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub d_formula: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_bruteforce: Option<usize>,
    pub mds: bool,
}

/// Number of `t` with `0 <= t_i < n_i` and `sum t_i <= k - 1`, by
/// inclusion-exclusion over the coordinates forced past their bound.
pub fn dimension_for_sizes(sizes: &[usize], k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let total: usize = sizes.iter().map(|n| n - 1).sum();
    if k > total {
        return sizes.iter().product();
    }
    let m = sizes.len();
    let mut acc: i128 = 0;
    for mask in 0u32..(1 << m) {
        let shift: usize = (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| sizes[i])
            .sum();
        if shift > k - 1 {
            continue;
        }
        let r = k - 1 - shift;
        let term = binomial(m + r, r) as i128;
        if mask.count_ones() % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    usize::try_from(acc).expect("lattice count is nonnegative")
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Closed-form minimum distance. Sizes are sorted ascending first; the
/// formula is order-sensitive while the code is not.
pub fn min_distance_for_sizes(sizes: &[usize], k: usize) -> (usize, Option<DistanceDecomposition>) {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let total: usize = sorted.iter().map(|n| n - 1).sum();
    if k == 0 || k > total {
        return (1, None);
    }
    let mut rem = k - 1;
    for (s, &ns) in sorted.iter().enumerate() {
        if rem < ns - 1 {
            let tail: usize = sorted[s + 1..].iter().product();
            return (
                (ns - rem) * tail,
                Some(DistanceDecomposition { s, ell: rem }),
            );
        }
        rem -= ns - 1;
    }
    unreachable!("k - 1 < sum (n_i - 1) leaves a remainder")
}

impl LinearCode {
    pub fn from_generator(generator: Matrix) -> Result<Self> {
        if generator.rank() != generator.rows() {
            return Err(domain(format!(
                "generator has {} rows but rank {}",
                generator.rows(),
                generator.rank()
            )));
        }
        Ok(LinearCode {
            generator,
            min_distance: None,
        })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> FieldSpec {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn min_distance(&self) -> Option<(usize, Provenance)> {
        self.min_distance
    }

    pub fn with_min_distance(mut self, d: usize, provenance: Provenance) -> Self {
        self.min_distance = Some((d, provenance));
        self
    }

    /// Rows spanning the dual code.
    pub fn parity_matrix(&self) -> Matrix {
        self.generator.nullspace()
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        self.generator.row_space_contains(word)
    }

    /// `message * G`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.generator.left_mul_vec(message)
    }
}

/// `q^dim` as a `u128`, saturating.
pub fn enumeration_size(q: u64, dim: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..dim {
        acc = acc.saturating_mul(u128::from(q));
    }
    acc
}

/// Minimum Hamming weight over all nonzero codewords, refusing when the
/// `q^dim` messages exceed `budget`.
///
/// Only one message per projective class is visited (leading coefficient 1),
/// stepping the message like an odometer so that each step adds one
/// precomputed row multiple.
pub fn brute_force_min_distance(code: &LinearCode, budget: u128) -> Result<usize> {
    let g = code.generator();
    let field = g.field();
    let q = field.order();
    let required = enumeration_size(q, g.rows());
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Err(domain("the zero code has no minimum distance"));
    }
    let elems: Vec<FieldElement> = field.enumerate().collect();
    let qs = elems.len();
    // delta[i][t]: change of the codeword when digit i steps from elems[t]
    // to elems[(t + 1) % q].
    let delta: Vec<Vec<Vec<FieldElement>>> = (0..k)
        .map(|i| {
            (0..qs)
                .map(|t| {
                    let c = elems[(t + 1) % qs] - elems[t];
                    g.row(i).iter().map(|&x| c * x).collect()
                })
                .collect()
        })
        .collect();
    let mut best = n + 1;
    for lead in 0..k {
        let mut word: Vec<FieldElement> = g.row(lead).to_vec();
        let mut digits = vec![0usize; k - lead - 1];
        loop {
            let w = word.iter().filter(|x| !x.is_zero()).count();
            best = best.min(w);
            if best == 1 {
                return Ok(1);
            }
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                let row = lead + 1 + pos;
                let t = digits[pos];
                for (x, &d) in word.iter_mut().zip(&delta[row][t]) {
                    *x += d;
                }
                digits[pos] = (t + 1) % qs;
                if digits[pos] != 0 {
                    break;
                }
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    if best > n {
        return Err(internal("nonzero code without nonzero codewords"));
    }
    Ok(best)
}

/// Number of solutions of `t_i < n_i`, `sum t_i < k`, counted directly.
pub fn lattice_count(sizes: &[usize], k: usize) -> usize {
    monomial_basis_for_sizes(sizes, k).len()
}
