//! Deciding whether `C_k(A, v)` is LCD (`C ∩ C^perp = {0}`).
//!
//! For one variable the remainder degrees of the extended Euclidean
//! sequence on `(L, H)` decide every `k` at once. For several variables the
//! linear-algebra test is authoritative and the product theorems give
//! one-directional shortcuts.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{CartesianSpec, DualSpec};
use crate::error::{domain, internal, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::mpoly::{lagrange_point, CartesianSet, MPoly};
use crate::poly::{check_distinct, eea_sequence, lagrange_term, vanishing_poly, EeaSequence, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LcdMethod {
    Eea,
    Gram,
    Intersection,
    ProductTheorem,
}

#[derive(Clone, Debug)]
pub struct LcdReport {
    pub spec: CartesianSpec,
    pub is_lcd: bool,
    pub method: LcdMethod,
    /// Rows spanning (part of) `C ∩ C^perp`; present only for non-LCD codes.
    pub witness: Option<Matrix>,
    /// Degrees of `g_1, ..., g_{t+1}` when the Euclidean method ran.
    pub eea_degrees: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct CodeParams<'a> {
    field: FieldSpec,
    components: &'a [Vec<FieldElement>],
    scalars: &'a [FieldElement],
    k: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    params: CodeParams<'a>,
    lcd: bool,
    method: LcdMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    eea_degrees: Option<&'a Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Matrix>,
}

impl Serialize for LcdReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            params: CodeParams {
                field: self.spec.field(),
                components: self.spec.set().components(),
                scalars: self.spec.scalars(),
                k: self.spec.k(),
            },
            lcd: self.is_lcd,
            method: self.method,
            eea_degrees: self.eea_degrees.as_ref(),
            witness: self.witness.as_ref(),
        }
        .serialize(s)
    }
}

fn check_scalars(points: &[FieldElement], scalars: &[FieldElement]) -> Result<()> {
    if points.len() != scalars.len() {
        return Err(domain(format!(
            "{} scalars for {} points",
            scalars.len(),
            points.len()
        )));
    }
    if points.is_empty() {
        return Err(domain("empty point set"));
    }
    if scalars.iter().any(|v| v.is_zero()) {
        return Err(domain("scalars must be nonzero"));
    }
    check_distinct(points)
}

/// `H(X) = sum v_i^2 L_{a_i}(X)`.
pub fn associated_poly_univariate(
    points: &[FieldElement],
    scalars: &[FieldElement],
) -> Result<Poly> {
    check_scalars(points, scalars)?;
    let field = points[0].field();
    let mut h = Poly::zero(field);
    for (&a, &v) in points.iter().zip(scalars) {
        h = &h + &lagrange_term(points, a)?.scale(v * v);
    }
    Ok(h)
}

/// Extended Euclidean sequence on `(L, H)` for the pair `(A, v)`.
pub fn eea_for(points: &[FieldElement], scalars: &[FieldElement]) -> Result<EeaSequence> {
    let h = associated_poly_univariate(points, scalars)?;
    let l = vanishing_poly(points)?;
    eea_sequence(&l, &h)
}

/// Values `n - k` (for `1 <= k <= n - 1`) with `C_k` LCD: exactly the
/// remainder degrees `{deg g_1, ..., deg g_{t+1}}`.
///
/// When `deg H = n - 1` this is `{n-1, ..., deg g_1} ∪ {deg g_2, ...}`. When
/// `sum v_i^2 = 0` the degree of `H` drops, every `n - k` strictly between
/// `deg g_1` and `n` fails the remainder-degree test, and the run from `n - 1`
/// down to `deg g_1` must not be filled in.
pub fn admissible_from_degrees(degrees: &[usize]) -> BTreeSet<usize> {
    degrees.iter().copied().collect()
}

/// Remainder-degree test: LCD iff for every `i` in `1..=t+1`,
/// `deg g_{i-1} <= n - k` or `deg g_i >= n - k`.
pub fn remainder_degree_criterion(n: usize, degrees: &[usize], k: usize) -> bool {
    if k >= n {
        return true;
    }
    let r = n - k;
    let mut prev = n;
    for &d in degrees {
        if !(prev <= r || d >= r) {
            return false;
        }
        prev = d;
    }
    true
}

pub fn lcd_admissible_set(
    points: &[FieldElement],
    scalars: &[FieldElement],
) -> Result<BTreeSet<usize>> {
    let eea = eea_for(points, scalars)?;
    Ok(admissible_from_degrees(&eea.remainder_degrees()))
}

/// A nonzero word of `C ∩ C^perp` read off the Bézout row whose remainder
/// degree falls below `n - k` while the previous one is above it.
fn eea_witness(
    points: &[FieldElement],
    scalars: &[FieldElement],
    eea: &EeaSequence,
    k: usize,
) -> Option<Vec<FieldElement>> {
    let n = points.len();
    let r = n.checked_sub(k)?;
    let degrees = eea.remainder_degrees();
    let mut prev = n;
    for (i, &d) in degrees.iter().enumerate() {
        if prev > r && d < r {
            let f = &eea.steps[i + 1].bezout_f;
            return Some(
                points
                    .iter()
                    .zip(scalars)
                    .map(|(&a, &v)| v * f.eval(a))
                    .collect(),
            );
        }
        prev = d;
    }
    None
}

/// Univariate decision by the remainder-degree criterion; the admissible-set
/// form is evaluated too and must agree.
pub fn is_lcd_univariate(spec: &CartesianSpec) -> Result<LcdReport> {
    if spec.set().nvars() != 1 {
        return Err(domain("the Euclidean criterion needs a single variable"));
    }
    let points = &spec.set().components()[0];
    let scalars = spec.scalars();
    let n = points.len();
    let k = spec.k();
    let eea = eea_for(points, scalars)?;
    let degrees = eea.remainder_degrees();
    let by_criterion = remainder_degree_criterion(n, &degrees, k);
    let by_set = k >= n || admissible_from_degrees(&degrees).contains(&(n - k));
    if by_criterion != by_set {
        return Err(internal(format!(
            "remainder-degree criterion says {by_criterion}, admissible set says {by_set}"
        )));
    }
    let witness = if by_criterion {
        None
    } else {
        let w = eea_witness(points, scalars, &eea, k)
            .ok_or_else(|| internal("non-LCD verdict without a Bézout witness"))?;
        Some(Matrix::from_rows(spec.field(), n, vec![w])?)
    };
    Ok(LcdReport {
        spec: spec.clone(),
        is_lcd: by_criterion,
        method: LcdMethod::Eea,
        witness,
        eea_degrees: Some(degrees),
    })
}

/// `G G^T` nonsingular.
pub fn is_lcd_gram(spec: &CartesianSpec) -> bool {
    spec.trivial_range() || spec.generator_matrix().generator().gram().is_nonsingular()
}

/// Basis of `C ∩ C^perp`, with the dual taken from its closed form.
pub fn hull_basis(spec: &CartesianSpec) -> Result<Matrix> {
    let g = spec.generator_matrix();
    match spec.dual_spec() {
        DualSpec::Zero => Ok(Matrix::from_rows(spec.field(), spec.length(), vec![])?),
        DualSpec::Code(d) => g
            .generator()
            .subspace_intersection(d.generator_matrix().generator()),
    }
}

/// Gram-rank and intersection tests together; they must agree.
pub fn is_lcd_bruteforce(spec: &CartesianSpec) -> Result<LcdReport> {
    let by_gram = is_lcd_gram(spec);
    let hull = hull_basis(spec)?;
    let by_intersection = hull.rows() == 0;
    if by_gram != by_intersection {
        return Err(internal(format!(
            "Gram test says {by_gram}, intersection has dimension {}",
            hull.rows()
        )));
    }
    Ok(LcdReport {
        spec: spec.clone(),
        is_lcd: by_gram,
        method: LcdMethod::Gram,
        witness: (!by_gram).then_some(hull),
        eea_degrees: None,
    })
}

/// Authoritative decision: Euclidean for one variable, Gram otherwise.
pub fn decide_lcd(spec: &CartesianSpec) -> Result<LcdReport> {
    if spec.set().nvars() == 1 {
        is_lcd_univariate(spec)
    } else {
        is_lcd_bruteforce(spec)
    }
}

/// `H(X) = sum v_a^2 L_a(X)` over the grid.
pub fn associated_poly_multivariate(set: &CartesianSet, scalars: &[FieldElement]) -> Result<MPoly> {
    if scalars.len() != set.len() {
        return Err(domain(format!(
            "{} scalars for {} points",
            scalars.len(),
            set.len()
        )));
    }
    if scalars.iter().any(|v| v.is_zero()) {
        return Err(domain("scalars must be nonzero"));
    }
    let mut h = MPoly::zero(set.field(), set.nvars());
    for (a, &v) in set.points().iter().zip(scalars) {
        h = &h + &lagrange_point(set, a)?.scale(v * v);
    }
    Ok(h)
}

/// Per-component scalar vectors and their Cartesian product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianScalars {
    components: Vec<Vec<FieldElement>>,
}

impl CartesianScalars {
    pub fn new(components: Vec<Vec<FieldElement>>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|c| c.is_empty()) {
            return Err(domain("every component needs at least one scalar"));
        }
        if components.iter().flatten().any(|v| v.is_zero()) {
            return Err(domain("scalars must be nonzero"));
        }
        Ok(CartesianScalars { components })
    }

    pub fn components(&self) -> &[Vec<FieldElement>] {
        &self.components
    }

    /// Entry at `(a_{1 j_1}, ..., a_{m j_m})` is `v_{1 j_1} ... v_{m j_m}`,
    /// listed in grid point order.
    pub fn product(&self) -> Vec<FieldElement> {
        let one = self.components[0][0].field().one();
        let mut out = vec![one];
        for comp in &self.components {
            out = out
                .iter()
                .flat_map(|&p| comp.iter().map(move |&v| p * v))
                .collect();
        }
        out
    }
}

/// One factor `(A_i, v_i)` of a product code with its LCD profile.
#[derive(Clone, Debug)]
pub struct Component {
    points: Vec<FieldElement>,
    scalars: Vec<FieldElement>,
    admissible: BTreeSet<usize>,
}

impl Component {
    pub fn new(points: Vec<FieldElement>, scalars: Vec<FieldElement>) -> Result<Self> {
        let admissible = lcd_admissible_set(&points, &scalars)?;
        Ok(Component {
            points,
            scalars,
            admissible,
        })
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn scalars(&self) -> &[FieldElement] {
        &self.scalars
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether `C_t(A_i, v_i)` is LCD (`t >= n_i` is the full space).
    pub fn is_lcd_at(&self, t: usize) -> bool {
        t >= self.len() || self.admissible.contains(&(self.len() - t))
    }
}

/// `C_k(A_1 x ... x A_m, v_1 x ... x v_m)`.
pub fn product_spec(components: &[Component], k: usize) -> Result<CartesianSpec> {
    let set = CartesianSet::new(components.iter().map(|c| c.points.clone()).collect())?;
    let scalars = CartesianScalars::new(components.iter().map(|c| c.scalars.clone()).collect())?;
    CartesianSpec::new(set, scalars.product(), k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Lcd,
    NotLcd,
    Unknown,
}

/// Sufficient condition: every `C_t(A_i, v_i)` with `1 <= t <= min(k, n_i - 1)`
/// is LCD. Returns `Lcd` when it holds, `Unknown` otherwise.
pub fn is_lcd_product_sufficient(components: &[Component], k: usize) -> Verdict {
    let holds = components
        .iter()
        .all(|c| (1..=k.min(c.len().saturating_sub(1))).all(|t| c.is_lcd_at(t)));
    if holds {
        Verdict::Lcd
    } else {
        Verdict::Unknown
    }
}

/// If every `C_{t_i}(A_i, v_i)` is non-LCD then the product code of degree
/// `t_1 + ... + t_m` is non-LCD. Returns `NotLcd` or `Unknown`.
pub fn not_lcd_product(components: &[Component], ts: &[usize]) -> Result<Verdict> {
    if components.len() != ts.len() {
        return Err(domain("one degree per component is required"));
    }
    if ts.contains(&0) {
        return Err(domain("component degrees must be at least 1"));
    }
    let all_non_lcd = components.iter().zip(ts).all(|(c, &t)| !c.is_lcd_at(t));
    Ok(if all_non_lcd {
        Verdict::NotLcd
    } else {
        Verdict::Unknown
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NecessityVerdict {
    Inapplicable,
    Consistent,
}

/// For `k < min n_i`: if the product code is LCD, every `C_k(A_i, v_i)` must
/// be LCD. A violation is reported as an internal inconsistency.
pub fn lcd_necessity_check(
    components: &[Component],
    k: usize,
    product_is_lcd: bool,
) -> Result<NecessityVerdict> {
    let min_n = components.iter().map(Component::len).min().unwrap_or(0);
    if k == 0 || k >= min_n {
        return Ok(NecessityVerdict::Inapplicable);
    }
    if product_is_lcd {
        if let Some(i) = components.iter().position(|c| !c.is_lcd_at(k)) {
            return Err(internal(format!(
                "product code is LCD at k = {k} but component {} is not",
                i + 1
            )));
        }
    }
    Ok(NecessityVerdict::Consistent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarPolicy {
    AllOnes,
    /// First scalar fixed to 1, the rest over all of `K^*`.
    ExhaustiveModScaling,
    /// First scalar fixed to 1, the rest drawn uniformly from `K^*`.
    Random {
        seed: u64,
        count: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetSource {
    Fixed(CartesianSet),
    /// Every subset of the field whose size lies in the range, per component.
    Sizes(Vec<(usize, usize)>),
}

#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub field: FieldSpec,
    pub sets: SetSource,
    pub k_range: (usize, usize),
    pub scalars: ScalarPolicy,
    /// Maximum number of codes examined.
    pub budget: u64,
}

#[derive(Clone, Debug)]
pub struct SearchRecord {
    pub report: LcdReport,
    pub mds: bool,
}

impl Serialize for SearchRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v = serde_json::to_value(&self.report).map_err(serde::ser::Error::custom)?;
        v["mds"] = serde_json::Value::Bool(self.mds);
        v.serialize(s)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub records: Vec<SearchRecord>,
    pub truncated: bool,
}

/// Subsets of the field with `size` elements, lexicographic in their sorted encodings.
pub fn subsets_of_size(field: FieldSpec, size: usize) -> Vec<Vec<FieldElement>> {
    let elems: Vec<FieldElement> = field.enumerate().collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > elems.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| elems[i]).collect());
        let Some(pos) = (0..size).rev().find(|&i| idx[i] < elems.len() - size + i) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Scalar vectors of length `n` with first entry 1 and the rest over `K^*`,
/// in lexicographic order of encodings.
pub fn scalar_transversal(field: FieldSpec, n: usize) -> Vec<Vec<FieldElement>> {
    let nonzero: Vec<FieldElement> = field.nonzero().collect();
    let mut out = vec![vec![field.one()]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                nonzero.iter().map(move |&x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// `count` random scalar vectors with first entry 1.
pub fn random_scalars(
    field: FieldSpec,
    n: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<FieldElement>> {
    let q = field.order();
    (0..count)
        .map(|_| {
            let mut v = vec![field.one()];
            for _ in 1..n {
                v.push(field.element(rng.gen_range(1..q)).expect("in range"));
            }
            v
        })
        .collect()
}

fn candidate_sets(req: &SearchRequest) -> Result<Vec<CartesianSet>> {
    match &req.sets {
        SetSource::Fixed(set) => Ok(vec![set.clone()]),
        SetSource::Sizes(bounds) => {
            if bounds.is_empty() {
                return Err(domain("at least one component is required"));
            }
            let per_component: Vec<Vec<Vec<FieldElement>>> = bounds
                .iter()
                .map(|&(lo, hi)| {
                    (lo.max(1)..=hi)
                        .flat_map(|s| subsets_of_size(req.field, s))
                        .collect()
                })
                .collect();
            let mut combos: Vec<Vec<Vec<FieldElement>>> = vec![vec![]];
            for options in &per_component {
                combos = combos
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut c = prefix.clone();
                            c.push(o.clone());
                            c
                        })
                    })
                    .collect();
            }
            combos.into_iter().map(CartesianSet::new).collect()
        }
    }
}

/// Enumerate candidate codes in a fixed order, handing each verified record
/// to `emit`. Returns whether the budget cut the enumeration short.
pub fn search_lcd_with(
    req: &SearchRequest,
    mut emit: impl FnMut(SearchRecord) -> Result<()>,
) -> Result<bool> {
    let (k_lo, k_hi) = req.k_range;
    if k_lo > k_hi {
        return Ok(false);
    }
    let mut rng = match req.scalars {
        ScalarPolicy::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut examined: u64 = 0;
    for set in candidate_sets(req)? {
        let n = set.len();
        let scalar_list = match &req.scalars {
            ScalarPolicy::AllOnes => vec![vec![req.field.one(); n]],
            ScalarPolicy::ExhaustiveModScaling => scalar_transversal(req.field, n),
            ScalarPolicy::Random { count, .. } => {
                random_scalars(req.field, n, *count, rng.as_mut().expect("seeded"))
            }
        };
        for scalars in scalar_list {
            for k in k_lo.max(1)..=k_hi {
                if examined >= req.budget {
                    return Ok(true);
                }
                examined += 1;
                let spec = CartesianSpec::new(set.clone(), scalars.clone(), k)?;
                let report = decide_lcd(&spec)?;
                let (d, _) = spec.min_distance_formula();
                let mds = d + spec.dimension_formula() == n + 1;
                emit(SearchRecord { report, mds })?;
            }
        }
    }
    Ok(false)
}

pub fn search_lcd(req: &SearchRequest) -> Result<SearchOutcome> {
    let mut records = Vec::new();
    let truncated = search_lcd_with(req, |r| {
        records.push(r);
        Ok(())
    })?;
    Ok(SearchOutcome { records, truncated })
}
