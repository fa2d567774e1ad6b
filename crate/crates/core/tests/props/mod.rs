//! Property checks shared by the `properties` and `acceptance` targets.

use cartesian_lcd::code::{
    brute_force_min_distance, dimension_for_sizes, enumeration_size, lattice_count, CartesianSpec,
    DualSpec,
};
use cartesian_lcd::field::{FieldElement, FieldSpec};
use cartesian_lcd::lcd::{
    associated_poly_multivariate, associated_poly_univariate, eea_for, is_lcd_bruteforce,
    is_lcd_gram, is_lcd_product_sufficient, is_lcd_univariate, lcd_admissible_set,
    lcd_necessity_check, not_lcd_product, product_spec, Component, Verdict,
};
use cartesian_lcd::masking::build_context;
use cartesian_lcd::matrix::{dot, Matrix};
use cartesian_lcd::mpoly::{
    interpolate_multivariate, monomial_basis, reduce_mod_ideal, CartesianSet, MPoly,
};
use cartesian_lcd::poly::{interpolate, vanishing_poly, Degree, Poly};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};
use proptest::test_runner::{RngAlgorithm, RngSeed, TestCaseError, TestRunner};

pub type Outcome = Result<(), String>;

pub type Property = (&'static str, fn() -> Outcome);

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0xC0DE_5EED),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn check<S>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S: Strategy,
{
    TestRunner::new(config())
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// Every property with its name, in module order.
#[allow(dead_code)]
pub const ALL: &[Property] = &[
    (
        "fermat_and_inverse_exhaustive_small_fields",
        fermat_and_inverse_exhaustive_small_fields,
    ),
    ("vanishing_poly_exhaustive", vanishing_poly_exhaustive),
    ("field_axioms", field_axioms),
    ("nonzero_power_and_inverse", nonzero_power_and_inverse),
    ("encoding_round_trips", encoding_round_trips),
    ("divmod_reconstructs", divmod_reconstructs),
    (
        "interpolation_inverts_evaluation",
        interpolation_inverts_evaluation,
    ),
    (
        "vanishing_poly_zero_exactly_on_points",
        vanishing_poly_zero_exactly_on_points,
    ),
    (
        "euclid_rows_satisfy_bezout_and_degree_law",
        euclid_rows_satisfy_bezout_and_degree_law,
    ),
    ("unit_scalars_give_derivative", unit_scalars_give_derivative),
    (
        "reduction_idempotent_and_evaluation_preserving",
        reduction_idempotent_and_evaluation_preserving,
    ),
    (
        "basis_size_matches_dimension_and_lattice",
        basis_size_matches_dimension_and_lattice,
    ),
    (
        "multivariate_interpolation_inverts_evaluation",
        multivariate_interpolation_inverts_evaluation,
    ),
    (
        "rank_invariant_under_transpose_and_row_ops",
        rank_invariant_under_transpose_and_row_ops,
    ),
    (
        "intersection_and_sum_dimensions",
        intersection_and_sum_dimensions,
    ),
    (
        "nullspace_is_orthogonal_complement",
        nullspace_is_orthogonal_complement,
    ),
    (
        "generator_rank_matches_dimension_formula",
        generator_rank_matches_dimension_formula,
    ),
    (
        "dual_is_orthogonal_complement",
        dual_is_orthogonal_complement,
    ),
    (
        "distance_formula_matches_enumeration",
        distance_formula_matches_enumeration,
    ),
    ("singleton_bound_and_mds", singleton_bound_and_mds),
    (
        "monomial_equivalence_preserves_parameters",
        monomial_equivalence_preserves_parameters,
    ),
    ("univariate_verdicts_agree", univariate_verdicts_agree),
    ("negated_scalars_keep_verdict", negated_scalars_keep_verdict),
    (
        "admissible_set_shape_with_full_degree",
        admissible_set_shape_with_full_degree,
    ),
    ("degree_drop_leaves_gap", degree_drop_leaves_gap),
    (
        "multivariate_gram_and_intersection_agree",
        multivariate_gram_and_intersection_agree,
    ),
    (
        "hull_matches_polynomial_enumeration",
        hull_matches_polynomial_enumeration,
    ),
    ("product_theorems_sound", product_theorems_sound),
    (
        "split_is_linear_and_recomposes",
        split_is_linear_and_recomposes,
    ),
    ("detection_matches_membership", detection_matches_membership),
    ("low_weight_faults_detected", low_weight_faults_detected),
];

const FIELDS: [(u64, u32); 12] = [
    (2, 1),
    (3, 1),
    (5, 1),
    (7, 1),
    (11, 1),
    (13, 1),
    (17, 1),
    (2, 2),
    (2, 3),
    (3, 2),
    (2, 4),
    (5, 2),
];

const GRID_FIELDS: [(u64, u32); 5] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2)];

const PRIME_GRID_FIELDS: [(u64, u32); 4] = [(2, 1), (3, 1), (5, 1), (7, 1)];

fn field_from(choices: &'static [(u64, u32)]) -> impl Strategy<Value = FieldSpec> {
    select(choices).prop_map(|(p, e)| FieldSpec::new(p, e).unwrap())
}

fn elem_of(f: FieldSpec) -> impl Strategy<Value = FieldElement> {
    (0..f.order()).prop_map(move |x| f.element(x).unwrap())
}

fn nonzero_of(f: FieldSpec) -> impl Strategy<Value = FieldElement> {
    (1..f.order()).prop_map(move |x| f.element(x).unwrap())
}

fn word_of(f: FieldSpec, n: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec(elem_of(f), n)
}

fn points_of(f: FieldSpec, lo: usize, hi: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    let all: Vec<FieldElement> = f.enumerate().collect();
    let hi = hi.min(all.len());
    subsequence(all, lo.min(hi)..=hi).prop_shuffle()
}

fn poly_of(f: FieldSpec, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(elem_of(f), 0..=max_len).prop_map(move |c| Poly::new(f, c).unwrap())
}

/// Distinct points with nonzero scalars over any of the test fields.
fn univariate_pair() -> impl Strategy<Value = (Vec<FieldElement>, Vec<FieldElement>)> {
    field_from(&FIELDS)
        .prop_flat_map(|f| points_of(f, 2, 8))
        .prop_flat_map(|pts| {
            let f = pts[0].field();
            let n = pts.len();
            (Just(pts), prop::collection::vec(nonzero_of(f), n))
        })
}

fn grid() -> impl Strategy<Value = CartesianSet> {
    field_from(&GRID_FIELDS)
        .prop_flat_map(|f| prop::collection::vec(points_of(f, 1, 4), 1..=3))
        .prop_map(|comps| CartesianSet::new(comps).unwrap())
}

fn scalars_for(set: CartesianSet) -> impl Strategy<Value = (CartesianSet, Vec<FieldElement>)> {
    let n = set.len();
    let f = set.field();
    (Just(set), prop::collection::vec(nonzero_of(f), n))
}

/// Grid specs with `k` drawn from `1..=sum(n_i - 1) + 1` such that the code
/// has at most `limit` codewords.
fn spec_within(limit: u128) -> impl Strategy<Value = CartesianSpec> {
    grid()
        .prop_flat_map(scalars_for)
        .prop_flat_map(move |(set, v)| {
            let q = set.field().order();
            let sizes = set.sizes();
            let ks: Vec<usize> = (1..=set.max_reduced_degree() + 1)
                .filter(|&k| enumeration_size(q, dimension_for_sizes(&sizes, k)) <= limit)
                .collect();
            select(ks).prop_map(move |k| CartesianSpec::new(set.clone(), v.clone(), k).unwrap())
        })
}

fn any_spec() -> impl Strategy<Value = CartesianSpec> {
    spec_within(u128::MAX)
}

fn lcd_spec_with_words(
    words: usize,
) -> impl Strategy<Value = (CartesianSpec, Vec<Vec<FieldElement>>)> {
    spec_within(1 << 16)
        .prop_filter("LCD", is_lcd_gram)
        .prop_flat_map(move |spec| {
            let (f, n) = (spec.field(), spec.length());
            (Just(spec), prop::collection::vec(word_of(f, n), words))
        })
}

fn matrix_of(f: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(word_of(f, cols), rows)
        .prop_map(move |r| Matrix::from_rows(f, cols, r).unwrap())
}

fn add(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn weight(w: &[FieldElement]) -> usize {
    w.iter().filter(|x| !x.is_zero()).count()
}

fn parameters(spec: &CartesianSpec) -> (usize, usize, usize) {
    let code = spec.generator_matrix();
    let d = brute_force_min_distance(&code, 1 << 20).unwrap();
    (spec.length(), code.generator().rank(), d)
}

pub fn fermat_and_inverse_exhaustive_small_fields() -> Outcome {
    for (p, e) in [
        (2, 1),
        (3, 1),
        (5, 1),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
        (29, 1),
        (31, 1),
        (37, 1),
        (41, 1),
        (43, 1),
        (47, 1),
        (53, 1),
        (59, 1),
        (61, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 2),
        (3, 3),
        (5, 2),
        (7, 2),
    ] {
        let f = FieldSpec::new(p, e).unwrap();
        let q = f.order();
        for a in f.nonzero() {
            if !a.pow(q - 1).is_one() || a.inv().unwrap().inv().unwrap() != a {
                return Err(format!("{f}: {a}"));
            }
        }
    }
    Ok(())
}

pub fn vanishing_poly_exhaustive() -> Outcome {
    for p in [2, 3, 5, 7] {
        let f = FieldSpec::prime(p).unwrap();
        let all: Vec<FieldElement> = f.enumerate().collect();
        for mask in 1u32..(1 << p) {
            let a: Vec<FieldElement> = (0..p as usize)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let l = vanishing_poly(&a).unwrap();
            for &x in &all {
                if l.eval(x).is_zero() != a.contains(&x) {
                    return Err(format!("{f}: {a:?} at {x}"));
                }
            }
        }
    }
    Ok(())
}

pub fn field_axioms() -> Outcome {
    check(
        field_from(&FIELDS).prop_flat_map(|f| (elem_of(f), elem_of(f), elem_of(f))),
        |(a, b, c)| {
            let f = a.field();
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + f.zero(), a);
            prop_assert_eq!(a * f.one(), a);
            prop_assert_eq!(a + (-a), f.zero());
            prop_assert_eq!(a - b + b, a);
            if !a.is_zero() {
                prop_assert!((a * a.inv().unwrap()).is_one());
                prop_assert_eq!(b * a / a, b);
            }
            Ok(())
        },
    )
}

pub fn nonzero_power_and_inverse() -> Outcome {
    check(field_from(&FIELDS).prop_flat_map(nonzero_of), |a| {
        let q = a.field().order();
        prop_assert!(a.pow(q - 1).is_one());
        prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
        Ok(())
    })
}

pub fn encoding_round_trips() -> Outcome {
    check(field_from(&FIELDS).prop_flat_map(elem_of), |a| {
        let f = a.field();
        prop_assert_eq!(f.element(a.to_int()).unwrap(), a);
        prop_assert_eq!(f.from_coeffs(&a.coeffs()).unwrap(), a);
        let json = serde_json::to_value(a).unwrap();
        prop_assert_eq!(f.element_from_json(&json).unwrap(), a);
        Ok(())
    })
}

pub fn divmod_reconstructs() -> Outcome {
    check(
        field_from(&FIELDS).prop_flat_map(|f| (poly_of(f, 9), poly_of(f, 6))),
        |(a, b)| {
            if b.is_zero() {
                prop_assert!(a.divmod(&b).is_err());
            } else {
                let (quo, rem) = a.divmod(&b).unwrap();
                prop_assert_eq!(&(&quo * &b) + &rem, a);
                prop_assert!(rem.degree() < b.degree());
            }
            Ok(())
        },
    )
}

pub fn interpolation_inverts_evaluation() -> Outcome {
    check(
        field_from(&FIELDS)
            .prop_flat_map(|f| points_of(f, 1, 9))
            .prop_flat_map(|pts| {
                let (f, n) = (pts[0].field(), pts.len());
                (Just(pts), poly_of(f, n))
            }),
        |(pts, p)| {
            let samples: Vec<_> = pts.iter().map(|&x| (x, p.eval(x))).collect();
            prop_assert_eq!(interpolate(&samples).unwrap(), p);
            Ok(())
        },
    )
}

pub fn vanishing_poly_zero_exactly_on_points() -> Outcome {
    check(
        field_from(&FIELDS).prop_flat_map(|f| points_of(f, 1, 10)),
        |pts| {
            let f = pts[0].field();
            let l = vanishing_poly(&pts).unwrap();
            prop_assert_eq!(l.degree(), Degree::Finite(pts.len()));
            for x in f.enumerate() {
                prop_assert_eq!(l.eval(x).is_zero(), pts.contains(&x));
            }
            Ok(())
        },
    )
}

pub fn euclid_rows_satisfy_bezout_and_degree_law() -> Outcome {
    check(univariate_pair(), |(a, v)| {
        let eea = eea_for(&a, &v).unwrap();
        let n = a.len();
        prop_assert!(eea.verify_bezout());
        let degrees = eea.remainder_degrees();
        prop_assert!(degrees.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(*degrees.last().unwrap(), 0);
        prop_assert!(!eea.final_constant.is_zero());
        for i in 1..eea.steps.len() {
            let f_deg = eea.steps[i].bezout_f.degree().finite().unwrap();
            let g_prev = eea.steps[i - 1].remainder.degree().finite().unwrap();
            prop_assert_eq!(f_deg + g_prev, n);
        }
        let last = eea.normalized_final();
        prop_assert!(last.remainder.is_constant() && last.remainder.coeff(0).is_one());
        Ok(())
    })
}

pub fn unit_scalars_give_derivative() -> Outcome {
    check(
        field_from(&FIELDS).prop_flat_map(|f| points_of(f, 1, 10)),
        |a| {
            let ones = vec![a[0].field().one(); a.len()];
            let h = associated_poly_univariate(&a, &ones).unwrap();
            prop_assert_eq!(h, vanishing_poly(&a).unwrap().formal_derivative());
            Ok(())
        },
    )
}

pub fn reduction_idempotent_and_evaluation_preserving() -> Outcome {
    check(
        grid().prop_flat_map(|set| {
            let (f, m) = (set.field(), set.nvars());
            let term = (nonzero_of(f), prop::collection::vec(0u32..6, m));
            (Just(set), prop::collection::vec(term, 0..6))
        }),
        |(set, terms)| {
            let m = set.nvars();
            let f = terms
                .iter()
                .fold(MPoly::zero(set.field(), m), |acc, (c, e)| {
                    &acc + &MPoly::term(*c, e.clone())
                });
            let r = reduce_mod_ideal(&f, &set);
            prop_assert_eq!(reduce_mod_ideal(&r, &set), r.clone());
            prop_assert_eq!(set.evaluate(&r).unwrap(), set.evaluate(&f).unwrap());
            for i in 0..m {
                prop_assert!(r.degree_in(i) < Degree::Finite(set.sizes()[i]));
            }
            prop_assert!(r.total_degree() <= f.total_degree());
            Ok(())
        },
    )
}

pub fn basis_size_matches_dimension_and_lattice() -> Outcome {
    check(grid(), |set| {
        let sizes = set.sizes();
        let sigma = set.max_reduced_degree();
        let n = set.len();
        for k in 0..=sigma + 2 {
            let b = monomial_basis(&set, k).len();
            prop_assert_eq!(b, dimension_for_sizes(&sizes, k));
            prop_assert_eq!(b, lattice_count(&sizes, k));
        }
        for k in 1..=sigma + 1 {
            let k_dual = sigma + 1 - k;
            prop_assert_eq!(
                monomial_basis(&set, k).len() + monomial_basis(&set, k_dual).len(),
                n
            );
        }
        Ok(())
    })
}

pub fn multivariate_interpolation_inverts_evaluation() -> Outcome {
    check(
        grid().prop_flat_map(|set| {
            let (f, n) = (set.field(), set.len());
            (Just(set), word_of(f, n))
        }),
        |(set, values)| {
            let f = interpolate_multivariate(&set, &values).unwrap();
            prop_assert_eq!(reduce_mod_ideal(&f, &set), f.clone());
            prop_assert_eq!(set.evaluate(&f).unwrap(), values);
            let g = interpolate_multivariate(&set, &set.evaluate(&f).unwrap()).unwrap();
            prop_assert_eq!(g, f);
            Ok(())
        },
    )
}

pub fn rank_invariant_under_transpose_and_row_ops() -> Outcome {
    check(
        field_from(&GRID_FIELDS)
            .prop_flat_map(|f| (Just(f), 1usize..6, 1usize..7))
            .prop_flat_map(|(f, r, cols)| (matrix_of(f, r, cols), 0..r, 0..r, nonzero_of(f))),
        |(m, i, j, c)| {
            let rank = m.rank();
            prop_assert_eq!(m.transpose().rank(), rank);
            let mut rows = m.row_vecs();
            if i != j {
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += c * y;
                }
                rows.swap(i, j);
            }
            for x in rows[i].iter_mut() {
                *x *= c;
            }
            let m2 = Matrix::from_rows(m.field(), m.cols(), rows).unwrap();
            prop_assert_eq!(m2.rank(), rank);
            prop_assert!(m2.same_row_space(&m));
            Ok(())
        },
    )
}

pub fn intersection_and_sum_dimensions() -> Outcome {
    check(
        field_from(&GRID_FIELDS)
            .prop_flat_map(|f| (Just(f), 0usize..5, 0usize..5, 1usize..7))
            .prop_flat_map(|(f, a, b, cols)| (matrix_of(f, a, cols), matrix_of(f, b, cols))),
        |(u, w)| {
            let cap = u.subspace_intersection(&w).unwrap();
            let sum = u.vstack(&w).unwrap().rank();
            prop_assert_eq!(cap.rank(), cap.rows());
            prop_assert_eq!(cap.rows() + sum, u.rank() + w.rank());
            for r in cap.row_vecs() {
                prop_assert!(u.row_space_contains(&r) && w.row_space_contains(&r));
            }
            Ok(())
        },
    )
}

pub fn nullspace_is_orthogonal_complement() -> Outcome {
    check(
        field_from(&GRID_FIELDS)
            .prop_flat_map(|f| (Just(f), 1usize..6, 1usize..8))
            .prop_flat_map(|(f, r, c)| matrix_of(f, r, c)),
        |m| {
            let ns = m.nullspace();
            prop_assert_eq!(ns.rows(), m.cols() - m.rank());
            prop_assert_eq!(ns.rank(), ns.rows());
            for x in ns.row_vecs() {
                for r in m.row_vecs() {
                    prop_assert!(dot(&x, &r).is_zero());
                }
            }
            Ok(())
        },
    )
}

pub fn generator_rank_matches_dimension_formula() -> Outcome {
    check(any_spec(), |spec| {
        let g = spec.generator_matrix();
        prop_assert_eq!(g.generator().rank(), spec.dimension_formula());
        prop_assert_eq!(g.dimension(), spec.dimension_formula());
        Ok(())
    })
}

pub fn dual_is_orthogonal_complement() -> Outcome {
    check(any_spec(), |spec| {
        let g = spec.generator_matrix();
        let n = spec.length();
        match spec.dual_spec() {
            DualSpec::Zero => {
                prop_assert!(spec.trivial_range());
                prop_assert_eq!(g.dimension(), n);
            }
            DualSpec::Code(d) => {
                let gd = d.generator_matrix();
                prop_assert!(g
                    .generator()
                    .mul(&gd.generator().transpose())
                    .unwrap()
                    .is_zero());
                prop_assert_eq!(g.dimension() + gd.dimension(), n);
                prop_assert!(gd.generator().same_row_space(&g.parity_matrix()));
                match d.dual_spec() {
                    DualSpec::Code(back) => {
                        prop_assert!(back
                            .generator_matrix()
                            .generator()
                            .same_row_space(g.generator()));
                    }
                    DualSpec::Zero => {
                        prop_assert!(false, "dual of a proper code is the full space")
                    }
                }
            }
        }
        Ok(())
    })
}

pub fn distance_formula_matches_enumeration() -> Outcome {
    check(spec_within(50_000), |spec| {
        let (d, _) = spec.min_distance_formula();
        let code = spec.generator_matrix();
        prop_assert_eq!(brute_force_min_distance(&code, 50_000).unwrap(), d);
        Ok(())
    })
}

pub fn singleton_bound_and_mds() -> Outcome {
    check(spec_within(50_000), |spec| {
        let (n, dim, d) = parameters(&spec);
        prop_assert!(d + dim <= n + 1);
        if spec.set().nvars() == 1 {
            prop_assert_eq!(d + dim, n + 1);
        }
        Ok(())
    })
}

pub fn monomial_equivalence_preserves_parameters() -> Outcome {
    check(
        spec_within(20_000).prop_flat_map(|spec| {
            let f = spec.field();
            let comps: Vec<_> = spec
                .set()
                .components()
                .iter()
                .map(|comp| Just(comp.clone()).prop_shuffle())
                .collect();
            (Just(spec), nonzero_of(f), comps)
        }),
        |(spec, c, shuffled)| {
            let scaled: Vec<FieldElement> = spec.scalars().iter().map(|&v| c * v).collect();
            let scaled_spec = CartesianSpec::new(spec.set().clone(), scaled, spec.k()).unwrap();
            let set2 = CartesianSet::new(shuffled).unwrap();
            let v2: Vec<FieldElement> = set2
                .points()
                .iter()
                .map(|p| spec.scalars()[spec.set().point_index(p).unwrap()])
                .collect();
            let permuted = CartesianSpec::new(set2, v2, spec.k()).unwrap();
            let base = parameters(&spec);
            prop_assert_eq!(parameters(&scaled_spec), base);
            prop_assert_eq!(parameters(&permuted), base);
            prop_assert_eq!(is_lcd_gram(&scaled_spec), is_lcd_gram(&spec));
            prop_assert_eq!(is_lcd_gram(&permuted), is_lcd_gram(&spec));
            Ok(())
        },
    )
}

pub fn univariate_verdicts_agree() -> Outcome {
    check(univariate_pair(), |(a, v)| {
        let n = a.len();
        let set = CartesianSet::univariate(a.clone()).unwrap();
        let admissible = lcd_admissible_set(&a, &v).unwrap();
        for k in 1..=n {
            let spec = CartesianSpec::new(set.clone(), v.clone(), k).unwrap();
            let eea = is_lcd_univariate(&spec).unwrap();
            let brute = is_lcd_bruteforce(&spec).unwrap();
            prop_assert_eq!(eea.is_lcd, brute.is_lcd, "k = {}", k);
            prop_assert_eq!(eea.is_lcd, is_lcd_gram(&spec));
            if k < n {
                prop_assert_eq!(admissible.contains(&(n - k)), eea.is_lcd);
            }
            if let Some(w) = eea.witness {
                let word = w.row(0).to_vec();
                prop_assert!(weight(&word) > 0);
                let code = spec.generator_matrix();
                prop_assert!(code.contains(&word));
                prop_assert!(code
                    .generator()
                    .row_vecs()
                    .iter()
                    .all(|r| dot(r, &word).is_zero()));
            }
        }
        Ok(())
    })
}

pub fn negated_scalars_keep_verdict() -> Outcome {
    check(univariate_pair(), |(a, v)| {
        let neg: Vec<FieldElement> = v.iter().map(|&x| -x).collect();
        prop_assert_eq!(
            associated_poly_univariate(&a, &v).unwrap(),
            associated_poly_univariate(&a, &neg).unwrap()
        );
        let set = CartesianSet::univariate(a.clone()).unwrap();
        for k in 1..a.len() {
            let s1 = CartesianSpec::new(set.clone(), v.clone(), k).unwrap();
            let s2 = CartesianSpec::new(set.clone(), neg.clone(), k).unwrap();
            prop_assert_eq!(
                is_lcd_univariate(&s1).unwrap().is_lcd,
                is_lcd_univariate(&s2).unwrap().is_lcd
            );
        }
        Ok(())
    })
}

pub fn admissible_set_shape_with_full_degree() -> Outcome {
    check(univariate_pair(), |(a, v)| {
        let n = a.len();
        let degrees = eea_for(&a, &v).unwrap().remainder_degrees();
        let set = lcd_admissible_set(&a, &v).unwrap();
        if degrees[0] == n - 1 {
            prop_assert!((degrees[0]..n).all(|r| set.contains(&r)));
            prop_assert!(degrees[1..].iter().all(|r| set.contains(r)));
        }
        Ok(())
    })
}

pub fn degree_drop_leaves_gap() -> Outcome {
    check(
        univariate_pair().prop_filter_map("no square root", |(a, mut v)| {
            let f = a[0].field();
            let n = v.len();
            let rest = v[..n - 1].iter().fold(f.zero(), |acc, &x| acc + x * x);
            let root = f.nonzero().find(|&x| x * x == -rest)?;
            v[n - 1] = root;
            Some((a, v))
        }),
        |(a, v)| {
            let n = a.len();
            let degrees = eea_for(&a, &v).unwrap().remainder_degrees();
            prop_assert!(degrees[0] < n - 1);
            let set = CartesianSet::univariate(a).unwrap();
            for r in degrees[0] + 1..n {
                let spec = CartesianSpec::new(set.clone(), v.clone(), n - r).unwrap();
                prop_assert!(!is_lcd_bruteforce(&spec).unwrap().is_lcd, "n - k = {}", r);
            }
            Ok(())
        },
    )
}

pub fn multivariate_gram_and_intersection_agree() -> Outcome {
    check(any_spec(), |spec| {
        let report = is_lcd_bruteforce(&spec).unwrap();
        let g = spec.generator_matrix();
        if let Some(hull) = report.witness {
            prop_assert!(hull.rows() > 0);
            for w in hull.row_vecs() {
                prop_assert!(g.contains(&w));
                prop_assert!(g
                    .generator()
                    .row_vecs()
                    .iter()
                    .all(|r| dot(r, &w).is_zero()));
            }
        }
        Ok(())
    })
}

pub fn hull_matches_polynomial_enumeration() -> Outcome {
    check(
        spec_within(2_500).prop_filter("tiny", |s| s.length() <= 9 && s.k() <= 3),
        |spec| {
            let set = spec.set();
            let field = spec.field();
            let q = field.order();
            let h = associated_poly_multivariate(set, spec.scalars()).unwrap();
            let h_vals = set.evaluate(&h).unwrap();
            let basis = monomial_basis(set, spec.k());
            let g_bound = (set.max_reduced_degree() + 1).checked_sub(spec.k());
            let m = set.nvars();
            let mut found = false;
            let total = enumeration_size(q, basis.len()) as u64;
            for code in 1..total {
                let mut c = code;
                let mut f = MPoly::zero(field, m);
                for e in &basis {
                    f = &f + &MPoly::term(field.element(c % q).unwrap(), e.clone());
                    c /= q;
                }
                let vals: Vec<FieldElement> = set
                    .evaluate(&f)
                    .unwrap()
                    .iter()
                    .zip(&h_vals)
                    .map(|(&x, &y)| x * y)
                    .collect();
                let g = interpolate_multivariate(set, &vals).unwrap();
                let fits = match (g.total_degree(), g_bound) {
                    (Degree::NegInfinity, _) => true,
                    (Degree::Finite(dg), Some(b)) => dg < b,
                    (Degree::Finite(_), None) => false,
                };
                if fits {
                    found = true;
                    break;
                }
            }
            prop_assert_eq!(found, !is_lcd_bruteforce(&spec).unwrap().is_lcd);
            Ok(())
        },
    )
}

pub fn product_theorems_sound() -> Outcome {
    check(
        field_from(&PRIME_GRID_FIELDS).prop_flat_map(|f| {
            let comp = points_of(f, 1, 3).prop_flat_map(move |p| {
                let n = p.len();
                (Just(p), prop::collection::vec(nonzero_of(f), n))
            });
            (prop::collection::vec(comp, 2), 1usize..=5)
        }),
        |(comps, k)| {
            let comps: Vec<Component> = comps
                .into_iter()
                .map(|(p, v)| Component::new(p, v).unwrap())
                .collect();
            let brute = is_lcd_bruteforce(&product_spec(&comps, k).unwrap())
                .unwrap()
                .is_lcd;
            if is_lcd_product_sufficient(&comps, k) == Verdict::Lcd {
                prop_assert!(brute);
            }
            prop_assert!(lcd_necessity_check(&comps, k, brute).is_ok());
            for t1 in 1..comps[0].len() {
                for t2 in 1..comps[1].len() {
                    if not_lcd_product(&comps, &[t1, t2]).unwrap() == Verdict::NotLcd {
                        let spec = product_spec(&comps, t1 + t2).unwrap();
                        prop_assert!(!is_lcd_bruteforce(&spec).unwrap().is_lcd);
                    }
                }
            }
            Ok(())
        },
    )
}

pub fn split_is_linear_and_recomposes() -> Outcome {
    check(lcd_spec_with_words(2), |(spec, z)| {
        let ctx = build_context(&spec).unwrap();
        let (x1, y1) = ctx.split(&z[0]).unwrap();
        let (x2, y2) = ctx.split(&z[1]).unwrap();
        let (x, y) = ctx.split(&add(&z[0], &z[1])).unwrap();
        prop_assert_eq!(x, add(&x1, &x2));
        prop_assert_eq!(y, add(&y1, &y2));
        let mut back = ctx.code().encode(&x1).unwrap();
        if ctx.parity().rows() > 0 {
            back = add(&back, &ctx.parity().left_mul_vec(&y1).unwrap());
        }
        prop_assert_eq!(back, z[0].clone());
        Ok(())
    })
}

pub fn detection_matches_membership() -> Outcome {
    check(lcd_spec_with_words(3), |(spec, w)| {
        let ctx = build_context(&spec).unwrap();
        let eps = &w[2];
        let in_code = ctx.code().contains(eps);
        prop_assert_eq!(ctx.detect_fault(&w[0], eps).unwrap(), !in_code);
        prop_assert_eq!(ctx.detect_fault(&w[1], eps).unwrap(), !in_code);
        let codeword = ctx.code().encode(&w[0][..ctx.code().dimension()]).unwrap();
        prop_assert!(!ctx.detect_fault(&w[1], &codeword).unwrap());
        Ok(())
    })
}

pub fn low_weight_faults_detected() -> Outcome {
    check(
        lcd_spec_with_words(1)
            .prop_filter("d > 1", |(spec, _)| spec.min_distance_formula().0 > 1)
            .prop_flat_map(|(spec, z)| {
                let (f, n) = (spec.field(), spec.length());
                let (d, _) = spec.min_distance_formula();
                let support = subsequence((0..n).collect::<Vec<_>>(), 1..d);
                (
                    Just(spec),
                    Just(z),
                    support,
                    prop::collection::vec(nonzero_of(f), n),
                )
            }),
        |(spec, z, pos, vals)| {
            let (d, _) = spec.min_distance_formula();
            let ctx = build_context(&spec).unwrap();
            let mut eps = vec![spec.field().zero(); spec.length()];
            for &i in &pos {
                eps[i] = vals[i];
            }
            prop_assert!(weight(&eps) < d);
            prop_assert!(ctx.detect_fault(&z[0], &eps).unwrap());
            Ok(())
        },
    )
}
