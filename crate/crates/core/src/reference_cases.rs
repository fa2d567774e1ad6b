//! The published worked examples as executable checks, each comparing an
//! expected value with the computed one.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::code::CartesianSpec;
use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use crate::lcd::{
    eea_for, is_lcd_bruteforce, is_lcd_product_sufficient, is_lcd_univariate, Component, Verdict,
};
use crate::matrix::Matrix;
use crate::mpoly::CartesianSet;

#[derive(Clone, Debug, Serialize)]
pub struct CaseCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub checks: Vec<CaseCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

struct Case {
    id: &'static str,
    title: &'static str,
    checks: Vec<CaseCheck>,
    note: Option<String>,
}

impl Case {
    fn new(id: &'static str, title: &'static str) -> Self {
        Case {
            id,
            title,
            checks: Vec::new(),
            note: None,
        }
    }

    fn check(&mut self, name: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        self.checks.push(CaseCheck {
            name: name.into(),
            pass: expected == computed,
            expected,
            computed,
        });
    }

    fn finish(self) -> CaseResult {
        CaseResult {
            id: self.id,
            title: self.title,
            pass: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
            note: self.note,
        }
    }
}

const EIGHT_POINTS: [i64; 8] = [0, 2, 3, 5, 6, 8, 10, 11];

fn elems(f: FieldSpec, v: &[i64]) -> Vec<FieldElement> {
    v.iter().map(|&x| f.from_integer(x)).collect()
}

fn verdict(lcd: bool) -> &'static str {
    if lcd {
        "LCD"
    } else {
        "not LCD"
    }
}

fn small_case(
    id: &'static str,
    title: &'static str,
    a: &[i64],
    v: &[i64],
    generator: &[&[i64]],
    gram: &[&[i64]],
    lcd: bool,
) -> Result<Case> {
    let f = FieldSpec::prime(7)?;
    let set = CartesianSet::univariate(elems(f, a))?;
    let spec = CartesianSpec::new(set, elems(f, v), 2)?;
    let g = spec.generator_matrix();
    let gg = g.generator().gram();
    let mut case = Case::new(id, title);
    case.check("generator", Matrix::from_ints(f, generator), g.generator());
    case.check("gram", Matrix::from_ints(f, gram), &gg);
    case.check("gram nonsingular", lcd, gg.is_nonsingular());
    case.check(
        "verdict (remainder degrees)",
        verdict(lcd),
        verdict(is_lcd_univariate(&spec)?.is_lcd),
    );
    case.check(
        "verdict (Gram and intersection)",
        verdict(lcd),
        verdict(is_lcd_bruteforce(&spec)?.is_lcd),
    );
    Ok(case)
}

fn eight_point_case(
    id: &'static str,
    title: &'static str,
    p: u64,
    degrees: &[usize],
    lcd_ks: &[usize],
) -> Result<Case> {
    let f = FieldSpec::prime(p)?;
    let a = elems(f, &EIGHT_POINTS);
    let ones = vec![f.one(); 8];
    let eea = eea_for(&a, &ones)?;
    let got: BTreeSet<usize> = eea.remainder_degrees().into_iter().collect();
    let want: BTreeSet<usize> = degrees.iter().copied().collect();
    let mut case = Case::new(id, title);
    case.check("remainder degrees", format!("{want:?}"), format!("{got:?}"));
    let set = CartesianSet::univariate(a)?;
    let mut by_eea = Vec::new();
    let mut by_gram = Vec::new();
    for k in 1..=8 {
        let spec = CartesianSpec::unit(set.clone(), k)?;
        if is_lcd_univariate(&spec)?.is_lcd {
            by_eea.push(k);
        }
        if is_lcd_bruteforce(&spec)?.is_lcd {
            by_gram.push(k);
        }
    }
    case.check(
        "LCD k (remainder degrees)",
        format!("{lcd_ks:?}"),
        format!("{by_eea:?}"),
    );
    case.check(
        "LCD k (Gram and intersection)",
        format!("{lcd_ks:?}"),
        format!("{by_gram:?}"),
    );
    Ok(case)
}

fn grid_case(id: &'static str, title: &'static str, p: u64, k_max: usize) -> Result<Case> {
    let f = FieldSpec::prime(p)?;
    let comp = Component::new(elems(f, &EIGHT_POINTS), vec![f.one(); 8])?;
    let comps = [comp.clone(), comp];
    let set = CartesianSet::new(vec![elems(f, &EIGHT_POINTS), elems(f, &EIGHT_POINTS)])?;
    let ks: Vec<usize> = (1..=k_max).collect();
    let mut fired = Vec::new();
    let mut brute = Vec::new();
    for &k in &ks {
        if is_lcd_product_sufficient(&comps, k) == Verdict::Lcd {
            fired.push(k);
        }
        if is_lcd_bruteforce(&CartesianSpec::unit(set.clone(), k)?)?.is_lcd {
            brute.push(k);
        }
    }
    let mut case = Case::new(id, title);
    case.check(
        "sufficient condition holds for k",
        format!("{ks:?}"),
        format!("{fired:?}"),
    );
    case.check(
        "LCD by Gram and intersection (m = 2) for k",
        format!("{ks:?}"),
        format!("{brute:?}"),
    );
    Ok(case)
}

/// Run every published example.
pub fn run_reference_cases() -> Result<Vec<CaseResult>> {
    let mut first = small_case(
        "gf7-a012-ones-k2",
        "GF(7), A = {0,1,2}, v = (1,1,1), k = 2: LCD",
        &[0, 1, 2],
        &[1, 1, 1],
        &[&[1, 1, 1], &[0, 1, 2]],
        &[&[3, 3], &[3, 5]],
        true,
    )?;
    let f7 = FieldSpec::prime(7)?;
    let printed = Matrix::from_ints(f7, &[&[3, 3], &[3, 0]]);
    first.check(
        "printed Gram [[3,3],[3,0]] nonsingular",
        true,
        printed.is_nonsingular(),
    );
    first.note = Some(
        "printed Gram matrix [[3,3],[3,0]], recomputed [[3,3],[3,5]], both nonsingular".to_string(),
    );
    let cases = vec![
        first,
        small_case(
            "gf7-a012-v112-k2",
            "GF(7), A = {0,1,2}, v = (1,1,2), k = 2: not LCD",
            &[0, 1, 2],
            &[1, 1, 2],
            &[&[1, 1, 2], &[0, 1, 4]],
            &[&[6, 2], &[2, 3]],
            false,
        )?,
        small_case(
            "gf7-a013-ones-k2",
            "GF(7), A = {0,1,3}, v = (1,1,1), k = 2: not LCD",
            &[0, 1, 3],
            &[1, 1, 1],
            &[&[1, 1, 1], &[0, 1, 3]],
            &[&[3, 4], &[4, 3]],
            false,
        )?,
        eight_point_case(
            "gf13-eight-point-grs",
            "GF(13), A = {0,2,3,5,6,8,10,11}, v = 1: LCD iff k in {1,2,3,4,5,8}",
            13,
            &[0, 3, 4, 5, 6, 7],
            &[1, 2, 3, 4, 5, 8],
        )?,
        eight_point_case(
            "gf17-eight-point-grs",
            "GF(17), same A, v = 1: LCD for every k",
            17,
            &[0, 1, 2, 3, 4, 5, 6, 7],
            &[1, 2, 3, 4, 5, 6, 7, 8],
        )?,
        grid_case(
            "gf13-eight-point-grid",
            "GF(13), A x A, v = 1: LCD for 1 <= k <= 5",
            13,
            5,
        )?,
        grid_case(
            "gf17-eight-point-grid",
            "GF(17), A x A, v = 1: LCD for 1 <= k <= 8",
            17,
            8,
        )?,
    ];
    Ok(cases.into_iter().map(Case::finish).collect())
}
