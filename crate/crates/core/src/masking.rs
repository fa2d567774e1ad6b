//! Direct-sum masking with an LCD code `C` and its dual: every `z` splits
//! uniquely as `x' G + y H`, and a fault `e` goes unnoticed exactly when
//! `e ∈ C`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{CartesianSpec, CodeReport, DualSpec, LinearCode};
use crate::error::{domain, internal, Error, Result};
use crate::field::FieldElement;
use crate::lcd::decide_lcd;
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct MaskingContext {
    spec: CartesianSpec,
    code: LinearCode,
    parity: Matrix,
    g_t: Matrix,
    h_t: Matrix,
    gram_inv: Matrix,
    parity_gram_inv: Matrix,
}

/// Build the context; fails with [`Error::NotLcd`] when `C ∩ C^perp ≠ {0}`.
pub fn build_context(spec: &CartesianSpec) -> Result<MaskingContext> {
    let report = decide_lcd(spec)?;
    if !report.is_lcd {
        let witness = report
            .witness
            .map(|w| w.row(0).to_vec())
            .ok_or_else(|| internal("non-LCD verdict without witness"))?;
        return Err(Error::NotLcd { witness });
    }
    let code = spec.generator_matrix();
    let n = spec.length();
    let parity = match spec.dual_spec() {
        DualSpec::Zero => Matrix::from_rows(spec.field(), n, vec![])?,
        DualSpec::Code(d) => d.generator_matrix().generator().clone(),
    };
    if !parity.same_row_space(&code.parity_matrix()) {
        return Err(internal("closed-form dual differs from the kernel of G"));
    }
    let gram_inv = code.generator().gram().inverse()?;
    let parity_gram_inv = parity.gram().inverse()?;
    Ok(MaskingContext {
        spec: spec.clone(),
        g_t: code.generator().transpose(),
        h_t: parity.transpose(),
        code,
        parity,
        gram_inv,
        parity_gram_inv,
    })
}

impl MaskingContext {
    pub fn spec(&self) -> &CartesianSpec {
        &self.spec
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    /// `x' = z G^T (G G^T)^{-1}` and `y = z H^T (H H^T)^{-1}`, checked by
    /// recomposing `x' G + y H = z`.
    pub fn split(&self, z: &[FieldElement]) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let n = self.code.length();
        if z.len() != n {
            return Err(domain(format!(
                "word of length {} for a code of length {n}",
                z.len()
            )));
        }
        let x = self.gram_inv.left_mul_vec(&self.g_t.left_mul_vec(z)?)?;
        let y = if self.parity.rows() == 0 {
            Vec::new()
        } else {
            self.parity_gram_inv
                .left_mul_vec(&self.h_t.left_mul_vec(z)?)?
        };
        let mut back = self.code.generator().left_mul_vec(&x)?;
        if !y.is_empty() {
            for (b, p) in back.iter_mut().zip(self.parity.left_mul_vec(&y)?) {
                *b += p;
            }
        }
        if back != z {
            return Err(internal("x' G + y H does not recompose z"));
        }
        Ok((x, y))
    }

    /// Whether the dual part changes under the fault `epsilon`.
    pub fn detect_fault(&self, z: &[FieldElement], epsilon: &[FieldElement]) -> Result<bool> {
        if z.len() != epsilon.len() {
            return Err(domain("fault and word lengths differ"));
        }
        let faulty: Vec<FieldElement> = z.iter().zip(epsilon).map(|(&a, &b)| a + b).collect();
        let (_, y0) = self.split(z)?;
        let (_, y1) = self.split(&faulty)?;
        Ok(y0 != y1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialLog {
    pub z: Vec<FieldElement>,
    pub epsilon: Vec<FieldElement>,
    pub weight: usize,
    pub in_code: bool,
    pub detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaskingTranscript {
    pub code_params: CodeReport,
    pub seed: u64,
    /// `d - 1`.
    pub security_order: usize,
    pub trials: usize,
    pub faults_injected: usize,
    pub detected: usize,
    pub missed: usize,
    #[serde(rename = "all_missed_in_C")]
    pub all_missed_in_c: bool,
    pub log: Vec<TrialLog>,
}

/// Seeded demo: each trial masks a random `z` and injects a nonzero fault,
/// half of the time a random nonzero codeword and otherwise a uniform vector.
pub fn run_demo(spec: &CartesianSpec, seed: u64, trials: usize) -> Result<MaskingTranscript> {
    let ctx = build_context(spec)?;
    let field = spec.field();
    let q = field.order();
    let n = spec.length();
    let k = ctx.code.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_vec = |rng: &mut ChaCha8Rng, len: usize| -> Vec<FieldElement> {
        (0..len)
            .map(|_| field.element(rng.gen_range(0..q)).expect("in range"))
            .collect()
    };
    let mut log = Vec::with_capacity(trials);
    for _ in 0..trials {
        let z = random_vec(&mut rng, n);
        let epsilon = loop {
            let e = if rng.gen_bool(0.5) {
                ctx.code.encode(&random_vec(&mut rng, k))?
            } else {
                random_vec(&mut rng, n)
            };
            if e.iter().any(|x| !x.is_zero()) {
                break e;
            }
        };
        let detected = ctx.detect_fault(&z, &epsilon)?;
        log.push(TrialLog {
            weight: epsilon.iter().filter(|x| !x.is_zero()).count(),
            in_code: ctx.code.contains(&epsilon),
            z,
            epsilon,
            detected,
        });
    }
    let detected = log.iter().filter(|t| t.detected).count();
    let report = spec.report(None)?;
    Ok(MaskingTranscript {
        security_order: report.d_formula - 1,
        code_params: report,
        seed,
        trials,
        faults_injected: log.len(),
        detected,
        missed: log.len() - detected,
        all_missed_in_c: log.iter().filter(|t| !t.detected).all(|t| t.in_code),
        log,
    })
}
