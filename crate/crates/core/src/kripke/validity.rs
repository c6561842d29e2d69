use std::collections::BTreeMap;

use super::eval::CompiledFormula;
use super::frame::{Frame2, Model};
use super::relation::{full_set, WorldSet};
use super::KripkeError;
use crate::formula::Formula;

pub const VALIDITY_MAX_VARS: usize = 3;
pub const VALIDITY_MAX_WORLDS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// A model on the frame and a world where the formula fails.
    Countermodel(Model, usize),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Sweeps every valuation of the variables occurring in `f`.
pub fn frame_validates(fr: &Frame2, f: &Formula) -> Result<Validity, KripkeError> {
    let compiled = CompiledFormula::new(f);
    let vars = compiled.variables().len();
    let n = fr.world_count();
    if vars > VALIDITY_MAX_VARS || n > VALIDITY_MAX_WORLDS {
        return Err(KripkeError::SizeBound(format!(
            "validity sweep needs at most {VALIDITY_MAX_VARS} variables and {VALIDITY_MAX_WORLDS} worlds, got {vars} and {n}"
        )));
    }
    let all = full_set(n);
    let mut values: Vec<WorldSet> = vec![0; vars];
    let mut scratch = Vec::new();
    for code in 0u64..1 << (n * vars) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = code >> (i * n) & all;
        }
        let truth = compiled.eval(fr, &values, &mut scratch);
        if truth != all {
            let world = (!truth & all).trailing_zeros() as usize;
            let valuation: BTreeMap<String, WorldSet> =
                compiled.variables().iter().cloned().zip(values.iter().copied()).collect();
            return Ok(Validity::Countermodel(Model::new(fr.clone(), valuation)?, world));
        }
    }
    Ok(Validity::Valid)
}
