use serde::{Deserialize, Serialize};

use super::ProberError;
use crate::kripke::{check_condition, Frame1, Frame2, FrameCondition, Relation};

/// Conditions a component frame must meet when enumerating products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentConditions {
    pub first: Vec<FrameCondition>,
    pub second: Vec<FrameCondition>,
}

/// A frame class given by a conjunction of frame conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameClassSpec {
    pub conditions: Vec<FrameCondition>,
    pub product_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_conditions: Option<ComponentConditions>,
}

fn sorted(mut cs: Vec<FrameCondition>) -> Vec<FrameCondition> {
    cs.sort();
    cs.dedup();
    cs
}

impl FrameClassSpec {
    /// All 2-frames meeting every condition.
    pub fn general(conditions: Vec<FrameCondition>) -> Result<Self, ProberError> {
        let conditions = sorted(conditions);
        if conditions.is_empty() {
            return Err(ProberError::InvalidSpec("a frame class needs at least one condition".into()));
        }
        if let Some(c) = conditions.iter().find(|c| c.is_model_relative()) {
            return Err(ProberError::InvalidSpec(format!("`{c}` is model-relative and cannot define a frame class")));
        }
        Ok(FrameClassSpec { conditions, product_only: false, component_conditions: None })
    }

    /// Product frames. Conditions on a single relation constrain the matching
    /// component; the rest are checked on the product itself.
    pub fn products(conditions: Vec<FrameCondition>) -> Result<Self, ProberError> {
        let mut spec = Self::general(conditions)?;
        let pick = |axis| sorted(spec.conditions.iter().copied().filter(|c| c.only_axis() == Some(axis)).collect());
        let components = ComponentConditions { first: pick(0), second: pick(1) };
        spec.conditions.retain(|c| c.only_axis().is_none());
        spec.product_only = true;
        spec.component_conditions = Some(components);
        Ok(spec)
    }

    pub fn admits(&self, fr: &Frame2) -> bool {
        self.conditions.iter().all(|c| check_condition(fr, *c, None).expect("frame condition").holds())
    }

    /// Conditions on R0 alone, or on R1 alone, checked against a relation placed on that axis.
    pub fn admits_relation(&self, axis: usize, r: &Relation) -> bool {
        let empty = Relation::empty(r.len());
        let fr = if axis == 0 { Frame2 { r0: r.clone(), r1: empty } } else { Frame2 { r0: empty, r1: r.clone() } };
        let conds: &[FrameCondition] = match (&self.component_conditions, axis) {
            (Some(cc), 0) => &cc.first,
            (Some(cc), _) => &cc.second,
            (None, _) => &self.conditions,
        };
        conds
            .iter()
            .filter(|c| c.only_axis() == Some(axis))
            .all(|c| check_condition(&fr, *c, None).expect("frame condition").holds())
    }

    pub fn admits_component(&self, axis: usize, f: &Frame1) -> bool {
        self.admits_relation(axis, &f.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_model_relative() {
        assert!(FrameClassSpec::general(vec![]).is_err());
        assert!(FrameClassSpec::general(vec![FrameCondition::LcomM]).is_err());
    }

    #[test]
    fn product_spec_splits_unary_conditions() {
        let s = FrameClassSpec::products(vec![
            FrameCondition::Transitive0,
            FrameCondition::WeaklyConnected0,
            FrameCondition::OneStepRooted1,
            FrameCondition::Lcom,
        ])
        .unwrap();
        assert_eq!(s.conditions, vec![FrameCondition::Lcom]);
        let cc = s.component_conditions.unwrap();
        assert_eq!(cc.first, vec![FrameCondition::WeaklyConnected0, FrameCondition::Transitive0]);
        assert_eq!(cc.second, vec![FrameCondition::OneStepRooted1]);
    }
}
