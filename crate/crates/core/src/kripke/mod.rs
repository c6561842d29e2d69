//! Finite 2-frames, models and the checks run over them.

mod condition;
mod eval;
mod frame;
mod pmorphism;
mod relation;
mod validity;

pub use condition::{check_condition, tick_relation, FrameCondition, Verdict};
pub use eval::{eval_model, CompiledFormula};
pub use frame::{product_frame, set_to_vec, Frame1, Frame2, Model};
pub use pmorphism::{is_p_morphism, p_morphism_search, PMORPHISM_MAX_SOURCE};
pub use relation::{full_set, members, Relation, WorldSet, MAX_WORLDS};
pub use validity::{frame_validates, Validity, VALIDITY_MAX_VARS, VALIDITY_MAX_WORLDS};

#[derive(Debug, thiserror::Error)]
pub enum KripkeError {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("unknown frame condition `{0}`")]
    UnknownCondition(String),
    #[error("condition `{0}` needs a (model, root) context exactly when it is model-relative")]
    Context(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
