//! Exact evaluation over infinite product frames whose components are `omega`-like orders.

mod builtin;
mod family;
mod json;
mod natset;
mod preimage;
mod region;
mod symbolic;
mod truncation;

pub use builtin::{builtin, builtin_witness, Builtin, BUILTIN_NAMES};
pub use family::{Family, FirstFamily, KVal, MVal, Point, SecondFamily};
pub use json::{region_from_json, region_to_json};
pub use natset::{NatSet, Parity};
pub use preimage::{box_preimage, preimage, successors};
pub use region::{Cell, CombineOp, Diag, KPart, MPart, Region};
pub use symbolic::{
    certificate, eval_symbolic, evaluate, Certificate, CertificateEntry, Evaluation, ModalLink, SymbolicModel,
    CERTIFICATE_WINDOW,
};
pub use truncation::{crosscheck, truncation_eval, CrosscheckReport, Disagreement, Truth3, TruncationMap};

#[derive(Debug, thiserror::Error)]
pub enum OmegaError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown witness model `{0}`")]
    UnknownWitness(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
