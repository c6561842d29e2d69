//! Search over finite frames and models, claim campaigns and chain extraction.

mod campaign;
mod chain;
mod claims;
mod enumerate;
mod sample;
mod spec;

pub use campaign::{
    frame_satisfiable, unsat_campaign, CampaignMode, CampaignOptions, CampaignReport, Counterexample, SizeRecord,
    SATISFIABLE_MAX_BITS,
};
pub use chain::{extract_chain, ChainKind, ChainModel, ChainStep, ChainWitness, FiniteChain, SymbolicChain};
pub use claims::{claim_test, Claim, ClaimReport, CLAIMS};
pub use enumerate::{component_relations, enumerate_frames, raw_frame_count, Canonizer, EXHAUSTIVE_MAX};
pub use sample::{random_relation, repair_frame, sample_frame, sample_product};
pub use spec::{ComponentConditions, FrameClassSpec};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum ProberError {
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("invalid frame class: {0}")]
    InvalidSpec(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction stuck at step {step}: no {missing}")]
    ConstructionStuck { step: usize, missing: String },
    #[error(transparent)]
    Kripke(#[from] crate::kripke::KripkeError),
    #[error(transparent)]
    Omega(#[from] crate::omega::OmegaError),
}

/// The generator behind every randomized run: ChaCha8 keyed by the user seed,
/// with a separate stream per work unit so results do not depend on thread count.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn thread_pool(jobs: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().expect("thread pool")
}
