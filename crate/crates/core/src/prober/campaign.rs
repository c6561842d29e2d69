use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{component_relations, raw_frame_count, Canonizer, EXHAUSTIVE_MAX};
use super::sample::{sample_frame, sample_product};
use super::spec::FrameClassSpec;
use super::{stream_rng, thread_pool, ProberError};
use crate::formula::Formula;
use crate::kripke::{eval_model, full_set, product_frame, CompiledFormula, Frame1, Frame2, Model, WorldSet};

/// Largest `worlds * variables` for a valuation sweep.
pub const SATISFIABLE_MAX_BITS: usize = 20;

/// Accepted random samples handled by one work unit.
const CHUNK: u64 = 4096;

/// Sweeps every valuation of the formula's variables over `fr`. Returns the
/// first satisfying model (valuation codes in increasing order) and its least world.
pub fn frame_satisfiable(fr: &Frame2, f: &Formula) -> Result<Option<(Model, usize)>, ProberError> {
    let cf = CompiledFormula::new(f);
    check_bits(fr.world_count(), cf.variables().len())?;
    Ok(sweep(fr, &cf, &mut Vec::new()).map(|(vals, w)| (to_model(fr, &cf, &vals), w)))
}

fn check_bits(worlds: usize, vars: usize) -> Result<(), ProberError> {
    if worlds * vars > SATISFIABLE_MAX_BITS {
        return Err(ProberError::SizeBound(format!(
            "{worlds} worlds x {vars} variables exceeds {SATISFIABLE_MAX_BITS} valuation bits"
        )));
    }
    Ok(())
}

fn sweep(fr: &Frame2, cf: &CompiledFormula, scratch: &mut Vec<WorldSet>) -> Option<(Vec<WorldSet>, usize)> {
    let n = fr.world_count();
    let k = cf.variables().len();
    let mut vals = vec![0; k];
    for code in 0u64..1 << (n * k) {
        for (i, v) in vals.iter_mut().enumerate() {
            *v = (code >> (i * n)) & full_set(n);
        }
        let truth = cf.eval(fr, &vals, scratch);
        if truth != 0 {
            return Some((vals, truth.trailing_zeros() as usize));
        }
    }
    None
}

fn to_model(fr: &Frame2, cf: &CompiledFormula, vals: &[WorldSet]) -> Model {
    let valuation: BTreeMap<String, WorldSet> =
        cf.variables().iter().cloned().zip(vals.iter().copied()).filter(|(_, s)| *s != 0).collect();
    Model::new(fr.clone(), valuation).expect("valuation within frame")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignMode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub min_size: usize,
    pub max_size: usize,
    pub mode: CampaignMode,
    pub canonical_only: bool,
    pub jobs: Option<usize>,
    pub timing: bool,
}

impl CampaignOptions {
    pub fn exhaustive(max_size: usize) -> Self {
        CampaignOptions {
            min_size: 1,
            max_size,
            mode: CampaignMode::Exhaustive,
            canonical_only: false,
            jobs: None,
            timing: false,
        }
    }

    pub fn random(min_size: usize, max_size: usize, seed: u64, samples: u64) -> Self {
        CampaignOptions { min_size, max_size, mode: CampaignMode::Random { seed, samples }, ..Self::exhaustive(max_size) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub model: serde_json::Value,
    pub world: usize,
    pub reverified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeRecord {
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<[usize; 2]>,
    pub frames_enumerated: u64,
    pub frames_in_class: u64,
    pub satisfiable_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub formula: String,
    pub class: FrameClassSpec,
    pub mode: &'static str,
    pub canonical_only: bool,
    pub min_size: usize,
    pub max_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub records: Vec<SizeRecord>,
    pub frames_in_class_total: u64,
    pub satisfiable_total: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Default)]
struct Tally {
    enumerated: u64,
    in_class: u64,
    satisfiable: u64,
    first: Option<(Model, usize)>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.enumerated += o.enumerated;
        self.in_class += o.in_class;
        self.satisfiable += o.satisfiable;
        if self.first.is_none() {
            self.first = o.first;
        }
        self
    }

    fn visit(&mut self, fr: &Frame2, cf: &CompiledFormula, scratch: &mut Vec<WorldSet>) {
        self.in_class += 1;
        if let Some((vals, w)) = sweep(fr, cf, scratch) {
            self.satisfiable += 1;
            if self.first.is_none() {
                self.first = Some((to_model(fr, cf, &vals), w));
            }
        }
    }

    fn into_record(self, f: &Formula, size: usize, components: Option<[usize; 2]>) -> SizeRecord {
        let counterexample = self.first.map(|(m, w)| {
            let reverified = eval_model(&m, f) >> w & 1 == 1;
            assert!(reverified, "satisfying model failed re-evaluation");
            Counterexample { model: m.to_json_value(), world: w, reverified }
        });
        SizeRecord {
            size,
            components,
            frames_enumerated: self.enumerated,
            frames_in_class: self.in_class,
            satisfiable_count: self.satisfiable,
            counterexample,
        }
    }
}

/// Looks for models of `f` on in-class frames of each size; a clean report has none.
pub fn unsat_campaign(
    name: &str,
    f: &Formula,
    spec: &FrameClassSpec,
    opts: &CampaignOptions,
) -> Result<CampaignReport, ProberError> {
    let start = Instant::now();
    let cf = CompiledFormula::new(f);
    let vars = cf.variables().len();
    if opts.min_size == 0 || opts.min_size > opts.max_size {
        return Err(ProberError::SizeBound(format!("empty size range {}..={}", opts.min_size, opts.max_size)));
    }
    let largest = if spec.product_only { opts.max_size * opts.max_size } else { opts.max_size };
    check_bits(largest, vars)?;
    if opts.mode == CampaignMode::Exhaustive {
        let limit = match (spec.product_only, opts.canonical_only) {
            (true, _) => EXHAUSTIVE_MAX,
            (false, true) => 5,
            (false, false) => 4,
        };
        if opts.max_size > limit {
            return Err(ProberError::SizeBound(format!(
                "exhaustive search is limited to size {limit} for this class, got {}",
                opts.max_size
            )));
        }
    }
    if spec.product_only && opts.canonical_only {
        return Err(ProberError::InvalidSpec("isomorphism pruning applies to general frames only".into()));
    }
    let pool = thread_pool(opts.jobs);
    let mut records = Vec::new();
    let sizes = opts.min_size..=opts.max_size;
    if spec.product_only {
        for a in sizes.clone() {
            for b in sizes.clone() {
                let t = pool.install(|| match opts.mode {
                    CampaignMode::Exhaustive => exhaustive_products(a, b, spec, &cf),
                    CampaignMode::Random { seed, samples } => {
                        random_run(seed, samples, (a * 16 + b) as u64, &cf, |rng| {
                            sample_product(rng, a, b, spec).map(|(_, _, fr)| fr)
                        })
                    }
                });
                records.push(t.into_record(f, a * b, Some([a, b])));
            }
        }
    } else {
        for n in sizes {
            let t = pool.install(|| match opts.mode {
                CampaignMode::Exhaustive => exhaustive_general(n, spec, opts.canonical_only, &cf),
                CampaignMode::Random { seed, samples } => {
                    random_run(seed, samples, n as u64, &cf, |rng| sample_frame(rng, n, spec))
                }
            });
            records.push(t.into_record(f, n, None));
        }
    }
    let satisfiable_total = records.iter().map(|r| r.satisfiable_count).sum();
    let (seed, samples) = match opts.mode {
        CampaignMode::Exhaustive => (None, None),
        CampaignMode::Random { seed, samples } => (Some(seed), Some(samples)),
    };
    Ok(CampaignReport {
        formula: name.to_string(),
        class: spec.clone(),
        mode: if seed.is_some() { "random" } else { "exhaustive" },
        canonical_only: opts.canonical_only,
        min_size: opts.min_size,
        max_size: opts.max_size,
        seed,
        samples,
        frames_in_class_total: records.iter().map(|r| r.frames_in_class).sum(),
        records,
        satisfiable_total,
        ok: satisfiable_total == 0,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn exhaustive_general(n: usize, spec: &FrameClassSpec, canonical_only: bool, cf: &CompiledFormula) -> Tally {
    let r0s = component_relations(n, spec, 0);
    let r1s = component_relations(n, spec, 1);
    let canon = Canonizer::new(n);
    let mut t = r0s
        .par_iter()
        .map(|r0| {
            let mut t = Tally::default();
            let mut scratch = Vec::new();
            for r1 in &r1s {
                let fr = Frame2 { r0: r0.clone(), r1: r1.clone() };
                if spec.admits(&fr) && (!canonical_only || canon.is_canonical(&fr)) {
                    t.visit(&fr, cf, &mut scratch);
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    t.enumerated = raw_frame_count(n) as u64;
    t
}

fn exhaustive_products(a: usize, b: usize, spec: &FrameClassSpec, cf: &CompiledFormula) -> Tally {
    let c0 = component_relations(a, spec, 0);
    let c1 = component_relations(b, spec, 1);
    let mut t = c0
        .par_iter()
        .map(|r0| {
            let mut t = Tally::default();
            let mut scratch = Vec::new();
            let f0 = Frame1::new(r0.clone());
            for r1 in &c1 {
                let fr = product_frame(&f0, &Frame1::new(r1.clone())).expect("small product");
                if spec.admits(&fr) {
                    t.visit(&fr, cf, &mut scratch);
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    t.enumerated = 1u64 << (a * a + b * b);
    t
}

/// Draws `samples` accepted frames in fixed-size chunks, each with its own
/// generator stream, so the outcome is the same for any number of workers.
fn random_run<F>(seed: u64, samples: u64, key: u64, cf: &CompiledFormula, draw: F) -> Tally
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Option<Frame2> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let want = CHUNK.min(samples - c * CHUNK);
            let mut rng = stream_rng(seed, key << 32 | c);
            let mut t = Tally::default();
            let mut scratch = Vec::new();
            while t.in_class < want && t.enumerated < want * 64 {
                t.enumerated += 1;
                if let Some(fr) = draw(&mut rng) {
                    t.visit(&fr, cf, &mut scratch);
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}
