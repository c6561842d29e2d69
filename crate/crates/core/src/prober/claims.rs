use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{random_relation, repair_frame};
use super::{stream_rng, thread_pool, ProberError};
use crate::formula::tick::{tick_diamond, TICK_VAR};
use crate::formula::{corpus, random_formula};
use crate::kripke::{
    check_condition, eval_model, full_set, members, tick_relation, Frame2, FrameCondition, Model, Relation, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Trans,
    Wcon,
    CommL,
    CommR,
    CommC,
    DiaSemantics,
}

pub const CLAIMS: [Claim; 6] = [Claim::Trans, Claim::Wcon, Claim::CommL, Claim::CommR, Claim::CommC, Claim::DiaSemantics];

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Trans => "trans",
            Claim::Wcon => "wcon",
            Claim::CommL => "comm_l",
            Claim::CommR => "comm_r",
            Claim::CommC => "comm_c",
            Claim::DiaSemantics => "dia_semantics",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = ProberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CLAIMS
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ProberError::InvalidSpec(format!("unknown claim `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub sample: u64,
    pub model: serde_json::Value,
    pub root: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub samples: u64,
    pub seed: u64,
    pub checked: u64,
    pub discarded: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Violation>,
    pub ok: bool,
}

const ATTEMPTS: usize = 16;

enum Outcome {
    Pass,
    Discard,
    Fail(Model, usize, String),
}

fn model(fr: Frame2, vals: &[(&str, u64)]) -> Model {
    let valuation: BTreeMap<String, u64> = vals.iter().map(|(k, v)| (k.to_string(), *v)).filter(|(_, v)| *v != 0).collect();
    Model::new(fr, valuation).expect("valuation within frame")
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    rng.gen::<u64>() & full_set(n)
}

/// Frame whose first relation is transitive (and weakly connected when asked),
/// second relation repaired towards `extra`.
fn hypothesis_frame(rng: &mut ChaCha8Rng, n: usize, wcon: bool, extra: Option<FrameCondition>) -> Option<Frame2> {
    let mut fr = Frame2 { r0: random_relation(rng, n).transitive_closure(), r1: random_relation(rng, n) };
    let mut conds = vec![FrameCondition::Transitive0];
    if wcon {
        conds.push(FrameCondition::WeaklyConnected0);
    }
    conds.extend(extra);
    repair_frame(rng, &mut fr, &conds).then_some(fr)
}

/// Grows `t` until the tick guard holds at `root`: any scoped world that has `t`
/// or sees it along R1 gets `t` together with all its R1-successors.
fn force_tick_guard(fr: &Frame2, root: usize, mut t: u64) -> u64 {
    let scope = fr.r0.row(root) | 1 << root;
    loop {
        let before = t;
        for x in members(scope) {
            let r1 = fr.r1.row(x);
            if t >> x & 1 == 1 || r1 & t != 0 {
                t |= 1 << x | r1;
            }
        }
        if t == before {
            return t;
        }
    }
}

fn check_trans(m: &Model) -> Option<String> {
    let bar = tick_relation(m);
    let r0 = &m.frame.r0;
    let as_frame = Frame2 { r0: bar.clone(), r1: Relation::empty(bar.len()) };
    if let Verdict::Violated(w) = check_condition(&as_frame, FrameCondition::Transitive0, None).ok()? {
        return Some(format!("tick relation not transitive at {w:?}"));
    }
    if !bar.is_subset(r0) {
        return Some("tick relation not contained in R0".into());
    }
    if !r0.compose(&bar).is_subset(&bar) {
        return Some("R0 followed by the tick relation escapes it".into());
    }
    if !bar.compose(r0).is_subset(&bar) {
        return Some("tick relation followed by R0 escapes it".into());
    }
    None
}

fn one_sample(claim: Claim, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=6);
    match claim {
        Claim::Trans | Claim::Wcon => {
            let Some(fr) = hypothesis_frame(rng, n, claim == Claim::Wcon, None) else { return Outcome::Discard };
            let t = random_set(rng, n);
            let m = model(fr, &[(TICK_VAR, t)]);
            let problem = if claim == Claim::Trans {
                check_trans(&m)
            } else {
                match check_condition(&m.frame, FrameCondition::WconMinusM, Some((&m, 0))).expect("context") {
                    Verdict::Satisfied => None,
                    Verdict::Violated(w) => Some(format!("wcon- fails for the tick relation at {w:?}")),
                }
            };
            match problem {
                None => Outcome::Pass,
                Some(d) => Outcome::Fail(m, 0, d),
            }
        }
        Claim::CommL | Claim::CommR | Claim::CommC => {
            let (frame_cond, model_cond) = match claim {
                Claim::CommL => (FrameCondition::Lcom, FrameCondition::LcomM),
                Claim::CommR => (FrameCondition::Rcom, FrameCondition::RcomM),
                _ => (FrameCondition::Conf, FrameCondition::ConfM),
            };
            let Some(fr) = hypothesis_frame(rng, n, false, Some(frame_cond)) else { return Outcome::Discard };
            let root = rng.gen_range(0..n);
            let t = force_tick_guard(&fr, root, random_set(rng, n));
            let m = model(fr, &[(TICK_VAR, t)]);
            if eval_model(&m, &corpus("tick_guard").expect("corpus")) >> root & 1 == 0 {
                return Outcome::Discard;
            }
            match check_condition(&m.frame, model_cond, Some((&m, root))).expect("context") {
                Verdict::Satisfied => Outcome::Pass,
                Verdict::Violated(w) => Outcome::Fail(m, root, format!("{model_cond} fails at {w:?}")),
            }
        }
        Claim::DiaSemantics => {
            let fr = Frame2 { r0: random_relation(rng, n), r1: random_relation(rng, n) };
            let vals = [("p", random_set(rng, n)), ("q", random_set(rng, n)), (TICK_VAR, random_set(rng, n))];
            let m = model(fr, &vals);
            let psi = random_formula(rng, 2, &["p", "q", TICK_VAR]);
            let lhs = eval_model(&m, &tick_diamond(psi.clone()));
            let rhs = tick_relation(&m).preimage(eval_model(&m, &psi));
            if lhs == rhs {
                Outcome::Pass
            } else {
                Outcome::Fail(m, (lhs ^ rhs).trailing_zeros() as usize, format!("tick diamond of {psi} disagrees"))
            }
        }
    }
}

/// Samples models meeting a claim's hypotheses and checks its conclusion.
/// Sample `i` draws from its own generator stream.
pub fn claim_test(claim: Claim, samples: u64, seed: u64, jobs: Option<usize>) -> ClaimReport {
    let tag = CLAIMS.iter().position(|c| *c == claim).expect("listed") as u64;
    let outcomes: Vec<(u64, Outcome)> = thread_pool(jobs).install(|| {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, tag << 48 | i);
                for _ in 0..ATTEMPTS {
                    match one_sample(claim, &mut rng) {
                        Outcome::Discard => continue,
                        o => return (i, o),
                    }
                }
                (i, Outcome::Discard)
            })
            .collect()
    });
    let mut report = ClaimReport {
        claim,
        samples,
        seed,
        checked: 0,
        discarded: 0,
        violations: 0,
        first_violation: None,
        ok: true,
    };
    for (i, o) in outcomes {
        match o {
            Outcome::Pass => report.checked += 1,
            Outcome::Discard => report.discarded += 1,
            Outcome::Fail(m, root, detail) => {
                report.checked += 1;
                report.violations += 1;
                report.first_violation.get_or_insert(Violation { sample: i, model: m.to_json_value(), root, detail });
            }
        }
    }
    report.ok = report.violations == 0;
    report
}
