use std::time::Instant;

use rand::Rng;

use crate::formula::{corpus, parse, random_formula};
use crate::kripke::{
    check_condition, frame_validates, p_morphism_search, product_frame, Frame1, Frame2, FrameCondition as C, Relation,
};
use crate::omega::{crosscheck, eval_symbolic, builtin, BUILTIN_NAMES};
use crate::prober::{
    claim_test, extract_chain, random_relation, stream_rng, unsat_campaign, CampaignOptions, ChainKind,
    FrameClassSpec, SymbolicChain, CLAIMS,
};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub criterion: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

/// Seed shared by every randomized acceptance check.
pub const VERIFY_SEED: u64 = 20_240_601;

fn campaign(name: &str, conds: Vec<C>, products: bool, opts: CampaignOptions) -> Result<(bool, String), String> {
    let f = corpus(name).ok_or("corpus")?;
    let spec = if products { FrameClassSpec::products(conds) } else { FrameClassSpec::general(conds) }
        .map_err(|e| e.to_string())?;
    let r = unsat_campaign(name, &f, &spec, &opts).map_err(|e| e.to_string())?;
    Ok((r.ok, format!("{} in-class frames, {} satisfiable", r.frames_in_class_total, r.satisfiable_total)))
}

fn no_small_models(name: &str, conds: Vec<C>) -> Result<(bool, String), String> {
    campaign(name, conds, false, CampaignOptions::exhaustive(3))
}

fn c1(jobs: Option<usize>) -> Result<(bool, String), String> {
    let conds = vec![C::WeaklyConnected0, C::Lcom, C::Rcom, C::Conf];
    let (ok_e, d_e) = campaign("phi_inf", conds.clone(), false, CampaignOptions { jobs, ..CampaignOptions::exhaustive(3) })?;
    let f = corpus("phi_inf").ok_or("corpus")?;
    let spec = FrameClassSpec::general(conds).map_err(|e| e.to_string())?;
    let mut opts = CampaignOptions::random(4, 5, VERIFY_SEED, 500_000);
    opts.jobs = jobs;
    let r = unsat_campaign("phi_inf", &f, &spec, &opts).map_err(|e| e.to_string())?;
    let enough = r.frames_in_class_total >= 1_000_000;
    Ok((
        ok_e && r.ok && enough,
        format!("exhaustive 1-3: {d_e}; random 4-5: {} samples, {} satisfiable", r.frames_in_class_total, r.satisfiable_total),
    ))
}

fn c4() -> Result<(bool, String), String> {
    let mut good = 0;
    for name in BUILTIN_NAMES {
        let b = builtin(name).ok_or("builtin")?;
        let (region, _) = eval_symbolic(&b.model, &corpus(b.formula).ok_or("corpus")?).map_err(|e| e.to_string())?;
        if region.contains(b.target) {
            good += 1;
        }
    }
    Ok((good == BUILTIN_NAMES.len(), format!("{good}/{} targets inside their regions, certificates verified", BUILTIN_NAMES.len())))
}

fn c5() -> Result<(bool, String), String> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, kind) in [("lemma_satone", ChainKind::Phi), ("lemma_sattwo", ChainKind::Psi)] {
        let b = builtin(name).ok_or("builtin")?;
        let start = Instant::now();
        let w = extract_chain(&mut SymbolicChain::new(b.model), b.target, kind, 25).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ok &= w.steps.len() == 25 && w.all_checks && w.pairwise_distinct && secs < 60.0;
        parts.push(format!("{name}: {} steps", w.steps.len()));
    }
    Ok((ok, parts.join(", ")))
}

fn c6(jobs: Option<usize>) -> Result<(bool, String), String> {
    let reports: Vec<_> = CLAIMS.iter().map(|c| claim_test(*c, 10_000, VERIFY_SEED, jobs)).collect();
    let violations: u64 = reports.iter().map(|r| r.violations).sum();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    Ok((violations == 0, format!("{checked} samples checked, {violations} violations")))
}

fn c7() -> Result<(bool, String), String> {
    let mut total = 0;
    for name in BUILTIN_NAMES {
        let b = builtin(name).ok_or("builtin")?;
        total += crosscheck(&b.model, &corpus(b.formula).ok_or("corpus")?, 30).disagreements.len();
    }
    Ok((total == 0, format!("{total} disagreements at window 30")))
}

fn c8() -> Result<(bool, String), String> {
    let mut rng = stream_rng(VERIFY_SEED, 8);
    let mut structural = 0;
    for _ in 0..10_000 {
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let fr = product_frame(&Frame1::new(random_relation(&mut rng, a)), &Frame1::new(random_relation(&mut rng, b)))
            .map_err(|e| e.to_string())?;
        if [C::Lcom, C::Rcom, C::Conf].iter().all(|c| check_condition(&fr, *c, None).map(|v| v.holds()).unwrap_or(false)) {
            structural += 1;
        }
    }
    let axioms: Vec<_> = ["commut0", "commut1", "commut2"].iter().map(|n| corpus(n).expect("corpus")).collect();
    let mut valid = 0;
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let fr = product_frame(&Frame1::new(random_relation(&mut rng, a)), &Frame1::new(random_relation(&mut rng, b)))
            .map_err(|e| e.to_string())?;
        if axioms.iter().all(|f| frame_validates(&fr, f).map(|v| v.is_valid()).unwrap_or(false)) {
            valid += 1;
        }
    }
    Ok((structural == 10_000 && valid == 100, format!("{structural}/10000 structural, {valid}/100 validate the axioms")))
}

fn c9(jobs: Option<usize>) -> Result<(bool, String), String> {
    let opts = CampaignOptions { jobs, ..CampaignOptions::exhaustive(3) };
    let (a, da) = campaign("fasc", vec![C::Transitive0], true, opts.clone())?;
    let (b, db) = campaign("fdesc", vec![C::Transitive0, C::WeaklyConnected0], true, opts)?;
    Ok((a && b, format!("fasc: {da}; fdesc: {db}")))
}

/// The two-point frame: R0 the order `x <= y`, R1 universal.
pub fn two_point_target() -> Frame2 {
    Frame2::new(Relation::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).expect("pairs"), Relation::full(2)).expect("frame")
}

fn c10() -> Result<(bool, String), String> {
    let target = two_point_target();
    let mut searched = 0u64;
    let mut found = 0u64;
    for a in 1..=3 {
        for b in 1..=3 {
            for c0 in 0..1u64 << (a * a) {
                let f0 = Frame1::new(Relation::from_code(a, c0));
                for c1 in 0..1u64 << (b * b) {
                    let fr = product_frame(&f0, &Frame1::new(Relation::from_code(b, c1))).map_err(|e| e.to_string())?;
                    searched += 1;
                    if p_morphism_search(&fr, &target).map_err(|e| e.to_string())?.is_some() {
                        found += 1;
                    }
                }
            }
        }
    }
    Ok((found == 0, format!("{searched} products searched, {found} onto the two-point frame")))
}

fn c11() -> Result<(bool, String), String> {
    let mut rng = stream_rng(VERIFY_SEED, 11);
    let mut same = 0;
    for _ in 0..10_000 {
        let f = random_formula(&mut rng, 6, &["p", "q", "t", "r1"]);
        if parse(&f.to_string()).ok().as_ref() == Some(&f) {
            same += 1;
        }
    }
    Ok((same == 10_000, format!("{same}/10000 round-trips")))
}

/// Runs the eleven acceptance checks in order.
pub fn verify_all(jobs: Option<usize>) -> Vec<CriterionResult> {
    let checks: Vec<(&'static str, Box<dyn Fn() -> Result<(bool, String), String>>)> = vec![
        ("phi_inf has no finite models in the weakly connected commuting class", Box::new(move || c1(jobs))),
        (
            "phi_inf_bullet has no finite models in the transitive class",
            Box::new(|| no_small_models("phi_inf_bullet", vec![C::Transitive0, C::WeaklyConnected0, C::Lcom, C::Rcom, C::Conf])),
        ),
        (
            "psi_inf has no finite models in the pseudo-transitive class",
            Box::new(|| no_small_models("psi_inf", vec![C::WeaklyConnected0, C::PseudoTransitive1, C::Lcom])),
        ),
        ("witness models satisfy their formulas", Box::new(c4)),
        ("chain extraction yields 25 distinct points", Box::new(c5)),
        ("claims hold on random models", Box::new(move || c6(jobs))),
        ("exact and window evaluation agree", Box::new(c7)),
        ("products commute and validate the product axioms", Box::new(c8)),
        ("chain-forcing formulas have no finite product models", Box::new(move || c9(jobs))),
        ("no finite product maps onto the two-point frame", Box::new(c10)),
        ("formulas survive render and parse", Box::new(c11)),
    ];
    checks
        .into_iter()
        .enumerate()
        .map(|(i, (title, run))| {
            let start = Instant::now();
            let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
            CriterionResult { criterion: i + 1, title, pass, detail, elapsed_ms: start.elapsed().as_millis() as u64 }
        })
        .collect()
}
