mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{condition, holds, matrix, naive_frame, product, satisfiable, Naive, Valuation};
use modalwb::formula::{chi_formula, conj, corpus, diamond_exactly, not, parse, Axis, Formula};
use modalwb::kripke::{
    check_condition, frame_validates, p_morphism_search, product_frame, Frame1, FrameCondition as C, Relation,
};
use modalwb::omega::{builtin, crosscheck, eval_symbolic, evaluate, truncation_eval, Truth3, BUILTIN_NAMES};
use modalwb::prober::{
    claim_test, extract_chain, sample_frame, stream_rng, unsat_campaign, CampaignOptions, CampaignReport, ChainKind,
    FrameClassSpec, SymbolicChain, CLAIMS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7_310_442;
const EXHAUSTIVE_MAX: usize = 3;
const RANDOM_SIZES: (usize, usize) = (4, 5);
const RANDOM_SAMPLES_PER_SIZE: u64 = 500_000;
const RANDOM_MIN_TOTAL: u64 = 1_000_000;
const SINGLE_THREAD_LIMIT: Duration = Duration::from_secs(300);
const CHAIN_STEPS: usize = 25;
const CHAIN_LIMIT: Duration = Duration::from_secs(60);
const CLAIM_SAMPLES: u64 = 10_000;
const WINDOW: u64 = 30;
const PRODUCT_PAIRS: usize = 10_000;
const AXIOM_PRODUCTS: usize = 100;
const PMORPHISM_LIMIT: Duration = Duration::from_secs(600);
const ROUND_TRIPS: usize = 10_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn names(conds: &[C]) -> Vec<&'static str> {
    conds.iter().map(|c| c.name()).collect()
}

fn vars_of(f: &Formula) -> Vec<String> {
    f.variables().into_iter().collect()
}

/// In-class and satisfiable counts per size, by scanning every pair of relations.
fn naive_census(f: &Formula, conds: &[C], max: usize) -> Vec<(u64, u64)> {
    let vars = vars_of(f);
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let conds = names(conds);
    (1..=max)
        .map(|n| {
            let (mut in_class, mut sat) = (0, 0);
            for c0 in 0..1u64 << (n * n) {
                for c1 in 0..1u64 << (n * n) {
                    let fr = naive_frame(n, c0, c1);
                    if conds.iter().all(|c| condition(&fr, c)) {
                        in_class += 1;
                        sat += satisfiable(&fr, f, &vars) as u64;
                    }
                }
            }
            (in_class, sat)
        })
        .collect()
}

fn compare_census(report: &CampaignReport, census: &[(u64, u64)]) -> Result<(), String> {
    ensure(report.records.len() == census.len(), "size range differs")?;
    for (rec, (in_class, sat)) in report.records.iter().zip(census) {
        ensure(
            rec.frames_in_class == *in_class && rec.satisfiable_count == *sat,
            format!(
                "size {}: report {}/{} vs direct scan {in_class}/{sat}",
                rec.size, rec.frames_in_class, rec.satisfiable_count
            ),
        )?;
    }
    Ok(())
}

fn small_frame_sweep(name: &str, conds: &[C]) -> Outcome {
    let f = corpus(name).ok_or("corpus")?;
    let spec = FrameClassSpec::general(conds.to_vec()).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let opts = CampaignOptions { jobs: Some(1), ..CampaignOptions::exhaustive(EXHAUSTIVE_MAX) };
    let report = unsat_campaign(name, &f, &spec, &opts).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(took < SINGLE_THREAD_LIMIT, format!("single-threaded sweep took {took:?}"))?;
    compare_census(&report, &naive_census(&f, conds, EXHAUSTIVE_MAX))?;
    ensure(report.satisfiable_total == 0, format!("{} satisfiable frames", report.satisfiable_total))?;
    Ok(format!(
        "{} in-class frames at sizes 1-{EXHAUSTIVE_MAX}, 0 satisfiable, matches direct scan, {:.1}s single-threaded",
        report.frames_in_class_total,
        took.as_secs_f64()
    ))
}

fn criterion_1() -> Outcome {
    let conds = [C::WeaklyConnected0, C::Lcom, C::Rcom, C::Conf];
    let exhaustive = small_frame_sweep("phi_inf", &conds)?;
    let f = corpus("phi_inf").ok_or("corpus")?;
    let spec = FrameClassSpec::general(conds.to_vec()).map_err(|e| e.to_string())?;
    let opts = CampaignOptions::random(RANDOM_SIZES.0, RANDOM_SIZES.1, SEED, RANDOM_SAMPLES_PER_SIZE);
    let report = unsat_campaign("phi_inf", &f, &spec, &opts).map_err(|e| e.to_string())?;
    ensure(
        report.frames_in_class_total >= RANDOM_MIN_TOTAL,
        format!("only {} in-class samples", report.frames_in_class_total),
    )?;
    ensure(report.satisfiable_total == 0, format!("{} satisfiable samples", report.satisfiable_total))?;

    // the sampler's output, re-checked with the direct definitions
    let mut rng = stream_rng(SEED ^ 0x5eed, 1);
    let mut spot = 0;
    for i in 0..2_000 {
        let n = RANDOM_SIZES.0 + i % 2;
        if let Some(fr) = sample_frame(&mut rng, n, &spec) {
            let nf = Naive::of(&fr);
            ensure(names(&conds).iter().all(|c| condition(&nf, c)), "sampled frame outside the class")?;
            ensure(!satisfiable(&nf, &f, &["p"]), "sampled frame satisfies phi_inf")?;
            spot += 1;
        }
    }
    ensure(spot > 0, "sampler produced nothing")?;
    Ok(format!(
        "{exhaustive}; random sizes {}-{}: {} samples, 0 satisfiable; {spot} samples re-checked directly",
        RANDOM_SIZES.0, RANDOM_SIZES.1, report.frames_in_class_total
    ))
}

fn criterion_2() -> Outcome {
    small_frame_sweep("phi_inf_bullet", &[C::Transitive0, C::WeaklyConnected0, C::Lcom, C::Rcom, C::Conf])
}

fn criterion_3() -> Outcome {
    small_frame_sweep("psi_inf", &[C::WeaklyConnected0, C::PseudoTransitive1, C::Lcom])
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for name in BUILTIN_NAMES {
        let b = builtin(name).ok_or("builtin")?;
        let f = corpus(b.formula).ok_or("corpus")?;
        let (region, cert) = eval_symbolic(&b.model, &f).map_err(|e| e.to_string())?;
        ensure(region.contains(b.target), format!("{name}: target outside the region"))?;
        let entries = cert.verify(&b.model, &evaluate(&b.model, &f)).map_err(|e| format!("{name}: {e}"))?;
        let window = truncation_eval(&b.model, &f, WINDOW).get(b.target);
        ensure(window != Some(Truth3::False), format!("{name}: window evaluation refutes the target"))?;
        parts.push(format!("{name} ({entries} entries)"));
    }
    Ok(format!("6/6 memberships, certificates verified: {}", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (name, kind) in [("lemma_satone", ChainKind::Phi), ("lemma_sattwo", ChainKind::Psi)] {
        let b = builtin(name).ok_or("builtin")?;
        let start = Instant::now();
        let w = extract_chain(&mut SymbolicChain::new(b.model.clone()), b.target, kind, CHAIN_STEPS)
            .map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        ensure(took < CHAIN_LIMIT, format!("{name}: took {took:?}"))?;
        ensure(w.steps.len() == CHAIN_STEPS, format!("{name}: {} steps", w.steps.len()))?;
        ensure(w.all_checks && w.pairwise_distinct, format!("{name}: checks failed"))?;
        let us: HashSet<_> = w.steps.iter().map(|s| s.u).collect();
        ensure(us.len() == CHAIN_STEPS, format!("{name}: repeated points"))?;
        for s in &w.steps {
            let marker = match kind {
                ChainKind::Phi => diamond_exactly(s.n, Formula::Top),
                ChainKind::Psi => conj(std::iter::once(chi_formula(s.n)).chain((0..s.n).map(|i| not(chi_formula(i))))),
            };
            let (region, _) = eval_symbolic(&b.model, &marker).map_err(|e| e.to_string())?;
            ensure(region.contains(s.u), format!("{name}: step {} fails its marker", s.n))?;
        }
        parts.push(format!("{name}: {CHAIN_STEPS} distinct points in {:.2}s", took.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for c in CLAIMS {
        let r = claim_test(c, CLAIM_SAMPLES, SEED, None);
        ensure(r.checked + r.discarded == CLAIM_SAMPLES, format!("{c}: sample count"))?;
        ensure(r.checked > 0, format!("{c}: every sample discarded"))?;
        ensure(r.violations == 0, format!("{c}: {} violations, first {:?}", r.violations, r.first_violation))?;
        checked += r.checked;
    }
    Ok(format!("{} claims, {checked} samples checked, 0 violations", CLAIMS.len()))
}

fn criterion_7() -> Outcome {
    let mut definite = 0;
    for name in BUILTIN_NAMES {
        let b = builtin(name).ok_or("builtin")?;
        let r = crosscheck(&b.model, &corpus(b.formula).ok_or("corpus")?, WINDOW);
        ensure(r.disagreements.is_empty(), format!("{name}: {} disagreements", r.disagreements.len()))?;
        ensure(r.definite > 0, format!("{name}: no definite verdicts"))?;
        definite += r.definite;
    }
    Ok(format!("0 disagreements over {definite} definite verdicts at window {WINDOW}"))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> (u64, Vec<Vec<bool>>) {
    let code = rng.gen::<u64>() & ((1u64 << (n * n)) - 1);
    (code, matrix(n, code))
}

/// Validity by sweeping every valuation of the formula's variables.
fn naive_valid(fr: &Naive, f: &Formula) -> bool {
    let vars = vars_of(f);
    let n = fr.n;
    (0u64..1 << (n * vars.len())).all(|code| {
        let val: Valuation = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), (0..n).map(|w| code >> (i * n + w) & 1 == 1).collect()))
            .collect();
        (0..n).all(|w| holds(fr, &val, f, w))
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for _ in 0..PRODUCT_PAIRS {
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let ((c0, m0), (c1, m1)) = (random_matrix(&mut rng, a), random_matrix(&mut rng, b));
        let fr = product_frame(&Frame1::new(Relation::from_code(a, c0)), &Frame1::new(Relation::from_code(b, c1)))
            .map_err(|e| e.to_string())?;
        let direct = product(&m0, &m1);
        ensure(Naive::of(&fr).r == direct.r, "product layout differs from the direct construction")?;
        for c in [C::Lcom, C::Rcom, C::Conf] {
            let lib = check_condition(&fr, c, None).map_err(|e| e.to_string())?.holds();
            ensure(lib && condition(&direct, c.name()), format!("{c} fails on a {a}x{b} product"))?;
        }
    }
    let axioms: Vec<Formula> = ["commut0", "commut1", "commut2"].iter().map(|n| corpus(n).expect("corpus")).collect();
    for _ in 0..AXIOM_PRODUCTS {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let ((c0, m0), (c1, m1)) = (random_matrix(&mut rng, a), random_matrix(&mut rng, b));
        let fr = product_frame(&Frame1::new(Relation::from_code(a, c0)), &Frame1::new(Relation::from_code(b, c1)))
            .map_err(|e| e.to_string())?;
        let direct = product(&m0, &m1);
        for f in &axioms {
            let lib = frame_validates(&fr, f).map_err(|e| e.to_string())?.is_valid();
            ensure(lib && naive_valid(&direct, f), format!("{f} fails on a {a}x{b} product"))?;
        }
    }
    Ok(format!("{PRODUCT_PAIRS} products commute and are confluent; {AXIOM_PRODUCTS} validate all three axioms"))
}

fn component_count(n: usize, conds: &[&str]) -> u64 {
    (0..1u64 << (n * n)).filter(|&c| conds.iter().all(|k| condition(&naive_frame(n, c, 0), k))).count() as u64
}

fn forcer(name: &str, conds: &[C]) -> Result<String, String> {
    let f = corpus(name).ok_or("corpus")?;
    let spec = FrameClassSpec::products(conds.to_vec()).map_err(|e| e.to_string())?;
    let report =
        unsat_campaign(name, &f, &spec, &CampaignOptions::exhaustive(EXHAUSTIVE_MAX)).map_err(|e| e.to_string())?;
    let first = names(conds);
    let mut expected_pairs = 0;
    for rec in &report.records {
        let [a, b] = rec.components.ok_or("missing component sizes")?;
        let expected = component_count(a, &first) * (1u64 << (b * b));
        ensure(rec.frames_in_class == expected, format!("{name} {a}x{b}: {} vs {expected}", rec.frames_in_class))?;
        expected_pairs += 1;
    }
    ensure(expected_pairs == EXHAUSTIVE_MAX * EXHAUSTIVE_MAX, "missing component sizes")?;
    ensure(report.satisfiable_total == 0, format!("{name}: {} satisfiable", report.satisfiable_total))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut spot = 0;
    while spot < 200 {
        let (a, b) = (rng.gen_range(1..=EXHAUSTIVE_MAX), rng.gen_range(1..=EXHAUSTIVE_MAX));
        let (c0, m0) = random_matrix(&mut rng, a);
        if !first.iter().all(|k| condition(&naive_frame(a, c0, 0), k)) {
            continue;
        }
        let (_, m1) = random_matrix(&mut rng, b);
        ensure(!satisfiable(&product(&m0, &m1), &f, &["p"]), format!("{name} satisfiable on a {a}x{b} product"))?;
        spot += 1;
    }
    Ok(format!("{name}: {} products, 0 satisfiable, counts match, {spot} re-checked directly", report.frames_in_class_total))
}

fn criterion_9() -> Outcome {
    let a = forcer("fasc", &[C::Transitive0])?;
    let b = forcer("fdesc", &[C::Transitive0, C::WeaklyConnected0])?;
    Ok(format!("{a}; {b}"))
}

/// `x <= y` on two points, with the universal second relation.
fn two_point() -> Naive {
    Naive { n: 2, r: [vec![vec![true, true], vec![false, true]], vec![vec![true; 2]; 2]] }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let target_naive = two_point();
    let target = modalwb::kripke::Frame2::new(
        Relation::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).ok_or("pairs")?,
        Relation::full(2),
    )
    .map_err(|e| e.to_string())?;
    let (mut searched, mut brute) = (0u64, 0u64);
    for a in 1..=3 {
        for b in 1..=3 {
            for c0 in 0..1u64 << (a * a) {
                let f0 = Frame1::new(Relation::from_code(a, c0));
                for c1 in 0..1u64 << (b * b) {
                    let fr = product_frame(&f0, &Frame1::new(Relation::from_code(b, c1))).map_err(|e| e.to_string())?;
                    searched += 1;
                    if let Some(map) = p_morphism_search(&fr, &target).map_err(|e| e.to_string())? {
                        return Err(format!("{a}x{b} product maps onto the two-point frame via {map:?}"));
                    }
                    if a * b <= 4 {
                        let direct = product(&matrix(a, c0), &matrix(b, c1));
                        ensure(!common::any_p_morphism(&direct, &target_naive), "brute force finds a map")?;
                        brute += 1;
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took < PMORPHISM_LIMIT, format!("took {took:?}"))?;
    Ok(format!("{searched} products searched, none map onto the target; {brute} confirmed by brute force; {:.1}s", took.as_secs_f64()))
}

fn gen_name(rng: &mut ChaCha8Rng) -> String {
    loop {
        let len = rng.gen_range(1..=5);
        let mut s = String::new();
        s.push(rng.gen_range(b'a'..=b'z') as char);
        for _ in 1..len {
            let pool = b"abcdefghijklmnopqrstuvwxyz0123456789_";
            s.push(pool[rng.gen_range(0..pool.len())] as char);
        }
        if s != "true" && s != "false" {
            return s;
        }
    }
}

fn gen_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    let axis = |rng: &mut ChaCha8Rng| if rng.gen() { Axis::Zero } else { Axis::One };
    if depth == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..4) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::Var(gen_name(rng)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(gen_formula(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Formula::Not(sub(rng)),
        1 => Formula::And(sub(rng), sub(rng)),
        2 => Formula::Or(sub(rng), sub(rng)),
        3 => Formula::Implies(sub(rng), sub(rng)),
        4 => Formula::Box(axis(rng), sub(rng)),
        _ => Formula::Diamond(axis(rng), sub(rng)),
    }
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    for _ in 0..ROUND_TRIPS {
        let f = gen_formula(&mut rng, 7);
        let text = f.to_string();
        let back = parse(&text).map_err(|e| format!("`{text}`: {e}"))?;
        ensure(back == f, format!("`{text}` parses to a different tree"))?;
    }
    Ok(format!("{ROUND_TRIPS} random trees survive render and parse"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("phi_inf has no small models in wcon0,lcom,rcom,conf", criterion_1),
        ("phi_inf_bullet has no small models in trans0,wcon0,lcom,rcom,conf", criterion_2),
        ("psi_inf has no small models in wcon0,ptrans1,lcom", criterion_3),
        ("witness regions contain their targets", criterion_4),
        ("chain extraction", criterion_5),
        ("claims on random models", criterion_6),
        ("region and window evaluation agree", criterion_7),
        ("product soundness", criterion_8),
        ("chain-forcing formulas on finite products", criterion_9),
        ("no product maps onto the two-point frame", criterion_10),
        ("formula round-trip", criterion_11),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
