use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use super::{Cli, Command, Mode};
use crate::formula::{corpus, parse, Formula, CORPUS_NAMES};
use crate::kripke::{check_condition, eval_model, set_to_vec, Frame2, FrameCondition, Model, Verdict};
use crate::omega::{builtin, crosscheck, eval_symbolic, region_to_json, Builtin, OmegaError, Point, BUILTIN_NAMES};
use crate::prober::{
    claim_test, extract_chain, unsat_campaign, CampaignMode, CampaignOptions, ChainKind, Claim, FrameClassSpec,
    ProberError, SymbolicChain, CLAIMS,
};

pub(super) struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Resolves an inline formula, `@FILE` or `corpus:NAME`.
pub(super) fn load_formula(src: &str) -> Result<Formula, String> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return corpus(name)
            .ok_or_else(|| format!("unknown corpus formula `{name}` (known: {})", CORPUS_NAMES.join(", ")));
    }
    if let Some(path) = src.strip_prefix('@') {
        let text = read(Path::new(path))?;
        return parse(&text).map_err(|e| {
            let (l, c) = line_col(&text, e.pos);
            format!("{path}:{l}:{c}: {}", e.message)
        });
    }
    parse(src).map_err(|e| e.to_string())
}

fn load_builtin(name: &str) -> Result<Builtin, String> {
    builtin(name).ok_or_else(|| format!("unknown witness `{name}` (known: {})", BUILTIN_NAMES.join(", ")))
}

fn load_point(text: &str) -> Result<Point, String> {
    Point::from_json(text).map_err(|e| format!("bad point `{text}`: {e}"))
}

fn parse_conditions(names: &[String]) -> Result<Vec<FrameCondition>, String> {
    names.iter().map(|n| n.trim().parse::<FrameCondition>().map_err(|e| e.to_string())).collect()
}

pub(super) fn dispatch(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Eval { model, formula } => eval(model, formula),
        Command::Props { frame, model, root, conditions } => props(frame.as_deref(), model.as_deref(), *root, conditions),
        Command::Probe { formula, class, max_size, min_size, product_only, mode, samples, seed, jobs, iso } => {
            let mode = match mode {
                Mode::Exhaustive => CampaignMode::Exhaustive,
                Mode::Random => CampaignMode::Random { seed: *seed, samples: *samples },
            };
            let opts = CampaignOptions {
                min_size: *min_size,
                max_size: *max_size,
                mode,
                canonical_only: *iso,
                jobs: *jobs,
                timing: cli.timing,
            };
            probe(formula, class, *product_only, &opts)
        }
        Command::Witness { name, formula, target } => witness(name, formula.as_deref(), target.as_deref()),
        Command::Claims { claim, samples, seed, jobs } => claims(claim, *samples, *seed, *jobs),
        Command::Extract { name, kind, steps, root } => extract(name, kind, *steps, root.as_deref(), cli.timing),
        Command::Crosscheck { name, formula, window } => cross(name, formula.as_deref(), *window),
        Command::VerifyAll { jobs } => Ok(verify(*jobs, cli.timing)),
    }
}

fn eval(model: &Path, src: &str) -> Result<Report, String> {
    let m = Model::from_json(&read(model)?).map_err(|e| format!("{}: {e}", model.display()))?;
    let f = load_formula(src)?;
    let truth = set_to_vec(eval_model(&m, &f));
    let text = format!("formula: {f}\nworlds: {}\ntrue at: {truth:?}\n", m.frame.world_count());
    Ok(Report {
        json: json!({"formula": f.to_string(), "worlds": m.frame.world_count(), "truth_set": truth}),
        text,
        ok: true,
    })
}

fn props(frame: Option<&Path>, model: Option<&Path>, root: Option<usize>, names: &[String]) -> Result<Report, String> {
    let conds = parse_conditions(names)?;
    let (fr, m): (Frame2, Option<Model>) = match (frame, model) {
        (Some(p), _) => (Frame2::from_json(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?, None),
        (None, Some(p)) => {
            let m = Model::from_json(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?;
            (m.frame.clone(), Some(m))
        }
        (None, None) => return Err("one of --frame or --model is required".into()),
    };
    let root = root.unwrap_or(0);
    let mut rows = Vec::new();
    let mut text = String::new();
    for c in conds {
        let ctx = if c.is_model_relative() {
            let m = m.as_ref().ok_or_else(|| format!("`{c}` is model-relative and needs --model"))?;
            Some((m, root))
        } else {
            None
        };
        let v = check_condition(&fr, c, ctx).map_err(|e| e.to_string())?;
        match &v {
            Verdict::Satisfied => writeln!(text, "{c}: holds").unwrap(),
            Verdict::Violated(w) => writeln!(text, "{c}: fails, witness {w:?}").unwrap(),
        }
        rows.push(json!({"condition": c, "verdict": v}));
    }
    let ok = rows.iter().all(|r| r["verdict"]["verdict"] == "satisfied");
    Ok(Report { json: json!({"results": rows, "all_hold": ok}), text, ok })
}

fn probe(src: &str, class: &[String], product_only: bool, opts: &CampaignOptions) -> Result<Report, String> {
    let f = load_formula(src)?;
    let conds = parse_conditions(class)?;
    let spec = if product_only { FrameClassSpec::products(conds) } else { FrameClassSpec::general(conds) }
        .map_err(|e| e.to_string())?;
    let r = unsat_campaign(src, &f, &spec, opts).map_err(|e| e.to_string())?;
    let mut text = format!("formula: {src}\nmode: {}\n", r.mode);
    for rec in &r.records {
        let label = match rec.components {
            Some([a, b]) => format!("{a}x{b}"),
            None => rec.size.to_string(),
        };
        writeln!(
            text,
            "size {label}: {} enumerated, {} in class, {} satisfiable",
            rec.frames_enumerated, rec.frames_in_class, rec.satisfiable_count
        )
        .unwrap();
    }
    writeln!(text, "satisfiable_total: {}", r.satisfiable_total).unwrap();
    let ok = r.ok;
    Ok(Report { json: serde_json::to_value(&r).expect("report serialises"), text, ok })
}

fn witness(name: &str, src: Option<&str>, target: Option<&str>) -> Result<Report, String> {
    let b = load_builtin(name)?;
    let src = src.map_or_else(|| format!("corpus:{}", b.formula), str::to_string);
    let f = load_formula(&src)?;
    let target = target.map(load_point).transpose()?.unwrap_or(b.target);
    let family = json!({"first": b.model.family.first, "second": b.model.family.second});
    match eval_symbolic(&b.model, &f) {
        Ok((region, cert)) => {
            let member = region.contains(target);
            let text = format!(
                "witness: {name}\nformula: {src}\nregion: {region}\ntarget: {target}\nmember: {member}\ncertificate: {} entries, verified\n",
                cert.entries.len()
            );
            Ok(Report {
                json: json!({
                    "witness": name,
                    "family": family,
                    "formula": src,
                    "region": region.to_string(),
                    "region_expr": region_to_json(&region),
                    "target": target,
                    "member": member,
                    "certificate": {"verified": true, "entries": cert.entries},
                }),
                text,
                ok: member,
            })
        }
        Err(OmegaError::Certificate(msg)) => Ok(Report {
            json: json!({"witness": name, "formula": src, "certificate": {"verified": false, "error": msg}}),
            text: format!("certificate check failed: {msg}\n"),
            ok: false,
        }),
        Err(e) => Err(e.to_string()),
    }
}

fn claims(which: &str, samples: u64, seed: u64, jobs: Option<usize>) -> Result<Report, String> {
    let list: Vec<Claim> =
        if which == "all" { CLAIMS.to_vec() } else { vec![which.parse::<Claim>().map_err(|e| e.to_string())?] };
    let reports: Vec<_> = list.into_iter().map(|c| claim_test(c, samples, seed, jobs)).collect();
    let mut text = String::new();
    for r in &reports {
        writeln!(
            text,
            "{}: {} checked, {} discarded, {} violations",
            r.claim.name(),
            r.checked,
            r.discarded,
            r.violations
        )
        .unwrap();
    }
    let ok = reports.iter().all(|r| r.ok);
    Ok(Report { json: json!({"reports": reports, "ok": ok}), text, ok })
}

fn extract(name: &str, kind: &str, steps: usize, root: Option<&str>, timing: bool) -> Result<Report, String> {
    let b = load_builtin(name)?;
    let kind: ChainKind = kind.parse().map_err(|e: ProberError| e.to_string())?;
    let root = root.map(load_point).transpose()?.unwrap_or(b.target);
    let start = Instant::now();
    let mut model = SymbolicChain::new(b.model);
    match extract_chain(&mut model, root, kind, steps) {
        Ok(w) => {
            let ok = w.all_checks && w.pairwise_distinct && w.steps.len() == steps;
            let mut text = format!("witness: {name}\nkind: {kind:?}\nroot: {root}\n").to_lowercase();
            for s in &w.steps {
                let extra = s.x.or(s.y).map_or(String::new(), |p| format!(" {}={p}", if s.x.is_some() { "x" } else { "y" }));
                let checks = s.checks.values().all(|b| *b);
                writeln!(text, "n={}: u={} v={}{extra} checks={checks} distinct={}", s.n, s.u, s.v, s.distinct).unwrap();
            }
            writeln!(text, "pairwise_distinct: {}", w.pairwise_distinct).unwrap();
            let mut v = serde_json::to_value(&w).expect("witness serialises");
            v["witness"] = json!(name);
            if timing {
                v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            Ok(Report { json: v, text, ok })
        }
        Err(e @ (ProberError::ConstructionStuck { .. } | ProberError::Precondition(_))) => Ok(Report {
            json: json!({"witness": name, "kind": kind, "root": root, "error": e.to_string()}),
            text: format!("{e}\n"),
            ok: false,
        }),
        Err(e) => Err(e.to_string()),
    }
}

fn cross(name: &str, src: Option<&str>, window: u64) -> Result<Report, String> {
    let b = load_builtin(name)?;
    let src = src.map_or_else(|| format!("corpus:{}", b.formula), str::to_string);
    let f = load_formula(&src)?;
    let r = crosscheck(&b.model, &f, window);
    let ok = r.disagreements.is_empty();
    let text = format!(
        "witness: {name}\nformula: {src}\nwindow: {window}\nsubformulas: {}\ndefinite: {}\nunknown: {}\ndisagreements: {}\n",
        r.subformulas,
        r.definite,
        r.unknown,
        r.disagreements.len()
    );
    let mut v = serde_json::to_value(&r).expect("report serialises");
    v["witness"] = json!(name);
    v["formula"] = json!(src);
    Ok(Report { json: v, text, ok })
}

fn verify(jobs: Option<usize>, timing: bool) -> Report {
    let results = super::verify_all(jobs);
    let mut text = String::new();
    for r in &results {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        write!(text, "[{verdict}] {}. {}: {}", r.criterion, r.title, r.detail).unwrap();
        if timing {
            write!(text, " ({} ms)", r.elapsed_ms).unwrap();
        }
        text.push('\n');
    }
    let ok = results.iter().all(|r| r.pass);
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut v = json!({"criterion": r.criterion, "title": r.title, "pass": r.pass, "detail": r.detail});
            if timing {
                v["elapsed_ms"] = json!(r.elapsed_ms);
            }
            v
        })
        .collect();
    Report { json: json!({"criteria": rows, "ok": ok}), text, ok }
}
