use modalwb::formula::{corpus, parse};
use modalwb::omega::{builtin, crosscheck, eval_symbolic, evaluate, KVal, MVal, Point, BUILTIN_NAMES};

#[test]
fn crosscheck_all_witnesses_at_window_30() {
    for name in BUILTIN_NAMES {
        let b = builtin(name).unwrap();
        let f = corpus(b.formula).unwrap();
        let report = crosscheck(&b.model, &f, 30);
        assert!(report.disagreements.is_empty(), "{name}: {:?}", &report.disagreements[..3.min(report.disagreements.len())]);
        assert!(report.definite > 0);
    }
}

#[test]
fn every_variable_crosschecks() {
    for name in BUILTIN_NAMES {
        let b = builtin(name).unwrap();
        for var in b.model.valuation.keys() {
            let report = crosscheck(&b.model, &parse(var).unwrap(), 12);
            assert!(report.disagreements.is_empty());
            assert_eq!(report.unknown, 0);
        }
    }
}

#[test]
fn certificates_re_verify() {
    for name in BUILTIN_NAMES {
        let b = builtin(name).unwrap();
        let f = corpus(b.formula).unwrap();
        let (region, cert) = eval_symbolic(&b.model, &f).unwrap();
        assert!(region.contains(b.target), "{name}");
        let ev = evaluate(&b.model, &f);
        assert!(cert.verify(&b.model, &ev).unwrap() > 0, "{name}");
    }
}

#[test]
fn tick_guard_at_satoner_root() {
    let b = builtin("lemma_satoner").unwrap();
    let (region, _) = eval_symbolic(&b.model, &corpus("tick_guard").unwrap()).unwrap();
    assert!(region.contains(Point::new(MVal::Omega, KVal::Root)));
}

#[test]
fn first_conjunct_fails_at_bottom_row() {
    let b = builtin("lemma_satone").unwrap();
    let (region, _) = eval_symbolic(&b.model, &parse("<1><0>(p & [0]false)").unwrap()).unwrap();
    assert!(!region.contains(Point::new(MVal::Fin(0), KVal::Root)));
    assert!(region.contains(Point::new(MVal::Omega, KVal::Root)));
}

#[test]
fn offsets_stay_within_depth() {
    for name in BUILTIN_NAMES {
        let b = builtin(name).unwrap();
        let f = corpus(b.formula).unwrap();
        let (d0, d1) = f.modal_depth();
        let base = b.model.valuation.values().map(|r| r.max_offset()).max().unwrap_or(0);
        let ev = evaluate(&b.model, &f);
        for g in ev.subformulas() {
            let off = ev.region(g).unwrap().max_offset();
            assert!(off <= base + (d0 + d1) as i64, "{name}: offset {off} in {g}");
        }
    }
}
