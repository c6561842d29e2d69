//! Named formulas and the derived operators they are built from.

use super::tick::{tick_expand, TickFormula, TICK_VAR};
use super::{and, boxed, boxes, conj, diamond, diamonds, implies, not, or, var, Axis, Formula};

pub const CORPUS_NAMES: [&str; 9] = [
    "commut0",
    "commut1",
    "commut2",
    "fasc",
    "fdesc",
    "phi_inf",
    "phi_inf_bullet",
    "psi_inf",
    "tick_guard",
];

/// Negation that writes `~true` as `false` and `~false` as `true`.
fn negate(f: Formula) -> Formula {
    match f {
        Formula::Top => Formula::Bottom,
        Formula::Bottom => Formula::Top,
        other => not(other),
    }
}

/// "Exactly `n` index-0 steps": `<0>^n f & [0]^(n+1) ~f`.
pub fn diamond_exactly(n: usize, f: Formula) -> Formula {
    and(diamonds(Axis::Zero, n, f.clone()), boxes(Axis::Zero, n + 1, negate(f)))
}

/// `f & [i]f`.
pub fn box_plus(axis: Axis, f: Formula) -> Formula {
    and(f.clone(), boxed(axis, f))
}

/// The counting formulas: `chi(0) = [1]~q`, `chi(n) = <1>(q & <0>(p & chi(n-1)))`.
pub fn chi_formula(n: usize) -> Formula {
    let mut f = boxed(Axis::One, not(var("q")));
    for _ in 0..n {
        f = diamond(Axis::One, and(var("q"), diamond(Axis::Zero, and(var("p"), f))));
    }
    f
}

fn p() -> Formula {
    var("p")
}

fn q() -> Formula {
    var("q")
}

fn phi_inf() -> Formula {
    let b0 = |f| boxed(Axis::Zero, f);
    let d0 = |f| diamond(Axis::Zero, f);
    let d1 = |f| diamond(Axis::One, f);
    let once = diamond_exactly(1, p());
    conj([
        d1(d0(and(p(), b0(Formula::Bottom)))),
        boxed(Axis::One, implies(d0(p()), d0(once.clone()))),
        b0(implies(d1(once), d1(conj([p(), b0(not(p())), b0(b0(not(p())))])))),
    ])
}

fn tick_guard() -> Formula {
    let t = var(TICK_VAR);
    let g = implies(or(t.clone(), diamond(Axis::One, t.clone())), and(t.clone(), boxed(Axis::One, t)));
    and(g.clone(), boxed(Axis::Zero, g))
}

fn psi_inf() -> Formula {
    let b0 = |f| boxed(Axis::Zero, f);
    let b1 = |f| boxed(Axis::One, f);
    let d0 = |f| diamond(Axis::Zero, f);
    let nq = || not(q());
    conj([
        d0(conj([p(), nq(), b0(nq()), b1(nq())])),
        box_plus(Axis::One, d0(and(q(), b1(nq())))),
        box_plus(
            Axis::One,
            b0(implies(q(), diamond(Axis::One, conj([p(), nq(), b0(nq()), diamond(Axis::One, q())])))),
        ),
        box_plus(Axis::One, b0(b0(implies(p(), b0(not(p())))))),
    ])
}

/// Looks up a named formula; `None` for unknown names.
pub fn corpus(name: &str) -> Option<Formula> {
    let b0 = |f| boxed(Axis::Zero, f);
    let b1 = |f| boxed(Axis::One, f);
    let d0 = |f| diamond(Axis::Zero, f);
    let d1 = |f| diamond(Axis::One, f);
    let f = match name {
        "commut0" => implies(b1(b0(p())), b0(b1(p()))),
        "commut1" => implies(b0(b1(p())), b1(b0(p()))),
        "commut2" => implies(d0(b1(p())), b1(d0(p()))),
        "fasc" => and(
            box_plus(Axis::Zero, d1(p())),
            box_plus(Axis::Zero, b1(implies(p(), d0(box_plus(Axis::Zero, not(p())))))),
        ),
        "fdesc" => conj([
            d1(d0(p())),
            b1(implies(d0(p()), d0(d0(p())))),
            b1(b0(implies(p(), b0(not(p()))))),
            b0(d1(p())),
        ]),
        "phi_inf" => phi_inf(),
        "tick_guard" => tick_guard(),
        "phi_inf_bullet" => and(tick_guard(), tick_expand(&TickFormula::ticked(&phi_inf()))),
        "psi_inf" => psi_inf(),
        _ => return None,
    };
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn parsed(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn diamond_exactly_expansions() {
        assert_eq!(diamond_exactly(0, Formula::Top), parsed("true & [0]false"));
        assert_eq!(diamond_exactly(1, p()), parsed("<0>p & [0][0]~p"));
        assert_eq!(diamond_exactly(2, Formula::Top), parsed("<0><0>true & [0][0][0]false"));
    }

    #[test]
    fn box_plus_examples() {
        assert_eq!(box_plus(Axis::Zero, Formula::Top), parsed("true & [0]true"));
        assert_eq!(box_plus(Axis::One, not(q())), parsed("~q & [1]~q"));
        assert_eq!(box_plus(Axis::Zero, parsed("<1>p")), parsed("<1>p & [0]<1>p"));
    }

    #[test]
    fn chi_unfoldings() {
        assert_eq!(chi_formula(0), parsed("[1]~q"));
        assert_eq!(chi_formula(1), parsed("<1>(q & <0>(p & [1]~q))"));
        assert_eq!(chi_formula(2), parsed("<1>(q & <0>(p & <1>(q & <0>(p & [1]~q))))"));
    }

    #[test]
    fn chi_depth_matches_definition() {
        for n in 0..=20 {
            assert_eq!(chi_formula(n).modal_depth(), (n, n + 1));
        }
    }

    #[test]
    fn displayed_formulas() {
        assert_eq!(corpus("commut2").unwrap(), parsed("<0>[1]p -> [1]<0>p"));
        assert_eq!(
            corpus("fdesc").unwrap(),
            parsed("<1><0>p & [1](<0>p -> <0><0>p) & [1][0](p -> [0]~p) & [0]<1>p")
        );
        assert_eq!(corpus("fasc").unwrap(), parsed("(<1>p & [0]<1>p) & ([1](p -> <0>(~p & [0]~p)) & [0][1](p -> <0>(~p & [0]~p)))"));
        assert_eq!(
            corpus("phi_inf").unwrap(),
            parsed(
                "<1><0>(p & [0]false) & [1](<0>p -> <0>(<0>p & [0][0]~p)) \
                 & [0](<1>(<0>p & [0][0]~p) -> <1>(p & [0]~p & [0][0]~p))"
            )
        );
        assert_eq!(corpus("tick_guard").unwrap(), parsed("(t | <1>t -> t & [1]t) & [0](t | <1>t -> t & [1]t)"));
    }

    #[test]
    fn psi_inf_conjuncts() {
        let expected = conj([
            parsed("<0>(p & ~q & [0]~q & [1]~q)"),
            box_plus(Axis::One, parsed("<0>(q & [1]~q)")),
            box_plus(Axis::One, parsed("[0](q -> <1>(p & ~q & [0]~q & <1>q))")),
            box_plus(Axis::One, parsed("[0][0](p -> [0]~p)")),
        ]);
        assert_eq!(corpus("psi_inf").unwrap(), expected);
    }

    #[test]
    fn corpus_variables() {
        let vars = |n: &str| corpus(n).unwrap().variables().into_iter().collect::<Vec<_>>();
        assert_eq!(vars("phi_inf"), ["p"]);
        assert_eq!(vars("fasc"), ["p"]);
        assert_eq!(vars("fdesc"), ["p"]);
        assert_eq!(vars("phi_inf_bullet"), ["p", "t"]);
        assert_eq!(vars("psi_inf"), ["p", "q"]);
    }

    #[test]
    fn phi_inf_depth_by_definition() {
        // Nesting counted per index over every branch of the three conjuncts.
        assert_eq!(corpus("phi_inf").unwrap().modal_depth(), (3, 1));
    }

    #[test]
    fn unknown_name() {
        assert!(corpus("nope").is_none());
        for n in CORPUS_NAMES {
            assert!(corpus(n).is_some(), "{n}");
        }
    }
}
