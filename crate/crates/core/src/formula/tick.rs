//! The tick operators over the marker variable `t`.
//!
//! `TickDiamond(ψ)` abbreviates
//! `(t -> <0>(~t & (ψ | <0>ψ))) & (~t -> <0>(t & (ψ | <0>ψ)))` and
//! `TickBox(ψ)` abbreviates `~TickDiamond(~ψ)`. On any model the expansion of
//! `TickDiamond(ψ)` is the diamond of the derived relation computed by
//! [`crate::kripke::tick_relation`].

use super::{and, diamond, implies, not, or, var, Axis, Formula};

/// Name of the marker variable used by the tick operators.
pub const TICK_VAR: &str = "t";

/// Formula AST extended with the two tick marker nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TickFormula {
    Var(String),
    Top,
    Bottom,
    Not(Box<TickFormula>),
    And(Box<TickFormula>, Box<TickFormula>),
    Or(Box<TickFormula>, Box<TickFormula>),
    Implies(Box<TickFormula>, Box<TickFormula>),
    Box(Axis, Box<TickFormula>),
    Diamond(Axis, Box<TickFormula>),
    TickDiamond(Box<TickFormula>),
    TickBox(Box<TickFormula>),
}

impl From<&Formula> for TickFormula {
    fn from(f: &Formula) -> Self {
        lift(f, false)
    }
}

impl TickFormula {
    /// Replaces every index-0 diamond by the tick diamond and every index-0
    /// box by the tick box.
    pub fn ticked(f: &Formula) -> TickFormula {
        lift(f, true)
    }

    pub fn has_markers(&self) -> bool {
        match self {
            TickFormula::TickDiamond(_) | TickFormula::TickBox(_) => true,
            TickFormula::Var(_) | TickFormula::Top | TickFormula::Bottom => false,
            TickFormula::Not(a) | TickFormula::Box(_, a) | TickFormula::Diamond(_, a) => a.has_markers(),
            TickFormula::And(a, b) | TickFormula::Or(a, b) | TickFormula::Implies(a, b) => {
                a.has_markers() || b.has_markers()
            }
        }
    }
}

fn lift(f: &Formula, tick_axis0: bool) -> TickFormula {
    let rec = |g: &Formula| Box::new(lift(g, tick_axis0));
    match f {
        Formula::Var(n) => TickFormula::Var(n.clone()),
        Formula::Top => TickFormula::Top,
        Formula::Bottom => TickFormula::Bottom,
        Formula::Not(a) => TickFormula::Not(rec(a)),
        Formula::And(a, b) => TickFormula::And(rec(a), rec(b)),
        Formula::Or(a, b) => TickFormula::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => TickFormula::Implies(rec(a), rec(b)),
        Formula::Box(Axis::Zero, a) if tick_axis0 => TickFormula::TickBox(rec(a)),
        Formula::Diamond(Axis::Zero, a) if tick_axis0 => TickFormula::TickDiamond(rec(a)),
        Formula::Box(ax, a) => TickFormula::Box(*ax, rec(a)),
        Formula::Diamond(ax, a) => TickFormula::Diamond(*ax, rec(a)),
    }
}

/// The defining expansion of the tick diamond applied to an already
/// marker-free argument.
pub fn tick_diamond(psi: Formula) -> Formula {
    let t = var(TICK_VAR);
    let step = or(psi.clone(), diamond(Axis::Zero, psi));
    and(
        implies(t.clone(), diamond(Axis::Zero, and(not(t.clone()), step.clone()))),
        implies(not(t.clone()), diamond(Axis::Zero, and(t, step))),
    )
}

/// Expands every marker, innermost first. The result contains no markers.
pub fn tick_expand(f: &TickFormula) -> Formula {
    match f {
        TickFormula::Var(n) => Formula::Var(n.clone()),
        TickFormula::Top => Formula::Top,
        TickFormula::Bottom => Formula::Bottom,
        TickFormula::Not(a) => not(tick_expand(a)),
        TickFormula::And(a, b) => and(tick_expand(a), tick_expand(b)),
        TickFormula::Or(a, b) => or(tick_expand(a), tick_expand(b)),
        TickFormula::Implies(a, b) => implies(tick_expand(a), tick_expand(b)),
        TickFormula::Box(ax, a) => Formula::Box(*ax, Box::new(tick_expand(a))),
        TickFormula::Diamond(ax, a) => Formula::Diamond(*ax, Box::new(tick_expand(a))),
        TickFormula::TickDiamond(a) => tick_diamond(tick_expand(a)),
        TickFormula::TickBox(a) => not(tick_diamond(not(tick_expand(a)))),
    }
}
