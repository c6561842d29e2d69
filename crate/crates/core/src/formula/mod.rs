//! Bimodal formulas over two modality indices.
//!
//! The AST keeps implication and disjunction as primitive cases so that
//! rendered formulas read like the displays they were built from. The defined
//! tick operators live in [`tick`] as marker nodes of an extended AST and are
//! always expanded away before evaluation.

mod corpus;
mod parse;
mod random;
mod render;
pub mod tick;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use corpus::{box_plus, chi_formula, corpus, diamond_exactly, CORPUS_NAMES};
pub use parse::{parse, ParseError};
pub use random::random_formula;

/// Which of the two accessibility relations a modality quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Zero,
    One,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::Zero => 0,
            Axis::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        match i {
            0 => Some(Axis::Zero),
            1 => Some(Axis::One),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Axis, Box<Formula>),
    Diamond(Axis, Box<Formula>),
}

pub fn var(name: &str) -> Formula {
    Formula::Var(name.to_string())
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn boxed(axis: Axis, f: Formula) -> Formula {
    Formula::Box(axis, Box::new(f))
}

pub fn diamond(axis: Axis, f: Formula) -> Formula {
    Formula::Diamond(axis, Box::new(f))
}

/// Left-nested conjunction of the given formulas; `Top` when empty.
pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
    items.into_iter().reduce(and).unwrap_or(Formula::Top)
}

/// `n` nested diamonds around `f`.
pub fn diamonds(axis: Axis, n: usize, f: Formula) -> Formula {
    (0..n).fold(f, |acc, _| diamond(axis, acc))
}

/// `n` nested boxes around `f`.
pub fn boxes(axis: Axis, n: usize, f: Formula) -> Formula {
    (0..n).fold(f, |acc, _| boxed(axis, acc))
}

impl Formula {
    /// Maximal nesting of index-0 and index-1 modalities, counted separately.
    pub fn modal_depth(&self) -> (usize, usize) {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bottom => (0, 0),
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let (a0, a1) = a.modal_depth();
                let (b0, b1) = b.modal_depth();
                (a0.max(b0), a1.max(b1))
            }
            Formula::Box(axis, a) | Formula::Diamond(axis, a) => {
                let (d0, d1) = a.modal_depth();
                match axis {
                    Axis::Zero => (d0 + 1, d1),
                    Axis::One => (d0, d1 + 1),
                }
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) => a.collect_variables(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bottom => 1,
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bottom => vec![],
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
        }
    }

    /// All distinct subformulas, children before parents.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        self.push_subformulas(&mut seen, &mut out);
        out
    }

    fn push_subformulas<'a>(
        &'a self,
        seen: &mut std::collections::HashSet<&'a Formula>,
        out: &mut Vec<&'a Formula>,
    ) {
        if seen.contains(self) {
            return;
        }
        for c in self.children() {
            c.push_subformulas(seen, out);
        }
        seen.insert(self);
        out.push(self);
    }

    /// Top-level conjuncts of a left- or right-nested conjunction.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            other => vec![other],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_of_atoms_is_zero() {
        assert_eq!(var("p").modal_depth(), (0, 0));
        assert_eq!(Formula::Top.modal_depth(), (0, 0));
    }

    #[test]
    fn depth_counts_axes_separately() {
        let f = diamond(Axis::One, diamond(Axis::Zero, and(var("p"), boxed(Axis::Zero, Formula::Bottom))));
        assert_eq!(f.modal_depth(), (2, 1));
    }

    #[test]
    fn conj_of_nothing_is_top() {
        assert_eq!(conj(Vec::new()), Formula::Top);
        assert_eq!(conj(vec![var("p"), var("q")]), and(var("p"), var("q")));
    }

    #[test]
    fn subformulas_are_deduplicated_and_ordered() {
        let p = var("p");
        let f = and(p.clone(), diamond(Axis::Zero, p.clone()));
        let subs = f.subformulas();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[0], &p);
        assert_eq!(*subs.last().unwrap(), &f);
    }
}
