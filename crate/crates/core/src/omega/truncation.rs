use std::collections::HashMap;

use serde::Serialize;

use super::family::{Family, Point};
use super::natset::NatSet;
use super::preimage::successors;
use super::region::{Diag, KPart, MPart, Region};
use super::symbolic::{evaluate, SymbolicModel};
use crate::formula::{Axis, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth3 {
    True,
    False,
    Unknown,
}

impl Truth3 {
    fn of(b: bool) -> Truth3 {
        if b {
            Truth3::True
        } else {
            Truth3::False
        }
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Truth3::True => Some(true),
            Truth3::False => Some(false),
            Truth3::Unknown => None,
        }
    }

    fn not(self) -> Truth3 {
        match self {
            Truth3::True => Truth3::False,
            Truth3::False => Truth3::True,
            Truth3::Unknown => Truth3::Unknown,
        }
    }

    fn and(self, o: Truth3) -> Truth3 {
        match (self, o) {
            (Truth3::False, _) | (_, Truth3::False) => Truth3::False,
            (Truth3::True, Truth3::True) => Truth3::True,
            _ => Truth3::Unknown,
        }
    }

    fn or(self, o: Truth3) -> Truth3 {
        self.not().and(o.not()).not()
    }
}

/// Three-valued truth of one formula over a finite window.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationMap {
    pub points: Vec<Point>,
    pub values: Vec<Truth3>,
}

impl TruncationMap {
    pub fn get(&self, p: Point) -> Option<Truth3> {
        self.points.iter().position(|q| *q == p).map(|i| self.values[i])
    }
}

struct Window {
    points: Vec<Point>,
    /// per axis: in-window successor indices, and whether they are all of them
    succ: [Vec<(Vec<usize>, bool)>; 2],
}

fn window(family: Family, n: u64) -> Window {
    let points = family.window(n);
    let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let bounded = NatSet::at_most(n as i64).expect("non-negative");
    let frame = Region::from_cells(
        family,
        [MPart::Fin(bounded), MPart::Omega]
            .into_iter()
            .flat_map(|m| [KPart::Root, KPart::Fin(bounded)].map(|k| (m, k)))
            .filter_map(|(m, k)| super::region::Cell::new(m, k, Diag::FREE)),
    );
    let succ = [Axis::Zero, Axis::One].map(|ax| {
        points
            .iter()
            .map(|&x| {
                let inside = points.iter().filter(|&&y| family.related(x, ax, y)).map(|y| index[y]).collect();
                let complete = successors(family, x, ax).minus(&frame).is_empty();
                (inside, complete)
            })
            .collect()
    });
    Window { points, succ }
}

fn table(sm: &SymbolicModel, f: &Formula, w: &Window) -> (Vec<Formula>, HashMap<Formula, Vec<Truth3>>) {
    let order: Vec<Formula> = f.subformulas().into_iter().cloned().collect();
    let mut vals: HashMap<Formula, Vec<Truth3>> = HashMap::new();
    for g in &order {
        let v: Vec<Truth3> = match g {
            Formula::Var(name) => {
                let r = sm.value(name);
                w.points.iter().map(|p| Truth3::of(r.contains(*p))).collect()
            }
            Formula::Top => vec![Truth3::True; w.points.len()],
            Formula::Bottom => vec![Truth3::False; w.points.len()],
            Formula::Not(a) => vals[&**a].iter().map(|t| t.not()).collect(),
            Formula::And(a, b) => vals[&**a].iter().zip(&vals[&**b]).map(|(x, y)| x.and(*y)).collect(),
            Formula::Or(a, b) => vals[&**a].iter().zip(&vals[&**b]).map(|(x, y)| x.or(*y)).collect(),
            Formula::Implies(a, b) => vals[&**a].iter().zip(&vals[&**b]).map(|(x, y)| x.not().or(*y)).collect(),
            Formula::Diamond(ax, a) | Formula::Box(ax, a) => {
                let child = &vals[&**a];
                let is_box = matches!(g, Formula::Box(..));
                w.succ[ax.index()]
                    .iter()
                    .map(|(inside, complete)| {
                        // a box is the dual of a diamond over the negated child
                        let val = |i: usize| if is_box { child[i].not() } else { child[i] };
                        let d = if inside.iter().any(|&i| val(i) == Truth3::True) {
                            Truth3::True
                        } else if *complete && inside.iter().all(|&i| val(i) == Truth3::False) {
                            Truth3::False
                        } else {
                            Truth3::Unknown
                        };
                        if is_box {
                            d.not()
                        } else {
                            d
                        }
                    })
                    .collect()
            }
        };
        vals.insert(g.clone(), v);
    }
    (order, vals)
}

/// Kleene evaluation of `f` on the window `([0..n] + omega) x (root + [0..n])`.
pub fn truncation_eval(sm: &SymbolicModel, f: &Formula, n: u64) -> TruncationMap {
    let w = window(sm.family, n);
    let (_, mut vals) = table(sm, f, &w);
    TruncationMap { values: vals.remove(f).expect("root evaluated"), points: w.points }
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub formula: String,
    pub point: Point,
    pub truncated: bool,
    pub symbolic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub window: u64,
    pub subformulas: usize,
    pub points: usize,
    pub definite: usize,
    pub unknown: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares definite window verdicts with region membership for every subformula.
pub fn crosscheck(sm: &SymbolicModel, f: &Formula, n: u64) -> CrosscheckReport {
    let w = window(sm.family, n);
    let (order, vals) = table(sm, f, &w);
    let ev = evaluate(sm, f);
    let mut report = CrosscheckReport {
        window: n,
        subformulas: order.len(),
        points: w.points.len(),
        definite: 0,
        unknown: 0,
        disagreements: Vec::new(),
    };
    for g in &order {
        let region = ev.region(g).expect("evaluated");
        for (p, t) in w.points.iter().zip(&vals[g]) {
            match t.definite() {
                None => report.unknown += 1,
                Some(b) => {
                    report.definite += 1;
                    let s = region.contains(*p);
                    if s != b {
                        report.disagreements.push(Disagreement {
                            formula: g.to_string(),
                            point: *p,
                            truncated: b,
                            symbolic: s,
                        });
                    }
                }
            }
        }
    }
    report
}
