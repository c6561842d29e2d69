use std::collections::HashMap;

use super::frame::{Frame2, Model};
use super::relation::WorldSet;
use crate::formula::{Axis, Formula};

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Top,
    Bottom,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Box(Axis, usize),
    Diamond(Axis, usize),
}

/// A formula flattened into a shared-subterm DAG for repeated evaluation
/// over many frames and valuations.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    ops: Vec<Op>,
    vars: Vec<String>,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let mut c = CompiledFormula { ops: Vec::new(), vars: f.variables().into_iter().collect() };
        let mut memo = HashMap::new();
        c.push(f, &mut memo);
        c
    }

    fn push<'a>(&mut self, f: &'a Formula, memo: &mut HashMap<&'a Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let op = match f {
            Formula::Var(name) => Op::Var(self.vars.iter().position(|v| v == name).expect("collected")),
            Formula::Top => Op::Top,
            Formula::Bottom => Op::Bottom,
            Formula::Not(a) => Op::Not(self.push(a, memo)),
            Formula::And(a, b) => Op::And(self.push(a, memo), self.push(b, memo)),
            Formula::Or(a, b) => Op::Or(self.push(a, memo), self.push(b, memo)),
            Formula::Implies(a, b) => Op::Implies(self.push(a, memo), self.push(b, memo)),
            Formula::Box(ax, a) => Op::Box(*ax, self.push(a, memo)),
            Formula::Diamond(ax, a) => Op::Diamond(*ax, self.push(a, memo)),
        };
        self.ops.push(op);
        memo.insert(f, self.ops.len() - 1);
        self.ops.len() - 1
    }

    /// Variables in sorted order; `eval` takes their values in this order.
    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Truth set of the root formula. `values[i]` is the extension of `variables()[i]`.
    pub fn eval(&self, frame: &Frame2, values: &[WorldSet], scratch: &mut Vec<WorldSet>) -> WorldSet {
        let all = frame.all_worlds();
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => values[i] & all,
                Op::Top => all,
                Op::Bottom => 0,
                Op::Not(a) => !scratch[a] & all,
                Op::And(a, b) => scratch[a] & scratch[b],
                Op::Or(a, b) => scratch[a] | scratch[b],
                Op::Implies(a, b) => (!scratch[a] | scratch[b]) & all,
                Op::Box(ax, a) => frame.rel(ax).box_preimage(scratch[a]),
                Op::Diamond(ax, a) => frame.rel(ax).preimage(scratch[a]),
            };
            scratch.push(v);
        }
        *scratch.last().expect("non-empty formula")
    }

    pub fn eval_model(&self, m: &Model) -> WorldSet {
        let values: Vec<WorldSet> = self.vars.iter().map(|v| m.value(v)).collect();
        self.eval(&m.frame, &values, &mut Vec::with_capacity(self.ops.len()))
    }
}

/// The exact truth set of `f` in `m`.
pub fn eval_model(m: &Model, f: &Formula) -> WorldSet {
    CompiledFormula::new(f).eval_model(m)
}
