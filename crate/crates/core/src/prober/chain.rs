use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::ProberError;
use crate::formula::{and, boxed, chi_formula, conj, corpus, diamond, diamond_exactly, not, var, Axis, Formula};
use crate::kripke::{eval_model, Model, WorldSet};
use crate::omega::{
    evaluate, preimage, successors, Diag, Evaluation, KPart, KVal, MPart, MVal, NatSet, Point, Region, SymbolicModel,
};

/// The queries chain extraction needs from a model.
pub trait ChainModel {
    type Point: Copy + Eq + fmt::Debug + Serialize;

    fn holds(&mut self, x: Self::Point, f: &Formula) -> bool;

    fn related(&self, x: Self::Point, axis: Axis, y: Self::Point) -> bool;

    /// The least `y` with `x R_axis y` and `y |= f`, and, when `toward = (a, z)`
    /// is given, also `y R_a z`.
    fn find(
        &mut self,
        x: Self::Point,
        axis: Axis,
        f: &Formula,
        toward: Option<(Axis, Self::Point)>,
    ) -> Option<Self::Point>;
}

pub struct FiniteChain {
    model: Model,
    cache: HashMap<Formula, WorldSet>,
}

impl FiniteChain {
    pub fn new(model: Model) -> Self {
        FiniteChain { model, cache: HashMap::new() }
    }

    fn truth(&mut self, f: &Formula) -> WorldSet {
        if let Some(&s) = self.cache.get(f) {
            return s;
        }
        let s = eval_model(&self.model, f);
        self.cache.insert(f.clone(), s);
        s
    }
}

impl ChainModel for FiniteChain {
    type Point = usize;

    fn holds(&mut self, x: usize, f: &Formula) -> bool {
        x < self.model.frame.world_count() && self.truth(f) >> x & 1 == 1
    }

    fn related(&self, x: usize, axis: Axis, y: usize) -> bool {
        self.model.frame.rel(axis).contains(x, y)
    }

    fn find(&mut self, x: usize, axis: Axis, f: &Formula, toward: Option<(Axis, usize)>) -> Option<usize> {
        let fr = &self.model.frame;
        let mut cand = fr.rel(axis).row(x);
        if let Some((a, z)) = toward {
            cand &= fr.rel(a).preimage(1 << z);
        }
        cand &= self.truth(f);
        (cand != 0).then(|| cand.trailing_zeros() as usize)
    }
}

pub struct SymbolicChain {
    model: SymbolicModel,
    ev: Option<Evaluation>,
}

impl SymbolicChain {
    pub fn new(model: SymbolicModel) -> Self {
        SymbolicChain { model, ev: None }
    }

    fn region(&mut self, f: &Formula) -> Region {
        match &mut self.ev {
            Some(ev) => ev.extend(&self.model, f).clone(),
            None => {
                let ev = evaluate(&self.model, f);
                let r = ev.root().clone();
                self.ev = Some(ev);
                r
            }
        }
    }

    fn singleton(&self, p: Point) -> Region {
        let m = match p.m {
            MVal::Fin(v) => MPart::Fin(NatSet::point(v as i64).expect("natural")),
            MVal::Omega => MPart::Omega,
        };
        let k = match p.k {
            KVal::Root => KPart::Root,
            KVal::Col(c) => KPart::Fin(NatSet::point(c as i64).expect("natural")),
        };
        Region::cell(self.model.family, m, k, Diag::FREE)
    }
}

impl ChainModel for SymbolicChain {
    type Point = Point;

    fn holds(&mut self, x: Point, f: &Formula) -> bool {
        self.region(f).contains(x)
    }

    fn related(&self, x: Point, axis: Axis, y: Point) -> bool {
        self.model.family.related(x, axis, y)
    }

    fn find(&mut self, x: Point, axis: Axis, f: &Formula, toward: Option<(Axis, Point)>) -> Option<Point> {
        let mut cand = successors(self.model.family, x, axis).intersect(&self.region(f));
        if let Some((a, z)) = toward {
            cand = cand.intersect(&preimage(&self.singleton(z), a));
        }
        cand.min_point()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Phi,
    Psi,
}

impl std::str::FromStr for ChainKind {
    type Err = ProberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(ChainKind::Phi),
            "psi" => Ok(ChainKind::Psi),
            _ => Err(ProberError::InvalidSpec(format!("unknown chain kind `{s}` (phi or psi)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStep<P> {
    pub n: usize,
    pub u: P,
    pub v: P,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<P>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<P>,
    pub checks: BTreeMap<&'static str, bool>,
    /// The step's counting formula holds at `u` and every earlier one fails there.
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainWitness<P> {
    pub kind: ChainKind,
    pub root: P,
    pub steps: Vec<ChainStep<P>>,
    pub all_checks: bool,
    pub pairwise_distinct: bool,
}

fn stuck(step: usize, what: &str) -> ProberError {
    ProberError::ConstructionStuck { step, missing: what.to_string() }
}

/// Builds the point sequences that a model of the chosen formula must contain,
/// re-checking the defining properties at every step.
pub fn extract_chain<M: ChainModel>(
    model: &mut M,
    root: M::Point,
    kind: ChainKind,
    n_steps: usize,
) -> Result<ChainWitness<M::Point>, ProberError> {
    let target = match kind {
        ChainKind::Phi => "phi_inf",
        ChainKind::Psi => "psi_inf",
    };
    if !model.holds(root, &corpus(target).expect("corpus")) {
        return Err(ProberError::Precondition(format!("{target} does not hold at {root:?}")));
    }
    let steps = match kind {
        ChainKind::Phi => phi_steps(model, root, n_steps)?,
        ChainKind::Psi => psi_steps(model, root, n_steps)?,
    };
    let all_checks = steps.iter().all(|s| s.distinct && s.checks.values().all(|b| *b));
    let pairwise_distinct = steps.iter().enumerate().all(|(i, a)| steps[..i].iter().all(|b| b.u != a.u));
    Ok(ChainWitness { kind, root, steps, all_checks, pairwise_distinct })
}

fn p() -> Formula {
    var("p")
}

fn q() -> Formula {
    var("q")
}

fn phi_steps<M: ChainModel>(m: &mut M, r: M::Point, n_steps: usize) -> Result<Vec<ChainStep<M::Point>>, ProberError> {
    let (zero, one) = (Axis::Zero, Axis::One);
    let endpoint = and(p(), boxed(zero, Formula::Bottom));
    let once = diamond_exactly(1, p());
    let fresh = conj([p(), boxed(zero, not(p())), boxed(zero, boxed(zero, not(p())))]);
    let mut steps: Vec<ChainStep<M::Point>> = Vec::new();
    for n in 0..n_steps {
        let (u, v, x) = match steps.last() {
            None => {
                let y0 = m.find(r, one, &diamond(zero, endpoint.clone()), None).ok_or_else(|| stuck(0, "y0"))?;
                let u0 = m.find(y0, zero, &endpoint, None).ok_or_else(|| stuck(0, "u0"))?;
                let v0 = m.find(y0, zero, &once, Some((zero, u0))).ok_or_else(|| stuck(0, "v0"))?;
                let x0 = m.find(r, zero, &Formula::Top, Some((one, v0))).ok_or_else(|| stuck(0, "x0"))?;
                (u0, v0, x0)
            }
            Some(prev) => {
                let xp = prev.x.expect("phi steps record x");
                let u = m.find(xp, one, &fresh, None).ok_or_else(|| stuck(n, "u"))?;
                let y = m.find(r, one, &Formula::Top, Some((zero, u))).ok_or_else(|| stuck(n, "y"))?;
                let v = m.find(y, zero, &once, Some((zero, u))).ok_or_else(|| stuck(n, "v"))?;
                let x = m.find(r, zero, &Formula::Top, Some((one, v))).ok_or_else(|| stuck(n, "x"))?;
                (u, v, x)
            }
        };
        let mut checks = BTreeMap::new();
        checks.insert("a", m.related(v, zero, u));
        let back = steps.last().is_none_or(|prev| m.related(prev.x.expect("x"), one, u));
        checks.insert("b", m.related(r, zero, x) && m.related(x, one, v) && back);
        checks.insert("c", m.holds(u, &fresh));
        checks.insert("d", m.holds(v, &once));
        let distinct = m.holds(u, &diamond_exactly(n, Formula::Top));
        steps.push(ChainStep { n, u, v, x: Some(x), y: None, checks, distinct });
    }
    Ok(steps)
}

fn psi_steps<M: ChainModel>(m: &mut M, r: M::Point, n_steps: usize) -> Result<Vec<ChainStep<M::Point>>, ProberError> {
    let (zero, one) = (Axis::Zero, Axis::One);
    let nq = || not(q());
    let endpoint = conj([p(), nq(), boxed(zero, nq()), boxed(one, nq())]);
    let marker = and(q(), boxed(one, nq()));
    let next_u = conj([p(), nq(), boxed(zero, nq()), diamond(one, q())]);
    let mut steps: Vec<ChainStep<M::Point>> = Vec::new();
    let mut distinct_so_far = Formula::Top;
    for n in 0..n_steps {
        let (y, u, v) = match steps.last() {
            None => {
                let u0 = m.find(r, zero, &endpoint, None).ok_or_else(|| stuck(0, "u0"))?;
                let v0 = m.find(r, zero, &marker, Some((zero, u0))).ok_or_else(|| stuck(0, "v0"))?;
                (r, u0, v0)
            }
            Some(prev) => {
                let yp = prev.y.expect("psi steps record y");
                let u = m.find(prev.v, one, &next_u, None).ok_or_else(|| stuck(n, "u"))?;
                let y = m.find(yp, one, &Formula::Top, Some((zero, u))).ok_or_else(|| stuck(n, "y"))?;
                let v = m.find(y, zero, &marker, Some((zero, u))).ok_or_else(|| stuck(n, "v"))?;
                (y, u, v)
            }
        };
        let mut checks = BTreeMap::new();
        checks.insert("e", (y == r || m.related(r, one, y)) && m.related(y, zero, v) && m.related(v, zero, u));
        let back = steps.last().is_none_or(|prev| m.related(prev.v, one, u) && m.related(u, one, prev.v));
        checks.insert("f", back);
        checks.insert("g", m.holds(u, &p()));
        checks.insert("h", m.holds(v, &marker));
        let chi = chi_formula(n);
        let distinct = m.holds(u, &and(chi.clone(), distinct_so_far.clone()));
        distinct_so_far = and(distinct_so_far, not(chi));
        steps.push(ChainStep { n, u, v, x: None, y: Some(y), checks, distinct });
    }
    Ok(steps)
}
