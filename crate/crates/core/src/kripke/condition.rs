//! First-order frame conditions and the tick-derived relation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::frame::{Frame2, Model};
use super::relation::{members, Relation};
use super::KripkeError;
use crate::formula::tick::TICK_VAR;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameCondition {
    /// `xR0y & xR0z -> y=z | yR0z | zR0y`
    #[serde(rename = "wcon0")]
    WeaklyConnected0,
    /// `xR0y & xR0z -> yR0z | zR0y | R0(y) = R0(z)`
    #[serde(rename = "wconminus0")]
    WconMinus0,
    #[serde(rename = "trans0")]
    Transitive0,
    /// `xR1yR1z -> x=z | xR1z`
    #[serde(rename = "ptrans1")]
    PseudoTransitive1,
    /// `xR0yR1z -> exists u. xR1uR0z`
    #[serde(rename = "lcom")]
    Lcom,
    /// `xR1yR0z -> exists u. xR0uR1z`
    #[serde(rename = "rcom")]
    Rcom,
    /// `xR1y & xR0z -> exists u. yR0u & zR1u`
    #[serde(rename = "conf")]
    Conf,
    /// some root sees every other world via R1
    #[serde(rename = "onestep1")]
    OneStepRooted1,
    #[serde(rename = "sym1")]
    Symmetric1,
    /// left commutativity of the tick relation with R1, at the root
    #[serde(rename = "lcom_m")]
    LcomM,
    #[serde(rename = "rcom_m")]
    RcomM,
    #[serde(rename = "conf_m")]
    ConfM,
    #[serde(rename = "wconminus_m")]
    WconMinusM,
}

impl FrameCondition {
    pub const FRAME_CONDITIONS: [FrameCondition; 9] = [
        FrameCondition::WeaklyConnected0,
        FrameCondition::WconMinus0,
        FrameCondition::Transitive0,
        FrameCondition::PseudoTransitive1,
        FrameCondition::Lcom,
        FrameCondition::Rcom,
        FrameCondition::Conf,
        FrameCondition::OneStepRooted1,
        FrameCondition::Symmetric1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameCondition::WeaklyConnected0 => "wcon0",
            FrameCondition::WconMinus0 => "wconminus0",
            FrameCondition::Transitive0 => "trans0",
            FrameCondition::PseudoTransitive1 => "ptrans1",
            FrameCondition::Lcom => "lcom",
            FrameCondition::Rcom => "rcom",
            FrameCondition::Conf => "conf",
            FrameCondition::OneStepRooted1 => "onestep1",
            FrameCondition::Symmetric1 => "sym1",
            FrameCondition::LcomM => "lcom_m",
            FrameCondition::RcomM => "rcom_m",
            FrameCondition::ConfM => "conf_m",
            FrameCondition::WconMinusM => "wconminus_m",
        }
    }

    pub fn is_model_relative(self) -> bool {
        matches!(self, FrameCondition::LcomM | FrameCondition::RcomM | FrameCondition::ConfM | FrameCondition::WconMinusM)
    }

    /// Conditions that mention only R0, or only R1.
    pub fn only_axis(self) -> Option<usize> {
        match self {
            FrameCondition::WeaklyConnected0 | FrameCondition::WconMinus0 | FrameCondition::Transitive0 => Some(0),
            FrameCondition::PseudoTransitive1 | FrameCondition::OneStepRooted1 | FrameCondition::Symmetric1 => {
                Some(1)
            }
            _ => None,
        }
    }
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameCondition {
    type Err = KripkeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::FRAME_CONDITIONS
            .iter()
            .chain(&[FrameCondition::LcomM, FrameCondition::RcomM, FrameCondition::ConfM, FrameCondition::WconMinusM])
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| KripkeError::UnknownCondition(s.to_string()))
    }
}

/// Outcome of a condition check: satisfied, or the worlds witnessing a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }
}

/// `x R̄ y` iff some `z` with `x R0 z` has the opposite `t`-value to `x`
/// and `z = y` or `z R0 y`.
pub fn tick_relation(m: &Model) -> Relation {
    let r0 = &m.frame.r0;
    let t = m.value(TICK_VAR);
    let n = r0.len();
    let mut out = Relation::empty(n);
    for x in 0..n {
        let flips = if t >> x & 1 == 1 { r0.row(x) & !t } else { r0.row(x) & t };
        out.set_row(x, flips | r0.image(flips));
    }
    out
}

fn weakly_connected(r: &Relation) -> Verdict {
    for x in 0..r.len() {
        for y in members(r.row(x)) {
            for z in members(r.row(x)) {
                if y != z && !r.contains(y, z) && !r.contains(z, y) {
                    return Verdict::Violated(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::Satisfied
}

pub(crate) fn wcon_minus(r: &Relation) -> Verdict {
    for x in 0..r.len() {
        for y in members(r.row(x)) {
            for z in members(r.row(x)) {
                if !r.contains(y, z) && !r.contains(z, y) && r.row(y) != r.row(z) {
                    return Verdict::Violated(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::Satisfied
}

fn transitive(r: &Relation) -> Verdict {
    for x in 0..r.len() {
        for y in members(r.row(x)) {
            let missing = r.row(y) & !r.row(x);
            if missing != 0 {
                return Verdict::Violated(vec![x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    Verdict::Satisfied
}

fn pseudo_transitive(r: &Relation) -> Verdict {
    for x in 0..r.len() {
        for y in members(r.row(x)) {
            let missing = r.row(y) & !r.row(x) & !(1 << x);
            if missing != 0 {
                return Verdict::Violated(vec![x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    Verdict::Satisfied
}

/// `x a y b z -> exists u. x c u d z`, reported as the triple `(x, y, z)`.
fn commutes(a: &Relation, b: &Relation, c: &Relation, d: &Relation) -> Verdict {
    for x in 0..a.len() {
        let reach = d.image(c.row(x));
        for y in members(a.row(x)) {
            let missing = b.row(y) & !reach;
            if missing != 0 {
                return Verdict::Violated(vec![x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    Verdict::Satisfied
}

/// `x a y & x b z -> exists u. y b' u & z a' u`; here `(a, b) = (R1, R0)` and
/// the closing square uses `(R0 from y, R1 from z)`.
fn confluent(first: &Relation, second: &Relation, from_first: &Relation, from_second: &Relation) -> Verdict {
    for x in 0..first.len() {
        for y in members(first.row(x)) {
            for z in members(second.row(x)) {
                if from_first.row(y) & from_second.row(z) == 0 {
                    return Verdict::Violated(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::Satisfied
}

fn one_step_rooted(r: &Relation) -> Verdict {
    let n = r.len();
    let mut missed = Vec::with_capacity(n);
    for root in 0..n {
        let others = super::relation::full_set(n) & !(1 << root);
        let gap = others & !r.row(root);
        if gap == 0 {
            return Verdict::Satisfied;
        }
        missed.push(gap.trailing_zeros() as usize);
    }
    Verdict::Violated(missed)
}

fn symmetric(r: &Relation) -> Verdict {
    for (x, y) in r.pairs() {
        if !r.contains(y, x) {
            return Verdict::Violated(vec![x, y]);
        }
    }
    Verdict::Satisfied
}

fn lcom_at_root(m: &Model, bar: &Relation, root: usize) -> Verdict {
    let r1 = &m.frame.r1;
    let reach = bar.image(r1.row(root));
    for y in members(bar.row(root)) {
        let missing = r1.row(y) & !reach;
        if missing != 0 {
            return Verdict::Violated(vec![root, y, missing.trailing_zeros() as usize]);
        }
    }
    Verdict::Satisfied
}

fn rcom_at_root(m: &Model, bar: &Relation, root: usize) -> Verdict {
    let (r0, r1) = (&m.frame.r0, &m.frame.r1);
    for x in members(r0.row(root) | 1 << root) {
        let reach = r1.image(bar.row(x));
        for y in members(r1.row(x)) {
            let missing = bar.row(y) & !reach;
            if missing != 0 {
                return Verdict::Violated(vec![x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    Verdict::Satisfied
}

fn conf_at_root(m: &Model, bar: &Relation, root: usize) -> Verdict {
    let (r0, r1) = (&m.frame.r0, &m.frame.r1);
    for x in members(r0.row(root)) {
        for z in members(bar.row(x)) {
            for y in members(r1.row(x)) {
                if bar.row(y) & r1.row(z) == 0 {
                    return Verdict::Violated(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::Satisfied
}

/// Checks `c` on `fr`. Model-relative conditions need `ctx = Some((model, root))`
/// and are evaluated on the model's frame.
pub fn check_condition(
    fr: &Frame2,
    c: FrameCondition,
    ctx: Option<(&Model, usize)>,
) -> Result<Verdict, KripkeError> {
    if c.is_model_relative() != ctx.is_some() {
        return Err(KripkeError::Context(c.name().to_string()));
    }
    let (r0, r1) = (&fr.r0, &fr.r1);
    Ok(match c {
        FrameCondition::WeaklyConnected0 => weakly_connected(r0),
        FrameCondition::WconMinus0 => wcon_minus(r0),
        FrameCondition::Transitive0 => transitive(r0),
        FrameCondition::PseudoTransitive1 => pseudo_transitive(r1),
        FrameCondition::Lcom => commutes(r0, r1, r1, r0),
        FrameCondition::Rcom => commutes(r1, r0, r0, r1),
        FrameCondition::Conf => confluent(r1, r0, r0, r1),
        FrameCondition::OneStepRooted1 => one_step_rooted(r1),
        FrameCondition::Symmetric1 => symmetric(r1),
        FrameCondition::LcomM | FrameCondition::RcomM | FrameCondition::ConfM | FrameCondition::WconMinusM => {
            let (m, root) = ctx.expect("checked above");
            if root >= m.frame.world_count() {
                return Err(KripkeError::InvalidFrame(format!("root {root} out of range")));
            }
            let bar = tick_relation(m);
            match c {
                FrameCondition::LcomM => lcom_at_root(m, &bar, root),
                FrameCondition::RcomM => rcom_at_root(m, &bar, root),
                FrameCondition::ConfM => conf_at_root(m, &bar, root),
                _ => wcon_minus(&bar),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn frame(n: usize, r0: &[(usize, usize)], r1: &[(usize, usize)]) -> Frame2 {
        Frame2::new(Relation::from_pairs(n, r0).unwrap(), Relation::from_pairs(n, r1).unwrap()).unwrap()
    }

    fn check(fr: &Frame2, c: FrameCondition) -> Verdict {
        check_condition(fr, c, None).unwrap()
    }

    #[test]
    fn linear_order_is_weakly_connected() {
        let fr = frame(3, &[(0, 1), (0, 2), (1, 2)], &[]);
        assert!(check(&fr, FrameCondition::WeaklyConnected0).holds());
    }

    #[test]
    fn incomparable_successors() {
        let fr = frame(3, &[(0, 1), (0, 2)], &[]);
        assert_eq!(check(&fr, FrameCondition::WeaklyConnected0), Verdict::Violated(vec![0, 1, 2]));
        // equal (empty) successor sets still give wcon-minus
        assert!(check(&fr, FrameCondition::WconMinus0).holds());
    }

    #[test]
    fn difference_relation_is_pseudo_transitive() {
        for n in 1..=6 {
            let mut r = Relation::full(n);
            for i in 0..n {
                r.remove(i, i);
            }
            let fr = Frame2::new(Relation::empty(n), r).unwrap();
            assert!(check(&fr, FrameCondition::PseudoTransitive1).holds());
            assert!(check(&fr, FrameCondition::Symmetric1).holds());
            assert!(check(&fr, FrameCondition::OneStepRooted1).holds());
        }
    }

    #[test]
    fn commutation_witnesses() {
        // 0 R0 1 R1 2 with nothing closing the square
        let fr = frame(3, &[(0, 1)], &[(1, 2)]);
        assert_eq!(check(&fr, FrameCondition::Lcom), Verdict::Violated(vec![0, 1, 2]));
        assert!(check(&fr, FrameCondition::Rcom).holds());
        let fr = frame(3, &[(1, 2)], &[(0, 1)]);
        assert_eq!(check(&fr, FrameCondition::Rcom), Verdict::Violated(vec![0, 1, 2]));
        let fr = frame(3, &[(0, 2)], &[(0, 1)]);
        assert_eq!(check(&fr, FrameCondition::Conf), Verdict::Violated(vec![0, 1, 2]));
    }

    #[test]
    fn context_must_match() {
        let fr = frame(1, &[], &[]);
        assert!(check_condition(&fr, FrameCondition::LcomM, None).is_err());
        let m = Model::new(fr.clone(), BTreeMap::new()).unwrap();
        assert!(check_condition(&fr, FrameCondition::Lcom, Some((&m, 0))).is_err());
        assert!(check_condition(&fr, FrameCondition::LcomM, Some((&m, 0))).unwrap().holds());
    }

    #[test]
    fn tick_relation_examples() {
        let fr = frame(3, &[(0, 1), (0, 2), (1, 2)], &[]);
        let uniform = Model::new(fr.clone(), BTreeMap::from([("t".to_string(), 0b111)])).unwrap();
        assert!(tick_relation(&uniform).is_empty());
        let m = Model::new(fr, BTreeMap::from([("t".to_string(), 0b101)])).unwrap();
        let bar = tick_relation(&m);
        assert_eq!(bar.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn names_parse_back() {
        for c in FrameCondition::FRAME_CONDITIONS {
            assert_eq!(c.name().parse::<FrameCondition>().unwrap(), c);
        }
        assert!("bogus".parse::<FrameCondition>().is_err());
    }
}
