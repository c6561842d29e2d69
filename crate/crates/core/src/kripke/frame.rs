use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::relation::{full_set, members, Relation, WorldSet, MAX_WORLDS};
use super::KripkeError;
use crate::formula::Axis;

/// A unimodal frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame1 {
    pub r: Relation,
}

/// A 2-frame: worlds `0..n` with two accessibility relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame2 {
    pub r0: Relation,
    pub r1: Relation,
}

/// A 2-frame with a valuation. Variables absent from the map denote the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame2,
    pub valuation: BTreeMap<String, WorldSet>,
}

impl Frame1 {
    pub fn new(r: Relation) -> Self {
        Frame1 { r }
    }

    pub fn world_count(&self) -> usize {
        self.r.len()
    }
}

impl Frame2 {
    // Relation::is_empty means "no edges", not "no worlds"
    #[allow(clippy::len_zero)]
    pub fn new(r0: Relation, r1: Relation) -> Result<Self, KripkeError> {
        if r0.len() != r1.len() {
            return Err(KripkeError::InvalidFrame("relations over different world counts".into()));
        }
        if r0.len() == 0 {
            return Err(KripkeError::InvalidFrame("a frame needs at least one world".into()));
        }
        Ok(Frame2 { r0, r1 })
    }

    pub fn world_count(&self) -> usize {
        self.r0.len()
    }

    pub fn all_worlds(&self) -> WorldSet {
        full_set(self.world_count())
    }

    pub fn rel(&self, axis: Axis) -> &Relation {
        match axis {
            Axis::Zero => &self.r0,
            Axis::One => &self.r1,
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Frame2 {
        Frame2 { r0: self.r0.permuted(perm), r1: self.r1.permuted(perm) }
    }
}

impl Model {
    pub fn new(frame: Frame2, valuation: BTreeMap<String, WorldSet>) -> Result<Self, KripkeError> {
        let all = frame.all_worlds();
        if let Some((name, _)) = valuation.iter().find(|(_, s)| **s & !all != 0) {
            return Err(KripkeError::InvalidFrame(format!("valuation of `{name}` mentions a missing world")));
        }
        Ok(Model { frame, valuation })
    }

    pub fn value(&self, var: &str) -> WorldSet {
        self.valuation.get(var).copied().unwrap_or(0)
    }
}

/// The product 2-frame. World `(u, v)` is numbered `u * |W1| + v`.
pub fn product_frame(f0: &Frame1, f1: &Frame1) -> Result<Frame2, KripkeError> {
    let (a, b) = (f0.world_count(), f1.world_count());
    if a * b > MAX_WORLDS {
        return Err(KripkeError::SizeBound(format!("product of {a} and {b} worlds exceeds {MAX_WORLDS}")));
    }
    let n = a * b;
    let mut r0 = Relation::empty(n);
    let mut r1 = Relation::empty(n);
    for u in 0..a {
        for v in 0..b {
            let w = u * b + v;
            for u2 in members(f0.r.row(u)) {
                r0.insert(w, u2 * b + v);
            }
            for v2 in members(f1.r.row(v)) {
                r1.insert(w, u * b + v2);
            }
        }
    }
    Frame2::new(r0, r1)
}

#[derive(Serialize, Deserialize)]
struct FrameJson {
    worlds: usize,
    r0: Vec<(usize, usize)>,
    r1: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    worlds: usize,
    r0: Vec<(usize, usize)>,
    r1: Vec<(usize, usize)>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct Frame1Json {
    worlds: usize,
    r: Vec<(usize, usize)>,
}

fn relation_from(worlds: usize, pairs: &[(usize, usize)], name: &str) -> Result<Relation, KripkeError> {
    if worlds == 0 || worlds > MAX_WORLDS {
        return Err(KripkeError::InvalidFrame(format!("world count must be in 1..={MAX_WORLDS}")));
    }
    Relation::from_pairs(worlds, pairs)
        .ok_or_else(|| KripkeError::InvalidFrame(format!("relation `{name}` has an out-of-range pair")))
}

fn set_from(worlds: usize, items: &[usize], name: &str) -> Result<WorldSet, KripkeError> {
    items.iter().try_fold(0u64, |acc, &w| {
        if w < worlds {
            Ok(acc | 1 << w)
        } else {
            Err(KripkeError::InvalidFrame(format!("valuation of `{name}` mentions world {w}")))
        }
    })
}

pub fn set_to_vec(s: WorldSet) -> Vec<usize> {
    members(s).collect()
}

impl Frame2 {
    pub fn from_json(text: &str) -> Result<Self, KripkeError> {
        let j: FrameJson = serde_json::from_str(text)?;
        Frame2::new(relation_from(j.worlds, &j.r0, "r0")?, relation_from(j.worlds, &j.r1, "r1")?)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(FrameJson { worlds: self.world_count(), r0: self.r0.pairs(), r1: self.r1.pairs() })
            .expect("frame serialises")
    }
}

impl Frame1 {
    pub fn from_json(text: &str) -> Result<Self, KripkeError> {
        let j: Frame1Json = serde_json::from_str(text)?;
        Ok(Frame1::new(relation_from(j.worlds, &j.r, "r")?))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(Frame1Json { worlds: self.world_count(), r: self.r.pairs() }).expect("frame serialises")
    }
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self, KripkeError> {
        let j: ModelJson = serde_json::from_str(text)?;
        let frame = Frame2::new(relation_from(j.worlds, &j.r0, "r0")?, relation_from(j.worlds, &j.r1, "r1")?)?;
        let valuation = j
            .valuation
            .iter()
            .map(|(k, v)| Ok((k.clone(), set_from(j.worlds, v, k)?)))
            .collect::<Result<_, KripkeError>>()?;
        Model::new(frame, valuation)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ModelJson {
            worlds: self.frame.world_count(),
            r0: self.frame.r0.pairs(),
            r1: self.frame.r1.pairs(),
            valuation: self.valuation.iter().map(|(k, v)| (k.clone(), set_to_vec(*v))).collect(),
        })
        .expect("model serialises")
    }
}
