use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OmegaError;
use crate::formula::Axis;

/// First component: an order on `N` (plus a top point `omega` for the descending ones).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstFamily {
    /// `(omega+1, >)`
    Omega1Desc,
    /// `(omega+1, >=)`
    Omega1DescRefl,
    /// `(omega, <)`
    OmegaAsc,
    /// `(omega, <=)`
    OmegaAscRefl,
}

/// Second component over columns `0, 1, 2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondFamily {
    /// an extra root seeing every column, columns see nothing
    Onestep,
    Universal,
    /// `(omega, !=)`
    Difference,
}

impl FirstFamily {
    pub fn has_omega(self) -> bool {
        matches!(self, FirstFamily::Omega1Desc | FirstFamily::Omega1DescRefl)
    }

    pub fn is_reflexive(self) -> bool {
        matches!(self, FirstFamily::Omega1DescRefl | FirstFamily::OmegaAscRefl)
    }

    pub fn name(self) -> &'static str {
        match self {
            FirstFamily::Omega1Desc => "omega1_desc",
            FirstFamily::Omega1DescRefl => "omega1_desc_refl",
            FirstFamily::OmegaAsc => "omega_asc",
            FirstFamily::OmegaAscRefl => "omega_asc_refl",
        }
    }

    pub fn related(self, a: MVal, b: MVal) -> bool {
        let strict = match self {
            FirstFamily::Omega1Desc | FirstFamily::Omega1DescRefl => a > b,
            FirstFamily::OmegaAsc | FirstFamily::OmegaAscRefl => a < b,
        };
        strict || (self.is_reflexive() && a == b)
    }
}

impl SecondFamily {
    pub fn has_root(self) -> bool {
        self == SecondFamily::Onestep
    }

    pub fn name(self) -> &'static str {
        match self {
            SecondFamily::Onestep => "onestep",
            SecondFamily::Universal => "universal",
            SecondFamily::Difference => "difference",
        }
    }

    pub fn related(self, a: KVal, b: KVal) -> bool {
        match (self, a, b) {
            (_, _, KVal::Root) => false,
            (SecondFamily::Onestep, KVal::Root, _) => true,
            (SecondFamily::Onestep, KVal::Col(_), _) => false,
            (SecondFamily::Universal, _, _) => true,
            (SecondFamily::Difference, x, y) => x != y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    pub first: FirstFamily,
    pub second: SecondFamily,
}

impl Family {
    pub fn new(first: FirstFamily, second: SecondFamily) -> Self {
        Family { first, second }
    }

    pub fn admits(&self, p: Point) -> bool {
        (self.first.has_omega() || p.m != MVal::Omega) && (self.second.has_root() || p.k != KVal::Root)
    }

    pub fn related(&self, x: Point, axis: Axis, y: Point) -> bool {
        match axis {
            Axis::Zero => x.k == y.k && self.first.related(x.m, y.m),
            Axis::One => x.m == y.m && self.second.related(x.k, y.k),
        }
    }

    /// Points of the window `([0..n] + omega) x (root + [0..n])` that exist in this family,
    /// in increasing order.
    pub fn window(&self, n: u64) -> Vec<Point> {
        let ms = (0..=n).map(MVal::Fin).chain(self.first.has_omega().then_some(MVal::Omega));
        let ks: Vec<KVal> = self.second.has_root().then_some(KVal::Root).into_iter().chain((0..=n).map(KVal::Col)).collect();
        ms.flat_map(|m| ks.iter().map(move |&k| Point { m, k })).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.first.name(), self.second.name())
    }
}

impl FromStr for FirstFamily {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| OmegaError::Unsupported(format!("unknown first family `{s}`")))
    }
}

impl FromStr for SecondFamily {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| OmegaError::Unsupported(format!("unknown second family `{s}`")))
    }
}

/// First coordinate. Finite values sort before `Omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MVal {
    Fin(u64),
    Omega,
}

/// Second coordinate. `Root` sorts before every column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KVal {
    Root,
    Col(u64),
}

/// A point `(m, k)` of a product frame; ordered by `m`, then `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub m: MVal,
    pub k: KVal,
}

impl Point {
    pub fn new(m: MVal, k: KVal) -> Self {
        Point { m, k }
    }

    pub fn from_json(text: &str) -> Result<Point, OmegaError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            MVal::Fin(m) => write!(f, "({m}, ")?,
            MVal::Omega => write!(f, "(omega, ")?,
        }
        match self.k {
            KVal::Col(k) => write!(f, "{k})"),
            KVal::Root => write!(f, "root)"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Num(u64),
    Word(String),
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    m: Coord,
    k: Coord,
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m = match self.m {
            MVal::Fin(v) => Coord::Num(v),
            MVal::Omega => Coord::Word("omega".into()),
        };
        let k = match self.k {
            KVal::Col(v) => Coord::Num(v),
            KVal::Root => Coord::Word("root".into()),
        };
        PointJson { m, k }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PointJson::deserialize(d)?;
        let m = match j.m {
            Coord::Num(v) => MVal::Fin(v),
            Coord::Word(w) if w == "omega" => MVal::Omega,
            Coord::Word(w) => return Err(D::Error::custom(format!("m must be a number or \"omega\", got \"{w}\""))),
        };
        let k = match j.k {
            Coord::Num(v) => KVal::Col(v),
            Coord::Word(w) if w == "root" => KVal::Root,
            Coord::Word(w) => return Err(D::Error::custom(format!("k must be a number or \"root\", got \"{w}\""))),
        };
        Ok(Point { m, k })
    }
}
