use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::family::{Family, FirstFamily, SecondFamily};
use super::natset::{NatSet, Parity};
use super::region::{Cell, Diag, KPart, MPart, Region};
use super::symbolic::SymbolicModel;
use super::OmegaError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "atom", rename_all = "snake_case", deny_unknown_fields)]
enum Atom {
    MEqOmega,
    MGeC { c: u64 },
    MEqC { c: u64 },
    MEven,
    KRoot,
    KEqC { c: u64 },
    KGeC { c: u64 },
    KEven,
    MEqKPlus { d: i64 },
    MGtKPlus { d: i64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RegionExpr {
    Op { op: String, args: Vec<RegionExpr> },
    Atom(Atom),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    first: FirstFamily,
    second: SecondFamily,
    #[serde(default)]
    valuation: BTreeMap<String, RegionExpr>,
}

fn c64(c: u64) -> i64 {
    i64::try_from(c).unwrap_or(i64::MAX / 4)
}

fn atom_region(family: Family, a: &Atom) -> Result<Region, OmegaError> {
    let all_m = MPart::Fin(NatSet::ALL);
    let all_k = KPart::Fin(NatSet::ALL);
    let every_k = |m: MPart, d: Diag| {
        let root = Region::cell(family, m, KPart::Root, d);
        root.union(&Region::cell(family, m, all_k, d))
    };
    let every_m = |k: KPart| Region::cell(family, all_m, k, Diag::FREE).union(&Region::cell(family, MPart::Omega, k, Diag::FREE));
    Ok(match a {
        Atom::MEqOmega => {
            if !family.first.has_omega() {
                return Err(OmegaError::Unsupported(format!("m_eq_omega over {}", family.first.name())));
            }
            every_k(MPart::Omega, Diag::FREE)
        }
        Atom::MGeC { c } => every_k(MPart::Fin(NatSet::at_least(c64(*c))), Diag::FREE).union(&atom_region(family, &Atom::MEqOmega).unwrap_or_else(|_| Region::empty(family))),
        Atom::MEqC { c } => every_k(MPart::Fin(NatSet::point(c64(*c)).expect("non-negative")), Diag::FREE),
        Atom::MEven => every_k(MPart::Fin(NatSet::with_parity(Parity::Even)), Diag::FREE),
        Atom::KRoot => {
            if !family.second.has_root() {
                return Err(OmegaError::Unsupported(format!("k_root over {}", family.second.name())));
            }
            every_m(KPart::Root)
        }
        Atom::KEqC { c } => every_m(KPart::Fin(NatSet::point(c64(*c)).expect("non-negative"))),
        Atom::KGeC { c } => every_m(KPart::Fin(NatSet::at_least(c64(*c)))),
        Atom::KEven => every_m(KPart::Fin(NatSet::with_parity(Parity::Even))),
        Atom::MEqKPlus { d } => Region::cell(family, all_m, all_k, Diag::exactly(*d)),
        Atom::MGtKPlus { d } => {
            let finite = Region::cell(family, all_m, all_k, Diag::at_least(d + 1));
            finite.union(&Region::cell(family, MPart::Omega, all_k, Diag::FREE))
        }
    })
}

fn expr_region(family: Family, e: &RegionExpr) -> Result<Region, OmegaError> {
    match e {
        RegionExpr::Atom(a) => atom_region(family, a),
        RegionExpr::Op { op, args } => {
            let regions = args.iter().map(|a| expr_region(family, a)).collect::<Result<Vec<_>, _>>()?;
            match op.as_str() {
                "or" => Ok(regions.iter().fold(Region::empty(family), |acc, r| acc.union(r))),
                "and" => Ok(regions.iter().fold(Region::universe(family), |acc, r| acc.intersect(r))),
                "not" if regions.len() == 1 => Ok(regions[0].complement()),
                "not" => Err(OmegaError::Unsupported("`not` takes exactly one argument".into())),
                other => Err(OmegaError::Unsupported(format!("unknown region operator `{other}`"))),
            }
        }
    }
}

pub fn region_from_json(family: Family, v: &Value) -> Result<Region, OmegaError> {
    let e: RegionExpr = serde_json::from_value(v.clone())?;
    expr_region(family, &e)
}

fn atom(a: Atom) -> Value {
    serde_json::to_value(a).expect("atoms serialise")
}

fn not(v: Value) -> Value {
    json!({"op": "not", "args": [v]})
}

fn set_atoms(out: &mut Vec<Value>, s: NatSet, eq: fn(u64) -> Atom, ge: fn(u64) -> Atom, even: Atom) {
    if s.is_singleton() {
        out.push(atom(eq(s.lo() as u64)));
        return;
    }
    if s.lo() > 0 {
        out.push(atom(ge(s.lo() as u64)));
    }
    if let Some(h) = s.hi() {
        out.push(not(atom(ge(h as u64 + 1))));
    }
    match s.parity() {
        Some(Parity::Even) => out.push(atom(even)),
        Some(Parity::Odd) => out.push(not(atom(even))),
        None => {}
    }
}

fn cell_json(family: Family, c: &Cell) -> Value {
    let mut lits = Vec::new();
    match c.m() {
        MPart::Omega => lits.push(atom(Atom::MEqOmega)),
        MPart::Fin(s) => {
            if family.first.has_omega() {
                lits.push(not(atom(Atom::MEqOmega)));
            }
            set_atoms(&mut lits, s, |c| Atom::MEqC { c }, |c| Atom::MGeC { c }, Atom::MEven);
        }
    }
    match c.k() {
        KPart::Root => lits.push(atom(Atom::KRoot)),
        KPart::Fin(s) => {
            if family.second.has_root() {
                lits.push(not(atom(Atom::KRoot)));
            }
            set_atoms(&mut lits, s, |c| Atom::KEqC { c }, |c| Atom::KGeC { c }, Atom::KEven);
        }
    }
    let d = c.d();
    match (d.lo, d.hi) {
        (Some(l), Some(h)) if l == h => lits.push(atom(Atom::MEqKPlus { d: l })),
        (l, h) => {
            if let Some(l) = l {
                lits.push(atom(Atom::MGtKPlus { d: l - 1 }));
            }
            if let Some(h) = h {
                lits.push(not(atom(Atom::MGtKPlus { d: h })));
            }
        }
    }
    json!({"op": "and", "args": lits})
}

pub fn region_to_json(r: &Region) -> Value {
    json!({"op": "or", "args": r.cells().iter().map(|c| cell_json(r.family(), c)).collect::<Vec<_>>()})
}

impl SymbolicModel {
    pub fn from_json(text: &str) -> Result<SymbolicModel, OmegaError> {
        let j: ModelJson = serde_json::from_str(text)?;
        let family = Family::new(j.first, j.second);
        let valuation = j
            .valuation
            .iter()
            .map(|(k, e)| Ok((k.clone(), expr_region(family, e)?)))
            .collect::<Result<BTreeMap<_, _>, OmegaError>>()?;
        SymbolicModel::new(family, valuation)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "first": self.family.first,
            "second": self.family.second,
            "valuation": self.valuation.iter().map(|(k, r)| (k.clone(), region_to_json(r))).collect::<BTreeMap<_, _>>(),
        })
    }
}
