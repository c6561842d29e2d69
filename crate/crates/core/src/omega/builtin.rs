use std::collections::BTreeMap;

use super::family::{Family, FirstFamily, KVal, MVal, Point, SecondFamily};
use super::natset::{NatSet, Parity};
use super::region::{Diag, KPart, MPart, Region};
use super::symbolic::SymbolicModel;
use super::OmegaError;

pub const BUILTIN_NAMES: [&str; 6] =
    ["lemma_satone", "lemma_satoner", "lemma_satoner_refl", "lemma_sattwo", "fasc_witness", "fdesc_witness"];

/// A witness model together with the corpus formula it satisfies and where.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: &'static str,
    pub model: SymbolicModel,
    pub formula: &'static str,
    pub target: Point,
}

/// `m = k + d` on finite rows and columns.
fn diagonal(family: Family, d: i64) -> Region {
    Region::cell(family, MPart::Fin(NatSet::ALL), KPart::Fin(NatSet::ALL), Diag::exactly(d))
}

/// Even rows from 2 up, every column and the root.
fn even_rows_from_two(family: Family) -> Region {
    let rows = MPart::Fin(NatSet::new(2, None, Some(Parity::Even)).expect("non-empty"));
    Region::cell(family, rows, KPart::Root, Diag::FREE).union(&Region::cell(
        family,
        rows,
        KPart::Fin(NatSet::ALL),
        Diag::FREE,
    ))
}

fn model(family: Family, vars: Vec<(&str, Region)>) -> SymbolicModel {
    SymbolicModel::new(family, vars.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>())
        .expect("regions built over the model's family")
}

pub fn builtin(name: &str) -> Option<Builtin> {
    use FirstFamily::*;
    use SecondFamily::*;
    let omega_root = Point::new(MVal::Omega, KVal::Root);
    let (first, second, formula, target) = match name {
        "lemma_satone" => (Omega1Desc, Onestep, "phi_inf", omega_root),
        "lemma_satoner" => (Omega1Desc, Onestep, "phi_inf_bullet", omega_root),
        "lemma_satoner_refl" => (Omega1DescRefl, Onestep, "phi_inf_bullet", omega_root),
        "lemma_sattwo" => (Omega1Desc, Difference, "psi_inf", Point::new(MVal::Omega, KVal::Col(0))),
        "fasc_witness" => (OmegaAsc, Onestep, "fasc", Point::new(MVal::Fin(0), KVal::Root)),
        "fdesc_witness" => (Omega1Desc, Onestep, "fdesc", omega_root),
        _ => return None,
    };
    let family = Family::new(first, second);
    let vars = match name {
        "lemma_satoner" | "lemma_satoner_refl" => {
            vec![("t", even_rows_from_two(family)), ("p", diagonal(family, 1))]
        }
        "lemma_sattwo" => vec![("p", diagonal(family, 0)), ("q", diagonal(family, 1))],
        _ => vec![("p", diagonal(family, 0))],
    };
    let name = BUILTIN_NAMES.iter().find(|n| **n == name).expect("listed");
    Some(Builtin { name, model: model(family, vars), formula, target })
}

pub fn builtin_witness(name: &str) -> Result<SymbolicModel, OmegaError> {
    builtin(name).map(|b| b.model).ok_or_else(|| OmegaError::UnknownWitness(name.to_string()))
}
