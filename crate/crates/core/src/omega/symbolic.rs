use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::family::{Family, Point};
use super::preimage::{box_preimage, preimage, successors};
use super::region::Region;
use super::OmegaError;
use crate::formula::{Axis, Formula};

/// A valuation of variables as regions over an infinite product frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicModel {
    pub family: Family,
    pub valuation: BTreeMap<String, Region>,
}

impl SymbolicModel {
    pub fn new(family: Family, valuation: BTreeMap<String, Region>) -> Result<Self, OmegaError> {
        if let Some((name, _)) = valuation.iter().find(|(_, r)| r.family() != family) {
            return Err(OmegaError::Unsupported(format!("region for `{name}` is over another frame family")));
        }
        Ok(SymbolicModel { family, valuation })
    }

    pub fn value(&self, var: &str) -> Region {
        self.valuation.get(var).cloned().unwrap_or_else(|| Region::empty(self.family))
    }
}

/// Truth regions of every subformula of one formula.
#[derive(Debug, Clone)]
pub struct Evaluation {
    order: Vec<Formula>,
    regions: HashMap<Formula, Region>,
    top: Option<Formula>,
}

impl Evaluation {
    pub fn region(&self, f: &Formula) -> Option<&Region> {
        self.regions.get(f)
    }

    /// Subformulas, children before parents.
    pub fn subformulas(&self) -> &[Formula] {
        &self.order
    }

    pub fn root(&self) -> &Region {
        &self.regions[self.top.as_ref().expect("evaluated formula")]
    }
}

pub fn evaluate(sm: &SymbolicModel, f: &Formula) -> Evaluation {
    let mut ev = Evaluation { order: Vec::new(), regions: HashMap::new(), top: None };
    ev.extend(sm, f);
    ev
}

impl Evaluation {
    /// Adds the regions of `f` and its subformulas, reusing those already present.
    /// Afterwards `root()` is the region of `f`.
    pub fn extend(&mut self, sm: &SymbolicModel, f: &Formula) -> &Region {
        for g in f.subformulas() {
            if self.regions.contains_key(g) {
                continue;
            }
            let r = |x: &Formula| &self.regions[x];
            let region = match g {
                Formula::Var(v) => sm.value(v),
                Formula::Top => Region::universe(sm.family),
                Formula::Bottom => Region::empty(sm.family),
                Formula::Not(a) => r(a).complement(),
                Formula::And(a, b) => r(a).intersect(r(b)),
                Formula::Or(a, b) => r(a).union(r(b)),
                Formula::Implies(a, b) => r(a).complement().union(r(b)),
                Formula::Diamond(ax, a) => preimage(r(a), *ax),
                Formula::Box(ax, a) => box_preimage(r(a), *ax),
            };
            self.order.push(g.clone());
            self.regions.insert(g.clone(), region);
        }
        self.top = Some(f.clone());
        &self.regions[f]
    }
}

/// Points at which certificates record witnesses: the window up to this bound.
pub const CERTIFICATE_WINDOW: u64 = 6;

#[derive(Debug, Clone, Serialize)]
pub struct ModalLink {
    pub point: Point,
    pub successor: Point,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntry {
    pub formula: String,
    pub region: String,
    /// `diamond` entries link true points to a successor in the child's region;
    /// `box` entries link false points to a successor outside it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modality: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Axis>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<ModalLink>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
    #[serde(skip)]
    formulas: Vec<Formula>,
}

fn link_for(ev: &Evaluation, family: Family, g: &Formula, x: Point) -> Option<ModalLink> {
    let (ax, child, want_in) = match g {
        Formula::Diamond(ax, a) => (*ax, a, true),
        Formula::Box(ax, a) => (*ax, a, false),
        _ => return None,
    };
    let child_region = ev.region(child).expect("evaluated");
    let target = if want_in { child_region.clone() } else { child_region.complement() };
    let successor = successors(family, x, ax).intersect(&target).min_point()?;
    Some(ModalLink { point: x, successor })
}

pub fn certificate(sm: &SymbolicModel, ev: &Evaluation) -> Certificate {
    let window = sm.family.window(CERTIFICATE_WINDOW);
    let entries = ev
        .subformulas()
        .iter()
        .map(|g| {
            let region = ev.region(g).expect("evaluated");
            let (modality, index, sample): (_, _, Vec<Point>) = match g {
                Formula::Diamond(ax, _) => {
                    (Some("diamond"), Some(*ax), window.iter().copied().filter(|p| region.contains(*p)).collect())
                }
                Formula::Box(ax, _) => {
                    (Some("box"), Some(*ax), window.iter().copied().filter(|p| !region.contains(*p)).collect())
                }
                _ => (None, None, Vec::new()),
            };
            let links = sample
                .into_iter()
                .map(|x| link_for(ev, sm.family, g, x).expect("membership implies a witness"))
                .collect();
            CertificateEntry { formula: g.to_string(), region: region.to_string(), modality, index, links }
        })
        .collect();
    Certificate { entries, formulas: ev.subformulas().to_vec() }
}

impl Certificate {
    /// Re-checks every recorded link against the frame relation and region membership.
    pub fn verify(&self, sm: &SymbolicModel, ev: &Evaluation) -> Result<usize, String> {
        let mut checked = 0;
        for (g, entry) in self.formulas.iter().zip(&self.entries) {
            let (ax, child, diamond) = match g {
                Formula::Diamond(ax, a) => (*ax, a, true),
                Formula::Box(ax, a) => (*ax, a, false),
                _ => continue,
            };
            let here = ev.region(g).ok_or("missing region")?;
            let below = ev.region(child).ok_or("missing region")?;
            for link in &entry.links {
                let ok = sm.family.related(link.point, ax, link.successor)
                    && here.contains(link.point) == diamond
                    && below.contains(link.successor) == diamond;
                if !ok {
                    return Err(format!("link {} -> {} for `{}` does not re-verify", link.point, link.successor, g));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}

/// Truth region of `f` with a certificate for the sampled window.
pub fn eval_symbolic(sm: &SymbolicModel, f: &Formula) -> Result<(Region, Certificate), OmegaError> {
    let ev = evaluate(sm, f);
    let cert = certificate(sm, &ev);
    cert.verify(sm, &ev).map_err(OmegaError::Certificate)?;
    Ok((ev.root().clone(), cert))
}
