use std::fmt;

use super::family::{Family, KVal, MVal, Point};
use super::natset::{NatSet, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MPart {
    Fin(NatSet),
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KPart {
    Root,
    Fin(NatSet),
}

/// Bounds on `m - k`; only meaningful when both coordinates are finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diag {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Diag {
    pub const FREE: Diag = Diag { lo: None, hi: None };

    pub fn exactly(d: i64) -> Diag {
        Diag { lo: Some(d), hi: Some(d) }
    }

    pub fn at_least(d: i64) -> Diag {
        Diag { lo: Some(d), hi: None }
    }

    pub fn at_most(d: i64) -> Diag {
        Diag { lo: None, hi: Some(d) }
    }

    pub fn is_free(&self) -> bool {
        *self == Diag::FREE
    }

    fn contains(&self, d: i64) -> bool {
        self.lo.is_none_or(|l| d >= l) && self.hi.is_none_or(|h| d <= h)
    }

    fn intersect(&self, o: &Diag) -> Diag {
        let pick = |a: Option<i64>, b: Option<i64>, f: fn(i64, i64) -> i64| match (a, b) {
            (Some(x), Some(y)) => Some(f(x, y)),
            (x, y) => x.or(y),
        };
        Diag { lo: pick(self.lo, o.lo, i64::max), hi: pick(self.hi, o.hi, i64::min) }
    }

    fn union(&self, o: &Diag) -> Option<Diag> {
        let (a, b) = if self.lo.unwrap_or(i64::MIN) <= o.lo.unwrap_or(i64::MIN) { (self, o) } else { (o, self) };
        // b starts no later than one past a's end
        if let (Some(ah), Some(bl)) = (a.hi, b.lo) {
            if bl > ah + 1 {
                return None;
            }
        }
        let hi = match (a.hi, b.hi) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
        Some(Diag { lo: a.lo, hi })
    }

    /// Offsets mentioned by the bounds.
    pub fn offsets(&self) -> impl Iterator<Item = i64> {
        self.lo.into_iter().chain(self.hi)
    }
}

/// A conjunction of constraints on `(m, k)`: a set of first coordinates, a set of
/// second coordinates, and a band for `m - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    m: MPart,
    k: KPart,
    d: Diag,
}

fn as_i64(x: u64) -> i64 {
    i64::try_from(x).expect("coordinate fits in i64")
}

fn m_value(v: MVal) -> Option<i64> {
    match v {
        MVal::Fin(x) => Some(as_i64(x)),
        MVal::Omega => None,
    }
}

fn k_value(v: KVal) -> Option<i64> {
    match v {
        KVal::Col(x) => Some(as_i64(x)),
        KVal::Root => None,
    }
}

fn tighten(s: NatSet, lo: Option<i64>, hi: Option<i64>) -> Option<NatSet> {
    let hi = match (s.hi(), hi) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    NatSet::new(s.lo().max(lo.unwrap_or(0)), hi, s.parity())
}

impl Cell {
    /// The normalised cell, or `None` when no point satisfies it.
    pub fn new(m: MPart, k: KPart, d: Diag) -> Option<Cell> {
        let (MPart::Fin(mut ms), KPart::Fin(mut ks)) = (m, k) else {
            return Some(Cell { m, k, d: Diag::FREE });
        };
        let mut d = d;
        for _ in 0..3 {
            if let (Some(l), Some(h)) = (d.lo, d.hi) {
                if l > h {
                    return None;
                }
            }
            ms = tighten(ms, d.lo.map(|l| ks.lo() + l), ks.hi().zip(d.hi).map(|(a, b)| a + b))?;
            ks = tighten(ks, d.hi.map(|h| ms.lo() - h), ms.hi().zip(d.lo).map(|(a, b)| a - b))?;
        }
        if d.lo.is_some_and(|l| ks.hi().is_some_and(|kh| l <= ms.lo() - kh)) {
            d.lo = None;
        }
        if d.hi.is_some_and(|h| ms.hi().is_some_and(|mh| h >= mh - ks.lo())) {
            d.hi = None;
        }
        let cell = Cell { m: MPart::Fin(ms), k: KPart::Fin(ks), d };
        cell.min_point().map(|_| cell)
    }

    pub fn m(&self) -> MPart {
        self.m
    }

    pub fn k(&self) -> KPart {
        self.k
    }

    pub fn d(&self) -> Diag {
        self.d
    }

    pub fn contains(&self, p: Point) -> bool {
        let m_ok = match (self.m, p.m) {
            (MPart::Omega, MVal::Omega) => true,
            (MPart::Fin(s), MVal::Fin(x)) => s.contains(as_i64(x)),
            _ => false,
        };
        let k_ok = match (self.k, p.k) {
            (KPart::Root, KVal::Root) => true,
            (KPart::Fin(s), KVal::Col(x)) => s.contains(as_i64(x)),
            _ => false,
        };
        m_ok && k_ok
            && match (m_value(p.m), k_value(p.k)) {
                (Some(m), Some(k)) => self.d.contains(m - k),
                _ => true,
            }
    }

    /// Least point by `(m, k)`, root before columns and `omega` after every finite `m`.
    pub fn min_point(&self) -> Option<Point> {
        match (self.m, self.k) {
            (MPart::Omega, KPart::Root) => Some(Point::new(MVal::Omega, KVal::Root)),
            (MPart::Omega, KPart::Fin(ks)) => Some(Point::new(MVal::Omega, KVal::Col(ks.lo() as u64))),
            (MPart::Fin(ms), KPart::Root) => Some(Point::new(MVal::Fin(ms.lo() as u64), KVal::Root)),
            (MPart::Fin(ms), KPart::Fin(ks)) => {
                if self.d.is_free() {
                    return Some(Point::new(MVal::Fin(ms.lo() as u64), KVal::Col(ks.lo() as u64)));
                }
                // past this bound the pattern repeats with period two
                let horizon = [Some(ms.lo()), Some(ks.lo()), ks.hi()]
                    .into_iter()
                    .flatten()
                    .flat_map(|k| [Some(k), self.d.lo.map(|l| k + l), self.d.hi.map(|h| k + h)])
                    .flatten()
                    .max()
                    .expect("non-empty")
                    + 4;
                let last = ms.hi().map_or(horizon, |h| h.min(horizon));
                let mut m = ms.lo();
                while m <= last {
                    let window = NatSet::new(self.d.hi.map_or(0, |h| m - h), self.d.lo.map(|l| m - l), None);
                    if let Some(k) = window.and_then(|w| w.intersect(&ks)) {
                        return Some(Point::new(MVal::Fin(m as u64), KVal::Col(k.lo() as u64)));
                    }
                    m += ms.step();
                }
                None
            }
        }
    }

    pub fn intersect(&self, o: &Cell) -> Option<Cell> {
        let m = match (self.m, o.m) {
            (MPart::Omega, MPart::Omega) => MPart::Omega,
            (MPart::Fin(a), MPart::Fin(b)) => MPart::Fin(a.intersect(&b)?),
            _ => return None,
        };
        let k = match (self.k, o.k) {
            (KPart::Root, KPart::Root) => KPart::Root,
            (KPart::Fin(a), KPart::Fin(b)) => KPart::Fin(a.intersect(&b)?),
            _ => return None,
        };
        Cell::new(m, k, self.d.intersect(&o.d))
    }

    /// Disjoint cells covering `self \ o`.
    pub fn minus(&self, o: &Cell) -> Vec<Cell> {
        let Some(common) = self.intersect(o) else {
            return vec![*self];
        };
        let mut out = Vec::new();
        if let (MPart::Fin(a), MPart::Fin(b)) = (self.m, o.m) {
            out.extend(a.minus(&b).into_iter().filter_map(|s| Cell::new(MPart::Fin(s), self.k, self.d)));
        }
        let m = match (self.m, o.m) {
            (MPart::Fin(a), MPart::Fin(b)) => MPart::Fin(a.intersect(&b).expect("overlap")),
            _ => self.m,
        };
        if let (KPart::Fin(a), KPart::Fin(b)) = (self.k, o.k) {
            out.extend(a.minus(&b).into_iter().filter_map(|s| Cell::new(m, KPart::Fin(s), self.d)));
        }
        let k = match (self.k, o.k) {
            (KPart::Fin(a), KPart::Fin(b)) => KPart::Fin(a.intersect(&b).expect("overlap")),
            _ => self.k,
        };
        if let Some(l) = o.d.lo {
            out.extend(Cell::new(m, k, self.d.intersect(&Diag::at_most(l - 1))));
        }
        if let Some(h) = o.d.hi {
            let band = Diag { lo: Some(h + 1), hi: None };
            out.extend(Cell::new(m, k, self.d.intersect(&band)));
        }
        debug_assert!(out.iter().all(|c| c.intersect(&common).is_none()));
        out
    }

    pub fn is_subset(&self, o: &Cell) -> bool {
        self.minus(o).is_empty()
    }

    /// The union as one cell, when the two differ in a single component.
    fn merge(&self, o: &Cell) -> Option<Cell> {
        if self.m == o.m && self.k == o.k {
            return Cell::new(self.m, self.k, self.d.union(&o.d)?);
        }
        if self.k == o.k && self.d == o.d {
            if let (MPart::Fin(a), MPart::Fin(b)) = (self.m, o.m) {
                return Cell::new(MPart::Fin(a.union(&b)?), self.k, self.d);
            }
        }
        if self.m == o.m && self.d == o.d {
            if let (KPart::Fin(a), KPart::Fin(b)) = (self.k, o.k) {
                return Cell::new(self.m, KPart::Fin(a.union(&b)?), self.d);
            }
        }
        None
    }

    pub fn offsets(&self) -> impl Iterator<Item = i64> {
        self.d.offsets()
    }
}

/// A finite union of cells over one frame family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    family: Family,
    cells: Vec<Cell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Union,
    Intersect,
    Complement,
}

impl Region {
    pub fn empty(family: Family) -> Region {
        Region { family, cells: Vec::new() }
    }

    pub fn universe(family: Family) -> Region {
        let ms = std::iter::once(MPart::Fin(NatSet::ALL)).chain(family.first.has_omega().then_some(MPart::Omega));
        let ks: Vec<KPart> =
            family.second.has_root().then_some(KPart::Root).into_iter().chain([KPart::Fin(NatSet::ALL)]).collect();
        let cells = ms.flat_map(|m| ks.iter().map(move |&k| Cell { m, k, d: Diag::FREE })).collect();
        Region { family, cells }
    }

    /// Builds a region from arbitrary cells, dropping parts outside the family's points.
    pub fn from_cells(family: Family, cells: impl IntoIterator<Item = Cell>) -> Region {
        let cells = cells
            .into_iter()
            .filter(|c| {
                (family.first.has_omega() || c.m != MPart::Omega) && (family.second.has_root() || c.k != KPart::Root)
            })
            .collect();
        Region { family, cells: simplify(cells) }
    }

    pub fn cell(family: Family, m: MPart, k: KPart, d: Diag) -> Region {
        Region::from_cells(family, Cell::new(m, k, d))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, p: Point) -> bool {
        self.family.admits(p) && self.cells.iter().any(|c| c.contains(p))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The least member, or `None` when the region is empty.
    pub fn min_point(&self) -> Option<Point> {
        self.cells.iter().filter_map(Cell::min_point).min()
    }

    pub fn union(&self, o: &Region) -> Region {
        assert_eq!(self.family, o.family, "regions over different families");
        Region { family: self.family, cells: simplify(self.cells.iter().chain(&o.cells).copied().collect()) }
    }

    pub fn intersect(&self, o: &Region) -> Region {
        assert_eq!(self.family, o.family, "regions over different families");
        let cells = self.cells.iter().flat_map(|a| o.cells.iter().filter_map(move |b| a.intersect(b))).collect();
        Region { family: self.family, cells: simplify(cells) }
    }

    pub fn complement(&self) -> Region {
        let mut pieces = Region::universe(self.family).cells;
        for c in &self.cells {
            pieces = pieces.iter().flat_map(|p| p.minus(c)).collect();
            if pieces.len() > 8 {
                pieces = simplify(pieces);
            }
        }
        Region { family: self.family, cells: simplify(pieces) }
    }

    pub fn minus(&self, o: &Region) -> Region {
        self.intersect(&o.complement())
    }

    pub fn combine(op: CombineOp, a: &Region, b: Option<&Region>) -> Region {
        match (op, b) {
            (CombineOp::Union, Some(b)) => a.union(b),
            (CombineOp::Intersect, Some(b)) => a.intersect(b),
            (CombineOp::Complement, None) => a.complement(),
            _ => panic!("{op:?} takes {} operand(s)", if op == CombineOp::Complement { 1 } else { 2 }),
        }
    }

    pub fn max_offset(&self) -> i64 {
        self.cells.iter().flat_map(Cell::offsets).map(i64::abs).max().unwrap_or(0)
    }
}

fn simplify(cells: Vec<Cell>) -> Vec<Cell> {
    let mut cells: Vec<Cell> = cells.into_iter().filter_map(|c| Cell::new(c.m, c.k, c.d)).collect();
    loop {
        cells.sort();
        cells.dedup();
        let mut keep = vec![true; cells.len()];
        for i in 0..cells.len() {
            for j in 0..cells.len() {
                if i != j && keep[j] && cells[i].is_subset(&cells[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut it = keep.iter();
        cells.retain(|_| *it.next().expect("same length"));
        let mut merged = false;
        'outer: for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if let Some(c) = cells[i].merge(&cells[j]) {
                    cells.swap_remove(j);
                    cells[i] = c;
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            cells.sort();
            return cells;
        }
    }
}

fn set_literals(out: &mut Vec<String>, var: &str, s: NatSet) {
    if s.is_singleton() {
        out.push(format!("{var}={}", s.lo()));
        return;
    }
    if s.lo() > 0 {
        out.push(format!("{var}>={}", s.lo()));
    }
    if let Some(h) = s.hi() {
        out.push(format!("{var}<={h}"));
    }
    match s.parity() {
        Some(Parity::Even) => out.push(format!("even({var})")),
        Some(Parity::Odd) => out.push(format!("odd({var})")),
        None => {}
    }
}

impl Cell {
    fn literals(&self, family: Family) -> Vec<String> {
        let mut out = Vec::new();
        match self.m {
            MPart::Omega => out.push("m=omega".into()),
            MPart::Fin(s) => {
                if family.first.has_omega() {
                    out.push("m<omega".into());
                }
                set_literals(&mut out, "m", s);
            }
        }
        match self.k {
            KPart::Root => out.push("k=root".into()),
            KPart::Fin(s) => {
                if family.second.has_root() {
                    out.push("k!=root".into());
                }
                set_literals(&mut out, "k", s);
            }
        }
        match (self.d.lo, self.d.hi) {
            (Some(l), Some(h)) if l == h => out.push(format!("m=k{}", offset(l))),
            (l, h) => {
                if let Some(l) = l {
                    out.push(format!("m>k{}", offset(l - 1)));
                }
                if let Some(h) = h {
                    out.push(format!("m<k{}", offset(h + 1)));
                }
            }
        }
        out
    }
}

fn offset(d: i64) -> String {
    if d == 0 {
        String::new()
    } else {
        format!("{d:+}")
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return f.write_str("false");
        }
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                let lits = c.literals(self.family);
                if lits.is_empty() {
                    "true".to_string()
                } else if self.cells.len() > 1 && lits.len() > 1 {
                    format!("({})", lits.join(" & "))
                } else {
                    lits.join(" & ")
                }
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}
