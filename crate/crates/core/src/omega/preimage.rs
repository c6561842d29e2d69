use super::family::{FirstFamily, KVal, MVal, Point, SecondFamily};
use super::natset::{NatSet, Parity};
use super::region::{Cell, Diag, KPart, MPart, Region};
use crate::formula::Axis;

/// An extreme element of a slice, either fixed or `y + c` for the free coordinate `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Const(i64),
    Shift(i64),
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    y: NatSet,
    min: Bound,
    max: Option<Bound>,
}

/// Splits `ys` into pieces `y < c` and `y >= c`.
fn split_at(sets: Vec<NatSet>, c: i64) -> Vec<NatSet> {
    let below = NatSet::new(0, Some(c - 1), None);
    let above = NatSet::at_least(c);
    sets.iter().flat_map(|s| [below.and_then(|b| s.intersect(&b)), s.intersect(&above)]).flatten().collect()
}

/// For `y` in `ys`, the slice `S(y) = xs ∩ [y+dl, y+dh]`. Returns the parts of `ys`
/// where the slice is non-empty, each with closed forms for its least and greatest element.
fn affine_pieces(xs: NatSet, dl: Option<i64>, dh: Option<i64>, ys: NatSet) -> Vec<Piece> {
    let mut parts = if xs.parity().is_some() { ys.split_parity() } else { vec![ys] };
    if let Some(l) = dl {
        parts = split_at(parts, xs.lo() - l);
    }
    if let (Some(h), Some(xh)) = (dh, xs.hi()) {
        parts = split_at(parts, xh - h + 1);
    }
    let mut out = Vec::new();
    for p in parts {
        // distance from `y + off` to the nearest member of xs's parity class
        let adjust = |off: i64| match xs.parity() {
            None => 0,
            Some(par) => {
                let py = p.uniform_parity().expect("split by parity");
                let shifted = Parity::of(off + i64::from(py == Parity::Odd));
                i64::from(shifted != par)
            }
        };
        let min = match dl {
            Some(l) if p.lo() >= xs.lo() - l => Bound::Shift(l + adjust(l)),
            _ => Bound::Const(xs.lo()),
        };
        let max = match (dh, xs.hi()) {
            (None, None) => None,
            (Some(h), None) => Some(Bound::Shift(h - adjust(h))),
            (None, Some(xh)) => Some(Bound::Const(xh)),
            (Some(h), Some(xh)) => Some(if p.hi().is_some_and(|ph| ph <= xh - h) {
                Bound::Shift(h - adjust(h))
            } else {
                Bound::Const(xh)
            }),
        };
        let y = match (min, max) {
            (_, None) => Some(p),
            (Bound::Const(a), Some(Bound::Const(b))) => (a <= b).then_some(p),
            (Bound::Shift(a), Some(Bound::Shift(b))) => (a <= b).then_some(p),
            (Bound::Shift(a), Some(Bound::Const(b))) => NatSet::at_most(b - a).and_then(|s| p.intersect(&s)),
            (Bound::Const(a), Some(Bound::Shift(b))) => p.intersect(&NatSet::at_least(a - b)),
        };
        out.extend(y.map(|y| Piece { y, min, max }));
    }
    out
}

fn push(out: &mut Vec<Cell>, m: MPart, k: KPart, d: Diag) {
    out.extend(Cell::new(m, k, d));
}

fn index0(first: FirstFamily, c: &Cell, out: &mut Vec<Cell>) {
    let strict = i64::from(!first.is_reflexive());
    let desc = first.has_omega();
    let all = MPart::Fin(NatSet::ALL);
    match c.m() {
        MPart::Omega => {
            if first.is_reflexive() {
                push(out, MPart::Omega, c.k(), Diag::FREE);
            }
        }
        MPart::Fin(s) if c.d().is_free() => {
            if desc {
                push(out, MPart::Fin(NatSet::at_least(s.lo() + strict)), c.k(), Diag::FREE);
                push(out, MPart::Omega, c.k(), Diag::FREE);
            } else {
                match s.hi() {
                    None => push(out, all, c.k(), Diag::FREE),
                    Some(h) => {
                        if let Some(below) = NatSet::at_most(h - strict) {
                            push(out, MPart::Fin(below), c.k(), Diag::FREE);
                        }
                    }
                }
            }
        }
        MPart::Fin(s) => {
            let KPart::Fin(ks) = c.k() else { unreachable!("diagonal bands need a column") };
            for piece in affine_pieces(s, c.d().lo, c.d().hi, ks) {
                let k = KPart::Fin(piece.y);
                if desc {
                    match piece.min {
                        Bound::Const(v) => push(out, MPart::Fin(NatSet::at_least(v + strict)), k, Diag::FREE),
                        Bound::Shift(a) => push(out, all, k, Diag::at_least(a + strict)),
                    }
                    push(out, MPart::Omega, k, Diag::FREE);
                } else {
                    match piece.max {
                        None => push(out, all, k, Diag::FREE),
                        Some(Bound::Const(v)) => {
                            if let Some(below) = NatSet::at_most(v - strict) {
                                push(out, MPart::Fin(below), k, Diag::FREE);
                            }
                        }
                        Some(Bound::Shift(b)) => push(out, all, k, Diag::at_most(b - strict)),
                    }
                }
            }
        }
    }
}

/// Splits a row set by whether the slice has exactly one element, returning
/// `(rows with at least two, rows with exactly one together with that element)`.
fn split_singleton(m: MPart, min: Bound, max: Option<Bound>) -> (Vec<MPart>, Vec<(MPart, Bound)>) {
    let Some(max) = max else {
        return (vec![m], Vec::new());
    };
    match (min, max) {
        (Bound::Const(a), Bound::Const(b)) | (Bound::Shift(a), Bound::Shift(b)) => {
            if a == b {
                (Vec::new(), vec![(m, min)])
            } else {
                (vec![m], Vec::new())
            }
        }
        (Bound::Const(a), Bound::Shift(b)) | (Bound::Shift(b), Bound::Const(a)) => {
            let MPart::Fin(s) = m else { unreachable!("shifted bounds only on finite rows") };
            let at = NatSet::point(a - b);
            let single = at.and_then(|p| s.intersect(&p)).map(|p| (MPart::Fin(p), Bound::Const(a)));
            let multi = match at {
                Some(p) => s.minus(&p).into_iter().map(MPart::Fin).collect(),
                None => vec![m],
            };
            (multi, single.into_iter().collect())
        }
    }
}

fn index1(second: SecondFamily, c: &Cell, out: &mut Vec<Cell>) {
    let KPart::Fin(ks) = c.k() else {
        return;
    };
    let all_k = KPart::Fin(NatSet::ALL);
    let rows: Vec<(MPart, Bound, Option<Bound>)> = match c.m() {
        MPart::Fin(s) if !c.d().is_free() => {
            // k' = m - d with d in [lo, hi]
            let neg = |x: Option<i64>| x.map(|v| -v);
            affine_pieces(ks, neg(c.d().hi), neg(c.d().lo), s)
                .into_iter()
                .map(|p| (MPart::Fin(p.y), p.min, p.max))
                .collect()
        }
        m => vec![(m, Bound::Const(ks.lo()), ks.hi().map(Bound::Const))],
    };
    for (m, min, max) in rows {
        match second {
            SecondFamily::Onestep => push(out, m, KPart::Root, Diag::FREE),
            SecondFamily::Universal => push(out, m, all_k, Diag::FREE),
            SecondFamily::Difference => {
                let (multi, single) = split_singleton(m, min, max);
                for m in multi {
                    push(out, m, all_k, Diag::FREE);
                }
                for (m, e) in single {
                    match e {
                        Bound::Const(v) => {
                            if let Some(below) = NatSet::at_most(v - 1) {
                                push(out, m, KPart::Fin(below), Diag::FREE);
                            }
                            push(out, m, KPart::Fin(NatSet::at_least(v + 1)), Diag::FREE);
                        }
                        Bound::Shift(a) => {
                            push(out, m, all_k, Diag::at_most(-a - 1));
                            push(out, m, all_k, Diag::at_least(-a + 1));
                        }
                    }
                }
            }
        }
    }
}

/// Points with at least one `axis`-successor in `t`.
pub fn preimage(t: &Region, axis: Axis) -> Region {
    let family = t.family();
    let mut out = Vec::new();
    for c in t.cells() {
        match axis {
            Axis::Zero => index0(family.first, c, &mut out),
            Axis::One => index1(family.second, c, &mut out),
        }
    }
    Region::from_cells(family, out)
}

/// Points with every `axis`-successor in `t`.
pub fn box_preimage(t: &Region, axis: Axis) -> Region {
    preimage(&t.complement(), axis).complement()
}

/// The `axis`-successors of `x`, as a region.
pub fn successors(family: super::family::Family, x: Point, axis: Axis) -> Region {
    let refl = i64::from(family.first.is_reflexive());
    let mut cells = Vec::new();
    match axis {
        Axis::Zero => {
            let k = match x.k {
                KVal::Root => KPart::Root,
                KVal::Col(c) => KPart::Fin(NatSet::point(c as i64).expect("non-negative")),
            };
            match (family.first.has_omega(), x.m) {
                (true, MVal::Omega) => {
                    push(&mut cells, MPart::Fin(NatSet::ALL), k, Diag::FREE);
                    if refl == 1 {
                        push(&mut cells, MPart::Omega, k, Diag::FREE);
                    }
                }
                (true, MVal::Fin(v)) => {
                    if let Some(s) = NatSet::at_most(v as i64 - 1 + refl) {
                        push(&mut cells, MPart::Fin(s), k, Diag::FREE);
                    }
                }
                (false, MVal::Fin(v)) => push(&mut cells, MPart::Fin(NatSet::at_least(v as i64 + 1 - refl)), k, Diag::FREE),
                (false, MVal::Omega) => {}
            }
        }
        Axis::One => {
            let m = match x.m {
                MVal::Omega => MPart::Omega,
                MVal::Fin(v) => MPart::Fin(NatSet::point(v as i64).expect("non-negative")),
            };
            let all = KPart::Fin(NatSet::ALL);
            match (family.second, x.k) {
                (SecondFamily::Onestep, KVal::Root) | (SecondFamily::Universal, _) => push(&mut cells, m, all, Diag::FREE),
                (SecondFamily::Onestep, KVal::Col(_)) | (SecondFamily::Difference, KVal::Root) => {}
                (SecondFamily::Difference, KVal::Col(c)) => {
                    for s in NatSet::point(c as i64).expect("non-negative").complement() {
                        push(&mut cells, m, KPart::Fin(s), Diag::FREE);
                    }
                }
            }
        }
    }
    Region::from_cells(family, cells)
}
