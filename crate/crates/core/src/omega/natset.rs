use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: i64) -> Parity {
        if x.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn matches(self, x: i64) -> bool {
        Parity::of(x) == self
    }
}

/// `{x in N : lo <= x <= hi, x has the given parity}`, kept normalised: the
/// bounds are members, and singletons carry no parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatSet {
    lo: i64,
    hi: Option<i64>,
    parity: Option<Parity>,
}

impl NatSet {
    pub const ALL: NatSet = NatSet { lo: 0, hi: None, parity: None };

    /// `None` when the described set is empty.
    pub fn new(lo: i64, hi: Option<i64>, parity: Option<Parity>) -> Option<NatSet> {
        let mut lo = lo.max(0);
        let mut hi = hi;
        if let Some(p) = parity {
            if !p.matches(lo) {
                lo += 1;
            }
            hi = hi.map(|h| if p.matches(h) { h } else { h - 1 });
        }
        match hi {
            Some(h) if h < lo => None,
            Some(h) if h == lo => Some(NatSet { lo, hi, parity: None }),
            _ => Some(NatSet { lo, hi, parity }),
        }
    }

    pub fn point(c: i64) -> Option<NatSet> {
        NatSet::new(c, Some(c), None)
    }

    pub fn at_least(c: i64) -> NatSet {
        NatSet::new(c, None, None).expect("unbounded sets are non-empty")
    }

    pub fn at_most(c: i64) -> Option<NatSet> {
        NatSet::new(0, Some(c), None)
    }

    pub fn with_parity(p: Parity) -> NatSet {
        NatSet::new(0, None, Some(p)).expect("non-empty")
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    /// Parity shared by every member, if any.
    pub fn uniform_parity(&self) -> Option<Parity> {
        if self.is_singleton() {
            Some(Parity::of(self.lo))
        } else {
            self.parity
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn is_all(&self) -> bool {
        *self == NatSet::ALL
    }

    pub fn step(&self) -> i64 {
        if self.parity.is_some() {
            2
        } else {
            1
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && self.hi.is_none_or(|h| x <= h) && self.parity.is_none_or(|p| p.matches(x))
    }

    /// Least member that is at least `x`.
    pub fn first_from(&self, x: i64) -> Option<i64> {
        NatSet::new(self.lo.max(x), self.hi, self.parity.or(self.uniform_parity())).map(|s| s.lo)
    }

    pub fn intersect(&self, o: &NatSet) -> Option<NatSet> {
        let parity = match (self.uniform_parity(), o.uniform_parity()) {
            (Some(a), Some(b)) if a != b => return None,
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        NatSet::new(self.lo.max(o.lo), hi, parity)
    }

    /// Disjoint pieces whose union is `N \ self`.
    pub fn complement(&self) -> Vec<NatSet> {
        let mut out = Vec::new();
        if self.lo > 0 {
            out.extend(NatSet::new(0, Some(self.lo - 1), None));
        }
        if let Some(h) = self.hi {
            out.push(NatSet::at_least(h + 1));
        }
        if let Some(p) = self.parity {
            out.extend(NatSet::new(self.lo, self.hi, Some(p.flip())));
        }
        out
    }

    /// Disjoint pieces whose union is `self \ o`.
    pub fn minus(&self, o: &NatSet) -> Vec<NatSet> {
        o.complement().iter().filter_map(|c| self.intersect(c)).collect()
    }

    pub fn is_subset(&self, o: &NatSet) -> bool {
        self.minus(o).is_empty()
    }

    /// The union, when it is again a single set of this shape.
    pub fn union(&self, o: &NatSet) -> Option<NatSet> {
        let parity = match (self.uniform_parity(), o.uniform_parity()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let hull = NatSet::new(self.lo.min(o.lo), hi, parity)?;
        let uncovered = hull.minus(self).iter().any(|piece| !piece.is_subset(o));
        (!uncovered).then_some(hull)
    }

    pub fn split_parity(&self) -> Vec<NatSet> {
        if self.uniform_parity().is_some() {
            vec![*self]
        } else {
            [Parity::Even, Parity::Odd].iter().filter_map(|&p| NatSet::new(self.lo, self.hi, Some(p))).collect()
        }
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.lo);
        }
        match self.hi {
            Some(h) => write!(f, "[{}, {}]", self.lo, h)?,
            None => write!(f, "[{}, inf)", self.lo)?,
        }
        match self.parity {
            Some(Parity::Even) => write!(f, " even"),
            Some(Parity::Odd) => write!(f, " odd"),
            None => Ok(()),
        }
    }
}
