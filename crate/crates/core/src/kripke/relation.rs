use serde::{Deserialize, Serialize};

/// Maximum number of worlds in a finite frame; rows are single machine words.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds, bit `i` set when world `i` is a member.
pub type WorldSet = u64;

pub fn full_set(n: usize) -> WorldSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn members(s: WorldSet) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Binary relation over `0..n`, one bit row per source world.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    n: usize,
    rows: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_WORLDS, "at most {MAX_WORLDS} worlds");
        Relation { n, rows: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        r.rows.iter_mut().for_each(|row| *row = full_set(n));
        r
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.rows[i] = 1 << i;
        }
        r
    }

    /// Builds the relation whose `n*n` adjacency bits are the low bits of `code`
    /// (bit `i*n + j` is the pair `(i, j)`).
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.rows[i] = (code >> (i * n)) & full_set(n);
        }
        r
    }

    pub fn code(&self) -> u64 {
        assert!(self.n * self.n <= 64);
        self.rows.iter().enumerate().fold(0, |acc, (i, row)| acc | (row << (i * self.n)))
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        let mut r = Self::empty(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return None;
            }
            r.insert(i, j);
        }
        Some(r)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| members(self.rows[i]).map(move |j| (i, j))).collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| *r == 0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
    }

    pub fn row(&self, i: usize) -> WorldSet {
        self.rows[i]
    }

    pub fn rows(&self) -> &[WorldSet] {
        &self.rows
    }

    pub fn set_row(&mut self, i: usize, row: WorldSet) {
        self.rows[i] = row & full_set(self.n);
    }

    /// Union of the rows of every member of `s`.
    pub fn image(&self, s: WorldSet) -> WorldSet {
        members(s).fold(0, |acc, i| acc | self.rows[i])
    }

    /// Worlds with at least one successor inside `s`.
    pub fn preimage(&self, s: WorldSet) -> WorldSet {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| if row & s != 0 { acc | 1 << i } else { acc })
    }

    /// Worlds all of whose successors lie inside `s`.
    pub fn box_preimage(&self, s: WorldSet) -> WorldSet {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| if row & !s == 0 { acc | 1 << i } else { acc })
    }

    /// `x (self;other) z` iff `x self y other z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            out.rows[i] = other.image(self.rows[i]);
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation { n: self.n, rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect() }
    }

    pub fn transitive_closure(&self) -> Relation {
        let mut out = self.clone();
        // Warshall over bit rows.
        for k in 0..self.n {
            let rk = out.rows[k];
            for i in 0..self.n {
                if out.rows[i] >> k & 1 == 1 {
                    out.rows[i] |= rk;
                }
            }
        }
        out
    }

    pub fn out_degree(&self, i: usize) -> u32 {
        self.rows[i].count_ones()
    }

    /// Relabels worlds: pair `(i, j)` becomes `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            for j in members(self.rows[i]) {
                out.insert(perm[i], perm[j]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trip() {
        for code in [0u64, 1, 0b1011_0110, 511] {
            assert_eq!(Relation::from_code(3, code).code(), code);
        }
    }

    #[test]
    fn closure_of_chain() {
        let r = Relation::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = r.transitive_closure();
        assert!(c.contains(0, 3));
        assert!(!c.contains(3, 0));
        assert_eq!(c.pairs().len(), 6);
    }

    #[test]
    fn images_and_preimages() {
        let r = Relation::from_pairs(3, &[(1, 0), (2, 0), (2, 1)]).unwrap();
        assert_eq!(r.image(0b100), 0b011);
        assert_eq!(r.preimage(0b001), 0b110);
        assert_eq!(r.box_preimage(0b001), 0b011);
        assert_eq!(members(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn out_of_range_pairs_rejected() {
        assert!(Relation::from_pairs(2, &[(0, 2)]).is_none());
    }
}
