use super::frame::Frame2;
use super::relation::{members, Relation};
use super::KripkeError;

pub const PMORPHISM_MAX_SOURCE: usize = 16;

/// Checks that `map` is a surjective p-morphism from `src` onto `dst` for both relations.
pub fn is_p_morphism(src: &Frame2, dst: &Frame2, map: &[usize]) -> bool {
    let (n, m) = (src.world_count(), dst.world_count());
    if map.len() != n || map.iter().any(|&v| v >= m) {
        return false;
    }
    let hit = map.iter().fold(0u64, |acc, &v| acc | 1 << v);
    if hit.count_ones() as usize != m {
        return false;
    }
    [(&src.r0, &dst.r0), (&src.r1, &dst.r1)].iter().all(|(rs, rd)| {
        (0..n).all(|x| {
            let image = members(rs.row(x)).fold(0u64, |acc, y| acc | 1 << map[y]);
            image == rd.row(map[x])
        })
    })
}

struct Search<'a> {
    src: [&'a Relation; 2],
    dst: [&'a Relation; 2],
    order: Vec<usize>,
    /// for each source world, the rank after which all its successors are assigned
    done_at: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    dst_count: usize,
}

impl Search<'_> {
    fn consistent(&self, x: usize, v: usize) -> bool {
        for a in 0..2 {
            let (rs, rd) = (self.src[a], self.dst[a]);
            for y in members(rs.row(x)) {
                let w = if y == x { Some(v) } else { self.map[y] };
                if let Some(w) = w {
                    if !rd.contains(v, w) {
                        return false;
                    }
                }
            }
            for (y, w) in self.map.iter().enumerate() {
                if let Some(w) = *w {
                    if rs.contains(y, x) && !rd.contains(w, v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn back_ok(&self, x: usize) -> bool {
        let fx = self.map[x].expect("assigned");
        (0..2).all(|a| {
            let image = members(self.src[a].row(x)).fold(0u64, |acc, y| acc | 1 << self.map[y].expect("assigned"));
            image == self.dst[a].row(fx)
        })
    }

    fn go(&mut self, depth: usize, hit: u64) -> bool {
        let n = self.order.len();
        if depth == n {
            return hit.count_ones() as usize == self.dst_count;
        }
        if (self.dst_count - hit.count_ones() as usize) > n - depth {
            return false;
        }
        let x = self.order[depth];
        for ci in 0..self.candidates[x].len() {
            let v = self.candidates[x][ci];
            if !self.consistent(x, v) {
                continue;
            }
            self.map[x] = Some(v);
            let closed = (0..n).filter(|&z| self.done_at[z] == depth).all(|z| self.back_ok(z));
            if closed && self.go(depth + 1, hit | 1 << v) {
                return true;
            }
            self.map[x] = None;
        }
        false
    }
}

/// Exhaustive search for a surjective p-morphism `src -> dst`.
pub fn p_morphism_search(src: &Frame2, dst: &Frame2) -> Result<Option<Vec<usize>>, KripkeError> {
    let n = src.world_count();
    if n > PMORPHISM_MAX_SOURCE {
        return Err(KripkeError::SizeBound(format!("p-morphism source has {n} worlds, limit {PMORPHISM_MAX_SOURCE}")));
    }
    let m = dst.world_count();
    if m > n {
        return Ok(None);
    }
    let src_rel = [&src.r0, &src.r1];
    let dst_rel = [&dst.r0, &dst.r1];
    let degree = |x: usize| src.r0.out_degree(x) + src.r1.out_degree(x);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(degree(x)), x));
    let mut rank = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        rank[x] = i;
    }
    let done_at = (0..n)
        .map(|x| {
            let succ = src.r0.row(x) | src.r1.row(x);
            members(succ).map(|y| rank[y]).chain([rank[x]]).max().expect("non-empty")
        })
        .collect();
    // an image point can have no more successors than its preimage, and exactly
    // as many zero/non-zero rows
    let candidates = (0..n)
        .map(|x| {
            (0..m)
                .filter(|&v| {
                    (0..2).all(|a| {
                        let (ds, dd) = (src_rel[a].out_degree(x), dst_rel[a].out_degree(v));
                        dd <= ds && (ds == 0) == (dd == 0)
                    })
                })
                .collect()
        })
        .collect();
    let mut s = Search {
        src: src_rel,
        dst: dst_rel,
        order,
        done_at,
        candidates,
        map: vec![None; n],
        dst_count: m,
    };
    Ok(if s.go(0, 0) { Some(s.map.into_iter().map(|v| v.expect("complete")).collect()) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{product_frame, Frame1};

    fn sharp() -> Frame2 {
        Frame2::new(Relation::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap(), Relation::full(2)).unwrap()
    }

    #[test]
    fn identity_onto_itself() {
        let f = sharp();
        let map = p_morphism_search(&f, &f).unwrap().unwrap();
        assert_eq!(map, vec![0, 1]);
        assert!(is_p_morphism(&f, &f, &map));
    }

    #[test]
    fn single_world_cannot_cover_two() {
        let one = Frame1::new(Relation::empty(1));
        let p = product_frame(&one, &one).unwrap();
        assert_eq!(p_morphism_search(&p, &sharp()).unwrap(), None);
    }

    #[test]
    fn collapses_a_product_onto_a_point() {
        let f = Frame1::new(Relation::full(2));
        let p = product_frame(&f, &f).unwrap();
        let point = Frame2::new(Relation::full(1), Relation::full(1)).unwrap();
        let map = p_morphism_search(&p, &point).unwrap().unwrap();
        assert!(is_p_morphism(&p, &point, &map));
    }

    #[test]
    fn finds_non_identity_maps() {
        // two disjoint copies of sharp fold onto one
        let r0 = Relation::from_pairs(4, &[(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)]).unwrap();
        let r1 = Relation::from_pairs(4, &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]).unwrap();
        let src = Frame2::new(r0, r1).unwrap();
        let map = p_morphism_search(&src, &sharp()).unwrap().unwrap();
        assert!(is_p_morphism(&src, &sharp(), &map));
    }

    #[test]
    fn source_bound() {
        let big = Frame2::new(Relation::empty(17), Relation::empty(17)).unwrap();
        assert!(p_morphism_search(&big, &sharp()).is_err());
    }
}
