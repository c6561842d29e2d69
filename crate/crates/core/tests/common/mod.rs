//! Direct, unoptimised definitions used as oracles by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use modalwb::formula::{Axis, Formula};
use modalwb::kripke::{Frame2, Model};

/// Adjacency matrices copied pair by pair out of a frame.
#[derive(Clone, Debug)]
pub struct Naive {
    pub n: usize,
    pub r: [Vec<Vec<bool>>; 2],
}

impl Naive {
    pub fn of(fr: &Frame2) -> Naive {
        let n = fr.world_count();
        let grab = |ax| (0..n).map(|i| (0..n).map(|j| fr.rel(ax).contains(i, j)).collect()).collect();
        Naive { n, r: [grab(Axis::Zero), grab(Axis::One)] }
    }

    pub fn r0(&self, x: usize, y: usize) -> bool {
        self.r[0][x][y]
    }

    pub fn r1(&self, x: usize, y: usize) -> bool {
        self.r[1][x][y]
    }
}

pub type Valuation = BTreeMap<String, Vec<bool>>;

pub fn valuation_of(m: &Model) -> Valuation {
    let n = m.frame.world_count();
    m.valuation.iter().map(|(k, s)| (k.clone(), (0..n).map(|w| s >> w & 1 == 1).collect())).collect()
}

pub fn holds(fr: &Naive, val: &Valuation, f: &Formula, w: usize) -> bool {
    match f {
        Formula::Var(v) => val.get(v).is_some_and(|s| s[w]),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(a) => !holds(fr, val, a, w),
        Formula::And(a, b) => holds(fr, val, a, w) && holds(fr, val, b, w),
        Formula::Or(a, b) => holds(fr, val, a, w) || holds(fr, val, b, w),
        Formula::Implies(a, b) => !holds(fr, val, a, w) || holds(fr, val, b, w),
        Formula::Box(ax, a) => (0..fr.n).all(|v| !fr.r[ax.index()][w][v] || holds(fr, val, a, v)),
        Formula::Diamond(ax, a) => (0..fr.n).any(|v| fr.r[ax.index()][w][v] && holds(fr, val, a, v)),
    }
}

/// Some valuation of `vars` and some world make `f` true.
pub fn satisfiable(fr: &Naive, f: &Formula, vars: &[&str]) -> bool {
    let n = fr.n;
    (0u64..1 << (n * vars.len())).any(|code| {
        let val: Valuation = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.to_string(), (0..n).map(|w| code >> (i * n + w) & 1 == 1).collect()))
            .collect();
        (0..n).any(|w| holds(fr, &val, f, w))
    })
}

pub fn condition(fr: &Naive, name: &str) -> bool {
    let n = fr.n;
    let all = |p: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| p(x, y, z))))
    };
    let some = |p: &dyn Fn(usize) -> bool| (0..n).any(p);
    match name {
        "wcon0" => all(&|x, y, z| !(fr.r0(x, y) && fr.r0(x, z)) || y == z || fr.r0(y, z) || fr.r0(z, y)),
        "wconminus0" => all(&|x, y, z| {
            !(fr.r0(x, y) && fr.r0(x, z))
                || fr.r0(y, z)
                || fr.r0(z, y)
                || (0..n).all(|w| fr.r0(y, w) == fr.r0(z, w))
        }),
        "trans0" => all(&|x, y, z| !(fr.r0(x, y) && fr.r0(y, z)) || fr.r0(x, z)),
        "ptrans1" => all(&|x, y, z| !(fr.r1(x, y) && fr.r1(y, z)) || x == z || fr.r1(x, z)),
        "lcom" => all(&|x, y, z| !(fr.r0(x, y) && fr.r1(y, z)) || some(&|u| fr.r1(x, u) && fr.r0(u, z))),
        "rcom" => all(&|x, y, z| !(fr.r1(x, y) && fr.r0(y, z)) || some(&|u| fr.r0(x, u) && fr.r1(u, z))),
        "conf" => all(&|x, y, z| !(fr.r1(x, y) && fr.r0(x, z)) || some(&|u| fr.r0(y, u) && fr.r1(z, u))),
        "onestep1" => (0..n).any(|r| (0..n).all(|w| w == r || fr.r1(r, w))),
        "sym1" => (0..n).all(|x| (0..n).all(|y| !fr.r1(x, y) || fr.r1(y, x))),
        _ => panic!("no oracle for {name}"),
    }
}

/// `x` relates to `y` when some R0-successor `z` of `x` has the other `t`
/// value and is `y` or sees `y`.
pub fn tick(fr: &Naive, t: &[bool]) -> Vec<Vec<bool>> {
    let n = fr.n;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (0..n).any(|z| fr.r0(x, z) && t[x] != t[z] && (z == y || fr.r0(z, y))))
                .collect()
        })
        .collect()
}

/// Forth and back for both relations, and onto.
pub fn is_p_morphism(src: &Naive, dst: &Naive, f: &[usize]) -> bool {
    if (0..dst.n).any(|v| !f.contains(&v)) {
        return false;
    }
    for ax in 0..2 {
        for x in 0..src.n {
            for y in 0..src.n {
                if src.r[ax][x][y] && !dst.r[ax][f[x]][f[y]] {
                    return false;
                }
            }
            for v in 0..dst.n {
                if dst.r[ax][f[x]][v] && !(0..src.n).any(|y| src.r[ax][x][y] && f[y] == v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Tries all `|dst|^|src|` maps.
pub fn any_p_morphism(src: &Naive, dst: &Naive) -> bool {
    let total = dst.n.pow(src.n as u32);
    (0..total).any(|mut code| {
        let f: Vec<usize> = (0..src.n)
            .map(|_| {
                let d = code % dst.n;
                code /= dst.n;
                d
            })
            .collect();
        is_p_morphism(src, dst, &f)
    })
}

/// The product of two relations given as adjacency matrices; `(u, v)` is world `u * b + v`.
pub fn product(r0: &[Vec<bool>], r1: &[Vec<bool>]) -> Naive {
    let (a, b) = (r0.len(), r1.len());
    let n = a * b;
    let mut out = Naive { n, r: [vec![vec![false; n]; n], vec![vec![false; n]; n]] };
    for u in 0..a {
        for v in 0..b {
            for u2 in 0..a {
                for v2 in 0..b {
                    out.r[0][u * b + v][u2 * b + v2] = r0[u][u2] && v == v2;
                    out.r[1][u * b + v][u2 * b + v2] = r1[v][v2] && u == u2;
                }
            }
        }
    }
    out
}

pub fn matrix(n: usize, code: u64) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| code >> (i * n + j) & 1 == 1).collect()).collect()
}

pub fn naive_frame(n: usize, c0: u64, c1: u64) -> Naive {
    Naive { n, r: [matrix(n, c0), matrix(n, c1)] }
}
