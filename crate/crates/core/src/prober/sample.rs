use rand::seq::SliceRandom;
use rand::Rng;

use super::spec::FrameClassSpec;
use crate::kripke::{check_condition, full_set, members, product_frame, Frame1, Frame2, FrameCondition, Relation, Verdict};

/// Each pair present independently with probability 1/2.
pub fn random_relation<R: Rng>(rng: &mut R, n: usize) -> Relation {
    let mut r = Relation::empty(n);
    for i in 0..n {
        r.set_row(i, rng.gen::<u64>() & full_set(n));
    }
    r
}

fn pick<R: Rng>(rng: &mut R, s: u64) -> Option<usize> {
    let v: Vec<usize> = members(s).collect();
    v.choose(rng).copied()
}

fn apply<R: Rng>(rng: &mut R, fr: &mut Frame2, c: FrameCondition, w: &[usize], rank: &[usize]) {
    match c {
        FrameCondition::WeaklyConnected0 | FrameCondition::WconMinus0 => {
            let (y, z) = (w[1], w[2]);
            if rank[y] < rank[z] {
                fr.r0.insert(y, z)
            } else {
                fr.r0.insert(z, y)
            }
        }
        FrameCondition::Transitive0 => fr.r0.insert(w[0], w[2]),
        FrameCondition::PseudoTransitive1 => fr.r1.insert(w[0], w[2]),
        FrameCondition::Lcom => {
            let (x, y, z) = (w[0], w[1], w[2]);
            match pick(rng, fr.r0.preimage(1 << z)) {
                Some(u) => fr.r1.insert(x, u),
                None => fr.r1.remove(y, z),
            }
        }
        FrameCondition::Rcom => {
            let (x, y, z) = (w[0], w[1], w[2]);
            match pick(rng, fr.r0.row(x)) {
                Some(u) => fr.r1.insert(u, z),
                None => fr.r1.remove(x, y),
            }
        }
        FrameCondition::Conf => {
            let (x, y, z) = (w[0], w[1], w[2]);
            match pick(rng, fr.r0.row(y)) {
                Some(u) => fr.r1.insert(z, u),
                None => fr.r1.remove(x, y),
            }
        }
        FrameCondition::OneStepRooted1 => {
            let n = fr.world_count();
            let root = rng.gen_range(0..n);
            fr.r1.set_row(root, fr.r1.row(root) | (full_set(n) & !(1 << root)));
        }
        FrameCondition::Symmetric1 => {
            let (x, y) = (w[0], w[1]);
            if rng.gen() {
                fr.r1.insert(y, x)
            } else {
                fr.r1.remove(x, y)
            }
        }
        FrameCondition::LcomM | FrameCondition::RcomM | FrameCondition::ConfM | FrameCondition::WconMinusM => {
            unreachable!("model-relative conditions are not sampled")
        }
    }
}

/// Edits `fr` one violation at a time until every condition holds or the round
/// budget runs out. Returns whether all conditions hold afterwards.
pub fn repair_frame<R: Rng>(rng: &mut R, fr: &mut Frame2, conds: &[FrameCondition]) -> bool {
    let n = fr.world_count();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    for _ in 0..16 * n * n + 16 {
        let mut clean = true;
        for &c in conds {
            if let Verdict::Violated(w) = check_condition(fr, c, None).expect("frame condition") {
                clean = false;
                apply(rng, fr, c, &w, &rank);
            }
        }
        if clean {
            return true;
        }
    }
    conds.iter().all(|c| check_condition(fr, *c, None).expect("frame condition").holds())
}

/// A random in-class frame on `n` worlds, or `None` when repair gave up.
pub fn sample_frame<R: Rng>(rng: &mut R, n: usize, spec: &FrameClassSpec) -> Option<Frame2> {
    let mut fr = Frame2 { r0: random_relation(rng, n), r1: random_relation(rng, n) };
    (repair_frame(rng, &mut fr, &spec.conditions) && spec.admits(&fr)).then_some(fr)
}

fn sample_component<R: Rng>(rng: &mut R, n: usize, axis: usize, conds: &[FrameCondition]) -> Option<Frame1> {
    let r = random_relation(rng, n);
    let empty = Relation::empty(n);
    let mut fr = if axis == 0 { Frame2 { r0: r, r1: empty } } else { Frame2 { r0: empty, r1: r } };
    if !repair_frame(rng, &mut fr, conds) {
        return None;
    }
    Some(Frame1::new(if axis == 0 { fr.r0 } else { fr.r1 }))
}

/// A random product of components on `a` and `b` worlds meeting a product class.
pub fn sample_product<R: Rng>(rng: &mut R, a: usize, b: usize, spec: &FrameClassSpec) -> Option<(Frame1, Frame1, Frame2)> {
    let cc = spec.component_conditions.as_ref()?;
    let f0 = sample_component(rng, a, 0, &cc.first)?;
    let f1 = sample_component(rng, b, 1, &cc.second)?;
    let fr = product_frame(&f0, &f1).ok()?;
    spec.admits(&fr).then_some((f0, f1, fr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prober::stream_rng;

    #[test]
    fn samples_land_in_class() {
        let spec = FrameClassSpec::general(vec![
            FrameCondition::WeaklyConnected0,
            FrameCondition::Lcom,
            FrameCondition::Rcom,
            FrameCondition::Conf,
        ])
        .unwrap();
        let mut rng = stream_rng(7, 0);
        let mut accepted = 0;
        for _ in 0..500 {
            if let Some(fr) = sample_frame(&mut rng, 5, &spec) {
                assert!(spec.admits(&fr));
                accepted += 1;
            }
        }
        assert!(accepted > 250, "{accepted}");
    }

    #[test]
    fn every_single_condition_is_repairable() {
        let mut rng = stream_rng(11, 0);
        for c in FrameCondition::FRAME_CONDITIONS {
            let spec = FrameClassSpec::general(vec![c]).unwrap();
            let ok = (0..50).filter(|_| sample_frame(&mut rng, 4, &spec).is_some()).count();
            assert!(ok > 25, "{c}: {ok}");
        }
    }

    #[test]
    fn product_samples() {
        let spec = FrameClassSpec::products(vec![FrameCondition::Transitive0, FrameCondition::Lcom]).unwrap();
        let mut rng = stream_rng(3, 0);
        for _ in 0..50 {
            let (f0, _, fr) = sample_product(&mut rng, 3, 2, &spec).unwrap();
            assert_eq!(fr.world_count(), 6);
            assert!(check_condition(&Frame2 { r0: f0.r.clone(), r1: Relation::empty(3) }, FrameCondition::Transitive0, None)
                .unwrap()
                .holds());
        }
    }
}
