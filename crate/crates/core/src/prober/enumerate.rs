use super::spec::FrameClassSpec;
use super::ProberError;
use crate::kripke::{Frame2, Relation};

/// Largest world count for exhaustive enumeration.
pub const EXHAUSTIVE_MAX: usize = 5;

/// Number of raw 2-frames on `n` worlds, `2^(2n^2)`.
pub fn raw_frame_count(n: usize) -> u128 {
    1u128 << (2 * n * n)
}

/// Relations on `n` worlds passing the class conditions for `axis`, in code order.
pub fn component_relations(n: usize, spec: &FrameClassSpec, axis: usize) -> Vec<Relation> {
    (0..1u64 << (n * n)).map(|code| Relation::from_code(n, code)).filter(|r| spec.admits_relation(axis, r)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Canonical labelling: the least `(r0 code, r1 code)` over all relabellings.
pub struct Canonizer {
    perms: Vec<Vec<usize>>,
}

impl Canonizer {
    pub fn new(n: usize) -> Self {
        assert!(n <= EXHAUSTIVE_MAX);
        Canonizer { perms: permutations(n) }
    }

    pub fn code(fr: &Frame2) -> (u64, u64) {
        (fr.r0.code(), fr.r1.code())
    }

    pub fn canonical_code(&self, fr: &Frame2) -> (u64, u64) {
        self.perms.iter().map(|p| Self::code(&fr.permuted(p))).min().expect("at least one permutation")
    }

    pub fn is_canonical(&self, fr: &Frame2) -> bool {
        let own = Self::code(fr);
        self.perms.iter().all(|p| Self::code(&fr.permuted(p)) >= own)
    }
}

/// Every in-class frame on exactly `n` worlds: R0 in the outer loop, R1 inner,
/// both in adjacency-code order. With `canonical_only`, one frame per isomorphism class.
pub fn enumerate_frames(
    n: usize,
    spec: &FrameClassSpec,
    canonical_only: bool,
) -> Result<impl Iterator<Item = Frame2>, ProberError> {
    if n == 0 || n > EXHAUSTIVE_MAX {
        return Err(ProberError::SizeBound(format!("exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_MAX}, got {n}")));
    }
    if spec.product_only {
        return Err(ProberError::InvalidSpec("product classes are enumerated by component pairs".into()));
    }
    let r0s = component_relations(n, spec, 0);
    let r1s = component_relations(n, spec, 1);
    let canon = canonical_only.then(|| Canonizer::new(n));
    let spec = spec.clone();
    Ok(r0s.into_iter().flat_map(move |r0| {
        let spec = spec.clone();
        let r1s = r1s.clone();
        let canon = canon.as_ref().map(|_| Canonizer::new(n));
        r1s.into_iter().filter_map(move |r1| {
            let fr = Frame2 { r0: r0.clone(), r1 };
            (spec.admits(&fr) && canon.as_ref().is_none_or(|c| c.is_canonical(&fr))).then_some(fr)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::FrameCondition;
    use std::collections::BTreeSet;

    fn wcon_commuting() -> FrameClassSpec {
        FrameClassSpec::general(vec![
            FrameCondition::WeaklyConnected0,
            FrameCondition::Lcom,
            FrameCondition::Rcom,
            FrameCondition::Conf,
        ])
        .unwrap()
    }

    #[test]
    fn one_world_truth_table() {
        // With one world a square can only close through that world, and it does
        // whenever both loops exist; without both loops no square starts. All four pass.
        let frames: Vec<(u64, u64)> =
            enumerate_frames(1, &wcon_commuting(), false).unwrap().map(|f| (f.r0.code(), f.r1.code())).collect();
        assert_eq!(frames, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn unconstrained_raw_count() {
        assert_eq!(raw_frame_count(2), 256);
        let any = FrameClassSpec::general(vec![FrameCondition::WconMinus0]).unwrap();
        let n = enumerate_frames(2, &any, false).unwrap().count();
        assert!(n <= 256);
    }

    #[test]
    fn orbit_counts_match_unpruned_run() {
        for n in 1..=3 {
            let spec = wcon_commuting();
            let canon = Canonizer::new(n);
            let orbits: BTreeSet<_> =
                enumerate_frames(n, &spec, false).unwrap().map(|f| canon.canonical_code(&f)).collect();
            let pruned = enumerate_frames(n, &spec, true).unwrap().count();
            assert_eq!(pruned, orbits.len(), "n = {n}");
        }
    }

    #[test]
    fn size_bound() {
        assert!(enumerate_frames(6, &wcon_commuting(), false).is_err());
        assert!(enumerate_frames(0, &wcon_commuting(), false).is_err());
    }
}
