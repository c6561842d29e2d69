use rand::Rng;

use super::{Axis, Formula};

/// A random formula over `vars` with at most `depth` levels of connectives.
/// Leaves are drawn from the variables and the two constants.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        let i = rng.gen_range(0..vars.len() + 2);
        return match i {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::Var(vars[i - 2].to_string()),
        };
    }
    let sub = |rng: &mut R| Box::new(random_formula(rng, depth - 1, vars));
    let ax = if rng.gen() { Axis::Zero } else { Axis::One };
    match rng.gen_range(0..6) {
        0 => Formula::Not(sub(rng)),
        1 => Formula::And(sub(rng), sub(rng)),
        2 => Formula::Or(sub(rng), sub(rng)),
        3 => Formula::Implies(sub(rng), sub(rng)),
        4 => Formula::Box(ax, sub(rng)),
        _ => Formula::Diamond(ax, sub(rng)),
    }
}
