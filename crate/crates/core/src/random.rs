//! Seeded generators for test corpora: ordinals, formulas, valuations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::Formula;
use crate::ordinal::Ordinal;
use crate::topo::{canonical_samples, Cell, Interval, OrdinalValuation, Region, SpaceSpec};

/// The generator every corpus uses, so a seed fully determines its output.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random ordinal of exponent nesting at most `height`, with at most
/// `max_terms` terms per level and coefficients in `1..=max_coeff`.
pub fn random_ordinal<R: Rng>(
    rng: &mut R,
    height: usize,
    max_terms: usize,
    max_coeff: u64,
) -> Ordinal {
    if rng.gen_bool(0.1) {
        return Ordinal::zero();
    }
    if height == 0 {
        return Ordinal::nat(rng.gen_range(1..=max_coeff.max(1) * 3));
    }
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut exps: Vec<Ordinal> = (0..n)
        .map(|_| {
            let h = rng.gen_range(0..height);
            random_ordinal(rng, h, max_terms, max_coeff)
        })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps
        .into_iter()
        .map(|e| (e, rng.gen_range(1..=max_coeff.max(1))))
        .collect();
    Ordinal::from_terms(terms).expect("exponents are strictly decreasing")
}

/// A random limit ordinal (non-zero, last exponent positive).
pub fn random_limit<R: Rng>(
    rng: &mut R,
    height: usize,
    max_terms: usize,
    max_coeff: u64,
) -> Ordinal {
    loop {
        let a = random_ordinal(rng, height.max(1), max_terms, max_coeff);
        if a.is_limit() {
            return a;
        }
    }
}

/// A random formula of modal/Boolean depth at most `depth` over `p0..p{vars-1}`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, vars: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::var(rng.gen_range(0..vars.max(1))),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, vars);
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::boxed(sub(rng)),
        _ => Formula::diamond(sub(rng)),
    }
}

/// A random region made of one or two cells of interval constraints on
/// `θ` and `ℓθ`, occasionally with a point correction.
pub fn random_interval_region<R: Rng>(rng: &mut R, space: &SpaceSpec) -> Region {
    let pools = BoundPools::new(space);
    pools.region(rng, space)
}

/// Interval valuations of `p0..p{vars-1}`.
pub fn random_valuation<R: Rng>(rng: &mut R, space: &SpaceSpec, vars: u32) -> OrdinalValuation {
    let pools = BoundPools::new(space);
    let mut v = OrdinalValuation::new(space.clone());
    for i in 0..vars {
        v.set(i, pools.region(rng, space)).expect("same space");
    }
    v
}

struct BoundPools {
    points: Vec<Ordinal>,
    logs: Vec<Ordinal>,
}

impl BoundPools {
    fn new(space: &SpaceSpec) -> Self {
        let points = canonical_samples(space, 24);
        let mut logs: Vec<Ordinal> = points.iter().map(crate::ordinal::end_log).collect();
        logs.sort();
        logs.dedup();
        BoundPools { points, logs }
    }

    fn region<R: Rng>(&self, rng: &mut R, space: &SpaceSpec) -> Region {
        let (points, logs) = (&self.points, &self.logs);
        let bound = |rng: &mut R, pool: &[Ordinal]| -> Interval {
            let mut pick = || {
                if rng.gen_bool(0.25) {
                    None
                } else {
                    pool.choose(rng).cloned()
                }
            };
            let (a, b) = (pick(), pick());
            match (a, b) {
                (Some(x), Some(y)) if x > y => Interval::new(Some(y), Some(x)),
                (Some(x), Some(y)) if x == y => Interval::new(None, Some(x)),
                (a, b) => Interval::new(a, b),
            }
        };
        let ncells = rng.gen_range(1..=2);
        let mut cells = Vec::new();
        for _ in 0..ncells {
            let mut cell = Cell::full();
            if rng.gen_bool(0.7) {
                cell = cell
                    .intersect(&Cell::single(0, bound(rng, points)))
                    .unwrap_or(cell);
            }
            if rng.gen_bool(0.6) {
                cell = cell
                    .intersect(&Cell::single(1, bound(rng, logs)))
                    .unwrap_or(cell);
            }
            cells.push(cell);
        }
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        if rng.gen_bool(0.2) {
            plus.push(points.choose(rng).unwrap().clone());
        }
        if rng.gen_bool(0.2) {
            minus.push(points.choose(rng).unwrap().clone());
        }
        Region::with_corrections(space, cells, plus, minus).expect("sample points lie in the space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a: Vec<Ordinal> = (0..20)
            .map({
                let mut r = rng(7);
                move |_| random_ordinal(&mut r, 3, 3, 4)
            })
            .collect();
        let b: Vec<Ordinal> = (0..20)
            .map({
                let mut r = rng(7);
                move |_| random_ordinal(&mut r, 3, 3, 4)
            })
            .collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.height() <= 3));
    }

    #[test]
    fn formulas_respect_depth() {
        let mut r = rng(1);
        for _ in 0..100 {
            let f = random_formula(&mut r, 3, 2);
            assert!(f.modal_depth() <= 3);
            assert!(f.vars().iter().all(|&v| v < 2));
        }
    }
}
