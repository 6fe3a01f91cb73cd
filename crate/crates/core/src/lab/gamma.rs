use std::collections::BTreeMap;

use super::{LabError, PairColoring};
use crate::logic::{Formula, FormulaSet};
use crate::ordinal::{fundamental_seq, Ordinal};
use crate::topo::{eval_formula, Cell, Interval, OrdinalValuation, Region, SpaceSpec, TopoError};

/// `{◇p_i : i < n} ∪ {□(p_i → ◇p_j) : i < j < n}`.
pub fn gamma_fragment(n: u32) -> FormulaSet {
    let mut out = FormulaSet::new();
    for i in 0..n {
        out.insert(Formula::diamond(Formula::var(i)));
        for j in i + 1..n {
            out.insert(Formula::boxed(Formula::implies(
                Formula::var(i),
                Formula::diamond(Formula::var(j)),
            )));
        }
    }
    out
}

/// A valuation on `(Θ, 𝓘_1)` together with the point it is built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaModel {
    pub valuation: OrdinalValuation,
    pub alpha: Ordinal,
}

impl GammaModel {
    pub fn space(&self) -> &SpaceSpec {
        self.valuation.space()
    }
}

/// The rank-layer model: `Θ = ω^(n+1) + 1`, `α = ω^(n+1)` and
/// `⟦p_i⟧ = {θ : ℓθ = n − i}`. Every member of [`gamma_fragment`]`(n)` is
/// checked at `α` before returning.
pub fn gamma_ordinal_model(n: u32) -> Result<GammaModel, LabError> {
    if n == 0 {
        return Err(LabError::InvalidInput("gamma model needs N >= 1".into()));
    }
    let alpha = Ordinal::omega_pow(Ordinal::nat(u64::from(n) + 1));
    let space = SpaceSpec::new(alpha.succ(), Ordinal::one())?;
    let mut valuation = OrdinalValuation::new(space.clone());
    for i in 0..n {
        let rank = u64::from(n - i);
        let layer = Cell::single(
            1,
            Interval::new(Some(Ordinal::nat(rank - 1)), Some(Ordinal::nat(rank))),
        );
        valuation.set(i, Region::from_cell(&space, layer))?;
    }
    for phi in &gamma_fragment(n) {
        assert!(
            eval_formula(phi, &valuation)?.member(&alpha)?,
            "{phi} fails at {alpha} in the rank-layer model"
        );
    }
    Ok(GammaModel { valuation, alpha })
}

/// The open interval `(lo, hi)` of the space.
pub fn open_interval(space: &SpaceSpec, lo: &Ordinal, hi: &Ordinal) -> Result<Region, TopoError> {
    let cell = Cell::single(0, Interval::new(Some(lo.clone()), Some(hi.clone())));
    let minus = space.contains(hi).then(|| hi.clone());
    Region::with_corrections(space, vec![cell], [], minus)
}

/// Colours `i < j < n` by the least `k < limit` such that `p_i → ◇p_j`
/// holds throughout `(α_k, α)`, `α_k` the fundamental sequence of `α`.
pub fn proof_coloring(
    v: &OrdinalValuation,
    alpha: &Ordinal,
    n: usize,
    limit: u32,
) -> Result<PairColoring, LabError> {
    if !alpha.is_limit() {
        return Err(TopoError::NotLimit(alpha.to_string()).into());
    }
    v.space().check_point(alpha)?;
    let seq: Vec<Ordinal> = (0..limit)
        .map(|k| fundamental_seq(alpha, u64::from(k)))
        .collect::<Result<_, _>>()
        .map_err(TopoError::from)?;
    let mut table = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let phi = Formula::implies(
                Formula::var(i as u32),
                Formula::diamond(Formula::var(j as u32)),
            );
            let region = eval_formula(&phi, v)?;
            let mut found = None;
            for (k, lo) in seq.iter().enumerate() {
                if open_interval(v.space(), lo, alpha)?.is_subset(&region)? {
                    found = Some(k as u32);
                    break;
                }
            }
            table.insert((i, j), found.ok_or(LabError::NoBound { i, j })?);
        }
    }
    PairColoring::from_fn(n, limit, |i, j| table[&(i, j)])
}

/// Greedy descent below `α`: `β_0` is the least `p_{i_0}` point in
/// `(α_{n*}, α)` and `β_{m+1}` the least `p_{i_{m+1}}` point in
/// `(α_{n*}, β_m)`. Stops at the first index without a witness.
pub fn descending_extraction(
    v: &OrdinalValuation,
    alpha: &Ordinal,
    indices: &[u32],
    n_star: u64,
    max_steps: usize,
) -> Result<Vec<(Ordinal, u32)>, LabError> {
    let floor = fundamental_seq(alpha, n_star).map_err(TopoError::from)?;
    let mut chain: Vec<(Ordinal, u32)> = Vec::new();
    let mut top = alpha.clone();
    for (m, &idx) in indices.iter().take(max_steps).enumerate() {
        let p = v.get(idx).ok_or(TopoError::UnboundVariable(idx))?;
        let window = open_interval(v.space(), &floor, &top)?;
        match p.intersect(&window)?.min() {
            Some(beta) => {
                assert!(beta < top, "extraction must descend");
                top = beta.clone();
                chain.push((beta, idx));
            }
            None if m == 0 => {
                return Err(LabError::NoWitness {
                    index: idx as usize,
                })
            }
            None => break,
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::find_homogeneous;
    use crate::logic::gl_sat;
    use crate::ordinal::end_log;
    use crate::topo::eval_pointwise_i1;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn fragments() {
        assert_eq!(gamma_fragment(1).to_string(), "{<>p0}");
        let two = FormulaSet::parse_list("<>p0, <>p1, [](p0 -> <>p1)").unwrap();
        assert_eq!(gamma_fragment(2), two);
        assert_eq!(gamma_fragment(4).len(), 4 + 6);
        for n in 1..=6 {
            assert!(gl_sat(&gamma_fragment(n)).unwrap().is_sat());
        }
    }

    #[test]
    fn rank_layer_models() {
        let m1 = gamma_ordinal_model(1).unwrap();
        assert_eq!(m1.space().theta, o("w^2 + 1"));
        assert!(
            eval_pointwise_i1(&Formula::diamond(Formula::var(0)), &m1.valuation, &o("w^2"))
                .unwrap()
        );
        let m3 = gamma_ordinal_model(3).unwrap();
        assert_eq!(m3.alpha, o("w^4"));
        for phi in &gamma_fragment(3) {
            assert!(eval_pointwise_i1(phi, &m3.valuation, &m3.alpha).unwrap());
        }
        assert!(gamma_ordinal_model(0).is_err());
    }

    #[test]
    fn coloring_of_rank_layer_model_is_zero() {
        let m = gamma_ordinal_model(3).unwrap();
        let c = proof_coloring(&m.valuation, &m.alpha, 3, 4).unwrap();
        for j in 1..3 {
            for i in 0..j {
                assert_eq!(c.get(i, j), 0);
            }
        }
        assert!(find_homogeneous(&c, 3).is_some());
        assert_eq!(
            proof_coloring(&m.valuation, &m.alpha, 3, 0),
            Err(LabError::NoBound { i: 0, j: 1 })
        );
    }

    #[test]
    fn shifted_target_raises_the_colour() {
        let s = SpaceSpec::new(o("w^3 + 1"), Ordinal::one()).unwrap();
        let p0 = Region::from_cell(
            &s,
            Cell::single(1, Interval::new(Some(o("1")), Some(o("2")))),
        );
        let p1 = Region::from_cell(
            &s,
            Cell::from_constraints([
                crate::topo::RankConstraint::new(0, Some(o("w^2*2")), None),
                crate::topo::RankConstraint::new(1, Some(o("0")), Some(o("1"))),
            ]),
        );
        let v = OrdinalValuation::new(s)
            .with(0, p0)
            .unwrap()
            .with(1, p1)
            .unwrap();
        let c = proof_coloring(&v, &o("w^3"), 2, 5).unwrap();
        assert_eq!(c.get(0, 1), 2);
        // the failing points sit exactly at w^2 and w^2*2
        let phi = Formula::implies(Formula::var(0), Formula::diamond(Formula::var(1)));
        for (pt, want) in [
            ("w^2", false),
            ("w^2*2", false),
            ("w^2*3", true),
            ("w^2*2 + w", true),
        ] {
            assert_eq!(eval_pointwise_i1(&phi, &v, &o(pt)).unwrap(), want, "{pt}");
        }
    }

    #[test]
    fn extraction_descends_through_the_layers() {
        let m = gamma_ordinal_model(3).unwrap();
        let chain = descending_extraction(&m.valuation, &m.alpha, &[0, 1, 2], 0, 10).unwrap();
        let pts: Vec<Ordinal> = chain.iter().map(|(b, _)| b.clone()).collect();
        assert_eq!(pts, vec![o("w^3"), o("w^2"), o("w")]);
        let ranks: Vec<Ordinal> = pts.iter().map(end_log).collect();
        assert_eq!(ranks, vec![o("3"), o("2"), o("1")]);
        assert_eq!(
            descending_extraction(&m.valuation, &m.alpha, &[0], 0, 10)
                .unwrap()
                .len(),
            1
        );
        assert!(descending_extraction(&m.valuation, &m.alpha, &[], 0, 10)
            .unwrap()
            .is_empty());
        // after w there is no rank-3 point left
        let stop = descending_extraction(&m.valuation, &m.alpha, &[2, 0], 0, 10).unwrap();
        assert_eq!(stop.len(), 1);
    }

    #[test]
    fn no_witness_at_first_step() {
        let m = gamma_ordinal_model(2).unwrap();
        let s = m.space().clone();
        let v = m
            .valuation
            .clone()
            .with(0, Region::points(&s, [o("3")]).unwrap())
            .unwrap();
        assert_eq!(
            descending_extraction(&v, &m.alpha, &[0], 1, 5),
            Err(LabError::NoWitness { index: 0 })
        );
    }
}
