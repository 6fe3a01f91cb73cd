use std::collections::BTreeMap;

use super::{derived_set, Region, SpaceSpec, TopoError};
use crate::exec::Exec;
use crate::logic::Formula;
use crate::ordinal::Ordinal;

/// An assignment of regions to propositional variables over one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalValuation {
    space: SpaceSpec,
    props: BTreeMap<u32, Region>,
}

impl OrdinalValuation {
    pub fn new(space: SpaceSpec) -> Self {
        OrdinalValuation {
            space,
            props: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, var: u32, region: Region) -> Result<(), TopoError> {
        if region.space() != &self.space {
            return Err(TopoError::SpaceMismatch);
        }
        self.props.insert(var, region);
        Ok(())
    }

    pub fn with(mut self, var: u32, region: Region) -> Result<Self, TopoError> {
        self.set(var, region)?;
        Ok(self)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn get(&self, var: u32) -> Option<&Region> {
        self.props.get(&var)
    }

    pub fn props(&self) -> &BTreeMap<u32, Region> {
        &self.props
    }
}

/// `⟦φ⟧` as a region: Boolean connectives by region algebra, `◇` by the
/// derived-set operator and `□` as its dual.
pub fn eval_formula(phi: &Formula, v: &OrdinalValuation) -> Result<Region, TopoError> {
    let space = v.space();
    Ok(match phi {
        Formula::Bottom => Region::empty(space),
        Formula::Top => Region::full(space),
        Formula::Var(i) => v.get(*i).cloned().ok_or(TopoError::UnboundVariable(*i))?,
        Formula::Not(a) => eval_formula(a, v)?.complement(),
        Formula::And(a, b) => eval_formula(a, v)?.intersect(&eval_formula(b, v)?)?,
        Formula::Or(a, b) => eval_formula(a, v)?.union(&eval_formula(b, v)?)?,
        Formula::Implies(a, b) => eval_formula(a, v)?
            .complement()
            .union(&eval_formula(b, v)?)?,
        Formula::Diamond(a) => derived_set(&eval_formula(a, v)?),
        Formula::Box(a) => derived_set(&eval_formula(a, v)?.complement()).complement(),
    })
}

/// `θ ⊨ φ` under `v`.
pub fn holds(theta: &Ordinal, phi: &Formula, v: &OrdinalValuation) -> Result<bool, TopoError> {
    eval_formula(phi, v)?.member(theta)
}

/// Pointwise evaluation in the interval topology (`λ = 1`): `◇ψ` holds at `θ`
/// iff `θ` is a limit and `⟦ψ⟧ ∩ θ` is cofinal in `θ`.
pub fn eval_pointwise_i1(
    phi: &Formula,
    v: &OrdinalValuation,
    theta: &Ordinal,
) -> Result<bool, TopoError> {
    if v.space().lambda != Ordinal::one() {
        return Err(TopoError::WrongLambda(v.space().lambda.to_string()));
    }
    v.space().check_point(theta)?;
    pointwise(phi, v, theta)
}

fn pointwise(phi: &Formula, v: &OrdinalValuation, theta: &Ordinal) -> Result<bool, TopoError> {
    Ok(match phi {
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Var(i) => v
            .get(*i)
            .ok_or(TopoError::UnboundVariable(*i))?
            .member(theta)?,
        Formula::Not(a) => !pointwise(a, v, theta)?,
        Formula::And(a, b) => pointwise(a, v, theta)? && pointwise(b, v, theta)?,
        Formula::Or(a, b) => pointwise(a, v, theta)? || pointwise(b, v, theta)?,
        Formula::Implies(a, b) => !pointwise(a, v, theta)? || pointwise(b, v, theta)?,
        Formula::Diamond(a) => cofinal(&eval_formula(a, v)?, theta)?,
        Formula::Box(a) => !cofinal(&eval_formula(a, v)?.complement(), theta)?,
    })
}

/// Points of `points` where [`eval_formula`] and [`eval_pointwise_i1`]
/// disagree, in input order.
pub fn oracle_mismatches(
    phi: &Formula,
    v: &OrdinalValuation,
    points: &[Ordinal],
    exec: Exec,
) -> Result<Vec<Ordinal>, TopoError> {
    let region = eval_formula(phi, v)?;
    let verdicts = exec.map(points, |p| -> Result<bool, TopoError> {
        Ok(region.member(p)? != eval_pointwise_i1(phi, v, p)?)
    });
    let mut out = Vec::new();
    for (p, differs) in points.iter().zip(verdicts) {
        if differs? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn cofinal(r: &Region, theta: &Ordinal) -> Result<bool, TopoError> {
    if !theta.is_limit() {
        return Ok(false);
    }
    r.is_cofinal_in(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::topo::{Cell, Interval};

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn rank_one_model() -> OrdinalValuation {
        let s = SpaceSpec::new(o("w^2 + 1"), o("1")).unwrap();
        let layer = Region::from_cell(
            &s,
            Cell::single(1, Interval::new(Some(o("0")), Some(o("1")))),
        );
        OrdinalValuation::new(s).with(0, layer).unwrap()
    }

    #[test]
    fn diamond_of_rank_one_layer() {
        let v = rank_one_model();
        let r = eval_formula(&f("<>p0"), &v).unwrap();
        let expected = Region::points(v.space(), [o("w^2")]).unwrap();
        assert!(r.same_set(&expected).unwrap());
        assert!(eval_pointwise_i1(&f("<>p0"), &v, &o("w^2")).unwrap());
        assert!(!eval_pointwise_i1(&f("<>p0"), &v, &o("w*3")).unwrap());
    }

    #[test]
    fn tautologies_and_rank() {
        let v = rank_one_model();
        let full = Region::full(v.space());
        assert!(eval_formula(&f("p0 | ~p0"), &v)
            .unwrap()
            .same_set(&full)
            .unwrap());
        let dt = eval_formula(&f("<>True"), &v).unwrap();
        assert!(dt
            .same_set(&Region::rank_at_least(v.space(), 1, 1))
            .unwrap());
        assert!(eval_pointwise_i1(&f("[]False"), &v, &o("5")).unwrap());
    }

    #[test]
    fn sweep_finds_no_mismatch() {
        let v = rank_one_model();
        let pts = crate::topo::canonical_samples(v.space(), 30);
        for phi in ["<>p0", "[](p0 -> <>True)", "<>~p0 & ~p0"] {
            for exec in [Exec::Sequential, Exec::Parallel] {
                assert!(oracle_mismatches(&f(phi), &v, &pts, exec)
                    .unwrap()
                    .is_empty());
            }
        }
    }

    #[test]
    fn errors() {
        let v = rank_one_model();
        assert_eq!(
            eval_formula(&f("p3"), &v),
            Err(TopoError::UnboundVariable(3))
        );
        let s2 = SpaceSpec::new(o("w^2"), o("2")).unwrap();
        let v2 = OrdinalValuation::new(s2);
        assert!(matches!(
            eval_pointwise_i1(&f("True"), &v2, &o("1")),
            Err(TopoError::WrongLambda(_))
        ));
    }
}
