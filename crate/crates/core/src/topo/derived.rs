use super::{Cell, Interval, Region, SpaceSpec, TopoError};
use crate::ordinal::Ordinal;

/// The set of limit points of `r` under `𝓘_λ`.
///
/// - `λ = 0` (left topology): `{θ : θ > min R}`.
/// - finite `λ = n ≥ 1`: the space is T1, so point corrections are
///   irrelevant and `d` distributes over the cells. A cell with constraints
///   `c_ξ` has derived set `{θ : c_ξ(ℓ^ξ θ) for ξ < n, ℓ^n θ > m}` where `m` is
///   the least ordinal satisfying the constraints at indices `≥ n` shifted
///   down by `n`; the constraints below `n` are clopen, and near `θ` the basic
///   neighbourhoods realise every value of `ℓ^n` below `ℓ^n θ`.
/// - `λ ≥ ω`: every point has rank `ℓ^λ θ = 0`, the space is discrete and
///   `d(R) = ∅`.
pub fn derived_set(r: &Region) -> Region {
    let space = r.space();
    match space.finite_lambda() {
        None => Region::empty(space),
        Some(0) => match r.min() {
            None => Region::empty(space),
            Some(m) => Region::from_cell(space, Cell::single(0, Interval::above(m))),
        },
        Some(n) => {
            let cells = r
                .cells()
                .iter()
                .filter_map(|c| derived_cell(c, n))
                .collect();
            Region::from_cells(space, cells)
        }
    }
}

fn derived_cell(c: &Cell, n: u64) -> Option<Cell> {
    let m = c.next_ge_from(n, &Ordinal::zero())?;
    c.truncate(n)
        .intersect(&Cell::single(n, Interval::above(m)))
}

/// `d^k(r)`.
pub fn derived_set_iter(r: &Region, k: usize) -> Region {
    (0..k).fold(r.clone(), |acc, _| derived_set(&acc))
}

/// `ℓ^λ θ`, the Cantor–Bendixson rank of `θ` in `(Θ, 𝓘_λ)`.
pub fn rank_of(theta: &Ordinal, space: &SpaceSpec) -> Result<Ordinal, TopoError> {
    space.check_point(theta)?;
    Ok(space.rank(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn space(theta: &str, lambda: u64) -> SpaceSpec {
        SpaceSpec::new(o(theta), Ordinal::nat(lambda)).unwrap()
    }

    #[test]
    fn full_space_at_lambda_one() {
        let s = space("w^2 + 1", 1);
        let d = derived_set(&Region::full(&s));
        assert!(d.same_set(&Region::rank_at_least(&s, 1, 1)).unwrap());
    }

    #[test]
    fn finite_sets_have_no_limit_points() {
        let s = space("w^3 + 1", 1);
        let pts = Region::points(&s, [o("w"), o("w^2"), o("3")]).unwrap();
        assert!(derived_set(&pts).is_empty());
    }

    #[test]
    fn rank_one_layer() {
        let s = space("w^2 + 1", 1);
        let layer = Region::from_cell(
            &s,
            Cell::single(1, Interval::new(Some(o("0")), Some(o("1")))),
        );
        let d = derived_set(&layer);
        let expected = Region::points(&s, [o("w^2")]).unwrap();
        assert!(d.same_set(&expected).unwrap());
    }

    #[test]
    fn left_topology() {
        let s = space("w^2", 0);
        let r = Region::points(&s, [o("w + 2"), o("w*3")]).unwrap();
        let d = derived_set(&r);
        assert!(!d.member(&o("w + 2")).unwrap());
        assert!(d.member(&o("w + 3")).unwrap());
    }

    #[test]
    fn discrete_above_omega() {
        let s = SpaceSpec::new(o("w^w"), o("w")).unwrap();
        assert!(derived_set(&Region::full(&s)).is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            rank_of(&o("w^w*2 + w^3"), &space("w^(w+1)", 1)).unwrap(),
            o("3")
        );
        let s0 = space("w^(w+1)", 0);
        assert_eq!(rank_of(&o("w^w + 5"), &s0).unwrap(), o("w^w + 5"));
        assert_eq!(
            rank_of(&o("w^(w^3)"), &space("w^(w^4)", 2)).unwrap(),
            o("3")
        );
        assert!(rank_of(&o("w^2"), &space("w", 1)).is_err());
    }
}
