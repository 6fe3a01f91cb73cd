use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Cell, Interval, SpaceSpec, TopoError};
use crate::ordinal::{hyper_log_n, Ordinal};

/// A subset of `[0, Θ)`: `(⋃ cells ∪ plus) \ minus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    space: SpaceSpec,
    cells: Vec<Cell>,
    plus: BTreeSet<Ordinal>,
    minus: BTreeSet<Ordinal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

impl SetOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersect => a && b,
            SetOp::Difference => a && !b,
            SetOp::Complement => !a,
        }
    }
}

impl Region {
    pub fn empty(space: &SpaceSpec) -> Self {
        Region {
            space: space.clone(),
            cells: Vec::new(),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        }
    }

    pub fn full(space: &SpaceSpec) -> Self {
        Self::from_cells(space, vec![Cell::full()])
    }

    pub fn from_cells(space: &SpaceSpec, cells: Vec<Cell>) -> Self {
        Region {
            space: space.clone(),
            cells: simplify(space, cells),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        }
    }

    pub fn from_cell(space: &SpaceSpec, cell: Cell) -> Self {
        Self::from_cells(space, vec![cell])
    }

    /// A finite set of points.
    pub fn points<I: IntoIterator<Item = Ordinal>>(
        space: &SpaceSpec,
        points: I,
    ) -> Result<Self, TopoError> {
        Self::with_corrections(space, Vec::new(), points, [])
    }

    /// `{θ : ℓ^ξ θ ≥ m}`.
    pub fn rank_at_least(space: &SpaceSpec, xi: u64, m: u64) -> Self {
        if m == 0 {
            return Self::full(space);
        }
        Self::from_cell(
            space,
            Cell::single(xi, Interval::above(Ordinal::nat(m - 1))),
        )
    }

    /// Builds a region, validating that corrections lie in the space.
    pub fn with_corrections<P, M>(
        space: &SpaceSpec,
        cells: Vec<Cell>,
        plus: P,
        minus: M,
    ) -> Result<Self, TopoError>
    where
        P: IntoIterator<Item = Ordinal>,
        M: IntoIterator<Item = Ordinal>,
    {
        let mut r = Self::from_cells(space, cells);
        for p in plus {
            space.check_point(&p)?;
            r.plus.insert(p);
        }
        for m in minus {
            space.check_point(&m)?;
            r.minus.insert(m);
        }
        let clash: Vec<Ordinal> = r.plus.intersection(&r.minus).cloned().collect();
        for p in clash {
            r.plus.remove(&p);
        }
        r.normalize_points();
        Ok(r)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn plus(&self) -> &BTreeSet<Ordinal> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<Ordinal> {
        &self.minus
    }

    fn in_cells(&self, theta: &Ordinal) -> bool {
        self.cells.iter().any(|c| c.contains(theta))
    }

    /// Membership without the space check.
    pub(crate) fn contains(&self, theta: &Ordinal) -> bool {
        if self.plus.contains(theta) {
            return true;
        }
        !self.minus.contains(theta) && self.in_cells(theta)
    }

    pub fn member(&self, theta: &Ordinal) -> Result<bool, TopoError> {
        self.space.check_point(theta)?;
        Ok(self.contains(theta))
    }

    /// Drops corrections that the cells already account for.
    fn normalize_points(&mut self) {
        let cells = &self.cells;
        let covered = |p: &Ordinal| cells.iter().any(|c| c.contains(p));
        self.plus.retain(|p| !covered(p));
        self.minus.retain(|p| covered(p));
    }

    /// Least element, if any.
    pub fn min(&self) -> Option<Ordinal> {
        let from_cells = self.cells.iter().filter_map(|c| self.cell_min(c)).min();
        let from_plus = self.plus.iter().next().cloned();
        from_cells.into_iter().chain(from_plus).min()
    }

    fn cell_min(&self, cell: &Cell) -> Option<Ordinal> {
        let mut x = Ordinal::zero();
        loop {
            let y = cell.next_ge(&x)?;
            if !self.space.contains(&y) {
                return None;
            }
            if !self.minus.contains(&y) {
                return Some(y);
            }
            x = y.succ();
        }
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.cells.iter().all(|c| self.cell_min(c).is_none())
    }

    fn check_same(&self, other: &Region) -> Result<(), TopoError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(TopoError::SpaceMismatch)
        }
    }

    pub fn complement(&self) -> Region {
        let mut r = Region {
            space: self.space.clone(),
            cells: complement_cells(&self.space, &self.cells),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        self.fix_points(&mut r, None, SetOp::Complement);
        r
    }

    pub fn union(&self, other: &Region) -> Result<Region, TopoError> {
        self.check_same(other)?;
        Ok(self.union_unchecked(other))
    }

    pub fn intersect(&self, other: &Region) -> Result<Region, TopoError> {
        self.check_same(other)?;
        Ok(self.intersect_unchecked(other))
    }

    pub fn difference(&self, other: &Region) -> Result<Region, TopoError> {
        self.check_same(other)?;
        Ok(self.difference_unchecked(other))
    }

    pub(crate) fn union_unchecked(&self, other: &Region) -> Region {
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        let mut r = Region {
            space: self.space.clone(),
            cells: simplify(&self.space, cells),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        self.fix_points(&mut r, Some(other), SetOp::Union);
        r
    }

    pub(crate) fn intersect_unchecked(&self, other: &Region) -> Region {
        let mut r = Region {
            space: self.space.clone(),
            cells: intersect_cells(&self.space, &self.cells, &other.cells),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        self.fix_points(&mut r, Some(other), SetOp::Intersect);
        r
    }

    pub(crate) fn difference_unchecked(&self, other: &Region) -> Region {
        let comp = complement_cells(&self.space, &other.cells);
        let mut r = Region {
            space: self.space.clone(),
            cells: intersect_cells(&self.space, &self.cells, &comp),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        self.fix_points(&mut r, Some(other), SetOp::Difference);
        r
    }

    /// Sets the point corrections of `out` (whose cells are already the
    /// cell-level result) so that it agrees with `op` at every corrected point
    /// of the operands. Off those points, cell-level results are exact.
    fn fix_points(&self, out: &mut Region, other: Option<&Region>, op: SetOp) {
        let mut special: BTreeSet<&Ordinal> = self.plus.iter().chain(&self.minus).collect();
        if let Some(o) = other {
            special.extend(o.plus.iter().chain(&o.minus));
        }
        for p in special {
            let want = op.apply(self.contains(p), other.is_some_and(|o| o.contains(p)));
            let have = out.in_cells(p);
            if want && !have {
                out.plus.insert(p.clone());
            } else if !want && have {
                out.minus.insert(p.clone());
            }
        }
    }

    pub fn is_subset(&self, other: &Region) -> Result<bool, TopoError> {
        self.check_same(other)?;
        Ok(self.difference_unchecked(other).is_empty())
    }

    /// Extensional equality.
    pub fn same_set(&self, other: &Region) -> Result<bool, TopoError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// `sup(R ∩ [0, α))` and whether it is attained; `None` when that set is
    /// empty.
    pub fn sup_below(&self, alpha: &Ordinal) -> Result<Option<(Ordinal, bool)>, TopoError> {
        if alpha > &self.space.theta {
            return Err(TopoError::OutOfSpace(alpha.to_string()));
        }
        let mut bound = alpha.clone();
        loop {
            let mut best: Option<(Ordinal, bool)> = None;
            let candidates = self.cells.iter().filter_map(|c| c.sup_below(&bound)).chain(
                self.plus
                    .range(..&bound)
                    .next_back()
                    .map(|p| (p.clone(), true)),
            );
            for (s, att) in candidates {
                best = match best {
                    Some((b, batt)) if b > s => Some((b, batt)),
                    Some((b, batt)) if b == s => Some((b, batt || att)),
                    _ => Some((s, att)),
                };
            }
            match best {
                None => return Ok(None),
                Some((s, true)) if self.minus.contains(&s) => bound = s,
                other => return Ok(other),
            }
        }
    }

    /// `R ∩ [0, α)` is unbounded in the limit `α`.
    pub fn is_cofinal_in(&self, alpha: &Ordinal) -> Result<bool, TopoError> {
        if !alpha.is_limit() {
            return Err(TopoError::NotLimit(alpha.to_string()));
        }
        Ok(self.sup_below(alpha)? == Some((alpha.clone(), false)))
    }
}

fn cell_is_empty(space: &SpaceSpec, c: &Cell) -> bool {
    c.is_void()
        || c.next_ge(&Ordinal::zero())
            .is_none_or(|m| !space.contains(&m))
}

/// Drops empty and subsumed cells and merges mergeable pairs.
fn simplify(space: &SpaceSpec, cells: Vec<Cell>) -> Vec<Cell> {
    let mut cells: Vec<Cell> = cells
        .into_iter()
        .filter(|c| !cell_is_empty(space, c))
        .collect();
    cells.sort();
    cells.dedup();
    loop {
        let mut changed = false;
        'outer: for i in 0..cells.len() {
            for j in 0..cells.len() {
                if i == j {
                    continue;
                }
                if cells[i].within(&cells[j]) {
                    cells.remove(i);
                    changed = true;
                    break 'outer;
                }
                if let Some(m) = cells[i].merge(&cells[j]) {
                    let (a, b) = (i.min(j), i.max(j));
                    cells.remove(b);
                    cells.remove(a);
                    cells.push(m);
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    cells.sort();
    cells
}

fn intersect_cells(space: &SpaceSpec, a: &[Cell], b: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if let Some(c) = x.intersect(y) {
                if !cell_is_empty(space, &c) {
                    out.push(c);
                }
            }
        }
    }
    simplify(space, out)
}

fn complement_cells(space: &SpaceSpec, cells: &[Cell]) -> Vec<Cell> {
    let mut acc = vec![Cell::full()];
    for c in cells {
        acc = intersect_cells(space, &acc, &c.complement());
        if acc.is_empty() {
            break;
        }
    }
    acc
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() && self.plus.is_empty() {
            return f.write_str("empty");
        }
        let mut parts: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        if !self.plus.is_empty() {
            let pts: Vec<String> = self.plus.iter().map(|p| p.to_string()).collect();
            parts.push(format!("{{{}}}", pts.join(", ")));
        }
        write!(f, "{}", parts.join(" | "))?;
        if !self.minus.is_empty() {
            let pts: Vec<String> = self.minus.iter().map(|p| p.to_string()).collect();
            write!(f, " \\ {{{}}}", pts.join(", "))?;
        }
        Ok(())
    }
}

pub fn region_combine(op: SetOp, a: &Region, b: Option<&Region>) -> Result<Region, TopoError> {
    match (op, b) {
        (SetOp::Complement, _) => Ok(a.complement()),
        (SetOp::Union, Some(b)) => a.union(b),
        (SetOp::Intersect, Some(b)) => a.intersect(b),
        (SetOp::Difference, Some(b)) => a.difference(b),
        (_, None) => Err(TopoError::InvalidSpec(
            "binary region operation needs two operands".into(),
        )),
    }
}

pub fn member(theta: &Ordinal, r: &Region) -> Result<bool, TopoError> {
    r.member(theta)
}

pub fn is_empty(r: &Region) -> bool {
    r.is_empty()
}

pub fn is_subset(a: &Region, b: &Region) -> Result<bool, TopoError> {
    a.is_subset(b)
}

pub fn sup_below(r: &Region, alpha: &Ordinal) -> Result<Option<(Ordinal, bool)>, TopoError> {
    r.sup_below(alpha)
}

pub fn is_cofinal_in(r: &Region, alpha: &Ordinal) -> Result<bool, TopoError> {
    r.is_cofinal_in(alpha)
}

/// A finite partial map `ξ ↦ r(ξ)` selecting the basic neighbourhood
/// `⋂_ξ (r(ξ), ℓ^ξ θ]_ξ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborhoodSpec {
    pub r: BTreeMap<u64, Ordinal>,
}

impl NeighborhoodSpec {
    pub fn new<I: IntoIterator<Item = (u64, Ordinal)>>(entries: I) -> Self {
        NeighborhoodSpec {
            r: entries.into_iter().collect(),
        }
    }
}

pub fn basic_nbhd(
    theta: &Ordinal,
    r: &NeighborhoodSpec,
    space: &SpaceSpec,
) -> Result<Region, TopoError> {
    space.check_point(theta)?;
    let mut cell = Cell::full();
    for (&xi, bound) in &r.r {
        if space.finite_lambda().is_some_and(|l| xi >= l) {
            return Err(TopoError::InvalidSpec(format!(
                "index {xi} is not below lambda = {}",
                space.lambda
            )));
        }
        let top = hyper_log_n(xi, theta);
        if bound >= &top {
            return Err(TopoError::InvalidSpec(format!(
                "r({xi}) = {bound} is not below l^{xi}({theta}) = {top}"
            )));
        }
        cell = cell
            .intersect(&Cell::single(
                xi,
                Interval::new(Some(bound.clone()), Some(top)),
            ))
            .expect("neighbourhood contains theta");
    }
    Ok(Region::from_cell(space, cell))
}
