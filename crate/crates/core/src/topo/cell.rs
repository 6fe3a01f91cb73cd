use std::collections::BTreeMap;
use std::fmt;

use crate::ordinal::{end_log, Ordinal};

/// A half-open interval `(lo, hi]` of ordinals. `lo = None` is the bottom
/// sentinel `−1`; `hi = None` is unbounded above.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Interval {
    pub lo: Option<Ordinal>,
    pub hi: Option<Ordinal>,
}

impl Interval {
    pub fn full() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn new(lo: Option<Ordinal>, hi: Option<Ordinal>) -> Self {
        Interval { lo, hi }
    }

    /// `(lo, ∞)`.
    pub fn above(lo: Ordinal) -> Self {
        Interval {
            lo: Some(lo),
            hi: None,
        }
    }

    /// `[0, hi]`.
    pub fn up_to(hi: Ordinal) -> Self {
        Interval {
            lo: None,
            hi: Some(hi),
        }
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn is_void(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(l), Some(h)) if l >= h)
    }

    pub fn lo_ok(&self, v: &Ordinal) -> bool {
        self.lo.as_ref().is_none_or(|l| v > l)
    }

    pub fn hi_ok(&self, v: &Ordinal) -> bool {
        self.hi.as_ref().is_none_or(|h| v <= h)
    }

    pub fn contains(&self, v: &Ordinal) -> bool {
        self.lo_ok(v) && self.hi_ok(v)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: min_hi(&self.hi, &other.hi),
        }
    }

    pub fn within(&self, other: &Interval) -> bool {
        self.is_void() || (other.lo <= self.lo && hi_le(&self.hi, &other.hi))
    }

    /// The union, when the two intervals overlap or abut.
    pub fn merge(&self, other: &Interval) -> Option<Interval> {
        if self.is_void() {
            return Some(other.clone());
        }
        if other.is_void() {
            return Some(self.clone());
        }
        let touches = |a: &Interval, b: &Interval| match (&a.hi, &b.lo) {
            (None, _) | (_, None) => true,
            (Some(h), Some(l)) => l <= h,
        };
        if touches(self, other) && touches(other, self) {
            Some(Interval {
                lo: self.lo.clone().min(other.lo.clone()),
                hi: max_hi(&self.hi, &other.hi),
            })
        } else {
            None
        }
    }

    /// The complement as at most two intervals.
    pub fn complement(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        if let Some(l) = &self.lo {
            out.push(Interval::up_to(l.clone()));
        }
        if let Some(h) = &self.hi {
            out.push(Interval::above(h.clone()));
        }
        out
    }
}

fn hi_le(a: &Option<Ordinal>, b: &Option<Ordinal>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

fn min_hi(a: &Option<Ordinal>, b: &Option<Ordinal>) -> Option<Ordinal> {
    if hi_le(a, b) {
        a.clone()
    } else {
        b.clone()
    }
}

fn max_hi(a: &Option<Ordinal>, b: &Option<Ordinal>) -> Option<Ordinal> {
    if hi_le(a, b) {
        b.clone()
    } else {
        a.clone()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Some(l) => write!(f, "({l}, ")?,
            None => f.write_str("(-1, ")?,
        }
        match &self.hi {
            Some(h) => write!(f, "{h}]"),
            None => f.write_str("top]"),
        }
    }
}

/// One generator `(lo, hi]_ξ = {θ : lo < ℓ^ξ θ ≤ hi}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankConstraint {
    pub xi: u64,
    pub interval: Interval,
}

impl RankConstraint {
    pub fn new(xi: u64, lo: Option<Ordinal>, hi: Option<Ordinal>) -> Self {
        RankConstraint {
            xi,
            interval: Interval { lo, hi },
        }
    }
}

/// An intersection of rank constraints with distinct indices. Missing
/// indices are unconstrained. Cells are not bounded by any space; regions
/// intersect them with `[0, Θ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell {
    constraints: BTreeMap<u64, Interval>,
}

impl Cell {
    /// The unconstrained cell (every ordinal).
    pub fn full() -> Self {
        Self::default()
    }

    pub fn single(xi: u64, interval: Interval) -> Self {
        let mut c = Self::full();
        c.set(xi, interval);
        c
    }

    /// Intersects the constraints; repeated indices are combined.
    pub fn from_constraints<I: IntoIterator<Item = RankConstraint>>(cs: I) -> Self {
        let mut c = Self::full();
        for rc in cs {
            let merged = c.at(rc.xi).intersect(&rc.interval);
            c.set(rc.xi, merged);
        }
        c
    }

    fn set(&mut self, xi: u64, interval: Interval) {
        if interval.is_full() {
            self.constraints.remove(&xi);
        } else {
            self.constraints.insert(xi, interval);
        }
    }

    pub fn at(&self, xi: u64) -> Interval {
        self.constraints.get(&xi).cloned().unwrap_or_default()
    }

    pub fn constraints(&self) -> impl Iterator<Item = RankConstraint> + '_ {
        self.constraints.iter().map(|(&xi, iv)| RankConstraint {
            xi,
            interval: iv.clone(),
        })
    }

    pub fn is_full(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn max_xi(&self) -> Option<u64> {
        self.constraints.keys().next_back().copied()
    }

    /// Some constraint interval is empty on its face.
    pub fn is_void(&self) -> bool {
        self.constraints.values().any(Interval::is_void)
    }

    pub fn contains(&self, theta: &Ordinal) -> bool {
        self.contains_from(0, theta)
    }

    /// Membership in the cell shifted down by `k`: constraint `ξ ≥ k`
    /// applies to `ℓ^{ξ−k} v`.
    fn contains_from(&self, k: u64, v: &Ordinal) -> bool {
        let mut cur = v.clone();
        let mut depth = k;
        for (&xi, iv) in self.constraints.range(k..) {
            while depth < xi {
                cur = end_log(&cur);
                depth += 1;
            }
            if !iv.contains(&cur) {
                return false;
            }
        }
        true
    }

    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        let mut out = self.clone();
        for (&xi, iv) in &other.constraints {
            let merged = out.at(xi).intersect(iv);
            if merged.is_void() {
                return None;
            }
            out.set(xi, merged);
        }
        Some(out)
    }

    /// Syntactic inclusion: every constraint of `other` is implied by ours.
    pub fn within(&self, other: &Cell) -> bool {
        other
            .constraints
            .iter()
            .all(|(&xi, iv)| self.at(xi).within(iv))
    }

    /// Union with a cell that differs in at most one index, if that union is
    /// again a cell.
    pub fn merge(&self, other: &Cell) -> Option<Cell> {
        let mut keys: Vec<u64> = self
            .constraints
            .keys()
            .chain(other.constraints.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let diff: Vec<u64> = keys
            .into_iter()
            .filter(|&k| self.at(k) != other.at(k))
            .collect();
        match diff.as_slice() {
            [] => Some(self.clone()),
            [k] => {
                let merged = self.at(*k).merge(&other.at(*k))?;
                let mut out = self.clone();
                out.set(*k, merged);
                Some(out)
            }
            _ => None,
        }
    }

    /// The complement as a union of single-constraint cells.
    pub fn complement(&self) -> Vec<Cell> {
        self.constraints
            .iter()
            .flat_map(|(&xi, iv)| {
                iv.complement()
                    .into_iter()
                    .map(move |p| Cell::single(xi, p))
            })
            .collect()
    }

    /// The constraints with index below `n`.
    pub fn truncate(&self, n: u64) -> Cell {
        Cell {
            constraints: self
                .constraints
                .range(..n)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Least member `≥ x`, over all ordinals below ε₀.
    pub fn next_ge(&self, x: &Ordinal) -> Option<Ordinal> {
        self.next_ge_from(0, x)
    }

    /// Least `v ≥ x` in the cell shifted down by `k`.
    ///
    /// Members are the `v` with `c_k(v)` whose end logarithm lies in the cell
    /// shifted by `k + 1`. The least `v > x` with `ℓv = ζ` is
    /// `g(x, ζ) = (terms of x above ζ) + ω^ζ·(coeff of ω^ζ in x + 1)`, which
    /// is increasing in `ζ`, so the answer uses the least admissible `ζ`.
    pub(crate) fn next_ge_from(&self, k: u64, x: &Ordinal) -> Option<Ordinal> {
        let c0 = self.at(k);
        let x = match &c0.lo {
            Some(l) if x <= l => l.succ(),
            _ => x.clone(),
        };
        if !c0.hi_ok(&x) {
            return None;
        }
        if self.max_xi().is_none_or(|m| m <= k) || self.contains_from(k + 1, &end_log(&x)) {
            return Some(x);
        }
        let zeta = self.next_ge_from(k + 1, &Ordinal::zero())?;
        let cand = x
            .prefix_above(&zeta)
            .add(&Ordinal::omega_pow_mul(zeta.clone(), x.coeff_of(&zeta) + 1));
        c0.hi_ok(&cand).then_some(cand)
    }

    /// `sup(C ∩ [0, u))` with whether it is attained, or `None` if empty.
    pub fn sup_below(&self, u: &Ordinal) -> Option<(Ordinal, bool)> {
        self.sup_below_from(0, u)
    }

    fn sup_below_from(&self, k: u64, u: &Ordinal) -> Option<(Ordinal, bool)> {
        let c0 = self.at(k);
        let u = match &c0.hi {
            Some(h) => u.clone().min(h.succ()),
            None => u.clone(),
        };
        let (s, attained) = self.sup_with_log_in(k + 1, &u)?;
        match &c0.lo {
            Some(l) if &s <= l => None,
            _ => Some((s, attained)),
        }
    }

    /// `sup{θ < u : ℓθ ∈ S}` where `S` is the cell shifted down by `k`.
    fn sup_with_log_in(&self, k: u64, u: &Ordinal) -> Option<(Ordinal, bool)> {
        let mut u = u.clone();
        let min_s = self.next_ge_from(k, &Ordinal::zero())?;
        loop {
            let last = u.last_term()?.clone();
            let prefix = u.without_last_term();
            // Below prefix + ω^a·c, the points in [prefix + ω^a·(c−1), u) have
            // end logarithms ranging over all of [0, a) (cofinally), plus the
            // left endpoint itself.
            if !last.exp.is_zero() && min_s < last.exp {
                return Some((u, false));
            }
            if last.coeff >= 2 && self.contains_from(k, &last.exp) {
                let top = prefix.add(&Ordinal::omega_pow_mul(last.exp, last.coeff - 1));
                return Some((top, true));
            }
            if self.contains_from(k, &end_log(&prefix)) {
                return Some((prefix, true));
            }
            if prefix.is_zero() {
                return None;
            }
            u = prefix;
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return f.write_str("all");
        }
        for (i, (xi, iv)) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{iv}_{xi}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::fundamental_seq;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn iv(lo: &str, hi: &str) -> Interval {
        let b = |s: &str| (s != "-1" && s != "top").then(|| o(s));
        Interval::new(b(lo), b(hi))
    }

    /// All ordinals with at most two terms, exponents ≤ 3, coefficients ≤ 3.
    fn small_ordinals() -> Vec<Ordinal> {
        let mut out = vec![Ordinal::zero()];
        let singles: Vec<(u64, u64)> = (0..=3).flat_map(|e| (1..=3).map(move |c| (e, c))).collect();
        for &(e, c) in &singles {
            out.push(Ordinal::omega_pow_mul(Ordinal::nat(e), c));
            for &(e2, c2) in &singles {
                if e2 < e {
                    out.push(
                        Ordinal::omega_pow_mul(Ordinal::nat(e), c)
                            + Ordinal::omega_pow_mul(Ordinal::nat(e2), c2),
                    );
                }
            }
        }
        out.sort();
        out
    }

    fn cells() -> Vec<Cell> {
        vec![
            Cell::full(),
            Cell::single(1, iv("0", "1")),
            Cell::single(0, iv("w", "w^2")),
            Cell::from_constraints([
                RankConstraint {
                    xi: 0,
                    interval: iv("w*2", "w^3"),
                },
                RankConstraint {
                    xi: 1,
                    interval: iv("-1", "1"),
                },
            ]),
            Cell::from_constraints([
                RankConstraint {
                    xi: 0,
                    interval: iv("0", "1"),
                },
                RankConstraint {
                    xi: 1,
                    interval: iv("0", "1"),
                },
            ]),
            Cell::single(2, iv("0", "top")),
            Cell::from_constraints([
                RankConstraint {
                    xi: 1,
                    interval: iv("1", "top"),
                },
                RankConstraint {
                    xi: 2,
                    interval: iv("-1", "0"),
                },
            ]),
            Cell::single(1, iv("-1", "0")),
        ]
    }

    #[test]
    fn membership_examples() {
        let c = Cell::single(1, iv("0", "1"));
        assert!(c.contains(&o("w")));
        assert!(!c.contains(&o("5")));
        assert!(!c.contains(&o("w^2")));
    }

    #[test]
    fn next_ge_matches_scan() {
        let pts = small_ordinals();
        for cell in cells() {
            for (i, x) in pts.iter().enumerate() {
                let scan = pts[i..].iter().find(|p| cell.contains(p));
                match cell.next_ge(x) {
                    Some(got) => {
                        assert!(cell.contains(&got) && &got >= x, "{cell} from {x}");
                        if pts.contains(&got) {
                            assert_eq!(Some(&got), scan, "{cell} from {x}");
                        } else {
                            assert!(scan.is_none_or(|s| &got < s), "{cell} from {x}");
                        }
                    }
                    None => assert_eq!(scan, None, "{cell} from {x}"),
                }
            }
        }
    }

    #[test]
    fn empty_cell_has_no_elements() {
        let c = Cell::from_constraints([
            RankConstraint {
                xi: 0,
                interval: iv("0", "1"),
            },
            RankConstraint {
                xi: 1,
                interval: iv("0", "1"),
            },
        ]);
        assert_eq!(c.next_ge(&Ordinal::zero()), None);
    }

    #[test]
    fn sup_below_examples() {
        let c = Cell::single(1, iv("0", "1"));
        assert_eq!(c.sup_below(&o("w^2")), Some((o("w^2"), false)));
        assert_eq!(c.sup_below(&o("w*3")), Some((o("w*2"), true)));
        assert_eq!(c.sup_below(&o("w")), None);
        assert_eq!(Cell::full().sup_below(&o("w+3")), Some((o("w+2"), true)));
        assert_eq!(Cell::full().sup_below(&o("0")), None);
    }

    #[test]
    fn sup_below_matches_scan_on_successor_bounds() {
        let pts = small_ordinals();
        for cell in cells() {
            for u in pts.iter().filter(|u| u.is_successor()) {
                match cell.sup_below(u) {
                    Some((s, true)) => {
                        assert!(cell.contains(&s) && &s < u, "{cell} below {u}");
                        assert_eq!(cell.next_ge(&s.succ()).filter(|n| n < u), None);
                    }
                    Some((s, false)) => {
                        // members are cofinal in s, and none lies in [s, u)
                        assert!(s.is_limit() && &s < u, "{cell} below {u}");
                        for n in 0..6 {
                            let below = fundamental_seq(&s, n).unwrap();
                            assert!(cell.next_ge(&below).is_some_and(|m| m < s));
                        }
                        assert!(cell.next_ge(&s).is_none_or(|m| &m >= u));
                    }
                    None => assert_eq!(cell.next_ge(&Ordinal::zero()).filter(|n| n < u), None),
                }
            }
        }
    }

    #[test]
    fn merge_and_complement() {
        let a = Cell::single(0, iv("0", "w"));
        let b = Cell::single(0, iv("w", "w^2"));
        assert_eq!(a.merge(&b), Some(Cell::single(0, iv("0", "w^2"))));
        let c = Cell::single(0, iv("w^2", "w^3"));
        assert_eq!(a.merge(&c), None);
        let comp = a.complement();
        assert_eq!(
            comp,
            vec![
                Cell::single(0, iv("-1", "0")),
                Cell::single(0, iv("w", "top"))
            ]
        );
        assert!(Cell::full().complement().is_empty());
    }
}
