use serde::Serialize;

use super::{BouquetTree, Model};
use crate::logic::Formula;

/// Why a formula holds or fails at the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Decided by model checking a finite tree.
    Kripke {
        node: usize,
    },
    Constant,
    Atom {
        var: u32,
    },
    /// `◇ψ`: positions `start + step·q` satisfy `ψ` by construction; the
    /// listed `(ξ, node)` pairs were found for the sampled tails.
    Schedule {
        psi: Formula,
        start: u64,
        step: u64,
        witnesses: Vec<(u64, usize)>,
    },
    /// `□φ`: every child from `tail` on satisfies `φ ∧ □φ`; `checked` lists
    /// the children where `φ` was verified at every node.
    Tail {
        phi: Formula,
        tail: u64,
        checked: Vec<u64>,
    },
    Both {
        left: Box<Certificate>,
        right: Box<Certificate>,
    },
    Negated {
        inner: Box<Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Holds(Certificate),
    Fails(Certificate),
    Unverified(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }
}

/// Checks `phi` at the root, sampling `k` tails for modal subformulas.
pub fn check_root(m: &Model, phi: &Formula, k: u64) -> Verdict {
    match m {
        Model::Finite(t) => match t.eval(t.root(), phi) {
            Ok(true) => Verdict::Holds(Certificate::Kripke { node: t.root() }),
            Ok(false) => Verdict::Fails(Certificate::Kripke { node: t.root() }),
            Err(e) => Verdict::Unverified(e.to_string()),
        },
        Model::Bouquet(b) => check(b, &phi.core(), k.max(1)),
    }
}

fn check(b: &BouquetTree, phi: &Formula, k: u64) -> Verdict {
    match phi {
        Formula::Bottom => Verdict::Fails(Certificate::Constant),
        Formula::Top => Verdict::Holds(Certificate::Constant),
        Formula::Var(v) => {
            let cert = Certificate::Atom { var: *v };
            if b.root_vars().contains(v) {
                Verdict::Holds(cert)
            } else {
                Verdict::Fails(cert)
            }
        }
        Formula::Not(a) => match &**a {
            Formula::Box(chi) => diamond(b, &chi.neg(), k),
            _ => match check(b, a, k) {
                Verdict::Holds(c) => Verdict::Fails(Certificate::Negated { inner: Box::new(c) }),
                Verdict::Fails(c) => Verdict::Holds(Certificate::Negated { inner: Box::new(c) }),
                u => u,
            },
        },
        Formula::And(x, y) => match (check(b, x, k), check(b, y, k)) {
            (Verdict::Holds(c1), Verdict::Holds(c2)) => Verdict::Holds(Certificate::Both {
                left: Box::new(c1),
                right: Box::new(c2),
            }),
            (Verdict::Fails(c), _) | (_, Verdict::Fails(c)) => Verdict::Fails(c),
            (Verdict::Unverified(r), _) | (_, Verdict::Unverified(r)) => Verdict::Unverified(r),
        },
        Formula::Box(a) => boxed(b, a, k),
        other => check(b, &other.core(), k),
    }
}

fn diamond(b: &BouquetTree, psi: &Formula, k: u64) -> Verdict {
    let Some(schedule) = b.schedule() else {
        return Verdict::Unverified("no schedule recorded".into());
    };
    let Some((start, step)) = schedule.progression(psi) else {
        if schedule.tail(&psi.neg()).is_some() {
            return match boxed(b, &psi.neg(), k) {
                Verdict::Holds(c) => Verdict::Fails(Certificate::Negated { inner: Box::new(c) }),
                other => other,
            };
        }
        return Verdict::Unverified(format!("{psi} is not scheduled"));
    };
    let mut witnesses: Vec<(u64, usize)> = Vec::new();
    for j in 0..k {
        let xi = if j <= start {
            start
        } else {
            start + (j - start).div_ceil(step) * step
        };
        if witnesses.last().is_some_and(|w| w.0 == xi) {
            continue;
        }
        let child = match b.child(xi) {
            Ok(c) => c,
            Err(e) => return Verdict::Unverified(e.to_string()),
        };
        let ext = child.tree.extension(psi);
        let root = child.tree.root();
        let node = if ext[root] {
            Some(root)
        } else {
            ext.iter().position(|&x| x)
        };
        match node {
            Some(n) => witnesses.push((xi, n)),
            None => {
                return Verdict::Unverified(format!("child {xi} has no point satisfying {psi}"))
            }
        }
    }
    Verdict::Holds(Certificate::Schedule {
        psi: psi.clone(),
        start,
        step,
        witnesses,
    })
}

fn boxed(b: &BouquetTree, phi: &Formula, k: u64) -> Verdict {
    let Some(schedule) = b.schedule() else {
        return Verdict::Unverified("no schedule recorded".into());
    };
    let Some(tail) = schedule.tail(phi) else {
        if schedule.progression(&phi.neg()).is_some() {
            return match diamond(b, &phi.neg(), k) {
                Verdict::Holds(c) => Verdict::Fails(Certificate::Negated { inner: Box::new(c) }),
                other => other,
            };
        }
        return Verdict::Unverified(format!("[]{phi} has no tail index"));
    };
    let mut checked = Vec::new();
    for xi in tail..tail + k {
        let child = match b.child(xi) {
            Ok(c) => c,
            Err(e) => return Verdict::Unverified(e.to_string()),
        };
        if !child.tree.extension(phi).iter().all(|&x| x) {
            return Verdict::Unverified(format!("child {xi} violates {phi}"));
        }
        checked.push(xi);
    }
    Verdict::Holds(Certificate::Tail {
        phi: phi.clone(),
        tail,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouquet::{build_model, lottery_sum, Catalogue, Child};
    use crate::lab::gamma_fragment;
    use crate::logic::{parse_formula, FormulaSet, KripkeTree};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn diamonds_hold_with_witnesses() {
        let m = build_model(&FormulaSet::parse_list("<>p0, <>~p0").unwrap(), 8).unwrap();
        for phi in ["<>p0", "<>~p0", "<>p0 & <>~p0", "<><>True"] {
            let v = check_root(&m, &f(phi), 8);
            assert!(v.holds(), "{phi}: {v:?}");
        }
        assert!(matches!(check_root(&m, &f("p7"), 8), Verdict::Fails(_)));
        assert!(matches!(
            check_root(&m, &f("<>p7"), 8),
            Verdict::Unverified(_)
        ));
        assert!(matches!(check_root(&m, &f("[]p0"), 8), Verdict::Fails(_)));
    }

    #[test]
    fn boxes_hold_with_tails() {
        let m = build_model(&gamma_fragment(2), 8).unwrap();
        let v = check_root(&m, &f("[](p0 -> <>p1)"), 8);
        let Verdict::Holds(Certificate::Tail { checked, .. }) = v else {
            panic!("expected a tail certificate, got {v:?}")
        };
        assert_eq!(checked.len(), 8);
        for phi in &gamma_fragment(2) {
            assert!(check_root(&m, phi, 8).holds());
        }
    }

    #[test]
    fn single_node_box_bottom() {
        let m = build_model(&FormulaSet::parse_list("[]False").unwrap(), 4).unwrap();
        assert!(check_root(&m, &f("[]False"), 1).holds());
        assert!(matches!(check_root(&m, &f("<>True"), 1), Verdict::Fails(_)));
    }

    #[test]
    fn catalogue_bouquet_has_no_schedule() {
        let c = Child {
            delta: FormulaSet::new(),
            tree: KripkeTree::single(),
        };
        let b = lottery_sum(Box::new(Catalogue(vec![c]))).unwrap();
        let m = Model::Bouquet(b);
        assert!(matches!(
            check_root(&m, &f("<>True"), 3),
            Verdict::Unverified(_)
        ));
    }
}
