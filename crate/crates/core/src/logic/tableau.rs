use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Formula, FormulaSet, KripkeTree, LogicError};

/// Default cap on tableau node expansions.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauConfig {
    pub budget: u64,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// An open saturated tableau: each node carries its saturated label (core
/// formulas) and one child per `¬□χ` in the label, in canonical order.
/// Identical modal seeds share a single subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatTree {
    pub label: FormulaSet,
    pub children: Vec<Arc<SatTree>>,
}

impl SatTree {
    /// Unfolds the tableau into a Kripke tree (preorder ids, root 0). A
    /// variable is true at a node iff it occurs in the node's label.
    pub fn to_kripke(&self) -> KripkeTree {
        let mut t = KripkeTree::single();
        self.mark(&mut t, 0);
        let mut stack = vec![(self, 0usize)];
        while let Some((node, id)) = stack.pop() {
            let mut ids = Vec::with_capacity(node.children.len());
            for c in &node.children {
                let cid = t.add_child(id);
                c.mark(&mut t, cid);
                ids.push(cid);
            }
            for (c, cid) in node.children.iter().zip(ids).rev() {
                stack.push((c, cid));
            }
        }
        t
    }

    fn mark(&self, t: &mut KripkeTree, id: usize) {
        for f in &self.label {
            if let Formula::Var(v) = f {
                t.set_true(*v, id);
            }
        }
    }

    /// `¬□χ` members of the label, i.e. the diamonds this node must witness.
    pub fn diamonds(&self) -> impl Iterator<Item = &Formula> {
        self.label.iter().filter_map(|f| match f {
            Formula::Not(a) => match &**a {
                Formula::Box(chi) => Some(&**chi),
                _ => None,
            },
            _ => None,
        })
    }

    pub fn boxes(&self) -> impl Iterator<Item = &Formula> {
        self.label.iter().filter_map(|f| match f {
            Formula::Box(a) => Some(&**a),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat { model: KripkeTree, witness: usize },
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharBound {
    Finite(u64),
    AtLeast(u64),
}

impl fmt::Display for CharBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharBound::Finite(n) => write!(f, "{n}"),
            CharBound::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

struct Search {
    budget: u64,
    steps: u64,
    memo: HashMap<BTreeSet<Formula>, Option<Arc<SatTree>>>,
}

enum Step {
    Closed,
    Add(Vec<Formula>),
    Branch(Formula, Formula),
    Saturated,
}

impl Search {
    fn new(config: TableauConfig) -> Self {
        Search {
            budget: config.budget,
            steps: 0,
            memo: HashMap::new(),
        }
    }

    fn tick(&mut self) -> Result<(), LogicError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(LogicError::ResourceLimit {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn classify(set: &BTreeSet<Formula>) -> Step {
        if set.contains(&Formula::Bottom) {
            return Step::Closed;
        }
        for f in set {
            if let Formula::Not(a) = f {
                if set.contains(&**a) {
                    return Step::Closed;
                }
            }
        }
        for f in set {
            match f {
                Formula::And(a, b) if !(set.contains(&**a) && set.contains(&**b)) => {
                    return Step::Add(vec![(**a).clone(), (**b).clone()]);
                }
                Formula::Not(a) => {
                    if let Formula::Not(x) = &**a {
                        if !set.contains(&**x) {
                            return Step::Add(vec![(**x).clone()]);
                        }
                    }
                }
                _ => {}
            }
        }
        for f in set {
            if let Formula::Not(a) = f {
                if let Formula::And(x, y) = &**a {
                    let (nx, ny) = (x.neg(), y.neg());
                    if !set.contains(&nx) && !set.contains(&ny) {
                        return Step::Branch(nx, ny);
                    }
                }
            }
        }
        Step::Saturated
    }

    fn search(&mut self, mut set: BTreeSet<Formula>) -> Result<Option<Arc<SatTree>>, LogicError> {
        loop {
            self.tick()?;
            match Self::classify(&set) {
                Step::Closed => return Ok(None),
                Step::Add(fs) => set.extend(fs),
                Step::Branch(left, right) => {
                    let mut l = set.clone();
                    l.insert(left);
                    if let Some(t) = self.search(l)? {
                        return Ok(Some(t));
                    }
                    set.insert(right);
                }
                Step::Saturated => return self.expand(set),
            }
        }
    }

    fn expand(&mut self, set: BTreeSet<Formula>) -> Result<Option<Arc<SatTree>>, LogicError> {
        let boxed: Vec<Formula> = set
            .iter()
            .filter(|f| matches!(f, Formula::Box(_)))
            .cloned()
            .collect();
        let mut children = Vec::new();
        for f in &set {
            let Formula::Not(a) = f else { continue };
            let Formula::Box(chi) = &**a else { continue };
            let mut seed: BTreeSet<Formula> = BTreeSet::new();
            seed.insert(chi.neg());
            seed.insert((**a).clone());
            for b in &boxed {
                if let Formula::Box(inner) = b {
                    seed.insert((**inner).clone());
                }
                seed.insert(b.clone());
            }
            match self.seeded(seed)? {
                Some(t) => children.push(t),
                None => return Ok(None),
            }
        }
        Ok(Some(Arc::new(SatTree {
            label: set.into_iter().collect(),
            children,
        })))
    }

    fn seeded(&mut self, seed: BTreeSet<Formula>) -> Result<Option<Arc<SatTree>>, LogicError> {
        if let Some(hit) = self.memo.get(&seed) {
            return Ok(hit.clone());
        }
        let out = self.search(seed.clone())?;
        self.memo.insert(seed, out.clone());
        Ok(out)
    }
}

/// Runs the tableau on the core forms of `gamma` and returns the open
/// saturated tableau, or `None` if every branch closes.
pub fn gl_saturate(
    gamma: &FormulaSet,
    config: TableauConfig,
) -> Result<Option<Arc<SatTree>>, LogicError> {
    let set: BTreeSet<Formula> = gamma.iter().map(Formula::core).collect();
    Search::new(config).search(set)
}

pub fn gl_sat(gamma: &FormulaSet) -> Result<SatResult, LogicError> {
    gl_sat_with(gamma, TableauConfig::default())
}

pub fn gl_sat_with(gamma: &FormulaSet, config: TableauConfig) -> Result<SatResult, LogicError> {
    Ok(match gl_saturate(gamma, config)? {
        None => SatResult::Unsat,
        Some(t) => {
            let model = t.to_kripke();
            debug_assert!(gamma.iter().all(|g| model.eval(0, g).unwrap()));
            SatResult::Sat { model, witness: 0 }
        }
    })
}

/// `φ` is a GL theorem iff `{¬φ}` is unsatisfiable.
pub fn gl_prove(phi: &Formula) -> Result<bool, LogicError> {
    let r = gl_sat(&FormulaSet::singleton(Formula::not(phi.clone())))?;
    Ok(!r.is_sat())
}

/// Probes `Γ ∪ {◇ⁿ⁺¹⊤}` for `n = 0, 1, …, max_n − 1`.
pub fn char_bound(gamma: &FormulaSet, max_n: u64) -> Result<CharBound, LogicError> {
    if !gl_sat(gamma)?.is_sat() {
        return Err(LogicError::Inconsistent);
    }
    for n in 0..max_n {
        let probe = gamma.with(Formula::diamond_pow(n as usize + 1, Formula::Top));
        if !gl_sat(&probe)?.is_sat() {
            return Ok(CharBound::Finite(n));
        }
    }
    Ok(CharBound::AtLeast(max_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn set(list: &str) -> FormulaSet {
        FormulaSet::parse_list(list).unwrap()
    }

    fn assert_sat(list: &str) -> KripkeTree {
        let gamma = set(list);
        match gl_sat(&gamma).unwrap() {
            SatResult::Sat { model, witness } => {
                model.validate().unwrap();
                for g in &gamma {
                    assert!(
                        model.eval(witness, g).unwrap(),
                        "{g} fails in model of {list}"
                    );
                }
                model
            }
            SatResult::Unsat => panic!("{list} reported unsat"),
        }
    }

    #[test]
    fn sat_examples() {
        assert_eq!(gl_sat(&set("<>p0, []~p0")).unwrap(), SatResult::Unsat);
        let m = assert_sat("<>p0 & <>~p0");
        assert_eq!(m.children(0).len(), 2);
        assert_sat("<>p0, [](p0 -> <>p1)");
    }

    #[test]
    fn prove_examples() {
        assert!(gl_prove(&f("[]([]p0 -> p0) -> []p0")).unwrap());
        assert!(gl_prove(&f("[](p0 -> p1) -> ([]p0 -> []p1)")).unwrap());
        assert!(!gl_prove(&f("<>True")).unwrap());
        assert!(gl_prove(&f("[]p0 -> [][]p0")).unwrap());
        assert!(!gl_prove(&f("[]p0 -> p0")).unwrap());
        assert!(gl_prove(&f("<>p0 -> <>(p0 & []~p0)")).unwrap());
    }

    #[test]
    fn char_bound_examples() {
        assert_eq!(
            char_bound(&set("[]False"), 8).unwrap(),
            CharBound::Finite(0)
        );
        assert_eq!(
            char_bound(&set("<><>True"), 8).unwrap(),
            CharBound::AtLeast(8)
        );
        assert_eq!(char_bound(&set("p0"), 8).unwrap(), CharBound::AtLeast(8));
        assert_eq!(
            char_bound(&set("[][][]False"), 8).unwrap(),
            CharBound::Finite(2)
        );
        assert_eq!(
            char_bound(&set("p0 & ~p0"), 8),
            Err(LogicError::Inconsistent)
        );
    }

    #[test]
    fn budget_is_reported_distinctly() {
        let cfg = TableauConfig { budget: 3 };
        let r = gl_sat_with(&set("<>p0, <>p1, <>p2, [](p0 -> <>p1)"), cfg);
        assert_eq!(r, Err(LogicError::ResourceLimit { budget: 3 }));
    }

    #[test]
    fn gamma_star_fragments_have_descending_chains() {
        for n in 0..=8u32 {
            let mut gamma = FormulaSet::singleton(f("<>p0"));
            for i in 0..n {
                gamma.insert(Formula::boxed(Formula::implies(
                    Formula::var(i),
                    Formula::diamond(Formula::var(i + 1)),
                )));
            }
            let SatResult::Sat { model, .. } = gl_sat(&gamma).unwrap() else {
                panic!("fragment {n} unsat");
            };
            assert!(model.height(0) > n as usize);
        }
    }

    #[test]
    fn deterministic_output() {
        let g = set("<>p0, <>p1, [](p0 -> <>p1), []~(p0 & p1)");
        assert_eq!(gl_sat(&g).unwrap(), gl_sat(&g).unwrap());
    }
}
