use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::BouquetError;
use crate::logic::{gl_sat_with, Formula, FormulaSet, KripkeTree, SatResult, TableauConfig};
use crate::ordinal::Ordinal;

/// One child of a bouquet root: the set it was built for and its tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    pub delta: FormulaSet,
    pub tree: KripkeTree,
}

/// An on-demand enumeration `ξ ↦ T_ξ`.
pub trait ChildSource: Send + Sync + fmt::Debug {
    fn materialize(&self, xi: u64) -> Result<Child, BouquetError>;

    /// Largest child rank, or `None` when ranks are unbounded.
    fn rank_bound(&self) -> Option<u64>;

    fn is_empty(&self) -> bool {
        false
    }
}

/// A finite list of children repeated forever.
#[derive(Debug, Clone)]
pub struct Catalogue(pub Vec<Child>);

impl ChildSource for Catalogue {
    fn materialize(&self, xi: u64) -> Result<Child, BouquetError> {
        if self.0.is_empty() {
            return Err(BouquetError::EmptyCatalogue);
        }
        Ok(self.0[(xi % self.0.len() as u64) as usize].clone())
    }

    fn rank_bound(&self) -> Option<u64> {
        self.0
            .iter()
            .map(|c| c.tree.height(c.tree.root()) as u64)
            .max()
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Children from a closure, with a declared rank bound.
pub struct FnSource {
    f: Box<dyn Fn(u64) -> Child + Send + Sync>,
    bound: Option<u64>,
}

impl FnSource {
    pub fn new(f: impl Fn(u64) -> Child + Send + Sync + 'static, bound: Option<u64>) -> Self {
        FnSource {
            f: Box::new(f),
            bound,
        }
    }
}

impl fmt::Debug for FnSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnSource")
            .field("bound", &self.bound)
            .finish()
    }
}

impl ChildSource for FnSource {
    fn materialize(&self, xi: u64) -> Result<Child, BouquetError> {
        Ok((self.f)(xi))
    }

    fn rank_bound(&self) -> Option<u64> {
        self.bound
    }
}

/// The ψ- and φ-lists of a saturated root label.
///
/// Even positions `2m` carry the diamonds cyclically, odd positions `2k+1`
/// carry `◇ᵏ⊤`. Formulas are stored in core form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    diamonds: Vec<Formula>,
    boxes: Vec<Formula>,
}

impl Schedule {
    pub fn from_label(label: &FormulaSet) -> Self {
        let mut diamonds = Vec::new();
        let mut boxes = Vec::new();
        for f in label {
            match f {
                Formula::Box(phi) => boxes.push((**phi).clone()),
                Formula::Not(a) => {
                    if let Formula::Box(chi) = &**a {
                        diamonds.push(chi.neg());
                    }
                }
                _ => {}
            }
        }
        Schedule { diamonds, boxes }
    }

    pub fn diamonds(&self) -> &[Formula] {
        &self.diamonds
    }

    pub fn boxes(&self) -> &[Formula] {
        &self.boxes
    }

    pub fn psi(&self, xi: u64) -> Formula {
        let m = xi / 2;
        if xi % 2 == 1 || self.diamonds.is_empty() {
            Formula::diamond_pow(m as usize, Formula::Top).core()
        } else {
            self.diamonds[(m % self.diamonds.len() as u64) as usize].clone()
        }
    }

    /// `(start, step)` of positions whose ψ implies `psi` by construction.
    pub fn progression(&self, psi: &Formula) -> Option<(u64, u64)> {
        let psi = psi.core();
        let d = self.diamonds.len() as u64;
        if let Some(i) = self.diamonds.iter().position(|f| *f == psi) {
            return Some((2 * i as u64, 2 * d));
        }
        (0..=psi.modal_depth())
            .find(|&k| Formula::diamond_pow(k, Formula::Top).core() == psi)
            .map(|k| (2 * k as u64 + 1, 2))
    }

    /// `t(φ)`: from this position on every child satisfies `φ ∧ □φ`.
    pub fn tail(&self, phi: &Formula) -> Option<u64> {
        let phi = phi.core();
        self.boxes
            .iter()
            .position(|f| *f == phi)
            .map(|z| z as u64 + 1)
    }

    /// `Δ_ξ = {ψ_ξ} ∪ {φ_ζ ∧ □φ_ζ : ζ < ξ}`.
    pub fn delta(&self, xi: u64) -> FormulaSet {
        let mut out = FormulaSet::singleton(self.psi(xi));
        for phi in self.boxes.iter().take(xi as usize) {
            out.insert(Formula::and(phi.clone(), Formula::boxed(phi.clone())));
        }
        out
    }
}

/// Children built by running the tableau on `Δ_ξ`.
#[derive(Debug, Clone)]
pub struct DeltaSource {
    schedule: Schedule,
    config: TableauConfig,
}

impl DeltaSource {
    pub fn new(schedule: Schedule, config: TableauConfig) -> Self {
        DeltaSource { schedule, config }
    }
}

impl ChildSource for DeltaSource {
    fn materialize(&self, xi: u64) -> Result<Child, BouquetError> {
        let delta = self.schedule.delta(xi);
        match gl_sat_with(&delta, self.config)? {
            SatResult::Sat { model, .. } => Ok(Child { delta, tree: model }),
            SatResult::Unsat => Err(BouquetError::ChildInconsistent { xi }),
        }
    }

    fn rank_bound(&self) -> Option<u64> {
        None
    }
}

/// A root over the children of a [`ChildSource`], materialized lazily and
/// cached.
#[derive(Debug)]
pub struct BouquetTree {
    label: FormulaSet,
    root_vars: BTreeSet<u32>,
    schedule: Option<Schedule>,
    source: Box<dyn ChildSource>,
    cache: RwLock<BTreeMap<u64, Arc<Child>>>,
}

impl BouquetTree {
    pub fn new(
        label: FormulaSet,
        root_vars: BTreeSet<u32>,
        schedule: Option<Schedule>,
        source: Box<dyn ChildSource>,
    ) -> Self {
        BouquetTree {
            label,
            root_vars,
            schedule,
            source,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn label(&self) -> &FormulaSet {
        &self.label
    }

    pub fn root_vars(&self) -> &BTreeSet<u32> {
        &self.root_vars
    }

    pub fn schedule(&self) -> Option<&Schedule> {
        self.schedule.as_ref()
    }

    pub fn rank(&self) -> Ordinal {
        match self.source.rank_bound() {
            Some(h) => Ordinal::nat(h + 1),
            None => Ordinal::omega(),
        }
    }

    /// Child `ξ`, validated against its `Δ_ξ` on first use.
    pub fn child(&self, xi: u64) -> Result<Arc<Child>, BouquetError> {
        if let Some(c) = self.cache.read().expect("cache lock").get(&xi) {
            return Ok(c.clone());
        }
        let child = self.source.materialize(xi)?;
        child
            .tree
            .validate()
            .map_err(|e| BouquetError::ChildInvalid {
                xi,
                reason: e.to_string(),
            })?;
        for d in &child.delta {
            if !child.tree.eval(child.tree.root(), d)? {
                return Err(BouquetError::ChildInvalid {
                    xi,
                    reason: format!("root does not satisfy {d}"),
                });
            }
        }
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(xi).or_insert_with(|| Arc::new(child)).clone())
    }

    /// The first `k` children.
    pub fn prefix(&self, k: u64) -> Result<Vec<Arc<Child>>, BouquetError> {
        (0..k).map(|xi| self.child(xi)).collect()
    }
}

/// A fresh root whose successors are the children of `source`.
pub fn lottery_sum(source: Box<dyn ChildSource>) -> Result<BouquetTree, BouquetError> {
    if source.is_empty() {
        return Err(BouquetError::EmptyCatalogue);
    }
    Ok(BouquetTree::new(
        FormulaSet::new(),
        BTreeSet::new(),
        None,
        source,
    ))
}

/// A node of a bouquet: the root or node `node` of child `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Root,
    Child { xi: u64, node: usize },
}

/// Stage of the neighbourhood construction: 0 is the upset topology,
/// 1 adds the tail unions at the root, 2 refines those by open sets of the
/// children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SigmaStage(pub u32);

/// The root neighbourhood indexed by `j` at a given stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaNbhd {
    pub j: u64,
    pub stage: SigmaStage,
}

impl SigmaNbhd {
    pub fn contains(&self, tree: &BouquetTree, n: NodeRef) -> Result<bool, BouquetError> {
        let NodeRef::Child { xi, node } = n else {
            return Ok(true);
        };
        let child = tree.child(xi)?;
        if node >= child.tree.len() {
            return Err(crate::logic::LogicError::UnknownNode(node).into());
        }
        Ok(match self.stage.0 {
            0 => true,
            1 => xi >= self.j,
            _ => {
                let root = child.tree.root();
                xi >= self.j && (node == root || child.tree.descendants(root).contains(&node))
            }
        })
    }
}

/// `{root} ∪ ⋃_{ξ ≥ j} T_ξ` at the given stage.
pub fn sigma_nbhd(
    tree: &BouquetTree,
    j: u64,
    stage: SigmaStage,
) -> Result<SigmaNbhd, BouquetError> {
    if stage.0 > 2 {
        return Err(BouquetError::UnsupportedStage(stage.0));
    }
    let rank = tree.rank();
    if rank.is_finite() {
        return Err(BouquetError::FiniteRank(rank.to_string()));
    }
    Ok(SigmaNbhd { j, stage })
}
