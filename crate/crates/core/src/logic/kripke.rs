use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Formula, LogicError};

/// A finite tree read as a transitive irreflexive frame: `w R v` iff `v` is a
/// strict descendant of `w`. Node ids are indices into the node table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    valuation: BTreeMap<u32, BTreeSet<usize>>,
}

impl Default for KripkeTree {
    fn default() -> Self {
        Self::single()
    }
}

impl KripkeTree {
    /// A one-node tree with an empty valuation.
    pub fn single() -> Self {
        KripkeTree {
            parent: vec![None],
            children: vec![Vec::new()],
            root: 0,
            valuation: BTreeMap::new(),
        }
    }

    /// A chain `0 → 1 → … → n−1`.
    pub fn chain(n: usize) -> Self {
        let mut t = Self::single();
        for i in 1..n.max(1) {
            t.add_child(i - 1);
        }
        t
    }

    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.children[parent].push(id);
        id
    }

    pub fn set_true(&mut self, var: u32, node: usize) {
        self.valuation.entry(var).or_default().insert(node);
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, w: usize) -> Option<usize> {
        self.parent.get(w).copied().flatten()
    }

    pub fn children(&self, w: usize) -> &[usize] {
        &self.children[w]
    }

    pub fn valuation(&self) -> &BTreeMap<u32, BTreeSet<usize>> {
        &self.valuation
    }

    pub fn holds_var(&self, var: u32, w: usize) -> bool {
        self.valuation.get(&var).is_some_and(|s| s.contains(&w))
    }

    /// Strict descendants of `w` in preorder.
    pub fn descendants(&self, w: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.children[w].iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Length of the longest path down from `w`; this is the rank of `w`
    /// in the upset topology.
    pub fn height(&self, w: usize) -> usize {
        self.children[w]
            .iter()
            .map(|&c| 1 + self.height(c))
            .max()
            .unwrap_or(0)
    }

    /// Checks parent/child consistency and that the root reaches every node.
    pub fn validate(&self) -> Result<(), LogicError> {
        let n = self.len();
        if self.root >= n || self.parent[self.root].is_some() {
            return Err(LogicError::MalformedTree("root has a parent".into()));
        }
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= n || !self.children[*p].contains(&v) {
                    return Err(LogicError::MalformedTree(format!(
                        "node {v} is not listed under its parent"
                    )));
                }
            } else if v != self.root {
                return Err(LogicError::MalformedTree(format!("node {v} has no parent")));
            }
        }
        for (p, cs) in self.children.iter().enumerate() {
            if cs.iter().any(|&c| c >= n || self.parent[c] != Some(p)) {
                return Err(LogicError::MalformedTree(format!(
                    "child list of node {p} disagrees with parent links"
                )));
            }
        }
        if 1 + self.descendants(self.root).len() != n {
            return Err(LogicError::MalformedTree("tree is not connected".into()));
        }
        if let Some(&bad) = self.valuation.values().flatten().find(|&&w| w >= n) {
            return Err(LogicError::UnknownNode(bad));
        }
        Ok(())
    }

    /// The set of nodes where `phi` holds, as a membership vector.
    pub fn extension(&self, phi: &Formula) -> Vec<bool> {
        let n = self.len();
        match phi {
            Formula::Bottom => vec![false; n],
            Formula::Top => vec![true; n],
            Formula::Var(i) => (0..n).map(|w| self.holds_var(*i, w)).collect(),
            Formula::Not(a) => self.extension(a).into_iter().map(|b| !b).collect(),
            Formula::And(a, b) => zip_with(self.extension(a), self.extension(b), |x, y| x && y),
            Formula::Or(a, b) => zip_with(self.extension(a), self.extension(b), |x, y| x || y),
            Formula::Implies(a, b) => {
                zip_with(self.extension(a), self.extension(b), |x, y| !x || y)
            }
            Formula::Diamond(a) => self.some_below(&self.extension(a)),
            Formula::Box(a) => {
                let neg: Vec<bool> = self.extension(a).into_iter().map(|b| !b).collect();
                self.some_below(&neg).into_iter().map(|b| !b).collect()
            }
        }
    }

    /// `out[w]` iff some strict descendant of `w` is marked.
    fn some_below(&self, marked: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for w in self.postorder() {
            out[w] = self.children[w].iter().any(|&c| marked[c] || out[c]);
        }
        out
    }

    fn postorder(&self) -> Vec<usize> {
        let mut pre = vec![self.root];
        pre.extend(self.descendants(self.root));
        pre.reverse();
        pre
    }

    pub fn eval(&self, w: usize, phi: &Formula) -> Result<bool, LogicError> {
        if w >= self.len() {
            return Err(LogicError::UnknownNode(w));
        }
        Ok(self.extension(phi)[w])
    }

    /// Copies `sub` below `parent`, returning the id of the copied root.
    pub fn graft(&mut self, parent: usize, sub: &KripkeTree) -> usize {
        let mut map = vec![0; sub.len()];
        let new_root = self.add_child(parent);
        map[sub.root] = new_root;
        for v in sub.descendants(sub.root) {
            let p = map[sub.parent[v].expect("non-root has a parent")];
            map[v] = self.add_child(p);
        }
        for (var, nodes) in &sub.valuation {
            for &w in nodes {
                self.set_true(*var, map[w]);
            }
        }
        new_root
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            root: self.root,
            nodes: (0..self.len())
                .map(|id| TreeNodeJson {
                    id,
                    parent: self.parent[id],
                    children: self.children[id].clone(),
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(v, s)| (format!("p{v}"), s.iter().copied().collect()))
                .collect(),
        }
    }

    pub fn from_json(json: &TreeJson) -> Result<Self, LogicError> {
        let n = json.nodes.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for node in &json.nodes {
            if node.id >= n || seen[node.id] {
                return Err(LogicError::MalformedTree(format!(
                    "node ids must be 0..{n} without repeats"
                )));
            }
            seen[node.id] = true;
            parent[node.id] = node.parent;
            children[node.id] = node.children.clone();
        }
        let mut valuation = BTreeMap::new();
        for (name, nodes) in &json.valuation {
            let var = name
                .strip_prefix('p')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| LogicError::MalformedTree(format!("bad variable name {name:?}")))?;
            valuation.insert(var, nodes.iter().copied().collect());
        }
        if json.root >= n {
            return Err(LogicError::UnknownNode(json.root));
        }
        let t = KripkeTree {
            parent,
            children,
            root: json.root,
            valuation,
        };
        t.validate()?;
        Ok(t)
    }

    /// Graphviz rendering; nodes are labelled with their id and true variables.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph kripke {\n");
        for w in 0..self.len() {
            let vars: Vec<String> = self
                .valuation
                .iter()
                .filter(|(_, set)| set.contains(&w))
                .map(|(v, _)| format!("p{v}"))
                .collect();
            let label = if vars.is_empty() {
                w.to_string()
            } else {
                format!("{w}: {}", vars.join(", "))
            };
            writeln!(s, "  n{w} [label=\"{label}\"];").unwrap();
        }
        for w in 0..self.len() {
            for c in &self.children[w] {
                writeln!(s, "  n{w} -> n{c};").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

pub fn kripke_eval(m: &KripkeTree, w: usize, phi: &Formula) -> Result<bool, LogicError> {
    m.eval(w, phi)
}

/// Serialized tree: `{"root", "nodes": [{"id", "parent", "children"}], "valuation": {"p0": [..]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: usize,
    pub nodes: Vec<TreeNodeJson>,
    pub valuation: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNodeJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}
