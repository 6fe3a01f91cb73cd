use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{BouquetError, BouquetTree, Model};
use crate::logic::TreeJson;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondScheduleJson {
    pub psi: String,
    pub start: u64,
    pub step: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailJson {
    pub phi: String,
    pub tail: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildJson {
    pub xi: u64,
    pub delta: Vec<String>,
    pub tree: TreeJson,
}

/// Root label, schedule and the first few materialized children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetJson {
    pub label: Vec<String>,
    pub root_vars: Vec<String>,
    pub rank: String,
    pub diamonds: Vec<DiamondScheduleJson>,
    pub tails: Vec<TailJson>,
    pub children: Vec<ChildJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelJson {
    Finite { tree: TreeJson },
    Bouquet(BouquetJson),
}

impl BouquetTree {
    pub fn to_json(&self, k: u64) -> Result<BouquetJson, BouquetError> {
        let (diamonds, tails) = match self.schedule() {
            None => (Vec::new(), Vec::new()),
            Some(s) => (
                s.diamonds()
                    .iter()
                    .filter_map(|psi| {
                        let (start, step) = s.progression(psi)?;
                        Some(DiamondScheduleJson {
                            psi: psi.to_string(),
                            start,
                            step,
                        })
                    })
                    .collect(),
                s.boxes()
                    .iter()
                    .filter_map(|phi| {
                        Some(TailJson {
                            phi: phi.to_string(),
                            tail: s.tail(phi)?,
                        })
                    })
                    .collect(),
            ),
        };
        let children = self
            .prefix(k)?
            .iter()
            .enumerate()
            .map(|(xi, c)| ChildJson {
                xi: xi as u64,
                delta: c.delta.iter().map(ToString::to_string).collect(),
                tree: c.tree.to_json(),
            })
            .collect();
        Ok(BouquetJson {
            label: self.label().iter().map(ToString::to_string).collect(),
            root_vars: self.root_vars().iter().map(|v| format!("p{v}")).collect(),
            rank: self.rank().to_string(),
            diamonds,
            tails,
            children,
        })
    }

    /// DOT graph of the root and the first `k` children, one cluster each.
    pub fn to_dot(&self, k: u64) -> Result<String, BouquetError> {
        let mut out = String::from("digraph bouquet {\n");
        let vars: Vec<String> = self.root_vars().iter().map(|v| format!("p{v}")).collect();
        let _ = writeln!(out, "  root [label=\"root: {}\"];", vars.join(", "));
        for (xi, c) in self.prefix(k)?.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{xi} {{");
            let _ = writeln!(out, "    label=\"xi = {xi}\";");
            let t = &c.tree;
            for w in 0..t.len() {
                let vs: Vec<String> = t
                    .valuation()
                    .iter()
                    .filter(|(_, ws)| ws.contains(&w))
                    .map(|(v, _)| format!("p{v}"))
                    .collect();
                let _ = writeln!(out, "    c{xi}_{w} [label=\"{w}: {}\"];", vs.join(", "));
            }
            for w in 0..t.len() {
                for ch in t.children(w) {
                    let _ = writeln!(out, "    c{xi}_{w} -> c{xi}_{ch};");
                }
            }
            out.push_str("  }\n");
            let _ = writeln!(out, "  root -> c{xi}_{};", t.root());
        }
        out.push_str("}\n");
        Ok(out)
    }
}

impl Model {
    pub fn to_json(&self, k: u64) -> Result<ModelJson, BouquetError> {
        Ok(match self {
            Model::Finite(t) => ModelJson::Finite { tree: t.to_json() },
            Model::Bouquet(b) => ModelJson::Bouquet(b.to_json(k)?),
        })
    }

    pub fn to_dot(&self, k: u64) -> Result<String, BouquetError> {
        match self {
            Model::Finite(t) => Ok(t.to_dot()),
            Model::Bouquet(b) => b.to_dot(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::bouquet::build_model;
    use crate::logic::FormulaSet;

    use super::*;

    #[test]
    fn json_and_dot() {
        let m = build_model(&FormulaSet::parse_list("<>p0, [](p0 -> <>p1)").unwrap(), 6).unwrap();
        let ModelJson::Bouquet(j) = m.to_json(3).unwrap() else {
            panic!("bouquet expected")
        };
        assert_eq!(j.children.len(), 3);
        assert_eq!(j.rank, "w");
        assert!(!j.tails.is_empty());
        let text = serde_json::to_string(&ModelJson::Bouquet(j.clone())).unwrap();
        assert_eq!(
            serde_json::from_str::<ModelJson>(&text).unwrap(),
            ModelJson::Bouquet(j)
        );
        let dot = m.to_dot(2).unwrap();
        assert!(dot.starts_with("digraph bouquet {"));
        assert!(dot.contains("root -> c1_0;"));
    }
}
