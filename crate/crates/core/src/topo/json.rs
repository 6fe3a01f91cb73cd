use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Cell, OrdinalValuation, RankConstraint, Region, SpaceSpec, TopoError, TopologyKind};
use crate::ordinal::{parse_ordinal, Ordinal};

/// `{"theta", "lambda", "topology"?, "props": {"p0": region, ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationJson {
    pub theta: Ordinal,
    pub lambda: Ordinal,
    #[serde(default, skip_serializing_if = "is_icard")]
    pub topology: TopologyKind,
    pub props: BTreeMap<String, RegionJson>,
}

fn is_icard(k: &TopologyKind) -> bool {
    *k == TopologyKind::Icard
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub cells: Vec<CellJson>,
    #[serde(default)]
    pub plus: Vec<Ordinal>,
    #[serde(default)]
    pub minus: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub constraints: Vec<ConstraintJson>,
}

/// `lo` may be `"-1"` and `hi` may be `"top"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub xi: u64,
    pub lo: String,
    pub hi: String,
}

fn parse_bound(text: &str, sentinel: &str, what: &str) -> Result<Option<Ordinal>, TopoError> {
    if text.trim() == sentinel {
        return Ok(None);
    }
    parse_ordinal(text)
        .map(Some)
        .map_err(|e| TopoError::InvalidConstraint(format!("{what} {text:?}: {e}")))
}

impl ConstraintJson {
    pub fn to_constraint(&self) -> Result<RankConstraint, TopoError> {
        let lo = parse_bound(&self.lo, "-1", "lo")?;
        let hi = parse_bound(&self.hi, "top", "hi")?;
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Err(TopoError::InvalidConstraint(format!(
                    "empty interval ({l}, {h}] at index {}",
                    self.xi
                )));
            }
        }
        Ok(RankConstraint::new(self.xi, lo, hi))
    }

    pub fn from_constraint(c: &RankConstraint) -> Self {
        ConstraintJson {
            xi: c.xi,
            lo: c
                .interval
                .lo
                .as_ref()
                .map_or("-1".into(), |l| l.to_string()),
            hi: c
                .interval
                .hi
                .as_ref()
                .map_or("top".into(), |h| h.to_string()),
        }
    }
}

impl CellJson {
    pub fn to_cell(&self) -> Result<Cell, TopoError> {
        let cs = self
            .constraints
            .iter()
            .map(ConstraintJson::to_constraint)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cell::from_constraints(cs))
    }

    pub fn from_cell(c: &Cell) -> Self {
        CellJson {
            constraints: c
                .constraints()
                .map(|rc| ConstraintJson::from_constraint(&rc))
                .collect(),
        }
    }
}

impl RegionJson {
    pub fn to_region(&self, space: &SpaceSpec) -> Result<Region, TopoError> {
        let cells = self
            .cells
            .iter()
            .map(CellJson::to_cell)
            .collect::<Result<Vec<_>, _>>()?;
        Region::with_corrections(
            space,
            cells,
            self.plus.iter().cloned(),
            self.minus.iter().cloned(),
        )
    }

    pub fn from_region(r: &Region) -> Self {
        RegionJson {
            cells: r.cells().iter().map(CellJson::from_cell).collect(),
            plus: r.plus().iter().cloned().collect(),
            minus: r.minus().iter().cloned().collect(),
        }
    }
}

fn parse_var(name: &str) -> Result<u32, TopoError> {
    name.strip_prefix('p')
        .and_then(|d| d.parse::<u32>().ok())
        .ok_or_else(|| TopoError::InvalidSpec(format!("bad variable name {name:?}")))
}

impl ValuationJson {
    pub fn to_valuation(&self) -> Result<OrdinalValuation, TopoError> {
        let space =
            SpaceSpec::with_topology(self.topology, self.theta.clone(), self.lambda.clone())?;
        let mut v = OrdinalValuation::new(space.clone());
        for (name, r) in &self.props {
            v.set(parse_var(name)?, r.to_region(&space)?)?;
        }
        Ok(v)
    }

    pub fn from_valuation(v: &OrdinalValuation) -> Self {
        ValuationJson {
            theta: v.space().theta.clone(),
            lambda: v.space().lambda.clone(),
            topology: TopologyKind::Icard,
            props: v
                .props()
                .iter()
                .map(|(i, r)| (format!("p{i}"), RegionJson::from_region(r)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::CLUB_JUSTIFICATION;

    const SAMPLE: &str = r#"{"theta": "w^2 + 1", "lambda": "1", "props": {"p0": {"cells": [{"constraints": [{"xi": 1, "lo": "0", "hi": "1"}]}], "plus": [], "minus": []}, "p1": {"cells": [{"constraints": [{"xi": 0, "lo": "-1", "hi": "w"}]}], "plus": ["w^2"]}}}"#;

    #[test]
    fn parse_and_round_trip() {
        let j: ValuationJson = serde_json::from_str(SAMPLE).unwrap();
        let v = j.to_valuation().unwrap();
        assert!(v.get(0).unwrap().member(&"w*4".parse().unwrap()).unwrap());
        assert!(v.get(1).unwrap().member(&"w^2".parse().unwrap()).unwrap());
        let back = ValuationJson::from_valuation(&v);
        let text = serde_json::to_string(&back).unwrap();
        let again: ValuationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(again.to_valuation().unwrap(), v);
    }

    #[test]
    fn club_is_refused() {
        let text = r#"{"theta": "w^2", "lambda": "1", "topology": "club", "props": {}}"#;
        let j: ValuationJson = serde_json::from_str(text).unwrap();
        assert_eq!(
            j.to_valuation(),
            Err(TopoError::UnsupportedTopology(CLUB_JUSTIFICATION.into()))
        );
    }

    #[test]
    fn bad_bounds_are_reported() {
        let c = ConstraintJson {
            xi: 0,
            lo: "w^".into(),
            hi: "top".into(),
        };
        assert!(matches!(
            c.to_constraint(),
            Err(TopoError::InvalidConstraint(_))
        ));
        let c = ConstraintJson {
            xi: 0,
            lo: "w".into(),
            hi: "3".into(),
        };
        assert!(c.to_constraint().is_err());
    }
}
