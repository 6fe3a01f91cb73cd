use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LabError;
use crate::exec::Exec;

/// Default cap on the number of colourings [`arrow_check`] may enumerate.
pub const DEFAULT_ARROW_BUDGET: u64 = 1 << 26;

/// A colouring of the unordered pairs of `{0, …, n−1}` with colours below
/// `palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairColoring {
    n: usize,
    palette: u32,
    colors: Vec<u32>,
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

impl PairColoring {
    pub fn from_fn(
        n: usize,
        palette: u32,
        f: impl Fn(usize, usize) -> u32,
    ) -> Result<Self, LabError> {
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                let c = f(i, j);
                if c >= palette {
                    return Err(LabError::BadColoring(format!(
                        "pair {i},{j} has colour {c}, palette is {palette}"
                    )));
                }
                colors.push(c);
            }
        }
        Ok(PairColoring { n, palette, colors })
    }

    pub fn constant(n: usize, color: u32) -> Self {
        Self::from_fn(n, color + 1, |_, _| color).expect("colour within palette")
    }

    /// Edges of the 5-cycle get colour 0, its diagonals colour 1.
    pub fn pentagon() -> Self {
        Self::from_fn(5, 2, |i, j| u32::from(!matches!(j - i, 1 | 4))).expect("two colours")
    }

    /// The colouring numbered `code` when colourings are listed with the
    /// pair `(0,1)` as least significant base-`palette` digit.
    pub fn from_code(n: usize, palette: u32, mut code: u64) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        let mut colors = Vec::with_capacity(pairs);
        for _ in 0..pairs {
            colors.push((code % u64::from(palette)) as u32);
            code /= u64::from(palette);
        }
        PairColoring { n, palette, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(
            i != j && i < self.n && j < self.n,
            "pair {i},{j} out of range"
        );
        self.colors[pair_index(i, j)]
    }

    pub fn is_homogeneous(&self, subset: &[usize], color: u32) -> bool {
        subset
            .iter()
            .enumerate()
            .all(|(a, &i)| subset[a + 1..].iter().all(|&j| self.get(i, j) == color))
    }

    pub fn to_json(&self) -> ColoringJson {
        let mut colors = BTreeMap::new();
        for j in 1..self.n {
            for i in 0..j {
                colors.insert(format!("{i},{j}"), self.get(i, j));
            }
        }
        ColoringJson {
            n: self.n,
            palette: self.palette,
            colors,
        }
    }

    pub fn from_json(json: &ColoringJson) -> Result<Self, LabError> {
        let mut table: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (key, &c) in &json.colors {
            let (a, b) = key
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| LabError::BadColoring(format!("bad pair key {key:?}")))?;
            if a == b || a >= json.n || b >= json.n {
                return Err(LabError::BadColoring(format!("pair {key:?} out of range")));
            }
            if table.insert((a.min(b), a.max(b)), c).is_some() {
                return Err(LabError::BadColoring(format!("pair {key:?} listed twice")));
            }
        }
        Self::from_fn(json.n, json.palette, |i, j| {
            table.get(&(i, j)).copied().unwrap_or(u32::MAX)
        })
        .map_err(|_| {
            let missing = (1..json.n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .find(|p| !table.contains_key(p));
            match missing {
                Some((i, j)) => LabError::BadColoring(format!("pair {i},{j} has no colour")),
                None => LabError::BadColoring(format!("colour outside palette {}", json.palette)),
            }
        })
    }
}

/// `{"n": 5, "palette": 2, "colors": {"0,1": 0, ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub n: usize,
    pub palette: u32,
    pub colors: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousWitness {
    pub subset: Vec<usize>,
    pub color: u32,
}

/// The lexicographically least monochromatic `k`-subset, if any.
pub fn find_homogeneous(c: &PairColoring, k: usize) -> Option<HomogeneousWitness> {
    find_homogeneous_with(c, k, Exec::Sequential)
}

/// As [`find_homogeneous`], splitting the search on the least element.
pub fn find_homogeneous_with(c: &PairColoring, k: usize, exec: Exec) -> Option<HomogeneousWitness> {
    if k > c.n {
        return None;
    }
    if k < 2 {
        return Some(HomogeneousWitness {
            subset: (0..k).collect(),
            color: 0,
        });
    }
    let first = exec.find_first(0..c.n as u64, |v| {
        extend(c, k, &mut vec![v as usize], None).is_some()
    })?;
    extend(c, k, &mut vec![first as usize], None)
}

fn extend(
    c: &PairColoring,
    k: usize,
    chosen: &mut Vec<usize>,
    color: Option<u32>,
) -> Option<HomogeneousWitness> {
    if chosen.len() == k {
        return Some(HomogeneousWitness {
            subset: chosen.clone(),
            color: color.unwrap_or(0),
        });
    }
    let start = chosen.last().map_or(0, |&v| v + 1);
    for v in start..c.n {
        if c.n - v < k - chosen.len() {
            break;
        }
        let col = color.unwrap_or_else(|| c.get(chosen[0], v));
        if chosen.iter().all(|&u| c.get(u, v) == col) {
            chosen.push(v);
            let found = extend(c, k, chosen, Some(col));
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn colouring_count(n: usize, palette: u32, budget: u64) -> Result<u64, LabError> {
    let pairs = u32::try_from(n * n.saturating_sub(1) / 2).unwrap_or(u32::MAX);
    let over = || LabError::BudgetExceeded {
        needed: format!("{palette}^{pairs}"),
        budget,
    };
    let total = u64::from(palette).checked_pow(pairs).ok_or_else(over)?;
    if total > budget {
        return Err(over());
    }
    Ok(total)
}

/// The first colouring of pairs of `{0..n−1}` with `palette` colours that has
/// no homogeneous `k`-set, or `None` if every colouring has one.
pub fn arrow_search(
    n: usize,
    k: usize,
    palette: u32,
    budget: u64,
    exec: Exec,
) -> Result<Option<PairColoring>, LabError> {
    let total = colouring_count(n, palette, budget)?;
    let bad = exec.find_first(0..total, |code| {
        find_homogeneous(&PairColoring::from_code(n, palette, code), k).is_none()
    });
    Ok(bad.map(|code| PairColoring::from_code(n, palette, code)))
}

/// `n → (k)²_palette`: every colouring has a homogeneous `k`-set.
pub fn arrow_check(
    n: usize,
    k: usize,
    palette: u32,
    budget: u64,
    exec: Exec,
) -> Result<bool, LabError> {
    let total = colouring_count(n, palette, budget)?;
    Ok(exec.all(0..total, |code| {
        find_homogeneous(&PairColoring::from_code(n, palette, code), k).is_some()
    }))
}
