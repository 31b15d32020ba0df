//! Random graphs with planted cliques, bicliques and stars.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringmotif_core::Graph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plant {
    Clique { size: usize },
    Biclique { rows: usize, cols: usize },
    /// A hub joined to `leaves` vertices.
    Star { leaves: usize },
}

impl Plant {
    pub fn vertices(self) -> usize {
        match self {
            Plant::Clique { size } => size,
            Plant::Biclique { rows, cols } => rows + cols,
            Plant::Star { leaves } => leaves + 1,
        }
    }

    fn sides(self) -> (usize, usize) {
        match self {
            Plant::Clique { size } => (size, 0),
            Plant::Biclique { rows, cols } => (rows, cols),
            Plant::Star { leaves } => (1, leaves),
        }
    }

    fn kind(self) -> &'static str {
        match self {
            Plant::Clique { .. } => "clique",
            Plant::Biclique { .. } => "biclique",
            Plant::Star { .. } => "star",
        }
    }
}

/// `clique:6`, `biclique:4x6` or `star:7`.
impl FromStr for Plant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad plant '{s}' (expected clique:K, biclique:RxC or star:L)"));
        let (kind, size) = s.split_once(':').ok_or_else(bad)?;
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim() {
            "clique" => Ok(Plant::Clique { size: int(size)? }),
            "star" => Ok(Plant::Star { leaves: int(size)? }),
            "biclique" => {
                let (r, c) = size.split_once('x').ok_or_else(bad)?;
                Ok(Plant::Biclique { rows: int(r)?, cols: int(c)? })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub plants: Vec<Plant>,
    /// Probability that a planted edge is removed.
    pub flip: f64,
    /// Edge probability between pairs not covered by a plant.
    pub background: f64,
    /// Randomly permute vertex ids so plants are not contiguous.
    pub shuffle: bool,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("flip", self.flip), ("background", self.background)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} probability must lie in [0, 1]")));
            }
        }
        for p in &self.plants {
            let (a, b) = p.sides();
            let ok = match p {
                Plant::Clique { .. } => a >= 2,
                _ => a >= 1 && b >= 1,
            };
            if !ok {
                return Err(Error::Config(format!("{} is too small to plant", p.kind())));
            }
        }
        let used: usize = self.plants.iter().map(|p| p.vertices()).sum();
        if used > self.n {
            return Err(Error::Config(format!("plants need {used} vertices but n = {}", self.n)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedTruth {
    pub kind: String,
    /// Clique members, biclique row side or star hub.
    pub rows: Vec<String>,
    /// Biclique column side or star leaves; empty for cliques.
    pub cols: Vec<String>,
    pub planted_cells: u64,
    pub missing_cells: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    pub graph: Graph,
    pub truth: Vec<PlantedTruth>,
}

/// Plants occupy disjoint vertex blocks in spec order. Vertices are
/// labelled `1..=n`.
pub fn generate(spec: &SynthSpec, seed: u64) -> Result<Synthetic> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..spec.n).collect();
    if spec.shuffle {
        ids.shuffle(&mut rng);
    }
    let mut edges = BTreeSet::new();
    let mut covered = BTreeSet::new();
    let mut truth = Vec::with_capacity(spec.plants.len());
    let mut next = 0;
    for &plant in &spec.plants {
        let (a, b) = plant.sides();
        let rows: Vec<usize> = ids[next..next + a].to_vec();
        let cols: Vec<usize> = ids[next + a..next + a + b].to_vec();
        next += a + b;
        let mut pairs = Vec::new();
        match plant {
            Plant::Clique { .. } => {
                for x in 0..a {
                    for y in x + 1..a {
                        pairs.push((rows[x], rows[y]));
                    }
                }
            }
            _ => {
                for &u in &rows {
                    for &v in &cols {
                        pairs.push((u, v));
                    }
                }
            }
        }
        let mut missing = 0;
        for &(u, v) in &pairs {
            let key = (u.min(v), u.max(v));
            covered.insert(key);
            if spec.flip > 0.0 && rng.gen_bool(spec.flip) {
                missing += 1;
            } else {
                edges.insert(key);
            }
        }
        let label = |v: &usize| (v + 1).to_string();
        let mut rows_sorted = rows.clone();
        let mut cols_sorted = cols.clone();
        rows_sorted.sort_unstable();
        cols_sorted.sort_unstable();
        truth.push(PlantedTruth {
            kind: plant.kind().to_string(),
            rows: rows_sorted.iter().map(label).collect(),
            cols: cols_sorted.iter().map(label).collect(),
            planted_cells: pairs.len() as u64,
            missing_cells: missing,
        });
    }
    if spec.background > 0.0 {
        for u in 0..spec.n {
            for v in u + 1..spec.n {
                if !covered.contains(&(u, v)) && rng.gen_bool(spec.background) {
                    edges.insert((u, v));
                }
            }
        }
    }
    let graph = Graph::with_numeric_labels(spec.n, edges)?;
    Ok(Synthetic { graph, truth })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(plants: Vec<Plant>, flip: f64, background: f64) -> SynthSpec {
        SynthSpec { n: 20, plants, flip, background, shuffle: true }
    }

    #[test]
    fn pure_clique_has_fifteen_edges() {
        let s = generate(&spec(vec![Plant::Clique { size: 6 }], 0.0, 0.0), 3).unwrap();
        assert_eq!(s.graph.m(), 15);
        assert_eq!(s.truth[0].rows.len(), 6);
        assert_eq!(s.truth[0].missing_cells, 0);
    }

    #[test]
    fn planted_edges_survive_background() {
        let s = generate(&spec(vec![Plant::Clique { size: 6 }], 0.0, 0.3), 9).unwrap();
        let members: Vec<usize> = s.truth[0].rows.iter().map(|l| l.parse::<usize>().unwrap() - 1).collect();
        for x in 0..6 {
            for y in x + 1..6 {
                assert!(s.graph.has_edge(members[x], members[y]));
            }
        }
        assert!(s.graph.m() > 15);
    }

    #[test]
    fn same_seed_same_graph() {
        let sp = spec(vec![Plant::Biclique { rows: 3, cols: 4 }, Plant::Star { leaves: 6 }], 0.2, 0.1);
        assert_eq!(generate(&sp, 5).unwrap(), generate(&sp, 5).unwrap());
        assert_ne!(generate(&sp, 5).unwrap().graph, generate(&sp, 6).unwrap().graph);
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        assert!(generate(&spec(vec![Plant::Clique { size: 21 }], 0.0, 0.0), 0).is_err());
        assert!(generate(&spec(vec![Plant::Clique { size: 10 }, Plant::Biclique { rows: 5, cols: 6 }], 0.0, 0.0), 0).is_err());
        assert!(generate(&spec(vec![], 1.5, 0.0), 0).is_err());
        assert!(generate(&spec(vec![Plant::Star { leaves: 0 }], 0.0, 0.0), 0).is_err());
    }

    #[test]
    fn plant_parsing() {
        assert_eq!("clique:6".parse::<Plant>().unwrap(), Plant::Clique { size: 6 });
        assert_eq!("biclique:4x6".parse::<Plant>().unwrap(), Plant::Biclique { rows: 4, cols: 6 });
        assert_eq!("star:7".parse::<Plant>().unwrap(), Plant::Star { leaves: 7 });
        assert!("ring:3".parse::<Plant>().is_err());
        assert!("biclique:4".parse::<Plant>().is_err());
    }
}
