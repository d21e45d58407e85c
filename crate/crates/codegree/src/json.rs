//! JSON shapes for witnesses and search results. Sets are sorted label lists.

use codegree_core::badtriple::BadTripleWitness;
use codegree_core::extremal::SearchResult;
use codegree_core::{Error, Hypergraph, Sunflower, VertexSet};
use serde::{Deserialize, Serialize};

pub fn labels(set: VertexSet) -> Vec<u32> {
    set.iter().collect()
}

pub fn to_set(n: u32, labels: &[u32]) -> Result<VertexSet, Error> {
    VertexSet::from_vertices(n, labels.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerJson {
    pub core: Vec<u32>,
    pub petals: Vec<Vec<u32>>,
}

impl From<&Sunflower> for SunflowerJson {
    fn from(sf: &Sunflower) -> Self {
        SunflowerJson { core: labels(sf.core), petals: sf.petals.iter().map(|p| labels(*p)).collect() }
    }
}

impl SunflowerJson {
    pub fn to_core(&self, n: u32) -> Result<Sunflower, Error> {
        Ok(Sunflower {
            core: to_set(n, &self.core)?,
            petals: self.petals.iter().map(|p| to_set(n, p)).collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub h: Vec<u32>,
    #[serde(rename = "Y")]
    pub y: Vec<u32>,
    #[serde(rename = "Z")]
    pub z: Vec<u32>,
    #[serde(rename = "FY")]
    pub fy: SunflowerJson,
    #[serde(rename = "FZ")]
    pub fz: SunflowerJson,
    /// Ignored on input; rechecked from scratch.
    #[serde(default)]
    pub conditions: [bool; 5],
}

impl From<&BadTripleWitness> for WitnessJson {
    fn from(w: &BadTripleWitness) -> Self {
        WitnessJson {
            h: labels(w.h),
            y: labels(w.y),
            z: labels(w.z),
            fy: (&w.fy).into(),
            fz: (&w.fz).into(),
            conditions: w.conditions,
        }
    }
}

impl WitnessJson {
    pub fn to_core(&self, n: u32) -> Result<BadTripleWitness, Error> {
        Ok(BadTripleWitness {
            h: to_set(n, &self.h)?,
            y: to_set(n, &self.y)?,
            z: to_set(n, &self.z)?,
            fy: self.fy.to_core(n)?,
            fz: self.fz.to_core(n)?,
            conditions: self.conditions,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: u32,
    pub r: u32,
    pub edges: Vec<Vec<u32>>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson { n: h.n(), r: h.r(), edges: h.edges().iter().map(|e| labels(*e)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResultJson {
    pub max_edges: u64,
    pub witness: HypergraphJson,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub kernel_count: u64,
    pub matches_kernel: bool,
    pub witness_is_kernel: bool,
}

impl From<&SearchResult> for SearchResultJson {
    fn from(r: &SearchResult) -> Self {
        SearchResultJson {
            max_edges: r.max_edges,
            witness: (&r.witness).into(),
            optimal: r.optimal,
            nodes_explored: r.nodes_explored,
            kernel_count: r.kernel_count,
            matches_kernel: r.matches_kernel,
            witness_is_kernel: r.witness_is_kernel,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_keys() {
        let sf = SunflowerJson { core: vec![0, 1], petals: vec![vec![2], vec![3]] };
        let w = WitnessJson { h: vec![0, 4], y: vec![0, 1], z: vec![1, 2], fy: sf.clone(), fz: sf, conditions: [true; 5] };
        let v = serde_json::to_value(&w).unwrap();
        for key in ["h", "Y", "Z", "FY", "FZ", "conditions"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let back: WitnessJson = serde_json::from_value(v).unwrap();
        assert_eq!(back, w);
        assert!(back.to_core(4).is_err());
        assert!(back.to_core(5).is_ok());
    }
}
