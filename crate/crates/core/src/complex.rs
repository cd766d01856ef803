//! Ordered simplicial complexes, N-directed clique complexes and boundary matrices.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::quiver::Quiver;

pub type Simplex = Vec<usize>;

/// Ordered simplices grouped by dimension, each dimension in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub max_dim: usize,
    simplices: Vec<Vec<Simplex>>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    pub simplices: BTreeMap<String, Vec<Simplex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stages: Option<usize>,
}

impl SimplicialComplex {
    /// Builds a complex, sorting each dimension and checking distinctness,
    /// uniqueness and closure under faces.
    pub fn new(max_dim: usize, mut simplices: Vec<Vec<Simplex>>) -> Result<Self> {
        if simplices.len() > max_dim + 1 {
            if simplices[max_dim + 1..].iter().any(|s| !s.is_empty()) {
                return Err(Error::Parse(format!(
                    "simplices above max_dim {max_dim} were supplied"
                )));
            }
            simplices.truncate(max_dim + 1);
        }
        simplices.resize(max_dim + 1, Vec::new());
        for (p, list) in simplices.iter_mut().enumerate() {
            for s in list.iter() {
                if s.len() != p + 1 {
                    return Err(Error::Parse(format!(
                        "simplex {s:?} listed in dimension {p}"
                    )));
                }
                let mut sorted = s.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Parse(format!("simplex {s:?} repeats a vertex")));
                }
            }
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Parse(format!("simplex {:?} listed twice", w[0])));
            }
        }
        let k = SimplicialComplex { max_dim, simplices };
        k.check_closure()?;
        Ok(k)
    }

    /// Simplices of dimension `p` (empty above `max_dim`).
    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    /// Highest dimension holding a simplex.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.max_dim).rev().find(|&p| self.count(p) > 0)
    }

    pub fn index(&self, p: usize, s: &[usize]) -> Option<usize> {
        self.simplices(p).binary_search_by(|t| t.as_slice().cmp(s)).ok()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.index(s.len() - 1, s).is_some()
    }

    fn check_closure(&self) -> Result<()> {
        for p in 1..=self.max_dim {
            for s in self.simplices(p) {
                for i in 0..=p {
                    let face = drop_vertex(s, i);
                    if !self.contains(&face) {
                        return Err(Error::Parse(format!(
                            "face {face:?} of {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("serializable")
    }

    pub(crate) fn to_raw(&self) -> ComplexJson {
        ComplexJson {
            max_dim: Some(self.max_dim),
            simplices: self
                .simplices
                .iter()
                .enumerate()
                .map(|(p, v)| (p.to_string(), v.clone()))
                .collect(),
            entry: None,
            stages: None,
        }
    }

    /// Parses complex JSON; `max_dim` defaults to the highest listed dimension.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        Ok(Self::from_raw(&raw)?.0)
    }

    /// Also returns, for each dimension, the permutation applied when sorting
    /// (new position → original position).
    pub(crate) fn from_raw(raw: &ComplexJson) -> Result<(Self, Vec<Vec<usize>>)> {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for (key, list) in &raw.simplices {
            let p: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("dimension key `{key}` is not an integer")))?;
            if by_dim.len() <= p {
                by_dim.resize(p + 1, Vec::new());
            }
            by_dim[p] = list.clone();
        }
        let listed_top = by_dim
            .iter()
            .rposition(|v| !v.is_empty())
            .unwrap_or(0);
        let max_dim = raw.max_dim.unwrap_or(listed_top);
        let perms: Vec<Vec<usize>> = by_dim
            .iter()
            .map(|list| {
                let mut idx: Vec<usize> = (0..list.len()).collect();
                idx.sort_by(|&a, &b| list[a].cmp(&list[b]));
                idx
            })
            .collect();
        Ok((Self::new(max_dim, by_dim)?, perms))
    }
}

pub(crate) fn drop_vertex(s: &[usize], i: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &v)| v)
        .collect()
}

/// Directed clique complex of a loop-free digraph given as an adjacency matrix.
pub fn directed_clique_complex(adj: &[Vec<bool>], max_dim: usize) -> SimplicialComplex {
    let n = adj.len();
    let mut simplices = vec![Vec::new(); max_dim + 1];
    let mut stack = Vec::with_capacity(max_dim + 1);
    for v in 0..n {
        stack.push(v);
        let candidates: Vec<usize> = (0..n).filter(|&w| w != v && adj[v][w]).collect();
        extend_clique(adj, &mut stack, &candidates, max_dim, &mut simplices);
        stack.pop();
    }
    for list in &mut simplices {
        list.sort_unstable();
    }
    SimplicialComplex { max_dim, simplices }
}

fn extend_clique(
    adj: &[Vec<bool>],
    stack: &mut Vec<usize>,
    candidates: &[usize],
    max_dim: usize,
    out: &mut [Vec<Simplex>],
) {
    out[stack.len() - 1].push(stack.clone());
    if stack.len() > max_dim {
        return;
    }
    for &w in candidates {
        let next: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&c| c != w && adj[w][c])
            .collect();
        stack.push(w);
        extend_clique(adj, stack, &next, max_dim, out);
        stack.pop();
    }
}

/// Threshold digraph: u → w iff u ≠ w and mult[u][w] ≥ n.
pub fn threshold_digraph(q: &Quiver, n: usize) -> Vec<Vec<bool>> {
    q.mult
        .iter()
        .enumerate()
        .map(|(u, row)| {
            row.iter()
                .enumerate()
                .map(|(w, &m)| u != w && m >= n)
                .collect()
        })
        .collect()
}

/// The N-directed clique complex of a quiver, capped at `max_dim`.
pub fn n_directed_clique_complex(q: &Quiver, n: usize, max_dim: usize) -> SimplicialComplex {
    directed_clique_complex(&threshold_digraph(q, n), max_dim)
}

/// Boundary map ∂_p as sparse signed columns over the (p−1)-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub p: usize,
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] += v;
            }
        }
        m
    }

    pub fn to_gf2(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                if v % 2 != 0 {
                    m.flip(r, c);
                }
            }
        }
        m
    }
}

/// ∂_p(s_0,…,s_p) = Σ (−1)^i (s_0,…,ŝ_i,…,s_p).
pub fn boundary_matrix(k: &SimplicialComplex, p: usize) -> Result<BoundaryMatrix> {
    if p == 0 || p > k.max_dim {
        return Err(Error::InsufficientDimension {
            requested: p,
            needed: p,
            max_dim: k.max_dim,
        });
    }
    let lookup: HashMap<&[usize], usize> = k
        .simplices(p - 1)
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let columns = k
        .simplices(p)
        .iter()
        .map(|s| {
            (0..=p)
                .map(|i| {
                    let face = drop_vertex(s, i);
                    let row = *lookup.get(face.as_slice()).ok_or_else(|| {
                        Error::Internal(format!("face {face:?} of {s:?} is missing"))
                    })?;
                    Ok((row, if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryMatrix {
        p,
        rows: k.count(p - 1),
        columns,
    })
}
