//! Endomorphism filtrations, coloring quiver filtrations, filtered clique
//! complexes and their persistence pairs (barcode + stillborn matrix).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

use crate::algebra::{homomorphism_violation, Biquandle, BqMap};
use crate::complex::{
    directed_clique_complex, drop_vertex, ComplexJson, Simplex, SimplicialComplex,
};
use crate::diagram::{colorings, LinkDiagram};
use crate::error::{Error, Result};
use crate::quiver::{quiver_on, Quiver};

/// Nested endomorphism sets S_0 ⊆ S_1 ⊆ … ⊆ S_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoFiltration {
    stages: Vec<Vec<BqMap>>,
}

#[derive(Serialize, Deserialize)]
struct FiltrationJson {
    stages: Vec<Vec<Vec<i64>>>,
}

impl EndoFiltration {
    /// Validates nesting, duplicates and that every map is an endomorphism of `x`.
    pub fn new(stages: Vec<Vec<BqMap>>, x: &Biquandle) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Parse("a filtration needs at least one stage".into()));
        }
        for (i, stage) in stages.iter().enumerate() {
            let mut seen = HashSet::new();
            for f in stage {
                if !seen.insert(f) {
                    return Err(Error::Parse(format!("stage {i} lists {f} twice")));
                }
                if homomorphism_violation(f, x, x)?.is_some() {
                    return Err(Error::NotAnEndomorphism(f.to_one_indexed()));
                }
            }
            if i > 0 && !stages[i - 1].iter().all(|f| seen.contains(f)) {
                return Err(Error::NotNested(i - 1, i));
            }
        }
        Ok(EndoFiltration { stages })
    }

    /// Builds S_i = first `sizes[i]` maps of `maps` (each prefix nests in the next).
    pub fn from_prefixes(maps: &[BqMap], sizes: &[usize], x: &Biquandle) -> Result<Self> {
        let stages = sizes
            .iter()
            .map(|&k| maps.get(..k).map(<[BqMap]>::to_vec))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("prefix longer than the map list".into()))?;
        Self::new(stages, x)
    }

    pub fn from_json(text: &str, x: &Biquandle) -> Result<Self> {
        let raw: FiltrationJson = serde_json::from_str(text)?;
        let stages = raw
            .stages
            .iter()
            .map(|s| {
                s.iter()
                    .map(|f| BqMap::from_one_indexed(f, x.size()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(stages, x)
    }

    pub fn to_json(&self) -> String {
        let raw = FiltrationJson {
            stages: self
                .stages
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|f| f.to_one_indexed().into_iter().map(|v| v as i64).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn stages(&self) -> &[Vec<BqMap>] {
        &self.stages
    }

    /// Index of the last stage.
    pub fn last_stage(&self) -> usize {
        self.stages.len() - 1
    }

    /// Persistence requires S_0 = ∅.
    pub fn require_empty_start(&self) -> Result<()> {
        if self.stages[0].is_empty() {
            Ok(())
        } else {
            Err(Error::FirstStageNotEmpty)
        }
    }
}

/// One quiver per stage over the shared coloring vertex set.
pub fn quiver_filtration(
    d: &LinkDiagram,
    x: &Biquandle,
    filtration: &EndoFiltration,
) -> Result<Vec<Quiver>> {
    let vertices = colorings(d, x);
    filtration
        .stages()
        .iter()
        .map(|s| quiver_on(&vertices, x, s))
        .collect()
}

/// The last-stage complex with the stage at which each simplex enters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    pub complex: SimplicialComplex,
    /// `entry[p][k]` is the entry stage of `complex.simplices(p)[k]`.
    pub entry: Vec<Vec<usize>>,
    /// Index of the last stage.
    pub stages: usize,
}

impl FilteredComplex {
    /// Validates entry stages against faces and the stage range.
    pub fn new(complex: SimplicialComplex, entry: Vec<Vec<usize>>, stages: usize) -> Result<Self> {
        if entry.len() != complex.max_dim + 1
            || (0..=complex.max_dim).any(|p| entry[p].len() != complex.count(p))
        {
            return Err(Error::Parse("entry stages do not match the simplex lists".into()));
        }
        for (p, list) in entry.iter().enumerate() {
            for (k, &e) in list.iter().enumerate() {
                if e > stages {
                    return Err(Error::StageOutOfRange {
                        stage: e,
                        max: stages,
                    });
                }
                if p == 0 {
                    continue;
                }
                let s = &complex.simplices(p)[k];
                for i in 0..=p {
                    let face = drop_vertex(s, i);
                    let fi = complex.index(p - 1, &face).expect("closed complex");
                    if entry[p - 1][fi] > e {
                        return Err(Error::Parse(format!(
                            "face {face:?} enters after {s:?}"
                        )));
                    }
                }
            }
        }
        Ok(FilteredComplex {
            complex,
            entry,
            stages,
        })
    }

    /// The complex present at stage `i`.
    pub fn at_stage(&self, i: usize) -> SimplicialComplex {
        let simplices = (0..=self.complex.max_dim)
            .map(|p| {
                self.complex
                    .simplices(p)
                    .iter()
                    .zip(&self.entry[p])
                    .filter(|&(_, &e)| e <= i)
                    .map(|(s, _)| s.clone())
                    .collect()
            })
            .collect();
        SimplicialComplex::new(self.complex.max_dim, simplices).expect("sublevel sets are closed")
    }

    /// Complex JSON extended with `entry` (per dimension, parallel to `simplices`) and `stages`.
    pub fn to_json(&self) -> String {
        let mut raw = self.complex.to_raw();
        raw.entry = Some(
            self.entry
                .iter()
                .enumerate()
                .map(|(p, e)| (p.to_string(), e.clone()))
                .collect(),
        );
        raw.stages = Some(self.stages);
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Accepts plain complex JSON (everything at stage 0) or the extended form.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        let (complex, perms) = SimplicialComplex::from_raw(&raw)?;
        let mut entry: Vec<Vec<usize>> = (0..=complex.max_dim)
            .map(|p| vec![0; complex.count(p)])
            .collect();
        if let Some(given) = &raw.entry {
            for (key, stages) in given {
                let p: usize = key
                    .parse()
                    .map_err(|_| Error::Parse(format!("dimension key `{key}` is not an integer")))?;
                let perm = perms.get(p).filter(|perm| perm.len() == stages.len());
                let Some(perm) = perm else {
                    return Err(Error::Parse(format!(
                        "entry list for dimension {p} does not match its simplices"
                    )));
                };
                entry[p] = perm.iter().map(|&orig| stages[orig]).collect();
            }
        }
        let last = entry.iter().flatten().copied().max().unwrap_or(0);
        let stages = raw.stages.unwrap_or(last);
        Self::new(complex, entry, stages)
    }
}

/// Filtered N-directed clique complex of a quiver filtration.
pub fn filtered_complex(quivers: &[Quiver], n: usize, max_dim: usize) -> Result<FilteredComplex> {
    let last = quivers
        .last()
        .ok_or_else(|| Error::Parse("empty quiver filtration".into()))?;
    let v = last.vertex_count();
    if quivers.iter().any(|q| q.vertices != last.vertices) {
        return Err(Error::Internal("quivers do not share a vertex set".into()));
    }
    // first stage at which u → w reaches the threshold
    let mut first = vec![vec![usize::MAX; v]; v];
    for (stage, q) in quivers.iter().enumerate() {
        for u in 0..v {
            for w in 0..v {
                if u != w && first[u][w] == usize::MAX && q.mult[u][w] >= n {
                    first[u][w] = stage;
                }
            }
        }
    }
    let adj: Vec<Vec<bool>> = first
        .iter()
        .map(|row| row.iter().map(|&s| s != usize::MAX).collect())
        .collect();
    let complex = directed_clique_complex(&adj, max_dim);
    let entry = (0..=max_dim)
        .map(|p| {
            complex
                .simplices(p)
                .iter()
                .map(|s| {
                    let mut e = 0;
                    for i in 0..s.len() {
                        for j in i + 1..s.len() {
                            e = e.max(first[s[i]][s[j]]);
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(complex, entry, quivers.len() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bar {
    pub dim: usize,
    pub birth: usize,
    /// `None` for classes alive through the last stage.
    pub death: Option<usize>,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistencePair {
    /// Distinct intervals with multiplicity, sorted by (dim, birth, death) with ∞ last.
    pub bars: Vec<Bar>,
    /// `stillborn[p][i]`: p-classes born and killed at stage i.
    pub stillborn: Vec<Vec<usize>>,
    /// Index of the last stage.
    pub stages: usize,
    #[serde(rename = "N")]
    pub threshold: Option<usize>,
    pub max_dim: usize,
}

impl PersistencePair {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Number of p-intervals counted with multiplicity.
    pub fn interval_count(&self, p: usize) -> usize {
        self.bars.iter().filter(|b| b.dim == p).map(|b| b.mult).sum()
    }
}

/// Reduces the filtered boundary matrix over GF(2) in the order
/// (entry stage, dimension, lexicographic tuple).
pub fn persistence_pair(fc: &FilteredComplex) -> PersistencePair {
    persistence_pair_with_tiebreak(fc, |_, _| 0)
}

/// As [`persistence_pair`], but simplices with equal (stage, dimension) are
/// ordered by `key(p, k)` first and lexicographically second.
pub fn persistence_pair_with_tiebreak(
    fc: &FilteredComplex,
    key: impl Fn(usize, usize) -> u64,
) -> PersistencePair {
    let k = &fc.complex;
    let max_dim = k.max_dim;
    let mut order: Vec<(usize, usize, u64, usize)> = Vec::with_capacity(k.total());
    for p in 0..=max_dim {
        for idx in 0..k.count(p) {
            order.push((fc.entry[p][idx], p, key(p, idx), idx));
        }
    }
    order.sort_unstable();
    let mut position: Vec<Vec<usize>> = (0..=max_dim).map(|p| vec![0; k.count(p)]).collect();
    for (g, &(_, p, _, idx)) in order.iter().enumerate() {
        position[p][idx] = g;
    }

    let total = order.len();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(total);
    let mut pivot_owner: Vec<Option<usize>> = vec![None; total];
    let mut killed = vec![false; total];
    let mut intervals: BTreeMap<(usize, usize, Option<usize>), usize> = BTreeMap::new();
    let mut stillborn = vec![vec![0; fc.stages + 1]; max_dim];
    for (g, &(stage, p, _, idx)) in order.iter().enumerate() {
        let mut col: Vec<usize> = if p == 0 {
            Vec::new()
        } else {
            let s: &Simplex = &k.simplices(p)[idx];
            let mut faces: Vec<usize> = (0..=p)
                .map(|i| {
                    let face = drop_vertex(s, i);
                    position[p - 1][k.index(p - 1, &face).expect("closed complex")]
                })
                .collect();
            faces.sort_unstable();
            faces
        };
        while let Some(&low) = col.last() {
            match pivot_owner[low] {
                Some(other) => col = symmetric_difference(&col, &columns[other]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivot_owner[low] = Some(g);
            killed[low] = true;
            let (birth, dim) = (order[low].0, order[low].1);
            if birth == stage {
                stillborn[dim][stage] += 1;
            } else {
                *intervals.entry((dim, birth, Some(stage))).or_insert(0) += 1;
            }
        }
        columns.push(col);
    }
    for (g, &(stage, p, _, _)) in order.iter().enumerate() {
        if p < max_dim && columns[g].is_empty() && !killed[g] {
            *intervals.entry((p, stage, None)).or_insert(0) += 1;
        }
    }
    let mut bars: Vec<Bar> = intervals
        .into_iter()
        .map(|((dim, birth, death), mult)| Bar {
            dim,
            birth,
            death,
            mult,
        })
        .collect();
    bars.sort_by_key(|b| (b.dim, b.birth, b.death.is_none(), b.death));
    PersistencePair {
        bars,
        stillborn,
        stages: fc.stages,
        threshold: None,
        max_dim,
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank of H_n(K_i) → H_n(K_j): n-intervals with birth ≤ i and death > j.
pub fn persistent_rank(pp: &PersistencePair, n: usize, i: usize, j: usize) -> Result<usize> {
    for s in [i, j] {
        if s > pp.stages {
            return Err(Error::StageOutOfRange {
                stage: s,
                max: pp.stages,
            });
        }
    }
    if i > j {
        return Err(Error::StageOutOfRange { stage: i, max: j });
    }
    Ok(pp
        .bars
        .iter()
        .filter(|b| b.dim == n && b.birth <= i && b.death.is_none_or(|d| d > j))
        .map(|b| b.mult)
        .sum())
}

/// Full pipeline from a diagram to its persistence pair.
pub fn link_persistence(
    d: &LinkDiagram,
    x: &Biquandle,
    filtration: &EndoFiltration,
    n: usize,
    max_dim: usize,
) -> Result<PersistencePair> {
    filtration.require_empty_start()?;
    let quivers = quiver_filtration(d, x, filtration)?;
    let fc = filtered_complex(&quivers, n, max_dim)?;
    let mut pp = persistence_pair(&fc);
    pp.threshold = Some(n);
    Ok(pp)
}
