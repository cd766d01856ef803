//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use quiverknot::algebra::{endomorphisms, Biquandle, BqMap};
use quiverknot::complex::{boundary_matrix, n_directed_clique_complex, SimplicialComplex};
use quiverknot::diagram::{Coloring, LinkDiagram};
use quiverknot::fixtures;
use quiverknot::homology::betti_gf2;
use quiverknot::persistence::{
    filtered_complex, persistence_pair, persistence_pair_with_tiebreak, persistent_rank,
    quiver_filtration, EndoFiltration, PersistencePair,
};
use quiverknot::quiver::Quiver;
use rand::{rngs::StdRng, Rng, SeedableRng};

pub type Check = Result<(), String>;

#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub const ALEX5: &str = "alexander:5,2,4";

pub fn bq(name: &str) -> Biquandle {
    fixtures::biquandle(name).unwrap()
}

pub fn diagram(name: &str) -> LinkDiagram {
    fixtures::diagram(name).unwrap()
}

/// Every bundled biquandle plus the Alexander Z_5 (t=2, r=4).
pub fn biquandle_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = fixtures::BIQUANDLES.iter().map(|(n, _)| *n).collect();
    v.push(ALEX5);
    v
}

pub fn maps(x: &Biquandle, tuples: &[&[i64]]) -> Vec<BqMap> {
    tuples
        .iter()
        .map(|t| BqMap::from_one_indexed(t, x.size()).unwrap())
        .collect()
}

pub fn one_indexed(cs: &[Coloring]) -> Vec<Vec<usize>> {
    cs.iter().map(|c| c.iter().map(|l| l + 1).collect()).collect()
}

/// The bundled filtration for `name`, or ∅ ⊆ thirds of End(X) in canonical order.
pub fn filtration_for(name: &str, x: &Biquandle) -> EndoFiltration {
    let bundled = match name {
        ALEX5 => Some("alexander_z5_chain"),
        "z5" => Some("z5_chain"),
        "z6_a" => Some("z6_a_chain"),
        "z6_b" => Some("z6_b_chain"),
        _ => None,
    };
    if let Some(f) = bundled {
        return fixtures::filtration(f, x).unwrap();
    }
    let e = endomorphisms(x);
    let k = e.len();
    EndoFiltration::from_prefixes(&e, &[0, k / 3, 2 * k / 3, k], x).unwrap()
}

/// Brute-force colorings over all |X|^arcs labelings.
pub fn naive_colorings(d: &LinkDiagram, x: &Biquandle) -> Vec<Coloring> {
    let n = x.size();
    let mut out = Vec::new();
    let mut labels = vec![0; d.semi_arcs];
    loop {
        if d.is_coloring(x, &labels) {
            out.push(labels.clone());
        }
        let mut i = d.semi_arcs;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < n {
                break;
            }
            labels[i] = 0;
        }
    }
}

/// Brute-force endomorphisms over all n^n maps, in lexicographic order.
pub fn naive_endomorphisms(x: &Biquandle) -> Vec<BqMap> {
    let n = x.size();
    let mut out = Vec::new();
    let mut image = vec![0; n];
    loop {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                image[x.under(a, b)] == x.under(image[a], image[b])
                    && image[x.over(a, b)] == x.over(image[a], image[b])
            })
        });
        if ok {
            out.push(BqMap::new(image.clone()));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            image[i] += 1;
            if image[i] < n {
                break;
            }
            image[i] = 0;
        }
    }
}

/// Naive directed cliques: every tuple of distinct vertices of length ≤ max_dim+1
/// whose forward pairs all meet the threshold.
pub fn naive_clique_complex(q: &Quiver, n: usize, max_dim: usize) -> Vec<Vec<Vec<usize>>> {
    let v = q.vertex_count();
    let mut by_dim = vec![Vec::new(); max_dim + 1];
    fn rec(
        q: &Quiver,
        n: usize,
        v: usize,
        max_dim: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if !cur.is_empty() {
            let ok = (0..cur.len())
                .all(|i| (i + 1..cur.len()).all(|j| q.mult[cur[i]][cur[j]] >= n));
            if !ok {
                return;
            }
            out[cur.len() - 1].push(cur.clone());
            if cur.len() == max_dim + 1 {
                return;
            }
        }
        for w in 0..v {
            if !cur.contains(&w) {
                cur.push(w);
                rec(q, n, v, max_dim, cur, out);
                cur.pop();
            }
        }
    }
    rec(q, n, v, max_dim, &mut Vec::new(), &mut by_dim);
    for l in &mut by_dim {
        l.sort();
    }
    by_dim
}

/// GF(2) rank by column elimination, pivoting on the lowest set row.
pub fn rank_by_columns(columns: &[Vec<usize>]) -> usize {
    let mut pivots: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut rank = 0;
    for col in columns {
        let mut c: Vec<usize> = col.clone();
        c.sort_unstable();
        loop {
            let Some(&low) = c.last() else { break };
            match pivots.get(&low) {
                Some(p) => {
                    let mut merged: Vec<usize> = c.iter().chain(p).copied().collect();
                    merged.sort_unstable();
                    let mut out = Vec::new();
                    for x in merged {
                        if out.last() == Some(&x) {
                            out.pop();
                        } else {
                            out.push(x);
                        }
                    }
                    c = out;
                }
                None => {
                    pivots.insert(low, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Second Betti computation using column elimination on sparse boundaries.
pub fn betti_by_columns(k: &SimplicialComplex, max_hom: usize) -> Vec<usize> {
    let rank = |p: usize| -> usize {
        if p == 0 || p > k.max_dim {
            return 0;
        }
        let b = boundary_matrix(k, p).unwrap();
        let cols: Vec<Vec<usize>> = b
            .columns
            .iter()
            .map(|c| c.iter().map(|&(r, _)| r).collect())
            .collect();
        rank_by_columns(&cols)
    };
    (0..=max_hom)
        .map(|p| k.count(p) - rank(p) - rank(p + 1))
        .collect()
}

pub fn simplex_set(k: &SimplicialComplex) -> std::collections::BTreeSet<Vec<usize>> {
    (0..=k.max_dim)
        .flat_map(|p| k.simplices(p).iter().cloned())
        .collect()
}

/// Row sums equal |S| for every stage quiver.
pub fn check_row_sums(quivers: &[Quiver], filtration: &EndoFiltration) -> Check {
    for (q, s) in quivers.iter().zip(filtration.stages()) {
        for (f, row) in q.mult.iter().enumerate() {
            let sum: usize = row.iter().sum();
            ensure!(sum == s.len(), "row {f} sums to {sum}, expected {}", s.len());
        }
    }
    Ok(())
}

/// ∂_p ∂_{p+1} = 0 over Z and over GF(2).
pub fn check_boundary_squares(k: &SimplicialComplex) -> Check {
    for p in 1..k.max_dim {
        let lo = boundary_matrix(k, p).unwrap();
        let hi = boundary_matrix(k, p + 1).unwrap();
        for col in &hi.columns {
            let mut acc = vec![0i64; lo.rows];
            for &(r, v) in col {
                for &(rr, vv) in &lo.columns[r] {
                    acc[rr] += v * vv;
                }
            }
            ensure!(acc.iter().all(|&a| a == 0), "boundary of boundary nonzero in dim {p}");
        }
        ensure!(
            lo.to_gf2().mul(&hi.to_gf2()).is_zero(),
            "GF(2) boundary of boundary nonzero in dim {p}"
        );
    }
    Ok(())
}

/// Checks every persistence invariant on one (quiver filtration, N, max_dim).
pub fn check_persistence(quivers: &[Quiver], n: usize, max_dim: usize, seeds: u64) -> Check {
    let fc = filtered_complex(quivers, n, max_dim).map_err(|e| e.to_string())?;
    let pp = persistence_pair(&fc);
    // stage-wise rebuild equals sublevel set, and persistent ranks equal Betti numbers
    for (i, q) in quivers.iter().enumerate() {
        let rebuilt = n_directed_clique_complex(q, n, max_dim);
        ensure!(rebuilt == fc.at_stage(i), "stage {i} sublevel set differs from rebuild");
        if max_dim > 0 {
            let betti = betti_gf2(&rebuilt, max_dim - 1).unwrap();
            for (p, &b) in betti.iter().enumerate() {
                let r = persistent_rank(&pp, p, i, i).unwrap();
                ensure!(r == b, "stage {i} dim {p}: persistent rank {r} vs Betti {b}");
            }
        }
    }
    // conservation against independent GF(2) ranks of the final complex
    let k = &fc.complex;
    let rank = |p: usize| -> usize {
        if p == 0 || p > max_dim {
            0
        } else {
            boundary_matrix(k, p).unwrap().to_gf2().rank()
        }
    };
    for p in 0..max_dim {
        let finite: usize = pp
            .bars
            .iter()
            .filter(|b| b.dim == p && b.death.is_some())
            .map(|b| b.mult)
            .sum();
        let still: usize = pp.stillborn[p].iter().sum();
        let positives = k.count(p) - rank(p);
        ensure!(
            pp.interval_count(p) + still == positives,
            "dim {p}: intervals + stillborn != positive simplices"
        );
        ensure!(finite + still == rank(p + 1), "dim {p}: deaths != rank of next boundary");
        let alive: usize = pp
            .bars
            .iter()
            .filter(|b| b.dim == p && b.death.is_none())
            .map(|b| b.mult)
            .sum();
        ensure!(alive == betti_gf2(k, p).unwrap()[p], "dim {p}: alive bars vs final Betti");
    }
    // stage 0 carries no boundaries when S_0 = ∅
    if quivers[0].mult.iter().flatten().all(|&m| m == 0) {
        ensure!(
            pp.stillborn.iter().all(|r| r[0] == 0),
            "stillborn entries at stage 0"
        );
        ensure!(
            pp.stillborn.first().is_none_or(|r| r.iter().all(|&v| v == 0)),
            "dimension-0 stillborn classes"
        );
        let born0: usize = pp
            .bars
            .iter()
            .filter(|b| b.dim == 0 && b.birth == 0)
            .map(|b| b.mult)
            .sum();
        ensure!(born0 == quivers[0].vertex_count(), "birth-0 components != colorings");
        ensure!(
            pp.bars.iter().all(|b| b.dim == 0 || b.birth >= 1),
            "a higher-dimensional class is born at stage 0"
        );
    }
    // shuffled tie-breaks
    let total = k.total();
    for seed in 0..seeds {
        let mut rng = StdRng::seed_from_u64(seed);
        let keys: Vec<Vec<u64>> = (0..=max_dim)
            .map(|p| (0..k.count(p)).map(|_| rng.gen()).collect())
            .collect();
        let shuffled = persistence_pair_with_tiebreak(&fc, |p, i| keys[p][i]);
        ensure!(
            shuffled.bars == pp.bars && shuffled.stillborn == pp.stillborn,
            "seed {seed} changed the persistence pair ({total} simplices)"
        );
    }
    Ok(())
}

/// Persistence pair through the full pipeline.
pub fn pipeline(
    d: &LinkDiagram,
    x: &Biquandle,
    f: &EndoFiltration,
    n: usize,
    max_dim: usize,
) -> (Vec<Quiver>, PersistencePair) {
    let quivers = quiver_filtration(d, x, f).unwrap();
    let fc = filtered_complex(&quivers, n, max_dim).unwrap();
    (quivers, persistence_pair(&fc))
}
