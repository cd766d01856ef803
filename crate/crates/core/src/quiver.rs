//! Biquandle coloring quivers and in-degree polynomials.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{homomorphism_violation, Biquandle, BqMap};
use crate::diagram::{colorings, Coloring, LinkDiagram};
use crate::error::{Error, Result};
use crate::persistence::EndoFiltration;

/// Largest vertex count accepted by [`quivers_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 10;

/// Coloring quiver: vertices are colorings in lexicographic order and
/// `mult[f][g]` counts the σ ∈ S with σ ∘ f = g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Coloring>,
    pub mult: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mult.iter().flatten().copied().max().unwrap_or(0)
    }

    /// deg⁺(v_g) = Σ_f mult[f][g]
    pub fn in_degrees(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n)
            .map(|g| (0..n).map(|f| self.mult[f][g]).sum())
            .collect()
    }

    /// JSON with 1-indexed coloring labels.
    pub fn to_json(&self) -> String {
        let raw = QuiverJson {
            vertices: self
                .vertices
                .iter()
                .map(|c| c.iter().map(|l| l + 1).collect())
                .collect(),
            mult: self.mult.clone(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_str(text)?;
        let n = raw.vertices.len();
        if raw.mult.len() != n || raw.mult.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("mult must be a square matrix over the vertices".into()));
        }
        let vertices = raw
            .vertices
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|l| {
                        l.checked_sub(1)
                            .ok_or_else(|| Error::Parse("coloring labels are 1-indexed".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quiver {
            vertices,
            mult: raw.mult,
        })
    }

    /// Graphviz rendering; one edge per nonzero multiplicity, labeled with it.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (i, c) in self.vertices.iter().enumerate() {
            let labels: Vec<String> = c.iter().map(|l| (l + 1).to_string()).collect();
            s.push_str(&format!("  v{i} [label=\"f{i} [{}]\"];\n", labels.join(",")));
        }
        for (f, row) in self.mult.iter().enumerate() {
            for (g, &m) in row.iter().enumerate() {
                if m > 0 {
                    s.push_str(&format!("  v{f} -> v{g} [label=\"{m}\"];\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn check_endomorphisms(x: &Biquandle, s: &[BqMap]) -> Result<()> {
    for sigma in s {
        if homomorphism_violation(sigma, x, x)?.is_some() {
            return Err(Error::NotAnEndomorphism(sigma.to_one_indexed()));
        }
    }
    Ok(())
}

/// Builds the quiver on a fixed, lexicographically ordered vertex set.
pub fn quiver_on(vertices: &[Coloring], x: &Biquandle, s: &[BqMap]) -> Result<Quiver> {
    check_endomorphisms(x, s)?;
    let index: HashMap<&[usize], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let n = vertices.len();
    let mut mult = vec![vec![0; n]; n];
    let mut image = Vec::new();
    for (f, coloring) in vertices.iter().enumerate() {
        for sigma in s {
            image.clear();
            image.extend(coloring.iter().map(|&l| sigma.apply(l)));
            let g = *index.get(image.as_slice()).ok_or_else(|| {
                Error::Internal(format!(
                    "{sigma} maps coloring {f} outside the coloring set"
                ))
            })?;
            mult[f][g] += 1;
        }
    }
    debug_assert!(mult.iter().all(|r| r.iter().sum::<usize>() == s.len()));
    Ok(Quiver {
        vertices: vertices.to_vec(),
        mult,
    })
}

/// The X-coloring quiver of `d` with respect to the endomorphism set `s`.
pub fn build_quiver(d: &LinkDiagram, x: &Biquandle, s: &[BqMap]) -> Result<Quiver> {
    check_endomorphisms(x, s)?;
    quiver_on(&colorings(d, x), x, s)
}

/// Σ_f u^{deg⁺(v_f)} stored as exponent → coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InDegreePolynomial {
    pub terms: BTreeMap<usize, usize>,
}

impl InDegreePolynomial {
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut terms = BTreeMap::new();
        for d in degrees {
            *terms.entry(d).or_insert(0) += 1;
        }
        InDegreePolynomial { terms }
    }

    /// Value at u = 1, i.e. the number of vertices.
    pub fn at_one(&self) -> usize {
        self.terms.values().sum()
    }
}

impl fmt::Display for InDegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, &c)| {
                let coef = if c == 1 && e > 0 { String::new() } else { c.to_string() };
                match e {
                    0 => coef,
                    1 => format!("{coef}u"),
                    _ => format!("{coef}u^{e}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn in_degree_polynomial(q: &Quiver) -> InDegreePolynomial {
    InDegreePolynomial::from_degrees(q.in_degrees())
}

/// One in-degree polynomial per stage of a nested endomorphism filtration.
pub fn in_degree_multiset(
    d: &LinkDiagram,
    x: &Biquandle,
    filtration: &EndoFiltration,
) -> Result<Vec<InDegreePolynomial>> {
    let vertices = colorings(d, x);
    filtration
        .stages()
        .iter()
        .map(|s| quiver_on(&vertices, x, s).map(|q| in_degree_polynomial(&q)))
        .collect()
}

/// Exhaustive search for a vertex bijection preserving all multiplicities.
pub fn quivers_isomorphic(a: &Quiver, b: &Quiver) -> Result<bool> {
    let n = a.vertex_count();
    for q in [a, b] {
        if q.vertex_count() > ISOMORPHISM_LIMIT {
            return Err(Error::TooLarge(q.vertex_count(), ISOMORPHISM_LIMIT));
        }
    }
    if n != b.vertex_count() {
        return Ok(false);
    }
    let signature = |q: &Quiver, v: usize| {
        let mut out: Vec<usize> = q.mult[v].clone();
        let mut inc: Vec<usize> = (0..n).map(|u| q.mult[u][v]).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (q.mult[v][v], out, inc)
    };
    let sa: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(match_vertex(a, b, &sa, &sb, 0, &mut image, &mut used))
}

fn match_vertex<S: PartialEq>(
    a: &Quiver,
    b: &Quiver,
    sa: &[S],
    sb: &[S],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.vertex_count();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        let consistent = (0..v).all(|u| {
            a.mult[u][v] == b.mult[image[u]][w] && a.mult[v][u] == b.mult[w][image[u]]
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if match_vertex(a, b, sa, sb, v + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
