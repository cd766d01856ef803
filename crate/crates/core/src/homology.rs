//! Simplicial homology over GF(2) and over the integers.

use serde::{Deserialize, Serialize};

use crate::complex::{boundary_matrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::snf::smith_normal_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Gf2,
    Z,
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" => Ok(Coefficients::Gf2),
            "z" => Ok(Coefficients::Z),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

/// Homology groups in dimensions 0..=top.
///
/// In GF(2) mode `free` holds Betti numbers and `torsion` is empty per
/// dimension. When `upper_truncated` is set, the last dimension equals the
/// complex's cap and im ∂ from above was not subtracted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub coeff: Coefficients,
    pub free: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
    #[serde(default)]
    pub upper_truncated: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ProfileJson {
    Field {
        coeff: Coefficients,
        betti: Vec<usize>,
        #[serde(default)]
        upper_truncated: bool,
    },
    Integer {
        coeff: Coefficients,
        free: Vec<usize>,
        torsion: Vec<Vec<i64>>,
        #[serde(default)]
        upper_truncated: bool,
    },
}

impl HomologyProfile {
    pub fn to_json(&self) -> String {
        let raw = match self.coeff {
            Coefficients::Gf2 => ProfileJson::Field {
                coeff: self.coeff,
                betti: self.free.clone(),
                upper_truncated: self.upper_truncated,
            },
            Coefficients::Z => ProfileJson::Integer {
                coeff: self.coeff,
                free: self.free.clone(),
                torsion: self.torsion.clone(),
                upper_truncated: self.upper_truncated,
            },
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(match serde_json::from_str::<ProfileJson>(text)? {
            ProfileJson::Field {
                coeff,
                betti,
                upper_truncated,
            } => HomologyProfile {
                coeff,
                torsion: vec![Vec::new(); betti.len()],
                free: betti,
                upper_truncated,
            },
            ProfileJson::Integer {
                coeff,
                free,
                torsion,
                upper_truncated,
            } => HomologyProfile {
                coeff,
                free,
                torsion,
                upper_truncated,
            },
        })
    }

    /// Human-readable groups, e.g. `H_0 = Z^2`, `H_1 = Z + Z_2`.
    pub fn describe(&self) -> Vec<String> {
        let ring = match self.coeff {
            Coefficients::Gf2 => "Z_2",
            Coefficients::Z => "Z",
        };
        self.free
            .iter()
            .zip(&self.torsion)
            .enumerate()
            .map(|(p, (&r, tors))| {
                let mut parts = Vec::new();
                match r {
                    0 => {}
                    1 => parts.push(ring.to_string()),
                    _ => parts.push(format!("{ring}^{r}")),
                }
                parts.extend(tors.iter().map(|t| format!("Z_{t}")));
                let group = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
                let mark = if self.upper_truncated && p + 1 == self.free.len() {
                    " (upper-truncated)"
                } else {
                    ""
                };
                format!("H_{p} = {group}{mark}")
            })
            .collect()
    }
}

fn gf2_ranks(k: &SimplicialComplex, upto: usize) -> Result<Vec<usize>> {
    // rank of ∂_p for p in 0..=upto (∂_0 = 0)
    let mut ranks = vec![0; upto + 1];
    for (p, r) in ranks.iter_mut().enumerate().skip(1) {
        *r = boundary_matrix(k, p)?.to_gf2().rank();
    }
    Ok(ranks)
}

fn check_dim(k: &SimplicialComplex, max_hom_dim: usize) -> Result<()> {
    if max_hom_dim + 1 > k.max_dim {
        return Err(Error::InsufficientDimension {
            requested: max_hom_dim,
            needed: max_hom_dim + 1,
            max_dim: k.max_dim,
        });
    }
    Ok(())
}

/// Betti numbers over GF(2) in dimensions 0..=max_hom_dim.
pub fn betti_gf2(k: &SimplicialComplex, max_hom_dim: usize) -> Result<Vec<usize>> {
    check_dim(k, max_hom_dim)?;
    let ranks = gf2_ranks(k, max_hom_dim + 1)?;
    Ok((0..=max_hom_dim)
        .map(|p| k.count(p) - ranks[p] - ranks[p + 1])
        .collect())
}

/// Free ranks and torsion coefficients of H_0..H_max_hom_dim over Z.
pub fn integer_homology(k: &SimplicialComplex, max_hom_dim: usize) -> Result<HomologyProfile> {
    check_dim(k, max_hom_dim)?;
    integer_profile(k, max_hom_dim + 1, false)
}

/// `snf_upto`: boundary maps ∂_1..∂_snf_upto are reduced.
fn integer_profile(
    k: &SimplicialComplex,
    snf_upto: usize,
    truncated: bool,
) -> Result<HomologyProfile> {
    let mut factors: Vec<Vec<i64>> = vec![Vec::new(); snf_upto + 1];
    for (p, f) in factors.iter_mut().enumerate().skip(1) {
        let dense = boundary_matrix(k, p)?.to_dense();
        *f = smith_normal_form(&dense, false)?.factors;
    }
    let top = if truncated { snf_upto } else { snf_upto - 1 };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for p in 0..=top {
        let rank_out = factors[p].len();
        let (rank_in, tors) = match factors.get(p + 1) {
            Some(f) if p < snf_upto => (f.len(), f.iter().copied().filter(|&d| d > 1).collect()),
            _ => (0, Vec::new()),
        };
        free.push(k.count(p) - rank_out - rank_in);
        torsion.push(tors);
    }
    Ok(HomologyProfile {
        coeff: Coefficients::Z,
        free,
        torsion,
        upper_truncated: truncated,
    })
}

/// Homology in every dimension up to the complex's cap, flagging the top one.
pub fn homology_profile(k: &SimplicialComplex, coeff: Coefficients) -> Result<HomologyProfile> {
    let m = k.max_dim;
    match coeff {
        Coefficients::Gf2 => {
            let ranks = gf2_ranks(k, m)?;
            let free = (0..=m)
                .map(|p| k.count(p) - ranks[p] - ranks.get(p + 1).copied().unwrap_or(0))
                .collect::<Vec<_>>();
            Ok(HomologyProfile {
                coeff,
                torsion: vec![Vec::new(); free.len()],
                free,
                upper_truncated: true,
            })
        }
        Coefficients::Z => {
            if m == 0 {
                return Ok(HomologyProfile {
                    coeff,
                    free: vec![k.count(0)],
                    torsion: vec![Vec::new()],
                    upper_truncated: true,
                });
            }
            integer_profile(k, m, true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::directed_clique_complex;

    fn filled_triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            3,
            vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                vec![vec![0, 1, 2]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn contractible_triangle() {
        let k = filled_triangle();
        assert_eq!(betti_gf2(&k, 2).unwrap(), vec![1, 0, 0]);
        let h = integer_homology(&k, 2).unwrap();
        assert_eq!(h.free, vec![1, 0, 0]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn isolated_vertices() {
        let adj = vec![vec![false; 5]; 5];
        let k = directed_clique_complex(&adj, 1);
        assert_eq!(betti_gf2(&k, 0).unwrap(), vec![5]);
    }

    #[test]
    fn cap_is_enforced() {
        let k = filled_triangle();
        assert!(matches!(
            betti_gf2(&k, 3),
            Err(Error::InsufficientDimension { .. })
        ));
    }

    #[test]
    fn profile_flags_top_dimension() {
        let adj = vec![vec![false, true], vec![true, false]];
        let k = directed_clique_complex(&adj, 1);
        let p = homology_profile(&k, Coefficients::Gf2).unwrap();
        assert!(p.upper_truncated);
        assert_eq!(p.free, vec![1, 1]);
        let z = homology_profile(&k, Coefficients::Z).unwrap();
        assert_eq!(z.free, vec![1, 1]);
        assert_eq!(HomologyProfile::from_json(&z.to_json()).unwrap(), z);
        assert_eq!(HomologyProfile::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // minimal 6-vertex triangulation of RP^2 with increasing vertex order
        let tris = [
            [0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 5], [0, 4, 5],
            [1, 2, 4], [1, 2, 5], [1, 3, 5], [2, 3, 4], [3, 4, 5],
        ];
        let mut edges: Vec<Vec<usize>> = tris
            .iter()
            .flat_map(|t| [vec![t[0], t[1]], vec![t[0], t[2]], vec![t[1], t[2]]])
            .collect();
        edges.sort();
        edges.dedup();
        let k = SimplicialComplex::new(
            3,
            vec![
                (0..6).map(|v| vec![v]).collect(),
                edges,
                tris.iter().map(|t| t.to_vec()).collect(),
            ],
        )
        .unwrap();
        let h = integer_homology(&k, 2).unwrap();
        assert_eq!(h.free, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![2]);
        assert_eq!(betti_gf2(&k, 2).unwrap(), vec![1, 1, 1]);
    }
}
