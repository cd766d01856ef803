//! Bundled example data: diagrams, biquandles, endomorphism filtrations and
//! small filtered complexes, looked up by name.

use crate::algebra::{alexander_biquandle, Biquandle};
use crate::complex::SimplicialComplex;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::persistence::{EndoFiltration, FilteredComplex};

macro_rules! bundle {
    ($dir:literal, $ext:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $dir, "/", $name, ".", $ext)))),*]
    };
}

pub const DIAGRAMS: &[(&str, &str)] = bundle!("diagrams", "json":
    "unknot",
    "virtual_two_crossing",
    "virtual_two_crossing_stabilized",
    "figure_eight",
    "figure_eight_stabilized",
    "trefoil",
    "trefoil_stabilized",
    "hopf",
    "hopf_stabilized",
);

pub const BIQUANDLES: &[(&str, &str)] = bundle!("biquandles", "txt":
    "poly_f4", "z3", "z4", "z5", "z6_a", "z6_b",
);

pub const FILTRATIONS: &[(&str, &str)] = bundle!("filtrations", "json":
    "alexander_z5_chain", "z4_selection", "z5_chain", "z6_a_chain", "z6_b_chain",
);

pub const COMPLEXES: &[(&str, &str)] = bundle!("complexes", "json":
    "triangle_hollow", "triangle_filled",
);

/// Base diagram paired with a Reidemeister-equivalent stabilized copy.
pub const EQUIVALENT_PAIRS: &[(&str, &str)] = &[
    ("virtual_two_crossing", "virtual_two_crossing_stabilized"),
    ("figure_eight", "figure_eight_stabilized"),
    ("trefoil", "trefoil_stabilized"),
    ("hopf", "hopf_stabilized"),
];

fn lookup<'a>(table: &[(&str, &'a str)], kind: &str, name: &str) -> Result<&'a str> {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::Parse(format!("no bundled {kind} named `{name}`")))
}

pub fn diagram(name: &str) -> Result<LinkDiagram> {
    LinkDiagram::parse(lookup(DIAGRAMS, "diagram", name)?)
}

/// A bundled biquandle, or `alexander:m,t,r` for an Alexander biquandle.
pub fn biquandle(name: &str) -> Result<Biquandle> {
    if let Some(params) = name.strip_prefix("alexander:") {
        let v: Vec<i64> = params
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad parameter `{t}`"))))
            .collect::<Result<_>>()?;
        let [m, t, r] = v[..] else {
            return Err(Error::Parse("expected alexander:m,t,r".into()));
        };
        return alexander_biquandle(m, t, r);
    }
    Biquandle::parse(lookup(BIQUANDLES, "biquandle", name)?)
}

pub fn filtration(name: &str, x: &Biquandle) -> Result<EndoFiltration> {
    EndoFiltration::from_json(lookup(FILTRATIONS, "filtration", name)?, x)
}

pub fn filtered_complex(name: &str) -> Result<FilteredComplex> {
    FilteredComplex::from_json(lookup(COMPLEXES, "complex", name)?)
}

pub fn complex(name: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::from_json(lookup(COMPLEXES, "complex", name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for (name, _) in DIAGRAMS {
            diagram(name).unwrap();
        }
        for (name, _) in BIQUANDLES {
            assert!(biquandle(name).unwrap().validate().is_valid(), "{name}");
        }
        for (name, _) in COMPLEXES {
            filtered_complex(name).unwrap();
        }
        assert_eq!(biquandle("alexander:5,2,4").unwrap().size(), 5);
    }

    #[test]
    fn stabilized_variants_are_the_documented_moves() {
        for (base, stabilized) in EQUIVALENT_PAIRS {
            let d = diagram(base).unwrap();
            let moved = d.add_curl(0, true, -1).unwrap().add_bigon(1, 3, 1, true).unwrap();
            let s = diagram(stabilized).unwrap();
            assert_eq!(moved.crossings, s.crossings, "{base}");
            assert_eq!(moved.semi_arcs, s.semi_arcs);
        }
    }
}
