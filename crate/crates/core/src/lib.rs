//! Biquandle coloring invariants of oriented (virtual) links: colorings,
//! coloring quivers, in-degree polynomials, directed clique homology and
//! persistence of coloring quiver filtrations.

pub mod algebra;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod homology;
pub mod persistence;
pub mod quiver;
pub mod render;
pub mod snf;

pub use algebra::{alexander_biquandle, endomorphisms, is_homomorphism, Biquandle, BqMap};
pub use complex::{n_directed_clique_complex, SimplicialComplex};
pub use diagram::{colorings, counting_invariant, Coloring, Crossing, LinkDiagram};
pub use error::{Error, Result};
pub use homology::{betti_gf2, integer_homology, HomologyProfile};
pub use persistence::{
    filtered_complex, persistence_pair, quiver_filtration, EndoFiltration, FilteredComplex,
    PersistencePair,
};
pub use quiver::{build_quiver, in_degree_multiset, in_degree_polynomial, InDegreePolynomial, Quiver};
