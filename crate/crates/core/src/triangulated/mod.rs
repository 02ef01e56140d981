//! Triangulated presentations, mutation pairs and the triangulated structure
//! on their quotients.

mod approx;
mod exact;
mod mutation;
mod presentation;

pub use approx::{
    canonical_left_approximation, canonical_right_approximation, d_epic_witness, d_monic_witness, is_d_epic,
    is_d_monic,
};
pub use exact::{
    image_mutation_pair, induced_exact_functor, triangulated_quotient_recollement, validate_exact, ExactFunctorData,
    TriQuotientRecollement, TriangulatedRecollement,
};
pub use mutation::{
    check_mutation_pair, ladder_solutions, make_d_monic, shift_ladder, standard_triangle,
    verify_quotient_triangulation, MutationData, QuotientTriangulation, StandardTriangle,
};
pub use presentation::{
    rotate, rotate_back, strict_inverse, triangle_iso, validate_triangulated, Triangle, TriangulatedPresentation,
};
