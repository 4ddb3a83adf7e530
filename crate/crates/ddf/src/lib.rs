//! Disjoint difference families in finite fields and Galois rings, the
//! 2-designs they develop into, and isomorphism invariants of those designs
//! (block intersection profiles, incidence p-ranks, canonical forms,
//! automorphism group orders).

pub mod error;
pub mod field;
pub mod ring;
pub mod group;
pub mod family;
pub mod verify;
pub mod design;
pub mod canon;
pub mod io;

pub use canon::{
    are_isomorphic, automorphism_group_order, canonical_form, canonical_form_seeded,
    verify_isomorphism, Budget, Certificate, IsoOutcome,
};
pub use error::{Error, Result};
pub use field::{uniform_cyclotomic_number, FieldCtx, FieldElem, DEFAULT_SIZE_BOUND};
pub use ring::{RingCtx, RingElem, SubringEmbedding};
pub use group::{GroupDesc, GroupView};
pub use family::{davis_family, momihara_family, wilson_family, BlockFamily};
pub use design::{
    develop, incidence_p_rank, intersection_profile, intersection_profile_seq, profile_support,
    translation_permutations, verify_2design, Design, IntersectionProfile,
};
#[cfg(feature = "parallel")]
pub use design::intersection_profile_par;
pub use verify::{
    check_edf_ddf_bridge, delta_plus_set, delta_set, external_delta, internal_delta,
    is_ddf, is_difference_set, is_edf, is_relative_difference_set, BridgeReport, DiffMultiset,
    RdsCheck, Uniformity,
};
