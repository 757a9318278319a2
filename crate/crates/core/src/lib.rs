//! Hilbert coefficients, indices of reducibility and local-cohomology data for
//! graded quotients of polynomial rings over prime fields.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub(crate) mod linalg;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod socle;
pub(crate) mod staircase;

#[cfg(test)]
pub(crate) mod oracle;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, DEFAULT_CHARACTERISTIC};
pub use groebner::{
    groebner_basis, groebner_basis_with, ideal_syzygies, module_groebner_basis, syzygies_of, GbOptions,
    GroebnerBasis, ModuleElement, ModuleOrder,
};
pub use hilbert::{
    fit_binomial, hilbert_coefficients, hilbert_samuel_table, irreducibility_coefficients, irreducibility_table,
    sample_table, CoefficientVector, Fit, FitOptions, LengthTable, TableKind, TableOptions,
};
pub use ideal::{
    colon, dimension, eliminate, ideal_power, intersect, is_m_primary, krull_dimension, module_length,
    quotient_length, saturate, Ideal, LengthValue, Scope,
};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::parse_polynomial;
pub use poly::{arithmetic, ArithOp, Polynomial};
pub use invariants::{
    chern_gap, classify_ring, cm_test, deep_parameter_ideal, gorenstein_test, h0_quotient, hull_quotient, sort_ledger,
    stable_value_estimate, verify_colon_transfer, verify_gcm_formulas, verify_h0, verify_inequality_chain,
    verify_reduction_lemmas, xi_sample, ClassificationReport, CmCheck, CmVerdict, GorensteinVerdict, InvariantOptions,
    IrSample, LedgerEntry, ParameterIdeal, ParameterProfile, ReferenceIdeal, Relation, Source, StableValue,
    StageFailure, TrialFailure, XiSample, XiValue,
};
pub use resolution::{
    ext_report, free_resolution, h0_direct, is_generalized_cm, unmixed_component, ExtModule, ExtReport, ExtSummary,
    FreeResolution, GcmReport, UnmixedComponent,
};
pub use ring::{PolyRing, RingDescriptor};
pub use socle::{colon_maximal, index_of_reducibility, socle_representatives};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/lengths.md")]
    mod lengths {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
