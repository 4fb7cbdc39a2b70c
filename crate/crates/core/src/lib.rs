//! Grigorchuk-Gupta-Sidki groups acting on the p-adic tree, their finite
//! level quotients `G_n = G / st_G(n)`, and machine-checked verification of
//! Beauville structures on those quotients.

pub mod beauville;
pub mod certificate;
pub mod error;
pub mod ggs;
pub mod portrait;
pub mod quotient;
pub mod word;

pub use error::{Error, Result};
pub use ggs::{
    analyze_circulant, classify, conjugate_generator, make_a, make_b, CirculantAnalysis,
    Classification, DefiningVector,
};
pub use portrait::{parse_vertex, Portrait, PsiDecomposition, TreeShape};
pub use quotient::{line_of, QuotientGroup, SubgroupHandle, DEFAULT_BUDGET};
pub use beauville::verify::{replay, verify, Claim, ReplayReport, VerifyOptions};
pub use beauville::{
    brute_force_search, cyclic_subgroup, is_beauville_pair, search_beauville, sigma_set,
    GeneratingTriple, PairCheck, SearchOutcome, SigmaSet, Strategy,
};
pub use certificate::{Certificate, Verdict};
pub use word::parse_word;
