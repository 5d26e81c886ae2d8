//! Brute-force checks that share no code path with the resolution builder:
//! exhaustive search for shortest resolutions, the split-through-summand
//! test, and seeded random trials.

mod criteria;
mod kernel_trials;
pub mod random;
mod search;
mod split;

pub use criteria::{
    check_permutation_criterion, check_summand_criteria, summand_criteria, AgreementReport,
    Disagreement,
};
pub use kernel_trials::{
    check_kernel_bound, kernel_inclusion, sample_sequence, KernelTrialReport, Sample, TrialRecord,
    HYPOTHESIS,
};
pub use search::{brute_ppdim, Certification, OracleOutcome, SearchBudget, Searcher};
pub use split::has_split_through_summand;
