//! Exact egalitarian judgment aggregation at desk scale.
//!
//! Judgments are fixed-width binary vectors over an ordered agenda. The
//! crate computes MaxHam and MaxEq outcomes by exhaustive enumeration of the
//! admissible domain, checks egalitarian and strategyproofness properties
//! over bounded profile spaces, searches for strategic manipulations under
//! set-preference extensions, builds the 1-in-3-SAT equidistance gadget, and
//! emits Answer Set Programming encodings.
//!
//! ```
//! use egal_core::{max_eq, max_ham, Domain, Profile};
//!
//! let d = Domain::parse(["110000", "001100", "010000", "111111"]).unwrap();
//! let p = Profile::parse(["110000", "001100"]).unwrap();
//! assert_eq!(max_ham(&d, &p).unwrap().to_string(), "{010000}");
//! assert_eq!(max_eq(&d, &p).unwrap().to_string(), "{111111}");
//! ```

pub mod agenda;
pub mod asp;
pub mod axioms;
pub mod constraints;
pub mod error;
pub mod gadgets;
pub mod instance;
pub mod judgment;
pub mod manipulation;
pub mod preferences;
pub mod profile;
pub mod rules;
pub mod search;

#[cfg(test)]
#[path = "../tests/common/mod.rs"]
mod reference;

pub use agenda::{Agenda, Domain, Outcome};
pub use asp::{emit_manipulation_program, emit_outcome_program, parse_answer_sets, Admissible, AspProgram, AspRule};
pub use axioms::{
    check_axiom, check_equity, check_majoritarian, check_maximin, check_pigou_dalton, check_sen_hammond,
    verify_witness, violation, Axiom, AxiomReport, Verdict, Witness,
};
pub use constraints::{enumerate_domain, evaluate, parse_formula, Formula, DEFAULT_ENUM_CAP};
pub use error::{Error, Result};
pub use gadgets::{
    build_gadget, one_in_three_assignment, one_in_three_oracle, verify_gadget, GadgetInstance, GadgetReport, RowOrigin,
    ThreeCnf,
};
pub use instance::{Instance, InstanceFile};
pub use judgment::{antipodal, hamming, Judgment, MAX_ISSUES};
pub use manipulation::{
    check_part_implies_antipodal, check_part_implies_antipodal_with, check_rule, check_rule_in, find_all_manipulations,
    find_antipodal, find_in_profile, find_manipulation, find_noshow, AntipodalResult, ImplicationReport,
    ManipulationFinding, ManipulationKind, PropertyReport, RuleProperty,
};
pub use preferences::{extension_contract_holds, prefers, set_prefers, Comparison, ExtensionKind};
pub use profile::{majority_judgment, remove_agent, Profile};
pub use rules::{
    apply_rule, exists_equidistant, inequity, max_eq, max_eq_lex, max_ham, maxdist, min_inequity, score_breakdown,
    RuleSpec, ScoreBreakdown, TableRule,
};
pub use search::{SearchSpace, DEFAULT_BUDGET};
