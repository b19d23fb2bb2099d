//! Recursive constructions, the existence planner and the plan executor.

pub mod constructions;
pub mod exec;
pub mod plan;

pub use constructions::{
    compose_fill, from_scgdd_and_schgdd, from_strict_gdd_and_mgdd, inflate_by_cdm, pbd_to_scgdd, pdf_to_strict_gdd,
    schgdd_to_scgdd,
};
pub use exec::{execute_plan, ExecContext};
pub use plan::{annotate_cache, classify, plan, PlanNode, Rule, Status, Verdict};
