//! Space sweeps, bound fitting, equivalence audits and report files.

mod audit;
mod fit;
mod generators;
mod report;
mod sweep;

pub use audit::{equivalence_audit, machine_accepts, strings_up_to, AuditError, AuditOutcome, AUDIT_GUARD};
pub use fit::{fit_bound, fit_bound_with_offset, Bound, BoundFit, FitError};
pub use generators::{gcm_member, hardest_pair, jk_padded_word, jk_word, Generator, LengthSpec};
pub use report::{ReportError, RowVerdict, SweepReport, SweepRow};
pub use sweep::space_sweep;
