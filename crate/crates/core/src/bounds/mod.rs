pub mod defect;
pub mod expr;
pub mod ledger;
