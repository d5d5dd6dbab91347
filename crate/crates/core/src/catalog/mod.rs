//! Reference tables, the series database format and consistency reports.

pub mod database;
pub mod fixtures;
pub mod report;

pub use database::{
    fixture_database, fixture_database_text, format_database, load_database, parse_database, save_database,
};
pub use report::{cross_check_tables, report_theorem_ledgers, screen_report, Check, Report};
