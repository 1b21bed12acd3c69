pub mod series;
pub mod theta;
pub mod oracle;
pub mod report;
pub mod dissection;
pub mod harness;
