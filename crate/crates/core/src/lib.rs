pub mod int;
pub mod modgcd;
pub mod poly;
pub mod ring;
pub mod scalars;
pub mod series;
pub mod tensor;
pub mod liedata;
pub mod report;
pub mod rmatrix;
pub mod relation;
pub mod quasidet;
pub mod vecrep;
pub mod lop;
pub mod suites;
