pub mod bench;
pub mod gen;
pub mod oracle;
pub mod solve;
