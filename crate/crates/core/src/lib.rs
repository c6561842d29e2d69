pub mod formula;
pub mod kripke;
pub mod omega;
pub mod prober;
pub mod cli;
