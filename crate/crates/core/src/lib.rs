pub mod abelext;
pub mod branch;
pub mod checks;
pub mod chevalley;
pub mod config;
pub mod decomp;
pub mod embed;
pub mod exactla;
pub mod hwmod;
pub mod poly;
pub mod rootsys;
pub mod suite;
