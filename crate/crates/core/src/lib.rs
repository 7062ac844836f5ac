pub mod arrangement;
pub mod check;
pub mod cli;
pub mod dynkin;
pub mod error;
pub mod export;
pub mod hearts;
pub mod linalg;
pub mod lp;
pub mod mutation;
pub mod rootlat;
pub mod vset;
