pub mod cli;
pub mod error;
pub mod fieldalg;
pub mod hypergroup;
pub mod hypfun;
pub mod measures;
pub mod quad;
pub mod rootdata;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
