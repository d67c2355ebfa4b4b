pub mod bounds;
pub mod cayley;
pub mod classify;
pub mod counting;
pub mod error;
pub mod field;
pub mod forms;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod space;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
