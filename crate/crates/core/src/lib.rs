pub mod basis;
pub mod cache;
pub mod cli;
pub mod context;
pub mod error;
pub mod field;
pub mod hall;
pub mod monoid;
pub mod order;
pub mod parallel;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod typea;
