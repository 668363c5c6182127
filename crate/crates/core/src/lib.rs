//! Exact classification of tensors of border rank at most three.

pub mod classifier;
pub mod cli;
pub mod equations;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod minors;
pub mod normal_forms;
pub mod poly;
pub mod random;
pub mod rank_oracle;
pub mod rational;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rational::Q;
pub use tensor::{GLTuple, Tensor};
