pub mod catalan;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod scalar;
pub mod spaces;
pub mod weyl;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/tableaux.md")]
    mod tableaux {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/characteristic.md")]
    mod characteristic {}
    #[doc = include_str!("../../../book/src/catalan.md")]
    mod catalan {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
