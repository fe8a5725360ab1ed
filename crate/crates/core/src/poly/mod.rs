pub mod order;
pub mod parse;
pub mod polynomial;
pub mod ring;

pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{Monomial, Ring};
