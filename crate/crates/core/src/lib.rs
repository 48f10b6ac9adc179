pub mod arith;
pub mod catalog;
pub mod dual;
pub mod milnor;
pub mod orbifold;
pub mod symmetry;
