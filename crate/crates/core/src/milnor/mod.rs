//! Jacobian ideals, Groebner bases, normal forms and Milnor rings.

mod groebner;
mod order;
mod ring;
mod weights;

pub use groebner::{buchberger, leading_monomial, normal_form_with};
pub use order::{OrderKey, TermOrder};
pub use ring::{
    hessian, hessian_in, jacobian_ideal, milnor_ring, pairing_is_nondegenerate, tensor_ring,
    weight_system_of, MilnorError, MilnorRing,
};
pub use weights::{solve_weights, WeightError, WeightSystem};
