//! Coproduct, primitives, path composition and the homological composition
//! on the Fox models.

mod compose;
mod cup;
mod primitive;
mod tensor;

pub use primitive::{equalizer_homological, kappa_of_primitives, primitive_part, reduced_coproduct, Primitives};
pub use tensor::{coproduct, word_coproduct, MultiPoly, TensorSquareRing};
pub use compose::{compose, refined_compose, KContext, KElement, Side};
pub use cup::{dual_cup_cokernel, CupExample};
