//! List and soft-decision decoding of Reed-Solomon codes over GF(2^m) by
//! rational interpolation on the key-equation solution module.

pub mod algebra;
pub mod channel;
pub mod decoder;
pub mod factor;
pub mod interp;
pub mod keysolver;
pub mod ma;
pub mod rscode;
pub mod sim;
pub mod verify;

pub use algebra::{AlgebraError, BiPoly, Degree, Field, Gf, Poly, RationalFn, RationalValue};
pub use channel::{ChannelSpec, ReceivedWord};
pub use decoder::{
    bm_decode, hard_list_decode, soft_decode, Candidate, DecodeResult, DecodeStatus, SoftConfig,
};
pub use factor::FactorMethod;
pub use interp::{InterpPoint, InterpResult, WeightedOrder};
pub use keysolver::{OrderedKeys, Theta, ThetaFrame};
pub use ma::{Assignment, MultiplicityMatrix, PosteriorMatrix};
pub use rscode::{CodeParams, ErrorPattern};
