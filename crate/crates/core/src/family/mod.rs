//! The family of thin convex bodies: the enumeration of rationals in
//! `[0, 1]`, the sequences converging to each of them, the assignment of
//! support sets, the tilt sequence, and the bodies themselves.

mod body;
mod enumeration;
mod members;
mod stream;

pub use body::{build_body, BodyRecord, ConvexBody};
pub use enumeration::{enumerate_q0, eps_of, index_of, RationalEnumeration};
pub use members::MemberSearch;
pub use stream::{truncate_family, Emission, FamilyStream};
