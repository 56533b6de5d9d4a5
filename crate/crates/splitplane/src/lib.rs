//! Text front end for the double-plane toolkit: an expression grammar,
//! contour descriptions, and deterministic output formats. The `splitplane`
//! binary is a thin shell over these modules.

pub mod contour_spec;
pub mod output;
pub mod parse;
