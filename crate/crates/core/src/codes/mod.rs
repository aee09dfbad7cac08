//! Finitary codes for points of `R^N`, `2^N`, `(2^N)^N` and `(R^N)^N`.
//!
//! Every code denotes an infinite sequence and every coordinate is computable.
//! All the relations downstream are decided exactly on these codes, except for
//! the one mixed comparison documented on [`binseq_eq`].

mod atom;
mod binseq;
mod pairing;
mod seq;
mod text;
mod word;

pub use atom::{iota, Atom, Rational};
pub use binseq::{
    atom_to_binseq, binseq_eq, binseq_to_atom, BinSeqCode, Pullback, YSeqCode, DEFAULT_N_CMP,
};
pub use pairing::{cantor_pair, cantor_unpair};
pub use seq::{AtomCycle, AtomSeqCode, AtomSet, CyclicList, ZCode};
pub use text::{
    parse_aseq, parse_atom, parse_binseq, parse_code, parse_ppoint, parse_yseq, parse_zcode, Code,
};
pub use word::{primitive_period, CyclicWord};

/// Structural equality of atoms, i.e. equality of the reals they stand for.
pub fn atom_eq(a: &Atom, b: &Atom) -> bool {
    a == b
}
