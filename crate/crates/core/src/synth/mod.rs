//! Unitary synthesis: cosine-sine splits, multiplexors, KAK and the
//! Shannon decomposition built from them.

pub mod csd;
pub mod demux;
pub mod kak;
pub mod mux;
pub mod qsd;
pub mod remap;

pub use csd::{csd, Csd};
pub use demux::{demultiplex, Demux};
pub use kak::{kak, Kak};
pub use mux::Multiplexor;
pub use qsd::{qloq_map, qsd, QsdMode, QsdResult};
pub use remap::{round_trip, RemapRegister};
