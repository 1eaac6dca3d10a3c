//! Decision procedures for virtually free groups.

#![allow(clippy::needless_range_loop)] // table algorithms index several arrays at once

pub mod alphabet;
pub mod backend;
pub mod bounds;
pub mod cayley;
pub mod files;
pub mod fingroup;
pub mod gog;
pub mod lang;
pub mod slide;
pub mod synth;
pub mod verify;
pub mod vfpres;
