#![no_std]
extern crate alloc;

pub mod surface;
pub mod openbook;
pub mod heegaard;
pub mod floer;
