#![no_std]

extern crate alloc;

pub mod arith;
pub mod groups;
pub mod codegrees;
pub mod dataset;
pub mod tables;
pub mod verify;
