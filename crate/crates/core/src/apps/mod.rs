pub mod bsec;
pub mod ooc;
