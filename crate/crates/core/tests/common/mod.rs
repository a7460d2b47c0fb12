//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod freudenthal;
pub mod roots;
pub mod linalg;
