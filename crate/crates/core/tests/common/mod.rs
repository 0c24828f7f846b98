#![allow(dead_code)]

use std::sync::Arc;

use ec_core::catalog;
use ec_core::space::VectorN;
use ec_core::{Scalar, Space};

pub fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

pub fn v(coords: &[&str]) -> VectorN<Scalar> {
    VectorN(coords.iter().map(|c| s(c)).collect())
}

pub fn mat(rows: &[&[&str]]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|c| s(c)).collect())
        .collect()
}

pub fn space(name: &str) -> Arc<Space> {
    catalog::get_space(name).unwrap()
}

/// Every catalog space.
pub fn all_spaces() -> Vec<Arc<Space>> {
    catalog::space_names().map(space).collect()
}
