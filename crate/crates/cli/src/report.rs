//! JSON encoding helpers: complex numbers as [re, im] pairs, matrices
//! row-major. serde_json's default map is ordered, so reports are
//! byte-reproducible.

use krein::{Mat2, Mat4, C64};
use serde_json::{json, Value};

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn row2_json(r: [C64; 2]) -> Value {
    Value::Array(r.iter().map(|z| complex_json(*z)).collect())
}

pub fn mat2_json(m: &Mat2) -> Value {
    Value::Array((0..2).map(|i| row2_json(m.0[i])).collect())
}

pub fn mat4_json(m: &Mat4) -> Value {
    Value::Array(
        (0..4)
            .map(|i| Value::Array(m.0[i].iter().map(|z| complex_json(*z)).collect()))
            .collect(),
    )
}

/// Parse a [re, im] pair.
pub fn complex_from(v: &[f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

/// Parse a row-major 4×4 complex matrix of [re, im] pairs.
pub fn mat4_from(rows: &[[[f64; 2]; 4]; 4]) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = complex_from(&rows[i][j]);
        }
    }
    m
}
