#![allow(dead_code)]

use std::sync::Arc;

use bracket_width::linalg::rat;
use bracket_width::{Elem, Family, LieAlg, Matrix, Vector};
use proptest::prelude::*;

pub const ALGEBRAS: [(Family, usize); 7] = [
    (Family::Sl, 2),
    (Family::Sl, 3),
    (Family::Sl, 4),
    (Family::Sp, 1),
    (Family::Sp, 2),
    (Family::So, 3),
    (Family::So, 4),
];

pub fn alg(family: Family, n: usize) -> Arc<LieAlg> {
    LieAlg::build(family, n).unwrap()
}

pub fn any_algebra() -> impl Strategy<Value = Arc<LieAlg>> {
    (0..ALGEBRAS.len()).prop_map(|k| alg(ALGEBRAS[k].0, ALGEBRAS[k].1))
}

pub fn ints(len: usize, h: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-h..=h, len).prop_map(|v| v.into_iter().map(rat).collect())
}

pub fn elems(g: &Arc<LieAlg>, count: usize, h: i64) -> impl Strategy<Value = Vec<Elem>> {
    let g = g.clone();
    prop::collection::vec(ints(g.dim(), h), count)
        .prop_map(move |vs| vs.into_iter().map(|v| g.elem(v)).collect())
}

/// An algebra together with `count` random elements.
pub fn algebra_with(count: usize, h: i64) -> impl Strategy<Value = (Arc<LieAlg>, Vec<Elem>)> {
    any_algebra().prop_flat_map(move |g| (Just(g.clone()), elems(&g, count, h)))
}

pub fn matrix(rows: usize, cols: usize, h: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-h..=h, rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| rat(v[r * cols + c])))
}

/// Direct trace formula for the Killing form of the natural matrix algebras.
pub fn killing_by_trace(g: &LieAlg, x: &Matrix, y: &Matrix) -> bracket_width::Rational {
    let factor = match g.family() {
        Family::Sl => 2 * g.n() as i64,
        Family::Sp => 2 * g.n() as i64 + 2,
        Family::So => g.n() as i64 - 2,
    };
    (x * y).trace() * rat(factor)
}
