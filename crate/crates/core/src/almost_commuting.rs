//! Almost-commuting tuples.
//!
//! Type A: `(x, y, i, j)` with `x, y ∈ sl_n`, `i` a column, `j` a row, and
//! `[x, y] + i·j = 0`. Type C: `(x, y, i)` with `x, y ∈ sp_2n` and
//! `[x, y] + i·iᵀ·Ω = 0`.
//!
//! Only rational points and set-theoretic membership are modelled.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{Elem, Family, LieAlg};
use crate::linalg::{Matrix, Rational, Vector};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    A,
    C,
}

/// A candidate tuple. Membership is not enforced on construction; see
/// [`ACTuple::membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACTuple {
    flavor: Flavor,
    x: Elem,
    y: Elem,
    i: Vector,
    j: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `[x, y] + ij` (type A) or `[x, y] + i²` (type C).
    pub residual: Matrix,
}

impl ACTuple {
    pub fn type_a(x: Elem, y: Elem, i: Vector, j: Vector) -> Result<ACTuple> {
        let g = x.parent();
        if g.family() != Family::Sl {
            return Err(Error::UnsupportedFamily(g.id()));
        }
        g.check_parent(&y)?;
        let size = g.matrix_size();
        if i.len() != size || j.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "i and j must have length {size}, got {} and {}",
                i.len(),
                j.len()
            )));
        }
        Ok(ACTuple {
            flavor: Flavor::A,
            x,
            y,
            i,
            j: Some(j),
        })
    }

    pub fn type_c(x: Elem, y: Elem, i: Vector) -> Result<ACTuple> {
        let g = x.parent();
        if g.family() != Family::Sp {
            return Err(Error::UnsupportedFamily(g.id()));
        }
        g.check_parent(&y)?;
        let size = g.matrix_size();
        if i.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "i must have length {size}, got {}",
                i.len()
            )));
        }
        Ok(ACTuple {
            flavor: Flavor::C,
            x,
            y,
            i,
            j: None,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn x(&self) -> &Elem {
        &self.x
    }

    pub fn y(&self) -> &Elem {
        &self.y
    }

    pub fn i(&self) -> &[Rational] {
        &self.i
    }

    pub fn j(&self) -> Option<&[Rational]> {
        self.j.as_deref()
    }

    pub fn parent(&self) -> &Arc<LieAlg> {
        self.x.parent()
    }

    /// The rank-one correction term: `i·j` or `i·iᵀ·Ω`.
    fn correction(&self) -> Matrix {
        match &self.j {
            Some(j) => Matrix::outer(&self.i, j),
            None => {
                let omega = self.parent().omega().expect("type C lives in sp");
                &Matrix::outer(&self.i, &self.i) * omega
            }
        }
    }

    pub fn membership(&self) -> Membership {
        let residual = &self.x.matrix().commutator(self.y.matrix()) + &self.correction();
        Membership {
            member: residual.is_zero(),
            residual,
        }
    }

    pub fn is_member(&self) -> bool {
        self.membership().member
    }
}

/// `i·iᵀ·Ω` as an element of `sp_2n`.
pub fn sp_square(i: &[Rational], g: &Arc<LieAlg>) -> Result<Elem> {
    let omega = g.omega().ok_or(Error::UnsupportedFamily(g.id()))?;
    if i.len() != g.matrix_size() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {}",
            i.len(),
            g.id()
        )));
    }
    g.elem_from_matrix(&Matrix::outer(i, i) * omega)
}

/// `g·(x, y, i, j) = (gxg⁻¹, gyg⁻¹, gi, jg⁻¹)`, or `(gxg⁻¹, gyg⁻¹, gi)` for
/// type C, where `g` must preserve `Ω`.
///
/// For type A any invertible `g` is accepted, not only `det g = 1`.
pub fn group_act(g: &Matrix, t: &ACTuple) -> Result<ACTuple> {
    let alg = t.parent();
    let size = alg.matrix_size();
    if g.rows() != size || g.cols() != size {
        return Err(Error::DimensionMismatch(format!(
            "group element must be {size}x{size}, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let inv = g.inverse().ok_or(Error::SingularGroupElement)?;
    if t.flavor == Flavor::C {
        let omega = alg.omega().expect("type C lives in sp");
        if &(&g.transpose() * omega) * g != *omega {
            return Err(Error::NotSymplectic);
        }
    }
    let conj = |e: &Elem| alg.elem_from_matrix(&(g * e.matrix()) * &inv);
    Ok(ACTuple {
        flavor: t.flavor,
        x: conj(&t.x)?,
        y: conj(&t.y)?,
        i: g.mul_vec(&t.i),
        j: t.j.as_ref().map(|j| inv.transpose().mul_vec(j)),
    })
}

/// Whether `a` and `b` generate a solvable subalgebra, which over the
/// algebraic closure is equivalent to lying in a common Borel subalgebra.
pub fn sim_triangularizable(a: &Elem, b: &Elem) -> Result<bool> {
    a.parent()
        .generated_subalgebra(&[a.clone(), b.clone()])?
        .is_solvable()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorComponent {
    I,
    J,
}

/// An entry of `i` or `j` whose `t`-exponent is negative but which is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub component: VectorComponent,
    /// 0-based entry index.
    pub index: usize,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusLimit {
    pub converges: bool,
    pub limit: Option<ACTuple>,
    pub divergent_positions: Vec<Divergence>,
    /// `T_t = diag(t^{w_0}, ..., t^{w_{m-1}})`.
    pub weights: Vec<i64>,
}

/// Weights of the `2ρ^∨` torus on the natural representation.
///
/// Type A: `diag(t^{n-1}, t^{n-3}, ..., t^{1-n})`. Type C (with
/// `Ω = [[0, I], [-I, 0]]`): `t^{2n-1}, ..., t^3, t^1` on the first half and
/// the negatives on the second half.
pub fn torus_weights(flavor: Flavor, size: usize) -> Vec<i64> {
    let size_i = size as i64;
    match flavor {
        Flavor::A => (0..size_i).map(|p| size_i - 1 - 2 * p).collect(),
        Flavor::C => {
            let n = size_i / 2;
            let half: Vec<i64> = (0..n).map(|p| 2 * (n - p) - 1).collect();
            half.iter()
                .copied()
                .chain(half.iter().map(|w| -w))
                .collect()
        }
    }
}

/// Limit as `t → 0` of `(T_t x T_t⁻¹, T_t y T_t⁻¹, T_t i, j T_t⁻¹)`.
///
/// Entry `(r, s)` of `x, y` scales by `t^{w_r - w_s}`, `i_r` by `t^{w_r}` and
/// `j_s` by `t^{-w_s}`. `x` and `y` must lie in the standard Borel (no
/// negative exponents; upper triangular for type A). Entries with positive
/// exponent vanish in the limit; a nonzero entry of `i` or `j` with negative
/// exponent makes the orbit diverge, and it is reported instead of a limit.
pub fn torus_limit(t: &ACTuple) -> Result<TorusLimit> {
    let alg = t.parent();
    let size = alg.matrix_size();
    let w = torus_weights(t.flavor, size);
    for m in [t.x.matrix(), t.y.matrix()] {
        for r in 0..size {
            for s in 0..size {
                if w[r] < w[s] && !m[(r, s)].is_zero() {
                    return Err(Error::NotUpperTriangular);
                }
            }
        }
    }

    let mut divergent = Vec::new();
    let mut scan = |component, v: &[Rational], sign: i64| {
        for (idx, x) in v.iter().enumerate() {
            let exponent = sign * w[idx];
            if exponent < 0 && !x.is_zero() {
                divergent.push(Divergence {
                    component,
                    index: idx,
                    exponent,
                });
            }
        }
    };
    scan(VectorComponent::I, &t.i, 1);
    if let Some(j) = &t.j {
        scan(VectorComponent::J, j, -1);
    }
    if !divergent.is_empty() {
        return Ok(TorusLimit {
            converges: false,
            limit: None,
            divergent_positions: divergent,
            weights: w,
        });
    }

    let keep_weight_zero = |v: &[Rational], sign: i64| -> Vector {
        v.iter()
            .enumerate()
            .map(|(idx, x)| {
                if sign * w[idx] == 0 {
                    x.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let diagonal_part = |e: &Elem| -> Result<Elem> {
        let m = e.matrix();
        let d = Matrix::from_fn(size, size, |r, s| {
            if w[r] == w[s] {
                m[(r, s)].clone()
            } else {
                Rational::zero()
            }
        });
        alg.elem_from_matrix(d)
    };
    let limit = ACTuple {
        flavor: t.flavor,
        x: diagonal_part(&t.x)?,
        y: diagonal_part(&t.y)?,
        i: keep_weight_zero(&t.i, 1),
        j: t.j.as_ref().map(|j| keep_weight_zero(j, -1)),
    };
    Ok(TorusLimit {
        converges: true,
        limit: Some(limit),
        divergent_positions: Vec::new(),
        weights: w,
    })
}
