//! Classical simple Lie algebras in their natural matrix representations.
//!
//! Basis orders are fixed, since coordinate vectors (and therefore every
//! serialized result) depend on them:
//!
//! * `sl_n`: the off-diagonal units `E_pq` in row-major order, followed by
//!   `H_i = E_ii - E_{i+1,i+1}` for `i = 0..n-1`.
//! * `sp_2n` (parameter `n`, matrix size `2n`, form `Ω = [[0, I], [-I, 0]]`):
//!   first `E_pq - E_{n+q,n+p}` for all `p, q < n` in row-major order, then
//!   the upper-right symmetric block `E_{p,n+q} + E_{q,n+p}` for `p <= q`
//!   (just `E_{p,n+p}` on the diagonal), then the lower-left symmetric block
//!   `E_{n+p,q} + E_{n+q,p}` for `p <= q`.
//! * `so_n`: antisymmetric `E_pq - E_qp` for `p < q` in row-major order.
//!
//! Indices are 0-based throughout.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, rat, zero_vector, Matrix, Rational, Vector};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    Sp,
    So,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::Sp => "sp",
            Family::So => "so",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "sp" => Ok(Family::Sp),
            "so" => Ok(Family::So),
            other => Err(Error::ParameterOutOfRange(format!(
                "unknown family `{other}` (expected sl, sp or so)"
            ))),
        }
    }
}

/// Family plus family parameter. For `Sp` the parameter is half the matrix
/// size, so `AlgebraId { family: Sp, n: 2 }` is `sp4`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    pub family: Family,
    pub n: usize,
}

impl AlgebraId {
    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::Sp => 2 * self.n,
            Family::Sl | Family::So => self.n,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.name(), self.matrix_size())
    }
}

/// A classical simple Lie algebra with a fixed ordered basis of matrices.
///
/// The adjoint matrices of the basis elements and the Killing Gram matrix
/// are computed once at construction; the value is immutable afterwards.
pub struct LieAlg {
    id: AlgebraId,
    basis: Vec<Matrix>,
    omega: Option<Matrix>,
    basis_ad: Vec<Matrix>,
    killing_gram: Matrix,
}

impl fmt::Debug for LieAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlg")
            .field("id", &self.id)
            .field("dim", &self.dim())
            .finish()
    }
}

impl PartialEq for LieAlg {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for LieAlg {}

/// The symplectic form `[[0, I], [-I, 0]]` of size `2n`.
pub fn symplectic_form(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            Rational::one()
        } else if r == c + n {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

impl LieAlg {
    pub fn build(family: Family, n: usize) -> Result<Arc<LieAlg>> {
        let id = AlgebraId { family, n };
        let (basis, omega) = match family {
            Family::Sl if n >= 2 => (sl_basis(n), None),
            Family::Sp if n >= 1 => (sp_basis(n), Some(symplectic_form(n))),
            Family::So if n >= 3 => (so_basis(n), None),
            _ => {
                let min = match family {
                    Family::Sl => 2,
                    Family::Sp => 1,
                    Family::So => 3,
                };
                return Err(Error::ParameterOutOfRange(format!(
                    "{} requires n >= {min}, got {n}",
                    family.name()
                )));
            }
        };
        let mut alg = LieAlg {
            id,
            basis,
            omega,
            basis_ad: Vec::new(),
            killing_gram: Matrix::zeros(0, 0),
        };
        let dim = alg.dim();
        alg.basis_ad = (0..dim)
            .map(|i| {
                let columns: Vec<Vector> = (0..dim)
                    .map(|j| alg.read_coords(&alg.basis[i].commutator(&alg.basis[j])))
                    .collect();
                Matrix::from_columns(dim, &columns)
            })
            .collect();
        alg.killing_gram = Matrix::from_fn(dim, dim, |i, j| {
            (&alg.basis_ad[i] * &alg.basis_ad[j]).trace()
        });
        Ok(Arc::new(alg))
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn family(&self) -> Family {
        self.id.family
    }

    pub fn n(&self) -> usize {
        self.id.n
    }

    pub fn matrix_size(&self) -> usize {
        self.id.matrix_size()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The symplectic form, present only for `Sp`.
    pub fn omega(&self) -> Option<&Matrix> {
        self.omega.as_ref()
    }

    /// `ad` of the `i`-th basis element, i.e. the structure constants
    /// `[b_i, b_j] = Σ_k c_ij^k b_k` with `c_ij^k` at row `k`, column `j`.
    pub fn basis_ad(&self, i: usize) -> &Matrix {
        &self.basis_ad[i]
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> &Matrix {
        &self.killing_gram
    }

    /// Coordinates read off the matrix entries, without a membership check.
    fn read_coords(&self, m: &Matrix) -> Vector {
        let size = self.matrix_size();
        let n = self.id.n;
        match self.id.family {
            Family::Sl => {
                let mut coords = Vec::with_capacity(self.dim());
                for p in 0..size {
                    for q in 0..size {
                        if p != q {
                            coords.push(m[(p, q)].clone());
                        }
                    }
                }
                let mut acc = Rational::zero();
                for i in 0..size - 1 {
                    acc += &m[(i, i)];
                    coords.push(acc.clone());
                }
                coords
            }
            Family::Sp => {
                let mut coords = Vec::with_capacity(self.dim());
                for p in 0..n {
                    for q in 0..n {
                        coords.push(m[(p, q)].clone());
                    }
                }
                for p in 0..n {
                    for q in p..n {
                        coords.push(m[(p, n + q)].clone());
                    }
                }
                for p in 0..n {
                    for q in p..n {
                        coords.push(m[(n + p, q)].clone());
                    }
                }
                coords
            }
            Family::So => {
                let mut coords = Vec::with_capacity(self.dim());
                for p in 0..size {
                    for q in p + 1..size {
                        coords.push(m[(p, q)].clone());
                    }
                }
                coords
            }
        }
    }

    pub fn matrix_of(&self, coords: &[Rational]) -> Matrix {
        assert_eq!(coords.len(), self.dim());
        let size = self.matrix_size();
        let mut m = Matrix::zeros(size, size);
        for (c, b) in coords.iter().zip(&self.basis) {
            m.add_scaled(c, b);
        }
        m
    }

    /// Coordinates of `m`, or `NotInAlgebra` if `m` is not in the span of
    /// the basis.
    pub fn coords_of(&self, m: &Matrix) -> Result<Vector> {
        let size = self.matrix_size();
        if m.rows() != size || m.cols() != size {
            return Err(Error::DimensionMismatch(format!(
                "{} expects {size}x{size} matrices, got {}x{}",
                self.id,
                m.rows(),
                m.cols()
            )));
        }
        let coords = self.read_coords(m);
        if &self.matrix_of(&coords) != m {
            return Err(Error::NotInAlgebra(self.id));
        }
        Ok(coords)
    }

    /// Ad-hoc membership test: does `m` satisfy the defining identity?
    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        self.coords_of(m).is_ok()
    }

    pub fn zero(self: &Arc<Self>) -> Elem {
        self.elem(zero_vector(self.dim()))
    }

    pub fn basis_elem(self: &Arc<Self>, i: usize) -> Elem {
        let mut coords = zero_vector(self.dim());
        coords[i] = Rational::one();
        self.elem(coords)
    }

    /// Element with the given coordinates. Panics on a length mismatch.
    pub fn elem(self: &Arc<Self>, coords: Vector) -> Elem {
        let matrix = self.matrix_of(&coords);
        Elem {
            parent: Arc::clone(self),
            coords,
            matrix,
        }
    }

    pub fn elem_from_matrix(self: &Arc<Self>, matrix: Matrix) -> Result<Elem> {
        let coords = self.coords_of(&matrix)?;
        Ok(Elem {
            parent: Arc::clone(self),
            coords,
            matrix,
        })
    }

    /// Index of the basis element `E_pq` of `sl_n` (`p != q`).
    pub fn sl_unit_index(&self, p: usize, q: usize) -> usize {
        assert_eq!(self.family(), Family::Sl);
        assert!(p != q);
        let size = self.matrix_size();
        p * (size - 1) + if q > p { q - 1 } else { q }
    }

    /// Canonical rank-one representative of the minimal nilpotent orbit:
    /// `E_{0,n-1}` in `sl_n`, `e_0 e_0ᵀ Ω` in `sp_2n`.
    pub fn minimal_nilpotent(self: &Arc<Self>) -> Result<Elem> {
        let size = self.matrix_size();
        match self.family() {
            Family::Sl => self.elem_from_matrix(Matrix::unit(size, size, 0, size - 1)),
            Family::Sp => {
                let mut e0 = zero_vector(size);
                e0[0] = Rational::one();
                let omega = self.omega.as_ref().expect("sp carries its form");
                self.elem_from_matrix(&Matrix::outer(&e0, &e0) * omega)
            }
            Family::So => Err(Error::UnsupportedFamily(self.id)),
        }
    }

    /// Smallest bracket-closed subspace containing `generators`.
    pub fn generated_subalgebra(self: &Arc<Self>, generators: &[Elem]) -> Result<Subspace> {
        for g in generators {
            self.check_parent(g)?;
        }
        let mut current = Subspace::span(self, generators.iter().map(|g| g.coords.clone()));
        loop {
            let elems = current.elements();
            let mut vectors = current.basis().to_vec();
            for (i, u) in elems.iter().enumerate() {
                for w in &elems[i + 1..] {
                    let b = u.bracket_unchecked(w);
                    if !current.contains(&b.coords) {
                        vectors.push(b.coords);
                    }
                }
            }
            let next = Subspace::span(self, vectors);
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    pub(crate) fn check_parent(&self, x: &Elem) -> Result<()> {
        if x.parent.id != self.id {
            return Err(Error::ParentMismatch(self.id, x.parent.id));
        }
        Ok(())
    }
}

fn sl_basis(n: usize) -> Vec<Matrix> {
    let mut basis = Vec::with_capacity(n * n - 1);
    for p in 0..n {
        for q in 0..n {
            if p != q {
                basis.push(Matrix::unit(n, n, p, q));
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = Matrix::zeros(n, n);
        h[(i, i)] = rat(1);
        h[(i + 1, i + 1)] = rat(-1);
        basis.push(h);
    }
    basis
}

fn sp_basis(n: usize) -> Vec<Matrix> {
    let size = 2 * n;
    let mut basis = Vec::with_capacity(n * (2 * n + 1));
    for p in 0..n {
        for q in 0..n {
            let mut m = Matrix::unit(size, size, p, q);
            m[(n + q, n + p)] -= rat(1);
            basis.push(m);
        }
    }
    for p in 0..n {
        for q in p..n {
            let mut m = Matrix::unit(size, size, p, n + q);
            m[(q, n + p)] = rat(1);
            basis.push(m);
        }
    }
    for p in 0..n {
        for q in p..n {
            let mut m = Matrix::unit(size, size, n + p, q);
            m[(n + q, p)] = rat(1);
            basis.push(m);
        }
    }
    basis
}

fn so_basis(n: usize) -> Vec<Matrix> {
    let mut basis = Vec::with_capacity(n * (n - 1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            let mut m = Matrix::unit(n, n, p, q);
            m[(q, p)] = rat(-1);
            basis.push(m);
        }
    }
    basis
}

/// An element of a [`LieAlg`], kept both as coordinates and as a matrix.
#[derive(Clone)]
pub struct Elem {
    parent: Arc<LieAlg>,
    coords: Vector,
    matrix: Matrix,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.parent.id == other.parent.id && self.coords == other.coords
    }
}

impl Eq for Elem {}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.parent.id, self.matrix)
    }
}

impl Elem {
    pub fn parent(&self) -> &Arc<LieAlg> {
        &self.parent
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    fn same_parent(&self, other: &Elem) -> Result<()> {
        self.parent.check_parent(other)
    }

    fn combine(&self, other: &Elem, s: &Rational) -> Elem {
        assert_eq!(self.parent.id, other.parent.id, "parent mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + s * b)
            .collect();
        let mut matrix = self.matrix.clone();
        matrix.add_scaled(s, &other.matrix);
        Elem {
            parent: Arc::clone(&self.parent),
            coords,
            matrix,
        }
    }

    /// `self + other`. Panics if the parents differ.
    pub fn add(&self, other: &Elem) -> Elem {
        self.combine(other, &Rational::one())
    }

    /// `self - other`. Panics if the parents differ.
    pub fn sub(&self, other: &Elem) -> Elem {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Elem {
        Elem {
            parent: Arc::clone(&self.parent),
            coords: self.coords.iter().map(|x| x * s).collect(),
            matrix: self.matrix.scale(s),
        }
    }

    pub fn neg(&self) -> Elem {
        self.scale(&-Rational::one())
    }

    pub(crate) fn bracket_unchecked(&self, other: &Elem) -> Elem {
        let matrix = self.matrix.commutator(&other.matrix);
        let coords = self.parent.read_coords(&matrix);
        debug_assert_eq!(self.parent.matrix_of(&coords), matrix);
        Elem {
            parent: Arc::clone(&self.parent),
            coords,
            matrix,
        }
    }

    /// The matrix commutator `xy - yx`.
    pub fn bracket(&self, other: &Elem) -> Result<Elem> {
        self.same_parent(other)?;
        Ok(self.bracket_unchecked(other))
    }

    /// `dim × dim` matrix whose column `j` holds the coordinates of `[self, b_j]`.
    pub fn ad_matrix(&self) -> Matrix {
        let dim = self.parent.dim();
        let mut ad = Matrix::zeros(dim, dim);
        for (i, c) in self.coords.iter().enumerate() {
            ad.add_scaled(c, &self.parent.basis_ad[i]);
        }
        ad
    }

    /// Killing form `tr(ad x · ad y)`.
    pub fn killing(&self, other: &Elem) -> Result<Rational> {
        self.same_parent(other)?;
        let gram = &self.parent.killing_gram;
        Ok(self
            .coords
            .iter()
            .zip(gram.mul_vec(&other.coords))
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn centralizer(&self) -> Subspace {
        Subspace::span(&self.parent, self.ad_matrix().kernel_basis())
    }

    /// Kernel of `x ↦ ([a, x], [b, x])`, i.e. `C(a) ∩ C(b)`.
    pub fn common_centralizer(&self, other: &Elem) -> Result<Subspace> {
        self.same_parent(other)?;
        let stacked = self.ad_matrix().vstack(&other.ad_matrix());
        Ok(Subspace::span(&self.parent, stacked.kernel_basis()))
    }

    /// `dim(im ad a + im ad b)`, the rank of `[ad a | ad b]`. It equals the
    /// algebra dimension exactly when the common centralizer is zero.
    pub fn image_sum_rank(&self, other: &Elem) -> Result<usize> {
        self.same_parent(other)?;
        Ok(self.ad_matrix().hstack(&other.ad_matrix()).rank())
    }
}

/// A linear subspace of a Lie algebra, stored as the nonzero rows of the
/// reduced row echelon form of any spanning set. Two subspaces are equal iff
/// these canonical bases coincide.
#[derive(Clone)]
pub struct Subspace {
    parent: Arc<LieAlg>,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.parent.id == other.parent.id && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("parent", &self.parent.id)
            .field("dim", &self.dim())
            .finish()
    }
}

impl Subspace {
    pub fn span(parent: &Arc<LieAlg>, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        let dim = parent.dim();
        assert!(
            rows.iter().all(|v| v.len() == dim),
            "coordinate length mismatch"
        );
        if rows.is_empty() {
            return Self::zero(parent);
        }
        let rref = Matrix::from_rows(rows).rref();
        let rank = rref.rank();
        Subspace {
            parent: Arc::clone(parent),
            basis: (0..rank).map(|r| rref.reduced.row(r).to_vec()).collect(),
            pivots: rref.pivots,
        }
    }

    pub fn zero(parent: &Arc<LieAlg>) -> Subspace {
        Subspace {
            parent: Arc::clone(parent),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(parent: &Arc<LieAlg>) -> Subspace {
        let dim = parent.dim();
        Subspace::span(
            parent,
            (0..dim).map(|i| {
                let mut v = zero_vector(dim);
                v[i] = Rational::one();
                v
            }),
        )
    }

    pub fn parent(&self) -> &Arc<LieAlg> {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.basis
            .iter()
            .map(|v| self.parent.elem(v.clone()))
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[p].is_zero() {
                continue;
            }
            let factor = rest[p].clone();
            for (x, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &factor * b;
                }
            }
        }
        is_zero_vector(&rest)
    }

    pub fn contains_elem(&self, x: &Elem) -> bool {
        x.parent.id == self.parent.id && self.contains(&x.coords)
    }

    pub fn is_bracket_closed(&self) -> bool {
        let elems = self.elements();
        elems.iter().enumerate().all(|(i, u)| {
            elems[i + 1..]
                .iter()
                .all(|w| self.contains(&u.bracket_unchecked(w).coords))
        })
    }

    /// `[V, V]`, spanned by brackets of basis pairs.
    pub fn derived(&self) -> Subspace {
        let elems = self.elements();
        let mut brackets = Vec::new();
        for (i, u) in elems.iter().enumerate() {
            for w in &elems[i + 1..] {
                let b = u.bracket_unchecked(w);
                if !b.is_zero() {
                    brackets.push(b.coords);
                }
            }
        }
        Subspace::span(&self.parent, brackets)
    }

    /// Whether the derived series of this (bracket-closed) subspace reaches 0.
    pub fn is_solvable(&self) -> Result<bool> {
        if !self.is_bracket_closed() {
            return Err(Error::NotBracketClosed);
        }
        let mut current = self.clone();
        while !current.is_zero() {
            let next = current.derived();
            if next.dim() == current.dim() {
                return Ok(false);
            }
            current = next;
        }
        Ok(true)
    }

    /// Killing-orthogonal complement `{ v : κ(u, v) = 0 for all u in self }`.
    pub fn killing_orthogonal(&self) -> Subspace {
        let dim = self.parent.dim();
        if self.is_zero() {
            return Subspace::whole(&self.parent);
        }
        let gram = &self.parent.killing_gram;
        let rows: Vec<Vector> = self
            .basis
            .iter()
            .map(|u| gram.transpose().mul_vec(u))
            .collect();
        let m = Matrix::from_rows(rows);
        debug_assert_eq!(m.cols(), dim);
        Subspace::span(&self.parent, m.kernel_basis())
    }
}

/// Column space of `ad a`, as a subspace.
pub fn ad_image(a: &Elem) -> Subspace {
    let ad = a.ad_matrix();
    let dim = a.parent.dim();
    Subspace::span(a.parent(), (0..dim).map(|j| ad.column(j)))
}
