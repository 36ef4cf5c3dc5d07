//! Truncated currents `Σ_{k<N} x_k ⊗ t^k` in `g ⊗ k[t]`.
//!
//! One type covers both readings: as polynomials of degree below `N`, and as
//! elements of `g ⊗ k[t]/(t^N)`, where products of degree `N` or more vanish.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{Elem, LieAlg};
use crate::random::{int_coords, substream, Purpose};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Current {
    parent: Arc<LieAlg>,
    coeffs: Vec<Elem>,
}

impl Current {
    pub fn new(parent: &Arc<LieAlg>, coeffs: Vec<Elem>) -> Result<Current> {
        if coeffs.is_empty() {
            return Err(Error::ParameterOutOfRange(
                "truncation order must be at least 1".into(),
            ));
        }
        for c in &coeffs {
            parent.check_parent(c)?;
        }
        Ok(Current {
            parent: Arc::clone(parent),
            coeffs,
        })
    }

    pub fn zero(parent: &Arc<LieAlg>, order: usize) -> Current {
        assert!(order >= 1, "truncation order must be at least 1");
        Current {
            parent: Arc::clone(parent),
            coeffs: vec![parent.zero(); order],
        }
    }

    /// `x ⊗ t^deg`, truncated at `order`.
    pub fn monomial(x: &Elem, deg: usize, order: usize) -> Current {
        let mut c = Current::zero(x.parent(), order);
        if deg < order {
            c.coeffs[deg] = x.clone();
        }
        c
    }

    /// `x ⊗ 1`.
    pub fn constant(x: &Elem, order: usize) -> Current {
        Current::monomial(x, 0, order)
    }

    /// Uniform integer coordinates in `[-height, height]` for every
    /// coefficient; the same `(seed, parameters)` always give the same value.
    pub fn random(parent: &Arc<LieAlg>, order: usize, height: u32, seed: u64) -> Result<Current> {
        if height == 0 {
            return Err(Error::ParameterOutOfRange(
                "height must be at least 1".into(),
            ));
        }
        if order == 0 {
            return Err(Error::ParameterOutOfRange(
                "truncation order must be at least 1".into(),
            ));
        }
        let mut rng = substream(seed, Purpose::Current, 0);
        let coeffs = (0..order)
            .map(|_| parent.elem(int_coords(&mut rng, parent.dim(), height)))
            .collect();
        Ok(Current {
            parent: Arc::clone(parent),
            coeffs,
        })
    }

    pub fn parent(&self) -> &Arc<LieAlg> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Elem {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, x: Elem) {
        assert_eq!(x.parent().id(), self.parent.id());
        self.coeffs[k] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Smallest degree with a nonzero coefficient; `None` for the zero current.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Keeps degrees below `order`, padding with zeros if `order` is larger.
    pub fn truncate(&self, order: usize) -> Current {
        assert!(order >= 1);
        let coeffs = (0..order)
            .map(|k| {
                self.coeffs
                    .get(k)
                    .cloned()
                    .unwrap_or_else(|| self.parent.zero())
            })
            .collect();
        Current {
            parent: Arc::clone(&self.parent),
            coeffs,
        }
    }

    /// Multiplication by `t^m` within the same truncation order.
    pub fn shift_up(&self, m: usize) -> Current {
        let order = self.order();
        let coeffs = (0..order)
            .map(|k| {
                if k >= m {
                    self.coeffs[k - m].clone()
                } else {
                    self.parent.zero()
                }
            })
            .collect();
        Current {
            parent: Arc::clone(&self.parent),
            coeffs,
        }
    }

    /// Division by `t^m`: drops the lowest `m` coefficients, lowering the order.
    pub fn shift_down(&self, m: usize) -> Current {
        assert!(m < self.order(), "shift would empty the current");
        Current {
            parent: Arc::clone(&self.parent),
            coeffs: self.coeffs[m..].to_vec(),
        }
    }

    fn check_compatible(&self, other: &Current) -> Result<()> {
        self.parent.check_parent(&other.coeffs[0])?;
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Current) -> Result<Current> {
        self.check_compatible(other)?;
        Ok(Current {
            parent: Arc::clone(&self.parent),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Current) -> Result<Current> {
        self.check_compatible(other)?;
        Ok(Current {
            parent: Arc::clone(&self.parent),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    /// Degree-convolved bracket: coefficient `k` is `Σ_{i+j=k} [x_i, y_j]`,
    /// truncated at the common order.
    pub fn cbracket(&self, other: &Current) -> Result<Current> {
        self.check_compatible(other)?;
        let order = self.order();
        let mut out = Current::zero(&self.parent, order);
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..order - i].iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = i + j;
                out.coeffs[k] = out.coeffs[k].add(&x.bracket_unchecked(y));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Family;
    use crate::linalg::ratio;

    fn sl2() -> Arc<LieAlg> {
        LieAlg::build(Family::Sl, 2).unwrap()
    }

    fn efh(g: &Arc<LieAlg>) -> (Elem, Elem, Elem) {
        (g.basis_elem(0), g.basis_elem(1), g.basis_elem(2))
    }

    fn poly(g: &Arc<LieAlg>, coeffs: &[Elem]) -> Current {
        Current::new(g, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn cbracket_examples() {
        let g = sl2();
        let (e, f, h) = efh(&g);
        let z = g.zero();

        let x = poly(&g, &[e.clone(), z.clone()]);
        let y = poly(&g, &[f.clone(), z.clone()]);
        assert_eq!(x.cbracket(&y).unwrap(), poly(&g, &[h.clone(), z.clone()]));

        let x = poly(&g, &[z.clone(), e.clone()]);
        let y = poly(&g, &[z.clone(), f.clone()]);
        assert!(x.cbracket(&y).unwrap().is_zero());

        let x = poly(&g, &[e.clone(), z.clone()]);
        let y = poly(&g, &[f.clone(), h.scale(&ratio(-1, 2))]);
        assert_eq!(x.cbracket(&y).unwrap(), poly(&g, &[h, e]));
    }

    #[test]
    fn cbracket_rejects_mismatches() {
        let g = sl2();
        let (e, _, _) = efh(&g);
        let a = Current::constant(&e, 2);
        assert!(matches!(
            a.cbracket(&Current::constant(&e, 3)),
            Err(Error::OrderMismatch(2, 3))
        ));
        let g3 = LieAlg::build(Family::Sl, 3).unwrap();
        assert!(matches!(
            a.cbracket(&Current::zero(&g3, 2)),
            Err(Error::ParentMismatch(..))
        ));
        assert!(Current::new(&g, vec![]).is_err());
    }

    #[test]
    fn lowest_degrees() {
        let g = sl2();
        let (e, _, h) = efh(&g);
        assert_eq!(poly(&g, &[h, e.clone()]).lowest_degree(), Some(0));
        assert_eq!(Current::monomial(&e, 3, 5).lowest_degree(), Some(3));
        assert_eq!(Current::zero(&g, 4).lowest_degree(), None);
    }

    #[test]
    fn random_is_deterministic_and_in_range() {
        let g = LieAlg::build(Family::Sl, 3).unwrap();
        assert_eq!(
            Current::random(&g, 4, 3, 11).unwrap(),
            Current::random(&g, 4, 3, 11).unwrap()
        );
        assert_ne!(
            Current::random(&g, 4, 3, 11).unwrap(),
            Current::random(&g, 4, 3, 12).unwrap()
        );
        assert!(Current::random(&g, 1, 0, 1).is_err());
        let c = Current::random(&g, 1, 1, 5).unwrap();
        let allowed = [ratio(-1, 1), ratio(0, 1), ratio(1, 1)];
        assert!(c.coeff(0).coords().iter().all(|x| allowed.contains(x)));
    }

    #[test]
    fn random_height_one_hits_every_value() {
        let g = sl2();
        let mut seen = [0usize; 3];
        for seed in 0..1000 {
            let c = Current::random(&g, 1, 1, seed).unwrap();
            let x = &c.coeff(0).coords()[0];
            let idx = (x.numer().to_string().parse::<i64>().unwrap() + 1) as usize;
            seen[idx] += 1;
        }
        assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
    }

    #[test]
    fn shifts() {
        let g = sl2();
        let (e, f, _) = efh(&g);
        let z = g.zero();
        let c = poly(&g, &[e.clone(), f.clone(), z.clone()]);
        assert_eq!(c.shift_up(1), poly(&g, &[z.clone(), e.clone(), f.clone()]));
        assert_eq!(c.shift_up(1).shift_down(1), poly(&g, &[e, f]));
        assert_eq!(c.truncate(4).order(), 4);
    }
}
