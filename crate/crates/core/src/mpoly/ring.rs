use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use super::MPoly;
use crate::ring::Ring;

/// Polynomial ring `R[x_0, ..., x_{n-1}]`, itself usable as a coefficient ring.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    pub names: Arc<Vec<String>>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, names: Vec<String>) -> Self {
        PolyRing { base, names: Arc::new(names) }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> MPoly<R::Elem> {
        MPoly::var(&self.base, i, self.nvars())
    }

    pub fn constant(&self, c: R::Elem) -> MPoly<R::Elem> {
        MPoly::constant(&self.base, c, self.nvars())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MPoly::zero(self.nvars())
    }
    fn one(&self) -> Self::Elem {
        MPoly::one(&self.base, self.nvars())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        MPoly::constant(&self.base, self.base.from_int(n), self.nvars())
    }
    fn characteristic(&self) -> BigUint {
        self.base.characteristic()
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        a.div_exact(&self.base, b)
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.render(&self.base, &self.names)
    }
}
