use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::Field;
use crate::transfer::{Backend, LinComb, Morphism, Transfer};

use super::{AInfCategory, AInfError};

/// The minimal model produced by homotopy transfer, evaluated on demand.
pub struct TransferredCategory<'a, B: Backend> {
    name: String,
    transfer: Transfer<'a, B>,
    objects: Vec<<B::Sym as Morphism>::Obj>,
    symbols: Vec<B::Sym>,
}

impl<'a, B: Backend> TransferredCategory<'a, B> {
    /// `symbols` is the non-identity basis the category offers, in any order.
    pub fn new(name: impl Into<String>, backend: &'a B, symbols: Vec<B::Sym>) -> Self {
        let mut symbols: Vec<B::Sym> = symbols.into_iter().filter(|s| !s.is_identity()).collect();
        symbols.sort();
        symbols.dedup();
        let mut objects: Vec<_> = symbols.iter().flat_map(|s| [s.source(), s.target()]).collect();
        objects.sort();
        objects.dedup();
        TransferredCategory { name: name.into(), transfer: Transfer::new(backend), objects, symbols }
    }

    pub fn with_objects(mut self, objects: Vec<<B::Sym as Morphism>::Obj>) -> Self {
        self.objects = objects;
        self
    }

    pub fn transfer(&self) -> &Transfer<'a, B> {
        &self.transfer
    }

    pub fn symbols(&self) -> &[B::Sym] {
        &self.symbols
    }
}

impl<B: Backend> AInfCategory for TransferredCategory<'_, B> {
    type Sym = B::Sym;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.transfer.field()
    }

    fn objects(&self) -> Vec<<B::Sym as Morphism>::Obj> {
        self.objects.clone()
    }

    fn basis(&self, x: &<B::Sym as Morphism>::Obj, y: &<B::Sym as Morphism>::Obj, degree_max: i64) -> Vec<B::Sym> {
        self.symbols.iter().filter(|s| &s.source() == x && &s.target() == y && s.degree() <= degree_max).cloned().collect()
    }

    fn operation(&self, inputs: &[B::Sym]) -> Result<LinComb<B::Sym>, AInfError> {
        Ok(self.transfer.m(inputs)?)
    }
}
