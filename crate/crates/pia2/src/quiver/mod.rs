//! Quivers, path algebras with relations, representations, and the explicit
//! modules over A2 and its preprojective algebra.

mod path;
mod rep;

pub use path::{double_quiver, preprojective_algebra, preprojective_relation, BoundQuiver, Edge, Path, PathElement, Quiver};
pub use rep::{check_exact, hom_basis, RepMap, Representation};

use alloc::string::String;
use thiserror::Error;

use crate::linalg::Field;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("edge {0} references a missing vertex")]
    BadEdge(String),
    #[error("matrix shapes do not match the dimension vectors")]
    ShapeMismatch,
    #[error("path algebra is infinite dimensional at this vertex")]
    InfiniteDimensional,
    #[error("reduced product left the normal-form basis")]
    NotReduced,
    #[error("expected a one-dimensional Hom space, found {0}")]
    NotOneDimensional(usize),
}

/// The four indecomposable modules over the preprojective algebra of A2,
/// together with the maps of the two short exact sequences.
#[derive(Clone, Debug)]
pub struct Pia2Modules {
    pub algebra: BoundQuiver,
    pub s1: Representation,
    pub s2: Representation,
    pub p1: Representation,
    pub p2: Representation,
    /// `S2 -> P1`
    pub j1: RepMap,
    /// `S1 -> P2`
    pub j2: RepMap,
    /// `P1 -> S1`
    pub p1_map: RepMap,
    /// `P2 -> S2`
    pub p2_map: RepMap,
}

fn unique_map(source: &Representation, target: &Representation) -> Result<RepMap, QuiverError> {
    let mut basis = hom_basis(source, target);
    if basis.len() != 1 {
        return Err(QuiverError::NotOneDimensional(basis.len()));
    }
    Ok(basis.remove(0))
}

pub fn pia2_modules(field: Field) -> Result<Pia2Modules, QuiverError> {
    let algebra = preprojective_algebra(&Quiver::linear(2), field);
    let q = algebra.quiver().clone();
    let s1 = Representation::simple(&q, field, 0);
    let s2 = Representation::simple(&q, field, 1);
    let p1 = Representation::projective(&algebra, 0)?;
    let p2 = Representation::projective(&algebra, 1)?;
    Ok(Pia2Modules {
        j1: unique_map(&s2, &p1)?,
        j2: unique_map(&s1, &p2)?,
        p1_map: unique_map(&p1, &s1)?,
        p2_map: unique_map(&p2, &s2)?,
        algebra,
        s1,
        s2,
        p1,
        p2,
    })
}

/// The vertex swap `1 <-> 2` on a representation of the doubled A2 quiver.
pub fn kappa(rep: &Representation) -> Result<Representation, QuiverError> {
    rep.relabel(&rep.quiver().clone(), &[1, 0])
}

/// Modules over the A2 path algebra `X --f--> Y`: the projective `P = P_X`,
/// the simple `S1 = S_X` and the simple projective `S2 = P_Y`.
#[derive(Clone, Debug)]
pub struct A2Modules {
    pub algebra: BoundQuiver,
    pub p: Representation,
    pub s1: Representation,
    pub s2: Representation,
    /// `S2 -> P`
    pub incl: RepMap,
    /// `P -> S1`
    pub proj: RepMap,
}

pub fn a2_modules(field: Field) -> Result<A2Modules, QuiverError> {
    let algebra = BoundQuiver::free(Quiver::a2(), field);
    let p = Representation::projective(&algebra, 0)?;
    let s2 = Representation::projective(&algebra, 1)?;
    let s1 = Representation::simple(algebra.quiver(), field, 0);
    Ok(A2Modules { incl: unique_map(&s2, &p)?, proj: unique_map(&p, &s1)?, algebra, p, s1, s2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pia2_dimension_vectors() {
        let m = pia2_modules(Field::Q).unwrap();
        assert_eq!(m.s1.dims(), [1, 0]);
        assert_eq!(m.s2.dims(), [0, 1]);
        assert_eq!(m.p1.dims(), [1, 1]);
        assert_eq!(m.p2.dims(), [1, 1]);
    }

    #[test]
    fn p1_edge_action() {
        let m = pia2_modules(Field::F2).unwrap();
        // (12) carries the vertex-1 generator to vertex 2; (21) into vertex 1 is zero
        assert!(m.p1.maps()[0].get(0, 0).is_one());
        assert!(m.p1.maps()[1].is_zero());
    }

    #[test]
    fn all_modules_satisfy_relations() {
        for field in [Field::F2, Field::Q] {
            let m = pia2_modules(field).unwrap();
            for r in [&m.s1, &m.s2, &m.p1, &m.p2] {
                assert!(r.satisfies(&m.algebra));
            }
        }
    }

    #[test]
    fn kappa_swaps_and_squares_to_identity() {
        let m = pia2_modules(Field::Q).unwrap();
        assert_eq!(kappa(&m.s1).unwrap(), m.s2);
        assert_eq!(kappa(&m.p1).unwrap(), m.p2);
        for r in [&m.s1, &m.s2, &m.p1, &m.p2] {
            assert_eq!(&kappa(&kappa(r).unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn short_exact_sequences() {
        let m = pia2_modules(Field::Q).unwrap();
        let seq1 = [m.s1.clone(), m.p2.clone(), m.s2.clone()];
        assert!(check_exact(&seq1, &[m.j2.clone(), m.p2_map.clone()]).unwrap());
        let seq2 = [m.s2.clone(), m.p1.clone(), m.s1.clone()];
        assert!(check_exact(&seq2, &[m.j1.clone(), m.p1_map.clone()]).unwrap());
        let zero = RepMap::zero(&m.s1, &m.p2);
        assert!(!check_exact(&seq1, &[zero, m.p2_map.clone()]).unwrap());
    }

    #[test]
    fn check_exact_rejects_bad_shapes() {
        let m = pia2_modules(Field::Q).unwrap();
        let seq = [m.s1.clone(), m.p2.clone()];
        assert_eq!(check_exact(&seq, core::slice::from_ref(&m.j1)), Err(QuiverError::ShapeMismatch));
    }

    #[test]
    fn a2_sequence_is_exact() {
        let m = a2_modules(Field::Q).unwrap();
        assert_eq!(m.p.dims(), [1, 1]);
        assert_eq!(m.s2.dims(), [0, 1]);
        let seq = [m.s2.clone(), m.p.clone(), m.s1.clone()];
        assert!(check_exact(&seq, &[m.incl.clone(), m.proj.clone()]).unwrap());
    }

    #[test]
    fn hom_spaces_between_indecomposables() {
        let m = pia2_modules(Field::Q).unwrap();
        assert_eq!(hom_basis(&m.s1, &m.p1).len(), 0);
        assert_eq!(hom_basis(&m.p1, &m.p2).len(), 1);
        assert_eq!(hom_basis(&m.p1, &m.p1).len(), 1);
        for f in hom_basis(&m.p2, &m.p1) {
            assert!(f.is_homomorphism(&m.p2, &m.p1));
        }
    }
}
