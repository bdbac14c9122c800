//! Bounded complexes of projectives, their dg Hom complexes, and a contraction
//! of each Hom complex onto its cohomology.

mod complex;
mod contraction;
mod hom;
pub mod instances;
mod system;

pub use complex::{cone, ChainMap, TruncatedComplex};
pub use contraction::{kernel_completion, top_coordinate, ClassSpec, Contraction, ContractionReport, HomotopyMode};
pub use hom::{hom_differential, homology, DgCategory, HomLayout, HomVector};
pub use system::ProjectiveSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("algebra is not finite dimensional")]
    NotFinite,
    #[error("a Hom space between projectives has dimension above one")]
    HomTooLarge,
    #[error("matrix shapes or supports do not match")]
    Shape,
    #[error("d^2 != 0 starting at position {0}")]
    NotAComplex(i64),
    #[error("component {0} lies outside the window")]
    OutsideWindow(i64),
    #[error("maps or complexes do not match")]
    Mismatch,
    #[error("expected a degree-0 map, got degree {0}")]
    Degree(i64),
    #[error("map is not a cycle")]
    NotACycle,
    #[error("window too small")]
    WindowTooSmall,
    #[error("more than one named class in a Hom space")]
    AmbiguousProjection,
    #[error("named classes are dependent modulo boundaries")]
    DependentClasses,
    #[error("linear solve failed")]
    Solver,
}

#[cfg(test)]
mod tests {
    use super::instances::*;
    use super::*;
    use crate::linalg::{Field, SparseMatrix};
    use crate::symbols::{ExtSymbol, Obj, Vertex};
    use alloc::sync::Arc;
    use alloc::vec;
    use alloc::vec::Vec;

    const S1: Obj = Obj::S(Vertex::One);
    const S2: Obj = Obj::S(Vertex::Two);

    fn q(window: i64, v: Vertex) -> Arc<TruncatedComplex> {
        Arc::new(build_resolution(&pia2_system(Field::F2), v, window).unwrap())
    }

    #[test]
    fn identity_is_a_cycle() {
        for field in [Field::F2, Field::Q] {
            let c = Arc::new(build_resolution(&pia2_system(field), Vertex::One, 8).unwrap());
            assert!(ChainMap::identity(c).is_cycle());
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        let cat = pia2_category(Field::Q, 10).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                for n in cat.degrees(x, y).collect::<Vec<_>>() {
                    let mut f = cat.zero(x, y, n);
                    for (k, s) in f.v.iter_mut().enumerate() {
                        *s = Field::Q.int((k as i64 * 7 + n) % 5 - 2);
                    }
                    assert!(cat.d(&cat.d(&f)).is_zero(), "Hom^{n}({x}, {y})");
                    // the chain map picture agrees
                    let dd = cat.to_chain_map(&f).dg_differential().dg_differential();
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn cones() {
        let c = q(6, Vertex::One);
        let zero = ChainMap::zero(c.clone(), c.clone(), 0);
        let z = cone(&zero).unwrap();
        let hz: usize = homology(&z, 2).iter().map(|p| p.1).sum();
        // cone(0) = C[1] + C: one class from each copy
        assert_eq!(hz, 2);
        let id = cone(&ChainMap::identity(c.clone())).unwrap();
        assert!(homology(&id, 2).iter().all(|p| p.1 == 0));
        let bad = ChainMap::zero(c.clone(), c, 1);
        assert_eq!(cone(&bad), Err(ComplexError::Degree(1)));
    }

    #[test]
    fn resolutions_are_exact_except_at_top() {
        let c = q(12, Vertex::Two);
        for (p, h) in homology(&c, 2) {
            assert_eq!(h, usize::from(p == 0), "position {p}");
        }
    }

    #[test]
    fn self_ext_is_polynomial() {
        let cat = pia2_category(Field::F2, 24).unwrap();
        let s1 = obj_index(S1);
        let hs: Vec<usize> = (0..=4).map(|n| cat.trusted_homology(s1, s1, n, TRUST_MARGIN)).collect();
        assert_eq!(hs, vec![1, 0, 1, 0, 1]);
        let s2 = obj_index(S2);
        let cross: Vec<usize> = (0..=4).map(|n| cat.trusted_homology(s1, s2, n, TRUST_MARGIN)).collect();
        assert_eq!(cross, vec![0, 1, 0, 1, 0]);
        // the raw count sees a class pushed off the bottom of the window
        assert_eq!(cat.hom_homology(s1, s2, 0), 1);
    }

    #[test]
    fn composite_of_j1_and_p2_is_an_arrow() {
        let cat = pia2_category(Field::F2, 12).unwrap();
        let j1 = realize_ext_vector(&cat, ExtSymbol::J(Vertex::One)).unwrap();
        let p2 = realize_ext_vector(&cat, ExtSymbol::P(Vertex::Two)).unwrap();
        let arrow: ExtSymbol = "(21)".parse().unwrap();
        let comp = cat.compose(&j1, &p2).unwrap();
        assert_eq!(comp, realize_ext_vector(&cat, arrow).unwrap());
        // p1 . j1 is nonzero as a map but its class vanishes
        let p1 = realize_ext_vector(&cat, ExtSymbol::P(Vertex::One)).unwrap();
        let loop_ = cat.compose(&p1, &j1).unwrap();
        assert!(!loop_.is_zero());
        let c = pia2_contraction(Field::F2, 12, HomotopyMode::Paper).unwrap();
        assert!(c.p(&loop_).is_empty());
    }

    #[test]
    fn contraction_axioms_both_modes() {
        for field in [Field::F2, Field::Q] {
            for mode in [HomotopyMode::Paper, HomotopyMode::Generic] {
                let c = pia2_contraction(field, DEFAULT_WINDOW, mode).unwrap();
                let r = c.verify(TRUST_MARGIN);
                assert!(r.passed(), "{field:?} {mode:?}: {r:?}");
            }
        }
    }

    #[test]
    fn a2_contraction_is_exact() {
        for field in [Field::F2, Field::Q] {
            let c = a2_contraction(field, HomotopyMode::Generic).unwrap();
            let r = c.verify(0);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn paper_homotopy_is_stable_in_the_window() {
        let small = pia2_contraction(Field::F2, 20, HomotopyMode::Paper).unwrap();
        let big = pia2_contraction(Field::F2, 22, HomotopyMode::Paper).unwrap();
        let u = ExtSymbol::u(Vertex::One, 2);
        let (a, b) = (small.include(&u).unwrap(), big.include(&u).unwrap());
        let (ca, cb) = (small.category().to_chain_map(a), big.category().to_chain_map(b));
        for i in -14..=0 {
            assert_eq!(ca.component(i), cb.component(i), "component {i}");
        }
    }

    #[test]
    fn symbolic_table_matches_matrices() {
        for field in [Field::F2, Field::Q] {
            let c = pia2_contraction(field, DEFAULT_WINDOW, HomotopyMode::Paper).unwrap();
            let bad = audit_symbolic_table(&c, 3);
            assert!(bad.is_empty(), "{field:?}: {bad:#?}");
        }
    }

    #[test]
    fn rejects_bad_complexes() {
        let sys = pia2_system(Field::Q);
        let two = SparseMatrix::identity(Field::Q, 1).scale(&Field::Q.int(2));
        let r = TruncatedComplex::new("x", sys.clone(), 0, vec![vec![0], vec![0], vec![0]], vec![two.clone(), two]);
        assert_eq!(r.err(), Some(ComplexError::NotAComplex(0)));
        let r = TruncatedComplex::new("y", sys, 0, vec![vec![0]], vec![SparseMatrix::identity(Field::Q, 1)]);
        assert_eq!(r.err(), Some(ComplexError::Shape));
    }
}
