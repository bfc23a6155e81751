//! Built-in fixtures, addressable by id, so tests and the command line need
//! no external files. Every fixture is verified against its documented
//! properties when it is built.

use serde_json::json;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::field::FieldSpec;
use crate::format::LoadedAlgebra;
use crate::linalg::Matrix;
use crate::truncated::{TruncatedFixture, DEFAULT_DEGREE_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureId {
    /// K^2 with (x1,x2)*(y1,y2) = (0, x1 y1) and the bijective twist
    /// (x1,x2) -> (x1+x2, x2): associative, commutative, hom-associative,
    /// no weak left unit.
    ExNonAdjoint,
    /// The degree-truncated polynomial-plus-plane carrier whose twisting
    /// map has a two-dimensional kernel while the product stays
    /// non-associative.
    ExDimTwoKernel,
    /// dim 3 unital algebra, basis {1, u, v}, u*u = v, u*v = u, with the
    /// zero twist: hom-associative but not associative.
    UnitalNonassoc3d,
    /// GF(2)^2 with the componentwise product and the identity twist.
    Gf2Componentwise,
    /// 2x2 matrices over GF(2) with the identity twist.
    Mat2Gf2,
    /// Q[t]/(t^2) with the bijective unital endomorphism t -> 2t supplied
    /// as twist input (the pair itself is not hom-associative; it is the
    /// canonical twisting demo).
    DualNumbersQ,
}

impl FixtureId {
    pub const ALL: [FixtureId; 6] = [
        FixtureId::ExNonAdjoint,
        FixtureId::ExDimTwoKernel,
        FixtureId::UnitalNonassoc3d,
        FixtureId::Gf2Componentwise,
        FixtureId::Mat2Gf2,
        FixtureId::DualNumbersQ,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureId::ExNonAdjoint => "ex-non-adjoint",
            FixtureId::ExDimTwoKernel => "ex-dim-two-kernel",
            FixtureId::UnitalNonassoc3d => "unital-nonassoc-3d",
            FixtureId::Gf2Componentwise => "gf2-componentwise",
            FixtureId::Mat2Gf2 => "mat2-gf2",
            FixtureId::DualNumbersQ => "dual-numbers-q",
        }
    }
}

impl std::fmt::Display for FixtureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FixtureId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| {
                let known: Vec<&str> = FixtureId::ALL.iter().map(FixtureId::as_str).collect();
                format!("unknown fixture {s:?}; known: {}", known.join(", "))
            })
    }
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Plain(LoadedAlgebra),
    DegreeTruncated(TruncatedFixture),
}

#[derive(Clone, Copy, Debug)]
pub struct FixtureOptions {
    /// Degree bound for the truncated fixture.
    pub degree_bound: usize,
}

impl Default for FixtureOptions {
    fn default() -> Self {
        FixtureOptions {
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

fn metadata(description: &str) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("description".to_string(), json!(description));
    m
}

fn plain(
    algebra: Algebra,
    alpha: Option<LinearMap>,
    unit: Option<Element>,
    description: &str,
) -> Fixture {
    Fixture::Plain(LoadedAlgebra {
        algebra,
        alpha,
        unit,
        metadata: metadata(description),
    })
}

/// Builds and verifies a fixture.
pub fn load_fixture(id: FixtureId, opts: &FixtureOptions) -> Fixture {
    let q = FieldSpec::Rationals;
    let gf2 = FieldSpec::prime(2).expect("2 is prime");
    let fixture = match id {
        FixtureId::ExNonAdjoint => {
            let algebra = Algebra::from_products(q, 2, &[(0, 0, 1, q.one())])
                .and_then(|a| a.with_basis_names(vec!["e1".into(), "e2".into()]))
                .expect("static fixture");
            let alpha = LinearMap::new(Matrix::from_i64(q, 2, 2, &[1, 1, 0, 1])).expect("square");
            plain(
                algebra,
                Some(alpha),
                None,
                "associative commutative product with a bijective twist and no weak unit",
            )
        }
        FixtureId::ExDimTwoKernel => {
            Fixture::DegreeTruncated(TruncatedFixture::new(q, opts.degree_bound))
        }
        FixtureId::UnitalNonassoc3d => {
            let one = q.one();
            let algebra = Algebra::from_products(
                q,
                3,
                &[
                    (0, 0, 0, one.clone()),
                    (0, 1, 1, one.clone()),
                    (0, 2, 2, one.clone()),
                    (1, 0, 1, one.clone()),
                    (2, 0, 2, one.clone()),
                    (1, 1, 2, one.clone()),
                    (1, 2, 1, one),
                ],
            )
            .and_then(|a| a.with_basis_names(vec!["1".into(), "u".into(), "v".into()]))
            .expect("static fixture");
            plain(
                algebra,
                Some(LinearMap::zero(q, 3)),
                Some(Element::from_i64(q, &[1, 0, 0])),
                "unital non-associative three-dimensional carrier with the zero twist",
            )
        }
        FixtureId::Gf2Componentwise => {
            let algebra =
                Algebra::from_products(gf2, 2, &[(0, 0, 0, gf2.one()), (1, 1, 1, gf2.one())])
                    .expect("static fixture");
            plain(
                algebra,
                Some(LinearMap::identity(gf2, 2)),
                Some(Element::from_i64(gf2, &[1, 1])),
                "componentwise product on GF(2)^2 with the identity twist",
            )
        }
        FixtureId::Mat2Gf2 => {
            let one = gf2.one();
            let idx = |r: usize, c: usize| r * 2 + c;
            let mut products = Vec::new();
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            if b == c {
                                products.push((idx(a, b), idx(c, d), idx(a, d), one.clone()));
                            }
                        }
                    }
                }
            }
            let algebra = Algebra::from_products(gf2, 4, &products)
                .and_then(|a| {
                    a.with_basis_names(vec![
                        "E11".into(),
                        "E12".into(),
                        "E21".into(),
                        "E22".into(),
                    ])
                })
                .expect("static fixture");
            plain(
                algebra,
                Some(LinearMap::identity(gf2, 4)),
                Some(Element::from_i64(gf2, &[1, 0, 0, 1])),
                "2x2 matrices over GF(2) with the identity twist",
            )
        }
        FixtureId::DualNumbersQ => {
            let one = q.one();
            let algebra = Algebra::from_products(
                q,
                2,
                &[
                    (0, 0, 0, one.clone()),
                    (0, 1, 1, one.clone()),
                    (1, 0, 1, one),
                ],
            )
            .and_then(|a| a.with_basis_names(vec!["1".into(), "t".into()]))
            .expect("static fixture");
            let alpha = LinearMap::new(Matrix::from_i64(q, 2, 2, &[1, 0, 0, 2])).expect("square");
            plain(
                algebra,
                Some(alpha),
                Some(Element::from_i64(q, &[1, 0])),
                "dual numbers over Q with the doubling endomorphism as twist input",
            )
        }
    };
    verify_fixture(id, &fixture);
    fixture
}

/// Checks each fixture's documented properties; a failure is a bug in the
/// fixture table.
fn verify_fixture(id: FixtureId, fixture: &Fixture) {
    match (id, fixture) {
        (FixtureId::ExNonAdjoint, Fixture::Plain(l)) => {
            assert!(l.algebra.check_associative().passed());
            assert!(l.algebra.check_commutative().passed());
            let h = l.hom_algebra().expect("has alpha");
            assert!(h.check_hom_associative().passed());
            assert!(h.alpha().invert().is_ok());
            assert!(h.find_units().weak_left_units.is_none());
        }
        (FixtureId::ExDimTwoKernel, Fixture::DegreeTruncated(t)) => {
            assert_eq!(t.alpha_kernel().dim(), 2);
            assert!(t.unit_holds());
        }
        (FixtureId::UnitalNonassoc3d, Fixture::Plain(l)) => {
            assert!(!l.algebra.check_associative().passed());
            let unit = l.unit.as_ref().expect("has unit");
            crate::analysis::verify_two_sided_unit(&l.algebra, unit).expect("unit verifies");
            assert!(l.hom_algebra().unwrap().check_hom_associative().passed());
        }
        (FixtureId::Gf2Componentwise, Fixture::Plain(l))
        | (FixtureId::Mat2Gf2, Fixture::Plain(l)) => {
            assert!(l.algebra.check_associative().passed());
            let unit = l.unit.as_ref().expect("has unit");
            crate::analysis::verify_two_sided_unit(&l.algebra, unit).expect("unit verifies");
            assert!(l.hom_algebra().unwrap().check_hom_associative().passed());
        }
        (FixtureId::DualNumbersQ, Fixture::Plain(l)) => {
            assert!(l.algebra.check_associative().passed());
            assert!(l.algebra.check_commutative().passed());
            let unit = l.unit.as_ref().expect("has unit");
            crate::analysis::verify_two_sided_unit(&l.algebra, unit).expect("unit verifies");
            let alpha = l.alpha.as_ref().expect("has alpha");
            assert!(alpha.invert().is_ok());
            // alpha is a unital endomorphism, so the twist construction
            // accepts it
            crate::twisting::yau_twist(&l.algebra, alpha).expect("endomorphism");
        }
        _ => unreachable!("fixture shape mismatch"),
    }
}
