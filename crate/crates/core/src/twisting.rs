//! Twisting constructions and their inverses: twisting an associative
//! product by an endomorphism, the generalized twist for maps satisfying the
//! twist-compatibility equation, de-twisting weakly left unital carriers
//! with bijective twisting, enumeration of admissible twisting maps on a
//! unital algebra, unitalization, and the weak-embedding obstruction.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    Algebra, CheckOutcome, Element, HomAlgebra, LinearMap, PairWitness,
};
use crate::analysis::{
    centralizer, nucleus, verify_two_sided_unit, IdentityId, IdentityReport, IdentityStatus,
    IdentityWitness,
};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("algebra is not associative (witness triple {0:?})")]
    NotAssociative((usize, usize, usize)),
    #[error("algebra has no two-sided unit")]
    NotUnital,
    #[error("map is not a unital algebra endomorphism")]
    NotEndomorphism(EndomorphismViolation),
    #[error("twist compatibility fails at basis triple {0:?}")]
    ConditionFails((usize, usize, usize)),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EndomorphismViolation {
    /// alpha(e_i * e_j) differs from alpha(e_i) * alpha(e_j).
    Multiplicativity(PairWitness),
    /// alpha does not fix the unit.
    UnitNotFixed { unit: Element, image: Element },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetwistError {
    #[error("carrier is not hom-associative (witness triple {0:?})")]
    NotHomAssociative((usize, usize, usize)),
    #[error("twisting map is not bijective")]
    NotBijective,
    #[error("carrier has no weak left unit")]
    NoWeakLeftUnit,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistEnumError {
    #[error("algebra has no two-sided unit matching the supplied element")]
    NotUnital,
    #[error("candidate enumeration needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("enumeration over the rationals requires caller-supplied candidates")]
    CandidatesRequired,
}

/// Result of de-twisting: an associative product with a left unit that
/// reproduces the input when twisted back.
#[derive(Clone, Debug)]
pub struct DetwistResult {
    pub detwisted: Algebra,
    pub left_unit: Element,
    pub beta: LinearMap,
}

/// The verified one-to-one correspondence between admissible twisting maps
/// of a unital algebra and the distinguished central elements, paired by
/// index.
#[derive(Clone, Debug)]
pub struct TwistCorrespondence {
    pub ac_elements: Vec<Element>,
    pub twist_maps: Vec<LinearMap>,
    /// Candidates supplied by the caller that failed membership.
    pub rejected: Vec<Element>,
    /// True when every admissible element was enumerated (finite-field
    /// mode), false when only supplied candidates were verified.
    pub complete: bool,
}

/// A pair certifying that no weakly unital extension of the twisting exists:
/// x * y = 0 while alpha(x) * alpha(y) != 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    pub x: Element,
    pub y: Element,
    pub alpha_product: Element,
}

fn check_unital_endomorphism(
    a: &Algebra,
    alpha: &LinearMap,
    unit: &Element,
) -> Result<(), TwistError> {
    let image = alpha.apply(unit);
    if &image != unit {
        return Err(TwistError::NotEndomorphism(
            EndomorphismViolation::UnitNotFixed {
                unit: unit.clone(),
                image,
            },
        ));
    }
    for i in 0..a.dim() {
        let ai = alpha.apply(&a.basis_element(i));
        for j in 0..a.dim() {
            let lhs = alpha.apply(&a.basis_product(i, j));
            let rhs = a
                .multiply(&ai, &alpha.apply(&a.basis_element(j)))
                .expect("dims agree");
            if lhs != rhs {
                return Err(TwistError::NotEndomorphism(
                    EndomorphismViolation::Multiplicativity(PairWitness {
                        indices: (i, j),
                        lhs,
                        rhs,
                    }),
                ));
            }
        }
    }
    Ok(())
}

fn compose_product_with(a: &Algebra, alpha: &LinearMap) -> Algebra {
    let n = a.dim();
    let mut sc = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let twisted = alpha.apply(&a.basis_product(i, j));
            for k in 0..n {
                sc.push(twisted.coords().entry(k).clone());
            }
        }
    }
    Algebra::new(a.field(), n, sc).expect("tensor from valid products")
}

/// Twists a unital associative product by a unit-preserving algebra
/// endomorphism: the new product is alpha applied to the old one. The output
/// is hom-associative and the old unit becomes a weak unit.
pub fn yau_twist(a: &Algebra, alpha: &LinearMap) -> Result<HomAlgebra, TwistError> {
    if let CheckOutcome::Fail(w) = a.check_associative() {
        return Err(TwistError::NotAssociative(w.indices));
    }
    let unit = a.two_sided_unit().ok_or(TwistError::NotUnital)?;
    check_unital_endomorphism(a, alpha, &unit)?;
    let twisted = compose_product_with(a, alpha);
    let h = HomAlgebra::new(twisted, alpha.clone()).expect("dimensions agree");
    assert!(
        h.check_hom_associative().passed(),
        "endomorphism twist of an associative product must be hom-associative"
    );
    Ok(h)
}

/// Checks the twist-compatibility equation
/// alpha(alpha(x) * alpha(y*z)) = alpha(alpha(x*y) * alpha(z)) on all basis
/// triples; by multilinearity that settles it for all elements.
pub fn twist_condition_holds(a: &Algebra, alpha: &LinearMap) -> CheckOutcome<(usize, usize, usize)> {
    let n = a.dim();
    for i in 0..n {
        let ai = alpha.apply(&a.basis_element(i));
        for j in 0..n {
            let aij = alpha.apply(&a.basis_product(i, j));
            for k in 0..n {
                let ajk = alpha.apply(&a.basis_product(j, k));
                let ak = alpha.apply(&a.basis_element(k));
                let lhs = alpha.apply(&a.multiply(&ai, &ajk).expect("dims agree"));
                let rhs = alpha.apply(&a.multiply(&aij, &ak).expect("dims agree"));
                if lhs != rhs {
                    return CheckOutcome::Fail((i, j, k));
                }
            }
        }
    }
    CheckOutcome::Pass
}

/// Twists an arbitrary bilinear product by any linear map satisfying the
/// twist-compatibility equation. Associativity and units are not required;
/// when the input has a left (right) unit the output is weakly left (right)
/// unital.
pub fn generalized_twist(a: &Algebra, alpha: &LinearMap) -> Result<HomAlgebra, TwistError> {
    if let CheckOutcome::Fail(t) = twist_condition_holds(a, alpha) {
        return Err(TwistError::ConditionFails(t));
    }
    let twisted = compose_product_with(a, alpha);
    let h = HomAlgebra::new(twisted, alpha.clone()).expect("dimensions agree");
    assert!(
        h.check_hom_associative().passed(),
        "twist-compatible map must produce a hom-associative product"
    );
    Ok(h)
}

fn weak_left_unit(h: &HomAlgebra) -> Option<Element> {
    h.find_units().weak_left_units.map(|s| s.particular)
}

/// Recovers an associative product from a weakly left unital carrier with
/// bijective twisting map: the new product is beta applied to the old one,
/// with beta the inverse twist. The weak left unit becomes a genuine left
/// unit and twisting back reproduces the input exactly.
pub fn detwist(h: &HomAlgebra) -> Result<DetwistResult, DetwistError> {
    if let CheckOutcome::Fail(w) = h.check_hom_associative() {
        return Err(DetwistError::NotHomAssociative(w.indices));
    }
    let beta = h.alpha().invert().map_err(|_| DetwistError::NotBijective)?;
    let c = weak_left_unit(h).ok_or(DetwistError::NoWeakLeftUnit)?;

    let detwisted = compose_product_with(h.algebra(), &beta);
    assert!(
        detwisted.check_associative().passed(),
        "de-twisted product must be associative"
    );
    for i in 0..detwisted.dim() {
        let e = detwisted.basis_element(i);
        assert_eq!(
            detwisted.multiply(&c, &e).expect("dims agree"),
            e,
            "weak left unit must become a left unit after de-twisting"
        );
    }
    // round trip: twisting the de-twisted product with alpha gives back the
    // original structure constants
    let retwisted = compose_product_with(&detwisted, h.alpha());
    assert_eq!(
        &retwisted,
        h.algebra(),
        "re-twisting must reproduce the input product"
    );

    Ok(DetwistResult {
        detwisted,
        left_unit: c,
        beta,
    })
}

fn identity_report(id: IdentityId, witness: Option<IdentityWitness>) -> IdentityReport {
    IdentityReport {
        identity_id: id,
        formula: id.formula(),
        status: match witness {
            None => IdentityStatus::Pass,
            Some(witness) => IdentityStatus::Fail { witness },
        },
    }
}

fn identity_skipped(id: IdentityId, reason: &str) -> IdentityReport {
    IdentityReport {
        identity_id: id,
        formula: id.formula(),
        status: IdentityStatus::Skipped {
            reason: reason.to_string(),
        },
    }
}

/// Runs the seven-identity suite for weakly left unital carriers with
/// bijective twisting map, after verifying all three preconditions.
pub fn verify_section3_lemmas(h: &HomAlgebra) -> Result<Vec<IdentityReport>, DetwistError> {
    if let CheckOutcome::Fail(w) = h.check_hom_associative() {
        return Err(DetwistError::NotHomAssociative(w.indices));
    }
    let beta = h.alpha().invert().map_err(|_| DetwistError::NotBijective)?;
    let c = weak_left_unit(h).ok_or(DetwistError::NoWeakLeftUnit)?;
    Ok(run_weak_unit_suite(h, &beta, Some(&c)))
}

/// Diagnostic mode: requires only a bijective twisting map. Identities that
/// need a weak left unit are skipped when none exists; the rest are
/// evaluated and their status recorded whatever it is.
pub fn verify_section3_lemmas_diagnostic(
    h: &HomAlgebra,
) -> Result<Vec<IdentityReport>, DetwistError> {
    let beta = h.alpha().invert().map_err(|_| DetwistError::NotBijective)?;
    let c = weak_left_unit(h);
    Ok(run_weak_unit_suite(h, &beta, c.as_ref()))
}

fn run_weak_unit_suite(
    h: &HomAlgebra,
    beta: &LinearMap,
    c: Option<&Element>,
) -> Vec<IdentityReport> {
    let a = h.algebra();
    let n = a.dim();
    let mul = |x: &Element, y: &Element| a.multiply(x, y).expect("dims agree");
    let b = |x: &Element| beta.apply(x);

    let mut out = Vec::with_capacity(7);

    // (b(x)*y)*z = x*(y*b(z)) needs only bijectivity
    let mut fail = None;
    'outer: for i in 0..n {
        let x = a.basis_element(i);
        for j in 0..n {
            let y = a.basis_element(j);
            for k in 0..n {
                let z = a.basis_element(k);
                let lhs = mul(&mul(&b(&x), &y), &z);
                let rhs = mul(&x, &mul(&y, &b(&z)));
                if lhs != rhs {
                    fail = Some(IdentityWitness {
                        indices: vec![i, j, k],
                        elements: vec![x, y, z],
                        lhs,
                        rhs,
                    });
                    break 'outer;
                }
            }
        }
    }
    out.push(identity_report(IdentityId::BetaShift, fail));

    let Some(c) = c else {
        for id in [
            IdentityId::WeakUnitSymmetry,
            IdentityId::BetaProductRule,
            IdentityId::BetaContraction,
            IdentityId::WeakUnitRotation,
            IdentityId::BetaRebracket,
            IdentityId::BetaExchange,
        ] {
            out.push(identity_skipped(id, "no weak left unit"));
        }
        // keep suite order stable: exchange before contraction etc.
        out.sort_by_key(|r| {
            IdentityId::WEAK_UNIT_SUITE
                .iter()
                .position(|id| *id == r.identity_id)
        });
        return out;
    };

    let bc = b(c);

    let pairs = |eval: &dyn Fn(&Element, &Element) -> (Element, Element)| {
        for i in 0..n {
            let x = a.basis_element(i);
            for j in 0..n {
                let y = a.basis_element(j);
                let (lhs, rhs) = eval(&x, &y);
                if lhs != rhs {
                    return Some(IdentityWitness {
                        indices: vec![i, j],
                        elements: vec![x, y],
                        lhs,
                        rhs,
                    });
                }
            }
        }
        None
    };
    let triples = |eval: &dyn Fn(&Element, &Element, &Element) -> (Element, Element)| {
        for i in 0..n {
            let x = a.basis_element(i);
            for j in 0..n {
                let y = a.basis_element(j);
                for k in 0..n {
                    let z = a.basis_element(k);
                    let (lhs, rhs) = eval(&x, &y, &z);
                    if lhs != rhs {
                        return Some(IdentityWitness {
                            indices: vec![i, j, k],
                            elements: vec![x, y, z],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    };

    out.push(identity_report(
        IdentityId::WeakUnitSymmetry,
        pairs(&|x, y| (mul(&mul(c, x), y), mul(&mul(x, c), y))),
    ));
    out.push(identity_report(
        IdentityId::BetaProductRule,
        pairs(&|x, y| (mul(&b(x), &b(y)), mul(&bc, &b(&b(&mul(x, y)))))),
    ));
    out.push(identity_report(
        IdentityId::BetaExchange,
        triples(&|x, y, z| (mul(x, &b(&mul(y, z))), mul(&b(&mul(x, y)), z))),
    ));
    out.push(identity_report(
        IdentityId::BetaContraction,
        pairs(&|x, y| (mul(x, &b(y)), b(&mul(&mul(&bc, x), y)))),
    ));
    out.push(identity_report(
        IdentityId::WeakUnitRotation,
        triples(&|x, y, z| {
            (
                mul(&mul(c, &mul(&b(x), y)), z),
                mul(&mul(x, &mul(y, &bc)), z),
            )
        }),
    ));
    out.push(identity_report(
        IdentityId::BetaRebracket,
        triples(&|x, y, z| {
            (
                mul(&mul(x, &bc), &b(&mul(y, z))),
                mul(&mul(x, &b(y)), z),
            )
        }),
    ));
    out.sort_by_key(|r| {
        IdentityId::WEAK_UNIT_SUITE
            .iter()
            .position(|id| *id == r.identity_id)
    });
    out
}

/// Options for twist enumeration: a budget on candidate-space size and,
/// for infinite fields, the explicit candidates to verify.
#[derive(Clone, Debug)]
pub struct TwistEnumOptions {
    pub budget: u64,
    pub candidates: Option<Vec<Element>>,
}

impl Default for TwistEnumOptions {
    fn default() -> Self {
        TwistEnumOptions {
            budget: 1 << 20,
            candidates: None,
        }
    }
}

/// Membership test for the distinguished central set: `x` commutes with
/// everything, the left-multiples of `x` land in the nucleus, and the
/// image of right-multiplication by `x` is an ideal.
fn is_admissible_element(
    a: &Algebra,
    x: &Element,
    centre: &Subspace,
    nuc: &Subspace,
) -> bool {
    if !centre.contains(x.coords()) {
        return false;
    }
    let principal = a.right_mult_matrix(x).image_basis();
    if !nuc.contains_subspace(&principal) {
        return false;
    }
    for g in principal.basis_vectors() {
        let g = Element::new(g);
        for j in 0..a.dim() {
            let e = a.basis_element(j);
            if !principal.contains(a.multiply(&e, &g).expect("dims agree").coords())
                || !principal.contains(a.multiply(&g, &e).expect("dims agree").coords())
            {
                return false;
            }
        }
    }
    true
}

/// Enumerates the twisting maps compatible with a unital algebra together
/// with the corresponding central elements.
///
/// Over a prime field the linear candidate space (centralizer intersected
/// with the nucleus conditions) is enumerated exhaustively and filtered by
/// the ideal condition, which is not linear. Over the rationals the caller
/// must supply candidates; they are verified one by one.
pub fn enumerate_twists(
    a: &Algebra,
    unit: &Element,
    opts: &TwistEnumOptions,
) -> Result<TwistCorrespondence, TwistEnumError> {
    if verify_two_sided_unit(a, unit).is_err() {
        return Err(TwistEnumError::NotUnital);
    }
    let nuc = nucleus(a);
    let centre = centralizer(a);

    let mut ac_elements = Vec::new();
    let mut rejected = Vec::new();
    let mut complete = false;

    match (&opts.candidates, a.field().modulus()) {
        (Some(candidates), _) => {
            for cand in candidates {
                if is_admissible_element(a, cand, &centre, &nuc) {
                    ac_elements.push(cand.clone());
                } else {
                    rejected.push(cand.clone());
                }
            }
        }
        (None, None) => return Err(TwistEnumError::CandidatesRequired),
        (None, Some(p)) => {
            // linear candidate space: central and A*x inside the nucleus
            let nucleus_test = nuc.basis().kernel_basis();
            let mut stacked: Option<Matrix> = None;
            let mut push = |m: Matrix| {
                stacked = Some(match stacked.take() {
                    None => m,
                    Some(acc) => acc.vstack(&m),
                });
            };
            for i in 0..a.dim() {
                let e = a.basis_element(i);
                push(a.right_mult_matrix(&e).sub(&a.left_mult_matrix(&e)));
                if nucleus_test.dim() > 0 {
                    push(nucleus_test.basis().mul(&a.left_mult_matrix(&e)));
                }
            }
            let candidate_space = stacked.expect("dim >= 1").kernel_basis();
            let needed = (p as u128).saturating_pow(candidate_space.dim() as u32);
            if needed > opts.budget as u128 {
                return Err(TwistEnumError::BudgetExceeded {
                    needed,
                    budget: opts.budget,
                });
            }
            for coeffs in crate::analysis::enumerate_vectors(a.field(), candidate_space.dim()) {
                let mut x = Vector::zero(a.field(), a.dim());
                for (r, c) in coeffs.entries().iter().enumerate() {
                    x = x.add(&candidate_space.basis().row(r).scale(c));
                }
                let x = Element::new(x);
                if is_admissible_element(a, &x, &centre, &nuc) {
                    ac_elements.push(x);
                }
            }
            complete = true;
        }
    }

    let twist_maps: Vec<LinearMap> = ac_elements
        .iter()
        .map(|x| LinearMap::new(a.left_mult_matrix(x)).expect("square"))
        .collect();

    // verified correspondence: each twist really is admissible, the pairing
    // round-trips through the unit, composition transports to the product,
    // and the element set is closed under the product
    for (x, m) in ac_elements.iter().zip(&twist_maps) {
        let h = HomAlgebra::new(a.clone(), m.clone()).expect("dims agree");
        assert!(
            h.check_hom_associative().passed(),
            "enumerated twist must be hom-associative"
        );
        assert_eq!(&m.apply(unit), x, "twist map must send the unit to its element");
    }
    for (xi, mi) in ac_elements.iter().zip(&twist_maps) {
        for (xj, mj) in ac_elements.iter().zip(&twist_maps) {
            let product = a.multiply(xi, xj).expect("dims agree");
            assert!(
                !complete || ac_elements.contains(&product),
                "central twist elements must be closed under the product"
            );
            let composed = mi.compose(mj);
            let expected = LinearMap::new(a.left_mult_matrix(&product)).expect("square");
            assert_eq!(
                composed.apply(unit),
                product,
                "composition must transport to the product through the pairing"
            );
            assert_eq!(composed, expected, "composition of twists is the product twist");
        }
    }

    Ok(TwistCorrespondence {
        ac_elements,
        twist_maps,
        rejected,
        complete,
    })
}

/// Adjoins a unit to an associative algebra: on K + A the product is
/// (l, x)(m, y) = (lm, ly + mx + xy), the unit is (1, 0) and the original
/// algebra embeds as the ideal 0 + A with its products preserved.
pub fn unitalize_associative(a: &Algebra) -> Result<Algebra, TwistError> {
    if let CheckOutcome::Fail(w) = a.check_associative() {
        return Err(TwistError::NotAssociative(w.indices));
    }
    let field = a.field();
    let n = a.dim();
    let one = field.one();
    let mut products: Vec<(usize, usize, usize, crate::field::Scalar)> =
        vec![(0, 0, 0, one.clone())];
    for i in 0..n {
        products.push((0, i + 1, i + 1, one.clone()));
        products.push((i + 1, 0, i + 1, one.clone()));
    }
    for (i, j, k, v) in a.nonzero_products() {
        products.push((i + 1, j + 1, k + 1, v));
    }
    let out = Algebra::from_products(field, n + 1, &products).expect("valid indices");
    assert!(
        out.check_associative().passed(),
        "unitalization of an associative product must be associative"
    );
    Ok(out)
}

/// Searches for x, y with x * y = 0 but alpha(x) * alpha(y) != 0. Such a
/// witness certifies that the carrier embeds in no weakly unital
/// hom-associative algebra whose twisting extends alpha.
///
/// The search covers basis pairs and pairs (e_i, y) with y in the kernel of
/// left multiplication by e_i; it is sound but not complete, so `None` is
/// not a proof of embeddability.
pub fn weak_embedding_obstruction(h: &HomAlgebra) -> Option<ObstructionWitness> {
    let a = h.algebra();
    let n = a.dim();
    let witness = |x: Element, y: Element| -> Option<ObstructionWitness> {
        let product = a.multiply(&x, &y).expect("dims agree");
        if !product.is_zero() {
            return None;
        }
        let alpha_product = a
            .multiply(&h.apply_alpha(&x), &h.apply_alpha(&y))
            .expect("dims agree");
        if alpha_product.is_zero() {
            None
        } else {
            Some(ObstructionWitness {
                x,
                y,
                alpha_product,
            })
        }
    };
    for i in 0..n {
        for j in 0..n {
            if let Some(w) = witness(a.basis_element(i), a.basis_element(j)) {
                return Some(w);
            }
        }
    }
    for i in 0..n {
        let x = a.basis_element(i);
        let kernel = a.left_mult_matrix(&x).kernel_basis();
        for y in kernel.basis_vectors() {
            if let Some(w) = witness(x.clone(), Element::new(y)) {
                return Some(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UnitReport;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// Q[t]/(t^2), basis {1, t}.
    fn dual_numbers(field: FieldSpec) -> Algebra {
        let one = field.one();
        Algebra::from_products(
            field,
            2,
            &[
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 0, 1, one),
            ],
        )
        .unwrap()
    }

    fn doubling_map(field: FieldSpec) -> LinearMap {
        LinearMap::new(Matrix::from_i64(field, 2, 2, &[1, 0, 0, 2])).unwrap()
    }

    fn gf2_componentwise() -> Algebra {
        let f = gf(2);
        Algebra::from_products(f, 2, &[(0, 0, 0, f.one()), (1, 1, 1, f.one())]).unwrap()
    }

    fn non_adjoint(field: FieldSpec) -> HomAlgebra {
        let a = Algebra::from_products(field, 2, &[(0, 0, 1, field.one())]).unwrap();
        let alpha = LinearMap::new(Matrix::from_i64(field, 2, 2, &[1, 1, 0, 1])).unwrap();
        HomAlgebra::new(a, alpha).unwrap()
    }

    fn weak_unit_sets(h: &HomAlgebra) -> UnitReport {
        h.find_units()
    }

    #[test]
    fn yau_twist_with_identity_is_original_product() {
        let a = dual_numbers(q());
        let h = yau_twist(&a, &LinearMap::identity(q(), 2)).unwrap();
        assert_eq!(h.algebra(), &a);
    }

    #[test]
    fn yau_twist_of_dual_numbers_by_doubling() {
        let a = dual_numbers(q());
        let alpha = doubling_map(q());
        // endomorphism sanity: alpha(t*t) = alpha(0) = 0 = (2t)*(2t)
        let h = yau_twist(&a, &alpha).unwrap();
        assert!(h.check_hom_associative().passed());
        assert!(h.alpha().invert().is_ok());
        let report = weak_unit_sets(&h);
        let one = Element::from_i64(q(), &[1, 0]);
        assert!(report.weak_left_units.as_ref().unwrap().contains(&one));
        assert!(report.weak_right_units.as_ref().unwrap().contains(&one));
    }

    #[test]
    fn yau_twist_by_coordinate_swap_on_gf2() {
        let a = gf2_componentwise();
        let swap = LinearMap::new(Matrix::from_i64(gf(2), 2, 2, &[0, 1, 1, 0])).unwrap();
        let h = yau_twist(&a, &swap).unwrap();
        assert!(h.check_hom_associative().passed());
        let unit = Element::from_i64(gf(2), &[1, 1]);
        assert!(weak_unit_sets(&h)
            .weak_left_units
            .unwrap()
            .contains(&unit));
    }

    #[test]
    fn yau_twist_rejects_non_endomorphism() {
        let a = dual_numbers(q());
        // t -> 1 is not multiplicative: alpha(t*t) = 0 but alpha(t)^2 = 1
        let alpha = LinearMap::new(Matrix::from_i64(q(), 2, 2, &[1, 1, 0, 0])).unwrap();
        assert!(matches!(
            yau_twist(&a, &alpha),
            Err(TwistError::NotEndomorphism(_))
        ));
    }

    #[test]
    fn yau_twist_rejects_nonunital_and_nonassociative() {
        let f = q();
        let nonunital = Algebra::from_products(f, 2, &[(0, 0, 1, f.one())]).unwrap();
        assert_eq!(
            yau_twist(&nonunital, &LinearMap::identity(f, 2)),
            Err(TwistError::NotUnital)
        );
        let one = f.one();
        let nonassoc = Algebra::from_products(
            f,
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
        .unwrap();
        assert!(matches!(
            yau_twist(&nonassoc, &LinearMap::identity(f, 3)),
            Err(TwistError::NotAssociative(_))
        ));
    }

    #[test]
    fn generalized_twist_by_scalar_on_gf3() {
        let f = gf(3);
        let a = Algebra::from_products(f, 1, &[(0, 0, 0, f.one())]).unwrap();
        let alpha = LinearMap::scalar(f, 1, &f.from_i64(2));
        let h = generalized_twist(&a, &alpha).unwrap();
        assert_eq!(h.algebra().sc(0, 0, 0), &f.from_i64(2));
        let report = weak_unit_sets(&h);
        let wl = report.weak_left_units.unwrap();
        assert_eq!(wl.particular, Element::from_i64(f, &[1]));
        assert!(wl.is_unique());
    }

    #[test]
    fn generalized_twist_with_zero_map() {
        let f = q();
        let one = f.one();
        let nonassoc = Algebra::from_products(
            f,
            3,
            &[
                (0, 0, 0, one.clone()),
                (1, 1, 2, one.clone()),
                (1, 2, 1, one),
            ],
        )
        .unwrap();
        let h = generalized_twist(&nonassoc, &LinearMap::zero(f, 3)).unwrap();
        assert!(h.algebra().nonzero_products().is_empty());
        assert!(h.check_hom_associative().passed());
    }

    #[test]
    fn generalized_twist_agrees_with_yau_twist_for_endomorphisms() {
        let a = dual_numbers(q());
        let alpha = doubling_map(q());
        let via_yau = yau_twist(&a, &alpha).unwrap();
        let via_general = generalized_twist(&a, &alpha).unwrap();
        assert_eq!(via_yau.algebra(), via_general.algebra());
    }

    #[test]
    fn generalized_twist_rejects_incompatible_map() {
        // on the uv non-associative algebra, an invertible non-scalar map
        // violates the compatibility equation
        let f = q();
        let one = f.one();
        let a = Algebra::from_products(
            f,
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
        .unwrap();
        let alpha =
            LinearMap::new(Matrix::from_i64(f, 3, 3, &[1, 0, 0, 0, 1, 0, 0, 1, 1])).unwrap();
        assert!(matches!(
            generalized_twist(&a, &alpha),
            Err(TwistError::ConditionFails(_))
        ));
    }

    #[test]
    fn detwist_recovers_dual_numbers() {
        let a = dual_numbers(q());
        let h = yau_twist(&a, &doubling_map(q())).unwrap();
        let result = detwist(&h).unwrap();
        assert_eq!(result.detwisted, a);
        assert_eq!(result.left_unit, Element::from_i64(q(), &[1, 0]));
        let retwisted = generalized_twist(&result.detwisted, h.alpha()).unwrap();
        assert_eq!(retwisted.algebra(), h.algebra());
    }

    #[test]
    fn detwist_with_identity_twist_is_identity() {
        let a = dual_numbers(q());
        let h = HomAlgebra::new(a.clone(), LinearMap::identity(q(), 2)).unwrap();
        let result = detwist(&h).unwrap();
        assert_eq!(result.detwisted, a);
    }

    #[test]
    fn detwist_scalar_example_over_gf3() {
        let f = gf(3);
        let two = f.from_i64(2);
        let a = Algebra::from_products(f, 1, &[(0, 0, 0, two.clone())]).unwrap();
        let alpha = LinearMap::scalar(f, 1, &two);
        let h = HomAlgebra::new(a, alpha).unwrap();
        let result = detwist(&h).unwrap();
        // x . y = beta(2xy) = 2*2*xy = xy
        assert_eq!(result.detwisted.sc(0, 0, 0), &f.one());
        assert_eq!(result.left_unit, Element::from_i64(f, &[1]));
        assert_eq!(result.beta.matrix(), &Matrix::from_i64(f, 1, 1, &[2]));
    }

    #[test]
    fn detwist_preconditions_are_reported() {
        let f = q();
        let a = dual_numbers(f);
        let zero_twist = HomAlgebra::new(a, LinearMap::zero(f, 2)).unwrap();
        assert!(matches!(
            detwist(&zero_twist),
            Err(DetwistError::NotBijective)
        ));
        assert!(matches!(
            detwist(&non_adjoint(f)),
            Err(DetwistError::NoWeakLeftUnit)
        ));
    }

    #[test]
    fn weak_unit_suite_passes_on_detwist_eligible_example() {
        let h = yau_twist(&dual_numbers(q()), &doubling_map(q())).unwrap();
        let reports = verify_section3_lemmas(&h).unwrap();
        assert_eq!(reports.len(), 7);
        assert!(reports.iter().all(IdentityReport::passed));
    }

    #[test]
    fn weak_unit_suite_passes_with_identity_twist() {
        let a = dual_numbers(q());
        let h = HomAlgebra::new(a, LinearMap::identity(q(), 2)).unwrap();
        let reports = verify_section3_lemmas(&h).unwrap();
        assert!(reports.iter().all(IdentityReport::passed));
    }

    #[test]
    fn weak_unit_suite_diagnostic_on_non_adjoint() {
        let h = non_adjoint(q());
        assert_eq!(
            verify_section3_lemmas(&h),
            Err(DetwistError::NoWeakLeftUnit)
        );
        let reports = verify_section3_lemmas_diagnostic(&h).unwrap();
        let shift = reports
            .iter()
            .find(|r| r.identity_id == IdentityId::BetaShift)
            .unwrap();
        assert!(shift.passed());
        let skipped = reports
            .iter()
            .filter(|r| matches!(r.status, IdentityStatus::Skipped { .. }))
            .count();
        assert_eq!(skipped, 6);
    }

    #[test]
    fn enumerate_twists_on_gf2_componentwise() {
        let a = gf2_componentwise();
        let unit = Element::from_i64(gf(2), &[1, 1]);
        let corr = enumerate_twists(&a, &unit, &TwistEnumOptions::default()).unwrap();
        assert_eq!(corr.ac_elements.len(), 4);
        assert_eq!(corr.twist_maps.len(), 4);
        // brute force over all 16 linear maps on GF(2)^2, keeping those that
        // make the carrier hom-associative
        let mut admissible = Vec::new();
        for bits in 0..16u32 {
            let entries: Vec<i64> = (0..4).map(|b| ((bits >> b) & 1) as i64).collect();
            let m = Matrix::from_i64(gf(2), 2, 2, &entries);
            let h = HomAlgebra::new(a.clone(), LinearMap::new(m.clone()).unwrap()).unwrap();
            if h.check_hom_associative().passed() {
                admissible.push(m);
            }
        }
        assert_eq!(admissible.len(), 4);
        for map in &corr.twist_maps {
            assert!(admissible.contains(map.matrix()));
        }
    }

    #[test]
    fn enumerate_twists_on_commutative_algebra_is_everything() {
        // for an associative commutative unital algebra every element
        // qualifies
        let f = gf(3);
        let a = Algebra::from_products(f, 2, &[(0, 0, 0, f.one()), (1, 1, 1, f.one())]).unwrap();
        let unit = Element::from_i64(f, &[1, 1]);
        let corr = enumerate_twists(&a, &unit, &TwistEnumOptions::default()).unwrap();
        assert_eq!(corr.ac_elements.len(), 9);
    }

    #[test]
    fn enumerate_twists_requires_candidates_over_q() {
        let a = dual_numbers(q());
        let unit = Element::from_i64(q(), &[1, 0]);
        assert!(matches!(
            enumerate_twists(&a, &unit, &TwistEnumOptions::default()),
            Err(TwistEnumError::CandidatesRequired)
        ));
        let opts = TwistEnumOptions {
            candidates: Some(vec![
                Element::from_i64(q(), &[1, 0]),
                Element::from_i64(q(), &[0, 1]),
            ]),
            ..Default::default()
        };
        let corr = enumerate_twists(&a, &unit, &opts).unwrap();
        assert_eq!(corr.ac_elements.len(), 2);
        assert!(corr.rejected.is_empty());
    }

    #[test]
    fn enumerate_twists_budget_is_enforced() {
        let a = gf2_componentwise();
        let unit = Element::from_i64(gf(2), &[1, 1]);
        let opts = TwistEnumOptions {
            budget: 3,
            candidates: None,
        };
        assert!(matches!(
            enumerate_twists(&a, &unit, &opts),
            Err(TwistEnumError::BudgetExceeded { needed: 4, .. })
        ));
    }

    #[test]
    fn unitalize_zero_algebra_gives_dual_numbers() {
        let f = q();
        let zero_alg = Algebra::new(f, 1, vec![f.zero()]).unwrap();
        let out = unitalize_associative(&zero_alg).unwrap();
        assert_eq!(out, dual_numbers(f));
        assert_eq!(out.two_sided_unit(), Some(Element::from_i64(f, &[1, 0])));
    }

    #[test]
    fn unitalize_non_adjoint_product() {
        let f = q();
        let a = Algebra::from_products(f, 2, &[(0, 0, 1, f.one())]).unwrap();
        let out = unitalize_associative(&a).unwrap();
        assert_eq!(out.dim(), 3);
        assert!(out.check_associative().passed());
        assert!(out.two_sided_unit().is_some());
        // the embedding preserves products
        for i in 0..2 {
            for j in 0..2 {
                let embedded = out.basis_product(i + 1, j + 1);
                let original = a.basis_product(i, j);
                for k in 0..2 {
                    assert_eq!(embedded.coords().entry(k + 1), original.coords().entry(k));
                }
                assert!(embedded.coords().entry(0).is_zero());
            }
        }
    }

    #[test]
    fn unitalize_rejects_nonassociative() {
        let f = q();
        let one = f.one();
        let a = Algebra::from_products(
            f,
            2,
            &[(0, 0, 1, one.clone()), (0, 1, 0, one.clone()), (1, 0, 1, one)],
        )
        .unwrap();
        if a.check_associative().passed() {
            panic!("fixture must be nonassociative");
        }
        assert!(matches!(
            unitalize_associative(&a),
            Err(TwistError::NotAssociative(_))
        ));
    }

    #[test]
    fn obstruction_found_on_non_adjoint() {
        let h = non_adjoint(q());
        let w = weak_embedding_obstruction(&h).unwrap();
        assert_eq!(w.x, Element::from_i64(q(), &[1, 0]));
        assert_eq!(w.y, Element::from_i64(q(), &[0, 1]));
        // the twisted product evaluates to (0, 1) in the standard basis
        assert_eq!(w.alpha_product, Element::from_i64(q(), &[0, 1]));
    }

    #[test]
    fn obstruction_absent_for_zero_twist_and_yau_outputs() {
        let f = q();
        let a = dual_numbers(f);
        let zero_twist = HomAlgebra::new(a.clone(), LinearMap::zero(f, 2)).unwrap();
        assert!(weak_embedding_obstruction(&zero_twist).is_none());
        let h = yau_twist(&a, &doubling_map(f)).unwrap();
        assert!(weak_embedding_obstruction(&h).is_none());
    }
}
