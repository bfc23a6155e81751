//! Derived subspaces (image, kernel, nucleus, centralizer), the identity
//! suite for unital carriers, the associative factor and the codimension
//! analyzer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, CheckOutcome, Element, HomAlgebra, LinearMap};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("element is not a two-sided unit: fails at basis index {index}")]
    NotAUnit { index: usize },
    #[error("carrier is not hom-associative (witness triple {0:?})")]
    NotHomAssociative((usize, usize, usize)),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("kernel of alpha is the whole carrier; the factor would have dimension 0")]
    Degenerate,
    #[error("product does not descend: kernel of alpha is not stable")]
    NotWellDefined(IdealWitness),
    #[error("quotient is not associative (witness triple {0:?}); the carrier is not a unital hom-associative algebra")]
    QuotientNotAssociative((usize, usize, usize)),
}

/// Identities checked by the verification suites, named by their shape.
/// `a` is the twisting map, `b` its inverse, `c` a weak left unit, `1` the
/// two-sided unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    /// a(x)*y = x*a(y)
    AlphaSwap,
    /// x*a(1) = a(x)
    AlphaViaUnit,
    /// a(x*y) = x*a(y)
    AlphaProduct,
    /// a(x)*(y*z) = (a(x)*y)*z
    ImageAssocLeft,
    /// x*(a(y)*z) = (x*a(y))*z
    ImageAssocMiddle,
    /// x*(y*a(z)) = (x*y)*a(z)
    ImageAssocRight,
    /// a(x*(y*z)) = a((x*y)*z)
    AlphaAssociator,
    /// (b(x)*y)*z = x*(y*b(z))
    BetaShift,
    /// (c*x)*y = (x*c)*y
    WeakUnitSymmetry,
    /// b(x)*b(y) = b(c)*b(b(x*y))
    BetaProductRule,
    /// x*b(y*z) = b(x*y)*z
    BetaExchange,
    /// x*b(y) = b((b(c)*x)*y)
    BetaContraction,
    /// (c*(b(x)*y))*z = (x*(y*b(c)))*z
    WeakUnitRotation,
    /// (x*b(c))*b(y*z) = (x*b(y))*z
    BetaRebracket,
}

impl IdentityId {
    pub const UNITAL_SUITE: [IdentityId; 7] = [
        IdentityId::AlphaSwap,
        IdentityId::AlphaViaUnit,
        IdentityId::AlphaProduct,
        IdentityId::ImageAssocLeft,
        IdentityId::ImageAssocMiddle,
        IdentityId::ImageAssocRight,
        IdentityId::AlphaAssociator,
    ];

    pub const WEAK_UNIT_SUITE: [IdentityId; 7] = [
        IdentityId::BetaShift,
        IdentityId::WeakUnitSymmetry,
        IdentityId::BetaProductRule,
        IdentityId::BetaExchange,
        IdentityId::BetaContraction,
        IdentityId::WeakUnitRotation,
        IdentityId::BetaRebracket,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::AlphaSwap => "alpha-swap",
            IdentityId::AlphaViaUnit => "alpha-via-unit",
            IdentityId::AlphaProduct => "alpha-product",
            IdentityId::ImageAssocLeft => "image-assoc-left",
            IdentityId::ImageAssocMiddle => "image-assoc-middle",
            IdentityId::ImageAssocRight => "image-assoc-right",
            IdentityId::AlphaAssociator => "alpha-associator",
            IdentityId::BetaShift => "beta-shift",
            IdentityId::WeakUnitSymmetry => "weak-unit-symmetry",
            IdentityId::BetaProductRule => "beta-product-rule",
            IdentityId::BetaExchange => "beta-exchange",
            IdentityId::BetaContraction => "beta-contraction",
            IdentityId::WeakUnitRotation => "weak-unit-rotation",
            IdentityId::BetaRebracket => "beta-rebracket",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            IdentityId::AlphaSwap => "a(x)*y = x*a(y)",
            IdentityId::AlphaViaUnit => "x*a(1) = a(x)",
            IdentityId::AlphaProduct => "a(x*y) = x*a(y)",
            IdentityId::ImageAssocLeft => "a(x)*(y*z) = (a(x)*y)*z",
            IdentityId::ImageAssocMiddle => "x*(a(y)*z) = (x*a(y))*z",
            IdentityId::ImageAssocRight => "x*(y*a(z)) = (x*y)*a(z)",
            IdentityId::AlphaAssociator => "a(x*(y*z)) = a((x*y)*z)",
            IdentityId::BetaShift => "(b(x)*y)*z = x*(y*b(z))",
            IdentityId::WeakUnitSymmetry => "(c*x)*y = (x*c)*y",
            IdentityId::BetaProductRule => "b(x)*b(y) = b(c)*b(b(x*y))",
            IdentityId::BetaExchange => "x*b(y*z) = b(x*y)*z",
            IdentityId::BetaContraction => "x*b(y) = b((b(c)*x)*y)",
            IdentityId::WeakUnitRotation => "(c*(b(x)*y))*z = (x*(y*b(c)))*z",
            IdentityId::BetaRebracket => "(x*b(c))*b(y*z) = (x*b(y))*z",
        }
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::UNITAL_SUITE
            .iter()
            .chain(IdentityId::WEAK_UNIT_SUITE.iter())
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown identity id {s:?}"))
    }
}

/// The basis tuple where an identity fails, with both evaluated sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub indices: Vec<usize>,
    pub elements: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum IdentityStatus {
    Pass,
    Fail { witness: IdentityWitness },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub formula: &'static str,
    #[serde(flatten)]
    pub status: IdentityStatus,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, IdentityStatus::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, IdentityStatus::Fail { .. })
    }
}

/// Where a subspace fails to be a hom-ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub kind: IdealViolation,
    pub member: Element,
    pub escapes_as: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealViolation {
    LeftMultBy(usize),
    RightMultBy(usize),
    Alpha,
}

/// Image of the twisting map as a canonical subspace.
pub fn alpha_image(h: &HomAlgebra) -> Subspace {
    h.alpha().matrix().image_basis()
}

/// Kernel of the twisting map as a canonical subspace.
pub fn alpha_kernel(h: &HomAlgebra) -> Subspace {
    h.alpha().matrix().kernel_basis()
}

/// Checks that `s` is stable under left/right multiplication by every basis
/// vector and under alpha.
pub fn is_hom_ideal(h: &HomAlgebra, s: &Subspace) -> CheckOutcome<IdealWitness> {
    let a = h.algebra();
    assert_eq!(s.ambient_dim(), a.dim(), "subspace/carrier mismatch");
    for b in s.basis_vectors() {
        let member = Element::new(b);
        for i in 0..a.dim() {
            let e = a.basis_element(i);
            let left = a.multiply(&e, &member).expect("dims agree");
            if !s.contains(left.coords()) {
                return CheckOutcome::Fail(IdealWitness {
                    kind: IdealViolation::LeftMultBy(i),
                    member,
                    escapes_as: left,
                });
            }
            let right = a.multiply(&member, &e).expect("dims agree");
            if !s.contains(right.coords()) {
                return CheckOutcome::Fail(IdealWitness {
                    kind: IdealViolation::RightMultBy(i),
                    member,
                    escapes_as: right,
                });
            }
        }
        let image = h.apply_alpha(&member);
        if !s.contains(image.coords()) {
            return CheckOutcome::Fail(IdealWitness {
                kind: IdealViolation::Alpha,
                member,
                escapes_as: image,
            });
        }
    }
    CheckOutcome::Pass
}

/// The set of elements that associate with all elements in every slot:
/// solutions of associator(n, e_i, e_j) = associator(e_i, n, e_j) =
/// associator(e_i, e_j, n) = 0 for all basis pairs (i, j).
pub fn nucleus(a: &Algebra) -> Subspace {
    let n = a.dim();
    let left: Vec<Matrix> = (0..n).map(|i| a.left_mult_matrix(&a.basis_element(i))).collect();
    let right: Vec<Matrix> = (0..n).map(|i| a.right_mult_matrix(&a.basis_element(i))).collect();
    let mut stacked: Option<Matrix> = None;
    let mut push = |m: Matrix| {
        stacked = Some(match stacked.take() {
            None => m,
            Some(acc) => acc.vstack(&m),
        });
    };
    for i in 0..n {
        for j in 0..n {
            let v = a.basis_product(i, j);
            let l_v = a.left_mult_matrix(&v);
            let r_v = a.right_mult_matrix(&v);
            // x in the first slot: (x*e_i)*e_j - x*(e_i*e_j)
            push(right[j].mul(&right[i]).sub(&r_v));
            // x in the middle slot: (e_i*x)*e_j - e_i*(x*e_j)
            push(right[j].mul(&left[i]).sub(&left[i].mul(&right[j])));
            // x in the last slot: (e_i*e_j)*x - e_i*(e_j*x)
            push(l_v.sub(&left[i].mul(&left[j])));
        }
    }
    stacked.expect("dim >= 1").kernel_basis()
}

/// Elements commuting with every element: solutions of c*e_i = e_i*c.
pub fn centralizer(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut stacked: Option<Matrix> = None;
    for i in 0..n {
        let e = a.basis_element(i);
        let block = a.right_mult_matrix(&e).sub(&a.left_mult_matrix(&e));
        stacked = Some(match stacked {
            None => block,
            Some(acc) => acc.vstack(&block),
        });
    }
    stacked.expect("dim >= 1").kernel_basis()
}

fn witness_1(indices: usize, elements: Vec<Element>, lhs: Element, rhs: Element) -> IdentityWitness {
    IdentityWitness {
        indices: vec![indices],
        elements,
        lhs,
        rhs,
    }
}

/// First lexicographic basis witness for a one-variable identity.
fn first_fail_singles(
    n: usize,
    algebra: &Algebra,
    eval: impl Fn(&Element) -> (Element, Element),
) -> Option<IdentityWitness> {
    for i in 0..n {
        let x = algebra.basis_element(i);
        let (lhs, rhs) = eval(&x);
        if lhs != rhs {
            return Some(witness_1(i, vec![x], lhs, rhs));
        }
    }
    None
}

fn first_fail_pairs(
    n: usize,
    algebra: &Algebra,
    eval: impl Fn(&Element, &Element) -> (Element, Element),
) -> Option<IdentityWitness> {
    for i in 0..n {
        let x = algebra.basis_element(i);
        for j in 0..n {
            let y = algebra.basis_element(j);
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
}

fn first_fail_triples(
    n: usize,
    algebra: &Algebra,
    eval: impl Fn(&Element, &Element, &Element) -> (Element, Element),
) -> Option<IdentityWitness> {
    for i in 0..n {
        let x = algebra.basis_element(i);
        for j in 0..n {
            let y = algebra.basis_element(j);
            for k in 0..n {
                let z = algebra.basis_element(k);
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
}

fn report(id: IdentityId, witness: Option<IdentityWitness>) -> IdentityReport {
    IdentityReport {
        identity_id: id,
        formula: id.formula(),
        status: match witness {
            None => IdentityStatus::Pass,
            Some(witness) => IdentityStatus::Fail { witness },
        },
    }
}

fn skipped(id: IdentityId, reason: &str) -> IdentityReport {
    IdentityReport {
        identity_id: id,
        formula: id.formula(),
        status: IdentityStatus::Skipped {
            reason: reason.to_string(),
        },
    }
}

/// Checks that `unit` is a two-sided unit of the algebra.
pub fn verify_two_sided_unit(a: &Algebra, unit: &Element) -> Result<(), AnalysisError> {
    for i in 0..a.dim() {
        let e = a.basis_element(i);
        let left = a.multiply(unit, &e).map_err(AnalysisError::Algebra)?;
        let right = a.multiply(&e, unit).map_err(AnalysisError::Algebra)?;
        if left != e || right != e {
            return Err(AnalysisError::NotAUnit { index: i });
        }
    }
    Ok(())
}

/// Runs the seven-identity suite for unital hom-associative carriers after
/// verifying both preconditions. For valid inputs every identity passes.
pub fn verify_unital_identities(
    h: &HomAlgebra,
    unit: &Element,
) -> Result<Vec<IdentityReport>, AnalysisError> {
    verify_two_sided_unit(h.algebra(), unit)?;
    if let CheckOutcome::Fail(w) = h.check_hom_associative() {
        return Err(AnalysisError::NotHomAssociative(w.indices));
    }
    Ok(run_unital_suite(h, Some(unit)))
}

/// Diagnostic mode: runs the same suite with no precondition checks, so
/// failure witnesses on non-unital carriers can be reproduced. Identities
/// that reference the unit are skipped when none is supplied.
pub fn verify_unital_identities_diagnostic(
    h: &HomAlgebra,
    unit: Option<&Element>,
) -> Vec<IdentityReport> {
    run_unital_suite(h, unit)
}

fn run_unital_suite(h: &HomAlgebra, unit: Option<&Element>) -> Vec<IdentityReport> {
    let a = h.algebra();
    let n = a.dim();
    let mul = |x: &Element, y: &Element| a.multiply(x, y).expect("dims agree");
    let al = |x: &Element| h.apply_alpha(x);

    let mut out = Vec::with_capacity(7);
    out.push(report(
        IdentityId::AlphaSwap,
        first_fail_pairs(n, a, |x, y| (mul(&al(x), y), mul(x, &al(y)))),
    ));
    match unit {
        Some(one) => {
            let alpha_one = al(one);
            out.push(report(
                IdentityId::AlphaViaUnit,
                first_fail_singles(n, a, |x| (mul(x, &alpha_one), al(x))),
            ));
        }
        None => out.push(skipped(IdentityId::AlphaViaUnit, "no unit supplied")),
    }
    out.push(report(
        IdentityId::AlphaProduct,
        first_fail_pairs(n, a, |x, y| (al(&mul(x, y)), mul(x, &al(y)))),
    ));
    out.push(report(
        IdentityId::ImageAssocLeft,
        first_fail_triples(n, a, |x, y, z| {
            (mul(&al(x), &mul(y, z)), mul(&mul(&al(x), y), z))
        }),
    ));
    out.push(report(
        IdentityId::ImageAssocMiddle,
        first_fail_triples(n, a, |x, y, z| {
            (mul(x, &mul(&al(y), z)), mul(&mul(x, &al(y)), z))
        }),
    ));
    out.push(report(
        IdentityId::ImageAssocRight,
        first_fail_triples(n, a, |x, y, z| {
            (mul(x, &mul(y, &al(z))), mul(&mul(x, y), &al(z)))
        }),
    ));
    out.push(report(
        IdentityId::AlphaAssociator,
        first_fail_triples(n, a, |x, y, z| {
            (al(&mul(x, &mul(y, z))), al(&mul(&mul(x, y), z)))
        }),
    ));
    out
}

/// The quotient of the carrier by the kernel of alpha.
#[derive(Clone, Debug)]
pub struct AssociativeFactor {
    pub factor: Algebra,
    /// Coordinates of the factor: maps carrier coordinates onto the
    /// non-pivot coordinates of the kernel basis. Shape factor_dim x dim.
    pub projection: Matrix,
    /// Section of the projection embedding factor coordinates at the
    /// non-pivot positions. Shape dim x factor_dim.
    pub lift: Matrix,
    pub induced_alpha: LinearMap,
}

impl AssociativeFactor {
    pub fn project(&self, x: &Element) -> Element {
        Element::new(self.projection.mul_vec(x.coords()))
    }
}

/// Quotient by the kernel of alpha, with induced product and twisting map.
///
/// The product descends exactly when the kernel is stable under
/// multiplication; the whole hom-ideal property (including alpha-stability)
/// is verified up front. The quotient of a unital hom-associative carrier is
/// always associative; carriers outside that class can produce a
/// well-defined but non-associative quotient, which is rejected.
pub fn associative_factor(h: &HomAlgebra) -> Result<AssociativeFactor, FactorError> {
    let a = h.algebra();
    let n = a.dim();
    let kernel = alpha_kernel(h);
    let m = n - kernel.dim();
    if m == 0 {
        return Err(FactorError::Degenerate);
    }
    if let CheckOutcome::Fail(w) = is_hom_ideal(h, &kernel) {
        return Err(FactorError::NotWellDefined(w));
    }

    let (_, pivots) = kernel.basis().rref();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();

    let field = a.field();
    let mut projection = Matrix::zero(field, m, n);
    for (row, &f) in free.iter().enumerate() {
        projection.set(row, f, field.one());
        for (kr, &pc) in pivots.iter().enumerate() {
            projection.set(row, pc, -kernel.basis().get(kr, f));
        }
    }
    let mut lift = Matrix::zero(field, n, m);
    for (col, &f) in free.iter().enumerate() {
        lift.set(f, col, field.one());
    }

    let mut sc = Vec::with_capacity(m * m * m);
    for x in 0..m {
        let ex = Element::new(lift.col(x));
        for y in 0..m {
            let ey = Element::new(lift.col(y));
            let prod = a.multiply(&ex, &ey).expect("dims agree");
            let down = projection.mul_vec(prod.coords());
            for k in 0..m {
                sc.push(down.entry(k).clone());
            }
        }
    }
    let factor = Algebra::new(field, m, sc).expect("validated tensor");
    let induced_alpha = LinearMap::new(projection.mul(h.alpha().matrix()).mul(&lift))
        .expect("square by construction");

    if let CheckOutcome::Fail(w) = factor.check_associative() {
        return Err(FactorError::QuotientNotAssociative(w.indices));
    }

    Ok(AssociativeFactor {
        factor,
        projection,
        lift,
        induced_alpha,
    })
}

/// Which sufficient condition for associativity fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssociativityClause {
    CodimAtMostOne,
    CodimTwoCommutative,
    CodimTwoAlphaInjectiveOnImage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub unit_line: Subspace,
    pub im_alpha: Subspace,
    pub u_complement: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    pub codim_im_alpha: usize,
    pub alpha_injective: bool,
    pub alpha_surjective: bool,
    pub alpha_injective_on_image: bool,
    pub commutative: bool,
    pub decomposition: Decomposition,
    pub predicted_associative: bool,
    pub triggering_clause: Option<AssociativityClause>,
    pub actual_associative: bool,
}

impl CodimReport {
    /// Consistency of the report with the structure theory:
    /// surjective implies injective, injective implies associative, and a
    /// fired clause implies associativity.
    pub fn implications_hold(&self) -> bool {
        (!self.alpha_surjective || self.alpha_injective)
            && (!self.alpha_injective || self.actual_associative)
            && (!self.predicted_associative || self.actual_associative)
    }
}

/// Codimension analysis of a unital hom-associative carrier: computes
/// codim Im(alpha), the line-image-complement decomposition, evaluates the
/// three sufficient associativity clauses and records the actual outcome.
pub fn codim_analysis(h: &HomAlgebra, unit: &Element) -> Result<CodimReport, AnalysisError> {
    verify_two_sided_unit(h.algebra(), unit)?;
    if let CheckOutcome::Fail(w) = h.check_hom_associative() {
        return Err(AnalysisError::NotHomAssociative(w.indices));
    }

    let a = h.algebra();
    let n = a.dim();
    let im = alpha_image(h);
    let ker = alpha_kernel(h);
    let codim = n - im.dim();
    let alpha_injective = ker.is_zero();
    let alpha_surjective = im.is_full();
    let alpha_injective_on_image = ker.independent_from(&im);
    let commutative = a.check_commutative().passed();

    let triggering_clause = if codim <= 1 {
        Some(AssociativityClause::CodimAtMostOne)
    } else if codim <= 2 && commutative {
        Some(AssociativityClause::CodimTwoCommutative)
    } else if codim <= 2 && alpha_injective_on_image {
        Some(AssociativityClause::CodimTwoAlphaInjectiveOnImage)
    } else {
        None
    };

    let unit_line = Subspace::span_of(unit.coords());
    let u_complement = unit_line.sum(&im).complement();
    let actual_associative = a.check_associative().passed();

    Ok(CodimReport {
        codim_im_alpha: codim,
        alpha_injective,
        alpha_surjective,
        alpha_injective_on_image,
        commutative,
        decomposition: Decomposition {
            unit_line,
            im_alpha: im,
            u_complement,
        },
        predicted_associative: triggering_clause.is_some(),
        triggering_clause,
        actual_associative,
    })
}

/// Every vector of K^n over a prime field, in odometer order. Test and
/// enumeration helper; panics on rational fields.
pub fn enumerate_vectors(field: crate::field::FieldSpec, dim: usize) -> Vec<Vector> {
    let p = field.modulus().expect("enumeration needs a finite field") as i64;
    let total = (p as u64).pow(dim as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0i64; dim];
    loop {
        out.push(Vector::from_i64(field, &digits));
        let mut pos = dim;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}
