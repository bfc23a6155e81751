//! A degree-truncated carrier: polynomials of degree < d paired with a
//! two-dimensional component carrying a non-associative product, with the
//! twisting map (a, u) -> (X*a, 0).
//!
//! The honest object is infinite-dimensional, so the truncation makes no
//! wrap-around: products or twists that would leave the degree bound are
//! rejected at check time, and every verification reports how many basis
//! tuples were actually checked versus skipped. The kernel of the twisting
//! map is computed on the subspace where the map stays in bounds.

use serde::Serialize;

use crate::algebra::{CheckOutcome, Element, PairWitness, TripleWitness};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Subspace, Vector};

pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// Outcome of a verification that could only look at in-bound tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedCheck {
    pub checked_tuples: usize,
    pub skipped_tuples: usize,
    pub outcome: CheckOutcome<TripleWitness>,
}

impl BoundedCheck {
    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }
}

/// Pair variant of [`BoundedCheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedPairCheck {
    pub checked_tuples: usize,
    pub skipped_tuples: usize,
    pub outcome: CheckOutcome<PairWitness>,
}

impl BoundedPairCheck {
    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }
}

/// The fixture carrier at a fixed degree bound. Basis: X^0 .. X^(d-1),
/// then u1, u2; dimension d + 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedFixture {
    field: FieldSpec,
    bound: usize,
}

impl TruncatedFixture {
    pub fn new(field: FieldSpec, bound: usize) -> TruncatedFixture {
        assert!(bound >= 2, "degree bound must be at least 2");
        TruncatedFixture { field, bound }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.bound + 2
    }

    fn u1(&self) -> usize {
        self.bound
    }

    fn u2(&self) -> usize {
        self.bound + 1
    }

    pub fn basis_name(&self, i: usize) -> String {
        if i == self.u1() {
            "u1".to_string()
        } else if i == self.u2() {
            "u2".to_string()
        } else if i == 0 {
            "1".to_string()
        } else if i == 1 {
            "X".to_string()
        } else {
            format!("X^{i}")
        }
    }

    /// The two-sided unit (the constant polynomial 1).
    pub fn unit(&self) -> Element {
        Element::basis(self.field, self.dim(), 0)
    }

    fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    /// e_i * e_j, or None when the polynomial degree leaves the bound.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<Element> {
        let n = self.dim();
        let u1 = self.u1();
        let u2 = self.u2();
        let poly = |d: usize| d < self.bound;
        Some(match (i, j) {
            (a, b) if poly(a) && poly(b) => {
                if a + b < self.bound {
                    self.basis_element(a + b)
                } else {
                    return None;
                }
            }
            // a * u = a(0) u: only the constant term survives
            (a, b) if poly(a) => {
                debug_assert!(b == u1 || b == u2);
                if a == 0 {
                    self.basis_element(b)
                } else {
                    Element::zero(self.field, n)
                }
            }
            (a, b) if poly(b) => {
                if b == 0 {
                    self.basis_element(a)
                } else {
                    Element::zero(self.field, n)
                }
            }
            // the non-associative product on the u-component:
            // u1 u1 = u2, u1 u2 = u1, u2 u1 = u2 u2 = 0
            (a, b) if a == u1 && b == u1 => self.basis_element(u2),
            (a, b) if a == u1 && b == u2 => self.basis_element(u1),
            _ => Element::zero(self.field, n),
        })
    }

    /// alpha on basis vectors: X^i -> X^(i+1) (None at the top degree),
    /// u -> 0.
    pub fn alpha_basis(&self, i: usize) -> Option<Element> {
        if i < self.bound {
            if i + 1 < self.bound {
                Some(self.basis_element(i + 1))
            } else {
                None
            }
        } else {
            Some(Element::zero(self.field, self.dim()))
        }
    }

    /// Bilinear extension; None if any contributing basis product overflows.
    pub fn multiply(&self, x: &Element, y: &Element) -> Option<Element> {
        let n = self.dim();
        let mut out = Element::zero(self.field, n);
        for i in 0..n {
            let xi = x.coords().entry(i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                let yj = y.coords().entry(j);
                if yj.is_zero() {
                    continue;
                }
                let prod = self.basis_product(i, j)?;
                out = out.add(&prod.scale(&(xi * yj)));
            }
        }
        Some(out)
    }

    /// Linear extension of alpha; None if the top in-bound degree occurs.
    pub fn alpha(&self, x: &Element) -> Option<Element> {
        let n = self.dim();
        let mut out = Element::zero(self.field, n);
        for i in 0..n {
            let xi = x.coords().entry(i);
            if xi.is_zero() {
                continue;
            }
            out = out.add(&self.alpha_basis(i)?.scale(xi));
        }
        Some(out)
    }

    /// Kernel of alpha restricted to the subspace where it stays in bounds
    /// (everything except the top polynomial degree), reported in ambient
    /// coordinates. For this carrier it is exactly the u-component.
    pub fn alpha_kernel(&self) -> Subspace {
        let n = self.dim();
        let domain: Vec<usize> = (0..n).filter(|&i| i + 1 != self.bound).collect();
        let mut m = Matrix::zero(self.field, n, domain.len());
        for (col, &i) in domain.iter().enumerate() {
            let image = self.alpha_basis(i).expect("domain avoids the top degree");
            for row in 0..n {
                m.set(row, col, image.coords().entry(row).clone());
            }
        }
        let kernel = m.kernel_basis();
        let rows: Vec<Vector> = kernel
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut ambient = Vector::zero(self.field, n);
                for (col, &i) in domain.iter().enumerate() {
                    ambient.set(i, v.entry(col).clone());
                }
                ambient
            })
            .collect();
        Subspace::from_vectors(self.field, n, &rows)
    }

    /// Verifies the unit on all basis vectors (always in bounds).
    pub fn unit_holds(&self) -> bool {
        let unit = self.unit();
        (0..self.dim()).all(|i| {
            let e = self.basis_element(i);
            self.multiply(&unit, &e) == Some(e.clone()) && self.multiply(&e, &unit) == Some(e)
        })
    }

    /// Hom-associativity over all basis triples whose evaluations stay in
    /// bounds on both sides.
    pub fn check_hom_associative_bounded(&self) -> BoundedCheck {
        self.bounded_triples(|i, j, k| {
            let lhs = self
                .alpha_basis(i)
                .and_then(|ai| self.basis_product(j, k).and_then(|jk| self.multiply(&ai, &jk)));
            let rhs = self
                .alpha_basis(k)
                .and_then(|ak| self.basis_product(i, j).and_then(|ij| self.multiply(&ij, &ak)));
            (lhs, rhs)
        })
    }

    /// Associativity over in-bound basis triples; fails with a witness on
    /// the u-component.
    pub fn check_associative_bounded(&self) -> BoundedCheck {
        self.bounded_triples(|i, j, k| {
            let lhs = self
                .basis_product(i, j)
                .and_then(|ij| self.multiply(&ij, &self.basis_element(k)));
            let rhs = self
                .basis_product(j, k)
                .and_then(|jk| self.multiply(&self.basis_element(i), &jk));
            (lhs, rhs)
        })
    }

    /// Commutativity over basis pairs where both orders stay in bounds;
    /// fails on the u-component.
    pub fn check_commutative_bounded(&self) -> BoundedPairCheck {
        let n = self.dim();
        let mut checked = 0usize;
        let mut skipped = 0usize;
        for i in 0..n {
            for j in 0..i {
                match (self.basis_product(i, j), self.basis_product(j, i)) {
                    (Some(lhs), Some(rhs)) => {
                        checked += 1;
                        if lhs != rhs {
                            return BoundedPairCheck {
                                checked_tuples: checked,
                                skipped_tuples: skipped,
                                outcome: CheckOutcome::Fail(PairWitness {
                                    indices: (i, j),
                                    lhs,
                                    rhs,
                                }),
                            };
                        }
                    }
                    _ => skipped += 1,
                }
            }
        }
        BoundedPairCheck {
            checked_tuples: checked,
            skipped_tuples: skipped,
            outcome: CheckOutcome::Pass,
        }
    }

    /// Associativity of the quotient by the u-component (the truncated
    /// polynomial part), checked on in-bound triples.
    pub fn check_factor_associative_bounded(&self) -> BoundedCheck {
        let mut checked = 0usize;
        let mut skipped = 0usize;
        for a in 0..self.bound {
            for b in 0..self.bound {
                for c in 0..self.bound {
                    if a + b < self.bound && b + c < self.bound && a + b + c < self.bound {
                        checked += 1;
                        // both sides are X^(a+b+c); nothing can differ, but
                        // evaluate honestly through the product
                        let lhs = self
                            .basis_product(a, b)
                            .and_then(|ab| self.multiply(&ab, &self.basis_element(c)));
                        let rhs = self
                            .basis_product(b, c)
                            .and_then(|bc| self.multiply(&self.basis_element(a), &bc));
                        if lhs != rhs {
                            return BoundedCheck {
                                checked_tuples: checked,
                                skipped_tuples: skipped,
                                outcome: CheckOutcome::Fail(TripleWitness {
                                    indices: (a, b, c),
                                    lhs: lhs.unwrap_or_else(|| Element::zero(self.field, self.dim())),
                                    rhs: rhs.unwrap_or_else(|| Element::zero(self.field, self.dim())),
                                }),
                            };
                        }
                    } else {
                        skipped += 1;
                    }
                }
            }
        }
        BoundedCheck {
            checked_tuples: checked,
            skipped_tuples: skipped,
            outcome: CheckOutcome::Pass,
        }
    }

    fn bounded_triples(
        &self,
        eval: impl Fn(usize, usize, usize) -> (Option<Element>, Option<Element>),
    ) -> BoundedCheck {
        let n = self.dim();
        let mut checked = 0usize;
        let mut skipped = 0usize;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    match eval(i, j, k) {
                        (Some(lhs), Some(rhs)) => {
                            checked += 1;
                            if lhs != rhs {
                                return BoundedCheck {
                                    checked_tuples: checked,
                                    skipped_tuples: skipped,
                                    outcome: CheckOutcome::Fail(TripleWitness {
                                        indices: (i, j, k),
                                        lhs,
                                        rhs,
                                    }),
                                };
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
        }
        BoundedCheck {
            checked_tuples: checked,
            skipped_tuples: skipped,
            outcome: CheckOutcome::Pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> TruncatedFixture {
        TruncatedFixture::new(FieldSpec::Rationals, DEFAULT_DEGREE_BOUND)
    }

    #[test]
    fn dimensions_and_names() {
        let f = fixture();
        assert_eq!(f.dim(), 8);
        assert_eq!(f.basis_name(0), "1");
        assert_eq!(f.basis_name(1), "X");
        assert_eq!(f.basis_name(5), "X^5");
        assert_eq!(f.basis_name(6), "u1");
        assert_eq!(f.basis_name(7), "u2");
    }

    #[test]
    fn kernel_is_the_u_component() {
        let f = fixture();
        let k = f.alpha_kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&Vector::standard_basis(f.field(), f.dim(), 6)));
        assert!(k.contains(&Vector::standard_basis(f.field(), f.dim(), 7)));
    }

    #[test]
    fn unit_holds_on_all_basis_vectors() {
        assert!(fixture().unit_holds());
    }

    #[test]
    fn hom_associative_on_in_bound_triples() {
        let report = fixture().check_hom_associative_bounded();
        assert!(report.passed());
        assert!(report.checked_tuples > 0);
        assert!(report.skipped_tuples > 0);
    }

    #[test]
    fn not_associative_with_u_witness() {
        let report = fixture().check_associative_bounded();
        let w = match &report.outcome {
            CheckOutcome::Fail(w) => w,
            CheckOutcome::Pass => panic!("fixture must be non-associative"),
        };
        // the failure lives entirely in the u-component
        assert!(w.indices.0 >= 6 && w.indices.1 >= 6 && w.indices.2 >= 6);
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn factor_polynomial_part_is_associative() {
        let report = fixture().check_factor_associative_bounded();
        assert!(report.passed());
        assert!(report.checked_tuples > 0);
    }

    #[test]
    fn top_degree_products_are_rejected_not_wrapped() {
        let f = fixture();
        assert_eq!(f.basis_product(3, 3), None);
        assert_eq!(f.basis_product(5, 1), None);
        assert!(f.basis_product(2, 3).is_some());
        assert_eq!(f.alpha_basis(5), None);
    }
}
