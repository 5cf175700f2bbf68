//! Group specifications, closure enumeration of finite matrix groups, coset
//! representative systems, semidirect-structure verification, and symbolic
//! element construction.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::matrix::promote;
use crate::algebra::{Mat, Scalar, TrigPoly};
use crate::error::{Error, Result};

/// Involution residual tolerance for float entries; exact entries must match
/// the identity exactly.
const INVOLUTION_TOL: f64 = 1e-12;

/// Residual tolerance for `check_preserves_form` on float entries.
const FORM_TOL: f64 = 1e-10;

/// Tolerance used to detect coinciding coset representatives on the float
/// path.
const COSET_DISTINCT_TOL: f64 = 1e-10;

pub const DEFAULT_CLOSURE_CAP: usize = 4096;

/// Declarative description of a compact matrix group: a connected core made
/// of one shared rotation angle on disjoint 2x2 blocks times a finite
/// factor, extended by commuting involutions.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    /// Ambient dimension.
    pub dim: usize,
    /// Disjoint index pairs (i, j) carrying a shared 2x2 rotation block.
    /// Empty means the connected core is trivial (finite-only group).
    pub circle_blocks: Vec<(usize, usize)>,
    /// Generators of the finite factor of the core; may be empty.
    pub finite_factor: Vec<Mat<Scalar>>,
    /// Ordered commuting involutions extending the core.
    pub involutions: Vec<Mat<Scalar>>,
    /// Parameter the hyperbolic involution entries were instantiated from,
    /// if any; informational once the matrices are numeric.
    pub theta: Option<f64>,
    /// Optional +-1 signature of a bilinear form the group is expected to
    /// preserve; used by diagnostics, not by validation.
    pub signature: Option<Vec<i8>>,
}

impl GroupSpec {
    pub fn new(dim: usize) -> Self {
        GroupSpec {
            dim,
            circle_blocks: Vec::new(),
            finite_factor: Vec::new(),
            involutions: Vec::new(),
            theta: None,
            signature: None,
        }
    }

    /// Number of involutions `n`; the group has `2^n` cosets over its core.
    pub fn num_involutions(&self) -> usize {
        self.involutions.len()
    }

    /// Check the structural invariants: involutions square to the identity
    /// and commute pairwise, matrices have the ambient dimension, and circle
    /// blocks are disjoint in-range index pairs.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.dim];
        for &(i, j) in &self.circle_blocks {
            if i >= self.dim || j >= self.dim || i == j {
                return Err(Error::BadCircleBlocks(format!("pair ({i}, {j})")));
            }
            if seen[i] || seen[j] {
                return Err(Error::BadCircleBlocks(format!("index reused in pair ({i}, {j})")));
            }
            seen[i] = true;
            seen[j] = true;
        }
        for (idx, m) in self.finite_factor.iter().chain(&self.involutions).enumerate() {
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {idx} has dimension {}, spec has {}",
                    m.dim(),
                    self.dim
                )));
            }
        }
        for (idx, lam) in self.involutions.iter().enumerate() {
            check_involution(lam, idx)?;
        }
        for i in 0..self.involutions.len() {
            for j in (i + 1)..self.involutions.len() {
                let ab = self.involutions[i].mul(&self.involutions[j])?;
                let ba = self.involutions[j].mul(&self.involutions[i])?;
                let residual = ab.max_abs_diff(&ba);
                let exact = ab.is_exact() && ba.is_exact();
                let commute = if exact { ab == ba } else { residual < INVOLUTION_TOL };
                if !commute {
                    return Err(Error::NotCommuting { i, j, residual });
                }
            }
        }
        Ok(())
    }

    /// The rotation part of the core as a matrix of trigonometric
    /// polynomials: identity outside the circle blocks, degree-1 harmonics
    /// inside.
    pub fn circle_matrix(&self) -> Mat<TrigPoly> {
        let mut m = Mat::<TrigPoly>::identity(self.dim);
        for &(i, j) in &self.circle_blocks {
            m[(i, i)] = TrigPoly::cos_term(1, Scalar::one());
            m[(i, j)] = TrigPoly::sin_term(1, Scalar::from_int(-1));
            m[(j, i)] = TrigPoly::sin_term(1, Scalar::one());
            m[(j, j)] = TrigPoly::cos_term(1, Scalar::one());
        }
        m
    }

    /// Enumerate the finite factor of the core; the trivial group when no
    /// generators are given.
    pub fn finite_factor_group(&self, cap: usize) -> Result<FiniteGroup> {
        if self.finite_factor.is_empty() {
            return FiniteGroup::trivial(self.dim);
        }
        close_group(&self.finite_factor, cap)
    }

    /// The whole group as a finite closure; requires no circle blocks and
    /// exact entries everywhere.
    pub fn full_finite_group(&self, cap: usize) -> Result<FiniteGroup> {
        if !self.circle_blocks.is_empty() {
            return Err(Error::DimensionMismatch(
                "group has a continuous part; no finite enumeration exists".into(),
            ));
        }
        let gens: Vec<Mat<Scalar>> =
            self.finite_factor.iter().chain(&self.involutions).cloned().collect();
        if gens.is_empty() {
            return FiniteGroup::trivial(self.dim);
        }
        close_group(&gens, cap)
    }
}

fn check_involution(m: &Mat<Scalar>, index: usize) -> Result<()> {
    let sq = m.mul(m)?;
    let identity = Mat::identity(m.dim());
    let residual = sq.max_abs_diff(&identity);
    let ok = if sq.is_exact() { sq == identity } else { residual < INVOLUTION_TOL };
    if ok {
        Ok(())
    } else {
        Err(Error::NotInvolution { index, residual })
    }
}

/// Explicit element set of a finite matrix group with exact entries, closed
/// under product and inverse.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<Mat<Scalar>>,
    index: HashMap<Vec<BigRational>, usize>,
}

impl FiniteGroup {
    pub fn trivial(dim: usize) -> Result<Self> {
        let identity = Mat::identity(dim);
        let key = identity.exact_entries()?;
        let mut index = HashMap::new();
        index.insert(key, 0);
        Ok(FiniteGroup { elements: vec![identity], index })
    }

    pub fn elements(&self) -> &[Mat<Scalar>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn contains(&self, m: &Mat<Scalar>) -> bool {
        m.exact_entries().map(|k| self.index.contains_key(&k)).unwrap_or(false)
    }

    fn position(&self, m: &Mat<Scalar>) -> Option<usize> {
        m.exact_entries().ok().and_then(|k| self.index.get(&k).copied())
    }

    /// Index of the inverse of element `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.elements[i].inverse_exact().expect("group elements are invertible");
        self.position(&inv).expect("closed under inverse")
    }
}

/// Smallest product-closed set containing the generators and the identity.
///
/// Entries must be exact rationals; closure enumeration on floats is
/// refused. Fails once the element count would exceed `cap`.
pub fn close_group(generators: &[Mat<Scalar>], cap: usize) -> Result<FiniteGroup> {
    if generators.is_empty() {
        return Err(Error::DimensionMismatch("closure needs at least one generator".into()));
    }
    let dim = generators[0].dim();
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator {index} has dimension {}, expected {dim}",
                g.dim()
            )));
        }
        if !g.is_exact() {
            return Err(Error::InexactClosure);
        }
        if g.inverse_exact().is_err() {
            return Err(Error::NonInvertibleGenerator { index });
        }
    }

    let mut elements: Vec<Mat<Scalar>> = Vec::new();
    let mut index: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let insert = |elements: &mut Vec<Mat<Scalar>>,
                  index: &mut HashMap<Vec<BigRational>, usize>,
                  m: Mat<Scalar>|
     -> Result<bool> {
        let key = m.exact_entries()?;
        if index.contains_key(&key) {
            return Ok(false);
        }
        if elements.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        index.insert(key, elements.len());
        elements.push(m);
        Ok(true)
    };

    insert(&mut elements, &mut index, Mat::identity(dim))?;
    for g in generators {
        insert(&mut elements, &mut index, g.clone())?;
    }
    // worklist closure: multiply every known pair until nothing new appears
    let mut frontier = 0;
    while frontier < elements.len() {
        let a = elements[frontier].clone();
        let mut products = Vec::new();
        for b in &elements {
            products.push(a.mul(b)?);
            products.push(b.mul(&a)?);
        }
        for p in products {
            insert(&mut elements, &mut index, p)?;
        }
        frontier += 1;
    }
    Ok(FiniteGroup { elements, index })
}

/// The `2^n` products `lambda_1^{i_1} ... lambda_n^{i_n}` indexed by bit
/// vectors in lexicographic order, `i_1` most significant.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    reps: Vec<Mat<Scalar>>,
    num_involutions: usize,
}

impl CosetSystem {
    pub fn reps(&self) -> &[Mat<Scalar>] {
        &self.reps
    }

    pub fn num_involutions(&self) -> usize {
        self.num_involutions
    }

    /// Bit vector of the representative at `position`, `i_1` first.
    pub fn bits(&self, position: usize) -> Vec<bool> {
        let n = self.num_involutions;
        (0..n).map(|k| (position >> (n - 1 - k)) & 1 == 1).collect()
    }
}

/// Build the coset representative system for the given commuting
/// involutions. Duplicate representatives signal dependent involutions.
pub fn coset_reps(involutions: &[Mat<Scalar>]) -> Result<CosetSystem> {
    for (idx, lam) in involutions.iter().enumerate() {
        check_involution(lam, idx)?;
    }
    let n = involutions.len();
    let dim = involutions.first().map(|m| m.dim()).unwrap_or(1);
    let mut reps = Vec::with_capacity(1 << n);
    for pos in 0..(1usize << n) {
        let mut rep = Mat::<Scalar>::identity(dim);
        for (k, lam) in involutions.iter().enumerate() {
            if (pos >> (n - 1 - k)) & 1 == 1 {
                rep = rep.mul(lam)?;
            }
        }
        reps.push(rep);
    }
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let exact = reps[i].is_exact() && reps[j].is_exact();
            let same = if exact {
                reps[i] == reps[j]
            } else {
                reps[i].max_abs_diff(&reps[j]) < COSET_DISTINCT_TOL
            };
            if same {
                return Err(Error::DuplicateCosetRep { i, j });
            }
        }
    }
    Ok(CosetSystem { reps, num_involutions: n })
}

/// Outcome of the semidirect-structure checks on finite instantiations.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    /// The core subgroup is normal in the full closure.
    pub sigma_normal: bool,
    /// Every prefix extension of the core by the first i involutions is
    /// normal in the full closure.
    pub delta_normal: bool,
    /// The set product of core and involution span covers the closure, with
    /// the involutions commuting and lying outside the core.
    pub product_covers: bool,
    /// Core and involution span meet only in the identity.
    pub intersections_trivial: bool,
    pub overall: bool,
}

impl DecompositionReport {
    /// Names of the failing flags, for diagnostics.
    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.sigma_normal {
            out.push("sigma_normal");
        }
        if !self.delta_normal {
            out.push("delta_normal");
        }
        if !self.product_covers {
            out.push("product_covers");
        }
        if !self.intersections_trivial {
            out.push("intersections_trivial");
        }
        out
    }
}

fn is_normal(subgroup: &FiniteGroup, group: &FiniteGroup) -> Result<bool> {
    for (gi, g) in group.elements().iter().enumerate() {
        let g_inv = &group.elements()[group.inverse_index(gi)];
        for s in subgroup.elements() {
            let conj = g.mul(s)?.mul(g_inv)?;
            if !subgroup.contains(&conj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Check a finite instantiation of the semidirect decomposition
/// `G = core x| (Z2 x ... x Z2)`: core normality, covering product, trivial
/// intersection, and normality of every prefix extension.
pub fn verify_semidirect(
    sigma_gens: &[Mat<Scalar>],
    gammas: &[Mat<Scalar>],
    cap: usize,
) -> Result<DecompositionReport> {
    if gammas.is_empty() {
        return Err(Error::DimensionMismatch("no involutions to verify against".into()));
    }
    let dim = gammas[0].dim();
    for (index, g) in gammas.iter().enumerate() {
        if !g.is_exact() {
            return Err(Error::InexactClosure);
        }
        check_involution(g, index)?;
    }

    let sigma = if sigma_gens.is_empty() {
        FiniteGroup::trivial(dim)?
    } else {
        close_group(sigma_gens, cap)?
    };
    let all: Vec<Mat<Scalar>> = sigma_gens.iter().chain(gammas).cloned().collect();
    let group = close_group(&all, cap)?;
    let span = close_group(gammas, cap)?;

    let sigma_normal = is_normal(&sigma, &group)?;

    let mut commuting = true;
    for i in 0..gammas.len() {
        for j in (i + 1)..gammas.len() {
            if gammas[i].mul(&gammas[j])? != gammas[j].mul(&gammas[i])? {
                commuting = false;
            }
        }
    }
    let outside = gammas.iter().all(|g| !sigma.contains(g));
    let mut covered = 0usize;
    let mut seen: HashMap<Vec<BigRational>, ()> = HashMap::new();
    for s in sigma.elements() {
        for h in span.elements() {
            let key = s.mul(h)?.exact_entries()?;
            if seen.insert(key, ()).is_none() {
                covered += 1;
            }
        }
    }
    let product_covers = commuting && outside && covered == group.order();

    let intersections_trivial = sigma.elements().iter().filter(|s| span.contains(s)).count() == 1;

    let mut delta_normal = true;
    for prefix in 1..=gammas.len() {
        let gens: Vec<Mat<Scalar>> = sigma_gens.iter().chain(&gammas[..prefix]).cloned().collect();
        let delta = close_group(&gens, cap)?;
        if !is_normal(&delta, &group)? {
            delta_normal = false;
            break;
        }
    }

    let overall = sigma_normal && delta_normal && product_covers && intersections_trivial;
    Ok(DecompositionReport {
        sigma_normal,
        delta_normal,
        product_covers,
        intersections_trivial,
        overall,
    })
}

/// Assemble the group element `lambda^i * circle(phi) * finite_elem` as a
/// matrix of trigonometric polynomials, ready for series expansion.
pub fn build_element(
    spec: &GroupSpec,
    coset_index: &[bool],
    finite_elem: Option<&Mat<Scalar>>,
) -> Result<Mat<TrigPoly>> {
    let n = spec.num_involutions();
    if coset_index.len() != n {
        return Err(Error::CosetIndexOutOfRange { got: coset_index.len(), expected: n });
    }
    let mut rep = Mat::<Scalar>::identity(spec.dim);
    for (lam, &bit) in spec.involutions.iter().zip(coset_index) {
        if bit {
            rep = rep.mul(lam)?;
        }
    }
    let mut out = promote(&rep).mul(&spec.circle_matrix())?;
    if let Some(g) = finite_elem {
        out = out.mul(&promote(g))?;
    }
    Ok(out)
}

/// Check `M^T J M = J` for `J = diag(signature)`. Returns the verdict and
/// the largest residual entry; exact entries must satisfy the identity
/// exactly.
pub fn check_preserves_form(m: &Mat<Scalar>, signature: &[i8]) -> Result<(bool, f64)> {
    if m.dim() != signature.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix dimension {} vs signature length {}",
            m.dim(),
            signature.len()
        )));
    }
    let j = Mat::diag(&signature.iter().map(|&s| s as i64).collect::<Vec<_>>());
    let g = m.transpose().mul(&j)?.mul(m)?;
    let residual = g.max_abs_diff(&j);
    let preserves = if g.is_exact() && j.is_exact() { g == j } else { residual < FORM_TOL };
    Ok((preserves, residual))
}

/// The standard pair of commuting hyperbolic involutions on the last two of
/// four coordinates, instantiated numerically at `theta`.
pub fn hyperbolic_involutions(theta: f64) -> (Mat<Scalar>, Mat<Scalar>) {
    let (c, s) = (theta.cosh(), theta.sinh());
    let mut l1 = Mat::<Scalar>::identity(4);
    l1[(2, 2)] = Scalar::from_f64(c);
    l1[(2, 3)] = Scalar::from_f64(s);
    l1[(3, 2)] = Scalar::from_f64(-s);
    l1[(3, 3)] = Scalar::from_f64(-c);
    let mut l2 = Mat::<Scalar>::identity(4);
    l2[(2, 2)] = Scalar::from_f64(-c);
    l2[(2, 3)] = Scalar::from_f64(-s);
    l2[(3, 2)] = Scalar::from_f64(s);
    l2[(3, 3)] = Scalar::from_f64(c);
    (l1, l2)
}

/// The group description used throughout the built-in examples: one rotation
/// block on the first two coordinates and the hyperbolic involution pair on
/// the last two, preserving the (+,+,+,-) form.
pub fn lorentz_subgroup_spec(theta: f64) -> GroupSpec {
    let (l1, l2) = hyperbolic_involutions(theta);
    GroupSpec {
        dim: 4,
        circle_blocks: vec![(0, 1)],
        finite_factor: Vec::new(),
        involutions: vec![l1, l2],
        theta: Some(theta),
        signature: Some(vec![1, 1, 1, -1]),
    }
}

/// Rotation by 90 degrees in the plane, as an exact matrix.
pub fn rotation90() -> Mat<Scalar> {
    Mat::from_int_rows(&[&[0, -1], &[1, 0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_sign_flip() {
        let g = close_group(&[Mat::diag(&[-1, -1])], 16).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.contains(&Mat::identity(2)));
    }

    #[test]
    fn closure_of_quarter_rotation_is_cyclic_four() {
        let g = close_group(&[rotation90()], 16).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn closure_of_rotation_and_reflection_is_dihedral_eight() {
        let g = close_group(&[rotation90(), Mat::diag(&[1, -1])], 64).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn closure_is_verified_closed() {
        let g = close_group(&[rotation90(), Mat::diag(&[1, -1])], 64).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert!(g.contains(&a.mul(b).unwrap()));
            }
        }
    }

    #[test]
    fn closure_cap_and_invertibility_errors() {
        // a shear generates an infinite group
        let shear = Mat::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(close_group(&[shear], 100), Err(Error::CapExceeded { cap: 100 })));
        let singular = Mat::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            close_group(&[singular], 16),
            Err(Error::NonInvertibleGenerator { index: 0 })
        ));
    }

    #[test]
    fn closure_refuses_floats() {
        let mut m = Mat::<Scalar>::identity(2);
        m[(0, 0)] = Scalar::from_f64(-1.0);
        assert!(matches!(close_group(&[m], 16), Err(Error::InexactClosure)));
    }

    #[test]
    fn coset_reps_single_involution() {
        let lam = Mat::diag(&[1, -1]);
        let cs = coset_reps(std::slice::from_ref(&lam)).unwrap();
        assert_eq!(cs.reps().len(), 2);
        assert_eq!(cs.reps()[0], Mat::identity(2));
        assert_eq!(cs.reps()[1], lam);
    }

    #[test]
    fn coset_reps_lex_order_two_involutions() {
        let l1 = Mat::diag(&[-1, 1, 1]);
        let l2 = Mat::diag(&[1, -1, 1]);
        let cs = coset_reps(&[l1.clone(), l2.clone()]).unwrap();
        assert_eq!(cs.reps()[0], Mat::identity(3));
        assert_eq!(cs.reps()[1], l2);
        assert_eq!(cs.reps()[2], l1);
        assert_eq!(cs.reps()[3], l1.mul(&l2).unwrap());
        assert_eq!(cs.bits(1), vec![false, true]);
        assert_eq!(cs.bits(2), vec![true, false]);
    }

    #[test]
    fn hyperbolic_pair_product_is_minus_identity_on_lower_block() {
        let (l1, l2) = hyperbolic_involutions(1.0);
        let cs = coset_reps(&[l1, l2]).unwrap();
        let prod = &cs.reps()[3];
        let mut want = Mat::<Scalar>::identity(4);
        want[(2, 2)] = Scalar::from_int(-1);
        want[(3, 3)] = Scalar::from_int(-1);
        assert!(prod.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn duplicate_reps_are_rejected() {
        let lam = Mat::diag(&[1, -1]);
        assert!(matches!(coset_reps(&[lam.clone(), lam]), Err(Error::DuplicateCosetRep { .. })));
    }

    #[test]
    fn non_involution_is_rejected() {
        let m = Mat::diag(&[2, 1]);
        assert!(matches!(coset_reps(&[m]), Err(Error::NotInvolution { index: 0, .. })));
    }

    #[test]
    fn semidirect_sign_diagonal_example() {
        let sigma = vec![Mat::diag(&[-1, -1, 1])];
        let gammas = vec![Mat::diag(&[1, 1, -1]), Mat::diag(&[1, -1, 1])];
        let report = verify_semidirect(&sigma, &gammas, 64).unwrap();
        assert!(report.overall, "flags: {report:?}");
        // the full closure is the sign-diagonal group of order 8, core index 4
        let all: Vec<_> = sigma.iter().chain(&gammas).cloned().collect();
        assert_eq!(close_group(&all, 64).unwrap().order(), 8);
        assert_eq!(close_group(&sigma, 64).unwrap().order(), 2);
    }

    #[test]
    fn semidirect_trivial_core_degenerate_case() {
        let report = verify_semidirect(&[], &[Mat::diag(&[-1, 1])], 16).unwrap();
        assert!(report.overall);
    }

    #[test]
    fn semidirect_detects_nontrivial_intersection() {
        // core generated by a quarter rotation; the two reflections multiply
        // to the half turn, which lies in the core
        let sigma = vec![rotation90()];
        let gammas = vec![Mat::diag(&[1, -1]), Mat::diag(&[-1, 1])];
        let report = verify_semidirect(&sigma, &gammas, 64).unwrap();
        assert!(!report.intersections_trivial);
        assert!(!report.overall);
        assert_eq!(report.failing(), vec!["intersections_trivial"]);
    }

    #[test]
    fn semidirect_detects_broken_commutativity() {
        let sigma = vec![Mat::diag(&[-1, -1, 1])];
        let swap_xz = Mat::from_int_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let gammas = vec![Mat::diag(&[1, 1, -1]), swap_xz];
        let report = verify_semidirect(&sigma, &gammas, 256).unwrap();
        assert!(!report.product_covers);
        assert!(!report.overall);
    }

    #[test]
    fn build_element_blocks() {
        let spec = lorentz_subgroup_spec(1.0);
        // identity coset: rotation block on the first two coordinates only
        let m = build_element(&spec, &[false, false], None).unwrap();
        assert_eq!(m[(0, 0)], TrigPoly::cos_term(1, Scalar::one()));
        assert_eq!(m[(0, 1)], TrigPoly::sin_term(1, Scalar::from_int(-1)));
        assert_eq!(m[(1, 0)], TrigPoly::sin_term(1, Scalar::one()));
        assert_eq!(m[(2, 2)], TrigPoly::one());
        assert_eq!(m[(3, 3)], TrigPoly::one());
        assert_eq!(m[(2, 3)], TrigPoly::zero());

        // first involution coset: hyperbolic block appears on the last two
        let m = build_element(&spec, &[true, false], None).unwrap();
        let c = 1.0f64.cosh();
        assert!((m[(2, 2)].eval(0.0) - c).abs() < 1e-15);
        assert!((m[(3, 3)].eval(0.0) + c).abs() < 1e-15);
        assert_eq!(m[(0, 0)], TrigPoly::cos_term(1, Scalar::one()));
    }

    #[test]
    fn build_element_empty_spec_is_identity() {
        let spec = GroupSpec::new(3);
        let m = build_element(&spec, &[], None).unwrap();
        assert_eq!(m, Mat::<TrigPoly>::identity(3));
    }

    #[test]
    fn build_element_rejects_wrong_index_length() {
        let spec = lorentz_subgroup_spec(1.0);
        assert!(matches!(
            build_element(&spec, &[true], None),
            Err(Error::CosetIndexOutOfRange { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn build_element_at_zero_angle_matches_reps() {
        let spec = lorentz_subgroup_spec(0.7);
        let cs = coset_reps(&spec.involutions).unwrap();
        for pos in 0..4 {
            let bits = cs.bits(pos);
            let m = build_element(&spec, &bits, None).unwrap().eval(0.0);
            assert!(m.max_abs_diff(&cs.reps()[pos]) < 1e-15);
        }
    }

    #[test]
    fn form_preservation() {
        let sig = [1i8, 1, 1, -1];
        let (l1, _) = hyperbolic_involutions(0.7);
        let (ok, res) = check_preserves_form(&l1, &sig).unwrap();
        assert!(ok, "residual {res}");
        let (ok, _) = check_preserves_form(&Mat::diag(&[2, 1, 1, 1]), &sig).unwrap();
        assert!(!ok);
        let (ok, res) = check_preserves_form(&Mat::identity(4), &sig).unwrap();
        assert!(ok);
        assert_eq!(res, 0.0);
    }

    #[test]
    fn all_reps_preserve_the_form() {
        let spec = lorentz_subgroup_spec(1.3);
        let cs = coset_reps(&spec.involutions).unwrap();
        for rep in cs.reps() {
            let (ok, res) = check_preserves_form(rep, &[1, 1, 1, -1]).unwrap();
            assert!(ok, "residual {res}");
        }
    }

    #[test]
    fn spec_validation_errors() {
        let mut spec = lorentz_subgroup_spec(1.0);
        spec.involutions[1] = Mat::diag(&[1, 1, 2, 1]).floatify();
        assert!(matches!(spec.validate(), Err(Error::NotInvolution { index: 1, .. })));

        let mut spec = GroupSpec::new(4);
        spec.circle_blocks = vec![(0, 1), (1, 2)];
        assert!(matches!(spec.validate(), Err(Error::BadCircleBlocks(_))));

        assert!(lorentz_subgroup_spec(2.5).validate().is_ok());
    }

    #[test]
    fn coset_reps_squares_stay_in_the_system() {
        // instance-wise quotient group axioms: rep * rep lands on a rep
        let spec = lorentz_subgroup_spec(1.0);
        let cs = coset_reps(&spec.involutions).unwrap();
        for rep in cs.reps() {
            let sq = rep.mul(rep).unwrap();
            let hit = cs.reps().iter().any(|r| sq.max_abs_diff(r) < 1e-9);
            assert!(hit);
        }
    }
}
