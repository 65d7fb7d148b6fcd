//! Hypergroup pairs (H, H0): restriction and induction of normalized
//! characters, the admissibility test, and the twisted hypergroup on the
//! disjoint union of the two duals with mixing parameter q.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num::traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{FiniteHypergroup, Slice};
use crate::characters::{
    self, align_characters_with_table, decompose_convex, NormalizedCharacter, Representation,
};
use crate::error::{HyperError, Result};
use crate::groups::GroupData;
use crate::linalg;
use crate::scalar::{format_rational, one, rat_int, to_f64, zero, Complex64, Scalar, SnapConfig};

/// A hypergroup with a distinguished subhypergroup and full dual data on
/// both sides. `small_reps` carries the subhypergroup irreps as matrices,
/// which induction needs; `dual_small[k]` is the normalized character of
/// `small_reps[k]`.
#[derive(Debug, Clone)]
pub struct HypergroupPair {
    pub big: FiniteHypergroup,
    pub small: FiniteHypergroup,
    pub injection: Vec<usize>,
    pub dual_big: Vec<NormalizedCharacter>,
    pub dual_small: Vec<NormalizedCharacter>,
    pub small_reps: Vec<Representation>,
    pub trivial_small: usize,
    pub cfg: SnapConfig,
}

impl HypergroupPair {
    pub fn new(
        big: FiniteHypergroup,
        small: FiniteHypergroup,
        injection: Vec<usize>,
        dual_big: Vec<NormalizedCharacter>,
        dual_small: Vec<NormalizedCharacter>,
        small_reps: Vec<Representation>,
        cfg: SnapConfig,
    ) -> Result<Self> {
        let m = small.order();
        if injection.len() != m {
            return Err(HyperError::DimensionMismatch(
                "injection length differs from subhypergroup order".into(),
            ));
        }
        if injection[small.identity()] != big.identity() {
            return Err(HyperError::Malformed(
                "injection does not preserve the identity".into(),
            ));
        }
        for i in 0..m {
            if big.involution(injection[i]) != injection[small.involution(i)] {
                return Err(HyperError::Malformed(format!(
                    "injection does not intertwine the involution at element {i}"
                )));
            }
            for j in 0..m {
                let mut image = Slice::new();
                for (&k, v) in small.slice(i, j) {
                    image.insert(injection[k], v.clone());
                }
                if &image != big.slice(injection[i], injection[j]) {
                    return Err(HyperError::Malformed(format!(
                        "injection is not a homomorphism at the product of elements {i},{j}"
                    )));
                }
            }
        }
        if dual_small.len() != small_reps.len() {
            return Err(HyperError::DimensionMismatch(
                "one matrix representation per small-dual character required".into(),
            ));
        }
        for (k, (c, r)) in dual_small.iter().zip(&small_reps).enumerate() {
            if c.dim != r.dim() {
                return Err(HyperError::DimensionMismatch(format!(
                    "small character {k} and its representation disagree on dimension"
                )));
            }
            for x in 0..m {
                if (r.trace(x) / r.dim() as f64 - c.values[x]).norm() > 1e-8 {
                    return Err(HyperError::Malformed(format!(
                        "small character {k} is not the normalized trace of its representation"
                    )));
                }
            }
        }
        let trivial_small = dual_small
            .iter()
            .position(|c| c.is_trivial(1e-8))
            .ok_or_else(|| HyperError::Malformed("trivial small character missing".into()))?;
        Ok(HypergroupPair {
            big,
            small,
            injection,
            dual_big,
            dual_small,
            small_reps,
            trivial_small,
            cfg,
        })
    }

    /// Pullback of a big-dual character along the injection.
    pub fn restricted_values(&self, pi: usize) -> Vec<Complex64> {
        self.injection
            .iter()
            .map(|&x| self.dual_big[pi].values[x])
            .collect()
    }

    /// res ch(pi) as a convex combination over the small dual.
    pub fn restrict_character(&self, pi: usize) -> Result<Vec<Scalar>> {
        decompose_convex(&self.restricted_values(pi), &self.dual_small, &self.cfg)
    }

    /// Product of two small-dual characters, as small-dual coefficients.
    pub fn small_product(&self, ti: usize, tj: usize) -> Result<Vec<Scalar>> {
        let values: Vec<Complex64> = (0..self.small.order())
            .map(|s| self.dual_small[ti].values[s] * self.dual_small[tj].values[s])
            .collect();
        decompose_convex(&values, &self.dual_small, &self.cfg)
    }

    /// (res ch(pi)) * ch(tau), the bullet-side result of mixing rules.
    pub fn mixed_product(&self, pi: usize, tau: usize) -> Result<Vec<Scalar>> {
        let res = self.restricted_values(pi);
        let values: Vec<Complex64> = (0..self.small.order())
            .map(|s| res[s] * self.dual_small[tau].values[s])
            .collect();
        decompose_convex(&values, &self.dual_small, &self.cfg)
    }

    /// The induced representation of `small_reps[tau]`; see
    /// [`induce_representation`].
    pub fn induced_representation(&self, tau: usize) -> Result<Representation> {
        induce_representation(&self.big, &self.injection, &self.small_reps[tau])
    }

    /// Multiplicities of each big-dual constituent in ind(tau), from an exact
    /// decomposition of the induced representation's trace.
    pub fn induced_multiplicities(&self, tau: usize) -> Result<Vec<u64>> {
        let rep = self.induced_representation(tau)?;
        let trace = DVector::from_iterator(
            self.big.order(),
            (0..self.big.order()).map(|x| rep.trace(x)),
        );
        let basis: Vec<DVector<Complex64>> = self
            .dual_big
            .iter()
            .map(|c| {
                DVector::from_iterator(
                    c.values.len(),
                    c.values.iter().map(|v| v * c.dim as f64),
                )
            })
            .collect();
        let (coeffs, residual) = linalg::decompose_in_basis(&basis, &trace)
            .ok_or_else(|| HyperError::Decomposition("trace basis is singular".into()))?;
        if residual > 1e-7 {
            return Err(HyperError::NotInSpan { residual });
        }
        let mut mults = Vec::with_capacity(coeffs.len());
        for (index, c) in coeffs.iter().enumerate() {
            let rounded = c.re.round();
            if (c.re - rounded).abs() > 1e-6 || c.im.abs() > 1e-6 || rounded < -1e-6 {
                return Err(HyperError::NonIntegerMultiplicity {
                    index,
                    value: c.re,
                });
            }
            mults.push(rounded as u64);
        }
        Ok(mults)
    }

    /// ind ch(tau): constituents weighted by their hyperdimensions.
    pub fn induced_character(&self, tau: usize) -> Result<Vec<Scalar>> {
        let mults = self.induced_multiplicities(tau)?;
        let exact: Option<Vec<Scalar>> = self
            .dual_big
            .iter()
            .map(|c| c.hyperdim.exact().cloned())
            .collect();
        match exact {
            Some(dims) => {
                let total: Scalar = mults
                    .iter()
                    .zip(&dims)
                    .fold(zero(), |acc, (&m, d)| acc + d * rat_int(m as i64));
                if total.is_zero() {
                    return Err(HyperError::Decomposition("empty induced character".into()));
                }
                Ok(mults
                    .iter()
                    .zip(&dims)
                    .map(|(&m, d)| d * rat_int(m as i64) / &total)
                    .collect())
            }
            None => {
                let dims: Vec<f64> = self.dual_big.iter().map(|c| c.hyperdim.as_f64()).collect();
                let total: f64 = mults.iter().zip(&dims).map(|(&m, d)| m as f64 * d).sum();
                mults
                    .iter()
                    .zip(&dims)
                    .map(|(&m, d)| {
                        self.cfg.snap(m as f64 * d / total).ok_or_else(|| {
                            HyperError::SnapFailure(
                                "induced-character coefficient did not snap".into(),
                            )
                        })
                    })
                    .collect()
            }
        }
    }

    /// ind(ch(tau_i) ch(tau_j)): the small product pushed through induction.
    pub fn induced_product(&self, ti: usize, tj: usize) -> Result<Vec<Scalar>> {
        let weights = self.small_product(ti, tj)?;
        let mut out = vec![zero(); self.dual_big.len()];
        for (k, a) in weights.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ind = self.induced_character(k)?;
            for (j, c) in ind.iter().enumerate() {
                out[j] += a * c;
            }
        }
        Ok(out)
    }

    fn big_function(&self, coeffs: &[Scalar]) -> Vec<Complex64> {
        (0..self.big.order())
            .map(|x| {
                coeffs
                    .iter()
                    .zip(&self.dual_big)
                    .map(|(c, ch)| ch.values[x] * to_f64(c))
                    .sum()
            })
            .collect()
    }

    fn small_function(&self, coeffs: &[Scalar]) -> Vec<Complex64> {
        (0..self.small.order())
            .map(|s| {
                coeffs
                    .iter()
                    .zip(&self.dual_small)
                    .map(|(c, ch)| ch.values[s] * to_f64(c))
                    .sum()
            })
            .collect()
    }

    /// res(ind ch(tau)) as small-dual coefficients.
    pub fn restricted_induced(&self, tau: usize) -> Result<Vec<Scalar>> {
        let ind = self.induced_character(tau)?;
        let f = self.big_function(&ind);
        let pulled: Vec<Complex64> = self.injection.iter().map(|&x| f[x]).collect();
        decompose_convex(&pulled, &self.dual_small, &self.cfg)
    }

    /// Both admissibility conditions, quantified over all index pairs, plus
    /// the two product-form consequences whenever the conditions hold.
    pub fn admissible(&self) -> Result<AdmissibilityReport> {
        let n_big = self.dual_big.len();
        let n_small = self.dual_small.len();
        let ind_chars: Vec<Vec<Scalar>> = (0..n_small)
            .map(|t| self.induced_character(t))
            .collect::<Result<_>>()?;

        let mut condition1 = Vec::new();
        for pi in 0..n_big {
            for tau in 0..n_small {
                // LHS: ind((res ch(pi)) ch(tau)).
                let mixed = self.mixed_product(pi, tau)?;
                let mut lhs = vec![zero(); n_big];
                for (k, a) in mixed.iter().enumerate() {
                    for (j, c) in ind_chars[k].iter().enumerate() {
                        lhs[j] += a * c;
                    }
                }
                // RHS: ch(pi) * ind ch(tau), decomposed over the big dual.
                let f = self.big_function(&ind_chars[tau]);
                let values: Vec<Complex64> = (0..self.big.order())
                    .map(|x| self.dual_big[pi].values[x] * f[x])
                    .collect();
                let rhs = decompose_convex(&values, &self.dual_big, &self.cfg)?;
                if lhs != rhs {
                    condition1.push(IdentityFailure {
                        left_index: pi,
                        right_index: tau,
                        lhs: format_coeffs(&lhs),
                        rhs: format_coeffs(&rhs),
                    });
                }
            }
        }

        let res_ind_trivial = self.restricted_induced(self.trivial_small)?;
        let base = self.small_function(&res_ind_trivial);
        let mut condition2 = Vec::new();
        for tau in 0..n_small {
            let lhs = self.restricted_induced(tau)?;
            let values: Vec<Complex64> = (0..self.small.order())
                .map(|s| self.dual_small[tau].values[s] * base[s])
                .collect();
            let rhs = decompose_convex(&values, &self.dual_small, &self.cfg)?;
            if lhs != rhs {
                condition2.push(IdentityFailure {
                    left_index: tau,
                    right_index: self.trivial_small,
                    lhs: format_coeffs(&lhs),
                    rhs: format_coeffs(&rhs),
                });
            }
        }

        let mut consequences = Vec::new();
        if condition1.is_empty() && condition2.is_empty() {
            // (res ch(pi)) ch(ti) ch(tj) induced = ch(pi) * ind(ch(ti)ch(tj)).
            for pi in 0..n_big {
                let res = self.restricted_values(pi);
                for ti in 0..n_small {
                    for tj in 0..n_small {
                        let values: Vec<Complex64> = (0..self.small.order())
                            .map(|s| {
                                res[s]
                                    * self.dual_small[ti].values[s]
                                    * self.dual_small[tj].values[s]
                            })
                            .collect();
                        let triple = decompose_convex(&values, &self.dual_small, &self.cfg)?;
                        let mut lhs = vec![zero(); n_big];
                        for (k, a) in triple.iter().enumerate() {
                            for (j, c) in ind_chars[k].iter().enumerate() {
                                lhs[j] += a * c;
                            }
                        }
                        let ind_prod = self.induced_product(ti, tj)?;
                        let f = self.big_function(&ind_prod);
                        let values: Vec<Complex64> = (0..self.big.order())
                            .map(|x| self.dual_big[pi].values[x] * f[x])
                            .collect();
                        let rhs = decompose_convex(&values, &self.dual_big, &self.cfg)?;
                        if lhs != rhs {
                            consequences.push(format!(
                                "product form (1) fails at characters {pi},{ti},{tj}"
                            ));
                        }
                    }
                }
            }
            // res(ind(ch(ti)ch(tj))) = ch(ti)ch(tj) res(ind ch(tau0)).
            for ti in 0..n_small {
                for tj in 0..n_small {
                    let ind_prod = self.induced_product(ti, tj)?;
                    let f = self.big_function(&ind_prod);
                    let pulled: Vec<Complex64> =
                        self.injection.iter().map(|&x| f[x]).collect();
                    let lhs = decompose_convex(&pulled, &self.dual_small, &self.cfg)?;
                    let values: Vec<Complex64> = (0..self.small.order())
                        .map(|s| {
                            self.dual_small[ti].values[s]
                                * self.dual_small[tj].values[s]
                                * base[s]
                        })
                        .collect();
                    let rhs = decompose_convex(&values, &self.dual_small, &self.cfg)?;
                    if lhs != rhs {
                        consequences
                            .push(format!("product form (2) fails at characters {ti},{tj}"));
                    }
                }
            }
        }

        Ok(AdmissibilityReport {
            condition1,
            condition2,
            consequences,
        })
    }

    /// The twisted hypergroup on the disjoint union of the two duals with
    /// mixing parameter q. Built from the four convolution rules; validity is
    /// NOT assumed — validate_axioms on the result is the other side of the
    /// admissibility equivalence.
    pub fn twisted_hypergroup(&self, q: &Scalar) -> Result<FiniteHypergroup> {
        if !q.is_positive() || *q > one() {
            return Err(HyperError::ParameterRange(format!(
                "q = {} must lie in (0, 1]",
                format_rational(q)
            )));
        }
        let n_big = self.dual_big.len();
        let n_small = self.dual_small.len();
        let n = n_big + n_small;
        let mut labels: Vec<String> = (0..n_big).map(|i| format!("γ{i}")).collect();
        labels.extend((0..n_small).map(|j| format!("ρ{j}")));

        let identity = self
            .dual_big
            .iter()
            .position(|c| c.is_trivial(1e-8))
            .ok_or_else(|| HyperError::Malformed("trivial big character missing".into()))?;
        let mut involution = vec![usize::MAX; n];
        for (list, offset) in [(&self.dual_big, 0), (&self.dual_small, n_big)] {
            for (i, c) in list.iter().enumerate() {
                let conj = c.conjugate();
                let j = list
                    .iter()
                    .position(|d| {
                        d.values
                            .iter()
                            .zip(&conj.values)
                            .all(|(a, b)| (a - b).norm() < 1e-7)
                    })
                    .ok_or_else(|| {
                        HyperError::Malformed(format!(
                            "conjugate of character {i} missing from its dual list"
                        ))
                    })?;
                involution[offset + i] = offset + j;
            }
        }

        let mut table = vec![vec![Slice::new(); n]; n];
        let put = |slice: &mut Slice, idx: usize, v: Scalar| {
            if !v.is_zero() {
                slice.insert(idx, v);
            }
        };
        // Rule (1): circle times circle stays circle.
        for i in 0..n_big {
            for j in 0..n_big {
                let values: Vec<Complex64> = (0..self.big.order())
                    .map(|x| self.dual_big[i].values[x] * self.dual_big[j].values[x])
                    .collect();
                let coeffs = decompose_convex(&values, &self.dual_big, &self.cfg)?;
                for (k, v) in coeffs.into_iter().enumerate() {
                    put(&mut table[i][j], k, v);
                }
            }
        }
        // Rules (2), (3): mixing lands on the bullet side.
        for i in 0..n_big {
            for j in 0..n_small {
                let coeffs = self.mixed_product(i, j)?;
                for (k, v) in coeffs.iter().enumerate() {
                    put(&mut table[i][n_big + j], n_big + k, v.clone());
                }
                for (k, v) in coeffs.into_iter().enumerate() {
                    put(&mut table[n_big + j][i], n_big + k, v);
                }
            }
        }
        // Rule (4): bullet times bullet mixes with parameter q.
        for i in 0..n_small {
            for j in 0..n_small {
                let circ = self.induced_product(i, j)?;
                let bullet = self.small_product(i, j)?;
                let slice = &mut table[n_big + i][n_big + j];
                for (k, v) in circ.into_iter().enumerate() {
                    put(slice, k, q * v);
                }
                for (k, v) in bullet.into_iter().enumerate() {
                    put(slice, n_big + k, (one() - q) * v);
                }
            }
        }
        FiniteHypergroup::new(
            format!("K({} | {}; q={})", self.big.name(), self.small.name(), format_rational(q)),
            labels,
            identity,
            involution,
            table,
        )
    }

    /// Restriction/induction multiplicity matrix, rows over the small dual.
    pub fn frobenius_diagram(&self) -> Result<Vec<Vec<u64>>> {
        (0..self.dual_small.len())
            .map(|t| self.induced_multiplicities(t))
            .collect()
    }
}

fn format_coeffs(coeffs: &[Scalar]) -> Vec<String> {
    coeffs.iter().map(format_rational).collect()
}

/// One violated intertwining identity with both sides' coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityFailure {
    pub left_index: usize,
    pub right_index: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub condition1: Vec<IdentityFailure>,
    pub condition2: Vec<IdentityFailure>,
    /// Product-form consequences checked once both conditions hold.
    pub consequences: Vec<String>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.condition1.is_empty() && self.condition2.is_empty()
    }
}

/// Exactness of 1 -> (circle sector) -> K -> order-2 deformation -> 1.
#[derive(Debug, Clone, Serialize)]
pub struct ExactSequenceReport {
    pub circle_sector_closed: bool,
    pub quotient_is_order2_deformation: bool,
}

pub fn exact_sequence_check(
    twisted: &FiniteHypergroup,
    n_big: usize,
    q: &Scalar,
) -> Result<ExactSequenceReport> {
    let subset: BTreeSet<usize> = (0..n_big).collect();
    let circle_sector_closed = twisted.subhypergroup(&subset).is_ok();
    let quotient_is_order2_deformation = circle_sector_closed
        && match twisted.quotient_mod_subhypergroup(&subset) {
            Ok(quot) => {
                let zq2 = crate::constructions::build_zq2(q)?;
                crate::algebra::isomorphic(&quot, &zq2).is_some()
            }
            Err(_) => false,
        };
    Ok(ExactSequenceReport {
        circle_sector_closed,
        quotient_is_order2_deformation,
    })
}

/// Pair of a commutative hypergroup and a subhypergroup: both duals come
/// from the character solver, aligned with the base tables when self-dual.
pub fn pair_commutative(
    big: &FiniteHypergroup,
    subset: &BTreeSet<usize>,
    cfg: &SnapConfig,
) -> Result<HypergroupPair> {
    let sub = big.subhypergroup(subset)?;
    let dual_big = aligned_or_solver_order(big, cfg)?;
    let dual_small = aligned_or_solver_order(&sub.hyper, cfg)?;
    let small_reps = dual_small
        .iter()
        .map(|c| Representation::from_character_values(&c.values))
        .collect();
    HypergroupPair::new(
        big.clone(),
        sub.hyper,
        sub.injection,
        dual_big,
        dual_small,
        small_reps,
        *cfg,
    )
}

/// Characters in table-aligned order when the hypergroup is self-dual, in
/// canonical solver order otherwise.
pub fn aligned_or_solver_order(
    h: &FiniteHypergroup,
    cfg: &SnapConfig,
) -> Result<Vec<NormalizedCharacter>> {
    let table = characters::characters_commutative(h, cfg)?;
    match align_characters_with_table(h, &table, cfg) {
        Ok(aligned) => Ok(aligned),
        Err(_) => Ok(table.characters),
    }
}

/// Pair of a catalog group and a subgroup of it. The subgroup's irreps come
/// from its own catalog entry, transported through an isomorphism onto the
/// embedded subgroup so that indices match the subgroup's element order.
pub fn pair_group(
    big: &GroupData,
    subset: &BTreeSet<usize>,
    small_catalog: &GroupData,
    cfg: &SnapConfig,
) -> Result<HypergroupPair> {
    let sub = big.hypergroup.subhypergroup(subset)?;
    let perm = crate::algebra::isomorphic(&small_catalog.hypergroup, &sub.hyper).ok_or_else(
        || {
            HyperError::Malformed(format!(
                "subgroup is not isomorphic to catalog group {}",
                small_catalog.hypergroup.name()
            ))
        },
    )?;
    let m = sub.hyper.order();
    let small_reps: Vec<Representation> = small_catalog
        .irreps
        .iter()
        .map(|rep| {
            let mut matrices = vec![DMatrix::<Complex64>::zeros(0, 0); m];
            for (i, mat) in rep.matrices.iter().enumerate() {
                matrices[perm[i]] = mat.clone();
            }
            Representation { matrices }
        })
        .collect();
    let dual_small = small_reps
        .iter()
        .zip(&small_catalog.characters)
        .map(|(rep, c)| NormalizedCharacter {
            values: rep.normalized_character_values(),
            dim: rep.dim(),
            hyperdim: c.hyperdim.clone(),
            tag: c.tag,
        })
        .collect();
    HypergroupPair::new(
        big.hypergroup.clone(),
        sub.hyper,
        sub.injection,
        big.characters.clone(),
        dual_small,
        small_reps,
        *cfg,
    )
}

/// The representation of `big` induced from a representation `tau` of a
/// subhypergroup embedded through `injection`: functions from `big` into the
/// representation space, constrained by (eps_{h0} * eps_x)(xi) = tau(h0) xi(x),
/// with action (pi(h) xi)(x) = (eps_x * eps_h)(xi).
pub fn induce_representation(
    big: &FiniteHypergroup,
    injection: &[usize],
    tau: &Representation,
) -> Result<Representation> {
    let n = big.order();
    let d = tau.dim();
    let dim_total = n * d;
    let at = |x: usize, a: usize| x * d + a;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (h0, tmat) in tau.matrices.iter().enumerate() {
        let i0 = injection[h0];
        for x in 0..n {
            for a in 0..d {
                let mut row = vec![Complex64::new(0.0, 0.0); dim_total];
                for (&z, v) in big.slice(i0, x) {
                    row[at(z, a)] += Complex64::new(to_f64(v), 0.0);
                }
                for b in 0..d {
                    row[at(x, b)] -= tmat[(a, b)];
                }
                rows.push(row);
            }
        }
    }
    let constraint = DMatrix::from_fn(rows.len(), dim_total, |r, c| rows[r][c]);
    let basis = linalg::nullspace(&constraint, 1e-9);
    if basis.is_empty() {
        return Err(HyperError::EmptyConstraintSpace);
    }
    let mut matrices = Vec::with_capacity(n);
    for h in 0..n {
        // (A_h xi)(x) = (eps_x * eps_h)(xi) = sum_z n(x,h)(z) xi(z).
        let mut a_h = DMatrix::<Complex64>::zeros(dim_total, dim_total);
        for x in 0..n {
            for (&z, v) in big.slice(x, h) {
                let coeff = Complex64::new(to_f64(v), 0.0);
                for a in 0..d {
                    a_h[(at(x, a), at(z, a))] += coeff;
                }
            }
        }
        // Invariance of the constraint space under the action.
        for b in &basis {
            let image = &a_h * b;
            let mut back = DVector::<Complex64>::zeros(dim_total);
            for u in &basis {
                let c = u.dotc(&image);
                back += u * c;
            }
            if (&image - back).norm() > 1e-7 {
                return Err(HyperError::Decomposition(
                    "induced action leaves the constraint space".into(),
                ));
            }
        }
        matrices.push(linalg::restrict_to_subspace(&a_h, &basis));
    }
    let rep = Representation { matrices };
    let residual = rep.homomorphism_residual(big);
    if residual > 1e-7 {
        return Err(HyperError::Decomposition(format!(
            "induced representation fails the homomorphism law (residual {residual:.3e})"
        )));
    }
    Ok(rep)
}

/// Sum of the circle and bullet masses of a twisted slice; rule (4) forces
/// these to be exactly (q, 1-q) on bullet-bullet products.
pub fn sector_masses(slice: &Slice, n_big: usize) -> (Scalar, Scalar) {
    let mut circ = zero();
    let mut bullet = zero();
    for (&k, v) in slice {
        if k < n_big {
            circ += v;
        } else {
            bullet += v;
        }
    }
    (circ, bullet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_zp3, build_zq2, direct_product, hypergroup_join};
    use crate::groups::group;
    use crate::scalar::rat;

    fn s4_s3_pair() -> HypergroupPair {
        let s4 = group("S4").unwrap();
        let s3 = group("S3").unwrap();
        // Permutations of {0,1,2,3} fixing the point 3.
        let subset: BTreeSet<usize> = (0..24)
            .filter(|&i| {
                let label = s4.hypergroup.label(i);
                !label.contains('3')
            })
            .collect();
        pair_group(&s4, &subset, &s3, &SnapConfig::default()).unwrap()
    }

    #[test]
    fn restriction_s4_to_s3() {
        let pair = s4_s3_pair();
        // The standard 3-dim character restricts to trivial + 2-dim.
        assert_eq!(
            pair.restrict_character(3).unwrap(),
            vec![rat(1, 3), zero(), rat(2, 3)]
        );
        assert_eq!(
            pair.restrict_character(0).unwrap(),
            vec![one(), zero(), zero()]
        );
    }

    #[test]
    fn induction_s3_to_s4() {
        let pair = s4_s3_pair();
        assert_eq!(
            pair.induced_multiplicities(0).unwrap(),
            vec![1, 0, 0, 1, 0]
        );
        assert_eq!(
            pair.induced_character(0).unwrap(),
            vec![rat(1, 4), zero(), zero(), rat(3, 4), zero()]
        );
        // ch(tau2)^2 induced: (1/16, 1/16, 1/8, 3/8, 3/8).
        assert_eq!(
            pair.induced_product(2, 2).unwrap(),
            vec![rat(1, 16), rat(1, 16), rat(1, 8), rat(3, 8), rat(3, 8)]
        );
    }

    #[test]
    fn frobenius_diagram_s4_s3() {
        let pair = s4_s3_pair();
        assert_eq!(
            pair.frobenius_diagram().unwrap(),
            vec![
                vec![1, 0, 0, 1, 0],
                vec![0, 1, 0, 0, 1],
                vec![0, 0, 1, 1, 1],
            ]
        );
    }

    #[test]
    fn s4_s3_is_admissible_and_twists() {
        let pair = s4_s3_pair();
        let report = pair.admissible().unwrap();
        assert!(report.is_admissible());
        assert!(report.consequences.is_empty());
        let q = rat(1, 2);
        let twisted = pair.twisted_hypergroup(&q).unwrap();
        assert!(twisted.validate_axioms().is_valid());
        // rho2 rho2 coefficient spot checks against the reference table.
        let s = twisted.slice(7, 7);
        assert_eq!(s.get(&0).unwrap(), &rat(1, 32)); // q/16
        assert_eq!(s.get(&4).unwrap(), &rat(3, 16)); // 3q/8
        assert_eq!(s.get(&7).unwrap(), &rat(1, 4)); // (1-q)/2
        let check = exact_sequence_check(&twisted, 5, &q).unwrap();
        assert!(check.circle_sector_closed && check.quotient_is_order2_deformation);
    }

    #[test]
    fn whole_pair_gives_direct_product() {
        let h = build_zp3(&rat(1, 2)).unwrap();
        let cfg = SnapConfig::default();
        let pair = pair_commutative(&h, &(0..3).collect(), &cfg).unwrap();
        let q = rat(1, 4);
        let twisted = pair.twisted_hypergroup(&q).unwrap();
        assert!(twisted.validate_axioms().is_valid());
        let dual = characters::dual_hypergroup(&h, &cfg).unwrap();
        let product = direct_product(&dual, &build_zq2(&q).unwrap()).unwrap();
        assert!(crate::algebra::isomorphic(&twisted, &product).is_some());
    }

    #[test]
    fn trivial_pair_gives_join() {
        let h = build_zp3(&rat(1, 2)).unwrap();
        let cfg = SnapConfig::default();
        let pair = pair_commutative(&h, &[0].into_iter().collect(), &cfg).unwrap();
        let q = rat(1, 4);
        let twisted = pair.twisted_hypergroup(&q).unwrap();
        assert!(twisted.validate_axioms().is_valid());
        let dual = characters::dual_hypergroup(&h, &cfg).unwrap();
        let join = hypergroup_join(&dual, &build_zq2(&q).unwrap()).unwrap();
        assert!(crate::algebra::isomorphic(&twisted, &join).is_some());
    }

    #[test]
    fn rule_four_sector_masses() {
        let pair = s4_s3_pair();
        let q = rat(1, 4);
        let twisted = pair.twisted_hypergroup(&q).unwrap();
        for i in 5..8 {
            for j in 5..8 {
                let (circ, bullet) = sector_masses(twisted.slice(i, j), 5);
                assert_eq!(circ, q);
                assert_eq!(bullet, one() - &q);
            }
        }
    }
}
