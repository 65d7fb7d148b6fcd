//! Character theory: characters of finite commutative hypergroups as joint
//! eigenvectors of the translation matrices, dual hypergroups built from
//! pointwise products of characters, Plancherel weights and hyperdimensions.

use nalgebra::{DMatrix, DVector};
use num::traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteHypergroup;
use crate::error::{HyperError, Result};
use crate::linalg;
use crate::scalar::{one, to_f64, Complex64, Scalar, SnapConfig, Weight};

/// Where a normalized character came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharTag {
    CommutativeCharacter,
    GroupIrrep,
    MackeyIrrep,
}

/// A normalized character ch(pi) = tr(pi)/dim(pi) with its dimension and
/// hyperdimension.
#[derive(Debug, Clone)]
pub struct NormalizedCharacter {
    pub values: Vec<Complex64>,
    pub dim: usize,
    pub hyperdim: Weight,
    pub tag: CharTag,
}

impl NormalizedCharacter {
    pub fn value(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.values
            .iter()
            .all(|v| (v - Complex64::new(1.0, 0.0)).norm() < tol)
    }

    pub fn conjugate(&self) -> NormalizedCharacter {
        NormalizedCharacter {
            values: self.values.iter().map(|v| v.conj()).collect(),
            dim: self.dim,
            hyperdim: self.hyperdim.clone(),
            tag: self.tag,
        }
    }

    /// Max residual of (eps_x * eps_{y^-})(chi) = chi(x) conj(chi(y)) over all
    /// pairs; meaningful for characters of commutative hypergroups.
    pub fn functional_equation_residual(&self, h: &FiniteHypergroup) -> f64 {
        let n = h.order();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let mut lhs = Complex64::new(0.0, 0.0);
                for (&k, v) in h.slice(x, h.involution(y)) {
                    lhs += Complex64::new(to_f64(v), 0.0) * self.values[k];
                }
                let rhs = self.values[x] * self.values[y].conj();
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    /// ch(e) = 1, ch(x^-) = conj ch(x), |ch| <= 1 (up to `tol`).
    pub fn basic_invariants_hold(&self, h: &FiniteHypergroup, tol: f64) -> bool {
        if (self.values[h.identity()] - Complex64::new(1.0, 0.0)).norm() > tol {
            return false;
        }
        for x in 0..h.order() {
            if (self.values[h.involution(x)] - self.values[x].conj()).norm() > tol {
                return false;
            }
            if self.values[x].norm() > 1.0 + tol {
                return false;
            }
        }
        true
    }
}

/// Finite-dimensional representation given by one matrix per element.
#[derive(Debug, Clone)]
pub struct Representation {
    pub matrices: Vec<DMatrix<Complex64>>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn trace(&self, x: usize) -> Complex64 {
        self.matrices[x].trace()
    }

    pub fn normalized_character_values(&self) -> Vec<Complex64> {
        let d = self.dim() as f64;
        self.matrices.iter().map(|m| m.trace() / d).collect()
    }

    /// Max residual of pi(eps_x * eps_y) = pi(x) pi(y) over all pairs.
    pub fn homomorphism_residual(&self, h: &FiniteHypergroup) -> f64 {
        let n = h.order();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let mut lhs = DMatrix::<Complex64>::zeros(self.dim(), self.dim());
                for (&k, v) in h.slice(x, y) {
                    lhs += &self.matrices[k] * Complex64::new(to_f64(v), 0.0);
                }
                let rhs = &self.matrices[x] * &self.matrices[y];
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    /// One-dimensional representation carrying the values of a character.
    pub fn from_character_values(values: &[Complex64]) -> Representation {
        Representation {
            matrices: values
                .iter()
                .map(|v| DMatrix::from_element(1, 1, *v))
                .collect(),
        }
    }
}

/// The full character list of a commutative hypergroup with Plancherel data.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub characters: Vec<NormalizedCharacter>,
    pub plancherel: Vec<Weight>,
    pub total: Weight,
}

const MAX_EIGEN_RETRIES: usize = 8;

/// All |H| characters of a finite commutative hypergroup, found as the joint
/// eigenvectors of a random linear combination of translation matrices.
/// The trivial character comes first; the rest are ordered canonically by
/// their value vectors.
pub fn characters_commutative(
    h: &FiniteHypergroup,
    cfg: &SnapConfig,
) -> Result<CharacterTable> {
    if !h.is_commutative() {
        return Err(HyperError::NotCommutative);
    }
    let n = h.order();
    // (T_i)[x, k] = coefficient of k in eps_i * eps_x, so that T_i chi = chi(i) chi.
    let translations: Vec<DMatrix<f64>> = (0..n)
        .map(|i| {
            DMatrix::from_fn(n, n, |x, k| to_f64(&h.structure_constant(i, x, k)))
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0x1705_2016);
    for _attempt in 0..MAX_EIGEN_RETRIES {
        let mut combined = DMatrix::<Complex64>::zeros(n, n);
        for t in &translations {
            let c: f64 = rng.gen_range(0.2..1.0);
            for x in 0..n {
                for k in 0..n {
                    combined[(x, k)] += Complex64::new(c * t[(x, k)], 0.0);
                }
            }
        }
        let Some(pairs) = linalg::eigenpairs_distinct(&combined, 1e-7) else {
            continue;
        };
        let mut candidates = Vec::with_capacity(n);
        let mut ok = true;
        for (_, v) in pairs {
            let at_e = v[h.identity()];
            if at_e.norm() < 1e-8 {
                ok = false;
                break;
            }
            let values: Vec<Complex64> = v.iter().map(|z| z / at_e).collect();
            let ch = NormalizedCharacter {
                values,
                dim: 1,
                hyperdim: Weight::Approx(f64::NAN),
                tag: CharTag::CommutativeCharacter,
            };
            if ch.functional_equation_residual(h) > 1e-8 {
                ok = false;
                break;
            }
            candidates.push(ch);
        }
        if !ok {
            continue;
        }
        candidates.sort_by(|a, b| canonical_key(&a.values).cmp(&canonical_key(&b.values)));
        let trivial = candidates
            .iter()
            .position(|c| c.is_trivial(1e-8))
            .ok_or_else(|| HyperError::Other("trivial character missing".into()))?;
        candidates.swap(0, trivial);
        if trivial != 0 {
            candidates[1..].sort_by(|a, b| canonical_key(&a.values).cmp(&canonical_key(&b.values)));
        }
        let mut characters = Vec::with_capacity(n);
        let mut plancherel = Vec::with_capacity(n);
        let mut total = Weight::Exact(Scalar::zero());
        for mut ch in candidates {
            let w = hyperdimension(h, &ch, cfg)?;
            ch.hyperdim = w.clone();
            total = total.add(&w);
            plancherel.push(w);
            characters.push(ch);
        }
        return Ok(CharacterTable {
            characters,
            plancherel,
            total,
        });
    }
    Err(HyperError::Degeneracy {
        retries: MAX_EIGEN_RETRIES,
    })
}

fn canonical_key(values: &[Complex64]) -> Vec<(i64, i64)> {
    values
        .iter()
        .map(|z| (-(z.re * 1e8).round() as i64, -(z.im * 1e8).round() as i64))
        .collect()
}

/// Result of expressing a function in a character basis.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub coeffs: Vec<Complex64>,
    pub residual: f64,
    pub snapped: Option<Vec<Scalar>>,
}

/// Least-squares decomposition of a function over the elements in the span of
/// the given characters, with rational snapping of the coefficients.
pub fn decompose_in_character_basis(
    f: &[Complex64],
    basis: &[NormalizedCharacter],
    cfg: &SnapConfig,
) -> Result<Decomposition> {
    let vectors: Vec<DVector<Complex64>> = basis
        .iter()
        .map(|c| DVector::from_vec(c.values.clone()))
        .collect();
    let target = DVector::from_vec(f.to_vec());
    let scale = 1.0 + target.norm();
    let (coeffs, residual) = linalg::decompose_in_basis(&vectors, &target)
        .ok_or_else(|| HyperError::Decomposition("singular Gram matrix".into()))?;
    if residual > 1e-9 * scale.max(1.0) * 10.0 {
        return Err(HyperError::NotInSpan { residual });
    }
    let snapped: Option<Vec<Scalar>> = coeffs.iter().map(|c| cfg.snap_real(*c)).collect();
    Ok(Decomposition {
        coeffs,
        residual,
        snapped,
    })
}

/// Decomposition that must produce nonnegative rationals summing to one,
/// as products of normalized characters do.
pub fn decompose_convex(
    f: &[Complex64],
    basis: &[NormalizedCharacter],
    cfg: &SnapConfig,
) -> Result<Vec<Scalar>> {
    let dec = decompose_in_character_basis(f, basis, cfg)?;
    let snapped = dec.snapped.ok_or_else(|| {
        HyperError::SnapFailure("character-basis coefficients did not snap".into())
    })?;
    let mut total = Scalar::zero();
    for (index, value) in snapped.iter().enumerate() {
        if value.is_negative() {
            return Err(HyperError::NegativeCoefficient {
                index,
                value: to_f64(value),
            });
        }
        total += value;
    }
    if !total.is_one() {
        return Err(HyperError::SnapFailure(format!(
            "convex coefficients sum to {} instead of 1",
            crate::scalar::format_rational(&total)
        )));
    }
    Ok(snapped)
}

/// Builds the hypergroup structure on a set of normalized characters by
/// decomposing pointwise products back into the character basis. This is the
/// strong-type check: it errors when a product leaves the nonnegative cone.
pub fn dual_from_characters(
    h: &FiniteHypergroup,
    chars: &[NormalizedCharacter],
    labels: Vec<String>,
    name: impl Into<String>,
    cfg: &SnapConfig,
) -> Result<FiniteHypergroup> {
    let m = chars.len();
    assert_eq!(labels.len(), m);
    let identity = chars
        .iter()
        .position(|c| c.is_trivial(1e-8))
        .ok_or_else(|| HyperError::Other("no trivial character in dual".into()))?;
    let mut involution = vec![usize::MAX; m];
    for i in 0..m {
        let conj = chars[i].conjugate();
        let j = chars
            .iter()
            .position(|c| {
                c.values
                    .iter()
                    .zip(&conj.values)
                    .all(|(a, b)| (a - b).norm() < 1e-7)
            })
            .ok_or_else(|| {
                HyperError::Other(format!("conjugate of character {i} missing from dual"))
            })?;
        involution[i] = j;
    }
    let n = h.order();
    let mut table = vec![vec![crate::algebra::Slice::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let product: Vec<Complex64> =
                (0..n).map(|x| chars[i].values[x] * chars[j].values[x]).collect();
            let dec = decompose_in_character_basis(&product, chars, cfg)
                .map_err(|e| match e {
                    HyperError::NotInSpan { residual } => HyperError::Decomposition(format!(
                        "product of characters {i} and {j} leaves the character span (residual {residual:.3e})"
                    )),
                    other => other,
                })?;
            let snapped = dec.snapped.ok_or_else(|| {
                HyperError::SnapFailure(format!(
                    "structure constants of characters {i} x {j} did not snap"
                ))
            })?;
            for (k, value) in snapped.into_iter().enumerate() {
                if value.is_negative() {
                    return Err(HyperError::NegativeStructureConstant {
                        i,
                        j,
                        k,
                        value: to_f64(&value),
                    });
                }
                if !value.is_zero() {
                    table[i][j].insert(k, value);
                }
            }
        }
    }
    FiniteHypergroup::new(name, labels, identity, involution, table)
}

/// The dual hypergroup K(H^) of a commutative hypergroup of strong type.
pub fn dual_hypergroup(h: &FiniteHypergroup, cfg: &SnapConfig) -> Result<FiniteHypergroup> {
    let table = characters_commutative(h, cfg)?;
    let labels = (0..table.characters.len())
        .map(|i| format!("ch{i}"))
        .collect();
    let dual = dual_from_characters(
        h,
        &table.characters,
        labels,
        format!("dual({})", h.name()),
        cfg,
    )?;
    let report = dual.validate_axioms();
    if !report.is_valid() {
        return Err(HyperError::AxiomError(format!(
            "dual of {} is not a hypergroup: {:?}",
            h.name(),
            report.violations
        )));
    }
    Ok(dual)
}

/// A character list permuted so that the table it generates coincides with
/// the given self-dual table index for index.
pub fn align_characters_with_table(
    h: &FiniteHypergroup,
    table: &CharacterTable,
    cfg: &SnapConfig,
) -> Result<Vec<NormalizedCharacter>> {
    let labels = (0..table.characters.len()).map(|i| format!("ch{i}")).collect();
    let dual = dual_from_characters(h, &table.characters, labels, "dual", cfg)?;
    let perm = crate::algebra::isomorphic(&dual, h).ok_or_else(|| {
        HyperError::Other(format!("{} is not self-dual", h.name()))
    })?;
    // perm maps dual indices onto h indices; character for slot perm[i] is i.
    let mut out: Vec<Option<NormalizedCharacter>> = vec![None; table.characters.len()];
    for (i, &target) in perm.iter().enumerate() {
        out[target] = Some(table.characters[i].clone());
    }
    Ok(out.into_iter().map(|c| c.expect("bijection")).collect())
}

/// Hyperdimension d(pi) = [dim pi * sum_x omega(x) |ch(pi)(x)|^2]^{-1}.
pub fn hyperdimension(
    h: &FiniteHypergroup,
    c: &NormalizedCharacter,
    cfg: &SnapConfig,
) -> Result<Weight> {
    let haar = h.haar()?;
    let mut norm = 0.0;
    for x in 0..h.order() {
        norm += to_f64(haar.normalized.coeff(x)) * c.values[x].norm_sqr();
    }
    let denom = c.dim as f64 * norm;
    if denom < 1e-12 {
        return Err(HyperError::AxiomError("character has zero norm".into()));
    }
    let d = 1.0 / denom;
    Ok(match cfg.snap(d) {
        Some(s) => Weight::Exact(s),
        None => Weight::Approx(d),
    })
}

/// Pointwise complex conjugate; the involution of the dual hypergroup.
pub fn conjugate_character(c: &NormalizedCharacter) -> NormalizedCharacter {
    c.conjugate()
}

/// Convenience: the trivial character over `h`.
pub fn trivial_character(h: &FiniteHypergroup) -> NormalizedCharacter {
    NormalizedCharacter {
        values: vec![Complex64::new(1.0, 0.0); h.order()],
        dim: 1,
        hyperdim: Weight::Exact(one()),
        tag: CharTag::CommutativeCharacter,
    }
}
