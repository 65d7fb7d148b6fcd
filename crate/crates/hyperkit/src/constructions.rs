//! Builders for the hypergroup families the workbench ships with: the
//! one-parameter deformations of Z(2), Z(3), Z(4), direct products, the
//! hypergroup join, and a formal integer grading for circle factors.

use num::traits::{Signed, Zero};

use crate::algebra::{FiniteHypergroup, Slice};
use crate::error::{HyperError, Result};
use crate::scalar::{format_rational, one, rat_int, zero, Scalar};

fn check_unit_interval(name: &str, v: &Scalar) -> Result<()> {
    if v.is_positive() && *v <= one() {
        Ok(())
    } else {
        Err(HyperError::ParameterRange(format!(
            "{name} = {} must lie in (0, 1]",
            format_rational(v)
        )))
    }
}

fn slice(entries: &[(usize, Scalar)]) -> Slice {
    entries
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (*k, v.clone()))
        .collect()
}

/// Order-2 deformation: h1*h1 = q h0 + (1-q) h1. At q=1 this is the group Z(2).
pub fn build_zq2(q: &Scalar) -> Result<FiniteHypergroup> {
    check_unit_interval("q", q)?;
    let table = vec![
        vec![slice(&[(0, one())]), slice(&[(1, one())])],
        vec![
            slice(&[(1, one())]),
            slice(&[(0, q.clone()), (1, one() - q)]),
        ],
    ];
    FiniteHypergroup::new_validated(
        format!("Z_{}(2)", format_rational(q)),
        vec!["h0".into(), "h1".into()],
        0,
        vec![0, 1],
        table,
    )
}

/// Order-3 deformation with involution swapping h1 and h2; Z(3) at p=1.
pub fn build_zp3(p: &Scalar) -> Result<FiniteHypergroup> {
    check_unit_interval("p", p)?;
    let half_lo = (one() - p) / rat_int(2); // (1-p)/2
    let half_hi = (one() + p) / rat_int(2); // (1+p)/2
    let mixed = slice(&[(0, p.clone()), (1, half_lo.clone()), (2, half_lo.clone())]);
    let table = vec![
        vec![slice(&[(0, one())]), slice(&[(1, one())]), slice(&[(2, one())])],
        vec![
            slice(&[(1, one())]),
            slice(&[(1, half_lo.clone()), (2, half_hi.clone())]),
            mixed.clone(),
        ],
        vec![
            slice(&[(2, one())]),
            mixed,
            slice(&[(1, half_hi), (2, half_lo)]),
        ],
    ];
    FiniteHypergroup::new_validated(
        format!("Z_{}(3)", format_rational(p)),
        vec!["h0".into(), "h1".into(), "h2".into()],
        0,
        vec![0, 2, 1],
        table,
    )
}

/// Order-4 two-parameter deformation. The involution swaps h1 and h3 (the
/// support condition forces it: the identity appears in h1*h3, not in h1*h1).
pub fn build_zpr4(p: &Scalar, r: &Scalar) -> Result<FiniteHypergroup> {
    check_unit_interval("p", p)?;
    check_unit_interval("r", r)?;
    let two = rat_int(2);
    let p_half = (one() - p) / &two; // (1-p)/2
    let r_lo = (one() - r) / &two; // (1-r)/2
    let r_hi = (one() + r) / &two; // (1+r)/2
    let one_plus_r = one() + r;
    let diag = slice(&[(1, p_half.clone()), (2, p.clone()), (3, p_half.clone())]);
    let s12 = slice(&[(1, r_lo.clone()), (3, r_hi.clone())]);
    let s23 = slice(&[(1, r_hi.clone()), (3, r_lo.clone())]);
    let s13 = slice(&[
        (0, rat_int(2) * p * r / &one_plus_r),
        (1, p_half.clone()),
        (2, (p - p * r) / &one_plus_r),
        (3, p_half.clone()),
    ]);
    let table = vec![
        vec![
            slice(&[(0, one())]),
            slice(&[(1, one())]),
            slice(&[(2, one())]),
            slice(&[(3, one())]),
        ],
        vec![slice(&[(1, one())]), diag.clone(), s12.clone(), s13.clone()],
        vec![
            slice(&[(2, one())]),
            s12,
            slice(&[(0, r.clone()), (2, one() - r)]),
            s23.clone(),
        ],
        vec![slice(&[(3, one())]), s13, s23, diag],
    ];
    FiniteHypergroup::new_validated(
        format!("Z_({},{})(4)", format_rational(p), format_rational(r)),
        vec!["h0".into(), "h1".into(), "h2".into(), "h3".into()],
        0,
        vec![0, 3, 2, 1],
        table,
    )
}

/// Direct product: elements are pairs, slices are tensor products of slices.
pub fn direct_product(a: &FiniteHypergroup, b: &FiniteHypergroup) -> Result<FiniteHypergroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let idx = |ia: usize, ib: usize| ia * nb + ib;
    let mut labels = Vec::with_capacity(n);
    let mut involution = vec![0; n];
    for ia in 0..na {
        for ib in 0..nb {
            labels.push(format!("({},{})", a.label(ia), b.label(ib)));
            involution[idx(ia, ib)] = idx(a.involution(ia), b.involution(ib));
        }
    }
    let mut table = vec![vec![Slice::new(); n]; n];
    for ia in 0..na {
        for ja in 0..na {
            for ib in 0..nb {
                for jb in 0..nb {
                    let out = &mut table[idx(ia, ib)][idx(ja, jb)];
                    for (&ka, va) in a.slice(ia, ja) {
                        for (&kb, vb) in b.slice(ib, jb) {
                            out.insert(idx(ka, kb), va * vb);
                        }
                    }
                }
            }
        }
    }
    FiniteHypergroup::new_validated(
        format!("{} x {}", a.name(), b.name()),
        labels,
        idx(a.identity(), b.identity()),
        involution,
        table,
    )
}

/// Hypergroup join A v B: A survives intact, non-identity elements of B
/// absorb A pointwise, and any identity mass in a B-product is smeared over
/// A's normalized Haar measure.
pub fn hypergroup_join(
    compact: &FiniteHypergroup,
    discrete: &FiniteHypergroup,
) -> Result<FiniteHypergroup> {
    let na = compact.order();
    let haar = compact.haar()?;
    // Discrete elements, identity omitted, appended after the compact block.
    let outer: Vec<usize> = (0..discrete.order())
        .filter(|&d| d != discrete.identity())
        .collect();
    let outer_pos = |d: usize| -> usize { na + outer.iter().position(|&x| x == d).unwrap() };
    let n = na + outer.len();
    let mut labels: Vec<String> = compact.labels().to_vec();
    labels.extend(outer.iter().map(|&d| discrete.label(d).to_string()));
    let mut involution = vec![0; n];
    for x in 0..na {
        involution[x] = compact.involution(x);
    }
    for &d in &outer {
        involution[outer_pos(d)] = outer_pos(discrete.involution(d));
    }
    let mut table = vec![vec![Slice::new(); n]; n];
    for i in 0..na {
        for j in 0..na {
            table[i][j] = compact.slice(i, j).clone();
        }
    }
    for &d in &outer {
        let dp = outer_pos(d);
        for x in 0..na {
            table[x][dp].insert(dp, one());
            table[dp][x].insert(dp, one());
        }
        for &d2 in &outer {
            let out = &mut table[dp][outer_pos(d2)];
            for (&k, v) in discrete.slice(d, d2) {
                if k == discrete.identity() {
                    for x in 0..na {
                        let mass = v * haar.normalized.coeff(x);
                        if !mass.is_zero() {
                            let entry = out.entry(x).or_insert_with(zero);
                            *entry += mass;
                        }
                    }
                } else {
                    out.insert(outer_pos(k), v.clone());
                }
            }
        }
    }
    FiniteHypergroup::new_validated(
        format!("{} v {}", compact.name(), discrete.name()),
        labels,
        compact.identity(),
        involution,
        table,
    )
}

/// A hypergroup whose elements carry formal integer grades that add under
/// convolution; the device for circle factors, whose dual contributes a free
/// integer index to every element.
#[derive(Debug, Clone)]
pub struct GradedHypergroup {
    pub base: FiniteHypergroup,
    pub grades: Vec<i64>,
}

/// Checks that the grade assignment is compatible with the base structure:
/// grade 0 at the identity, negation under involution, additivity across
/// every product's support.
pub fn z_graded_extension(base: &FiniteHypergroup, grades: &[i64]) -> Result<GradedHypergroup> {
    let n = base.order();
    if grades.len() != n {
        return Err(HyperError::DimensionMismatch(format!(
            "{} grades for {n} elements",
            grades.len()
        )));
    }
    if grades[base.identity()] != 0 {
        return Err(HyperError::Malformed("identity must have grade 0".into()));
    }
    for x in 0..n {
        if grades[base.involution(x)] != -grades[x] {
            return Err(HyperError::Malformed(format!(
                "grade of involution of element {x} is not the negated grade"
            )));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for &k in base.slice(i, j).keys() {
                if grades[k] != grades[i] + grades[j] {
                    return Err(HyperError::Malformed(format!(
                        "product of elements {i},{j} hits element {k} outside grade {}",
                        grades[i] + grades[j]
                    )));
                }
            }
        }
    }
    Ok(GradedHypergroup {
        base: base.clone(),
        grades: grades.to_vec(),
    })
}

impl GradedHypergroup {
    /// Formal product of (x, j) and (y, l): the base slice of (x, y) placed
    /// at total index j + l (plus the element's own grade).
    pub fn product(&self, x: usize, j: i64, y: usize, l: i64) -> Vec<(usize, i64, Scalar)> {
        self.base
            .slice(x, y)
            .iter()
            .map(|(&k, v)| (k, j + l, v.clone()))
            .collect()
    }

    /// Grade-0 slice: the sub-table on grade-0 elements, which is closed by
    /// additivity.
    pub fn grade_zero_slice(&self) -> Result<FiniteHypergroup> {
        let subset: std::collections::BTreeSet<usize> = (0..self.base.order())
            .filter(|&x| self.grades[x] == 0)
            .collect();
        Ok(self.base.subhypergroup(&subset)?.hyper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::isomorphic;
    use crate::groups::group;
    use crate::scalar::rat;

    #[test]
    fn builders_validate_on_grid() {
        for num in [1i64, 2, 3] {
            let p = rat(num, 4);
            build_zq2(&p).unwrap();
            build_zp3(&p).unwrap();
            for den in [1i64, 2, 3] {
                let r = rat(den, 4);
                build_zpr4(&p, &r).unwrap();
            }
        }
    }

    #[test]
    fn group_points_recover_groups() {
        let z2 = group("Z2").unwrap().hypergroup;
        let z3 = group("Z3").unwrap().hypergroup;
        let z4 = group("Z4").unwrap().hypergroup;
        assert!(isomorphic(&build_zq2(&rat_int(1)).unwrap(), &z2).is_some());
        assert!(isomorphic(&build_zp3(&rat_int(1)).unwrap(), &z3).is_some());
        assert!(isomorphic(&build_zpr4(&rat_int(1), &rat_int(1)).unwrap(), &z4).is_some());
    }

    #[test]
    fn parameter_range_enforced() {
        assert!(matches!(
            build_zq2(&rat_int(0)),
            Err(HyperError::ParameterRange(_))
        ));
        assert!(matches!(
            build_zq2(&rat(5, 4)),
            Err(HyperError::ParameterRange(_))
        ));
    }

    #[test]
    fn haar_weights_of_deformations() {
        let h = build_zq2(&rat(1, 3)).unwrap();
        assert_eq!(h.haar().unwrap().weights, vec![rat_int(1), rat_int(3)]);
        let h = build_zp3(&rat(1, 2)).unwrap();
        assert_eq!(
            h.haar().unwrap().weights,
            vec![rat_int(1), rat_int(2), rat_int(2)]
        );
    }

    #[test]
    fn join_and_product_identities() {
        let a = build_zp3(&rat(1, 2)).unwrap();
        let point = group("Z1").unwrap().hypergroup;
        let join = hypergroup_join(&a, &point).unwrap();
        assert!(isomorphic(&join, &a).is_some());
        let prod = direct_product(&a, &point).unwrap();
        assert!(isomorphic(&prod, &a).is_some());

        let b = build_zq2(&rat(1, 4)).unwrap();
        let join = hypergroup_join(&a, &b).unwrap();
        let sub = join
            .subhypergroup(&(0..a.order()).collect())
            .unwrap();
        assert!(isomorphic(&sub.hyper, &a).is_some());
        let quot = join
            .quotient_mod_subhypergroup(&(0..a.order()).collect())
            .unwrap();
        assert!(isomorphic(&quot, &b).is_some());
    }

    #[test]
    fn join_absorbs_identity_through_haar() {
        // Z_p(2) v Z_q(2) with p=1/2: omega = (1/3, 2/3).
        let a = build_zq2(&rat(1, 2)).unwrap();
        let b = build_zq2(&rat(1, 4)).unwrap();
        let join = hypergroup_join(&a, &b).unwrap();
        let d = 2; // the adjoined element
        let s = join.slice(d, d);
        assert_eq!(s.get(&0).unwrap(), &rat(1, 12)); // q * 1/3
        assert_eq!(s.get(&1).unwrap(), &rat(2, 12)); // q * 2/3
        assert_eq!(s.get(&2).unwrap(), &rat(3, 4)); // 1 - q
    }

    #[test]
    fn grading_checks() {
        let z4 = group("Z4").unwrap().hypergroup;
        assert!(z_graded_extension(&z4, &[0, 1, 2, 3]).is_err());
        let graded = z_graded_extension(&z4, &[0, 0, 0, 0]).unwrap();
        assert_eq!(graded.product(1, 5, 3, -2), vec![(0, 3, one())]);
        assert!(isomorphic(&graded.grade_zero_slice().unwrap(), &z4).is_some());
    }
}
