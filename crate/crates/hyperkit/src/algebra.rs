//! Finite hypergroups as exact structure-constant tensors, with convolution,
//! Haar measure, axiom validation, sub/quotient structure and isomorphism
//! testing.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{HyperError, Result};
use crate::scalar::{one, zero, Scalar};

/// Sparse slice of the structure-constant tensor: coefficients of the
/// convolution product of two point masses.
pub type Slice = BTreeMap<usize, Scalar>;

/// A finite hypergroup given by labels, identity, involution and the full
/// rational structure-constant tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteHypergroup {
    name: String,
    labels: Vec<String>,
    identity: usize,
    involution: Vec<usize>,
    table: Vec<Vec<Slice>>,
}

/// Finitely supported coefficient vector over the elements of a hypergroup.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    coeffs: Vec<Scalar>,
}

impl Measure {
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        Measure { coeffs }
    }

    pub fn dirac(len: usize, at: usize) -> Self {
        let mut coeffs = vec![zero(); len];
        coeffs[at] = one();
        Measure { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// All coefficients nonnegative and summing to one.
    pub fn is_probability(&self) -> bool {
        let mut total = zero();
        for c in &self.coeffs {
            if c.is_negative() {
                return false;
            }
            total += c;
        }
        total.is_one()
    }
}

/// Haar weights w(x), their total and the normalized invariant measure.
#[derive(Debug, Clone)]
pub struct HaarData {
    pub weights: Vec<Scalar>,
    pub total: Scalar,
    pub normalized: Measure,
}

/// One failed hypergroup axiom, with the witnessing indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum AxiomViolation {
    NegativeCoefficient { i: usize, j: usize, k: usize },
    SliceSumNotOne { i: usize, j: usize, sum: String },
    IdentityFailure { x: usize },
    InvolutionNotSelfInverse { x: usize },
    SupportCondition { i: usize, j: usize },
    AntiHomomorphism { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize },
}

/// Outcome of `validate_axioms`; empty means every axiom holds.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A subhypergroup together with the injection of its indices into the parent.
#[derive(Debug, Clone)]
pub struct Subhypergroup {
    pub hyper: FiniteHypergroup,
    pub injection: Vec<usize>,
}

impl FiniteHypergroup {
    /// Builds a hypergroup after structural checks only (axioms are checked
    /// separately by `validate_axioms`).
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        involution: Vec<usize>,
        table: Vec<Vec<Slice>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(HyperError::Malformed("no elements".into()));
        }
        if identity >= n {
            return Err(HyperError::Malformed(format!(
                "identity index {identity} out of range for {n} elements"
            )));
        }
        if involution.len() != n || involution.iter().any(|&x| x >= n) {
            return Err(HyperError::Malformed("involution is not a map on the element set".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(HyperError::Malformed(format!(
                "tensor must be a {n}x{n} array of slices"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, slice) in row.iter().enumerate() {
                if slice.keys().any(|&k| k >= n) {
                    return Err(HyperError::Malformed(format!(
                        "slice ({i},{j}) refers to an element index out of range"
                    )));
                }
            }
        }
        Ok(FiniteHypergroup {
            name: name.into(),
            labels,
            identity,
            involution,
            table,
        })
    }

    /// Builds and insists on validity; used by every catalog builder so table
    /// transcription errors surface immediately.
    pub fn new_validated(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        involution: Vec<usize>,
        table: Vec<Vec<Slice>>,
    ) -> Result<Self> {
        let h = Self::new(name, labels, identity, involution, table)?;
        let report = h.validate_axioms();
        if !report.is_valid() {
            return Err(HyperError::AxiomError(format!(
                "{}: {:?}",
                h.name, report.violations
            )));
        }
        Ok(h)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn involution(&self, i: usize) -> usize {
        self.involution[i]
    }

    pub fn involution_map(&self) -> &[usize] {
        &self.involution
    }

    pub fn slice(&self, i: usize, j: usize) -> &Slice {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].get(&k).cloned().unwrap_or_else(zero)
    }

    pub fn dirac(&self, i: usize) -> Measure {
        Measure::dirac(self.order(), i)
    }

    /// Replaces one tensor slice; used for perturbation experiments and
    /// corruption audits.
    pub fn with_slice_replaced(&self, i: usize, j: usize, slice: Slice) -> Self {
        let mut out = self.clone();
        out.table[i][j] = slice;
        out
    }

    /// The same hypergroup with elements renamed through `perm`
    /// (old index `i` becomes new index `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        let mut involution = vec![0; n];
        let mut table = vec![vec![Slice::new(); n]; n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            involution[perm[i]] = perm[self.involution[i]];
            for j in 0..n {
                let slice = self.table[i][j]
                    .iter()
                    .map(|(&k, v)| (perm[k], v.clone()))
                    .collect();
                table[perm[i]][perm[j]] = slice;
            }
        }
        FiniteHypergroup {
            name: self.name.clone(),
            labels,
            identity: perm[self.identity],
            involution,
            table,
        }
    }

    /// Convolution of two point masses, as a dense measure.
    pub fn convolve_dirac(&self, i: usize, j: usize) -> Measure {
        let mut coeffs = vec![zero(); self.order()];
        for (&k, v) in &self.table[i][j] {
            coeffs[k] = v.clone();
        }
        Measure { coeffs }
    }

    /// Exact bilinear extension of the point-mass convolution.
    pub fn convolve(&self, a: &Measure, b: &Measure) -> Result<Measure> {
        let n = self.order();
        if a.len() != n || b.len() != n {
            return Err(HyperError::DimensionMismatch(format!(
                "measures of length {} and {} over a hypergroup of order {}",
                a.len(),
                b.len(),
                n
            )));
        }
        let mut coeffs = vec![zero(); n];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let factor = ai * bj;
                for (&k, v) in &self.table[i][j] {
                    coeffs[k] += &factor * v;
                }
            }
        }
        Ok(Measure { coeffs })
    }

    /// Checks HG1, HG2, the involution anti-homomorphism and associativity;
    /// returns every violation with witnesses.
    pub fn validate_axioms(&self) -> ValidationReport {
        let n = self.order();
        let mut violations = Vec::new();

        // HG1: probability measures.
        for i in 0..n {
            for j in 0..n {
                let mut sum = zero();
                for (&k, v) in &self.table[i][j] {
                    if v.is_negative() {
                        violations.push(AxiomViolation::NegativeCoefficient { i, j, k });
                    }
                    sum += v;
                }
                if !sum.is_one() {
                    violations.push(AxiomViolation::SliceSumNotOne {
                        i,
                        j,
                        sum: crate::scalar::format_rational(&sum),
                    });
                }
            }
        }

        // HG2: identity, involution, support condition.
        for x in 0..n {
            let left = &self.table[self.identity][x];
            let right = &self.table[x][self.identity];
            let dirac: Slice = [(x, one())].into_iter().collect();
            if *left != dirac || *right != dirac {
                violations.push(AxiomViolation::IdentityFailure { x });
            }
            if self.involution[self.involution[x]] != x {
                violations.push(AxiomViolation::InvolutionNotSelfInverse { x });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let e_coeff = self.table[i][j].get(&self.identity);
                let has_e = e_coeff.map(|c| !c.is_zero()).unwrap_or(false);
                if has_e != (j == self.involution[i]) {
                    violations.push(AxiomViolation::SupportCondition { i, j });
                }
            }
        }

        // Anti-homomorphism: n(i,j)(k) = n(j-,i-)(k-).
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.structure_constant(i, j, k);
                    let rhs = self.structure_constant(
                        self.involution[j],
                        self.involution[i],
                        self.involution[k],
                    );
                    if lhs != rhs {
                        violations.push(AxiomViolation::AntiHomomorphism { i, j, k });
                    }
                }
            }
        }

        // Associativity, entrywise over all Dirac triples.
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = self.convolve_dirac(i, j);
                for k in 0..n {
                    let jk = self.convolve_dirac(j, k);
                    let lhs = self
                        .convolve(&ij, &self.dirac(k))
                        .expect("internal dimensions agree");
                    let rhs = self
                        .convolve(&self.dirac(i), &jk)
                        .expect("internal dimensions agree");
                    if lhs != rhs {
                        violations.push(AxiomViolation::Associativity { i, j, k });
                        if violations.len() > 256 {
                            break 'outer;
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    /// Haar weights w(x) = 1 / (e-coefficient of x * x^-) and the normalized
    /// invariant measure.
    pub fn haar(&self) -> Result<HaarData> {
        let n = self.order();
        let mut weights = Vec::with_capacity(n);
        for x in 0..n {
            let c = self.structure_constant(x, self.involution[x], self.identity);
            if c.is_zero() {
                return Err(HyperError::AxiomError(format!(
                    "element {x} has no identity mass in x * x^-"
                )));
            }
            weights.push(c.recip());
        }
        let total: Scalar = weights.iter().fold(zero(), |acc, w| acc + w);
        let normalized = Measure {
            coeffs: weights.iter().map(|w| w / &total).collect(),
        };
        Ok(HaarData {
            weights,
            total,
            normalized,
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.table[i][j] != self.table[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Restricts to a convolution- and involution-closed subset containing
    /// the identity.
    pub fn subhypergroup(&self, subset: &BTreeSet<usize>) -> Result<Subhypergroup> {
        if !subset.contains(&self.identity) {
            return Err(HyperError::Malformed(
                "subset does not contain the identity".into(),
            ));
        }
        let injection: Vec<usize> = subset.iter().copied().collect();
        let position: BTreeMap<usize, usize> = injection
            .iter()
            .enumerate()
            .map(|(local, &global)| (global, local))
            .collect();
        for &x in &injection {
            if !subset.contains(&self.involution[x]) {
                return Err(HyperError::NotClosed {
                    i: x,
                    j: x,
                    k: self.involution[x],
                });
            }
        }
        let m = injection.len();
        let mut table = vec![vec![Slice::new(); m]; m];
        for (a, &i) in injection.iter().enumerate() {
            for (b, &j) in injection.iter().enumerate() {
                for (&k, v) in &self.table[i][j] {
                    match position.get(&k) {
                        Some(&local) => {
                            table[a][b].insert(local, v.clone());
                        }
                        None => return Err(HyperError::NotClosed { i, j, k }),
                    }
                }
            }
        }
        let labels = injection.iter().map(|&x| self.labels[x].clone()).collect();
        let involution = injection.iter().map(|&x| position[&self.involution[x]]).collect();
        let hyper = FiniteHypergroup::new(
            format!("{}|sub", self.name),
            labels,
            position[&self.identity],
            involution,
            table,
        )?;
        Ok(Subhypergroup { hyper, injection })
    }

    /// Quotient by a subhypergroup: classes are the supports of x * omega_H0
    /// and the convolution is the omega-averaged pushforward on classes.
    pub fn quotient_mod_subhypergroup(&self, subset: &BTreeSet<usize>) -> Result<FiniteHypergroup> {
        let sub = self.subhypergroup(subset)?;
        let n = self.order();
        let omega_sub = sub.hyper.haar()?;
        // omega_H0 pushed into the parent.
        let mut omega = vec![zero(); n];
        for (local, &global) in sub.injection.iter().enumerate() {
            omega[global] = omega_sub.normalized.coeff(local).clone();
        }
        let omega = Measure { coeffs: omega };

        let smeared: Vec<Measure> = (0..n)
            .map(|x| self.convolve(&self.dirac(x), &omega))
            .collect::<Result<_>>()?;
        let supports: Vec<BTreeSet<usize>> = smeared.iter().map(|m| m.support()).collect();

        // The supports must partition the element set.
        for x in 0..n {
            for &y in &supports[x] {
                if supports[y] != supports[x] {
                    return Err(HyperError::QuotientIllDefined(format!(
                        "element {y} lies in the class of {x} but spans a different class"
                    )));
                }
            }
        }
        let mut classes: Vec<BTreeSet<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for x in 0..n {
            if let Some(pos) = classes.iter().position(|c| *c == supports[x]) {
                class_of[x] = pos;
            } else {
                classes.push(supports[x].clone());
                class_of[x] = classes.len() - 1;
            }
        }
        let m = classes.len();

        // Involution must descend to classes.
        let mut class_inv = vec![usize::MAX; m];
        for x in 0..n {
            let target = class_of[self.involution[x]];
            let c = class_of[x];
            if class_inv[c] == usize::MAX {
                class_inv[c] = target;
            } else if class_inv[c] != target {
                return Err(HyperError::QuotientIllDefined(format!(
                    "involution is not constant on the class of element {x}"
                )));
            }
        }

        // Averaged pushforward, checked against every representative pair.
        let mut table = vec![vec![Slice::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                let mut chosen: Option<Vec<Scalar>> = None;
                for &x in &classes[a] {
                    for &y in &classes[b] {
                        let mixed = self.convolve(&smeared[x], &smeared[y])?;
                        let mut pushed = vec![zero(); m];
                        for (k, v) in mixed.coeffs().iter().enumerate() {
                            pushed[class_of[k]] += v;
                        }
                        match &chosen {
                            None => chosen = Some(pushed),
                            Some(existing) if *existing != pushed => {
                                return Err(HyperError::QuotientIllDefined(format!(
                                    "pushforward of classes {a} and {b} depends on representatives ({x},{y})"
                                )));
                            }
                            Some(_) => {}
                        }
                    }
                }
                let pushed = chosen.expect("classes are nonempty");
                for (k, v) in pushed.into_iter().enumerate() {
                    if !v.is_zero() {
                        table[a][b].insert(k, v);
                    }
                }
            }
        }

        let labels = classes
            .iter()
            .map(|c| {
                let rep = *c.iter().next().expect("nonempty class");
                format!("[{}]", self.labels[rep])
            })
            .collect();
        FiniteHypergroup::new(
            format!("{}/sub", self.name),
            labels,
            class_of[self.identity],
            class_inv,
            table,
        )
    }
}

/// Label-invariant fingerprint used to prune the isomorphism search.
fn fingerprint(h: &FiniteHypergroup, weights: &[Scalar], x: usize) -> (bool, bool, Scalar, Vec<(u8, Scalar)>) {
    let mut diag: Vec<(u8, Scalar)> = h
        .slice(x, x)
        .iter()
        .map(|(&k, v)| {
            let marker = if k == x {
                0
            } else if k == h.identity() {
                1
            } else if k == h.involution(x) {
                2
            } else {
                3
            };
            (marker, v.clone())
        })
        .collect();
    diag.sort();
    (
        x == h.identity(),
        h.involution(x) == x,
        weights[x].clone(),
        diag,
    )
}

/// Searches for a structure-preserving bijection from `a` onto `b`. Candidate
/// sets come from per-element fingerprints; beyond that it backtracks.
pub fn isomorphic(a: &FiniteHypergroup, b: &FiniteHypergroup) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let wa = a.haar().ok()?.weights;
    let wb = b.haar().ok()?.weights;
    let fa: Vec<_> = (0..n).map(|x| fingerprint(a, &wa, x)).collect();
    let fb: Vec<_> = (0..n).map(|x| fingerprint(b, &wb, x)).collect();
    let mut candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| fb[y] == fa[x]).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    candidates[a.identity()] = vec![b.identity()];

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| candidates[x].len());

    fn consistent(
        a: &FiniteHypergroup,
        b: &FiniteHypergroup,
        map: &[Option<usize>],
        x: usize,
    ) -> bool {
        let sx = map[x].expect("x is assigned");
        if let Some(sxi) = map[a.involution(x)] {
            if b.involution(sx) != sxi {
                return false;
            }
        }
        for y in 0..a.order() {
            let Some(sy) = map[y] else { continue };
            for &((i, j), (si, sj)) in [((x, y), (sx, sy)), ((y, x), (sy, sx))].iter() {
                let slice_a = a.slice(i, j);
                let slice_b = b.slice(si, sj);
                if slice_a.len() != slice_b.len() {
                    return false;
                }
                for (&k, v) in slice_a {
                    if let Some(sk) = map[k] {
                        if slice_b.get(&sk) != Some(v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(
        a: &FiniteHypergroup,
        b: &FiniteHypergroup,
        order: &[usize],
        candidates: &[Vec<usize>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if consistent(a, b, map, x)
                && search(a, b, order, candidates, map, used, depth + 1)
            {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if search(a, b, &order, &candidates, &mut map, &mut used, 0) {
        let out: Vec<usize> = map.into_iter().map(|m| m.expect("complete")).collect();
        // Final full verification.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if a.structure_constant(i, j, k) != b.structure_constant(out[i], out[j], out[k])
                    {
                        return None;
                    }
                }
            }
        }
        Some(out)
    } else {
        None
    }
}
