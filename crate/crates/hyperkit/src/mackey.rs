//! Group actions on hypergroups: semidirect products H⋊G, the induced action
//! on the dual, orbits and stabilizers, irreducible representations of the
//! semidirect product built by induction from stabilizer data, and the closed
//! forms this structure yields for characters induced from the group factor.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{FiniteHypergroup, Slice, Subhypergroup};
use crate::characters::{
    characters_commutative, dual_from_characters, CharTag, CharacterTable, NormalizedCharacter,
    Representation,
};
use crate::error::{HyperError, Result};
use crate::groups::{group, GroupData, CATALOG};
use crate::pairs::{induce_representation, HypergroupPair};
use crate::scalar::{Complex64, Scalar, SnapConfig, Weight};

/// An action of a finite group on a hypergroup: one verified automorphism
/// (as an index permutation of the target) per group element.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub group: GroupData,
    pub target: FiniteHypergroup,
    pub maps: Vec<Vec<usize>>,
}

/// The single product index of two point masses in a group table.
fn group_product(g: &FiniteHypergroup, a: usize, b: usize) -> Result<usize> {
    let slice = g.slice(a, b);
    if slice.len() == 1 {
        Ok(*slice.keys().next().expect("nonempty slice"))
    } else {
        Err(HyperError::InvalidAction(format!(
            "{} is not a group: product of elements {a},{b} is not a point mass",
            g.name()
        )))
    }
}

impl GroupAction {
    pub fn new(
        group: GroupData,
        target: FiniteHypergroup,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let g = &group.hypergroup;
        let ng = g.order();
        let nh = target.order();
        if maps.len() != ng {
            return Err(HyperError::InvalidAction(format!(
                "{} maps supplied for a group of order {ng}",
                maps.len()
            )));
        }
        for (s, map) in maps.iter().enumerate() {
            if map.len() != nh {
                return Err(HyperError::InvalidAction(format!(
                    "map of group element {s} is not defined on all {nh} elements"
                )));
            }
            let mut seen = vec![false; nh];
            for &x in map {
                if x >= nh || seen[x] {
                    return Err(HyperError::InvalidAction(format!(
                        "map of group element {s} is not a permutation"
                    )));
                }
                seen[x] = true;
            }
            if map[target.identity()] != target.identity() {
                return Err(HyperError::InvalidAction(format!(
                    "map of group element {s} moves the identity"
                )));
            }
            for x in 0..nh {
                if map[target.involution(x)] != target.involution(map[x]) {
                    return Err(HyperError::InvalidAction(format!(
                        "map of group element {s} does not commute with the involution"
                    )));
                }
                for y in 0..nh {
                    for k in 0..nh {
                        if target.structure_constant(map[x], map[y], map[k])
                            != target.structure_constant(x, y, k)
                        {
                            return Err(HyperError::InvalidAction(format!(
                                "map of group element {s} is not an automorphism at ({x},{y},{k})"
                            )));
                        }
                    }
                }
            }
        }
        if maps[g.identity()] != (0..nh).collect::<Vec<_>>() {
            return Err(HyperError::InvalidAction(
                "group identity must act as the identity map".into(),
            ));
        }
        for s in 0..ng {
            for t in 0..ng {
                let st = group_product(g, s, t)?;
                for x in 0..nh {
                    if maps[st][x] != maps[s][maps[t][x]] {
                        return Err(HyperError::InvalidAction(format!(
                            "maps are not a homomorphism at group elements {s},{t}"
                        )));
                    }
                }
            }
        }
        Ok(GroupAction {
            group,
            target,
            maps,
        })
    }

    /// Index of the pair (h, g) in the semidirect product element order.
    pub fn pair_index(&self, h: usize, g: usize) -> usize {
        h * self.group.hypergroup.order() + g
    }

    /// Inverse of `pair_index`.
    pub fn pair_parts(&self, idx: usize) -> (usize, usize) {
        let ng = self.group.hypergroup.order();
        (idx / ng, idx % ng)
    }

    /// The semidirect product H⋊G with the twisted convolution
    /// eps_(x,s) * eps_(y,t) = (eps_x * eps_{α_s(y)}) ⊗ eps_{st}.
    pub fn semidirect_product(&self) -> Result<FiniteHypergroup> {
        let h = &self.target;
        let g = &self.group.hypergroup;
        let (nh, ng) = (h.order(), g.order());
        let n = nh * ng;
        let mut labels = Vec::with_capacity(n);
        let mut involution = vec![0; n];
        for x in 0..nh {
            for s in 0..ng {
                labels.push(format!("({},{})", h.label(x), g.label(s)));
                let s_inv = g.involution(s);
                involution[self.pair_index(x, s)] =
                    self.pair_index(self.maps[s_inv][h.involution(x)], s_inv);
            }
        }
        let mut table = vec![vec![Slice::new(); n]; n];
        for x in 0..nh {
            for s in 0..ng {
                for y in 0..nh {
                    for t in 0..ng {
                        let st = group_product(g, s, t)?;
                        let out = &mut table[self.pair_index(x, s)][self.pair_index(y, t)];
                        for (&k, v) in h.slice(x, self.maps[s][y]) {
                            out.insert(self.pair_index(k, st), v.clone());
                        }
                    }
                }
            }
        }
        FiniteHypergroup::new_validated(
            format!("{} ⋊ {}", h.name(), g.name()),
            labels,
            self.pair_index(h.identity(), g.identity()),
            involution,
            table,
        )
    }
}

/// Orbits and stabilizers of the dual action, with the orbit-averaged
/// characters and their weights.
#[derive(Debug, Clone)]
pub struct OrbitData {
    /// Sorted character indices per orbit; the orbit of the trivial character
    /// comes first, the rest are ordered by their smallest member.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// Per character, the sorted group elements fixing it.
    pub stabilizers: Vec<Vec<usize>>,
    /// Per orbit, the uniform average of the member characters over H.
    pub orbital_values: Vec<Vec<Complex64>>,
    /// Per orbit, w(rho) = w(chi) * |orbit|.
    pub weights: Vec<Weight>,
    /// w of the whole dual.
    pub total: Weight,
}

/// One irreducible of the semidirect product: induced from the pair of an
/// orbit representative chi and a stabilizer irrep tau.
#[derive(Debug, Clone)]
pub struct MackeyIrrep {
    pub orbit: usize,
    /// Orbit representative: index into the target's character list.
    pub chi: usize,
    /// Index into the stabilizer's catalog irrep list.
    pub stabilizer_irrep: usize,
    pub representation: Representation,
    pub character: NormalizedCharacter,
}

/// Everything the dual side of a semidirect product needs: the product
/// itself, the target's characters, the dual action, its orbit structure and
/// the full list of irreducibles.
#[derive(Debug, Clone)]
pub struct MackeyMachine {
    pub action: GroupAction,
    pub semidirect: FiniteHypergroup,
    pub target_dual: CharacterTable,
    /// Dual hypergroup of the target, for convolution supports and weights.
    pub dual_table: FiniteHypergroup,
    /// Per group element g, the permutation chi -> chi ∘ α_{g^{-1}} of the
    /// character list.
    pub dual_perms: Vec<Vec<usize>>,
    pub orbits: OrbitData,
    pub irreps: Vec<MackeyIrrep>,
    pub cfg: SnapConfig,
}

/// One violated stabilizer-containment instance: the group element fixes
/// chi_i and chi_j but not chi_k even though chi_k supports their product.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub group_element: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub witnesses: Vec<RegularityWitness>,
    /// When regular: whether the character set of the semidirect product
    /// closes into a commutative hypergroup.
    pub semidirect_dual_commutative: Option<bool>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Finds the catalog group isomorphic to a concrete group table, with the
/// permutation carrying catalog indices onto its indices.
fn match_group_catalog(sub: &FiniteHypergroup) -> Result<(GroupData, Vec<usize>)> {
    for name in CATALOG {
        let gd = group(name)?;
        if gd.hypergroup.order() != sub.order() {
            continue;
        }
        if let Some(perm) = crate::algebra::isomorphic(&gd.hypergroup, sub) {
            return Ok((gd, perm));
        }
    }
    Err(HyperError::UnknownName(format!(
        "no catalog group of order {} matches the stabilizer",
        sub.order()
    )))
}

/// The finite average over s in G of chi(α_s(h)) ch(tau)(s g s^-1) restricted
/// to the stabilizer of chi: the normalized character of the representation
/// induced from (chi, tau), computed without building any matrices.
/// `tau_values` holds normalized character values on group indices; entries
/// outside the stabilizer are never read.
fn averaged_character(
    g: &FiniteHypergroup,
    dual_perms: &[Vec<usize>],
    chars: &[NormalizedCharacter],
    stab: &BTreeSet<usize>,
    nh: usize,
    chi: usize,
    tau_values: &[Complex64],
) -> Result<Vec<Complex64>> {
    let ng = g.order();
    let mut out = vec![Complex64::new(0.0, 0.0); nh * ng];
    for x in 0..nh {
        for t in 0..ng {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in 0..ng {
                let conj = group_product(g, group_product(g, s, t)?, g.involution(s))?;
                if !stab.contains(&conj) {
                    continue;
                }
                let moved = dual_perms[g.involution(s)][chi];
                acc += chars[moved].values[x] * tau_values[conj];
            }
            out[x * ng + t] = acc / ng as f64;
        }
    }
    Ok(out)
}

impl MackeyMachine {
    pub fn new(action: GroupAction, cfg: &SnapConfig) -> Result<Self> {
        let semidirect = action.semidirect_product()?;
        let target_dual = characters_commutative(&action.target, cfg)?;
        let chars = &target_dual.characters;
        let n_chars = chars.len();
        let labels = (0..n_chars).map(|i| format!("ch{i}")).collect();
        let dual_table = dual_from_characters(
            &action.target,
            chars,
            labels,
            format!("dual({})", action.target.name()),
            cfg,
        )?;
        let g = &action.group.hypergroup;
        let ng = g.order();
        let nh = action.target.order();

        // Dual action: chi -> chi ∘ α_{g^{-1}}, matched back into the list.
        let mut dual_perms = Vec::with_capacity(ng);
        for s in 0..ng {
            let s_inv = g.involution(s);
            let mut perm = vec![usize::MAX; n_chars];
            let mut seen = vec![false; n_chars];
            for (i, c) in chars.iter().enumerate() {
                let moved: Vec<Complex64> =
                    (0..nh).map(|x| c.values[action.maps[s_inv][x]]).collect();
                let j = chars
                    .iter()
                    .position(|d| {
                        d.values
                            .iter()
                            .zip(&moved)
                            .all(|(a, b)| (a - b).norm() < 1e-9)
                    })
                    .ok_or_else(|| {
                        HyperError::InvalidAction(format!(
                            "dual action of group element {s} moves character {i} off the list"
                        ))
                    })?;
                if seen[j] {
                    return Err(HyperError::InvalidAction(format!(
                        "dual action of group element {s} is not injective"
                    )));
                }
                seen[j] = true;
                perm[i] = j;
            }
            dual_perms.push(perm);
        }

        // Orbits, stabilizers, orbital averages and weights.
        let mut orbit_of = vec![usize::MAX; n_chars];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut stabilizers = Vec::with_capacity(n_chars);
        for i in 0..n_chars {
            stabilizers.push(
                (0..ng)
                    .filter(|&s| dual_perms[s][i] == i)
                    .collect::<Vec<_>>(),
            );
        }
        for i in 0..n_chars {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..ng).map(|s| dual_perms[s][i]).collect();
            let orbit: Vec<usize> = members.into_iter().collect();
            for &m in &orbit {
                orbit_of[m] = orbits.len();
                if orbit.len() * stabilizers[m].len() != ng {
                    return Err(HyperError::InvalidAction(format!(
                        "orbit of character {m} violates the orbit-stabilizer count"
                    )));
                }
            }
            orbits.push(orbit);
        }
        let mut orbital_values = Vec::with_capacity(orbits.len());
        let mut weights = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let values: Vec<Complex64> = (0..nh)
                .map(|x| {
                    orbit.iter().map(|&m| chars[m].values[x]).sum::<Complex64>()
                        / orbit.len() as f64
                })
                .collect();
            orbital_values.push(values);
            weights.push(target_dual.plancherel[orbit[0]].mul_int(orbit.len() as u64));
        }
        let total = target_dual.total.clone();
        let weight_sum: f64 = weights.iter().map(|w| w.as_f64()).sum();
        if (weight_sum - total.as_f64()).abs() > 1e-7 {
            return Err(HyperError::InvalidAction(
                "orbit weights do not add up to the dual weight".into(),
            ));
        }
        let orbits = OrbitData {
            orbits,
            orbit_of,
            stabilizers,
            orbital_values,
            weights,
            total,
        };

        // One irreducible per (orbit, stabilizer irrep), induced from
        // H ⋊ G(chi) with the representation (x, s) -> chi(x) tau(s).
        let mut irreps = Vec::new();
        for (o, orbit) in orbits.orbits.iter().enumerate() {
            let chi = orbit[0];
            let stab = &orbits.stabilizers[chi];
            let stab_set: BTreeSet<usize> = stab.iter().copied().collect();
            let sub = g.subhypergroup(&stab_set)?;
            let (catalog_gd, perm) = match_group_catalog(&sub.hyper)?;
            let subset: BTreeSet<usize> = (0..nh)
                .flat_map(|x| stab.iter().map(move |&s| x * ng + s))
                .collect();
            let k0 = semidirect.subhypergroup(&subset)?;
            for (ti, rep) in catalog_gd.irreps.iter().enumerate() {
                let mut tau_local =
                    vec![DMatrix::<Complex64>::zeros(0, 0); stab.len()];
                for (i, m) in rep.matrices.iter().enumerate() {
                    tau_local[perm[i]] = m.clone();
                }
                let matrices: Vec<DMatrix<Complex64>> = k0
                    .injection
                    .iter()
                    .map(|&kidx| {
                        let (x, s) = (kidx / ng, kidx % ng);
                        let s_local = stab
                            .iter()
                            .position(|&z| z == s)
                            .expect("element of the stabilizer block");
                        &tau_local[s_local] * chars[chi].values[x]
                    })
                    .collect();
                let pi0 = Representation { matrices };
                let induced = induce_representation(&semidirect, &k0.injection, &pi0)?;
                let dim = induced.dim();
                if dim != orbit.len() * rep.dim() {
                    return Err(HyperError::Decomposition(format!(
                        "induced representation of orbit {o}, stabilizer irrep {ti} has \
                         dimension {dim}, expected {}",
                        orbit.len() * rep.dim()
                    )));
                }
                let values = induced.normalized_character_values();
                let mut tau_values = vec![Complex64::new(0.0, 0.0); ng];
                for (s_local, &s) in stab.iter().enumerate() {
                    tau_values[s] = tau_local[s_local].trace() / rep.dim() as f64;
                }
                let expected = averaged_character(
                    g, &dual_perms, chars, &stab_set, nh, chi, &tau_values,
                )?;
                let worst = values
                    .iter()
                    .zip(&expected)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0_f64, f64::max);
                if worst > 1e-7 {
                    return Err(HyperError::Decomposition(format!(
                        "induced character of orbit {o}, stabilizer irrep {ti} disagrees \
                         with its group-averaged form (residual {worst:.3e})"
                    )));
                }
                let hyperdim = target_dual.plancherel[chi].mul_int(dim as u64);
                irreps.push(MackeyIrrep {
                    orbit: o,
                    chi,
                    stabilizer_irrep: ti,
                    representation: induced,
                    character: NormalizedCharacter {
                        values,
                        dim,
                        hyperdim,
                        tag: CharTag::MackeyIrrep,
                    },
                });
            }
        }
        irreps.sort_by_key(|m| (m.character.dim, m.chi, m.stabilizer_irrep));

        Ok(MackeyMachine {
            action,
            semidirect,
            target_dual,
            dual_table,
            dual_perms,
            orbits,
            irreps,
            cfg: *cfg,
        })
    }

    /// The characters of the semidirect product, in the fixed irrep order.
    pub fn characters(&self) -> Vec<NormalizedCharacter> {
        self.irreps.iter().map(|m| m.character.clone()).collect()
    }

    /// Recomputes the normalized character of irrep `k` directly from the
    /// finite group average over stabilizer data, bypassing the stored
    /// induced matrices entirely.
    pub fn orbit_averaged_character(&self, k: usize) -> Result<Vec<Complex64>> {
        let irrep = self
            .irreps
            .get(k)
            .ok_or_else(|| HyperError::UnknownName(format!("no irrep with index {k}")))?;
        let g = &self.action.group.hypergroup;
        let ng = g.order();
        let nh = self.action.target.order();
        let stab = &self.orbits.stabilizers[irrep.chi];
        let stab_set: BTreeSet<usize> = stab.iter().copied().collect();
        let sub = g.subhypergroup(&stab_set)?;
        let (catalog_gd, perm) = match_group_catalog(&sub.hyper)?;
        let rep = &catalog_gd.irreps[irrep.stabilizer_irrep];
        let mut tau_values = vec![Complex64::new(0.0, 0.0); ng];
        for (i, m) in rep.matrices.iter().enumerate() {
            tau_values[sub.injection[perm[i]]] = m.trace() / rep.dim() as f64;
        }
        averaged_character(
            g,
            &self.dual_perms,
            &self.target_dual.characters,
            &stab_set,
            nh,
            irrep.chi,
            &tau_values,
        )
    }

    /// Stabilizer-containment check along every dual-convolution support,
    /// plus (on pass) the closure of the semidirect character set into a
    /// commutative hypergroup.
    pub fn regularity(&self) -> Result<RegularityReport> {
        let n = self.target_dual.characters.len();
        let mut witnesses = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let both: Vec<usize> = self.orbits.stabilizers[i]
                    .iter()
                    .copied()
                    .filter(|s| self.orbits.stabilizers[j].contains(s))
                    .collect();
                for &k in self.dual_table.slice(i, j).keys() {
                    for &s in &both {
                        if !self.orbits.stabilizers[k].contains(&s) {
                            witnesses.push(RegularityWitness {
                                i,
                                j,
                                k,
                                group_element: s,
                            });
                        }
                    }
                }
            }
        }
        let semidirect_dual_commutative = if witnesses.is_empty() {
            let chars = self.characters();
            let labels = (0..chars.len()).map(|i| format!("π{i}")).collect();
            let built = dual_from_characters(
                &self.semidirect,
                &chars,
                labels,
                format!("dual({})", self.semidirect.name()),
                &self.cfg,
            );
            Some(match built {
                Ok(dual) => dual.validate_axioms().is_valid() && dual.is_commutative(),
                Err(_) => false,
            })
        } else {
            None
        };
        Ok(RegularityReport {
            witnesses,
            semidirect_dual_commutative,
        })
    }

    /// The dual hypergroup of the semidirect product, on the irrep characters.
    pub fn semidirect_dual(&self) -> Result<FiniteHypergroup> {
        let chars = self.characters();
        let labels = (0..chars.len()).map(|i| format!("π{i}")).collect();
        dual_from_characters(
            &self.semidirect,
            &chars,
            labels,
            format!("dual({})", self.semidirect.name()),
            &self.cfg,
        )
    }

    /// The characters fixed by a group element, as a subhypergroup of the
    /// target's dual; closure is verified, not assumed.
    pub fn fixed_dual_subhypergroup(&self, g: usize) -> Result<Subhypergroup> {
        let subset: BTreeSet<usize> = (0..self.target_dual.characters.len())
            .filter(|&i| self.dual_perms[g][i] == i)
            .collect();
        self.dual_table.subhypergroup(&subset)
    }

    /// Checks that whenever t g t^-1 fixes a character, the pullback of that
    /// character through t lies in the fixed set of g.
    pub fn conjugation_compatibility_holds(&self) -> Result<bool> {
        let gh = &self.action.group.hypergroup;
        let ng = gh.order();
        for g in 0..ng {
            for t in 0..ng {
                let conj = group_product(gh, group_product(gh, t, g)?, gh.involution(t))?;
                for sigma in 0..self.target_dual.characters.len() {
                    if self.orbits.stabilizers[sigma].contains(&conj) {
                        let pulled = self.dual_perms[gh.involution(t)][sigma];
                        if self.dual_perms[g][pulled] != pulled {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Closed form for the character induced from the group factor:
    /// value at (h, g) = (w(fixed(g)) / w(dual)) * omega_{fixed(g)}(h) * tau(g),
    /// evaluated through the fixed characters' weights.
    pub fn induced_from_group_closed_form(
        &self,
        tau_values: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        let ng = self.action.group.hypergroup.order();
        let nh = self.action.target.order();
        let chars = &self.target_dual.characters;
        let total = self.target_dual.total.as_f64();
        let mut out = vec![Complex64::new(0.0, 0.0); nh * ng];
        for g in 0..ng {
            let fixed: Vec<usize> = (0..chars.len())
                .filter(|&i| self.dual_perms[g][i] == i)
                .collect();
            for x in 0..nh {
                let mut acc = Complex64::new(0.0, 0.0);
                for &i in &fixed {
                    acc += chars[i].values[x] * self.target_dual.plancherel[i].as_f64();
                }
                out[x * ng + g] = acc / total * tau_values[g];
            }
        }
        Ok(out)
    }

    /// The same induced character assembled from its irreducible pieces: the
    /// orbit-weighted mixture of the averaged characters of (chi, tau|stab).
    pub fn orbit_mixture_of_induced(
        &self,
        tau_values: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        let g = &self.action.group.hypergroup;
        let nh = self.action.target.order();
        let total = self.orbits.total.as_f64();
        let n = nh * g.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (o, orbit) in self.orbits.orbits.iter().enumerate() {
            let chi = orbit[0];
            let stab_set: BTreeSet<usize> =
                self.orbits.stabilizers[chi].iter().copied().collect();
            let piece = averaged_character(
                g,
                &self.dual_perms,
                &self.target_dual.characters,
                &stab_set,
                nh,
                chi,
                tau_values,
            )?;
            let coeff = self.orbits.weights[o].as_f64() / total;
            for (a, b) in out.iter_mut().zip(&piece) {
                *a += b * coeff;
            }
        }
        Ok(out)
    }

    /// Exact per-orbit mixture coefficients w(rho) / w(dual), when every
    /// weight snapped.
    pub fn orbit_weight_fractions(&self) -> Option<Vec<Scalar>> {
        let total = self.orbits.total.exact()?;
        self.orbits
            .weights
            .iter()
            .map(|w| w.exact().map(|v| v / total))
            .collect()
    }

    /// The pair (H⋊G, G) with the irrep characters as the big dual and the
    /// catalog group data as the small side; ready for restriction,
    /// induction, admissibility and twisting.
    pub fn group_pair(&self) -> Result<HypergroupPair> {
        let ng = self.action.group.hypergroup.order();
        let h0 = self.action.target.identity();
        let subset: BTreeSet<usize> = (0..ng).map(|s| h0 * ng + s).collect();
        let sub = self.semidirect.subhypergroup(&subset)?;
        HypergroupPair::new(
            self.semidirect.clone(),
            sub.hyper,
            sub.injection,
            self.characters(),
            self.action.group.characters.clone(),
            self.action.group.irreps.clone(),
            self.cfg,
        )
    }
}

/// Z2 swapping the two conjugate elements of the order-3 deformation.
pub fn swap_action_order3(p: &Scalar) -> Result<GroupAction> {
    GroupAction::new(
        group("Z2")?,
        crate::constructions::build_zp3(p)?,
        vec![vec![0, 1, 2], vec![0, 2, 1]],
    )
}

/// Z2 swapping the two conjugate elements of the order-4 deformation.
pub fn inversion_action_order4(p: &Scalar, r: &Scalar) -> Result<GroupAction> {
    GroupAction::new(
        group("Z2")?,
        crate::constructions::build_zpr4(p, r)?,
        vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
    )
}

/// Z3 cycling the three involutions of the Klein four-group.
pub fn cycle_action_klein() -> Result<GroupAction> {
    GroupAction::new(
        group("Z3")?,
        group("Z2xZ2")?.hypergroup,
        vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::isomorphic;
    use crate::scalar::{one, rat, rat_int, to_f64, zero};

    fn machine_order3(p: &Scalar) -> MackeyMachine {
        MackeyMachine::new(swap_action_order3(p).unwrap(), &SnapConfig::default()).unwrap()
    }

    #[test]
    fn semidirect_of_group_points_recovers_groups() {
        let m = machine_order3(&rat_int(1));
        assert!(isomorphic(&m.semidirect, &group("S3").unwrap().hypergroup).is_some());
        let klein = MackeyMachine::new(cycle_action_klein().unwrap(), &SnapConfig::default())
            .unwrap();
        assert!(isomorphic(&klein.semidirect, &group("A4").unwrap().hypergroup).is_some());
        let d4 = MackeyMachine::new(
            inversion_action_order4(&rat_int(1), &rat_int(1)).unwrap(),
            &SnapConfig::default(),
        )
        .unwrap();
        assert!(isomorphic(&d4.semidirect, &group("D4").unwrap().hypergroup).is_some());
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let h = crate::constructions::build_zp3(&rat(1, 2)).unwrap();
        let z2 = group("Z2").unwrap();
        let action =
            GroupAction::new(z2.clone(), h.clone(), vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let k = action.semidirect_product().unwrap();
        let product = crate::constructions::direct_product(&h, &z2.hypergroup).unwrap();
        assert!(isomorphic(&k, &product).is_some());
    }

    #[test]
    fn orbits_and_stabilizers_of_swap() {
        let m = machine_order3(&rat(1, 2));
        assert_eq!(m.orbits.orbits, vec![vec![0], vec![1, 2]]);
        assert_eq!(m.orbits.stabilizers[0], vec![0, 1]);
        assert_eq!(m.orbits.stabilizers[1], vec![0]);
        // Orbital characters are invariant under the dual action.
        for (o, orbit) in m.orbits.orbits.iter().enumerate() {
            for &member in orbit {
                for x in 0..3 {
                    let direct = m.orbits.orbital_values[o][x];
                    let moved = m.orbits.orbital_values[o][m.action.maps[1][x]];
                    assert!((direct - moved).norm() < 1e-10, "{member}");
                }
            }
        }
        assert_eq!(m.orbits.weights[0], Weight::Exact(one()));
        assert_eq!(m.orbits.weights[1], Weight::Exact(rat_int(4))); // 2 * (1/p)
    }

    #[test]
    fn irreps_of_deformed_s3() {
        let p = rat(1, 2);
        let m = machine_order3(&p);
        let dims: Vec<usize> = m.irreps.iter().map(|i| i.character.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        // d(pi2) = w(chi1) * dim = (1/p) * 2 = 4 at p = 1/2.
        assert_eq!(m.irreps[2].character.hyperdim, Weight::Exact(rat_int(4)));
        // ch(pi2)(h, e) = Re chi1(h); ch(pi2)(h, flip) = 0.
        let chi1 = &m.target_dual.characters[1];
        for h in 0..3 {
            let at_e = m.irreps[2].character.values[h * 2];
            let at_flip = m.irreps[2].character.values[h * 2 + 1];
            assert!((at_e - Complex64::new(chi1.values[h].re, 0.0)).norm() < 1e-9);
            assert!(at_flip.norm() < 1e-9);
        }
        // Hyperdimension from the generic formula agrees with w(chi) * dim.
        let haar_based = crate::characters::hyperdimension(
            &m.semidirect,
            &m.irreps[2].character,
            &m.cfg,
        )
        .unwrap();
        assert_eq!(haar_based, m.irreps[2].character.hyperdim);
    }

    #[test]
    fn group_case_dimension_count() {
        for m in [
            machine_order3(&rat_int(1)),
            MackeyMachine::new(cycle_action_klein().unwrap(), &SnapConfig::default()).unwrap(),
            MackeyMachine::new(
                inversion_action_order4(&rat_int(1), &rat_int(1)).unwrap(),
                &SnapConfig::default(),
            )
            .unwrap(),
        ] {
            let total: usize = m.irreps.iter().map(|i| i.character.dim.pow(2)).sum();
            assert_eq!(total, m.semidirect.order());
        }
    }

    #[test]
    fn regularity_and_conjugation_compatibility() {
        for m in [
            machine_order3(&rat(1, 2)),
            MackeyMachine::new(cycle_action_klein().unwrap(), &SnapConfig::default()).unwrap(),
            MackeyMachine::new(
                inversion_action_order4(&rat(1, 2), &rat(3, 4)).unwrap(),
                &SnapConfig::default(),
            )
            .unwrap(),
        ] {
            let report = m.regularity().unwrap();
            assert!(report.is_regular());
            assert_eq!(report.semidirect_dual_commutative, Some(true));
            assert!(m.conjugation_compatibility_holds().unwrap());
        }
    }

    #[test]
    fn fixed_characters_and_group_induction() {
        let p = rat(1, 2);
        let m = machine_order3(&p);
        // Fixed set of the flip is the trivial character alone.
        let fixed = m.fixed_dual_subhypergroup(1).unwrap();
        assert_eq!(fixed.injection, vec![0]);
        assert_eq!(fixed.hyper.haar().unwrap().total, one());
        // Closed form for the trivial group character at (h0, flip): p/(p+2).
        let tau0 = vec![Complex64::new(1.0, 0.0); 2];
        let closed = m.induced_from_group_closed_form(&tau0).unwrap();
        assert!((closed[1].re - 1.0 / 5.0).abs() < 1e-9);
        assert!((closed[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        // The orbit-weighted mixture reproduces the closed form everywhere.
        let mixture = m.orbit_mixture_of_induced(&tau0).unwrap();
        for (a, b) in closed.iter().zip(&mixture) {
            assert!((a - b).norm() < 1e-9);
        }
        assert_eq!(
            m.orbit_weight_fractions().unwrap(),
            vec![rat(1, 5), rat(4, 5)]
        );
    }

    #[test]
    fn pair_induction_matches_closed_form() {
        let m = machine_order3(&rat(1, 2));
        let pair = m.group_pair().unwrap();
        for tau in 0..2 {
            let coeffs = pair.induced_character(tau).unwrap();
            let assembled: Vec<Complex64> = (0..m.semidirect.order())
                .map(|x| {
                    coeffs
                        .iter()
                        .zip(&pair.dual_big)
                        .map(|(c, ch)| ch.values[x] * to_f64(c))
                        .sum()
                })
                .collect();
            let tau_values: Vec<Complex64> = m.action.group.characters[tau].values.clone();
            let closed = m.induced_from_group_closed_form(&tau_values).unwrap();
            for (a, b) in assembled.iter().zip(&closed) {
                assert!((a - b).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn deformed_s3_pair_twists_to_reference_table() {
        // At p = 1 the q-part of rho0 rho0 must be q/3 g0 + 2q/3 g2.
        let m = machine_order3(&rat_int(1));
        let pair = m.group_pair().unwrap();
        assert!(pair.admissible().unwrap().is_admissible());
        let q = rat(1, 2);
        let twisted = pair.twisted_hypergroup(&q).unwrap();
        assert!(twisted.validate_axioms().is_valid());
        let s = twisted.slice(3, 3); // rho0 rho0
        assert_eq!(s.get(&0).unwrap(), &rat(1, 6)); // q/3
        assert_eq!(s.get(&2).unwrap(), &rat(1, 3)); // 2q/3
        assert_eq!(s.get(&3).unwrap(), &rat(1, 2)); // 1-q
        assert_eq!(s.get(&1).cloned().unwrap_or_else(zero), zero());
    }

    #[test]
    fn invalid_actions_are_rejected()  {
        let h = crate::constructions::build_zp3(&rat(1, 2)).unwrap();
        let z2 = group("Z2").unwrap();
        // Swapping identity and h1 is not an automorphism.
        assert!(matches!(
            GroupAction::new(z2.clone(), h.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]),
            Err(HyperError::InvalidAction(_))
        ));
        // Correct maps but in non-homomorphic assignment (flip acting as id
        // while identity acts as the swap).
        assert!(matches!(
            GroupAction::new(z2, h, vec![vec![0, 2, 1], vec![0, 1, 2]]),
            Err(HyperError::InvalidAction(_))
        ));
    }
}
