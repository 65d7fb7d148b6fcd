//! Built-in catalog of finite groups (as hypergroups whose slices are point
//! masses) together with their irreducible representations as explicit
//! matrices. Irreps are needed in matrix form because induction acts on
//! vector-valued functions, not just on traces.

use nalgebra::DMatrix;
use crate::algebra::{FiniteHypergroup, Slice};
use crate::characters::{CharTag, NormalizedCharacter, Representation};
use crate::error::{HyperError, Result};
use crate::scalar::{one, rat_int, Complex64, Weight};

/// A group from the catalog: its convolution table, its irreps in a fixed
/// order (trivial first, then by dimension), and their normalized characters.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub hypergroup: FiniteHypergroup,
    pub irreps: Vec<Representation>,
    pub characters: Vec<NormalizedCharacter>,
}

pub const CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12",
    "Z2xZ2", "S3", "A4", "S4", "D4",
];

/// Looks a group up by name. Cyclic groups are `Z1`..`Z12`.
pub fn group(name: &str) -> Result<GroupData> {
    match name {
        "Z2xZ2" => klein_four(),
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "A4" => alternating_four(),
        "D4" => dihedral_four(),
        _ => {
            if let Some(rest) = name.strip_prefix('Z') {
                if let Ok(n) = rest.parse::<usize>() {
                    if (1..=12).contains(&n) {
                        return cyclic(n);
                    }
                }
            }
            Err(HyperError::UnknownName(format!(
                "group {name:?}; known: {}",
                CATALOG.join(", ")
            )))
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn parity(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&x.to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn closure(generators: &[Vec<usize>], degree: usize) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity];
    let mut frontier = elements.clone();
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = compose(g, &p);
            if !elements.contains(&q) {
                elements.push(q.clone());
                frontier.push(q);
            }
        }
    }
    elements.sort();
    elements
}

/// Cayley table of a listed permutation group; the identity must come first.
fn group_from_perms(name: &str, elements: &[Vec<usize>]) -> Result<FiniteHypergroup> {
    let n = elements.len();
    let index = |p: &[usize]| -> Result<usize> {
        elements
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| HyperError::Malformed(format!("{name}: element list not closed")))
    };
    let mut table = vec![vec![Slice::new(); n]; n];
    let mut involution = vec![0; n];
    for i in 0..n {
        involution[i] = index(&invert(&elements[i]))?;
        for j in 0..n {
            let k = index(&compose(&elements[i], &elements[j]))?;
            table[i][j].insert(k, one());
        }
    }
    let labels = elements.iter().map(|p| cycle_label(p)).collect();
    FiniteHypergroup::new_validated(name, labels, 0, involution, table)
}

/// Matrix of a permutation on the difference basis f_i = e_i - e_{i+1};
/// this is the standard (n-1)-dimensional representation of S_n.
fn difference_basis_matrix(p: &[usize]) -> DMatrix<Complex64> {
    let n = p.len();
    let mut m = DMatrix::<Complex64>::zeros(n - 1, n - 1);
    for j in 0..n - 1 {
        // Image of f_j is e_{p(j)} - e_{p(j+1)} = sum of f_i over the
        // telescoping range between the two image points.
        let (a, b) = (p[j], p[j + 1]);
        if a < b {
            for i in a..b {
                m[(i, j)] += c(1.0, 0.0);
            }
        } else {
            for i in b..a {
                m[(i, j)] -= c(1.0, 0.0);
            }
        }
    }
    m
}

fn scalar_rep(values: Vec<Complex64>) -> Representation {
    Representation::from_character_values(&values)
}

fn finish(
    hypergroup: FiniteHypergroup,
    irreps: Vec<Representation>,
) -> Result<GroupData> {
    let order = hypergroup.order();
    let dim_sq: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    if dim_sq != order {
        return Err(HyperError::Malformed(format!(
            "{}: irrep dimensions square-sum to {dim_sq}, group order is {order}",
            hypergroup.name()
        )));
    }
    for (i, rep) in irreps.iter().enumerate() {
        let residual = rep.homomorphism_residual(&hypergroup);
        if residual > 1e-10 {
            return Err(HyperError::Malformed(format!(
                "{}: irrep {i} fails the homomorphism law (residual {residual:.3e})",
                hypergroup.name()
            )));
        }
    }
    let characters = irreps
        .iter()
        .map(|r| NormalizedCharacter {
            values: r.normalized_character_values(),
            dim: r.dim(),
            hyperdim: Weight::Exact(rat_int(r.dim() as i64)),
            tag: CharTag::GroupIrrep,
        })
        .collect();
    Ok(GroupData {
        hypergroup,
        irreps,
        characters,
    })
}

fn cyclic(n: usize) -> Result<GroupData> {
    let mut table = vec![vec![Slice::new(); n]; n];
    let mut involution = vec![0; n];
    for i in 0..n {
        involution[i] = (n - i) % n;
        for j in 0..n {
            table[i][j].insert((i + j) % n, one());
        }
    }
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let hypergroup = FiniteHypergroup::new_validated(format!("Z{n}"), labels, 0, involution, table)?;
    let tau = std::f64::consts::TAU / n as f64;
    let irreps = (0..n)
        .map(|j| {
            scalar_rep(
                (0..n)
                    .map(|k| Complex64::from_polar(1.0, tau * (j * k % n) as f64))
                    .collect(),
            )
        })
        .collect();
    finish(hypergroup, irreps)
}

fn klein_four() -> Result<GroupData> {
    // Elements in the order e, a, b, ab.
    let pairs = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let mut table = vec![vec![Slice::new(); 4]; 4];
    for (i, &(x1, y1)) in pairs.iter().enumerate() {
        for (j, &(x2, y2)) in pairs.iter().enumerate() {
            table[i][j].insert(index(((x1 + x2) % 2, (y1 + y2) % 2)), one());
        }
    }
    let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
    let hypergroup =
        FiniteHypergroup::new_validated("Z2xZ2", labels, 0, vec![0, 1, 2, 3], table)?;
    let irreps = pairs
        .iter()
        .map(|&(r, s)| {
            scalar_rep(
                pairs
                    .iter()
                    .map(|&(x, y)| c(if (r * x + s * y) % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
                    .collect(),
            )
        })
        .collect();
    finish(hypergroup, irreps)
}

fn symmetric_elements(n: usize) -> Vec<Vec<usize>> {
    let gens: Vec<Vec<usize>> = vec![
        {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            t
        },
        (0..n).map(|i| (i + 1) % n).collect(),
    ];
    closure(&gens, n)
}

fn symmetric(n: usize) -> Result<GroupData> {
    let elements = symmetric_elements(n);
    let hypergroup = group_from_perms(&format!("S{n}"), &elements)?;
    let trivial = scalar_rep(vec![c(1.0, 0.0); elements.len()]);
    let sign = scalar_rep(
        elements
            .iter()
            .map(|p| c(parity(p) as f64, 0.0))
            .collect(),
    );
    let standard = Representation {
        matrices: elements.iter().map(|p| difference_basis_matrix(p)).collect(),
    };
    let irreps = match n {
        3 => vec![trivial, sign, standard],
        4 => {
            let pairing = Representation {
                matrices: elements
                    .iter()
                    .map(|p| difference_basis_matrix(&pairing_action(p)))
                    .collect(),
            };
            let standard_sign = Representation {
                matrices: elements
                    .iter()
                    .zip(&standard.matrices)
                    .map(|(p, m)| m * c(parity(p) as f64, 0.0))
                    .collect(),
            };
            vec![trivial, sign, pairing, standard, standard_sign]
        }
        _ => {
            return Err(HyperError::UnknownName(format!(
                "no irrep list for S{n}"
            )))
        }
    };
    finish(hypergroup, irreps)
}

/// Action of a permutation of {0,1,2,3} on the three pairings 0|1+2|3,
/// 0|2+1|3, 0|3+1|2, indexed by the partner of 0.
fn pairing_action(p: &[usize]) -> Vec<usize> {
    let inv = invert(p);
    (0..3)
        .map(|i| {
            let partner_of_zero = p[partner(i, inv[0])];
            partner_of_zero - 1
        })
        .collect()
}

fn partner(pairing: usize, x: usize) -> usize {
    // In pairing i, 0 is paired with i+1 and the remaining two points pair up.
    let a = pairing + 1;
    match x {
        0 => a,
        _ if x == a => 0,
        _ => {
            let rest: Vec<usize> = (1..4).filter(|&y| y != a).collect();
            if x == rest[0] {
                rest[1]
            } else {
                rest[0]
            }
        }
    }
}

fn alternating_four() -> Result<GroupData> {
    let elements: Vec<Vec<usize>> = symmetric_elements(4)
        .into_iter()
        .filter(|p| parity(p) == 1)
        .collect();
    let hypergroup = group_from_perms("A4", &elements)?;
    let trivial = scalar_rep(vec![c(1.0, 0.0); elements.len()]);
    // The pairing action sends A4 onto the rotation subgroup of S3; the class
    // in Z3 is read off from where the image sends pairing 0.
    let class: Vec<usize> = elements
        .iter()
        .map(|p| {
            let sigma = pairing_action(p);
            sigma[0]
        })
        .collect();
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let chi = |power: usize| {
        scalar_rep(
            class
                .iter()
                .map(|&cl| omega.powu((power * cl) as u32))
                .collect(),
        )
    };
    let standard = Representation {
        matrices: elements.iter().map(|p| difference_basis_matrix(p)).collect(),
    };
    finish(hypergroup, vec![trivial, chi(1), chi(2), standard])
}

fn dihedral_four() -> Result<GroupData> {
    let r = vec![1usize, 2, 3, 0];
    let s = vec![0usize, 3, 2, 1];
    // Words r^a s^b in the order e, r, r2, r3, s, rs, r2s, r3s.
    let mut elements = Vec::with_capacity(8);
    let mut labels = Vec::with_capacity(8);
    for b in 0..2 {
        for a in 0..4 {
            let mut word: Vec<usize> = (0..4).collect();
            for _ in 0..a {
                word = compose(&r, &word);
            }
            if b == 1 {
                word = compose(&word, &s);
            }
            elements.push(word);
            let stem = ["e", "r", "r2", "r3"][a];
            labels.push(if b == 0 {
                stem.to_string()
            } else if a == 0 {
                "s".to_string()
            } else {
                format!("{stem}s")
            });
        }
    }
    let n = 8;
    let index = |p: &Vec<usize>| elements.iter().position(|q| q == p).unwrap();
    let mut table = vec![vec![Slice::new(); n]; n];
    let mut involution = vec![0; n];
    for i in 0..n {
        involution[i] = index(&invert(&elements[i]));
        for j in 0..n {
            table[i][j].insert(index(&compose(&elements[i], &elements[j])), one());
        }
    }
    let hypergroup = FiniteHypergroup::new_validated("D4", labels, 0, involution, table)?;
    let sign_pair = |on_r: f64, on_s: f64| {
        scalar_rep(
            (0..n)
                .map(|i| {
                    let (a, b) = (i % 4, i / 4);
                    c(on_r.powi(a as i32) * on_s.powi(b as i32), 0.0)
                })
                .collect(),
        )
    };
    let rot = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let refl = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let two_dim = Representation {
        matrices: (0..n)
            .map(|i| {
                let (a, b) = (i % 4, i / 4);
                let mut m = DMatrix::<Complex64>::identity(2, 2);
                for _ in 0..a {
                    m = &rot * m;
                }
                if b == 1 {
                    m = m * &refl;
                }
                m
            })
            .collect(),
    };
    finish(
        hypergroup,
        vec![
            sign_pair(1.0, 1.0),
            sign_pair(1.0, -1.0),
            sign_pair(-1.0, 1.0),
            sign_pair(-1.0, -1.0),
            two_dim,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_and_validates() {
        for name in CATALOG {
            let g = group(name).unwrap();
            assert!(g.hypergroup.validate_axioms().is_valid(), "{name}");
            assert_eq!(g.characters[0].dim, 1);
            assert!(g.characters[0].is_trivial(1e-12), "{name}");
        }
    }

    #[test]
    fn character_orthogonality() {
        for name in ["S3", "S4", "A4", "D4", "Z6", "Z2xZ2"] {
            let g = group(name).unwrap();
            let n = g.hypergroup.order() as f64;
            for (i, a) in g.characters.iter().enumerate() {
                for (j, b) in g.characters.iter().enumerate() {
                    let mut inner = Complex64::new(0.0, 0.0);
                    for x in 0..g.hypergroup.order() {
                        inner += (a.values[x] * a.dim as f64)
                            * (b.values[x] * b.dim as f64).conj();
                    }
                    inner /= n;
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (inner - Complex64::new(expected, 0.0)).norm() < 1e-10,
                        "{name}: characters {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn s4_pairing_rep_has_sign_free_kernel() {
        let g = group("S4").unwrap();
        // The 2-dimensional irrep factors through the pairing action, so the
        // double transpositions act trivially in it.
        for (x, label) in g.hypergroup.labels().iter().enumerate() {
            if label.matches('(').count() == 2 {
                let tr = g.irreps[2].trace(x);
                assert!((tr - Complex64::new(2.0, 0.0)).norm() < 1e-12, "{label}");
            }
        }
    }
}
