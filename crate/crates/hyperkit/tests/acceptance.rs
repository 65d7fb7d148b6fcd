//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};

use num::traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use hyperkit::algebra::{isomorphic, FiniteHypergroup};
use hyperkit::characters::{characters_commutative, dual_hypergroup, hyperdimension};
use hyperkit::constructions::{
    build_zp3, build_zpr4, build_zq2, direct_product, hypergroup_join,
};
use hyperkit::examples::{
    audit_against_published, build_example, example_info, published_table, EXAMPLE_IDS,
};
use hyperkit::groups::{group, CATALOG};
use hyperkit::mackey::{
    cycle_action_klein, inversion_action_order4, swap_action_order3, MackeyMachine,
};
use hyperkit::pairs::{exact_sequence_check, pair_commutative};
use hyperkit::scalar::{rat, rat_int, to_f64, Complex64, Scalar, SnapConfig};

fn cfg() -> SnapConfig {
    SnapConfig::default()
}

fn criterion(n: usize, name: &str, f: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => println!("ACCEPTANCE {n} {name}: PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} {name}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hyperkit")
}

/// Every catalog construction at the acceptance parameter points.
fn catalog_tables() -> Vec<FiniteHypergroup> {
    let pts = [rat(1, 4), rat(1, 2), rat(3, 4)];
    let mut out = Vec::new();
    for v in &pts {
        out.push(build_zq2(v).unwrap());
        out.push(build_zp3(v).unwrap());
    }
    for p in &pts {
        for r in &pts {
            out.push(build_zpr4(p, r).unwrap());
        }
    }
    for name in CATALOG {
        out.push(group(name).unwrap().hypergroup);
    }
    out.push(
        swap_action_order3(&rat(1, 2))
            .unwrap()
            .semidirect_product()
            .unwrap(),
    );
    out.push(
        inversion_action_order4(&rat(1, 3), &rat(2, 3))
            .unwrap()
            .semidirect_product()
            .unwrap(),
    );
    out.push(cycle_action_klein().unwrap().semidirect_product().unwrap());
    out.push(
        hypergroup_join(&build_zp3(&rat(1, 3)).unwrap(), &build_zq2(&rat(1, 2)).unwrap())
            .unwrap(),
    );
    out.push(
        direct_product(&build_zq2(&rat(1, 4)).unwrap(), &build_zp3(&rat(3, 4)).unwrap())
            .unwrap(),
    );
    out
}

#[test]
fn acceptance_1_axiom_suite() {
    criterion(1, "catalog builders pass axioms; perturbations fail", || {
        for h in catalog_tables() {
            assert!(
                h.validate_axioms().is_valid(),
                "{} fails the axioms",
                h.name()
            );
            let n = h.order();
            let mut runner = TestRunner::new(Config {
                cases: 10,
                ..Config::default()
            });
            runner
                .run(&(0..n, 0..n, 0..n, 1i64..12), |(i, j, k, num)| {
                    let mut slice = h.slice(i, j).clone();
                    let cur = slice.get(&k).cloned().unwrap_or_else(Scalar::zero);
                    slice.insert(k, cur + rat(num, 13));
                    let perturbed = h.with_slice_replaced(i, j, slice);
                    prop_assert!(
                        !perturbed.validate_axioms().is_valid(),
                        "perturbing ({i},{j})->{k} left the table valid"
                    );
                    Ok(())
                })
                .unwrap_or_else(|e| panic!("{}: {e}", h.name()));
        }
    });
}

#[test]
fn acceptance_2_group_pair_tables() {
    criterion(2, "5.7/5.8/5.9 printed coefficients exact at q in {1/4,1/2,1}", || {
        let cfg = cfg();
        let one = rat_int(1);
        for id in ["5.7", "5.8", "5.9"] {
            let built = build_example(id, &one, &one, &cfg).unwrap();
            for q in [rat(1, 4), rat(1, 2), rat_int(1)] {
                let twisted = built.twisted(&q).unwrap();
                let published = published_table(id, &one, &q, &one).unwrap();
                let diffs = audit_against_published(&published, &twisted).unwrap();
                assert!(diffs.is_empty(), "{id} at q = {q}: {diffs:#?}");
            }
        }
    });
}

#[test]
fn acceptance_3_group_specializations() {
    criterion(3, "5.1-5.6, 5.10 printed tables exact at p = r = 1", || {
        let cfg = cfg();
        let one = rat_int(1);
        for id in ["5.1", "5.2", "5.3", "5.4", "5.5", "5.6", "5.10"] {
            let built = build_example(id, &one, &one, &cfg).unwrap();
            for q in [rat(1, 4), rat(1, 2), rat_int(1)] {
                let twisted = built.twisted(&q).unwrap();
                let published = published_table(id, &one, &q, &one).unwrap();
                let diffs = audit_against_published(&published, &twisted).unwrap();
                assert!(diffs.is_empty(), "{id} at q = {q}: {diffs:#?}");
            }
        }
    });
}

#[test]
fn acceptance_4_parametric_deformations() {
    criterion(4, "5.1-5.6 at generic (p,r): γ-sector exact, axioms, admissibility", || {
        let cfg = cfg();
        let q = rat(1, 2);
        for id in ["5.1", "5.2", "5.3", "5.4", "5.5", "5.6"] {
            let info = example_info(id).unwrap();
            for p in [rat(1, 3), rat(2, 3)] {
                for r in [rat(1, 3), rat(2, 3)] {
                    if !info.uses_r && r != rat(1, 3) {
                        continue;
                    }
                    let built = build_example(id, &p, &r, &cfg).unwrap();
                    let twisted = built.twisted(&q).unwrap();
                    assert!(
                        twisted.validate_axioms().is_valid(),
                        "{id} twisted table fails axioms at p={p}, r={r}"
                    );
                    assert!(
                        built.pair.admissible().unwrap().is_admissible(),
                        "{id} pair not admissible at p={p}, r={r}"
                    );
                    // γ-sector: printed parametric formulas hold verbatim.
                    let published = published_table(id, &p, &q, &r).unwrap();
                    for (i, j, slice) in &published.entries {
                        if *i < published.n_big && *j < published.n_big {
                            assert_eq!(
                                twisted.slice(*i, *j),
                                slice,
                                "{id} γ-sector product ({i},{j}) at p={p}, r={r}"
                            );
                        }
                    }
                    // Corrupting one induced coefficient (mass kept) must
                    // break associativity and be reported by the validator.
                    let rho0 = published.n_big;
                    let mut slice = twisted.slice(rho0, rho0).clone();
                    let keys: Vec<usize> = slice
                        .keys()
                        .copied()
                        .filter(|&k| k < published.n_big)
                        .collect();
                    assert!(keys.len() >= 2, "{id}: ρ0ρ0 circle part too small");
                    let delta = rat(1, 13);
                    let up = slice[&keys[0]].clone() + &delta;
                    let down = slice[&keys[1]].clone() - &delta;
                    slice.insert(keys[0], up);
                    slice.insert(keys[1], down);
                    let corrupted = twisted.with_slice_replaced(rho0, rho0, slice);
                    let report = corrupted.validate_axioms();
                    assert!(
                        !report.is_valid(),
                        "{id}: corrupted induced coefficient not detected"
                    );
                    assert!(!report.violations.is_empty());
                }
            }
        }
        // ρ-sector closed form on the order-2 deformation pair:
        // ρ0ρ0 = q(p/(1+p) γ0 + 1/(1+p) γ1) + (1-q) ρ0.
        for p in [rat(1, 3), rat(2, 3)] {
            let built = build_example("5.1", &p, &rat_int(1), &cfg).unwrap();
            let twisted = built.twisted(&q).unwrap();
            let slice = twisted.slice(2, 2);
            let onep = rat_int(1) + &p;
            assert_eq!(slice.get(&0), Some(&(&q * &p / &onep)));
            assert_eq!(slice.get(&1), Some(&(&q / &onep)));
            assert_eq!(slice.get(&2), Some(&(rat_int(1) - &q)));
        }
        // The printed-vs-computed ρ-sector discrepancy is surfaced by --audit.
        let out = Command::new(bin())
            .args(["example", "5.1", "--p", "1/2", "--q", "1/3", "--audit"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "--audit should exit 2");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let discrepancies = report["discrepancies"].as_array().unwrap();
        assert_eq!(discrepancies.len(), 1);
        assert_eq!(discrepancies[0]["product"], "ρ0 ρ0");
    });
}

#[test]
fn acceptance_5_induction_identities() {
    criterion(5, "induced-trace average, decomposition weights, res∘ind", || {
        let cfg = cfg();
        let machines = vec![
            MackeyMachine::new(swap_action_order3(&rat(1, 3)).unwrap(), &cfg).unwrap(),
            MackeyMachine::new(swap_action_order3(&rat(2, 3)).unwrap(), &cfg).unwrap(),
            MackeyMachine::new(inversion_action_order4(&rat(1, 3), &rat(2, 3)).unwrap(), &cfg)
                .unwrap(),
            MackeyMachine::new(inversion_action_order4(&rat(2, 3), &rat(1, 2)).unwrap(), &cfg)
                .unwrap(),
        ];
        for m in &machines {
            let name = m.semidirect.name().to_string();
            // (a) matrix-built induced characters equal the finite-average form.
            for (k, irrep) in m.irreps.iter().enumerate() {
                let avg = m.orbit_averaged_character(k).unwrap();
                let worst = irrep
                    .representation
                    .normalized_character_values()
                    .iter()
                    .zip(&avg)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0_f64, f64::max);
                assert!(worst < 1e-9, "{name} irrep {k}: residual {worst:e}");
            }
            // (b) ind of the trivial small irrep decomposes with weights
            // w(ρ^χ)/w(dual), one constituent per orbit.
            let pair = m.group_pair().unwrap();
            let coeffs = pair.induced_character(pair.trivial_small).unwrap();
            let fractions = m.orbit_weight_fractions().unwrap();
            let mut seen = vec![false; fractions.len()];
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let orbit = m.irreps[k].orbit;
                assert!(!seen[orbit], "{name}: two constituents on orbit {orbit}");
                seen[orbit] = true;
                assert_eq!(c, &fractions[orbit], "{name} irrep {k} weight");
            }
            assert!(seen.iter().all(|&s| s), "{name}: an orbit is missing");
            // (c) res(ind ch(τ)) at g equals (w of g-fixed characters / w of
            // the dual) times ch(τ)(g).
            let ng = m.action.group.hypergroup.order();
            let total = m.target_dual.total.as_f64();
            for (tau, tchar) in m.action.group.characters.iter().enumerate() {
                let small_coeffs = pair.restricted_induced(tau).unwrap();
                for g in 0..ng {
                    let value: Complex64 = small_coeffs
                        .iter()
                        .zip(&pair.dual_small)
                        .map(|(c, ch)| ch.values[g] * to_f64(c))
                        .sum();
                    let fixed_weight: f64 = (0..m.target_dual.characters.len())
                        .filter(|&i| m.dual_perms[g][i] == i)
                        .map(|i| m.target_dual.plancherel[i].as_f64())
                        .sum();
                    let expected = tchar.values[g] * (fixed_weight / total);
                    assert!(
                        (value - expected).norm() < 1e-9,
                        "{name} τ{tau} at group element {g}: {value} vs {expected}"
                    );
                }
            }
        }
    });
}

#[test]
fn acceptance_6_hyperdimension_cross_check() {
    criterion(6, "generic hyperdimension formula vs w(χ)·dim and group dims", || {
        let cfg = cfg();
        let machines = vec![
            MackeyMachine::new(swap_action_order3(&rat(1, 2)).unwrap(), &cfg).unwrap(),
            MackeyMachine::new(inversion_action_order4(&rat(1, 3), &rat(2, 3)).unwrap(), &cfg)
                .unwrap(),
            MackeyMachine::new(cycle_action_klein().unwrap(), &cfg).unwrap(),
        ];
        for m in &machines {
            for (k, irrep) in m.irreps.iter().enumerate() {
                let d = hyperdimension(&m.semidirect, &irrep.character, &cfg).unwrap();
                match (d.exact(), irrep.character.hyperdim.exact()) {
                    (Some(a), Some(b)) => {
                        assert_eq!(a, b, "{} irrep {k}", m.semidirect.name())
                    }
                    _ => assert!(
                        (d.as_f64() - irrep.character.hyperdim.as_f64()).abs() < 1e-9,
                        "{} irrep {k}",
                        m.semidirect.name()
                    ),
                }
            }
        }
        for name in CATALOG {
            let gd = group(name).unwrap();
            for c in &gd.characters {
                let d = hyperdimension(&gd.hypergroup, c, &cfg).unwrap();
                assert_eq!(
                    d.exact(),
                    Some(&rat_int(c.dim as i64)),
                    "{name} irrep of dim {}",
                    c.dim
                );
            }
        }
    });
}

#[test]
fn acceptance_7_character_solver() {
    criterion(7, "small commutative tables: count, residuals, dual-of-dual", || {
        let cfg = cfg();
        let mut tables = Vec::new();
        for v in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            tables.push(build_zq2(&v).unwrap());
            tables.push(build_zp3(&v).unwrap());
            tables.push(build_zpr4(&v, &rat(1, 2)).unwrap());
        }
        for name in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
            tables.push(group(name).unwrap().hypergroup);
        }
        for h in &tables {
            let table = characters_commutative(h, &cfg).unwrap();
            assert_eq!(table.characters.len(), h.order(), "{}", h.name());
            let haar = h.haar().unwrap();
            for (i, ci) in table.characters.iter().enumerate() {
                let residual = ci.functional_equation_residual(h);
                assert!(residual < 1e-9, "{} character {i}: {residual:e}", h.name());
                for (j, cj) in table.characters.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let inner: Complex64 = (0..h.order())
                        .map(|x| {
                            ci.values[x]
                                * cj.values[x].conj()
                                * to_f64(haar.normalized.coeff(x))
                        })
                        .sum();
                    assert!(
                        inner.norm() < 1e-9,
                        "{}: characters {i},{j} not orthogonal ({:e})",
                        h.name(),
                        inner.norm()
                    );
                }
            }
            let dd = dual_hypergroup(&dual_hypergroup(h, &cfg).unwrap(), &cfg).unwrap();
            assert!(isomorphic(&dd, h).is_some(), "{}: dual of dual", h.name());
        }
    });
}

#[test]
fn acceptance_8_structural_identities() {
    criterion(8, "K(H,H) ≅ dual×Z_q(2), K(H,{e}) ≅ dual∨Z_q(2), exact sequence", || {
        let cfg = cfg();
        let q = rat(1, 3);
        let zq2 = build_zq2(&q).unwrap();
        let bases = [
            build_zq2(&rat(1, 2)).unwrap(),
            build_zp3(&rat(1, 2)).unwrap(),
            build_zpr4(&rat(1, 3), &rat(2, 3)).unwrap(),
        ];
        for h in &bases {
            let dual = dual_hypergroup(h, &cfg).unwrap();

            let full: BTreeSet<usize> = (0..h.order()).collect();
            let pair = pair_commutative(h, &full, &cfg).unwrap();
            let twisted = pair.twisted_hypergroup(&q).unwrap();
            let product = direct_product(&dual, &zq2).unwrap();
            assert!(
                isomorphic(&twisted, &product).is_some(),
                "{}: twist by the full subhypergroup is not dual × Z_q(2)",
                h.name()
            );

            let trivial: BTreeSet<usize> = [h.identity()].into_iter().collect();
            let pair = pair_commutative(h, &trivial, &cfg).unwrap();
            let twisted = pair.twisted_hypergroup(&q).unwrap();
            let join = hypergroup_join(&dual, &zq2).unwrap();
            assert!(
                isomorphic(&twisted, &join).is_some(),
                "{}: twist by the trivial subhypergroup is not dual ∨ Z_q(2)",
                h.name()
            );
        }
        // 1 -> circle sector -> K -> Z_q(2) -> 1 on every worked example.
        let (p, r) = (rat(1, 2), rat(1, 2));
        for id in EXAMPLE_IDS {
            let built = build_example(id, &p, &r, &cfg).unwrap();
            let n_big = built.pair.dual_big.len();
            for q in [rat(1, 4), rat(1, 2), rat_int(1)] {
                let twisted = built.twisted(&q).unwrap();
                let report = exact_sequence_check(&twisted, n_big, &q).unwrap();
                assert!(
                    report.circle_sector_closed && report.quotient_is_order2_deformation,
                    "{id} at q = {q}: {report:?}"
                );
            }
        }
    });
}

#[test]
fn acceptance_9_cli_contract() {
    criterion(9, "JSON round trip, golden tables, exit codes", || {
        // Emit JSON -> parse -> identical to the in-process builder.
        let out = Command::new(bin())
            .args(["build", "zpr4", "--p", "1/3", "--r", "2/3", "--emit", "json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let parsed =
            hyperkit::json::hypergroup_from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
        let direct = build_zpr4(&rat(1, 3), &rat(2, 3)).unwrap();
        assert_eq!(parsed.labels(), direct.labels());
        assert_eq!(parsed.involution_map(), direct.involution_map());
        for i in 0..direct.order() {
            for j in 0..direct.order() {
                assert_eq!(parsed.slice(i, j), direct.slice(i, j), "round trip ({i},{j})");
            }
        }

        // build | validate pipes cleanly.
        let build = Command::new(bin())
            .args(["build", "zq2", "--q", "1", "--emit", "json"])
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        let status = Command::new(bin())
            .arg("validate")
            .stdin(build.stdout.unwrap())
            .stdout(Stdio::null())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0), "build | validate");

        // Golden tables are byte-exact for every stored q.
        for id in ["5.7", "5.8", "5.9"] {
            for (qs, suffix) in [("1/4", "q1-4"), ("1/2", "q1-2"), ("1", "q1-1")] {
                let out = Command::new(bin())
                    .args(["example", id, "--q", qs])
                    .output()
                    .unwrap();
                assert_eq!(out.status.code(), Some(0));
                let golden = std::fs::read(format!(
                    "{}/tests/golden/{id}-{suffix}.md",
                    env!("CARGO_MANIFEST_DIR")
                ))
                .unwrap();
                assert_eq!(out.stdout, golden, "golden {id} at q = {qs}");
            }
        }

        // Exit 2 with a JSON report on a mathematically failing input.
        let out = Command::new(bin())
            .args(["admissible", "S4", "--subset", "0,7,16,23"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "non-admissible pair should exit 2");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(report.is_object(), "exit-2 report is JSON");

        // Exit 1 on a usage error.
        let out = Command::new(bin()).arg("frobnicate").output().unwrap();
        assert_eq!(out.status.code(), Some(1), "unknown verb should exit 1");
    });
}
