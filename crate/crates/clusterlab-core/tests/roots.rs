//! Orbit tables and t-vector identities against the printed fixtures.

use std::collections::BTreeSet;

use clusterlab_core::builders::{Family, Spec};
use clusterlab_core::dynkin::Dynkin;
use clusterlab_core::roots::*;

fn fixture(name: &str) -> Vec<String> {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("fixture present")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(String::from)
        .collect()
}

fn check_d_table(r: usize, file: &str) {
    let rows = fixture(file);
    let table = c_orbit_table(r).unwrap();
    assert_eq!(rows.len(), table.len());
    for (line, row) in rows.iter().zip(&table) {
        let (head, body) = line.split_once(" : ").unwrap();
        let expected_label = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["last", _] => RowLabel::Last,
            [i, s] => RowLabel::Node(i.parse().unwrap(), *s == "+"),
            _ => panic!("bad row head {head}"),
        };
        assert_eq!(row.label, expected_label);
        let printed: Vec<&str> = body.split_whitespace().collect();
        assert_eq!(render_c_orbit_row(r, row), printed, "row {head}");
        for (k, s) in printed.iter().enumerate() {
            assert_eq!(parse_d_bracket(r, s).unwrap(), row.entries[k], "row {head} entry {k}");
        }
    }
}

#[test]
fn d11_orbit_table_matches_print() {
    check_d_table(10, "orbits_d11.txt");
}

#[test]
fn d10_orbit_table_matches_print() {
    check_d_table(9, "orbits_d10.txt");
}

#[test]
fn d_table_entries_are_the_alpha_table() {
    for r in [9, 10] {
        let core = CoreRoots::new(Family::C, r).unwrap();
        for row in c_orbit_table(r).unwrap() {
            for (k, a) in row.entries.iter().enumerate() {
                let u = row.u0_num - 2 * k as i64;
                let i = match row.label {
                    RowLabel::Node(i, _) => i,
                    RowLabel::Last if (u / 2) % 2 == 0 => r,
                    RowLabel::Last => r + 1,
                };
                if let Ok(b) = core.alpha(i, u) {
                    assert_eq!(&b, a, "r={r} i={i} u={u}/2");
                }
            }
        }
    }
}

#[test]
fn d_table_covers_positive_roots_once() {
    for r in 2..=10 {
        let sys = RootSystem::new(Dynkin::d(r + 1).unwrap());
        let core = CoreRoots::new(Family::C, r).unwrap();
        let values: Vec<RootVector> = core.table().into_iter().map(|(i, u)| core.alpha(i, u).unwrap()).collect();
        let set: BTreeSet<_> = values.iter().cloned().collect();
        assert_eq!(set.len(), values.len(), "r={r}");
        assert_eq!(set, sys.positive_roots().iter().cloned().collect(), "r={r}");
    }
}

fn check_orbit_list(sys: &RootSystem, map: &SigmaMap, file: &str, notation: impl Fn(&RootVector) -> String + Copy) {
    let orbits = sys.orbit_decomposition(map).unwrap();
    let printed = fixture(file);
    let rendered: Vec<String> = orbits.iter().map(|o| render_orbit(o, notation).join(" -> ")).collect();
    assert_eq!(rendered, printed);
    assert!(sys.is_partition(&orbits));
}

#[test]
fn e6_orbits_match_print() {
    check_orbit_list(&RootSystem::new(Dynkin::e6()), &SigmaMap::f4(), "orbits_e6.txt", exponent_bracket);
}

#[test]
fn d4_orbits_match_print() {
    check_orbit_list(&RootSystem::new(Dynkin::d4_central()), &SigmaMap::g2(), "orbits_d4.txt", |a| a.to_string());
}

#[test]
fn orbit_decompositions_partition() {
    for r in 2..=10 {
        let sys = RootSystem::new(Dynkin::d(r + 1).unwrap());
        let orbits = sys.orbit_decomposition(&SigmaMap::c_family(r)).unwrap();
        assert!(sys.is_partition(&orbits), "D{}", r + 1);
    }
    for r in 2..=8 {
        let sys = RootSystem::new(Dynkin::a(r - 1).unwrap());
        let orbits = sys.orbit_decomposition(&SigmaMap::c_a_part(r)).unwrap();
        assert!(sys.is_partition(&orbits), "A{}", r - 1);
    }
}

#[test]
fn sigma_i_is_an_involution_on_almost_positive_roots() {
    let systems = [
        RootSystem::new(Dynkin::d(11).unwrap()),
        RootSystem::new(Dynkin::a(9).unwrap()),
        RootSystem::new(Dynkin::e6()),
        RootSystem::new(Dynkin::d4_central()),
    ];
    for sys in &systems {
        for a in sys.almost_positive() {
            for i in 1..=sys.rank() {
                let b = sys.sigma_i(i, &a).unwrap();
                assert!(sys.is_almost_positive(&b));
                assert_eq!(sys.sigma_i(i, &b).unwrap(), a);
            }
        }
    }
}

#[test]
fn sigma_powers_invert() {
    let sys = RootSystem::new(Dynkin::e6());
    let map = SigmaMap::f4();
    for a in sys.almost_positive() {
        let b = sys.sigma_pow(&map, 3, &a).unwrap();
        assert_eq!(sys.sigma_pow(&map, -3, &b).unwrap(), a);
    }
}

#[test]
fn rho_is_a_bijection_intertwining_sigma() {
    for r in 2..=8 {
        let rep = check_rho(r).unwrap();
        assert!(rep.ok(), "r={r}: {:?}", rep.failures);
    }
}

#[test]
fn alpha_recurrences() {
    for r in 2..=10 {
        let rep = CoreRoots::new(Family::C, r).unwrap().check_c_recurrences();
        assert!(rep.checked > 0);
        assert!(rep.ok(), "r={r}: {:?}", rep.failures);
    }
}

#[test]
fn tvectors_at_level_two() {
    let mut specs: Vec<Spec> = (2..=6).map(|r| Spec::c(r, 2).unwrap()).collect();
    specs.push(Spec::f4(2).unwrap());
    specs.push(Spec::g2(2).unwrap());
    for spec in specs {
        let rep = check_tvectors(&spec).unwrap();
        assert!(rep.checked > 0);
        assert!(rep.ok(), "{spec}: {:?}", rep.failures);
    }
}

#[test]
fn tvectors_need_level_two() {
    assert!(check_tvectors(&Spec::c(3, 3).unwrap()).is_err());
}

/// The rows 1 and 3 of `Q_2(C_r)` are mutated only where `r + i + 2u` is
/// odd; the vanishing of their core part is checked at exactly those points.
#[test]
fn outer_rows_are_mutated_at_odd_parity() {
    for r in 2..=6 {
        let (even, odd) = c_outer_row_parities(&Spec::c(r, 2).unwrap()).unwrap();
        assert_eq!(even, 0);
        assert!(odd > 0);
    }
}

#[test]
fn a_part_exceptional_positive_values() {
    for r in 3..=6usize {
        let hv = r as i64 + 1;
        for i in 1..r {
            let plus = a_part_signs(r)[i - 1];
            let u = if (hv % 2 == 0) == plus { -hv } else { -hv - 1 };
            let t = c_a_part_tvector(r, i, 1, u).unwrap();
            assert_eq!(t, RootVector::simple(r - 1, r - i), "r={r} i={i}");
        }
    }
}
