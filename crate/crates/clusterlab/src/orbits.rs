//! Orbit listings in the printed notations.
//!
//! The `D_{r+1}` map attached to `C_r` is shown as its interleaved orbit
//! table (`{i} {sign} : entries`), the other maps as one orbit per line
//! joined by ` -> `.

use anyhow::{bail, Result};
use clap::ValueEnum;
use clusterlab_core::dynkin::Dynkin;
use clusterlab_core::roots::{
    c_orbit_table, exponent_bracket, render_c_orbit_row, render_orbit, RootSystem, RootVector, RowLabel, SigmaMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootType {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SigmaKind {
    /// `D_{r+1}` map attached to `C_r`.
    C,
    /// `A_{r−1}` map attached to `C_r`.
    Ca,
    F4,
    G2,
}

/// The listing for a root system of the given type and rank.
pub fn orbit_lines(root_type: RootType, rank: usize, sigma: SigmaKind) -> Result<Vec<String>> {
    let list = |sys: RootSystem, map: SigmaMap, notation: fn(&RootVector) -> String| -> Result<Vec<String>> {
        let orbits = sys.orbit_decomposition(&map)?;
        Ok(orbits.iter().map(|o| render_orbit(o, notation).join(" -> ")).collect())
    };
    match (root_type, sigma) {
        (RootType::D, SigmaKind::C) if rank >= 3 => {
            let r = rank - 1;
            Ok(c_orbit_table(r)?
                .iter()
                .map(|row| {
                    let head = match row.label {
                        RowLabel::Node(i, plus) => format!("{i} {}", if plus { '+' } else { '-' }),
                        RowLabel::Last => "last +".to_string(),
                    };
                    format!("{head} : {}", render_c_orbit_row(r, row).join(" "))
                })
                .collect())
        }
        (RootType::A, SigmaKind::Ca) => {
            list(RootSystem::new(Dynkin::a(rank)?), SigmaMap::c_a_part(rank + 1), |a| a.to_string())
        }
        (RootType::E, SigmaKind::F4) if rank == 6 => list(RootSystem::new(Dynkin::e6()), SigmaMap::f4(), exponent_bracket),
        (RootType::D, SigmaKind::G2) if rank == 4 => {
            list(RootSystem::new(Dynkin::d4_central()), SigmaMap::g2(), |a| a.to_string())
        }
        _ => bail!("unsupported combination: use D/C, A/ca, E6/f4 or D4/g2"),
    }
}
