//! Case descriptors and the `X:r:l` quiver notation.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clusterlab_core::builders::{Family, QuiverFamilySpec, Spec};
use clusterlab_core::dynkin::Dynkin;
use serde::{Deserialize, Serialize};

/// One `(family, r, ℓ)` case; `r` is ignored for `F4` and `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaseId {
    pub family: FamilyName,
    pub rank: usize,
    pub level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    C,
    F4,
    G2,
}

impl From<FamilyName> for Family {
    fn from(f: FamilyName) -> Family {
        match f {
            FamilyName::C => Family::C,
            FamilyName::F4 => Family::F4,
            FamilyName::G2 => Family::G2,
        }
    }
}

impl FromStr for FamilyName {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C" => Ok(FamilyName::C),
            "F4" | "F" => Ok(FamilyName::F4),
            "G2" | "G" => Ok(FamilyName::G2),
            other => bail!("unknown family {other:?} (expected C, F4 or G2)"),
        }
    }
}

impl CaseId {
    pub fn new(family: FamilyName, rank: usize, level: usize) -> Self {
        let rank = match family {
            FamilyName::C => rank,
            FamilyName::F4 => 4,
            FamilyName::G2 => 2,
        };
        CaseId { family, rank, level }
    }

    pub fn spec(&self) -> Result<Spec> {
        Spec::new(self.family.into(), self.rank, self.level).map_err(|e| anyhow!("{self}: {e}"))
    }

    /// The default case list: `C_r` for `r, ℓ ∈ {2, 3, 4}`, `F4` at
    /// `ℓ = 2, 3` and `G2` at `ℓ = 2, 3, 4`.
    pub fn defaults() -> Vec<CaseId> {
        let mut out = Vec::new();
        for r in 2..=4 {
            for l in 2..=4 {
                out.push(CaseId::new(FamilyName::C, r, l));
            }
        }
        out.extend((2..=3).map(|l| CaseId::new(FamilyName::F4, 4, l)));
        out.extend((2..=4).map(|l| CaseId::new(FamilyName::G2, 2, l)));
        out
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            FamilyName::C => write!(f, "C{}-l{}", self.rank, self.level),
            FamilyName::F4 => write!(f, "F4-l{}", self.level),
            FamilyName::G2 => write!(f, "G2-l{}", self.level),
        }
    }
}

/// A quiver named as `X:r:l`: `C`, `F` (`F:4:l`) and `G` (`G:2:l`) give
/// the family quivers, `A`, `D` and `E` the square products with
/// `A_{ℓ−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverName {
    pub text: String,
    pub spec: QuiverFamilySpec,
}

impl FromStr for QuiverName {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, rank, level] = parts.as_slice() else {
            bail!("expected X:rank:level, got {s:?}");
        };
        let rank: usize = rank.parse().with_context(|| format!("rank in {s:?}"))?;
        let level: usize = level.parse().with_context(|| format!("level in {s:?}"))?;
        let cluster = |family: Family| -> Result<QuiverFamilySpec> {
            Ok(QuiverFamilySpec::Cluster(Spec::new(family, rank, level)?))
        };
        let square = |dynkin: Dynkin| QuiverFamilySpec::Square { dynkin, l: level };
        let spec = match kind.to_ascii_uppercase().as_str() {
            "C" => cluster(Family::C)?,
            "F" | "F4" if rank == 4 => cluster(Family::F4)?,
            "G" | "G2" if rank == 2 => cluster(Family::G2)?,
            "A" => square(Dynkin::a(rank)?),
            "D" => square(Dynkin::d(rank)?),
            "E" if rank == 6 => square(Dynkin::e6()),
            "B" => bail!("type B quivers are not supported"),
            _ => bail!("unsupported quiver {s:?}"),
        };
        Ok(QuiverName { text: s.to_string(), spec })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cases() {
        let cases = CaseId::defaults();
        assert_eq!(cases.len(), 14);
        assert_eq!(cases[0].to_string(), "C2-l2");
        assert_eq!(cases[13].to_string(), "G2-l4");
    }

    #[test]
    fn quiver_names() {
        assert!("C:3:2".parse::<QuiverName>().is_ok());
        assert!("D:4:3".parse::<QuiverName>().is_ok());
        assert!("G:2:3".parse::<QuiverName>().is_ok());
        assert!("B:3:2".parse::<QuiverName>().is_err());
        assert!("F:5:2".parse::<QuiverName>().is_err());
        assert!("C:3".parse::<QuiverName>().is_err());
    }
}
