//! The JSON quiver format `{n, edges, meta}`.
//!
//! `edges` lists `[i, j]` once per arrow `i → j` (so an arrow of
//! multiplicity `m` appears `m` times); `meta[v]` records the column, row,
//! fill and tag of vertex `v`.

use anyhow::{bail, Result};
use clusterlab_core::quiver::{Fill, Quiver, Tag, VertexMeta};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub meta: Vec<MetaJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaJson {
    pub col: usize,
    pub row: usize,
    /// `"bullet"` or `"circle"`.
    pub fill: String,
    /// `"+"`, `"-"`, a region numeral `"I"`..`"VI"`, or `"none"`.
    pub tag: String,
}

const ROMAN: [&str; 6] = ["I", "II", "III", "IV", "V", "VI"];

impl From<&VertexMeta> for MetaJson {
    fn from(m: &VertexMeta) -> Self {
        let fill = match m.fill {
            Fill::Bullet => "bullet",
            Fill::Circle => "circle",
        };
        MetaJson { col: m.col, row: m.row, fill: fill.to_string(), tag: m.tag.to_string() }
    }
}

impl TryFrom<&MetaJson> for VertexMeta {
    type Error = anyhow::Error;

    fn try_from(m: &MetaJson) -> Result<Self> {
        let fill = match m.fill.as_str() {
            "bullet" => Fill::Bullet,
            "circle" => Fill::Circle,
            other => bail!("unknown fill {other:?}"),
        };
        let tag = match m.tag.as_str() {
            "+" => Tag::Plus,
            "-" => Tag::Minus,
            "none" => Tag::None,
            other => match ROMAN.iter().position(|r| *r == other) {
                Some(k) => Tag::Region(k as u8 + 1),
                None => bail!("unknown tag {other:?}"),
            },
        };
        Ok(VertexMeta::new(m.col, m.row, fill, tag))
    }
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let mut edges = Vec::new();
        for (i, j, m) in q.arrows() {
            edges.extend(std::iter::repeat([i, j]).take(m as usize));
        }
        QuiverJson { n: q.n(), edges, meta: q.meta().iter().map(MetaJson::from).collect() }
    }
}

impl TryFrom<&QuiverJson> for Quiver {
    type Error = anyhow::Error;

    fn try_from(j: &QuiverJson) -> Result<Self> {
        if j.meta.len() != j.n {
            bail!("meta lists {} vertices but n = {}", j.meta.len(), j.n);
        }
        let meta = j.meta.iter().map(VertexMeta::try_from).collect::<Result<Vec<_>>>()?;
        let arrows: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let q = Quiver::from_arrows(meta, &arrows)?;
        if q.arrows().iter().map(|a| a.2 as usize).sum::<usize>() != arrows.len() {
            bail!("edge list contains opposite arrows forming 2-cycles");
        }
        Ok(q)
    }
}

pub fn to_json(q: &Quiver) -> String {
    serde_json::to_string_pretty(&QuiverJson::from(q)).expect("quiver serialises")
}

pub fn from_json(text: &str) -> Result<Quiver> {
    let j: QuiverJson = serde_json::from_str(text)?;
    Quiver::try_from(&j)
}
