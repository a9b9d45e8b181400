//! The shipped grid corpus with frozen expected invariants. Grids and their
//! golden files are embedded, so `corpus verify` works from any install; the
//! golden data itself was generated by the verification pipeline and frozen.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{parse_grid, GridDiagram};

pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub golden: &'static str,
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".grid")),
            golden: include_str!(concat!("../corpus/golden/", $name, ".json")),
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("unknot2"),
    entry!("unknot3"),
    entry!("unknot4"),
    entry!("unknot5"),
    entry!("trefoil"),
    entry!("trefoil_mirror"),
    entry!("figure8"),
    entry!("hopf"),
    entry!("unlink2"),
    entry!("torus24"),
    entry!("torus35"),
];

pub fn get(name: &str) -> Result<GridDiagram> {
    let e = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidGrid(format!("no corpus grid named `{name}`")))?;
    parse_grid(e.text)
}

pub fn grids() -> Vec<(&'static str, GridDiagram)> {
    ENTRIES
        .iter()
        .map(|e| (e.name, parse_grid(e.text).expect("corpus grids are valid")))
        .collect()
}

/// Frozen invariants of one corpus grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub name: String,
    pub n: usize,
    pub ell: usize,
    /// Doubled total linking numbers per component.
    pub linking_doubled: Vec<i64>,
    /// Hat homology ranks: (maslov, doubled Alexander vector, rank).
    pub hat: Vec<(i32, Vec<i16>, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<i64>,
    /// Normalized Alexander polynomial, term list (doubled exponents).
    pub delta_terms: Vec<(Vec<i32>, i64)>,
    pub delta_text: String,
}

pub fn compute_golden(name: &str, g: &GridDiagram, cap: usize) -> Result<Golden> {
    let hat = crate::homology::hat_poly(g, cap)?;
    let hat_rows: Vec<(i32, Vec<i16>, u64)> = hat
        .iter()
        .map(|(k, &r)| (k.maslov, k.alex2.clone(), r))
        .collect();
    let tau = if g.ell() == 1 {
        Some(crate::homology::tau(g, cap)?)
    } else {
        None
    };
    let delta = crate::alexander::alexander_polynomial(g)?;
    Ok(Golden {
        name: name.to_string(),
        n: g.n(),
        ell: g.ell(),
        linking_doubled: crate::gradings::total_linking2(g),
        hat: hat_rows,
        tau,
        delta_terms: delta.iter().map(|(e, &c)| (e.clone(), c)).collect(),
        delta_text: delta.display(),
    })
}

/// Recomputes every corpus grid and compares against its golden file.
pub fn verify_corpus(cap: usize) -> Result<Vec<(String, std::result::Result<(), String>)>> {
    let mut out = Vec::new();
    for e in ENTRIES {
        let g = parse_grid(e.text)?;
        let fresh = compute_golden(e.name, &g, cap)?;
        let verdict = match serde_json::from_str::<Golden>(e.golden) {
            Err(_) => Err("golden file missing or unreadable".to_string()),
            Ok(frozen) if frozen == fresh => Ok(()),
            Ok(frozen) => Err(format!(
                "golden mismatch: frozen tau {:?} delta `{}`, recomputed tau {:?} delta `{}`",
                frozen.tau, frozen.delta_text, fresh.tau, fresh.delta_text
            )),
        };
        out.push((e.name.to_string(), verdict));
    }
    Ok(out)
}

/// Regenerates the golden files under `dir` (used at development time to
/// freeze outputs after the verification suites pass).
pub fn freeze(dir: &std::path::Path, cap: usize) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in ENTRIES {
        let g = parse_grid(e.text)?;
        let golden = compute_golden(e.name, &g, cap)?;
        let path = dir.join(format!("{}.json", e.name));
        std::fs::write(&path, serde_json::to_string_pretty(&golden)?.as_bytes())?;
    }
    Ok(())
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidGrid(format!("json: {e}"))
    }
}
