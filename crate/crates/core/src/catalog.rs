//! The 43 vertex sets whose commuting graphs form the NSSD catalog, and
//! batch verification of each.
//!
//! The sets live in `data/gamma.txt`, one record per line:
//!
//! ```text
//! id; n; e1, e2, ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::dihedral::{format_subset, GroupCtx, GroupElement};
use crate::error::{Error, Result};
use crate::formats::to_graph6;
use crate::graph::CommutingGraph;
use crate::hyperop::HvGroupCtx;
use crate::nssd::{is_nssd, NssdCertificate};

const CATALOG_TEXT: &str = include_str!("../data/gamma.txt");

pub const CATALOG_SIZE: u32 = 43;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    pub id: u32,
    pub n: u32,
    /// In the order listed in the data file.
    pub elements: Vec<GroupElement>,
}

impl GammaSet {
    pub fn group(&self) -> GroupCtx {
        GroupCtx::new(self.n).expect("validated at parse time")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn parse_line(lineno: usize, line: &str) -> Result<GammaSet> {
    let bad = |reason: String| Error::Catalog { line: lineno, reason };
    let fields: Vec<&str> = line.split(';').map(str::trim).collect();
    let [id, n, elements] = fields.as_slice() else {
        return Err(bad(format!("expected 3 ';'-separated fields, found {}", fields.len())));
    };
    let id: u32 = id.parse().map_err(|_| bad(format!("bad id {id:?}")))?;
    let n: u32 = n.parse().map_err(|_| bad(format!("bad n {n:?}")))?;
    let group = GroupCtx::new(n).map_err(|e| bad(e.to_string()))?;
    let elements = group.parse_subset(elements).map_err(|e| bad(e.to_string()))?;
    Ok(GammaSet { id, n, elements })
}

/// Parses catalog text. Ids must be unique; they need not be contiguous.
pub fn parse_catalog(text: &str) -> Result<Vec<GammaSet>> {
    let mut seen = BTreeSet::new();
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let set = parse_line(i + 1, line)?;
        if !seen.insert(set.id) {
            return Err(Error::Catalog {
                line: i + 1,
                reason: format!("duplicate id {}", set.id),
            });
        }
        sets.push(set);
    }
    Ok(sets)
}

/// The built-in catalog, sorted by id.
pub fn catalog() -> &'static [GammaSet] {
    static SETS: OnceLock<Vec<GammaSet>> = OnceLock::new();
    SETS.get_or_init(|| {
        let mut sets = parse_catalog(CATALOG_TEXT).expect("built-in catalog parses");
        sets.sort_by_key(|s| s.id);
        let ids: Vec<u32> = sets.iter().map(|s| s.id).collect();
        assert_eq!(ids, (1..=CATALOG_SIZE).collect::<Vec<_>>(), "catalog ids");
        sets
    })
}

pub fn gamma(id: u32) -> Result<&'static GammaSet> {
    if !(1..=CATALOG_SIZE).contains(&id) {
        return Err(Error::CatalogId(id));
    }
    Ok(&catalog()[id as usize - 1])
}

/// Graph order announced for each set by the figure it belongs to.
pub fn stated_order(id: u32) -> Result<usize> {
    Ok(match id {
        1 => 2,
        2 => 4,
        3..=7 => 6,
        8..=12 => 8,
        13..=24 => 10,
        25..=41 => 12,
        42 => 14,
        43 => 16,
        _ => return Err(Error::CatalogId(id)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaVerification {
    pub id: u32,
    pub n: u32,
    pub certificate: NssdCertificate,
    pub order: usize,
    pub molecular: bool,
    pub graph: CommutingGraph,
}

pub fn verify_gamma(id: u32) -> Result<GammaVerification> {
    let set = gamma(id)?;
    let hv = HvGroupCtx::new(set.group());
    let graph = CommutingGraph::new(&hv, &set.elements)?;
    Ok(GammaVerification {
        id,
        n: set.n,
        certificate: is_nssd(graph.graph()),
        order: graph.order(),
        molecular: graph.graph().is_molecular(),
        graph,
    })
}

/// Every catalog entry, ordered by id.
pub fn verify_all() -> Vec<GammaVerification> {
    (1..=CATALOG_SIZE)
        .into_par_iter()
        .map(|id| verify_gamma(id).expect("built-in ids are valid"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscrepancyKind {
    NotNssd,
    OrderMismatch { stated: usize, computed: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub id: u32,
    pub kind: DiscrepancyKind,
    pub elements: String,
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            DiscrepancyKind::NotNssd => {
                write!(f, "set {} {{{}}}: commuting graph is not NSSD", self.id, self.elements)
            }
            DiscrepancyKind::OrderMismatch { stated, computed } => write!(
                f,
                "set {} {{{}}}: {computed} vertices, listed under order {stated}",
                self.id, self.elements
            ),
        }
    }
}

/// Entries that fail NSSD or whose order differs from [`stated_order`].
pub fn discrepancies(results: &[GammaVerification]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for r in results {
        let elements = format_subset(r.graph.labels());
        if !r.certificate.verdict {
            out.push(Discrepancy {
                id: r.id,
                kind: DiscrepancyKind::NotNssd,
                elements: elements.clone(),
            });
        }
        if let Ok(stated) = stated_order(r.id) {
            if stated != r.order {
                out.push(Discrepancy {
                    id: r.id,
                    kind: DiscrepancyKind::OrderMismatch {
                        stated,
                        computed: r.order,
                    },
                    elements,
                });
            }
        }
    }
    out
}

/// CSV summary: `id,n,order,det,nssd,molecular,graph6`.
pub fn write_catalog_csv(results: &[GammaVerification], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "id,n,order,det,nssd,molecular,graph6")?;
    for r in results {
        let g6 = to_graph6(r.graph.graph()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.id, r.n, r.order, r.certificate.det, r.certificate.verdict, r.molecular, g6
        )?;
    }
    Ok(())
}
