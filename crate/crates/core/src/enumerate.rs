//! Exhaustive enumeration of NSSD commuting graphs over subsets of `D_2n`.
//!
//! For each order `k` every `k`-subset is visited once, as a set. Work is
//! split into prefix blocks (all subsets whose smallest element index is
//! `f`) that run in parallel; blocks are merged in `f` order, so counts,
//! class numbering and representatives do not depend on the worker count.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::dihedral::{format_subset, GroupCtx, GroupElement};
use crate::error::{Error, Result};
use crate::formats::to_graph6;
use crate::graph::{CommutingGraph, Graph};
use crate::hyperop::{CommutationTable, HvGroupCtx};
use crate::nssd::{is_nssd, is_nssd_fast};

/// Largest subset order enumerated.
pub const ENUM_MAX_ORDER: usize = 16;

/// Subsets are bitmasks over the `2n` element indices.
pub const ENUM_MAX_N: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub min_order: usize,
    pub max_order: usize,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Skip subsets whose commuting graph has an isolated vertex before any
    /// linear algebra, and stop at the first violated NSSD condition.
    pub prune: bool,
    /// Count only connected commuting graphs.
    pub connected_only: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            min_order: 2,
            max_order: 10,
            workers: None,
            prune: true,
            connected_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: u32,
    pub order: usize,
    pub nssd_subsets: u64,
    pub nssd_iso_classes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    pub n: u32,
    pub order: usize,
    /// Position of the class within its row, in first-seen order.
    pub class_index: usize,
    pub subset: Vec<GroupElement>,
    pub graph: Graph,
    pub form: CanonicalForm,
}

impl Representative {
    pub fn graph6(&self) -> String {
        to_graph6(&self.graph).expect("enumerated graphs are small")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationReport {
    pub rows: Vec<ReportRow>,
    /// Sorted by `(n, order, class_index)`.
    pub representatives: Vec<Representative>,
}

impl EnumerationReport {
    pub fn row(&self, n: u32, order: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n && r.order == order)
    }

    pub fn representatives_for(&self, n: u32, order: usize) -> impl Iterator<Item = &Representative> {
        self.representatives
            .iter()
            .filter(move |r| r.n == n && r.order == order)
    }

    pub fn representative(&self, n: u32, order: usize, class_index: usize) -> Option<&Representative> {
        self.representatives_for(n, order)
            .find(|r| r.class_index == class_index)
    }

    /// Appends `other`, keeping rows sorted by `(n, order)`.
    pub fn merge(&mut self, other: EnumerationReport) {
        self.rows.extend(other.rows);
        self.representatives.extend(other.representatives);
        self.rows.sort_by_key(|r| (r.n, r.order));
        self.representatives
            .sort_by_key(|r| (r.n, r.order, r.class_index));
    }
}

fn validate(n: u32, opts: &EnumerationOptions) -> Result<GroupCtx> {
    let group = GroupCtx::new(n)?;
    if n > ENUM_MAX_N {
        return Err(Error::EnumerationTooLarge { n, max: ENUM_MAX_N });
    }
    let limit = group.order().min(ENUM_MAX_ORDER);
    if opts.min_order < 2 || opts.min_order > opts.max_order || opts.max_order > limit {
        return Err(Error::OrderBounds {
            n,
            min: opts.min_order,
            max: opts.max_order,
            limit,
        });
    }
    Ok(group)
}

/// Neighbour masks of the full commuting graph, self excluded.
pub(crate) fn neighbour_masks(table: &CommutationTable) -> Vec<u64> {
    let m = table.group().order();
    (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && table.commutes_idx(i, j))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect()
}

pub(crate) fn mask_indices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn has_isolated(mask: u64, nbrs: &[u64]) -> bool {
    mask_indices(mask).into_iter().any(|v| nbrs[v] & mask == 0)
}

fn connected(mask: u64, nbrs: &[u64]) -> bool {
    if mask == 0 {
        return true;
    }
    let mut seen = 1u64 << mask.trailing_zeros();
    loop {
        let grown = mask_indices(seen)
            .into_iter()
            .fold(seen, |acc, v| acc | (nbrs[v] & mask));
        if grown == seen {
            return seen == mask;
        }
        seen = grown;
    }
}

pub(crate) fn induced(mask: u64, nbrs: &[u64]) -> Graph {
    let idx = mask_indices(mask);
    let mut g = Graph::empty(idx.len());
    for (a, &u) in idx.iter().enumerate() {
        for (b, &v) in idx.iter().enumerate().skip(a + 1) {
            if nbrs[u] >> v & 1 == 1 {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// NSSD hits in one prefix block, in lexicographic subset order.
fn scan_block(
    first: usize,
    order: usize,
    m: usize,
    nbrs: &[u64],
    opts: &EnumerationOptions,
) -> Vec<(u64, Graph, CanonicalForm)> {
    let mut hits = Vec::new();
    for rest in (first + 1..m).combinations(order - 1) {
        let mask = rest.iter().fold(1u64 << first, |acc, &v| acc | 1 << v);
        if opts.prune && has_isolated(mask, nbrs) {
            continue;
        }
        if opts.connected_only && !connected(mask, nbrs) {
            continue;
        }
        let g = induced(mask, nbrs);
        let ok = if opts.prune {
            is_nssd_fast(&g)
        } else {
            is_nssd(&g).verdict
        };
        if ok {
            let form = canonical_form(&g).expect("order <= 16");
            hits.push((mask, g, form));
        }
    }
    hits
}

fn enumerate_orders(group: GroupCtx, opts: &EnumerationOptions) -> EnumerationReport {
    let table = CommutationTable::new(&HvGroupCtx::new(group));
    let nbrs = neighbour_masks(&table);
    let m = group.order();
    let n = group.n();
    let mut report = EnumerationReport::default();
    for order in opts.min_order..=opts.max_order {
        let blocks: Vec<Vec<(u64, Graph, CanonicalForm)>> = (0..=m - order)
            .into_par_iter()
            .map(|first| scan_block(first, order, m, &nbrs, opts))
            .collect();
        let mut count = 0u64;
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        for (mask, graph, form) in blocks.into_iter().flatten() {
            count += 1;
            if seen.insert(form.clone()) {
                report.representatives.push(Representative {
                    n,
                    order,
                    class_index: seen.len() - 1,
                    subset: mask_indices(mask)
                        .into_iter()
                        .map(|i| group.element_at(i))
                        .collect(),
                    graph,
                    form,
                });
            }
        }
        report.rows.push(ReportRow {
            n,
            order,
            nssd_subsets: count,
            nssd_iso_classes: seen.len() as u64,
        });
    }
    report
}

fn run_in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(w) if w > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Counts NSSD subsets and their isomorphism classes for every order in
/// `opts.min_order..=opts.max_order`.
pub fn enumerate_with(n: u32, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    let group = validate(n, opts)?;
    Ok(run_in_pool(opts.workers, || enumerate_orders(group, opts)))
}

pub fn enumerate_nssd(n: u32, min_order: usize, max_order: usize) -> Result<EnumerationReport> {
    enumerate_with(
        n,
        &EnumerationOptions {
            min_order,
            max_order,
            ..Default::default()
        },
    )
}

/// Runs [`enumerate_with`] for each `n`, clamping `max_order` to `2n`.
pub fn enumerate_range(ns: impl IntoIterator<Item = u32>, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    let mut report = EnumerationReport::default();
    for n in ns {
        if opts.min_order < 2 || opts.min_order > opts.max_order || opts.max_order > ENUM_MAX_ORDER {
            return Err(Error::OrderBounds {
                n,
                min: opts.min_order,
                max: opts.max_order,
                limit: ENUM_MAX_ORDER.min(2 * n as usize),
            });
        }
        let mut o = opts.clone();
        o.max_order = o.max_order.min(2 * n as usize);
        if o.min_order > o.max_order {
            continue;
        }
        report.merge(enumerate_with(n, &o)?);
    }
    Ok(report)
}

/// One representative per isomorphism class, first-seen order.
pub fn dedup_iso<'a>(graphs: impl IntoIterator<Item = &'a CommutingGraph>) -> Result<Vec<&'a CommutingGraph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_form(g.graph())?) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Published counts `(n, order, nssd_subsets, nssd_iso_classes)`.
pub const PUBLISHED_TABLE: &[(u32, usize, u64, u64)] = &[
    (2, 2, 6, 1),
    (3, 2, 11, 1),
    (3, 4, 2, 1),
    (4, 2, 22, 1),
    (4, 4, 5, 2),
    (5, 2, 29, 1),
    (5, 4, 54, 2),
    (6, 2, 46, 1),
    (6, 4, 84, 2),
    (7, 2, 41, 1),
    (7, 4, 262, 2),
    (7, 6, 374, 7),
    (7, 8, 130, 15),
    (7, 10, 4, 1),
    (8, 2, 62, 1),
    (8, 4, 409, 2),
    (8, 6, 416, 7),
    (8, 8, 80, 11),
    (8, 10, 4, 1),
];

pub fn published_row(n: u32, order: usize) -> Option<(u64, u64)> {
    PUBLISHED_TABLE
        .iter()
        .find(|r| r.0 == n && r.1 == order)
        .map(|r| (r.2, r.3))
}

/// A computed row that disagrees with the published counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u32,
    pub order: usize,
    /// `None` when the published table has no row here (read as zero).
    pub published: Option<(u64, u64)>,
    pub computed: (u64, u64),
    /// Subsets of the representatives; each is checkable on its own.
    pub witnesses: Vec<Vec<GroupElement>>,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (ps, pc) = self.published.unwrap_or((0, 0));
        write!(
            f,
            "n={} order={}: published {},{} computed {},{}",
            self.n, self.order, ps, pc, self.computed.0, self.computed.1
        )?;
        for w in &self.witnesses {
            write!(f, "; witness {{{}}}", format_subset(w))?;
        }
        Ok(())
    }
}

/// Compares every row of `report` for `n` within the published range
/// (`2 <= n <= 8`) against the published counts. Orders missing from the
/// published table are expected to be zero.
pub fn compare_with_published(report: &EnumerationReport) -> Vec<Mismatch> {
    report
        .rows
        .iter()
        .filter(|r| (2..=8).contains(&r.n))
        .filter_map(|r| {
            let published = published_row(r.n, r.order);
            let computed = (r.nssd_subsets, r.nssd_iso_classes);
            if published.unwrap_or((0, 0)) == computed {
                return None;
            }
            Some(Mismatch {
                n: r.n,
                order: r.order,
                published,
                computed,
                witnesses: report
                    .representatives_for(r.n, r.order)
                    .map(|rep| rep.subset.clone())
                    .collect(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct JsonRepresentative {
    class_index: usize,
    subset: String,
    graph6: String,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    row: &'a ReportRow,
    representatives: Vec<JsonRepresentative>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rows: Vec<JsonRow<'a>>,
}

/// Writes the report. CSV has exactly the columns
/// `n,order,nssd_subsets,nssd_iso_classes`; JSON adds representatives.
pub fn write_report(report: &EnumerationReport, format: ReportFormat, mut out: impl Write) -> std::io::Result<()> {
    let mut rows: Vec<&ReportRow> = report.rows.iter().collect();
    rows.sort_by_key(|r| (r.n, r.order));
    match format {
        ReportFormat::Csv => {
            writeln!(out, "n,order,nssd_subsets,nssd_iso_classes")?;
            for r in rows {
                writeln!(out, "{},{},{},{}", r.n, r.order, r.nssd_subsets, r.nssd_iso_classes)?;
            }
        }
        ReportFormat::Json => {
            let doc = JsonReport {
                rows: rows
                    .into_iter()
                    .map(|row| JsonRow {
                        row,
                        representatives: report
                            .representatives_for(row.n, row.order)
                            .map(|rep| JsonRepresentative {
                                class_index: rep.class_index,
                                subset: format_subset(&rep.subset),
                                graph6: rep.graph6(),
                            })
                            .collect(),
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()
}

pub fn write_report_to_path(report: &EnumerationReport, format: ReportFormat, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    write_report(report, format, std::io::BufWriter::new(file)).map_err(io)
}

pub fn report_to_string(report: &EnumerationReport, format: ReportFormat) -> String {
    let mut buf = Vec::new();
    write_report(report, format, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("report is ASCII")
}
