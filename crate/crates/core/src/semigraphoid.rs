//! Sets of CI statements, the semigraphoid predicate and closure, and the
//! exhaustive scan for small ground sets.

use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::ci::{CiSpace, CiStatement, GroundSet, Permutation, StatementIndex};
use crate::error::{Error, Result};

/// A subset of the `γ_n` CI statements over `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StatementSet {
    ground: GroundSet,
    members: FixedBitSet,
}

impl StatementSet {
    pub fn empty(n: usize) -> Result<Self> {
        let space = CiSpace::get(n)?;
        Ok(StatementSet {
            ground: space.ground(),
            members: FixedBitSet::with_capacity(space.len()),
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        s.members.insert_range(..);
        Ok(s)
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = StatementIndex>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for i in idx {
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_statements<'a>(n: usize, stmts: impl IntoIterator<Item = &'a CiStatement>) -> Result<Self> {
        let space = CiSpace::get(n)?;
        let mut s = Self::empty(n)?;
        for st in stmts {
            let idx = space
                .index_of(st)
                .ok_or_else(|| Error::InvalidStatement(format!("{st} is not a statement over [{n}]")))?;
            s.insert(idx);
        }
        Ok(s)
    }

    /// Parses whitespace- or comma-separated statements in `i.j|K` syntax.
    pub fn parse_list(n: usize, text: &str) -> Result<Self> {
        let space = CiSpace::get(n)?;
        let idx = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| space.parse_index(t))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(n, idx)
    }

    /// Bit `k` of `mask` is statement ordinal `k`; requires `γ_n ≤ 64`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let space = CiSpace::get(n)?;
        assert!(space.len() <= 64, "mask form needs γ_n ≤ 64");
        let idx = (0..space.len()).filter(|k| mask >> k & 1 == 1).map(StatementIndex);
        Self::from_indices(n, idx)
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.members.len() > 64 {
            return None;
        }
        Some(self.members.ones().fold(0u64, |m, k| m | 1 << k))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn space(&self) -> &'static CiSpace {
        CiSpace::get(self.n()).expect("validated at construction")
    }

    pub fn contains(&self, idx: StatementIndex) -> bool {
        self.members.contains(idx.0)
    }

    pub fn contains_statement(&self, s: &CiStatement) -> bool {
        self.space().index_of(s).is_some_and(|i| self.contains(i))
    }

    pub fn insert(&mut self, idx: StatementIndex) {
        self.members.insert(idx.0);
    }

    pub fn remove(&mut self, idx: StatementIndex) {
        self.members.set(idx.0, false);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = StatementIndex> + '_ {
        self.members.ones().map(StatementIndex)
    }

    pub fn statements(&self) -> Vec<CiStatement> {
        let space = self.space();
        self.iter().map(|i| space.statement(i)).collect()
    }

    pub fn union(&self, other: &StatementSet) -> StatementSet {
        let mut out = self.clone();
        out.members.union_with(&other.members);
        out
    }

    pub fn intersection(&self, other: &StatementSet) -> StatementSet {
        let mut out = self.clone();
        out.members.intersect_with(&other.members);
        out
    }

    pub fn complement(&self) -> StatementSet {
        let mut out = self.clone();
        out.members.toggle_range(..);
        out
    }

    pub fn is_subset(&self, other: &StatementSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Image under a relabeling of `[n]`.
    pub fn permuted(&self, sigma: &Permutation) -> StatementSet {
        let action = self.space().permutation_action(sigma);
        let mut out = StatementSet {
            ground: self.ground,
            members: FixedBitSet::with_capacity(self.members.len()),
        };
        for i in self.iter() {
            out.insert(action[i.0]);
        }
        out
    }
}

impl fmt::Debug for StatementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.statements().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// One statement per line, canonical order.
impl fmt::Display for StatementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.statements() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// For every axiom `x + y = z + w`: `{x, y} ⊆ S ⟺ {z, w} ⊆ S`.
pub fn is_semigraphoid(s: &StatementSet) -> bool {
    s.space().axioms().iter().all(|ax| {
        let l = s.contains(ax.lhs.0) && s.contains(ax.lhs.1);
        let r = s.contains(ax.rhs.0) && s.contains(ax.rhs.1);
        l == r
    })
}

/// Smallest semigraphoid containing `s`.
pub fn closure(s: &StatementSet) -> StatementSet {
    let axioms = s.space().axioms();
    let mut out = s.clone();
    loop {
        let mut changed = false;
        for ax in axioms {
            let l = out.contains(ax.lhs.0) && out.contains(ax.lhs.1);
            let r = out.contains(ax.rhs.0) && out.contains(ax.rhs.1);
            if l && !r {
                out.insert(ax.rhs.0);
                out.insert(ax.rhs.1);
                changed = true;
            } else if r && !l {
                out.insert(ax.lhs.0);
                out.insert(ax.lhs.1);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// A semigraphoid other than the full set that closes to the full set
/// whenever any missing statement is added.
pub fn is_coarsest(s: &StatementSet) -> Result<bool> {
    if !is_semigraphoid(s) {
        return Err(Error::NotSemigraphoid);
    }
    if s.is_full() {
        return Ok(false);
    }
    Ok(s.complement().iter().all(|c| {
        let mut t = s.clone();
        t.insert(c);
        closure(&t).is_full()
    }))
}

/// Counts of members by conditioning-set size `0..=n-2`.
pub fn type_signature(s: &StatementSet) -> Vec<usize> {
    let mut counts = vec![0; s.n() - 1];
    for st in s.statements() {
        counts[st.level()] += 1;
    }
    counts
}

/// Per-axiom `(lhs mask, rhs mask)` over statement ordinals, for `γ_n ≤ 32`.
fn axiom_masks(space: &CiSpace) -> Vec<(u32, u32)> {
    space
        .axioms()
        .iter()
        .map(|ax| {
            (
                1u32 << ax.lhs.0 .0 | 1u32 << ax.lhs.1 .0,
                1u32 << ax.rhs.0 .0 | 1u32 << ax.rhs.1 .0,
            )
        })
        .collect()
}

fn check_enumerable(n: usize) -> Result<&'static CiSpace> {
    if n > 4 {
        return Err(Error::EnumerationTooLarge(n));
    }
    CiSpace::get(n)
}

/// Semigraphoid bitmasks within `range` of the `2^γ_n` candidates, in
/// increasing order. Disjoint ranges can be scanned independently.
pub fn scan_masks(n: usize, range: std::ops::Range<u64>) -> Result<Vec<u32>> {
    let space = check_enumerable(n)?;
    let masks = axiom_masks(space);
    let end = range.end.min(1u64 << space.len());
    Ok((range.start..end)
        .map(|m| m as u32)
        .filter(|&m| masks.iter().all(|&(l, r)| (m & l == l) == (m & r == r)))
        .collect())
}

const SCAN_PARTITIONS: u64 = 256;

/// All semigraphoid masks for `n ≤ 4`, scanning partitions in parallel and
/// concatenating them in index order.
pub fn enumerate_masks(n: usize) -> Result<Vec<u32>> {
    let space = check_enumerable(n)?;
    let total = 1u64 << space.len();
    let parts = SCAN_PARTITIONS.min(total);
    let step = total.div_ceil(parts);
    let chunks: Vec<Vec<u32>> = (0..parts)
        .into_par_iter()
        .map(|p| scan_masks(n, p * step..((p + 1) * step).min(total)))
        .collect::<Result<_>>()?;
    Ok(chunks.concat())
}

/// Every semigraphoid over `[n]` for `n ≤ 4`.
pub fn enumerate_all(n: usize) -> Result<Vec<StatementSet>> {
    enumerate_masks(n)?
        .into_iter()
        .map(|m| StatementSet::from_mask(n, m as u64))
        .collect()
}

/// Non-submodular semigraphoids of one size and type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassificationRow {
    pub size: usize,
    pub signature: Vec<usize>,
    pub non_simplicial: usize,
    pub simplicial: usize,
}

impl ClassificationRow {
    pub fn total(&self) -> usize {
        self.non_simplicial + self.simplicial
    }

    pub fn signature_text(&self) -> String {
        let parts: Vec<String> = self.signature.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// `size  (m0,m1,…)  non_simplicial  simplicial  total`, tab separated.
impl fmt::Display for ClassificationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.size,
            self.signature_text(),
            self.non_simplicial,
            self.simplicial,
            self.total()
        )
    }
}

pub const CLASSIFICATION_HEADER: &str = "size\ttype\tnon_simplicial\tsimplicial\ttotal";

/// Everything learned from one pass over all semigraphoids of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub semigraphoids: usize,
    pub submodular: usize,
    pub non_submodular: usize,
    /// Rows sorted by size then type.
    pub table: Vec<ClassificationRow>,
    /// Classes where the cover criterion and the extreme-ray oracle differ.
    pub oracle_disagreements: usize,
    pub classes_checked: usize,
}

impl SweepReport {
    pub fn rows_up_to(&self, max_size: usize) -> Vec<ClassificationRow> {
        self.table.iter().filter(|r| r.size <= max_size).cloned().collect()
    }
}

struct SweepItem {
    submodular: bool,
    simplicial: Option<bool>,
    size: usize,
    signature: Vec<usize>,
    disagreements: usize,
    classes: usize,
}

fn sweep_one(s: &StatementSet) -> Result<SweepItem> {
    let submodular = crate::submodular::is_submodular(s)?.submodular;
    let mut item = SweepItem {
        submodular,
        simplicial: None,
        size: s.len(),
        signature: type_signature(s),
        disagreements: 0,
        classes: 0,
    };
    if !submodular {
        let part = crate::geometry::rank_test(s)?;
        for c in part.classes() {
            let poset = crate::geometry::class_poset(c);
            if poset.pre_convex && poset.is_simplicial() != crate::geometry::order_cone_is_simplicial(&poset) {
                item.disagreements += 1;
            }
            item.classes += 1;
        }
        item.simplicial = Some(crate::geometry::is_simplicial_partition(&part)?);
    }
    Ok(item)
}

/// Decides submodularity and simpliciality for every semigraphoid of `[n]`,
/// `n ≤ 4`, in parallel.
pub fn sweep(n: usize) -> Result<SweepReport> {
    let all = enumerate_all(n)?;
    let items: Vec<SweepItem> = all.par_iter().map(sweep_one).collect::<Result<_>>()?;
    let mut rows: std::collections::BTreeMap<(usize, Vec<usize>), (usize, usize)> = Default::default();
    let mut report = SweepReport {
        n,
        semigraphoids: all.len(),
        submodular: 0,
        non_submodular: 0,
        table: Vec::new(),
        oracle_disagreements: 0,
        classes_checked: 0,
    };
    for it in items {
        report.oracle_disagreements += it.disagreements;
        report.classes_checked += it.classes;
        if it.submodular {
            report.submodular += 1;
            continue;
        }
        report.non_submodular += 1;
        let e = rows.entry((it.size, it.signature)).or_default();
        if it.simplicial == Some(true) {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    report.table = rows
        .into_iter()
        .map(|((size, signature), (non_simplicial, simplicial))| ClassificationRow {
            size,
            signature,
            non_simplicial,
            simplicial,
        })
        .collect();
    Ok(report)
}

/// The classification of non-submodular semigraphoids by size and type.
pub fn classification_table(n: usize) -> Result<Vec<ClassificationRow>> {
    Ok(sweep(n)?.table)
}
