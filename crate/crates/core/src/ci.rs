//! CI statements, subsets of the ground set, elementary imsets and the
//! semigraphoid axiom system.
//!
//! Elements of the ground set are `1..=n`; a subset is an `n`-bit mask with
//! element `e` stored at bit `e - 1`. Statements are numbered in a fixed
//! order (by `|K|`, then `K` as an integer mask, then the pair
//! lexicographically) and that ordinal is the coordinate used by every
//! vector indexed by statements.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::RationalMatrix;

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if (MIN_N..=MAX_N).contains(&n) {
            Ok(GroundSet(n as u8))
        } else {
            Err(Error::GroundSetSize(n))
        }
    }

    pub fn n(self) -> usize {
        self.0 as usize
    }

    pub fn full(self) -> Subset {
        Subset((1u32 << self.0) - 1)
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(self) -> usize {
        1usize << self.0
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        1..=self.0
    }
}

/// A subset of the ground set as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn from_elements(elems: impl IntoIterator<Item = u8>) -> Self {
        Subset(elems.into_iter().fold(0, |m, e| m | (1 << (e - 1))))
    }

    pub fn singleton(e: u8) -> Self {
        Subset(1 << (e - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u8) -> bool {
        e >= 1 && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: u8) -> Self {
        Subset(self.0 | (1 << (e - 1)))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        let m = self.0;
        (1..=32u8).filter(move |e| m & (1u32 << (e - 1)) != 0)
    }

    /// Image under a relabeling of the ground set.
    pub fn permute(self, sigma: &Permutation) -> Self {
        Subset::from_elements(self.elements().map(|e| sigma.apply(e)))
    }
}

/// Digits in increasing order; the empty set renders as the empty string.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.elements() {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A CI statement `[i ⊥ j | K]` with `i < j` and `i, j ∉ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiStatement {
    i: u8,
    j: u8,
    k: Subset,
}

impl CiStatement {
    /// Builds the canonical form of `[i ⊥ j | K]`; the pair may be given in either order.
    pub fn new(i: u8, j: u8, k: Subset) -> Result<Self> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || i == j || j as usize > MAX_N {
            return Err(Error::InvalidStatement(format!("bad pair ({i}, {j})")));
        }
        if k.contains(i) || k.contains(j) {
            return Err(Error::InvalidStatement(format!(
                "pair ({i}, {j}) meets conditioning set {{{k}}}"
            )));
        }
        if k.mask() >> MAX_N != 0 {
            return Err(Error::InvalidStatement("conditioning set out of range".into()));
        }
        Ok(CiStatement { i, j, k })
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn cond(&self) -> Subset {
        self.k
    }

    /// `|K|`.
    pub fn level(&self) -> usize {
        self.k.len()
    }

    pub fn is_valid_for(&self, ground: GroundSet) -> bool {
        self.j as usize <= ground.n() && self.k.is_subset_of(ground.full())
    }

    /// Largest element mentioned by the statement.
    pub fn max_element(&self) -> u8 {
        self.k.elements().last().unwrap_or(0).max(self.j)
    }
}

impl fmt::Display for CiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}|{}", self.i, self.j, self.k)
    }
}

impl FromStr for CiStatement {
    type Err = Error;

    /// Parses `i.j|k1k2…`, e.g. `2.3|14` or `1.2|`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidStatement(format!("`{s}`: {m}"));
        let (pair, cond) = s.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let (a, b) = pair.split_once('.').ok_or_else(|| bad("missing `.`"))?;
        let digit = |t: &str| -> Result<u8> {
            match t.as_bytes() {
                [c @ b'1'..=b'9'] => Ok(c - b'0'),
                _ => Err(bad("elements must be single digits 1-9")),
            }
        };
        let (i, j) = (digit(a)?, digit(b)?);
        let mut k = Subset::EMPTY;
        for c in cond.chars() {
            let e = digit(c.encode_utf8(&mut [0; 4]))?;
            if k.contains(e) {
                return Err(bad("repeated element in conditioning set"));
            }
            k = k.with(e);
        }
        CiStatement::new(i, j, k)
    }
}

/// Ordinal of a statement in the canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StatementIndex(pub usize);

/// `γ_n = C(n,2) · 2^(n-2)`.
pub fn gamma(n: usize) -> Result<usize> {
    GroundSet::new(n)?;
    Ok(n * (n - 1) / 2 * (1 << (n - 2)))
}

/// All CI statements over `[n]` in canonical order.
pub fn enumerate_statements(n: usize) -> Result<Vec<CiStatement>> {
    let ground = GroundSet::new(n)?;
    let mut out = Vec::with_capacity(gamma(n)?);
    let mut masks: Vec<u32> = (0..ground.subset_count() as u32).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        let k = Subset(m);
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                if !k.contains(i) && !k.contains(j) {
                    out.push(CiStatement { i, j, k });
                }
            }
        }
    }
    Ok(out)
}

/// A relabeling of `[n]`, stored as the word `σ(1) σ(2) … σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    pub fn from_word(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &w in &word {
            if w == 0 || w as usize > n || seen[w as usize] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[w as usize] = true;
        }
        Ok(Permutation { word })
    }

    /// Transposition `(a b)` on `[n]`.
    pub fn transposition(n: usize, a: u8, b: u8) -> Self {
        let mut p = Self::identity(n);
        p.word.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn apply(&self, e: u8) -> u8 {
        self.word[e as usize - 1]
    }

    /// `self ∘ other`, i.e. `e ↦ self(other(e))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            word: other.word.iter().map(|&e| self.apply(e)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut w = vec![0u8; self.n()];
        for (pos, &e) in self.word.iter().enumerate() {
            w[e as usize - 1] = pos as u8 + 1;
        }
        Permutation { word: w }
    }

    /// All `n!` permutations in lexicographic order of their words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation { word: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { word: cur.clone() });
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.word {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let word: Option<Vec<u8>> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect();
        let word = word.ok_or_else(|| Error::InvalidPermutation(s.to_string()))?;
        Permutation::from_word(word)
    }
}

/// `[σi ⊥ σj | σK]` in canonical form.
pub fn apply_permutation(sigma: &Permutation, s: &CiStatement) -> CiStatement {
    let (a, b) = (sigma.apply(s.i), sigma.apply(s.j));
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    CiStatement {
        i,
        j,
        k: s.k.permute(sigma),
    }
}

/// An integer-valued function on the subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Imset {
    ground: GroundSet,
    coeffs: Vec<i64>,
}

impl Imset {
    pub fn zero(ground: GroundSet) -> Self {
        Imset {
            ground,
            coeffs: vec![0; ground.subset_count()],
        }
    }

    /// The basis vector `e_S`.
    pub fn unit(ground: GroundSet, s: Subset) -> Self {
        let mut b = Self::zero(ground);
        b.coeffs[s.mask() as usize] = 1;
        b
    }

    pub fn from_coeffs(ground: GroundSet, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != ground.subset_count() {
            return Err(Error::DimensionMismatch(format!(
                "imset over [{}] needs {} coefficients, got {}",
                ground.n(),
                ground.subset_count(),
                coeffs.len()
            )));
        }
        Ok(Imset { ground, coeffs })
    }

    /// Sum of `coeff · e_S` terms.
    pub fn from_terms(ground: GroundSet, terms: &[(i64, Subset)]) -> Self {
        let mut b = Self::zero(ground);
        for &(c, s) in terms {
            b.coeffs[s.mask() as usize] += c;
        }
        b
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.coeffs[s.mask() as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, factor: i64) -> Imset {
        Imset {
            ground: self.ground,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Imset, factor: i64) {
        assert_eq!(self.ground, other.ground, "imsets over different ground sets");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += factor * b;
        }
    }

    /// `⟨b, f⟩` for a function `f` of the subset.
    pub fn pair_with(&self, f: impl Fn(Subset) -> i64) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| c * f(Subset(m as u32)))
            .sum()
    }

    /// `L_t = Σ_{|S| = t} b_S` for `t = 0..=n`.
    pub fn level_sums(&self) -> Vec<i64> {
        let mut l = vec![0; self.ground.n() + 1];
        for (m, &c) in self.coeffs.iter().enumerate() {
            l[(m as u32).count_ones() as usize] += c;
        }
        l
    }

    /// Nonzero terms ordered by `|S|`, then mask.
    pub fn terms(&self) -> Vec<(i64, Subset)> {
        let mut t: Vec<(i64, Subset)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (c, Subset(m as u32)))
            .collect();
        t.sort_by_key(|(_, s)| (s.len(), s.mask()));
        t
    }
}

impl std::ops::Add for &Imset {
    type Output = Imset;
    fn add(self, rhs: &Imset) -> Imset {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl std::ops::Sub for &Imset {
    type Output = Imset;
    fn sub(self, rhs: &Imset) -> Imset {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

/// Imset text syntax: one `<coeff> <subset-digits>` line per nonzero
/// coefficient, with `0` standing for the empty set.
impl fmt::Display for Imset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, s) in self.terms() {
            if s.is_empty() {
                writeln!(f, "{c} 0")?;
            } else {
                writeln!(f, "{c} {s}")?;
            }
        }
        Ok(())
    }
}

/// `e_{iK} + e_{jK} - e_K - e_{ijK}`.
pub fn elementary_imset(s: &CiStatement, n: usize) -> Result<Imset> {
    let ground = GroundSet::new(n)?;
    if !s.is_valid_for(ground) {
        return Err(Error::InvalidStatement(format!("{s} is not a statement over [{n}]")));
    }
    Ok(Imset::from_terms(ground, &elementary_terms(s)))
}

fn elementary_terms(s: &CiStatement) -> [(i64, Subset); 4] {
    [
        (1, s.k.with(s.i)),
        (1, s.k.with(s.j)),
        (-1, s.k),
        (-1, s.k.with(s.i).with(s.j)),
    ]
}

/// The matrix `A` with one column per statement; column entries are
/// `(row subset, ±1)`.
#[derive(Clone, Debug)]
pub struct ElementaryMatrix {
    ground: GroundSet,
    columns: Vec<[(Subset, i8); 4]>,
}

impl ElementaryMatrix {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn rows(&self) -> usize {
        self.ground.subset_count()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, idx: StatementIndex) -> &[(Subset, i8); 4] {
        &self.columns[idx.0]
    }

    pub fn column_imset(&self, idx: StatementIndex) -> Imset {
        let terms: Vec<(i64, Subset)> = self.columns[idx.0]
            .iter()
            .map(|&(s, c)| (c as i64, s))
            .collect();
        Imset::from_terms(self.ground, &terms)
    }

    /// `A · x` for an integer vector indexed by statements.
    pub fn apply(&self, x: &[i64]) -> Imset {
        assert_eq!(x.len(), self.columns.len(), "vector length must be γ_n");
        let mut b = Imset::zero(self.ground);
        for (col, &m) in self.columns.iter().zip(x) {
            if m != 0 {
                for &(s, c) in col {
                    b.coeffs[s.mask() as usize] += m * c as i64;
                }
            }
        }
        b
    }

    /// `⟨A_c, w⟩` for a vector indexed by subset masks.
    pub fn column_dot(&self, idx: StatementIndex, w: &[Rational]) -> Rational {
        self.columns[idx.0]
            .iter()
            .map(|&(s, c)| &w[s.mask() as usize] * &Rational::from_integer(c as i64))
            .sum()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows(), self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(s, c) in col {
                m.set(s.mask() as usize, j, Rational::from_integer(c as i64));
            }
        }
        m
    }
}

/// A semigraphoid axiom `x + y = z + w` over statement ordinals, stored with
/// each side sorted and the smaller side on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxiomEquation {
    pub lhs: (StatementIndex, StatementIndex),
    pub rhs: (StatementIndex, StatementIndex),
}

impl AxiomEquation {
    pub fn canonical(
        x: StatementIndex,
        y: StatementIndex,
        z: StatementIndex,
        w: StatementIndex,
    ) -> Self {
        let l = if x <= y { (x, y) } else { (y, x) };
        let r = if z <= w { (z, w) } else { (w, z) };
        if l <= r {
            AxiomEquation { lhs: l, rhs: r }
        } else {
            AxiomEquation { lhs: r, rhs: l }
        }
    }

    /// `e_x + e_y - e_z - e_w` as a dense vector of length `len`.
    pub fn signed_vector(&self, len: usize) -> Vec<i64> {
        let mut v = vec![0; len];
        v[self.lhs.0 .0] += 1;
        v[self.lhs.1 .0] += 1;
        v[self.rhs.0 .0] -= 1;
        v[self.rhs.1 .0] -= 1;
        v
    }

    pub fn indices(&self) -> [StatementIndex; 4] {
        [self.lhs.0, self.lhs.1, self.rhs.0, self.rhs.1]
    }
}

/// Everything derived from `n` alone: statements, lookup, matrix, axioms.
#[derive(Debug)]
pub struct CiSpace {
    ground: GroundSet,
    statements: Vec<CiStatement>,
    lookup: Vec<u32>,
    matrix: ElementaryMatrix,
    axioms: Vec<AxiomEquation>,
}

const NO_INDEX: u32 = u32::MAX;

impl CiSpace {
    /// Shared instance for `n`; built on first use.
    pub fn get(n: usize) -> Result<&'static CiSpace> {
        static SPACES: [OnceLock<CiSpace>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
        let ground = GroundSet::new(n)?;
        Ok(SPACES[n].get_or_init(|| CiSpace::build(ground)))
    }

    fn build(ground: GroundSet) -> CiSpace {
        let n = ground.n();
        let statements = enumerate_statements(n).expect("validated n");
        let mut lookup = vec![NO_INDEX; n * n * ground.subset_count()];
        for (idx, s) in statements.iter().enumerate() {
            lookup[Self::slot(n, s)] = idx as u32;
        }
        let matrix = ElementaryMatrix {
            ground,
            columns: statements.iter().map(|s| {
                let t = elementary_terms(s);
                [
                    (t[0].1, 1),
                    (t[1].1, 1),
                    (t[2].1, -1),
                    (t[3].1, -1),
                ]
            }).collect(),
        };
        let mut space = CiSpace {
            ground,
            statements,
            lookup,
            matrix,
            axioms: Vec::new(),
        };
        space.axioms = space.raw_axioms();
        space
    }

    fn slot(n: usize, s: &CiStatement) -> usize {
        ((s.i as usize - 1) * n + (s.j as usize - 1)) * (1 << n) + s.k.mask() as usize
    }

    /// Raw generator over `(i, j, ℓ, K)`, deduplicated via canonical form.
    fn raw_axioms(&self) -> Vec<AxiomEquation> {
        let n = self.ground.n() as u8;
        let mut out = Vec::new();
        for km in 0..self.ground.subset_count() as u32 {
            let k = Subset(km);
            for i in 1..=n {
                for j in 1..=n {
                    for l in 1..=n {
                        if i == j || i == l || j == l || k.contains(i) || k.contains(j) || k.contains(l) {
                            continue;
                        }
                        let st = |a: u8, b: u8, c: Subset| {
                            self.index_of(&CiStatement::new(a, b, c).expect("valid"))
                                .expect("statement over [n]")
                        };
                        // [i⊥j|K∪ℓ] + [i⊥ℓ|K] = [i⊥j|K] + [i⊥ℓ|K∪j]
                        out.push(AxiomEquation::canonical(
                            st(i, j, k.with(l)),
                            st(i, l, k),
                            st(i, j, k),
                            st(i, l, k.with(j)),
                        ));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    /// `γ_n`.
    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn statements(&self) -> &[CiStatement] {
        &self.statements
    }

    pub fn statement(&self, idx: StatementIndex) -> CiStatement {
        self.statements[idx.0]
    }

    pub fn index_of(&self, s: &CiStatement) -> Option<StatementIndex> {
        if !s.is_valid_for(self.ground) {
            return None;
        }
        match self.lookup[Self::slot(self.n(), s)] {
            NO_INDEX => None,
            i => Some(StatementIndex(i as usize)),
        }
    }

    /// Ordinal of a statement given in `i.j|K` text.
    pub fn parse_index(&self, text: &str) -> Result<StatementIndex> {
        let s: CiStatement = text.parse()?;
        self.index_of(&s)
            .ok_or_else(|| Error::InvalidStatement(format!("{s} is not a statement over [{}]", self.n())))
    }

    pub fn matrix(&self) -> &ElementaryMatrix {
        &self.matrix
    }

    pub fn axioms(&self) -> &[AxiomEquation] {
        &self.axioms
    }

    /// Renders an axiom as `x + y = z + w`.
    pub fn format_axiom(&self, ax: &AxiomEquation) -> String {
        format!(
            "{} + {} = {} + {}",
            self.statement(ax.lhs.0),
            self.statement(ax.lhs.1),
            self.statement(ax.rhs.0),
            self.statement(ax.rhs.1)
        )
    }

    /// Parses `x + y = z + w` into canonical form.
    pub fn parse_axiom(&self, text: &str) -> Result<AxiomEquation> {
        let bad = || Error::InvalidStatement(format!("malformed axiom `{text}`"));
        let (l, r) = text.split_once('=').ok_or_else(bad)?;
        let side = |s: &str| -> Result<(StatementIndex, StatementIndex)> {
            let (a, b) = s.split_once('+').ok_or_else(bad)?;
            Ok((self.parse_index(a.trim())?, self.parse_index(b.trim())?))
        };
        let (x, y) = side(l)?;
        let (z, w) = side(r)?;
        Ok(AxiomEquation::canonical(x, y, z, w))
    }

    /// Index permutation induced by a relabeling of `[n]`.
    pub fn permutation_action(&self, sigma: &Permutation) -> Vec<StatementIndex> {
        self.statements
            .iter()
            .map(|s| self.index_of(&apply_permutation(sigma, s)).expect("closed under S_n"))
            .collect()
    }
}

/// The `2^n × γ_n` matrix of elementary imsets.
pub fn build_matrix(n: usize) -> Result<ElementaryMatrix> {
    Ok(CiSpace::get(n)?.matrix.clone())
}

/// The canonical, duplicate-free semigraphoid axiom list.
pub fn generate_axioms(n: usize) -> Result<Vec<AxiomEquation>> {
    Ok(CiSpace::get(n)?.axioms.clone())
}

/// Statement counts `(n_0, …, n_{n-2})` per conditioning-set size forced on any
/// `x ∈ ℕ^γ` with `A·x = b`, or `None` when no nonnegative integer solution
/// of the level recursion exists.
pub fn level_counts(b: &Imset) -> Option<Vec<u64>> {
    let n = b.ground.n();
    let l = b.level_sums();
    let mut counts: Vec<i64> = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let prev1 = if t >= 1 { counts[t - 1] } else { 0 };
        let prev2 = if t >= 2 { counts[t - 2] } else { 0 };
        counts.push(2 * prev1 - prev2 - l[t]);
    }
    // Levels n-1 and n carry no statements: they are consistency rows.
    if counts[n - 1] != 0 || counts[n] != 0 {
        return None;
    }
    counts.truncate(n - 1);
    if counts.iter().any(|&c| c < 0) {
        return None;
    }
    Some(counts.into_iter().map(|c| c as u64).collect())
}

/// `-⟨b, |S|²⟩ / 2`: the total number of statements in any preimage of `b`.
pub fn degree_functional(b: &Imset) -> i64 {
    -b.pair_with(|s| (s.len() * s.len()) as i64) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> CiStatement {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(3).unwrap(), 6);
        assert_eq!(gamma(4).unwrap(), 24);
        assert_eq!(gamma(5).unwrap(), 80);
        assert!(gamma(1).is_err());
        assert!(gamma(9).is_err());
    }

    #[test]
    fn statement_syntax() {
        let s = st("2.3|14");
        assert_eq!((s.i(), s.j(), s.cond().mask()), (2, 3, 0b1001));
        assert_eq!(s.to_string(), "2.3|14");
        assert_eq!(st("1.2|").to_string(), "1.2|");
        assert_eq!(st("3.2|41").to_string(), "2.3|14");
        assert!("2.3|23".parse::<CiStatement>().is_err());
        assert!("2.2|".parse::<CiStatement>().is_err());
        assert!("23|1".parse::<CiStatement>().is_err());
        assert!("2.3|11".parse::<CiStatement>().is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(
            enumerate_statements(2).unwrap().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            vec!["1.2|"]
        );
        let three: Vec<String> = enumerate_statements(3)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(three, vec!["1.2|", "1.3|", "2.3|", "2.3|1", "1.3|2", "1.2|3"]);
        let four = enumerate_statements(4).unwrap();
        assert_eq!(four.len(), 24);
        let by_level = |k| four.iter().filter(|s| s.level() == k).count();
        assert_eq!((by_level(0), by_level(1), by_level(2)), (6, 12, 6));
    }

    #[test]
    fn ordinal_lookup_is_inverse() {
        for n in 2..=6 {
            let space = CiSpace::get(n).unwrap();
            for (idx, s) in space.statements().iter().enumerate() {
                assert_eq!(space.index_of(s), Some(StatementIndex(idx)));
            }
        }
        let space = CiSpace::get(4).unwrap();
        assert_eq!(space.index_of(&st("4.5|")), None);
    }

    #[test]
    fn elementary_imset_shape() {
        let b = elementary_imset(&st("1.2|"), 3).unwrap();
        let g = GroundSet::new(3).unwrap();
        let expect = Imset::from_terms(
            g,
            &[
                (1, Subset::singleton(1)),
                (1, Subset::singleton(2)),
                (-1, Subset::EMPTY),
                (-1, Subset::from_elements([1, 2])),
            ],
        );
        assert_eq!(b, expect);
        for s in enumerate_statements(5).unwrap() {
            let b = elementary_imset(&s, 5).unwrap();
            assert_eq!(b.coeffs().iter().sum::<i64>(), 0);
            assert_eq!(b.pair_with(|t| (t.len() * t.len()) as i64), -2);
            assert_eq!(b.terms().len(), 4);
        }
        assert!(elementary_imset(&st("4.5|"), 4).is_err());
    }

    #[test]
    fn axiom_counts_and_kernel() {
        for n in 2..=6 {
            let space = CiSpace::get(n).unwrap();
            let expect = if n < 3 { 0 } else { 3 * (n * (n - 1) * (n - 2) / 6) * (1 << (n - 3)) };
            assert_eq!(space.axioms().len(), expect, "n = {n}");
            for ax in space.axioms() {
                let v = ax.signed_vector(space.len());
                assert!(space.matrix().apply(&v).is_zero());
            }
        }
    }

    #[test]
    fn n3_axioms_are_the_minors() {
        let space = CiSpace::get(3).unwrap();
        let got: Vec<String> = space.axioms().iter().map(|a| space.format_axiom(a)).collect();
        // minors of [[1.2|, 1.3|, 2.3|], [1.2|3, 1.3|2, 2.3|1]]
        let minors = [
            space.parse_axiom("1.2| + 1.3|2 = 1.3| + 1.2|3").unwrap(),
            space.parse_axiom("1.2| + 2.3|1 = 2.3| + 1.2|3").unwrap(),
            space.parse_axiom("1.3| + 2.3|1 = 2.3| + 1.3|2").unwrap(),
        ];
        let mut want: Vec<String> = minors.iter().map(|a| space.format_axiom(a)).collect();
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn permutation_action() {
        let id = Permutation::identity(5);
        let s = st("2.3|14");
        assert_eq!(apply_permutation(&id, &s), s);
        let t15 = Permutation::transposition(5, 1, 5);
        assert_eq!(apply_permutation(&t15, &st("1.5|")), st("1.5|"));
        let t45 = Permutation::transposition(5, 4, 5);
        assert_eq!(apply_permutation(&t45, &s), st("2.3|15"));
        assert_eq!(Permutation::all(4).len(), 24);
        let p: Permutation = "45123".parse().unwrap();
        assert_eq!(p.compose(&p.inverse()), id);
    }

    #[test]
    fn level_counts_examples() {
        let g = GroundSet::new(5).unwrap();
        assert_eq!(level_counts(&Imset::zero(g)), Some(vec![0, 0, 0, 0]));
        assert_eq!(level_counts(&Imset::unit(g, Subset::EMPTY)), None);
        for s in enumerate_statements(5).unwrap() {
            let b = elementary_imset(&s, 5).unwrap();
            let mut unit = vec![0u64; 4];
            unit[s.level()] = 1;
            assert_eq!(level_counts(&b), Some(unit));
        }
    }

    proptest::proptest! {
        #[test]
        fn action_is_a_group_action(a in 0usize..120, b in 0usize..120, s in 0usize..80) {
            let perms = Permutation::all(5);
            let space = CiSpace::get(5).unwrap();
            let (sigma, tau) = (&perms[a], &perms[b]);
            let st = space.statement(StatementIndex(s));
            proptest::prop_assert_eq!(
                apply_permutation(&sigma.compose(tau), &st),
                apply_permutation(sigma, &apply_permutation(tau, &st))
            );
        }

        #[test]
        fn degree_matches_level_counts(x in proptest::collection::vec(0i64..4, 24)) {
            let space = CiSpace::get(4).unwrap();
            let b = space.matrix().apply(&x);
            let counts = level_counts(&b).expect("image of ℕ^γ has levels");
            proptest::prop_assert_eq!(counts.iter().sum::<u64>() as i64, degree_functional(&b));
            for k in 0..3 {
                let direct: i64 = space.statements().iter().zip(&x)
                    .filter(|(s, _)| s.level() == k).map(|(_, m)| *m).sum();
                proptest::prop_assert_eq!(counts[k] as i64, direct);
            }
        }
    }
}
