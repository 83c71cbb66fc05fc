//! Membership in the semigroup `A·ℕ^γ` and in its real cone, fibers of
//! `A`, and the non-normality check.
//!
//! Fibers are searched level by level. Any preimage of `b` uses exactly
//! `level_counts(b)[k]` statements with `|K| = k`. When level `k` starts,
//! every residual entry at a subset `S` with `|S| = k` can only be raised by
//! level-`k` statements conditioned on `S` itself, so its multiplicity there
//! is forced to `-r_S`. Only the pairs within each conditioning set branch.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::ci::{level_counts, CiSpace, CiStatement, GroundSet, Imset, StatementIndex, Subset};
use crate::error::{Error, Result};
use crate::lp::{single_ray_generator, solve_feasibility, Bound, FeasibilityProblem, RationalMatrix};
use crate::rational::Rational;
use crate::report::Report;

pub const DEFAULT_DEGREE_CAP: usize = 12;

/// A multiset of statements, as multiplicities over the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonNegCombination {
    n: usize,
    multiplicities: Vec<u64>,
}

impl NonNegCombination {
    pub fn new(n: usize, multiplicities: Vec<u64>) -> Result<Self> {
        let g = CiSpace::get(n)?.len();
        if multiplicities.len() != g {
            return Err(Error::DimensionMismatch(format!("expected {g} multiplicities, got {}", multiplicities.len())));
        }
        Ok(NonNegCombination { n, multiplicities })
    }

    /// Parses `i.j|K` tokens with optional `^mult`.
    pub fn parse_tokens(n: usize, text: &str) -> Result<Self> {
        let space = CiSpace::get(n)?;
        let mut m = vec![0u64; space.len()];
        for tok in text.split_whitespace() {
            let (st, mult) = match tok.split_once('^') {
                Some((s, k)) => (s, k.parse::<u64>().map_err(|_| Error::InvalidStatement(format!("bad multiplicity in `{tok}`")))?),
                None => (tok, 1),
            };
            m[space.parse_index(st)?.0] += mult;
        }
        Ok(NonNegCombination { n, multiplicities: m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn degree(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    pub fn image(&self) -> Imset {
        let space = CiSpace::get(self.n).expect("validated at construction");
        let x: Vec<i64> = self.multiplicities.iter().map(|&v| v as i64).collect();
        space.matrix().apply(&x)
    }

    pub fn terms(&self) -> Vec<(u64, CiStatement)> {
        let space = CiSpace::get(self.n).expect("validated at construction");
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| (m, space.statement(StatementIndex(c))))
            .collect()
    }

    /// Statement counts by conditioning-set size.
    pub fn level_profile(&self) -> Vec<u64> {
        let mut p = vec![0; self.n - 1];
        for (m, s) in self.terms() {
            p[s.level()] += m;
        }
        p
    }
}

/// Whitespace-separated `i.j|K` tokens, `^mult` when above one.
impl fmt::Display for NonNegCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(m, s)| if m == 1 { s.to_string() } else { format!("{s}^{m}") })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub target: Imset,
    pub elements: BTreeSet<NonNegCombination>,
}

/// `{A·x = b, x ≥ 0}` is feasible over the rationals.
pub fn is_structural(b: &Imset) -> Result<bool> {
    Ok(structural_witness(b)?.is_some())
}

pub fn structural_witness(b: &Imset) -> Result<Option<Vec<Rational>>> {
    let space = CiSpace::get(b.ground().n())?;
    let rhs = b.coeffs().iter().map(|&v| Rational::from_integer(v)).collect();
    let p = FeasibilityProblem::new(space.matrix().to_rational(), rhs, vec![Bound::nonneg(); space.len()])?;
    Ok(solve_feasibility(&p)?.witness().map(<[Rational]>::to_vec))
}

struct Search<'a> {
    space: &'static CiSpace,
    n: usize,
    counts: &'a [u64],
    by_size: Vec<Vec<Subset>>,
    by_cond: Vec<Vec<usize>>,
    residual: Vec<i64>,
    x: Vec<u64>,
    first_only: bool,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    fn apply(&mut self, c: usize, sign: i64) {
        for &(s, coef) in self.space.matrix().column(StatementIndex(c)) {
            self.residual[s.mask() as usize] -= sign * coef as i64;
        }
        if sign > 0 {
            self.x[c] += 1;
        } else {
            self.x[c] -= 1;
        }
    }

    /// Positive residual two sizes up can only be cancelled by the next
    /// level, two units per statement.
    fn overshoot_ok(&self, level: usize) -> bool {
        let size = level + 2;
        if size > self.n {
            return true;
        }
        let budget = if level < self.n - 2 { 2 * self.counts[level + 1] as i64 } else { 0 };
        let excess: i64 = self.by_size[size].iter().map(|s| self.residual[s.mask() as usize].max(0)).sum();
        excess <= budget
    }

    fn start_level(&mut self, level: usize) {
        if self.done() {
            return;
        }
        if level > self.n - 2 {
            if self.residual.iter().all(|&r| r == 0) {
                self.found.push(self.x.clone());
            }
            return;
        }
        let demand: i64 = self.by_size[level].iter().map(|s| -self.residual[s.mask() as usize]).sum();
        if demand != self.counts[level] as i64 {
            return;
        }
        self.enter_subset(level, 0);
    }

    fn enter_subset(&mut self, level: usize, si: usize) {
        if si == self.by_size[level].len() {
            self.finish_level(level);
            return;
        }
        let k = self.by_size[level][si];
        let need = -self.residual[k.mask() as usize];
        if need < 0 {
            return;
        }
        self.choose(level, si, need as u64, 0);
    }

    fn choose(&mut self, level: usize, si: usize, remaining: u64, start: usize) {
        if self.done() {
            return;
        }
        if remaining == 0 {
            self.enter_subset(level, si + 1);
            return;
        }
        let k = self.by_size[level][si].mask() as usize;
        for t in start..self.by_cond[k].len() {
            let c = self.by_cond[k][t];
            self.apply(c, 1);
            if self.overshoot_ok(level) {
                self.choose(level, si, remaining - 1, t);
            }
            self.apply(c, -1);
            if self.done() {
                return;
            }
        }
    }

    fn finish_level(&mut self, level: usize) {
        // Entries one size up can only be raised from here on.
        let next = level + 1;
        if next <= self.n && self.by_size[next].iter().any(|s| self.residual[s.mask() as usize] > 0) {
            return;
        }
        self.start_level(level + 1);
    }
}

fn run_search(b: &Imset, first_only: bool, cap: Option<usize>) -> Result<Vec<Vec<u64>>> {
    let n = b.ground().n();
    let space = CiSpace::get(n)?;
    let Some(counts) = level_counts(b) else {
        return Ok(Vec::new());
    };
    let degree: u64 = counts.iter().sum();
    if let Some(cap) = cap {
        if degree > cap as u64 {
            return Err(Error::DegreeCapExceeded { degree: degree as usize, cap });
        }
    }
    let ground = GroundSet::new(n)?;
    let mut by_size = vec![Vec::new(); n + 1];
    for m in 0..ground.subset_count() as u32 {
        let s = Subset::from_mask(m);
        by_size[s.len()].push(s);
    }
    let mut by_cond = vec![Vec::new(); ground.subset_count()];
    for (c, s) in space.statements().iter().enumerate() {
        by_cond[s.cond().mask() as usize].push(c);
    }
    let mut search = Search {
        space,
        n,
        counts: &counts,
        by_size,
        by_cond,
        residual: b.coeffs().to_vec(),
        x: vec![0; space.len()],
        first_only,
        found: Vec::new(),
    };
    search.start_level(0);
    for x in &search.found {
        let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
        if space.matrix().apply(&xi) != *b {
            return Err(Error::Internal("fiber element failed re-multiplication".into()));
        }
    }
    Ok(search.found)
}

/// A witness `x ∈ ℕ^γ` with `A·x = b`, or `None` after exhaustive search.
pub fn is_combinatorial(b: &Imset) -> Result<Option<NonNegCombination>> {
    let n = b.ground().n();
    Ok(run_search(b, true, None)?
        .into_iter()
        .next()
        .map(|m| NonNegCombination { n, multiplicities: m }))
}

/// Every preimage of `b` in `ℕ^γ`.
pub fn enumerate_fiber(b: &Imset, max_degree: usize) -> Result<Fiber> {
    let n = b.ground().n();
    let elements = run_search(b, false, Some(max_degree))?
        .into_iter()
        .map(|m| NonNegCombination { n, multiplicities: m })
        .collect();
    Ok(Fiber { target: b.clone(), elements })
}

/// `{(z, u) ≥ 0 : A·z = u·b}`, as the matrix `[A | -b]`.
pub fn homogenized_matrix(b: &Imset) -> Result<RationalMatrix> {
    let space = CiSpace::get(b.ground().n())?;
    let a = space.matrix().to_rational();
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut r = a.row(i).to_vec();
        r.push(Rational::from_integer(-b.coeffs()[i]));
        rows.push(r);
    }
    RationalMatrix::from_rows(a.cols() + 1, rows)
}

/// Structural but not combinatorial, with `2b` combinatorial and the
/// homogenized cone the single ray through `(ray, 2)`.
pub fn verify_nonnormality(b: &Imset, ray: &NonNegCombination) -> Result<Report> {
    let mut r = Report::new();
    r.expect_eq("b is structural", true, is_structural(b)?);
    r.expect_eq("b is combinatorial", false, is_combinatorial(b)?.is_some());
    r.expect_eq("2b is combinatorial", true, is_combinatorial(&b.scaled(2))?.is_some());
    let render = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let expected: Vec<BigInt> = ray
        .multiplicities()
        .iter()
        .map(|&v| BigInt::from(v))
        .chain([BigInt::from(2)])
        .collect();
    let got = single_ray_generator(&homogenized_matrix(b)?)?;
    r.expect_eq(
        "cone {(z,u) >= 0 : A z = u b} is the single ray (ray, 2)",
        render(&expected),
        got.as_deref().map_or_else(|| "not a single ray".to_string(), render),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> CiStatement {
        s.parse().unwrap()
    }

    /// All multisets of `degree` statements mapping to `b`.
    fn brute_force_fiber(b: &Imset, degree: usize) -> BTreeSet<Vec<u64>> {
        let space = CiSpace::get(b.ground().n()).unwrap();
        let g = space.len();
        let mut out = BTreeSet::new();
        let mut x = vec![0u64; g];
        fn rec(space: &CiSpace, b: &Imset, x: &mut Vec<u64>, start: usize, left: usize, out: &mut BTreeSet<Vec<u64>>) {
            if left == 0 {
                let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
                if space.matrix().apply(&xi) == *b {
                    out.insert(x.clone());
                }
                return;
            }
            for c in start..x.len() {
                x[c] += 1;
                rec(space, b, x, c, left - 1, out);
                x[c] -= 1;
            }
        }
        rec(space, b, &mut x, 0, degree, &mut out);
        out
    }

    #[test]
    fn trivial_cases() {
        let g = GroundSet::new(4).unwrap();
        let zero = Imset::zero(g);
        assert!(is_structural(&zero).unwrap());
        let f = enumerate_fiber(&zero, 12).unwrap();
        assert_eq!(f.elements.len(), 1);
        assert_eq!(f.elements.iter().next().unwrap().degree(), 0);

        let e = Imset::unit(g, Subset::EMPTY);
        assert!(!is_structural(&e).unwrap());
        assert_eq!(is_combinatorial(&e).unwrap(), None);

        let space = CiSpace::get(4).unwrap();
        for c in 0..space.len() {
            let u = space.matrix().column_imset(StatementIndex(c));
            let f = enumerate_fiber(&u, 12).unwrap();
            assert_eq!(f.elements.len(), 1);
            let x = f.elements.iter().next().unwrap();
            assert_eq!(x.terms(), vec![(1, space.statement(StatementIndex(c)))]);
        }
    }

    #[test]
    fn degree_two_fiber_matches_scan() {
        let space = CiSpace::get(3).unwrap();
        let mut x = vec![0i64; space.len()];
        x[space.index_of(&st("1.2|")).unwrap().0] += 1;
        x[space.index_of(&st("2.3|1")).unwrap().0] += 1;
        let b = space.matrix().apply(&x);
        let fiber: BTreeSet<Vec<u64>> = enumerate_fiber(&b, 12)
            .unwrap()
            .elements
            .into_iter()
            .map(|e| e.multiplicities)
            .collect();
        assert_eq!(fiber, brute_force_fiber(&b, 2));
        assert_eq!(fiber.len(), 2);
    }

    #[test]
    fn degree_cap() {
        let space = CiSpace::get(3).unwrap();
        let b = space.matrix().apply(&[3, 0, 0, 0, 0, 0]);
        assert_eq!(enumerate_fiber(&b, 2), Err(Error::DegreeCapExceeded { degree: 3, cap: 2 }));
    }

    #[test]
    fn token_round_trip() {
        let x = NonNegCombination::parse_tokens(4, "1.2|^2 3.4|12 1.2|").unwrap();
        assert_eq!(x.degree(), 4);
        assert_eq!(x.to_string(), "1.2|^3 3.4|12");
        assert_eq!(x.level_profile(), vec![3, 0, 1]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]
        #[test]
        fn fiber_equals_brute_force_n3(x in proptest::collection::vec(0u64..3, 6), extra in 0i64..3) {
            let space = CiSpace::get(3).unwrap();
            let mut x = x;
            while x.iter().sum::<u64>() > 4 {
                let k = x.iter().position(|&v| v > 0).unwrap();
                x[k] -= 1;
            }
            let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            let mut b = space.matrix().apply(&xi);
            if extra > 0 {
                // Perturb to a target that may leave the image.
                let mut c = b.coeffs().to_vec();
                c[extra as usize] += 1;
                c[7] -= 1;
                b = Imset::from_coeffs(b.ground(), c).unwrap();
            }
            let fiber: BTreeSet<Vec<u64>> = enumerate_fiber(&b, 12).unwrap().elements.into_iter().map(|e| e.multiplicities).collect();
            let mut oracle = BTreeSet::new();
            for d in 0..=6 {
                oracle.extend(brute_force_fiber(&b, d));
            }
            proptest::prop_assert_eq!(&fiber, &oracle);
            for e in &fiber {
                let ne = NonNegCombination::new(3, e.clone()).unwrap();
                let lc = level_counts(&b).unwrap();
                proptest::prop_assert_eq!(ne.level_profile(), lc);
            }
            if !fiber.is_empty() {
                proptest::prop_assert!(is_structural(&b).unwrap());
            }
        }
    }
}
