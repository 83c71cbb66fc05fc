//! Convex rank tests: the partition of `S_n` cut out by a semigraphoid,
//! the posets of its classes, simpliciality, and small H-polytopes.
//!
//! A permutation `σ` names the region `x_{σ(1)} ≤ … ≤ x_{σ(n)}`. Swapping
//! positions `k, k+1` crosses the wall labeled
//! `[σ(k) ⊥ σ(k+1) | {σ(1), …, σ(k-1)}]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::ci::{CiSpace, CiStatement, Permutation, Subset};
use crate::error::{Error, Result};
use crate::lp::{kernel_basis, rank, solve_feasibility, solve_square, Bound, FeasibilityProblem, RationalMatrix};
use crate::rational::{primitive_integer_vector, Rational};
use crate::semigraphoid::{is_semigraphoid, StatementSet};

/// Statement on the wall between `σ` and `σ` with positions `k, k+1`
/// swapped (`k` is 1-based).
pub fn edge_statement(sigma: &Permutation, k: usize) -> Result<CiStatement> {
    let n = sigma.n();
    if k == 0 || k >= n {
        return Err(Error::Position(k));
    }
    let w = sigma.word();
    CiStatement::new(w[k - 1], w[k], Subset::from_elements(w[..k - 1].iter().copied()))
}

fn swapped(sigma: &Permutation, k: usize) -> Permutation {
    let mut w = sigma.word().to_vec();
    w.swap(k - 1, k);
    Permutation::from_word(w).expect("swap of a permutation")
}

/// A partition of `S_n`; classes are sorted and ordered by first element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTestPartition {
    n: usize,
    classes: Vec<Vec<Permutation>>,
}

impl RankTestPartition {
    /// Validates that `classes` partition `S_n`, then normalizes the order.
    pub fn new(n: usize, classes: Vec<Vec<Permutation>>) -> Result<Self> {
        CiSpace::get(n)?;
        let mut seen = BTreeSet::new();
        for c in &classes {
            if c.is_empty() {
                return Err(Error::InvalidPermutation("empty class".into()));
            }
            for p in c {
                if p.n() != n {
                    return Err(Error::InvalidPermutation(format!("{p} is not a permutation of [{n}]")));
                }
                if !seen.insert(p.clone()) {
                    return Err(Error::InvalidPermutation(format!("{p} appears in two classes")));
                }
            }
        }
        let total: usize = (1..=n).product();
        if seen.len() != total {
            return Err(Error::InvalidPermutation(format!(
                "classes cover {} of the {total} permutations",
                seen.len()
            )));
        }
        Ok(Self::normalized(n, classes))
    }

    fn normalized(n: usize, mut classes: Vec<Vec<Permutation>>) -> Self {
        for c in classes.iter_mut() {
            c.sort();
        }
        classes.sort();
        RankTestPartition { n, classes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<Permutation>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn permuted(&self, tau: &Permutation) -> RankTestPartition {
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|s| tau.compose(s)).collect())
            .collect();
        Self::normalized(self.n, classes)
    }
}

/// One class per line, permutations separated by spaces.
impl fmt::Display for RankTestPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            let words: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", words.join(" "))?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components of `S_n` under the swaps whose wall statement lies in `s`.
pub fn rank_test(s: &StatementSet) -> Result<RankTestPartition> {
    if !is_semigraphoid(s) {
        return Err(Error::NotSemigraphoid);
    }
    let n = s.n();
    let perms = Permutation::all(n);
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind((0..perms.len()).collect());
    for (a, p) in perms.iter().enumerate() {
        for k in 1..n {
            if s.contains_statement(&edge_statement(p, k)?) {
                uf.union(a, index[&swapped(p, k)]);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for (a, p) in perms.iter().enumerate() {
        groups.entry(uf.find(a)).or_default().push(p.clone());
    }
    Ok(RankTestPartition::normalized(n, groups.into_values().collect()))
}

/// Wall statements between adjacent permutations of the same class.
pub fn statements_of_partition(p: &RankTestPartition) -> Result<StatementSet> {
    let mut class_of: HashMap<&Permutation, usize> = HashMap::new();
    for (c, class) in p.classes.iter().enumerate() {
        for s in class {
            class_of.insert(s, c);
        }
    }
    let mut out = StatementSet::empty(p.n)?;
    let space = out.space();
    for (c, class) in p.classes.iter().enumerate() {
        for s in class {
            for k in 1..p.n {
                if class_of.get(&swapped(s, k)) == Some(&c) {
                    let st = edge_statement(s, k)?;
                    out.insert(space.index_of(&st).expect("statement over [n]"));
                }
            }
        }
    }
    Ok(out)
}

/// The intersection order of a class: `a < b` iff `a` precedes `b` in every
/// member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPoset {
    pub n: usize,
    /// Transitively closed strict relations.
    pub relations: BTreeSet<(u8, u8)>,
    pub covers: BTreeSet<(u8, u8)>,
    /// Linear extensions coincide with the class.
    pub pre_convex: bool,
}

impl ClassPoset {
    pub fn linear_extensions(&self) -> Vec<Permutation> {
        Permutation::all(self.n)
            .into_iter()
            .filter(|p| {
                let pos = p.inverse();
                self.relations.iter().all(|&(a, b)| pos.apply(a) < pos.apply(b))
            })
            .collect()
    }

    /// Hasse diagram is a spanning tree on `[n]`.
    pub fn is_simplicial(&self) -> bool {
        if self.covers.len() + 1 != self.n {
            return false;
        }
        let mut uf = UnionFind((0..=self.n).collect());
        for &(a, b) in &self.covers {
            uf.union(a as usize, b as usize);
        }
        let root = uf.find(1);
        (2..=self.n).all(|e| uf.find(e) == root)
    }
}

pub fn class_poset(class: &[Permutation]) -> ClassPoset {
    assert!(!class.is_empty(), "class must be nonempty");
    let n = class[0].n();
    let positions: Vec<Permutation> = class.iter().map(Permutation::inverse).collect();
    let mut relations = BTreeSet::new();
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            if a != b && positions.iter().all(|pos| pos.apply(a) < pos.apply(b)) {
                relations.insert((a, b));
            }
        }
    }
    let covers = relations
        .iter()
        .copied()
        .filter(|&(a, b)| !(1..=n as u8).any(|c| relations.contains(&(a, c)) && relations.contains(&(c, b))))
        .collect();
    let mut poset = ClassPoset {
        n,
        relations,
        covers,
        pre_convex: false,
    };
    let mut ext = poset.linear_extensions();
    ext.sort();
    let mut sorted = class.to_vec();
    sorted.sort();
    poset.pre_convex = ext == sorted;
    poset
}

/// Every class of the partition is the cone of a tree poset.
pub fn is_simplicial_partition(p: &RankTestPartition) -> Result<bool> {
    let mut all = true;
    for c in &p.classes {
        let poset = class_poset(c);
        if !poset.pre_convex {
            return Err(Error::NotPreConvex(c[0].to_string()));
        }
        all &= poset.is_simplicial();
    }
    Ok(all)
}

pub fn is_simplicial(s: &StatementSet) -> Result<bool> {
    is_simplicial_partition(&rank_test(s)?)
}

/// Brute-force check of the order cone `{x : x_a ≤ x_b, a ⋖ b}`: lineality
/// exactly the all-ones line and exactly `n-1` extreme rays modulo it.
pub fn order_cone_is_simplicial(poset: &ClassPoset) -> bool {
    let n = poset.n;
    let rows: Vec<Vec<i64>> = poset
        .covers
        .iter()
        .map(|&(a, b)| {
            let mut r = vec![0i64; n];
            r[a as usize - 1] = 1;
            r[b as usize - 1] = -1;
            r
        })
        .collect();
    if rows.is_empty() || rank(&RationalMatrix::from_i64_rows(&rows)) != n - 1 {
        return false;
    }
    // Each ray of the cone cut by Σx = 0 makes n-2 independent rows tight.
    let ones = vec![1i64; n];
    let mut rays: BTreeSet<Vec<num_bigint::BigInt>> = BTreeSet::new();
    for tight in combinations(rows.len(), n - 2) {
        let mut sys: Vec<Vec<i64>> = tight.iter().map(|&t| rows[t].clone()).collect();
        sys.push(ones.clone());
        let kernel = kernel_basis(&RationalMatrix::from_i64_rows(&sys));
        if kernel.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let v: Vec<Rational> = kernel[0].iter().map(|x| x * &Rational::from_integer(sign)).collect();
            let inside = rows.iter().all(|r| {
                let dot: Rational = r.iter().zip(&v).map(|(&c, x)| x * &Rational::from_integer(c)).sum();
                !dot.is_positive()
            });
            if inside {
                rays.insert(primitive_integer_vector(&v));
            }
        }
    }
    rays.len() == n - 1
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `{x : c·x ≤ c_0 for each row, x ⊥ every lineality generator}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub rows: Vec<(Rational, Vec<Rational>)>,
    pub lineality: Vec<Vec<Rational>>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HPolytope {
    pub fn new(rows: Vec<(Rational, Vec<Rational>)>, lineality: Vec<Vec<Rational>>) -> Result<Self> {
        let d = rows
            .first()
            .map(|r| r.1.len())
            .or_else(|| lineality.first().map(Vec::len))
            .ok_or_else(|| Error::DimensionMismatch("polytope without rows".into()))?;
        if rows.iter().any(|r| r.1.len() != d) || lineality.iter().any(|l| l.len() != d) {
            return Err(Error::DimensionMismatch("rows of differing length".into()));
        }
        Ok(HPolytope { rows, lineality })
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.first().map(|r| r.1.len()).unwrap_or_else(|| self.lineality[0].len())
    }

    fn lineality_rank(&self) -> usize {
        if self.lineality.is_empty() {
            return 0;
        }
        rank(&RationalMatrix::from_rows(self.ambient_dim(), self.lineality.clone()).expect("checked lengths"))
    }

    /// Dimension of the ambient space after quotienting the lineality.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.lineality_rank()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|(c0, c)| dot(c, x) <= *c0) && self.lineality.iter().all(|l| dot(l, x).is_zero())
    }

    /// Equality system `[C | I; L | 0]` used by the emptiness and recession
    /// tests; variables are `x` (free) then one slack per row.
    fn slack_system(&self, rhs_rows: Vec<Rational>, extra: Option<Vec<Rational>>) -> Result<FeasibilityProblem> {
        let d = self.ambient_dim();
        let m = self.rows.len();
        let mut mat: Vec<Vec<Rational>> = Vec::new();
        let mut rhs = Vec::new();
        for (i, (_, c)) in self.rows.iter().enumerate() {
            let mut r = c.clone();
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            mat.push(r);
            rhs.push(rhs_rows[i].clone());
        }
        for l in &self.lineality {
            let mut r = l.clone();
            r.extend(std::iter::repeat_n(Rational::zero(), m));
            mat.push(r);
            rhs.push(Rational::zero());
        }
        if let Some(extra) = extra {
            mat.push(extra);
            rhs.push(Rational::one());
        }
        let mut bounds = vec![Bound::Free; d];
        bounds.extend(std::iter::repeat_n(Bound::nonneg(), m));
        FeasibilityProblem::new(RationalMatrix::from_rows(d + m, mat)?, rhs, bounds)
    }

    fn is_empty(&self) -> Result<bool> {
        let rhs = self.rows.iter().map(|r| r.0.clone()).collect();
        Ok(!solve_feasibility(&self.slack_system(rhs, None)?)?.is_feasible())
    }

    fn is_bounded(&self) -> Result<bool> {
        let d = self.ambient_dim();
        let m = self.rows.len();
        let mut normals: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.1.clone()).collect();
        normals.extend(self.lineality.iter().cloned());
        if rank(&RationalMatrix::from_rows(d, normals)?) < d {
            return Ok(false);
        }
        // A pointed polyhedron is unbounded iff some y ≠ 0 has C·y ≤ 0; such a
        // y can be scaled so the slacks sum to one.
        let mut extra = vec![Rational::zero(); d];
        extra.extend(std::iter::repeat_n(Rational::one(), m));
        let p = self.slack_system(vec![Rational::zero(); m], Some(extra))?;
        Ok(!solve_feasibility(&p)?.is_feasible())
    }
}

/// Vertices by solving every square subsystem of `dim` tight rows plus the
/// lineality equations.
pub fn vertices_from_facets(h: &HPolytope) -> Result<Vec<Vec<Rational>>> {
    if h.is_empty()? {
        return Err(Error::Empty);
    }
    if !h.is_bounded()? {
        return Err(Error::Unbounded);
    }
    let d = h.ambient_dim();
    let k = h.dim();
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for subset in combinations(h.rows.len(), k) {
        let mut mat: Vec<Vec<Rational>> = subset.iter().map(|&i| h.rows[i].1.clone()).collect();
        let mut rhs: Vec<Rational> = subset.iter().map(|&i| h.rows[i].0.clone()).collect();
        for l in &h.lineality {
            mat.push(l.clone());
            rhs.push(Rational::zero());
        }
        if mat.len() != d {
            continue;
        }
        if let Some(x) = solve_square(&RationalMatrix::from_rows(d, mat)?, &rhs) {
            if h.contains(&x) {
                found.insert(x);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub vertices: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    /// Nonempty faces including the polytope itself, by dimension then
    /// vertex set.
    pub faces: Vec<Face>,
    /// Face counts for dimensions `0..dim`.
    pub f_vector: Vec<usize>,
    /// Vertex sets of the facets, indexed like the defining rows that
    /// support them (duplicates and non-facet rows dropped).
    pub facets: Vec<BTreeSet<usize>>,
}

/// `(vertices, edges, 2-faces)` of a facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetStats {
    pub vertices: usize,
    pub edges: usize,
    pub two_faces: usize,
}

impl FaceLattice {
    pub fn facet_stats(&self, facet: usize) -> FacetStats {
        let f = &self.facets[facet];
        let count = |d: usize| {
            self.faces
                .iter()
                .filter(|face| face.dim == d && face.vertices.is_subset(f))
                .count()
        };
        FacetStats {
            vertices: f.len(),
            edges: count(1),
            two_faces: count(2),
        }
    }
}

fn affine_dim(verts: &[Vec<Rational>], set: &BTreeSet<usize>) -> usize {
    let ids: Vec<usize> = set.iter().copied().collect();
    if ids.len() <= 1 {
        return 0;
    }
    let base = &verts[ids[0]];
    let diffs: Vec<Vec<Rational>> = ids[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&RationalMatrix::from_rows(base.len(), diffs).expect("equal lengths"))
}

/// Faces as the intersection closure of the facet vertex sets.
pub fn face_lattice(h: &HPolytope, verts: &[Vec<Rational>]) -> FaceLattice {
    let dim = h.dim();
    let all: BTreeSet<usize> = (0..verts.len()).collect();
    let full_dim = affine_dim(verts, &all);
    let mut facets: Vec<BTreeSet<usize>> = Vec::new();
    for (c0, c) in &h.rows {
        let tight: BTreeSet<usize> = (0..verts.len()).filter(|&v| dot(c, &verts[v]) == *c0).collect();
        if full_dim > 0 && affine_dim(verts, &tight) + 1 == full_dim && !facets.contains(&tight) {
            facets.push(tight);
        }
    }
    let mut sets: BTreeSet<BTreeSet<usize>> = facets.iter().cloned().collect();
    sets.insert(all.clone());
    loop {
        let current: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                let i: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !i.is_empty() && sets.insert(i) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|s| Face {
            dim: affine_dim(verts, &s),
            vertices: s,
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    let mut f_vector = vec![0; dim.min(full_dim)];
    for f in &faces {
        if f.dim < f_vector.len() {
            f_vector[f.dim] += 1;
        }
    }
    FaceLattice { faces, f_vector, facets }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn st(s: &str) -> CiStatement {
        s.parse().unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn edge_statements() {
        assert_eq!(edge_statement(&p("45123"), 1).unwrap(), st("4.5|"));
        assert_eq!(edge_statement(&p("45123"), 4).unwrap(), st("2.3|145"));
        assert_eq!(edge_statement(&p("1234"), 1).unwrap(), st("1.2|"));
        assert_eq!(edge_statement(&p("1234"), 0), Err(Error::Position(0)));
        assert_eq!(edge_statement(&p("1234"), 4), Err(Error::Position(4)));
    }

    #[test]
    fn trivial_partitions() {
        let full = rank_test(&StatementSet::full(4).unwrap()).unwrap();
        assert_eq!(full.classes().len(), 1);
        let empty = rank_test(&StatementSet::empty(4).unwrap()).unwrap();
        assert_eq!(empty.classes().len(), 24);
        assert!(statements_of_partition(&empty).unwrap().is_empty());
        assert!(is_simplicial(&StatementSet::empty(4).unwrap()).unwrap());
        assert!(!is_simplicial(&StatementSet::full(4).unwrap()).unwrap());
    }

    #[test]
    fn two_element_class_poset() {
        let poset = class_poset(&[p("4123"), p("4132")]);
        let covers: BTreeSet<(u8, u8)> = [(4, 1), (1, 2), (1, 3)].into_iter().collect();
        assert_eq!(poset.covers, covers);
        assert!(poset.relations.contains(&(4, 2)));
        assert!(poset.pre_convex);
        assert!(poset.is_simplicial());
        assert!(order_cone_is_simplicial(&poset));
    }

    #[test]
    fn non_convex_class_detected() {
        let poset = class_poset(&[p("123"), p("321")]);
        assert!(poset.relations.is_empty());
        assert!(!poset.pre_convex);
        let part = RankTestPartition::new(
            3,
            vec![vec![p("123"), p("321")], vec![p("132")], vec![p("213")], vec![p("231")], vec![p("312")]],
        )
        .unwrap();
        assert!(matches!(is_simplicial_partition(&part), Err(Error::NotPreConvex(_))));
    }

    #[test]
    fn partition_validation() {
        assert!(RankTestPartition::new(3, vec![vec![p("123")]]).is_err());
        assert!(RankTestPartition::new(3, vec![vec![p("123"), p("123")]]).is_err());
    }

    /// Extreme-ray oracle on posets drawn from every n = 4 rank test of a
    /// closure of two random statements.
    #[test]
    fn simplicial_criterion_matches_oracle_on_small_posets() {
        let space = CiSpace::get(4).unwrap();
        for a in 0..space.len() {
            for b in (a..space.len()).step_by(5) {
                let s = StatementSet::from_indices(4, [crate::StatementIndex(a), crate::StatementIndex(b)]).unwrap();
                let part = rank_test(&crate::closure(&s)).unwrap();
                for c in part.classes() {
                    let poset = class_poset(c);
                    assert!(poset.pre_convex);
                    assert_eq!(poset.is_simplicial(), order_cone_is_simplicial(&poset));
                }
            }
        }
    }

    #[test]
    fn simplex_vertices_and_lattice() {
        let mut rows = Vec::new();
        for i in 0..3 {
            let mut c = vec![q(0); 3];
            c[i] = q(-1);
            rows.push((q(0), c));
        }
        rows.push((q(1), vec![q(1); 3]));
        let h = HPolytope::new(rows, vec![]).unwrap();
        let v = vertices_from_facets(&h).unwrap();
        assert_eq!(v.len(), 4);
        let lattice = face_lattice(&h, &v);
        assert_eq!(lattice.f_vector, vec![4, 6, 4]);
        assert_eq!(lattice.facet_stats(0), FacetStats { vertices: 3, edges: 3, two_faces: 1 });
    }

    #[test]
    fn unbounded_and_empty() {
        let h = HPolytope::new(vec![(q(1), vec![q(1), q(0)])], vec![]).unwrap();
        assert_eq!(vertices_from_facets(&h), Err(Error::Unbounded));
        let h = HPolytope::new(vec![(q(-1), vec![q(1)]), (q(-1), vec![q(-1)])], vec![]).unwrap();
        assert_eq!(vertices_from_facets(&h), Err(Error::Empty));
    }

    #[test]
    fn square_with_lineality() {
        // |x| ≤ 1, |y| ≤ 1 in R^3 restricted to z = 0 via lineality (0,0,1).
        let rows = vec![
            (q(1), vec![q(1), q(0), q(0)]),
            (q(1), vec![q(-1), q(0), q(0)]),
            (q(1), vec![q(0), q(1), q(0)]),
            (q(1), vec![q(0), q(-1), q(0)]),
        ];
        let h = HPolytope::new(rows, vec![vec![q(0), q(0), q(1)]]).unwrap();
        assert_eq!(h.dim(), 2);
        let v = vertices_from_facets(&h).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(face_lattice(&h, &v).f_vector, vec![4, 4]);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(10, 4).len(), 210);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
