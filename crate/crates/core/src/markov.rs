//! Moves `g = g⁺ - g⁻` in `ker A`, their fibers and orbits, fiber-graph
//! connectivity for candidate Markov bases, and monomial primes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::ci::{CiSpace, Imset, Permutation, StatementIndex};
use crate::error::{Error, Result};
use crate::imset::{enumerate_fiber, NonNegCombination};
use crate::semigraphoid::{enumerate_all, StatementSet};

/// The binomial `x^{g⁺} - x^{g⁻}` as the integer vector `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovMove {
    n: usize,
    vector: Vec<i64>,
}

impl MarkovMove {
    pub fn new(n: usize, vector: Vec<i64>) -> Result<Self> {
        let g = CiSpace::get(n)?.len();
        if vector.len() != g {
            return Err(Error::DimensionMismatch(format!("move needs {g} coordinates, got {}", vector.len())));
        }
        Ok(MarkovMove { n, vector })
    }

    pub fn from_parts(pos: &NonNegCombination, neg: &NonNegCombination) -> Result<Self> {
        if pos.n() != neg.n() {
            return Err(Error::DimensionMismatch("monomials over different ground sets".into()));
        }
        let v = pos
            .multiplicities()
            .iter()
            .zip(neg.multiplicities())
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        Self::new(pos.n(), v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vector(&self) -> &[i64] {
        &self.vector
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&v| v == 0)
    }

    pub fn positive(&self) -> NonNegCombination {
        let m = self.vector.iter().map(|&v| v.max(0) as u64).collect();
        NonNegCombination::new(self.n, m).expect("length checked")
    }

    pub fn negative(&self) -> NonNegCombination {
        let m = self.vector.iter().map(|&v| (-v).max(0) as u64).collect();
        NonNegCombination::new(self.n, m).expect("length checked")
    }

    pub fn negated(&self) -> MarkovMove {
        MarkovMove {
            n: self.n,
            vector: self.vector.iter().map(|v| -v).collect(),
        }
    }

    /// Sign normalized so the first nonzero coordinate is positive.
    pub fn canonical_sign(&self) -> MarkovMove {
        match self.vector.iter().find(|&&v| v != 0) {
            Some(&v) if v < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn permuted(&self, sigma: &Permutation) -> MarkovMove {
        let action = CiSpace::get(self.n).expect("validated").permutation_action(sigma);
        let mut v = vec![0; self.vector.len()];
        for (c, &val) in self.vector.iter().enumerate() {
            v[action[c].0] = val;
        }
        MarkovMove { n: self.n, vector: v }
    }
}

/// Move-file syntax: a `+` line and a `-` line of statement tokens.
impl fmt::Display for MarkovMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "+ {}", self.positive())?;
        writeln!(f, "- {}", self.negative())
    }
}

pub fn in_kernel(m: &MarkovMove) -> bool {
    CiSpace::get(m.n).expect("validated").matrix().apply(&m.vector).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndispensabilityReport {
    pub degree: u64,
    pub fiber_size: usize,
    pub indispensable: bool,
}

/// The fiber of `A·g⁺` is exactly `{g⁺, g⁻}`.
pub fn indispensability(m: &MarkovMove, max_degree: usize) -> Result<IndispensabilityReport> {
    if m.is_zero() {
        return Err(Error::ZeroMove);
    }
    if !in_kernel(m) {
        return Err(Error::NotInKernel);
    }
    let pos = m.positive();
    let fiber = enumerate_fiber(&pos.image(), max_degree)?;
    let pair: BTreeSet<NonNegCombination> = [pos.clone(), m.negative()].into_iter().collect();
    Ok(IndispensabilityReport {
        degree: pos.degree(),
        fiber_size: fiber.elements.len(),
        indispensable: fiber.elements == pair,
    })
}

pub fn is_indispensable(m: &MarkovMove, max_degree: usize) -> Result<bool> {
    Ok(indispensability(m, max_degree)?.indispensable)
}

/// `{±σ·m : σ ∈ S_n}` with canonical signs, sorted.
pub fn orbit(m: &MarkovMove) -> Vec<MarkovMove> {
    let set: BTreeSet<MarkovMove> = Permutation::all(m.n)
        .iter()
        .map(|s| m.permuted(s).canonical_sign())
        .collect();
    set.into_iter().collect()
}

/// Every distinct image `A·x` with `x ∈ ℕ^γ` of degree `1..=max_degree`.
pub fn fibers_up_to_degree(n: usize, max_degree: usize) -> Result<Vec<Imset>> {
    let space = CiSpace::get(n)?;
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut x = vec![0i64; space.len()];
    fn rec(space: &CiSpace, x: &mut Vec<i64>, start: usize, left: usize, out: &mut BTreeSet<Vec<i64>>) {
        if left == 0 {
            out.insert(space.matrix().apply(x).coeffs().to_vec());
            return;
        }
        for c in start..x.len() {
            x[c] += 1;
            rec(space, x, c, left - 1, out);
            x[c] -= 1;
        }
    }
    for d in 1..=max_degree {
        rec(space, &mut x, 0, d, &mut out);
    }
    out.into_iter()
        .map(|c| Imset::from_coeffs(space.ground(), c))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConnectivity {
    pub target: Imset,
    pub size: usize,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub fibers: Vec<FiberConnectivity>,
}

impl ConnectivityReport {
    pub fn all_connected(&self) -> bool {
        self.fibers.iter().all(|f| f.components <= 1)
    }

    pub fn disconnected(&self) -> impl Iterator<Item = &FiberConnectivity> {
        self.fibers.iter().filter(|f| f.components > 1)
    }
}

/// Root of each element's component in the graph with edges `x ↔ x ± v`.
fn fiber_components(elems: &[Vec<i64>], basis: &[MarkovMove]) -> Vec<usize> {
    let index: HashMap<&Vec<i64>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, e) in elems.iter().enumerate() {
        for m in basis {
            for sign in [1i64, -1] {
                let y: Vec<i64> = e.iter().zip(&m.vector).map(|(a, v)| a + sign * v).collect();
                if y.iter().any(|&v| v < 0) {
                    continue;
                }
                if let Some(&j) = index.get(&y) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    (0..elems.len()).map(|i| find(&mut parent, i)).collect()
}

fn fiber_vectors(b: &Imset, max_degree: usize) -> Result<Vec<Vec<i64>>> {
    Ok(enumerate_fiber(b, max_degree)?
        .elements
        .iter()
        .map(|e| e.multiplicities().iter().map(|&v| v as i64).collect())
        .collect())
}

/// Components of each fiber graph with edges `x ↔ x ± v`, `v` in `basis`.
pub fn connectivity_check(basis: &[MarkovMove], fibers: &[Imset], max_degree: usize) -> Result<ConnectivityReport> {
    for m in basis {
        if !in_kernel(m) {
            return Err(Error::NotInKernel);
        }
    }
    let mut out = Vec::with_capacity(fibers.len());
    for b in fibers {
        let elems = fiber_vectors(b, max_degree)?;
        let roots = fiber_components(&elems, basis);
        let components = roots.iter().enumerate().filter(|(i, r)| *i == **r).count();
        out.push(FiberConnectivity {
            target: b.clone(),
            size: elems.len(),
            components,
        });
    }
    Ok(ConnectivityReport { fibers: out })
}

/// A minimal Markov basis truncated at `max_degree`, built degree by degree:
/// in every fiber of degree `d`, the components left by the moves of lower
/// degree are joined by one new move each. The count per degree is
/// independent of the choices made.
pub fn minimal_generators_up_to_degree(n: usize, max_degree: usize) -> Result<Vec<MarkovMove>> {
    let mut by_degree: BTreeMap<i64, Vec<Imset>> = BTreeMap::new();
    for b in fibers_up_to_degree(n, max_degree)? {
        by_degree.entry(crate::ci::degree_functional(&b)).or_default().push(b);
    }
    let mut basis: Vec<MarkovMove> = Vec::new();
    for fibers in by_degree.values() {
        let mut found = Vec::new();
        for b in fibers {
            let elems = fiber_vectors(b, max_degree)?;
            let roots = fiber_components(&elems, &basis);
            let reps: BTreeSet<usize> = roots.iter().copied().collect();
            let first = roots[0];
            for &r in reps.iter().filter(|&&r| r != first) {
                let v: Vec<i64> = elems[first].iter().zip(&elems[r]).map(|(a, b)| a - b).collect();
                found.push(MarkovMove::new(n, v)?.canonical_sign());
            }
        }
        basis.extend(found);
    }
    basis.sort_by_key(|m| (m.positive().degree(), m.clone()));
    Ok(basis)
}

/// Axiom relations `x·y - z·w` as moves.
pub fn axiom_moves(n: usize) -> Result<Vec<MarkovMove>> {
    let space = CiSpace::get(n)?;
    space
        .axioms()
        .iter()
        .map(|ax| MarkovMove::new(n, ax.signed_vector(space.len())))
        .collect()
}

/// The ideal generated by a set of statement variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPrime {
    pub variables: StatementSet,
}

/// Each axiom binomial lies in the prime: both of its monomials meet it.
pub fn prime_contains_axioms(p: &MonomialPrime) -> bool {
    let v = &p.variables;
    v.space().axioms().iter().all(|ax| {
        let l = v.contains(ax.lhs.0) || v.contains(ax.lhs.1);
        let r = v.contains(ax.rhs.0) || v.contains(ax.rhs.1);
        l && r
    })
}

/// Distinct images of a prime under `S_n`.
pub fn prime_orbit(p: &MonomialPrime) -> Vec<StatementSet> {
    let mut seen: BTreeMap<Vec<usize>, StatementSet> = BTreeMap::new();
    for s in Permutation::all(p.variables.n()) {
        let img = p.variables.permuted(&s);
        seen.entry(img.iter().map(|i| i.0).collect()).or_insert(img);
    }
    seen.into_values().collect()
}

/// The `{0,1}` point of a semigraphoid: `1` on its statements.
pub fn zero_one_point(s: &StatementSet) -> Vec<u8> {
    (0..s.space().len()).map(|c| s.contains(StatementIndex(c)) as u8).collect()
}

/// Every axiom binomial vanishes at the point.
pub fn annihilates_axiom_binomials(n: usize, point: &[u8]) -> Result<bool> {
    let space = CiSpace::get(n)?;
    Ok(space.axioms().iter().all(|ax| {
        let v = |i: StatementIndex| point[i.0] as u32;
        v(ax.lhs.0) * v(ax.lhs.1) == v(ax.rhs.0) * v(ax.rhs.1)
    }))
}

/// `(#V₀₁(I_SG), #V₀₁(I_A))`, counted as semigraphoids and submodular
/// semigraphoids.
pub fn count_01_points(n: usize) -> Result<(usize, usize)> {
    let all = enumerate_all(n)?;
    let mut submodular = 0;
    for s in &all {
        if crate::submodular::is_submodular(s)?.submodular {
            submodular += 1;
        }
    }
    Ok((all.len(), submodular))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(n: usize, pos: &str, neg: &str) -> MarkovMove {
        MarkovMove::from_parts(
            &NonNegCombination::parse_tokens(n, pos).unwrap(),
            &NonNegCombination::parse_tokens(n, neg).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_membership() {
        let space = CiSpace::get(4).unwrap();
        for c in 0..space.len() {
            let mut v = vec![0; space.len()];
            v[c] = 1;
            assert!(!in_kernel(&MarkovMove::new(4, v).unwrap()));
        }
        for m in axiom_moves(4).unwrap() {
            assert!(in_kernel(&m));
        }
    }

    #[test]
    fn errors() {
        let z = MarkovMove::new(3, vec![0; 6]).unwrap();
        assert_eq!(is_indispensable(&z, 12), Err(Error::ZeroMove));
        let u = MarkovMove::new(3, vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(is_indispensable(&u, 12), Err(Error::NotInKernel));
    }

    #[test]
    fn n3_quadrics() {
        let moves = axiom_moves(3).unwrap();
        assert_eq!(moves.len(), 3);
        for m in &moves {
            assert!(is_indispensable(m, 12).unwrap());
        }
        let o = orbit(&moves[0]);
        let mut expected: Vec<MarkovMove> = moves.iter().map(MarkovMove::canonical_sign).collect();
        expected.sort();
        assert_eq!(o, expected);
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        let m = mv(4, "1.2| 3.4| 2.4|13 1.3|24", "1.3| 2.4| 3.4|12 1.2|34");
        assert!(in_kernel(&m));
        let o = orbit(&m);
        assert_eq!(48 % o.len(), 0);
        assert!(o.iter().all(in_kernel));
    }

    #[test]
    fn trivial_fiber_connected() {
        let g = crate::GroundSet::new(3).unwrap();
        let r = connectivity_check(&axiom_moves(3).unwrap(), &[Imset::zero(g)], 12).unwrap();
        assert!(r.all_connected());
        assert_eq!(r.fibers[0].size, 1);
    }

    #[test]
    fn primes_and_points() {
        let empty = MonomialPrime {
            variables: StatementSet::empty(4).unwrap(),
        };
        assert!(!prime_contains_axioms(&empty));
        let full = MonomialPrime {
            variables: StatementSet::full(4).unwrap(),
        };
        assert!(prime_contains_axioms(&full));
        assert_eq!(count_01_points(2).unwrap(), (2, 2));
        for s in enumerate_all(3).unwrap() {
            assert!(annihilates_axiom_binomials(3, &zero_one_point(&s)).unwrap());
        }
        let bad = StatementSet::parse_list(3, "1.2| 2.3|1").unwrap();
        assert!(!annihilates_axiom_binomials(3, &zero_one_point(&bad)).unwrap());
    }

    #[test]
    fn n3_generators_are_the_quadrics() {
        let gens = minimal_generators_up_to_degree(3, 4).unwrap();
        let mut quadrics: Vec<MarkovMove> = axiom_moves(3).unwrap().iter().map(MarkovMove::canonical_sign).collect();
        quadrics.sort();
        assert_eq!(gens, quadrics);
    }

    #[test]
    fn move_display() {
        let m = mv(3, "1.2| 1.3|2", "1.3| 1.2|3");
        assert_eq!(m.to_string(), "+ 1.2| 1.3|2\n- 1.3| 1.2|3\n");
    }
}
