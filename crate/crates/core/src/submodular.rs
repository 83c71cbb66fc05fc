//! Submodularity of a semigraphoid `M`: whether some `x ∈ ℚ^γ` with
//! `x = 0` on `M` and `x ≥ 1` off `M` satisfies every axiom equation.
//!
//! Two independent linear programs decide this. The primal works over
//! statement coordinates with the axiom equations as rows. The dual looks
//! for a set function `w` with `⟨A_c, w⟩ = 0` on `M` and `⟨A_c, w⟩ ≥ 1` off
//! `M`. The axioms span `ker A`, so both describe the same set and must agree.

use std::fmt;

use crate::ci::{AxiomEquation, CiSpace, StatementIndex};
use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, Bound, FeasibilityProblem, FeasibilityResult, RationalMatrix};
use crate::rational::{common_denominator, primitive_integer_vector, Rational};
use crate::semigraphoid::{enumerate_all, is_semigraphoid, StatementSet};

/// Off-`M` statement ordinals, in canonical order.
fn free_columns(m: &StatementSet) -> Vec<usize> {
    (0..m.space().len()).filter(|&c| !m.contains(StatementIndex(c))).collect()
}

/// Primal system over the chosen axiom rows; variables are the off-`M`
/// statements, each `≥ 1`.
fn primal_problem(m: &StatementSet, rows: &[usize]) -> Result<(FeasibilityProblem, Vec<usize>)> {
    let space = m.space();
    let cols = free_columns(m);
    let mut pos = vec![usize::MAX; space.len()];
    for (k, &c) in cols.iter().enumerate() {
        pos[c] = k;
    }
    let mut e = RationalMatrix::zeros(rows.len(), cols.len());
    for (r, &a) in rows.iter().enumerate() {
        let v = space.axioms()[a].signed_vector(space.len());
        for (c, &coef) in v.iter().enumerate() {
            if coef != 0 && pos[c] != usize::MAX {
                let k = pos[c];
                let cur = e.get(r, k) + &Rational::from_integer(coef);
                e.set(r, k, cur);
            }
        }
    }
    let p = FeasibilityProblem::new(e, vec![Rational::zero(); rows.len()], vec![Bound::at_least(1); cols.len()])?;
    Ok((p, cols))
}

fn all_rows(m: &StatementSet) -> Vec<usize> {
    (0..m.space().axioms().len()).collect()
}

/// Outcome of the primal route: a full-length witness `x`, or a Farkas vector
/// over the axiom rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimalOutcome {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

pub fn solve_primal(m: &StatementSet) -> Result<PrimalOutcome> {
    let (p, cols) = primal_problem(m, &all_rows(m))?;
    Ok(match solve_feasibility(&p)? {
        FeasibilityResult::Feasible { witness } => {
            let mut x = vec![Rational::zero(); m.space().len()];
            for (k, &c) in cols.iter().enumerate() {
                x[c] = witness[k].clone();
            }
            PrimalOutcome::Feasible(x)
        }
        FeasibilityResult::Infeasible { certificate } => PrimalOutcome::Infeasible(certificate),
    })
}

/// The dual system: variables `w` (one per subset, free) then one slack per
/// off-`M` statement.
fn dual_problem(m: &StatementSet) -> Result<FeasibilityProblem> {
    let space = m.space();
    let a = space.matrix();
    let subsets = a.rows();
    let off = free_columns(m);
    let mut e = RationalMatrix::zeros(space.len(), subsets + off.len());
    let mut rhs = vec![Rational::zero(); space.len()];
    for c in 0..space.len() {
        for &(s, coef) in a.column(StatementIndex(c)) {
            e.set(c, s.mask() as usize, Rational::from_integer(coef as i64));
        }
    }
    for (k, &c) in off.iter().enumerate() {
        e.set(c, subsets + k, Rational::from_integer(-1));
        rhs[c] = Rational::one();
    }
    let mut bounds = vec![Bound::Free; subsets];
    bounds.extend(std::iter::repeat_n(Bound::nonneg(), off.len()));
    FeasibilityProblem::new(e, rhs, bounds)
}

/// A set function `w` certifying submodularity, or `None`.
pub fn solve_dual(m: &StatementSet) -> Result<Option<Vec<Rational>>> {
    let p = dual_problem(m)?;
    let subsets = m.space().matrix().rows();
    Ok(solve_feasibility(&p)?.witness().map(|w| w[..subsets].to_vec()))
}

pub fn verify_primal_witness(m: &StatementSet, x: &[Rational]) -> bool {
    let space = m.space();
    if x.len() != space.len() {
        return false;
    }
    let sides_ok = (0..space.len()).all(|c| {
        if m.contains(StatementIndex(c)) {
            x[c].is_zero()
        } else {
            x[c] >= Rational::one()
        }
    });
    sides_ok
        && space.axioms().iter().all(|ax| {
            &x[ax.lhs.0 .0] + &x[ax.lhs.1 .0] == &x[ax.rhs.0 .0] + &x[ax.rhs.1 .0]
        })
}

pub fn verify_dual_witness(m: &StatementSet, w: &[Rational]) -> bool {
    let space = m.space();
    let a = space.matrix();
    if w.len() != a.rows() {
        return false;
    }
    (0..space.len()).all(|c| {
        let v = a.column_dot(StatementIndex(c), w);
        if m.contains(StatementIndex(c)) {
            v.is_zero()
        } else {
            v >= Rational::one()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularDecision {
    pub submodular: bool,
    /// Integral `w` over subset masks when submodular.
    pub witness: Option<Vec<Rational>>,
    /// Farkas multipliers over the axiom list when not submodular.
    pub certificate: Option<Vec<Rational>>,
}

/// Runs both routes and fails with `Internal` if they disagree.
pub fn is_submodular(m: &StatementSet) -> Result<SubmodularDecision> {
    if !is_semigraphoid(m) {
        return Err(Error::NotSemigraphoid);
    }
    let dual = solve_dual(m)?;
    let primal = solve_primal(m)?;
    match (dual, primal) {
        (Some(w), PrimalOutcome::Feasible(_)) => {
            let d = Rational::from_bigint(common_denominator(&w));
            let w: Vec<Rational> = w.iter().map(|v| v * &d).collect();
            if !verify_dual_witness(m, &w) {
                return Err(Error::Internal("scaled dual witness failed re-verification".into()));
            }
            Ok(SubmodularDecision {
                submodular: true,
                witness: Some(w),
                certificate: None,
            })
        }
        (None, PrimalOutcome::Infeasible(y)) => Ok(SubmodularDecision {
            submodular: false,
            witness: None,
            certificate: Some(y),
        }),
        _ => Err(Error::Internal(format!("primal and dual submodularity tests disagree on {m:?}"))),
    }
}

/// Number of submodular semigraphoids over `[n]`, `n ≤ 4`.
pub fn count_submodular(n: usize) -> Result<usize> {
    let mut count = 0;
    for s in enumerate_all(n)? {
        if is_submodular(&s)?.submodular {
            count += 1;
        }
    }
    Ok(count)
}

/// A minimal set of axioms whose positive combination, restricted to the
/// off-`M` coordinates, forces a nonnegative sum of those coordinates to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub n: usize,
    /// `(multiplier, oriented equation)`; the equation reads `lhs = rhs`.
    pub terms: Vec<(u64, AxiomEquation)>,
    /// `Σ coeff · x_c = 0` with every coefficient positive and every `c ∉ M`.
    pub forced_zero: Vec<(u64, StatementIndex)>,
}

impl CertificateReport {
    /// Re-derives the combination from the axioms and checks it against `m`.
    pub fn verify(&self, m: &StatementSet) -> bool {
        let space = m.space();
        let mut total = vec![0i64; space.len()];
        for (mult, ax) in &self.terms {
            for (t, v) in total.iter_mut().zip(ax.signed_vector(space.len())) {
                *t += *mult as i64 * v;
            }
        }
        for c in m.iter() {
            total[c.0] = 0;
        }
        if total.iter().any(|&v| v > 0) || total.iter().all(|&v| v == 0) {
            return false;
        }
        let expected: Vec<(u64, StatementIndex)> = total
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(c, &v)| ((-v) as u64, StatementIndex(c)))
            .collect();
        expected == self.forced_zero
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = CiSpace::get(self.n).map_err(|_| fmt::Error)?;
        for (mult, ax) in &self.terms {
            let (l0, l1) = (space.statement(ax.lhs.0), space.statement(ax.lhs.1));
            let (r0, r1) = (space.statement(ax.rhs.0), space.statement(ax.rhs.1));
            if *mult == 1 {
                writeln!(f, "{l0} + {l1} = {r0} + {r1}")?;
            } else {
                writeln!(f, "{mult} * ({l0} + {l1} = {r0} + {r1})")?;
            }
        }
        let sum: Vec<String> = self
            .forced_zero
            .iter()
            .map(|(c, s)| {
                if *c == 1 {
                    space.statement(*s).to_string()
                } else {
                    format!("{c}*{}", space.statement(*s))
                }
            })
            .collect();
        writeln!(f, "sum: {} = 0", sum.join(" + "))
    }
}

/// Deletion filter: drops axiom rows while the primal stays infeasible, then
/// reads the certificate off the irreducible remainder.
pub fn certificate_report(m: &StatementSet) -> Result<CertificateReport> {
    if !is_semigraphoid(m) {
        return Err(Error::NotSemigraphoid);
    }
    let space = m.space();
    let infeasible = |rows: &[usize]| -> Result<Option<Vec<Rational>>> {
        let (p, _) = primal_problem(m, rows)?;
        Ok(solve_feasibility(&p)?.certificate().map(|y| y.to_vec()))
    };
    let all = all_rows(m);
    let Some(y) = infeasible(&all)? else {
        return Err(Error::Submodular);
    };
    let base: Vec<usize> = all.iter().copied().filter(|&r| !y[r].is_zero()).collect();
    // The filter's result depends on the scan order; every rotation of the
    // initial support is tried and the smallest subsystem kept.
    let mut best: Option<Vec<usize>> = None;
    for shift in 0..base.len() {
        let mut active = base.clone();
        active.rotate_left(shift);
        let mut k = 0;
        while k < active.len() {
            let mut trial = active.clone();
            trial.remove(k);
            match infeasible(&trial)? {
                Some(y) => {
                    active = trial.iter().zip(&y).filter(|(_, v)| !v.is_zero()).map(|(&r, _)| r).collect();
                }
                None => k += 1,
            }
        }
        active.sort_unstable();
        let better = match &best {
            None => true,
            Some(b) => (active.len(), &active) < (b.len(), b),
        };
        if better {
            best = Some(active);
        }
    }
    let active = best.expect("support of an infeasibility certificate is nonempty");
    let y = infeasible(&active)?.ok_or_else(|| Error::Internal("irreducible subsystem became feasible".into()))?;
    let ints = primitive_integer_vector(&y);
    let mut terms = Vec::with_capacity(active.len());
    for (&r, v) in active.iter().zip(&ints) {
        let ax = space.axioms()[r];
        let mult: u64 = v
            .magnitude()
            .try_into()
            .map_err(|_| Error::Internal("certificate multiplier overflow".into()))?;
        let oriented = if v.sign() == num_bigint::Sign::Minus {
            AxiomEquation { lhs: ax.rhs, rhs: ax.lhs }
        } else {
            ax
        };
        terms.push((mult, oriented));
    }
    let mut total = vec![0i64; space.len()];
    for (mult, ax) in &terms {
        for (t, v) in total.iter_mut().zip(ax.signed_vector(space.len())) {
            *t += *mult as i64 * v;
        }
    }
    let forced_zero = total
        .iter()
        .enumerate()
        .filter(|(c, &v)| v != 0 && !m.contains(StatementIndex(*c)))
        .map(|(c, &v)| ((-v) as u64, StatementIndex(c)))
        .collect();
    let report = CertificateReport { n: m.n(), terms, forced_zero };
    if !report.verify(m) {
        return Err(Error::Internal("certificate report failed re-verification".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, text: &str) -> StatementSet {
        StatementSet::parse_list(n, text).unwrap()
    }

    #[test]
    fn trivial_semigraphoids_are_submodular() {
        for n in [3, 4] {
            let full = StatementSet::full(n).unwrap();
            let empty = StatementSet::empty(n).unwrap();
            for s in [full, empty] {
                let d = is_submodular(&s).unwrap();
                assert!(d.submodular);
                let w = d.witness.unwrap();
                assert!(w.iter().all(|v| v.is_integer()));
                assert!(verify_dual_witness(&s, &w));
            }
        }
    }

    #[test]
    fn non_semigraphoid_rejected() {
        let s = set(3, "1.2| 2.3|1");
        assert_eq!(is_submodular(&s), Err(Error::NotSemigraphoid));
        assert_eq!(certificate_report(&s), Err(Error::NotSemigraphoid));
    }

    #[test]
    fn four_statement_example_is_not_submodular() {
        let m = set(4, "2.3|14 1.4|23 1.2| 3.4|");
        let d = is_submodular(&m).unwrap();
        assert!(!d.submodular);
        let r = certificate_report(&m).unwrap();
        assert!(r.verify(&m));
        assert_eq!(r.terms.len(), 4);
        assert_eq!(certificate_report(&StatementSet::full(4).unwrap()), Err(Error::Submodular));
    }

    #[test]
    fn every_n3_semigraphoid_is_submodular() {
        assert_eq!(count_submodular(3).unwrap(), 22);
    }

    #[test]
    fn primal_witness_checks() {
        let m = set(3, "1.2| 1.2|3");
        match solve_primal(&m).unwrap() {
            PrimalOutcome::Feasible(x) => {
                assert!(verify_primal_witness(&m, &x));
                let mut bad = x.clone();
                bad[0] = Rational::one();
                assert!(!verify_primal_witness(&m, &bad));
            }
            PrimalOutcome::Infeasible(_) => panic!("expected feasible"),
        }
    }
}
