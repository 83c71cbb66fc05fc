//! Cones of the form `{x ≥ 0 : E·x = 0}`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::lp::{rank, solve_feasibility, Bound, FeasibilityProblem, FeasibilityResult, RationalMatrix};
use crate::rational::{primitive_integer_vector, Rational};

/// Coordinates that are positive somewhere on the cone, with a point whose
/// support is exactly that set (a relative-interior point).
pub fn relative_interior(e: &RationalMatrix) -> Result<(Vec<bool>, Vec<Rational>)> {
    let n = e.cols();
    let mut support = vec![false; n];
    let mut settled = vec![false; n];
    let mut point = vec![Rational::zero(); n];
    for j in 0..n {
        if settled[j] {
            continue;
        }
        let mut bounds = vec![Bound::nonneg(); n];
        bounds[j] = Bound::at_least(1);
        let p = FeasibilityProblem::new(e.clone(), vec![Rational::zero(); e.rows()], bounds)?;
        settled[j] = true;
        if let FeasibilityResult::Feasible { witness } = solve_feasibility(&p)? {
            for (k, v) in witness.iter().enumerate() {
                if v.is_positive() {
                    support[k] = true;
                    settled[k] = true;
                }
                point[k] += v;
            }
        }
    }
    Ok((support, point))
}

/// Dimension of `{x ≥ 0 : E·x = 0}`.
pub fn cone_dimension(e: &RationalMatrix) -> Result<usize> {
    let (support, _) = relative_interior(e)?;
    let cols: Vec<usize> = (0..e.cols()).filter(|&j| support[j]).collect();
    if cols.is_empty() {
        return Ok(0);
    }
    Ok(cols.len() - rank(&e.select_columns(&cols)))
}

/// The primitive integer generator when the cone is a single ray.
pub fn single_ray_generator(e: &RationalMatrix) -> Result<Option<Vec<BigInt>>> {
    let (support, point) = relative_interior(e)?;
    let cols: Vec<usize> = (0..e.cols()).filter(|&j| support[j]).collect();
    if cols.is_empty() || cols.len() - rank(&e.select_columns(&cols)) != 1 {
        return Ok(None);
    }
    Ok(Some(primitive_integer_vector(&point)))
}
