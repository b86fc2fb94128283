use crate::error::{Error, Result};

use super::profile::{DensityProfile, Domain};
use super::solver::Solver;

fn merged(u: &DensityProfile, v: &DensityProfile) -> Vec<f64> {
    let mut xs: Vec<f64> = u.breakpoints().iter().chain(v.breakpoints()).copied().collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// `sup_x |int_{-inf}^x (u - v)|`, exact for piecewise-constant inputs.
///
/// On the line both tails must agree; on the torus integrals start at 0.
pub fn delta_distance(u: &DensityProfile, v: &DensityProfile) -> Result<f64> {
    if u.domain() != v.domain() {
        return Err(Error::DomainMismatch);
    }
    let mut xs = merged(u, v);
    match u.domain() {
        Domain::Line => {
            if u.left_tail() != v.left_tail() || u.right_tail() != v.right_tail() {
                return Err(Error::DomainMismatch);
            }
            let Some(&start) = xs.first() else { return Ok(0.0) };
            let base = u.primitive(start) - v.primitive(start);
            Ok(xs.iter().map(|&x| (u.primitive(x) - v.primitive(x) - base).abs()).fold(0.0, f64::max))
        }
        Domain::Torus => {
            xs.push(1.0);
            Ok(xs.iter().map(|&x| (u.primitive(x) - v.primitive(x)).abs()).fold(0.0, f64::max))
        }
    }
}

/// `int_a^b |u - v|`, exact.
pub fn l1_on(u: &DensityProfile, v: &DensityProfile, a: f64, b: f64) -> f64 {
    let mut xs = vec![a];
    xs.extend(merged(u, v).into_iter().filter(|&x| x > a && x < b));
    xs.push(b);
    xs.windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            (u.value(mid) - v.value(mid)).abs() * (w[1] - w[0])
        })
        .sum()
}

/// Whether the evolutions of `u` and `v` agree on `[a + c t, b - c t]`
/// when `u = v` on `[a, b]`, up to `10 dx` of L1 mass.
pub fn finite_speed_check(solver: &Solver, u: &DensityProfile, v: &DensityProfile, a: f64, b: f64, t: f64, c: f64) -> Result<bool> {
    if b - a < 2.0 * c * t {
        return Err(Error::EmptyInterval { a: a + c * t, b: b - c * t });
    }
    let (pu, pv) = match u.domain() {
        Domain::Line => (solver.evolve_p(u, t)?, solver.evolve_p(v, t)?),
        Domain::Torus => (solver.evolve_q(u, t)?, solver.evolve_q(v, t)?),
    };
    Ok(l1_on(&pu, &pv, a + c * t, b - c * t) <= 10.0 * solver.dx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::FluxModel;

    #[test]
    fn delta_examples() {
        let u = DensityProfile::line(vec![0.0, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        let z = DensityProfile::constant(Domain::Line, 0.0).unwrap();
        assert_eq!(delta_distance(&u, &u).unwrap(), 0.0);
        assert_eq!(delta_distance(&u, &z).unwrap(), 1.0);
        let w = DensityProfile::line(vec![0.5, 1.5], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(delta_distance(&u, &w).unwrap(), 0.5);
        let s = DensityProfile::step(0.2, 0.8, 0.0).unwrap();
        assert_eq!(delta_distance(&u, &s), Err(Error::DomainMismatch));
    }

    #[test]
    fn finite_speed() {
        let solver = Solver::new(FluxModel::new(1.5), 0.01);
        let u = DensityProfile::line(vec![-12.0, -11.0, 11.0, 12.0], vec![0.0, 0.7, 0.3, 0.9, 0.0]).unwrap();
        let v = DensityProfile::line(vec![-12.0, -11.5, 11.0, 11.5], vec![0.0, 0.1, 0.3, 0.2, 0.0]).unwrap();
        assert!(finite_speed_check(&solver, &u, &v, -11.0, 11.0, 1.0, 3.0).unwrap());
        assert!(finite_speed_check(&solver, &u, &u, -11.0, 11.0, 1.0, 3.0).unwrap());
        assert!(matches!(finite_speed_check(&solver, &u, &v, -1.0, 1.0, 1.0, 3.0), Err(Error::EmptyInterval { .. })));
    }
}
