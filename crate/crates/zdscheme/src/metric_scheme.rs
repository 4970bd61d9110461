//! The metric translation scheme of spheres.
//!
//! The classes are `R_r = {(x, y) : ρ(x − y) = r}` for `r = 0..=d`. The dual
//! classes are the dual spheres `Ŝ(t)`. Eigenvalues are
//! `p_r(t) = Σ_{x ∈ S(r)} conj(ξ(x)) μ({x})` for any `ξ ∈ Ŝ(t)` and dually
//! `q_t(r) = Σ_{ξ ∈ Ŝ(t)} ξ(x) μ̂({ξ})` for any `x ∈ S(r)`.

use crate::dual_fourier::{self, Carrier};
use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::oracle::{self, IntersectionTensor, WitnessMode};
use crate::rational::{self, Rational};
use crate::report::Check;
use num_traits::Zero;

/// Eigenvalue matrix `rows[class][dual class]`.
pub type Table = Vec<Vec<Rational>>;

/// Radius of every element, as class labels.
pub fn sphere_labels(g: &ChainedGroup) -> Vec<u32> {
    (0..g.order()).map(|x| g.radius(x) as u32).collect()
}

/// Valencies `μ(S(r))`, `r = 0..=d`.
pub fn valencies(g: &ChainedGroup) -> Vec<Rational> {
    (0..=g.depth()).map(|r| g.mu_sphere(r)).collect()
}

/// Closed-form sphere eigenvalues of a chained group.
///
/// Row `0` is `μ({0})`. For `r ≥ 1` the entry at column `b` is `μ(S(r))` when
/// `b ≤ d − r`, `−μ(B(r−1))` when `b = d − r + 1` and `0` beyond. Applied to
/// the dual group it yields the `Q` table.
pub fn sphere_eigen_closed(g: &ChainedGroup) -> Table {
    let d = g.depth();
    (0..=d)
        .map(|r| {
            (0..=d)
                .map(|b| {
                    if r == 0 {
                        g.mu_ball(0)
                    } else if b + r <= d {
                        g.mu_sphere(r)
                    } else if b + r == d + 1 {
                        -g.mu_ball(r - 1)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// First eigenmatrix `P[r][t]`.
pub fn p_closed(c: &Carrier) -> Table {
    sphere_eigen_closed(&c.group)
}

/// Second eigenmatrix `Q[t][r]`.
pub fn q_closed(c: &Carrier) -> Table {
    sphere_eigen_closed(c.hat())
}

fn rational_table(t: Vec<Vec<crate::phase::CycloSum>>) -> Result<Table> {
    t.into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, v)| {
                    v.as_rational()
                        .ok_or_else(|| Error::NotConstantOnDualBlock(format!("sphere {a}, dual sphere {b} is not rational")))
                })
                .collect()
        })
        .collect()
}

/// `P` by summing characters over every sphere, checking constancy on dual spheres.
pub fn p_oracle(c: &Carrier) -> Result<Table> {
    let g = &c.group;
    let t = oracle::class_transform_table(
        g.exponent(),
        |e, x| g.pairing(e, x),
        &sphere_labels(g),
        g.depth() + 1,
        &sphere_labels(c.hat()),
        g.depth() + 1,
        true,
        g.mu_point(),
    )?;
    rational_table(t)
}

/// `Q` by summing characters over every dual sphere, checking constancy on spheres.
pub fn q_oracle(c: &Carrier) -> Result<Table> {
    let g = &c.group;
    let t = oracle::class_transform_table(
        g.exponent(),
        |x, e| g.pairing(e, x),
        &sphere_labels(c.hat()),
        g.depth() + 1,
        &sphere_labels(g),
        g.depth() + 1,
        false,
        c.dual.mu_hat_point(),
    )?;
    rational_table(t)
}

/// Closed-form intersection number `p_{r1 r2}^{r3}`.
pub fn intersection_closed(g: &ChainedGroup, r1: usize, r2: usize, r3: usize) -> Rational {
    let m = r1.max(r2).max(r3);
    let at_max = [r1, r2, r3].iter().filter(|&&r| r == m).count();
    if m == 0 {
        return g.mu_ball(0);
    }
    match at_max {
        1 => Rational::zero(),
        2 => {
            if r3 == m {
                g.mu_sphere(r1.min(r2))
            } else {
                g.mu_sphere(m)
            }
        }
        _ => {
            let n = g.n(m).expect("radius in range");
            rational::uint(n - 2) * g.mu_ball(m - 1)
        }
    }
}

/// Closed-form intersection tensor.
pub fn intersection_tensor_closed(g: &ChainedGroup) -> IntersectionTensor {
    let l = g.depth() + 1;
    let mut t = IntersectionTensor::zeros(l);
    for r1 in 0..l {
        for r2 in 0..l {
            for r3 in 0..l {
                t.set(r1, r2, r3, intersection_closed(g, r1, r2, r3));
            }
        }
    }
    t
}

/// Intersection tensor by witness counting.
pub fn intersection_oracle(g: &ChainedGroup, mode: WitnessMode) -> Result<IntersectionTensor> {
    oracle::witness_tensor(g, &sphere_labels(g), g.depth() + 1, mode)
}

/// Diameter of `S(r)` by exhaustive pairwise distances.
pub fn sphere_diameter(g: &ChainedGroup, r: usize) -> usize {
    let s = g.sphere(r);
    let mut best = 0;
    for &x in &s {
        for &y in &s {
            best = best.max(g.distance(x, y));
        }
    }
    best
}

/// Diameter of `S(r)`: `r` if `n(r) > 2`, else `r − 1`.
pub fn sphere_diameter_closed(g: &ChainedGroup, r: usize) -> usize {
    if r == 0 || g.n(r).unwrap_or(0) > 2 {
        r
    } else {
        r - 1
    }
}

/// Measure of third vertices `z` with `d(x, z) = d(z, y) = r` for a pair at
/// distance `r`, counted directly.
pub fn equilateral_third_vertices(g: &ChainedGroup, r: usize) -> Rational {
    let Some(&x) = g.sphere(r).first() else {
        return Rational::zero();
    };
    let n = (0..g.order())
        .filter(|&z| g.distance(x, z) == r && g.distance(z, 0) == r)
        .count();
    g.mu_count(n)
}

fn table_failures(name: &str, a: &Table, b: &Table) -> Vec<String> {
    let mut out = Vec::new();
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                out.push(format!("{name}[{i}][{j}]: {} vs {}", rational::fmt(x), rational::fmt(y)));
            }
        }
    }
    out
}

fn delta(a: usize, b: usize) -> Rational {
    rational::int((a == b) as i64)
}

/// Algebraic identities of the closed `P` and `Q` tables.
pub fn identity_checks(c: &Carrier) -> Vec<Check> {
    let g = &c.group;
    let h = c.hat();
    let d = g.depth();
    let p = p_closed(c);
    let q = q_closed(c);
    let v = valencies(g);
    let vh = valencies(h);
    let idx = || (0..=d).flat_map(|a| (0..=d).map(move |b| (a, b)));
    let mut checks = Vec::new();

    let mut f = Vec::new();
    for (a, b) in idx() {
        let pq: Rational = (0..=d).map(|k| &p[a][k] * &q[k][b]).sum();
        let qp: Rational = (0..=d).map(|k| &q[a][k] * &p[k][b]).sum();
        if pq != delta(a, b) || qp != delta(a, b) {
            f.push(format!("({a},{b})"));
        }
    }
    checks.push(Check::from_failures("metric.pq_inverse", &f, (d + 1) * (d + 1)));

    let mut f = Vec::new();
    for (r, t) in idx() {
        if &p[r][t] * &vh[t] != &q[t][r] * &v[r] {
            f.push(format!("r={r}, t={t}"));
        }
    }
    checks.push(Check::from_failures("metric.duality", &f, (d + 1) * (d + 1)));

    let mut f = Vec::new();
    for (r1, r2) in idx() {
        let s: Rational = (0..=d).map(|t| &p[r1][t] * &p[r2][t] * &vh[t]).sum();
        let want = if r1 == r2 { v[r1].clone() } else { Rational::zero() };
        if s != want {
            f.push(format!("p rows {r1},{r2}"));
        }
        let s: Rational = (0..=d).map(|r| &q[r1][r] * &q[r2][r] * &v[r]).sum();
        let want = if r1 == r2 { vh[r1].clone() } else { Rational::zero() };
        if s != want {
            f.push(format!("q rows {r1},{r2}"));
        }
        let s: Rational = (0..=d).map(|r| &p[r][r1] * &p[r][r2] / &v[r]).sum();
        let want = if r1 == r2 { rational::int(1) / &vh[r1] } else { Rational::zero() };
        if s != want {
            f.push(format!("p columns {r1},{r2}"));
        }
    }
    checks.push(Check::from_failures("metric.orthogonality", &f, 3 * (d + 1) * (d + 1)));

    let mut f = Vec::new();
    for b in 0..=d {
        let s: Rational = (0..=d).map(|r| &p[r][b]).sum();
        let want = if b == 0 { g.mu_total() } else { Rational::zero() };
        if s != want {
            f.push(format!("sum_r p_r({b})"));
        }
        if p[b][0] != v[b] {
            f.push(format!("p_{b}(0)"));
        }
        let s: Rational = (0..=d).map(|t| &q[t][b]).sum();
        let want = if b == 0 { h.mu_total() } else { Rational::zero() };
        if s != want {
            f.push(format!("sum_t q_t({b})"));
        }
        if q[b][0] != vh[b] {
            f.push(format!("q_{b}(0)"));
        }
    }
    checks.push(Check::from_failures("metric.row_sums", &f, 4 * (d + 1)));
    checks
}

/// `p_{1,i}^{i+1} = 0` for `1 ≤ i < d`, so no ordering of the classes is
/// P-polynomial along the radius.
pub fn non_polynomial_check(g: &ChainedGroup) -> Check {
    let d = g.depth();
    let f: Vec<String> = (1..d)
        .filter(|&i| !intersection_closed(g, 1, i, i + 1).is_zero())
        .map(|i| format!("p_(1,{i})^({})", i + 1))
        .collect();
    Check::from_failures("metric.non_polynomial", &f, d.saturating_sub(1))
}

/// `χ[S(r1)] ∗ χ[S(r2)] = Σ_r3 p_{r1 r2}^{r3} χ[S(r3)]`, by exact convolution.
pub fn convolution_check(g: &ChainedGroup) -> Result<Check> {
    let d = g.depth();
    let ind: Vec<Vec<Rational>> = (0..=d)
        .map(|r| dual_fourier::indicator(g.order(), &g.sphere(r)))
        .collect();
    let mut f = Vec::new();
    for r1 in 0..=d {
        for r2 in 0..=d {
            let conv = dual_fourier::convolve(g, &ind[r1], &ind[r2])?;
            for (x, v) in conv.iter().enumerate() {
                if *v != intersection_closed(g, r1, r2, g.radius(x)) {
                    f.push(format!("r1={r1}, r2={r2}, x={x}"));
                    break;
                }
            }
        }
    }
    Ok(Check::from_failures("metric.convolution", &f, (d + 1) * (d + 1)))
}

/// All sphere-scheme checks: closed forms against oracles plus identities.
pub fn verify(c: &Carrier, mode: WitnessMode) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let mut checks = Vec::new();
    let p_or = p_oracle(c)?;
    let q_or = q_oracle(c)?;
    checks.push(Check::from_failures(
        "metric.p_oracle",
        &table_failures("P", &p_closed(c), &p_or),
        (d + 1) * (d + 1),
    ));
    checks.push(Check::from_failures(
        "metric.q_oracle",
        &table_failures("Q", &q_closed(c), &q_or),
        (d + 1) * (d + 1),
    ));
    let t = intersection_oracle(g, mode)?;
    let diff: Vec<String> = t
        .differences(&intersection_tensor_closed(g))
        .into_iter()
        .map(|(a, b, c)| format!("p_({a},{b})^{c}"))
        .collect();
    checks.push(Check::from_failures("metric.intersections", &diff, (d + 1).pow(3)));
    checks.extend(identity_checks(c));
    checks.push(non_polynomial_check(g));
    let f: Vec<String> = (0..=d)
        .filter(|&r| sphere_diameter(g, r) != sphere_diameter_closed(g, r))
        .map(|r| format!("diam S({r})"))
        .collect();
    checks.push(Check::from_failures("metric.sphere_diameter", &f, d + 1));
    let f: Vec<String> = (1..=d)
        .filter(|&r| equilateral_third_vertices(g, r) != intersection_closed(g, r, r, r))
        .map(|r| format!("r={r}"))
        .collect();
    checks.push(Check::from_failures("metric.equilateral", &f, d));
    if g.order() <= 256 {
        checks.push(convolution_check(g)?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn rt_eigenvalues_match_closed_form() {
        let c = Carrier::build(&GroupSpec::rt(3, 2)).unwrap();
        let p = p_oracle(&c).unwrap();
        assert_eq!(p, p_closed(&c));
        assert_eq!(q_oracle(&c).unwrap(), q_closed(&c));
    }

    #[test]
    fn padic_intersections_match() {
        let g = ChainedGroup::build(&GroupSpec::padic(3, 3)).unwrap();
        let t = intersection_oracle(&g, WitnessMode::All).unwrap();
        assert!(t.differences(&intersection_tensor_closed(&g)).is_empty());
    }

    #[test]
    fn identities_hold_in_counting_measure() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 3, 2]).counting()).unwrap();
        for ch in verify(&c, WitnessMode::All).unwrap() {
            assert!(ch.passed, "{ch:?}");
        }
    }

    #[test]
    fn binary_sphere_diameter_drops() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 3)).unwrap();
        assert_eq!(sphere_diameter(&g, 2), 1);
        assert_eq!(sphere_diameter_closed(&g, 2), 1);
    }
}
