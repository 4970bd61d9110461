//! Characters, the annihilator chain and Fourier analysis.
//!
//! Characters are indexed by exponent vectors `e` with
//! `φ_e(x) = exp(2πi Σ_k e_k x_k / m_k)`. The dual group is itself a
//! [`ChainedGroup`] whose chain is `H_j = G_{d−j}^⊥`, so that the dual ball of
//! radius `t` is `B̂(t) = G_t^⊥` and the dual radius is
//! `ρ̂(φ) = min{t : φ ∈ G_t^⊥}`. Dual radii pair with primal ones through
//! `r̃ = d − r` (so `B(r)^⊥ = B̂(r̃)`) and `t^♮ = d − t`.
//!
//! The dual measure is `μ̂({φ}) = 1/(μ({x})·|X|)`, which makes
//! `μ(B(r))·μ̂(B̂(r̃)) = 1` and Parseval exact for every normalization.
//!
//! Two transforms are provided. [`fourier_forward`] is
//! `f̃(ξ) = Σ_x ξ(x) f(x) μ({x})` with inverse [`fourier_inverse`]
//! `g^♮(x) = Σ_ξ conj(ξ(x)) g(ξ) μ̂({ξ})`. [`fourier_spectral`] evaluates
//! `Σ_x conj(ξ(x)) f(x) μ({x})`, the eigenvalue of convolution by `f` on the
//! character `ξ`; eigenvalue tables and Schur-ring coefficients use it.

use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::par;
use crate::phase::Phase;
use crate::rational::{self, Rational};
use num_complex::Complex64;
use num_traits::Zero;

/// The character group with its reversed annihilator chain.
#[derive(Debug, Clone)]
pub struct DualChainedGroup {
    dual: ChainedGroup,
    roots: Vec<Complex64>,
}

/// A function on the group or on its dual.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupFunction {
    /// Exact rational values.
    Rational(Vec<Rational>),
    /// Complex double values.
    Complex(Vec<Complex64>),
}

impl GroupFunction {
    /// Number of points.
    pub fn len(&self) -> usize {
        match self {
            GroupFunction::Rational(v) => v.len(),
            GroupFunction::Complex(v) => v.len(),
        }
    }

    /// True for the empty function.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Complex values.
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            GroupFunction::Rational(v) => v
                .iter()
                .map(|r| Complex64::new(rational::to_f64(r), 0.0))
                .collect(),
            GroupFunction::Complex(v) => v.clone(),
        }
    }

    /// Rational values, or an error for complex data.
    pub fn as_rational(&self) -> Result<&[Rational]> {
        match self {
            GroupFunction::Rational(v) => Ok(v),
            GroupFunction::Complex(_) => Err(Error::Unsupported("rational scalars")),
        }
    }
}

impl DualChainedGroup {
    /// The dual group as a chained group (`B̂(t)` is its ball of radius `t`).
    pub fn group(&self) -> &ChainedGroup {
        &self.dual
    }

    /// Phase of `φ_e(x)`.
    pub fn phase(&self, g: &ChainedGroup, e: usize, x: usize) -> Phase {
        Phase::new(g.pairing(e, x) as i64, g.exponent())
    }

    /// `φ_e(x)` as a complex double.
    pub fn value(&self, g: &ChainedGroup, e: usize, x: usize) -> Complex64 {
        self.roots[g.pairing(e, x) as usize]
    }

    /// Table of the `N`-th roots of unity, `N` the group exponent.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Dual radius `ρ̂(φ)`.
    pub fn dual_radius(&self, e: usize) -> usize {
        self.dual.radius(e)
    }

    /// `r̃ = d − r`.
    pub fn tilde(&self, r: usize) -> usize {
        self.dual.depth() - r
    }

    /// `t^♮ = d − t`.
    pub fn natural(&self, t: usize) -> usize {
        self.dual.depth() - t
    }

    /// `μ̂({φ})`.
    pub fn mu_hat_point(&self) -> &Rational {
        self.dual.mu_point()
    }

    /// Annihilator of a subset of `X`, ascending.
    pub fn annihilator(&self, g: &ChainedGroup, set: &[usize]) -> Vec<usize> {
        (0..g.order())
            .filter(|&e| set.iter().all(|&x| g.pairing(e, x) == 0))
            .collect()
    }
}

/// A chained group together with its dual.
#[derive(Debug, Clone)]
pub struct Carrier {
    /// The group `X`.
    pub group: ChainedGroup,
    /// Its character group.
    pub dual: DualChainedGroup,
}

impl Carrier {
    /// Builds the group described by `spec` and its dual.
    pub fn build(spec: &crate::spec::GroupSpec) -> Result<Carrier> {
        Carrier::build_with_cap(spec, crate::group_core::DEFAULT_CAP)
    }

    /// As [`Carrier::build`] with an explicit order cap.
    pub fn build_with_cap(spec: &crate::spec::GroupSpec, cap: u64) -> Result<Carrier> {
        Ok(Carrier::from_group(ChainedGroup::build_with_cap(spec, cap)?))
    }

    /// Pairs an existing group with its dual.
    pub fn from_group(group: ChainedGroup) -> Carrier {
        let dual = dual_group(&group);
        Carrier { group, dual }
    }

    /// The dual group as a chained group.
    pub fn hat(&self) -> &ChainedGroup {
        self.dual.group()
    }

    /// Depth `d`.
    pub fn depth(&self) -> usize {
        self.group.depth()
    }
}

/// Builds the dual group by exhaustive annihilator scans.
pub fn dual_group(g: &ChainedGroup) -> DualChainedGroup {
    let d = g.depth();
    let size = g.order();
    let levels: Vec<Vec<usize>> = (0..=d)
        .map(|j| {
            let sub = g.level(d - j);
            (0..size)
                .filter(|&e| sub.iter().all(|&x| g.pairing(e, x) == 0))
                .collect()
        })
        .collect();
    let dual = ChainedGroup::from_levels(g.factor_orders().to_vec(), levels, d - g.base_level())
        .expect("annihilator chain of a valid chain is valid");
    let n = g.exponent();
    let roots = (0..n)
        .map(|k| Phase::new(k as i64, n).to_complex())
        .collect();
    DualChainedGroup { dual, roots }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Length { expected, got })
    }
}

fn transform(
    g: &ChainedGroup,
    dual: &DualChainedGroup,
    f: &[Complex64],
    weight: f64,
    conj: bool,
) -> Vec<Complex64> {
    let n = g.exponent();
    par::map_range(g.order(), |e| {
        let mut acc = Complex64::zero();
        for (x, v) in f.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = g.pairing(e, x);
            let k = if conj { (n - k) % n } else { k };
            acc += dual.roots[k as usize] * v;
        }
        acc * weight
    })
}

/// `f̃(ξ) = Σ_x ξ(x) f(x) μ({x})`.
pub fn fourier_forward(
    g: &ChainedGroup,
    dual: &DualChainedGroup,
    f: &GroupFunction,
) -> Result<Vec<Complex64>> {
    check_len(g.order(), f.len())?;
    Ok(transform(
        g,
        dual,
        &f.to_complex(),
        rational::to_f64(g.mu_point()),
        false,
    ))
}

/// `g^♮(x) = Σ_ξ conj(ξ(x)) g(ξ) μ̂({ξ})`.
pub fn fourier_inverse(
    g: &ChainedGroup,
    dual: &DualChainedGroup,
    h: &GroupFunction,
) -> Result<Vec<Complex64>> {
    check_len(g.order(), h.len())?;
    Ok(transform(
        g,
        dual,
        &h.to_complex(),
        rational::to_f64(dual.mu_hat_point()),
        true,
    ))
}

/// `Σ_x conj(ξ(x)) f(x) μ({x})`, the eigenvalue of `f∗·` on `ξ`.
pub fn fourier_spectral(
    g: &ChainedGroup,
    dual: &DualChainedGroup,
    f: &GroupFunction,
) -> Result<Vec<Complex64>> {
    check_len(g.order(), f.len())?;
    Ok(transform(
        g,
        dual,
        &f.to_complex(),
        rational::to_f64(g.mu_point()),
        true,
    ))
}

/// Exact convolution `(f1∗f2)(x) = Σ_y f1(x−y) f2(y) μ({y})`.
pub fn convolve(g: &ChainedGroup, f1: &[Rational], f2: &[Rational]) -> Result<Vec<Rational>> {
    check_len(g.order(), f1.len())?;
    check_len(g.order(), f2.len())?;
    let support: Vec<usize> = (0..g.order()).filter(|&y| !f2[y].is_zero()).collect();
    let c = g.mu_point().clone();
    Ok(par::map_range(g.order(), |x| {
        let mut acc = Rational::zero();
        for &y in &support {
            let a = &f1[g.sub(x, y)];
            if !a.is_zero() {
                acc += a * &f2[y];
            }
        }
        acc * &c
    }))
}

/// Complex convolution with the same weights as [`convolve`].
pub fn convolve_complex(
    g: &ChainedGroup,
    f1: &[Complex64],
    f2: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_len(g.order(), f1.len())?;
    check_len(g.order(), f2.len())?;
    let c = rational::to_f64(g.mu_point());
    Ok(par::map_range(g.order(), |x| {
        let mut acc = Complex64::zero();
        for (y, b) in f2.iter().enumerate() {
            if !b.is_zero() {
                acc += f1[g.sub(x, y)] * b;
            }
        }
        acc * c
    }))
}

/// `⟨f1, f2⟩ = Σ_x f1(x) conj(f2(x)) w`.
pub fn inner(f1: &[Complex64], f2: &[Complex64], w: f64) -> Complex64 {
    f1.iter().zip(f2).map(|(a, b)| a * b.conj()).sum::<Complex64>() * w
}

/// `μ(supp f)·μ̂(supp f̃)` with supports taken above `tol`.
pub fn uncertainty_product(
    g: &ChainedGroup,
    dual: &DualChainedGroup,
    f: &GroupFunction,
    tol: f64,
) -> Result<Rational> {
    let v = f.to_complex();
    let s = v.iter().filter(|z| z.norm() > tol).count();
    if s == 0 {
        return Err(Error::ZeroFunction);
    }
    let ft = fourier_forward(g, dual, f)?;
    let sh = ft.iter().filter(|z| z.norm() > tol).count();
    Ok(g.mu_count(s) * dual.group().mu_count(sh))
}

/// Indicator function of a set.
pub fn indicator(size: usize, set: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); size];
    for &x in set {
        v[x] = rational::int(1);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn annihilator_chain_z2x2() {
        let g = ChainedGroup::build(&GroupSpec::rt(2, 2)).unwrap();
        let dg = dual_group(&g);
        assert_eq!(dg.group().order(), 4);
        assert_eq!(dg.annihilator(&g, g.level(1)).len(), 2);
        assert_eq!(dg.annihilator(&g, &[0]).len(), 4);
        assert_eq!(dg.group().ball_size(1), 2);
    }

    #[test]
    fn dual_radius_pairs_with_primal() {
        let g = ChainedGroup::build(&GroupSpec::rt(3, 3)).unwrap();
        let dg = dual_group(&g);
        for r in 0..=3 {
            let ann = dg.annihilator(&g, g.ball(r));
            assert_eq!(ann, dg.group().ball(dg.tilde(r)).to_vec());
            assert_eq!(g.mu_ball(r) * dg.group().mu_ball(dg.tilde(r)), rational::int(1));
        }
    }

    #[test]
    fn ball_transform_is_ball() {
        let g = ChainedGroup::build(&GroupSpec::padic(3, 2)).unwrap();
        let dg = dual_group(&g);
        for r in 0..=2 {
            let f = GroupFunction::Rational(indicator(g.order(), g.ball(r)));
            let ft = fourier_forward(&g, &dg, &f).unwrap();
            let m = rational::to_f64(&g.mu_ball(r));
            for (e, v) in ft.iter().enumerate() {
                let inside = dg.dual_radius(e) <= dg.tilde(r);
                let want = if inside { m } else { 0.0 };
                assert!((v - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
            assert_eq!(
                uncertainty_product(&g, &dg, &f, 1e-9).unwrap(),
                rational::int(1)
            );
        }
    }

    #[test]
    fn convolution_identities() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 3).counting()).unwrap();
        let b = indicator(g.order(), g.ball(1));
        let bb = convolve(&g, &b, &b).unwrap();
        let want: Vec<Rational> = b.iter().map(|v| v * g.mu_ball(1)).collect();
        assert_eq!(bb, want);
        let f: Vec<Rational> = (0..8).map(|i| rational::ratio(i * i - 3, 5)).collect();
        let delta = indicator(8, &[0]);
        assert_eq!(convolve(&g, &f, &delta).unwrap(), f);
    }
}
