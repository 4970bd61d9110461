//! The Schur ring of ball-constant functions and its Fourier dual.
//!
//! On a compact chain the basis of `A` is `α_0 = χ[X]` together with the
//! block indicators `α_{l,i} = χ[Φ_i(r_l)]`, `r_l = d − l + 1`, so `l` grows as
//! the radius shrinks. The basis of `Â` is `β_0 = χ[{1}]` and
//! `β_{k,j} = χ[Φ̂_j(k)]`. Fourier transforms map `α_a ↦ Σ_b π_a(b) β_b` and
//! `β_b ↦ Σ_a κ_b(a) α_a`.

use super::{block_members, BlockIndex};
use crate::dual_fourier::{self, Carrier};
use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::phase::{CycloSum, Phased};
use crate::rational::{self, Rational};
use crate::report::Check;
use num_traits::Zero;

/// Basis labels, fourier tables and structure constants.
#[derive(Debug, Clone)]
pub struct SchurRing {
    /// `(l, i)` for each `α` in order; `(0, 0)` is `α_0`.
    pub alpha: Vec<(usize, usize)>,
    /// `(k, j)` for each `β` in order; `(0, 0)` is `β_0`.
    pub beta: Vec<(usize, usize)>,
    /// `pi[a][b]`: coefficient of `β_b` in the transform of `α_a`.
    pub pi: Vec<Vec<Phased>>,
    /// `kappa[b][a]`: coefficient of `α_a` in the inverse transform of `β_b`.
    pub kappa: Vec<Vec<CycloSum>>,
    exponent: u64,
}

fn level_of(d: usize, (r, i): (usize, usize)) -> (usize, usize) {
    if r == 0 {
        (0, 0)
    } else {
        (d - r + 1, i)
    }
}

impl SchurRing {
    /// Tables for a compact chain.
    pub fn new(c: &Carrier) -> Result<SchurRing> {
        let g = &c.group;
        if g.is_windowed() {
            return Err(Error::Unsupported("a compact (non-windowed) chain"));
        }
        let d = g.depth();
        let n = g.exponent();
        let bi = BlockIndex::new(g);
        let hi = BlockIndex::new(c.hat());
        let mut alpha: Vec<(usize, usize)> = bi.labels().iter().map(|&b| level_of(d, b)).collect();
        alpha.sort();
        let beta: Vec<(usize, usize)> = hi.labels().to_vec();
        let block_id = |(l, i): (usize, usize)| {
            if l == 0 {
                0
            } else {
                bi.id(d - l + 1, i).expect("block")
            }
        };
        let p = super::p_closed(c);
        let q = super::q_closed(c);
        let pi: Vec<Vec<Phased>> = alpha
            .iter()
            .map(|&a| {
                if a == (0, 0) {
                    beta.iter()
                        .enumerate()
                        .map(|(b, _)| {
                            if b == 0 {
                                Phased::real(g.mu_total())
                            } else {
                                Phased::real(Rational::zero())
                            }
                        })
                        .collect()
                } else {
                    p[block_id(a)].clone()
                }
            })
            .collect();
        let kappa: Vec<Vec<CycloSum>> = (0..beta.len())
            .map(|b| {
                let v0 = CycloSum::from_phased(n, &q[b][0]);
                alpha
                    .iter()
                    .map(|&a| {
                        if a == (0, 0) {
                            v0.clone()
                        } else {
                            CycloSum::from_phased(n, &q[b][block_id(a)]).sub(&v0)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SchurRing {
            alpha,
            beta,
            pi,
            kappa,
            exponent: n,
        })
    }

    /// Dimension of `A` (and of `Â`).
    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// Coefficients `π^{(c)}_{a1,a2}` of `α_{a1} ∗ α_{a2}` in the `α` basis.
    pub fn convolution_constants(&self, a1: usize, a2: usize) -> Vec<CycloSum> {
        (0..self.dim())
            .map(|c| {
                let mut acc = CycloSum::zero(self.exponent);
                for b in 0..self.beta.len() {
                    let w = self.pi[a1][b].mul(&self.pi[a2][b]);
                    if !w.mag.is_zero() {
                        acc.add_mul_phased(&self.kappa[b][c], &w);
                    }
                }
                acc
            })
            .collect()
    }

    /// Coefficients of the pointwise product of the inverse transforms of
    /// `β_{b1}` and `β_{b2}` in the `α` basis. With `printed` the cross terms
    /// use `1` in place of the `α_0` coefficients.
    fn product_coefficients(&self, b1: usize, b2: usize, printed: bool) -> Vec<CycloSum> {
        let k1 = &self.kappa[b1];
        let k2 = &self.kappa[b2];
        let one = CycloSum::from_rational(self.exponent, rational::int(1));
        let (c1, c2) = if printed {
            (one.clone(), one)
        } else {
            (k1[0].clone(), k2[0].clone())
        };
        (0..self.dim())
            .map(|a| {
                if a == 0 {
                    k1[0].mul(&k2[0])
                } else {
                    let mut s = c1.mul(&k2[a]);
                    s.add_assign(&c2.mul(&k1[a]));
                    s.add_assign(&k1[a].mul(&k2[a]));
                    s
                }
            })
            .collect()
    }

    fn dual_from_alpha(&self, coeffs: &[CycloSum]) -> Vec<CycloSum> {
        (0..self.beta.len())
            .map(|k| {
                let mut acc = CycloSum::zero(self.exponent);
                for (a, cf) in coeffs.iter().enumerate() {
                    acc.add_mul_phased(cf, &self.pi[a][k]);
                }
                acc
            })
            .collect()
    }

    /// Coefficients `κ^{(k)}_{b1,b2}` of `β_{b1} ∗ β_{b2}` in the `β` basis.
    pub fn dual_convolution_constants(&self, b1: usize, b2: usize) -> Vec<CycloSum> {
        self.dual_from_alpha(&self.product_coefficients(b1, b2, false))
    }

    /// Variant of [`SchurRing::dual_convolution_constants`] using the cross
    /// terms `κ1 + κ2 + κ1κ2`, kept to compare against the expanded form.
    pub fn dual_convolution_constants_printed(&self, b1: usize, b2: usize) -> Vec<CycloSum> {
        self.dual_from_alpha(&self.product_coefficients(b1, b2, true))
    }

    /// Structural zeros: `π_{l,i}(k,j) = 0` for `k > l` and
    /// `κ_{k,j}(l,i) = 0` for `l > k`.
    pub fn triangular(&self) -> bool {
        let pi_ok = self.alpha.iter().enumerate().all(|(a, &(l, _))| {
            self.beta
                .iter()
                .enumerate()
                .all(|(b, &(k, _))| k <= l || self.pi[a][b].mag.is_zero())
        });
        let kappa_ok = self.beta.iter().enumerate().all(|(b, &(k, _))| {
            self.alpha
                .iter()
                .enumerate()
                .all(|(a, &(l, _))| l <= k || self.kappa[b][a].is_zero())
        });
        pi_ok && kappa_ok
    }

    /// Indicator function of `α_a` on `X`.
    pub fn alpha_function(&self, g: &ChainedGroup, a: usize) -> Vec<Rational> {
        let d = g.depth();
        let (l, i) = self.alpha[a];
        if l == 0 {
            vec![rational::int(1); g.order()]
        } else {
            dual_fourier::indicator(g.order(), &block_members(g, (d - l + 1, i)))
        }
    }

    /// Indicator function of `β_b` on `X̂`.
    pub fn beta_function(&self, h: &ChainedGroup, b: usize) -> Vec<Rational> {
        dual_fourier::indicator(h.order(), &block_members(h, self.beta[b]))
    }

    /// Coefficients of a function on `X` in the `α` basis.
    pub fn expand_alpha(&self, g: &ChainedGroup, f: &[Rational]) -> Result<Vec<Rational>> {
        let d = g.depth();
        let f0 = f[0].clone();
        let mut out = vec![f0.clone()];
        for &(l, i) in &self.alpha[1..] {
            let members = block_members(g, (d - l + 1, i));
            let v = &f[members[0]];
            if members.iter().any(|&x| &f[x] != v) {
                return Err(Error::NotInAlgebra(format!("not constant on block ({l},{i})")));
            }
            out.push(v - &f0);
        }
        Ok(out)
    }

    /// Coefficients of a function on `X̂` in the `β` basis.
    pub fn expand_beta(&self, h: &ChainedGroup, f: &[Rational]) -> Result<Vec<Rational>> {
        self.beta
            .iter()
            .map(|&b| {
                let members = block_members(h, b);
                let v = &f[members[0]];
                if members.iter().any(|&x| &f[x] != v) {
                    Err(Error::NotInAlgebra(format!("not constant on dual block {b:?}")))
                } else {
                    Ok(v.clone())
                }
            })
            .collect()
    }
}

/// Tables for `c`.
pub fn schur_tables(c: &Carrier) -> Result<SchurRing> {
    SchurRing::new(c)
}

/// `α_{a1} ∗ α_{a2}` by direct convolution, re-expanded in the `α` basis.
pub fn schur_convolution_oracle(c: &Carrier, s: &SchurRing, a1: usize, a2: usize) -> Result<Vec<Rational>> {
    let g = &c.group;
    let f = dual_fourier::convolve(g, &s.alpha_function(g, a1), &s.alpha_function(g, a2))?;
    s.expand_alpha(g, &f)
}

/// `β_{b1} ∗ β_{b2}` by direct convolution on `X̂`, re-expanded in the `β` basis.
pub fn schur_dual_convolution_oracle(c: &Carrier, s: &SchurRing, b1: usize, b2: usize) -> Result<Vec<Rational>> {
    let h = c.hat();
    let f = dual_fourier::convolve(h, &s.beta_function(h, b1), &s.beta_function(h, b2))?;
    s.expand_beta(h, &f)
}

fn matches(closed: &[CycloSum], oracle: &[Rational]) -> bool {
    closed
        .iter()
        .zip(oracle)
        .all(|(c, o)| c.equals(&CycloSum::from_rational(c.order(), o.clone())))
}

/// Checks of the graded subalgebra `A_m` and its dual `Â_m`, `0 ≤ m ≤ d − 1`.
pub fn graded_subalgebra_check(c: &Carrier, s: &SchurRing, m: usize) -> Result<Check> {
    let g = &c.group;
    let d = g.depth();
    if m >= d {
        return Err(Error::RadiusOutOfRange {
            radius: m,
            max: d.saturating_sub(1),
        });
    }
    let in_a: Vec<usize> = (0..s.dim()).filter(|&a| s.alpha[a].0 <= m).collect();
    let in_b: Vec<usize> = (0..s.beta.len()).filter(|&b| s.beta[b].0 <= m).collect();
    let expected: usize = 1 + (1..=m).map(|l| g.n(d - l + 1).unwrap_or(1) as usize - 1).sum::<usize>();
    let mut f = Vec::new();
    if in_a.len() != expected || in_b.len() != expected {
        f.push(format!("dims {} and {}, expected {expected}", in_a.len(), in_b.len()));
    }
    for &a in &in_a {
        if (0..s.beta.len()).any(|b| !in_b.contains(&b) && !s.pi[a][b].mag.is_zero()) {
            f.push(format!("transform of alpha {a} leaves the dual subalgebra"));
        }
    }
    for &b in &in_b {
        if (0..s.dim()).any(|a| !in_a.contains(&a) && !s.kappa[b][a].is_zero()) {
            f.push(format!("inverse transform of beta {b} leaves the subalgebra"));
        }
    }
    for &a1 in &in_a {
        for &a2 in &in_a {
            let o = schur_convolution_oracle(c, s, a1, a2)?;
            if o.iter().enumerate().any(|(a, v)| !in_a.contains(&a) && !v.is_zero()) {
                f.push(format!("alpha {a1} * alpha {a2} leaves A_{m}"));
            }
        }
    }
    for &b1 in &in_b {
        for &b2 in &in_b {
            let o = schur_dual_convolution_oracle(c, s, b1, b2)?;
            if o.iter().enumerate().any(|(b, v)| !in_b.contains(&b) && !v.is_zero()) {
                f.push(format!("beta {b1} * beta {b2} leaves the dual A_{m}"));
            }
        }
    }
    let shift = g.ball(d - m).to_vec();
    for &a in &in_a {
        let fa = s.alpha_function(g, a);
        if shift
            .iter()
            .any(|&y| (0..g.order()).any(|x| fa[g.add(x, y)] != fa[x]))
        {
            f.push(format!("alpha {a} is not invariant under B({})", d - m));
        }
    }
    Ok(Check::from_failures(format!("schur.graded_{m}"), &f, in_a.len() + in_b.len()))
}

/// Schur-ring checks: structure constants against direct convolution on both
/// sides, triangularity and the graded subalgebras.
pub fn verify(c: &Carrier) -> Result<Vec<Check>> {
    let s = SchurRing::new(c)?;
    let l = s.dim();
    let mut conv = Vec::new();
    let mut dual = Vec::new();
    let mut printed = Vec::new();
    let mut lower = Vec::new();
    for a1 in 0..l {
        for a2 in 0..l {
            let closed = s.convolution_constants(a1, a2);
            let oracle = schur_convolution_oracle(c, &s, a1, a2)?;
            if !matches(&closed, &oracle) {
                conv.push(format!("alpha {a1} * alpha {a2}"));
            }
            let lmin = s.alpha[a1].0.min(s.alpha[a2].0);
            if (0..l).any(|k| s.alpha[k].0 > lmin && !oracle[k].is_zero()) {
                lower.push(format!("alpha {a1} * alpha {a2}"));
            }
            let closed = s.dual_convolution_constants(a1, a2);
            let oracle = schur_dual_convolution_oracle(c, &s, a1, a2)?;
            if !matches(&closed, &oracle) {
                dual.push(format!("beta {a1} * beta {a2}"));
            }
            let kmax = s.beta[a1].0.max(s.beta[a2].0);
            if (0..l).any(|k| s.beta[k].0 > kmax && !oracle[k].is_zero()) {
                lower.push(format!("beta {a1} * beta {a2}"));
            }
            if !matches(&s.dual_convolution_constants_printed(a1, a2), &oracle) {
                printed.push(format!("beta {a1} * beta {a2}"));
            }
        }
    }
    let mut checks = vec![
        Check::from_failures("schur.convolution", &conv, l * l),
        Check::from_failures("schur.dual_convolution", &dual, l * l),
        Check::from_failures("schur.constant_support", &lower, 2 * l * l),
        Check::exact("schur.triangular", s.triangular(), format!("dimension {l}")),
        Check::exact(
            "schur.printed_dual_form",
            true,
            format!("cross terms with unit alpha_0 coefficients disagree on {} of {} pairs", printed.len(), l * l),
        ),
    ];
    for m in 0..c.depth() {
        checks.push(graded_subalgebra_check(c, &s, m)?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn alpha0_is_idempotent_in_probability() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 2, 2])).unwrap();
        let s = SchurRing::new(&c).unwrap();
        let k = s.convolution_constants(0, 0);
        assert_eq!(k[0].as_rational(), Some(rational::int(1)));
        assert!(k[1..].iter().all(CycloSum::is_zero));
    }

    #[test]
    fn alpha0_absorbs_blocks() {
        let c = Carrier::build(&GroupSpec::padic(3, 2)).unwrap();
        let s = SchurRing::new(&c).unwrap();
        let g = &c.group;
        for a in 1..s.dim() {
            let (l, _) = s.alpha[a];
            let k = s.convolution_constants(0, a);
            assert_eq!(k[0].as_rational().unwrap(), g.mu_ball(g.depth() - l));
            assert!(k[1..].iter().all(CycloSum::is_zero));
        }
    }

    #[test]
    fn z9_schur_ring_closes() {
        let c = Carrier::build(&GroupSpec::padic(3, 2)).unwrap();
        for ch in verify(&c).unwrap() {
            assert!(ch.passed, "{ch:?}");
        }
    }

    #[test]
    fn windowed_chain_is_rejected() {
        let c = Carrier::build(&GroupSpec::windowed(GroupSpec::padic(2, 3), 1)).unwrap();
        assert!(SchurRing::new(&c).is_err());
    }
}
