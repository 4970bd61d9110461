//! Averaging operators, Littlewood–Paley projectors, Haar-like wavelets and
//! martingale identities.
//!
//! `E_r f` averages `f` over the cosets of `B(r)`. The projectors
//! `Δ_r = E_r − E_{r+1}` (with `Δ_d = E_d`) split `L_2(X)` orthogonally, and
//! `Δ_r = Σ_j Δ_{r,j}` refines them by the characters `θ_{j,d−r}` that are
//! trivial on `B(r)`. The wavelets
//! `ψ_{r,j,z}(x) = μ(B(r+1))^{−1/2} θ_{j,d−r}(x − z) χ[B(r+1)](x − z)`
//! together with the constant `μ(X)^{−1/2}` form an orthonormal basis.

use crate::ball_scheme::{self, BlockIndex};
use crate::dual_fourier::{self, Carrier, GroupFunction};
use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::metric_scheme;
use crate::par;
use crate::phase;
use crate::rational::{self, Rational};
use crate::report::Check;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A translation-invariant operator `(Af)(x) = Σ_y k(x − y) f(y) μ({y})`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOperator {
    /// The kernel `k` on `X`.
    pub kernel: GroupFunction,
}

impl KernelOperator {
    /// Applies the operator to a rational function; the kernel must be rational.
    pub fn apply(&self, g: &ChainedGroup, f: &[Rational]) -> Result<Vec<Rational>> {
        dual_fourier::convolve(g, self.kernel.as_rational()?, f)
    }

    /// Applies the operator to a complex function.
    pub fn apply_complex(&self, g: &ChainedGroup, f: &[Complex64]) -> Result<Vec<Complex64>> {
        dual_fourier::convolve_complex(g, &self.kernel.to_complex(), f)
    }

    /// Composition `A ∘ B`, whose kernel is the convolution of the kernels.
    pub fn compose(&self, g: &ChainedGroup, o: &KernelOperator) -> Result<KernelOperator> {
        let kernel = match (&self.kernel, &o.kernel) {
            (GroupFunction::Rational(a), GroupFunction::Rational(b)) => {
                GroupFunction::Rational(dual_fourier::convolve(g, a, b)?)
            }
            (a, b) => GroupFunction::Complex(dual_fourier::convolve_complex(g, &a.to_complex(), &b.to_complex())?),
        };
        Ok(KernelOperator { kernel })
    }

    /// Kernel value `A(x, y) = k(x − y)`.
    pub fn entry(&self, g: &ChainedGroup, x: usize, y: usize) -> Complex64 {
        let u = g.sub(x, y);
        match &self.kernel {
            GroupFunction::Rational(v) => Complex64::new(rational::to_f64(&v[u]), 0.0),
            GroupFunction::Complex(v) => v[u],
        }
    }
}

fn check_radius(g: &ChainedGroup, r: usize) -> Result<()> {
    if r > g.depth() {
        Err(Error::RadiusOutOfRange {
            radius: r,
            max: g.depth(),
        })
    } else {
        Ok(())
    }
}

/// Kernel `μ(B(r))^{−1} χ[B(r)]` of `E_r`.
pub fn averaging_kernel(g: &ChainedGroup, r: usize) -> Result<Vec<Rational>> {
    check_radius(g, r)?;
    let w = rational::int(1) / g.mu_ball(r);
    let mut k = vec![Rational::zero(); g.order()];
    for &x in g.ball(r) {
        k[x] = w.clone();
    }
    Ok(k)
}

/// `E_r f`: the mean of `f` over the coset `x + B(r)`.
pub fn averaging(g: &ChainedGroup, r: usize, f: &[Rational]) -> Result<Vec<Rational>> {
    check_radius(g, r)?;
    if f.len() != g.order() {
        return Err(Error::Length {
            expected: g.order(),
            got: f.len(),
        });
    }
    let ball = g.ball(r);
    let size = rational::uint(ball.len() as u64);
    let mut mean: Vec<Option<Rational>> = vec![None; g.order()];
    let mut out = vec![Rational::zero(); g.order()];
    for x in 0..g.order() {
        if mean[x].is_none() {
            let s: Rational = ball.iter().map(|&b| &f[g.add(x, b)]).sum::<Rational>() / &size;
            for &b in ball {
                mean[g.add(x, b)] = Some(s.clone());
            }
        }
        out[x] = mean[x].clone().expect("filled");
    }
    Ok(out)
}

/// `Δ_r = E_r − E_{r+1}` for `r < d`, and `Δ_d = E_d`.
pub fn delta(g: &ChainedGroup, r: usize) -> Result<KernelOperator> {
    let mut k = averaging_kernel(g, r)?;
    if r < g.depth() {
        for (a, b) in k.iter_mut().zip(averaging_kernel(g, r + 1)?) {
            *a -= b;
        }
    }
    Ok(KernelOperator {
        kernel: GroupFunction::Rational(k),
    })
}

/// `Δ_{r,j}` with kernel `μ(B(r+1))^{−1} θ_{j,d−r}(u) χ[B(r+1)](u)`,
/// `0 ≤ r < d`, `1 ≤ j < n(r+1)`.
pub fn delta_rj(c: &Carrier, r: usize, j: usize) -> Result<KernelOperator> {
    let g = &c.group;
    let d = g.depth();
    if r >= d {
        return Err(Error::BoundaryRadius {
            radius: r,
            direction: "outer",
        });
    }
    let thetas = c.hat().coset_reps(d - r)?;
    if j == 0 || j >= thetas.len() {
        return Err(Error::InvalidLabel(format!("character index {j} at radius {r}")));
    }
    let th = thetas[j];
    let w = 1.0 / rational::to_f64(&g.mu_ball(r + 1));
    let mut k = vec![Complex64::zero(); g.order()];
    for &u in g.ball(r + 1) {
        k[u] = c.dual.value(g, th, u) * w;
    }
    Ok(KernelOperator {
        kernel: GroupFunction::Complex(k),
    })
}

/// Index of a basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WaveletLabel {
    /// `ψ_{r,j,z}`.
    Haar {
        /// Radius `r ∈ 0..d`.
        r: usize,
        /// Character index `j ≥ 1`.
        j: usize,
        /// Translation, a representative of `X/B(r+1)`.
        z: usize,
    },
    /// The constant `μ(X)^{−1/2}`.
    Constant,
}

/// The Haar-like basis of `L_2(X)`.
#[derive(Debug, Clone)]
pub struct WaveletBasis {
    /// Labels in construction order: radius ascending, then `j`, then `z`.
    pub labels: Vec<WaveletLabel>,
    thetas: Vec<usize>,
    scale_sq: Vec<Rational>,
    weight: f64,
    exponent: u64,
}

/// Lexicographically smallest representatives of `X/B(r)`.
pub fn quotient_reps(g: &ChainedGroup, r: usize) -> Vec<usize> {
    let ball = g.ball(r);
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if !seen[x] {
            reps.push(x);
            for &b in ball {
                seen[g.add(x, b)] = true;
            }
        }
    }
    reps
}

/// Builds `ψ_{r,j,z}` for all labels plus the constant.
pub fn wavelet_basis(c: &Carrier) -> Result<WaveletBasis> {
    let g = &c.group;
    let d = g.depth();
    let mut labels = Vec::new();
    let mut thetas = Vec::new();
    let mut scale_sq = Vec::new();
    for r in 0..d {
        let th = c.hat().coset_reps(d - r)?;
        let zs = quotient_reps(g, r + 1);
        let s = rational::int(1) / g.mu_ball(r + 1);
        for (j, &t) in th.iter().enumerate().skip(1) {
            for &z in &zs {
                labels.push(WaveletLabel::Haar { r, j, z });
                thetas.push(t);
                scale_sq.push(s.clone());
            }
        }
    }
    labels.push(WaveletLabel::Constant);
    thetas.push(0);
    scale_sq.push(rational::int(1) / g.mu_total());
    Ok(WaveletBasis {
        labels,
        thetas,
        scale_sq,
        weight: rational::to_f64(g.mu_point()),
        exponent: g.exponent(),
    })
}

impl WaveletBasis {
    /// Number of basis functions.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// True for the empty basis.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `‖ψ‖^{-2}`-style scale `μ(B(r+1))^{−1}` (or `μ(X)^{−1}`) of basis function `a`.
    pub fn scale_squared(&self, a: usize) -> &Rational {
        &self.scale_sq[a]
    }

    /// Support of basis function `a`, ascending.
    pub fn support(&self, g: &ChainedGroup, a: usize) -> Vec<usize> {
        match self.labels[a] {
            WaveletLabel::Constant => (0..g.order()).collect(),
            WaveletLabel::Haar { r, z, .. } => {
                let mut s: Vec<usize> = g.ball(r + 1).iter().map(|&u| g.add(z, u)).collect();
                s.sort_unstable();
                s
            }
        }
    }

    /// Phase exponent `k` with `ψ_a(x) = scale · ζ_N^k` on the support.
    pub fn phase_index(&self, g: &ChainedGroup, a: usize, x: usize) -> Option<u64> {
        match self.labels[a] {
            WaveletLabel::Constant => Some(0),
            WaveletLabel::Haar { r, z, .. } => {
                let u = g.sub(x, z);
                (g.radius(u) <= r + 1).then(|| g.pairing(self.thetas[a], u))
            }
        }
    }

    /// Dense values of basis function `a`.
    pub fn function(&self, c: &Carrier, a: usize) -> Vec<Complex64> {
        let g = &c.group;
        let s = rational::to_f64(&self.scale_sq[a]).sqrt();
        (0..g.order())
            .map(|x| match self.phase_index(g, a, x) {
                Some(k) => c.dual.roots()[k as usize] * s,
                None => Complex64::zero(),
            })
            .collect()
    }

    /// Coefficients `⟨f, ψ_a⟩`.
    pub fn expand(&self, c: &Carrier, f: &[Complex64]) -> Vec<Complex64> {
        par::map_range(self.len(), |a| {
            dual_fourier::inner(f, &self.function(c, a), self.weight)
        })
    }

    /// `Σ_a coeffs[a] ψ_a`.
    pub fn reconstruct(&self, c: &Carrier, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); c.group.order()];
        for (a, &w) in coeffs.iter().enumerate() {
            if w.norm() == 0.0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.function(c, a)) {
                *o += w * v;
            }
        }
        out
    }

    /// Closed-form spectral transform
    /// `μ(B(r+1))^{1/2} conj ξ(z) χ[Φ̂_j(d−r)](ξ)` of basis function `a`.
    pub fn transform_closed(&self, c: &Carrier, a: usize) -> Vec<Complex64> {
        let g = &c.group;
        let h = c.hat();
        let d = g.depth();
        match self.labels[a] {
            WaveletLabel::Constant => {
                let v = rational::to_f64(&g.mu_total()).sqrt();
                (0..h.order())
                    .map(|e| if e == 0 { Complex64::new(v, 0.0) } else { Complex64::zero() })
                    .collect()
            }
            WaveletLabel::Haar { r, j, z } => {
                let v = rational::to_f64(&g.mu_ball(r + 1)).sqrt();
                (0..h.order())
                    .map(|e| {
                        if h.block_of(e) == (d - r, j) {
                            c.dual.value(g, e, z).conj() * v
                        } else {
                            Complex64::zero()
                        }
                    })
                    .collect()
            }
        }
    }
}

fn max_abs(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Gram matrix against the identity: exact for off-diagonal entries via
/// cyclotomic reduction of phase histograms, and numerically.
pub fn gram_check(c: &Carrier, basis: &WaveletBasis, tol: f64) -> Check {
    let g = &c.group;
    let n = basis.exponent as usize;
    let supports: Vec<Vec<usize>> = (0..basis.len()).map(|a| basis.support(g, a)).collect();
    let funcs: Vec<Vec<Complex64>> = (0..basis.len()).map(|a| basis.function(c, a)).collect();
    let rows = par::map_range(basis.len(), |a| {
        let mut dev: f64 = 0.0;
        let mut exact_fail = None;
        let diag = &(g.mu_count(supports[a].len()) * &basis.scale_sq[a]);
        if !diag.is_one() {
            exact_fail = Some(format!("<psi_{a}, psi_{a}> = {}", rational::fmt(diag)));
        }
        for b in 0..basis.len() {
            let ip = dual_fourier::inner(&funcs[a], &funcs[b], basis.weight);
            let want = if a == b { 1.0 } else { 0.0 };
            dev = dev.max((ip - want).norm());
            if b > a && exact_fail.is_none() {
                let (small, other) = if supports[a].len() <= supports[b].len() { (a, b) } else { (b, a) };
                let mut hist = vec![0i128; n];
                let mut any = false;
                for &x in &supports[small] {
                    if let Some(k2) = basis.phase_index(g, other, x) {
                        let k1 = basis.phase_index(g, small, x).expect("in support");
                        hist[((k1 + n as u64 - k2) % n as u64) as usize] += 1;
                        any = true;
                    }
                }
                if any && !phase::int_sum_is_zero(basis.exponent, &hist) {
                    exact_fail = Some(format!("<psi_{a}, psi_{b}> != 0"));
                }
            }
        }
        (dev, exact_fail)
    });
    let dev = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let fails: Vec<String> = rows.into_iter().filter_map(|r| r.1).collect();
    let mut ch = Check::numeric("wavelet.gram", dev, tol, format!("{} functions", basis.len()));
    if !fails.is_empty() {
        ch.passed = false;
        ch.detail = fails[0].clone();
    }
    ch
}

/// Projector algebra: `Σ_r Δ_r = I`, `Δ_r Δ_s = δ_{rs} Δ_r` exactly,
/// `Σ_j Δ_{r,j} = Δ_r`, `Δ_{r,j} Δ_{s,k} = δ Δ_{r,j}` and Hermitian kernels.
pub fn projector_checks(c: &Carrier, tol: f64) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let deltas: Vec<KernelOperator> = (0..=d).map(|r| delta(g, r)).collect::<Result<_>>()?;
    let mut f = Vec::new();
    let mut total = vec![Rational::zero(); g.order()];
    for (r, dr) in deltas.iter().enumerate() {
        let k = dr.kernel.as_rational()?;
        for (t, v) in total.iter_mut().zip(k) {
            *t += v;
        }
        if (0..g.order()).any(|u| k[u] != k[g.neg(u)]) {
            f.push(format!("Delta_{r} not symmetric"));
        }
        for (s, ds) in deltas.iter().enumerate() {
            let prod = dr.compose(g, ds)?;
            let want = if r == s { dr.kernel.clone() } else { GroupFunction::Rational(vec![Rational::zero(); g.order()]) };
            if prod.kernel != want {
                f.push(format!("Delta_{r} Delta_{s}"));
            }
        }
    }
    let mut ident = vec![Rational::zero(); g.order()];
    ident[0] = rational::int(1) / g.mu_point();
    if total != ident {
        f.push("sum of Delta_r is not the identity".into());
    }
    let exact = Check::from_failures("lp.projectors_exact", &f, (d + 1) * (d + 1) + 1);

    let mut dev: f64 = 0.0;
    let mut labels = Vec::new();
    let mut ops = Vec::new();
    for (r, dr) in deltas.iter().enumerate().take(d) {
        let n = g.n(r + 1)? as usize;
        let mut sum = vec![Complex64::zero(); g.order()];
        for j in 1..n {
            let op = delta_rj(c, r, j)?;
            let k = op.kernel.to_complex();
            for u in 0..g.order() {
                dev = dev.max((k[g.neg(u)] - k[u].conj()).norm());
                sum[u] += k[u];
            }
            labels.push((r, j));
            ops.push(op);
        }
        dev = dev.max(max_abs(&sum, &dr.kernel.to_complex()));
    }
    if g.order() <= 64 {
        for (a, oa) in ops.iter().enumerate() {
            for (b, ob) in ops.iter().enumerate() {
                let p = oa.compose(g, ob)?.kernel.to_complex();
                let want = if a == b { oa.kernel.to_complex() } else { vec![Complex64::zero(); g.order()] };
                dev = dev.max(max_abs(&p, &want));
            }
        }
    }
    let numeric = Check::numeric("lp.projectors_refined", dev, tol, format!("{} operators", ops.len()));
    Ok(vec![exact, numeric])
}

/// `Δ_r(x, y) = q_{d−r}(a)` for `(x, y) ∈ R_a` of the metric scheme and
/// `Δ_{r,j}(x, y) = q_{(d−r, j)}(a, i)` for the block scheme, both exactly
/// from the kernels, and `Δ_{r,j}(x, y) = Σ_z ψ_{r,j,z}(x) conj ψ_{r,j,z}(y)`
/// over the full grid.
pub fn kernel_eigenvalue_check(c: &Carrier, basis: &WaveletBasis, tol: f64) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let qm = metric_scheme::q_closed(c);
    let mut f = Vec::new();
    for r in 0..=d {
        let k = delta(g, r)?;
        let k = k.kernel.as_rational()?;
        for u in 0..g.order() {
            if k[u] != qm[d - r][g.radius(u)] {
                f.push(format!("Delta_{r} at {u}"));
                break;
            }
        }
    }
    let metric = Check::from_failures("lp.kernel_metric_q", &f, d + 1);

    let qb = ball_scheme::q_closed(c);
    let hi = BlockIndex::new(c.hat());
    let bi = BlockIndex::new(g);
    let labels = bi.element_labels(g);
    let mut dev: f64 = 0.0;
    for r in 0..d {
        for j in 1..g.n(r + 1)? as usize {
            let k = delta_rj(c, r, j)?.kernel.to_complex();
            let row = hi.id(d - r, j).expect("dual block");
            for u in 0..g.order() {
                dev = dev.max((k[u] - qb[row][labels[u] as usize].to_complex()).norm());
            }
        }
    }
    let block = Check::numeric("lp.kernel_block_q", dev, tol, "all kernels");

    let funcs: Vec<Vec<Complex64>> = (0..basis.len()).map(|a| basis.function(c, a)).collect();
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for (a, l) in basis.labels.iter().enumerate() {
        if let WaveletLabel::Haar { r, j, .. } = *l {
            groups.entry((r, j)).or_default().push(a);
        }
    }
    let mut gk: f64 = 0.0;
    for (&(r, j), members) in &groups {
        let k = delta_rj(c, r, j)?;
        let devs = par::map_range(g.order(), |x| {
            let mut m: f64 = 0.0;
            for y in 0..g.order() {
                let s: Complex64 = members.iter().map(|&a| funcs[a][x] * funcs[a][y].conj()).sum();
                m = m.max((s - k.entry(g, x, y)).norm());
            }
            m
        });
        gk = devs.into_iter().fold(gk, f64::max);
    }
    let grid = Check::numeric("lp.kernel_from_wavelets", gk, tol, format!("{} operators", groups.len()));
    Ok(vec![metric, block, grid])
}

/// Transforms of every basis function against the closed form, and the
/// uncertainty product `μ(supp)·μ̂(supp of transform) = 1` for every basis
/// function and every ball indicator.
pub fn transform_checks(c: &Carrier, basis: &WaveletBasis, tol: f64) -> Result<Vec<Check>> {
    let g = &c.group;
    let results = par::map_range(basis.len(), |a| -> Result<(f64, bool)> {
        let f = GroupFunction::Complex(basis.function(c, a));
        let t = dual_fourier::fourier_spectral(g, &c.dual, &f)?;
        let dev = max_abs(&t, &basis.transform_closed(c, a));
        let u = dual_fourier::uncertainty_product(g, &c.dual, &f, 1e-7)?;
        Ok((dev, u.is_one()))
    });
    let mut dev: f64 = 0.0;
    let mut unc = Vec::new();
    for (a, r) in results.into_iter().enumerate() {
        let (d, ok) = r?;
        dev = dev.max(d);
        if !ok {
            unc.push(format!("psi_{a}"));
        }
    }
    for r in 0..=g.depth() {
        let f = GroupFunction::Rational(dual_fourier::indicator(g.order(), g.ball(r)));
        if !dual_fourier::uncertainty_product(g, &c.dual, &f, 1e-7)?.is_one() {
            unc.push(format!("B({r})"));
        }
    }
    Ok(vec![
        Check::numeric("wavelet.transform", dev, tol, format!("{} functions", basis.len())),
        Check::from_failures("wavelet.uncertainty", &unc, basis.len() + g.depth() + 1),
    ])
}

/// `reconstruct ∘ expand = id` and `Σ|⟨f, ψ⟩|² = ‖f‖²` for the given functions.
pub fn expansion_check(c: &Carrier, basis: &WaveletBasis, fs: &[Vec<Rational>], tol: f64) -> Check {
    let w = rational::to_f64(c.group.mu_point());
    let mut dev: f64 = 0.0;
    for f in fs {
        let fc: Vec<Complex64> = f.iter().map(|v| Complex64::new(rational::to_f64(v), 0.0)).collect();
        let a = basis.expand(c, &fc);
        dev = dev.max(max_abs(&basis.reconstruct(c, &a), &fc));
        let energy: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let norm: f64 = fc.iter().map(|z| z.norm_sqr()).sum::<f64>() * w;
        dev = dev.max((energy - norm).abs());
    }
    Check::numeric("wavelet.expansion", dev, tol, format!("{} functions", fs.len()))
}

/// Range checks: the wavelets at radius `r` span the range of `Δ_r`
/// (`Δ_r ψ = ψ`, `Δ_s ψ = 0` for `s ≠ r`, and their count equals the trace
/// `k_r(0) μ(X)` of `Δ_r`).
pub fn span_check(c: &Carrier, basis: &WaveletBasis, tol: f64) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let deltas: Vec<KernelOperator> = (0..=d).map(|r| delta(g, r)).collect::<Result<_>>()?;
    let mut counts = vec![0usize; d + 1];
    let mut dev: f64 = 0.0;
    for (a, l) in basis.labels.iter().enumerate() {
        let r = match *l {
            WaveletLabel::Haar { r, .. } => r,
            WaveletLabel::Constant => d,
        };
        counts[r] += 1;
        let f = basis.function(c, a);
        for (s, ds) in deltas.iter().enumerate() {
            let img = ds.apply_complex(g, &f)?;
            let want = if s == r { f.clone() } else { vec![Complex64::zero(); g.order()] };
            dev = dev.max(max_abs(&img, &want));
        }
    }
    let mut f = Vec::new();
    for (r, dr) in deltas.iter().enumerate() {
        let trace = &dr.kernel.as_rational()?[0] * g.mu_total();
        if trace != rational::uint(counts[r] as u64) {
            f.push(format!("radius {r}: {} functions, trace {}", counts[r], rational::fmt(&trace)));
        }
    }
    if basis.len() != g.order() {
        f.push(format!("{} functions for {} points", basis.len(), g.order()));
    }
    Ok(vec![
        Check::numeric("wavelet.span", dev, tol, format!("{} functions", basis.len())),
        Check::from_failures("wavelet.count", &f, d + 2),
    ])
}

/// Multiresolution: `E_r E_s = E_{max(r,s)}`, `E_0 = I`, `E_d` is constant,
/// and the averaging matches convolution with its kernel.
pub fn multiresolution_check(g: &ChainedGroup, f: &[Rational]) -> Result<Check> {
    let d = g.depth();
    let mut fails = Vec::new();
    let e: Vec<Vec<Rational>> = (0..=d).map(|r| averaging(g, r, f)).collect::<Result<_>>()?;
    for r in 0..=d {
        if dual_fourier::convolve(g, &averaging_kernel(g, r)?, f)? != e[r] {
            fails.push(format!("E_{r} convolution form"));
        }
        for s in 0..=d {
            if averaging(g, r, &e[s])? != e[r.max(s)] {
                fails.push(format!("E_{r} E_{s}"));
            }
        }
    }
    if e[0] != f {
        fails.push("E_0 is not the identity".into());
    }
    if e[d].iter().any(|v| v != &e[d][0]) {
        fails.push("E_d is not constant".into());
    }
    Ok(Check::from_failures("lp.multiresolution", &fails, (d + 1) * (d + 2) + 2))
}

/// Exact martingale quantities for a rational function.
#[derive(Debug, Clone)]
pub struct MartingaleSeq {
    /// `f_j = E_{d−j}(f − mean)`, `j = 0..=d`; `f_0 = 0` and `f_d = f − mean`.
    pub f: Vec<Vec<Rational>>,
    /// `Δf_0 = f_0` and `Δf_j = f_j − f_{j−1}`.
    pub differences: Vec<Vec<Rational>>,
}

impl MartingaleSeq {
    /// Doob sequence of `f` after subtracting its mean.
    pub fn new(g: &ChainedGroup, f: &[Rational]) -> Result<MartingaleSeq> {
        let d = g.depth();
        let mean = averaging(g, d, f)?;
        let centered: Vec<Rational> = f.iter().zip(&mean).map(|(a, b)| a - b).collect();
        let seq: Vec<Vec<Rational>> = (0..=d).map(|j| averaging(g, d - j, &centered)).collect::<Result<_>>()?;
        let mut differences = vec![seq[0].clone()];
        for j in 1..=d {
            differences.push(seq[j].iter().zip(&seq[j - 1]).map(|(a, b)| a - b).collect());
        }
        Ok(MartingaleSeq { f: seq, differences })
    }

    /// Quadratic variation `[f]_J = Σ_{j ≤ J} (Δf_j)²`.
    pub fn quadratic_variation(&self, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.f[0].len()];
        for df in &self.differences[..=j] {
            for (o, v) in out.iter_mut().zip(df) {
                *o += v * v;
            }
        }
        out
    }
}

/// Coset sums of `f` over `B(r)` scaled by `|X|/|B(r)|`, i.e. `|X|·E_r` on
/// integer data, exact because `|B(r)|` divides `|X|`.
fn averaging_lifted(g: &ChainedGroup, r: usize, f: &[BigInt]) -> Vec<BigInt> {
    let ball = g.ball(r);
    let factor = BigInt::from(g.order() / ball.len());
    let mut out: Vec<Option<BigInt>> = vec![None; g.order()];
    for x in 0..g.order() {
        if out[x].is_none() {
            let s: BigInt = ball.iter().map(|&b| &f[g.add(x, b)]).sum::<BigInt>() * &factor;
            for &b in ball {
                out[g.add(x, b)] = Some(s.clone());
            }
        }
    }
    out.into_iter().map(|v| v.expect("every coset visited")).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn diff(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `s·f` with `s = |X|·lcm(denominators)`, so that `s·f` and every
/// `|X|·E_r(s·f)` are integers.
fn lift(g: &ChainedGroup, f: &[Rational]) -> (Rational, Vec<BigInt>) {
    let l = f.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let scale = Rational::from_integer(l * BigInt::from(g.order()));
    let lifted = f.iter().map(|v| (v * &scale).to_integer()).collect();
    (scale, lifted)
}

/// Martingale identities for `f` on a probability space: `E_j f_i = f_j`
/// (`i ≥ j`), uncorrelated differences, `E(Δf_j)² = E f_j² − E f_{j−1}²`,
/// `E[f]_J = E f_J²` for every `J`, and `Σ_r ‖Δ_r f‖² = ‖f‖²`.
///
/// Every identity is homogeneous, so they are checked exactly on the integer
/// lift `|X|^k·s·f` of `f`; the lifted sequence is compared against
/// [`MartingaleSeq`].
pub fn martingale_suite(g: &ChainedGroup, f: &[Rational]) -> Result<Vec<Check>> {
    if !g.mu_total().is_one() || g.is_windowed() {
        return Err(Error::Unsupported("a compact chain in probability normalization"));
    }
    if f.len() != g.order() {
        return Err(Error::Length {
            expected: g.order(),
            got: f.len(),
        });
    }
    let d = g.depth();
    let n = BigInt::from(g.order());
    let (scale, lifted) = lift(g, f);
    let mean = averaging_lifted(g, d, &lifted);
    let centered: Vec<BigInt> = lifted.iter().zip(&mean).map(|(a, m)| a * &n - m).collect();
    let seq: Vec<Vec<BigInt>> = (0..=d).map(|j| averaging_lifted(g, d - j, &centered)).collect();
    let mut differences = vec![seq[0].clone()];
    for j in 1..=d {
        differences.push(diff(&seq[j], &seq[j - 1]));
    }

    let rational_seq = MartingaleSeq::new(g, f)?;
    let to_rat = scale * Rational::from_integer(&n * &n);
    let mut lift_fails = Vec::new();
    for (j, (a, b)) in rational_seq.f.iter().zip(&seq).enumerate() {
        if a.iter().zip(b).any(|(x, y)| x * &to_rat != Rational::from_integer(y.clone())) {
            lift_fails.push(format!("f_{j}"));
        }
    }

    let mut mp = Vec::new();
    for j in 0..=d {
        for i in j..=d {
            let e = averaging_lifted(g, d - j, &seq[i]);
            if e.iter().zip(&seq[j]).any(|(a, b)| a != &(b * &n)) {
                mp.push(format!("E_{j} f_{i}"));
            }
        }
    }
    let mut ll1 = Vec::new();
    let mut ll2 = Vec::new();
    for i in 0..=d {
        for j in i + 1..=d {
            if !dot(&differences[i], &differences[j]).is_zero() {
                ll1.push(format!("({i},{j})"));
            }
        }
        if i >= 1 {
            let lhs = dot(&differences[i], &differences[i]);
            let rhs = dot(&seq[i], &seq[i]) - dot(&seq[i - 1], &seq[i - 1]);
            if lhs != rhs {
                ll2.push(format!("j={i}"));
            }
        }
    }
    let mut levi = Vec::new();
    let mut variation = BigInt::zero();
    for j in 0..=d {
        variation += dot(&differences[j], &differences[j]);
        if variation != dot(&seq[j], &seq[j]) {
            levi.push(format!("J={j}"));
        }
    }
    let mut parseval = Vec::new();
    let e: Vec<Vec<BigInt>> = (0..=d).map(|r| averaging_lifted(g, r, &lifted)).collect();
    let mut total = dot(&e[d], &e[d]);
    for r in 0..d {
        let df = diff(&e[r], &e[r + 1]);
        total += dot(&df, &df);
    }
    if total != dot(&lifted, &lifted) * &n * &n {
        parseval.push("sum of squared projections".into());
    }
    Ok(vec![
        Check::from_failures("martingale.lift", &lift_fails, d + 1),
        Check::from_failures("martingale.property", &mp, (d + 1) * (d + 2) / 2),
        Check::from_failures("martingale.uncorrelated", &ll1, d * (d + 1) / 2),
        Check::from_failures("martingale.increment_energy", &ll2, d),
        Check::from_failures("martingale.levi", &levi, d + 1),
        Check::from_failures("lp.parseval", &parseval, 1),
    ])
}

/// Seeded random rational function with small numerators and denominators.
pub fn random_rational_function(size: usize, rng: &mut impl rand::Rng) -> Vec<Rational> {
    (0..size)
        .map(|_| rational::ratio(rng.random_range(-12..=12), rng.random_range(1..=7)))
        .collect()
}

/// All wavelet and projector checks with `samples` seeded random functions.
pub fn verify(c: &Carrier, tol: f64, seed: u64, samples: usize) -> Result<Vec<Check>> {
    use rand::SeedableRng;
    let g = &c.group;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<Vec<Rational>> = (0..samples).map(|_| random_rational_function(g.order(), &mut rng)).collect();
    let basis = wavelet_basis(c)?;
    let mut checks = vec![gram_check(c, &basis, tol)];
    checks.extend(projector_checks(c, tol)?);
    checks.extend(kernel_eigenvalue_check(c, &basis, tol)?);
    checks.extend(transform_checks(c, &basis, tol)?);
    checks.extend(span_check(c, &basis, tol)?);
    checks.push(expansion_check(c, &basis, &fs, tol));
    for f in &fs {
        checks.push(multiresolution_check(g, f)?);
    }
    if g.mu_total().is_one() && !g.is_windowed() {
        for f in &fs {
            checks.extend(martingale_suite(g, f)?);
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn z4_average_of_point() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 2)).unwrap();
        let f = dual_fourier::indicator(4, &[1]);
        let e = averaging(&g, 1, &f).unwrap();
        assert_eq!(e, vec![rational::int(0), rational::ratio(1, 2), rational::int(0), rational::ratio(1, 2)]);
    }

    #[test]
    fn walsh_basis_on_z2_squared() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 2])).unwrap();
        let b = wavelet_basis(&c).unwrap();
        assert_eq!(b.len(), 4);
        assert!(gram_check(&c, &b, 1e-12).passed);
    }

    #[test]
    fn constant_has_no_variation() {
        let g = ChainedGroup::build(&GroupSpec::padic(3, 2)).unwrap();
        let f = vec![rational::ratio(5, 3); 9];
        let m = MartingaleSeq::new(&g, &f).unwrap();
        assert!(m.quadratic_variation(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn full_suite_on_mixed_radix() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 3, 2])).unwrap();
        for ch in verify(&c, 1e-9, 7, 3).unwrap() {
            assert!(ch.passed, "{ch:?}");
        }
    }

    #[test]
    fn delta_rj_rejects_outer_radius() {
        let c = Carrier::build(&GroupSpec::padic(2, 2)).unwrap();
        assert!(matches!(delta_rj(&c, 2, 1), Err(Error::BoundaryRadius { .. })));
    }
}
