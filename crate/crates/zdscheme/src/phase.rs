//! Roots of unity and exact arithmetic in cyclotomic fields.
//!
//! Character values of a finite Abelian group are roots of unity whose
//! phases are rationals mod 1. Single-phase scalars are held as
//! [`Phased`]; sums of phased terms are held as [`CycloSum`], an element of
//! `Q(ζ_n)` that can be reduced modulo the cyclotomic polynomial `Φ_n` to
//! a canonical form, so equality and rationality are decided exactly.

use crate::rational::{self, Rational};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// A rational number `num/den` in `[0, 1)`, denoting `exp(2πi·num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    /// The trivial phase `0`.
    pub const ZERO: Phase = Phase { num: 0, den: 1 };
    /// The phase `1/2`, i.e. the root `−1`.
    pub const HALF: Phase = Phase { num: 1, den: 2 };

    /// Phase `k/n` reduced mod 1.
    pub fn new(k: i64, n: u64) -> Phase {
        assert!(n > 0, "phase denominator must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        Phase {
            num: k / g,
            den: n / g,
        }
    }

    /// Numerator in lowest terms.
    pub fn num(&self) -> u64 {
        self.num
    }

    /// Denominator in lowest terms.
    pub fn den(&self) -> u64 {
        self.den
    }

    /// Phase of the complex conjugate.
    pub fn conj(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }

    /// Numerator of this phase over the denominator `n`; `None` if `den ∤ n`.
    pub fn over(self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.den).then(|| self.num * (n / self.den))
    }

    /// The root of unity as a complex double.
    pub fn to_complex(self) -> Complex64 {
        let a = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        Complex64::new(a.cos(), a.sin())
    }

    /// True for the real roots `±1`.
    pub fn is_real(self) -> bool {
        self.den <= 2
    }
}

impl std::ops::Add for Phase {
    type Output = Phase;

    /// Phase of the product of the two roots.
    fn add(self, o: Phase) -> Phase {
        let l = self.den.lcm(&o.den);
        Phase::new((self.num * (l / self.den) + o.num * (l / o.den)) as i64, l)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A rational magnitude times a root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phased {
    /// Real coefficient; may be negative.
    pub mag: Rational,
    /// Root-of-unity phase.
    pub phase: Phase,
}

impl Phased {
    /// A real rational scalar.
    pub fn real(mag: Rational) -> Phased {
        Phased {
            mag,
            phase: Phase::ZERO,
        }
    }

    /// Magnitude times root.
    pub fn new(mag: Rational, phase: Phase) -> Phased {
        Phased { mag, phase }.normalized()
    }

    /// Canonical form: nonnegative magnitude, zero carries phase `0`.
    pub fn normalized(self) -> Phased {
        if self.mag.is_zero() {
            Phased::real(self.mag)
        } else if self.mag.is_negative() {
            Phased {
                mag: -self.mag,
                phase: self.phase + Phase::HALF,
            }
        } else {
            self
        }
    }

    /// Product of two phased scalars.
    pub fn mul(&self, o: &Phased) -> Phased {
        Phased::new(&self.mag * &o.mag, self.phase + o.phase)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Phased {
        Phased::new(self.mag.clone(), self.phase.conj())
    }

    /// Exact rational value when the phase is `0` or `1/2`.
    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.clone().normalized();
        if n.phase == Phase::ZERO {
            Some(n.mag)
        } else if n.phase == Phase::HALF {
            Some(-n.mag)
        } else {
            None
        }
    }

    /// Complex double value.
    pub fn to_complex(&self) -> Complex64 {
        self.phase.to_complex() * rational::to_f64(&self.mag)
    }
}

/// One exported term `magnitude · exp(2πi·phase)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    /// Nonnegative magnitude as `p/q`.
    pub magnitude: String,
    /// Phase as `a/b`.
    pub phase: String,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i128>> {
    assert!(n > 0);
    if let Some(p) = cyclotomic_cache().lock().expect("cache").get(&n) {
        return p.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = poly_div_exact(&num, &div);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache()
        .lock()
        .expect("cache")
        .insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i128; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Degree of `Φ_n`, i.e. Euler's totient of `n`.
pub fn totient(n: u64) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// True when `Σ_k c_k ζ_n^k = 0` for integer coefficients `c` (length `n`).
pub fn int_sum_is_zero(n: u64, coeffs: &[i128]) -> bool {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut a = coeffs.to_vec();
    for k in (deg..a.len()).rev() {
        let c = a[k];
        if c != 0 {
            for (i, &pi) in phi.iter().enumerate() {
                a[k - deg + i] -= c * pi;
            }
        }
    }
    a[..deg].iter().all(|&x| x == 0)
}

/// Value of `Σ_k c_k ζ_n^k` when it is an integer, else `None`.
pub fn int_sum_value(n: u64, coeffs: &[i128]) -> Option<i128> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut a = coeffs.to_vec();
    for k in (deg..a.len()).rev() {
        let c = a[k];
        if c != 0 {
            for (i, &pi) in phi.iter().enumerate() {
                a[k - deg + i] -= c * pi;
            }
        }
    }
    a[1..deg].iter().all(|&x| x == 0).then_some(a[0])
}

/// An element `Σ_k c_k ζ_n^k` of the cyclotomic field `Q(ζ_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloSum {
    n: u64,
    coeffs: Vec<Rational>,
}

impl CycloSum {
    /// Zero of `Q(ζ_n)`.
    pub fn zero(n: u64) -> CycloSum {
        assert!(n > 0);
        CycloSum {
            n,
            coeffs: vec![Rational::zero(); n as usize],
        }
    }

    /// Embeds a rational.
    pub fn from_rational(n: u64, r: Rational) -> CycloSum {
        let mut s = CycloSum::zero(n);
        s.coeffs[0] = r;
        s
    }

    /// `scale · Σ_k h_k ζ_n^k` for an integer histogram `h` of length `n`.
    pub fn from_histogram(n: u64, hist: &[i128], scale: &Rational) -> CycloSum {
        let mut s = CycloSum::zero(n);
        for (c, &h) in s.coeffs.iter_mut().zip(hist) {
            if h != 0 {
                *c = scale * Rational::from_integer(h.into());
            }
        }
        s
    }

    /// Embeds a phased scalar; its phase denominator must divide `n`.
    pub fn from_phased(n: u64, p: &Phased) -> CycloSum {
        let mut s = CycloSum::zero(n);
        s.add_phased(p);
        s
    }

    /// Conductor `n`.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Adds `mag · ζ^phase` in place.
    pub fn add_term(&mut self, mag: &Rational, phase: Phase) {
        let k = phase
            .over(self.n)
            .unwrap_or_else(|| panic!("phase {phase} not in Q(zeta_{})", self.n));
        self.coeffs[k as usize] += mag;
    }

    /// Adds a phased scalar in place.
    pub fn add_phased(&mut self, p: &Phased) {
        self.add_term(&p.mag, p.phase);
    }

    /// Adds another element in place.
    pub fn add_assign(&mut self, o: &CycloSum) {
        assert_eq!(self.n, o.n);
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    /// Adds `s · p` in place.
    pub fn add_mul_phased(&mut self, s: &CycloSum, p: &Phased) {
        assert_eq!(self.n, s.n);
        let n = self.n as usize;
        let shift = p
            .phase
            .over(self.n)
            .unwrap_or_else(|| panic!("phase {} not in Q(zeta_{})", p.phase, self.n)) as usize;
        for (k, c) in s.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.coeffs[(k + shift) % n] += c * &p.mag;
            }
        }
    }

    /// Difference.
    pub fn sub(&self, o: &CycloSum) -> CycloSum {
        assert_eq!(self.n, o.n);
        CycloSum {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Product with a rational.
    pub fn scale(&self, r: &Rational) -> CycloSum {
        CycloSum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Product in `Q(ζ_n)`.
    pub fn mul(&self, o: &CycloSum) -> CycloSum {
        assert_eq!(self.n, o.n);
        let n = self.n as usize;
        let mut out = CycloSum::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycloSum {
        let n = self.n as usize;
        let mut out = CycloSum::zero(self.n);
        for (k, a) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - k) % n] += a;
        }
        out
    }

    /// Canonical coefficients in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
    pub fn reduced(&self) -> Vec<Rational> {
        let phi = cyclotomic_poly(self.n);
        let deg = phi.len() - 1;
        let mut a = self.coeffs.clone();
        for k in (deg..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let c = a[k].clone();
            for (i, &pi) in phi.iter().enumerate() {
                if pi != 0 {
                    a[k - deg + i] -= &c * rational::int(pi as i64);
                }
            }
        }
        a.truncate(deg);
        a
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// Exact equality in the field.
    pub fn equals(&self, o: &CycloSum) -> bool {
        self.sub(o).is_zero()
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        let r = self.reduced();
        if r.iter().skip(1).all(Zero::is_zero) {
            Some(r.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// True when no term with a non-real phase is present.
    pub fn is_phase_free(&self) -> bool {
        let n = self.n as usize;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k == 0 || 2 * k == n)
    }

    /// Complex double value.
    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Phase::new(k as i64, self.n).to_complex() * rational::to_f64(c))
            .sum()
    }

    /// Nonzero terms with nonnegative magnitudes, phases ascending.
    pub fn terms(&self) -> Vec<Phased> {
        if let Some(r) = self.as_rational() {
            return if r.is_zero() {
                vec![]
            } else {
                vec![Phased::new(r, Phase::ZERO)]
            };
        }
        let mut out: Vec<Phased> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = Phased::new(c.clone(), Phase::new(k as i64, self.n));
            match out.iter_mut().find(|t| t.phase == p.phase) {
                Some(t) => t.mag += p.mag,
                None => out.push(p),
            }
        }
        out.retain(|t| !t.mag.is_zero());
        out.sort_by_key(|t| t.phase);
        out
    }

    /// Terms formatted for export.
    pub fn export_terms(&self) -> Vec<Term> {
        self.terms()
            .into_iter()
            .map(|t| Term {
                magnitude: rational::fmt(&t.mag),
                phase: t.phase.to_string(),
            })
            .collect()
    }
}

impl Phased {
    /// Export form.
    pub fn export_term(&self) -> Term {
        let n = self.clone().normalized();
        Term {
            magnitude: rational::fmt(&n.mag),
            phase: n.phase.to_string(),
        }
    }
}
