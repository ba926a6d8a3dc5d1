//! Trigonometric polynomials on the 2π-periodic torus.
//!
//! Fields are sparse maps from wavevectors to complex coefficients. Every
//! linear operator here is a Fourier multiplier applied mode by mode, and
//! products are exact coefficient convolutions, so identities that hold
//! analytically hold here up to a few ulps of rounding.
//!
//! Coefficients smaller than `CANONICAL_RELATIVE` times the largest operand
//! coefficient are dropped after every operation. Real-valuedness is kept
//! exactly: each result is written for the upper half of wavevector space and
//! mirrored as `c(−k) = conj(c(k))`.

mod convolve;
pub mod grid;
pub mod io;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyalg::{eval_symbol, eval_symbol_exact, GaussianRational, PolyVec};
use crate::wavevector::Wavevector;

pub use grid::GridSample;

/// Relative threshold below which coefficients are treated as zero.
pub const CANONICAL_RELATIVE: f64 = 1e-14;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A real scalar trigonometric polynomial `f(x) = Σ c_k e^{ik·x}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScalarField {
    modes: BTreeMap<Wavevector, Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Sin,
    Cos,
}

impl ScalarField {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut modes = BTreeMap::new();
        if c != 0.0 {
            modes.insert(Wavevector::ZERO, Complex64::new(c, 0.0));
        }
        ScalarField { modes }
    }

    /// Validates caller-supplied coefficients: finite, within the wavenumber
    /// cap, and exactly Hermitian. Exact zeros are dropped.
    pub fn from_modes(modes: BTreeMap<Wavevector, Complex64>) -> Result<Self> {
        for (&k, c) in &modes {
            if !k.within_cap() {
                return Err(Error::WavenumberTooLarge(k));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite(k));
            }
        }
        for (&k, c) in &modes {
            let mirror = modes.get(&-k).copied().unwrap_or_else(Complex64::zero);
            if mirror != c.conj() {
                return Err(Error::NotHermitian(k));
            }
        }
        Ok(ScalarField { modes: modes.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Builds a field from upper-half coefficients, mirroring the rest.
    /// The zero mode keeps only its real part.
    pub fn from_upper_half<I: IntoIterator<Item = (Wavevector, Complex64)>>(half: I) -> Self {
        let mut modes = BTreeMap::new();
        for (k, c) in half {
            if k.is_zero() {
                modes.insert(k, Complex64::new(c.re, 0.0));
            } else if k.is_upper_half() {
                modes.insert(k, c);
                modes.insert(-k, c.conj());
            }
        }
        ScalarField { modes }.canonical(0.0)
    }

    /// `amplitude · sin(k·x)`.
    pub fn sin(k: Wavevector, amplitude: f64) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut modes = BTreeMap::new();
        modes.insert(k, Complex64::new(0.0, -amplitude / 2.0));
        modes.insert(-k, Complex64::new(0.0, amplitude / 2.0));
        ScalarField { modes }.canonical(0.0)
    }

    /// `amplitude · cos(k·x)`.
    pub fn cos(k: Wavevector, amplitude: f64) -> Self {
        if k.is_zero() {
            return Self::constant(amplitude);
        }
        let mut modes = BTreeMap::new();
        modes.insert(k, Complex64::new(amplitude / 2.0, 0.0));
        modes.insert(-k, Complex64::new(amplitude / 2.0, 0.0));
        ScalarField { modes }.canonical(0.0)
    }

    /// `amplitude · f₁(k₁x₁) f₂(k₂x₂) f₃(k₃x₃)` with each `f_j` a sine or cosine.
    pub fn trig_product(k: [u32; 3], factors: [Trig; 3], amplitude: f64) -> Self {
        // 1-D coefficient lists, tensored together.
        let mut terms: Vec<(Wavevector, Complex64)> = vec![(Wavevector::ZERO, Complex64::new(amplitude, 0.0))];
        for axis in 0..3 {
            let kk = k[axis] as i32;
            let one_d: Vec<(i32, Complex64)> = match (factors[axis], kk) {
                (Trig::Sin, 0) => return Self::zero(),
                (Trig::Cos, 0) => vec![(0, Complex64::new(1.0, 0.0))],
                (Trig::Sin, _) => vec![(kk, Complex64::new(0.0, -0.5)), (-kk, Complex64::new(0.0, 0.5))],
                (Trig::Cos, _) => vec![(kk, Complex64::new(0.5, 0.0)), (-kk, Complex64::new(0.5, 0.0))],
            };
            let mut next = Vec::with_capacity(terms.len() * one_d.len());
            for (kv, c) in &terms {
                for &(kj, cj) in &one_d {
                    let mut v = kv.0;
                    v[axis] = kj;
                    next.push((Wavevector(v), c * cj));
                }
            }
            terms = next;
        }
        let mut modes = BTreeMap::new();
        for (kv, c) in terms {
            *modes.entry(kv).or_insert_with(Complex64::zero) += c;
        }
        ScalarField { modes }.canonical(0.0)
    }

    pub fn modes(&self) -> &BTreeMap<Wavevector, Complex64> {
        &self.modes
    }

    pub fn coefficient(&self, k: Wavevector) -> Complex64 {
        self.modes.get(&k).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn max_coefficient(&self) -> f64 {
        self.modes.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `|k_j|` over stored modes.
    pub fn max_wavenumber(&self) -> i32 {
        self.modes.keys().map(|k| k.max_abs()).max().unwrap_or(0)
    }

    /// Largest Euclidean `|k|` over stored modes.
    pub fn max_k_norm(&self) -> f64 {
        self.modes.keys().map(|k| k.norm()).fold(0.0, f64::max)
    }

    /// Exact realness check: `c(−k) = conj(c(k))` bitwise.
    pub fn is_hermitian(&self) -> bool {
        self.modes.iter().all(|(&k, c)| self.modes.get(&-k) == Some(&c.conj()))
    }

    /// Spatial mean, i.e. the zero mode.
    pub fn mean(&self) -> f64 {
        self.coefficient(Wavevector::ZERO).re
    }

    /// Mean-square norm on the torus: `sqrt(Σ |c_k|²)`, so `‖sin x₁‖ = 1/√2`.
    pub fn l2_norm(&self) -> f64 {
        self.modes.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        ScalarField { modes: self.modes.iter().map(|(&k, &c)| (k, c * s)).collect() }.canonical(0.0)
    }

    pub fn without_mean(&self) -> Self {
        let mut out = self.clone();
        out.modes.remove(&Wavevector::ZERO);
        out
    }

    /// Multiplies each coefficient by `m(k)`; `m(−k)` must equal `conj(m(k))`.
    pub fn apply_multiplier<F: Fn(Wavevector) -> Complex64>(&self, m: F) -> Self {
        let scale = self.max_coefficient();
        let modes = self.modes.iter().map(|(&k, &c)| (k, m(k) * c)).collect();
        ScalarField { modes }.canonical(scale)
    }

    /// `f(x)` at a single point.
    pub fn eval_at(&self, x: [f64; 3]) -> f64 {
        self.modes
            .iter()
            .map(|(k, c)| {
                let kf = k.as_f64();
                let phase = kf[0] * x[0] + kf[1] * x[1] + kf[2] * x[2];
                c.re * phase.cos() - c.im * phase.sin()
            })
            .sum()
    }

    /// Drops coefficients below `CANONICAL_RELATIVE · scale` (and exact zeros).
    fn canonical(mut self, scale: f64) -> Self {
        let threshold = CANONICAL_RELATIVE * scale;
        self.modes.retain(|_, c| !c.is_zero() && c.norm() >= threshold);
        self
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let scale = self.max_coefficient().max(other.max_coefficient());
        let mut modes = self.modes.clone();
        for (&k, &c) in &other.modes {
            *modes.entry(k).or_insert_with(Complex64::zero) += c * sign;
        }
        ScalarField { modes }.canonical(scale)
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField { modes: self.modes.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

/// A real vector field with three trigonometric-polynomial components.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VectorField {
    components: [ScalarField; 3],
}

impl VectorField {
    pub fn new(components: [ScalarField; 3]) -> Self {
        VectorField { components }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[ScalarField; 3] {
        &self.components
    }

    pub fn component(&self, axis: usize) -> &ScalarField {
        &self.components[axis]
    }

    pub fn into_components(self) -> [ScalarField; 3] {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ScalarField::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.components.iter().all(ScalarField::is_hermitian)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.components.iter().map(ScalarField::max_coefficient).fold(0.0, f64::max)
    }

    pub fn max_wavenumber(&self) -> i32 {
        self.components.iter().map(ScalarField::max_wavenumber).max().unwrap_or(0)
    }

    pub fn max_k_norm(&self) -> f64 {
        self.components.iter().map(ScalarField::max_k_norm).fold(0.0, f64::max)
    }

    /// Mean-square norm: `sqrt(Σ_j Σ_k |û^j(k)|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.components.iter().map(|c| c.l2_norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        VectorField { components: self.components.clone().map(|c| c.scale(s)) }
    }

    /// Union of wavevectors present in any component.
    pub fn support(&self) -> Vec<Wavevector> {
        let mut ks: Vec<Wavevector> = self.components.iter().flat_map(|c| c.modes.keys().copied()).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// `û(k)` as a complex 3-vector.
    pub fn coefficient(&self, k: Wavevector) -> [Complex64; 3] {
        [self.components[0].coefficient(k), self.components[1].coefficient(k), self.components[2].coefficient(k)]
    }

    pub fn eval_at(&self, x: [f64; 3]) -> [f64; 3] {
        [self.components[0].eval_at(x), self.components[1].eval_at(x), self.components[2].eval_at(x)]
    }

    pub fn map<F: Fn(&ScalarField) -> ScalarField>(&self, f: F) -> Self {
        VectorField { components: [f(&self.components[0]), f(&self.components[1]), f(&self.components[2])] }
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: [
                &self.components[0] + &rhs.components[0],
                &self.components[1] + &rhs.components[1],
                &self.components[2] + &rhs.components[2],
            ],
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: [
                &self.components[0] - &rhs.components[0],
                &self.components[1] - &rhs.components[1],
                &self.components[2] - &rhs.components[2],
            ],
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.map(|c| -c)
    }
}

/// `∂f/∂x_{axis+1}`: multiplies `c_k` by `i·k_axis`.
pub fn derivative(f: &ScalarField, axis: usize) -> ScalarField {
    f.apply_multiplier(|k| I * f64::from(k.component(axis)))
}

/// `Δf`: multiplies `c_k` by `−|k|²`.
pub fn laplacian(f: &ScalarField) -> ScalarField {
    f.apply_multiplier(|k| Complex64::new(-(k.norm_sq() as f64), 0.0))
}

pub fn gradient(f: &ScalarField) -> VectorField {
    VectorField::new([derivative(f, 0), derivative(f, 1), derivative(f, 2)])
}

pub fn divergence(u: &VectorField) -> ScalarField {
    let [a, b, c] = u.components();
    let scale = u.max_coefficient();
    let mut modes: BTreeMap<Wavevector, Complex64> = BTreeMap::new();
    for k in u.support() {
        let kf = k.as_f64();
        let v = I * (a.coefficient(k) * kf[0] + b.coefficient(k) * kf[1] + c.coefficient(k) * kf[2]);
        modes.insert(k, v);
    }
    ScalarField { modes }.canonical(scale)
}

pub fn curl(u: &VectorField) -> VectorField {
    let [a, b, c] = u.components();
    VectorField::new([
        &derivative(c, 1) - &derivative(b, 2),
        &derivative(a, 2) - &derivative(c, 0),
        &derivative(b, 0) - &derivative(a, 1),
    ])
}

/// Applies a per-mode vector multiplier `f ↦ (m₁(k)c_k, m₂(k)c_k, m₃(k)c_k)`.
fn vector_multiplier<F: Fn(Wavevector) -> [Complex64; 3]>(f: &ScalarField, m: F) -> VectorField {
    let scale = f.max_coefficient();
    let mut comps: [BTreeMap<Wavevector, Complex64>; 3] = Default::default();
    for (&k, &c) in f.modes() {
        let mk = m(k);
        for axis in 0..3 {
            comps[axis].insert(k, mk[axis] * c);
        }
    }
    VectorField::new(comps.map(|modes| ScalarField { modes }.canonical(scale)))
}

/// `A(∇)f`: component `j` at mode `k` is `p_j(ik)·c_k`.
pub fn apply_operator(a: &PolyVec, f: &ScalarField) -> VectorField {
    vector_multiplier(f, |k| eval_symbol(a, k))
}

/// Exact symbol of `A(∇) × ∇` at `k`, i.e. `P(ik) × ik`.
pub fn cross_nabla_symbol(a: &PolyVec, k: Wavevector) -> [Complex64; 3] {
    let p = eval_symbol_exact(a, k);
    // (p × ik)_j with ik purely imaginary: multiply by i then by integer k.
    let times_ik = |g: &GaussianRational, kj: i32| -> GaussianRational {
        let kq = num_rational::BigRational::from_integer(num_bigint::BigInt::from(kj));
        GaussianRational { re: -(&g.im * &kq), im: &g.re * &kq }
    };
    let sub = |x: GaussianRational, y: GaussianRational| GaussianRational { re: x.re - y.re, im: x.im - y.im };
    let [k1, k2, k3] = k.0;
    [
        sub(times_ik(&p[1], k3), times_ik(&p[2], k2)).to_complex(),
        sub(times_ik(&p[2], k1), times_ik(&p[0], k3)).to_complex(),
        sub(times_ik(&p[0], k2), times_ik(&p[1], k1)).to_complex(),
    ]
}

/// `{A(∇)×∇}f = (a₂∂₃−a₃∂₂, a₃∂₁−a₁∂₃, a₁∂₂−a₂∂₁) f`.
pub fn cross_nabla_operator(a: &PolyVec, f: &ScalarField) -> VectorField {
    vector_multiplier(f, |k| cross_nabla_symbol(a, k))
}

/// Exact coefficient convolution: the product of two real trigonometric
/// polynomials, free of aliasing.
pub fn product(f: &ScalarField, g: &ScalarField) -> ScalarField {
    convolve::convolve(f, g)
}

/// The three stored off-diagonal fluxes `B_jk = u^j w^k − w^j u^k` for
/// `(j,k) ∈ {(2,1), (3,1), (3,2)}`. The rest follow from `B_jj = 0` and
/// `B_kj = −B_jk`.
#[derive(Clone, Debug, PartialEq)]
pub struct OffDiagonalFlux {
    pub b21: ScalarField,
    pub b31: ScalarField,
    pub b32: ScalarField,
}

fn flux(u: &VectorField, w: &VectorField, j: usize, k: usize) -> ScalarField {
    &product(u.component(j), w.component(k)) - &product(w.component(j), u.component(k))
}

pub fn off_diagonal_flux(u: &VectorField, w: &VectorField) -> OffDiagonalFlux {
    OffDiagonalFlux { b21: flux(u, w, 1, 0), b31: flux(u, w, 2, 0), b32: flux(u, w, 2, 1) }
}

/// Every entry `B_jk = u^j w^k − w^j u^k` computed directly (nine entries).
pub fn full_flux_matrix(u: &VectorField, w: &VectorField) -> [[ScalarField; 3]; 3] {
    std::array::from_fn(|j| std::array::from_fn(|k| flux(u, w, j, k)))
}

/// `(u·∇)w − (w·∇)u` in divergence form `Σ_j ∂_j(u^j w − w^j u)`, valid for
/// divergence-free `u` and `w`. Only three products pairs are formed.
pub fn commutator(u: &VectorField, w: &VectorField) -> VectorField {
    let OffDiagonalFlux { b21, b31, b32 } = off_diagonal_flux(u, w);
    VectorField::new([
        &derivative(&b21, 1) + &derivative(&b31, 2),
        &derivative(&b32, 2) - &derivative(&b21, 0),
        &(-&derivative(&b31, 0)) - &derivative(&b32, 1),
    ])
}

/// `(u·∇)v`, component `i` being `Σ_j u^j ∂_j v^i`.
pub fn advection(u: &VectorField, v: &VectorField) -> VectorField {
    let comp = |i: usize| {
        (0..3).fold(ScalarField::zero(), |acc, j| &acc + &product(u.component(j), &derivative(v.component(i), j)))
    };
    VectorField::new([comp(0), comp(1), comp(2)])
}

/// `u·v` pointwise, as a scalar trigonometric polynomial.
pub fn dot(u: &VectorField, v: &VectorField) -> ScalarField {
    (0..3).fold(ScalarField::zero(), |acc, j| &acc + &product(u.component(j), v.component(j)))
}
