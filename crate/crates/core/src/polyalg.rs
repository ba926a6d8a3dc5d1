//! Exact polynomial symbols of constant-coefficient operators `A(∇)`.
//!
//! A symbol is a triple of polynomials with rational coefficients. It defines
//! an operator acting on Fourier modes by multiplication with `P(ik)`. Only
//! symbols with `x·P(x) ≡ 0` are admitted; that identity is certified by
//! expanding `x₁p₁ + x₂p₂ + x₃p₃` and checking every coefficient cancels, so
//! no tolerance is involved anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wavevector::Wavevector;

pub type Exponents = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exponents: Exponents,
    pub coefficient: BigRational,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if vars.is_empty() {
            return write!(f, "{}", self.coefficient);
        }
        let body = vars.join("*");
        if self.coefficient.is_one() {
            write!(f, "{body}")
        } else if (-self.coefficient.clone()).is_one() {
            write!(f, "-{body}")
        } else {
            write!(f, "{}*{body}", self.coefficient)
        }
    }
}

/// A polynomial in `x₁, x₂, x₃` with exact rational coefficients, kept in
/// canonical form (no zero coefficients stored).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exponents: Exponents, coefficient: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponents, coefficient);
        }
        Polynomial { terms }
    }

    /// The coordinate `x_{axis+1}`.
    pub fn variable(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Self::monomial(e, BigRational::one())
    }

    /// Sums like terms; zero results are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponents: Exponents, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(BigRational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial { exponents: *e, coefficient: c.clone() })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact value of `p(ik)`.
    pub fn eval_imaginary(&self, k: Wavevector) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut mag = c.clone();
            for (axis, &power) in e.iter().enumerate() {
                let base = BigInt::from(k.component(axis));
                mag *= BigRational::from_integer(num_traits::pow(base, power as usize));
            }
            // i^{|α|}
            match e.iter().sum::<u32>() % 4 {
                0 => acc.re += mag,
                1 => acc.im += mag,
                2 => acc.re -= mag,
                _ => acc.im -= mag,
            }
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `a + ib` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        GaussianRational { re: &self.re * s, im: &self.im * s }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// A symbol triple certified to satisfy `x·P(x) ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec {
    components: [Polynomial; 3],
}

impl PolyVec {
    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `e_axis × ∇`, e.g. axis 2 gives `(−∂₂, ∂₁, 0)`.
    pub fn unit_cross_nabla(axis: usize) -> Self {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        let mut comps = [Polynomial::zero(), Polynomial::zero(), Polynomial::zero()];
        comps[a] = -&Polynomial::variable(b);
        comps[b] = Polynomial::variable(a);
        PolyVec { components: comps }
    }

    /// `(x₂x₃, x₁x₃, −2x₁x₂)`, a second-order symbol orthogonal to `x`.
    pub fn saddle() -> Self {
        let one = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        PolyVec {
            components: [
                Polynomial::monomial([0, 1, 1], one.clone()),
                Polynomial::monomial([1, 0, 1], one),
                Polynomial::monomial([1, 1, 0], -two),
            ],
        }
    }

    pub fn to_records(&self) -> [Vec<SymbolTerm>; 3] {
        let conv = |p: &Polynomial| {
            p.terms()
                .map(|m| SymbolTerm {
                    exponents: m.exponents,
                    num: m.coefficient.numer().to_i64().unwrap_or(0),
                    den: m.coefficient.denom().to_i64().unwrap_or(1),
                })
                .collect()
        };
        [conv(&self.components[0]), conv(&self.components[1]), conv(&self.components[2])]
    }

    /// Builds and certifies a symbol from its serialized records, rejecting
    /// any component whose degree exceeds `max_degree`.
    pub fn from_records(records: &[Vec<SymbolTerm>; 3], max_degree: Option<u32>) -> Result<Self> {
        let mut comps = [Polynomial::zero(), Polynomial::zero(), Polynomial::zero()];
        for (comp, recs) in comps.iter_mut().zip(records) {
            for r in recs {
                if r.den == 0 {
                    return Err(Error::ZeroDenominator);
                }
                let degree: u64 = r.exponents.iter().map(|&e| u64::from(e)).sum();
                if let Some(cap) = max_degree {
                    if degree > u64::from(cap) {
                        return Err(Error::DegreeTooHigh { degree: degree.min(u64::from(u32::MAX)) as u32, cap });
                    }
                }
                let c = BigRational::new(BigInt::from(r.num), BigInt::from(r.den));
                comp.add_term(r.exponents, c);
            }
        }
        validate_orthogonal_symbol(comps)
    }
}

impl Add for &PolyVec {
    type Output = PolyVec;
    fn add(self, rhs: &PolyVec) -> PolyVec {
        // x·(P + Q) = x·P + x·Q ≡ 0, so the sum stays certified.
        PolyVec {
            components: [
                &self.components[0] + &rhs.components[0],
                &self.components[1] + &rhs.components[1],
                &self.components[2] + &rhs.components[2],
            ],
        }
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

/// One serialized symbol term: `num/den · x₁^e₁ x₂^e₂ x₃^e₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolTerm {
    pub exponents: Exponents,
    pub num: i64,
    #[serde(default = "one_i64")]
    pub den: i64,
}

fn one_i64() -> i64 {
    1
}

/// Certifies `x·p(x) ≡ 0` by exact expansion.
///
/// On failure the error names the first surviving monomial of `x·p` in
/// exponent order.
pub fn validate_orthogonal_symbol(p: [Polynomial; 3]) -> Result<PolyVec> {
    let dot = (0..3).fold(Polynomial::zero(), |acc, axis| &acc + &(&Polynomial::variable(axis) * &p[axis]));
    if let Some(m) = dot.terms().next() {
        return Err(Error::NotOrthogonal { residual: m.to_string() });
    }
    Ok(PolyVec { components: p })
}

pub fn eval_symbol_exact(a: &PolyVec, k: Wavevector) -> [GaussianRational; 3] {
    let c = &a.components;
    [c[0].eval_imaginary(k), c[1].eval_imaginary(k), c[2].eval_imaginary(k)]
}

/// `(p₁(ik), p₂(ik), p₃(ik))`, rounded to double only at the end.
pub fn eval_symbol(a: &PolyVec, k: Wavevector) -> [Complex64; 3] {
    let [x, y, z] = eval_symbol_exact(a, k);
    [x.to_complex(), y.to_complex(), z.to_complex()]
}

/// `k·A(ik)`, evaluated exactly.
pub fn orthogonality_at(a: &PolyVec, k: Wavevector) -> Complex64 {
    let vals = eval_symbol_exact(a, k);
    let mut acc = GaussianRational::zero();
    for (axis, v) in vals.iter().enumerate() {
        let kj = BigRational::from_integer(BigInt::from(k.component(axis)));
        acc = &acc + &v.scale(&kj);
    }
    acc.to_complex()
}
