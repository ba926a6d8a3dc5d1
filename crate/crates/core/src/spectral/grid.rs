//! Uniform grid sampling of trigonometric fields and the inverse map.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use num_traits::Zero;
use rustfft::{FftDirection, FftPlanner};

use super::{ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::wavevector::Wavevector;

/// Relative threshold used when reading coefficients back from samples.
pub const RECONSTRUCTION_RELATIVE: f64 = 1e-12;

/// Values of a scalar or vector field at `x = 2π(j₁, j₂, j₃)/N`.
///
/// `values[c]` holds component `c`, flattened with `j₃` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSample {
    pub n: usize,
    pub values: Vec<Vec<f64>>,
}

impl GridSample {
    pub fn points(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn coordinate(&self, index: usize) -> [f64; 3] {
        let n = self.n;
        let h = 2.0 * PI / n as f64;
        [(index / (n * n)) as f64 * h, ((index / n) % n) as f64 * h, (index % n) as f64 * h]
    }

    /// Largest pointwise magnitude (Euclidean over components).
    pub fn sup_norm(&self) -> f64 {
        (0..self.points()).map(|i| self.magnitude_at(i)).fold(0.0, f64::max)
    }

    /// Root mean square over the grid; equals the coefficient norm when the
    /// grid resolves the field.
    pub fn l2_norm(&self) -> f64 {
        let total: f64 = self.values.iter().flat_map(|v| v.iter()).map(|x| x * x).sum();
        (total / self.points() as f64).sqrt()
    }

    pub fn magnitude_at(&self, index: usize) -> f64 {
        self.values.iter().map(|v| v[index] * v[index]).sum::<f64>().sqrt()
    }

    /// CSV with header `x1,x2,x3,v1[,v2,v3]`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut header = String::from("x1,x2,x3");
        for c in 0..self.values.len() {
            header.push_str(&format!(",v{}", c + 1));
        }
        writeln!(w, "{header}")?;
        for i in 0..self.points() {
            let x = self.coordinate(i);
            write!(w, "{:.16e},{:.16e},{:.16e}", x[0], x[1], x[2])?;
            for v in &self.values {
                write!(w, ",{:.16e}", v[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn check_resolution(max_k: i32, n: usize) -> Result<()> {
    let required = 2 * max_k.max(0) as usize;
    if n <= required {
        return Err(Error::ResolutionTooLow { n, required });
    }
    Ok(())
}

/// Smallest resolution that resolves a field with the given maximum wavenumber.
pub fn minimal_resolution(max_k: i32) -> usize {
    2 * max_k.max(0) as usize + 1
}

fn fft3(buf: &mut [Complex64], n: usize, direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(n, direction);
    let mut line = vec![Complex64::zero(); n];
    let strides = [n * n, n, 1];
    for axis in 0..3 {
        let stride = strides[axis];
        let (s1, s2) = match axis {
            0 => (strides[1], strides[2]),
            1 => (strides[0], strides[2]),
            _ => (strides[0], strides[1]),
        };
        for a in 0..n {
            for b in 0..n {
                let base = a * s1 + b * s2;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = buf[base + j * stride];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    buf[base + j * stride] = *v;
                }
            }
        }
    }
}

fn synthesize(f: &ScalarField, n: usize) -> Vec<f64> {
    let mut buf = vec![Complex64::zero(); n * n * n];
    let wrap = |c: i32| c.rem_euclid(n as i32) as usize;
    for (k, &c) in f.modes() {
        buf[wrap(k.0[0]) * n * n + wrap(k.0[1]) * n + wrap(k.0[2])] += c;
    }
    fft3(&mut buf, n, FftDirection::Inverse);
    buf.into_iter().map(|c| c.re).collect()
}

pub fn sample_scalar(f: &ScalarField, n: usize) -> Result<GridSample> {
    check_resolution(f.max_wavenumber(), n)?;
    Ok(GridSample { n, values: vec![synthesize(f, n)] })
}

pub fn sample_vector(u: &VectorField, n: usize) -> Result<GridSample> {
    check_resolution(u.max_wavenumber(), n)?;
    Ok(GridSample { n, values: u.components().iter().map(|c| synthesize(c, n)).collect() })
}

/// Recovers the coefficients of component `component` from grid values.
pub fn reconstruct(sample: &GridSample, component: usize) -> ScalarField {
    let n = sample.n;
    let mut buf: Vec<Complex64> = sample.values[component].iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft3(&mut buf, n, FftDirection::Forward);
    let norm = (n * n * n) as f64;
    let unwrap = |i: usize| if i > n / 2 { i as i32 - n as i32 } else { i as i32 };
    let mut raw = BTreeMap::new();
    for (idx, c) in buf.iter().enumerate() {
        let k = Wavevector([unwrap(idx / (n * n)), unwrap((idx / n) % n), unwrap(idx % n)]);
        raw.insert(k, c / norm);
    }
    let scale = raw.values().map(|c| c.norm()).fold(0.0, f64::max);
    let threshold = RECONSTRUCTION_RELATIVE * scale;
    // Average each conjugate pair so the result is exactly Hermitian.
    let half = raw.iter().filter(|(k, _)| k.is_zero() || k.is_upper_half()).filter_map(|(&k, &c)| {
        let mirror = raw.get(&-k).copied().unwrap_or_else(Complex64::zero);
        let avg = (c + mirror.conj()) * 0.5;
        (avg.norm() >= threshold && !avg.is_zero()).then_some((k, avg))
    });
    ScalarField::from_upper_half(half.collect::<Vec<_>>())
}

/// Evaluates a field on the tensor grid `xs[0] × xs[1] × xs[2]`, `xs[2]` fastest.
pub fn eval_tensor_grid(f: &ScalarField, xs: [&[f64]; 3]) -> Vec<f64> {
    let total = xs[0].len() * xs[1].len() * xs[2].len();
    let mut out = vec![0.0; total];
    for (k, &c) in f.modes() {
        let phases: [Vec<Complex64>; 3] =
            std::array::from_fn(|a| xs[a].iter().map(|&x| Complex64::from_polar(1.0, f64::from(k.0[a]) * x)).collect());
        let mut idx = 0;
        for p0 in &phases[0] {
            let c0 = c * p0;
            for p1 in &phases[1] {
                let c01 = c0 * p1;
                for p2 in &phases[2] {
                    out[idx] += (c01 * p2).re;
                    idx += 1;
                }
            }
        }
    }
    out
}

/// Per-point Euclidean magnitude of a vector field on a tensor grid.
pub fn vector_magnitudes(u: &VectorField, xs: [&[f64]; 3]) -> Vec<f64> {
    let comps: Vec<Vec<f64>> = u.components().iter().map(|c| eval_tensor_grid(c, xs)).collect();
    (0..comps[0].len()).map(|i| comps.iter().map(|v| v[i] * v[i]).sum::<f64>().sqrt()).collect()
}

/// Sup norm of a scalar field on a uniform grid of `n` points per axis.
pub fn sup_norm_scalar(f: &ScalarField, n: usize) -> Result<f64> {
    Ok(sample_scalar(f, n)?.sup_norm())
}

/// Sup norm (pointwise Euclidean magnitude) of a vector field on a uniform grid.
pub fn sup_norm_vector(u: &VectorField, n: usize) -> Result<f64> {
    Ok(sample_vector(u, n)?.sup_norm())
}
