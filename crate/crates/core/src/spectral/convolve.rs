use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_traits::Zero;

use super::ScalarField;
use crate::wavevector::Wavevector;

// Above this many cells in the output box, accumulate sparsely instead.
const DENSE_LIMIT: usize = 1 << 22;

fn bounding_box(f: &ScalarField) -> ([i32; 3], [i32; 3]) {
    let mut lo = [i32::MAX; 3];
    let mut hi = [i32::MIN; 3];
    for k in f.modes.keys() {
        for axis in 0..3 {
            lo[axis] = lo[axis].min(k.0[axis]);
            hi[axis] = hi[axis].max(k.0[axis]);
        }
    }
    (lo, hi)
}

pub(super) fn convolve(f: &ScalarField, g: &ScalarField) -> ScalarField {
    if f.is_empty() || g.is_empty() {
        return ScalarField::zero();
    }
    let scale = f.max_coefficient() * g.max_coefficient();
    let (flo, fhi) = bounding_box(f);
    let (glo, ghi) = bounding_box(g);
    let lo: [i32; 3] = std::array::from_fn(|a| flo[a] + glo[a]);
    let dims: [usize; 3] = std::array::from_fn(|a| (fhi[a] + ghi[a] - lo[a] + 1) as usize);
    let cells = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));

    let upper: Vec<(Wavevector, Complex64)> = match cells {
        Some(n) if n <= DENSE_LIMIT => dense(f, g, flo, glo, lo, dims),
        _ => sparse(f, g),
    };
    ScalarField::from_upper_half(upper).canonical(scale)
}

fn dense(
    f: &ScalarField,
    g: &ScalarField,
    flo: [i32; 3],
    glo: [i32; 3],
    lo: [i32; 3],
    dims: [usize; 3],
) -> Vec<(Wavevector, Complex64)> {
    let strides = [dims[1] * dims[2], dims[2], 1];
    let offset =
        |k: &Wavevector, base: [i32; 3]| -> usize { (0..3).map(|a| (k.0[a] - base[a]) as usize * strides[a]).sum() };
    let g_entries: Vec<(usize, Complex64)> = g.modes.iter().map(|(k, &c)| (offset(k, glo), c)).collect();
    let mut acc = vec![Complex64::zero(); dims[0] * dims[1] * dims[2]];
    for (kf, &cf) in &f.modes {
        let base = offset(kf, flo);
        for &(off, cg) in &g_entries {
            acc[base + off] += cf * cg;
        }
    }
    let mut out = Vec::new();
    for (idx, &c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = Wavevector([
            lo[0] + (idx / strides[0]) as i32,
            lo[1] + ((idx / strides[1]) % dims[1]) as i32,
            lo[2] + (idx % dims[2]) as i32,
        ]);
        if k.is_zero() || k.is_upper_half() {
            out.push((k, c));
        }
    }
    out
}

fn sparse(f: &ScalarField, g: &ScalarField) -> Vec<(Wavevector, Complex64)> {
    let mut acc: HashMap<Wavevector, Complex64> = HashMap::new();
    for (&kf, &cf) in &f.modes {
        for (&kg, &cg) in &g.modes {
            let k = kf + kg;
            if k.is_zero() || k.is_upper_half() {
                *acc.entry(k).or_insert_with(Complex64::zero) += cf * cg;
            }
        }
    }
    let sorted: BTreeMap<_, _> = acc.into_iter().collect();
    sorted.into_iter().collect()
}
