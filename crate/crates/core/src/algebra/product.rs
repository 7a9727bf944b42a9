//! Naive cubic products with deterministic witnesses (smallest inner index).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

/// Non-negative real entries; `f64::INFINITY` means "no path".
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Inner index realizing each product entry, `None` where the entry is
/// false or infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Option<usize>>,
}

macro_rules! dense_accessors {
    ($t:ty, $elem:ty) => {
        impl $t {
            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn get(&self, i: usize, j: usize) -> $elem {
                self.data[i * self.cols + j]
            }

            pub fn set(&mut self, i: usize, j: usize, x: $elem) {
                self.data[i * self.cols + j] = x;
            }

            pub fn from_rows(rows: &[Vec<$elem>]) -> Self {
                let cols = rows.first().map_or(0, Vec::len);
                let mut data = Vec::with_capacity(rows.len() * cols);
                for row in rows {
                    assert_eq!(row.len(), cols, "ragged rows");
                    data.extend_from_slice(row);
                }
                Self { rows: rows.len(), cols, data }
            }
        }
    };
}

dense_accessors!(BoolMatrix, bool);
dense_accessors!(WeightMatrix, f64);
dense_accessors!(WitnessMatrix, Option<usize>);

impl BoolMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        BoolMatrix { rows, cols, data: vec![false; rows * cols] }
    }
}

impl WeightMatrix {
    /// All entries infinite.
    pub fn new(rows: usize, cols: usize) -> Self {
        WeightMatrix { rows, cols, data: vec![f64::INFINITY; rows * cols] }
    }

    /// Min-plus identity: zero diagonal, infinite elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = WeightMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, 0.0);
        }
        m
    }
}

impl WitnessMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        WitnessMatrix { rows, cols, data: vec![None; rows * cols] }
    }
}

fn check_dims(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a.1 == b.0 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

pub fn bool_product_witness(a: &BoolMatrix, b: &BoolMatrix) -> Result<(BoolMatrix, WitnessMatrix)> {
    check_dims((a.rows, a.cols), (b.rows, b.cols))?;
    let mut c = BoolMatrix::new(a.rows, b.cols);
    let mut w = WitnessMatrix::new(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            if !a.get(i, k) {
                continue;
            }
            for j in 0..b.cols {
                if b.get(k, j) && !c.get(i, j) {
                    c.set(i, j, true);
                    w.set(i, j, Some(k));
                }
            }
        }
    }
    Ok((c, w))
}

const INF_INT: u64 = u64::MAX;

/// Integer min-plus on `u64` entries (`INF_INT` = infinity), dropping sums
/// above `h`. Witness is the smallest minimizing index.
fn minplus_int(
    a: &[u64],
    b: &[u64],
    (rows, mid, cols): (usize, usize, usize),
    h: u64,
) -> (Vec<u64>, Vec<Option<usize>>) {
    let mut d = vec![INF_INT; rows * cols];
    let mut w = vec![None; rows * cols];
    for i in 0..rows {
        let out = &mut d[i * cols..(i + 1) * cols];
        let wit = &mut w[i * cols..(i + 1) * cols];
        for k in 0..mid {
            let x = a[i * mid + k];
            if x > h {
                continue;
            }
            let brow = &b[k * cols..(k + 1) * cols];
            for j in 0..cols {
                let y = brow[j];
                if y == INF_INT {
                    continue;
                }
                let s = x + y;
                if s <= h && s < out[j] {
                    out[j] = s;
                    wit[j] = Some(k);
                }
            }
        }
    }
    (d, w)
}

fn to_bounded_ints(m: &WeightMatrix, h: u64) -> Result<Vec<u64>> {
    m.data
        .iter()
        .map(|&x| {
            if x == f64::INFINITY {
                Ok(INF_INT)
            } else if x >= 0.0 && x <= h as f64 && libm::trunc(x) == x {
                Ok(x as u64)
            } else {
                Err(Error::EntryOutOfRange { value: x })
            }
        })
        .collect()
}

/// `D[i][j] = min_k A[i][k] + B[k][j]` when that minimum is at most `h`,
/// infinity otherwise. Finite entries must be integers in `[0, h]`.
pub fn minplus_bounded(a: &WeightMatrix, b: &WeightMatrix, h: u64) -> Result<(WeightMatrix, WitnessMatrix)> {
    check_dims((a.rows, a.cols), (b.rows, b.cols))?;
    let ai = to_bounded_ints(a, h)?;
    let bi = to_bounded_ints(b, h)?;
    let (d, w) = minplus_int(&ai, &bi, (a.rows, a.cols, b.cols), h);
    let data = d
        .into_iter()
        .map(|x| if x == INF_INT { f64::INFINITY } else { x as f64 })
        .collect();
    Ok((
        WeightMatrix { rows: a.rows, cols: b.cols, data },
        WitnessMatrix { rows: a.rows, cols: b.cols, data: w },
    ))
}

fn check_real_entries(m: &WeightMatrix) -> Result<()> {
    match m.data.iter().find(|x| x.is_nan() || **x < 0.0) {
        Some(&value) => Err(Error::EntryOutOfRange { value }),
        None => Ok(()),
    }
}

/// `(1+eps)`-approximate min-plus product.
///
/// Every output entry equals `A[i][w] + B[w][j]` for its witness `w` and lies
/// between the exact product and `(1+eps)` times it. Works by global dyadic
/// scaling: at scale `r` every entry `<= r` is rounded up to a multiple of
/// `eps*r/4` and an integer bounded product is taken; for the scale just above
/// the larger term of an optimal pair the rounding loss is at most `eps`
/// times the optimum. The best real value over all scales is kept.
pub fn minplus_approx(a: &WeightMatrix, b: &WeightMatrix, eps: f64) -> Result<(WeightMatrix, WitnessMatrix)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::BadEpsilon { epsilon: eps });
    }
    check_dims((a.rows, a.cols), (b.rows, b.cols))?;
    check_real_entries(a)?;
    check_real_entries(b)?;
    let (rows, mid, cols) = (a.rows, a.cols, b.cols);

    let finite_pos = a.data.iter().chain(&b.data).copied().filter(|x| x.is_finite() && *x > 0.0);
    let (min_pos, max) = finite_pos.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let mut r = 1.0f64;
    if min_pos.is_finite() {
        while r > min_pos {
            r /= 2.0;
        }
        while r * 2.0 <= min_pos {
            r *= 2.0;
        }
    }

    let cap = libm::ceil(8.0 / eps) as u64 + 2;
    let mut best = WeightMatrix::new(rows, cols);
    let mut wit = WitnessMatrix::new(rows, cols);
    loop {
        let g = eps * r / 4.0;
        let round = |x: f64| if x <= r { libm::ceil(x / g) as u64 } else { INF_INT };
        let ai: Vec<u64> = a.data.iter().map(|&x| round(x)).collect();
        let bi: Vec<u64> = b.data.iter().map(|&x| round(x)).collect();
        let (_, w) = minplus_int(&ai, &bi, (rows, mid, cols), cap);
        for i in 0..rows {
            for j in 0..cols {
                let Some(k) = w[i * cols + j] else { continue };
                let real = a.get(i, k) + b.get(k, j);
                let cur = best.get(i, j);
                if real < cur || (real == cur && wit.get(i, j).is_some_and(|old| k < old)) {
                    best.set(i, j, real);
                    wit.set(i, j, Some(k));
                }
            }
        }
        if r >= max {
            break;
        }
        r *= 2.0;
    }
    Ok((best, wit))
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn bool_identity_left() {
        let mut id = BoolMatrix::new(3, 3);
        for i in 0..3 {
            id.set(i, i, true);
        }
        let b = BoolMatrix::from_rows(&[
            vec![true, false, true],
            vec![false, false, false],
            vec![false, true, false],
        ]);
        let (c, w) = bool_product_witness(&id, &b).unwrap();
        assert_eq!(c, b);
        assert_eq!(w.get(0, 2), Some(0));
        assert_eq!(w.get(2, 1), Some(2));
        assert_eq!(w.get(1, 1), None);
    }

    #[test]
    fn bool_all_false() {
        let a = BoolMatrix::new(2, 4);
        let (c, w) = bool_product_witness(&a, &BoolMatrix::from_rows(&vec![vec![true; 2]; 4])).unwrap();
        assert_eq!(c, BoolMatrix::new(2, 2));
        assert_eq!(w, WitnessMatrix::new(2, 2));
    }

    #[test]
    fn dimension_mismatch() {
        let a = BoolMatrix::new(2, 3);
        assert!(matches!(bool_product_witness(&a, &a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bounded_identity_and_clipping() {
        let a = WeightMatrix::from_rows(&[vec![2.0, 5.0], vec![INF, 1.0]]);
        let (d, _) = minplus_bounded(&a, &WeightMatrix::identity(2), 5).unwrap();
        assert_eq!(d, a);
        let (d, w) = minplus_bounded(
            &WeightMatrix::from_rows(&[vec![7.0]]),
            &WeightMatrix::from_rows(&[vec![1.0]]),
            7,
        )
        .unwrap();
        assert_eq!(d.get(0, 0), INF);
        assert_eq!(w.get(0, 0), None);
    }

    #[test]
    fn bounded_rejects_bad_entries() {
        let a = WeightMatrix::from_rows(&[vec![1.5]]);
        assert!(matches!(minplus_bounded(&a, &a, 4), Err(Error::EntryOutOfRange { .. })));
        let a = WeightMatrix::from_rows(&[vec![9.0]]);
        assert!(matches!(minplus_bounded(&a, &a, 4), Err(Error::EntryOutOfRange { .. })));
    }

    #[test]
    fn approx_single_term() {
        let one = WeightMatrix::from_rows(&[vec![1.0]]);
        for eps in [1.0, 0.3, 0.01] {
            let (d, w) = minplus_approx(&one, &one, eps).unwrap();
            assert_eq!(d.get(0, 0), 2.0);
            assert_eq!(w.get(0, 0), Some(0));
        }
        assert!(matches!(minplus_approx(&one, &one, 0.0), Err(Error::BadEpsilon { .. })));
        assert!(matches!(minplus_approx(&one, &one, 1.5), Err(Error::BadEpsilon { .. })));
    }

    #[test]
    fn approx_with_identity() {
        let a = WeightMatrix::from_rows(&[vec![3.25, INF], vec![1.0, 7.5]]);
        let (d, w) = minplus_approx(&a, &WeightMatrix::identity(2), 0.1).unwrap();
        assert_eq!(d, a);
        assert_eq!(w.get(0, 1), None);
        assert_eq!(w.get(1, 1), Some(1));
    }
}
