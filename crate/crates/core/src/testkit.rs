//! Reference oracles and helpers for the test and acceptance suites.
//!
//! Nothing here is used by the production code paths: the moment oracle does
//! its arithmetic in double-double (~31 significant digits) precision so that
//! the plain f64 implementation can be checked against it, and the remaining
//! helpers are brute-force counterparts of formulas used elsewhere.

use crate::ingest::{Sample, Series};
use crate::moments::CentralMoments;

/// Double-double value: `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }

    pub fn add(self, other: Dd) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, other: Dd) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Dd) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, d: f64) -> Self {
        let q0 = self.hi / d;
        let (p, e) = two_prod(q0, d);
        let r = self.sub(Dd { hi: p, lo: e });
        let q1 = (r.hi + r.lo) / d;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Direct-summation central moments at double-double precision.
pub fn dd_central_moments(xs: &[f64]) -> CentralMoments {
    let n = xs.len() as f64;
    let mut sum = Dd::zero();
    for &x in xs {
        sum = sum.add(Dd::from_f64(x));
    }
    let mean = sum.div_f64(n);
    let (mut m2, mut m3, mut m4) = (Dd::zero(), Dd::zero(), Dd::zero());
    for &x in xs {
        let d = Dd::from_f64(x).sub(mean);
        let d2 = d.mul(d);
        m2 = m2.add(d2);
        m3 = m3.add(d2.mul(d));
        m4 = m4.add(d2.mul(d2));
    }
    CentralMoments {
        mean: mean.to_f64(),
        m2: m2.div_f64(n).to_f64(),
        m3: m3.div_f64(n).to_f64(),
        m4: m4.div_f64(n).to_f64(),
    }
}

/// Oracle counterpart of `moments::moment_vector`: ratios evaluated from
/// double-double central moments.
pub fn dd_moment_vector(xs: &[f64]) -> crate::moments::MomentVector {
    let n = xs.len() as f64;
    let c = dd_central_moments(xs);
    crate::moments::MomentVector {
        mean: c.mean,
        std: (c.m2 * n / (n - 1.0)).sqrt(),
        skewness: c.m3 / c.m2.powf(1.5),
        exkurtosis: c.m4 / (c.m2 * c.m2) - 3.0,
    }
}

/// Build an unlabeled series from `(t_ms, ax, ay, az)` rows.
pub fn series_from_rows(rows: &[(i64, f64, f64, f64)]) -> Series {
    let samples = rows
        .iter()
        .map(|&(t_ms, ax, ay, az)| Sample { t_ms, ax, ay, az })
        .collect();
    Series::new(samples, None).expect("test rows must form a valid series")
}

/// Brute-force frame enumerator: start offsets `0, hop, 2*hop, ...` whose
/// `[start, start + segment)` range lies inside `n` samples.
pub fn enumerate_frames(n: usize, segment_len: usize, hop_len: usize) -> Vec<usize> {
    assert!(segment_len > 0 && hop_len > 0);
    let mut starts = Vec::new();
    let mut start = 0usize;
    while start + segment_len <= n {
        starts.push(start);
        start += hop_len;
    }
    starts
}

/// Spearman rank correlation of two equally long sequences (ties get the
/// average rank).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let ra = ranks(a);
    let rb = ranks(b);
    pearson(&ra, &rb)
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).expect("NaN in rank input"));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let dx = x - ma;
        let dy = y - mb;
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    sab / (saa * sbb).sqrt()
}

/// Fraction of points whose cluster's majority label matches their own label.
pub fn purity(assignments: &[usize], labels: &[&str], k: usize) -> f64 {
    assert_eq!(assignments.len(), labels.len());
    let mut total_majority = 0usize;
    for c in 0..k {
        let members: Vec<&str> = assignments
            .iter()
            .zip(labels)
            .filter(|(&a, _)| a == c)
            .map(|(_, &l)| l)
            .collect();
        let mut best = 0usize;
        for &candidate in &members {
            let count = members.iter().filter(|&&l| l == candidate).count();
            best = best.max(count);
        }
        total_majority += best;
    }
    total_majority as f64 / assignments.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_sum_recovers_cancellation() {
        // 1 + 1e-18 - 1 is lost in f64, kept in double-double
        let s = Dd::from_f64(1.0)
            .add(Dd::from_f64(1e-18))
            .sub(Dd::from_f64(1.0));
        assert_eq!(s.to_f64(), 1e-18);
    }

    #[test]
    fn dd_moments_on_exact_case() {
        let c = dd_central_moments(&[-1.0, 1.0, -1.0, 1.0]);
        assert_eq!((c.mean, c.m2, c.m3, c.m4), (0.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn spearman_of_monotone_sequences_is_one() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [10.0, 20.0, 25.0, 100.0];
        assert!((spearman(&a, &b) - 1.0).abs() < 1e-12);
        let c = [4.0, 3.0, 2.0, 1.0];
        assert!((spearman(&a, &c) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_handles_ties() {
        let a = [1.0, 1.0, 2.0, 3.0];
        let b = [1.0, 1.0, 2.0, 3.0];
        assert!((spearman(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn purity_counts_majorities() {
        let assignments = [0, 0, 1, 1];
        let labels = ["a", "a", "b", "a"];
        assert!((purity(&assignments, &labels, 2) - 0.75).abs() < 1e-12);
    }
}
