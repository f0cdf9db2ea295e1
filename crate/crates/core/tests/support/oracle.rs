//! Slow, direct reimplementations of the 22 features used to cross-check
//! the library. Only std is used; every quantity is recomputed from its
//! definition (direct sums, naive DFT, dense least squares).

#![allow(dead_code)]

use std::f64::consts::PI;

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub fn sample_std(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() - 1) as f64).sqrt()
}

pub fn zscore(x: &[f64]) -> Vec<f64> {
    let m = mean(x);
    let s = sample_std(x);
    x.iter().map(|v| (v - m) / s).collect()
}

/// Biased autocorrelation by direct summation, lags 0..n-1.
pub fn acf(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let m = mean(x);
    let y: Vec<f64> = x.iter().map(|v| v - m).collect();
    let c0: f64 = y.iter().map(|v| v * v).sum();
    (0..n)
        .map(|k| {
            let mut s = 0.0;
            for t in 0..n - k {
                s += y[t] * y[t + k];
            }
            s / c0
        })
        .collect()
}

pub fn first_zero(r: &[f64]) -> usize {
    for (k, v) in r.iter().enumerate().skip(1) {
        if *v <= 0.0 {
            return k;
        }
    }
    r.len() - 1
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 0 {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    } else {
        v[n / 2]
    }
}

/// Bin index by walking the edges; the top edge is closed.
fn bin_by_edges(v: f64, lo: f64, hi: f64, nb: usize) -> usize {
    let w = (hi - lo) / nb as f64;
    for i in (0..nb).rev() {
        if v >= lo + i as f64 * w {
            return i;
        }
    }
    0
}

fn histogram_mode(z: &[f64], nb: usize) -> f64 {
    let lo = z.iter().cloned().fold(f64::MAX, f64::min);
    let hi = z.iter().cloned().fold(f64::MIN, f64::max);
    let mut counts = vec![0; nb];
    for &v in z {
        counts[bin_by_edges(v, lo, hi, nb)] += 1;
    }
    let top = *counts.iter().max().unwrap();
    let w = (hi - lo) / nb as f64;
    let centers: Vec<f64> = (0..nb)
        .filter(|&i| counts[i] == top)
        .map(|i| lo + (i as f64 + 0.5) * w)
        .collect();
    mean(&centers)
}

fn longest(flags: &[bool]) -> usize {
    let mut best = 0;
    let mut i = 0;
    while i < flags.len() {
        if flags[i] {
            let start = i;
            while i < flags.len() && flags[i] {
                i += 1;
            }
            best = best.max(i - start);
        } else {
            i += 1;
        }
    }
    best
}

fn outlier(z: &[f64], sign: f64) -> Option<f64> {
    let n = z.len();
    let s: Vec<f64> = z.iter().map(|v| v * sign).collect();
    let top = s.iter().cloned().fold(f64::MIN, f64::max);
    let mut record = Vec::new();
    let mut k = 0;
    while (k as f64) * 0.01 <= top {
        let th = k as f64 * 0.01;
        let mut t: Vec<f64> = (0..n).filter(|&i| s[i] >= th).map(|i| (i + 1) as f64).collect();
        if t.len() < 2 || (t.len() as f64) < 0.02 * n as f64 {
            break;
        }
        let frac = median(&mut t) / n as f64;
        record.push(2.0 * (frac - 0.5));
        k += 1;
    }
    if record.is_empty() {
        None
    } else {
        Some(median(&mut record))
    }
}

fn f1ecac(r: &[f64]) -> f64 {
    let th = 1.0 / std::f64::consts::E;
    for k in 1..r.len() {
        if r[k] < th {
            return (k - 1) as f64 + (r[k - 1] - th) / (r[k - 1] - r[k]);
        }
    }
    r.len() as f64
}

fn first_min(r: &[f64]) -> usize {
    for k in 1..r.len() - 1 {
        if r[k] < r[k - 1] && r[k] < r[k + 1] {
            return k;
        }
    }
    r.len() - 1
}

/// One-sided periodogram of the mean-removed series zero-padded to the
/// next power of two, by a naive DFT. Returns (omega, power).
fn periodogram(z: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = z.len();
    let mut nfft = 1;
    while nfft < n {
        nfft *= 2;
    }
    let m = mean(z);
    let mut w = Vec::new();
    let mut p = Vec::new();
    for k in 0..=nfft / 2 {
        let (mut re, mut im) = (0.0, 0.0);
        for (t, v) in z.iter().enumerate() {
            let ang = -2.0 * PI * (k * t % nfft) as f64 / nfft as f64;
            re += (v - m) * ang.cos();
            im += (v - m) * ang.sin();
        }
        let edge = k == 0 || k == nfft / 2;
        w.push(2.0 * PI * k as f64 / nfft as f64);
        p.push((re * re + im * im) * if edge { 1.0 } else { 2.0 });
    }
    (w, p)
}

fn spectral_area(z: &[f64]) -> f64 {
    let (w, p) = periodogram(z);
    let total: f64 = p.iter().sum();
    let low: f64 = (0..w.len()).filter(|&k| w[k] < PI / 5.0).map(|k| p[k]).sum();
    low / total
}

fn spectral_centroid(z: &[f64]) -> f64 {
    let (w, p) = periodogram(z);
    let total: f64 = p.iter().sum();
    let mut acc = 0.0;
    for k in 0..w.len() {
        acc += p[k];
        if acc >= total / 2.0 {
            return w[k];
        }
    }
    *w.last().unwrap()
}

fn local_mean_stderr(z: &[f64], win: usize) -> f64 {
    let res: Vec<f64> = (win..z.len())
        .map(|t| z[t] - z[t - win..t].iter().sum::<f64>() / win as f64)
        .collect();
    sample_std(&res)
}

fn trev(z: &[f64]) -> f64 {
    let d: Vec<f64> = (1..z.len()).map(|t| (z[t] - z[t - 1]).powi(3)).collect();
    mean(&d)
}

fn entropy(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.ln()
        })
        .sum()
}

fn histogram_ami(z: &[f64], lag: usize, nb: usize) -> f64 {
    let lo = z.iter().cloned().fold(f64::MAX, f64::min);
    let hi = z.iter().cloned().fold(f64::MIN, f64::max);
    let b: Vec<usize> = z.iter().map(|&v| bin_by_edges(v, lo, hi, nb)).collect();
    let m = z.len() - lag;
    let mut hx = vec![0; nb];
    let mut hy = vec![0; nb];
    let mut hxy = vec![0; nb * nb];
    for t in 0..m {
        hx[b[t]] += 1;
        hy[b[t + lag]] += 1;
        hxy[b[t] * nb + b[t + lag]] += 1;
    }
    entropy(&hx) + entropy(&hy) - entropy(&hxy)
}

fn ami_gaussian_first_min(r: &[f64], n: usize, max_lag: usize) -> usize {
    let limit = max_lag.min((n + 1) / 2).min(n - 1);
    let a: Vec<f64> = r.iter().map(|v| -0.5 * (1.0 - v * v).ln()).collect();
    for k in 2..limit {
        if a[k] < a[k - 1] && a[k] < a[k + 1] {
            return k;
        }
    }
    limit
}

/// Letters by rank: a sample of rank r (0-based) gets the number of
/// cut points ceil(k n / q) with r >= cut.
fn symbolize_rank(x: &[f64], q: usize) -> Vec<usize> {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap());
    let mut out = vec![0; n];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = (1..q).filter(|&k| rank >= (k * n + q - 1) / q).count();
    }
    out
}

fn motif_hh(z: &[f64]) -> f64 {
    let s = symbolize_rank(z, 3);
    let mut c = vec![0; 9];
    for t in 1..s.len() {
        c[s[t - 1] * 3 + s[t]] += 1;
    }
    entropy(&c)
}

fn embed2(z: &[f64], fz: usize) -> f64 {
    let n = z.len();
    let tau = fz.min(n / 10).max(1);
    let pts: Vec<(f64, f64)> = (0..n - tau).map(|t| (z[t], z[t + tau])).collect();
    let d: Vec<f64> = pts
        .windows(2)
        .map(|p| ((p[1].0 - p[0].0).powi(2) + (p[1].1 - p[0].1).powi(2)).sqrt())
        .collect();
    let m = d.len();
    let mu = mean(&d);
    let nb = (m as f64).sqrt().ceil() as usize;
    let hi = d.iter().cloned().fold(0.0, f64::max);
    let mut counts = vec![0; nb];
    for &v in &d {
        counts[bin_by_edges(v, 0.0, hi, nb)] += 1;
    }
    let w = hi / nb as f64;
    let mut acc = 0.0;
    for i in 0..nb {
        let c = (i as f64 + 0.5) * w;
        acc += (counts[i] as f64 / (m as f64 * w) - (-c / mu).exp() / mu).abs();
    }
    acc / nb as f64
}

/// Least-squares line through (x, y); returns the residual sum of squares.
fn line_rss(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let b = (n * sxy - sx * sy) / det;
    let a = (sy - b * sx) / n;
    x.iter().zip(y).map(|(u, v)| (v - a - b * u).powi(2)).sum()
}

fn fluct(z: &[f64], dfa: bool) -> f64 {
    let n = z.len();
    let stride = if dfa { 2 } else { 1 };
    let sub: Vec<f64> = (0..n / stride).map(|i| z[i * stride]).collect();
    let mut prof = Vec::with_capacity(sub.len());
    let mut acc = 0.0;
    for v in &sub {
        acc += v;
        prof.push(acc);
    }
    let (a, b) = ((5.0f64).ln(), ((n / 2) as f64).ln());
    let mut scales: Vec<usize> = Vec::new();
    for i in 0..50 {
        let s = (a + (b - a) * i as f64 / 49.0).exp().round() as usize;
        if s >= 2 && s <= prof.len() && scales.last() != Some(&s) {
            scales.push(s);
        }
    }
    let mut f = Vec::new();
    for &s in &scales {
        let nw = prof.len() / s;
        let xs: Vec<f64> = (1..=s).map(|k| k as f64).collect();
        let mut vals = Vec::new();
        for w in 0..nw {
            let seg = &prof[w * s..(w + 1) * s];
            let nn = s as f64;
            let (sx, sy) = (xs.iter().sum::<f64>(), seg.iter().sum::<f64>());
            let sxx: f64 = xs.iter().map(|v| v * v).sum();
            let sxy: f64 = xs.iter().zip(seg).map(|(p, q)| p * q).sum();
            let slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
            let icpt = (sy - slope * sx) / nn;
            let r: Vec<f64> = xs.iter().zip(seg).map(|(p, q)| q - icpt - slope * p).collect();
            if dfa {
                vals.push(r.iter().map(|v| v * v).sum::<f64>() / nn);
            } else {
                let lo = r.iter().cloned().fold(f64::MAX, f64::min);
                let hi = r.iter().cloned().fold(f64::MIN, f64::max);
                vals.push((hi - lo).powi(2));
            }
        }
        f.push(mean(&vals).sqrt());
    }
    let lx: Vec<f64> = scales.iter().map(|&s| (s as f64).ln()).collect();
    let ly: Vec<f64> = f.iter().map(|v| v.ln()).collect();
    let q = lx.len();
    let mut best = (0, f64::MAX);
    for k in 3..=q - 3 {
        let r = line_rss(&lx[..k], &ly[..k]) + line_rss(&lx[k..], &ly[k..]);
        if r < best.1 {
            best = (k, r);
        }
    }
    best.0 as f64 / q as f64
}

fn transition_sumdiagcov(z: &[f64], fz: usize) -> f64 {
    let down: Vec<f64> = z.iter().step_by(fz).cloned().collect();
    let s = symbolize_rank(&down, 3);
    let mut t = [[0.0f64; 3]; 3];
    for w in s.windows(2) {
        t[w[1]][w[0]] += 1.0;
    }
    for from in 0..3 {
        let tot: f64 = (0..3).map(|to| t[to][from]).sum();
        if tot > 0.0 {
            for row in t.iter_mut() {
                row[from] /= tot;
            }
        }
    }
    // covariance of the three column vectors
    let cols: Vec<[f64; 3]> = (0..3).map(|c| [t[0][c], t[1][c], t[2][c]]).collect();
    let mut mu = [0.0; 3];
    for c in &cols {
        for i in 0..3 {
            mu[i] += c[i] / 3.0;
        }
    }
    let mut trace = 0.0;
    for i in 0..3 {
        for c in &cols {
            trace += (c[i] - mu[i]).powi(2) / 2.0;
        }
    }
    trace
}

/// Cox-de Boor recursion for the clamped cubic basis with 3 interior knots.
fn bspline(i: usize, p: usize, u: f64, k: &[f64]) -> f64 {
    if p == 0 {
        let last = k.len() - 1;
        // close the final nonempty interval at u = 1
        if u == k[last] {
            return if k[i] < k[i + 1] && k[i + 1] == k[last] { 1.0 } else { 0.0 };
        }
        return if k[i] <= u && u < k[i + 1] { 1.0 } else { 0.0 };
    }
    let mut v = 0.0;
    if k[i + p] > k[i] {
        v += (u - k[i]) / (k[i + p] - k[i]) * bspline(i, p - 1, u, k);
    }
    if k[i + p + 1] > k[i + 1] {
        v += (k[i + p + 1] - u) / (k[i + p + 1] - k[i + 1]) * bspline(i + 1, p - 1, u, k);
    }
    v
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        a.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

fn spline_fit(y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let knots = [0.0, 0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0, 1.0];
    let nb = 7;
    if n <= nb {
        return y.to_vec();
    }
    let design: Vec<Vec<f64>> = (0..n)
        .map(|t| {
            let u = t as f64 / (n - 1) as f64;
            (0..nb).map(|i| bspline(i, 3, u, &knots)).collect()
        })
        .collect();
    let mut ata = vec![vec![0.0; nb]; nb];
    let mut aty = vec![0.0; nb];
    for t in 0..n {
        for i in 0..nb {
            aty[i] += design[t][i] * y[t];
            for j in 0..nb {
                ata[i][j] += design[t][i] * design[t][j];
            }
        }
    }
    let c = solve(ata, aty);
    design.iter().map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum()).collect()
}

fn periodicity_wang(z: &[f64]) -> usize {
    let n = z.len();
    let fit = spline_fit(z);
    let r: Vec<f64> = z.iter().zip(&fit).map(|(a, b)| a - b).collect();
    let m = mean(&r);
    let max_lag = ((n + 2) / 3).min(n - 1);
    let ac: Vec<f64> = (0..=max_lag)
        .map(|k| (0..n - k).map(|t| (r[t] - m) * (r[t + k] - m)).sum::<f64>() / n as f64)
        .collect();
    let mut trough = None;
    for k in 1..max_lag {
        if ac[k] < ac[k - 1] && ac[k] < ac[k + 1] {
            trough = Some(ac[k]);
        } else if ac[k] > ac[k - 1] && ac[k] > ac[k + 1] {
            if let Some(t) = trough {
                if ac[k] > 0.01 && ac[k] - t > 0.01 {
                    return k;
                }
            }
        }
    }
    0
}

/// All 22 features in canonical order; `None` where the oracle considers
/// the feature undefined.
pub fn all_features(x: &[f64]) -> [Option<f64>; 22] {
    let n = x.len();
    let z = zscore(x);
    let r = acf(&z);
    let fz = first_zero(&r);
    let diffs: Vec<f64> = (1..n).map(|t| z[t] - z[t - 1]).collect();
    let mz = mean(&z);
    let above: Vec<bool> = z.iter().map(|v| *v > mz).collect();
    let dec: Vec<bool> = diffs.iter().map(|d| *d < 0.0).collect();
    [
        Some(histogram_mode(&z, 5)),
        Some(histogram_mode(&z, 10)),
        Some(longest(&above) as f64),
        outlier(&z, 1.0),
        outlier(&z, -1.0),
        Some(f1ecac(&r)),
        Some(first_min(&r) as f64),
        (n >= 16).then(|| spectral_area(&z)),
        (n >= 16).then(|| spectral_centroid(&z)),
        Some(local_mean_stderr(&z, 3)),
        Some(trev(&z)),
        Some(histogram_ami(&z, 2, 5)),
        Some(ami_gaussian_first_min(&r, n, 40) as f64),
        Some(diffs.iter().filter(|d| d.abs() > 0.04).count() as f64 / diffs.len() as f64),
        Some(longest(&dec) as f64),
        Some(motif_hh(&z)),
        Some(first_zero(&acf(&diffs)) as f64 / fz as f64),
        Some(embed2(&z, fz)),
        (n >= 64).then(|| fluct(&z, true)),
        (n >= 64).then(|| fluct(&z, false)),
        (n.div_ceil(fz) >= 4).then(|| transition_sumdiagcov(&z, fz)),
        Some(periodicity_wang(&z) as f64),
    ]
}
