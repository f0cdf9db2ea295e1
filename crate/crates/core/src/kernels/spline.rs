/// Cubic B-spline basis values at `u` in `[0, 1]` for the clamped knot
/// vector with the given interior knots. Returns the index of the first
/// nonzero basis function and its four values.
fn cubic_basis(u: f64, knots: &[f64]) -> (usize, [f64; 4]) {
    // knots is the full clamped vector: 4 zeros, interior, 4 ones
    let n_basis = knots.len() - 4;
    let mut span = 3;
    while span < n_basis - 1 && u >= knots[span + 1] {
        span += 1;
    }
    // de Boor's triangular evaluation
    let mut n = [0.0f64; 4];
    let mut left = [0.0f64; 4];
    let mut right = [0.0f64; 4];
    n[0] = 1.0;
    for j in 1..=3 {
        left[j] = u - knots[span + 1 - j];
        right[j] = knots[span + j] - u;
        let mut saved = 0.0;
        for r in 0..j {
            let denom = right[r + 1] + left[j - r];
            let temp = if denom == 0.0 { 0.0 } else { n[r] / denom };
            n[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        n[j] = saved;
    }
    (span - 3, n)
}

/// Least-squares cubic spline with `n_interior` evenly spaced interior knots,
/// evaluated at the sample positions. Series too short to determine the
/// spline are returned unchanged (the spline interpolates them).
pub fn cubic_spline_fit(y: &[f64], n_interior: usize) -> Vec<f64> {
    let n = y.len();
    let n_basis = n_interior + 4;
    if n <= n_basis {
        return y.to_vec();
    }
    let mut knots = vec![0.0; 4];
    knots.extend((1..=n_interior).map(|k| k as f64 / (n_interior + 1) as f64));
    knots.extend([1.0; 4]);

    let denom = (n - 1) as f64;
    let mut ata = vec![vec![0.0; n_basis]; n_basis];
    let mut aty = vec![0.0; n_basis];
    let mut rows = Vec::with_capacity(n);
    for (t, &v) in y.iter().enumerate() {
        let (first, b) = cubic_basis(t as f64 / denom, &knots);
        for i in 0..4 {
            aty[first + i] += b[i] * v;
            for j in 0..4 {
                ata[first + i][first + j] += b[i] * b[j];
            }
        }
        rows.push((first, b));
    }

    let Some(coef) = cholesky_solve(ata, aty) else {
        return y.to_vec();
    };
    rows.iter()
        .map(|(first, b)| (0..4).map(|i| b[i] * coef[first + i]).sum())
        .collect()
}

fn cholesky_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for j in 0..n {
        let mut d = a[j][j];
        for k in 0..j {
            d -= a[j][k] * a[j][k];
        }
        if !(d > 1e-14 * a[j][j].abs().max(1e-300)) {
            return None;
        }
        let d = d.sqrt();
        a[j][j] = d;
        for i in j + 1..n {
            let mut s = a[i][j];
            for k in 0..j {
                s -= a[i][k] * a[j][k];
            }
            a[i][j] = s / d;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i][k] * b[k];
        }
        b[i] = s / a[i][i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= a[k][i] * b[k];
        }
        b[i] = s / a[i][i];
    }
    Some(b)
}
