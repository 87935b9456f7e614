//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! the implicit QL iteration with Wilkinson-style shifts.
//!
//! Storage is column-major. For a symmetric input the row-major and
//! column-major layouts coincide, so callers may pass either.

use crate::error::{param, Error, Result};

/// Per-eigenvalue cap on QL sweeps before giving up.
pub const MAX_QL_ITERATIONS: usize = 60;

#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub n: usize,
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    vectors: Option<Vec<f64>>,
}

impl SymmetricEigen {
    pub fn vector(&self, j: usize) -> Option<&[f64]> {
        self.vectors
            .as_ref()
            .map(|v| &v[j * self.n..(j + 1) * self.n])
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }
}

/// Eigenvalues (and optionally eigenvectors) of the symmetric `n × n`
/// matrix `a`. Only the lower triangle is read.
pub fn symmetric_eigen(a: &[f64], n: usize, want_vectors: bool) -> Result<SymmetricEigen> {
    if a.len() != n * n {
        return Err(param("matrix", format!("expected {} entries, got {}", n * n, a.len())));
    }
    if let Some(x) = a.iter().find(|x| !x.is_finite()) {
        return Err(param("matrix", format!("entries must be finite, found {x}")));
    }
    if n == 0 {
        return Ok(SymmetricEigen {
            n,
            values: vec![],
            vectors: want_vectors.then(Vec::new),
        });
    }
    let mut v = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e, n, want_vectors);
    tql2(&mut v, &mut d, &mut e, n, want_vectors)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = want_vectors.then(|| {
        let mut out = Vec::with_capacity(n * n);
        for &i in &order {
            out.extend_from_slice(&v[i * n..(i + 1) * n]);
        }
        out
    });
    Ok(SymmetricEigen { n, values, vectors })
}

/// Eigenvalues of the Hermitian matrix `re + i·im` through the real
/// embedding `[[re, -im], [im, re]]`, whose spectrum is that of the
/// original with every eigenvalue doubled.
pub fn hermitian_eigenvalues(re: &[f64], im: &[f64], n: usize) -> Result<Vec<f64>> {
    if re.len() != n * n || im.len() != n * n {
        return Err(param("matrix", "real and imaginary parts must both be n x n"));
    }
    let m = 2 * n;
    let mut big = vec![0.0; m * m];
    for j in 0..n {
        for i in 0..n {
            let (r, s) = (re[j * n + i], im[j * n + i]);
            // column-major: entry (row, col) at col * m + row
            big[j * m + i] = r;
            big[(j + n) * m + (i + n)] = r;
            big[j * m + (i + n)] = s;
            big[(j + n) * m + i] = -s;
        }
    }
    let eig = symmetric_eigen(&big, m, false)?;
    Ok(eig.values.iter().step_by(2).copied().collect())
}

#[inline]
fn at(i: usize, j: usize, n: usize) -> usize {
    j * n + i
}

fn tred2(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize, accumulate: bool) {
    for j in 0..n {
        d[j] = v[at(n - 1, j, n)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for &dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j, n)];
                v[at(i, j, n)] = 0.0;
                v[at(j, i, n)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i, n)] = f;
                g = e[j] + v[at(j, j, n)] * f;
                let col = &v[j * n..j * n + i];
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = &mut v[j * n..j * n + i];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j, n)];
                v[at(i, j, n)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        // The tridiagonal diagonal sits on the diagonal of the work array.
        for (i, di) in d.iter_mut().enumerate() {
            *di = v[at(i, i, n)];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        v[at(n - 1, i, n)] = v[at(i, i, n)];
        v[at(i, i, n)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1, n)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1, n)] * v[at(k, j, n)];
                }
                for k in 0..=i {
                    v[at(k, j, n)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1, n)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j, n)];
        v[at(n - 1, j, n)] = 0.0;
    }
    v[at(n - 1, n - 1, n)] = 1.0;
    e[0] = 0.0;
}

fn tql2(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize, accumulate: bool) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::EigenNonConvergence {
                        index: l,
                        iterations: MAX_QL_ITERATIONS,
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if accumulate {
                        let (left, right) = v.split_at_mut((i + 1) * n);
                        let vi = &mut left[i * n..];
                        let vi1 = &mut right[..n];
                        for k in 0..n {
                            let t = vi1[k];
                            vi1[k] = s * vi[k] + c * t;
                            vi[k] = c * vi[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
