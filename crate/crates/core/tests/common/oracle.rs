//! Brute-force reference computations sharing only scalar arithmetic with
//! the library: dense elimination on nested vectors, subsets as bit masks,
//! the differential built as an antiderivation, and Dolbeault numbers from
//! the real differential conjugated by the full exterior change of basis.

use std::collections::HashMap;

use nilcoh::{LieAlgebra, Scalar};

type Mat = Vec<Vec<Scalar>>;

pub fn rank(mut m: Mat) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].inv().unwrap();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for k in c..cols {
                let x = &m[i][k] - &(&f * &m[r][k]);
                m[i][k] = x;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn inverse(m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, pivot);
        let inv = a[c][c].inv().unwrap();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] * &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in 0..2 * n {
                let x = &a[i][k] - &(&f * &a[c][k]);
                a[i][k] = x;
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Scalar::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Masks of size `k` below `1 << n`, ordered lexicographically by their
/// increasing index lists.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut out);
    out
}

fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// `c[i][j][k]` from the listed brackets.
fn table(l: &LieAlgebra) -> Vec<Vec<Vec<Scalar>>> {
    let n = l.dim();
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for b in l.brackets() {
        c[b.i][b.j][b.k] = b.c.clone();
        c[b.j][b.i][b.k] = -&b.c;
    }
    c
}

/// `d(e^I) = Σ_s (-1)^s de^{i_s} ∧ e^{I \ i_s}` with
/// `de^l = -Σ_{a<b} c_{ab}^l e^a ∧ e^b`. Rows index `Λ^{k+1}`, columns `Λ^k`.
fn real_differential(c: &[Vec<Vec<Scalar>>], k: usize) -> Mat {
    let n = c.len();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(p, &m)| (m, p)).collect();
    let mut d = vec![vec![Scalar::zero(); src.len()]; dst.len()];
    for (col, &mask) in src.iter().enumerate() {
        for l in (0..n).filter(|&l| mask & (1 << l) != 0) {
            let s = below(mask, l);
            let rest = mask & !(1 << l);
            for a in 0..n {
                for b in a + 1..n {
                    let x = &c[a][b][l];
                    if x.is_zero() || rest & ((1 << a) | (1 << b)) != 0 {
                        continue;
                    }
                    let sign = s + below(rest, a) + below(rest, b);
                    let target = rest | (1 << a) | (1 << b);
                    let term = if sign.is_multiple_of(2) { -x } else { x.clone() };
                    let row = pos[&target];
                    d[row][col] = &d[row][col] + &term;
                }
            }
        }
    }
    d
}

pub fn betti(l: &LieAlgebra) -> Vec<usize> {
    let n = l.dim();
    let c = table(l);
    let ranks: Vec<usize> = (0..n).map(|k| rank(real_differential(&c, k))).collect();
    (0..=n)
        .map(|k| {
            let dim = subsets(n, k).len();
            let out = if k < n { ranks[k] } else { 0 };
            let incoming = if k > 0 { ranks[k - 1] } else { 0 };
            dim - out - incoming
        })
        .collect()
}

/// Basis of `{v : (J - i) v = 0}` by elimination on `J - i I`.
fn onezero_basis(j: &Mat) -> Mat {
    let n = j.len();
    let mut a: Mat = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { &j[r][c] - &Scalar::i() } else { j[r][c].clone() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for k in 0..n {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let x = &a[i][k] - &(&f * &a[r][k]);
                    a[i][k] = x;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&a[row][free];
            }
            v
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &Mat) -> Scalar {
    match m.len() {
        0 => Scalar::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Scalar::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Mat = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &det(&minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// `h^{p,q}` as `h[p][q]`.
pub fn hodge(l: &LieAlgebra, j: &nilcoh::ComplexStructure) -> Vec<Vec<usize>> {
    let n = l.dim();
    let m = n / 2;
    let jm: Mat = (0..n).map(|r| j.matrix().row(r).to_vec()).collect();
    let z = onezero_basis(&jm);
    assert_eq!(z.len(), m);
    // Columns Z_1..Z_m, conj(Z_1)..conj(Z_m); dual forms are the rows of P^{-1}.
    let cols: Mat = z
        .iter()
        .cloned()
        .chain(z.iter().map(|v| v.iter().map(Scalar::conj).collect()))
        .collect();
    let p: Mat = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
    let q = inverse(&p);
    let c = table(l);
    // Omega_k: column I (complex forms), row J (real forms), entry det Q[I][J].
    let omega = |k: usize| -> Mat {
        let complex = subsets(n, k);
        let real = subsets(n, k);
        real.iter()
            .map(|&rj| {
                let jc = members(rj, n);
                complex
                    .iter()
                    .map(|&ci| {
                        let ic = members(ci, n);
                        let minor: Mat = ic
                            .iter()
                            .map(|&a| jc.iter().map(|&b| q[a][b].clone()).collect())
                            .collect();
                        det(&minor)
                    })
                    .collect()
            })
            .collect()
    };
    let omegas: Vec<Mat> = (0..=n).map(omega).collect();
    let bidegree = |mask: u32| {
        let p = (mask & ((1u32 << m) - 1)).count_ones() as usize;
        (p, mask.count_ones() as usize - p)
    };
    // delbar ranks, keyed by source bidegree.
    let mut ranks = vec![vec![0usize; m + 1]; m + 1];
    for k in 0..n {
        let mk = mul(&inverse(&omegas[k + 1]), &mul(&real_differential(&c, k), &omegas[k]));
        let src = subsets(n, k);
        let dst = subsets(n, k + 1);
        for pp in 0..=m.min(k) {
            let qq = k - pp;
            if qq > m || qq + 1 > m {
                continue;
            }
            let cols: Vec<usize> = (0..src.len()).filter(|&i| bidegree(src[i]) == (pp, qq)).collect();
            let rows: Vec<usize> = (0..dst.len())
                .filter(|&i| bidegree(dst[i]) == (pp, qq + 1))
                .collect();
            let block: Mat = rows
                .iter()
                .map(|&r| cols.iter().map(|&cc| mk[r][cc].clone()).collect())
                .collect();
            ranks[pp][qq] = rank(block);
        }
    }
    let binom = |a: usize, b: usize| subsets(a, b).len();
    (0..=m)
        .map(|pp| {
            (0..=m)
                .map(|qq| {
                    let incoming = if qq > 0 { ranks[pp][qq - 1] } else { 0 };
                    binom(m, pp) * binom(m, qq) - ranks[pp][qq] - incoming
                })
                .collect()
        })
        .collect()
}
