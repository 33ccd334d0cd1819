//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's linear algebra except where noted.
#![allow(dead_code)]

use hypertoric_gkm::arrangement::Arrangement;
use num_traits::ToPrimitive;

/// Determinant by cofactor expansion (small matrices only).
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// An inequality `<a, x> ≥ b` (`ge`) or `≤ b`.
#[derive(Clone, Debug)]
pub struct Ineq {
    pub a: Vec<i128>,
    pub b: i128,
    pub ge: bool,
}

/// Point as numerators over a common positive denominator.
fn satisfies(ineqs: &[Ineq], num: &[i128], den: i128) -> bool {
    ineqs.iter().all(|q| {
        let lhs: i128 = q.a.iter().zip(num).map(|(a, x)| a * x).sum();
        let rhs = q.b * den;
        if q.ge {
            lhs >= rhs
        } else {
            lhs <= rhs
        }
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Feasibility by enumerating basic solutions inside a large box. Valid
/// for small integer data, where a nonempty polyhedron has a point with
/// coordinates far below the box size.
pub fn feasible_by_vertices(dim: usize, ineqs: &[Ineq]) -> bool {
    const BOX: i128 = 10_000;
    let mut all = ineqs.to_vec();
    for j in 0..dim {
        let mut e = vec![0; dim];
        e[j] = 1;
        all.push(Ineq { a: e.clone(), b: BOX, ge: false });
        all.push(Ineq { a: e, b: -BOX, ge: true });
    }
    for s in subsets(all.len(), dim) {
        let m: Vec<Vec<i128>> = s.iter().map(|&i| all[i].a.clone()).collect();
        let d = det(&m);
        if d == 0 {
            continue;
        }
        let num: Vec<i128> = (0..dim)
            .map(|j| {
                let mj: Vec<Vec<i128>> = s
                    .iter()
                    .map(|&i| {
                        let mut r = all[i].a.clone();
                        r[j] = all[i].b;
                        r
                    })
                    .collect();
                det(&mj)
            })
            .collect();
        let (num, den) = if d < 0 {
            (num.iter().map(|x| -x).collect::<Vec<_>>(), -d)
        } else {
            (num, d)
        };
        if satisfies(&all, &num, den) {
            return true;
        }
    }
    dim == 0 && satisfies(&all, &[], 1)
}

/// Rank of an integer matrix by fraction-free elimination in i128.
pub fn rank_i128(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let (f, g) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * f - m[r][k] * g;
                }
                let gcd = m[i].iter().fold(0i128, |a, &b| num_integer::Integer::gcd(&a, &b));
                if gcd > 1 {
                    m[i].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank over GF(2) with rows packed into u64 words.
pub fn rank_gf2(rows: &[Vec<bool>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let words = cols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &b) in r.iter().enumerate() {
                if b {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.len()).find(|&i| m[i][w] & bit != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

pub fn normal_i128(a: &Arrangement, i: usize) -> Vec<i128> {
    a.normal(i).iter().map(|x| x.to_i128().unwrap()).collect()
}

/// Offsets are integers in every arrangement the tests generate.
pub fn offset_i128(a: &Arrangement, i: usize) -> i128 {
    let c = a.offset(i);
    assert!(c.is_integer());
    c.to_integer().to_i128().unwrap()
}

/// Builds a planar (or linear) arrangement from small integer data,
/// returning `None` for zero normals.
pub fn arrangement(d: usize, data: &[(Vec<i64>, i64)]) -> Option<Arrangement> {
    let refs: Vec<(&[i64], i64)> = data.iter().map(|(a, c)| (a.as_slice(), *c)).collect();
    let a = Arrangement::from_i64(d, &refs).ok()?;
    // keep offsets integral after primitive rescaling
    (0..a.n()).all(|i| a.offset(i).is_integer()).then_some(a)
}

/// Simple, smooth, with a nonempty bounded polytope.
pub fn buildable(a: &Arrangement) -> bool {
    a.validate_simple().ok
        && matches!(a.validate_smooth(), Ok(o) if o.ok)
        && a.delta_status().nonempty
        && a.delta_status().bounded == Some(true)
}

pub fn bundled_smooth() -> Vec<(&'static str, Arrangement)> {
    hypertoric_gkm::bundled::SMOOTH
        .iter()
        .map(|b| (b.name, b.arrangement()))
        .collect()
}
