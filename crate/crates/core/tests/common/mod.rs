//! Brute-force reference implementations for dimensions 2 and 3.
//!
//! Everything here works on plain `i64` point lists and shares no code with
//! the library beyond the types used to call it.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use latpoly::{IntegerVector, Polytope};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Pt = Vec<i64>;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Pt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross(u: &[i64], v: &[i64]) -> Pt {
    vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    dot(a, &cross(b, c))
}

/// Facet inequalities `<a, x> <= b` with primitive `a`, found by testing every
/// hyperplane through `d` of the points.
pub fn facets(points: &[Pt]) -> BTreeSet<(Pt, i64)> {
    let d = points[0].len();
    let mut out = BTreeSet::new();
    let n = points.len();
    let mut consider = |normal: Pt, base: &Pt| {
        if normal.iter().all(|&x| x == 0) {
            return;
        }
        let g = normal.iter().fold(0, |g, &x| gcd(g, x));
        let normal: Pt = normal.iter().map(|x| x / g).collect();
        let b = dot(&normal, base);
        let vals: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
        if vals.iter().all(|&v| v <= b) {
            out.insert((normal, b));
        } else if vals.iter().all(|&v| v >= b) {
            out.insert((normal.iter().map(|x| -x).collect(), -b));
        }
    };
    match d {
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    let e = sub(&points[j], &points[i]);
                    consider(vec![e[1], -e[0]], &points[i]);
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let nrm = cross(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]));
                        consider(nrm, &points[i]);
                    }
                }
            }
        }
        _ => panic!("oracle supports dimensions 2 and 3"),
    }
    out
}

fn bbox(points: &[Pt]) -> (Pt, Pt) {
    let d = points[0].len();
    let lo = (0..d).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi = (0..d).map(|i| points.iter().map(|p| p[i]).max().unwrap()).collect();
    (lo, hi)
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Pt> {
    let mut out = vec![vec![]];
    for (l, h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p: Pt| {
                (*l..=*h).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Lattice points of `m * conv(points)`, in lexicographic order.
pub fn lattice_points(points: &[Pt], m: i64) -> Vec<Pt> {
    let fs = facets(points);
    let (lo, hi) = bbox(points);
    let lo: Pt = lo.iter().map(|x| x * m).collect();
    let hi: Pt = hi.iter().map(|x| x * m).collect();
    box_points(&lo, &hi)
        .into_iter()
        .filter(|x| fs.iter().all(|(a, b)| dot(a, x) <= m * b))
        .collect()
}

/// `(total, boundary)` lattice point counts of `m * conv(points)`.
pub fn count(points: &[Pt], m: i64) -> (u64, u64) {
    let fs = facets(points);
    let pts = lattice_points(points, m);
    let boundary = pts.iter().filter(|x| fs.iter().any(|(a, b)| dot(a, x) == m * b)).count();
    (pts.len() as u64, boundary as u64)
}

/// Delta-vector as the first `d + 1` coefficients of `(1 - t)^(d+1) * sum_m L(m) t^m`.
pub fn delta(points: &[Pt]) -> Vec<i64> {
    let d = points[0].len();
    let series: Vec<i64> = (0..=d as i64).map(|m| count(points, m).0 as i64).collect();
    let mut factor = vec![1i64];
    for _ in 0..=d {
        let mut next = vec![0; factor.len() + 1];
        for (i, c) in factor.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        factor = next;
    }
    (0..=d)
        .map(|k| (0..=k).map(|j| factor[j] * series[k - j]).sum())
        .collect()
}

/// Points lying on at least `d` facet hyperplanes.
pub fn vertices(points: &[Pt]) -> Vec<Pt> {
    let d = points[0].len();
    let fs = facets(points);
    let unique: BTreeSet<Pt> = points.iter().cloned().collect();
    unique
        .into_iter()
        .filter(|p| fs.iter().filter(|(a, b)| dot(a, p) == *b).count() >= d)
        .collect()
}

/// `d! vol`, from the triangulation that cones every facet from the vertex centroid.
///
/// In the plane the facets are edges and this is the shoelace formula; in space
/// each facet polygon is fanned from one of its vertices.
pub fn normalized_volume(points: &[Pt]) -> i64 {
    let verts = vertices(points);
    let d = points[0].len();
    let k = verts.len() as i64;
    // coordinates scaled by k so the centroid is integral
    let sum: Pt = (0..d).map(|i| verts.iter().map(|v| v[i]).sum()).collect();
    let scaled: Vec<Pt> = verts.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
    let rel = |p: &Pt| sub(p, &sum);
    let mut total = 0i64;
    for (a, b) in facets(points) {
        let on: Vec<usize> = (0..verts.len()).filter(|&i| dot(&a, &verts[i]) == b).collect();
        match d {
            2 => {
                let (p, q) = (rel(&scaled[on[0]]), rel(&scaled[on[1]]));
                total += (p[0] * q[1] - p[1] * q[0]).abs();
            }
            3 => {
                let v0 = on[0];
                let mut rest: Vec<usize> = on[1..].to_vec();
                // angular order around v0 inside the facet plane
                rest.sort_by(|&i, &j| {
                    let s = det3(&a, &sub(&verts[i], &verts[v0]), &sub(&verts[j], &verts[v0]));
                    0.cmp(&s)
                });
                for w in rest.windows(2) {
                    total += det3(&rel(&scaled[v0]), &rel(&scaled[w[0]]), &rel(&scaled[w[1]])).abs();
                }
            }
            _ => unreachable!(),
        }
    }
    let scale = k.pow(d as u32);
    assert_eq!(total % scale, 0, "normalized volume must be an integer");
    total / scale
}

/// Can `z` be written as a sum of `c` points of `base`? Memoized recursive search.
pub fn decomposable(base: &[Pt], z: &Pt, c: usize, memo: &mut HashMap<(Pt, usize), bool>) -> bool {
    if c == 0 {
        return z.iter().all(|&x| x == 0);
    }
    if let Some(&r) = memo.get(&(z.clone(), c)) {
        return r;
    }
    let r = base.iter().any(|x| decomposable(base, &sub(z, x), c - 1, memo));
    memo.insert((z.clone(), c), r);
    r
}

/// Number of lattice points of `cP` that are not sums of `c` lattice points of `P`.
pub fn idp_failures(points: &[Pt], c: i64) -> usize {
    let base = lattice_points(points, 1);
    let mut memo = HashMap::new();
    lattice_points(points, c)
        .iter()
        .filter(|z| !decomposable(&base, z, c as usize, &mut memo))
        .count()
}

pub fn to_polytope(points: &[Pt]) -> Polytope {
    let d = points[0].len();
    Polytope::new(d, points.iter().map(|p| IntegerVector::from_i64s(p)).collect()).unwrap()
}

pub fn to_pts(p: &Polytope) -> Vec<Pt> {
    p.vertices().iter().map(|v| v.to_i64s().unwrap()).collect()
}

fn full_rank(points: &[Pt]) -> bool {
    let d = points[0].len();
    let diffs: Vec<Pt> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    match d {
        2 => diffs.iter().any(|u| diffs.iter().any(|v| u[0] * v[1] - u[1] * v[0] != 0)),
        3 => diffs
            .iter()
            .any(|u| diffs.iter().any(|v| diffs.iter().any(|w| det3(u, v, w) != 0))),
        _ => unreachable!(),
    }
}

/// Full-dimensional point set with coordinates in `[-r, r]`.
pub fn random_points(rng: &mut ChaCha8Rng, d: usize, r: i64, max_points: usize) -> Vec<Pt> {
    loop {
        let n = rng.gen_range(d + 1..=max_points);
        let pts: Vec<Pt> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-r..=r)).collect()).collect();
        if full_rank(&pts) {
            return pts;
        }
    }
}

/// Full-dimensional point set whose hull contains the origin in its interior.
pub fn random_points_around_origin(rng: &mut ChaCha8Rng, d: usize, r: i64, max_points: usize) -> Vec<Pt> {
    loop {
        let pts = random_points(rng, d, r, max_points);
        if facets(&pts).iter().all(|(_, b)| *b > 0) {
            return pts;
        }
    }
}
