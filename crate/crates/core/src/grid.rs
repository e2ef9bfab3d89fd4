//! Deterministic evaluation grids on balls of R^{n+1}: a Halton
//! low-discrepancy sweep plus structured axis/diagonal points. The seed
//! offsets the Halton index stream, so a fixed (n, R, count, seed) always
//! produces the same points in the same order.

use crate::clifford::Paravector;

const PRIMES: [u32; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

/// Radical-inverse (van der Corput) value of `index` in the given base.
pub fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base as u64) as f64 * inv;
        index /= base as u64;
        inv /= b;
    }
    out
}

/// Halton point #index in [0,1)^d.
pub fn halton(index: u64, d: usize) -> Vec<f64> {
    (0..d).map(|k| radical_inverse(index, PRIMES[k])).collect()
}

/// `count` Halton points mapped into the closed ball |x| <= radius of
/// R^{n+1}; cube points outside the ball project radially onto the sphere,
/// which keeps the boundary well covered.
pub fn halton_ball(n: usize, radius: f64, count: usize, seed: u64) -> Vec<Paravector<f64>> {
    let d = n + 1;
    (0..count)
        .map(|i| {
            let u = halton(seed + 1 + i as u64, d);
            let y: Vec<f64> = u.iter().map(|v| 2.0 * v - 1.0).collect();
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let scale = if norm > 1.0 { radius / norm } else { radius };
            Paravector::new(scale * y[0], y[1..].iter().map(|v| scale * v).collect())
        })
        .collect()
}

/// 64 structured points: the origin, +-axis points and +-diagonals at a
/// ladder of radii, cycled until the budget is filled.
pub fn structured_points(n: usize, radius: f64) -> Vec<Paravector<f64>> {
    let mut pts = Vec::with_capacity(64);
    pts.push(Paravector::zero(n));
    let radii = [radius, radius / 2.0, radius / 4.0, 3.0 * radius / 4.0];
    let diag = 1.0 / ((n + 1) as f64).sqrt();
    'outer: for &r in &radii {
        for axis in 0..=n {
            for sign in [1.0, -1.0] {
                let mut p = Paravector::zero(n);
                if axis == 0 {
                    p.x0 = sign * r;
                } else {
                    p.xv[axis - 1] = sign * r;
                }
                pts.push(p);
                if pts.len() == 64 {
                    break 'outer;
                }
            }
        }
        for sign in [1.0, -1.0] {
            let p = Paravector::new(sign * r * diag, vec![sign * r * diag; n]);
            pts.push(p);
            if pts.len() == 64 {
                break 'outer;
            }
        }
    }
    let mut extra = 0u64;
    while pts.len() < 64 {
        // top up from a fixed secondary Halton stream on the sphere
        let u = halton(1000 + extra, n + 1);
        let y: Vec<f64> = u.iter().map(|v| 2.0 * v - 1.0).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
        pts.push(Paravector::new(
            radius * y[0] / norm,
            y[1..].iter().map(|v| radius * v / norm).collect(),
        ));
        extra += 1;
    }
    pts
}

/// The standard experiment grid: `count` Halton points plus the 64
/// structured points.
pub fn ball_grid(n: usize, radius: f64, count: usize, seed: u64) -> Vec<Paravector<f64>> {
    let mut pts = halton_ball(n, radius, count, seed);
    pts.extend(structured_points(n, radius));
    pts
}
