//! Lattice points on `nx - my = r` inside the rectangle `[0,m] x [0,n]`.

use num_integer::Integer;

use crate::{Error, Result};

/// Extended Euclid: returns `(g, u, v)` with `a*u + b*v = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `modulus`; the ring with one element maps everything to 0.
pub fn mod_inverse(a: i64, modulus: i64) -> Option<i64> {
    if modulus == 1 {
        return Some(0);
    }
    let (g, u, _) = ext_gcd(a.rem_euclid(modulus), modulus);
    (g == 1).then(|| u.rem_euclid(modulus))
}

/// Solution structure of `nx - my = r` restricted to the rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSolutions {
    pub m: usize,
    pub n: usize,
    pub r: i64,
    pub d: usize,
    /// The integer solution with the least nonnegative `y`, if any solution exists.
    pub base: Option<(i64, i64)>,
    /// Difference between consecutive solutions: `(m/d, n/d)`.
    pub step: (i64, i64),
    /// Number of solutions in the rectangle.
    pub alpha: usize,
    /// The rectangle solutions in increasing `x`.
    pub points: Vec<(usize, usize)>,
}

fn check_grid(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySample { m, n });
    }
    Ok(())
}

/// Solves `nx - my = r` via extended Euclid and walks the solution family
/// through the rectangle.
pub fn solve_line(m: usize, n: usize, r: i64) -> Result<LineSolutions> {
    check_grid(m, n)?;
    let (mi, ni) = (m as i64, n as i64);
    let (d, u, v) = ext_gcd(ni, mi);
    let step = (mi / d, ni / d);
    let mut sol = LineSolutions {
        m,
        n,
        r,
        d: d as usize,
        base: None,
        step,
        alpha: 0,
        points: Vec::new(),
    };
    if r % d != 0 {
        return Ok(sol);
    }
    // n*u + m*v = d, so (u, -v) * (r/d) solves nx - my = r.
    let k = r / d;
    let (x, y) = (u * k, -v * k);
    let shift = y.div_euclid(step.1);
    let base = (x - shift * step.0, y - shift * step.1);
    sol.base = Some(base);

    let (mut x, mut y) = base;
    while y <= ni {
        if (0..=mi).contains(&x) {
            sol.points.push((x as usize, y as usize));
        }
        x += step.0;
        y += step.1;
    }
    sol.alpha = sol.points.len();
    Ok(sol)
}

/// Number of solutions of `nx - my = r` with `0 <= x <= m`, `0 <= y <= n`,
/// by the closed form `d + 1 - ceil((p + a) / (m/d))`.
///
/// The closed form assumes `m >= n`; the count is invariant under the
/// transpose `(x, y) -> (n - y, m - x)`, so the arguments are swapped when needed.
pub fn alpha(m: usize, n: usize, r: i64) -> Result<usize> {
    check_grid(m, n)?;
    let nm = (m * n) as i64;
    if !(0..=nm).contains(&r) {
        return Err(Error::Range {
            name: "r",
            value: r,
            low: 0,
            high: nm,
        });
    }
    let (big, small) = if m >= n {
        (m as i64, n as i64)
    } else {
        (n as i64, m as i64)
    };
    let d = big.gcd(&small);
    if r % d != 0 {
        return Ok(0);
    }
    let (mp, np) = (big / d, small / d);
    let p = r / small;
    let inv = mod_inverse(np, mp).expect("m/d and n/d are coprime");
    let a = ((r - small * p) / d * inv).rem_euclid(mp);
    let count = d + 1 - Integer::div_ceil(&(p + a), &mp);
    Ok(count.max(0) as usize)
}

/// `s_k`: how many attainable `r` in `(0, nm]` carry exactly `k` rectangle points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    /// `s[k]` for `k = 0..=d`.
    pub s: Vec<u64>,
}

impl Spectrum {
    /// `sum_k s_k`, the number of multiples of `d` in `(0, nm]`.
    pub fn total(&self) -> u64 {
        self.s.iter().sum()
    }

    /// `sum_k k s_k`, the number of rectangle points strictly below the main diagonal line.
    pub fn weighted_total(&self) -> u64 {
        self.s.iter().enumerate().map(|(k, &c)| k as u64 * c).sum()
    }
}

/// The spectrum by its closed forms.
pub fn spectrum(m: usize, n: usize) -> Result<Spectrum> {
    check_grid(m, n)?;
    let (mu, nu) = (m as u64, n as u64);
    let d = mu.gcd(&nu);
    let nm = mu * nu;
    let dd = d * d;
    let mut s = vec![0u64; d as usize + 1];
    for slot in s.iter_mut().take(d as usize).skip(1) {
        *slot = nm / dd;
    }
    s[0] = (nm + dd - (nu + mu) * d) / (2 * dd);
    s[d as usize] = (nm + (nu + mu) * d - dd) / (2 * dd);
    Ok(Spectrum {
        m,
        n,
        d: d as usize,
        s,
    })
}

/// The spectrum by tallying `alpha` over the multiples of `d` in `(0, nm]`.
pub fn tally_spectrum(m: usize, n: usize) -> Result<Spectrum> {
    check_grid(m, n)?;
    let d = m.gcd(&n);
    let mut s = vec![0u64; d + 1];
    for r in (d..=m * n).step_by(d) {
        let k = alpha(m, n, r as i64)?;
        if k >= s.len() {
            s.resize(k + 1, 0);
        }
        s[k] += 1;
    }
    Ok(Spectrum { m, n, d, s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(m: usize, n: usize, r: i64) -> usize {
        (0..=m)
            .flat_map(|x| (0..=n).map(move |y| (x, y)))
            .filter(|&(x, y)| n as i64 * x as i64 - m as i64 * y as i64 == r)
            .count()
    }

    #[test]
    fn ext_gcd_identity() {
        for a in 1..30 {
            for b in 1..30 {
                let (g, u, v) = ext_gcd(a, b);
                assert_eq!(g, a.gcd(&b));
                assert_eq!(a * u + b * v, g);
            }
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(3, 5), Some(2));
        assert_eq!(mod_inverse(1, 2), Some(1));
        assert_eq!(mod_inverse(7, 1), Some(0));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn solve_line_examples() {
        let s = solve_line(4, 2, 1).unwrap();
        assert_eq!(s.base, None);
        assert_eq!(s.alpha, 0);

        let s = solve_line(4, 2, 2).unwrap();
        assert!(s.base.is_some());
        assert_eq!(s.step, (2, 1));
        assert_eq!(s.points, vec![(1, 0), (3, 1)]);

        let s = solve_line(6, 4, 0).unwrap();
        assert_eq!(s.base, Some((0, 0)));
        assert_eq!(s.points, vec![(0, 0), (3, 2), (6, 4)]);
    }

    #[test]
    fn solve_line_invariants() {
        for m in 1..=8 {
            for n in 1..=8 {
                for r in -(m as i64 * n as i64)..=(m * n) as i64 + 3 {
                    let s = solve_line(m, n, r).unwrap();
                    assert_eq!(s.base.is_none(), r % s.d as i64 != 0);
                    for &(x, y) in &s.points {
                        assert_eq!(n as i64 * x as i64 - m as i64 * y as i64, r);
                    }
                    for w in s.points.windows(2) {
                        assert_eq!(
                            (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64),
                            s.step
                        );
                    }
                    assert!(s.alpha <= s.d + 1);
                    assert_eq!(s.alpha, brute(m, n, r));
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(4, 2, 2).unwrap(), 2);
        assert_eq!(alpha(5, 3, 1).unwrap(), 1);
        assert_eq!(alpha(5, 3, 14).unwrap(), 0);
        assert_eq!(alpha(4, 2, 1).unwrap(), 0);
        assert_eq!(alpha(6, 4, 0).unwrap(), 3);
        assert!(matches!(alpha(4, 2, 9), Err(Error::Range { .. })));
        assert!(matches!(alpha(4, 2, -2), Err(Error::Range { .. })));
    }

    #[test]
    fn alpha_matches_brute_force() {
        for m in 1..=12 {
            for n in 1..=12 {
                for r in 0..=(m * n) as i64 {
                    assert_eq!(alpha(m, n, r).unwrap(), brute(m, n, r), "({m},{n},{r})");
                }
                assert_eq!(alpha(m, n, 0).unwrap(), m.gcd(&n) + 1);
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(4, 2).unwrap().s, vec![0, 2, 2]);
        assert_eq!(spectrum(6, 4).unwrap().s, vec![1, 6, 5]);
        assert_eq!(spectrum(5, 3).unwrap().s, vec![4, 11]);
        for (m, n) in [(4, 2), (6, 4), (5, 3)] {
            assert_eq!(spectrum(m, n).unwrap(), tally_spectrum(m, n).unwrap());
        }
    }
}
