//! Shared corpus builders and independent oracles for the integration suites.
#![allow(dead_code)]

use ellarr::random::random_matrix_with;
use ellarr::{CurveParams, EllipticArrangement, FieldParams, IntMatrix, RingMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn curve(m: i64, a: i64, b: i64, c: i64) -> CurveParams {
    CurveParams::new(FieldParams::new(m).unwrap(), a, b, c).unwrap()
}

pub fn sqrt_minus_three() -> CurveParams {
    curve(3, -1, 2, 1)
}

pub fn omega_curve() -> CurveParams {
    curve(3, 0, 1, 1)
}

/// The column (2; 1 + sqrt(-3)) over Z[sqrt(-3)].
pub fn column_sqrt3() -> EllipticArrangement {
    let a = RingMatrix::from_coords(sqrt_minus_three(), &[vec![(2, 0)], vec![(1, 1)]], 1).unwrap();
    EllipticArrangement::new(a).unwrap()
}

/// The same column over Z[omega], where 1 + sqrt(-3) = 2 omega.
pub fn column_omega() -> EllipticArrangement {
    let a = RingMatrix::from_coords(omega_curve(), &[vec![(2, 0)], vec![(0, 2)]], 1).unwrap();
    EllipticArrangement::new(a).unwrap()
}

/// Curves whose index `N` is 1, 4 or 9, over several fields and conductors.
pub fn corpus_curves() -> Vec<CurveParams> {
    vec![
        curve(3, -1, 2, 1), // sqrt(-3), N = 1, conductor 2
        curve(3, 0, 1, 1),  // omega, N = 1, conductor 1
        curve(1, 0, 1, 1),  // i
        curve(2, 0, 1, 1),  // sqrt(-2)
        curve(5, 0, 1, 1),  // sqrt(-5), maximal but not a PID
        curve(1, 0, 2, 1),  // 2i, N = 1, conductor 2
        curve(1, 0, 1, 2),  // i/2, N = 4
        curve(3, 0, 1, 2),  // omega/2, N = 4
        curve(1, 1, 2, 2),  // (1 + 2i)/2, N = 4
        curve(1, 0, 1, 3),  // i/3, N = 9
        curve(3, 0, 1, 3),  // omega/3, N = 9
        curve(1, 1, 1, 3),  // (1 + i)/3, N = 9
    ]
}

/// Seeded random matrices with `k, n <= max_dim` and coordinates in `[-bound, bound]`.
pub fn random_matrices(count: usize, max_dim: usize, bound: u32, seed: u64) -> Vec<RingMatrix> {
    let curves = corpus_curves();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = &curves[rng.gen_range(0..curves.len())];
            let k = rng.gen_range(1..=max_dim);
            let n = rng.gen_range(1..=max_dim);
            random_matrix_with(&mut rng, c, k, n, bound).unwrap()
        })
        .collect()
}

/// Seeded random arrangements with `k <= max_k` and `n <= max_n`.
pub fn random_arrangements(
    count: usize,
    max_k: usize,
    max_n: usize,
    bound: u32,
    seed: u64,
) -> Vec<EllipticArrangement> {
    let curves = corpus_curves();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = &curves[rng.gen_range(0..curves.len())];
            let k = rng.gen_range(1..=max_k);
            let n = rng.gen_range(1..=max_n);
            EllipticArrangement::new(random_matrix_with(&mut rng, c, k, n, bound).unwrap()).unwrap()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Oracle: membership of multiples of tau in the lattice <1, tau>, over exact rationals.
// ---------------------------------------------------------------------------

type Q = Ratio<BigInt>;

/// `p + q sqrt(-m)` with rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElem {
    p: Q,
    q: Q,
}

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

impl FieldElem {
    fn mul(&self, rhs: &FieldElem, m: i64) -> FieldElem {
        FieldElem {
            p: &self.p * &rhs.p - q(m) * &self.q * &rhs.q,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }
}

/// `tau = (a + b omega) / c` with omega chosen by `m mod 4`.
pub fn tau_elem(m: i64, a: i64, b: i64, c: i64) -> FieldElem {
    let (wp, wq) = if m % 4 == 3 { (Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into())) } else { (q(0), q(1)) };
    FieldElem { p: (q(a) + q(b) * wp) / q(c), q: q(b) * wq / q(c) }
}

/// Coordinates `(u, v)` with `value = u + v tau`.
fn lattice_coords(value: &FieldElem, tau: &FieldElem) -> (Q, Q) {
    let v = &value.q / &tau.q;
    let u = &value.p - &v * &tau.p;
    (u, v)
}

fn in_lattice(value: &FieldElem, tau: &FieldElem) -> bool {
    let (u, v) = lattice_coords(value, tau);
    u.is_integer() && v.is_integer()
}

/// Least `k >= 1` such that `k tau` maps the lattice `<1, tau>` into itself, found by
/// trying every `k` in turn.
pub fn brute_force_index(m: i64, a: i64, b: i64, c: i64) -> i64 {
    let tau = tau_elem(m, a, b, c);
    let tau_sq = tau.mul(&tau, m);
    for k in 1.. {
        let k_tau = FieldElem { p: q(k) * &tau.p, q: q(k) * &tau.q };
        let k_tau_sq = FieldElem { p: q(k) * &tau_sq.p, q: q(k) * &tau_sq.q };
        if in_lattice(&k_tau, &tau) && in_lattice(&k_tau_sq, &tau) {
            return k;
        }
    }
    unreachable!()
}

// ---------------------------------------------------------------------------
// Oracle: determinantal divisors by exhaustive minor enumeration.
// ---------------------------------------------------------------------------

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(rank, gcd of all rank x rank minors)`, with the rank taken as the largest size of a
/// non-vanishing minor.
pub fn minor_oracle(matrix: &IntMatrix) -> (usize, BigInt) {
    let top = matrix.rows().min(matrix.cols());
    for r in (1..=top).rev() {
        let mut g = BigInt::zero();
        for rows in combinations(matrix.rows(), r) {
            for cols in combinations(matrix.cols(), r) {
                let sub: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| matrix[(i, j)].clone()).collect()).collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        if !g.is_zero() {
            return (r, g.abs());
        }
    }
    (0, BigInt::one())
}
