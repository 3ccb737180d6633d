//! Independent intersection-ring oracle for P^1-bundles over a surface,
//! used to derive and freeze expected values. It expands triple products
//! directly from the relation `y^2 = -omega . y` and the surface pairing,
//! sharing no code with the bundle construction it checks.

use num::bigint::BigInt;

/// A degree-two class `f* base + fiber . y` on the bundle, with `base`
/// written in the surface working basis.
#[derive(Clone)]
pub struct RingClass {
    pub base: Vec<i64>,
    pub fiber: i64,
}

impl RingClass {
    pub fn new(base: &[i64], fiber: i64) -> Self {
        RingClass {
            base: base.to_vec(),
            fiber,
        }
    }
}

fn dot(pairing: &[Vec<i64>], a: &[i64], b: &[i64]) -> i128 {
    let mut acc: i128 = 0;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            acc += *ai as i128 * pairing[i][j] as i128 * *bj as i128;
        }
    }
    acc
}

/// Triple intersection number on `P(L + O) -> S` with `c1(L) = omega`:
/// fully expanded form of
/// `(f*a1 + b1 y)(f*a2 + b2 y)(f*a3 + b3 y)` using
/// `f*a f*b f*c = 0`, `f*a f*b y = a.b`, `f*a y^2 = -(a.omega)` and
/// `y^3 = omega.omega`.
pub fn triple(
    pairing: &[Vec<i64>],
    omega: &[i64],
    x: &RingClass,
    y: &RingClass,
    z: &RingClass,
) -> BigInt {
    let (b1, b2, b3) = (x.fiber as i128, y.fiber as i128, z.fiber as i128);
    let value = b1 * dot(pairing, &y.base, &z.base)
        + b2 * dot(pairing, &x.base, &z.base)
        + b3 * dot(pairing, &x.base, &y.base)
        - b1 * b2 * dot(pairing, omega, &z.base)
        - b1 * b3 * dot(pairing, omega, &y.base)
        - b2 * b3 * dot(pairing, omega, &x.base)
        + b1 * b2 * b3 * dot(pairing, omega, omega);
    BigInt::from(value)
}

/// Value of `p1 = c1^2 - 2 c2` on a degree-two class, computed in the
/// oracle ring: `c1 = f*(c1S + omega) + 2y` and
/// `c2 = f*c2(S) + f*c1(S) (2y + omega)` with `c2(S)` the Euler number.
pub fn p1_value(
    pairing: &[Vec<i64>],
    omega: &[i64],
    c1s: &[i64],
    euler: i64,
    w: &RingClass,
) -> BigInt {
    let u: Vec<i64> = c1s.iter().zip(omega).map(|(a, b)| a + b).collect();
    let c1 = RingClass::new(&u, 2);
    let c1_sq_w = triple(pairing, omega, &c1, &c1, w);
    // c2 . w = euler * fiber(w) + [f*c1S (2y + f*omega)] . w
    let c2_w = BigInt::from(euler as i128 * w.fiber as i128)
        + triple(
            pairing,
            omega,
            &RingClass::new(c1s, 0),
            &RingClass::new(omega, 2),
            w,
        );
    c1_sq_w - BigInt::from(2) * c2_w
}

/// `c1^3` of the bundle in the oracle ring.
pub fn c1_cubed(pairing: &[Vec<i64>], omega: &[i64], c1s: &[i64]) -> BigInt {
    let u: Vec<i64> = c1s.iter().zip(omega).map(|(a, b)| a + b).collect();
    let c1 = RingClass::new(&u, 2);
    triple(pairing, omega, &c1, &c1, &c1)
}

/// `c1 c2` of the bundle in the oracle ring, via
/// `c1 c2 = (c1^3 - p1 . c1) / 2`.
pub fn c1c2(pairing: &[Vec<i64>], omega: &[i64], c1s: &[i64], euler: i64) -> BigInt {
    let u: Vec<i64> = c1s.iter().zip(omega).map(|(a, b)| a + b).collect();
    let c1 = RingClass::new(&u, 2);
    let cube = c1_cubed(pairing, omega, c1s);
    let p1c1 = p1_value(pairing, omega, c1s, euler, &c1);
    (cube - p1c1) / BigInt::from(2)
}
