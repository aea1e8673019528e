//! Split octonions by doubling the split quaternions `M_2(Q)`.
//!
//! An element is `(a, b)` with `a, b` 2x2 matrices, stored as eight
//! coordinates `[a11, a12, a21, a22, b11, b12, b21, b22]`.
//! `(a, b)(c, d) = (ac + d~ b, d a + b c~)` where `~` is the adjugate, the
//! conjugate is `(a~, -b)` and the norm `det a - det b`.

use crate::linalg::Q;
use num_traits::Zero;

pub type Octonion = [Q; 8];

type M2 = [Q; 4];

fn m_mul(x: &M2, y: &M2) -> M2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn adj(x: &M2) -> M2 {
    [x[3], -x[1], -x[2], x[0]]
}

fn det(x: &M2) -> Q {
    x[0] * x[3] - x[1] * x[2]
}

fn halves(x: &Octonion) -> (M2, M2) {
    ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]])
}

fn join(a: M2, b: M2) -> Octonion {
    [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]]
}

pub fn zero() -> Octonion {
    [Q::zero(); 8]
}

pub fn unit(i: usize) -> Octonion {
    let mut o = zero();
    o[i] = Q::from_integer(1);
    o
}

pub fn mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (a, b) = halves(x);
    let (c, d) = halves(y);
    let l = m_mul(&a, &c);
    let l2 = m_mul(&adj(&d), &b);
    let r = m_mul(&d, &a);
    let r2 = m_mul(&b, &adj(&c));
    join(
        [l[0] + l2[0], l[1] + l2[1], l[2] + l2[2], l[3] + l2[3]],
        [r[0] + r2[0], r[1] + r2[1], r[2] + r2[2], r[3] + r2[3]],
    )
}

pub fn conj(x: &Octonion) -> Octonion {
    let (a, b) = halves(x);
    join(adj(&a), [-b[0], -b[1], -b[2], -b[3]])
}

pub fn norm(x: &Octonion) -> Q {
    let (a, b) = halves(x);
    det(&a) - det(&b)
}

/// `c + c~` as a scalar.
pub fn trace(x: &Octonion) -> Q {
    x[0] + x[3]
}

pub fn add(x: &Octonion, y: &Octonion) -> Octonion {
    std::array::from_fn(|i| x[i] + y[i])
}
