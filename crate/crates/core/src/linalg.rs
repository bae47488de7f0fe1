//! Minimal 2x2 matrix over any numeric ring (real scalars or complex numbers).

use std::ops::{Mul, Neg};

use num_traits::Num;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<S> {
    pub m: [[S; 2]; 2],
}

impl<S: Copy + Num> Mat2<S> {
    pub fn new(m11: S, m12: S, m21: S, m22: S) -> Self {
        Self {
            m: [[m11, m12], [m21, m22]],
        }
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn diag(a: S, d: S) -> Self {
        Self::new(a, S::zero(), S::zero(), d)
    }

    /// Entry at one-based `(row, col)`, matching the usual `M^{ij}` notation.
    pub fn at(&self, row: usize, col: usize) -> S {
        self.m[row - 1][col - 1]
    }

    pub fn det(&self) -> S {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> S {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, s: S) -> Self {
        self.map(|x| x * s)
    }

    pub fn map<R: Copy + Num>(&self, f: impl Fn(S) -> R) -> Mat2<R> {
        Mat2::new(
            f(self.m[0][0]),
            f(self.m[0][1]),
            f(self.m[1][0]),
            f(self.m[1][1]),
        )
    }

    /// Inverse through the adjugate; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == S::zero() {
            return None;
        }
        let [[a, b], [c, d]] = self.m;
        Some(Self::new(
            d / det,
            S::zero() - b / det,
            S::zero() - c / det,
            a / det,
        ))
    }

    pub fn apply(&self, x: [S; 2]) -> [S; 2] {
        [
            self.m[0][0] * x[0] + self.m[0][1] * x[1],
            self.m[1][0] * x[0] + self.m[1][1] * x[1],
        ]
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.m[0][0] - other.m[0][0],
            self.m[0][1] - other.m[0][1],
            self.m[1][0] - other.m[1][0],
            self.m[1][1] - other.m[1][1],
        )
    }
}

impl<S: Copy + Num> Mul for Mat2<S> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<S: Copy + Num + Neg<Output = S>> Neg for Mat2<S> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}
