//! Single delta / delta-prime point interactions and their matching matrices.
//!
//! A regular interaction `c0 δ(y) + 2 c1 δ'(y)` with `c1 != ±1` is encoded by the
//! lower-triangular Kurasov matrix
//!
//! ```text
//! M = | (1+c1)/(1-c1)        0           |
//!     | c0/(1-c1^2)      (1-c1)/(1+c1)   |
//! ```
//!
//! mapping `(φ(x⁻), φ'(x⁻))` to `(φ(x⁺), φ'(x⁺))`. These matrices form the Borel
//! subgroup of SL2(R); fusing two interactions multiplies their matrices, which
//! induces a non-abelian composition law on the couplings.
//!
//! The values `c1 = ±1` are the decoupling (opaque wall) points. They carry no
//! Kurasov matrix and are stored as distinct [`CouplingKind`]s.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::linalg::Mat2;
use crate::scalar::{half_tanhc, sinhc, Real};

/// Couplings with `|1 - c1^2|` at or below this are rejected as regular.
pub const SINGULARITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CouplingKind {
    Regular,
    /// `c1 = +1`: Dirichlet on the left, Robin on the right.
    DecoupledPlus,
    /// `c1 = -1`: Robin on the left, Dirichlet on the right.
    DecoupledMinus,
}

/// Dimensionless strengths of one point interaction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Couplings<T> {
    c0: T,
    c1: T,
    kind: CouplingKind,
}

impl<T: Real> Couplings<T> {
    pub fn regular(c0: T, c1: T) -> Result<Self> {
        if !c0.is_finite() || !c1.is_finite() {
            return Err(domain("couplings must be finite"));
        }
        if is_singular(c1) {
            return Err(Error::SingularCoupling { c1: c1.as_f64() });
        }
        Ok(Self {
            c0,
            c1,
            kind: CouplingKind::Regular,
        })
    }

    pub fn decoupled_plus(c0: T) -> Self {
        Self {
            c0,
            c1: T::one(),
            kind: CouplingKind::DecoupledPlus,
        }
    }

    pub fn decoupled_minus(c0: T) -> Self {
        Self {
            c0,
            c1: -T::one(),
            kind: CouplingKind::DecoupledMinus,
        }
    }

    /// No interaction at all; the group identity.
    pub fn free() -> Self {
        Self {
            c0: T::zero(),
            c1: T::zero(),
            kind: CouplingKind::Regular,
        }
    }

    /// Delta strength.
    pub fn c0(&self) -> T {
        self.c0
    }

    /// Delta-prime strength; exactly `±1` for the decoupled kinds.
    pub fn c1(&self) -> T {
        self.c1
    }

    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    pub fn is_regular(&self) -> bool {
        self.kind == CouplingKind::Regular
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::SingularCoupling {
                c1: self.c1.as_f64(),
            })
        }
    }
}

fn is_singular<T: Real>(c1: T) -> bool {
    (T::one() - c1 * c1).abs() <= T::lit(SINGULARITY_TOLERANCE)
}

/// Real lower-triangular matching matrix with unit determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KurasovMatrix<T> {
    m: Mat2<T>,
}

impl<T: Real> KurasovMatrix<T> {
    pub fn matrix(&self) -> Mat2<T> {
        self.m
    }

    pub fn det(&self) -> T {
        self.m.det()
    }

    pub fn trace(&self) -> T {
        self.m.trace()
    }

    /// Group product `self · rhs`.
    pub fn product(&self, rhs: &Self) -> Self {
        Self { m: self.m * rhs.m }
    }

    /// Couplings whose matrix this is, when they exist (`m11 != -1`).
    pub fn to_couplings(&self) -> Result<Couplings<T>> {
        let m11 = self.m.at(1, 1);
        if m11 + T::one() == T::zero() {
            return Err(domain("matrix with m11 = -1 has no finite coupling preimage"));
        }
        let c1 = (m11 - T::one()) / (m11 + T::one());
        let c0 = self.m.at(2, 1) * (T::one() - c1 * c1);
        Couplings::regular(c0, c1)
    }
}

pub fn kurasov_matrix<T: Real>(c: &Couplings<T>) -> Result<KurasovMatrix<T>> {
    c.require_regular()?;
    let one = T::one();
    let (c0, c1) = (c.c0, c.c1);
    Ok(KurasovMatrix {
        m: Mat2::new(
            (one + c1) / (one - c1),
            T::zero(),
            c0 / (one - c1 * c1),
            (one - c1) / (one + c1),
        ),
    })
}

/// Couplings of the single interaction equivalent to `first` at a point
/// immediately followed by `second`, i.e. `M_second · M_first`.
pub fn compose<T: Real>(first: &Couplings<T>, second: &Couplings<T>) -> Result<Couplings<T>> {
    first.require_regular()?;
    second.require_regular()?;
    let one = T::one();
    let (v0, v1) = (first.c0, first.c1);
    let (w0, w1) = (second.c0, second.c1);
    let den = one + v1 * w1;
    if den.abs() <= T::lit(SINGULARITY_TOLERANCE) {
        return Err(Error::CompositionSingular {
            denominator: den.as_f64(),
        });
    }
    let u1 = (v1 + w1) / den;
    let u0 = (v0 * (one - w1) * (one - w1) + w0 * (one + v1) * (one + v1)) / (den * den);
    match Couplings::regular(u0, u1) {
        Err(Error::SingularCoupling { .. }) => Err(Error::DecoupledResult),
        other => other,
    }
}

pub fn inverse<T: Real>(c: &Couplings<T>) -> Result<Couplings<T>> {
    c.require_regular()?;
    Couplings::regular(-c.c0, -c.c1)
}

/// `tr M = 2 (1 + c1^2) / (1 - c1^2)`; independent of `c0`.
pub fn trace<T: Real>(c: &Couplings<T>) -> Result<T> {
    c.require_regular()?;
    let c1sq = c.c1 * c.c1;
    Ok(T::lit(2.0) * (T::one() + c1sq) / (T::one() - c1sq))
}

/// The only nonzero entry, `(2,1)`, of `M_a M_b - M_b M_a`.
pub fn commutator_defect<T: Real>(a: &Couplings<T>, b: &Couplings<T>) -> Result<T> {
    a.require_regular()?;
    b.require_regular()?;
    let one = T::one();
    Ok(T::lit(4.0) * (a.c0 * b.c1 - b.c0 * a.c1)
        / ((one - a.c1 * a.c1) * (one - b.c1 * b.c1)))
}

/// Connected component of the Borel group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// Positive diagonal, contains the identity.
    Plus,
    /// Negative diagonal.
    Minus,
}

impl Component {
    fn times(self, other: Self) -> Self {
        if self == other {
            Component::Plus
        } else {
            Component::Minus
        }
    }
}

/// Lie-group coordinates: the element is `±exp(α h + β f)` with
/// `h = diag(1, -1)` and `f` the lower nilpotent generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BorelParams<T> {
    pub alpha: T,
    pub beta: T,
    pub component: Component,
}

impl<T: Real> BorelParams<T> {
    pub fn new(alpha: T, beta: T, component: Component) -> Self {
        Self {
            alpha,
            beta,
            component,
        }
    }

    /// `±[[e^α, 0], [β sinh(α)/α, e^{-α}]]`.
    pub fn matrix(&self) -> Result<Mat2<T>> {
        if self.alpha.abs() > T::lit(700.0) {
            return Err(Error::Overflow {
                exponent: self.alpha.as_f64(),
            });
        }
        let m = Mat2::new(
            self.alpha.exp(),
            T::zero(),
            self.beta * sinhc(self.alpha),
            (-self.alpha).exp(),
        );
        Ok(match self.component {
            Component::Plus => m,
            Component::Minus => -m,
        })
    }
}

pub fn exp_map<T: Real>(p: &BorelParams<T>) -> Result<Couplings<T>> {
    let half = p.alpha / T::lit(2.0);
    match p.component {
        Component::Plus => {
            // v0 = 2 (β/α) tanh(α/2)
            Couplings::regular(p.beta * half_tanhc(p.alpha), half.tanh())
        }
        Component::Minus => {
            if p.alpha == T::zero() {
                return Err(domain("alpha = 0 on the minus component (coth singularity)"));
            }
            let coth = half.tanh().recip();
            Couplings::regular(T::lit(2.0) * p.beta / p.alpha * coth, coth)
        }
    }
}

pub fn log_map<T: Real>(c: &Couplings<T>) -> Result<BorelParams<T>> {
    c.require_regular()?;
    let two = T::lit(2.0);
    if c.c1.abs() < T::one() {
        let alpha = two * c.c1.atanh();
        Ok(BorelParams::new(
            alpha,
            c.c0 / half_tanhc(alpha),
            Component::Plus,
        ))
    } else {
        let alpha = two * c.c1.recip().atanh();
        Ok(BorelParams::new(
            alpha,
            alpha * c.c0 / (two * c.c1),
            Component::Minus,
        ))
    }
}

/// Parameters of the matrix product `exp(p1) · exp(p2)`.
///
/// In coupling language this is `compose(exp_map(p2), exp_map(p1))`, since the
/// left factor acts last.
pub fn compose_params<T: Real>(p1: &BorelParams<T>, p2: &BorelParams<T>) -> Result<BorelParams<T>> {
    let alpha = p1.alpha + p2.alpha;
    for a in [p1.alpha, p2.alpha, alpha] {
        if a.abs() > T::lit(700.0) {
            return Err(Error::Overflow {
                exponent: a.as_f64(),
            });
        }
    }
    let beta = (p2.alpha.exp() * p1.beta * sinhc(p1.alpha)
        + (-p1.alpha).exp() * p2.beta * sinhc(p2.alpha))
        / sinhc(alpha);
    Ok(BorelParams::new(
        alpha,
        beta,
        p1.component.times(p2.component),
    ))
}

/// Unitary boundary matrix of the von Neumann description of the interaction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryUnitary<T> {
    u: Mat2<Complex<T>>,
}

/// Which side of the support point a boundary condition lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One-sided condition `value · φ + derivative · φ' = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideCondition<T> {
    pub side: Side,
    pub value: Complex<T>,
    pub derivative: Complex<T>,
}

impl<T: Real> SideCondition<T> {
    /// True when the condition is `φ = 0` up to `tol`.
    pub fn is_dirichlet(&self, tol: T) -> bool {
        self.derivative.norm() <= tol * self.value.norm()
    }

    /// `ρ` in the normalised Robin form `φ + ρ φ' = 0`.
    pub fn robin_coefficient(&self) -> Complex<T> {
        self.derivative / self.value
    }
}

impl<T: Real> BoundaryUnitary<T> {
    pub fn matrix(&self) -> Mat2<Complex<T>> {
        self.u
    }

    /// `‖U†U - 1‖` as the largest absolute row sum.
    pub fn unitarity_defect(&self) -> T {
        let adj = Mat2::new(
            self.u.m[0][0].conj(),
            self.u.m[1][0].conj(),
            self.u.m[0][1].conj(),
            self.u.m[1][1].conj(),
        );
        let d = (adj * self.u).sub(&Mat2::identity());
        d.m.iter()
            .map(|row| row[0].norm() + row[1].norm())
            .fold(T::zero(), T::max)
    }

    /// Rows of the linear boundary system in the unknowns
    /// `(φ(x⁻), φ'(x⁻), φ(x⁺), φ'(x⁺))`.
    ///
    /// The system reads
    /// `(φ⁻ - iφ'⁻, φ⁺ + iφ'⁺) = U (φ⁺ - iφ'⁺, φ⁻ + iφ'⁻)`.
    pub fn boundary_relations(&self) -> [[Complex<T>; 4]; 2] {
        let i = Complex::i();
        let z = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let lhs = [[one, -i, z, z], [z, z, one, i]];
        let rhs = [[z, z, one, -i], [one, i, z, z]];
        let mut rows = [[z; 4]; 2];
        for (r, row) in rows.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                *entry = lhs[r][col] - self.u.m[r][0] * rhs[0][col] - self.u.m[r][1] * rhs[1][col];
            }
        }
        rows
    }

    /// When every boundary relation involves a single side, returns the two
    /// one-sided conditions (left first). `None` for transmitting interactions.
    pub fn side_conditions(&self, tol: T) -> Option<[SideCondition<T>; 2]> {
        let rows = self.boundary_relations();
        let mut left = None;
        let mut right = None;
        for row in rows {
            let lnorm = row[0].norm() + row[1].norm();
            let rnorm = row[2].norm() + row[3].norm();
            let scale = lnorm + rnorm;
            if rnorm <= tol * scale {
                left = Some(SideCondition {
                    side: Side::Left,
                    value: row[0],
                    derivative: row[1],
                });
            } else if lnorm <= tol * scale {
                right = Some(SideCondition {
                    side: Side::Right,
                    value: row[2],
                    derivative: row[3],
                });
            } else {
                return None;
            }
        }
        Some([left?, right?])
    }
}

/// Cayley transform `g = [[1, -i], [1, i]]` taking `(φ, φ')` to
/// `(φ - iφ', φ + iφ')`.
pub fn cayley<T: Real>() -> Mat2<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::i();
    Mat2::new(one, -i, one, i)
}

/// `W = g M g⁻¹`, the SU(1,1) image of the Kurasov matrix.
pub fn su11_matrix<T: Real>(c: &Couplings<T>) -> Result<Mat2<Complex<T>>> {
    let m = kurasov_matrix(c)?.matrix().map(|x| Complex::new(x, T::zero()));
    let g = cayley::<T>();
    let g_inv = g.inverse().expect("cayley matrix is invertible");
    Ok(g * m * g_inv)
}

pub fn to_boundary_unitary<T: Real>(c: &Couplings<T>) -> BoundaryUnitary<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let minus_one = Complex::new(-T::one(), T::zero());
    let four = T::lit(4.0);
    let phase = Complex::new(four, c.c0) / Complex::new(four, -c.c0);
    let u = match c.kind {
        CouplingKind::DecoupledPlus => Mat2::new(zero, minus_one, phase, zero),
        CouplingKind::DecoupledMinus => Mat2::new(zero, phase, minus_one, zero),
        CouplingKind::Regular => {
            let two = T::lit(2.0);
            let c1sq = c.c1 * c.c1;
            let d = two * (T::one() - c1sq);
            let pref = Complex::new(d, T::zero()) / Complex::new(two * (T::one() + c1sq), -c.c0);
            let one = Complex::new(T::one(), T::zero());
            let u12 = Complex::new(-four * c.c1, c.c0) / d;
            let u21 = Complex::new(four * c.c1, c.c0) / d;
            Mat2::new(one, u12, u21, one).scale(pref)
        }
    };
    BoundaryUnitary { u }
}
