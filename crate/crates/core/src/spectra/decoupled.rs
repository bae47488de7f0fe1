//! Spectra when at least one interaction sits at a decoupling point `c1 = ±1`.
//!
//! With two opaque walls the interval `[0, q]` is closed and carries a real
//! ladder of levels. With one wall the exterior side keeps a purely outgoing
//! condition and the spectrum consists of complex poles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use super::solver::{newton, search, Evaluation, SolverConfig, ZeroSearch};
use super::{SpectralKind, SpectralPoint};
use crate::error::{domain, Error, Result};
use crate::kurasov::{CouplingKind, Couplings};
use crate::scalar::Real;

/// `P` stands for `c1 = +1`, `M` for `c1 = -1`, `Reg` for a regular coupling;
/// the first letter refers to the interaction at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecouplingTag {
    PP,
    PM,
    MP,
    MM,
    PReg,
    MReg,
    RegP,
    RegM,
}

impl DecouplingTag {
    pub const ALL: [DecouplingTag; 8] = [
        DecouplingTag::PP,
        DecouplingTag::PM,
        DecouplingTag::MP,
        DecouplingTag::MM,
        DecouplingTag::PReg,
        DecouplingTag::MReg,
        DecouplingTag::RegP,
        DecouplingTag::RegM,
    ];

    pub fn is_double(&self) -> bool {
        matches!(self, DecouplingTag::PP | DecouplingTag::PM | DecouplingTag::MP | DecouplingTag::MM)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DecouplingTag::PP => "PP",
            DecouplingTag::PM => "PM",
            DecouplingTag::MP => "MP",
            DecouplingTag::MM => "MM",
            DecouplingTag::PReg => "PReg",
            DecouplingTag::MReg => "MReg",
            DecouplingTag::RegP => "RegP",
            DecouplingTag::RegM => "RegM",
        }
    }

    fn from_kinds(v: CouplingKind, w: CouplingKind) -> Option<Self> {
        use CouplingKind::*;
        Some(match (v, w) {
            (DecoupledPlus, DecoupledPlus) => DecouplingTag::PP,
            (DecoupledPlus, DecoupledMinus) => DecouplingTag::PM,
            (DecoupledMinus, DecoupledPlus) => DecouplingTag::MP,
            (DecoupledMinus, DecoupledMinus) => DecouplingTag::MM,
            (DecoupledPlus, Regular) => DecouplingTag::PReg,
            (DecoupledMinus, Regular) => DecouplingTag::MReg,
            (Regular, DecoupledPlus) => DecouplingTag::RegP,
            (Regular, DecoupledMinus) => DecouplingTag::RegM,
            (Regular, Regular) => return None,
        })
    }
}

impl fmt::Display for DecouplingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecouplingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecouplingTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown decoupling case '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecouplingCase<T> {
    tag: DecouplingTag,
    v: Couplings<T>,
    w: Couplings<T>,
    q: T,
}

impl<T: Real> DecouplingCase<T> {
    /// `v` at the origin, `w` at `q >= 0`; at least one must be decoupled.
    pub fn new(v: Couplings<T>, w: Couplings<T>, q: T) -> Result<Self> {
        if !(q.is_finite() && q >= T::zero()) {
            return Err(domain("separation must be finite and non-negative"));
        }
        let tag = DecouplingTag::from_kinds(v.kind(), w.kind())
            .ok_or_else(|| domain("no decoupled interaction; use the regular spectrum solver"))?;
        Ok(Self { tag, v, w, q })
    }

    pub fn tag(&self) -> DecouplingTag {
        self.tag
    }

    pub fn v(&self) -> Couplings<T> {
        self.v
    }

    pub fn w(&self) -> Couplings<T> {
        self.w
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn with_q(&self, q: T) -> Result<Self> {
        Self::new(self.v, self.w, q)
    }
}

fn ci<T: Real>() -> Complex<T> {
    Complex::i()
}

/// Cleared level function of the closed interval. Continuous in `k`, real on
/// the real axis, zero exactly at the levels.
fn level_function<T: Real>(tag: DecouplingTag, v0: T, w0: T, q: T, k: T) -> T {
    let (sin, cos) = (k * q).sin_cos();
    let four = T::lit(4.0);
    match tag {
        DecouplingTag::PP => v0 * sin + four * k * cos,
        DecouplingTag::PM => (v0 * w0 - T::lit(16.0) * k * k) * sin + four * k * (v0 + w0) * cos,
        DecouplingTag::MP => sin,
        DecouplingTag::MM => w0 * sin + four * k * cos,
        _ => unreachable!("level function only exists for double decoupling"),
    }
}

/// `|e^{2ikq} - R(k)|` with `R` the unimodular right-hand side of the
/// exponential form of the level condition.
fn level_residual<T: Real>(tag: DecouplingTag, v0: T, w0: T, q: T, k: T) -> T {
    let i = ci::<T>();
    let four = T::lit(4.0);
    let kc = Complex::new(k, T::zero());
    let ratio = |c: T| (-(i * kc * four) + c) / (i * kc * four + c);
    let rhs = match tag {
        DecouplingTag::PP => ratio(v0),
        DecouplingTag::PM => ratio(v0) * ratio(w0),
        DecouplingTag::MP => Complex::new(T::one(), T::zero()),
        DecouplingTag::MM => ratio(w0),
        _ => unreachable!("level residual only exists for double decoupling"),
    };
    ((i * kc * (T::lit(2.0) * q)).exp() - rhs).norm()
}

/// Real levels in `(0, search_bound]` of an interval bounded by two opaque
/// walls, found by bracketing sign changes on a fine grid and bisecting.
pub fn double_decoupled_spectrum<T: Real>(case: &DecouplingCase<T>, search_bound: T) -> Result<Vec<SpectralPoint<T>>> {
    let tag = case.tag;
    if !tag.is_double() {
        return Err(domain(format!("{tag} is not a double-decoupling case")));
    }
    let q = case.q;
    if q <= T::zero() {
        return Err(domain("double decoupling needs q > 0"));
    }
    if !(search_bound.is_finite() && search_bound > T::zero()) {
        return Err(domain("search bound must be positive"));
    }
    let (v0, w0) = (case.v.c0(), case.w.c0());
    let f = |k: T| level_function(tag, v0, w0, q, k);

    let per_branch = T::lit(64.0);
    let cells = (search_bound * q / T::PI() * per_branch).ceil().max(T::lit(256.0));
    let cells = cells
        .to_usize()
        .ok_or_else(|| domain("search bound too large"))?;
    let h = search_bound / T::from_usize(cells).expect("cell count fits the scalar");
    let mut roots = Vec::new();
    let mut a = h * T::lit(1e-3);
    let mut fa = f(a);
    for n in 1..=cells {
        let b = h * T::from_usize(n).expect("cell index fits the scalar");
        let fb = f(b);
        if fb == T::zero() {
            roots.push(b);
        } else if fa != T::zero() && (fa < T::zero()) != (fb < T::zero()) {
            roots.push(bisect(&f, a, b, fa));
        }
        a = b;
        fa = fb;
    }

    Ok(roots
        .into_iter()
        .map(|k| SpectralPoint {
            k: Complex::new(k, T::zero()),
            z: Some(Complex::new(T::lit(2.0) * k * q, T::zero())),
            kind: SpectralKind::Confined,
            residual: level_residual(tag, v0, w0, q, k),
            partner: None,
        })
        .collect())
}

fn bisect<T: Real>(f: &impl Fn(T) -> T, mut a: T, mut b: T, mut fa: T) -> T {
    for _ in 0..200 {
        let m = a + (b - a) / T::lit(2.0);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    a + (b - a) / T::lit(2.0)
}

/// Linear factors of the mixed-case condition written as
/// `e^{2ikq} L1 L2 + s L3 L4 = 0`, each `Lj = aj + bj k`.
struct MixedForm<T> {
    lin: [(Complex<T>, Complex<T>); 4],
    sign: T,
}

fn mixed_form<T: Real>(case: &DecouplingCase<T>) -> Result<MixedForm<T>> {
    let i = ci::<T>();
    let c = |x: T| Complex::new(x, T::zero());
    let one = c(T::one());
    let zero = c(T::zero());
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let (v0, v1, w0, w1) = (case.v.c0(), case.v.c1(), case.w.c0(), case.w.c1());
    let unit = (one, zero);
    Ok(match case.tag {
        // e^{2ikq} (v0 + 4ik)(4k w1 + i w0) = (v0 - 4ik)(2k(1 + w1²) + i w0)
        DecouplingTag::PReg => MixedForm {
            lin: [
                (c(v0), i * four),
                (i * w0, c(four * w1)),
                (c(v0), -(i * four)),
                (i * w0, c(two * (T::one() + w1 * w1))),
            ],
            sign: -T::one(),
        },
        // e^{2ikq} (4k w1 + i w0) = 2k(1 + w1²) + i w0
        DecouplingTag::MReg => MixedForm {
            lin: [
                (i * w0, c(four * w1)),
                unit,
                (i * w0, c(two * (T::one() + w1 * w1))),
                unit,
            ],
            sign: -T::one(),
        },
        // e^{2ikq} (4k v1 - i v0) = -(2k(1 + v1²) + i v0)
        DecouplingTag::RegP => MixedForm {
            lin: [
                (-(i * v0), c(four * v1)),
                unit,
                (i * v0, c(two * (T::one() + v1 * v1))),
                unit,
            ],
            sign: T::one(),
        },
        // e^{2ikq} (w0 + 4ik)(4k v1 - i v0) = -(w0 - 4ik)(2k(1 + v1²) + i v0)
        DecouplingTag::RegM => MixedForm {
            lin: [
                (c(w0), i * four),
                (-(i * v0), c(four * v1)),
                (c(w0), -(i * four)),
                (i * v0, c(two * (T::one() + v1 * v1))),
            ],
            sign: T::one(),
        },
        tag => return Err(domain(format!("{tag} is not a mixed decoupling case"))),
    })
}

impl<T: Real> MixedForm<T> {
    fn factors(&self, k: Complex<T>) -> [Complex<T>; 4] {
        self.lin.map(|(a, b)| a + b * k)
    }

    /// Cleared entire form with its derivative and natural size.
    fn eval(&self, k: Complex<T>, q: T) -> (Complex<T>, Complex<T>, T) {
        let [l1, l2, l3, l4] = self.factors(k);
        let [b1, b2, b3, b4] = self.lin.map(|(_, b)| b);
        let e = (ci::<T>() * k * (T::lit(2.0) * q)).exp();
        let left = e * l1 * l2;
        let right = l3 * l4 * self.sign;
        let derivative = e * (ci::<T>() * (T::lit(2.0) * q) * l1 * l2 + b1 * l2 + l1 * b2)
            + (b3 * l4 + l3 * b4) * self.sign;
        (left + right, derivative, left.norm() + right.norm())
    }
}

/// `e^{2ikq}` minus the right-hand side of the purely outgoing condition.
pub fn mixed_decoupled_residual<T: Real>(case: &DecouplingCase<T>, k: Complex<T>) -> Result<Complex<T>> {
    let form = mixed_form(case)?;
    let [l1, l2, l3, l4] = form.factors(k);
    let den = l1 * l2;
    if den.norm() == T::zero() {
        return Err(Error::Pole(format!(
            "right-hand side of {} is singular at k = {}{:+}i",
            case.tag,
            k.re.as_f64(),
            k.im.as_f64()
        )));
    }
    let rhs = -(l3 * l4 * form.sign) / den;
    Ok((ci::<T>() * k * (T::lit(2.0) * case.q)).exp() - rhs)
}

/// The cleared mixed condition at `q = 0`, a quadratic in `k`.
pub fn mixed_limit_residual<T: Real>(case: &DecouplingCase<T>, k: Complex<T>) -> Result<Complex<T>> {
    let form = mixed_form(case)?;
    let [l1, l2, l3, l4] = form.factors(k);
    Ok(l1 * l2 + l3 * l4 * form.sign)
}

fn mixed_evaluator<T: Real>(case: &DecouplingCase<T>) -> Result<impl Fn(Complex<T>) -> Evaluation<T>> {
    let form = mixed_form(case)?;
    let q = case.q;
    Ok(move |k: Complex<T>| Some(form.eval(k, q)))
}

/// Newton polish of one mixed-case pole from a seed.
pub fn refine_mixed_zero<T: Real>(case: &DecouplingCase<T>, seed: Complex<T>, cfg: &SolverConfig<T>) -> Result<SpectralPoint<T>> {
    cfg.validate()?;
    let f = mixed_evaluator(case)?;
    let (k, residual) = newton(f, seed, case.q, cfg)
        .ok_or_else(|| domain("Newton iteration did not converge from the given seed"))?;
    Ok(SpectralPoint {
        k,
        z: (case.q > T::zero()).then(|| k * (T::lit(2.0) * case.q)),
        kind: super::classify(k, cfg),
        residual,
        partner: None,
    })
}

/// All mixed-case poles in the configured window.
pub fn find_mixed_zeros<T: Real>(case: &DecouplingCase<T>, cfg: &SolverConfig<T>) -> Result<ZeroSearch<T>> {
    let f = mixed_evaluator(case)?;
    search(f, case.q, cfg)
}

/// Nonzero pole surviving the `q → 0` limit of the `PReg` and `RegM` cases.
pub fn mixed_limit_poles<T: Real>(case: &DecouplingCase<T>) -> Result<SpectralPoint<T>> {
    let four = T::lit(4.0);
    let one = T::one();
    let (numerator, denominator) = match case.tag {
        DecouplingTag::PReg => {
            let (v0, w0, w1) = (case.v.c0(), case.w.c0(), case.w.c1());
            (four * w0 + v0 * (one - w1) * (one - w1), four * (one + w1) * (one + w1))
        }
        DecouplingTag::RegM => {
            let (v0, v1, w0) = (case.v.c0(), case.v.c1(), case.w.c0());
            (four * v0 + w0 * (one + v1) * (one + v1), four * (one - v1) * (one - v1))
        }
        DecouplingTag::MReg | DecouplingTag::RegP => {
            return Err(Error::NoPole(format!("{} keeps only k = 0 in the limit", case.tag)))
        }
        tag => return Err(domain(format!("{tag} is not a mixed decoupling case"))),
    };
    if numerator == T::zero() {
        return Err(Error::NoPole("numerator combination vanishes".into()));
    }
    let kind = if numerator < T::zero() {
        SpectralKind::Bound
    } else {
        SpectralKind::Antibound
    };
    Ok(SpectralPoint::exact(Complex::new(T::zero(), -numerator / denominator), kind))
}
