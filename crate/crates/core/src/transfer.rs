//! Transfer matrices and scattering amplitudes for chains of point interactions.
//!
//! Plane waves are written `φ(y) = A e^{-iky} + B e^{iky}`, so `B` is the
//! right-moving amplitude. A transfer matrix maps the coefficients `(A, B)` left
//! of a configuration to the coefficients right of it.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::kurasov::{compose, kurasov_matrix, Couplings};
use crate::linalg::Mat2;
use crate::scalar::Real;

/// Wavenumbers with modulus below this are rejected.
pub const MIN_WAVENUMBER: f64 = 1e-12;
/// Largest `|Im(k) x|` accepted in translation phases.
pub const MAX_EXPONENT: f64 = 700.0;

type C<T> = Complex<T>;

fn cx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

/// Interactions `v` at the origin and `w` at `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPointSystem<T> {
    pub v: Couplings<T>,
    pub w: Couplings<T>,
    q: T,
}

impl<T: Real> TwoPointSystem<T> {
    pub fn new(v: Couplings<T>, w: Couplings<T>, q: T) -> Result<Self> {
        if !(q.is_finite() && q > T::zero()) {
            return Err(domain(format!(
                "separation must be finite and positive, got {}",
                q.as_f64()
            )));
        }
        Ok(Self { v, w, q })
    }

    /// Both interactions at the same point.
    pub fn collapsed(v: Couplings<T>, w: Couplings<T>) -> Self {
        Self { v, w, q: T::zero() }
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        self.v.require_regular()?;
        self.w.require_regular()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferMatrix<T> {
    m: Mat2<C<T>>,
    k: C<T>,
}

impl<T: Real> TransferMatrix<T> {
    pub fn new(m: Mat2<C<T>>, k: C<T>) -> Self {
        Self { m, k }
    }

    pub fn matrix(&self) -> Mat2<C<T>> {
        self.m
    }

    pub fn k(&self) -> C<T> {
        self.k
    }

    pub fn t11(&self) -> C<T> {
        self.m.at(1, 1)
    }

    pub fn t12(&self) -> C<T> {
        self.m.at(1, 2)
    }

    pub fn t21(&self) -> C<T> {
        self.m.at(2, 1)
    }

    pub fn t22(&self) -> C<T> {
        self.m.at(2, 2)
    }

    pub fn det(&self) -> C<T> {
        self.m.det()
    }
}

/// Transmission and reflection amplitudes at a real wavenumber.
///
/// `r_right` is the reflected amplitude for a wave incoming from the left and
/// `r_left` the one for a wave incoming from the right, matching the placement
/// in the S-matrix `[[t, r_right], [r_left, t]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringData<T> {
    pub t: C<T>,
    pub r_left: C<T>,
    pub r_right: C<T>,
    pub k: T,
}

impl<T: Real> ScatteringData<T> {
    pub fn s_matrix(&self) -> Mat2<C<T>> {
        Mat2::new(self.t, self.r_right, self.r_left, self.t)
    }

    /// Largest of `‖S†S - 1‖∞` and `‖SS† - 1‖∞`.
    pub fn unitarity_defect(&self) -> T {
        let s = self.s_matrix();
        let adj = Mat2::new(s.m[0][0].conj(), s.m[1][0].conj(), s.m[0][1].conj(), s.m[1][1].conj());
        let id = Mat2::identity();
        inf_norm(&(adj * s).sub(&id)).max(inf_norm(&(s * adj).sub(&id)))
    }

    pub fn transmission_probability(&self) -> T {
        self.t.norm_sqr()
    }
}

pub(crate) fn inf_norm<T: Real>(m: &Mat2<C<T>>) -> T {
    m.m.iter()
        .map(|row| row[0].norm() + row[1].norm())
        .fold(T::zero(), T::max)
}

fn check_k<T: Real>(k: C<T>) -> Result<()> {
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(domain("wavenumber must be finite"));
    }
    if k.norm() < T::lit(MIN_WAVENUMBER) {
        return Err(Error::ZeroWavenumber {
            modulus: k.norm().as_f64(),
        });
    }
    Ok(())
}

fn check_real_k<T: Real>(k: T) -> Result<()> {
    if !(k.is_finite() && k > T::zero()) {
        return Err(domain(format!(
            "scattering needs a real positive wavenumber, got {}",
            k.as_f64()
        )));
    }
    check_k(cx(k, T::zero()))
}

/// `K = [[1, 1], [-ik, ik]]`, taking `(A, B)` to `(φ(0), φ'(0))`.
pub fn k_matrix<T: Real>(k: C<T>) -> Result<Mat2<C<T>>> {
    check_k(k)?;
    let one = cx(T::one(), T::zero());
    let ik = C::<T>::i() * k;
    Ok(Mat2::new(one, one, -ik, ik))
}

fn k_matrix_inverse<T: Real>(k: C<T>) -> Mat2<C<T>> {
    let ik = C::<T>::i() * k;
    let one = cx(T::one(), T::zero());
    Mat2::new(ik, -one, ik, one).map(|x| x / (ik + ik))
}

/// `Q = diag(e^{-iqk}, e^{iqk})`.
pub fn q_matrix<T: Real>(k: C<T>, q: T) -> Result<Mat2<C<T>>> {
    let exponent = (k.im * q).abs();
    if exponent > T::lit(MAX_EXPONENT) {
        return Err(Error::Overflow {
            exponent: exponent.as_f64(),
        });
    }
    let phase = (C::<T>::i() * k * q).exp();
    Ok(Mat2::diag(phase.inv(), phase))
}

/// `K⁻¹ M K`, the jump of plane-wave coefficients across an interaction at the origin.
fn jump<T: Real>(c: &Couplings<T>, k: C<T>) -> Result<Mat2<C<T>>> {
    let m = kurasov_matrix(c)?.matrix().map(|x| cx(x, T::zero()));
    Ok(k_matrix_inverse(k) * m * k_matrix(k)?)
}

/// `Q⁻¹ X Q`: moves a jump from the origin to `x`.
fn translate<T: Real>(jump: Mat2<C<T>>, k: C<T>, x: T) -> Result<Mat2<C<T>>> {
    let q = q_matrix(k, x)?;
    let q_inv = Mat2::diag(q.m[1][1], q.m[0][0]);
    Ok(q_inv * jump * q)
}

/// `T_q = Q⁻¹ K⁻¹ M_w K Q · K⁻¹ M_v K`.
pub fn transfer_two_point<T: Real>(s: &TwoPointSystem<T>, k: C<T>) -> Result<TransferMatrix<T>> {
    s.require_regular()?;
    check_k(k)?;
    let first = translate(jump(&s.v, k)?, k, T::zero())?;
    let second = translate(jump(&s.w, k)?, k, s.q)?;
    Ok(TransferMatrix::new(second * first, k))
}

/// Transfer matrix of interactions at strictly increasing positions.
pub fn transfer_chain<T: Real>(points: &[(Couplings<T>, T)], k: C<T>) -> Result<TransferMatrix<T>> {
    check_k(k)?;
    if points.windows(2).any(|p| !(p[0].1 < p[1].1)) {
        return Err(domain("chain positions must be strictly increasing"));
    }
    let mut total = Mat2::identity();
    for (c, x) in points {
        if !x.is_finite() {
            return Err(domain("chain positions must be finite"));
        }
        total = translate(jump(c, k)?, k, *x)? * total;
    }
    Ok(TransferMatrix::new(total, k))
}

/// `t = 1/T11`, `r_right = -T12/T11`, `r_left = T21/T11`.
pub fn scattering_from_transfer<T: Real>(tm: &TransferMatrix<T>) -> Result<ScatteringData<T>> {
    let k = tm.k;
    if k.im != T::zero() {
        return Err(domain("scattering amplitudes need a real wavenumber"));
    }
    check_real_k(k.re)?;
    let t11 = tm.t11();
    if t11.norm() == T::zero() || !t11.norm().is_finite() {
        return Err(Error::PerfectReflection);
    }
    Ok(ScatteringData {
        t: t11.inv(),
        r_left: tm.t21() / t11,
        r_right: -tm.t12() / t11,
        k: k.re,
    })
}

pub(crate) struct DeltaFactors<T> {
    /// `e^{2ikq}`
    pub e: C<T>,
    /// `v0 + 4ik v1`
    pub a: C<T>,
    /// `w0 - 4ik w1`
    pub b: C<T>,
    /// `2k(1 + v1²) + i v0`
    pub c: C<T>,
    /// `2k(1 + w1²) + i w0`
    pub d: C<T>,
}

/// Building blocks of the spectral determinant. Accepts raw coupling values so
/// that the decoupled values `±1` can be substituted.
pub(crate) fn delta_factors<T: Real>(v: (T, T), w: (T, T), q: T, k: C<T>) -> DeltaFactors<T> {
    let (v0, v1) = v;
    let (w0, w1) = w;
    let i = C::<T>::i();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    DeltaFactors {
        e: (i * k * (two * q)).exp(),
        a: i * k * (four * v1) + v0,
        b: -(i * k * (four * w1)) + w0,
        c: k * (two * (T::one() + v1 * v1)) + i * v0,
        d: k * (two * (T::one() + w1 * w1)) + i * w0,
    }
}

/// Amplitudes from the explicit two-point formulas, with the spectral
/// determinant `Δ(k)` as common denominator.
pub fn closed_form_two_point<T: Real>(s: &TwoPointSystem<T>, k: T) -> Result<ScatteringData<T>> {
    s.require_regular()?;
    check_real_k(k)?;
    let (v0, v1) = (s.v.c0(), s.v.c1());
    let (w0, w1) = (s.w.c0(), s.w.c1());
    let kc = cx(k, T::zero());
    let f = delta_factors((v0, v1), (w0, w1), s.q, kc);
    let delta = f.e * f.a * f.b + f.c * f.d;
    if delta.norm() == T::zero() {
        return Err(Error::PerfectReflection);
    }
    let i = C::<T>::i();
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let t = cx(four * k * k * (one - v1 * v1) * (one - w1 * w1), T::zero()) / delta;
    // conjugate-side factors
    let c_bar = kc * (two * (one + v1 * v1)) - i * v0;
    let d_bar = kc * (two * (one + w1 * w1)) - i * w0;
    let kv_minus = kc * (four * v1) - i * v0;
    let kv_plus = kc * (four * v1) + i * v0;
    let kw_minus = kc * (four * w1) - i * w0;
    let kw_plus = kc * (four * w1) + i * w0;
    let r_left = (f.e.inv() * f.c * kw_minus + kv_minus * d_bar) / delta;
    let r_right = -(f.e * c_bar * kw_plus + kv_plus * f.d) / delta;
    Ok(ScatteringData {
        t,
        r_left,
        r_right,
        k,
    })
}

/// Amplitudes of one interaction from its coefficient jump `K⁻¹ M K`.
pub fn single_point_scattering<T: Real>(c: &Couplings<T>, k: T) -> Result<ScatteringData<T>> {
    c.require_regular()?;
    check_real_k(k)?;
    let (u0, u1) = (c.c0(), c.c1());
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let den = two * k * (one - u1 * u1);
    let z11 = cx(two * k * (one + u1 * u1), u0) / den;
    let z12 = cx(four * k * u1, u0) / den;
    let z21 = cx(four * k * u1, -u0) / den;
    Ok(ScatteringData {
        t: z11.inv(),
        r_left: z21 / z11,
        r_right: -z12 / z11,
        k,
    })
}

/// Amplitudes of the `q → 0` limit, from `T₀ = K⁻¹ M_w M_v K`.
pub fn composed_limit_scattering<T: Real>(
    v: &Couplings<T>,
    w: &Couplings<T>,
    k: T,
) -> Result<ScatteringData<T>> {
    compose(v, w)?;
    let mv = kurasov_matrix(v)?.matrix();
    let mw = kurasov_matrix(w)?.matrix();
    check_real_k(k)?;
    let kc = cx(k, T::zero());
    let m = (mw * mv).map(|x| cx(x, T::zero()));
    let t0 = k_matrix_inverse(kc) * m * k_matrix(kc)?;
    scattering_from_transfer(&TransferMatrix::new(t0, kc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    Left,
    Right,
}

/// Plane-wave coefficients in the three regions `y < 0`, `0 < y < q`, `y > q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseWave<T> {
    pub k: T,
    pub q: T,
    /// `(A_j, B_j)` for regions 1, 2, 3.
    pub regions: [[C<T>; 2]; 3],
}

impl<T: Real> PiecewiseWave<T> {
    pub fn coefficients(&self, region: usize) -> (C<T>, C<T>) {
        let [a, b] = self.regions[region - 1];
        (a, b)
    }

    pub fn region_of(&self, y: T) -> usize {
        if y < T::zero() {
            1
        } else if y < self.q {
            2
        } else {
            3
        }
    }

    pub fn eval(&self, y: T) -> C<T> {
        let [a, b] = self.regions[self.region_of(y) - 1];
        let phase = (C::<T>::i() * self.k * y).exp();
        a * phase.inv() + b * phase
    }

    /// Probability current `k (|B|² - |A|²)` in each region.
    pub fn currents(&self) -> [T; 3] {
        self.regions
            .map(|[a, b]| self.k * (b.norm_sqr() - a.norm_sqr()))
    }
}

/// Scattering solution for a unit wave incoming from the given side.
///
/// Left incidence has `(A1, B1) = (r_right, 1)` and `(A3, B3) = (0, t)`; right
/// incidence has `(A1, B1) = (t, 0)` and `(A3, B3) = (1, r_left)`. The region 2
/// and region 3 coefficients are propagated through the matching maps.
pub fn piecewise_wave<T: Real>(s: &TwoPointSystem<T>, k: T, incident: Incidence) -> Result<PiecewiseWave<T>> {
    s.require_regular()?;
    check_real_k(k)?;
    let kc = cx(k, T::zero());
    let first = translate(jump(&s.v, kc)?, kc, T::zero())?;
    let second = translate(jump(&s.w, kc)?, kc, s.q)?;
    let sc = scattering_from_transfer(&TransferMatrix::new(second * first, kc))?;
    let zero = cx(T::zero(), T::zero());
    let region1 = match incident {
        Incidence::Left => [sc.r_right, cx(T::one(), T::zero())],
        Incidence::Right => [sc.t, zero],
    };
    let region2 = first.apply(region1);
    let region3 = second.apply(region2);
    Ok(PiecewiseWave {
        k,
        q: s.q,
        regions: [region1, region2, region3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn reg(c0: f64, c1: f64) -> Couplings<f64> {
        Couplings::regular(c0, c1).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Mat2<Complex64>, b: Mat2<Complex64>, tol: f64) -> bool {
        inf_norm(&a.sub(&b)) <= tol
    }

    fn paper_pair() -> TwoPointSystem<f64> {
        TwoPointSystem::new(reg(-2.0, 4.0), reg(-1.0, 3.0), 0.5).unwrap()
    }

    #[test]
    fn k_matrix_examples() {
        let k = k_matrix(c(1.0, 0.0)).unwrap();
        assert_eq!(k, Mat2::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)));
        assert_eq!(k.det(), c(0.0, 2.0));
        let z = c(2.0, 1.0);
        let prod = k_matrix_inverse(z) * k_matrix(z).unwrap();
        assert!(close(prod, Mat2::identity(), 1e-15));
        assert!(matches!(k_matrix(c(0.0, 0.0)), Err(Error::ZeroWavenumber { .. })));
    }

    #[test]
    fn q_matrix_examples() {
        assert_eq!(q_matrix(c(3.7, -1.0), 0.0).unwrap(), Mat2::identity());
        let q = q_matrix(c(std::f64::consts::PI, 0.0), 1.0).unwrap();
        assert!(close(q, Mat2::diag(c(-1.0, 0.0), c(-1.0, 0.0)), 1e-15));
        let q = q_matrix(c(1.0, 0.0), 0.5).unwrap();
        assert!((q.at(1, 1) - c(0.5f64.cos(), -0.5f64.sin())).norm() < 1e-16);
        assert!((q.at(2, 2) - c(0.5f64.cos(), 0.5f64.sin())).norm() < 1e-16);
        assert!((q.det() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(q_matrix(c(1.0, 800.0), 1.0), Err(Error::Overflow { .. })));
    }

    #[test]
    fn free_system_has_identity_transfer() {
        let free = Couplings::free();
        let s = TwoPointSystem::new(free, free, 2.0).unwrap();
        let tm = transfer_two_point(&s, c(0.7, 0.0)).unwrap();
        assert!(close(tm.matrix(), Mat2::identity(), 1e-15));
        let sc = scattering_from_transfer(&tm).unwrap();
        assert!((sc.t - c(1.0, 0.0)).norm() < 1e-15);
        assert!(sc.r_left.norm() < 1e-15 && sc.r_right.norm() < 1e-15);
        assert_eq!(scattering_from_transfer(&TransferMatrix::new(Mat2::identity(), c(1.0, 0.0))).unwrap().t, c(1.0, 0.0));
    }

    #[test]
    fn collapsed_system_is_composed_jump() {
        let (v, w) = (reg(-2.0, 4.0), reg(-1.0, 3.0));
        let k = c(1.3, 0.0);
        let tm = transfer_two_point(&TwoPointSystem::collapsed(v, w), k).unwrap();
        let u = compose(&v, &w).unwrap();
        assert!(close(tm.matrix(), jump(&u, k).unwrap(), 1e-13));
    }

    /// Independent evaluation of `Δ(k)` written out term by term.
    fn delta_oracle(v0: f64, v1: f64, w0: f64, w1: f64, q: f64, k: Complex64) -> Complex64 {
        let i = Complex64::i();
        (2.0 * i * k * q).exp() * (v0 + 4.0 * i * k * v1) * (w0 - 4.0 * i * k * w1)
            + (2.0 * k * v1 * v1 + 2.0 * k + i * v0) * (2.0 * k * w1 * w1 + 2.0 * k + i * w0)
    }

    #[test]
    fn t11_matches_determinant_oracle() {
        let k = c(1.0, 0.0);
        let tm = transfer_two_point(&paper_pair(), k).unwrap();
        let expected = delta_oracle(-2.0, 4.0, -1.0, 3.0, 0.5, k) / (4.0 * (1.0 - 16.0) * (1.0 - 9.0));
        assert!((tm.t11() - expected).norm() < 1e-14 * expected.norm());
    }

    #[test]
    fn chain_examples() {
        let k = c(0.9, 0.1);
        assert_eq!(transfer_chain::<f64>(&[], k).unwrap().matrix(), Mat2::identity());
        let cpl = reg(0.4, -2.0);
        let single = transfer_chain(&[(cpl, 0.0)], k).unwrap();
        assert!(close(single.matrix(), jump(&cpl, k).unwrap(), 1e-15));
        let s = paper_pair();
        let chain = transfer_chain(&[(s.v, 0.0), (s.w, 0.5)], k).unwrap();
        let two = transfer_two_point(&s, k).unwrap();
        assert!(close(chain.matrix(), two.matrix(), 1e-12));
        assert!(transfer_chain(&[(s.v, 1.0), (s.w, 0.5)], k).is_err());
        assert!(transfer_chain(&[(s.v, 1.0), (s.w, 1.0)], k).is_err());
    }

    #[test]
    fn decoupled_and_zero_wavenumber_rejected() {
        let s = TwoPointSystem::new(Couplings::decoupled_plus(1.0), reg(0.0, 0.0), 1.0).unwrap();
        assert!(matches!(transfer_two_point(&s, c(1.0, 0.0)), Err(Error::SingularCoupling { .. })));
        assert!(matches!(
            transfer_two_point(&paper_pair(), c(1e-13, 0.0)),
            Err(Error::ZeroWavenumber { .. })
        ));
        assert!(TwoPointSystem::new(reg(0.0, 0.0), reg(0.0, 0.0), 0.0).is_err());
        assert!(TwoPointSystem::new(reg(0.0, 0.0), reg(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn perfect_reflection_detected() {
        let tm = TransferMatrix::new(Mat2::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(scattering_from_transfer(&tm), Err(Error::PerfectReflection));
        let complex_k = TransferMatrix::new(Mat2::identity(), c(1.0, -0.1));
        assert!(scattering_from_transfer(&complex_k).is_err());
    }

    #[test]
    fn single_delta_amplitudes() {
        let (v0, k) = (1.7, 0.6);
        let direct = c(2.0 * k, 0.0) / c(2.0 * k, v0);
        let r = c(0.0, -v0) / c(2.0 * k, v0);
        let sc = single_point_scattering(&reg(v0, 0.0), k).unwrap();
        assert!((sc.t - direct).norm() < 1e-15);
        assert!((sc.r_left - r).norm() < 1e-15 && (sc.r_right - r).norm() < 1e-15);

        let tm = transfer_two_point(&TwoPointSystem::new(reg(v0, 0.0), Couplings::free(), 3.0).unwrap(), c(k, 0.0)).unwrap();
        let via_t = scattering_from_transfer(&tm).unwrap();
        assert!((via_t.t - direct).norm() < 1e-14);

        assert_eq!(single_point_scattering(&Couplings::<f64>::free(), 2.0).unwrap().t, c(1.0, 0.0));
        let sc = single_point_scattering(&reg(3.0, -0.4), 1.0).unwrap();
        assert!((sc.t.norm_sqr() + sc.r_left.norm_sqr() - 1.0).abs() < 1e-14);
        assert!(single_point_scattering(&Couplings::decoupled_minus(1.0), 1.0).is_err());
    }

    #[test]
    fn single_point_matches_its_transfer_matrix() {
        let cpl = reg(-2.5, 0.7);
        let k = 0.8;
        let sc = single_point_scattering(&cpl, k).unwrap();
        let z = jump(&cpl, c(k, 0.0)).unwrap();
        assert!((sc.t - z.at(1, 1).inv()).norm() < 1e-14);
        assert!((sc.r_right + z.at(1, 2) / z.at(1, 1)).norm() < 1e-14);
        assert!((sc.r_left - z.at(2, 1) / z.at(1, 1)).norm() < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let free = Couplings::free();
        let sc = closed_form_two_point(&TwoPointSystem::new(free, free, 1.0).unwrap(), 1.0).unwrap();
        assert!((sc.t - c(1.0, 0.0)).norm() < 1e-15);

        let v = reg(1.2, -0.3);
        let sc = closed_form_two_point(&TwoPointSystem::new(v, free, 0.7).unwrap(), 2.0).unwrap();
        let single = single_point_scattering(&v, 2.0).unwrap();
        assert!((sc.t - single.t).norm() < 1e-14);
        assert!((sc.r_left - single.r_left).norm() < 1e-14);
        assert!((sc.r_right - single.r_right).norm() < 1e-14);

        let s = paper_pair();
        let a = closed_form_two_point(&s, 1.0).unwrap();
        let b = scattering_from_transfer(&transfer_two_point(&s, c(1.0, 0.0)).unwrap()).unwrap();
        assert!((a.t - b.t).norm() < 1e-13);
        assert!((a.r_left - b.r_left).norm() < 1e-13);
        assert!((a.r_right - b.r_right).norm() < 1e-13);
        assert!((b.t.norm_sqr() + b.r_left.norm_sqr() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn composed_limit_examples() {
        let free = Couplings::free();
        assert!((composed_limit_scattering(&free, &free, 1.0).unwrap().t - c(1.0, 0.0)).norm() < 1e-15);
        let a = composed_limit_scattering(&reg(1.0, 0.0), &reg(2.0, 0.0), 0.9).unwrap();
        let b = single_point_scattering(&reg(3.0, 0.0), 0.9).unwrap();
        assert!((a.t - b.t).norm() < 1e-14);
        let a = composed_limit_scattering(&reg(-2.0, 4.0), &reg(-1.0, 3.0), 1.0).unwrap();
        let b = single_point_scattering(&reg(-33.0 / 169.0, 7.0 / 13.0), 1.0).unwrap();
        assert!((a.t - b.t).norm() < 1e-13);
        assert!((a.r_left - b.r_left).norm() < 1e-13);
        assert!((a.r_right - b.r_right).norm() < 1e-13);
        assert!(composed_limit_scattering(&reg(1.0, 2.0), &reg(1.0, -0.5), 1.0).is_err());
    }

    #[test]
    fn equal_deltas_at_one_point_are_parity_symmetric() {
        let a = composed_limit_scattering(&reg(1.5, 0.0), &reg(1.5, 0.0), 0.4).unwrap();
        assert!((a.r_left - a.r_right).norm() < 1e-15);
        let b = closed_form_two_point(&paper_pair(), 0.4).unwrap();
        assert!((b.r_left - b.r_right).norm() > 1e-3);
    }

    #[test]
    fn wave_examples() {
        let free = Couplings::free();
        let s = TwoPointSystem::new(free, free, 1.0).unwrap();
        let wave = piecewise_wave(&s, 1.0, Incidence::Left).unwrap();
        for region in wave.regions {
            assert!((region[0]).norm() < 1e-15);
            assert!((region[1] - c(1.0, 0.0)).norm() < 1e-15);
        }

        let v = reg(2.0, 0.0);
        let s = TwoPointSystem::new(v, free, 1.0).unwrap();
        let wave = piecewise_wave(&s, 0.5, Incidence::Left).unwrap();
        let sc = single_point_scattering(&v, 0.5).unwrap();
        assert!((wave.regions[0][0] - sc.r_right).norm() < 1e-14);
        assert!((sc.r_left - sc.r_right).norm() < 1e-15);
        assert!((wave.regions[2][1] - sc.t).norm() < 1e-14);
        assert!(wave.regions[2][0].norm() < 1e-14);
    }

    #[test]
    fn wave_satisfies_matching_and_current_conservation() {
        let s = paper_pair();
        for incident in [Incidence::Left, Incidence::Right] {
            let wave = piecewise_wave(&s, 1.1, incident).unwrap();
            let kc = c(1.1, 0.0);
            // matching in (φ, φ') form at each support point
            let k = k_matrix(kc).unwrap();
            let mv = kurasov_matrix(&s.v).unwrap().matrix().map(|x| c(x, 0.0));
            let mw = kurasov_matrix(&s.w).unwrap().matrix().map(|x| c(x, 0.0));
            let at = |region: usize, x: f64| {
                let q = q_matrix(kc, x).unwrap();
                (k * q).apply(wave.regions[region])
            };
            let jump_v = mv.apply(at(0, 0.0));
            let after_v = at(1, 0.0);
            let jump_w = mw.apply(at(1, 0.5));
            let after_w = at(2, 0.5);
            for n in 0..2 {
                assert!((jump_v[n] - after_v[n]).norm() < 1e-12);
                assert!((jump_w[n] - after_w[n]).norm() < 1e-12);
            }
            let j = wave.currents();
            assert!((j[0] - j[1]).abs() < 1e-12 && (j[1] - j[2]).abs() < 1e-12);
            let sc = closed_form_two_point(&s, 1.1).unwrap();
            assert!((sc.t.norm_sqr() + sc.r_right.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let right = piecewise_wave(&s, 1.1, Incidence::Right).unwrap();
        let sc = closed_form_two_point(&s, 1.1).unwrap();
        assert!((right.regions[2][0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((right.regions[2][1] - sc.r_left).norm() < 1e-12);
    }

    #[test]
    fn wave_evaluation_is_continuous_in_free_regions() {
        let s = paper_pair();
        let wave = piecewise_wave(&s, 2.0, Incidence::Left).unwrap();
        assert_eq!(wave.region_of(-1.0), 1);
        assert_eq!(wave.region_of(0.2), 2);
        assert_eq!(wave.region_of(0.5), 3);
        let (a, b) = wave.coefficients(3);
        let y = 3.0;
        let expected = a * c(0.0, -2.0 * y).exp() + b * c(0.0, 2.0 * y).exp();
        assert!((wave.eval(y) - expected).norm() < 1e-14);
    }

    fn coupling() -> impl Strategy<Value = Couplings<f64>> {
        (-10.0..10.0f64, -10.0..10.0f64)
            .prop_filter("regular", |(_, c1)| (1.0 - c1 * c1).abs() > 1e-3)
            .prop_map(|(c0, c1)| reg(c0, c1))
    }

    proptest! {
        #[test]
        fn time_reversal_and_hermitian_structure(v in coupling(), w in coupling(), q in 0.01..10.0f64, k in 0.1..10.0f64) {
            let s = TwoPointSystem::new(v, w, q).unwrap();
            let tm = transfer_two_point(&s, c(k, 0.0)).unwrap();
            let scale = inf_norm(&tm.matrix());
            prop_assert!((tm.t11() - tm.t22().conj()).norm() <= 1e-12 * scale);
            prop_assert!((tm.t12() - tm.t21().conj()).norm() <= 1e-12 * scale);
            let left = piecewise_wave(&s, k, Incidence::Left).unwrap();
            let right = piecewise_wave(&s, k, Incidence::Right).unwrap();
            prop_assert!((left.regions[2][1] - right.regions[0][0]).norm() < 1e-9);
        }

        #[test]
        fn complex_k_transfer_keeps_unit_determinant(v in coupling(), w in coupling(), q in 0.01..3.0f64,
                                                     re in 0.3..5.0f64, im in -1.0..1.0f64) {
            let s = TwoPointSystem::new(v, w, q).unwrap();
            let tm = transfer_two_point(&s, c(re, im)).unwrap();
            let scale = inf_norm(&tm.matrix()).powi(2);
            prop_assert!((tm.det() - c(1.0, 0.0)).norm() <= 1e-13 * scale.max(1.0));
        }
    }
}
