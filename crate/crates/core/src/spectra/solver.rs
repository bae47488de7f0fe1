//! Seeded Newton search for zeros of entire functions of `k`.

use num_complex::Complex;

use super::{delta_with_derivative, SpectralKind, SpectralPoint};
use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::transfer::{TwoPointSystem, MAX_EXPONENT};

/// Coordinates of the search window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    /// `z = 2kq`
    Z,
    K,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window<T> {
    pub plane: Plane,
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Real> Window<T> {
    pub fn z(re: (T, T), im: (T, T)) -> Self {
        Self {
            plane: Plane::Z,
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
        }
    }

    pub fn k(re: (T, T), im: (T, T)) -> Self {
        Self {
            plane: Plane::K,
            ..Self::z(re, im)
        }
    }

    fn contains(&self, p: Complex<T>) -> bool {
        p.re >= self.re_min && p.re <= self.re_max && p.im >= self.im_min && p.im <= self.im_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig<T> {
    pub window: Window<T>,
    pub grid_density: usize,
    pub newton_tolerance: T,
    pub max_iterations: usize,
    pub dedup_radius: T,
    pub origin_exclusion_radius: T,
}

impl<T: Real> SolverConfig<T> {
    /// Default solver settings on the given window. The Newton tolerance is
    /// `1e-11`, raised to `64 ε` for scalars coarser than `f64`.
    pub fn new(window: Window<T>) -> Self {
        Self {
            window,
            grid_density: 64,
            newton_tolerance: T::lit(1e-11).max(T::epsilon() * T::lit(64.0)),
            max_iterations: 60,
            dedup_radius: T::lit(1e-6),
            origin_exclusion_radius: T::lit(1e-4),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.window;
        let bounds = [w.re_min, w.re_max, w.im_min, w.im_max];
        if bounds.iter().any(|x| !x.is_finite()) || w.re_min > w.re_max || w.im_min > w.im_max {
            return Err(domain("search window must be finite with min <= max"));
        }
        if self.grid_density < 2 {
            return Err(domain("grid density must be at least 2"));
        }
        let tols = [self.newton_tolerance, self.dedup_radius, self.origin_exclusion_radius];
        if tols.iter().any(|t| !(t.is_finite() && *t > T::zero())) {
            return Err(domain("solver tolerances must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(domain("max_iterations must be positive"));
        }
        Ok(())
    }
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self::new(Window::z((T::lit(-30.0), T::lit(30.0)), (T::lit(-12.0), T::lit(4.0))))
    }
}

/// Solver output together with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSearch<T> {
    pub points: Vec<SpectralPoint<T>>,
    /// Seeds whose Newton iteration diverged or stalled.
    pub dropped_seeds: usize,
    /// Resonance candidates whose mirror zero was not found.
    pub unpaired: usize,
}

/// Axis classification of a single zero. Off-axis zeros below the real line
/// are reported as resonances here; [`find_zeros`] demotes them to
/// `Unclassified` when the mirror zero is missing.
pub fn classify<T: Real>(k: Complex<T>, cfg: &SolverConfig<T>) -> SpectralKind {
    let on_axis = k.re.abs() < cfg.dedup_radius * (T::one() + k.norm());
    if on_axis && k.im > T::zero() {
        SpectralKind::Bound
    } else if on_axis && k.im < T::zero() {
        SpectralKind::Antibound
    } else if !on_axis && k.im < T::zero() {
        SpectralKind::Resonance
    } else {
        SpectralKind::Unclassified
    }
}

pub fn find_zeros<T: Real>(s: &TwoPointSystem<T>, cfg: &SolverConfig<T>) -> Result<Vec<SpectralPoint<T>>> {
    Ok(find_zeros_with_diagnostics(s, cfg)?.points)
}

pub fn find_zeros_with_diagnostics<T: Real>(s: &TwoPointSystem<T>, cfg: &SolverConfig<T>) -> Result<ZeroSearch<T>> {
    s.require_regular()?;
    if s.q() <= T::zero() {
        return Err(domain("zero search needs q > 0"));
    }
    search(|k| Some(delta_with_derivative(s, k)), s.q(), cfg)
}

/// `(value, derivative, natural size)` of the function at `k`, or `None` when
/// the evaluation would overflow.
pub(crate) type Evaluation<T> = Option<(Complex<T>, Complex<T>, T)>;

/// Newton iteration from one seed. Returns the root and its relative residual.
pub(crate) fn newton<T: Real>(
    f: impl Fn(Complex<T>) -> Evaluation<T>,
    seed: Complex<T>,
    q: T,
    cfg: &SolverConfig<T>,
) -> Option<(Complex<T>, T)> {
    let step_tol = T::lit(1e-13).max(T::epsilon() * T::lit(4.0));
    let limit = T::lit(MAX_EXPONENT);
    let two = T::lit(2.0);
    let mut k = seed;
    let mut residual = T::infinity();
    for _ in 0..cfg.max_iterations {
        if (two * k.im * q).abs() > limit {
            return None;
        }
        let (value, derivative, size) = f(k)?;
        residual = relative(value, size);
        if derivative.norm() == T::zero() || !derivative.norm().is_finite() {
            return None;
        }
        let step = value / derivative;
        let next = k - step;
        if !(next.re.is_finite() && next.im.is_finite()) {
            return None;
        }
        k = next;
        if residual < cfg.newton_tolerance && step.norm() <= step_tol * (T::one() + k.norm()) {
            let (value, _, size) = f(k)?;
            return Some((k, relative(value, size).min(residual)));
        }
    }
    if (two * k.im * q).abs() > limit {
        return None;
    }
    let (value, _, size) = f(k)?;
    residual = residual.min(relative(value, size));
    (residual < cfg.newton_tolerance).then_some((k, residual))
}

fn relative<T: Real>(value: Complex<T>, size: T) -> T {
    if size == T::zero() {
        value.norm()
    } else {
        value.norm() / size
    }
}

/// Seeds the window, polishes every seed with Newton, then filters,
/// deduplicates, classifies and pairs the roots.
pub(crate) fn search<T: Real>(
    f: impl Fn(Complex<T>) -> Evaluation<T>,
    q: T,
    cfg: &SolverConfig<T>,
) -> Result<ZeroSearch<T>> {
    cfg.validate()?;
    let w = cfg.window;
    if w.plane == Plane::Z && q <= T::zero() {
        return Err(domain("a z-plane window needs q > 0"));
    }
    let two = T::lit(2.0);
    let to_k = |p: Complex<T>| match w.plane {
        Plane::Z => p / (two * q),
        Plane::K => p,
    };
    let to_window = |k: Complex<T>| match w.plane {
        Plane::Z => k * (two * q),
        Plane::K => k,
    };

    let n = cfg.grid_density;
    let denom = T::from_usize(n - 1).expect("grid size fits the scalar");
    let mut roots: Vec<(Complex<T>, T)> = Vec::new();
    let mut dropped = 0;
    for a in 0..n {
        let fa = T::from_usize(a).expect("grid index fits the scalar") / denom;
        let re = w.re_min + (w.re_max - w.re_min) * fa;
        for b in 0..n {
            let fb = T::from_usize(b).expect("grid index fits the scalar") / denom;
            let im = w.im_min + (w.im_max - w.im_min) * fb;
            let seed = to_k(Complex::new(re, im));
            let Some((k, residual)) = newton(&f, seed, q, cfg) else {
                dropped += 1;
                continue;
            };
            if k.norm() < cfg.origin_exclusion_radius || !w.contains(to_window(k)) {
                continue;
            }
            let radius = cfg.dedup_radius * (T::one() + k.norm());
            match roots.iter_mut().find(|(r, _)| (*r - k).norm() < radius) {
                Some(existing) => {
                    if residual < existing.1 {
                        *existing = (k, residual);
                    }
                }
                None => roots.push((k, residual)),
            }
        }
    }
    if dropped > 0 {
        log::debug!("zero search dropped {dropped} of {} seeds", n * n);
    }

    let mut points: Vec<SpectralPoint<T>> = roots
        .iter()
        .map(|&(k, residual)| SpectralPoint {
            k,
            z: (q > T::zero()).then(|| k * (two * q)),
            kind: classify(k, cfg),
            residual,
            partner: None,
        })
        .collect();

    let mut unpaired = 0;
    let all: Vec<Complex<T>> = points.iter().map(|p| p.k).collect();
    for p in points.iter_mut().filter(|p| p.kind == SpectralKind::Resonance) {
        let mirror = -p.k.conj();
        let radius = cfg.dedup_radius * (T::one() + p.k.norm());
        let nearest = all
            .iter()
            .copied()
            .filter(|c| *c != p.k)
            .min_by(|a, b| {
                (*a - mirror)
                    .norm()
                    .partial_cmp(&(*b - mirror).norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        match nearest {
            Some(c) if (c - mirror).norm() < radius => p.partner = Some(c),
            _ => {
                p.kind = SpectralKind::Unclassified;
                unpaired += 1;
            }
        }
    }
    if unpaired > 0 {
        log::debug!("{unpaired} resonance candidates lack a mirror zero inside the window");
    }

    sort_points(&mut points);
    Ok(ZeroSearch {
        points,
        dropped_seeds: dropped,
        unpaired,
    })
}

/// Orders by imaginary part descending, then real part ascending. Imaginary
/// parts are compared on a 1e-8 lattice so mirror pairs stay adjacent.
pub(crate) fn sort_points<T: Real>(points: &mut [SpectralPoint<T>]) {
    let key = |p: &SpectralPoint<T>| (p.k.im.as_f64() * 1e8).round() as i64;
    points.sort_by(|a, b| {
        key(b)
            .cmp(&key(a))
            .then(a.k.re.as_f64().total_cmp(&b.k.re.as_f64()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kurasov::Couplings;
    use crate::spectra::{compatibility_residual, delta_determinant, lambert_residual, real_imag_residuals, reduced_params};
    use num_complex::Complex64;

    fn reg(c0: f64, c1: f64) -> Couplings<f64> {
        Couplings::regular(c0, c1).unwrap()
    }

    fn paper() -> TwoPointSystem<f64> {
        TwoPointSystem::new(reg(-2.0, 4.0), reg(-1.0, 3.0), 0.5).unwrap()
    }

    #[test]
    fn classify_examples() {
        let cfg = SolverConfig::default();
        assert_eq!(classify(Complex64::new(0.0, 2.0), &cfg), SpectralKind::Bound);
        assert_eq!(classify(Complex64::new(0.0, -0.5), &cfg), SpectralKind::Antibound);
        assert_eq!(classify(Complex64::new(3.0, -0.2), &cfg), SpectralKind::Resonance);
        assert_eq!(classify(Complex64::new(3.0, 0.2), &cfg), SpectralKind::Unclassified);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SolverConfig::<f64>::default();
        assert!(cfg.validate().is_ok());
        cfg.grid_density = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = SolverConfig::<f64>::default();
        cfg.dedup_radius = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = SolverConfig::<f64>::default();
        cfg.window.re_min = 40.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn free_system_has_no_zeros() {
        let free = Couplings::free();
        let s = TwoPointSystem::new(free, free, 1.0).unwrap();
        assert!(find_zeros(&s, &SolverConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn single_delta_zero() {
        for v0 in [-1.5, 2.0] {
            let s = TwoPointSystem::new(reg(v0, 0.0), Couplings::free(), 0.8).unwrap();
            let cfg = SolverConfig::new(Window::k((-3.0, 3.0), (-3.0, 3.0)));
            let zeros = find_zeros(&s, &cfg).unwrap();
            assert_eq!(zeros.len(), 1, "{zeros:?}");
            assert!((zeros[0].k - Complex64::new(0.0, -v0 / 2.0)).norm() < 1e-12);
            let kind = if v0 < 0.0 { SpectralKind::Bound } else { SpectralKind::Antibound };
            assert_eq!(zeros[0].kind, kind);
        }
    }

    #[test]
    fn paper_configuration_layout() {
        let s = paper();
        let cfg = SolverConfig::default();
        let search = find_zeros_with_diagnostics(&s, &cfg).unwrap();
        let bound: Vec<_> = search.points.iter().filter(|p| p.kind == SpectralKind::Bound).collect();
        assert_eq!(bound.len(), 1);
        assert!(delta_determinant(&s, bound[0].k).unwrap().norm() < 1e-10);
        assert!(search.points[0].kind == SpectralKind::Bound);

        let r = reduced_params(&s).unwrap();
        for p in &search.points {
            assert!(p.residual < 1e-10);
            let z = p.z.unwrap();
            assert!(lambert_residual(z, &r).unwrap().norm() < 1e-10);
            let (a, b) = real_imag_residuals(z.re, z.im, &r);
            assert!(a.abs() < 1e-8 && b.abs() < 1e-8, "{a} {b} at {z}");
            assert!(compatibility_residual(z.re, z.im, &r).unwrap().abs() < 1e-8);
        }
        let resonances = search.points.iter().filter(|p| p.kind == SpectralKind::Resonance).count();
        assert!(resonances >= 6 && resonances % 2 == 0);
    }

    #[test]
    fn compatibility_is_not_sufficient() {
        // bisect along z_i at fixed z_r to land on the compatibility curve
        let r = reduced_params(&paper()).unwrap();
        let zr = 5.0;
        let g = |zi: f64| compatibility_residual(zr, zi, &r).unwrap();
        let (mut a, mut b) = (-2.0, -1.0);
        assert!(g(a).signum() != g(b).signum());
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if g(a).signum() == g(m).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        assert!(g(a).abs() < 1e-10);
        let (e1, e2) = real_imag_residuals(zr, a, &r);
        assert!(e1.hypot(e2) > 1e-3);
    }

    #[test]
    fn ordering_is_deterministic() {
        let a = find_zeros(&paper(), &SolverConfig::default()).unwrap();
        let b = find_zeros(&paper(), &SolverConfig::default()).unwrap();
        assert_eq!(a, b);
        for pair in a.windows(2) {
            let (x, y) = (pair[0].k, pair[1].k);
            assert!(x.im > y.im - 1e-8);
        }
    }
}
