use deltaprime::spectra::{find_zeros, Window};
use deltaprime::*;

fn cast<T: Real>(x: f64) -> T {
    T::lit(x)
}

fn couplings<T: Real>(c0: f64, c1: f64) -> Couplings<T> {
    Couplings::regular(cast(c0), cast(c1)).unwrap()
}

fn system<T: Real>() -> TwoPointSystem<T> {
    TwoPointSystem::new(couplings(-2.0, 4.0), couplings(-1.0, 3.0), cast(0.5)).unwrap()
}

/// Quantities computed in `T`, read back as `f64`.
fn fingerprint<T: Real>() -> Vec<f64> {
    let s = system::<T>();
    let u = compose(&s.v, &s.w).unwrap();
    let k = Complex::new(cast::<T>(1.3), T::zero());
    let sc = scattering_from_transfer(&transfer_two_point(&s, k).unwrap()).unwrap();
    let closed = closed_form_two_point(&s, cast(1.3)).unwrap();
    let p = log_map(&couplings::<T>(0.7, 0.25)).unwrap();
    let h = heat_trace(&couplings::<T>(-2.0, 0.5), cast(0.75)).unwrap();
    [
        u.c0(),
        u.c1(),
        sc.t.re,
        sc.t.im,
        sc.r_left.re,
        sc.r_right.im,
        closed.t.re,
        closed.r_left.im,
        p.alpha,
        p.beta,
        trace(&couplings::<T>(0.0, 0.5)).unwrap(),
        h.re,
        h.im,
    ]
    .iter()
    .map(|x| x.as_f64())
    .collect()
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1.0)).fold(0.0, f64::max)
}

#[test]
fn f32_tracks_f64() {
    assert!(max_gap(&fingerprint::<f32>(), &fingerprint::<f64>()) < 1e-5);
}

#[test]
fn twofloat_tracks_f64() {
    assert!(max_gap(&fingerprint::<TwoFloat>(), &fingerprint::<f64>()) < 1e-13);
}

#[test]
fn twofloat_composition_is_exact_for_rational_input() {
    let s = system::<TwoFloat>();
    let u = compose(&s.v, &s.w).unwrap();
    assert!((u.c0() + TwoFloat::from(33.0) / TwoFloat::from(169.0)).abs().as_f64() < 1e-30);
    assert!((u.c1() - TwoFloat::from(7.0) / TwoFloat::from(13.0)).abs().as_f64() < 1e-30);
}

#[test]
fn twofloat_keeps_det_t_at_one_where_f64_cannot() {
    let k = 0.01;
    let f = transfer_two_point(&system::<f64>(), Complex::new(k, 0.0)).unwrap();
    let t = transfer_two_point(&system::<TwoFloat>(), Complex::new(TwoFloat::from(k), TwoFloat::from(0.0))).unwrap();
    let one = Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
    let f_err = (f.det() - 1.0).norm();
    let t_err = (t.det() - one).norm().as_f64();
    assert!(t_err < 1e-14);
    assert!(t_err <= f_err.max(1e-16));
}

#[test]
fn spectrum_in_each_scalar() {
    let bound = |pts: &[SpectralPoint<f64>]| pts.iter().filter(|p| p.kind == SpectralKind::Bound).count();
    let f = find_zeros(&system::<f64>(), &SolverConfig::default()).unwrap();
    assert_eq!(bound(&f), 1);
    let cfg = SolverConfig::<TwoFloat>::new(Window::z(
        (TwoFloat::from(-8.0), TwoFloat::from(8.0)),
        (TwoFloat::from(-3.0), TwoFloat::from(1.0)),
    ));
    let t = find_zeros(&system::<TwoFloat>(), &cfg).unwrap();
    let first = t.iter().find(|p| p.kind == SpectralKind::Bound).unwrap();
    let reference = f.iter().find(|p| p.kind == SpectralKind::Bound).unwrap();
    assert!((first.k.im.as_f64() - reference.k.im).abs() < 1e-12);
}
