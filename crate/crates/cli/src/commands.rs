use std::time::{SystemTime, UNIX_EPOCH};

use deltaprime::spectra::{
    compatibility_residual, find_mixed_zeros, find_zeros_with_diagnostics, real_imag_residuals, reduced_params,
    Plane,
};
use deltaprime::{
    composed_limit_scattering, compose, double_decoupled_spectrum, heat_trace, kurasov_matrix, mixed_limit_poles,
    piecewise_wave, scattering_from_transfer, transfer_two_point, Complex64, CouplingKind, Couplings64, DecouplingCase,
    Error, Incidence, SolverConfig, TwoPointSystem, Window,
};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::*;
use crate::config::{self, require_regular, ResolvedSystem, SystemConfig};
use crate::error::CliError;
use crate::output;
use crate::record::*;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compose(a) => {
            let (cfg, sys) = load(&a.config)?;
            emit(&a.output, Format::Json, Some(cfg), Map::new(), cmd_compose(&sys)?)
        }
        Command::Scatter(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_scatter(&sys, &a)?;
            emit(&a.output, Format::Csv, Some(cfg), options(&a)?, payload)
        }
        Command::Spectrum(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_spectrum(&sys, &a.window)?;
            emit(&a.output, Format::Json, Some(cfg), options(&a)?, payload)
        }
        Command::SpectrumDecoupled(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_spectrum_decoupled(&sys, &a)?;
            emit(&a.output, Format::Json, Some(cfg), options(&a)?, payload)
        }
        Command::TraceCurve(a) => {
            let payload = cmd_trace_curve(&a)?;
            emit(&a.output, Format::Csv, None, options(&a)?, payload)
        }
        Command::LambertMap(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_lambert_map(&sys, &a)?;
            emit(&a.output, Format::Csv, Some(cfg), options(&a)?, payload)
        }
        Command::Heat(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_heat(&sys.v, &a)?;
            emit(&a.output, Format::Csv, Some(cfg), options(&a)?, payload)
        }
        Command::Wave(a) => {
            let (cfg, sys) = load(&a.config)?;
            let payload = cmd_wave(&sys, &a)?;
            emit(&a.output, Format::Csv, Some(cfg), options(&a)?, payload)
        }
    }
}

fn load(arg: &ConfigArg) -> Result<(SystemConfig, ResolvedSystem), CliError> {
    let cfg = config::load(&arg.config)?;
    let sys = config::resolve(&cfg)?;
    Ok((cfg, sys))
}

fn options<A: Serialize>(args: &A) -> Result<Map<String, Value>, CliError> {
    match serde_json::to_value(args) {
        Ok(Value::Object(map)) => Ok(map),
        _ => Err(CliError::Usage("options could not be recorded".into())),
    }
}

fn emit(
    out: &OutputArgs,
    default: Format,
    config: Option<SystemConfig>,
    options: Map<String, Value>,
    payload: Payload,
) -> Result<(), CliError> {
    let timestamp = out.timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let record = ResultRecord {
        command: payload.command().into(),
        input: Input { config, options },
        timestamp,
        payload,
    };
    let text = output::render(&record, out.format.unwrap_or(default))?;
    output::write(out.out.as_deref(), &text)
}

fn require_q(sys: &ResolvedSystem) -> Result<f64, CliError> {
    sys.q
        .ok_or_else(|| CliError::Usage("config needs a separation q (or physical.d)".into()))
}

fn require_positive_q(sys: &ResolvedSystem) -> Result<f64, CliError> {
    let q = require_q(sys)?;
    if q > 0.0 {
        Ok(q)
    } else {
        Err(CliError::Usage("this command needs q > 0".into()))
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|j| {
            if j + 1 == n {
                hi
            } else {
                lo + (hi - lo) * j as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn check_range(name: &str, lo: f64, hi: f64, steps: usize) -> Result<(), CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!("{name} range needs finite min < max")));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("{name} grid needs at least 2 steps")));
    }
    Ok(())
}

fn kind_name(kind: CouplingKind) -> &'static str {
    match kind {
        CouplingKind::Regular => "regular",
        CouplingKind::DecoupledPlus => "decoupled_plus",
        CouplingKind::DecoupledMinus => "decoupled_minus",
    }
}

fn matrix_rows(m: deltaprime::Mat2<f64>) -> [[f64; 2]; 2] {
    m.m
}

pub fn cmd_compose(sys: &ResolvedSystem) -> Result<Payload, CliError> {
    require_regular("v", &sys.v)?;
    require_regular("w", &sys.w)?;
    let u = compose(&sys.v, &sys.w)?;
    let product = kurasov_matrix(&sys.w)?.matrix() * kurasov_matrix(&sys.v)?.matrix();
    Ok(Payload::Compose(ComposePayload {
        u0: u.c0(),
        u1: u.c1(),
        kind: kind_name(u.kind()).into(),
        composed_matrix: matrix_rows(kurasov_matrix(&u)?.matrix()),
        product_matrix: matrix_rows(product),
    }))
}

pub fn cmd_scatter(sys: &ResolvedSystem, a: &ScatterArgs) -> Result<Payload, CliError> {
    require_regular("v", &sys.v)?;
    require_regular("w", &sys.w)?;
    if !(a.k_min > 0.0) {
        return Err(CliError::Usage("scatter needs k_min > 0".into()));
    }
    check_range("k", a.k_min, a.k_max, a.k_steps)?;
    let q = require_q(sys)?;
    let system = (q > 0.0).then(|| TwoPointSystem::new(sys.v, sys.w, q)).transpose()?;
    let mut rows = Vec::with_capacity(a.k_steps);
    for k in linspace(a.k_min, a.k_max, a.k_steps) {
        let s = match &system {
            Some(s) => scattering_from_transfer(&transfer_two_point(s, Complex64::new(k, 0.0))?)?,
            None => composed_limit_scattering(&sys.v, &sys.w, k)?,
        };
        let defect = s.unitarity_defect();
        if defect > 1e-10 {
            log::warn!("unitarity defect {defect:e} at k = {k}");
        }
        rows.push(ScatterRow {
            k,
            t_re: s.t.re,
            t_im: s.t.im,
            t_abs2: s.t.norm_sqr(),
            r_left_re: s.r_left.re,
            r_left_im: s.r_left.im,
            r_left_abs2: s.r_left.norm_sqr(),
            r_right_re: s.r_right.re,
            r_right_im: s.r_right.im,
            r_right_abs2: s.r_right.norm_sqr(),
        });
    }
    Ok(Payload::Scatter(ScatterPayload { scattering: rows }))
}

fn solver_config(w: &WindowArgs, default_plane: Plane) -> Result<SolverConfig<f64>, CliError> {
    let defaults = SolverConfig::<f64>::default().window;
    let plane = match w.plane {
        Some(PlaneArg::Z) => Plane::Z,
        Some(PlaneArg::K) => Plane::K,
        None => default_plane,
    };
    let window = Window {
        plane,
        re_min: w.re_min.unwrap_or(defaults.re_min),
        re_max: w.re_max.unwrap_or(defaults.re_max),
        im_min: w.im_min.unwrap_or(defaults.im_min),
        im_max: w.im_max.unwrap_or(defaults.im_max),
    };
    let mut cfg = SolverConfig::new(window);
    if let Some(g) = w.grid {
        cfg.grid_density = g;
    }
    if let Some(t) = w.tol {
        cfg.newton_tolerance = t;
    }
    if let Some(m) = w.max_iter {
        cfg.max_iterations = m;
    }
    if let Some(d) = w.dedup {
        cfg.dedup_radius = d;
    }
    if let Some(o) = w.origin {
        cfg.origin_exclusion_radius = o;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_spectrum(sys: &ResolvedSystem, w: &WindowArgs) -> Result<Payload, CliError> {
    require_regular("v", &sys.v)?;
    require_regular("w", &sys.w)?;
    let q = require_positive_q(sys)?;
    let cfg = solver_config(w, Plane::Z)?;
    let search = find_zeros_with_diagnostics(&TwoPointSystem::new(sys.v, sys.w, q)?, &cfg)?;
    log::info!(
        "{} zeros, {} dropped seeds, {} unpaired",
        search.points.len(),
        search.dropped_seeds,
        search.unpaired
    );
    Ok(Payload::Spectrum(SpectrumPayload {
        points: search.points.iter().map(PointRecord::from).collect(),
        dropped_seeds: search.dropped_seeds,
        unpaired: search.unpaired,
    }))
}

pub fn cmd_spectrum_decoupled(sys: &ResolvedSystem, a: &DecoupledArgs) -> Result<Payload, CliError> {
    let q = require_q(sys)?;
    let case = DecouplingCase::new(sys.v, sys.w, q).map_err(|e| CliError::Usage(e.to_string()))?;
    if case.tag() != a.case {
        return Err(CliError::Usage(format!(
            "config describes case {} but --case is {}",
            case.tag(),
            a.case
        )));
    }
    let (levels, limit_pole) = if a.case.is_double() {
        (double_decoupled_spectrum(&case, a.bound)?, None)
    } else {
        let plane = if q > 0.0 { Plane::Z } else { Plane::K };
        let cfg = solver_config(&a.window, plane)?;
        let found = find_mixed_zeros(&case, &cfg)?;
        let limit = match mixed_limit_poles(&case) {
            Ok(p) => Some(p),
            Err(Error::NoPole(msg)) => {
                log::info!("no limit pole: {msg}");
                None
            }
            Err(e) => return Err(e.into()),
        };
        (found.points, limit)
    };
    Ok(Payload::SpectrumDecoupled(DecoupledPayload {
        case: a.case.to_string(),
        levels: levels.iter().map(PointRecord::from).collect(),
        limit_pole: limit_pole.as_ref().map(PointRecord::from),
    }))
}

pub fn cmd_trace_curve(a: &TraceArgs) -> Result<Payload, CliError> {
    check_range("v1", a.v1_min, a.v1_max, a.steps)?;
    let rows = linspace(a.v1_min, a.v1_max, a.steps)
        .into_iter()
        .map(|v1| {
            let tr = Couplings64::regular(0.0, v1)
                .and_then(|c| deltaprime::trace(&c))
                .ok()
                .and_then(finite);
            TraceRow {
                v1,
                tr,
                divergent: tr.is_none() || (1.0 - v1.abs()).abs() < a.band,
            }
        })
        .collect();
    Ok(Payload::TraceCurve(TracePayload { trace: rows }))
}

pub fn cmd_lambert_map(sys: &ResolvedSystem, a: &LambertArgs) -> Result<Payload, CliError> {
    require_regular("v", &sys.v)?;
    require_regular("w", &sys.w)?;
    let q = require_positive_q(sys)?;
    check_range("zr", a.re_min, a.re_max, a.resolution)?;
    check_range("zi", a.im_min, a.im_max, a.resolution)?;
    let r = reduced_params(&TwoPointSystem::new(sys.v, sys.w, q)?)?;
    let mut grid = Vec::with_capacity(a.resolution * a.resolution);
    for zi in linspace(a.im_min, a.im_max, a.resolution) {
        for zr in linspace(a.re_min, a.re_max, a.resolution) {
            let (eq1, eq2) = real_imag_residuals(zr, zi, &r);
            grid.push(LambertRow {
                zr,
                zi,
                eq1: finite(eq1),
                eq2: finite(eq2),
                compat: compatibility_residual(zr, zi, &r).ok().and_then(finite),
            });
        }
    }
    Ok(Payload::LambertMap(LambertPayload { grid }))
}

pub fn cmd_heat(c: &Couplings64, a: &HeatArgs) -> Result<Payload, CliError> {
    if !(a.t_min > 0.0) {
        return Err(CliError::Usage("heat needs t_min > 0".into()));
    }
    check_range("t", a.t_min, a.t_max, a.steps)?;
    let rows = linspace(a.t_min, a.t_max, a.steps)
        .into_iter()
        .map(|t| {
            let h = heat_trace(c, t)?;
            Ok(HeatRow {
                t,
                re: finite(h.re),
                im: finite(h.im),
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(Payload::Heat(HeatPayload { heat: rows }))
}

pub fn cmd_wave(sys: &ResolvedSystem, a: &WaveArgs) -> Result<Payload, CliError> {
    require_regular("v", &sys.v)?;
    require_regular("w", &sys.w)?;
    let q = require_positive_q(sys)?;
    let (y_min, y_max) = (a.y_min.unwrap_or(-2.0 * q), a.y_max.unwrap_or(3.0 * q));
    check_range("y", y_min, y_max, a.steps)?;
    let incidence = match a.incidence {
        IncidenceArg::Left => Incidence::Left,
        IncidenceArg::Right => Incidence::Right,
    };
    let wave = piecewise_wave(&TwoPointSystem::new(sys.v, sys.w, q)?, a.k, incidence)?;
    let samples = linspace(y_min, y_max, a.steps)
        .into_iter()
        .map(|y| {
            let phi = wave.eval(y);
            WaveRow {
                y,
                region: wave.region_of(y),
                re: phi.re,
                im: phi.im,
                abs2: phi.norm_sqr(),
            }
        })
        .collect();
    Ok(Payload::Wave(WavePayload {
        coefficients: wave.regions.map(|[a, b]| [a.into(), b.into()]),
        currents: wave.currents(),
        samples,
    }))
}
