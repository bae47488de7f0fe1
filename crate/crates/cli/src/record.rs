//! Output schema shared by every command.

use deltaprime::{Complex64, SpectralPoint64};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::SystemConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub command: String,
    pub input: Input,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SystemConfig>,
    pub options: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub k: Cx,
    pub z: Option<Cx>,
    pub kind: String,
    pub residual: f64,
    pub partner: Option<Cx>,
}

impl From<&SpectralPoint64> for PointRecord {
    fn from(p: &SpectralPoint64) -> Self {
        PointRecord {
            k: p.k.into(),
            z: p.z.map(Cx::from),
            kind: p.kind.to_string(),
            residual: p.residual,
            partner: p.partner.map(Cx::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposePayload {
    pub u0: f64,
    pub u1: f64,
    pub kind: String,
    /// Kurasov matrix of the composed couplings.
    pub composed_matrix: [[f64; 2]; 2],
    /// `M_w M_v`.
    pub product_matrix: [[f64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterRow {
    pub k: f64,
    pub t_re: f64,
    pub t_im: f64,
    pub t_abs2: f64,
    pub r_left_re: f64,
    pub r_left_im: f64,
    pub r_left_abs2: f64,
    pub r_right_re: f64,
    pub r_right_im: f64,
    pub r_right_abs2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterPayload {
    pub scattering: Vec<ScatterRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumPayload {
    pub points: Vec<PointRecord>,
    pub dropped_seeds: usize,
    pub unpaired: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoupledPayload {
    pub case: String,
    pub levels: Vec<PointRecord>,
    /// Pole of the `q → 0` limit, when the case has one.
    pub limit_pole: Option<PointRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRow {
    pub v1: f64,
    pub tr: Option<f64>,
    pub divergent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TracePayload {
    pub trace: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambertRow {
    pub zr: f64,
    pub zi: f64,
    pub eq1: Option<f64>,
    pub eq2: Option<f64>,
    pub compat: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambertPayload {
    pub grid: Vec<LambertRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatRow {
    pub t: f64,
    pub re: Option<f64>,
    pub im: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatPayload {
    pub heat: Vec<HeatRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveRow {
    pub y: f64,
    pub region: usize,
    pub re: f64,
    pub im: f64,
    pub abs2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavePayload {
    /// `[A, B]` per region.
    pub coefficients: [[Cx; 2]; 3],
    pub currents: [f64; 3],
    pub samples: Vec<WaveRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Compose(ComposePayload),
    Scatter(ScatterPayload),
    Spectrum(SpectrumPayload),
    SpectrumDecoupled(DecoupledPayload),
    TraceCurve(TracePayload),
    LambertMap(LambertPayload),
    Heat(HeatPayload),
    Wave(WavePayload),
}

impl Payload {
    pub fn command(&self) -> &'static str {
        match self {
            Payload::Compose(_) => "compose",
            Payload::Scatter(_) => "scatter",
            Payload::Spectrum(_) => "spectrum",
            Payload::SpectrumDecoupled(_) => "spectrum-decoupled",
            Payload::TraceCurve(_) => "trace-curve",
            Payload::LambertMap(_) => "lambert-map",
            Payload::Heat(_) => "heat",
            Payload::Wave(_) => "wave",
        }
    }

    pub fn table(&self) -> Table {
        match self {
            Payload::Compose(p) => {
                let [[a, b], [c, d]] = p.composed_matrix;
                let [[e, f], [g, h]] = p.product_matrix;
                let mut row = vec![Cell::Num(p.u0), Cell::Num(p.u1), Cell::Text(p.kind.clone())];
                row.extend([a, b, c, d, e, f, g, h].map(Cell::Num));
                Table {
                    header: vec![
                        "u0", "u1", "kind", "m11", "m12", "m21", "m22", "p11", "p12", "p21", "p22",
                    ],
                    rows: vec![row],
                }
            }
            Payload::Scatter(p) => Table {
                header: vec![
                    "k", "t_re", "t_im", "t_abs2", "r_left_re", "r_left_im", "r_left_abs2", "r_right_re",
                    "r_right_im", "r_right_abs2",
                ],
                rows: p
                    .scattering
                    .iter()
                    .map(|r| {
                        [
                            r.k, r.t_re, r.t_im, r.t_abs2, r.r_left_re, r.r_left_im, r.r_left_abs2, r.r_right_re,
                            r.r_right_im, r.r_right_abs2,
                        ]
                        .map(Cell::Num)
                        .to_vec()
                    })
                    .collect(),
            },
            Payload::Spectrum(p) => Table {
                header: POINT_HEADER.to_vec(),
                rows: p.points.iter().map(point_cells).collect(),
            },
            Payload::SpectrumDecoupled(p) => {
                let mut header = POINT_HEADER.to_vec();
                header.push("source");
                let tagged = |pt: &PointRecord, source: &str| {
                    let mut cells = point_cells(pt);
                    cells.push(Cell::Text(source.into()));
                    cells
                };
                let mut rows: Vec<_> = p.levels.iter().map(|pt| tagged(pt, "solver")).collect();
                rows.extend(p.limit_pole.iter().map(|pt| tagged(pt, "limit")));
                Table { header, rows }
            }
            Payload::TraceCurve(p) => Table {
                header: vec!["v1", "tr", "divergent"],
                rows: p
                    .trace
                    .iter()
                    .map(|r| vec![Cell::Num(r.v1), Cell::opt(r.tr), Cell::Bool(r.divergent)])
                    .collect(),
            },
            Payload::LambertMap(p) => Table {
                header: vec!["zr", "zi", "eq1", "eq2", "compat"],
                rows: p
                    .grid
                    .iter()
                    .map(|r| {
                        vec![
                            Cell::Num(r.zr),
                            Cell::Num(r.zi),
                            Cell::opt(r.eq1),
                            Cell::opt(r.eq2),
                            Cell::opt(r.compat),
                        ]
                    })
                    .collect(),
            },
            Payload::Heat(p) => Table {
                header: vec!["t", "re", "im"],
                rows: p
                    .heat
                    .iter()
                    .map(|r| vec![Cell::Num(r.t), Cell::opt(r.re), Cell::opt(r.im)])
                    .collect(),
            },
            Payload::Wave(p) => Table {
                header: vec!["y", "region", "re", "im", "abs2"],
                rows: p
                    .samples
                    .iter()
                    .map(|r| {
                        vec![
                            Cell::Num(r.y),
                            Cell::Int(r.region),
                            Cell::Num(r.re),
                            Cell::Num(r.im),
                            Cell::Num(r.abs2),
                        ]
                    })
                    .collect(),
            },
        }
    }
}

const POINT_HEADER: [&str; 8] = ["k_re", "k_im", "z_re", "z_im", "kind", "residual", "partner_re", "partner_im"];

fn point_cells(p: &PointRecord) -> Vec<Cell> {
    vec![
        Cell::Num(p.k.re),
        Cell::Num(p.k.im),
        Cell::opt(p.z.map(|z| z.re)),
        Cell::opt(p.z.map(|z| z.im)),
        Cell::Text(p.kind.clone()),
        Cell::Num(p.residual),
        Cell::opt(p.partner.map(|z| z.re)),
        Cell::opt(p.partner.map(|z| z.im)),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Num(x) => write!(f, "{}", format_float(*x)),
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `None` for values that JSON cannot carry.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
