//! CSV and JSON emission for surfaces, frontiers and simulation runs.
//!
//! All computation happens in nats; the unit choice only rescales the
//! emitted numbers. Values are printed with 12 significant digits and
//! re-parse under the same schemas.

use serde::{Deserialize, Serialize};

use crate::region::{ParetoSurface, TradeoffPoint};
use crate::scalar::Scalar;
use crate::sim::{ErrorMethod, ExponentEstimate, ExponentSample};

/// Display units for emitted values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

impl std::str::FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(format!("unknown units '{other}', expected nats or bits")),
        }
    }
}

/// 12 significant digits, locale-free.
pub fn format_sig(x: f64) -> String {
    if x == f64::INFINITY {
        return "inf".into();
    }
    format!("{x:.11e}")
}

/// CSV for a rate-exponent surface. Columns:
/// `rate_<u>,e0_<u>,e1_<u>,s,px_0..px_{k-1}` where `<u>` is the unit label.
pub fn surface_csv<S: Scalar>(surface: &ParetoSurface<S>, units: Units) -> String {
    let mut out = String::new();
    let u = units.label();
    let k = surface
        .points
        .first()
        .map(|p| p.px.alphabet_size())
        .unwrap_or(0);
    out.push_str(&format!("rate_{u},e0_{u},e1_{u},s"));
    for i in 0..k {
        out.push_str(&format!(",px_{i}"));
    }
    out.push('\n');
    for p in &surface.points {
        out.push_str(&format_sig(units.scale(p.rate.to_f64_lossy())));
        out.push(',');
        out.push_str(&format_sig(units.scale(p.e0.to_f64_lossy())));
        out.push(',');
        out.push_str(&format_sig(units.scale(p.e1.to_f64_lossy())));
        out.push(',');
        out.push_str(&format_sig(p.s.to_f64_lossy()));
        for &mass in p.px.probs() {
            out.push(',');
            out.push_str(&format_sig(mass.to_f64_lossy()));
        }
        out.push('\n');
    }
    out
}

/// CSV for a two-objective frontier. Columns:
/// `rate_<u>,e_<u>[,s_star],px_0..px_{k-1}`. Comment lines (prefixed
/// with `#`) come first.
pub fn tradeoff_csv<S: Scalar>(
    points: &[TradeoffPoint<S>],
    units: Units,
    comments: &[&str],
) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    let u = units.label();
    let with_s = points.iter().any(|p| p.s_star.is_some());
    let k = points.first().map(|p| p.px.alphabet_size()).unwrap_or(0);
    out.push_str(&format!("rate_{u},e_{u}"));
    if with_s {
        out.push_str(",s_star");
    }
    for i in 0..k {
        out.push_str(&format!(",px_{i}"));
    }
    out.push('\n');
    for p in points {
        out.push_str(&format_sig(units.scale(p.rate.to_f64_lossy())));
        out.push(',');
        out.push_str(&format_sig(units.scale(p.e.to_f64_lossy())));
        if with_s {
            out.push(',');
            if let Some(s) = p.s_star {
                out.push_str(&format_sig(s.to_f64_lossy()));
            }
        }
        for &mass in p.px.probs() {
            out.push(',');
            out.push_str(&format_sig(mass.to_f64_lossy()));
        }
        out.push('\n');
    }
    out
}

/// JSON form of a rate-exponent surface.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SurfaceJson {
    pub units: Units,
    pub px_resolution: usize,
    pub s_resolution: usize,
    pub points: Vec<SurfacePointJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SurfacePointJson {
    pub rate: f64,
    pub e0: f64,
    pub e1: f64,
    pub s: f64,
    pub px: Vec<f64>,
}

impl SurfaceJson {
    pub fn from_surface<S: Scalar>(surface: &ParetoSurface<S>, units: Units) -> Self {
        Self {
            units,
            px_resolution: surface.px_resolution,
            s_resolution: surface.s_resolution,
            points: surface
                .points
                .iter()
                .map(|p| SurfacePointJson {
                    rate: units.scale(p.rate.to_f64_lossy()),
                    e0: units.scale(p.e0.to_f64_lossy()),
                    e1: units.scale(p.e1.to_f64_lossy()),
                    s: p.s.to_f64_lossy(),
                    px: p.px.probs().iter().map(|&v| v.to_f64_lossy()).collect(),
                })
                .collect(),
        }
    }
}

fn finite_or_none(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// JSON report of a simulation run. Exponents that came out infinite
/// (an error probability of exactly zero) are encoded as `null`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimulationReport {
    pub problem_hash: String,
    pub units: Units,
    /// "llrt" for fixed-tilt runs, "np" for type-I-constrained runs.
    pub mode: String,
    pub s: Option<f64>,
    pub alpha: Option<f64>,
    pub method: String,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub entries: Vec<SimulationEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub estimate: Option<EstimateJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimulationEntry {
    pub n: usize,
    pub comp: Vec<usize>,
    pub threshold: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub ci_halfwidth: f64,
    pub theory_e0: f64,
    pub theory_e1: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EstimateJson {
    pub e0: Option<f64>,
    pub e1: Option<f64>,
    pub slope_e0: Option<f64>,
    pub slope_e1: Option<f64>,
}

pub fn method_label(method: ErrorMethod) -> &'static str {
    match method {
        ErrorMethod::Exact => "exact",
        ErrorMethod::MonteCarlo => "monte-carlo",
    }
}

pub fn entry_from_sample<S: Scalar>(sample: &ExponentSample<S>, units: Units) -> SimulationEntry {
    SimulationEntry {
        n: sample.pair.n,
        comp: sample.comp.counts().to_vec(),
        threshold: units.scale(sample.spec.threshold.to_f64_lossy()),
        eps0: sample.pair.eps0.to_f64_lossy(),
        eps1: sample.pair.eps1.to_f64_lossy(),
        ci_halfwidth: sample.pair.ci_halfwidth.to_f64_lossy(),
        theory_e0: units.scale(sample.theory.e0.to_f64_lossy()),
        theory_e1: units.scale(sample.theory.e1.to_f64_lossy()),
    }
}

pub fn estimate_json<S: Scalar>(est: &ExponentEstimate<S>, units: Units) -> EstimateJson {
    EstimateJson {
        e0: finite_or_none(units.scale(est.e0.to_f64_lossy())),
        e1: finite_or_none(units.scale(est.e1.to_f64_lossy())),
        slope_e0: finite_or_none(units.scale(est.slope_e0.to_f64_lossy())),
        slope_e1: finite_or_none(units.scale(est.slope_e1.to_f64_lossy())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::example2_closed_form;
    use crate::tilt::uniform_grid;

    #[test]
    fn units_scaling() {
        assert_eq!(Units::Nats.scale(2f64.ln()), 2f64.ln());
        assert!((Units::Bits.scale(2f64.ln()) - 1.0).abs() < 1e-15);
        assert_eq!("bits".parse::<Units>().unwrap(), Units::Bits);
        assert!("dits".parse::<Units>().is_err());
    }

    #[test]
    fn sig_digits_round_trip() {
        for &x in &[0.3680641440353, 1e-12, 123456.789, 0.0] {
            let parsed: f64 = format_sig(x).parse().unwrap();
            let err = (parsed - x).abs();
            assert!(err <= x.abs() * 1e-11, "{x} -> {parsed}");
        }
    }

    #[test]
    fn surface_csv_parses_back() {
        let surf = example2_closed_form(0.1f64, 0.3, 1.0, &uniform_grid(11)).unwrap();
        let csv = surface_csv(&surf, Units::Nats);
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert_eq!(header, "rate_nats,e0_nats,e1_nats,s,px_0,px_1");
        let mut rows = 0;
        for line in lines {
            let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            assert_eq!(fields.len(), 6);
            rows += 1;
        }
        assert_eq!(rows, surf.points.len());
    }

    #[test]
    fn surface_json_round_trip() {
        let surf = example2_closed_form(0.1f64, 0.3, 1.0, &uniform_grid(5)).unwrap();
        let json = SurfaceJson::from_surface(&surf, Units::Bits);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let back: SurfaceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(json, back);
    }

    #[test]
    fn report_round_trip_with_infinite_sentinel() {
        let report = SimulationReport {
            problem_hash: "deadbeef".into(),
            units: Units::Nats,
            mode: "llrt".into(),
            s: Some(0.5),
            alpha: None,
            method: "exact".into(),
            trials: None,
            seed: None,
            entries: vec![SimulationEntry {
                n: 10,
                comp: vec![5, 5],
                threshold: -0.095,
                eps0: 0.26,
                eps1: 0.15,
                ci_halfwidth: 0.0,
                theory_e0: 0.028,
                theory_e1: 0.038,
            }],
            estimate: Some(EstimateJson {
                e0: finite_or_none(f64::INFINITY),
                e1: Some(0.13),
                slope_e0: Some(0.06),
                slope_e1: Some(0.05),
            }),
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: SimulationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report, back);
        assert_eq!(back.estimate.unwrap().e0, None);
    }
}
