//! Declarative scenario files: systems, a device pipeline, and an
//! optional frame change, executed into a structured report.

use std::collections::BTreeMap;

use krein::{
    big_pi, born, compose_sequence, exchange_device, frames, m_device, pi_small, random_dyn_frame,
    Error, FrameTransform, MeasurementDevice, Observable, SL2CElement, SU2Element, Sector, State,
    TranslationMatrix, DEFAULT_TOL,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::{complex_from, complex_json, mat2_json, row2_json};

/// A parsed and validated scenario.
pub struct Scenario {
    pub tol: f64,
    pub systems: Vec<System>,
    pub pipeline: Vec<MeasurementDevice>,
    pub frame: Option<FrameTransform>,
    echo: Value,
}

pub struct System {
    pub label: String,
    pub state: State,
    pub observable: Option<Observable>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    tol: Option<f64>,
    systems: Vec<SystemDecl>,
    #[serde(default)]
    pipeline: Vec<DeviceDecl>,
    #[serde(default)]
    frame: Option<FrameDecl>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDecl {
    label: String,
    sector: String,
    state: [[f64; 2]; 2],
    #[serde(default)]
    spectrum: Option<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(tag = "device", rename_all = "kebab-case", deny_unknown_fields)]
enum DeviceDecl {
    /// Canonical branch projector.
    Pi { sector: String, branch: usize },
    /// State-weighted branch projector.
    BigPi { system: String, branch: usize },
    /// Branch exchange within one system.
    Exchange {
        system: String,
        from: usize,
        to: usize,
    },
    /// Creation-transmission dyad between two systems.
    M {
        incoming: String,
        outgoing: String,
        branch: usize,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum FrameDecl {
    Identity,
    /// Dynamical frame from an SU(2) rotation (unit-quaternion
    /// parameters) and a normalized translation matrix.
    Dyn {
        beta: [f64; 4],
        w0: f64,
        w: [f64; 3],
    },
    /// Poincaré matrix from an SL(2,C) element and a normalized
    /// translation; must land in the dynamical intersection.
    Poincare {
        a: [[[f64; 2]; 2]; 2],
        w0: f64,
        w: [f64; 3],
    },
    /// Seeded random dynamical frame.
    Random { seed: u64 },
}

fn sector_from(name: &str) -> Result<Sector, String> {
    match name {
        "plus" => Ok(Sector::Plus),
        "minus" => Ok(Sector::Minus),
        other => Err(format!(
            "unknown sector {other:?} (expected \"plus\" or \"minus\")"
        )),
    }
}

fn check_branch(b: usize) -> Result<(), String> {
    if b < 2 {
        Ok(())
    } else {
        Err(format!("branch index {b} out of range (0 or 1)"))
    }
}

impl Scenario {
    /// Parse and validate a scenario from JSON text.
    pub fn parse(text: &str) -> Result<Scenario, String> {
        let echo: Value =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| format!("invalid scenario: {e}"))?;
        let tol = file.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(format!("tol must be positive and finite, got {tol}"));
        }
        let mut systems = Vec::new();
        for decl in &file.systems {
            if systems
                .iter()
                .any(|s: &System| s.label == decl.label)
            {
                return Err(format!("duplicate system label {:?}", decl.label));
            }
            let sector = sector_from(&decl.sector)?;
            let amplitudes = [complex_from(&decl.state[0]), complex_from(&decl.state[1])];
            let state = State::new(sector, amplitudes, &decl.label, 1e-9).map_err(|e| {
                format!("system {:?}: {e}", decl.label)
            })?;
            let observable = match decl.spectrum {
                None => None,
                Some([s0, s1]) => Some(
                    Observable::new(sector, (s0, s1), 1e-12)
                        .map_err(|e| format!("system {:?}: {e}", decl.label))?,
                ),
            };
            systems.push(System {
                label: decl.label.clone(),
                state,
                observable,
            });
        }
        if systems.is_empty() {
            return Err("scenario declares no systems".to_string());
        }

        let find = |label: &str| -> Result<&System, String> {
            systems
                .iter()
                .find(|s| s.label == label)
                .ok_or_else(|| format!("pipeline references unknown system {label:?}"))
        };
        let mut pipeline = Vec::new();
        for decl in &file.pipeline {
            let device = match decl {
                DeviceDecl::Pi { sector, branch } => {
                    check_branch(*branch)?;
                    pi_small(sector_from(sector)?, *branch)
                }
                DeviceDecl::BigPi { system, branch } => {
                    check_branch(*branch)?;
                    big_pi(&find(system)?.state, *branch)
                }
                DeviceDecl::Exchange { system, from, to } => {
                    check_branch(*from)?;
                    check_branch(*to)?;
                    if from == to {
                        return Err("exchange device needs two distinct branches".to_string());
                    }
                    exchange_device(&find(system)?.state, *from, *to, tol)
                        .map_err(|e| format!("exchange on {system:?}: {e}"))?
                }
                DeviceDecl::M {
                    incoming,
                    outgoing,
                    branch,
                } => {
                    check_branch(*branch)?;
                    m_device(&find(incoming)?.state, &find(outgoing)?.state, *branch)
                        .map_err(|e| format!("m device: {e}"))?
                }
            };
            pipeline.push(device);
        }

        let frame = match &file.frame {
            None => None,
            Some(FrameDecl::Identity) => Some(FrameTransform::identity("identity")),
            Some(FrameDecl::Dyn { beta, w0, w }) => {
                let rotation = SU2Element::from_params(beta[0], beta[1], beta[2], beta[3]);
                let translation = TranslationMatrix::normalized_from_params(*w0, *w);
                let element = krein::dyn_matrix(&rotation, &translation)
                    .map_err(|e| format!("dyn frame: {e}"))?;
                let map = krein::dyn_restriction(&element, tol.max(1e-9))
                    .map_err(|e| format!("dyn frame: {e}"))?;
                Some(FrameTransform::new(map, "dyn"))
            }
            Some(FrameDecl::Poincare { a, w0, w }) => {
                let mut m = krein::Mat2::zero();
                for i in 0..2 {
                    for j in 0..2 {
                        m.0[i][j] = complex_from(&a[i][j]);
                    }
                }
                let a = SL2CElement::new(m, tol.max(1e-9))
                    .map_err(|e| format!("poincare frame: {e}"))?;
                let translation = TranslationMatrix::normalized_from_params(*w0, *w);
                let element = krein::poincare_matrix(&a, &translation);
                let map = krein::dyn_restriction(&element, tol.max(1e-9)).map_err(|e| {
                    format!("poincare frame is not in the dynamical intersection: {e}")
                })?;
                Some(FrameTransform::new(map, "poincare"))
            }
            Some(FrameDecl::Random { seed }) => {
                let (_, map) = random_dyn_frame(*seed);
                Some(FrameTransform::new(map, "random"))
            }
        };
        let _ = file.seed; // echoed back; execution is fully deterministic

        Ok(Scenario {
            tol,
            systems,
            pipeline,
            frame,
            echo,
        })
    }

    /// Execute the scenario: Born tables, pipeline composition with
    /// extracted weights, and the frame-invariance report when a frame
    /// is declared. Returns (report, all assertions passed).
    pub fn run(&self) -> Result<(Value, bool), String> {
        let mut pass = true;

        let mut born_tables = BTreeMap::new();
        for system in &self.systems {
            let table = [born(&system.state, 0), born(&system.state, 1)];
            if (table[0] + table[1] - 1.0).abs() >= self.tol.max(1e-12) {
                pass = false;
            }
            born_tables.insert(system.label.clone(), json!(table));
        }

        let pipeline_json = if self.pipeline.is_empty() {
            Value::Null
        } else {
            let (op, weights) = compose_sequence(&self.pipeline).map_err(|e| match e {
                Error::SectorMismatch { .. } => {
                    "pipeline mixes devices from different sectors".to_string()
                }
                other => other.to_string(),
            })?;
            let trace = op.sector_trace().map_err(|e| e.to_string())?;
            json!({
                "operator": mat2_json(&op.entries()),
                "weights": Value::Array(weights.iter().map(|w| complex_json(*w)).collect()),
                "trace": complex_json(trace),
            })
        };

        let invariance_json = match &self.frame {
            None => Value::Null,
            Some(frame) => {
                let primary = &self.systems[0];
                let sector = primary.state.sector();
                let same_sector: Vec<&State> = self
                    .systems
                    .iter()
                    .map(|s| &s.state)
                    .filter(|s| s.sector() == sector)
                    .collect();
                let pick = |i: usize| same_sector[i % same_sector.len()].clone();
                let observable = primary
                    .observable
                    .unwrap_or_else(|| Observable::new(sector, (1.0, -1.0), 1e-12).unwrap());
                let scenario = frames::FrameScenario {
                    state: primary.state.clone(),
                    partners: [pick(1), pick(2), pick(3)],
                    observable,
                };
                let report = frames::invariance_report(&scenario, frame, self.tol)
                    .map_err(|e| e.to_string())?;
                if !report.pass() {
                    pass = false;
                }
                let claims: BTreeMap<&String, Value> = report
                    .residuals()
                    .iter()
                    .map(|(k, r)| {
                        (
                            k,
                            json!({
                                "description": report.descriptions()[k],
                                "residual": r,
                                "threshold": self.tol,
                                "pass": r.is_finite() && *r < self.tol,
                            }),
                        )
                    })
                    .collect();
                let informational: BTreeMap<&String, Value> = report
                    .informational()
                    .iter()
                    .map(|(k, v)| {
                        (
                            k,
                            json!({
                                "description": report.descriptions()[k],
                                "value": v,
                            }),
                        )
                    })
                    .collect();
                json!({
                    "frame": frame.label(),
                    "primed_amplitudes": row2_json(frames::transform_state_amplitudes(
                        &primary.state,
                        frame,
                    )),
                    "claims": claims,
                    "informational": informational,
                    "pass": report.pass(),
                })
            }
        };

        let report = json!({
            "command": "run",
            "scenario": self.echo,
            "born": born_tables,
            "pipeline": pipeline_json,
            "invariance": invariance_json,
            "pass": pass,
        });
        Ok((report, pass))
    }
}
