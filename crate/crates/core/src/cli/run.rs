//! Computes the data tables behind each figure scenario.

use rayon::prelude::*;

use crate::dephasing::{Decoherence, GammaKind};
use crate::entanglement::{entanglement_trajectory, induced_coupling_with};
use crate::error::Result;
use crate::nonmarkov::blp_measure;
use crate::reservoir::{spectral_density_numeric, Branch, CouplingKind, DispersionModel};

use super::scenario::{Geometry, Scenario, ScenarioName};

/// One CSV: a leading abscissa column followed by data columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    /// Full double precision, comma separated, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        let rows = self.columns.first().map_or(0, Vec::len);
        for i in 0..rows {
            let row: Vec<String> = self.columns.iter().map(|c| format!("{:.16e}", c[i])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn sweep_header(x: &str, sweep: &[f64]) -> Vec<String> {
    std::iter::once(x.to_string())
        .chain(sweep.iter().map(|r| format!("r12={r}")))
        .collect()
}

fn file_name(s: &Scenario, parts: &[&str], g: Geometry) -> String {
    let mut name = s.name.as_str().to_string();
    for p in parts {
        name.push('_');
        name.push_str(p);
    }
    if s.geometries.len() > 1 {
        name.push_str(&format!("_L{}", g.well_half_sep));
    }
    name + ".csv"
}

/// Evaluates `f` on the time grid for every sweep value.
fn time_columns<F>(s: &Scenario, g: Geometry, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&Decoherence, f64) -> Result<f64> + Sync,
{
    let times = s.time.points();
    let mut columns = vec![times.clone()];
    let data = s
        .sweep
        .par_iter()
        .map(|&r| {
            let deco = Decoherence::new(s.config(r, g)?)?;
            times.par_iter().map(|&t| f(&deco, t)).collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    columns.extend(data);
    Ok(columns)
}

fn frequency_columns(s: &Scenario, g: Geometry, branch: Branch, kind: CouplingKind) -> Result<Vec<Vec<f64>>> {
    let omegas = s.frequency.points();
    let mut columns = vec![omegas.clone()];
    let data = s
        .sweep
        .par_iter()
        .map(|&r| {
            let model = DispersionModel::new(s.config(r, g)?)?;
            omegas
                .iter()
                .map(|&w| spectral_density_numeric(&model, branch, kind, w))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    columns.extend(data);
    Ok(columns)
}

/// Every table of the scenario, in a fixed order.
pub fn compute(s: &Scenario) -> Result<Vec<Table>> {
    let temp = s.base.temperature;
    let mut tables = Vec::new();
    for &g in &s.geometries {
        for branch in Branch::ALL {
            let b = branch.name();
            match s.name {
                ScenarioName::GammaSingle => tables.push(Table {
                    file: file_name(s, &[b], g),
                    header: sweep_header("t", &s.sweep),
                    columns: time_columns(s, g, |d, t| d.gamma(branch, GammaKind::Gamma0, t, temp))?,
                }),
                ScenarioName::GammaTwo | ScenarioName::DecayRates => {
                    for kind in [GammaKind::Gamma1, GammaKind::Gamma2] {
                        let rates = s.name == ScenarioName::DecayRates;
                        tables.push(Table {
                            file: file_name(s, &[b, kind.name()], g),
                            header: sweep_header("t", &s.sweep),
                            columns: time_columns(s, g, |d, t| {
                                if rates {
                                    d.decay_rate(branch, kind, t, temp)
                                } else {
                                    d.gamma(branch, kind, t, temp)
                                }
                            })?,
                        });
                    }
                }
                ScenarioName::NonmarkovSingle => {
                    let rows = s
                        .sweep
                        .par_iter()
                        .map(|&r| {
                            let deco = Decoherence::new(s.config(r, g)?)?;
                            let traj = deco.trajectory(branch, GammaKind::Gamma0, s.time.t_max, s.time.steps, temp)?;
                            let rep = blp_measure(&traj)?;
                            Ok((rep.measure, rep.raw_measure, rep.intervals.len() as f64))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    tables.push(Table {
                        file: file_name(s, &[b], g),
                        header: ["r12", "measure", "raw_measure", "intervals"].map(String::from).to_vec(),
                        columns: vec![
                            s.sweep.clone(),
                            rows.iter().map(|r| r.0).collect(),
                            rows.iter().map(|r| r.1).collect(),
                            rows.iter().map(|r| r.2).collect(),
                        ],
                    });
                }
                ScenarioName::SdfSingle => tables.push(Table {
                    file: file_name(s, &[b], g),
                    header: sweep_header("omega", &s.sweep),
                    columns: frequency_columns(s, g, branch, CouplingKind::Single)?,
                }),
                ScenarioName::SdfTwo => {
                    for (label, kind) in [("j1", CouplingKind::PairSum), ("j2", CouplingKind::PairDiff)] {
                        tables.push(Table {
                            file: file_name(s, &[b, label], g),
                            header: sweep_header("omega", &s.sweep),
                            columns: frequency_columns(s, g, branch, kind)?,
                        });
                    }
                }
                ScenarioName::InducedCoupling => tables.push(Table {
                    file: file_name(s, &[b], g),
                    header: sweep_header("t", &s.sweep),
                    columns: time_columns(s, g, |d, t| induced_coupling_with(d, branch, t))?,
                }),
                ScenarioName::Concurrence => {
                    let trajs = s
                        .sweep
                        .par_iter()
                        .map(|&r| entanglement_trajectory(&Decoherence::new(s.config(r, g)?)?, branch, s.time.t_max, s.time.steps, temp))
                        .collect::<Result<Vec<_>>>()?;
                    let times = s.time.points();
                    let mut coupling = vec![times.clone()];
                    coupling.extend(trajs.iter().map(|t| t.coupling()));
                    let mut conc = vec![times];
                    conc.extend(trajs.into_iter().map(|t| t.concurrence));
                    tables.push(Table {
                        file: file_name(s, &[b, "coupling"], g),
                        header: sweep_header("t", &s.sweep),
                        columns: coupling,
                    });
                    tables.push(Table {
                        file: file_name(s, &[b, "concurrence"], g),
                        header: sweep_header("t", &s.sweep),
                        columns: conc,
                    });
                }
            }
        }
    }
    Ok(tables)
}
