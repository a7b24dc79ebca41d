//! Scenario configuration: INI files, command-line overrides and their
//! resolution against the canonical defaults.

use std::collections::BTreeMap;

use crate::ini::{IniDocument, IniError};
use crate::params::{to_dimensionless, PairConvention, PhysicalParams};

use super::scenario::{Geometry, Scenario, ScenarioName};

/// Keys accepted outside any section.
pub const SCENARIO_KEYS: &[&str] = &[
    "alpha",
    "p",
    "coupling_prefactor",
    "r12",
    "L",
    "d",
    "t_max",
    "steps",
    "omega_max",
    "omega_steps",
    "temperature",
    "convention",
    "allow_immiscible",
];

/// Optional settings from one source (file or flags).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub coupling_prefactor: Option<f64>,
    pub sweep: Option<Vec<f64>>,
    pub well_half_sep: Option<f64>,
    pub trap_half_dist: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub omega_max: Option<f64>,
    pub omega_steps: Option<usize>,
    pub temperature: Option<f64>,
    pub convention: Option<PairConvention>,
    pub allow_immiscible: Option<bool>,
    pub physical: Option<PhysicalParams>,
    /// key -> line it was read from
    pub lines: BTreeMap<String, usize>,
}

macro_rules! take {
    ($self:ident, $other:ident, $($f:ident),*) => {
        $( if $other.$f.is_some() { $self.$f = $other.$f; } )*
    };
}

impl Overrides {
    /// `other` wins wherever it sets a value.
    pub fn merged(mut self, other: Overrides) -> Self {
        take!(
            self,
            other,
            alpha,
            p,
            coupling_prefactor,
            sweep,
            well_half_sep,
            trap_half_dist,
            t_max,
            steps,
            omega_max,
            omega_steps,
            temperature,
            convention,
            allow_immiscible,
            physical
        );
        for (k, _) in other.lines.iter().filter(|(_, l)| **l == 0) {
            self.lines.remove(k);
        }
        self.lines.extend(other.lines.into_iter().filter(|(_, l)| *l > 0));
        self
    }

    fn at(&self, key: &str) -> usize {
        self.lines.get(key).copied().unwrap_or(0)
    }
}

pub fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("expected a comma-separated list of numbers, got `{text}`"))
        })
        .collect()
}

fn parse_bool(text: &str) -> Result<bool, String> {
    match text.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got `{text}`")),
    }
}

/// Reads an INI scenario file.  Top-level keys are dimensionless; an
/// optional `[physical]` section gives SI inputs from which α, p, κ, L,
/// d and T are derived (top-level keys still take precedence).
pub fn parse_config(text: &str) -> Result<Overrides, Vec<IniError>> {
    let doc = IniDocument::parse(text)?;
    let mut errors = doc.unknown_keys("", SCENARIO_KEYS);
    for section in doc.sections() {
        if !section.is_empty() && section != "physical" {
            let line = doc.header_line(section).unwrap_or(0);
            errors.push(IniError::new(line, format!("unknown section [{section}] (expected [physical])")));
        }
    }
    let mut o = Overrides::default();
    for e in doc.entries.iter().filter(|e| e.section.is_empty()) {
        let number = || {
            e.value
                .parse::<f64>()
                .map_err(|_| format!("`{}`: expected a number, got `{}`", e.key, e.value))
        };
        let count = || {
            e.value
                .parse::<usize>()
                .map_err(|_| format!("`{}`: expected a positive integer, got `{}`", e.key, e.value))
        };
        let result: Result<(), String> = (|| {
            match e.key.as_str() {
                "alpha" => o.alpha = Some(number()?),
                "p" => o.p = Some(number()?),
                "coupling_prefactor" => o.coupling_prefactor = Some(number()?),
                "r12" => o.sweep = Some(parse_list(&e.value).map_err(|m| format!("`r12`: {m}"))?),
                "L" => o.well_half_sep = Some(number()?),
                "d" => o.trap_half_dist = Some(number()?),
                "t_max" => o.t_max = Some(number()?),
                "steps" => o.steps = Some(count()?),
                "omega_max" => o.omega_max = Some(number()?),
                "omega_steps" => o.omega_steps = Some(count()?),
                "temperature" => o.temperature = Some(number()?),
                "convention" => o.convention = Some(e.value.parse()?),
                "allow_immiscible" => o.allow_immiscible = Some(parse_bool(&e.value).map_err(|m| format!("`allow_immiscible`: {m}"))?),
                _ => return Ok(()),
            }
            Ok(())
        })();
        match result {
            Ok(()) => {
                o.lines.insert(e.key.clone(), e.line);
            }
            Err(msg) => errors.push(IniError::new(e.line, msg)),
        }
    }
    if doc.has_section("physical") {
        match PhysicalParams::from_ini(&doc, "physical") {
            Ok(p) => o.physical = Some(p),
            Err(errs) => errors.extend(errs),
        }
    }
    if errors.is_empty() {
        Ok(o)
    } else {
        errors.sort_by_key(|e| e.line);
        Err(errors)
    }
}

/// Resolves `o` against the defaults of `name`, collecting every problem.
pub fn resolve(name: ScenarioName, o: &Overrides) -> Result<Scenario, Vec<IniError>> {
    let mut s = Scenario::defaults(name);
    let mut errors = Vec::new();
    let mut bad = |key: &str, msg: String| errors.push(IniError::new(o.at(key), format!("`{key}`: {msg}")));

    let mut geometry_from_physical = None;
    if let Some(phys) = &o.physical {
        match to_dimensionless(phys) {
            Ok(cfg) => {
                s.base.alpha = cfg.alpha;
                s.base.p = cfg.p;
                s.base.coupling_prefactor = cfg.coupling_prefactor;
                s.base.temperature = cfg.temperature;
                geometry_from_physical = Some(Geometry {
                    well_half_sep: cfg.well_half_sep,
                    trap_half_dist: cfg.trap_half_dist,
                });
            }
            Err(e) => bad("physical", e.to_string()),
        }
    }
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if let Some(v) = o.alpha {
        if positive(v) {
            s.base.alpha = v;
        } else {
            bad("alpha", format!("must be positive, got {v}"));
        }
    }
    if let Some(v) = o.p {
        if positive(v) {
            s.base.p = v;
        } else {
            bad("p", format!("must be positive, got {v}"));
        }
    }
    if let Some(v) = o.coupling_prefactor {
        if v.is_finite() && v >= 0.0 {
            s.base.coupling_prefactor = v;
        } else {
            bad("coupling_prefactor", format!("must be non-negative, got {v}"));
        }
    }
    if let Some(v) = o.temperature {
        if v.is_finite() && v >= 0.0 {
            s.base.temperature = v;
        } else {
            bad("temperature", format!("must be non-negative, got {v}"));
        }
    }
    if let Some(c) = o.convention {
        s.base.pair_convention = c;
    }

    let explicit_sweep = o.sweep.is_some();
    if let Some(sweep) = &o.sweep {
        if sweep.is_empty() {
            bad("r12", "sweep must not be empty".into());
        } else if let Some(v) = sweep.iter().find(|v| !(v.is_finite() && **v > -1.0)) {
            bad("r12", format!("values must exceed -1, got {v}"));
        } else {
            s.sweep = sweep.clone();
        }
    }
    // the default sweep reaches a12/a = 3 and is accepted as such
    let allow = o.allow_immiscible.unwrap_or(false) || !explicit_sweep;
    s.base.allow_immiscible = allow;
    let immiscible: Vec<f64> = s.sweep.iter().copied().filter(|r| *r >= 1.0).collect();
    if !immiscible.is_empty() {
        if allow {
            s.warnings.push(format!(
                "a12/a >= 1 requested ({immiscible:?}): the symmetric mixture is not miscible there; lower-branch modes below the real-dispersion threshold k_th = sqrt(2 alpha (r12 - 1)) are excluded"
            ));
        } else {
            bad(
                "r12",
                format!("values {immiscible:?} violate the stability condition a12 < a; pass --allow-immiscible to evaluate them"),
            );
        }
    }

    if let Some(g) = geometry_from_physical {
        s.geometries = vec![g];
    }
    if let Some(l) = o.well_half_sep {
        if l.is_finite() && l >= 0.0 {
            s.geometries = vec![Geometry {
                well_half_sep: l,
                trap_half_dist: 2.0 * l,
            }];
        } else {
            bad("L", format!("must be non-negative, got {l}"));
        }
    }
    if let Some(d) = o.trap_half_dist {
        if d.is_finite() && d > 0.0 {
            for g in &mut s.geometries {
                g.trap_half_dist = d;
            }
        } else {
            bad("d", format!("must be positive, got {d}"));
        }
    }

    if let Some(t) = o.t_max {
        if positive(t) {
            s.time.t_max = t;
        } else {
            bad("t_max", format!("must be positive, got {t}"));
        }
    }
    if let Some(n) = o.steps {
        if n >= 64 {
            s.time.steps = n;
        } else {
            bad("steps", format!("need at least 64 time steps, got {n}"));
        }
    }
    if let Some(w) = o.omega_max {
        if positive(w) {
            s.frequency.omega_max = w;
        } else {
            bad("omega_max", format!("must be positive, got {w}"));
        }
    }
    if let Some(n) = o.omega_steps {
        if n >= 8 {
            s.frequency.steps = n;
        } else {
            bad("omega_steps", format!("need at least 8 frequencies, got {n}"));
        }
    }

    if errors.is_empty() {
        for &r in &s.sweep {
            for &g in &s.geometries {
                if let Err(e) = s.config(r, g) {
                    errors.push(IniError::new(0, format!("r12 = {r}, L = {}: {e}", g.well_half_sep)));
                }
            }
        }
    }
    if errors.is_empty() {
        Ok(s)
    } else {
        Err(errors)
    }
}
