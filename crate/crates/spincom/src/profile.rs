//! Configuration profiles: a line-oriented `key = value` text format with
//! `[section]` headers.
//!
//! Sections are `resonator`, `mechanics`, `drive`, `bath` and `grids`.
//! Dimensional keys carry a mandatory unit suffix: `_hz` values are ordinary
//! frequencies nu (converted internally as `omega = 2 pi nu`), `_rads` values
//! are angular rates taken literally, and `_m`, `_kg`, `_w`, `_k` are SI
//! lengths, masses, powers and temperatures. Unknown keys are errors; missing
//! keys fall back to the built-in default profile with a logged notice.
//!
//! ```text
//! [resonator]
//! kappa_hz = 6.43e6        # kappa = 2 pi * 6.43 MHz
//! [drive]
//! direction = forward
//! nu_rot_hz = 5690
//! ```

use crate::model::{Direction, DriveConfig, PhysicalParams};
use crate::spectra::{FrequencyGrid, GridScale};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

/// A named parameter bundle: physics + drive + sweep grids.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub params: PhysicalParams,
    pub drive: DriveConfig,
    pub grids: GridSpec,
    /// Free-form note on where the numbers came from.
    pub provenance: String,
    /// Let sweeps keep going over unstable grid points (they are masked).
    pub allow_unstable: bool,
}

/// Default grids used by scans and sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub omega_scale: GridScale,
    /// Fourier-frequency grid bounds, Hz (omega = 2 pi f).
    pub omega_min_hz: f64,
    pub omega_max_hz: f64,
    pub omega_points: usize,
    /// Rotation-rate grid bounds, Hz.
    pub nu_min_hz: f64,
    pub nu_max_hz: f64,
    pub nu_points: usize,
    /// Homodyne-angle grid resolution over [0, pi).
    pub phi_points: usize,
}

impl GridSpec {
    pub fn omega_grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::new(
            2.0 * PI * self.omega_min_hz,
            2.0 * PI * self.omega_max_hz,
            self.omega_points,
            self.omega_scale,
        )
    }

    pub fn nu_values(&self) -> Vec<f64> {
        linspace(self.nu_min_hz, self.nu_max_hz, self.nu_points)
    }

    pub fn phi_values(&self) -> Vec<f64> {
        (0..self.phi_points)
            .map(|i| PI * i as f64 / self.phi_points as f64)
            .collect()
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl Default for Profile {
    /// The documented default profile.
    ///
    /// Resonator and mechanics follow the quoted experimental numbers
    /// (Q = 3.2e7, kappa/2pi = 6.43 MHz, m = 10 ng, Q_m = 1.21e4,
    /// Gamma_m = 2 pi * 5.2 kHz); radius, pump power, coupling, bath
    /// temperature and g0 are tuned so that the one-way squeezing and
    /// sub-SQL structure appear at nu_rot = 5.69 kHz with the backward
    /// drive still stable across the default spin grid.
    fn default() -> Self {
        let gamma_m = 2.0 * PI * 5.2e3;
        let q_m = 1.21e4;
        let params = PhysicalParams {
            refractive_index: 1.4,
            radius: 0.10e-3,
            wavelength: 1550e-9,
            dispersion: 0.0,
            optical_q: 3.2e7,
            total_decay: 2.0 * PI * 6.43e6,
            coupling_efficiency: 1.0,
            effective_mass: 1.0e-11,
            mechanical_q: q_m,
            mechanical_damping: gamma_m,
            mechanical_frequency: q_m * gamma_m,
            single_photon_coupling: 2.0 * PI * 100.0,
            input_power: 10.0e-3,
            bath_temperature: 0.13,
        };
        let drive = DriveConfig {
            direction: Direction::Forward,
            rotation_frequency: 5.69e3,
            homodyne_angle: 0.0,
        };
        let grids = GridSpec {
            omega_scale: GridScale::Logarithmic,
            omega_min_hz: 10.0,
            omega_max_hz: 1.0e7,
            omega_points: 400,
            nu_min_hz: 250.0,
            nu_max_hz: 5.8e3,
            nu_points: 100,
            phi_points: 72,
        };
        Profile {
            params,
            drive,
            grids,
            provenance: "built-in default".to_string(),
            allow_unstable: false,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Resonator,
    Mechanics,
    Drive,
    Bath,
    Grids,
}

impl Section {
    fn parse(name: &str, line: usize) -> Result<Self> {
        match name {
            "resonator" => Ok(Section::Resonator),
            "mechanics" => Ok(Section::Mechanics),
            "drive" => Ok(Section::Drive),
            "bath" => Ok(Section::Bath),
            "grids" => Ok(Section::Grids),
            other => Err(Error::Parse {
                line,
                message: format!(
                    "unknown section `[{other}]` (expected resonator, mechanics, drive, bath or grids)"
                ),
            }),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::None => "",
            Section::Resonator => "resonator",
            Section::Mechanics => "mechanics",
            Section::Drive => "drive",
            Section::Bath => "bath",
            Section::Grids => "grids",
        }
    }
}

/// Keys that denote angular rates when suffixed `_rads` and ordinary
/// frequencies when suffixed `_hz`.
const RATE_STEMS: [&str; 4] = ["kappa", "gamma_m", "omega_m", "g0"];

struct RawProfile {
    /// (section, key) -> (value string, line number)
    entries: BTreeMap<(String, String), (String, usize)>,
}

impl RawProfile {
    fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut section = Section::None;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or(Error::Parse {
                    line: line_no,
                    message: "unterminated section header".to_string(),
                })?;
                section = Section::parse(name.trim(), line_no)?;
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                message: "expected `key = value`".to_string(),
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty key or value".to_string(),
                });
            }
            if section == Section::None {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("key `{key}` appears before any [section] header"),
                });
            }
            let id = (section.name().to_string(), key.clone());
            if entries.insert(id, (value, line_no)).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}` in [{}]", section.name()),
                });
            }
        }
        Ok(RawProfile { entries })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        self.entries.remove(&(section.to_string(), key.to_string()))
    }

    fn take_f64(&mut self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.take(section, key) {
            None => Ok(None),
            Some((text, line)) => {
                let v: f64 = text.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{key}` expects a number, got `{text}`"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line,
                        message: format!("`{key}` must be finite"),
                    });
                }
                Ok(Some(v))
            }
        }
    }

    fn take_usize(&mut self, section: &str, key: &str) -> Result<Option<usize>> {
        match self.take(section, key) {
            None => Ok(None),
            Some((text, line)) => text.parse().map(Some).map_err(|_| Error::Parse {
                line,
                message: format!("`{key}` expects a positive integer, got `{text}`"),
            }),
        }
    }

    /// A rate given either as `<stem>_hz` (times 2 pi) or `<stem>_rads`
    /// (literal). Supplying both is an error.
    fn take_rate(&mut self, section: &str, stem: &str) -> Result<Option<f64>> {
        let hz = self.take_f64(section, &format!("{stem}_hz"))?;
        let rads = self.take_f64(section, &format!("{stem}_rads"))?;
        match (hz, rads) {
            (Some(_), Some(_)) => Err(Error::Validation(format!(
                "[{section}] gives both {stem}_hz and {stem}_rads; pick one"
            ))),
            (Some(v), None) => Ok(Some(2.0 * PI * v)),
            (None, Some(v)) => Ok(Some(v)),
            (None, None) => Ok(None),
        }
    }

    /// Error out on anything not consumed, with suffix hints for known stems.
    fn finish(self) -> Result<()> {
        if let Some(((section, key), (_, line))) = self.entries.into_iter().next() {
            let message = if RATE_STEMS.contains(&key.as_str()) {
                format!(
                    "key `{key}` in [{section}] is missing its unit suffix (`{key}_hz` or `{key}_rads`)"
                )
            } else {
                format!("unknown key `{key}` in [{section}]")
            };
            return Err(Error::Parse { line, message });
        }
        Ok(())
    }
}

/// Parse a profile file, filling gaps from the default profile.
pub fn load_profile(path: &Path) -> Result<Profile> {
    let text = std::fs::read_to_string(path)?;
    let mut profile = parse_profile(&text)?;
    profile.provenance = format!("loaded from {}", path.display());
    Ok(profile)
}

/// Parse profile text, filling gaps from the default profile.
pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut raw = RawProfile::parse(text)?;
    let defaults = Profile::default();
    let mut params = defaults.params.clone();
    let mut drive = defaults.drive.clone();
    let mut grids = defaults.grids.clone();
    let mut defaulted: Vec<&str> = Vec::new();

    macro_rules! field {
        ($target:expr, $label:expr, $value:expr) => {
            match $value? {
                Some(v) => $target = v,
                None => defaulted.push($label),
            }
        };
    }

    field!(
        params.refractive_index,
        "resonator.refractive_index",
        raw.take_f64("resonator", "refractive_index")
    );
    field!(
        params.radius,
        "resonator.radius_m",
        raw.take_f64("resonator", "radius_m")
    );
    field!(
        params.wavelength,
        "resonator.wavelength_m",
        raw.take_f64("resonator", "wavelength_m")
    );
    field!(
        params.dispersion,
        "resonator.dn_dlambda_per_m",
        raw.take_f64("resonator", "dn_dlambda_per_m")
    );
    field!(
        params.optical_q,
        "resonator.optical_q",
        raw.take_f64("resonator", "optical_q")
    );
    field!(
        params.total_decay,
        "resonator.kappa",
        raw.take_rate("resonator", "kappa")
    );
    field!(
        params.coupling_efficiency,
        "resonator.eta_c",
        raw.take_f64("resonator", "eta_c")
    );

    field!(
        params.effective_mass,
        "mechanics.mass_kg",
        raw.take_f64("mechanics", "mass_kg")
    );
    field!(
        params.mechanical_q,
        "mechanics.q_m",
        raw.take_f64("mechanics", "q_m")
    );
    field!(
        params.mechanical_damping,
        "mechanics.gamma_m",
        raw.take_rate("mechanics", "gamma_m")
    );
    // Omega_m defaults to Q_m * Gamma_m of the values now in effect.
    match raw.take_rate("mechanics", "omega_m")? {
        Some(v) => params.mechanical_frequency = v,
        None => params.mechanical_frequency = params.derived_mechanical_frequency(),
    }
    field!(
        params.single_photon_coupling,
        "mechanics.g0",
        raw.take_rate("mechanics", "g0")
    );

    if let Some((text, line)) = raw.take("drive", "direction") {
        drive.direction = text.parse().map_err(|e: Error| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    } else {
        defaulted.push("drive.direction");
    }
    field!(
        drive.rotation_frequency,
        "drive.nu_rot_hz",
        raw.take_f64("drive", "nu_rot_hz")
    );
    field!(
        drive.homodyne_angle,
        "drive.phi_lo_rad",
        raw.take_f64("drive", "phi_lo_rad")
    );
    field!(
        params.input_power,
        "drive.power_w",
        raw.take_f64("drive", "power_w")
    );
    if let Some((text, line)) = raw.take("drive", "detuning_mode") {
        if text != "compensated" {
            return Err(Error::Parse {
                line,
                message: format!("detuning_mode must be `compensated`, got `{text}`"),
            });
        }
    }

    field!(
        params.bath_temperature,
        "bath.temperature_k",
        raw.take_f64("bath", "temperature_k")
    );

    if let Some((text, line)) = raw.take("grids", "omega_scale") {
        grids.omega_scale = match text.as_str() {
            "linear" => GridScale::Linear,
            "logarithmic" => GridScale::Logarithmic,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "omega_scale must be `linear` or `logarithmic`, got `{other}`"
                    ),
                })
            }
        };
    }
    field!(
        grids.omega_min_hz,
        "grids.omega_min_hz",
        raw.take_f64("grids", "omega_min_hz")
    );
    field!(
        grids.omega_max_hz,
        "grids.omega_max_hz",
        raw.take_f64("grids", "omega_max_hz")
    );
    field!(
        grids.omega_points,
        "grids.omega_points",
        raw.take_usize("grids", "omega_points")
    );
    field!(
        grids.nu_min_hz,
        "grids.nu_min_hz",
        raw.take_f64("grids", "nu_min_hz")
    );
    field!(
        grids.nu_max_hz,
        "grids.nu_max_hz",
        raw.take_f64("grids", "nu_max_hz")
    );
    field!(
        grids.nu_points,
        "grids.nu_points",
        raw.take_usize("grids", "nu_points")
    );
    field!(
        grids.phi_points,
        "grids.phi_points",
        raw.take_usize("grids", "phi_points")
    );

    let mut allow_unstable = false;
    if let Some((text, line)) = raw.take("grids", "allow_unstable") {
        allow_unstable = text.parse().map_err(|_| Error::Parse {
            line,
            message: format!("allow_unstable expects true or false, got `{text}`"),
        })?;
    }

    raw.finish()?;

    params.validate()?;
    drive.validate()?;
    validate_grids(&grids)?;

    // a profile must describe a stable working point unless it explicitly
    // opts into sweep masking
    if !allow_unstable {
        let steady = crate::model::steady_state(&params, &drive)?;
        let model = crate::model::build_linear_model(&steady, &params);
        let stab = crate::model::stability_check(&model);
        if !stab.stable {
            return Err(Error::Unstable {
                abscissa: stab.abscissa,
            });
        }
    }

    if defaulted.len() >= 20 {
        log::info!("profile supplied no keys; using the default profile throughout");
    } else if !defaulted.is_empty() {
        log::info!(
            "profile fell back to defaults for: {}",
            defaulted.join(", ")
        );
    }

    Ok(Profile {
        params,
        drive,
        grids,
        provenance: String::new(),
        allow_unstable,
    })
}

fn validate_grids(grids: &GridSpec) -> Result<()> {
    if grids.omega_min_hz <= 0.0 || grids.omega_max_hz <= grids.omega_min_hz {
        return Err(Error::Validation(
            "omega grid needs 0 < omega_min_hz < omega_max_hz".to_string(),
        ));
    }
    if grids.omega_points < 2 {
        return Err(Error::Validation("omega_points must be >= 2".to_string()));
    }
    if grids.nu_min_hz < 0.0 || grids.nu_max_hz < grids.nu_min_hz || grids.nu_points == 0 {
        return Err(Error::Validation(
            "nu grid needs 0 <= nu_min_hz <= nu_max_hz and nu_points >= 1".to_string(),
        ));
    }
    if grids.phi_points == 0 {
        return Err(Error::Validation("phi_points must be >= 1".to_string()));
    }
    Ok(())
}

/// Serialize with `_rads` keys and shortest round-trip floats, so that
/// `parse(serialize(p)) == p` bit for bit.
pub fn serialize_profile(profile: &Profile) -> String {
    let p = &profile.params;
    let d = &profile.drive;
    let g = &profile.grids;
    let scale = match g.omega_scale {
        GridScale::Linear => "linear",
        GridScale::Logarithmic => "logarithmic",
    };
    format!(
        "# spincom profile\n\
         [resonator]\n\
         refractive_index = {:e}\n\
         radius_m = {:e}\n\
         wavelength_m = {:e}\n\
         dn_dlambda_per_m = {:e}\n\
         optical_q = {:e}\n\
         kappa_rads = {:e}\n\
         eta_c = {:e}\n\
         \n\
         [mechanics]\n\
         mass_kg = {:e}\n\
         q_m = {:e}\n\
         gamma_m_rads = {:e}\n\
         omega_m_rads = {:e}\n\
         g0_rads = {:e}\n\
         \n\
         [drive]\n\
         direction = {}\n\
         nu_rot_hz = {:e}\n\
         phi_lo_rad = {:e}\n\
         power_w = {:e}\n\
         detuning_mode = compensated\n\
         \n\
         [bath]\n\
         temperature_k = {:e}\n\
         \n\
         [grids]\n\
         omega_scale = {}\n\
         omega_min_hz = {:e}\n\
         omega_max_hz = {:e}\n\
         omega_points = {}\n\
         nu_min_hz = {:e}\n\
         nu_max_hz = {:e}\n\
         nu_points = {}\n\
         phi_points = {}\n\
         allow_unstable = {}\n",
        p.refractive_index,
        p.radius,
        p.wavelength,
        p.dispersion,
        p.optical_q,
        p.total_decay,
        p.coupling_efficiency,
        p.effective_mass,
        p.mechanical_q,
        p.mechanical_damping,
        p.mechanical_frequency,
        p.single_photon_coupling,
        d.direction.as_str(),
        d.rotation_frequency,
        d.homodyne_angle,
        p.input_power,
        p.bath_temperature,
        scale,
        g.omega_min_hz,
        g.omega_max_hz,
        g.omega_points,
        g.nu_min_hz,
        g.nu_max_hz,
        g.nu_points,
        g.phi_points,
        profile.allow_unstable,
    )
}
