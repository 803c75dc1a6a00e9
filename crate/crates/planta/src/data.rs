//! Shipped data files. Each can be overridden by placing a file with the
//! same name in the directory named by `PLANTA_DATA_DIR`.

use std::path::PathBuf;

use crate::error::Result;
use crate::fileio::read_to_string;

pub const DATA_DIR_ENV: &str = "PLANTA_DATA_DIR";

pub const STEM_DIAMETERS: &str = "stem_diameters.csv";
pub const MEG_VOC: &str = "meg_voc_vs_rh.csv";
pub const BEND_CURVE: &str = "bend_curve.csv";

const EMBEDDED: [(&str, &str); 3] = [
    (STEM_DIAMETERS, include_str!("../fixtures/stem_diameters.csv")),
    (MEG_VOC, include_str!("../fixtures/meg_voc_vs_rh.csv")),
    (BEND_CURVE, include_str!("../fixtures/bend_curve.csv")),
];

fn override_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(DATA_DIR_ENV)?;
    let path = PathBuf::from(dir).join(name);
    path.is_file().then_some(path)
}

/// Contents of a shipped data file and a name to cite in errors.
pub fn load(name: &str) -> Result<(String, String)> {
    if let Some(path) = override_path(name) {
        return Ok((read_to_string(&path)?, path.display().to_string()));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, text)| (text.to_string(), format!("<builtin>/{n}")))
        .ok_or_else(|| crate::error::CliError::Data(format!("unknown data file {name}")))
}
