//! Offline geocoding of municipalities and provinces against gazetteer files.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::tabular::{cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeoPoint {
    latitude: f64,
    longitude: f64,
}

impl GeoPoint {
    pub fn new(latitude: f64, longitude: f64) -> Result<Self> {
        let valid = latitude.is_finite()
            && longitude.is_finite()
            && (-90.0..=90.0).contains(&latitude)
            && (-180.0..=180.0).contains(&longitude);
        if !valid {
            return Err(Error::CoordinateOutOfRange {
                latitude,
                longitude,
            });
        }
        Ok(GeoPoint {
            latitude,
            longitude,
        })
    }

    pub fn latitude(&self) -> f64 {
        self.latitude
    }

    pub fn longitude(&self) -> f64 {
        self.longitude
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GazetteerKind {
    EsMunicipality,
    FrCommune,
    Province,
}

impl GazetteerKind {
    pub fn default_file(self) -> &'static str {
        match self {
            GazetteerKind::EsMunicipality => "es_municipalities.csv",
            GazetteerKind::FrCommune => "fr_communes.csv",
            GazetteerKind::Province => "provinces.csv",
        }
    }
}

/// Where a gazetteer's names and coordinates live in its file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GazetteerColumns {
    pub name: String,
    pub latitude: String,
    pub longitude: String,
}

impl Default for GazetteerColumns {
    fn default() -> Self {
        GazetteerColumns {
            name: "name".into(),
            latitude: "latitude".into(),
            longitude: "longitude".into(),
        }
    }
}

/// Lowercases, strips diacritics, trims and collapses whitespace. A
/// slash-separated bilingual name (`Sagunto/Sagunt`) yields one alternative
/// per form, in order.
pub fn normalize_place_name(name: &str) -> Vec<String> {
    name.split('/')
        .map(fold)
        .filter(|alt| !alt.is_empty())
        .collect()
}

fn fold(name: &str) -> String {
    let stripped: String = name
        .nfd()
        .filter(|c| !is_combining_mark(*c))
        .collect::<String>()
        .to_lowercase();
    stripped.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone)]
pub struct Gazetteer {
    kind: GazetteerKind,
    entries: HashMap<String, GeoPoint>,
    collisions: Vec<String>,
}

impl Gazetteer {
    pub fn new(kind: GazetteerKind) -> Self {
        Gazetteer {
            kind,
            entries: HashMap::new(),
            collisions: Vec::new(),
        }
    }

    pub fn load(path: &Path, kind: GazetteerKind, columns: &GazetteerColumns) -> Result<Self> {
        Self::from_table(&Table::read(path)?, path, kind, columns)
    }

    pub fn parse(
        contents: &str,
        origin: &Path,
        kind: GazetteerKind,
        columns: &GazetteerColumns,
    ) -> Result<Self> {
        Self::from_table(&Table::parse(contents, origin)?, origin, kind, columns)
    }

    fn from_table(
        table: &Table,
        path: &Path,
        kind: GazetteerKind,
        columns: &GazetteerColumns,
    ) -> Result<Self> {
        let name_col = table.column(&columns.name, path)?;
        let lat_col = table.column(&columns.latitude, path)?;
        let lon_col = table.column(&columns.longitude, path)?;

        let mut gazetteer = Gazetteer::new(kind);
        for (i, row) in table.rows.iter().enumerate() {
            let row_no = i + 1;
            let coordinate = |col: usize| {
                let raw = cell(row, col).trim();
                parse_coordinate(raw).ok_or_else(|| {
                    Error::row(path, row_no, format!("unparseable coordinate `{raw}`"))
                })
            };
            let point = GeoPoint::new(coordinate(lat_col)?, coordinate(lon_col)?)
                .map_err(|e| Error::row(path, row_no, e.to_string()))?;
            gazetteer.insert(cell(row, name_col), point);
        }
        for collision in &gazetteer.collisions {
            log::warn!(
                "{}: duplicate place name `{collision}`; first entry kept",
                path.display()
            );
        }
        Ok(gazetteer)
    }

    /// Registers every alternative of `name`. On a collision the first entry wins.
    pub fn insert(&mut self, name: &str, point: GeoPoint) {
        for key in normalize_place_name(name) {
            match self.entries.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != point {
                        self.collisions.push(e.key().clone());
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(point);
                }
            }
        }
    }

    pub fn kind(&self) -> GazetteerKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn collisions(&self) -> &[String] {
        &self.collisions
    }

    /// First alternative of `name` present in the gazetteer.
    pub fn resolve(&self, name: Option<&str>) -> Option<GeoPoint> {
        normalize_place_name(name?)
            .iter()
            .find_map(|alt| self.entries.get(alt).copied())
    }
}

/// Accepts `39.48` and the decimal-comma form `39,48`.
fn parse_coordinate(raw: &str) -> Option<f64> {
    raw.parse()
        .ok()
        .or_else(|| raw.replace(',', ".").parse().ok())
}

/// Optional `gazetteers.toml` in the gazetteer directory overriding file
/// names and column names per kind.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct GazetteerConfig {
    pub es_municipality: GazetteerSource,
    pub fr_commune: GazetteerSource,
    pub province: GazetteerSource,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct GazetteerSource {
    pub file: Option<PathBuf>,
    pub columns: GazetteerColumns,
}

pub const GAZETTEER_CONFIG_FILE: &str = "gazetteers.toml";

/// Municipality and province lookup. Municipalities are tried in the
/// Spanish gazetteer first, then the French one.
#[derive(Debug, Clone)]
pub struct GeoResolver {
    pub es_municipalities: Gazetteer,
    pub fr_communes: Gazetteer,
    pub provinces: Gazetteer,
}

impl GeoResolver {
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let config_path = dir.join(GAZETTEER_CONFIG_FILE);
        let config: GazetteerConfig = if config_path.exists() {
            let text = fs::read_to_string(&config_path).map_err(|e| Error::io(&config_path, e))?;
            toml::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", config_path.display())))?
        } else {
            GazetteerConfig::default()
        };
        let load = |kind: GazetteerKind, source: &GazetteerSource| {
            let file = source
                .file
                .clone()
                .unwrap_or_else(|| PathBuf::from(kind.default_file()));
            Gazetteer::load(&dir.join(file), kind, &source.columns)
        };
        Ok(GeoResolver {
            es_municipalities: load(GazetteerKind::EsMunicipality, &config.es_municipality)?,
            fr_communes: load(GazetteerKind::FrCommune, &config.fr_commune)?,
            provinces: load(GazetteerKind::Province, &config.province)?,
        })
    }

    /// The small gazetteers bundled with the crate.
    pub fn builtin() -> Result<Self> {
        let columns = GazetteerColumns::default();
        let parse = |contents: &str, kind: GazetteerKind| {
            Gazetteer::parse(contents, Path::new(kind.default_file()), kind, &columns)
        };
        Ok(GeoResolver {
            es_municipalities: parse(
                include_str!("../data/gazetteers/es_municipalities.csv"),
                GazetteerKind::EsMunicipality,
            )?,
            fr_communes: parse(
                include_str!("../data/gazetteers/fr_communes.csv"),
                GazetteerKind::FrCommune,
            )?,
            provinces: parse(
                include_str!("../data/gazetteers/provinces.csv"),
                GazetteerKind::Province,
            )?,
        })
    }

    pub fn municipality(&self, name: Option<&str>) -> Option<GeoPoint> {
        self.es_municipalities
            .resolve(name)
            .or_else(|| self.fr_communes.resolve(name))
    }

    pub fn province(&self, name: Option<&str>) -> Option<GeoPoint> {
        self.provinces.resolve(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
        let path = dir.join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn place_names_fold() {
        assert_eq!(normalize_place_name("Sagunto"), ["sagunto"]);
        assert_eq!(
            normalize_place_name("Sagunto/Sagunt"),
            ["sagunto", "sagunt"]
        );
        assert_eq!(normalize_place_name("  Càlig "), ["calig"]);
        assert_eq!(
            normalize_place_name("Castelló  de la   Plana"),
            ["castello de la plana"]
        );
        assert!(normalize_place_name("").is_empty());
    }

    #[test]
    fn province_row_loads() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            dir.path(),
            "p.csv",
            "name,latitude,longitude\nValencia,39.48,-0.38\n",
        );
        let g =
            Gazetteer::load(&path, GazetteerKind::Province, &GazetteerColumns::default()).unwrap();
        let p = g.resolve(Some("valencia")).unwrap();
        assert_eq!((p.latitude(), p.longitude()), (39.48, -0.38));
    }

    #[test]
    fn header_only_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "p.csv", "name,latitude,longitude\n");
        let g =
            Gazetteer::load(&path, GazetteerKind::Province, &GazetteerColumns::default()).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn out_of_range_latitude_fails_with_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            dir.path(),
            "p.csv",
            "name,latitude,longitude\nA,40.0,1.0\nB,91.0,1.0\n",
        );
        let err = Gazetteer::load(&path, GazetteerKind::Province, &GazetteerColumns::default())
            .unwrap_err();
        assert!(matches!(err, Error::InvalidRow { row: 2, .. }), "{err}");
    }

    #[test]
    fn missing_file_and_columns_fail() {
        let dir = tempfile::tempdir().unwrap();
        let cols = GazetteerColumns::default();
        assert!(
            Gazetteer::load(&dir.path().join("none.csv"), GazetteerKind::Province, &cols).is_err()
        );
        let path = write(dir.path(), "p.csv", "name,lat\nA,1\n");
        assert!(matches!(
            Gazetteer::load(&path, GazetteerKind::Province, &cols),
            Err(Error::MissingColumn { .. })
        ));
        let path = write(dir.path(), "q.csv", "name,latitude,longitude\nA,north,1\n");
        assert!(Gazetteer::load(&path, GazetteerKind::Province, &cols).is_err());
    }

    #[test]
    fn custom_columns_and_semicolons() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            dir.path(),
            "ign.csv",
            "NOMBRE_ACTUAL;LATITUD_ETRS89;LONGITUD_ETRS89\nSagunto/Sagunt;39,67995785;-0,27841866\n",
        );
        let cols = GazetteerColumns {
            name: "NOMBRE_ACTUAL".into(),
            latitude: "LATITUD_ETRS89".into(),
            longitude: "LONGITUD_ETRS89".into(),
        };
        let g = Gazetteer::load(&path, GazetteerKind::EsMunicipality, &cols).unwrap();
        assert_eq!(g.resolve(Some("Sagunt")).unwrap().latitude(), 39.67995785);
    }

    #[test]
    fn collisions_keep_first() {
        let mut g = Gazetteer::new(GazetteerKind::EsMunicipality);
        g.insert("Ares", GeoPoint::new(40.0, 0.0).unwrap());
        g.insert("ARES", GeoPoint::new(41.0, 0.0).unwrap());
        assert_eq!(g.resolve(Some("ares")).unwrap().latitude(), 40.0);
        assert_eq!(g.collisions(), ["ares"]);
    }

    #[test]
    fn resolution() {
        let mut g = Gazetteer::new(GazetteerKind::EsMunicipality);
        g.insert(
            "Sagunto/Sagunt",
            GeoPoint::new(39.67995785, -0.27841866).unwrap(),
        );
        let p = g.resolve(Some("Sagunto")).unwrap();
        assert_eq!((p.latitude(), p.longitude()), (39.67995785, -0.27841866));
        assert_eq!(g.resolve(None), None);
        assert_eq!(g.resolve(Some("Xyzzy")), None);
        assert_eq!(g.resolve(Some("Xyzzy/Sagunt")), Some(p));
    }

    #[test]
    fn spanish_before_french() {
        let mut es = Gazetteer::new(GazetteerKind::EsMunicipality);
        es.insert("Elne", GeoPoint::new(1.0, 1.0).unwrap());
        let mut fr = Gazetteer::new(GazetteerKind::FrCommune);
        fr.insert("Elne", GeoPoint::new(2.0, 2.0).unwrap());
        fr.insert("Narbonne", GeoPoint::new(43.18, 3.0).unwrap());
        let r = GeoResolver {
            es_municipalities: es,
            fr_communes: fr,
            provinces: Gazetteer::new(GazetteerKind::Province),
        };
        assert_eq!(r.municipality(Some("Elne")).unwrap().latitude(), 1.0);
        assert_eq!(r.municipality(Some("Narbonne")).unwrap().latitude(), 43.18);
    }

    #[test]
    fn config_file_overrides_defaults() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "muni.csv", "n,y,x\nSagunto,39.6,-0.2\n");
        write(dir.path(), "fr_communes.csv", "name,latitude,longitude\n");
        write(dir.path(), "provinces.csv", "name,latitude,longitude\n");
        write(
            dir.path(),
            GAZETTEER_CONFIG_FILE,
            "[es_municipality]\nfile = \"muni.csv\"\ncolumns = { name = \"n\", latitude = \"y\", longitude = \"x\" }\n",
        );
        let r = GeoResolver::load_dir(dir.path()).unwrap();
        assert_eq!(r.municipality(Some("sagunto")).unwrap().latitude(), 39.6);
    }

    #[test]
    fn coordinate_range() {
        assert!(GeoPoint::new(90.0, 180.0).is_ok());
        assert!(GeoPoint::new(-90.1, 0.0).is_err());
        assert!(GeoPoint::new(0.0, f64::NAN).is_err());
    }
}
