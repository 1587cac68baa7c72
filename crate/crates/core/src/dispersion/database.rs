//! Bundled crystal data and directory loading.

use std::path::Path;

use super::crystal::CrystalModel;
use crate::error::{Error, Result};

/// Environment variable naming a directory of crystal JSON files that
/// replaces the bundled set.
pub const CRYSTAL_DIR_ENV: &str = "AUTOHOM_CRYSTAL_DIR";

const BUNDLED: &[(&str, &str)] = &[
    ("bbo_kato1986", include_str!("../../data/crystals/bbo_kato1986.json")),
    ("bbo_tamosauskas2018", include_str!("../../data/crystals/bbo_tamosauskas2018.json")),
    ("bibo_umemura2007", include_str!("../../data/crystals/bibo_umemura2007.json")),
    ("ktp_kato2002", include_str!("../../data/crystals/ktp_kato2002.json")),
    ("lbo_kato1994", include_str!("../../data/crystals/lbo_kato1994.json")),
    ("liio3_kato1985", include_str!("../../data/crystals/liio3_kato1985.json")),
    ("mglnb_zelmon1997", include_str!("../../data/crystals/mglnb_zelmon1997.json")),
];

/// Crystal models keyed by file stem, kept sorted by key.
#[derive(Debug, Clone, Default)]
pub struct CrystalDatabase {
    entries: Vec<(String, CrystalModel)>,
}

impl CrystalDatabase {
    pub fn bundled() -> Self {
        let mut db = CrystalDatabase::default();
        for (id, text) in BUNDLED {
            let model = CrystalModel::from_json(text).expect("bundled crystal data is valid");
            db.insert(id, model);
        }
        db
    }

    /// Loads every `*.json` file in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut db = CrystalDatabase::default();
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let model = CrystalModel::from_json(&text)
                .map_err(|e| Error::InvalidModel(format!("{}: {e}", p.display())))?;
            let id = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            db.insert(&id, model);
        }
        Ok(db)
    }

    /// The directory named by [`CRYSTAL_DIR_ENV`] if set, else the bundled set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CRYSTAL_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::from_dir(Path::new(&dir)),
            _ => Ok(Self::bundled()),
        }
    }

    pub fn insert(&mut self, id: &str, model: CrystalModel) {
        match self.entries.binary_search_by(|(k, _)| k.as_str().cmp(id)) {
            Ok(i) => self.entries[i].1 = model,
            Err(i) => self.entries.insert(i, (id.to_string(), model)),
        }
    }

    /// Looks up by id, or by label ("KTP (Kato 2002)"), or by bare name when
    /// that name is unique.
    pub fn get(&self, key: &str) -> Result<&CrystalModel> {
        if let Ok(i) = self.entries.binary_search_by(|(k, _)| k.as_str().cmp(key)) {
            return Ok(&self.entries[i].1);
        }
        if let Some((_, m)) = self.entries.iter().find(|(_, m)| m.label() == key) {
            return Ok(m);
        }
        let by_name: Vec<_> = self.entries.iter().filter(|(_, m)| m.name == key).collect();
        match by_name.as_slice() {
            [(_, m)] => Ok(m),
            [] => Err(Error::InvalidParameter(format!("unknown crystal `{key}`"))),
            _ => Err(Error::InvalidParameter(format!(
                "crystal name `{key}` is ambiguous; use one of {}",
                by_name.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &CrystalModel)> {
        self.entries.iter().map(|(k, m)| (k.as_str(), m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_set_loads() {
        let db = CrystalDatabase::bundled();
        assert_eq!(db.len(), 7);
        assert_eq!(db.get("ktp_kato2002").unwrap().name, "KTP");
        assert_eq!(db.get("BBO (Kato 1986)").unwrap().citation, "Kato 1986");
        assert_eq!(db.get("LiIO3").unwrap().citation, "Kato 1985");
        assert!(db.get("BBO").is_err());
        assert!(db.get("quartz").is_err());
    }

    #[test]
    fn directory_loading_replaces_bundle() {
        let dir = std::env::temp_dir().join(format!("autohom-db-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("glass.json"),
            r#"{"name":"glass","symmetry":"uniaxial","citation":"test",
               "axes":{"o":{"variant":"constant","coefficients":[1.5]},
                       "e":{"variant":"constant","coefficients":[1.5]}}}"#,
        )
        .unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let db = CrystalDatabase::from_dir(&dir).unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(db.get("glass").unwrap().label(), "glass (test)");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
